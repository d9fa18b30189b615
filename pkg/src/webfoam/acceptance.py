"""The full verification suite behind ``webfoam verify-all``.

Each check is a pure function returning pass/fail plus a human-readable
detail line; :func:`run_all` executes a selection and reports results
sorted by check key.  Every check has a wall-clock budget, and a check
that exceeds its budget fails even if its assertions hold.

The same checks back the acceptance test module, so the CLI table and
the test suite can never drift apart.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable

from . import homology, linalg, operators, webs
from .foams import eval_sphere, eval_theta
from .laurent import LaurentPoly, ONE, P, ZERO

__all__ = ["CheckResult", "CHECKS", "run_all"]


@dataclass(frozen=True)
class CheckResult:
    key: str
    passed: bool
    detail: str
    seconds: float
    budget: float

    def to_dict(self) -> dict:
        return {
            "key": self.key,
            "passed": self.passed,
            "detail": self.detail,
            "seconds": round(self.seconds, 3),
            "budget": self.budget,
        }


def _fail(messages: list[str], condition: bool, label: str) -> bool:
    if not condition:
        messages.append(label)
    return condition


# ---------------------------------------------------------------------------
# 1. Tait formula identity.
# ---------------------------------------------------------------------------


def check_tait_formula(
    max_vertices: int = 10, corpus: "Path | None" = None
) -> tuple[bool, str]:
    problems: list[str] = []
    pinned = {"dodecahedron": 60, "petersen": 0}
    counts = {}
    if corpus is None:
        names = webs.corpus_names()
        load = webs.corpus_web
    else:
        paths = {p.stem: p for p in sorted(corpus.glob("*.json"))}
        names = sorted(paths)
        load = lambda name: webs.load_web(paths[name])  # noqa: E731
    for name in names:
        web = load(name).validate()
        bt = webs.count_tait_backtracking(web)
        mf = webs.count_tait_matching_formula(web)
        counts[name] = bt
        _fail(problems, bt == mf, f"{name}: backtracking {bt} != formula {mf}")
        if name in pinned:
            _fail(problems, bt == pinned[name], f"{name}: {bt} != {pinned[name]}")
    generated = 0
    for n in range(2, max_vertices + 1, 2):
        for web in webs.generate_connected_cubic(n):
            bt = webs.count_tait_backtracking(web)
            mf = webs.count_tait_matching_formula(web)
            generated += 1
            if bt != mf:
                problems.append(f"{web.name}: backtracking {bt} != formula {mf}")
    detail = (
        f"corpus of {len(counts)} webs agrees "
        f"(dodecahedron={counts.get('dodecahedron')}, petersen={counts.get('petersen')}); "
        f"{generated} generated connected cubic multigraphs (<= {max_vertices} "
        "vertices, up to isomorphism) agree"
    )
    if problems:
        detail = "; ".join(problems)
    return not problems, detail


# ---------------------------------------------------------------------------
# 2. Foam evaluation table.
# ---------------------------------------------------------------------------


def _theta_closed_form(m1: int, m2: int, m3: int) -> LaurentPoly:
    """Independent closed form: with sorted dots a >= b >= c, the value is
    P^((a+b-3)/2) when c = 0, b >= 1 and a + b is odd and at least 3,
    and zero otherwise."""
    a, b, c = sorted((m1, m2, m3), reverse=True)
    if c != 0 or b < 1 or (a + b) % 2 == 0 or a + b < 3:
        return ZERO
    return P ** ((a + b - 3) // 2)


def _theta_reduce_first(m1: int, m2: int, m3: int) -> LaurentPoly:
    """Alternative reducer: rewrites the first entry >= 3 it finds."""
    dots = [m1, m2, m3]
    if min(dots) > 0 or sum(dots) % 2 == 0 or sum(dots) < 3:
        return ZERO
    if sorted(dots) == [0, 1, 2]:
        return ONE
    for i, m in enumerate(dots):
        if m >= 3:
            reduced = list(dots)
            reduced[i] = m - 2
            return P * _theta_reduce_first(*reduced)
    return ZERO


def check_foam_table(max_dots: int = 8) -> tuple[bool, str]:
    problems: list[str] = []
    expected_spheres = [ZERO, ZERO, ONE, ZERO, P, ZERO, P**2, ZERO, P**3]
    got = [eval_sphere(m) for m in range(9)]
    _fail(
        problems,
        got == expected_spheres,
        "sphere values 0..8 differ from (0,0,1,0,P,0,P^2,0,P^3)",
    )
    _fail(problems, eval_theta(0, 1, 2) == ONE, "theta(0,1,2) != 1")
    checked = 0
    for dots in itertools.product(range(max_dots + 1), repeat=3):
        value = eval_theta(*dots)
        checked += 1
        if value != _theta_closed_form(*dots):
            problems.append(f"theta{dots}: closed-form oracle disagrees")
            break
        if value != _theta_reduce_first(*dots):
            problems.append(f"theta{dots}: reduction order changes the value")
            break
        for perm in itertools.permutations(dots):
            if eval_theta(*perm) != value:
                problems.append(f"theta{dots}: not invariant under {perm}")
                break
        if sum(dots) % 2 == 0 and value != ZERO:
            problems.append(f"theta{dots}: even dot sum but nonzero value")
            break
    detail = (
        f"sphere table 0..8 exact; {checked} theta triples (entries <= {max_dots}) "
        "match the closed form, all 6 permutations, and first-entry reduction"
    )
    if problems:
        detail = "; ".join(problems)
    return not problems, detail


# ---------------------------------------------------------------------------
# 3. Circle (unknot) operator model.
# ---------------------------------------------------------------------------


def check_unknot_model() -> tuple[bool, str]:
    problems: list[str] = []
    module = operators.unknot_module()
    u = module.operator("e")
    pinned = [[ZERO, ZERO, ZERO], [ONE, ZERO, P], [ZERO, ONE, ZERO]]
    _fail(problems, u == pinned, "operator matrix differs from the pinned model")
    cubic = linalg.mat_add(
        linalg.mat_mul(linalg.mat_mul(u, u), u), linalg.mat_scale(P, u)
    )
    _fail(problems, linalg.is_zero_matrix(cubic), "u^3 + P*u != 0")
    rank_u = linalg.fraction_rank(u)
    _fail(problems, rank_u == 2, f"image rank {rank_u} != 2")
    kernel = linalg.nullspace_frac(u)
    _fail(problems, len(kernel) == 1, f"kernel rank {len(kernel)} != 1")
    if len(kernel) == 1:
        v = kernel[0]
        w = [P, ZERO, ONE]
        proportional = all(
            v[i] * w[j] == v[j] * w[i] for i in range(3) for j in range(3)
        )
        _fail(problems, proportional, "kernel generator not proportional to (P,0,1)")
    decomposition = operators.edge_decomposition(module)
    _fail(
        problems,
        decomposition.rank(["e"]) == 1 and decomposition.rank([]) == 2,
        "edge decomposition ranks differ from (1, 2)",
    )
    detail = (
        "pinned 3x3 matrix; u^3+P*u=0; ker/im ranks 1/2 over the fraction field; "
        "kernel spanned by (P,0,1); summand ranks (1,2)"
    )
    if problems:
        detail = "; ".join(problems)
    return not problems, detail


# ---------------------------------------------------------------------------
# 4. Theta operator model.
# ---------------------------------------------------------------------------


def check_theta_model() -> tuple[bool, str]:
    problems: list[str] = []
    module = operators.theta_module()
    report = operators.check_vertex_relations(module, ("e1", "e2", "e3"))
    for name, ok in report.entries:
        _fail(problems, ok, f"relation failed: {name}")
    decomposition = operators.edge_decomposition(module, ("e1", "e2", "e3"))
    for edge in ("e1", "e2", "e3"):
        r = decomposition.rank([edge])
        _fail(problems, r == 2, f"summand for {{{edge}}} has rank {r} != 2")
    for subset, r in decomposition.subset_ranks.items():
        if len(subset) != 1:
            _fail(problems, r == 0, f"summand for {sorted(subset)} has rank {r} != 0")
    total = sum(decomposition.subset_ranks.values())
    _fail(problems, total == 6, f"summand ranks total {total} != 6")
    for name, ok in decomposition.projection_checks:
        _fail(problems, ok, f"projection identity failed: {name}")
    detail = (
        "derived 6x6 operators satisfy the vertex and cubic relations; "
        "edge decomposition is 2+2+2 on singletons and 0 elsewhere; "
        "projections are orthogonal idempotents summing to 1"
    )
    if problems:
        detail = "; ".join(problems)
    return not problems, detail


# ---------------------------------------------------------------------------
# 5. Order-4 certificate.
# ---------------------------------------------------------------------------


def check_order_four() -> tuple[bool, str]:
    certificate = homology.order_four_certificate()
    if certificate.all_pass:
        return True, "; ".join(claim for claim, _, _ in certificate.entries)
    return False, "; ".join(
        f"{claim}: got {got}" for claim, got, ok in certificate.entries if not ok
    )


# ---------------------------------------------------------------------------
# 6. Handcuffs pair.
# ---------------------------------------------------------------------------


def check_handcuffs_pair() -> tuple[bool, str]:
    problems: list[str] = []
    web = webs.corpus_web("handcuffs").validate()
    sets = webs.one_sets(web)
    _fail(problems, len(sets) == 1, f"{len(sets)} 1-sets, expected exactly 1")
    if len(sets) == 1:
        (s,) = sets
        connecting = {
            e.id for e in web.edges if e.kind == "edge"
        }
        _fail(
            problems,
            s.edges == frozenset(connecting),
            "the unique 1-set is not the connecting edge",
        )
        _fail(problems, not s.is_even(), "the unique 1-set should be odd")
    predicted = webs.count_tait_matching_formula(web)
    _fail(problems, predicted == 0, f"predicted rank {predicted} != 0")

    model = homology.linked_handcuffs_model()
    assert model.two_term is not None
    _, _, a = model.two_term
    pinned = [[P, ZERO, ZERO], [ZERO, ZERO, ZERO], [ONE, ZERO, ZERO]]
    _fail(problems, a == pinned, "u^2 + P*I differs from the pinned matrix")
    rank_a = linalg.fraction_rank(a)
    _fail(
        problems,
        (3 - rank_a, 3 - rank_a) == (2, 2),
        f"kernel/cokernel ranks {3 - rank_a} != 2",
    )
    _fail(problems, model.frac_rank() == 4, "homology rank over Frac != 4")
    _fail(problems, model.f2_dim() == 4, "specialized F2 dimension != 4")
    for direction in homology.DIRECTIONS:
        rep = model.bockstein(direction)
        _fail(
            problems,
            rep.r == 4 and not rep.torsion_exponents,
            f"direction {direction}: r={rep.r}, torsion={rep.torsion_exponents}",
        )
    detail = (
        "abstract handcuffs have exactly one 1-set (the connecting edge), odd, "
        "predicted rank 0; the linked model is free of rank 4 with no torsion "
        "in either direction and F2 dimension 4"
    )
    if problems:
        detail = "; ".join(problems)
    return not problems, detail


# ---------------------------------------------------------------------------
# 7. Rank inequality and universal-coefficient property suite.
# ---------------------------------------------------------------------------


def check_property_suite(seed: int = 0, count: int = 200) -> tuple[bool, str]:
    problems: list[str] = []
    degenerate = 0
    for k in range(count):
        size = 2 + (k % 11)
        module = homology.random_complex(seed * 1_000_003 + k, size)
        f2 = module.f2_dim()
        fr = module.frac_rank(seed=seed)
        if f2 < fr:
            problems.append(f"module {k}: f2_dim {f2} < frac_rank {fr}")
            break
        for direction in homology.DIRECTIONS:
            rep = module.bockstein(direction)
            if rep.f2_dim != rep.r + 2 * rep.l:
                problems.append(
                    f"module {k} {direction}: {rep.f2_dim} != {rep.r} + 2*{rep.l}"
                )
                break
            if rep.degenerate_direction:
                degenerate += 1
    detail = (
        f"{count} seeded square-zero modules (rank <= 12): f2_dim >= frac_rank, "
        f"f2_dim = r + 2l in both directions, exact and randomized ranks agree "
        f"({degenerate} degenerate direction analyses)"
    )
    if problems:
        detail = "; ".join(problems)
    return not problems, detail


# ---------------------------------------------------------------------------
# 8. Cone of P.
# ---------------------------------------------------------------------------


def check_cone_p() -> tuple[bool, str]:
    problems: list[str] = []
    module = homology.cone_of_p()
    _fail(problems, module.frac_rank() == 0, "frac_rank != 0")
    _fail(problems, module.f2_dim() == 4, "f2_dim != 4")
    rep = module.bockstein((1, 1, 1))
    _fail(
        problems,
        rep.torsion_exponents == (4, 4) and rep.r == 0,
        f"direction (1,1,1): r={rep.r}, torsion={rep.torsion_exponents}",
    )
    detail = "cone of P*I on rank 2: frac_rank 0, f2_dim 4, torsion exponents {4,4}"
    if problems:
        detail = "; ".join(problems)
    return not problems, detail


CHECKS: dict[str, tuple[Callable[[], tuple[bool, str]], float]] = {
    "cone-p": (check_cone_p, 1.0),
    "foam-table": (check_foam_table, 5.0),
    "handcuffs-pair": (check_handcuffs_pair, 5.0),
    "inequality-uct-suite": (check_property_suite, 120.0),
    "order4-certificate": (check_order_four, 1.0),
    "tait-formula": (check_tait_formula, 60.0),
    "theta-model": (check_theta_model, 10.0),
    "unknot-model": (check_unknot_model, 1.0),
}


def run_all(
    keys: Iterable[str] | None = None,
    corpus: Path | None = None,
    seed: int = 0,
) -> list[CheckResult]:
    selected = sorted(CHECKS) if keys is None else sorted(keys)
    unknown = [k for k in selected if k not in CHECKS]
    if unknown:
        raise ValueError(
            f"unknown check keys {unknown}; available: {', '.join(sorted(CHECKS))}"
        )
    results = []
    for key in selected:
        func, budget = CHECKS[key]
        start = time.perf_counter()
        if key == "tait-formula":
            passed, detail = check_tait_formula(corpus=corpus)
        elif key == "inequality-uct-suite":
            passed, detail = check_property_suite(seed=seed)
        else:
            passed, detail = func()
        elapsed = time.perf_counter() - start
        if passed and elapsed > budget:
            passed = False
            detail += f"; exceeded the {budget:.0f}s budget ({elapsed:.1f}s)"
        results.append(CheckResult(key, passed, detail, elapsed, budget))
    return results
