"""Edge-operator modules for the circle and the theta web.

An :class:`OperatorModule` is a free module over the Laurent ring with a
named, pairwise-commuting family of endomorphisms, each satisfying the
cubic relation u^3 + P*u = 0.  Two concrete models ship here:

* :func:`unknot_module` -- rank 3, one operator, with the explicit
  matrix ((0,0,0),(1,0,P),(0,1,0)) acting on columns;
* :func:`theta_module` -- rank 6, three operators, derived from the
  theta-foam pairing: the Gram matrix of the six basis elements is
  unimodular, and each operator's matrix is the unique solution of
  ``gram @ u = moved`` where ``moved`` pairs the basis against the basis
  with one extra dot on the corresponding disk.

Over the fraction field, the simultaneous kernel/image decomposition
indexed by edge subsets is computed by rank arithmetic:
``V(s) = ker(stack of u_e for e in s, and of left-kernel conditions of
u_e for e not in s)``.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable

from .errors import InternalConsistencyError
from .foams import THETA_BASIS_DOTS, eval_theta, pairing_matrix
from .laurent import LaurentPoly, ONE, P, RationalFunction, ZERO
from . import linalg
from .linalg import Matrix

__all__ = [
    "OperatorModule",
    "EdgeDecomposition",
    "VertexRelationReport",
    "unknot_module",
    "theta_module",
    "check_vertex_relations",
    "edge_decomposition",
]


@dataclass(frozen=True)
class OperatorModule:
    """Free module with commuting edge operators obeying u^3 + P u = 0."""

    rank: int
    basis_labels: tuple
    operators: dict[str, Matrix]
    validate: bool = True

    def __post_init__(self):
        if len(self.basis_labels) != self.rank:
            raise ValueError("basis label count must equal the rank")
        for name, mat in self.operators.items():
            if len(mat) != self.rank or any(len(row) != self.rank for row in mat):
                raise ValueError(f"operator {name!r} is not {self.rank}x{self.rank}")
        if self.validate:
            self.check_relations()

    def check_relations(self) -> None:
        """Cubic relation and pairwise commutation, as exact identities."""
        named = sorted(self.operators.items())
        for name, u in named:
            u2 = linalg.mat_mul(u, u)
            u3 = linalg.mat_mul(u2, u)
            cubic = linalg.mat_add(u3, linalg.mat_scale(P, u))
            if not linalg.is_zero_matrix(cubic):
                raise InternalConsistencyError(
                    f"operator {name!r} violates u^3 + P*u = 0"
                )
        for (na, a), (nb, b) in itertools.combinations(named, 2):
            if linalg.mat_mul(a, b) != linalg.mat_mul(b, a):
                raise InternalConsistencyError(
                    f"operators {na!r} and {nb!r} do not commute"
                )

    def operator(self, edge_id: str) -> Matrix:
        return self.operators[edge_id]

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(sorted(self.operators))


@functools.lru_cache(maxsize=None)
def unknot_module() -> OperatorModule:
    """Rank-3 model for the circle, with its single edge operator.

    Basis labels are dot counts 0, 1, 2 on a disk; the operator adds a
    dot, and two dots on top of the highest basis element fall back to P
    times the middle one.
    """
    u = [
        [ZERO, ZERO, ZERO],
        [ONE, ZERO, P],
        [ZERO, ONE, ZERO],
    ]
    return OperatorModule(rank=3, basis_labels=(0, 1, 2), operators={"e": u})


@functools.lru_cache(maxsize=None)
def theta_module() -> OperatorModule:
    """Rank-6 model for the theta web, derived from foam pairings.

    For each disk i, the matrix ``moved_i`` pairs the dual family
    against the basis with one extra dot on disk i.  Solving
    ``gram @ u_i = moved_i`` against the unimodular Gram matrix gives
    the operator matrices over the ring itself; any failure of
    unimodularity or of the operator relations is an internal error.
    """
    gram = pairing_matrix()
    operators: dict[str, Matrix] = {}
    for i in range(3):
        moved = [
            [
                eval_theta(
                    a[0] + v[0] + (1 if i == 0 else 0),
                    a[1] + v[1] + (1 if i == 1 else 0),
                    a[2] + v[2] + (1 if i == 2 else 0),
                )
                for v in THETA_BASIS_DOTS
            ]
            for a in THETA_BASIS_DOTS
        ]
        operators[f"e{i + 1}"] = linalg.solve_unimodular(gram, moved)
    module = OperatorModule(
        rank=6, basis_labels=THETA_BASIS_DOTS, operators=operators
    )
    _check_theta_relations(module)
    return module


def _check_theta_relations(module: OperatorModule) -> None:
    u1, u2, u3 = (module.operator(f"e{i}") for i in (1, 2, 3))
    if not linalg.is_zero_matrix(linalg.mat_add(linalg.mat_add(u1, u2), u3)):
        raise InternalConsistencyError("theta operators violate u1 + u2 + u3 = 0")
    w2 = linalg.mat_add(
        linalg.mat_add(linalg.mat_mul(u2, u3), linalg.mat_mul(u3, u1)),
        linalg.mat_mul(u1, u2),
    )
    if w2 != linalg.mat_scale(P, linalg.identity(6)):
        raise InternalConsistencyError(
            "theta operators violate u2*u3 + u3*u1 + u1*u2 = P"
        )
    if not linalg.is_zero_matrix(
        linalg.mat_mul(linalg.mat_mul(u1, u2), u3)
    ):
        raise InternalConsistencyError("theta operators violate u1*u2*u3 = 0")


@dataclass(frozen=True)
class VertexRelationReport:
    """Outcome of the three vertex relations plus the cubic relations."""

    entries: tuple[tuple[str, bool], ...]

    @property
    def all_pass(self) -> bool:
        return all(ok for _, ok in self.entries)

    def __str__(self) -> str:
        return "\n".join(
            f"{'PASS' if ok else 'FAIL'}  {name}" for name, ok in self.entries
        )


def check_vertex_relations(
    module: OperatorModule, incident: tuple[str, str, str]
) -> VertexRelationReport:
    """Verify the vertex relations for three incident edge operators.

    At a trivalent vertex an edge can appear at most twice (a loop), so a
    triple naming the same edge three times is rejected as ill-typed.
    """
    if len(incident) != 3:
        raise ValueError("expected exactly three incident edge ids")
    if len(set(incident)) == 1:
        raise ValueError(
            f"edge {incident[0]!r} cannot account for all three incidences "
            "of a trivalent vertex"
        )
    missing = [e for e in incident if e not in module.operators]
    if missing:
        raise ValueError(f"module has no operator named {missing[0]!r}")
    u1, u2, u3 = (module.operator(e) for e in incident)
    ident = linalg.identity(module.rank)

    checks = []
    total = linalg.mat_add(linalg.mat_add(u1, u2), u3)
    checks.append(("u1 + u2 + u3 = 0", linalg.is_zero_matrix(total)))
    w2 = linalg.mat_add(
        linalg.mat_add(linalg.mat_mul(u2, u3), linalg.mat_mul(u3, u1)),
        linalg.mat_mul(u1, u2),
    )
    checks.append(("u2*u3 + u3*u1 + u1*u2 = P", w2 == linalg.mat_scale(P, ident)))
    triple = linalg.mat_mul(linalg.mat_mul(u1, u2), u3)
    checks.append(("u1*u2*u3 = 0", linalg.is_zero_matrix(triple)))
    for name, u in zip(incident, (u1, u2, u3)):
        cubic = linalg.mat_add(
            linalg.mat_mul(linalg.mat_mul(u, u), u), linalg.mat_scale(P, u)
        )
        checks.append((f"{name}^3 + P*{name} = 0", linalg.is_zero_matrix(cubic)))
    return VertexRelationReport(tuple(checks))


@dataclass(frozen=True)
class EdgeDecomposition:
    """Fraction-field ranks of the simultaneous kernel/image summands."""

    module: OperatorModule
    subset_ranks: dict[frozenset, int]
    projection_checks: tuple[tuple[str, bool], ...] = ()

    def rank(self, subset: Iterable[str]) -> int:
        return self.subset_ranks[frozenset(subset)]

    def basis(self, subset: Iterable[str]) -> list[list[LaurentPoly]]:
        """Column vectors spanning the summand over the fraction field."""
        return linalg.nullspace_frac(
            _constraints(self.module, frozenset(subset))
        )

    @property
    def projections_pass(self) -> bool:
        return all(ok for _, ok in self.projection_checks)


def _constraints(module: OperatorModule, subset: frozenset) -> Matrix:
    """Stack of row conditions cutting out the summand of ``subset``.

    Membership in ker(u_e) contributes the rows of u_e; membership in
    im(u_e) contributes a basis of the left null space of u_e (over the
    fraction field the image is exactly the joint kernel of those row
    functionals).
    """
    rows: Matrix = []
    for edge_id in module.edge_ids:
        u = module.operator(edge_id)
        if edge_id in subset:
            rows.extend([list(r) for r in u])
        else:
            left = linalg.nullspace_frac(linalg.transpose(u))
            rows.extend([list(v) for v in left])
    if not rows:
        rows = [[ZERO] * module.rank]
    return rows


def edge_decomposition(
    module: OperatorModule,
    vertex_edges: tuple[str, str, str] | None = None,
) -> EdgeDecomposition:
    """Ranks of all simultaneous eigenspace-style summands over Frac(R).

    The summand for a subset s of edges is the intersection of ker(u_e)
    for e in s with im(u_e) for e outside s.  Ranks over all subsets must
    sum to the module rank; violation is an internal error.

    When ``vertex_edges`` names three operators forming a vertex, the
    associated projections pi_i = (1/P) * u_j * u_k are also verified to
    be idempotent, orthogonal, and to sum to the identity.
    """
    edge_ids = module.edge_ids
    subset_ranks: dict[frozenset, int] = {}
    total = 0
    for bits in range(1 << len(edge_ids)):
        subset = frozenset(
            e for k, e in enumerate(edge_ids) if bits & (1 << k)
        )
        r = module.rank - linalg.rank_frac_exact(_constraints(module, subset))
        subset_ranks[subset] = r
        total += r
    if total != module.rank:
        raise InternalConsistencyError(
            f"summand ranks total {total}, expected {module.rank}"
        )

    projection_checks: tuple[tuple[str, bool], ...] = ()
    if vertex_edges is not None:
        projection_checks = _check_projections(module, vertex_edges)
    return EdgeDecomposition(module, subset_ranks, projection_checks)


def _check_projections(
    module: OperatorModule, vertex_edges: tuple[str, str, str]
) -> tuple[tuple[str, bool], ...]:
    inv_p = RationalFunction(ONE, P)
    ops = [module.operator(e) for e in vertex_edges]
    pis = []
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        prod = linalg.mat_mul(ops[j], ops[k])
        pis.append([[RationalFunction(x) * inv_p for x in row] for row in prod])

    def rf_mat_mul(a, b):
        n = len(a)
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = RationalFunction(ZERO)
                for k in range(n):
                    acc = acc + a[i][k] * b[k][j]
                row.append(acc)
            out.append(row)
        return out

    def rf_mat_eq(a, b) -> bool:
        return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))

    checks = []
    for i, pi in enumerate(pis):
        checks.append((f"pi{i + 1}^2 = pi{i + 1}", rf_mat_eq(rf_mat_mul(pi, pi), pi)))
    for i in range(3):
        for j in range(i + 1, 3):
            product = rf_mat_mul(pis[i], pis[j])
            ok = all(not x for row in product for x in row)
            checks.append((f"pi{i + 1}*pi{j + 1} = 0", ok))
    ident = [
        [RationalFunction(ONE if i == j else ZERO) for j in range(module.rank)]
        for i in range(module.rank)
    ]
    total = pis[0]
    for pi in pis[1:]:
        total = [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(total, pi)]
    checks.append(("pi1 + pi2 + pi3 = 1", rf_mat_eq(total, ident)))
    return tuple(checks)
