"""Differential modules: ranks, specializations, torsion, models, JSON."""

import pytest

from conftest import random_poly
from webfoam.errors import InputError, ValidationError
from webfoam.laurent import ONE, P, T1, T2, ZERO
from webfoam import linalg
from webfoam.homology import (
    DIRECTIONS,
    DifferentialModule,
    cone_of_p,
    complex_from_dict,
    complex_to_dict,
    linked_handcuffs_model,
    load_complex,
    order_four_certificate,
    random_complex,
)


def zero_module(n):
    return DifferentialModule(n, linalg.zeros(n, n))


class TestConstruction:
    def test_square_zero_enforced(self):
        flip = [[ZERO, ONE], [ONE, ZERO]]  # squares to the identity
        with pytest.raises(ValidationError, match="square to zero"):
            DifferentialModule(2, flip)

    def test_shape_enforced(self):
        with pytest.raises(ValidationError, match="2x2"):
            DifferentialModule(2, [[ZERO]])

    def test_from_map_layout(self):
        cone = DifferentialModule.from_map([[P, ZERO], [ZERO, P]])
        assert cone.rank == 4
        expected = linalg.zeros(4, 4)
        expected[0][2] = P
        expected[1][3] = P
        assert cone.differential == expected


class TestRanks:
    def test_zero_differential(self):
        assert zero_module(4).frac_rank() == 4
        assert zero_module(4).f2_dim() == 4

    def test_cone_of_p(self):
        cone = cone_of_p()
        assert cone.frac_rank() == 0
        assert cone.f2_dim() == 4  # P evaluates to 0 at T = 1

    def test_handcuffs_cone(self):
        model = linked_handcuffs_model()
        assert model.rank == 6
        assert model.frac_rank() == 4
        assert model.f2_dim() == 4
        rows, cols, a = model.two_term
        assert (rows, cols) == (3, 3)
        assert a == [[P, ZERO, ZERO], [ZERO, ZERO, ZERO], [ONE, ZERO, ZERO]]
        assert model.two_term_ranks() == (2, 2)

    def test_two_term_ranks_requires_two_term_form(self):
        with pytest.raises(ValueError, match="two-term"):
            zero_module(2).two_term_ranks()


class TestBockstein:
    def test_cone_of_p_torsion(self):
        cone = cone_of_p()
        for direction in DIRECTIONS:
            rep = cone.bockstein(direction)
            assert rep.r == 0
            assert rep.torsion_exponents == (4, 4)
            assert rep.f2_dim == rep.r + 2 * rep.l == 4
            assert not rep.degenerate_direction

    def test_handcuffs_free(self):
        model = linked_handcuffs_model()
        for direction in DIRECTIONS:
            rep = model.bockstein(direction)
            assert rep.r == 4
            assert rep.torsion_exponents == ()
            assert rep.f2_dim == 4

    def test_zero_differential_reports_free(self):
        rep = zero_module(3).bockstein((1, 1, 1))
        assert rep.r == 3 and rep.l == 0

    def test_direction_validation(self):
        with pytest.raises(ValueError, match="direction"):
            zero_module(2).bockstein((0, 1, 1))

    def test_degenerate_direction_is_flagged_not_fatal(self):
        # T1 + T2 dies along both shipped lines, so the free rank jumps
        cone = DifferentialModule.from_map([[T1 + T2]])
        assert cone.frac_rank() == 0
        rep = cone.bockstein((1, 1, 1))
        assert rep.r == 2
        assert rep.degenerate_direction
        assert rep.f2_dim == rep.r + 2 * rep.l

    def test_torsion_from_p_multiples_is_at_least_four(self, rng):
        # entries in the ideal (P) vanish to order >= 4 at (1,1,1)
        for _ in range(10):
            rows = rng.randint(1, 3)
            cols = rng.randint(1, 3)
            a = [
                [P * random_poly(rng, 2, 1) for _ in range(cols)]
                for _ in range(rows)
            ]
            cone = DifferentialModule.from_map(a)
            rep = cone.bockstein((1, 1, 1))
            assert all(e >= 4 for e in rep.torsion_exponents)


class TestRandomComplexes:
    def test_deterministic_by_seed(self):
        a = random_complex(5, 9)
        b = random_complex(5, 9)
        assert a.differential == b.differential

    def test_inequality_and_uct(self):
        for k in range(40):
            module = random_complex(k, 2 + (k % 11))
            f2 = module.f2_dim()
            assert f2 >= module.frac_rank()
            for direction in DIRECTIONS:
                rep = module.bockstein(direction)
                assert rep.f2_dim == rep.r + 2 * rep.l

    def test_equality_iff_torsion_free_along_good_directions(self):
        # when the direction does not degenerate the rank, the specialized
        # dimension meets the generic rank exactly when there is no torsion
        for k in range(40):
            module = random_complex(k, 2 + (k % 11))
            rep = module.bockstein((1, 1, 1))
            if not rep.degenerate_direction:
                assert (rep.f2_dim == rep.frac_rank) == (rep.l == 0)

    def test_size_bounds(self):
        with pytest.raises(ValueError):
            random_complex(0, 13)
        with pytest.raises(ValueError):
            random_complex(0, 1)


class TestCertificate:
    def test_all_facts_pass(self):
        certificate = order_four_certificate()
        assert certificate.all_pass
        assert len(certificate.entries) == 4
        assert "PASS" in str(certificate)


class TestJson:
    def test_round_trip(self):
        for module in (cone_of_p(), linked_handcuffs_model(), random_complex(3, 6)):
            data = complex_to_dict(module)
            again = complex_from_dict(data)
            assert again.differential == module.differential

    def test_rank_mismatch(self):
        with pytest.raises(InputError, match="rank"):
            complex_from_dict({"rank": "x", "differential": []})
        with pytest.raises(InputError, match="2 rows"):
            complex_from_dict({"rank": 2, "differential": [["0", "0"]]})

    def test_entry_errors_carry_positions(self):
        data = {"rank": 1, "differential": [["T9"]]}
        with pytest.raises(InputError, match=r"differential\[0\]\[0\]"):
            complex_from_dict(data)

    def test_square_zero_checked_after_parse(self):
        # shape problems are input errors, but a parsable differential that
        # fails to square to zero is an invalid object
        data = {"rank": 1, "differential": [["1"]]}
        with pytest.raises(ValidationError, match="square to zero"):
            complex_from_dict(data)

    def test_load_complex(self, tmp_path):
        path = tmp_path / "cone.json"
        import json

        path.write_text(json.dumps(complex_to_dict(cone_of_p())))
        module = load_complex(path)
        assert module.frac_rank() == 0
        with pytest.raises(InputError, match="line 1"):
            bad = tmp_path / "bad.json"
            bad.write_text("{")
            load_complex(bad)
