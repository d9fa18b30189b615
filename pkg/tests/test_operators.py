"""Operator models: pinned matrices, relations, and edge decompositions."""

import pytest

from webfoam.errors import InternalConsistencyError
from webfoam.laurent import ONE, P, ZERO
from webfoam import linalg
from webfoam.operators import (
    OperatorModule,
    check_vertex_relations,
    edge_decomposition,
    theta_module,
    unknot_module,
)

UNKNOT_MATRIX = [
    [ZERO, ZERO, ZERO],
    [ONE, ZERO, P],
    [ZERO, ONE, ZERO],
]


class TestUnknotModule:
    def test_pinned_matrix(self):
        assert unknot_module().operator("e") == UNKNOT_MATRIX

    def test_cubic_relation(self):
        u = unknot_module().operator("e")
        u3 = linalg.mat_mul(linalg.mat_mul(u, u), u)
        assert linalg.is_zero_matrix(linalg.mat_add(u3, linalg.mat_scale(P, u)))

    def test_kernel_and_image_ranks(self):
        u = unknot_module().operator("e")
        assert linalg.fraction_rank(u) == 2
        kernel = linalg.nullspace_frac(u)
        assert len(kernel) == 1
        (v,) = kernel
        w = [P, ZERO, ONE]
        assert all(v[i] * w[j] == v[j] * w[i] for i in range(3) for j in range(3))

    def test_u_squared_plus_p(self):
        u = unknot_module().operator("e")
        m = linalg.mat_add(linalg.mat_mul(u, u), linalg.mat_scale(P, linalg.identity(3)))
        assert m == [[P, ZERO, ZERO], [ZERO, ZERO, ZERO], [ONE, ZERO, ZERO]]

    def test_decomposition(self):
        dec = edge_decomposition(unknot_module())
        assert dec.rank(["e"]) == 1
        assert dec.rank([]) == 2


class TestThetaModule:
    def test_vertex_relations_pass(self):
        report = check_vertex_relations(theta_module(), ("e1", "e2", "e3"))
        assert report.all_pass
        names = [name for name, _ in report.entries]
        assert "u1 + u2 + u3 = 0" in names
        assert "u2*u3 + u3*u1 + u1*u2 = P" in names
        assert "u1*u2*u3 = 0" in names

    def test_u3_is_the_dot_shift(self):
        # adding a dot on the third disk steps the last index, falling back
        # to P times the previous step at the top
        u3 = theta_module().operator("e3")
        labels = theta_module().basis_labels

        def column(j):
            return [u3[i][j] for i in range(6)]

        def basis_vec(label, scale=ONE):
            return [scale if lab == label else ZERO for lab in labels]

        for m in (0, 1):
            assert column(labels.index((0, m, 0))) == basis_vec((0, m, 1))
            assert column(labels.index((0, m, 1))) == basis_vec((0, m, 2))
            assert column(labels.index((0, m, 2))) == basis_vec((0, m, 1), P)

    def test_first_operator_is_sum_of_others(self):
        module = theta_module()
        u1 = module.operator("e1")
        total = linalg.mat_add(module.operator("e2"), module.operator("e3"))
        assert u1 == total

    def test_operators_commute(self):
        module = theta_module()
        for a in ("e1", "e2", "e3"):
            for b in ("e1", "e2", "e3"):
                ab = linalg.mat_mul(module.operator(a), module.operator(b))
                ba = linalg.mat_mul(module.operator(b), module.operator(a))
                assert ab == ba

    def test_decomposition_ranks(self):
        dec = edge_decomposition(theta_module(), ("e1", "e2", "e3"))
        for edge in ("e1", "e2", "e3"):
            assert dec.rank([edge]) == 2
        assert dec.rank([]) == 0  # intersection of all three images
        assert dec.rank(["e1", "e2"]) == 0
        assert dec.rank(["e1", "e2", "e3"]) == 0
        assert sum(dec.subset_ranks.values()) == 6
        assert dec.projections_pass

    def test_summand_basis_lies_in_the_summand(self):
        module = theta_module()
        dec = edge_decomposition(module)
        basis = dec.basis(["e1"])
        assert len(basis) == 2
        u1 = module.operator("e1")
        for vec in basis:
            image = [
                sum((row[j] * vec[j] for j in range(6)), ZERO) for row in u1
            ]
            assert all(x == ZERO for x in image)


class TestGuards:
    def test_all_equal_triple_rejected(self):
        with pytest.raises(ValueError, match="cannot account"):
            check_vertex_relations(unknot_module(), ("e", "e", "e"))

    def test_unknown_operator_rejected(self):
        with pytest.raises(ValueError, match="no operator"):
            check_vertex_relations(theta_module(), ("e1", "e2", "zz"))

    def test_constructor_rejects_broken_cubic_relation(self):
        broken = [row[:] for row in UNKNOT_MATRIX]
        broken[0][0] = ONE
        with pytest.raises(InternalConsistencyError, match="u\\^3"):
            OperatorModule(rank=3, basis_labels=(0, 1, 2), operators={"e": broken})

    def test_constructor_rejects_noncommuting(self):
        a = UNKNOT_MATRIX
        # the same operator written after swapping the outer basis vectors:
        # still satisfies the cubic relation, but does not commute with a
        b = [[ZERO, ONE, ZERO], [P, ZERO, ONE], [ZERO, ZERO, ZERO]]
        with pytest.raises(InternalConsistencyError, match="commute"):
            OperatorModule(
                rank=3, basis_labels=(0, 1, 2), operators={"a": a, "b": b}
            )

    def test_corrupted_module_fails_some_relation(self):
        corrupt = {
            name: [row[:] for row in mat]
            for name, mat in theta_module().operators.items()
        }
        corrupt["e2"][0][0] = corrupt["e2"][0][0] + ONE
        module = OperatorModule(
            rank=6,
            basis_labels=theta_module().basis_labels,
            operators=corrupt,
            validate=False,
        )
        report = check_vertex_relations(module, ("e1", "e2", "e3"))
        assert not report.all_pass

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError, match="3x3"):
            OperatorModule(rank=3, basis_labels=(0, 1, 2), operators={"e": [[ZERO]]})
        with pytest.raises(ValueError, match="label count"):
            OperatorModule(rank=3, basis_labels=(0,), operators={})
