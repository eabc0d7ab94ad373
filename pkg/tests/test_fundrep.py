"""The fundamental module, its R-matrix and the self-duality map."""
import pytest

from ospq.fundrep import (
    build_fundamental,
    check_braid_relation,
    check_cubic,
    check_duality,
    check_partial_trace,
    check_r_invariance,
    coproduct,
    dual_iso_T,
    r_check_product,
    r_check_spectral,
    r_eigenvalues,
    root_vectors,
    spectral_decomposition,
)
from ospq.graded import GradedOperator, TensorSpace
from ospq.rootdata import sdim


class TestGenerators:

    def test_action_rank_one(self):
        rep = build_fundamental(1, 10)
        space = rep.space
        assert space.dim == 3
        v1, v0, vm1 = (space.index_of((k,)) for k in (1, 0, -1))
        assert rep.e[0].column(v0) == {v1: rep.e[0].field.one}
        assert rep.e[0].entry(v0, vm1) == -1
        assert rep.f[0].entry(v0, v1) == 1

    def test_cartan_rank_two(self, F10):
        rep = build_fundamental(2, 10)
        v2 = rep.label_basis(2)
        assert rep.K[0].entry(v2, v2) == F10.q_inv
        assert rep.K[1].entry(v2, v2) == F10.q

    def test_quantum_dimension(self):
        for n, N in ((1, 10), (2, 14)):
            rep = build_fundamental(n, N)
            assert rep.K2rho.supertrace() == sdim((1,) + (0,) * (n - 1), n, N)

    def test_root_vectors(self):
        roots = [rv.root for rv in root_vectors(2, 14)]
        assert roots == [(1, -1), (1, 0), (1, 1), (0, 1)]


class TestRMatrix:

    def test_highest_weight_eigenvalue(self, F10):
        R = r_check_product(1, 10)
        space = R.domain
        top = space.index_of((1, 1))
        assert R.column(top) == {top: -F10.q}

    def test_cubic_and_braid(self):
        check_cubic(1, 10)
        check_braid_relation(1, 10)

    def test_commutes_with_coproduct(self):
        check_r_invariance(1, 10)

    def test_spectral_agrees_with_product(self):
        assert r_check_product(1, 10) == r_check_spectral(1, 10)

    def test_summand_dimensions(self):
        dec = spectral_decomposition(1, 10)
        assert dec.dims == {"2eps1": 5, "eps1": 3, "0": 1}
        for key, proj in dec.projectors.items():
            assert proj.rank() == dec.dims[key]

    def test_eigenvalue_labels(self, F10):
        eig = r_eigenvalues(1, 10)
        assert eig["2eps1"] == -F10.q
        assert eig["eps1"] == F10.q_inv
        assert eig["0"] == F10.q_pow(-2)
        assert "eps1+eps2" in r_eigenvalues(2, 14)

    def test_partial_trace(self):
        check_partial_trace(1, 10)

    def test_k_coproduct_is_diagonal(self):
        rep = build_fundamental(1, 10)
        K2 = coproduct(rep, "K", 0, 2)
        assert K2 == rep.K[0].tensor(rep.K[0])
        with pytest.raises(ValueError):
            coproduct(rep, "x", 0, 2)

    @pytest.mark.slow
    def test_rank_two(self):
        check_cubic(2, 14)
        check_partial_trace(2, 14)
        dec = spectral_decomposition(2, 14)
        assert sorted(dec.dims.values()) == [1, 10, 14]
        assert sum(dec.dims.values()) == 25


class TestDuality:

    def test_T_on_basis(self, F10):
        T = dual_iso_T(1, 10)
        V = TensorSpace(1, (1,))
        Vs = TensorSpace(1, (-1,))
        assert T.entry(Vs.index_of((-1,)), V.index_of((1,))) == 1
        assert T.entry(Vs.index_of((0,)), V.index_of((0,))) == F10.q_inv

    def test_invariant_form(self):
        check_duality(1, 10)
        check_duality(2, 14)

    def test_identity_space(self):
        rep = build_fundamental(1, 10)
        assert rep.identity == GradedOperator.identity(TensorSpace.power(1, 1), 10)
