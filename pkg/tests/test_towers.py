"""Local R-matrices on V^(x)t, the ribbon element, Bratteli diagrams and path projections."""
import pytest

from ospq.errors import EigenvalueCollision, SemanticError
from ospq.rootdata import chi_v, sdim
from ospq.towers import (
    Path,
    branching,
    bwm_trace_values,
    bwm_verify,
    canonical_path,
    discover_bratteli,
    identity,
    p_t_idempotent,
    path_projection,
    rhat_local,
    ribbon_op,
)


class TestLocalOperators:

    def test_far_generators_commute(self):
        a = rhat_local(1, 10, 4, 1)
        b = rhat_local(1, 10, 4, 3)
        assert a @ b == b @ a

    def test_braid_relation_on_three_factors(self):
        a = rhat_local(1, 10, 3, 1)
        b = rhat_local(1, 10, 3, 2)
        assert a @ b @ a == b @ a @ b

    def test_inverse(self):
        assert rhat_local(1, 10, 3, 2) @ rhat_local(1, 10, 3, 2, inverse=True) == identity(1, 10, 3)

    def test_bad_position(self):
        with pytest.raises(ValueError):
            rhat_local(1, 10, 3, 3)

    def test_ribbon_on_V(self, F10):
        assert ribbon_op(1, 10, 1) == identity(1, 10, 1).scale(F10.q_pow(-2))


class TestBratteli:

    def test_first_branching(self):
        info = branching(1, 10, ((0,), (1,)))
        assert info.children == {(2,): 1, (1,): 1, (0,): 1}
        assert info.eigenvalues[(2,)] == chi_v((2,), 1, 10)

    def test_levels(self):
        full = discover_bratteli(1, 10, 2, truncated=False)
        assert full.levels[2] == ((0,), (1,), (2,))
        cut = discover_bratteli(1, 10, 3, truncated=True)
        assert cut.levels[2] == ((0,), (1,))
        assert cut.levels[3] == ((0,), (1,), (2,))
        assert ((1,), (2,)) in cut.edge_pairs(2)

    def test_collision_outside_alcove(self):
        """3 eps1 and eps1 share the ribbon eigenvalue q^-2 at N=10"""
        with pytest.raises(EigenvalueCollision):
            discover_bratteli(1, 10, 3, truncated=False)

    def test_canonical_path(self):
        assert canonical_path((2, 1)).weights == ((0, 0), (1, 0), (2, 0), (2, 1))
        assert canonical_path((2,)).level == 2


class TestPathProjections:

    @pytest.mark.parametrize("shape,rank", [((2,), 5), ((1,), 3), ((0,), 1)])
    def test_ranks(self, shape, rank):
        p = path_projection(1, 10, Path(((0,), (1,), shape)))
        assert p.rank() == rank

    def test_idempotent_and_eigen(self):
        path = Path(((0,), (1,), (2,)))
        p = path_projection(1, 10, path)
        assert p @ p == p
        assert ribbon_op(1, 10, 2) @ p == p.scale(chi_v((2,), 1, 10))

    def test_projections_are_orthogonal(self):
        a = path_projection(1, 10, Path(((0,), (1,), (1,))))
        b = path_projection(1, 10, Path(((0,), (1,), (0,))))
        assert (a @ b).is_zero()

    def test_not_an_edge(self):
        with pytest.raises(SemanticError):
            path_projection(1, 10, Path(((0,), (1,), (3,))))
        with pytest.raises(SemanticError):
            path_projection(1, 10, Path(((1,),)))

    @pytest.mark.parametrize("t", [1, 2, 3])
    def test_truncated_trace_is_power_of_sdim(self, t):
        """str_q of the truncation idempotent equals sdim(V)^t"""
        x = sdim((1,), 1, 10)
        assert p_t_idempotent(1, 10, t).supertrace(quantum=True) == x ** t


class TestBWM:

    def test_relations(self):
        results = bwm_verify(1, 10, 3)
        failed = [name for name, ok in results if not ok]
        assert not failed

    def test_trace_polynomial(self):
        for path, strq, q_value in bwm_trace_values(1, 10, 3):
            assert strq == q_value, path

    def test_needs_three_factors(self):
        with pytest.raises(ValueError):
            bwm_verify(1, 10, 2)

    @pytest.mark.slow
    def test_relations_rank_two(self):
        assert all(ok for _, ok in bwm_verify(2, 14, 3))
