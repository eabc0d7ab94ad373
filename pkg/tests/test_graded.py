"""Z2-graded tensor spaces and exact operators."""
import pytest

from ospq.errors import IdentityCheckError
from ospq.fundrep import build_fundamental, graded_flip, r_check_inverse, r_check_product
from ospq.graded import GradedOperator, RowReducer, TensorSpace, labels


class TestTensorSpace:

    def test_labels_and_parity(self):
        assert labels(2) == (1, 2, 0, -2, -1)
        V = TensorSpace.power(1, 1)
        assert V.dim == 3
        assert V.parity(V.index_of((1,))) == 1
        assert V.parity(V.index_of((0,))) == 0

    def test_weight_of_dual(self):
        space = TensorSpace(1, (1, -1))
        assert space.weight(space.index_of((1, 1))) == (0,)
        assert space.weight(space.index_of((1, -1))) == (2,)

    def test_product(self):
        assert (TensorSpace.power(2, 1) @ TensorSpace(2, (-1,))).signature == (1, -1)
        with pytest.raises(ValueError):
            TensorSpace.power(1, 1).tensor(TensorSpace.power(2, 1))


class TestGradedOperator:

    def test_koszul_sign(self):
        """(a (x) b)(v (x) w) picks up (-1)^([b][v])"""
        rep = build_fundamental(1, 10)
        op = rep.identity.tensor(rep.e[0])
        space = op.domain
        assert op.entry(space.index_of((1, 1)), space.index_of((1, 0))) == -1
        assert op.entry(space.index_of((0, 1)), space.index_of((0, 0))) == 1

    def test_graded_flip(self):
        P = graded_flip(1, 10)
        space = P.domain
        assert P.entry(space.index_of((1, -1)), space.index_of((-1, 1))) == -1
        assert P.entry(space.index_of((1, 0)), space.index_of((0, 1))) == 1
        assert P @ P == GradedOperator.identity(space, 10)

    def test_parity(self):
        rep = build_fundamental(1, 10)
        assert rep.e[0].parity == 1
        assert rep.K[0].parity == 0
        with pytest.raises(IdentityCheckError):
            (rep.e[0] + rep.identity).parity

    def test_supertraces(self):
        ident = GradedOperator.identity(TensorSpace.power(1, 1), 10)
        assert ident.supertrace() == -1
        two = GradedOperator.identity(TensorSpace.power(1, 2), 10)
        assert two.supertrace() == 1
        assert two.partial_supertrace(quantum=False) == ident.scale(-1)

    def test_rank_and_inverse(self):
        R = r_check_product(1, 10)
        space = R.domain
        assert R.rank() == 9
        assert R @ r_check_inverse(1, 10) == GradedOperator.identity(space, 10)
        assert GradedOperator.zero(space, space, 10).rank() == 0
        with pytest.raises(IdentityCheckError):
            GradedOperator.zero(space, space, 10).inverse()

    def test_scalar_extraction(self, F10):
        assert GradedOperator.scalar(F10.q, 10, 1).to_scalar() == F10.q
        with pytest.raises(IdentityCheckError):
            GradedOperator.identity(TensorSpace.power(1, 1), 10).to_scalar()

    def test_compose_mismatch(self):
        a = GradedOperator.identity(TensorSpace.power(1, 1), 10)
        b = GradedOperator.identity(TensorSpace.power(1, 2), 10)
        with pytest.raises(ValueError):
            a @ b


class TestRowReducer:

    def test_span(self, F10):
        red = RowReducer(10)
        v = {(0,): F10.q, (1,): F10.one}
        assert red.add(v)
        assert not red.add({k: x * 2 for k, x in v.items()})
        assert red.add({(1,): F10.one})
        assert red.rank == 2
        assert red.contains({(0,): F10.one})
