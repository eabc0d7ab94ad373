"""Framed links, the signature count, the coloring sum and F(M_L)."""
import pytest

from ospq.cyclo import field_for
from ospq.errors import SemanticError, UnsupportedRegime
from ospq.invariant import (
    EMPTY,
    HOPF_00,
    KIRBY_PLUS_PAIRS,
    UNKNOT_0,
    UNKNOT_MINUS,
    UNKNOT_PLUS,
    FramedLink,
    colorings,
    compare_s2xs1,
    linking_matrix,
    rt_invariant,
    s2xs1_closed_form,
    sigma_count,
    so_comparison_scalar,
    sum_L,
    trefoil,
)
from ospq.rootdata import constants, sdim


class TestFramedLink:

    def test_components(self):
        assert HOPF_00.num_components == 2
        assert trefoil(0).num_components == 1
        assert EMPTY.num_components == 0

    def test_framing_count(self):
        with pytest.raises(SemanticError, match="framing count 1 != component count 2"):
            FramedLink(2, (1, 1), (0,))

    def test_generator_range(self):
        with pytest.raises(SemanticError, match="outside"):
            FramedLink(2, (3,), (0,))
        with pytest.raises(SemanticError):
            FramedLink(2, (0,), (0,))

    def test_disjoint_union(self):
        joined = HOPF_00.disjoint_union(UNKNOT_PLUS)
        assert joined.strands == 3
        assert joined.framings == (0, 0, 1)
        assert joined.num_components == 3

    def test_reversal(self):
        link = FramedLink(3, (1, 1, 2), (4, 5))
        rev, mapping = link.reversed_with_map()
        assert rev.braid == (1, 2, 2)
        assert sorted(mapping) == [0, 1]
        assert [rev.framings[k] for k in range(2)] == [link.framings[c] for c in mapping]


class TestLinkingMatrix:

    def test_examples(self):
        assert linking_matrix(HOPF_00) == ((0, 1), (1, 0))
        assert linking_matrix(trefoil(3)) == ((3,),)
        assert linking_matrix(UNKNOT_0) == ((0,),)
        assert linking_matrix(UNKNOT_MINUS) == ((-1,),)
        assert linking_matrix(EMPTY) == ()

    def test_negative_linking(self):
        assert linking_matrix(FramedLink(2, (-1, -1), (2, 2))) == ((2, -1), (-1, 2))

    def test_sigma(self):
        assert sigma_count([[0]]) == 1
        assert sigma_count([[1]]) == 0
        assert sigma_count([[-1, 0], [0, 1]]) == 1
        assert sigma_count([]) == 0
        assert sigma_count([[0, 1], [1, 0]]) == 1
        assert sigma_count([[2, 1], [1, 2]]) == 0
        assert sigma_count([[1, 1], [1, 1]]) == 1

    def test_sigma_needs_symmetry(self):
        with pytest.raises(SemanticError):
            sigma_count([[0, 1], [2, 0]])


class TestColoringSum:

    def test_unknots(self):
        assert sum_L(UNKNOT_PLUS, 1, 10) == 1
        assert sum_L(UNKNOT_MINUS, 1, 10) == constants(1, 10).z
        assert sum_L(EMPTY, 1, 10) == 1

    def test_zero_framed_unknot(self):
        data = constants(1, 10)
        expected = field_for(10).zero
        for lam in data.weights:
            expected = expected + data.d[lam] * sdim(lam, 1, 10)
        assert sum_L(UNKNOT_0, 1, 10) == expected

    def test_palette(self):
        data = constants(1, 10)
        assert sum_L(UNKNOT_0, 1, 10, palette=[[0]]) == data.d[(0,)]
        with pytest.raises(SemanticError):
            sum_L(UNKNOT_0, 1, 10, palette=[[2]])

    def test_colorings(self):
        assert len(colorings(HOPF_00, [(0,), (1,)])) == 4
        assert colorings(EMPTY, [(0,), (1,)]) == [()]

    def test_parallel_matches_sequential(self):
        assert sum_L(HOPF_00, 1, 10, parallel=2) == sum_L(HOPF_00, 1, 10)

    def test_orientation(self):
        for link in (UNKNOT_0, HOPF_00, trefoil(0), trefoil(3)):
            assert sum_L(link.reversed(), 1, 10) == sum_L(link, 1, 10)

    @pytest.mark.parametrize("name,before,after", KIRBY_PLUS_PAIRS)
    def test_kappa_plus(self, name, before, after):
        assert sum_L(before, 1, 10) == sum_L(after, 1, 10)


class TestInvariant:

    @pytest.mark.parametrize("link", [EMPTY, UNKNOT_PLUS, UNKNOT_MINUS])
    def test_three_sphere(self, link):
        assert rt_invariant(link, 1, 10).value == 1

    def test_s2xs1(self):
        result = rt_invariant(UNKNOT_0, 1, 10)
        assert result.sigma == 1
        assert result.components == 1
        assert result.value == s2xs1_closed_form(1, 10)
        assert abs(result.approx) > 0

    @pytest.mark.parametrize("base", [UNKNOT_0, HOPF_00, trefoil(0), trefoil(3)])
    def test_special_moves(self, base):
        value = rt_invariant(base, 1, 10).value
        assert rt_invariant(base.disjoint_union(UNKNOT_PLUS), 1, 10).value == value
        assert rt_invariant(base.disjoint_union(UNKNOT_MINUS), 1, 10).value == value

    def test_obstruction(self):
        with pytest.raises(UnsupportedRegime, match="divisible by 4") as info:
            rt_invariant(UNKNOT_0, 1, 8)
        assert info.value.exit_code == 4

    @pytest.mark.slow
    def test_rank_two(self):
        assert rt_invariant(UNKNOT_PLUS, 2, 14).value == 1
        assert rt_invariant(UNKNOT_0, 2, 14).value == s2xs1_closed_form(2, 14)


class TestSoComparison:

    @pytest.mark.parametrize("N", [6, 10, 14])
    def test_rank_one_differs(self, N):
        assert not compare_s2xs1(1, N).agree

    def test_needs_level_two_mod_four(self):
        with pytest.raises(UnsupportedRegime):
            so_comparison_scalar(1, 8)
