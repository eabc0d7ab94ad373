"""The functor on atoms, cabling by color projectors, framing correction and braid closures."""
import pytest

from ospq.diagrams import compile_braid_closure, parse_diagram
from ospq.errors import SemanticError
from ospq.graded import GradedOperator, TensorSpace
from ospq.rootdata import chi_v_inv, f_coefficient, sdim
from ospq.tangles import (
    braid_closure_value,
    cable_word,
    cap,
    closure_writhes,
    cup,
    eval_closed,
    eval_diagram,
    framing_factor,
    normalize_color,
)

UNKNOT = "components: 1\nCup+(0)\nCap-(0)\n"
UNKNOT_UP = "components: 1\nCup-(0)\nCap+(0)\n"
CURL = "components: 1\nI+(0) Cup+(0)\nX+(0,0) I-(0)\nI+(0) Cap-(0)\n"


class TestAtoms:

    def test_cup_cap_shapes(self):
        c = cup(1, 10, 2, 1)
        assert c.domain.signature == ()
        assert c.codomain.signature == (1, 1, -1, -1)
        k = cap(1, 10, 1, -1)
        assert k.domain.signature == (1, -1)
        assert k.codomain.signature == ()

    def test_cable_word(self):
        assert cable_word(0, 1, 1, 1) == [1]
        assert cable_word(0, 2, 1, -1) == [-2, -1]
        assert cable_word(1, 1, 2, 1) == [2, 3]


class TestClosedDiagrams:

    def test_unknot_is_superdimension(self):
        assert eval_closed(parse_diagram(UNKNOT), 1, 10) == sdim((1,), 1, 10)

    def test_upward_unknot(self):
        assert eval_closed(parse_diagram(UNKNOT_UP), 1, 10) == sdim((1,), 1, 10)

    def test_colored_unknot(self):
        d = parse_diagram(UNKNOT)
        assert eval_closed(d, 1, 14, colors=[(2,)]) == sdim((2,), 1, 14)
        assert eval_closed(d, 2, 14, colors=[(1, 1)]) == sdim((1, 1), 2, 14)

    def test_hopf_matches_closure_trace(self):
        d = compile_braid_closure(2, (1, 1))
        direct = braid_closure_value(2, (1, 1), [(1,), (1,)], [0, 0], 1, 10)
        assert eval_closed(d, 1, 10) == direct
        assert direct == f_coefficient((1,), (1,), 1, 10)

    def test_open_diagram_rejected(self):
        with pytest.raises(SemanticError):
            eval_closed(parse_diagram(CURL), 1, 10)


class TestFraming:

    def test_curl_is_twist(self, F10):
        ident = GradedOperator.identity(TensorSpace.power(1, 1), 10)
        d = parse_diagram(CURL)
        assert eval_diagram(d, 1, 10) == ident.scale(F10.q_pow(2))
        assert eval_diagram(d, 1, 10, framings=[0]) == ident

    def test_framed_unknot(self, F10):
        value = eval_closed(parse_diagram(UNKNOT), 1, 10, framings=[1])
        assert value == sdim((1,), 1, 10) * F10.q_pow(2)
        assert braid_closure_value(1, (), [(1,)], [1], 1, 10) == value

    def test_framing_factor(self):
        assert framing_factor([(1,)], [2], [0], 1, 10) == chi_v_inv((1,), 1, 10) ** 2
        assert framing_factor([(1,)], [3], [3], 1, 10) == 1

    def test_empty_closure(self):
        assert braid_closure_value(1, (), [(0,)], [0], 1, 10) == 1


class TestColors:

    def test_padding(self):
        assert normalize_color([1], 2, 14) == (1, 0)
        assert normalize_color([2, 1, 0], 2, 14) == (2, 1)

    def test_rejections(self):
        with pytest.raises(SemanticError, match="dominant"):
            normalize_color([0, 1], 2, 14)
        with pytest.raises(SemanticError, match="alcove"):
            normalize_color([3], 1, 10)
        with pytest.raises(SemanticError, match="more than"):
            normalize_color([1, 1], 1, 10)

    def test_count_mismatch(self):
        with pytest.raises(SemanticError):
            eval_diagram(parse_diagram(UNKNOT), 1, 10, colors=[(1,), (1,)])
        with pytest.raises(SemanticError):
            braid_closure_value(2, (1, 1), [(1,)], [0, 0], 1, 10)


class TestClosureBookkeeping:

    def test_writhes_and_mixed(self):
        cycles, writhe, mixed = closure_writhes(2, (1, 1))
        assert cycles == [[0], [1]]
        assert writhe == [0, 0]
        assert mixed == {(0, 1): 2}
        _, writhe, _ = closure_writhes(2, (1, -1, -1))
        assert writhe == [-1]
