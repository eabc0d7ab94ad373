"""Diagram text format, validation and braid-closure compilation."""
import pytest

from ospq.diagrams import Atom, braid_components, compile_braid_closure, load_diagram, parse_diagram
from ospq.errors import ParseError, SemanticError

UNKNOT = """\
# a single circle
components: 1
Cup+(0)
Cap-(0)
"""

CURL = """\
components: 1
I+(0) Cup+(0)
X+(0,0) I-(0)
I+(0) Cap-(0)
"""


class TestParse:

    def test_unknot(self):
        d = parse_diagram(UNKNOT)
        assert d.components == 1
        assert d.rows == ((Atom("Cup", 1, (0,)),), (Atom("Cap", -1, (0,)),))
        assert d.is_closed()
        assert d.line_numbers == (3, 4)

    def test_curl_boundaries(self):
        d = parse_diagram(CURL)
        assert d.top == [(0, 1)]
        assert d.bottom == [(0, 1)]
        assert not d.is_closed()
        assert d.writhe() == [1]

    def test_headers(self):
        d = parse_diagram("components: 2\ncolors: 1 | 2,0\nframings: 0 -1\nCup+(0) Cup+(1)\nCap-(0) Cap-(1)\n")
        assert d.colors == ((1,), (2, 0))
        assert d.framings == (0, -1)

    def test_bad_token_position(self):
        with pytest.raises(ParseError) as info:
            parse_diagram("components: 1\nCup+(0)\nCap-(0) Foo\n")
        assert info.value.line == 3
        assert info.value.column == 9
        assert info.value.exit_code == 2

    def test_wrong_arity(self):
        with pytest.raises(ParseError, match="takes 2"):
            parse_diagram("components: 1\nX+(0)\n")

    def test_missing_header(self):
        with pytest.raises(ParseError, match="components"):
            parse_diagram("Cup+(0)\nCap-(0)\n")

    def test_header_after_rows(self):
        with pytest.raises(ParseError):
            parse_diagram("components: 1\nCup+(0)\nframings: 0\nCap-(0)\n")

    def test_boundary_mismatch(self):
        with pytest.raises(SemanticError, match="row 2"):
            parse_diagram("components: 1\nCup+(0)\nCap+(0)\n")

    def test_component_out_of_range(self):
        with pytest.raises(SemanticError):
            parse_diagram("components: 1\nCup+(1)\nCap-(1)\n")

    def test_unused_component(self):
        with pytest.raises(SemanticError, match="never appear"):
            parse_diagram(UNKNOT.replace("components: 1", "components: 2"))

    def test_load_missing_file(self, tmp_path):
        with pytest.raises(ParseError):
            load_diagram(str(tmp_path / "absent.txt"))

    def test_load(self, write_file):
        assert load_diagram(write_file("unknot.txt", UNKNOT)).is_closed()


class TestBraidClosures:

    def test_components(self):
        assert braid_components(2, (1,)) == [[0, 1]]
        assert braid_components(2, (1, 1)) == [[0], [1]]
        assert braid_components(3, (1, 2)) == [[0, 1, 2]]
        assert braid_components(3, ()) == [[0], [1], [2]]

    def test_generator_range(self):
        with pytest.raises(SemanticError):
            braid_components(2, (2,))

    def test_compiled_hopf(self):
        d = compile_braid_closure(2, (1, 1))
        assert d.components == 2
        assert d.is_closed()
        assert d.writhe() == [0, 0]

    def test_compiled_trefoil(self):
        d = compile_braid_closure(2, (1, 1, 1), colors=[(1,)], framings=[3])
        assert d.components == 1
        assert d.writhe() == [3]
        assert d.framings == (3,)
