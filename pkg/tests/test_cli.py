"""End-to-end runs of main.py tasks."""
import json

import pytest

from main import main, run_task
from ospq.config import WIDTH_ENV
from ospq.errors import ParseError
from ospq.invariant import s2xs1_closed_form
from ospq.rootdata import sdim
from ospq.schemas import JobSpec
from tasks.common import parse_link_text

UNKNOT_0 = json.dumps({"n": 1, "N": 10, "link": {"strands": 1, "braid": [], "framings": [0]}})
HOPF = json.dumps({"link": {"strands": 2, "braid": [1, 1], "framings": [0, 0]}})
BAD_FRAMINGS = json.dumps({"link": {"strands": 2, "braid": [1, 1], "framings": [0]}})
DIAGRAM = "components: 1\ncolors: 1\nCup+(0)\nCap-(0)\n"


def run_json(capsys, argv):
    code = main(argv + ["--format", "json"])
    return code, json.loads(capsys.readouterr().out)


class TestTables:

    def test_alcove(self, capsys):
        code, out = run_json(capsys, ["tables", "--n", "1", "--N", "10"])
        assert code == 0
        assert out["fieldLevel"] == 40
        assert out["alcove"] == [[0], [1]]
        assert out["boundary"] == [[2]]
        assert len(out["weights"]) == 3
        assert out["s2xs1_agree"] is False

    def test_defaults(self, capsys):
        code, out = run_json(capsys, ["tables"])
        assert code == 0
        assert (out["n"], out["N"]) == (1, 10)

    def test_obstructed_level_has_note(self, capsys):
        code, out = run_json(capsys, ["tables", "--N", "8"])
        assert code == 0
        assert "divisible by 4" in out["note"]
        assert "z" not in out

    def test_text_output(self, capsys):
        assert main(["tables"]) == 0
        assert "alcove weights:" in capsys.readouterr().out

    def test_pdf(self, tmp_path, capsys):
        pytest.importorskip("reportlab")
        path = tmp_path / "reports" / "tables.pdf"
        assert main(["tables", "--format", "pdf", "--output", str(path)]) == 0
        assert path.read_bytes().startswith(b"%PDF")
        assert "Generated" in capsys.readouterr().out


class TestInvariant:

    def test_s2xs1(self, capsys, write_file):
        code, out = run_json(capsys, ["invariant", "-f", write_file("o0.json", UNKNOT_0)])
        assert code == 0
        assert out["fieldLevel"] == 40
        assert out["sigma"] == 1
        assert out["components"] == 1
        assert out["value"] == s2xs1_closed_form(1, 10).to_pairs()

    def test_output_file(self, tmp_path, write_file):
        target = tmp_path / "out" / "hopf.json"
        code = main(["invariant", "-f", write_file("hopf.json", HOPF), "--format", "json",
                     "--output", str(target)])
        assert code == 0
        assert json.loads(target.read_text())["components"] == 2

    def test_deterministic(self, capsys, write_file):
        path = write_file("o0.json", UNKNOT_0)
        main(["invariant", "-f", path, "--format", "json"])
        first = capsys.readouterr().out
        main(["invariant", "-f", path, "--format", "json"])
        assert capsys.readouterr().out == first

    def test_framing_mismatch(self, capsys, write_file):
        code, out = run_json(capsys, ["invariant", "-f", write_file("bad.json", BAD_FRAMINGS)])
        assert code == 3
        assert out["error"] == "framing count 1 != component count 2"
        assert out["kind"] == "SemanticError"

    def test_bad_json(self, capsys, write_file):
        code, out = run_json(capsys, ["invariant", "-f", write_file("bad.json", "{\"link\": ")])
        assert code == 2
        assert "line 1" in out["error"]

    def test_missing_file(self, capsys, tmp_path):
        code, _ = run_json(capsys, ["invariant", "-f", str(tmp_path / "absent.json")])
        assert code == 2

    def test_obstruction(self, capsys, write_file):
        code, out = run_json(capsys, ["invariant", "--N", "8", "-f", write_file("hopf.json", HOPF)])
        assert code == 4
        assert "divisible by 4" in out["error"]

    def test_flag_conflicts_with_file(self, capsys, write_file):
        code, _ = run_json(capsys, ["invariant", "--N", "14", "-f", write_file("o0.json", UNKNOT_0)])
        assert code == 3

    def test_width_cap(self, capsys, monkeypatch, write_file):
        monkeypatch.setenv(WIDTH_ENV, "1")
        code, out = run_json(capsys, ["invariant", "-f", write_file("hopf.json", HOPF)])
        assert code == 4
        assert WIDTH_ENV in out["details"]

    def test_invalid_rank_flag(self, capsys):
        code, _ = run_json(capsys, ["invariant", "--n", "0"])
        assert code == 2


class TestVerify:

    def test_single_suite(self, capsys):
        code, out = run_json(capsys, ["verify", "--suite", "gauss"])
        assert code == 0
        assert out["passed"] is True
        assert {r["detail"].split(";")[0] for r in out["results"]} == {
            "n=1, N=6", "n=1, N=10", "n=1, N=14", "n=2, N=10", "n=3, N=14",
        }

    def test_gauss_products_follow_rank(self, capsys):
        code, out = run_json(capsys, ["verify", "--suite", "gauss", "--n", "3", "--N", "14"])
        assert code == 0
        products = [r["identity"] for r in out["results"] if r["identity"].startswith("prod over")]
        assert len(products) == 3
        assert "t^35" in products[-1]

    def test_informational_lines_are_not_counted(self, capsys):
        code, out = run_json(capsys, ["verify", "--suite", "so", "--n", "2", "--N", "14"])
        assert code == 0
        assert [r["identity"] for r in out["results"]] == ["F(S2xS1) != 0"]
        assert len(out["notes"]) == 1
        assert out["notes"][0].startswith("so: F(S2xS1) against the so(5) value (n=2, N=14; ")

    def test_informational_lines_in_text(self, capsys):
        assert main(["verify", "--suite", "so", "--n", "2", "--N", "14"]) == 0
        text = capsys.readouterr().out
        assert "[INFO] so:" in text
        assert "1/1 identities hold" in text

    def test_explicit_configuration(self, capsys):
        code, out = run_json(capsys, ["verify", "--suite", "cubic,trace", "--n", "1", "--N", "10"])
        assert code == 0
        assert out["suites"] == ["cubic", "trace"]

    def test_unknown_suite(self, capsys):
        code, out = run_json(capsys, ["verify", "--suite", "gauss,nope"])
        assert code == 3
        assert out["error"] == "Unknown suite: nope"

    @pytest.mark.parametrize("suite", ["phi", "sdim", "z", "fixtures", "obstruction", "oracle", "so"])
    def test_suite_passes(self, capsys, suite):
        assert main(["verify", "--suite", suite]) == 0
        assert "[FAIL]" not in capsys.readouterr().out


class TestTangleEval:

    def test_closed(self, capsys, write_file):
        code, out = run_json(capsys, ["tangle-eval", "-f", write_file("unknot.txt", DIAGRAM)])
        assert code == 0
        assert out["scalar"] == sdim((1,), 1, 10).to_pairs()
        assert out["colors"] == [[1]]

    def test_open(self, capsys, write_file):
        curl = "components: 1\nI+(0) Cup+(0)\nX+(0,0) I-(0)\nI+(0) Cap-(0)\n"
        code, out = run_json(capsys, ["tangle-eval", "-f", write_file("curl.txt", curl)])
        assert code == 0
        assert out["shape"] == {"domain": 3, "codomain": 3, "nonzero": 3}

    def test_parse_error(self, capsys, write_file):
        code, out = run_json(capsys, ["tangle-eval", "-f", write_file("bad.txt", "components: 1\nCup+(0\n")])
        assert code == 2
        assert out["kind"] == "ParseError"


class TestDispatch:

    def test_unknown_task(self):
        with pytest.raises(ValueError):
            run_task("render", JobSpec(task="tables"))

    def test_argparse_rejects_task(self):
        with pytest.raises(SystemExit):
            main(["render"])

    def test_parse_link_text(self):
        job, link = parse_link_text(HOPF)
        assert job.n is None and job.colors == "all"
        assert link.num_components == 2
        with pytest.raises(ParseError, match="schema violation at link"):
            parse_link_text(json.dumps({"link": {"braid": []}}))
