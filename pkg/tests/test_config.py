"""Limits loading, the width override, error records and the pydantic models."""
import json

import pytest
from pydantic import ValidationError

from ospq.config import WIDTH_ENV, check_rank, check_width, load_limits
from ospq.errors import (
    ConfigError,
    EigenvalueCollision,
    IdentityCheckError,
    OspqError,
    ParseError,
    SemanticError,
    UnsupportedRegime,
    ZeroDenominator,
)
from ospq.schemas import DEFAULT_LEVEL, DEFAULT_RANK, InvariantRecord, JobInput, JobSpec


class TestLimits:

    def test_shipped_defaults(self):
        limits = load_limits()
        assert limits.max_rank >= 2
        assert limits.width_cap(1) >= 3
        assert 0 < limits.display_precision < 1

    def test_missing_file_uses_defaults(self, tmp_path):
        limits = load_limits(str(tmp_path / "none.json"))
        assert limits.max_rank == 4
        assert limits.width_cap(2) == 5

    def test_file_values(self, write_file):
        path = write_file("limits.json", json.dumps({"max_rank": 2, "max_width": {"1": 4}}))
        limits = load_limits(path)
        assert limits.max_rank == 2
        assert limits.width_cap(1) == 4
        assert limits.width_cap(3) == 1

    def test_invalid_values(self, write_file):
        with pytest.raises(ConfigError):
            load_limits(write_file("a.json", json.dumps({"max_rank": 0})))
        with pytest.raises(ConfigError):
            load_limits(write_file("b.json", json.dumps({"max_width": [1, 2]})))
        with pytest.raises(ConfigError):
            load_limits(write_file("c.json", json.dumps({"display_precision": 2})))

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv(WIDTH_ENV, "2")
        limits = load_limits()
        assert limits.width_cap(1) == 2
        check_width(1, 2, limits)
        with pytest.raises(UnsupportedRegime) as info:
            check_width(1, 3, limits)
        assert WIDTH_ENV in info.value.details

    def test_env_invalid(self, monkeypatch):
        monkeypatch.setenv(WIDTH_ENV, "many")
        with pytest.raises(ConfigError):
            load_limits()
        monkeypatch.setenv(WIDTH_ENV, "-3")
        with pytest.raises(ConfigError):
            load_limits()

    def test_rank_cap(self):
        limits = load_limits()
        check_rank(1, limits)
        with pytest.raises(UnsupportedRegime):
            check_rank(limits.max_rank + 1, limits)


class TestErrors:

    def test_exit_codes(self):
        assert OspqError("x").exit_code == 1
        assert ParseError("x").exit_code == 2
        assert SemanticError("x").exit_code == 3
        assert ConfigError("x").exit_code == 3
        assert UnsupportedRegime("x").exit_code == 4
        assert EigenvalueCollision("x").exit_code == 4
        assert IdentityCheckError("x").exit_code == 5
        assert ZeroDenominator("x").exit_code == 5
        assert isinstance(ZeroDenominator("x"), ZeroDivisionError)

    def test_parse_position(self):
        err = ParseError("bad token", 3, 7)
        assert err.message == "bad token (line 3, column 7)"
        assert (err.line, err.column) == (3, 7)

    def test_record(self):
        record = SemanticError("Unknown suite: foo", details="available: gauss").to_record()
        assert record.kind == "SemanticError"
        assert record.code == 3
        assert record.details == "available: gauss"
        assert "details" not in UnsupportedRegime("x").to_record().model_dump(exclude_none=True)


class TestSchemas:

    def test_job_input(self):
        job = JobInput.model_validate({"n": 1, "N": 10, "link": {"strands": 1, "braid": [], "framings": [0]}})
        assert job.colors == "all"
        assert job.link.strands == 1

    def test_job_input_rejects_extra(self):
        with pytest.raises(ValidationError):
            JobInput.model_validate({"link": {"strands": 1, "knot": []}})

    def test_params(self):
        job = JobSpec(task="invariant")
        assert not job.explicit
        assert job.params() == (DEFAULT_RANK, DEFAULT_LEVEL)
        assert job.params(2, 14) == (2, 14)
        assert JobSpec(task="invariant", N=6).params(2, 14) == (2, 6)

    def test_job_bounds(self):
        with pytest.raises(ValidationError):
            JobSpec(task="tables", n=0)
        with pytest.raises(ValidationError):
            JobSpec(task="tables", N=2)
        with pytest.raises(ValidationError):
            JobSpec(task="render")

    def test_invariant_record_keys(self):
        record = InvariantRecord(fieldLevel=40, value=[[1, 1]], approx={"re": 1.0, "im": 0.0},
                                 sigma=0, components=1)
        assert list(json.loads(record.model_dump_json())) == ["fieldLevel", "value", "approx", "sigma", "components"]
