"""Validated input and output records for the CLI tasks."""
from typing import Annotated, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field


class LinkSpec(BaseModel):
    """Braid presentation of a framed link."""
    model_config = ConfigDict(extra="forbid")

    strands: Annotated[int, Field(ge=0, description="Number of braid strands")]
    braid: Annotated[List[int], Field(default_factory=list, description="Signed generator indices")]
    framings: Annotated[List[int], Field(default_factory=list, description="Framing per component")]


class JobInput(BaseModel):
    """Contents of an `invariant` input file."""
    model_config = ConfigDict(extra="forbid")

    n: Optional[int] = None
    N: Optional[int] = None
    link: LinkSpec
    colors: Union[Literal["all"], List[List[int]]] = "all"


DEFAULT_RANK = 1
DEFAULT_LEVEL = 10


class JobSpec(BaseModel):
    """One CLI invocation. n and N stay None when not given on the command line."""
    model_config = ConfigDict(frozen=True)

    n: Optional[Annotated[int, Field(ge=1)]] = None
    N: Optional[Annotated[int, Field(ge=3)]] = None
    task: Literal["invariant", "tables", "verify", "tangle_eval"]
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    format: Literal["text", "json", "pdf"] = "text"
    parallel: Annotated[int, Field(ge=1)] = 1
    suite: Optional[str] = None

    @property
    def explicit(self) -> bool:
        return self.n is not None or self.N is not None

    def params(self, n: Optional[int] = None, N: Optional[int] = None) -> Tuple[int, int]:
        """(n, N) from the flags, then the given fallbacks, then the defaults."""
        rank = self.n if self.n is not None else (n if n is not None else DEFAULT_RANK)
        level = self.N if self.N is not None else (N if N is not None else DEFAULT_LEVEL)
        return rank, level


class Approx(BaseModel):
    re: float
    im: float


class InvariantRecord(BaseModel):
    """Exact value of F(M_L) in the power basis of the 4N-th cyclotomic field."""
    model_config = ConfigDict(populate_by_name=True)

    fieldLevel: Annotated[int, Field(description="Cyclotomic level M = 4N")]
    value: Annotated[List[List[int]], Field(description="[num, den] per power-basis coefficient")]
    approx: Approx
    sigma: int
    components: int


class WeightRow(BaseModel):
    weight: List[int]
    sdim: List[List[int]]
    sdim_approx: Approx
    d: Optional[List[List[int]]] = None
    d_approx: Optional[Approx] = None


class TablesRecord(BaseModel):
    """Alcove data and pseudo-modular constants for one (n, N)."""
    n: int
    N: int
    fieldLevel: int
    alcove: List[List[int]]
    boundary: List[List[int]]
    weights: List[WeightRow]
    omega: Optional[List[List[int]]] = None
    q0: Optional[List[List[int]]] = None
    z: Optional[List[List[int]]] = None
    z_approx: Optional[Approx] = None
    s2xs1_osp: Optional[Approx] = None
    s2xs1_so: Optional[Approx] = None
    s2xs1_agree: Optional[bool] = None
    note: Optional[str] = None


class CheckResult(BaseModel):
    suite: str
    identity: str
    passed: bool
    detail: Optional[str] = None


class VerifyRecord(BaseModel):
    suites: List[str]
    results: List[CheckResult]
    passed: bool
    notes: List[str] = Field(default_factory=list)


class TangleRecord(BaseModel):
    """Result of evaluating a sliced diagram."""
    fieldLevel: int
    components: int
    colors: List[List[int]]
    scalar: Optional[List[List[int]]] = None
    approx: Optional[Approx] = None
    shape: Optional[Dict[str, int]] = None


class ErrorRecord(BaseModel):
    """Error output model."""
    error: Annotated[str, Field(description="Error message")]
    kind: Annotated[str, Field(description="Exception class")]
    code: Annotated[int, Field(description="Process exit code")]
    details: Annotated[Optional[str], Field(default=None, description="Error details")]
