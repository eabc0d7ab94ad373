"""`invariant` task: F(M_L) for a framed link given as a braid closure."""
import logging

from ospq.config import check_rank, check_width, load_limits
from ospq.errors import SemanticError
from ospq.invariant import rt_invariant
from ospq.rootdata import alcove, require_invariant_regime
from ospq.schemas import InvariantRecord, JobSpec
from tasks.common import approx, emit, format_scalar, parse_link_file

log = logging.getLogger(__name__)


def run(job: JobSpec) -> int:
    limits = load_limits()
    job_input, link = parse_link_file(job.input_path)
    for flag, given, in_file in (("n", job.n, job_input.n), ("N", job.N, job_input.N)):
        if given is not None and in_file is not None and given != in_file:
            raise SemanticError(f"--{flag} {given} conflicts with {flag}={in_file} in {job.input_path}")
    n, N = job.params(job_input.n, job_input.N)
    check_rank(n, limits)
    require_invariant_regime(n, N)

    palette = None if job_input.colors == "all" else job_input.colors
    weights = alcove(n, N)[0] if palette is None else palette
    widest = max((sum(c) for c in weights), default=0)
    check_width(n, link.strands * widest, limits)

    result = rt_invariant(link, n, N, parallel=job.parallel, palette=palette)
    record = InvariantRecord(
        fieldLevel=4 * N,
        value=result.value.to_pairs(),
        approx=approx(result.value, limits),
        sigma=result.sigma,
        components=result.components,
    )
    lines = [
        f"osp(1|{2 * n}) at N={N}: F(M_L) for a {link.strands}-strand braid closure",
        f"braid      : {list(link.braid) or '(empty)'}",
        f"framings   : {list(link.framings)}",
        f"components : {result.components}",
        f"sigma      : {result.sigma}",
        f"value      : {format_scalar(result.value, limits)}",
    ]
    if palette is not None:
        lines.append("note       : colors restricted to the given palette")
    emit(job, record, lines, title="Manifold invariant")
    return 0
