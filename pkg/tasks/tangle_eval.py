"""`tangle-eval` task: evaluate a sliced ribbon-tangle diagram."""
import logging

from ospq.config import check_rank, check_width, load_limits
from ospq.cyclo import Scalar
from ospq.diagrams import parse_diagram
from ospq.schemas import JobSpec, TangleRecord
from ospq.tangles import eval_diagram, normalize_color
from tasks.common import approx, emit, format_scalar, read_text

log = logging.getLogger(__name__)


def run(job: JobSpec) -> int:
    limits = load_limits()
    n, N = job.params()
    check_rank(n, limits)
    diagram = parse_diagram(read_text(job.input_path, "diagram file"))
    raw = diagram.colors if diagram.colors is not None else [(1,)] * diagram.components
    lams = [normalize_color(c, n, N) for c in raw]
    widths = [sum(lam) for lam in lams]
    widest = max((sum(widths[c] for c, _ in strands) for strands in diagram.boundaries()), default=0)
    check_width(n, widest, limits)

    op = eval_diagram(diagram, n, N, colors=lams)
    record = TangleRecord(
        fieldLevel=4 * N,
        components=diagram.components,
        colors=[list(lam) for lam in lams],
    )
    lines = [
        f"osp(1|{2 * n}) at N={N}: {len(diagram.rows)} rows, {diagram.components} components",
        f"colors: {[list(lam) for lam in lams]}",
    ]
    if diagram.is_closed():
        value: Scalar = op.to_scalar()
        record.scalar = value.to_pairs()
        record.approx = approx(value, limits)
        lines.append(f"value : {format_scalar(value, limits)}")
    else:
        record.shape = {"domain": op.domain.dim, "codomain": op.codomain.dim, "nonzero": op.nnz()}
        lines.append(f"operator: {op.domain.dim} -> {op.codomain.dim}, {op.nnz()} nonzero entries")
    emit(job, record, lines, title="Tangle evaluation")
    return 0
