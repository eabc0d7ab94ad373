"""`tables` task: alcove weights, superdimensions and the pseudo-modular constants."""
import logging

from ospq.config import check_rank, load_limits
from ospq.errors import UnsupportedRegime
from ospq.invariant import compare_s2xs1
from ospq.rootdata import alcove, constants, sdim
from ospq.schemas import JobSpec, TablesRecord, WeightRow
from tasks.common import approx, emit, format_scalar

log = logging.getLogger(__name__)


def run(job: JobSpec) -> int:
    limits = load_limits()
    n, N = job.params()
    check_rank(n, limits)
    interior, closure = alcove(n, N)
    boundary = [lam for lam in closure if lam not in interior]

    data = None
    note = None
    try:
        data = constants(n, N)
    except UnsupportedRegime as exc:
        note = exc.message
        log.info("no pseudo-modular constants at n=%d N=%d: %s", n, N, note)

    rows = []
    lines = [f"osp(1|{2 * n}) at N={N} (field level {4 * N})", "", "alcove weights:"]
    for lam in closure:
        s = sdim(lam, n, N)
        row = WeightRow(weight=list(lam), sdim=s.to_pairs(), sdim_approx=approx(s, limits))
        tag = "" if lam in interior else "  (boundary)"
        lines.append(f"  {list(lam)}{tag}")
        lines.append(f"    sdim = {format_scalar(s, limits)}")
        if data is not None and lam in data.d:
            d = data.d[lam]
            row.d = d.to_pairs()
            row.d_approx = approx(d, limits)
            lines.append(f"    d    = {format_scalar(d, limits)}")
        rows.append(row)

    record = TablesRecord(
        n=n, N=N, fieldLevel=4 * N,
        alcove=[list(lam) for lam in interior],
        boundary=[list(lam) for lam in boundary],
        weights=rows,
        note=note,
    )
    lines.append("")
    if data is not None:
        record.omega = data.omega.to_pairs()
        record.q0 = data.q0.to_pairs()
        record.z = data.z.to_pairs()
        record.z_approx = approx(data.z, limits)
        cmp = compare_s2xs1(n, N)
        record.s2xs1_osp = approx(cmp.osp, limits)
        record.s2xs1_so = approx(cmp.so, limits)
        record.s2xs1_agree = cmp.agree
        lines += [
            f"Omega = {format_scalar(data.omega, limits)}",
            f"Q(0)  = {format_scalar(data.q0, limits)}",
            f"z     = {format_scalar(data.z, limits)}",
            "",
            f"F(S2xS1), osp(1|{2 * n})    : {format_scalar(cmp.osp, limits)}",
            f"F(S2xS1), so({2 * n + 1}) at N/2 : {format_scalar(cmp.so, limits)}",
            f"agree: {'yes' if cmp.agree else 'no'}",
        ]
    else:
        lines.append(f"note: {note}")
    emit(job, record, lines, title="Alcove tables")
    return 0
