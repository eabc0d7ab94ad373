"""`verify` task: named suites of exact identities.

Each suite maps (n, N) to a list of (identity, passed, detail). A passed value
of None marks an informational line: it is reported as a note and not counted.
Without --n/--N a suite runs on its own default configurations.
"""
from itertools import product
from math import factorial
from typing import Callable, Dict, List, Optional, Sequence, Tuple
import logging

from ospq.config import check_rank, load_limits
from ospq.cyclo import field_for, gauss_sum, n_prime, phi_beta, phi_beta_closed
from ospq.diagrams import compile_braid_closure
from ospq.errors import IdentityCheckError, SemanticError, UnsupportedRegime
from ospq.fundrep import (
    build_fundamental,
    check_braid_relation,
    check_cubic,
    check_duality,
    check_partial_trace,
    check_r_invariance,
    r_check_product,
    r_check_spectral,
    spectral_decomposition,
)
from ospq.invariant import (
    EMPTY,
    HOPF_00,
    KIRBY_PLUS_PAIRS,
    UNKNOT_0,
    UNKNOT_MINUS,
    UNKNOT_PLUS,
    compare_s2xs1,
    rt_invariant,
    s2xs1_closed_form,
    sum_L,
    trefoil,
)
from ospq.rootdata import (
    alcove,
    chi_C,
    chi_v,
    chi_v_inv,
    constants,
    f_coefficient,
    obstruction_pairs,
    q_square_sum,
    root_system,
    sdim,
)
from ospq.schemas import CheckResult, JobSpec, VerifyRecord
from ospq.tangles import braid_closure_value, eval_closed
from ospq.towers import branching, bwm_trace_values, bwm_verify, discover_bratteli, identity
from tasks.common import emit

log = logging.getLogger(__name__)

Check = Tuple[str, Optional[bool], Optional[str]]
Suite = Callable[[int, int], List[Check]]


def _guard(name: str, fn: Callable[[], None]) -> Check:
    try:
        fn()
    except IdentityCheckError as exc:
        return name, False, exc.message
    return name, True, None


def _eps1(n: int):
    return (1,) + (0,) * (n - 1)


# --- suites -----------------------------------------------------------------


def suite_gauss(n: int, N: int) -> List[Check]:
    F = field_for(N)
    root = F.one_plus_i_sqrt_n
    out: List[Check] = []
    if N % 4 == 2:
        out.append(("G+(N,0) = 0", gauss_sum(N, 0, 1).is_zero(), None))
    for m in (1, 3, 5):
        out.append((f"G+(N,{m}) = (1+i)sqrt(N) / t^{m * m}", gauss_sum(N, m, 1) == root / F.t ** (m * m), None))
    out.append(("G-(N,1) = conj G+(N,1)", gauss_sum(N, 1, -1) == gauss_sum(N, 1, 1).conjugate(), None))
    out.append(("(1+i)sqrt(N) (1-i)sqrt(N) = 2N", root * F.one_minus_i_sqrt_n == F.const(2 * N), None))
    # one factor per coordinate of 2rho = (2n-1, ..., 3, 1)
    prod = F.one
    exponent = 0
    for k, m in enumerate(reversed(root_system(n).two_rho), start=1):
        prod = prod * gauss_sum(N, m, 1)
        exponent += m * m
        out.append((f"prod over the first {k} odd m of G+(N,m) = [(1+i)sqrt(N)]^{k} / t^{exponent}",
                    prod == root ** k / F.t ** exponent, None))
    return out


def suite_phi(n: int, N: int) -> List[Check]:
    q = field_for(N).q
    out: List[Check] = []
    for beta in range(13):
        out.append((f"phi_{beta} recursion = closed form", phi_beta(beta, q) == phi_beta_closed(beta, q), None))
    Np = n_prime(N)
    vanishes = phi_beta(Np, q).is_zero()
    if N % 4 == 2:
        out.append((f"phi_{Np} != 0", not vanishes, None))
    else:
        out.append((f"phi_{Np} = 0", vanishes, None))
    return out


def suite_cubic(n: int, N: int) -> List[Check]:
    return [
        _guard("(R + q)(R - q^-1)(R - q^-2n) = 0", lambda: check_cubic(n, N)),
        _guard("R1 R2 R1 = R2 R1 R2", lambda: check_braid_relation(n, N)),
    ]


def suite_spectral(n: int, N: int) -> List[Check]:
    out = [("product R-check = spectral R-check", r_check_product(n, N) == r_check_spectral(n, N), None)]
    dec = spectral_decomposition(n, N)
    dims = tuple(dec.dims[k] for k in sorted(dec.dims, key=lambda k: -dec.dims[k]))
    out.append(("summand dimensions add to (2n+1)^2", sum(dims) == (2 * n + 1) ** 2, str(dims)))
    if n == 1:
        out.append(("summand dimensions (5, 3, 1)", dims == (5, 3, 1), str(dims)))
    out.append(_guard("R-check commutes with the coproduct", lambda: check_r_invariance(n, N)))
    return out


def suite_bwm(n: int, N: int) -> List[Check]:
    out: List[Check] = [(name, ok, None) for name, ok in bwm_verify(n, N, 3)]
    if n == 1:
        for path, strq, q_value in bwm_trace_values(n, N, 3):
            out.append((f"str_q p_{[list(w) for w in path.weights]} = Q", strq == q_value, None))
    return out


def suite_trace(n: int, N: int) -> List[Check]:
    return [_guard("(id (x) str_q) R-check^(+/-1) = q^(+/-2n) id", lambda: check_partial_trace(n, N))]


def suite_sdim(n: int, N: int) -> List[Check]:
    x = sdim(_eps1(n), n, N)
    out: List[Check] = [("str(K_2rho) on V = sdim(eps1)", identity(n, N, 1).supertrace(quantum=True) == x, None)]
    t = 3 if n == 1 else 2
    diagram = discover_bratteli(n, N, t, truncated=True)
    interior, closure = alcove(n, N)
    for level in range(1, t):
        for path in diagram.paths[level]:
            mu = path.shape
            if mu not in interior:
                continue
            info = branching(n, N, path.weights)
            total = field_for(N).zero
            for nu, mult in info.children.items():
                total = total + sdim(nu, n, N) * mult
            out.append((f"sdim({list(mu)}) sdim(V) = sum over children", total == sdim(mu, n, N) * x, None))
    for level in range(2, t + 1):
        for path in diagram.paths[level]:
            mult = 1
            for k in range(2, len(path.weights)):
                mult *= branching(n, N, path.weights[:k]).children[path.weights[k]]
            strq = diagram.projector(path).supertrace(quantum=True)
            out.append((f"str_q p_{[list(w) for w in path.weights]} = sdim", strq == sdim(path.shape, n, N) * mult, None))
    for lam in closure:
        if lam not in interior:
            out.append((f"sdim({list(lam)}) = 0 on the boundary", sdim(lam, n, N).is_zero(), None))
    return out


def suite_axiom5(n: int, N: int) -> List[Check]:
    F = field_for(N)
    data = constants(n, N)
    out: List[Check] = []
    for mu in data.weights:
        lhs = chi_v(mu, n, N) * sdim(mu, n, N)
        rhs = F.zero
        for lam in data.weights:
            rhs = rhs + data.d[lam] * chi_v_inv(lam, n, N) * f_coefficient(mu, lam, n, N)
        out.append((f"chi_v sdim = sum d chi_v^-1 f at {list(mu)}", lhs == rhs, None))
        out.append((f"chi_(0)(C_{list(mu)}) = sdim", chi_C((0,) * n, mu, n, N) == sdim(mu, n, N), None))
        out.append((f"chi_{list(mu)}(C_0) = 1", chi_C(mu, (0,) * n, n, N) == F.one, None))
    total = F.zero
    for lam in data.weights:
        total = total + data.d[lam] * chi_v_inv(lam, n, N) * sdim(lam, n, N)
    out.append(("sum d chi_v^-1 sdim = 1", total == F.one, None))
    R = r_check_product(n, N)
    e1 = _eps1(n)
    out.append(("str_q R-check^2 = f(eps1, eps1)", (R @ R).supertrace(quantum=True) == f_coefficient(e1, e1, n, N), None))
    if n == 1:
        for lam, xi in product(data.weights, repeat=2):
            hopf = braid_closure_value(2, (1, 1), [lam, xi], [0, 0], n, N)
            out.append((f"Hopf({list(lam)}, {list(xi)}) = f", hopf == f_coefficient(lam, xi, n, N), None))
    return out


def suite_z(n: int, N: int) -> List[Check]:
    F = field_for(N)
    data = constants(n, N)
    total = F.zero
    for lam in data.weights:
        total = total + data.d[lam] * chi_v(lam, n, N) * sdim(lam, n, N)
    return [
        ("sum d chi_v sdim = z", total == data.z, None),
        ("z conj(z) = 1", data.z * data.z.conjugate() == F.one, None),
    ]


def suite_qsquare(n: int, N: int) -> List[Check]:
    expected = field_for(N).const((2 * N) ** n * factorial(n))
    return [("sum Q(mu)^2 = (2N)^n n!", q_square_sum(n, N) == expected, None)]


def suite_fixtures(n: int, N: int) -> List[Check]:
    F = field_for(N)
    z = constants(n, N).z
    return [
        ("F(empty) = 1", rt_invariant(EMPTY, n, N).value == F.one, None),
        ("Sigma(O+1) = 1", sum_L(UNKNOT_PLUS, n, N) == F.one, None),
        ("Sigma(O-1) = z", sum_L(UNKNOT_MINUS, n, N) == z, None),
        ("F(O+1) = 1", rt_invariant(UNKNOT_PLUS, n, N).value == F.one, None),
        ("F(O-1) = 1", rt_invariant(UNKNOT_MINUS, n, N).value == F.one, None),
        ("F(O0) = closed form of F(S2xS1)", rt_invariant(UNKNOT_0, n, N).value == s2xs1_closed_form(n, N), None),
    ]


def suite_kirby(n: int, N: int) -> List[Check]:
    out: List[Check] = []
    bases = (("O0", UNKNOT_0), ("Hopf(0,0)", HOPF_00), ("trefoil(0)", trefoil(0)), ("trefoil(3)", trefoil(3)))
    for name, base in bases:
        value = rt_invariant(base, n, N).value
        for extra_name, extra in (("O+1", UNKNOT_PLUS), ("O-1", UNKNOT_MINUS)):
            joined = rt_invariant(base.disjoint_union(extra), n, N).value
            out.append((f"F({name} + {extra_name}) = F({name})", joined == value, None))
        out.append((f"Sigma({name}) unchanged by reversal", sum_L(base.reversed(), n, N) == sum_L(base, n, N), None))
    for name, before, after in KIRBY_PLUS_PAIRS:
        out.append((f"kappa_+ ({name}): Sigma(L) = Sigma(L')", sum_L(before, n, N) == sum_L(after, n, N), None))
    return out


def suite_obstruction(n: int, N: int) -> List[Check]:
    out: List[Check] = []
    try:
        pairs = obstruction_pairs(n, N)
        out.append(("sigma pairs the alcove with opposite v-eigenvalues", bool(pairs), f"{len(pairs)} pairs"))
    except IdentityCheckError as exc:
        out.append(("sigma pairs the alcove with opposite v-eigenvalues", False, exc.message))
    try:
        rt_invariant(UNKNOT_0, n, N)
        out.append(("invariant rejected with exit code 4", False, "no error raised"))
    except UnsupportedRegime as exc:
        out.append(("invariant rejected with exit code 4", exc.exit_code == 4, None))
    return out


def suite_oracle(n: int, N: int) -> List[Check]:
    out: List[Check] = []
    weights = constants(n, N).weights
    for name, link in (("Hopf", HOPF_00), ("trefoil", trefoil(0))):
        for colors in product(weights, repeat=link.num_components):
            direct = braid_closure_value(link.strands, link.braid, colors, link.framings, n, N)
            diagram = compile_braid_closure(link.strands, link.braid, colors, link.framings)
            out.append((f"{name} {[list(c) for c in colors]}: closure trace = atom evaluation",
                        direct == eval_closed(diagram, n, N), None))
    return out


def suite_relations(n: int, N: int) -> List[Check]:
    return [
        _guard("quotient algebra relations on V", lambda: build_fundamental(n, N)),
        _guard("invariant form and omega* omega^-1 = (-1)^[v] K_2rho", lambda: check_duality(n, N)),
    ]


def suite_so(n: int, N: int) -> List[Check]:
    cmp = compare_s2xs1(n, N)
    if n == 1:
        return [("F(S2xS1) differs from the so(3) value", not cmp.agree, None)]
    return [
        ("F(S2xS1) != 0", not cmp.osp.is_zero(), None),
        (f"F(S2xS1) against the so({2 * n + 1}) value", None, "agree" if cmp.agree else "differ"),
    ]


SUITES: Dict[str, Tuple[Suite, Tuple[Tuple[int, int], ...]]] = {
    "gauss": (suite_gauss, ((1, 6), (1, 10), (1, 14), (2, 10), (3, 14))),
    "phi": (suite_phi, ((1, 5), (1, 6), (1, 7), (1, 8), (1, 10), (1, 12), (1, 14))),
    "cubic": (suite_cubic, ((1, 6), (1, 10), (2, 10), (2, 14))),
    "spectral": (suite_spectral, ((1, 10), (2, 14))),
    "bwm": (suite_bwm, ((1, 10), (2, 14))),
    "trace": (suite_trace, ((1, 10), (2, 14))),
    "sdim": (suite_sdim, ((1, 10),)),
    "axiom5": (suite_axiom5, ((1, 10), (2, 14))),
    "z": (suite_z, ((1, 10), (2, 14))),
    "qsquare": (suite_qsquare, ((1, 10),)),
    "fixtures": (suite_fixtures, ((1, 10), (2, 14))),
    "kirby": (suite_kirby, ((1, 10),)),
    "obstruction": (suite_obstruction, ((1, 8),)),
    "oracle": (suite_oracle, ((1, 10),)),
    "relations": (suite_relations, ((1, 10), (2, 14))),
    "so": (suite_so, ((1, 6), (1, 10), (1, 14))),
}


def selected(spec: Optional[str]) -> List[str]:
    if not spec or spec == "all":
        return list(SUITES)
    names = [s.strip() for s in spec.split(",") if s.strip()]
    for name in names:
        if name not in SUITES:
            raise SemanticError(f"Unknown suite: {name}", details=f"available: {', '.join(SUITES)}")
    return names


def run_suite(name: str, configs: Sequence[Tuple[int, int]]) -> Tuple[List[CheckResult], List[str]]:
    """Counted results and informational notes for one suite."""
    fn, _ = SUITES[name]
    results = []
    notes = []
    for n, N in configs:
        log.info("suite %s at n=%d N=%d", name, n, N)
        for identity_name, passed, detail in fn(n, N):
            where = f"n={n}, N={N}"
            detail = f"{where}; {detail}" if detail else where
            if passed is None:
                notes.append(f"{name}: {identity_name} ({detail})")
                continue
            results.append(CheckResult(suite=name, identity=identity_name, passed=passed, detail=detail))
    return results, notes


def run(job: JobSpec) -> int:
    limits = load_limits()
    names = selected(job.suite)
    results: List[CheckResult] = []
    notes: List[str] = []
    for name in names:
        configs = [job.params()] if job.explicit else list(SUITES[name][1])
        for n, _ in configs:
            check_rank(n, limits)
        counted, info = run_suite(name, configs)
        results.extend(counted)
        notes.extend(info)
    ok = all(r.passed for r in results)
    record = VerifyRecord(suites=names, results=results, passed=ok, notes=notes)
    lines = []
    for r in results:
        lines.append(f"[{'PASS' if r.passed else 'FAIL'}] {r.suite:<11} {r.identity}  ({r.detail})")
    lines += [f"[INFO] {note}" for note in notes]
    failed = sum(1 for r in results if not r.passed)
    lines.append("")
    lines.append(f"{len(results) - failed}/{len(results)} identities hold")
    emit(job, record, lines, title="Verification report")
    return 0 if ok else IdentityCheckError.exit_code
