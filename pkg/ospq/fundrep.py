"""The fundamental module V of U_q(osp(1|2n)): generators, root vectors,
the R-matrix on V (x) V built two independent ways, and the self-duality map."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple
import logging

from ospq.cyclo import Scalar, field_for, q_factorial, q_upper
from ospq.errors import IdentityCheckError
from ospq.graded import (
    Basis,
    GradedOperator,
    RowReducer,
    TensorSpace,
    label_weight,
    labels,
    local,
)
from ospq.rootdata import Weight, inner, root_system

log = logging.getLogger(__name__)


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise IdentityCheckError(message)


def supercommutator(x: GradedOperator, y: GradedOperator) -> GradedOperator:
    """[x, y] = xy - (-1)^([x][y]) yx."""
    sign = -1 if x.parity and y.parity else 1
    return x @ y - (y @ x).scale(sign)


@dataclass(frozen=True)
class FundRep:
    n: int
    N: int
    space: TensorSpace
    e: Tuple[GradedOperator, ...]
    f: Tuple[GradedOperator, ...]
    K: Tuple[GradedOperator, ...]
    Kinv: Tuple[GradedOperator, ...]
    J: Tuple[GradedOperator, ...]
    K2rho: GradedOperator

    @property
    def identity(self) -> GradedOperator:
        return GradedOperator.identity(self.space, self.N)

    def label_basis(self, label: int) -> Basis:
        return self.space.index_of((label,))

    def K_weight(self, gamma: Sequence[int]) -> GradedOperator:
        """K_gamma acting on V by q^((gamma, eps_k))."""
        F = field_for(self.N)
        lab = labels(self.n)
        return GradedOperator.diagonal(
            self.space, self.N, lambda b: F.q_pow(inner(gamma, label_weight(self.n, lab[b[0]])))
        )


def _action_tables(n: int):
    e: List[Dict] = []
    f: List[Dict] = []
    for i in range(1, n):
        e.append({(i + 1,): {(i,): 1}, (-i,): {(-i - 1,): 1}})
        f.append({(i,): {(i + 1,): 1}, (-i - 1,): {(-i,): 1}})
    e.append({(0,): {(n,): 1}, (-n,): {(0,): -1}})
    f.append({(n,): {(0,): 1}, (0,): {(-n,): 1}})
    return e, f


def cartan_integer(n: int, i: int, j: int) -> int:
    """a_ij = 2(alpha_i, alpha_j)/(alpha_i, alpha_i), 0-based indices."""
    rs = root_system(n)
    a_i, a_j = rs.simple[i], rs.simple[j]
    return int(2 * inner(a_i, a_j) / inner(a_i, a_i))


def _ad(rep: FundRep, kind: str, i: int, x: GradedOperator) -> GradedOperator:
    if kind == "e":
        g, conj = rep.e[i], rep.K[i] @ x @ rep.Kinv[i]
    else:
        g, conj = rep.f[i], rep.Kinv[i] @ x @ rep.K[i]
    sign = -1 if g.parity and x.parity else 1
    return g @ x - (conj @ g).scale(sign)


def check_relations(rep: FundRep) -> None:
    """Defining relations of the algebra as exact matrix identities on V."""
    n, N = rep.n, rep.N
    F = field_for(N)
    rs = root_system(n)
    denom = F.q - F.q_inv
    zero = GradedOperator.zero(rep.space, rep.space, N)
    for i in range(n):
        _require((rep.K[i] @ rep.Kinv[i]) == rep.identity, f"K_{i + 1} K_{i + 1}^-1 != 1")
        for j in range(n):
            expected = (rep.K[i] - rep.Kinv[i]).scale(denom.inverse()) if i == j else zero
            _require(supercommutator(rep.e[i], rep.f[j]) == expected,
                     f"[e_{i + 1}, f_{j + 1}] relation fails")
            c = inner(rs.simple[i], rs.simple[j])
            _require(rep.K[i] @ rep.e[j] @ rep.Kinv[i] == rep.e[j].scale(F.q_pow(c)),
                     f"K_{i + 1} e_{j + 1} K_{i + 1}^-1 weight relation fails")
            _require(rep.K[i] @ rep.f[j] @ rep.Kinv[i] == rep.f[j].scale(F.q_pow(-c)),
                     f"K_{i + 1} f_{j + 1} K_{i + 1}^-1 weight relation fails")
            if i != j:
                for kind, gens in (("e", rep.e), ("f", rep.f)):
                    x = gens[j]
                    for _ in range(1 - cartan_integer(n, i, j)):
                        x = _ad(rep, kind, i, x)
                    _require(x.is_zero(), f"Serre relation for ({kind}_{i + 1}, {kind}_{j + 1}) fails")
        two_rho_alpha = inner(rs.two_rho, rs.simple[i])
        _require(rep.K2rho @ rep.e[i] @ rep.K2rho.inverse() == rep.e[i].scale(F.q_pow(two_rho_alpha)),
                 f"K_2rho e_{i + 1} K_2rho^-1 relation fails")
        _require(rep.J[i] ** N == rep.identity, f"(pi J_{i + 1})^N != 1")
    v1, v0 = rep.label_basis(1), rep.label_basis(0)
    _require(rep.space.parity(v1) == 1 and rep.space.parity(v0) == 0, "grading of V is wrong")
    _require(rep.e[n - 1].parity == 1 and rep.f[n - 1].parity == 1, "odd generators are not odd")


@lru_cache(maxsize=None)
def build_fundamental(n: int, N: int) -> FundRep:
    F = field_for(N)
    rs = root_system(n)
    space = TensorSpace.power(n, 1)
    e_tab, f_tab = _action_tables(n)
    e = tuple(GradedOperator.from_labels(space, N, t) for t in e_tab)
    f = tuple(GradedOperator.from_labels(space, N, t) for t in f_tab)
    lab = labels(n)

    def diag(fn):
        return GradedOperator.diagonal(space, N, lambda b: fn(label_weight(n, lab[b[0]])))

    K = tuple(diag(lambda w, a=a: F.q_pow(inner(a, w))) for a in rs.simple)
    Kinv = tuple(diag(lambda w, a=a: F.q_pow(-inner(a, w))) for a in rs.simple)
    J = tuple(diag(lambda w, k=k: F.q_pow(w[k])) for k in range(n))
    K2rho = diag(lambda w: F.q_pow(inner(rs.two_rho, w)))
    rep = FundRep(n, N, space, e, f, K, Kinv, J, K2rho)
    check_relations(rep)
    log.debug("built fundamental module n=%d N=%d (dim %d)", n, N, space.dim)
    return rep


# --- coproduct actions ---------------------------------------------------------


def coproduct(rep: FundRep, kind: str, i: int, t: int) -> GradedOperator:
    """Iterated coproduct of e_i, f_i or K_i acting on V^(x)t."""
    if kind == "K":
        out = rep.K[i]
        for _ in range(t - 1):
            out = out.tensor(rep.K[i])
        return out
    total = None
    for k in range(t):
        if kind == "e":
            parts = [rep.identity] * k + [rep.e[i]] + [rep.K[i]] * (t - k - 1)
        elif kind == "f":
            parts = [rep.Kinv[i]] * k + [rep.f[i]] + [rep.identity] * (t - k - 1)
        else:
            raise ValueError(f"unknown generator kind {kind!r}")
        term = parts[0]
        for p in parts[1:]:
            term = term.tensor(p)
        total = term if total is None else total + term
    return total


def graded_flip(n: int, N: int) -> GradedOperator:
    """P(v (x) w) = (-1)^([v][w]) w (x) v on V (x) V."""
    space = TensorSpace.power(n, 2)
    one = field_for(N).one
    cols = {}
    for a, b in space.basis:
        sign = -1 if (a != n and b != n) else 1
        cols[(a, b)] = {(b, a): one if sign > 0 else -one}
    return GradedOperator(space, space, N, cols)


# --- root vectors ------------------------------------------------------------


@dataclass(frozen=True)
class RootVector:
    root: Weight
    odd: bool
    E: GradedOperator
    F: GradedOperator
    a: Scalar


def _q_bracket(x: GradedOperator, y: GradedOperator, c: Scalar) -> GradedOperator:
    sign = -1 if x.parity and y.parity else 1
    return x @ y - (y @ x).scale(c * sign)


def normalize_f(rep: FundRep, root: Weight, E: GradedOperator, Fraw: GradedOperator) -> Tuple[GradedOperator, Scalar]:
    """Solve E F - (-1)^[E] F E = a (K - K^-1)/(q - q^-1) for a and return (F/a, a)."""
    Fq = field_for(rep.N)
    sign = -1 if E.parity else 1
    left = E @ Fraw - (Fraw @ E).scale(sign)
    Kg = rep.K_weight(root)
    right = (Kg - Kg.inverse()).scale((Fq.q - Fq.q_inv).inverse())
    a = None
    for b in rep.space.basis:
        r = right.entry(b, b)
        if not r.is_zero():
            a = left.entry(b, b) / r
            break
    _require(a is not None and not a.is_zero(), f"normalization constant of root {root} vanishes")
    _require(left == right.scale(a), f"normalization equation for root {root} is inconsistent")
    return Fraw.scale(a.inverse()), a


@lru_cache(maxsize=None)
def root_vectors(n: int, N: int) -> Tuple[RootVector, ...]:
    rep = build_fundamental(n, N)
    F = field_for(N)
    rs = root_system(n)

    def unit(i, c=1):
        return tuple(c if k == i else 0 for k in range(n))

    def plus(a, b):
        return tuple(x + y for x, y in zip(a, b))

    raw: Dict[Weight, Tuple[GradedOperator, GradedOperator]] = {}

    def bracket(left: Weight, j: int) -> Tuple[Weight, Tuple[GradedOperator, GradedOperator]]:
        alpha, beta = left, rs.simple[j]
        c = inner(alpha, beta)
        Ea, Fa = raw[alpha]
        Eb, Fb = rep.e[j], rep.f[j]
        return plus(alpha, beta), (_q_bracket(Ea, Eb, F.q_pow(c)), _q_bracket(Fb, Fa, F.q_pow(-c)))

    for i in range(n):
        if i < n - 1:
            raw[rs.simple[i]] = (rep.e[i], rep.f[i])
            for j in range(i + 1, n - 1):
                gamma, ops = bracket(plus(unit(i), unit(j, -1)), j)
                raw[gamma] = ops
            gamma, ops = bracket(plus(unit(i), unit(n - 1, -1)), n - 1)
            raw[gamma] = ops
            gamma, ops = bracket(unit(i), n - 1)
            raw[gamma] = ops
            for j in range(n - 2, i, -1):
                gamma, ops = bracket(plus(unit(i), unit(j + 1)), j)
                raw[gamma] = ops
        else:
            raw[rs.simple[n - 1]] = (rep.e[n - 1], rep.f[n - 1])

    out = []
    for gamma in rs.normal_order:
        E, Fraw = raw[gamma]
        odd = rs.is_odd(gamma)
        Fn, a = normalize_f(rep, gamma, E, Fraw)
        if odd:
            _require((E ** 3).is_zero() and (Fn ** 3).is_zero(), f"(pi e_{gamma})^3 != 0")
        else:
            _require((E ** 2).is_zero() and (Fn ** 2).is_zero(), f"(pi e_{gamma})^2 != 0")
        out.append(RootVector(gamma, odd, E, Fn, a))
    log.debug("built %d root vectors for n=%d N=%d", len(out), n, N)
    return tuple(out)


# --- R-matrix ----------------------------------------------------------------


def _truncated_exponential(x: GradedOperator, coeff: Scalar, base: Scalar) -> GradedOperator:
    """sum_k coeff^k x^k / [k]^base!, stopping when x^k = 0."""
    total = GradedOperator.identity(x.domain, x.N)
    power = total
    k = 0
    while True:
        k += 1
        power = x @ power
        if power.is_zero():
            return total
        fact = q_factorial(k, base, q_upper)
        _require(not fact.is_zero(), f"[{k}]! vanishes in an R-matrix factor")
        total = total + power.scale(coeff ** k / fact)


def weight_diagonal(n: int, N: int) -> GradedOperator:
    """E(v_a (x) v_b) = q^((wt a, wt b))."""
    F = field_for(N)
    space = TensorSpace.power(n, 2)
    lab = labels(n)
    return GradedOperator.diagonal(
        space, N, lambda b: F.q_pow(inner(label_weight(n, lab[b[0]]), label_weight(n, lab[b[1]])))
    )


@lru_cache(maxsize=None)
def r_check_product(n: int, N: int) -> GradedOperator:
    F = field_for(N)
    q, qi = F.q, F.q_inv
    rtilde = GradedOperator.identity(TensorSpace.power(n, 2), N)
    for rv in root_vectors(n, N):
        x = rv.E.tensor(rv.F)
        if rv.odd:
            factor = _truncated_exponential(x, qi - q, -qi)
        else:
            factor = _truncated_exponential(x, q - qi, qi * qi)
        rtilde = rtilde @ factor
    R = weight_diagonal(n, N) @ rtilde
    return graded_flip(n, N) @ R


@lru_cache(maxsize=None)
def r_check_inverse(n: int, N: int) -> GradedOperator:
    return r_check_product(n, N).inverse()


def r_eigenvalues(n: int, N: int) -> Dict[str, Scalar]:
    F = field_for(N)
    middle = "eps1" if n == 1 else "eps1+eps2"
    return {"2eps1": -F.q, middle: F.q_inv, "0": F.q_pow(-2 * n)}


def highest_weight_vectors(n: int, N: int) -> Dict[str, Dict[Basis, Scalar]]:
    F = field_for(N)
    space = TensorSpace.power(n, 2)
    one, qi = F.one, F.q_inv

    def vec(pairs):
        return {space.index_of(lab): c for lab, c in pairs if not c.is_zero()}

    top = vec([((1, 1), one)])
    if n == 1:
        middle_key, middle = "eps1", vec([((1, 0), one), ((0, 1), qi)])
    else:
        middle_key, middle = "eps1+eps2", vec([((1, 2), one), ((2, 1), -qi)])
    c: Dict[int, Scalar] = {0: one, n: -one, -n: qi}
    for i in range(n - 1, 0, -1):
        c[i] = -F.q * c[i + 1]
        c[-i] = -qi * c[-(i + 1)]
    w0 = vec([((i, -i), c[i]) for i in range(-n, n + 1)])
    return {"2eps1": top, middle_key: middle, "0": w0}


@dataclass(frozen=True)
class SpectralDecomposition:
    projectors: Dict[str, GradedOperator]
    eigenvalues: Dict[str, Scalar]
    dims: Dict[str, int]


@lru_cache(maxsize=None)
def spectral_decomposition(n: int, N: int) -> SpectralDecomposition:
    rep = build_fundamental(n, N)
    space = TensorSpace.power(n, 2)
    raising = [coproduct(rep, "e", i, 2) for i in range(n)]
    lowering = [coproduct(rep, "f", i, 2) for i in range(n)]
    spans: Dict[str, List[Dict[Basis, Scalar]]] = {}
    for key, hw in highest_weight_vectors(n, N).items():
        for i, op in enumerate(raising):
            _require(not op.apply(hw), f"highest weight vector {key} is not killed by e_{i + 1}")
        reducer = RowReducer(N)
        reducer.add(hw)
        found, queue = [hw], [hw]
        while queue:
            v = queue.pop(0)
            for op in lowering:
                w = op.apply(v)
                if w and reducer.add(w):
                    found.append(w)
                    queue.append(w)
        spans[key] = found

    one = field_for(N).one
    total = RowReducer(N)
    for key, vectors in spans.items():
        for j, v in enumerate(vectors):
            _require(total.add(v, {(key, j): one}), "generated subspaces do not sum directly to V (x) V")
    _require(total.rank == space.dim, "generated subspaces do not span V (x) V")

    projectors = {}
    for key, vectors in spans.items():
        cols = {}
        for p, combo in total.combos.items():
            col: Dict[Basis, Scalar] = {}
            for (k, j), c in combo.items():
                if k != key:
                    continue
                for b, x in vectors[j].items():
                    col[b] = col.get(b, field_for(N).zero) + c * x
            cols[p] = col
        projectors[key] = GradedOperator(space, space, N, cols)
    keys = list(projectors)
    for a in keys:
        _require(projectors[a] @ projectors[a] == projectors[a], f"P[{a}] is not idempotent")
        for b in keys:
            if a != b:
                _require((projectors[a] @ projectors[b]).is_zero(), f"P[{a}] P[{b}] != 0")
    dims = {k: len(v) for k, v in spans.items()}
    log.debug("spectral decomposition n=%d N=%d dims=%s", n, N, dims)
    return SpectralDecomposition(projectors, r_eigenvalues(n, N), dims)


def r_check_spectral(n: int, N: int) -> GradedOperator:
    dec = spectral_decomposition(n, N)
    out = GradedOperator.zero(TensorSpace.power(n, 2), TensorSpace.power(n, 2), N)
    for key, proj in dec.projectors.items():
        out = out + proj.scale(dec.eigenvalues[key])
    return out


def check_r_invariance(n: int, N: int) -> None:
    rep = build_fundamental(n, N)
    R = r_check_product(n, N)
    for i in range(n):
        for kind in ("e", "f", "K"):
            d = coproduct(rep, kind, i, 2)
            _require(R @ d == d @ R, f"R-check does not commute with the coproduct of {kind}_{i + 1}")


def check_cubic(n: int, N: int) -> None:
    F = field_for(N)
    R = r_check_product(n, N)
    prod = R.shift(-F.q) @ R.shift(F.q_inv) @ R.shift(F.q_pow(-2 * n))
    _require(prod.is_zero(), "cubic relation of the R-matrix fails")


def check_partial_trace(n: int, N: int) -> None:
    """(id (x) str_q)(R-check^(+/-1)) = q^(+/-2n) id."""
    F = field_for(N)
    ident = GradedOperator.identity(TensorSpace.power(n, 1), N)
    for op, sign in ((r_check_product(n, N), 1), (r_check_inverse(n, N), -1)):
        _require(op.partial_supertrace() == ident.scale(F.q_pow(sign * 2 * n)),
                 f"partial quantum supertrace of R-check^{sign:+d} is not q^{sign * 2 * n:+d}")


def check_braid_relation(n: int, N: int) -> None:
    R = r_check_product(n, N)
    V = TensorSpace.power(n, 1)
    R1 = local(R, TensorSpace(n), V)
    R2 = local(R, V, TensorSpace(n))
    _require(R1 @ R2 @ R1 == R2 @ R1 @ R2, "braid relation fails on V^(x)3")


# --- duality -----------------------------------------------------------------


def _dual_coefficients(n: int, N: int) -> Dict[int, Scalar]:
    """T v_k = c_k v_(-k)^*."""
    F = field_for(N)
    c = {0: F.q_pow(-n) * (-1) ** (n - 1)}
    for i in range(1, n + 1):
        c[i] = F.q_pow(-(i - 1)) * (-1) ** (i - 1)
        c[-i] = F.q_pow(-(2 * n - i)) * (-1) ** i
    return c


@lru_cache(maxsize=None)
def dual_iso_T(n: int, N: int) -> GradedOperator:
    c = _dual_coefficients(n, N)
    V = TensorSpace(n, (1,))
    Vstar = TensorSpace(n, (-1,))
    return GradedOperator.from_labels(V, N, {(k,): {(-k,): c[k]} for k in labels(n)}, codomain=Vstar)


def omega_star(n: int, N: int) -> GradedOperator:
    """The dual of T^-1, V* -> V** with V** identified with V."""
    c = _dual_coefficients(n, N)
    V = TensorSpace(n, (1,))
    Vstar = TensorSpace(n, (-1,))
    return GradedOperator.from_labels(Vstar, N, {(k,): {(-k,): c[k].inverse()} for k in labels(n)}, codomain=V)


def antipode(rep: FundRep, kind: str, i: int) -> GradedOperator:
    if kind == "e":
        return -(rep.e[i] @ rep.Kinv[i])
    if kind == "f":
        return -(rep.K[i] @ rep.f[i])
    if kind == "K":
        return rep.Kinv[i]
    raise ValueError(f"unknown generator kind {kind!r}")


def check_duality(n: int, N: int) -> None:
    """Invariance of the bilinear form <<v_a, v_b>> = <T v_a, v_b> and the twist omega* omega^-1."""
    rep = build_fundamental(n, N)
    T = dual_iso_T(n, N)
    basis = rep.space.basis
    form = {(a, b): T.entry(b, a) for a in basis for b in basis}
    zero = field_for(N).zero
    for i in range(n):
        for kind, x in (("e", rep.e[i]), ("f", rep.f[i]), ("K", rep.K[i])):
            s = antipode(rep, kind, i)
            for a in basis:
                xa = x.column(a)
                for b in basis:
                    lhs = sum((c * form[(r, b)] for r, c in xa.items()), zero)
                    sb = s.column(b)
                    rhs = sum((c * form[(a, r)] for r, c in sb.items()), zero)
                    if x.parity and rep.space.parity(a):
                        rhs = -rhs
                    _require(lhs == rhs, f"bilinear form is not invariant under {kind}_{i + 1}")
    twist = omega_star(n, N) @ T
    expected = GradedOperator.diagonal(
        rep.space, N,
        lambda b: -rep.K2rho.entry(b, b) if rep.space.parity(b) else rep.K2rho.entry(b, b),
    )
    _require(twist == expected, "omega* omega^-1 is not (-1)^[v] K_2rho")
