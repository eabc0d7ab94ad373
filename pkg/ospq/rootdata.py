"""Root data of osp(1|2n): Weyl group, alcoves, superdimensions and the
constants d_lambda, Omega, Q(0), z of the pseudo-modular structure."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import permutations, product
from typing import Dict, List, Sequence, Tuple
import logging

from ospq.cyclo import QField, Scalar, field_for, n_prime
from ospq.errors import (
    OBSTRUCTION_MESSAGE,
    IdentityCheckError,
    SemanticError,
    UnsupportedRegime,
    ZeroDenominator,
)

log = logging.getLogger(__name__)

Weight = Tuple[int, ...]


def inner(a: Sequence, b: Sequence) -> Fraction:
    return sum((Fraction(x) * y for x, y in zip(a, b)), Fraction(0))


def _unit(n: int, i: int, c: int = 1) -> Weight:
    return tuple(c if k == i else 0 for k in range(n))


def _add(*vs: Sequence) -> tuple:
    return tuple(sum(xs) for xs in zip(*vs))


@dataclass(frozen=True)
class RootSystem:
    n: int

    @cached_property
    def simple(self) -> Tuple[Weight, ...]:
        n = self.n
        roots = [_add(_unit(n, i), _unit(n, i + 1, -1)) for i in range(n - 1)]
        roots.append(_unit(n, n - 1))
        return tuple(roots)

    @cached_property
    def even_bar(self) -> Tuple[Weight, ...]:
        """epsilon_i +/- epsilon_j, i < j."""
        n = self.n
        out = []
        for i in range(n):
            for j in range(i + 1, n):
                out.append(_add(_unit(n, i), _unit(n, j, -1)))
                out.append(_add(_unit(n, i), _unit(n, j)))
        return tuple(out)

    @cached_property
    def odd(self) -> Tuple[Weight, ...]:
        return tuple(_unit(self.n, k) for k in range(self.n))

    @cached_property
    def even(self) -> Tuple[Weight, ...]:
        return self.even_bar + tuple(_unit(self.n, k, 2) for k in range(self.n))

    @cached_property
    def two_rho(self) -> Weight:
        n = self.n
        return tuple(2 * n - 2 * i + 1 for i in range(1, n + 1))

    @cached_property
    def rho(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(x, 2) for x in self.two_rho)

    @cached_property
    def normal_order(self) -> Tuple[Weight, ...]:
        """e_i - e_(i+1), ..., e_i - e_n, e_i, e_i + e_n, ..., e_i + e_(i+1) for each i."""
        n = self.n
        order = []
        for i in range(n):
            order.extend(_add(_unit(n, i), _unit(n, j, -1)) for j in range(i + 1, n))
            order.append(_unit(n, i))
            order.extend(_add(_unit(n, i), _unit(n, j)) for j in range(n - 1, i, -1))
        return tuple(order)

    def is_odd(self, root: Sequence[int]) -> bool:
        return sum(root) % 2 == 1


@lru_cache(maxsize=None)
def root_system(n: int) -> RootSystem:
    if n < 1:
        raise ValueError("rank must be positive")
    return RootSystem(n)


@dataclass(frozen=True)
class SignedPermutation:
    """sigma(e_i) = signs[i] * e_(perm[i])."""
    perm: Tuple[int, ...]
    signs: Tuple[int, ...]

    @cached_property
    def epsilon_prime(self) -> int:
        inversions = sum(
            1 for a in range(len(self.perm)) for b in range(a + 1, len(self.perm))
            if self.perm[a] > self.perm[b]
        )
        return -1 if inversions % 2 else 1

    def apply(self, v: Sequence) -> tuple:
        out = [0] * len(v)
        for i, x in enumerate(v):
            out[self.perm[i]] = self.signs[i] * x
        return tuple(out)

    def compose(self, other: "SignedPermutation") -> "SignedPermutation":
        """self after other."""
        perm = tuple(self.perm[other.perm[i]] for i in range(len(self.perm)))
        signs = tuple(other.signs[i] * self.signs[other.perm[i]] for i in range(len(self.perm)))
        return SignedPermutation(perm, signs)


@lru_cache(maxsize=None)
def weyl_group(n: int) -> Tuple[SignedPermutation, ...]:
    return tuple(
        SignedPermutation(p, s)
        for p in permutations(range(n))
        for s in product((1, -1), repeat=n)
    )


def parity(lam: Sequence[int]) -> int:
    return sum(lam) % 2


def is_dominant(lam: Sequence[int]) -> bool:
    return all(lam[i] >= lam[i + 1] for i in range(len(lam) - 1)) and (not lam or lam[-1] >= 0)


def _dominant_weights(n: int, top: int) -> List[Weight]:
    out: List[Weight] = []

    def rec(prefix: List[int], bound: int):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for v in range(bound + 1):
            rec(prefix + [v], v)

    rec([], top)
    return sorted(out, key=lambda w: (sum(w), w))


def _alcove_test(lam: Weight, n: int, N: int, strict: bool) -> bool:
    if N % 4 == 2:
        lhs, rhs = 4 * lam[0], N - 4 * n + 2
    elif n == 1:
        lhs, rhs = lam[0], n_prime(N)
    else:
        lhs, rhs = lam[0] + lam[1], n_prime(N) - 2 * n + 2
    return lhs < rhs if strict else lhs <= rhs


@lru_cache(maxsize=None)
def alcove(n: int, N: int) -> Tuple[Tuple[Weight, ...], Tuple[Weight, ...]]:
    """(Lambda_N^+, closure P-bar_N^+), each sorted by size then lexicographically."""
    if N < 3:
        raise ValueError("N must be at least 3")
    candidates = _dominant_weights(n, n_prime(N) + 1)
    interior = tuple(w for w in candidates if _alcove_test(w, n, N, strict=True))
    closure = tuple(w for w in candidates if _alcove_test(w, n, N, strict=False))
    log.debug("alcove n=%d N=%d: %d interior, %d closure", n, N, len(interior), len(closure))
    return interior, closure


def neighbors(mu: Sequence[int]) -> Tuple[Weight, ...]:
    """{mu} together with every dominant mu +/- e_i."""
    mu = tuple(mu)
    n = len(mu)
    out = [mu]
    for i in range(n):
        for c in (1, -1):
            nu = _add(mu, _unit(n, i, c))
            if is_dominant(nu) and nu not in out:
                out.append(nu)
    return tuple(out)


def casimir(lam: Sequence[int], n: int) -> Fraction:
    """(lambda + 2 rho, lambda)."""
    rs = root_system(n)
    return inner(_add(lam, rs.two_rho), lam)


def chi_v(lam: Sequence[int], n: int, N: int) -> Scalar:
    """Eigenvalue of the ribbon element v on V_lambda."""
    return field_for(N).q_pow(-casimir(lam, n))


def chi_v_inv(lam: Sequence[int], n: int, N: int) -> Scalar:
    return field_for(N).q_pow(casimir(lam, n))


def sdim(lam: Sequence[int], n: int, N: int) -> Scalar:
    F = field_for(N)
    rs = root_system(n)
    shifted = [Fraction(l) + r for l, r in zip(lam, rs.rho)]
    num = F.one
    den = F.one
    for alpha in rs.even_bar:
        num = num * (F.q_pow(2 * inner(shifted, alpha)) - 1)
        den = den * (F.q_pow(2 * inner(rs.rho, alpha)) - 1)
    for beta in rs.odd:
        num = num * (F.q_pow(2 * inner(shifted, beta)) + 1)
        den = den * (F.q_pow(2 * inner(rs.rho, beta)) + 1)
    if den.is_zero():
        raise ZeroDenominator(f"superdimension denominator vanishes for {tuple(lam)} at N={N}")
    sign = -1 if parity(lam) else 1
    return sign * F.q_pow(-inner(lam, rs.two_rho)) * num / den


def _weyl_sum(F: QField, n: int, left: Sequence, right: Sequence, scale: int) -> Scalar:
    """sum over W of eps'(sigma) q^(scale * (left, sigma(right)))."""
    counts: Dict[int, int] = {}
    for sigma in weyl_group(n):
        e = scale * inner(left, sigma.apply(right)) * 4
        if e.denominator != 1:
            raise ValueError("Weyl sum exponent outside (1/4)Z")
        k = int(e) % F.M
        counts[k] = counts.get(k, 0) + sigma.epsilon_prime
    return Scalar.from_powers(F.M, counts)


def weyl_sum_S(lam: Sequence[int], mu: Sequence[int], n: int, N: int) -> Scalar:
    F = field_for(N)
    rs = root_system(n)
    s = _weyl_sum(F, n, _add(lam, rs.rho), _add(mu, rs.rho), 2)
    return -s if parity(lam) else s


def weyl_sum_Q(mu: Sequence[int], n: int, N: int) -> Scalar:
    F = field_for(N)
    rs = root_system(n)
    return _weyl_sum(F, n, _add(mu, rs.rho), rs.rho, 2)


def chi_C(mu: Sequence[int], lam: Sequence[int], n: int, N: int) -> Scalar:
    """Eigenvalue of the Casimir-type element C_lambda on V_mu."""
    F = field_for(N)
    rs = root_system(n)
    two_mu_rho = _add([2 * m for m in mu], rs.two_rho)
    num = _weyl_sum(F, n, two_mu_rho, _add(lam, rs.rho), 1)
    den = _weyl_sum(F, n, two_mu_rho, rs.rho, 1)
    if den.is_zero():
        raise ZeroDenominator(f"chi_C denominator vanishes for mu={tuple(mu)} at N={N}")
    value = num / den
    return -value if parity(lam) else value


def f_coefficient(mu: Sequence[int], lam: Sequence[int], n: int, N: int) -> Scalar:
    return sdim(mu, n, N) * chi_C(mu, lam, n, N)


def require_invariant_regime(n: int, N: int) -> None:
    if N % 4 == 0:
        raise UnsupportedRegime(OBSTRUCTION_MESSAGE.format(N=N))
    if N % 4 != 2:
        raise UnsupportedRegime(f"odd N={N}: the pseudo-modular constants are only established for N = 2 mod 4")
    if N < 4 * n + 2:
        raise UnsupportedRegime(f"N={N} < 4n+2={4 * n + 2}: the truncated alcove is too small")


@dataclass(frozen=True)
class PseudoModularData:
    n: int
    N: int
    weights: Tuple[Weight, ...]
    d: Dict[Weight, Scalar]
    omega: Scalar
    q0: Scalar
    z: Scalar


def q0_product(n: int, N: int) -> Scalar:
    F = field_for(N)
    rs = root_system(n)
    value = F.one
    for alpha in rs.even_bar:
        a = inner(rs.rho, alpha)
        value = value * (F.q_pow(a) - F.q_pow(-a))
    for beta in rs.odd:
        b = inner(rs.rho, beta)
        value = value * (F.q_pow(b) + F.q_pow(-b))
    return value


@lru_cache(maxsize=None)
def constants(n: int, N: int) -> PseudoModularData:
    require_invariant_regime(n, N)
    F = field_for(N)
    weights, _ = alcove(n, N)
    q0 = q0_product(n, N)
    omega = (2 ** n) * F.t ** n * F.q_pow(Fraction(2 * n ** 3 - n, 2)) / F.one_plus_i_sqrt_n ** n
    d = {lam: omega * q0 * sdim(lam, n, N) for lam in weights}
    z = (-F.i) ** n * F.q_pow(2 * n ** 3 - n) * F.t ** (2 * n)
    log.info("constants n=%d N=%d over %d weights", n, N, len(weights))
    return PseudoModularData(n, N, weights, d, omega, q0, z)


def obstruction_pairs(n: int, N: int) -> List[Tuple[Weight, Weight, Scalar, Scalar]]:
    """For N = 0 mod 4: the fixed-point-free pairing mu <-> sigma(mu) with both v-eigenvalues."""
    if N % 4:
        raise UnsupportedRegime(f"the obstruction pairing is defined for N = 0 mod 4, got N={N}")
    weights, _ = alcove(n, N)
    Np = n_prime(N)
    out = []
    for mu in weights:
        image = (Np - mu[0] - 2 * n + 1,) + tuple(mu[1:])
        if image not in weights:
            raise IdentityCheckError(f"sigma({mu}) = {image} leaves the alcove")
        if image == mu:
            raise IdentityCheckError(f"sigma fixes {mu}")
        a, b = chi_v(mu, n, N), chi_v(image, n, N)
        if b != -a:
            raise IdentityCheckError(f"v-eigenvalues of {mu} and {image} are not opposite")
        out.append((mu, image, a, b))
    return out


# --- BWM trace polynomial ----------------------------------------------------


def conjugate_partition(rows: Sequence[int]) -> Tuple[int, ...]:
    rows = [r for r in rows if r > 0]
    if not rows:
        return ()
    return tuple(sum(1 for r in rows if r > j) for j in range(rows[0]))


def weight_to_diagram(lam: Sequence[int], t: int, n: int) -> Tuple[int, ...]:
    """Young diagram labelling V_lambda at level t of the tensor tower."""
    rows = tuple(r for r in lam if r > 0)
    if (sum(lam) - t) % 2 == 0:
        return rows
    length = len(rows)
    new_len = 2 * n + 1 - length
    width = rows[0] if rows else 0
    cols = list(conjugate_partition(rows)) or [0]
    if width == 0:
        cols = [new_len]
    else:
        cols[0] = new_len
    cols = sorted(cols, reverse=True)
    return conjugate_partition(cols)


def bwm_Q(diagram: Sequence[int], n: int, N: int) -> Scalar:
    """Q_lambda(r, q) at r = -q^(2n) by the hook-length / axial-distance product."""
    F = field_for(N)
    rows = tuple(r for r in diagram if r > 0)
    cols = conjugate_partition(rows)
    c1 = cols[0] if cols else 0
    c2 = cols[1] if len(cols) > 1 else 0
    if c1 + c2 > 2 * n + 1:
        raise SemanticError(f"diagram {list(rows)} is not allowable for n={n}")
    q = F.q_pow
    r = -F.q_pow(2 * n)
    r_inv = -F.q_pow(-2 * n)

    def row(i):
        return rows[i - 1] if i <= len(rows) else 0

    def col(j):
        return cols[j - 1] if j <= len(cols) else 0

    value = F.one
    for i in range(1, len(rows) + 1):
        for j in range(1, rows[i - 1] + 1):
            h = row(i) - i + col(j) - j + 1
            den = q(h) - q(-h)
            if den.is_zero():
                raise ZeroDenominator(f"hook length {h} vanishes at N={N}")
            if i == j:
                a, b = row(j), col(j)
                num = (r * q(a - b) - r_inv * q(b - a)
                       + q(a + b - 2 * j + 1) - q(-a - b + 2 * j - 1))
            else:
                if i < j:
                    d = row(i) + row(j) - i - j + 1
                else:
                    d = -col(i) - col(j) + i + j - 1
                num = r * q(d) - r_inv * q(-d)
            value = value * num / den
    return value


def q_square_sum(n: int, N: int) -> Scalar:
    """sum of Q(mu)^2 over mu in X / N X."""
    F = field_for(N)
    total = F.zero
    for mu in product(range(N), repeat=n):
        total = total + weyl_sum_Q(mu, n, N) ** 2
    return total
