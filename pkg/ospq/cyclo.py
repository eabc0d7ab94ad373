"""Exact arithmetic in cyclotomic fields Q(zeta_M), q-numbers and Gaussian sums.

Elements are stored in the power basis 1, zeta, ..., zeta^(phi(M)-1) as integer
numerators over one positive common denominator, reduced modulo the M-th
cyclotomic polynomial after every operation, so equality is coefficient
equality. The complex embedding is for display only.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from typing import Dict, Iterable, List, Optional, Tuple, Union
import cmath
import logging

import sympy as sp

from ospq.errors import UnsupportedRegime, ZeroDenominator

log = logging.getLogger(__name__)

Rational = Union[int, Fraction]
_X = sp.Symbol("x")


@lru_cache(maxsize=None)
def cyclotomic_coeffs(M: int) -> Tuple[int, ...]:
    """Coefficients of Phi_M, lowest degree first (monic)."""
    poly = sp.Poly(sp.cyclotomic_poly(M, _X), _X)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


@lru_cache(maxsize=None)
def _reduction_table(M: int) -> Tuple[Tuple[int, ...], ...]:
    """Reduced vectors of zeta^k for 0 <= k < max(2*phi(M), M)."""
    phi = cyclotomic_coeffs(M)
    d = len(phi) - 1
    cur = [0] * d
    cur[0] = 1
    table = []
    for _ in range(max(2 * d, M)):
        table.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(d):
                cur[i] -= top * phi[i]
    return tuple(table)


@lru_cache(maxsize=None)
def _sympy_modulus(M: int) -> sp.Poly:
    return sp.Poly(sp.cyclotomic_poly(M, _X), _X, domain=sp.QQ)


def _normalize(nums: List[int], den: int) -> Tuple[Tuple[int, ...], int]:
    if den == 0:
        raise ZeroDenominator("zero denominator in cyclotomic element")
    if den < 0:
        nums = [-a for a in nums]
        den = -den
    g = den
    for a in nums:
        if a:
            g = gcd(g, a)
            if g == 1:
                break
    if not any(nums):
        return tuple(0 for _ in nums), 1
    if g > 1:
        nums = [a // g for a in nums]
        den //= g
    return tuple(nums), den


class Scalar:
    """Element of Q(zeta_M) in canonical reduced form."""

    __slots__ = ("level", "nums", "den")

    def __init__(self, level: int, nums: Iterable[int], den: int = 1):
        nums = list(nums)
        d = len(cyclotomic_coeffs(level)) - 1
        if len(nums) != d:
            raise ValueError(f"expected {d} coefficients for level {level}, got {len(nums)}")
        self.level = level
        self.nums, self.den = _normalize(nums, den)

    # --- construction ------------------------------------------------------

    @classmethod
    def _raw(cls, level: int, nums: Tuple[int, ...], den: int) -> "Scalar":
        obj = cls.__new__(cls)
        obj.level = level
        obj.nums = nums
        obj.den = den
        return obj

    @classmethod
    def from_rational(cls, level: int, value: Rational) -> "Scalar":
        value = Fraction(value)
        d = len(cyclotomic_coeffs(level)) - 1
        nums = [0] * d
        nums[0] = value.numerator
        return cls(level, nums, value.denominator)

    @classmethod
    def root(cls, level: int, k: int) -> "Scalar":
        return cls._raw(level, _reduction_table(level)[k % level], 1)

    @classmethod
    def from_powers(cls, level: int, powers: Dict[int, Rational]) -> "Scalar":
        """Sum of c * zeta^k over the mapping k -> c."""
        table = _reduction_table(level)
        d = len(table[0])
        den = 1
        for c in powers.values():
            den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
        acc = [0] * d
        for k, c in powers.items():
            c = Fraction(c)
            if not c:
                continue
            scale = c.numerator * (den // c.denominator)
            for i, v in enumerate(table[k % level]):
                if v:
                    acc[i] += scale * v
        return cls(level, acc, den)

    @classmethod
    def from_coeffs(cls, level: int, coeffs: Iterable[Rational]) -> "Scalar":
        coeffs = [Fraction(c) for c in coeffs]
        den = 1
        for c in coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        return cls(level, [c.numerator * (den // c.denominator) for c in coeffs], den)

    # --- inspection --------------------------------------------------------

    def coefficients(self) -> List[Fraction]:
        return [Fraction(a, self.den) for a in self.nums]

    def is_zero(self) -> bool:
        return not any(self.nums)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def to_complex(self) -> complex:
        M = self.level
        total = 0j
        for k, a in enumerate(self.nums):
            if a:
                total += a * cmath.exp(2j * cmath.pi * k / M)
        return total / self.den

    def to_pairs(self) -> List[List[int]]:
        return [[c.numerator, c.denominator] for c in self.coefficients()]

    @classmethod
    def from_pairs(cls, level: int, pairs: List[List[int]]) -> "Scalar":
        return cls.from_coeffs(level, [Fraction(a, b) for a, b in pairs])

    # --- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> Optional["Scalar"]:
        if isinstance(other, Scalar):
            if other.level != self.level:
                raise ValueError(f"level mismatch: {self.level} vs {other.level}")
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar.from_rational(self.level, other)
        return None

    def __add__(self, other) -> "Scalar":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return Scalar(self.level, [a + b for a, b in zip(self.nums, other.nums)], self.den)
        return Scalar(
            self.level,
            [a * other.den + b * self.den for a, b in zip(self.nums, other.nums)],
            self.den * other.den,
        )

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar._raw(self.level, tuple(-a for a in self.nums), self.den)

    def __sub__(self, other) -> "Scalar":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Scalar":
        return (-self) + other

    def __mul__(self, other) -> "Scalar":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Scalar.from_rational(self.level, 0)
        if other.is_rational():
            c = other.nums[0]
            return Scalar(self.level, [a * c for a in self.nums], self.den * other.den)
        if self.is_rational():
            c = self.nums[0]
            return Scalar(self.level, [a * c for a in other.nums], self.den * other.den)
        d = len(self.nums)
        acc = [0] * (2 * d - 1)
        left = [(i, a) for i, a in enumerate(self.nums) if a]
        right = [(j, b) for j, b in enumerate(other.nums) if b]
        for i, a in left:
            for j, b in right:
                acc[i + j] += a * b
        out = acc[:d]
        table = _reduction_table(self.level)
        for k in range(d, 2 * d - 1):
            c = acc[k]
            if c:
                for i, v in enumerate(table[k]):
                    if v:
                        out[i] += c * v
        return Scalar(self.level, out, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDenominator("inverse of zero in the cyclotomic field")
        if self.is_rational():
            return Scalar.from_rational(self.level, Fraction(self.den, self.nums[0]))
        poly = sp.Poly(list(reversed(self.nums)), _X, domain=sp.QQ)
        inv = poly.invert(_sympy_modulus(self.level))
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(inv.all_coeffs())]
        coeffs += [Fraction(0)] * (len(self.nums) - len(coeffs))
        return Scalar.from_coeffs(self.level, coeffs) * self.den

    def __truediv__(self, other) -> "Scalar":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "Scalar":
        return self.inverse() * other

    def __pow__(self, k: int) -> "Scalar":
        if k < 0:
            return self.inverse() ** (-k)
        result = Scalar.from_rational(self.level, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "Scalar":
        M = self.level
        return Scalar.from_powers(M, {(M - k) % M: Fraction(a, self.den) for k, a in enumerate(self.nums) if a})

    # --- comparison --------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Scalar.from_rational(self.level, other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.level == other.level and self.den == other.den and self.nums == other.nums

    def __hash__(self) -> int:
        return hash((self.level, self.nums, self.den))

    def __repr__(self) -> str:
        return f"Scalar({self.level}, {list(self.nums)}, {self.den})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coefficients()):
            if not c:
                continue
            terms.append(str(c) if k == 0 else f"{c}*z^{k}")
        return " + ".join(terms) if terms else "0"

    def __getstate__(self):
        return (self.level, self.nums, self.den)

    def __setstate__(self, state):
        self.level, self.nums, self.den = state


def scalar_root_of_unity(M: int, k: int) -> Scalar:
    """zeta_M^k; q, t and q^(1/2) are (4N, 4), (4N, 1) and (4N, 2)."""
    if M < 1:
        raise ValueError("M must be positive")
    return Scalar.root(M, k)


@dataclass(frozen=True)
class QField:
    """The field Q(zeta_4N) with the distinguished elements of the theory."""
    N: int

    @property
    def M(self) -> int:
        return 4 * self.N

    def zeta(self, k: int) -> Scalar:
        return Scalar.root(self.M, k)

    def const(self, value: Rational) -> Scalar:
        return Scalar.from_rational(self.M, value)

    @cached_property
    def zero(self) -> Scalar:
        return self.const(0)

    @cached_property
    def one(self) -> Scalar:
        return self.const(1)

    @cached_property
    def q(self) -> Scalar:
        return self.zeta(4)

    @cached_property
    def q_inv(self) -> Scalar:
        return self.zeta(-4)

    @cached_property
    def t(self) -> Scalar:
        return self.zeta(1)

    @cached_property
    def q_half(self) -> Scalar:
        return self.zeta(2)

    @cached_property
    def i(self) -> Scalar:
        return self.zeta(self.N)

    def q_pow(self, a: Rational) -> Scalar:
        """q^a for a in (1/4)Z."""
        e = Fraction(a) * 4
        if e.denominator != 1:
            raise ValueError(f"q^{a} is not in Q(zeta_{self.M})")
        return self.zeta(int(e))

    @cached_property
    def zeta8(self) -> Scalar:
        if self.N % 2:
            raise UnsupportedRegime(f"e^(pi i/4) is not in Q(zeta_{self.M}) for odd N={self.N}")
        return self.zeta(self.N // 2)

    @cached_property
    def one_plus_i_sqrt_n(self) -> Scalar:
        """(1+i)sqrt(N) realized through a Gaussian sum."""
        if self.N % 4 == 2:
            return self.t * gauss_sum(self.N, 1, +1)
        if self.N % 4 == 0:
            return gauss_sum(self.N, 0, +1)
        raise UnsupportedRegime(f"(1+i)sqrt(N) is not realized for odd N={self.N}")

    @cached_property
    def one_minus_i_sqrt_n(self) -> Scalar:
        return self.one_plus_i_sqrt_n.conjugate()


@lru_cache(maxsize=None)
def field_for(N: int) -> QField:
    return QField(N)


# --- q-combinatorics --------------------------------------------------------


def q_upper(n: int, q: Scalar) -> Scalar:
    """[n]^q = (1 - q^n)/(1 - q)."""
    if n < 0:
        raise ValueError("q-integers are defined for n >= 0")
    if q == 1:
        raise ZeroDenominator("[n]^q has denominator 1 - q = 0")
    total = Scalar.from_rational(q.level, 0)
    power = Scalar.from_rational(q.level, 1)
    for _ in range(n):
        total = total + power
        power = power * q
    return total


def q_paren(n: int, q: Scalar) -> Scalar:
    """(n)_q = (1 - (-q)^n)/(1 + q)."""
    if q == -1:
        raise ZeroDenominator("(n)_q has denominator 1 + q = 0")
    return q_upper(n, -q)


def q_sym(n: int, q: Scalar, q_half: Scalar) -> Scalar:
    """[n]_q = q^((1-n)/2) (n)_q."""
    return q_half ** (1 - n) * q_paren(n, q)


def q_factorial(n: int, q: Scalar, kind=q_upper) -> Scalar:
    result = Scalar.from_rational(q.level, 1)
    for k in range(1, n + 1):
        result = result * kind(k, q)
    return result


def _binomial(n: int, i: int, q: Scalar, kind) -> Scalar:
    if i < 0 or i > n:
        return Scalar.from_rational(q.level, 0)
    den = q_factorial(i, q, kind) * q_factorial(n - i, q, kind)
    if den.is_zero():
        raise ZeroDenominator(f"binomial ({n} choose {i}) has a vanishing factorial denominator")
    return q_factorial(n, q, kind) / den


def gaussian_binomial(n: int, i: int, q: Scalar) -> Scalar:
    return _binomial(n, i, q, q_upper)


def pseudo_gaussian_binomial(n: int, i: int, q: Scalar) -> Scalar:
    return _binomial(n, i, q, q_paren)


@dataclass(frozen=True)
class QNumbers:
    n: int
    upper: Scalar
    paren: Scalar
    symmetric: Optional[Scalar]
    upper_factorial: Scalar
    paren_factorial: Scalar
    gaussian: Tuple[Scalar, ...]
    pseudo_gaussian: Tuple[Scalar, ...]


def q_numbers(n: int, q: Scalar, q_half: Optional[Scalar] = None) -> QNumbers:
    """Every q-number attached to n; binomial rows run over i = 0..n."""
    return QNumbers(
        n=n,
        upper=q_upper(n, q),
        paren=q_paren(n, q),
        symmetric=q_sym(n, q, q_half) if q_half is not None else None,
        upper_factorial=q_factorial(n, q, q_upper),
        paren_factorial=q_factorial(n, q, q_paren),
        gaussian=tuple(gaussian_binomial(n, i, q) for i in range(n + 1)),
        pseudo_gaussian=tuple(pseudo_gaussian_binomial(n, i, q) for i in range(n + 1)),
    )


# --- Gaussian sums and phi_beta ----------------------------------------------


def gauss_sum(N: int, m: int, sign: int) -> Scalar:
    """G_(+/-)(N, m) = sum_{k<N} q^(+/-k(k+m)) with q = zeta_N inside Q(zeta_4N)."""
    if N < 3:
        raise ValueError("Gaussian sums need N >= 3")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    M = 4 * N
    counts: Dict[int, int] = {}
    for k in range(N):
        e = (4 * sign * k * (k + m)) % M
        counts[e] = counts.get(e, 0) + 1
    return Scalar.from_powers(M, counts)


def _xi(q: Scalar) -> Scalar:
    return -((1 + q) ** 2) / (q - q.inverse())


def phi_beta(beta: int, q: Scalar) -> Scalar:
    """phi_beta = phi_(beta-1) + xi [beta-1]^(q^2) phi_(beta-2), phi_0 = phi_1 = 1."""
    if beta < 0:
        raise ValueError("beta must be non-negative")
    q2 = q * q
    if q2 == 1:
        raise ZeroDenominator("phi_beta needs q^2 != 1")
    xi = _xi(q)
    prev, cur = Scalar.from_rational(q.level, 1), Scalar.from_rational(q.level, 1)
    if beta == 0:
        return prev
    for b in range(2, beta + 1):
        prev, cur = cur, cur + xi * q_upper(b - 1, q2) * prev
    return cur


def phi_beta_closed(beta: int, q: Scalar) -> Scalar:
    """Closed form; [4k]^q/[2k]^q is taken as 1 + q^(2k)."""
    if q * q == 1:
        raise ZeroDenominator("phi_beta needs q^2 != 1")
    i = beta // 2
    value = (1 - q) ** (-i)
    for k in range(1, i + 1):
        value = value * (1 + q ** (2 * k))
    for k in range(1, i):
        value = value * q_upper(2 * k + 1, q)
    if beta % 2:
        value = value * q_upper(2 * i + 1, q)
    return value


def n_prime(N: int) -> int:
    return N if N % 2 else N // 2


def n_bar(N: int) -> int:
    if N % 2:
        return 2 * N
    return N if N % 4 == 0 else N // 2
