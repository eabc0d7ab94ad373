"""Framed links, the coloring sum Sigma(L) and the 3-manifold invariant F(M_L)."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, List, Optional, Sequence, Tuple
import logging

import sympy as sp

from ospq.cyclo import Scalar, field_for
from ospq.diagrams import braid_components
from ospq.errors import IdentityCheckError, SemanticError, UnsupportedRegime
from ospq.rootdata import (
    Weight,
    constants,
    inner,
    q0_product,
    require_invariant_regime,
    root_system,
)
from ospq.tangles import braid_closure_value, closure_writhes

log = logging.getLogger(__name__)

_X = sp.Symbol("x")


@dataclass(frozen=True)
class FramedLink:
    """Closure of a braid on `strands` strands with one framing per component."""
    strands: int
    braid: Tuple[int, ...] = ()
    framings: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "braid", tuple(self.braid))
        object.__setattr__(self, "framings", tuple(self.framings))
        if self.strands < 0:
            raise SemanticError("strand count must be non-negative")
        for g in self.braid:
            if g == 0 or not 1 <= abs(g) <= self.strands - 1:
                raise SemanticError(f"generator index {g} outside 1..{max(self.strands - 1, 0)}")
        if len(self.framings) != len(self.components):
            raise SemanticError(
                f"framing count {len(self.framings)} != component count {len(self.components)}"
            )

    @classmethod
    def from_spec(cls, spec) -> "FramedLink":
        return cls(spec.strands, tuple(spec.braid), tuple(spec.framings))

    @cached_property
    def components(self) -> List[List[int]]:
        return braid_components(self.strands, self.braid)

    @property
    def num_components(self) -> int:
        return len(self.components)

    def writhes(self) -> List[int]:
        return closure_writhes(self.strands, self.braid)[1]

    def reversed_with_map(self) -> Tuple["FramedLink", List[int]]:
        """The closure rotated by a half turn, which reverses every component.

        Returns the new link and, for each new component, the old component it came from.
        """
        m = self.strands
        word = tuple((1 if g > 0 else -1) * (m - abs(g)) for g in reversed(self.braid))
        old = {p: c for c, cyc in enumerate(self.components) for p in cyc}
        cycles = braid_components(m, word)
        mapping = [old[m - 1 - cyc[0]] for cyc in cycles]
        framings = tuple(self.framings[c] for c in mapping)
        return FramedLink(m, word, framings), mapping

    def reversed(self) -> "FramedLink":
        return self.reversed_with_map()[0]

    def disjoint_union(self, other: "FramedLink") -> "FramedLink":
        shift = self.strands
        word = self.braid + tuple(g + shift if g > 0 else g - shift for g in other.braid)
        return FramedLink(self.strands + other.strands, word, self.framings + other.framings)


EMPTY = FramedLink(0)
UNKNOT_0 = FramedLink(1, (), (0,))
UNKNOT_PLUS = FramedLink(1, (), (1,))
UNKNOT_MINUS = FramedLink(1, (), (-1,))
HOPF_00 = FramedLink(2, (1, 1), (0, 0))


def trefoil(framing: int) -> FramedLink:
    return FramedLink(2, (1, 1, 1), (framing,))


# Each pair differs by one kappa_+ move: T a single strand, then T a single positive crossing.
KIRBY_PLUS_PAIRS: Tuple[Tuple[str, FramedLink, FramedLink], ...] = (
    ("single strand", FramedLink(1, (), (-1,)), FramedLink(2, (1, 1), (0, 1))),
    ("single crossing", FramedLink(2, (1, -1, -1), (-3,)), FramedLink(3, (1, 2, 1, 1, 2), (1, 1))),
)


# --- linking data -----------------------------------------------------------------


def linking_matrix(link: FramedLink) -> Tuple[Tuple[int, ...], ...]:
    """Framings on the diagonal, linking numbers off it."""
    cycles, _, mixed = closure_writhes(link.strands, link.braid)
    k = len(cycles)
    rows = [[0] * k for _ in range(k)]
    for c in range(k):
        rows[c][c] = link.framings[c]
    for (a, b), total in mixed.items():
        if total % 2:
            raise IdentityCheckError(f"odd mixed crossing sum between components {a} and {b}")
        rows[a][b] = rows[b][a] = total // 2
    return tuple(tuple(r) for r in rows)


def _sign_changes(values: Iterable) -> int:
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _positive_roots(poly: sp.Poly) -> int:
    """Distinct roots in (0, oo) of a polynomial with poly(0) != 0, via a Sturm sequence."""
    if poly.degree() < 1:
        return 0
    seq = sp.sturm(poly)
    at_zero = [p.eval(0) for p in seq]
    at_inf = [p.LC() for p in seq]
    return _sign_changes(at_zero) - _sign_changes(at_inf)


def sigma_count(A: Sequence[Sequence[int]]) -> int:
    """Number of non-positive eigenvalues of a symmetric integer matrix, counted exactly."""
    size = len(A)
    if size == 0:
        return 0
    M = sp.Matrix(A)
    if M != M.T:
        raise SemanticError("linking matrix is not symmetric")
    charpoly = sp.Poly(M.charpoly(_X).as_expr(), _X)
    zeros = 0
    while charpoly.degree() > 0 and charpoly.eval(0) == 0:
        charpoly = sp.Poly(sp.quo(charpoly.as_expr(), _X), _X)
        zeros += 1
    positive = 0
    _, factors = sp.sqf_list(charpoly)
    for factor, mult in factors:
        positive += mult * _positive_roots(sp.Poly(factor, _X))
    log.debug("sigma_count size=%d zeros=%d positive=%d", size, zeros, positive)
    return size - positive


# --- the coloring sum ---------------------------------------------------------------


def _coloring_term(args) -> Scalar:
    strands, braid, framings, coloring, n, N = args
    data = constants(n, N)
    value = braid_closure_value(strands, braid, coloring, framings, n, N)
    for lam in coloring:
        value = value * data.d[lam]
    return value


def colorings(link: FramedLink, palette: Sequence[Weight]) -> List[Tuple[Weight, ...]]:
    return list(product(palette, repeat=link.num_components))


def sum_L(link: FramedLink, n: int, N: int, parallel: int = 1,
          palette: Optional[Sequence[Sequence[int]]] = None) -> Scalar:
    """Sigma(L): sum over colorings by the alcove of prod d_lambda times the colored closure."""
    data = constants(n, N)
    if palette is None:
        weights = list(data.weights)
    else:
        weights = []
        for w in palette:
            lam = (tuple(w) + (0,) * n)[:n]
            if lam not in data.d:
                raise SemanticError(f"color {list(w)} is not in the alcove for n={n}, N={N}")
            weights.append(lam)
    jobs = [(link.strands, link.braid, link.framings, c, n, N) for c in colorings(link, weights)]
    log.info("summing %d colorings of a %d-component link (parallel=%d)",
             len(jobs), link.num_components, parallel)
    if parallel > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            terms = list(pool.map(_coloring_term, jobs, chunksize=max(1, len(jobs) // (4 * parallel))))
    else:
        terms = [_coloring_term(j) for j in jobs]
    total = field_for(N).zero
    for term in terms:
        total = total + term
    return total


@dataclass(frozen=True)
class InvariantValue:
    value: Scalar
    sigma: int
    components: int

    @property
    def approx(self) -> complex:
        return self.value.to_complex()


def rt_invariant(link: FramedLink, n: int, N: int, parallel: int = 1,
                 palette: Optional[Sequence[Sequence[int]]] = None) -> InvariantValue:
    """F(M_L) = z^(-sigma(A_L)) Sigma(L)."""
    require_invariant_regime(n, N)
    sigma = sigma_count(linking_matrix(link))
    total = sum_L(link, n, N, parallel=parallel, palette=palette)
    z = constants(n, N).z
    value = total * z ** (-sigma) if sigma else total
    return InvariantValue(value, sigma, link.num_components)


# --- closed forms for S^2 x S^1 ---------------------------------------------------


def s2xs1_closed_form(n: int, N: int) -> Scalar:
    """(-i)^(-n) (N/2)^(n/2) e^(-n pi i/4) q^(-3(rho,rho)) / Q(0)."""
    require_invariant_regime(n, N)
    F = field_for(N)
    rs = root_system(n)
    half_root = F.one_minus_i_sqrt_n / 2
    value = F.i ** n * half_root ** n * F.q_pow(-3 * inner(rs.rho, rs.rho))
    return value / q0_product(n, N)


def so_comparison_scalar(n: int, N: int) -> Scalar:
    """F(S^2 x S^1) of the quantum so(2n+1) theory at the root of unity of order N/2."""
    if N % 4 != 2:
        raise UnsupportedRegime(f"the so(2n+1) comparison needs N = 2 mod 4, got N={N}")
    F = field_for(N)
    rs = root_system(n)
    sqrt_half = F.one_plus_i_sqrt_n / (2 * F.zeta8)
    two_rho_sq = int(inner(rs.two_rho, rs.two_rho))
    value = (-1) ** n * (-F.i) ** two_rho_sq * sqrt_half ** n
    value = value * F.q_pow(-6 * inner(rs.rho, rs.rho))
    den = F.one
    for alpha in rs.even_bar + rs.odd:
        a = 2 * inner(alpha, rs.rho)
        den = den * (F.q_pow(a) - F.q_pow(-a))
    value = value / den
    if (N // 2) % 4 == 3:
        value = value * F.i ** n
    return value


@dataclass(frozen=True)
class S2xS1Comparison:
    osp: Scalar
    so: Scalar

    @property
    def agree(self) -> bool:
        return self.osp == self.so


def compare_s2xs1(n: int, N: int) -> S2xS1Comparison:
    return S2xS1Comparison(s2xs1_closed_form(n, N), so_comparison_scalar(n, N))
