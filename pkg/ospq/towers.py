"""Operators on V^(x)t: local R-matrices, the ribbon element, Bratteli diagrams
discovered from the ribbon spectrum, and path projections."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple
import logging

from ospq.cyclo import Scalar, field_for
from ospq.errors import EigenvalueCollision, IdentityCheckError, SemanticError, ZeroDenominator
from ospq.fundrep import r_check_inverse, r_check_product, spectral_decomposition
from ospq.graded import GradedOperator, TensorSpace, local
from ospq.rootdata import (
    Weight,
    alcove,
    bwm_Q,
    chi_v,
    neighbors,
    sdim,
    weight_to_diagram,
)

log = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def rhat_local(n: int, N: int, t: int, i: int, inverse: bool = False) -> GradedOperator:
    """R-check acting on factors i, i+1 (1-based) of V^(x)t."""
    if not 1 <= i <= t - 1:
        raise ValueError(f"position {i} outside 1..{t - 1}")
    op = r_check_inverse(n, N) if inverse else r_check_product(n, N)
    return local(op, TensorSpace.power(n, i - 1), TensorSpace.power(n, t - i - 1))


def identity(n: int, N: int, t: int) -> GradedOperator:
    return GradedOperator.identity(TensorSpace.power(n, t), N)


@lru_cache(maxsize=None)
def ribbon_op(n: int, N: int, t: int) -> GradedOperator:
    """Action of the iterated coproduct of the ribbon element v on V^(x)t."""
    if t < 1:
        raise ValueError("ribbon operator needs t >= 1")
    c = field_for(N).q_pow(-2 * n)
    if t == 1:
        return identity(n, N, 1).scale(c)
    sweep = identity(n, N, t)
    for i in list(range(t - 1, 0, -1)) + list(range(1, t)):
        sweep = sweep @ rhat_local(n, N, t, i, inverse=True)
    prev = ribbon_op(n, N, t - 1).tensor(identity(n, N, 1).scale(c))
    return prev @ sweep


@dataclass(frozen=True)
class Path:
    weights: Tuple[Weight, ...]

    @property
    def shape(self) -> Weight:
        return self.weights[-1]

    @property
    def level(self) -> int:
        return len(self.weights) - 1

    def prefix(self) -> "Path":
        return Path(self.weights[:-1])

    def within(self, allowed: Sequence[Weight]) -> bool:
        return all(w in allowed for w in self.weights)


def canonical_path(lam: Sequence[int]) -> Path:
    """Minimal-length path to lam, adding boxes row by row from the top."""
    n = len(lam)
    cur = [0] * n
    weights = [tuple(cur)]
    for row, count in enumerate(lam):
        for _ in range(count):
            cur[row] += 1
            weights.append(tuple(cur))
    return Path(tuple(weights))


@dataclass(frozen=True)
class Branching:
    """Summands of p_mu V^(x)k (x) V, keyed by weight, with their multiplicities."""
    children: Dict[Weight, int]
    eigenvalues: Dict[Weight, Scalar]


@lru_cache(maxsize=None)
def branching(n: int, N: int, prefix: Tuple[Weight, ...]) -> Branching:
    """Spectral edge test below the last vertex of prefix."""
    k = len(prefix) - 1
    mu = prefix[-1]
    X = path_projection(n, N, Path(prefix)).tensor(identity(n, N, 1))
    D = ribbon_op(n, N, k + 1)
    candidates = neighbors(mu)
    eig = {nu: chi_v(nu, n, N) for nu in candidates}
    seen: Dict[Scalar, Weight] = {}
    for nu, c in eig.items():
        if c in seen:
            raise EigenvalueCollision(
                f"candidates {seen[c]} and {nu} below {mu} share the ribbon eigenvalue at N={N}"
            )
        seen[c] = nu
    rank_x = X.rank()
    children = {}
    for nu, c in eig.items():
        mult = rank_x - (D.shift(c) @ X).rank()
        if mult > 0:
            children[nu] = mult
    if sum(children.values()) != rank_x:
        raise IdentityCheckError(
            f"ribbon operator is not semisimple below {mu} at level {k + 1} (N={N})"
        )
    log.debug("branching below %s at level %d: %s", mu, k, children)
    return Branching(children, {nu: eig[nu] for nu in children})


@lru_cache(maxsize=None)
def _path_projection(n: int, N: int, weights: Tuple[Weight, ...]) -> GradedOperator:
    if weights[0] != (0,) * n:
        raise SemanticError(f"paths start at 0, got {weights[0]}")
    if len(weights) == 1:
        return GradedOperator.identity(TensorSpace(n, ()), N)
    first = (1,) + (0,) * (n - 1)
    if len(weights) == 2:
        if weights[1] != first:
            raise SemanticError(f"level 1 of a path is eps1, got {weights[1]}")
        return identity(n, N, 1)
    prefix, target = weights[:-1], weights[-1]
    info = branching(n, N, prefix)
    if target not in info.children:
        raise SemanticError(f"{target} is not a Bratteli edge below {prefix[-1]}")
    t = len(weights) - 1
    D = ribbon_op(n, N, t)
    p = path_projection(n, N, Path(prefix)).tensor(identity(n, N, 1))
    c_target = info.eigenvalues[target]
    for nu, c in info.eigenvalues.items():
        if nu == target:
            continue
        gap = c_target - c
        if gap.is_zero():
            raise ZeroDenominator(f"interpolation denominator vanishes for ({target}, {nu})")
        p = D.shift(c).scale(gap.inverse()) @ p
    return p


def path_projection(n: int, N: int, path: Path) -> GradedOperator:
    return _path_projection(n, N, tuple(tuple(w) for w in path.weights))


@dataclass
class BratteliDiagram:
    n: int
    N: int
    t: int
    truncated: bool
    levels: List[Tuple[Weight, ...]] = field(default_factory=list)
    edges: List[Dict[Weight, Tuple[Weight, ...]]] = field(default_factory=list)
    paths: List[Tuple[Path, ...]] = field(default_factory=list)

    def projector(self, path: Path) -> GradedOperator:
        return path_projection(self.n, self.N, path)

    def edge_pairs(self, level: int) -> List[Tuple[Weight, Weight]]:
        return [(mu, nu) for mu, nus in self.edges[level].items() for nu in nus]


def discover_bratteli(n: int, N: int, t: int, truncated: bool = True) -> BratteliDiagram:
    if t < 1:
        raise ValueError("Bratteli diagrams need t >= 1")
    zero = (0,) * n
    first = (1,) + (0,) * (n - 1)
    interior, closure = alcove(n, N) if truncated else ((), ())
    diagram = BratteliDiagram(n, N, t, truncated)
    diagram.levels = [(zero,), (first,)]
    diagram.edges = [{zero: (first,)}]
    diagram.paths = [(Path((zero,)),), (Path((zero, first)),)]
    for level in range(1, t):
        last = level + 1 == t
        edges: Dict[Weight, Tuple[Weight, ...]] = {}
        new_paths: List[Path] = []
        for path in diagram.paths[level]:
            mu = path.shape
            if truncated and mu not in interior:
                continue
            kept = []
            for nu in branching(n, N, path.weights).children:
                if truncated and nu not in (closure if last else interior):
                    continue
                kept.append(nu)
                new_paths.append(Path(path.weights + (nu,)))
            if kept:
                edges[mu] = tuple(sorted(set(edges.get(mu, ())) | set(kept)))
        vertices = sorted({p.shape for p in new_paths}, key=lambda w: (sum(w), w))
        diagram.levels.append(tuple(vertices))
        diagram.edges.append(edges)
        diagram.paths.append(tuple(new_paths))
        log.debug("Bratteli level %d: %d vertices, %d paths", level + 1, len(vertices), len(new_paths))
    return diagram


def p_t_idempotent(n: int, N: int, t: int) -> GradedOperator:
    """Sum of path projections over paths staying inside the alcove."""
    interior, _ = alcove(n, N)
    diagram = discover_bratteli(n, N, t, truncated=True)
    total = GradedOperator.zero(TensorSpace.power(n, t), TensorSpace.power(n, t), N)
    for path in diagram.paths[t]:
        if path.within(interior):
            total = total + diagram.projector(path)
    return total


# --- BWM representation ------------------------------------------------------


def bwm_E(n: int, N: int, t: int, i: int) -> GradedOperator:
    """E_i = sdim(V) P[0] on factors i, i+1."""
    x = sdim((1,) + (0,) * (n - 1), n, N)
    P0 = spectral_decomposition(n, N).projectors["0"]
    return local(P0.scale(x), TensorSpace.power(n, i - 1), TensorSpace.power(n, t - i - 1))


def bwm_verify(n: int, N: int, t: int) -> List[Tuple[str, bool]]:
    """Relations of the BWM algebra under g_i -> -R-check_i on V^(x)t."""
    if t < 3:
        raise ValueError("BWM relations are checked on V^(x)t with t >= 3")
    F = field_for(N)
    x = sdim((1,) + (0,) * (n - 1), n, N)
    one = identity(n, N, t)
    R = {i: rhat_local(n, N, t, i) for i in range(1, t)}
    Ri = {i: rhat_local(n, N, t, i, inverse=True) for i in range(1, t)}
    E = {i: bwm_E(n, N, t, i) for i in range(1, t)}
    l = F.q_pow(2 * n)
    results: List[Tuple[str, bool]] = []

    def record(name: str, ok: bool):
        results.append((name, ok))

    for i in range(1, t):
        record(f"-R{i} + R{i}^-1 = (q - q^-1)(1 - E{i})",
               (Ri[i] - R[i]) == (one - E[i]).scale(F.q - F.q_inv))
        for j in (i - 1, i + 1):
            if 1 <= j < t:
                record(f"E{i} R{j} E{i} = q^2n E{i}", E[i] @ R[j] @ E[i] == E[i].scale(l))
                record(f"E{i} R{j}^-1 E{i} = q^-2n E{i}", E[i] @ Ri[j] @ E[i] == E[i].scale(l.inverse()))
        record(f"E{i} R{i} = q^-2n E{i}", E[i] @ R[i] == E[i].scale(l.inverse()))
        record(f"E{i} R{i}^-1 = q^2n E{i}", E[i] @ Ri[i] == E[i].scale(l))
        record(f"E{i}^2 = x E{i}", E[i] @ E[i] == E[i].scale(x))
        cubic = R[i].shift(-F.q) @ R[i].shift(F.q_inv) @ R[i].shift(l.inverse())
        record(f"(R{i} + q)(R{i} - q^-1)(R{i} - q^-2n) = 0", cubic.is_zero())
        if i + 1 < t:
            record(f"R{i} R{i + 1} R{i} = R{i + 1} R{i} R{i + 1}",
                   R[i] @ R[i + 1] @ R[i] == R[i + 1] @ R[i] @ R[i + 1])
        for j in range(i + 2, t):
            record(f"R{i} R{j} = R{j} R{i}", R[i] @ R[j] == R[j] @ R[i])
    a = rhat_local(n, N, t - 1, t - 2)
    for op, s in ((R[t - 1], 1), (Ri[t - 1], -1)):
        lhs = (a.tensor(identity(n, N, 1)) @ op).partial_supertrace()
        record(f"Markov trace of (a (x) 1) R{t - 1}^{s:+d}", lhs == a.scale(F.q_pow(2 * n * s)))
    return results


def bwm_trace_values(n: int, N: int, t: int, truncated: bool = True) -> List[Tuple[Path, Scalar, Scalar]]:
    """(path, str_q of its projection, Q of the matching Young diagram) for each level-t path."""
    diagram = discover_bratteli(n, N, t, truncated=truncated)
    out = []
    for path in diagram.paths[t]:
        shape = weight_to_diagram(path.shape, t, n)
        out.append((path, diagram.projector(path).supertrace(quantum=True), bwm_Q(shape, n, N)))
    return out
