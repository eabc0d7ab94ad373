"""The Reshetikhin-Turaev functor on sliced ribbon-tangle diagrams.

Colors are realized by cabling the fundamental strand: a component colored
lambda is replaced by |lambda| parallel copies of V and the canonical path
projection onto V_lambda is inserted once on a downward stretch of the cable.
Diagrams are evaluated in blackboard framing and corrected per component by
powers of the ribbon eigenvalue.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple
import logging

from ospq.cyclo import Scalar, field_for
from ospq.diagrams import Atom, TangleDiagram, braid_components
from ospq.errors import SemanticError
from ospq.graded import Basis, GradedOperator, TensorSpace
from ospq.rootdata import Weight, alcove, chi_v_inv, inner, is_dominant, root_system
from ospq.towers import canonical_path, path_projection, rhat_local

log = logging.getLogger(__name__)


def normalize_color(color: Sequence[int], n: int, N: int) -> Weight:
    """Pad to rank n and check the color lies in the closed alcove."""
    color = tuple(color)
    if len(color) > n and any(color[n:]):
        raise SemanticError(f"color {list(color)} has more than n={n} nonzero rows")
    lam = (color + (0,) * n)[:n]
    if not is_dominant(lam):
        raise SemanticError(f"color {list(lam)} is not dominant")
    _, closure = alcove(n, N)
    if lam not in closure:
        raise SemanticError(f"color {list(lam)} lies outside the closed alcove for N={N}")
    return lam


def color_projector(lam: Weight, n: int, N: int) -> GradedOperator:
    return path_projection(n, N, canonical_path(lam))


def framing_factor(lams: Sequence[Weight], framings: Sequence[int], writhes: Sequence[int],
                   n: int, N: int) -> Scalar:
    """prod_c chi_(lam_c)(v^-1)^(n_c - w_c)."""
    value = field_for(N).one
    for lam, fr, w in zip(lams, framings, writhes):
        if fr != w:
            value = value * chi_v_inv(lam, n, N) ** (fr - w)
    return value


# --- atoms -------------------------------------------------------------------


def _twist(n: int, N: int, label_basis: Basis, sign: int) -> Scalar:
    """prod (-1)^[r] q^(sign (2rho, wt r)) over a tuple of V-basis indices."""
    F = field_for(N)
    space = TensorSpace.power(n, len(label_basis))
    value = F.q_pow(sign * inner(root_system(n).two_rho, space.weight(label_basis)))
    return -value if space.parity(label_basis) else value


@lru_cache(maxsize=None)
def cup(n: int, N: int, width: int, sign: int) -> GradedOperator:
    """Nested cups: sign +1 gives V^w (x) V*^w, sign -1 gives V*^w (x) V^w."""
    F = field_for(N)
    V, Vs = TensorSpace(n, (1,) * width), TensorSpace(n, (-1,) * width)
    empty = TensorSpace(n, ())
    col: Dict[Basis, Scalar] = {}
    for s in V.basis:
        rev = tuple(reversed(s))
        if sign > 0:
            col[s + rev] = F.one
        else:
            col[rev + s] = _twist(n, N, s, -1)
    codomain = V.tensor(Vs) if sign > 0 else Vs.tensor(V)
    return GradedOperator(empty, codomain, N, {(): col})


@lru_cache(maxsize=None)
def cap(n: int, N: int, width: int, sign: int) -> GradedOperator:
    """Nested caps: sign +1 takes V*^w (x) V^w, sign -1 takes V^w (x) V*^w."""
    F = field_for(N)
    V, Vs = TensorSpace(n, (1,) * width), TensorSpace(n, (-1,) * width)
    empty = TensorSpace(n, ())
    cols: Dict[Basis, Dict[Basis, Scalar]] = {}
    for s in V.basis:
        rev = tuple(reversed(s))
        if sign > 0:
            cols[rev + s] = {(): F.one}
        else:
            cols[s + rev] = {(): _twist(n, N, s, 1)}
    domain = Vs.tensor(V) if sign > 0 else V.tensor(Vs)
    return GradedOperator(domain, empty, N, cols)


@lru_cache(maxsize=None)
def cable_crossing(n: int, N: int, a: int, b: int, sign: int) -> GradedOperator:
    """The right cable (width b) crossing the left cable (width a), over for sign +1."""
    width = a + b
    op = GradedOperator.identity(TensorSpace.power(n, width), N)
    for g in cable_word(0, a, b, sign):
        op = rhat_local(n, N, width, abs(g), inverse=g < 0) @ op
    return op


def cable_word(offset: int, a: int, b: int, sign: int) -> List[int]:
    """Signed generators replacing one crossing of cables of widths a (left) and b (right)."""
    word = []
    for k in range(b):
        for j in range(offset + a + k, offset + k, -1):
            word.append(sign * j)
    return word


def eval_atom(atom: Atom, widths: Sequence[int], n: int, N: int) -> GradedOperator:
    """The functor on one atom whose strands carry cables of the given widths."""
    if atom.kind == "I":
        w = widths[atom.args[0]]
        return GradedOperator.identity(TensorSpace(n, (atom.sign,) * w), N)
    if atom.kind == "X":
        return cable_crossing(n, N, widths[atom.args[0]], widths[atom.args[1]], atom.sign)
    if atom.kind == "Cup":
        return cup(n, N, widths[atom.args[0]], atom.sign)
    if atom.kind == "Cap":
        return cap(n, N, widths[atom.args[0]], atom.sign)
    raise SemanticError(f"unknown atom {atom.kind}")


def _row_operator(row: Sequence[Atom], widths: Sequence[int], n: int, N: int) -> GradedOperator:
    op = GradedOperator.scalar(field_for(N).one, N, n)
    for atom in row:
        op = op.tensor(eval_atom(atom, widths, n, N))
    return op


def _projector_at(strands, widths, projectors: Dict[int, GradedOperator], n: int, N: int) -> GradedOperator:
    """Identity on a boundary, with the given component projectors on the listed strand slots."""
    op = GradedOperator.scalar(field_for(N).one, N, n)
    for slot, (c, d) in enumerate(strands):
        if slot in projectors:
            op = op.tensor(projectors[slot])
        else:
            op = op.tensor(GradedOperator.identity(TensorSpace(n, (d,) * widths[c]), N))
    return op


def eval_diagram(diagram: TangleDiagram, n: int, N: int,
                 colors: Optional[Sequence[Sequence[int]]] = None,
                 framings: Optional[Sequence[int]] = None) -> GradedOperator:
    """Row-by-row composition of the atom maps, projectors inserted, framing corrected."""
    diagram.validate()
    raw = colors if colors is not None else diagram.colors
    if raw is None:
        raw = [(1,)] * diagram.components
    if len(raw) != diagram.components:
        raise SemanticError(f"color count {len(raw)} != component count {diagram.components}")
    lams = [normalize_color(c, n, N) for c in raw]
    widths = [sum(lam) for lam in lams]
    boundaries = diagram.boundaries()

    inserts: Dict[int, Dict[int, GradedOperator]] = {}
    for c, lam in enumerate(lams):
        if widths[c] < 2:
            continue
        for k, strands in enumerate(boundaries):
            slot = next((s for s, (cc, d) in enumerate(strands) if cc == c and d > 0), None)
            if slot is not None:
                inserts.setdefault(k, {})[slot] = color_projector(lam, n, N)
                break
        else:
            raise SemanticError(f"component {c} never runs downward; cannot place its projector")

    def expanded(strands):
        sig = []
        for c, d in strands:
            sig.extend([d] * widths[c])
        return TensorSpace(n, tuple(sig))

    op = GradedOperator.identity(expanded(boundaries[0]), N)
    for k, row in enumerate(diagram.rows):
        if k in inserts:
            op = _projector_at(boundaries[k], widths, inserts[k], n, N) @ op
        op = _row_operator(row, widths, n, N) @ op
    last = len(diagram.rows)
    if last in inserts:
        op = _projector_at(boundaries[last], widths, inserts[last], n, N) @ op

    fr = framings if framings is not None else diagram.framings
    if fr is not None:
        if len(fr) != diagram.components:
            raise SemanticError(f"framing count {len(fr)} != component count {diagram.components}")
        op = op.scale(framing_factor(lams, fr, diagram.writhe(), n, N))
    log.debug("evaluated diagram: %d rows, widths %s", len(diagram.rows), widths)
    return op


def eval_closed(diagram: TangleDiagram, n: int, N: int,
                colors: Optional[Sequence[Sequence[int]]] = None,
                framings: Optional[Sequence[int]] = None) -> Scalar:
    if not diagram.is_closed():
        raise SemanticError("diagram has open boundary strands; expected a (0,0)-diagram")
    return eval_diagram(diagram, n, N, colors, framings).to_scalar()


# --- braid closures --------------------------------------------------------------


def closure_writhes(strands: int, word: Sequence[int]) -> Tuple[List[List[int]], List[int], Dict[Tuple[int, int], int]]:
    """Components, self-crossing sums per component, and signed mixed-crossing sums per pair."""
    cycles = braid_components(strands, word)
    comp = {p: c for c, cyc in enumerate(cycles) for p in cyc}
    at = list(range(strands))
    writhe = [0] * len(cycles)
    mixed: Dict[Tuple[int, int], int] = {}
    for g in word:
        i = abs(g)
        s = 1 if g > 0 else -1
        a, b = comp[at[i - 1]], comp[at[i]]
        if a == b:
            writhe[a] += s
        else:
            key = (min(a, b), max(a, b))
            mixed[key] = mixed.get(key, 0) + s
        at[i - 1], at[i] = at[i], at[i - 1]
    return cycles, writhe, mixed


def braid_closure_value(strands: int, word: Sequence[int], colors: Sequence[Sequence[int]],
                        framings: Sequence[int], n: int, N: int) -> Scalar:
    """str_q of the cabled braid composed with the color projectors, framing corrected."""
    cycles, writhe, _ = closure_writhes(strands, word)
    if len(framings) != len(cycles):
        raise SemanticError(f"framing count {len(framings)} != component count {len(cycles)}")
    if len(colors) != len(cycles):
        raise SemanticError(f"color count {len(colors)} != component count {len(cycles)}")
    lams = [normalize_color(c, n, N) for c in colors]
    comp = {p: c for c, cyc in enumerate(cycles) for p in cyc}
    widths_at = [sum(lams[comp[p]]) for p in range(strands)]
    total = sum(widths_at)
    factor = framing_factor(lams, framings, writhe, n, N)
    if total == 0:
        return factor

    op = GradedOperator.scalar(field_for(N).one, N, n)
    for p in range(strands):
        c = comp[p]
        w = widths_at[p]
        if w >= 2 and p == cycles[c][0]:
            op = op.tensor(color_projector(lams[c], n, N))
        elif w:
            op = op.tensor(GradedOperator.identity(TensorSpace.power(n, w), N))

    width = list(widths_at)
    for g in word:
        i = abs(g)
        offset = sum(width[: i - 1])
        a, b = width[i - 1], width[i]
        for h in cable_word(offset, a, b, 1 if g > 0 else -1):
            op = rhat_local(n, N, total, abs(h), inverse=h < 0) @ op
        width[i - 1], width[i] = b, a
    value = op.supertrace(quantum=True)
    return value * factor
