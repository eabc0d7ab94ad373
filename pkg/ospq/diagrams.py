"""Sliced ribbon-tangle diagrams: data types, the text format, validation, and
compilation of braid closures into atom rows.

Text format::

    # comment
    components: 2
    colors: 1 | 1,1        (optional, one weight per component)
    framings: 0 1          (optional, one integer per component)
    Cup+(0)
    I+(0) Cup+(1) I-(0)
    X+(0,1) I-(1) I-(0)
    ...
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple
import logging
import re

from ospq.errors import ParseError, SemanticError

log = logging.getLogger(__name__)

Strand = Tuple[int, int]  # (component, +1 downward / -1 upward)

ATOM_ARITY = {"I": 1, "X": 2, "Cup": 1, "Cap": 1}
_TOKEN = re.compile(r"(Cup|Cap|I|X)([+-])\(([^()]*)\)")
_HEADER = re.compile(r"^\s*(components|colors|framings)\s*:(.*)$")


@dataclass(frozen=True)
class Atom:
    kind: str
    sign: int
    args: Tuple[int, ...]

    @property
    def token(self) -> str:
        return f"{self.kind}{'+' if self.sign > 0 else '-'}({','.join(map(str, self.args))})"

    def inputs(self) -> List[Strand]:
        if self.kind == "I":
            return [(self.args[0], self.sign)]
        if self.kind == "X":
            return [(self.args[0], 1), (self.args[1], 1)]
        if self.kind == "Cup":
            return []
        c = self.args[0]
        return [(c, -1), (c, 1)] if self.sign > 0 else [(c, 1), (c, -1)]

    def outputs(self) -> List[Strand]:
        if self.kind == "I":
            return [(self.args[0], self.sign)]
        if self.kind == "X":
            return [(self.args[1], 1), (self.args[0], 1)]
        if self.kind == "Cap":
            return []
        c = self.args[0]
        return [(c, 1), (c, -1)] if self.sign > 0 else [(c, -1), (c, 1)]


@dataclass(frozen=True)
class TangleDiagram:
    components: int
    rows: Tuple[Tuple[Atom, ...], ...]
    colors: Optional[Tuple[Tuple[int, ...], ...]] = None
    framings: Optional[Tuple[int, ...]] = None
    line_numbers: Tuple[int, ...] = ()

    def boundaries(self) -> List[List[Strand]]:
        """Strand lists at the top and below every row; raises on mismatch."""
        if not self.rows:
            return [[]]
        out = [[s for atom in self.rows[0] for s in atom.inputs()]]
        for k, row in enumerate(self.rows):
            inputs = [s for atom in row for s in atom.inputs()]
            if inputs != out[-1]:
                line = self.line_numbers[k] if k < len(self.line_numbers) else None
                where = f" (line {line})" if line else ""
                raise SemanticError(
                    f"row {k + 1}{where} expects strands {_fmt(inputs)} but receives {_fmt(out[-1])}"
                )
            out.append([s for atom in row for s in atom.outputs()])
        return out

    @property
    def top(self) -> List[Strand]:
        return self.boundaries()[0]

    @property
    def bottom(self) -> List[Strand]:
        return self.boundaries()[-1]

    def is_closed(self) -> bool:
        b = self.boundaries()
        return not b[0] and not b[-1]

    def writhe(self) -> List[int]:
        w = [0] * self.components
        for row in self.rows:
            for atom in row:
                if atom.kind == "X" and atom.args[0] == atom.args[1]:
                    w[atom.args[0]] += atom.sign
        return w

    def validate(self) -> None:
        used = set()
        for row in self.rows:
            for atom in row:
                for c in atom.args:
                    if not 0 <= c < self.components:
                        raise SemanticError(f"{atom.token}: component {c} outside 0..{self.components - 1}")
                    used.add(c)
        missing = set(range(self.components)) - used
        if missing:
            raise SemanticError(f"components {sorted(missing)} never appear in the diagram")
        if self.colors is not None and len(self.colors) != self.components:
            raise SemanticError(f"color count {len(self.colors)} != component count {self.components}")
        if self.framings is not None and len(self.framings) != self.components:
            raise SemanticError(f"framing count {len(self.framings)} != component count {self.components}")
        self.boundaries()


def _fmt(strands: Sequence[Strand]) -> str:
    return "[" + " ".join(f"{c}{'v' if d > 0 else '^'}" for c, d in strands) + "]"


def _parse_ints(text: str, line: int, column: int, sep: str = ",") -> Tuple[int, ...]:
    parts = [p.strip() for p in text.split(sep)]
    if parts == [""]:
        return ()
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise ParseError(f"expected integers, got {text.strip()!r}", line, column) from None


def _parse_row(text: str, line: int) -> Tuple[Atom, ...]:
    atoms = []
    pos = 0
    for m in _TOKEN.finditer(text):
        gap = text[pos:m.start()]
        if gap.strip():
            col = pos + len(gap) - len(gap.lstrip()) + 1
            raise ParseError(f"unexpected text {gap.strip()!r}", line, col)
        kind, sign, args = m.group(1), m.group(2), m.group(3)
        values = _parse_ints(args, line, m.start(3) + 1)
        if len(values) != ATOM_ARITY[kind]:
            raise ParseError(
                f"{kind}{sign} takes {ATOM_ARITY[kind]} component index(es), got {len(values)}",
                line, m.start() + 1,
            )
        atoms.append(Atom(kind, 1 if sign == "+" else -1, values))
        pos = m.end()
    tail = text[pos:]
    if tail.strip():
        col = pos + len(tail) - len(tail.lstrip()) + 1
        raise ParseError(f"unexpected text {tail.strip()!r}", line, col)
    return tuple(atoms)


def parse_diagram(text: str) -> TangleDiagram:
    components: Optional[int] = None
    colors = None
    framings = None
    rows: List[Tuple[Atom, ...]] = []
    line_numbers: List[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        header = _HEADER.match(line)
        if header:
            if rows:
                raise ParseError(f"header {header.group(1)!r} after diagram rows", lineno, 1)
            key, value = header.group(1), header.group(2)
            col = header.start(2) + 1
            if key == "components":
                vals = _parse_ints(value, lineno, col)
                if len(vals) != 1 or vals[0] < 0:
                    raise ParseError("components expects one non-negative integer", lineno, col)
                components = vals[0]
            elif key == "colors":
                colors = tuple(_parse_ints(part, lineno, col) for part in value.split("|"))
            else:
                framings = _parse_ints(value, lineno, col, sep=None) if value.strip() else ()
            continue
        rows.append(_parse_row(line, lineno))
        line_numbers.append(lineno)
    if components is None:
        raise ParseError("missing 'components:' header", 1, 1)
    diagram = TangleDiagram(components, tuple(rows), colors, framings, tuple(line_numbers))
    diagram.validate()
    log.debug("parsed diagram with %d rows and %d components", len(rows), components)
    return diagram


def load_diagram(path: str) -> TangleDiagram:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as exc:
        raise ParseError(f"cannot read diagram file {path}: {exc}") from None
    return parse_diagram(text)


# --- braid closures as atom rows -------------------------------------------------


def braid_components(strands: int, word: Sequence[int]) -> List[List[int]]:
    """Cycles of the closure permutation as lists of top positions, ordered by minimum."""
    at = list(range(strands))
    for g in word:
        i = abs(g)
        if not 1 <= i <= strands - 1:
            raise SemanticError(f"generator index {g} outside 1..{strands - 1}")
        at[i - 1], at[i] = at[i], at[i - 1]
    follow = {origin: bottom for bottom, origin in enumerate(at)}
    seen = set()
    cycles = []
    for start in range(strands):
        if start in seen:
            continue
        cycle = []
        p = start
        while p not in seen:
            seen.add(p)
            cycle.append(p)
            p = follow[p]
        cycles.append(sorted(cycle))
    return cycles


def compile_braid_closure(strands: int, word: Sequence[int],
                          colors: Optional[Sequence[Sequence[int]]] = None,
                          framings: Optional[Sequence[int]] = None) -> TangleDiagram:
    """Closure of a braid as rows: nested cups, one row per crossing, nested caps."""
    cycles = braid_components(strands, word)
    comp = {p: c for c, cyc in enumerate(cycles) for p in cyc}
    m = strands
    rows: List[Tuple[Atom, ...]] = []
    for k in range(m):
        rows.append(
            tuple(Atom("I", 1, (comp[j],)) for j in range(k))
            + (Atom("Cup", 1, (comp[k],)),)
            + tuple(Atom("I", -1, (comp[j],)) for j in reversed(range(k)))
        )
    down = [comp[j] for j in range(m)]
    up = [Atom("I", -1, (comp[j],)) for j in reversed(range(m))]
    for g in word:
        i = abs(g)
        left, right = down[i - 1], down[i]
        row = (
            tuple(Atom("I", 1, (down[j],)) for j in range(i - 1))
            + (Atom("X", 1 if g > 0 else -1, (left, right)),)
            + tuple(Atom("I", 1, (down[j],)) for j in range(i + 1, m))
            + tuple(up)
        )
        rows.append(row)
        down[i - 1], down[i] = right, left
    for k in reversed(range(m)):
        rows.append(
            tuple(Atom("I", 1, (down[j],)) for j in range(k))
            + (Atom("Cap", -1, (down[k],)),)
            + tuple(Atom("I", -1, (comp[j],)) for j in reversed(range(k)))
        )
    diagram = TangleDiagram(
        len(cycles), tuple(rows),
        tuple(tuple(c) for c in colors) if colors is not None else None,
        tuple(framings) if framings is not None else None,
    )
    diagram.validate()
    return diagram
