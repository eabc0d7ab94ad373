"""Z2-graded tensor spaces over V and V*, and exact sparse operators between them."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from typing import Callable, Dict, Hashable, Iterable, Optional, Tuple, Union
import logging

from ospq.cyclo import Scalar, field_for
from ospq.errors import IdentityCheckError
from ospq.rootdata import inner, root_system

log = logging.getLogger(__name__)

Basis = Tuple[int, ...]
Vector = Dict[Hashable, Scalar]


@lru_cache(maxsize=None)
def labels(n: int) -> Tuple[int, ...]:
    """Basis labels of V in index order: 1..n, 0, -n..-1."""
    return tuple(range(1, n + 1)) + (0,) + tuple(range(-n, 0))


@lru_cache(maxsize=None)
def label_index(n: int) -> Dict[int, int]:
    return {label: k for k, label in enumerate(labels(n))}


@lru_cache(maxsize=None)
def label_weight(n: int, label: int) -> Tuple[int, ...]:
    w = [0] * n
    if label > 0:
        w[label - 1] = 1
    elif label < 0:
        w[-label - 1] = -1
    return tuple(w)


@dataclass(frozen=True)
class TensorSpace:
    """V^(s_1) (x) ... (x) V^(s_k) with s_j = +1 for V and -1 for V*."""
    n: int
    signature: Tuple[int, ...] = ()

    @classmethod
    def power(cls, n: int, t: int) -> "TensorSpace":
        return cls(n, (1,) * t)

    @property
    def width(self) -> int:
        return len(self.signature)

    @property
    def fiber(self) -> int:
        return 2 * self.n + 1

    @property
    def dim(self) -> int:
        return self.fiber ** self.width

    @cached_property
    def basis(self) -> Tuple[Basis, ...]:
        return tuple(product(range(self.fiber), repeat=self.width))

    def tensor(self, other: "TensorSpace") -> "TensorSpace":
        if other.n != self.n:
            raise ValueError("rank mismatch in tensor product of spaces")
        return TensorSpace(self.n, self.signature + other.signature)

    def __matmul__(self, other: "TensorSpace") -> "TensorSpace":
        return self.tensor(other)

    def parity(self, b: Basis) -> int:
        zero = self.n
        return sum(1 for k in b if k != zero) % 2

    def weight(self, b: Basis) -> Tuple[int, ...]:
        w = [0] * self.n
        lab = labels(self.n)
        for k, s in zip(b, self.signature):
            label = lab[k]
            if label:
                w[abs(label) - 1] += s if label > 0 else -s
        return tuple(w)

    def label_of(self, b: Basis) -> Tuple[int, ...]:
        lab = labels(self.n)
        return tuple(lab[k] for k in b)

    def index_of(self, label_tuple: Iterable[int]) -> Basis:
        idx = label_index(self.n)
        return tuple(idx[label] for label in label_tuple)


def _axpy(acc: Vector, c: Scalar, vec: Vector) -> None:
    """acc += c * vec, in place, dropping zeros."""
    for k, v in vec.items():
        cur = acc.get(k)
        new = c * v if cur is None else cur + c * v
        if new.is_zero():
            acc.pop(k, None)
        else:
            acc[k] = new


def add_vectors(*pairs: Tuple[Union[int, Scalar], Vector]) -> Vector:
    acc: Vector = {}
    for c, vec in pairs:
        for k, v in vec.items():
            cur = acc.get(k)
            new = c * v if cur is None else cur + c * v
            if new.is_zero():
                acc.pop(k, None)
            else:
                acc[k] = new
    return acc


class GradedOperator:
    """Exact linear map between tensor spaces, stored column-wise and sparse."""

    __slots__ = ("domain", "codomain", "N", "cols", "_parity")

    def __init__(self, domain: TensorSpace, codomain: TensorSpace, N: int,
                 cols: Dict[Basis, Dict[Basis, Scalar]]):
        self.domain = domain
        self.codomain = codomain
        self.N = N
        self.cols = {}
        for c, col in cols.items():
            kept = {r: v for r, v in col.items() if not v.is_zero()}
            if kept:
                self.cols[c] = kept
        self._parity: Optional[int] = None

    # --- construction --------------------------------------------------------

    @classmethod
    def identity(cls, space: TensorSpace, N: int) -> "GradedOperator":
        one = field_for(N).one
        return cls(space, space, N, {b: {b: one} for b in space.basis})

    @classmethod
    def zero(cls, domain: TensorSpace, codomain: TensorSpace, N: int) -> "GradedOperator":
        return cls(domain, codomain, N, {})

    @classmethod
    def scalar(cls, value: Scalar, N: int, n: int) -> "GradedOperator":
        """A map between the empty tensor products (the ground field)."""
        empty = TensorSpace(n, ())
        return cls(empty, empty, N, {(): {(): value}})

    @classmethod
    def diagonal(cls, space: TensorSpace, N: int, fn: Callable[[Basis], Scalar]) -> "GradedOperator":
        return cls(space, space, N, {b: {b: fn(b)} for b in space.basis})

    @classmethod
    def from_labels(cls, space: TensorSpace, N: int,
                    action: Dict[Tuple[int, ...], Dict[Tuple[int, ...], Union[int, Scalar]]],
                    codomain: Optional[TensorSpace] = None) -> "GradedOperator":
        """Build from a label-indexed action table {input labels: {output labels: coefficient}}."""
        codomain = codomain or space
        F = field_for(N)
        cols = {}
        for src, image in action.items():
            cols[space.index_of(src)] = {
                codomain.index_of(dst): (c if isinstance(c, Scalar) else F.const(c))
                for dst, c in image.items()
            }
        return cls(space, codomain, N, cols)

    # --- inspection ----------------------------------------------------------

    @property
    def field(self):
        return field_for(self.N)

    def column(self, b: Basis) -> Dict[Basis, Scalar]:
        return self.cols.get(b, {})

    def entry(self, row: Basis, col: Basis) -> Scalar:
        return self.cols.get(col, {}).get(row, self.field.zero)

    def is_zero(self) -> bool:
        return not self.cols

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols.values())

    @property
    def parity(self) -> int:
        if self._parity is None:
            found = None
            for c, col in self.cols.items():
                pc = self.domain.parity(c)
                for r in col:
                    p = (pc + self.codomain.parity(r)) % 2
                    if found is None:
                        found = p
                    elif p != found:
                        raise IdentityCheckError("operator is not homogeneous in the Z2 grading")
            self._parity = found or 0
        return self._parity

    def weight_shift(self) -> Optional[Tuple[int, ...]]:
        """Common weight change of all entries, or None if not uniform."""
        shift = None
        for c, col in self.cols.items():
            wc = self.domain.weight(c)
            for r in col:
                d = tuple(a - b for a, b in zip(self.codomain.weight(r), wc))
                if shift is None:
                    shift = d
                elif d != shift:
                    return None
        return shift if shift is not None else (0,) * self.domain.n

    # --- algebra -------------------------------------------------------------

    def _check_same(self, other: "GradedOperator") -> None:
        if self.domain != other.domain or self.codomain != other.codomain:
            raise ValueError("operator spaces do not match")

    def __add__(self, other: "GradedOperator") -> "GradedOperator":
        self._check_same(other)
        cols = {c: dict(col) for c, col in self.cols.items()}
        one = self.field.one
        for c, col in other.cols.items():
            acc = cols.setdefault(c, {})
            _axpy(acc, one, col)
        return GradedOperator(self.domain, self.codomain, self.N, cols)

    def __neg__(self) -> "GradedOperator":
        return GradedOperator(self.domain, self.codomain, self.N,
                              {c: {r: -v for r, v in col.items()} for c, col in self.cols.items()})

    def __sub__(self, other: "GradedOperator") -> "GradedOperator":
        return self + (-other)

    def scale(self, c: Union[int, Scalar]) -> "GradedOperator":
        if isinstance(c, int):
            c = self.field.const(c)
        if c.is_zero():
            return GradedOperator.zero(self.domain, self.codomain, self.N)
        return GradedOperator(self.domain, self.codomain, self.N,
                              {k: {r: c * v for r, v in col.items()} for k, col in self.cols.items()})

    def __mul__(self, c) -> "GradedOperator":
        if isinstance(c, (int, Scalar)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def shift(self, c: Union[int, Scalar]) -> "GradedOperator":
        """self - c * id."""
        if self.domain != self.codomain:
            raise ValueError("shift needs an endomorphism")
        return self - GradedOperator.identity(self.domain, self.N).scale(c)

    def apply(self, vec: Dict[Basis, Scalar]) -> Dict[Basis, Scalar]:
        acc: Dict[Basis, Scalar] = {}
        for b, c in vec.items():
            col = self.cols.get(b)
            if col:
                _axpy(acc, c, col)
        return acc

    def compose(self, other: "GradedOperator") -> "GradedOperator":
        """self after other."""
        if other.codomain != self.domain:
            raise ValueError(
                f"cannot compose: codomain {other.codomain.signature} vs domain {self.domain.signature}"
            )
        cols = {}
        for c, col in other.cols.items():
            out = self.apply(col)
            if out:
                cols[c] = out
        return GradedOperator(other.domain, self.codomain, self.N, cols)

    def __matmul__(self, other: "GradedOperator") -> "GradedOperator":
        return self.compose(other)

    def tensor(self, other: "GradedOperator") -> "GradedOperator":
        """(a (x) b)(v (x) w) = (-1)^([b][v]) av (x) bw."""
        odd = other.parity == 1
        cols = {}
        for ca, cola in self.cols.items():
            flip = odd and self.domain.parity(ca) == 1
            for cb, colb in other.cols.items():
                col = {}
                for ra, x in cola.items():
                    for rb, y in colb.items():
                        v = x * y
                        col[ra + rb] = -v if flip else v
                cols[ca + cb] = col
        return GradedOperator(self.domain.tensor(other.domain), self.codomain.tensor(other.codomain),
                              self.N, cols)

    def __pow__(self, k: int) -> "GradedOperator":
        if k < 0:
            return self.inverse() ** (-k)
        result = GradedOperator.identity(self.domain, self.N)
        for _ in range(k):
            result = self.compose(result)
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedOperator):
            return NotImplemented
        return (self.domain == other.domain and self.codomain == other.codomain
                and self.cols == other.cols)

    __hash__ = None

    def __repr__(self) -> str:
        return (f"GradedOperator({self.domain.signature} -> {self.codomain.signature}, "
                f"N={self.N}, nnz={self.nnz()})")

    def to_scalar(self) -> Scalar:
        if self.domain.width or self.codomain.width:
            raise IdentityCheckError("operator is not a scalar: spaces are not empty")
        return self.entry((), ())

    # --- traces --------------------------------------------------------------

    def _qweight(self, space: TensorSpace, b: Basis) -> Scalar:
        e = inner(root_system(space.n).two_rho, space.weight(b))
        return self.field.q_pow(e)

    def supertrace(self, quantum: bool = False) -> Scalar:
        """str(f), or str(K_2rho f) when quantum."""
        if self.domain != self.codomain:
            raise ValueError("supertrace needs an endomorphism")
        total = self.field.zero
        for b, col in self.cols.items():
            v = col.get(b)
            if v is None:
                continue
            if quantum:
                v = v * self._qweight(self.domain, b)
            total = total - v if self.domain.parity(b) else total + v
        return total

    def partial_supertrace(self, quantum: bool = True) -> "GradedOperator":
        """Quantum supertrace over the last tensor factor."""
        if self.domain != self.codomain or not self.domain.width:
            raise ValueError("partial supertrace needs an endomorphism of a nonempty product")
        rest = TensorSpace(self.domain.n, self.domain.signature[:-1])
        last = TensorSpace(self.domain.n, self.domain.signature[-1:])
        cols: Dict[Basis, Dict[Basis, Scalar]] = {}
        for c, col in self.cols.items():
            head, v = c[:-1], c[-1:]
            factor = self._qweight(last, v) if quantum else self.field.one
            if last.parity(v):
                factor = -factor
            acc = cols.setdefault(head, {})
            for r, x in col.items():
                if r[-1:] != v:
                    continue
                key = r[:-1]
                new = acc.get(key, self.field.zero) + factor * x
                if new.is_zero():
                    acc.pop(key, None)
                else:
                    acc[key] = new
        return GradedOperator(rest, rest, self.N, cols)

    # --- exact elimination ---------------------------------------------------

    def rank(self) -> int:
        reducer = RowReducer(self.N)
        for c in sorted(self.cols):
            reducer.add(self.cols[c])
        return reducer.rank

    def inverse(self) -> "GradedOperator":
        if self.domain.dim != self.codomain.dim:
            raise IdentityCheckError("only square operators are invertible")
        one = self.field.one
        reducer = RowReducer(self.N)
        for b in self.domain.basis:
            if not reducer.add(self.column(b), {b: one}):
                raise IdentityCheckError("operator is singular")
        cols = {p: reducer.combos[p] for p in reducer.rows}
        log.debug("inverted operator of dimension %d", self.domain.dim)
        return GradedOperator(self.codomain, self.domain, self.N, cols)


def local(op: GradedOperator, left: TensorSpace, right: TensorSpace) -> GradedOperator:
    """id_left (x) op (x) id_right."""
    out = op
    if left.width:
        out = GradedOperator.identity(left, op.N).tensor(out)
    if right.width:
        out = out.tensor(GradedOperator.identity(right, op.N))
    return out


class RowReducer:
    """Incremental reduced row echelon form over the cyclotomic field.

    Each added vector may carry a combination record; after elimination the
    stored row with pivot p equals the recorded combination of added vectors.
    """

    def __init__(self, N: int):
        self.N = N
        self.rows: Dict[Hashable, Vector] = {}
        self.combos: Dict[Hashable, Vector] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Vector, combo: Optional[Vector] = None) -> Tuple[Vector, Vector]:
        vec = dict(vec)
        combo = dict(combo or {})
        for p in [k for k in vec if k in self.rows]:
            c = vec.get(p)
            if c is None:
                continue
            _axpy(vec, -c, self.rows[p])
            _axpy(combo, -c, self.combos[p])
        return vec, combo

    def contains(self, vec: Vector) -> bool:
        return not self.reduce(vec)[0]

    def add(self, vec: Vector, combo: Optional[Vector] = None) -> bool:
        """Insert vec; False if it was already in the span."""
        vec, combo = self.reduce(vec, combo)
        if not vec:
            return False
        pivot = min(vec)
        inv = vec[pivot].inverse()
        vec = {k: inv * v for k, v in vec.items()}
        combo = {k: inv * v for k, v in combo.items()}
        for p, row in self.rows.items():
            c = row.get(pivot)
            if c is not None:
                _axpy(row, -c, vec)
                _axpy(self.combos[p], -c, combo)
        self.rows[pivot] = vec
        self.combos[pivot] = combo
        return True
