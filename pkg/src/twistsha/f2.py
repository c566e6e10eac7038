"""Dense linear algebra over F_2 with rows packed into Python ints.

Bit j of a row (or vector) holds column j.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


@dataclass(frozen=True)
class F2Vector:
    length: int
    bits: int = 0

    def __post_init__(self):
        if self.bits >> self.length:
            raise ValueError("padding bits beyond length must be zero")

    @classmethod
    def from_list(cls, xs: Iterable[int]) -> "F2Vector":
        xs = list(xs)
        bits = 0
        for j, x in enumerate(xs):
            if x & 1:
                bits |= 1 << j
        return cls(len(xs), bits)

    @classmethod
    def zeros(cls, length: int) -> "F2Vector":
        return cls(length, 0)

    @classmethod
    def ones(cls, length: int) -> "F2Vector":
        return cls(length, (1 << length) - 1)

    def to_list(self) -> list:
        return [(self.bits >> j) & 1 for j in range(self.length)]

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.length:
            raise IndexError(j)
        return (self.bits >> j) & 1

    def __add__(self, other: "F2Vector") -> "F2Vector":
        if other.length != self.length:
            raise ValueError("length mismatch")
        return F2Vector(self.length, self.bits ^ other.bits)

    def dot(self, other: "F2Vector") -> int:
        if other.length != self.length:
            raise ValueError("length mismatch")
        return bin(self.bits & other.bits).count("1") & 1

    def concat(self, other: "F2Vector") -> "F2Vector":
        return F2Vector(self.length + other.length, self.bits | (other.bits << self.length))

    def slice(self, start: int, stop: int) -> "F2Vector":
        return F2Vector(stop - start, (self.bits >> start) & ((1 << (stop - start)) - 1))

    def is_zero(self) -> bool:
        return self.bits == 0

    def __repr__(self):
        return "F2Vector(" + "".join(map(str, self.to_list())) + ")"


class F2Matrix:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Optional[Sequence[int]] = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = list(rows) if rows is not None else [0] * nrows
        if len(self.rows) != nrows:
            raise ValueError("row count does not match nrows")
        mask = ~((1 << ncols) - 1)
        if any(r & mask for r in self.rows):
            raise ValueError("padding bits beyond ncols must be zero")

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> "F2Matrix":
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        packed = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            packed.append(F2Vector.from_list(r).bits)
        return cls(len(rows), ncols, packed)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "F2Matrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def diag(cls, entries: Sequence[int]) -> "F2Matrix":
        n = len(entries)
        return cls(n, n, [(e & 1) << i for i, e in enumerate(entries)])

    @classmethod
    def block(cls, blocks: Sequence[Sequence[Optional["F2Matrix"]]], row_sizes=None, col_sizes=None) -> "F2Matrix":
        """Assemble from a grid of blocks; ``None`` entries are zero blocks."""
        if row_sizes is None:
            row_sizes = [next(b.nrows for b in brow if b is not None) for brow in blocks]
        if col_sizes is None:
            col_sizes = [
                next(blocks[i][j].ncols for i in range(len(blocks)) if blocks[i][j] is not None)
                for j in range(len(blocks[0]))
            ]
        offsets = [0]
        for c in col_sizes:
            offsets.append(offsets[-1] + c)
        rows = []
        for brow, h in zip(blocks, row_sizes):
            part = [0] * h
            for j, b in enumerate(brow):
                if b is None:
                    continue
                if (b.nrows, b.ncols) != (h, col_sizes[j]):
                    raise ValueError("block dimension mismatch")
                for i in range(h):
                    part[i] |= b.rows[i] << offsets[j]
            rows.extend(part)
        return cls(len(rows), offsets[-1], rows)

    def to_lists(self) -> list:
        return [F2Vector(self.ncols, r).to_list() for r in self.rows]

    def __getitem__(self, ij) -> int:
        i, j = ij
        return (self.rows[i] >> j) & 1

    def __eq__(self, other):
        if not isinstance(other, F2Matrix):
            return NotImplemented
        return (self.nrows, self.ncols, self.rows) == (other.nrows, other.ncols, other.rows)

    def __add__(self, other: "F2Matrix") -> "F2Matrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return F2Matrix(self.nrows, self.ncols, [a ^ b for a, b in zip(self.rows, other.rows)])

    def transpose(self) -> "F2Matrix":
        out = [0] * self.ncols
        for i, r in enumerate(self.rows):
            j = 0
            while r:
                if r & 1:
                    out[j] |= 1 << i
                r >>= 1
                j += 1
        return F2Matrix(self.ncols, self.nrows, out)

    @property
    def T(self) -> "F2Matrix":
        return self.transpose()

    def apply(self, v: F2Vector) -> F2Vector:
        if v.length != self.ncols:
            raise ValueError(f"vector length {v.length} != ncols {self.ncols}")
        bits = 0
        for i, r in enumerate(self.rows):
            if bin(r & v.bits).count("1") & 1:
                bits |= 1 << i
        return F2Vector(self.nrows, bits)

    def __matmul__(self, other):
        if isinstance(other, F2Vector):
            return self.apply(other)
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        rows = []
        for r in self.rows:
            acc, j = 0, 0
            while r:
                if r & 1:
                    acc ^= other.rows[j]
                r >>= 1
                j += 1
            rows.append(acc)
        return F2Matrix(self.nrows, other.ncols, rows)

    def hstack(self, other: "F2Matrix") -> "F2Matrix":
        return F2Matrix.block([[self, other]])

    def with_column(self, v: F2Vector) -> "F2Matrix":
        if v.length != self.nrows:
            raise ValueError("column length mismatch")
        return F2Matrix(
            self.nrows, self.ncols + 1, [r | (((v.bits >> i) & 1) << self.ncols) for i, r in enumerate(self.rows)]
        )

    def __repr__(self):
        body = "; ".join("".join(map(str, row)) for row in self.to_lists())
        return f"F2Matrix({self.nrows}x{self.ncols}: {body})"


def _echelon(rows: list, ncols: int) -> tuple:
    """Reduced row echelon form with leftmost pivots; returns (rows, pivot columns)."""
    work = list(rows)
    pivots = []
    r = 0
    for col in range(ncols):
        bit = 1 << col
        for i in range(r, len(work)):
            if work[i] & bit:
                break
        else:
            continue
        work[r], work[i] = work[i], work[r]
        pr = work[r]
        for k in range(len(work)):
            if k != r and work[k] & bit:
                work[k] ^= pr
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def rank(m: F2Matrix) -> int:
    return len(_echelon(m.rows, m.ncols)[1])


def kernel_basis(m: F2Matrix) -> list:
    """Basis of {x : Mx = 0}, one vector per free column in increasing order."""
    red, pivots = _echelon(m.rows, m.ncols)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.ncols):
        if f in pivot_set:
            continue
        bits = 1 << f
        for row, pc in zip(red, pivots):
            if (row >> f) & 1:
                bits |= 1 << pc
        basis.append(F2Vector(m.ncols, bits))
    return basis


def kernel(m: F2Matrix) -> list:
    """All elements of the kernel (small kernels only)."""
    basis = kernel_basis(m)
    out = []
    for mask in range(1 << len(basis)):
        bits = 0
        for i, b in enumerate(basis):
            if (mask >> i) & 1:
                bits ^= b.bits
        out.append(F2Vector(m.ncols, bits))
    return out


def solve(m: F2Matrix, b: F2Vector) -> Optional[F2Vector]:
    """A solution of Mx = b with free variables set to zero, or None."""
    if b.length != m.nrows:
        raise ValueError(f"rhs length {b.length} != nrows {m.nrows}")
    aug_col = 1 << m.ncols
    rows = [r | (aug_col if (b.bits >> i) & 1 else 0) for i, r in enumerate(m.rows)]
    red, pivots = _echelon(rows, m.ncols + 1)
    if pivots and pivots[-1] == m.ncols:
        return None
    bits = 0
    for row, pc in zip(red, pivots):
        if row & aug_col:
            bits |= 1 << pc
    return F2Vector(m.ncols, bits)


def in_image(m: F2Matrix, b: F2Vector) -> bool:
    return solve(m, b) is not None
