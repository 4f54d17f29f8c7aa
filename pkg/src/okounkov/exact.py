"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`.  Elimination runs over the integers
after clearing denominators, normalising each new row by its content, so
intermediate coefficients stay small even for the few-hundred-column monomial
spaces that show up at high levels.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

Rational = Fraction


def as_fraction(x) -> Fraction:
    """Parse ints, Fractions and ``"p/q"`` strings."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


def fmt(x: Fraction) -> str:
    """Exact string form used in every serialized artifact."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        row = {c: v // g for c, v in row.items()}
    return row


def integer_row(row: Mapping[int, Fraction | int] | Sequence[Fraction | int]) -> dict[int, int]:
    """Scale a rational row to a primitive integer row, dropping zeros."""
    items = row.items() if isinstance(row, Mapping) else enumerate(row)
    items = [(c, Fraction(v)) for c, v in items if v != 0]
    if not items:
        return {}
    den = lcm(*(v.denominator for _, v in items))
    return _primitive({c: int(v * den) for c, v in items})


class Echelon:
    """Incremental integer row-echelon form, pivoting on the last nonzero column.

    Pivoting on the *last* column means the free columns are exactly the
    leading (smallest) positions of the kernel vectors, which is what the flag
    valuation enumeration relies on.
    """

    __slots__ = ("ncols", "_rows")

    def __init__(self, ncols: int, rows: dict[int, dict[int, int]] | None = None):
        self.ncols = ncols
        self._rows: dict[int, dict[int, int]] = {} if rows is None else rows

    def copy(self) -> "Echelon":
        # stored rows are never mutated in place
        return Echelon(self.ncols, dict(self._rows))

    def add(self, row) -> bool:
        """Add a row; return True if it increased the rank."""
        r = integer_row(row)
        rows = self._rows
        while r:
            c = max(r)
            piv = rows.get(c)
            if piv is None:
                if r[c] < 0:
                    r = {k: -v for k, v in r.items()}
                rows[c] = r
                return True
            a, b = piv[c], r[c]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {k: a * v for k, v in r.items()}
            for k, v in piv.items():
                w = new.get(k, 0) - b * v
                if w:
                    new[k] = w
                else:
                    new.pop(k, None)
            r = _primitive(new)
        return False

    def extend(self, rows: Iterable) -> "Echelon":
        for r in rows:
            self.add(r)
        return self

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> frozenset[int]:
        return frozenset(self._rows)

    def free_columns(self) -> list[int]:
        rows = self._rows
        return [c for c in range(self.ncols) if c not in rows]

    def is_free(self, col: int) -> bool:
        return col not in self._rows

    def kernel_dim(self) -> int:
        return self.ncols - len(self._rows)


@dataclass(frozen=True)
class Matrix:
    """Immutable dense rational matrix."""

    rows: tuple[tuple[Fraction, ...], ...]
    ncols: int

    @classmethod
    def of(cls, rows: Iterable[Iterable], ncols: int | None = None) -> "Matrix":
        rs = tuple(tuple(as_fraction(x) for x in r) for r in rows)
        if ncols is None:
            if not rs:
                raise ValueError("ncols required for an empty matrix")
            ncols = len(rs[0])
        if any(len(r) != ncols for r in rs):
            raise ValueError("ragged matrix")
        return cls(rs, ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls.of([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "Matrix":
        return cls.of([[0] * n for _ in range(m)], n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def __matmul__(self, v):
        if isinstance(v, Matrix):
            cols = list(zip(*v.rows)) if v.rows else [()] * v.ncols
            return Matrix.of([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows], v.ncols)
        return tuple(sum((a * Fraction(b) for a, b in zip(r, v)), Fraction(0)) for r in self.rows)

    def transpose(self) -> "Matrix":
        return Matrix.of(zip(*self.rows), self.nrows) if self.rows else Matrix((), 0)


def rank(m: Matrix) -> int:
    return Echelon(m.ncols).extend(m.rows).rank


def rref(m: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    a = [list(r) for r in m.rows]
    pivots: list[int] = []
    r = 0
    for c in range(m.ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def kernel_basis(m: Matrix) -> list[tuple[Fraction, ...]]:
    """Basis of {v : m v = 0}, one integer-primitive vector per free column."""
    reduced, pivots = rref(m)
    piv_set = set(pivots)
    basis = []
    for f in range(m.ncols):
        if f in piv_set:
            continue
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        ints = integer_row(v)
        basis.append(tuple(Fraction(ints.get(i, 0)) for i in range(m.ncols)))
    return basis


def solve(m: Matrix, b: Sequence) -> tuple[Fraction, ...] | None:
    """One solution of m x = b, or None if inconsistent."""
    aug = Matrix.of([list(r) + [as_fraction(bi)] for r, bi in zip(m.rows, b)], m.ncols + 1)
    reduced, pivots = rref(aug)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [Fraction(0)] * m.ncols
    for row, p in zip(reduced, pivots):
        x[p] = row[-1]
    return tuple(x)


def in_span(rows: Sequence[Sequence], v: Sequence) -> bool:
    n = len(v)
    e = Echelon(n).extend(rows)
    return not e.copy().add(v)
