"""Exact linear algebra over the rationals.

``Rational`` is an alias for :class:`fractions.Fraction`, which already
guarantees lowest terms, a positive denominator and arbitrary precision.
``RatMatrix`` is a small dense row-major matrix with the three kernel
operations everything else needs: rank, nullspace and linear solve.

No floating point anywhere; every comparison in this package is exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def rat(p, q=1) -> Fraction:
    """Build a rational from integers (or parse a string like '-3/7')."""
    return Fraction(p, q) if q != 1 else Fraction(p)


def rat_to_str(x: Fraction) -> str:
    """Serialize as ``p/q``, or ``p`` when the denominator is 1."""
    return str(Fraction(x))


def rat_from_str(s: str) -> Fraction:
    return Fraction(s.strip())


def _bitsize(x: Fraction) -> int:
    # Size proxy used for pivot selection: small pivots keep the
    # elimination's intermediate entries small.
    return abs(x.numerator).bit_length() + x.denominator.bit_length()


class InconsistentSystem(Exception):
    """Raised by :meth:`RatMatrix.solve` when b is outside the column space."""


class RatMatrix:
    """Dense matrix of Fractions, row-major."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Optional[List[List[Fraction]]] = None):
        self.rows = rows
        self.cols = cols
        if data is None:
            self.data = [[ZERO] * cols for _ in range(rows)]
        else:
            if len(data) != rows or any(len(r) != cols for r in data):
                raise ValueError("shape mismatch")
            self.data = [[Fraction(x) for x in row] for row in data]

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RatMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, [[Fraction(x) for x in r] for r in rows])

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        m = cls(n, n)
        for i in range(n):
            m.data[i][i] = ONE
        return m

    # -- basics ------------------------------------------------------------

    def copy(self) -> "RatMatrix":
        return RatMatrix(self.rows, self.cols, [row[:] for row in self.data])

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __setitem__(self, ij, value):
        i, j = ij
        self.data[i][j] = Fraction(value)

    def __eq__(self, other):
        return (
            isinstance(other, RatMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __repr__(self):
        return f"RatMatrix({self.rows}x{self.cols})"

    def to_text(self) -> str:
        return "\n".join(" ".join(rat_to_str(x) for x in row) for row in self.data)

    @classmethod
    def from_text(cls, text: str) -> "RatMatrix":
        rows = [
            [Fraction(tok) for tok in line.split()]
            for line in text.strip().splitlines()
            if line.strip()
        ]
        return cls.from_rows(rows)

    def mul_vec(self, v: Sequence[Fraction]) -> List[Fraction]:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return [sum((row[j] * v[j] for j in range(self.cols)), ZERO) for row in self.data]

    def matmul(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        out = RatMatrix(self.rows, other.cols)
        for i in range(self.rows):
            arow = self.data[i]
            orow = out.data[i]
            for k in range(self.cols):
                a = arow[k]
                if a:
                    brow = other.data[k]
                    for j in range(other.cols):
                        if brow[j]:
                            orow[j] += a * brow[j]
        return out

    def transpose(self) -> "RatMatrix":
        return RatMatrix(
            self.cols, self.rows, [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    # -- elimination kernel --------------------------------------------------

    def _rref(self):
        """Reduced row echelon form; returns (matrix rows, pivot column list).

        Pivot choice: among the nonzero candidates in the current column,
        take the entry of smallest bit-size (a growth-limiting heuristic;
        any choice would be correct).
        """
        m = [row[:] for row in self.data]
        pivots: List[int] = []
        r = 0
        for c in range(self.cols):
            if r >= self.rows:
                break
            best = None
            for i in range(r, self.rows):
                if m[i][c]:
                    sz = _bitsize(m[i][c])
                    if best is None or sz < best[0]:
                        best = (sz, i)
            if best is None:
                continue
            i = best[1]
            m[r], m[i] = m[i], m[r]
            piv = m[r][c]
            if piv != 1:
                m[r] = [x / piv for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c]:
                    f = m[i][c]
                    row_i, row_r = m[i], m[r]
                    for j in range(c, self.cols):
                        if row_r[j]:
                            row_i[j] -= f * row_r[j]
            pivots.append(c)
            r += 1
        return m, pivots

    def rank(self) -> int:
        return len(self._rref()[1])

    def nullspace(self) -> List[List[Fraction]]:
        """Basis of the right nullspace, one vector per free column."""
        m, pivots = self._rref()
        pivset = set(pivots)
        free = [c for c in range(self.cols) if c not in pivset]
        basis = []
        for fc in free:
            v = [ZERO] * self.cols
            v[fc] = ONE
            for r, pc in enumerate(pivots):
                v[pc] = -m[r][fc]
            basis.append(v)
        return basis

    def solve(self, b: Sequence[Fraction]) -> List[Fraction]:
        """One exact solution of ``self @ x = b``.

        Raises :class:`InconsistentSystem` (message ``"inconsistent"``)
        when b is outside the column space.
        """
        if len(b) != self.rows:
            raise ValueError("dimension mismatch")
        aug = RatMatrix(
            self.rows, self.cols + 1, [row[:] + [Fraction(bi)] for row, bi in zip(self.data, b)]
        )
        m, pivots = aug._rref()
        if self.cols in pivots:
            raise InconsistentSystem("inconsistent")
        x = [ZERO] * self.cols
        for r, pc in enumerate(pivots):
            x[pc] = m[r][self.cols]
        return x

    def inverse(self) -> "RatMatrix":
        if self.rows != self.cols:
            raise ValueError("not square")
        n = self.rows
        aug = RatMatrix(n, 2 * n, [row[:] + irow[:] for row, irow in zip(self.data, RatMatrix.identity(n).data)])
        m, pivots = aug._rref()
        if pivots != list(range(n)):
            raise ValueError("singular matrix")
        return RatMatrix(n, n, [row[n:] for row in m])


def rank(m: RatMatrix) -> int:
    return m.rank()


def nullspace(m: RatMatrix) -> List[List[Fraction]]:
    return m.nullspace()


def solve(m: RatMatrix, b: Sequence[Fraction]) -> List[Fraction]:
    return m.solve(b)
