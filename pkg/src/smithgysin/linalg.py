"""Exact linear algebra over the rationals.

Matrices act on column vectors and are immutable.  Row reduction runs on
Python integers (fraction-free, with gcd normalisation of each row) and
only divides once the reduced echelon form is read off, so entry growth is
absorbed by arbitrary-precision ints rather than by Fraction bookkeeping.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


class LinalgError(Exception):
    """Base class for contract violations in this module."""


class DimensionMismatch(LinalgError):
    pass


class NotAnInvolution(LinalgError):
    def __init__(self, row: int, col: int, value: Fraction):
        self.row, self.col, self.value = row, col, value
        super().__init__(
            f"t*t differs from the identity at entry ({row}, {col}): got {format_rational(value)}"
        )


class RationalParseError(ValueError):
    pass


def parse_rational(text: str | int) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; reject zero denominators and anything else."""
    if isinstance(text, bool):
        raise RationalParseError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise RationalParseError(f"not a rational: {text!r}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise RationalParseError(f"not a rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise RationalParseError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    return Fraction(x)


@dataclass(frozen=True, eq=True)
class Matrix:
    """An ``nrows x ncols`` rational matrix.  Empty shapes are zero maps."""

    nrows: int
    ncols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.nrows < 0 or self.ncols < 0:
            raise DimensionMismatch(f"negative shape {self.nrows}x{self.ncols}")
        if len(self.entries) != self.nrows or any(len(r) != self.ncols for r in self.entries):
            raise DimensionMismatch(f"entries do not match declared shape {self.nrows}x{self.ncols}")

    # construction -------------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], ncols: int | None = None) -> Matrix:
        data = tuple(tuple(_frac(x) for x in row) for row in rows)
        if ncols is None:
            if not data:
                raise DimensionMismatch("cannot infer the column count of a matrix with no rows")
            ncols = len(data[0])
        return cls(len(data), ncols, data)

    @classmethod
    def from_columns(cls, columns: Iterable[Sequence], nrows: int) -> Matrix:
        cols = [tuple(_frac(x) for x in c) for c in columns]
        for c in cols:
            if len(c) != nrows:
                raise DimensionMismatch(f"column of length {len(c)}, expected {nrows}")
        return cls(nrows, len(cols), tuple(tuple(c[i] for c in cols) for i in range(nrows)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> Matrix:
        z = Fraction(0)
        return cls(nrows, ncols, tuple((z,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, n: int) -> Matrix:
        one, z = Fraction(1), Fraction(0)
        return cls(n, n, tuple(tuple(one if i == j else z for j in range(n)) for i in range(n)))

    # access -------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        i, j = idx
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(f"entry ({i}, {j}) outside {self.nrows}x{self.ncols}")
        return self.entries[i][j]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(x) for x in row) for row in self.entries)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"

    # arithmetic ---------------------------------------------------------
    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot compose {self.shape} with {other.shape}")
        ocols = other.columns()
        z = Fraction(0)
        out = []
        for row in self.entries:
            nz = [(k, a) for k, a in enumerate(row) if a]
            out.append(tuple(sum((a * col[k] for k, a in nz), z) for col in ocols))
        return Matrix(self.nrows, other.ncols, tuple(out))

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(v)} for a {self.shape} matrix")
        z = Fraction(0)
        nz = [(k, _frac(x)) for k, x in enumerate(v) if x]
        return tuple(sum((row[k] * x for k, x in nz), z) for row in self.entries)

    def _check_same(self, other: Matrix) -> None:
        if self.shape != other.shape:
            raise DimensionMismatch(f"shape {self.shape} vs {other.shape}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        return Matrix(self.nrows, self.ncols, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        return Matrix(self.nrows, self.ncols, tuple(
            tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __neg__(self) -> Matrix:
        return Matrix(self.nrows, self.ncols, tuple(tuple(-a for a in r) for r in self.entries))

    def scale(self, c) -> Matrix:
        c = _frac(c)
        return Matrix(self.nrows, self.ncols, tuple(tuple(c * a for a in r) for r in self.entries))

    @property
    def T(self) -> Matrix:
        return Matrix(self.ncols, self.nrows, tuple(zip(*self.entries)) if self.nrows else
                      tuple(() for _ in range(self.ncols)))

    def select_rows(self, idx: Sequence[int]) -> Matrix:
        return Matrix(len(idx), self.ncols, tuple(self.entries[i] for i in idx))

    def select_columns(self, idx: Sequence[int]) -> Matrix:
        return Matrix(self.nrows, len(idx), tuple(tuple(r[j] for j in idx) for r in self.entries))


def hstack(blocks: Sequence[Matrix], nrows: int | None = None) -> Matrix:
    if not blocks:
        return Matrix.zeros(nrows or 0, 0)
    n = blocks[0].nrows
    for b in blocks:
        if b.nrows != n:
            raise DimensionMismatch("hstack of blocks with different row counts")
    return Matrix(n, sum(b.ncols for b in blocks),
                  tuple(sum((b.entries[i] for b in blocks), ()) for i in range(n)))


def vstack(blocks: Sequence[Matrix], ncols: int | None = None) -> Matrix:
    if not blocks:
        return Matrix.zeros(0, ncols or 0)
    n = blocks[0].ncols
    for b in blocks:
        if b.ncols != n:
            raise DimensionMismatch("vstack of blocks with different column counts")
    return Matrix(sum(b.nrows for b in blocks), n, sum((b.entries for b in blocks), ()))


def block_matrix(rows: Sequence[Sequence[Matrix]]) -> Matrix:
    return vstack([hstack(list(r)) for r in rows])


def block_diag(*blocks: Matrix) -> Matrix:
    rows = []
    for i, b in enumerate(blocks):
        rows.append([b if j == i else Matrix.zeros(b.nrows, c.ncols) for j, c in enumerate(blocks)])
    if not rows:
        return Matrix.zeros(0, 0)
    return block_matrix(rows)


# --------------------------------------------------------------------------
# row reduction

def _integer_rows(m: Matrix) -> list[list[int]]:
    rows = []
    for row in m.entries:
        den = 1
        for x in row:
            q = x.denominator
            if q != 1:
                den = den * q // gcd(den, q)
        if den == 1:
            rows.append([x.numerator for x in row])
        else:
            rows.append([x.numerator * (den // x.denominator) for x in row])
    return rows


def _rref(m: Matrix) -> tuple[list[Vector], list[int]]:
    """Reduced row echelon form: (nonzero rows, pivot columns)."""
    rows = [r for r in _integer_rows(m) if any(r)]
    pivots: list[int] = []
    done = 0
    for col in range(m.ncols):
        piv = None
        for i in range(done, len(rows)):
            if rows[i][col]:
                if piv is None or abs(rows[i][col]) < abs(rows[piv][col]):
                    piv = i
        if piv is None:
            continue
        rows[done], rows[piv] = rows[piv], rows[done]
        prow = rows[done]
        p = prow[col]
        for i in range(len(rows)):
            if i == done:
                continue
            a = rows[i][col]
            if not a:
                continue
            g = gcd(p, a)
            pa, aa = p // g, a // g
            r = [pa * x - aa * y for x, y in zip(rows[i], prow)]
            h = reduce(gcd, r, 0)
            if h > 1:
                r = [x // h for x in r]
            rows[i] = r
        pivots.append(col)
        done += 1
        if done == len(rows):
            break
    out = []
    for i, col in enumerate(pivots):
        p = rows[i][col]
        out.append(tuple(Fraction(x, p) for x in rows[i]))
    return out, pivots


def rank(m: Matrix) -> int:
    return len(_rref(m)[1])


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim held by its canonical basis.

    The basis vectors, stacked as rows, form a reduced row echelon matrix, which
    is the same as saying that as columns they are in reduced column echelon
    form.  Two subspaces are equal iff their bases are equal.
    """

    ambient_dim: int
    basis: tuple[Vector, ...]

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> Subspace:
        vecs = [tuple(_frac(x) for x in v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in Q^{ambient_dim}")
        if not vecs:
            return cls(ambient_dim, ())
        rows, _ = _rref(Matrix(len(vecs), ambient_dim, tuple(vecs)))
        return cls(ambient_dim, tuple(rows))

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, Matrix.identity(ambient_dim).entries)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> Matrix:
        """Basis vectors as the columns of an ``ambient_dim x dim`` matrix."""
        return Matrix.from_columns(self.basis, self.ambient_dim)

    def contains(self, v: Sequence) -> bool:
        return Subspace.span(self.ambient_dim, list(self.basis) + [v]).dim == self.dim

    def __le__(self, other: Subspace) -> bool:
        return Subspace.span(self.ambient_dim, self.basis + other.basis).dim == other.dim

    def __add__(self, other: Subspace) -> Subspace:
        return Subspace.span(self.ambient_dim, self.basis + other.basis)

    def intersect(self, other: Subspace) -> Subspace:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("subspaces of different ambient spaces")
        # x in ker [U | -V]  <=>  U x_u = V x_v
        u, v = self.matrix(), other.matrix()
        k = kernel_basis(hstack([u, -v], nrows=self.ambient_dim))
        return Subspace.span(self.ambient_dim,
                             [u.apply(x[: self.dim]) for x in k.basis])


def kernel_basis(m: Matrix) -> Subspace:
    rows, pivots = _rref(m)
    pivset = set(pivots)
    vecs = []
    for f in range(m.ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for r, p in zip(rows, pivots):
            v[p] = -r[f]
        vecs.append(v)
    return Subspace.span(m.ncols, vecs)


def image_basis(m: Matrix) -> Subspace:
    return Subspace.span(m.nrows, m.columns())


def solve(m: Matrix, b: Sequence) -> Vector | None:
    """A particular solution of ``m x = b``, or None when b is not in the image.

    Free variables are set to zero, pivot variables are read off the reduced
    echelon form of the augmented matrix.
    """
    if len(b) != m.nrows:
        raise DimensionMismatch(f"right-hand side of length {len(b)} for {m.nrows} rows")
    aug = hstack([m, Matrix.from_columns([b], m.nrows)], nrows=m.nrows)
    rows, pivots = _rref(aug)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [Fraction(0)] * m.ncols
    for r, p in zip(rows, pivots):
        x[p] = r[m.ncols]
    return tuple(x)


def inverse(m: Matrix) -> Matrix:
    if m.nrows != m.ncols:
        raise DimensionMismatch(f"inverse of a non-square {m.shape} matrix")
    n = m.nrows
    rows, pivots = _rref(hstack([m, Matrix.identity(n)], nrows=n))
    if pivots[:n] != list(range(n)) or (len(pivots) > n and pivots[n] < n):
        raise LinalgError("matrix is singular")
    return Matrix(n, n, tuple(r[n:] for r in rows[:n]))


class Echelon:
    """Incremental independence test: rows kept reduced at each other's pivots."""

    def __init__(self, ambient_dim: int):
        self.ambient_dim = ambient_dim
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []

    def __len__(self) -> int:
        return len(self.rows)

    def add(self, v: Sequence) -> bool:
        """Add ``v`` if it is independent of what is already there."""
        w = [_frac(x) for x in v]
        if len(w) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(w)} in Q^{self.ambient_dim}")
        for row, p in zip(self.rows, self.pivots):
            c = w[p]
            if c:
                w = [a - c * b for a, b in zip(w, row)]
        for p, c in enumerate(w):
            if c:
                self.rows.append([a / c for a in w])
                self.pivots.append(p)
                return True
        return False


def complete_basis(ambient_dim: int, vectors: Sequence[Sequence]) -> list[Vector]:
    """Standard basis vectors that extend the independent ``vectors`` to a basis."""
    ech = Echelon(ambient_dim)
    for v in vectors:
        ech.add(v)
    extra: list[Vector] = []
    for i in range(ambient_dim):
        if len(ech) == ambient_dim:
            break
        e = tuple(Fraction(int(i == j)) for j in range(ambient_dim))
        if ech.add(e):
            extra.append(e)
    return extra


def left_inverse(m: Matrix) -> Matrix:
    """Some ``L`` with ``L m = I`` for ``m`` of full column rank."""
    if rank(m) != m.ncols:
        raise LinalgError("left inverse requires full column rank")
    extra = complete_basis(m.nrows, m.columns())
    full = hstack([m, Matrix.from_columns(extra, m.nrows)], nrows=m.nrows)
    return inverse(full).select_rows(range(m.ncols))


def eigenspace(t: Matrix, sign: int) -> Subspace:
    """The ``sign``-eigenspace of an involution ``t``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if t.nrows != t.ncols:
        raise DimensionMismatch(f"involution must be square, got {t.shape}")
    sq = t @ t
    for i in range(t.nrows):
        for j in range(t.ncols):
            if sq.entries[i][j] != (1 if i == j else 0):
                raise NotAnInvolution(i, j, sq.entries[i][j])
    return kernel_basis(t - Matrix.identity(t.nrows).scale(sign))
