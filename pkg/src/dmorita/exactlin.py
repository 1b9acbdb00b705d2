"""Exact scalar and matrix arithmetic over the rationals and prime fields.

Rational scalars are ``gmpy2.mpq`` values, prime-field scalars are plain
``int`` residues in ``[0, p)``.  Elimination over Q is fraction-free: rows are
cleared to integers and reduced by content after every combination step.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpq


class FieldMismatch(ValueError):
    pass


def _is_prime(p: int) -> bool:
    return p >= 2 and gmpy2.is_prime(p)


@dataclass(frozen=True)
class FieldSpec:
    """Base field: ``char == 0`` for Q, otherwise the prime field F_char."""

    char: int = 0

    def __post_init__(self):
        if self.char != 0 and not _is_prime(self.char):
            raise ValueError(f"field characteristic must be 0 or prime, got {self.char}")

    @property
    def is_rational(self) -> bool:
        return self.char == 0

    def __call__(self, x) -> object:
        """Coerce an int, Fraction, mpq, or ``"num/den"`` string into the field."""
        if isinstance(x, str):
            x = mpq(x)
        if self.char == 0:
            return mpq(x)
        if isinstance(x, int):
            return x % self.char
        q = mpq(x)
        num, den = int(q.numerator), int(q.denominator)
        if den % self.char == 0:
            raise ZeroDivisionError(f"{x} has no image in F_{self.char}")
        return num * pow(den, -1, self.char) % self.char

    @property
    def zero(self):
        return mpq(0) if self.char == 0 else 0

    @property
    def one(self):
        return mpq(1) if self.char == 0 else 1

    def inv(self, x):
        if self.char == 0:
            return 1 / mpq(x)
        return pow(int(x), -1, self.char)

    def neg(self, x):
        return -x if self.char == 0 else (-x) % self.char

    def norm(self, x):
        return x if self.char == 0 else x % self.char

    def to_str(self, x) -> str:
        if self.char == 0:
            q = mpq(x)
            return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
        return str(int(x))

    def __str__(self) -> str:
        return "Q" if self.char == 0 else f"F_{self.char}"


QQ = FieldSpec(0)


def parse_field(text: str) -> FieldSpec:
    """Parse ``q`` or ``fp:<p>``."""
    text = text.strip().lower()
    if text in ("q", "qq", "0"):
        return QQ
    if text.startswith("fp:"):
        return FieldSpec(int(text[3:]))
    raise ValueError(f"unknown field {text!r}; expected 'q' or 'fp:<p>'")


# ---------------------------------------------------------------------------
# sparse row elimination


def _to_int_row(row: dict) -> dict[int, int]:
    den = 1
    for v in row.values():
        d = int(v.denominator)
        if d != 1:
            den = den * d // math.gcd(den, d)
    out = {c: int(v * den) for c, v in row.items()}
    g = math.gcd(*out.values())
    if g > 1:
        out = {c: v // g for c, v in out.items()}
    return out


class Echelon:
    """Incrementally maintained reduced row-echelon basis of a row space.

    Pivot rows never share support on another row's pivot column.  Over Q the
    rows hold integers with a non-unit pivot (fraction-free); over F_p every
    pivot is normalized to 1.  Pivot choice is the first nonzero column, so
    identical insertion sequences give identical echelon forms.
    """

    __slots__ = ("field", "ncols", "rows", "_norm")

    def __init__(self, field: FieldSpec, ncols: int):
        self.field = field
        self.ncols = ncols
        self.rows: dict[int, dict[int, int]] = {}  # pivot col -> row
        self._norm: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, row: dict) -> dict:
        """Return ``row`` reduced against the basis (integer-scaled over Q)."""
        p = self.field.char
        if p == 0:
            v = _to_int_row(row) if row else {}
            hit = [c for c in v if c in self.rows]
            for c in sorted(hit):
                a = v.get(c)
                if not a:
                    continue
                prow = self.rows[c]
                piv = prow[c]
                g = math.gcd(piv, a)
                s, t = piv // g, a // g
                if s != 1:
                    v = {k: x * s for k, x in v.items()}
                for k, x in prow.items():
                    y = v.get(k, 0) - t * x
                    if y:
                        v[k] = y
                    else:
                        v.pop(k, None)
                if v:
                    g = math.gcd(*v.values())
                    if g > 1:
                        v = {k: x // g for k, x in v.items()}
            return v
        v = {c: int(x) % p for c, x in row.items() if int(x) % p}
        for c in sorted(c for c in v if c in self.rows):
            a = v.get(c)
            if not a:
                continue
            for k, x in self.rows[c].items():
                y = (v.get(k, 0) - a * x) % p
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
        return v

    def add(self, row: dict) -> int | None:
        """Insert a row; return its new pivot column, or None if dependent."""
        v = self.reduce(row)
        if not v:
            return None
        c = min(v)
        p = self.field.char
        if p == 0:
            if v[c] < 0:
                v = {k: -x for k, x in v.items()}
            piv = v[c]
            for pc, prow in list(self.rows.items()):
                a = prow.get(c)
                if not a:
                    continue
                g = math.gcd(piv, a)
                s, t = piv // g, a // g
                new = {k: x * s for k, x in prow.items()}
                for k, x in v.items():
                    y = new.get(k, 0) - t * x
                    if y:
                        new[k] = y
                    else:
                        new.pop(k, None)
                g = math.gcd(*new.values())
                if g > 1:
                    new = {k: x // g for k, x in new.items()}
                self.rows[pc] = new
        else:
            inv = pow(v[c], -1, p)
            v = {k: x * inv % p for k, x in v.items()}
            for pc, prow in list(self.rows.items()):
                a = prow.get(c)
                if not a:
                    continue
                new = dict(prow)
                for k, x in v.items():
                    y = (new.get(k, 0) - a * x) % p
                    if y:
                        new[k] = y
                    else:
                        new.pop(k, None)
                self.rows[pc] = new
        self.rows[c] = v
        self._norm.clear()
        return c

    def normalized_row(self, c: int) -> dict:
        """Pivot row for column ``c`` scaled so the pivot is 1, as field scalars."""
        got = self._norm.get(c)
        if got is not None:
            return got
        row = self.rows[c]
        if self.field.char == 0:
            piv = row[c]
            got = {k: mpq(x, piv) for k, x in row.items()}
        else:
            got = dict(row)
        self._norm[c] = got
        return got

    def remainder(self, row: dict) -> dict:
        """Exact remainder of ``row`` modulo the span; zero on every pivot column."""
        F = self.field
        rest = {k: F(x) for k, x in row.items() if x}
        for c in sorted(c for c in rest if c in self.rows):
            a = rest.get(c)
            if not a:
                continue
            for k, x in self.normalized_row(c).items():
                y = F.norm(rest.get(k, F.zero) - a * x)
                if y:
                    rest[k] = y
                else:
                    rest.pop(k, None)
        return rest

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def free_columns(self) -> list[int]:
        return [c for c in range(self.ncols) if c not in self.rows]

    def kernel(self) -> list[list]:
        """Basis of the right kernel: one vector per free column, 1 at that column."""
        F = self.field
        free = self.free_columns()
        norm = {c: self.normalized_row(c) for c in self.rows}
        # column f of the reduced system lists (pivot col, coefficient)
        bycol: dict[int, list] = {}
        for c, row in norm.items():
            for k, x in row.items():
                if k != c:
                    bycol.setdefault(k, []).append((c, x))
        out = []
        for f in free:
            vec = [F.zero] * self.ncols
            vec[f] = F.one
            for c, x in bycol.get(f, ()):
                vec[c] = F.neg(x)
            out.append(vec)
        return out

    def coordinates(self, row: dict) -> dict[int, object] | None:
        """Express ``row`` in the normalized pivot rows; None if outside the span."""
        F = self.field
        rest = {k: F(x) for k, x in row.items() if x}
        coeffs = {}
        for c in sorted(self.rows):
            a = rest.get(c)
            if not a:
                continue
            coeffs[c] = a
            for k, x in self.normalized_row(c).items():
                y = F.norm(rest.get(k, F.zero) - a * x)
                if y:
                    rest[k] = y
                else:
                    rest.pop(k, None)
        return None if rest else coeffs


def echelon_of(rows: Iterable[dict], ncols: int, field: FieldSpec) -> Echelon:
    e = Echelon(field, ncols)
    for r in rows:
        e.add(r)
    return e


# ---------------------------------------------------------------------------
# dense matrices


class Matrix:
    """Dense exact matrix; treat as immutable once built."""

    __slots__ = ("rows", "cols", "data", "field")

    def __init__(self, rows: int, cols: int, data: list[list], field: FieldSpec):
        self.rows = rows
        self.cols = cols
        self.data = data
        self.field = field

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: FieldSpec = QQ, cols: int | None = None) -> "Matrix":
        data = [[field(x) for x in r] for r in rows]
        nc = len(data[0]) if data else (cols or 0)
        if any(len(r) != nc for r in data):
            raise ValueError("ragged rows")
        return cls(len(data), nc, data, field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldSpec = QQ) -> "Matrix":
        z = field.zero
        return cls(rows, cols, [[z] * cols for _ in range(rows)], field)

    @classmethod
    def identity(cls, n: int, field: FieldSpec = QQ) -> "Matrix":
        m = cls.zeros(n, n, field)
        for i in range(n):
            m.data[i][i] = field.one
        return m

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int, field: FieldSpec) -> "Matrix":
        data = [[c[i] for c in cols] for i in range(nrows)]
        return cls(nrows, len(cols), data, field)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(self.field.to_str(x) for x in r) for r in self.data)
        return f"Matrix({self.rows}x{self.cols} over {self.field}: [{body}])"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.shape == other.shape
            and self.field == other.field
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.shape, tuple(tuple(r) for r in self.data)))

    def _check(self, other: "Matrix"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        p = self.field.char
        zero = self.field.zero
        nc = other.cols
        odata = other.data
        out = []
        for row in self.data:
            acc = [zero] * nc
            for k, a in enumerate(row):
                if a:
                    orow = odata[k]
                    for j in range(nc):
                        b = orow[j]
                        if b:
                            acc[j] += a * b
            if p:
                acc = [x % p for x in acc]
            out.append(acc)
        return Matrix(self.rows, nc, out, self.field)

    def apply(self, vec: Sequence) -> list:
        p = self.field.char
        zero = self.field.zero
        out = []
        nz = [(k, x) for k, x in enumerate(vec) if x]
        for row in self.data:
            s = zero
            for k, x in nz:
                a = row[k]
                if a:
                    s += a * x
            out.append(s % p if p else s)
        return out

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        F = self.field
        return Matrix(self.rows, self.cols,
                      [[F.norm(a + b) for a, b in zip(r, s)] for r, s in zip(self.data, other.data)], F)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        F = self.field
        return Matrix(self.rows, self.cols,
                      [[F.norm(a - b) for a, b in zip(r, s)] for r, s in zip(self.data, other.data)], F)

    def __neg__(self) -> "Matrix":
        return self.scale(self.field.neg(self.field.one))

    def scale(self, c) -> "Matrix":
        F = self.field
        c = F(c)
        return Matrix(self.rows, self.cols, [[F.norm(c * a) for a in r] for r in self.data], F)

    @property
    def T(self) -> "Matrix":
        return Matrix(self.cols, self.rows, [list(c) for c in zip(*self.data)] if self.rows else
                      [[] for _ in range(self.cols)], self.field)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.data)

    def column(self, j: int) -> list:
        return [r[j] for r in self.data]

    def columns(self) -> list[list]:
        return [self.column(j) for j in range(self.cols)]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(len(rows), len(cols), [[self.data[i][j] for j in cols] for i in rows], self.field)

    def sparse_rows(self) -> list[dict]:
        return [{j: x for j, x in enumerate(r) if x} for r in self.data]

    def echelon(self) -> Echelon:
        return echelon_of(self.sparse_rows(), self.cols, self.field)

    def to_json(self) -> list[list[str]]:
        return [[self.field.to_str(x) for x in r] for r in self.data]


def hstack(blocks: Sequence[Matrix], rows: int, field: FieldSpec) -> Matrix:
    data = [[] for _ in range(rows)]
    for b in blocks:
        for i in range(rows):
            data[i].extend(b.data[i])
    return Matrix(rows, sum(b.cols for b in blocks), data, field)


def vstack(blocks: Sequence[Matrix], cols: int, field: FieldSpec) -> Matrix:
    data = []
    for b in blocks:
        data.extend(list(r) for r in b.data)
    return Matrix(len(data), cols, data, field)


def block_diag(blocks: Sequence[Matrix], field: FieldSpec) -> Matrix:
    R = sum(b.rows for b in blocks)
    C = sum(b.cols for b in blocks)
    m = Matrix.zeros(R, C, field)
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            m.data[r0 + i][c0:c0 + b.cols] = b.data[i]
        r0 += b.rows
        c0 += b.cols
    return m


# ---------------------------------------------------------------------------
# public operations


def rank(m: Matrix) -> int:
    if m.rows <= m.cols:
        return m.echelon().rank
    return m.T.echelon().rank


def kernel_basis(m: Matrix) -> list[list]:
    """Column vectors spanning {x : m x = 0}; one per free column of the RREF."""
    return m.echelon().kernel() if m.rows else [
        [m.field.one if i == j else m.field.zero for i in range(m.cols)] for j in range(m.cols)
    ]


def solve(m: Matrix, b: Sequence) -> list | None:
    """Exact solution of ``m x = b`` (free variables set to 0), or None."""
    if len(b) != m.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {m.rows}")
    F = m.field
    aug = [{**r, m.cols: F(bi)} if F(bi) else r for r, bi in zip(m.sparse_rows(), b)]
    e = echelon_of(aug, m.cols + 1, F)
    if m.cols in e.rows:
        return None
    x = [F.zero] * m.cols
    for c in e.rows:
        row = e.normalized_row(c)
        x[c] = row.get(m.cols, F.zero)
    return x


def inverse(m: Matrix) -> Matrix | None:
    if m.rows != m.cols:
        return None
    F = m.field
    n = m.rows
    rows = m.sparse_rows()
    aug = [{**r, n + i: F.one} for i, r in enumerate(rows)]
    e = echelon_of(aug, 2 * n, F)
    if any(c not in e.rows for c in range(n)):
        return None
    data = []
    for c in range(n):
        row = e.normalized_row(c)
        data.append([row.get(n + j, F.zero) for j in range(n)])
    return Matrix(n, n, data, F)


def is_invertible(m: Matrix) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


def kronecker(m1: Matrix, m2: Matrix) -> Matrix:
    """Block (i, j) of the result is ``m1[i, j] * m2``."""
    m1._check(m2)
    F = m1.field
    R, C = m1.rows * m2.rows, m1.cols * m2.cols
    data = []
    for i in range(m1.rows):
        r1 = m1.data[i]
        for k in range(m2.rows):
            r2 = m2.data[k]
            data.append([F.norm(a * b) for a in r1 for b in r2])
    return Matrix(R, C, data, F)


def random_matrix(rows: int, cols: int, field: FieldSpec, bound: int, seed: int) -> Matrix:
    if bound < 1:
        raise ValueError("bound must be >= 1")
    rng = random.Random(seed)
    if field.char == 0:
        data = [[mpq(rng.randint(-bound, bound)) for _ in range(cols)] for _ in range(rows)]
    else:
        data = [[rng.randrange(field.char) for _ in range(cols)] for _ in range(rows)]
    return Matrix(rows, cols, data, field)


def span_basis(vectors: Iterable[Sequence], dim: int, field: FieldSpec) -> list[list]:
    """A basis (subset of the inputs, in order) of the span of ``vectors``."""
    e = Echelon(field, dim)
    out = []
    for v in vectors:
        if e.add({i: x for i, x in enumerate(v) if x}) is not None:
            out.append(list(v))
    return out
