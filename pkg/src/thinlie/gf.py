"""Exact arithmetic in GF(p) and GF(p^2), with dense linear algebra over both.

Scalars carry no wrapper objects: a prime-field element is an int in
[0, p) and a quadratic-extension element is a pair ``(c0, c1)`` meaning
``c0 + c1*mu`` where ``mu**2 = u*mu + v``.  The field objects own the
arithmetic, so the matrix routines below run unchanged over either field.

Row reduction is fully deterministic: pivots are the first nonzero entry
in column order, leading entries are normalized to 1, and elimination is
carried above and below the pivot.  Every basis this package reports is
therefore a canonical reduced row-echelon basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple

from .errors import DivisionByZero, NotPrime, ReduciblePolynomial

FElem = int
EElem = Tuple[int, int]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class BaseField:
    """The prime field GF(p).  Elements are ints reduced mod p."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise NotPrime(f"modulus {p} is not prime")
        self.p = p
        self.zero: FElem = 0
        self.one: FElem = 1

    def coerce(self, n: int) -> FElem:
        return n % self.p

    def add(self, a: FElem, b: FElem) -> FElem:
        return (a + b) % self.p

    def sub(self, a: FElem, b: FElem) -> FElem:
        return (a - b) % self.p

    def neg(self, a: FElem) -> FElem:
        return (-a) % self.p

    def mul(self, a: FElem, b: FElem) -> FElem:
        return (a * b) % self.p

    def inv(self, a: FElem) -> FElem:
        if a % self.p == 0:
            raise DivisionByZero("0 has no inverse")
        return pow(a, self.p - 2, self.p)

    def pow(self, a: FElem, e: int) -> FElem:
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def is_zero(self, a: FElem) -> bool:
        return a % self.p == 0

    def elements(self) -> Iterator[FElem]:
        return iter(range(self.p))

    def __eq__(self, other) -> bool:
        return isinstance(other, BaseField) and other.p == self.p

    def __hash__(self):
        return hash(("BaseField", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class ExtField:
    """GF(p^2) presented as GF(p)[mu] / (mu^2 - u*mu - v).

    Elements are pairs (c0, c1) with both coordinates reduced mod p.
    The defining quadratic t^2 - u*t - v must be irreducible over GF(p);
    the constructor rejects anything with a root mod p.
    """

    def __init__(self, base: BaseField, u: int, v: int):
        p = base.p
        u %= p
        v %= p
        for t in range(p):
            if (t * t - u * t - v) % p == 0:
                raise ReduciblePolynomial(
                    f"t^2 - {u}*t - {v} has root {t} mod {p}"
                )
        self.base = base
        self.p = p
        self.u = u
        self.v = v
        self.zero: EElem = (0, 0)
        self.one: EElem = (1, 0)
        self.mu: EElem = (0, 1)

    @property
    def order(self) -> int:
        return self.p * self.p

    def embed(self, c: int) -> EElem:
        return (c % self.p, 0)

    def coerce(self, e) -> EElem:
        if isinstance(e, int):
            return self.embed(e)
        c0, c1 = e
        return (c0 % self.p, c1 % self.p)

    def in_base(self, a: EElem) -> bool:
        return a[1] % self.p == 0

    def add(self, a: EElem, b: EElem) -> EElem:
        p = self.p
        return ((a[0] + b[0]) % p, (a[1] + b[1]) % p)

    def sub(self, a: EElem, b: EElem) -> EElem:
        p = self.p
        return ((a[0] - b[0]) % p, (a[1] - b[1]) % p)

    def neg(self, a: EElem) -> EElem:
        p = self.p
        return ((-a[0]) % p, (-a[1]) % p)

    def mul(self, a: EElem, b: EElem) -> EElem:
        # (a0 + a1 mu)(b0 + b1 mu) with mu^2 = u mu + v
        p = self.p
        a0, a1 = a
        b0, b1 = b
        cross = a1 * b1
        return ((a0 * b0 + cross * self.v) % p, (a0 * b1 + a1 * b0 + cross * self.u) % p)

    def scale(self, c: int, a: EElem) -> EElem:
        p = self.p
        return (c * a[0] % p, c * a[1] % p)

    def conj(self, a: EElem) -> EElem:
        # The nontrivial GF(p)-automorphism: mu -> u - mu.
        p = self.p
        return ((a[0] + a[1] * self.u) % p, (-a[1]) % p)

    def norm(self, a: EElem) -> FElem:
        n = self.mul(a, self.conj(a))
        assert n[1] == 0
        return n[0]

    def inv(self, a: EElem) -> EElem:
        if a == (0, 0) or (a[0] % self.p == 0 and a[1] % self.p == 0):
            raise DivisionByZero("0 has no inverse")
        ninv = self.base.inv(self.norm(a))
        return self.scale(ninv, self.conj(a))

    def div(self, a: EElem, b: EElem) -> EElem:
        return self.mul(a, self.inv(b))

    def pow(self, a: EElem, e: int) -> EElem:
        if e < 0:
            a = self.inv(a)
            e = -e
        acc = self.one
        while e:
            if e & 1:
                acc = self.mul(acc, a)
            a = self.mul(a, a)
            e >>= 1
        return acc

    def is_zero(self, a: EElem) -> bool:
        return a[0] % self.p == 0 and a[1] % self.p == 0

    def elements(self) -> Iterator[EElem]:
        for c1 in range(self.p):
            for c0 in range(self.p):
                yield (c0, c1)

    def key(self, a: EElem) -> int:
        """Total order used for canonical enumeration (0 first)."""
        return a[1] * self.p + a[0]

    def to_json(self) -> dict:
        return {"p": self.p, "ext_min_poly": [self.v, self.u]}

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExtField)
            and other.p == self.p
            and other.u == self.u
            and other.v == self.v
        )

    def __hash__(self):
        return hash(("ExtField", self.p, self.u, self.v))

    def __repr__(self):
        return f"GF({self.p}^2; mu^2={self.u}*mu+{self.v})"


def make_ext_field(p: int, u: int, v: int) -> ExtField:
    """Build GF(p^2) with mu^2 = u*mu + v, rejecting bad parameters."""
    return ExtField(BaseField(p), u, v)


def ext_field_from_json(obj: dict) -> ExtField:
    v, u = obj["ext_min_poly"]
    return make_ext_field(int(obj["p"]), int(u), int(v))


# ---------------------------------------------------------------------------
# Dense matrices and row reduction, generic over BaseField / ExtField.
# ---------------------------------------------------------------------------


class Matrix:
    """A dense matrix over a BaseField or ExtField."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field, rows: Sequence[Sequence], ncols: int | None = None):
        self.field = field
        self.rows: List[list] = [list(r) for r in rows]
        self.nrows = len(self.rows)
        if self.rows:
            widths = {len(r) for r in self.rows}
            if len(widths) != 1:
                raise ValueError("ragged rows")
            self.ncols = widths.pop()
        else:
            if ncols is None:
                raise ValueError("empty matrix needs an explicit column count")
            self.ncols = ncols

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field, nrows: int, ncols: int) -> "Matrix":
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)], ncols=ncols)

    def copy(self) -> "Matrix":
        return Matrix(self.field, self.rows, ncols=self.ncols)

    def stack(self, other: "Matrix") -> "Matrix":
        assert other.ncols == self.ncols and other.field == self.field
        return Matrix(self.field, self.rows + other.rows, ncols=self.ncols)

    def mul(self, other: "Matrix") -> "Matrix":
        F = self.field
        assert self.ncols == other.nrows
        out = []
        for r in self.rows:
            row = []
            for j in range(other.ncols):
                acc = F.zero
                for k in range(self.ncols):
                    acc = F.add(acc, F.mul(r[k], other.rows[k][j]))
                row.append(acc)
            out.append(row)
        return Matrix(F, out, ncols=other.ncols)

    def apply(self, vec: Sequence) -> list:
        """Row-vector action: vec . self."""
        F = self.field
        assert len(vec) == self.nrows
        out = [F.zero] * self.ncols
        for c, row in zip(vec, self.rows):
            if F.is_zero(c):
                continue
            for j, x in enumerate(row):
                out[j] = F.add(out[j], F.mul(c, x))
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and other.field == self.field
            and other.ncols == self.ncols
            and [list(r) for r in other.rows] == [list(r) for r in self.rows]
        )

    def __hash__(self):
        return hash((self.field, self.ncols, tuple(tuple(r) for r in self.rows)))

    def __repr__(self):
        return f"Matrix({self.field}, {self.rows})"


@dataclass
class RrefResult:
    rank: int
    reduced: Matrix
    pivots: Tuple[int, ...]
    kernel: Matrix  # basis of the right kernel, one row per free column


def rref(m: Matrix) -> RrefResult:
    """Reduced row-echelon form with deterministic pivoting.

    The pivot of each step is the first nonzero entry in column order;
    leading entries are normalized to 1 and cleared above and below.
    The kernel basis has one vector per free column j, in column order:
    entry 1 at j and -reduced[r][j] at the pivot column of row r.
    """
    F = m.field
    rows = [list(r) for r in m.rows]
    nrows, ncols = m.nrows, m.ncols
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, nrows):
            if not F.is_zero(rows[i][c]):
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        for i in range(nrows):
            if i != r and not F.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    reduced = Matrix(F, rows, ncols=ncols)
    pivot_set = set(pivots)
    kernel_rows = []
    for j in range(ncols):
        if j in pivot_set:
            continue
        vec = [F.zero] * ncols
        vec[j] = F.one
        for ri, pc in enumerate(pivots):
            vec[pc] = F.neg(rows[ri][j])
        kernel_rows.append(vec)
    kernel = Matrix(F, kernel_rows, ncols=ncols)
    return RrefResult(rank=r, reduced=reduced, pivots=tuple(pivots), kernel=kernel)


class RowSpace:
    """A subspace of F^n kept in reduced echelon form under insertion.

    The stored basis equals the rref basis of the spanned space no matter
    in which order vectors are inserted, so reported bases are canonical.
    """

    def __init__(self, field, ncols: int):
        self.field = field
        self.ncols = ncols
        self._rows: List[list] = []  # sorted by pivot column, fully reduced
        self._pivots: List[int] = []

    @property
    def dim(self) -> int:
        return len(self._rows)

    def reduce(self, vec: Sequence) -> list:
        F = self.field
        vec = list(vec)
        for pc, row in zip(self._pivots, self._rows):
            c = vec[pc]
            if not F.is_zero(c):
                vec = [F.sub(x, F.mul(c, y)) for x, y in zip(vec, row)]
        return vec

    def contains(self, vec: Sequence) -> bool:
        F = self.field
        return all(F.is_zero(x) for x in self.reduce(vec))

    def insert(self, vec: Sequence) -> bool:
        """Insert a vector; returns True if the dimension grew."""
        F = self.field
        vec = self.reduce(vec)
        pivot = None
        for j, x in enumerate(vec):
            if not F.is_zero(x):
                pivot = j
                break
        if pivot is None:
            return False
        inv = F.inv(vec[pivot])
        vec = [F.mul(inv, x) for x in vec]
        for i, row in enumerate(self._rows):
            c = row[pivot]
            if not F.is_zero(c):
                self._rows[i] = [F.sub(x, F.mul(c, y)) for x, y in zip(row, vec)]
        at = 0
        while at < len(self._pivots) and self._pivots[at] < pivot:
            at += 1
        self._rows.insert(at, vec)
        self._pivots.insert(at, pivot)
        return True

    def basis(self) -> List[tuple]:
        return [tuple(r) for r in self._rows]

    def matrix(self) -> Matrix:
        return Matrix(self.field, self._rows, ncols=self.ncols)

    def equals(self, other: "RowSpace") -> bool:
        return self.dim == other.dim and all(self.contains(r) for r in other._rows)

    def contains_space(self, other: "RowSpace") -> bool:
        return all(self.contains(r) for r in other._rows)


def span(field, vectors: Sequence[Sequence], ncols: int) -> RowSpace:
    sp = RowSpace(field, ncols)
    for v in vectors:
        sp.insert(v)
    return sp
