"""Dense exact linear algebra over Q, Q(zeta_21) and F_p.

Provides the wedge-cube functor (6x6 -> 20x20 on the lex-ordered triple
basis of the third exterior power) and the symplectic Gram matrix of the
volume pairing.  Elimination is fraction-free (Bareiss) over the
cyclotomic field to control coefficient growth, plain over F_p; pivots
are always the first nonzero entry in scan order so results are
deterministic and cacheable.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd

from .arith import CyclotomicNumber, PrimeFieldElement, ReductionMap


class Field:
    """Minimal field descriptor: identity elements, coercion, serialization."""

    name = "abstract"

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def coerce(self, x):
        raise NotImplementedError

    def ser(self, x):
        raise NotImplementedError

    def deser(self, x):
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self.__dict__ == other.__dict__

    def __hash__(self):
        return hash((type(self).__name__, tuple(sorted(self.__dict__.items()))))

    def __repr__(self):
        return self.name


class RationalField(Field):
    name = "rational"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} to Q")

    def ser(self, x):
        return str(x)

    def deser(self, s):
        return Fraction(s)


class CyclotomicField(Field):
    name = "cyclotomic21"

    def zero(self):
        return CyclotomicNumber.zero()

    def one(self):
        return CyclotomicNumber.one()

    def coerce(self, x):
        if isinstance(x, CyclotomicNumber):
            return x
        if isinstance(x, int):
            return CyclotomicNumber.from_int(x)
        if isinstance(x, Fraction):
            return CyclotomicNumber.from_fraction(x)
        raise TypeError(f"cannot coerce {x!r} to Q(zeta_21)")

    def ser(self, x):
        return x.to_strings()

    def deser(self, s):
        return CyclotomicNumber.from_strings(s)


class PrimeField(Field):
    def __init__(self, p: int):
        self.p = p
        self.name = "fp"

    def zero(self):
        return PrimeFieldElement(0, self.p)

    def one(self):
        return PrimeFieldElement(1, self.p)

    def coerce(self, x):
        if isinstance(x, PrimeFieldElement):
            if x.p != self.p:
                raise TypeError("element from a different prime field")
            return x
        if isinstance(x, int):
            return PrimeFieldElement(x, self.p)
        raise TypeError(f"cannot coerce {x!r} to F_{self.p}")

    def ser(self, x):
        return x.value

    def deser(self, v):
        return PrimeFieldElement(v, self.p)

    def __repr__(self):
        return f"fp({self.p})"


QQ = RationalField()
CYC = CyclotomicField()


def _is_zero(x) -> bool:
    if isinstance(x, Fraction):
        return x == 0
    return x.is_zero()


class ExactMatrix:
    """Immutable dense matrix over one exact field, row-major."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, data):
        self.field = field
        self.data = tuple(tuple(field.coerce(x) for x in row) for row in data)
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.rows else 0
        if any(len(r) != self.cols for r in self.data):
            raise ValueError("ragged rows")

    @classmethod
    def identity(cls, field: Field, n: int) -> "ExactMatrix":
        one, zero = field.one(), field.zero()
        return cls(field, [[one if i == j else zero for j in range(n)]
                           for i in range(n)])

    @classmethod
    def zero(cls, field: Field, rows: int, cols: int) -> "ExactMatrix":
        z = field.zero()
        return cls(field, [[z] * cols for _ in range(rows)])

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i):
        return self.data[i]

    def column(self, j):
        return tuple(self.data[i][j] for i in range(self.rows))

    def __eq__(self, other):
        return (
            isinstance(other, ExactMatrix)
            and self.field == other.field
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.field, self.data))

    def __repr__(self):
        return f"ExactMatrix({self.field}, {self.rows}x{self.cols})"

    # -- algebra ---------------------------------------------------------
    def __mul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        zero = self.field.zero()
        out = []
        for i in range(self.rows):
            ri = self.data[i]
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    a = ri[k]
                    if not _is_zero(a):
                        acc = acc + a * other.data[k][j]
                row.append(acc)
            out.append(row)
        return ExactMatrix(self.field, out)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix(self.field, [
            [a + b for a, b in zip(ra, rb)]
            for ra, rb in zip(self.data, other.data)
        ])

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix(self.field, [
            [a - b for a, b in zip(ra, rb)]
            for ra, rb in zip(self.data, other.data)
        ])

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(self.field, [[-a for a in r] for r in self.data])

    def scale(self, c) -> "ExactMatrix":
        c = self.field.coerce(c)
        return ExactMatrix(self.field, [[c * a for a in r] for r in self.data])

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.field, list(zip(*self.data)))

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch")
        return ExactMatrix(self.field, [
            list(ra) + list(rb) for ra, rb in zip(self.data, other.data)
        ])

    def submatrix(self, row_idx, col_idx) -> "ExactMatrix":
        return ExactMatrix(self.field, [
            [self.data[i][j] for j in col_idx] for i in row_idx
        ])

    def map_entries(self, fn, field: Field | None = None) -> "ExactMatrix":
        return ExactMatrix(field or self.field,
                           [[fn(a) for a in r] for r in self.data])

    def to_field(self, field: Field) -> "ExactMatrix":
        return ExactMatrix(field, self.data)

    def is_zero_matrix(self) -> bool:
        return all(_is_zero(a) for r in self.data for a in r)

    def trace(self):
        acc = self.field.zero()
        for i in range(min(self.rows, self.cols)):
            acc = acc + self.data[i][i]
        return acc

    # -- serialization -----------------------------------------------------
    def to_json(self) -> dict:
        doc = {
            "field": self.field.name,
            "rows": self.rows,
            "cols": self.cols,
            "entries": [self.field.ser(a) for r in self.data for a in r],
        }
        if isinstance(self.field, PrimeField):
            doc["p"] = self.field.p
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "ExactMatrix":
        name = doc["field"]
        if name == "cyclotomic21":
            field: Field = CYC
        elif name == "fp":
            field = PrimeField(doc["p"])
        elif name == "rational":
            field = QQ
        else:
            raise ValueError(f"unknown field {name!r}")
        r, c = doc["rows"], doc["cols"]
        flat = [field.deser(e) for e in doc["entries"]]
        if len(flat) != r * c:
            raise ValueError("entry count mismatch")
        return cls(field, [flat[i * c:(i + 1) * c] for i in range(r)])


def _clear_denominators(field, rows):
    """Scale each row to denominator-free entries (kernel unchanged)."""
    if isinstance(field, PrimeField):
        return [list(r) for r in rows]
    out = []
    for r in rows:
        if isinstance(field, CyclotomicField):
            den = 1
            for a in r:
                den = den * a.den // gcd(den, a.den)
            out.append([a * den for a in r])
        else:  # rationals
            den = 1
            for a in r:
                den = den * a.denominator // gcd(den, a.denominator)
            out.append([a * den for a in r])
    return out


def _echelon(field, rows, cols, data, fraction_free):
    """In-place elimination to row echelon form.

    Returns (pivot column list, row permutation sign).  Fraction-free mode
    runs Bareiss (divide by the previous pivot, exact); otherwise plain
    elimination with field inverses.  Pivot = first nonzero in column scan
    order, no magnitude heuristics.
    """
    piv_cols = []
    sign = 1
    prev_piv = None
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if not _is_zero(data[i][c]):
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            data[r], data[pr] = data[pr], data[r]
            sign = -sign
        piv = data[r][c]
        if fraction_free:
            if prev_piv is None:
                inv_prev = None
            elif isinstance(prev_piv, Fraction):
                inv_prev = 1 / prev_piv
            else:
                inv_prev = prev_piv.inverse()
            for i in range(r + 1, rows):
                # a'_ij = (piv * a_ij - a_ic * a_rj) / prev_piv, exact
                aic = data[i][c]
                for j in range(c, cols):
                    v = piv * data[i][j] - aic * data[r][j]
                    if inv_prev is not None:
                        v = v * inv_prev
                    data[i][j] = v
        else:
            inv_piv = piv.inverse()
            for i in range(r + 1, rows):
                factor = data[i][c] * inv_piv
                if not _is_zero(factor):
                    for j in range(c, cols):
                        data[i][j] = data[i][j] - factor * data[r][j]
        piv_cols.append(c)
        prev_piv = piv
        r += 1
        if r == rows:
            break
    return piv_cols, sign


def rref(M: ExactMatrix) -> tuple[list[int], list[list]]:
    """Reduced row echelon form; returns (pivot columns, rref rows)."""
    fraction_free = not isinstance(M.field, PrimeField)
    data = _clear_denominators(M.field, M.data)
    piv_cols, _ = _echelon(M.field, M.rows, M.cols, data, fraction_free)
    # normalize pivots to 1 and eliminate above (field division; entries
    # at this point are size-controlled by the Bareiss pass)
    for k in reversed(range(len(piv_cols))):
        c = piv_cols[k]
        inv = data[k][c].inverse() if not isinstance(data[k][c], Fraction) \
            else 1 / data[k][c]
        data[k] = [a * inv for a in data[k]]
        for i in range(k):
            f = data[i][c]
            if not _is_zero(f):
                data[i] = [a - f * b for a, b in zip(data[i], data[k])]
    return piv_cols, data


def kernel_and_rank(M: ExactMatrix) -> tuple[int, list[tuple]]:
    """Exact rank and kernel basis; M.v = 0 re-verified for every vector."""
    piv_cols, data = rref(M)
    rank = len(piv_cols)
    zero, one = M.field.zero(), M.field.one()
    piv_set = set(piv_cols)
    free = [j for j in range(M.cols) if j not in piv_set]
    kernel = []
    for j in free:
        v = [zero] * M.cols
        v[j] = one
        for k, c in enumerate(piv_cols):
            v[c] = -data[k][j]
        kernel.append(tuple(v))
    for v in kernel:  # re-multiplication check on every call
        for i in range(M.rows):
            acc = zero
            for jj in range(M.cols):
                if not _is_zero(v[jj]):
                    acc = acc + M.data[i][jj] * v[jj]
            if not _is_zero(acc):
                raise AssertionError("kernel verification failed")
    assert rank + len(kernel) == M.cols
    return rank, kernel


def rank(M: ExactMatrix) -> int:
    return kernel_and_rank(M)[0]


def determinant(M: ExactMatrix):
    """Exact determinant (Bareiss over exact rings, plain over F_p)."""
    if M.rows != M.cols:
        raise ValueError("determinant of non-square matrix")
    if M.rows == 0:
        return M.field.one()
    fraction_free = not isinstance(M.field, PrimeField)
    data = [list(r) for r in M.data]
    # denominators are not cleared here: Bareiss with field division stays
    # exact; the scan-order pivot keeps it deterministic
    piv_cols, sign = _echelon(M.field, M.rows, M.cols, data, fraction_free)
    if len(piv_cols) < M.rows:
        return M.field.zero()
    if fraction_free:
        det = data[M.rows - 1][M.cols - 1]  # Bareiss: last entry is det
    else:
        det = M.field.one()
        for k in range(M.rows):
            det = det * data[k][piv_cols[k]]
    return det * sign if sign < 0 else det


def solve_right(A: ExactMatrix, B: ExactMatrix):
    """Solve A X = B exactly; returns X or None if inconsistent.

    A must have full column rank (the use case: expressing the action of a
    group element on an invariant column space).
    """
    aug = A.hstack(B)
    piv_cols, data = rref(aug)
    n = A.cols
    if any(c >= n for c in piv_cols):
        return None  # inconsistent system
    if len(piv_cols) != n:
        raise ValueError("coefficient matrix is rank deficient")
    X = [[data[k][n + j] for j in range(B.cols)] for k in range(n)]
    return ExactMatrix(A.field, X)


# ---------------------------------------------------------------------------
# exterior cube
# ---------------------------------------------------------------------------

TRIPLES: tuple[tuple[int, int, int], ...] = tuple(
    combinations(range(1, 7), 3)
)
TRIPLE_POS = {t: i for i, t in enumerate(TRIPLES)}
assert len(TRIPLES) == 20


def triple_index(t) -> int:
    """Position of an ascending triple of {1..6} in the fixed basis order."""
    return TRIPLE_POS[tuple(t)]


def perm_sign(seq) -> int:
    """Sign of the permutation given as a sequence of distinct values."""
    s = list(seq)
    sign = 1
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] > s[j]:
                sign = -sign
    return sign


def _det3(M: ExactMatrix, rows, cols):
    a = [[M.data[i - 1][j - 1] for j in cols] for i in rows]
    return (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )


def wedge_cube(g: ExactMatrix) -> ExactMatrix:
    """Third exterior power of a 6x6 matrix on the lex triple basis.

    Entry (S, T) is the 3x3 minor of g with rows S and columns T, so that
    wedge_cube(g h) = wedge_cube(g) wedge_cube(h).
    """
    if g.rows != 6 or g.cols != 6:
        raise ValueError("wedge_cube expects a 6x6 matrix")
    out = [[_det3(g, S, T) for T in TRIPLES] for S in TRIPLES]
    return ExactMatrix(g.field, out)


def symplectic_gram(field: Field = QQ) -> ExactMatrix:
    """Gram matrix of (a, b) = vol(a ^ b) on the triple basis.

    Nonzero only on complementary triples, where the value is the sign of
    the permutation (S then T) of (1..6); antisymmetric and unimodular.
    """
    zero, one = field.zero(), field.one()
    out = [[zero] * 20 for _ in range(20)]
    for i, S in enumerate(TRIPLES):
        for j, T in enumerate(TRIPLES):
            if not set(S) & set(T):
                s = perm_sign(S + T)
                out[i][j] = one if s > 0 else -one
    return ExactMatrix(field, out)


def reduce_matrix(M: ExactMatrix, m: ReductionMap) -> ExactMatrix:
    """Entrywise residue reduction of a cyclotomic matrix to F_p;
    BadDenominator propagates when the prime divides a denominator."""
    fp = PrimeField(m.p)
    return ExactMatrix(fp, [[m.reduce(a) for a in row] for row in M.data])
