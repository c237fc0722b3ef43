"""Integer matrices over Z[w], w a primitive cube root of unity.

The 3.A7 generator matrices and every element they generate have entries
in Z[w] with w = zeta_21^7, so the hot paths (group closure, conjugation
orbits, exterior-cube recursion, class sums) run on pairs of int64 numpy
arrays (A, B) standing for A + B*w, with w^2 = -1 - w.  Everything stays
exact integer arithmetic; magnitudes are guarded so int64 cannot
silently overflow.

Boundary conversions to/from ExactMatrix over Q(zeta_21) live here too.
"""

from __future__ import annotations

import numpy as np

from .arith import CyclotomicNumber
from .errors import ExplosionGuard
from .linalg import CYC, TRIPLES, ExactMatrix

# products of two guarded matrices cannot overflow int64:
# 20 terms * 3 * GUARD^2 < 2^63 requires GUARD < 2^28-ish; keep margin
ENTRY_GUARD = 1 << 26


class ZW:
    """n x n matrix A + B*w with integer numpy components."""

    __slots__ = ("a", "b")

    def __init__(self, a: np.ndarray, b: np.ndarray):
        self.a = a
        self.b = b

    @classmethod
    def identity(cls, n: int) -> "ZW":
        return cls(np.eye(n, dtype=np.int64), np.zeros((n, n), np.int64))

    @classmethod
    def from_entries(cls, entries) -> "ZW":
        """entries: nested (a, b) integer pairs."""
        n = len(entries)
        a = np.array([[e[0] for e in row] for row in entries], np.int64)
        b = np.array([[e[1] for e in row] for row in entries], np.int64)
        return cls(a, b)

    def __matmul__(self, other: "ZW") -> "ZW":
        # (A1 + B1 w)(A2 + B2 w), w^2 = -1 - w; three integer matmuls
        p1 = self.a @ other.a
        p2 = self.b @ other.b
        p3 = (self.a + self.b) @ (other.a + other.b)
        out = ZW(p1 - p2, p3 - p1 - 2 * p2)
        m = max(np.abs(out.a).max(initial=0), np.abs(out.b).max(initial=0))
        if m >= ENTRY_GUARD:
            raise ExplosionGuard(
                f"matrix entries reached {m}; generators do not close"
            )
        return out

    def mul_w(self) -> "ZW":
        """Scalar multiplication by w: (A, B) -> (-B, A - B)."""
        return ZW(-self.b, self.a - self.b)

    def key(self) -> bytes:
        return self.a.tobytes() + self.b.tobytes()

    def __eq__(self, other):
        return (
            isinstance(other, ZW)
            and np.array_equal(self.a, other.a)
            and np.array_equal(self.b, other.b)
        )

    def __hash__(self):
        return hash(self.key())

    @property
    def n(self) -> int:
        return self.a.shape[0]

    def is_scalar(self) -> bool:
        offdiag = ~np.eye(self.n, dtype=bool)
        if self.a[offdiag].any() or self.b[offdiag].any():
            return False
        da, db = np.diag(self.a), np.diag(self.b)
        return (da == da[0]).all() and (db == db[0]).all()

    def is_identity(self) -> bool:
        return (
            np.array_equal(self.a, np.eye(self.n, dtype=np.int64))
            and not self.b.any()
        )

    def trace(self) -> tuple[int, int]:
        return int(np.trace(self.a)), int(np.trace(self.b))

    def inverse(self) -> "ZW":
        """Inverse by repeated squaring-free powering; the element must
        have finite order (it sits in a finite matrix group)."""
        acc = self
        prev = ZW.identity(self.n)
        for _ in range(10000):
            if acc.is_identity():
                return prev
            prev = acc
            acc = acc @ self
        raise ExplosionGuard("element order exceeds 10000")

    def order(self) -> int:
        acc = self
        for k in range(1, 10001):
            if acc.is_identity():
                return k
            acc = acc @ self
        raise ExplosionGuard("element order exceeds 10000")

    # -- conversions -----------------------------------------------------
    def first_nonzero_pair(self) -> tuple[int, int]:
        """(a, b) of the first nonzero entry in row-major scan.

        The cyclotomic coefficient tuple of a + b*w is (a, 0,...,0, b,
        0,...), so comparing (a, b) pairs lexicographically is exactly
        comparing reduced coefficient tuples.
        """
        nz = (self.a != 0) | (self.b != 0)
        idx = np.argwhere(nz)
        if len(idx) == 0:
            raise ValueError("zero matrix")
        i, j = idx[0]
        return int(self.a[i, j]), int(self.b[i, j])

    def to_exact(self) -> ExactMatrix:
        rows = []
        for i in range(self.n):
            row = []
            for j in range(self.a.shape[1]):
                coeffs = [0] * 12
                coeffs[0] = int(self.a[i, j])
                coeffs[7] = int(self.b[i, j])
                row.append(CyclotomicNumber(coeffs))
            rows.append(row)
        return ExactMatrix(CYC, rows)

    @classmethod
    def from_exact(cls, M: ExactMatrix) -> "ZW":
        """Requires every entry to be integral of the form a + b*zeta^7."""
        a = np.zeros((M.rows, M.cols), np.int64)
        b = np.zeros((M.rows, M.cols), np.int64)
        for i in range(M.rows):
            for j in range(M.cols):
                e = M.data[i][j]
                if e.den != 1 or any(
                    e.nums[k] for k in range(12) if k not in (0, 7)
                ):
                    raise ValueError("entry not in Z[w]")
                a[i, j] = e.nums[0]
                b[i, j] = e.nums[7]
        return cls(a, b)


def zw_wedge_cube(g: ZW) -> ZW:
    """Exterior cube of a 6x6 Z[w] matrix via exact Python-int minors."""
    aa = [[(int(g.a[i, j]), int(g.b[i, j])) for j in range(6)]
          for i in range(6)]

    def emul(x, y):
        return (x[0] * y[0] - x[1] * y[1],
                x[0] * y[1] + x[1] * y[0] - x[1] * y[1])

    def esub(x, y):
        return (x[0] - y[0], x[1] - y[1])

    def det3(rows, cols):
        m = [[aa[i - 1][j - 1] for j in cols] for i in rows]
        t0 = emul(m[0][0], esub(emul(m[1][1], m[2][2]),
                                emul(m[1][2], m[2][1])))
        t1 = emul(m[0][1], esub(emul(m[1][0], m[2][2]),
                                emul(m[1][2], m[2][0])))
        t2 = emul(m[0][2], esub(emul(m[1][0], m[2][1]),
                                emul(m[1][1], m[2][0])))
        return (t0[0] - t1[0] + t2[0], t0[1] - t1[1] + t2[1])

    out_a = np.zeros((20, 20), np.int64)
    out_b = np.zeros((20, 20), np.int64)
    for si, S in enumerate(TRIPLES):
        for ti, T in enumerate(TRIPLES):
            va, vb = det3(S, T)
            out_a[si, ti] = va
            out_b[si, ti] = vb
    return ZW(out_a, out_b)


def canonical_quotient_key(m: ZW) -> tuple[bytes, ZW]:
    """Canonical representative of {m, w m, w^2 m}.

    Among the three scalar twists, pick the one whose first nonzero
    entry (in row-major scan, as a reduced coefficient tuple) is
    lexicographically smallest; ties cannot occur because the twists of a
    nonzero entry are pairwise distinct.
    """
    best = m
    best_pair = m.first_nonzero_pair()
    cur = m
    for _ in range(2):
        cur = cur.mul_w()
        pair = cur.first_nonzero_pair()
        if pair < best_pair:
            best, best_pair = cur, pair
    return best.key(), best
