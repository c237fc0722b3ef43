"""Multivariate polynomial arithmetic over F_p.

MultiPoly keeps a dict {exponent tuple: coefficient in [1, p)}; the ring
carries the prime, variable names and a monomial order.  Determinants of
matrices of linear forms run on dense per-degree coefficient vectors
(memoized Laplace over column subsets, or evaluation-interpolation on a
tensor grid); both paths are exact mod p and every production
determinant is spot-verified against scalar determinants at random
points.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .arith import is_prime
from .errors import NotDivisible

DET_SPOT_CHECKS = 100


@dataclass(frozen=True)
class MonomialOrder:
    """Total order on exponent tuples, compatible with multiplication."""

    kind: str  # grevlex | lex | elimination-block
    nvars: int
    block: int = 0  # leading block size for elimination orders

    def key(self, e: tuple[int, ...]):
        if self.kind == "grevlex":
            return (sum(e),) + tuple(-x for x in reversed(e))
        if self.kind == "lex":
            return tuple(e)
        if self.kind == "elimination-block":
            head, tail = e[: self.block], e[self.block:]
            return (
                (sum(head),) + tuple(-x for x in reversed(head)),
                (sum(tail),) + tuple(-x for x in reversed(tail)),
            )
        raise ValueError(f"unknown order kind {self.kind!r}")

    def greater(self, a, b) -> bool:
        return self.key(a) > self.key(b)


class PolyRing:
    """F_p[x_1..x_n] with a fixed monomial order."""

    def __init__(self, p: int = 127, nvars: int = 6, names=None,
                 order: str = "grevlex", block: int = 0):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.nvars = nvars
        self.names = tuple(names) if names else tuple(
            f"x{i + 1}" for i in range(nvars))
        self.order = MonomialOrder(order, nvars, block)
        self._dense_cache: dict = {}

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.p == other.p
            and self.nvars == other.nvars
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.p, self.nvars, self.order))

    def __repr__(self):
        return f"PolyRing(F{self.p}, {self.nvars} vars, {self.order.kind})"

    # -- constructors ------------------------------------------------------
    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def one(self) -> "MultiPoly":
        return self.constant(1)

    def constant(self, c: int) -> "MultiPoly":
        c %= self.p
        e = (0,) * self.nvars
        return MultiPoly(self, {e: c} if c else {})

    def variable(self, i: int) -> "MultiPoly":
        e = [0] * self.nvars
        e[i] = 1
        return MultiPoly(self, {tuple(e): 1})

    def monomial(self, exps, c: int = 1) -> "MultiPoly":
        c %= self.p
        return MultiPoly(self, {tuple(exps): c} if c else {})

    def linear_form(self, coeffs) -> "MultiPoly":
        terms = {}
        for i, c in enumerate(coeffs):
            c %= self.p
            if c:
                e = [0] * self.nvars
                e[i] = 1
                terms[tuple(e)] = c
        return MultiPoly(self, terms)

    def from_terms(self, terms: dict) -> "MultiPoly":
        out = {}
        for e, c in terms.items():
            c %= self.p
            if c:
                out[tuple(e)] = c
        return MultiPoly(self, out)

    # -- dense per-degree machinery (used by determinants/minors/compose) --
    def dense_basis(self, d: int):
        """Exponent tuples of total degree d (descending monomial order)
        plus their index lookup."""
        key = ("basis", d)
        if key not in self._dense_cache:
            out = []

            def rec(prefix, rem, slots):
                if slots == 1:
                    out.append(prefix + (rem,))
                    return
                for v in range(rem + 1):
                    rec(prefix + (v,), rem - v, slots - 1)

            rec((), d, self.nvars)
            out.sort(key=self.order.key, reverse=True)
            self._dense_cache[key] = (out, {e: i for i, e in enumerate(out)})
        return self._dense_cache[key]

    def shift_map(self, d: int, var: int) -> np.ndarray:
        """Index map: multiplication by x_var from degree d to d + 1."""
        key = ("shift", d, var)
        if key not in self._dense_cache:
            basis, _ = self.dense_basis(d)
            _, index1 = self.dense_basis(d + 1)
            arr = np.empty(len(basis), np.int64)
            for i, e in enumerate(basis):
                f = list(e)
                f[var] += 1
                arr[i] = index1[tuple(f)]
            self._dense_cache[key] = arr
        return self._dense_cache[key]

    def to_dense(self, f: "MultiPoly", d: int) -> np.ndarray:
        _, index = self.dense_basis(d)
        v = np.zeros(len(index), np.int64)
        for e, c in f.terms.items():
            if sum(e) != d:
                raise ValueError("polynomial not homogeneous of degree d")
            v[index[e]] = c
        return v

    def from_dense(self, v: np.ndarray, d: int) -> "MultiPoly":
        basis, _ = self.dense_basis(d)
        nz = np.nonzero(v)[0]
        return MultiPoly(self, {basis[i]: int(v[i]) % self.p for i in nz})


class MultiPoly:
    """Element of a PolyRing; no zero coefficients are stored."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- queries -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def is_constant(self) -> bool:
        return self.degree() <= 0

    def leading(self) -> tuple[tuple[int, ...], int]:
        """(monomial, coefficient) of the leading term in the ring order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=self.ring.order.key)
        return m, self.terms[m]

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == self.ring.constant(other).terms
        return (
            isinstance(other, MultiPoly)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items()))))

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        p = self.ring.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly(self.ring, out)

    def __neg__(self) -> "MultiPoly":
        p = self.ring.p
        return MultiPoly(self.ring, {e: p - c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, int):
            return self.scale(other)
        p = self.ring.p
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = (out.get(e, 0) + c1 * c2) % p
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return MultiPoly(self.ring, out)

    __rmul__ = __mul__

    def scale(self, c: int) -> "MultiPoly":
        c %= self.ring.p
        if c == 0:
            return self.ring.zero()
        p = self.ring.p
        return MultiPoly(self.ring,
                         {e: (k * c) % p for e, k in self.terms.items()})

    def monic(self) -> "MultiPoly":
        if self.is_zero():
            return self
        _, lc = self.leading()
        return self.scale(pow(lc, self.ring.p - 2, self.ring.p))

    def __pow__(self, n: int) -> "MultiPoly":
        acc = self.ring.one()
        for _ in range(n):
            acc = acc * self
        return acc

    def derivative(self, var: int) -> "MultiPoly":
        p = self.ring.p
        out = {}
        for e, c in self.terms.items():
            if e[var]:
                v = (c * e[var]) % p
                if v:
                    f = list(e)
                    f[var] -= 1
                    out[tuple(f)] = v
        return MultiPoly(self.ring, out)

    # -- evaluation / composition -------------------------------------------
    def evaluate(self, point) -> int:
        p = self.ring.p
        acc = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * pow(int(x) % p, k, p) % p
            acc = (acc + t) % p
        return acc

    def evaluate_batch(self, points: np.ndarray) -> np.ndarray:
        """Values at many points; points is (B, nvars) int64."""
        p = self.ring.p
        pts = points % p
        acc = np.zeros(len(pts), np.int64)
        for e, c in self.terms.items():
            t = np.full(len(pts), c, np.int64)
            for var, k in enumerate(e):
                for _ in range(k):
                    t = t * pts[:, var] % p
            acc = (acc + t) % p
        return acc

    def compose_linear(self, rows) -> "MultiPoly":
        """Substitute x_i -> sum_j rows[i][j] x_j (an exact linear change
        of coordinates).  Homogeneous inputs run on dense vectors."""
        ring = self.ring
        if self.is_zero():
            return self
        lin = [ring.linear_form(r) for r in rows]
        if self.is_homogeneous():
            d = self.degree()
            if d == 0:
                return self
            # images of all basis monomials, degree by degree
            images = {1: [ring.to_dense(lin[i], 1) for i in range(ring.nvars)]}
            basis1, _ = ring.dense_basis(1)
            var_of_deg1 = [e.index(1) for e in basis1]
            for dd in range(2, d + 1):
                basis, _ = ring.dense_basis(dd)
                prev_basis, prev_index = ring.dense_basis(dd - 1)
                cur = []
                for e in basis:
                    var = next(i for i, x in enumerate(e) if x)
                    f = list(e)
                    f[var] -= 1
                    prev = images[dd - 1][prev_index[tuple(f)]]
                    vec = np.zeros(len(ring.dense_basis(dd)[0]), np.int64)
                    lf = lin[var]
                    for ee, cc in lf.terms.items():
                        v2 = ee.index(1)
                        vec[ring.shift_map(dd - 1, v2)] += cc * prev
                    cur.append(vec % ring.p)
                images[dd] = cur
                if dd - 1 > 1:
                    del images[dd - 1]  # keep memory flat
            _, index_d = ring.dense_basis(d)
            out = np.zeros(len(ring.dense_basis(d)[0]), np.int64)
            img = images[d] if d > 1 else images[1]
            if d == 1:
                basis_d, _ = ring.dense_basis(1)
                for e, c in self.terms.items():
                    out = (out + c * img[var_of_deg1[index_d[e]]]) % ring.p
                return ring.from_dense(out, 1)
            for e, c in self.terms.items():
                out = (out + c * img[index_d[e]]) % ring.p
            return ring.from_dense(out, d)
        # inhomogeneous fallback: per-term products with cached powers
        powers: dict[tuple[int, int], MultiPoly] = {}

        def power(i, k):
            if k == 0:
                return ring.one()
            if (i, k) not in powers:
                powers[(i, k)] = power(i, k - 1) * lin[i]
            return powers[(i, k)]

        acc = ring.zero()
        for e, c in self.terms.items():
            t = ring.constant(c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            acc = acc + t
        return acc

    # -- serialization -------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(),
                      key=lambda t: self.ring.order.key(t[0]), reverse=True)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            body = "*".join(
                f"{self.ring.names[i]}^{k}" for i, k in enumerate(e) if k
            )
            parts.append(f"{c}*{body}" if body else str(c))
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "p": self.ring.p,
            "nvars": self.ring.nvars,
            "terms": [[list(e), c] for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, doc: dict, ring: PolyRing | None = None) -> "MultiPoly":
        ring = ring or PolyRing(doc["p"], doc["nvars"])
        if ring.p != doc["p"] or ring.nvars != doc["nvars"]:
            raise ValueError("ring mismatch")
        return ring.from_terms({tuple(e): c for e, c in doc["terms"]})

    def content_hash(self) -> str:
        h = hashlib.sha256()
        h.update(f"{self.ring.p}:{self.ring.nvars}:".encode())
        for e, c in self.sorted_terms():
            h.update(bytes(e) + c.to_bytes(8, "little"))
        return h.hexdigest()

    def __repr__(self):
        s = self.to_text()
        return s if len(s) < 120 else s[:117] + "..."


# ---------------------------------------------------------------------------
# determinants of polynomial matrices
# ---------------------------------------------------------------------------


def _is_linear_form(f: MultiPoly) -> bool:
    return all(sum(e) == 1 for e in f.terms)


def _linear_coeff_tensor(M, ring) -> np.ndarray:
    n = len(M)
    C = np.zeros((ring.nvars, n, n), np.int64)
    for i in range(n):
        for j in range(n):
            for e, c in M[i][j].terms.items():
                C[e.index(1), i, j] = c
    return C


def _inverse_mod_p(A: np.ndarray, p: int) -> np.ndarray:
    n = A.shape[0]
    M = np.concatenate([A % p, np.eye(n, dtype=np.int64)], axis=1)
    for k in range(n):
        pr = next(i for i in range(k, n) if M[i, k] % p)
        if pr != k:
            M[[k, pr]] = M[[pr, k]]
        M[k] = M[k] * pow(int(M[k, k]), p - 2, p) % p
        for i in range(n):
            if i != k and M[i, k]:
                M[i] = (M[i] - M[i, k] * M[k]) % p
    return M[:, n:]


def batched_det_mod_p(mats: np.ndarray, p: int) -> np.ndarray:
    """Determinants of a (B, n, n) stack over F_p, partial pivoting."""
    A = mats % p
    B, n, _ = A.shape
    inv_table = np.array([0] + [pow(x, p - 2, p) for x in range(1, p)],
                         np.int64)
    det = np.ones(B, np.int64)
    for k in range(n):
        col = A[:, k:, k]
        nz = col != 0
        has = nz.any(axis=1)
        det[~has] = 0
        pivrow = np.argmax(nz, axis=1)
        swap = (pivrow > 0) & has
        idx = np.nonzero(swap)[0]
        if idx.size:
            r2 = k + pivrow[idx]
            tmp = A[idx, k, :].copy()
            A[idx, k, :] = A[idx, r2, :]
            A[idx, r2, :] = tmp
            det[idx] = (p - det[idx]) % p
        piv = A[:, k, k]
        det = det * piv % p
        if k + 1 < n:
            factors = A[:, k + 1:, k] * inv_table[piv][:, None] % p
            A[:, k + 1:, k:] = (
                A[:, k + 1:, k:] - factors[:, :, None] * A[:, None, k, k:]
            ) % p
    return det


def _det_laplace_dense(M, ring: PolyRing, want_minors: int | None = None):
    """Memoized Laplace over column subsets for linear-form entries.

    Processes rows top-down on dense homogeneous vectors.  With
    want_minors = k and more columns than rows, returns the dict of all
    k-column-subset determinants instead of a single value.
    """
    nrows = len(M)
    ncols = len(M[0])
    p = ring.p
    C = np.zeros((ncols, nrows, ring.nvars), np.int64)
    for i in range(nrows):
        for j in range(ncols):
            for e, c in M[i][j].terms.items():
                C[j, i, e.index(1)] = c
    dp = {0: np.ones(1, np.int64)}  # degree-0 dense vector
    for r in range(nrows):
        ndp: dict[int, np.ndarray] = {}
        size_next = len(ring.dense_basis(r + 1)[0])
        maps = [ring.shift_map(r, v) for v in range(ring.nvars)]
        for mask, vec in dp.items():
            below = 0
            for c in range(ncols):
                bit = 1 << c
                if mask & bit:
                    below += 1
                    continue
                coeffs = C[c, r]
                if not coeffs.any():
                    continue
                # new inversions = used columns greater than c
                sign = 1 if (r - below) % 2 == 0 else p - 1
                target = ndp.get(mask | bit)
                if target is None:
                    target = np.zeros(size_next, np.int64)
                    ndp[mask | bit] = target
                for v in range(ring.nvars):
                    cv = coeffs[v]
                    if cv:
                        target[maps[v]] += (sign * cv % p) * vec
        dp = {m: v % p for m, v in ndp.items()}
    if want_minors is None:
        full = (1 << ncols) - 1
        vec = dp.get(full)
        if vec is None:
            return ring.zero()
        return ring.from_dense(vec, nrows)
    out = {}
    for mask, vec in dp.items():
        out[mask] = ring.from_dense(vec, nrows)
    return out


def _det_interp_linear(M, ring: PolyRing) -> MultiPoly:
    """Evaluation-interpolation determinant for linear-form entries.

    The determinant is homogeneous of degree n (or zero); dehomogenize at
    the last variable, evaluate scalar determinants on the (n+1)^(v-1)
    tensor grid, apply the inverse Vandermonde along each axis, and
    rehomogenize."""
    n = len(M)
    p = ring.p
    v = ring.nvars
    if n + 1 > p:
        raise ValueError("prime too small for interpolation nodes")
    C = _linear_coeff_tensor(M, ring)  # (v, n, n)
    nodes = np.arange(n + 1, dtype=np.int64)
    grids = np.meshgrid(*([nodes] * (v - 1)), indexing="ij")
    pts = np.stack([g.reshape(-1) for g in grids], axis=1)  # (B, v-1)
    B = pts.shape[0]
    values = np.empty(B, np.int64)
    chunk = 16384
    for lo in range(0, B, chunk):
        hi = min(lo + chunk, B)
        block = pts[lo:hi]
        mats = np.tensordot(block, C[: v - 1], axes=(1, 0)) + C[v - 1]
        values[lo:hi] = batched_det_mod_p(mats % p, p)
    V = np.array([[pow(int(x), j, p) for j in range(n + 1)] for x in nodes],
                 np.int64)
    Vinv = _inverse_mod_p(V, p)
    T = values.reshape((n + 1,) * (v - 1))
    for axis in range(v - 1):
        T = np.moveaxis(
            np.tensordot(Vinv, T, axes=(1, axis)) % p, 0, axis
        )
    terms = {}
    for idx in np.argwhere(T):
        e = tuple(int(x) for x in idx)
        s = sum(e)
        assert s <= n, "interpolation produced degree overflow"
        terms[e + (n - s,)] = int(T[tuple(idx)])
    return ring.from_terms(terms)


def _spot_verify_det(M, det: MultiPoly, ring: PolyRing) -> None:
    n = len(M)
    seed_src = det.content_hash() if not det.is_zero() else "zero"
    seed = int.from_bytes(
        hashlib.sha256(f"detcheck:{n}:{seed_src}".encode()).digest()[:8],
        "little",
    )
    rng = np.random.default_rng(seed)
    pts = rng.integers(0, ring.p, size=(DET_SPOT_CHECKS, ring.nvars))
    mats = np.zeros((DET_SPOT_CHECKS, n, n), np.int64)
    for i in range(n):
        for j in range(n):
            mats[:, i, j] = M[i][j].evaluate_batch(pts)
    want = batched_det_mod_p(mats, ring.p)
    got = det.evaluate_batch(pts)
    if not np.array_equal(want, got):
        raise AssertionError("determinant spot-verification failed")


def det_poly_matrix(M, method: str = "auto",
                    spot_verify: bool = True) -> MultiPoly:
    """Exact determinant of a square matrix of MultiPoly (n <= 12).

    method: "laplace" (memoized column-subset expansion, any entries),
    "interp" (evaluation-interpolation, linear-form entries), or "auto"
    (interp for all-linear matrices, the memory-friendly default there).
    """
    n = len(M)
    if n > 12:
        raise ValueError("matrix too large (n <= 12)")
    if any(len(row) != n for row in M):
        raise ValueError("matrix not square")
    ring = M[0][0].ring
    all_linear = all(_is_linear_form(f) or f.is_zero()
                     for row in M for f in row)
    if method == "auto":
        method = "interp" if (all_linear and n + 1 <= ring.p) else "laplace"
    if method == "interp":
        if not all_linear:
            raise ValueError("interp method needs linear-form entries")
        det = _det_interp_linear(M, ring)
    elif method == "laplace":
        if all_linear:
            det = _det_laplace_dense(M, ring)
        else:
            det = _det_laplace_generic(M, ring)
    else:
        raise ValueError(f"unknown method {method!r}")
    if spot_verify:
        _spot_verify_det(M, det, ring)
    return det


def _det_laplace_generic(M, ring: PolyRing) -> MultiPoly:
    """Column-subset dynamic programming with dict-based arithmetic."""
    n = len(M)
    dp = {0: ring.one()}
    for r in range(n):
        ndp: dict[int, MultiPoly] = {}
        for mask, val in dp.items():
            below = 0
            for c in range(n):
                bit = 1 << c
                if mask & bit:
                    below += 1
                    continue
                entry = M[r][c]
                if entry.is_zero():
                    continue
                contrib = val * entry
                if (r - below) % 2:
                    contrib = -contrib
                cur = ndp.get(mask | bit)
                ndp[mask | bit] = contrib if cur is None else cur + contrib
        dp = ndp
    return dp.get((1 << n) - 1, ring.zero())


def exact_divide(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Quotient q with f = q*g, else NotDivisible with the remainder."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    ring = f.ring
    p = ring.p
    gm, gc = g.leading()
    gc_inv = pow(gc, p - 2, p)
    if len(g.terms) == 1:
        q: dict = {}
        rem: dict = {}
        for e, c in f.terms.items():
            diff = tuple(a - b for a, b in zip(e, gm))
            if all(d >= 0 for d in diff):
                q[diff] = c * gc_inv % p
            else:
                rem[e] = c
        if rem:
            raise NotDivisible(
                f"monomial division leaves {len(rem)} remainder terms",
                remainder=MultiPoly(ring, rem),
            )
        return MultiPoly(ring, q)
    q: dict = {}
    rem: dict = {}
    r = f
    while not r.is_zero():
        rm, rc = r.leading()
        diff = tuple(a - b for a, b in zip(rm, gm))
        if all(d >= 0 for d in diff):
            c = rc * gc_inv % p
            q[diff] = c
            r = r - MultiPoly(ring, {diff: c}) * g
        else:
            rem[rm] = rc
            r = MultiPoly(ring, {e: c for e, c in r.terms.items() if e != rm})
    if rem:
        witness = MultiPoly(ring, rem)
        raise NotDivisible(
            f"division leaves nonzero remainder ({len(rem)} terms)",
            remainder=witness,
        )
    return MultiPoly(ring, q)


def jacobian_generators(f: MultiPoly) -> list[MultiPoly]:
    """All partial derivatives of f (six of them in the production ring)."""
    return [f.derivative(i) for i in range(f.ring.nvars)]


def minors(M, k: int, method: str = "auto") -> list[MultiPoly]:
    """All k x k minor determinants, deduplicated, zeros dropped.

    For matrices of linear forms the column-subset DP is shared across
    all column choices of one row set, so the 45 x 45 production case
    costs 45 DP sweeps instead of 2025 determinants.
    """
    nrows = len(M)
    ncols = len(M[0])
    if k > min(nrows, ncols):
        raise ValueError("k exceeds matrix dimensions")
    ring = M[0][0].ring
    all_linear = all(_is_linear_form(f) or f.is_zero()
                     for row in M for f in row)
    out: list[MultiPoly] = []
    seen: set = set()

    def push(d: MultiPoly):
        if d.is_zero():
            return
        key = tuple(sorted(d.terms.items()))
        if key not in seen:
            seen.add(key)
            out.append(d)

    if all_linear and method in ("auto", "laplace"):
        for rows in combinations(range(nrows), k):
            sub = [M[i] for i in rows]
            dets = _det_laplace_dense(sub, ring, want_minors=k)
            for cols in combinations(range(ncols), k):
                mask = 0
                for c in cols:
                    mask |= 1 << c
                d = dets.get(mask)
                if d is not None:
                    push(d)
    else:
        for rows in combinations(range(nrows), k):
            for cols in combinations(range(ncols), k):
                sub = [[M[i][j] for j in cols] for i in rows]
                push(det_poly_matrix(sub, method="laplace",
                                     spot_verify=False))
    return out
