"""Buchberger engine over F_p with Hilbert-series dimension/degree
extraction and localization-based triviality tests.

The grevlex path packs each monomial into one int64 "kappa" key
(degree-major, additive under multiplication, integer-ascending equals
order-descending) so that normal forms run as vectorized scatter/gather
on a dense per-universe coefficient accumulator; divisibility checks on
leading exponents use a SWAR borrow trick on a parallel exponent
packing.  Pair handling is plain Buchberger with the Gebauer-Moeller
criteria and sugar-degree-first selection; no F4/F5.  Long runs
checkpoint their basis and pair queue and can resume.

Non-grevlex orders (lex, elimination blocks) take a compact dict-based
fallback; they only occur in small verification ideals.
"""

from __future__ import annotations

import gzip
import hashlib
import heapq
import json
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import DegreeBudgetExceeded, NotHomogeneous
from .poly import MonomialOrder, MultiPoly, PolyRing

CHECKPOINT_VERSION = 1


def ideal_hash(gens, order: MonomialOrder) -> str:
    h = hashlib.sha256()
    ring = gens[0].ring
    h.update(f"{ring.p}:{ring.nvars}:{order.kind}:{order.block}".encode())
    for key in sorted(g.content_hash() for g in gens):
        h.update(key.encode())
    return h.hexdigest()


@dataclass
class GroebnerBasis:
    basis: list[MultiPoly]
    order: MonomialOrder
    source_hash: str
    stats: dict = field(default_factory=dict)

    def contains_one(self) -> bool:
        return any(b.is_constant() and not b.is_zero() for b in self.basis)

    def leading_exponents(self) -> list[tuple[int, ...]]:
        return [b.leading()[0] for b in self.basis]


# ---------------------------------------------------------------------------
# packed grevlex engine
# ---------------------------------------------------------------------------


class _Packing:
    """int64 key layout for one ring: kappa = E - deg << (b n), where E
    packs exponent i at bit b*i.  kappa is additive and ascending-kappa is
    descending grevlex; E supports SWAR divisibility."""

    def __init__(self, nvars: int):
        self.n = nvars
        self.b = 8 if nvars <= 7 else 50 // nvars
        if self.b < 4:
            raise ValueError(f"too many variables to pack: {nvars}")
        self.cap = (1 << (self.b - 1)) - 1  # max exponent/degree
        self.shift = self.b * nvars
        self.high = 0
        for i in range(nvars):
            self.high |= 1 << (self.b * i + self.b - 1)

    def pack_e(self, e) -> int:
        E = 0
        for i, x in enumerate(e):
            E |= int(x) << (self.b * i)
        return E

    def kappa(self, e) -> int:
        return self.pack_e(e) - (sum(e) << self.shift)

    def unpack_kappa(self, k: int) -> tuple[int, ...]:
        deg = -(k >> self.shift)
        E = k + (deg << self.shift)
        mask = (1 << self.b) - 1
        return tuple((E >> (self.b * i)) & mask for i in range(self.n))

    def deg_of_kappa(self, k: int) -> int:
        return -(int(k) >> self.shift)

    def e_of_kappa(self, k: int) -> int:
        deg = -(int(k) >> self.shift)
        return int(k) + (deg << self.shift)


class _Packed:
    """One polynomial: kappa keys ascending (leading term first), coeffs."""

    __slots__ = ("k", "c", "sugar")

    def __init__(self, k: np.ndarray, c: np.ndarray, sugar: int):
        self.k = k
        self.c = c
        self.sugar = sugar

    @property
    def lead(self) -> int:
        return int(self.k[0])

    @property
    def lc(self) -> int:
        return int(self.c[0])

    def __len__(self):
        return len(self.k)


class _Universe:
    """Sorted kappa keys of all monomials up to a degree bound (or of one
    exact degree), with a scratch accumulator for reductions."""

    def __init__(self, ring: PolyRing, pk: _Packing, maxdeg: int,
                 homogeneous_deg: int | None = None):
        self.pk = pk
        if homogeneous_deg is None:
            parts = []
            for d in range(maxdeg, -1, -1):
                basis, _ = ring.dense_basis(d)
                parts.append(np.array([pk.kappa(e) for e in basis], np.int64))
            keys = np.concatenate(parts)
        else:
            basis, _ = ring.dense_basis(homogeneous_deg)
            keys = np.array([pk.kappa(e) for e in basis], np.int64)
        self.keys = keys  # ascending kappa == descending grevlex
        self.scratch = np.zeros(len(keys), np.int64)

    def positions(self, kcols: np.ndarray) -> np.ndarray:
        return np.searchsorted(self.keys, kcols)


class _Engine:
    def __init__(self, ring: PolyRing, budget: int):
        self.ring = ring
        self.p = ring.p
        self.pk = _Packing(ring.nvars)
        self.budget = min(budget, self.pk.cap)
        self.polys: list[_Packed] = []
        self.lead_e: list[int] = []          # packed exponents of leads
        self.lead_exp: list[tuple] = []      # exponent tuples of leads
        self.alive: list[bool] = []
        self._lead_e_arr = np.zeros(64, np.int64)
        self._universes: dict = {}
        self._maxdeg_seen = 0

    # -- conversions ------------------------------------------------------
    def pack(self, f: MultiPoly, sugar: int | None = None) -> _Packed:
        items = sorted(
            ((self.pk.kappa(e), c) for e, c in f.terms.items()),
        )
        k = np.array([x for x, _ in items], np.int64)
        c = np.array([x for _, x in items], np.int64)
        return _Packed(k, c, f.degree() if sugar is None else sugar)

    def unpack(self, q: _Packed) -> MultiPoly:
        terms = {
            self.pk.unpack_kappa(int(kk)): int(cc)
            for kk, cc in zip(q.k, q.c)
        }
        return self.ring.from_terms(terms)

    # -- universe handling --------------------------------------------------
    def universe_for(self, deg: int, homogeneous: bool) -> _Universe:
        if deg > self.budget:
            raise DegreeBudgetExceeded(
                f"monomial degree {deg} exceeds budget {self.budget}"
            )
        key = (deg, homogeneous)
        uni = self._universes.get(key)
        if uni is None:
            if homogeneous:
                uni = _Universe(self.ring, self.pk, deg, homogeneous_deg=deg)
            else:
                uni = _Universe(self.ring, self.pk, deg)
            self._universes[key] = uni
            # drop stale inhomogeneous universes with a smaller bound
            if not homogeneous:
                for k2 in [k for k in self._universes
                           if not k[1] and k[0] < deg]:
                    del self._universes[k2]
        return uni

    # -- basis bookkeeping -------------------------------------------------
    def add_basis(self, q: _Packed) -> int:
        idx = len(self.polys)
        self.polys.append(q)
        e = self.pk.e_of_kappa(q.lead)
        self.lead_e.append(e)
        self.lead_exp.append(self.pk.unpack_kappa(q.lead))
        self.alive.append(True)
        if idx >= len(self._lead_e_arr):
            grown = np.zeros(2 * len(self._lead_e_arr), np.int64)
            grown[: len(self._lead_e_arr)] = self._lead_e_arr
            self._lead_e_arr = grown
        self._lead_e_arr[idx] = e
        return idx

    def divisor_of(self, E: int, deg: int, skip: int = -1) -> int:
        """First live basis index whose lead exponent divides E (SWAR)."""
        nb = len(self.polys)
        if nb == 0:
            return -1
        arr = self._lead_e_arr[:nb]
        mask = (((E | self.pk.high) - arr) & self.pk.high) == self.pk.high
        if skip >= 0:
            mask[skip] = False
        hits = np.nonzero(mask)[0]
        for j in hits:
            if self.alive[j]:
                return int(j)
        return -1

    # -- reduction -----------------------------------------------------------
    def reduce_parts(self, parts, homogeneous: bool,
                     skip: int = -1) -> _Packed | None:
        """Normal form of sum of (kappa shift, coeff scale, packed poly)
        against the live basis; None when it reduces to zero."""
        p = self.p
        maxdeg = 0
        for shift, _, q in parts:
            maxdeg = max(maxdeg,
                         self.pk.deg_of_kappa(int(q.k[0]) + shift))
        uni = self.universe_for(maxdeg, homogeneous)
        keys = uni.keys
        v = uni.scratch
        v[:] = 0
        lo = len(keys)
        for shift, scale, q in parts:
            pos = np.searchsorted(keys, q.k + shift)
            np.add.at(v, pos, q.c * (scale % p))
            lo = min(lo, int(pos[0]))
        v %= p
        rem_k: list[int] = []
        rem_c: list[int] = []
        front = lo
        n = len(keys)
        sugar = max(q.sugar + self.pk.deg_of_kappa(shift)
                    for shift, _, q in parts)
        while front < n:
            if v[front] == 0:
                # chunked scan for the next nonzero entry
                step = 64
                nxt = -1
                while front < n:
                    hi = min(front + step, n)
                    chunk = v[front:hi]
                    nz = np.nonzero(chunk)[0]
                    if len(nz):
                        nxt = front + int(nz[0])
                        break
                    front = hi
                    step = min(step * 8, 1 << 20)
                if nxt < 0:
                    break
                front = nxt
            klm = int(keys[front])
            deg = self.pk.deg_of_kappa(klm)
            E = klm + (deg << self.pk.shift)
            j = self.divisor_of(E, deg, skip=skip)
            if j < 0:
                rem_k.append(klm)
                rem_c.append(int(v[front]))
                v[front] = 0
                front += 1
                continue
            g = self.polys[j]
            shift = klm - g.lead
            factor = int(v[front]) * pow(g.lc, p - 2, p) % p
            pos = uni.positions(g.k + shift)
            v[pos] = (v[pos] - factor * g.c) % p
            sugar = max(sugar, g.sugar + self.pk.deg_of_kappa(shift))
        if not rem_k:
            return None
        return _Packed(np.array(rem_k, np.int64),
                       np.array(rem_c, np.int64), sugar)


def _lcm_exp(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


class _PairQueue:
    """Sugar-first pair heap with Gebauer-Moeller updates."""

    def __init__(self, engine: _Engine):
        self.eng = engine
        self.heap: list[tuple] = []
        self.live: set[tuple[int, int]] = set()
        self.lcm: dict[tuple[int, int], tuple] = {}

    def _sugar(self, i: int, j: int, lcm_exp: tuple) -> int:
        eng = self.eng
        di = sum(lcm_exp) - sum(eng.lead_exp[i])
        dj = sum(lcm_exp) - sum(eng.lead_exp[j])
        return max(eng.polys[i].sugar + di, eng.polys[j].sugar + dj)

    def push(self, i: int, j: int, lcm_exp: tuple):
        key = (i, j) if i < j else (j, i)
        self.live.add(key)
        self.lcm[key] = lcm_exp
        sugar = self._sugar(*key, lcm_exp)
        # sugar first, then smallest lcm in the order (normal strategy)
        heapq.heappush(
            self.heap,
            (sugar, -self.eng.pk.kappa(lcm_exp), key[0], key[1]),
        )

    def update(self, t: int):
        """Gebauer-Moeller update after appending basis element t."""
        eng = self.eng
        lt = eng.lead_exp[t]
        # B: drop old pairs whose lcm is strictly reducible through t
        for key in list(self.live):
            i, j = key
            l = self.lcm[key]
            if _divides(lt, l) and lt != l:
                if (_lcm_exp(eng.lead_exp[i], lt) != l
                        and _lcm_exp(eng.lead_exp[j], lt) != l):
                    self.live.discard(key)
        # candidate new pairs (i, t)
        cand = {}
        for i in range(t):
            if eng.alive[i]:
                cand[i] = _lcm_exp(eng.lead_exp[i], lt)
        # F: among equal lcms keep the smallest index
        by_lcm: dict[tuple, list[int]] = {}
        for i, l in cand.items():
            by_lcm.setdefault(l, []).append(i)
        keep: dict[int, tuple] = {}
        for l, idxs in by_lcm.items():
            keep[min(idxs)] = l
        # M: drop pairs whose lcm is a proper multiple of another lcm
        items = sorted(keep.items(), key=lambda kv: (sum(kv[1]), kv[0]))
        final: dict[int, tuple] = {}
        for i, l in items:
            if any(_divides(l2, l) and l2 != l for l2 in final.values()):
                continue
            final[i] = l
        # Buchberger coprime criterion
        for i, l in sorted(final.items()):
            prod = tuple(
                a + b for a, b in zip(eng.lead_exp[i], lt)
            )
            if l == prod:
                continue
            self.push(i, t, l)

    def pop(self):
        while self.heap:
            sugar, _, i, j = heapq.heappop(self.heap)
            if (i, j) in self.live:
                self.live.discard((i, j))
                return sugar, i, j
        return None


def _autoreduce_basis(eng: _Engine, homogeneous: bool) -> list[MultiPoly]:
    """Minimalize + tail-reduce the live basis into a reduced GB."""
    order = [
        i for i in range(len(eng.polys)) if eng.alive[i]
    ]
    # minimal generators: drop any lead divisible by another live lead
    order.sort(key=lambda i: eng.polys[i].lead, reverse=True)  # small first
    minimal: list[int] = []
    for i in order:
        if not any(_divides(eng.lead_exp[j], eng.lead_exp[i])
                   for j in minimal):
            minimal.append(i)
    for i in range(len(eng.polys)):
        eng.alive[i] = i in set(minimal)
    out = []
    p = eng.p
    for i in sorted(minimal, key=lambda i: eng.polys[i].lead, reverse=True):
        q = eng.polys[i]
        nf = eng.reduce_parts(
            [(0, pow(q.lc, p - 2, p), q)], homogeneous, skip=i
        )
        if nf is None:
            eng.alive[i] = False
            continue
        scale = pow(nf.lc, p - 2, p)
        nf = _Packed(nf.k, nf.c * scale % p, nf.sugar)
        eng.polys[i] = nf
        eng.lead_e[i] = eng.pk.e_of_kappa(nf.lead)
        eng.lead_exp[i] = eng.pk.unpack_kappa(nf.lead)
        eng._lead_e_arr[i] = eng.lead_e[i]
        out.append(nf)
    out.sort(key=lambda q: q.lead, reverse=True)  # ascending order leads
    return [eng.unpack(q) for q in out]


def _checkpoint_write(path, eng: _Engine, queue: _PairQueue, stats,
                      src_hash, budget):
    doc = {
        "version": CHECKPOINT_VERSION,
        "p": eng.ring.p,
        "nvars": eng.ring.nvars,
        "order": "grevlex",
        "budget": budget,
        "ideal_hash": src_hash,
        "basis": [
            [[list(eng.pk.unpack_kappa(int(k))), int(c)]
             for k, c in zip(q.k, q.c)]
            for q in eng.polys
        ],
        "sugar": [q.sugar for q in eng.polys],
        "alive": list(eng.alive),
        "pairs": sorted(list(queue.live)),
        "stats": stats,
    }
    tmp = f"{path}.tmp"
    with gzip.open(tmp, "wt") as fh:
        json.dump(doc, fh)
    os.replace(tmp, path)


def checkpoint_load(path: str) -> dict:
    with gzip.open(path, "rt") as fh:
        doc = json.load(fh)
    if doc.get("version") != CHECKPOINT_VERSION:
        from .errors import SchemaVersionMismatch

        raise SchemaVersionMismatch(
            f"checkpoint version {doc.get('version')} unsupported"
        )
    return doc


def buchberger(gens, order: MonomialOrder | None = None, budget: int = 40,
               checkpoint_path: str | None = None,
               checkpoint_interval: int = 2000,
               resume: dict | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by gens.

    Deterministic: sugar-degree-first pair selection with fixed
    tie-breaks, Gebauer-Moeller pruning, scan-order reducer choice.
    Raises DegreeBudgetExceeded (after checkpointing, when a path is
    configured) if a pair's sugar degree exceeds the budget.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("no nonzero generators")
    ring = gens[0].ring
    order = order or ring.order
    src = ideal_hash(gens, order)
    if order.kind != "grevlex":
        return _buchberger_generic(gens, order, budget, src)
    if resume is None and checkpoint_path and os.path.exists(checkpoint_path):
        saved = checkpoint_load(checkpoint_path)
        if saved.get("ideal_hash") == src:
            resume = saved  # pick up the interrupted run

    homogeneous = all(g.is_homogeneous() for g in gens)
    eng = _Engine(ring, budget)
    queue = _PairQueue(eng)
    stats = {"pairs_processed": 0, "reductions_to_zero": 0,
             "max_sugar": 0, "input_redundant": 0}

    if resume is not None:
        if resume["ideal_hash"] != src:
            raise ValueError("checkpoint does not match this ideal")
        for terms, sugar, alive in zip(resume["basis"], resume["sugar"],
                                       resume["alive"]):
            f = ring.from_terms({tuple(e): c for e, c in terms})
            idx = eng.add_basis(eng.pack(f, sugar=sugar))
            eng.alive[idx] = alive
        for i, j in resume["pairs"]:
            queue.push(i, j, _lcm_exp(eng.lead_exp[i], eng.lead_exp[j]))
        stats.update(resume["stats"])
    else:
        # insert generators smallest-lead first, reducing each against the
        # basis so far (kills the heavy linear redundancy of minor ideals)
        packed = [eng.pack(g.monic()) for g in gens]
        packed.sort(key=lambda q: (q.lead, len(q)), reverse=True)
        p = ring.p
        for q in packed:
            nf = eng.reduce_parts([(0, 1, q)], homogeneous)
            if nf is None:
                stats["input_redundant"] += 1
                continue
            nf = _Packed(nf.k, nf.c * pow(nf.lc, p - 2, p) % p, nf.sugar)
            if eng.pk.deg_of_kappa(nf.lead) == 0:
                stats["unit_found"] = True
                return GroebnerBasis([ring.one()], order, src, stats)
            t = eng.add_basis(nf)
            queue.update(t)

    since_checkpoint = 0
    p = ring.p
    while True:
        item = queue.pop()
        if item is None:
            break
        sugar, i, j = item
        lcm = _lcm_exp(eng.lead_exp[i], eng.lead_exp[j])
        # the budget caps true monomial degrees (every monomial touched by
        # this pair's reduction divides into degree <= deg lcm); sugar is
        # only the selection heuristic and may drift higher
        if sum(lcm) > eng.budget:
            if checkpoint_path:
                queue.live.add((i, j))
                _checkpoint_write(checkpoint_path, eng, queue, stats,
                                  src, budget)
            raise DegreeBudgetExceeded(
                f"pair lcm degree {sum(lcm)} exceeds budget {eng.budget}",
                checkpoint_path=checkpoint_path,
            )
        stats["pairs_processed"] += 1
        stats["max_sugar"] = max(stats["max_sugar"], sugar)
        fi, fj = eng.polys[i], eng.polys[j]
        klcm = eng.pk.kappa(lcm)
        si = klcm - fi.lead
        sj = klcm - fj.lead
        ci = pow(fi.lc, p - 2, p)
        cj = (p - 1) * pow(fj.lc, p - 2, p) % p
        nf = eng.reduce_parts([(si, ci, fi), (sj, cj, fj)], homogeneous)
        if nf is None:
            stats["reductions_to_zero"] += 1
        else:
            nf = _Packed(nf.k, nf.c * pow(nf.lc, p - 2, p) % p, nf.sugar)
            if eng.pk.deg_of_kappa(nf.lead) == 0:
                stats["unit_found"] = True
                return GroebnerBasis([ring.one()], order, src, stats)
            t = eng.add_basis(nf)
            queue.update(t)
        since_checkpoint += 1
        if checkpoint_path and since_checkpoint >= checkpoint_interval:
            _checkpoint_write(checkpoint_path, eng, queue, stats, src, budget)
            since_checkpoint = 0

    basis = _autoreduce_basis(eng, homogeneous)
    stats["basis_size"] = len(basis)
    gb = GroebnerBasis(basis, order, src, stats)
    if checkpoint_path and os.path.exists(checkpoint_path):
        os.remove(checkpoint_path)
    return gb


def normal_form(f: MultiPoly, gb: GroebnerBasis) -> MultiPoly:
    """Remainder of f on division by the basis (zero iff f is a member)."""
    if f.is_zero():
        return f
    ring = f.ring
    if gb.order.kind != "grevlex":
        return _normal_form_generic(f, gb.basis, gb.order)
    eng = _Engine(ring, budget=max(63, f.degree() + 1))
    for g in gb.basis:
        eng.add_basis(eng.pack(g))
    homog = f.is_homogeneous() and all(g.is_homogeneous() for g in gb.basis)
    nf = eng.reduce_parts([(0, 1, eng.pack(f))], homog)
    return ring.zero() if nf is None else eng.unpack(nf)


# ---------------------------------------------------------------------------
# generic (non-grevlex) fallback, for small verification ideals
# ---------------------------------------------------------------------------


def _lt(f: MultiPoly, order: MonomialOrder):
    m = max(f.terms, key=order.key)
    return m, f.terms[m]


def _normal_form_generic(f, basis, order):
    ring = f.ring
    p = ring.p
    rem = ring.zero()
    work = f
    while not work.is_zero():
        m, c = _lt(work, order)
        hit = None
        for g in basis:
            gm, _ = _lt(g, order)
            if _divides(gm, m):
                hit = g
                break
        if hit is None:
            t = MultiPoly(ring, {m: c})
            rem = rem + t
            work = work - t
            continue
        gm, gc = _lt(hit, order)
        q = tuple(a - b for a, b in zip(m, gm))
        factor = c * pow(gc, p - 2, p) % p
        work = work - MultiPoly(ring, {q: factor}) * hit
    return rem


def _buchberger_generic(gens, order, budget, src) -> GroebnerBasis:
    ring = gens[0].ring
    p = ring.p
    basis: list[MultiPoly] = []
    for g in sorted(gens, key=lambda g: order.key(_lt(g, order)[0])):
        nf = _normal_form_generic(g, basis, order)
        if not nf.is_zero():
            basis.append(nf.scale(pow(_lt(nf, order)[1], p - 2, p)))
    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    stats = {"pairs_processed": 0}
    while pairs:
        pairs.sort(key=lambda ij: order.key(
            _lcm_exp(_lt(basis[ij[0]], order)[0],
                     _lt(basis[ij[1]], order)[0])))
        i, j = pairs.pop(0)
        mi, ci = _lt(basis[i], order)
        mj, cj = _lt(basis[j], order)
        lcm = _lcm_exp(mi, mj)
        if sum(lcm) > budget:
            raise DegreeBudgetExceeded(
                f"pair degree {sum(lcm)} exceeds budget {budget}"
            )
        if lcm == tuple(a + b for a, b in zip(mi, mj)):
            continue  # coprime leads
        stats["pairs_processed"] += 1
        qi = tuple(a - b for a, b in zip(lcm, mi))
        qj = tuple(a - b for a, b in zip(lcm, mj))
        s = (MultiPoly(ring, {qi: pow(ci, p - 2, p)}) * basis[i]
             - MultiPoly(ring, {qj: pow(cj, p - 2, p)}) * basis[j])
        nf = _normal_form_generic(s, basis, order)
        if not nf.is_zero():
            nf = nf.scale(pow(_lt(nf, order)[1], p - 2, p))
            basis.append(nf)
            pairs.extend((k, len(basis) - 1) for k in range(len(basis) - 1))
    # minimalize (new normal forms never repeat a lead, so this is safe)
    minimal = [
        g for g in basis
        if not any(h is not g and _divides(_lt(h, order)[0],
                                           _lt(g, order)[0]) for h in basis)
    ]
    out = []
    for g in minimal:
        lt_poly = MultiPoly(ring, dict([_lt(g, order)]))
        others = [h for h in minimal if h is not g]
        nf = _normal_form_generic(g - lt_poly, others, order)
        out.append(lt_poly + nf)
    out.sort(key=lambda g: order.key(_lt(g, order)[0]))
    stats["basis_size"] = len(out)
    return GroebnerBasis(out, order, src, stats)


# ---------------------------------------------------------------------------
# Hilbert series of the leading-term ideal
# ---------------------------------------------------------------------------


def _poly1_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly1_add(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    return [
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
        for i in range(n)
    ]


def _minimalize(gens: list[tuple]) -> list[tuple]:
    gens = sorted(set(gens), key=lambda e: (sum(e), e))
    out = []
    for e in gens:
        if not any(_divides(f, e) for f in out):
            out.append(e)
    return out


def _hilbert_numerator(gens: tuple, nvars: int, memo: dict) -> list[int]:
    """Numerator of the Hilbert series of R/(monomial ideal) over the
    (1-t)^nvars denominator, by pivot splitting."""
    if not gens:
        return [1]
    if any(sum(e) == 0 for e in gens):
        return [0]
    key = gens
    hit = memo.get(key)
    if hit is not None:
        return hit
    glist = list(gens)
    # variable-disjoint components multiply
    support = [frozenset(i for i, x in enumerate(e) if x) for e in glist]
    comp = list(range(len(glist)))

    def find(a):
        while comp[a] != a:
            comp[a] = comp[comp[a]]
            a = comp[a]
        return a

    for i in range(len(glist)):
        for j in range(i + 1, len(glist)):
            if support[i] & support[j]:
                comp[find(i)] = find(j)
    groups: dict[int, list[tuple]] = {}
    for i, e in enumerate(glist):
        groups.setdefault(find(i), []).append(e)
    if len(groups) > 1:
        result = [1]
        for sub in groups.values():
            result = _poly1_mul(
                result,
                _hilbert_numerator(tuple(sorted(sub)), nvars, memo),
            )
        memo[key] = result
        return result
    # single generator, or all pure powers of distinct variables
    if len(glist) == 1:
        d = sum(glist[0])
        out = [0] * (d + 1)
        out[0], out[d] = 1, -1
        memo[key] = out
        return out
    pures = [e for e in glist if sum(1 for x in e if x) == 1]
    if len(pures) == len(glist):
        result = [1]
        for e in glist:
            d = sum(e)
            fac = [0] * (d + 1)
            fac[0], fac[d] = 1, -1
            result = _poly1_mul(result, fac)
        memo[key] = result
        return result
    # pivot on a variable of a non-pure-power generator (most frequent),
    # with the minimal positive exponent: I + (pivot) eliminates the
    # variable, I : pivot strictly drops total degree, so both branches
    # shrink
    counts = [0] * nvars
    for e in glist:
        for i, x in enumerate(e):
            if x:
                counts[i] += 1
    mixed_vars = set()
    for e in glist:
        if sum(1 for x in e if x) > 1:
            mixed_vars.update(i for i, x in enumerate(e) if x)
    j = max(mixed_vars, key=lambda i: (counts[i], -i))
    exp = min(e[j] for e in glist if e[j])
    pivot = tuple(exp if i == j else 0 for i in range(nvars))
    # I + (pivot)
    plus = _minimalize(glist + [pivot])
    # I : pivot
    colon = _minimalize([
        tuple(max(x - (exp if i == j else 0), 0) for i, x in enumerate(e))
        for e in glist
    ])
    n_plus = _hilbert_numerator(tuple(sorted(plus)), nvars, memo)
    n_colon = _hilbert_numerator(tuple(sorted(colon)), nvars, memo)
    shifted = [0] * exp + n_colon
    result = _poly1_add(n_plus, shifted)
    memo[key] = result
    return result


@dataclass(frozen=True)
class HilbertData:
    """Projective dimension and degree read off the Hilbert series.

    numerator is the series numerator over (1-t)^nvars before pole
    clearing; dimension is projective (-1 for a zero-dimensional cone,
    i.e. empty projective scheme; -2 for the unit ideal)."""

    numerator: tuple[int, ...]
    nvars: int
    dimension: int
    degree: int

    def hilbert_function(self, upto: int) -> list[int]:
        """dim_F (R/I)_m for m = 0..upto, from the series expansion."""
        from math import comb

        vals = []
        for m in range(upto + 1):
            acc = 0
            for j, c in enumerate(self.numerator):
                if j <= m:
                    acc += c * comb(m - j + self.nvars - 1, self.nvars - 1)
            vals.append(acc)
        return vals


def hilbert_data(gb: GroebnerBasis) -> HilbertData:
    """Dimension and degree of the projective scheme of a homogeneous
    ideal, from the Hilbert series of its leading-term ideal."""
    for g in gb.basis:
        if not g.is_homogeneous():
            raise NotHomogeneous("ideal is not homogeneous")
    ring = gb.basis[0].ring
    nvars = ring.nvars
    lead = _minimalize([g.leading()[0] for g in gb.basis])
    memo: dict = {}
    num = _hilbert_numerator(tuple(sorted(lead)), nvars, memo)
    while num and num[-1] == 0:
        num.pop()
    if not num:
        return HilbertData((0,), nvars, -2, 0)
    # clear the pole at t = 1
    reduced = list(num)
    s = 0
    while sum(reduced) == 0:
        # synthetic division by (1 - t)
        out = [0] * (len(reduced) - 1)
        acc = 0
        for i in range(len(reduced) - 1):
            acc += reduced[i]
            out[i] = acc
        reduced = out if out else [0]
        s += 1
        if not any(reduced):
            break
    affine_dim = nvars - s
    degree = sum(reduced)
    return HilbertData(tuple(num), nvars, affine_dim - 1, degree)


def localized_trivial(gens, var_index: int, budget: int = 40,
                      checkpoint_path: str | None = None) -> bool:
    """True iff the ideal becomes the unit ideal on the chart x_c != 0.

    Adjoins t with the relation t*x_c = 1 and checks whether the reduced
    Groebner basis is {1}."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return False  # the zero ideal never localizes to the unit ideal
    ring = gens[0].ring
    ext = PolyRing(ring.p, ring.nvars + 1,
                   names=ring.names + ("t_loc",), order="grevlex")
    lifted = [
        ext.from_terms({e + (0,): c for e, c in g.terms.items()})
        for g in gens if not g.is_zero()
    ]
    rab = {tuple(
        (1 if i == var_index else 0) for i in range(ring.nvars)
    ) + (1,): 1, (0,) * (ring.nvars + 1): ring.p - 1}
    lifted.append(ext.from_terms(rab))
    gb = buchberger(lifted, budget=budget, checkpoint_path=checkpoint_path)
    return gb.contains_one()
