"""The matrix group 3.A7, its conjugacy classes, and the two invariant
Lagrangian subspaces of the third exterior power.

Pipeline: enumerate the group generated by the two printed 6x6 matrices
(entries in Z[w], w = zeta_21^7), partition the central quotient into
conjugacy classes matched to character-table columns by representative
words, build the rank-10 isotypic projectors from the two 10-dimensional
characters, and extract + verify the Lagrangian bases.

The class/column matching uses representative words directly: the two
order-3 classes and the two order-7 classes cannot be told apart by the
20-dimensional character alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .arith import ISQRT7, XI3, CyclotomicNumber
from .errors import (
    ColumnMismatch,
    ExplosionGuard,
    NonUnitDeterminant,
    NotARepresentation,
    NotIdempotent,
    NotInvariant,
    NotLagrangian,
)
from .linalg import (
    CYC,
    ExactMatrix,
    determinant,
    kernel_and_rank,
    solve_right,
    symplectic_gram,
)
from .zomega import ZW, zw_wedge_cube

ONE = CyclotomicNumber.one()
ZERO = CyclotomicNumber.zero()


def _c(x) -> CyclotomicNumber:
    return CYC.coerce(x)


XI3SQ = XI3 * XI3

GENERATOR_A = ExactMatrix(CYC, [
    [1, 0, 0, 0, 0, 0],
    [0, XI3SQ, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 1],
    [XI3 - 1, 0, 1 - XI3, -XI3, XI3, 1],
    [2, 0, -1, -1, 0, -1],
])

GENERATOR_B = ExactMatrix(CYC, [
    [0, 1, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 1, 0],
    [1, 0, 0, 0, 0, 0],
    [-1, 1, -XI3, 0, XI3, 1],
])

# character-table columns, in table order, as words in the generators
# (1 = a, -1 = a^-1, 2 = b, -2 = b^-1)
COLUMN_WORDS: tuple[tuple[str, tuple[int, ...]], ...] = (
    ("id", ()),
    ("ab^-1ab", (1, -2, 1, 2)),
    ("a", (1,)),
    ("a^-1bab", (-1, 2, 1, 2)),
    ("a^-1bab^2", (-1, 2, 1, 2, 2)),
    ("b", (2,)),
    ("ababab^2", (1, 2, 1, 2, 1, 2, 2)),
    ("ab", (1, 2)),
    ("a^-1b", (-1, 2)),
)
COLUMN_NAMES = tuple(name for name, _ in COLUMN_WORDS)


@dataclass(frozen=True)
class CharacterRow:
    """One character-table row: nine exact values in table-column order."""

    values: tuple[CyclotomicNumber, ...]

    def __post_init__(self):
        if len(self.values) != 9:
            raise ValueError("a character row has 9 values")

    @property
    def dimension(self) -> CyclotomicNumber:
        return self.values[0]

    def __getitem__(self, i):
        return self.values[i]

    def conjugate(self) -> "CharacterRow":
        return CharacterRow(tuple(v.conjugate() for v in self.values))

    def __add__(self, other: "CharacterRow") -> "CharacterRow":
        return CharacterRow(tuple(a + b for a, b in
                                  zip(self.values, other.values)))


def _half(x: CyclotomicNumber) -> CyclotomicNumber:
    return x * CyclotomicNumber([1], 2)


def _row(vals) -> CharacterRow:
    return CharacterRow(tuple(_c(v) for v in vals))


# the two order-7 columns carry -(1 -+ i*sqrt7)/2, with i*sqrt7 the
# quadratic Gauss sum in zeta_7 = zeta_21^3 (squares to -7, checked at
# import in arith)
_M7A = _half(ISQRT7 - 1)   # -(1 - isqrt7)/2
_M7B = _half(-ISQRT7 - 1)  # -(1 + isqrt7)/2

TABLE1: dict[str, CharacterRow] = {
    "V0": _row([1, 1, 1, 1, 1, 1, 1, 1, 1]),
    "V6": _row([6, 2, 3, 0, 0, 1, -1, -1, -1]),
    "V10": CharacterRow(tuple(
        [_c(10), _c(-2), _c(1), _c(1), _c(0), _c(0), _c(1), _M7A, _M7B])),
    "V10'": CharacterRow(tuple(
        [_c(10), _c(-2), _c(1), _c(1), _c(0), _c(0), _c(1), _M7B, _M7A])),
    "V14": _row([14, 2, 2, -1, 0, -1, 2, 0, 0]),
    "V14'": _row([14, 2, -1, 2, 0, -1, -1, 0, 0]),
    "V15": _row([15, -1, 3, 0, -1, 0, -1, 1, 1]),
    "W": _row([20, -4, 2, 2, 0, 0, 2, -1, -1]),
}

# the subspace labeled A1 is the one whose character has -(1-isqrt7)/2 in
# the [ab] column, i.e. the V10 row
LAGRANGIAN_CHARACTERS = {"A1": "V10", "A2": "V10'"}


@dataclass
class GroupData:
    """Enumerated matrix group with quotient/class bookkeeping.

    elements_a/b stack the Z[w] components of all elements in BFS
    discovery order; parents[i] = (parent index, generator index) gives
    the BFS tree used to fill the exterior-cube representation by
    functoriality.
    """

    gens: list[ZW]
    elements_a: np.ndarray          # (N, 6, 6)
    elements_b: np.ndarray
    parents: list[tuple[int, int]]
    key_index: dict[bytes, int]
    center: list[int]               # indices of scalar elements
    quotient_index: dict[bytes, int]    # canonical key -> quotient index
    element_quotient: np.ndarray        # (N,) quotient index per element
    quotient_rep_element: list[int]     # element index of each canonical rep
    classes: list[list[int]] = field(default_factory=list)     # quotient idx
    class_of_quotient: np.ndarray | None = None
    column_map: dict[str, int] = field(default_factory=dict)   # name -> class
    wedges_a: np.ndarray | None = None  # (N, 20, 20)
    wedges_b: np.ndarray | None = None

    @property
    def order(self) -> int:
        return self.elements_a.shape[0]

    @property
    def quotient_order(self) -> int:
        return len(self.quotient_rep_element)

    def element(self, i: int) -> ZW:
        return ZW(self.elements_a[i], self.elements_b[i])

    def element_exact(self, i: int) -> ExactMatrix:
        return self.element(i).to_exact()

    def class_sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def word_element_index(self, word: tuple[int, ...]) -> int:
        m = ZW.identity(6)
        inv = {1: self.gens[0].inverse(), 2: self.gens[1].inverse()}
        for tok in word:
            m = m @ (self.gens[tok - 1] if tok > 0 else inv[-tok])
        idx = self.key_index.get(m.key())
        if idx is None:
            raise KeyError("word lands outside the enumerated group")
        return idx

    def ensure_wedges(self) -> None:
        """Exterior cube of every element, filled along the BFS tree."""
        if self.wedges_a is not None:
            return
        n = self.order
        wa = np.zeros((n, 20, 20), np.int64)
        wb = np.zeros((n, 20, 20), np.int64)
        gen_wedges = [zw_wedge_cube(g) for g in self.gens]
        for i, (pi, gi) in enumerate(self.parents):
            if pi < 0:
                w = zw_wedge_cube(self.element(i))
            else:
                w = ZW(wa[pi], wb[pi]) @ gen_wedges[gi]
            wa[i], wb[i] = w.a, w.b
        self.wedges_a, self.wedges_b = wa, wb

    def wedge(self, i: int) -> ZW:
        self.ensure_wedges()
        return ZW(self.wedges_a[i], self.wedges_b[i])


def _scalar_twists(G_scalars: list[ZW], m: ZW) -> list[ZW]:
    return [s @ m for s in G_scalars]


def _canonical_key(scalars: list[ZW], m: ZW) -> tuple[bytes, ZW]:
    """Min over central-scalar twists by first nonzero entry, compared as
    reduced coefficient tuples (lexicographically)."""
    best, best_pair = None, None
    for t in _scalar_twists(scalars, m):
        pair = t.first_nonzero_pair()
        if best_pair is None or pair < best_pair:
            best, best_pair = t, pair
    return best.key(), best


def _root_of_unity(d: CyclotomicNumber) -> bool:
    acc = ONE
    for _ in range(42):
        acc = acc * d
        if acc.is_one():
            return True
    return False


def enumerate_group(gens: list[ExactMatrix], bound: int = 50000) -> GroupData:
    """BFS closure of the generated matrix group with canonical-key dedup.

    Raises NonUnitDeterminant if a generator determinant is not a root of
    unity (the closure would be infinite), ExplosionGuard past `bound`.
    """
    for g in gens:
        if not _root_of_unity(determinant(g)):
            raise NonUnitDeterminant(
                "generator determinant is not a root of unity"
            )
    zgens = [ZW.from_exact(g) for g in gens]
    n = zgens[0].n

    ident = ZW.identity(n)
    elems: list[ZW] = [ident]
    key_index = {ident.key(): 0}
    parents: list[tuple[int, int]] = [(-1, -1)]
    frontier = [0]
    while frontier:
        new_frontier = []
        for idx in frontier:
            m = elems[idx]
            for gi, g in enumerate(zgens):
                prod = m @ g
                k = prod.key()
                if k not in key_index:
                    key_index[k] = len(elems)
                    elems.append(prod)
                    parents.append((idx, gi))
                    new_frontier.append(len(elems) - 1)
                    if len(elems) > bound:
                        raise ExplosionGuard(
                            f"element count exceeded bound {bound}"
                        )
        frontier = new_frontier

    elements_a = np.stack([e.a for e in elems])
    elements_b = np.stack([e.b for e in elems])
    center = [i for i, e in enumerate(elems) if e.is_scalar()]
    scalars = [elems[i] for i in center]

    quotient_index: dict[bytes, int] = {}
    quotient_rep_element: list[int] = []
    element_quotient = np.zeros(len(elems), np.int64)
    canon_rep_keys: list[bytes] = []
    for i, e in enumerate(elems):
        ck, rep = _canonical_key(scalars, e)
        qi = quotient_index.get(ck)
        if qi is None:
            qi = len(quotient_rep_element)
            quotient_index[ck] = qi
            # the canonical rep is some scalar twist of e; it is in the
            # group, record its element index
            quotient_rep_element.append(key_index[rep.key()])
            canon_rep_keys.append(ck)
        element_quotient[i] = qi

    return GroupData(
        gens=zgens,
        elements_a=elements_a,
        elements_b=elements_b,
        parents=parents,
        key_index=key_index,
        center=center,
        quotient_index=quotient_index,
        element_quotient=element_quotient,
        quotient_rep_element=quotient_rep_element,
    )


def class_partition(G: GroupData) -> GroupData:
    """Conjugacy classes of the central quotient by orbit closure under
    conjugation by the generators; columns assigned by representative
    words.  Raises ColumnMismatch if the words occupy fewer classes."""
    scalars = [G.element(i) for i in G.center]
    conjugators = []
    for g in G.gens:
        conjugators.append((g.inverse(), g))

    nq = G.quotient_order
    class_of = np.full(nq, -1, np.int64)
    classes: list[list[int]] = []
    for seed in range(nq):
        if class_of[seed] >= 0:
            continue
        cid = len(classes)
        members = [seed]
        class_of[seed] = cid
        stack = [seed]
        while stack:
            qi = stack.pop()
            m = G.element(G.quotient_rep_element[qi])
            for ginv, g in conjugators:
                ck, _ = _canonical_key(scalars, ginv @ m @ g)
                qj = G.quotient_index[ck]
                if class_of[qj] < 0:
                    class_of[qj] = cid
                    members.append(qj)
                    stack.append(qj)
        classes.append(sorted(members))

    column_map: dict[str, int] = {}
    for name, word in COLUMN_WORDS:
        ei = G.word_element_index(word)
        ck, _ = _canonical_key(scalars, G.element(ei))
        column_map[name] = int(class_of[G.quotient_index[ck]])
    if len(set(column_map.values())) != len(COLUMN_WORDS):
        raise ColumnMismatch(
            "representative words occupy fewer classes than columns: "
            f"{column_map}"
        )

    G.classes = classes
    G.class_of_quotient = class_of
    G.column_map = column_map
    return G


def _column_value(chi: CharacterRow, G: GroupData, cid: int) -> CyclotomicNumber:
    for col, name in enumerate(COLUMN_NAMES):
        if G.column_map[name] == cid:
            return chi[col]
    raise ColumnMismatch(f"class {cid} has no table column")


def class_sums_of_wedges(G: GroupData) -> tuple[np.ndarray, np.ndarray]:
    """Sums of the exterior-cube matrices over full-group class fibers."""
    G.ensure_wedges()
    ncls = len(G.classes)
    sa = np.zeros((ncls, 20, 20), np.int64)
    sb = np.zeros((ncls, 20, 20), np.int64)
    elem_class = G.class_of_quotient[G.element_quotient]
    for c in range(ncls):
        idx = np.nonzero(elem_class == c)[0]
        sa[c] = G.wedges_a[idx].sum(axis=0)
        sb[c] = G.wedges_b[idx].sum(axis=0)
    return sa, sb


def build_projector(G: GroupData, chi: CharacterRow) -> ExactMatrix:
    """Isotypic projector (dim chi / |G|) sum_g conj(chi(g)) wedge(g).

    The sum runs over all group elements (the center acts trivially on the
    exterior cube, so this triple-counts the quotient sum and |G| keeps
    the normalization exact).  Verified idempotent before returning.
    """
    if not G.classes:
        raise ValueError("run class_partition first")
    sa, sb = class_sums_of_wedges(G)
    dim_over_order = CyclotomicNumber([chi.dimension.nums[0]], G.order)
    acc = [[ZERO] * 20 for _ in range(20)]
    for cid in range(len(G.classes)):
        weight = _column_value(chi, G, cid).conjugate() * dim_over_order
        if weight.is_zero():
            continue
        a, b = sa[cid], sb[cid]
        for i in range(20):
            for j in range(20):
                va, vb = int(a[i, j]), int(b[i, j])
                if va or vb:
                    cf = [0] * 12
                    cf[0], cf[7] = va, vb
                    acc[i][j] = acc[i][j] + weight * CyclotomicNumber(cf)
    P = ExactMatrix(CYC, acc)
    if P * P != P:
        raise NotIdempotent("projector fails P*P == P")
    return P


@dataclass(frozen=True)
class LagrangianBasis:
    """20x10 cyclotomic matrix whose columns span an invariant Lagrangian."""

    matrix: ExactMatrix
    label: str

    def to_json(self) -> dict:
        doc = self.matrix.to_json()
        doc["label"] = self.label
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "LagrangianBasis":
        return cls(ExactMatrix.from_json(doc), doc.get("label", "?"))


def extract_lagrangian(P: ExactMatrix, label: str,
                       group: GroupData) -> LagrangianBasis:
    """Column-space basis of an idempotent P via the kernel of I - P,
    verified rank-10, isotropic, and generator-invariant."""
    I = ExactMatrix.identity(CYC, 20)
    rank_comp, kernel = kernel_and_rank(I - P)
    B = ExactMatrix(CYC, list(zip(*kernel)))  # kernel vectors as columns
    if B.cols != 10:
        raise NotLagrangian(f"projector rank is {B.cols}, want 10")
    omega = symplectic_gram(CYC)
    if not (B.transpose() * omega * B).is_zero_matrix():
        raise NotLagrangian("basis is not isotropic for the symplectic form")
    for g in group.gens:
        WB = zw_wedge_cube(g).to_exact() * B
        if solve_right(B, WB) is None:
            raise NotInvariant(f"{label}: generator action leaves the span")
    return LagrangianBasis(B, label)


def character_of_subrep(B: LagrangianBasis, G: GroupData) -> CharacterRow:
    """Trace of the induced action on the column span, per table column."""
    M = B.matrix
    values = []
    for name, word in COLUMN_WORDS:
        ei = G.word_element_index(word)
        W = G.wedge(ei).to_exact()
        Mx = solve_right(M, W * M)
        if Mx is None:
            raise NotARepresentation(
                f"column space not preserved by word {name}"
            )
        values.append(Mx.trace())
    return CharacterRow(tuple(values))


def character_inner_product(G: GroupData, r1: CharacterRow,
                            r2: CharacterRow) -> CyclotomicNumber:
    """<r1, r2> = sum over classes of size * r1 * conj(r2) / |quotient|."""
    acc = ZERO
    for col, name in enumerate(COLUMN_NAMES):
        size = len(G.classes[G.column_map[name]])
        acc = acc + r1[col] * r2[col].conjugate() * size
    return acc * CyclotomicNumber([1], G.quotient_order)
