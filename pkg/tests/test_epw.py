import random

import numpy as np
import pytest

from epwforge.arith import CyclotomicNumber, ReductionMap
from epwforge.epw import (
    CertReport,
    OMEGA_INT,
    chart_matrix,
    certify_singular_locus,
    certify_y3_empty,
    control_fiber_lagrangian,
    epw_sextic,
    equivariance_scalars,
    fiber_basis,
    fiber_pair_columns,
    grassmannian_probe,
    kernel_mod_p,
    proportionality_scalar,
    rank_mod_p,
    reduce_lagrangian,
    reduced_word_matrices,
    subspace_intersection_dim,
)
from epwforge.errors import (
    BadDenominator,
    DegenerateDeterminant,
    RankCollapse,
    SchemaVersionMismatch,
)
from epwforge.linalg import CYC, TRIPLES, ExactMatrix
from epwforge.groebner import buchberger, hilbert_data
from epwforge.grouprep import LagrangianBasis
from epwforge.poly import PolyRing, minors

P = 127


def control_basis_exact() -> LagrangianBasis:
    cols = [i for i, T in enumerate(TRIPLES) if 1 in T]
    data = [[1 if i == c else 0 for c in cols] for i in range(20)]
    return LagrangianBasis(ExactMatrix(CYC, data), "Fe1")


def test_reduce_lagrangian_identity_pattern(redmap):
    B = control_basis_exact()
    Abar = reduce_lagrangian(B, redmap)
    assert np.array_equal(Abar, control_fiber_lagrangian())


def test_reduce_lagrangian_errors(redmap):
    col1 = [1 if i == 0 else 0 for i in range(20)]
    col2 = [127 if i == 1 else 0 for i in range(20)]
    M = ExactMatrix(CYC, list(zip(col1, col2)))
    with pytest.raises(RankCollapse):
        reduce_lagrangian(LagrangianBasis(M, "bad"), redmap)
    halfcol = [[CyclotomicNumber([1], 127)] for _ in range(20)]
    with pytest.raises(BadDenominator):
        reduce_lagrangian(LagrangianBasis(ExactMatrix(CYC, halfcol), "bad"),
                          redmap)


def test_reduced_bases_rank_and_isotropy(abar):
    for M in abar.values():
        assert rank_mod_p(M, P) == 10
        assert not (M.T @ OMEGA_INT @ M % P).any()


def test_fiber_basis_dimension():
    rng = random.Random(2)
    for _ in range(10):
        v = np.array([rng.randint(0, 126) for _ in range(6)])
        if not v.any():
            continue
        F = fiber_basis(v, P)
        assert F.shape == (20, 10)
        assert rank_mod_p(F, P) == 10


def test_chart_matrix_structure(abar):
    cm = chart_matrix(abar["A1"], 1, P)
    assert len(cm.entries) == 10 and len(cm.entries[0]) == 10
    for row in cm.entries:
        for f in row:
            assert f.is_zero() or (f.is_homogeneous() and f.degree() == 1)
    assert fiber_pair_columns(1) == [
        (i, j) for i in range(2, 7) for j in range(i + 1, 7)
    ]


def test_chart_rank_equals_intersection_defect(abar):
    """rank(chart matrix at v) = 10 - dim(A meet F_v) on the chart."""
    rng = random.Random(5)
    A = abar["A1"]
    cm = chart_matrix(A, 1, P)
    for _ in range(50):
        v = np.array([1] + [rng.randint(0, 126) for _ in range(5)])
        Mv = cm.evaluate(v)
        F = fiber_basis(v, P)
        meet = subspace_intersection_dim(A, F, P)
        assert rank_mod_p(Mv, P) == 10 - meet


def test_chart_vertex_specialization(abar):
    A = abar["A1"]
    for c in (1, 2):
        cm = chart_matrix(A, c, P)
        v = np.zeros(6, np.int64)
        v[c - 1] = 1
        Mv = cm.evaluate(v)
        F = fiber_basis(v, P)
        meet = subspace_intersection_dim(A, F, P)
        assert rank_mod_p(Mv, P) == 10 - meet


def test_chart_degenerates_off_chart(abar):
    rng = random.Random(7)
    cm = chart_matrix(abar["A1"], 1, P)
    for _ in range(20):
        v = np.array([0] + [rng.randint(0, 126) for _ in range(5)])
        if not v.any():
            continue
        assert rank_mod_p(cm.evaluate(v), P) <= 6


def test_sextic_properties(abar, sextics):
    f = sextics["A1"]
    assert f.degree() == 6 and f.is_homogeneous()
    f2 = epw_sextic(abar["A1"], 2, P)
    assert proportionality_scalar(f, f2) == 1  # normalized equality
    f3 = epw_sextic(abar["A1"], 3, P)
    assert proportionality_scalar(f, f3)


def test_sextic_vanishes_exactly_on_degeneracy(abar, sextics):
    rng = random.Random(11)
    f = sextics["A1"]
    A = abar["A1"]
    zeros = others = 0
    for _ in range(50):
        v = np.array([1] + [rng.randint(0, 126) for _ in range(5)])
        F = fiber_basis(v, P)
        meet = subspace_intersection_dim(A, F, P)
        val = f.evaluate(v)
        assert (val == 0) == (meet >= 1)
        if val == 0:
            zeros += 1
        else:
            others += 1
    assert others > 0  # the locus is a hypersurface, not everything


def test_equivariance(redmap, sextics):
    lam = equivariance_scalars(sextics["A1"], redmap)
    assert set(lam) == {name for name, _ in
                        __import__("epwforge.grouprep",
                                   fromlist=["COLUMN_WORDS"]).COLUMN_WORDS}
    assert all(v != 0 for v in lam.values())


def test_word_matrices_are_group_homomorphic(redmap):
    mats = reduced_word_matrices(redmap)
    ident = mats["id"]
    assert np.array_equal(ident, np.eye(6, dtype=np.int64))
    for M in mats.values():
        # group elements reduce to invertible matrices
        assert rank_mod_p(M, P) == 6


def test_degenerate_control_sextic():
    with pytest.raises(DegenerateDeterminant):
        epw_sextic(control_fiber_lagrangian(), 1, P)


def test_singular_locus_controls():
    R = PolyRing(P, 6)
    x16 = R.monomial((6, 0, 0, 0, 0, 0))
    r = certify_singular_locus(x16)
    assert r.dimension == 4 and not r.reduced_irreducible
    fermat = R.zero()
    for i in range(6):
        fermat = fermat + R.monomial(tuple(6 if j == i else 0
                                           for j in range(6)))
    r2 = certify_singular_locus(fermat)
    assert r2.dimension == -1  # smooth: empty singular locus
    assert r2.euler_member


def test_singular_locus_real(sextics):
    r = certify_singular_locus(sextics["A1"])
    assert (r.dimension, r.degree) == (2, 40)
    assert r.euler_member and r.reduced_irreducible


def test_sextic_hypersurface_hilbert(sextics):
    gb = buchberger([sextics["A1"]])
    hd = hilbert_data(gb)
    assert hd.dimension == 4 and hd.degree == 6


def test_y3_control_fails_fast():
    r = certify_y3_empty(control_fiber_lagrangian(), P)
    assert r["empty"] is False
    assert r["per_chart"][1] is False
    assert r["minor_counts"][1] == 0  # rank <= 7 identically on chart 1


def test_probe(abar):
    assert grassmannian_probe(abar["A1"]) is True
    assert grassmannian_probe(abar["A2"]) is True
    assert grassmannian_probe(control_fiber_lagrangian()) is False
    # the same subspace entered as an explicit decomposable span
    span = np.zeros((20, 10), np.int64)
    for k, i in enumerate([i for i, T in enumerate(TRIPLES) if 1 in T]):
        span[i, k] = 1
    assert grassmannian_probe(span) is False


def test_minors_of_control_chart():
    cm = chart_matrix(control_fiber_lagrangian(), 1, P)
    assert minors(cm.entries, 8) == []


def test_report_roundtrip_and_schema():
    rep = CertReport(
        schema_version=CertReport.SCHEMA,
        label="A1",
        config={"p": 127},
        inputs={"lagrangian": "xx"},
        results={"reduction": {"ok": True}},
        timings={"total": 1.0},
    )
    doc = rep.to_json()
    back = CertReport.from_json(doc)
    assert back.label == "A1" and back.all_verified
    doc["schema_version"] = 99
    with pytest.raises(SchemaVersionMismatch):
        CertReport.from_json(doc)


def test_kernel_mod_p_roundtrip():
    rng = random.Random(3)
    M = np.array([[rng.randint(0, 126) for _ in range(8)]
                  for _ in range(5)])
    K = kernel_mod_p(M, P)
    assert rank_mod_p(M, P) + K.shape[1] == 8
    assert not (M @ K % P).any()
