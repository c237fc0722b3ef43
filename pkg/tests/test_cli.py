import json
import os

import pytest

from epwforge.cli import main
from epwforge.epw import CertReport
from epwforge.grouprep import LagrangianBasis
from epwforge.linalg import CYC, TRIPLES, ExactMatrix


@pytest.fixture(scope="module")
def workdir(tmp_path_factory):
    return tmp_path_factory.mktemp("cli")


@pytest.fixture(scope="module")
def built(workdir):
    out = workdir / "artifacts"
    cache = workdir / "cache"
    rc = main([
        "build-lagrangians", "--out-dir", str(out),
        "--cache-dir", str(cache),
    ])
    assert rc == 0
    return out, cache


def test_build_outputs(built):
    out, _ = built
    for label in ("A1", "A2"):
        path = out / f"{label}.json"
        assert path.exists()
        doc = json.loads(path.read_text())
        assert doc["rows"] == 20 and doc["cols"] == 10
        assert doc["field"] == "cyclotomic21"
        assert doc["label"] == label
        assert len(doc["character"]) == 9
        B = LagrangianBasis.from_json(doc)
        assert B.matrix.rows == 20


def test_rebuild_is_byte_identical(built, workdir):
    out, cache = built
    first = {l: (out / f"{l}.json").read_bytes() for l in ("A1", "A2")}
    rc = main([
        "build-lagrangians", "--out-dir", str(out),
        "--cache-dir", str(cache),
    ])
    assert rc == 0
    for label, blob in first.items():
        assert (out / f"{label}.json").read_bytes() == blob


def test_group_cache_written(built):
    _, cache = built
    assert any(name.startswith("group-") for name in os.listdir(cache))


def test_sextic_command(built, workdir):
    out, cache = built
    dst = workdir / "sextic.json"
    rc = main([
        "sextic", str(out / "A1.json"), "--out", str(dst),
        "--cache-dir", str(cache),
    ])
    assert rc == 0
    doc = json.loads(dst.read_text())
    assert doc["p"] == 127 and doc["chart"] == 1
    assert max(sum(e) for e, _ in
               [(t[0], t[1]) for t in doc["sextic"]["terms"]]) == 6


def test_certify_control_fails(built, workdir):
    out, cache = built
    cols = [i for i, T in enumerate(TRIPLES) if 1 in T]
    data = [[1 if i == c else 0 for c in cols] for i in range(20)]
    B = LagrangianBasis(ExactMatrix(CYC, data), "Fe1")
    doc = B.to_json()
    doc["schema_version"] = 1
    ctrl = workdir / "Fe1.json"
    ctrl.write_text(json.dumps(doc))
    rep_path = workdir / "report_fe1.json"
    rc = main([
        "certify", str(ctrl), "--out", str(rep_path),
        "--cache-dir", str(cache),
    ])
    assert rc == 1
    rep = CertReport.from_json(json.loads(rep_path.read_text()))
    assert not rep.all_verified
    assert rep.results["sextic"]["error"] == "DegenerateDeterminant"
    assert rep.results["y3_empty"]["ok"] is False
    assert rep.results["grassmannian_probe"]["ok"] is False


def test_schema_version_rejected(built, workdir):
    out, cache = built
    doc = json.loads((out / "A1.json").read_text())
    doc["schema_version"] = 7
    bad = workdir / "bad.json"
    bad.write_text(json.dumps(doc))
    rc = main(["certify", str(bad), "--cache-dir", str(cache)])
    assert rc == 1


def test_report_merge(workdir):
    reps = []
    for label, p, root in (("A1", 127, 25), ("A1", 43, 9)):
        rep = CertReport(
            schema_version=CertReport.SCHEMA,
            label=label,
            config={"p": p, "root": root, "seed": 0, "budget": 40},
            inputs={"lagrangian": "h"},
            results={
                "sextic": {"ok": True, "degree": 6, "cross_chart_scalar": 1},
                "singular_locus": {"ok": True, "dimension": 2, "degree": 40},
                "y3_empty": {"ok": True},
            },
            timings={"total": 0.0},
        )
        path = workdir / f"rep_{label}_{p}.json"
        path.write_text(json.dumps(rep.to_json()))
        reps.append(str(path))
    out = workdir / "summary.json"
    rc = main(["report", *reps, "--out", str(out)])
    assert rc == 0
    summary = json.loads(out.read_text())
    assert len(summary["runs"]) == 2
    assert summary["inconsistencies"] == []
    # verdict disagreement is flagged
    doc = json.loads((workdir / "rep_A1_43.json").read_text())
    doc["results"]["singular_locus"]["degree"] = 39
    (workdir / "rep_A1_43.json").write_text(json.dumps(doc))
    rc2 = main(["report", *reps])
    assert rc2 == 1


def test_report_empty_usage_error():
    assert main(["report"]) == 2


def test_certify_reports_deterministic(built, workdir):
    """Identical configuration gives identical reports apart from the
    timings section (the control basis fails fast, keeping this cheap)."""
    out, cache = built
    cols = [i for i, T in enumerate(TRIPLES) if 1 in T]
    data = [[1 if i == c else 0 for c in cols] for i in range(20)]
    doc = LagrangianBasis(ExactMatrix(CYC, data), "Fe1").to_json()
    doc["schema_version"] = 1
    ctrl = workdir / "Fe1_det.json"
    ctrl.write_text(json.dumps(doc))
    reps = []
    for k in range(2):
        path = workdir / f"rep_det_{k}.json"
        main(["certify", str(ctrl), "--out", str(path),
              "--cache-dir", str(cache)])
        loaded = json.loads(path.read_text())
        loaded.pop("timings")
        reps.append(json.dumps(loaded, sort_keys=True))
    assert reps[0] == reps[1]
