"""Command-line pipeline: build, certify, report.

Commands:
    build-lagrangians   enumerate 3.A7, build projectors, write A1/A2
    sextic              extract the chart sextic from a basis file
    certify             full certification of one basis file
    y3                  third-degeneracy-locus emptiness only
    report              merge report files into a consolidated summary

Shared flags: --prime/--root (reduction choice, default 127/25),
--degree-budget, --cache-dir, --jobs, --seed, --chart, --resume.
Exit status is nonzero whenever a requested verification fails, with
the violated invariant named on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass

import numpy as np

from .arith import ReductionMap
from .cache import Cache, hash_of
from .epw import (
    CertReport,
    epw_sextic,
    certify_y3_empty,
    reduce_lagrangian,
    run_certification,
)
from .errors import EpwforgeError
from .grouprep import (
    COLUMN_NAMES,
    GENERATOR_A,
    GENERATOR_B,
    LAGRANGIAN_CHARACTERS,
    TABLE1,
    GroupData,
    LagrangianBasis,
    build_projector,
    character_inner_product,
    character_of_subrep,
    class_partition,
    enumerate_group,
    extract_lagrangian,
)
from .zomega import ZW


@dataclass
class PipelineConfig:
    prime: int = 127
    root: int = 25
    charts: tuple[int, int] = (1, 2)
    degree_budget: int = 40
    cache_dir: str | None = None
    jobs: int = 1
    seed: int = 0
    probe: bool = True
    resume: str | None = None

    def reduction_map(self) -> ReductionMap:
        return ReductionMap(self.prime, self.root)

    def as_dict(self) -> dict:
        return {
            "prime": self.prime,
            "root": self.root,
            "charts": list(self.charts),
            "degree_budget": self.degree_budget,
            "jobs": self.jobs,
            "seed": self.seed,
            "probe": self.probe,
        }


def _generators_hash() -> str:
    return hash_of(
        json.dumps(GENERATOR_A.to_json(), sort_keys=True),
        json.dumps(GENERATOR_B.to_json(), sort_keys=True),
    )


def load_group(cache: Cache) -> GroupData:
    """Enumerate 3.A7, with the closure cached by generator content."""
    key = _generators_hash()
    hit = cache.get_npz("group", key)
    if hit is not None:
        G = GroupData(
            gens=[ZW.from_exact(GENERATOR_A), ZW.from_exact(GENERATOR_B)],
            elements_a=hit["elements_a"],
            elements_b=hit["elements_b"],
            parents=[tuple(r) for r in hit["parents"]],
            key_index={},
            center=[int(x) for x in hit["center"]],
            quotient_index={},
            element_quotient=hit["element_quotient"],
            quotient_rep_element=[int(x) for x in hit["quotient_rep"]],
        )
        for i in range(G.order):
            G.key_index[G.element(i).key()] = i
        from .grouprep import _canonical_key

        scalars = [G.element(i) for i in G.center]
        for qi, ei in enumerate(G.quotient_rep_element):
            ck, _ = _canonical_key(scalars, G.element(ei))
            G.quotient_index[ck] = qi
        return class_partition(G)
    G = class_partition(enumerate_group([GENERATOR_A, GENERATOR_B]))
    cache.put_npz(
        "group", key,
        elements_a=G.elements_a,
        elements_b=G.elements_b,
        parents=np.array(G.parents, np.int64),
        center=np.array(G.center, np.int64),
        element_quotient=G.element_quotient,
        quotient_rep=np.array(G.quotient_rep_element, np.int64),
    )
    return G


def lagrangian_doc(B: LagrangianBasis, chi_row, gens_hash: str) -> dict:
    doc = B.to_json()
    doc["schema_version"] = 1
    doc["character"] = {
        name: v.to_strings() for name, v in zip(COLUMN_NAMES, chi_row.values)
    }
    doc["character_row"] = LAGRANGIAN_CHARACTERS[B.label]
    doc["labeling_convention"] = (
        "A1 carries the 10-dimensional character whose [ab]-column value "
        "is -(1 - isqrt7)/2"
    )
    doc["generators_hash"] = gens_hash
    return doc


def cmd_build_lagrangians(cfg: PipelineConfig, out_dir: str) -> int:
    cache = Cache(cfg.cache_dir)
    t0 = time.time()
    G = load_group(cache)
    if G.order != 7560 or G.quotient_order != 2520:
        raise EpwforgeError(
            f"unexpected group: order {G.order}, quotient {G.quotient_order}"
        )
    if len(G.classes) != 9:
        raise EpwforgeError(f"expected 9 classes, found {len(G.classes)}")
    gens_hash = _generators_hash()
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    rows = {}
    for label in ("A1", "A2"):
        chi = TABLE1[LAGRANGIAN_CHARACTERS[label]]
        P = build_projector(G, chi)
        B = extract_lagrangian(P, label, G)
        got = character_of_subrep(B, G)
        if got.values != chi.values:
            raise EpwforgeError(
                f"{label}: extracted character does not match the table row"
            )
        rows[label] = got
        doc = lagrangian_doc(B, got, gens_hash)
        path = os.path.join(out_dir, f"{label}.json")
        with open(path, "w") as fh:
            json.dump(doc, fh, sort_keys=True, indent=1)
        paths.append(path)
        print(f"{label}: rank 10, isotropic, character row "
              f"{LAGRANGIAN_CHARACTERS[label]} verified -> {path}")
    ip = character_inner_product(G, rows["A1"], rows["A2"])
    if not ip.is_zero():
        raise EpwforgeError("character rows of A1/A2 are not orthogonal")
    self_ip = character_inner_product(G, rows["A1"], rows["A1"])
    if not self_ip.is_one():
        raise EpwforgeError("A1 character row is not normalized")
    print(f"character orthogonality <A1,A2>=0, <A1,A1>=1 verified "
          f"({time.time() - t0:.1f}s)")
    return 0


def load_lagrangian(path: str) -> tuple[LagrangianBasis, str]:
    with open(path, "rb") as fh:
        raw = fh.read()
    doc = json.loads(raw)
    from .errors import SchemaVersionMismatch

    if doc.get("schema_version") != 1:
        raise SchemaVersionMismatch(
            f"lagrangian schema {doc.get('schema_version')} unsupported"
        )
    return LagrangianBasis.from_json(doc), hash_of(raw)


def cmd_sextic(cfg: PipelineConfig, path: str, out: str | None) -> int:
    B, _ = load_lagrangian(path)
    m = cfg.reduction_map()
    Abar = reduce_lagrangian(B, m)
    f = epw_sextic(Abar, cfg.charts[0], m.p)
    doc = {
        "chart": cfg.charts[0],
        "p": m.p,
        "root": m.root,
        "label": B.label,
        "sextic": f.to_json(),
        "sextic_text": f.to_text(),
        "hash": f.content_hash(),
    }
    payload = json.dumps(doc, sort_keys=True, indent=1)
    if out:
        with open(out, "w") as fh:
            fh.write(payload)
        print(f"degree-{f.degree()} sextic ({len(f)} terms) -> {out}")
    else:
        print(payload)
    return 0


def render_report_text(rep: CertReport) -> str:
    lines = [
        f"certification report: {rep.label}",
        f"  p={rep.config['p']} root={rep.config['root']} "
        f"seed={rep.config['seed']} budget={rep.config['budget']}",
    ]
    for stage, res in rep.results.items():
        status = "PASS" if res.get("ok") else "FAIL"
        extra = ""
        if stage == "sextic" and res.get("ok"):
            extra = (f" degree={res['degree']} terms={res['terms']} "
                     f"cross-chart-scalar={res['cross_chart_scalar']}")
        if stage == "singular_locus" and "dimension" in res:
            extra = (f" dim={res['dimension']} degree={res['degree']} "
                     f"euler={res['euler_member']}")
        if stage == "y3_empty" and "per_chart" in res:
            extra = f" charts={res['per_chart']}"
        if "error" in res:
            extra = f" error={res['error']}: {res['detail']}"
        lines.append(f"  [{status}] {stage}{extra}")
    lines.append(f"  verified: {rep.all_verified}")
    return "\n".join(lines)


def cmd_certify(cfg: PipelineConfig, path: str, out: str | None) -> int:
    B, in_hash = load_lagrangian(path)
    m = cfg.reduction_map()
    cache = Cache(cfg.cache_dir)
    cache.ensure_root()
    rep = run_certification(
        B, m,
        budget=cfg.degree_budget,
        jobs=cfg.jobs,
        seed=cfg.seed,
        probe=cfg.probe,
        checkpoint_dir=cache.root,
        input_hash=in_hash,
        charts=cfg.charts,
        resume_checkpoint=cfg.resume,
        result_cache=cache,
    )
    payload = json.dumps(rep.to_json(), sort_keys=True, indent=1)
    if out:
        with open(out, "w") as fh:
            fh.write(payload)
    print(render_report_text(rep))
    if out:
        print(f"report -> {out}")
    if not rep.all_verified:
        failed = [k for k, v in rep.results.items() if not v.get("ok")]
        print(f"certification FAILED at: {', '.join(failed)}",
              file=sys.stderr)
        return 1
    return 0


def cmd_y3(cfg: PipelineConfig, path: str) -> int:
    B, _ = load_lagrangian(path)
    m = cfg.reduction_map()
    cache = Cache(cfg.cache_dir)
    cache.ensure_root()
    Abar = reduce_lagrangian(B, m)
    key = y3_cache_key(Abar, m.p, cfg.degree_budget)
    res = cache.get_json("stage", key)
    if res is None:
        res = y3_stage_result(Abar, m.p, cfg.degree_budget, cfg.jobs,
                              cache.root, f"{B.label}_p{m.p}_")
        cache.put_json("stage", key, res)
    print(f"{B.label}: Y[3] empty = {res['ok']}  per chart: "
          f"{res['per_chart']}")
    return 0 if res["ok"] else 1


def cmd_report(paths: list[str], out: str | None) -> int:
    if not paths:
        print("usage error: report needs at least one report file",
              file=sys.stderr)
        return 2
    reports = []
    for p in paths:
        with open(p) as fh:
            reports.append(CertReport.from_json(json.load(fh)))
    by_label: dict[str, list[CertReport]] = {}
    for r in reports:
        by_label.setdefault(r.label, []).append(r)
    summary = {"schema_version": CertReport.SCHEMA, "runs": [],
               "inconsistencies": []}
    for r in reports:
        summary["runs"].append({
            "label": r.label,
            "p": r.config["p"],
            "root": r.config["root"],
            "verified": r.all_verified,
            "verdicts": {
                stage: {
                    k: v for k, v in res.items()
                    if k in ("ok", "degree", "dimension", "error")
                }
                for stage, res in r.results.items()
            },
        })
    for label, runs in by_label.items():
        keys = set()
        for r in runs:
            sing = r.results.get("singular_locus", {})
            y3 = r.results.get("y3_empty", {})
            sex = r.results.get("sextic", {})
            keys.add((
                sex.get("degree"), sing.get("dimension"),
                sing.get("degree"), y3.get("ok"),
            ))
            if sex.get("ok") and not sex.get("cross_chart_scalar"):
                summary["inconsistencies"].append(
                    f"{label}: chart-scalar mismatch at p={r.config['p']}"
                )
        if len(keys) > 1:
            summary["inconsistencies"].append(
                f"{label}: verdicts differ across runs: {sorted(keys)}"
            )
    payload = json.dumps(summary, sort_keys=True, indent=1)
    if out:
        with open(out, "w") as fh:
            fh.write(payload)
    for run in summary["runs"]:
        print(f"{run['label']} @ p={run['p']}: verified={run['verified']}")
    if summary["inconsistencies"]:
        for msg in summary["inconsistencies"]:
            print(f"INCONSISTENT: {msg}", file=sys.stderr)
        return 1
    print("all runs consistent")
    return 0


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="epwforge",
        description=("construction and finite-field certification of the "
                     "A7-invariant EPW sextics"),
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--prime", type=int, default=127)
        p.add_argument("--root", type=int, default=25)
        p.add_argument("--chart", type=int, action="append",
                       help="chart index 1..6 (repeatable; default 1,2)")
        p.add_argument("--degree-budget", type=int, default=40)
        p.add_argument("--cache-dir", default=None)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--resume", default=None,
                       help="checkpoint file to resume a Groebner run from")

    b = sub.add_parser("build-lagrangians",
                       help="enumerate the group and write A1.json/A2.json")
    common(b)
    b.add_argument("--out-dir", default=".")

    s = sub.add_parser("sextic", help="extract the chart sextic")
    common(s)
    s.add_argument("lagrangian")
    s.add_argument("--out", default=None)

    c = sub.add_parser("certify", help="run the full certification")
    common(c)
    c.add_argument("lagrangian")
    c.add_argument("--out", default=None)
    c.add_argument("--no-probe", action="store_true")

    y = sub.add_parser("y3", help="third-degeneracy emptiness only")
    common(y)
    y.add_argument("lagrangian")

    r = sub.add_parser("report", help="merge certification reports")
    r.add_argument("reports", nargs="*")
    r.add_argument("--out", default=None)
    return ap


def config_from_args(args) -> PipelineConfig:
    charts = tuple(args.chart) if args.chart else (1, 2)
    if len(charts) == 1:
        charts = (charts[0], charts[0] % 6 + 1)
    return PipelineConfig(
        prime=args.prime,
        root=args.root,
        charts=charts[:2],
        degree_budget=args.degree_budget,
        cache_dir=args.cache_dir,
        jobs=args.jobs,
        seed=args.seed,
        probe=not getattr(args, "no_probe", False),
        resume=args.resume,
    )


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        if args.command == "report":
            return cmd_report(args.reports, args.out)
        cfg = config_from_args(args)
        if args.command == "build-lagrangians":
            return cmd_build_lagrangians(cfg, args.out_dir)
        if args.command == "sextic":
            return cmd_sextic(cfg, args.lagrangian, args.out)
        if args.command == "certify":
            return cmd_certify(cfg, args.lagrangian, args.out)
        if args.command == "y3":
            return cmd_y3(cfg, args.lagrangian)
        raise AssertionError("unreachable")
    except EpwforgeError as ex:
        print(f"{type(ex).__name__}: {ex}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
