"""Command-line front end.

Every subcommand builds a JSON report, prints it (or a text summary) and
exits with 0 when everything checked holds, 1 when a checked statement
fails, 2 on bad input or an exhausted budget.

Reports contain no timing or worker counts unless ``--timing`` is given,
so the same inputs produce the same bytes regardless of ``--jobs``.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .abelian import h2_abelian
from .cohomology import (
    DEFAULT_BUDGET,
    Cocycle2Crossed,
    H2Classes,
    enumerate_z1_values,
    enumerate_z2_encodings,
    h1_classes,
    h2_quotient,
)
from .corpus import CORPUS_DIR, corpus_files
from .crossed import GammaCrossedModule
from .errors import CohomologyError, EnumerationBudgetExceeded, ValidationError
from .exactness import (
    SequenceAnalysis,
    ShortExactSequence,
    delta,
    verify_exactness_theorem,
    verify_pi_corollary,
    verify_serre_criterion,
)
from .gamma import Cocycle1, GammaGroup
from .groups import FiniteGroup, GroupHom
from .io import Loader, dumps
from .kernel import center_h2_action, enumerate_z2_kernel_encodings, h2_kernel, inn_module, lambda_map

ENV_PREFIX = "NACOH_"
EXIT_OK, EXIT_VIOLATION, EXIT_ERROR = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    budget: int = DEFAULT_BUDGET
    jobs: int = 1
    cache_dir: Path | None = None
    output_format: str = "json"
    timing: bool = False

    def __post_init__(self):
        if self.budget < 1:
            raise ValueError("budget must be at least 1")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")
        if self.output_format not in ("json", "text"):
            raise ValueError(f"unknown output format {self.output_format!r}")


def content_doc(obj) -> dict:
    """Everything that determines a computation: names, tables, homs, actions."""
    if isinstance(obj, FiniteGroup):
        return {"group": obj.name, "table": [list(r) for r in obj.table]}
    if isinstance(obj, GammaGroup):
        return {"gamma_group": obj.name, "gamma": content_doc(obj.gamma), "group": content_doc(obj.group),
                "action": [list(p) for p in obj.act]}
    if isinstance(obj, GroupHom):
        return {"source": content_doc(obj.source), "target": content_doc(obj.target), "images": list(obj.images)}
    if isinstance(obj, GammaCrossedModule):
        return {"crossed_module": obj.name, "A": content_doc(obj.A), "G": content_doc(obj.G),
                "rho": list(obj.rho.images), "action": [list(p) for p in obj.g_act]}
    if isinstance(obj, ShortExactSequence):
        return {"ses": obj.name, "A": content_doc(obj.A), "B": content_doc(obj.B), "C": content_doc(obj.C),
                "i": list(obj.i.images), "j": list(obj.j.images)}
    if isinstance(obj, Cocycle1):
        return {"carrier": content_doc(obj.carrier), "values": list(obj.values)}
    if isinstance(obj, Cocycle2Crossed):
        return {"coefficients": content_doc(obj.module), "u": list(obj.u), "psi": list(obj.psi)}
    raise TypeError(f"no content document for {type(obj).__name__}")


@dataclass(frozen=True)
class CacheKey:
    operation: str
    digest: str

    @classmethod
    def of(cls, operation: str, inputs: list, budget: int, options: dict | None = None) -> CacheKey:
        doc = {"operation": operation, "inputs": [content_doc(x) for x in inputs], "budget": budget,
               "options": options or {}, "version": __version__}
        text = json.dumps(doc, sort_keys=True, separators=(",", ":"))
        return cls(operation, hashlib.sha256(text.encode()).hexdigest())

    def path(self, cache_dir: Path) -> Path:
        return Path(cache_dir) / f"{self.operation}-{self.digest}.json"


# -- report pieces --------------------------------------------------------------------------


def _matrix(u, n):
    return [list(u[s * n:(s + 1) * n]) for s in range(n)]


def _encoding_doc(enc, n, tail="psi"):
    nn = n * n
    return {"u": _matrix(enc[:nn], n), tail: list(enc[nn:])}


def _classes_doc(h: H2Classes, tail="psi") -> list[dict]:
    return [
        {"index": k, **_encoding_doc(c.rep, h.n_gamma, tail), "size": c.size, "neutral": c.neutral, "unit": c.unit}
        for k, c in enumerate(h.classes)
    ]


def _h2_doc(h: H2Classes, tail="psi") -> dict:
    return {
        "kind": h.kind,
        "class_count": len(h),
        "cocycle_count": len(h.cocycles),
        "neutral_classes": h.neutral_classes,
        "unit_class": h.unit_class,
        "classes": _classes_doc(h, tail),
    }


def _coefficients(obj) -> GammaCrossedModule:
    if isinstance(obj, GammaCrossedModule):
        return obj
    if isinstance(obj, GammaGroup):
        return inn_module(obj)
    raise ValidationError(f"expected a crossed module or a Gamma-group, got {type(obj).__name__}")


def _expect(obj, cls, what):
    if not isinstance(obj, cls):
        raise ValidationError(f"expected {what}, got {type(obj).__name__}")
    return obj


# -- commands ---------------------------------------------------------------------------------
# Each returns (passed, result-dict).


def cmd_validate(loader, args, cfg):
    results = []
    for path in args.files:
        # one loader per file, so unrelated files may reuse names
        obj = Loader(args.search_dir or ()).load(path)
        results.append({"file": Path(path).name, "kind": type(obj).__name__, "name": getattr(obj, "name", None),
                        "valid": True})
    return True, {"objects": results}


def cmd_z1(loader, args, cfg):
    X = _expect(loader.load(args.group), GammaGroup, "a Gamma-group")
    cocycles = enumerate_z1_values(X, cfg.budget)
    return True, {"carrier": X.name, "cocycle_count": len(cocycles), "cocycles": [list(c) for c in cocycles]}


def cmd_h1(loader, args, cfg):
    X = _expect(loader.load(args.group), GammaGroup, "a Gamma-group")
    h = h1_classes(X, cfg.budget)
    classes = [{"index": k, "rep": list(r), "size": len(h.members(k))} for k, r in enumerate(h.reps)]
    return True, {"carrier": X.name, "class_count": len(h), "cocycle_count": len(h.cocycles),
                  "trivial_class": h.trivial_class, "classes": classes}


def cmd_z2(loader, args, cfg):
    M = _coefficients(loader.load(args.coefficients))
    stats = {}
    encs = enumerate_z2_encodings(M, cfg.budget, cfg.jobs, stats)
    n = M.gamma.order
    return True, {"coefficients": M.name, "cocycle_count": len(encs),
                  "cocycles": [_encoding_doc(e, n) for e in encs],
                  "budget_usage": {"states": stats["states"], "space": stats["space"]}}


def cmd_h2(loader, args, cfg):
    M = _coefficients(loader.load(args.coefficients))
    stats = {}
    h = h2_quotient(M, args.kind, cfg.budget, cfg.jobs, stats=stats)
    return True, {"coefficients": M.name, **_h2_doc(h),
                  "budget_usage": {"states": stats["states"], "space": stats["space"]}}


def cmd_h2_kernel(loader, args, cfg):
    A = _expect(loader.load(args.group), GammaGroup, "a Gamma-group")
    kz = enumerate_z2_kernel_encodings(A, cfg.budget)
    h = h2_kernel(A, cfg.budget, kz)
    aut = A.aut
    return True, {"group": A.name, **_h2_doc(h, tail="f"),
                  "automorphisms": [list(aut.realize(k)) for k in range(len(aut.perms))]}


def cmd_lambda_check(loader, args, cfg):
    A = _expect(loader.load(args.group), GammaGroup, "a Gamma-group")
    lam = lambda_map(A, cfg.budget, cfg.jobs)
    ca = center_h2_action(A, cfg.budget, cfg.jobs)
    lam_doc = {
        "H2(A)": len(lam.h2), "thick": len(lam.thick), "thin": len(lam.thin),
        "map": list(lam.lam), "to_thick": list(lam.to_thick),
        "cocycle_bijection": lam.cocycle_bijection, "round_trip": lam.round_trip, "descends": lam.descends,
        "thick_bijection": lam.thick_bijection, "flags_preserved": lam.flags_preserved,
        "injective": lam.injective, "surjective": lam.surjective,
        "second_proof_checked": lam.second_proof_checked, "second_proof_failures": lam.second_proof_failures,
        "passed": lam.passed,
    }
    ca_doc = {
        "H2(Z)": len(ca.center_h2), "action": ca.action, "well_defined": ca.well_defined,
        "simply_transitive": ca.simply_transitive, "mu": list(ca.mu), "mu_bijective": ca.mu_bijective,
        "mu_factors_through_iota": ca.mu_factors_through_iota, "lambda_equivariant": ca.lambda_equivariant,
        "passed": ca.passed,
    }
    return lam.passed and ca.passed, {"group": A.name, "lambda": lam_doc, "center_action": ca_doc}


def cmd_h2_abelian(loader, args, cfg):
    A = _expect(loader.load(args.group), GammaGroup, "a Gamma-group")
    h = h2_abelian(A, cfg.budget)
    n = A.gamma.order
    classes = [{"index": k, "u": _matrix(r, n), "size": len(h.coboundaries)} for k, r in enumerate(h.reps)]
    return True, {"group": A.name, "class_count": len(h), "cocycle_count": len(h.cocycles),
                  "coboundary_count": len(h.coboundaries), "classes": classes}


def _load_ses(loader, path) -> ShortExactSequence:
    return _expect(loader.load(path), ShortExactSequence, "a short exact sequence")


def cmd_delta(loader, args, cfg):
    ses = _load_ses(loader, args.ses)
    c = loader.load(args.cocycle)
    if isinstance(c, Cocycle1) and c.carrier != ses.C:
        raise ValidationError(f"cocycle carrier {c.carrier.name} is not {ses.C.name}")
    an = SequenceAnalysis(ses, cfg.budget, cfg.jobs)
    d = delta(ses, c, cfg.budget, an)
    values = tuple(c.values) if isinstance(c, Cocycle1) else tuple(c)
    k = an.h1_C.classify(values)
    n = ses.gamma.order
    return True, {"ses": ses.name, "cocycle": list(values), "h1_class": k, "lifts": k in an.j_h1_image,
                  "delta": {**_encoding_doc(d.cocycle.encoding, n), "class": d.class_index,
                            "neutral": d.neutral, "unit": d.unit}}


def cmd_verify_exactness(loader, args, cfg):
    ses = _load_ses(loader, args.ses)
    return _exactness_result(ses, cfg.budget, cfg.jobs)


def _exactness_result(ses, budget, jobs):
    an = SequenceAnalysis(ses, budget, jobs)
    report = verify_exactness_theorem(ses, budget, jobs, an)
    pi = verify_pi_corollary(ses, budget, jobs, an)
    report.lemma, report.corollary, report.corollary_matches_clause_i = pi.lemma, pi.corollary, pi.matches_clause_i
    doc = report.to_json()
    return report.passed, doc


def cmd_serre_check(loader, args, cfg):
    ses = _load_ses(loader, args.ses)
    return _serre_result(ses, cfg.budget, cfg.jobs)


def _serre_result(ses, budget, jobs):
    r = verify_serre_criterion(ses, budget, jobs)
    return r["passed"], {"ses": ses.name, **r}


def _corpus_entry(path: str, budget: int):
    """One report-all entry; runs in a worker process."""
    try:
        ses = _load_ses(Loader(), path)
        ok_e, exact = _exactness_result(ses, budget, 1)
        entry = {"file": Path(path).name, "exactness": exact}
        ok = ok_e
        if ses.A.group.is_abelian:
            ok_s, serre = _serre_result(ses, budget, 1)
            entry["serre"] = serre
            ok = ok and ok_s
        entry["passed"] = ok
        return ok, entry
    except CohomologyError as e:
        return None, {"file": Path(path).name, "error": _error_doc(e)}


def cmd_report_all(loader, args, cfg):
    files = [str(p) for p in corpus_files(args.corpus)]
    if not files:
        raise ValidationError(f"no corpus files in {args.corpus}")
    if cfg.jobs > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=min(cfg.jobs, len(files))) as pool:
            results = list(pool.map(_corpus_entry, files, [cfg.budget] * len(files)))
    else:
        results = [_corpus_entry(f, cfg.budget) for f in files]
    errors = [e for ok, e in results if ok is None]
    if errors:
        raise CohomologyError(f"{len(errors)} corpus entries failed to run: {errors[0]['file']}")
    entries = [e for _, e in results]
    summary = [{"file": e["file"], "passed": e["passed"]} for e in entries]
    return all(ok for ok, _ in results), {"entries": entries, "summary": summary}


COMMANDS = {
    "validate": cmd_validate,
    "z1": cmd_z1,
    "h1": cmd_h1,
    "z2": cmd_z2,
    "h2": cmd_h2,
    "h2-kernel": cmd_h2_kernel,
    "lambda-check": cmd_lambda_check,
    "h2-abelian": cmd_h2_abelian,
    "delta": cmd_delta,
    "verify-exactness": cmd_verify_exactness,
    "serre-check": cmd_serre_check,
    "report-all": cmd_report_all,
}


# -- running --------------------------------------------------------------------------------


def _error_doc(e: Exception) -> dict:
    doc = {"type": type(e).__name__, "message": str(e)}
    if isinstance(e, EnumerationBudgetExceeded):
        doc.update(what=e.what, budget=e.budget, estimated_space=e.space_size)
    witness = getattr(e, "witness", None)
    if witness is not None:
        doc["witness"] = json.loads(json.dumps(witness, default=list))
    return doc


def _input_paths(args) -> list[str]:
    paths = []
    for attr in ("files", "group", "coefficients", "ses", "cocycle"):
        v = getattr(args, attr, None)
        if v is None:
            continue
        paths += v if isinstance(v, list) else [v]
    return paths


def _cache_key(args, cfg) -> CacheKey | None:
    """Content-hash key, or None when the inputs cannot be loaded or hashed."""
    options = {k: getattr(args, k) for k in ("kind",) if hasattr(args, k)}
    try:
        if args.command == "report-all":
            inputs = [Loader().load(p) for p in corpus_files(args.corpus)]
        else:
            loader = Loader(args.search_dir or ())
            inputs = [loader.load(p) for p in _input_paths(args)]
        return CacheKey.of(args.command, inputs, cfg.budget, options)
    except (CohomologyError, TypeError):
        return None


def run(args, cfg: RunConfig) -> tuple[dict, int]:
    """Run one parsed command; returns (report, exit code)."""
    report = {"command": args.command, "budget": cfg.budget}
    start = time.perf_counter()
    try:
        loader = Loader(args.search_dir or ())
        passed, result = COMMANDS[args.command](loader, args, cfg)
        report["result"] = result
        report["passed"] = passed
        code = EXIT_OK if passed else EXIT_VIOLATION
    except (CohomologyError, ValueError) as e:
        report["error"] = _error_doc(e)
        report["passed"] = False
        code = EXIT_ERROR
    if cfg.timing:
        report["timing_seconds"] = round(time.perf_counter() - start, 6)
    report["exit_code"] = code
    return report, code


def run_cached(args, cfg: RunConfig) -> tuple[dict, int]:
    key = _cache_key(args, cfg) if cfg.cache_dir and not cfg.timing else None
    if key is not None:
        p = key.path(cfg.cache_dir)
        if p.exists():
            report = json.loads(p.read_text())
            return report, report["exit_code"]
    report, code = run(args, cfg)
    if key is not None and "error" not in report:
        cfg.cache_dir.mkdir(parents=True, exist_ok=True)
        tmp = key.path(cfg.cache_dir).with_suffix(".tmp")
        tmp.write_text(dumps(report))
        tmp.replace(key.path(cfg.cache_dir))
    return report, code


def render_text(report: dict) -> str:
    lines = [f"{report['command']}: " + ("PASS" if report.get("passed") else "FAIL")]
    if "error" in report:
        err = report["error"]
        lines.append(f"error: {err['type']}: {err['message']}")
        if "estimated_space" in err:
            lines.append(f"estimated space: {err['estimated_space']} (budget {err['budget']})")
        return "\n".join(lines) + "\n"
    res = report["result"]
    for key in ("class_count", "cocycle_count", "coboundary_count", "neutral_classes", "unit_class"):
        if key in res:
            lines.append(f"{key}: {res[key]}")
    for c in res.get("classes", []):
        rep = {k: v for k, v in c.items() if k in ("rep", "u", "psi", "f")}
        flags = [f for f in ("neutral", "unit") if c.get(f)]
        lines.append(f"  [{c['index']}] size {c['size']} {json.dumps(rep, sort_keys=True)} {' '.join(flags)}".rstrip())
    if "summary" in res:
        for s in res["summary"]:
            lines.append(f"  {s['file']}: {'pass' if s['passed'] else 'FAIL'}")
    if "witnesses" in res and res["witnesses"]:
        lines.append(f"witnesses: {json.dumps(res['witnesses'], sort_keys=True)}")
    if "failures" in res and res["failures"]:
        lines.append(f"failures: {json.dumps(res['failures'], sort_keys=True)}")
    if "objects" in res:
        for o in res["objects"]:
            lines.append(f"  {o['file']}: {o['kind']} {o['name']} ok")
    if "delta" in res:
        d = res["delta"]
        lines.append(f"delta class {d['class']} neutral={d['neutral']} lifts={res['lifts']}")
    if "lambda" in res:
        lines.append(f"lambda bijective: {res['lambda']['injective'] and res['lambda']['surjective']}")
        lines.append(f"center action simply transitive: {res['center_action']['simply_transitive']}")
    return "\n".join(lines) + "\n"


def _env(name, cast, default):
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None or raw == "":
        return default
    try:
        return cast(raw)
    except ValueError:
        raise SystemExit(f"nacoh: bad value for {ENV_PREFIX}{name}: {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, help=f"candidate-state cap (env {ENV_PREFIX}BUDGET, default 10^7)")
    common.add_argument("--jobs", type=int, help=f"worker processes (env {ENV_PREFIX}JOBS, default 1)")
    common.add_argument("--cache-dir", help=f"result cache directory (env {ENV_PREFIX}CACHE_DIR)")
    common.add_argument("--format", choices=("json", "text"), help=f"output format (env {ENV_PREFIX}FORMAT)")
    common.add_argument("--timing", action="store_true", help="add wall-clock time to the report")
    common.add_argument("--search-dir", action="append", help="extra directory for name references")

    p = argparse.ArgumentParser(prog="nacoh", description="Nonabelian H^1 and H^2 of finite Gamma-groups.")
    p.add_argument("--version", action="version", version=f"nacoh {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="load and validate input files")
    s.add_argument("files", nargs="+")
    for name, help_ in (("z1", "list 1-cocycles"), ("h1", "H^1 classes")):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("--group", required=True, help="Gamma-group file")
    s = sub.add_parser("z2", parents=[common], help="list 2-cocycles with crossed-module coefficients")
    s.add_argument("--coefficients", required=True, help="crossed module (or Gamma-group A for A -> Inn A)")
    s = sub.add_parser("h2", parents=[common], help="thick or thin H^2 with crossed-module coefficients")
    s.add_argument("--coefficients", required=True)
    s.add_argument("--kind", choices=("thick", "thin"), default="thin")
    for name, help_ in (
        ("h2-kernel", "H^2 of the Gamma-kernel of A"),
        ("lambda-check", "compare H^2(A) with H^2(A -> Inn A); center action"),
        ("h2-abelian", "H^2 of an abelian Gamma-module"),
    ):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("--group", required=True, help="Gamma-group file")
    s = sub.add_parser("delta", parents=[common], help="connecting map of one 1-cocycle")
    s.add_argument("--ses", required=True)
    s.add_argument("--cocycle", required=True, help="1-cocycle file with carrier C")
    for name, help_ in (
        ("verify-exactness", "check the exact sequence class by class"),
        ("serre-check", "abelian kernel: lifting criterion via the twisted H^2"),
    ):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("--ses", required=True)
    s = sub.add_parser("report-all", parents=[common], help="verify every corpus sequence")
    s.add_argument("--corpus", default=str(CORPUS_DIR))
    return p


def config_from(args) -> RunConfig:
    budget = args.budget if args.budget is not None else _env("BUDGET", int, DEFAULT_BUDGET)
    jobs = args.jobs if args.jobs is not None else _env("JOBS", int, 1)
    cache = args.cache_dir if args.cache_dir is not None else _env("CACHE_DIR", str, None)
    fmt = args.format if args.format is not None else _env("FORMAT", str, "json")
    return RunConfig(budget, jobs, Path(cache) if cache else None, fmt, args.timing)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from(args)
    except ValueError as e:
        parser.error(str(e))
    report, code = run_cached(args, cfg)
    out = dumps(report) if cfg.output_format == "json" else render_text(report)
    sys.stdout.write(out)
    sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
