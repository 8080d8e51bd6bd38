"""Acceptance criteria, one test per criterion.

Each test prints a single line ``ACCEPTANCE <n> PASS|FAIL <detail>`` and
then asserts. Run ``python tests/test_acceptance.py`` to get just the lines.
All checks are exact and exhaustive over the stated inputs.
"""

from __future__ import annotations

import itertools
import json
import subprocess
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles as o  # noqa: E402
from conftest import GRID, gamma_group  # noqa: E402
from nacoh.abelian import h2_abelian  # noqa: E402
from nacoh.cohomology import (  # noqa: E402
    C1Element,
    Cocycle2Crossed,
    act_c1,
    act_g,
    act_w,
    c1_generators,
    c1_mul,
    cocycle_witness,
    enumerate_z2_encodings,
    g_star_w,
    h2_quotient,
    raw_act_g,
    raw_act_w,
    tables,
)
from nacoh.corpus import CORPUS_DIR, load_corpus  # noqa: E402
from nacoh.crossed import GammaCrossedModule, to_trivial_crossed_module  # noqa: E402
from nacoh.errors import ValidationError  # noqa: E402
from nacoh.exactness import (  # noqa: E402
    SequenceAnalysis,
    delta_serre,
    verify_exactness_theorem,
    verify_pi_corollary,
    verify_serre_criterion,
)
from nacoh.gamma import GammaGroup  # noqa: E402
from nacoh.groups import GroupHom, automorphisms_by_scan, compute_aut, cyclic, direct_product, symmetric  # noqa: E402
from nacoh.io import dumps, gamma_group_doc, group_doc  # noqa: E402
from nacoh.kernel import center_h2_action, inn_module, lambda_map  # noqa: E402

TIME_LIMIT = 60.0


def report(n: int, ok: bool, detail: str, elapsed: float) -> None:
    print(f"ACCEPTANCE {n} {'PASS' if ok else 'FAIL'} ({elapsed:.1f}s) {detail}", flush=True)


def _grid_modules():
    for a, g, inv in GRID:
        yield f"{a}{'_inv' if inv else ''}/{g}", inn_module(gamma_group(a, g, inv))


# -- 1. cocycle closure -------------------------------------------------------------------


def criterion_1():
    violations, checked = [], 0
    for label, M in _grid_modules():
        T = tables(M)
        nn = T.n * T.n
        encs = enumerate_z2_encodings(M)
        ws = list(itertools.product(range(M.A.group.order), repeat=T.n))
        for z in encs:
            for g in range(M.G.group.order):
                zg = raw_act_g(T, g, z)
                checked += 1
                if cocycle_witness(T, zg[:nn], zg[nn:]) is not None:
                    violations.append((label, "g", z, g))
                for w in ws:
                    for out, kind in ((raw_act_w(T, w, z), "w"), (raw_act_w(T, w, zg), "c1")):
                        checked += 1
                        if cocycle_witness(T, out[:nn], out[nn:]) is not None:
                            violations.append((label, kind, z, w, g))
        # the public entry points validate their outputs too
        z = Cocycle2Crossed.from_encoding(M, encs[-1])
        act_c1(C1Element(ws[-1], M.G.group.order - 1), z)
    return not violations, f"{checked} action outputs checked, {len(violations)} violations {violations[:3]}"


# -- 2. action laws ---------------------------------------------------------------------------


def criterion_2():
    violations, checked = [], 0
    for label, M in _grid_modules():
        encs = enumerate_z2_encodings(M)
        ident = C1Element.identity(M)
        gens = [ident] + c1_generators(M)
        ws = [e.w for e in gens]
        for enc in encs:
            z = Cocycle2Crossed.from_encoding(M, enc)
            checked += 1
            if act_c1(ident, z) != z:
                violations.append((label, "identity", enc))
            for e in gens:
                for f in gens:
                    checked += 1
                    if act_c1(e, act_c1(f, z)) != act_c1(c1_mul(M, e, f), z):
                        violations.append((label, "associativity", enc, e, f))
            for g in range(M.G.group.order):
                for w in ws:
                    checked += 1
                    # g * (w * z) = (g * w) * (g * z)
                    if act_g(g, act_w(w, z)) != act_w(g_star_w(M, g, w), act_g(g, z)):
                        violations.append((label, "compatibility", enc, g, w))
    return not violations, f"{checked} identities checked, {len(violations)} violations {violations[:3]}"


# -- 3. the bijection lambda_A and the second proof ------------------------------------------


def criterion_3():
    failures, lines = [], []
    s3_time = None
    for a, g, inv in GRID:
        t0 = time.perf_counter()
        r = lambda_map(gamma_group(a, g, inv))
        dt = time.perf_counter() - t0
        if (a, g, inv) == ("S3", "Z2", False):
            s3_time = dt
        lines.append(f"{a}{'_inv' if inv else ''}/{g}:{len(r.h2)}")
        if not r.passed:
            failures.append((a, g, inv, r.injective, r.surjective, r.second_proof_failures[:2]))
    ok = not failures and s3_time is not None and s3_time < 300
    return ok, f"classes {' '.join(lines)}; S3/Z2 in {s3_time:.2f}s; failures {failures}"


# -- 4. center action and mu -----------------------------------------------------------------


def criterion_4():
    failures, lines = [], []
    for a in ("Z2", "Z4", "Z2xZ2", "S3"):
        r = center_h2_action(gamma_group(a, "Z2"))
        lines.append(f"{a}:|H2(Z)|={len(r.center_h2)},|H2(A)|={len(r.h2)}")
        if not r.passed:
            failures.append((a, r.well_defined, r.simply_transitive, r.mu_bijective, r.mu_factors_through_iota,
                             r.lambda_equivariant))
    return not failures, f"{' '.join(lines)}; failures {failures}"


# -- 5. exactness theorem ---------------------------------------------------------------------


def criterion_5():
    failures = []
    rows = 0
    for ses in load_corpus():
        r = verify_exactness_theorem(ses)
        rows += len(r.clause_i) + len(r.clause_ii) + len(r.clause_iii)
        if not r.passed:
            failures.append((ses.name, r.witnesses[:2]))
    ses = {s.name: s for s in load_corpus()}["Z2-Z4-Z2_triv_Z2"]
    an = SequenceAnalysis(ses)
    r = verify_exactness_theorem(ses, analysis=an)
    neutral = [row["class"] for row in r.clause_i if row["delta_neutral"]]
    checkpoints = {
        "|H1(C)|=2": len(an.h1_C) == 2,
        "|im j_*|=1": len(an.j_h1_image) == 1,
        "only trivial class neutral": neutral == [an.h1_C.trivial_class],
    }
    ok = not failures and all(checkpoints.values())
    return ok, f"{rows} class rows; checkpoints {checkpoints}; failures {failures}"


# -- 6. pi-lemma and corollary ---------------------------------------------------------------


def criterion_6():
    failures = []
    for ses in load_corpus():
        r = verify_pi_corollary(ses)
        if not r.passed:
            failures.append((ses.name, [x for x in r.lemma + r.corollary if not x["ok"]][:2], r.matches_clause_i))
    return not failures, f"{len(load_corpus())} sequences; failures {failures}"


# -- 7. Serre recovery ------------------------------------------------------------------------


def criterion_7():
    sub = {"lifts iff Delta_S = 0": True, "pi_*(Delta) = lambda_psi(Delta_S)": True, "zeta surjective": True,
           "lambda_psi bijective onto fibre": True, "lambda_psi neutral iff zero": True}
    failures = []
    for ses in load_corpus():
        r = verify_serre_criterion(ses)
        for row in r["rows"]:
            if row["lifts"] != row["delta_S_zero"]:
                sub["lifts iff Delta_S = 0"] = False
                failures.append((ses.name, "criterion", row["class"]))
            if row["pi_delta"] != row["lambda_psi_delta_S"] or not row["lift_independent"]:
                sub["pi_*(Delta) = lambda_psi(Delta_S)"] = False
                failures.append((ses.name, "image", row["class"]))
        if not (r["zeta_surjective"] and r["zeta_well_defined"]):
            sub["zeta surjective"] = False
            failures.append((ses.name, "zeta"))
        if not r["lambda_psi_all_bijective"]:
            sub["lambda_psi bijective onto fibre"] = False
            bad = [f for f in r["failures"] if "injective" in f]
            failures.append((ses.name, "lambda_psi", [(f["psi"], f["h2_size"], f["image"]) for f in bad]))
        if not r["lambda_psi_neutral_iff_zero"]:
            sub["lambda_psi neutral iff zero"] = False
            failures.append((ses.name, "neutral"))

    # derived checkpoints against independent coboundary scans
    corpus = {s.name: s for s in load_corpus()}
    Z2 = o.cyclic_table(2)
    checkpoints = {"|H2(Z2,Z2)|=2": o.abelian_h2_count(Z2, Z2, [(0, 1), (0, 1)]) == 2
                   and len(h2_abelian(gamma_group("Z2", "Z2"))) == 2}
    z4 = corpus["Z2-Z4-Z2_triv_Z2"]
    sd = delta_serre(z4, (0, 1))
    checkpoints["Delta_S(c) != 0 for Z4"] = (not sd.is_zero) and not o.is_abelian_coboundary(
        [list(r) for r in z4.gamma.table], [list(r) for r in z4.A.group.table], list(z4.A.act), sd.u)
    s3_zero = True
    for name in ("Z3-S3-Z2_triv_Z2", "Z3-S3-Z2_triv_Z3", "Z3-S3-Z2_conj_Z2"):
        ses = corpus[name]
        an = SequenceAnalysis(ses)
        for rep in an.h1_C.reps:
            sd = delta_serre(ses, rep, analysis=an)
            tw = sd.h2.module
            brute = o.is_abelian_coboundary([list(r) for r in ses.gamma.table], [list(r) for r in ses.A.group.table],
                                            list(tw.act), sd.u)
            s3_zero = s3_zero and sd.is_zero and brute
    checkpoints["Delta_S = 0 for S3"] = s3_zero
    ok = all(sub.values()) and all(checkpoints.values())
    return ok, f"sub-claims {sub}; checkpoints {checkpoints}; failures {failures}"


# -- 8. oracle equivalences ----------------------------------------------------------------------


def _small_groups():
    Z2 = cyclic(2)
    return [cyclic(1), Z2, cyclic(3), cyclic(4), direct_product(Z2, Z2), cyclic(5), cyclic(6), symmetric(3)]


def _all_small_crossed_modules():
    """Every crossed module over Gamma = Z2 with |A| <= 3, |G| <= 2."""
    gam = cyclic(2)
    out = []
    for A in (cyclic(1), cyclic(2), cyclic(3)):
        for Gg in (cyclic(1), cyclic(2)):
            autA = automorphisms_by_scan(A)
            for sa in autA:
                for sg in automorphisms_by_scan(Gg):
                    try:
                        XA = GammaGroup(gam, A, [tuple(range(A.order)), sa])
                        XG = GammaGroup(gam, Gg, [tuple(range(Gg.order)), sg])
                    except ValidationError:
                        continue
                    for rho in itertools.product(range(Gg.order), repeat=A.order):
                        for act in itertools.product(autA, repeat=Gg.order):
                            try:
                                h = GroupHom(A, Gg, rho)
                                out.append(GammaCrossedModule(XA, XG, h, act))
                            except ValidationError:
                                continue
    return out


def criterion_8():
    discrepancies = []
    for A in _small_groups():
        if sorted(compute_aut(A).perms) != sorted(automorphisms_by_scan(A)):
            discrepancies.append(("aut", A.name))
    modules = _all_small_crossed_modules()
    for M in modules:
        raw = o.Crossed([list(r) for r in M.gamma.table], [list(r) for r in M.A.group.table],
                        [list(r) for r in M.G.group.table], list(M.rho.images), list(M.g_act), list(M.A.act),
                        list(M.G.act))
        if enumerate_z2_encodings(M) != raw.z2():
            discrepancies.append(("z2", M.name))
    abelian = 0
    for a, g, inv in GRID:
        X = gamma_group(a, g, inv)
        if not X.group.is_abelian:
            continue
        abelian += 1
        h = h2_abelian(X)
        thin = h2_quotient(to_trivial_crossed_module(X), "thin")
        tail = (0,) * X.gamma.order
        same = len(h) == len(thin) and all(
            thin.classify(h.reps[h.classify(u)] + tail) == thin.classify(u + tail) for u in h.cocycles)
        if not same:
            discrepancies.append(("h2_abelian", X.name))
    return not discrepancies, (f"{len(_small_groups())} aut scans, {len(modules)} crossed modules, "
                               f"{abelian} abelian modules; discrepancies {discrepancies}")


# -- 9. CLI determinism -----------------------------------------------------------------------


def _cli_inputs(d: Path) -> list[list[str]]:
    S3, Z2 = symmetric(3), cyclic(2)
    X = gamma_group("S3", "Z2")
    (d / "s3.json").write_text(dumps({"definitions": [group_doc(Z2), group_doc(S3)], **gamma_group_doc(X)}))
    Y = gamma_group("Z2", "Z2")
    (d / "z2.json").write_text(dumps({"definitions": [group_doc(Z2)], **gamma_group_doc(Y)}))
    (d / "z2to1.json").write_text(dumps({
        "definitions": [group_doc(Z2), {"name": "one", "table": [[0]]}, gamma_group_doc(Y),
                        {"name": "one_t", "gamma": "Z2", "group": "one", "action": [[0], [0]]}],
        "name": "Z2->1", "A": Y.name, "G": "one_t", "rho": [0, 0], "action": [[0, 1]]}))
    (d / "c.json").write_text(dumps({"carrier": "Z2_triv_Z2", "values": [0, 1]}))
    z4 = str(CORPUS_DIR / "Z2-Z4-Z2_triv_Z2.json")
    s3z3 = str(CORPUS_DIR / "Z3-S3-Z2_triv_Z3.json")
    return [
        ["validate", str(d / "s3.json"), z4],
        ["z1", "--group", str(d / "s3.json")],
        ["h1", "--group", str(d / "s3.json")],
        ["z2", "--coefficients", str(d / "s3.json")],
        ["h2", "--coefficients", str(d / "z2to1.json"), "--kind", "thin"],
        ["h2", "--coefficients", str(d / "s3.json"), "--kind", "thick"],
        ["h2-kernel", "--group", str(d / "s3.json")],
        ["lambda-check", "--group", str(d / "s3.json")],
        ["h2-abelian", "--group", str(d / "z2.json")],
        ["delta", "--ses", z4, "--cocycle", str(d / "c.json"), "--search-dir", str(CORPUS_DIR)],
        ["verify-exactness", "--ses", z4],
        ["serre-check", "--ses", s3z3],
        ["report-all"],
    ]


def _cli(argv):
    p = subprocess.run([sys.executable, "-m", "nacoh", *argv], capture_output=True)
    return p.returncode, p.stdout


def criterion_9(tmp: Path):
    differing = []
    commands = _cli_inputs(tmp)
    cache = tmp / "cache"
    for argv in commands:
        runs = [_cli(argv + ["--jobs", "1"]), _cli(argv + ["--jobs", "1"]), _cli(argv + ["--jobs", "8"]),
                _cli(argv + ["--jobs", "8"])]
        cold = _cli(argv + ["--cache-dir", str(cache)])
        warm = _cli(argv + ["--cache-dir", str(cache), "--jobs", "8"])
        runs += [cold, warm]
        if len({r for r in runs}) != 1 or runs[0][1] == b"":
            differing.append(argv[0])
        if runs[0][0] == 2:
            differing.append((argv[0], "error", json.loads(runs[0][1])["error"]["message"]))
    return not differing, f"{len(commands)} commands x 6 runs (jobs 1/8, cold/warm cache); differing {differing}"


# -- pytest wiring ----------------------------------------------------------------------------


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5, 6: criterion_6,
            7: criterion_7, 8: criterion_8}


def _run(n, fn, *args):
    t0 = time.perf_counter()
    ok, detail = fn(*args)
    elapsed = time.perf_counter() - t0
    return ok and elapsed < TIME_LIMIT, detail, elapsed


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    ok, detail, elapsed = _run(n, CRITERIA[n])
    with capsys.disabled():
        print()
        report(n, ok, detail, elapsed)
    assert ok, detail


def test_criterion_9_determinism(tmp_path, capsys):
    ok, detail, elapsed = _run(9, criterion_9, tmp_path)
    with capsys.disabled():
        print()
        report(9, ok, detail, elapsed)
    assert ok, detail


if __name__ == "__main__":
    import tempfile

    results = []
    for n, fn in sorted(CRITERIA.items()):
        ok, detail, elapsed = _run(n, fn)
        report(n, ok, detail, elapsed)
        results.append(ok)
    with tempfile.TemporaryDirectory() as tmp:
        ok, detail, elapsed = _run(9, criterion_9, Path(tmp))
        report(9, ok, detail, elapsed)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
