"""Short exact sequences 1 -> A -> B -> C -> 1 of Gamma-groups.

Builds the connecting map H^1(C) -> H^2(A -> Inn B) and checks the exactness
statements class by class. Every check here is exhaustive over the finite
cocycle sets; nothing is sampled.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .abelian import AbelianH2, h2_abelian
from .cohomology import (
    DEFAULT_BUDGET,
    Cocycle2Crossed,
    Encoding,
    H1Classes,
    H2Classes,
    cocycle_witness,
    enumerate_z1_values,
    h1_classes,
    h2_quotient,
    pushforward_classes,
    tables,
)
from .crossed import (
    GammaCrossedModule,
    inn_crossed_module,
    kernel_inclusion_morphism,
    quotient_inn_morphism,
    restricted_crossed_module,
    ses_kernel_crossed_module,
)
from .errors import (
    ImageKernelMismatch,
    NotAbelian,
    NotEquivariant,
    NotInjective,
    NotSurjective,
    ValidationError,
    WellDefinednessViolation,
)
from .gamma import Cocycle1, GammaGroup, TwistedModule, equivariance_witness, twist_by_cocycle
from .groups import GroupHom, inner_group


class ShortExactSequence:
    """A validated exact sequence of Gamma-groups; see :func:`validate_ses`."""

    def __init__(self, A: GammaGroup, B: GammaGroup, C: GammaGroup, i: GroupHom, j: GroupHom, name: str | None = None):
        self.A, self.B, self.C, self.i, self.j = A, B, C, i, j
        self.name = name or f"{A.group.name}->{B.group.name}->{C.group.name}[{A.gamma.name}]"
        if not (A.gamma == B.gamma == C.gamma):
            raise ValidationError(f"{self.name}: the three groups carry different Gamma")
        if i.source != A.group or i.target != B.group or j.source != B.group or j.target != C.group:
            raise ValidationError(f"{self.name}: maps do not match the groups")
        if not i.is_injective:
            k = sorted(i.kernel - {0})[0]
            raise NotInjective(f"{self.name}: i is not injective, i({k}) = 1", (k,))
        if not j.is_surjective:
            missing = sorted(set(range(C.group.order)) - j.image)[0]
            raise NotSurjective(f"{self.name}: j misses {missing}", (missing,))
        if i.image != j.kernel:
            diff = sorted(i.image ^ j.kernel)[0]
            raise ImageKernelMismatch(f"{self.name}: image(i) != kernel(j), e.g. at {diff}", (diff,))
        for h, src, tgt, label in ((i, A, B, "i"), (j, B, C, "j")):
            w = equivariance_witness(h, src, tgt)
            if w is not None:
                raise NotEquivariant(f"{self.name}: {label} is not Gamma-equivariant at (s,x) = {w}", w)
        self.i_inverse: dict[int, int] = {y: x for x, y in enumerate(i.images)}
        least = {}
        for b in range(B.group.order):
            least.setdefault(j.images[b], b)
        self.least_preimage: tuple[int, ...] = tuple(least[c] for c in range(C.group.order))

    def __repr__(self):
        return f"ShortExactSequence({self.name})"

    @property
    def gamma(self):
        return self.A.gamma

    @cached_property
    def inn_B(self) -> tuple[int, ...]:
        """b -> index of inn(b) in Inn B."""
        return inner_group(self.B.group)[1].images

    def fibre(self, c: int) -> list[int]:
        return [b for b in range(self.B.group.order) if self.j.images[b] == c]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "A": self.A.name,
            "B": self.B.name,
            "C": self.C.name,
            "i": self.i.to_json(),
            "j": self.j.to_json(),
        }


def validate_ses(A, B, C, i, j, name=None) -> ShortExactSequence:
    return ShortExactSequence(A, B, C, i, j, name=name)


# -- the connecting map ------------------------------------------------------------------


def lift_values(ses: ShortExactSequence, c: Sequence[int]) -> tuple[int, ...]:
    """Least preimage of each value."""
    return tuple(ses.least_preimage[x] for x in c)


def delta_encoding(ses: ShortExactSequence, b: Sequence[int]) -> Encoding:
    """(u, psi) from a lift b: u_st = b_st ^s b_t^-1 b_s^-1 read in A, psi_s = inn(b_s)."""
    n = ses.gamma.order
    gm = ses.gamma.table
    B = ses.B.group
    bt, binv = B.table, B.inv_table
    sa = ses.B.act
    u = []
    for s in range(n):
        for t in range(n):
            x = bt[bt[b[gm[s][t]]][binv[sa[s][b[t]]]]][binv[b[s]]]
            try:
                u.append(ses.i_inverse[x])
            except KeyError:
                raise ValidationError(f"u({s},{t}) = {x} does not lie in i(A); the lift does not cover a cocycle") from None
    inn = ses.inn_B
    return tuple(u) + tuple(inn[x] for x in b)


def serre_u(ses: ShortExactSequence, b: Sequence[int]) -> tuple[int, ...]:
    n = ses.gamma.order
    return delta_encoding(ses, b)[: n * n]


class SequenceAnalysis:
    """Lazily computed cohomology attached to one short exact sequence."""

    def __init__(self, ses: ShortExactSequence, budget: int = DEFAULT_BUDGET, jobs: int = 1):
        self.ses = ses
        self.budget = budget
        self.jobs = jobs

    @cached_property
    def M_A(self) -> GammaCrossedModule:
        return ses_kernel_crossed_module(self.ses)

    @cached_property
    def M_B(self) -> GammaCrossedModule:
        return inn_crossed_module(self.ses.B)

    @cached_property
    def M_C(self) -> GammaCrossedModule:
        return inn_crossed_module(self.ses.C)

    @cached_property
    def restricted(self):
        return restricted_crossed_module(self.ses)

    @property
    def M_G(self) -> GammaCrossedModule:
        return self.restricted.module

    @cached_property
    def i_star(self):
        return kernel_inclusion_morphism(self.ses)

    @cached_property
    def j_star(self):
        return quotient_inn_morphism(self.ses)

    @cached_property
    def h1_B(self) -> H1Classes:
        return h1_classes(self.ses.B, self.budget)

    @cached_property
    def h1_C(self) -> H1Classes:
        return h1_classes(self.ses.C, self.budget)

    def _thin(self, M):
        return h2_quotient(M, "thin", self.budget, self.jobs)

    @cached_property
    def thin_A(self) -> H2Classes:
        return self._thin(self.M_A)

    @cached_property
    def thin_B(self) -> H2Classes:
        return self._thin(self.M_B)

    @cached_property
    def thin_C(self) -> H2Classes:
        return self._thin(self.M_C)

    @cached_property
    def thin_G(self) -> H2Classes:
        return self._thin(self.M_G)

    @cached_property
    def j_h1(self) -> tuple[int, ...]:
        """H^1(B) -> H^1(C), checked on every member."""
        j = self.ses.j.images
        out = [self.h1_C.classify(tuple(j[x] for x in rep)) for rep in self.h1_B.reps]
        for c in self.h1_B.cocycles:
            if self.h1_C.classify(tuple(j[x] for x in c)) != out[self.h1_B.class_of[c]]:
                raise WellDefinednessViolation("j_* does not descend to H^1")
        return tuple(out)

    @cached_property
    def j_h1_image(self) -> frozenset[int]:
        return frozenset(self.j_h1)

    def delta_class(self, c: Sequence[int], lift: Sequence[int] | None = None) -> int:
        b = lift_values(self.ses, c) if lift is None else lift
        return self.thin_A.classify(delta_encoding(self.ses, b))

    @cached_property
    def delta(self) -> tuple[int, ...]:
        """H^1(C) class -> thin H^2(A -> Inn B) class, via the least lift of the representative."""
        return tuple(self.delta_class(rep) for rep in self.h1_C.reps)

    @cached_property
    def i_map(self) -> tuple[int, ...]:
        return pushforward_classes(self.i_star, self.thin_A, self.thin_B)

    @cached_property
    def j_map(self) -> tuple[int, ...]:
        return pushforward_classes(self.j_star, self.thin_B, self.thin_C)

    @cached_property
    def pi_map(self) -> tuple[int, ...]:
        return pushforward_classes(self.restricted.pi, self.thin_A, self.thin_G)


@dataclass
class DeltaResult:
    cocycle: Cocycle2Crossed
    class_index: int
    neutral: bool
    unit: bool


def delta(ses: ShortExactSequence, c, budget: int = DEFAULT_BUDGET, analysis: SequenceAnalysis | None = None) -> DeltaResult:
    """Thin class of the connecting cocycle built from the least lift of c."""
    an = analysis or SequenceAnalysis(ses, budget)
    values = c.values if isinstance(c, Cocycle1) else tuple(c)
    Cocycle1(ses.C, values)
    enc = delta_encoding(ses, lift_values(ses, values))
    z = Cocycle2Crossed.from_encoding(an.M_A, enc)
    k = an.thin_A.classify(enc)
    cls = an.thin_A.classes[k]
    return DeltaResult(z, k, cls.neutral, cls.unit)


@dataclass
class WellDefinedReport:
    passed: bool
    paths_checked: int
    discrepancies: list = field(default_factory=list)
    non_cocycles: list = field(default_factory=list)

    def to_json(self):
        return {
            "passed": self.passed,
            "paths_checked": self.paths_checked,
            "discrepancies": self.discrepancies,
            "non_cocycles": self.non_cocycles,
        }


def all_lifts(ses: ShortExactSequence, c: Sequence[int]):
    return itertools.product(*(ses.fibre(x) for x in c))


def delta_well_defined_check(ses: ShortExactSequence, budget: int = DEFAULT_BUDGET, analysis: SequenceAnalysis | None = None) -> WellDefinedReport:
    """Every member of every H^1(C) class, with every lift, lands in one thin class."""
    an = analysis or SequenceAnalysis(ses, budget)
    h1 = an.h1_C
    n = ses.gamma.order
    per_lift = ses.A.group.order ** n
    if len(h1.cocycles) * per_lift > budget:
        from .errors import EnumerationBudgetExceeded

        raise EnumerationBudgetExceeded("lifts of Z1(C)", budget, len(h1.cocycles) * per_lift)
    T = tables(an.M_A)
    nn = n * n
    expected = an.delta
    discrepancies, bad = [], []
    checked = 0
    for c in h1.cocycles:
        k = h1.class_of[c]
        for b in all_lifts(ses, c):
            checked += 1
            enc = delta_encoding(ses, b)
            if cocycle_witness(T, enc[:nn], enc[nn:]) is not None:
                bad.append({"c": list(c), "lift": list(b)})
                continue
            got = an.thin_A.classify(enc)
            if got != expected[k]:
                discrepancies.append({"c": list(c), "lift": list(b), "class": got, "expected": expected[k]})
    return WellDefinedReport(not discrepancies and not bad, checked, discrepancies[:10], bad[:10])


# -- the exactness theorem ---------------------------------------------------------------


@dataclass
class ExactnessReport:
    """Per-class tables; every row carries its own ``ok`` flag."""

    name: str
    h1_B: int
    h1_C: int
    thin_A: int
    thin_B: int
    thin_C: int
    clause_i: list[dict]
    clause_ii: list[dict]
    clause_iii: list[dict]
    well_defined: WellDefinedReport
    lemma: list[dict] | None = None
    corollary: list[dict] | None = None
    corollary_matches_clause_i: bool | None = None
    serre: dict | None = None

    @property
    def witnesses(self) -> list[dict]:
        out = []
        for label, table in (
            ("clause_i", self.clause_i),
            ("clause_ii", self.clause_ii),
            ("clause_iii", self.clause_iii),
            ("lemma", self.lemma or []),
            ("corollary", self.corollary or []),
        ):
            out += [dict(row, table=label) for row in table if not row["ok"]]
        if self.serre is not None and not self.serre["passed"]:
            out.append({"table": "serre", "detail": self.serre.get("failures", [])})
        if not self.well_defined.passed:
            out.append({"table": "delta_well_defined", "detail": self.well_defined.to_json()})
        if self.corollary_matches_clause_i is False:
            out.append({"table": "corollary_vs_clause_i"})
        return out

    @property
    def passed(self) -> bool:
        return not self.witnesses

    def to_json(self) -> dict:
        d = {
            "name": self.name,
            "sizes": {
                "H1(B)": self.h1_B,
                "H1(C)": self.h1_C,
                "H2(A->Inn B)": self.thin_A,
                "H2(B->Inn B)": self.thin_B,
                "H2(C->Inn C)": self.thin_C,
            },
            "clause_i": self.clause_i,
            "clause_ii": self.clause_ii,
            "clause_iii": self.clause_iii,
            "delta_well_defined": self.well_defined.to_json(),
        }
        if self.lemma is not None:
            d["lemma"] = self.lemma
            d["corollary"] = self.corollary
            d["corollary_matches_clause_i"] = self.corollary_matches_clause_i
        if self.serre is not None:
            d["serre"] = self.serre
        d["passed"] = self.passed
        d["witnesses"] = self.witnesses
        return d


def _theorem_tables(an: SequenceAnalysis):
    thin_A, thin_B, thin_C = an.thin_A, an.thin_B, an.thin_C
    clause_i = []
    for k, rep in enumerate(an.h1_C.reps):
        in_image = k in an.j_h1_image
        d = an.delta[k]
        neutral = thin_A.classes[d].neutral
        clause_i.append(
            {"class": k, "rep": list(rep), "in_image_j": in_image, "delta": d, "delta_neutral": neutral,
             "ok": in_image == neutral}
        )
    delta_image = set(an.delta)
    unit_B = thin_B.unit_class
    clause_ii = []
    for k, c in enumerate(thin_A.classes):
        in_image = k in delta_image
        img = an.i_map[k]
        clause_ii.append(
            {"class": k, "rep": list(c.rep), "in_image_delta": in_image, "i_image": img,
             "i_image_unit": img == unit_B, "ok": in_image == (img == unit_B)}
        )
    i_image = set(an.i_map)
    clause_iii = []
    for k, c in enumerate(thin_B.classes):
        in_image = k in i_image
        img = an.j_map[k]
        neutral = thin_C.classes[img].neutral
        clause_iii.append(
            {"class": k, "rep": list(c.rep), "in_image_i": in_image, "j_image": img,
             "j_image_neutral": neutral, "ok": in_image == neutral}
        )
    return clause_i, clause_ii, clause_iii


def verify_exactness_theorem(ses: ShortExactSequence, budget: int = DEFAULT_BUDGET, jobs: int = 1,
                             analysis: SequenceAnalysis | None = None) -> ExactnessReport:
    an = analysis or SequenceAnalysis(ses, budget, jobs)
    ci, cii, ciii = _theorem_tables(an)
    wd = delta_well_defined_check(ses, budget, an)
    return ExactnessReport(
        ses.name, len(an.h1_B), len(an.h1_C), len(an.thin_A), len(an.thin_B), len(an.thin_C),
        ci, cii, ciii, wd,
    )


@dataclass
class PiReport:
    lemma: list[dict]
    corollary: list[dict]
    matches_clause_i: bool

    @property
    def passed(self) -> bool:
        return all(r["ok"] for r in self.lemma) and all(r["ok"] for r in self.corollary) and self.matches_clause_i


def verify_pi_corollary(ses: ShortExactSequence, budget: int = DEFAULT_BUDGET, jobs: int = 1,
                        analysis: SequenceAnalysis | None = None) -> PiReport:
    """Neutrality through pi_* (class by class), and the lifting criterion via pi_* o Delta."""
    an = analysis or SequenceAnalysis(ses, budget, jobs)
    lemma = []
    for k, c in enumerate(an.thin_A.classes):
        img = an.pi_map[k]
        img_neutral = an.thin_G.classes[img].neutral
        lemma.append({"class": k, "neutral": c.neutral, "pi_image": img, "pi_image_neutral": img_neutral,
                      "ok": c.neutral == img_neutral})
    corollary = []
    for k in range(len(an.h1_C)):
        img = an.pi_map[an.delta[k]]
        neutral = an.thin_G.classes[img].neutral
        in_image = k in an.j_h1_image
        corollary.append({"class": k, "in_image_j": in_image, "pi_delta": img, "pi_delta_neutral": neutral,
                          "ok": in_image == neutral})
    ci, _, _ = _theorem_tables(an)
    matches = [r["in_image_j"] for r in corollary] == [r["in_image_j"] for r in ci] and [
        r["pi_delta_neutral"] for r in corollary
    ] == [r["delta_neutral"] for r in ci]
    return PiReport(lemma, corollary, matches)


# -- abelian kernel: zeta, lambda_psi, Serre's Delta ------------------------------------------


def _require_abelian(ses: ShortExactSequence):
    if not ses.A.group.is_abelian:
        raise NotAbelian(f"{ses.A.group.name} is not abelian")


def conjugation_hom(ses: ShortExactSequence, an: SequenceAnalysis) -> GroupHom:
    """p: C -> G = (Inn B)|_A, c -> conjugation by any lift of c."""
    _require_abelian(ses)
    inn = an.M_B.rho.images
    res = an.restricted.restriction.images
    images = {}
    for b in range(ses.B.group.order):
        c = ses.j.images[b]
        g = res[inn[b]]
        if images.setdefault(c, g) != g:
            raise WellDefinednessViolation(f"conjugation by lifts of {c} differs on A", (c,))
    return GroupHom(ses.C.group, an.M_G.G.group, [images[c] for c in range(ses.C.group.order)])


@dataclass
class ZetaReport:
    mapping: tuple[int, ...]
    h1_G: H1Classes
    well_defined: bool
    surjective: bool

    @property
    def passed(self):
        return self.well_defined and self.surjective


def zeta(ses: ShortExactSequence, budget: int = DEFAULT_BUDGET, analysis: SequenceAnalysis | None = None) -> ZetaReport:
    """[u, psi] -> [psi] from thin H^2(A -> G) onto H^1(G)."""
    _require_abelian(ses)
    an = analysis or SequenceAnalysis(ses, budget)
    h1G = h1_classes(an.M_G.G, budget)
    thin = an.thin_G
    nn = ses.gamma.order ** 2
    mapping = [h1G.classify(c.rep[nn:]) for c in thin.classes]
    well_defined = all(h1G.classify(e[nn:]) == mapping[thin.class_of[e]] for e in thin.cocycles)
    surjective = set(mapping) == set(range(len(h1G)))
    return ZetaReport(tuple(mapping), h1G, well_defined, surjective)


def twisted_kernel(ses: ShortExactSequence, an: SequenceAnalysis, psi: Sequence[int]) -> TwistedModule:
    return twist_by_cocycle(ses.A, an.M_G.g_act, Cocycle1(an.M_G.G, psi))


@dataclass
class LambdaPsiReport:
    """``mapping[k]`` is the thin class of (u_k, psi) for the k-th class [u_k].

    ``fibres_are_stabilizer_orbits`` records that two classes have the same
    image exactly when they differ by an element of G fixing psi.
    """

    psi: tuple[int, ...]
    h2: AbelianH2
    mapping: tuple[int, ...]
    injective: bool
    onto_fibre: bool
    neutral_iff_zero: bool
    stabilizer: tuple[int, ...]
    fibres_are_stabilizer_orbits: bool

    @property
    def passed(self):
        return self.injective and self.onto_fibre and self.neutral_iff_zero


def lambda_psi(ses: ShortExactSequence, psi: Sequence[int], budget: int = DEFAULT_BUDGET,
               analysis: SequenceAnalysis | None = None, zeta_report: ZetaReport | None = None) -> LambdaPsiReport:
    """[u] -> [u, psi] from H^2(psi-twisted A) into the fibre of zeta over [psi]."""
    _require_abelian(ses)
    an = analysis or SequenceAnalysis(ses, budget)
    zr = zeta_report or zeta(ses, budget, an)
    psi = tuple(psi)
    tw = twisted_kernel(ses, an, psi)
    h2 = h2_abelian(tw, budget)
    thin = an.thin_G
    mapping = tuple(thin.classify(rep + psi) for rep in h2.reps)
    target = zr.h1_G.classify(psi)
    fibre = {k for k, z in enumerate(zr.mapping) if z == target}
    injective = len(set(mapping)) == len(mapping)
    onto = set(mapping) == fibre
    neutral_iff_zero = all(thin.classes[m].neutral == (k == h2.zero) for k, m in enumerate(mapping))
    G = an.M_G.G
    gt, ginv = G.group.table, G.group.inv_table
    n = ses.gamma.order
    stab = tuple(
        g for g in range(G.group.order)
        if all(gt[gt[g][psi[s]]][ginv[G.act[s][g]]] == psi[s] for s in range(n))
    )
    orbit_of = {}
    for k, rep in enumerate(h2.reps):
        orbit_of[k] = frozenset(h2.classify(tuple(an.M_G.g_act[g][x] for x in rep)) for g in stab)
    fibres_ok = all((mapping[j] == mapping[k]) == (j in orbit_of[k]) for j in orbit_of for k in orbit_of)
    return LambdaPsiReport(psi, h2, mapping, injective, onto, neutral_iff_zero, stab, fibres_ok)


@dataclass
class SerreDelta:
    c: tuple[int, ...]
    psi: tuple[int, ...]
    u: tuple[int, ...]
    h2: AbelianH2
    class_index: int

    @property
    def is_zero(self) -> bool:
        return self.class_index == self.h2.zero


def delta_serre(ses: ShortExactSequence, c, budget: int = DEFAULT_BUDGET, analysis: SequenceAnalysis | None = None,
                lift: Sequence[int] | None = None) -> SerreDelta:
    """[u] in H^2 of A twisted by p o c, with u built from a lift of c."""
    _require_abelian(ses)
    an = analysis or SequenceAnalysis(ses, budget)
    values = c.values if isinstance(c, Cocycle1) else tuple(c)
    Cocycle1(ses.C, values)
    p = conjugation_hom(ses, an).images
    psi = tuple(p[x] for x in values)
    b = lift_values(ses, values) if lift is None else tuple(lift)
    u = serre_u(ses, b)
    h2 = h2_abelian(twisted_kernel(ses, an, psi), budget)
    return SerreDelta(tuple(values), psi, u, h2, h2.classify(u))


def verify_serre_criterion(ses: ShortExactSequence, budget: int = DEFAULT_BUDGET, jobs: int = 1,
                           analysis: SequenceAnalysis | None = None) -> dict:
    """[c] lifts iff Delta_S(c) = 0, and pi_*(Delta[c]) = lambda_psi(Delta_S(c)), for every class."""
    _require_abelian(ses)
    an = analysis or SequenceAnalysis(ses, budget, jobs)
    zr = zeta(ses, budget, an)
    psi_reports = {}
    for psi in enumerate_z1_values(an.M_G.G, budget):
        psi_reports[psi] = lambda_psi(ses, psi, budget, an, zr)
    rows = []
    failures = []
    for k, rep in enumerate(an.h1_C.reps):
        sd = delta_serre(ses, rep, budget, an)
        lifts = k in an.j_h1_image
        image = an.pi_map[an.delta[k]]
        lam = psi_reports[sd.psi].mapping[sd.class_index]
        classes = {sd.h2.classify(serre_u(ses, b)) for b in all_lifts(ses, rep)}
        lift_independent = len(classes) == 1
        ok = (lifts == sd.is_zero) and image == lam and lift_independent
        row = {"class": k, "rep": list(rep), "lifts": lifts, "psi": list(sd.psi), "delta_S": sd.class_index,
               "delta_S_zero": sd.is_zero, "pi_delta": image, "lambda_psi_delta_S": lam,
               "lift_independent": lift_independent, "ok": ok}
        rows.append(row)
        if not ok:
            failures.append(row)
    lam_ok = all(r.passed for r in psi_reports.values())
    for p, r in psi_reports.items():
        if not r.passed:
            failures.append({
                "psi": list(p), "injective": r.injective, "onto_fibre": r.onto_fibre,
                "neutral_iff_zero": r.neutral_iff_zero, "h2_size": len(r.h2), "image": list(r.mapping),
            })
    if not zr.passed:
        failures.append({"zeta": "not well defined or not surjective"})
    return {
        "rows": rows,
        "zeta_surjective": zr.surjective,
        "zeta_well_defined": zr.well_defined,
        "h1_G": len(zr.h1_G),
        "lambda_psi_all_bijective": lam_ok,
        "lambda_psi_all_surjective": all(r.onto_fibre for r in psi_reports.values()),
        "lambda_psi_neutral_iff_zero": all(r.neutral_iff_zero for r in psi_reports.values()),
        "lambda_psi_fibres_are_stabilizer_orbits": all(r.fibres_are_stabilizer_orbits for r in psi_reports.values()),
        "lambda_psi_checked": len(psi_reports),
        "passed": not failures,
        "failures": failures,
    }


def verify_all(ses: ShortExactSequence, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> ExactnessReport:
    """Theorem, pi-lemma/corollary and, for abelian A, the Serre criterion."""
    an = SequenceAnalysis(ses, budget, jobs)
    report = verify_exactness_theorem(ses, budget, jobs, an)
    pi = verify_pi_corollary(ses, budget, jobs, an)
    report.lemma = pi.lemma
    report.corollary = pi.corollary
    report.corollary_matches_clause_i = pi.matches_clause_i
    if ses.A.group.is_abelian:
        report.serre = verify_serre_criterion(ses, budget, jobs, an)
    return report
