"""H^2(A) for the Gamma-kernel of a Gamma-group A, and its comparison maps.

A kernel cocycle is a pair (u, f) with u: Gamma x Gamma -> A and
f: Gamma -> Aut A. Encodings are the u values (row-major) followed by the
Aut-carrier indices of f.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .abelian import AbelianH2, h2_abelian
from .cohomology import (
    DEFAULT_BUDGET,
    Cocycle2Crossed,
    Encoding,
    H2Classes,
    _Counter,
    _triple_schedule,
    enumerate_z2_encodings,
    h2_quotient,
    kappa,
    orbit_partition,
    pushforward_classes,
    raw_act_g,
    raw_act_w,
    tables,
)
from .crossed import GammaCrossedModule, center_crossed_module, inn_crossed_module
from .errors import NotACocycle
from .gamma import GammaGroup
from .groups import compose, invert_perm


@lru_cache(maxsize=64)
def inn_module(A: GammaGroup) -> GammaCrossedModule:
    return inn_crossed_module(A)


@dataclass(frozen=True)
class KernelCocycle2:
    coefficients: GammaGroup = field(repr=False, compare=False)
    u: tuple[int, ...]
    f: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(int(x) for x in self.u))
        object.__setattr__(self, "f", tuple(int(x) for x in self.f))
        w = kernel_witness(self.coefficients, self.u, self.f)
        if w is not None:
            raise NotACocycle(f"not a kernel 2-cocycle over {self.coefficients.name}: fails at {w}", w)

    @property
    def encoding(self) -> Encoding:
        return self.u + self.f

    @classmethod
    def from_encoding(cls, A: GammaGroup, enc: Encoding) -> KernelCocycle2:
        nn = A.gamma.order ** 2
        return cls(A, enc[:nn], enc[nn:])


def kernel_witness(A: GammaGroup, u: Sequence[int], f: Sequence[int]):
    aut = A.aut
    n = A.gamma.order
    gm = A.gamma.table
    am = A.group.table
    if len(u) != n * n or len(f) != n:
        return ("shape",)
    fa = [aut.lookup(p) for p in A.act]
    for s in range(n):
        psi = aut.compose(f[s], aut.inverse(fa[s]))
        if psi not in aut.inn_subgroup:
            return ("kernel", s)
    for s in range(n):
        for t in range(n):
            rhs = aut.compose(aut.inn_of[u[s * n + t]], aut.compose(f[s], f[t]))
            if f[gm[s][t]] != rhs:
                return ("f", s, t)
    for s in range(n):
        fs = aut.realize(f[s])
        for t in range(n):
            for v in range(n):
                lhs = am[u[s * n + gm[t][v]]][fs[u[t * n + v]]]
                if lhs != am[u[gm[s][t] * n + v]][u[s * n + t]]:
                    return ("u", s, t, v)
    return None


def enumerate_z2_kernel_encodings(A: GammaGroup, budget: int = DEFAULT_BUDGET) -> list[Encoding]:
    """All (u, f) in Z^2(Gamma, A, kappa_A), sorted.

    f_s ranges over the coset Inn(A) o (f_A)_s; inn(u_{s,t}) is then forced to
    be f_st o f_t^-1 o f_s^-1, and u is filled from those fibres under the
    same triple schedule as the crossed-module search.
    """
    aut = A.aut
    n = A.gamma.order
    gm = A.gamma.table
    am = A.group.table
    nA = A.group.order
    fa = [aut.lookup(p) for p in A.act]
    allowed = [sorted({aut.compose(aut.inn_of[x], fa[s]) for x in range(nA)}) for s in range(n)]
    counter = _Counter(budget, f"Z2 of kernel of {A.name}", len(aut.inn_subgroup) ** n * nA ** (n * n))
    inn_fibre: dict[int, list[int]] = {}
    for a in range(nA):
        inn_fibre.setdefault(aut.inn_of[a], []).append(a)
    inv = [aut.inverse(k) for k in range(aut.order)] if aut.order <= 5000 else None

    def ainv(k):
        return inv[k] if inv is not None else aut.inverse(k)

    checks: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for s in range(n):
        for t in range(n):
            checks[max(s, t, gm[s][t])].append((s, t))

    def forced(f, s, t):
        return aut.compose(f[gm[s][t]], aut.compose(ainv(f[t]), ainv(f[s])))

    fs_found = []
    f = [0] * n

    def rec_f(k):
        if k == n:
            fs_found.append(tuple(f))
            return
        for x in allowed[k]:
            counter.tick()
            f[k] = x
            if all(forced(f, s, t) in inn_fibre for s, t in checks[k]):
                rec_f(k + 1)

    rec_f(0)
    sched = _triple_schedule(n, gm)
    nn = n * n
    out = []
    for fv in fs_found:
        cand = [inn_fibre[forced(fv, s, t)] for s in range(n) for t in range(n)]
        perms = [aut.realize(x) for x in fv]
        u = [0] * nn

        def rec_u(p):
            if p == nn:
                out.append(tuple(u) + fv)
                return
            for a in cand[p]:
                counter.tick()
                u[p] = a
                for s, p1, p2, p3, p4 in sched[p]:
                    if am[u[p1]][perms[s][u[p2]]] != am[u[p3]][u[p4]]:
                        break
                else:
                    rec_u(p + 1)

        rec_u(0)
    out.sort()
    return out


def enumerate_z2_kernel(A: GammaGroup, budget: int = DEFAULT_BUDGET) -> list[KernelCocycle2]:
    return [KernelCocycle2.from_encoding(A, e) for e in enumerate_z2_kernel_encodings(A, budget)]


def _kernel_act_w(A: GammaGroup, w: Sequence[int], enc: Encoding) -> Encoding:
    """u' = w_st u f_s(w_t)^-1 w_s^-1, f' = inn(w_s) o f_s."""
    aut = A.aut
    n = A.gamma.order
    gm = A.gamma.table
    am, ainv = A.group.table, A.group.inv_table
    nn = n * n
    f = enc[nn:]
    out = []
    for s in range(n):
        fs = aut.realize(f[s])
        for t in range(n):
            x = am[am[w[gm[s][t]]][enc[s * n + t]]][ainv[fs[w[t]]]]
            out.append(am[x][ainv[w[s]]])
    for s in range(n):
        out.append(aut.compose(aut.inn_of[w[s]], f[s]))
    return tuple(out)


def h2_kernel(A: GammaGroup, budget: int = DEFAULT_BUDGET, cocycles: Sequence[Encoding] | None = None) -> H2Classes:
    if cocycles is None:
        cocycles = enumerate_z2_kernel_encodings(A, budget)
    n = A.gamma.order
    moves = []
    for s in range(n):
        for a in A.group.generators:
            w = [0] * n
            w[s] = a
            moves.append(lambda e, w=tuple(w): _kernel_act_w(A, w, e))
    unit = (0,) * (n * n) + tuple(A.aut.lookup(p) for p in A.act)
    return orbit_partition(cocycles, moves, kind="kernel", n_gamma=n, unit=unit, budget=budget, module=A)


# -- comparison with (A -> Inn A) ---------------------------------------------------------


def _inn_index(A: GammaGroup) -> dict:
    M = inn_module(A)
    return {p: k for k, p in enumerate(M.g_act)}


def kernel_to_crossed_encoding(A: GammaGroup, enc: Encoding) -> Encoding:
    """(u, f) -> (u, psi) with psi_s = f_s o (f_A)_s^-1 read in Inn A."""
    aut = A.aut
    nn = A.gamma.order ** 2
    idx = _inn_index(A)
    psi = tuple(idx[compose(aut.realize(k), invert_perm(A.act[s]))] for s, k in enumerate(enc[nn:]))
    return tuple(enc[:nn]) + psi


def crossed_to_kernel_encoding(A: GammaGroup, enc: Encoding) -> Encoding:
    """(u, psi) -> (u, f) with f_s = psi_s o (f_A)_s."""
    M = inn_module(A)
    aut = A.aut
    nn = A.gamma.order ** 2
    f = tuple(aut.lookup(compose(M.g_act[k], A.act[s])) for s, k in enumerate(enc[nn:]))
    return tuple(enc[:nn]) + f


def kernel_to_crossed(z: KernelCocycle2) -> Cocycle2Crossed:
    A = z.coefficients
    return Cocycle2Crossed.from_encoding(inn_module(A), kernel_to_crossed_encoding(A, z.encoding))


def crossed_to_kernel(z: Cocycle2Crossed, A: GammaGroup) -> KernelCocycle2:
    return KernelCocycle2.from_encoding(A, crossed_to_kernel_encoding(A, z.encoding))


@dataclass
class LambdaReport:
    """Comparison H^2(A) -> thick H^2(A -> Inn A) -> thin H^2(A -> Inn A)."""

    h2: H2Classes
    thick: H2Classes
    thin: H2Classes
    to_thick: tuple[int, ...]
    lam: tuple[int, ...]
    cocycle_bijection: bool
    round_trip: bool
    descends: bool
    thick_bijection: bool
    flags_preserved: bool
    injective: bool
    surjective: bool
    second_proof_checked: int
    second_proof_failures: list = field(default_factory=list)

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective

    @property
    def passed(self) -> bool:
        return (
            self.cocycle_bijection
            and self.round_trip
            and self.descends
            and self.thick_bijection
            and self.flags_preserved
            and self.bijective
            and not self.second_proof_failures
        )


def lambda_map(A: GammaGroup, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> LambdaReport:
    M = inn_module(A)
    kz = enumerate_z2_kernel_encodings(A, budget)
    cz = enumerate_z2_encodings(M, budget, jobs)
    h2 = h2_kernel(A, budget, kz)
    thick = h2_quotient(M, "thick", budget, cocycles=cz)
    thin = h2_quotient(M, "thin", budget, cocycles=cz)

    images = [kernel_to_crossed_encoding(A, e) for e in kz]
    cocycle_bijection = len(set(images)) == len(kz) and set(images) == set(cz)
    round_trip = all(crossed_to_kernel_encoding(A, c) == e for e, c in zip(kz, images))

    descends = True
    to_thick = [-1] * len(h2)
    for e, c in zip(kz, images):
        k = h2.class_of[e]
        j = thick.class_of.get(c, -1)
        if to_thick[k] < 0:
            to_thick[k] = j
        elif to_thick[k] != j:
            descends = False
    thick_bijection = sorted(to_thick) == list(range(len(thick)))
    flags_preserved = all(
        h2.classes[k].neutral == thick.classes[j].neutral and h2.classes[k].unit == thick.classes[j].unit
        for k, j in enumerate(to_thick)
        if j >= 0
    )
    kap = kappa(thick, thin)
    lam = tuple(kap(j) if j >= 0 else -1 for j in to_thick)
    injective = len(set(lam)) == len(lam)
    surjective = set(lam) == set(range(len(thin)))

    # g * (u, psi) == w * (u, psi) with g = inn(b), w_s = b psi_s(^s b)^-1
    T = tables(M)
    n = A.gamma.order
    nn = n * n
    am, ainv = A.group.table, A.group.inv_table
    failures = []
    checked = 0
    for c in cz:
        psi = c[nn:]
        for b in range(A.group.order):
            w = tuple(am[b][ainv[M.g_act[psi[s]][A.act[s][b]]]] for s in range(n))
            checked += 1
            if raw_act_g(T, M.rho.images[b], c) != raw_act_w(T, w, c):
                if len(failures) < 10:
                    failures.append({"cocycle": list(c), "b": b})
    return LambdaReport(
        h2, thick, thin, tuple(to_thick), lam, cocycle_bijection, round_trip, descends,
        thick_bijection, flags_preserved, injective, surjective, checked, failures,
    )


# -- the center action -----------------------------------------------------------------


@dataclass
class CenterActionReport:
    center_h2: AbelianH2
    h2: H2Classes
    thin: H2Classes
    action: list[list[int]]
    well_defined: bool
    simply_transitive: bool
    mu: tuple[int, ...]
    mu_bijective: bool
    mu_factors_through_iota: bool
    lambda_equivariant: bool

    @property
    def passed(self) -> bool:
        return (
            self.well_defined
            and self.simply_transitive
            and self.mu_bijective
            and self.mu_factors_through_iota
            and self.lambda_equivariant
        )


def center_h2_action(A: GammaGroup, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> CenterActionReport:
    """H^2(Z_A) acting on H^2(A) by [z].[u, f] = [z u, f], and the map mu."""
    ce = center_crossed_module(A)
    emb = ce.embedding.images
    hz = h2_abelian(ce.center, budget)
    kz = enumerate_z2_kernel_encodings(A, budget)
    h2 = h2_kernel(A, budget, kz)
    M = inn_module(A)
    cz = enumerate_z2_encodings(M, budget, jobs)
    thin = h2_quotient(M, "thin", budget, cocycles=cz)
    n = A.gamma.order
    nn = n * n
    am = A.group.table

    def times(z, enc):
        return tuple(am[emb[z[p]]][enc[p]] for p in range(nn)) + tuple(enc[nn:])

    action = [[h2.classify(times(zr, c.rep)) for c in h2.classes] for zr in hz.reps]
    well_defined = True
    for zi, zr in enumerate(hz.reps):
        for e in kz:
            if h2.classify(times(zr, e)) != action[zi][h2.class_of[e]]:
                well_defined = False
    for z in hz.cocycles:
        zi = hz.classify(z)
        for k, c in enumerate(h2.classes):
            if h2.classify(times(z, c.rep)) != action[zi][k]:
                well_defined = False
    m = len(h2)
    simply_transitive = all(
        sorted(action[zi][k] for zi in range(len(hz))) == list(range(m)) for k in range(m)
    ) and len(hz) == m

    unit = (0,) * (nn + n)
    mu = tuple(thin.classify(times(zr, unit)) for zr in hz.reps)
    mu_bijective = sorted(mu) == list(range(len(thin)))

    # mu = iota_* o (H^2(Z) = thin H^2(Z -> 1))
    zthin = h2_quotient(ce.module, "thin", budget)
    iota_star = pushforward_classes(ce.iota, zthin, thin)
    mu_factors = all(
        iota_star[zthin.classify(zr + (0,) * n)] == mu[zi] for zi, zr in enumerate(hz.reps)
    )

    # lambda(z . x) == z . lambda(x), the thin action being (z u, psi)
    lam_rep = [thin.classify(kernel_to_crossed_encoding(A, c.rep)) for c in h2.classes]
    lambda_equivariant = all(
        lam_rep[action[zi][k]] == thin.classify(times(zr, kernel_to_crossed_encoding(A, c.rep)))
        for zi, zr in enumerate(hz.reps)
        for k, c in enumerate(h2.classes)
    )
    return CenterActionReport(
        hz, h2, thin, action, well_defined, simply_transitive, mu, mu_bijective, mu_factors, lambda_equivariant
    )
