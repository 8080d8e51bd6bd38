"""Cocycles, the C^1 actions, and thick/thin second cohomology.

A 2-cocycle over a crossed module A -> G is a pair (u, psi) with
u: Gamma x Gamma -> A and psi: Gamma -> G. Internally a pair is an
*encoding*: the tuple of u values in row-major (s, t) order followed by the
psi values in s order. Encodings are compared lexicographically, and the
least encoding in an orbit is the class representative.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

from .crossed import CrossedModuleMorphism, GammaCrossedModule
from .errors import EnumerationBudgetExceeded, NotACocycle, ValidationError
from .gamma import Cocycle1, GammaGroup

DEFAULT_BUDGET = 10**7

Encoding = tuple[int, ...]


class Tables(NamedTuple):
    """Plain-tuple view of a crossed module, cheap to pickle to workers."""

    n: int
    gm: tuple
    am: tuple
    ainv: tuple
    gmul: tuple
    ginv: tuple
    rho: tuple
    gact: tuple
    sa: tuple
    sg: tuple


def tables(M: GammaCrossedModule) -> Tables:
    return Tables(
        M.gamma.order,
        M.gamma.table,
        M.A.group.table,
        M.A.group.inv_table,
        M.G.group.table,
        M.G.group.inv_table,
        M.rho.images,
        M.g_act,
        M.A.act,
        M.G.act,
    )


# -- raw cocycle arithmetic ---------------------------------------------------------


def cocycle_witness(T: Tables, u: Sequence[int], psi: Sequence[int]):
    """First violated condition as ``(condition, s, t[, v])`` or None."""
    n, gm, am = T.n, T.gm, T.am
    gmul, rho, gact, sa, sg = T.gmul, T.rho, T.gact, T.sa, T.sg
    if len(u) != n * n or len(psi) != n:
        return ("shape",)
    for s in range(n):
        for t in range(n):
            if psi[gm[s][t]] != gmul[gmul[rho[u[s * n + t]]][psi[s]]][sg[s][psi[t]]]:
                return ("psi", s, t)
    for s in range(n):
        for t in range(n):
            st = gm[s][t]
            for v in range(n):
                lhs = am[u[s * n + gm[t][v]]][gact[psi[s]][sa[s][u[t * n + v]]]]
                rhs = am[u[st * n + v]][u[s * n + t]]
                if lhs != rhs:
                    return ("u", s, t, v)
    return None


def raw_act_w(T: Tables, w: Sequence[int], enc: Encoding) -> Encoding:
    n, gm, am, ainv = T.n, T.gm, T.am, T.ainv
    gmul, rho, gact, sa = T.gmul, T.rho, T.gact, T.sa
    nn = n * n
    psi = enc[nn:]
    out = []
    for s in range(n):
        ws_inv = ainv[w[s]]
        ps = gact[psi[s]]
        ss = sa[s]
        row = gm[s]
        base = s * n
        for t in range(n):
            x = am[w[row[t]]][enc[base + t]]
            x = am[x][ainv[ps[ss[w[t]]]]]
            out.append(am[x][ws_inv])
    for s in range(n):
        out.append(gmul[rho[w[s]]][psi[s]])
    return tuple(out)


def raw_act_g(T: Tables, g: int, enc: Encoding) -> Encoding:
    n, gmul, ginv, sg = T.n, T.gmul, T.ginv, T.sg
    nn = n * n
    p = T.gact[g]
    out = [p[x] for x in enc[:nn]]
    gi = gmul[g]
    for s in range(n):
        out.append(gmul[gi[enc[nn + s]]][ginv[sg[s][g]]])
    return tuple(out)


# -- public value types ---------------------------------------------------------------


@dataclass(frozen=True)
class Cocycle2Crossed:
    """A 2-cocycle (u, psi) over ``module``; ``u`` is flattened row-major."""

    module: GammaCrossedModule = field(repr=False, compare=False)
    u: tuple[int, ...]
    psi: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(int(x) for x in self.u))
        object.__setattr__(self, "psi", tuple(int(x) for x in self.psi))
        w = cocycle_witness(tables(self.module), self.u, self.psi)
        if w is not None:
            raise NotACocycle(f"not a 2-cocycle over {self.module.name}: fails at {w}", w)

    @classmethod
    def from_encoding(cls, module: GammaCrossedModule, enc: Encoding) -> Cocycle2Crossed:
        nn = module.gamma.order ** 2
        return cls(module, enc[:nn], enc[nn:])

    @classmethod
    def unit(cls, module: GammaCrossedModule) -> Cocycle2Crossed:
        n = module.gamma.order
        return cls(module, (0,) * (n * n), (0,) * n)

    @property
    def encoding(self) -> Encoding:
        return self.u + self.psi

    def u_at(self, s: int, t: int) -> int:
        return self.u[s * self.module.gamma.order + t]

    @property
    def is_neutral(self) -> bool:
        return not any(self.u)


@dataclass(frozen=True)
class C1Element:
    """An element (w, g) of Maps(Gamma, A) x| G."""

    w: tuple[int, ...]
    g: int

    @classmethod
    def identity(cls, module: GammaCrossedModule) -> C1Element:
        return cls((0,) * module.gamma.order, 0)


def is_cocycle2_crossed(module: GammaCrossedModule, u: Sequence[int], psi: Sequence[int]):
    """Return ``(True, None)`` or ``(False, witness)``.

    ``u`` may be flat (row-major) or a square nested sequence.
    """
    n = module.gamma.order
    if len(u) == n and n > 0 and isinstance(u[0], (list, tuple)):
        u = [x for row in u for x in row]
    w = cocycle_witness(tables(module), tuple(u), tuple(psi))
    return (w is None, w)


def act_w(w: Sequence[int], z: Cocycle2Crossed) -> Cocycle2Crossed:
    """w * (u, psi)."""
    enc = raw_act_w(tables(z.module), tuple(w), z.encoding)
    return Cocycle2Crossed.from_encoding(z.module, enc)


def act_g(g: int, z: Cocycle2Crossed) -> Cocycle2Crossed:
    """g * (u, psi)."""
    enc = raw_act_g(tables(z.module), g, z.encoding)
    return Cocycle2Crossed.from_encoding(z.module, enc)


def act_c1(e: C1Element, z: Cocycle2Crossed) -> Cocycle2Crossed:
    return act_w(e.w, act_g(e.g, z))


def g_star_w(module: GammaCrossedModule, g: int, w: Sequence[int]) -> tuple[int, ...]:
    p = module.g_act[g]
    return tuple(p[x] for x in w)


def c1_mul(module: GammaCrossedModule, e: C1Element, f: C1Element) -> C1Element:
    """(w, g)(w', g') = (w . (g * w'), g g')."""
    am = module.A.group.table
    gw = g_star_w(module, e.g, f.w)
    return C1Element(tuple(am[a][b] for a, b in zip(e.w, gw)), module.G.group.table[e.g][f.g])


def delta_map(n: int, s: int, a: int) -> tuple[int, ...]:
    w = [0] * n
    w[s] = a
    return tuple(w)


def c1_generators(module: GammaCrossedModule) -> list[C1Element]:
    """Single-point maps onto generators of A, then generators of G."""
    n = module.gamma.order
    gens = [C1Element(delta_map(n, s, a), 0) for s in range(n) for a in module.A.group.generators]
    gens += [C1Element((0,) * n, g) for g in module.G.group.generators]
    return gens


# -- enumeration ----------------------------------------------------------------------


class _Counter:
    __slots__ = ("count", "budget", "what", "space")

    def __init__(self, budget, what, space):
        self.count = 0
        self.budget = budget
        self.what = what
        self.space = space

    def tick(self, k=1):
        self.count += k
        if self.count > self.budget:
            raise EnumerationBudgetExceeded(self.what, self.budget, self.space)


def space_size(M: GammaCrossedModule) -> int:
    n = M.gamma.order
    return M.G.group.order ** n * M.A.group.order ** (n * n)


def _fibres(T: Tables) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {}
    for a, g in enumerate(T.rho):
        out.setdefault(g, []).append(a)
    return out


def _enumerate_psi(T: Tables, counter: _Counter) -> list[tuple[int, ...]]:
    """All psi for which every rho-fibre demanded by condition 2 is nonempty."""
    n, gm, gmul, ginv, sg = T.n, T.gm, T.gmul, T.ginv, T.sg
    image = set(T.rho)
    checks: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for s in range(n):
        for t in range(n):
            checks[max(s, t, gm[s][t])].append((s, t))
    n_g = len(gmul)
    psi = [0] * n
    out = []

    def rec(k):
        if k == n:
            out.append(tuple(psi))
            return
        for x in range(n_g):
            counter.tick()
            psi[k] = x
            ok = True
            for s, t in checks[k]:
                target = gmul[psi[gm[s][t]]][ginv[gmul[psi[s]][sg[s][psi[t]]]]]
                if target not in image:
                    ok = False
                    break
            if ok:
                rec(k + 1)

    rec(0)
    return out


def _triple_schedule(n: int, gm) -> list[list[tuple[int, int, int, int, int]]]:
    """Triples grouped by the last u-position they read.

    Each entry is (s, p_lhs1, p_lhs2, p_rhs1, p_rhs2) for
    u[p1] * psi_s(^s u[p2]) == u[p3] * u[p4].
    """
    sched: list[list] = [[] for _ in range(n * n)]
    for s in range(n):
        for t in range(n):
            for v in range(n):
                p1 = s * n + gm[t][v]
                p2 = t * n + v
                p3 = gm[s][t] * n + v
                p4 = s * n + t
                sched[max(p1, p2, p3, p4)].append((s, p1, p2, p3, p4))
    return sched


def _enumerate_u(T: Tables, psi: tuple[int, ...], counter: _Counter) -> list[tuple[int, ...]]:
    n, gm, am, gmul, ginv, sg, gact, sa = T.n, T.gm, T.am, T.gmul, T.ginv, T.sg, T.gact, T.sa
    fib = _fibres(T)
    nn = n * n
    cand = []
    for s in range(n):
        for t in range(n):
            target = gmul[psi[gm[s][t]]][ginv[gmul[psi[s]][sg[s][psi[t]]]]]
            cand.append(fib.get(target, []))
    if any(not c for c in cand):
        return []
    sched = _triple_schedule(n, gm)
    acts = [tuple(gact[psi[s]][sa[s][a]] for a in range(len(am))) for s in range(n)]
    u = [0] * nn
    out = []

    def rec(p):
        if p == nn:
            out.append(tuple(u))
            return
        checks = sched[p]
        for a in cand[p]:
            counter.tick()
            u[p] = a
            for s, p1, p2, p3, p4 in checks:
                if am[u[p1]][acts[s][u[p2]]] != am[u[p3]][u[p4]]:
                    break
            else:
                rec(p + 1)

    rec(0)
    return out


def _u_worker(args):
    T, psis, budget, what, space = args
    counter = _Counter(budget, what, space)
    found = []
    try:
        for psi in psis:
            for u in _enumerate_u(T, psi, counter):
                found.append(u + psi)
    except EnumerationBudgetExceeded:
        return None, counter.count
    return found, counter.count


def enumerate_z2_encodings(
    M: GammaCrossedModule, budget: int = DEFAULT_BUDGET, jobs: int = 1, stats: dict | None = None
) -> list[Encoding]:
    """All encodings of Z^2(Gamma, A -> G), sorted.

    psi is chosen first, pruned so that every value rho(u_{s,t}) forced by
    the psi-condition is attainable; u is then filled row by row from those
    rho-fibres, checking each u-condition triple as soon as it is complete.
    """
    T = tables(M)
    what = f"Z2 over {M.name}"
    space = space_size(M)
    counter = _Counter(budget, what, space)
    psis = _enumerate_psi(T, counter)
    found: list[Encoding] = []
    if jobs <= 1 or len(psis) < 2:
        for psi in psis:
            for u in _enumerate_u(T, psi, counter):
                found.append(u + psi)
        total = counter.count
    else:
        chunks = [psis[k::jobs] for k in range(jobs)]
        chunks = [c for c in chunks if c]
        total = counter.count
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_u_worker, [(T, c, budget, what, space) for c in chunks]))
        for res, count in results:
            total += count
            if res is None:
                raise EnumerationBudgetExceeded(what, budget, space)
            found.extend(res)
        if total > budget:
            raise EnumerationBudgetExceeded(what, budget, space)
    if stats is not None:
        stats["states"] = stats.get("states", 0) + total
        stats["space"] = space
    found.sort()
    return found


def enumerate_z2_crossed(M: GammaCrossedModule, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> list[Cocycle2Crossed]:
    nn = M.gamma.order ** 2
    out = []
    for enc in enumerate_z2_encodings(M, budget, jobs):
        z = object.__new__(Cocycle2Crossed)
        object.__setattr__(z, "module", M)
        object.__setattr__(z, "u", enc[:nn])
        object.__setattr__(z, "psi", enc[nn:])
        out.append(z)
    return out


# -- orbit partitions ----------------------------------------------------------------


@dataclass(frozen=True)
class H2Class:
    rep: Encoding
    size: int
    neutral: bool
    unit: bool


@dataclass
class H2Classes:
    """An orbit partition of a cocycle set.

    ``kind`` is ``thick``, ``thin``, ``kernel`` or ``abelian``; classes are
    ordered by representative.
    """

    kind: str
    n_gamma: int
    classes: list[H2Class]
    class_of: dict[Encoding, int]
    cocycles: list[Encoding]
    module: object = None

    def __len__(self):
        return len(self.classes)

    def classify(self, enc: Encoding) -> int:
        try:
            return self.class_of[tuple(enc)]
        except KeyError:
            raise ValidationError(f"{list(enc)} is not an enumerated cocycle") from None

    @property
    def unit_class(self) -> int:
        units = [k for k, c in enumerate(self.classes) if c.unit]
        return units[0]

    @property
    def neutral_classes(self) -> list[int]:
        return [k for k, c in enumerate(self.classes) if c.neutral]

    def members(self, k: int) -> list[Encoding]:
        return [e for e in self.cocycles if self.class_of[e] == k]

    def split(self, enc: Encoding) -> tuple[tuple[int, ...], tuple[int, ...]]:
        nn = self.n_gamma ** 2
        return enc[:nn], enc[nn:]


def orbit_partition(
    cocycles: Sequence[Encoding],
    moves: Sequence[Callable[[Encoding], Encoding]],
    *,
    kind: str,
    n_gamma: int,
    unit: Encoding | None,
    budget: int = DEFAULT_BUDGET,
    module=None,
) -> H2Classes:
    """Partition ``cocycles`` into orbits under the group generated by ``moves``.

    Breadth-first closure from each unvisited cocycle. Every image must be
    in ``cocycles``: a move leaving the set means a closure failure, which
    is reported rather than silently absorbed.
    """
    nn = n_gamma * n_gamma
    pool = set(cocycles)
    class_of: dict[Encoding, int] = {}
    orbits: list[list[Encoding]] = []
    counter = _Counter(budget, f"{kind} orbit closure", len(pool) * max(1, len(moves)))
    for start in sorted(pool):
        if start in class_of:
            continue
        k = len(orbits)
        class_of[start] = k
        orbit = [start]
        for x in orbit:
            for mv in moves:
                counter.tick()
                y = mv(x)
                if y not in class_of:
                    if y not in pool:
                        raise ValidationError(f"move sends cocycle {list(x)} outside the cocycle set: {list(y)}")
                    class_of[y] = k
                    orbit.append(y)
        orbits.append(orbit)
    # orbits were opened in increasing order of their least member
    classes = []
    for orbit in orbits:
        rep = min(orbit)
        neutral = any(not any(e[:nn]) for e in orbit)
        is_unit = unit is not None and unit in orbit
        classes.append(H2Class(rep, len(orbit), neutral, is_unit))
    return H2Classes(kind, n_gamma, classes, class_of, sorted(pool), module)


def _crossed_moves(M: GammaCrossedModule, kind: str) -> list[Callable[[Encoding], Encoding]]:
    T = tables(M)
    n = T.n
    moves = []
    for s in range(n):
        for a in M.A.group.generators:
            w = delta_map(n, s, a)
            moves.append(lambda e, w=w: raw_act_w(T, w, e))
    if kind == "thin":
        for g in M.G.group.generators:
            moves.append(lambda e, g=g: raw_act_g(T, g, e))
    return moves


def h2_quotient(
    M: GammaCrossedModule,
    kind: str = "thin",
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
    cocycles: Sequence[Encoding] | None = None,
    stats: dict | None = None,
) -> H2Classes:
    """Thick (Maps(Gamma, A)) or thin (C^1) cohomology classes of Z^2(Gamma, A -> G)."""
    if kind not in ("thick", "thin"):
        raise ValueError(f"kind must be 'thick' or 'thin', not {kind!r}")
    if cocycles is None:
        cocycles = enumerate_z2_encodings(M, budget, jobs, stats)
    n = M.gamma.order
    unit = (0,) * (n * n + n)
    return orbit_partition(
        cocycles, _crossed_moves(M, kind), kind=kind, n_gamma=n, unit=unit, budget=budget, module=M
    )


@dataclass(frozen=True)
class KappaMap:
    """thick class index -> thin class index."""

    mapping: tuple[int, ...]
    thin: H2Classes

    def __call__(self, k: int) -> int:
        return self.mapping[k]

    @property
    def is_surjective(self) -> bool:
        return set(self.mapping) == set(range(len(self.thin)))

    @property
    def is_injective(self) -> bool:
        return len(set(self.mapping)) == len(self.mapping)


def kappa(thick: H2Classes, thin: H2Classes | None = None) -> KappaMap:
    """Merge thick classes along the G-action.

    G acts on thick classes, so merging the classes of ``rep`` and ``g * rep``
    for generators g yields the thin partition. When ``thin`` is given
    (computed independently) the merged partition must agree with it.
    """
    M = thick.module
    T = tables(M)
    m = len(thick)
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for k, c in enumerate(thick.classes):
        for g in M.G.group.generators:
            j = thick.classify(raw_act_g(T, g, c.rep))
            a, b = find(k), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for k in range(m):
        groups.setdefault(find(k), []).append(k)
    if thin is None:
        merged = []
        class_of: dict[Encoding, int] = {}
        # roots are least thick indices, hence ordered by least representative
        for idx, root in enumerate(sorted(groups)):
            ks = groups[root]
            merged.append(
                H2Class(
                    thick.classes[ks[0]].rep,
                    sum(thick.classes[k].size for k in ks),
                    any(thick.classes[k].neutral for k in ks),
                    any(thick.classes[k].unit for k in ks),
                )
            )
        root_index = {root: idx for idx, root in enumerate(sorted(groups))}
        for e in thick.cocycles:
            class_of[e] = root_index[find(thick.class_of[e])]
        thin = H2Classes("thin", thick.n_gamma, merged, class_of, thick.cocycles, M)
        mapping = tuple(root_index[find(k)] for k in range(m))
        return KappaMap(mapping, thin)
    mapping = tuple(thin.classify(c.rep) for c in thick.classes)
    for root, ks in groups.items():
        if len({mapping[k] for k in ks}) != 1:
            raise ValidationError("G-merging of thick classes disagrees with the thin partition")
    if len(groups) != len(thin):
        raise ValidationError(
            f"G-merging gives {len(groups)} classes but the thin partition has {len(thin)}"
        )
    return KappaMap(mapping, thin)


# -- functoriality --------------------------------------------------------------------


def pushforward_encoding(m: CrossedModuleMorphism, enc: Encoding) -> Encoding:
    nn = m.source.gamma.order ** 2
    fa, fg = m.phi_A.images, m.phi_G.images
    return tuple(fa[x] for x in enc[:nn]) + tuple(fg[x] for x in enc[nn:])


def pushforward(m: CrossedModuleMorphism, z: Cocycle2Crossed) -> Cocycle2Crossed:
    """(phi_A o u, phi_G o psi); validated on the target."""
    return Cocycle2Crossed.from_encoding(m.target, pushforward_encoding(m, z.encoding))


def pushforward_classes(m: CrossedModuleMorphism, source: H2Classes, target: H2Classes, *, check: bool = True) -> tuple[int, ...]:
    """Induced map on classes; with ``check`` every member is pushed forward."""
    mapping = [target.classify(pushforward_encoding(m, c.rep)) for c in source.classes]
    if check:
        for e in source.cocycles:
            if target.classify(pushforward_encoding(m, e)) != mapping[source.class_of[e]]:
                raise ValidationError(f"pushforward does not descend to classes at {list(e)}")
    return tuple(mapping)


# -- degree one -----------------------------------------------------------------------


def enumerate_z1_values(C: GammaGroup, budget: int = DEFAULT_BUDGET) -> list[tuple[int, ...]]:
    """All 1-cocycles as value tuples, sorted.

    Values are chosen on the generators of Gamma and propagated with
    c(g x) = c(g) * ^g c(x); each propagated map is then checked in full.
    """
    gam = C.gamma
    n = gam.order
    gens = gam.generators
    tC = C.group.table
    space = C.group.order ** max(1, len(gens))
    counter = _Counter(budget, f"Z1 of {C.name}", space)
    steps = []
    seen = {0}
    order = [0]
    for y in order:
        for g in gens:
            x = gam.table[g][y]
            if x not in seen:
                seen.add(x)
                order.append(x)
                steps.append((x, g, y))
    out = []
    for choice in itertools.product(range(C.group.order), repeat=len(gens)):
        counter.tick()
        vals = [-1] * n
        vals[0] = 0
        gv = dict(zip(gens, choice))
        for x, g, y in steps:
            vals[x] = tC[gv[g]][C.act[g][vals[y]]]
        if all(
            vals[gam.table[s][t]] == tC[vals[s]][C.act[s][vals[t]]] for s in range(n) for t in range(n)
        ):
            out.append(tuple(vals))
    out = sorted(set(out))
    return out


def enumerate_z1(C: GammaGroup, budget: int = DEFAULT_BUDGET) -> list[Cocycle1]:
    return [Cocycle1(C, v) for v in enumerate_z1_values(C, budget)]


@dataclass
class H1Classes:
    carrier: GammaGroup
    reps: list[tuple[int, ...]]
    class_of: dict[tuple[int, ...], int]
    cocycles: list[tuple[int, ...]]

    def __len__(self):
        return len(self.reps)

    def classify(self, values: Sequence[int]) -> int:
        try:
            return self.class_of[tuple(values)]
        except KeyError:
            raise ValidationError(f"{list(values)} is not a 1-cocycle of {self.carrier.name}") from None

    def members(self, k: int) -> list[tuple[int, ...]]:
        return [c for c in self.cocycles if self.class_of[c] == k]

    @property
    def trivial_class(self) -> int:
        return self.class_of[(0,) * self.carrier.gamma.order]


def twist_z1(C: GammaGroup, x: int, values: Sequence[int]) -> tuple[int, ...]:
    """c'_s = x c_s ^s x^-1."""
    t, inv = C.group.table, C.group.inv_table
    return tuple(t[t[x][values[s]]][inv[C.act[s][x]]] for s in range(C.gamma.order))


def h1_classes(C: GammaGroup, budget: int = DEFAULT_BUDGET) -> H1Classes:
    cocycles = enumerate_z1_values(C, budget)
    class_of: dict[tuple[int, ...], int] = {}
    reps = []
    for c in cocycles:
        if c in class_of:
            continue
        k = len(reps)
        orbit = {twist_z1(C, x, c) for x in range(C.group.order)}
        for d in orbit:
            if d in class_of:
                raise ValidationError("H1 twisting is not a partition")
            class_of[d] = k
        reps.append(min(orbit))
    return H1Classes(C, reps, class_of, cocycles)
