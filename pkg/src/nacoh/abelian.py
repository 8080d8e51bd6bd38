"""Classical H^2 of an abelian Gamma-module, computed as Z^2 / B^2."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .cohomology import DEFAULT_BUDGET, _Counter, _triple_schedule
from .errors import EnumerationBudgetExceeded, NotAbelian
from .gamma import GammaGroup, TwistedModule


@dataclass
class AbelianH2:
    """Cosets of B^2 in Z^2, ordered by least member.

    Class 0 is the zero class (the constant cocycle 1 is the least encoding).
    Classes form a group under pointwise product of representatives.
    """

    module: GammaGroup
    reps: list[tuple[int, ...]]
    class_of: dict[tuple[int, ...], int]
    cocycles: list[tuple[int, ...]]
    coboundaries: frozenset

    zero = 0

    def __len__(self):
        return len(self.reps)

    def classify(self, u) -> int:
        return self.class_of[tuple(u)]

    def is_zero(self, u) -> bool:
        return self.classify(u) == 0

    def add(self, j: int, k: int) -> int:
        am = self.module.group.table
        return self.classify(tuple(am[x][y] for x, y in zip(self.reps[j], self.reps[k])))

    def neg(self, k: int) -> int:
        inv = self.module.group.inv_table
        return self.classify(tuple(inv[x] for x in self.reps[k]))


def _as_module(M) -> GammaGroup:
    if isinstance(M, TwistedModule):
        return M.module
    return M


def abelian_z2(M: GammaGroup, budget: int = DEFAULT_BUDGET) -> list[tuple[int, ...]]:
    """u with u(s,tv) * (s.u(t,v)) = u(st,v) * u(s,t), by row-major backtracking."""
    n = M.gamma.order
    gm = M.gamma.table
    am = M.group.table
    act = M.act
    nn = n * n
    order = M.group.order
    counter = _Counter(budget, f"abelian Z2 of {M.name}", order ** nn)
    sched = _triple_schedule(n, gm)
    u = [0] * nn
    out = []

    def rec(p):
        if p == nn:
            out.append(tuple(u))
            return
        for a in range(order):
            counter.tick()
            u[p] = a
            for s, p1, p2, p3, p4 in sched[p]:
                if am[u[p1]][act[s][u[p2]]] != am[u[p3]][u[p4]]:
                    break
            else:
                rec(p + 1)

    rec(0)
    return out


def abelian_b2(M: GammaGroup, budget: int = DEFAULT_BUDGET) -> frozenset:
    """Coboundaries w(st) * (s.w(t))^-1 * w(s)^-1 over all w."""
    n = M.gamma.order
    gm = M.gamma.table
    am, inv = M.group.table, M.group.inv_table
    act = M.act
    size = M.group.order ** n
    if size > budget:
        raise EnumerationBudgetExceeded(f"abelian B2 of {M.name}", budget, size)
    out = set()
    for w in itertools.product(range(M.group.order), repeat=n):
        out.add(
            tuple(
                am[am[w[gm[s][t]]][inv[act[s][w[t]]]]][inv[w[s]]] for s in range(n) for t in range(n)
            )
        )
    return frozenset(out)


def h2_abelian(M, budget: int = DEFAULT_BUDGET) -> AbelianH2:
    """H^2(Gamma, M) for an abelian Gamma-group or a twisted module."""
    M = _as_module(M)
    if not M.group.is_abelian:
        raise NotAbelian(f"{M.name} is not abelian")
    z2 = abelian_z2(M, budget)
    b2 = abelian_b2(M, budget)
    am = M.group.table
    z2set = set(z2)
    class_of: dict[tuple[int, ...], int] = {}
    reps = []
    for u in z2:
        if u in class_of:
            continue
        k = len(reps)
        reps.append(u)
        for b in b2:
            v = tuple(am[x][y] for x, y in zip(u, b))
            if v not in z2set:
                raise NotAbelian(f"coset of {u} leaves Z2; the action is not abelian-compatible")
            class_of[v] = k
    return AbelianH2(M, reps, class_of, z2, b2)
