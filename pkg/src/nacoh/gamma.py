"""Groups with an action of a fixed finite group Gamma."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import NotAbelian, NotACocycle, NotAnAction, ValidationError
from .groups import (
    AutGroup,
    FiniteGroup,
    GroupHom,
    Perm,
    compose,
    compute_aut,
    inner_group,
    invert_perm,
)


class GammaGroup:
    """A finite group ``group`` with Gamma acting by automorphisms.

    ``act[s]`` is the permutation ``a -> ^s a`` of the group's elements.
    """

    def __init__(self, gamma: FiniteGroup, group: FiniteGroup, act: Sequence[Sequence[int]], name: str | None = None):
        self.gamma = gamma
        self.group = group
        self.act: tuple[Perm, ...] = tuple(tuple(int(x) for x in p) for p in act)
        self.name = name or f"{group.name}[{gamma.name}]"
        self._validate()

    def _validate(self) -> None:
        gam, A = self.gamma, self.group
        if len(self.act) != gam.order:
            raise NotAnAction(f"{self.name}: {len(self.act)} permutations for |Gamma| = {gam.order}")
        n = A.order
        t = A.table
        for s, p in enumerate(self.act):
            if len(p) != n or sorted(p) != list(range(n)):
                raise NotAnAction(f"{self.name}: action of {s} is not a permutation", (s,))
            for x in range(n):
                for y in range(n):
                    if p[t[x][y]] != t[p[x]][p[y]]:
                        raise NotAnAction(
                            f"{self.name}: action of {s} is not an automorphism at ({x},{y})", (s, x, y)
                        )
        if self.act[0] != tuple(range(n)):
            raise NotAnAction(f"{self.name}: identity of Gamma acts nontrivially", (0,))
        for s in range(gam.order):
            for r in range(gam.order):
                st = gam.table[s][r]
                if compose(self.act[s], self.act[r]) != self.act[st]:
                    raise NotAnAction(f"{self.name}: ^({s}{r})a != ^{s}(^{r}a)", (s, r))

    def __repr__(self):
        return f"GammaGroup({self.name!r}, |Gamma|={self.gamma.order}, |A|={self.group.order})"

    def __eq__(self, other):
        return (
            isinstance(other, GammaGroup)
            and self.gamma == other.gamma
            and self.group == other.group
            and self.act == other.act
        )

    def __hash__(self):
        return hash((self.gamma, self.group, self.act))

    @cached_property
    def aut(self) -> AutGroup:
        return compute_aut(self.group)

    @property
    def action(self) -> GroupHom:
        """sigma -> (f_A)_sigma as a hom into the carrier of Aut A."""
        return GroupHom(self.gamma, self.aut.carrier, [self.aut.lookup(p) for p in self.act])

    def apply(self, s: int, a: int) -> int:
        return self.act[s][a]

    @property
    def is_trivial_action(self) -> bool:
        ident = tuple(range(self.group.order))
        return all(p == ident for p in self.act)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "gamma": self.gamma.name,
            "group": self.group.name,
            "action": [list(p) for p in self.act],
        }


def make_gamma_group(gamma: FiniteGroup, group: FiniteGroup, action, name: str | None = None) -> GammaGroup:
    """Build a Gamma-group from a hom into Aut(group) or a list of permutations."""
    if isinstance(action, GroupHom):
        aut = compute_aut(group)
        if action.target != aut.carrier:
            raise NotAnAction("action must target the carrier of compute_aut(group)")
        perms = [aut.realize(k) for k in action.images]
    else:
        perms = action
    return GammaGroup(gamma, group, perms, name=name)


def trivial_gamma_group(gamma: FiniteGroup, group: FiniteGroup, name: str | None = None) -> GammaGroup:
    ident = tuple(range(group.order))
    return GammaGroup(gamma, group, [ident] * gamma.order, name=name)


def action_via(gamma: FiniteGroup, group: FiniteGroup, generator_images: dict[int, Perm]) -> list[Perm]:
    """Extend permutations given on generators of Gamma to all of Gamma.

    No consistency check here; GammaGroup validation catches bad input.
    """
    n = group.order
    act: dict[int, Perm] = {0: tuple(range(n))}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g, p in generator_images.items():
                y = gamma.table[g][x]
                if y not in act:
                    act[y] = compose(tuple(p), act[x])
                    nxt.append(y)
        frontier = nxt
    if len(act) != gamma.order:
        raise ValidationError("generator images do not reach every element of Gamma")
    return [act[s] for s in range(gamma.order)]


# -- induced actions -------------------------------------------------------------


@dataclass(frozen=True)
class InducedAutAction:
    """Gamma acting on Aut X by conjugation, and on Inn X."""

    aut: AutGroup
    on_aut: GammaGroup
    inn_group: FiniteGroup
    inn_of: GroupHom
    on_inn: GammaGroup


def conjugate_aut(X: GammaGroup, s: int, alpha: Perm) -> Perm:
    """^s alpha = f_s o alpha o f_s^-1."""
    f = X.act[s]
    return compose(compose(f, alpha), invert_perm(f))


def induced_action_on_aut(X: GammaGroup) -> InducedAutAction:
    aut = X.aut
    carrier = aut.carrier
    on_aut_perms = []
    for s in range(X.gamma.order):
        on_aut_perms.append(tuple(aut.index[conjugate_aut(X, s, aut.realize(k))] for k in range(aut.order)))
    on_aut = GammaGroup(X.gamma, carrier, on_aut_perms, name=f"Aut({X.name})")
    inn_grp, inn_of, perms = inner_group(X.group)
    pos = {p: k for k, p in enumerate(perms)}
    on_inn_perms = []
    for s in range(X.gamma.order):
        on_inn_perms.append(tuple(pos[conjugate_aut(X, s, p)] for p in perms))
    on_inn = GammaGroup(X.gamma, inn_grp, on_inn_perms, name=f"Inn({X.name})")
    return InducedAutAction(aut, on_aut, inn_grp, inn_of, on_inn)


def is_equivariant(h: GroupHom, source: GammaGroup, target: GammaGroup) -> bool:
    if source.gamma != target.gamma:
        raise ValidationError("source and target have different Gamma")
    im = h.images
    for s in range(source.gamma.order):
        sp, tp = source.act[s], target.act[s]
        for x in range(source.group.order):
            if im[sp[x]] != tp[im[x]]:
                return False
    return True


def equivariance_witness(h: GroupHom, source: GammaGroup, target: GammaGroup):
    im = h.images
    for s in range(source.gamma.order):
        for x in range(source.group.order):
            if im[source.act[s][x]] != target.act[s][im[x]]:
                return (s, x)
    return None


def restrict_gamma_group(X: GammaGroup, embedding: GroupHom, name: str | None = None) -> GammaGroup:
    """The Gamma-group structure on a Gamma-stable subgroup given by its embedding."""
    image = embedding.images
    back = {y: x for x, y in enumerate(image)}
    act = []
    for s in range(X.gamma.order):
        try:
            act.append(tuple(back[X.act[s][y]] for y in image))
        except KeyError:
            raise ValidationError(f"subgroup of {X.name} is not Gamma-stable") from None
    return GammaGroup(X.gamma, embedding.source, act, name=name)


# -- 1-cocycles and twisting -----------------------------------------------------


@dataclass(frozen=True)
class Cocycle1:
    """A map c: Gamma -> C with c(st) = c(s) * ^s c(t)."""

    carrier: GammaGroup
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        w = cocycle1_witness(self.carrier, self.values)
        if w is not None:
            raise NotACocycle(f"not a 1-cocycle in {self.carrier.name}: fails at (s,t) = {w}", w)

    def __getitem__(self, s: int) -> int:
        return self.values[s]


def cocycle1_witness(C: GammaGroup, values: Sequence[int]):
    gam = C.gamma
    if len(values) != gam.order:
        return ("length", len(values))
    t = C.group.table
    for s in range(gam.order):
        for r in range(gam.order):
            if values[gam.table[s][r]] != t[values[s]][C.act[s][values[r]]]:
                return (s, r)
    return None


@dataclass(frozen=True)
class TwistedModule:
    """An abelian Gamma-group with action s * a = psi_s(^s a)."""

    base: GammaGroup
    twist: Cocycle1
    g_act: tuple[Perm, ...]
    module: GammaGroup

    @property
    def twisted_action(self) -> tuple[Perm, ...]:
        return self.module.act


def twist_by_cocycle(base: GammaGroup, g_action, psi, G: GammaGroup | None = None) -> TwistedModule:
    """Twist the action on an abelian A by a 1-cocycle psi valued in G.

    ``g_action`` gives the action of G on A, either as a GroupHom into the
    carrier of Aut A or as a sequence of permutations indexed by G. ``psi``
    is a Cocycle1, or raw values together with the Gamma-group ``G``.
    """
    if not base.group.is_abelian:
        raise NotAbelian(f"{base.name} is not abelian")
    if not isinstance(psi, Cocycle1):
        if G is None:
            raise ValidationError("raw twist values need the Gamma-group G")
        psi = Cocycle1(G, psi)
    if isinstance(g_action, GroupHom):
        perms = tuple(base.aut.realize(k) for k in g_action.images)
    else:
        perms = tuple(tuple(p) for p in g_action)
    if len(perms) != psi.carrier.group.order:
        raise ValidationError("action of G on A has the wrong number of permutations")
    act = [compose(perms[psi.values[s]], base.act[s]) for s in range(base.gamma.order)]
    module = GammaGroup(base.gamma, base.group, act, name=f"{base.name}_psi")
    return TwistedModule(base, psi, perms, module)
