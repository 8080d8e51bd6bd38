"""Crossed modules A -> G with a compatible Gamma-action, and their morphisms."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import (
    EquivarianceViolation,
    NotAnAction,
    PeifferViolation,
    ValidationError,
    WellDefinednessViolation,
)
from .gamma import GammaGroup, induced_action_on_aut, restrict_gamma_group, trivial_gamma_group
from .groups import FiniteGroup, GroupHom, Perm, compose, compute_center, cyclic, inner_group, restricted_inn_group


class GammaCrossedModule:
    """rho: A -> G with G acting on A (``g_act[g]`` is ``a -> ^g a``).

    Construction runs every axiom check exhaustively; see
    :func:`crossed_module_violation` for the order in which they are tried.
    """

    def __init__(self, A: GammaGroup, G: GammaGroup, rho: GroupHom, g_act: Sequence[Sequence[int]], name: str | None = None):
        self.A = A
        self.G = G
        self.rho = rho
        self.g_act: tuple[Perm, ...] = tuple(tuple(int(x) for x in p) for p in g_act)
        self.name = name or f"({A.group.name}->{G.group.name})"
        err = crossed_module_violation(self)
        if err is not None:
            raise err

    def __repr__(self):
        return f"GammaCrossedModule({self.name})"

    @property
    def gamma(self) -> FiniteGroup:
        return self.A.gamma

    @property
    def g_action(self) -> GroupHom:
        """G -> Aut A as a hom into the carrier of compute_aut(A)."""
        aut = self.A.aut
        return GroupHom(self.G.group, aut.carrier, [aut.lookup(p) for p in self.g_act])

    def apply(self, g: int, a: int) -> int:
        return self.g_act[g][a]

    @cached_property
    def fingerprint(self) -> tuple:
        return (
            self.A.gamma.table,
            self.A.group.table,
            self.A.act,
            self.G.group.table,
            self.G.act,
            self.rho.images,
            self.g_act,
        )

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "A": self.A.name,
            "G": self.G.name,
            "rho": self.rho.to_json(),
            "action": {"source": self.G.group.name, "images": [list(p) for p in self.g_act]},
        }


def crossed_module_violation(M: GammaCrossedModule):
    """Return the first failed axiom as an exception instance, or None."""
    A, G = M.A.group, M.G.group
    rho = M.rho.images
    act = M.g_act
    if M.A.gamma != M.G.gamma:
        return ValidationError(f"{M.name}: A and G carry different Gamma")
    if M.rho.source != A or M.rho.target != G:
        return ValidationError(f"{M.name}: rho does not go from A to G")
    if len(act) != G.order:
        return NotAnAction(f"{M.name}: {len(act)} action permutations for |G| = {G.order}")
    ta = A.table
    for g, p in enumerate(act):
        if len(p) != A.order or sorted(p) != list(range(A.order)):
            return NotAnAction(f"{M.name}: action of g={g} is not a permutation of A", (g,))
        for x in range(A.order):
            for y in range(A.order):
                if p[ta[x][y]] != ta[p[x]][p[y]]:
                    return NotAnAction(f"{M.name}: g={g} does not act by an automorphism at ({x},{y})", (g, x, y))
    for g in range(G.order):
        for h in range(G.order):
            if compose(act[g], act[h]) != act[G.table[g][h]]:
                return NotAnAction(f"{M.name}: ^(gh)a != ^g(^h a) for (g,h) = ({g},{h})", (g, h))
    for a in range(A.order):
        for a2 in range(A.order):
            if A.conj(a, a2) != act[rho[a]][a2]:
                return PeifferViolation(
                    f"{M.name}: a a' a^-1 != ^rho(a) a' for (a,a') = ({a},{a2})", ("conjugation", a, a2)
                )
    for g in range(G.order):
        for a in range(A.order):
            if rho[act[g][a]] != G.conj(g, rho[a]):
                return PeifferViolation(
                    f"{M.name}: rho(^g a) != g rho(a) g^-1 for (g,a) = ({g},{a})", ("equivariance", g, a)
                )
    sa, sg = M.A.act, M.G.act
    for s in range(M.gamma.order):
        for a in range(A.order):
            if rho[sa[s][a]] != sg[s][rho[a]]:
                return EquivarianceViolation(
                    f"{M.name}: rho(^s a) != ^s rho(a) for (s,a) = ({s},{a})", ("rho", s, a)
                )
        for g in range(G.order):
            for a in range(A.order):
                if sa[s][act[g][a]] != act[sg[s][g]][sa[s][a]]:
                    return EquivarianceViolation(
                        f"{M.name}: ^s(^g a) != ^(^s g)(^s a) for (s,g,a) = ({s},{g},{a})", ("action", s, g, a)
                    )
    return None


def validate_crossed_module(A: GammaGroup, G: GammaGroup, rho: GroupHom, g_act, name: str | None = None) -> GammaCrossedModule:
    """Validate a candidate; ``g_act`` may be a hom into Aut A or a list of permutations."""
    if isinstance(g_act, GroupHom):
        aut = A.aut
        g_act = [aut.realize(k) for k in g_act.images]
    return GammaCrossedModule(A, G, rho, g_act, name=name)


@dataclass(frozen=True)
class CrossedModuleMorphism:
    """A pair (phi_A, phi_G) compatible with rho, the G-actions and Gamma."""

    source: GammaCrossedModule
    target: GammaCrossedModule
    phi_A: GroupHom
    phi_G: GroupHom

    def __post_init__(self):
        S, T = self.source, self.target
        fa, fg = self.phi_A.images, self.phi_G.images
        for a in range(S.A.group.order):
            if fg[S.rho.images[a]] != T.rho.images[fa[a]]:
                raise ValidationError(f"morphism: phi_G(rho(a)) != rho'(phi_A(a)) at a={a}", (a,))
        for g in range(S.G.group.order):
            for a in range(S.A.group.order):
                if fa[S.g_act[g][a]] != T.g_act[fg[g]][fa[a]]:
                    raise ValidationError(f"morphism: phi_A(^g a) != ^phi_G(g) phi_A(a) at (g,a)=({g},{a})", (g, a))
        for s in range(S.gamma.order):
            for a in range(S.A.group.order):
                if fa[S.A.act[s][a]] != T.A.act[s][fa[a]]:
                    raise EquivarianceViolation(f"morphism: phi_A not Gamma-equivariant at (s,a)=({s},{a})", (s, a))
            for g in range(S.G.group.order):
                if fg[S.G.act[s][g]] != T.G.act[s][fg[g]]:
                    raise EquivarianceViolation(f"morphism: phi_G not Gamma-equivariant at (s,g)=({s},{g})", (s, g))

    @classmethod
    def identity(cls, M: GammaCrossedModule) -> CrossedModuleMorphism:
        return cls(M, M, GroupHom.identity(M.A.group), GroupHom.identity(M.G.group))


# -- canonical constructions ------------------------------------------------------


def inn_crossed_module(B: GammaGroup) -> GammaCrossedModule:
    """B -> Inn B, with inn(b) acting by conjugation."""
    induced = induced_action_on_aut(B)
    _, inn, perms = inner_group(B.group)
    return GammaCrossedModule(B, induced.on_inn, inn, perms, name=f"({B.group.name}->Inn {B.group.name})")


def trivial_group_over(gamma: FiniteGroup) -> GammaGroup:
    return trivial_gamma_group(gamma, cyclic(1), name="1")


def to_trivial_crossed_module(A: GammaGroup) -> GammaCrossedModule:
    """A -> 1; a crossed module only when A is abelian."""
    one = trivial_group_over(A.gamma)
    return GammaCrossedModule(
        A, one, GroupHom.trivial(A.group, one.group), [tuple(range(A.group.order))], name=f"({A.group.name}->1)"
    )


@dataclass(frozen=True)
class CenterEmbedding:
    """The center Z of A, the crossed module (Z -> 1) and its embedding into (A -> Inn A)."""

    center: GammaGroup
    embedding: GroupHom
    module: GammaCrossedModule
    iota: CrossedModuleMorphism


def center_crossed_module(A: GammaGroup) -> CenterEmbedding:
    Z, emb = compute_center(A.group)
    ZG = restrict_gamma_group(A, emb, name=f"Z({A.name})")
    Zmod = to_trivial_crossed_module(ZG)
    target = inn_crossed_module(A)
    iota = CrossedModuleMorphism(Zmod, target, emb, GroupHom.trivial(Zmod.G.group, target.G.group))
    return CenterEmbedding(ZG, emb, Zmod, iota)


def _conjugation_on_kernel(ses, b: int) -> Perm:
    i = ses.i.images
    back = ses.i_inverse
    B = ses.B.group
    return tuple(back[B.conj(b, i[a])] for a in range(ses.A.group.order))


def ses_kernel_crossed_module(ses) -> GammaCrossedModule:
    """A -> Inn B with rho(a) = inn(i(a)) and inn(b) acting through i."""
    innB = inn_crossed_module(ses.B)
    inn = innB.rho
    reps = {}
    for b in range(ses.B.group.order):
        reps.setdefault(inn.images[b], b)
    g_act = [_conjugation_on_kernel(ses, reps[k]) for k in range(innB.G.group.order)]
    rho = GroupHom(ses.A.group, innB.G.group, [inn.images[x] for x in ses.i.images], check=False)
    return GammaCrossedModule(ses.A, innB.G, rho, g_act, name=f"({ses.A.group.name}->Inn {ses.B.group.name})")


@dataclass(frozen=True)
class RestrictedCrossedModule:
    module: GammaCrossedModule
    pi: CrossedModuleMorphism
    restriction: GroupHom


def restricted_crossed_module(ses) -> RestrictedCrossedModule:
    """A -> G with G = (Inn B)|_A, and pi: (A -> Inn B) -> (A -> G)."""
    src = ses_kernel_crossed_module(ses)
    r = restricted_inn_group(ses.B.group, ses.i)
    res = r.restriction.images
    n_gam = ses.B.gamma.order
    # ^s(inn(b)|A) = inn(^s b)|A
    reps = {}
    for b in range(ses.B.group.order):
        reps.setdefault(res[r.inn.images[b]], b)
    act = []
    for s in range(n_gam):
        act.append(tuple(res[r.inn.images[ses.B.act[s][reps[k]]]] for k in range(r.group.order)))
    G = GammaGroup(ses.B.gamma, r.group, act, name=f"Inn({ses.B.group.name})|{ses.A.group.name}")
    rho = GroupHom(ses.A.group, r.group, [res[x] for x in src.rho.images], check=False)
    target = GammaCrossedModule(ses.A, G, rho, r.perms, name=f"({ses.A.group.name}->{G.name})")
    pi = CrossedModuleMorphism(src, target, GroupHom.identity(ses.A.group), r.restriction)
    return RestrictedCrossedModule(target, pi, r.restriction)


def kernel_inclusion_morphism(ses) -> CrossedModuleMorphism:
    """i_*: (A -> Inn B) -> (B -> Inn B)."""
    src = ses_kernel_crossed_module(ses)
    tgt = inn_crossed_module(ses.B)
    return CrossedModuleMorphism(src, tgt, ses.i, GroupHom.identity(tgt.G.group))


def quotient_inn_morphism(ses) -> CrossedModuleMorphism:
    """j_*: (B -> Inn B) -> (C -> Inn C), inn(b) -> inn(j(b))."""
    src = inn_crossed_module(ses.B)
    tgt = inn_crossed_module(ses.C)
    j = ses.j.images
    images: dict[int, int] = {}
    for b in range(ses.B.group.order):
        k = src.rho.images[b]
        v = tgt.rho.images[j[b]]
        if images.setdefault(k, v) != v:
            raise WellDefinednessViolation(
                f"inn(b) = inn(b') but inn(j(b)) != inn(j(b')) for b={b}", (b,)
            )
    phi_G = GroupHom(src.G.group, tgt.G.group, [images[k] for k in range(src.G.group.order)])
    return CrossedModuleMorphism(src, tgt, ses.j, phi_G)
