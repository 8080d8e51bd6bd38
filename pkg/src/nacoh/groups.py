"""Finite groups as multiplication tables.

Elements are the integers ``0..n-1`` and ``0`` is always the identity.
Automorphisms are stored as permutation tuples ``p`` with ``p[a]`` the image
of ``a``; composition follows ``(p*q)(a) = p(q(a))``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .errors import (
    NotAGroup,
    NotAHomomorphism,
    NotNormal,
    UnsupportedSize,
    ValidationError,
)

DEFAULT_ORDER_BOUND = 24

Perm = tuple[int, ...]


def compose(p: Perm, q: Perm) -> Perm:
    """Return ``p o q``."""
    return tuple(p[x] for x in q)


def invert_perm(p: Perm) -> Perm:
    out = [0] * len(p)
    for x, y in enumerate(p):
        out[y] = x
    return tuple(out)


class FiniteGroup:
    """A finite group given by its full multiplication table."""

    def __init__(self, name: str, table: Sequence[Sequence[int]], *, check: bool = True):
        self.name = name
        self.table: tuple[tuple[int, ...], ...] = tuple(tuple(int(x) for x in row) for row in table)
        self.order = len(self.table)
        if check:
            self._validate()
        n = self.order
        inv = [0] * n
        for a in range(n):
            row = self.table[a]
            for b in range(n):
                if row[b] == 0:
                    inv[a] = b
                    break
        self.inv_table: tuple[int, ...] = tuple(inv)
        self._hash = hash(self.table)

    def _validate(self) -> None:
        n = self.order
        if n == 0:
            raise NotAGroup(f"{self.name}: empty table")
        for a, row in enumerate(self.table):
            if len(row) != n:
                raise NotAGroup(f"{self.name}: row {a} has length {len(row)}, expected {n}", (a,))
            for b, x in enumerate(row):
                if not 0 <= x < n:
                    raise NotAGroup(f"{self.name}: entry ({a},{b}) = {x} out of range", (a, b))
        t = self.table
        for a in range(n):
            if t[0][a] != a or t[a][0] != a:
                raise NotAGroup(f"{self.name}: element 0 is not an identity at {a}", (a,))
        for a in range(n):
            if 0 not in t[a] or all(t[b][a] != 0 for b in range(n)):
                raise NotAGroup(f"{self.name}: element {a} has no inverse", (a,))
            for b in range(n):
                if t[a][b] == 0 and t[b][a] != 0:
                    raise NotAGroup(f"{self.name}: inverse of {a} is not two-sided", (a, b))
        for a in range(n):
            ta = t[a]
            for b in range(n):
                ab = ta[b]
                tb = t[b]
                tab = t[ab]
                for c in range(n):
                    if tab[c] != ta[tb[c]]:
                        raise NotAGroup(
                            f"{self.name}: associativity fails for triple ({a},{b},{c})", (a, b, c)
                        )

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return self._hash

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(range(self.order))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inv_table[a]

    def prod(self, *xs: int) -> int:
        out = 0
        for x in xs:
            out = self.table[out][x]
        return out

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        return self.table[self.table[g][x]][self.inv_table[g]]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def span(self, gens: Iterable[int]) -> frozenset[int]:
        """The subgroup generated by ``gens``."""
        gens = list(gens)
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily in element order.

        Elements of larger order are tried first so cyclic groups get a
        single generator.
        """
        gens: list[int] = []
        current = frozenset({0})
        candidates = sorted(range(1, self.order), key=lambda a: (-self.element_order(a), a))
        while len(current) < self.order:
            best = None
            for a in candidates:
                if a in current:
                    continue
                size = len(self.span(gens + [a]))
                if best is None or size > best[0]:
                    best = (size, a)
            gens.append(best[1])
            current = self.span(gens)
        return tuple(gens)

    def is_subgroup(self, subset: Iterable[int]) -> bool:
        s = set(subset)
        if 0 not in s:
            return False
        return all(self.table[a][self.inv_table[b]] in s for a in s for b in s)

    def is_normal(self, subset: Iterable[int]) -> bool:
        s = frozenset(subset)
        return self.is_subgroup(s) and all(self.conj(g, x) in s for g in range(self.order) for x in s)

    def to_json(self) -> dict:
        return {"name": self.name, "order": self.order, "table": [list(r) for r in self.table]}


def perm_group(name: str, perms: Sequence[Perm]) -> tuple[FiniteGroup, dict[Perm, int]]:
    """Build the group of a list of permutations closed under composition.

    ``perms[0]`` must be the identity; element ``k`` of the result is
    ``perms[k]``. Returns the group and the lookup ``perm -> index``.
    """
    index = {p: k for k, p in enumerate(perms)}
    if len(index) != len(perms):
        raise ValidationError(f"{name}: duplicate permutations")
    if perms[0] != tuple(range(len(perms[0]))):
        raise ValidationError(f"{name}: first permutation must be the identity")
    table = []
    for p in perms:
        row = []
        for q in perms:
            r = compose(p, q)
            if r not in index:
                raise ValidationError(f"{name}: permutations are not closed under composition")
            row.append(index[r])
        table.append(row)
    return FiniteGroup(name, table, check=False), index


class GroupHom:
    """A homomorphism given by the images of all source elements."""

    def __init__(self, source: FiniteGroup, target: FiniteGroup, images: Sequence[int], *, check: bool = True):
        self.source = source
        self.target = target
        self.images: tuple[int, ...] = tuple(int(x) for x in images)
        if check:
            self._validate()

    def _validate(self) -> None:
        s, t = self.source, self.target
        if len(self.images) != s.order:
            raise NotAHomomorphism(
                f"hom {s.name}->{t.name}: {len(self.images)} images for {s.order} elements"
            )
        for x, y in enumerate(self.images):
            if not 0 <= y < t.order:
                raise NotAHomomorphism(f"hom {s.name}->{t.name}: image of {x} out of range", (x,))
        if self.images[0] != 0:
            raise NotAHomomorphism(f"hom {s.name}->{t.name}: identity not sent to identity", (0,))
        im = self.images
        for x in range(s.order):
            for y in range(s.order):
                if im[s.table[x][y]] != t.table[im[x]][im[y]]:
                    raise NotAHomomorphism(
                        f"hom {s.name}->{t.name}: f({x}*{y}) != f({x})*f({y})", (x, y)
                    )

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __repr__(self):
        return f"GroupHom({self.source.name} -> {self.target.name})"

    @classmethod
    def identity(cls, G: FiniteGroup) -> GroupHom:
        return cls(G, G, range(G.order), check=False)

    @classmethod
    def trivial(cls, source: FiniteGroup, target: FiniteGroup) -> GroupHom:
        return cls(source, target, [0] * source.order, check=False)

    def then(self, other: GroupHom) -> GroupHom:
        """``other o self``."""
        return GroupHom(self.source, other.target, [other.images[y] for y in self.images], check=False)

    @cached_property
    def kernel(self) -> frozenset[int]:
        return frozenset(x for x, y in enumerate(self.images) if y == 0)

    @cached_property
    def image(self) -> frozenset[int]:
        return frozenset(self.images)

    @property
    def is_injective(self) -> bool:
        return len(self.kernel) == 1

    @property
    def is_surjective(self) -> bool:
        return len(self.image) == self.target.order

    def to_json(self) -> dict:
        return {"source": self.source.name, "target": self.target.name, "images": list(self.images)}


# -- standard groups ---------------------------------------------------------


def _check_bound(order: int, bound: int) -> None:
    if order > bound:
        raise UnsupportedSize(f"group order {order} exceeds order bound {bound}")


def cyclic(n: int, bound: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    """Z/n with element k standing for k mod n; generator 1."""
    if n < 1:
        raise ValueError("cyclic group needs n >= 1")
    _check_bound(n, bound)
    return FiniteGroup(f"Z{n}", [[(i + j) % n for j in range(n)] for i in range(n)], check=False)


def dihedral(n: int, bound: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n.

    Element ``k + n*e`` is ``r^k s^e``; the generators are r = 1 and s = n.
    """
    if n < 1:
        raise ValueError("dihedral group needs n >= 1")
    _check_bound(2 * n, bound)

    def mul(x, y):
        k1, e1 = x % n, x // n
        k2, e2 = y % n, y // n
        # s r^k = r^-k s
        k = (k1 + (-k2 if e1 else k2)) % n
        return k + n * ((e1 + e2) % 2)

    N = 2 * n
    return FiniteGroup(f"D{n}", [[mul(x, y) for y in range(N)] for x in range(N)])


def symmetric(n: int, bound: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    """S_n on ``range(n)``; elements are permutations in lexicographic order.

    For S3 the order is 012, 021, 102, 120, 201, 210, so the transpositions
    are 1, 2, 5 and the 3-cycles are 3, 4.
    """
    if n < 1:
        raise ValueError("symmetric group needs n >= 1")
    perms = list(itertools.permutations(range(n)))
    _check_bound(len(perms), bound)
    G, _ = perm_group(f"S{n}", perms)
    return G


def quaternion8(bound: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    """Q8 with elements 1,-1,i,-i,j,-j,k,-k numbered 0..7; generators i = 2, j = 4."""
    _check_bound(8, bound)
    # unit index: 0=1, 1=i, 2=j, 3=k ; element = 2*unit + sign
    unit_mul = {
        (0, 0): (0, 0), (0, 1): (1, 0), (0, 2): (2, 0), (0, 3): (3, 0),
        (1, 0): (1, 0), (1, 1): (0, 1), (1, 2): (3, 0), (1, 3): (2, 1),
        (2, 0): (2, 0), (2, 1): (3, 1), (2, 2): (0, 1), (2, 3): (1, 0),
        (3, 0): (3, 0), (3, 1): (2, 0), (3, 2): (1, 1), (3, 3): (0, 1),
    }

    def mul(x, y):
        u, s = unit_mul[(x // 2, y // 2)]
        return 2 * u + (s + x % 2 + y % 2) % 2

    return FiniteGroup("Q8", [[mul(x, y) for y in range(8)] for x in range(8)])


def direct_product(G: FiniteGroup, H: FiniteGroup, bound: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    """G x H with (g, h) numbered ``g*|H| + h``."""
    _check_bound(G.order * H.order, bound)
    m = H.order

    def mul(x, y):
        return G.table[x // m][y // m] * m + H.table[x % m][y % m]

    N = G.order * m
    return FiniteGroup(f"{G.name}x{H.name}", [[mul(x, y) for y in range(N)] for x in range(N)], check=False)


def make_standard_group(kind: str, *params, bound: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    """Construct one of the built-in groups by name.

    >>> make_standard_group("cyclic", 4).table[3][2]
    1
    """
    if kind == "cyclic":
        return cyclic(*params, bound=bound)
    if kind == "dihedral":
        return dihedral(*params, bound=bound)
    if kind == "symmetric":
        return symmetric(*params, bound=bound)
    if kind == "quaternion8":
        return quaternion8(bound=bound)
    if kind == "direct_product":
        return direct_product(*params, bound=bound)
    raise ValueError(f"unknown group kind {kind!r}")


# -- subgroups, centers, quotients --------------------------------------------


def subgroup(G: FiniteGroup, members: Iterable[int], name: str | None = None) -> tuple[FiniteGroup, GroupHom]:
    """Package a subgroup as its own group (renumbered in increasing order)."""
    elems = sorted(set(members))
    if not G.is_subgroup(elems):
        raise ValidationError(f"{G.name}: subset {elems} is not a subgroup")
    pos = {x: k for k, x in enumerate(elems)}
    table = [[pos[G.table[x][y]] for y in elems] for x in elems]
    H = FiniteGroup(name or f"sub({G.name})", table, check=False)
    return H, GroupHom(H, G, elems, check=False)


def compute_center(G: FiniteGroup) -> tuple[FiniteGroup, GroupHom]:
    t = G.table
    members = [z for z in range(G.order) if all(t[z][g] == t[g][z] for g in range(G.order))]
    return subgroup(G, members, name=f"Z({G.name})")


def quotient_group(G: FiniteGroup, N: Iterable[int], name: str | None = None) -> tuple[FiniteGroup, GroupHom]:
    """G/N with cosets numbered by their least member."""
    N = frozenset(N)
    if not G.is_subgroup(N):
        raise NotNormal(f"{G.name}: {sorted(N)} is not a subgroup")
    for g in range(G.order):
        for x in N:
            if G.conj(g, x) not in N:
                raise NotNormal(f"{G.name}: {g}*{x}*{g}^-1 not in N", (g, x))
    coset_of = [-1] * G.order
    reps: list[int] = []
    for g in range(G.order):
        if coset_of[g] < 0:
            k = len(reps)
            reps.append(g)
            for x in N:
                coset_of[G.table[g][x]] = k
    table = [[coset_of[G.table[a][b]] for b in reps] for a in reps]
    Q = FiniteGroup(name or f"{G.name}/N", table, check=False)
    return Q, GroupHom(G, Q, coset_of, check=False)


# -- automorphisms --------------------------------------------------------------


def _word_tree(G: FiniteGroup, gens: Sequence[int]) -> list[tuple[int, int, int]]:
    """BFS spanning tree: triples (x, g, y) with x = g*y, y found before x."""
    seen = {0}
    order = [0]
    steps = []
    for y in order:
        for g in gens:
            x = G.table[g][y]
            if x not in seen:
                seen.add(x)
                order.append(x)
                steps.append((x, g, y))
    return steps


def automorphisms(A: FiniteGroup) -> list[Perm]:
    """All automorphisms of A, by backtracking over generator images.

    Images of each generator are restricted to elements of the same order;
    a full assignment is extended along a BFS tree and kept when it is a
    bijective homomorphism. Sorted lexicographically.
    """
    n = A.order
    gens = A.generators
    steps = _word_tree(A, gens)
    orders = [A.element_order(a) for a in range(n)]
    choices = [[b for b in range(n) if orders[b] == orders[g]] for g in gens]
    t = A.table
    found = []
    img_of_gen: list[int] = [0] * len(gens)

    def extend():
        img = [-1] * n
        img[0] = 0
        gen_img = dict(zip(gens, img_of_gen))
        for x, g, y in steps:
            img[x] = t[gen_img[g]][img[y]]
        if len(set(img)) != n:
            return None
        for g in gens:
            ig = gen_img[g]
            for y in range(n):
                if img[t[g][y]] != t[ig][img[y]]:
                    return None
        return tuple(img)

    def rec(k, used):
        if k == len(gens):
            p = extend()
            if p is not None:
                found.append(p)
            return
        for b in choices[k]:
            if b in used:
                continue
            img_of_gen[k] = b
            rec(k + 1, used | {b})

    rec(0, frozenset())
    found.sort()
    return found


def automorphisms_by_scan(A: FiniteGroup) -> list[Perm]:
    """All automorphisms by filtering every bijection; only for tiny groups."""
    if A.order > 8:
        raise UnsupportedSize("bijection scan is limited to order 8")
    n = A.order
    t = A.table
    out = []
    for p in itertools.permutations(range(n)):
        if all(p[t[x][y]] == t[p[x]][p[y]] for x in range(n) for y in range(n)):
            out.append(p)
    return out


class AutGroup:
    """A group of automorphisms of ``base``.

    Carrier element ``k`` is realized by the permutation ``perms[k]``;
    element 0 is the identity automorphism. The carrier table is built on
    first use, since |Aut A| can be much larger than |A|.
    """

    def __init__(self, base: FiniteGroup, perms: Sequence[Perm], name: str | None = None):
        self.base = base
        self.perms: tuple[Perm, ...] = tuple(perms)
        self.index: dict[Perm, int] = {p: k for k, p in enumerate(self.perms)}
        self.name = name or f"Aut({base.name})"
        t = base.table
        inv = base.inv_table
        inn_perms = [tuple(t[t[a][x]][inv[a]] for x in range(base.order)) for a in range(base.order)]
        self.inn_of: tuple[int, ...] = tuple(self.index[p] for p in inn_perms)
        self.inn_subgroup: frozenset[int] = frozenset(self.inn_of)

    @property
    def order(self) -> int:
        return len(self.perms)

    def realize(self, k: int) -> Perm:
        return self.perms[k]

    def compose(self, j: int, k: int) -> int:
        return self.index[compose(self.perms[j], self.perms[k])]

    def inverse(self, k: int) -> int:
        return self.index[invert_perm(self.perms[k])]

    def lookup(self, p: Perm) -> int:
        try:
            return self.index[tuple(p)]
        except KeyError:
            raise ValidationError(f"{self.name}: permutation {list(p)} is not an automorphism of {self.base.name}") from None

    @cached_property
    def carrier(self) -> FiniteGroup:
        G, _ = perm_group(self.name, self.perms)
        return G

    def __repr__(self):
        return f"AutGroup({self.base.name}, order={self.order})"


@lru_cache(maxsize=256)
def compute_aut(A: FiniteGroup, bound: int = DEFAULT_ORDER_BOUND) -> AutGroup:
    _check_bound(A.order, bound)
    return AutGroup(A, automorphisms(A))


def is_automorphism(A: FiniteGroup, p: Sequence[int]) -> bool:
    n = A.order
    if sorted(p) != list(range(n)):
        return False
    t = A.table
    return all(p[t[x][y]] == t[p[x]][p[y]] for x in range(n) for y in range(n))


def out_group(A: FiniteGroup) -> tuple[FiniteGroup, GroupHom]:
    """Out A = Aut A / Inn A with its projection."""
    aut = compute_aut(A)
    return quotient_group(aut.carrier, aut.inn_subgroup, name=f"Out({A.name})")


def inner_group(B: FiniteGroup) -> tuple[FiniteGroup, GroupHom, list[Perm]]:
    """Inn B as a group of permutations of B.

    Inner automorphisms are numbered by the least b realizing them. Returns
    the group, the surjection ``b -> inn(b)`` and the permutations.
    """
    t, inv = B.table, B.inv_table
    perms: list[Perm] = []
    index: dict[Perm, int] = {}
    images = []
    for b in range(B.order):
        p = tuple(t[t[b][x]][inv[b]] for x in range(B.order))
        if p not in index:
            index[p] = len(perms)
            perms.append(p)
        images.append(index[p])
    G, _ = perm_group(f"Inn({B.name})", perms)
    return G, GroupHom(B, G, images, check=False), perms


@dataclass(frozen=True)
class RestrictedInn:
    """G = (Inn B)|_A together with the surjection Inn B -> G."""

    group: FiniteGroup
    perms: tuple[Perm, ...]
    inn_B: FiniteGroup
    inn: GroupHom
    restriction: GroupHom

    @property
    def collisions(self) -> list[tuple[int, ...]]:
        """Fibres of Inn B -> G with more than one element."""
        fibres: dict[int, list[int]] = {}
        for x, y in enumerate(self.restriction.images):
            fibres.setdefault(y, []).append(x)
        return [tuple(v) for _, v in sorted(fibres.items()) if len(v) > 1]


def restricted_inn_group(B: FiniteGroup, embedding: GroupHom) -> RestrictedInn:
    """Restrict the inner automorphisms of B to a normal subgroup i(A).

    Elements of G are numbered by the least b in B inducing them; G acts on
    A's own element indices.
    """
    if embedding.target != B:
        raise ValidationError("embedding must land in B")
    if not embedding.is_injective:
        raise ValidationError("embedding is not injective")
    image = embedding.images
    if not B.is_normal(image):
        raise NotNormal(f"image of {embedding.source.name} is not normal in {B.name}")
    back = {y: x for x, y in enumerate(image)}
    A = embedding.source
    innB, inn, _ = inner_group(B)
    perms: list[Perm] = []
    index: dict[Perm, int] = {}
    per_inn = [-1] * innB.order
    for b in range(B.order):
        k = inn.images[b]
        if per_inn[k] >= 0:
            continue
        p = tuple(back[B.conj(b, image[a])] for a in range(A.order))
        if p not in index:
            index[p] = len(perms)
            perms.append(p)
        per_inn[k] = index[p]
    G, _ = perm_group(f"Inn({B.name})|{A.name}", perms)
    restriction = GroupHom(innB, G, per_inn)
    return RestrictedInn(G, tuple(perms), innB, inn, restriction)
