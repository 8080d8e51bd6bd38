import pytest

import frozen
from conftest import std_groups
from nacoh.errors import NotAGroup, NotAHomomorphism, NotNormal, UnsupportedSize, ValidationError
from nacoh.groups import (
    FiniteGroup,
    GroupHom,
    automorphisms_by_scan,
    compute_aut,
    compute_center,
    cyclic,
    dihedral,
    direct_product,
    inner_group,
    is_automorphism,
    make_standard_group,
    out_group,
    quaternion8,
    quotient_group,
    restricted_inn_group,
    symmetric,
)

G = std_groups()


def test_standard_groups():
    assert make_standard_group("cyclic", 1).order == 1
    Z4 = make_standard_group("cyclic", 4)
    assert Z4.table == tuple(tuple((i + j) % 4 for j in range(4)) for i in range(4))
    S3 = make_standard_group("symmetric", 3)
    assert S3.order == 6
    assert [S3.element_order(x) for x in S3].count(2) == frozen.S3_INVOLUTIONS
    assert make_standard_group("dihedral", 4).order == 8
    assert make_standard_group("quaternion8").order == 8
    assert make_standard_group("direct_product", cyclic(2), cyclic(3)).is_abelian


def test_order_bound():
    with pytest.raises(UnsupportedSize):
        make_standard_group("cyclic", 25)
    assert make_standard_group("cyclic", 30, bound=30).order == 30
    with pytest.raises(ValueError):
        make_standard_group("heisenberg", 3)


def test_dihedral_and_quaternion_structure():
    D4 = dihedral(4)
    assert not D4.is_abelian
    assert sorted(D4.element_order(x) for x in D4).count(2) == 5
    Q = quaternion8()
    assert sorted(Q.element_order(x) for x in Q) == [1, 2, 4, 4, 4, 4, 4, 4]


def test_non_associative_table_names_triple():
    # a Latin square with identity 0 that is not associative
    t = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(NotAGroup) as e:
        FiniteGroup("bad", t)
    assert "associativity" in str(e.value)
    a, b, c = e.value.witness
    assert t[t[a][b]][c] != t[a][t[b][c]]


def test_other_malformed_tables():
    with pytest.raises(NotAGroup):
        FiniteGroup("ragged", [[0, 1], [1]])
    with pytest.raises(NotAGroup):
        FiniteGroup("range", [[0, 2], [2, 0]])
    with pytest.raises(NotAGroup):
        FiniteGroup("no-identity", [[1, 0], [0, 1]])
    with pytest.raises(NotAGroup):
        FiniteGroup("no-inverse", [[0, 1], [1, 1]])


def test_center():
    Z, emb = compute_center(G["Z4"])
    assert Z.order == 4
    assert compute_center(G["S3"])[0].order == frozen.CENTER_ORDER["S3"]
    ZQ, emb = compute_center(quaternion8())
    assert ZQ.order == frozen.CENTER_ORDER["Q8"]
    assert emb.is_injective


@pytest.mark.parametrize("name", ["Z2", "Z3", "Z4", "Z2xZ2", "S3"])
def test_aut_matches_scan(name):
    A = G[name]
    aut = compute_aut(A)
    assert sorted(aut.perms) == sorted(automorphisms_by_scan(A))
    assert aut.order == frozen.AUT_ORDER[name]
    assert aut.perms[0] == tuple(range(A.order))
    assert all(is_automorphism(A, p) for p in aut.perms)


def test_aut_of_s3_is_inner():
    aut = compute_aut(G["S3"])
    assert aut.inn_subgroup == frozenset(range(6))
    assert out_group(G["S3"])[0].order == 1
    assert out_group(G["Z2xZ2"])[0].order == 6


def test_aut_carrier_group():
    aut = compute_aut(G["Z2xZ2"])
    C = aut.carrier
    assert C.order == 6 and not C.is_abelian
    for j in range(6):
        for k in range(6):
            assert aut.compose(j, k) == C.mul(j, k)
    with pytest.raises(ValidationError):
        aut.lookup((0, 0, 1, 2))


def test_quotient():
    Q, p = quotient_group(G["Z4"], [0])
    assert Q.order == 4
    assert quotient_group(G["Z4"], range(4))[0].order == 1
    Q, p = quotient_group(G["Z4"], [0, 2])
    assert Q.order == 2 and p.images == (0, 1, 0, 1)
    with pytest.raises(NotNormal):
        quotient_group(G["S3"], [0, 1])


def test_homs():
    Z4, Z2 = G["Z4"], G["Z2"]
    j = GroupHom(Z4, Z2, [0, 1, 0, 1])
    assert j.kernel == frozenset({0, 2}) and j.is_surjective and not j.is_injective
    with pytest.raises(NotAHomomorphism):
        GroupHom(Z4, Z2, [0, 1, 1, 0])
    assert GroupHom.identity(Z4).then(j).images == j.images


def test_inner_group():
    Inn, inn, perms = inner_group(G["S3"])
    assert Inn.order == 6 and inn.is_injective
    assert inner_group(quaternion8())[0].order == 4
    assert inner_group(G["Z4"])[0].order == 1


def test_restricted_inn():
    Z4, S3 = G["Z4"], G["S3"]
    r = restricted_inn_group(Z4, GroupHom(G["Z2"], Z4, [0, 2]))
    assert r.group.order == 1
    A3 = GroupHom(G["Z3"], S3, [0, 3, 4])
    r = restricted_inn_group(S3, A3)
    assert r.group.order == 2
    assert r.perms[1] == (0, 2, 1)
    assert r.restriction.is_surjective
    # A = B gives Inn B itself
    r = restricted_inn_group(S3, GroupHom.identity(S3))
    assert r.group.order == 6 and not r.collisions
    with pytest.raises(NotNormal):
        restricted_inn_group(S3, GroupHom(G["Z2"], S3, [0, 1]))


def test_direct_product_indexing():
    P = direct_product(cyclic(2), cyclic(3))
    assert P.mul(1 * 3 + 2, 1 * 3 + 2) == 0 * 3 + 1
    assert symmetric(3).is_normal([0, 3, 4])
