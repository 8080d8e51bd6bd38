import pytest

from conftest import gamma_group, std_groups
from nacoh.errors import NotAbelian, NotACocycle, NotAnAction, ValidationError
from nacoh.gamma import (
    Cocycle1,
    GammaGroup,
    action_via,
    induced_action_on_aut,
    is_equivariant,
    make_gamma_group,
    restrict_gamma_group,
    trivial_gamma_group,
    twist_by_cocycle,
)
from nacoh.groups import GroupHom, compute_aut, cyclic, inner_group

G = std_groups()


def test_trivial_and_inversion_actions():
    X = trivial_gamma_group(G["Z2"], G["S3"])
    assert X.is_trivial_action
    Y = gamma_group("Z3", "Z2", inversion=True)
    assert Y.apply(1, 1) == 2
    assert not Y.is_trivial_action


def test_make_gamma_group_from_hom():
    Z3 = G["Z3"]
    aut = compute_aut(Z3)
    inv = aut.lookup((0, 2, 1))
    X = make_gamma_group(G["Z2"], Z3, GroupHom(G["Z2"], aut.carrier, [0, inv]))
    assert X.act == ((0, 1, 2), (0, 2, 1))
    assert X.action.images == (0, inv)


def test_non_automorphism_action_rejected():
    with pytest.raises(NotAnAction) as e:
        GammaGroup(G["Z2"], G["Z3"], [(0, 1, 2), (1, 0, 2)])
    assert e.value.witness[0] == 1


def test_non_homomorphic_action_rejected():
    # Z3 cannot act on Z3 by inversion: applying it three times is not the identity
    with pytest.raises(NotAnAction):
        GammaGroup(G["Z3"], G["Z3"], [(0, 1, 2), (0, 2, 1), (0, 2, 1)])


def test_action_via_generators():
    act = action_via(G["Z4"], G["Z2xZ2"], {1: (0, 2, 1, 3)})
    X = GammaGroup(G["Z4"], G["Z2xZ2"], act)
    assert X.act[2] == (0, 1, 2, 3)


def test_induced_action_trivial():
    ind = induced_action_on_aut(trivial_gamma_group(G["Z2"], G["S3"]))
    assert ind.on_aut.is_trivial_action and ind.on_inn.is_trivial_action


def test_induced_action_on_aut_z3_inversion():
    ind = induced_action_on_aut(gamma_group("Z3", "Z2", inversion=True))
    assert ind.aut.order == 2
    assert ind.on_aut.is_trivial_action


def test_inn_equivariance_identity():
    # ^s(inn b) = inn(^s b), here with S3 conjugated by a transposition
    S3 = G["S3"]
    X = GammaGroup(G["Z2"], S3, [tuple(range(6)), tuple(S3.conj(1, x) for x in range(6))])
    ind = induced_action_on_aut(X)
    inn = ind.inn_of.images
    for s in range(2):
        for b in range(6):
            assert ind.on_inn.act[s][inn[b]] == inn[X.act[s][b]]


def test_is_equivariant():
    Z4 = trivial_gamma_group(G["Z2"], G["Z4"])
    Z2 = trivial_gamma_group(G["Z2"], G["Z2"])
    assert is_equivariant(GroupHom.identity(G["Z4"]), Z4, Z4)
    assert is_equivariant(GroupHom(G["Z2"], G["Z4"], [0, 2]), Z2, Z4)
    Z3 = gamma_group("Z3", "Z2", inversion=True)
    S3 = trivial_gamma_group(G["Z2"], G["S3"])
    assert not is_equivariant(GroupHom(G["Z3"], G["S3"], [0, 3, 4]), Z3, S3)


def test_restrict_gamma_group():
    S3 = G["S3"]
    X = GammaGroup(G["Z2"], S3, [tuple(range(6)), tuple(S3.conj(1, x) for x in range(6))])
    A = restrict_gamma_group(X, GroupHom(G["Z3"], S3, [0, 3, 4]))
    assert A.act[1] == (0, 2, 1)
    with pytest.raises(ValidationError):
        restrict_gamma_group(X, GroupHom(G["Z2"], S3, [0, 2]))


def test_cocycle1():
    S3 = trivial_gamma_group(G["Z2"], G["S3"])
    assert Cocycle1(S3, [0, 1])[1] == 1
    with pytest.raises(NotACocycle):
        Cocycle1(S3, [0, 3])
    with pytest.raises(NotACocycle):
        Cocycle1(S3, [1, 1])


def test_twist_identity_and_inversion():
    Z3 = trivial_gamma_group(G["Z2"], G["Z3"])
    Gz = trivial_gamma_group(G["Z2"], G["Z2"])
    g_act = [(0, 1, 2), (0, 2, 1)]
    assert twist_by_cocycle(Z3, g_act, [0, 0], Gz).twisted_action == Z3.act
    tw = twist_by_cocycle(Z3, g_act, [0, 1], Gz)
    assert tw.twisted_action == ((0, 1, 2), (0, 2, 1))


def test_twist_rejects_bad_input():
    Gz = trivial_gamma_group(G["Z3"], G["Z2"])
    Z3 = trivial_gamma_group(G["Z3"], G["Z3"])
    with pytest.raises(NotACocycle):
        twist_by_cocycle(Z3, [(0, 1, 2), (0, 2, 1)], [0, 1, 1], Gz)
    S3 = trivial_gamma_group(G["Z2"], G["S3"])
    _, _, perms = inner_group(G["S3"])
    with pytest.raises(NotAbelian):
        twist_by_cocycle(S3, perms, [0, 0], trivial_gamma_group(G["Z2"], cyclic(6)))
