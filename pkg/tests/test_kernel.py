import pytest

import frozen
from conftest import GRID, gamma_group, std_groups
from nacoh.abelian import h2_abelian
from nacoh.crossed import trivial_group_over
from nacoh.errors import NotACocycle
from nacoh.kernel import (
    KernelCocycle2,
    center_h2_action,
    crossed_to_kernel,
    crossed_to_kernel_encoding,
    enumerate_z2_kernel,
    enumerate_z2_kernel_encodings,
    h2_kernel,
    inn_module,
    kernel_to_crossed,
    kernel_to_crossed_encoding,
    lambda_map,
)

G = std_groups()


def test_trivial_a_one_cocycle():
    assert len(enumerate_z2_kernel(trivial_group_over(G["Z2"]))) == 1


def test_z2_kernel_cocycles_are_classical():
    A = gamma_group("Z2", "Z2")
    ks = enumerate_z2_kernel(A)
    assert {k.f for k in ks} == {(0, 0)}
    assert sorted(k.u for k in ks) == sorted(h2_abelian(A).cocycles)


@pytest.mark.parametrize("a,g,inv", GRID)
def test_unit_cocycle_present(a, g, inv):
    A = gamma_group(a, g, inv)
    fa = tuple(A.aut.lookup(p) for p in A.act)
    unit = (0,) * (A.gamma.order ** 2) + fa
    assert unit in enumerate_z2_kernel_encodings(A)
    h = h2_kernel(A)
    assert h.classes[h.unit_class].neutral


def test_kernel_cocycle_validation():
    A = gamma_group("S3", "Z2")
    with pytest.raises(NotACocycle):
        KernelCocycle2(A, [0, 0, 0, 1], [0, 0])


def test_h2_kernel_examples():
    h = h2_kernel(gamma_group("Z2", "Z2"))
    assert len(h) == 2 and len(h.neutral_classes) == 1
    h = h2_kernel(gamma_group("S3", "Z2"))
    assert len(h) == 1 and h.classes[0].unit and h.classes[0].neutral


@pytest.mark.parametrize("key", [("Z2", "Z2"), ("Z3", "Z3"), ("Z4", "Z2"), ("Z2xZ2", "Z2")])
def test_abelian_kernel_matches_classical(key):
    # for abelian A the f-component is forced to f_A
    A = gamma_group(*key)
    assert len(h2_kernel(A)) == len(h2_abelian(A))


def test_kernel_to_crossed_examples():
    A = gamma_group("S3", "Z2")
    fa = tuple(A.aut.lookup(p) for p in A.act)
    unit = KernelCocycle2(A, (0, 0, 0, 0), fa)
    z = kernel_to_crossed(unit)
    assert z.u == (0, 0, 0, 0) and z.psi == (0, 0)
    for k in enumerate_z2_kernel(A):
        if not any(k.u):
            assert kernel_to_crossed(k).is_neutral


def test_round_trip_z3_inversion():
    A = gamma_group("Z3", "Z2", inversion=True)
    M = inn_module(A)
    for e in enumerate_z2_kernel_encodings(A):
        c = kernel_to_crossed_encoding(A, e)
        assert crossed_to_kernel_encoding(A, c) == e
        z = kernel_to_crossed(KernelCocycle2.from_encoding(A, e))
        assert z.module is M
        assert crossed_to_kernel(z, A).encoding == e


@pytest.mark.parametrize("a,g,inv", GRID)
def test_lambda_bijective(a, g, inv):
    A = gamma_group(a, g, inv)
    r = lambda_map(A)
    assert r.passed, r
    assert r.second_proof_checked == len(r.thin.cocycles) * A.group.order


def test_lambda_examples():
    r = lambda_map(gamma_group("Z2", "Z2"))
    assert len(r.h2) == len(r.thin) == 2 and r.bijective
    r = lambda_map(gamma_group("S3", "Z2"))
    assert len(r.h2) == len(r.thin) == 1 and r.bijective and not r.second_proof_failures


@pytest.mark.parametrize("a", ["Z2", "Z4", "Z2xZ2", "S3"])
def test_center_action(a):
    r = center_h2_action(gamma_group(a, "Z2"))
    assert r.passed, r


def test_center_action_examples():
    r = center_h2_action(gamma_group("S3", "Z2"))
    assert len(r.center_h2) == 1 and len(r.h2) == 1
    r = center_h2_action(gamma_group("Z2", "Z2"))
    assert len(r.center_h2) == 2 and r.simply_transitive
    assert sorted(r.action[1]) == [0, 1] and r.action[1] != [0, 1]
    r = center_h2_action(gamma_group("Z4", "Z2"))
    assert r.mu_bijective and len(r.mu) == frozen.INN[("Z4", "Z2")][1]
