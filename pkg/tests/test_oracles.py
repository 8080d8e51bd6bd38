"""The frozen values are what the brute-force oracles compute."""

import pytest

import frozen
import oracles as o

Z2, Z3, Z4 = o.cyclic_table(2), o.cyclic_table(3), o.cyclic_table(4)
TABLES = {"Z2": Z2, "Z3": Z3, "Z4": Z4, "Z2xZ2": o.product_table(Z2, Z2),
          "S3": o.perm_table(o.s3_perms()), "Z6": o.cyclic_table(6)}
GAMMAS = {"Z2": Z2, "Z3": Z3}


def triv(gt, m):
    return [tuple(range(m))] * len(gt)


def inn_data(at):
    perms, rho = [], []
    for b in range(len(at)):
        p = o.conj_perm(at, b)
        if p not in perms:
            perms.append(p)
        rho.append(perms.index(p))
    return o.perm_table(perms), rho, perms


def q8_table():
    # quaternion units as (sign, unit) with i*j = k
    units = ["1", "i", "j", "k"]
    prod = {("1", x): (1, x) for x in units}
    prod.update({(x, "1"): (1, x) for x in units})
    prod.update({("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
                 ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                 ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})
    elems = [(s, x) for x in units for s in (1, -1)]
    idx = {e: k for k, e in enumerate(elems)}

    def mul(a, b):
        s, x = prod[(a[1], b[1])]
        return (a[0] * b[0] * s, x)

    return [[idx[mul(a, b)] for b in elems] for a in elems]


def test_aut_orders():
    assert {k: len(o.automorphisms(TABLES[k])) for k in frozen.AUT_ORDER} == frozen.AUT_ORDER


def test_centers_and_involutions():
    assert len(o.center(TABLES["S3"])) == frozen.CENTER_ORDER["S3"]
    assert len(o.center(q8_table())) == frozen.CENTER_ORDER["Q8"]
    assert o.element_orders(TABLES["S3"]).count(2) == frozen.S3_INVOLUTIONS


def test_h1_values():
    for (a, g), n in frozen.Z1_COUNT.items():
        assert len(o.z1(GAMMAS[g], TABLES[a], triv(GAMMAS[g], len(TABLES[a])))) == n
    for (a, g), n in frozen.H1_COUNT.items():
        assert o.h1_count(GAMMAS[g], TABLES[a], triv(GAMMAS[g], len(TABLES[a]))) == n


def test_abelian_h2_values():
    for (a, g), n in frozen.H2_ABELIAN.items():
        gt, at = GAMMAS[g], TABLES[a]
        assert o.abelian_h2_count(gt, at, triv(gt, len(at))) == n


def test_z2_to_1_values():
    M = o.Crossed(Z2, Z2, [[0]], [0, 0], [(0, 1)], triv(Z2, 2), triv(Z2, 1))
    cl = M.classes()
    assert (len(M.z2()), len(cl), sum(M.neutral(x) for x in cl)) == tuple(frozen.Z2_TO_1.values())


@pytest.mark.parametrize("key", sorted(frozen.INN))
def test_inn_values(key):
    a, g = key
    gt, at = GAMMAS[g], TABLES[a]
    It, rho, perms = inn_data(at)
    M = o.Crossed(gt, at, It, rho, perms, triv(gt, len(at)), triv(gt, len(It)))
    thin = M.classes()
    got = (len(M.z2()), len(thin), len(M.classes(thin=False)), sum(M.neutral(x) for x in thin))
    assert got == frozen.INN[key]


def test_inversion_over_z3_values():
    M = o.Crossed(Z3, Z3, Z2, [0, 0, 0], [(0, 1, 2), (0, 2, 1)], triv(Z3, 3), triv(Z3, 2))
    assert len(M.classes()) == frozen.Z3_INVERSION_OVER_Z3["thin"]
    assert o.abelian_h2_count(Z3, Z3, triv(Z3, 3)) == frozen.Z3_INVERSION_OVER_Z3["twisted_h2"]
