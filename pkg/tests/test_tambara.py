from dataclasses import replace

import pytest

from bitambara.construct import burnside, constant_Z
from bitambara.lattice import cyclic_lattice
from bitambara.tambara import (
    check_all,
    check_double_coset,
    check_frobenius,
    check_tambara_reciprocity,
    cohomological,
    forget_pair,
    restrict_component,
)
from bitambara.transfer import enumerate_compatible_pairs, named_system, parse_system

C4 = cyclic_lattice(4)


def O(name, lat=C4):
    return parse_system(lat, name)


def test_individual_checks_pass():
    for T in (burnside(2), constant_Z(4)):
        assert check_frobenius(T, 200) is None
        assert check_double_coset(T, 200) is None
        assert check_tambara_reciprocity(T, 200) is None


def test_corrupted_transfer_is_caught():
    B = burnside(2)
    bad = replace(B, tr={**B.tr, (1, 2): [[1, 1]]})   # 1 |-> 1 + t
    assert check_frobenius(bad, 200) is not None


def test_corrupted_norm_is_caught():
    B = burnside(2)
    bad = replace(B, nm={**B.nm, (1, 2): lambda x: (x[0], 0)}, norm_formulas={})
    assert check_all(bad, 200) != []


def test_forget_pair_drops_maps():
    B = burnside(4)
    T = forget_pair(B, O("Otriv"), O("Ocomp"))
    assert not T.nm_pairs() and set(T.tr_pairs()) == {(1, 2), (1, 4), (2, 4)}
    coeff = forget_pair(B, O("Otriv"), O("Otriv"))
    assert not coeff.nm_pairs() and not coeff.tr_pairs()
    same = forget_pair(B, O("Ocomp"), O("Ocomp"))
    assert set(same.nm_pairs()) == set(B.nm_pairs()) and set(same.tr_pairs()) == set(B.tr_pairs())


def test_forget_pair_composes():
    B = burnside(4)
    once = forget_pair(B, O("O1"), O("O3"))
    twice = forget_pair(forget_pair(B, O("O1"), O("Ocomp")), O("O1"), O("O3"))
    assert set(once.nm_pairs()) == set(twice.nm_pairs())
    assert set(once.tr_pairs()) == set(twice.tr_pairs())


@pytest.mark.parametrize("make", [burnside, constant_Z])
def test_cohomological_ignores_forgetting(make):
    T = make(4)
    ref = cohomological(T)
    for pr in enumerate_compatible_pairs(C4):
        r = cohomological(forget_pair(T, pr.mult, pr.add))
        assert (r.additive, r.multiplicative) == (ref.additive, ref.multiplicative)


@pytest.mark.parametrize("make,n", [(burnside, 4), (constant_Z, 4), (burnside, 6), (constant_Z, 9)])
def test_every_pair_passes_axioms(make, n):
    for pr in enumerate_compatible_pairs(cyclic_lattice(n)):
        assert check_all(forget_pair(make(n), pr.mult, pr.add), 60, seed=5) == []


def test_restrict_component_leaf():
    T = forget_pair(burnside(4), O("O2"), O("O2"))
    R = restrict_component(T, [2, 4])
    assert R.support == [2, 4]
    assert R.levels[4].rank == 3 and R.levels[2].rank == 2


def test_restrict_component_square():
    lat = cyclic_lattice(6)
    Os = parse_system(lat, "1<2|1<3")
    R = restrict_component(forget_pair(burnside(6), Os, Os), [1, 2, 3])
    assert R.support == [1, 2, 3]
    assert {p for p in R.nm_pairs()} == {(1, 2), (1, 3)}


def test_singleton_component_keeps_weyl_action():
    R = restrict_component(burnside(4), [2])
    assert R.support == [2] and R.weyl[2] is not None
