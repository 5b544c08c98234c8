from math import comb

import pytest
from hypothesis import given, strategies as st

from bitambara.lattice import cyclic_lattice
from bitambara.transfer import (
    TransferSystem,
    compatibility_violation,
    enumerate_compatible_pairs,
    enumerate_transfer_systems,
    is_compatible_pair,
    is_saturated,
    named_system,
    parse_system,
    path_components,
    saturated_hull,
    system_name,
    validate_transfer_system,
)

C4 = cyclic_lattice(4)


def sys4(name):
    return named_system(C4, name)


def test_validate_examples():
    assert validate_transfer_system(C4, [(1, 2), (1, 4)]) is None
    v = validate_transfer_system(C4, [(1, 4)])
    assert v.axiom == "restriction" and v.witness == ((1, 4), 2)
    assert validate_transfer_system(cyclic_lattice(2), [(1, 2)]) is None


def test_transitivity_violation():
    v = validate_transfer_system(C4, [(1, 2), (2, 4)])
    assert v is not None and v.axiom == "transitivity"


@pytest.mark.parametrize("p", [2, 3, 5])
def test_enumeration_counts(p):
    counts = [len(enumerate_transfer_systems(cyclic_lattice(p ** e))) for e in (1, 2, 3)]
    pairs = [len(enumerate_compatible_pairs(cyclic_lattice(p ** e))) for e in (1, 2, 3)]
    assert counts == [2, 5, 14]
    assert pairs == [3, 12, 55]
    assert all(pairs[e - 1] * (2 * e + 3) == comb(3 * e + 3, e + 1) for e in (1, 2, 3))


def test_named_systems_on_c_p2():
    names = sorted(system_name(s) for s in enumerate_transfer_systems(C4))
    assert names == ["O1", "O2", "O3", "Ocomp", "Otriv"]


def test_enumeration_is_deterministic():
    a = [s.edges for s in enumerate_transfer_systems(cyclic_lattice(8))]
    b = [s.edges for s in enumerate_transfer_systems(cyclic_lattice(8))]
    assert a == b


def test_hull_examples():
    assert saturated_hull(sys4("O3")) == sys4("Ocomp")
    assert saturated_hull(sys4("Otriv")) == sys4("Otriv")
    assert is_saturated(sys4("O1")) and saturated_hull(sys4("O1")) == sys4("O1")
    assert not is_saturated(sys4("O3"))


def test_compatibility_examples():
    for s in enumerate_transfer_systems(C4):
        assert is_compatible_pair(sys4("Otriv"), s)
        assert is_compatible_pair(s, sys4("Ocomp"))
    assert compatibility_violation(sys4("O1"), sys4("O2")) is not None


def test_path_components():
    comps = path_components(sys4("O1"))
    assert [c.members for c in comps] == [(1, 2), (4,)]
    O = parse_system(cyclic_lattice(6), "1<2|1<3")
    assert [(c.minimum, c.members) for c in path_components(O)] == [(1, (1, 2, 3)), (6, (6,))]
    assert len(path_components(sys4("Otriv"))) == 3


def test_parse_system_forms():
    assert parse_system(C4, "O3") == parse_system(C4, "1<2|1<4")
    with pytest.raises(ValueError):
        parse_system(C4, "O9")
    with pytest.raises(ValueError):
        parse_system(C4, "1<4")


LATTICES = [cyclic_lattice(n) for n in (4, 8, 6, 12, 9)]


@given(st.sampled_from(LATTICES), st.data())
def test_generated_is_smallest_transfer_system(lat, data):
    cands = [(K, H) for H in lat.subgroups for K in lat.below(H) if K != H]
    seed = data.draw(st.sets(st.sampled_from(cands), max_size=4))
    ts = TransferSystem.generated(lat, seed)
    assert validate_transfer_system(lat, ts.pairs) is None
    assert set(seed) <= ts.pairs
    for other in enumerate_transfer_systems(lat):
        if set(seed) <= other.pairs:
            assert ts <= other


@pytest.mark.parametrize("n", [4, 8, 9, 27, 6])
def test_saturation_iff_self_compatible(n):
    for ts in enumerate_transfer_systems(cyclic_lattice(n)):
        assert is_saturated(ts) == is_compatible_pair(ts, ts)


@pytest.mark.parametrize("n", [4, 8, 6, 12])
def test_hull_is_least_saturated_upper_bound(n):
    systems = enumerate_transfer_systems(cyclic_lattice(n))
    saturated = [s for s in systems if is_saturated(s)]
    for ts in systems:
        h = saturated_hull(ts)
        assert is_saturated(h) and ts <= h
        assert saturated_hull(h) == h
        meet = frozenset.intersection(*[s.pairs for s in saturated if ts <= s])
        assert h.pairs == meet
        for other in systems:
            if ts <= other:
                assert h <= saturated_hull(other)


@pytest.mark.parametrize("n", [4, 8, 6])
def test_hull_of_mult_inside_add(n):
    for pr in enumerate_compatible_pairs(cyclic_lattice(n)):
        assert saturated_hull(pr.mult) <= pr.add


@pytest.mark.parametrize("n", [8, 12])
def test_saturated_components_look_complete(n):
    for ts in enumerate_transfer_systems(cyclic_lattice(n)):
        if not is_saturated(ts):
            continue
        for comp in path_components(ts):
            for K in comp.members:
                for H in comp.members:
                    if H % K == 0:
                        assert (K, H) in ts
