import pytest
from hypothesis import given, strategies as st

from bitambara.lattice import cyclic_lattice, divisors, intersect, prime_factors


def test_subgroups_are_divisors():
    assert cyclic_lattice(4).subgroups == (1, 2, 4)
    assert cyclic_lattice(12).subgroups == (1, 2, 3, 4, 6, 12)
    assert cyclic_lattice(6).subgroups == (1, 2, 3, 6)


def test_square_lattice_for_pq():
    lat = cyclic_lattice(6)
    assert not lat.is_chain
    assert sorted(lat.covers()) == [(1, 2), (1, 3), (2, 6), (3, 6)]


@pytest.mark.parametrize("n,K,H,want", [(6, 2, 3, 1), (4, 2, 4, 2), (12, 4, 6, 2)])
def test_intersect_examples(n, K, H, want):
    assert intersect(cyclic_lattice(n), K, H) == want


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        cyclic_lattice(0)
    with pytest.raises(ValueError):
        cyclic_lattice(6).intersect(4, 2)
    with pytest.raises(ValueError):
        cyclic_lattice(4).index(4, 2)


def test_weyl_and_index():
    lat = cyclic_lattice(9)
    assert lat.weyl(3).weyl_order == 3
    assert lat.index(1, 9) == 9
    assert lat.name(1) == "e" and lat.name(9) == "G" and lat.name(3) == "C3"


@given(st.integers(1, 400))
def test_divisors_sorted_and_complete(n):
    ds = divisors(n)
    assert ds == sorted(ds)
    assert ds == [d for d in range(1, n + 1) if n % d == 0]


@given(st.integers(1, 360), st.data())
def test_intersection_is_the_meet(n, data):
    lat = cyclic_lattice(n)
    K = data.draw(st.sampled_from(lat.subgroups))
    H = data.draw(st.sampled_from(lat.subgroups))
    m = lat.intersect(K, H)
    assert lat.contains(m, K) and lat.contains(m, H)
    for L in lat.subgroups:
        if lat.contains(L, K) and lat.contains(L, H):
            assert lat.contains(L, m)
    j = lat.join(K, H)
    assert lat.contains(K, j) and lat.contains(H, j)


@given(st.sampled_from([2, 3, 5, 7, 11]), st.integers(0, 5))
def test_prime_power_lattice_is_chain(p, k):
    lat = cyclic_lattice(p ** k)
    assert lat.is_chain
    assert len(lat.subgroups) == k + 1
    assert all(lat.contains(a, b) for a, b in zip(lat.subgroups, lat.subgroups[1:]))


def test_prime_factors():
    assert prime_factors(1) == []
    assert prime_factors(12) == [2, 3]
    assert prime_factors(49) == [7]
