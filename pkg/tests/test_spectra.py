import itertools

import pytest
from hypothesis import given, settings, strategies as st

from bitambara.construct import burnside, constant_Z, ghost
from bitambara.lattice import cyclic_lattice
from bitambara.spectra import (
    HullRefused,
    TambaraIdeal,
    add_transfers,
    compute_spectrum,
    evaluate_template,
    extend_component_prime,
    g_prime_search,
    generalized_products,
    ghost_points,
    ghost_spectrum,
    homeomorphic,
    homeomorphism_classes,
    hull_transport,
    ideal_closure,
    is_g_prime_witness,
    is_ideal,
    q_condition,
    radical_audit,
    refute_primality,
    shape_graph,
    spectrum_self_compatible,
    strata_for,
    to_dot,
)
from bitambara.spectra.pipeline import _points, sub_diagram, top_completion
from bitambara.tambara import forget_pair, restrict_component
from bitambara.transfer import parse_system
from bitambara.zalg import ideal_from_generators, identity, integers, span

C4 = cyclic_lattice(4)


def diag(make, n, m, a):
    lat = cyclic_lattice(n)
    return forget_pair(make(n), parse_system(lat, m), parse_system(lat, a))


def fam(T, template, q):
    return evaluate_template(T, template, q)


# ----------------------------------------------------------------- ideals

def test_is_ideal_examples():
    T = diag(burnside, 4, "Ocomp", "Ocomp")
    assert is_ideal(fam(T, ["<q, t-p, u-p*t>", "<q, t-p>", "<q>"], 3)) is None
    T2 = diag(burnside, 4, "Otriv", "Ocomp")
    v = is_ideal(fam(T2, ["<q, t-p, u>", "1", "1"], 3))
    assert v is not None and v.map == "tr" and (v.source, v.target) == (2, 4)
    for n in (2, 4, 6):
        assert is_ideal(TambaraIdeal.zero(burnside(n))) is None


def test_closure_is_smallest_ideal():
    T = burnside(4)
    I = ideal_closure(T, {2: [T.levels[2].parse("t-2")]})
    assert is_ideal(I) is None
    assert T.levels[2].parse("t-2") in I[2]
    assert T.norm(2, 4, T.levels[2].parse("t-2")) in I[4]


def test_unit_and_zero():
    T = burnside(2)
    assert TambaraIdeal.unit(T).is_unit() and not TambaraIdeal.unit(T).is_proper()
    assert TambaraIdeal.zero(T).is_proper()


# ----------------------------------------------------------------- generalized products

def test_o3_products_vanish():
    T = diag(burnside, 4, "O3", "Ocomp")
    A = T.levels[4]
    x, y = A.parse("2t-u"), A.parse("2-t")
    prods = generalized_products(T, x, 4, y, 4, T.pair.mult)
    assert prods and all(not any(v) for _, v in prods)
    Z = fam(T, ["<q>", "<q>", "<q>"], 3)
    assert x not in Z[4] and y not in Z[4]
    assert q_condition(T, Z, x, 4, y, 4, T.pair.mult)


def test_cpq_products_vanish_at_the_bottom():
    lat = cyclic_lattice(6)
    O = parse_system(lat, "1<2|1<3")
    R = restrict_component(forget_pair(burnside(6), O, O), [1, 2, 3])
    x, y = R.levels[2].parse("x_2-2"), R.levels[3].parse("x_3-3")
    prods = generalized_products(R, x, 2, y, 3, O)
    assert (1, (0,)) in [(L, tuple(v)) for L, v in prods]
    assert all(not any(v) for _, v in prods)
    for r in (0, 5, 7):
        diag_r = TambaraIdeal.from_generators(R, {d: [R.levels[d].const(r)] for d in (1, 2, 3)})
        assert q_condition(R, diag_r, x, 2, y, 3)


def test_unit_ideal_satisfies_q_condition():
    T = burnside(4)
    U = TambaraIdeal.unit(T)
    assert q_condition(T, U, T.levels[4].parse("u"), 4, T.levels[2].parse("t"), 2)


def _brute_products(T, x, H1, y, H2):
    out = []
    for L in T.support:
        if H1 % L == 0 and H2 % L == 0:
            out.append((L, T.levels[L].mul(T.restrict(L, H1, x), T.restrict(L, H2, y))))
    return out


@pytest.mark.parametrize("make", [burnside, constant_Z])
def test_q_condition_without_norms_is_restriction_products(make):
    T = diag(make, 4, "Otriv", "Otriv")
    spec = compute_spectrum(T)
    box = {d: list(itertools.product(range(-2, 3), repeat=T.levels[d].rank)) for d in T.support}
    for _, q, I in spec.all_points()[:6]:
        for H1, H2 in [(4, 4), (4, 2), (2, 1)]:
            for x in box[H1][::7]:
                for y in box[H2][::5]:
                    want = all(v in I[L] for L, v in _brute_products(T, x, H1, y, H2))
                    assert q_condition(T, I, x, H1, y, H2, T.pair.mult) == want


# ----------------------------------------------------------------- searches

def test_refute_finds_stated_pair_up_to_sign():
    T = diag(burnside, 4, "O3", "Ocomp")
    I = fam(T, ["<q>", "<q>", "<q>"], 3)
    w = refute_primality(T, I, 3, T.pair.mult)
    assert w is not None
    assert q_condition(T, I, w.x, w.level_x, w.y, w.level_y, T.pair.mult)
    assert w.x not in I[w.level_x] and w.y not in I[w.level_y]


def test_refute_none_for_constant_z_primes():
    T = diag(constant_Z, 2, "Ocomp", "Ocomp")
    assert refute_primality(T, fam(T, ["<q>", "<q>"], 3), 3) is None


def test_refute_rejects_unit_ideal():
    T = burnside(2)
    with pytest.raises(ValueError):
        refute_primality(T, TambaraIdeal.unit(T), 2)


def test_g_prime_examples():
    Z = integers()
    assert not is_g_prime_witness(Z, [[1]], span(Z, [(3,)]), (1,), (1,))
    A = burnside(4).levels[4]
    I = ideal_from_generators(A, [A.parse("t-2")])
    x, y = g_prime_search(A, identity(A.rank), I, 3)
    assert x not in I and y not in I and A.mul(x, y) in I


def test_radical_audit():
    T = diag(burnside, 4, "Ocomp", "Ocomp")
    assert radical_audit(fam(T, ["<q, t-p, u-p*t>", "<q, t-p>", "<q>"], 3), 3) is None
    Z = constant_Z(2)
    bad = TambaraIdeal(Z, {1: span(Z.levels[1], [(9,)]), 2: span(Z.levels[2], [(9,)])})
    w = radical_audit(bad, 3)
    assert w is not None and w.x in ((3,), (-3,))
    assert radical_audit(TambaraIdeal.unit(Z), 3) is None


# ----------------------------------------------------------------- pipeline

def test_extend_component_prime():
    T = diag(burnside, 4, "O1", "O1")
    comp = sub_diagram(T, [1, 2])
    J = fam(comp, ["<q>", "<q>"], 3)
    D = extend_component_prime(T, [1, 2], J)
    assert D[4] == ideal_from_generators(T.levels[4], [T.levels[4].parse(s) for s in ("3", "t-2")])
    J2 = fam(comp, ["<q, t-p>", "<q>"], 3)
    C3 = extend_component_prime(T, [1, 2], J2)
    assert C3 == fam(T, ["<q, t-p, u-p*t>", "<q, t-p>", "<q>"], 3)
    top = sub_diagram(T, [4])
    A = extend_component_prime(T, [4], fam(top, ["<q, t, u>"], 3))
    assert A[1].is_unit_ideal() and A[2].is_unit_ideal()
    for J in (J, J2):
        E = extend_component_prime(T, [1, 2], J)
        assert all(E[d] == J[d] for d in (1, 2))


def test_spectrum_self_compatible_examples():
    s = spectrum_self_compatible(diag(constant_Z, 4, "O1", "O1"))
    assert s.names() == ["A", "C"]
    b = spectrum_self_compatible(diag(burnside, 4, "O2", "O2"))
    assert sorted(b.names()) == ["B2", "C2", "C3", "E"]
    assert b.identification_texts() == ["B2_p = C2_p = E_p"]
    with pytest.raises(ValueError):
        spectrum_self_compatible(diag(burnside, 4, "O1", "O3"))


def test_add_transfers():
    base = compute_spectrum(diag(burnside, 2, "Otriv", "Otriv"))
    full = add_transfers(base, parse_system(cyclic_lattice(2), "Ocomp"))
    assert "B1" in base.names() and "B1" not in full.names()
    same = add_transfers(base, base.pair.add)
    assert same.names() == base.names()
    lat = C4
    chain = ["Otriv", "O1", "O3", "Ocomp"]
    sizes = []
    b0 = compute_spectrum(diag(constant_Z, 4, "Otriv", "Otriv"))
    for a in chain:
        sizes.append(sum(len(f.qs) for f in add_transfers(b0, parse_system(lat, a)).families))
    assert sizes == sorted(sizes, reverse=True)


def test_add_transfers_partial_survival():
    base = compute_spectrum(diag(constant_Z, 4, "O1", "O1"))
    s = add_transfers(base, parse_system(C4, "O3"))
    assert s.names() == ["A", "C_p"]


def test_hull_transport():
    a = hull_transport(diag(constant_Z, 4, "O3", "Ocomp"))
    b = compute_spectrum(diag(constant_Z, 4, "Ocomp", "Ocomp"))
    assert a.names() == b.names()
    assert all(f.points[q][d].basis == b.family(f.name).points[q][d].basis
               for f in a.families for q in f.qs for d in (1, 2, 4))
    with pytest.raises(HullRefused):
        hull_transport(diag(burnside, 4, "O3", "Ocomp"))
    c = hull_transport(diag(constant_Z, 4, "O1", "O1"))
    assert c.names() == compute_spectrum(diag(constant_Z, 4, "O1", "O1")).names()


def test_ghost_pullbacks():
    T = diag(burnside, 4, "O2", "O2")
    leaf = sub_diagram(T, [2, 4])
    G = ghost(leaf)
    top = leaf.levels[4]
    tops = {I[4] for I in ghost_points(G, 3).values() if is_ideal(I) is None}
    for gens in (["3", "t-2", "u"], ["3", "u"], ["3", "t-2", "u-4"]):
        assert ideal_from_generators(top, [top.parse(g) for g in gens]) in tops


def test_ghost_spectrum_burnside_cp():
    T = burnside(2)
    s = ghost_spectrum(ghost(T))
    assert sorted(s.names()) == ["B2", "C"]
    assert s.identification_texts() == ["B2_p = C_p"]


@pytest.mark.parametrize("which", ["cp", "leaf"])
def test_ghost_route_agrees_with_top_completion(which):
    if which == "cp":
        T = burnside(2)
        low = [1]
    else:
        T = sub_diagram(diag(burnside, 4, "O2", "O2"), [2, 4])
        low = [2]
    G = ghost(T)
    for q in (0, 2, 3, 5):
        via_ghost = {I for I in ghost_points(G, q).values() if is_ideal(I) is None}
        lower, _ = _points(sub_diagram(T, low), q)
        via_top, _ = top_completion(T, lower, q)
        assert via_ghost == set(via_top.values()), q


def test_ghost_lying_over():
    T = sub_diagram(diag(burnside, 4, "O2", "O2"), [2, 4])
    for q in (0, 3, 5, 7):
        pts = [I for I in ghost_points(ghost(T), q).values() if is_ideal(I) is None]
        assert len(pts) == len(set(pts))


def test_provenance_and_strata():
    s = compute_spectrum(diag(burnside, 4, "O3", "Ocomp"))
    assert s.strata == strata_for(4)
    assert s.strata.special == (2,) or list(s.strata.special) == [2]
    assert all(f.provenance for f in s.families)
    assert {f.stratum for f in s.families} <= {"all", "q!=p", "special", "partial"}


# ----------------------------------------------------------------- shape

def test_shapes_distinguish_cp_pairs():
    specs = [compute_spectrum(diag(constant_Z, 2, m, a))
             for m, a in [("Otriv", "Otriv"), ("Otriv", "Ocomp"), ("Ocomp", "Ocomp")]]
    assert all(homeomorphic(s, s) for s in specs)
    assert len(homeomorphism_classes(specs)) == 3


def test_shape_graph_is_a_poset():
    import networkx as nx
    for m, a in [("Otriv", "Otriv"), ("O2", "O2"), ("Ocomp", "Ocomp")]:
        g = shape_graph(compute_spectrum(diag(burnside, 4, m, a)))
        assert nx.is_directed_acyclic_graph(g)
        assert nx.transitive_closure(g).number_of_edges() == g.number_of_edges()


def test_dot_output():
    s = compute_spectrum(diag(burnside, 2, "Ocomp", "Ocomp"))
    dot = to_dot(s)
    assert dot.startswith("digraph") and "rankdir=BT;" in dot
    assert dot == to_dot(s)
    assert 'label="B2_p"' in dot


def test_homeomorphic_refuses_large_graphs():
    import networkx as nx
    big = nx.DiGraph()
    big.add_nodes_from((i, {"stratum": "g"}) for i in range(31))
    with pytest.raises(ValueError):
        homeomorphic(big, big)


@settings(max_examples=25)
@given(st.sampled_from([2, 3, 5, 7]), st.sampled_from([("Otriv", "Otriv"), ("O1", "O1"), ("O2", "O2")]))
def test_templates_evaluate_to_points(q, pair):
    s = compute_spectrum(diag(burnside, 4, *pair))
    for f in s.families:
        if f.template is None or q not in f.points or q in f.special_templates:
            continue
        assert evaluate_template(s.diagram, f.template, q) == f.points[q]


PAIRS_C4 = [("Otriv", "Otriv"), ("Otriv", "O2"), ("O1", "O3"), ("O2", "Ocomp"), ("Ocomp", "Ocomp")]


@settings(max_examples=20)
@given(st.sampled_from(PAIRS_C4), st.sampled_from([burnside, constant_Z]), st.data())
def test_emitted_points_are_radical_tambara_ideals(pair, make, data):
    s = compute_spectrum(diag(make, 4, *pair))
    pts = s.all_points()
    _, _, I = pts[data.draw(st.integers(0, len(pts) - 1))]
    assert I.is_proper()
    assert is_ideal(I) is None
    assert radical_audit(I, 3) is None


def test_t_minus_p_is_not_prime():
    from bitambara.verify import non_prime_witness
    A, I, (x, y) = non_prime_witness(2, 3)
    assert x not in I and y not in I and A.mul(x, y) in I
