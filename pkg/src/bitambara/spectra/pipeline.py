"""Prime spectra of bi-incomplete Tambara functors on cyclic groups.

Every route works at one residue characteristic q at a time and returns
concrete ideals tagged with a lineage key; :func:`families.assemble` turns
those into families.

Routes, by the shape of the (restricted) diagram:

* one level: Weyl-orbit intersections of the ring's primes over q;
* two levels with a transfer: pull back the primes of the ghost;
* a unique maximal level: complete each prime of the lower part, bracketed
  between its closure and the largest ideal restricting correctly, and
  settled by a bounded refutation search;
* several maximal levels: glue the pieces over each maximum and filter by
  the same search;
* disconnected multiplicative system: extend each component's primes.
"""

from __future__ import annotations

import itertools
import weakref
from dataclasses import replace
from typing import Iterable

import networkx as nx

from ..construct import GhostDiagram, ghost
from ..lattice import prime_factors
from ..tambara import LewisDiagram, cohomological, forget_pair
from ..transfer import CompatiblePair, TransferSystem, is_compatible_pair, saturated_hull, system_name
from ..zalg import (
    FiniteRankAlgebra,
    Submodule,
    character_prime,
    characters,
    preimage,
    unit_ideal,
    vec_mat,
)
from .families import Points, SpectrumTable, Strata, assemble, strata_for
from .ideals import TambaraIdeal, ideal_closure, is_ideal
from .primality import _box, refute_primality

DEFAULT_SEARCH_BOUND = 2

RING = "levelwise-ring-spectrum"
GHOST = "ghost-pullback"
TOP = "closure-bracket+refutation-search-clean"
GLUE = "fiber-product+refutation-search-clean"


class HullRefused(ValueError):
    """The multiplicative hull may not be substituted for this diagram."""


# ----------------------------------------------------------------- small helpers

def _edges(maps: Iterable[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    return frozenset(p for p in maps if p[0] != p[1])


def _saturated(edges: frozenset, support: list[int]) -> bool:
    for A, C in edges:
        for B in support:
            if B not in (A, C) and B % A == 0 and C % B == 0 and (A, B) in edges and (B, C) not in edges:
                return False
    return True


def sub_diagram(T: LewisDiagram, keep: Iterable[int], mult: Iterable | None = None,
                add: Iterable | None = None) -> LewisDiagram:
    """Levels in ``keep`` with the norms in ``mult`` and transfers in ``add`` among them."""
    keep = set(keep)
    mult = set(T.nm) if mult is None else set(mult)
    add = set(T.tr) if add is None else set(add)
    return replace(
        T,
        levels={d: a for d, a in T.levels.items() if d in keep},
        res={p: M for p, M in T.res.items() if set(p) <= keep},
        tr={p: M for p, M in T.tr.items() if set(p) <= keep and p in add},
        nm={p: f for p, f in T.nm.items() if set(p) <= keep and p in mult},
        weyl={d: W for d, W in T.weyl.items() if d in keep},
        norm_formulas={p: s for p, s in T.norm_formulas.items() if set(p) <= keep and p in mult},
        ambient=T,
    )


def components(T: LewisDiagram) -> list[list[int]]:
    """Connected pieces of the levels under the norm relation."""
    g = nx.Graph()
    g.add_nodes_from(T.support)
    g.add_edges_from(_edges(T.nm))
    return sorted(sorted(c) for c in nx.connected_components(g))


def _maxima(support: list[int]) -> list[int]:
    return [d for d in support if not any(e != d and e % d == 0 for e in support)]


# ----------------------------------------------------------------- levelwise primes

_CHAR_CACHE: "weakref.WeakKeyDictionary[FiniteRankAlgebra, list]" = weakref.WeakKeyDictionary()


def _field_characters(alg: FiniteRankAlgebra, q: int) -> list[tuple[int, ...]]:
    """Ring maps to F_q of an algebra with finite additive group."""
    out = []
    for chi in itertools.product(range(q), repeat=alg.rank):
        if sum(a * c for a, c in zip(alg.one, chi)) % q != 1:
            continue
        if any((m * c) % q for m, c in zip(alg.moduli, chi)):
            continue
        ok = all(sum(a * c for a, c in zip(alg.table[i][j], chi)) % q == (chi[i] * chi[j]) % q
                 for i in range(alg.rank) for j in range(alg.rank))
        if ok:
            out.append(chi)
    return out


def ring_primes(alg: FiniteRankAlgebra, q: int) -> dict[tuple, Submodule]:
    """Primes of a finite-rank algebra lying over qZ, keyed by a character index.

    Distinct characters may give the same prime; both keys are kept so that
    coincidences at special q show up as identifications.

    Torsion-free algebras must be split over Q; algebras with finite additive
    group are handled by brute force over F_q.
    """
    if alg.has_torsion:
        if not all(alg.moduli):
            raise NotImplementedError("mixed torsion algebras are not supported")
        if q == 0:
            return {}
        out = {}
        for i, chi in enumerate(_field_characters(alg, q)):
            out[("f", i)] = preimage([[c] for c in chi], Submodule(_Z(), [(q,)]), alg)
        return out
    if alg not in _CHAR_CACHE:
        _CHAR_CACHE[alg] = characters(alg)
    return {("chi", i): character_prime(alg, chi, q) for i, chi in enumerate(_CHAR_CACHE[alg])}


def _Z():
    from ..zalg import integers
    return integers()


def _image(S: Submodule, W) -> Submodule:
    alg = S.algebra
    return Submodule(alg, [alg.reduce(vec_mat(v, W)) for v in S.basis])


def level_gprimes(T: LewisDiagram, d: int, q: int) -> dict[tuple, Submodule]:
    """Weyl-primes of level d over q: intersections of Weyl orbits of primes."""
    Ws = T.weyl_elements(d)
    out: dict[tuple, Submodule] = {}
    for key, P in ring_primes(T.levels[d], q).items():
        G = P
        for W in Ws[1:]:
            G = G & _image(P, W)
        out[key] = G
    return out


# ----------------------------------------------------------------- leaf routes

def _single_level(T: LewisDiagram, q: int):
    d = T.support[0]
    pts = {("ring",) + k: TambaraIdeal(T, {d: P}) for k, P in level_gprimes(T, d, q).items()}
    return pts, {k: RING for k in pts}


_GHOST_CACHE: "weakref.WeakKeyDictionary[LewisDiagram, GhostDiagram]" = weakref.WeakKeyDictionary()


def _ghost_of(T: LewisDiagram) -> GhostDiagram:
    if T not in _GHOST_CACHE:
        _GHOST_CACHE[T] = ghost(T)
    return _GHOST_CACHE[T]


def ghost_points(G: GhostDiagram, q: int) -> dict[tuple, TambaraIdeal]:
    """Primes of the base diagram over q, pulled back from the primes of the ghost."""
    T = G.base
    K, H = G.bottom, G.top
    bot = T.levels[K]
    F, phi, top = G.fixed, G.phi, G.top_algebra
    fr, pr = F.algebra.rank, phi.algebra.rank
    if len(prime_factors(H // K)) != 1 or prime_factors(H // K)[0] != H // K:
        raise NotImplementedError("the ghost route needs a prime index")

    def top_ideal(fixed_part: Submodule, phi_part: Submodule) -> Submodule:
        rows = [list(v) + [0] * pr for v in fixed_part.basis]
        rows += [[0] * fr + list(v) for v in phi_part.basis]
        return Submodule(top, rows)

    def pull(bottom: Submodule, fixed_part: Submodule, phi_part: Submodule) -> TambaraIdeal:
        up = preimage(G.ghost_matrix, top_ideal(fixed_part, phi_part), T.levels[H])
        return TambaraIdeal(T, {K: bottom, H: up})

    out = {}
    for key, a in level_gprimes(T, K, q).items():
        aW = preimage(F.embedding, a, F.algebra)
        out[("a",) + key] = pull(a, aW, unit_ideal(phi.algebra))
    nm_rows = [list(phi(T.norm(K, H, bot.basis(i)))) for i in range(bot.rank)]
    for key, b in ring_primes(phi.algebra, q).items():
        nb = preimage(nm_rows, b, bot)
        nbW = preimage(F.embedding, nb, F.algebra)
        out[("b",) + key] = pull(nb, nbW, b)
    return out


def _two_level(T: LewisDiagram, q: int):
    pts = {}
    for k, I in ghost_points(_ghost_of(T), q).items():
        if is_ideal(I) is None:
            pts[k] = I
    return pts, {k: GHOST for k in pts}


def _upper_bound(T: LewisDiagram, M: int, J: TambaraIdeal) -> Submodule:
    U = unit_ideal(T.levels[M])
    for d in J.diagram.support:
        if M % d == 0 and d != M:
            U = U & preimage(T.res[(d, M)], J[d], T.levels[M])
    return U


def _radical_witness(T: LewisDiagram, I: TambaraIdeal, d: int, bound: int):
    """Some x outside I(d) with a small power inside; primes are levelwise radical."""
    alg, S = T.levels[d], I[d]
    for x in _box(alg, bound):
        if x in S:
            continue
        x2 = alg.mul(x, x)
        if x2 in S or alg.mul(x2, x) in S:
            return x
    return None


def _effective_bound(T: LewisDiagram, bound: int) -> int:
    # witnesses such as x - p need coefficients up to the primes dividing n
    return max(bound, max(T.primes, default=2))


def _k(key, kind):
    return key + (kind,) if isinstance(key, tuple) else (key, kind)


def top_completion(T: LewisDiagram, lower: dict, q: int, bound: int = DEFAULT_SEARCH_BOUND):
    """Extend primes of the levels below the unique maximum M to primes of T.

    For each lower prime J the top level is bracketed between the closure
    of J and the largest submodule whose restrictions land in J. Candidates
    refuted by a witness pair are split on the top-level witnesses.
    """
    M = max(T.support)
    low = [d for d in T.support if d != M]
    bound = _effective_bound(T, bound)
    pts, prov = {}, {}
    for key, J in lower.items():
        L = ideal_closure(T, {d: J[d].basis for d in low})
        if any(L[d] != J[d] for d in low):
            continue
        U = _upper_bound(T, M, J)
        Ufull = TambaraIdeal(T, {**{d: J[d] for d in low}, M: U})
        accepted: list[TambaraIdeal] = []
        queue, seen = [L], set()
        while queue:
            I = queue.pop(0)
            if I in seen:
                continue
            seen.add(I)
            if not I[M] <= U or I[M].is_unit_ideal():
                continue
            r = _radical_witness(T, I, M, bound)
            if r is not None:
                branches = [(r, M)]
            else:
                w = refute_primality(T, I, bound)
                if w is None:
                    accepted.append(I)
                    continue
                branches = [(w.x, w.level_x), (w.y, w.level_y)]
            for x, lvl in branches:
                if lvl != M:
                    continue
                gens = {d: list(I[d].basis) for d in T.support}
                gens[M].append(x)
                B = ideal_closure(T, gens)
                if all(B[d] == J[d] for d in low):
                    queue.append(B)
        if Ufull not in accepted and not U.is_unit_ideal() and is_ideal(Ufull) is None \
                and refute_primality(T, Ufull, bound) is None:
            accepted.append(Ufull)
        if len(accepted) == 1:
            # a lone completion is where every generic completion over J specialises
            pts[_k(key, "M0")] = accepted[0]
            prov[_k(key, "M0")] = TOP
        extra = 0
        for I in accepted:
            # the closure of J can shrink at special q, so only "equals the
            # upper bound" is a label that is stable across strata
            if I == Ufull:
                kind = "U"
            else:
                kind = f"M{extra}"
                extra += 1
            k = _k(key, kind)
            pts[k] = I
            prov[k] = TOP
    return pts, prov


def glue(T: LewisDiagram, q: int, bound: int = DEFAULT_SEARCH_BOUND):
    """Fiber product of the primes over each maximal level, filtered by refutation search."""
    bound = _effective_bound(T, bound)
    maxima = _maxima(T.support)
    pieces = []
    for M in maxima:
        S = sub_diagram(T, [d for d in T.support if M % d == 0])
        pts, _ = _points(S, q, bound)
        pieces.append(sorted(pts.items(), key=lambda kv: repr(kv[0])))
    pts, prov = {}, {}
    for combo in itertools.product(*pieces):
        levels: dict[int, Submodule] = {}
        ok = True
        for _, I in combo:
            for d, S in I.levels.items():
                if d in levels and levels[d] != S:
                    ok = False
                levels.setdefault(d, S)
        if not ok:
            continue
        I = TambaraIdeal(T, levels)
        if is_ideal(I) is not None or refute_primality(T, I, bound) is not None:
            continue
        k = ("glue",) + tuple(k for k, _ in combo)
        pts[k] = I
        prov[k] = GLUE
    return pts, prov


def extend_component_prime(T: LewisDiagram, component: Iterable[int], J: TambaraIdeal) -> TambaraIdeal:
    """J on the component; elsewhere the intersection of res-preimages from component levels below."""
    comp = set(component)
    levels = {}
    for K in T.support:
        if K in comp:
            levels[K] = J[K]
            continue
        S = unit_ideal(T.levels[K])
        for L in sorted(comp):
            if K % L == 0:
                S = S & preimage(T.res[(L, K)], J[L], T.levels[K])
        levels[K] = S
    return TambaraIdeal(T, levels)


# ----------------------------------------------------------------- dispatch

def _leaf(T: LewisDiagram, q: int, bound: int):
    sup = T.support
    if len(sup) == 1:
        return _single_level(T, q)
    if len(sup) == 2 and _edges(T.tr):
        return _two_level(T, q)
    if len(_maxima(sup)) == 1:
        M = max(sup)
        lower, _ = _points(sub_diagram(T, [d for d in sup if d != M]), q, bound)
        return top_completion(T, lower, q, bound)
    return glue(T, q, bound)


def _self_compatible_points(T: LewisDiagram, q: int, bound: int):
    comps = components(T)
    if len(comps) == 1:
        return _leaf(T, q, bound)
    pts, prov = {}, {}
    for c in comps:
        sub = sub_diagram(T, c)
        lp, lprov = _leaf(sub, q, bound)
        for k, J in lp.items():
            key = ("comp", tuple(c)) + (k if isinstance(k, tuple) else (k,))
            pts[key] = extend_component_prime(T, c, J)
            prov[key] = f"component-extension({lprov[k]})"
    return pts, prov


def _points(T: LewisDiagram, q: int, bound: int = DEFAULT_SEARCH_BOUND):
    """Primes of T over q (lineage key -> ideal) with their provenance."""
    mult, add = _edges(T.nm), _edges(T.tr)
    if _saturated(mult, T.support) and mult <= add:
        base = sub_diagram(T, T.support, mult, mult)
        pts, prov = _self_compatible_points(base, q, bound)
        if add == mult:
            return {k: I.on(T) for k, I in pts.items()}, prov
        out, oprov = {}, {}
        for k, I in pts.items():
            I = I.on(T)
            if is_ideal(I) is None:
                out[k] = I
                oprov[k] = f"transfer-filter({prov[k]})"
        return out, oprov
    maxima = _maxima(T.support)
    if len(maxima) != 1:
        raise NotImplementedError("non-saturated norms with several maximal levels")
    M = maxima[0]
    lower, _ = _points(sub_diagram(T, [d for d in T.support if d != M]), q, bound)
    return top_completion(T, lower, q, bound)


def _table(T: LewisDiagram, strata: Strata, bound: int, notes: list[str] | None = None) -> SpectrumTable:
    points: Points = {}
    prov: dict = {}
    for q in strata.all:
        pts, pv = _points(T, q, bound)
        points[q] = pts
        prov.update(pv)
    return assemble(T, points, prov, strata, notes)


def spectrum_self_compatible(T: LewisDiagram, strata: Strata | None = None,
                             bound: int = DEFAULT_SEARCH_BOUND) -> SpectrumTable:
    if not T.pair.self_compatible:
        raise ValueError("spectrum_self_compatible needs a pair (O, O)")
    strata = strata or strata_for(T.lattice.group_order)
    return _table(T, strata, bound, ["component decomposition"])


def add_transfers(spec: SpectrumTable, Oa: TransferSystem) -> SpectrumTable:
    """Keep the points that stay ideals once the transfers in Oa are present."""
    if not spec.pair.add <= Oa:
        raise ValueError("add_transfers only enlarges the additive system")
    if not is_compatible_pair(spec.pair.mult, Oa):
        raise ValueError("the enlarged pair is not compatible")
    T = forget_pair(spec.diagram.full(), spec.pair.mult, Oa)
    points: Points = {}
    prov = {}
    for q, pts in spec.points.items():
        points[q] = {}
        for k, I in pts.items():
            J = I.on(T)
            if is_ideal(J) is None:
                points[q][k] = J
                prov[k] = spec.provenance.get(k, "computed") if Oa == spec.pair.add \
                    else f"transfer-filter({spec.provenance.get(k, 'computed')})"
    return assemble(T, points, prov, spec.strata, list(spec.notes) + ["transfers added"])


def hull_transport(T: LewisDiagram, strata: Strata | None = None,
                   bound: int = DEFAULT_SEARCH_BOUND) -> SpectrumTable:
    """Spectrum for (Hull(Om), Oa) relabelled to (Om, Oa); needs norm-cohomological T."""
    rep = cohomological(T)
    if not rep.multiplicative:
        raise HullRefused(
            "norms are not cohomological (witness "
            f"{rep.multiplicative_witness}); use refute_primality or the top-completion route")
    Om, Oa = T.pair.mult, T.pair.add
    hull = saturated_hull(Om)
    if not is_compatible_pair(hull, Oa):
        raise HullRefused(f"(Hull({system_name(Om)}), {system_name(Oa)}) is not compatible")
    strata = strata or strata_for(T.lattice.group_order)
    H = forget_pair(T.full(), hull, Oa)
    src = _table(H, strata, bound)
    points = {q: {k: I.on(T) for k, I in pts.items()} for q, pts in src.points.items()}
    prov = {k: f"hull-transport({v})" for k, v in src.provenance.items()}
    return assemble(T, points, prov, strata, ["hull transport"])


def ghost_spectrum(G: GhostDiagram, strata: Strata | None = None) -> SpectrumTable:
    """Families of the base diagram obtained only from ghost primes."""
    T = G.base
    strata = strata or strata_for(T.lattice.group_order)
    points = {q: ghost_points(G, q) for q in strata.all}
    prov = {k: GHOST for pts in points.values() for k in pts}
    return assemble(T, points, prov, strata, ["ghost"])


_CACHE: dict = {}


def compute_spectrum(T: LewisDiagram, strata: Strata | None = None,
                     bound: int = DEFAULT_SEARCH_BOUND) -> SpectrumTable:
    """Dispatch on the pair: component decomposition (plus transfers), hull, or top completion."""
    strata = strata or strata_for(T.lattice.group_order)
    key = (id(T), strata, bound)
    hit = _CACHE.get(key)
    if hit is not None and hit[0] is T:
        return hit[1]
    Om, Oa = T.pair.mult, T.pair.add
    mult = _edges(T.nm)
    if _saturated(mult, T.support):
        if Om == Oa:
            table = spectrum_self_compatible(T, strata, bound)
        else:
            base = forget_pair(T.full(), Om, Om)
            table = add_transfers(_table(base, strata, bound, ["component decomposition"]), Oa)
            table.diagram = T
    else:
        try:
            table = hull_transport(T, strata, bound)
        except HullRefused:
            table = _table(T, strata, bound, ["top completion"])
    _CACHE[key] = (T, table)
    return table


def clear_cache() -> None:
    _CACHE.clear()


__all__ = [
    "HullRefused",
    "ring_primes",
    "level_gprimes",
    "ghost_points",
    "ghost_spectrum",
    "top_completion",
    "glue",
    "extend_component_prime",
    "spectrum_self_compatible",
    "add_transfers",
    "hull_transport",
    "compute_spectrum",
    "sub_diagram",
    "components",
    "clear_cache",
]
