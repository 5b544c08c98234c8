"""Transfer systems on cyclic groups, saturation, compatible pairs."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator

import networkx as nx

from .lattice import SubgroupLattice, cyclic_lattice

Pair = tuple[int, int]


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple

    def __str__(self):
        return f"{self.axiom} axiom fails at {self.witness}"


def _candidate_edges(lat: SubgroupLattice) -> list[Pair]:
    return sorted((K, H) for H in lat.subgroups for K in lat.below(H) if K != H)


def _first_violation(lat: SubgroupLattice, pairs: set[Pair]) -> Violation | None:
    subs = lat.subgroups
    for K, H in sorted(pairs):
        if H % K:
            return Violation("divisibility", ((K, H),))
    for K, H in sorted(pairs):
        for H2, L in sorted(pairs):
            if H2 == H and (K, L) not in pairs:
                return Violation("transitivity", ((K, H), (H, L)))
    for K, H in sorted(pairs):
        for L in subs:
            if H % L == 0 and (lat.intersect(K, L), L) not in pairs:
                return Violation("restriction", ((K, H), L))
    return None


def _close(lat: SubgroupLattice, pairs: set[Pair]) -> set[Pair]:
    """Smallest transfer system containing ``pairs``."""
    out = set(pairs) | {(d, d) for d in lat.subgroups}
    while True:
        new = set()
        for K, H in out:
            for H2, L in out:
                if H2 == H:
                    new.add((K, L))
            for L in lat.subgroups:
                if H % L == 0:
                    new.add((lat.intersect(K, L), L))
        if new <= out:
            return out
        out |= new


@dataclass(frozen=True)
class TransferSystem:
    lattice: SubgroupLattice
    pairs: frozenset

    @classmethod
    def make(cls, lat: SubgroupLattice, pairs: Iterable[Pair]) -> "TransferSystem":
        ps = {(int(K), int(H)) for K, H in pairs}
        for K, H in ps:
            lat.check(K, H)
        ps |= {(d, d) for d in lat.subgroups}
        v = _first_violation(lat, ps)
        if v is not None:
            raise ValueError(f"not a transfer system: {v}")
        return cls(lat, frozenset(ps))

    @classmethod
    def generated(cls, lat: SubgroupLattice, pairs: Iterable[Pair]) -> "TransferSystem":
        return cls(lat, frozenset(_close(lat, set(pairs))))

    def __contains__(self, pair: Pair) -> bool:
        return tuple(pair) in self.pairs

    def __le__(self, other: "TransferSystem") -> bool:
        return self.lattice == other.lattice and self.pairs <= other.pairs

    def __lt__(self, other: "TransferSystem") -> bool:
        return self <= other and self.pairs != other.pairs

    @cached_property
    def edges(self) -> tuple[Pair, ...]:
        return tuple(sorted(p for p in self.pairs if p[0] != p[1]))

    @property
    def bitmask(self) -> int:
        cands = _candidate_edges(self.lattice)
        return sum(1 << i for i, e in enumerate(cands) if e in self.pairs)

    def restrict(self, subgroups: Iterable[int]) -> set[Pair]:
        keep = set(subgroups)
        return {(K, H) for K, H in self.pairs if K in keep and H in keep}

    def to_json(self) -> list[list[int]]:
        return [list(e) for e in self.edges]

    def __repr__(self):
        return f"TransferSystem(C{self.lattice.group_order}, {list(self.edges)})"


def validate_transfer_system(lat: SubgroupLattice, pairs: Iterable[Pair]) -> Violation | None:
    """None when the pairs (plus reflexive ones) form a transfer system."""
    ps = set()
    for K, H in pairs:
        lat.check(K, H)
        ps.add((K, H))
    ps |= {(d, d) for d in lat.subgroups}
    return _first_violation(lat, ps)


def enumerate_transfer_systems(lat: SubgroupLattice) -> list[TransferSystem]:
    cands = _candidate_edges(lat)
    refl = {(d, d) for d in lat.subgroups}
    out = []
    for mask in range(1 << len(cands)):
        ps = refl | {e for i, e in enumerate(cands) if mask >> i & 1}
        if _first_violation(lat, ps) is None:
            out.append(TransferSystem(lat, frozenset(ps)))
    return out


def _saturation_gap(ts: TransferSystem) -> Pair | None:
    # two-out-of-three: (A,B) and (A,C) force (B,C) when A <= B <= C
    lat = ts.lattice
    for A, C in ts.edges:
        for B in lat.subgroups:
            if B % A == 0 and C % B == 0 and (B, C) not in ts.pairs:
                return (B, C)
    return None


def is_saturated(ts: TransferSystem) -> bool:
    return _saturation_gap(ts) is None


def saturated_hull(ts: TransferSystem) -> TransferSystem:
    cur = ts
    while True:
        gap = _saturation_gap(cur)
        if gap is None:
            return cur
        cur = TransferSystem.generated(cur.lattice, set(cur.pairs) | {gap})


@dataclass(frozen=True)
class CompatiblePair:
    mult: TransferSystem
    add: TransferSystem

    @property
    def lattice(self) -> SubgroupLattice:
        return self.mult.lattice

    @property
    def self_compatible(self) -> bool:
        return self.mult == self.add


def compatibility_violation(Om: TransferSystem, Oa: TransferSystem) -> tuple[int, int, int] | None:
    """First (B, C, A) with (B,A) in Om, (B n C, B) in Oa but (C,A) not in Oa."""
    if Om.lattice != Oa.lattice:
        raise ValueError("transfer systems live on different lattices")
    lat = Om.lattice
    for A in lat.subgroups:
        for B, C in product(lat.below(A), repeat=2):
            if (B, A) in Om and (lat.intersect(B, C), B) in Oa and (C, A) not in Oa:
                return (B, C, A)
    return None


def is_compatible_pair(Om: TransferSystem, Oa: TransferSystem) -> bool:
    return compatibility_violation(Om, Oa) is None


def enumerate_compatible_pairs(lat: SubgroupLattice) -> list[CompatiblePair]:
    systems = enumerate_transfer_systems(lat)
    return [CompatiblePair(m, a) for m in systems for a in systems if is_compatible_pair(m, a)]


@dataclass(frozen=True)
class Component:
    minimum: int
    members: tuple[int, ...]


def path_components(ts: TransferSystem) -> list[Component]:
    g = nx.Graph()
    g.add_nodes_from(ts.lattice.subgroups)
    g.add_edges_from(ts.edges)
    comps = []
    for c in nx.connected_components(g):
        members = tuple(sorted(c))
        comps.append(Component(members[0], members))
    return sorted(comps, key=lambda c: c.members)


# Names used for C_{p^2}, whose subgroups are 1 < p < p^2.

PP_NAMES = ("Otriv", "O1", "O2", "O3", "Ocomp")


def named_system(lat: SubgroupLattice, name: str) -> TransferSystem:
    """Otriv/Ocomp on any cyclic group, O1/O2/O3 on C_{p^2}."""
    subs = lat.subgroups
    if name in ("Otriv", "triv"):
        return TransferSystem.make(lat, [])
    if name in ("Ocomp", "comp"):
        return TransferSystem.make(lat, [(K, H) for H in subs for K in lat.below(H)])
    if len(subs) == 3 and lat.is_chain:
        e, p, pp = subs
        table = {"O1": [(e, p)], "O2": [(p, pp)], "O3": [(e, p), (e, pp)]}
        if name in table:
            return TransferSystem.make(lat, table[name])
    raise ValueError(f"unknown transfer system name {name!r} on C_{lat.group_order}")


def system_name(ts: TransferSystem) -> str:
    for name in PP_NAMES:
        try:
            if named_system(ts.lattice, name) == ts:
                return name
        except ValueError:
            continue
    return "{" + ",".join(f"({K},{H})" for K, H in ts.edges) + "}"


def parse_system(lat: SubgroupLattice, text: str) -> TransferSystem:
    """A name such as ``O3`` or edges written ``1<2|1<3``."""
    text = text.strip()
    if "<" not in text:
        return named_system(lat, text)
    edges = []
    for part in text.split("|"):
        K, H = part.split("<")
        edges.append((int(K), int(H)))
    return TransferSystem.make(lat, edges)


def iter_chains(lat: SubgroupLattice) -> Iterator[tuple[int, int, int]]:
    for A in lat.subgroups:
        for B in lat.subgroups:
            for C in lat.subgroups:
                if B % A == 0 and C % B == 0:
                    yield A, B, C


__all__ = [
    "TransferSystem",
    "CompatiblePair",
    "Component",
    "Violation",
    "validate_transfer_system",
    "enumerate_transfer_systems",
    "enumerate_compatible_pairs",
    "is_saturated",
    "saturated_hull",
    "is_compatible_pair",
    "compatibility_violation",
    "path_components",
    "named_system",
    "system_name",
    "parse_system",
    "cyclic_lattice",
]
