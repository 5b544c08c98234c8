"""Levelwise ideals of a Lewis diagram and their closure properties."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from ..tambara import DEFAULT_SEED, LewisDiagram
from ..transfer import CompatiblePair
from ..zalg import Submodule, Vec, ideal_from_generators, unit_ideal, vec_mat, zero_ideal


class TambaraIdeal:
    __slots__ = ("diagram", "levels", "_key")

    def __init__(self, diagram: LewisDiagram, levels: Mapping[int, Submodule]):
        self.diagram = diagram
        self.levels = {d: levels[d] for d in diagram.support}
        self._key = tuple(self.levels[d] for d in diagram.support)

    @classmethod
    def unit(cls, T: LewisDiagram) -> "TambaraIdeal":
        return cls(T, {d: unit_ideal(a) for d, a in T.levels.items()})

    @classmethod
    def zero(cls, T: LewisDiagram) -> "TambaraIdeal":
        return cls(T, {d: zero_ideal(a) for d, a in T.levels.items()})

    @classmethod
    def from_generators(cls, T: LewisDiagram, gens: Mapping[int, Iterable[Sequence[int]]]) -> "TambaraIdeal":
        return cls(T, {d: ideal_from_generators(a, gens.get(d, ())) for d, a in T.levels.items()})

    def __getitem__(self, d: int) -> Submodule:
        return self.levels[d]

    def __eq__(self, other):
        return isinstance(other, TambaraIdeal) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __le__(self, other: "TambaraIdeal") -> bool:
        return all(self.levels[d] <= other.levels[d] for d in self.levels)

    def __lt__(self, other):
        return self <= other and self != other

    def is_proper(self) -> bool:
        """Not the whole diagram; single levels may still be the unit ideal."""
        return not self.is_unit()

    def is_unit(self) -> bool:
        return all(S.is_unit_ideal() for S in self.levels.values())

    def with_level(self, d: int, S: Submodule) -> "TambaraIdeal":
        lv = dict(self.levels)
        lv[d] = S
        return TambaraIdeal(self.diagram, lv)

    def on(self, T: LewisDiagram) -> "TambaraIdeal":
        """Same levels viewed in another diagram with the same level algebras."""
        return TambaraIdeal(T, {d: self.levels[d] for d in T.support})

    def restrict_to(self, T: LewisDiagram) -> "TambaraIdeal":
        return TambaraIdeal(T, {d: self.levels[d] for d in T.support})

    def fmt(self) -> str:
        """Top level first, as in [top; ...; bottom]."""
        return "[" + "; ".join(self.levels[d].fmt() for d in reversed(self.diagram.support)) + "]"

    def __repr__(self):
        return f"TambaraIdeal{self.fmt()}"

    def to_json(self) -> dict:
        return {str(d): self.levels[d].to_json() for d in self.diagram.support}


@dataclass(frozen=True)
class IdealViolation:
    map: str
    source: int
    target: int
    witness: str

    def __str__(self):
        return f"{self.map} from level {self.source} to {self.target} sends {self.witness} outside the ideal"


def is_ideal(I: TambaraIdeal, pair: CompatiblePair | None = None, samples: int = 20,
              seed: int = DEFAULT_SEED) -> IdealViolation | None:
    """First structure map that leaves I, or None.

    Additive maps are checked on the HNF basis. Norms are checked on the
    basis and on seeded random members.
    """
    T = I.diagram
    tr_pairs = [p for p in T.tr_pairs() if pair is None or p in pair.add]
    nm_pairs = [p for p in T.nm_pairs() if pair is None or p in pair.mult]
    for d, S in I.levels.items():
        alg = T.levels[d]
        for v in S.basis:
            for i in range(alg.rank):
                if alg.mul(v, alg.basis(i)) not in S:
                    return IdealViolation("multiplication", d, d, alg.fmt(v))
    for (K, H) in T.res:
        if K == H:
            continue
        for v in I[H].basis:
            if T.restrict(K, H, v) not in I[K]:
                return IdealViolation("res", H, K, T.levels[H].fmt(v))
    for d in T.support:
        for W in T.weyl_elements(d)[1:]:
            for v in I[d].basis:
                if T.levels[d].reduce(vec_mat(v, W)) not in I[d]:
                    return IdealViolation("conj", d, d, T.levels[d].fmt(v))
    for K, H in tr_pairs:
        for v in I[K].basis:
            if T.transfer(K, H, v) not in I[H]:
                return IdealViolation("tr", K, H, T.levels[K].fmt(v))
    rng = random.Random(seed)
    for K, H in nm_pairs:
        basis = list(I[K].basis)
        for v in basis:
            if T.norm(K, H, v) not in I[H]:
                return IdealViolation("nm", K, H, T.levels[K].fmt(v))
        alg = T.levels[K]
        for _ in range(samples if basis else 0):
            x = alg.zero()
            for v in basis:
                x = alg.add(x, alg.scale(rng.randint(-10, 10), v))
            if T.norm(K, H, x) not in I[H]:
                return IdealViolation("nm", K, H, alg.fmt(x))
    return None


def ideal_closure(T: LewisDiagram, gens: Mapping[int, Iterable[Sequence[int]]],
                  pair: CompatiblePair | None = None) -> TambaraIdeal:
    """Smallest ideal of T containing the given elements."""
    tr_pairs = [p for p in T.tr_pairs() if pair is None or p in pair.add]
    nm_pairs = [p for p in T.nm_pairs() if pair is None or p in pair.mult]
    cur = {d: ideal_from_generators(a, gens.get(d, ())) for d, a in T.levels.items()}
    while True:
        new = {d: [] for d in T.support}
        for (K, H) in T.res:
            if K != H:
                new[K].extend(T.restrict(K, H, v) for v in cur[H].basis)
        for d in T.support:
            for W in T.weyl_elements(d)[1:]:
                new[d].extend(T.levels[d].reduce(vec_mat(v, W)) for v in cur[d].basis)
        for K, H in tr_pairs:
            new[H].extend(T.transfer(K, H, v) for v in cur[K].basis)
        for K, H in nm_pairs:
            new[H].extend(T.norm(K, H, v) for v in cur[K].basis)
        changed = False
        for d in T.support:
            if any(v not in cur[d] for v in new[d]):
                cur[d] = ideal_from_generators(T.levels[d], list(cur[d].basis) + new[d])
                changed = True
        if not changed:
            return TambaraIdeal(T, cur)
