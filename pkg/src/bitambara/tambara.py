"""Lewis diagrams of bi-incomplete Tambara functors on cyclic groups.

Levels are indexed by subgroup order. Restriction matrices exist for every
K | H among the diagram's levels, transfers for pairs in the additive system,
norms (callables on element vectors) for pairs in the multiplicative system.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Sequence

from .lattice import SubgroupLattice, lcm
from .transfer import CompatiblePair, TransferSystem, is_compatible_pair
from .zalg import FiniteRankAlgebra, Matrix, Submodule, Vec, identity, vec_mat

NormFn = Callable[[Vec], Vec]

DEFAULT_SEED = 20240601
DEFAULT_BOUND = 10


@dataclass(frozen=True)
class Counterexample:
    check: str
    data: dict

    def __str__(self):
        items = ", ".join(f"{k}={v}" for k, v in self.data.items())
        return f"{self.check}: {items}"


@dataclass(eq=False)
class LewisDiagram:
    lattice: SubgroupLattice
    pair: CompatiblePair
    levels: dict[int, FiniteRankAlgebra]
    res: dict[tuple[int, int], Matrix]
    tr: dict[tuple[int, int], Matrix]
    nm: dict[tuple[int, int], NormFn]
    weyl: dict[int, Matrix] = field(default_factory=dict)
    name: str = ""
    norm_formulas: dict[tuple[int, int], str] = field(default_factory=dict)
    ambient: "LewisDiagram | None" = None
    primes: tuple[int, ...] = ()

    def __post_init__(self):
        for d, alg in self.levels.items():
            self.weyl.setdefault(d, identity(alg.rank))

    # ---- basic access

    @property
    def support(self) -> list[int]:
        return sorted(self.levels)

    @property
    def Om(self) -> TransferSystem:
        return self.pair.mult

    @property
    def Oa(self) -> TransferSystem:
        return self.pair.add

    def tr_pairs(self) -> list[tuple[int, int]]:
        return sorted(p for p in self.tr if p[0] != p[1])

    def nm_pairs(self) -> list[tuple[int, int]]:
        return sorted(p for p in self.nm if p[0] != p[1])

    def restrict(self, K: int, H: int, x: Sequence[int]) -> Vec:
        if K == H:
            return tuple(x)
        return self.levels[K].reduce(vec_mat(x, self.res[(K, H)]))

    def transfer(self, K: int, H: int, x: Sequence[int]) -> Vec:
        if K == H:
            return tuple(x)
        return self.levels[H].reduce(vec_mat(x, self.tr[(K, H)]))

    def norm(self, K: int, H: int, x: Sequence[int]) -> Vec:
        if K == H:
            return tuple(x)
        return self.levels[H].reduce(self.nm[(K, H)](tuple(x)))

    def weyl_elements(self, K: int) -> list[Matrix]:
        """Distinct matrices by which G/K acts on level K."""
        W = self.weyl[K]
        r = self.levels[K].rank
        out, M = [], identity(r)
        for _ in range(self.lattice.group_order // K):
            if M not in out:
                out.append(M)
            M = [list(vec_mat(row, W)) for row in M]
        return out

    def conj(self, K: int, g: int, x: Sequence[int]) -> Vec:
        """Action of the element g of Z/n on level K."""
        W = self.weyl[K]
        v = tuple(x)
        for _ in range(g % (self.lattice.group_order // K)):
            v = vec_mat(v, W)
        return self.levels[K].reduce(v)

    def random_element(self, d: int, rng: random.Random, bound: int = DEFAULT_BOUND) -> Vec:
        alg = self.levels[d]
        return alg.reduce([rng.randint(-bound, bound) for _ in range(alg.rank)])

    def transfer_image(self, H: int) -> Submodule:
        """Sum of images of transfers into H from proper subgroups."""
        alg = self.levels[H]
        rows = []
        for (K, H2), M in self.tr.items():
            if H2 == H and K != H:
                rows.extend(M)
        return Submodule(alg, rows)

    def full(self) -> "LewisDiagram":
        """The diagram this one was forgotten or restricted from, if any."""
        return self.ambient.full() if self.ambient is not None else self

    def __repr__(self):
        return f"LewisDiagram({self.name}, levels={self.support})"

    # ---- structural checks

    def check_structure(self) -> Counterexample | None:
        """Ring-hom property of restrictions and functoriality along chains."""
        for d, alg in self.levels.items():
            msg = alg.check_axioms()
            if msg:
                return Counterexample("algebra", {"level": d, "problem": msg})
        for (K, H), M in self.res.items():
            A, B = self.levels[H], self.levels[K]
            if self.restrict(K, H, A.one) != B.one:
                return Counterexample("res-unit", {"K": K, "H": H})
            for i in range(A.rank):
                for j in range(A.rank):
                    x, y = A.basis(i), A.basis(j)
                    lhs = self.restrict(K, H, A.mul(x, y))
                    rhs = B.mul(self.restrict(K, H, x), self.restrict(K, H, y))
                    if lhs != rhs:
                        return Counterexample("res-mult", {"K": K, "H": H, "x": x, "y": y})
        for L in self.support:
            for K in self.support:
                for H in self.support:
                    if K % L or H % K or len({L, K, H}) < 3:
                        continue
                    for i in range(self.levels[H].rank):
                        x = self.levels[H].basis(i)
                        if self.restrict(L, K, self.restrict(K, H, x)) != self.restrict(L, H, x):
                            return Counterexample("res-compose", {"chain": (L, K, H), "x": x})
                    if (L, K) in self.tr and (K, H) in self.tr and (L, H) in self.tr:
                        for i in range(self.levels[L].rank):
                            x = self.levels[L].basis(i)
                            if self.transfer(K, H, self.transfer(L, K, x)) != self.transfer(L, H, x):
                                return Counterexample("tr-compose", {"chain": (L, K, H), "x": x})
        return None


# ----------------------------------------------------------------- axiom checks

def _coset_reps(n: int, H: int, sub: int) -> list[int]:
    """Elements of Z/n representing H/sub (H, sub given by order)."""
    step = n // H
    return [j * step for j in range(H // sub)]


def check_frobenius(T: LewisDiagram, sample_count: int = 200, seed: int = DEFAULT_SEED) -> Counterexample | None:
    rng = random.Random(seed)
    for K, H in T.tr_pairs():
        A = T.levels[H]
        B = T.levels[K]
        for _ in range(sample_count):
            x = T.random_element(K, rng)
            y = T.random_element(H, rng)
            lhs = A.mul(T.transfer(K, H, x), y)
            rhs = T.transfer(K, H, B.mul(x, T.restrict(K, H, y)))
            if lhs != rhs:
                return Counterexample("frobenius", {"K": K, "H": H, "x": x, "y": y})
    return None


def check_double_coset(T: LewisDiagram, sample_count: int = 200, seed: int = DEFAULT_SEED) -> Counterexample | None:
    rng = random.Random(seed)
    n = T.lattice.group_order
    sup = T.support
    for K, H in T.tr_pairs():
        for L in sup:
            if H % L or L == H:
                continue
            M = T.lattice.intersect(L, K)
            if M not in T.levels:
                continue
            reps = _coset_reps(n, H, lcm(L, K))
            for _ in range(sample_count):
                x = T.random_element(K, rng)
                lhs = T.restrict(L, H, T.transfer(K, H, x))
                rhs = T.levels[L].zero()
                for g in reps:
                    term = T.transfer(M, L, T.conj(M, g, T.restrict(M, K, x)))
                    rhs = T.levels[L].add(rhs, term)
                if lhs != rhs:
                    return Counterexample("double-coset-tr", {"L": L, "K": K, "H": H, "x": x})
    for K, H in T.nm_pairs():
        for L in sup:
            if H % L or L == H:
                continue
            M = T.lattice.intersect(L, K)
            if M not in T.levels:
                continue
            reps = _coset_reps(n, H, lcm(L, K))
            for _ in range(sample_count):
                x = T.random_element(K, rng)
                lhs = T.restrict(L, H, T.norm(K, H, x))
                rhs = T.levels[L].one
                for g in reps:
                    term = T.norm(M, L, T.conj(M, g, T.restrict(M, K, x)))
                    rhs = T.levels[L].mul(rhs, term)
                if lhs != rhs:
                    return Counterexample("double-coset-nm", {"L": L, "K": K, "H": H, "x": x})
    return None


def check_tambara_reciprocity(T: LewisDiagram, sample_count: int = 200, seed: int = DEFAULT_SEED) -> Counterexample | None:
    rng = random.Random(seed)
    for K, H in T.nm_pairs():
        A = T.levels[H]
        img = T.transfer_image(H)
        for _ in range(sample_count):
            x = T.random_element(K, rng)
            y = T.random_element(K, rng)
            s = T.levels[K].add(x, y)
            defect = A.sub(A.sub(T.norm(K, H, s), T.norm(K, H, x)), T.norm(K, H, y))
            if defect not in img:
                return Counterexample("reciprocity", {"K": K, "H": H, "x": x, "y": y})
        one = T.levels[K].one
        if T.norm(K, H, one) != A.one:
            return Counterexample("norm-unit", {"K": K, "H": H})
        for _ in range(sample_count):
            x = T.random_element(K, rng)
            y = T.random_element(K, rng)
            if T.norm(K, H, T.levels[K].mul(x, y)) != A.mul(T.norm(K, H, x), T.norm(K, H, y)):
                return Counterexample("norm-mult", {"K": K, "H": H, "x": x, "y": y})
    return None


def check_all(T: LewisDiagram, sample_count: int = 200, seed: int = DEFAULT_SEED) -> list[Counterexample]:
    out = []
    for f in (lambda t: t.check_structure(), check_frobenius, check_tambara_reciprocity, check_double_coset):
        r = f(T) if f.__name__ == "<lambda>" else f(T, sample_count, seed)
        if r is not None:
            out.append(r)
    return out


# ----------------------------------------------------------------- cohomological predicates

@dataclass(frozen=True)
class CohomologicalReport:
    additive: bool
    multiplicative: bool
    additive_witness: dict | None = None
    multiplicative_witness: dict | None = None


def cohomological(T: LewisDiagram, grid: int = 3) -> CohomologicalReport:
    """tr res = index and nm res = power, checked on the complete structure when known."""
    T = T.full()
    add_w = mult_w = None
    for K, H in T.tr_pairs():
        A = T.levels[H]
        idx = H // K
        for i in range(A.rank):
            x = A.basis(i)
            lhs = T.transfer(K, H, T.restrict(K, H, x))
            if lhs != A.scale(idx, x):
                add_w = {"K": K, "H": H, "x": A.fmt(x), "lhs": A.fmt(lhs), "rhs": A.fmt(A.scale(idx, x))}
                break
        if add_w:
            break
    for K, H in T.nm_pairs():
        A = T.levels[H]
        idx = H // K
        samples = [A.basis(i) for i in range(A.rank)]
        samples += [tuple(v) for v in _grid(A.rank, grid)]
        for x in samples:
            x = A.reduce(x)
            lhs = T.norm(K, H, T.restrict(K, H, x))
            rhs = A.power(x, idx)
            if lhs != rhs:
                mult_w = {"K": K, "H": H, "x": A.fmt(x), "lhs": A.fmt(lhs), "rhs": A.fmt(rhs)}
                break
        if mult_w:
            break
    return CohomologicalReport(add_w is None, mult_w is None, add_w, mult_w)


def _grid(r: int, b: int):
    import itertools
    return itertools.product(range(-b, b + 1), repeat=r)


# ----------------------------------------------------------------- restrictions of structure

def forget_pair(T: LewisDiagram, Om: TransferSystem, Oa: TransferSystem) -> LewisDiagram:
    if not (Om <= T.Om and Oa <= T.Oa):
        raise ValueError("forget_pair needs a sub-pair of the diagram's pair")
    if not is_compatible_pair(Om, Oa):
        raise ValueError("forget_pair needs a compatible sub-pair")
    tr = {p: M for p, M in T.tr.items() if p in Oa}
    nm = {p: f for p, f in T.nm.items() if p in Om}
    return replace(
        T,
        pair=CompatiblePair(Om, Oa),
        tr=tr,
        nm=nm,
        norm_formulas={p: s for p, s in T.norm_formulas.items() if p in Om},
        ambient=T,
        weyl=dict(T.weyl),
    )


def restrict_levels(T: LewisDiagram, keep: Iterable[int]) -> LewisDiagram:
    """Keep a set of levels and every structure map among them."""
    keep = set(keep)
    for d in keep:
        if d not in T.levels:
            raise ValueError(f"level {d} not in diagram")
    return replace(
        T,
        levels={d: a for d, a in T.levels.items() if d in keep},
        res={p: M for p, M in T.res.items() if set(p) <= keep},
        tr={p: M for p, M in T.tr.items() if set(p) <= keep},
        nm={p: f for p, f in T.nm.items() if set(p) <= keep},
        weyl={d: W for d, W in T.weyl.items() if d in keep},
        norm_formulas={p: s for p, s in T.norm_formulas.items() if set(p) <= keep},
        ambient=T,
    )


def restrict_component(T: LewisDiagram, component: Iterable[int]) -> LewisDiagram:
    if not T.pair.self_compatible:
        raise ValueError("restricting to a path component needs a self-compatible pair")
    return restrict_levels(T, component)
