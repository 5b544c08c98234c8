"""Built-in Tambara functors: Burnside, constant Z, initial, ghost."""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb, gcd

from .lattice import SubgroupLattice, cyclic_lattice, divisors, lcm, prime_factors
from .tambara import LewisDiagram, restrict_levels
from .transfer import CompatiblePair, TransferSystem, named_system, parse_system
from .zalg import (
    FiniteRankAlgebra,
    Quotient,
    Subalgebra,
    Submodule,
    Vec,
    fixed_subring,
    ideal_from_generators,
    identity,
    integers,
    product_algebra,
    quotient_algebra,
    rational_inverse,
    vec_mat,
)

CHAIN_NAMES = ("1", "t", "u", "v", "w", "s")


def _complete_pair(lat: SubgroupLattice) -> CompatiblePair:
    comp = named_system(lat, "Ocomp")
    return CompatiblePair(comp, comp)


def _is_prime(p: int) -> bool:
    return p >= 2 and prime_factors(p) == [p]


# ----------------------------------------------------------------- Burnside rings

class _BurnsideLevel:
    """A(C_d) with basis [C_d/C_k], ordered by increasing index d/k."""

    def __init__(self, d: int, chain_prime: int | None):
        self.d = d
        self.orbits = sorted(divisors(d), reverse=True)   # stabiliser orders
        self.subs = divisors(d)
        r = len(self.orbits)
        pos = {k: i for i, k in enumerate(self.orbits)}
        table = []
        for k1 in self.orbits:
            row = []
            for k2 in self.orbits:
                v = [0] * r
                v[pos[gcd(k1, k2)]] = d // lcm(k1, k2)
                row.append(tuple(v))
            table.append(tuple(row))
        names = []
        for k in self.orbits:
            m = d // k
            if chain_prime:
                e = 0
                while m > 1:
                    m //= chain_prime
                    e += 1
                names.append(CHAIN_NAMES[e])
            else:
                names.append("1" if m == 1 else f"x_{m}")
        one = [0] * r
        one[pos[d]] = 1
        self.pos = pos
        self.algebra = FiniteRankAlgebra(tuple(names), tuple(table), tuple(one), label=f"A(C{d})")
        self.marks = [[d // k if k % L == 0 else 0 for L in self.subs] for k in self.orbits]
        inv = rational_inverse(self.marks)
        den = 1
        for row in inv:
            for f in row:
                den = lcm(den, f.denominator)
        self.marks_den = den
        self.marks_inv = [[int(f * den) for f in row] for row in inv]

    def mark_vector(self, x) -> list[int]:
        return [sum(a * self.marks[i][j] for i, a in enumerate(x)) for j in range(len(self.subs))]

    def from_marks(self, m) -> Vec:
        out = []
        for j in range(len(self.orbits)):
            c, rem = divmod(sum(m[i] * self.marks_inv[i][j] for i in range(len(m))), self.marks_den)
            if rem:
                raise ArithmeticError("mark vector is not in the Burnside ring")
            out.append(c)
        return tuple(out)


def _burnside_norm(lo: _BurnsideLevel, hi: _BurnsideLevel):
    K, H = lo.d, hi.d

    def nm(x):
        mk = lo.mark_vector(x)
        idx = {L: i for i, L in enumerate(lo.subs)}
        out = []
        for L in hi.subs:
            base = mk[idx[gcd(L, K)]]
            out.append(base ** (H // lcm(L, K)))
        return hi.from_marks(out)

    return nm


def burnside(n: int, pair: CompatiblePair | None = None, name: str = "") -> LewisDiagram:
    """Burnside Tambara functor of C_n with exact structure maps."""
    lat = cyclic_lattice(n)
    ps = prime_factors(n)
    chain = ps[0] if len(ps) == 1 else None
    lv = {d: _BurnsideLevel(d, chain) for d in lat.subgroups}
    res, tr, nm, formulas = {}, {}, {}, {}
    for H in lat.subgroups:
        for L in lat.below(H):
            a, b = lv[H], lv[L]
            M = []
            for k in a.orbits:
                row = [0] * len(b.orbits)
                row[b.pos[gcd(L, k)]] = H // lcm(L, k)
                M.append(row)
            res[(L, H)] = M
            T = []
            for j in b.orbits:
                row = [0] * len(a.orbits)
                row[a.pos[j]] = 1
                T.append(row)
            tr[(L, H)] = T
            nm[(L, H)] = _burnside_norm(b, a)
            formulas[(L, H)] = "burnside-marks"
    full = LewisDiagram(
        lat, _complete_pair(lat), {d: lv[d].algebra for d in lat.subgroups}, res, tr, nm,
        name=name or f"burnside(C{n})", norm_formulas=formulas, primes=tuple(ps),
    )
    if pair is not None:
        from .tambara import forget_pair
        return forget_pair(full, pair.mult, pair.add)
    return full


def burnside_levels(n: int) -> dict[int, _BurnsideLevel]:
    ps = prime_factors(n)
    chain = ps[0] if len(ps) == 1 else None
    return {d: _BurnsideLevel(d, chain) for d in divisors(n)}


def mazur_norm(p: int):
    """nm from C_p to C_{p^2} on a + b t in A(C_p), written with A(C_{p^2}) coordinates (1, t, u)."""
    top = _BurnsideLevel(p * p, p).algebra

    def nm_int(k: int) -> Vec:
        return (k, (k ** p - k) // p, 0)

    def nm(x):
        a, b = x
        out = top.add(nm_int(a), top.mul(nm_int(b), (0, 0, p ** (p - 2))))
        for i in range(1, p):
            j = p - i
            # tr_p^{p^2} of a^i b^j t^j, with t^j = p^{j-1} t at level C_p
            c = comb(p, i) // p * a ** i * b ** j * p ** (j - 1)
            out = top.add(out, (0, 0, c))
        return out

    return nm


# ----------------------------------------------------------------- constant Z

def constant_Z(n: int, name: str = "") -> LewisDiagram:
    lat = cyclic_lattice(n)
    Z = integers()
    levels = {d: Z for d in lat.subgroups}
    res, tr, nm, formulas = {}, {}, {}, {}
    for H in lat.subgroups:
        for K in lat.below(H):
            idx = H // K
            res[(K, H)] = [[1]]
            tr[(K, H)] = [[idx]]
            nm[(K, H)] = (lambda e: (lambda x: (x[0] ** e,)))(idx)
            formulas[(K, H)] = f"x^{idx}"
    return LewisDiagram(lat, _complete_pair(lat), levels, res, tr, nm,
                        name=name or f"constantZ(C{n})", norm_formulas=formulas,
                        primes=tuple(prime_factors(n)))


# ----------------------------------------------------------------- initial functor

def initial_burnside(n: int, pair: CompatiblePair, name: str = "") -> LewisDiagram:
    """Level H spanned by the orbits H/K with (K, H) additively admissible."""
    full = burnside(n)
    lv = burnside_levels(n)
    lat = full.lattice
    Oa, Om = pair.add, pair.mult
    keep = {H: [i for i, k in enumerate(lv[H].orbits) if (k, H) in Oa] for H in lat.subgroups}
    levels = {}
    for H in lat.subgroups:
        A = full.levels[H]
        idx = keep[H]
        pos = {i: a for a, i in enumerate(idx)}
        table = []
        for i in idx:
            row = []
            for j in idx:
                prod = A.table[i][j]
                row.append(_project(prod, idx))
            table.append(tuple(row))
        levels[H] = FiniteRankAlgebra(
            tuple(A.basis_names[i] for i in idx), tuple(table), _project(A.one, idx),
            label=f"A_O(C{H})",
        )

    def sub_matrix(M, rows, cols):
        for r in rows:
            for c in range(len(M[r])):
                if c not in cols and M[r][c]:
                    raise ArithmeticError("structure map leaves the admissible span")
        return [[M[r][c] for c in cols] for r in rows]

    res = {p: sub_matrix(M, keep[p[1]], keep[p[0]]) for p, M in full.res.items()}
    tr = {p: sub_matrix(M, keep[p[0]], keep[p[1]]) for p, M in full.tr.items() if p in Oa}

    def lift(x, idx, r):
        v = [0] * r
        for a, i in enumerate(idx):
            v[i] = x[a]
        return tuple(v)

    nm = {}
    for (K, H), f in full.nm.items():
        if (K, H) not in Om:
            continue
        nm[(K, H)] = (lambda f, K, H: (lambda x: _project(
            f(lift(x, keep[K], full.levels[K].rank)), keep[H])))(f, K, H)
    return LewisDiagram(lat, pair, levels, res, tr, nm, name=name or f"initial(C{n})",
                        norm_formulas={p: "burnside-marks" for p in nm}, primes=full.primes)


def _project(v, idx) -> Vec:
    for i, a in enumerate(v):
        if a and i not in idx:
            raise ArithmeticError("element leaves the admissible span")
    return tuple(v[i] for i in idx)


# ----------------------------------------------------------------- geometric fixed points and ghost

def _two_levels(T: LewisDiagram) -> tuple[int, int]:
    sup = T.support
    if len(sup) != 2 or sup[1] % sup[0]:
        raise ValueError("expected a two-level diagram")
    K, H = sup
    if (K, H) not in T.tr:
        raise ValueError("the two-level diagram needs a transfer")
    return K, H


def geometric_fixed_points(T: LewisDiagram) -> Quotient:
    K, H = _two_levels(T)
    A = T.levels[H]
    tau = ideal_from_generators(A, T.tr[(K, H)])
    return quotient_algebra(A, tau, label=f"Phi({A.label})")


@dataclass(eq=False)
class GhostDiagram:
    base: LewisDiagram
    bottom: int
    top: int
    fixed: Subalgebra
    phi: Quotient
    top_algebra: FiniteRankAlgebra
    diagram: LewisDiagram
    ghost_matrix: list[list[int]]     # base top coords -> ghost top coords

    def ghost_map(self, d: int, x) -> Vec:
        if d == self.bottom:
            return tuple(x)
        return self.top_algebra.reduce(vec_mat(x, self.ghost_matrix))


def ghost(T: LewisDiagram) -> GhostDiagram:
    K, H = _two_levels(T)
    n = T.lattice.group_order
    bot = T.levels[K]
    g0 = n // H
    W = identity(bot.rank)
    for _ in range(g0 % (n // K)):
        W = [list(vec_mat(r, T.weyl[K])) for r in W]
    orbit = H // K
    F = fixed_subring(bot, W, orbit)
    phi = geometric_fixed_points(T)
    top = product_algebra(F.algebra, phi.algebra)
    fr, pr = F.algebra.rank, phi.algebra.rank

    def powers(x):
        out, v = [], tuple(x)
        for _ in range(orbit):
            out.append(v)
            v = vec_mat(v, W)
        return out

    res = [list(r) for r in F.basis_rows] + [[0] * bot.rank for _ in range(pr)]
    tr = []
    for i in range(bot.rank):
        s = bot.zero()
        for v in powers(bot.basis(i)):
            s = bot.add(s, v)
        tr.append(list(F.coords(s)) + [0] * pr)

    def nm(x):
        prod = bot.one
        for v in powers(x):
            prod = bot.mul(prod, bot.reduce(v))
        return top.reduce(F.coords(prod) + phi(T.norm(K, H, x)))

    A = T.levels[H]
    gm = [list(F.coords(T.restrict(K, H, A.basis(i)))) + list(phi(A.basis(i))) for i in range(A.rank)]
    D = LewisDiagram(
        T.lattice, T.pair, {K: bot, H: top}, {(K, H): res}, {(K, H): tr}, {(K, H): nm},
        weyl={K: T.weyl[K], H: identity(top.rank)}, name=f"ghost({T.name})",
        norm_formulas={(K, H): "orbit-product x nm mod tr"}, primes=T.primes,
    )
    return GhostDiagram(T, K, H, F, phi, top, D, gm)


# ----------------------------------------------------------------- name parsing

_CONSTRUCTION_RE = re.compile(r"^(burnside|constantZ|initial)(?::(.*))?$")


def parse_construction(text: str, pair: CompatiblePair | None = None) -> LewisDiagram:
    """``burnside:p=2``, ``burnside:p=2,n=2``, ``burnside:pq=2,3``, ``constantZ:p=2,n=2``, ``initial:pq=2,3``."""
    m = _CONSTRUCTION_RE.match(text.strip())
    if not m:
        raise ValueError(f"unknown construction {text!r}")
    kind, args = m.group(1), m.group(2) or ""
    n = _group_order(args)
    if kind == "burnside":
        T = burnside(n, name=text)
        if pair is not None:
            from .tambara import forget_pair
            T = forget_pair(T, pair.mult, pair.add)
        return T
    if kind == "constantZ":
        T = constant_Z(n, name=text)
        if pair is not None:
            from .tambara import forget_pair
            T = forget_pair(T, pair.mult, pair.add)
        return T
    if pair is None:
        pair = _complete_pair(cyclic_lattice(n))
    return initial_burnside(n, pair, name=text)


def _group_order(args: str) -> int:
    kv = {}
    if args:
        for m in re.finditer(r"(pq|p|n|order)=([0-9]+(?:,[0-9]+(?![=0-9]))?)", args):
            kv[m.group(1)] = m.group(2)
    if "order" in kv:
        return int(kv["order"])
    if "pq" in kv:
        parts = kv["pq"].split(",")
        if len(parts) != 2:
            raise ValueError("pq= needs two primes")
        p, q = map(int, parts)
        if not (_is_prime(p) and _is_prime(q)) or p == q:
            raise ValueError("pq= needs two distinct primes")
        return p * q
    if "p" in kv:
        p = int(kv["p"].split(",")[0])
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        e = int(kv.get("n", "1"))
        if e < 1:
            raise ValueError("n must be positive")
        return p ** e
    raise ValueError(f"cannot read a group from {args!r}")


def pp_names(T: LewisDiagram) -> bool:
    return T.lattice.is_chain and len(T.lattice.subgroups) == 3


__all__ = [
    "burnside",
    "constant_Z",
    "initial_burnside",
    "geometric_fixed_points",
    "ghost",
    "GhostDiagram",
    "mazur_norm",
    "parse_construction",
    "restrict_levels",
]
