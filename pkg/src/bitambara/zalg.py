"""Finite-rank commutative algebras over the integers and their submodules.

Elements are integer row vectors in the algebra's basis. A submodule is an
additive subgroup stored as a canonical Hermite normal form; ideals are the
submodules closed under multiplication by every basis element. Linear maps
act on row vectors from the right: ``f(v) = v @ F``.
"""

from __future__ import annotations

import ast
import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

Vec = tuple[int, ...]
Matrix = list[list[int]]


# ----------------------------------------------------------------- integer linear algebra

def hnf(rows: Iterable[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Row-style Hermite normal form with zero rows dropped.

    Pivots are positive and entries above a pivot lie in [0, pivot).
    """
    A = [list(map(int, r)) for r in rows]
    if ncols is None:
        ncols = len(A[0]) if A else 0
    A = [r for r in A if any(r)]
    m = len(A)
    pr = 0
    for j in range(ncols):
        if pr == m:
            break
        while True:
            nz = [i for i in range(pr, m) if A[i][j]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(A[i][j]))
            A[pr], A[i0] = A[i0], A[pr]
            if len(nz) == 1:
                break
            piv = A[pr]
            for i in range(pr + 1, m):
                c = A[i][j] // piv[j]
                if c:
                    row = A[i]
                    for k in range(j, ncols):
                        row[k] -= c * piv[k]
        if not any(A[i][j] for i in range(pr, m)):
            continue
        piv = A[pr]
        if piv[j] < 0:
            for k in range(j, ncols):
                piv[k] = -piv[k]
        for i in range(pr):
            c = A[i][j] // piv[j]
            if c:
                row = A[i]
                for k in range(j, ncols):
                    row[k] -= c * piv[k]
        pr += 1
    return [r for r in A[:pr]]


def left_kernel(M: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Basis of {v : v @ M = 0} for an m x ncols integer matrix."""
    m = len(M)
    aug = [list(M[i]) + [1 if k == i else 0 for k in range(m)] for i in range(m)]
    H = hnf(aug, ncols + m)
    return [r[ncols:] for r in H if not any(r[:ncols])]


def mat_mul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if not A:
        return []
    cols = len(B[0]) if B else 0
    return [[sum(a * B[k][j] for k, a in enumerate(row) if a) for j in range(cols)] for row in A]


def vec_mat(v: Sequence[int], M: Sequence[Sequence[int]]) -> Vec:
    cols = len(M[0]) if M else 0
    out = [0] * cols
    for k, a in enumerate(v):
        if a:
            row = M[k]
            for j in range(cols):
                out[j] += a * row[j]
    return tuple(out)


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith(M: Sequence[Sequence[int]]) -> tuple[list[int], Matrix, Matrix, Matrix]:
    """Smith normal form: returns (d, U, V, Vinv) with U @ M @ V diagonal d.

    ``d`` has length min(m, n); trailing zeros mark free directions.
    """
    A = [list(map(int, r)) for r in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U, V, Vi = identity(m), identity(n), identity(n)

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def row_add(dst, src, c):  # row dst += c * row src
        A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def col_add(dst, src, c):  # col dst += c * col src
        for r in A:
            r[dst] += c * r[src]
        for r in V:
            r[dst] += c * r[src]
        Vi[src] = [a - c * b for a, b in zip(Vi[src], Vi[dst])]

    for t in range(min(m, n)):
        while True:
            nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not nz:
                break
            _, i, j = min(nz)
            row_swap(t, i)
            col_swap(t, j)
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    row_add(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    col_add(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        done = False
            if not done:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            row_add(t, bad[0], 1)
        if t < m and A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    d = [A[i][i] for i in range(min(m, n))]
    return d, U, V, Vi


# ----------------------------------------------------------------- algebras

@dataclass(eq=False)
class FiniteRankAlgebra:
    """Commutative ring structure on Z^r / (moduli), given by structure constants.

    ``table[i][j]`` is the coordinate vector of b_i * b_j. ``moduli[i]`` is 0
    for a free coordinate and m > 1 for a Z/m summand.
    """

    basis_names: tuple[str, ...]
    table: tuple[tuple[Vec, ...], ...]
    one: Vec
    moduli: tuple[int, ...] = ()
    label: str = ""
    _ttensor: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        r = len(self.basis_names)
        if not self.moduli:
            self.moduli = (0,) * r
        self.table = tuple(tuple(self.reduce(v) for v in row) for row in self.table)
        self.one = self.reduce(self.one)

    @property
    def rank(self) -> int:
        return len(self.basis_names)

    @property
    def unit(self) -> int | None:
        """Index of the basis element equal to 1, if there is one."""
        for i in range(self.rank):
            if self.one == self.basis(i):
                return i
        return None

    @property
    def has_torsion(self) -> bool:
        return any(self.moduli)

    def basis(self, i: int) -> Vec:
        return tuple(1 if k == i else 0 for k in range(self.rank))

    def zero(self) -> Vec:
        return (0,) * self.rank

    def reduce(self, v: Sequence[int]) -> Vec:
        return tuple(int(a) % m if m else int(a) for a, m in zip(v, self.moduli))

    def add(self, x: Vec, y: Vec) -> Vec:
        return self.reduce([a + b for a, b in zip(x, y)])

    def sub(self, x: Vec, y: Vec) -> Vec:
        return self.reduce([a - b for a, b in zip(x, y)])

    def scale(self, c: int, x: Vec) -> Vec:
        return self.reduce([c * a for a in x])

    def const(self, c: int) -> Vec:
        return self.scale(c, self.one)

    def mul(self, x: Vec, y: Vec) -> Vec:
        r = self.rank
        out = [0] * r
        T = self.table
        for i, a in enumerate(x):
            if not a:
                continue
            Ti = T[i]
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(Ti[j]):
                    if c:
                        out[k] += ab * c
        return self.reduce(out)

    def power(self, x: Vec, e: int) -> Vec:
        out, base = self.one, x
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def mult_matrix(self, x: Vec) -> Matrix:
        """Matrix of y -> x*y in the row convention."""
        return [list(self.mul(self.basis(i), x)) for i in range(self.rank)]

    @property
    def tensor(self) -> np.ndarray:
        if self._ttensor is None:
            self._ttensor = np.array(self.table, dtype=object).reshape(self.rank, self.rank, self.rank)
        return self._ttensor

    def check_axioms(self) -> str | None:
        """Commutativity, associativity and unit law on basis elements."""
        r = self.rank
        B = [self.basis(i) for i in range(r)]
        for i in range(r):
            if self.mul(self.one, B[i]) != B[i]:
                return f"unit fails on {self.basis_names[i]}"
            for j in range(r):
                if self.mul(B[i], B[j]) != self.mul(B[j], B[i]):
                    return f"not commutative at {self.basis_names[i]},{self.basis_names[j]}"
                for k in range(r):
                    if self.mul(self.mul(B[i], B[j]), B[k]) != self.mul(B[i], self.mul(B[j], B[k])):
                        return "not associative at " + ",".join(self.basis_names[a] for a in (i, j, k))
        return None

    # ---- text

    def fmt(self, x: Sequence[int]) -> str:
        terms = []
        order = [i for i in range(self.rank) if self.basis(i) != self.one]
        order = order[::-1] + [i for i in range(self.rank) if self.basis(i) == self.one]
        for i in order:
            c = x[i]
            if not c:
                continue
            name = self.basis_names[i]
            is_one = self.basis(i) == self.one
            mag = abs(c)
            body = str(mag) if is_one else (name if mag == 1 else f"{mag}{name}")
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            s += sign + body
        return s

    def parse(self, text: str, **symbols: int) -> Vec:
        """Evaluate an expression such as ``u - p^2`` or ``x_2*x_3 - 6``."""
        names = {n: self.basis(i) for i, n in enumerate(self.basis_names) if n != "1"}
        text = re.sub(r"(?<![A-Za-z_\d])(\d+)([A-Za-z])", r"\1*\2", text)   # 2t -> 2*t
        tree = ast.parse(text.replace("^", "**"), mode="eval")

        def ev(node):
            if isinstance(node, ast.Expression):
                return ev(node.body)
            if isinstance(node, ast.Constant) and isinstance(node.value, int):
                return ("int", node.value)
            if isinstance(node, ast.Name):
                if node.id in symbols:
                    return ("int", int(symbols[node.id]))
                if node.id in names:
                    return ("el", names[node.id])
                raise ValueError(f"unknown name {node.id!r} in {text!r}")
            if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
                k, v = ev(node.operand)
                if isinstance(node.op, ast.UAdd):
                    return k, v
                return (k, -v) if k == "int" else (k, self.scale(-1, v))
            if isinstance(node, ast.BinOp):
                a, b = ev(node.left), ev(node.right)
                if isinstance(node.op, ast.Pow):
                    if b[0] != "int":
                        raise ValueError("exponent must be an integer")
                    return ("int", a[1] ** b[1]) if a[0] == "int" else ("el", self.power(a[1], b[1]))
                if a[0] == b[0] == "int":
                    ops = {ast.Add: int.__add__, ast.Sub: int.__sub__, ast.Mult: int.__mul__}
                    return ("int", ops[type(node.op)](a[1], b[1]))
                x = self.const(a[1]) if a[0] == "int" else a[1]
                y = self.const(b[1]) if b[0] == "int" else b[1]
                if isinstance(node.op, ast.Add):
                    return ("el", self.add(x, y))
                if isinstance(node.op, ast.Sub):
                    return ("el", self.sub(x, y))
                if isinstance(node.op, ast.Mult):
                    return ("el", self.mul(x, y))
            raise ValueError(f"cannot parse {text!r}")

        k, v = ev(tree)
        return self.const(v) if k == "int" else v

    def to_json(self) -> dict:
        return {
            "basis_names": list(self.basis_names),
            "mult_table": [[list(v) for v in row] for row in self.table],
            "one": list(self.one),
            "moduli": list(self.moduli),
        }

    @classmethod
    def from_json(cls, data: dict) -> "FiniteRankAlgebra":
        return cls(
            tuple(data["basis_names"]),
            tuple(tuple(tuple(v) for v in row) for row in data["mult_table"]),
            tuple(data["one"]),
            tuple(data.get("moduli") or ()),
        )

    def __repr__(self):
        return f"FiniteRankAlgebra({self.label or ','.join(self.basis_names)})"


def integers() -> FiniteRankAlgebra:
    return FiniteRankAlgebra(("1",), (((1,),),), (1,), label="Z")


def product_algebra(A: FiniteRankAlgebra, B: FiniteRankAlgebra) -> FiniteRankAlgebra:
    ra, rb = A.rank, B.rank
    table = []
    for i in range(ra + rb):
        row = []
        for j in range(ra + rb):
            if i < ra and j < ra:
                row.append(A.table[i][j] + (0,) * rb)
            elif i >= ra and j >= ra:
                row.append((0,) * ra + B.table[i - ra][j - ra])
            else:
                row.append((0,) * (ra + rb))
        table.append(tuple(row))
    names = tuple(f"({n},0)" for n in A.basis_names) + tuple(f"(0,{n})" for n in B.basis_names)
    return FiniteRankAlgebra(names, tuple(table), A.one + B.one, A.moduli + B.moduli,
                             label=f"{A.label or 'A'} x {B.label or 'B'}")


# ----------------------------------------------------------------- submodules

class Submodule:
    """Additive subgroup of an algebra, canonical HNF basis (modulus rows included)."""

    __slots__ = ("algebra", "basis", "_key", "_pivots")

    def __init__(self, algebra: FiniteRankAlgebra, rows: Iterable[Sequence[int]] = ()):
        self.algebra = algebra
        r = algebra.rank
        rows = [list(map(int, v)) for v in rows]
        for i, m in enumerate(algebra.moduli):
            if m:
                rows.append([m if k == i else 0 for k in range(r)])
        self.basis: tuple[Vec, ...] = tuple(tuple(v) for v in hnf(rows, r))
        self._key = self.basis
        self._pivots = [next(k for k, a in enumerate(v) if a) for v in self.basis]

    # identity is the canonical matrix
    def __eq__(self, other):
        if not isinstance(other, Submodule):
            return NotImplemented
        self._same(other)
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def _same(self, other: "Submodule"):
        if other.algebra is not self.algebra:
            raise ValueError("submodules live in different algebras")

    def __contains__(self, v: Sequence[int]) -> bool:
        v = list(v)
        for row, j in zip(self.basis, self._pivots):
            if any(v[:j]):
                return False
            c, rem = divmod(v[j], row[j])
            if rem:
                return False
            if c:
                for k in range(j, len(v)):
                    v[k] -= c * row[k]
        return not any(v)

    def member(self, v: Sequence[int]) -> bool:
        return v in self

    def member_mask(self, vecs: np.ndarray) -> np.ndarray:
        """Vectorised membership for an (N, r) integer array."""
        v = np.array(vecs, copy=True)
        if v.ndim == 1:
            v = v[None, :]
        ok = np.ones(v.shape[0], dtype=bool)
        for row, j in zip(self.basis, self._pivots):
            if j:
                ok &= ~np.any(v[:, :j] != 0, axis=1)
            piv = row[j]
            rem = v[:, j] % piv
            ok &= rem == 0
            c = v[:, j] // piv
            v = v - c[:, None] * np.array(row, dtype=v.dtype)[None, :]
        ok &= ~np.any(v != 0, axis=1)
        return ok

    def __le__(self, other: "Submodule") -> bool:
        self._same(other)
        return all(v in other for v in self.basis)

    def __lt__(self, other):
        return self <= other and self != other

    def __add__(self, other: "Submodule") -> "Submodule":
        self._same(other)
        return Submodule(self.algebra, self.basis + other.basis)

    def __and__(self, other: "Submodule") -> "Submodule":
        return self.intersect(other)

    def intersect(self, other: "Submodule") -> "Submodule":
        self._same(other)
        A, B = list(self.basis), list(other.basis)
        if not A or not B:
            return Submodule(self.algebra)
        r = self.algebra.rank
        ker = left_kernel(A + B, r)
        return Submodule(self.algebra, [vec_mat(k[: len(A)], A) for k in ker])

    @property
    def rank(self) -> int:
        return sum(1 for v, j in zip(self.basis, self._pivots) if not self.algebra.moduli[j])

    def is_zero(self) -> bool:
        return Submodule(self.algebra) == self

    def is_unit_ideal(self) -> bool:
        return self.algebra.one in self

    def is_ideal(self) -> bool:
        alg = self.algebra
        return all(alg.mul(v, alg.basis(i)) in self for v in self.basis for i in range(alg.rank))

    def generators(self) -> list[Vec]:
        """Basis rows that are not just the algebra's modulus relations."""
        zero = Submodule(self.algebra)
        return [v for v in self.basis if v not in zero]

    def ideal_generators(self) -> list[Vec]:
        """A short generating list, preferring sparse elements with small coefficients."""
        key = (id(self.algebra), self._key)
        hit = _GEN_CACHE.get(key)
        if hit is None or hit[0] is not self.algebra:
            hit = (self.algebra, _short_generators(self))
            _GEN_CACHE[key] = hit
        return list(hit[1])

    def fmt(self) -> str:
        if self.is_unit_ideal():
            return "1"
        gens = self.ideal_generators()
        if not gens:
            return "0"
        return "<" + ", ".join(self.algebra.fmt(g) for g in gens) + ">"

    def __repr__(self):
        return f"Submodule({self.fmt()})"

    def to_json(self) -> list[list[int]]:
        return [list(v) for v in self.basis]


_GEN_CACHE: dict = {}


def _short_generators(S: "Submodule") -> list[Vec]:
    alg = S.algebra
    if alg.one in S:
        return [tuple(alg.one)]
    gens = S.generators()
    if not gens:
        return []
    c = 2 if len(gens) <= 4 else 1
    pool = set()
    for coeffs in itertools.product(range(-c, c + 1), repeat=len(gens)):
        v = alg.reduce([sum(a * g[k] for a, g in zip(coeffs, gens)) for k in range(alg.rank)])
        if any(v) and v in S:
            pool.add(_positive_lead(alg, v))
    order = sorted(pool, key=lambda v: (sum(1 for a in v if a), max(map(abs, v)), sum(map(abs, v)),
                                        [-abs(a) for a in v[::-1]], v))
    keep: list[Vec] = []
    cur = ideal_from_generators(alg, [])
    for v in order:
        if v not in cur:
            keep.append(v)
            cur = ideal_from_generators(alg, keep)
            if cur == S:
                break
    if cur != S:
        keep = [_positive_lead(alg, v) for v in gens]
    for v in list(keep):
        rest = [w for w in keep if w != v]
        if rest and ideal_from_generators(alg, rest) == S:
            keep = rest
    return sorted(keep, key=_display_order)


def _display_order(v: Vec):
    top = max((i for i, a in enumerate(v) if a), default=-1)
    return (top, sum(map(abs, v)), v)


def _positive_lead(alg: FiniteRankAlgebra, v: Vec) -> Vec:
    """Sign so that the first printed term is positive."""
    return alg.scale(-1, v) if alg.fmt(v).startswith("-") else tuple(v)


def span(alg: FiniteRankAlgebra, rows: Iterable[Sequence[int]]) -> Submodule:
    return Submodule(alg, rows)


def unit_ideal(alg: FiniteRankAlgebra) -> Submodule:
    return Submodule(alg, [alg.basis(i) for i in range(alg.rank)])


def zero_ideal(alg: FiniteRankAlgebra) -> Submodule:
    return Submodule(alg)


def ideal_from_generators(alg: FiniteRankAlgebra, gens: Iterable[Sequence[int]]) -> Submodule:
    rows = []
    for g in gens:
        g = alg.reduce(g)
        rows.extend(alg.mul(g, alg.basis(i)) for i in range(alg.rank))
    return Submodule(alg, rows)


def member(S: Submodule, v: Sequence[int]) -> bool:
    return v in S


def submodule_sum(S1: Submodule, S2: Submodule) -> Submodule:
    return S1 + S2


def submodule_intersect(S1: Submodule, S2: Submodule) -> Submodule:
    return S1.intersect(S2)


def equal(S1: Submodule, S2: Submodule) -> bool:
    return S1 == S2


def is_unit_ideal(S: Submodule) -> bool:
    return S.is_unit_ideal()


class NotAdditive(TypeError):
    pass


def preimage(F: Sequence[Sequence[int]] | "LinearMap", S: Submodule,
             domain: FiniteRankAlgebra) -> Submodule:
    """{v in domain : v @ F lies in S}."""
    if callable(F) and not isinstance(F, (list, tuple)):
        raise NotAdditive("preimage needs an additive map given as a matrix")
    F = [list(r) for r in F]
    rd = domain.rank
    gens = [list(v) for v in S.basis]
    rc = S.algebra.rank
    ker = left_kernel(F + gens, rc)
    return Submodule(domain, [k[:rd] for k in ker])


def image(F: Sequence[Sequence[int]], S: Submodule, codomain: FiniteRankAlgebra) -> Submodule:
    return Submodule(codomain, [vec_mat(v, F) for v in S.basis])


# ----------------------------------------------------------------- derived algebras

@dataclass(eq=False)
class Quotient:
    """Presentation of alg / ideal as a finite-rank algebra with moduli."""

    source: FiniteRankAlgebra
    ideal: Submodule
    algebra: FiniteRankAlgebra
    matrix: Matrix          # source coords -> quotient coords
    lifts: Matrix           # quotient basis -> source coords

    def __call__(self, x: Sequence[int]) -> Vec:
        return self.algebra.reduce(vec_mat(x, self.matrix))

    def lift(self, y: Sequence[int]) -> Vec:
        return vec_mat(y, self.lifts)

    def pull(self, S: Submodule) -> Submodule:
        return preimage(self.matrix, S, self.source)

    def push(self, S: Submodule) -> Submodule:
        return Submodule(self.algebra, [self(v) for v in S.basis])


def quotient_algebra(alg: FiniteRankAlgebra, ideal: Submodule, label: str = "") -> Quotient:
    if alg.has_torsion:
        raise ValueError("quotients are taken of torsion-free algebras only")
    r = alg.rank
    B = [list(v) for v in ideal.basis]
    if B:
        d, _, V, Vi = smith(B)
    else:
        d, V, Vi = [], identity(r), identity(r)
    d = d + [0] * (r - len(d))
    keep = [i for i in range(r) if d[i] != 1]
    moduli = tuple(abs(d[i]) for i in keep)
    Q = [[V[a][i] for i in keep] for a in range(r)]
    lifts = [Vi[i] for i in keep]
    k = len(keep)

    def proj(x):
        return tuple(c % m if m else c for c, m in zip(vec_mat(x, Q), moduli))

    one = proj(alg.one)
    sign = [1] * k
    for i, c in enumerate(one):  # make the unit have non-negative coordinates
        if c < 0 and not moduli[i]:
            sign[i] = -1
    Q = [[row[i] * sign[i] for i in range(k)] for row in Q]
    lifts = [[c * sign[i] for c in lifts[i]] for i in range(k)]
    table = tuple(tuple(proj(alg.mul(tuple(lifts[i]), tuple(lifts[j]))) for j in range(k)) for i in range(k))
    names = tuple(f"[{alg.fmt(l)}]" for l in lifts) if k else ()
    qa = FiniteRankAlgebra(names, table, proj(alg.one), moduli, label=label)
    return Quotient(alg, ideal, qa, Q, lifts)


def saturate_kernel(M: Sequence[Sequence[int]], r: int) -> Matrix:
    """HNF basis of the saturated lattice {v : v @ M = 0}."""
    return hnf(left_kernel(M, len(M[0]) if M else r), r)


@dataclass(eq=False)
class Subalgebra:
    """A subring given by a lattice basis, presented as its own algebra."""

    ambient: FiniteRankAlgebra
    basis_rows: Matrix
    algebra: FiniteRankAlgebra

    def embed(self, y: Sequence[int]) -> Vec:
        return vec_mat(y, self.basis_rows)

    def coords(self, x: Sequence[int]) -> Vec:
        sol = _solve_rows(self.basis_rows, list(x))
        if sol is None:
            raise ValueError(f"{x} is not in the subring")
        return tuple(sol)

    @property
    def embedding(self) -> Matrix:
        return [list(r) for r in self.basis_rows]


def _solve_rows(rows: Matrix, x: list[int]) -> list[int] | None:
    """Integer c with c @ rows == x, for rows in echelon form."""
    x = list(x)
    c = []
    for row in rows:
        j = next(k for k, a in enumerate(row) if a)
        if any(x[:j]):
            return None
        q, rem = divmod(x[j], row[j])
        if rem:
            return None
        c.append(q)
        x = [a - q * b for a, b in zip(x, row)]
    return c if not any(x) else None


def subalgebra(alg: FiniteRankAlgebra, rows: Matrix, label: str = "") -> Subalgebra:
    rows = hnf(rows, alg.rank)
    k = len(rows)
    table = []
    for i in range(k):
        out = []
        for j in range(k):
            prod = alg.mul(tuple(rows[i]), tuple(rows[j]))
            c = _solve_rows(rows, list(prod))
            if c is None:
                raise ValueError("lattice is not closed under multiplication")
            out.append(tuple(c))
        table.append(tuple(out))
    one = _solve_rows(rows, list(alg.one))
    if one is None:
        raise ValueError("lattice does not contain 1")
    names = tuple(alg.fmt(r) if alg.fmt(r) != "1" else "1" for r in rows)
    sa = FiniteRankAlgebra(names, tuple(table), tuple(one), label=label)
    return Subalgebra(alg, rows, sa)


def fixed_subring(alg: FiniteRankAlgebra, action: Matrix, order: int) -> Subalgebra:
    """Elements fixed by a cyclic group generated by ``action``."""
    r = alg.rank
    if action == identity(r):
        return subalgebra(alg, identity(r), label=alg.label)
    D = [[action[i][j] - (1 if i == j else 0) for j in range(r)] for i in range(r)]
    return subalgebra(alg, saturate_kernel(D, r), label=f"{alg.label}^W")


# ----------------------------------------------------------------- characters

def characters(alg: FiniteRankAlgebra) -> list[Vec]:
    """Ring maps to Z, as value vectors on the basis.

    Uses a generic multiplication operator; raises when the algebra is not
    split over the rationals or the values are not integers.
    """
    if alg.has_torsion:
        raise ValueError("characters need a torsion-free algebra")
    r = alg.rank
    rng = np.random.default_rng(12345)
    lam = rng.integers(1, 50, size=r)
    R = np.zeros((r, r))
    for i in range(r):
        R += lam[i] * np.array(alg.mult_matrix(alg.basis(i)), dtype=float)
    vals, vecs = np.linalg.eig(R)
    out = []
    for k in range(r):
        c = np.real_if_close(vecs[:, k])
        if np.iscomplexobj(c):
            raise ValueError("algebra is not split over Q")
        s = float(np.dot(alg.one, c))
        if abs(s) < 1e-9:
            raise ValueError("degenerate eigenvector")
        c = c / s
        chi = tuple(int(round(v)) for v in c)
        if not _is_character(alg, chi):
            raise ValueError("no integral character found")
        out.append(chi)
    if len(set(out)) != r:
        raise ValueError("algebra is not reduced and split")
    return sorted(out)


def _is_character(alg: FiniteRankAlgebra, chi: Vec) -> bool:
    def ev(x):
        return sum(a * b for a, b in zip(x, chi))
    if ev(alg.one) != 1:
        return False
    for i in range(alg.rank):
        for j in range(alg.rank):
            if ev(alg.table[i][j]) != chi[i] * chi[j]:
                return False
    return True


def character_prime(alg: FiniteRankAlgebra, chi: Vec, q: int) -> Submodule:
    """The prime chi^{-1}(qZ)."""
    F = [[c] for c in chi]
    Z = integers()
    return preimage(F, Submodule(Z, [(q,)] if q else []), alg)


def rational_inverse(M: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next(i for i in range(c, n) if A[i][c] != 0)
        A[c], A[p] = A[p], A[c]
        pv = A[c][c]
        A[c] = [x / pv for x in A[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return [row[n:] for row in A]
