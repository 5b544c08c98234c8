"""Generalized products, the Q-condition and bounded primality searches."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..tambara import LewisDiagram
from ..transfer import TransferSystem
from ..zalg import FiniteRankAlgebra, Matrix, Submodule, Vec, left_kernel, vec_mat
from .ideals import TambaraIdeal

_INT64_SAFE = 2 ** 62


def _norm_pairs(T: LewisDiagram, Om: TransferSystem | None) -> set[tuple[int, int]]:
    pairs = {(d, d) for d in T.support}
    for p in T.nm:
        if Om is None or p in Om:
            pairs.add(p)
    return pairs


def translates(T: LewisDiagram, x: Sequence[int], H: int,
               Om: TransferSystem | None = None) -> dict[int, list[Vec]]:
    """All nm∘conj∘res images of x, grouped by target level (deduplicated, ordered)."""
    allowed = _norm_pairs(T, Om)
    out: dict[int, list[Vec]] = {}
    for K in T.support:
        if H % K:
            continue
        r = T.restrict(K, H, x)
        for W in T.weyl_elements(K):
            c = T.levels[K].reduce(vec_mat(r, W))
            for L in T.support:
                if (K, L) in allowed:
                    v = T.norm(K, L, c)
                    bucket = out.setdefault(L, [])
                    if v not in bucket:
                        bucket.append(v)
    return out


def generalized_products(T: LewisDiagram, x: Sequence[int], H1: int, y: Sequence[int], H2: int,
                         Om: TransferSystem | None = None) -> list[tuple[int, Vec]]:
    tx = translates(T, x, H1, Om)
    ty = translates(T, y, H2, Om)
    out = []
    for L in T.support:
        if L in tx and L in ty:
            alg = T.levels[L]
            for a in tx[L]:
                for b in ty[L]:
                    out.append((L, alg.mul(a, b)))
    return out


def q_condition(T: LewisDiagram, I: TambaraIdeal, x: Sequence[int], H1: int, y: Sequence[int], H2: int,
                Om: TransferSystem | None = None) -> bool:
    return all(v in I[L] for L, v in generalized_products(T, x, H1, y, H2, Om))


@dataclass(frozen=True)
class Witness:
    x: Vec
    level_x: int
    y: Vec
    level_y: int
    text: str

    def __str__(self):
        return self.text


def _reduce_mod(S: Submodule, v: Vec) -> Vec:
    """Small representative of v modulo a full-rank submodule (else v itself).

    Membership of a product in an ideal only depends on the factors' classes.
    """
    r = S.algebra.rank
    if len(S.basis) < r:
        return v
    v = list(v)
    for row in S.basis:
        c = next(k for k, a in enumerate(row) if a)
        f = v[c] // row[c]
        if f:
            v = [a - f * b for a, b in zip(v, row)]
    return tuple(v)


def _box(alg: FiniteRankAlgebra, bound: int) -> list[Vec]:
    seen, out = set(), []
    for v in itertools.product(range(-bound, bound + 1), repeat=alg.rank):
        v = alg.reduce(v)
        if v not in seen:
            seen.add(v)
            out.append(v)
    out.sort(key=lambda v: (sum(map(abs, v)), [-abs(a) for a in v[::-1]], v))
    return out


def _stack(vs: list[list[Vec]], r: int) -> np.ndarray:
    m = max((len(v) for v in vs), default=0)
    arr = np.zeros((len(vs), max(m, 1), r), dtype=object)
    mask = np.zeros((len(vs), max(m, 1)), dtype=bool)
    for a, lst in enumerate(vs):
        for i, v in enumerate(lst):
            arr[a, i] = v
            mask[a, i] = True
    return arr, mask


def _as_int(arr: np.ndarray) -> np.ndarray:
    big = max((abs(int(v)) for v in arr.flat), default=0)
    return arr.astype(np.int64) if big < 2 ** 30 else arr


_MODULI = (268435399, 268435367, 268435361, 268435331, 268435313, 268435291, 268435273, 268435243,
           268435183, 268435171, 268435157, 268435147, 268435133, 268435129, 268435121, 268435109)


def _annihilated_mod(A, B, C, S: Submodule, r: int) -> np.ndarray:
    """Mask of products a_i * b_j lying in the rational span of S, via CRT over small primes.

    Exact for that test; membership in a non-saturated S still needs checking.
    """
    if S.basis:
        N = np.array(left_kernel([list(c) for c in zip(*S.basis)], len(S.basis)), dtype=object).T
    else:
        N = np.eye(r, dtype=int).astype(object)
    Cn = np.einsum("klm,mj->klj", C.astype(object), N)
    big = 2 * r * r
    for X in (A, B, Cn):
        big *= max(1, int(np.abs(X).max()) if X.size else 1)
    mods, prod = [], 1
    for m in _MODULI:
        mods.append(m)
        prod *= m
        if prod > big:
            break
    else:
        raise OverflowError("products too large for the modular test")
    mask = None
    for m in mods:
        Am = (A % m).astype(np.int64)
        Bm = (B % m).astype(np.int64)
        Cm = (Cn % m).astype(np.int64)
        BC = np.einsum("bjl,klm->bjkm", Bm, Cm) % m
        P = np.einsum("aik,bjkm->abijm", Am, BC) % m
        z = ~np.any(P != 0, axis=-1)
        mask = z if mask is None else mask & z
    return mask


def _q_matrix(T: LewisDiagram, I: TambaraIdeal, tx: dict, ty: dict, na: int, nb: int) -> np.ndarray:
    """Boolean (na, nb) matrix of Q(I, x_a, y_b) from precomputed translates."""
    ok = np.ones((na, nb), dtype=bool)
    for L in T.support:
        if L not in tx or L not in ty:
            continue
        A, ma = tx[L]
        B, mb = ty[L]
        alg = T.levels[L]
        C = _as_int(alg.tensor)
        A = _as_int(A)
        B = _as_int(B)
        big = 1
        for X in (A, B, C):
            big *= int(np.abs(X).max()) if X.size else 0
        big *= alg.rank ** 2
        S = I[L]
        wide = any(x.dtype == object for x in (A, B, C)) or int(big) >= _INT64_SAFE
        if wide and not alg.has_torsion and len(S.basis) < alg.rank:
            valid = ma[:, None, :, None] & mb[None, :, None, :]
            ok &= (_annihilated_mod(A, B, C, S, alg.rank) | ~valid).all(axis=(2, 3))
            continue
        if wide:
            A, B, C = A.astype(object), B.astype(object), C.astype(object)
        ia, ib = A.shape[1], B.shape[1]
        step = max(1, 400000 // max(1, nb * ia * ib * alg.rank))
        for a0 in range(0, na, step):
            a1 = min(na, a0 + step)
            P = np.einsum("aik,bjl,klm->abijm", A[a0:a1], B, C)
            flat = P.reshape(-1, alg.rank)
            if alg.has_torsion:
                flat = flat % np.array([m if m else 1 << 62 for m in alg.moduli], dtype=flat.dtype)
            mem = S.member_mask(flat).reshape(a1 - a0, nb, ia, ib)
            valid = ma[a0:a1][:, None, :, None] & mb[None, :, None, :]
            mem = mem | ~valid
            ok[a0:a1] &= mem.all(axis=(2, 3))
    return ok


def refute_primality(T: LewisDiagram, I: TambaraIdeal, bound: int = 3, Om: TransferSystem | None = None,
                     levels: Sequence[int] | None = None) -> Witness | None:
    """First pair (x, y) outside I with Q(I, x, y), searching coefficients in [-bound, bound].

    Level pairs are visited from the top down. ``None`` means no witness was
    found, which does not prove primality.
    """
    if not I.is_proper():
        raise ValueError("refute_primality needs a proper ideal")
    sup = list(levels) if levels is not None else T.support
    elems, trans = {}, {}
    for H in sup:
        alg = T.levels[H]
        cand = [v for v in _box(alg, bound) if v not in I[H]]
        elems[H] = cand
        per = [translates(T, v, H, Om) for v in cand]
        tl = {}
        for L in T.support:
            lists = [[_reduce_mod(I[L], v) for v in t.get(L, [])] for t in per]
            if any(lists):
                tl[L] = _stack(lists, T.levels[L].rank)
        trans[H] = tl
    order = sorted(((H1, H2) for H1 in sup for H2 in sup if H1 >= H2), key=lambda p: (-p[0], -p[1]))
    for H1, H2 in order:
        xs, ys = elems[H1], elems[H2]
        if not xs or not ys:
            continue
        ok = _q_matrix(T, I, trans[H1], trans[H2], len(xs), len(ys))
        if H1 == H2:
            ok = np.triu(ok)
        for a, b in np.argwhere(ok):
            x, y = xs[a], ys[b]
            if not q_condition(T, I, x, H1, y, H2, Om):
                continue
            text = f"({T.levels[H1].fmt(x)} @ {H1}, {T.levels[H2].fmt(y)} @ {H2})"
            return Witness(x, H1, y, H2, text)
    return None


# ----------------------------------------------------------------- levelwise searches

def is_g_prime_witness(alg: FiniteRankAlgebra, action: Matrix, ideal: Submodule,
                       x: Sequence[int], y: Sequence[int], order: int | None = None) -> bool:
    """True when x * (g^k y) lies in the ideal for every power of the generator."""
    v = tuple(y)
    seen = []
    while v not in seen:
        seen.append(v)
        if alg.mul(tuple(x), v) not in ideal:
            return False
        v = alg.reduce(vec_mat(v, action))
        if order is not None and len(seen) >= order:
            break
    return True


def g_prime_search(alg: FiniteRankAlgebra, action: Matrix, ideal: Submodule, bound: int = 3) -> tuple[Vec, Vec] | None:
    cand = [v for v in _box(alg, bound) if v not in ideal]
    for i, x in enumerate(cand):
        for y in cand[i:]:
            if is_g_prime_witness(alg, action, ideal, x, y):
                return (x, y)
    return None


@dataclass(frozen=True)
class RadicalWitness:
    level: int
    x: Vec
    power: int
    text: str


def radical_audit(I: TambaraIdeal, bound: int = 3) -> RadicalWitness | None:
    T = I.diagram
    for d in T.support:
        S = I[d]
        if S.is_unit_ideal():
            continue
        alg = T.levels[d]
        for x in _box(alg, bound):
            if x in S:
                continue
            x2 = alg.mul(x, x)
            for k, v in ((2, x2), (3, alg.mul(x2, x))):
                if v in S:
                    return RadicalWitness(d, x, k, f"{alg.fmt(x)}^{k} in {S.fmt()} at level {d}")
    return None
