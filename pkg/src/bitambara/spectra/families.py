"""Prime families indexed by a residue characteristic q, and spectrum tables.

Spectra are computed pointwise: for each q in a finite set of strata the
pipeline produces concrete prime ideals tagged with a lineage key. This module
groups those points into families, names them, and records which families
coincide or contain each other.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Hashable, Mapping

from ..lattice import prime_factors
from ..tambara import LewisDiagram
from ..transfer import CompatiblePair, system_name
from ..zalg import ideal_from_generators
from .ideals import TambaraIdeal

Key = Hashable
Points = dict[int, dict[Key, TambaraIdeal]]


# ----------------------------------------------------------------- strata

@dataclass(frozen=True)
class Strata:
    """Residue characteristics at which families are evaluated.

    ``special`` are the primes dividing the group order; ``generic`` holds 0
    and a few primes coprime to it.
    """

    special: tuple[int, ...]
    generic: tuple[int, ...]

    @property
    def all(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.special) | set(self.generic)))

    @property
    def generic_nonzero(self) -> tuple[int, ...]:
        return tuple(q for q in self.generic if q)

    def label(self, q: int) -> str:
        if q == 0:
            return "0"
        return str(q) if q in self.special else "g"


def strata_for(n: int, count: int = 3) -> Strata:
    special = tuple(prime_factors(n))
    gen, c = [0], 2
    while len(gen) < count + 1:
        if n % c and all(c % d for d in range(2, int(c ** 0.5) + 1)):
            gen.append(c)
        c += 1
    return Strata(special, tuple(gen))


# ----------------------------------------------------------------- registry of known families

# Generators per level, top level first, in the symbols p and q.
_REGISTRY: dict[tuple[str, int], list[tuple[str, list[str]]]] = {
    ("constantZ", 1): [("A", ["<q>", "<q>"]), ("B", ["<q>", "1"])],
    ("constantZ", 2): [("A", ["<q>", "<q>", "<q>"]), ("B", ["<q>", "<q>", "1"]), ("C", ["<q>", "1", "1"])],
    ("burnside", 1): [
        ("A", ["<q,t>", "1"]),
        ("B1", ["<q,t-p>", "1"]),
        ("B2", ["<q,t-p>", "<q>"]),
        ("C", ["<q>", "<q>"]),
    ],
    ("burnside", 2): [
        ("A", ["<q,t,u>", "1", "1"]),
        ("B1", ["<q,t-p,u>", "1", "1"]),
        ("B2", ["<q,t-p,u>", "<q,t>", "1"]),
        ("C1", ["<q,t-p,u-p^2>", "1", "1"]),
        ("C2", ["<q,t-p,u-p^2>", "<q,t-p>", "1"]),
        ("C3", ["<q,t-p,u-p^2>", "<q,t-p>", "<q>"]),
        ("D", ["<q,t-p>", "<q>", "<q>"]),
        ("E", ["<q,u>", "<q,t>", "1"]),
        ("F", ["<q,u-p*t>", "<q,t-p>", "<q>"]),
        ("G", ["<q>", "<q>", "<q>"]),
    ],
}


def construction_kind(T: LewisDiagram) -> tuple[str, int] | None:
    """('constantZ' | 'burnside', exponent) for prime-power cyclic groups, else None."""
    F = T.full()
    ps = prime_factors(F.lattice.group_order)
    if len(ps) != 1:
        return None
    e, n = 0, F.lattice.group_order
    while n > 1:
        n //= ps[0]
        e += 1
    if all(a.rank == 1 for a in F.levels.values()):
        return ("constantZ", e)
    if all(a.label.startswith("A(C") for a in F.levels.values()) and len(F.levels) == e + 1:
        return ("burnside", e)
    return None


def registry(T: LewisDiagram) -> list[tuple[str, list[str]]]:
    kind = construction_kind(T)
    return list(_REGISTRY.get(kind, [])) if kind else []


def _split_gens(text: str) -> list[str]:
    text = text.strip()
    if text == "1":
        return ["1"]
    if text == "0":
        return []
    if not (text.startswith("<") and text.endswith(">")):
        raise ValueError(f"cannot read generators from {text!r}")
    return [g for g in (s.strip() for s in text[1:-1].split(",")) if g]


def evaluate_template(T: LewisDiagram, template: list[str], q: int, p: int | None = None) -> TambaraIdeal:
    """Concrete ideal from per-level generator strings (top level first)."""
    if p is None:
        p = T.primes[0] if T.primes else 0
    sup = T.support[::-1]
    if len(template) != len(sup):
        raise ValueError("template has the wrong number of levels")
    levels = {}
    for d, text in zip(sup, template):
        alg = T.levels[d]
        gens = [alg.parse(g, p=p, q=q) for g in _split_gens(text)]
        levels[d] = ideal_from_generators(alg, gens)
    return TambaraIdeal(T, levels)


# ----------------------------------------------------------------- families

# Shapes compare families only at the sampled strata; exact when generators are affine in q.
SHAPE_NOTE = "shape: stratified sampling at 0, special and three generic primes"


@dataclass
class PrimeFamily:
    name: str
    keys: list[Key]
    points: dict[int, TambaraIdeal]
    stratum: str                      # "all", "q!=p", "special" or "partial"
    provenance: str
    template: list[str] | None = None
    special_templates: dict[int, list[str]] = field(default_factory=dict)

    @property
    def qs(self) -> list[int]:
        return sorted(self.points)

    def at(self, q: int) -> TambaraIdeal | None:
        return self.points.get(q)

    def levels_text(self) -> list[str]:
        if self.template is not None:
            return list(self.template)
        q = self.qs[0]
        pt = self.points[q]
        return [pt[d].fmt() for d in pt.diagram.support[::-1]]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "levels": self.levels_text(),
            "stratum": self.stratum,
            "provenance": self.provenance,
            "special": {str(q): v for q, v in sorted(self.special_templates.items())},
            "points": {str(q): self.points[q].fmt() for q in self.qs},
        }


def _template_from_zero(I0: TambaraIdeal) -> list[str]:
    out = []
    T = I0.diagram
    for d in T.support[::-1]:
        S = I0[d]
        if S.is_unit_ideal():
            out.append("1")
            continue
        gens = [T.levels[d].fmt(g) for g in S.ideal_generators()]
        out.append("<" + ", ".join(["q"] + gens) + ">")
    return out


def _point_text(I: TambaraIdeal) -> list[str]:
    return [I[d].fmt() for d in I.diagram.support[::-1]]


def _hash_name(points: Mapping[int, TambaraIdeal]) -> str:
    blob = json.dumps({str(q): I.to_json() for q, I in sorted(points.items())}, sort_keys=True)
    return "X" + hashlib.sha1(blob.encode()).hexdigest()[:6]


@dataclass(frozen=True)
class Identification:
    q: int
    names: tuple[str, ...]

    def text(self, symbol: str) -> str:
        return " = ".join(f"{n}_{symbol}" for n in self.names)


@dataclass
class SpectrumTable:
    diagram: LewisDiagram
    pair: CompatiblePair
    strata: Strata
    families: list[PrimeFamily]
    identifications: list[Identification]
    points: Points
    provenance: dict[Key, str]
    notes: list[str] = field(default_factory=list)

    def names(self) -> list[str]:
        return [f.name for f in self.families]

    def family(self, name: str) -> PrimeFamily:
        for f in self.families:
            if f.name == name:
                return f
        raise KeyError(name)

    def symbol(self, q: int) -> str:
        return "p" if len(self.strata.special) == 1 and q in self.strata.special else str(q)

    def identification_texts(self) -> list[str]:
        return [i.text(self.symbol(i.q)) for i in self.identifications]

    def pair_text(self) -> str:
        return f"({system_name(self.pair.mult)},{system_name(self.pair.add)})"

    def all_points(self) -> list[tuple[str, int, TambaraIdeal]]:
        return [(f.name, q, f.points[q]) for f in self.families for q in f.qs]

    def inclusions(self) -> list[tuple[tuple[str, str], tuple[str, str]]]:
        from .shape import stratified_vertices, stratified_edges
        verts = stratified_vertices(self)
        return stratified_edges(self, verts)

    def to_json(self) -> dict:
        return {
            "construction": self.diagram.full().name,
            "group_order": self.diagram.lattice.group_order,
            "pair": {"mult": _edge_text(self.pair.mult), "add": _edge_text(self.pair.add),
                     "name": self.pair_text()},
            "strata": {"special": list(self.strata.special), "generic": list(self.strata.generic)},
            "families": [f.to_json() for f in self.families],
            "identifications": self.identification_texts(),
            "inclusions": [[f"{a}@{s}", f"{b}@{t}"] for (a, s), (b, t) in self.inclusions()],
            "provenance": sorted({f.provenance for f in self.families}) + list(self.notes) + [SHAPE_NOTE],
        }

    def to_text(self) -> str:
        lines = [f"{self.diagram.full().name} {self.pair_text()}: {len(self.families)} {'family' if len(self.families) == 1 else 'families'}"]
        for f in self.families:
            tag = "" if f.stratum == "all" else f"  [{f.stratum}]"
            lines.append(f"  {f.name:8s} [" + "; ".join(f.levels_text()) + "]" + tag)
            for q, txt in sorted(f.special_templates.items()) if f.stratum != "special" else ():
                lines.append(f"  {'':8s} at q={q}: [" + "; ".join(txt) + "]")
        for t in self.identification_texts():
            lines.append(f"  identify {t}")
        return "\n".join(lines)


def _edge_text(ts) -> str:
    """Edges as ``K<H`` joined by ``|``; the empty system is ``Otriv``."""
    return "|".join(f"{K}<{H}" for K, H in ts.edges) or "Otriv"


# ----------------------------------------------------------------- assembly

def _sort_key(k: Key) -> str:
    return repr(k)


def assemble(T: LewisDiagram, points: Points, provenance: Mapping[Key, str],
             strata: Strata, notes: list[str] | None = None) -> SpectrumTable:
    """Group per-q points into families, name them and find identifications."""
    keys = sorted({k for pts in points.values() for k in pts}, key=_sort_key)
    gen = strata.generic
    present = {k: {q for q in strata.all if k in points.get(q, {})} for k in keys}

    generic_keys = [k for k in keys if present[k] & set(gen)]
    special_keys = [k for k in keys if not present[k] & set(gen)]

    # merge lineages that agree at every generic stratum
    groups: list[list[Key]] = []
    for k in generic_keys:
        for g in groups:
            h = g[0]
            if present[h] & set(gen) == present[k] & set(gen) and all(
                    points[q][h] == points[q][k] for q in gen if q in present[k]):
                g.append(k)
                break
        else:
            groups.append([k])

    fams: list[PrimeFamily] = []
    for g in groups:
        pts: dict[int, TambaraIdeal] = {}
        for q in strata.all:
            for k in g:
                if k in points.get(q, {}):
                    pts.setdefault(q, points[q][k])
        qgen = present[g[0]] & set(gen)
        if qgen != set(gen):
            stratum = "partial"
        elif all(q in pts for q in strata.special):
            stratum = "all"
        else:
            stratum = "q!=p"
        prov = ", ".join(sorted({provenance.get(k, "computed") for k in g}))
        fams.append(PrimeFamily("", g, pts, stratum, prov))

    for k in special_keys:
        pts = {}
        for q in sorted(present[k]):
            I = points[q][k]
            if any(f.points.get(q) == I for f in fams if f.stratum != "special"):
                continue
            pts[q] = I
        if not pts:
            continue
        for f in fams:
            if f.stratum == "special" and f.points == pts:
                f.keys.append(k)
                break
        else:
            fams.append(PrimeFamily("", [k], pts, "special", provenance.get(k, "computed")))

    _attach_templates(fams, strata)
    _name(T, fams, strata)
    idents = _identifications(fams, strata)
    return SpectrumTable(T, T.pair, strata, fams, idents, points, dict(provenance), list(notes or []))


def _attach_templates(fams: list[PrimeFamily], strata: Strata) -> None:
    for f in fams:
        if f.stratum == "special" or 0 not in f.points:
            for q, I in f.points.items():
                f.special_templates[q] = _point_text(I)
            continue
        templ = _template_from_zero(f.points[0])
        T = f.points[0].diagram
        ok = all(evaluate_template(T, templ, q) == f.points[q]
                 for q in strata.generic_nonzero if q in f.points)
        if ok:
            f.template = templ
        for q in sorted(f.points):
            if q in strata.special and (not ok or evaluate_template(T, templ, q) != f.points[q]):
                f.special_templates[q] = _point_text(f.points[q])
            elif q not in strata.special and not ok:
                f.special_templates[q] = _point_text(f.points[q])


def _name(T: LewisDiagram, fams: list[PrimeFamily], strata: Strata) -> None:
    reg = registry(T)
    order = {name: i for i, (name, _) in enumerate(reg)}
    p = T.primes[0] if T.primes else 0
    cache: dict[tuple[str, int], TambaraIdeal] = {}

    def ev(name, templ, q):
        if (name, q) not in cache:
            cache[(name, q)] = evaluate_template(T, templ, q, p)
        return cache[(name, q)]

    used = set()
    for f in fams:
        if f.stratum == "special":
            continue
        for name, templ in reg:
            if all(ev(name, templ, q) == f.points[q] for q in strata.generic if q in f.points):
                f.name = name
                used.add(name)
                break
    for f in fams:
        if f.stratum != "special":
            continue
        q = min(f.points)
        cands = [name for name, templ in reg if ev(name, templ, q) == f.points[q]]
        fresh = [c for c in cands if c not in used] or cands
        if fresh:
            f.name = f"{fresh[0]}_{'p' if len(strata.special) == 1 else q}"
            used.add(fresh[0])
    taken = set()
    for f in fams:
        if not f.name:
            f.name = _hash_name(f.points)
        base, i = f.name, 2
        while f.name in taken:
            f.name = f"{base}.{i}"
            i += 1
        taken.add(f.name)
    fams.sort(key=lambda f: (order.get(f.name.split("_")[0], len(order)), f.stratum == "special", f.name))


def _identifications(fams: list[PrimeFamily], strata: Strata) -> list[Identification]:
    out = []
    for q in strata.special:
        groups: list[list[PrimeFamily]] = []
        for f in fams:
            if q not in f.points:
                continue
            for g in groups:
                if g[0].points[q] == f.points[q]:
                    g.append(f)
                    break
            else:
                groups.append([f])
        for g in groups:
            if len(g) > 1:
                out.append(Identification(q, tuple(f.name for f in g)))
    return out


__all__ = [
    "Strata",
    "strata_for",
    "PrimeFamily",
    "SpectrumTable",
    "Identification",
    "assemble",
    "evaluate_template",
    "registry",
    "construction_kind",
]
