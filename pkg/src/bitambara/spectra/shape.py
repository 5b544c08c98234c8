"""Finite stratified posets standing in for the topology of a spectrum.

Each family contributes one vertex per stratum it lives on: q = 0, a generic
q, or a special prime. Vertices holding equal ideals are merged. An edge P -> Q
records P ⊆ Q, i.e. Q lies in the closure of P.
"""

from __future__ import annotations

import networkx as nx

from .families import SpectrumTable

Vertex = tuple[str, str]


def _vertex_points(spec: SpectrumTable) -> dict[Vertex, list]:
    out: dict[Vertex, list] = {}
    for f in spec.families:
        for q in f.qs:
            lab = spec.strata.label(q)
            out.setdefault((f.name, lab), []).append((q, f.points[q]))
    return out


def stratified_vertices(spec: SpectrumTable) -> dict[Vertex, Vertex]:
    """Every (family, stratum) vertex mapped to its merged representative."""
    pts = _vertex_points(spec)
    canon: dict[Vertex, Vertex] = {}
    reps: list[Vertex] = []
    for v, lst in pts.items():
        for r in reps:
            if r[1] == v[1] and v[1] != "g" and pts[r][0][1] == lst[0][1]:
                canon[v] = r
                break
        else:
            canon[v] = v
            reps.append(v)
    return canon


def _contained(spec, pu, pv, both_generic: bool) -> bool:
    if both_generic:
        common = [(a, b) for qa, a in pu for qb, b in pv if qa == qb]
        return bool(common) and all(a <= b for a, b in common)
    return all(a <= b for _, a in pu for _, b in pv)


def stratified_edges(spec: SpectrumTable, canon: dict[Vertex, Vertex] | None = None) -> list[tuple[Vertex, Vertex]]:
    canon = canon or stratified_vertices(spec)
    pts = _vertex_points(spec)
    reps = sorted(set(canon.values()))
    edges = []
    for u in reps:
        for v in reps:
            if u != v and _contained(spec, pts[u], pts[v], u[1] == v[1] == "g"):
                edges.append((u, v))
    return edges


def _stratum_tag(spec: SpectrumTable, lab: str) -> str:
    if lab in ("0", "g"):
        return lab
    return f"s{spec.strata.special.index(int(lab))}"


def shape_graph(spec: SpectrumTable) -> nx.DiGraph:
    canon = stratified_vertices(spec)
    g = nx.DiGraph()
    for v in sorted(set(canon.values())):
        g.add_node(v, stratum=_stratum_tag(spec, v[1]))
    g.add_edges_from(stratified_edges(spec, canon))
    return g


def homeomorphic(a: SpectrumTable | nx.DiGraph, b: SpectrumTable | nx.DiGraph) -> bool:
    """Stratum-preserving isomorphism of the shape graphs."""
    ga = a if isinstance(a, nx.DiGraph) else shape_graph(a)
    gb = b if isinstance(b, nx.DiGraph) else shape_graph(b)
    if ga.number_of_nodes() > 30 or gb.number_of_nodes() > 30:
        raise ValueError("shape graphs above 30 vertices are not compared")
    return nx.is_isomorphic(ga, gb, node_match=lambda x, y: x["stratum"] == y["stratum"])


def homeomorphism_classes(specs: list[SpectrumTable]) -> list[list[int]]:
    graphs = [shape_graph(s) for s in specs]
    classes: list[list[int]] = []
    for i, g in enumerate(graphs):
        for c in classes:
            if homeomorphic(graphs[c[0]], g):
                c.append(i)
                break
        else:
            classes.append([i])
    return classes


def _label(spec: SpectrumTable, v: Vertex) -> str:
    name, lab = v
    sym = {"0": "0", "g": "q"}.get(lab) or spec.symbol(int(lab))
    if name.endswith("_p") or (lab not in ("0", "g") and name.endswith(f"_{lab}")):
        return name
    return f"{name}_{sym}"


def to_dot(spec: SpectrumTable) -> str:
    """Hasse diagram with arrows pointing from a prime up to the primes containing it."""
    g = shape_graph(spec)
    h = nx.transitive_reduction(g)
    ids = {v: f"n{i}" for i, v in enumerate(sorted(g.nodes))}
    lines = [f'digraph "{spec.diagram.full().name} {spec.pair_text()}" {{', "  rankdir=BT;"]
    for v in sorted(g.nodes):
        lines.append(f'  {ids[v]} [label="{_label(spec, v)}", stratum="{g.nodes[v]["stratum"]}"];')
    for u, v in sorted(h.edges):
        lines.append(f"  {ids[u]} -> {ids[v]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = ["shape_graph", "homeomorphic", "homeomorphism_classes", "to_dot",
           "stratified_vertices", "stratified_edges"]
