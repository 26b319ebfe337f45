"""Simple graphs, the zero-divisor graph variants, and the two reductions."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .poset import FinitePoset, PosetError, relation_isomorphic, support_masks, \
    zero_divisors
from .quotient import QuotientPoset, classes_adjacent, graph_vertex_classes


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class SimpleGraph:
    labels: tuple[str, ...]
    edges: frozenset[tuple[int, int]]  # pairs normalized to i < j
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def neighbor_masks(self) -> list[int]:
        masks = self._cache.get("masks")
        if masks is None:
            masks = [0] * self.n
            for u, v in self.edges:
                masks[u] |= 1 << v
                masks[v] |= 1 << u
            self._cache["masks"] = masks
        return masks

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.neighbor_masks()[v])

    def degree(self, v: int) -> int:
        return bin(self.neighbor_masks()[v]).count("1")

    def max_degree(self) -> int:
        if self.n == 0:
            return 0
        return max(self.degree(v) for v in range(self.n))

    def adjacency(self) -> np.ndarray:
        adj = np.zeros((self.n, self.n), dtype=bool)
        for u, v in self.edges:
            adj[u, v] = adj[v, u] = True
        return adj

    def __eq__(self, other):
        if not isinstance(other, SimpleGraph):
            return NotImplemented
        return self.labels == other.labels and self.edges == other.edges

    def __hash__(self):
        return hash((self.labels, self.edges))


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


def make_graph(labels, edges, name="") -> SimpleGraph:
    labels = tuple(str(x) for x in labels)
    if len(set(labels)) != len(labels):
        raise GraphError("duplicate vertex labels")
    n = len(labels)
    norm = set()
    for u, v in edges:
        u, v = int(u), int(v)
        if u == v:
            raise GraphError("loops not allowed")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError("edge endpoint out of range")
        norm.add((min(u, v), max(u, v)))
    return SimpleGraph(labels=labels, edges=frozenset(norm), name=name)


# ---------------------------------------------------------------------------
# zero-divisor graphs

def zdg(p: FinitePoset) -> SimpleGraph:
    """G(P): vertices Z(P) minus 0, edges where lower cones meet only at 0."""
    verts = sorted(zero_divisors(p) - {p.zero})
    return _zdg_on(p, verts, name=f"G({p.name})" if p.name else "")


def zdg_star(p: FinitePoset) -> SimpleGraph:
    """G*(P): same adjacency on all of P minus {0, 1} (minus {0} without a top)."""
    verts = [x for x in range(p.n) if x != p.zero and x != p.one]
    return _zdg_on(p, verts, name=f"G*({p.name})" if p.name else "")


def _zdg_on(p: FinitePoset, verts: list[int], name="") -> SimpleGraph:
    supp = support_masks(p)
    labels = [p.labels[x] for x in verts]
    edges = []
    for i in range(len(verts)):
        si = supp[verts[i]]
        for j in range(i + 1, len(verts)):
            if si & supp[verts[j]] == 0:
                edges.append((i, j))
    return make_graph(labels, edges, name=name)


def complement(g: SimpleGraph) -> SimpleGraph:
    edges = [(i, j) for i in range(g.n) for j in range(i + 1, g.n)
             if (i, j) not in g.edges]
    return make_graph(g.labels, edges, name=f"{g.name}^c" if g.name else "")


def quotient_graph(q: QuotientPoset) -> SimpleGraph:
    """G([P]): one vertex per nonzero non-dense class, support-disjoint edges."""
    classes = graph_vertex_classes(q)
    labels = [q.label(c) for c in classes]
    edges = [(i, j) for i in range(len(classes))
             for j in range(i + 1, len(classes))
             if classes_adjacent(q, classes[i], classes[j])]
    return make_graph(labels, edges, name="G([P])")


# ---------------------------------------------------------------------------
# reductions

def _grouped(g: SimpleGraph, keys: list) -> list[tuple[int, ...]]:
    groups: dict = {}
    for v in range(g.n):
        groups.setdefault(keys[v], []).append(v)
    classes = [tuple(members) for members in groups.values()]
    classes.sort(key=lambda c: c[0])
    return classes


def _reduced_graph(g: SimpleGraph, classes: list[tuple[int, ...]],
                   name: str) -> SimpleGraph:
    labels = []
    for members in classes:
        if len(members) == 1:
            labels.append(g.labels[members[0]])
        else:
            labels.append("+".join(g.labels[v] for v in members))
    edges = []
    for i in range(len(classes)):
        for j in range(i + 1, len(classes)):
            if g.has_edge(classes[i][0], classes[j][0]):
                edges.append((i, j))
    return make_graph(labels, edges, name=name)


def reduce_simeq(g: SimpleGraph) -> SimpleGraph:
    """Merge adjacent vertices with equal punctured neighborhoods.

    u and v qualify exactly when their closed neighborhoods coincide, so the
    classes are the closed-neighborhood fibers.
    """
    masks = g.neighbor_masks()
    keys = [masks[v] | (1 << v) for v in range(g.n)]
    return _reduced_graph(g, _grouped(g, keys), name="G_red")


def reduce_theta(g: SimpleGraph) -> SimpleGraph:
    """Merge vertices with equal open neighborhoods (such pairs are non-adjacent)."""
    masks = g.neighbor_masks()
    return _reduced_graph(g, _grouped(g, list(masks)), name="[G]")


# ---------------------------------------------------------------------------
# combinators and stock graphs

def disjoint_union(g: SimpleGraph, h: SimpleGraph) -> SimpleGraph:
    labels = list(g.labels)
    taken = set(labels)
    for lab in h.labels:
        new = lab
        while new in taken:
            new += "'"
        labels.append(new)
        taken.add(new)
    edges = list(g.edges) + [(u + g.n, v + g.n) for u, v in h.edges]
    return make_graph(labels, edges, name=f"{g.name}+{h.name}" if g.name and h.name else "")


def join(g: SimpleGraph, h: SimpleGraph) -> SimpleGraph:
    base = disjoint_union(g, h)
    edges = set(base.edges)
    for u in range(g.n):
        for v in range(h.n):
            edges.add((u, g.n + v))
    return make_graph(base.labels, edges, name=f"{g.name}v{h.name}" if g.name and h.name else "")


def empty_graph(n: int, prefix="v") -> SimpleGraph:
    return make_graph([f"{prefix}{i}" for i in range(n)], [], name=f"I{n}")


def complete_graph(n: int, prefix="v") -> SimpleGraph:
    return make_graph([f"{prefix}{i}" for i in range(n)],
                      [(i, j) for i in range(n) for j in range(i + 1, n)],
                      name=f"K{n}")


def complete_bipartite(m: int, n: int) -> SimpleGraph:
    labels = [f"a{i}" for i in range(m)] + [f"b{j}" for j in range(n)]
    edges = [(i, m + j) for i in range(m) for j in range(n)]
    return make_graph(labels, edges, name=f"K{m},{n}")


def cycle_graph(n: int) -> SimpleGraph:
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    return make_graph([f"v{i}" for i in range(n)],
                      [(i, (i + 1) % n) for i in range(n)], name=f"C{n}")


def induced_subgraph(g: SimpleGraph, vertices) -> SimpleGraph:
    verts = list(vertices)
    pos = {v: i for i, v in enumerate(verts)}
    edges = [(pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos]
    return make_graph([g.labels[v] for v in verts], edges)


# ---------------------------------------------------------------------------
# serialization

def to_dot(g: SimpleGraph) -> str:
    if g.n == 0:
        return "graph G { }\n"
    lines = ["graph G {"]
    for lab in g.labels:
        lines.append(f'  "{lab}";')
    rendered = sorted(tuple(sorted((g.labels[u], g.labels[v]))) for u, v in g.edges)
    for a, b in rendered:
        lines.append(f'  "{a}" -- "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json(g: SimpleGraph) -> str:
    return json.dumps({"name": g.name, "elements": list(g.labels),
                       "edges": sorted([list(e) for e in g.edges])})


def graph_from_dict(data: dict) -> SimpleGraph:
    if not isinstance(data, dict) or "elements" not in data or "edges" not in data:
        raise GraphError("graph JSON needs 'elements' and 'edges'")
    return make_graph(data["elements"], data["edges"],
                      name=str(data.get("name", "")))


def graph_from_json(text: str) -> SimpleGraph:
    return graph_from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# isomorphism

def is_isomorphic(g: SimpleGraph, h: SimpleGraph) -> bool:
    if g.n != h.n or g.m != h.m:
        return False
    return relation_isomorphic(g.adjacency(), h.adjacency())


def _wl_colors(g: SimpleGraph) -> list[int]:
    masks = g.neighbor_masks()
    colors = [g.degree(v) for v in range(g.n)]
    for _ in range(g.n):
        sig = [(colors[v], tuple(sorted(colors[u] for u in _bits(masks[v]))))
               for v in range(g.n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if new == colors:
            break
        colors = new
    return colors


def canonical_form(g: SimpleGraph, max_branch: int = 2_000_000) -> frozenset[tuple[int, int]]:
    """Canonical edge set under vertex relabeling; graphs up to 16 vertices.

    Refines by neighborhood colors, then takes the minimum adjacency encoding
    over all orderings compatible with the refinement.
    """
    if g.n > 16:
        raise GraphError("canonical form restricted to graphs with at most 16 vertices")
    colors = _wl_colors(g)
    cells: dict[int, list[int]] = {}
    for v in range(g.n):
        cells.setdefault(colors[v], []).append(v)
    cell_list = [cells[c] for c in sorted(cells)]
    branch = 1
    for cell in cell_list:
        branch *= math.factorial(len(cell))
        if branch > max_branch:
            raise GraphError("canonical form search too large for this graph")
    import itertools as it
    best = None
    masks = g.neighbor_masks()
    for perm_parts in it.product(*[it.permutations(cell) for cell in cell_list]):
        order = [v for part in perm_parts for v in part]
        pos = {v: i for i, v in enumerate(order)}
        code = 0
        for u, v in g.edges:
            i, j = pos[u], pos[v]
            if i > j:
                i, j = j, i
            code |= 1 << (i * g.n + j)
        if best is None or code < best:
            best = code
    edges = frozenset((i, j) for i in range(g.n) for j in range(i + 1, g.n)
                      if best >> (i * g.n + j) & 1)
    return edges
