"""Graph recognition and exact coloring.

Chordality runs lexicographic BFS plus a perfect-elimination check and
returns either an elimination ordering or a chordless-cycle witness.
Perfectness searches for induced odd holes in the graph and its complement.
The chromatic, edge-chromatic and total-chromatic numbers are computed by one
exhaustive backtracking kernel applied to the graph, its line graph and its
total graph respectively, bracketed by clique and counting bounds.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from ._backend import solve_coloring
from .graphs import SimpleGraph, _bits, complement
from .poset import FinitePoset
from .quotient import quotient

EXACT_VERTEX_CAP = 14
EXACT_EDGE_CAP = 40


# ---------------------------------------------------------------------------
# chordality

@dataclass(frozen=True)
class ChordalityResult:
    chordal: bool
    elimination_order: tuple[int, ...] | None = None
    witness_cycle: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.chordal


def lex_bfs(g: SimpleGraph) -> list[int]:
    """Lexicographic BFS order; ties broken by lowest vertex index."""
    masks = g.neighbor_masks()
    sequence = []
    partition: list[list[int]] = [list(range(g.n))] if g.n else []
    while partition:
        cell = partition[0]
        v = cell.pop(0)
        if not cell:
            partition.pop(0)
        sequence.append(v)
        nv = masks[v]
        refined = []
        for cell in partition:
            inn = [x for x in cell if nv >> x & 1]
            out = [x for x in cell if not nv >> x & 1]
            if inn:
                refined.append(inn)
            if out:
                refined.append(out)
        partition = refined
    return sequence


def is_chordal(g: SimpleGraph) -> ChordalityResult:
    """Lex-BFS recognition with an elimination ordering or a hole witness."""
    order = lex_bfs(g)
    peo = order[::-1]
    pos = {v: i for i, v in enumerate(peo)}
    masks = g.neighbor_masks()
    for v in peo:
        later = [w for w in _bits(masks[v]) if pos[w] > pos[v]]
        if not later:
            continue
        parent = min(later, key=pos.__getitem__)
        for w in later:
            if w != parent and not g.has_edge(w, parent):
                cycle = find_chordless_cycle(g)
                assert cycle is not None
                return ChordalityResult(False, witness_cycle=tuple(cycle))
    return ChordalityResult(True, elimination_order=tuple(peo))


def find_chordless_cycle(g: SimpleGraph) -> list[int] | None:
    """Some induced cycle of length >= 4, or None."""
    masks = g.neighbor_masks()
    for v in range(g.n):
        nv = _bits(masks[v])
        for i in range(len(nv)):
            for j in range(i + 1, len(nv)):
                u, w = nv[i], nv[j]
                if g.has_edge(u, w):
                    continue
                blocked = (masks[v] | 1 << v) & ~(1 << u) & ~(1 << w)
                path = _shortest_path_avoiding(g, u, w, blocked)
                if path is not None:
                    return [v] + path
    return None


def _shortest_path_avoiding(g: SimpleGraph, src: int, dst: int,
                            blocked: int) -> list[int] | None:
    masks = g.neighbor_masks()
    prev = {src: -1}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        if x == dst:
            path = []
            while x != -1:
                path.append(x)
                x = prev[x]
            return path[::-1]
        for y in _bits(masks[x] & ~blocked):
            if y not in prev:
                prev[y] = x
                queue.append(y)
    return None


# ---------------------------------------------------------------------------
# odd holes and perfectness

def find_induced_odd_hole(g: SimpleGraph) -> tuple[int, ...] | None:
    """Smallest induced odd cycle of length >= 5, or None.

    Enumerates induced paths anchored at their minimum vertex, tracking the
    interior forbidden set; extension beyond the current best length is
    pruned, so the first complete sweep yields a minimum-length hole.
    """
    n = g.n
    masks = g.neighbor_masks()
    best: tuple[int, ...] | None = None
    best_len = n + 1 if n % 2 else n + 2  # odd upper bound beyond any cycle

    for v0 in range(n):
        gt = ~((1 << (v0 + 1)) - 1)
        for v1 in _bits(masks[v0] & gt):
            # path stack entries: (path, used mask, inner-forbidden mask)
            stack = [([v0, v1], (1 << v0) | (1 << v1), 0)]
            while stack:
                path, used, forb_inner = stack.pop()
                last = path[-1]
                cyc_len = len(path) + 1
                if cyc_len >= best_len:
                    continue
                cands = masks[last] & ~used & ~forb_inner & gt
                closing = cands & masks[v0]
                extending = cands & ~masks[v0]
                if cyc_len >= 5 and cyc_len % 2 == 1:
                    for u in _bits(closing):
                        if u > path[1]:
                            cycle = tuple(path) + (u,)
                            if cyc_len < best_len:
                                best, best_len = cycle, cyc_len
                            break
                if cyc_len + 1 < best_len:
                    new_forb = forb_inner | masks[last]
                    for u in _bits(extending):
                        stack.append((path + [u], used | (1 << u), new_forb))
    return best


def is_perfect(g: SimpleGraph) -> bool:
    """Strong-perfect-graph criterion: no odd hole in G or its complement."""
    if find_induced_odd_hole(g) is not None:
        return False
    return find_induced_odd_hole(complement(g)) is None


# ---------------------------------------------------------------------------
# cliques and exact coloring

def max_clique(g: SimpleGraph) -> tuple[int, ...]:
    masks = g.neighbor_masks()
    return tuple(_max_clique_masks(masks))


def _max_clique_masks(masks: list[int]) -> list[int]:
    n = len(masks)
    if n == 0:
        return []
    best: list[int] = []

    def expand(r: list[int], p: int):
        nonlocal best
        if p == 0:
            if len(r) > len(best):
                best = r.copy()
            return
        order: list[int] = []
        bounds: list[int] = []
        rest = p
        color = 0
        while rest:
            color += 1
            avail = rest
            while avail:
                v = (avail & -avail).bit_length() - 1
                avail &= ~masks[v] & ~(1 << v)
                rest &= ~(1 << v)
                order.append(v)
                bounds.append(color)
        for i in range(len(order) - 1, -1, -1):
            if len(r) + bounds[i] <= len(best):
                return
            v = order[i]
            r.append(v)
            expand(r, p & masks[v])
            r.pop()
            p &= ~(1 << v)

    expand([], (1 << n) - 1)
    return best


def clique_number(g: SimpleGraph) -> int:
    return len(max_clique(g))


def independence_number(g: SimpleGraph) -> int:
    masks = g.neighbor_masks()
    full = (1 << g.n) - 1
    co = [full & ~masks[v] & ~(1 << v) for v in range(g.n)]
    return len(_max_clique_masks(co))


def _greedy_count(masks: list[int], order: list[int]) -> int:
    colors: dict[int, int] = {}
    highest = -1
    for v in order:
        used = {colors[u] for u in _bits(masks[v]) if u in colors}
        c = 0
        while c in used:
            c += 1
        colors[v] = c
        highest = max(highest, c)
    return highest + 1


def _search_order(masks: list[int], clique: list[int]) -> list[int]:
    """Clique first, then repeatedly the vertex most attached to the prefix."""
    n = len(masks)
    order = list(clique)
    placed = 0
    for v in order:
        placed |= 1 << v
    remaining = [v for v in range(n) if not placed >> v & 1]
    while remaining:
        v = max(remaining,
                key=lambda x: (bin(masks[x] & placed).count("1"),
                               bin(masks[x]).count("1"), -x))
        order.append(v)
        placed |= 1 << v
        remaining.remove(v)
    return order


def _exact_min_colors(masks: list[int], lower_floor: int = 0,
                      alpha_cap: int = 120):
    """Minimum proper coloring of a conflict graph given as bitset rows.

    Returns (k, colors list). Lower bounds: clique, counting (ceil n/alpha),
    and the caller-provided floor.
    """
    n = len(masks)
    if n == 0:
        return 0, []
    clique = _max_clique_masks(masks)
    lb = max(len(clique), lower_floor)
    if n <= alpha_cap:
        full = (1 << n) - 1
        co = [full & ~masks[v] & ~(1 << v) for v in range(n)]
        alpha = len(_max_clique_masks(co))
        lb = max(lb, math.ceil(n / alpha))
    order = _search_order(masks, clique)
    ub = _greedy_count(masks, order)
    if ub < lb:  # greedy can only overshoot; guard anyway
        ub = lb
    fixed = np.full(n, -1, dtype=np.int64)
    for i, v in enumerate(clique):
        fixed[v] = i
    flat, off = _to_csr(masks)
    for k in range(lb, ub + 1):
        status, colors = solve_coloring(flat, off, k, fixed, 0)
        if status == 1:
            return k, [int(c) for c in colors]
    raise AssertionError("greedy upper bound was not feasible")


def _to_csr(masks: list[int]):
    flat: list[int] = []
    off = [0]
    for m in masks:
        flat.extend(_bits(m))
        off.append(len(flat))
    return (np.asarray(flat, dtype=np.int64),
            np.asarray(off, dtype=np.int64))


def find_coloring_with_k(masks: list[int], k: int,
                         max_nodes: int = 0) -> list[int] | None:
    """Search for a proper k-coloring; None if proven impossible.

    Raises SearchBudgetExceeded when a positive node budget runs out.
    """
    n = len(masks)
    if n == 0:
        return []
    clique = _max_clique_masks(masks)
    if len(clique) > k:
        return None
    fixed = np.full(n, -1, dtype=np.int64)
    for i, v in enumerate(clique):
        fixed[v] = i
    flat, off = _to_csr(masks)
    status, colors = solve_coloring(flat, off, k, fixed, max_nodes)
    if status == 1:
        return [int(c) for c in colors]
    if status == 0:
        return None
    raise SearchBudgetExceeded(f"no {k}-coloring found within node budget")


class SearchBudgetExceeded(RuntimeError):
    pass


def chromatic_number(g: SimpleGraph):
    """Exact vertex chromatic number with an optimal assignment."""
    k, colors = _exact_min_colors(g.neighbor_masks())
    assignment = ColoringAssignment(
        kind="vertex",
        vertex_colors={v: colors[v] for v in range(g.n)},
        edge_colors={}, color_count=k)
    return k, assignment


def _line_graph_masks(g: SimpleGraph):
    edges = sorted(g.edges)
    idx = {e: i for i, e in enumerate(edges)}
    masks = [0] * len(edges)
    for i, (u, v) in enumerate(edges):
        for j, (x, y) in enumerate(edges):
            if i != j and len({u, v} & {x, y}) > 0:
                masks[i] |= 1 << j
    return edges, masks


def edge_chromatic_number(g: SimpleGraph):
    """Exact edge chromatic number with an optimal assignment."""
    if g.m == 0:
        return 0, ColoringAssignment("edge", {}, {}, 0)
    edges, masks = _line_graph_masks(g)
    k, colors = _exact_min_colors(masks, lower_floor=g.max_degree())
    assignment = ColoringAssignment(
        kind="edge", vertex_colors={},
        edge_colors={edges[i]: colors[i] for i in range(len(edges))},
        color_count=k)
    return k, assignment


def _total_graph_masks(g: SimpleGraph):
    """Conflict graph on vertices plus edges of g."""
    edges = sorted(g.edges)
    n, m = g.n, len(edges)
    masks = [0] * (n + m)
    for u, v in edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    for i, (u, v) in enumerate(edges):
        ei = n + i
        masks[ei] |= (1 << u) | (1 << v)
        masks[u] |= 1 << ei
        masks[v] |= 1 << ei
        for j in range(i + 1, m):
            x, y = edges[j]
            if len({u, v} & {x, y}) > 0:
                masks[ei] |= 1 << (n + j)
                masks[n + j] |= 1 << ei
    return edges, masks


@dataclass(frozen=True)
class TotalColoringResult:
    exact: bool
    value: int | None
    lower: int
    upper: int
    conjectured_upper: int
    assignment: "ColoringAssignment"
    refused: bool = False

    def __int__(self) -> int:
        if self.value is None:
            raise ValueError("total chromatic number not computed exactly")
        return self.value


def total_chromatic_number(g: SimpleGraph, max_vertices: int = EXACT_VERTEX_CAP,
                           max_edges: int = EXACT_EDGE_CAP) -> TotalColoringResult:
    """Exact total chromatic number below the size cap, interval above it.

    Above the cap the result is a refusal: the assignment is the greedy
    fallback (valid but flagged non-optimal) and the bounds carry the
    conjectured delta+2 ceiling.
    """
    delta = g.max_degree()
    if g.n == 0:
        empty = ColoringAssignment("total", {}, {}, 0)
        return TotalColoringResult(True, 0, 0, 0, 0, empty)
    if g.n > max_vertices or g.m > max_edges:
        greedy = greedy_total_coloring(g)
        return TotalColoringResult(
            exact=False, value=None, lower=delta + 1,
            upper=greedy.color_count, conjectured_upper=delta + 2,
            assignment=greedy, refused=True)
    edges, masks = _total_graph_masks(g)
    k, colors = _exact_min_colors(masks, lower_floor=delta + 1)
    assignment = ColoringAssignment(
        kind="total",
        vertex_colors={v: colors[v] for v in range(g.n)},
        edge_colors={edges[i]: colors[g.n + i] for i in range(len(edges))},
        color_count=k)
    return TotalColoringResult(True, k, k, k, max(k, delta + 2), assignment)


def find_total_coloring(g: SimpleGraph, k: int,
                        max_nodes: int = 0) -> "ColoringAssignment | None":
    """A valid total coloring with at most k colors, or None if impossible."""
    edges, masks = _total_graph_masks(g)
    colors = find_coloring_with_k(masks, k, max_nodes)
    if colors is None:
        return None
    used = len(set(colors))
    return ColoringAssignment(
        kind="total",
        vertex_colors={v: colors[v] for v in range(g.n)},
        edge_colors={edges[i]: colors[g.n + i] for i in range(len(edges))},
        color_count=max(used, max(colors) + 1 if colors else 0))


def verify_tcc(g: SimpleGraph, max_vertices: int = EXACT_VERTEX_CAP,
               max_edges: int = EXACT_EDGE_CAP) -> bool:
    """Exact check that the total chromatic number is delta+1 or delta+2."""
    if g.n == 0:
        return True
    res = total_chromatic_number(g, max_vertices, max_edges)
    if not res.exact:
        raise SearchBudgetExceeded("instance above exact-search cap")
    return res.value in (g.max_degree() + 1, g.max_degree() + 2)


# ---------------------------------------------------------------------------
# assignments and the independent checker

@dataclass(frozen=True)
class ColoringAssignment:
    kind: str  # vertex | edge | total
    vertex_colors: dict
    edge_colors: dict
    color_count: int


def validate_coloring(g: SimpleGraph, a: ColoringAssignment) -> tuple[bool, str]:
    """Definition-level validity check, independent of every solver."""
    if a.kind not in ("vertex", "edge", "total"):
        return False, f"unknown kind {a.kind}"
    check_vertices = a.kind in ("vertex", "total")
    check_edges = a.kind in ("edge", "total")
    if check_vertices:
        for v in range(g.n):
            if v not in a.vertex_colors:
                return False, f"vertex {v} uncolored"
            if not 0 <= a.vertex_colors[v] < a.color_count:
                return False, f"vertex {v} color out of range"
        for u, v in g.edges:
            if a.vertex_colors[u] == a.vertex_colors[v]:
                return False, f"adjacent vertices {u},{v} share a color"
    if check_edges:
        for e in g.edges:
            if e not in a.edge_colors:
                return False, f"edge {e} uncolored"
            if not 0 <= a.edge_colors[e] < a.color_count:
                return False, f"edge {e} color out of range"
        es = sorted(g.edges)
        for i in range(len(es)):
            for j in range(i + 1, len(es)):
                if set(es[i]) & set(es[j]) and \
                        a.edge_colors[es[i]] == a.edge_colors[es[j]]:
                    return False, f"incident edges {es[i]},{es[j]} share a color"
    if a.kind == "total":
        for (u, v), c in a.edge_colors.items():
            if a.vertex_colors[u] == c or a.vertex_colors[v] == c:
                return False, f"edge {(u, v)} shares a color with an endpoint"
    return True, "ok"


def greedy_total_coloring(g: SimpleGraph) -> ColoringAssignment:
    """First-fit total coloring over vertices then edges; valid, not optimal."""
    vcol: dict[int, int] = {}
    ecol: dict[tuple[int, int], int] = {}
    masks = g.neighbor_masks()
    for v in range(g.n):
        used = {vcol[u] for u in _bits(masks[v]) if u in vcol}
        c = 0
        while c in used:
            c += 1
        vcol[v] = c
    incident: dict[int, set] = {v: set() for v in range(g.n)}
    for e in sorted(g.edges):
        u, v = e
        used = {vcol[u], vcol[v]}
        used |= {ecol[f] for f in incident[u] | incident[v]}
        c = 0
        while c in used:
            c += 1
        ecol[e] = c
        incident[u].add(e)
        incident[v].add(e)
    count = max([c + 1 for c in list(vcol.values()) + list(ecol.values())],
                default=0)
    return ColoringAssignment("total", vcol, ecol, count)


# ---------------------------------------------------------------------------
# bound checks mirroring the independent-set and density arguments

def independent_set_bound_check(g: SimpleGraph) -> bool:
    """True iff some independent set reaches |V| - max degree - 1."""
    if g.n == 0:
        return True
    return independence_number(g) >= g.n - g.max_degree() - 1


def density_bound_check(g: SimpleGraph) -> bool:
    """True iff the max degree reaches three quarters of the order."""
    return 4 * g.max_degree() >= 3 * g.n


# ---------------------------------------------------------------------------
# theorem-form classifiers (valid when the quotient is a Boolean lattice)

def theorem_zdg_chordal(atom_class_sizes) -> bool:
    sizes = sorted(atom_class_sizes)
    n = len(sizes)
    if n <= 1:
        return True
    if n == 2:
        return sizes[0] == 1
    if n == 3:
        return sizes == [1, 1, 1]
    return False


def theorem_complement_chordal(n_atoms: int) -> bool:
    return n_atoms <= 3


def theorem_zdg_perfect(n_atoms: int) -> bool:
    return n_atoms <= 4


def classify_type(p: FinitePoset) -> str:
    """Total-coloring type of G(P) for products of posets with Z = {0}.

    Type II happens exactly for a product of two equal-sized factors; the
    factor sizes are recovered from the atom-class sizes of the quotient.
    """
    q = quotient(p)
    sizes = [len(q.classes[q.atom_class(i)]) for i in range(q.n_atoms)]
    if len(sizes) == 2 and sizes[0] == sizes[1]:
        return "II"
    return "I"


# ---------------------------------------------------------------------------
# classification reports

CSV_HEADER = ("instance,key,atoms,chordal,perfect,clique,chi,chiPrime,"
              "chiDoublePrime,delta,class,type")


@dataclass
class ClassificationReport:
    instance: str
    key: str
    atom_count: int | None
    is_chordal: bool
    is_perfect: bool
    clique: int
    chi: int
    chi_prime: int
    chi_double_prime: int | None
    chi_double_prime_bounds: tuple[int, int] | None
    max_degree: int
    edge_class: str  # one | two
    total_type: str | None  # I | II
    agreement_flags: dict = field(default_factory=dict)

    def csv_row(self) -> str:
        if self.chi_double_prime is not None:
            cdp = str(self.chi_double_prime)
        elif self.chi_double_prime_bounds is not None:
            lo, hi = self.chi_double_prime_bounds
            cdp = f"{lo}..{hi}"
        else:
            cdp = ""
        return ",".join([
            self.instance, self.key,
            "" if self.atom_count is None else str(self.atom_count),
            str(self.is_chordal).lower(), str(self.is_perfect).lower(),
            str(self.clique), str(self.chi), str(self.chi_prime), cdp,
            str(self.max_degree), self.edge_class, self.total_type or ""])


def analyze_graph(g: SimpleGraph, instance: str = "graph", key: str = "",
                  atom_count: int | None = None,
                  max_vertices: int = EXACT_VERTEX_CAP,
                  max_edges: int = EXACT_EDGE_CAP) -> ClassificationReport:
    chordal = is_chordal(g).chordal
    perfect = is_perfect(g)
    clique = clique_number(g)
    chi, _ = chromatic_number(g)
    chi_p, _ = edge_chromatic_number(g)
    delta = g.max_degree()
    total = total_chromatic_number(g, max_vertices, max_edges)
    if total.exact:
        cdp = total.value
        bounds = None
        ttype = "I" if cdp == delta + 1 else ("II" if cdp == delta + 2 else None)
    else:
        cdp = None
        bounds = (total.lower, total.conjectured_upper)
        ttype = None
    edge_class = "one" if chi_p == delta else "two"
    return ClassificationReport(
        instance=instance, key=key, atom_count=atom_count,
        is_chordal=chordal, is_perfect=perfect, clique=clique, chi=chi,
        chi_prime=chi_p, chi_double_prime=cdp, chi_double_prime_bounds=bounds,
        max_degree=delta, edge_class=edge_class, total_type=ttype)
