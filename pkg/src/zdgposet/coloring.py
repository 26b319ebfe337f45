"""Constructive total colorings of complements of zero-divisor graphs.

For a 0-distributive poset with two atoms the complement splits into two
cliques, each totally colored by the cyclic complete-graph scheme. For three
atoms, when every atom class holds at least a quarter of the vertices, the
complement is colored explicitly: a complete-graph pattern on the three
pseudocomplement classes plus the largest atom class, replicated onto the
two smaller atom classes, with two bipartite blocks finished by round-robin
palettes. Every emitted assignment is re-verified by the independent checker
before being returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .analysis import ColoringAssignment, validate_coloring
from .graphs import SimpleGraph, complement, zdg
from .poset import FinitePoset, is_zero_distributive
from .quotient import quotient


class CaseHypothesisError(ValueError):
    """Structured refusal: a precondition of the construction failed."""

    def __init__(self, failed: str):
        super().__init__(failed)
        self.failed = failed


class ConstructionInvalid(AssertionError):
    """The checker rejected a constructed assignment (should not happen)."""


@dataclass(frozen=True)
class ComplementColoringResult:
    graph: SimpleGraph  # the complement zero-divisor graph that was colored
    assignment: ColoringAssignment
    delta: int
    bound: int  # delta + 2

    @property
    def colors(self) -> int:
        return self.assignment.color_count


# ---------------------------------------------------------------------------
# building-block patterns

def behzad_complete_total(n: int):
    """Cyclic total coloring of K_n on positions 0..n-1.

    Odd n uses n colors (vertex i gets 2i mod n, edge ij gets i+j mod n);
    even n restricts the K_{n+1} pattern, using n+1 colors.
    """
    if n <= 0:
        return {}, {}, 0
    if n % 2 == 1:
        vcol = {i: (2 * i) % n for i in range(n)}
        ecol = {(i, j): (i + j) % n for i in range(n) for j in range(i + 1, n)}
        return vcol, ecol, n
    m = n + 1
    vcol = {i: (2 * i) % m for i in range(n)}
    ecol = {(i, j): (i + j) % m for i in range(n) for j in range(i + 1, n)}
    return vcol, ecol, m


def round_robin_bipartite(m: int, n: int):
    """Proper edge coloring of K_{m,n} with max(m, n) colors."""
    k = max(m, n)
    return {(i, j): (i + j) % k for i in range(m) for j in range(n)}, k


# ---------------------------------------------------------------------------
# quotient bookkeeping shared by the constructions

def _atom_class_layout(p: FinitePoset):
    """Vertex positions of each atom class and pseudocomplement class.

    Returns (gc, atom_classes, star_classes) where atom_classes[i] and
    star_classes[i] list the complement-graph vertex indices of [q_{i+1}]
    and [q_{i+1}]^* in ascending order.
    """
    q = quotient(p)
    g = zdg(p)
    gc = complement(g)
    label_to_vertex = {lab: i for i, lab in enumerate(gc.labels)}
    n = q.n_atoms
    full = q.full_mask

    def verts(mask: int) -> list[int]:
        c = q.class_by_support(mask)
        if c is None:
            return []
        return sorted(label_to_vertex[p.labels[x]] for x in q.classes[c])

    atom_classes = [verts(1 << i) for i in range(n)]
    star_classes = [verts(full & ~(1 << i)) for i in range(n)]
    return gc, atom_classes, star_classes


def _checked(gc: SimpleGraph, vcol: dict, ecol: dict,
             count: int) -> ComplementColoringResult:
    a = ColoringAssignment("total", vcol, ecol, count)
    ok, why = validate_coloring(gc, a)
    if not ok:
        raise ConstructionInvalid(f"constructed coloring rejected: {why}")
    return ComplementColoringResult(gc, a, gc.max_degree(), gc.max_degree() + 2)


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


# ---------------------------------------------------------------------------
# the constructions

def complement_total_coloring_two_atoms(p: FinitePoset) -> ComplementColoringResult:
    """Total coloring of the two-clique complement, one Behzad pattern shared."""
    q = quotient(p)
    if q.n_atoms != 2:
        raise CaseHypothesisError(f"atom count is {q.n_atoms}, expected 2")
    if not is_zero_distributive(p):
        raise CaseHypothesisError("poset is not 0-distributive")
    gc, atom_classes, _ = _atom_class_layout(p)
    lmax = max(len(c) for c in atom_classes)
    vpat, epat, count = behzad_complete_total(lmax)
    vcol: dict[int, int] = {}
    ecol: dict[tuple[int, int], int] = {}
    for members in atom_classes:
        for i, v in enumerate(members):
            vcol[v] = vpat[i]
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                ecol[_norm_edge(members[i], members[j])] = epat[(i, j)]
    return _checked(gc, vcol, ecol, count)


def complement_total_coloring_three_atoms(p: FinitePoset) -> ComplementColoringResult:
    """Explicit Case-II total coloring of the three-atom complement.

    Requires every atom class to hold at least a quarter of the graph
    vertices; refuses otherwise (the density argument covers those posets,
    but only as an existence statement).
    """
    q = quotient(p)
    if q.n_atoms != 3:
        raise CaseHypothesisError(f"atom count is {q.n_atoms}, expected 3")
    if not is_zero_distributive(p):
        raise CaseHypothesisError("poset is not 0-distributive")
    gc, atom_classes, star_classes = _atom_class_layout(p)
    for i, members in enumerate(star_classes):
        if not members:
            raise CaseHypothesisError(f"pseudocomplement class of atom {i+1} is empty")
    nv = gc.n
    for i, members in enumerate(atom_classes):
        if Fraction(len(members)) < Fraction(nv, 4):
            raise CaseHypothesisError(
                f"class size l_{i+1}={len(members)} < |V|/4={Fraction(nv, 4)}")

    # relabel atoms so that l1 <= l2 <= l3 (stable on ties)
    perm = sorted(range(3), key=lambda i: (len(atom_classes[i]), i))
    B = [atom_classes[i] for i in perm]   # B[0]=[q1], B[1]=[q2], B[2]=[q3]
    S = [star_classes[i] for i in perm]   # S[i] = [q_{i+1}]^*
    l1, l2, l3 = (len(b) for b in B)
    m1, m2, m3 = (len(s) for s in S)
    assert m1 + m3 <= l2 and m2 <= l1  # consequences of the 1/4 hypothesis

    # complete-graph pattern on A = S1 | S2 | S3 | B3
    A = S[0] + S[1] + S[2] + B[2]
    pos = {v: i for i, v in enumerate(A)}
    r = len(A)
    vpat, epat, kr = behzad_complete_total(r)

    def kr_vertex(v: int) -> int:
        return vpat[pos[v]]

    def kr_edge(u: int, v: int) -> int:
        i, j = pos[u], pos[v]
        return epat[(i, j) if i < j else (j, i)]

    vcol: dict[int, int] = {}
    ecol: dict[tuple[int, int], int] = {}

    # step 1: color the induced subgraph on A by restriction
    for v in A:
        vcol[v] = kr_vertex(v)
    for idx, u in enumerate(A):
        for v in A[idx + 1:]:
            e = _norm_edge(u, v)
            if e in gc.edges:
                ecol[e] = kr_edge(u, v)

    # step 2: replicate the B3 pattern onto B2 and B1 (no edges between them)
    for Bi in (B[1], B[0]):
        for j, v in enumerate(Bi):
            vcol[v] = kr_vertex(B[2][j])
        for j in range(len(Bi)):
            for t in range(j + 1, len(Bi)):
                ecol[_norm_edge(Bi[j], Bi[t])] = kr_edge(B[2][j], B[2][t])

    # step 3: edges S3 x B1 reuse the unused S3 x B3 pattern colors
    for s in S[2]:
        for k_, v in enumerate(B[0]):
            ecol[_norm_edge(s, v)] = kr_edge(s, B[2][k_])

    # step 4: fresh round-robin palette on B2 x (S1 | S3), l2 colors
    v2 = S[0] + S[2]
    for j, u in enumerate(B[1]):
        for t, w in enumerate(v2):
            ecol[_norm_edge(u, w)] = kr + (j + t) % l2

    # step 5: B1 x S2 reuses the first l1 fresh colors
    for j, u in enumerate(B[0]):
        for t, w in enumerate(S[1]):
            ecol[_norm_edge(u, w)] = kr + (j + t) % l1

    return _checked(gc, vcol, ecol, kr + l2)


def max_degree_complement_formula(p: FinitePoset) -> int:
    """Delta of the complement graph as |V| - min atom-class size - 1.

    Asserts agreement with the directly computed maximum degree.
    """
    q = quotient(p)
    if q.n_atoms < 2:
        raise CaseHypothesisError("formula needs at least two atoms")
    gc, atom_classes, _ = _atom_class_layout(p)
    value = gc.n - min(len(c) for c in atom_classes) - 1
    direct = gc.max_degree()
    if value != direct:
        raise ConstructionInvalid(
            f"degree formula {value} disagrees with direct scan {direct}")
    return value
