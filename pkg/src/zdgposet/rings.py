"""Ring and group constructions routed through ideal/subgroup lattices.

Ideals of Z_n are divisors d|n with I_d + I_e = I_gcd and I_d ∩ I_e = I_lcm,
so every graph here is computed by exact divisor arithmetic. Artinian
principal ideal rings are specified by the nilpotency indices of their local
factors; their ideal lattice is the matching product of chains. The comaximal
graph is the zero-divisor graph of the dual ideal lattice; the intersection
graph is the complement of the starred zero-divisor graph of the lattice
itself. Definition-level oracles recompute the same graphs straight from the
ideal arithmetic for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from . import analysis
from .graphs import SimpleGraph, complement, make_graph, zdg, zdg_star
from .poset import FinitePoset, PosetError, dual, make_chain, make_poset
from .quotient import quotient


class RingSpecError(ValueError):
    pass


@dataclass(frozen=True)
class RingSpec:
    kind: str  # "zn" | "pir" | "local-chain"
    n: int = 0
    indices: tuple[int, ...] = ()

    @staticmethod
    def zn(n: int) -> "RingSpec":
        if n < 2:
            raise RingSpecError("Z_n needs n >= 2")
        return RingSpec(kind="zn", n=n)

    @staticmethod
    def artinian_pir(indices) -> "RingSpec":
        idx = tuple(int(k) for k in indices)
        if not idx or any(k < 1 for k in idx):
            raise RingSpecError("nilpotency indices must be positive")
        return RingSpec(kind="pir", indices=idx)

    @staticmethod
    def local_chain(length: int) -> "RingSpec":
        if length < 1:
            raise RingSpecError("chain length must be positive")
        return RingSpec(kind="local-chain", indices=(length,))

    def maximal_ideal_count(self) -> int:
        if self.kind == "zn":
            return len(factorize(self.n))
        return len(self.indices)

    def local_factor_chain_lengths(self) -> tuple[int, ...]:
        """Nilpotency index of each local factor's maximal ideal."""
        if self.kind == "zn":
            return tuple(a for _, a in sorted(factorize(self.n).items()))
        return self.indices

    def describe(self) -> str:
        if self.kind == "zn":
            return f"Z_{self.n}"
        if self.kind == "local-chain":
            return f"SPIR({self.indices[0]})"
        return "PIR(" + ",".join(str(k) for k in self.indices) + ")"


@dataclass(frozen=True)
class GroupSpec:
    cyclic_order: int

    def __post_init__(self):
        if self.cyclic_order < 2:
            raise RingSpecError("cyclic group order must be >= 2")


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    out = [1]
    for p, a in factorize(n).items():
        out = [d * p ** e for d in out for e in range(a + 1)]
    return sorted(out)


# ---------------------------------------------------------------------------
# ideal lattices

def ideal_lattice(r: RingSpec) -> FinitePoset:
    """Id(R) as a poset: least element the zero ideal, greatest element R."""
    if r.kind == "zn":
        divs = divisors(r.n)
        m = len(divs)
        le = np.zeros((m, m), dtype=bool)
        for i, d in enumerate(divs):
            for j, e in enumerate(divs):
                le[i, j] = d % e == 0  # I_d below I_e iff e divides d
        labels = [f"({d})" for d in divs]
        return make_poset(labels, le, name=f"Id(Z_{r.n})", validate=False)
    lengths = r.local_factor_chain_lengths()
    chains = [make_chain(k + 1) for k in lengths]
    if len(chains) == 1:
        p = chains[0]
        return FinitePoset(p.labels, p.le, p.zero, p.one, name=r.describe())
    from .poset import direct_product
    p = direct_product(chains)
    return FinitePoset(p.labels, p.le, p.zero, p.one, name=f"Id({r.describe()})")


def jacobson_interior_ideal_count(r: RingSpec) -> int:
    """Nonzero proper ideals contained in the Jacobson radical."""
    if r.kind == "zn":
        rad = 1
        for p in factorize(r.n):
            rad *= p
        return sum(1 for d in divisors(r.n) if d % rad == 0 and d != r.n)
    count = 1
    for k in r.local_factor_chain_lengths():
        count *= k  # exponents 1..k per factor
    return count - 1  # drop the zero ideal


# ---------------------------------------------------------------------------
# graphs associated with rings and groups

def comaximal_graph(r: RingSpec) -> SimpleGraph:
    """CG(R): ideals outside the radical, adjacent when they sum to R."""
    return zdg(dual(ideal_lattice(r)))


def comaximal_graph_star(r: RingSpec) -> SimpleGraph:
    """CG*(R): all nonzero proper ideals, same adjacency."""
    return zdg_star(dual(ideal_lattice(r)))


def annihilating_and_coannihilating(r: RingSpec) -> tuple[SimpleGraph, SimpleGraph]:
    """(AG*(R), CAG*(R)) for the Artinian specs supported here."""
    cag = comaximal_graph_star(r)
    return complement(cag), cag


def intersection_graph(r: RingSpec) -> SimpleGraph:
    """IG(R): nonzero proper ideals, adjacent when the intersection is nonzero."""
    return complement(zdg_star(ideal_lattice(r)))


def subgroup_intersection_graph(gs: GroupSpec) -> SimpleGraph:
    """Subgroup lattice of the cyclic group = divisor lattice of its order."""
    return intersection_graph(RingSpec.zn(gs.cyclic_order))


# ---------------------------------------------------------------------------
# definition-level oracles over divisor arithmetic (Z_n only)

def comaximal_graph_zn_oracle(n: int) -> SimpleGraph:
    rad = 1
    for p in factorize(n):
        rad *= p
    verts = [d for d in divisors(n) if d != 1 and d % rad != 0]
    labels = [f"({d})" for d in verts]
    edges = [(i, j) for i in range(len(verts)) for j in range(i + 1, len(verts))
             if gcd(verts[i], verts[j]) == 1]
    return make_graph(labels, edges)


def coannihilating_star_zn_oracle(n: int) -> SimpleGraph:
    verts = [d for d in divisors(n) if d not in (1, n)]
    labels = [f"({d})" for d in verts]

    def lcm(a, b):
        return a * b // gcd(a, b)

    edges = [(i, j) for i in range(len(verts)) for j in range(i + 1, len(verts))
             if lcm(n // verts[i], n // verts[j]) == n]
    return make_graph(labels, edges)


def intersection_graph_zn_oracle(n: int) -> SimpleGraph:
    verts = [d for d in divisors(n) if d not in (1, n)]
    labels = [f"({d})" for d in verts]

    def lcm(a, b):
        return a * b // gcd(a, b)

    edges = [(i, j) for i in range(len(verts)) for j in range(i + 1, len(verts))
             if lcm(verts[i], verts[j]) != n]
    return make_graph(labels, edges)


# ---------------------------------------------------------------------------
# theorem-form classification of the whole family

def theorem_comaximal_chordal(r: RingSpec) -> bool:
    lengths = sorted(r.local_factor_chain_lengths())
    n = len(lengths)
    if n == 1:
        return True
    if n == 2:
        return lengths[0] == 1
    if n == 3:
        return lengths == [1, 1, 1]
    return False


def theorem_comaximal_complement_chordal(r: RingSpec) -> bool:
    return r.maximal_ideal_count() <= 3


def theorem_comaximal_perfect(r: RingSpec) -> bool:
    return r.maximal_ideal_count() <= 4


def theorem_comaximal_type(r: RingSpec) -> str:
    lengths = r.local_factor_chain_lengths()
    if len(lengths) == 2 and lengths[0] == lengths[1]:
        return "II"
    return "I"


def classify_family(r: RingSpec,
                    max_vertices: int = analysis.EXACT_VERTEX_CAP,
                    max_edges: int = analysis.EXACT_EDGE_CAP
                    ) -> analysis.ClassificationReport:
    """Report for CG*(R) with theorem-vs-measured agreement flags."""
    g = comaximal_graph_star(r)
    report = analysis.analyze_graph(
        g, instance="comaximal-star", key=r.describe(),
        atom_count=r.maximal_ideal_count(),
        max_vertices=max_vertices, max_edges=max_edges)
    flags = {
        "chordal": report.is_chordal == theorem_comaximal_chordal(r),
        "chordal_complement":
            analysis.is_chordal(complement(g)).chordal
            == theorem_comaximal_complement_chordal(r),
        "perfect": report.is_perfect == theorem_comaximal_perfect(r),
        "edge_class_one": g.m == 0 or report.chi_prime == report.max_degree,
    }
    if report.chi_double_prime is not None:
        flags["tcc"] = report.chi_double_prime in (
            report.max_degree + 1, report.max_degree + 2)
        if g.m > 0:
            flags["total_type"] = report.total_type == theorem_comaximal_type(r)
    report.agreement_flags = flags
    return report
