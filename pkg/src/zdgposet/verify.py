"""Theorem-verification sweeps over generated instance families.

Each check compares a theorem-form prediction against the generic
recognizers/solvers on every instance of a family and collects mismatches.
Instances are small picklable keys so sweeps can fan out over a process
pool; results are re-sorted by key before reporting.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import analysis, coloring, rings
from .analysis import ClassificationReport, analyze_graph
from .graphs import SimpleGraph, complement, graph_from_dict, make_graph, \
    complete_bipartite, complete_graph, reduce_simeq, reduce_theta, zdg
from .poset import FinitePoset, make_boolean, make_bounded_crown, \
    make_chain, make_chain_product, make_class_poset
from .quotient import class_sizes_by_support, quotient, quotient_is_boolean

RANDOM_CORPUS_SEED = 20240601


@dataclass(frozen=True)
class CheckFailure:
    instance: str
    theorem: str
    expected: str
    actual: str

    def __str__(self):
        return (f"{self.instance}: {self.theorem} expected {self.expected}, "
                f"got {self.actual}")


@dataclass
class VerificationRun:
    check: str
    family: str
    instance_count: int
    reports: list[ClassificationReport] = field(default_factory=list)
    failures: list[CheckFailure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


# ---------------------------------------------------------------------------
# instance families

def chain_product_graph_vertices(sizes) -> int:
    prod = dense = 1
    for s in sizes:
        prod *= s
        dense *= s - 1
    return prod - 1 - dense


def chain_product_keys(max_factors: int = 5, max_graph_vertices: int = 12,
                       single_chain_max: int = 8) -> list[tuple[int, ...]]:
    """Nondecreasing factor tuples whose zero-divisor graph fits the bound.

    Single chains always give the null graph, so they are capped separately.
    Growing any factor or appending one only adds graph vertices, which makes
    the pruning below exhaustive.
    """
    keys: list[tuple[int, ...]] = [(k,) for k in range(2, single_chain_max + 1)]

    def extend(prefix: tuple[int, ...]):
        if len(prefix) >= 2:
            keys.append(prefix)
        if len(prefix) == max_factors:
            return
        s = prefix[-1]
        while chain_product_graph_vertices(prefix + (s,)) <= max_graph_vertices:
            extend(prefix + (s,))
            s += 1

    first = 2
    while chain_product_graph_vertices((first, first)) <= max_graph_vertices:
        extend((first,))
        first += 1
    return sorted(set(keys))


def boolean_keys(max_atoms: int = 5) -> list[int]:
    return list(range(1, max_atoms + 1))


def zn_keys(max_n: int = 200) -> list[int]:
    return list(range(2, max_n + 1))


def pir_keys(max_factors: int = 3, max_index: int = 3) -> list[tuple[int, ...]]:
    keys = []
    for nf in range(1, max_factors + 1):
        for tup in itertools.combinations_with_replacement(
                range(1, max_index + 1), nf):
            keys.append(tup)
    return keys


def three_atom_keys() -> list[tuple[tuple[int, int, int], tuple[int, int, int]]]:
    """Class-size parameters satisfying the quarter hypothesis; >= 25 of them."""
    keys = []
    for k in range(3, 10):
        for m in [(1, 1, 1), (1, 1, 2), (2, 1, 1), (1, 2, 2), (2, 2, 2)]:
            ls = (k, k, k)
            if 4 * min(ls) >= sum(ls) + sum(m):
                keys.append((ls, m))
    for ls in [(4, 4, 5), (4, 5, 5), (5, 5, 6), (5, 6, 6), (6, 6, 7)]:
        if 4 * min(ls) >= sum(ls) + 3:
            keys.append((ls, (1, 1, 1)))
    return sorted(set(keys))


def figure_like_class_sizes() -> dict[int, int]:
    """All six three-atom classes of size four (24 graph vertices)."""
    return {1: 4, 2: 4, 4: 4, 3: 4, 5: 4, 6: 4}


def build_three_atom(ls, ms) -> FinitePoset:
    l1, l2, l3 = ls
    m1, m2, m3 = ms
    return make_class_poset(3, {1: l1, 2: l2, 4: l3, 6: m1, 5: m2, 3: m3},
                            dense_size=1)


def reduction_corpus(max_zdg_vertices: int = 16, random_graphs: int = 120,
                     random_max_vertices: int = 10) -> list[tuple[str, SimpleGraph]]:
    """Zero-divisor instances plus seeded random graphs; 200+ graphs."""
    corpus: list[tuple[str, SimpleGraph]] = []
    for sizes in chain_product_keys(max_factors=4,
                                    max_graph_vertices=max_zdg_vertices):
        g = zdg(make_chain_product(sizes))
        key = "x".join(map(str, sizes))
        corpus.append((f"zdg-{key}", g))
        corpus.append((f"zdgc-{key}", complement(g)))
    for n in range(2, 5):
        g = zdg(make_boolean(n))
        corpus.append((f"zdg-2^{n}", g))
        corpus.append((f"zdgc-2^{n}", complement(g)))
    for n in (4, 5):
        g = zdg(make_bounded_crown(n))
        corpus.append((f"zdg-crown{n}", g))
        corpus.append((f"zdgc-crown{n}", complement(g)))
    rng = random.Random(RANDOM_CORPUS_SEED)
    for i in range(random_graphs):
        n = rng.randint(1, random_max_vertices)
        p = rng.choice([0.2, 0.35, 0.5, 0.65, 0.8])
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < p]
        corpus.append((f"rand-{i}", make_graph([f"v{j}" for j in range(n)],
                                               edges)))
    return corpus


# ---------------------------------------------------------------------------
# individual checks; each returns (report or None, failures)

def _fail(instance, theorem, expected, actual) -> CheckFailure:
    return CheckFailure(instance, theorem, str(expected), str(actual))


def check_chordal_theorem(key, p: FinitePoset):
    failures = []
    q = quotient(p)
    name = p.name or str(key)
    if not quotient_is_boolean(q):
        return None, [_fail(name, "quotient-boolean-gate", True, False)]
    sizes = [len(q.classes[q.atom_class(i)]) for i in range(q.n_atoms)]
    g = zdg(p)
    measured = analysis.is_chordal(g).chordal
    expected = analysis.theorem_zdg_chordal(sizes)
    if measured != expected:
        failures.append(_fail(name, "zdg-chordal", expected, measured))
    measured_c = analysis.is_chordal(complement(g)).chordal
    expected_c = analysis.theorem_complement_chordal(q.n_atoms)
    if measured_c != expected_c:
        failures.append(_fail(name, "complement-chordal", expected_c, measured_c))
    return None, failures


def check_perfect_theorem(key, p: FinitePoset):
    failures = []
    q = quotient(p)
    name = p.name or str(key)
    if not quotient_is_boolean(q):
        return None, [_fail(name, "quotient-boolean-gate", True, False)]
    measured = analysis.is_perfect(zdg(p))
    expected = analysis.theorem_zdg_perfect(q.n_atoms)
    if measured != expected:
        failures.append(_fail(name, "zdg-perfect", expected, measured))
    return None, failures


def check_coloring_numbers(key, p: FinitePoset, max_vertices=14, max_edges=60):
    failures = []
    q = quotient(p)
    name = p.name or str(key)
    if q.n_atoms < 2:
        return None, failures
    g = zdg(p)
    report = analyze_graph(g, instance="chain-product", key=name,
                           atom_count=q.n_atoms, max_vertices=max_vertices,
                           max_edges=max_edges)
    if report.chi != q.n_atoms or report.clique != q.n_atoms:
        failures.append(_fail(name, "chi-eq-omega-eq-atoms", q.n_atoms,
                              (report.chi, report.clique)))
    if g.m > 0 and report.chi_prime != report.max_degree:
        failures.append(_fail(name, "edge-class-one", report.max_degree,
                              report.chi_prime))
    expected_total = report.max_degree + \
        (2 if analysis.classify_type(p) == "II" else 1)
    if report.chi_double_prime is None:
        failures.append(_fail(name, "total-exact-computed", "exact", "refused"))
    elif report.chi_double_prime != expected_total:
        failures.append(_fail(name, "total-chromatic", expected_total,
                              report.chi_double_prime))
    report.agreement_flags = {"coloring-numbers": not failures}
    return report, failures


def check_tcc(key, p: FinitePoset, max_vertices=14, max_edges=60):
    failures = []
    name = p.name or str(key)
    g = zdg(p)
    if g.n == 0:
        return None, failures
    res = analysis.total_chromatic_number(g, max_vertices, max_edges)
    if not res.exact:
        failures.append(_fail(name, "total-exact-computed", "exact", "refused"))
    elif res.value not in (g.max_degree() + 1, g.max_degree() + 2):
        failures.append(_fail(name, "tcc", f"{g.max_degree()}+1 or +2",
                              res.value))
    return None, failures


def check_behzad(key):
    kind, arg = key
    failures = []
    if kind == "kn":
        n = arg
        g = complete_graph(n)
        expect_total = n if n % 2 == 1 else n + 1
        expect_edge = 0 if n < 2 else (n if n % 2 == 1 else n - 1)
        res = analysis.total_chromatic_number(g, max_vertices=10, max_edges=45)
        if res.value != expect_total:
            failures.append(_fail(f"K{n}", "total", expect_total, res.value))
        ke, _ = analysis.edge_chromatic_number(g)
        if n >= 2 and ke != expect_edge:
            failures.append(_fail(f"K{n}", "edge", expect_edge, ke))
        kv, _ = analysis.chromatic_number(g)
        if kv != n:
            failures.append(_fail(f"K{n}", "vertex", n, kv))
    else:
        m, n = arg
        g = complete_bipartite(m, n)
        expect_total = max(m, n) + 1 + (1 if m == n else 0)
        res = analysis.total_chromatic_number(g, max_vertices=10, max_edges=45)
        if res.value != expect_total:
            failures.append(_fail(f"K{m},{n}", "total", expect_total, res.value))
        ke, _ = analysis.edge_chromatic_number(g)
        if ke != max(m, n):
            failures.append(_fail(f"K{m},{n}", "edge", max(m, n), ke))
    return None, failures


def check_reduction(name: str, g: SimpleGraph):
    failures = []
    chordal = analysis.is_chordal(g).chordal
    perfect = analysis.is_perfect(g)
    for tag, h in (("simeq", reduce_simeq(g)), ("theta", reduce_theta(g))):
        if analysis.is_chordal(h).chordal != chordal:
            failures.append(_fail(name, f"chordal-invariant-{tag}", chordal,
                                  not chordal))
        if analysis.is_perfect(h) != perfect:
            failures.append(_fail(name, f"perfect-invariant-{tag}", perfect,
                                  not perfect))
    if analysis.is_perfect(complement(g)) != perfect:
        failures.append(_fail(name, "perfect-complement", perfect, not perfect))
    if chordal and not perfect:
        failures.append(_fail(name, "chordal-implies-perfect", True, False))
    return None, failures


def check_artinian_identity(n: int):
    failures = []
    spec = rings.RingSpec.zn(n)
    name = f"Z_{n}"
    cg = rings.comaximal_graph(spec)
    if cg != rings.comaximal_graph_zn_oracle(n):
        failures.append(_fail(name, "comaximal-oracle", "equal", "differs"))
    cgs = rings.comaximal_graph_star(spec)
    if cgs != rings.coannihilating_star_zn_oracle(n):
        failures.append(_fail(name, "coannihilating-oracle", "equal", "differs"))
    ag, cag = rings.annihilating_and_coannihilating(spec)
    if ag != complement(cag) or cag != cgs:
        failures.append(_fail(name, "annihilating-chain", "equal", "differs"))
    ig = rings.intersection_graph(spec)
    if ig != rings.intersection_graph_zn_oracle(n):
        failures.append(_fail(name, "intersection-oracle", "equal", "differs"))
    extra = cgs.n - cg.n
    m = rings.jacobson_interior_ideal_count(spec)
    if extra != m:
        failures.append(_fail(name, "cg-star-isolated-count", m, extra))
    return None, failures


def check_cor13(n: int, max_recognition_vertices: int = 40):
    failures = []
    spec = rings.RingSpec.zn(n)
    name = f"Z_{n}"
    g = rings.comaximal_graph_star(spec)
    if g.n > max_recognition_vertices:
        return None, failures
    measured_chordal = analysis.is_chordal(g).chordal
    if measured_chordal != rings.theorem_comaximal_chordal(spec):
        failures.append(_fail(name, "cor13-chordal",
                              rings.theorem_comaximal_chordal(spec),
                              measured_chordal))
    measured_cc = analysis.is_chordal(complement(g)).chordal
    if measured_cc != rings.theorem_comaximal_complement_chordal(spec):
        failures.append(_fail(name, "cor13-complement-chordal",
                              rings.theorem_comaximal_complement_chordal(spec),
                              measured_cc))
    measured_perfect = analysis.is_perfect(g)
    if measured_perfect != rings.theorem_comaximal_perfect(spec):
        failures.append(_fail(name, "cor13-perfect",
                              rings.theorem_comaximal_perfect(spec),
                              measured_perfect))
    if g.m > 0:
        ke, _ = analysis.edge_chromatic_number(g)
        if ke != g.max_degree():
            failures.append(_fail(name, "cor13-edge-class-one",
                                  g.max_degree(), ke))
    return None, failures


def check_quotient_structure(key, p: FinitePoset):
    failures = []
    name = p.name or str(key)
    q = quotient(p)
    sizes = key  # chain factor sizes
    if not quotient_is_boolean(q):
        failures.append(_fail(name, "quotient-boolean", True, False))
    expected = {}
    n = len(sizes)
    for mask in range(1, 1 << n):
        prod = 1
        for i in range(n):
            if mask >> i & 1:
                prod *= sizes[i] - 1
        if prod:
            expected[mask] = prod
    actual = class_sizes_by_support(q)
    if expected != actual:
        failures.append(_fail(name, "class-sizes", expected, actual))
    return None, failures


def check_case2(key):
    ls, ms = key
    name = f"l={ls},m={ms}"
    failures = []
    p = build_three_atom(ls, ms)
    try:
        res = coloring.complement_total_coloring_three_atoms(p)
    except coloring.CaseHypothesisError as e:
        return None, [_fail(name, "case2-hypothesis", "runs", e.failed)]
    ok, why = analysis.validate_coloring(res.graph, res.assignment)
    if not ok:
        failures.append(_fail(name, "case2-checker", "valid", why))
    if res.colors > res.bound:
        failures.append(_fail(name, "case2-bound", f"<= {res.bound}",
                              res.colors))
    if res.graph.n <= 14 and res.graph.m <= 60:
        exact = analysis.total_chromatic_number(res.graph, 14, 60)
        if exact.exact and exact.value > res.bound:
            failures.append(_fail(name, "case2-tcc", f"<= {res.bound}",
                                  exact.value))
    return None, failures


# ---------------------------------------------------------------------------
# harness

def _poset_for(family: str, key):
    if family == "chain-products":
        return make_chain_product(key)
    if family == "boolean":
        return make_boolean(key)
    raise ValueError(f"family {family} does not generate posets")


def _run_one(args):
    check, family, key, opts = args
    if check == "chordal-theorem":
        return key, check_chordal_theorem(key, _poset_for(family, key))
    if check == "perfect-theorem":
        return key, check_perfect_theorem(key, _poset_for(family, key))
    if check == "coloring-numbers":
        return key, check_coloring_numbers(
            key, _poset_for(family, key),
            max_vertices=opts.get("max_exact_vertices", 14),
            max_edges=opts.get("max_exact_edges", 60))
    if check == "tcc":
        return key, check_tcc(key, _poset_for(family, key),
                              max_vertices=opts.get("max_exact_vertices", 14),
                              max_edges=opts.get("max_exact_edges", 60))
    if check == "behzad":
        return key, check_behzad(key)
    if check == "artinian-identity":
        return key, check_artinian_identity(key)
    if check == "cor13":
        return key, check_cor13(key, opts.get("max_recognition_vertices", 40))
    if check == "quotient-structure":
        return key, check_quotient_structure(key, _poset_for(family, key))
    if check == "case2-coloring":
        return key, check_case2(key)
    raise ValueError(f"unknown check {check}")


CHECK_DEFAULT_FAMILY = {
    "chordal-theorem": "chain-products",
    "perfect-theorem": "chain-products",
    "coloring-numbers": "chain-products",
    "tcc": "chain-products",
    "behzad": "fixed",
    "reduction-theorems": "corpus",
    "artinian-identity": "zn",
    "cor13": "zn",
    "quotient-structure": "chain-products",
    "case2-coloring": "three-atom",
}

ALL_CHECKS = sorted(CHECK_DEFAULT_FAMILY)


def family_keys(check: str, family: str, opts: dict) -> list:
    if family == "chain-products":
        return chain_product_keys(
            max_factors=opts.get("max_factors", 5),
            max_graph_vertices=opts.get("max_graph_vertices", 12))
    if family == "boolean":
        return boolean_keys(opts.get("max_atoms", 5))
    if family == "zn":
        return zn_keys(opts.get("max_n", 200))
    if family == "pir":
        return pir_keys()
    if family == "three-atom":
        return three_atom_keys()
    if family == "fixed" and check == "behzad":
        keys = [("kn", n) for n in range(1, 8)]
        keys += [("kmn", (m, n)) for m in range(1, 5) for n in range(m, 5)]
        return keys
    raise ValueError(f"no instance family {family!r} for check {check!r}")


def run_verification(check: str, family: str | None = None, jobs: int = 1,
                     **opts) -> VerificationRun:
    family = family or CHECK_DEFAULT_FAMILY[check]
    if check == "reduction-theorems":
        corpus = reduction_corpus(
            max_zdg_vertices=opts.get("max_zdg_vertices", 16),
            random_graphs=opts.get("random_graphs", 120))
        if family not in ("corpus", "corpus-file"):
            raise ValueError("reduction-theorems runs on the graph corpus")
        if family == "corpus-file":
            data = opts["corpus_data"]
            corpus = [(str(i), graph_from_dict(d)) for i, d in enumerate(data)]
        run = VerificationRun(check, family, len(corpus))
        for name, g in sorted(corpus, key=lambda t: t[0]):
            _, fails = check_reduction(name, g)
            run.failures.extend(fails)
        return run
    keys = family_keys(check, family, opts)
    tasks = [(check, family, key, opts) for key in keys]
    run = VerificationRun(check, family, len(keys))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, tasks))
    else:
        results = [_run_one(t) for t in tasks]
    results.sort(key=lambda kv: str(kv[0]))
    for _, (report, fails) in results:
        if report is not None:
            run.reports.append(report)
        run.failures.extend(fails)
    return run
