"""Finite posets with a least element, and the order-theoretic primitives.

A poset is stored as its full order relation (a boolean matrix ``le`` with
``le[i, j]`` meaning element i is below element j), together with the index
of the least element and, when present, the greatest one. The JSON interchange
format uses cover (Hasse) relations; the loader takes the reflexive-transitive
closure and validates the order axioms.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

MAX_ELEMENTS = 4096


class PosetError(ValueError):
    pass


class NotALattice(Exception):
    """Sentinel outcome for lattice-only classifiers on non-lattice input."""


@dataclass(frozen=True)
class FinitePoset:
    labels: tuple[str, ...]
    le: np.ndarray  # boolean, le[i, j] <=> i <= j
    zero: int
    one: int | None
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise PosetError(f"unknown element label {label!r}") from None

    def leq(self, a: int, b: int) -> bool:
        return bool(self.le[a, b])

    def __eq__(self, other):
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.le, other.le)

    def __hash__(self):
        return hash((self.labels, self.le.tobytes()))


def make_poset(labels, le, name="", validate=True) -> FinitePoset:
    """Build a FinitePoset from a full relation, validating the order axioms."""
    labels = tuple(str(x) for x in labels)
    n = len(labels)
    if n == 0:
        raise PosetError("poset must be nonempty")
    if n > MAX_ELEMENTS:
        raise PosetError(f"poset too large ({n} > {MAX_ELEMENTS} elements)")
    if len(set(labels)) != n:
        raise PosetError("duplicate element labels")
    le = np.asarray(le, dtype=bool)
    if le.shape != (n, n):
        raise PosetError("relation shape does not match element count")
    if validate:
        if not le.diagonal().all():
            raise PosetError("relation is not reflexive")
        if (le & le.T & ~np.eye(n, dtype=bool)).any():
            raise PosetError("relation is not antisymmetric")
        reach = le.astype(np.float32)
        if ((reach @ reach) > 0.5)[~le].any():
            raise PosetError("relation is not transitive")
    zero_candidates = np.nonzero(le.all(axis=1))[0]
    if len(zero_candidates) == 0:
        raise PosetError("poset has no least element")
    zero = int(zero_candidates[0])
    one_candidates = np.nonzero(le.all(axis=0))[0]
    one = int(one_candidates[0]) if len(one_candidates) else None
    le.setflags(write=False)
    return FinitePoset(labels=labels, le=le, zero=zero, one=one, name=name)


# ---------------------------------------------------------------------------
# cones, annihilators, atoms

def _as_indices(p: FinitePoset, a) -> frozenset[int]:
    idx = frozenset(int(x) for x in a)
    for x in idx:
        if not 0 <= x < p.n:
            raise PosetError(f"element index {x} out of range")
    return idx


def upper_cone(p: FinitePoset, a) -> frozenset[int]:
    """Elements lying above every member of ``a``."""
    idx = _as_indices(p, a)
    if not idx:
        raise PosetError("empty cone argument")
    mask = np.ones(p.n, dtype=bool)
    for x in idx:
        mask &= p.le[x, :]
    return frozenset(np.nonzero(mask)[0].tolist())


def lower_cone(p: FinitePoset, a) -> frozenset[int]:
    """Elements lying below every member of ``a``."""
    idx = _as_indices(p, a)
    if not idx:
        raise PosetError("empty cone argument")
    mask = np.ones(p.n, dtype=bool)
    for x in idx:
        mask &= p.le[:, x]
    return frozenset(np.nonzero(mask)[0].tolist())


def disjoint(p: FinitePoset, a: int, b: int) -> bool:
    """True iff the lower cone of {a, b} is exactly {0}."""
    return not (p.le[:, a] & p.le[:, b] & ~_zero_row(p)).any()


def _zero_row(p: FinitePoset) -> np.ndarray:
    row = p._cache.get("zero_row")
    if row is None:
        row = np.zeros(p.n, dtype=bool)
        row[p.zero] = True
        p._cache["zero_row"] = row
    return row


def annihilator(p: FinitePoset, a) -> frozenset[int]:
    """Elements disjoint from every member of ``a``; always contains 0."""
    idx = _as_indices(p, a)
    if not idx:
        raise PosetError("empty annihilator argument")
    nz = ~_zero_row(p)
    ok = np.ones(p.n, dtype=bool)
    for x in idx:
        below_x = p.le[:, x]
        common = p.le[:, :] & below_x[:, None] & nz[:, None]
        ok &= ~common.any(axis=0)
    return frozenset(np.nonzero(ok)[0].tolist())


def atoms(p: FinitePoset) -> tuple[int, ...]:
    """Minimal nonzero elements, ascending by index."""
    cached = p._cache.get("atoms")
    if cached is None:
        out = []
        for a in range(p.n):
            if a == p.zero:
                continue
            strictly_below = np.nonzero(p.le[:, a])[0]
            if all(b == a or b == p.zero for b in strictly_below):
                out.append(a)
        cached = tuple(out)
        p._cache["atoms"] = cached
    return cached


def support_masks(p: FinitePoset) -> list[int]:
    """Per element, the bitmask of atoms below it (atoms in ascending order)."""
    cached = p._cache.get("supports")
    if cached is None:
        ats = atoms(p)
        cached = []
        for x in range(p.n):
            m = 0
            for i, q in enumerate(ats):
                if p.le[q, x]:
                    m |= 1 << i
            cached.append(m)
        p._cache["supports"] = cached
    return cached


def zero_divisors(p: FinitePoset) -> frozenset[int]:
    """Z(P): elements disjoint from some nonzero element."""
    if p.n == 1:
        return frozenset()
    supp = support_masks(p)
    full = (1 << len(atoms(p))) - 1
    out = {p.zero}
    for x in range(p.n):
        if x != p.zero and supp[x] != full:
            out.add(x)
    return frozenset(out)


def dense_elements(p: FinitePoset) -> frozenset[int]:
    """The non-zero-divisors of P."""
    return frozenset(range(p.n)) - zero_divisors(p)


# ---------------------------------------------------------------------------
# structural predicates

def is_zero_distributive(p: FinitePoset) -> bool:
    """a disjoint from b and from c forces a disjoint from {b,c}^u."""
    nz = ~_zero_row(p)
    for a in range(p.n):
        if a == p.zero:
            continue
        below_a = p.le[:, a]
        disj_a = [b for b in range(p.n)
                  if not (below_a & p.le[:, b] & nz).any()]
        for b, c in itertools.combinations_with_replacement(disj_a, 2):
            up = p.le[b, :] & p.le[c, :]
            # lower cone of {a} united with the upper cone of {b, c}
            common = below_a.copy()
            for u in np.nonzero(up)[0]:
                common &= p.le[:, u]
            if (common & nz).any():
                return False
    return True


def pseudocomplement(p: FinitePoset, a: int) -> int | None:
    """The element whose lower cone equals the annihilator of a, if any."""
    ann = annihilator(p, [a])
    ann_vec = np.zeros(p.n, dtype=bool)
    ann_vec[list(ann)] = True
    for b in ann:
        if np.array_equal(p.le[:, b], ann_vec):
            return int(b)
    return None


def is_ssc(p: FinitePoset) -> bool:
    """Section semi-complemented: a not below b gives a nonzero c <= a disjoint from b."""
    nz = ~_zero_row(p)
    for a in range(p.n):
        for b in range(p.n):
            if p.le[a, b]:
                continue
            found = False
            for c in np.nonzero(p.le[:, a] & nz)[0]:
                if not (p.le[:, c] & p.le[:, b] & nz).any():
                    found = True
                    break
            if not found:
                return False
    return True


def meet_table(p: FinitePoset) -> np.ndarray | None:
    """Pairwise meets, or None when some pair lacks a greatest lower bound."""
    cached = p._cache.get("meet")
    if cached is not None:
        return cached if cached is not False else None
    n = p.n
    table = np.full((n, n), -1, dtype=np.int64)
    for a in range(n):
        for b in range(a, n):
            lows = p.le[:, a] & p.le[:, b]
            idx = np.nonzero(lows)[0]
            top = [m for m in idx if p.le[idx, m].all()]
            if len(top) != 1:
                p._cache["meet"] = False
                return None
            table[a, b] = table[b, a] = top[0]
    p._cache["meet"] = table
    return table


def join_table(p: FinitePoset) -> np.ndarray | None:
    cached = p._cache.get("join")
    if cached is not None:
        return cached if cached is not False else None
    n = p.n
    table = np.full((n, n), -1, dtype=np.int64)
    for a in range(n):
        for b in range(a, n):
            ups = p.le[a, :] & p.le[b, :]
            idx = np.nonzero(ups)[0]
            bottom = [m for m in idx if p.le[m, idx].all()]
            if len(bottom) != 1:
                p._cache["join"] = False
                return None
            table[a, b] = table[b, a] = bottom[0]
    p._cache["join"] = table
    return table


def is_lattice(p: FinitePoset) -> bool:
    return meet_table(p) is not None and join_table(p) is not None


def is_boolean(p: FinitePoset) -> bool | None:
    """Boolean test for lattices; returns None for non-lattice posets.

    A finite lattice qualifies when it is complemented, atomistic, and has
    exactly 2^(atom count) elements.
    """
    meets = meet_table(p)
    joins = join_table(p)
    if meets is None or joins is None:
        return None
    if p.one is None:
        return False
    ats = atoms(p)
    if p.n != 1 << len(ats):
        return False
    for a in range(p.n):
        if not any(meets[a, b] == p.zero and joins[a, b] == p.one
                   for b in range(p.n)):
            return False
    # atomistic: every element is the join of the atoms below it
    supp = support_masks(p)
    if len(set(supp)) != p.n:
        return False
    for x in range(p.n):
        j = p.zero
        for i, q in enumerate(ats):
            if supp[x] >> i & 1:
                j = joins[j, q]
        if j != x:
            return False
    return True


# ---------------------------------------------------------------------------
# constructions

def dual(p: FinitePoset) -> FinitePoset:
    """Order-reversed poset; requires a greatest element (it becomes the 0)."""
    if p.one is None:
        raise PosetError("dual requires a greatest element")
    return make_poset(p.labels, p.le.T.copy(), name=p.name and f"dual({p.name})",
                      validate=False)


def direct_product(ps) -> FinitePoset:
    """Componentwise-ordered product; labels are label tuples."""
    ps = list(ps)
    if not ps:
        raise PosetError("empty product")
    size = 1
    for q in ps:
        size *= q.n
    if size > MAX_ELEMENTS:
        raise PosetError(f"product too large ({size} > {MAX_ELEMENTS} elements)")
    le = np.ones((1, 1), dtype=np.uint8)
    for q in ps:
        le = np.kron(le, q.le.astype(np.uint8))
    labels = ["(" + ",".join(combo) + ")"
              for combo in itertools.product(*[q.labels for q in ps])]
    return make_poset(labels, le.astype(bool), validate=False)


def make_chain(n: int) -> FinitePoset:
    """Chain with n elements labelled 0..n-1."""
    if n < 1:
        raise PosetError("chain needs at least one element")
    le = np.triu(np.ones((n, n), dtype=bool))
    return make_poset([str(i) for i in range(n)], le, name=f"C{n}",
                      validate=False)


def make_boolean(n: int) -> FinitePoset:
    """Boolean lattice 2^n, elements are subsets of {1..n} ordered by inclusion."""
    if n < 0:
        raise PosetError("negative exponent")
    if 1 << n > MAX_ELEMENTS:
        raise PosetError("boolean lattice too large")
    size = 1 << n
    masks = np.arange(size)
    le = (masks[:, None] & ~masks[None, :]) == 0
    labels = ["{" + ",".join(str(i + 1) for i in range(n) if m >> i & 1) + "}"
              for m in masks]
    return make_poset(labels, le, name=f"2^{n}", validate=False)


def make_chain_product(sizes) -> FinitePoset:
    sizes = list(sizes)
    p = direct_product([make_chain(s) for s in sizes])
    return FinitePoset(p.labels, p.le, p.zero, p.one,
                       name="x".join(str(s) for s in sizes))


def make_bounded_crown(n: int) -> FinitePoset:
    """Bounded crown: atoms q1..qn, coatoms qi* above every atom except qi.

    For n=3 this is isomorphic to 2^3; n=4 gives the standard 0-distributive
    example whose quotient has empty two-atom classes; n=5 gives a Boolean
    poset that is not a lattice.
    """
    if n < 2:
        raise PosetError("crown needs at least two atoms")
    labels = ["0"] + [f"q{i+1}" for i in range(n)] + \
        [f"q{i+1}*" for i in range(n)] + ["1"]
    size = 2 * n + 2
    le = np.eye(size, dtype=bool)
    le[0, :] = True
    le[:, size - 1] = True
    for i in range(n):
        for j in range(n):
            if i != j:
                le[1 + i, 1 + n + j] = True
    return make_poset(labels, le, name=f"crown{n}", validate=False)


def make_class_poset(n_atoms: int, class_sizes: dict[int, int],
                     dense_size: int = 1) -> FinitePoset:
    """Poset with prescribed annihilator-class sizes over atom supports.

    class_sizes maps a support bitmask (over n_atoms atoms, proper nonempty)
    to the number of elements carrying exactly that support. Each class is a
    chain internally; distinct classes are ordered by strict support
    inclusion. dense_size adds a chain of elements above everything.
    """
    full = (1 << n_atoms) - 1
    for mask in class_sizes:
        if mask <= 0 or mask >= full:
            raise PosetError("class supports must be proper nonempty subsets")
    elems: list[tuple[int, int]] = [(0, 0)]  # (support, copy); support 0 = zero
    for mask in sorted(class_sizes):
        for t in range(class_sizes[mask]):
            elems.append((mask, t))
    for t in range(dense_size):
        elems.append((full, t))
    m = len(elems)
    if m > MAX_ELEMENTS:
        raise PosetError("class poset too large")
    le = np.zeros((m, m), dtype=bool)
    for i, (s, a) in enumerate(elems):
        for j, (t, b) in enumerate(elems):
            if s == t:
                le[i, j] = a <= b
            else:
                le[i, j] = (s & ~t) == 0  # s proper subset of t, s may be 0
    labels = []
    for s, a in elems:
        if s == 0:
            labels.append("0")
        else:
            bits = "".join(str(i + 1) for i in range(n_atoms) if s >> i & 1)
            labels.append(f"x{bits}.{a}")
    return make_poset(labels, le, validate=False)


# ---------------------------------------------------------------------------
# JSON interchange

def poset_to_json(p: FinitePoset) -> str:
    lt = p.le & ~np.eye(p.n, dtype=bool)
    # covers: i < j with nothing strictly between
    strict2 = (lt.astype(np.float32) @ lt.astype(np.float32)) > 0.5
    covers = [[int(i), int(j)] for i, j in zip(*np.nonzero(lt & ~strict2))]
    covers.sort()
    return json.dumps({"name": p.name, "elements": list(p.labels),
                       "covers": covers})


def poset_from_dict(data: dict) -> FinitePoset:
    if not isinstance(data, dict) or "elements" not in data or "covers" not in data:
        raise PosetError("poset JSON needs 'elements' and 'covers'")
    labels = [str(x) for x in data["elements"]]
    n = len(labels)
    if len(set(labels)) != n:
        raise PosetError("duplicate labels in poset JSON")
    le = np.eye(n, dtype=bool)
    adj: list[list[int]] = [[] for _ in range(n)]
    for pair in data["covers"]:
        lo, hi = int(pair[0]), int(pair[1])
        if not (0 <= lo < n and 0 <= hi < n):
            raise PosetError("cover index out of range")
        if lo == hi:
            raise PosetError("self-cover in poset JSON")
        adj[lo].append(hi)
    # reflexive-transitive closure by DFS from each element
    for start in range(n):
        stack = list(adj[start])
        while stack:
            x = stack.pop()
            if not le[start, x]:
                le[start, x] = True
                stack.extend(adj[x])
    if (le & le.T & ~np.eye(n, dtype=bool)).any():
        raise PosetError("cover relation contains a cycle")
    return make_poset(labels, le, name=str(data.get("name", "")),
                      validate=False)


def poset_from_json(text: str) -> FinitePoset:
    return poset_from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# isomorphism

def _relation_refine(rel: np.ndarray) -> list[int]:
    n = rel.shape[0]
    colors = [0] * n
    for _ in range(n):
        sig = []
        for v in range(n):
            down = sorted(colors[u] for u in range(n) if rel[u, v] and u != v)
            up = sorted(colors[u] for u in range(n) if rel[v, u] and u != v)
            sig.append((colors[v], tuple(down), tuple(up)))
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if new == colors:
            break
        colors = new
    return colors


def relation_isomorphic(r1: np.ndarray, r2: np.ndarray) -> bool:
    """Backtracking isomorphism test for binary relations (posets, digraphs)."""
    n = r1.shape[0]
    if r2.shape[0] != n:
        return False
    c1, c2 = _relation_refine(r1), _relation_refine(r2)
    if sorted(c1) != sorted(c2):
        return False
    mapping = [-1] * n
    used = [False] * n

    def extend(v: int) -> bool:
        if v == n:
            return True
        for w in range(n):
            if used[w] or c1[v] != c2[w]:
                continue
            ok = True
            for u in range(v):
                if r1[u, v] != r2[mapping[u], w] or r1[v, u] != r2[w, mapping[u]]:
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used[w] = True
                if extend(v + 1):
                    return True
                used[w] = False
                mapping[v] = -1
        return False

    return extend(0)


def poset_isomorphic(p: FinitePoset, q: FinitePoset) -> bool:
    return relation_isomorphic(p.le, q.le)
