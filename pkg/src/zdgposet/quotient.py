"""Quotient of a poset by annihilator equality, labelled by atom supports.

Two nonzero elements are identified when their annihilators coincide, which
for a finite poset with 0 happens exactly when the same atoms lie below them.
Classes therefore carry a support bitmask over the atoms; the induced order
is subset order on supports, the zero class sitting at the bottom.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .poset import (FinitePoset, PosetError, atoms, make_poset, support_masks,
                    zero_divisors)


def _support_tuple(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i + 1)
        mask >>= 1
        i += 1
    return tuple(out)


def support_label(mask: int, n_atoms: int) -> str:
    if mask == 0:
        return "P_0"
    idx = _support_tuple(mask)
    if n_atoms <= 9:
        return "P_" + "".join(str(i) for i in idx)
    return "P_" + ".".join(str(i) for i in idx)


@dataclass(frozen=True)
class QuotientPoset:
    base: FinitePoset
    classes: tuple[tuple[int, ...], ...]  # class 0 is the zero class {0}
    supports: tuple[int, ...]             # bitmask per class, 0 for the zero class
    n_atoms: int

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    @property
    def full_mask(self) -> int:
        return (1 << self.n_atoms) - 1

    def label(self, c: int) -> str:
        return support_label(self.supports[c], self.n_atoms)

    def class_of(self, element: int) -> int:
        for c, members in enumerate(self.classes):
            if element in members:
                return c
        raise PosetError(f"element {element} not in any class")

    def class_by_support(self, mask: int) -> int | None:
        try:
            return self.supports.index(mask)
        except ValueError:
            return None

    def dense_class(self) -> int | None:
        return self.class_by_support(self.full_mask)

    def atom_class(self, i: int) -> int:
        """Class P_i holding the i-th atom (0-based atom position)."""
        c = self.class_by_support(1 << i)
        assert c is not None  # the atom itself always lies in it
        return c


def quotient(p: FinitePoset) -> QuotientPoset:
    """Partition P into the zero class plus one class per occupied support."""
    supp = support_masks(p)
    ats = atoms(p)
    groups: dict[int, list[int]] = {}
    for x in range(p.n):
        if x == p.zero:
            continue
        groups.setdefault(supp[x], []).append(x)
    order = sorted(groups, key=_support_tuple)
    classes = [(p.zero,)] + [tuple(groups[m]) for m in order]
    supports = [0] + order
    return QuotientPoset(base=p, classes=tuple(classes),
                         supports=tuple(supports), n_atoms=len(ats))


def class_order_le(q: QuotientPoset, c1: int, c2: int) -> bool:
    """Class order: support containment (equivalently reverse annihilator inclusion)."""
    return (q.supports[c1] & ~q.supports[c2]) == 0


def classes_adjacent(q: QuotientPoset, c1: int, c2: int) -> bool:
    """Zero-divisor adjacency between classes: disjoint nonzero supports."""
    s1, s2 = q.supports[c1], q.supports[c2]
    return s1 != 0 and s2 != 0 and (s1 & s2) == 0


def class_pseudocomplement(q: QuotientPoset, atom_class: int) -> int:
    """For an atom class P_i, the class on the complementary support."""
    s = q.supports[atom_class]
    if bin(s).count("1") != 1:
        raise PosetError("class_pseudocomplement expects an atom class")
    comp = q.full_mask & ~s
    c = q.class_by_support(comp)
    if c is None:
        raise PosetError(
            f"pseudocomplement class {support_label(comp, q.n_atoms)} is empty")
    return c


def quotient_is_boolean(q: QuotientPoset) -> bool:
    """True iff every nonempty atom subset carries a class (full subset lattice)."""
    return len(q.classes) == 1 << q.n_atoms


def quotient_as_poset(q: QuotientPoset) -> FinitePoset:
    """The quotient itself as a FinitePoset on class labels."""
    n = q.n_classes
    le = np.zeros((n, n), dtype=bool)
    for a in range(n):
        for b in range(n):
            le[a, b] = class_order_le(q, a, b)
    labels = [q.label(c) for c in range(n)]
    return make_poset(labels, le, name="[P]", validate=False)


def class_sizes_by_support(q: QuotientPoset) -> dict[int, int]:
    return {q.supports[c]: len(q.classes[c]) for c in range(q.n_classes)
            if q.supports[c] != 0}


def graph_vertex_classes(q: QuotientPoset) -> list[int]:
    """Classes that are zero-divisor graph vertices: nonzero, non-dense."""
    zd = zero_divisors(q.base)
    out = []
    for c in range(q.n_classes):
        if q.supports[c] == 0:
            continue
        if q.supports[c] == q.full_mask:
            continue
        out.append(c)
    # classes of zero divisors only; with at least two atoms every proper
    # support is one, with a single atom there are none
    return [c for c in out if q.classes[c][0] in zd]
