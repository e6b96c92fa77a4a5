"""Finite matrix groups generated by reflections, with coset machinery.

Groups are materialized as explicit sets of integer matrices acting on a
character lattice.  Enumeration is breadth-first over generator products, so
element order is deterministic and stable across runs.
"""

from __future__ import annotations

from .lattices import Matrix, as_matrix, identity_matrix, mat_mul


class NotSubgroup(Exception):
    """The claimed subgroup contains elements outside the ambient group."""


class GroupTooLarge(Exception):
    """Generator closure exceeded the configured size cap."""


class WeylGroup:
    """A finite group of unimodular integer matrices.

    `elements` is in BFS order over generator products (identity first);
    this order is the canonical one used for coset representatives.
    """

    def __init__(self, generators, elements, inverses=None):
        self.generators: tuple[Matrix, ...] = tuple(as_matrix(g) for g in generators)
        self.elements: tuple[Matrix, ...] = tuple(as_matrix(e) for e in elements)
        self.index: dict[Matrix, int] = {e: i for i, e in enumerate(self.elements)}
        self.dim = len(self.elements[0]) if self.elements else 0
        self._inverses: dict[Matrix, Matrix] = dict(inverses or {})

    @classmethod
    def generate(cls, generators, dim: int, max_order: int = 2_000_000) -> "WeylGroup":
        gens = [as_matrix(g) for g in generators]
        gen_invs = {}
        for g in gens:
            # reflections are involutions, but support any finite-order generator
            p = g
            while mat_mul(p, g) != identity_matrix(dim):
                p = mat_mul(p, g)
            gen_invs[g] = p
        ident = identity_matrix(dim)
        elements = [ident]
        inverses = {ident: ident}
        queue = [ident]
        while queue:
            w = queue.pop(0)
            for g in gens:
                x = mat_mul(w, g)
                if x not in inverses:
                    if len(elements) >= max_order:
                        raise GroupTooLarge(
                            f"group closure exceeds {max_order} elements"
                        )
                    inverses[x] = mat_mul(gen_invs[g], inverses[w])
                    elements.append(x)
                    queue.append(x)
        return cls(gens, elements, inverses)

    def inverse(self, w) -> Matrix:
        w = as_matrix(w)
        inv = self._inverses.get(w)
        if inv is None:
            p = w
            while mat_mul(p, w) != identity_matrix(self.dim):
                p = mat_mul(p, w)
            inv = p
            self._inverses[w] = inv
        return inv

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, w) -> bool:
        return as_matrix(w) in self.index

    def subgroup_from_elements(self, elements) -> "WeylGroup":
        elems = [as_matrix(e) for e in elements]
        for e in elems:
            if e not in self.index:
                raise NotSubgroup("element outside the ambient group")
        # keep ambient BFS order
        elems.sort(key=lambda e: self.index[e])
        gens = _greedy_generators(elems, self.dim)
        invs = {e: self.inverse(e) for e in elems}
        return WeylGroup(gens, elems, invs)

    def subgroup_generated(self, generators) -> "WeylGroup":
        gens = [as_matrix(g) for g in generators]
        for g in gens:
            if g not in self.index:
                raise NotSubgroup("generator outside the ambient group")
        sub = WeylGroup.generate(gens, self.dim, max_order=len(self) + 1)
        return self.subgroup_from_elements(sub.elements)


def _greedy_generators(elements, dim: int) -> list[Matrix]:
    """A small generating set for a group given as an explicit element list:
    walk the list and keep each element not generated by those kept so far."""
    ident = identity_matrix(dim)
    generated = {ident}
    gens: list[Matrix] = []
    for e in elements:
        if e in generated:
            continue
        gens.append(e)
        queue = list(generated)
        generated.add(e)
        queue.append(e)
        while queue:
            w = queue.pop()
            for g in gens:
                x = mat_mul(w, g)
                if x not in generated:
                    generated.add(x)
                    queue.append(x)
    return gens


def coset_representatives(group: WeylGroup, subgroup: WeylGroup) -> list[Matrix]:
    """One representative per left coset w*subgroup, in ambient BFS order.

    The representative of a coset is its element of minimal BFS index.
    """
    if len(group) % max(len(subgroup), 1) != 0:
        raise NotSubgroup("subgroup order does not divide group order")
    for h in subgroup.elements:
        if h not in group.index:
            raise NotSubgroup("subgroup element outside the group")
    assigned: set[int] = set()
    reps: list[Matrix] = []
    for w in group.elements:
        i = group.index[w]
        if i in assigned:
            continue
        reps.append(w)
        for h in subgroup.elements:
            assigned.add(group.index[mat_mul(w, h)])
    assert len(reps) * len(subgroup) == len(group)
    return reps


def coset_representative_of(
    group: WeylGroup, subgroup: WeylGroup, w: Matrix
) -> Matrix:
    """Canonical representative of the coset w*subgroup."""
    best = None
    for h in subgroup.elements:
        x = mat_mul(w, h)
        i = group.index[x]
        if best is None or i < best[0]:
            best = (i, x)
    assert best is not None
    return best[1]
