"""Exact arithmetic in integral group rings Z[L] of character lattices.

Elements are finitely supported maps from lattice points (integer tuples) to
nonzero integer coefficients; this is where R(T), R(T_H) and R(T/T_H) live.
Includes the principal-ideal congruence test f = g mod (1 - e^{-chi}) used by
the fixed-point model, plus Weyl-action and invariant utilities.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .lattices import Lattice, Matrix, Vector, as_matrix, mat_vec, smith_normal_form


class LatticeMismatch(Exception):
    """Operands live over different lattices."""


class ZeroCharacter(Exception):
    """Congruence modulus must be a nonzero character."""


class GroupRingElement:
    """A sparse element of Z[L]: finitely many terms c * e^u, u in L."""

    __slots__ = ("lattice", "terms")

    def __init__(self, lattice: Lattice, terms: Mapping[Vector, int] | None = None):
        self.lattice = lattice
        clean: dict[Vector, int] = {}
        for u, c in (terms or {}).items():
            u = tuple(int(x) for x in u)
            if len(u) != lattice.rank:
                raise LatticeMismatch(
                    f"exponent {u} has wrong length for rank {lattice.rank}"
                )
            c = int(c)
            if c:
                clean[u] = clean.get(u, 0) + c
                if not clean[u]:
                    del clean[u]
        self.terms = clean

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, lattice: Lattice) -> "GroupRingElement":
        return cls(lattice, {})

    @classmethod
    def one(cls, lattice: Lattice) -> "GroupRingElement":
        return cls(lattice, {lattice.zero(): 1})

    @classmethod
    def constant(cls, lattice: Lattice, c: int) -> "GroupRingElement":
        return cls(lattice, {lattice.zero(): c})

    @classmethod
    def monomial(cls, lattice: Lattice, u: Sequence[int], c: int = 1) -> "GroupRingElement":
        return cls(lattice, {tuple(u): c})

    # -- ring structure ------------------------------------------------------

    def _check(self, other: "GroupRingElement"):
        if self.lattice != other.lattice:
            raise LatticeMismatch("operands live over different lattices")

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        self._check(other)
        out = dict(self.terms)
        for u, c in other.terms.items():
            out[u] = out.get(u, 0) + c
        return GroupRingElement(self.lattice, out)

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement(self.lattice, {u: -c for u, c in self.terms.items()})

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def __mul__(self, other) -> "GroupRingElement":
        if isinstance(other, int):
            return GroupRingElement(
                self.lattice, {u: c * other for u, c in self.terms.items()}
            )
        self._check(other)
        out: dict[Vector, int] = {}
        for u, c in self.terms.items():
            for v, d in other.terms.items():
                w = tuple(a + b for a, b in zip(u, v))
                out[w] = out.get(w, 0) + c * d
        return GroupRingElement(self.lattice, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "GroupRingElement":
        if k < 0:
            if len(self.terms) == 1:
                (u, c), = self.terms.items()
                if c in (1, -1):
                    inv = GroupRingElement(
                        self.lattice, {tuple(-x for x in u): c}
                    )
                    return inv ** (-k)
            raise ValueError("negative powers only for unit monomials")
        out = GroupRingElement.one(self.lattice)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupRingElement)
            and self.lattice == other.lattice
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.lattice, tuple(sorted(self.terms.items()))))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for u in sorted(self.terms):
            c = self.terms[u]
            bits.append(f"{c}*e{list(u)}")
        return " + ".join(bits)

    # -- actions -------------------------------------------------------------

    def act(self, w: Matrix) -> "GroupRingElement":
        """Relabel exponents u -> w(u) for an integer matrix preserving L."""
        w = as_matrix(w)
        out: dict[Vector, int] = {}
        for u, c in self.terms.items():
            v = mat_vec(w, u)
            out[v] = out.get(v, 0) + c
        return GroupRingElement(self.lattice, out)

    def map_exponents(self, fn) -> "GroupRingElement":
        out: dict[Vector, int] = {}
        for u, c in self.terms.items():
            v = tuple(fn(u))
            out[v] = out.get(v, 0) + c
        return GroupRingElement(self.lattice, out)

    def to_json(self) -> dict:
        return {
            "terms": [
                {"exp": list(u), "coef": self.terms[u]} for u in sorted(self.terms)
            ]
        }

    @classmethod
    def from_json(cls, lattice: Lattice, data: dict) -> "GroupRingElement":
        return cls(
            lattice, {tuple(t["exp"]): int(t["coef"]) for t in data["terms"]}
        )


def _content_and_primitive(chi: Vector) -> tuple[int, Vector]:
    from math import gcd

    g = 0
    for x in chi:
        g = gcd(g, x)
    return g, tuple(x // g for x in chi)


def congruent_mod(
    f: GroupRingElement, g: GroupRingElement, chi: Sequence[int]
) -> bool:
    """True iff f - g lies in the principal ideal (1 - e^{-chi}).

    Writes chi = k * chi0 with chi0 primitive, changes basis so chi0 becomes
    the first coordinate, and performs exact Laurent division of f - g by
    1 - t^{-k} in that coordinate, coefficientwise over the complementary
    group ring.
    """
    chi = tuple(int(x) for x in chi)
    if not any(chi):
        raise ZeroCharacter("congruence modulus must be nonzero")
    diff = f - g
    if not diff:
        return True
    k, chi0 = _content_and_primitive(chi)
    # unimodular U with U*chi0 = e_1: first new coordinate is the t-degree
    u_mat, d, v = smith_normal_form(tuple((x,) for x in chi0))
    assert d[0][0] == 1
    sign = v[0][0]  # +-1
    if sign == -1:
        u_mat = tuple(tuple(-x for x in row) for row in u_mat)

    # group terms by the complementary coordinates
    groups: dict[Vector, dict[int, int]] = {}
    for expo, coef in diff.terms.items():
        y = mat_vec(u_mat, expo)
        groups.setdefault(y[1:], {})[y[0]] = coef
    for poly in groups.values():
        if not _laurent_divisible(poly, k):
            return False
    return True


def _laurent_divisible(poly: dict[int, int], k: int) -> bool:
    """Exact division test of a Laurent polynomial in t by 1 - t^{-k}.

    Divides from the lowest degree upward and checks for zero remainder.
    """
    rem = dict(poly)
    while rem:
        lo = min(rem)
        hi = max(rem)
        if hi - lo < k:
            return False
        c = rem.pop(lo)
        # cancel the lowest term against c * t^{lo} * (1 - t^{k})
        top = lo + k
        rem[top] = rem.get(top, 0) + c
        if rem[top] == 0:
            del rem[top]
    return True


def congruence_class_sums(
    f: GroupRingElement, g: GroupRingElement, chi: Sequence[int]
) -> bool:
    """Independent oracle for primitive chi: image of f - g in Z[L / Z*chi].

    Partitions the support of f - g into classes of exponents differing by an
    integer multiple of chi and checks that every class sums to zero.  Valid
    only for primitive chi (for which the kernel of Z[L] -> Z[L/Z*chi] is
    exactly the ideal (1 - e^{-chi})).
    """
    chi = tuple(int(x) for x in chi)
    if not any(chi):
        raise ZeroCharacter("congruence modulus must be nonzero")
    k, _ = _content_and_primitive(chi)
    if k != 1:
        raise ValueError("class-sum oracle requires a primitive character")
    diff = f - g
    pivot = next(i for i, x in enumerate(chi) if x)
    sums: dict[tuple, int] = {}
    for expo, coef in diff.terms.items():
        # canonical class key: shift expo by t*chi so the pivot coordinate
        # lands in [0, |chi_pivot|)
        t = expo[pivot] // chi[pivot]
        key = tuple(x - t * c for x, c in zip(expo, chi))
        sums[key] = sums.get(key, 0) + coef
    return all(v == 0 for v in sums.values())


def orbit_sum(group, f: GroupRingElement) -> GroupRingElement:
    """Sum of act(w, f) over all elements w of the group (or iterable)."""
    elements = getattr(group, "elements", group)
    out = GroupRingElement.zero(f.lattice)
    for w in elements:
        out = out + f.act(w)
    return out


def is_invariant(group, f: GroupRingElement) -> bool:
    """True iff f is fixed by every generator (hence element) of the group."""
    gens: Iterable = getattr(group, "generators", None) or getattr(
        group, "elements", group
    )
    return all(f.act(w) == f for w in gens)
