"""Fans in the coweight lattice of the restricted torus.

Coordinates are taken in the coweight basis dual to the simple restricted
roots, so the positive restricted Weyl chamber C+ is the nonnegative orthant.
A fan here is a smooth subdivision F+ of C+ together with the full fan F of
its translates under the restricted Weyl group.  The full fan is stored
explicitly (orbit of the positive cones); cones are sets of ray indices.
"""

from __future__ import annotations

from math import gcd

from .lattices import (
    Vector,
    as_matrix,
    kernel_basis,
    mat_det_unimodular_sign,
    mat_vec,
    transpose,
)
from .root_data import SymmetricDatum
from .weyl import WeylGroup


class NotSmooth(Exception):
    """A maximal cone's rays do not form a Z-basis, or a ray is imprimitive."""


class NotSubdivision(Exception):
    """The cones do not subdivide the positive chamber."""


class NotInChamber(Exception):
    """A ray lies outside the positive restricted Weyl chamber."""


class ConeNotInFan(Exception):
    """The queried cone does not belong to the fan."""


def _is_primitive(v: Vector) -> bool:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g == 1


def _primitive(v: Vector) -> Vector:
    g = 0
    for x in v:
        g = gcd(g, x)
    return tuple(x // g for x in v)


class Fan:
    """A smooth subdivision of C+ and the full fan of its Weyl translates."""

    def __init__(self, datum: SymmetricDatum, pos_rays, pos_max_cones):
        self.datum = datum
        r = datum.restricted_rank
        self.dim = r
        rays = [tuple(int(x) for x in v) for v in pos_rays]
        maxc = [tuple(sorted(set(c))) for c in pos_max_cones]
        self._validate_positive(rays, maxc)
        self._stabilizers: dict[frozenset[int], WeylGroup] = {}
        self.pos_rays = rays
        self.pos_max_cones = maxc
        faces: set[frozenset[int]] = {frozenset()}
        for c in maxc:
            s = list(c)
            for mask in range(1, 1 << len(s)):
                faces.add(frozenset(s[i] for i in range(len(s)) if mask >> i & 1))
        self.pos_cones = sorted(faces, key=lambda f: (len(f), sorted(f)))
        used = set().union(*[set(c) for c in maxc]) if maxc else set()
        if used != set(range(len(rays))):
            raise NotSubdivision("some ray lies in no maximal cone")
        self._build_full_fan()

    # -- validation ----------------------------------------------------------

    def _validate_positive(self, rays, maxc):
        r = self.dim
        seen = set()
        for v in rays:
            if len(v) != r:
                raise NotInChamber(f"ray {v} has wrong dimension")
            if any(x < 0 for x in v) or not any(v):
                raise NotInChamber(f"ray {v} is outside the positive chamber")
            if not _is_primitive(v):
                raise NotSmooth(f"ray {v} is not primitive")
            if v in seen:
                raise NotSubdivision(f"duplicate ray {v}")
            seen.add(v)
        if len(set(maxc)) != len(maxc):
            raise NotSubdivision("duplicate maximal cone")
        for c in maxc:
            if len(c) != r:
                raise NotSmooth(f"maximal cone {c} does not have {r} rays")
            m = transpose(as_matrix([rays[i] for i in c]))
            if abs(mat_det_unimodular_sign(m)) != 1:
                raise NotSmooth(f"maximal cone {c} is not unimodular")
        if r == 0:
            return
        if not maxc:
            raise NotSubdivision("no maximal cones")
        # facet pairing: every facet of a maximal cone lies on the chamber
        # boundary or is shared with exactly one other maximal cone
        facet_owners: dict[frozenset[int], list[tuple[int, int]]] = {}
        for ci, c in enumerate(maxc):
            for drop in c:
                facet = frozenset(c) - {drop}
                if self._on_chamber_boundary(rays, facet):
                    continue
                facet_owners.setdefault(facet, []).append((ci, drop))
        for facet, owners in facet_owners.items():
            if len(owners) != 2:
                raise NotSubdivision(
                    f"interior facet {sorted(facet)} shared by {len(owners)} cones"
                )
            chi = self._facet_normal(rays, facet)
            s0 = sum(a * b for a, b in zip(chi, rays[owners[0][1]]))
            s1 = sum(a * b for a, b in zip(chi, rays[owners[1][1]]))
            if s0 * s1 >= 0:
                raise NotSubdivision(
                    f"cones overlap across facet {sorted(facet)}"
                )
        # facet matching makes the covering number locally constant on the
        # chamber interior, so counting cones at one generic point decides
        # whether the cones tile C+ once (catches overlapping covers whose
        # facets all lie on the chamber boundary)
        if self._generic_covering_number(rays, maxc) != 1:
            raise NotSubdivision("cones do not cover the chamber exactly once")

    def _generic_covering_number(self, rays, maxc) -> int:
        """Number of maximal cones containing the symbolically perturbed
        interior point p = (1,...,1) + eps*e_1 + ... + eps^r*e_r.

        Coordinates of p are integer vectors over the basis (1, eps, ...,
        eps^r); sign tests are lexicographic.  The perturbed point lies on no
        rational hyperplane, so containment is unambiguous.
        """
        from .lattices import solve_integer

        r = self.dim
        # p as an r x (r+1) integer matrix: column 0 the base point, column
        # k the eps^k coefficient
        p = [[1] + [1 if k == i + 1 else 0 for k in range(r)] for i in range(r)]
        count = 0
        for c in maxc:
            m = as_matrix([rays[i] for i in c])  # rows are the cone's rays
            inside = True
            for pos in range(len(c)):
                e = tuple(1 if t == pos else 0 for t in range(len(c)))
                u = solve_integer(m, e)  # dual character of this ray
                assert u is not None
                coeff = tuple(
                    sum(u[i] * p[i][k] for i in range(r)) for k in range(r + 1)
                )
                nz = next((x for x in coeff if x != 0), 0)
                if nz <= 0:
                    inside = False
                    break
            if inside:
                count += 1
        return count

    def _on_chamber_boundary(self, rays, facet) -> bool:
        r = self.dim
        for k in range(r):
            if all(rays[i][k] == 0 for i in facet):
                return True
        return False

    @staticmethod
    def _facet_normal(rays, facet) -> Vector:
        if not facet:
            return (1,)
        basis = kernel_basis(as_matrix([rays[i] for i in facet]))
        assert len(basis) == 1
        return _primitive(basis[0])

    # -- full fan ------------------------------------------------------------

    def _build_full_fan(self):
        datum = self.datum
        ray_list: list[Vector] = list(self.pos_rays)
        ray_index: dict[Vector, int] = {v: i for i, v in enumerate(ray_list)}
        perms: dict[int, tuple[int, ...]] = {}
        # first pass: discover all translated rays, in W_H BFS order
        for w in datum.weyl_H.elements:
            m = datum.restricted_cochar_matrix(w)
            for v in self.pos_rays:
                u = mat_vec(m, v)
                if u not in ray_index:
                    ray_index[u] = len(ray_list)
                    ray_list.append(u)
        for w in datum.weyl_H.elements:
            m = datum.restricted_cochar_matrix(w)
            images = []
            for v in ray_list:
                u = mat_vec(m, v)
                if u not in ray_index:
                    raise NotSubdivision("Weyl action does not permute the rays")
                images.append(ray_index[u])
            perms[datum.weyl_H.index[w]] = tuple(images)
        self.rays = ray_list
        self.ray_index = ray_index
        self._ray_perm = perms
        cones: set[frozenset[int]] = set()
        for tau in self.pos_cones:
            for perm in perms.values():
                cones.add(frozenset(perm[i] for i in tau))
        self.cones = cones
        self.max_cones = sorted(
            (c for c in cones if len(c) == self.dim), key=sorted
        )

    # -- queries -------------------------------------------------------------

    def ray_permutation(self, w) -> tuple[int, ...]:
        """Permutation of the full ray set induced by w in W_H."""
        return self._ray_perm[self.datum.weyl_H.index[as_matrix(w)]]

    def translate_cone(self, w, cone) -> frozenset[int]:
        perm = self.ray_permutation(w)
        return frozenset(perm[i] for i in cone)

    def is_positive_cone(self, cone) -> bool:
        return frozenset(cone) in set(map(frozenset, self.pos_cones))

    def cone_stabilizer(self, tau) -> WeylGroup:
        """Subgroup of W_H fixing the cone setwise (memoized)."""
        tau = frozenset(tau)
        cached = self._stabilizers.get(tau)
        if cached is not None:
            return cached
        if tau not in {frozenset(c) for c in self.pos_cones}:
            raise ConeNotInFan(f"{sorted(tau)} is not a cone of the positive fan")
        elems = [
            w
            for w in self.datum.weyl_H.elements
            if self.translate_cone(w, tau) == tau
        ]
        sub = self.datum.weyl_H.subgroup_from_elements(elems)
        self._stabilizers[tau] = sub
        return sub

    def adjacent_max_cone_pairs(self) -> list[tuple[int, int, Vector]]:
        """Pairs (i, j) of positive maximal cones sharing a facet, i < j,
        with the primitive facet character signed positive on cone j's
        extra ray."""
        out = []
        for i in range(len(self.pos_max_cones)):
            for j in range(i + 1, len(self.pos_max_cones)):
                chi = self.shared_facet_character(i, j)
                if chi is not None:
                    out.append((i, j, chi))
        return out

    def shared_facet_character(self, i: int, j: int) -> Vector | None:
        """Primitive character of X*(T/T_H) vanishing on the common facet of
        positive maximal cones i and j, positive on cone j's extra ray;
        None if the cones do not share a facet."""
        if i == j:
            return None
        ci = set(self.pos_max_cones[i])
        cj = set(self.pos_max_cones[j])
        common = ci & cj
        if len(common) != self.dim - 1:
            return None
        chi = self._facet_normal(self.pos_rays, frozenset(common))
        (extra_j,) = cj - common
        val = sum(a * b for a, b in zip(chi, self.pos_rays[extra_j]))
        if val == 0:
            return None
        if val < 0:
            chi = tuple(-x for x in chi)
        # genuine shared facet: the cones must sit on opposite sides
        (extra_i,) = ci - common
        val_i = sum(a * b for a, b in zip(chi, self.pos_rays[extra_i]))
        if val_i >= 0:
            return None
        return chi

    def facet_orthogonal_restricted_roots(self, sigma: int) -> list[int]:
        """Indices k of simple restricted roots gamma_k such that positive
        maximal cone sigma has a facet in the wall gamma_k-perp."""
        if not 0 <= sigma < len(self.pos_max_cones):
            raise ConeNotInFan(f"no positive maximal cone {sigma}")
        cone = self.pos_max_cones[sigma]
        out = []
        for k in range(self.dim):
            for drop in cone:
                facet = [i for i in cone if i != drop]
                if all(self.pos_rays[i][k] == 0 for i in facet):
                    out.append(k)
                    break
        return out

    def dual_basis(self, max_cone) -> dict[int, Vector]:
        """For a full-fan maximal cone: the characters u_j with
        <u_j, v_i> = delta_ij over the cone's rays (smooth toric chart)."""
        cone = sorted(max_cone)
        m = as_matrix([self.rays[i] for i in cone])  # rows are rays
        n = len(cone)
        # invert the (unimodular) ray matrix exactly
        from .lattices import solve_integer

        duals = {}
        for pos, j in enumerate(cone):
            e = tuple(1 if t == pos else 0 for t in range(n))
            # u with rays . u = e, i.e. <u, v_i> = delta_ij
            u = solve_integer(m, e)
            assert u is not None
            duals[j] = u
        return duals

    def to_json(self) -> dict:
        return {
            "rays": [list(v) for v in self.pos_rays],
            "max_cones": [list(c) for c in self.pos_max_cones],
        }


def build_positive_fan(
    datum: SymmetricDatum, subdivision: dict | None = None
) -> Fan:
    """Build F+ from an optional subdivision spec.

    Without a spec this is the wonderful fan: the faces of C+ itself, rays
    the coweight basis vectors.  A spec is {"rays": [...], "max_cones":
    [[...], ...]} in coweight coordinates.
    """
    r = datum.restricted_rank
    if subdivision is None:
        rays = [tuple(1 if j == k else 0 for j in range(r)) for k in range(r)]
        return Fan(datum, rays, [tuple(range(r))])
    return Fan(datum, subdivision["rays"], subdivision["max_cones"])
