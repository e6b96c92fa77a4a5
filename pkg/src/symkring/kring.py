"""Two models of equivariant K-classes over a compactified symmetric space.

Localization model: a class is the tuple of its restrictions to the torus
fixed points, indexed by (maximal positive cone, Weyl coset); membership in
the K-ring is a family of congruences mod (1 - e^{-chi}) along the invariant
curves.  Stanley-Reisner model: a class is a Laurent polynomial in the ray
variables of the full fan, tensored with R(T_H), reduced modulo the
Stanley-Reisner ideal; the reduced forms split into a direct sum of pieces
C_tau indexed by positive cones, with an explicit componentwise product.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product as iter_product

from .fans import ConeNotInFan, Fan
from .group_ring import GroupRingElement, congruent_mod
from .lattices import Lattice, Matrix, Vector, as_matrix, mat_mul, mat_vec
from .root_data import SymmetricDatum
from .weyl import coset_representatives


class NotInvariant(Exception):
    """Input to the decomposition is not invariant under the group action."""


class DecompositionResidual(Exception):
    """Internal error: decomposition components do not sum back to the input."""


class RelationViolation(Exception):
    """A presentation relation does not evaluate to zero."""


class NoPreimageInBox(Exception):
    """No Stanley-Reisner representative exists within the exponent bound."""


# -- fixed points ------------------------------------------------------------


@dataclass(frozen=True)
class FixedPoint:
    """A torus fixed point: maximal positive cone x canonical Weyl coset."""

    cone: int  # index into fan.pos_max_cones
    coset: int  # index into the coset-representative list for the scope

    def label(self) -> str:
        return f"s{self.cone}.w{self.coset}"


class FixedPointIndex:
    """Coset bookkeeping for one scope: X uses W/W_L, Y uses W_H/W_L."""

    def __init__(self, datum: SymmetricDatum, fan: Fan, scope: str):
        if scope not in ("X", "Y"):
            raise ValueError(f"scope must be 'X' or 'Y', got {scope!r}")
        self.datum = datum
        self.fan = fan
        self.scope = scope
        self.group = datum.weyl if scope == "X" else datum.weyl_H
        self.reps = coset_representatives(self.group, datum.weyl_L)
        self._rep_index = {w: i for i, w in enumerate(self.reps)}
        self._coset_of: dict[Matrix, int] = {}
        for i, w in enumerate(self.reps):
            for h in datum.weyl_L.elements:
                self._coset_of[mat_mul(w, h)] = i
        self.points = [
            FixedPoint(s, c)
            for s in range(len(fan.pos_max_cones))
            for c in range(len(self.reps))
        ]

    def coset_of(self, w) -> int:
        return self._coset_of[as_matrix(w)]

    def rep(self, coset: int) -> Matrix:
        return self.reps[coset]


def enumerate_fixed_points(
    datum: SymmetricDatum, fan: Fan, scope: str = "X"
) -> FixedPointIndex:
    """Fixed points: F+(r) x W/W_L for the whole space, F+(r) x W_H/W_L for
    the closed toric part."""
    return FixedPointIndex(datum, fan, scope)


# -- invariant curves --------------------------------------------------------


@dataclass(frozen=True)
class CurveRecord:
    """An invariant curve: its two fixed endpoints and its torus character.

    Types: 2 = curve inside an open-orbit chart (character a root alpha
    outside the Levi); 3 = curve across a chamber wall (character a restricted
    simple root gamma); 4 = curve joining the toric points of two adjacent
    maximal cones (character the shared facet character chi).
    """

    curve_type: int
    endpoints: frozenset[FixedPoint]
    character: Vector  # in X*(T), sign-canonical

    def label(self) -> str:
        pts = sorted((p.cone, p.coset) for p in self.endpoints)
        return f"type{self.curve_type}:" + "|".join(f"s{a}.w{b}" for a, b in pts)


def _canonical_sign(v: Vector) -> Vector:
    neg = tuple(-x for x in v)
    return v if v >= neg else neg


def enumerate_invariant_curves(
    datum: SymmetricDatum, fan: Fan, scope: str = "X"
) -> list[CurveRecord]:
    """All invariant curves for the scope, each listed once.

    Whole-space scope: Weyl translates of the three base-curve types.
    Toric-part scope: only wall and adjacency curves (types 3 and 4), with
    translates from W_H.
    """
    idx = FixedPointIndex(datum, fan, scope)
    curves: dict[tuple, CurveRecord] = {}

    def add(ctype: int, p1: FixedPoint, p2: FixedPoint, chi: Vector):
        chi = _canonical_sign(chi)
        key = (frozenset((p1, p2)), chi)
        if key not in curves:
            curves[key] = CurveRecord(ctype, frozenset((p1, p2)), chi)

    pos_levi = set(datum.positive_phi_L)
    chart_roots = [a for a in datum.positive_roots if a not in pos_levi]
    for s in range(len(fan.pos_max_cones)):
        for c, w in enumerate(idx.reps):
            if scope == "X":
                for alpha in chart_roots:
                    w2 = mat_mul(w, datum.reflection_by_root[alpha])
                    add(
                        2,
                        FixedPoint(s, c),
                        FixedPoint(s, idx.coset_of(w2)),
                        mat_vec(w, alpha),
                    )
            for k in fan.facet_orthogonal_restricted_roots(s):
                gd = datum.gamma_data[k]
                w2 = mat_mul(w, gd.reflection)
                add(
                    3,
                    FixedPoint(s, c),
                    FixedPoint(s, idx.coset_of(w2)),
                    mat_vec(w, gd.gamma),
                )
    for i, j, chi in fan.adjacent_max_cone_pairs():
        chi_t = datum.embed_restricted(chi)
        for c, w in enumerate(idx.reps):
            add(4, FixedPoint(i, c), FixedPoint(j, c), mat_vec(w, chi_t))
    return sorted(
        curves.values(),
        key=lambda r: (r.curve_type, sorted((p.cone, p.coset) for p in r.endpoints), r.character),
    )


# -- localization model ------------------------------------------------------


@dataclass
class LocalizationClass:
    """The fixed-point model of a K-class: one R(T) value per fixed point."""

    datum: SymmetricDatum
    fan: Fan
    scope: str
    values: dict[FixedPoint, GroupRingElement]

    def value(self, cone: int, coset: int) -> GroupRingElement:
        return self.values[FixedPoint(cone, coset)]

    def __add__(self, other: "LocalizationClass") -> "LocalizationClass":
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other: "LocalizationClass") -> "LocalizationClass":
        return self._zip(other, lambda a, b: a - b)

    def __mul__(self, other: "LocalizationClass") -> "LocalizationClass":
        return self._zip(other, lambda a, b: a * b)

    def _zip(self, other, op) -> "LocalizationClass":
        assert self.scope == other.scope and self.fan is other.fan
        return LocalizationClass(
            self.datum,
            self.fan,
            self.scope,
            {p: op(v, other.values[p]) for p, v in self.values.items()},
        )

    def power(self, k: int) -> "LocalizationClass":
        return LocalizationClass(
            self.datum,
            self.fan,
            self.scope,
            {p: v**k for p, v in self.values.items()},
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LocalizationClass)
            and self.scope == other.scope
            and self.values == other.values
        )

    def to_json(self) -> dict:
        return {
            p.label(): self.values[p].to_json()
            for p in sorted(self.values, key=lambda q: (q.cone, q.coset))
        }


def constant_class(
    datum: SymmetricDatum, fan: Fan, scope: str, f: GroupRingElement
) -> LocalizationClass:
    idx = FixedPointIndex(datum, fan, scope)
    return LocalizationClass(datum, fan, scope, {p: f for p in idx.points})


def line_bundle_class(
    datum: SymmetricDatum, fan: Fan, u, scope: str = "X"
) -> LocalizationClass:
    """Class of the line bundle attached to u in X*(T/T_H), pulled back from
    the least subdivided compactification: restriction e^{w(u)} everywhere."""
    idx = FixedPointIndex(datum, fan, scope)
    u_t = datum.embed_restricted(u)
    vals = {}
    for p in idx.points:
        w = idx.rep(p.coset)
        vals[p] = GroupRingElement.monomial(datum.char_lattice, mat_vec(w, u_t))
    return LocalizationClass(datum, fan, scope, vals)


def ray_class(
    datum: SymmetricDatum, fan: Fan, j: int, scope: str = "X"
) -> LocalizationClass:
    """Class of the boundary divisor of positive ray j: restriction at a
    fixed point of cone sigma is e^{w(u_j)} with u_j the sigma-local dual
    character of the ray, and 1 on cones not containing the ray."""
    idx = FixedPointIndex(datum, fan, scope)
    one = GroupRingElement.one(datum.char_lattice)
    duals = {}
    for s, cone in enumerate(fan.pos_max_cones):
        if j in cone:
            duals[s] = fan.dual_basis(frozenset(cone))[j]
    vals = {}
    for p in idx.points:
        if p.cone in duals:
            w = idx.rep(p.coset)
            u_t = datum.embed_restricted(duals[p.cone])
            vals[p] = GroupRingElement.monomial(
                datum.char_lattice, mat_vec(w, u_t)
            )
        else:
            vals[p] = one
    return LocalizationClass(datum, fan, scope, vals)


def kt_membership(c: LocalizationClass) -> tuple[bool, dict | None]:
    """Decide membership of a localization tuple in the torus-equivariant
    K-ring; on failure return the first violated congruence as a witness.

    (i) values at wall-reflected cosets agree mod (1 - e^{-w(gamma)}) when
    the cone has a facet in the wall of gamma; (ii) values of adjacent cones
    agree mod (1 - e^{-w(chi)}) for the shared facet character chi.
    """
    datum, fan = c.datum, c.fan
    idx = FixedPointIndex(datum, fan, c.scope)
    for s in range(len(fan.pos_max_cones)):
        for k in fan.facet_orthogonal_restricted_roots(s):
            gd = datum.gamma_data[k]
            for ci, w in enumerate(idx.reps):
                cj = idx.coset_of(mat_mul(w, gd.reflection))
                chi = mat_vec(w, gd.gamma)
                if not congruent_mod(c.value(s, ci), c.value(s, cj), chi):
                    return False, {
                        "congruence": "wall",
                        "cone": s,
                        "cosets": [ci, cj],
                        "character": list(chi),
                    }
    for i, j, chi in fan.adjacent_max_cone_pairs():
        chi_t = datum.embed_restricted(chi)
        for ci, w in enumerate(idx.reps):
            wchi = mat_vec(w, chi_t)
            if not congruent_mod(c.value(i, ci), c.value(j, ci), wchi):
                return False, {
                    "congruence": "facet",
                    "cones": [i, j],
                    "coset": ci,
                    "character": list(wchi),
                }
    return True, None


def kg_membership(
    datum: SymmetricDatum, fan: Fan, f_by_cone
) -> tuple[bool, dict | None]:
    """Decide membership of a collapsed tuple (one R(T) value per maximal
    positive cone) in the group-equivariant K-ring.

    Each value must be Levi-invariant; (i) wall reflections fix it mod
    (1 - e^{-gamma}); (ii) adjacent values agree mod (1 - e^{-chi})."""
    f_by_cone = list(f_by_cone)
    assert len(f_by_cone) == len(fan.pos_max_cones)
    for s, f in enumerate(f_by_cone):
        for i in datum.delta_L:
            refl = datum.simple_reflection_matrices[i]
            if f.act(refl) != f:
                return False, {"congruence": "levi", "cone": s, "root": i}
    for s, f in enumerate(f_by_cone):
        for k in fan.facet_orthogonal_restricted_roots(s):
            gd = datum.gamma_data[k]
            if not congruent_mod(f.act(gd.reflection), f, gd.gamma):
                return False, {
                    "congruence": "wall",
                    "cone": s,
                    "character": list(gd.gamma),
                }
    for i, j, chi in fan.adjacent_max_cone_pairs():
        chi_t = datum.embed_restricted(chi)
        if not congruent_mod(f_by_cone[i], f_by_cone[j], chi_t):
            return False, {
                "congruence": "facet",
                "cones": [i, j],
                "character": list(chi_t),
            }
    return True, None


# -- character-lattice splitting ---------------------------------------------


def kiso_lattice(datum: SymmetricDatum) -> Lattice:
    """X*(T/T_H) + X*(T_H), the split form of the character lattice."""
    r = datum.restricted_rank
    m = datum.char_H_lattice.rank
    labels = datum.restricted_lattice.basis_labels + datum.char_H_lattice.basis_labels
    return Lattice(r + m, labels)


def kiso_split(datum: SymmetricDatum, f: GroupRingElement) -> GroupRingElement:
    """Ring isomorphism R(T) -> R(T/T_H) x R(T_H) fixed by the chosen section:
    exponent u goes to (u - s(q(u)) in gamma coordinates, q(u))."""
    from .lattices import solve_integer

    target = kiso_lattice(datum)
    r = datum.restricted_rank
    section = datum._q_section()
    incl = datum.restricted_inclusion.matrix

    def split(u: Vector) -> Vector:
        b = datum.q(u)
        rest = tuple(x - y for x, y in zip(u, section(b)))
        a = solve_integer(incl, rest) if r else ()
        assert a is not None
        return tuple(a) + tuple(b)

    return GroupRingElement(
        target, {split(u): c for u, c in f.terms.items()}
    )


def kiso_unsplit(datum: SymmetricDatum, f: GroupRingElement) -> GroupRingElement:
    """Inverse of kiso_split: (a, b) goes back to embed(a) + s(b)."""
    r = datum.restricted_rank
    section = datum._q_section()

    def unsplit(v: Vector) -> Vector:
        a, b = v[:r], v[r:]
        u = datum.embed_restricted(a)
        return tuple(x + y for x, y in zip(u, section(b)))

    return GroupRingElement(
        datum.char_lattice, {unsplit(v): c for v, c in f.terms.items()}
    )


# -- Stanley-Reisner model ---------------------------------------------------


class SRModel:
    """Laurent polynomials in the ray variables of the full fan, with
    coefficients in R(T_H), modulo the Stanley-Reisner ideal.

    Exponent vectors live over the product lattice: one coordinate per full
    ray (the X_j exponents) followed by the X*(T_H) coordinates."""

    def __init__(self, datum: SymmetricDatum, fan: Fan):
        self.datum = datum
        self.fan = fan
        self.num_rays = len(fan.rays)
        self.h_rank = datum.char_H_lattice.rank
        labels = tuple(f"X{j}" for j in range(self.num_rays)) + tuple(
            datum.char_H_lattice.basis_labels
        )
        self.lattice = Lattice(self.num_rays + self.h_rank, labels)
        self.full_faces = sorted(fan.cones, key=lambda f: (len(f), sorted(f)))
        self.pos_faces = [frozenset(c) for c in fan.pos_cones]

    # -- element builders ----------------------------------------------------

    def one(self) -> GroupRingElement:
        return GroupRingElement.one(self.lattice)

    def x_var(self, j: int) -> GroupRingElement:
        return GroupRingElement.monomial(self.lattice, self.lattice.basis_vector(j))

    def x_monomial(self, exps: dict[int, int]) -> GroupRingElement:
        v = [0] * self.lattice.rank
        for j, e in exps.items():
            v[j] = e
        return GroupRingElement.monomial(self.lattice, tuple(v))

    def x_tau(self, tau) -> GroupRingElement:
        """X_tau = product over the cone's rays of (1 - X_j)."""
        out = self.one()
        for j in sorted(tau):
            out = out * (self.one() - self.x_var(j))
        return out

    def h_monomial(self, h: Vector, c: int = 1) -> GroupRingElement:
        v = (0,) * self.num_rays + tuple(h)
        return GroupRingElement.monomial(self.lattice, v, c)

    def from_h(self, f: GroupRingElement) -> GroupRingElement:
        """Embed an R(T_H) element as a constant coefficient."""
        assert f.lattice == self.datum.char_H_lattice
        zero = (0,) * self.num_rays
        return GroupRingElement(
            self.lattice, {zero + u: c for u, c in f.terms.items()}
        )

    # -- group action --------------------------------------------------------

    def action_matrix(self, w) -> Matrix:
        """Combined action of w in W_H: permute ray variables by the fan
        action, act on the R(T_H) exponents by the induced torus action."""
        perm = self.fan.ray_permutation(w)
        a = self.datum.char_H_matrix(w)
        n, m = self.num_rays, self.h_rank
        rows = []
        for i in range(n):
            row = [0] * (n + m)
            # exponent of X_i in the image picks up the exponent of the
            # preimage ray: X_j -> X_{perm[j]}
            for j in range(n):
                if perm[j] == i:
                    row[j] = 1
            rows.append(tuple(row))
        for i in range(m):
            rows.append((0,) * n + tuple(a[i]))
        return tuple(rows)

    def act(self, w, f: GroupRingElement) -> GroupRingElement:
        return f.act(self.action_matrix(w))

    def is_invariant(self, f: GroupRingElement) -> bool:
        return all(
            self.act(g, f) == f for g in self.datum.weyl_H.generators
        )

    # -- reduction and decomposition ----------------------------------------

    def _epsilon(self, f: GroupRingElement, tau: frozenset[int]) -> GroupRingElement:
        """Evaluate X_j -> 1 for every ray j outside tau."""
        keep = tau

        def fn(u):
            return tuple(
                x if (i >= self.num_rays or i in keep) else 0
                for i, x in enumerate(u)
            )

        return f.map_exponents(fn)

    def components(
        self, f: GroupRingElement, faces=None
    ) -> dict[frozenset[int], GroupRingElement]:
        """Face-poset components c_tau with sum = the normal form of f.

        c_empty = eps_empty(f); c_tau = eps_tau(f) - sum of c_sigma over the
        proper faces sigma of tau.  Each c_tau is divisible by X_tau."""
        if faces is None:
            faces = self.full_faces
        comps: dict[frozenset[int], GroupRingElement] = {}
        for tau in sorted(faces, key=lambda t: (len(t), sorted(t))):
            e = self._epsilon(f, tau)
            for sig, c in comps.items():
                if sig < tau:
                    e = e - c
            if e:
                comps[tau] = e
        return comps

    def sr_reduce(self, f: GroupRingElement) -> "SRElement":
        """Normal form of f modulo the Stanley-Reisner ideal of the full fan."""
        comps = self.components(f)
        total = GroupRingElement.zero(self.lattice)
        for c in comps.values():
            total = total + c
        # internal sanity: components lie in their pieces C_tau
        for tau, c in comps.items():
            for j in tau:
                if self._epsilon(c, tau - {j}) != GroupRingElement.zero(self.lattice):
                    raise DecompositionResidual(
                        f"component at {sorted(tau)} not divisible by its X_tau"
                    )
        return SRElement(self, total, comps)

    def sr_decompose(self, f: GroupRingElement, restrict_to: str = "full"):
        """Components of an already-reduced element; their sum must be f."""
        faces = self.full_faces if restrict_to == "full" else self.pos_faces
        comps = self.components(f, faces)
        total = GroupRingElement.zero(self.lattice)
        for c in comps.values():
            total = total + c
        if total != f:
            raise DecompositionResidual("components do not sum to the input")
        return comps


@dataclass
class SRElement:
    """A reduced element of the Stanley-Reisner model with its components."""

    model: SRModel
    element: GroupRingElement
    components: dict[frozenset[int], GroupRingElement] = field(default_factory=dict)

    def __eq__(self, other) -> bool:
        return isinstance(other, SRElement) and self.element == other.element


# -- graded decomposition ----------------------------------------------------


class GradedDecomposition:
    """Components over the positive cones: the tau piece lies in
    C_tau tensor R(T_H)^{W_tau}."""

    def __init__(self, model: SRModel, components: dict):
        self.model = model
        self.components = {
            frozenset(t): c for t, c in components.items() if c
        }

    def component(self, tau) -> GroupRingElement:
        return self.components.get(
            frozenset(tau), GroupRingElement.zero(self.model.lattice)
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GradedDecomposition)
            and self.components == other.components
        )

    def to_json(self) -> dict:
        def key(t):
            return "c" + "_".join(str(i) for i in sorted(t)) if t else "c"

        return {
            key(t): self.components[t].to_json()
            for t in sorted(self.components, key=lambda t: (len(t), sorted(t)))
        }


def kg_decompose(model: SRModel, f: GroupRingElement) -> GradedDecomposition:
    """Split an invariant reduced element into its positive-cone components.

    The input must be invariant under the combined Weyl action (ray
    permutation plus the R(T_H) action); its full-fan components at positive
    cones then determine it, and each is invariant under the cone stabilizer.
    """
    if not model.is_invariant(f):
        raise NotInvariant("input is not invariant under the Weyl action")
    comps = model.components(f)
    total = GroupRingElement.zero(model.lattice)
    for c in comps.values():
        total = total + c
    if total != f:
        raise NotInvariant("input is not reduced")
    pos = {t: c for t, c in comps.items() if t in set(model.pos_faces)}
    out = GradedDecomposition(model, pos)
    for tau, c in out.components.items():
        stab = model.fan.cone_stabilizer(tau)
        for g in stab.generators:
            if model.act(g, c) != c:
                raise NotInvariant(
                    f"component at {sorted(tau)} is not stabilizer-invariant"
                )
    return out


def reassemble(d: GradedDecomposition) -> GroupRingElement:
    """Sum of the Weyl translates of the components: the invariant reduced
    element whose decomposition is d."""
    model = d.model
    out = GroupRingElement.zero(model.lattice)
    for tau, c in d.components.items():
        stab = model.fan.cone_stabilizer(tau)
        for w in coset_representatives(model.datum.weyl_H, stab):
            out = out + model.act(w, c)
    return out


def graded_multiply(
    d1: GradedDecomposition, d2: GradedDecomposition
) -> GradedDecomposition:
    """Componentwise product: pieces at cones whose rays jointly span a cone
    multiply into that cone; non-spanning pairs contribute zero."""
    model = d1.model
    assert d2.model is model
    pos = set(model.pos_faces)
    out: dict[frozenset[int], GroupRingElement] = {}
    for t1, c1 in d1.components.items():
        for t2, c2 in d2.components.items():
            union = t1 | t2
            if union not in pos:
                continue
            prod = c1 * c2
            if union in out:
                out[union] = out[union] + prod
            else:
                out[union] = prod
    return GradedDecomposition(model, out)


def filtration_membership(d: GradedDecomposition, tau) -> bool:
    """True iff d lies in the filtration piece of tau: every nonzero
    component sits at a cone having tau as a face."""
    tau = frozenset(tau)
    if tau not in set(d.model.pos_faces):
        raise ConeNotInFan(f"{sorted(tau)} is not a cone of the positive fan")
    return all(tau <= sigma for sigma in d.components)


# -- localization of the Stanley-Reisner model -------------------------------


def sr_to_localization(model: SRModel, f: GroupRingElement) -> LocalizationClass:
    """Evaluate a Stanley-Reisner element at the fixed points of the closed
    toric part: X_j restricts to e^{u_j} (the cone-local dual character) on
    cones containing ray j and to 1 elsewhere; R(T_H) coefficients restrict
    through the chosen section."""
    datum, fan = model.datum, model.fan
    idx = FixedPointIndex(datum, fan, "Y")
    section = datum._q_section()
    vals = {}
    for p in idx.points:
        w = idx.rep(p.coset)
        full_cone = fan.translate_cone(w, frozenset(fan.pos_max_cones[p.cone]))
        duals = fan.dual_basis(full_cone)
        emb = {j: datum.embed_restricted(u) for j, u in duals.items()}
        terms: dict[Vector, int] = {}
        for u, c in f.terms.items():
            x, h = u[: model.num_rays], u[model.num_rays :]
            expo = list(section(h))
            for j in full_cone:
                if x[j]:
                    expo = [a + x[j] * b for a, b in zip(expo, emb[j])]
            key = tuple(expo)
            terms[key] = terms.get(key, 0) + c
        vals[p] = GroupRingElement(datum.char_lattice, terms)
    return LocalizationClass(datum, fan, "Y", vals)


def sr_preimage(
    model: SRModel, target: LocalizationClass, box: int
) -> GroupRingElement:
    """A reduced Stanley-Reisner representative evaluating to the target
    localization tuple, searched over basis elements X_tau * X^e * e^h with
    all exponents bounded by the box; exact integer linear solve."""
    from .lattices import solve_integer

    assert target.scope == "Y"
    datum = model.datum
    idx = FixedPointIndex(datum, model.fan, "Y")
    rng = range(-box, box + 1)
    basis: list[GroupRingElement] = []
    for tau in model.full_faces:
        tau_s = sorted(tau)
        x_tau = model.x_tau(tau)
        for es in iter_product(rng, repeat=len(tau_s)):
            mono = model.x_monomial(dict(zip(tau_s, es)))
            for h in iter_product(rng, repeat=model.h_rank):
                basis.append(x_tau * mono * model.h_monomial(h))
    evals = [sr_to_localization(model, b) for b in basis]
    # assemble the linear system: one equation per (fixed point, exponent)
    keys: dict[tuple[FixedPoint, Vector], int] = {}
    for p in idx.points:
        for ev in evals:
            for u in ev.values[p].terms:
                keys.setdefault((p, u), len(keys))
        for u in target.values[p].terms:
            keys.setdefault((p, u), len(keys))
    rows = [[0] * len(basis) for _ in range(len(keys))]
    rhs = [0] * len(keys)
    for col, ev in enumerate(evals):
        for p in idx.points:
            for u, c in ev.values[p].terms.items():
                rows[keys[(p, u)]][col] = c
    for p in idx.points:
        for u, c in target.values[p].terms.items():
            rhs[keys[(p, u)]] = c
    sol = solve_integer(as_matrix(rows), tuple(rhs))
    if sol is None:
        raise NoPreimageInBox(f"no representative with exponents within {box}")
    out = GroupRingElement.zero(model.lattice)
    for c, b in zip(sol, basis):
        if c:
            out = out + c * b
    return out


# -- presentation over the least subdivided compactification -----------------


def minimal_non_faces(fan: Fan) -> list[frozenset[int]]:
    """Minimal subsets of positive rays spanning no cone of the positive fan."""
    faces = {frozenset(c) for c in fan.pos_cones}
    n = len(fan.pos_rays)
    out: list[frozenset[int]] = []
    for size in range(1, n + 1):
        for comb in combinations(range(n), size):
            s = frozenset(comb)
            if s in faces:
                continue
            if any(m <= s for m in out):
                continue
            out.append(s)
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def wonderful_presentation_check(
    datum: SymmetricDatum, fan: Fan, scope: str = "X"
) -> dict:
    """Verify the presentation of the K-ring by ray classes: non-face
    products of (1 - ray class) vanish, and for each simple restricted root
    the monomial in ray classes prescribed by the ray pairings equals the
    line-bundle class.  Raises RelationViolation on any failure."""
    idx = FixedPointIndex(datum, fan, scope)
    one = constant_class(datum, fan, scope, GroupRingElement.one(datum.char_lattice))
    rays = [ray_class(datum, fan, j, scope) for j in range(len(fan.pos_rays))]
    report = {"scope": scope, "non_face_relations": [], "line_bundle_relations": []}
    for nf in minimal_non_faces(fan):
        prod = one
        for j in sorted(nf):
            prod = prod * (one - rays[j])
        ok = all(not v for v in prod.values.values())
        report["non_face_relations"].append(
            {"rays": sorted(nf), "zero": ok}
        )
        if not ok:
            raise RelationViolation(f"non-face relation {sorted(nf)} is nonzero")
    for k in range(datum.restricted_rank):
        u = datum.restricted_lattice.basis_vector(k)
        lhs = one
        for j, v in enumerate(fan.pos_rays):
            e = v[k]  # pairing <gamma_k, v_j> in the dual bases
            if e:
                lhs = lhs * rays[j].power(e)
        rhs = line_bundle_class(datum, fan, u, scope)
        ok = lhs == rhs
        report["line_bundle_relations"].append(
            {"restricted_root": k, "zero": ok}
        )
        if not ok:
            raise RelationViolation(
                f"line-bundle relation for restricted root {k} fails"
            )
    report["all_relations_hold"] = True
    return report
