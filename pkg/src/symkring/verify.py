"""Randomized verification suites shared by the test suite and the CLI.

Each suite checks one family of exact identities (congruence-subring
membership, Stanley-Reisner decomposition and product, character-lattice
splitting, multifiltration, curve enumeration) on seeded random inputs and
returns a report dict with a boolean "passed" plus counters.  All arithmetic
is exact; any single failure fails the suite.
"""

from __future__ import annotations

import random
from math import gcd

from .fans import Fan
from .group_ring import (
    GroupRingElement,
    congruence_class_sums,
    congruent_mod,
    orbit_sum,
)
from .kring import (
    FixedPointIndex,
    GradedDecomposition,
    SRModel,
    enumerate_invariant_curves,
    filtration_membership,
    graded_multiply,
    kg_decompose,
    kg_membership,
    kiso_split,
    kiso_unsplit,
    reassemble,
    sr_to_localization,
)
from .lattices import Lattice, mat_vec
from .root_data import SymmetricDatum


def _random_element(
    rng: random.Random, lattice: Lattice, n_terms: int = 4, span: int = 3
) -> GroupRingElement:
    terms = {}
    for _ in range(n_terms):
        u = tuple(rng.randint(-span, span) for _ in range(lattice.rank))
        terms[u] = terms.get(u, 0) + rng.randint(-3, 3)
    return GroupRingElement(lattice, terms)


def verify_congruence_subring(
    datum: SymmetricDatum,
    fan: Fan,
    n_orbits: int = 100,
    n_triples: int = 1000,
    seed: int = 0,
) -> dict:
    """Orbit sums lie in the congruence subring; generic perturbations leave
    it with a witness; the Laurent-division congruence test agrees with the
    class-sum projection oracle for primitive characters."""
    rng = random.Random(seed)
    lat = datum.char_lattice
    n_cones = len(fan.pos_max_cones)
    orbit_ok = perturb_ok = 0
    for _ in range(n_orbits):
        mu = tuple(rng.randint(-2, 2) for _ in range(lat.rank))
        f = orbit_sum(datum.weyl_H, GroupRingElement.monomial(lat, mu))
        member, _ = kg_membership(datum, fan, [f] * n_cones)
        if member:
            orbit_ok += 1
        # perturb one coordinate so that it must leave the subring: a
        # monomial moved by the Levi group if there is one, else a constant
        # bump breaking an adjacency congruence.  In a single-cone fan with
        # trivial Levi group every unit perturbation stays congruent (each
        # exponential satisfies the wall congruence identically), so there
        # is nothing to break and the check is vacuous.
        if datum.delta_L:
            while True:
                nu = tuple(rng.randint(-3, 3) for _ in range(lat.rank))
                if any(
                    mat_vec(datum.simple_reflection_matrices[i], nu) != nu
                    for i in datum.delta_L
                ):
                    break
            bump = GroupRingElement.monomial(lat, nu)
        elif fan.adjacent_max_cone_pairs():
            bump = GroupRingElement.one(lat)
        else:
            perturb_ok += 1
            continue
        bumped = [f] * n_cones
        k = rng.randrange(n_cones)
        bumped[k] = f + bump
        member, witness = kg_membership(datum, fan, bumped)
        if member or witness is None:
            continue
        involved = [witness.get("cone")] + witness.get("cones", [])
        if k in involved:
            perturb_ok += 1
    oracle_total = oracle_ok = 0
    small = Lattice(min(lat.rank, 3))
    for _ in range(n_triples):
        chi = tuple(rng.randint(-2, 2) for _ in range(small.rank))
        g = 0
        for x in chi:
            g = gcd(g, x)
        if g != 1:
            continue
        oracle_total += 1
        a = _random_element(rng, small)
        b = _random_element(rng, small)
        if congruent_mod(a, b, chi) == congruence_class_sums(a, b, chi):
            oracle_ok += 1
    return {
        "passed": orbit_ok == n_orbits
        and perturb_ok == n_orbits
        and oracle_ok == oracle_total,
        "orbit_sums_in_subring": orbit_ok,
        "perturbations_rejected": perturb_ok,
        "n_orbits": n_orbits,
        "oracle_agreements": f"{oracle_ok}/{oracle_total}",
    }


def _random_component(
    rng: random.Random, model: SRModel, tau: frozenset[int]
) -> GroupRingElement:
    """A random stabilizer-invariant element of C_tau tensor R(T_H)^{W_tau}."""
    stab = model.fan.cone_stabilizer(tau)
    raw = model.x_tau(tau)
    exps = {j: rng.randint(-2, 2) for j in tau}
    h = tuple(rng.randint(-1, 1) for _ in range(model.h_rank))
    raw = raw * model.x_monomial(exps) * model.h_monomial(h, rng.randint(1, 2))
    out = GroupRingElement.zero(model.lattice)
    for w in stab.elements:
        out = out + model.act(w, raw)
    return out


def random_graded_decomposition(
    rng: random.Random, model: SRModel, max_pieces: int = 2
) -> GradedDecomposition:
    comps = {}
    faces = [f for f in model.pos_faces]
    for _ in range(rng.randint(1, max_pieces)):
        tau = rng.choice(faces)
        c = _random_component(rng, model, tau)
        comps[tau] = comps.get(tau, GroupRingElement.zero(model.lattice)) + c
    return GradedDecomposition(model, comps)


def verify_sr_decomposition(
    datum: SymmetricDatum,
    fan: Fan,
    n_elements: int = 100,
    n_pairs: int = 100,
    seed: int = 0,
) -> dict:
    """Reassembly is exact on random reduced elements; the graded product
    agrees with multiply-then-decompose; non-spanning products vanish."""
    rng = random.Random(seed)
    model = SRModel(datum, fan)
    reassembly_ok = 0
    for _ in range(n_elements):
        raw = _random_element(rng, model.lattice, n_terms=3, span=2)
        red = model.sr_reduce(raw)
        comps = model.sr_decompose(red.element)
        total = GroupRingElement.zero(model.lattice)
        for c in comps.values():
            total = total + c
        if total == red.element:
            reassembly_ok += 1
    product_ok = 0
    for _ in range(n_pairs):
        d1 = random_graded_decomposition(rng, model)
        d2 = random_graded_decomposition(rng, model)
        lhs = graded_multiply(d1, d2)
        f1, f2 = reassemble(d1), reassemble(d2)
        rhs = kg_decompose(model, model.sr_reduce(f1 * f2).element)
        if lhs == rhs:
            product_ok += 1
    nonspan_ok = True
    pos = set(model.pos_faces)
    for t1 in model.pos_faces:
        for t2 in model.pos_faces:
            if (t1 | t2) in pos:
                continue
            c1 = _random_component(rng, model, t1)
            c2 = _random_component(rng, model, t2)
            prod = model.sr_reduce(c1 * c2).element
            if prod:
                nonspan_ok = False
    return {
        "passed": reassembly_ok == n_elements
        and product_ok == n_pairs
        and nonspan_ok,
        "reassembly_exact": reassembly_ok,
        "product_oracle_agreements": product_ok,
        "non_spanning_products_zero": nonspan_ok,
    }


def verify_kiso_roundtrip(
    datum: SymmetricDatum, n_elements: int = 100, seed: int = 0
) -> dict:
    """The splitting of R(T) is a ring isomorphism: round trips are the
    identity and both directions respect products."""
    rng = random.Random(seed)
    lat = datum.char_lattice
    split_lat_rank = datum.restricted_rank + datum.char_H_lattice.rank
    round_ok = ring_ok = 0
    for _ in range(n_elements):
        f = _random_element(rng, lat)
        g = _random_element(rng, lat)
        sf, sg = kiso_split(datum, f), kiso_split(datum, g)
        if kiso_unsplit(datum, sf) == f and kiso_split(
            datum, kiso_unsplit(datum, sf)
        ) == sf:
            round_ok += 1
        if kiso_split(datum, f * g) == sf * sg and kiso_unsplit(
            datum, sf * sg
        ) == f * g:
            ring_ok += 1
    return {
        "passed": round_ok == n_elements and ring_ok == n_elements,
        "round_trips": round_ok,
        "ring_maps": ring_ok,
    }


def verify_multifiltration(
    datum: SymmetricDatum, fan: Fan, n_elements: int = 50, seed: int = 0
) -> dict:
    """F_tau . F_sigma lies in F_{tau union sigma} when the union spans a
    cone, and multiplying by F_empty preserves every filtration piece."""
    rng = random.Random(seed)
    model = SRModel(datum, fan)
    pos = set(model.pos_faces)

    def random_filtered(tau: frozenset[int]) -> GradedDecomposition:
        above = [s for s in model.pos_faces if tau <= s]
        comps = {}
        s = rng.choice(above)
        comps[s] = _random_component(rng, model, s)
        return GradedDecomposition(model, comps)

    span_ok = unit_ok = 0
    span_total = unit_total = 0
    for _ in range(n_elements):
        tau = rng.choice(model.pos_faces)
        sig = rng.choice(model.pos_faces)
        d_tau = random_filtered(tau)
        d_sig = random_filtered(sig)
        prod = graded_multiply(d_tau, d_sig)
        if (tau | sig) in pos:
            span_total += 1
            if filtration_membership(prod, tau | sig):
                span_ok += 1
        d0 = random_filtered(frozenset())
        unit_total += 1
        if filtration_membership(graded_multiply(d0, d_tau), tau):
            unit_ok += 1
    return {
        "passed": span_ok == span_total and unit_ok == unit_total,
        "spanning_products_filtered": f"{span_ok}/{span_total}",
        "unit_products_filtered": f"{unit_ok}/{unit_total}",
    }


def curves_bruteforce(
    datum: SymmetricDatum, fan: Fan, scope: str = "X"
) -> set[tuple]:
    """Independent curve enumeration: iterate over every group element (not
    just coset representatives) and every base curve, reduce endpoints to
    canonical cosets, and collect the deduplicated key set."""
    idx = FixedPointIndex(datum, fan, scope)
    group = idx.group
    keys: set[tuple] = set()

    def canon(v):
        n = tuple(-x for x in v)
        return v if v >= n else n

    pos_levi = set(datum.positive_phi_L)
    chart_roots = [a for a in datum.positive_roots if a not in pos_levi]
    from .lattices import mat_mul

    for s in range(len(fan.pos_max_cones)):
        for w in group.elements:
            c1 = idx.coset_of(w)
            if scope == "X":
                for alpha in chart_roots:
                    w2 = mat_mul(w, datum.reflection_by_root[alpha])
                    keys.add(
                        (
                            2,
                            frozenset(((s, c1), (s, idx.coset_of(w2)))),
                            canon(mat_vec(w, alpha)),
                        )
                    )
            for k in fan.facet_orthogonal_restricted_roots(s):
                gd = datum.gamma_data[k]
                w2 = mat_mul(w, gd.reflection)
                keys.add(
                    (
                        3,
                        frozenset(((s, c1), (s, idx.coset_of(w2)))),
                        canon(mat_vec(w, gd.gamma)),
                    )
                )
    for i, j, chi in fan.adjacent_max_cone_pairs():
        chi_t = datum.embed_restricted(chi)
        for w in group.elements:
            c = idx.coset_of(w)
            keys.add((4, frozenset(((i, c), (j, c))), canon(mat_vec(w, chi_t))))
    return keys


def verify_curves(datum: SymmetricDatum, fan: Fan, scope: str = "X") -> dict:
    """Curve enumeration equals the brute-force oracle, every record has a
    unique type, and the curve set is stable under the acting group."""
    records = enumerate_invariant_curves(datum, fan, scope)
    got = {
        (
            r.curve_type,
            frozenset((p.cone, p.coset) for p in r.endpoints),
            r.character,
        )
        for r in records
    }
    expected = curves_bruteforce(datum, fan, scope)
    unique = len(got) == len(records)
    # group stability: translating every curve by a generator lands in the set
    idx = FixedPointIndex(datum, fan, scope)
    from .lattices import mat_mul

    def canon(v):
        n = tuple(-x for x in v)
        return v if v >= n else n

    stable = True
    for g in idx.group.generators:
        for t, eps, chi in got:
            if t == 4:
                # adjacency curves translate within W_H only
                if scope == "X" and g not in datum.weyl_H.index:
                    continue
            moved = frozenset(
                (s, idx.coset_of(mat_mul(g, idx.rep(c)))) for s, c in eps
            )
            key = (t, moved, canon(mat_vec(g, chi)))
            if key not in expected:
                stable = False
    return {
        "passed": got == expected and unique and stable,
        "enumerated": len(got),
        "oracle": len(expected),
        "types_unique": unique,
        "group_stable": stable,
    }


def verify_localization_injectivity(
    datum: SymmetricDatum, fan: Fan, n_elements: int = 25, seed: int = 0
) -> dict:
    """Distinct reduced elements have distinct localization images, and
    equal reduced elements evaluate equally (both directions sampled)."""
    rng = random.Random(seed)
    model = SRModel(datum, fan)
    ok = 0
    for _ in range(n_elements):
        f = model.sr_reduce(_random_element(rng, model.lattice, 3, 1)).element
        g = model.sr_reduce(_random_element(rng, model.lattice, 3, 1)).element
        same_form = f == g
        same_loc = sr_to_localization(model, f) == sr_to_localization(model, g)
        if same_form == same_loc:
            ok += 1
        # forward direction on the exact same element must always agree
        if sr_to_localization(model, f) != sr_to_localization(model, f):
            ok -= 1
    return {"passed": ok == n_elements, "agreements": ok}


def run_full_verification(datum: SymmetricDatum, fan: Fan, seed: int = 0) -> list:
    """All suites for one datum/fan, sized for interactive use."""
    suites = [
        ("congruence-subring", verify_congruence_subring(datum, fan, 25, 200, seed)),
        ("sr-decomposition", verify_sr_decomposition(datum, fan, 25, 10, seed)),
        ("kiso-roundtrip", verify_kiso_roundtrip(datum, 50, seed)),
        ("multifiltration", verify_multifiltration(datum, fan, 20, seed)),
        ("curves", verify_curves(datum, fan, "Y")),
        ("localization-injectivity", verify_localization_injectivity(datum, fan, 10, seed)),
    ]
    return [(name, report) for name, report in suites]
