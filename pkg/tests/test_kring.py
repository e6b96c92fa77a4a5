"""K-class models: localization, Stanley-Reisner, decomposition, presentation."""

import random

import pytest

from symkring.fans import ConeNotInFan
from symkring.group_ring import GroupRingElement, orbit_sum
from symkring.kring import (
    GradedDecomposition,
    NoPreimageInBox,
    NotInvariant,
    SRModel,
    constant_class,
    enumerate_fixed_points,
    enumerate_invariant_curves,
    filtration_membership,
    graded_multiply,
    kg_decompose,
    kg_membership,
    kiso_lattice,
    kiso_split,
    kiso_unsplit,
    kt_membership,
    line_bundle_class,
    minimal_non_faces,
    ray_class,
    reassemble,
    sr_preimage,
    sr_to_localization,
    wonderful_presentation_check,
)
from symkring.verify import curves_bruteforce, random_graded_decomposition

class TestFixedPoints:
    def test_pgl6_counts(self, pgl6, pgl6_fan):
        assert len(enumerate_fixed_points(pgl6, pgl6_fan, "X").points) == 90
        assert len(enumerate_fixed_points(pgl6, pgl6_fan, "Y").points) == 6

    def test_group_a1_counts(self, group_a1, group_a1_fan):
        assert len(enumerate_fixed_points(group_a1, group_a1_fan, "X").points) == 4
        assert len(enumerate_fixed_points(group_a1, group_a1_fan, "Y").points) == 2


class TestCurves:
    def test_a1_toric_curve(self, group_a1, group_a1_fan):
        recs = enumerate_invariant_curves(group_a1, group_a1_fan, "Y")
        assert len(recs) == 1
        assert recs[0].curve_type == 3
        assert len(recs[0].endpoints) == 2

    def test_pgl6_toric_curves(self, pgl6, pgl6_fan):
        recs = enumerate_invariant_curves(pgl6, pgl6_fan, "Y")
        assert len(recs) == 6
        assert all(r.curve_type == 3 for r in recs)

    def test_pgl6_oracle_Y(self, pgl6, pgl6_fan):
        recs = enumerate_invariant_curves(pgl6, pgl6_fan, "Y")
        got = {
            (r.curve_type, frozenset((p.cone, p.coset) for p in r.endpoints), r.character)
            for r in recs
        }
        assert got == curves_bruteforce(pgl6, pgl6_fan, "Y")

    def test_split_fan_has_adjacency_curves(self, pgl6, pgl6_split_fan):
        recs = enumerate_invariant_curves(pgl6, pgl6_split_fan, "Y")
        by_type = {t: [r for r in recs if r.curve_type == t] for t in (2, 3, 4)}
        assert by_type[4], "expected adjacency curves across the new ray"
        assert len(by_type[4]) == 6  # one per W_H/W_L coset
        for r in by_type[4]:
            assert {p.cone for p in r.endpoints} == {0, 1}


class TestMembership:
    def test_constant_is_member(self, pgl6, pgl6_fan):
        cls = constant_class(
            pgl6, pgl6_fan, "X", GroupRingElement.constant(pgl6.char_lattice, 3)
        )
        ok, witness = kt_membership(cls)
        assert ok and witness is None

    def test_line_bundle_is_member(self, pgl6, pgl6_fan):
        for u in [(1, 0), (0, 1), (2, -1)]:
            ok, _ = kt_membership(line_bundle_class(pgl6, pgl6_fan, u))
            assert ok

    def test_bumped_constant_fails_with_witness(self, pgl6, pgl6_split_fan):
        one = GroupRingElement.one(pgl6.char_lattice)
        cls = constant_class(pgl6, pgl6_split_fan, "X", one)
        first = next(iter(sorted(cls.values, key=lambda p: (p.cone, p.coset))))
        cls.values[first] = one + one
        ok, witness = kt_membership(cls)
        assert not ok and witness is not None

    def test_kg_orbit_sum(self, pgl6, pgl6_fan):
        f = orbit_sum(
            pgl6.weyl_H,
            GroupRingElement.monomial(pgl6.char_lattice, (1, 0, 2, 0, 0)),
        )
        ok, _ = kg_membership(pgl6, pgl6_fan, [f])
        assert ok

    def test_kg_constant(self, pgl6, pgl6_fan):
        ok, _ = kg_membership(
            pgl6, pgl6_fan, [GroupRingElement.constant(pgl6.char_lattice, 7)]
        )
        assert ok

    def test_kg_boundary_monomial_is_member(self, pgl6, pgl6_fan):
        # frozen oracle value: the exponential of a simple restricted root
        # satisfies the wall congruences (its reflection difference is a
        # multiple of the wall generator), so it IS a member
        gamma1 = GroupRingElement.monomial(pgl6.char_lattice, (1, 2, 1, 0, 0))
        ok, witness = kg_membership(pgl6, pgl6_fan, [gamma1])
        assert ok and witness is None

    def test_kg_levi_violation(self, pgl6, pgl6_fan):
        f = GroupRingElement.monomial(pgl6.char_lattice, (1, 0, 0, 0, 0))
        ok, witness = kg_membership(pgl6, pgl6_fan, [f])
        assert not ok and witness["congruence"] == "levi"


class TestKisoSplit:
    def test_one(self, pgl6):
        one = GroupRingElement.one(pgl6.char_lattice)
        assert kiso_split(pgl6, one) == GroupRingElement.one(kiso_lattice(pgl6))

    def test_kernel_exponent(self, pgl6):
        f = GroupRingElement.monomial(pgl6.char_lattice, (1, 2, 1, 0, 0))
        split = kiso_split(pgl6, f)
        ((expo, coef),) = split.terms.items()
        assert coef == 1
        assert expo[:2] == (1, 0)
        assert expo[2:] == (0,) * pgl6.char_H_lattice.rank

    def test_round_trip_random(self, pgl6):
        rng = random.Random(7)
        lat = pgl6.char_lattice
        for _ in range(100):
            terms = {
                tuple(rng.randint(-3, 3) for _ in range(lat.rank)): rng.randint(-4, 4)
                for _ in range(4)
            }
            f = GroupRingElement(lat, terms)
            assert kiso_unsplit(pgl6, kiso_split(pgl6, f)) == f

    def test_ring_map(self, pgl6):
        lat = pgl6.char_lattice
        f = GroupRingElement.monomial(lat, (1, -1, 0, 2, 0), 2)
        g = GroupRingElement.monomial(lat, (0, 1, 1, 0, -1)) + GroupRingElement.one(lat)
        assert kiso_split(pgl6, f * g) == kiso_split(pgl6, f) * kiso_split(pgl6, g)


class TestStanleyReisner:
    def test_non_face_product_reduces_to_zero(self, pgl6, pgl6_fan):
        model = SRModel(pgl6, pgl6_fan)
        one = model.one()
        killed = 0
        for j in range(1, model.num_rays):
            if frozenset({0, j}) not in pgl6_fan.cones:
                red = model.sr_reduce((one - model.x_var(0)) * (one - model.x_var(j)))
                assert not red.element
                killed += 1
        assert killed > 0

    def test_ray_variable_survives(self, pgl6, pgl6_fan):
        model = SRModel(pgl6, pgl6_fan)
        x0 = model.x_var(0)
        comps = model.components(x0)
        assert comps[frozenset()] == model.one()
        assert comps[frozenset({0})] == x0 - model.one()
        red = model.sr_reduce(x0)
        assert red.element == x0

    def test_decompose_examples(self, pgl6, pgl6_fan):
        model = SRModel(pgl6, pgl6_fan)
        one = model.one()
        comps = model.sr_decompose(one)
        assert comps == {frozenset(): one}
        f = one - model.x_var(0)
        comps = model.sr_decompose(f)
        assert comps == {frozenset({0}): f}

    def test_reassembly_random(self, pgl6, pgl6_split_fan):
        model = SRModel(pgl6, pgl6_split_fan)
        rng = random.Random(3)
        for _ in range(25):
            terms = {
                tuple(rng.randint(-2, 2) for _ in range(model.lattice.rank)): rng.randint(-3, 3)
                for _ in range(3)
            }
            raw = GroupRingElement(model.lattice, terms)
            red = model.sr_reduce(raw)
            total = GroupRingElement.zero(model.lattice)
            for c in red.components.values():
                total = total + c
            assert total == red.element
            # reducing a reduced element is the identity
            assert model.sr_reduce(red.element).element == red.element


class TestGradedDecomposition:
    def test_unit_decomposition(self, pgl6, pgl6_fan):
        model = SRModel(pgl6, pgl6_fan)
        d = kg_decompose(model, model.one())
        assert set(d.components) == {frozenset()}
        rng = random.Random(11)
        other = random_graded_decomposition(rng, model)
        assert graded_multiply(other, d) == other

    def test_not_invariant(self, pgl6, pgl6_fan):
        model = SRModel(pgl6, pgl6_fan)
        with pytest.raises(NotInvariant):
            kg_decompose(model, model.x_var(0))

    def test_reassemble_round_trip(self, pgl6, pgl6_split_fan):
        model = SRModel(pgl6, pgl6_split_fan)
        rng = random.Random(5)
        for _ in range(5):
            d = random_graded_decomposition(rng, model)
            assert kg_decompose(model, reassemble(d)) == d

    def test_product_oracle(self, group_a2, group_a2_split_fan):
        model = SRModel(group_a2, group_a2_split_fan)
        rng = random.Random(2)
        for _ in range(10):
            d1 = random_graded_decomposition(rng, model)
            d2 = random_graded_decomposition(rng, model)
            lhs = graded_multiply(d1, d2)
            rhs = kg_decompose(
                model, model.sr_reduce(reassemble(d1) * reassemble(d2)).element
            )
            assert lhs == rhs

    def test_non_spanning_product_zero(self, pgl6, pgl6_split_fan):
        model = SRModel(pgl6, pgl6_split_fan)
        # rays 0 and 1 do not span a cone in the split fan
        d1 = GradedDecomposition(model, {frozenset({0}): model.x_tau({0})})
        d2 = GradedDecomposition(model, {frozenset({1}): model.x_tau({1})})
        assert graded_multiply(d1, d2).components == {}

    def test_filtration(self, pgl6, pgl6_fan):
        model = SRModel(pgl6, pgl6_fan)
        sigma = frozenset({0, 1})
        d = GradedDecomposition(model, {sigma: model.x_tau(sigma)})
        assert filtration_membership(d, frozenset())
        assert filtration_membership(d, frozenset({0}))
        assert filtration_membership(d, sigma)
        d_ray = GradedDecomposition(model, {frozenset({0}): model.x_tau({0})})
        assert not filtration_membership(d_ray, frozenset({1}))
        with pytest.raises(ConeNotInFan):
            filtration_membership(d_ray, frozenset({17}))


class TestLocalizationBridge:
    def test_ray_orbit_product_identity(self, pgl6, pgl6_fan):
        model = SRModel(pgl6, pgl6_fan)
        for j in range(len(pgl6_fan.pos_rays)):
            orbit = {perm[j] for perm in pgl6_fan._ray_perm.values()}
            prod = model.one()
            for rho in sorted(orbit):
                prod = prod * model.x_var(rho)
            assert sr_to_localization(model, prod) == ray_class(
                pgl6, pgl6_fan, j, "Y"
            )

    def test_injectivity_sampled(self, group_a2, group_a2_fan):
        model = SRModel(group_a2, group_a2_fan)
        rng = random.Random(9)
        for _ in range(10):
            raw = GroupRingElement(
                model.lattice,
                {
                    tuple(rng.randint(-1, 1) for _ in range(model.lattice.rank)): rng.randint(-2, 2)
                    for _ in range(3)
                },
            )
            f = model.sr_reduce(raw).element
            g_loc = sr_to_localization(model, f)
            if f:
                assert g_loc != sr_to_localization(
                    model, GroupRingElement.zero(model.lattice)
                )

    def test_preimage_a1(self, group_a1, group_a1_fan):
        model = SRModel(group_a1, group_a1_fan)
        target = line_bundle_class(group_a1, group_a1_fan, (1,), "Y")
        pre = sr_preimage(model, target, 1)
        assert sr_to_localization(model, pre) == target

    def test_preimage_box_exhausted(self, group_a1, group_a1_fan):
        model = SRModel(group_a1, group_a1_fan)
        target = line_bundle_class(group_a1, group_a1_fan, (2,), "Y")
        with pytest.raises(NoPreimageInBox):
            sr_preimage(model, target, 0)


class TestPresentation:
    def test_wonderful_pgl6(self, pgl6, pgl6_fan):
        report = wonderful_presentation_check(pgl6, pgl6_fan)
        assert report["all_relations_hold"]
        assert report["non_face_relations"] == []

    def test_split_fan(self, pgl6, pgl6_split_fan):
        report = wonderful_presentation_check(pgl6, pgl6_split_fan)
        assert report["all_relations_hold"]
        assert [sorted(r["rays"]) for r in report["non_face_relations"]] == [[0, 1]]

    def test_minimal_non_faces(self, pgl6, pgl6_split_fan):
        assert minimal_non_faces(pgl6_split_fan) == [frozenset({0, 1})]
