"""Fans: subdivision validation, stabilizers, facet characters."""

import pytest

from symkring.fans import (
    ConeNotInFan,
    NotInChamber,
    NotSmooth,
    NotSubdivision,
    build_positive_fan,
)
from symkring.lattices import as_matrix, mat_det_unimodular_sign, transpose

SPLIT = {"rays": [[1, 0], [0, 1], [1, 1]], "max_cones": [[0, 2], [1, 2]]}


class TestWonderfulFan:
    def test_pgl6_cone_count(self, pgl6_fan):
        assert len(pgl6_fan.pos_cones) == 4
        assert pgl6_fan.pos_rays == [(1, 0), (0, 1)]
        assert pgl6_fan.pos_max_cones == [(0, 1)]

    def test_stabilizer_orders(self, pgl6_fan):
        assert len(pgl6_fan.cone_stabilizer(frozenset())) == 48
        assert len(pgl6_fan.cone_stabilizer(frozenset({0, 1}))) == 8
        assert len(pgl6_fan.cone_stabilizer(frozenset({0}))) == 16
        assert len(pgl6_fan.cone_stabilizer(frozenset({1}))) == 16

    def test_stabilizer_sandwich(self, pgl6, pgl6_fan):
        levi = set(pgl6.weyl_L.elements)
        big = set(pgl6.weyl_H.elements)
        for tau in pgl6_fan.pos_cones:
            stab = set(pgl6_fan.cone_stabilizer(frozenset(tau)).elements)
            assert levi <= stab <= big

    def test_facet_orthogonal_walls(self, pgl6_fan):
        assert pgl6_fan.facet_orthogonal_restricted_roots(0) == [0, 1]

    def test_rank1_wall(self, group_a1_fan):
        assert group_a1_fan.facet_orthogonal_restricted_roots(0) == [0]

    def test_no_shared_facets(self, pgl6_fan):
        assert pgl6_fan.adjacent_max_cone_pairs() == []

    def test_translates_stay_in_fan(self, pgl6, pgl6_fan):
        for w in pgl6.weyl_H.elements:
            for tau in pgl6_fan.pos_cones:
                assert pgl6_fan.translate_cone(w, frozenset(tau)) in pgl6_fan.cones

    def test_cone_not_in_fan(self, pgl6_fan):
        with pytest.raises(ConeNotInFan):
            pgl6_fan.cone_stabilizer(frozenset({0, 5}))


class TestSplitFan:
    def test_two_max_cones(self, pgl6):
        fan = build_positive_fan(pgl6, SPLIT)
        assert len(fan.pos_max_cones) == 2
        for cone in fan.pos_max_cones:
            m = transpose(as_matrix([fan.pos_rays[i] for i in cone]))
            assert abs(mat_det_unimodular_sign(m)) == 1

    def test_shared_facet_character(self, pgl6):
        fan = build_positive_fan(pgl6, SPLIT)
        pairs = fan.adjacent_max_cone_pairs()
        assert len(pairs) == 1
        i, j, chi = pairs[0]
        # chi vanishes on the shared ray e1+e2 and is positive on cone j's
        # extra ray
        assert sum(a * b for a, b in zip(chi, (1, 1))) == 0
        assert fan.shared_facet_character(j, i) == tuple(-x for x in chi)
        assert fan.shared_facet_character(i, i) is None

    def test_facet_orthogonal_split(self, pgl6):
        fan = build_positive_fan(pgl6, SPLIT)
        # cone <e1, e1+e2> touches only the wall of gamma_2, and vice versa
        assert fan.facet_orthogonal_restricted_roots(0) == [1]
        assert fan.facet_orthogonal_restricted_roots(1) == [0]

    def test_split_covering_count(self, pgl6):
        fan = build_positive_fan(pgl6, SPLIT)
        assert fan._generic_covering_number(fan.pos_rays, fan.pos_max_cones) == 1


class TestValidation:
    def test_imprimitive_ray_rejected(self, pgl6):
        with pytest.raises(NotSmooth):
            build_positive_fan(pgl6, {"rays": [[2, 0], [0, 1]], "max_cones": [[0, 1]]})

    def test_non_unimodular_cone(self, pgl6):
        with pytest.raises(NotSmooth):
            build_positive_fan(pgl6, {"rays": [[1, 0], [1, 2]], "max_cones": [[0, 1]]})

    def test_ray_outside_chamber(self, pgl6):
        with pytest.raises(NotInChamber):
            build_positive_fan(pgl6, {"rays": [[1, -1], [0, 1]], "max_cones": [[0, 1]]})

    def test_missing_cone(self, pgl6):
        with pytest.raises(NotSubdivision):
            build_positive_fan(
                pgl6, {"rays": [[1, 0], [0, 1], [1, 1]], "max_cones": [[0, 2]]}
            )

    def test_overlapping_cover(self, pgl6):
        # three cones covering the chamber with overlap; every facet of the
        # big cone lies on the chamber boundary, so only the covering count
        # can reject this
        with pytest.raises(NotSubdivision):
            build_positive_fan(
                pgl6,
                {
                    "rays": [[1, 0], [0, 1], [1, 1]],
                    "max_cones": [[0, 1], [0, 2], [1, 2]],
                },
            )

    def test_duplicate_ray(self, pgl6):
        with pytest.raises(NotSubdivision):
            build_positive_fan(
                pgl6, {"rays": [[1, 0], [1, 0]], "max_cones": [[0, 1]]}
            )

    def test_unused_ray(self, pgl6):
        with pytest.raises(NotSubdivision):
            build_positive_fan(
                pgl6, {"rays": [[1, 0], [0, 1], [1, 2]], "max_cones": [[0, 1]]}
            )
