import itertools

import pytest

from permdeg.perm import PermGroup, make_gppq, make_named, shift_group
from permdeg.subgroup_enum import psl2_prime, subgroup_classes
from permdeg.iso import (
    brute_force_isomorphic,
    is_isomorphic,
    iso_profile,
)


class TestKnownPairs:
    def test_same_group_different_degrees(self):
        S3 = make_named("symmetric", 3)
        assert is_isomorphic(S3, shift_group(S3, 6))

    def test_weyl_a3(self):
        assert is_isomorphic(make_gppq(2, 3), make_named("symmetric", 4))

    def test_exotic_a5(self):
        assert is_isomorphic(make_named("alternating", 5), psl2_prime(5))

    def test_c4_not_v4(self):
        C4 = PermGroup.parse(4, ["(1 2 3 4)"])
        V4 = PermGroup.parse(4, ["(1 2)(3 4)", "(1 3)(2 4)"])
        assert not is_isomorphic(C4, V4)

    def test_c6_not_s3(self):
        assert not is_isomorphic(make_named("cyclic", 6), make_named("symmetric", 3))

    def test_trivial(self):
        assert is_isomorphic(PermGroup(2, ()), PermGroup(5, ()))

    def test_dihedral_vs_quaternion(self):
        D4 = PermGroup.parse(4, ["(1 2 3 4)", "(1 3)"])
        Q8 = PermGroup.parse(
            8, ["(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"]
        )
        from permdeg.stabchain import group_order

        assert group_order(Q8) == 8
        assert not is_isomorphic(D4, Q8)


class TestProfile:
    def test_equal_for_isomorphic(self):
        assert iso_profile(make_gppq(2, 3)) == iso_profile(make_named("symmetric", 4))

    def test_order_mismatch(self):
        assert iso_profile(make_named("cyclic", 4)) != iso_profile(
            make_named("cyclic", 5)
        )

    def test_abelian_flag(self):
        assert iso_profile(make_named("cyclic", 6)).abelian
        assert not iso_profile(make_named("symmetric", 3)).abelian


class TestOracle:
    def test_all_small_sym5_class_pairs(self):
        reps = [
            c.representative
            for c in subgroup_classes(make_named("symmetric", 5))
            if c.order <= 24
        ]
        for A, B in itertools.combinations_with_replacement(reps, 2):
            assert is_isomorphic(A, B) == brute_force_isomorphic(A, B)

    def test_cross_degree_pairs(self):
        reps4 = [
            c.representative for c in subgroup_classes(make_named("symmetric", 4))
        ]
        reps5 = [
            c.representative
            for c in subgroup_classes(make_named("symmetric", 5))
            if c.order <= 24
        ]
        for A in reps4:
            for B in reps5:
                assert is_isomorphic(A, B) == brute_force_isomorphic(A, B)


class TestSymmetryOfRelation:
    def test_symmetric_on_class_reps(self):
        reps = [
            c.representative
            for c in subgroup_classes(make_named("symmetric", 5))
            if c.order <= 60
        ]
        for A, B in itertools.combinations(reps, 2):
            assert is_isomorphic(A, B) == is_isomorphic(B, A)
