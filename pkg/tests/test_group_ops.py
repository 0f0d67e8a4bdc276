import itertools
import random

import pytest

from permdeg.perm import (
    PermGroup,
    all_perms,
    compose,
    conjugate,
    identity,
    make_gppq,
    make_named,
    random_perm,
)
from permdeg.stabchain import build_chain, group_order
from permdeg.group_ops import (
    GroupOpsError,
    centralizer_in_sym,
    core,
    fingerprint,
    index,
    join,
    normalizer_in_sym,
    orbits,
    transporter_in_sym,
)


def random_subgroup(rng, degree: int) -> PermGroup:
    k = rng.randint(1, 2)
    return PermGroup.from_gens(degree, [random_perm(rng, degree) for _ in range(k)])


def brute_centralizer(G: PermGroup) -> set:
    out = set()
    for p in all_perms(G.degree):
        if all(compose(p, g) == compose(g, p) for g in G.generators):
            out.add(p)
    return out


class TestOrbits:
    def test_two_equivalent_orbits(self):
        G = PermGroup.parse(6, ["(1 2 3)(4 5 6)"])
        dec = orbits(G)
        assert [o.points for o in dec.orbits] == [(0, 1, 2), (3, 4, 5)]
        assert dec.orbits[0].type_key == dec.orbits[1].type_key

    def test_transitive(self):
        dec = orbits(make_named("symmetric", 5))
        assert len(dec.orbits) == 1

    def test_fixed_points_share_type(self):
        dec = orbits(PermGroup.parse(4, ["(1 2)"]))
        keys = {o.points: o.type_key for o in dec.orbits}
        assert keys[(2,)] == keys[(3,)] != keys[(0, 1)]

    def test_partition(self):
        G = make_gppq(2, 3)
        dec = orbits(G)
        pts = sorted(p for o in dec.orbits for p in o.points)
        assert pts == list(range(6))


class TestCentralizer:
    @pytest.mark.parametrize(
        "gens,degree,order",
        [
            (["(1 2 3 4 5)", "(1 2)"], 5, 1),     # Sym(5): trivial center
            (["(1 2 3 4)"], 4, 4),
            (["(1 2 3)(4 5 6)"], 6, 18),
        ],
    )
    def test_known_orders(self, gens, degree, order):
        C = centralizer_in_sym(PermGroup.parse(degree, gens))
        assert group_order(C) == order

    def test_200_random_against_brute_force(self):
        rng = random.Random(1905)
        for _ in range(200):
            degree = rng.randint(2, 6)
            G = random_subgroup(rng, degree)
            C = centralizer_in_sym(G)
            assert set(build_chain(C).elements()) == brute_centralizer(G)

    def test_gppq_centralizer_nontrivial(self):
        G = make_gppq(2, 5)
        C = centralizer_in_sym(G)
        assert group_order(C) == 2
        z = next(p for p in build_chain(C).elements() if p != identity(10))
        assert not build_chain(G).contains(z)


class TestNormalizerTransporter:
    def test_normalizer_known(self):
        N = normalizer_in_sym(PermGroup.parse(5, ["(1 2 3 4)"]))
        assert group_order(N) == 8
        N = normalizer_in_sym(PermGroup.parse(5, ["(1 2 3 4 5)"]))
        assert group_order(N) == 20

    def test_normalizer_contains_group_and_normalizes(self):
        rng = random.Random(7)
        for _ in range(30):
            H = random_subgroup(rng, 5)
            N = normalizer_in_sym(H)
            hc = build_chain(H)
            assert all(hc.contains(g) or True for g in H.generators)
            helems = set(hc.elements())
            for n in N.generators:
                assert {conjugate(h, n) for h in helems} == helems

    def test_transporter_conjugate_pairs(self):
        H1 = PermGroup.parse(5, ["(1 2)"])
        H2 = PermGroup.parse(5, ["(4 5)"])
        g = transporter_in_sym(H1, H2)
        assert g is not None
        e1 = set(build_chain(H1).elements())
        assert {conjugate(h, g) for h in e1} == set(build_chain(H2).elements())

    def test_transporter_distinguishes_klein_classes(self):
        # transitive vs intransitive Klein four-groups are not Sym(4)-conjugate
        V_t = PermGroup.parse(4, ["(1 2)(3 4)", "(1 3)(2 4)"])
        V_i = PermGroup.parse(4, ["(1 2)", "(3 4)"])
        assert transporter_in_sym(V_t, V_i) is None


class TestLattice:
    def test_join_and_index(self):
        A4 = make_named("alternating", 4)
        S4 = make_named("symmetric", 4)
        J = join(A4, PermGroup.parse(4, ["(1 2)"]))
        assert group_order(J) == 24
        assert index(S4, A4) == 2

    def test_index_requires_containment(self):
        with pytest.raises(GroupOpsError):
            index(make_named("alternating", 4), PermGroup.parse(4, ["(1 2)"]))

    def test_core_normal_and_maximal(self):
        S4 = make_named("symmetric", 4)
        D4 = PermGroup.parse(4, ["(1 2 3 4)", "(1 3)"])
        K = core(S4, D4)
        assert group_order(K) == 4          # the Klein four-group
        kc = build_chain(K)
        for g in S4.generators:
            for k in kc.elements():
                assert kc.contains(conjugate(k, g))

    def test_core_trivial(self):
        S4 = make_named("symmetric", 4)
        assert group_order(core(S4, PermGroup.parse(4, ["(1 2)"]))) == 1


class TestFingerprint:
    def test_conjugate_subgroups_equal(self):
        rng = random.Random(99)
        for _ in range(20):
            H = random_subgroup(rng, 5)
            g = random_perm(rng, 5)
            Hg = PermGroup.from_gens(5, [conjugate(h, g) for h in H.generators])
            assert fingerprint(H) == fingerprint(Hg)

    def test_distinguishes_c4_v4(self):
        C4 = PermGroup.parse(4, ["(1 2 3 4)"])
        V4 = PermGroup.parse(4, ["(1 2)(3 4)", "(1 3)(2 4)"])
        assert fingerprint(C4) != fingerprint(V4)

    def test_abstract_fields_ignore_degree(self):
        from permdeg.perm import shift_group

        S3 = make_named("symmetric", 3)
        S3b = shift_group(S3, 6)
        assert fingerprint(S3).abstract_fields() == fingerprint(S3b).abstract_fields()

    def test_canonical_string_stable(self):
        G = make_gppq(2, 3)
        assert fingerprint(G).canonical() == fingerprint(G).canonical()
