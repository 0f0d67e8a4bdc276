import math

import pytest
from hypothesis import given, strategies as st

from permdeg.perm import (
    PermError,
    PermGroup,
    all_perms,
    compose,
    conjugate,
    cycle_type,
    direct_product_disjoint,
    element_order,
    format_perm,
    identity,
    inverse,
    is_identity,
    make_gppq,
    make_named,
    parse_perm,
    shift_group,
)
from permdeg.stabchain import group_order


perms = st.integers(2, 8).flatmap(
    lambda n: st.permutations(list(range(n))).map(tuple)
)


def pair_of_perms(draw):
    n = draw(st.integers(2, 8))
    p = tuple(draw(st.permutations(list(range(n)))))
    q = tuple(draw(st.permutations(list(range(n)))))
    r = tuple(draw(st.permutations(list(range(n)))))
    return p, q, r


triples = st.composite(pair_of_perms)()


class TestArithmetic:
    def test_compose_applies_left_first(self):
        p = parse_perm("(1 2)", 3)
        q = parse_perm("(2 3)", 3)
        assert format_perm(compose(p, q)) == "(1 3 2)"

    def test_compose_degree_mismatch(self):
        with pytest.raises(PermError):
            compose((1, 0), (0, 1, 2))

    @given(triples)
    def test_associative(self, pqr):
        p, q, r = pqr
        assert compose(compose(p, q), r) == compose(p, compose(q, r))

    @given(perms)
    def test_inverse(self, p):
        assert is_identity(compose(p, inverse(p)))
        assert is_identity(compose(inverse(p), p))

    @given(perms)
    def test_identity_neutral(self, p):
        e = identity(len(p))
        assert compose(e, p) == p
        assert compose(p, e) == p

    @given(triples)
    def test_conjugate(self, pqr):
        p, _, g = pqr
        assert conjugate(p, g) == compose(compose(inverse(g), p), g)

    @given(perms)
    def test_element_order(self, p):
        k = element_order(p)
        q = p
        for _ in range(k - 1):
            q = compose(q, p)
        assert is_identity(q)
        assert k == math.lcm(*cycle_type(p))

    @given(perms)
    def test_order_divides_group_order(self, p):
        G = PermGroup.from_gens(len(p), [p])
        assert group_order(G) == element_order(p)


class TestNotation:
    def test_parse_basic(self):
        assert parse_perm("(1 2)(3 4 5)", 5) == (1, 0, 3, 4, 2)
        assert parse_perm("(1,2)", 2) == (1, 0)
        assert parse_perm("id", 4) == identity(4)
        assert parse_perm("()", 4) == identity(4)
        assert parse_perm("", 4) == identity(4)

    @pytest.mark.parametrize(
        "bad",
        ["(1 6)", "(0 1)", "(1 1)", "(1 2)(2 3)", "(1 2", "1 2)", "(1 x)", "3"],
    )
    def test_parse_errors(self, bad):
        with pytest.raises(PermError):
            parse_perm(bad, 5)

    @given(perms)
    def test_roundtrip(self, p):
        assert parse_perm(format_perm(p), len(p)) == p

    def test_format_identity(self):
        assert format_perm(identity(4)) == "()"


class TestConstructors:
    @pytest.mark.parametrize(
        "kind,n,order",
        [
            ("symmetric", 1, 1),
            ("symmetric", 2, 2),
            ("symmetric", 5, 120),
            ("alternating", 3, 3),
            ("alternating", 5, 60),
            ("alternating", 6, 360),
            ("cyclic", 1, 1),
            ("cyclic", 7, 7),
        ],
    )
    def test_named_orders(self, kind, n, order):
        assert group_order(make_named(kind, n)) == order

    def test_named_rejects_bad_kind(self):
        with pytest.raises(PermError):
            make_named("dihedral", 4)

    @pytest.mark.parametrize("p,q,order", [(2, 5, 1920), (2, 3, 24), (5, 3, 150)])
    def test_gppq_orders(self, p, q, order):
        G = make_gppq(p, q)
        assert G.degree == p * q
        assert group_order(G) == p ** (q - 1) * math.factorial(q)

    def test_gppq_block_structure(self):
        # generators permute the q blocks of size p among themselves
        p, q = 3, 3
        G = make_gppq(p, q)
        blocks = [frozenset(range(j * p, (j + 1) * p)) for j in range(q)]
        for g in G.generators:
            for b in blocks:
                assert frozenset(g[x] for x in b) in blocks

    def test_gppq_block_kernel_order(self):
        # the subgroup fixing every block setwise has order p^(q-1)
        for p, q in [(2, 3), (3, 3), (2, 2)]:
            G = make_gppq(p, q)
            blocks = [frozenset(range(j * p, (j + 1) * p)) for j in range(q)]
            from permdeg.stabchain import build_chain

            kernel = [
                g
                for g in build_chain(G).elements()
                if all(frozenset(g[x] for x in b) == b for b in blocks)
            ]
            assert len(kernel) == p ** (q - 1)

    def test_gppq_rejects_small(self):
        with pytest.raises(PermError):
            make_gppq(1, 3)
        with pytest.raises(PermError):
            make_gppq(2, 1)

    def test_direct_product(self):
        G = direct_product_disjoint(make_named("symmetric", 3), make_named("cyclic", 4))
        assert G.degree == 7
        assert group_order(G) == 24

    def test_shift_group(self):
        G = shift_group(make_named("symmetric", 3), 5)
        assert G.degree == 5
        assert G.fixed_points() == [3, 4]
        assert group_order(G) == 6

    def test_all_perms(self):
        assert len(list(all_perms(4))) == 24
