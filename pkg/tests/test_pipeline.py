import pytest

from permdeg.perm import format_perm, identity
from permdeg.stabchain import build_chain
from permdeg.pipeline import (
    PipelineError,
    enumerate_degree,
    survey_degree,
    verify_up_to,
    witness_degree_10,
)

EXPECTED = {
    2: (1, {1: 1}),
    3: (2, {1: 2}),
    4: (6, {1: 6}),
    5: (7, {1: 7}),
    6: (18, {1: 18}),
}


class TestSurvey:
    @pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
    def test_counts_and_ind(self, m):
        r = survey_degree(m)
        count, ind = EXPECTED[m]
        assert r.minemb_count == count
        assert r.ind_multiset == ind
        assert not r.comp_nonempty
        assert r.contradictions == []

    @pytest.mark.slow
    def test_degree_7(self):
        r = survey_degree(7)
        assert r.minemb_count == 29
        assert r.ind_multiset == {1: 28, 2: 1}
        assert not r.comp_nonempty

    def test_every_ind_one_or_even(self):
        for m in range(2, 7):
            for e in survey_degree(m).entries:
                assert e.ind == 1 or e.ind % 2 == 0

    def test_entries_exclude_trivial_include_sym(self):
        r = survey_degree(5)
        orders = [e.cls.order for e in r.entries]
        assert 1 not in orders
        assert 120 in orders

    def test_complement_absence_by_exhaustion(self):
        # cross-check the comp scan: no nontrivial D <= C with D meet G = 1.
        # It suffices to check cyclic D: every element z of C must have some
        # prime-order power inside G (<z> meets G nontrivially).
        from permdeg.perm import element_order
        from permdeg.group_ops import centralizer_in_sym

        for m in range(2, 7):
            for e in survey_degree(m).entries:
                G = e.cls.representative
                gchain = build_chain(G)
                C = centralizer_in_sym(G)
                for z in build_chain(C).elements():
                    k = element_order(z)
                    if k == 1:
                        continue
                    primes = [p for p in range(2, k + 1) if k % p == 0 and _is_prime(p)]
                    assert any(gchain.contains(_power(z, k // p)) for p in primes)

    def test_rejects_out_of_range(self):
        with pytest.raises(PipelineError):
            survey_degree(1)
        with pytest.raises(PipelineError):
            survey_degree(10)


def _power(p, k):
    from permdeg.perm import compose, identity

    out = identity(len(p))
    for _ in range(k):
        out = compose(out, p)
    return out


def _is_prime(n):
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


class TestVerify:
    def test_max_5(self):
        v = verify_up_to(5)
        assert v.no_complement
        assert [r.degree for r in v.reports] == [2, 3, 4, 5]

    def test_reports_match_survey(self):
        v = verify_up_to(4)
        for r in v.reports:
            s = survey_degree(r.degree)
            assert r.ind_multiset == s.ind_multiset
            assert r.minemb_count == s.minemb_count


class TestWitness:
    def test_certificate(self):
        w = witness_degree_10()
        assert build_chain(w.group).order == 1920
        assert w.mu_value == 10
        assert w.product_mu == 10 < w.mu_value + 2
        assert w.contradictions == []

    def test_witness_element_properties(self):
        from permdeg.perm import compose, element_order

        w = witness_degree_10()
        z = w.witness_element
        assert element_order(z) == 2
        gchain = build_chain(w.group)
        assert not gchain.contains(z)
        for g in w.group.generators:
            assert compose(z, g) == compose(g, z)


class TestCacheFlow:
    def test_enumerate_then_survey_uses_cache(self, tmp_path):
        cache = str(tmp_path)
        enumerate_degree(5, cache)
        r1 = survey_degree(5, cache)
        r2 = survey_degree(5, cache)
        assert r1.ind_multiset == r2.ind_multiset == {1: 7}
        assert (tmp_path / "degree5.jsonl").exists()

    def test_cache_resave_byte_identical(self, tmp_path):
        from permdeg.cache import load_cache, save_cache

        cache = str(tmp_path)
        survey_degree(4, cache)
        first = (tmp_path / "degree4.jsonl").read_bytes()
        survey_degree(4, cache)                      # reads, does not recompute
        save_cache(load_cache(cache, 4), cache)      # explicit re-save
        assert (tmp_path / "degree4.jsonl").read_bytes() == first
