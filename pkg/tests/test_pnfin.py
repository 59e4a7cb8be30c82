import pytest

from bvdesk.pnfin import (BUILTIN_CHAINS, DecreasingChain, HorizonError,
                          InfiniteSubsetStream, StrictnessError,
                          chain_from_spec, dyadic_chain, membership,
                          nth_prime, primes_thinned_chain, pseudo_intersection,
                          tails_chain, verify_decreasing)


def evens():
    return InfiniteSubsetStream(lambda k: 2 * k, "evens")


class TestStream:
    def test_membership_examples(self):
        assert membership(evens(), 6, 10)
        assert not membership(evens(), 7, 10)
        powers = InfiniteSubsetStream(lambda k: 2 ** k, "powers")
        assert membership(powers, 8, 5)

    def test_membership_beyond_horizon(self):
        with pytest.raises(HorizonError):
            membership(evens(), 100, 10)

    def test_strictness_violation_detected(self):
        constant = InfiniteSubsetStream(lambda k: 5, "constant")
        with pytest.raises(StrictnessError):
            constant.check_prefix(3)

    def test_non_natural_rejected(self):
        with pytest.raises(ValueError):
            InfiniteSubsetStream(lambda k: -k, "negatives").element(1)

    def test_least_above(self):
        assert evens().least_above(5, 100) == 6
        assert evens().least_above(6, 100) == 8
        with pytest.raises(HorizonError):
            evens().least_above(1000, 10)

    def test_unbounded_contains(self):
        s = dyadic_chain().stream(20)
        assert s.contains(2 ** 20)
        assert s.contains(3 * 2 ** 20)
        assert not s.contains(2 ** 20 + 1)


class TestVerifyDecreasing:
    def test_dyadic(self):
        assert verify_decreasing(dyadic_chain(), 4, 100).ok

    def test_tails(self):
        assert verify_decreasing(tails_chain(), 5, 100).ok

    def test_evens_then_odds_fails_at_one(self):
        chain = DecreasingChain(
            lambda n: evens() if n == 1
            else InfiniteSubsetStream(lambda k: 2 * k - 1, "odds"))
        report = verify_decreasing(chain, 2, 100)
        assert not report.ok
        assert report.first_violation == (1, 1)  # 1 is in b_2 but not in b_1

    def test_depth_validation(self):
        with pytest.raises(ValueError):
            verify_decreasing(dyadic_chain(), 1, 100)


class TestPseudoIntersection:
    def test_dyadic_example(self):
        assert pseudo_intersection(dyadic_chain(), 4, 1000).elements == (2, 4, 8, 16)

    def test_tails_example(self):
        assert pseudo_intersection(tails_chain(), 4, 1000).elements == (2, 3, 4, 5)

    def test_constant_evens(self):
        chain = DecreasingChain(lambda n: evens())
        assert pseudo_intersection(chain, 3, 1000).elements == (2, 4, 6)

    def test_primes_thinned(self):
        result = pseudo_intersection(primes_thinned_chain(), 6, 1000)
        assert result.elements == (2, 3, 5, 7, 11, 13)
        assert result.tail_membership_ok

    def test_strictly_increasing_and_guarantee(self):
        for factory in BUILTIN_CHAINS.values():
            result = pseudo_intersection(factory(), 12, 2000)
            assert all(a < b for a, b in zip(result.elements, result.elements[1:]))
            assert result.tail_membership_ok

    def test_determinism(self):
        a = pseudo_intersection(dyadic_chain(), 10, 5000).elements
        b = pseudo_intersection(dyadic_chain(), 10, 5000).elements
        assert a == b

    def test_non_decreasing_chain_rejected(self):
        chain = DecreasingChain(
            lambda n: evens() if n == 1
            else InfiniteSubsetStream(lambda k: 2 * k - 1, "odds"))
        with pytest.raises(ValueError):
            pseudo_intersection(chain, 3, 100)

    def test_horizon_exhaustion(self):
        # the constant evens chain needs element index k at stage k, so a
        # two-element horizon cannot supply the third selection
        chain = DecreasingChain(lambda n: evens())
        with pytest.raises(HorizonError):
            pseudo_intersection(chain, 3, 2)


class TestBuiltins:
    def test_nth_prime(self):
        assert [nth_prime(k) for k in range(1, 8)] == [2, 3, 5, 7, 11, 13, 17]
        assert nth_prime(100) == 541

    def test_primes_thinned_levels_nest(self):
        assert verify_decreasing(primes_thinned_chain(), 6, 500).ok

    def test_chain_from_spec(self):
        chain = chain_from_spec({"family": "dyadic", "params": {"base": 3}})
        assert chain.stream(2).element(1) == 9
        assert chain_from_spec({"family": "tails"}).stream(1).element(1) == 2
        with pytest.raises(ValueError):
            chain_from_spec({"family": "unknown"})
        with pytest.raises(ValueError):
            chain_from_spec({"params": {}})
        with pytest.raises(ValueError):
            chain_from_spec({"family": "tails", "params": {"step": 2}})
