"""Pseudo-intersections of decreasing chains of infinite subsets of N.

Infinite sets are represented only by strictly increasing total enumerators
(1-based index -> natural number); arbitrary membership predicates are
rejected by design, so membership and "least element above m" are decidable
by monotone search over indices.  Strictness is verified on every prefix
actually enumerated; inclusion between chain levels is verified on finite
prefixes up to an explicit horizon, and reports state that horizon rather
than claiming the full inclusion.

The pseudo-intersection of a decreasing chain b_1 >= b_2 >= ... is built by

    m_1 = min b_1,    m_{n+1} = least element of b_{n+1} exceeding m_n,

so m_k lies in b_n for all n <= k: the selected set differs from each b_n
only in the finitely many elements picked before stage n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable


class HorizonError(ValueError):
    """Raised when a query cannot be answered within the given horizon."""


class StrictnessError(ValueError):
    """Raised when an enumerator fails to be strictly increasing."""


class InfiniteSubsetStream:
    """A strictly increasing enumerator with memoized, strictness-checked prefix."""

    def __init__(self, enumerator: Callable[[int], int], name: str = "stream"):
        self.name = name
        self._enumerator = enumerator
        self._cache: dict[int, int] = {}
        self.checked_horizon = 0

    def element(self, k: int) -> int:
        """The k-th element (1-based)."""
        if k < 1:
            raise ValueError("indices are 1-based")
        value = self._cache.get(k)
        if value is None:
            value = self._enumerator(k)
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"{self.name}: enumerator must produce naturals")
            self._cache[k] = value
            prev = self._cache.get(k - 1)
            if prev is not None and prev >= value:
                raise StrictnessError(
                    f"{self.name}: enumerator({k - 1}) = {prev} >= enumerator({k}) = {value}")
            nxt = self._cache.get(k + 1)
            if nxt is not None and value >= nxt:
                raise StrictnessError(
                    f"{self.name}: enumerator({k}) = {value} >= enumerator({k + 1}) = {nxt}")
        return value

    def check_prefix(self, horizon: int) -> None:
        """Verify strictness on indices 1..horizon (memoized)."""
        if horizon <= self.checked_horizon:
            return
        prev = self.element(max(self.checked_horizon, 1))
        for k in range(max(self.checked_horizon, 1) + 1, horizon + 1):
            cur = self.element(k)
            if cur <= prev:
                raise StrictnessError(
                    f"{self.name}: enumerator not strictly increasing at index {k}")
            prev = cur
        self.checked_horizon = horizon

    def membership(self, m: int, horizon: int) -> bool:
        """True iff m appears among the first ``horizon`` elements.

        Requires m <= element(horizon); larger queries raise
        :class:`HorizonError` (enlarge the horizon to decide them).
        """
        self.check_prefix(horizon)
        if m > self.element(horizon):
            raise HorizonError(
                f"{self.name}: {m} exceeds element({horizon}) = {self.element(horizon)}")
        return self._index_of(m, horizon) is not None

    def contains(self, m: int) -> bool:
        """Unbounded membership by galloping search over the total enumerator.

        Sound because the enumerator is strictly increasing and total; only
        O(log position) enumerator evaluations are made, so sparse levels of
        closed-form chains stay cheap even at astronomically large values.
        """
        hi = 1
        while self.element(hi) < m:
            hi *= 2
        return self._index_of(m, hi) is not None

    def _index_of(self, m: int, hi: int) -> int | None:
        lo = 1
        while lo <= hi:
            mid = (lo + hi) // 2
            v = self.element(mid)
            if v == m:
                return mid
            if v < m:
                lo = mid + 1
            else:
                hi = mid - 1
        return None

    def least_above(self, m: int, horizon: int) -> int:
        """The least element exceeding m, searched within the horizon."""
        self.check_prefix(min(horizon, 64))
        lo, hi = 1, horizon
        if self.element(horizon) <= m:
            raise HorizonError(
                f"{self.name}: no element above {m} within horizon {horizon}")
        while lo < hi:
            mid = (lo + hi) // 2
            if self.element(mid) > m:
                hi = mid
            else:
                lo = mid + 1
        return self.element(lo)


def membership(s: InfiniteSubsetStream, m: int, horizon: int) -> bool:
    return s.membership(m, horizon)


@dataclass
class DecreasingChain:
    """A chain n -> b_n (1-based) of nominally decreasing infinite subsets."""

    level: Callable[[int], InfiniteSubsetStream]
    name: str = "chain"
    _levels: dict[int, InfiniteSubsetStream] = field(default_factory=dict)

    def stream(self, n: int) -> InfiniteSubsetStream:
        if n < 1:
            raise ValueError("chain levels are 1-based")
        s = self._levels.get(n)
        if s is None:
            s = self.level(n)
            self._levels[n] = s
        return s


@dataclass(frozen=True)
class DecreasingReport:
    """Prefix-verified inclusion verdict for a chain."""

    ok: bool
    depth: int
    horizon: int
    first_violation: tuple[int, int] | None  # (level n, offending element of b_{n+1})

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "depth": self.depth,
            "horizon": self.horizon,
            "first_violation": list(self.first_violation) if self.first_violation else None,
        }


def verify_decreasing(chain: DecreasingChain, depth: int, horizon: int) -> DecreasingReport:
    """Check b_{n+1} subset of b_n on prefixes, for n = 1 .. depth-1.

    The first ``horizon`` elements of b_{n+1} are merged against b_n (whose
    prefix is extended as far as those values require); the first element of
    b_{n+1} missing from b_n is reported.
    """
    if depth < 2:
        raise ValueError("depth must be at least 2")
    for n in range(1, depth):
        upper = chain.stream(n)
        lower = chain.stream(n + 1)
        lower.check_prefix(horizon)
        j = 1
        for i in range(1, horizon + 1):
            v = lower.element(i)
            while upper.element(j) < v:
                j += 1
            if upper.element(j) != v:
                return DecreasingReport(ok=False, depth=depth, horizon=horizon,
                                        first_violation=(n, v))
        upper.check_prefix(j)
    return DecreasingReport(ok=True, depth=depth, horizon=horizon, first_violation=None)


@dataclass(frozen=True)
class PseudoIntersectionResult:
    """The selected elements plus the checked tail-membership guarantee."""

    elements: tuple[int, ...]
    decreasing: DecreasingReport
    tail_membership_ok: bool
    horizon: int

    def to_json(self) -> dict:
        return {
            "elements": list(self.elements),
            "decreasing": self.decreasing.to_json(),
            "tail_membership_ok": self.tail_membership_ok,
            "horizon": self.horizon,
        }


def pseudo_intersection(chain: DecreasingChain, count: int,
                        horizon: int = 10_000) -> PseudoIntersectionResult:
    """Select m_1 < m_2 < ... < m_count with m_k in b_n for all n <= k.

    Precondition: the chain passes the prefix inclusion check at the given
    horizon (verified here; failing chains raise).  The selection scans each
    level within the horizon; the guarantee m_k in b_n is then checked for
    every pair n <= k by unbounded membership on the total enumerators.
    """
    if count < 1:
        raise ValueError("count must be positive")
    if count >= 2:
        report = verify_decreasing(chain, depth=count, horizon=horizon)
        if not report.ok:
            raise ValueError(
                f"chain is not decreasing on the checked prefix: {report.first_violation}")
    else:
        report = DecreasingReport(ok=True, depth=1, horizon=horizon, first_violation=None)
    elements = [chain.stream(1).element(1)]
    for n in range(2, count + 1):
        elements.append(chain.stream(n).least_above(elements[-1], horizon))
    guarantee = all(
        chain.stream(n).contains(elements[k - 1])
        for n in range(1, count + 1)
        for k in range(n, count + 1)
    )
    return PseudoIntersectionResult(
        elements=tuple(elements),
        decreasing=report,
        tail_membership_ok=guarantee,
        horizon=horizon,
    )


# -- built-in chain families -----------------------------------------------------

_PRIMES: list[int] = [2, 3, 5, 7, 11, 13]


def nth_prime(k: int) -> int:
    """The k-th prime (1-based), from a growing sieve."""
    if k < 1:
        raise ValueError("prime indices are 1-based")
    while len(_PRIMES) < k:
        _extend_primes()
    return _PRIMES[k - 1]


def _extend_primes() -> None:
    limit = max(2 * _PRIMES[-1], 100)
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
    _PRIMES.clear()
    _PRIMES.extend(i for i, flag in enumerate(sieve) if flag)


def dyadic_chain(base: int = 2) -> DecreasingChain:
    """Level n enumerates the positive multiples of base^n."""
    if base < 2:
        raise ValueError("base must be at least 2")

    def level(n: int) -> InfiniteSubsetStream:
        step = base ** n
        return InfiniteSubsetStream(lambda k, step=step: k * step,
                                    name=f"multiples-of-{base}^{n}")

    return DecreasingChain(level=level, name="dyadic")


def tails_chain() -> DecreasingChain:
    """Level n enumerates {m : m > n}."""

    def level(n: int) -> InfiniteSubsetStream:
        return InfiniteSubsetStream(lambda k, n=n: n + k, name=f"tail-above-{n}")

    return DecreasingChain(level=level, name="tails")


def primes_thinned_chain() -> DecreasingChain:
    """Level n enumerates the primes from the n-th onward.

    Each level drops one more initial prime, thinning the previous level
    while keeping the chain decreasing and every level infinite.
    """

    def level(n: int) -> InfiniteSubsetStream:
        return InfiniteSubsetStream(lambda k, n=n: nth_prime(n + k - 1),
                                    name=f"primes-from-{n}")

    return DecreasingChain(level=level, name="primes-thinned")


BUILTIN_CHAINS: dict[str, Callable[[], DecreasingChain]] = {
    "dyadic": dyadic_chain,
    "tails": tails_chain,
    "primes-thinned": primes_thinned_chain,
}


def chain_from_spec(spec: dict) -> DecreasingChain:
    """Build a chain from a JSON spec {"family": name, "params": {...}}."""
    if not isinstance(spec, dict) or "family" not in spec:
        raise ValueError('chain spec must be {"family": ..., "params": {...}}')
    family = spec["family"]
    params = spec.get("params", {})
    if family == "dyadic":
        return dyadic_chain(**params)
    if family == "tails":
        if params:
            raise ValueError("the tails family takes no parameters")
        return tails_chain()
    if family == "primes-thinned":
        if params:
            raise ValueError("the primes-thinned family takes no parameters")
        return primes_thinned_chain()
    raise ValueError(f"unknown chain family {family!r}; "
                     f"choose from {sorted(BUILTIN_CHAINS)}")
