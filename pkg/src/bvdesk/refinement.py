"""Dyadic partition towers and the refined-function construction.

Given finitely many covers of a finite powerset algebra, a tower of
partitions P_1, P_2, ... is built so that every level has 2^m blocks (zero
blocks permitted as internal padding), consecutive levels satisfy the
sibling rule U_j^m = U_{2j-1}^{m+1} v U_{2j}^{m+1}, and each input cover is
refined from some recorded level.

Each doubling splits every block U into the chained pair (U ^ c, U \\ c)
for the first cover member c meeting U properly; blocks already dominated
by a member split as (U, 0).  Iterating absorbs one cover at a time and
terminates because nonzero proper splits strictly shrink blocks.

The refined function is the exact finite sum g = sum_m 3^(-m) chi_m with
chi_m the indicator of the union of even-indexed level-m blocks.  Two atoms
first separated at level m (same parent block at m-1, different blocks at
m) land in sibling blocks, so their chi_m values differ while chi_i agree
for i < m, giving the separation estimate

    |g(q') - g(q'')| >= 1/3^m - sum_{i>m} 1/3^i = 1/(2 * 3^m) > 0.

In particular g takes distinct values on atoms separated by any level, so
g is refined from every absorbed cover.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .boolalg import BoolElem, Cover, FiniteBooleanAlgebra, Partition, is_refined_from
from .lattice import LatticeVector, rat_str

MAX_DOUBLINGS_PER_COVER = 64


@dataclass(frozen=True)
class PartitionTower:
    """Levels of 2^m blocks each (with zero padding) plus absorption data."""

    algebra: FiniteBooleanAlgebra
    levels: tuple[tuple[BoolElem, ...], ...]
    cover_levels: tuple[int, ...]  # per input cover, the level refined from it

    @property
    def height(self) -> int:
        return len(self.levels)

    def level_partition(self, m: int) -> Partition:
        """Level m (1-based) with padding dropped, as a public partition."""
        return Partition(tuple(b for b in self.levels[m - 1] if not b.is_zero))

    def sibling_rule_holds(self) -> bool:
        levels = self.levels
        for m in range(len(levels) - 1):
            for j, parent in enumerate(levels[m]):
                if levels[m + 1][2 * j].join(levels[m + 1][2 * j + 1]) != parent:
                    return False
        return True

    def block_index(self, m: int, atom: int) -> int:
        """Index of the level-m (1-based) block containing the atom."""
        for j, b in enumerate(self.levels[m - 1]):
            if b.mask >> atom & 1:
                return j
        raise ValueError(f"atom {atom} not covered at level {m}")

    def chi(self, m: int) -> LatticeVector:
        """Indicator of the union of even-indexed blocks at level m (1-based)."""
        union = 0
        for j, b in enumerate(self.levels[m - 1]):
            if j % 2 == 1:  # 1-based even positions
                union |= b.mask
        return LatticeVector(tuple(Fraction(1 if union >> q & 1 else 0)
                                   for q in range(self.algebra.atom_count)))

    def to_json(self) -> dict:
        return {
            "levels": [[b.to_json() for b in level] for level in self.levels],
            "cover_levels": list(self.cover_levels),
        }


def _split_once(blocks: list[BoolElem], cover: Sequence[BoolElem]) -> list[BoolElem]:
    """One doubling: each block becomes a sibling pair."""
    out: list[BoolElem] = []
    for u in blocks:
        if u.is_zero or any(u.leq(c) for c in cover):
            out.extend((u, u.algebra.bottom))
            continue
        piece = next(u.meet(c) for c in cover
                     if not u.meet(c).is_zero and u.meet(c) != u)
        out.extend((piece, u.minus(piece)))
    return out


def build_tower(algebra: FiniteBooleanAlgebra,
                covers: Sequence[Cover | Sequence[BoolElem]]) -> PartitionTower:
    """Build the tower absorbing the covers in listed order.

    With no covers the result is the identity tower [1, 0].  Each cover's
    absorption level is recorded; a cover already absorbed when reached
    still forces one doubling so that every recorded level exists.
    """
    cover_lists = [list(c.members if isinstance(c, Cover) else c) for c in covers]
    for members in cover_lists:
        joined = algebra.sup(members)
        if not joined.is_one:
            raise ValueError("each input must be a cover (join = 1)")
    levels: list[list[BoolElem]] = []
    current = [algebra.top]
    cover_levels: list[int] = []
    for members in cover_lists:
        rounds = 0
        while not all(b.is_zero or any(b.leq(c) for c in members) for b in current):
            current = _split_once(current, members)
            levels.append(current)
            rounds += 1
            if rounds > MAX_DOUBLINGS_PER_COVER:
                raise AssertionError("tower construction failed to terminate")
        if not levels:
            current = _split_once(current, members)
            levels.append(current)
        cover_levels.append(len(levels))
    if not levels:
        levels.append([algebra.top, algebra.bottom])
    return PartitionTower(
        algebra=algebra,
        levels=tuple(tuple(level) for level in levels),
        cover_levels=tuple(cover_levels),
    )


def refined_function(algebra: FiniteBooleanAlgebra,
                     covers: Sequence[Cover | Sequence[BoolElem]]) -> LatticeVector:
    """The exact sum g = sum_{m=1}^{M} 3^(-m) chi_m over the built tower."""
    return refine_report(algebra, covers).g


def is_function_refined_from(g: LatticeVector,
                             cover: Cover | Sequence[BoolElem]) -> bool:
    """Every atom pair with equal g-values lies inside one cover member."""
    members = list(cover.members if isinstance(cover, Cover) else cover)
    n = g.dim
    for q1 in range(n):
        for q2 in range(q1 + 1, n):
            if g.coords[q1] != g.coords[q2]:
                continue
            if not any(c.mask >> q1 & 1 and c.mask >> q2 & 1 for c in members):
                return False
    return True


def level_partitions(g: LatticeVector, n: int) -> Partition:
    """Bucket atoms by which interval [m/n, (m+1)/n) holds their g-value."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    buckets: dict[int, list[int]] = {}
    for q, value in enumerate(g.coords):
        m = (value.numerator * n) // value.denominator  # floor(n * g(q))
        buckets.setdefault(m, []).append(q)
    algebra = g.algebra
    return Partition(tuple(algebra.element(buckets[m]) for m in sorted(buckets)))


def constancy_partition(g: LatticeVector) -> Partition:
    """Atoms grouped by exact g-value, in increasing value order."""
    groups: dict[Fraction, list[int]] = {}
    for q, value in enumerate(g.coords):
        groups.setdefault(value, []).append(q)
    algebra = g.algebra
    return Partition(tuple(algebra.element(groups[v]) for v in sorted(groups)))


@dataclass(frozen=True)
class ConstancyReport:
    """Whether the constancy partition is refined from all tested levels."""

    ok: bool
    tested_up_to: int
    partition: Partition

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "tested_up_to": self.tested_up_to,
            "partition": self.partition.to_json(),
        }


def constancy_refinement_check(g: LatticeVector, n_bound: int | None = None
                               ) -> ConstancyReport:
    """Check the constancy partition against the level partitions.

    The bound defaults to twice the common denominator of g's values; the
    finite list of tested indices stands in for the full countable family.
    """
    if n_bound is None:
        lcm = 1
        for c in g.coords:
            lcm = lcm * c.denominator // _gcd(lcm, c.denominator)
        n_bound = 2 * lcm
    part = constancy_partition(g)
    ok = all(is_refined_from(part, level_partitions(g, n))
             for n in range(1, n_bound + 1))
    return ConstancyReport(ok=ok, tested_up_to=n_bound, partition=part)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class SeparationRecord:
    """First-separation data for one atom pair."""

    atom_pair: tuple[int, int]
    level: int
    gap: Fraction
    bound: Fraction

    @property
    def ok(self) -> bool:
        return self.gap >= self.bound

    def to_json(self) -> dict:
        return {
            "atom_pair": list(self.atom_pair),
            "level": self.level,
            "gap": rat_str(self.gap),
            "bound": rat_str(self.bound),
            "ok": self.ok,
        }


@dataclass(frozen=True)
class RefinementResult:
    """Tower, refined function, per-cover certificates, separation records."""

    tower: PartitionTower
    g: LatticeVector
    certificates: tuple[bool, ...]
    separations: tuple[SeparationRecord, ...]

    @property
    def ok(self) -> bool:
        return all(self.certificates) and all(s.ok for s in self.separations)

    def to_json(self) -> dict:
        return {
            "g": self.g.to_json(),
            "tower": self.tower.to_json(),
            "certificates": list(self.certificates),
            "separation": [s.to_json() for s in self.separations],
        }


def refine_report(algebra: FiniteBooleanAlgebra,
                  covers: Sequence[Cover | Sequence[BoolElem]]) -> RefinementResult:
    """Build the tower, compute g, and verify the construction's contract."""
    tower = build_tower(algebra, covers)
    n = algebra.atom_count
    g = LatticeVector(tuple(Fraction(0) for _ in range(n)))
    for m in range(1, tower.height + 1):
        g = g.add(tower.chi(m).scale(Fraction(1, 3 ** m)))
    certificates = tuple(bool(is_function_refined_from(g, c)) for c in covers)
    separations = []
    for q1 in range(n):
        for q2 in range(q1 + 1, n):
            level = next((m for m in range(1, tower.height + 1)
                          if tower.block_index(m, q1) != tower.block_index(m, q2)),
                         None)
            if level is None:
                continue
            gap = abs(g.coords[q1] - g.coords[q2])
            separations.append(SeparationRecord(
                atom_pair=(q1, q2),
                level=level,
                gap=gap,
                bound=Fraction(1, 2 * 3 ** level),
            ))
    return RefinementResult(
        tower=tower,
        g=g,
        certificates=certificates,
        separations=tuple(separations),
    )
