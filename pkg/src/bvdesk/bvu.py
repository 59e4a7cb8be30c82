"""Bounded-rank Boolean-valued sets with exact truth-value evaluation.

A B-valued set is a finite map from B-valued sets of strictly smaller rank
to elements of a fixed finite Boolean algebra B.  Truth values of membership
and equality are computed by the usual mutual recursion:

    [[x in y]] = sup_{t in dom(y)} ( y(t) ^ [[t = x]] )
    [[x = y]]  = inf_{t in dom(x)} ( x(t) => [[t in y]] )
               ^ inf_{t in dom(y)} ( y(t) => [[t in x]] )

Equality uses infima over the domains (the empty infimum is 1, which is
forced by reflexivity [[x = x]] = 1); a join-based variant would make the
empty set unequal to itself.

The module provides standard names of hereditarily finite sets, mixings
along partitions of unity, ascent/descent between plain sets of B-valued
sets and single B-valued sets, the two arrow-cancellation checks, and a
restricted-transfer checker comparing classical truth over hereditarily
finite sets with the Boolean truth value over standard names.

B-valued sets are hash-consed: structurally identical sets are the same
object, which makes the truth-value memo tables cheap and reliable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from . import formula as F
from .boolalg import BoolElem, FiniteBooleanAlgebra, Partition, is_partition

#: Default resource caps; exceeding them raises :class:`ResourceCapError`.
RANK_CAP = 6
DOM_CAP = 32


class ResourceCapError(ValueError):
    """Raised when a construction exceeds the rank or domain-size cap."""


class EvalError(ValueError):
    """Raised on unbound constants or other evaluation failures."""


class BSet:
    """An immutable, interned B-valued set.

    Do not instantiate directly; use :func:`bset`, :func:`standard_name`,
    :func:`mix`, or :func:`ascent`.  Identity coincides with structural
    equality thanks to interning.
    """

    __slots__ = ("algebra", "dom", "rank", "uid")

    algebra: FiniteBooleanAlgebra
    dom: tuple[tuple["BSet", BoolElem], ...]
    rank: int
    uid: int

    def children(self) -> tuple["BSet", ...]:
        return tuple(t for t, _ in self.dom)

    def value(self, child: "BSet") -> BoolElem:
        for t, b in self.dom:
            if t is child:
                return b
        return self.algebra.bottom

    def __repr__(self) -> str:
        if not self.dom:
            return "{}"
        inner = ", ".join(f"{t!r}@{b!r}" for t, b in self.dom)
        return "{" + inner + "}"

    def to_json(self) -> dict:
        return {"dom": [[t.to_json(), b.to_json()] for t, b in self.dom]}


_INTERN: dict[tuple, BSet] = {}
_UIDS = itertools.count()


def bset(algebra: FiniteBooleanAlgebra,
         pairs: Iterable[tuple[BSet, BoolElem]] = (),
         *,
         max_rank: int | None = None,
         max_dom: int | None = None) -> BSet:
    """Intern-constructing factory for B-valued sets.

    Duplicate children are merged by joining their values.  The children
    must already live over the same algebra.
    """
    max_rank = RANK_CAP if max_rank is None else max_rank
    max_dom = DOM_CAP if max_dom is None else max_dom
    merged: dict[int, tuple[BSet, BoolElem]] = {}
    for child, val in pairs:
        if child.algebra.atom_count != algebra.atom_count:
            raise ValueError("child B-valued set lives over a different algebra")
        if val.algebra.atom_count != algebra.atom_count:
            raise ValueError("value lies in a different algebra")
        if child.uid in merged:
            merged[child.uid] = (child, merged[child.uid][1].join(val))
        else:
            merged[child.uid] = (child, val)
    dom = tuple(merged[uid] for uid in sorted(merged))
    if len(dom) > max_dom:
        raise ResourceCapError(f"domain size {len(dom)} exceeds cap {max_dom}")
    rank = 1 + max((t.rank for t, _ in dom), default=-1)
    if rank > max_rank:
        raise ResourceCapError(f"rank {rank} exceeds cap {max_rank}")
    key = (algebra.atom_count, tuple((t.uid, b.mask) for t, b in dom))
    hit = _INTERN.get(key)
    if hit is not None:
        return hit
    obj = object.__new__(BSet)
    object.__setattr__(obj, "algebra", algebra)
    object.__setattr__(obj, "dom", dom)
    object.__setattr__(obj, "rank", rank)
    object.__setattr__(obj, "uid", next(_UIDS))
    _INTERN[key] = obj
    return obj


# -- truth values ------------------------------------------------------------

_MEM_CACHE: dict[tuple[int, int], BoolElem] = {}
_EQ_CACHE: dict[tuple[int, int], BoolElem] = {}


def clear_truth_caches() -> None:
    _MEM_CACHE.clear()
    _EQ_CACHE.clear()


def _check_same(x: BSet, y: BSet) -> None:
    if x.algebra.atom_count != y.algebra.atom_count:
        raise ValueError("B-valued sets live over different algebras")


def truth_mem(x: BSet, y: BSet) -> BoolElem:
    """The Boolean truth value [[x in y]]."""
    _check_same(x, y)
    key = (x.uid, y.uid)
    hit = _MEM_CACHE.get(key)
    if hit is not None:
        return hit
    acc = 0
    for t, b in y.dom:
        if b.is_zero:
            continue
        acc |= (b.meet(truth_eq(t, x))).mask
    result = y.algebra.from_mask(acc)
    _MEM_CACHE[key] = result
    return result


def truth_eq(x: BSet, y: BSet) -> BoolElem:
    """The Boolean truth value [[x = y]].

    Computed structurally even for x is y (reflexivity is a theorem of the
    recursion, not a special case; the cache keeps the cost negligible).
    """
    _check_same(x, y)
    key = (x.uid, y.uid)
    hit = _EQ_CACHE.get(key)
    if hit is not None:
        return hit
    acc = x.algebra.full_mask
    for t, b in x.dom:
        acc &= b.implies(truth_mem(t, y)).mask
        if acc == 0:
            break
    if acc != 0:
        for t, b in y.dom:
            acc &= b.implies(truth_mem(t, x)).mask
            if acc == 0:
                break
    result = x.algebra.from_mask(acc)
    _EQ_CACHE[key] = result
    return result


def equivalent(x: BSet, y: BSet) -> bool:
    """Truth-value equivalence: [[x = y]] = 1."""
    return truth_eq(x, y).is_one


# -- standard names ----------------------------------------------------------


def hf_literal(obj) -> frozenset:
    """Normalize a hereditarily finite set literal to nested frozensets.

    Nonnegative integers denote von Neumann naturals; lists, tuples, sets,
    and frozensets denote sets of their (recursively normalized) members.
    """
    if isinstance(obj, bool):
        raise TypeError("booleans are not hereditarily finite set literals")
    if isinstance(obj, int):
        if obj < 0:
            raise ValueError("negative integers have no von Neumann encoding")
        return frozenset(hf_literal(k) for k in range(obj))
    if isinstance(obj, (list, tuple, set, frozenset)):
        return frozenset(hf_literal(m) for m in obj)
    raise TypeError(f"cannot interpret {obj!r} as a hereditarily finite set")


def hf_rank(h: frozenset) -> int:
    return 1 + max((hf_rank(m) for m in h), default=-1)


_NAME_CACHE: dict[tuple[int, frozenset], BSet] = {}


def standard_name(algebra: FiniteBooleanAlgebra, h,
                  *, max_rank: int | None = None) -> BSet:
    """The standard name of a hereditarily finite set: all values are 1."""
    hf = h if isinstance(h, frozenset) else hf_literal(h)
    key = (algebra.atom_count, hf)
    hit = _NAME_CACHE.get(key)
    if hit is not None:
        # a cached name must still respect the cap requested by this caller
        if hit.rank > (RANK_CAP if max_rank is None else max_rank):
            raise ResourceCapError(
                f"rank {hit.rank} exceeds cap {RANK_CAP if max_rank is None else max_rank}")
        return hit
    top = algebra.top
    children = [standard_name(algebra, m, max_rank=max_rank) for m in hf]
    result = bset(algebra, [(c, top) for c in children], max_rank=max_rank)
    _NAME_CACHE[key] = result
    return result


# -- mixing, ascent, descent -------------------------------------------------


def mix(parts: Partition | Sequence[BoolElem], xs: Sequence[BSet],
        *, max_rank: int | None = None, max_dom: int | None = None) -> BSet:
    """Mixing of the family ``xs`` by the partition of unity ``parts``.

    The result m satisfies [[m = xs[i]]] >= parts[i] for every i.
    """
    blocks = tuple(parts.blocks if isinstance(parts, Partition) else parts)
    if len(blocks) != len(xs):
        raise ValueError(f"partition has {len(blocks)} blocks but {len(xs)} sets given")
    if not is_partition(blocks):
        raise ValueError("mixing requires a partition of unity")
    algebra = blocks[0].algebra
    children: dict[int, BSet] = {}
    for x in xs:
        for t, _ in x.dom:
            children[t.uid] = t
    pairs = []
    for t in children.values():
        val = algebra.sup(b.meet(truth_mem(t, x)) for b, x in zip(blocks, xs))
        pairs.append((t, val))
    return bset(algebra, pairs, max_rank=max_rank, max_dom=max_dom)


def ascent(algebra: FiniteBooleanAlgebra, xs: Sequence[BSet]) -> BSet:
    """The B-valued set with domain ``xs`` and all values 1."""
    top = algebra.top
    return bset(algebra, [(x, top) for x in xs])


def descent(x: BSet) -> list[BSet]:
    """All members of full membership truth, up to truth-value equivalence.

    Over a finite algebra every partition refines the partition into atoms,
    so mixings of dom(x) indexed by single atoms exhaust the candidates.
    Returns one representative per equivalence class y with [[y in x]] = 1.
    """
    algebra = x.algebra
    candidates = [t for t, _ in x.dom]
    if not candidates:
        return []
    atom_blocks = tuple(algebra.atom(i) for i in range(algebra.atom_count))
    reps: list[BSet] = []
    for choice in itertools.product(candidates, repeat=algebra.atom_count):
        y = mix(atom_blocks, list(choice))
        if not truth_mem(y, x).is_one:
            continue
        if not any(equivalent(y, r) for r in reps):
            reps.append(y)
    return reps


def atom_mixings(algebra: FiniteBooleanAlgebra, xs: Sequence[BSet]) -> list[BSet]:
    """All mixings of ``xs`` over the atom partition, up to equivalence."""
    if not xs:
        return []
    atom_blocks = tuple(algebra.atom(i) for i in range(algebra.atom_count))
    reps: list[BSet] = []
    for choice in itertools.product(xs, repeat=algebra.atom_count):
        y = mix(atom_blocks, list(choice))
        if not any(equivalent(y, r) for r in reps):
            reps.append(y)
    return reps


@dataclass(frozen=True)
class EscherReport:
    """Outcome of the two arrow-cancellation checks for a finite family."""

    up_down_ok: bool
    down_up_ok: bool
    up_down_classes: int
    expected_classes: int

    @property
    def ok(self) -> bool:
        return self.up_down_ok and self.down_up_ok

    def to_json(self) -> dict:
        return {
            "up_down_ok": self.up_down_ok,
            "down_up_ok": self.down_up_ok,
            "up_down_classes": self.up_down_classes,
            "expected_classes": self.expected_classes,
        }


def escher_check(algebra: FiniteBooleanAlgebra, xs: Sequence[BSet]) -> EscherReport:
    """Verify ascent-then-descent = mixings, and descent-then-ascent identity.

    The first direction compares descent(ascent(xs)) with the atom-indexed
    mixings of xs, as sets modulo truth-value equivalence.  The second
    rebuilds y := ascent(xs) from its descent and checks [[y' = y]] = 1.
    """
    y = ascent(algebra, xs)
    down = descent(y)
    expected = atom_mixings(algebra, xs)
    matches = (
        len(down) == len(expected)
        and all(any(equivalent(d, e) for e in expected) for d in down)
        and all(any(equivalent(e, d) for d in down) for e in expected)
    )
    y_again = ascent(algebra, descent(y))
    return EscherReport(
        up_down_ok=matches,
        down_up_ok=equivalent(y_again, y),
        up_down_classes=len(down),
        expected_classes=len(expected),
    )


def canonicalize(x: BSet) -> BSet:
    """Canonical representative of the equivalence class of ``x``.

    Children are canonicalized recursively, merged when truth-equivalent,
    revalued by their membership truth [[t in x]], and zero-valued entries
    are dropped.  Satisfies [[canonicalize(x) = x]] = 1.
    """
    canon_children: list[BSet] = []
    for t, _ in x.dom:
        ct = canonicalize(t)
        if not any(equivalent(ct, r) for r in canon_children):
            canon_children.append(ct)
    pairs = []
    for t in canon_children:
        v = truth_mem(t, x)
        if not v.is_zero:
            pairs.append((t, v))
    return bset(x.algebra, pairs)


# -- formula evaluation -------------------------------------------------------


def _resolve(term: F.Var, env: Mapping[str, BSet]) -> BSet:
    try:
        return env[term.name]
    except KeyError:
        raise EvalError(f"unbound constant {term.name!r}") from None


def eval_formula(f: F.Formula, env: Mapping[str, BSet],
                 algebra: FiniteBooleanAlgebra | None = None) -> BoolElem:
    """Boolean truth value of a formula under a name environment.

    Connectives map to the algebra operations (implication a => b is
    a* v b); quantifiers over a B-valued set z use its domain:

        [[forall v in z : p]] = inf_{t in dom z} ( z(t) => [[p(t)]] )
        [[exists v in z : p]] = sup_{t in dom z} ( z(t) ^  [[p(t)]] )
    """
    if algebra is None:
        if not env:
            raise EvalError("cannot infer the algebra from an empty environment")
        algebra = next(iter(env.values())).algebra
    return _eval(f, dict(env), algebra)


def _eval(f: F.Formula, env: dict[str, BSet], algebra: FiniteBooleanAlgebra) -> BoolElem:
    if isinstance(f, F.Eq):
        return truth_eq(_resolve(f.left, env), _resolve(f.right, env))
    if isinstance(f, F.Mem):
        return truth_mem(_resolve(f.left, env), _resolve(f.right, env))
    if isinstance(f, F.Not):
        return _eval(f.body, env, algebra).complement()
    if isinstance(f, F.And):
        return _eval(f.left, env, algebra).meet(_eval(f.right, env, algebra))
    if isinstance(f, F.Or):
        return _eval(f.left, env, algebra).join(_eval(f.right, env, algebra))
    if isinstance(f, F.Implies):
        return _eval(f.left, env, algebra).implies(_eval(f.right, env, algebra))
    if isinstance(f, F.Iff):
        a = _eval(f.left, env, algebra)
        b = _eval(f.right, env, algebra)
        return a.implies(b).meet(b.implies(a))
    if isinstance(f, (F.Forall, F.Exists)):
        z = _resolve(f.bound, env)
        saved = env.get(f.var)
        acc = algebra.full_mask if isinstance(f, F.Forall) else 0
        for t, b in z.dom:
            env[f.var] = t
            body = _eval(f.body, env, algebra)
            if isinstance(f, F.Forall):
                acc &= b.implies(body).mask
            else:
                acc |= b.meet(body).mask
        if saved is None:
            env.pop(f.var, None)
        else:
            env[f.var] = saved
        return algebra.from_mask(acc)
    raise TypeError(f"not a formula node: {f!r}")


def existential_witnesses(f: F.Exists, env: Mapping[str, BSet],
                          algebra: FiniteBooleanAlgebra | None = None
                          ) -> tuple[BoolElem, list[tuple[BSet, BoolElem]], BSet | None]:
    """Finite-candidate witness report for a top-level existential.

    Returns the truth value, the per-candidate contributions
    z(t) ^ [[p(t)]] for t in dom(z), and a candidate attaining the full
    join if one exists (None when the join is only attained by mixing).
    """
    if algebra is None:
        if not env:
            raise EvalError("cannot infer the algebra from an empty environment")
        algebra = next(iter(env.values())).algebra
    env2 = dict(env)
    z = _resolve(f.bound, env2)
    contributions: list[tuple[BSet, BoolElem]] = []
    for t, b in z.dom:
        env2[f.var] = t
        contributions.append((t, b.meet(_eval(f.body, env2, algebra))))
    total = algebra.sup(v for _, v in contributions)
    attained = next((t for t, v in contributions if v == total), None)
    return total, contributions, attained


# -- classical evaluation and restricted transfer ------------------------------


def classical_eval(f: F.Formula, env: Mapping[str, frozenset]) -> bool:
    """Evaluate a formula classically over hereditarily finite sets."""
    if isinstance(f, F.Eq):
        return env[f.left.name] == env[f.right.name]
    if isinstance(f, F.Mem):
        return env[f.left.name] in env[f.right.name]
    if isinstance(f, F.Not):
        return not classical_eval(f.body, env)
    if isinstance(f, F.And):
        return classical_eval(f.left, env) and classical_eval(f.right, env)
    if isinstance(f, F.Or):
        return classical_eval(f.left, env) or classical_eval(f.right, env)
    if isinstance(f, F.Implies):
        return (not classical_eval(f.left, env)) or classical_eval(f.right, env)
    if isinstance(f, F.Iff):
        return classical_eval(f.left, env) == classical_eval(f.right, env)
    if isinstance(f, (F.Forall, F.Exists)):
        bound = env[f.bound.name]
        env2 = dict(env)
        results = []
        for m in bound:
            env2[f.var] = m
            results.append(classical_eval(f.body, env2))
        return all(results) if isinstance(f, F.Forall) else any(results)
    raise TypeError(f"not a formula node: {f!r}")


@dataclass(frozen=True)
class TransferReport:
    """Comparison of classical truth with the Boolean truth value."""

    classical: bool
    truth_value: BoolElem
    two_valued: bool

    @property
    def ok(self) -> bool:
        return self.two_valued and (self.classical == self.truth_value.is_one)

    def to_json(self) -> dict:
        return {
            "classical": self.classical,
            "truth_value": self.truth_value.to_json(),
            "two_valued": self.two_valued,
            "ok": self.ok,
        }


def bounded_transfer_check(f: F.Formula, h_env: Mapping[str, object],
                           algebra: FiniteBooleanAlgebra,
                           *, max_rank: int | None = None) -> TransferReport:
    """Check restricted transfer for a formula over hereditarily finite sets.

    The formula is evaluated classically over ``h_env`` and Boolean-valued
    over the standard names of the same sets; the verdict requires the two
    to agree and the truth value to be two-valued (0 or 1).  All formulas
    expressible in the DSL are bounded, so no boundedness check is needed.
    ``max_rank`` lifts the default rank cap for large constants (the name
    of the natural n has rank n).
    """
    hf_env = {name: hf_literal(value) for name, value in h_env.items()}
    bv_env = {name: standard_name(algebra, hf, max_rank=max_rank)
              for name, hf in hf_env.items()}
    classical = classical_eval(f, hf_env)
    value = eval_formula(f, bv_env, algebra)
    two_valued = value.is_zero or value.is_one
    return TransferReport(classical=classical, truth_value=value, two_valued=two_valued)


# -- JSON environments ---------------------------------------------------------


def bset_from_json(obj: dict, algebra: FiniteBooleanAlgebra) -> BSet:
    """Decode a B-valued set literal: {"dom": [[<bset>, <boolelem>], ...]}
    or the standard-name shorthand {"hf": <nested arrays or int>}."""
    if not isinstance(obj, dict):
        raise ValueError("B-valued set JSON must be an object")
    if "hf" in obj:
        return standard_name(algebra, _hf_from_json(obj["hf"]))
    if "dom" in obj:
        pairs = []
        for entry in obj["dom"]:
            if not isinstance(entry, (list, tuple)) or len(entry) != 2:
                raise ValueError("dom entries must be [<bset>, <boolelem>] pairs")
            child = bset_from_json(entry[0], algebra)
            val = BoolElem.from_json(entry[1], algebra)
            pairs.append((child, val))
        return bset(algebra, pairs)
    raise ValueError('B-valued set JSON needs a "dom" or "hf" key')


def _hf_from_json(obj) -> frozenset:
    if isinstance(obj, int) and not isinstance(obj, bool):
        return hf_literal(obj)
    if isinstance(obj, list):
        return frozenset(_hf_from_json(m) for m in obj)
    raise ValueError("hf literals are nested arrays or nonnegative integers")


def env_from_json(obj: Mapping[str, dict], algebra: FiniteBooleanAlgebra) -> dict[str, BSet]:
    return {name: bset_from_json(spec, algebra) for name, spec in obj.items()}
