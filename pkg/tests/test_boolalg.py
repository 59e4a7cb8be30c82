import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bvdesk.boolalg import (AlgebraMismatchError, BoolElem, Cover,
                            FiniteBooleanAlgebra, Partition,
                            axioms_hold_on_triple, common_refinement,
                            is_cover, is_partition, is_refined_from,
                            sigma_criteria_check, sigma_form3)

A4 = FiniteBooleanAlgebra(4)


def elem(*atoms):
    return A4.element(atoms)


class TestLatticeOps:
    def test_meet_is_intersection(self):
        assert elem(0, 1).meet(elem(1, 2)) == elem(1)

    def test_complement(self):
        assert elem(0, 1).complement() == elem(2, 3)

    def test_leq_is_subset(self):
        assert elem(0).leq(elem(0, 1))
        assert not elem(1, 2).leq(elem(0, 1))

    def test_implies(self):
        a, b = elem(0, 1), elem(1, 2)
        assert a.implies(b) == a.complement().join(b)

    def test_mismatched_algebras_rejected(self):
        other = FiniteBooleanAlgebra(3).element([0])
        with pytest.raises(AlgebraMismatchError):
            elem(0).meet(other)

    def test_family_bounds(self):
        assert A4.sup([elem(0), elem(2)]) == elem(0, 2)
        assert A4.inf([]) == A4.top
        assert A4.sup([]) == A4.bottom
        assert A4.inf([elem(0, 1), elem(1, 2)]) == elem(1)


def test_axioms_exhaustive_small():
    for n in (1, 2, 3, 4):
        algebra = FiniteBooleanAlgebra(n)
        elements = list(algebra.elements())
        assert all(axioms_hold_on_triple(a, b, c)
                   for a, b, c in itertools.product(elements, repeat=3))


@settings(max_examples=200)
@given(st.integers(5, 16), st.data())
def test_axioms_random_large(atom_count, data):
    algebra = FiniteBooleanAlgebra(atom_count)
    masks = st.integers(0, algebra.full_mask)
    a = algebra.from_mask(data.draw(masks))
    b = algebra.from_mask(data.draw(masks))
    c = algebra.from_mask(data.draw(masks))
    assert axioms_hold_on_triple(a, b, c)


def test_axioms_thousand_random_triples():
    import random

    rng = random.Random(0)
    for _ in range(1000):
        algebra = FiniteBooleanAlgebra(rng.randint(5, 16))
        a, b, c = (algebra.from_mask(rng.randrange(algebra.full_mask + 1))
                   for _ in range(3))
        assert axioms_hold_on_triple(a, b, c)


class TestPartitionsAndCovers:
    def test_partition_examples(self):
        assert is_partition([elem(0), elem(1, 2), elem(3)])
        assert not is_partition([elem(0, 1), elem(1, 2), elem(3)])  # overlap
        assert is_cover([elem(0, 1), elem(1, 2), elem(3)])
        assert not is_cover([elem(0, 1)])
        assert not is_partition([elem(0, 1), A4.bottom, elem(2, 3)])

    def test_partition_type_validates(self):
        with pytest.raises(ValueError):
            Partition((elem(0, 1), elem(1, 2), elem(3)))
        with pytest.raises(ValueError):
            Cover((elem(0, 1),))

    def test_refined_from_element(self):
        c = [elem(0, 1), elem(2, 3)]
        assert is_refined_from(elem(0), c)
        assert not is_refined_from(elem(1, 2), c)

    def test_refined_from_cover(self):
        assert is_refined_from([elem(0), elem(2, 3)], [elem(0, 1), elem(2, 3)])

    def test_refinement_monotone(self):
        # shrinking the refined side or enlarging the refining side never
        # flips a positive verdict
        x = [elem(0), elem(2, 3)]
        c = [elem(0, 1), elem(2, 3)]
        assert is_refined_from(x, c)
        shrunk = [elem(0), elem(2)]
        assert is_refined_from(shrunk, c)
        enlarged = [elem(0, 1), elem(1, 2, 3)]
        assert is_refined_from(x, enlarged)

    @settings(max_examples=200)
    @given(st.integers(2, 6), st.data())
    def test_refinement_monotone_property(self, atoms, data):
        algebra = FiniteBooleanAlgebra(atoms)
        masks = st.integers(0, algebra.full_mask)
        x = [algebra.from_mask(data.draw(masks)) for _ in range(3)]
        c = [algebra.from_mask(data.draw(masks)) for _ in range(3)]
        if not is_refined_from(x, c):
            return
        shrunk = [m.meet(algebra.from_mask(data.draw(masks))) for m in x]
        enlarged = [m.join(algebra.from_mask(data.draw(masks))) for m in c]
        assert is_refined_from(shrunk, c)
        assert is_refined_from(x, enlarged)
        assert is_refined_from(shrunk, enlarged)


def _all_set_partitions(items):
    if not items:
        yield []
        return
    head, *rest = items
    for sub in _all_set_partitions(rest):
        yield [[head]] + sub
        for i in range(len(sub)):
            yield sub[:i] + [[head] + sub[i]] + sub[i + 1:]


def _partitions_of(algebra):
    for blocks in _all_set_partitions(list(range(algebra.atom_count))):
        yield Partition(tuple(algebra.element(b) for b in blocks))


class TestCommonRefinement:
    def test_example(self):
        p1 = Partition((elem(0, 1), elem(2, 3)))
        p2 = Partition((elem(0, 2), elem(1, 3)))
        assert common_refinement([p1, p2]).blocks == (elem(0), elem(1), elem(2), elem(3))

    def test_single_partition_idempotent(self):
        p = Partition((elem(0, 1), elem(2, 3)))
        assert common_refinement([p]).blocks == p.blocks

    def test_trivial_partition_absorbed(self):
        p1 = Partition((A4.top,))
        p2 = Partition((elem(0), elem(1, 2, 3)))
        assert common_refinement([p1, p2]).blocks == p2.blocks

    @pytest.mark.parametrize("atoms", [2, 3, 4])
    def test_coarsest_refinement_exhaustive(self, atoms):
        algebra = FiniteBooleanAlgebra(atoms)
        all_parts = list(_partitions_of(algebra))
        for p1, p2 in itertools.product(all_parts, repeat=2):
            r = common_refinement([p1, p2])
            assert is_refined_from(r, p1) and is_refined_from(r, p2)
            for q in all_parts:
                if is_refined_from(q, p1) and is_refined_from(q, p2):
                    assert is_refined_from(q, r)


class TestSigmaCriteria:
    def test_form3_two_elements(self):
        lhs, rhs = sigma_form3([elem(0, 1), elem(0, 2)])
        assert lhs == rhs == A4.top

    def test_form3_single_zero(self):
        lhs, rhs = sigma_form3([A4.bottom])
        assert lhs == rhs == A4.top

    def test_report_all_hold(self):
        report = sigma_criteria_check([[elem(0, 1)], [elem(0, 2)]])
        assert report.all_hold
        assert report.n_index == 2 and report.m_index == 1

    @settings(max_examples=150)
    @given(st.integers(1, 4), st.data())
    def test_random_matrices_all_hold(self, atoms, data):
        algebra = FiniteBooleanAlgebra(atoms)
        masks = st.integers(0, algebra.full_mask)
        matrix = [[algebra.from_mask(data.draw(masks)) for _ in range(3)]
                  for _ in range(3)]
        assert sigma_criteria_check(matrix).all_hold

    def test_shape_validation(self):
        with pytest.raises(ValueError):
            sigma_criteria_check([])
        with pytest.raises(ValueError):
            sigma_criteria_check([[elem(0)], [elem(0), elem(1)]])


def test_json_round_trip():
    e = elem(2, 0)
    assert e.to_json() == {"atoms": [0, 2]}
    assert BoolElem.from_json(e.to_json(), A4) == e
    with pytest.raises(ValueError):
        BoolElem.from_json({"bad": 1}, A4)
