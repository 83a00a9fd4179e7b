import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

import generators as gen
from niep.criteria.complex_region import RegionTag, check_complex_region, realize_complex_smigoc
from niep.criteria.guo import guo_bound, guo_bound_realize
from niep.criteria.kellogg import (
    check_kellogg,
    expand_list,
    find_borobia_partition,
    realize_borobia,
    realize_kellogg,
)
from niep.criteria.rado import check_rado, realize_rado
from niep.criteria.real import (
    check_ciarlet,
    check_salzmann,
    check_suleimanova,
    realize_ciarlet,
    realize_salzmann,
    realize_suleimanova,
)
from niep.errors import BadSigns, CriterionNotSatisfied, NoPartitionFound, RegionViolated
from niep.scalars import QComplex
from niep.verify import certify

RADO_EXAMPLE = [[0, 5, 0, 0, 1], [5, 0, 0, 0, 1], [1, 0, 0, 5, 0], [1, 0, 5, 0, 0], [0, 0, 4, 0, 2]]


@pytest.mark.parametrize("values", [[3, -1, -1, -1], [5, -1, -2, -2], [1, -1]])
def test_suleimanova_accepts_and_realizes(values):
    assert check_suleimanova(values)
    m = realize_suleimanova(values)
    assert certify(m, values).passed
    assert m.row_sum == max(values)


@pytest.mark.parametrize("values", [[1, -1, -1], [2, 1, -1, -1], [2, 0, -1, -1]])
def test_suleimanova_rejects(values):
    assert not check_suleimanova(values)
    with pytest.raises(CriterionNotSatisfied):
        realize_suleimanova(values)


def test_salzmann():
    assert check_salzmann([2, 0, -1, -1])
    assert certify(realize_salzmann([2, 0, -1, -1]), [2, 0, -1, -1]).passed
    assert not check_salzmann([1, 1, 0, -1])
    assert realize_salzmann([0, 0]) == [[0, 0], [0, 0]]


def test_ciarlet():
    assert check_ciarlet([5, 1, -1, -1, -1])
    assert certify(realize_ciarlet([5, 1, -1, -1, -1]), [5, 1, -1, -1, -1]).passed
    assert not check_ciarlet([4, 1, -1, -1, -1])


def test_kellogg_index_set_and_acceptance():
    data = check_kellogg([7, 3, 3, -5, -5])
    assert data.K == [2, 3]
    data = check_kellogg([6, 1, -1, -2, -4])
    assert data and data.K == [2] and data.mu == 3
    assert certify(realize_kellogg([6, 1, -1, -2, -4]), [6, 1, -1, -2, -4]).passed


def test_kellogg_reports_the_violated_inequality():
    data = check_kellogg([1, 1, 1, -3, -3])
    assert not data
    assert data.violation.startswith("(Kec1) at k=2")


def test_borobia_finds_a_merging_partition():
    part = find_borobia_partition([6, 1, -1, -2, -4])
    assert part.merged == [6, 1, -1, -6]
    assert certify(realize_borobia([6, 1, -1, -2, -4]), [6, 1, -1, -2, -4]).passed


def test_borobia_without_a_partition():
    with pytest.raises(NoPartitionFound):
        find_borobia_partition([1, -1, -1])


@settings(max_examples=30)
@given(st.randoms(use_true_random=False))
def test_kellogg_lists_are_borobia_lists(rnd):
    values = gen.kellogg_list(random.Random(rnd.random()))
    assert find_borobia_partition(values) is not None


def test_expand_list_examples():
    assert expand_list(3, [-1, -2]) == [[0, 1, 2], [1, 0, 2], [2, 1, 0]]
    short = expand_list(1, [-1, -2])
    assert short.rows[2][2] == -2
    assert certify(short, [1, -1, -2]).char_poly_match
    with pytest.raises(BadSigns):
        expand_list(-2, [3, 1])


@given(st.randoms(use_true_random=False))
def test_expand_list_negativity_stays_in_the_last_column(rnd):
    lead, mus = gen.expand_data(random.Random(rnd.random()), realizing=False)
    m = expand_list(lead, mus)
    floor = lead + sum(mus)
    for i, row in enumerate(m.rows):
        for j, v in enumerate(row):
            if j < m.n - 1:
                assert v >= 0
            else:
                assert v >= min(floor, 0)
    assert certify(m, [lead, *mus]).char_poly_match


def test_complex_region_realization():
    z = QComplex(-1, 1)
    values = [2, z, z.conjugate()]
    assert check_complex_region(values)
    m = realize_complex_smigoc(values)
    assert m == [[0, 0, 2], [2, 0, 0], [1, 1, 0]]
    assert certify(m, values).passed


def test_complex_region_violation():
    w = QComplex(-1, 2)
    assert not check_complex_region([1, w, w.conjugate()])
    with pytest.raises(RegionViolated):
        realize_complex_smigoc([1, w, w.conjugate()])


def test_complex_region_kinds_are_nested():
    rng = random.Random("wedge")
    for _ in range(50):
        values = gen.wedge_list(rng, wide=False)
        assert check_complex_region(values, RegionTag.SQRT3_WEDGE)
        assert check_complex_region(values, RegionTag.RE_DOMINANT)


@pytest.mark.parametrize(
    "tail, bound",
    [
        ([-1, -1, -1], 3),
        ([-1, QComplex(mpq(-1, 2), mpq(1, 2)), QComplex(mpq(-1, 2), mpq(-1, 2))], 3),
        ([0, 0], 0),
    ],
)
def test_guo_bound_realization(tail, bound):
    assert guo_bound(tail) == bound
    value, m = guo_bound_realize(tail)
    assert value == bound
    assert certify(m, [bound, *tail]).passed


def test_rado_reproduces_the_golden_matrix():
    assert check_rado([6, 3, 3, -5, -5])
    assert realize_rado([6, 3, 3, -5, -5]) == RADO_EXAMPLE
