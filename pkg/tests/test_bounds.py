import math
from fractions import Fraction

import pytest

from algorithm.algebra.Gbf import Gbf
from algorithm.bounds.ClassTable import (alpha_beta_bound, class_table_frame, class_tables, classify_alpha_beta,
                                         cumulative_counts, label_bound)
from algorithm.bounds.LowerBound import lb_closed_form
from algorithm.bounds.Tightness import Verdict, tightness_verdict, trivial_bound_holds
from algorithm.construction.Coset import construct_coset_rep
from algorithm.construction.Families import alpha_beta_family, alpha_beta_kernel, alpha_beta_pairs
from algorithm.construction.KernelCatalog import holzmann_kernel
from algorithm.construction.KernelPair import KernelPair
from algorithm.spectral.Wht import coset_lower_bound


def class_rep(q: int, alpha: int, beta: int, m: int):
    order = (1, 0) + tuple(range(2, m))
    return construct_coset_rep(alpha_beta_kernel(q, beta, alpha), m, order, family='alpha-beta',
                               params={'alpha': alpha, 'beta': beta})


# ---------------------------------------------------------
# Class tables
# ---------------------------------------------------------
@pytest.mark.parametrize('q', [4, 8, 16])
@pytest.mark.parametrize('p', [2, 4, 8])
def test_bound_formula_matches_merit(q, p):
    if q % p:
        pytest.skip(f"p={p} does not divide q={q}")
    for alpha, beta in alpha_beta_pairs(q, p):
        row = classify_alpha_beta(q, p, alpha, beta)
        assert 4 * row.bound == pytest.approx(alpha_beta_kernel(q, alpha, beta).merit, abs=1e-9)


def test_p4_multipliers():
    rows = class_tables(8, 4)
    assert [row.count_multiplier for row in rows] == [Fraction(1, 2), Fraction(2), Fraction(4), Fraction(1)]
    assert [row.label for row in rows] == ['2', '3', '2+sqrt(2)', '4']
    assert [row.count(4) for row in rows] == [12, 48, 96, 24]


def test_p2_table():
    rows = class_tables(8, 2)
    assert [row.bound for row in rows] == pytest.approx([2, 4])
    assert [row.count(3) for row in rows] == [3, 6]


def test_p8_table_is_labelled():
    rows = class_tables(8, 8)
    assert all(row.label is not None for row in rows)
    assert sum(row.count(3) for row in rows) == 63 * 3
    assert [row.bound for row in rows] == sorted(row.bound for row in rows)


@pytest.mark.parametrize('p,m', [(2, 3), (2, 4), (4, 3), (4, 4)])
def test_table_totals_match_the_family(p, m):
    rows = class_tables(8, p)
    assert sum(row.count(m) for row in rows) == len(list(alpha_beta_family(8, p, m)))


def test_cumulative_counts():
    counts = cumulative_counts(class_tables(8, 4), 4)
    assert list(counts) == [12, 60, 156, 180]
    assert counts[counts.index <= 3 + 1e-9].iloc[-1] == 5 * 24 // 2
    assert counts[counts.index <= 2 + math.sqrt(2) + 1e-9].iloc[-1] == 13 * 24 // 2


def test_classify_alpha_beta():
    row = classify_alpha_beta(8, 4, 2, 4)
    assert row.bound == pytest.approx(alpha_beta_bound(8, 2, 4))
    assert row.count_multiplier == Fraction(1, 2)
    assert row.members == [(2, 4)]
    with pytest.raises(ValueError):
        classify_alpha_beta(8, 4, 1, 0)
    with pytest.raises(ValueError):
        classify_alpha_beta(8, 3, 0, 0)
    with pytest.raises(ValueError):
        class_tables(8, 16)


def test_label_bound():
    assert label_bound(2 + math.sqrt(2)) == '2+sqrt(2)'
    assert label_bound(2.5) is None


def test_class_table_frame():
    frame = class_table_frame(class_tables(8, 4, 3), 3)
    assert list(frame.columns) == ['p', 'alpha', 'beta', 'bound', 'lower_bound', 'count_multiplier', 'label',
                                   'constraint', 'count']
    assert list(frame['count']) == [3, 12, 24, 6]
    assert not frame['lower_bound'].isna().any()
    assert class_table_frame(class_tables(8, 2)).shape == (2, 8)


# ---------------------------------------------------------
# Lower bounds
# ---------------------------------------------------------
def test_lower_bounds_of_quaternary_classes():
    rows = class_tables(4, 4, 3)
    assert [row.lower_bound for row in rows] == pytest.approx([2, 2.5, 2.5, 4])
    for row in rows:
        assert row.lower_bound <= row.bound + 1e-9


@pytest.mark.parametrize('m', [3, 4])
def test_coset_lower_bound_dominates_the_closed_form(m):
    for rep in alpha_beta_family(4, 4, m):
        lower = lb_closed_form(rep.kernel, m)
        assert coset_lower_bound(rep.gbf) >= lower - 1e-9
        assert lower <= rep.upper_bound + 1e-9


@pytest.mark.parametrize('m', [4, 5])
def test_holzmann_lower_bound(m):
    kernel = holzmann_kernel(4)
    rep = construct_coset_rep(kernel, m, tuple(range(m)))
    lower = lb_closed_form(kernel, m)
    assert 1 <= lower <= 5 + 1e-9
    assert coset_lower_bound(rep.gbf) >= lower - 1e-9


@pytest.mark.parametrize('q', [2, 4, 6, 8, 10])
def test_trivial_kernel_lower_bound_by_parity(q):
    kernel = KernelPair.trivial(q)
    even = 2.0 if q % 4 == 0 else 1 + math.cos(math.pi / q) ** 2
    for m in (1, 3, 5):
        assert lb_closed_form(kernel, m) == pytest.approx(2.0)
    for m in (2, 4):
        assert lb_closed_form(kernel, m) == pytest.approx(even)


def test_lower_bound_needs_longer_target():
    with pytest.raises(ValueError):
        lb_closed_form(holzmann_kernel(4), 3)


def test_trivial_bound(rng):
    for k in (1, 2, 3):
        kernel = KernelPair(Gbf.random(4, k, rng), Gbf.random(4, k, rng))
        rep = construct_coset_rep(kernel, k + 1, tuple(range(k + 1)))
        assert trivial_bound_holds(rep)


# ---------------------------------------------------------
# Tightness
# ---------------------------------------------------------
def test_verdict_without_sweep_budget():
    rep = class_rep(8, 2, 2, 4)
    report = tightness_verdict(rep, budget=10, sample_size=0)
    assert report.tight is Verdict.UNVERIFIED
    assert report.measured is None
    assert report.parity == 'even'
    assert report.to_json()['tight'] == 'unverified'


def test_verdict_on_small_cosets():
    golay = class_rep(4, 0, 0, 3)
    report = tightness_verdict(golay)
    assert report.tight is Verdict.TIGHT
    assert report.upper == pytest.approx(2)
    assert report.swept == 4 ** 4
    assert not report.sampled

    for alpha, beta in [(1, 1), (0, 1), (0, 2)]:
        report = tightness_verdict(class_rep(4, alpha, beta, 3))
        assert report.lower - 1e-6 <= report.measured <= report.upper + 1e-6
        assert report.tight in (Verdict.TIGHT, Verdict.GAP)


def test_sampled_verdict_is_reproducible():
    rep = class_rep(8, 2, 2, 4)
    first = tightness_verdict(rep, budget=1000, sample_size=512, seed=3)
    second = tightness_verdict(rep, budget=1000, sample_size=512, seed=3)
    assert first.sampled and first.swept == 512
    assert first.measured == second.measured
    assert first.measured <= first.upper + 1e-6


@pytest.mark.slow
def test_p4_classes_are_tight_for_q8():
    for row in class_tables(8, 4):
        alpha, beta = row.members[0]
        report = tightness_verdict(class_rep(8, alpha, beta, 3))
        assert report.tight is Verdict.TIGHT
        assert report.measured == pytest.approx(row.bound, abs=0.02)


@pytest.mark.slow
def test_second_class_reaches_three_at_length_sixteen():
    rep = class_rep(8, 2, 2, 4)
    assert rep.upper_bound == pytest.approx(3)
    report = tightness_verdict(rep)
    assert not report.sampled
    assert report.measured == pytest.approx(3, abs=0.02)
