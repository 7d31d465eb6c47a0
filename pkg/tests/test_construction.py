import itertools
import math

import numpy as np
import pytest

from algorithm.algebra.Codes import affine_gbf, rm_membership, zrm_membership
from algorithm.algebra.Gbf import Gbf
from algorithm.construction.Coset import (CosetRep, construct_coset_rep, coset_word_indices, enumerate_coset,
                                          sweep_coset)
from algorithm.construction.Families import (alpha_beta_family, alpha_beta_kernel, alpha_beta_representative,
                                             chain_permutations, davis_jedwab_family, distinct_by_anf, golay_chain)
from algorithm.construction.Golay import golay_concatenate, golay_interleave, rs_combine
from algorithm.construction.KernelCatalog import (gamma_delta_family, gamma_delta_kernels, holzmann_kernel,
                                                 kernel_catalog)
from algorithm.construction.KernelPair import KernelPair
from algorithm.construction.Path import (PathSpec, construct_path, construct_path_sequences, random_path_spec)
from algorithm.errors import ShapeMismatchError, WorkCapError
from algorithm.sequence.Correlation import star
from algorithm.sequence.CxSeq import CxSeq
from algorithm.sequence.Phi import psi


J = 1j


def companion_star(rep: CosetRep) -> float:
    return star(psi(rep.gbf), psi(rep.companion))


# ---------------------------------------------------------
# Kernel pairs and the catalog
# ---------------------------------------------------------
def test_trivial_kernel():
    kernel = KernelPair.trivial(4)
    assert kernel.k == 0
    assert kernel.merit == pytest.approx(2)
    assert kernel.upper_bound == pytest.approx(2)
    assert kernel.is_complementary


def test_holzmann_kernel_sequences():
    kernel = holzmann_kernel(4)
    assert psi(kernel.a).allclose(CxSeq([1, 1, 1, -1, 1, 1, -1, 1]))
    assert psi(kernel.b).allclose(CxSeq([1, J, J, -1, 1, -J, -J, -1]))
    assert kernel.star_psi == pytest.approx(16)
    assert kernel.is_complementary
    with pytest.raises(ValueError):
        holzmann_kernel(6)


def test_kernel_catalog():
    catalog = kernel_catalog(4)
    assert catalog['trivial'].merit == pytest.approx(2)
    assert 'holzmann-kharaghani' in catalog
    assert 'alpha-beta(1,2)' in catalog
    for name, kernel in catalog.items():
        if name.startswith('gamma-delta'):
            assert kernel.merit <= 16 + 1e-9
    assert 'holzmann-kharaghani' not in kernel_catalog(6, include_gamma_delta=False)


def test_gamma_delta_kernels_contain_alpha_beta_generators():
    kept = {kernel.key() for kernel in gamma_delta_kernels(4)}
    for alpha, beta in [(0, 0), (1, 1), (0, 1)]:
        kernel = alpha_beta_kernel(4, alpha, beta)
        assert kernel.merit <= 16
        assert kernel.key() in kept


@pytest.mark.parametrize('m', [3, 4])
def test_gamma_delta_family_is_tagged_cubic(m):
    reps = list(gamma_delta_family(4, m))
    assert len(reps) == len(gamma_delta_kernels(4))
    for rep in reps:
        assert rep.family == 'cubic'
        assert set(rep.params) == {'gamma', 'delta', 'alpha', 'beta'}
        assert rep.upper_bound <= 4 + 1e-9
        assert rep.gbf.degree <= rep.degree <= 3
        assert rep.to_json()['family'] == 'cubic'


def test_kernel_pair_json_round_trip():
    kernel = holzmann_kernel(8)
    restored = KernelPair.from_json(kernel.to_json())
    assert restored == kernel
    assert restored.name == kernel.name
    with pytest.raises(ShapeMismatchError):
        KernelPair(Gbf.zero(4, 2), Gbf.zero(4, 3))


# ---------------------------------------------------------
# Rudin-Shapiro and Golay doubling
# ---------------------------------------------------------
def test_rs_combine_example():
    C, D = rs_combine(CxSeq.ones(1), CxSeq.ones(1))
    assert C.allclose(CxSeq([2]))
    assert np.allclose(D.values, [0])
    assert star(C, D) == pytest.approx(4)


@pytest.mark.parametrize('double', [golay_concatenate, golay_interleave])
def test_golay_closure_up_to_256(double):
    pair = (CxSeq([1, 1]), CxSeq([1, -1]))
    while pair[0].n < 256:
        pair = double(pair)
        assert star(*pair) == pytest.approx(2 * pair[0].n, abs=1e-9)


# ---------------------------------------------------------
# Path construction
# ---------------------------------------------------------
def test_path_with_trivial_kernel():
    spec = PathSpec(m=3, s=3, t=0, pi=(0, 1, 2))
    f, companion = construct_path(KernelPair.trivial(2), spec)
    assert f == Gbf.from_terms(2, 3, {(0, 1): 1, (1, 2): 1})
    assert companion == f + Gbf.variable(2, 3, 2)
    assert star(psi(f), psi(companion)) == pytest.approx(16)


@pytest.mark.parametrize('m', [4, 5])
def test_path_from_holzmann_kernel_is_golay(m, rng):
    kernel = holzmann_kernel(4)
    for _ in range(4):
        f, companion = construct_path(kernel, random_path_spec(m, 3, 4, rng))
        assert star(psi(f), psi(companion)) == pytest.approx(2 * (1 << m), abs=1e-9)


@pytest.mark.parametrize('q', [2, 4])
def test_path_star_identity(q, rng):
    for k in (0, 1, 2):
        kernel = KernelPair(Gbf.random(q, k, rng), Gbf.random(q, k, rng))
        for m in range(k + 1, 6):
            for s in range(m - k + 1):
                for pi in itertools.permutations(range(m - k)):
                    weights = tuple(int(w) for w in rng.integers(0, q, size=m - k))
                    spec = PathSpec(m, s, m - k - s, pi, weights, int(rng.integers(0, q)))
                    f, companion = construct_path(kernel, spec)
                    expected = (1 << (m - k)) * kernel.star_psi
                    assert star(psi(f), psi(companion)) == pytest.approx(expected, abs=1e-9)


def test_path_sequences_agree_with_anf(rng):
    for q, k in [(2, 1), (4, 2), (8, 2), (4, 3)]:
        kernel = KernelPair(Gbf.random(q, k, rng), Gbf.random(q, k, rng))
        for m in range(k + 1, 6):
            spec = random_path_spec(m, k, q, rng)
            f, companion = construct_path(kernel, spec)
            C, D = construct_path_sequences(kernel, spec)
            assert C.allclose(psi(f))
            assert D.allclose(psi(companion))


def test_path_spec_validation():
    with pytest.raises(ValueError):
        PathSpec(m=3, s=0, t=0, pi=())
    with pytest.raises(ValueError):
        PathSpec(m=3, s=2, t=0, pi=(0, 0))
    with pytest.raises(ShapeMismatchError):
        PathSpec(m=3, s=2, t=0, pi=(0, 1), weights=(1,))
    spec = PathSpec(m=5, s=1, t=2, pi=(2, 0, 1))
    assert spec.k == 2
    assert spec.j_indices == (0, 3, 4)
    assert spec.i_indices == (1, 2)
    assert spec.chain == (4, 0, 3)
    with pytest.raises(ShapeMismatchError):
        construct_path(holzmann_kernel(4), spec)


# ---------------------------------------------------------
# Coset representatives
# ---------------------------------------------------------
def test_coset_rep_example():
    kernel = KernelPair(Gbf.from_terms(4, 2, {(0, 1): 2}), Gbf.from_terms(4, 2, {(0, 1): 2, (0,): 3, (1,): 1}))
    rep = construct_coset_rep(kernel, 3, (0, 1, 2))
    assert rep.gbf == Gbf.from_terms(4, 3, {(0, 1): 2, (0, 2): 3, (1, 2): 1})
    assert rep.upper_bound == pytest.approx(3)
    assert rep.degree == 2
    assert rep.coset_size == 4 ** 4
    data = rep.to_json()
    assert data['k'] == 2 and data['pi'] == [0, 1, 2]
    assert data['upper_bound'] == pytest.approx(3)


def test_coset_rep_with_trivial_kernel_is_the_golay_chain():
    for pi in chain_permutations(4):
        rep = construct_coset_rep(KernelPair.trivial(4), 4, pi)
        assert rep.gbf == golay_chain(4, 4, pi)
        assert rep.upper_bound == pytest.approx(2)


def test_coset_rep_from_holzmann_kernel(rng):
    kernel = holzmann_kernel(4)
    for _ in range(3):
        pi = tuple(int(p) for p in rng.permutation(4))
        rep = construct_coset_rep(kernel, 4, pi)
        assert rep.upper_bound == pytest.approx(5)
        assert companion_star(rep) == pytest.approx(32)


def test_coset_rep_validation():
    kernel = holzmann_kernel(4)
    with pytest.raises(ValueError):
        construct_coset_rep(kernel, 3, (0, 1, 2))
    with pytest.raises(ValueError):
        construct_coset_rep(kernel, 4, (0, 1, 2, 2))
    with pytest.raises(ValueError):
        construct_coset_rep(kernel, 4, (0, 1, 2, 3), family='unknown')


def test_enumerate_coset_counts():
    rep = construct_coset_rep(KernelPair.trivial(2), 2, (0, 1))
    assert sum(1 for _ in enumerate_coset(rep)) == 8
    f = Gbf.from_terms(4, 3, {(0, 1): 2})
    words = list(enumerate_coset(f))
    assert len(words) == 256
    assert len({tuple(np.round(w.values, 9)) for w in words}) == 256
    with pytest.raises(WorkCapError):
        list(enumerate_coset(f, cap=100))


def test_sampled_word_indices_are_seeded():
    first = coset_word_indices(8, 6, mode='sample', sample_size=1000, seed=7)
    again = coset_word_indices(8, 6, mode='sample', sample_size=1000, seed=7)
    assert np.array_equal(first, again)
    assert first.shape == (1000,)
    assert np.all(np.diff(first) > 0)
    assert first.max() < 8 ** 7
    assert coset_word_indices(2, 2, mode='sample', sample_size=1000).shape == (8,)
    with pytest.raises(ValueError):
        coset_word_indices(2, 2, mode='grid')


def test_coset_words_respect_the_bound(rng):
    reps = [construct_coset_rep(holzmann_kernel(4), 4, (0, 1, 2, 3))]
    reps += [construct_coset_rep(alpha_beta_kernel(4, beta, alpha), 3, (1, 0, 2))
             for alpha, beta in [(0, 0), (1, 1), (0, 1), (0, 2), (3, 2)]]
    reps += [construct_coset_rep(KernelPair(Gbf.random(2, 1, rng), Gbf.random(2, 1, rng)), 3, (2, 0, 1))]
    for rep in reps:
        summary = sweep_coset(rep)
        assert summary.count == rep.coset_size
        assert summary.measured_max <= rep.upper_bound + 1e-6
        assert companion_star(rep) <= (1 << (rep.m - rep.k)) * rep.kernel.merit + 1e-9


# ---------------------------------------------------------
# Families
# ---------------------------------------------------------
@pytest.mark.parametrize('q', [2, 4, 8])
@pytest.mark.parametrize('m', [2, 3, 4, 5, 6])
def test_golay_family_star(q, m):
    reps = list(davis_jedwab_family(q, m))
    assert len(reps) == math.factorial(m) // 2
    for rep in reps:
        assert rep.family == 'golay'
        assert companion_star(rep) == pytest.approx(1 << (m + 1), abs=1e-9)


def test_golay_family_representatives_are_distinct():
    assert len(list(davis_jedwab_family(4, 3))) == 3
    assert len(distinct_by_anf(davis_jedwab_family(2, 4))) == 12


@pytest.mark.parametrize('q', [2, 4, 8])
def test_golay_family_words_are_golay(q, rng):
    for m in (2, 3, 4, 5):
        for rep in davis_jedwab_family(q, m):
            half = Gbf.variable(q, m, rep.pi[-1]).scale(q // 2)
            for _ in range(3):
                offset = affine_gbf(q, m, rng.integers(0, q, size=m), int(rng.integers(0, q)))
                word = rep.gbf + offset
                assert star(psi(word), psi(word + half)) == pytest.approx(1 << (m + 1), abs=1e-9)


@pytest.mark.slow
@pytest.mark.parametrize('q,m', [(2, 2), (2, 3), (2, 4), (4, 2), (4, 3), (4, 4)])
def test_golay_family_envelope(q, m):
    for rep in davis_jedwab_family(q, m):
        measured = sweep_coset(rep).measured_max
        assert measured <= 2 + 1e-4
        if m % 2:
            assert measured >= 1.99
        elif q % 4 == 2:
            assert measured >= 1 + math.cos(math.pi / q) ** 2 - 0.01


@pytest.mark.parametrize('p,m', [(2, 3), (2, 4), (4, 3), (4, 4)])
def test_alpha_beta_family_counts(p, m):
    reps = list(alpha_beta_family(8, p, m))
    assert len(reps) == (p * p - 1) * math.factorial(m) // 2
    assert len({(rep.params['alpha'], rep.params['beta'], tuple(rep.params['chain'])) for rep in reps}) == len(reps)
    assert len(distinct_by_anf(reps)) <= len(reps)


def test_alpha_beta_family_small_examples():
    assert len(list(alpha_beta_family(2, 2, 3))) == 9
    assert len(list(alpha_beta_family(4, 4, 3))) == 45
    zero = [rep for rep in alpha_beta_family(4, 4, 3) if rep.params['alpha'] == rep.params['beta'] == 0]
    assert all(rep.upper_bound == pytest.approx(2) for rep in zero)
    with pytest.raises(ValueError):
        list(alpha_beta_family(4, 3, 3))
    with pytest.raises(ValueError):
        list(alpha_beta_family(4, 4, 2))


def test_alpha_beta_representatives_match_the_coset_equation():
    for rep in alpha_beta_family(8, 4, 4):
        alpha, beta = rep.params['alpha'], rep.params['beta']
        assert rep.gbf == alpha_beta_representative(8, 4, alpha, beta, tuple(rep.params['chain']))


def test_alpha_beta_representatives_lie_in_second_order_codes():
    for rep in alpha_beta_family(8, 4, 4):
        table = rep.gbf.truth_table()
        assert rm_membership(table, 2)
        assert zrm_membership(table, 2)
        assert rep.zrm_flag
    assert not all(rep.zrm_flag for rep in alpha_beta_family(4, 4, 3))
