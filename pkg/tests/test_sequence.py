import itertools

import numpy as np
import pytest

from algorithm.algebra.Gbf import Gbf
from algorithm.algebra.Modulus import Modulus
from algorithm.construction.Golay import golay_concatenate, golay_interleave, rs_combine
from algorithm.errors import ShapeMismatchError
from algorithm.sequence.Correlation import (aperiodic_cross, autocorrelation_matrix, correlations, star,
                                            star_matrix)
from algorithm.sequence.CxSeq import CxSeq
from algorithm.sequence.Extension import ExtensionSpec, extend, extend_gbf
from algorithm.sequence.Phi import phi, phi_length, phi_positions, phi_star, psi


J = 1j


def random_polyphase(rng, q, n):
    return CxSeq.polyphase(q, rng.integers(0, q, size=n))


# ---------------------------------------------------------
# CxSeq
# ---------------------------------------------------------
def test_support_is_explicit():
    seq = CxSeq([1, 0, -1], [True, False, True])
    assert not seq.is_polyphase
    assert seq.is_unimodular
    with pytest.raises(ValueError):
        CxSeq([1, 1], [True, False])
    with pytest.raises(ShapeMismatchError):
        CxSeq([1, 1], [True])


def test_sequence_arithmetic():
    A = CxSeq.polyphase(4, [0, 1])
    B = CxSeq.polyphase(4, [0, 3])
    assert (A + B).allclose(CxSeq([2, 0]))
    assert (A - B).allclose(CxSeq([0, 2 * J]))
    assert A.concat(B).n == 4
    assert A.scale(J).allclose(CxSeq.polyphase(4, [1, 2]))
    with pytest.raises(ShapeMismatchError):
        A + CxSeq.ones(3)


# ---------------------------------------------------------
# Correlations and the star operator
# ---------------------------------------------------------
def test_psi_examples():
    assert psi(Gbf.from_terms(2, 2, {(0, 1): 1, (1,): 1})).allclose(CxSeq([1, 1, -1, 1]))
    assert psi(Gbf.from_terms(4, 2, {(0, 1): 2, (0,): 3, (1,): 1})).allclose(CxSeq([1, -J, J, -1]))
    assert psi(Gbf.zero(2, 1)).allclose(CxSeq.ones(2))


def test_aperiodic_cross_examples():
    A = CxSeq([1, J])
    assert aperiodic_cross(A, A, 1) == pytest.approx(J)
    assert aperiodic_cross(A, A, 2) == 0
    B = CxSeq([1, 1, 1, -1])
    assert aperiodic_cross(B, B, 1) == pytest.approx(1)


def test_aperiodic_cross_conjugate_symmetry(rng):
    A = random_polyphase(rng, 8, 13)
    for ell in range(13):
        assert aperiodic_cross(A, A, -ell) == pytest.approx(np.conj(aperiodic_cross(A, A, ell)))


def test_correlations_lag_layout(rng):
    A = random_polyphase(rng, 4, 9)
    B = random_polyphase(rng, 4, 9)
    values = correlations(A, B)
    assert values.shape == (17,)
    for ell in range(-8, 9):
        assert values[ell + 8] == pytest.approx(aperiodic_cross(A, B, ell))


def test_direct_and_fft_correlations_agree(rng):
    A = random_polyphase(rng, 8, 4096)
    direct = correlations(A, method='direct')
    fft = correlations(A, method='fft')
    assert np.max(np.abs(direct - fft)) < 1e-9


def test_star_examples():
    assert star(CxSeq.ones(1), CxSeq.ones(1)) == pytest.approx(2)
    assert star(CxSeq([1, 1, 1, -1]), CxSeq([1, 1, -1, 1])) == pytest.approx(8)
    assert star(CxSeq.ones(2), CxSeq.ones(2)) == pytest.approx(8)
    with pytest.raises(ShapeMismatchError):
        star(CxSeq.ones(2), CxSeq.ones(3))


def test_complementary_criterion(rng):
    A, B = CxSeq([1, 1, 1, -1]), CxSeq([1, 1, -1, 1])
    total = correlations(A) + correlations(B)
    assert np.allclose(total[4:], 0)
    for _ in range(20):
        A, B = random_polyphase(rng, 4, 8), random_polyphase(rng, 4, 8)
        total = correlations(A) + correlations(B)
        complementary = np.allclose(total[8:], 0, atol=1e-9)
        assert complementary == (abs(star(A, B) - 16) <= 1e-9)


def test_batch_correlations_match_single(rng):
    rows = np.stack([random_polyphase(rng, 4, 11).values for _ in range(5)])
    others = np.stack([random_polyphase(rng, 4, 11).values for _ in range(5)])
    batch = autocorrelation_matrix(rows)
    for row, values in zip(rows, batch):
        assert np.allclose(values, correlations(CxSeq(row)))
    stars = star_matrix(rows, others)
    for a, b, value in zip(rows, others, stars):
        assert value == pytest.approx(star(CxSeq(a), CxSeq(b)))


# ---------------------------------------------------------
# Rudin-Shapiro combination and doubling
# ---------------------------------------------------------
def test_rs_combine_doubles_star(rng):
    for n in (1, 4, 7):
        A, B = random_polyphase(rng, 8, n), random_polyphase(rng, 8, n)
        C, D = rs_combine(A, B)
        assert star(C, D) == pytest.approx(2 * star(A, B))


@pytest.mark.parametrize('double', [golay_concatenate, golay_interleave])
def test_doubling_keeps_pairs_complementary(double):
    pair = (CxSeq.ones(1), CxSeq.ones(1))
    for k in range(1, 5):
        pair = double(pair)
        assert pair[0].n == 1 << k
        assert pair[0].is_polyphase
        assert star(*pair) == pytest.approx(2 * (1 << k))


def test_golay_concatenate_layout():
    A, B = CxSeq([1, 1]), CxSeq([1, -1])
    C, D = golay_concatenate((A, B))
    assert C.allclose(CxSeq([1, 1, 1, -1]))
    assert D.allclose(CxSeq([1, 1, -1, 1]))
    C, D = golay_interleave((A, B))
    assert C.allclose(CxSeq([1, 1, 1, -1]))
    assert D.allclose(CxSeq([1, -1, 1, 1]))


# ---------------------------------------------------------
# Extension
# ---------------------------------------------------------
def test_extend_examples():
    F = CxSeq([1, 1, -1, 1])
    spec = ExtensionSpec(4, (1, 3), (1, 0))
    expected = np.zeros(16)
    expected[[1, 3, 9, 11]] = [1, 1, -1, 1]
    extended = extend(F, spec)
    assert np.allclose(extended.values, expected)
    assert int(extended.support.sum()) == 4

    xi = np.exp(2j * np.pi / 4)
    extended = extend(CxSeq([1, xi]), ExtensionSpec(2, (0,), (0,)))
    assert np.allclose(extended.values, [1, xi, 0, 0])


def test_extension_keeps_autocorrelation(rng):
    F = random_polyphase(rng, 4, 8)
    left = extend(F, ExtensionSpec(4, (0, 1, 2), (0,)))
    assert np.allclose(correlations(left)[15 - 7:15 + 8], correlations(F))


def test_extension_spec_validation():
    with pytest.raises(ValueError):
        ExtensionSpec(4, (2, 1), (0, 0))
    with pytest.raises(ValueError):
        ExtensionSpec(4, (0, 1), (0, 2))
    with pytest.raises(ShapeMismatchError):
        ExtensionSpec(4, (0, 1), (0,))


def test_extend_gbf_examples():
    f = Gbf.from_terms(2, 2, {(0, 1): 1, (1,): 1})
    assert extend_gbf(f, (1, 3), 4) == Gbf.from_terms(2, 4, {(1, 3): 1, (3,): 1})
    g = Gbf.from_terms(4, 2, {(0, 1): 2})
    assert extend_gbf(g, (0, 2), 3) == Gbf.from_terms(4, 3, {(0, 2): 2})
    with pytest.raises(ValueError):
        extend_gbf(g, (2, 0), 3)


def test_extend_gbf_agrees_with_extend(rng):
    f = Gbf.random(4, 2, rng)
    g = extend_gbf(f, (1, 3), 4)
    extended = extend(psi(f), ExtensionSpec(4, (1, 3), (1, 1)))
    values = psi(g).values
    on_support = extended.support
    # Psi(g) ignores x0 and x2, so it equals the extension wherever the extension is supported
    assert np.allclose(values[on_support], extended.values[on_support])


@pytest.mark.parametrize('q', [2, 4])
def test_star_of_extension_is_independent_of_assignment(q, rng):
    for k in (1, 2, 3):
        a, b = Gbf.random(q, k, rng), Gbf.random(q, k, rng)
        m = k + 2
        for embed in itertools.combinations(range(m), k):
            values = set()
            for d in itertools.product((0, 1), repeat=2):
                spec = ExtensionSpec(m, embed, d)
                values.add(round(star(extend(psi(a), spec), extend(psi(b), spec)), 9))
            assert len(values) == 1


def pairwise_star(rows):
    """star(rows[i], rows[j]) for every ordered pair of rows."""
    n = rows.shape[-1]
    C = autocorrelation_matrix(rows)[:, n - 1:]
    total = np.abs(C[:, None, :] + C[None, :, :])
    return total[..., 0] + 2.0 * total[..., 1:].sum(axis=-1)


def test_extension_star_is_bounded_by_phi_star():
    q, k, m = 4, 2, 4
    tables = np.array(list(itertools.product(range(q), repeat=1 << k)))
    values = Modulus.of(q).phase(tables)
    phi_rows = np.zeros((len(tables), phi_length(k)), dtype=np.complex128)
    phi_rows[:, phi_positions(k)] = values
    bound = pairwise_star(phi_rows)
    assert bound.shape == (q ** 4, q ** 4)

    for embed in itertools.combinations(range(m), k):
        for d in itertools.product((0, 1), repeat=m - k):
            spec = ExtensionSpec(m, embed, d)
            rows = np.zeros((len(tables), 1 << m), dtype=np.complex128)
            rows[:, spec.positions()] = values
            assert np.all(pairwise_star(rows) <= bound + 1e-9)


def test_pairwise_star_matches_star(rng):
    a, b = Gbf.random(4, 2, rng), Gbf.random(4, 2, rng)
    rows = np.array([phi(a).values, phi(b).values])
    assert pairwise_star(rows)[0, 1] == pytest.approx(phi_star(a, b))


# ---------------------------------------------------------
# Phi
# ---------------------------------------------------------
def test_phi_examples():
    f = Gbf.from_terms(4, 2, {(0, 1): 2, (0,): 3, (1,): 1})
    assert phi_length(2) == 6
    assert np.allclose(phi(f).values, [1, -J, 0, 0, J, -1])
    assert phi(Gbf.constant(4, 0, 1)).allclose(CxSeq([J]))
    g = Gbf.from_terms(8, 1, {(0,): 3})
    assert phi(g).allclose(psi(g))


@pytest.mark.parametrize('k', [2, 3])
def test_phi_is_a_truncated_extension(k, rng):
    f = Gbf.random(4, k, rng)
    spec = ExtensionSpec(2 * k - 1, tuple(range(0, 2 * k - 1, 2)), (0,) * (k - 1))
    extended = extend(psi(f), spec)
    assert np.allclose(extended.values[:phi_length(k)], phi(f).values)
    assert not extended.support[phi_length(k):].any()


def test_phi_star_examples():
    assert phi_star(Gbf.zero(4, 0), Gbf.zero(4, 0)) == pytest.approx(2)
    a = Gbf.from_terms(4, 2, {(0, 1): 2})
    assert phi_star(a, Gbf.from_terms(4, 2, {(0, 1): 2, (0,): 3, (1,): 1})) == pytest.approx(12)
    assert phi_star(a, Gbf.from_terms(4, 2, {(0, 1): 2, (0,): 3})) == pytest.approx(8 + 4 * np.sqrt(2))
    with pytest.raises(ShapeMismatchError):
        phi_star(a, Gbf.zero(4, 3))


def test_phi_star_invariant_under_shared_affine_offsets(rng):
    for q, k in [(2, 3), (4, 2), (4, 3), (8, 2)]:
        a, b = Gbf.random(q, k, rng), Gbf.random(q, k, rng)
        offset = Gbf(q, k, np.where(np.isin(np.arange(1 << k), [0] + [1 << j for j in range(k)]),
                                    rng.integers(0, q, size=1 << k), 0))
        assert phi_star(a + offset, b + offset) == pytest.approx(phi_star(a, b), abs=1e-9)


@pytest.mark.parametrize('k', [2, 3])
def test_phi_star_invariant_under_shared_permutations(k, rng):
    a, b = Gbf.random(4, k, rng), Gbf.random(4, k, rng)
    reference = phi_star(a, b)
    for sigma in itertools.permutations(range(k)):
        assert phi_star(a.permute(sigma), b.permute(sigma)) == pytest.approx(reference, abs=1e-9)
