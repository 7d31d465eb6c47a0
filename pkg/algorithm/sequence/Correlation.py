"""Aperiodic correlations and the star operator.

Lag layout used by every array returned here: the correlation at displacement
l sits at index l + n - 1, so a length-n input yields 2n - 1 lags from
-(n-1) to n-1.

    C(A,B)(l) = sum_i A_{i+l} conj(B_i)
"""
import numpy as np
from scipy.signal import correlate

from algorithm.errors import ShapeMismatchError
from algorithm.sequence.CxSeq import CxSeq


DIRECT_LIMIT = 4096


def _values(seq) -> np.ndarray:
    return seq.values if isinstance(seq, CxSeq) else np.asarray(seq, dtype=np.complex128)


def aperiodic_cross(A: CxSeq, B: CxSeq, ell: int) -> complex:
    """
    The single value C(A,B)(ell), summed directly.

    Zero for |ell| >= n.
    """
    a, b = _values(A), _values(B)
    if a.shape != b.shape:
        raise ShapeMismatchError(f"Sequence lengths differ: {a.shape[0]} vs {b.shape[0]}")
    n = a.shape[0]
    ell = int(ell)
    if abs(ell) >= n:
        return 0j
    if ell >= 0:
        return complex(np.sum(a[ell:] * np.conj(b[:n - ell])))
    return complex(np.sum(a[:n + ell] * np.conj(b[-ell:])))


def correlations(A: CxSeq, B: CxSeq = None, method: str = 'auto') -> np.ndarray:
    """
    All 2n-1 values of C(A,B) (C(A,A) when B is omitted).

    @param:
        - method: 'direct', 'fft', or 'auto' (direct up to DIRECT_LIMIT entries)
    @return:
        - complex array, lag l at index l + n - 1
    """
    a = _values(A)
    b = a if B is None else _values(B)
    if a.shape != b.shape:
        raise ShapeMismatchError(f"Sequence lengths differ: {a.shape[0]} vs {b.shape[0]}")
    if method == 'auto':
        method = 'direct' if a.shape[0] <= DIRECT_LIMIT else 'fft'
    if method not in ('direct', 'fft'):
        raise ValueError(f"Unknown correlation method {method!r}")
    return correlate(a, b, mode='full', method=method)


def star(A: CxSeq, B: CxSeq, method: str = 'auto') -> float:
    """
    A * B = sum over all lags of |C(A)(l) + C(B)(l)|.

    Equals 2n exactly when (A, B) is a complementary pair of polyphase
    sequences.
    """
    a, b = _values(A), _values(B)
    if a.shape != b.shape:
        raise ShapeMismatchError(f"Sequence lengths differ: {a.shape[0]} vs {b.shape[0]}")
    total = correlations(a, method=method) + correlations(b, method=method)
    return float(np.abs(total).sum())


def _fft_size(n: int) -> int:
    size = 1
    while size < 2 * n - 1:
        size <<= 1
    return size


def autocorrelation_matrix(rows: np.ndarray) -> np.ndarray:
    """
    Aperiodic autocorrelations of many equal-length sequences at once.

    @param:
        - rows: complex array of shape (N, n), one sequence per row
    @return:
        - complex array of shape (N, 2n - 1) in the shared lag layout
    """
    rows = np.atleast_2d(np.asarray(rows, dtype=np.complex128))
    n = rows.shape[-1]
    spectrum = np.fft.fft(rows, n=_fft_size(n), axis=-1)
    circular = np.fft.ifft(spectrum * np.conj(spectrum), axis=-1)
    # Non-negative lags sit at the front of the circular result, negative ones at the back
    return np.concatenate([circular[:, -(n - 1):] if n > 1 else circular[:, :0], circular[:, :n]], axis=-1)


def star_matrix(rows_a: np.ndarray, rows_b: np.ndarray) -> np.ndarray:
    """Row-wise star values for two (N, n) batches."""
    rows_a = np.atleast_2d(np.asarray(rows_a, dtype=np.complex128))
    rows_b = np.atleast_2d(np.asarray(rows_b, dtype=np.complex128))
    if rows_a.shape != rows_b.shape:
        raise ShapeMismatchError(f"Batch shapes differ: {rows_a.shape} vs {rows_b.shape}")
    n = rows_a.shape[-1]
    total = autocorrelation_matrix(rows_a)[:, n - 1:] + autocorrelation_matrix(rows_b)[:, n - 1:]
    # |C(-l)| = |C(l)| for autocorrelations, so fold the negative half onto the positive one
    return np.abs(total[:, 0]) + 2.0 * np.abs(total[:, 1:]).sum(axis=-1)
