"""The q-ary Walsh-Hadamard transform of a generalized Boolean function.

    F(w) = sum_{x in Z_2^m} xi^{f(x) + w.x},   w in Z_q^m

Spectra are stored flat with the mixed-radix index sum_alpha w_alpha q^alpha
(w_0 varies fastest), the same little-endian convention as truth tables.
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from algorithm.algebra.Gbf import Gbf, TruthTable, popcounts
from algorithm.algebra.Modulus import Modulus
from algorithm.errors import VerificationError, WorkCapError
from app.config import AppConfig


COVERING_CHECK_MAX_M = 12
SCAN_CAP = 1 << 22
CHUNK_CELLS = 1 << 22


@dataclass(frozen=True)
class WhtSpectrum:
    q: int
    m: int
    values: np.ndarray

    def index(self, w) -> int:
        w = [int(v) % self.q for v in w]
        if len(w) != self.m:
            raise ValueError(f"Expected a vector of length {self.m}, got {len(w)}")
        return sum(v * self.q ** alpha for alpha, v in enumerate(w))

    def vector(self, index: int) -> tuple[int, ...]:
        return tuple(int(index // self.q ** alpha) % self.q for alpha in range(self.m))

    def __getitem__(self, w) -> complex:
        return complex(self.values[self.index(w)])

    def tensor(self) -> np.ndarray:
        """Values as an array of shape (q,)*m with axes ordered w_{m-1}, ..., w_0."""
        return self.values.reshape((self.q,) * self.m)

    def restricted(self, p: int) -> np.ndarray:
        """F(w) for w in (q/p) Z_p^m, flattened in the same mixed-radix order over Z_p."""
        if p <= 0 or self.q % p != 0:
            raise ValueError(f"p={p} must divide q={self.q}")
        step = self.q // p
        return self.tensor()[(slice(None, None, step),) * self.m].reshape(-1)

    def power(self) -> np.ndarray:
        return np.abs(self.values) ** 2

    def max_power(self) -> tuple[float, tuple[int, ...]]:
        """max_w |F(w)|^2 and the first w attaining it."""
        power = self.power()
        index = int(np.argmax(power))
        return float(power[index]), self.vector(index)

    def papr(self, p: Optional[int] = None) -> float:
        """max over w in (q/p) Z_p^m of |F(w)|^2 / 2^m; the whole of Z_q^m when p is None."""
        values = self.values if p is None else self.restricted(p)
        return float(np.max(np.abs(values) ** 2)) / (1 << self.m)


def wht(f: Gbf, cap: int = AppConfig.WHT_CAP) -> WhtSpectrum:
    """
    All q^m values F(w), folding one variable at a time from x_{m-1} down to x_0.

    Each fold replaces a binary axis by a Z_q axis through the 2-column matrix
    [1, xi^w], i.e. F(w) = F0(w') + xi^{w_alpha} F1(w').
    """
    q, m = f.q, f.m
    size = q ** m
    if size > cap:
        raise WorkCapError(f"WHT needs q^m = {size} entries, above the cap {cap}")

    spectrum = f.modulus.phase(f.truth_table().values).reshape((2,) * m)
    fold = np.stack([np.ones(q, dtype=np.complex128), f.modulus.phase_table], axis=1)
    # Axis 0 of the reshaped table is x_{m-1}, the last axis is x_0
    for axis in range(m):
        spectrum = np.moveaxis(np.tensordot(fold, spectrum, axes=([1], [axis])), 0, axis)
    return WhtSpectrum(q, m, np.asarray(spectrum, dtype=np.complex128).reshape(-1))


def papr_p(f: Gbf, p: int, cap: int = AppConfig.WHT_CAP) -> float:
    """max over w in (q/p) Z_p^m of |F(w)|^2 / 2^m."""
    if p <= 0 or f.q % p != 0:
        raise ValueError(f"p={p} must divide q={f.q}")
    return wht(f, cap).papr(p)


def coset_lower_bound(f: Gbf, cap: int = AppConfig.WHT_CAP) -> float:
    """
    max_w |F(w)|^2 / 2^m. Some word of the coset psi(f) + RM_q(1,m) has
    PMEPR at least this value (its envelope at theta=0 reaches it).
    """
    return wht(f, cap).papr()


def _linear_parities(m: int, w: np.ndarray) -> np.ndarray:
    """(w . x) mod 2 for every w in the given array and every x in Z_2^m."""
    x = np.arange(1 << m, dtype=np.int64)
    return popcounts(m)[np.bitwise_and.outer(w, x)] & 1


def covering_radius_check(f: Gbf) -> tuple[int, float]:
    """
    Distance from psi(f) to RM_2(1,m) by brute force, checked against the
    WHT identity max_w |F(w)| = 2^m - 2 d.

    Returns:
        (minimum Hamming distance, max_w |F(w)|)
    """
    if f.q != 2:
        raise ValueError(f"The covering radius relation needs q=2, got q={f.q}")
    if f.m > COVERING_CHECK_MAX_M:
        raise WorkCapError(f"covering_radius_check supports m <= {COVERING_CHECK_MAX_M}, got {f.m}")
    m, n = f.m, 1 << f.m
    word = f.truth_table().values

    best = n
    rows = max(1, CHUNK_CELLS // n)
    for start in range(0, n, rows):
        linear = np.arange(start, min(start + rows, n), dtype=np.int64)
        distance = (_linear_parities(m, linear) != word).sum(axis=1)
        # The complementary affine word (constant 1) is at distance n - d
        best = min(best, int(np.minimum(distance, n - distance).min()))

    peak = float(np.abs(wht(f).values).max())
    if abs(peak - (n - 2 * best)) > 1e-6:
        raise VerificationError(f"max |F| = {peak} but 2^m - 2d = {n - 2 * best} for f = {f}")
    return best, peak


def covering_radius(m: int) -> int:
    """Covering radius of RM_2(1,m) by exhaustive enumeration of all Boolean functions (m <= 4)."""
    if not 1 <= m <= 4:
        raise ValueError(f"Exhaustive covering radius supports 1 <= m <= 4, got {m}")
    n = 1 << m
    functions = (np.arange(1 << n, dtype=np.int64)[:, None] >> np.arange(n)) & 1
    linear = _linear_parities(m, np.arange(n, dtype=np.int64))
    affine = np.concatenate([linear, 1 - linear])
    # d(u, v) = |u| + |v| - 2 <u, v> for binary words
    distances = functions.sum(axis=1)[:, None] + affine.sum(axis=1)[None, :] - 2 * functions @ affine.T
    return int(distances.min(axis=1).max())


@dataclass
class ConjectureScan:
    q: int
    m: int
    threshold: float
    scanned: int
    smallest_peak: float
    counterexamples: list

    def to_json(self) -> dict:
        return {'q': self.q, 'm': self.m, 'threshold': self.threshold, 'scanned': self.scanned,
                'smallest_peak': self.smallest_peak,
                'counterexamples': [g.to_json() for g in self.counterexamples]}


def conjecture_scan(q: int, m: int, cap: int = SCAN_CAP, limit: Optional[int] = 64) -> ConjectureScan:
    """
    Look for functions f whose peak max_{w in (q/4) Z_4^m} |F(w)| falls below
    2^{(m+1)/2}. Reporting only; nothing here is asserted.

    The value f(0) only rotates every F(w) by a common phase, so functions with
    f(0) = 0 cover the whole search.
    """
    modulus = Modulus.of(q)
    if q % 4 != 0:
        raise ValueError(f"The restricted scan needs q divisible by 4, got q={q}")
    if not 1 <= m <= 3:
        raise ValueError(f"conjecture_scan supports 1 <= m <= 3, got {m}")
    n = 1 << m
    total = q ** (n - 1)
    if total > cap:
        raise WorkCapError(f"Scan over {total} functions exceeds the cap {cap}")

    x = np.arange(n, dtype=np.int64)
    w = np.arange(4 ** m, dtype=np.int64)
    w_digits = (w[:, None] // 4 ** np.arange(m)) % 4
    x_bits = (x[:, None] >> np.arange(m)) & 1
    # Restricted kernel xi^{(q/4) w.x}, shape (n, 4^m)
    kernel = modulus.phase((q // 4) * (x_bits @ w_digits.T))

    threshold = 2.0 ** ((m + 1) / 2)
    smallest = np.inf
    counterexamples = []
    rows = max(1, CHUNK_CELLS // (4 ** m))
    for start in range(0, total, rows):
        index = np.arange(start, min(start + rows, total), dtype=np.int64)
        tables = np.zeros((index.shape[0], n), dtype=np.int64)
        tables[:, 1:] = (index[:, None] // q ** np.arange(n - 1)) % q
        peaks = np.abs(modulus.phase(tables) @ kernel).max(axis=1)
        smallest = min(smallest, float(peaks.min()))
        for row in np.nonzero(peaks < threshold - 1e-9)[0]:
            if limit is not None and len(counterexamples) >= limit:
                break
            counterexamples.append(TruthTable(modulus, m, tables[row]).to_gbf())

    logging.info(f"Conjecture scan q={q}, m={m}: {total} functions, smallest peak {smallest:.6f}, "
                 f"{len(counterexamples)} below {threshold:.6f}")
    return ConjectureScan(q, m, threshold, total, smallest, counterexamples)
