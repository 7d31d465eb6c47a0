"""OFDM envelope power and PMEPR estimation.

The envelope S(A)(theta) = sum_i A_i exp(2 pi sqrt(-1) i theta) is sampled on
the grid theta_t = t / (L n) with one inverse FFT, and the best grid peaks are
then polished with a bounded scalar maximization. The carrier offset is fixed
to 0: it only contributes a global phase, so |S| does not depend on it.
"""
import logging
import time
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np
from scipy.optimize import minimize_scalar

from algorithm.errors import ShapeMismatchError
from algorithm.sequence.Correlation import star
from algorithm.sequence.CxSeq import CxSeq
from app.config import AppConfig


REFINE_PEAKS = 3
GRID_CELLS_PER_CHUNK = 1 << 22


@dataclass(frozen=True)
class EnvelopeConfig:
    oversampling: int = AppConfig.DEFAULT_OVERSAMPLING
    refine: bool = True
    refine_tol: float = AppConfig.REFINE_TOL
    carrier_offset: float = field(default=0.0, init=False)

    def __post_init__(self):
        if int(self.oversampling) < 2:
            raise ValueError(f"Oversampling L must be >= 2, got {self.oversampling}")


@dataclass(frozen=True)
class PmeprEstimate:
    grid_max: float
    argmax_theta: float
    oversampling: int
    refined: bool
    n: int

    def to_json(self, star_bound: Optional[float] = None) -> dict:
        report = {'n': self.n, 'L': self.oversampling, 'grid_max': self.grid_max, 'theta': self.argmax_theta}
        if star_bound is not None:
            report['star_bound'] = star_bound
        return report


def _power(values: np.ndarray, theta: float) -> float:
    kernel = np.exp(2j * np.pi * np.arange(values.shape[0]) * theta)
    return float(np.abs(np.dot(values, kernel)) ** 2)


def envelope_power(A: CxSeq, theta: float) -> float:
    """|S(A)(theta)|^2."""
    return _power(A.values, theta)


def envelope_grid(values: np.ndarray, oversampling: int) -> np.ndarray:
    """|S|^2 on theta_t = t/(L n) for every row of a (..., n) array."""
    n = values.shape[-1]
    grid = n * oversampling
    samples = np.fft.ifft(values, n=grid, axis=-1) * grid
    return samples.real ** 2 + samples.imag ** 2


def _refine_peak(values: np.ndarray, theta: float, width: float, tol: float) -> tuple[float, float]:
    result = minimize_scalar(lambda x: -_power(values, x), bounds=(theta - width, theta + width),
                             method='bounded', options={'xatol': tol})
    return -float(result.fun), float(result.x) % 1.0


def _refined_max(values: np.ndarray, grid_power: np.ndarray, oversampling: int,
                 tol: float, peaks: int = REFINE_PEAKS) -> tuple[float, float]:
    grid = grid_power.shape[0]
    best_index = int(np.argmax(grid_power))
    best, best_theta = float(grid_power[best_index]), best_index / grid

    candidates = np.argsort(grid_power)[::-1][:peaks]
    for t in candidates:
        power, theta = _refine_peak(values, t / grid, 1.0 / grid, tol)
        if power > best:
            best, best_theta = power, theta
    return best, best_theta


def pmepr(A: CxSeq, cfg: EnvelopeConfig = EnvelopeConfig()) -> PmeprEstimate:
    """
    Estimate PMEPR(A) = sup_theta |S(A)(theta)|^2 / n.

    Args:
        A: polyphase sequence (fully supported)
        cfg: oversampling factor and refinement switch

    Returns:
        PmeprEstimate whose grid_max includes the refinement when enabled
    """
    if not A.support.all():
        raise ValueError("PMEPR is defined for fully supported (polyphase) sequences only")
    n, L = A.n, int(cfg.oversampling)
    grid_power = envelope_grid(A.values, L)

    if cfg.refine:
        best, theta = _refined_max(A.values, grid_power, L, cfg.refine_tol)
    else:
        t = int(np.argmax(grid_power))
        best, theta = float(grid_power[t]), t / (L * n)
    return PmeprEstimate(grid_max=best / n, argmax_theta=theta, oversampling=L, refined=cfg.refine, n=n)


def pmepr_upper_bound_star(A: CxSeq, B: CxSeq) -> float:
    """(A * B) / n, an upper bound on the PMEPR of both A and B."""
    if A.n != B.n:
        raise ShapeMismatchError(f"Sequence lengths differ: {A.n} vs {B.n}")
    if not (A.is_polyphase and B.is_polyphase):
        raise ValueError("The star bound applies to polyphase sequences only")
    return star(A, B) / A.n


@dataclass
class SweepSummary:
    """Result of a CosetSweep: the largest PMEPR seen and where it occurred."""
    count: int = 0
    grid_max: float = 0.0
    measured_max: float = 0.0
    argmax_word: int = -1
    argmax_theta: float = 0.0
    refined_count: int = 0
    wall_time: float = 0.0

    def to_json(self) -> dict:
        return {'count': self.count, 'grid_max': self.grid_max, 'measured_max': self.measured_max,
                'argmax_word': self.argmax_word, 'argmax_theta': self.argmax_theta,
                'refined_count': self.refined_count}


class CosetSweep:
    """
    Maximum PMEPR over a stream of polyphase words given as residue blocks.

    Every word is scored on the oversampled grid. A word is refined only when
    its grid value is within the grid error (relative (pi/L)^2) of the best
    grid value seen so far, which keeps the refinement count small while the
    reported maximum stays a refined value.

    Attributes:
        - q: alphabet size of the residues
        - cfg: EnvelopeConfig used for every word
        - verbose: print a progress line per block
    """

    def __init__(self, q: int, cfg: EnvelopeConfig = EnvelopeConfig(), verbose: bool = False):
        self.q = int(q)
        self.cfg = cfg
        self.verbose = verbose
        self.phase_table = np.exp(2j * np.pi * np.arange(self.q) / self.q)
        self.margin = (np.pi / cfg.oversampling) ** 2

    def run(self, blocks: Iterable[np.ndarray]) -> SweepSummary:
        """
        @param:
            - blocks: iterable of int arrays of shape (N_i, n), one word per row
        @return:
            - SweepSummary over all rows of all blocks, in order
        """
        summary = SweepSummary()
        start = time.perf_counter()
        L = int(self.cfg.oversampling)

        for block in blocks:
            block = np.atleast_2d(np.asarray(block, dtype=np.int64))
            n = block.shape[1]
            rows_per_chunk = max(1, GRID_CELLS_PER_CHUNK // (L * n))
            for offset in range(0, block.shape[0], rows_per_chunk):
                chunk = block[offset:offset + rows_per_chunk]
                self._score_chunk(chunk, summary.count, summary)
                summary.count += chunk.shape[0]
            if self.verbose:
                print(f"Swept {summary.count} words, current max PMEPR {summary.measured_max:.6f}")

        summary.wall_time = time.perf_counter() - start
        logging.info(f"Coset sweep: {summary.count} words, max PMEPR {summary.measured_max:.6f}, "
                     f"{summary.refined_count} refined")
        return summary

    def _score_chunk(self, chunk: np.ndarray, first_index: int, summary: SweepSummary) -> None:
        n = chunk.shape[1]
        L = int(self.cfg.oversampling)
        values = self.phase_table[np.mod(chunk, self.q)]
        grid_power = envelope_grid(values, L) / n
        row_max = grid_power.max(axis=1)

        chunk_best = float(row_max.max())
        if chunk_best > summary.grid_max:
            summary.grid_max = chunk_best

        threshold = summary.grid_max * (1.0 - self.margin)
        for row in np.nonzero(row_max >= threshold)[0]:
            if self.cfg.refine:
                power, theta = _refined_max(values[row], grid_power[row] * n, L, self.cfg.refine_tol)
                power /= n
                summary.refined_count += 1
            else:
                t = int(np.argmax(grid_power[row]))
                power, theta = float(grid_power[row, t]), t / (L * n)
            if power > summary.measured_max:
                summary.measured_max = power
                summary.argmax_word = first_index + int(row)
                summary.argmax_theta = theta
