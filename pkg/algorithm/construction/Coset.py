"""Coset representatives f of RM_q(1,m) built from a kernel, and the words of
their cosets psi(f) + RM_q(1,m).

Coset words are numbered 0 .. q^{m+1}-1: word index i carries the constant
w_0' = i mod q and the linear weight w_alpha = (i // q^{alpha+1}) mod q on x_alpha.
"""
import logging
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence, Union

import numpy as np

from algorithm.algebra.Gbf import Gbf, popcounts
from algorithm.construction.KernelPair import KernelPair
from algorithm.construction.Path import construct_path_on
from algorithm.errors import WorkCapError
from algorithm.sequence.CxSeq import CxSeq
from algorithm.spectral.Envelope import CosetSweep, EnvelopeConfig, SweepSummary
from app.config import AppConfig


BLOCK_WORDS = 1 << 12

FAMILIES = ('golay', 'alpha-beta', 'cubic', 'custom')


@dataclass
class CosetRep:
    """
    Attributes:
        - kernel: the KernelPair (a, b) on k variables
        - m, pi: target variable count and permutation of range(m)
        - gbf: the representative f
        - companion: f + (q/2) x_{pi(m-1)}, the other half of the near-complementary pair
        - upper_bound: Phi(a) * Phi(b) / 2^k
        - degree: the order r of the generalized RM code containing the coset
        - zrm_flag: the coset also lies in ZRM_q(r, m)
        - family: one of FAMILIES
        - params: family parameters, e.g. {'alpha': 2, 'beta': 4}
    """
    kernel: KernelPair
    m: int
    pi: tuple
    gbf: Gbf
    companion: Gbf
    upper_bound: float
    degree: int
    zrm_flag: bool
    family: str = 'custom'
    params: dict = field(default_factory=dict)

    @property
    def q(self) -> int:
        return self.gbf.q

    @property
    def k(self) -> int:
        return self.kernel.k

    @property
    def coset_size(self) -> int:
        return self.q ** (self.m + 1)

    def to_json(self) -> dict:
        report = {'family': self.family, 'q': self.q, 'm': self.m, 'k': self.k, 'pi': list(self.pi),
                  'kernel': {'a': self.kernel.a.to_json(), 'b': self.kernel.b.to_json()},
                  'anf': self.gbf.to_json()['anf'], 'upper_bound': self.upper_bound,
                  'degree': self.degree, 'zrm': self.zrm_flag}
        if self.params:
            report['params'] = dict(self.params)
        return report


def cor2_degree(kernel: KernelPair, m: int) -> int:
    """max{deg(b-a)+1, deg(a)}, raised to 2 once the quadratic chain is present (m > k+1)."""
    r = max((kernel.b - kernel.a).degree + 1, kernel.a.degree)
    if m > kernel.k + 1:
        r = max(r, 2)
    return r


def construct_coset_rep(kernel: KernelPair, m: int, pi: Sequence[int], family: str = 'custom',
                        params: Optional[dict] = None) -> CosetRep:
    """
    f = (q/2) sum_{alpha=k}^{m-2} x_pi(alpha) x_pi(alpha+1)
        + a(x_pi(0), ..., x_pi(k-1)) (1 - x_pi(k)) + b(x_pi(0), ..., x_pi(k-1)) x_pi(k)

    Every word of psi(f) + RM_q(1,m) has PMEPR at most Phi(a) * Phi(b) / 2^k.
    """
    pi = tuple(int(p) for p in pi)
    if sorted(pi) != list(range(m)):
        raise ValueError(f"{pi} is not a permutation of range({m})")
    if m <= kernel.k:
        raise ValueError(f"Need m > k, got m={m}, k={kernel.k}")
    if family not in FAMILIES:
        raise ValueError(f"Unknown family {family!r}, expected one of {FAMILIES}")

    k = kernel.k
    f, companion = construct_path_on(kernel, m, pi[:k], pi[k:])
    r = cor2_degree(kernel, m)
    top = f.anf[popcounts(m) == r]
    zrm = f.q >= 4 and bool(np.all(top % 2 == 0))
    return CosetRep(kernel=kernel, m=m, pi=pi, gbf=f, companion=companion, upper_bound=kernel.upper_bound,
                    degree=r, zrm_flag=zrm, family=family, params=dict(params or {}))


def coset_word_indices(q: int, m: int, mode: str = 'exhaustive', sample_size: int = AppConfig.SAMPLE_SIZE,
                       seed: int = AppConfig.SAMPLE_SEED, cap: int = AppConfig.ENUMERATE_CAP) -> np.ndarray:
    """
    Word indices visited by a sweep.

    'exhaustive' returns every index and refuses cosets above cap. 'sample'
    splits the index range into sample_size equal strata and draws one index
    uniformly from each with a seeded generator; small cosets fall back to
    the exhaustive list.
    """
    total = q ** (m + 1)
    if mode == 'exhaustive':
        if total > cap:
            raise WorkCapError(f"Coset has {total} words, above the exhaustive cap {cap}")
        return np.arange(total, dtype=np.int64)
    if mode != 'sample':
        raise ValueError(f"Unknown sweep mode {mode!r}")
    if total <= sample_size:
        return np.arange(total, dtype=np.int64)
    rng = np.random.default_rng(seed)
    strata = np.arange(sample_size, dtype=np.float64)
    indices = np.floor((strata + rng.random(sample_size)) * (total / sample_size)).astype(np.int64)
    return np.minimum(indices, total - 1)


def coset_residues(f: Gbf, indices: np.ndarray) -> np.ndarray:
    """Truth tables of f + sum w_alpha x_alpha + w for each word index, shape (len(indices), 2^m)."""
    q, m = f.q, f.m
    indices = np.asarray(indices, dtype=np.int64)
    digits = (indices[:, None] // q ** np.arange(m + 1, dtype=np.int64)) % q
    x_bits = (np.arange(1 << m, dtype=np.int64)[:, None] >> np.arange(m)) & 1
    affine = digits[:, :1] + digits[:, 1:] @ x_bits.T
    return np.mod(f.truth_table().values[None, :] + affine, q)


def _target(rep: Union[CosetRep, Gbf]) -> Gbf:
    return rep.gbf if isinstance(rep, CosetRep) else rep


def enumerate_coset(rep: Union[CosetRep, Gbf], mode: str = 'exhaustive', sample_size: int = AppConfig.SAMPLE_SIZE,
                    seed: int = AppConfig.SAMPLE_SEED, cap: int = AppConfig.ENUMERATE_CAP) -> Iterator[CxSeq]:
    """Polyphase words Psi(f + affine) of the coset, in word-index order."""
    f = _target(rep)
    indices = coset_word_indices(f.q, f.m, mode, sample_size, seed, cap)
    for start in range(0, indices.shape[0], BLOCK_WORDS):
        for residues in coset_residues(f, indices[start:start + BLOCK_WORDS]):
            yield CxSeq.polyphase(f.modulus, residues)


def sweep_coset(rep: Union[CosetRep, Gbf], cfg: EnvelopeConfig = EnvelopeConfig(), mode: str = 'exhaustive',
                sample_size: int = AppConfig.SAMPLE_SIZE, seed: int = AppConfig.SAMPLE_SEED,
                cap: int = AppConfig.ENUMERATE_CAP, verbose: bool = False) -> SweepSummary:
    """Largest PMEPR over the coset words selected by mode (see coset_word_indices)."""
    f = _target(rep)
    indices = coset_word_indices(f.q, f.m, mode, sample_size, seed, cap)
    logging.info(f"Sweeping {indices.shape[0]} of {f.q ** (f.m + 1)} words of the coset of {f}")
    blocks = (coset_residues(f, indices[start:start + BLOCK_WORDS])
              for start in range(0, indices.shape[0], BLOCK_WORDS))
    summary = CosetSweep(f.q, cfg, verbose=verbose).run(blocks)
    if summary.argmax_word >= 0:
        summary.argmax_word = int(indices[summary.argmax_word])
    return summary
