"""Exhaustive search for kernel pairs (a, b) with a low merit Phi(a) * Phi(b) / 2^k.

Only canonical pairs are scored (see Canonical). The candidate space is every
a with zero constant and linear part times every b (every a when pruning is
off); it is walked by a-index, which is also the unit of work. Blocks of
consecutive a-indices are split over the workers by stride, evaluated, and
merged back in a-index order, so the result does not depend on the number of workers.
"""
import hashlib
import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import List, Optional

import numpy as np

from algorithm.algebra.Gbf import Gbf, popcounts, subset_transform
from algorithm.construction.KernelPair import KernelPair
from algorithm.errors import VerificationError
from algorithm.search.Canonical import canonical_mask, permutation_maps, stabilizer_counts
from algorithm.sequence.Correlation import autocorrelation_matrix
from algorithm.sequence.Phi import phi_length, phi_positions, phi_star
from app.config import AppConfig


BLOCK_A_INDICES = 8
MERIT_TOL = 1e-9


@dataclass(frozen=True)
class SearchConfig:
    """
    Attributes:
        - q, k: alphabet and number of kernel variables
        - degree_cap: restrict a and b to ANFs of at most this degree (None for all)
        - merit_threshold: keep pairs with merit / 2^k strictly below this value
        - workers: process count
        - canonical_pruning: score only canonical pairs (False scores every candidate)
        - work_cap: largest candidate count processed before the result is flagged partial
    """
    q: int
    k: int
    degree_cap: Optional[int] = None
    merit_threshold: float = 4.0
    workers: int = 1
    canonical_pruning: bool = True
    work_cap: int = AppConfig.SEARCH_WORK_CAP

    def __post_init__(self):
        if self.merit_threshold <= 2:
            raise ValueError(f"Merit threshold must exceed 2, got {self.merit_threshold}")
        if self.k < 0 or self.q < 2 or self.q % 2:
            raise ValueError(f"Invalid search shape q={self.q}, k={self.k}")
        if self.degree_cap is not None and self.degree_cap < 1:
            raise ValueError(f"Degree cap must be at least 1, got {self.degree_cap}")
        if self.workers < 1:
            raise ValueError(f"Worker count must be positive, got {self.workers}")

    def identity(self) -> dict:
        """The fields that determine the result (everything except the worker count)."""
        report = asdict(self)
        report.pop('workers')
        return report

    def config_hash(self) -> str:
        return hashlib.sha256(json.dumps(self.identity(), sort_keys=True).encode()).hexdigest()


@dataclass
class FoundPair:
    kernel: KernelPair
    merit: float
    orbit_size: int

    def to_json(self) -> dict:
        return {'a': self.kernel.a.to_json(), 'b': self.kernel.b.to_json(),
                'merit': round(self.merit, 12), 'bound': round(self.merit / (1 << self.kernel.k), 12),
                'orbit_size': self.orbit_size}

    @classmethod
    def from_json(cls, data: dict) -> 'FoundPair':
        kernel = KernelPair(Gbf.from_json(data['a']), Gbf.from_json(data['b']))
        return cls(kernel, float(data['merit']), int(data['orbit_size']))


@dataclass
class SearchResult:
    found: List[FoundPair] = field(default_factory=list)
    explored: int = 0
    pruned: int = 0
    candidates: int = 0
    orbit_total: int = 0
    partial: bool = False
    completed_blocks: int = 0
    wall_time: float = 0.0

    def payload(self) -> dict:
        """Everything except timing; identical for any worker count."""
        return {'found': [pair.to_json() for pair in self.found], 'explored': self.explored,
                'pruned': self.pruned, 'candidates': self.candidates, 'orbit_total': self.orbit_total,
                'partial': self.partial}

    def payload_hash(self) -> str:
        return hashlib.sha256(json.dumps(self.payload(), sort_keys=True).encode()).hexdigest()


# --- Candidate space ---
def _a_monomials(cfg: SearchConfig) -> np.ndarray:
    """Monomials free in a: all of them without pruning, otherwise those of degree at least 2."""
    weights = popcounts(cfg.k)
    cap = cfg.k if cfg.degree_cap is None else cfg.degree_cap
    low = 2 if cfg.canonical_pruning else 0
    return np.nonzero((weights >= low) & (weights <= cap))[0]


def _b_monomials(cfg: SearchConfig) -> np.ndarray:
    cap = cfg.k if cfg.degree_cap is None else cfg.degree_cap
    return np.nonzero(popcounts(cfg.k) <= cap)[0]


def candidate_counts(cfg: SearchConfig) -> tuple[int, int]:
    """(number of a choices, number of b choices) in the candidate space."""
    return cfg.q ** len(_a_monomials(cfg)), cfg.q ** len(_b_monomials(cfg))


def _decode(indices: np.ndarray, monomials: np.ndarray, q: int, k: int) -> np.ndarray:
    anf = np.zeros((indices.shape[0], 1 << k), dtype=np.int64)
    digits = (indices[:, None] // q ** np.arange(len(monomials), dtype=np.int64)) % q
    anf[:, monomials] = digits
    return anf


def _phi_rows(anf: np.ndarray, q: int, k: int) -> np.ndarray:
    """Phi of many functions at once, one row per ANF."""
    tables = subset_transform(anf, k, q)
    rows = np.zeros((anf.shape[0], phi_length(k)), dtype=np.complex128)
    rows[:, phi_positions(k)] = np.exp(2j * np.pi * tables / q)
    return rows


@lru_cache(maxsize=4)
def _b_tables(q: int, k: int, degree_cap: Optional[int]) -> tuple[np.ndarray, np.ndarray]:
    """All b ANFs of the candidate space and the non-negative-lag autocorrelations of Phi(b)."""
    cfg = SearchConfig(q=q, k=k, degree_cap=degree_cap)
    monomials = _b_monomials(cfg)
    b_anf = _decode(np.arange(q ** len(monomials), dtype=np.int64), monomials, q, k)
    n = phi_length(k)
    correlations = autocorrelation_matrix(_phi_rows(b_anf, q, k))[:, n - 1:]
    return b_anf, correlations


def _evaluate_a_indices(args: tuple) -> list:
    """
    Worker task: score every b against each a-index given.

    @return:
        - list of (a_index, explored, pruned, orbit_total, hits), hits = [(b_index, merit, orbit_size)]
    """
    identity, a_indices = args
    cfg = SearchConfig(**identity)
    q, k = cfg.q, cfg.k
    b_anf, b_corr = _b_tables(q, k, cfg.degree_cap)
    n = phi_length(k)
    threshold = cfg.merit_threshold * (1 << k)
    group = permutation_maps(k).shape[0]

    results = []
    for a_index in a_indices:
        a = _decode(np.array([a_index], dtype=np.int64), _a_monomials(cfg), q, k)[0]
        if cfg.canonical_pruning:
            keep = np.nonzero(canonical_mask(a, b_anf))[0]
        else:
            keep = np.arange(b_anf.shape[0])

        a_corr = autocorrelation_matrix(_phi_rows(a[None, :], q, k))[0, n - 1:]
        total = a_corr[None, :] + b_corr[keep]
        merits = np.abs(total[:, 0]) + 2.0 * np.abs(total[:, 1:]).sum(axis=1)

        if cfg.canonical_pruning:
            orbits = q ** (k + 1) * (group // stabilizer_counts(a, b_anf[keep]))
        else:
            orbits = np.ones(keep.shape[0], dtype=np.int64)
        hits = [(int(keep[i]), float(merits[i]), int(orbits[i]))
                for i in np.nonzero(merits < threshold - MERIT_TOL)[0]]
        results.append((int(a_index), int(keep.shape[0]), int(b_anf.shape[0] - keep.shape[0]),
                        int(orbits.sum()), hits))
    return results


# --- Checkpointing ---
def _load_checkpoint(path: str, cfg: SearchConfig) -> Optional[dict]:
    if path is None or not os.path.exists(path):
        return None
    with open(path) as handle:
        state = json.load(handle)
    if state.get('config_hash') != cfg.config_hash():
        raise ValueError(f"Checkpoint {path} was written for a different search configuration")
    return state


def _save_checkpoint(path: str, cfg: SearchConfig, result: SearchResult) -> None:
    state = {'config_hash': cfg.config_hash(), 'completed_blocks': result.completed_blocks,
             **result.payload()}
    tmp = f"{path}.tmp"
    with open(tmp, 'w') as handle:
        json.dump(state, handle, sort_keys=True)
    os.replace(tmp, path)


class KernelSearch:
    """
    Runs a SearchConfig block by block.

    Attributes:
        - cfg: SearchConfig
        - checkpoint: optional path; progress is saved after every block and resumed from when present
        - jsonl: optional writable text stream receiving one line per found pair as blocks complete
        - verbose: print a progress line per block
    """

    def __init__(self, cfg: SearchConfig, checkpoint: Optional[str] = None, jsonl=None, verbose: bool = False):
        self.cfg = cfg
        self.checkpoint = checkpoint
        self.jsonl = jsonl
        self.verbose = verbose

    def run(self) -> SearchResult:
        cfg = self.cfg
        start = time.perf_counter()
        n_a, n_b = candidate_counts(cfg)
        blocks = (n_a + BLOCK_A_INDICES - 1) // BLOCK_A_INDICES
        result = SearchResult()

        state = _load_checkpoint(self.checkpoint, cfg)
        if state is not None:
            result.completed_blocks = int(state['completed_blocks'])
            result.explored, result.pruned = int(state['explored']), int(state['pruned'])
            result.candidates, result.orbit_total = int(state['candidates']), int(state['orbit_total'])
            result.found = [FoundPair.from_json(item) for item in state['found']]
            logging.info(f"Resuming search at block {result.completed_blocks} of {blocks}")

        if n_a * n_b > cfg.work_cap:
            logging.warning(f"Search space of {n_a * n_b} candidates exceeds the work cap {cfg.work_cap}; "
                            f"the result will be partial")

        identity = cfg.identity()
        executor = ProcessPoolExecutor(max_workers=cfg.workers) if cfg.workers > 1 else None
        try:
            for block in range(result.completed_blocks, blocks):
                if result.candidates + n_b * BLOCK_A_INDICES > cfg.work_cap and result.candidates > 0:
                    result.partial = True
                    break
                first, last = block * BLOCK_A_INDICES, min((block + 1) * BLOCK_A_INDICES, n_a)
                tasks = [(identity, list(range(first + w, last, cfg.workers))) for w in range(cfg.workers)]
                tasks = [task for task in tasks if task[1]]
                if executor is None:
                    outputs = [_evaluate_a_indices(task) for task in tasks]
                else:
                    outputs = list(executor.map(_evaluate_a_indices, tasks))
                self._merge(sorted(item for output in outputs for item in output), result, n_b)
                result.completed_blocks = block + 1
                if self.checkpoint is not None:
                    _save_checkpoint(self.checkpoint, cfg, result)
                if self.verbose:
                    print(f"Block {block + 1}/{blocks}: explored {result.explored}, found {len(result.found)}")
        finally:
            if executor is not None:
                executor.shutdown()

        self._verify(result)
        result.wall_time = time.perf_counter() - start
        logging.info(f"Search q={cfg.q}, k={cfg.k}: explored {result.explored}, pruned {result.pruned}, "
                     f"found {len(result.found)}{' (partial)' if result.partial else ''}")
        return result

    def _merge(self, items: list, result: SearchResult, n_b: int) -> None:
        cfg = self.cfg
        b_anf, _ = _b_tables(cfg.q, cfg.k, cfg.degree_cap)
        a_monomials = _a_monomials(cfg)
        for a_index, explored, pruned, orbits, hits in items:
            result.explored += explored
            result.pruned += pruned
            result.candidates += n_b
            result.orbit_total += orbits
            a = Gbf(cfg.q, cfg.k, _decode(np.array([a_index], dtype=np.int64), a_monomials, cfg.q, cfg.k)[0])
            for b_index, merit, orbit in hits:
                found = FoundPair(KernelPair(a, Gbf(cfg.q, cfg.k, b_anf[b_index])), merit, orbit)
                result.found.append(found)
                if self.jsonl is not None:
                    self.jsonl.write(json.dumps(found.to_json(), sort_keys=True) + '\n')

    @staticmethod
    def _verify(result: SearchResult) -> None:
        """Recompute every kept merit through the sequence-level phi_star."""
        for found in result.found:
            merit = phi_star(found.kernel.a, found.kernel.b)
            if abs(merit - found.merit) > 1e-6:
                raise VerificationError(f"Merit mismatch for {found.kernel}: batch {found.merit}, direct {merit}")


def run_search(cfg: SearchConfig, checkpoint: Optional[str] = None, jsonl=None, verbose: bool = False) -> SearchResult:
    return KernelSearch(cfg, checkpoint=checkpoint, jsonl=jsonl, verbose=verbose).run()
