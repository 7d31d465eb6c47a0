import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from algorithm.bounds.LowerBound import lb_closed_form
from algorithm.construction.Coset import CosetRep, sweep_coset
from algorithm.errors import VerificationError
from algorithm.spectral.Envelope import EnvelopeConfig
from app.config import AppConfig


BOUND_TOL = 1e-9


class Verdict(str, Enum):
    TIGHT = 'tight'
    GAP = 'gap'
    UNVERIFIED = 'unverified'


@dataclass
class BoundReport:
    """
    Upper and lower PMEPR bounds of a coset and, when swept, the measured maximum.

    Attributes:
        - upper: Phi(a) * Phi(b) / 2^k
        - lower: closed-form lower bound for the parity of m - k
        - measured: max PMEPR over the swept words, None when not swept
        - tight: Verdict
        - parity: 'odd' or 'even' (of m - k)
        - sampled: the sweep covered a stratified sample rather than the whole coset
        - swept: number of words evaluated
    """
    upper: float
    lower: float
    measured: Optional[float]
    tight: Verdict
    parity: str
    sampled: bool = False
    swept: int = 0

    def to_json(self) -> dict:
        return {'upper': self.upper, 'lower': self.lower, 'measured': self.measured,
                'tight': self.tight.value, 'parity': self.parity, 'sampled': self.sampled, 'swept': self.swept}


def trivial_bound_holds(rep: CosetRep) -> bool:
    """Phi(a) * Phi(b) / 2^k <= 2^{k+1}, true for every kernel."""
    return rep.upper_bound <= (1 << (rep.k + 1)) + BOUND_TOL


def tightness_verdict(rep: CosetRep, budget: int = AppConfig.EXHAUSTIVE_SWEEP_CAP,
                      sample_size: int = AppConfig.SAMPLE_SIZE, seed: int = AppConfig.SAMPLE_SEED,
                      tol: float = AppConfig.TIGHTNESS_TOL, cfg: EnvelopeConfig = EnvelopeConfig(),
                      verbose: bool = False) -> BoundReport:
    """
    Sweep the coset of rep and compare the measured maximum with the bounds.

    Cosets of at most `budget` words are swept exhaustively; larger ones are
    sampled (stratified, seeded) when sample_size > 0, and reported
    unverified otherwise.

    Raises:
        VerificationError: a word exceeds the upper bound or the lower bound exceeds the upper one
    """
    upper = rep.upper_bound
    lower = lb_closed_form(rep.kernel, rep.m)
    parity = 'odd' if (rep.m - rep.k) % 2 else 'even'
    if lower > upper + BOUND_TOL:
        raise VerificationError(f"Lower bound {lower} exceeds upper bound {upper} for {rep.gbf}")

    if rep.coset_size <= budget:
        mode, sampled = 'exhaustive', False
    elif sample_size > 0:
        mode, sampled = 'sample', True
    else:
        logging.warning(f"Coset of {rep.gbf} has {rep.coset_size} words, above the budget {budget}; not swept")
        return BoundReport(upper, lower, None, Verdict.UNVERIFIED, parity)

    summary = sweep_coset(rep, cfg, mode=mode, sample_size=sample_size, seed=seed,
                          cap=max(budget, rep.coset_size), verbose=verbose)
    measured = summary.measured_max
    if measured > upper + 1e-6:
        raise VerificationError(f"Coset word {summary.argmax_word} of {rep.gbf} has PMEPR {measured} "
                                f"above the bound {upper}")
    verdict = Verdict.TIGHT if measured >= upper - tol else Verdict.GAP
    return BoundReport(upper, lower, measured, verdict, parity, sampled=sampled, swept=summary.count)
