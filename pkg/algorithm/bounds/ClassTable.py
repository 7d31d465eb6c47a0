import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from algorithm.algebra.Modulus import Modulus
from algorithm.bounds.LowerBound import lb_closed_form
from algorithm.construction.Families import alpha_beta_kernel, alpha_beta_pairs


BOUND_TOL = 1e-9

# Closed forms of every class bound 2 + (|1 - xi^{beta-alpha}| + |1 - xi^{beta+alpha}|)/2 for p <= 8
KNOWN_BOUNDS: Dict[str, float] = {
    '2': 2.0,
    '2+1/sqrt(2)': 2 + 1 / math.sqrt(2),
    '2+sqrt(2-sqrt(2))': 2 + math.sqrt(2 - math.sqrt(2)),
    '3': 3.0,
    '2+sqrt(1+1/sqrt(2))': 2 + math.sqrt(1 + 1 / math.sqrt(2)),
    '2+sqrt(2)': 2 + math.sqrt(2),
    '3+1/sqrt(2)': 3 + 1 / math.sqrt(2),
    '2+sqrt(2+sqrt(2))': 2 + math.sqrt(2 + math.sqrt(2)),
    '4': 4.0,
}


@dataclass
class ClassRow:
    """
    One class of alpha/beta cosets sharing a PMEPR bound.

    Attributes:
        - p: phase resolution of alpha and beta
        - constraint: the (beta - alpha, beta + alpha) residues mod q of the members
        - bound: 2 + (|1 - xi^{beta-alpha}| + |1 - xi^{beta+alpha}|)/2
        - label: closed form of the bound when it is a known value
        - count_multiplier: coset count divided by m! (members / 2)
        - members: the (alpha, beta) pairs in the class
        - lower_bound: closed-form lower bound of the first member, when computed
    """
    p: int
    constraint: str
    bound: float
    label: Optional[str]
    count_multiplier: Fraction
    members: List[Tuple[int, int]] = field(default_factory=list)
    lower_bound: Optional[float] = None

    def count(self, m: int) -> int:
        return int(self.count_multiplier * math.factorial(m))


def label_bound(bound: float) -> Optional[str]:
    for label, value in KNOWN_BOUNDS.items():
        if abs(value - bound) <= 1e-6:
            return label
    return None


def alpha_beta_bound(q: int, alpha: int, beta: int) -> float:
    modulus = Modulus.of(q)
    s1 = abs(1 - modulus.phase(beta - alpha))
    s2 = abs(1 - modulus.phase(beta + alpha))
    return 2.0 + float(s1 + s2) / 2.0


def _constraint(q: int, members: List[Tuple[int, int]]) -> str:
    residues = sorted({((beta - alpha) % q, (beta + alpha) % q) for alpha, beta in members})
    return ' '.join(f'({d},{s})' for d, s in residues)


def classify_alpha_beta(q: int, p: int, alpha: int, beta: int) -> ClassRow:
    """The class of a single (alpha, beta); its multiplier counts that one pair (m!/2 cosets)."""
    if p <= 0 or q % p != 0:
        raise ValueError(f"p={p} must divide q={q}")
    step = q // p
    if alpha % step != 0 or beta % step != 0:
        raise ValueError(f"alpha={alpha} and beta={beta} must lie in (q/p) Z_p = {step} Z_{p}")
    alpha, beta = alpha % q, beta % q
    bound = alpha_beta_bound(q, alpha, beta)
    return ClassRow(p=p, constraint=_constraint(q, [(alpha, beta)]), bound=bound, label=label_bound(bound),
                    count_multiplier=Fraction(1, 2), members=[(alpha, beta)])


def class_tables(q: int, p: int, m: Optional[int] = None) -> List[ClassRow]:
    """
    Group every (alpha, beta) in (q/p) Z_p^2 (without the duplicate (q/2, q/2))
    by bound, in increasing order. Counts are of cosets not already in a class
    with a lower bound; with m given the rows also carry the lower bound of
    their first member.
    """
    if p not in (2, 4, 8):
        raise ValueError(f"Class tables are available for p in (2, 4, 8), got {p}")
    groups: Dict[float, List[Tuple[int, int]]] = {}
    for alpha, beta in alpha_beta_pairs(q, p):
        bound = round(alpha_beta_bound(q, alpha, beta), 9)
        groups.setdefault(bound, []).append((alpha, beta))

    rows = []
    for bound in sorted(groups):
        members = groups[bound]
        row = ClassRow(p=p, constraint=_constraint(q, members), bound=bound, label=label_bound(bound),
                       count_multiplier=Fraction(len(members), 2), members=members)
        if m is not None:
            alpha, beta = members[0]
            row.lower_bound = lb_closed_form(alpha_beta_kernel(q, beta, alpha), m)
        rows.append(row)
    return rows


def class_table_frame(rows: List[ClassRow], m: Optional[int] = None) -> pd.DataFrame:
    """Rows as a DataFrame with the classify CSV columns (plus count when m is given)."""
    frame = pd.DataFrame({
        'p': [row.p for row in rows],
        'alpha': [row.members[0][0] for row in rows],
        'beta': [row.members[0][1] for row in rows],
        'bound': [row.bound for row in rows],
        'lower_bound': [np.nan if row.lower_bound is None else row.lower_bound for row in rows],
        'count_multiplier': [float(row.count_multiplier) for row in rows],
    })
    frame['label'] = [row.label or '' for row in rows]
    frame['constraint'] = [row.constraint for row in rows]
    if m is not None:
        frame['count'] = [row.count(m) for row in rows]
    return frame


def cumulative_counts(rows: List[ClassRow], m: int) -> pd.Series:
    """Number of cosets with bound at most each row's bound."""
    return pd.Series(np.cumsum([row.count(m) for row in rows]), index=[row.bound for row in rows])
