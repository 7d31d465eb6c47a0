"""Generalized Reed-Muller codes RM_q(r,m) and ZRM_q(r,m) as sets of truth tables.

Membership tests work on any truth table. The enumerators and the Lee
distance oracle are exhaustive and therefore only meant for desk-scale codes;
both refuse inputs above a fixed cap.
"""
import itertools
import logging
from typing import Iterable, Iterator

import numpy as np

from algorithm.algebra.Gbf import Gbf, TruthTable, popcounts, subset_transform
from algorithm.algebra.Modulus import Modulus
from algorithm.errors import ShapeMismatchError, WorkCapError
from app.config import AppConfig


LEE_PAIR_CAP = 1 << 20


def rm_membership(t: TruthTable, r: int) -> bool:
    """True iff t = psi(f) for some f of degree at most r."""
    if not 0 <= r <= t.m:
        raise ValueError(f"Order r must satisfy 0 <= r <= m={t.m}, got {r}")
    return t.to_gbf().degree <= r


def zrm_membership(t: TruthTable, r: int) -> bool:
    """
    True iff the ANF of t has monomials of order at most r and every
    coefficient of an order-r monomial is even.
    """
    if t.q < 4:
        raise ValueError(f"ZRM_q(r,m) is defined for q >= 4 only, got q={t.q}")
    if not 1 < r <= t.m:
        raise ValueError(f"Order r must satisfy 1 < r <= m={t.m}, got {r}")
    f = t.to_gbf()
    if f.degree > r:
        return False
    top = f.anf[popcounts(t.m) == r]
    return bool(np.all(top % 2 == 0))


def _code_generator(q: int, m: int, r: int, even_top: bool) -> Iterator[TruthTable]:
    modulus = Modulus.of(q)
    weights = popcounts(m)
    free = np.nonzero(weights <= r)[0]
    # Each free monomial ranges over Z_q, or over 2Z_q on the top order of ZRM
    ranges = [range(0, q, 2) if even_top and weights[i] == r else range(q) for i in free]
    size = int(np.prod([len(rg) for rg in ranges], dtype=np.float64))
    if size > AppConfig.ENUMERATE_CAP:
        raise WorkCapError(f"Code has {size} words, above the enumeration cap {AppConfig.ENUMERATE_CAP}")
    logging.debug(f"Enumerating {size} codewords (q={q}, m={m}, r={r}, even_top={even_top})")

    anf = np.zeros(1 << m, dtype=np.int64)
    for coefficients in itertools.product(*ranges):
        anf[free] = coefficients
        yield TruthTable(modulus, m, subset_transform(anf, m, q))


def enumerate_rm(q: int, m: int, r: int) -> Iterator[TruthTable]:
    """Every codeword of RM_q(r,m)."""
    if not 0 <= r <= m:
        raise ValueError(f"Order r must satisfy 0 <= r <= m={m}, got {r}")
    return _code_generator(q, m, r, even_top=False)


def enumerate_zrm(q: int, m: int, r: int) -> Iterator[TruthTable]:
    """Every codeword of ZRM_q(r,m)."""
    if q < 4:
        raise ValueError(f"ZRM_q(r,m) is defined for q >= 4 only, got q={q}")
    if not 1 < r <= m:
        raise ValueError(f"Order r must satisfy 1 < r <= m={m}, got {r}")
    return _code_generator(q, m, r, even_top=True)


def lee_distance(u: TruthTable, v: TruthTable) -> int:
    if u.q != v.q or len(u) != len(v):
        raise ShapeMismatchError("Lee distance needs words of equal length over the same Z_q")
    diff = np.abs(u.values - v.values)
    return int(np.minimum(diff, u.q - diff).sum())


def min_lee_distance(code: Iterable[TruthTable]) -> int:
    """
    Minimum Lee distance over distinct pairs of a small code, by exhaustive
    pairwise comparison (at most LEE_PAIR_CAP comparisons).
    """
    words = list(code)
    if not words:
        raise ValueError("min_lee_distance needs a nonempty code")
    q, n = words[0].q, len(words[0])
    if any(w.q != q or len(w) != n for w in words):
        raise ShapeMismatchError("All words must share length and modulus")

    matrix = np.unique(np.stack([w.values for w in words]), axis=0)
    count = matrix.shape[0]
    pairs = count * (count - 1) // 2
    if pairs > LEE_PAIR_CAP:
        raise WorkCapError(f"{pairs} pairwise comparisons exceed the cap {LEE_PAIR_CAP}")
    if count < 2:
        raise ValueError("min_lee_distance needs at least two distinct words")

    best = None
    for i in range(count - 1):
        diff = np.abs(matrix[i + 1:] - matrix[i])
        distances = np.minimum(diff, q - diff).sum(axis=1)
        current = int(distances.min())
        best = current if best is None else min(best, current)
    return best


def affine_gbf(q: int, m: int, weights, constant: int = 0) -> Gbf:
    """sum_alpha weights[alpha] x_alpha + constant."""
    anf = np.zeros(1 << m, dtype=np.int64)
    anf[0] = constant
    for alpha, w in enumerate(weights):
        anf[1 << alpha] = w
    return Gbf(q, m, anf)
