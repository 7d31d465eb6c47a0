"""Rudin-Shapiro combination and Golay's doubling constructions.

Both doubling constructions are the same step: place A and B on disjoint
halves of a twice-as-long sequence, then take sum and difference.
"""
from typing import Tuple

from algorithm.errors import ShapeMismatchError
from algorithm.sequence.CxSeq import CxSeq
from algorithm.sequence.Extension import ExtensionSpec, extend


SeqPair = Tuple[CxSeq, CxSeq]


def rs_combine(A: CxSeq, B: CxSeq) -> SeqPair:
    """(A + B, A - B); the star value of the output is twice that of the input."""
    if A.n != B.n:
        raise ShapeMismatchError(f"Sequence lengths differ: {A.n} vs {B.n}")
    return A + B, A - B


def _log2_length(pair: SeqPair) -> int:
    A, B = pair
    if A.n != B.n:
        raise ShapeMismatchError(f"Sequence lengths differ: {A.n} vs {B.n}")
    k = A.n.bit_length() - 1
    if A.n != 1 << k:
        raise ValueError(f"Sequence length {A.n} is not a power of two")
    return k


def golay_concatenate(pair: SeqPair) -> SeqPair:
    """(A | B, A | -B): A is pinned to x_k = 0, B to x_k = 1."""
    A, B = pair
    k = _log2_length(pair)
    embed = tuple(range(k))
    return rs_combine(extend(A, ExtensionSpec(k + 1, embed, (0,))),
                      extend(B, ExtensionSpec(k + 1, embed, (1,))))


def golay_interleave(pair: SeqPair) -> SeqPair:
    """(A_0, B_0, A_1, B_1, ...) and (A_0, -B_0, A_1, -B_1, ...): A on x_0 = 0, B on x_0 = 1."""
    A, B = pair
    k = _log2_length(pair)
    embed = tuple(range(1, k + 1))
    return rs_combine(extend(A, ExtensionSpec(k + 1, embed, (0,))),
                      extend(B, ExtensionSpec(k + 1, embed, (1,))))
