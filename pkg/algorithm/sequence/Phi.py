"""Sequences attached to a generalized Boolean function.

psi places f_i at position i; phi spreads the same values over radix-4
positions sum u_alpha 4^alpha so that every shift difference between two
supported entries decodes uniquely (a sparse signed-digit representation).
"""
import numpy as np

from algorithm.algebra.Gbf import Gbf
from algorithm.errors import ShapeMismatchError
from algorithm.sequence.Correlation import star
from algorithm.sequence.CxSeq import CxSeq


def psi(f: Gbf) -> CxSeq:
    """The polyphase sequence (xi^{f_0}, ..., xi^{f_{2^m - 1}})."""
    return CxSeq.polyphase(f.modulus, f.truth_table().values)


def phi_length(k: int) -> int:
    return (4 ** k + 2) // 3


def phi_positions(k: int) -> np.ndarray:
    u = np.arange(1 << k, dtype=np.int64)
    positions = np.zeros_like(u)
    for alpha in range(k):
        positions += ((u >> alpha) & 1) << (2 * alpha)
    return positions


def phi(f: Gbf) -> CxSeq:
    values = np.zeros(phi_length(f.m), dtype=np.complex128)
    support = np.zeros(phi_length(f.m), dtype=bool)
    positions = phi_positions(f.m)
    values[positions] = f.modulus.phase(f.truth_table().values)
    support[positions] = True
    return CxSeq(values, support)


def phi_star(a: Gbf, b: Gbf) -> float:
    """Phi(a) * Phi(b), the figure of merit of a kernel pair."""
    if a.q != b.q or a.m != b.m:
        raise ShapeMismatchError(f"Kernel functions differ in shape: (q={a.q}, k={a.m}) vs (q={b.q}, k={b.m})")
    return star(phi(a), phi(b))
