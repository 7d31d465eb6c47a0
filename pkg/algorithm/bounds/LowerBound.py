"""Closed-form lower bounds on the PMEPR of cosets built from a kernel.

For f built from (a, b) with m - k odd, the WHT of f restricted to
w = (w', w_k, 0, ..., 0) is A(w') + B(w') xi^{w_k}; for m - k even one more
variable enters and the value is A(w')(1 + xi^{w_{k+1}}) + B(w') xi^{w_k} (1 - xi^{w_{k+1}}).
The bound is the largest squared magnitude divided by 2^{k+1} or 2^{k+2}.

Both forms are X + Y xi^t maximized over t in Z_q. |X + Y xi^t|^2 =
|X|^2 + |Y|^2 + 2 Re(conj(X) Y xi^t), which is largest for the t whose
angle is nearest to arg X - arg Y, so only the two neighbouring residues of
that angle are evaluated.
"""
import numpy as np

from algorithm.algebra.Modulus import Modulus
from algorithm.construction.KernelPair import KernelPair
from algorithm.spectral.Wht import wht


def max_over_rotation(X: np.ndarray, Y: np.ndarray, modulus: Modulus) -> np.ndarray:
    """Elementwise max over t in Z_q of |X + Y xi^t|^2."""
    q = modulus.q
    target = (np.angle(X) - np.angle(Y)) * q / (2 * np.pi)
    best = np.zeros(np.broadcast(X, Y).shape, dtype=np.float64)
    for t in (np.floor(target), np.ceil(target)):
        value = np.abs(X + Y * modulus.phase(t.astype(np.int64))) ** 2
        best = np.maximum(best, value)
    return best


def lb_closed_form(kernel: KernelPair, m: int) -> float:
    """
    Lower bound for the cosets built from kernel at length 2^m, using the
    odd or even form according to the parity of m - k.
    """
    k = kernel.k
    if m <= k:
        raise ValueError(f"Need m > k, got m={m}, k={k}")
    modulus = kernel.a.modulus
    A = wht(kernel.a).values
    B = wht(kernel.b).values

    if (m - k) % 2 == 1:
        return float(max_over_rotation(A, B, modulus).max()) / (1 << (k + 1))

    phases = modulus.phase_table
    # Rows: w_{k+1}; columns: w'
    X = A[None, :] * (1 + phases)[:, None]
    Y = B[None, :] * (1 - phases)[:, None]
    return float(max_over_rotation(X, Y, modulus).max()) / (1 << (k + 2))
