import itertools
import logging
from typing import Dict, Iterator, List, Tuple

from algorithm.algebra.Gbf import Gbf
from algorithm.construction.Coset import CosetRep, construct_coset_rep
from algorithm.construction.Families import alpha_beta_kernel, alpha_beta_pairs
from algorithm.construction.KernelPair import KernelPair
from algorithm.errors import VerificationError


GAMMA_DELTA_THRESHOLD = 16.0


def holzmann_kernel(q: int = 4) -> KernelPair:
    """
    The quaternary Golay pair of length 8,
        ((+ + + - + + - +), (+ j j - + -j -j -)),
    written over Z_q for any q divisible by 4:
        a = (q/2)(x0x1 + x1x2),  b = (q/2)(x0x2 + x1x2) + (q/4)(x0 + x1)
    """
    if q % 4 != 0:
        raise ValueError(f"The quaternary kernel needs q divisible by 4, got q={q}")
    half, quarter = q // 2, q // 4
    a = Gbf.from_terms(q, 3, {(0, 1): half, (1, 2): half})
    b = Gbf.from_terms(q, 3, {(0, 2): half, (1, 2): half, (0,): quarter, (1,): quarter})
    return KernelPair(a, b, name='holzmann-kharaghani')


def _gamma_delta_pairs(q: int, threshold: float) -> List[Tuple[dict, KernelPair]]:
    half = q // 2
    kept = []
    for gamma, delta, alpha, beta in itertools.product(range(q), repeat=4):
        a = Gbf.from_terms(q, 2, {(0, 1): gamma})
        b = Gbf.from_terms(q, 2, {(0, 1): delta, (0,): alpha + half, (1,): beta})
        pair = KernelPair(a, b, name=f'gamma-delta({gamma},{delta},{alpha},{beta})')
        if pair.merit <= threshold + 1e-9:
            kept.append(({'gamma': gamma, 'delta': delta, 'alpha': alpha, 'beta': beta}, pair))
    logging.info(f"gamma/delta kernels for q={q}: kept {len(kept)} of {q ** 4} with merit <= {threshold}")
    return kept


def gamma_delta_kernels(q: int, threshold: float = GAMMA_DELTA_THRESHOLD) -> List[KernelPair]:
    """
    Kernels a = gamma x0x1, b = delta x0x1 + (alpha + q/2) x0 + beta x1 over
    all gamma, delta, alpha, beta in Z_q with Phi(a) * Phi(b) <= threshold.
    """
    return [pair for _, pair in _gamma_delta_pairs(q, threshold)]


def gamma_delta_family(q: int, m: int, threshold: float = GAMMA_DELTA_THRESHOLD) -> Iterator[CosetRep]:
    """Coset representatives on the identity order for every gamma/delta kernel, tagged 'cubic'."""
    for params, kernel in _gamma_delta_pairs(q, threshold):
        yield construct_coset_rep(kernel, m, tuple(range(m)), family='cubic', params=params)


def kernel_catalog(q: int = 4, include_gamma_delta: bool = True) -> Dict[str, KernelPair]:
    """
    Named kernels over Z_q: the trivial kernel, every alpha/beta generator with
    alpha, beta in Z_q, the quaternary length-8 kernel when 4 | q, and
    optionally the gamma/delta kernels within the merit threshold.
    """
    catalog = {'trivial': KernelPair.trivial(q)}
    for alpha, beta in alpha_beta_pairs(q, q):
        kernel = alpha_beta_kernel(q, alpha, beta)
        catalog[kernel.name] = kernel
    if q % 4 == 0:
        kernel = holzmann_kernel(q)
        if not kernel.is_complementary:
            raise VerificationError(f"{kernel.name} has star {kernel.star_psi}, expected {1 << (kernel.k + 1)}")
        catalog[kernel.name] = kernel
    if include_gamma_delta:
        for kernel in gamma_delta_kernels(q):
            catalog.setdefault(kernel.name, kernel)
    return catalog
