"""Named families of coset representatives.

Permutations are taken with pi(0) < pi(m-1): reversing pi gives the same
quadratic chain, so this keeps one of each reversal pair (m!/2 of them).
"""
import itertools
import logging
from typing import Iterable, Iterator, List

from algorithm.algebra.Gbf import Gbf
from algorithm.construction.Coset import CosetRep, construct_coset_rep
from algorithm.construction.KernelPair import KernelPair


def chain_permutations(m: int) -> Iterator[tuple]:
    for pi in itertools.permutations(range(m)):
        if m < 2 or pi[0] < pi[-1]:
            yield pi


def golay_chain(q: int, m: int, pi) -> Gbf:
    """(q/2) sum_{i=0}^{m-2} x_pi(i) x_pi(i+1)."""
    half = q // 2
    return Gbf.from_terms(q, m, {(pi[i], pi[i + 1]): half for i in range(m - 1)})


def davis_jedwab_family(q: int, m: int) -> Iterator[CosetRep]:
    """The m!/2 Golay cosets: the trivial kernel spread along every chain order."""
    if m < 2:
        raise ValueError(f"The Golay family needs m >= 2, got m={m}")
    kernel = KernelPair.trivial(q)
    for pi in chain_permutations(m):
        yield construct_coset_rep(kernel, m, pi, family='golay')


def alpha_beta_kernel(q: int, alpha: int, beta: int) -> KernelPair:
    """a = (q/2) x0x1, b = (q/2) x0x1 + (alpha + q/2) x0 + beta x1."""
    half = q // 2
    a = Gbf.from_terms(q, 2, {(0, 1): half})
    b = Gbf.from_terms(q, 2, {(0, 1): half, (0,): alpha + half, (1,): beta})
    return KernelPair(a, b, name=f'alpha-beta({alpha % q},{beta % q})')


def alpha_beta_representative(q: int, m: int, alpha: int, beta: int, pi) -> Gbf:
    """(q/2) sum x_pi(i) x_pi(i+1) + alpha x_pi(0) x_pi(2) + beta x_pi(1) x_pi(2)."""
    extra = Gbf.from_terms(q, m, {(pi[0], pi[2]): alpha, (pi[1], pi[2]): beta})
    return golay_chain(q, m, pi) + extra


def alpha_beta_pairs(q: int, p: int) -> List[tuple]:
    """All (alpha, beta) in (q/p) Z_p^2 except (q/2, q/2), which repeats (0, 0)."""
    if p <= 0 or q % p != 0:
        raise ValueError(f"p={p} must divide q={q}")
    step, half = q // p, q // 2
    values = range(0, q, step)
    return [(alpha, beta) for alpha in values for beta in values if (alpha, beta) != (half, half)]


def alpha_beta_family(q: int, p: int, m: int) -> Iterator[CosetRep]:
    """
    The (p^2 - 1) m!/2 labelled representatives (alpha, beta, pi).

    The representative for (alpha, beta, pi) is built from the kernel with the
    two parameters exchanged on the reordered permutation (pi(1), pi(0), pi(2), ...),
    which expands to exactly alpha_beta_representative(q, m, alpha, beta, pi).
    Its bound is symmetric in alpha and beta.
    """
    if p not in (2, 4, 8):
        raise ValueError(f"p must be 2, 4 or 8, got {p}")
    if m <= 2:
        raise ValueError(f"The alpha/beta family needs m > 2, got m={m}")
    pairs = alpha_beta_pairs(q, p)
    logging.debug(f"alpha/beta family q={q}, p={p}, m={m}: {len(pairs)} parameter pairs")
    for alpha, beta in pairs:
        kernel = alpha_beta_kernel(q, beta, alpha)
        for pi in chain_permutations(m):
            order = (pi[1], pi[0]) + pi[2:]
            yield construct_coset_rep(kernel, m, order, family='alpha-beta',
                                      params={'alpha': alpha, 'beta': beta, 'chain': list(pi)})


def distinct_by_anf(reps: Iterable[CosetRep]) -> List[CosetRep]:
    """First representative of every distinct ANF, in input order."""
    seen, distinct = set(), []
    for rep in reps:
        key = rep.gbf.key()
        if key not in seen:
            seen.add(key)
            distinct.append(rep)
    return distinct
