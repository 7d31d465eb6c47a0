"""Orbits of kernel pairs under the merit-preserving moves.

Adding the same affine function L + c to a and b, and renaming the variables
of both by the same permutation sigma, leave Phi(a) * Phi(b) unchanged. The
canonical form of a pair is the lexicographically least concatenated ANF
(a, b) in its orbit. Independent offsets on a and b are not merit-preserving
and are not used.

The least element always has a with zero constant and linear part: the shared
offset can clear them for any sigma, and they precede every coefficient of b.
"""
import itertools
from functools import lru_cache

import numpy as np

from algorithm.algebra.Gbf import Gbf, popcounts
from algorithm.construction.KernelPair import KernelPair


@lru_cache(maxsize=None)
def permutation_maps(k: int) -> np.ndarray:
    """
    Gather maps of every sigma in S_k: row s satisfies image = f[..., maps[s]]
    where image is f with x_alpha renamed to x_{sigma(alpha)}. Row 0 is the identity.
    """
    index = np.arange(1 << k, dtype=np.int64)
    rows = []
    for sigma in itertools.permutations(range(k)):
        moved = np.zeros_like(index)
        for alpha, target in enumerate(sigma):
            moved |= ((index >> alpha) & 1) << target
        rows.append(np.argsort(moved))
    maps = np.array(rows, dtype=np.int64).reshape(-1, 1 << k)
    maps.setflags(write=False)
    return maps


@lru_cache(maxsize=None)
def affine_indices(k: int) -> np.ndarray:
    return np.nonzero(popcounts(k) <= 1)[0]


def lex_less_equal(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Row-wise x <= y in lexicographic order for integer arrays of shape (N, D)."""
    diff = y - x
    nonzero = diff != 0
    first = np.argmax(nonzero, axis=-1)
    leading = np.take_along_axis(diff, first[..., None], axis=-1)[..., 0]
    return ~nonzero.any(axis=-1) | (leading > 0)


def clear_affine(a: np.ndarray, b: np.ndarray, q: int) -> tuple[np.ndarray, np.ndarray]:
    """Subtract the constant and linear part of a from both a and b."""
    offset = np.zeros_like(a)
    positions = affine_indices(int(a.shape[-1]).bit_length() - 1)
    offset[..., positions] = a[..., positions]
    return np.mod(a - offset, q), np.mod(b - offset, q)


def canonicalize(pair: KernelPair) -> KernelPair:
    """The lexicographically least pair in the orbit of `pair`."""
    q, k = pair.q, pair.k
    best = None
    for gather in permutation_maps(k):
        a, b = clear_affine(pair.a.anf[gather], pair.b.anf[gather], q)
        candidate = np.concatenate([a, b])
        if best is None or tuple(candidate) < tuple(best):
            best = candidate
    size = 1 << k
    return KernelPair(Gbf(q, k, best[:size]), Gbf(q, k, best[size:]), name=pair.name)


def stabilizer_counts(a: np.ndarray, b_rows: np.ndarray) -> np.ndarray:
    """
    For a single affine-free a and many b, the number of sigma fixing (a, b).
    Distinct permutation images are k! / stabilizer.
    """
    k = int(a.shape[0]).bit_length() - 1
    counts = np.zeros(b_rows.shape[0], dtype=np.int64)
    for gather in permutation_maps(k):
        if np.array_equal(a[gather], a):
            counts += np.all(b_rows[:, gather] == b_rows, axis=1)
    return counts


def orbit_size(pair: KernelPair) -> int:
    """q^{k+1} k! / |stabilizer| for the action on the canonical slice."""
    canonical = canonicalize(pair)
    k = pair.k
    stab = stabilizer_counts(canonical.a.anf, canonical.b.anf[None, :])[0]
    return pair.q ** (k + 1) * (permutation_maps(k).shape[0] // int(stab))


def canonical_mask(a: np.ndarray, b_rows: np.ndarray) -> np.ndarray:
    """
    For a single affine-free a and many b, whether (a, b) is the least
    element of its orbit, i.e. (a, b) <= (sigma a, sigma b) for every sigma.
    """
    k = int(a.shape[0]).bit_length() - 1
    mask = np.ones(b_rows.shape[0], dtype=bool)
    a_key = tuple(a)
    for gather in permutation_maps(k)[1:]:
        image = a[gather]
        image_key = tuple(image)
        if image_key > a_key:
            continue
        if image_key < a_key:
            mask[:] = False
            break
        mask &= lex_less_equal(b_rows, b_rows[:, gather])
    return mask
