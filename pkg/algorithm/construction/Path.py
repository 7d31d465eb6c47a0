"""Near-complementary pairs of length 2^m grown from a kernel of length 2^k.

The kernel functions a, b are placed on the variables I, and the remaining
variables J are appended one at a time in the order pi. Each step is the
Rudin-Shapiro sum/difference of the two halves, so the star value doubles
per step:

    c_{mu+1} = c_mu (1 - x_j) + (d_mu + w_mu) x_j
    d_{mu+1} = c_{mu+1} + (q/2) x_j            with j = j_{pi(mu)}

construct_path works on ANF coefficients; construct_path_sequences runs the
same steps on the sequences themselves.
"""
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from algorithm.algebra.Gbf import Gbf
from algorithm.construction.KernelPair import KernelPair
from algorithm.errors import ShapeMismatchError
from algorithm.sequence.CxSeq import CxSeq
from algorithm.sequence.Extension import ExtensionSpec, extend
from algorithm.sequence.Phi import psi


@dataclass(frozen=True)
class PathSpec:
    """
    Attributes:
        - m: target variable count
        - s, t: J = {0..s-1} U {m-t..m-1}, so k = m - s - t
        - pi: permutation of range(m - k), the order in which J is appended
        - weights: w_0..w_{m-k-1} in Z_q on the appended variables
        - constant: the global offset w in Z_q
    """
    m: int
    s: int
    t: int
    pi: Tuple[int, ...]
    weights: Tuple[int, ...] = ()
    constant: int = 0

    def __post_init__(self):
        if self.s < 0 or self.t < 0:
            raise ValueError(f"Split (s={self.s}, t={self.t}) must be non-negative")
        if self.s + self.t > self.m or self.s + self.t == 0:
            raise ValueError(f"Split (s={self.s}, t={self.t}) must satisfy 0 < s + t <= m={self.m}")
        pi = tuple(int(p) for p in self.pi)
        if sorted(pi) != list(range(self.s + self.t)):
            raise ValueError(f"{pi} is not a permutation of range({self.s + self.t})")
        weights = tuple(int(w) for w in self.weights) or (0,) * len(pi)
        if len(weights) != len(pi):
            raise ShapeMismatchError(f"Need {len(pi)} weights, got {len(weights)}")
        object.__setattr__(self, 'pi', pi)
        object.__setattr__(self, 'weights', weights)

    @property
    def k(self) -> int:
        return self.m - self.s - self.t

    @property
    def j_indices(self) -> Tuple[int, ...]:
        return tuple(range(self.s)) + tuple(range(self.m - self.t, self.m))

    @property
    def i_indices(self) -> Tuple[int, ...]:
        chained = set(self.j_indices)
        return tuple(i for i in range(self.m) if i not in chained)

    @property
    def chain(self) -> Tuple[int, ...]:
        """Variables in the order they are appended: j_{pi(0)}, j_{pi(1)}, ..."""
        return tuple(self.j_indices[p] for p in self.pi)


def chain_recursion(c: Gbf, d: Gbf, chain: Sequence[int], weights: Sequence[int]) -> Tuple[Gbf, Gbf]:
    """
    Append the variables of `chain` to the pair (c, d), already written in m
    variables, and return the final (c, d).
    """
    half = c.modulus.half
    for j, w in zip(chain, weights):
        c = c + (d - c + int(w)).mul_variable(j)
        d = c + Gbf.variable(c.modulus, c.m, j).scale(half)
    return c, d


def construct_path_on(kernel: KernelPair, m: int, embed: Sequence[int], chain: Sequence[int],
                      weights: Sequence[int] = (), constant: int = 0) -> Tuple[Gbf, Gbf]:
    """
    The path construction for arbitrary disjoint index lists.

    @param:
        - embed: targets of the kernel variables, a(x_embed[0], ..., x_embed[k-1])
        - chain: the remaining variables in append order
    @return:
        - (f, f + (q/2) x_{chain[-1]})
    """
    embed, chain = [int(i) for i in embed], [int(j) for j in chain]
    if m <= kernel.k:
        raise ValueError(f"Need m > k, got m={m}, k={kernel.k}")
    if len(embed) != kernel.k or sorted(embed + chain) != list(range(m)):
        raise ValueError(f"Embed {embed} and chain {chain} must partition range({m}) with {kernel.k} embedded")
    weights = [int(w) for w in weights] or [0] * len(chain)
    if len(weights) != len(chain):
        raise ShapeMismatchError(f"Need {len(chain)} weights, got {len(weights)}")

    c, d = chain_recursion(kernel.a.relabel(embed, m), kernel.b.relabel(embed, m), chain, weights)
    return c + int(constant), d + int(constant)


def construct_path(kernel: KernelPair, spec: PathSpec) -> Tuple[Gbf, Gbf]:
    """
    The pair (f, f + (q/2) x_{j_pi(m-k-1)}) for the prefix/suffix split of spec.

    Psi(f) * Psi(f') = 2^{m-k} (Psi(a) * Psi(b)) holds exactly.
    """
    if spec.k != kernel.k:
        raise ShapeMismatchError(f"PathSpec has k={spec.k} but the kernel has k={kernel.k}")
    return construct_path_on(kernel, spec.m, spec.i_indices, spec.chain, spec.weights, spec.constant)


def construct_path_sequences(kernel: KernelPair, spec: PathSpec) -> Tuple[CxSeq, CxSeq]:
    """
    The same pair built on sequences: start from the 2^{m-k} extended copies
    of Psi(a), Psi(b) and merge them pairwise, one appended variable at a time.
    """
    if spec.k != kernel.k:
        raise ShapeMismatchError(f"PathSpec has k={spec.k} but the kernel has k={kernel.k}")
    A, B = psi(kernel.a), psi(kernel.b)
    chain = spec.chain
    depth = len(chain)
    phase = kernel.a.modulus.phase_table

    # Words d are little-endian in the append order: bit mu of d fixes x_{chain[mu]}
    C, D = {}, {}
    for word in range(1 << depth):
        bits = [(word >> mu) & 1 for mu in range(depth)]
        assignment = [0] * depth
        for mu, j in enumerate(chain):
            assignment[sorted(chain).index(j)] = bits[mu]
        ext = ExtensionSpec(spec.m, spec.i_indices, tuple(assignment))
        C[word], D[word] = extend(A, ext), extend(B, ext)

    for mu in range(depth):
        rotate = phase[spec.weights[mu] % kernel.q]
        C_next, D_next = {}, {}
        for rest in range(1 << (depth - mu - 1)):
            low, high = rest << 1, (rest << 1) | 1
            C_next[rest] = C[low] + D[high].scale(rotate)
            D_next[rest] = C[low] - D[high].scale(rotate)
        C, D = C_next, D_next

    offset = phase[int(spec.constant) % kernel.q]
    return C[0].scale(offset), D[0].scale(offset)


def random_path_spec(m: int, k: int, q: int, rng: np.random.Generator) -> PathSpec:
    """A random valid PathSpec, used by property checks and the CLI demo."""
    s = int(rng.integers(0, m - k + 1))
    pi = tuple(int(p) for p in rng.permutation(m - k))
    weights = tuple(int(w) for w in rng.integers(0, q, size=m - k))
    return PathSpec(m, s, m - k - s, pi, weights, int(rng.integers(0, q)))
