"""Generalized Boolean functions Z_2^m -> Z_q in algebraic normal form.

Index convention shared by every module: bit j of an integer index i stands
for the variable x_j. For an ANF array, entry i is the coefficient of the
monomial prod_{j in i} x_j. For a truth table, entry i is f(i_0,...,i_{m-1})
with i = sum_j i_j 2^j.

Conversion between the two is the subset-sum (zeta) transform mod q and its
Moebius inverse, done one variable at a time on reshaped numpy arrays.
"""
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Union

import numpy as np

from algorithm.algebra.Modulus import Modulus
from algorithm.errors import ShapeMismatchError


ModulusLike = Union[int, Modulus]


def _as_modulus(q: ModulusLike) -> Modulus:
    return q if isinstance(q, Modulus) else Modulus.of(int(q))


@lru_cache(maxsize=None)
def popcounts(m: int) -> np.ndarray:
    """Hamming weight of every index 0 <= i < 2^m."""
    idx = np.arange(1 << m, dtype=np.int64)
    weights = np.zeros(1 << m, dtype=np.int64)
    for j in range(m):
        weights += (idx >> j) & 1
    weights.setflags(write=False)
    return weights


def subset_transform(values: np.ndarray, m: int, q: int, inverse: bool = False) -> np.ndarray:
    """
    Zeta (inverse=False) or Moebius (inverse=True) transform over the subset
    lattice of {0,...,m-1}, applied along the last axis, reduced mod q.

    Leading axes are treated as a batch, so a whole matrix of ANFs (one per
    row) converts in a single call.
    """
    values = np.array(values, dtype=np.int64, copy=True)
    if values.shape[-1] != 1 << m:
        raise ShapeMismatchError(f"Last axis must have length 2^{m}={1 << m}, got {values.shape[-1]}")
    lead = values.shape[:-1]
    for j in range(m):
        block = values.reshape(*lead, -1, 2, 1 << j)
        if inverse:
            block[..., 1, :] -= block[..., 0, :]
        else:
            block[..., 1, :] += block[..., 0, :]
        np.mod(block, q, out=block)
    return np.mod(values, q)


class Gbf:
    """
    A generalized Boolean function f: Z_2^m -> Z_q stored by its ANF.

    Instances are immutable; all arithmetic returns new objects with
    coefficients reduced to [0, q).

    Attributes:
        modulus: Modulus for Z_q
        m: number of variables
        anf: read-only int64 array of length 2^m
    """

    def __init__(self, q: ModulusLike, m: int, anf: Optional[Iterable[int]] = None):
        self.modulus = _as_modulus(q)
        if m < 0:
            raise ValueError(f"Variable count m must be >= 0, got {m}")
        self.m = int(m)

        if anf is None:
            coefficients = np.zeros(1 << self.m, dtype=np.int64)
        else:
            coefficients = np.mod(np.asarray(anf, dtype=np.int64).reshape(-1), self.q)
        if coefficients.shape[0] != 1 << self.m:
            raise ShapeMismatchError(f"ANF of a function in {self.m} variables needs {1 << self.m} coefficients, "
                                     f"got {coefficients.shape[0]}")
        coefficients.setflags(write=False)
        self.anf = coefficients

    # --- Constructors ---
    @classmethod
    def zero(cls, q: ModulusLike, m: int) -> 'Gbf':
        return cls(q, m)

    @classmethod
    def constant(cls, q: ModulusLike, m: int, c: int) -> 'Gbf':
        anf = np.zeros(1 << m, dtype=np.int64)
        anf[0] = c
        return cls(q, m, anf)

    @classmethod
    def variable(cls, q: ModulusLike, m: int, j: int) -> 'Gbf':
        if not 0 <= j < m:
            raise ValueError(f"Variable x_{j} does not exist in {m} variables")
        anf = np.zeros(1 << m, dtype=np.int64)
        anf[1 << j] = 1
        return cls(q, m, anf)

    @classmethod
    def from_terms(cls, q: ModulusLike, m: int, terms: Mapping) -> 'Gbf':
        """
        Build from {monomial: coefficient}. A monomial is either its integer
        index or a tuple of variable numbers, e.g. {(0, 1): 2, (0,): 3, (1,): 1}
        is 2x0x1 + 3x0 + x1. Repeated monomials accumulate.
        """
        anf = np.zeros(1 << m, dtype=np.int64)
        for monomial, coefficient in terms.items():
            anf[cls.monomial_index(monomial, m)] += int(coefficient)
        return cls(q, m, anf)

    @classmethod
    def from_json(cls, data: Mapping) -> 'Gbf':
        """Inverse of to_json: {"q": int, "m": int, "anf": {"<index>": coeff}}."""
        q, m = int(data['q']), int(data['m'])
        anf = np.zeros(1 << m, dtype=np.int64)
        for index, coefficient in data.get('anf', {}).items():
            i = int(index)
            if not 0 <= i < 1 << m:
                raise ValueError(f"Monomial index {i} out of range for m={m}")
            anf[i] = int(coefficient)
        return cls(q, m, anf)

    @classmethod
    def random(cls, q: ModulusLike, m: int, rng: np.random.Generator,
               max_degree: Optional[int] = None) -> 'Gbf':
        modulus = _as_modulus(q)
        anf = rng.integers(0, modulus.q, size=1 << m)
        if max_degree is not None:
            anf[popcounts(m) > max_degree] = 0
        return cls(modulus, m, anf)

    @staticmethod
    def monomial_index(monomial, m: int) -> int:
        if isinstance(monomial, (int, np.integer)):
            index = int(monomial)
        else:
            index = 0
            for j in monomial:
                if not 0 <= j < m:
                    raise ValueError(f"Variable x_{j} does not exist in {m} variables")
                index |= 1 << j
        if not 0 <= index < 1 << m:
            raise ValueError(f"Monomial index {index} out of range for m={m}")
        return index

    # --- Properties ---
    @property
    def q(self) -> int:
        return self.modulus.q

    @property
    def degree(self) -> int:
        """Largest weight of a monomial with nonzero coefficient (0 for constants)."""
        support = np.nonzero(self.anf)[0]
        if support.size == 0:
            return 0
        return int(popcounts(self.m)[support].max())

    def coefficient(self, monomial) -> int:
        return int(self.anf[self.monomial_index(monomial, self.m)])

    def terms(self) -> dict[int, int]:
        """Nonzero coefficients as {monomial index: coefficient}."""
        return {int(i): int(self.anf[i]) for i in np.nonzero(self.anf)[0]}

    # --- Evaluation ---
    def truth_table(self) -> 'TruthTable':
        return TruthTable(self.modulus, self.m, subset_transform(self.anf, self.m, self.q))

    def __call__(self, *bits: int) -> int:
        if len(bits) != self.m:
            raise ValueError(f"Expected {self.m} arguments, got {len(bits)}")
        point = sum(int(b & 1) << j for j, b in enumerate(bits))
        return int(self.truth_table().values[point])

    # --- Arithmetic ---
    def _check_compatible(self, other: 'Gbf') -> None:
        if not isinstance(other, Gbf):
            raise TypeError(f"Expected Gbf, got {type(other)}")
        if other.q != self.q or other.m != self.m:
            raise ShapeMismatchError(f"Incompatible functions: (q={self.q}, m={self.m}) vs (q={other.q}, m={other.m})")

    def __add__(self, other) -> 'Gbf':
        if isinstance(other, (int, np.integer)):
            return self + Gbf.constant(self.modulus, self.m, int(other))
        self._check_compatible(other)
        return Gbf(self.modulus, self.m, self.anf + other.anf)

    __radd__ = __add__

    def __sub__(self, other) -> 'Gbf':
        if isinstance(other, (int, np.integer)):
            return self + (-int(other))
        self._check_compatible(other)
        return Gbf(self.modulus, self.m, self.anf - other.anf)

    def __neg__(self) -> 'Gbf':
        return Gbf(self.modulus, self.m, -self.anf)

    def scale(self, c: int) -> 'Gbf':
        return Gbf(self.modulus, self.m, int(c) * self.anf)

    def mul_variable(self, j: int) -> 'Gbf':
        """f * x_j, using x_j^2 = x_j (monomials containing x_j absorb the ones without)."""
        if not 0 <= j < self.m:
            raise ValueError(f"Variable x_{j} does not exist in {self.m} variables")
        bit = 1 << j
        product = np.zeros_like(self.anf)
        indices = np.arange(1 << self.m)
        np.add.at(product, indices | bit, self.anf)
        return Gbf(self.modulus, self.m, product)

    def relabel(self, targets, m: Optional[int] = None) -> 'Gbf':
        """
        Substitute x_alpha -> x_{targets[alpha]}, producing a function in m
        variables (default: same m). targets must be distinct and < m.
        """
        m = self.m if m is None else int(m)
        targets = [int(t) for t in targets]
        if len(targets) != self.m:
            raise ShapeMismatchError(f"Need {self.m} target indices, got {len(targets)}")
        if len(set(targets)) != len(targets) or any(not 0 <= t < m for t in targets):
            raise ValueError(f"Target indices {targets} must be distinct and in [0, {m})")

        old = np.arange(1 << self.m, dtype=np.int64)
        new = np.zeros_like(old)
        for alpha, target in enumerate(targets):
            new |= ((old >> alpha) & 1) << target
        anf = np.zeros(1 << m, dtype=np.int64)
        anf[new] = self.anf
        return Gbf(self.modulus, m, anf)

    def permute(self, sigma) -> 'Gbf':
        """f(x_{sigma(0)}, ..., x_{sigma(m-1)}) for a permutation sigma of Z_m."""
        if sorted(int(s) for s in sigma) != list(range(self.m)):
            raise ValueError(f"{list(sigma)} is not a permutation of range({self.m})")
        return self.relabel(sigma)

    # --- Serialization / dunder ---
    def to_json(self) -> dict:
        return {'q': self.q, 'm': self.m, 'anf': {str(i): c for i, c in self.terms().items()}}

    def key(self) -> tuple:
        """Hashable identity (q, m, coefficients)."""
        return (self.q, self.m, self.anf.tobytes())

    def __eq__(self, other) -> bool:
        return isinstance(other, Gbf) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __str__(self) -> str:
        parts = []
        # Highest-weight monomials first, then by index
        order = sorted(self.terms().items(), key=lambda item: (-popcounts(self.m)[item[0]], item[0]))
        for index, coefficient in order:
            monomial = ''.join(f'x{j}' for j in range(self.m) if index >> j & 1)
            if not monomial:
                parts.append(str(coefficient))
            else:
                parts.append(monomial if coefficient == 1 else f'{coefficient}{monomial}')
        return '+'.join(parts) if parts else '0'

    def __repr__(self) -> str:
        return f"Gbf(q={self.q}, m={self.m}, f={self})"


class TruthTable:
    """
    The Z_q-valued sequence psi(f) = (f_0, ..., f_{2^m - 1}) of a Gbf.

    Attributes:
        modulus: Modulus for Z_q
        m: number of variables
        values: read-only int64 array of length 2^m
    """

    def __init__(self, q: ModulusLike, m: int, values: Iterable[int]):
        self.modulus = _as_modulus(q)
        self.m = int(m)
        values = np.mod(np.asarray(values, dtype=np.int64).reshape(-1), self.modulus.q)
        if values.shape[0] != 1 << self.m:
            raise ShapeMismatchError(f"Truth table in {self.m} variables needs {1 << self.m} entries, "
                                     f"got {values.shape[0]}")
        values.setflags(write=False)
        self.values = values

    @property
    def q(self) -> int:
        return self.modulus.q

    def to_gbf(self) -> Gbf:
        return Gbf(self.modulus, self.m, subset_transform(self.values, self.m, self.q, inverse=True))

    def __eq__(self, other) -> bool:
        return (isinstance(other, TruthTable) and other.q == self.q and other.m == self.m
                and np.array_equal(other.values, self.values))

    def __hash__(self) -> int:
        return hash((self.q, self.m, self.values.tobytes()))

    def __len__(self) -> int:
        return self.values.shape[0]

    def __repr__(self) -> str:
        return f"TruthTable(q={self.q}, m={self.m}, values={tuple(int(v) for v in self.values)})"


# --- Module-level operations ---
def anf_to_truth_table(f: Gbf) -> TruthTable:
    """values[i] = sum of anf[j] over monomials j contained in i, mod q."""
    return f.truth_table()


def truth_table_to_anf(t: TruthTable) -> Gbf:
    """The unique Gbf whose truth table is t."""
    return t.to_gbf()


def degree(f: Gbf) -> int:
    return f.degree
