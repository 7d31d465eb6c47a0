from typing import Iterable, Optional

import numpy as np

from algorithm.algebra.Modulus import Modulus
from algorithm.errors import ShapeMismatchError


SUPPORT_TOL = 1e-12


class CxSeq:
    """
    A finite complex sequence with an explicit support mask.

    Entries off the support are exactly zero. On the support the entries are
    usually unimodular (a polyphase sequence when the support is full), but
    general complex values are accepted so that sums like A+B stay in the type.

    Attributes:
        - values: read-only complex128 array
        - support: read-only boolean array of the same length
    """

    def __init__(self, values: Iterable[complex], support: Optional[Iterable[bool]] = None):
        values = np.array(values, dtype=np.complex128).reshape(-1)
        if support is None:
            support = np.abs(values) > SUPPORT_TOL
        else:
            support = np.array(support, dtype=bool).reshape(-1)
            if support.shape != values.shape:
                raise ShapeMismatchError(f"Support length {support.shape[0]} != value length {values.shape[0]}")
            if np.any(np.abs(values[~support]) > SUPPORT_TOL):
                raise ValueError("Entries outside the support must be zero")
        values[~support] = 0
        values.setflags(write=False)
        support.setflags(write=False)
        self.values = values
        self.support = support

    # --- Constructors ---
    @classmethod
    def polyphase(cls, q, residues: Iterable[int]) -> 'CxSeq':
        """(xi^t_0, xi^t_1, ...) with full support."""
        modulus = q if isinstance(q, Modulus) else Modulus.of(int(q))
        phases = modulus.phase(np.asarray(residues, dtype=np.int64))
        return cls(phases, np.ones(phases.shape[0], dtype=bool))

    @classmethod
    def ones(cls, n: int) -> 'CxSeq':
        return cls(np.ones(n, dtype=np.complex128), np.ones(n, dtype=bool))

    # --- Properties ---
    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def is_unimodular(self) -> bool:
        """|A_i| = 1 on every supported entry."""
        return bool(np.all(np.abs(np.abs(self.values[self.support]) - 1.0) <= SUPPORT_TOL * 1e3))

    @property
    def is_polyphase(self) -> bool:
        return bool(self.support.all()) and self.is_unimodular

    # --- Arithmetic ---
    def _check_length(self, other: 'CxSeq') -> None:
        if not isinstance(other, CxSeq):
            raise TypeError(f"Expected CxSeq, got {type(other)}")
        if other.n != self.n:
            raise ShapeMismatchError(f"Sequence lengths differ: {self.n} vs {other.n}")

    def __add__(self, other: 'CxSeq') -> 'CxSeq':
        self._check_length(other)
        return CxSeq(self.values + other.values)

    def __sub__(self, other: 'CxSeq') -> 'CxSeq':
        self._check_length(other)
        return CxSeq(self.values - other.values)

    def __neg__(self) -> 'CxSeq':
        return CxSeq(-self.values, self.support)

    def scale(self, c: complex) -> 'CxSeq':
        """c * A; a unimodular c keeps the support."""
        if abs(c) <= SUPPORT_TOL:
            return CxSeq(np.zeros(self.n, dtype=np.complex128), np.zeros(self.n, dtype=bool))
        return CxSeq(c * self.values, self.support)

    def concat(self, other: 'CxSeq') -> 'CxSeq':
        """(A | B)."""
        return CxSeq(np.concatenate([self.values, other.values]),
                     np.concatenate([self.support, other.support]))

    def allclose(self, other: 'CxSeq', atol: float = 1e-9) -> bool:
        return (isinstance(other, CxSeq) and other.n == self.n
                and np.array_equal(other.support, self.support)
                and np.allclose(other.values, self.values, rtol=0.0, atol=atol))

    def __len__(self) -> int:
        return self.n

    def __iter__(self):
        return iter(self.values)

    def __repr__(self) -> str:
        return f"CxSeq(n={self.n}, support={int(self.support.sum())})"
