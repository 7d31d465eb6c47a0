from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np


MAX_MODULUS = 64


@dataclass(frozen=True)
class Modulus:
    """
    The alphabet Z_q together with its table of q-th roots of unity.

    phase_table[t] = exp(2*pi*sqrt(-1)*t/q), so the polyphase value of a
    residue t is a single lookup. q must be even and 2 <= q <= 64.
    """
    q: int
    phase_table: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.q, (int, np.integer)):
            raise TypeError(f"Modulus q must be an integer, got {type(self.q)}")
        if self.q < 2 or self.q > MAX_MODULUS:
            raise ValueError(f"Modulus q must satisfy 2 <= q <= {MAX_MODULUS}, got {self.q}")
        if self.q % 2 != 0:
            raise ValueError(f"Modulus q must be even, got {self.q}")

        table = np.exp(2j * np.pi * np.arange(self.q) / self.q)
        table[0] = 1.0
        # Exact values at the quarter points keep ±1, ±j free of rounding noise
        if self.q % 4 == 0:
            table[self.q // 4] = 1j
            table[3 * self.q // 4] = -1j
        table[self.q // 2] = -1.0
        table.setflags(write=False)
        object.__setattr__(self, 'q', int(self.q))
        object.__setattr__(self, 'phase_table', table)

    @staticmethod
    @lru_cache(maxsize=None)
    def of(q: int) -> 'Modulus':
        """Shared Modulus instance for q (one table per alphabet)."""
        return Modulus(q)

    @property
    def half(self) -> int:
        """q/2, the residue whose phase is -1."""
        return self.q // 2

    def phase(self, t) -> np.ndarray:
        """xi^t for an integer or integer array t (reduced mod q)."""
        return self.phase_table[np.mod(t, self.q)]

    def reduce(self, t):
        return np.mod(t, self.q)
