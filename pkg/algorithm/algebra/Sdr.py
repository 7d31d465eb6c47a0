from dataclasses import dataclass
from typing import Tuple


@dataclass(frozen=True)
class Sdr:
    """
    A signed-digit representation value = sum_alpha digits[alpha] * 2^alpha
    with digits in {-1, 0, +1} (least significant digit first).

    Sparse: no two adjacent nonzero digits.
    Canonical: sparse and the last digit nonzero (the empty tuple for 0).
    """
    digits: Tuple[int, ...]

    def __post_init__(self):
        if any(d not in (-1, 0, 1) for d in self.digits):
            raise ValueError(f"SDR digits must be -1, 0 or +1, got {self.digits}")
        object.__setattr__(self, 'digits', tuple(int(d) for d in self.digits))

    @property
    def value(self) -> int:
        return sum(d * (1 << alpha) for alpha, d in enumerate(self.digits))

    @property
    def is_sparse(self) -> bool:
        return all(not (a and b) for a, b in zip(self.digits, self.digits[1:]))

    @property
    def is_canonical(self) -> bool:
        return self.is_sparse and (len(self.digits) == 0 or self.digits[-1] != 0)

    def __len__(self) -> int:
        return len(self.digits)


def sparse_sdr(i: int) -> Sdr:
    """
    The unique canonical sparse SDR of i (the non-adjacent form).

    Built digit by digit from the least significant end:
        i even        -> digit 0, continue with i/2
        i = 1 mod 4   -> digits 1, 0, continue with (i-1)/4
        i = -1 mod 4  -> digits -1, 0, continue with (i+1)/4
    Negative i is handled by negating the digits of -i.
    """
    i = int(i)
    if i == 0:
        return Sdr(())
    if i < 0:
        return Sdr(tuple(-d for d in sparse_sdr(-i).digits))

    digits = []
    while i != 0:
        if i == 1:
            digits.append(1)
            break
        if i % 2 == 0:
            digits.append(0)
            i //= 2
        elif i % 4 == 1:
            digits.extend((1, 0))
            i = (i - 1) // 4
        else:
            digits.extend((-1, 0))
            i = (i + 1) // 4

    # Every two-digit step leaves i >= 1, so the last digit written is the final 1
    return Sdr(tuple(digits))
