from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from algorithm.algebra.Gbf import Gbf
from algorithm.errors import ShapeMismatchError
from algorithm.sequence.CxSeq import CxSeq


def _check_increasing(indices: Sequence[int], m: int, label: str) -> Tuple[int, ...]:
    indices = tuple(int(i) for i in indices)
    if any(b <= a for a, b in zip(indices, indices[1:])):
        raise ValueError(f"{label} {indices} must be strictly increasing")
    if any(not 0 <= i < m for i in indices):
        raise ValueError(f"{label} {indices} must lie in [0, {m})")
    return indices


@dataclass(frozen=True)
class ExtensionSpec:
    """
    Where a length-2^k sequence lands inside a length-2^m one.

    The k original variables move to positions embed_indices (i_0 < ... < i_{k-1});
    the remaining m-k variables j_0 < ... < j_{m-k-1} are pinned to the binary
    word `assignment`.
    """
    m: int
    embed_indices: Tuple[int, ...]
    assignment: Tuple[int, ...]

    def __post_init__(self):
        embed = _check_increasing(self.embed_indices, self.m, "Embed indices")
        assignment = tuple(int(d) for d in self.assignment)
        if any(d not in (0, 1) for d in assignment):
            raise ValueError(f"Assignment {assignment} must be a binary word")
        if len(assignment) != self.m - len(embed):
            raise ShapeMismatchError(f"Assignment needs {self.m - len(embed)} bits, got {len(assignment)}")
        object.__setattr__(self, 'embed_indices', embed)
        object.__setattr__(self, 'assignment', assignment)

    @property
    def k(self) -> int:
        return len(self.embed_indices)

    @property
    def complement_indices(self) -> Tuple[int, ...]:
        embedded = set(self.embed_indices)
        return tuple(j for j in range(self.m) if j not in embedded)

    def positions(self) -> np.ndarray:
        """Position of entry u = sum u_alpha 2^alpha of the short sequence, for every u."""
        u = np.arange(1 << self.k, dtype=np.int64)
        positions = np.zeros_like(u)
        for alpha, i in enumerate(self.embed_indices):
            positions |= ((u >> alpha) & 1) << i
        offset = sum(d << j for d, j in zip(self.assignment, self.complement_indices))
        return positions | offset


def extend(F: CxSeq, spec: ExtensionSpec) -> CxSeq:
    """The extended sequence F_[x=d] of length 2^m; zero off the 2^k embedded positions."""
    if F.n != 1 << spec.k:
        raise ShapeMismatchError(f"Sequence of length {F.n} does not match k={spec.k}")
    if not F.support.all():
        raise ValueError("Only fully supported sequences can be extended")
    if spec.m <= spec.k:
        raise ValueError(f"Extension needs m > k, got m={spec.m}, k={spec.k}")

    values = np.zeros(1 << spec.m, dtype=np.complex128)
    support = np.zeros(1 << spec.m, dtype=bool)
    positions = spec.positions()
    values[positions] = F.values
    support[positions] = True
    return CxSeq(values, support)


def extend_gbf(f: Gbf, embed_indices: Sequence[int], m: int) -> Gbf:
    """f with every variable x_alpha renamed to x_{i_alpha}, as a function in m variables."""
    embed = _check_increasing(embed_indices, m, "Embed indices")
    if len(embed) != f.m:
        raise ShapeMismatchError(f"Need {f.m} embed indices, got {len(embed)}")
    return f.relabel(embed, m)
