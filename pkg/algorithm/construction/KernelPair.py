from functools import cached_property
from typing import Optional

from algorithm.algebra.Gbf import Gbf
from algorithm.errors import ShapeMismatchError
from algorithm.sequence.Correlation import star
from algorithm.sequence.Phi import phi_star, psi


COMPLEMENTARY_TOL = 1e-9


class KernelPair:
    """
    A pair (a, b) of generalized Boolean functions on k variables that seeds
    the coset and path constructions.

    Attributes:
        - a, b: Gbf with the same q and k
        - name: optional label used by the catalog and in reports
        - merit: Phi(a) * Phi(b), computed on first access
        - star_psi: Psi(a) * Psi(b), computed on first access
    """

    def __init__(self, a: Gbf, b: Gbf, name: Optional[str] = None):
        if a.q != b.q or a.m != b.m:
            raise ShapeMismatchError(f"Kernel functions differ in shape: (q={a.q}, k={a.m}) vs (q={b.q}, k={b.m})")
        self.a = a
        self.b = b
        self.name = name

    @classmethod
    def trivial(cls, q: int) -> 'KernelPair':
        """The length-1 kernel a = b = 0 (k = 0)."""
        return cls(Gbf.zero(q, 0), Gbf.zero(q, 0), name='trivial')

    @property
    def q(self) -> int:
        return self.a.q

    @property
    def k(self) -> int:
        return self.a.m

    @cached_property
    def merit(self) -> float:
        return phi_star(self.a, self.b)

    @cached_property
    def star_psi(self) -> float:
        return star(psi(self.a), psi(self.b))

    @property
    def upper_bound(self) -> float:
        """PMEPR bound merit / 2^k carried by every coset built from this kernel."""
        return self.merit / (1 << self.k)

    @property
    def is_complementary(self) -> bool:
        """Psi(a), Psi(b) form a Golay pair."""
        return abs(self.star_psi - (1 << (self.k + 1))) <= COMPLEMENTARY_TOL

    def key(self) -> tuple:
        return (self.a.key(), self.b.key())

    def to_json(self) -> dict:
        report = {'a': self.a.to_json(), 'b': self.b.to_json(), 'merit': self.merit}
        if self.name is not None:
            report['name'] = self.name
        return report

    @classmethod
    def from_json(cls, data: dict) -> 'KernelPair':
        return cls(Gbf.from_json(data['a']), Gbf.from_json(data['b']), name=data.get('name'))

    def __eq__(self, other) -> bool:
        return isinstance(other, KernelPair) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        label = f"{self.name}: " if self.name else ""
        return f"KernelPair({label}q={self.q}, k={self.k}, a={self.a}, b={self.b})"
