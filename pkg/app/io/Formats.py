"""File formats read and written by the command line.

- Gbf JSON: {"q": int, "m": int, "anf": {"<monomial-index>": coeff}}
- Kernel JSON: {"a": <Gbf JSON>, "b": <Gbf JSON>, "name": optional}
- Sequence text: one line of comma-separated entries, each an integer t
  (meaning xi^t), "." (an unsupported zero) or a complex literal such as 0.5-1j.
"""
import json

import numpy as np

from algorithm.algebra.Gbf import Gbf
from algorithm.algebra.Modulus import Modulus
from algorithm.construction.KernelPair import KernelPair
from algorithm.sequence.CxSeq import CxSeq


PHASE_TOL = 1e-9


def read_json(path: str) -> dict:
    with open(path) as handle:
        return json.load(handle)


def read_gbf(path: str) -> Gbf:
    return Gbf.from_json(read_json(path))


def write_gbf(f: Gbf, path: str) -> None:
    with open(path, 'w') as handle:
        json.dump(f.to_json(), handle, sort_keys=True)


def read_kernel(path: str) -> KernelPair:
    data = read_json(path)
    if 'a' not in data or 'b' not in data:
        raise ValueError(f"Kernel file {path} needs both 'a' and 'b'")
    return KernelPair.from_json(data)


def parse_sequence(text: str, q: int) -> CxSeq:
    """
    @param:
        - text: the sequence line
        - q: alphabet of the integer entries
    """
    modulus = Modulus.of(q)
    entries = [entry.strip() for entry in text.strip().split(',')]
    if not entries or entries == ['']:
        raise ValueError("Empty sequence")

    values = np.zeros(len(entries), dtype=np.complex128)
    support = np.ones(len(entries), dtype=bool)
    for i, entry in enumerate(entries):
        if entry == '.':
            support[i] = False
            continue
        try:
            values[i] = modulus.phase(int(entry))
        except ValueError:
            try:
                values[i] = complex(entry.replace(' ', ''))
            except ValueError:
                raise ValueError(f"Entry {i} of the sequence is not an integer, '.' or a complex literal: {entry!r}")
    return CxSeq(values, support)


def read_sequence(path: str, q: int) -> CxSeq:
    with open(path) as handle:
        return parse_sequence(handle.readline(), q)


def format_sequence(seq: CxSeq, q: int) -> str:
    """Inverse of parse_sequence; polyphase entries are written as their exponent."""
    modulus = Modulus.of(q)
    entries = []
    for value, supported in zip(seq.values, seq.support):
        if not supported:
            entries.append('.')
            continue
        t = int(np.round(np.angle(value) * q / (2 * np.pi))) % q
        if abs(value - modulus.phase(t)) <= PHASE_TOL:
            entries.append(str(t))
        else:
            entries.append(repr(complex(value)).strip('()'))
    return ','.join(entries)
