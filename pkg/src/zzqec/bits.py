"""Bit-mask helpers for basis strings and qubit index sets.

Qubit indices are 1-based; qubit m lives at bit position m-1.
"""

from __future__ import annotations

from collections.abc import Iterable

import numpy as np


def mask_from_qubits(qubits: Iterable[int]) -> int:
    """Pack 1-based qubit indices into a bit mask."""
    mask = 0
    for q in qubits:
        if q < 1:
            raise ValueError(f"qubit indices are 1-based, got {q}")
        mask |= 1 << (q - 1)
    return mask


def qubits_from_mask(mask: int) -> tuple[int, ...]:
    """Unpack a bit mask into sorted 1-based qubit indices."""
    out = []
    q = 1
    while mask:
        if mask & 1:
            out.append(q)
        mask >>= 1
        q += 1
    return tuple(out)


def parity(x: int) -> int:
    return x.bit_count() & 1


def popcount_array(a: np.ndarray) -> np.ndarray:
    return np.bitwise_count(a)


def parity_array(a: np.ndarray) -> np.ndarray:
    return np.bitwise_count(a) & 1
