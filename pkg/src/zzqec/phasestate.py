"""Sparse signed-superposition states and the exact diagonal ZZ evolution.

States are stored as parallel arrays (basis string, amplitude), sorted by basis
string so inner products reduce to a merge join. All operations return new
states; nothing here mutates. Summations use numpy's fixed-order pairwise
reduction, so results do not depend on thread count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .bits import popcount_array
from .codes import ConcatLayout, expand_concatenated

_PRUNE = 1e-15
_NORM_TOL = 1e-12


class LogicalAmplitudes(NamedTuple):
    """Coefficients of the encoded superposition alpha|0_L> + beta|1_L>."""

    alpha: complex
    beta: complex

    def validate(self) -> "LogicalAmplitudes":
        norm = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError(f"|alpha|^2 + |beta|^2 = {norm} is not 1")
        return self

    @property
    def delta(self) -> float:
        """|alpha|^2 - |beta|^2, the only combination the failure curves depend on."""
        return abs(self.alpha) ** 2 - abs(self.beta) ** 2

    @staticmethod
    def from_alpha_sq(alpha_sq: float) -> "LogicalAmplitudes":
        if not 0.0 <= alpha_sq <= 1.0:
            raise ValueError("alpha_sq must lie in [0, 1]")
        return LogicalAmplitudes(np.sqrt(alpha_sq), np.sqrt(1.0 - alpha_sq))


@dataclass(frozen=True, eq=False)
class SparseState:
    n_qubits: int
    bits: np.ndarray   # uint64, strictly increasing
    amps: np.ndarray   # complex128, parallel to bits

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))

    def __len__(self) -> int:
        return len(self.bits)


def from_terms(n_qubits: int, terms: dict[int, complex]) -> SparseState:
    """Build a state from a {basis string: amplitude} map (test-friendly path)."""
    bits = np.fromiter(terms.keys(), dtype=np.uint64, count=len(terms))
    amps = np.fromiter(terms.values(), dtype=np.complex128, count=len(terms))
    order = np.argsort(bits, kind="stable")
    return _pruned(SparseState(n_qubits, bits[order], amps[order]))


def _pruned(state: SparseState) -> SparseState:
    keep = np.abs(state.amps) > _PRUNE
    if keep.all():
        return state
    return SparseState(state.n_qubits, state.bits[keep], state.amps[keep])


def from_logical(layout: ConcatLayout, amps: LogicalAmplitudes) -> SparseState:
    """Encoded state alpha|0_L> + beta|1_L> on the layout's physical qubits."""
    amps.validate()
    parts = []
    for logical, coeff in ((0, amps.alpha), (1, amps.beta)):
        if abs(coeff) <= _PRUNE:
            continue
        word = expand_concatenated(layout, logical)
        scale = coeff / np.sqrt(len(word))
        parts.append((word.bits, word.signs.astype(np.complex128) * scale))
    bits = np.concatenate([p[0] for p in parts])
    amps_arr = np.concatenate([p[1] for p in parts])
    order = np.argsort(bits, kind="stable")
    return SparseState(layout.n_total, bits[order], amps_arr[order])


def zz_phase_exponent(string: int, layout: ConcatLayout) -> int:
    """Sum of +-1 over intra-block adjacent pairs: +1 if the bits agree, -1 if not."""
    y = (string ^ (string >> 1)) & layout.pair_field_mask
    return layout.total_pairs - 2 * y.bit_count()


def _phase_exponents(bits: np.ndarray, layout: ConcatLayout) -> np.ndarray:
    y = (bits ^ (bits >> np.uint64(1))) & np.uint64(layout.pair_field_mask)
    return layout.total_pairs - 2 * popcount_array(y).astype(np.int64)


def evolve(state: SparseState, layout: ConcatLayout, delta_t: float) -> SparseState:
    """Apply the diagonal pair-coupling unitary for angle delta_t.

    Each basis string picks up exp(i * delta_t * s) with s its pair-agreement
    exponent; one complex exponential is evaluated per distinct s value.
    """
    if state.n_qubits != layout.n_total:
        raise ValueError("state and layout qubit counts differ")
    s = _phase_exponents(state.bits, layout)
    p = layout.total_pairs
    table = np.exp(1j * delta_t * np.arange(-p, p + 1))
    return SparseState(state.n_qubits, state.bits, state.amps * table[s + p])


def apply_z_mask(state: SparseState, mask: int) -> SparseState:
    """Apply the Z-string over `mask`; Z = diag(-1, +1) per qubit."""
    if mask >> state.n_qubits:
        raise ValueError("mask wider than the state")
    zeros = np.bitwise_and(np.bitwise_not(state.bits), np.uint64(mask))
    signs = 1.0 - 2.0 * (popcount_array(zeros) & np.uint64(1)).astype(np.float64)
    return SparseState(state.n_qubits, state.bits, state.amps * signs)


def inner(a: SparseState, b: SparseState) -> complex:
    """<a|b> over the shared support (merge join, deterministic reduction)."""
    if a.n_qubits != b.n_qubits:
        raise ValueError("states live on different qubit counts")
    _, ia, ib = np.intersect1d(a.bits, b.bits, assume_unique=True, return_indices=True)
    if len(ia) == 0:
        return 0.0 + 0.0j
    return complex(np.sum(np.conj(a.amps[ia]) * b.amps[ib]))
