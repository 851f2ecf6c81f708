"""Z-error classification through ideal recovery and the exact failure engines.

Failure accounting
------------------
Depth 1 uses the direct definition: one minus the probability of landing in the
original state or one of the n single-Z corrected states, evaluated from state
inner products.

Depth 2 decomposes the evolution into the Z-patterns it generates (per block,
the 2^(n-1) masks produced by subsets of adjacent pairs). Patterns are grouped
into sectors by their per-block syndromes; amplitudes inside a sector add
coherently (this is where the concatenated code's degeneracy enters), distinct
sectors add incoherently. A sector is scored by the single recoverable
projection it can hold: a block whose syndrome admits the identity-or-single
correction and whose residual acts as the identity is clean; any other block
counts as failing, at most one failing block is recoverable at the outer level,
and the outer comparison may absorb a zero-syndrome pattern of block flags
(which costs a factor |alpha|^2 - |beta|^2 when that pattern acts as a logical
Z). Two engines implement this: a brute pattern enumeration (5-qubit code only,
2^20 patterns) and a factorized engine that combines per-block transfer tables
and runs for both codes. They share only the code tables and must agree.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from math import cos, sin
from typing import NamedTuple, Sequence

import numpy as np

from .codes import Code, ConcatLayout, LAFLAMME5, build_code, z_mask_sign
from .errors import NotClassifiable, ScaleExceeded
from .phasestate import LogicalAmplitudes, apply_z_mask, evolve, from_logical, inner

_AMP_PRUNE = 1e-15


class LogicalAction(NamedTuple):
    """Net effect of a corrected Z-error on the codewords: +-identity or +-Z."""

    kind: str   # "I" or "Z"
    sign: int   # action on the logical-zero word


class SectorKey(NamedTuple):
    """Label of a recovery sector; patterns interfere iff their keys match."""

    inner_syndromes: tuple[int, ...]
    outer_syndrome: int


@dataclass(frozen=True)
class FailureResult:
    delta_t: float
    p_fail: float
    engine: str
    code: str
    depth: int
    alpha_sq: float


# ---------------------------------------------------------------------------
# Per-block tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class BlockTables:
    """Classification of the per-block patterns the evolution generates.

    Subset s of the n-1 adjacent pairs produces mask(s) with amplitude
    cos^(pairs-|s|) * (i sin)^|s|. Each mask is classified against the canonical
    representative of its syndrome class: phi says whether the residual acts as
    a logical Z, chi is the residual's sign on the zero word.
    """

    code: Code
    subset_masks: np.ndarray     # int64[2^(n-1)]
    subset_k: np.ndarray         # popcount of the subset
    subset_syndrome: np.ndarray
    subset_phi: np.ndarray
    subset_chi: np.ndarray
    syndrome_phi: np.ndarray     # natural flag per syndrome (uniform over its subsets)
    bad_syndromes: frozenset[int]   # no identity-or-single correction exists
    vperp: tuple[int, ...]          # zero-syndrome masks
    vperp_kind_z: dict[int, bool]
    vperp_sign0: dict[int, int]


def _canonical_mask(code: Code, syndrome: int) -> int:
    corr = code.correction[syndrome]
    return corr if corr is not None else code.class_rep[syndrome]


@functools.lru_cache(maxsize=None)
def block_tables(kind: str) -> BlockTables:
    code = build_code(kind)
    n = code.n_physical
    n_sub = 1 << (n - 1)

    masks = np.zeros(n_sub, dtype=np.int64)
    for m in range(n - 1):
        sel = (np.arange(n_sub) >> m) & 1
        masks ^= sel * (0b11 << m)
    ks = np.bitwise_count(np.arange(n_sub, dtype=np.uint64)).astype(np.int64)

    syn = code.syndrome_of[masks].astype(np.int64)
    phi = np.zeros(n_sub, dtype=np.int64)
    chi = np.zeros(n_sub, dtype=np.int64)
    for i in range(n_sub):
        residual = int(masks[i]) ^ _canonical_mask(code, int(syn[i]))
        a0 = code.action_zero[residual]
        a1 = code.action_one[residual]
        phi[i] = 0 if a0 == a1 else 1
        chi[i] = a0

    syndrome_phi = np.full(code.n_syndromes, -1, dtype=np.int64)
    for i in range(n_sub):
        s = int(syn[i])
        if syndrome_phi[s] == -1:
            syndrome_phi[s] = phi[i]
        elif syndrome_phi[s] != phi[i]:
            raise AssertionError("generated patterns of one syndrome disagree on their flag")

    bad = frozenset(s for s, c in code.correction.items() if c is None)
    vperp = tuple(sorted(code.action_zero))
    kind_z = {d: code.action_zero[d] != code.action_one[d] for d in vperp}
    sign0 = {d: code.action_zero[d] for d in vperp}
    for arr in (masks, ks, syn, phi, chi, syndrome_phi):
        arr.setflags(write=False)
    return BlockTables(code, masks, ks, syn, phi, chi, syndrome_phi, bad, vperp, kind_z, sign0)


# ---------------------------------------------------------------------------
# Classification and maximal orthogonal sets
# ---------------------------------------------------------------------------

def classify_z_error(code: Code, mask: int) -> LogicalAction:
    """Net logical action after ideal syndrome measurement and correction.

    Syndromes without a single-qubit correction (the 5-qubit code has two such
    classes) are corrected with the minimum-weight class representative, which
    is how the degenerate pair identities show up as equal classifications.
    """
    if mask >> code.n_physical:
        raise ValueError("mask wider than the code block")
    syndrome = int(code.syndrome_of[mask])
    residual = mask ^ _canonical_mask(code, syndrome)
    try:
        a0 = code.action_zero[residual]
        a1 = code.action_one[residual]
    except KeyError as exc:  # pragma: no cover - would indicate a table bug
        raise NotClassifiable(f"residual {residual:#x} is not a scalar on the codewords") from exc
    return LogicalAction("I" if a0 == a1 else "Z", a0)


def images_orthogonal(code: Code, mask_a: int, mask_b: int) -> bool:
    """Whether two Z-error images are orthogonal on the encoded superposition.

    The criterion is <0|Za Zb|0> + <1|Za Zb|1> = 0: different syndromes make
    both terms vanish, equal syndromes leave a scalar pair that cancels exactly
    when the relative action is a logical Z.
    """
    d = mask_a ^ mask_b
    if d == 0:
        return False
    if int(code.syndrome_of[d]) != 0:
        return True
    return code.action_zero[d] + code.action_one[d] == 0


def single_block_orthogonal_set(code: Code) -> list[int]:
    """Greedy maximal set of Z-masks with mutually orthogonal images.

    Scans all masks in weight-then-value order and keeps those orthogonal to the
    identity and to everything kept so far. Both codes yield exactly 15.
    """
    kept: list[int] = []
    order = sorted(range(1, 1 << code.n_physical), key=lambda m: (m.bit_count(), m))
    for m in order:
        if not images_orthogonal(code, 0, m):
            continue
        if all(images_orthogonal(code, m, x) for x in kept):
            kept.append(m)
    return kept


def nonzero_odd_supports(code: Code) -> list[tuple[int, ...]]:
    """Nonempty qubit-index sets S with <0_L|Z_S|0_L> != 0, by exhaustive scan."""
    n = code.n_physical
    supp0 = [k.bits for k in code.zero_word]
    out = []
    for s in range(1, 1 << n):
        total = sum(z_mask_sign(b, s, n) for b in supp0)
        if total != 0:
            out.append(tuple(q + 1 for q in range(n) if (s >> q) & 1))
    return sorted(out, key=lambda t: (len(t), t))


def block_flag(code: Code, mask: int) -> int:
    """0 if the corrected residual acts as +-identity on the block, 1 for +-Z."""
    return 0 if classify_z_error(code, mask).kind == "I" else 1


def sector_key(layout: ConcatLayout, block_masks: Sequence[int]) -> SectorKey:
    """Sector label of a depth-2 error pattern given per-block Z-masks."""
    if layout.depth != 2 or len(block_masks) != layout.n_blocks:
        raise ValueError("sector keys are defined for depth-2 patterns")
    code = layout.code
    syndromes = tuple(int(code.syndrome_of[m]) for m in block_masks)
    flags = 0
    for b, m in enumerate(block_masks):
        flags |= block_flag(code, m) << b
    return SectorKey(syndromes, int(code.syndrome_of[flags]))


# ---------------------------------------------------------------------------
# Depth-1 engine: direct inner products
# ---------------------------------------------------------------------------

def _depth1_elements(layout: ConcatLayout, delta_t: float) -> tuple[np.ndarray, np.ndarray]:
    """Matrix elements <w|Z_S U|w> for S in (none, single qubits), both words."""
    n = layout.code.n_physical
    out = []
    for logical in (0, 1):
        word = from_logical(layout, LogicalAmplitudes(1.0, 0.0) if logical == 0
                            else LogicalAmplitudes(0.0, 1.0))
        evolved = evolve(word, layout, delta_t)
        row = np.empty(n + 1, dtype=np.complex128)
        row[0] = inner(word, evolved)
        for q in range(n):
            row[q + 1] = inner(apply_z_mask(word, 1 << q), evolved)
        out.append(row)
    return out[0], out[1]


def _clamp(p: float) -> float:
    if p < 0.0:
        if p < -1e-12:
            raise AssertionError(f"failure probability {p} below zero beyond tolerance")
        return 0.0
    return p


def failure_probability_brute(layout: ConcatLayout, amps: LogicalAmplitudes,
                              delta_t: float) -> FailureResult:
    """Exact failure probability by direct enumeration.

    Depth 1 evaluates the inner-product definition for either code. Depth 2
    enumerates all generated patterns and is limited to the 5-qubit code (25
    physical qubits); request the factorized engine for the 7-qubit code.
    """
    amps.validate()
    alpha_sq = abs(amps.alpha) ** 2
    if layout.depth == 1:
        m0, m1 = _depth1_elements(layout, delta_t)
        proj = alpha_sq * m0 + (1.0 - alpha_sq) * m1
        p = 1.0 - float(np.sum(np.abs(proj) ** 2))
        return FailureResult(delta_t, _clamp(p), "brute", layout.code.kind, 1, alpha_sq)
    if layout.depth == 2 and layout.code.kind == LAFLAMME5:
        s_clean, s_flip = _l5_sector_sums(delta_t)
        dsq = amps.delta ** 2
        p = 1.0 - s_clean - dsq * s_flip
        return FailureResult(delta_t, _clamp(p), "brute", layout.code.kind, 2, alpha_sq)
    raise ScaleExceeded(
        f"brute engine supports depth 1, or depth 2 of {LAFLAMME5}; "
        f"got {layout.code.kind} depth {layout.depth}"
    )


# ---------------------------------------------------------------------------
# Depth-2 brute engine (5-qubit code): full pattern enumeration
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=1)
def _l5_pattern_tables() -> tuple[np.ndarray, np.ndarray]:
    """Aggregate the 16^5 generated patterns of the once-concatenated 5-qubit code.

    Returns (coef, wclass): coef[key, k] is the signed count of patterns in the
    sector `key` (packed per-block syndromes) whose total pair-subset size is k;
    wclass flags each sector as unrecoverable (0), recovered cleanly (1), or
    recovered up to a logical Z costing a factor delta^2 (2).
    """
    tables = block_tables(LAFLAMME5)
    n_blocks = tables.code.n_physical
    n_syn = tables.code.n_syndromes
    n_sub = len(tables.subset_masks)
    pairs_total = n_blocks * (tables.code.n_physical - 1)

    idx = np.arange(n_sub ** n_blocks, dtype=np.int64)
    key = np.zeros_like(idx)
    ktot = np.zeros_like(idx)
    chi = np.ones_like(idx)
    for b in range(n_blocks):
        sub = (idx >> (4 * b)) & (n_sub - 1)
        key |= tables.subset_syndrome[sub] << (3 * b)
        ktot += tables.subset_k[sub]
        chi *= tables.subset_chi[sub]

    n_keys = n_syn ** n_blocks
    coef = np.bincount(key * (pairs_total + 1) + ktot, weights=chi.astype(np.float64),
                       minlength=n_keys * (pairs_total + 1))
    coef = coef.reshape(n_keys, pairs_total + 1)

    vperp_set = set(tables.vperp)
    wclass = np.zeros(n_keys, dtype=np.uint8)
    for k in range(n_keys):
        syndromes = [(k >> (3 * b)) & 7 for b in range(n_blocks)]
        bad = [b for b, s in enumerate(syndromes) if s in tables.bad_syndromes]
        if len(bad) > 1:
            continue
        phi_nat = 0
        for b, s in enumerate(syndromes):
            phi_nat |= int(tables.syndrome_phi[s]) << b
        shift = None
        if len(bad) == 1:
            lo = phi_nat & ~(1 << bad[0])
            hi = phi_nat | (1 << bad[0])
            shift = lo if lo in vperp_set else (hi if hi in vperp_set else None)
        else:
            for cand in tables.vperp:
                leftover = phi_nat ^ cand
                if leftover == 0 or leftover.bit_count() == 1:
                    shift = cand
                    break
        if shift is not None:
            wclass[k] = 2 if tables.vperp_kind_z[shift] else 1

    coef.setflags(write=False)
    wclass.setflags(write=False)
    return coef, wclass


def _l5_sector_sums(delta_t: float) -> tuple[float, float]:
    """Recovered probability mass (clean, logical-Z-weighted) at one angle."""
    coef, wclass = _l5_pattern_tables()
    pairs_total = coef.shape[1] - 1
    c, s = cos(delta_t), sin(delta_t)
    basis = np.array([c ** (pairs_total - k) * (1j * s) ** k
                      for k in range(pairs_total + 1)])
    amp = coef @ basis
    weight = np.abs(amp) ** 2
    weight[weight < _AMP_PRUNE ** 2] = 0.0
    return float(weight[wclass == 1].sum()), float(weight[wclass == 2].sum())


# ---------------------------------------------------------------------------
# Depth-2 factorized engine: per-block transfer tables + Gram combination
# ---------------------------------------------------------------------------

def _transfer_table(tables: BlockTables, delta_t: float) -> np.ndarray:
    """t[syndrome, flag] = signed coherent amplitude of one block's patterns."""
    code = tables.code
    pairs = code.n_physical - 1
    c, s = cos(delta_t), sin(delta_t)
    amp_by_k = np.array([c ** (pairs - k) * (1j * s) ** k for k in range(pairs + 1)])
    t = np.zeros((code.n_syndromes, 2), dtype=np.complex128)
    for i in range(len(tables.subset_masks)):
        t[tables.subset_syndrome[i], tables.subset_phi[i]] += (
            tables.subset_chi[i] * amp_by_k[tables.subset_k[i]]
        )
    return t


def failure_probability_factorized(layout: ConcatLayout, amps: LogicalAmplitudes,
                                   delta_t: float) -> FailureResult:
    """Exact depth-2 failure probability without pattern enumeration.

    Blocks enter only through Gram sums of their transfer tables, so the cost is
    independent of the 2^(pairs) pattern count; works for both codes and must
    match the brute engine wherever that runs.
    """
    if layout.depth != 2:
        raise ScaleExceeded("factorized engine is defined for depth 2")
    amps.validate()
    alpha_sq = abs(amps.alpha) ** 2
    delta = amps.delta

    tables = block_tables(layout.code.kind)
    code = tables.code
    n_blocks = code.n_physical
    t = _transfer_table(tables, delta_t)

    good = [s for s in range(code.n_syndromes) if s not in tables.bad_syndromes]
    bad = sorted(tables.bad_syndromes)
    g_good = np.zeros((2, 2), dtype=np.complex128)
    g_bad = np.zeros((2, 2), dtype=np.complex128)
    for x in range(2):
        for y in range(2):
            g_good[x, y] = sum(t[s, x] * np.conj(t[s, y]) for s in good)
            g_bad[x, y] = sum(t[s, x] * np.conj(t[s, y]) for s in bad)
    g_fail = np.empty((2, 2), dtype=np.complex128)
    for x in range(2):
        for y in range(2):
            g_fail[x, y] = g_good[1 - x, 1 - y] + g_bad[x, y] + g_bad[1 - x, 1 - y]

    def weight(shift: int) -> complex:
        scale = delta if tables.vperp_kind_z[shift] else 1.0
        return tables.vperp_sign0[shift] * scale

    recovered = 0.0
    for ka, kb in itertools.product(tables.vperp, repeat=2):
        w = weight(ka) * np.conj(weight(kb))
        if w == 0:
            continue
        fg = [g_good[(ka >> b) & 1, (kb >> b) & 1] for b in range(n_blocks)]
        prefix = np.empty(n_blocks + 1, dtype=np.complex128)
        suffix = np.empty(n_blocks + 1, dtype=np.complex128)
        prefix[0] = 1.0
        suffix[n_blocks] = 1.0
        for b in range(n_blocks):
            prefix[b + 1] = prefix[b] * fg[b]
            suffix[n_blocks - 1 - b] = suffix[n_blocks - b] * fg[n_blocks - 1 - b]
        total = prefix[n_blocks]
        for b0 in range(n_blocks):
            total += g_fail[(ka >> b0) & 1, (kb >> b0) & 1] * prefix[b0] * suffix[b0 + 1]
        recovered += float((w * total).real)

    p = 1.0 - recovered
    return FailureResult(delta_t, _clamp(p), "factorized", code.kind, 2, alpha_sq)


def brute_supported(kind: str, depth: int) -> bool:
    return depth == 1 or (depth == 2 and kind == LAFLAMME5)


__all__ = [
    "LogicalAction",
    "SectorKey",
    "FailureResult",
    "BlockTables",
    "block_tables",
    "classify_z_error",
    "images_orthogonal",
    "single_block_orthogonal_set",
    "nonzero_odd_supports",
    "block_flag",
    "sector_key",
    "failure_probability_brute",
    "failure_probability_factorized",
    "brute_supported",
]
