"""Codewords, Z-error syndromes, and concatenated layouts for the two distance-3 codes.

Conventions used throughout the package:

* Basis strings are integers. Qubit m (1-based) sits at bit position m-1, so the
  leftmost symbol of a written ket like ``|0001111>`` is qubit 1 and maps to the
  least significant bit.
* Single-qubit Z acts as diag(-1, +1): it flips the sign of the |0> component.
  Only relative signs between error patterns are observable and every probability
  computed here is independent of this choice; the convention is fixed so that the
  pair-error identities encoded in the tables carry definite signs.
* Both codes have logical-one supports that are the bitwise complements of their
  logical-zero supports, and both supports span a 3-dimensional GF(2) subspace.
  The X-type parity checks used for Z-error syndromes are a row-reduced basis of
  that subspace; construction verifies that the induced zero-syndrome masks act
  as +-1 scalars on both codewords before the tables are accepted.
"""

from __future__ import annotations

import functools
import warnings
from dataclasses import dataclass, field
from typing import Literal, NamedTuple

import numpy as np

from .bits import parity, parity_array
from .errors import DepthUnsupported

CodeKind = Literal["steane7", "laflamme5"]

STEANE7: CodeKind = "steane7"
LAFLAMME5: CodeKind = "laflamme5"

# Written kets, leftmost symbol = qubit 1. Signs are the published ones.
_STEANE7_ZERO = [
    ("+", "0000000"), ("+", "0001111"), ("+", "0110011"), ("+", "0111100"),
    ("+", "1010101"), ("+", "1011010"), ("+", "1100110"), ("+", "1101001"),
]
_STEANE7_ONE = [
    ("+", "1111111"), ("+", "1110000"), ("+", "1001100"), ("+", "1000011"),
    ("+", "0101010"), ("+", "0100101"), ("+", "0011001"), ("+", "0010110"),
]
_LAFLAMME5_ZERO = [
    ("-", "00000"), ("+", "01111"), ("-", "10011"), ("+", "11100"),
    ("+", "10101"), ("+", "11010"), ("+", "00110"), ("+", "01001"),
]
_LAFLAMME5_ONE = [
    ("-", "11111"), ("+", "10000"), ("+", "01100"), ("-", "00011"),
    ("-", "01010"), ("-", "00101"), ("+", "11001"), ("+", "10110"),
]


class SignedKet(NamedTuple):
    bits: int
    sign: int


def parse_ket(symbols: str) -> int:
    """Convert a written ket string (leftmost symbol = qubit 1) to a bit mask."""
    bits = 0
    for m, ch in enumerate(symbols):
        if ch == "1":
            bits |= 1 << m
        elif ch != "0":
            raise ValueError(f"bad ket symbol {ch!r}")
    return bits


def _parse_word(entries: list[tuple[str, str]]) -> tuple[SignedKet, ...]:
    return tuple(SignedKet(parse_ket(s), +1 if sg == "+" else -1) for sg, s in entries)


def _gf2_rref(vectors: list[int]) -> list[int]:
    """Reduced row-echelon basis over GF(2), pivots taken from the high bit down."""
    basis: list[int] = []
    for v in vectors:
        cur = v
        for b in basis:
            if cur ^ b < cur:
                cur ^= b
        if cur:
            basis.append(cur)
            basis.sort(reverse=True)
    # back-substitute so every pivot column appears in exactly one row
    for i, b in enumerate(basis):
        lead = 1 << (b.bit_length() - 1)
        for j in range(len(basis)):
            if j != i and basis[j] & lead:
                basis[j] ^= b
    return sorted(basis, reverse=True)


def z_mask_sign(bits: int, mask: int, n_qubits: int) -> int:
    """Sign picked up by basis string `bits` under the Z-string `mask`.

    With Z = diag(-1, +1) the flip count is the number of zeros of the string
    inside the mask.
    """
    zeros = (mask & ~bits) & ((1 << n_qubits) - 1)
    return -1 if parity(zeros) else +1


@dataclass(frozen=True, eq=False)
class Code:
    """A distance-3 code plus every Z-error table the engines need.

    ``syndrome_of[mask]`` gives the syndrome of a Z-error pattern. Syndromes whose
    class contains the identity-or-single-qubit correction appear in
    ``correction``; the remaining classes (present only for the 5-qubit code) map
    to ``None`` there and are served by ``class_rep``, the minimum-weight
    representative used to express degeneracy relations. ``action_zero/one`` hold
    the scalar each zero-syndrome mask applies to the two codewords.
    """

    kind: CodeKind
    n_physical: int
    zero_word: tuple[SignedKet, ...]
    one_word: tuple[SignedKet, ...]
    x_checks: tuple[int, ...]
    syndrome_of: np.ndarray = field(repr=False)
    correction: dict[int, int | None] = field(repr=False)
    class_rep: dict[int, int] = field(repr=False)
    action_zero: dict[int, int] = field(repr=False)
    action_one: dict[int, int] = field(repr=False)

    @property
    def n_syndromes(self) -> int:
        return 1 << len(self.x_checks)

    @property
    def zero_support(self) -> frozenset[int]:
        return frozenset(k.bits for k in self.zero_word)

    @property
    def one_support(self) -> frozenset[int]:
        return frozenset(k.bits for k in self.one_word)


def _verify_and_build(kind: CodeKind, zero: tuple[SignedKet, ...],
                      one: tuple[SignedKet, ...], n: int) -> Code:
    supp0 = [k.bits for k in zero]
    supp1 = [k.bits for k in one]
    if len(set(supp0)) != 8 or len(set(supp1)) != 8:
        raise AssertionError("each codeword must have 8 distinct kets")
    if set(supp0) & set(supp1):
        raise AssertionError("codeword supports must be disjoint")

    full = (1 << n) - 1
    if {full ^ s for s in supp0} != set(supp1):
        raise AssertionError("one-word support must be the complement of the zero-word support")

    # the zero support must be a GF(2) subspace (it contains the all-zeros string)
    supp0_set = set(supp0)
    for a in supp0:
        for b in supp0:
            if a ^ b not in supp0_set:
                raise AssertionError("zero-word support is not closed under XOR")

    checks = _gf2_rref(supp0)
    if len(checks) != 3:
        raise AssertionError(f"expected 3 parity checks, got {len(checks)}")

    masks = np.arange(1 << n, dtype=np.uint64)
    syndrome = np.zeros(1 << n, dtype=np.uint8)
    for i, row in enumerate(checks):
        syndrome |= (parity_array(masks & np.uint64(row)) << i).astype(np.uint8)

    # zero-syndrome masks must act as scalars on both codewords, and no other
    # mask may: the syndrome kernel has to be exactly the codeword-preserving set
    action_zero: dict[int, int] = {}
    action_one: dict[int, int] = {}
    for d in range(1 << n):
        s0 = {z_mask_sign(b, d, n) for b in supp0}
        s1 = {z_mask_sign(b, d, n) for b in supp1}
        scalar = len(s0) == 1 and len(s1) == 1
        if syndrome[d] == 0:
            if not scalar:
                raise AssertionError(f"zero-syndrome mask {d:#x} does not act as a scalar")
            action_zero[d] = s0.pop()
            action_one[d] = s1.pop()
        elif scalar:
            raise AssertionError(f"mask {d:#x} preserves the codewords but has a syndrome")

    # identity-or-single-qubit corrections; duplicate single syndromes would be a
    # code defect, so detect them even though neither code triggers it
    correction: dict[int, int | None] = {s: None for s in range(1 << len(checks))}
    correction[0] = 0
    for q in range(n):
        s = int(syndrome[1 << q])
        prev = correction.get(s)
        if prev not in (None, 0):
            warnings.warn(
                f"{kind}: qubits {prev.bit_length()} and {q + 1} share syndrome {s}; "
                "keeping the lower index",
                RuntimeWarning,
            )
            continue
        if s != 0:
            correction[s] = 1 << q

    class_rep: dict[int, int] = {}
    order = sorted(range(1 << n), key=lambda m: (m.bit_count(), m))
    for m in order:
        s = int(syndrome[m])
        if s not in class_rep:
            class_rep[s] = m

    syndrome.setflags(write=False)
    return Code(
        kind=kind,
        n_physical=n,
        zero_word=zero,
        one_word=one,
        x_checks=tuple(checks),
        syndrome_of=syndrome,
        correction=correction,
        class_rep=class_rep,
        action_zero=action_zero,
        action_one=action_one,
    )


@functools.lru_cache(maxsize=None)
def build_code(kind: str) -> Code:
    """Construct a code with all Z-error tables, verified against its codewords."""
    kind = kind.lower()
    if kind == STEANE7:
        return _verify_and_build(STEANE7, _parse_word(_STEANE7_ZERO), _parse_word(_STEANE7_ONE), 7)
    if kind == LAFLAMME5:
        return _verify_and_build(LAFLAMME5, _parse_word(_LAFLAMME5_ZERO), _parse_word(_LAFLAMME5_ONE), 5)
    raise ValueError(f"unknown code kind {kind!r}")


def z_syndrome(code: Code, mask: int) -> int:
    """Syndrome of the Z-error pattern `mask` under the code's X-type checks."""
    return int(code.syndrome_of[mask])


# ---------------------------------------------------------------------------
# Concatenation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConcatLayout:
    """A code concatenated `depth` times; interactions stay inside lowest-level blocks."""

    code: Code
    depth: int

    def __post_init__(self) -> None:
        if self.depth < 1:
            raise ValueError("depth must be >= 1")

    @property
    def n_total(self) -> int:
        return self.code.n_physical ** self.depth

    @property
    def n_blocks(self) -> int:
        return self.code.n_physical ** (self.depth - 1)

    @property
    def pairs_per_block(self) -> int:
        return self.code.n_physical - 1

    @property
    def total_pairs(self) -> int:
        return self.n_blocks * self.pairs_per_block

    @property
    def pair_field_mask(self) -> int:
        """Bit m set iff (m, m+1) is an interacting nearest-neighbor pair."""
        n = self.code.n_physical
        block = (1 << (n - 1)) - 1
        mask = 0
        for b in range(self.n_blocks):
            mask |= block << (b * n)
        return mask


def make_layout(kind: str, depth: int) -> ConcatLayout:
    return ConcatLayout(build_code(kind), depth)


@dataclass(frozen=True)
class KetArray:
    """A signed, equal-magnitude superposition support stored as parallel arrays."""

    bits: np.ndarray
    signs: np.ndarray

    def __len__(self) -> int:
        return len(self.bits)

    def __iter__(self):
        for b, s in zip(self.bits, self.signs):
            yield SignedKet(int(b), int(s))


# materialized expansions are capped; depth 2 of the 7-qubit code is the largest
_SUPPORT_BUDGET = 1 << 25


def expand_concatenated(layout: ConcatLayout, logical: int,
                        budget: int = _SUPPORT_BUDGET) -> KetArray:
    """Full signed support of the depth-`layout.depth` logical codeword.

    Each symbol of the outer word is replaced by the corresponding inner word,
    signs multiplying, so the count is 8^(expansion steps). Depth >= 3 is refused.
    """
    if logical not in (0, 1):
        raise ValueError("logical must be 0 or 1")
    if layout.depth > 2:
        raise DepthUnsupported(f"depth {layout.depth} cannot be materialized")
    code = layout.code
    n = code.n_physical

    count = 8 ** sum(n ** lvl for lvl in range(layout.depth))
    if count > budget:
        raise DepthUnsupported(f"support of {count} kets exceeds budget {budget}")

    word = code.zero_word if logical == 0 else code.one_word
    if layout.depth == 1:
        bits = np.fromiter((k.bits for k in word), dtype=np.uint64, count=8)
        signs = np.fromiter((k.sign for k in word), dtype=np.int8, count=8)
        return KetArray(bits, signs)

    inner = {
        0: (np.fromiter((k.bits for k in code.zero_word), dtype=np.uint64, count=8),
            np.fromiter((k.sign for k in code.zero_word), dtype=np.int8, count=8)),
        1: (np.fromiter((k.bits for k in code.one_word), dtype=np.uint64, count=8),
            np.fromiter((k.sign for k in code.one_word), dtype=np.int8, count=8)),
    }
    chunks_bits = []
    chunks_signs = []
    for outer in word:
        bits = np.zeros(1, dtype=np.uint64)
        signs = np.full(1, outer.sign, dtype=np.int64)
        for b in range(n):
            symbol = (outer.bits >> b) & 1
            wbits, wsigns = inner[symbol]
            shifted = wbits << np.uint64(b * n)
            bits = (bits[:, None] | shifted[None, :]).ravel()
            signs = (signs[:, None] * wsigns[None, :]).ravel()
        chunks_bits.append(bits)
        chunks_signs.append(signs.astype(np.int8))
    return KetArray(np.concatenate(chunks_bits), np.concatenate(chunks_signs))
