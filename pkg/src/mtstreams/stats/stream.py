"""Test-facing views over generator output.

A view fixes one of two derivation pathways:

- ``Mode.INT``: the raw 32-bit outputs are primary; uniforms are derived as
  value * 2^-32 and bits are read from each word most-significant-bit first.
- ``Mode.REAL``: the binary64 uniforms in [0, 1) are primary; words are
  derived back as floor(u * 2^32) and bits come from those words.

For a 32-bit generator the real map is lossless, so the two pathways produce
identical numbers; they stay separate code paths because they are distinct
derivations and are reported as distinct test runs.
"""
from __future__ import annotations

import enum
import math

import numpy as np

from mtstreams.mt19937 import MtState, MtStream

_TWO_NEG32 = 2.0**-32
_TWO_POS32 = 2.0**32


class Mode(enum.Enum):
    INT = "int"
    REAL = "real"


class StreamView:
    """Sequential reader of words, uniforms, or bits from one source.

    ``source`` is an :class:`MtState` (the normal case) or any object with a
    ``take(n) -> uint32 array`` method (used by test fixtures). The cursor
    counts 32-bit draws consumed.
    """

    def __init__(self, source: MtState | object, mode: Mode | str) -> None:
        if isinstance(source, MtState):
            source = MtStream(source)
        if not callable(getattr(source, "take", None)):
            raise TypeError("source must be an MtState or expose take(n)")
        self._stream = source
        self.mode = Mode(mode)
        self._draws = 0

    @property
    def draws(self) -> int:
        return self._draws

    def _take_raw(self, n: int) -> np.ndarray:
        out = self._stream.take(n)
        self._draws += n
        return out

    def take_uniforms(self, n: int) -> np.ndarray:
        """n uniforms in [0, 1) as float64."""
        if self.mode is Mode.INT:
            return self._take_raw(n) * _TWO_NEG32
        return self._real_outputs(n)

    def take_words(self, n: int) -> np.ndarray:
        """n 32-bit words as uint32."""
        if self.mode is Mode.INT:
            return self._take_raw(n)
        u = self._real_outputs(n)
        return np.floor(u * _TWO_POS32).astype(np.uint32)

    def take_bits(self, n_bits: int) -> np.ndarray:
        """n_bits bits (uint8 values 0/1), each word read MSB first.

        Consumes ceil(n_bits / 32) draws.
        """
        n_words = -(-n_bits // 32)
        words = self.take_words(n_words)
        bits = np.unpackbits(words.astype(">u4").view(np.uint8))
        return bits[:n_bits]

    def take_word_bits(self, n: int, bit_offset: int) -> np.ndarray:
        """One selected bit from each of n words; offset 0 is the MSB."""
        if not 0 <= bit_offset <= 31:
            raise ValueError(f"bit_offset must be in [0, 31], got {bit_offset}")
        words = self.take_words(n)
        return ((words >> np.uint32(31 - bit_offset)) & np.uint32(1)).astype(np.uint8)

    def _real_outputs(self, n: int) -> np.ndarray:
        # The generator's real-output function: each draw scaled into [0, 1).
        return self._take_raw(n) * _TWO_NEG32


def analytic_draws(family: str, params: dict) -> int:
    """Draws a family consumes for given parameters (accounting contract)."""
    if family == "LinearComp":
        return int(params["n_bits"])
    if family == "CollisionOver":
        return int(params["n"]) + int(params["t"]) - 1
    if family == "ClosePairs":
        return int(params["n"]) * int(params["t"])
    if family == "RandomWalk1":
        return math.ceil(int(params["walks"]) * int(params["steps"]) / 32)
    if family == "SerialUniformity":
        return int(params["n"])
    raise ValueError(f"unknown family: {family}")
