"""Parallel MT19937 stream statuses: generation, testing, and registries.

The package generates sets of 32-bit Mersenne Twister statuses with three
partitioning techniques (sequence splitting, random spacing, indexed
sequence), runs a desk-scale statistical battery over them with two-sided
p-value verdicts, and produces bitwise-repeatable campaign reports plus a
registry of statuses whose only failures are the expected LinearComp pair.
"""
from mtstreams._version import VERSION as __version__
from mtstreams.mt19937 import (
    MtState,
    MtStream,
    ZeroStateError,
    advance,
    init_genrand,
    next_real,
    next_u32,
    temper,
    twist,
    untemper,
)
from mtstreams.partition import (
    StatusSet,
    Technique,
    generate_indexed,
    generate_random_spacing,
    generate_sequence_splitting,
    overlap_probability,
    write_status_set,
)
from mtstreams.statusfile import (
    StatusFormatError,
    load_status,
    parse_status,
    save_status,
    serialize_status,
    verify_sets,
)

__all__ = [
    "MtState",
    "MtStream",
    "StatusFormatError",
    "StatusSet",
    "Technique",
    "ZeroStateError",
    "__version__",
    "advance",
    "generate_indexed",
    "generate_random_spacing",
    "generate_sequence_splitting",
    "init_genrand",
    "load_status",
    "next_real",
    "next_u32",
    "overlap_probability",
    "parse_status",
    "save_status",
    "serialize_status",
    "temper",
    "twist",
    "untemper",
    "verify_sets",
    "write_status_set",
]
