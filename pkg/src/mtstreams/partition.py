"""Status-set generation via three partitioning techniques, plus overlap risk.

- Sequence splitting: one base stream, statuses saved every `spacing` draws.
- Random spacing: a master generator's outputs fill each 624-word status.
- Indexed sequence: status i is the full seeding expansion of seed start+i.

A StatusSet is a pure function of its provenance; writing a set produces
stable filenames and a manifest, so regeneration is byte-identical.
"""
from __future__ import annotations

import enum
import hashlib
import math
from dataclasses import dataclass
from pathlib import Path

from mtstreams.mt19937 import N, WORD_MASK, MtState, MtStream, advance, init_genrand
from mtstreams.statusfile import STATUS_SUFFIX, file_sha256, save_status

MANIFEST_NAME = "manifest.txt"


class Technique(enum.Enum):
    """The three partitioning techniques; values are the filename slugs."""

    SEQUENCE_SPLITTING = "split"
    RANDOM_SPACING = "random"
    INDEXED_SEQUENCE = "indexed"

    @property
    def slug(self) -> str:
        return self.value


@dataclass
class StatusSet:
    technique: Technique
    statuses: list[tuple[int, MtState]]
    provenance: dict

    def __post_init__(self) -> None:
        for expect, (index, _) in enumerate(self.statuses):
            if index != expect:
                raise ValueError(f"indices must be 0..count-1 without gaps, got {index}")


def _check_seed(seed: int, name: str) -> None:
    if not 0 <= seed <= WORD_MASK:
        raise ValueError(f"{name} must be an unsigned 32-bit integer, got {seed}")


def generate_sequence_splitting(
    base_seed: int, spacing: int, count: int, strict: bool = True
) -> StatusSet:
    """Status i = the base stream advanced by i * spacing draws.

    Status 0 is the freshly seeded state. strict rejects spacing = 0 (all
    statuses would coincide).
    """
    _check_seed(base_seed, "base_seed")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if spacing < 0 or (strict and spacing == 0):
        raise ValueError(f"spacing must be > 0, got {spacing}")
    state = init_genrand(base_seed)
    statuses = [(0, state)]
    for i in range(1, count):
        state = advance(state, spacing)
        statuses.append((i, state))
    provenance = {"seed": base_seed, "spacing": spacing, "count": count}
    return StatusSet(Technique.SEQUENCE_SPLITTING, statuses, provenance)


def generate_random_spacing(master_seed: int, count: int) -> StatusSet:
    """Each status's 624 words are consecutive outputs of a master stream.

    Statuses set mti = 624 so their first use performs a full twist. An
    all-zero candidate (probability ~2^-19968) is discarded and regenerated,
    and the event is recorded in provenance.
    """
    _check_seed(master_seed, "master_seed")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    master = MtStream(init_genrand(master_seed))
    statuses = []
    regenerated: list[int] = []
    for i in range(count):
        words = master.take(N)
        while not words.any():
            regenerated.append(i)
            words = master.take(N)
        statuses.append((i, MtState(words, N)))
    provenance = {"seed": master_seed, "count": count}
    if regenerated:
        provenance["regenerated"] = regenerated
    return StatusSet(Technique.RANDOM_SPACING, statuses, provenance)


def generate_indexed(start: int, count: int) -> StatusSet:
    """Status i = init_genrand(start + i)."""
    _check_seed(start, "start")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if start + count - 1 > WORD_MASK:
        raise ValueError(f"seed range [{start}, {start + count - 1}] exceeds 32 bits")
    statuses = [(i, init_genrand(start + i)) for i in range(count)]
    provenance = {"seed": start, "count": count}
    return StatusSet(Technique.INDEXED_SEQUENCE, statuses, provenance)


def status_filename(technique: Technique, index: int) -> str:
    return f"{technique.slug}_{index:05d}{STATUS_SUFFIX}"


def write_status_set(sset: StatusSet, out_dir: Path | str) -> str:
    """Write status files plus a manifest; returns the set fingerprint.

    The fingerprint is the SHA-256 of the manifest bytes, which in turn
    lists the SHA-256 of every status file, so it pins the whole set.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    names = []
    for index, state in sset.statuses:
        name = status_filename(sset.technique, index)
        save_status(out_dir / name, state)
        names.append((name, index))
    lines = ["# mtstreams manifest v1", f"# technique: {sset.technique.slug}"]
    for key in sorted(sset.provenance):
        value = sset.provenance[key]
        if isinstance(value, list):
            value = ",".join(str(v) for v in value)
        lines.append(f"# {key}: {value}")
    for name, index in names:
        lines.append(f"{name} {file_sha256(out_dir / name)} {sset.technique.slug} {index}")
    manifest = "\n".join(lines) + "\n"
    (out_dir / MANIFEST_NAME).write_bytes(manifest.encode("ascii"))
    return hashlib.sha256(manifest.encode("ascii")).hexdigest()


def overlap_probability(period_log2: int, streams: int, length: int) -> float:
    """Birthday-style overlap probability for k streams of length L.

    P(overlap) ~ 1 - exp(-k(k-1) * L / 2^period_log2), valid in the sparse
    regime k * L << 2^period_log2; clamped to [0, 1]. Computed on the log
    scale so huge periods do not underflow intermediate terms.
    """
    if period_log2 < 0 or streams < 1 or length < 0:
        raise ValueError("arguments must be nonnegative, with streams >= 1")
    if streams == 1 or length == 0:
        return 0.0
    pairs_draws = streams * (streams - 1) * length
    log_x = math.log(pairs_draws) - period_log2 * math.log(2.0)
    if log_x > 4.0:
        return 1.0
    x = math.exp(log_x)
    return min(1.0, max(0.0, -math.expm1(-x)))
