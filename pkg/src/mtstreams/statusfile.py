"""Bit-exact on-disk form of a generator status, plus directory verification.

Format (ASCII, LF line endings, no trailing whitespace):

    line 1:        MT19937-STATUS v1
    lines 2-625:   mt[0] .. mt[623], decimal, no leading zeros
    line 626:      mti

Canonical form is enforced on parse so that serialize(parse(f)) == f holds
byte for byte; that is what makes `diff -r`-style verification meaningful.
"""
from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from mtstreams.mt19937 import N, WORD_MASK, MtState, ZeroStateError

HEADER = "MT19937-STATUS v1"
STATUS_SUFFIX = ".mts"

_DECIMAL = re.compile(r"^(0|[1-9][0-9]*)$")


class StatusFormatError(ValueError):
    """A status file that violates the canonical format."""


def serialize_status(state: MtState) -> str:
    lines = [HEADER]
    lines.extend(str(int(w)) for w in state.mt)
    lines.append(str(state.mti))
    return "\n".join(lines) + "\n"


def parse_status(text: str) -> MtState:
    if not text.endswith("\n") or "\r" in text:
        raise StatusFormatError("file must use LF endings and end with a newline")
    lines = text[:-1].split("\n")
    if len(lines) != N + 2:
        raise StatusFormatError(f"expected {N + 2} lines, got {len(lines)}")
    if lines[0] != HEADER:
        raise StatusFormatError(f"bad header {lines[0]!r}")
    values = []
    for lineno, raw in enumerate(lines[1:], start=2):
        if not _DECIMAL.match(raw):
            raise StatusFormatError(f"line {lineno}: not a canonical decimal: {raw!r}")
        values.append(int(raw))
    words, mti = values[:N], values[N]
    bad = [w for w in words if w > WORD_MASK]
    if bad:
        raise StatusFormatError(f"word value {bad[0]} exceeds 32 bits")
    if mti > N:
        raise StatusFormatError(f"mti must be in [0, {N}], got {mti}")
    try:
        return MtState(np.array(words, dtype=np.uint32), mti)
    except ZeroStateError as exc:
        raise StatusFormatError(str(exc)) from exc


def save_status(path: Path | str, state: MtState) -> None:
    Path(path).write_bytes(serialize_status(state).encode("ascii"))


def load_status(path: Path | str) -> MtState:
    path = Path(path)
    try:
        text = path.read_bytes().decode("ascii")
    except UnicodeDecodeError as exc:
        raise StatusFormatError(f"{path}: not ASCII: {exc}") from exc
    try:
        return parse_status(text)
    except StatusFormatError as exc:
        raise StatusFormatError(f"{path}: {exc}") from exc


def file_sha256(path: Path | str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


@dataclass
class VerifyReport:
    """Byte-level comparison of two status-set directories."""

    identical: list[str] = field(default_factory=list)
    differing: list[str] = field(default_factory=list)
    only_a: list[str] = field(default_factory=list)
    only_b: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.differing or self.only_a or self.only_b)


def verify_sets(dir_a: Path | str, dir_b: Path | str) -> VerifyReport:
    """Recursive byte comparison of all regular files under two directories."""
    dir_a, dir_b = Path(dir_a), Path(dir_b)
    for d in (dir_a, dir_b):
        if not d.is_dir():
            raise FileNotFoundError(f"not a directory: {d}")
    files_a = {str(p.relative_to(dir_a)) for p in dir_a.rglob("*") if p.is_file()}
    files_b = {str(p.relative_to(dir_b)) for p in dir_b.rglob("*") if p.is_file()}
    report = VerifyReport(
        only_a=sorted(files_a - files_b),
        only_b=sorted(files_b - files_a),
    )
    for rel in sorted(files_a & files_b):
        if (dir_a / rel).read_bytes() == (dir_b / rel).read_bytes():
            report.identical.append(rel)
        else:
            report.differing.append(rel)
    return report
