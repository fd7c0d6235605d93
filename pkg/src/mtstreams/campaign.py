"""Deterministic battery campaigns over sets of statuses.

A campaign runs every battery test on every (status, mode) unit, each test
on a fresh view of the status. Work units are pure computations, so the
worker count changes wall time only: results are merged by sorting on
(technique, index, mode, test id) and serialized with fixed formatting,
making output bytes independent of scheduling.
"""
from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from multiprocessing import get_context
from pathlib import Path

from mtstreams._version import VERSION
from mtstreams.mt19937 import MtState
from mtstreams.stats import walks
from mtstreams.stats.battery import Battery, battery_sha256, dump_battery
from mtstreams.stats.families import TestResult, run_test
from mtstreams.stats.stream import StreamView
from mtstreams.statusfile import STATUS_SUFFIX, StatusFormatError, file_sha256, load_status

MODES = ("int", "real")
DEFAULT_EXPECTED_FAIL_IDS = frozenset({"linearcomp.r0", "linearcomp.r29"})

_STATUS_NAME = re.compile(r"^(split|random|indexed)_(\d{5})" + re.escape(STATUS_SUFFIX) + "$")


@dataclass(frozen=True)
class StatusEntry:
    """One status to test, with its identity and file checksum."""

    technique: str
    index: int
    state: MtState
    sha256: str


@dataclass
class CampaignConfig:
    battery: Battery
    modes: tuple[str, ...] = MODES
    threshold: float | None = None
    jobs: int = 1

    def __post_init__(self) -> None:
        if not self.modes or any(m not in MODES for m in self.modes):
            raise ValueError(f"modes must be a nonempty subset of {MODES}, got {self.modes}")
        if len(set(self.modes)) != len(self.modes):
            raise ValueError("duplicate modes")
        if self.jobs < 1:
            raise ValueError(f"jobs must be >= 1, got {self.jobs}")

    @property
    def eps(self) -> float:
        return self.battery.threshold if self.threshold is None else self.threshold


@dataclass
class StatusReport:
    """Battery outcome for one (status, mode) unit, in battery order."""

    technique: str
    index: int
    mode: str
    results: list[TestResult]

    @property
    def failed_ids(self) -> list[str]:
        return [r.test_id for r in self.results if r.failed]

    @property
    def n_failed(self) -> int:
        return len(self.failed_ids)


@dataclass
class CampaignReport:
    meta: dict
    reports: list[StatusReport] = field(default_factory=list)


@dataclass
class QualityRegistry:
    """Statuses classified Good in every requested mode."""

    fingerprint: str
    expected_fail_ids: tuple[str, ...]
    modes: tuple[str, ...]
    entries: list[tuple[str, int, str]]


def campaign_fingerprint(battery: Battery, eps: float, modes: tuple[str, ...]) -> str:
    """Self-describing campaign identity: battery, threshold, modes, version."""
    blob = "\n".join([dump_battery(battery), "%.17g" % eps, ",".join(modes), VERSION])
    return hashlib.sha256(blob.encode("ascii")).hexdigest()


def parse_status_filename(name: str) -> tuple[str, int]:
    m = _STATUS_NAME.match(name)
    if not m:
        raise StatusFormatError(
            f"status filename {name!r} must match <technique>_<index>{STATUS_SUFFIX} "
            "with technique in {split, random, indexed} and a 5-digit index"
        )
    return m.group(1), int(m.group(2))


def load_status_entries(paths: list[Path | str]) -> list[StatusEntry]:
    """Load statuses from directories (all *.mts inside) and single files."""
    files: list[Path] = []
    for p in paths:
        p = Path(p)
        if p.is_dir():
            files.extend(sorted(p.glob(f"*{STATUS_SUFFIX}")))
        elif p.is_file():
            files.append(p)
        else:
            raise FileNotFoundError(f"no such file or directory: {p}")
    entries = []
    seen: set[tuple[str, int]] = set()
    for f in files:
        technique, index = parse_status_filename(f.name)
        if (technique, index) in seen:
            raise StatusFormatError(f"duplicate status identity {technique}/{index} at {f}")
        seen.add((technique, index))
        entries.append(StatusEntry(technique, index, load_status(f), file_sha256(f)))
    entries.sort(key=lambda e: (e.technique, e.index))
    return entries


def run_battery_on_status(state: MtState, mode: str, battery: Battery, eps: float) -> list[TestResult]:
    """Every battery test in order, each on a fresh view of the status."""
    results = []
    for definition in battery.tests:
        view = StreamView(state, mode)
        results.append(run_test(definition, view, eps))
    return results


_WORK: dict = {}


def _run_unit(unit: tuple[int, str]) -> tuple[int, str, list[TestResult]]:
    entry_i, mode = unit
    entry: StatusEntry = _WORK["entries"][entry_i]
    results = run_battery_on_status(entry.state, mode, _WORK["battery"], _WORK["eps"])
    return entry_i, mode, results


def _warm_null_caches(battery: Battery) -> None:
    # Compute walk null distributions once in the parent so forked workers
    # inherit them instead of redoing the O(l^3) DPs.
    for t in battery.tests:
        if t.family == "RandomWalk1":
            steps = int(t.params["steps"])
            walks.h_null(steps)
            walks.m_null(steps)
            walks.r_null(steps)


def run_campaign(entries: list[StatusEntry], config: CampaignConfig) -> CampaignReport:
    eps = config.eps
    units = [(i, mode) for i in range(len(entries)) for mode in config.modes]
    _warm_null_caches(config.battery)
    global _WORK
    _WORK = {"entries": entries, "battery": config.battery, "eps": eps}
    if config.jobs > 1 and len(units) > 1:
        ctx = get_context("fork")
        with ctx.Pool(config.jobs) as pool:
            outcomes = pool.map(_run_unit, units)
    else:
        outcomes = [_run_unit(u) for u in units]
    reports = [
        StatusReport(entries[i].technique, entries[i].index, mode, results)
        for i, mode, results in outcomes
    ]
    reports.sort(key=lambda r: (r.technique, r.index, r.mode))
    meta = {
        "type": "meta",
        "version": VERSION,
        "fingerprint": campaign_fingerprint(config.battery, eps, tuple(config.modes)),
        "battery": config.battery.name,
        "battery_sha256": battery_sha256(config.battery),
        "threshold": eps,
        "modes": list(config.modes),
        "test_ids": list(config.battery.test_ids),
        "statuses": [
            {"technique": e.technique, "index": e.index, "sha256": e.sha256} for e in entries
        ],
    }
    return CampaignReport(meta=meta, reports=reports)


def classify_status(report: StatusReport, expected_fail_ids=DEFAULT_EXPECTED_FAIL_IDS) -> str:
    """Good iff the failed ids are a subset of the expected-failure ids."""
    return "Good" if set(report.failed_ids) <= set(expected_fail_ids) else "Suspect"


def check_expected_ids(creport: CampaignReport, expected_fail_ids) -> None:
    unknown = set(expected_fail_ids) - set(creport.meta["test_ids"])
    if unknown:
        raise ValueError(f"expected-fail ids not in battery: {sorted(unknown)}")


def technique_summary(
    creport: CampaignReport, expected_fail_ids=DEFAULT_EXPECTED_FAIL_IDS
) -> dict[tuple[str, str], tuple[int, int, float]]:
    """Per (technique, mode): (suspect count, status count, suspect fraction)."""
    check_expected_ids(creport, expected_fail_ids)
    totals: dict[tuple[str, str], int] = {}
    suspects: dict[tuple[str, str], int] = {}
    for r in creport.reports:
        key = (r.technique, r.mode)
        totals[key] = totals.get(key, 0) + 1
        if classify_status(r, expected_fail_ids) == "Suspect":
            suspects[key] = suspects.get(key, 0) + 1
    return {
        key: (suspects.get(key, 0), total, suspects.get(key, 0) / total)
        for key, total in sorted(totals.items())
    }


def failure_histogram(
    creport: CampaignReport,
    expected_fail_ids=DEFAULT_EXPECTED_FAIL_IDS,
    technique: str | None = None,
    mode: str | None = None,
) -> dict[int, int]:
    """Histogram over Suspect units of the number of failed tests each."""
    check_expected_ids(creport, expected_fail_ids)
    hist: dict[int, int] = {}
    for r in creport.reports:
        if technique is not None and r.technique != technique:
            continue
        if mode is not None and r.mode != mode:
            continue
        if classify_status(r, expected_fail_ids) == "Suspect":
            hist[r.n_failed] = hist.get(r.n_failed, 0) + 1
    return dict(sorted(hist.items()))


def per_test_frequency(creport: CampaignReport) -> dict[str, dict[tuple[str, str], float]]:
    """Per test id and (technique, mode): fraction of statuses failing it."""
    totals: dict[tuple[str, str], int] = {}
    fails: dict[str, dict[tuple[str, str], int]] = {t: {} for t in creport.meta["test_ids"]}
    for r in creport.reports:
        key = (r.technique, r.mode)
        totals[key] = totals.get(key, 0) + 1
        for res in r.results:
            fails.setdefault(res.test_id, {})
            if res.failed:
                fails[res.test_id][key] = fails[res.test_id].get(key, 0) + 1
    return {
        test_id: {key: fails[test_id].get(key, 0) / total for key, total in sorted(totals.items())}
        for test_id in sorted(fails)
    }


def build_registry(
    creport: CampaignReport, expected_fail_ids=DEFAULT_EXPECTED_FAIL_IDS
) -> QualityRegistry:
    """Registry of statuses classified Good in every requested mode."""
    check_expected_ids(creport, expected_fail_ids)
    modes = tuple(creport.meta["modes"])
    checksums = {
        (s["technique"], s["index"]): s["sha256"] for s in creport.meta["statuses"]
    }
    verdicts: dict[tuple[str, int], dict[str, str]] = {}
    for r in creport.reports:
        verdicts.setdefault((r.technique, r.index), {})[r.mode] = classify_status(
            r, expected_fail_ids
        )
    entries = []
    for (technique, index), by_mode in sorted(verdicts.items()):
        if all(by_mode.get(m) == "Good" for m in modes):
            entries.append((technique, index, checksums[(technique, index)]))
    return QualityRegistry(
        fingerprint=creport.meta["fingerprint"],
        expected_fail_ids=tuple(sorted(expected_fail_ids)),
        modes=modes,
        entries=entries,
    )


def _fmt17(x: float) -> str:
    return "%.17g" % x


_KEY_SAFE = re.compile(r"^[A-Za-z0-9._-]+$")


def _result_line(r: StatusReport, t: TestResult) -> str:
    for key in t.p_values:
        if not _KEY_SAFE.match(key):
            raise ValueError(f"sub-statistic name needs escaping: {key!r}")
    pv = ",".join(f'"{k}":{_fmt17(v)}' for k, v in t.p_values.items())
    return (
        f'{{"type":"result","technique":"{r.technique}","index":{r.index},'
        f'"mode":"{r.mode}","test_id":"{t.test_id}","p_values":{{{pv}}},'
        f'"verdict":"{t.verdict}","draws":{t.draws}}}'
    )


def write_results_jsonl(creport: CampaignReport, path: Path | str) -> None:
    """One meta line, then one line per (status, mode, test), sorted.

    P-values are printed with 17 significant digits, which round-trips
    binary64 exactly; the whole file is a pure function of the inputs.
    """
    lines = [json.dumps(creport.meta, sort_keys=True, separators=(",", ":"))]
    for r in sorted(creport.reports, key=lambda r: (r.technique, r.index, r.mode)):
        for t in sorted(r.results, key=lambda t: t.test_id):
            lines.append(_result_line(r, t))
    Path(path).write_bytes(("\n".join(lines) + "\n").encode("ascii"))


def read_results_jsonl(path: Path | str) -> CampaignReport:
    """Rebuild a CampaignReport (test results in file order, no details)."""
    path = Path(path)
    lines = path.read_text(encoding="ascii").splitlines()
    if not lines:
        raise ValueError(f"{path}: empty results file")
    meta = json.loads(lines[0])
    if meta.get("type") != "meta":
        raise ValueError(f"{path}: first line is not the meta record")
    grouped: dict[tuple[str, int, str], list[TestResult]] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        rec = json.loads(line)
        if rec.get("type") != "result":
            raise ValueError(f"{path}:{lineno}: unknown record type")
        key = (rec["technique"], rec["index"], rec["mode"])
        grouped.setdefault(key, []).append(
            TestResult(
                test_id=rec["test_id"],
                family="",
                p_values=dict(rec["p_values"]),
                verdict=rec["verdict"],
                draws=rec["draws"],
            )
        )
    reports = [
        StatusReport(technique, index, mode, results)
        for (technique, index, mode), results in sorted(grouped.items())
    ]
    return CampaignReport(meta=meta, reports=reports)


def write_registry(registry: QualityRegistry, text_path: Path | str, json_path: Path | str) -> None:
    lines = [
        "# mtstreams registry v1",
        f"# fingerprint: {registry.fingerprint}",
        f"# expected-fail: {','.join(registry.expected_fail_ids)}",
        f"# modes: {','.join(registry.modes)}",
    ]
    lines.extend(f"{t} {i} {sha}" for t, i, sha in registry.entries)
    Path(text_path).write_bytes(("\n".join(lines) + "\n").encode("ascii"))
    doc = {
        "fingerprint": registry.fingerprint,
        "expected_fail_ids": list(registry.expected_fail_ids),
        "modes": list(registry.modes),
        "entries": [
            {"technique": t, "index": i, "sha256": sha} for t, i, sha in registry.entries
        ],
    }
    Path(json_path).write_bytes(
        (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode("ascii")
    )
