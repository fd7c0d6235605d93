"""Statistical test battery over generator output streams.

Submodules:

- ``stream``: int/real output pathways over a generator status.
- ``pvalues``: chi-square, Poisson, and Kolmogorov-Smirnov p-value machinery.
- ``complexity``: Berlekamp-Massey linear complexity and its exact null law.
- ``walks``: exact null distributions of random-walk statistics.
- ``families``: the test families and their result records.
- ``battery``: ordered test batteries, including the built-in mini-crush-v1.
"""
from mtstreams.stats.battery import (
    MINI_CRUSH_V1,
    Battery,
    TestDefinition,
    battery_sha256,
    dump_battery,
    load_battery,
)
from mtstreams.stats.families import TestResult, run_test
from mtstreams.stats.stream import Mode, StreamView

__all__ = [
    "Battery",
    "MINI_CRUSH_V1",
    "Mode",
    "StreamView",
    "TestDefinition",
    "TestResult",
    "battery_sha256",
    "dump_battery",
    "load_battery",
    "run_test",
]
