"""Spins of prime ideals, class group ranks and sieve sums."""

from ._spinlab import (
    Field,
    SpinlabError,
    charsum_scan,
    check_S_valid,
    class_number,
    load_preset,
    preset_names,
    run_cli,
    spin_stream,
    splits_completely,
    sqf,
    two_power_rank,
    type1_sum,
)

__all__ = [
    "Field",
    "SpinlabError",
    "charsum_scan",
    "check_S_valid",
    "class_number",
    "load_preset",
    "preset_names",
    "run_cli",
    "spin_stream",
    "splits_completely",
    "sqf",
    "two_power_rank",
    "type1_sum",
]
