"""Covert LEO uplink simulator.

Thin wrapper over the C++ core. Distances are meters, powers watts unless a
field name says dB/dBm, rates bits/symbol.
"""

from ._covertsim import (
    ConfigError,
    DistanceLaw,
    ModelValidityError,
    ScenarioConfig,
    ThresholdError,
    average_rate,
    averaged_catch_probability,
    catch_probability,
    estimate_catch,
    estimate_overall_catch,
    false_alarm,
    field_names,
    load_config,
    load_config_file,
    miss_detection,
    optimal_chunks,
    optimal_window,
    overall_catch_probability,
    postponement_probability,
    run_case,
    run_cli,
    solve_threshold,
)

__all__ = [name for name in dir() if not name.startswith("_")]
