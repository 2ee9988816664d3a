from ._orpool import (
    Instance,
    Scenario,
    Solution,
    compare_policies,
    evaluate,
    first_stage_cost,
    generate_instance,
    occupancy_series,
    run_saa,
    sample_bundle,
    sensitivity_sweep,
    solve_extensive,
    validate,
)

__all__ = [
    "Instance",
    "Scenario",
    "Solution",
    "compare_policies",
    "evaluate",
    "first_stage_cost",
    "generate_instance",
    "occupancy_series",
    "run_saa",
    "sample_bundle",
    "sensitivity_sweep",
    "solve_extensive",
    "validate",
]
