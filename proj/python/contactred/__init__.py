"""Contact reduction of cosphere bundles.

Thin wrapper over the compiled ``_contactred`` module.
"""

import json

from ._contactred import (
    ConfigError,
    GeometryError,
    GroupActionSpec,
    J_ct,
    ManifoldSpec,
    Scenario,
    constraint_residual,
    default_size,
    dimension_audit,
    f_sigma,
    fundamental_field,
    kernel_algebra,
    liouville,
    make_scenario,
    project_tangent,
    reduce,
    reduction_factor,
    report_json,
    retract,
    run_verify,
    sample_level,
    sample_point,
    scenario_names,
    size_range,
    tangent_frame,
)

__version__ = "0.1.0"


def verify(names="all", n=None, samples=64, tol=1e-9, seed=42):
    """Runs the verification suite and returns the report as a dict."""
    if isinstance(names, str):
        names = [names]
    return json.loads(report_json(list(names), n=n, samples=samples, tol=tol, seed=seed))
