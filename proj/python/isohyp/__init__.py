"""Weighted isoperimetric lab in hyperbolic space."""

import json

from ._isohyp import (
    BallQuantities,
    DomainError,
    FunctionalResult,
    PolarProfile,
    RadialDensity,
    ball_quantities,
    ball_radius_for_volume,
    hopf_crosscheck,
    lambda_for_ball,
    profile_functionals,
    shoot_classify,
    translated_ball_profile,
)
from ._isohyp import _run_cli

__all__ = [
    "BallQuantities",
    "DomainError",
    "FunctionalResult",
    "PolarProfile",
    "RadialDensity",
    "ball_quantities",
    "ball_radius_for_volume",
    "hopf_crosscheck",
    "lambda_for_ball",
    "profile_functionals",
    "run_cli",
    "run_json",
    "shoot_classify",
    "translated_ball_profile",
]


def run_cli(*args):
    """Run the command-line front end in-process; returns (exit_code, stdout, stderr)."""
    return _run_cli([str(a) for a in args])


def run_json(*args):
    """Run a subcommand that prints JSON and decode it; raises on a non-zero exit."""
    code, out, err = run_cli(*args)
    if code != 0:
        raise RuntimeError(f"isohyp {' '.join(map(str, args))} exited {code}: {err.strip()}")
    return json.loads(out)
