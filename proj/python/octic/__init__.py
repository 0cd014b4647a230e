"""Python access to the double octic verification kernels."""

import json

from ._octic import (
    OcticError,
    UsageError,
    census,
    count_legendre,
    count_octic,
    degenerate_parameters,
    h3_values,
    j_from_lambda,
    obstructed,
    pipeline,
    predict_count,
    weight_buckets,
    zeta_elliptic,
)
from ._octic import run as _run


def run(subcommand, **kwargs):
    """Run a CLI check group and return the parsed report."""
    return json.loads(_run(subcommand, **kwargs))


__all__ = [
    "OcticError",
    "UsageError",
    "census",
    "count_legendre",
    "count_octic",
    "degenerate_parameters",
    "h3_values",
    "j_from_lambda",
    "obstructed",
    "pipeline",
    "predict_count",
    "run",
    "weight_buckets",
    "zeta_elliptic",
]
