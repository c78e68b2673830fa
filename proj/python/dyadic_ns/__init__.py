"""Littlewood-Paley analysis and mild Navier-Stokes solutions on the periodic box."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import run_suite_json as _run_suite_json

__version__ = "0.1.0"


def run_suite(name, **config):
    """Run a named experiment suite and return its report as a dict.

    Keyword arguments mirror the CLI flags (dim, grid, seed, r, sigma, T,
    steps, tol, ensemble, amp, gamma).
    """
    return _json.loads(_run_suite_json(name, {k: str(v) for k, v in config.items()}))
