"""Demi-distributions: nonlinear functionals on test-function spaces.

The compiled core lives in ``demicalc._core``; everything is re-exported here.
"""

import json

from ._core import *  # noqa: F401,F403
from ._core import run_suites_json


def run_suites(config=None):
    """Run verification suites and return the report as a list of dicts."""
    return json.loads(run_suites_json(json.dumps(config or {})))
