"""Convolution powers of lattice probability measures."""

import json

from ._convpow import *  # noqa: F401,F403
from ._convpow import __version__, analyze_report as _analyze_report, build_measure as _build_measure


def build(spec):
    """Build a measure from a spec dict or JSON string."""
    return _build_measure(spec if isinstance(spec, str) else json.dumps(spec))


def analyze(spec, grid_points=65537):
    """Analyze report for a spec, as a dict without timing fields."""
    text = spec if isinstance(spec, str) else json.dumps(spec)
    return json.loads(_analyze_report(text, grid_points))
