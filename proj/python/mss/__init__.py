"""Morse-Smale surface diffeomorphism analysis."""

import json

from ._mss import (
    MssError,
    Report,
    analyze,
    analyze_config,
    canonical_apply,
    catalog_names,
    verify_theorem,
)


def report_dict(report):
    return json.loads(report.to_json())


__all__ = [
    "MssError",
    "Report",
    "analyze",
    "analyze_config",
    "canonical_apply",
    "catalog_names",
    "report_dict",
    "verify_theorem",
]
