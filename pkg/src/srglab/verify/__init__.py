"""Intriguing-set verification: the counting oracle and the orbit-union scan."""

from srglab.verify.intriguing import (
    IntriguingReport,
    check_intriguing,
    classify,
    complement_transfer,
    eigenvector_check,
    reports_dataframe,
)
from srglab.verify.scan import orbit_union_scan, union_of

__all__ = [
    "IntriguingReport",
    "check_intriguing",
    "classify",
    "complement_transfer",
    "eigenvector_check",
    "orbit_union_scan",
    "reports_dataframe",
    "union_of",
]
