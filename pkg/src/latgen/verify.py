"""Consistency checks over generated lattice lists.

Each check decodes records, re-derives canonical forms, and reports the
first offending record on failure, so corrupted or hand-edited lists are
caught regardless of how they were produced.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import d6
from .canon import canonical_payload
from .core import Lattice, dual


@dataclass
class CheckResult:
    ok: bool
    detail: str = ""

    def __bool__(self):
        return self.ok


def _lattice_of(record):
    n, arcs = d6.decode(record)
    return Lattice.from_arcs(n, arcs)


def _canonical_payloads(lines):
    return [canonical_payload(_lattice_of(line)) for line in lines]


def check_isomorph_free(lines) -> CheckResult:
    """Re-canonicalize every record; all lines must name distinct classes."""
    seen = {}
    for i, line in enumerate(lines):
        payload = canonical_payload(_lattice_of(line))
        if payload in seen:
            return CheckResult(
                False, f"records {seen[payload]} and {i} are isomorphic"
            )
        seen[payload] = i
    return CheckResult(True, f"{len(seen)} records, all distinct")


def check_containment(sub_lines, super_lines) -> CheckResult:
    """Canonical-form set inclusion of one list in another."""
    sup = set(_canonical_payloads(super_lines))
    for i, line in enumerate(sub_lines):
        if canonical_payload(_lattice_of(line)) not in sup:
            return CheckResult(False, f"record {i} of the sublist is not contained")
    return CheckResult(True, f"{len(sub_lines)} records contained")


def check_duality_closed(lines) -> CheckResult:
    """The canonical form of every record's dual appears in the list."""
    payloads = set(_canonical_payloads(lines))
    for i, line in enumerate(lines):
        d = dual(_lattice_of(line))
        if canonical_payload(d) not in payloads:
            return CheckResult(False, f"dual of record {i} is missing")
    return CheckResult(True, f"{len(lines)} records, closed under duality")
