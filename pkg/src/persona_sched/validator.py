"""Design-time template validation.

Checks a template statically for out-of-order fixed starts, then generates it
with every random offset pinned at ``-v``, ``0`` and ``+v``. Any generation
failure at those extremes is reported. Start ranges that overlap between
consecutive fixed-start entries are flagged as warnings, since mixed-sign
draws are not covered by the three runs.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Tuple

from .core import ScheduleFormatError, ScheduleTemplate, format_time
from .formats import load_template
from .generator import (
    OVERCONSTRAINED,
    UNDERCONSTRAINED,
    ExtremeOffsets,
    GenerationError,
    generate_schedule,
)

ERROR = "error"
WARNING = "warning"

CHRONOLOGICAL = "chronological"
FORMAT = "format"

_EXTREME_LABELS = {-1: "minimum", 0: "nominal", 1: "maximum"}


@dataclass(frozen=True)
class Finding:
    severity: str
    kind: str
    entry_index: Optional[int]
    message: str


@dataclass
class ValidationReport:
    findings: List[Finding] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not any(f.severity == ERROR for f in self.findings)

    def error_kinds(self) -> List[str]:
        kinds = []
        for f in self.findings:
            if f.severity == ERROR and f.kind not in kinds:
                kinds.append(f.kind)
        return kinds

    @property
    def category(self) -> str:
        """``"valid"`` or the most basic error kind found.

        Out-of-order starts usually also break generation, so chronological
        errors take precedence over overconstrained, then underconstrained.
        """
        kinds = self.error_kinds()
        for kind in (FORMAT, CHRONOLOGICAL, OVERCONSTRAINED, UNDERCONSTRAINED):
            if kind in kinds:
                return kind
        return "valid"

    def to_dict(self) -> dict:
        return {"valid": self.valid, "findings": [asdict(f) for f in self.findings]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        lines = ["valid" if self.valid else "invalid"]
        for f in self.findings:
            where = "" if f.entry_index is None else f" (entry {f.entry_index})"
            lines.append(f"  {f.severity}: {f.kind}{where}: {f.message}")
        return "\n".join(lines) + "\n"


def _fixed_starts(template: ScheduleTemplate) -> List[Tuple[int, int, int]]:
    return [
        (i, e.start, e.start_variance or 0)
        for i, e in enumerate(template.entries)
        if e.start is not None
    ]


def validate_template(template: ScheduleTemplate) -> ValidationReport:
    report = ValidationReport()
    fixed = _fixed_starts(template)
    names = [e.activity for e in template.entries]

    for (pi, pstart, pvar), (i, start, var) in zip(fixed, fixed[1:]):
        if start < pstart:
            report.findings.append(Finding(
                ERROR, CHRONOLOGICAL, i,
                f"{names[i]} is scheduled at {format_time(start)}, before "
                f"{names[pi]} at {format_time(pstart)}",
            ))
        elif start - var < pstart + pvar:
            report.findings.append(Finding(
                WARNING, OVERCONSTRAINED, i,
                f"start range of {names[i]} from {format_time(start - var)} may precede "
                f"{names[pi]} starting as late as {format_time(pstart + pvar)}",
            ))

    seen = set()
    for sign in (-1, 0, 1):
        try:
            generate_schedule(template, ExtremeOffsets(sign))
        except GenerationError as exc:
            key = (exc.kind, exc.entry_index)
            if key in seen:
                continue
            seen.add(key)
            report.findings.append(Finding(
                ERROR, exc.kind, exc.entry_index,
                f"{exc.detail} (at {_EXTREME_LABELS[sign]} variance extreme)",
            ))
    return report


def validate_document(document: str) -> ValidationReport:
    """Validate template JSON text; a parse failure becomes a single format error."""
    try:
        template = load_template(document)
    except ScheduleFormatError as exc:
        return ValidationReport([Finding(ERROR, FORMAT, None, str(exc))])
    return validate_template(template)
