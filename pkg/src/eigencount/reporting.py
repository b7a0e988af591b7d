"""Deterministic result containers and serialization.

A bound evaluation produces a BoundReport: the indexed term series, the
per-sum rules (coefficient, threshold, transform), every constant with its
provenance tag, and the final value.  The value is always recomputable from
the recorded terms through apply_rule, and the JSON/table writers format
floats with 17 significant digits so repeated runs are byte-identical.
"""

import math
from dataclasses import dataclass, field

from .constants import ConstantInfo
from .errors import InvariantError

__all__ = [
    "TermSeries",
    "SumRule",
    "BoundReport",
    "apply_rule",
    "to_json_text",
    "format_table",
]


@dataclass(frozen=True)
class TermSeries:
    """Indexed nonnegative terms of one decomposition."""

    label: str
    geometry: str
    terms: dict

    def __post_init__(self):
        clean = {}
        for n in sorted(self.terms):
            t = float(self.terms[n])
            if not (math.isfinite(t) and t >= 0.0):
                raise InvariantError(
                    "term %s[%d] = %r must be finite and >= 0" % (self.label, n, t)
                )
            clean[int(n)] = t
        object.__setattr__(self, "terms", clean)


@dataclass(frozen=True)
class SumRule:
    """How one term series enters a bound.

    transform: 'sqrt' for coefficient * sqrt(term), 'identity' for
    coefficient * term, 'ceil_sqrt_scale' for ceil(sqrt(scale * term)) and
    'sqrt_scale' for sqrt(scale * term).  Terms enter only when strictly
    above the threshold.
    """

    transform: str
    coefficient: ConstantInfo
    threshold: ConstantInfo
    scale: float = 1.0

    def __post_init__(self):
        if self.transform not in ("sqrt", "identity", "ceil_sqrt_scale", "sqrt_scale"):
            raise ValueError("unknown transform %r" % (self.transform,))


def apply_rule(rule, series):
    """Evaluate one sum; returns (value, {index: contribution})."""
    contributions = {}
    total = 0.0
    for n in sorted(series.terms):
        t = series.terms[n]
        if not t > rule.threshold.value:
            continue
        if rule.transform == "sqrt":
            c = rule.coefficient.value * math.sqrt(t)
        elif rule.transform == "identity":
            c = rule.coefficient.value * t
        elif rule.transform == "ceil_sqrt_scale":
            c = rule.coefficient.value * math.ceil(math.sqrt(rule.scale * t))
        else:
            c = rule.coefficient.value * math.sqrt(rule.scale * t)
        contributions[n] = c
        total += c
    return total, contributions


@dataclass(frozen=True)
class BoundReport:
    """One evaluated eigenvalue-count bound."""

    method: str
    base: float
    series: tuple
    rules: tuple
    constants: tuple = ()
    notes: tuple = ()
    value: float = field(default=None)
    sum_values: tuple = field(default=None)

    def __post_init__(self):
        if len(self.series) != len(self.rules):
            raise ValueError("series and rules must align")
        sums = []
        total = self.base
        for s, r in zip(self.series, self.rules):
            v, _ = apply_rule(r, s)
            sums.append(v)
            total += v
        if self.value is None:
            object.__setattr__(self, "value", total)
        elif self.value != total:
            raise InvariantError("stored bound value disagrees with its terms")
        object.__setattr__(self, "sum_values", tuple(sums))

    def recomputed_value(self):
        total = self.base
        for s, r in zip(self.series, self.rules):
            v, _ = apply_rule(r, s)
            total += v
        return total

    def all_constants(self):
        seen = []
        for r in self.rules:
            seen.append(r.coefficient)
            seen.append(r.threshold)
        seen.extend(self.constants)
        return tuple(seen)

    def to_payload(self):
        payload = {
            "method": self.method,
            "value": self.value,
            "base": self.base,
            "sums": [],
            "constants": [],
            "notes": list(self.notes),
        }
        for s, r, v in zip(self.series, self.rules, self.sum_values):
            _, contrib = apply_rule(r, s)
            payload["sums"].append(
                {
                    "label": s.label,
                    "geometry": s.geometry,
                    "transform": r.transform,
                    "scale": r.scale,
                    "value": v,
                    "terms": {str(n): t for n, t in sorted(s.terms.items())},
                    "contributions": {str(n): c for n, c in sorted(contrib.items())},
                }
            )
        for c in self.all_constants():
            payload["constants"].append(
                {"name": c.name, "value": c.value, "provenance": c.provenance}
            )
        return payload


def _fmt_float(x):
    if x != x:
        raise ValueError("NaN is not serializable in reports")
    if x == math.inf:
        return '"inf"'
    if x == -math.inf:
        return '"-inf"'
    return format(x, ".17g")


def _fmt_str(s):
    out = ['"']
    for ch in s:
        if ch == '"':
            out.append('\\"')
        elif ch == "\\":
            out.append("\\\\")
        elif ch == "\n":
            out.append("\\n")
        elif ch == "\t":
            out.append("\\t")
        elif ord(ch) < 0x20:
            out.append("\\u%04x" % ord(ch))
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def _emit(obj, out, indent):
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        items = list(obj.items())
        for i, (k, v) in enumerate(items):
            out.append(pad + "  " + _fmt_str(str(k)) + ": ")
            _emit(v, out, indent + 1)
            out.append(",\n" if i + 1 < len(items) else "\n")
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        out.append("[\n")
        for i, v in enumerate(obj):
            out.append(pad + "  ")
            _emit(v, out, indent + 1)
            out.append(",\n" if i + 1 < len(obj) else "\n")
        out.append(pad + "]")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(_fmt_float(obj))
    elif isinstance(obj, str):
        out.append(_fmt_str(obj))
    elif obj is None:
        out.append("null")
    else:
        raise TypeError("cannot serialize %r" % type(obj))


def to_json_text(obj):
    """Serialize nested dict/list/scalar data with 17-significant-digit
    floats and fixed layout, so equal inputs give byte-equal output."""
    out = []
    _emit(obj, out, 0)
    out.append("\n")
    return "".join(out)


def _rows_aligned(rows):
    widths = {}
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths.get(i, 0), len(cell))
    lines = []
    for row in rows:
        lines.append(
            "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip()
        )
    return lines


def format_table(report):
    """Aligned plain-text rendering of a BoundReport."""
    lines = []
    lines.append("method: %s" % report.method)
    lines.append("bound:  %s" % format(report.value, ".17g"))
    for note in report.notes:
        lines.append("note:   %s" % note)
    lines.append("")
    rows = [("constant", "value", "provenance")]
    for c in report.all_constants():
        rows.append((c.name, format(c.value, ".17g"), c.provenance))
    lines.extend(_rows_aligned(rows))
    for s, r, v in zip(report.series, report.rules, report.sum_values):
        _, contrib = apply_rule(r, s)
        lines.append("")
        lines.append(
            "series %s (%s): transform=%s sum=%s"
            % (s.label, s.geometry, r.transform, format(v, ".17g"))
        )
        rows = [("n", "term", "contribution")]
        for n in sorted(s.terms):
            rows.append(
                (
                    str(n),
                    format(s.terms[n], ".17g"),
                    format(contrib.get(n, 0.0), ".17g"),
                )
            )
        lines.extend(_rows_aligned(rows))
    return "\n".join(lines) + "\n"
