"""Named constants of the published bounds, with provenance tags.

Every constant carried into a report is tagged with where it came from:
'paper-explicit' for values stated in the source theorems, 'user' for
values supplied on the command line or by a caller, and
'default-unspecified' for placeholders standing in for constants the
source proves to exist but never pins down numerically.
"""

from dataclasses import dataclass

__all__ = ["ConstantInfo", "PROVENANCE", "THEOREM_CONSTANTS"]

PROVENANCE = ("paper-explicit", "user", "default-unspecified")


@dataclass(frozen=True)
class ConstantInfo:
    """A named numeric constant plus the tag saying who chose it."""

    name: str
    value: float
    provenance: str

    def __post_init__(self):
        if self.provenance not in PROVENANCE:
            raise ValueError("unknown provenance tag: %r" % (self.provenance,))

    def as_user(self, value):
        return ConstantInfo(self.name, float(value), "user")


def _c(name, value, provenance):
    return ConstantInfo(name, value, provenance)


# Weighted-sum coefficient/threshold pairs per bound, plus the constants
# of the companion norm sums.  Placeholders default to coefficient 1 and
# threshold 0 (include every term), the conservative reading.
THEOREM_CONSTANTS = {
    "est1": {
        "coefficient": _c("coefficient", 5.06, "paper-explicit"),
        "threshold": _c("threshold", 0.092, "paper-explicit"),
    },
    "gest2": {
        "coefficient": _c("coefficient", 7.61, "paper-explicit"),
        "threshold": _c("threshold", 0.046, "paper-explicit"),
        "norm_coefficient": _c("norm_coefficient", 1.0, "default-unspecified"),
        "norm_threshold": _c("norm_threshold", 0.0, "default-unspecified"),
    },
    "rbtheqn": {
        "coefficient": _c("coefficient", 7.16, "paper-explicit"),
        "threshold": _c("threshold", 0.046, "paper-explicit"),
        "norm_coefficient": _c("norm_coefficient", 1.0, "default-unspecified"),
        "norm_threshold": _c("norm_threshold", 0.0, "default-unspecified"),
    },
    "radest4": {
        "coefficient": _c("coefficient", 7.16, "paper-explicit"),
        "threshold": _c("threshold", 0.046, "paper-explicit"),
        "norm_coefficient": _c("norm_coefficient", 1.0, "default-unspecified"),
        "norm_threshold": _c("norm_threshold", 0.0, "default-unspecified"),
    },
    "mainthm": {
        "coefficient": _c("coefficient", 4.0, "paper-explicit"),
        "threshold": _c("threshold", 0.25, "paper-explicit"),
        "norm_coefficient": _c("norm_coefficient", 1.0, "default-unspecified"),
        "norm_threshold": _c("norm_threshold", 0.0, "default-unspecified"),
    },
    "laptnetrsol": {
        "coefficient": _c("coefficient", 4.0, "paper-explicit"),
        "threshold": _c("threshold", 0.25, "paper-explicit"),
        "norm_coefficient": _c("norm_coefficient", 1.0, "default-unspecified"),
        "norm_threshold": _c("norm_threshold", 0.0, "default-unspecified"),
    },
    "khuri": {
        "coefficient": _c("coefficient", 1.0, "default-unspecified"),
    },
}
