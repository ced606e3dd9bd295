"""Report records, the reference exponent table and serialization."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .core_sets import FiniteSet, format_rational

SIG_DIGITS = 12


def exact_str(x) -> str:
    """Render an exact integer/rational in full."""
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, FiniteSet):
        return "{" + ", ".join(format_rational(v) for v in x) + "}"
    return str(x)


def decimal_str(x) -> str:
    return f"{float(x):.{SIG_DIGITS}g}"


def ratio_to_power(quantity, n: int, exponent: Fraction) -> str:
    """``quantity / n**exponent`` as a 12-significant-digit decimal string."""
    q = Fraction(quantity)
    if q == 0:
        return decimal_str(0)
    if q < 0:
        raise ValueError("soft-check quantities are nonnegative")
    log_q = math.log(q.numerator) - math.log(q.denominator)
    return decimal_str(math.exp(log_q - float(exponent) * math.log(n)))


def compare_to_power(quantity, n: int, exponent: Fraction) -> str:
    """Exact comparison of ``quantity`` against ``n**exponent`` ('above'/'equal'/'below')."""
    q = Fraction(quantity)
    e = Fraction(exponent)
    # q^den vs n^num, cleared of negative powers
    lhs = q ** e.denominator
    rhs = Fraction(n) ** e.numerator
    if lhs > rhs:
        return "above"
    return "equal" if lhs == rhs else "below"


# -- reference exponents -----------------------------------------------------

@dataclass(frozen=True)
class Reference:
    name: str
    exponent: Fraction
    statement: str


DELTA = Fraction(1, 4)

EXPONENTS = {
    "sum_product": Reference("sum_product", Fraction(4, 3) + Fraction(5, 5277),
                             "|A+A| + |AA| >~ n^e"),
    "four_set_sum_product": Reference("four_set_sum_product", Fraction(4, 3) + Fraction(1, 753),
                                      "|A+A| + |A-A| + |AA| + |A/A| >~ n^e"),
    "difference_quotient": Reference("difference_quotient", 1 + Fraction(3, 10),
                                     "|A-A| + |A/A| >~ n^e"),
    "difference_product": Reference("difference_product", 1 + Fraction(7, 24),
                                    "|A-A| + |AA| >~ n^e"),
    "difference_times_quotient": Reference("difference_times_quotient", Fraction(13, 5),
                                           "|A-A| |A/A| >~ n^e"),
    "difference_product_powers": Reference("difference_product_powers", Fraction(93),
                                           "|A-A|^35 |AA|^37 >~ n^e"),
    "expander_times_difference": Reference("expander_times_difference",
                                           Fraction(3, 2) + Fraction(7, 226),
                                           "|A(A-A)| >~ n^e"),
    "expander_times_sum": Reference("expander_times_sum", Fraction(3, 2) + Fraction(1, 46),
                                    "|A(A+A)| >~ n^e"),
    "expander_single_shift": Reference("expander_single_shift",
                                       Fraction(3, 2) + Fraction(1, 182),
                                       "max_a |A(A+-a)| >~ n^e"),
    "decomp_d_bound": Reference("decomp_d_bound", 1 - 2 * DELTA,
                                "max(d+(B), dx(C)) <~ n^e"),
    "decomp_energy": Reference("decomp_energy", 3 - Fraction(14, 13) * DELTA,
                               "max(E+(B), Ex(C)) <~ n^e"),
    "decomp_cross_energy": Reference("decomp_cross_energy", 3 - DELTA,
                                     "max(E+(B,A), Ex(C,A)) <~ n^e"),
    "elekes": Reference("elekes", Fraction(5, 2), "|A+A| |AA| >~ n^e"),
    "cover_product": Reference("cover_product", Fraction(1), "d+(X) dx(Y) <~ n^e"),
    "fourth_cover_product": Reference("fourth_cover_product", Fraction(3),
                                      "d4+(X) Ex(Y) <~ n^e"),
    "key_inequality": Reference("key_inequality", Fraction(0),
                                "d+(A) / Dx(A) <~ n^e"),
    "single_shift_energy": Reference("single_shift_energy", Fraction(0),
                                     "n^6 / (|A(A+b)|^2 Ex(A)) <~ n^e"),
}

# Third-moment sumset bounds: (exponent of |A|, exponent of d+(A)).
THIRD_MOMENT_BOUNDS = {
    "sumset": (Fraction(58, 37), Fraction(-21, 37)),
    "difference_set": (Fraction(8, 5), Fraction(-3, 5)),
    "energy": (Fraction(32, 13), Fraction(7, 13)),
}


# -- check records -----------------------------------------------------------

@dataclass
class ExactCheck:
    name: str
    verdict: bool
    lhs: Any
    rhs: Any
    relation: str = "<="

    def to_dict(self):
        return {"name": self.name, "verdict": "pass" if self.verdict else "fail",
                "lhs": exact_str(self.lhs), "relation": self.relation,
                "rhs": exact_str(self.rhs)}

    @classmethod
    def from_dict(cls, d):
        """Loaded sides stay in their rendered string form."""
        return cls(d["name"], d["verdict"] == "pass", d["lhs"], d["rhs"], d["relation"])


def le_check(name, lhs, rhs) -> ExactCheck:
    return ExactCheck(name, lhs <= rhs, lhs, rhs, "<=")


def eq_check(name, lhs, rhs) -> ExactCheck:
    return ExactCheck(name, lhs == rhs, lhs, rhs, "==")


@dataclass
class SoftCheck:
    name: str
    quantity: Any
    n: int
    reference: str
    exponent: Fraction
    ratio: str = ""
    comparison: str = ""

    def __post_init__(self):
        if self.n >= 1 and not self.ratio:
            self.ratio = ratio_to_power(self.quantity, self.n, self.exponent)
            self.comparison = compare_to_power(self.quantity, self.n, self.exponent)

    def to_dict(self):
        return {"name": self.name, "quantity": exact_str(self.quantity), "n": self.n,
                "reference": self.reference, "exponent": exact_str(self.exponent),
                "ratio": self.ratio, "comparison": self.comparison}


def soft(name, quantity, n, ref_key) -> SoftCheck:
    ref = EXPONENTS[ref_key]
    return SoftCheck(name, quantity, n, ref.statement, ref.exponent)


@dataclass
class Report:
    input: dict = field(default_factory=dict)
    quantities: dict = field(default_factory=dict)
    certificates: list = field(default_factory=list)
    exact_checks: list = field(default_factory=list)
    soft_checks: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.verdict for c in self.exact_checks)

    def failures(self):
        return [c for c in self.exact_checks if not c.verdict]

    def merge(self, other: "Report", prefix: str = "") -> None:
        for k, v in other.quantities.items():
            self.quantities[prefix + k] = v
        self.certificates.extend(other.certificates)
        self.exact_checks.extend(other.exact_checks)
        self.soft_checks.extend(other.soft_checks)

    def to_dict(self):
        return {
            "input": _jsonable(self.input),
            "quantities": {k: _jsonable(v) for k, v in self.quantities.items()},
            "certificates": [_jsonable(c) for c in self.certificates],
            "exact_checks": [c.to_dict() for c in self.exact_checks],
            "soft_checks": [c.to_dict() for c in self.soft_checks],
            "meta": _jsonable(self.meta),
        }


def _jsonable(x):
    if hasattr(x, "to_dict"):
        return _jsonable(x.to_dict())
    if isinstance(x, FiniteSet):
        return [format_rational(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else format_rational(x)
    return x


def to_json(obj) -> str:
    """JSON text for a report, certificate or any nesting of supported values."""
    return json.dumps(_jsonable(obj), indent=2, sort_keys=False) + "\n"


def to_csv(report: Report) -> str:
    """Flatten ``quantities`` and ``soft_checks`` into one long-format table."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["section", "name", "value", "n", "exponent", "ratio"])
    for k, v in report.quantities.items():
        w.writerow(["quantity", k, json.dumps(_jsonable(v)) if isinstance(v, (dict, list, tuple, FiniteSet)) else _jsonable(v), "", "", ""])
    for s in report.soft_checks:
        d = s.to_dict()
        w.writerow(["soft_check", d["name"], d["quantity"], d["n"], d["exponent"], d["ratio"]])
    return buf.getvalue()


def emit_report(report: Report, fmt: str = "json") -> str:
    if fmt == "json":
        return to_json(report)
    if fmt == "csv":
        return to_csv(report)
    raise ValueError(f"unknown report format {fmt!r}")
