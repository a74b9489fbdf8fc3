"""Verification report records and their line-oriented text form."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    """One verified quantity.

    Without ``expected`` the check passes when ``measured <= bound``; with it,
    when ``|measured - expected| <= bound``.
    """

    name: str
    measured: float
    bound: float
    expected: float | None = None

    @property
    def passed(self) -> bool:
        if self.expected is None:
            return self.measured <= self.bound
        return abs(self.measured - self.expected) <= self.bound

    def bound_text(self) -> str:
        if self.expected is None:
            return f"<= {self.bound!r}"
        return f"|x - {self.expected!r}| <= {self.bound!r}"


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)

    def add(self, name, measured, bound, expected=None) -> Check:
        check = Check(name, float(measured), float(bound),
                      None if expected is None else float(expected))
        self.checks.append(check)
        return check

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


def emit_report(report: VerificationReport) -> str:
    n_fail = len(report.failures())
    status = "PASS" if report.passed else "FAIL"
    lines = [f"# verification: {status} ({len(report.checks)} checks, {n_fail} failed)",
             "# name\tmeasured\tbound\tstatus"]
    for c in report.checks:
        lines.append(f"{c.name}\t{c.measured!r}\t{c.bound_text()}\t{'PASS' if c.passed else 'FAIL'}")
    return "\n".join(lines) + "\n"
