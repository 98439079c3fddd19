"""Pass/fail reports shared by the verification suites and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    """Outcome of one verification suite (or one named check within one)."""

    suite: str
    status: str  # "pass" | "fail" | "error"
    checked: int = 0
    witness: str | None = None
    params: dict = field(default_factory=dict)
    wall_ms: float | None = None

    @staticmethod
    def ok(suite, checked=0, **params):
        return Report(suite, "pass", checked=checked, params=dict(params))

    @staticmethod
    def fail(suite, witness, checked=0, **params):
        return Report(suite, "fail", checked=checked, witness=witness, params=dict(params))

    @staticmethod
    def error(suite, message, **params):
        return Report(suite, "error", witness=message, params=dict(params))

    @property
    def passed(self):
        return self.status == "pass"

    def to_dict(self, with_timing=False):
        out = {
            "suite": self.suite,
            "status": self.status,
            "checked": self.checked,
            "params": {k: self.params[k] for k in sorted(self.params)},
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if with_timing and self.wall_ms is not None:
            out["wall_ms"] = round(self.wall_ms, 3)
        return out

    def line(self):
        mark = "✓" if self.passed else "✗"
        bits = ["%s %s" % (mark, self.suite)]
        if self.params:
            bits.append("[%s]" % ", ".join("%s=%s" % (k, self.params[k]) for k in sorted(self.params)))
        bits.append("checks=%d" % self.checked)
        if self.witness:
            bits.append("witness: %s" % self.witness)
        return " ".join(bits)


def combine(suite, reports, **params):
    """Fold sub-reports into one; first failure wins the witness slot."""
    checked = sum(r.checked for r in reports)
    for r in reports:
        if not r.passed:
            return Report(
                suite,
                r.status,
                checked=checked,
                witness="%s: %s" % (r.suite, r.witness),
                params=dict(params),
            )
    return Report(suite, "pass", checked=checked, params=dict(params))
