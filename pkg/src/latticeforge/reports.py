"""Machine-readable verification reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive-at-budget"
EXIT_CODES = {PASS: 0, FAIL: 1, INCONCLUSIVE: 3}
EXIT_USAGE = 2


@dataclass
class VerificationReport:
    check: str
    params: dict
    status: str = PASS
    counterexamples: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    seed: int = 0
    version: str = ""

    def __post_init__(self):
        if not self.version:
            from . import __version__

            self.version = __version__

    def fail(self, example) -> None:
        self.counterexamples.append(example)
        self.status = FAIL

    def finish(self, inconclusive: bool = False) -> "VerificationReport":
        """Settle the status: fail iff there are counterexamples."""
        if self.counterexamples:
            self.status = FAIL
        elif inconclusive:
            self.status = INCONCLUSIVE
        else:
            self.status = PASS
        return self

    @property
    def ok(self) -> bool:
        return self.status == PASS

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "params": self.params,
            "status": self.status,
            "counterexamples": self.counterexamples,
            "stats": self.stats,
            "seed": self.seed,
            "version": self.version,
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())

    def summary(self) -> str:
        lines = [f"{self.check}: {self.status.upper()}"]
        for k in sorted(self.params):
            lines.append(f"  {k} = {self.params[k]}")
        for k in sorted(self.stats):
            lines.append(f"  {k}: {self.stats[k]}")
        if self.counterexamples:
            lines.append(f"  counterexamples ({len(self.counterexamples)}):")
            lines.extend(f"    {c}" for c in self.counterexamples[:10])
        return "\n".join(lines)


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, fixed separators, so equal inputs give equal bytes."""
    return json.dumps(obj, sort_keys=True, indent=2, default=_default)


def _default(o):
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    if hasattr(o, "item"):  # numpy scalars
        return o.item()
    raise TypeError(f"not JSON serializable: {o!r}")
