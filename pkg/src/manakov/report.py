"""Structured pass/fail records for verification runs."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

VERSION = "0.1.0"

PASS = "pass"
FAIL = "fail"
GENERIC = "generic-point-certificate"


@dataclass
class CheckResult:
    """One verified claim: exact identities report pass/fail, sampled rank
    facts report generic-point-certificate (true at the sampled points,
    not proved everywhere)."""

    id: str
    anchor: str
    status: str
    witness: str = ""
    elapsed: float = 0.0

    @property
    def ok(self):
        return self.status != FAIL


@dataclass
class VerificationReport:
    version: str = VERSION
    config: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    def add(self, id, anchor, ok, witness="", generic=False, elapsed=0.0):
        status = (GENERIC if generic else PASS) if ok else FAIL
        self.checks.append(
            CheckResult(id=id, anchor=anchor, status=status, witness=str(witness), elapsed=elapsed)
        )
        return self.checks[-1]

    def timed(self, id, anchor, fn, generic=False):
        """Run fn() -> (ok, witness) and record the check with its duration."""
        t0 = time.perf_counter()
        ok, witness = fn()
        self.add(id, anchor, ok, witness=witness, generic=generic, elapsed=time.perf_counter() - t0)
        return ok

    def extend(self, other: "VerificationReport"):
        self.checks.extend(other.checks)
        return self

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    @property
    def failures(self):
        return [c for c in self.checks if not c.ok]

    def to_dict(self, include_timings=False):
        out = {
            "version": self.version,
            "config": self.config,
            "ok": self.ok,
            "checks": [
                {
                    "id": c.id,
                    "anchor": c.anchor,
                    "status": c.status,
                    "witness": c.witness,
                    **({"elapsed_s": round(c.elapsed, 6)} if include_timings else {}),
                }
                for c in self.checks
            ],
        }
        return out

    def to_json(self, include_timings=False):
        # timings are excluded by default so identical (config, seed) runs
        # produce byte-identical reports
        return json.dumps(self.to_dict(include_timings=include_timings), indent=2, sort_keys=True)

    def summary_lines(self):
        lines = []
        for c in self.checks:
            mark = "PASS" if c.status == PASS else ("CERT" if c.status == GENERIC else "FAIL")
            extra = f"  [{c.witness}]" if (c.witness and not c.ok) else ""
            lines.append(f"{mark}  {c.id}{extra}")
        return lines
