"""Per-identity verification results and their JSON-line form."""

from __future__ import annotations

import json
from dataclasses import dataclass


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one identity check; pass iff the residual is within tolerance."""

    identity: str
    samples: int
    max_rel_residual: float
    tolerance: float
    passed: bool
    seed: int | None = None
    detail: str | None = None

    def to_obj(self) -> dict:
        out = {
            "identity": self.identity,
            "samples": self.samples,
            "max_rel_residual": self.max_rel_residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "seed": self.seed,
        }
        if self.detail is not None:
            out["detail"] = self.detail
        return out

    def to_json_line(self) -> str:
        return json.dumps(self.to_obj(), separators=(", ", ": "))

    @staticmethod
    def from_obj(obj: dict) -> "VerificationReport":
        return VerificationReport(
            identity=obj["identity"],
            samples=int(obj["samples"]),
            max_rel_residual=float(obj["max_rel_residual"]),
            tolerance=float(obj["tolerance"]),
            passed=bool(obj["pass"]),
            seed=obj.get("seed"),
            detail=obj.get("detail"),
        )
