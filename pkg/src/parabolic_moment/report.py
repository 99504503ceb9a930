"""Verification reports: named checks with exact witnesses, JSON-serialisable."""

from dataclasses import dataclass, field

SCHEMA_VERSION = "1.0"


@dataclass
class Check:
    name: str
    anchor: str
    passed: bool
    witness: dict

    def to_json(self):
        return {
            "name": self.name,
            "anchor": self.anchor,
            "status": "pass" if self.passed else "fail",
            "witness": self.witness,
        }


@dataclass
class VerificationReport:
    kind: str
    n: int
    alpha: tuple
    seed: int
    trials: int
    regime: str = "proven"
    checks: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def add(self, name, anchor, passed, **witness):
        self.checks.append(Check(name, anchor, bool(passed), witness))

    def to_json(self):
        out = {
            "schema_version": SCHEMA_VERSION,
            "kind": self.kind,
            "context": {"n": self.n, "alpha": list(self.alpha)},
            "regime": self.regime,
            "seed": self.seed,
            "trials": self.trials,
            "status": "pass" if self.passed else "fail",
            "checks": [c.to_json() for c in self.checks],
        }
        out.update(self.extra)
        return out


def regime_of(ctx):
    return "conjecture regime" if ctx.conjecture_regime else "proven"
