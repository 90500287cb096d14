"""Verification reports shared by every decision procedure."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

HOLDS = "holds"
FAILS = "fails"
SOUND_BOUND = "holds-with-sound-bound"
VERDICTS = (HOLDS, FAILS, SOUND_BOUND)


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return str(x)


@dataclass
class VerificationReport:
    """Outcome of a shrinking-condition decision.

    ``certificate`` pairs every depth-``k`` word with the index of the first
    covering set that contains its image; ``witness`` is a word whose image
    fits in no covering set.
    """

    verdict: str
    k: int | None = None
    certificate: list = field(default_factory=list)
    witness: tuple | None = None
    oracle_minimal: bool | None = None
    kind: str = ""
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    @property
    def holds(self) -> bool:
        return self.verdict != FAILS

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "verdict": self.verdict,
            "k": self.k,
            "certificate": [[_jsonable(w), i] for w, i in self.certificate],
            "witness": _jsonable(self.witness),
            "oracleMinimal": self.oracle_minimal,
            "details": _jsonable(self.details),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, doc: dict) -> "VerificationReport":
        witness = doc.get("witness")
        return cls(
            verdict=doc["verdict"],
            k=doc.get("k"),
            certificate=[(_tuplify(w), i) for w, i in doc.get("certificate", [])],
            witness=_tuplify(witness) if witness is not None else None,
            oracle_minimal=doc.get("oracleMinimal"),
            kind=doc.get("kind", ""),
            details=doc.get("details", {}),
        )

    def to_text(self) -> str:
        lines = [f"kind: {self.kind}", f"verdict: {self.verdict}"]
        if self.k is not None:
            lines.append(f"k: {self.k}")
        if self.oracle_minimal is not None:
            lines.append(f"k is minimal (oracle): {self.oracle_minimal}")
        if self.witness is not None:
            lines.append(f"witness: {_jsonable(self.witness)}")
        for key in sorted(self.details):
            lines.append(f"{key}: {_jsonable(self.details[key])}")
        if self.certificate:
            lines.append(f"certificate ({len(self.certificate)} words):")
            for w, i in self.certificate:
                lines.append(f"  {_jsonable(w)} -> set {i}")
        return "\n".join(lines) + "\n"


def _tuplify(x):
    if isinstance(x, list):
        return tuple(_tuplify(y) for y in x)
    return x
