from __future__ import annotations

from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"


@dataclass
class Check:
    """Outcome of one named numerical check.

    ``witness`` is a multiplicity list (or list of them) pinpointing the
    failure or, for passes, the object that realised the check.
    """

    name: str
    status: str
    detail: str = ""
    witness: list | None = None
    values: dict = field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail,
                "witness": self.witness, "values": self.values}

    @classmethod
    def from_dict(cls, doc: dict) -> "Check":
        return cls(name=doc["name"], status=doc["status"], detail=doc.get("detail", ""),
                   witness=doc.get("witness"), values=dict(doc.get("values", {})))
