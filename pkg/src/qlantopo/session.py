"""On-disk workflow state shared by successive CLI invocations.

A session file is a versioned JSON document holding the network and the
recipe reports produced so far. Writing is canonical (sorted vertices and
edges, fixed key order, two-space indent), so load followed by save
reproduces the file byte for byte.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

from qlantopo.errors import SessionError
from qlantopo.graph import Graph
from qlantopo.network import QlanNetwork
from qlantopo.recipes import RecipeReport
from qlantopo.serialize import dumps

SESSION_VERSION = 1
SESSION_ENV = "QW_SESSION"
DEFAULT_SESSION_FILE = "qlantopo-session.json"


def default_session_path() -> Path:
    return Path(os.environ.get(SESSION_ENV) or DEFAULT_SESSION_FILE)


@dataclass(frozen=True)
class Session:
    network: QlanNetwork | None = None
    reports: tuple[RecipeReport, ...] = field(default_factory=tuple)

    def require_network(self) -> QlanNetwork:
        if self.network is None:
            raise SessionError("no network in the session; run `build` first")
        return self.network

    def last_report(self) -> RecipeReport:
        if not self.reports:
            raise SessionError("no recipe has been applied yet; run `apply` first")
        return self.reports[-1]

    def graph(self, what: str) -> Graph:
        """The shared binary star (``"shared"``) or the latest recipe result (``"result"``)."""
        if what == "shared":
            net = self.require_network()
            if net.shared_graph is None:
                raise SessionError("the network is not merged yet; run `merge` first")
            return net.shared_graph
        if what == "result":
            return self.last_report().result
        raise SessionError(f"unknown graph reference {what!r}")

    def with_network(self, net: QlanNetwork) -> Session:
        return replace(self, network=net)

    def with_report(self, report: RecipeReport) -> Session:
        return replace(self, reports=(*self.reports, report))

    def to_json(self) -> dict[str, Any]:
        return {
            "version": SESSION_VERSION,
            "network": None if self.network is None else self.network.to_json(),
            "reports": [r.to_json() for r in self.reports],
        }

    @classmethod
    def from_json(cls, obj: Any) -> Session:
        if not isinstance(obj, dict) or "version" not in obj:
            raise SessionError("not a session document: missing version field")
        if obj["version"] != SESSION_VERSION:
            raise SessionError(f"unsupported session version {obj['version']!r}")
        net = obj.get("network")
        try:
            return cls(
                None if net is None else QlanNetwork.from_json(net),
                tuple(RecipeReport.from_json(r) for r in obj.get("reports", [])),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise SessionError(f"malformed session document: {exc}") from exc

    def dumps(self) -> str:
        return dumps(self.to_json())


def load_session(path: Path) -> Session:
    """Read ``path``; a missing file is an empty session."""
    if not path.exists():
        return Session()
    try:
        obj = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SessionError(f"{path} is not valid JSON: {exc}") from exc
    return Session.from_json(obj)


def save_session(session: Session, path: Path) -> None:
    path.write_text(session.dumps(), encoding="utf-8")
