"""Deterministic key/value reports for the command-line driver."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__

SCHEMA = 1


def input_digest(command: str, args: dict, files: dict[str, str]) -> str:
    h = hashlib.sha256()
    h.update(command.encode())
    for key in sorted(args):
        h.update(f"\0{key}={args[key]!r}".encode())
    for name in sorted(files):
        h.update(f"\0file:{name}\0".encode())
        h.update(files[name].encode())
    return h.hexdigest()[:16]


def _scalar(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return str(v)


@dataclass
class Report:
    command: str
    digest: str
    result: dict = field(default_factory=dict)

    def header(self) -> dict:
        return {"command": self.command, "input_digest": self.digest,
                "version": f"derivbench {__version__}", "schema": SCHEMA}

    def lines(self) -> list[tuple[str, str]]:
        out: list[tuple[str, str]] = [(k, _scalar(v)) for k, v in self.header().items()]

        def walk(prefix: str, value):
            if isinstance(value, dict):
                for k, v in value.items():
                    walk(f"{prefix}.{k}", v)
            elif isinstance(value, (list, tuple)):
                out.append((f"{prefix}.count", str(len(value))))
                for idx, v in enumerate(value):
                    walk(f"{prefix}.{idx}", v)
            else:
                out.append((prefix, _scalar(value)))

        walk("result", self.result)
        return out

    def render(self, fmt: str = "kv") -> str:
        if fmt == "json":
            def plain(v):
                if isinstance(v, dict):
                    return {k: plain(x) for k, x in v.items()}
                if isinstance(v, (list, tuple)):
                    return [plain(x) for x in v]
                if v is None or isinstance(v, (bool, int)):
                    return v
                return _scalar(v)
            doc = dict(self.header())
            doc["result"] = plain(self.result)
            return json.dumps(doc, indent=2) + "\n"
        return "".join(f"{k}: {v}\n" for k, v in self.lines())
