"""Report container and its JSON / CSV / text serializations.

Values are always written as strings: decimal big integers, ``a/b``
fractions, or canonical rational functions in q.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field


def fmt(value) -> str:
    return str(value)


@dataclass
class Entry:
    dims: tuple
    value: str
    paths: dict = field(default_factory=dict)
    ok: bool | None = None

    def to_json(self) -> dict:
        out = {"dims": list(self.dims), "value": self.value, "paths": dict(self.paths)}
        if self.ok is not None:
            out["ok"] = self.ok
        return out


@dataclass
class Report:
    command: str
    params: dict
    entries: list = field(default_factory=list)
    agreement: bool = True
    dim_names: tuple | None = None

    def add(self, dims, paths: dict, primary: str | None = None, check: bool = False) -> Entry:
        """Add one cell; with several paths the cell passes iff all values coincide."""
        values = {k: fmt(v) for k, v in paths.items()}
        key = primary if primary is not None else next(iter(values))
        ok = len(set(values.values())) <= 1
        if not ok:
            self.agreement = False
        entry = Entry(tuple(dims), values[key], values if len(values) > 1 or check else {},
                      ok if check else None)
        self.entries.append(entry)
        return entry

    def to_json(self) -> str:
        doc = {
            "command": self.command,
            "params": self.params,
            "entries": [e.to_json() for e in self.entries],
            "agreement": self.agreement,
        }
        return json.dumps(doc, indent=2)

    def _dim_header(self) -> list[str]:
        width = max((len(e.dims) for e in self.entries), default=0)
        if self.dim_names and len(self.dim_names) == width:
            return list(self.dim_names)
        return [f"r{i + 1}" for i in range(width)]

    def _path_names(self) -> list[str]:
        names: list[str] = []
        for e in self.entries:
            for k in e.paths:
                if k not in names:
                    names.append(k)
        return names

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        paths = self._path_names()
        writer.writerow(self._dim_header() + ["value"] + paths)
        for e in self.entries:
            writer.writerow(list(e.dims) + [e.value] + [e.paths.get(p, "") for p in paths])
        return buf.getvalue()

    def to_text(self) -> str:
        if len(self.entries) == 1 and not self.entries[0].dims:
            e = self.entries[0]
            if len(set(e.paths.values())) <= 1:
                return e.value + "\n"
        lines = []
        for e in self.entries:
            label = "(" + ", ".join(map(str, e.dims)) + ")"
            line = f"{label} {e.value}"
            if e.ok is not None:
                line = ("PASS " if e.ok else "FAIL ") + line
            if len(set(e.paths.values())) > 1:
                line += "  [" + ", ".join(f"{k}={v}" for k, v in e.paths.items()) + "]"
            lines.append(line)
        if any(e.paths for e in self.entries):
            lines.append(f"agreement: {str(self.agreement).lower()}")
        return "\n".join(lines) + "\n"

    def render(self, fmt_name: str) -> str:
        if fmt_name == "json":
            return self.to_json() + "\n"
        if fmt_name == "csv":
            return self.to_csv()
        return self.to_text()


def roundtrip(text: str) -> str:
    """Parse a JSON report and serialize it again in the same layout."""
    return json.dumps(json.loads(text), indent=2)
