from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union

from qglf.qpoly import QRational

Count = Union[int, QRational]


@dataclass(frozen=True)
class CountTable:
    """Counts indexed by dimension vectors (r_1, ..., r_k).

    ``q`` is the integer field size, ``"sym"`` for symbolic tables, or
    ``"Sn"`` for symmetric-group tables indexed by cycle counts.  Only
    nonzero entries are stored; missing cells read as 0.
    """

    arity: int
    n: int
    q: Union[int, str]
    entries: dict[tuple[int, ...], Count] = field(default_factory=dict)

    def __post_init__(self):
        clean = {tuple(k): v for k, v in self.entries.items() if v != 0}
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    def __getitem__(self, dims) -> Count:
        return self.entries.get(tuple(dims), 0)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.entries)

    def items(self):
        return self.entries.items()

    def total(self) -> Count:
        acc = 0
        for v in self.entries.values():
            acc = acc + v
        return acc

    def mismatches(self, other: CountTable) -> list[tuple[int, ...]]:
        keys = sorted(set(self.entries) | set(other.entries))
        return [k for k in keys if self[k] != other[k]]

    def agrees_with(self, other: CountTable) -> bool:
        return self.arity == other.arity and self.n == other.n and not self.mismatches(other)
