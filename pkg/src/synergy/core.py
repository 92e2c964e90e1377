"""Shared vocabulary: feature points, problem instances, coalitions, reports.

Feature indices are 1-based everywhere a user can see them (coalitions,
JSON, CSV); subsets are encoded internally as bitmasks with bit i-1 for
feature i. All types are immutable values.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .combinatorics import MAX_FEATURES, enumerate_coalitions
from .exceptions import (
    DimensionMismatchError,
    InvalidCoalitionError,
    NonFiniteError,
    OutOfBoxError,
)

Point = tuple[float, ...]
Coalition = tuple[int, ...]


def as_point(values: Iterable[float]) -> Point:
    return tuple(float(v) for v in values)


@dataclass(frozen=True)
class Instance:
    """An input point, its baseline, and an optional bounding box.

    The box is a pair (lower, upper) of corner points; omit it for an
    unbounded domain.
    """

    x: Point
    baseline: Point
    box: tuple[Point, Point] | None = None

    @property
    def n(self) -> int:
        return len(self.x)


def validate_instance(inst: Instance) -> None:
    """Raise unless dimensions agree and both points sit inside the box."""
    n = len(inst.x)
    if n < 1:
        raise DimensionMismatchError("instance needs at least one feature")
    if n > MAX_FEATURES:
        raise DimensionMismatchError(f"n={n} exceeds the {MAX_FEATURES}-feature cap")
    if len(inst.baseline) != n:
        raise DimensionMismatchError(
            f"x has {n} features but baseline has {len(inst.baseline)}"
        )
    if inst.box is not None:
        lower, upper = inst.box
        if len(lower) != n or len(upper) != n:
            raise DimensionMismatchError("box corners must match the feature count")
        for label, point in (("x", inst.x), ("baseline", inst.baseline)):
            for i, value in enumerate(point):
                if not lower[i] <= value <= upper[i]:
                    raise OutOfBoxError(
                        f"{label}[{i + 1}]={value} outside [{lower[i]}, {upper[i]}]"
                    )


def coalition_mask(members: Iterable[int], n: int) -> int:
    """Bitmask for a 1-based index set; rejects indices outside 1..n."""
    mask = 0
    for i in members:
        if not 1 <= i <= n:
            raise InvalidCoalitionError(f"feature index {i} outside 1..{n}")
        mask |= 1 << (i - 1)
    return mask


def coalition_members(mask: int) -> Coalition:
    """Sorted 1-based members of a bitmask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def masked_point(inst: Instance, members: Iterable[int]) -> Point:
    """The point taking input values on the coalition and baseline values elsewhere."""
    n = inst.n
    mask = coalition_mask(members, n)
    return tuple(
        inst.x[i] if mask >> i & 1 else inst.baseline[i] for i in range(n)
    )


def _format_coalition(members: Coalition) -> str:
    return "+".join(str(i) for i in members) if members else "-"


@dataclass(frozen=True)
class InteractionReport:
    """Scores for every coalition of size <= order over n features.

    The entry map must cover exactly the subsets of {1..n} of size <= order,
    the empty set included, and every value must be finite.
    """

    n: int
    order: int
    entries: Mapping[Coalition, float] = field(compare=True)

    def __post_init__(self) -> None:
        expected = enumerate_coalitions(self.n, self.order)
        entries = {tuple(c): float(v) for c, v in self.entries.items()}
        if set(entries) != set(expected):
            missing = set(expected) - set(entries)
            extra = set(entries) - set(expected)
            raise InvalidCoalitionError(
                f"report keys must cover P_{self.order} exactly "
                f"(missing={sorted(missing)[:3]}, extra={sorted(extra)[:3]})"
            )
        for coalition, value in entries.items():
            if not math.isfinite(value):
                raise NonFiniteError(f"non-finite value for coalition {coalition}")
        object.__setattr__(self, "entries", entries)

    def value(self, members: Iterable[int]) -> float:
        return self.entries[tuple(sorted(members))]

    def total(self) -> float:
        """Sum over all nonempty coalitions (the completeness quantity)."""
        return sum(v for c, v in sorted(self.entries.items()) if c)

    def max_abs_difference(self, other: "InteractionReport") -> float:
        if set(self.entries) != set(other.entries):
            raise InvalidCoalitionError("reports cover different coalition sets")
        return max(abs(self.entries[c] - other.entries[c]) for c in self.entries)

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "entries": [
                {"coalition": list(c), "value": self.entries[c]}
                for c in sorted(self.entries)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    @classmethod
    def from_json_dict(cls, payload: Mapping) -> "InteractionReport":
        entries = {
            tuple(int(i) for i in item["coalition"]): float(item["value"])
            for item in payload["entries"]
        }
        n = sum(1 for c in entries if len(c) == 1)
        return cls(n=n, order=int(payload["order"]), entries=entries)

    def to_csv(self) -> str:
        lines = ["coalition;value"]
        for coalition in sorted(self.entries):
            lines.append(f"{_format_coalition(coalition)};{self.entries[coalition]!r}")
        return "\n".join(lines) + "\n"


def report_from_values(
    n: int, order: int, values: Mapping[Coalition, float]
) -> InteractionReport:
    """Build a report, filling unmentioned coalitions of P_order with zero."""
    entries = {c: 0.0 for c in enumerate_coalitions(n, order)}
    for coalition, value in values.items():
        key = tuple(sorted(coalition))
        if key not in entries:
            raise InvalidCoalitionError(f"coalition {key} outside P_{order} over 1..{n}")
        entries[key] = float(value)
    return InteractionReport(n=n, order=order, entries=entries)
