"""Sparse multivariate polynomials centered at a baseline point.

A polynomial is a finite map from exponent vectors m to coefficients c,
representing F(y) = sum_m c_m * prod_i (y_i - center_i)^m_i, with the
convention that a zero exponent contributes the factor 1 even at the center.
Zero coefficients are never stored.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .core import Coalition, Point, as_point
from .exceptions import CapExceededError, DimensionMismatchError, NonFiniteError

MAX_TOTAL_DEGREE = 128
MAX_TERMS = 10**6

MultiIndex = tuple[int, ...]


def support(m: MultiIndex) -> Coalition:
    """1-based positions of the nonzero exponents."""
    return tuple(i + 1 for i, e in enumerate(m) if e > 0)


@dataclass(frozen=True)
class SparsePolynomial:
    center: Point
    terms: Mapping[MultiIndex, float]

    def __post_init__(self) -> None:
        n = len(self.center)
        clean: dict[MultiIndex, float] = {}
        for m, c in self.terms.items():
            key = tuple(int(e) for e in m)
            if len(key) != n:
                raise DimensionMismatchError(
                    f"exponent vector {key} does not match dimension {n}"
                )
            if any(e < 0 for e in key):
                raise ValueError(f"negative exponent in {key}")
            if sum(key) > MAX_TOTAL_DEGREE:
                raise CapExceededError(
                    f"total degree {sum(key)} exceeds cap {MAX_TOTAL_DEGREE}"
                )
            value = float(c)
            if not math.isfinite(value):
                raise NonFiniteError(f"non-finite coefficient for {key}")
            if value != 0.0:
                clean[key] = value
        if len(clean) > MAX_TERMS:
            raise CapExceededError(f"{len(clean)} terms exceed cap {MAX_TERMS}")
        object.__setattr__(self, "terms", clean)

    @property
    def n(self) -> int:
        return len(self.center)

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def constant_term(self) -> float:
        return self.terms.get((0,) * self.n, 0.0)

    def evaluate(self, y: Sequence[float]) -> float:
        if len(y) != self.n:
            raise DimensionMismatchError(
                f"point has {len(y)} components, polynomial has {self.n}"
            )
        shifted = [y[i] - self.center[i] for i in range(self.n)]
        total = 0.0
        for m in sorted(self.terms):
            value = self.terms[m]
            for i, e in enumerate(m):
                if e:
                    value *= shifted[i] ** e
            total += value
        return total

    def __add__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        if self.center != other.center:
            raise ValueError("cannot add polynomials with different centers")
        merged = dict(self.terms)
        for m, c in other.terms.items():
            merged[m] = merged.get(m, 0.0) + c
        return SparsePolynomial(self.center, merged)

    def __sub__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        return self + other.scale(-1.0)

    def scale(self, factor: float) -> "SparsePolynomial":
        return SparsePolynomial(
            self.center, {m: c * factor for m, c in self.terms.items()}
        )

    def partial(self, i: int) -> "SparsePolynomial":
        """Exact partial derivative with respect to feature i (1-based)."""
        if not 1 <= i <= self.n:
            raise ValueError(f"feature index {i} outside 1..{self.n}")
        out: dict[MultiIndex, float] = {}
        for m, c in self.terms.items():
            e = m[i - 1]
            if e:
                key = m[: i - 1] + (e - 1,) + m[i:]
                out[key] = out.get(key, 0.0) + c * e
        return SparsePolynomial(self.center, out)

    def truncate(self, max_degree: int) -> "SparsePolynomial":
        """Drop every term of total degree above max_degree."""
        if max_degree < 0:
            raise ValueError("max_degree must be >= 0")
        return SparsePolynomial(
            self.center, {m: c for m, c in self.terms.items() if sum(m) <= max_degree}
        )

    def synergy_split(self) -> dict[Coalition, "SparsePolynomial"]:
        """Group terms by support: each piece is a pure interaction of its coalition."""
        pieces: dict[Coalition, dict[MultiIndex, float]] = {}
        for m, c in self.terms.items():
            pieces.setdefault(support(m), {})[m] = c
        return {
            coalition: SparsePolynomial(self.center, terms)
            for coalition, terms in pieces.items()
        }

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "center": list(self.center),
            "terms": [
                {"m": list(m), "c": self.terms[m]} for m in sorted(self.terms)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    @classmethod
    def from_json_dict(cls, payload: Mapping) -> "SparsePolynomial":
        n = int(payload["n"])
        center = as_point(payload.get("center", [0.0] * n))
        if len(center) != n:
            raise DimensionMismatchError("center length does not match n")
        terms = {
            tuple(int(e) for e in item["m"]): float(item["c"])
            for item in payload["terms"]
        }
        return cls(center, terms)


def from_terms(
    center: Iterable[float], terms: Mapping[MultiIndex, float]
) -> SparsePolynomial:
    return SparsePolynomial(as_point(center), dict(terms))
