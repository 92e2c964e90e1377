"""Binary-feature engine: set-function tables over the masked-point lattice,
the Möbius/synergy decomposition, and the methods built on it.

Every method here routes through the synergy table and a closed-form
distribution rule; the original averaging formulas and the sequence-nesting
construction are kept as independent oracles (`*_from_marginals`, `*_nested`).

Tables hold the 2^n values F(x_S) indexed by the subset encoding
sum_{i in S} 2^(i-1); index 0 is the baseline, index 2^n - 1 the input.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .combinatorics import (
    binomial,
    enumerate_coalitions,
    enumerate_sequences,
    surjective_sequence_count,
)
from .core import (
    Coalition,
    Instance,
    InteractionReport,
    Point,
    coalition_mask,
)
from .exceptions import CapExceededError, DimensionMismatchError, NonFiniteError

MAX_TABLE_FEATURES = 20
ORACLE_MAX_FEATURES = 6
ORACLE_MAX_ORDER = 4


def _frozen_array(values) -> np.ndarray:
    array = np.array(values, dtype=float)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class SetFunctionTable:
    """All 2^n evaluations of a function at the masked points of one instance."""

    n: int
    values: np.ndarray

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SetFunctionTable)
            and self.n == other.n
            and np.array_equal(self.values, other.values)
        )

    def __post_init__(self) -> None:
        if self.n > MAX_TABLE_FEATURES:
            raise CapExceededError(
                f"tables are capped at n <= {MAX_TABLE_FEATURES}, got {self.n}"
            )
        array = _frozen_array(self.values)
        if array.shape != (1 << self.n,):
            raise DimensionMismatchError(
                f"table for n={self.n} needs {1 << self.n} values, got {array.shape}"
            )
        if not np.isfinite(array).all():
            raise NonFiniteError("table contains a non-finite value")
        object.__setattr__(self, "values", array)

    def at(self, members: Iterable[int]) -> float:
        return float(self.values[coalition_mask(members, self.n)])

    def to_json_dict(self) -> dict:
        return {"n": self.n, "values": self.values.tolist()}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    @classmethod
    def from_json_dict(cls, payload: Mapping) -> "SetFunctionTable":
        return cls(int(payload["n"]), payload["values"])


@dataclass(frozen=True, eq=False)
class SynergyTable:
    """Möbius transform of a set-function table: values[S] = synergy of S at x."""

    n: int
    values: np.ndarray

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SynergyTable)
            and self.n == other.n
            and np.array_equal(self.values, other.values)
        )

    def __post_init__(self) -> None:
        array = _frozen_array(self.values)
        if array.shape != (1 << self.n,):
            raise DimensionMismatchError("synergy table has the wrong length")
        object.__setattr__(self, "values", array)

    def at(self, members: Iterable[int]) -> float:
        return float(self.values[coalition_mask(members, self.n)])

    def to_json_dict(self) -> dict:
        return {"n": self.n, "values": self.values.tolist()}


def build_table(inst: Instance, f: Callable[[Point], float]) -> SetFunctionTable:
    """Evaluate f at every masked point, ascending subset encoding."""
    n = inst.n
    if n > MAX_TABLE_FEATURES:
        raise CapExceededError(f"build_table capped at n <= {MAX_TABLE_FEATURES}")
    values = np.empty(1 << n)
    for mask in range(1 << n):
        point = tuple(
            inst.x[i] if mask >> i & 1 else inst.baseline[i] for i in range(n)
        )
        values[mask] = f(point)
    if not np.isfinite(values).all():
        raise NonFiniteError("function produced a non-finite value on the lattice")
    return SetFunctionTable(n, values)


@lru_cache(maxsize=64)
def _indices_with_bit(n: int, bit_index: int) -> np.ndarray:
    masks = np.arange(1 << n)
    return masks[(masks >> bit_index & 1) == 1]


def mobius(table: SetFunctionTable) -> SynergyTable:
    """Alternating-sum transform via the O(n 2^n) in-place subset recursion."""
    a = table.values.copy()
    for bit_index in range(table.n):
        idx = _indices_with_bit(table.n, bit_index)
        a[idx] -= a[idx ^ (1 << bit_index)]
    return SynergyTable(table.n, a)


def mobius_inverse(synergies: SynergyTable) -> SetFunctionTable:
    """Zeta transform: values[S] = sum of synergies over subsets of S."""
    v = synergies.values.copy()
    for bit_index in range(synergies.n):
        idx = _indices_with_bit(synergies.n, bit_index)
        v[idx] += v[idx ^ (1 << bit_index)]
    return SetFunctionTable(synergies.n, v)


@lru_cache(maxsize=256)
def _coalition_masks(n: int, k: int) -> tuple[tuple[Coalition, int], ...]:
    return tuple(
        (members, coalition_mask(members, n))
        for members in enumerate_coalitions(n, k)
    )


def _strict_supersets(mask: int, n: int) -> list[int]:
    complement = (1 << n) - 1 ^ mask
    out = []
    u = complement
    while u:
        out.append(mask | u)
        u = (u - 1) & complement
    out.sort()
    return out


def _report(table: SetFunctionTable, k: int, fill) -> InteractionReport:
    entries: dict[Coalition, float] = {}
    for members, mask in _coalition_masks(table.n, k):
        entries[members] = fill(members, mask)
    return InteractionReport(n=table.n, order=k, entries=entries)


# ---------------------------------------------------------------------------
# Distribution-rule implementations (production path)
# ---------------------------------------------------------------------------

def shapley(table: SetFunctionTable) -> InteractionReport:
    """Shapley attribution: each synergy split equally among its members."""
    syn = mobius(table).values.tolist()
    n = table.n

    def fill(members: Coalition, mask: int) -> float:
        if not members:
            return float(table.values[0])
        i_bit = mask
        total = 0.0
        for s_mask in range(1 << n):
            if s_mask & i_bit:
                total += syn[s_mask] / s_mask.bit_count()
        return total

    return _report(table, 1, fill)


def shapley_taylor(table: SetFunctionTable, k: int) -> InteractionReport:
    """Shapley-Taylor index: top-distributing synergy rule."""
    _require_order(table.n, k)
    syn = mobius(table).values.tolist()
    n = table.n

    def fill(members: Coalition, mask: int) -> float:
        size = len(members)
        if size < k:
            return syn[mask]
        total = syn[mask]
        for s_mask in _strict_supersets(mask, n):
            total += syn[s_mask] / binomial(s_mask.bit_count(), k)
        return total

    return _report(table, k, fill)


def recursive_shapley(table: SetFunctionTable, k: int) -> InteractionReport:
    """Recursive Shapley: synergy of S sends weight N^k_|T| / |S|^k to each T within S."""
    _require_order(table.n, k)
    syn = mobius(table).values.tolist()
    n = table.n

    def fill(members: Coalition, mask: int) -> float:
        if not members:
            return float(table.values[0])
        count = surjective_sequence_count(k, len(members))
        total = syn[mask] * (count / len(members) ** k)
        for s_mask in _strict_supersets(mask, n):
            total += syn[s_mask] * (count / s_mask.bit_count() ** k)
        return total

    return _report(table, k, fill)


def augmented_recursive_shapley(table: SetFunctionTable, k: int) -> InteractionReport:
    """Recursive Shapley with synergies of size <= k pinned to their own group."""
    _require_order(table.n, k)
    syn = mobius(table).values.tolist()
    n = table.n

    def fill(members: Coalition, mask: int) -> float:
        if not members:
            return float(table.values[0])
        count = surjective_sequence_count(k, len(members))
        total = syn[mask]
        for s_mask in _strict_supersets(mask, n):
            if s_mask.bit_count() > k:
                total += syn[s_mask] * (count / s_mask.bit_count() ** k)
        return total

    return _report(table, k, fill)


def _require_order(n: int, k: int) -> None:
    if not 1 <= k <= n:
        raise ValueError(f"order k must satisfy 1 <= k <= n, got k={k}, n={n}")


# ---------------------------------------------------------------------------
# Averaging-formula oracles (independent of the Möbius route)
# ---------------------------------------------------------------------------

def discrete_derivative(table: SetFunctionTable, s_mask: int, t_mask: int) -> float:
    """Inclusion-exclusion contrast of adding S on top of T:
    sum_{W subseteq S} (-1)^(|S|-|W|) F(x_{W union T})."""
    values = table.values
    size = s_mask.bit_count()
    total = 0.0
    w = s_mask
    while True:
        total += (-1) ** (size - w.bit_count()) * values[w | t_mask]
        if w == 0:
            break
        w = (w - 1) & s_mask
    return total


def shapley_from_marginals(table: SetFunctionTable) -> InteractionReport:
    """Shapley via the classical average-of-marginal-contributions formula."""
    n = table.n
    values = table.values

    def fill(members: Coalition, mask: int) -> float:
        if not members:
            return float(values[0])
        total = 0.0
        for w in range(1 << n):
            if w & mask:
                continue
            weight = 1.0 / (n * binomial(n - 1, w.bit_count()))
            total += weight * (values[w | mask] - values[w])
        return total

    return _report(table, 1, fill)


def shapley_taylor_from_marginals(table: SetFunctionTable, k: int) -> InteractionReport:
    """Shapley-Taylor via its discrete-derivative averaging formula."""
    _require_order(table.n, k)
    n = table.n

    def fill(members: Coalition, mask: int) -> float:
        if len(members) < k:
            return discrete_derivative(table, mask, 0)
        complement = (1 << n) - 1 ^ mask
        total = 0.0
        t = complement
        while True:
            weight = 1.0 / binomial(n - 1, t.bit_count())
            total += weight * discrete_derivative(table, mask, t)
            if t == 0:
                break
            t = (t - 1) & complement
        return total * k / n

    return _report(table, k, fill)


def _shapley_retabulated(values: np.ndarray, n: int, i: int) -> np.ndarray:
    """Table of the function y -> Shap_i(y, F) over the same masked lattice."""
    size = 1 << n
    bit = 1 << (i - 1)
    masks = np.arange(size)
    out = np.zeros(size)
    for w in range(size):
        if w & bit:
            continue
        weight = 1.0 / (n * binomial(n - 1, w.bit_count()))
        out += weight * (values[(w | bit) & masks] - values[w & masks])
    return out


def recursive_shapley_nested(table: SetFunctionTable, k: int) -> InteractionReport:
    """Literal nested-Shapley construction, summed over covering sequences.

    Oracle scale only (n <= 6, k <= 4); shares retabulations across sequences
    through a prefix cache.
    """
    _require_order(table.n, k)
    if table.n > ORACLE_MAX_FEATURES or k > ORACLE_MAX_ORDER:
        raise CapExceededError(
            f"nested oracle capped at n <= {ORACLE_MAX_FEATURES}, k <= {ORACLE_MAX_ORDER}"
        )
    n = table.n
    full = (1 << n) - 1
    cache: dict[tuple[int, ...], np.ndarray] = {(): table.values}

    def retabulate(prefix: tuple[int, ...]) -> np.ndarray:
        if prefix not in cache:
            cache[prefix] = _shapley_retabulated(retabulate(prefix[:-1]), n, prefix[-1])
        return cache[prefix]

    def fill(members: Coalition, mask: int) -> float:
        if not members:
            return float(table.values[0])
        total = 0.0
        for sequence in enumerate_sequences(k, members):
            total += retabulate(sequence)[full]
        return total

    return _report(table, k, fill)


def shapley_with_frozen(table: SetFunctionTable, j: int, frozen: int) -> float:
    """Shapley value of feature j with feature `frozen` held at its input value."""
    n = table.n
    if n < 2:
        raise ValueError("needs at least two features")
    values = table.values
    bit_j = 1 << (j - 1)
    bit_i = 1 << (frozen - 1)
    total = 0.0
    for s in range(1 << n):
        if s & (bit_i | bit_j):
            continue
        weight = (
            math.factorial(s.bit_count())
            * math.factorial(n - s.bit_count() - 2)
            / math.factorial(n - 1)
        )
        total += weight * (values[s | bit_i | bit_j] - values[s | bit_i])
    return total


def shapley_taylor_frozen(
    table: SetFunctionTable, members: Sequence[int], frozen: int
) -> float:
    """Order-(|S|-1) Shapley-Taylor score of S minus `frozen`, with `frozen`
    held at its input value throughout."""
    n = table.n
    if n < 2:
        raise ValueError("needs at least two features")
    s_mask = coalition_mask(members, n)
    bit_i = 1 << (frozen - 1)
    if not s_mask & bit_i:
        raise ValueError("frozen feature must belong to the coalition")
    reduced = s_mask ^ bit_i
    size = len(tuple(members))
    complement = (1 << n) - 1 ^ s_mask
    total = 0.0
    t = complement
    while True:
        weight = 1.0 / binomial(n - 2, t.bit_count())
        total += weight * discrete_derivative(table, reduced, t | bit_i)
        if t == 0:
            break
        t = (t - 1) & complement
    return total * (size - 1) / (n - 1)


def permute_table(table: SetFunctionTable, permutation: Sequence[int]) -> SetFunctionTable:
    """Relabel features: new[pi(S)] = old[S], with permutation[i-1] = pi(i)."""
    n = table.n
    if sorted(permutation) != list(range(1, n + 1)):
        raise ValueError("permutation must rearrange 1..n")
    out = np.empty_like(table.values)
    for mask in range(1 << n):
        image = 0
        for i in range(n):
            if mask >> i & 1:
                image |= 1 << (permutation[i] - 1)
        out[image] = table.values[mask]
    return SetFunctionTable(n, out)


def pure_synergy_table(n: int, members: Sequence[int], value: float) -> SetFunctionTable:
    """Table of the pure interaction that is `value` when all of `members`
    are present and 0 otherwise (as a synergy decomposition)."""
    mask = coalition_mask(members, n)
    synergies = np.zeros(1 << n)
    synergies[mask] = value
    return mobius_inverse(SynergyTable(n, synergies))
