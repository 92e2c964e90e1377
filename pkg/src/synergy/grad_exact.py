"""Closed-form gradient-based methods on sparse polynomials.

Monomials centered at the baseline are pure interactions of their support, so
each method is a termwise rule sending a monomial's value at x to coalitions
of its support. Reduction order is fixed (sorted exponent vectors) so output
is bit-reproducible.
"""
from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .combinatorics import binomial, enumerate_coalitions, monomial_mass
from .core import Coalition, Instance, InteractionReport
from .exceptions import CapExceededError, DimensionMismatchError
from .polynomials import MultiIndex, SparsePolynomial, support
from .set_methods import (
    ORACLE_MAX_FEATURES,
    build_table,
    shapley_taylor_frozen,
)

SOP_ORACLE_MAX_ORDER = 3


def _term_values(p: SparsePolynomial, x: Sequence[float]) -> list[tuple[MultiIndex, float]]:
    """Each term's monomial value c * (x - center)^m, in sorted term order."""
    if len(x) != p.n:
        raise DimensionMismatchError(f"point has {len(x)} components, expected {p.n}")
    shifted = [x[i] - p.center[i] for i in range(p.n)]
    out = []
    for m in sorted(p.terms):
        value = p.terms[m]
        for i, e in enumerate(m):
            if e:
                value *= shifted[i] ** e
        out.append((m, value))
    return out


def _empty_entries(n: int, k: int) -> dict[Coalition, float]:
    return {c: 0.0 for c in enumerate_coalitions(n, k)}


def integrated_gradients(p: SparsePolynomial, x: Sequence[float]) -> InteractionReport:
    """Path-integral attribution: a monomial sends the share m_i / |m| to feature i."""
    entries = _empty_entries(p.n, 1)
    for m, value in _term_values(p, x):
        total_degree = sum(m)
        if total_degree == 0:
            entries[()] += value
            continue
        for i in support(m):
            entries[(i,)] += value * m[i - 1] / total_degree
    return InteractionReport(n=p.n, order=1, entries=entries)


def integrated_hessian(p: SparsePolynomial, x: Sequence[float], k: int) -> InteractionReport:
    """Order-k nested path-integral interaction: monomial mass spread over all
    nonempty subsets of the support in proportion to expansion coefficients."""
    _require_order(p.n, k)
    entries = _empty_entries(p.n, k)
    for m, value in _term_values(p, x):
        total_degree = sum(m)
        if total_degree == 0:
            entries[()] += value
            continue
        members = support(m)
        denominator = total_degree**k
        for size in range(1, min(k, len(members)) + 1):
            for subset in combinations(members, size):
                mass = monomial_mass(k, subset, m)
                if mass:
                    entries[subset] += value * (mass / denominator)
    return InteractionReport(n=p.n, order=k, entries=entries)


def augmented_integrated_hessian(
    p: SparsePolynomial, x: Sequence[float], k: int
) -> InteractionReport:
    """Order-k variant pinning monomials with support size <= k to their support."""
    _require_order(p.n, k)
    entries = _empty_entries(p.n, k)
    for m, value in _term_values(p, x):
        total_degree = sum(m)
        if total_degree == 0:
            entries[()] += value
            continue
        members = support(m)
        if len(members) <= k:
            entries[members] += value
            continue
        denominator = total_degree**k
        for size in range(1, k + 1):
            for subset in combinations(members, size):
                mass = monomial_mass(k, subset, m)
                if mass:
                    entries[subset] += value * (mass / denominator)
    return InteractionReport(n=p.n, order=k, entries=entries)


def sum_of_powers(p: SparsePolynomial, x: Sequence[float], k: int) -> InteractionReport:
    """Top-distributing gradient method: oversized monomial supports land only
    on their size-k subsets, weighted by the subset's share of the exponents.

    Order 1 is integrated gradients by definition."""
    _require_order(p.n, k)
    if k == 1:
        return integrated_gradients(p, x)
    entries = _empty_entries(p.n, k)
    for m, value in _term_values(p, x):
        total_degree = sum(m)
        if total_degree == 0:
            entries[()] += value
            continue
        members = support(m)
        if len(members) <= k:
            entries[members] += value
            continue
        scale = binomial(len(members) - 1, k - 1) * total_degree
        for subset in combinations(members, k):
            entries[subset] += value * (sum(m[i - 1] for i in subset) / scale)
    return InteractionReport(n=p.n, order=k, entries=entries)


def ig_polynomial(p: SparsePolynomial, i: int) -> SparsePolynomial:
    """Integrated-gradients attribution to feature i as a polynomial in y."""
    if not 1 <= i <= p.n:
        raise ValueError(f"feature index {i} outside 1..{p.n}")
    terms = {}
    for m, c in p.terms.items():
        if m[i - 1] > 0:
            terms[m] = c * m[i - 1] / sum(m)
    return SparsePolynomial(p.center, terms)


def sum_of_powers_nested(
    p: SparsePolynomial, x: Sequence[float], k: int
) -> InteractionReport:
    """Construction oracle: apply integrated gradients per feature symbolically,
    tabulate the result, and run the frozen-feature Shapley-Taylor on it.

    Oracle scale only (n <= 6, k <= 3)."""
    _require_order(p.n, k)
    if p.n > ORACLE_MAX_FEATURES or k > SOP_ORACLE_MAX_ORDER:
        raise CapExceededError(
            f"nested oracle capped at n <= {ORACLE_MAX_FEATURES}, k <= {SOP_ORACLE_MAX_ORDER}"
        )
    if k == 1:
        return integrated_gradients(p, x)
    inst = Instance(x=tuple(float(v) for v in x), baseline=p.center)
    pieces = p.synergy_split()
    entries = _empty_entries(p.n, k)
    entries[()] = p.constant_term()
    for members in enumerate_coalitions(p.n, k):
        if not members:
            continue
        if len(members) < k:
            piece = pieces.get(members)
            entries[members] = piece.evaluate(x) if piece is not None else 0.0
            continue
        total = 0.0
        for i in members:
            attribution = ig_polynomial(p, i)
            table = build_table(inst, attribution.evaluate)
            total += shapley_taylor_frozen(table, members, i)
        entries[members] = total
    return InteractionReport(n=p.n, order=k, entries=entries)


def integrated_hessian_pairwise(p: SparsePolynomial, x: Sequence[float]) -> InteractionReport:
    """Order-2 interactions by direct termwise reduction of the s,t double
    integrals (the pairwise form and the two-part main-effect form)."""
    entries = _empty_entries(p.n, 2)
    shifted = [x[i] - p.center[i] for i in range(p.n)]

    def reduced_monomial(m: MultiIndex, drop: dict[int, int]) -> float:
        value = 1.0
        for i, e in enumerate(m):
            e -= drop.get(i + 1, 0)
            if e:
                value *= shifted[i] ** e
        return value

    for m in sorted(p.terms):
        c = p.terms[m]
        total_degree = sum(m)
        if total_degree == 0:
            entries[()] += c
            continue
        members = support(m)
        inv_square = 1.0 / total_degree**2  # each s,t integral gives 1/|m| per axis
        for i, j in combinations(members, 2):
            weight = 2.0 * m[i - 1] * m[j - 1] * inv_square
            base = reduced_monomial(m, {i: 1, j: 1})
            entries[(i, j)] += c * weight * shifted[i - 1] * shifted[j - 1] * base
        for i in members:
            e = m[i - 1]
            first = e * inv_square * reduced_monomial(m, {i: 1}) * shifted[i - 1]
            second = 0.0
            if e >= 2:
                second = (
                    e
                    * (e - 1)
                    * inv_square
                    * reduced_monomial(m, {i: 2})
                    * shifted[i - 1] ** 2
                )
            entries[(i,)] += c * (first + second)
    return InteractionReport(n=p.n, order=2, entries=entries)


def _require_order(n: int, k: int) -> None:
    if not 1 <= k <= n:
        raise ValueError(f"order k must satisfy 1 <= k <= n, got k={k}, n={n}")
