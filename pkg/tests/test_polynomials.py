import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from synergy.core import Instance
from synergy.exceptions import CapExceededError
from synergy.polynomials import SparsePolynomial, from_terms, support
from synergy.set_methods import build_table, mobius
from tests.conftest import make_polynomial

QUADRATIC = SparsePolynomial(
    (0.0, 0.0, 0.0),
    {(1, 0, 0): 2.0, (0, 1, 0): -3.0, (1, 0, 1): 1.0, (0, 0, 0): -15.0},
)


def test_evaluate_worked_example():
    assert QUADRATIC.evaluate((1.0, 1.0, 1.0)) == -15.0


def test_evaluate_high_degree_monomial():
    p = SparsePolynomial((0.0, 0.0), {(100, 1): 1.0})
    assert p.evaluate((2.0, 2.0)) == 2.0**101


def test_evaluate_empty():
    p = SparsePolynomial((0.0, 0.0), {})
    assert p.evaluate((3.0, 4.0)) == 0.0


def test_add_cancellation_drops_terms():
    assert not (QUADRATIC + QUADRATIC.scale(-1.0)).terms
    assert not QUADRATIC.scale(0.0).terms


def test_add_requires_matching_center():
    other = SparsePolynomial((1.0, 0.0, 0.0), {(1, 0, 0): 1.0})
    with pytest.raises(ValueError):
        QUADRATIC + other


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_evaluation_is_additive(seed):
    rng = np.random.default_rng(seed)
    p = make_polynomial(rng, 3)
    q = make_polynomial(rng, 3)
    y = rng.uniform(-1, 1, 3)
    assert (p + q).evaluate(y) == pytest.approx(
        p.evaluate(y) + q.evaluate(y), rel=1e-12, abs=1e-12
    )


def test_partial_power_rule():
    p = SparsePolynomial((0.0, 0.0), {(100, 1): 1.0})
    assert p.partial(1).terms == {(99, 1): 100.0}
    assert not SparsePolynomial((0.0, 0.0), {(1, 0): 2.0}).partial(2).terms


def test_partial_matches_finite_differences(rng):
    h = 1e-5
    for _ in range(10):
        p = make_polynomial(rng, 3)
        x = rng.uniform(-1, 1, 3)
        for i in range(1, 4):
            bump = np.zeros(3)
            bump[i - 1] = h
            numeric = (p.evaluate(x + bump) - p.evaluate(x - bump)) / (2 * h)
            exact = p.partial(i).evaluate(x)
            assert numeric == pytest.approx(exact, rel=1e-6, abs=1e-6)


def test_partials_commute_exactly(rng):
    for _ in range(10):
        p = make_polynomial(rng, 3)
        assert p.partial(1).partial(2).terms == p.partial(2).partial(1).terms


def test_truncate():
    assert QUADRATIC.truncate(1).terms == {
        (1, 0, 0): 2.0,
        (0, 1, 0): -3.0,
        (0, 0, 0): -15.0,
    }
    assert QUADRATIC.truncate(QUADRATIC.degree()) == QUADRATIC
    assert QUADRATIC.truncate(0).terms == {(0, 0, 0): -15.0}


def test_truncate_is_projection(rng):
    p = make_polynomial(rng, 4, degree=6)
    once = p.truncate(3)
    assert once.truncate(3) == once


def test_synergy_split_worked_example():
    pieces = QUADRATIC.synergy_split()
    assert set(pieces) == {(), (1,), (2,), (1, 3)}
    assert pieces[()].terms == {(0, 0, 0): -15.0}
    assert pieces[(1,)].terms == {(1, 0, 0): 2.0}
    assert pieces[(2,)].terms == {(0, 1, 0): -3.0}
    assert pieces[(1, 3)].terms == {(1, 0, 1): 1.0}


def test_synergy_split_single_monomial():
    p = SparsePolynomial((0.0, 0.0), {(1, 2): 1.0})
    assert set(p.synergy_split()) == {(1, 2)}


def test_synergy_split_resums_to_original(rng):
    p = make_polynomial(rng, 4)
    total = SparsePolynomial(p.center, {})
    for piece in p.synergy_split().values():
        total = total + piece
    assert total == p


def test_split_matches_set_function_synergy(rng):
    """Polynomial-level split evaluated at x equals the Möbius synergy of the
    tabulated function, coalition by coalition."""
    for _ in range(10):
        n = int(rng.integers(2, 7))
        p = make_polynomial(rng, n, degree=5)
        x = tuple(rng.uniform(-1, 1, n))
        inst = Instance(x=x, baseline=p.center)
        synergies = mobius(build_table(inst, p.evaluate))
        pieces = p.synergy_split()
        for mask in range(1 << n):
            members = tuple(i + 1 for i in range(n) if mask >> i & 1)
            piece = pieces.get(members)
            expected = piece.evaluate(x) if piece is not None else 0.0
            got = synergies.values[mask]
            assert got == pytest.approx(expected, rel=1e-9, abs=1e-9)


def test_support():
    assert support((0, 2, 1)) == (2, 3)
    assert support((0, 0)) == ()


def test_degree_cap():
    with pytest.raises(CapExceededError):
        SparsePolynomial((0.0,), {(129,): 1.0})


def test_json_roundtrip():
    payload = QUADRATIC.to_json_dict()
    assert payload["n"] == 3
    assert SparsePolynomial.from_json_dict(payload) == QUADRATIC


def test_from_terms_drops_zeros():
    p = from_terms([0.0, 0.0], {(1, 0): 0.0, (0, 1): 2.0})
    assert p.terms == {(0, 1): 2.0}
