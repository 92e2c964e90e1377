import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from synergy.core import (
    Instance,
    InteractionReport,
    coalition_mask,
    coalition_members,
    masked_point,
    report_from_values,
    validate_instance,
)
from synergy.exceptions import (
    DimensionMismatchError,
    InvalidCoalitionError,
    NonFiniteError,
    OutOfBoxError,
)


def test_masked_point_case_split():
    inst = Instance(x=(1.0, 1.0, 1.0), baseline=(0.0, 0.0, 0.0))
    assert masked_point(inst, (1, 3)) == (1.0, 0.0, 1.0)


def test_masked_point_extremes():
    inst = Instance(x=(2.0, -1.0, 0.5), baseline=(0.1, 0.2, 0.3))
    assert masked_point(inst, ()) == inst.baseline
    assert masked_point(inst, (1, 2, 3)) == inst.x


def test_masked_point_rejects_bad_index():
    inst = Instance(x=(1.0,), baseline=(0.0,))
    with pytest.raises(InvalidCoalitionError):
        masked_point(inst, (2,))
    with pytest.raises(InvalidCoalitionError):
        masked_point(inst, (0,))


def test_masked_point_exhaustive_agreement():
    rng = np.random.default_rng(3)
    inst = Instance(x=tuple(rng.uniform(-1, 1, 4)), baseline=tuple(rng.uniform(-1, 1, 4)))
    for mask in range(1 << 4):
        members = coalition_members(mask)
        point = masked_point(inst, members)
        for i in range(4):
            expected = inst.x[i] if (i + 1) in members else inst.baseline[i]
            assert point[i] == expected


def test_masked_point_idempotent():
    inst = Instance(x=(1.0, 2.0, 3.0), baseline=(0.0, 0.0, 0.0))
    once = masked_point(inst, (2,))
    again = masked_point(Instance(x=once, baseline=inst.baseline), (2,))
    assert once == again


@pytest.mark.parametrize(
    "x, baseline, box, error",
    [
        ((2.0,), (0.0,), ((0.0,), (1.0,)), OutOfBoxError),
        ((0.5, 0.5), (0.0,), None, DimensionMismatchError),
    ],
)
def test_validate_instance_rejects(x, baseline, box, error):
    with pytest.raises(error):
        validate_instance(Instance(x=x, baseline=baseline, box=box))


def test_validate_instance_accepts():
    validate_instance(Instance(x=(0.5,), baseline=(0.0,), box=((0.0,), (1.0,))))


def test_coalition_mask_roundtrip():
    assert coalition_members(coalition_mask((3, 1), 4)) == (1, 3)
    assert coalition_mask((), 4) == 0


def test_report_requires_full_coverage():
    with pytest.raises(InvalidCoalitionError):
        InteractionReport(n=2, order=1, entries={(): 0.0, (1,): 1.0})  # (2,) missing


def test_report_rejects_non_finite():
    with pytest.raises(NonFiniteError):
        InteractionReport(
            n=1, order=1, entries={(): 0.0, (1,): float("nan")}
        )


def test_report_json_schema_is_lexicographic():
    report = report_from_values(3, 2, {(1, 3): 1.0, (2,): -3.0, (1,): 2.0, (): -15.0})
    payload = report.to_json_dict()
    coalitions = [tuple(e["coalition"]) for e in payload["entries"]]
    assert coalitions == sorted(coalitions)
    assert coalitions[0] == ()
    back = InteractionReport.from_json_dict(json.loads(report.to_json()))
    assert back == report


def test_report_csv_layout():
    report = report_from_values(3, 2, {(1, 3): 1.0, (): -15.0})
    lines = report.to_csv().strip().splitlines()
    assert lines[0] == "coalition;value"
    assert lines[1] == "-;-15.0"
    assert "1+3;1.0" in lines


def test_report_total_skips_empty_set():
    report = report_from_values(2, 1, {(): 5.0, (1,): 1.0, (2,): 2.0})
    assert report.total() == 3.0


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=1, max_value=6), st.integers(min_value=0, max_value=63))
def test_masked_point_members_property(n, raw_mask):
    mask = raw_mask & ((1 << n) - 1)
    inst = Instance(x=tuple(float(i + 1) for i in range(n)), baseline=(0.0,) * n)
    point = masked_point(inst, coalition_members(mask))
    assert all(
        point[i] == (inst.x[i] if mask >> i & 1 else 0.0) for i in range(n)
    )
