import pytest

from pmod.errors import CoordinateOverflow, DimensionError
from pmod.grid import COORD_MAX, as_point, box, flow, leq


def test_leq_examples():
    assert leq((0, 0), (1, 2))
    assert not leq((0, 3), (1, 2))
    assert leq((1, 1, 1), (1, 1, 1))


def test_leq_dimension_mismatch():
    with pytest.raises(DimensionError):
        leq((0, 0), (0, 0, 0))


def test_box_examples():
    assert box((0, 0), (1, 1)) == {(0, 0), (0, 1), (1, 0), (1, 1)}
    assert box((2, 2), (2, 2)) == {(2, 2)}
    assert box((0, 0), (2, 0)) == {(0, 0), (1, 0), (2, 0)}


def test_box_needs_comparable_corners():
    with pytest.raises(ValueError):
        box((1, 0), (0, 1))


def test_flow_examples():
    assert flow((0, 0), 1) == (1, 1)
    assert flow((3, -1), 0) == (3, -1)
    assert flow(flow((2, 2), 3), -3) == (2, 2)


def test_overflow_is_reported():
    with pytest.raises(CoordinateOverflow):
        flow((COORD_MAX, 0), 1)
    with pytest.raises(CoordinateOverflow):
        as_point((COORD_MAX + 1,))
