from fractions import Fraction

import pytest

import rcprod


def test_ray_class_order():
    assert rcprod.ray_class_order("Q(sqrt:-1)", "(3)") == 2
    assert rcprod.ray_class_order("Q(sqrt:3)", "(1)") == 2


def test_w0_mellin_one():
    v = rcprod.w0_mellin_one(2)
    assert v == Fraction(9, 10) * 2**12 * 720**2 / 6227020800
    assert abs(float(v) - 0.3068931069) < 1e-9


def test_reciprocal_identity():
    lhs, rhs, holds = rcprod.reciprocal_identity("Q(sqrt:-1)", "(3)", 5)
    assert holds and lhs == rhs == "2/5"


def test_cli_cover():
    code, doc, _ = rcprod.call("verify", "cover", "--field", "Q(sqrt:-1)", "--modulus", "(3)", "--xmax", "14")
    assert code == 0
    assert doc["extrema"]["covered"] is True
    assert doc["extrema"]["minimal_covering_X"] == 14


def test_usage_error():
    code, doc, err = rcprod.call()
    assert code == 2 and doc is None


def test_validation_error():
    with pytest.raises(ValueError):
        rcprod.ray_class_order("Q(sqrt:4)", "(1)")
