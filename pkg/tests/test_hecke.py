from fractions import Fraction

import pytest

from rqseries import hecke
from rqseries.catalog import expand
from rqseries.hecke import Affine, Component, IllFormedSpec, IndefiniteThetaSpec, evaluate


def test_small_examples():
    assert evaluate("SIGMA_HECKE", 2).coeffs == [1, 1, -1]
    assert evaluate("HECKE3", 4).coeffs == [1, 0, 0, -2, 1]
    assert evaluate("HECKE1", 0).coeffs == [1]


@pytest.mark.parametrize("i", range(1, 9))
def test_double_sum_equals_series(i):
    assert evaluate(f"HECKE{i}", 600) == expand(f"f{i}", 600)


def test_sigma_double_sum():
    assert evaluate("SIGMA_HECKE", 600) == expand("sigma", 600)


def test_companion_differs_only_in_factor_sign():
    a = hecke.predefined("SIGMA_HECKE").components[0]
    b = hecke.predefined("SIXTH_ORDER_COMPANION").components[0]
    assert a.quad == b.quad and a.sign == b.sign
    assert a.factor == (-1, 2, 1) and b.factor == (1, 2, 1)


def test_predefined_shapes():
    h5 = hecke.predefined("HECKE5")
    assert len(h5.components) == 1 and h5.components[0].factor is None
    assert h5.components[0].quad == tuple(Fraction(x) for x in ("3/2", "3/2", 0, "-1/2", "-1/2"))
    h7 = hecke.predefined("HECKE7").components[0]
    assert h7.sign == (1, 1, 0) and h7.factor == (-1, 2, 1)
    with pytest.raises(KeyError):
        hecke.predefined("HECKE9")


@pytest.mark.parametrize("name", sorted(hecke.DISSECTIONS))
def test_dissections(name):
    assert evaluate(name, 1500) == hecke.dissected_from_hecke(name, 1500)


def test_json_round_trip():
    for name in hecke.names():
        spec = hecke.predefined(name)
        again = IndefiniteThetaSpec.from_json(spec.to_json())
        assert again.components == spec.components
        assert evaluate(again, 200) == evaluate(spec, 200)


def test_ill_formed_specs():
    with pytest.raises(IllFormedSpec):
        Component(0, Affine(0, -1), Affine(0, 1), (Fraction(1, 3), 0, 0, -1, 0))
    # half-integral exponent at n = 1
    bad = IndefiniteThetaSpec("bad", (Component(0, Affine(0, -1), Affine(0, 1), (Fraction(1, 2), 0, 0, 0, 0)),))
    with pytest.raises(IllFormedSpec):
        evaluate(bad, 10)
    # negative exponent
    neg = IndefiniteThetaSpec("neg", (Component(0, Affine(0, -1), Affine(0, 1), (1, 0, 0, -2, 0)),))
    with pytest.raises(IllFormedSpec):
        evaluate(neg, 10)
    # empty range at the starting shell
    empty = IndefiniteThetaSpec("empty", (Component(0, Affine(0, -1), Affine(-1, 1), (1, 0, 0, 0, 0)),))
    with pytest.raises(IllFormedSpec):
        evaluate(empty, 10)
    with pytest.raises(IllFormedSpec):
        IndefiniteThetaSpec("none", ())
