from fractions import Fraction

import pytest

from regen.rational import INF, as_scalar, format_scalar, parse_scalar, smin


def test_parse_forms():
    assert parse_scalar("3/4") == Fraction(3, 4)
    assert parse_scalar(" 6 / 8 ") == Fraction(3, 4)
    assert parse_scalar("5") == 5
    assert parse_scalar("inf") is INF


@pytest.mark.parametrize("bad", ["0.5", "1e3", "1/0", "", "a/b"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_scalar(bad)


def test_floats_refused():
    with pytest.raises(TypeError):
        as_scalar(0.5)
    with pytest.raises(TypeError):
        as_scalar(True)


def test_format_roundtrip():
    for x in (Fraction(2, 15), Fraction(4), INF):
        assert parse_scalar(format_scalar(x)) == x


def test_infinity_arithmetic():
    assert INF > Fraction(10**9)
    assert Fraction(3) < INF
    assert min(Fraction(2), INF) == 2
    assert smin(INF, Fraction(1, 2)) == Fraction(1, 2)
    assert 0 * INF == 0
    assert INF + 3 is INF
    assert 2 * INF is INF
    with pytest.raises(ArithmeticError):
        INF - INF
