import random
from fractions import Fraction

import pytest

from qqbraid.qscalar import (
    MINUS_ONE,
    ONE,
    Q,
    Q_INV,
    XI,
    ZERO,
    Scalar,
    ScalarDivisionError,
    ScalarPoleError,
    arith,
    parse_scalar,
    xi_const,
)


def S(num, den=(1,)):
    return Scalar(tuple(num), tuple(den))


def test_mul_xi_q_is_q2_minus_1():
    assert arith("mul", xi_const(), Q) == S((-1, 0, 1))


def test_div_cancels_common_factor():
    # (q^2 - 1) / (q^3 - q) = 1/q
    assert arith("div", S((-1, 0, 1)), S((0, -1, 0, 1))) == Q_INV


def test_add_additive_inverse():
    assert arith("add", Q, -Q) == ZERO


def test_xi_canonical_form():
    xi = xi_const()
    assert xi.num == (-1, 0, 1) and xi.den == (0, 1)
    assert str(xi) == "(q^2 - 1)/(q)"


def test_eval_at_one():
    assert Q_INV.eval_at_one() == 1
    assert xi_const().eval_at_one() == 0
    assert (S((1,)) / S((-1, 1))).eval_at_one  # construction fine
    with pytest.raises(ScalarPoleError):
        (S((1,)) / S((-1, 1))).eval_at_one()


def test_division_by_zero():
    with pytest.raises(ScalarDivisionError):
        arith("div", ONE, ZERO)


def test_canonical_form_unique():
    # same value from different raw fractions: (2-2q^2)/(-2q) = xi
    a = Scalar((2, 0, -2), (0, -2))
    assert a == xi_const()
    # denominator leading coefficient positive, content one
    assert a.den[-1] > 0


def _random_scalar(rng):
    def poly():
        deg = rng.randint(0, 2)
        cs = tuple(rng.randint(-3, 3) for _ in range(deg + 1))
        return cs

    num = poly()
    den = poly()
    while not any(den):
        den = poly()
    return Scalar(num, den)


def test_field_axioms_randomized():
    rng = random.Random(12345)
    for _ in range(1000):
        a, b, c = (_random_scalar(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert a * b == b * a
        assert a - a == ZERO
        if b != ZERO:
            assert (a / b) * b == a
        assert a * ONE == a and a + ZERO == a


def test_normalize_idempotent():
    rng = random.Random(999)
    for _ in range(300):
        a = _random_scalar(rng)
        again = Scalar(a.num, a.den)
        assert again.num == a.num and again.den == a.den


def test_eval_at_one_is_ring_hom():
    rng = random.Random(5)
    for _ in range(200):
        a, b = _random_scalar(rng), _random_scalar(rng)
        try:
            va, vb = a.eval_at_one(), b.eval_at_one()
            vs = (a + b).eval_at_one()
            vp = (a * b).eval_at_one()
        except ScalarPoleError:
            continue
        assert vs == va + vb
        assert vp == va * vb


def test_render_parse_round_trip():
    rng = random.Random(77)
    samples = [ZERO, ONE, MINUS_ONE, Q, Q_INV, XI, Scalar.q_power(-3)]
    samples += [_random_scalar(rng) for _ in range(200)]
    for a in samples:
        assert parse_scalar(str(a)) == a


def test_powers():
    assert Q**3 == Scalar.q_power(3)
    assert Q**-2 == Scalar.q_power(-2)
    assert XI**0 == ONE
