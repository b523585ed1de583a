import numpy as np
import pytest

from decimcorr.errors import (BadTower, DegreeTooLarge, DlogOfZero,
                              ElementOutOfRange, FieldDivisionByZero,
                              FieldWithoutCubicStructure, NonPrimitiveModulus,
                              NotCoprime, NotInSubfield, ParameterError,
                              ZeroInput)
from decimcorr.fieldcore import (PRIMITIVE_POLYNOMIALS, field_info, field_new,
                                 format_modulus, order_mod, parse_modulus, v3,
                                 v3_identity_holds)


def clmul_mod(x, y, modulus, m):
    """Schoolbook carry-less product reduced modulo the polynomial."""
    result = 0
    while y:
        if y & 1:
            result ^= x
        y >>= 1
        x <<= 1
        if x >> m & 1:
            x ^= modulus
    return result


def test_default_moduli_are_smallest_primitive():
    import galois

    for m, modulus in PRIMITIVE_POLYNOMIALS.items():
        assert int(galois.primitive_poly(2, m, method="min")) == modulus, m


def test_field_new_defaults():
    ctx = field_new(2)
    assert ctx.modulus == 0b111
    assert ctx.q == 4

    ctx = field_new(6)
    assert ctx.q == 64
    assert ctx.order == 63
    assert ctx.pow(ctx.g, 63) == 1
    assert all(ctx.pow(ctx.g, 63 // p) != 1 for p in (3, 7))
    assert sorted(ctx.antilog_table.tolist()) == list(range(1, 64))


def test_field_new_is_memoized():
    assert field_new(6) is field_new(6, 0x43)
    assert field_new(6) is not field_new(6, 0x61)


def test_non_primitive_moduli_rejected():
    # (X^3 + X + 1)^2
    with pytest.raises(NonPrimitiveModulus, match="reducible"):
        field_new(6, 0x45)
    # X^6 + X^3 + 1, irreducible with X of order 9
    with pytest.raises(NonPrimitiveModulus, match="irreducible but not primitive"):
        field_new(6, 0x49)
    with pytest.raises(NonPrimitiveModulus):
        field_new(6, 0x83)
    with pytest.raises(NonPrimitiveModulus, match="degree"):
        field_new(6, -0x43)


def test_degree_guards():
    with pytest.raises(DegreeTooLarge):
        field_new(21)
    with pytest.raises(ParameterError):
        field_new(1)
    with pytest.raises(ValueError):
        field_new(22)


def test_arithmetic_matches_carryless_reference():
    for modulus in (0x43, 0x61):
        ctx = field_new(6, modulus)
        for x in range(64):
            assert ctx.add(x, x) == 0
            for y in range(64):
                assert ctx.mul(x, y) == clmul_mod(x, y, modulus, 6)


def test_inverse_and_powers():
    ctx = field_new(6)
    assert ctx.mul(ctx.g, ctx.inv(ctx.g)) == 1
    for x in range(1, 64):
        assert ctx.mul(x, ctx.inv(x)) == 1
        assert ctx.pow(x, -1) == ctx.inv(x)
        assert ctx.pow(x, 64) == x
    assert ctx.pow(0, 0) == 1
    assert ctx.pow(0, 5) == 0
    with pytest.raises(FieldDivisionByZero):
        ctx.inv(0)
    with pytest.raises(ZeroDivisionError):
        ctx.pow(0, -2)
    with pytest.raises(ElementOutOfRange):
        ctx.mul(64, 1)


def test_frobenius():
    ctx = field_new(6)
    for x in range(64):
        assert ctx.frobenius(x) == ctx.mul(x, x)
        assert ctx.frobenius(x, 6) == x


def test_trace():
    ctx = field_new(6)
    assert ctx.trace(6, 1, 0) == 0
    assert ctx.trace(6, 1, 1) == 0
    for y in ctx.subfield_elements(3):
        assert ctx.trace(6, 3, int(y)) == 0
    for x in range(64):
        assert ctx.trace(6, 1, x) == ctx.trace_table[x]
    # half the elements have trace one
    assert int(ctx.trace_table.sum()) == 32
    with pytest.raises(BadTower):
        ctx.trace(6, 4, 1)
    with pytest.raises(NotInSubfield):
        ctx.trace(3, 1, ctx.g)


def test_trace_odd_degree():
    ctx = field_new(5)
    assert ctx.trace(5, 1, 1) == 1


def test_subfield_elements():
    ctx = field_new(6)
    gf8 = ctx.subfield_elements(3)
    assert len(gf8) == 8
    assert all(ctx.frobenius(int(y), 3) == int(y) for y in gf8)
    assert len(ctx.subfield_elements(2)) == 4


def test_dlog():
    ctx = field_new(6)
    assert ctx.dlog(1) == 0
    assert ctx.dlog(ctx.g) == 1
    for x in range(1, 64):
        assert ctx.antilog(ctx.dlog(x)) == x
    with pytest.raises(DlogOfZero):
        ctx.dlog(0)


def test_is_cube():
    ctx = field_new(6)
    assert ctx.is_cube(1)
    assert not ctx.is_cube(ctx.g)
    assert ctx.is_cube(ctx.pow(ctx.g, 3))
    assert sum(ctx.is_cube(x) for x in range(1, 64)) == 21
    for x in range(1, 64):
        assert ctx.is_cube(ctx.pow(x, 3))
    with pytest.raises(ZeroInput):
        ctx.is_cube(0)
    with pytest.raises(FieldWithoutCubicStructure):
        field_new(5).is_cube(1)


def test_vectorized_companions():
    ctx = field_new(6)
    xs = ctx.elements()
    for n in (0, 1, 3, 9, 62, 63, 100):
        assert ctx.pow_array(xs, n).tolist() == [ctx.pow(int(x), n) for x in xs]
    c = ctx.antilog(17)
    assert ctx.scale(c, xs).tolist() == [ctx.mul(c, int(x)) for x in xs]
    assert ctx.scale(0, xs).tolist() == [0] * 64
    ys = xs[::-1]
    assert ctx.mul_array(xs, ys).tolist() == [ctx.mul(int(x), int(y)) for x, y in zip(xs, ys)]
    chars = ctx.character_array(xs)
    assert chars.dtype == np.int64
    assert set(chars.tolist()) == {-1, 1}


def test_tables_read_only():
    ctx = field_new(6)
    with pytest.raises(ValueError):
        ctx.log_table[1] = 5


def test_parse_and_format_modulus():
    assert parse_modulus("0x43") == 0x43
    assert parse_modulus("43") == 0x43
    with pytest.raises(ParameterError):
        parse_modulus("zz")
    with pytest.raises(ParameterError):
        parse_modulus("-43")
    with pytest.raises(ParameterError):
        parse_modulus("0")
    assert format_modulus(0x43) == "X^6 + X + 1"
    assert format_modulus(0x7) == "X^2 + X + 1"


def test_field_info():
    info = field_info(field_new(6))
    assert info["q"] == 64
    assert info["modulus"] == "0x43"
    assert info["order_factors"] == [3, 7]
    assert info["cube_count"] == 21
    assert info["trace_of_one"] == 0
    assert field_info(field_new(5))["cube_count"] is None


def test_v3_and_order():
    assert v3(9) == 2
    assert v3(1) == 0
    assert v3(513) == 3 == v3(9) + 1
    with pytest.raises(ParameterError):
        v3(0)
    assert order_mod(9, 2) == 6
    assert order_mod(7, 2) == 3
    assert order_mod(1, 5) == 1
    with pytest.raises(NotCoprime):
        order_mod(6, 2)


def test_v3_identity_small_sweep():
    assert all(v3_identity_holds(f) for f in range(1, 2000, 2))
