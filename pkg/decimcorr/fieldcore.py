"""
Exact arithmetic in GF(2^m) with log/antilog tables, trace maps and the small
number-theoretic helpers used by the verification workflow.

Elements are plain ints in polynomial-basis representation: bit i is the
coefficient of X^i. The generator g is the residue class of X, i.e. the int 2.
"""
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional

import numpy as np

from decimcorr.errors import (BadTower, DegreeTooLarge, DlogOfZero,
                              ElementOutOfRange, FieldDivisionByZero,
                              FieldWithoutCubicStructure, NonPrimitiveModulus,
                              NotCoprime, NotInSubfield, ParameterError,
                              ZeroInput)
from decimcorr.types import FieldInfo

logger = logging.getLogger(__name__)

FieldElement = int

MIN_DEGREE = 2
MAX_DEGREE = 20

# lexicographically smallest primitive polynomial over GF(2) per degree
PRIMITIVE_POLYNOMIALS = {
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x402B,
    15: 0x8003,
    16: 0x1002D,
    17: 0x20009,
    18: 0x40027,
    19: 0x80027,
    20: 0x100009,
}


@dataclass(frozen=True, eq=False)
class FieldCtx:
    """
    Immutable GF(2^m) context. Compared by identity so per-context tables can
    be memoized.
    """
    m: int
    modulus: int
    log_table: np.ndarray = field(repr=False)
    antilog_table: np.ndarray = field(repr=False)
    trace_table: np.ndarray = field(repr=False)
    # antilog repeated twice, indexable by a sum of two logs without a modulo
    antilog_wide: np.ndarray = field(repr=False)

    @property
    def q(self) -> int:
        return 1 << self.m

    @property
    def order(self) -> int:
        return (1 << self.m) - 1

    @property
    def g(self) -> FieldElement:
        return 2

    def element(self, x: int) -> FieldElement:
        x = int(x)
        if not 0 <= x < self.q:
            raise ElementOutOfRange(f"{x:#x} is not an element of GF(2^{self.m})")
        return x

    # scalar arithmetic

    @staticmethod
    def add(x: FieldElement, y: FieldElement) -> FieldElement:
        return x ^ y

    def mul(self, x: FieldElement, y: FieldElement) -> FieldElement:
        x, y = self.element(x), self.element(y)
        if x == 0 or y == 0:
            return 0
        return int(self.antilog_wide[self.log_table[x] + self.log_table[y]])

    def pow(self, x: FieldElement, n: int) -> FieldElement:
        x = self.element(x)
        if x == 0:
            if n < 0:
                raise FieldDivisionByZero("0 has no negative powers")
            return 1 if n == 0 else 0
        return int(self.antilog_table[(int(self.log_table[x]) * n) % self.order])

    def inv(self, x: FieldElement) -> FieldElement:
        x = self.element(x)
        if x == 0:
            raise FieldDivisionByZero("inverse of 0")
        return int(self.antilog_table[(-int(self.log_table[x])) % self.order])

    def frobenius(self, x: FieldElement, s: int = 1) -> FieldElement:
        """x^(2^s)."""
        x = self.element(x)
        if x == 0:
            return 0
        return int(self.antilog_table[(int(self.log_table[x]) * pow(2, s, self.order)) % self.order])

    def antilog(self, t: int) -> FieldElement:
        return int(self.antilog_table[t % self.order])

    def dlog(self, x: FieldElement) -> int:
        x = self.element(x)
        if x == 0:
            raise DlogOfZero("discrete log of 0 is undefined")
        return int(self.log_table[x])

    def trace(self, i: int, j: int, x: FieldElement) -> FieldElement:
        """Tr_{i/j}(x) = x + x^(2^j) + ... + x^(2^(i-j)) for x in GF(2^i)."""
        x = self.element(x)
        if j <= 0 or i <= 0 or i % j != 0:
            raise BadTower(f"Tr_{i}/{j}: {j} does not divide {i}")
        if self.m % i != 0:
            raise BadTower(f"GF(2^{i}) is not a subfield of GF(2^{self.m})")
        if self.frobenius(x, i) != x:
            raise NotInSubfield(f"{x:#x} does not lie in GF(2^{i})")
        result = 0
        y = x
        for _ in range(i // j):
            result ^= y
            y = self.frobenius(y, j)
        return result

    def is_cube(self, a: FieldElement) -> bool:
        if self.order % 3 != 0:
            raise FieldWithoutCubicStructure(f"3 does not divide 2^{self.m}-1")
        if self.element(a) == 0:
            raise ZeroInput("cubic character of 0 is undefined")
        return int(self.log_table[a]) % 3 == 0

    # vectorized companions; inputs are int arrays of valid elements

    def scale(self, c: FieldElement, xs: np.ndarray) -> np.ndarray:
        """c * xs elementwise."""
        if c == 0:
            return np.zeros_like(xs)
        prod = self.antilog_wide[self.log_table[c] + self.log_table[xs]]
        return np.where(xs != 0, prod, 0)

    def mul_array(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        xs, ys = np.broadcast_arrays(xs, ys)
        nonzero = (xs != 0) & (ys != 0)
        idx = np.where(nonzero, self.log_table[xs] + self.log_table[ys], 0)
        return np.where(nonzero, self.antilog_wide[idx], 0)

    def pow_array(self, xs: np.ndarray, n: int) -> np.ndarray:
        e = n % self.order
        logs = np.where(xs != 0, self.log_table[xs], 0)
        powers = self.antilog_table[(logs * e) % self.order]
        zero_value = 1 if n == 0 else 0
        return np.where(xs != 0, powers, zero_value)

    def trace_array(self, xs: np.ndarray) -> np.ndarray:
        return self.trace_table[xs]

    def character_array(self, xs: np.ndarray) -> np.ndarray:
        """(-1)^Tr_m(x) as int64."""
        return 1 - 2 * self.trace_table[xs].astype(np.int64)

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def subfield_elements(self, j: int) -> np.ndarray:
        """Sorted elements of GF(2^j) as the fixed points of x -> x^(2^j)."""
        if j <= 0 or self.m % j != 0:
            raise BadTower(f"GF(2^{j}) is not a subfield of GF(2^{self.m})")
        step = self.order // ((1 << j) - 1)
        nonzero = self.antilog_table[::step]
        return np.sort(np.concatenate([[0], nonzero]))


def parse_modulus(text: str) -> int:
    """Hex bit-vector, with or without 0x prefix."""
    try:
        modulus = int(text, 16)
    except ValueError:
        raise ParameterError(f"modulus {text!r} is not a hex bit-vector") from None
    if modulus < 1:
        raise ParameterError(f"modulus {text!r} is not a hex bit-vector")
    return modulus


def format_modulus(modulus: int) -> str:
    terms = []
    for i in range(modulus.bit_length() - 1, -1, -1):
        if modulus >> i & 1:
            terms.append("1" if i == 0 else "X" if i == 1 else f"X^{i}")
    return " + ".join(terms)


def field_new(m: int, modulus: Optional[int] = None) -> FieldCtx:
    if m > MAX_DEGREE:
        raise DegreeTooLarge(f"m={m} exceeds the table-size guard (m <= {MAX_DEGREE})")
    if m < MIN_DEGREE:
        raise ParameterError(f"m={m} is below the minimum degree {MIN_DEGREE}")
    if modulus is None:
        modulus = PRIMITIVE_POLYNOMIALS[m]
    elif modulus < 1 or modulus.bit_length() - 1 != m:
        raise NonPrimitiveModulus(f"modulus {modulus:#x} does not have degree {m}")
    return _build_field(m, modulus)


@lru_cache(maxsize=None)
def _build_field(m: int, modulus: int) -> FieldCtx:
    q = 1 << m
    order = q - 1
    logger.info(f"Building GF(2^{m}) tables, modulus {modulus:#x} ({format_modulus(modulus)})")

    antilog = np.zeros(order, dtype=np.int64)
    log = np.full(q, -1, dtype=np.int64)
    x = 1
    for t in range(order):
        if log[x] != -1:
            raise NonPrimitiveModulus(_non_primitive_reason(modulus, t))
        antilog[t] = x
        log[x] = t
        x <<= 1
        if x >> m & 1:
            x ^= modulus
    if x != 1:
        raise NonPrimitiveModulus(_non_primitive_reason(modulus, order))

    ctx = FieldCtx(
        m=m,
        modulus=modulus,
        log_table=log,
        antilog_table=antilog,
        trace_table=np.zeros(q, dtype=np.uint8),
        antilog_wide=np.concatenate([antilog, antilog]),
    )
    for p in prime_factors(order):
        if ctx.pow(ctx.g, order // p) == 1:
            raise NonPrimitiveModulus(_non_primitive_reason(modulus, order // p))

    # trace is GF(2)-linear: Tr(x) = parity(x & mask), mask bit i = Tr(X^i)
    mask = 0
    for i in range(m):
        mask |= ctx.trace(m, 1, 1 << i) << i
    bits = ctx.elements() & mask
    shift = 1
    while shift < m:
        bits ^= bits >> shift
        shift <<= 1
    ctx.trace_table[:] = bits & 1
    ctx.trace_table.flags.writeable = False
    for table in (log, antilog, ctx.antilog_wide):
        table.flags.writeable = False
    return ctx


def _non_primitive_reason(modulus: int, steps: int) -> str:
    import galois

    poly = galois.Poly.Int(modulus)
    if not poly.is_irreducible():
        factors, multiplicities = poly.factors()
        shape = " * ".join(f"({f})^{e}" if e > 1 else f"({f})" for f, e in zip(factors, multiplicities))
        return f"modulus {modulus:#x} ({format_modulus(modulus)}) is reducible: {shape}"
    return f"modulus {modulus:#x} ({format_modulus(modulus)}) is irreducible but not primitive: X has order dividing {steps}"


def field_info(ctx: FieldCtx) -> FieldInfo:
    return {
        "m": ctx.m,
        "q": ctx.q,
        "modulus": f"{ctx.modulus:#x}",
        "polynomial": format_modulus(ctx.modulus),
        "generator_order": ctx.order,
        "order_factors": prime_factors(ctx.order),
        "cube_count": ctx.order // 3 if ctx.order % 3 == 0 else None,
        "trace_of_one": int(ctx.trace_table[1]),
    }


# number theory helpers

def prime_factors(n: int) -> List[int]:
    factors = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            factors.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        factors.append(n)
    return factors


def v3(n: int) -> int:
    """Exponent of 3 in n."""
    if n < 1:
        raise ParameterError(f"v3 expects a positive integer, got {n}")
    e = 0
    while n % 3 == 0:
        n //= 3
        e += 1
    return e


def order_mod(n: int, a: int) -> int:
    """Multiplicative order of a modulo n."""
    if n < 1:
        raise ParameterError(f"modulus must be positive, got {n}")
    if math.gcd(a, n) != 1:
        raise NotCoprime(f"gcd({a}, {n}) = {math.gcd(a, n)}")
    if n == 1:
        return 1
    s, value = 1, a % n
    while value != 1:
        value = value * a % n
        s += 1
    return s


def v3_identity_holds(f: int) -> bool:
    """v3(2^f + 1) == v3(f) + 1 for odd f."""
    return v3(2 ** f + 1) == v3(f) + 1
