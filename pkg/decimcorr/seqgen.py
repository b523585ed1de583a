"""
The m-sequence u_t = Tr_m(g^t), its decimation v_t = Tr_m(g^(dt)) with
d = (2^(lk)+1)/(2^l+1), and their periodic cross-correlation.

Correlations are computed two independent ways: directly from the two binary
sequences, and as the character sum over GF(q)* of (-1)^Tr_m(x^d + a x).
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from decimcorr.errors import (BadParameters, FieldMismatch, InvariantFailure,
                              ParameterError, ShiftOutOfRange,
                              TooLargeForExhaustive)
from decimcorr.fieldcore import MAX_DEGREE, FieldCtx, FieldElement, field_new
from decimcorr.types import DistributionPayload, SequencePayload

logger = logging.getLogger(__name__)

# exhaustive O(q^2) sweeps are allowed up to GF(2^14)
EXHAUSTIVE_MAX_DEGREE = 14
# float64 cells materialized per block of the shift sweep
BLOCK_CELLS = 1 << 22


@dataclass(frozen=True)
class SeqParams:
    k: int
    l: int
    m: int
    q: int
    d: int
    r: FieldElement
    delta: FieldElement
    e: int
    modulus: int

    @property
    def order(self) -> int:
        return self.q - 1

    @property
    def d_reduced(self) -> int:
        return self.d % self.order

    @property
    def v_period(self) -> int:
        return self.order // math.gcd(self.order, self.d)

    @property
    def plus_value(self) -> int:
        return -1 + 2 ** (self.k + 1)

    @property
    def minus_value(self) -> int:
        return -1 - 2 ** (self.k + 1)

    @property
    def n1_value(self) -> int:
        return -1 - 2 ** self.k


@dataclass(frozen=True)
class BinarySequence:
    bits: np.ndarray
    period: int

    def __post_init__(self):
        if self.period < 1 or len(self.bits) != self.period:
            raise ParameterError(f"sequence has {len(self.bits)} bits but period {self.period}")

    def at(self, t: int) -> int:
        return int(self.bits[t % self.period])

    def weight(self) -> int:
        return int(np.count_nonzero(self.bits))

    def to_string(self) -> str:
        return "".join("1" if b else "0" for b in self.bits)


@dataclass(frozen=True)
class CorrelationDistribution:
    """Multiset of correlation values, ascending by value."""
    entries: Tuple[Tuple[int, int], ...]

    @classmethod
    def from_values(cls, values: np.ndarray) -> "CorrelationDistribution":
        uniq, counts = np.unique(np.asarray(values, dtype=np.int64), return_counts=True)
        return cls(tuple((int(v), int(c)) for v, c in zip(uniq, counts)))

    @classmethod
    def from_counts(cls, counts: Dict[int, int]) -> "CorrelationDistribution":
        return cls(tuple(sorted((int(v), int(c)) for v, c in counts.items())))

    def as_dict(self) -> Dict[int, int]:
        return dict(self.entries)

    def count(self, value: int) -> int:
        return self.as_dict().get(value, 0)

    def total(self) -> int:
        return sum(c for _, c in self.entries)

    def values(self) -> Tuple[int, ...]:
        return tuple(v for v, _ in self.entries)

    def shifted(self, offset: int) -> "CorrelationDistribution":
        return CorrelationDistribution(tuple((v + offset, c) for v, c in self.entries))

    def to_payload(self, params: SeqParams) -> DistributionPayload:
        return {
            "k": params.k,
            "l": params.l,
            "d": params.d,
            "entries": [{"value": v, "count": c} for v, c in self.entries],
        }


def merge_distributions(parts: Iterable[CorrelationDistribution]) -> CorrelationDistribution:
    """Pointwise count addition of partial distributions over disjoint shift ranges."""
    merged: Dict[int, int] = {}
    for part in parts:
        for value, count in part.entries:
            merged[value] = merged.get(value, 0) + count
    return CorrelationDistribution.from_counts(merged)


def seq_params(k: int, l: int, ctx: Optional[FieldCtx] = None) -> SeqParams:
    if not (isinstance(k, int) and isinstance(l, int)):
        raise BadParameters("k and l must be integers")
    if k < 3 or k % 2 == 0:
        raise BadParameters(f"k must be odd and >= 3, got {k}")
    if l % 2 == 0 or not 0 < l < k:
        raise BadParameters(f"l must be odd with 0 < l < k, got l={l}, k={k}")
    if math.gcd(k, l) != 1:
        raise BadParameters(f"k and l must be coprime, gcd({k}, {l}) = {math.gcd(k, l)}")
    m = 2 * k
    if m > MAX_DEGREE:
        raise BadParameters(f"2k = {m} exceeds the field-size limit {MAX_DEGREE}")

    if ctx is None:
        ctx = field_new(m)
    elif ctx.m != m:
        raise FieldMismatch(f"field has degree {ctx.m}, parameters need {m}")

    numerator, denominator = 2 ** (l * k) + 1, 2 ** l + 1
    if numerator % denominator:
        raise InvariantFailure(f"2^{l}+1 does not divide 2^{l * k}+1")
    d = numerator // denominator
    q = ctx.q
    r = ctx.pow(ctx.g, 2 ** k - 1)
    delta = ctx.pow(r, d)
    params = SeqParams(k=k, l=l, m=m, q=q, d=d, r=r, delta=delta, e=k - l, modulus=ctx.modulus)

    if math.gcd(params.e, m) != 2:
        raise InvariantFailure(f"gcd(k-l, m) = {math.gcd(params.e, m)}, expected 2")
    if ctx.mul(delta, delta) ^ delta ^ 1 != 0:
        raise InvariantFailure(f"delta = {delta:#x} is not a primitive cube root of unity")
    if params.v_period != 3 * (2 ** k - 1):
        raise InvariantFailure(f"period of v is {params.v_period}, expected {3 * (2 ** k - 1)}")
    logger.info(f"Parameters k={k}, l={l}: q={q}, d={d}, delta={delta:#x}")
    return params


def check_context(ctx: FieldCtx, params: SeqParams) -> None:
    if ctx.m != params.m or ctx.modulus != params.modulus:
        raise FieldMismatch(
            f"parameters were built over modulus {params.modulus:#x} (m={params.m}), "
            f"context uses {ctx.modulus:#x} (m={ctx.m})"
        )


def msequence(ctx: FieldCtx, params: SeqParams) -> BinarySequence:
    check_context(ctx, params)
    bits = ctx.trace_array(ctx.antilog_table).astype(np.uint8)
    return BinarySequence(bits=bits, period=params.order)


def decimated(ctx: FieldCtx, params: SeqParams) -> BinarySequence:
    """v with its minimal period recorded; index it modulo that period."""
    check_context(ctx, params)
    t = np.arange(params.v_period, dtype=np.int64)
    bits = ctx.trace_array(ctx.antilog_table[(params.d_reduced * t) % params.order]).astype(np.uint8)
    return BinarySequence(bits=bits, period=params.v_period)


def decimation_consistent(ctx: FieldCtx, params: SeqParams) -> bool:
    """v_t == u_(dt mod q-1) for every t in one full period of u."""
    u, v = msequence(ctx, params), decimated(ctx, params)
    t = np.arange(params.order, dtype=np.int64)
    return bool(np.array_equal(v.bits[t % v.period], u.bits[(params.d_reduced * t) % params.order]))


def cross_correlation(u: BinarySequence, v: BinarySequence, tau: int, n: int) -> int:
    """sum_{t<n} (-1)^(u_(t+tau) + v_t), both sequences indexed modulo their periods."""
    if n < 1:
        raise ParameterError(f"correlation length must be positive, got {n}")
    if not 0 <= tau <= n - 1:
        raise ShiftOutOfRange(f"shift {tau} outside [0, {n - 1}]")
    t = np.arange(n, dtype=np.int64)
    disagreements = np.count_nonzero(u.bits[(t + tau) % u.period] ^ v.bits[t % v.period])
    return int(n - 2 * disagreements)


def cross_correlation_field(ctx: FieldCtx, params: SeqParams, tau: int) -> int:
    """sum over x in GF(q)* of (-1)^Tr_m(x^d + a x) with a = g^tau."""
    check_context(ctx, params)
    if not 0 <= tau <= params.order - 1:
        raise ShiftOutOfRange(f"shift {tau} outside [0, {params.order - 1}]")
    a = ctx.antilog(tau)
    xs = ctx.antilog_table
    values = ctx.pow_array(xs, params.d) ^ ctx.scale(a, xs)
    return int(params.order - 2 * np.count_nonzero(ctx.trace_array(values)))


def _check_shifts(params: SeqParams, shifts: Optional[np.ndarray]) -> np.ndarray:
    if shifts is None:
        return np.arange(params.order, dtype=np.int64)
    shifts = np.asarray(shifts, dtype=np.int64)
    if shifts.size and (shifts.min() < 0 or shifts.max() > params.order - 1):
        raise ShiftOutOfRange(f"shifts must lie in [0, {params.order - 1}]")
    return shifts


def correlation_spectrum(
    ctx: FieldCtx,
    params: SeqParams,
    shifts: Optional[np.ndarray] = None,
    threads: int = 1,
) -> np.ndarray:
    """
    C_tau for every requested shift (all q-1 shifts by default), in request order.

    The +-1 table of v is built once; each block of shifts is a slice of the
    circulant of u's +-1 table multiplied against it.
    """
    check_context(ctx, params)
    shifts = _check_shifts(params, shifts)
    n = params.order
    u_chars = ctx.character_array(ctx.antilog_table).astype(np.float64)
    t = np.arange(n, dtype=np.int64)
    v_chars = ctx.character_array(ctx.antilog_table[(params.d_reduced * t) % n]).astype(np.float64)
    circulant = sliding_window_view(np.concatenate([u_chars, u_chars[:-1]]), n)

    rows = max(1, BLOCK_CELLS // n)
    blocks = [shifts[i:i + rows] for i in range(0, len(shifts), rows)]

    def run(block: np.ndarray) -> np.ndarray:
        return np.rint(circulant[block] @ v_chars).astype(np.int64)

    logger.info(f"Correlation sweep: {len(shifts)} shifts, {len(blocks)} blocks, {threads} thread(s)")
    if threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, blocks))
    else:
        parts = [run(block) for block in blocks]
    if not parts:
        return np.zeros(0, dtype=np.int64)
    return np.concatenate(parts)


def require_exhaustive(params: SeqParams) -> None:
    if params.m > EXHAUSTIVE_MAX_DEGREE:
        raise TooLargeForExhaustive(
            f"exhaustive sweep over GF(2^{params.m}) exceeds the GF(2^{EXHAUSTIVE_MAX_DEGREE}) ceiling; "
            "use the sampled mode"
        )


def distribution(ctx: FieldCtx, params: SeqParams, threads: int = 1) -> CorrelationDistribution:
    """
    Exact distribution over all q-1 shifts. Shift ranges are swept
    independently and merged, so the result does not depend on `threads`.
    """
    require_exhaustive(params)
    ranges = np.array_split(np.arange(params.order, dtype=np.int64), max(1, threads))

    def partial(shifts: np.ndarray) -> CorrelationDistribution:
        return CorrelationDistribution.from_values(correlation_spectrum(ctx, params, shifts))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(partial, ranges))
    else:
        parts = [partial(r) for r in ranges]
    return merge_distributions(parts)


def s_distribution(ctx: FieldCtx, params: SeqParams, threads: int = 1) -> CorrelationDistribution:
    """Distribution of S(g^tau) = C_tau + 1 over all shifts."""
    return distribution(ctx, params, threads).shifted(1)


def sequence_payload(ctx: FieldCtx, params: SeqParams) -> SequencePayload:
    u, v = msequence(ctx, params), decimated(ctx, params)
    return {
        "k": params.k,
        "l": params.l,
        "d": params.d,
        "u_period": u.period,
        "v_period": v.period,
        "u": u.to_string(),
        "v": v.to_string(),
    }
