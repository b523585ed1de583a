"""
Exponential sums attached to the decimation d and the binary quadratic forms
Q_{a,b}(x) = Tr_m(a x^(2^l+1) + b x^(2^k+1)).

    S(a)   = sum_x (-1)^Tr_m(x^d + a x)
    T(a,b) = sum_x (-1)^Q_{a,b}(x)

T is classified through the radical of the polarized bilinear form
B(x, y) = Q(x+y) + Q(x) + Q(y), computed as the kernel of its Gram matrix
over the polynomial basis.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np

from decimcorr import gf2
from decimcorr.errors import (BadH, CubeInput, PredictionMismatch,
                              TooLargeForExhaustive, UnexpectedDimension,
                              ZeroInput)
from decimcorr.fieldcore import FieldCtx, FieldElement
from decimcorr.seqgen import BLOCK_CELLS, SeqParams, check_context
from decimcorr.types import FormReportPayload

logger = logging.getLogger(__name__)

# the (a, b) table is dumped for fields up to GF(2^10)
FORM_TABLE_MAX_DEGREE = 10

FORM_TYPES = ("I", "II", "III")


@dataclass(frozen=True)
class FormReport:
    a: FieldElement
    b: FieldElement
    radical_dim_gf2: int
    radical_dim_gf4: int
    form_type: str
    t_direct: int
    t_predicted: int

    def to_payload(self) -> FormReportPayload:
        return {
            "a": f"{self.a:#x}",
            "b": f"{self.b:#x}",
            "radical_dim_gf2": self.radical_dim_gf2,
            "radical_dim_gf4": self.radical_dim_gf4,
            "form_type": self.form_type,
            "t_direct": self.t_direct,
            "t_predicted": self.t_predicted,
        }


@dataclass(frozen=True)
class ThreeCoverTerms:
    """3 S(a) against T(a,0) + T(ra, delta) + T(r^-1 a, delta^-1)."""
    a: FieldElement
    s: int
    t_a_0: int
    t_ra_delta: int
    t_ria_delta_inv: int
    # same third term with delta in place of delta^-1
    t_ria_delta: int

    @property
    def holds(self) -> bool:
        return 3 * self.s == self.t_a_0 + self.t_ra_delta + self.t_ria_delta_inv

    @property
    def literal_holds(self) -> bool:
        return 3 * self.s == self.t_a_0 + self.t_ra_delta + self.t_ria_delta


# monomial tables, one per (context, exponent)

@lru_cache(maxsize=64)
def _power_table(ctx: FieldCtx, exponent: int) -> np.ndarray:
    table = ctx.pow_array(ctx.elements(), exponent)
    table.flags.writeable = False
    return table


def _nonzero(ctx: FieldCtx, a: FieldElement, what: str) -> FieldElement:
    a = ctx.element(a)
    if a == 0:
        raise ZeroInput(f"{what} requires a nonzero coefficient")
    return a


def character_sums(
    ctx: FieldCtx,
    coefficients: np.ndarray,
    monomial: np.ndarray,
    offset: Optional[np.ndarray] = None,
    threads: int = 1,
) -> np.ndarray:
    """
    For each coefficient c: sum over all x in GF(q) of (-1)^Tr_m(c*monomial[x] + offset[x]).
    """
    coefficients = np.asarray(coefficients, dtype=np.int64)
    rows = max(1, BLOCK_CELLS // ctx.q)
    blocks = [coefficients[i:i + rows] for i in range(0, len(coefficients), rows)]

    def run(block: np.ndarray) -> np.ndarray:
        values = ctx.mul_array(block[:, None], monomial[None, :])
        if offset is not None:
            values ^= offset[None, :]
        return ctx.q - 2 * np.count_nonzero(ctx.trace_array(values), axis=1).astype(np.int64)

    if threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, blocks))
    else:
        parts = [run(block) for block in blocks]
    if not parts:
        return np.zeros(0, dtype=np.int64)
    return np.concatenate(parts)


def _quadratic_offset(ctx: FieldCtx, params: SeqParams, b: FieldElement) -> Optional[np.ndarray]:
    if b == 0:
        return None
    return ctx.scale(b, _power_table(ctx, 2 ** params.k + 1))


def s_spectrum(
    ctx: FieldCtx,
    params: SeqParams,
    coefficients: Optional[np.ndarray] = None,
    threads: int = 1,
) -> np.ndarray:
    """S(a) for each a; defaults to a = g^tau for tau = 0 .. q-2."""
    check_context(ctx, params)
    if coefficients is None:
        coefficients = ctx.antilog_table
    return character_sums(ctx, coefficients, ctx.elements(), _power_table(ctx, params.d_reduced), threads)


def t_spectrum(
    ctx: FieldCtx,
    params: SeqParams,
    coefficients: np.ndarray,
    b: FieldElement,
    threads: int = 1,
) -> np.ndarray:
    """T(a, b) for each a in coefficients and one fixed b."""
    check_context(ctx, params)
    b = ctx.element(b)
    monomial = _power_table(ctx, 2 ** params.l + 1)
    return character_sums(ctx, coefficients, monomial, _quadratic_offset(ctx, params, b), threads)


def gauss_spectrum(
    ctx: FieldCtx,
    params: SeqParams,
    h: int,
    coefficients: np.ndarray,
    threads: int = 1,
) -> np.ndarray:
    check_context(ctx, params)
    _check_h(params, h)
    return character_sums(ctx, coefficients, _power_table(ctx, h), None, threads)


def s_sum(ctx: FieldCtx, params: SeqParams, a: FieldElement) -> int:
    a = _nonzero(ctx, a, "S(a)")
    return int(s_spectrum(ctx, params, np.array([a]))[0])


def t_sum(ctx: FieldCtx, params: SeqParams, a: FieldElement, b: FieldElement) -> int:
    a = _nonzero(ctx, a, "T(a, b)")
    return int(t_spectrum(ctx, params, np.array([a]), b)[0])


def _check_h(params: SeqParams, h: int) -> None:
    if h < 1 or (2 ** params.k + 1) % h:
        raise BadH(f"h={h} does not divide 2^{params.k}+1")


def admissible_h(params: SeqParams) -> List[int]:
    n = 2 ** params.k + 1
    return [h for h in range(1, n + 1) if n % h == 0]


def gauss_sum(ctx: FieldCtx, params: SeqParams, h: int, a: FieldElement) -> int:
    """sum_x (-1)^Tr_m(a x^h) for h | 2^k + 1."""
    _check_h(params, h)
    a = _nonzero(ctx, a, "the Gauss sum")
    return int(gauss_spectrum(ctx, params, h, np.array([a]))[0])


def gauss_sum_predicted(ctx: FieldCtx, params: SeqParams, h: int, a: FieldElement) -> int:
    """(h-1) 2^k when a is an h-th power class g^(hi), -2^k otherwise."""
    _check_h(params, h)
    a = _nonzero(ctx, a, "the Gauss sum")
    # h | 2^k+1 | q-1, so gcd(h, q-1) = h
    if ctx.dlog(a) % h == 0:
        return (h - 1) * 2 ** params.k
    return -(2 ** params.k)


def three_cover_terms(ctx: FieldCtx, params: SeqParams, a: FieldElement) -> ThreeCoverTerms:
    a = _nonzero(ctx, a, "the three-cover identity")
    r_inv = ctx.inv(params.r)
    delta_inv = ctx.inv(params.delta)
    return ThreeCoverTerms(
        a=a,
        s=s_sum(ctx, params, a),
        t_a_0=t_sum(ctx, params, a, 0),
        t_ra_delta=t_sum(ctx, params, ctx.mul(params.r, a), params.delta),
        t_ria_delta_inv=t_sum(ctx, params, ctx.mul(r_inv, a), delta_inv),
        t_ria_delta=t_sum(ctx, params, ctx.mul(r_inv, a), params.delta),
    )


def three_cover_check(ctx: FieldCtx, params: SeqParams, a: FieldElement) -> bool:
    terms = three_cover_terms(ctx, params, a)
    if terms.holds != terms.literal_holds:
        logger.warning(f"three-cover identity differs between delta and delta^-1 readings at a={a:#x}")
    return terms.holds


def quadratic_form_values(ctx: FieldCtx, params: SeqParams, a: FieldElement, b: FieldElement,
                          xs: np.ndarray) -> np.ndarray:
    """Q_{a,b}(x) in {0, 1} for each x."""
    values = ctx.scale(a, ctx.pow_array(xs, 2 ** params.l + 1))
    if b:
        values ^= ctx.scale(b, ctx.pow_array(xs, 2 ** params.k + 1))
    return ctx.trace_array(values)


def quadratic_form_value(ctx: FieldCtx, params: SeqParams, a: FieldElement, b: FieldElement,
                         x: FieldElement) -> int:
    return int(quadratic_form_values(ctx, params, ctx.element(a), ctx.element(b), np.array([ctx.element(x)]))[0])


def polar_matrix(ctx: FieldCtx, params: SeqParams, a: FieldElement, b: FieldElement) -> np.ndarray:
    """Gram matrix M[i][j] = B(X^i, X^j) of the polarized form."""
    basis = 1 << np.arange(params.m, dtype=np.int64)
    q_basis = quadratic_form_values(ctx, params, a, b, basis)
    q_pairs = quadratic_form_values(ctx, params, a, b, (basis[:, None] ^ basis[None, :]).ravel())
    return q_pairs.reshape(params.m, params.m) ^ q_basis[:, None] ^ q_basis[None, :]


def radical(ctx: FieldCtx, params: SeqParams, a: FieldElement, b: FieldElement) -> Tuple[int, List[FieldElement]]:
    """GF(2)-dimension and a basis of V_m(a, b)."""
    check_context(ctx, params)
    a = _nonzero(ctx, a, "the radical")
    b = ctx.element(b)
    kernel = gf2.nullspace(polar_matrix(ctx, params, a, b))
    basis = gf2.pack_rows(kernel)
    return len(basis), basis


def linearized_values(ctx: FieldCtx, params: SeqParams, a: FieldElement, b: FieldElement,
                      xs: np.ndarray) -> np.ndarray:
    """
    L(x) = a x^(2^l) + a^(2^(m-l)) x^(2^(m-l)) + (b + b^(2^k)) x^(2^k), with
    B(x, y) = Tr_m(y L(x)), so the radical is the root set of L.
    """
    m, l, k = params.m, params.l, params.k
    values = ctx.scale(a, ctx.pow_array(xs, 2 ** l))
    values ^= ctx.scale(ctx.frobenius(a, m - l), ctx.pow_array(xs, 2 ** (m - l)))
    values ^= ctx.scale(b ^ ctx.frobenius(b, k), ctx.pow_array(xs, 2 ** k))
    return values


def linearized_kernel(ctx: FieldCtx, params: SeqParams, a: FieldElement, b: FieldElement) -> np.ndarray:
    """Sorted roots of L in GF(q)."""
    xs = ctx.elements()
    return xs[linearized_values(ctx, params, a, b, xs) == 0]


def kernels_agree(ctx: FieldCtx, params: SeqParams, a: FieldElement, b: FieldElement) -> bool:
    _, basis = radical(ctx, params, a, b)
    return bool(np.array_equal(gf2.span(basis), linearized_kernel(ctx, params, a, b)))


def radical_is_gf4_space(ctx: FieldCtx, params: SeqParams, basis: List[FieldElement]) -> bool:
    """delta * x stays in the radical for every basis vector x."""
    points = gf2.span(basis)
    images = ctx.scale(params.delta, np.asarray(basis, dtype=np.int64))
    return bool(np.isin(images, points).all())


def predicted_t_value(k: int, dim_gf4: int) -> int:
    """T(a, b) from the GF(4)-dimension of the radical."""
    values: Dict[int, int] = {0: -(2 ** k), 1: 2 ** (k + 1), 2: -(2 ** (k + 2))}
    if dim_gf4 not in values:
        raise UnexpectedDimension(f"GF(4)-dimension {dim_gf4} outside {{0, 1, 2}}")
    return values[dim_gf4]


def classify(ctx: FieldCtx, params: SeqParams, a: FieldElement, b: FieldElement) -> FormReport:
    dim, _ = radical(ctx, params, a, b)
    if dim % 2:
        raise UnexpectedDimension(f"odd radical dimension {dim} at a={a:#x}, b={b:#x}")
    dim_gf4 = dim // 2
    predicted = predicted_t_value(params.k, dim_gf4)

    t = t_sum(ctx, params, a, b)
    v = (params.m - dim) // 2
    form_type = "I" if t > 0 else "II" if t == 0 else "III"
    if t != 0 and abs(t) != 2 ** (params.m - v):
        raise PredictionMismatch(f"|T({a:#x}, {b:#x})| = {abs(t)} but codimension 2v = {2 * v} gives {2 ** (params.m - v)}")
    if t != predicted:
        raise PredictionMismatch(f"T({a:#x}, {b:#x}) = {t}, dimension {dim_gf4} over GF(4) predicts {predicted}")
    return FormReport(
        a=a,
        b=b,
        radical_dim_gf2=dim,
        radical_dim_gf4=dim_gf4,
        form_type=form_type,
        t_direct=t,
        t_predicted=predicted,
    )


def noncube_constraint_check(ctx: FieldCtx, params: SeqParams, a: FieldElement) -> bool:
    """At least one of T(ra, delta), T(r^-1 a, delta) equals -2^k for noncube a."""
    a = _nonzero(ctx, a, "the noncube constraint")
    if ctx.is_cube(a):
        raise CubeInput(f"{a:#x} is a cube")
    target = -(2 ** params.k)
    t_ra = t_sum(ctx, params, ctx.mul(params.r, a), params.delta)
    t_ria = t_sum(ctx, params, ctx.mul(ctx.inv(params.r), a), params.delta)
    return t_ra == target or t_ria == target


def form_table(ctx: FieldCtx, params: SeqParams) -> List[FormReport]:
    """FormReport for every a = g^tau and b in (0, delta, delta^2)."""
    check_context(ctx, params)
    if params.m > FORM_TABLE_MAX_DEGREE:
        raise TooLargeForExhaustive(f"the (a, b) table is limited to GF(2^{FORM_TABLE_MAX_DEGREE})")
    bs = (0, params.delta, ctx.mul(params.delta, params.delta))
    logger.info(f"Classifying {len(bs) * params.order} quadratic forms")
    return [classify(ctx, params, ctx.antilog(tau), b) for tau in range(params.order) for b in bs]
