from typing import List, Optional, TypedDict


class FieldInfo(TypedDict):
    """
    Summary of a GF(2^m) context.
    """
    m: int
    q: int
    modulus: str
    polynomial: str
    generator_order: int
    order_factors: List[int]
    cube_count: Optional[int]
    trace_of_one: int


class DistributionEntry(TypedDict):
    value: int
    count: int


class DistributionPayload(TypedDict):
    """
    A correlation distribution, ascending by value.
    """
    k: int
    l: int
    d: int
    entries: List[DistributionEntry]


class SequencePayload(TypedDict):
    k: int
    l: int
    d: int
    u_period: int
    v_period: int
    u: str  # 0/1 characters, one period
    v: str


class FormReportPayload(TypedDict):
    """
    One (a, b) row of the quadratic form table.
    """
    a: str
    b: str
    radical_dim_gf2: int
    radical_dim_gf4: int
    form_type: str
    t_direct: int
    t_predicted: int


class LemmaCheckPayload(TypedDict):
    id: str
    passed: bool
    kind: str  # "claim", "internal" or "diagnostic"
    detail: str


class MomentPayload(TypedDict):
    computed: Optional[int]
    closed_form: int


class AnnotationPayload(TypedDict):
    id: str
    paper_value: str
    corrected_value: str
    status: str
    evidence: str


class StratumPayload(TypedDict):
    value: int
    cube: int
    noncube: int


class TheoreticalPayload(TypedDict):
    k: int
    n0: int
    n1: int
    n2: int
    n3: int
    entries: List[DistributionEntry]


class VerificationPayload(TypedDict):
    """
    Full reconciliation of brute force against every closed-form claim.
    """
    k: int
    l: int
    m: int
    q: int
    d: int
    modulus: str
    mode: str
    shifts_evaluated: int
    empirical: List[DistributionEntry]
    empirical_s: List[DistributionEntry]
    theoretical: TheoreticalPayload
    stratification: List[StratumPayload]
    moment1: MomentPayload
    moment2: MomentPayload
    lemma_checks: List[LemmaCheckPayload]
    annotations: List[AnnotationPayload]
    match: bool
