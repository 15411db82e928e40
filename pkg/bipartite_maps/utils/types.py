from typing import TypedDict


class CensusRow(TypedDict):
    g: int
    mu: list[int]
    count: int


class RootedRow(TypedDict):
    g: int
    k: int  # root face degree
    mu: list[int]
    count: int


class MarkedRow(TypedDict):
    g: int
    mu: list[int]
    vertex: int
    face: int
    edge: int


class SeriesRow(TypedDict):
    n: int  # t (or z) exponent
    k: int  # x (or u) exponent
    mu: list[int]
    coeff: str  # "num/den"


class ClosedFormTermRow(TypedDict):
    alpha: list[int]
    beta: list[int]
    a: int
    b: int
    c: int
    sign: str  # "+" | "-" | ""
    coeff_num: int
    coeff_den: int


class ClosedFormDoc(TypedDict):
    g: int
    target: str  # F | L
    terms: list[ClosedFormTermRow]
    log_eta: str  # coefficient of ln(1/(1-eta)), "num/den"
    log_zeta: str  # coefficient of ln(1/(1+zeta)), "num/den"


class CheckResultRow(TypedDict):
    suite: str
    name: str
    passed: bool
    seconds: float
    detail: str


class SuiteReport(TypedDict):
    suite: str
    passed: bool
    seconds: float
    checks: list[CheckResultRow]


class KernelDoc(TypedDict):
    K: int
    nu_degree: int
    nu_terms: int
    factorization: bool
    antisymmetry: bool
    small_zeros: int
    large_zeros: int
    taylor: dict[str, dict[str, str]]  # "G_a^+" -> Greek combination
