from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from bipartite_maps.series.partitions import Partition

Sign = Literal["+", "-", ""]


@dataclass
class CensusTable:
    n: int
    entries: dict[tuple[int, Partition], int] = field(default_factory=dict)

    def count(self, g: int, mu: Partition) -> int:
        return self.entries.get((g, tuple(mu)), 0)

    def total(self) -> int:
        return sum(self.entries.values())


@dataclass
class RootedTable:
    n: int
    entries: dict[tuple[int, int, Partition], int] = field(default_factory=dict)

    def count(self, g: int, k: int, mu: Partition) -> int:
        return self.entries.get((g, k, tuple(mu)), 0)


@dataclass(frozen=True)
class MarkedCounts:
    vertex: int = 0
    face: int = 0
    edge: int = 0

    def __add__(self, other: "MarkedCounts") -> "MarkedCounts":
        return MarkedCounts(
            self.vertex + other.vertex, self.face + other.face, self.edge + other.edge
        )


@dataclass
class MarkedTotals:
    n: int
    entries: dict[tuple[int, Partition], MarkedCounts] = field(default_factory=dict)

    def get(self, g: int, mu: Partition) -> MarkedCounts:
        return self.entries.get((g, tuple(mu)), MarkedCounts())


@dataclass(frozen=True)
class BasisTerm:
    """eta_alpha zeta_beta (1-eta)^-a (1+zeta)^-b (1 -+ uz)^-c.

    sign "+" means a pole at u = 1/z, "-" at u = -1/z, "" for u-free terms.
    """

    alpha: Partition
    beta: Partition
    a: int
    b: int
    c: int = 0
    sign: Sign = ""

    def greek_size(self) -> int:
        return sum(self.alpha) + sum(self.beta)

    def greek_length(self) -> int:
        return len(self.alpha) + len(self.beta)


@dataclass(frozen=True)
class ClosedFormTerm:
    term: BasisTerm
    coeff: Fraction


@dataclass
class ClosedFormF:
    g: int
    terms: list[ClosedFormTerm] = field(default_factory=list)

    def as_dict(self) -> dict[BasisTerm, Fraction]:
        return {t.term: t.coeff for t in self.terms}


@dataclass
class ClosedFormL:
    g: int
    terms: list[ClosedFormTerm] = field(default_factory=list)
    log_eta: Fraction = Fraction(0)  # coefficient of ln(1/(1-eta))
    log_zeta: Fraction = Fraction(0)  # coefficient of ln(1/(1+zeta))

    def as_dict(self) -> dict[BasisTerm, Fraction]:
        return {t.term: t.coeff for t in self.terms}


@dataclass
class FitReport:
    coefficients: dict[BasisTerm, Fraction]
    rank: int
    nullity: int
    fit_keys: int
    validation_keys: int
    residual_zero: bool
    pruned: list[BasisTerm] = field(default_factory=list)
    relaxed: list[BasisTerm] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


@dataclass
class CommandConfig:
    subcommand: Literal["census", "series", "closed-form", "kernel", "verify"]
    g: int = 1
    N: int = 12
    n: int = 6
    K: int = 4
    target: Literal["F", "L"] = "F"
    format: Literal["json", "text", "latex", "csv"] = "json"
    output: str | None = None  # JSON copy of the result
    workers: int | None = None
    seed: int = 0
    suite: str = "all"
    chart: Literal["txp", "zup"] = "txp"
    method: Literal["toprec", "fit"] = "toprec"
    table: Literal["labelled", "rooted", "marked"] = "labelled"
    override: bool = False
    slow: bool = False

    def validate(self) -> None:
        if self.g < 0:
            raise ValueError(f"Genus must be nonnegative, got {self.g}")
        if self.N < 1:
            raise ValueError(f"Truncation must be at least 1, got {self.N}")
        if self.n < 1:
            raise ValueError(f"Census size must be at least 1, got {self.n}")
        if self.K < 1:
            raise ValueError(f"Kernel cutoff must be at least 1, got {self.K}")
        if self.workers is not None and self.workers < 1:
            raise ValueError(f"Worker count must be positive, got {self.workers}")
        if self.subcommand != "closed-form":
            return
        if self.g < 1:
            raise ValueError("Closed forms start at genus 1")
        if self.method == "fit" and self.target == "L" and self.g < 2:
            raise ValueError("L_1 carries logarithms and has no rational fit; use --method toprec")


@dataclass
class CheckResult:
    suite: str
    name: str
    passed: bool
    seconds: float = 0.0
    detail: str = ""
