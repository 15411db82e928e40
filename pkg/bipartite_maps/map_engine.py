import logging
from functools import cached_property
from typing import Callable, Literal

from bipartite_maps.census.census import census, rooted_counts
from bipartite_maps.coords.change_of_variables import CoordData, solve_coords
from bipartite_maps.coords.kernel import KernelData, kernel_build
from bipartite_maps.fit.basis import enumerate_basis
from bipartite_maps.fit.solver import fit_closed_form, fit_determined
from bipartite_maps.greek.field import GreekElem
from bipartite_maps.greek.toprec import closed_form_f, toprec_F
from bipartite_maps.greek.unroot import unroot_L
from bipartite_maps.models import (
    BasisTerm,
    CensusTable,
    ClosedFormF,
    ClosedFormL,
    ClosedFormTerm,
    FitReport,
    MarkedTotals,
    RootedTable,
)
from bipartite_maps.series.series import Series
from bipartite_maps.tutte.engine import GenusFamily, compute_F, unroot_series
from bipartite_maps.utils.types import SuiteReport

logger = logging.getLogger(__name__)

Method = Literal["toprec", "fit"]


class MapEngine:
    """Truncation, cutoffs and caches shared by every command and check."""

    def __init__(
        self,
        N: int = 12,
        n: int = 6,
        K: int = 4,
        workers: int | None = None,
        override: bool = False,
        seed: int = 0,
    ):
        self.N = N
        self.n = n
        self.K = K
        self.workers = workers
        self.override = override
        self.seed = seed
        self._families: dict[int, GenusFamily] = {}
        self._symbolic: dict[int, GreekElem] = {}
        self._unrooted: dict[int, ClosedFormL] = {}
        self._truncations: dict[int, MapEngine] = {N: self}

    @cached_property
    def coords(self) -> CoordData:
        return solve_coords(self.N)

    # --- Series ---

    def family(self, G: int) -> GenusFamily:
        for cached_G, fam in self._families.items():
            if cached_G >= G:
                return fam
        fam = compute_F(G, self.N)
        self._families[G] = fam
        return fam

    def rooted(self, g: int, chart: Literal["txp", "zup"] = "txp") -> Series:
        F = self.family(g).F[g]
        return self.coords.to_zu(F) if chart == "zup" else F

    def unrooted(self, g: int, chart: Literal["txp", "zup"] = "txp") -> Series:
        L = unroot_series(self.family(g).F[g])
        return self.coords.to_zu(L) if chart == "zup" else L

    def at_truncation(self, N: int) -> "MapEngine":
        """An engine with the same cutoffs whose series are truncated at z^N."""
        if N not in self._truncations:
            self._truncations[N] = MapEngine(N, self.n, self.K, self.workers, self.override, self.seed)
        return self._truncations[N]

    def fit_series(self, g: int, target: Literal["F", "L"] = "F") -> Callable[[int], Series]:
        def series_at(N: int) -> Series:
            engine = self.at_truncation(N)
            return engine.rooted(g, "zup") if target == "F" else engine.unrooted(g, "zup")

        return series_at

    # --- Census ---

    def census(self, n: int | None = None) -> tuple[CensusTable, MarkedTotals]:
        return census(n or self.n, self.workers, self.override)

    def rooted_census(self, n: int | None = None) -> RootedTable:
        return rooted_counts(n or self.n, self.workers, self.override)

    # --- Kernel ---

    def kernel(self, K: int | None = None) -> KernelData:
        return kernel_build(K or self.K)

    # --- Closed forms ---

    def symbolic_F(self, g: int) -> GreekElem:
        for h in range(1, g + 1):
            if h not in self._symbolic:
                self._symbolic[h] = toprec_F(h, self._symbolic)
        return self._symbolic[g]

    def symbolic_L(self, g: int) -> ClosedFormL:
        if g not in self._unrooted:
            self._unrooted[g] = unroot_L(g, self.symbolic_F(g))
        return self._unrooted[g]

    def closed_form(
        self, g: int, target: Literal["F", "L"] = "F", method: Method = "toprec"
    ) -> ClosedFormF | ClosedFormL:
        logger.info(f"Closed form of {target}_{g} by {method}")
        if method == "fit":
            return fit_closed_form(g, target, self.fit_series(g, target), self.N, workers=self.workers)
        if target == "F":
            return closed_form_f(g, self.symbolic_F(g))
        return self.symbolic_L(g)

    def fit(
        self,
        g: int,
        target: Literal["F", "L"] = "F",
        K: int | None = None,
        basis: list[BasisTerm] | None = None,
    ) -> tuple[list[ClosedFormTerm], FitReport]:
        if basis is None:
            basis = enumerate_basis(g, target)
        return fit_determined(self.fit_series(g, target), basis, self.N, g, target, K, self.workers)

    # --- Verification ---

    def verify(self, suite: str = "all", slow: bool = False) -> list[SuiteReport]:
        from bipartite_maps.verify.checks import run_suites

        return run_suites(self, suite, slow)
