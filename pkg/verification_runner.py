import itertools
import logging
from dataclasses import dataclass, field
from typing import List

import numpy as np

from alphabet import Alphabet
from circulant_lab import CirculantLab
from grid import IntGrid, MatchGrid
from naive_oracle import NaiveOracle
from pattern_support import PatternSupport
from query import Query
from search_engine import SearchEngine
from shape import Shape

PARSEVAL_TOLERANCE = 1e-9
LAB_TOLERANCE = 1e-9


@dataclass
class VerificationSummary:
    trials: int = 0
    passed: int = 0
    failures: List[str] = field(default_factory=list)
    worst_residual: float = 0.0
    worst_imaginary: float = 0.0
    worst_parseval: float = 0.0
    lab_checks: int = 0
    worst_off_diagonal: float = 0.0
    worst_diagonal_deviation: float = 0.0

    @property
    def failed(self) -> int:
        return self.trials - self.passed

    @property
    def all_passed(self) -> bool:
        return self.failed == 0


class VerificationRunner:
    """
    Randomized engine-versus-oracle trials.

    Each trial draws a text, an alphabet and a support from its own seed, then checks:
     - the fast search product against the naive one, entry for entry
     - Parseval's identity on the text's nength
     - find_all lookups against sliding_match for every possible query, wrapping
     - match_nowrap lookups against sliding_match for every possible query, not wrapping
    With lab checks on, each trial also checks diagonalization and 2- and 3-grid product equivalence
    on a small explicit circulant.
    """

    def __init__(
        self,
        engine: SearchEngine,
        oracle: NaiveOracle,
        lab: CirculantLab,
        max_dim: int = 8,
        max_sigma: int = 4,
        max_r: int = 4,
        lab_max_size: int = 16,
        sabotage: bool = False,
    ):
        self.engine = engine
        self.oracle = oracle
        self.lab = lab
        self.max_dim = max_dim
        self.max_sigma = max_sigma
        self.max_r = max_r
        self.lab_max_size = lab_max_size
        self.sabotage = sabotage

    def run(self, trials: int, seed: int, with_lab: bool = False) -> VerificationSummary:
        summary = VerificationSummary()
        if trials == 0:
            logging.warning("Verification requested with zero trials. Nothing was checked")
        for trial in range(trials):
            rng = np.random.default_rng([seed, trial])
            summary.trials += 1
            try:
                problems = self.__run_trial(rng, summary)
                if with_lab:
                    problems += self.__run_lab_trial(rng, summary)
            except Exception as ex:
                logging.exception(f"Verification trial {trial} (seed {seed}) raised")
                problems = [f"raised {type(ex).__name__}: {ex}"]
            if problems:
                failure = f"seed {seed} trial {trial}: " + "; ".join(problems)
                logging.error(f"Verification failure. {failure}")
                summary.failures.append(failure)
            else:
                summary.passed += 1
        logging.info(f"Verification finished: {summary.passed}/{summary.trials} trials passed")
        return summary

    # ---------------------------------------------------------------------------- #
    #                                Engine trials                                 #
    # ---------------------------------------------------------------------------- #

    def __run_trial(self, rng: np.random.Generator, summary: VerificationSummary) -> List[str]:
        shape = self.__random_shape(rng, self.max_dim)
        sigma = int(rng.integers(1, self.max_sigma + 1))
        alphabet = Alphabet(tuple(chr(ord("a") + i) for i in range(sigma)))
        text = IntGrid(rng.integers(0, sigma + 1, size=shape.dims))
        support = self.__random_support(rng, shape, int(rng.integers(1, min(self.max_r, shape.s) + 1)))
        instance = f"shape {shape}, sigma {sigma}, cells {support.cells}, text {text.flat.tolist()}"
        problems = []

        pattern = self.engine.codec.encode_pattern(support, alphabet.base)
        transform = self.engine.transform
        fast, report = transform.unnengthen_with_report(
            transform.hadamard(transform.nengthen(pattern), transform.nengthen(text))
        )
        if self.sabotage:
            fast = self.__sabotaged(fast)
        summary.worst_residual = max(summary.worst_residual, report.max_residual)
        summary.worst_imaginary = max(summary.worst_imaginary, report.max_imaginary)
        if fast != self.oracle.search_product(pattern, text):
            problems.append(f"fast search product differs from naive ({instance})")

        parseval = transform.parseval_residual(text, transform.nengthen(text))
        summary.worst_parseval = max(summary.worst_parseval, parseval)
        if parseval > PARSEVAL_TOLERANCE:
            problems.append(f"Parseval residual {parseval:.3g} ({instance})")

        index = self.engine.build_index(text, alphabet)
        tables = {True: self.engine.find_all(index, support), False: self.engine.match_nowrap(text, support, alphabet)}
        for wrap, table in tables.items():
            expected = self.oracle.sliding_table(text, support, wrap)
            for digits in itertools.product(range(1, sigma + 1), repeat=support.r):
                found = self.engine.lookup(table, Query(digits))
                if found != expected.get(digits, set()):
                    problems.append(f"query {digits} wrap={wrap} found {sorted(found)} ({instance})")
                    break
        return problems

    def __sabotaged(self, grid: MatchGrid) -> MatchGrid:
        values = grid.values.copy()
        values.flat[0] += 1
        return MatchGrid(values)

    # ---------------------------------------------------------------------------- #
    #                                  Lab trials                                  #
    # ---------------------------------------------------------------------------- #

    def __run_lab_trial(self, rng: np.random.Generator, summary: VerificationSummary) -> List[str]:
        shape = self.__random_lab_shape(rng)
        grids = [IntGrid(rng.integers(-4, 5, size=shape.dims)) for _ in range(3)]
        problems = []
        report = self.lab.verify_diagonalization(grids[0])
        summary.lab_checks += 1
        summary.worst_off_diagonal = max(summary.worst_off_diagonal, report.off_diag_max)
        summary.worst_diagonal_deviation = max(summary.worst_diagonal_deviation, report.diag_vs_nength_max)
        if report.off_diag_max >= LAB_TOLERANCE or report.diag_vs_nength_max >= LAB_TOLERANCE:
            problems.append(f"diagonalization of {shape} grid off by {report}")
        for m in (2, 3):
            if not self.lab.verify_product_equivalence(grids[:m]):
                problems.append(f"{m}-grid product equivalence failed on {shape}")
        return problems

    # ---------------------------------------------------------------------------- #
    #                                Random inputs                                 #
    # ---------------------------------------------------------------------------- #

    def __random_shape(self, rng: np.random.Generator, max_dim: int) -> Shape:
        n = int(rng.integers(1, 4))
        return Shape(tuple(int(d) for d in rng.integers(1, max_dim + 1, size=n)))

    def __random_lab_shape(self, rng: np.random.Generator) -> Shape:
        while True:
            shape = self.__random_shape(rng, self.lab_max_size)
            if shape.s <= self.lab_max_size:
                return shape

    def __random_support(self, rng: np.random.Generator, shape: Shape, r: int) -> PatternSupport:
        linear = rng.choice(shape.s, size=r, replace=False)
        return PatternSupport(shape, tuple(shape.unravel(int(v)) for v in linear))
