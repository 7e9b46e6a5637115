import logging
from dataclasses import dataclass
from functools import reduce
from typing import List, Tuple

import numpy as np
from scipy import fft

from grid import IntGrid, MatchGrid
from nength_errors import PrecisionError, ShapeMismatchError
from nength_grid import NengthGrid

EXACT_DOUBLE_LIMIT = 2**53


@dataclass(frozen=True)
class PrecisionReport:
    max_imaginary: float
    max_residual: float
    max_magnitude: float


class NengthTransform:
    """
    Nengthening and its inverse.

    Forward is the unnormalized DFT, inverse carries the 1/s factor, which makes the Hadamard product
    of two nengths the nength of their search product with no stray scale. scipy's pocketfft handles
    every dimension size (mixed radix, Bluestein for large primes) and splits independent 1-D lines
    across `workers` threads without changing the result.
    """

    def __init__(self, residual_gate: float = 0.25, workers: int = 1):
        self.residual_gate = residual_gate
        self.workers = workers

    def nengthen(self, g: IntGrid) -> NengthGrid:
        return NengthGrid(fft.fftn(g.values.astype(np.complex128), workers=self.workers))

    def hadamard(self, a: NengthGrid, b: NengthGrid) -> NengthGrid:
        if a.shape != b.shape:
            raise ShapeMismatchError(f"Hadamard product needs equal shapes. Got {a.shape} and {b.shape}")
        return NengthGrid(a.values * b.values)

    def unnengthen_to_int(self, g: NengthGrid) -> MatchGrid:
        return self.unnengthen_with_report(g)[0]

    def unnengthen_with_report(self, g: NengthGrid) -> Tuple[MatchGrid, PrecisionReport]:
        """
        Inverse transform, then round the real parts. Raises PrecisionError when the result is too far
        from an integer grid to trust: imaginary part or rounding residual beyond the gate, or a value
        at or past 2^53 where doubles stop representing every integer.
        """
        recovered = fft.ifftn(g.values, workers=self.workers)
        rounded = np.rint(recovered.real)
        report = PrecisionReport(
            max_imaginary=float(np.abs(recovered.imag).max(initial=0.0)),
            max_residual=float(np.abs(recovered.real - rounded).max(initial=0.0)),
            max_magnitude=float(np.abs(rounded).max(initial=0.0)),
        )
        logging.debug(f"Inverse transform over {g.shape}: {report}")
        if report.max_imaginary > self.residual_gate or report.max_residual > self.residual_gate:
            raise PrecisionError(
                f"Inverse transform is not integer-valued within {self.residual_gate}: "
                f"max imaginary {report.max_imaginary:.3g}, max residual {report.max_residual:.3g}"
            )
        if report.max_magnitude >= EXACT_DOUBLE_LIMIT:
            raise PrecisionError(f"Recovered magnitude {report.max_magnitude:.3g} is beyond exact double integers")
        return MatchGrid(rounded.astype(np.int64)), report

    # ---------------------------------------------------------------------------- #
    #                          Search products via duality                         #
    # ---------------------------------------------------------------------------- #

    def fast_search_product(self, grids: List[IntGrid]) -> MatchGrid:
        """The m-fold search product as one Hadamard product of m nengths."""
        if len(grids) == 0:
            raise ShapeMismatchError("A search product needs at least one grid")
        return self.unnengthen_to_int(reduce(self.hadamard, [self.nengthen(g) for g in grids]))

    def parseval_residual(self, g: IntGrid, g_n: NengthGrid) -> float:
        """Relative deviation of sum |G^N|^2 from s * sum g^2."""
        spatial = g.shape.s * float(np.sum(g.values.astype(np.float64) ** 2))
        spectral = float(np.sum(np.abs(g_n.values) ** 2))
        if spatial == 0.0:
            return spectral
        return abs(spectral - spatial) / spatial
