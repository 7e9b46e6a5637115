import logging
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import List

import numpy as np
from scipy.linalg import dft

from grid import ComplexGrid, IntGrid
from naive_oracle import NaiveOracle
from nength_errors import LabSizeError, ShapeMismatchError
from nength_transform import NengthTransform
from shape import Shape


@dataclass(frozen=True)
class LevelCirculant:
    """
    Dense n-level circulant matrix of a grid: a circulant of circulant blocks nested n deep.

    Rows and columns are numbered by the row-major linearization of the multi-indices (alpha) and
    (beta); entry ((alpha), (beta)) holds the grid value at (beta - alpha) mod shape.
    """

    shape: Shape
    matrix: np.ndarray

    def row_index(self, alpha) -> int:
        return self.shape.linear(alpha)

    def multi_index(self, row: int):
        return self.shape.unravel(row)

    def entry(self, alpha, beta):
        return self.matrix[self.row_index(alpha), self.row_index(beta)]


@dataclass(frozen=True)
class DiagonalizationReport:
    off_diag_max: float
    diag_vs_nength_max: float


class CirculantLab:
    """
    Desk-scale check of the matrix algebra behind nengths.

    Builds explicit s x s n-level circulant matrices and unitary Fourier matrices so that the product
    equivalence and the diagonalization can be compared entry by entry with the naive search product
    and with the fast transform. Everything here is O(s^2) memory or worse, so sizes are capped.
    """

    def __init__(self, max_size: int = 64, oracle: NaiveOracle = None, transform: NengthTransform = None):
        self.max_size = max_size
        self.oracle = oracle or NaiveOracle()
        self.transform = transform or NengthTransform()

    def expand(self, g: IntGrid) -> LevelCirculant:
        self.__check_size(g.shape)
        dims = np.array(g.shape.dims).reshape(-1, 1, 1)
        coords = np.indices(g.shape.dims).reshape(g.shape.n, -1)
        # offsets[w, row, col] = beta_w - alpha_w reduced mod s_w
        offsets = (coords[:, np.newaxis, :] - coords[:, :, np.newaxis]) % dims
        return LevelCirculant(g.shape, g.values[tuple(offsets)])

    @lru_cache(maxsize=32)
    def build_fourier(self, shape: Shape) -> np.ndarray:
        """Kronecker product of per-axis unitary DFT matrices, axis 0 outermost to match row-major order."""
        self.__check_size(shape)
        fourier = reduce(np.kron, [dft(d, scale="sqrtn") for d in shape.dims])
        fourier.setflags(write=False)
        return fourier

    def verify_diagonalization(self, g: IntGrid) -> DiagonalizationReport:
        """
        Computes F . G~ . F^-1 with F^-1 taken as the conjugate transpose.

        With entry ((alpha), (beta)) = g[beta - alpha], diagonal entry k is the nength read at -k, so the
        diagonal is laid out on the grid at (-k) mod shape before comparing with nengthen(g).
        """
        circulant = self.expand(g)
        fourier = self.build_fourier(g.shape)
        diagonalized = fourier @ circulant.matrix.astype(np.complex128) @ fourier.conj().T
        diagonal = np.diagonal(diagonalized)
        arranged = ComplexGrid(diagonal.reshape(g.shape.dims)).reverse().values
        nength = self.transform.nengthen(g).values
        scale = max(float(np.abs(diagonalized).max(initial=0.0)), 1.0)
        off_diagonal = diagonalized - np.diag(diagonal)
        report = DiagonalizationReport(
            off_diag_max=float(np.abs(off_diagonal).max(initial=0.0)) / scale,
            diag_vs_nength_max=float(np.abs(arranged - nength).max(initial=0.0)) / scale,
        )
        logging.debug(f"Diagonalization of {g.shape} grid: {report}")
        return report

    def verify_product_equivalence(self, grids: List[IntGrid]) -> bool:
        """
        The matrix product of the grids' circulants must hold, at ((alpha), (beta)), the m-fold search
        product at beta - alpha. Equivalently the product matrix is the circulant of that search product.
        """
        if len(grids) not in (2, 3):
            raise ShapeMismatchError(f"Product equivalence is checked for 2 or 3 grids. Got {len(grids)}")
        if any(g.shape != grids[0].shape for g in grids):
            raise ShapeMismatchError("Product equivalence needs grids of equal shape")
        matrix_product = reduce(np.matmul, [self.expand(g).matrix for g in grids])
        search_product = self.oracle.chain_search_product(grids)
        return bool(np.array_equal(matrix_product, self.expand(search_product).matrix))

    def __check_size(self, shape: Shape):
        if shape.s > self.max_size:
            raise LabSizeError(f"Lab matrices are limited to s <= {self.max_size}. Got s={shape.s} for {shape}")

