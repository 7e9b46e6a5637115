import logging
import math
import time
from dataclasses import asdict, fields
from typing import List

import numpy as np
import pandas as pd

from bench_record import BenchRecord
from grid import IntGrid
from naive_oracle import NaiveOracle
from nength_transform import NengthTransform
from pattern_codec import PatternCodec
from pattern_support import PatternSupport
from shape import Shape


class BenchRunner:
    """
    Times one search product per (size, engine): the naive O(s^2) loop against nengthen, Hadamard and
    inverse transform. Operation counts are analytic estimates reported beside the timings, never measured.
    """

    ENGINES = ("naive", "fft")
    CSV_COLUMNS = ["s", "shape", "engine", "seconds", "op_estimate"]

    def __init__(
        self,
        oracle: NaiveOracle,
        transform: NengthTransform,
        codec: PatternCodec,
        naive_cap: int = 4096,
        repeats: int = 3,
        support_size: int = 4,
        sigma: int = 4,
    ):
        self.oracle = oracle
        self.transform = transform
        self.codec = codec
        self.naive_cap = naive_cap
        self.repeats = repeats
        self.support_size = support_size
        self.sigma = sigma

    def run(self, sizes: List[int], engines: List[str], seed: int, ndim: int = 1) -> List[BenchRecord]:
        records = []
        for size in sizes:
            shape = self.shape_for(size, ndim)
            rng = np.random.default_rng([seed, shape.s])
            pattern, text = self.__random_instance(rng, shape)
            for engine in engines:
                if engine == "naive" and shape.s > self.naive_cap:
                    logging.info(f"Skipping naive engine at s={shape.s} above the naive cap {self.naive_cap}")
                    continue
                seconds = self.__time(engine, pattern, text)
                records.append(BenchRecord(shape.s, str(shape), engine, seconds, self.op_estimate(engine, shape.s)))
                logging.info(f"Bench {engine} s={shape.s} shape={shape}: {seconds:.6f}s")
        return records

    def to_frame(self, records: List[BenchRecord]) -> pd.DataFrame:
        frame = pd.DataFrame([asdict(record) for record in records], columns=[f.name for f in fields(BenchRecord)])
        frame = frame.rename(columns={"wall_time": "seconds", "arithmetic_op_estimate": "op_estimate"})
        return frame[self.CSV_COLUMNS]

    def write_csv(self, records: List[BenchRecord], out):
        self.to_frame(records).to_csv(out, index=False)
        logging.info(f"Wrote {len(records)} bench records to {out}")

    @staticmethod
    def shape_for(size: int, ndim: int) -> Shape:
        """Near-cubic shape with ndim equal sides whose product is close to size."""
        side = max(1, round(size ** (1.0 / ndim)))
        return Shape((side,) * ndim)

    @staticmethod
    def op_estimate(engine: str, s: int) -> int:
        if engine == "naive":
            return s * s
        # three transforms at ~5 s log2 s each, plus the s-entry Hadamard product
        return int(3 * 5 * s * math.log2(s)) + s if s > 1 else 1

    def __random_instance(self, rng: np.random.Generator, shape: Shape):
        r = min(self.support_size, shape.s)
        linear = rng.choice(shape.s, size=r, replace=False)
        support = PatternSupport(shape, tuple(shape.unravel(int(v)) for v in linear))
        pattern = self.codec.encode_pattern(support, self.sigma + 1)
        text = IntGrid(rng.integers(1, self.sigma + 1, size=shape.dims))
        return pattern, text

    def __time(self, engine: str, pattern: IntGrid, text: IntGrid) -> float:
        best = math.inf
        for _ in range(max(1, self.repeats)):
            start = time.perf_counter()
            if engine == "naive":
                self.oracle.search_product(pattern, text)
            else:
                self.transform.fast_search_product([pattern, text])
            best = min(best, time.perf_counter() - start)
        return best
