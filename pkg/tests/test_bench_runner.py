import numpy as np
import pytest

from bench_record import BenchRecord
from bench_runner import BenchRunner
from naive_oracle import NaiveOracle
from nength_transform import NengthTransform
from pattern_codec import PatternCodec
from shape import Shape


@pytest.fixture
def runner():
    return BenchRunner(NaiveOracle(), NengthTransform(), PatternCodec(), naive_cap=4096, repeats=1)


@pytest.mark.parametrize(
    "size, ndim, dims",
    [(256, 1, (256,)), (1000, 3, (10, 10, 10)), (4096, 2, (64, 64)), (1, 2, (1, 1)), (50, 2, (7, 7))],
)
def test_shape_for_picks_near_cubic_shapes(size, ndim, dims):
    assert BenchRunner.shape_for(size, ndim) == Shape(dims)


def test_op_estimates_are_analytic():
    assert BenchRunner.op_estimate("naive", 1024) == 1024**2
    assert BenchRunner.op_estimate("fft", 1024) == 15 * 1024 * 10 + 1024
    assert BenchRunner.op_estimate("fft", 1) == 1


def test_run_records_every_engine_below_the_naive_cap(runner):
    records = runner.run([64, 8192], ["naive", "fft"], seed=3)
    assert [(record.s, record.engine) for record in records] == [(64, "naive"), (64, "fft"), (8192, "fft")]
    assert all(record.wall_time >= 0 for record in records)


def test_to_frame_uses_csv_column_names(runner):
    frame = runner.to_frame([BenchRecord(4, "2x2", "fft", 0.5, 7)])
    assert list(frame.columns) == BenchRunner.CSV_COLUMNS
    assert frame.iloc[0].to_dict() == {"s": 4, "shape": "2x2", "engine": "fft", "seconds": 0.5, "op_estimate": 7}


@pytest.mark.bench
def test_fft_time_grows_far_slower_than_quadratic():
    runner = BenchRunner(NaiveOracle(), NengthTransform(), PatternCodec(), naive_cap=0, repeats=5)
    small, large = runner.run([2**12, 2**16], ["fft"], seed=0)
    assert large.wall_time / small.wall_time < 40


@pytest.mark.bench
def test_fft_beats_extrapolated_naive_time_tenfold():
    runner = BenchRunner(NaiveOracle(), NengthTransform(), PatternCodec(), naive_cap=4096, repeats=3)
    naive = runner.run([1024, 2048, 4096], ["naive"], seed=0)
    sizes = np.array([record.s for record in naive], dtype=np.float64)
    seconds = np.array([record.wall_time for record in naive])
    # least-squares a for seconds ~ a * s^2
    a = float(np.sum(seconds * sizes**2) / np.sum(sizes**4))
    (fft,) = runner.run([2**16], ["fft"], seed=0)
    assert fft.wall_time * 10 <= a * float(2**16) ** 2
