from dataclasses import dataclass


@dataclass
class BenchRecord:
    s: int
    shape: str
    engine: str
    wall_time: float
    arithmetic_op_estimate: int
