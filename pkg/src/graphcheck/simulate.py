"""Vectorised Monte Carlo sweeps of the one-shot test.

Trial ``t`` at master seed ``s`` draws the letter on vertex ``v`` from
``uniforms(s, [t], [v])``, exactly as :func:`graphcheck.noise.sample_error`
does, so a batched run reproduces the per-trial object path bit for bit.
The same uniforms are reused across p values (common random numbers), which
makes the accept count nonincreasing in p for a fixed seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import NormalDist

import numpy as np

from graphcheck.noise import letters_from_uniforms, uniforms
from graphcheck.protocol import TestPlan, accept_probability_analytic

DEFAULT_BLOCK = 8192

Z95 = NormalDist().inv_cdf(0.975)


def wilson_interval(successes: int, trials: int, z: float = Z95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion (95% by default)."""
    if trials <= 0:
        raise ValueError("trials must be positive")
    if not 0 <= successes <= trials:
        raise ValueError(f"successes {successes} outside 0..{trials}")
    phat = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    centre = (phat + z2 / (2 * trials)) / denom
    half = z / denom * math.sqrt(phat * (1 - phat) / trials + z2 / (4 * trials * trials))
    # clamp: rounding can push the bounds a hair past phat at 0 or 1
    return max(0.0, min(centre - half, phat)), min(1.0, max(centre + half, phat))


def _flip_layout(plan: TestPlan) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Measured vertices, centre mask, and the start offset of each stabilizer block."""
    sizes = np.array([1 + len(zs) for zs in plan.z_measure], dtype=np.int64)
    starts = np.concatenate(([0], np.cumsum(sizes)[:-1]))
    order = np.asarray(plan.support_order(), dtype=np.int64)
    is_centre = np.zeros(len(order), dtype=bool)
    is_centre[starts] = True
    return order, is_centre, starts


def accept_flags(plan: TestPlan, p: float, seed: int, trials: np.ndarray) -> np.ndarray:
    """Accept/reject for each trial index in ``trials``."""
    order, is_centre, starts = _flip_layout(plan)
    codes = letters_from_uniforms(uniforms(seed, trials, order), p)
    # X-measured centre flips on a Z component, Z-measured neighbours on an X component
    flips = np.where(is_centre[None, :], codes >> 1, codes & 1)
    parity = np.add.reduceat(flips, starts, axis=1) & 1
    return ~parity.any(axis=1)


def count_accepts(plan: TestPlan, p: float, trials: int, seed: int, block: int = DEFAULT_BLOCK) -> int:
    accepts = 0
    for start in range(0, trials, block):
        idx = np.arange(start, min(start + block, trials), dtype=np.uint64)
        accepts += int(accept_flags(plan, p, seed, idx).sum())
    return accepts


@dataclass(frozen=True)
class SweepRow:
    p: float
    trials: int
    accepts: int
    accept_rate: float
    wilson_low: float
    wilson_high: float
    analytic: float

    def contains_analytic(self) -> bool:
        return self.wilson_low <= self.analytic <= self.wilson_high


def simulate_point(plan: TestPlan, p: float, trials: int, seed: int) -> SweepRow:
    accepts = count_accepts(plan, p, trials, seed)
    low, high = wilson_interval(accepts, trials)
    return SweepRow(
        p=p,
        trials=trials,
        accepts=accepts,
        accept_rate=accepts / trials,
        wilson_low=low,
        wilson_high=high,
        analytic=accept_probability_analytic(plan.D, p, len(plan.test_vertices)),
    )


def run_sweep(plan: TestPlan, p_values, trials: int, seed: int) -> list[SweepRow]:
    """One row per p, in ascending p order."""
    return [simulate_point(plan, p, trials, seed) for p in sorted(p_values)]


def default_p_grid(p_goal: float, p_th: float, points: int = 20) -> list[float]:
    """Log-spaced grid on [p_goal/4, 4 p_th], capped at 1."""
    hi = min(4 * p_th, 1.0)
    return [float(x) for x in np.geomspace(p_goal / 4, hi, points)]


CSV_HEADER = "p,trials,accepts,accept_rate,wilson_low,wilson_high,analytic"


def format_csv(rows: list[SweepRow]) -> str:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            f"{r.p!r},{r.trials},{r.accepts},{r.accept_rate!r},"
            f"{r.wilson_low!r},{r.wilson_high!r},{r.analytic!r}"
        )
    return "\n".join(lines) + "\n"
