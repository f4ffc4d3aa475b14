"""IID depolarizing noise: sampling, error weights and parity-flip statistics.

Each qubit independently suffers X, Y or Z with probability p/3 apiece. The
flip probability of a degree-D stabilizer generator is computed two ways:
by exhaustive enumeration of the 4^(D+1) Paulis on its support
(:func:`p_flip_exact`) and by the closed form :func:`p_flip_closed`, which
follows from each support site anticommuting independently with
probability 2p/3.
"""

from __future__ import annotations

import functools
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from graphcheck.errors import DomainError, SupportTooLarge
from graphcheck.graph import Graph
from graphcheck.pauli import MAX_ENUMERATION_SUPPORT, SinglePauli, SparsePauli

BOUND_DOMAIN_MAX = 3 / 8
"""Largest p at which the quadratic lower bound is used."""

_U64 = np.uint64
_MASK64 = (1 << 64) - 1


def _check_probability(p: float, name: str = "p") -> None:
    if not (0.0 <= p <= 1.0):
        raise DomainError(f"{name} must lie in [0, 1], got {p!r}")


def _check_degree(D: int) -> None:
    if not isinstance(D, (int, np.integer)) or D < 1:
        raise DomainError(f"degree must be a positive integer, got {D!r}")


@dataclass(frozen=True)
class DepolarizingModel:
    p: float

    def __post_init__(self) -> None:
        _check_probability(self.p)


# ---------------------------------------------------------------------------
# Counter-based randomness
# ---------------------------------------------------------------------------


def _splitmix64(x: np.ndarray) -> np.ndarray:
    z = x + _U64(0x9E3779B97F4A7C15)
    z = (z ^ (z >> _U64(30))) * _U64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> _U64(27))) * _U64(0x94D049BB133111EB)
    return z ^ (z >> _U64(31))


def trial_keys(seed: int, trials: Sequence[int] | np.ndarray) -> np.ndarray:
    """64-bit per-trial keys mixed from ``(seed, trial index)``."""
    base = _splitmix64(np.array([seed & _MASK64], dtype=_U64))
    t = np.asarray(trials, dtype=_U64)
    return _splitmix64(base ^ _splitmix64(t ^ _U64(0x5851F42D4C957F2D)))


def uniforms(seed: int, trials: Sequence[int] | np.ndarray, vertices: Sequence[int] | np.ndarray) -> np.ndarray:
    """Uniform [0, 1) draws of shape ``(len(trials), len(vertices))``.

    Entry ``[i, j]`` depends only on ``(seed, trials[i], vertices[j])``, so
    any subset of trials or vertices reproduces the same numbers.
    """
    keys = trial_keys(seed, trials)[:, None]
    v = _splitmix64(np.asarray(vertices, dtype=_U64) ^ _U64(0xD1B54A32D192ED03))[None, :]
    h = _splitmix64(keys ^ v)
    return (h >> _U64(11)).astype(np.float64) * (1.0 / (1 << 53))


def letters_from_uniforms(u: np.ndarray, p: float) -> np.ndarray:
    """Map uniforms to SinglePauli codes: X, Y, Z on [0, p/3), [p/3, 2p/3), [2p/3, p)."""
    out = np.zeros(u.shape, dtype=np.uint8)
    third = p / 3.0
    out[u < p] = SinglePauli.Z
    out[u < 2 * third] = SinglePauli.Y
    out[u < third] = SinglePauli.X
    return out


def sample_letters(
    p: float,
    seed: int,
    trials: Sequence[int] | np.ndarray,
    vertices: Sequence[int] | np.ndarray,
) -> np.ndarray:
    """Depolarizing error letters for a block of trials restricted to ``vertices``."""
    _check_probability(p)
    return letters_from_uniforms(uniforms(seed, trials, vertices), p)


def sample_error(g: Graph, model: DepolarizingModel, rng_seed: int, trial: int = 0) -> SparsePauli:
    """Draw one IID depolarizing error on every vertex of ``g``.

    Deterministic in ``(rng_seed, trial)``; the letter on vertex ``v`` does
    not depend on the rest of the graph.
    """
    if g.vertex_count == 0:
        return SparsePauli()
    codes = sample_letters(model.p, rng_seed, [trial], np.arange(g.vertex_count))[0]
    hit = np.flatnonzero(codes)
    return SparsePauli({int(v): SinglePauli(int(codes[v])) for v in hit})


# ---------------------------------------------------------------------------
# Error weights and flip statistics
# ---------------------------------------------------------------------------


def error_probability(w: int, n: int, p: float) -> float:
    """Probability of one specific weight-``w`` Pauli on ``n`` sites: (p/3)^w (1-p)^(n-w)."""
    if n < 1:
        raise DomainError(f"support size must be positive, got {n}")
    if not 0 <= w <= n:
        raise DomainError(f"weight {w} outside 0..{n}")
    _check_probability(p)
    return (p / 3.0) ** w * (1.0 - p) ** (n - w)


@dataclass(frozen=True)
class FlipStats:
    """Per-weight counts of errors commuting/anticommuting with a degree-D generator."""

    degree: int
    commuting: tuple[int, ...]
    anticommuting: tuple[int, ...]

    @property
    def support_size(self) -> int:
        return self.degree + 1

    def totals(self) -> tuple[int, ...]:
        return tuple(c + a for c, a in zip(self.commuting, self.anticommuting))

    def rows(self) -> list[tuple[int, int, int]]:
        return [(w, c, a) for w, (c, a) in enumerate(zip(self.commuting, self.anticommuting))]


@functools.lru_cache(maxsize=None)
def flip_counts(D: int) -> FlipStats:
    """Tally every Pauli on the support of X_center Z_neighbours by weight and commutation.

    Errors are enumerated as symplectic bit masks ``(x, z)`` over the D+1
    sites, with site 0 the X-center and sites 1..D the Z-neighbours.

    Raises:
        SupportTooLarge: if D + 1 exceeds the enumeration cap of 12 sites.
    """
    _check_degree(D)
    n = D + 1
    if n > MAX_ENUMERATION_SUPPORT:
        raise SupportTooLarge(f"degree {D} needs {n} sites; cap is {MAX_ENUMERATION_SUPPORT}")
    stab_x = 1
    stab_z = ((1 << n) - 1) ^ 1
    z = np.arange(1 << n, dtype=np.uint32)[None, :]
    anti = np.zeros(n + 1, dtype=np.int64)
    total = np.zeros(n + 1, dtype=np.int64)
    block = max(1, (1 << 20) >> n)
    for start in range(0, 1 << n, block):
        x = np.arange(start, min(start + block, 1 << n), dtype=np.uint32)[:, None]
        weight = np.bitwise_count(x | z).ravel()
        sign = (np.bitwise_count(x & stab_z) + np.bitwise_count(z & stab_x)) & 1
        total += np.bincount(weight, minlength=n + 1)
        anti += np.bincount(weight, weights=sign.ravel(), minlength=n + 1).astype(np.int64)
    return FlipStats(
        degree=D,
        commuting=tuple(int(t - a) for t, a in zip(total, anti)),
        anticommuting=tuple(int(a) for a in anti),
    )


def p_flip_exact(D: int, p: float) -> float:
    """Parity-flip probability summed over the enumerated anticommuting errors."""
    _check_probability(p)
    stats = flip_counts(D)
    n = stats.support_size
    return math.fsum(a * error_probability(w, n, p) for w, a in enumerate(stats.anticommuting))


def p_flip_closed(D: int, p: float) -> float:
    """Closed form (1 - (1 - 4p/3)^(D+1)) / 2."""
    _check_degree(D)
    _check_probability(p)
    q = 4.0 * p / 3.0
    if q < 1.0:
        # expm1/log1p keep full relative precision at small p
        return -math.expm1((D + 1) * math.log1p(-q)) / 2.0
    return (1.0 - (1.0 - q) ** (D + 1)) / 2.0


def lower_bound(D: int, p: float) -> float:
    """Quadratic lower bound (2(D+1)/3) p - (4D(D+1)/9) p^2, valid on [0, 3/8]."""
    _check_degree(D)
    if not 0.0 <= p <= BOUND_DOMAIN_MAX:
        raise DomainError(f"lower bound is only used for p in [0, 3/8], got {p!r}")
    return 2 * (D + 1) / 3 * p - 4 * D * (D + 1) / 9 * p * p


def upper_bound(D: int, p: float) -> float:
    """Union bound (2(D+1)/3) p."""
    _check_degree(D)
    _check_probability(p)
    return 2 * (D + 1) / 3 * p
