"""Stochastic and exact treatment of the repeated-excitation pump cycle.

The cycle starts with the ion parked in one stretched D3/2 sublevel.  A
fixed-polarization drive promotes it to the unique P1/2 sublevel allowed by
the selection rule (treated as instantaneous and saturating, the worst-case
continuous-drive limit).  The P1/2 state then decays: into the ground
manifold (emitting the photon we care about, tagged good or bad by which
P1/2 sublevel emitted it), or back into the shelf, where the drive either
recycles it or leaves it in a sublevel it cannot address (dark).

Two independent solvers share this chain:

* :func:`solve_exact` computes absorption probabilities of the underlying
  absorbing Markov chain by a linear solve.
* :func:`simulate` runs Monte Carlo trajectories.  The uniform deviate
  consumed by trajectory ``i`` at cycle ``k`` is element ``i`` of the
  counter-based Philox stream keyed by ``(seed, k)``, so results are
  bit-identical for a given ``(seed, config, n_trials)`` no matter how many
  workers process the trajectory blocks.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .atomic import (
    BranchingModel,
    Level,
    Polarization,
    ZeemanState,
    allowed_decays,
    default_barium_model,
    drive_target,
)
from .errors import DomainError, NumericError

__all__ = ["PumpCycleConfig", "ChainOutcome", "solve_exact", "simulate"]

_GOOD, _BAD, _DARK = -1, -2, -3


@dataclass(frozen=True)
class PumpCycleConfig:
    """Initial shelf sublevel, drive polarization, model and trajectory cutoff."""

    initial: ZeemanState = ZeemanState(Level.D32, +1.5)
    drive: Polarization = Polarization.SIGMA_MINUS
    model: BranchingModel = field(default_factory=default_barium_model)
    max_cycles: int = 1000

    def __post_init__(self) -> None:
        if self.initial.level is not Level.D32:
            raise DomainError(f"initial state must lie in the D3/2 shelf, got {self.initial}")
        if self.max_cycles < 1:
            raise DomainError("max_cycles must be at least 1")


@dataclass(frozen=True)
class ChainOutcome:
    """Branch probabilities, with per-outcome standard errors when sampled."""

    p_good: float
    p_bad: float
    p_dark: float
    se_good: float | None = None
    se_bad: float | None = None
    se_dark: float | None = None
    n_trials: int | None = None
    seed: int | None = None

    def as_dict(self) -> dict:
        return {
            "p_good": self.p_good,
            "p_bad": self.p_bad,
            "p_dark": self.p_dark,
            "se_good": self.se_good,
            "se_bad": self.se_bad,
            "se_dark": self.se_dark,
            "n_trials": self.n_trials,
            "seed": self.seed,
        }


class _CompiledChain:
    """Decay tables of the two-or-fewer transient P1/2 states, ready to walk."""

    def __init__(self, config: PumpCycleConfig):
        self.start = drive_target(config.initial, config.drive)
        p_states = sorted(
            {ZeemanState(Level.P12, +0.5), ZeemanState(Level.P12, -0.5)},
            key=lambda z: -z.mj,
        )
        self.p_index = {state: i for i, state in enumerate(p_states)}
        self.probs: list[np.ndarray] = []
        self.cum: list[np.ndarray] = []
        self.dest: list[np.ndarray] = []
        for state in p_states:
            probs, dests = [], []
            for lower, _pol, prob in allowed_decays(state, config.model):
                probs.append(prob)
                if lower.level is Level.S12:
                    dests.append(_GOOD if state == self.start else _BAD)
                else:
                    target = drive_target(lower, config.drive)
                    dests.append(_DARK if target is None else self.p_index[target])
            edges = np.cumsum(probs)
            edges[-1] = 1.0  # close the unit interval against rounding
            self.probs.append(np.asarray(probs))
            self.cum.append(edges)
            self.dest.append(np.asarray(dests, dtype=np.int8))


def solve_exact(config: PumpCycleConfig) -> ChainOutcome:
    """Absorption probabilities of the pump-cycle chain, by linear solve.

    Within floating point, ``p_good`` equals the geometric-series closed
    form br_493 / (1 - a^2 br_650) with ``a`` the amplitude of the decay
    back to the initialized sublevel.
    """
    chain = _CompiledChain(config)
    if chain.start is None:
        return ChainOutcome(0.0, 0.0, 1.0)
    n = len(chain.p_index)
    q = np.zeros((n, n))
    r = np.zeros((n, 3))  # columns: good, bad, dark
    for i in range(n):
        for prob, dest in zip(chain.probs[i], chain.dest[i]):
            if dest >= 0:
                q[i, dest] += prob
            else:
                r[i, -dest - 1] += prob
    try:
        absorbed = np.linalg.solve(np.eye(n) - q, r)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"absorbing-chain solve failed: {exc}") from exc
    p_good, p_bad, p_dark = absorbed[chain.p_index[chain.start]]
    return ChainOutcome(float(p_good), float(p_bad), float(p_dark))


def _cycle_uniforms(seed: int, cycle: int, n: int) -> np.ndarray:
    key = np.array([seed, cycle], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key)).random(n)


def _walk_block(chain: _CompiledChain, config: PumpCycleConfig, n_total: int,
                seed: int, lo: int, hi: int) -> np.ndarray:
    state = np.full(hi - lo, chain.p_index[chain.start], dtype=np.int8)
    for cycle in range(config.max_cycles):
        if not (state >= 0).any():
            break
        u = _cycle_uniforms(seed, cycle, n_total)[lo:hi]
        before = state.copy()  # one decay decision per trajectory per cycle
        for i, (edges, dests) in enumerate(zip(chain.cum, chain.dest)):
            here = before == i
            if not here.any():
                continue
            channel = np.searchsorted(edges, u[here], side="right")
            state[here] = dests[np.minimum(channel, len(dests) - 1)]
    state[state >= 0] = _DARK  # cutoff reached without emission
    return np.array(
        [(state == _GOOD).sum(), (state == _BAD).sum(), (state == _DARK).sum()],
        dtype=np.int64,
    )


def simulate(
    config: PumpCycleConfig, n_trials: int, seed: int, workers: int = 1
) -> ChainOutcome:
    """Monte Carlo estimate of the branch probabilities.

    Parameters
    ----------
    n_trials : int
        Number of independent trajectories.
    seed : int
        64-bit unsigned stream key.  Identical (seed, config, n_trials)
        give bit-identical results for any ``workers`` value.
    workers : int
        Trajectory blocks processed in parallel threads.  Purely a
        throughput knob; the counts reduce by plain summation.
    """
    if n_trials < 1:
        raise DomainError("n_trials must be at least 1")
    if not 0 <= seed < 2**64:
        raise DomainError("seed must fit in an unsigned 64-bit integer")
    if workers < 1:
        raise DomainError("workers must be at least 1")
    chain = _CompiledChain(config)
    if chain.start is None:
        counts = np.array([0, 0, n_trials], dtype=np.int64)
    else:
        bounds = np.linspace(0, n_trials, min(workers, n_trials) + 1).astype(int)
        blocks = [(lo, hi) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]
        if len(blocks) == 1:
            counts = _walk_block(chain, config, n_trials, seed, 0, n_trials)
        else:
            with ThreadPoolExecutor(max_workers=len(blocks)) as pool:
                parts = pool.map(
                    lambda b: _walk_block(chain, config, n_trials, seed, b[0], b[1]),
                    blocks,
                )
                counts = sum(parts)
    p = counts / n_trials
    se = np.sqrt(p * (1.0 - p) / n_trials)
    return ChainOutcome(
        float(p[0]), float(p[1]), float(p[2]),
        float(se[0]), float(se[1]), float(se[2]),
        n_trials=n_trials, seed=seed,
    )
