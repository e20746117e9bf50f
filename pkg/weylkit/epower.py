#!/usr/bin/env python3
"""
Entangling power of two-qubit gates.

e_p(U) is the average linear entropy E = 1 - tr(rho^2) that U produces from
uniformly random product states. The closed form in chamber coordinates is

    e_p = (1/18) [3 - (cos2c1 cos2c2 + cos2c2 cos2c3 + cos2c3 cos2c1)]

and a Monte-Carlo estimator of the defining average serves as an oracle.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from shared.config import get_settings
from shared.errors import NotNormalizedError

from .linalg import assert_unitary
from .weyl import WeylPoint

logger = logging.getLogger(__name__)

MAX_ENTANGLING_POWER = 2.0 / 9.0

# Samples per seed block; fixed so estimates do not depend on scheduling
SEED_BLOCK = 4096
MIN_MC_SAMPLES = 1000


@dataclass(frozen=True)
class EpEstimate:
    """Monte-Carlo estimate of the entangling power."""
    mean: float
    std_error: float
    n_samples: int

    def agrees_with(self, value: float, sigmas: float = 4.0) -> bool:
        return abs(self.mean - value) <= sigmas * self.std_error

    def __str__(self) -> str:
        return f"{self.mean:.6f} ± {self.std_error:.2g} (n={self.n_samples})"


def _reduced_states(states: np.ndarray, traced_qubit: int) -> np.ndarray:
    """Reduced density matrices of an (n, 4) batch of two-qubit states."""
    amplitudes = states.reshape(-1, 2, 2)
    if traced_qubit == 2:
        return np.einsum("nab,ncb->nac", amplitudes, amplitudes.conj())
    return np.einsum("nab,nac->nbc", amplitudes, amplitudes.conj())


def _linear_entropies(states: np.ndarray, traced_qubit: int = 2) -> np.ndarray:
    rho = _reduced_states(states, traced_qubit)
    purity = np.einsum("nab,nba->n", rho, rho).real
    return 1.0 - purity


def linear_entropy(state, traced_qubit: int = 2, tol: float | None = None) -> float:
    """E = 1 - tr(rho^2) of a normalized two-qubit state, in [0, 1/2].

    Raises:
        NotNormalizedError: the state norm differs from 1 by more than tol
    """
    if tol is None:
        tol = get_settings().tolerances.normalization
    if traced_qubit not in (1, 2):
        raise ValueError("traced_qubit must be 1 or 2")
    state = np.asarray(state, dtype=np.complex128).reshape(4)
    norm = float(np.linalg.norm(state))
    if abs(norm - 1.0) > tol:
        raise NotNormalizedError("State is not normalized", {"norm": norm})
    return float(_linear_entropies(state[np.newaxis, :], traced_qubit)[0])


def entangling_power_closed(c) -> float:
    """Closed-form entangling power at chamber coordinates c."""
    c1, c2, c3 = WeylPoint.of(c)
    x, y, z = np.cos(2 * c1), np.cos(2 * c2), np.cos(2 * c3)
    return float((3.0 - (x * y + y * z + z * x)) / 18.0)


def _haar_qubits(rng: np.random.Generator, n: int) -> np.ndarray:
    """n Haar-random single-qubit states from normalized complex Gaussians."""
    z = rng.standard_normal((n, 2)) + 1j * rng.standard_normal((n, 2))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def sample_product_states(rng: np.random.Generator, n: int) -> np.ndarray:
    """(n, 4) batch of |psi1> ⊗ |psi2> with each factor Haar-random."""
    psi1 = _haar_qubits(rng, n)
    psi2 = _haar_qubits(rng, n)
    return np.einsum("na,nb->nab", psi1, psi2).reshape(n, 4)


def sample_product_state(rng: np.random.Generator) -> np.ndarray:
    """A single random product state."""
    return sample_product_states(rng, 1)[0]


def _block_sums(u: np.ndarray, seed: np.random.SeedSequence, size: int) -> tuple[float, float]:
    rng = np.random.default_rng(seed)
    states = sample_product_states(rng, size) @ u.T
    entropies = _linear_entropies(states)
    return math.fsum(entropies), math.fsum(entropies * entropies)


def _task_sums(u: np.ndarray, blocks) -> list[tuple[float, float]]:
    return [_block_sums(u, seed, size) for seed, size in blocks]


def entangling_power_mc(u, n: int, seed: int, workers: int | None = None,
                        chunk_size: int | None = None) -> EpEstimate:
    """Monte-Carlo estimate of the entangling power of u.

    Sample index i is drawn from the generator of block i // SEED_BLOCK, and
    each block gets its own child of ``SeedSequence(seed)``. Block sums are
    combined in block order, so ``workers`` and ``chunk_size`` (samples per
    scheduled task, rounded to whole blocks) never change the estimate.

    Raises:
        NotUnitaryError: u is not unitary
        ValueError: n is below MIN_MC_SAMPLES
    """
    settings = get_settings()
    u = assert_unitary(u)
    if n < MIN_MC_SAMPLES:
        raise ValueError(f"n must be at least {MIN_MC_SAMPLES}, got {n}")
    workers = workers or settings.workers
    chunk_size = chunk_size or settings.mc_chunk_size
    if chunk_size < 1:
        raise ValueError("chunk_size must be positive")

    sizes = [SEED_BLOCK] * (n // SEED_BLOCK)
    if n % SEED_BLOCK:
        sizes.append(n % SEED_BLOCK)
    blocks = list(zip(np.random.SeedSequence(seed).spawn(len(sizes)), sizes))
    per_task = max(1, chunk_size // SEED_BLOCK)
    tasks = [blocks[i:i + per_task] for i in range(0, len(blocks), per_task)]
    logger.debug("MC entangling power: n=%d in %d blocks, %d tasks, %d workers",
                 n, len(blocks), len(tasks), workers)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda task: _task_sums(u, task), tasks))
    else:
        results = [_task_sums(u, task) for task in tasks]
    partials = [p for result in results for p in result]

    total = math.fsum(p[0] for p in partials)
    total_sq = math.fsum(p[1] for p in partials)
    mean = total / n
    variance = max(total_sq / n - mean * mean, 0.0) * n / max(n - 1, 1)
    return EpEstimate(mean=mean, std_error=math.sqrt(variance / n), n_samples=n)
