"""Classical correlations by direct maximization over projective measurements.

Qubit B is measured in the basis::

    |t1> = cos(theta)|0> + exp(i phi) sin(theta)|1>
    |t2> = exp(-i phi) sin(theta)|0> - cos(theta)|1>

and the post-measurement states of A are obtained by an explicit partial
trace of the 4x4 density matrix.  Nothing here uses the Bell-diagonal
closed forms, so the result is an independent check on them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from . import _kernels
from .correlations import entropy, mutual_information
from .states import CorrelationVector, to_density_matrix

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
DEFAULT_GRID_N = 32
ANGLE_TOL = 1e-10
VALUE_TOL = 1e-10
MAX_SWEEPS = 60


@dataclass(frozen=True)
class MeasurementBasis:
    theta: float
    phi: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "theta", float(self.theta))
        if not 0.0 <= self.theta <= math.pi / 2 + 1e-15:
            raise ValueError(f"theta must lie in [0, pi/2], got {self.theta!r}")
        object.__setattr__(self, "phi", float(self.phi) % (2.0 * math.pi))

    def vectors(self) -> tuple[np.ndarray, np.ndarray]:
        c, s = math.cos(self.theta), math.sin(self.theta)
        e = complex(math.cos(self.phi), math.sin(self.phi))
        return np.array([c, e * s]), np.array([e.conjugate() * s, -c])

    def projectors(self) -> tuple[np.ndarray, np.ndarray]:
        return tuple(np.outer(v, v.conj()) for v in self.vectors())


@dataclass(frozen=True)
class OptimizationResult:
    value: float
    best_basis: MeasurementBasis
    evaluations: int
    grid_value: float


def _swap_qubits(rho: np.ndarray) -> np.ndarray:
    return rho.reshape(2, 2, 2, 2).transpose(1, 0, 3, 2).reshape(4, 4)


def _matrix(state: CorrelationVector, side: str) -> np.ndarray:
    rho = to_density_matrix(state)
    if side == "B":
        return rho
    if side == "A":
        return _swap_qubits(rho)
    raise ValueError(f"side must be 'A' or 'B', got {side!r}")


def conditional_entropy(state: CorrelationVector, basis: MeasurementBasis, side: str = "B") -> float:
    """Average entropy of the unmeasured qubit after measuring ``side``."""
    rho = _matrix(state, side)
    return float(_kernels.conditional_entropy_grid(rho, [basis.theta], [basis.phi])[0, 0])


def _marginal_entropy(rho: np.ndarray) -> float:
    reduced = np.einsum("ijkj->ik", rho.reshape(2, 2, 2, 2))
    return entropy(np.clip(np.linalg.eigvalsh(reduced), 0.0, 1.0))


def _golden_max(fun: Callable[[float], float], lo: float, hi: float, tol: float) -> tuple[float, float]:
    a, b = lo, hi
    x1 = b - GOLDEN * (b - a)
    x2 = a + GOLDEN * (b - a)
    f1, f2 = fun(x1), fun(x2)
    while b - a > tol:
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - GOLDEN * (b - a)
            f1 = fun(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + GOLDEN * (b - a)
            f2 = fun(x2)
    return (x1, f1) if f1 >= f2 else (x2, f2)


def classical_correlations_numeric(
    state: CorrelationVector,
    grid_n: int = DEFAULT_GRID_N,
    side: str = "B",
    fixed_phis: Optional[Sequence[float]] = None,
) -> OptimizationResult:
    """Maximize ``S(rho_A) - S(rho_AB | {Pi_k})`` over measurement angles.

    A ``grid_n x grid_n`` scan over ``(theta, phi)`` picks the best cell,
    then alternating golden-section searches on each angle refine it.  With
    ``fixed_phis`` only ``theta`` is optimized, once per listed ``phi``.
    """
    if grid_n < 8:
        raise ValueError(f"grid_n must be >= 8, got {grid_n}")
    rho = _matrix(state, side)
    s_a = _marginal_entropy(_swap_qubits(rho))
    evaluations = 0

    def objective(theta: float, phi: float) -> float:
        nonlocal evaluations
        evaluations += 1
        return s_a - float(_kernels.conditional_entropy_grid(rho, [theta], [phi])[0, 0])

    thetas = np.linspace(0.0, math.pi / 2, grid_n)
    phis = np.asarray(fixed_phis, dtype=float) if fixed_phis is not None else 2.0 * math.pi * np.arange(grid_n) / grid_n
    values = s_a - _kernels.conditional_entropy_grid(rho, thetas, phis)
    evaluations += values.size
    i, j = np.unravel_index(int(np.argmax(values)), values.shape)
    grid_value = float(values[i, j])
    theta, phi, best = float(thetas[i]), float(phis[j]), grid_value

    d_theta = thetas[1] - thetas[0]
    d_phi = 2.0 * math.pi / grid_n
    for _ in range(MAX_SWEEPS):
        previous = best
        t_new, v = _golden_max(
            lambda x: objective(x, phi),
            max(0.0, theta - d_theta),
            min(math.pi / 2, theta + d_theta),
            ANGLE_TOL,
        )
        if v > best:
            theta, best = t_new, v
        if fixed_phis is None:
            p_new, v = _golden_max(lambda x: objective(theta, x), phi - d_phi, phi + d_phi, ANGLE_TOL)
            if v > best:
                phi, best = p_new, v
        if best - previous < VALUE_TOL * 1e-2:
            break

    return OptimizationResult(
        value=max(0.0, best),
        best_basis=MeasurementBasis(min(max(theta, 0.0), math.pi / 2), phi),
        evaluations=evaluations,
        grid_value=grid_value,
    )


def discord_numeric(state: CorrelationVector, grid_n: int = DEFAULT_GRID_N) -> float:
    return mutual_information(state) - classical_correlations_numeric(state, grid_n).value
