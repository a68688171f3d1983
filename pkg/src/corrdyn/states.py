"""Bell-diagonal two-qubit states.

A state with maximally mixed marginals is fixed by its correlation vector
``(c1, c2, c3)``::

    rho = (1 + c1 XX + c2 YY + c3 ZZ) / 4

and is diagonal in the Bell basis.  Basis ordering for explicit matrices is
``|00>, |01>, |10>, |11>`` throughout the package.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import NonPhysical

EPS_PHYS = 1e-12

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)


class BellLabel(str, enum.Enum):
    PSI_PLUS = "Psi+"
    PSI_MINUS = "Psi-"
    PHI_PLUS = "Phi+"
    PHI_MINUS = "Phi-"

    def __str__(self) -> str:
        return self.value


# storage order of BellSpectrum fields
LABELS = (BellLabel.PSI_PLUS, BellLabel.PSI_MINUS, BellLabel.PHI_PLUS, BellLabel.PHI_MINUS)
# tie-break order used when sorting populations
TIE_ORDER = (BellLabel.PSI_PLUS, BellLabel.PHI_PLUS, BellLabel.PHI_MINUS, BellLabel.PSI_MINUS)

_S = 1.0 / math.sqrt(2.0)
BELL_VECTORS = {
    BellLabel.PSI_PLUS: np.array([_S, 0, 0, _S], dtype=complex),
    BellLabel.PSI_MINUS: np.array([_S, 0, 0, -_S], dtype=complex),
    BellLabel.PHI_PLUS: np.array([0, _S, _S, 0], dtype=complex),
    BellLabel.PHI_MINUS: np.array([0, _S, -_S, 0], dtype=complex),
}


def bell_projector(label: BellLabel) -> np.ndarray:
    v = BELL_VECTORS[BellLabel(label)]
    return np.outer(v, v.conj())


def _spectrum_values(c1: float, c2: float, c3: float) -> tuple[float, float, float, float]:
    return (
        (1.0 + c1 - c2 + c3) / 4.0,
        (1.0 - c1 + c2 + c3) / 4.0,
        (1.0 + c1 + c2 - c3) / 4.0,
        (1.0 - c1 - c2 - c3) / 4.0,
    )


@dataclass(frozen=True)
class CorrelationVector:
    """Correlation triple of a Bell-diagonal state.

    Construction validates physicality: every induced Bell population must be
    at least ``-EPS_PHYS``.
    """

    c1: float
    c2: float
    c3: float

    def __post_init__(self) -> None:
        for name in ("c1", "c2", "c3"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise NonPhysical(f"{name}={value!r} is not finite")
            object.__setattr__(self, name, value)
        lams = _spectrum_values(self.c1, self.c2, self.c3)
        worst = min(lams)
        if worst < -EPS_PHYS or max(abs(self.c1), abs(self.c2), abs(self.c3)) > 1.0 + EPS_PHYS:
            raise NonPhysical(
                f"c=({self.c1:g}, {self.c2:g}, {self.c3:g}) is outside the Bell tetrahedron "
                f"(smallest Bell population {worst:g})"
            )

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.c1, self.c2, self.c3)

    def __iter__(self) -> Iterator[float]:
        return iter(self.as_tuple())

    def __getitem__(self, i: int) -> float:
        return self.as_tuple()[i]


@dataclass(frozen=True)
class BellSpectrum:
    """Populations of the four Bell states."""

    lam_psi_plus: float
    lam_psi_minus: float
    lam_phi_plus: float
    lam_phi_minus: float

    def __post_init__(self) -> None:
        values = self.as_tuple()
        if min(values) < -EPS_PHYS or max(values) > 1.0 + EPS_PHYS:
            raise NonPhysical(f"Bell populations {values} outside [0, 1]")
        if abs(sum(values) - 1.0) > EPS_PHYS:
            raise NonPhysical(f"Bell populations {values} do not sum to 1")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.lam_psi_plus, self.lam_psi_minus, self.lam_phi_plus, self.lam_phi_minus)

    def as_array(self) -> np.ndarray:
        return np.array(self.as_tuple())

    def items(self) -> list[tuple[BellLabel, float]]:
        return list(zip(LABELS, self.as_tuple()))

    def __getitem__(self, label: BellLabel | str) -> float:
        return self.as_tuple()[LABELS.index(BellLabel(label))]

    @classmethod
    def from_mapping(cls, weights: dict) -> "BellSpectrum":
        return cls(*(float(weights.get(label, 0.0)) for label in LABELS))


def make_state(c1: float, c2: float, c3: float) -> CorrelationVector:
    return CorrelationVector(c1, c2, c3)


def bell_spectrum(state: CorrelationVector) -> BellSpectrum:
    lams = _spectrum_values(state.c1, state.c2, state.c3)
    # rounding can leave -1e-17 on an edge of the tetrahedron
    return BellSpectrum(*(max(lam, 0.0) for lam in lams))


def from_spectrum(spec: BellSpectrum) -> CorrelationVector:
    """Inverse of :func:`bell_spectrum`."""
    pp, pm, fp, fm = spec.as_tuple()
    return CorrelationVector((pp - pm) + (fp - fm), (fp - fm) - (pp - pm), (pp + pm) - (fp + fm))


def to_density_matrix(state: CorrelationVector) -> np.ndarray:
    rho = np.eye(4, dtype=complex)
    for c, p in zip(state.as_tuple(), PAULIS):
        rho = rho + c * np.kron(p, p)
    return rho / 4.0


def bell_expansion(spec: BellSpectrum) -> np.ndarray:
    """Density matrix ``sum_k lam_k |k><k|`` over Bell projectors."""
    rho = np.zeros((4, 4), dtype=complex)
    for label, lam in spec.items():
        rho += lam * bell_projector(label)
    return rho


def correlation_vector_of(rho: np.ndarray) -> tuple[float, float, float]:
    """Read ``c_i = Tr(rho s_i s_i)`` off an explicit matrix (no validation)."""
    return tuple(float(np.real(np.trace(rho @ np.kron(p, p)))) for p in PAULIS)


def sorted_spectrum(spec: BellSpectrum) -> list[tuple[float, BellLabel]]:
    rank = {label: i for i, label in enumerate(TIE_ORDER)}
    pairs = [(lam, label) for label, lam in spec.items()]
    return sorted(pairs, key=lambda pair: (-pair[0], rank[pair[1]]))
