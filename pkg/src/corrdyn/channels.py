"""Local Pauli channels acting identically on both qubits.

Each qubit sees the dissipator ``L[rho] = gamma (s_j rho s_j - rho) / 2``
with ``j = 1, 2, 3`` for bit flip, bit-phase flip and phase flip.  On a
Bell-diagonal state this keeps the state Bell-diagonal: the coefficient
``c_j`` is untouched and the other two decay as ``exp(-2 gamma t)``.

Two evolution routes are provided: the closed-form decay law (:func:`evolve`)
and a fixed-step RK4 integration of the master equation (:func:`integrate`)
that serves as an independent check on it.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import BadKappa, BadStep, NegativeTime, OutOfRange
from .states import PAULIS, CorrelationVector

SQRT2_MINUS_1 = math.sqrt(2.0) - 1.0
DEFAULT_STEPS_PER_UNIT = 10_000  # dt = 1e-4 / gamma


class ChannelKind(enum.IntEnum):
    BIT_FLIP = 1
    BIT_PHASE_FLIP = 2
    PHASE_FLIP = 3

    @property
    def preserved_index(self) -> int:
        """Zero-based slot of the coefficient the channel leaves alone."""
        return self.value - 1

    @property
    def decaying_indices(self) -> tuple[int, int]:
        return tuple(i for i in range(3) if i != self.preserved_index)

    @property
    def short_name(self) -> str:
        return _SHORT_NAMES[self]

    @classmethod
    def parse(cls, text: str | "ChannelKind") -> "ChannelKind":
        if isinstance(text, cls):
            return text
        key = str(text).strip().lower().replace("-", "").replace("_", "")
        try:
            return _ALIASES[key]
        except KeyError:
            raise ValueError(f"unknown channel {text!r}; expected one of phase, bit, bitphase") from None


_SHORT_NAMES = {
    ChannelKind.BIT_FLIP: "bit",
    ChannelKind.BIT_PHASE_FLIP: "bitphase",
    ChannelKind.PHASE_FLIP: "phase",
}
_ALIASES = {
    "bit": ChannelKind.BIT_FLIP,
    "bitflip": ChannelKind.BIT_FLIP,
    "1": ChannelKind.BIT_FLIP,
    "bitphase": ChannelKind.BIT_PHASE_FLIP,
    "bitphaseflip": ChannelKind.BIT_PHASE_FLIP,
    "2": ChannelKind.BIT_PHASE_FLIP,
    "phase": ChannelKind.PHASE_FLIP,
    "phaseflip": ChannelKind.PHASE_FLIP,
    "dephasing": ChannelKind.PHASE_FLIP,
    "3": ChannelKind.PHASE_FLIP,
}


@dataclass(frozen=True)
class ChannelSpec:
    kind: ChannelKind
    gamma: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", ChannelKind.parse(self.kind))
        gamma = float(self.gamma)
        if not (gamma > 0.0 and math.isfinite(gamma)):
            raise ValueError(f"decoherence rate must be positive, got {self.gamma!r}")
        object.__setattr__(self, "gamma", gamma)

    def jump_operators(self) -> np.ndarray:
        """``s_j`` acting on qubit A and on qubit B, as 4x4 matrices."""
        pauli = PAULIS[self.kind.preserved_index]
        eye = np.eye(2, dtype=complex)
        return np.array([np.kron(pauli, eye), np.kron(eye, pauli)])


@dataclass(frozen=True)
class TransitionClassParams:
    sign: int
    kappa: float

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise BadKappa(f"sign must be +1 or -1, got {self.sign!r}")
        kappa = float(self.kappa)
        if not 0.0 < abs(kappa) < 1.0:
            raise BadKappa(f"|kappa| must lie in (0, 1), got {self.kappa!r}")
        object.__setattr__(self, "kappa", kappa)


def evolve(state: CorrelationVector, ch: ChannelSpec, t: float) -> CorrelationVector:
    if t < 0:
        raise NegativeTime(f"t must be >= 0, got {t!r}")
    decay = math.exp(-2.0 * ch.gamma * t)
    c = list(state.as_tuple())
    for i in ch.kind.decaying_indices:
        c[i] *= decay
    return CorrelationVector(*c)


def lindblad_rhs(rho: np.ndarray, ch: ChannelSpec) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    out = np.zeros_like(rho)
    for op in ch.jump_operators():
        out += op @ rho @ op - rho
    return 0.5 * ch.gamma * out


def integrate(rho0: np.ndarray, ch: ChannelSpec, t_end: float, dt: float | None = None) -> np.ndarray:
    """RK4 solution of the master equation at ``t_end``.

    ``rho0`` may be one 4x4 matrix or a stack ``(n, 4, 4)`` of them.  The
    default step is ``1e-4 / gamma``; a final shorter step lands exactly on
    ``t_end``.
    """
    if dt is None:
        dt = 1.0 / (DEFAULT_STEPS_PER_UNIT * ch.gamma)
    if not dt > 0:
        raise BadStep(f"dt must be positive, got {dt!r}")
    if t_end < 0:
        raise NegativeTime(f"t_end must be >= 0, got {t_end!r}")
    nsteps = int(t_end / dt + 1e-9)
    h_last = t_end - nsteps * dt
    if h_last <= 1e-12 * dt:
        h_last = 0.0
    return _kernels.rk4_dissipator(rho0, ch.jump_operators(), 0.5 * ch.gamma, dt, nsteps, h_last)


def _to_channel_frame(vec: tuple[float, float, float], kind: ChannelKind) -> tuple[float, float, float]:
    # cyclic index map 1 -> 2 -> 3 -> 1 applied until slot 3 lands on slot j
    shift = kind.value % 3
    out = [0.0, 0.0, 0.0]
    for i, v in enumerate(vec):
        out[(i + shift) % 3] = v
    return tuple(out)


def _to_phase_frame(vec: tuple[float, float, float], kind: ChannelKind) -> tuple[float, float, float]:
    shift = kind.value % 3
    return tuple(vec[(i + shift) % 3] for i in range(3))


def class_state(kind: ChannelKind | str, params: TransitionClassParams) -> CorrelationVector:
    """Initial state showing the sudden classical-to-quantum decoherence switch.

    For phase flip this is ``(s, -s*kappa, kappa)``; for the other channels
    the same vector with indices cycled so that ``kappa`` sits in the slot the
    channel preserves.
    """
    kind = ChannelKind.parse(kind)
    s, k = params.sign, params.kappa
    return CorrelationVector(*_to_channel_frame((float(s), -s * k, k), kind))


def class_params_of(state: CorrelationVector, kind: ChannelKind | str, tol: float = 1e-12) -> TransitionClassParams | None:
    """Recover ``(sign, kappa)`` when ``state`` is a transition-class state."""
    kind = ChannelKind.parse(kind)
    a, b, k = _to_phase_frame(state.as_tuple(), kind)
    if abs(abs(a) - 1.0) > tol or not 0.0 < abs(k) < 1.0:
        return None
    sign = 1 if a > 0 else -1
    if abs(b + sign * k) > tol:
        return None
    return TransitionClassParams(sign, k)


def separable_class_state(sign: int, c3: float, kind: ChannelKind | str = ChannelKind.PHASE_FLIP) -> CorrelationVector:
    """Separable state whose discord still stays frozen up to the transition.

    Phase-flip frame: ``(s r, -s c3 r, c3)`` with ``r = (1-|c3|)/(1+|c3|)``.
    The second entry carries the same sign pairing as :func:`class_state`;
    for ``s = -1`` this is the local-unitary image of the ``s = +1`` state.
    """
    if sign not in (1, -1):
        raise OutOfRange(f"sign must be +1 or -1, got {sign!r}")
    if not 0.0 < abs(c3) < SQRT2_MINUS_1:
        raise OutOfRange(f"|c3| must lie in (0, sqrt(2)-1), got {c3!r}")
    ratio = (1.0 - abs(c3)) / (1.0 + abs(c3))
    return CorrelationVector(*_to_channel_frame((sign * ratio, -sign * c3 * ratio, c3), ChannelKind.parse(kind)))
