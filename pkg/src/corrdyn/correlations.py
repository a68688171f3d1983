"""Closed-form correlation measures for Bell-diagonal states.

All entropies are in bits with ``0 log 0 = 0``.  Because the marginals of a
Bell-diagonal state are maximally mixed, every quantity reduces to a function
of the four Bell populations, or of ``chi = max |c_i|`` for the classical
part.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

from .channels import ChannelKind, ChannelSpec, class_params_of, evolve
from .errors import NotInClass, PureEntangled
from .states import (
    EPS_PHYS,
    LABELS,
    BellLabel,
    BellSpectrum,
    CorrelationVector,
    bell_spectrum,
    sorted_spectrum,
)

DISCORD_CLAMP = 1e-12
BISECTION_HORIZON = 50.0  # in units of 1/gamma
BISECTION_RTOL = 1e-10


def _xlog2x(x: float) -> float:
    return x * math.log2(x) if x > 0.0 else 0.0


def entropy(spec: BellSpectrum | Iterable[float]) -> float:
    values = spec.as_tuple() if isinstance(spec, BellSpectrum) else tuple(spec)
    return max(0.0, -sum(_xlog2x(v) for v in values))


def classical_term(chi: float) -> float:
    """``f(chi) = sum_j (1 + (-1)^j chi)/2 log2(1 + (-1)^j chi)``."""
    chi = abs(chi)
    return max(0.0, 0.5 * (_xlog2x(1.0 - chi) + _xlog2x(1.0 + chi)))


def mutual_information(state: CorrelationVector) -> float:
    return max(0.0, 2.0 - entropy(bell_spectrum(state)))


def classical_correlations(state: CorrelationVector) -> float:
    return classical_term(max(abs(c) for c in state.as_tuple()))


def discord(state: CorrelationVector) -> float:
    value = mutual_information(state) - classical_correlations(state)
    if -DISCORD_CLAMP < value < 0.0:
        return 0.0
    return value


class MutualInformationSplit(NamedTuple):
    classical_part: float
    quantum_part: float
    after_transition: bool


def mutual_information_split(
    state: CorrelationVector, t: float, ch: ChannelSpec | None = None
) -> MutualInformationSplit:
    """Split the mutual information of an evolving transition-class state.

    Returns ``(f(c_decaying(t)), f(kappa))``.  Before the transition these
    are the classical correlations and the discord; afterwards the roles swap
    and ``after_transition`` is set.
    """
    ch = ch if ch is not None else ChannelSpec(ChannelKind.PHASE_FLIP)
    params = class_params_of(state, ch.kind)
    if params is None:
        raise NotInClass(f"{state} is not a transition-class state for the {ch.kind.short_name} channel")
    decayed = math.exp(-2.0 * ch.gamma * t)
    t_bar = -math.log(abs(params.kappa)) / (2.0 * ch.gamma)
    return MutualInformationSplit(classical_term(decayed), classical_term(params.kappa), t > t_bar)


@dataclass(frozen=True)
class ClassicalStateDescriptor:
    """Closest classical state: ``q/2`` on each of ``pair_high``, ``(1-q)/2`` on ``pair_low``."""

    q: float
    pair_high: tuple[BellLabel, BellLabel]
    pair_low: tuple[BellLabel, BellLabel]

    def spectrum(self) -> BellSpectrum:
        weights = {label: self.q / 2.0 for label in self.pair_high}
        weights.update({label: (1.0 - self.q) / 2.0 for label in self.pair_low})
        return BellSpectrum.from_mapping(weights)


def closest_classical_of_spectrum(spec: BellSpectrum) -> ClassicalStateDescriptor:
    ranked = sorted_spectrum(spec)
    q = min(1.0, ranked[0][0] + ranked[1][0])
    return ClassicalStateDescriptor(
        q=q,
        pair_high=(ranked[0][1], ranked[1][1]),
        pair_low=(ranked[2][1], ranked[3][1]),
    )


def closest_classical(state: CorrelationVector) -> ClassicalStateDescriptor:
    return closest_classical_of_spectrum(bell_spectrum(state))


def relative_entropy(rho: BellSpectrum, sigma: BellSpectrum) -> float:
    """``S(rho || sigma)`` for commuting states; ``inf`` when supports mismatch."""
    total = 0.0
    for r, s in zip(rho.as_tuple(), sigma.as_tuple()):
        if r <= 0.0:
            continue
        if s <= 0.0:
            return math.inf
        total += r * (math.log2(r) - math.log2(s))
    return max(0.0, total)


def entanglement_re(state: CorrelationVector) -> float:
    lam1 = max(bell_spectrum(state).as_tuple())
    if lam1 <= 0.5:
        return 0.0
    return max(0.0, 1.0 + _xlog2x(lam1) + _xlog2x(1.0 - lam1))


def closest_separable_spectrum(state: CorrelationVector) -> BellSpectrum:
    """Closest separable Bell-diagonal state in relative entropy.

    Entangled states map to populations ``1/2`` on the dominant Bell state
    and ``lam_i / (2 (1 - lam_1))`` on the rest; separable states map to
    themselves.
    """
    spec = bell_spectrum(state)
    ranked = sorted_spectrum(spec)
    lam1, top = ranked[0]
    if lam1 <= 0.5:
        return spec
    if lam1 >= 1.0:
        raise PureEntangled(f"{state} is a pure Bell state")
    weights = {top: 0.5}
    for lam, label in ranked[1:]:
        weights[label] = lam / (2.0 * (1.0 - lam1))
    return BellSpectrum.from_mapping(weights)


def dissonance(state: CorrelationVector) -> float:
    ranked = sorted_spectrum(bell_spectrum(state))
    lam1 = ranked[0][0]
    if lam1 <= 0.5:
        return discord(state)
    if lam1 >= 1.0:
        raise PureEntangled(f"dissonance undefined for the pure Bell state {state}")
    p = [0.5] + [lam / (2.0 * (1.0 - lam1)) for lam, _ in ranked[1:]]
    high = p[0] + p[1]
    value = 1.0 + sum(_xlog2x(x) for x in p) - _xlog2x(high) - _xlog2x(1.0 - high)
    return max(0.0, value)


def dissonance_relative_entropy(state: CorrelationVector) -> float:
    """Dissonance built as ``S(rho_S || rho_SC)`` from the two closest states."""
    sep = closest_separable_spectrum(state)
    return relative_entropy(sep, closest_classical_of_spectrum(sep).spectrum())


def _largest_population(state: CorrelationVector) -> float:
    return max(bell_spectrum(state).as_tuple())


def sudden_death_time(state: CorrelationVector, ch: ChannelSpec) -> Optional[float]:
    """Time after which the state is separable, or ``None`` within ``50/gamma``."""
    if _largest_population(state) <= 0.5:
        return 0.0
    params = class_params_of(state, ch.kind)
    if params is not None:
        k = abs(params.kappa)
        return -math.log((1.0 - k) / (1.0 + k)) / (2.0 * ch.gamma)
    if abs(state.as_tuple()[ch.kind.preserved_index]) >= 1.0 - EPS_PHYS:
        # the long-time limit sits on the separable boundary; lambda_1 only
        # approaches 1/2 asymptotically
        return None
    return _bisect_separable(state, ch)


def _bisect_separable(state: CorrelationVector, ch: ChannelSpec) -> Optional[float]:
    lo, hi = 0.0, BISECTION_HORIZON / ch.gamma
    if _largest_population(evolve(state, ch, hi)) > 0.5:
        return None
    while hi - lo > BISECTION_RTOL * hi:
        mid = 0.5 * (lo + hi)
        if _largest_population(evolve(state, ch, mid)) <= 0.5:
            hi = mid
        else:
            lo = mid
    return hi


def transition_time(state: CorrelationVector, ch: ChannelSpec) -> Optional[float]:
    """Time at which the decaying coefficients drop to the preserved one.

    For transition-class states this is where classical decoherence gives way
    to quantum decoherence; for other states it is only the crossing time of
    ``chi``.
    """
    c = state.as_tuple()
    chi_p = abs(c[ch.kind.preserved_index])
    chi_d = max(abs(c[i]) for i in ch.kind.decaying_indices)
    if chi_d > chi_p > 0.0:
        return math.log(chi_d / chi_p) / (2.0 * ch.gamma)
    return None


@dataclass(frozen=True)
class CorrelationReport:
    mutual_info: float
    classical: float
    discord: float
    entanglement: float
    dissonance: Optional[float]

    def as_dict(self) -> dict:
        return {
            "mutual_info": self.mutual_info,
            "classical": self.classical,
            "discord": self.discord,
            "entanglement": self.entanglement,
            "dissonance": self.dissonance,
        }


def full_report(state: CorrelationVector) -> CorrelationReport:
    classical = classical_correlations(state)
    quantum = discord(state)
    try:
        q = dissonance(state)
    except PureEntangled:
        q = None
    return CorrelationReport(
        mutual_info=classical + quantum,
        classical=classical,
        discord=quantum,
        entanglement=entanglement_re(state),
        dissonance=q,
    )


__all__ = [
    "LABELS",
    "ClassicalStateDescriptor",
    "CorrelationReport",
    "MutualInformationSplit",
    "classical_correlations",
    "classical_term",
    "closest_classical",
    "closest_classical_of_spectrum",
    "closest_separable_spectrum",
    "discord",
    "dissonance",
    "dissonance_relative_entropy",
    "entanglement_re",
    "entropy",
    "full_report",
    "mutual_information",
    "mutual_information_split",
    "relative_entropy",
    "sudden_death_time",
    "transition_time",
]
