"""Seeded oracle-equivalence suites behind ``corrdyn validate``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._kernels import BACKEND
from .channels import ChannelKind, ChannelSpec, evolve, integrate
from .correlations import (
    classical_correlations,
    closest_classical,
    discord,
    dissonance,
    dissonance_relative_entropy,
    relative_entropy,
)
from .measurement import DEFAULT_GRID_N, classical_correlations_numeric
from .states import BellSpectrum, CorrelationVector, bell_spectrum, from_spectrum, to_density_matrix

LINDBLAD_TIMES = (0.1, 0.5, 1.0)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    max_dev: float
    tol: float
    cases: int

    @property
    def passed(self) -> bool:
        return self.max_dev <= self.tol

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"{self.name:<34} cases={self.cases:<6d} max_dev={self.max_dev:.3e} tol={self.tol:.0e} {verdict}"


@dataclass(frozen=True)
class ValidationReport:
    seed: int
    n: int
    suites: tuple[SuiteResult, ...]

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    def text(self) -> str:
        lines = [f"corrdyn validate seed={self.seed} n={self.n}"]
        lines += [s.line() for s in self.suites]
        lines.append("overall " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines) + "\n"


def random_states(rng: np.random.Generator, n: int) -> list[CorrelationVector]:
    """Uniform samples from the Bell tetrahedron (flat Dirichlet on populations)."""
    pops = rng.dirichlet(np.ones(4), size=n)
    return [from_spectrum(BellSpectrum(*map(float, p))) for p in pops]


def suite_optimizer(states, grid_n: int = DEFAULT_GRID_N) -> SuiteResult:
    dev = max(abs(classical_correlations_numeric(s, grid_n).value - classical_correlations(s)) for s in states)
    return SuiteResult("closed-form C vs optimizer", dev, 1e-7, len(states))


def suite_lindblad(states) -> SuiteResult:
    stack0 = np.array([to_density_matrix(s) for s in states])
    dev = 0.0
    for kind in ChannelKind:
        ch = ChannelSpec(kind)
        rho, prev = stack0, 0.0
        for gt in LINDBLAD_TIMES:
            rho = integrate(rho, ch, (gt - prev) / ch.gamma)
            prev = gt
            exact = np.array([to_density_matrix(evolve(s, ch, gt / ch.gamma)) for s in states])
            dev = max(dev, float(np.max(np.abs(rho - exact))))
    return SuiteResult("evolve vs RK4 Lindblad", dev, 1e-8, len(states) * len(ChannelKind) * len(LINDBLAD_TIMES))


def suite_relative_entropy(states) -> SuiteResult:
    dev = max(
        abs(relative_entropy(bell_spectrum(s), closest_classical(s).spectrum()) - discord(s)) for s in states
    )
    return SuiteResult("discord vs relative entropy", dev, 1e-10, len(states))


def suite_dissonance(states) -> SuiteResult:
    usable = [s for s in states if max(bell_spectrum(s).as_tuple()) < 1.0]
    dev = max((abs(dissonance(s) - dissonance_relative_entropy(s)) for s in usable), default=0.0)
    return SuiteResult("dissonance formula vs construction", dev, 1e-12, len(usable))


SUITES: tuple[Callable[[list[CorrelationVector]], SuiteResult], ...] = (
    suite_optimizer,
    suite_lindblad,
    suite_relative_entropy,
    suite_dissonance,
)


def validate(seed: int, n: int) -> ValidationReport:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    states = random_states(np.random.default_rng(seed), n)
    return ValidationReport(seed, n, tuple(suite(states) for suite in SUITES))


__all__ = ["BACKEND", "SuiteResult", "ValidationReport", "random_states", "validate"]
