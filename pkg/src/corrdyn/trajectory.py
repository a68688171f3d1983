"""Time series of correlation measures, CSV output and transition detection."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Optional, Sequence

import numpy as np

from . import __version__
from .channels import (
    ChannelKind,
    ChannelSpec,
    TransitionClassParams,
    class_state,
    evolve,
    integrate,
)
from .correlations import (
    closest_classical,
    dissonance,
    entanglement_re,
    classical_correlations,
    discord,
    transition_time,
)
from .errors import ConfigError, PureEntangled
from .states import CorrelationVector, bell_spectrum, sorted_spectrum, to_density_matrix

CSV_COLUMNS = (
    "gamma_t", "c1", "c2", "c3", "lam1", "lam2", "lam3", "lam4",
    "I", "C", "D", "E", "Q", "q_cl", "pair_high",
)
LINDBLAD_TOL = 1e-8
OPTIMIZER_TOL = 1e-7
DIGITS = 9


@dataclass(frozen=True)
class ClassSpec:
    kind: ChannelKind
    sign: int
    kappa: float

    @classmethod
    def parse(cls, text: str) -> "ClassSpec":
        """Parse ``channel:sign:kappa``, e.g. ``phase:+:0.6``."""
        parts = [p.strip() for p in str(text).split(":")]
        if len(parts) != 3:
            raise ConfigError(f"class spec {text!r} must look like 'phase:+:0.6'")
        kind = ChannelKind.parse(parts[0])
        if parts[1] in ("+", "+1", "1"):
            sign = 1
        elif parts[1] in ("-", "-1"):
            sign = -1
        else:
            raise ConfigError(f"class sign {parts[1]!r} must be '+' or '-'")
        try:
            kappa = float(parts[2])
        except ValueError:
            raise ConfigError(f"class kappa {parts[2]!r} is not a number") from None
        return cls(kind, sign, kappa)

    def state(self) -> CorrelationVector:
        return class_state(self.kind, TransitionClassParams(self.sign, self.kappa))

    def __str__(self) -> str:
        return f"{self.kind.short_name}:{'+' if self.sign > 0 else '-'}:{self.kappa:g}"


@dataclass
class RunConfig:
    """Everything needed to produce one trajectory.

    Time quantities (``t_max``) are dimensionless ``gamma * t``.
    """

    c: Optional[tuple[float, float, float]] = None
    class_spec: Optional[ClassSpec] = None
    channel: Optional[ChannelKind] = None
    gamma: float = 1.0
    t_max: float = 1.0
    samples: int = 256
    lindblad: bool = False
    grid_n: int = 0

    def validate(self) -> None:
        if (self.c is None) == (self.class_spec is None):
            raise ConfigError("give exactly one of an initial vector (c1, c2, c3) or a class spec")
        if self.samples < 2:
            raise ConfigError(f"samples must be >= 2, got {self.samples}")
        if not self.t_max > 0:
            raise ConfigError(f"tmax must be > 0, got {self.t_max}")
        if not self.gamma > 0:
            raise ConfigError(f"gamma must be > 0, got {self.gamma}")
        if self.grid_n and self.grid_n < 8:
            raise ConfigError(f"grid_n must be 0 (off) or >= 8, got {self.grid_n}")

    @property
    def channel_spec(self) -> ChannelSpec:
        kind = self.channel
        if kind is None:
            kind = self.class_spec.kind if self.class_spec is not None else ChannelKind.PHASE_FLIP
        return ChannelSpec(kind, self.gamma)

    def initial_state(self) -> CorrelationVector:
        if self.class_spec is not None:
            return self.class_spec.state()
        return CorrelationVector(*self.c)

    def describe(self) -> list[str]:
        ch = self.channel_spec
        init = f"class={self.class_spec}" if self.class_spec is not None else "c=" + ",".join(_fmt(x) for x in self.c)
        return [
            init,
            f"channel={ch.kind.short_name} gamma={_fmt(ch.gamma)}",
            f"tmax={_fmt(self.t_max)} samples={self.samples}",
            f"lindblad={'on' if self.lindblad else 'off'} grid_n={self.grid_n}",
        ]


@dataclass(frozen=True)
class TrajectoryRecord:
    gamma_t: float
    c1: float
    c2: float
    c3: float
    lam1: float
    lam2: float
    lam3: float
    lam4: float
    I: float
    C: float
    D: float
    E: float
    Q: Optional[float]
    q_cl: float
    pair_high: str
    lam_psi_plus: float = 0.0
    lam_psi_minus: float = 0.0
    lam_phi_plus: float = 0.0
    lam_phi_minus: float = 0.0


@dataclass
class Trajectory:
    config: RunConfig
    rows: list[TrajectoryRecord]
    oracle_notes: list[str] = field(default_factory=list)

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.rows], dtype=float)


def record_for(state: CorrelationVector, gamma_t: float) -> TrajectoryRecord:
    spec = bell_spectrum(state)
    ranked = sorted_spectrum(spec)
    cl = closest_classical(state)
    c_val = classical_correlations(state)
    d_val = discord(state)
    try:
        q_val = dissonance(state)
    except PureEntangled:
        q_val = None
    return TrajectoryRecord(
        gamma_t=gamma_t,
        c1=state.c1,
        c2=state.c2,
        c3=state.c3,
        lam1=ranked[0][0],
        lam2=ranked[1][0],
        lam3=ranked[2][0],
        lam4=ranked[3][0],
        I=c_val + d_val,
        C=c_val,
        D=d_val,
        E=entanglement_re(state),
        Q=q_val,
        q_cl=cl.q,
        pair_high="|".join(str(label) for label in cl.pair_high),
        lam_psi_plus=spec.lam_psi_plus,
        lam_psi_minus=spec.lam_psi_minus,
        lam_phi_plus=spec.lam_phi_plus,
        lam_phi_minus=spec.lam_phi_minus,
    )


def time_grid(t_max: float, samples: int) -> list[float]:
    return [t_max * i / (samples - 1) for i in range(samples)]


def run_trajectory(cfg: RunConfig) -> Trajectory:
    cfg.validate()
    ch = cfg.channel_spec
    state0 = cfg.initial_state()
    grid = time_grid(cfg.t_max, cfg.samples)
    states = [evolve(state0, ch, gt / ch.gamma) for gt in grid]
    traj = Trajectory(cfg, [record_for(s, gt) for s, gt in zip(states, grid)])

    if cfg.lindblad:
        rho = to_density_matrix(state0)
        worst, prev = 0.0, 0.0
        for s, gt in zip(states, grid):
            rho = integrate(rho, ch, (gt - prev) / ch.gamma)
            prev = gt
            worst = max(worst, float(np.max(np.abs(rho - to_density_matrix(s)))))
        status = "ok" if worst <= LINDBLAD_TOL else "EXCEEDED"
        traj.oracle_notes.append(f"lindblad_max_dev={worst:.3e} tol={LINDBLAD_TOL:.0e} {status}")
    if cfg.grid_n:
        from .measurement import classical_correlations_numeric

        worst = max(
            abs(classical_correlations_numeric(s, cfg.grid_n).value - r.C) for s, r in zip(states, traj.rows)
        )
        status = "ok" if worst <= OPTIMIZER_TOL else "EXCEEDED"
        traj.oracle_notes.append(f"optimizer_max_dev={worst:.3e} tol={OPTIMIZER_TOL:.0e} {status}")
    return traj


def _fmt(x: Optional[float]) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return "nan"
    text = f"{x:.{DIGITS}f}"
    if text.startswith("-") and float(text) == 0.0:
        text = text[1:]
    return text


def format_row(record: TrajectoryRecord, columns: Sequence[str]) -> list[str]:
    out = []
    for name in columns:
        value = getattr(record, name)
        if name == "I" and "C" in columns and "D" in columns:
            # emit I as the sum of the emitted C and D so I = C + D survives the round trip
            value = float(_fmt(record.C)) + float(_fmt(record.D))
        out.append(value if isinstance(value, str) else _fmt(value))
    return out


def write_csv(
    traj: Trajectory,
    target: str | Path | IO[str],
    columns: Sequence[str] = CSV_COLUMNS,
    extra_meta: Iterable[str] = (),
) -> None:
    buf = io.StringIO()
    buf.write(f"# corrdyn {__version__}\n")
    for line in [*traj.config.describe(), *extra_meta, *traj.oracle_notes]:
        buf.write(f"# {line}\n")
    buf.write(",".join(columns) + "\n")
    for record in traj.rows:
        buf.write(",".join(format_row(record, columns)) + "\n")
    text = buf.getvalue()
    if hasattr(target, "write"):
        target.write(text)
    else:
        with open(target, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def read_csv(source: str | Path | IO[str]) -> tuple[list[str], list[dict]]:
    """Return ``(metadata lines, rows)``; numeric fields become floats."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = Path(source).read_text(encoding="utf-8")
    meta, rows, header = [], [], None
    for line in text.splitlines():
        if line.startswith("#"):
            meta.append(line[1:].strip())
        elif header is None:
            header = line.split(",")
        elif line:
            row = {}
            for key, raw in zip(header, line.split(",")):
                try:
                    row[key] = float(raw)
                except ValueError:
                    row[key] = raw
            rows.append(row)
    return meta, rows


@dataclass(frozen=True)
class TransitionEstimate:
    gamma_t: float
    uncertainty: float
    kink_index: int
    refined: bool


def detect_transition(traj: Trajectory, noise_floor: float = 1e-12) -> Optional[TransitionEstimate]:
    """Locate the kink in the discord curve.

    The grid point with the largest second difference of ``D`` is taken as
    the kink if it stands more than ten times above both the typical second
    difference and the ones two or three cells away; it is then refined by bisecting on the crossing of the
    decaying and preserved correlation magnitudes inside the neighbouring
    grid cells.
    """
    if len(traj.rows) < 16:
        raise ValueError(f"need at least 16 rows to detect a transition, got {len(traj.rows)}")
    t = traj.column("gamma_t")
    d = traj.column("D")
    second = np.abs(d[2:] - 2.0 * d[1:-1] + d[:-2])
    k = int(np.argmax(second))
    peak = float(second[k])
    floor = max(float(np.median(second)), noise_floor)
    # a kink touches at most two adjacent second differences; smooth curvature
    # looks the same a few cells away
    nearby = [float(second[j]) for j in (k - 3, k - 2, k + 2, k + 3) if 0 <= j < len(second)]
    if peak <= 10.0 * max(floor, max(nearby, default=0.0)):
        return None
    k += 1
    step = float(t[1] - t[0])

    ch = traj.config.channel_spec
    state0 = CorrelationVector(traj.rows[0].c1, traj.rows[0].c2, traj.rows[0].c3)
    pres = ch.kind.preserved_index
    chi_p = abs(state0[pres])

    def gap(gt: float) -> float:
        c = evolve(state0, ch, gt / ch.gamma).as_tuple()
        return max(abs(c[i]) for i in ch.kind.decaying_indices) - chi_p

    lo, hi = float(t[k - 1]), float(t[k + 1])
    if chi_p > 0.0 and gap(lo) > 0.0 >= gap(hi):
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if gap(mid) > 0.0:
                lo = mid
            else:
                hi = mid
            if hi - lo <= 1e-15 * max(1.0, hi):
                break
        return TransitionEstimate(0.5 * (lo + hi), step, k, True)
    return TransitionEstimate(float(t[k]), step, k, False)


FIGURES = {
    1: dict(kappa=0.6, t_max=1.0, columns=(
        "gamma_t", "I", "C", "D", "lam_psi_plus", "lam_psi_minus", "lam_phi_plus", "lam_phi_minus",
    )),
    2: dict(kappa=0.3, t_max=2.0, columns=("gamma_t", "E", "D")),
    3: dict(kappa=0.6, t_max=1.0, columns=("gamma_t", "E", "D", "Q")),
}
FIGURE_SAMPLES = 512


def figure_trajectory(fig_id: int) -> tuple[Trajectory, tuple[str, ...]]:
    if fig_id not in FIGURES:
        raise ConfigError(f"unknown figure id {fig_id!r}; expected one of {sorted(FIGURES)}")
    spec = FIGURES[fig_id]
    cfg = RunConfig(
        class_spec=ClassSpec(ChannelKind.PHASE_FLIP, 1, spec["kappa"]),
        t_max=spec["t_max"],
        samples=FIGURE_SAMPLES,
    )
    return run_trajectory(cfg), spec["columns"]


def reproduce_figure(fig_id: int, outdir: str | Path = ".") -> list[Path]:
    traj, columns = figure_trajectory(fig_id)
    ch = traj.config.channel_spec
    t_bar = transition_time(traj.config.initial_state(), ch) * ch.gamma
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    path = outdir / f"fig{fig_id}.csv"
    write_csv(traj, path, columns, extra_meta=[f"figure={fig_id} transition_gamma_t={_fmt(t_bar)}"])
    return [path]

