"""Run configuration shared by the library entry points and the sweep CLI."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field

import numpy as np

from .fock import DEFAULT_TAIL_TOL, FockCutoff, TwoModeState
from .measurement import (
    CouplingParams,
    EcsParams,
    PostSelectedOutcome,
    WeakValueParams,
    build_ecs,
    build_pointer_state,
    unnormalized_pointer_state,
)

DISPLACEMENT_CONVENTIONS = {"half": 0.5, "full": 1.0}
QFI_GAUGES = ("fixed-kappa", "renormalized")


@dataclass(frozen=True)
class RangeSpec:
    """Inclusive linear range with a fixed point count.

    points == 1 pins the range to its start value (stop must then agree);
    points >= 2 requires stop > start.
    """

    start: float
    stop: float
    points: int

    def __post_init__(self) -> None:
        if not isinstance(self.points, int) or self.points < 1:
            raise ValueError(f"points must be an integer >= 1, got {self.points!r}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValueError("range endpoints must be finite")
        if self.points == 1:
            if self.stop != self.start:
                raise ValueError("single-point range requires stop == start")
        elif self.stop <= self.start:
            raise ValueError(
                f"range requires stop > start for points >= 2, got [{self.start}, {self.stop}]"
            )

    def values(self) -> np.ndarray:
        if self.points == 1:
            return np.array([self.start], dtype=np.float64)
        return np.linspace(self.start, self.stop, self.points)

    @property
    def is_single(self) -> bool:
        return self.points == 1


@dataclass(frozen=True)
class WeakMeasurementConfig:
    """Full parameter set for one post-selected weak-measurement scenario."""

    ecs: EcsParams
    wv: WeakValueParams
    coupling: CouplingParams
    theta_big: float = 0.5 * math.pi
    cutoff: FockCutoff = field(default_factory=lambda: FockCutoff(40, 40))
    tail_tolerance: float = DEFAULT_TAIL_TOL
    displacement_convention: str = "half"
    qfi_gauge: str = "fixed-kappa"

    def __post_init__(self) -> None:
        if self.displacement_convention not in DISPLACEMENT_CONVENTIONS:
            raise ValueError(
                f"displacement_convention must be one of "
                f"{sorted(DISPLACEMENT_CONVENTIONS)}, got {self.displacement_convention!r}"
            )
        if self.qfi_gauge not in QFI_GAUGES:
            raise ValueError(f"qfi_gauge must be one of {QFI_GAUGES}, got {self.qfi_gauge!r}")
        if not (0.0 < self.tail_tolerance <= 1e-4):
            raise ValueError(
                f"tail_tolerance must lie in (0, 1e-4], got {self.tail_tolerance!r}"
            )
        if not (math.isfinite(self.theta_big)):
            raise ValueError(f"theta_big must be finite, got {self.theta_big!r}")

    @property
    def displacement_scale(self) -> float:
        return DISPLACEMENT_CONVENTIONS[self.displacement_convention]

    def replace(self, **changes) -> "WeakMeasurementConfig":
        return dataclasses.replace(self, **changes)

    def ecs_state(self, varphi: float | None = None) -> TwoModeState:
        params = self.ecs if varphi is None else dataclasses.replace(self.ecs, varphi=varphi)
        return build_ecs(params, self.cutoff, self.tail_tolerance)

    def raw_pointer_state(self, varphi: float | None = None) -> TwoModeState:
        return unnormalized_pointer_state(
            self.ecs_state(varphi), self.wv, self.coupling, self.displacement_scale
        )

    def pointer_outcome(self) -> PostSelectedOutcome:
        return build_pointer_state(
            self.ecs_state(),
            self.wv,
            self.coupling,
            displacement_scale=self.displacement_scale,
            tail_tol=self.tail_tolerance,
        )

    def to_dict(self) -> dict:
        return {
            "r": self.ecs.r,
            "mu": self.ecs.mu,
            "varphi": self.ecs.varphi,
            "theta1": self.wv.theta1,
            "delta1": self.wv.delta1,
            "theta2": self.wv.theta2,
            "delta2": self.wv.delta2,
            "s1": self.coupling.s1,
            "s2": self.coupling.s2,
            "theta_big": self.theta_big,
            "n_max_a": self.cutoff.n_max_a,
            "n_max_b": self.cutoff.n_max_b,
            "tail_tolerance": self.tail_tolerance,
            "displacement_convention": self.displacement_convention,
            "qfi_gauge": self.qfi_gauge,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "WeakMeasurementConfig":
        return cls(
            ecs=EcsParams(r=data["r"], mu=data["mu"], varphi=data["varphi"]),
            wv=WeakValueParams(
                theta1=data["theta1"],
                delta1=data["delta1"],
                theta2=data["theta2"],
                delta2=data["delta2"],
            ),
            coupling=CouplingParams(s1=data["s1"], s2=data["s2"]),
            theta_big=data["theta_big"],
            cutoff=FockCutoff(data["n_max_a"], data["n_max_b"]),
            tail_tolerance=data["tail_tolerance"],
            displacement_convention=data["displacement_convention"],
            qfi_gauge=data["qfi_gauge"],
        )


def default_config(**overrides) -> WeakMeasurementConfig:
    """Baseline scenario: r = 0.1, mu = varphi = delta_i = pi/2,
    theta_i = 4 pi / 5, zero coupling, cutoff 40 per mode."""
    half_pi = 0.5 * math.pi
    base = WeakMeasurementConfig(
        ecs=EcsParams(r=0.1, mu=half_pi, varphi=half_pi),
        wv=WeakValueParams(
            theta1=0.8 * math.pi, delta1=half_pi, theta2=0.8 * math.pi, delta2=half_pi
        ),
        coupling=CouplingParams(s1=0.0, s2=0.0),
    )
    if overrides:
        base = dataclasses.replace(base, **overrides)
    return base
