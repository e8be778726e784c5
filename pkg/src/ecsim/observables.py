"""Non-classicality and metrology diagnostics on two-mode states.

Covers the two-mode sum-squeezing parameter (direct variance form and
normal-ordered moment form), the joint parity Wigner cross-section, the
two-mode intensity correlation witness, and phase-estimation figures of
merit (quantum Fisher information and the resulting Cramer-Rao bound).
"""

from __future__ import annotations

import cmath
import dataclasses
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .config import RangeSpec, WeakMeasurementConfig
from .errors import DegeneratePostSelectionError, NumericalRangeError
from .fock import (
    TwoModeState,
    apply_to_mode,
    coherent_column,
    creation_matrix,
    displacement_matrix,
)
from .measurement import DEFAULT_P_FLOOR, apply_displacement_branches

# Phase-space density prefactor: W_J(gamma, beta) = (4 / pi^2) P_J(gamma, beta).
WIGNER_PREFACTOR = 4.0 / math.pi**2

# Displaced states whose top-level mass exceeds this are outside the
# trustworthy window of the truncated basis.
DEFAULT_RANGE_TOL = 1e-6

_FD_STEP_MIN = 1e-7
_FD_STEP_MAX = 1e-3


def _lower(arr: np.ndarray, axis: int) -> np.ndarray:
    """Annihilation on one tensor index; exact, same shape (top level zeroed)."""
    out = np.zeros_like(arr)
    n = np.sqrt(np.arange(1, arr.shape[axis], dtype=np.float64))
    if axis == 0:
        out[:-1, :] = n[:, None] * arr[1:, :]
    else:
        out[:, :-1] = n[None, :] * arr[:, 1:]
    return out


def _raise(arr: np.ndarray, axis: int) -> np.ndarray:
    """Creation on one tensor index; output grown by one level, exact."""
    shape = list(arr.shape)
    shape[axis] += 1
    out = np.zeros(shape, dtype=np.complex128)
    n = np.sqrt(np.arange(1, shape[axis], dtype=np.float64))
    if axis == 0:
        out[1:, :] = n[:, None] * arr
    else:
        out[:, 1:] = n[None, :] * arr
    return out


def _mode_occupations(arr: np.ndarray) -> tuple[float, float, float]:
    """(<N_a>, <N_b>, <N_a N_b>) from the diagonal probability grid."""
    prob = np.abs(arr) ** 2
    n_a_vals = np.arange(arr.shape[0], dtype=np.float64)
    n_b_vals = np.arange(arr.shape[1], dtype=np.float64)
    n_a = float(n_a_vals @ prob.sum(axis=1))
    n_b = float(prob.sum(axis=0) @ n_b_vals)
    n_ab = float(n_a_vals @ prob @ n_b_vals)
    return n_a, n_b, n_ab


@dataclass(frozen=True)
class SqueezingReport:
    """Both evaluations of the sum-squeezing parameter at one angle."""

    s2s_direct: float
    s2s_normal_ordered: float
    theta_big: float


def sum_squeezing_direct(state: TwoModeState, theta_big: float) -> float:
    """Sum squeezing from the variance of V = (e^{i T} a^dag b^dag + h.c.) / 2.

    S = 4 Var(V) / <N_a + N_b + 1> - 1; values below 0 witness two-mode
    non-classicality and the variance floor pins S >= -1.

    V|psi> is evaluated on a one-level-enlarged grid so the creation parts
    are exact; the quadratic moment then carries no cutoff-boundary defect
    and agrees with the normal-ordered route to rounding error.
    """
    arr = state.amplitudes
    up = _raise(_raise(arr, 0), 1)
    down = np.zeros_like(up)
    down[: arr.shape[0], : arr.shape[1]] = _lower(_lower(arr, 0), 1)
    phase = cmath.exp(1j * theta_big)
    v_psi = 0.5 * (phase * up + np.conj(phase) * down)

    psi_big = np.zeros_like(up)
    psi_big[: arr.shape[0], : arr.shape[1]] = arr
    exp_v = float(np.real(np.vdot(psi_big, v_psi)))
    exp_v2 = float(np.real(np.vdot(v_psi, v_psi)))

    n_a, n_b, _ = _mode_occupations(arr)
    return 4.0 * (exp_v2 - exp_v**2) / (n_a + n_b + 1.0) - 1.0


def sum_squeezing_normal_ordered(state: TwoModeState, theta_big: float) -> float:
    """Sum squeezing from normal-ordered moments:

    S = 2 [ Re(e^{-2iT} <a^2 b^2>) - 2 (Re e^{-iT} <a b>)^2 + <N_a N_b> ]
        / (<N_a> + <N_b> + 1).

    Annihilation-only moments are exact on the truncated support, so this
    form needs no enlarged grid.
    """
    arr = state.amplitudes
    ab = _lower(_lower(arr, 0), 1)
    m_ab = complex(np.vdot(arr, ab))
    m_a2b2 = complex(np.vdot(arr, _lower(_lower(ab, 0), 1)))
    n_a, n_b, n_ab = _mode_occupations(arr)
    phase = cmath.exp(-1j * theta_big)
    numerator = (phase * phase * m_a2b2).real - 2.0 * ((phase * m_ab).real) ** 2 + n_ab
    return 2.0 * numerator / (n_a + n_b + 1.0)


def squeezing_report(state: TwoModeState, theta_big: float) -> SqueezingReport:
    return SqueezingReport(
        s2s_direct=sum_squeezing_direct(state, theta_big),
        s2s_normal_ordered=sum_squeezing_normal_ordered(state, theta_big),
        theta_big=theta_big,
    )


@dataclass(frozen=True, eq=False)
class WignerGrid:
    """Joint-parity values on a rectangular real cross-section of phase space."""

    re_gamma_axis: np.ndarray
    re_beta_axis: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        for name in ("re_gamma_axis", "re_beta_axis", "values"):
            arr = np.asarray(getattr(self, name), dtype=np.float64)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if self.values.shape != (self.re_gamma_axis.size, self.re_beta_axis.size):
            raise ValueError("grid value shape does not match its axes")

    @property
    def minimum(self) -> float:
        return float(self.values.min())


def _parity_expectation(arr: np.ndarray) -> float:
    signs_a = np.where(np.arange(arr.shape[0]) % 2 == 0, 1.0, -1.0)
    signs_b = np.where(np.arange(arr.shape[1]) % 2 == 0, 1.0, -1.0)
    prob = np.abs(arr) ** 2
    # Diagonal parity grid keeps the expectation exactly real.
    return float(signs_a @ prob @ signs_b)


def _displaced(state: TwoModeState, gamma: complex, beta: complex) -> TwoModeState:
    shifted = apply_to_mode(
        displacement_matrix(-gamma, state.cutoff.n_max_a), "a", state
    )
    return apply_to_mode(displacement_matrix(-beta, state.cutoff.n_max_b), "b", shifted)


def _check_displaced_range(arr: np.ndarray, gamma: complex, beta: complex, range_tol: float) -> None:
    top = float(np.sum(np.abs(arr[-1, :]) ** 2) + np.sum(np.abs(arr[:-1, -1]) ** 2))
    if top > range_tol:
        raise NumericalRangeError(
            f"displacement (gamma={gamma}, beta={beta}) pushes tail mass "
            f"{top:.3e} past the validated range tolerance {range_tol:.1e}"
        )


def joint_wigner_point(
    state: TwoModeState,
    gamma: complex,
    beta: complex,
    range_tol: float = DEFAULT_RANGE_TOL,
) -> float:
    """P_J(gamma, beta) = <D_a^dag(gamma) D_b^dag(beta) parity_a parity_b ...>.

    Bounded by construction in [-1, 1] because the displacement matrices are
    unitary to machine precision.  Multiply by WIGNER_PREFACTOR for the
    phase-space density normalization.
    """
    displaced = _displaced(state, gamma, beta)
    _check_displaced_range(displaced.amplitudes, gamma, beta, range_tol)
    return _parity_expectation(displaced.amplitudes)


def joint_wigner_grid(
    state: TwoModeState,
    re_gamma: RangeSpec,
    re_beta: RangeSpec,
    range_tol: float = DEFAULT_RANGE_TOL,
) -> WignerGrid:
    """P_J sampled over real gamma and beta, rows indexed by Re(gamma).

    Per-axis displacement matrices are cached, so each grid point costs two
    dense mode applications and a weighted sum.
    """
    if re_gamma.points < 2 or re_beta.points < 2:
        raise ValueError("wigner grid needs at least 2 points per axis")
    gammas = re_gamma.values()
    betas = re_beta.values()
    values = np.empty((gammas.size, betas.size), dtype=np.float64)
    n_max_b = state.cutoff.n_max_b
    for i, g in enumerate(gammas):
        row_state = apply_to_mode(
            displacement_matrix(-complex(g), state.cutoff.n_max_a), "a", state
        )
        for j, b in enumerate(betas):
            displaced = apply_to_mode(displacement_matrix(-complex(b), n_max_b), "b", row_state)
            _check_displaced_range(displaced.amplitudes, complex(g), complex(b), range_tol)
            values[i, j] = _parity_expectation(displaced.amplitudes)
    return WignerGrid(re_gamma_axis=gammas, re_beta_axis=betas, values=values)


def hz_correlation(state: TwoModeState) -> float:
    """E = <N_a><N_b> - |<a b>|^2; negative values witness entanglement."""
    arr = state.amplitudes
    n_a, n_b, _ = _mode_occupations(arr)
    m_ab = complex(np.vdot(arr, _lower(_lower(arr, 0), 1)))
    return n_a * n_b - abs(m_ab) ** 2


@dataclass(frozen=True)
class MetrologyReport:
    """QFI together with the single-shot-count Cramer-Rao phase bound."""

    qfi: float
    qcrb: float
    shots: int

    @classmethod
    def compute(cls, qfi: float, shots: int = 1) -> "MetrologyReport":
        return cls(qfi=qfi, qcrb=qcrb(qfi, shots), shots=shots)


def qcrb(qfi: float, shots: int = 1) -> float:
    """delta_phi = 1 / sqrt(shots * qfi)."""
    if not (qfi > 0.0 and math.isfinite(qfi)):
        raise ValueError(f"qcrb requires qfi > 0, got {qfi!r}")
    if not isinstance(shots, int) or shots < 1:
        raise ValueError(f"shots must be an integer >= 1, got {shots!r}")
    return 1.0 / math.sqrt(shots * qfi)


def _pure_state_qfi(dpsi: np.ndarray, psi: np.ndarray) -> float:
    overlap = complex(np.vdot(psi, dpsi))
    return 4.0 * (float(np.real(np.vdot(dpsi, dpsi))) - abs(overlap) ** 2)


def qfi_from_family(
    family: Callable[[float], TwoModeState],
    phi0: float,
    h: float = 1e-5,
) -> float:
    """Central-difference QFI of a normalized pure-state family at phi0.

    Q = 4 [ <d psi|d psi> - |<psi|d psi>|^2 ]; the projection term makes the
    value invariant under any phi-dependent global phase of the family.
    """
    if not (_FD_STEP_MIN <= h <= _FD_STEP_MAX):
        raise ValueError(f"step h must lie in [{_FD_STEP_MIN}, {_FD_STEP_MAX}], got {h!r}")
    psi0 = family(phi0).amplitudes
    plus = family(phi0 + h).amplitudes
    minus = family(phi0 - h).amplitudes
    dpsi = (plus - minus) / (2.0 * h)
    return _pure_state_qfi(dpsi, psi0)


def _checked_richardson(q_of_step: Callable[[float], float], h: float) -> float:
    """Evaluate at h, h/2, h/4 and require the O(h^2) error to contract.

    Non-contracting differences above the rounding floor mean the step is
    inside the cancellation regime, which is reported as a numerical fault.
    """
    q1 = q_of_step(h)
    q2 = q_of_step(0.5 * h)
    q3 = q_of_step(0.25 * h)
    r1 = abs(q1 - q2)
    r2 = abs(q2 - q3)
    scale = max(abs(q1), abs(q2), abs(q3))
    noise_floor = 1e-9 * scale + 1e-14
    if r2 > max(0.5 * r1, noise_floor):
        raise NumericalRangeError(
            f"finite-difference step h={h:g} is cancellation-dominated: "
            f"successive halvings changed the estimate by {r1:.3e} then {r2:.3e}"
        )
    return q2


def qfi_finite_difference(config: WeakMeasurementConfig, h: float = 1e-5) -> float:
    """Finite-difference QFI of the post-selected pointer family in varphi.

    Under the "fixed-kappa" gauge the unnormalized four-branch state is
    differentiated with the success-probability rescaling frozen at the
    working point; under "renormalized" the normalized outcome family is
    differentiated directly.  The projection term in the QFI formula makes
    both gauges agree to finite-difference accuracy.
    """
    if not (_FD_STEP_MIN <= h <= _FD_STEP_MAX):
        raise ValueError(f"step h must lie in [{_FD_STEP_MIN}, {_FD_STEP_MAX}], got {h!r}")
    phi0 = config.ecs.varphi

    if config.qfi_gauge == "fixed-kappa":
        raw0 = config.raw_pointer_state()
        p0 = float(np.real(np.vdot(raw0.amplitudes, raw0.amplitudes)))
        if p0 < DEFAULT_P_FLOOR:
            raise DegeneratePostSelectionError(
                f"post-selection probability {p0:.3e} too small for QFI"
            )
        kappa = 1.0 / math.sqrt(p0)
        psi0 = kappa * raw0.amplitudes

        def q_of_step(step: float) -> float:
            plus = config.raw_pointer_state(varphi=phi0 + step).amplitudes
            minus = config.raw_pointer_state(varphi=phi0 - step).amplitudes
            dpsi = kappa * (plus - minus) / (2.0 * step)
            return _pure_state_qfi(dpsi, psi0)

    else:
        outcome0 = config.pointer_outcome()
        psi0 = outcome0.state.amplitudes

        def outcome_at(varphi: float) -> np.ndarray:
            shifted = config.replace(ecs=dataclasses.replace(config.ecs, varphi=varphi))
            return shifted.pointer_outcome().state.amplitudes

        def q_of_step(step: float) -> float:
            dpsi = (outcome_at(phi0 + step) - outcome_at(phi0 - step)) / (2.0 * step)
            return _pure_state_qfi(dpsi, psi0)

    return _checked_richardson(q_of_step, h)


def qfi_analytic(config: WeakMeasurementConfig) -> float:
    """Closed-form QFI of the pointer family in varphi.

    Only the mode-b coherent branch of the probe depends on varphi, so the
    family derivative is i alpha e^{i varphi} b^dag applied to that branch,
    pushed through the same four displacement branches with the
    success-probability rescaling frozen at the working point.
    """
    raw0 = config.raw_pointer_state()
    p0 = float(np.real(np.vdot(raw0.amplitudes, raw0.amplitudes)))
    if p0 < DEFAULT_P_FLOOR:
        raise DegeneratePostSelectionError(
            f"post-selection probability {p0:.3e} too small for QFI"
        )
    kappa = 1.0 / math.sqrt(p0)

    ecs = config.ecs
    cutoff = config.cutoff
    beta = ecs.alpha * cmath.exp(1j * ecs.varphi)
    branch_amp = np.zeros((cutoff.dim_a, cutoff.dim_b), dtype=np.complex128)
    branch_amp[0, :] = coherent_column(beta, cutoff.n_max_b, config.tail_tolerance)
    branch_state = TwoModeState(branch_amp, cutoff)
    lifted = apply_to_mode(creation_matrix(cutoff.n_max_b), "b", branch_state)
    dphi_amp = 1j * beta * ecs.normalization * lifted.amplitudes
    dphi_state = TwoModeState(dphi_amp, cutoff)

    dpointer = apply_displacement_branches(
        dphi_state, config.wv, config.coupling, config.displacement_scale
    )
    dpsi = kappa * dpointer.amplitudes
    psi0 = kappa * raw0.amplitudes
    return _pure_state_qfi(dpsi, psi0)
