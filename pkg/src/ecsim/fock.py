"""Dense truncated Fock-space arithmetic for two bosonic modes.

States live on the product basis |n_a, n_b> with 0 <= n_a <= n_max_a and
0 <= n_b <= n_max_b, stored as a complex (n_max_a+1, n_max_b+1) amplitude
grid.  Single-mode operators are dense matrices applied to one tensor
factor at a time.  Everything is plain numpy; nothing here knows about
measurements or observables.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import expm

from .errors import TruncationWarning

DEFAULT_TAIL_TOL = 1e-10

# Norm below which a vector is treated as identically zero and cannot be
# normalized.  Far below any physically reachable amplitude.
_ZERO_NORM_FLOOR = 1e-150


@dataclass(frozen=True)
class FockCutoff:
    """Per-mode truncation levels; mode a keeps n_max_a + 1 basis states."""

    n_max_a: int
    n_max_b: int

    def __post_init__(self) -> None:
        for label, n in (("n_max_a", self.n_max_a), ("n_max_b", self.n_max_b)):
            if not isinstance(n, int) or n < 1:
                raise ValueError(f"{label} must be an integer >= 1, got {n!r}")

    @property
    def dim_a(self) -> int:
        return self.n_max_a + 1

    @property
    def dim_b(self) -> int:
        return self.n_max_b + 1

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b


@dataclass(frozen=True, eq=False)
class TwoModeState:
    """Immutable two-mode ket; amplitudes[n_a, n_b] = <n_a, n_b|psi>."""

    amplitudes: np.ndarray
    cutoff: FockCutoff

    def __post_init__(self) -> None:
        amp = np.asarray(self.amplitudes, dtype=np.complex128)
        if amp.shape != (self.cutoff.dim_a, self.cutoff.dim_b):
            raise ValueError(
                f"amplitude grid shape {amp.shape} does not match cutoff "
                f"({self.cutoff.dim_a}, {self.cutoff.dim_b})"
            )
        amp = amp.copy()
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)


@dataclass(frozen=True, eq=False)
class ModeOperator:
    """Dense single-mode operator on the truncated basis, tagged by kind."""

    matrix: np.ndarray
    kind: str = "composite"

    def __post_init__(self) -> None:
        mat = np.asarray(self.matrix, dtype=np.complex128)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"operator matrix must be square, got shape {mat.shape}")
        mat = mat.copy()
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @property
    def n_max(self) -> int:
        return self.matrix.shape[0] - 1

    def dagger(self) -> "ModeOperator":
        return ModeOperator(self.matrix.conj().T, kind=f"{self.kind}-dagger")


def vacuum(cutoff: FockCutoff) -> TwoModeState:
    """|0, 0> on the given truncated basis."""
    amp = np.zeros((cutoff.dim_a, cutoff.dim_b), dtype=np.complex128)
    amp[0, 0] = 1.0
    return TwoModeState(amp, cutoff)


def coherent_column(alpha: complex, n_max: int, tail_tol: float = DEFAULT_TAIL_TOL) -> np.ndarray:
    """Truncated coherent-state column: entry n is e^{-|alpha|^2/2} alpha^n / sqrt(n!).

    Entries are built by the cumulative recurrence c_n = c_{n-1} alpha / sqrt(n),
    which stays finite for any amplitude the truncated basis can represent.
    Warns with the measured norm deficit when 1 - sum |c_n|^2 exceeds tail_tol.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    col = np.empty(n_max + 1, dtype=np.complex128)
    col[0] = math.exp(-0.5 * abs(alpha) ** 2)
    for n in range(1, n_max + 1):
        col[n] = col[n - 1] * alpha / math.sqrt(n)
    deficit = max(0.0, 1.0 - float(np.sum(np.abs(col) ** 2)))
    if deficit > tail_tol:
        warnings.warn(
            TruncationWarning(
                f"coherent column |alpha|={abs(alpha):.4g} at n_max={n_max} "
                f"misses tail mass {deficit:.3e} (tolerance {tail_tol:.1e})"
            ),
            stacklevel=2,
        )
    return col


def annihilation_matrix(n_max: int) -> ModeOperator:
    mat = np.zeros((n_max + 1, n_max + 1), dtype=np.complex128)
    for n in range(1, n_max + 1):
        mat[n - 1, n] = math.sqrt(n)
    return ModeOperator(mat, kind="annihilation")


def creation_matrix(n_max: int) -> ModeOperator:
    return ModeOperator(annihilation_matrix(n_max).matrix.conj().T, kind="creation")


def number_matrix(n_max: int) -> ModeOperator:
    return ModeOperator(np.diag(np.arange(n_max + 1, dtype=np.complex128)), kind="number")


def parity_matrix(n_max: int) -> ModeOperator:
    signs = np.array([(-1.0) ** n for n in range(n_max + 1)], dtype=np.complex128)
    return ModeOperator(np.diag(signs), kind="parity")


def identity_matrix(n_max: int) -> ModeOperator:
    return ModeOperator(np.eye(n_max + 1, dtype=np.complex128), kind="identity")


@lru_cache(maxsize=4096)
def _displacement_raw(gamma: complex, n_max: int) -> np.ndarray:
    # expm of the anti-Hermitian generator gamma a^dag - conj(gamma) a is
    # unitary to machine precision at every truncation size, so downstream
    # norms are preserved exactly; truncation quality shows up in how well
    # column 0 matches the analytic coherent column, not in unitarity.
    a = annihilation_matrix(n_max).matrix
    gen = gamma * a.conj().T - np.conj(gamma) * a
    mat = expm(gen)
    mat.setflags(write=False)
    return mat


def displacement_matrix(gamma: complex, n_max: int) -> ModeOperator:
    """Truncated displacement D(gamma) = exp(gamma a^dag - conj(gamma) a).

    Matrices are cached on (gamma, n_max); repeated grid evaluations reuse
    them without rebuilding.
    """
    return ModeOperator(_displacement_raw(complex(gamma), int(n_max)), kind="displacement")


def unitarity_defect(op: ModeOperator) -> float:
    """max |(U^dag U - I)| over the full truncated block."""
    mat = op.matrix
    gram = mat.conj().T @ mat
    return float(np.max(np.abs(gram - np.eye(mat.shape[0]))))


def apply_to_mode(op: ModeOperator, mode: str, state: TwoModeState) -> TwoModeState:
    """Apply a single-mode operator to tensor factor 'a' or 'b'.

    Linear, no renormalization.  Operators on different modes commute up to
    floating-point reassociation of the two matrix products.
    """
    amp = state.amplitudes
    if mode == "a":
        if op.matrix.shape[0] != state.cutoff.dim_a:
            raise ValueError(
                f"operator dimension {op.matrix.shape[0]} does not match mode a "
                f"dimension {state.cutoff.dim_a}"
            )
        out = op.matrix @ amp
    elif mode == "b":
        if op.matrix.shape[0] != state.cutoff.dim_b:
            raise ValueError(
                f"operator dimension {op.matrix.shape[0]} does not match mode b "
                f"dimension {state.cutoff.dim_b}"
            )
        out = amp @ op.matrix.T
    else:
        raise ValueError(f"mode must be 'a' or 'b', got {mode!r}")
    return TwoModeState(out, state.cutoff)


def expectation(
    state: TwoModeState,
    op_a: ModeOperator | None = None,
    op_b: ModeOperator | None = None,
) -> complex:
    """<psi| (A tensor B) |psi> with identity filled in for omitted factors."""
    transformed = state
    if op_a is not None:
        transformed = apply_to_mode(op_a, "a", transformed)
    if op_b is not None:
        transformed = apply_to_mode(op_b, "b", transformed)
    return inner(state, transformed)


def inner(u: TwoModeState, v: TwoModeState) -> complex:
    """<u|v>, conjugate-linear in the first argument."""
    if u.cutoff != v.cutoff:
        raise ValueError("inner product requires matching cutoffs")
    return complex(np.vdot(u.amplitudes, v.amplitudes))


def norm(u: TwoModeState) -> float:
    return float(np.linalg.norm(u.amplitudes))


def normalize(u: TwoModeState) -> TwoModeState:
    n = norm(u)
    if n < _ZERO_NORM_FLOOR:
        raise ValueError("cannot normalize a zero-norm state")
    return TwoModeState(u.amplitudes / n, u.cutoff)


def tail_mass(state: TwoModeState) -> float:
    """Probability mass on the top retained level of either mode."""
    amp = state.amplitudes
    top_a = float(np.sum(np.abs(amp[-1, :]) ** 2))
    top_b = float(np.sum(np.abs(amp[:, -1]) ** 2))
    # The corner cell sits in both slices; count it once.
    corner = float(np.abs(amp[-1, -1]) ** 2)
    return top_a + top_b - corner


def warn_if_truncated(state: TwoModeState, tail_tol: float, context: str) -> float:
    """Emit TruncationWarning when the top-level mass exceeds tail_tol."""
    mass = tail_mass(state)
    if mass > tail_tol:
        warnings.warn(
            TruncationWarning(
                f"{context}: top-level tail mass {mass:.3e} exceeds tolerance {tail_tol:.1e}"
            ),
            stacklevel=3,
        )
    return mass


def embed(state: TwoModeState, cutoff: FockCutoff) -> TwoModeState:
    """Zero-pad a state into a larger cutoff (exact isometry)."""
    if cutoff.n_max_a < state.cutoff.n_max_a or cutoff.n_max_b < state.cutoff.n_max_b:
        raise ValueError("target cutoff must dominate the source cutoff")
    amp = np.zeros((cutoff.dim_a, cutoff.dim_b), dtype=np.complex128)
    amp[: state.cutoff.dim_a, : state.cutoff.dim_b] = state.amplitudes
    return TwoModeState(amp, cutoff)


def apply_annihilation(state: TwoModeState, mode: str) -> TwoModeState:
    """a|psi> (or b|psi>).  Exact on the truncated support; same cutoff."""
    amp = state.amplitudes
    out = np.zeros_like(amp)
    if mode == "a":
        n = np.sqrt(np.arange(1, amp.shape[0], dtype=np.float64))
        out[:-1, :] = n[:, None] * amp[1:, :]
    elif mode == "b":
        n = np.sqrt(np.arange(1, amp.shape[1], dtype=np.float64))
        out[:, :-1] = n[None, :] * amp[:, 1:]
    else:
        raise ValueError(f"mode must be 'a' or 'b', got {mode!r}")
    return TwoModeState(out, state.cutoff)


def apply_creation(state: TwoModeState, mode: str) -> TwoModeState:
    """a^dag|psi> with the cutoff grown by one level on the raised mode.

    Growing the target space keeps the result exact for every input, so
    quadratic moments built from these applications carry no boundary
    defect from the truncated commutator.
    """
    amp = state.amplitudes
    if mode == "a":
        grown = FockCutoff(state.cutoff.n_max_a + 1, state.cutoff.n_max_b)
        out = np.zeros((grown.dim_a, grown.dim_b), dtype=np.complex128)
        n = np.sqrt(np.arange(1, grown.dim_a, dtype=np.float64))
        out[1:, :] = n[:, None] * amp
    elif mode == "b":
        grown = FockCutoff(state.cutoff.n_max_a, state.cutoff.n_max_b + 1)
        out = np.zeros((grown.dim_a, grown.dim_b), dtype=np.complex128)
        n = np.sqrt(np.arange(1, grown.dim_b, dtype=np.float64))
        out[:, 1:] = n[None, :] * amp
    else:
        raise ValueError(f"mode must be 'a' or 'b', got {mode!r}")
    return TwoModeState(out, grown)
