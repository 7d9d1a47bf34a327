"""Brute-force density-matrix pipeline used as the numeric oracle.

Partial trace straight from pure-state amplitudes, partial transpose,
a deterministic cyclic Jacobi eigensolver, and spectrum functionals
(von Neumann entropy in bits, negativity, mutual information).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fock import PureState

SYMMETRY_RTOL = 1e-13
EIGENVALUE_CLAMP = 1e-10


class ConvergenceError(RuntimeError):
    """Raised when an iterative routine fails to reach its tolerance."""


@dataclass(frozen=True)
class DensityMatrix:
    entries: np.ndarray = field(repr=False)
    subsystem_shape: tuple
    labels: tuple

    def __post_init__(self):
        dim = int(np.prod(self.subsystem_shape))
        if self.entries.shape != (dim, dim):
            raise ValueError(
                f"entries shape {self.entries.shape} does not match subsystem shape "
                f"{self.subsystem_shape}"
            )
        if len(self.labels) != len(self.subsystem_shape):
            raise ValueError("labels and subsystem_shape must have the same length")
        scale = np.max(np.abs(self.entries)) or 1.0
        if np.max(np.abs(self.entries - self.entries.T)) > SYMMETRY_RTOL * scale:
            raise ValueError("density matrix entries are not symmetric")

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def trace(self) -> float:
        return float(np.trace(self.entries))


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray = field(repr=False)
    trace_check: float


@dataclass(frozen=True)
class NegativityResult:
    negative_sum: float
    most_negative: float
    paper_measure: float  # 2 * |most negative eigenvalue|


def reduced_density(state: PureState, keep) -> DensityMatrix:
    """Trace out every mode not in `keep`, directly from the amplitudes.

    rho[i, j] = sum_t psi(i, t) psi(j, t) over traced-out multi-indices t,
    so the full pure-state density matrix is never materialized.
    """
    keep = list(keep)
    if not keep:
        raise ValueError("keep must name at least one mode")
    keep_axes = [state.axis_of(label) for label in keep]
    if len(set(keep_axes)) != len(keep_axes):
        raise ValueError("duplicate labels in keep")
    # canonical order: follow the state's declared mode order
    keep_axes.sort()
    traced_axes = [ax for ax in range(state.mode_count) if ax not in keep_axes]
    d = state.cutoff + 1
    psi = np.transpose(state.amplitudes, keep_axes + traced_axes)
    psi = psi.reshape(d ** len(keep_axes), d ** len(traced_axes))
    rho = psi @ psi.T
    return DensityMatrix(
        entries=rho,
        subsystem_shape=(d,) * len(keep_axes),
        labels=tuple(state.mode_order[ax] for ax in keep_axes),
    )


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Trace a density matrix down to the named subsystems."""
    keep = list(keep)
    if not keep:
        raise ValueError("keep must name at least one subsystem")
    idx = []
    for label in keep:
        if label not in rho.labels:
            raise KeyError(f"unknown subsystem {label!r}; have {rho.labels}")
        idx.append(rho.labels.index(label))
    idx.sort()
    nsub = len(rho.labels)
    shape = rho.subsystem_shape
    t = rho.entries.reshape(shape + shape)
    traced = [ax for ax in range(nsub) if ax not in idx]
    remaining = list(range(nsub))
    for ax in sorted(traced, reverse=True):
        pos = remaining.index(ax)
        t = np.trace(t, axis1=pos, axis2=pos + len(remaining))
        remaining.remove(ax)
    return DensityMatrix(
        entries=t.reshape(int(np.prod([shape[i] for i in idx])), -1),
        subsystem_shape=tuple(shape[i] for i in idx),
        labels=tuple(rho.labels[i] for i in idx),
    )


def partial_transpose(rho: DensityMatrix, subsystem: str) -> DensityMatrix:
    """Transpose the indices of one subsystem only. Output may be non-positive."""
    if subsystem not in rho.labels:
        raise KeyError(f"unknown subsystem {subsystem!r}; have {rho.labels}")
    k = rho.labels.index(subsystem)
    nsub = len(rho.labels)
    shape = rho.subsystem_shape
    t = rho.entries.reshape(shape + shape)
    t = np.swapaxes(t, k, k + nsub)
    return DensityMatrix(
        entries=t.reshape(rho.dim, rho.dim).copy(),
        subsystem_shape=shape,
        labels=rho.labels,
    )


def eig_symmetric(matrix, tol: float = 1e-14, max_sweeps: int = 100) -> Spectrum:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.

    Sweeps run in a fixed row-major pivot order until the off-diagonal
    Frobenius mass drops below tol * ||matrix||, so identical inputs give
    bit-identical spectra.
    """
    if isinstance(matrix, DensityMatrix):
        matrix = matrix.entries
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    scale = np.max(np.abs(a)) or 1.0
    if np.max(np.abs(a - a.T)) > SYMMETRY_RTOL * scale:
        raise ValueError("matrix is not symmetric within tolerance")
    a = 0.5 * (a + a.T)
    n = a.shape[0]
    trace = float(np.trace(a))
    fro = float(np.linalg.norm(a))
    if fro == 0.0:
        return Spectrum(eigenvalues=np.zeros(n), trace_check=0.0)
    for _ in range(max_sweeps):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= tol * fro:
            return Spectrum(eigenvalues=np.sort(np.diag(a)), trace_check=trace)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                diff = a[q, q] - a[p, p]
                if abs(diff) > 2e150 * abs(apq):  # tan ~ apq/diff; avoid overflow in theta^2
                    t = apq / diff
                else:
                    theta = diff / (2.0 * apq)
                    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = 0.0
                a[q, p] = 0.0
    raise ConvergenceError(f"Jacobi sweep limit ({max_sweeps}) reached without convergence")


def vn_entropy(spec: Spectrum) -> float:
    """von Neumann entropy in bits from an eigenvalue spectrum.

    Eigenvalues in [-1e-10, 0) are treated as rounding noise and clamped to
    zero; anything more negative signals a non-physical input.
    """
    lam = np.asarray(spec.eigenvalues, dtype=float)
    if np.any(lam < -EIGENVALUE_CLAMP):
        raise ValueError(
            f"eigenvalue {lam.min()} below -{EIGENVALUE_CLAMP}: input is not a physical state"
        )
    lam = lam[lam > 0.0]
    if lam.size == 0:
        return 0.0
    s = float(-np.sum(lam * np.log2(lam)))
    return max(s, 0.0)


def negativity_sum(spec: Spectrum) -> NegativityResult:
    """Negativity data of a partial-transpose spectrum."""
    lam = np.asarray(spec.eigenvalues, dtype=float)
    neg = lam[lam < 0.0]
    most = float(lam.min()) if lam.size else 0.0
    return NegativityResult(
        negative_sum=float(-neg.sum()),
        most_negative=most,
        paper_measure=2.0 * abs(most) if most < 0.0 else 0.0,
    )


def _normalized_entropy(rho: DensityMatrix) -> float:
    spec = eig_symmetric(rho.entries)
    lam = np.asarray(spec.eigenvalues, dtype=float)
    if np.any(lam < -EIGENVALUE_CLAMP):
        raise ValueError(f"non-physical reduced density: min eigenvalue {lam.min()}")
    lam = lam[lam > 0.0]
    tr = lam.sum()
    if tr <= 0.0:
        return 0.0
    lam = lam / tr  # renormalize so truncation deficit does not corrupt the entropy
    s = float(-np.sum(lam * np.log2(lam)))
    return s if s > 0.0 else 0.0  # also maps -0.0 to 0.0


def mutual_information_numeric(state: PureState) -> dict:
    """Entropies and mutual information of the exterior pair, numerically.

    Returns {"s_a", "s_b", "s_ab", "mutual_information"} with entropies of
    the trace-renormalized spectra.
    """
    if state.mode_count != 4:
        raise ValueError("mutual information is defined for the 4-mode pair state")
    rho_ab = reduced_density(state, keep=("A_out", "B_out"))
    rho_a = partial_trace(rho_ab, keep=("A_out",))
    rho_b = partial_trace(rho_ab, keep=("B_out",))
    s_ab = _normalized_entropy(rho_ab)
    s_a = _normalized_entropy(rho_a)
    s_b = _normalized_entropy(rho_b)
    return {
        "s_a": s_a,
        "s_b": s_b,
        "s_ab": s_ab,
        "mutual_information": s_a + s_b - s_ab,
    }
