"""Time evolution and time-averaged distributions on discrete-torus products.

The simulation graph is the box product of a d-dimensional discrete torus
(N-cycle per axis) with a finite graph. Its eigenpairs factor into plane
waves over the cells and eigenvectors of the finite factor, with eigenvalues
lambda_(r, j) = 2 sum_i cos(2 pi r_i / N) + mu_j. All dynamics here run in
that factored eigenbasis; states are dense complex vectors indexed in
C order by (cell_0, ..., cell_(d-1), q), i.e. flat index (cell)*nu + q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graphs import FiniteGraph, ParameterError
from .spectral import (
    DEFAULT_CLUSTER_TOL,
    NumericalError,
    SpectralDecomposition,
    cluster_eigenvalues,
    density_from_decomposition,
    eigendecompose_symmetric,
)

__all__ = [
    "STATE_BUDGET",
    "PAIR_SUM_LIMIT",
    "TorusOperator",
    "TimeAveragedDistribution",
    "build_torus",
    "evolve",
    "apply_adjacency",
    "time_averaged",
    "infinite_time_averaged",
    "total_variation",
    "limit_prediction",
]

# Dense state vectors only; no truncation anywhere.
STATE_BUDGET = 1 << 20
# The exact finite-horizon average is a double sum over eigenpair pairs with
# O(dim^2) memory, so it gets a much smaller ceiling than vector evolution.
PAIR_SUM_LIMIT = 1024

_NORM_TOL = 1e-10
_MASS_TOL = 1e-10
_REALNESS_TOL = 1e-12

Start = tuple[Sequence[int] | int, int]


@dataclass(frozen=True)
class TorusOperator:
    """Adjacency operator of (d-dimensional N-torus) box (finite graph).

    ``spectrum`` is the eigendecomposition of the finite factor,
    ``base_grid`` the torus band 2 sum_i cos(2 pi r_i / N) over the cell
    grid, and ``eigenvalues`` the full array lambda[r, j] of shape
    (N,)*d + (nu,). Mirror-degenerate cells r and N - r hold bit-identical
    band values by construction.
    """

    spectrum: SpectralDecomposition
    N: int
    d: int
    base_grid: np.ndarray
    eigenvalues: np.ndarray

    @property
    def nu(self) -> int:
        return self.spectrum.nu

    @property
    def dim(self) -> int:
        return self.nu * self.N**self.d

    @property
    def grid_shape(self) -> tuple[int, ...]:
        return (self.N,) * self.d


def build_torus(
    graph: FiniteGraph, d: int, N: int, tol: float = DEFAULT_CLUSTER_TOL
) -> TorusOperator:
    """Assemble the factored eigenstructure of the torus product.

    Requires N >= 3 (smaller cycles degenerate to multi-edges) and a total
    state count nu * N^d within the dense budget of 2^20.
    """
    d, N = int(d), int(N)
    if d < 1:
        raise ParameterError("torus dimension d must be >= 1")
    if N < 3:
        raise ParameterError("cells per axis N must be >= 3")
    dim = graph.nu * N**d
    if dim > STATE_BUDGET:
        raise ParameterError(f"state count {dim} exceeds the dense budget {STATE_BUDGET}")
    spectrum = eigendecompose_symmetric(graph.adjacency, tol)
    k = np.arange(N)
    c = 2.0 * np.cos(2.0 * np.pi * np.minimum(k, N - k) / N)
    base = np.zeros((N,) * d)
    for axis in range(d):
        shape = [1] * d
        shape[axis] = N
        base = base + c.reshape(shape)
    lam = base[..., None] + spectrum.eigenvalues
    base.flags.writeable = False
    lam.flags.writeable = False
    return TorusOperator(spectrum=spectrum, N=N, d=d, base_grid=base, eigenvalues=lam)


def _normalize_start(op: TorusOperator, start: Start) -> tuple[tuple[int, ...], int]:
    cell, p = start
    if isinstance(cell, (int, np.integer)):
        cell = (int(cell),)
    cell = tuple(int(x) % op.N for x in cell)
    if len(cell) != op.d:
        raise ParameterError(f"start cell must have {op.d} component(s)")
    p = int(p)
    if not 0 <= p < op.nu:
        raise ParameterError(f"start vertex {p} out of range 0..{op.nu - 1}")
    return cell, p


def _assemble(op: TorusOperator, start: tuple[tuple[int, ...], int], weights: np.ndarray) -> np.ndarray:
    """Sum of weighted eigenpair contributions for a walk started at (n, p).

    Returns the flat complex vector with entries
    sum_(r, j) weights[r, j] e^(2 pi i r.(k - n)/N) w_j(p) w_j(q) / N^d
    at (k, q); evolve and the averaged distributions differ only in weights.
    """
    cell, p = start
    w = op.spectrum.eigenvectors
    fiber = (weights * w[p, :]) @ w.T  # (grid..., q)
    axes = tuple(range(op.d))
    psi = np.fft.ifftn(fiber, axes=axes)
    psi = np.roll(psi, cell, axis=axes)
    return psi.reshape(-1)


def evolve(op: TorusOperator, start: Start, t: float) -> np.ndarray:
    """Amplitude vector e^(itA) delta_(n, p), flat over (cells, q).

    The result is validated to stay normalized within 1e-10.
    """
    t = float(t)
    if not math.isfinite(t):
        raise ParameterError("time t must be finite")
    start = _normalize_start(op, start)
    psi = _assemble(op, start, np.exp(1j * t * op.eigenvalues))
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > _NORM_TOL:
        raise NumericalError(f"evolution lost unitarity: norm {norm:.12g}")
    return psi


def apply_adjacency(op: TorusOperator, x: np.ndarray) -> np.ndarray:
    """Apply the torus adjacency operator through the factored eigenbasis."""
    x = np.asarray(x)
    if x.shape != (op.dim,):
        raise ParameterError(f"state must be a flat vector of length {op.dim}")
    grid = x.reshape(op.grid_shape + (op.nu,))
    axes = tuple(range(op.d))
    w = op.spectrum.eigenvectors
    hat = np.fft.fftn(grid, axes=axes) @ w
    hat *= op.eigenvalues
    out = np.fft.ifftn(hat @ w.T, axes=axes)
    return out.reshape(-1)


@dataclass(frozen=True)
class TimeAveragedDistribution:
    """Site distribution of the walk averaged over [0, T] (T may be inf).

    ``values`` is the flat probability vector over (cells, q) in the same
    C-order layout as ``evolve``. Entries are nonnegative and sum to 1
    within 1e-10.
    """

    values: np.ndarray
    horizon: float
    start: tuple[tuple[int, ...], int]
    N: int
    d: int
    nu: int

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or v.size != self.nu * self.N**self.d:
            raise ValueError("distribution length must equal nu * N^d")
        if v.min() < 0.0:
            raise NumericalError("distribution has negative entries")
        mass_err = abs(float(v.sum()) - 1.0)
        if mass_err > _MASS_TOL:
            raise NumericalError(f"distribution mass deviates from 1 by {mass_err:.3e}")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    def cell_masses(self) -> np.ndarray:
        """Total mass per cell, shape (N,) * d."""
        return self.values.reshape((self.N,) * self.d + (self.nu,)).sum(axis=-1)


def _finalize_distribution(
    op: TorusOperator, start: tuple[tuple[int, ...], int], values: np.ndarray, horizon: float
) -> TimeAveragedDistribution:
    if values.min() < -_REALNESS_TOL:
        raise NumericalError(f"averaged distribution has negative mass {values.min():.3e}")
    return TimeAveragedDistribution(
        values=np.maximum(values, 0.0),
        horizon=horizon,
        start=start,
        N=op.N,
        d=op.d,
        nu=op.nu,
    )


def _phi(x: np.ndarray) -> np.ndarray:
    """Mean of e^(i x s) over s in [0, 1]: (e^(ix) - 1)/(ix), 1 at x = 0."""
    x = np.asarray(x, dtype=float)
    out = np.ones(x.shape, dtype=complex)
    big = np.abs(x) > 1e-8
    xb = x[big]
    out[big] = (np.exp(1j * xb) - 1.0) / (1j * xb)
    return out


def time_averaged(op: TorusOperator, start: Start, horizon: float) -> TimeAveragedDistribution:
    """Exact average of |e^(itA) delta|^2 over t in [0, horizon].

    Expands the average into eigenpair cross terms weighted by
    (e^(iT Delta) - 1)/(iT Delta); no time quadrature is involved. Memory is
    quadratic in the state count, hence the 1024-state ceiling.
    """
    horizon = float(horizon)
    if not (math.isfinite(horizon) and horizon > 0):
        raise ParameterError("averaging horizon must be positive and finite")
    start = _normalize_start(op, start)
    if op.dim > PAIR_SUM_LIMIT:
        raise ParameterError(
            f"finite-horizon averaging supports up to {PAIR_SUM_LIMIT} states, got {op.dim}"
        )
    n, p = start
    N, d, nu = op.N, op.d, op.nu
    f = np.exp(2j * np.pi * np.outer(np.arange(N), np.arange(N)) / N) / np.sqrt(N)
    u = op.spectrum.eigenvectors.astype(complex)
    for _ in range(d):
        u = np.kron(f, u)  # columns ordered (r_0, ..., r_(d-1), j), C order
    lam = op.eigenvalues.reshape(-1)
    v_flat = int(np.ravel_multi_index(n + (p,), op.grid_shape + (nu,)))
    amp = u * u[v_flat, :].conj()  # amp[w, alpha] = alpha(w) conj(alpha(start))
    phi = _phi(horizon * (lam[:, None] - lam[None, :]))
    mu = np.einsum("wb,wb->w", amp @ phi, amp.conj())
    imag_err = float(np.abs(mu.imag).max())
    if imag_err > _REALNESS_TOL:
        raise NumericalError(f"averaged distribution not real: residue {imag_err:.3e}")
    return _finalize_distribution(op, start, mu.real, horizon)


def infinite_time_averaged(
    op: TorusOperator, start: Start, cluster_tol: float = DEFAULT_CLUSTER_TOL
) -> TimeAveragedDistribution:
    """Infinite-horizon average: squared projections onto eigenvalue clusters.

    All nu N^d eigenvalues are clustered with the shared single-linkage rule,
    so the structural r <-> N - r degeneracies (bit-identical here) and any
    accidental cross-band coincidences within tolerance land in one cluster.
    """
    start = _normalize_start(op, start)
    lam = op.eigenvalues.reshape(-1)
    order = np.argsort(lam, kind="stable")
    mu = np.zeros(op.dim)
    for group in cluster_eigenvalues(lam[order], cluster_tol):
        weights = np.zeros(op.dim)
        weights[order[group]] = 1.0
        a = _assemble(op, start, weights.reshape(op.grid_shape + (op.nu,)))
        mu += a.real**2 + a.imag**2
    return _finalize_distribution(op, start, mu, math.inf)


def total_variation(a: np.ndarray, b: np.ndarray) -> float:
    """Total variation distance between two distributions of equal length."""
    av = np.asarray(getattr(a, "values", a), dtype=float)
    bv = np.asarray(getattr(b, "values", b), dtype=float)
    if av.shape != bv.shape:
        raise ValueError("distributions must have equal length")
    return 0.5 * float(np.abs(av - bv).sum())


def limit_prediction(op: TorusOperator, start: Start) -> np.ndarray:
    """Factored prediction for the infinite-time average.

    Cells decouple in the limit: each of the N^d cells carries the finite
    factor's limiting density row of the start vertex divided by N^d. Exact
    whenever no accidental cross-band degeneracies couple the factors.
    """
    _, p = _normalize_start(op, start)
    row = density_from_decomposition(op.spectrum).values[p]
    return np.tile(row / op.N**op.d, op.N**op.d)
