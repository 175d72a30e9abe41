"""Band structures of periodic graphs and their collision and density scans.

A periodic graph reduces, fiber by fiber over the torus of quasimomenta
theta in [0,1)^d, to a nu x nu Hermitian matrix H(theta) whose eigenvalue
branches are the band functions. Two scan operations live here: counting
near-collisions E_s(theta + m/N) = E_w(theta) over a finite grid (the
ergodicity condition for the time average to converge), and accumulating the
grid approximation of the limiting density from per-point eigenprojections.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graphs import FiniteGraph, ParameterError, PeriodicGraphSpec, ProductKind
from .spectral import (
    DEFAULT_CLUSTER_TOL,
    DensityMatrix,
    EigenSolverError,
    NumericalError,
    SpectralDecomposition,
    cluster_eigenvalues,
    eigendecompose_symmetric,
)

__all__ = [
    "DEFAULT_COLLISION_DELTA",
    "BaseLattice",
    "BandStructure",
    "FloquetScanReport",
    "GridDensityResult",
    "base_band",
    "build_floquet_matrix",
    "product_spec",
    "product_bands",
    "flat_band_check",
    "floquet_condition_fraction",
    "general_density",
]

DEFAULT_COLLISION_DELTA = 1e-9

_HERMITICITY_TOL = 1e-12
_GRID_ROW_SUM_TOL = 1e-8


@dataclass(frozen=True)
class BaseLattice:
    """One-vertex periodic base: the integer lattice Z^d or the triangular lattice."""

    kind: str
    d: int

    def __post_init__(self) -> None:
        if self.kind not in ("zd", "triangular"):
            raise ParameterError(f"unknown base lattice {self.kind!r}")
        d = int(self.d)
        if self.kind == "zd" and d < 1:
            raise ParameterError("integer lattice needs d >= 1")
        if self.kind == "triangular" and d != 2:
            raise ParameterError("triangular lattice is two-dimensional")
        object.__setattr__(self, "d", d)

    @staticmethod
    def zd(d: int = 1) -> "BaseLattice":
        return BaseLattice("zd", d)

    @staticmethod
    def triangular() -> "BaseLattice":
        return BaseLattice("triangular", 2)


def base_band(base: BaseLattice, theta: float | Sequence[float]) -> float:
    """Band function of the one-vertex base lattice at quasimomentum theta.

    Z^d: 2 sum_i cos(2 pi theta_i). Triangular: 2cos(2 pi theta_1)
    + 2cos(2 pi theta_2) + 2cos(2 pi (theta_1 + theta_2)). Periodic in each
    component with period 1.
    """
    th = np.atleast_1d(np.asarray(theta, dtype=float))
    if th.shape != (base.d,):
        raise ParameterError(f"theta must have {base.d} component(s)")
    if base.kind == "zd":
        return float(2.0 * np.cos(2.0 * np.pi * th).sum())
    return float(
        2.0 * np.cos(2.0 * np.pi * th[0])
        + 2.0 * np.cos(2.0 * np.pi * th[1])
        + 2.0 * np.cos(2.0 * np.pi * (th[0] + th[1]))
    )


def build_floquet_matrix(spec: PeriodicGraphSpec, theta: float | Sequence[float]) -> np.ndarray:
    """Fiber matrix H(theta)(p, q) = sum over offset edges e^(2 pi i theta.n) + Q(p) delta_pq."""
    th = np.atleast_1d(np.asarray(theta, dtype=float))
    if th.shape != (spec.d,):
        raise ParameterError(f"theta must have {spec.d} component(s)")
    h = np.zeros((spec.nu, spec.nu), dtype=complex)
    for p, q, off in spec.offset_edges:
        h[p, q] += np.exp(2j * np.pi * float(np.dot(th, off)))
    h[np.diag_indices(spec.nu)] += np.asarray(spec.potential, dtype=float)
    if np.abs(h - h.conj().T).max() > _HERMITICITY_TOL:
        raise NumericalError("fiber matrix is not Hermitian")
    return h


@dataclass(frozen=True)
class BandStructure:
    """Band functions of a product of a one-vertex base with a finite graph.

    The bands are E_j(theta) = rule(E_0(theta), mu_j) over the eigenvalues
    mu_j of the finite factor: E_0 + mu_j for the box product, mu_j * E_0 for
    the tensor product, (1 + mu_j) E_0 + mu_j for the strong product.
    """

    base: BaseLattice
    spectrum: SpectralDecomposition
    rule: ProductKind

    @property
    def nu(self) -> int:
        return self.spectrum.nu


def product_spec(
    base: BaseLattice,
    graph: FiniteGraph,
    kind: ProductKind,
    tol: float = DEFAULT_CLUSTER_TOL,
) -> BandStructure:
    """Band structure of the product of a base lattice with a finite graph."""
    spectrum = eigendecompose_symmetric(graph.adjacency, tol)
    return BandStructure(base=base, spectrum=spectrum, rule=kind)


def _apply_rule(rule: ProductKind, e0: np.ndarray | float, mu: float) -> np.ndarray | float:
    if rule is ProductKind.CARTESIAN:
        return e0 + mu
    if rule is ProductKind.TENSOR:
        return mu * e0
    return (1.0 + mu) * e0 + mu


def product_bands(bands: BandStructure, theta: float | Sequence[float]) -> np.ndarray:
    """All nu band values at one theta, ordered like the factor eigenvalues."""
    e0 = base_band(bands.base, theta)
    return np.array([_apply_rule(bands.rule, e0, float(mu)) for mu in bands.spectrum.eigenvalues])


def flat_band_check(bands: BandStructure, tol: float = DEFAULT_CLUSTER_TOL) -> list[int]:
    """Indices of theta-independent bands.

    The box product has none; the tensor product is flat where mu_j = 0; the
    strong product is flat where mu_j = -1. Matching uses the clustering
    scale tol * max(1, spectral radius).
    """
    mu = bands.spectrum.eigenvalues
    scale = tol * max(1.0, float(np.abs(mu).max()))
    if bands.rule is ProductKind.CARTESIAN:
        return []
    if bands.rule is ProductKind.TENSOR:
        return [int(j) for j in np.nonzero(np.abs(mu) <= scale)[0]]
    return [int(j) for j in np.nonzero(np.abs(mu + 1.0) <= scale)[0]]


def _axis_cos(n: int) -> np.ndarray:
    # min(k, n-k) makes mirrored grid points bit-identical, so exact band
    # degeneracies under k -> n-k survive floating point.
    k = np.arange(n)
    return 2.0 * np.cos(2.0 * np.pi * np.minimum(k, n - k) / n)


def _base_grid(base: BaseLattice, n: int) -> np.ndarray:
    """Base band sampled on the grid {0..n-1}^d / n, shape (n,) * d."""
    c = _axis_cos(n)
    if base.kind == "zd":
        grid = np.zeros((n,) * base.d)
        for axis in range(base.d):
            shape = [1] * base.d
            shape[axis] = n
            grid = grid + c.reshape(shape)
        return grid
    k = np.arange(n)
    return c[:, None] + c[None, :] + c[(k[:, None] + k[None, :]) % n]


@dataclass(frozen=True)
class FloquetScanReport:
    """Worst near-collision fraction of band pairs over a shifted grid.

    ``max_fraction`` is the largest fraction of grid points where band s at
    theta + m/N meets band w at theta within delta, over all nonzero integer
    shifts m and band pairs (s, w). The time average converges to the
    limiting density exactly when this fraction vanishes as N grows.
    """

    N: int
    max_fraction: float
    worst_shift: tuple[int, ...]
    worst_pair: tuple[int, int]
    flat_bands: tuple[int, ...]


def floquet_condition_fraction(
    bands: BandStructure, N: int, delta: float = DEFAULT_COLLISION_DELTA
) -> FloquetScanReport:
    """Scan all nonzero grid shifts for band near-collisions.

    For every m in {0..N-1}^d except 0 and every band pair (s, w), counts the
    grid points r with |E_s((r + m)/N) - E_w(r/N)| < delta and reports the
    maximum count divided by N^d. Ties keep the first shift and pair in
    lexicographic order. A flat band forces max_fraction = 1.
    """
    N = int(N)
    if N < 2:
        raise ParameterError("grid size N must be >= 2")
    if not delta > 0:
        raise ParameterError("collision width delta must be positive")
    d = bands.base.d
    nu = bands.nu
    base = _base_grid(bands.base, N)
    grid = np.stack([np.asarray(_apply_rule(bands.rule, base, float(mu))) for mu in bands.spectrum.eigenvalues])
    axes = tuple(range(1, d + 1))
    total = N**d
    best_count = -1
    best_shift: tuple[int, ...] = ()
    best_pair = (0, 0)
    for shift in np.ndindex(*((N,) * d)):
        if not any(shift):
            continue
        rolled = np.roll(grid, tuple(-s for s in shift), axis=axes)
        close = np.abs(rolled[:, None] - grid[None, :]) < delta
        counts = close.reshape(nu, nu, -1).sum(axis=2)
        s, w = np.unravel_index(int(np.argmax(counts)), (nu, nu))
        count = int(counts[s, w])
        if count > best_count:
            best_count = count
            best_shift = tuple(int(x) for x in shift)
            best_pair = (int(s), int(w))
    return FloquetScanReport(
        N=N,
        max_fraction=best_count / total,
        worst_shift=best_shift,
        worst_pair=best_pair,
        flat_bands=tuple(flat_band_check(bands)),
    )


@dataclass(frozen=True)
class GridDensityResult:
    """Grid approximation of the limiting density of a periodic graph.

    ``values[p, q]`` averages sum_s |P_s(theta)(p, q)|^2 over the N^d grid of
    quasimomenta. Rows sum to 1 within 1e-8 (per-point projections are
    complete, only rounding accumulates).
    """

    values: np.ndarray
    N: int

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ValueError("grid density must be square")
        row_err = np.abs(v.sum(axis=1) - 1.0).max()
        if row_err > _GRID_ROW_SUM_TOL:
            raise NumericalError(f"grid density rows do not sum to 1: deviation {row_err:.3e}")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "N", int(self.N))

    @property
    def nu(self) -> int:
        return self.values.shape[0]

    def to_density_matrix(self) -> DensityMatrix:
        """Repackage with the stricter DensityMatrix row tolerance."""
        return DensityMatrix(values=self.values, source="quadrature")


def general_density(
    spec: PeriodicGraphSpec, N: int, tol: float = DEFAULT_CLUSTER_TOL
) -> GridDensityResult:
    """Grid-quadrature limiting density of an arbitrary periodic spec.

    Diagonalizes H(r/N) at every grid point, clusters the eigenvalues with
    the shared single-linkage rule, and accumulates the squared moduli of the
    distinct-eigenvalue projections.
    """
    N = int(N)
    if N < 1:
        raise ParameterError("grid size N must be >= 1")
    acc = np.zeros((spec.nu, spec.nu))
    for r in np.ndindex(*((N,) * spec.d)):
        theta = np.asarray(r, dtype=float) / N
        h = build_floquet_matrix(spec, theta)
        try:
            vals, vecs = np.linalg.eigh(h)
        except np.linalg.LinAlgError as exc:
            raise EigenSolverError(f"fiber eigendecomposition failed at grid point {r}") from exc
        for idx in cluster_eigenvalues(vals, tol):
            p = vecs[:, idx] @ vecs[:, idx].conj().T
            acc += p.real**2 + p.imag**2
    acc /= N**spec.d
    return GridDensityResult(values=acc, N=N)
