"""Classical random-walk baseline: stationary law, bipartiteness, iteration."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .graphs import FiniteGraph, ParameterError
from .spectral import NumericalError

__all__ = [
    "WalkReport",
    "transition_matrix",
    "stationary_distribution",
    "is_bipartite",
    "iterate_distribution",
    "walk_report",
]

_STATIONARY_TOL = 1e-12


def transition_matrix(graph: FiniteGraph, lazy: bool = False) -> np.ndarray:
    """Row-stochastic simple (or lazy) random-walk matrix D^{-1} A."""
    deg = graph.degrees()
    if np.any(deg == 0):
        isolated = int(np.nonzero(deg == 0)[0][0])
        raise ParameterError(f"vertex {isolated} is isolated; the walk is undefined")
    p = graph.adjacency / deg[:, None]
    if lazy:
        p = 0.5 * (np.eye(graph.nu) + p)
    return p


def stationary_distribution(graph: FiniteGraph) -> np.ndarray:
    """Degree-proportional stationary law pi(v) = deg(v) / (2 |E|)."""
    deg = graph.degrees()
    if np.any(deg == 0):
        isolated = int(np.nonzero(deg == 0)[0][0])
        raise ParameterError(f"vertex {isolated} is isolated; no stationary law")
    pi = deg / deg.sum()
    err = np.abs(pi @ transition_matrix(graph) - pi).max()
    if err > _STATIONARY_TOL:
        raise NumericalError(f"stationarity check failed: deviation {err:.3e}")
    return pi


def is_bipartite(graph: FiniteGraph) -> bool:
    """Two-colorability by breadth-first search over every component."""
    color = np.full(graph.nu, -1, dtype=int)
    neighbors: list[list[int]] = [[] for _ in range(graph.nu)]
    for u, v in graph.edges:
        neighbors[u].append(v)
        neighbors[v].append(u)
    for root in range(graph.nu):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in neighbors[u]:
                if color[v] == -1:
                    color[v] = 1 - color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    return False
    return True


def iterate_distribution(
    graph: FiniteGraph, start: int, steps: int, lazy: bool = False
) -> np.ndarray:
    """Distribution of the walk after ``steps`` moves from ``start``."""
    start, steps = int(start), int(steps)
    if not 0 <= start < graph.nu:
        raise ParameterError(f"start vertex {start} out of range 0..{graph.nu - 1}")
    if steps < 0:
        raise ParameterError("step count must be >= 0")
    p = transition_matrix(graph, lazy=lazy)
    dist = np.zeros(graph.nu)
    dist[start] = 1.0
    for _ in range(steps):
        dist = dist @ p
    return dist


@dataclass(frozen=True)
class WalkReport:
    """Stationary law, bipartiteness, and optional iterates of the walk."""

    stationary: np.ndarray
    bipartite: bool
    iterates: tuple[np.ndarray, ...] | None = None


def walk_report(
    graph: FiniteGraph,
    start: int | None = None,
    steps: int | None = None,
    lazy: bool = False,
) -> WalkReport:
    """Bundle the classical quantities; iterates included when start and steps given."""
    iterates = None
    if start is not None and steps is not None:
        iterates = (iterate_distribution(graph, start, steps, lazy=lazy),)
    return WalkReport(
        stationary=stationary_distribution(graph),
        bipartite=is_bipartite(graph),
        iterates=iterates,
    )
