"""Closed-form limiting densities for cycles, paths, stars, and hypercubes.

Each family admits an exact rational formula for the limiting density of the
time-averaged walk. The ``*_exact`` functions return ``fractions.Fraction``
values; the plain functions convert to float at the end. Paths and stars use
the 1-based vertex labeling of their family builders (the star's center is
vertex nu + 1); cycles are 0-based; hypercube entries depend only on the
Hamming distance u between the two vertices.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from .graphs import ParameterError, build_named
from .spectral import DensityMatrix

__all__ = [
    "CLOSED_FORM_FAMILIES",
    "d_cycle",
    "d_path",
    "d_star",
    "d_hypercube",
    "d_cycle_exact",
    "d_path_exact",
    "d_star_exact",
    "d_hypercube_exact",
    "closed_form_density",
    "closed_form_labels",
]

CLOSED_FORM_FAMILIES = ("cycle", "path", "star", "hypercube")


def d_cycle_exact(nu: int, p: int, q: int) -> Fraction:
    """Cycle density for vertices p, q in 0..nu-1 (nu >= 3).

    Odd nu: (2nu - 1)/nu^2 on the diagonal, (nu - 1)/nu^2 off it. Even nu:
    2(nu - 1)/nu^2 when q is p or the antipode p + nu/2, (nu - 2)/nu^2
    otherwise.
    """
    nu, p, q = int(nu), int(p), int(q)
    if nu < 3:
        raise ParameterError("cycle needs nu >= 3")
    if not (0 <= p < nu and 0 <= q < nu):
        raise ParameterError(f"cycle vertices must lie in 0..{nu - 1}")
    if nu % 2 == 1:
        if p == q:
            return Fraction(2 * nu - 1, nu * nu)
        return Fraction(nu - 1, nu * nu)
    if q == p or (q - p) % nu == nu // 2:
        return Fraction(2 * (nu - 1), nu * nu)
    return Fraction(nu - 2, nu * nu)


def d_path_exact(nu: int, p: int, q: int) -> Fraction:
    """Path density for vertices p, q in 1..nu (nu >= 2).

    2/(nu + 1) at the middle vertex pair p = q = (nu + 1)/2 (odd nu),
    3/(2(nu + 1)) when p = q or p + q = nu + 1 otherwise, 1/(nu + 1) else.
    """
    nu, p, q = int(nu), int(p), int(q)
    if nu < 2:
        raise ParameterError("path needs nu >= 2")
    if not (1 <= p <= nu and 1 <= q <= nu):
        raise ParameterError(f"path vertices must lie in 1..{nu}")
    if nu % 2 == 1 and 2 * p == nu + 1 and p == q:
        return Fraction(2, nu + 1)
    if p == q or p + q == nu + 1:
        return Fraction(3, 2 * (nu + 1))
    return Fraction(1, nu + 1)


def d_star_exact(nu: int, p: int, q: int) -> Fraction:
    """Star density for vertices p, q in 1..nu+1, center nu + 1 (nu >= 1 leaves).

    Diagonal leaf entries carry (nu - 1)^2/nu^2 + 1/(2 nu^2), distinct leaf
    pairs 1/nu^2 + 1/(2 nu^2), leaf-center pairs 1/(2 nu), and the center
    diagonal 1/2.
    """
    nu, p, q = int(nu), int(p), int(q)
    if nu < 1:
        raise ParameterError("star needs nu >= 1 leaves")
    if not (1 <= p <= nu + 1 and 1 <= q <= nu + 1):
        raise ParameterError(f"star vertices must lie in 1..{nu + 1}")
    center = nu + 1
    if p == center and q == center:
        return Fraction(1, 2)
    if p == center or q == center:
        return Fraction(1, 2 * nu)
    if p == q:
        return Fraction((nu - 1) ** 2, nu * nu) + Fraction(1, 2 * nu * nu)
    return Fraction(1, nu * nu) + Fraction(1, 2 * nu * nu)


def d_hypercube_exact(m: int, u: int) -> Fraction:
    """Hypercube density at Hamming distance u in an m-cube (0 <= u <= m).

    Alternating-binomial inner sums squared, over exact integers:
    sum_j (sum_b (-1)^b C(u, b) C(m - u, j - b))^2 / 2^(2m).
    """
    m, u = int(m), int(u)
    if m < 1:
        raise ParameterError("hypercube needs dimension m >= 1")
    if not 0 <= u <= m:
        raise ParameterError(f"Hamming distance must lie in 0..{m}")
    total = 0
    for j in range(m + 1):
        inner = 0
        for b in range(u + 1):
            if 0 <= j - b <= m - u:
                inner += (-1) ** b * comb(u, b) * comb(m - u, j - b)
        total += inner * inner
    return Fraction(total, 1 << (2 * m))


def d_cycle(nu: int, p: int, q: int) -> float:
    return float(d_cycle_exact(nu, p, q))


def d_path(nu: int, p: int, q: int) -> float:
    return float(d_path_exact(nu, p, q))


def d_star(nu: int, p: int, q: int) -> float:
    return float(d_star_exact(nu, p, q))


def d_hypercube(m: int, u: int) -> float:
    return float(d_hypercube_exact(m, u))


def closed_form_density(family: str, params: Sequence[int]) -> DensityMatrix:
    """Assemble the full closed-form density matrix for a supported family.

    Vertex indexing matches ``build_named``: 0-based storage with the family's
    conventional labels on top. Hypercube entries are looked up by the Hamming
    distance between the binary expansions of the endpoints.
    """
    if family == "cycle":
        nu = _single(family, params)
        if nu < 3:
            raise ParameterError("cycle needs nu >= 3")
        values = np.array([[d_cycle(nu, p, q) for q in range(nu)] for p in range(nu)])
    elif family == "path":
        nu = _single(family, params)
        if nu < 2:
            raise ParameterError("path needs nu >= 2")
        values = np.array(
            [[d_path(nu, p + 1, q + 1) for q in range(nu)] for p in range(nu)]
        )
    elif family == "star":
        nu = _single(family, params)
        if nu < 1:
            raise ParameterError("star needs nu >= 1 leaves")
        size = nu + 1
        values = np.array(
            [[d_star(nu, p + 1, q + 1) for q in range(size)] for p in range(size)]
        )
    elif family == "hypercube":
        m = _single(family, params)
        if m < 1:
            raise ParameterError("hypercube needs dimension m >= 1")
        size = 1 << m
        dist_values = [d_hypercube(m, u) for u in range(m + 1)]
        values = np.array(
            [[dist_values[bin(p ^ q).count("1")] for q in range(size)] for p in range(size)]
        )
    else:
        raise ParameterError(f"no closed form for family {family!r}")
    return DensityMatrix(values=values, source="closed-form")


def _single(family: str, params: Sequence[int]) -> int:
    if len(params) != 1:
        raise ParameterError(f"family {family!r} takes 1 parameter, got {len(params)}")
    return int(params[0])


def closed_form_labels(family: str, params: Sequence[int]) -> tuple[str, ...]:
    """Display labels matching ``closed_form_density`` row order."""
    return build_named(family, params).vertex_labels()
