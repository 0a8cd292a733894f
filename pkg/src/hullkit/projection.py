"""Projection bodies, polar projection bodies, and touching-translate checks.

The translative constant volume property (TCVP) says the hull volume of any
touching pair of translates is the same; equivalently the excess
Delta(u) = gauge_{K-K}(u) * brightness(K, u) is constant in u, and
equivalently the polar projection body is a positive multiple of K - K.
``tcvp_check`` measures both formulations and reports their agreement.

Only positive homothety of the polar projection body is tested; rotational
similarity is out of scope.  Likewise, no affine (Radon-curve) normalization
is attempted in the plane: Delta-constancy is the criterion.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bodies import Polygon, brightness_many, difference_body, hull, polar
from .illumination import HomothetyReport, homothety_fit
from .sampling import ball_body, direction_set

#: Relative spread below which Delta(u) counts as constant.
TCVP_TOL = 1e-6

#: Homothety-defect threshold for "ball-like" verdicts against polygonal
#: ball approximations.
BALL_FIT_TOL = 1e-3


@dataclass(frozen=True)
class TcvpReport:
    """Delta(u) statistics plus the polar-projection-body homothety fit."""

    delta_min: float
    delta_max: float
    delta_mean: float
    relative_spread: float
    polar_projection_homothety: HomothetyReport
    passes: bool


def projection_body(body):
    """Body whose support function is the brightness function.

    2D: the difference body rotated by pi/2.  3D: the zonotope generated by
    the segments [-g_F, g_F] with g_F = area(F)/2 * n_F, built by iterated
    Minkowski sums (parallel generators are combined first, which covers the
    antipodal facet pairs of symmetric bodies).
    """
    if body.dim == 2:
        d = difference_body(body)
        rotated = np.column_stack((-d.vertices[:, 1], d.vertices[:, 0]))
        return Polygon(rotated)
    gens = 0.5 * body.facet_areas[:, None] * body.facet_normals
    return _zonotope(gens)


def _zonotope(generators):
    """Hull of the Minkowski sum of the segments [-g, g]."""
    gens = [g for g in np.asarray(generators, dtype=float) if np.linalg.norm(g) > 1e-14]
    merged: list[np.ndarray] = []
    for g in gens:
        for i, h in enumerate(merged):
            cross = np.linalg.norm(np.cross(g, h))
            if cross <= 1e-12 * np.linalg.norm(g) * np.linalg.norm(h):
                sign = 1.0 if g @ h > 0 else -1.0
                merged[i] = h + sign * g
                break
        else:
            merged.append(g.copy())
    if len(merged) < 3:
        raise ValueError("zonotope generators do not span 3-space")
    # seed with a parallelepiped of three independent generators
    seed = [merged[0]]
    for g in merged[1:]:
        if len(seed) == 1 and np.linalg.norm(np.cross(seed[0], g)) > 1e-12:
            seed.append(g)
        elif len(seed) == 2 and abs(np.cross(seed[0], seed[1]) @ g) > 1e-12:
            seed.append(g)
        if len(seed) == 3:
            break
    if len(seed) < 3:
        raise ValueError("zonotope generators do not span 3-space")
    rest = [g for g in merged if not any(g is s for s in seed)]
    corners = np.array([s1 * seed[0] + s2 * seed[1] + s3 * seed[2]
                        for s1 in (-1, 1) for s2 in (-1, 1) for s3 in (-1, 1)])
    zono = hull(corners)
    for g in rest:
        segment_ends = np.vstack((zono.vertices + g, zono.vertices - g))
        zono = hull(segment_ends)
    return zono


def polar_projection_body(body):
    """Polar dual of the projection body (which always contains the origin)."""
    return polar(projection_body(body))


def delta_values(body, dirs):
    """Excess hull volume over touching translates, per direction."""
    d = difference_body(body)
    return d.gauge_many(dirs) * brightness_many(body, dirs)


def tcvp_check(body, n_dirs=360):
    """Measure Delta(u) over a deterministic direction set and fit the
    polar projection body against the difference body."""
    if n_dirs < 16:
        raise ValueError("n_dirs must be at least 16")
    dirs = direction_set(body.dim, n_dirs)
    deltas = delta_values(body, dirs)
    dmin, dmax, dmean = float(np.min(deltas)), float(np.max(deltas)), float(np.mean(deltas))
    spread = (dmax - dmin) / dmean
    fit = homothety_fit(difference_body(body), polar_projection_body(body))
    return TcvpReport(
        delta_min=dmin,
        delta_max=dmax,
        delta_mean=dmean,
        relative_spread=spread,
        polar_projection_homothety=fit,
        passes=bool(spread < TCVP_TOL),
    )


def translative_volume_constant(body, n_dirs=720):
    """Max hull volume over touching translates, normalized by volume:
    1 + max_u Delta(u) / vol."""
    if n_dirs < 16:
        raise ValueError("n_dirs must be at least 16")
    dirs = direction_set(body.dim, n_dirs)
    return 1.0 + float(np.max(delta_values(body, dirs))) / body.volume


def constancy_check(body):
    """(width_constant, brightness_constant) verdicts via ball fits.

    Constant width means the difference body is a ball; constant brightness
    means the projection body is.  Both are tested by homothety fits against
    a fixed polygonal ball approximation at tolerance BALL_FIT_TOL.
    """
    ball = ball_body(body.dim)
    width = homothety_fit(ball, difference_body(body)).defect < BALL_FIT_TOL
    bright = homothety_fit(ball, projection_body(body)).defect < BALL_FIT_TOL
    return bool(width), bool(bright)
