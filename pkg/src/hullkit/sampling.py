"""Deterministic direction sets and reproducible body generators.

Direction sets are fixed (uniform angles in 2D, a Fibonacci spiral on the
sphere in 3D) so that fitted quantities and reports are bit-reproducible.
Random bodies take an explicit numpy Generator; the CLI seeds it once per
run, which makes search logs reproducible.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .bodies import Polygon, hull


def circle_directions(n):
    """n unit vectors at uniform angles 2*pi*k/n."""
    ang = 2.0 * np.pi * np.arange(n) / n
    return np.column_stack((np.cos(ang), np.sin(ang)))


def fibonacci_sphere(n):
    """n nearly-uniform unit vectors on S^2 (golden-angle spiral)."""
    k = np.arange(n, dtype=float)
    z = 1.0 - (2.0 * k + 1.0) / n
    r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    phi = k * np.pi * (3.0 - np.sqrt(5.0))
    return np.column_stack((r * np.cos(phi), r * np.sin(phi), z))


def direction_set(dim, n):
    if dim == 2:
        return circle_directions(n)
    return fibonacci_sphere(n)


def regular_polygon(m, radius=1.0, center=(0.0, 0.0), phase=0.0):
    """Regular m-gon inscribed in the circle of the given radius."""
    ang = phase + 2.0 * np.pi * np.arange(m) / m
    v = radius * np.column_stack((np.cos(ang), np.sin(ang)))
    return Polygon(v + np.asarray(center, dtype=float))


def random_polygon(rng, n_vertices, radius=1.0):
    """Random convex n-gon inscribed in a circle, origin well interior.

    Vertex angles are resampled until gaps stay in (0.05, pi - 0.05); all
    circle points are strictly extreme, so the polygon always validates.
    """
    while True:
        ang = np.sort(rng.uniform(0.0, 2.0 * np.pi, n_vertices))
        gaps = np.diff(np.append(ang, ang[0] + 2.0 * np.pi))
        if np.min(gaps) > 0.05 and np.max(gaps) < np.pi - 0.05:
            break
    return Polygon(radius * np.column_stack((np.cos(ang), np.sin(ang))))


def random_polytope3(rng, n_vertices, radius=1.0):
    """Hull of points uniform on the sphere, origin well interior."""
    while True:
        pts = rng.normal(size=(n_vertices, 3))
        pts *= radius / np.linalg.norm(pts, axis=1)[:, None]
        body = hull(pts)
        if len(body) == n_vertices and np.min(body.facet_offsets) > 0.05 * radius:
            return body


def reuleaux_polygon(points_per_arc=100, width=1.0):
    """Polygonal approximation of the Reuleaux triangle of the given width.

    Three circular arcs of radius `width`, each centered at a vertex of an
    equilateral triangle with side `width`; centroid at the origin.
    """
    h = width / np.sqrt(3.0)
    corners = h * np.column_stack(
        (np.cos(np.pi / 2 + 2 * np.pi * np.arange(3) / 3), np.sin(np.pi / 2 + 2 * np.pi * np.arange(3) / 3))
    )
    pts = []
    for i in range(3):
        center = corners[i]
        a, b = corners[(i + 1) % 3], corners[(i + 2) % 3]
        start = np.arctan2(*(a - center)[::-1])
        end = np.arctan2(*(b - center)[::-1])
        while end < start:
            end += 2.0 * np.pi
        ang = start + (end - start) * np.arange(points_per_arc) / points_per_arc
        pts.append(center + width * np.column_stack((np.cos(ang), np.sin(ang))))
    return hull(np.vstack(pts))


@lru_cache(maxsize=4)
def ball_body(dim, n=None):
    """Deterministic polytopal approximation of the unit ball."""
    if dim == 2:
        return regular_polygon(n or 256)
    return hull(fibonacci_sphere(n or 1024))
