"""Convex-body representations and exact primitive operations.

Two concrete body types cover everything downstream: `Polygon` (ordered CCW
vertex list) and `Polytope3` (vertices plus merged planar facets).  All values
are immutable after construction and every operation is pure, so bodies are
safe to share between threads.

Predicates use a single global relative tolerance ``EPS``; all identities in
the test suite are checked relatively against it.
"""

from __future__ import annotations

import logging

import numpy as np
from scipy.spatial import ConvexHull, QhullError, cKDTree

from .errors import (
    DegenerateInput,
    DimensionMismatch,
    GeometryError,
    NonUnitDirection,
    OriginNotInterior,
    SingularMatrix,
)

log = logging.getLogger(__name__)

#: Global relative tolerance for geometric predicates.
EPS = 1e-9

# Facet-merge thresholds for 3D hulls: normals within EPS (as a chord length)
# and plane offsets within EPS relative to the body scale.
_MERGE_NORMAL_TOL = 1e-9


def _as_points(points, dim=None):
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2:
        raise DegenerateInput("expected an (n, dim) array of points")
    if dim is not None and pts.shape[1] != dim:
        raise DimensionMismatch(f"expected {dim}-dimensional points, got {pts.shape[1]}")
    if pts.shape[1] not in (2, 3):
        raise GeometryError("only dimensions 2 and 3 are supported")
    if not np.all(np.isfinite(pts)):
        raise DegenerateInput("points must have finite coordinates")
    return pts


def _span(pts):
    return float(np.max(np.ptp(pts, axis=0))) if len(pts) else 0.0


def _dedup_points(pts, tol):
    """Drop points closer than tol to an earlier point (keep-first)."""
    if len(pts) < 2 or tol <= 0:
        return pts
    tree = cKDTree(pts)
    pairs = tree.query_pairs(tol, output_type="ndarray")
    if len(pairs) == 0:
        return pts
    drop = np.zeros(len(pts), dtype=bool)
    for i, j in pairs[np.argsort(pairs[:, 1])]:
        if not drop[i]:
            drop[j] = True
    return pts[~drop]


def _affine_rank(pts, tol):
    centered = pts - pts.mean(axis=0)
    if len(pts) < 2:
        return 0
    s = np.linalg.svd(centered, compute_uv=False)
    return int(np.sum(s > tol * max(s[0], 1e-300)))


def rot90(u):
    """Rotate a 2D vector by +pi/2."""
    return np.array([-u[1], u[0]], dtype=float)


# ---------------------------------------------------------------------------
# body types


class Polygon:
    """Convex polygon given by its vertices in counterclockwise order.

    The constructor validates the invariants: at least three vertices, no
    duplicates, and strictly convex position (every consecutive cross product
    positive beyond tolerance).  Clockwise input is reversed, so orientation
    is always CCW after construction.  Use :func:`hull` to build a Polygon
    from an unordered or redundant point set.
    """

    dim = 2

    def __init__(self, vertices):
        v = _as_points(vertices, dim=2).copy()
        if len(v) < 3:
            raise DegenerateInput("a polygon needs at least 3 vertices")
        area2 = np.sum(v[:, 0] * np.roll(v[:, 1], -1) - np.roll(v[:, 0], -1) * v[:, 1])
        if area2 < 0:
            v = v[::-1].copy()
            area2 = -area2
        span = _span(v)
        edges = np.roll(v, -1, axis=0) - v
        cross = edges[:, 0] * np.roll(edges[:, 1], -1) - edges[:, 1] * np.roll(edges[:, 0], -1)
        # validate at half the hull filter's tolerance so rings that passed
        # the strictness filter cannot straddle the threshold in re-check
        if span <= 0 or np.any(cross <= 0.5 * EPS * span * span):
            raise DegenerateInput("vertices are not in strictly convex position")

        self.vertices = v
        self.vertices.flags.writeable = False
        lengths = np.linalg.norm(edges, axis=1)
        # outward unit normal of the CCW edge [v_i, v_{i+1}]
        normals = np.column_stack((edges[:, 1], -edges[:, 0])) / lengths[:, None]
        self.facet_normals = normals
        self.facet_offsets = np.sum(normals * v, axis=1)
        self.facet_areas = lengths
        self._volume = 0.5 * float(area2)
        self._diameter = _diameter(v)
        for arr in (self.facet_normals, self.facet_offsets, self.facet_areas):
            arr.flags.writeable = False

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        return f"Polygon({len(self)} vertices, area={self._volume:.6g})"

    @property
    def volume(self):
        """Enclosed area (the 2-dimensional volume)."""
        return self._volume

    @property
    def diameter(self):
        return self._diameter

    def support(self, u):
        return float(np.max(self.vertices @ np.asarray(u, dtype=float)))

    def support_many(self, dirs):
        return np.max(np.asarray(dirs, dtype=float) @ self.vertices.T, axis=1)

    def gauge(self, u):
        return float(self.gauge_many(np.asarray(u, dtype=float)[None, :])[0])

    def gauge_many(self, dirs):
        return _gauge_many(self, dirs)

    def contains(self, x, tol=None):
        return _contains(self, x, tol)

    def interior_point(self):
        return self.vertices.mean(axis=0)

    def translate(self, t):
        return Polygon(self.vertices + np.asarray(t, dtype=float))

    def scale(self, s):
        if s == 0:
            raise DegenerateInput("scale factor must be nonzero")
        return Polygon(self.vertices * float(s))

    def negate(self):
        return Polygon(-self.vertices)


class Polytope3:
    """Convex polytope in 3-space: vertices plus merged planar facets.

    Each facet is a CCW vertex-index loop (seen from outside) together with
    its outward unit normal and plane offset.  Construction validates
    planarity, containment of every vertex in every facet halfspace, loop
    consistency (each edge shared by exactly two facets) and Euler's relation
    V - E + F = 2.
    """

    dim = 3

    def __init__(self, vertices, facet_loops):
        v = _as_points(vertices, dim=3).copy()
        if len(v) < 4:
            raise DegenerateInput("a 3-polytope needs at least 4 vertices")
        loops = [tuple(int(i) for i in loop) for loop in facet_loops]
        if len(loops) < 4 or any(len(loop) < 3 for loop in loops):
            raise DegenerateInput("a 3-polytope needs at least 4 facets with 3+ vertices each")
        span = _span(v)
        tol = max(EPS * span, 1e-300)
        centroid = v.mean(axis=0)

        normals = np.empty((len(loops), 3))
        offsets = np.empty(len(loops))
        areas = np.empty(len(loops))
        fixed_loops = []
        for f, loop in enumerate(loops):
            pts = v[list(loop)]
            raw = np.sum(np.cross(pts, np.roll(pts, -1, axis=0)), axis=0)
            nrm = np.linalg.norm(raw)
            # degeneracy is relative to the facet's own extent: genuinely tiny
            # facets (near-concurrent crease lines) are legitimate
            facet_span = float(np.max(np.ptp(pts, axis=0)))
            if facet_span <= 0 or nrm <= EPS * facet_span * facet_span:
                raise DegenerateInput(f"facet {f} is degenerate")
            n = raw / nrm
            b = float(np.mean(pts @ n))
            if n @ centroid > b:
                loop = loop[::-1]
                n, b = -n, -b
            normals[f] = n
            offsets[f] = b
            areas[f] = 0.5 * nrm
            fixed_loops.append(loop)
            if np.max(np.abs(pts @ n - b)) > 10 * tol:
                raise DegenerateInput(f"facet {f} is not planar within tolerance")

        slack = v @ normals.T - offsets
        if np.max(slack) > 10 * tol:
            raise DegenerateInput("a vertex lies outside a facet halfspace")

        # consistent orientation: every edge appears in exactly two loops,
        # traversed in opposite directions
        directed = set()
        for loop in fixed_loops:
            for a, b_ in zip(loop, loop[1:] + loop[:1]):
                if (a, b_) in directed:
                    raise DegenerateInput("facet loops are not consistently oriented")
                directed.add((a, b_))
        if any((b_, a) not in directed for a, b_ in directed):
            raise DegenerateInput("facet loops are not edge-consistent")
        n_edges = len(directed) // 2
        if len(v) - n_edges + len(fixed_loops) != 2:
            raise DegenerateInput("facet structure violates the Euler relation")

        self.vertices = v
        self.facet_loops = tuple(fixed_loops)
        self.facet_normals = normals
        self.facet_offsets = offsets
        self.facet_areas = areas
        self._volume = float(np.sum(offsets * areas)) / 3.0
        self._diameter = _diameter(v)
        for arr in (self.vertices, self.facet_normals, self.facet_offsets, self.facet_areas):
            arr.flags.writeable = False

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        return f"Polytope3({len(self)} vertices, {len(self.facet_loops)} facets, volume={self._volume:.6g})"

    @property
    def volume(self):
        return self._volume

    @property
    def diameter(self):
        return self._diameter

    def support(self, u):
        return float(np.max(self.vertices @ np.asarray(u, dtype=float)))

    def support_many(self, dirs):
        return np.max(np.asarray(dirs, dtype=float) @ self.vertices.T, axis=1)

    def gauge(self, u):
        return float(self.gauge_many(np.asarray(u, dtype=float)[None, :])[0])

    def gauge_many(self, dirs):
        return _gauge_many(self, dirs)

    def contains(self, x, tol=None):
        return _contains(self, x, tol)

    def interior_point(self):
        return self.vertices.mean(axis=0)

    def translate(self, t):
        return Polytope3(self.vertices + np.asarray(t, dtype=float), self.facet_loops)

    def scale(self, s):
        s = float(s)
        if s == 0:
            raise DegenerateInput("scale factor must be nonzero")
        if s > 0:
            return Polytope3(self.vertices * s, self.facet_loops)
        return Polytope3(self.vertices * s, [loop[::-1] for loop in self.facet_loops])

    def negate(self):
        return Polytope3(-self.vertices, [loop[::-1] for loop in self.facet_loops])


#: A convex body is either a Polygon or a Polytope3.
Body = Polygon | Polytope3


def _diameter(v):
    d2 = np.sum((v[:, None, :] - v[None, :, :]) ** 2, axis=-1)
    return float(np.sqrt(np.max(d2)))


def _gauge_many(body, dirs):
    dirs = np.asarray(dirs, dtype=float)
    tol = EPS * body.diameter
    if np.min(body.facet_offsets) <= tol:
        raise OriginNotInterior("gauge requires the origin strictly inside the body")
    ratios = (dirs @ body.facet_normals.T) / body.facet_offsets
    return 1.0 / np.max(ratios, axis=1)


def _contains(body, x, tol):
    if tol is None:
        tol = EPS * body.diameter
    x = np.asarray(x, dtype=float)
    return bool(np.max(x @ body.facet_normals.T - body.facet_offsets) <= tol)


# ---------------------------------------------------------------------------
# hull construction


def hull(points):
    """Convex hull of a 2D or 3D point set as a validated body.

    The result's vertex set is exactly the extreme points of the input
    (coordinates are passed through unchanged).  Raises DegenerateInput when
    the points do not span the ambient dimension.
    """
    pts = _as_points(points)
    span = _span(pts)
    pts = _dedup_points(pts, EPS * span)
    dim = pts.shape[1]
    if len(pts) < dim + 1 or _affine_rank(pts, 1e-12) < dim:
        raise DegenerateInput("points are lower-dimensional")
    if dim == 2:
        return Polygon(pts[_hull2_indices(pts)])
    return _hull3(pts)


def _hull2_indices(pts, tol=None):
    """Monotone chain; returns CCW indices of the strictly extreme points."""
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    if tol is None:
        tol = EPS * _span(pts) ** 2

    def build(seq):
        chain = []
        for idx in seq:
            while len(chain) >= 2:
                o, a = pts[chain[-2]], pts[chain[-1]]
                b = pts[idx]
                cross = (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
                if cross <= tol:
                    chain.pop()
                else:
                    break
            chain.append(idx)
        return chain

    lower = build(order)
    upper = build(order[::-1])
    ring = lower[:-1] + upper[:-1]
    # the chain junctions are never turn-checked; sweep out flat corners
    changed = True
    while changed and len(ring) > 2:
        changed = False
        kept = []
        m = len(ring)
        for k in range(m):
            o, a, b = pts[ring[k - 1]], pts[ring[k]], pts[ring[(k + 1) % m]]
            cross = (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
            if cross <= tol:
                changed = True
            else:
                kept.append(ring[k])
        ring = kept
    return np.array(ring, dtype=int)


def _hull3(pts):
    """Qhull-backed 3D hull with coplanar facets merged into convex loops.

    Points within EPS*span of being non-extreme (flat sliver vertices from
    near-collinear or near-coplanar candidates) are discarded before the
    facet structure is assembled.
    """
    span = _span(pts)
    for _ in range(16):
        try:
            qh = ConvexHull(pts)
        except QhullError as exc:
            raise DegenerateInput(f"hull construction failed: {exc}") from exc
        flat = _flat_sliver_vertices(pts, qh, EPS * span)
        if not flat:
            break
        log.debug("dropping %d flat hull vertices", len(flat))
        keep = np.ones(len(pts), dtype=bool)
        keep[list(flat)] = False
        pts = pts[keep]
    else:
        raise DegenerateInput("hull did not stabilize after sliver removal")

    normals = qh.equations[:, :3]
    offsets = -qh.equations[:, 3]
    nsimp = len(qh.simplices)

    # group simplices whose planes agree within tolerance; BFS against the
    # seed simplex keeps the criterion from drifting along a chain
    group = np.full(nsimp, -1, dtype=int)
    ngroups = 0
    for seed in range(nsimp):
        if group[seed] >= 0:
            continue
        gid, stack = ngroups, [seed]
        group[seed] = gid
        while stack:
            cur = stack.pop()
            for nb in qh.neighbors[cur]:
                if group[nb] >= 0:
                    continue
                if (
                    np.linalg.norm(normals[nb] - normals[seed]) <= _MERGE_NORMAL_TOL
                    and abs(offsets[nb] - offsets[seed]) <= EPS * span
                ):
                    group[nb] = gid
                    stack.append(nb)
        ngroups += 1

    raw_loops = []
    used = set()
    for gid in range(ngroups):
        simplex_ids = np.nonzero(group == gid)[0]
        vids = np.unique(qh.simplices[simplex_ids])
        n = normals[simplex_ids[0]]
        basis1 = np.cross(n, [1.0, 0.0, 0.0])
        if np.linalg.norm(basis1) < 0.5:
            basis1 = np.cross(n, [0.0, 1.0, 0.0])
        basis1 /= np.linalg.norm(basis1)
        basis2 = np.cross(n, basis1)
        # convex facet: its loop is the 2D hull in plane coordinates, which
        # also drops points that are interior or collinear within the facet
        local = np.column_stack((pts[vids] @ basis1, pts[vids] @ basis2))
        ring = _hull2_indices(local, tol=EPS * span * max(_span(local), EPS * span))
        loop = [int(vids[i]) for i in ring]
        # outward orientation: the group normal must point away from the body
        if n @ pts.mean(axis=0) > offsets[simplex_ids[0]]:
            loop = loop[::-1]
        raw_loops.append(loop)
        used.update(loop)

    order = sorted(used)
    remap = {old: new for new, old in enumerate(order)}
    return Polytope3(pts[order], [[remap[i] for i in loop] for loop in raw_loops])


def _flat_sliver_vertices(pts, qh, height_tol):
    """Vertices sitting within height_tol of the opposite edge of a hull
    triangle; such points are non-extreme up to tolerance."""
    flat = set()
    for simplex in qh.simplices:
        tri = pts[simplex]
        sides = tri[[1, 2, 0]] - tri
        lengths = np.linalg.norm(sides, axis=1)
        area2 = np.linalg.norm(np.cross(sides[0], -sides[2]))
        longest = int(np.argmax(lengths))
        if area2 <= height_tol * lengths[longest]:
            # vertex opposite the longest edge is the nearly-collinear one
            flat.add(int(simplex[(longest + 2) % 3]))
    return flat


# ---------------------------------------------------------------------------
# primitive operations


def volume(body):
    """n-dimensional volume (area in 2D)."""
    return body.volume


def support(body, u):
    """Support function h(u) = max over vertices of <u, v>."""
    return body.support(np.asarray(u, dtype=float))


def gauge(body, u):
    """Gauge (radial) function: the largest tau with tau*u inside the body."""
    return body.gauge(np.asarray(u, dtype=float))


def polar(body):
    """Polar dual: each facet plane (n, b) maps to the vertex n/b.

    Requires the origin strictly interior.  Applying polar twice reproduces
    the original body up to tolerance.
    """
    tol = EPS * body.diameter
    if np.min(body.facet_offsets) <= tol:
        raise OriginNotInterior("polar requires the origin strictly inside the body")
    return hull(body.facet_normals / body.facet_offsets[:, None])


def minkowski_sum(a, b):
    """Minkowski sum of two convex bodies of equal dimension."""
    if a.dim != b.dim:
        raise DimensionMismatch("minkowski_sum needs bodies of equal dimension")
    if a.dim == 2:
        return Polygon(_minkowski_vertices_2d(a, b))
    sums = (a.vertices[:, None, :] + b.vertices[None, :, :]).reshape(-1, 3)
    return hull(sums)


def _minkowski_vertices_2d(a, b):
    """CCW edge merge; output coordinates are exact sums of input vertices."""

    def rolled(poly):
        v = poly.vertices
        start = np.lexsort((v[:, 0], v[:, 1]))[0]
        return np.roll(v, -start, axis=0)

    va, vb = rolled(a), rolled(b)
    ea = np.roll(va, -1, axis=0) - va
    eb = np.roll(vb, -1, axis=0) - vb

    def unwrapped_angles(e):
        ang = np.arctan2(e[:, 1], e[:, 0])
        for i in range(1, len(ang)):
            while ang[i] <= ang[i - 1] - 1e-15:
                ang[i] += 2 * np.pi
        return ang

    aa, ab = unwrapped_angles(ea), unwrapped_angles(eb)
    out = [va[0] + vb[0]]
    i = j = 0
    while i < len(ea) or j < len(eb):
        if j >= len(eb) or (i < len(ea) and aa[i] <= ab[j]):
            step = ea[i]
            i += 1
        else:
            step = eb[j]
            j += 1
        out.append(out[-1] + step)
    pts = np.array(out[:-1])
    return pts[_hull2_indices(pts)]


def difference_body(body):
    """Difference body K + (-K); always origin-symmetric."""
    return minkowski_sum(body, body.negate())


def central_symmetral(body):
    """Half the difference body."""
    return difference_body(body).scale(0.5)


def _check_unit(u):
    u = np.asarray(u, dtype=float)
    if abs(np.linalg.norm(u) - 1.0) > 1e-9:
        raise NonUnitDirection("direction must be a unit vector")
    return u


def brightness(body, u):
    """(n-1)-volume of the shadow of the body on the hyperplane normal to u.

    2D: length of the projection onto the line perpendicular to u.
    3D: Cauchy's formula, half the sum of |<u, n_F>| * area(F) over facets.
    """
    u = _check_unit(u)
    if body.dim == 2:
        w = rot90(u)
        return body.support(w) + body.support(-w)
    return 0.5 * float(np.sum(np.abs(body.facet_normals @ u) * body.facet_areas))


def brightness_many(body, dirs):
    """Vectorized brightness over an array of unit directions."""
    dirs = np.asarray(dirs, dtype=float)
    if body.dim == 2:
        w = np.column_stack((-dirs[:, 1], dirs[:, 0]))
        return body.support_many(w) + body.support_many(-w)
    return 0.5 * np.abs(dirs @ body.facet_normals.T) @ body.facet_areas


def shadow_area(body, u):
    """Brightness computed the slow way: hull of the projected vertices.

    Kept separate from :func:`brightness` as an independent cross-check.
    """
    u = _check_unit(u)
    if body.dim == 2:
        proj = body.vertices @ rot90(u)
        return float(np.max(proj) - np.min(proj))
    basis1 = np.cross(u, [1.0, 0.0, 0.0])
    if np.linalg.norm(basis1) < 0.5:
        basis1 = np.cross(u, [0.0, 1.0, 0.0])
    basis1 /= np.linalg.norm(basis1)
    basis2 = np.cross(u, basis1)
    flat = np.column_stack((body.vertices @ basis1, body.vertices @ basis2))
    ring = flat[_hull2_indices(flat)]
    area2 = np.sum(ring[:, 0] * np.roll(ring[:, 1], -1) - np.roll(ring[:, 0], -1) * ring[:, 1])
    return 0.5 * abs(float(area2))


def affine_image(body, mat, shift=None):
    """Image of the body under the invertible affine map x -> mat @ x + shift."""
    mat = np.asarray(mat, dtype=float)
    if mat.shape != (body.dim, body.dim):
        raise DimensionMismatch("affine matrix has the wrong shape")
    if abs(np.linalg.det(mat)) < 1e-12:
        raise SingularMatrix("affine map must be invertible")
    shift = np.zeros(body.dim) if shift is None else np.asarray(shift, dtype=float)
    mapped = body.vertices @ mat.T + shift
    if body.dim == 2:
        return Polygon(mapped)
    return hull(mapped)


# ---------------------------------------------------------------------------
# distances


def point_body_distance(x, body):
    """Euclidean distance from a point to a convex body (0 if inside)."""
    x = np.asarray(x, dtype=float)
    if body.contains(x, tol=0.0):
        return 0.0
    if body.dim == 2:
        v = body.vertices
        return float(np.min(_point_segment_distances(x, v, np.roll(v, -1, axis=0))))
    best = np.inf
    for f, loop in enumerate(body.facet_loops):
        n = body.facet_normals[f]
        slack = float(x @ n - body.facet_offsets[f])
        foot = x - slack * n
        ring = body.vertices[list(loop)]
        edges = np.roll(ring, -1, axis=0) - ring
        inward = np.cross(n, edges)
        if np.all(np.sum((foot - ring) * inward, axis=1) >= -EPS * body.diameter):
            best = min(best, abs(slack))
        else:
            best = min(best, float(np.min(_point_segment_distances(x, ring, np.roll(ring, -1, axis=0)))))
    return best


def _point_segment_distances(x, starts, ends):
    d = ends - starts
    t = np.clip(np.sum((x - starts) * d, axis=1) / np.sum(d * d, axis=1), 0.0, 1.0)
    feet = starts + t[:, None] * d
    return np.linalg.norm(feet - x, axis=1)


def hausdorff_distance(a, b):
    """Hausdorff distance between two convex bodies (exact for polytopes:
    the directed distance from a polytope is attained at a vertex)."""
    if a.dim != b.dim:
        raise DimensionMismatch("hausdorff_distance needs bodies of equal dimension")
    d_ab = max(point_body_distance(v, b) for v in a.vertices)
    d_ba = max(point_body_distance(v, a) for v in b.vertices)
    return max(d_ab, d_ba)
