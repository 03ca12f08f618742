"""Compact sets in finite-dimensional normed spaces.

Provides the metric context (selectable norms), a closed catalog of
compact-set representations, and the set-level operations used by the
rest of the kit: point-set distance, excess (one-sided discrepancy),
Hausdorff distance, enlargements and seeded sampling.

Every value is immutable after construction and every operation is a
pure function of its arguments plus an explicit seed, so concurrent use
is safe and results are schedule-independent.

Closed forms are used wherever they exist (balls, boxes, spheres,
orthants, finite vertex sets).  Where only an iterative scheme is
available (polytope projection, halfspace intersections) the result
carries an ``approximate`` flag and an error estimate instead of a
silently wrong value; ``+inf`` is the sentinel for an excess that no
bounded target can absorb.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

DEFAULT_TOL = 1e-9

__all__ = [
    "DEFAULT_TOL",
    "DimensionMismatchError",
    "SamplingBudgetError",
    "Distance",
    "NormedSpace",
    "SetRep",
    "Ball",
    "Box",
    "VPolytope",
    "PointCloud",
    "FormGroup",
    "SublevelRegion",
    "Orthant",
    "Sphere",
    "EnlargedSet",
    "BoundednessFlag",
    "boundedness",
    "is_convex",
    "contains_point",
    "dist_point",
    "outer_radius",
    "excess",
    "hausdorff",
    "enlarge",
    "translate_set",
    "sample",
    "sample_enlargement",
    "set_to_json",
    "set_from_json",
    "rng_for",
]


class DimensionMismatchError(ValueError):
    """A point or set does not live in the expected space."""


class SamplingBudgetError(RuntimeError):
    """Rejection sampling exhausted its budget on a thin set."""


def rng_for(seed: int, *stream: int) -> np.random.Generator:
    """Deterministic generator for (root seed, substream indices).

    Trials derive their generators from the root seed and their own
    index, so certificates do not depend on evaluation order.
    """
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=tuple(stream)))


class Distance(float):
    """A nonnegative float that can carry approximation metadata.

    Behaves as a plain float in arithmetic.  ``approximate`` is True when
    the value came from a budgeted scheme; ``error`` then bounds (or
    estimates) the gap to the true value.  ``math.inf`` is used as the
    sentinel for unabsorbable excesses.
    """

    approximate: bool
    error: float
    note: str

    def __new__(cls, value: float, approximate: bool = False, error: float = 0.0, note: str = ""):
        obj = super().__new__(cls, value)
        obj.approximate = approximate
        obj.error = error
        obj.note = note
        return obj

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self)


@dataclass(frozen=True, eq=False)
class NormedSpace:
    """R^dim equipped with one of the euclidean, max, or p-norms."""

    dim: int
    norm: str = "euclidean"  # "euclidean" | "max" | "p"
    p: float | None = None

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        if self.norm not in ("euclidean", "max", "p"):
            raise ValueError(f"unknown norm selector {self.norm!r}")
        if self.norm == "p":
            if self.p is None or self.p < 1:
                raise ValueError("p-norm requires p >= 1")
        elif self.p is not None:
            raise ValueError("p is only meaningful for the p-norm selector")

    def check_point(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=float).reshape(-1)
        if y.shape != (self.dim,):
            raise DimensionMismatchError(f"expected point of dim {self.dim}, got shape {y.shape}")
        return y

    def norm_of(self, v) -> float:
        v = np.asarray(v, dtype=float)
        if self.norm == "euclidean":
            return float(np.linalg.norm(v))
        if self.norm == "max":
            return float(np.max(np.abs(v))) if v.size else 0.0
        return float(np.sum(np.abs(v) ** self.p) ** (1.0 / self.p))

    def dist(self, x, y) -> float:
        return self.norm_of(np.asarray(x, dtype=float) - np.asarray(y, dtype=float))

    def dual_norm_of(self, v) -> float:
        """Norm of a linear form, i.e. the dual norm of the space norm."""
        v = np.asarray(v, dtype=float)
        if self.norm == "euclidean":
            return float(np.linalg.norm(v))
        if self.norm == "max":
            return float(np.sum(np.abs(v)))
        if self.p == 1.0:
            return float(np.max(np.abs(v))) if v.size else 0.0
        q = self.p / (self.p - 1.0)
        return float(np.sum(np.abs(v) ** q) ** (1.0 / q))

    def unit(self, v) -> np.ndarray:
        """v scaled to norm 1; first basis vector when v = 0."""
        v = np.asarray(v, dtype=float)
        n = self.norm_of(v)
        if n == 0.0:
            e = np.zeros(self.dim)
            e[0] = 1.0
            return e
        return v / n


def _freeze(obj, name: str, value: np.ndarray) -> None:
    value = np.asarray(value, dtype=float)
    value.setflags(write=False)
    object.__setattr__(obj, name, value)


class SetRep:
    """Base class of the closed-set catalog; all variants are nonempty and closed."""

    dim: int


@dataclass(frozen=True, eq=False)
class Ball(SetRep):
    center: np.ndarray
    radius: float

    def __post_init__(self):
        _freeze(self, "center", self.center)
        if self.radius < 0:
            raise ValueError("ball radius must be >= 0")
        object.__setattr__(self, "dim", self.center.shape[0])


@dataclass(frozen=True, eq=False)
class Sphere(SetRep):
    center: np.ndarray
    radius: float

    def __post_init__(self):
        _freeze(self, "center", self.center)
        if self.radius < 0:
            raise ValueError("sphere radius must be >= 0")
        object.__setattr__(self, "dim", self.center.shape[0])


@dataclass(frozen=True, eq=False)
class Box(SetRep):
    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        _freeze(self, "lo", self.lo)
        _freeze(self, "hi", self.hi)
        if self.lo.shape != self.hi.shape:
            raise DimensionMismatchError("box corners must have equal shape")
        if np.any(self.lo > self.hi):
            raise ValueError("box requires lo <= hi componentwise")
        object.__setattr__(self, "dim", self.lo.shape[0])

    def corners(self, cap: int = 256) -> np.ndarray:
        n = self.lo.shape[0]
        if 2**n > cap:
            raise ValueError(f"box has 2^{n} corners, above cap {cap}")
        masks = np.array(np.meshgrid(*[[0, 1]] * n)).T.reshape(-1, n)
        return np.where(masks == 0, self.lo, self.hi).astype(float)


@dataclass(frozen=True, eq=False)
class VPolytope(SetRep):
    """Convex hull of finitely many vertices (>= 1)."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[0] < 1:
            raise ValueError("VPolytope needs a (k, dim) vertex array with k >= 1")
        _freeze(self, "vertices", v)
        object.__setattr__(self, "dim", v.shape[1])


@dataclass(frozen=True, eq=False)
class PointCloud(SetRep):
    """A finite, nonempty set of points (not its hull)."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] < 1:
            raise ValueError("PointCloud needs a (k, dim) array with k >= 1")
        _freeze(self, "points", pts)
        object.__setattr__(self, "dim", pts.shape[1])


@dataclass(frozen=True, eq=False)
class FormGroup:
    """One constraint group: max_j <a[j], y> <= b."""

    a: np.ndarray
    b: float

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        if a.ndim != 2 or a.shape[0] < 1:
            raise ValueError("form group needs a (m, dim) array with m >= 1")
        _freeze(self, "a", a)


@dataclass(frozen=True, eq=False)
class SublevelRegion(SetRep):
    """{y : max_j <a_ij, y> <= b_i for every group i}; closed, convex, possibly unbounded."""

    groups: tuple[FormGroup, ...]

    def __post_init__(self):
        groups = tuple(self.groups)
        if not groups:
            raise ValueError("sublevel region needs at least one group")
        dims = {g.a.shape[1] for g in groups}
        if len(dims) != 1:
            raise DimensionMismatchError("all form groups must share the ambient dimension")
        object.__setattr__(self, "groups", groups)
        object.__setattr__(self, "dim", dims.pop())

    def halfspaces(self) -> Iterator[tuple[np.ndarray, float]]:
        for g in self.groups:
            for row in g.a:
                yield row, g.b


@dataclass(frozen=True, eq=False)
class Orthant(SetRep):
    """apex + nonnegative cone."""

    apex: np.ndarray

    def __post_init__(self):
        _freeze(self, "apex", self.apex)
        object.__setattr__(self, "dim", self.apex.shape[0])


@dataclass(frozen=True, eq=False)
class EnlargedSet(SetRep):
    """Implicit r-enlargement of a base set: membership via dist <= margin.

    Used when no lossless concrete representation of the enlargement
    exists in the catalog.
    """

    base: SetRep
    margin: float

    def __post_init__(self):
        if self.margin < 0:
            raise ValueError("enlargement margin must be >= 0")
        object.__setattr__(self, "dim", self.base.dim)


@dataclass(frozen=True)
class BoundednessFlag:
    bounded: bool
    radius_hint: float | None = None


def boundedness(space: NormedSpace, s: SetRep) -> BoundednessFlag:
    """Conservative boundedness certificate with an outer-radius hint about the origin."""
    origin = np.zeros(space.dim)
    if isinstance(s, (Ball, Sphere)):
        return BoundednessFlag(True, space.norm_of(s.center) + s.radius)
    if isinstance(s, Box):
        return BoundednessFlag(True, max(space.norm_of(c) for c in s.corners()))
    if isinstance(s, VPolytope):
        return BoundednessFlag(True, max(space.norm_of(v) for v in s.vertices))
    if isinstance(s, PointCloud):
        return BoundednessFlag(True, max(space.norm_of(p) for p in s.points))
    if isinstance(s, EnlargedSet):
        inner = boundedness(space, s.base)
        if inner.bounded:
            return BoundednessFlag(True, (inner.radius_hint or 0.0) + s.margin)
        return BoundednessFlag(False)
    if isinstance(s, SublevelRegion):
        lo, hi = _region_box(s)
        if np.all(np.isfinite(lo)) and np.all(np.isfinite(hi)):
            hint = max(space.norm_of(c) for c in Box(lo, hi).corners(cap=1024))
            return BoundednessFlag(True, hint)
        return BoundednessFlag(False)
    if isinstance(s, Orthant):
        return BoundednessFlag(False)
    raise TypeError(f"unknown set representation {type(s).__name__}")


def is_convex(s: SetRep) -> bool:
    if isinstance(s, (Ball, Box, VPolytope, SublevelRegion, Orthant)):
        return True
    if isinstance(s, EnlargedSet):
        return is_convex(s.base)  # enlargement preserves convexity in a normed space
    if isinstance(s, Sphere):
        return s.radius == 0.0
    if isinstance(s, PointCloud):
        return s.points.shape[0] == 1
    raise TypeError(f"unknown set representation {type(s).__name__}")


# ---------------------------------------------------------------------------
# membership and point-set distance


def contains_point(space: NormedSpace, s: SetRep, y, tol: float = DEFAULT_TOL) -> bool:
    """Exact membership test where the representation allows, else dist <= tol."""
    y = space.check_point(y)
    if isinstance(s, Ball):
        return space.dist(y, s.center) <= s.radius + tol * max(1.0, s.radius)
    if isinstance(s, Sphere):
        return abs(space.dist(y, s.center) - s.radius) <= tol * max(1.0, s.radius)
    if isinstance(s, Box):
        scale = 1.0 + float(np.max(np.abs(np.concatenate([s.lo, s.hi]))))
        return bool(np.all(y >= s.lo - tol * scale) and np.all(y <= s.hi + tol * scale))
    if isinstance(s, Orthant):
        scale = 1.0 + float(np.max(np.abs(s.apex)))
        return bool(np.all(y >= s.apex - tol * scale))
    if isinstance(s, SublevelRegion):
        for a, b in s.halfspaces():
            val = float(a @ y)
            if val > b + tol * max(1.0, abs(val), abs(b)):
                return False
        return True
    if isinstance(s, PointCloud):
        return any(space.dist(y, p) <= tol for p in s.points)
    if isinstance(s, EnlargedSet):
        d = dist_point(space, y, s.base)
        return d <= s.margin + tol * max(1.0, s.margin) + d.error
    if isinstance(s, VPolytope):
        d = dist_point(space, y, s)
        return d <= tol + d.error
    raise TypeError(f"unknown set representation {type(s).__name__}")


def dist_point(space: NormedSpace, y, s: SetRep) -> Distance:
    """Distance from a point to a set under the space norm.

    Closed forms: balls, spheres, boxes, orthants, finite point sets,
    enlargements of any of these.  Polytopes and halfspace intersections
    use budgeted convex projection; those results carry an error bracket
    and are flagged approximate when the bracket exceeds the default
    tolerance.
    """
    y = space.check_point(y)
    if s.dim != space.dim:
        raise DimensionMismatchError(f"set lives in dim {s.dim}, space is dim {space.dim}")

    if isinstance(s, Ball):
        return Distance(max(0.0, space.dist(y, s.center) - s.radius))
    if isinstance(s, Sphere):
        return Distance(abs(space.dist(y, s.center) - s.radius))
    if isinstance(s, Box):
        resid = np.clip(y, s.lo, s.hi) - y
        return Distance(space.norm_of(resid))
    if isinstance(s, Orthant):
        resid = np.maximum(0.0, s.apex - y)
        return Distance(space.norm_of(resid))
    if isinstance(s, PointCloud):
        return Distance(min(space.dist(y, p) for p in s.points))
    if isinstance(s, EnlargedSet):
        inner = dist_point(space, y, s.base)
        val = max(0.0, float(inner) - s.margin)
        return Distance(val, approximate=inner.approximate, error=inner.error, note=inner.note)
    if isinstance(s, VPolytope):
        return _dist_polytope(space, y, s)
    if isinstance(s, SublevelRegion):
        return _dist_region(space, y, s)
    raise TypeError(f"unknown set representation {type(s).__name__}")


def _project_simplex(w: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex (sort-based)."""
    n = w.shape[0]
    u = np.sort(w)[::-1]
    css = np.cumsum(u) - 1.0
    ks = np.arange(1, n + 1)
    cond = u - css / ks > 0
    k = ks[cond][-1]
    tau = css[k - 1] / k
    return np.maximum(w - tau, 0.0)


def _hull_project_euclidean(vertices: np.ndarray, y: np.ndarray,
                            max_iter: int = 10_000, tol: float = DEFAULT_TOL):
    """Min-norm point of conv(vertices) - y by accelerated projected gradient.

    Returns (point, dist, gap_error) where gap_error bounds dist minus the
    true distance via the Frank-Wolfe gap of the squared objective.
    """
    v = vertices
    k = v.shape[0]
    if k == 1:
        return v[0], float(np.linalg.norm(v[0] - y)), 0.0
    lip = float(np.linalg.norm(v @ v.T, 2))
    if lip == 0.0:  # all vertices equal to the origin shift
        return v[0], float(np.linalg.norm(v[0] - y)), 0.0
    w = np.full(k, 1.0 / k)
    z = w.copy()
    t_prev = 1.0
    gap = math.inf
    best_w, best_f = w, 0.5 * float(np.sum((w @ v - y) ** 2))
    for _ in range(max_iter):
        resid = z @ v - y
        grad = v @ resid
        w_next = _project_simplex(z - grad / lip)
        t_next = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * t_prev * t_prev))
        z = w_next + ((t_prev - 1.0) / t_next) * (w_next - w)
        w, t_prev = w_next, t_next
        resid_w = w @ v - y
        f = 0.5 * float(np.sum(resid_w**2))
        if f < best_f:
            best_f, best_w = f, w
        grad_w = v @ resid_w
        gap = float(w @ grad_w - np.min(grad_w))  # f(w) - f* <= gap on the simplex
        d_up = math.sqrt(2.0 * best_f)
        d_lo = math.sqrt(max(0.0, 2.0 * (best_f - max(gap, 0.0))))
        if d_up - d_lo <= tol * max(1.0, d_up):
            break
    point = best_w @ v
    d_up = math.sqrt(2.0 * best_f)
    d_lo = math.sqrt(max(0.0, 2.0 * (best_f - max(gap, 0.0))))
    return point, d_up, max(0.0, d_up - d_lo)


def _dist_polytope(space: NormedSpace, y: np.ndarray, s: VPolytope) -> Distance:
    point, d2, err2 = _hull_project_euclidean(s.vertices, y)
    if space.norm == "euclidean":
        approx = err2 > DEFAULT_TOL * max(1.0, d2)
        return Distance(d2, approximate=approx, error=err2,
                        note="hull projection budget exhausted" if approx else "")
    if space.norm == "max":
        val = _lp_dist_max_norm_polytope(s.vertices, y)
        if val is not None:
            return Distance(val)
    # other p-norms: bracket from the euclidean solve plus candidate points
    upper = min(space.norm_of(point - y), min(space.norm_of(v - y) for v in s.vertices))
    d2_lower = max(0.0, d2 - err2)
    n = space.dim
    if space.norm == "max":
        lower = d2_lower / math.sqrt(n)
    elif space.p is not None and space.p > 2:
        lower = d2_lower * n ** (1.0 / space.p - 0.5)
    else:
        lower = d2_lower
    err = max(0.0, upper - lower)
    approx = err > DEFAULT_TOL * max(1.0, upper)
    return Distance(upper, approximate=approx, error=err,
                    note="polytope distance under this norm is a bracketed estimate" if approx else "")


def _lp_dist_max_norm_polytope(vertices: np.ndarray, y: np.ndarray) -> float | None:
    from ._lp import solve_lp

    k, n = vertices.shape
    # variables: (w_1..w_k, t);  min t  s.t.  |V^T w - y| <= t, w in simplex
    c = np.zeros(k + 1)
    c[-1] = 1.0
    a_ub = np.zeros((2 * n, k + 1))
    a_ub[:n, :k] = vertices.T
    a_ub[:n, -1] = -1.0
    a_ub[n:, :k] = -vertices.T
    a_ub[n:, -1] = -1.0
    b_ub = np.concatenate([y, -y])
    a_eq = np.zeros((1, k + 1))
    a_eq[0, :k] = 1.0
    res = solve_lp(c, a_ub=a_ub, b_ub=b_ub, a_eq=a_eq, b_eq=np.array([1.0]),
                   bounds=[(0, None)] * k + [(0, None)])
    return None if res is None else float(res.fun)


def _dist_region(space: NormedSpace, y: np.ndarray, s: SublevelRegion,
                 max_sweeps: int = 2000) -> Distance:
    rows = list(s.halfspaces())
    viol = [float(a @ y) - b for a, b in rows]
    if all(v <= 0.0 for v in viol):
        return Distance(0.0)
    # single-halfspace distances give an exact lower bound under any norm
    lower_any = max(max(0.0, v) / space.dual_norm_of(a) for (a, _), v in zip(rows, viol))
    if space.norm == "max":
        val = _lp_dist_max_norm_region(rows, y)
        if val is not None:
            return Distance(val)
    z, _ = _dykstra_halfspaces(rows, y, max_sweeps)
    d2_upper = float(np.linalg.norm(z - y))
    if space.norm == "euclidean":
        # converged Dykstra iterates are near-exact; the single-halfspace
        # lower bound keeps the reported bracket honest regardless
        err = max(0.0, d2_upper - lower_any)
        approx = err > 1e-7 * max(1.0, d2_upper)
        return Distance(d2_upper, approximate=approx, error=err,
                        note="halfspace projection bracket" if approx else "")
    upper = space.norm_of(z - y)
    lower = lower_any
    err = max(0.0, upper - lower)
    return Distance(upper, approximate=True, error=err,
                    note="region distance under this norm is a bracketed estimate")


def _lp_dist_max_norm_region(rows, y: np.ndarray) -> float | None:
    from ._lp import solve_lp

    n = y.shape[0]
    m = len(rows)
    # variables (z, t): min t  s.t.  a_k z <= b_k,  |z - y| <= t
    c = np.zeros(n + 1)
    c[-1] = 1.0
    a_ub = np.zeros((m + 2 * n, n + 1))
    b_ub = np.zeros(m + 2 * n)
    for i, (a, b) in enumerate(rows):
        a_ub[i, :n] = a
        b_ub[i] = b
    a_ub[m:m + n, :n] = np.eye(n)
    a_ub[m:m + n, -1] = -1.0
    b_ub[m:m + n] = y
    a_ub[m + n:, :n] = -np.eye(n)
    a_ub[m + n:, -1] = -1.0
    b_ub[m + n:] = -y
    res = solve_lp(c, a_ub=a_ub, b_ub=b_ub, bounds=[(None, None)] * n + [(0, None)])
    return None if res is None else float(res.fun)


def _dykstra_halfspaces(rows, y: np.ndarray, max_sweeps: int):
    """Nearest point of a halfspace intersection (Dykstra); returns (point, feasible)."""
    m = len(rows)
    a_mat = np.array([a for a, _ in rows], dtype=float)
    b_vec = np.array([b for _, b in rows], dtype=float)
    sq = np.sum(a_mat * a_mat, axis=1)
    sq[sq == 0.0] = 1.0
    z = y.astype(float).copy()
    corr = np.zeros((m, y.shape[0]))
    for sweep in range(max_sweeps):
        delta = 0.0
        for i in range(m):
            w = z + corr[i]
            viol = float(a_mat[i] @ w) - b_vec[i]
            z_new = w - (max(0.0, viol) / sq[i]) * a_mat[i]
            corr[i] = w - z_new
            delta = max(delta, float(np.max(np.abs(z_new - z))))
            z = z_new
        if delta <= 1e-13 * (1.0 + float(np.max(np.abs(z)))):
            break
    # final feasibility polish (plain cyclic projections keep z in the set)
    for _ in range(50):
        viols = a_mat @ z - b_vec
        worst = float(np.max(viols))
        if worst <= 1e-12 * (1.0 + abs(worst)):
            break
        i = int(np.argmax(viols))
        z = z - (viols[i] / sq[i]) * a_mat[i]
    return z, True


def _region_box(s: SublevelRegion) -> tuple[np.ndarray, np.ndarray]:
    """Coordinate bounding box of a sublevel region via 2*dim small LPs."""
    from ._lp import coordinate_range

    rows = list(s.halfspaces())
    a_mat = np.array([a for a, _ in rows], dtype=float)
    b_vec = np.array([b for _, b in rows], dtype=float)
    return coordinate_range(a_mat, b_vec)


# ---------------------------------------------------------------------------
# excess / hausdorff


def outer_radius(space: NormedSpace, s: SetRep, p) -> Distance:
    """sup over the set of the distance to a fixed point p."""
    p = space.check_point(p)
    if isinstance(s, (Ball, Sphere)):
        return Distance(space.dist(s.center, p) + s.radius)
    if isinstance(s, Box):
        return Distance(max(space.dist(c, p) for c in s.corners()))
    if isinstance(s, VPolytope):
        return Distance(max(space.dist(v, p) for v in s.vertices))
    if isinstance(s, PointCloud):
        return Distance(max(space.dist(q, p) for q in s.points))
    if isinstance(s, EnlargedSet):
        inner = outer_radius(space, s.base, p)
        return Distance(float(inner) + s.margin, approximate=inner.approximate, error=inner.error)
    if isinstance(s, SublevelRegion):
        lo, hi = _region_box(s)
        if np.all(np.isfinite(lo)) and np.all(np.isfinite(hi)):
            val = max(space.dist(c, p) for c in Box(lo, hi).corners(cap=1024))
            return Distance(val, approximate=True, error=val,
                            note="box overestimate of the region's outer radius")
        return Distance(math.inf, note="unbounded region")
    if isinstance(s, Orthant):
        return Distance(math.inf, note="orthant is unbounded")
    raise TypeError(f"unknown set representation {type(s).__name__}")


def excess(space: NormedSpace, a: SetRep, b: SetRep,
           n_samples: int = 256, seed: int = 0) -> Distance:
    """Excess of a over b: sup over a of dist_point(., b).

    Exact closed forms: ball over ball (and sphere sources), finite
    vertex/point sources over any convex target, orthant over orthant,
    and any source over an enlargement of a target with a known excess.
    Unbounded sources that no bounded target can absorb yield the +inf
    sentinel.  Remaining pairs fall back to a seeded sampled supremum
    flagged approximate.
    """
    if a.dim != space.dim or b.dim != space.dim:
        raise DimensionMismatchError("excess operands must live in the ambient space")

    if isinstance(b, EnlargedSet):
        inner = excess(space, a, b.base, n_samples=n_samples, seed=seed)
        val = max(0.0, float(inner) - b.margin)
        return Distance(val, approximate=inner.approximate, error=inner.error, note=inner.note)

    if isinstance(a, PointCloud):
        return _max_distance(space, a.points, b)
    if isinstance(a, (VPolytope, Box)) and is_convex(b):
        pts = a.vertices if isinstance(a, VPolytope) else a.corners()
        return _max_distance(space, pts, b)  # dist(., convex) is convex: vertex max is exact
    if isinstance(a, (Ball, Sphere)):
        if isinstance(b, Ball):
            return Distance(max(0.0, space.dist(a.center, b.center) + a.radius - b.radius))
        if isinstance(b, Sphere):
            # distances from b's center over a form a band; |t - r_b| peaks at its ends
            m = space.dist(a.center, b.center)
            hi_end = m + a.radius
            lo_end = max(0.0, m - a.radius) if isinstance(a, Ball) else abs(m - a.radius)
            return Distance(max(abs(hi_end - b.radius), abs(lo_end - b.radius)))
        if isinstance(b, PointCloud) and b.points.shape[0] == 1:
            return outer_radius(space, a, b.points[0])
    if isinstance(a, Orthant):
        if isinstance(b, Orthant):
            gap = np.maximum(0.0, b.apex - a.apex)
            return Distance(space.norm_of(gap))
        return Distance(math.inf, note="unbounded orthant over a non-absorbing target")
    if isinstance(a, EnlargedSet):
        if isinstance(b, Ball):
            rad = outer_radius(space, a, b.center)
            return Distance(max(0.0, float(rad) - b.radius),
                            approximate=rad.approximate, error=rad.error)
        inner = excess(space, a.base, b, n_samples=n_samples, seed=seed)
        if inner.is_infinite:
            return inner
        # sup over the enlargement is within [inner, inner + margin]
        return Distance(float(inner) + a.margin, approximate=True, error=a.margin,
                        note="enlargement excess bracketed by its margin")
    if isinstance(a, SublevelRegion):
        flag = boundedness(space, a)
        if not flag.bounded:
            return Distance(math.inf, note="region not certified bounded; excess sentinel")
        return _sampled_excess(space, a, b, n_samples, seed)
    # bounded source without a closed form: sampled supremum
    return _sampled_excess(space, a, b, n_samples, seed)


def _max_distance(space: NormedSpace, pts: np.ndarray, b: SetRep) -> Distance:
    best = Distance(0.0)
    worst_err = 0.0
    approx = False
    val = 0.0
    for p in pts:
        d = dist_point(space, p, b)
        if float(d) > val:
            val = float(d)
            best = d
        worst_err = max(worst_err, d.error)
        approx = approx or d.approximate
    return Distance(val, approximate=approx, error=worst_err, note=best.note)


def _sampled_excess(space: NormedSpace, a: SetRep, b: SetRep,
                    n_samples: int, seed: int) -> Distance:
    pts = sample(space, a, n_samples, seed)
    val = 0.0
    err = 0.0
    for p in pts:
        d = dist_point(space, p, b)
        val = max(val, float(d))
        err = max(err, d.error)
    flag = boundedness(space, a)
    spread = (flag.radius_hint or 1.0)
    density_err = 4.0 * spread / max(1, n_samples) ** (1.0 / max(1, space.dim))
    return Distance(val, approximate=True, error=err + density_err,
                    note="sampled supremum (lower estimate)")


def hausdorff(space: NormedSpace, a: SetRep, b: SetRep,
              n_samples: int = 256, seed: int = 0) -> Distance:
    """max(excess(a, b), excess(b, a)); symmetric by construction."""
    e_ab = excess(space, a, b, n_samples=n_samples, seed=seed)
    e_ba = excess(space, b, a, n_samples=n_samples, seed=seed)
    val = max(float(e_ab), float(e_ba))
    return Distance(val, approximate=e_ab.approximate or e_ba.approximate,
                    error=max(e_ab.error, e_ba.error),
                    note=e_ab.note or e_ba.note)


# ---------------------------------------------------------------------------
# enlargement / translation


def enlarge(space: NormedSpace, s: SetRep, r: float) -> SetRep:
    """r-enlargement; exact for balls and max-norm orthants, else an implicit wrapper."""
    if r < 0:
        raise ValueError("enlargement radius must be >= 0")
    if r == 0.0:
        return s
    if isinstance(s, Ball):
        return Ball(s.center, s.radius + r)
    if isinstance(s, Orthant) and space.norm == "max":
        return Orthant(s.apex - r)
    if isinstance(s, EnlargedSet):
        inner = enlarge(space, s.base, s.margin + r)
        return inner
    return EnlargedSet(s, r)


def translate_set(s: SetRep, v) -> SetRep:
    """Exact Minkowski translation s + v (the catalog is closed under it)."""
    v = np.asarray(v, dtype=float)
    if v.shape != (s.dim,):
        raise DimensionMismatchError("translation vector dimension mismatch")
    if isinstance(s, Ball):
        return Ball(s.center + v, s.radius)
    if isinstance(s, Sphere):
        return Sphere(s.center + v, s.radius)
    if isinstance(s, Box):
        return Box(s.lo + v, s.hi + v)
    if isinstance(s, VPolytope):
        return VPolytope(s.vertices + v)
    if isinstance(s, PointCloud):
        return PointCloud(s.points + v)
    if isinstance(s, Orthant):
        return Orthant(s.apex + v)
    if isinstance(s, SublevelRegion):
        # translation shifts each form's bound; groups split into singletons
        groups = []
        for g in s.groups:
            for row in g.a:
                groups.append(FormGroup(row.reshape(1, -1), g.b + float(row @ v)))
        return SublevelRegion(tuple(groups))
    if isinstance(s, EnlargedSet):
        return EnlargedSet(translate_set(s.base, v), s.margin)
    raise TypeError(f"unknown set representation {type(s).__name__}")


def scale_set(s: SetRep, lam: float) -> SetRep:
    """Exact positive scaling lam * s about the origin (lam > 0)."""
    if lam <= 0:
        raise ValueError("scale factor must be > 0")
    if isinstance(s, Ball):
        return Ball(lam * s.center, lam * s.radius)
    if isinstance(s, Sphere):
        return Sphere(lam * s.center, lam * s.radius)
    if isinstance(s, Box):
        return Box(lam * s.lo, lam * s.hi)
    if isinstance(s, VPolytope):
        return VPolytope(lam * s.vertices)
    if isinstance(s, PointCloud):
        return PointCloud(lam * s.points)
    if isinstance(s, Orthant):
        return Orthant(lam * s.apex)
    if isinstance(s, SublevelRegion):
        groups = tuple(FormGroup(g.a, lam * g.b) for g in s.groups)
        return SublevelRegion(groups)
    if isinstance(s, EnlargedSet):
        return EnlargedSet(scale_set(s.base, lam), lam * s.margin)
    raise TypeError(f"unknown set representation {type(s).__name__}")


# ---------------------------------------------------------------------------
# sampling


def sample(space: NormedSpace, s: SetRep, n: int, seed: int,
           box: tuple[np.ndarray, np.ndarray] | None = None) -> np.ndarray:
    """n member points of s, deterministic for a fixed seed.

    Extreme candidates (vertices, boundary points, corners) come first
    whenever the representation exposes them.  Unbounded or implicit
    variants fall back to rejection / projection sampling inside `box`
    (or an automatically derived one) and raise SamplingBudgetError when
    the acceptance rate collapses.
    """
    if n < 1:
        raise ValueError("need n >= 1 samples")
    rng = rng_for(seed, 0)
    if isinstance(s, Ball):
        return _sample_ball(space, s.center, s.radius, n, rng)
    if isinstance(s, Sphere):
        pts = _axis_points(space, s.center, s.radius)
        while len(pts) < n:
            g = rng.standard_normal(space.dim)
            pts.append(s.center + s.radius * space.unit(g))
        return np.array(pts[:n])
    if isinstance(s, Box):
        pts = [c for c in s.corners(cap=1024)[: min(n, 64)]]
        while len(pts) < n:
            pts.append(rng.uniform(s.lo, s.hi))
        return np.array(pts[:n])
    if isinstance(s, VPolytope):
        pts = list(s.vertices[:n])
        k = s.vertices.shape[0]
        while len(pts) < n:
            w = rng.dirichlet(np.ones(k))
            pts.append(w @ s.vertices)
        return np.array(pts[:n])
    if isinstance(s, PointCloud):
        reps = int(np.ceil(n / s.points.shape[0]))
        return np.tile(s.points, (reps, 1))[:n]
    if isinstance(s, Orthant):
        pts = [s.apex.copy()]
        scale = 1.0 + float(np.max(np.abs(s.apex)))
        while len(pts) < n:
            pts.append(s.apex + np.abs(rng.standard_normal(space.dim)) * scale)
        return np.array(pts[:n])
    if isinstance(s, SublevelRegion):
        return _sample_region(space, s, n, rng, box)
    if isinstance(s, EnlargedSet):
        base_pts = sample(space, s.base, n, seed, box=box)
        out = []
        for i, p in enumerate(base_pts):
            t = 1.0 if i % 2 == 0 else rng.uniform()
            g = rng.standard_normal(space.dim)
            out.append(p + s.margin * t * space.unit(g))
        return np.array(out)
    raise TypeError(f"unknown set representation {type(s).__name__}")


def _axis_points(space: NormedSpace, center: np.ndarray, radius: float) -> list:
    pts = []
    for i in range(space.dim):
        e = np.zeros(space.dim)
        e[i] = 1.0
        pts.append(center + radius * e)
        pts.append(center - radius * e)
    return pts


def _sample_ball(space: NormedSpace, center: np.ndarray, radius: float,
                 n: int, rng: np.random.Generator) -> np.ndarray:
    pts = [center.copy()] + _axis_points(space, center, radius)
    budget = 200 * n + 1000
    while len(pts) < n and budget > 0:
        cand = rng.uniform(-radius, radius, size=space.dim)
        budget -= 1
        if space.norm_of(cand) <= radius:
            pts.append(center + cand)
    if len(pts) < n:
        raise SamplingBudgetError("rejection budget exhausted sampling a ball")
    return np.array(pts[:n])


def _sample_region(space: NormedSpace, s: SublevelRegion, n: int,
                   rng: np.random.Generator,
                   box: tuple[np.ndarray, np.ndarray] | None) -> np.ndarray:
    rows = list(s.halfspaces())
    if box is None:
        lo, hi = _region_box(s)
        scale = 1.0 + max((abs(b) for _, b in rows), default=1.0)
        lo = np.where(np.isfinite(lo), lo, -10.0 * scale)
        hi = np.where(np.isfinite(hi), hi, 10.0 * scale)
    else:
        lo, hi = np.asarray(box[0], dtype=float), np.asarray(box[1], dtype=float)
    lo, hi = np.minimum(lo, hi), np.maximum(lo, hi)  # LP roundoff can cross degenerate bounds
    pts: list[np.ndarray] = []
    # extreme candidates: per-coordinate LP optima are vertices of the region
    from ._lp import coordinate_argpoints

    a_mat = np.array([a for a, _ in rows], dtype=float)
    b_vec = np.array([b for _, b in rows], dtype=float)
    for p in coordinate_argpoints(a_mat, b_vec):
        if len(pts) < n:
            pts.append(p)
    budget = 60 * n + 600
    while len(pts) < n and budget > 0:
        cand = rng.uniform(lo, hi)
        budget -= 1
        if all(float(a @ cand) <= b + 1e-12 for a, b in rows):
            pts.append(cand)
    while len(pts) < n:
        # thin region: project box samples onto it instead of rejecting forever
        cand = rng.uniform(lo, hi)
        z, _ = _dykstra_halfspaces(rows, cand, 500)
        if all(float(a @ z) <= b + 1e-9 * max(1.0, abs(b)) for a, b in rows):
            pts.append(z)
        else:
            raise SamplingBudgetError(
                "could not produce region samples; supply an explicit bounding box")
    return np.array(pts[:n])


def sample_enlargement(space: NormedSpace, s: SetRep, rho: float, n: int, seed: int,
                       box=None) -> np.ndarray:
    """n points of the rho-enlargement of s, biased toward its outer boundary.

    Construction guarantees membership: each point is a member of s
    pushed by at most rho in some unit direction.  Pushes favour the
    outward direction from the sample centroid (the hardest points for an
    inclusion test), mixed with random directions and depths.
    """
    base_pts = sample(space, s, n, seed, box=box)
    centroid = np.mean(base_pts, axis=0)
    rng = rng_for(seed, 1)
    out = []
    for i, p in enumerate(base_pts):
        outward = p - centroid
        if i % 4 != 3 and space.norm_of(outward) > 1e-12:
            out.append(p + rho * space.unit(outward))
            continue
        g = rng.standard_normal(space.dim)
        t = 1.0 if i % 2 == 0 else float(rng.uniform())
        out.append(p + rho * t * space.unit(g))
    return np.array(out)


# ---------------------------------------------------------------------------
# JSON round trip


def set_to_json(s: SetRep) -> dict:
    if isinstance(s, Ball):
        return {"kind": "ball", "center": s.center.tolist(), "radius": s.radius}
    if isinstance(s, Sphere):
        return {"kind": "sphere", "center": s.center.tolist(), "radius": s.radius}
    if isinstance(s, Box):
        return {"kind": "box", "lo": s.lo.tolist(), "hi": s.hi.tolist()}
    if isinstance(s, VPolytope):
        return {"kind": "v_polytope", "vertices": s.vertices.tolist()}
    if isinstance(s, PointCloud):
        return {"kind": "point_cloud", "points": s.points.tolist()}
    if isinstance(s, SublevelRegion):
        return {"kind": "sublevel_region",
                "groups": [{"a": g.a.tolist(), "b": g.b} for g in s.groups]}
    if isinstance(s, Orthant):
        return {"kind": "orthant", "apex": s.apex.tolist()}
    if isinstance(s, EnlargedSet):
        return {"kind": "enlarged", "base": set_to_json(s.base), "margin": s.margin}
    raise TypeError(f"unknown set representation {type(s).__name__}")


def set_from_json(d: dict) -> SetRep:
    kind = d.get("kind")
    if kind == "ball":
        return Ball(np.array(d["center"], dtype=float), float(d["radius"]))
    if kind == "sphere":
        return Sphere(np.array(d["center"], dtype=float), float(d["radius"]))
    if kind == "box":
        return Box(np.array(d["lo"], dtype=float), np.array(d["hi"], dtype=float))
    if kind == "v_polytope":
        return VPolytope(np.array(d["vertices"], dtype=float))
    if kind == "point_cloud":
        return PointCloud(np.array(d["points"], dtype=float))
    if kind == "sublevel_region":
        groups = tuple(FormGroup(np.array(g["a"], dtype=float), float(g["b"]))
                       for g in d["groups"])
        return SublevelRegion(groups)
    if kind == "orthant":
        return Orthant(np.array(d["apex"], dtype=float))
    if kind == "enlarged":
        return EnlargedSet(set_from_json(d["base"]), float(d["margin"]))
    raise ValueError(f"unknown set kind {kind!r}")
