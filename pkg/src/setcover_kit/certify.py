"""Seeded falsification of covering behaviour and related error bounds.

Universal properties (quantified over all points and radii) cannot be
proved by testing, so every check here runs seeded trials and returns a
machine-readable `Certificate` whose verdict vocabulary is explicit
about that: "no-counterexample-found" is not a proof, while "falsified"
ships independently re-checkable violation records.  Search failures
that cannot certify a genuine violation are recorded as soft violations
flagged "inconclusive".

Trial distribution: reference points from a configurable box, radii
log-uniform over [1e-3, 1e2] so both micro and macro scales of the
linear-rate property get exercised.  Per-trial seeds derive from the
root seed and the trial index, making certificates schedule-independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import mappings as mp
from ._lp import min_max_norm_feasible, solve_lp
from .geometry import (
    Ball,
    NormedSpace,
    SetRep,
    dist_point,
    excess,
    hausdorff,
    outer_radius,
    rng_for,
    sample_enlargement,
)
from .search import pattern_search

__all__ = [
    "Violation",
    "Certificate",
    "InteriorReport",
    "ProcessAnomalyError",
    "check_covering",
    "check_set_covering",
    "interior_radius",
    "check_inverse_errorbound",
    "check_inverse_hausdorff",
    "check_exc_semicontinuity",
    "recheck_violation",
    "inverse_distance",
]

R_RANGE_DEFAULT = (1e-3, 1e2)


class ProcessAnomalyError(RuntimeError):
    """An LP step of the process analysis failed in a way valid cones should not."""


@dataclass(frozen=True)
class Violation:
    """One counterexample (or inconclusive search) record; re-checkable on its own."""

    trial: int
    x: tuple
    r: float
    point: tuple | None
    margin: float
    kind: str = "violation"  # "violation" | "inconclusive"
    witness: tuple | None = None

    def to_jsonable(self) -> dict:
        return {
            "trial": self.trial,
            "x": list(self.x),
            "r": self.r,
            "point": None if self.point is None else list(self.point),
            "margin": self.margin,
            "kind": self.kind,
            "witness": None if self.witness is None else list(self.witness),
        }


@dataclass
class Certificate:
    """Outcome of a falsification run: verdict plus everything needed to replay it."""

    property: str
    trials: int
    violations: list[Violation]
    seed: int
    tolerances: dict
    parameters: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "falsified" if self.violations else "no-counterexample-found"

    @property
    def falsified(self) -> bool:
        return bool(self.violations)

    def genuine_violations(self) -> list[Violation]:
        return [v for v in self.violations if v.kind == "violation"]

    def to_jsonable(self, max_violations: int = 32) -> dict:
        return {
            "property": self.property,
            "verdict": self.verdict,
            "trials": self.trials,
            "n_violations": len(self.violations),
            "violations": [v.to_jsonable() for v in self.violations[:max_violations]],
            "seed": self.seed,
            "tolerances": dict(sorted(self.tolerances.items())),
            "parameters": {k: v for k, v in sorted(self.parameters.items())},
        }


def _default_box(dim: int, half_width: float = 5.0):
    return -half_width * np.ones(dim), half_width * np.ones(dim)


def _draw_trial(m: mp.MapSpec, seed: int, trial: int, x_box, r_range):
    rng = rng_for(seed, trial)
    lo, hi = x_box
    x = rng.uniform(lo, hi)
    log_lo, log_hi = math.log(r_range[0]), math.log(r_range[1])
    r = math.exp(rng.uniform(log_lo, log_hi))
    return x, r, rng


def _scale_tol(tol: float, space: NormedSpace, x, extra: float) -> float:
    return tol * (1.0 + float(np.max(np.abs(x))) + extra)


# ---------------------------------------------------------------------------
# covering (ball image sweep)


def _covering_responder(m: mp.MapSpec, x, r: float, y):
    """Closed-form best response u for the covering search, where available.

    Returns (u, certified_distance) with the exact minimum of
    dist(y, image(u)) over the r-ball at x, or None.
    """
    if isinstance(m, mp.SphereScale):
        ny = float(np.linalg.norm(y))
        lo, hi = max(0.0, abs(float(x[0])) - r), abs(float(x[0])) + r
        rho = min(max(ny, lo), hi)
        sign = 1.0 if x[0] >= 0 else -1.0
        u = np.array([sign * rho])
        if abs(u[0] - x[0]) > r:  # sign flip fits better when the band crosses zero
            u = np.array([-sign * rho])
        return u, abs(ny - rho)
    if isinstance(m, mp.UnitBallTranslate):
        space = m.space_x
        d = space.dist(y, x)
        step = min(r, max(0.0, d - 1.0))
        u = x + step * space.unit(np.asarray(y) - x)
        return u, max(0.0, d - r - 1.0)
    return None


def check_covering(m: mp.MapSpec, alpha: float, trials: int, seed: int,
                   x_box=None, r_range=R_RANGE_DEFAULT, n_targets: int = 4,
                   tol: float = 1e-9, search_budget: int = 600) -> Certificate:
    """Falsification of plain covering: every point of the enlarged image
    must be reachable from the image of some nearby point.

    Per trial, target points of the alpha*r-enlargement of the image are
    drawn and a response u inside the r-ball is sought: by closed form
    where the variant has one, by the set-covering witness when it
    exists, and by budgeted pattern search otherwise.
    """
    x_box = x_box or _default_box(m.space_x.dim)
    violations: list[Violation] = []
    for t in range(trials):
        x, r, rng = _draw_trial(m, seed, t, x_box, r_range)
        image = mp.eval_map(m, x)
        targets = sample_enlargement(m.space_y, image, alpha * r, n_targets,
                                     seed=_sub_seed(seed, t, 1))
        witness_u = None
        try:
            witness_u = mp.cover_witness(m, x, r)
        except (mp.WitnessUnavailableError, mp.NotSetCoveringError):
            pass
        atol = _scale_tol(tol, m.space_x, x, alpha * r)
        for y in targets:
            responder = _covering_responder(m, x, r, y)
            if responder is not None:
                u, certified = responder
                if certified > atol:
                    violations.append(Violation(t, tuple(x), r, tuple(y), certified,
                                                "violation", tuple(u)))
                continue
            if witness_u is not None:
                d = float(dist_point(m.space_y, y, mp.eval_map(m, witness_u)))
                if d <= atol:
                    continue
            u, val = _search_cover_point(m, x, r, y, seed=_sub_seed(seed, t, 2),
                                         budget=search_budget)
            if val > atol:
                violations.append(Violation(t, tuple(x), r, tuple(y), val,
                                            "inconclusive", tuple(u)))
    return Certificate(
        property="covering", trials=trials, violations=violations, seed=seed,
        tolerances={"tol": tol},
        parameters={"alpha": alpha, "r_range": list(r_range), "n_targets": n_targets,
                    "map": mp.map_to_json(m)},
    )


def _sub_seed(seed: int, trial: int, k: int) -> int:
    return int(np.random.SeedSequence(entropy=seed, spawn_key=(trial, k)).generate_state(1)[0])


def _search_cover_point(m: mp.MapSpec, x, r: float, y, seed: int, budget: int):
    space = m.space_x

    def objective(u):
        try:
            return float(dist_point(m.space_y, y, mp.eval_map(m, u)))
        except ValueError:
            return math.inf

    def clip(u):
        d = space.dist(u, x)
        return u if d <= r else x + (r / d) * (u - x)

    rng = rng_for(seed, 0)
    starts = [np.asarray(x, dtype=float)]
    for _ in range(3):
        g = rng.standard_normal(space.dim)
        starts.append(x + r * float(rng.uniform()) * space.unit(g))
    best_u, best_v = starts[0], objective(starts[0])
    per_start = max(30, budget // len(starts))
    for s in starts:
        u, v, _ = pattern_search(objective, s, initial_step=r / 2,
                                 step_floor=1e-9 * max(1.0, r),
                                 max_evals=per_start, project=clip)
        if v < best_v:
            best_u, best_v = u, v
    return best_u, best_v


# ---------------------------------------------------------------------------
# set-covering (single absorbing point)


def check_set_covering(m: mp.MapSpec, alpha: float, trials: int, seed: int,
                       x_box=None, r_range=R_RANGE_DEFAULT, n_inclusion: int = 64,
                       tol: float = 1e-9) -> Certificate:
    """Falsification of set-covering: one point u within r of x whose image
    contains the whole alpha*r-enlargement of the image at x.

    u is the constructive witness when the variant has one, otherwise the
    best candidate of a budgeted search; the inclusion is tested on
    construction-guaranteed members of the enlargement, so failures are
    genuine counterexamples for that u.
    """
    x_box = x_box or _default_box(m.space_x.dim)
    violations: list[Violation] = []
    for t in range(trials):
        x, r, rng = _draw_trial(m, seed, t, x_box, r_range)
        image = mp.eval_map(m, x)
        try:
            u = mp.cover_witness(m, x, r)
        except (mp.WitnessUnavailableError, mp.NotSetCoveringError):
            rec = mp.fallback_witness(m, x, r, alpha, n_points=min(n_inclusion, 32),
                                      seed=_sub_seed(seed, t, 3))
            u = rec.u
        image_u = mp.eval_map(m, u)
        targets = sample_enlargement(m.space_y, image, alpha * r, n_inclusion,
                                     seed=_sub_seed(seed, t, 4))
        atol = _scale_tol(tol, m.space_x, x, alpha * r)
        worst_y, worst_m = None, 0.0
        for y in targets:
            d = dist_point(m.space_y, y, image_u)
            margin = float(d) - d.error
            if margin > worst_m:
                worst_m, worst_y = margin, y
        if worst_y is not None and worst_m > atol:
            violations.append(Violation(t, tuple(x), r, tuple(worst_y), worst_m,
                                        "violation", tuple(u)))
    return Certificate(
        property="set-covering", trials=trials, violations=violations, seed=seed,
        tolerances={"tol": tol},
        parameters={"alpha": alpha, "r_range": list(r_range),
                    "n_inclusion": n_inclusion, "map": mp.map_to_json(m)},
    )


def recheck_violation(m: mp.MapSpec, cert: Certificate, v: Violation,
                      tol: float = 1e-9) -> bool:
    """Independently re-evaluate a violation record (replay determinism)."""
    x = np.array(v.x)
    atol = _scale_tol(tol, m.space_x, x, cert.parameters.get("alpha", 1.0) * v.r)
    if cert.property in ("covering", "set-covering"):
        if v.witness is None or v.point is None:
            return False
        d = dist_point(m.space_y, np.array(v.point), mp.eval_map(m, np.array(v.witness)))
        return float(d) - d.error > atol
    if cert.property == "inverse-errorbound":
        s = _ball_from_record(v)
        lhs, rhs = _inverse_errorbound_sides(m, cert.parameters["alpha"], s, x)
        return lhs > rhs + atol
    raise ValueError(f"no replay rule for property {cert.property!r}")


def _ball_from_record(v: Violation) -> Ball:
    data = np.array(v.point)
    return Ball(data[:-1], float(data[-1]))


# ---------------------------------------------------------------------------
# convex process interior analysis


@dataclass(frozen=True)
class InteriorReport:
    """Inscribed-slack analysis of a polyhedral process at the origin.

    One of two consistent states: no interior (everything zero/absent) or
    a certified witness direction u0 whose image contains a ball of
    radius alpha around the origin.
    """

    t_star: float
    u0: np.ndarray | None
    alpha: float
    y_interior: np.ndarray | None = None

    def __post_init__(self):
        present = self.u0 is not None
        if present != (self.t_star > 0) or present != (self.alpha > 0):
            raise ValueError("inconsistent interior report")

    def to_jsonable(self) -> dict:
        return {
            "t_star": self.t_star,
            "alpha": self.alpha,
            "u0": None if self.u0 is None else self.u0.tolist(),
            "y_interior": None if self.y_interior is None else self.y_interior.tolist(),
        }


def interior_radius(proc: mp.PolyhedralProcess) -> InteriorReport:
    """Classify a polyhedral process by the interior of its image at zero.

    Step 1 maximizes the constraint slack t of Cy y + t <= 0 over the
    unit box (cap t <= 1; positive homogeneity makes any positive slack
    scalable).  If t* > 0, step 2 takes a min-norm u solving
    Cx u + Cy (-y_hat) <= 0, normalizes it into the unit ball, and
    reports the inscribed radius of the image of u at the origin.
    """
    cy_norms = np.array([proc.space_y.dual_norm_of(row) for row in proc.cy])
    active = [i for i in range(proc.cy.shape[0]) if np.any(proc.cy[i] != 0.0)]
    m_dim = proc.space_y.dim
    if not active:
        raise ProcessAnomalyError("process has no constraint rows involving the range variable")
    # step 1: max t  s.t.  cy_i y + t <= 0 (active rows), |y| <= 1, t <= 1
    n_var = m_dim + 1
    c = np.zeros(n_var)
    c[-1] = -1.0
    rows = []
    rhs = []
    for i in active:
        row = np.zeros(n_var)
        row[:m_dim] = proc.cy[i]
        row[-1] = 1.0
        rows.append(row)
        rhs.append(0.0)
    bounds = [(-1.0, 1.0)] * m_dim + [(None, 1.0)]
    res = solve_lp(c, a_ub=np.array(rows), b_ub=np.array(rhs), bounds=bounds)
    if res is None:
        raise ProcessAnomalyError("interior slack LP infeasible for a nonempty cone")
    t_star = float(res.x[-1])
    if t_star <= 1e-9:
        return InteriorReport(t_star=0.0, u0=None, alpha=0.0)
    y_hat = np.asarray(res.x[:m_dim], dtype=float)
    # step 2: min-norm u with Cx u <= Cy y_hat
    sol = min_max_norm_feasible(proc.cx, proc.cy @ y_hat)
    if sol is None:
        raise ProcessAnomalyError(
            "interior point found but no reachable witness direction: "
            "the process is not onto, hence not set-covering")
    u, _ = sol
    u0 = u / max(1.0, proc.space_x.norm_of(u))
    margins = []
    for i in range(proc.cx.shape[0]):
        slack = -float(proc.cx[i] @ u0)
        if i in active:
            margins.append(slack / cy_norms[i])
        elif slack < -1e-12:
            return InteriorReport(t_star=0.0, u0=None, alpha=0.0)
    alpha = min(margins)
    if alpha <= 0:
        return InteriorReport(t_star=0.0, u0=None, alpha=0.0)
    return InteriorReport(t_star=t_star, u0=u0, alpha=float(alpha), y_interior=y_hat)


# ---------------------------------------------------------------------------
# inverse-map propositions


def inverse_distance(m: mp.MapSpec, s: SetRep, x) -> float:
    """Exact distance from x to {u : s is contained in the image of u}.

    Closed forms exist for the dilation family (threshold on the radius
    function) and for the two covering-only witnesses.  math.inf encodes
    an empty inclusion-inverse.
    """
    x = m.space_x.check_point(x)
    if isinstance(m, mp.Dilation):
        r_s = float(outer_radius(m.space_y, s, m.y0))
        if math.isinf(r_s):
            return math.inf
        threshold = (r_s - m.b) / m.a
        return max(0.0, threshold - m.space_x.dist(x, m.anchor))
    if isinstance(m, mp.UnitBallTranslate):
        if isinstance(s, Ball):
            if s.radius > 1.0:
                return math.inf
            return max(0.0, m.space_x.dist(x, s.center) - (1.0 - s.radius))
        raise NotImplementedError("inclusion inverse implemented for ball test sets")
    if isinstance(m, mp.SphereScale):
        if isinstance(s, Ball):
            if s.radius > 0.0:
                return math.inf  # no sphere contains a solid ball
            rho = float(np.linalg.norm(s.center))
            return abs(abs(float(x[0])) - rho)
        raise NotImplementedError("inclusion inverse implemented for ball test sets")
    raise NotImplementedError(f"no closed-form inclusion inverse for {type(m).__name__}")


def _inverse_errorbound_sides(m: mp.MapSpec, alpha: float, s: SetRep, x):
    lhs = inverse_distance(m, s, x)
    rhs_exc = excess(m.space_y, s, mp.eval_map(m, x))
    rhs = math.inf if rhs_exc.is_infinite else float(rhs_exc) / alpha
    return lhs, rhs


def check_inverse_errorbound(m: mp.MapSpec, alpha: float, trials: int, seed: int,
                             x_box=None, tol: float = 1e-9,
                             test_sets: list[SetRep] | None = None) -> Certificate:
    """dist(x, inclusion-inverse of S) <= excess(S, image(x)) / alpha.

    Test sets are random balls in the range space unless supplied.  The
    distance on the left is evaluated in closed form, so recorded
    violations are genuine; an infinite right side passes trivially.
    """
    x_box = x_box or _default_box(m.space_x.dim)
    violations: list[Violation] = []
    for t in range(trials):
        x, r, rng = _draw_trial(m, seed, t, x_box, (1e-2, 1e1))
        if test_sets is not None:
            s = test_sets[t % len(test_sets)]
        else:
            center = rng.uniform(-5.0, 5.0, size=m.space_y.dim)
            s = Ball(center, r)
        lhs, rhs = _inverse_errorbound_sides(m, alpha, s, x)
        if math.isinf(rhs):
            continue
        atol = _scale_tol(tol, m.space_x, x, rhs)
        if lhs > rhs + atol:
            record = tuple(np.append(s.center, s.radius)) if isinstance(s, Ball) else None
            violations.append(Violation(t, tuple(x), r, record, lhs - rhs, "violation"))
    return Certificate(
        property="inverse-errorbound", trials=trials, violations=violations, seed=seed,
        tolerances={"tol": tol},
        parameters={"alpha": alpha, "map": mp.map_to_json(m)},
    )


def check_inverse_hausdorff(m: mp.MapSpec, alpha: float, trials: int, seed: int,
                            tol: float = 1e-9) -> Certificate:
    """Lipschitz bound on the inclusion inverse over bounded test sets:
    the Hausdorff distance of inverse images is at most 1/alpha times the
    Hausdorff distance of the sets.

    Implemented for the dilation family, whose inverse images are the
    closed-form super-threshold shells of the radius function.
    """
    if not isinstance(m, mp.Dilation):
        raise NotImplementedError("closed-form inverse Hausdorff check needs a dilation")
    violations: list[Violation] = []
    for t in range(trials):
        rng = rng_for(seed, t)
        c1 = rng.uniform(-5.0, 5.0, size=m.space_y.dim)
        c2 = rng.uniform(-5.0, 5.0, size=m.space_y.dim)
        r1, r2 = rng.uniform(0.1, 4.0, size=2)
        a_set, b_set = Ball(c1, float(r1)), Ball(c2, float(r2))
        t_a = (float(outer_radius(m.space_y, a_set, m.y0)) - m.b) / m.a
        t_b = (float(outer_radius(m.space_y, b_set, m.y0)) - m.b) / m.a
        h_inv = abs(max(0.0, t_a) - max(0.0, t_b))
        h_sets = float(hausdorff(m.space_y, a_set, b_set))
        atol = _scale_tol(tol, m.space_y, c1, h_sets)
        if h_inv > h_sets / alpha + atol:
            violations.append(Violation(t, tuple(np.append(c1, r1)), float(r2),
                                        tuple(np.append(c2, r2)),
                                        h_inv - h_sets / alpha, "violation"))
    return Certificate(
        property="inverse-hausdorff", trials=trials, violations=violations, seed=seed,
        tolerances={"tol": tol},
        parameters={"alpha": alpha, "map": mp.map_to_json(m)},
    )


# ---------------------------------------------------------------------------
# lower semicontinuity of the excess function


def check_exc_semicontinuity(phi: mp.MapSpec, psi: mp.MapSpec, x0,
                             n_sequences: int, seed: int,
                             modulus: float | None = None,
                             n_terms: int = 12, tol: float = 1e-9) -> Certificate:
    """Sampled lower semicontinuity of x -> excess(phi(x), psi(x)) at x0.

    For seeded sequences x_n -> x0, the tail minima must not drop below
    the value at x0 by more than a vanishing allowance (a Lipschitz
    modulus times the tail radius, plus the tolerance).
    """
    x0 = np.asarray(x0, dtype=float)
    if modulus is None:
        modulus = mp.beta_of(phi) + mp.beta_of(psi)

    def exc_at(x):
        return float(excess(phi.space_y, mp.eval_map(phi, x), mp.eval_map(psi, x)))

    base = exc_at(x0)
    violations: list[Violation] = []
    for s_idx in range(n_sequences):
        rng = rng_for(seed, s_idx)
        direction = phi.space_x.unit(rng.standard_normal(phi.space_x.dim))
        delta0 = float(rng.uniform(0.5, 2.0))
        xs = [x0 + direction * delta0 * 0.5**k for k in range(n_terms)]
        values = [exc_at(x) for x in xs]
        for k in range(n_terms):
            tail_min = min(values[k:])
            tail_radius = delta0 * 0.5**k
            allowance = modulus * tail_radius + tol * (1.0 + base)
            if tail_min < base - allowance:
                violations.append(Violation(s_idx, tuple(x0), tail_radius,
                                            tuple(xs[k]), base - tail_min, "violation"))
                break
    return Certificate(
        property="excess-lower-semicontinuity", trials=n_sequences,
        violations=violations, seed=seed,
        tolerances={"tol": tol, "modulus": modulus},
        parameters={"x0": x0.tolist(), "phi": mp.map_to_json(phi), "psi": mp.map_to_json(psi)},
    )
