"""Instance files: strict decoding, execution, and report rendering.

An instance file is a JSON object tagged "setcover-kit/1" that names one
of the batch kinds (certify, inclusion, penalty, sfix, family) and the
maps/parameters it needs.  Decoding is strict: unknown fields are
rejected with the offending path, so a typo cannot silently change an
experiment.  Execution returns (exit_code, result) where the result dict
is fully deterministic for a fixed (instance, seed); volatile metadata
(timestamps) lives in a separate section of the written report.
"""

from __future__ import annotations

import math
from typing import Any

import numpy as np

from . import mappings as mp
from . import penalty as pen
from .certify import (
    check_covering,
    check_inverse_errorbound,
    check_inverse_hausdorff,
    check_set_covering,
    interior_radius,
)
from .geometry import NormedSpace
from .solver import InclusionInstance, solve_inclusion, strongly_fixed

VERSION_TAG = "setcover-kit/1"

EXIT_OK = 0
EXIT_FALSIFIED = 2
EXIT_INPUT = 3

__all__ = [
    "VERSION_TAG",
    "EXIT_OK",
    "EXIT_FALSIFIED",
    "EXIT_INPUT",
    "InstanceError",
    "decode_instance",
    "run_instance",
    "render_text",
    "jsonify",
    "builtin_instances",
]


class InstanceError(ValueError):
    """Schema violation with the offending JSON path."""

    def __init__(self, path: str, reason: str):
        self.path = path
        self.reason = reason
        super().__init__(f"{path}: {reason}")


# ---------------------------------------------------------------------------
# strict decoding helpers


def _check_keys(obj: dict, path: str, required: tuple, optional: tuple = ()):
    if not isinstance(obj, dict):
        raise InstanceError(path, f"expected an object, got {type(obj).__name__}")
    for key in obj:
        if key not in required and key not in optional:
            raise InstanceError(f"{path}.{key}", "unknown field")
    for key in required:
        if key not in obj:
            raise InstanceError(path, f"missing required field {key!r}")


def _number(obj, path: str) -> float:
    if isinstance(obj, bool) or not isinstance(obj, (int, float)):
        raise InstanceError(path, "expected a number")
    return float(obj)


def _integer(obj, path: str) -> int:
    if isinstance(obj, bool) or not isinstance(obj, int):
        raise InstanceError(path, "expected an integer")
    return obj


def _vector(obj, path: str) -> np.ndarray:
    if not isinstance(obj, list) or not obj:
        raise InstanceError(path, "expected a nonempty array of numbers")
    return np.array([_number(v, f"{path}[{i}]") for i, v in enumerate(obj)])


def _matrix(obj, path: str) -> np.ndarray:
    if not isinstance(obj, list) or not obj:
        raise InstanceError(path, "expected a nonempty array of rows")
    rows = [_vector(r, f"{path}[{i}]") for i, r in enumerate(obj)]
    widths = {r.shape[0] for r in rows}
    if len(widths) != 1:
        raise InstanceError(path, "rows have inconsistent lengths")
    return np.array(rows)


def _space(obj, path: str) -> NormedSpace:
    _check_keys(obj, path, ("dim",), ("norm", "p"))
    try:
        return NormedSpace(_integer(obj["dim"], f"{path}.dim"),
                           obj.get("norm", "euclidean"), obj.get("p"))
    except ValueError as exc:
        raise InstanceError(path, str(exc)) from exc


_MAP_FIELDS = {
    "dilation": (("kind", "y0", "a"), ("b", "anchor", "space_x", "space_y")),
    "sphere_scale": (("kind",), ()),
    "unit_ball_translate": (("kind",), ("dim",)),
    "sublinear_system": (("kind", "groups"), ("space_y",)),
    "epigraphical": (("kind", "matrix"), ()),
    "polyhedral_process": (("kind", "cx", "cy"), ()),
    "sum": (("kind", "base", "g"), ()),
    "composed": (("kind", "g", "base"), ()),
    "ball_valued": (("kind", "center", "c0", "space_x", "space_y"), ("c1", "xhat")),
}

_FN_FIELDS = {
    "affine": (("kind", "matrix", "offset"), ()),
    "scaled_norm_radial": (("kind", "scale", "direction"), ()),
}


def _catalog_fn(obj, path: str) -> mp.CatalogFn:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InstanceError(path, "expected a catalog function object with a 'kind' tag")
    kind = obj["kind"]
    if kind not in _FN_FIELDS:
        raise InstanceError(f"{path}.kind", f"unknown catalog function kind {kind!r}")
    _check_keys(obj, path, *_FN_FIELDS[kind])
    if kind == "affine":
        return mp.Affine(_matrix(obj["matrix"], f"{path}.matrix"),
                         _vector(obj["offset"], f"{path}.offset"))
    return mp.ScaledNormRadial(_number(obj["scale"], f"{path}.scale"),
                               _vector(obj["direction"], f"{path}.direction"))


def _map_spec(obj, path: str) -> mp.MapSpec:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InstanceError(path, "expected a map object with a 'kind' tag")
    kind = obj["kind"]
    if kind not in _MAP_FIELDS:
        raise InstanceError(f"{path}.kind", f"unknown map kind {kind!r}")
    _check_keys(obj, path, *_MAP_FIELDS[kind])
    try:
        if kind == "dilation":
            return mp.Dilation(
                _vector(obj["y0"], f"{path}.y0"),
                _number(obj["a"], f"{path}.a"),
                _number(obj.get("b", 0.0), f"{path}.b"),
                _vector(obj["anchor"], f"{path}.anchor") if "anchor" in obj else None,
                space_x=_space(obj["space_x"], f"{path}.space_x") if "space_x" in obj else None,
                space_y=_space(obj["space_y"], f"{path}.space_y") if "space_y" in obj else None)
        if kind == "sphere_scale":
            return mp.SphereScale()
        if kind == "unit_ball_translate":
            return mp.UnitBallTranslate(_integer(obj.get("dim", 1), f"{path}.dim"))
        if kind == "sublinear_system":
            groups = obj["groups"]
            if not isinstance(groups, list) or not groups:
                raise InstanceError(f"{path}.groups", "expected a nonempty array of matrices")
            return mp.SublinearSystem(
                tuple(_matrix(g, f"{path}.groups[{i}]") for i, g in enumerate(groups)),
                space_y=_space(obj["space_y"], f"{path}.space_y") if "space_y" in obj else None)
        if kind == "epigraphical":
            return mp.Epigraphical(_matrix(obj["matrix"], f"{path}.matrix"))
        if kind == "polyhedral_process":
            return mp.PolyhedralProcess(_matrix(obj["cx"], f"{path}.cx"),
                                        _matrix(obj["cy"], f"{path}.cy"))
        if kind == "sum":
            return mp.Sum(_map_spec(obj["base"], f"{path}.base"),
                          _catalog_fn(obj["g"], f"{path}.g"))
        if kind == "composed":
            return mp.Composed(_catalog_fn(obj["g"], f"{path}.g"),
                               _map_spec(obj["base"], f"{path}.base"))
        return mp.BallValued(
            _catalog_fn(obj["center"], f"{path}.center"),
            _number(obj["c0"], f"{path}.c0"),
            _number(obj.get("c1", 0.0), f"{path}.c1"),
            _vector(obj["xhat"], f"{path}.xhat") if "xhat" in obj else None,
            space_x=_space(obj["space_x"], f"{path}.space_x"),
            space_y=_space(obj["space_y"], f"{path}.space_y"))
    except InstanceError:
        raise
    except (ValueError, TypeError) as exc:
        raise InstanceError(path, str(exc)) from exc


_OBJECTIVE_FIELDS = {
    "norm_to_point": (("kind", "target"), ()),
    "linear": (("kind", "c"), ()),
    "abs_coord": (("kind", "i"), ()),
    "weighted_sum": (("kind", "terms"), ()),
}


def _objective(obj, path: str) -> pen.ObjectiveSpec:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InstanceError(path, "expected an objective object with a 'kind' tag")
    kind = obj["kind"]
    if kind not in _OBJECTIVE_FIELDS:
        raise InstanceError(f"{path}.kind", f"unknown objective kind {kind!r}")
    _check_keys(obj, path, *_OBJECTIVE_FIELDS[kind])
    if kind == "norm_to_point":
        return pen.NormToPoint(_vector(obj["target"], f"{path}.target"))
    if kind == "linear":
        return pen.Linear(_vector(obj["c"], f"{path}.c"))
    if kind == "abs_coord":
        return pen.AbsCoord(_integer(obj["i"], f"{path}.i"))
    terms = obj["terms"]
    if not isinstance(terms, list) or not terms:
        raise InstanceError(f"{path}.terms", "expected a nonempty array")
    out = []
    for i, term in enumerate(terms):
        _check_keys(term, f"{path}.terms[{i}]", ("weight", "objective"))
        out.append((_number(term["weight"], f"{path}.terms[{i}].weight"),
                    _objective(term["objective"], f"{path}.terms[{i}].objective")))
    return pen.WeightedSum(tuple(out))


_KIND_BLOCKS = {
    "certify": "certify",
    "inclusion": "solve",
    "penalty": "penalty",
    "sfix": "sfix",
    "family": "family",
}


def decode_instance(data: Any, path: str = "$") -> dict:
    """Validate the instance file and return its decoded blocks.

    Raises InstanceError with the offending path on any schema
    violation; unknown fields are rejected.
    """
    _check_keys(data, path, ("version", "kind"),
                ("maps", "certify", "solve", "penalty", "sfix", "family", "parameters"))
    if data["version"] != VERSION_TAG:
        raise InstanceError(f"{path}.version", f"expected {VERSION_TAG!r}")
    kind = data["kind"]
    if kind not in _KIND_BLOCKS:
        raise InstanceError(f"{path}.kind", f"unknown instance kind {kind!r}")
    block_name = _KIND_BLOCKS[kind]
    if block_name not in data:
        raise InstanceError(path, f"instance kind {kind!r} requires the {block_name!r} block")
    out: dict[str, Any] = {"kind": kind}

    params = data.get("parameters", {})
    _check_keys(params, f"{path}.parameters", (), ("seed", "tol"))
    out["seed"] = _integer(params.get("seed", 0), f"{path}.parameters.seed")
    out["tol"] = _number(params.get("tol", 1e-6), f"{path}.parameters.tol")

    maps = data.get("maps", {})
    _check_keys(maps, f"{path}.maps", (), ("psi", "phi"))
    if "psi" in maps:
        out["psi"] = _map_spec(maps["psi"], f"{path}.maps.psi")
    if "phi" in maps:
        out["phi"] = _map_spec(maps["phi"], f"{path}.maps.phi")

    if kind == "certify":
        blk = data["certify"]
        _check_keys(blk, f"{path}.certify", ("property",),
                    ("alpha", "safety", "trials", "expect", "x_box_halfwidth"))
        prop = blk["property"]
        known = ("covering", "set-covering", "inverse-errorbound",
                 "inverse-hausdorff", "interior-radius")
        if prop not in known:
            raise InstanceError(f"{path}.certify.property", f"unknown property {prop!r}")
        if "psi" not in out:
            raise InstanceError(f"{path}.maps", "certify instances need maps.psi")
        out["certify"] = {
            "property": prop,
            "alpha": blk.get("alpha", "auto"),
            "safety": _number(blk.get("safety", mp.DEFAULT_SAFETY), f"{path}.certify.safety"),
            "trials": _integer(blk.get("trials", 200), f"{path}.certify.trials"),
            "expect": blk.get("expect"),
            "x_box_halfwidth": _number(blk.get("x_box_halfwidth", 5.0),
                                       f"{path}.certify.x_box_halfwidth"),
        }
        if out["certify"]["alpha"] != "auto":
            out["certify"]["alpha"] = _number(blk["alpha"], f"{path}.certify.alpha")
    elif kind == "inclusion":
        blk = data["solve"]
        _check_keys(blk, f"{path}.solve", ("x0",),
                    ("alpha", "beta", "alpha_used", "max_iter", "polish"))
        if "psi" not in out or "phi" not in out:
            raise InstanceError(f"{path}.maps", "inclusion instances need maps.psi and maps.phi")
        out["solve"] = {
            "x0": _vector(blk["x0"], f"{path}.solve.x0"),
            "alpha": _number(blk["alpha"], f"{path}.solve.alpha") if "alpha" in blk else None,
            "beta": _number(blk["beta"], f"{path}.solve.beta") if "beta" in blk else None,
            "alpha_used": _number(blk["alpha_used"], f"{path}.solve.alpha_used")
            if "alpha_used" in blk else None,
            "max_iter": _integer(blk.get("max_iter", 10_000), f"{path}.solve.max_iter"),
            "polish": bool(blk.get("polish", True)),
        }
    elif kind == "penalty":
        blk = data["penalty"]
        _check_keys(blk, f"{path}.penalty", ("objective", "x0"),
                    ("l", "threshold_factor", "verify"))
        if "psi" not in out or "phi" not in out:
            raise InstanceError(f"{path}.maps", "penalty instances need maps.psi and maps.phi")
        if ("l" in blk) == ("threshold_factor" in blk):
            raise InstanceError(f"{path}.penalty",
                                "exactly one of 'l' and 'threshold_factor' is required")
        verify = None
        if "verify" in blk:
            vb = blk["verify"]
            _check_keys(vb, f"{path}.penalty.verify", ("x_bar", "radius", "grid_n"))
            verify = {"x_bar": _vector(vb["x_bar"], f"{path}.penalty.verify.x_bar"),
                      "radius": _number(vb["radius"], f"{path}.penalty.verify.radius"),
                      "grid_n": _integer(vb["grid_n"], f"{path}.penalty.verify.grid_n")}
        out["penalty"] = {
            "objective": _objective(blk["objective"], f"{path}.penalty.objective"),
            "x0": _vector(blk["x0"], f"{path}.penalty.x0"),
            "l": _number(blk["l"], f"{path}.penalty.l") if "l" in blk else None,
            "threshold_factor": _number(blk["threshold_factor"],
                                        f"{path}.penalty.threshold_factor")
            if "threshold_factor" in blk else None,
            "verify": verify,
        }
    elif kind == "sfix":
        blk = data["sfix"]
        _check_keys(blk, f"{path}.sfix", ("x0", "r_grid"), ("alpha", "alpha_used"))
        if "psi" not in out:
            raise InstanceError(f"{path}.maps", "sfix instances need maps.psi")
        out["sfix"] = {
            "x0": _vector(blk["x0"], f"{path}.sfix.x0"),
            "r_grid": [_number(r, f"{path}.sfix.r_grid[{i}]")
                       for i, r in enumerate(blk["r_grid"])],
            "alpha": _number(blk["alpha"], f"{path}.sfix.alpha") if "alpha" in blk else None,
            "alpha_used": _number(blk["alpha_used"], f"{path}.sfix.alpha_used")
            if "alpha_used" in blk else None,
        }
    else:  # family
        blk = data["family"]
        _check_keys(blk, f"{path}.family",
                    ("kind", "psi", "c1", "p_bar", "x_bar", "objective"),
                    ("radii", "dim_y"))
        if blk["kind"] != "ball_radius_family":
            raise InstanceError(f"{path}.family.kind",
                                f"unknown family kind {blk['kind']!r}")
        out["family"] = {
            "psi": _map_spec(blk["psi"], f"{path}.family.psi"),
            "c1": _number(blk["c1"], f"{path}.family.c1"),
            "p_bar": _vector(blk["p_bar"], f"{path}.family.p_bar"),
            "x_bar": _vector(blk["x_bar"], f"{path}.family.x_bar"),
            "objective": _objective(blk["objective"], f"{path}.family.objective"),
            "radii": [_number(r, f"{path}.family.radii[{i}]")
                      for i, r in enumerate(blk.get("radii", [0.25, 0.5]))],
        }
    return out


# ---------------------------------------------------------------------------
# execution


def run_instance(decoded: dict, seed: int | None = None, tol: float | None = None) -> tuple[int, dict]:
    """Execute a decoded instance; returns (exit_code, deterministic result dict)."""
    seed = decoded["seed"] if seed is None else seed
    tol = decoded["tol"] if tol is None else tol
    kind = decoded["kind"]
    if kind == "certify":
        return _run_certify(decoded, seed, tol)
    if kind == "inclusion":
        return _run_inclusion(decoded, seed, tol)
    if kind == "penalty":
        return _run_penalty(decoded, seed, tol)
    if kind == "sfix":
        return _run_sfix(decoded, seed, tol)
    return _run_family(decoded, seed, tol)


def _resolve_alpha(psi: mp.MapSpec, spec_alpha, safety: float) -> float:
    if spec_alpha == "auto":
        return safety * mp.alpha_of(psi).alpha
    return float(spec_alpha)


def _run_certify(decoded: dict, seed: int, tol: float) -> tuple[int, dict]:
    blk = decoded["certify"]
    psi = decoded["psi"]
    prop = blk["property"]
    if prop == "interior-radius":
        if not isinstance(psi, mp.PolyhedralProcess):
            raise InstanceError("$.maps.psi", "interior-radius needs a polyhedral process")
        report = interior_radius(psi)
        verdict = "set-covering" if report.alpha > 0 else "not-set-covering"
        code = EXIT_OK
        if blk["expect"] is not None and blk["expect"] != verdict:
            code = EXIT_FALSIFIED
        return code, {"kind": "interior-radius", "verdict": verdict,
                      "report": report.to_jsonable(), "seed": seed}
    hw = blk["x_box_halfwidth"]
    x_box = (-hw * np.ones(psi.space_x.dim), hw * np.ones(psi.space_x.dim))
    try:
        alpha = _resolve_alpha(psi, blk["alpha"], blk["safety"])
    except mp.NotSetCoveringError as exc:
        raise InstanceError("$.certify.alpha",
                            f"alpha 'auto' unavailable: {exc}") from exc
    if prop == "covering":
        cert = check_covering(psi, alpha, blk["trials"], seed, x_box=x_box)
    elif prop == "set-covering":
        cert = check_set_covering(psi, alpha, blk["trials"], seed, x_box=x_box)
    elif prop == "inverse-errorbound":
        cert = check_inverse_errorbound(psi, alpha, blk["trials"], seed, x_box=x_box)
    else:
        cert = check_inverse_hausdorff(psi, alpha, blk["trials"], seed)
    code = EXIT_FALSIFIED if cert.falsified else EXIT_OK
    if blk["expect"] is not None:
        code = EXIT_OK if cert.verdict == blk["expect"] else EXIT_FALSIFIED
    return code, {"kind": "certify", "certificate": cert.to_jsonable(), "seed": seed}


def _run_inclusion(decoded: dict, seed: int, tol: float) -> tuple[int, dict]:
    blk = decoded["solve"]
    inst = InclusionInstance(psi=decoded["psi"], phi=decoded["phi"],
                             alpha=blk["alpha"], beta=blk["beta"],
                             alpha_used=blk["alpha_used"], tol=tol,
                             max_iter=blk["max_iter"])
    trace = solve_inclusion(inst, blk["x0"], polish=blk["polish"])
    code = EXIT_OK if trace.status == "converged" else EXIT_FALSIFIED
    return code, {"kind": "inclusion", "trace": trace.to_jsonable(), "seed": seed}


def _run_penalty(decoded: dict, seed: int, tol: float) -> tuple[int, dict]:
    blk = decoded["penalty"]
    inst = InclusionInstance(psi=decoded["psi"], phi=decoded["phi"], tol=min(tol, 1e-9))
    l_phi = pen.objective_lipschitz(blk["objective"], inst.space_x)
    thresh = pen.threshold(l_phi, inst.alpha_used, inst.beta)
    l_val = blk["l"] if blk["l"] is not None else blk["threshold_factor"] * thresh
    prob = pen.PenaltyProblem(blk["objective"], inst, l_val)
    result = pen.minimize_penalty(prob, blk["x0"], seed=seed)
    out = {"kind": "penalty", "l": l_val, "threshold": thresh,
           "minimizer": result.to_jsonable(), "seed": seed}
    code = EXIT_OK
    if blk["verify"] is not None:
        cert = pen.verify_exactness(prob, blk["verify"]["x_bar"],
                                    blk["verify"]["radius"], blk["verify"]["grid_n"])
        out["exactness"] = cert.to_jsonable()
        if cert.falsified:
            code = EXIT_FALSIFIED
    return code, out


def _run_sfix(decoded: dict, seed: int, tol: float) -> tuple[int, dict]:
    blk = decoded["sfix"]
    try:
        res = strongly_fixed(decoded["psi"], blk["x0"], blk["r_grid"],
                             alpha=blk["alpha"], alpha_used=blk["alpha_used"],
                             tol=tol, seed=seed)
    except RuntimeError as exc:
        return EXIT_FALSIFIED, {"kind": "sfix", "status": "exhausted",
                                "reason": str(exc), "seed": seed}
    return EXIT_OK, {"kind": "sfix", "status": "found", "x": res.x.tolist(),
                     "r": res.r, "inclusion_margin": res.inclusion_margin,
                     "trace": res.trace.to_jsonable(), "seed": seed}


def _run_family(decoded: dict, seed: int, tol: float) -> tuple[int, dict]:
    blk = decoded["family"]
    psi_fixed = blk["psi"]
    c1 = blk["c1"]
    space_x = psi_fixed.space_x
    space_y = psi_fixed.space_y
    zero_center = mp.Affine(np.zeros((space_y.dim, space_x.dim)), np.zeros(space_y.dim))

    def phi_of_p(p):
        return mp.BallValued(zero_center, c0=float(p[0]), c1=c1,
                             space_x=space_x, space_y=space_y)

    fam = pen.ParamFamily(param_space=NormedSpace(blk["p_bar"].shape[0]),
                          p_bar=blk["p_bar"], phi_of_p=phi_of_p,
                          psi_of_p=lambda p: psi_fixed)
    cal = pen.calmness_diagnostic(fam, blk["objective"], blk["x_bar"],
                                  radii=blk["radii"], seed=seed)
    semi = pen.semiregularity_estimate(fam, blk["x_bar"], radius=max(blk["radii"]),
                                       seed=seed)
    return EXIT_OK, {"kind": "family", "calmness": cal.to_jsonable(),
                     "semiregularity": semi.to_jsonable(), "seed": seed}


# ---------------------------------------------------------------------------
# report rendering


def jsonify(value):
    """Recursively convert to JSON-safe types; non-finite floats become strings."""
    if isinstance(value, dict):
        return {k: jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonify(v) for v in value]
    if isinstance(value, np.ndarray):
        return [jsonify(v) for v in value.tolist()]
    if isinstance(value, (np.floating, float)):
        f = float(value)
        if math.isnan(f):
            return "nan"
        if math.isinf(f):
            return "inf" if f > 0 else "-inf"
        return f
    if isinstance(value, (np.integer,)):
        return int(value)
    return value


def render_text(result: dict, indent: int = 0) -> str:
    """Stable-format indented table of a result dict."""
    lines = []
    pad = "  " * indent
    for key in result:
        val = result[key]
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            lines.append(render_text(val, indent + 1))
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{pad}{key}: [{len(val)} records]")
            for rec in val[:5]:
                lines.append(render_text(rec, indent + 1))
                lines.append(f"{pad}  --")
        else:
            lines.append(f"{pad}{key}: {val}")
    return "\n".join(line for line in lines if line)


# ---------------------------------------------------------------------------
# built-in instances (used by the demo subcommand and the test suite)


def builtin_instances() -> dict[str, dict]:
    """The bundled end-to-end fixtures, as instance-file dicts."""
    space1 = {"dim": 1}
    space2 = {"dim": 2}
    dilation_t1 = {"kind": "dilation", "y0": [0.0, 0.0], "a": 1.0, "b": 0.0,
                   "anchor": [0.0], "space_x": space1, "space_y": space2}
    phi_t1 = {"kind": "ball_valued",
              "center": {"kind": "affine", "matrix": [[0.0], [0.0]], "offset": [0.0, 0.0]},
              "c0": 1.0, "c1": 0.5, "space_x": space1, "space_y": space2}
    return {
        "t1": {
            "version": VERSION_TAG,
            "kind": "inclusion",
            "maps": {"psi": dilation_t1, "phi": phi_t1},
            "solve": {"x0": [0.0]},
            "parameters": {"seed": 0, "tol": 1e-6},
        },
        "t1_penalty": {
            "version": VERSION_TAG,
            "kind": "penalty",
            "maps": {"psi": dilation_t1, "phi": phi_t1},
            "penalty": {"objective": {"kind": "abs_coord", "i": 0}, "x0": [0.0],
                        "threshold_factor": 1.05,
                        "verify": {"x_bar": [2.0], "radius": 1.0, "grid_n": 81}},
            "parameters": {"seed": 0, "tol": 1e-6},
        },
        "sphere_scale_covering": {
            "version": VERSION_TAG,
            "kind": "certify",
            "maps": {"psi": {"kind": "sphere_scale"}},
            "certify": {"property": "covering", "alpha": 1.0, "trials": 200,
                        "expect": "no-counterexample-found"},
            "parameters": {"seed": 0, "tol": 1e-6},
        },
        "sphere_scale_set_covering": {
            "version": VERSION_TAG,
            "kind": "certify",
            "maps": {"psi": {"kind": "sphere_scale"}},
            "certify": {"property": "set-covering", "alpha": 0.5, "trials": 60,
                        "expect": "falsified"},
            "parameters": {"seed": 0, "tol": 1e-6},
        },
        "sublinear": {
            "version": VERSION_TAG,
            "kind": "certify",
            "maps": {"psi": {"kind": "sublinear_system",
                             "groups": [[[1.0, 0.0], [-1.0, 0.0]],
                                        [[0.0, 1.0], [0.0, -1.0]]]}},
            "certify": {"property": "set-covering", "alpha": "auto", "trials": 60,
                        "expect": "no-counterexample-found"},
            "parameters": {"seed": 0, "tol": 1e-6},
        },
        "process": {
            "version": VERSION_TAG,
            "kind": "certify",
            "maps": {"psi": {"kind": "polyhedral_process",
                             "cx": [[1.0], [1.0]],
                             "cy": [[-1.0, 0.0], [0.0, -1.0]]}},
            "certify": {"property": "interior-radius", "expect": "set-covering"},
            "parameters": {"seed": 0, "tol": 1e-6},
        },
        "sfix": {
            "version": VERSION_TAG,
            "kind": "sfix",
            "maps": {"psi": {"kind": "sum",
                             "base": {"kind": "dilation", "y0": [0.0], "a": 3.0, "b": 1.0,
                                      "anchor": [0.0], "space_x": space1, "space_y": space1},
                             "g": {"kind": "affine", "matrix": [[0.5]], "offset": [0.0]}}},
            "sfix": {"x0": [4.0], "r_grid": [1.0, 0.5]},
            "parameters": {"seed": 0, "tol": 1e-6},
        },
        "family": {
            "version": VERSION_TAG,
            "kind": "family",
            "family": {"kind": "ball_radius_family", "psi": dilation_t1, "c1": 0.5,
                       "p_bar": [1.0], "x_bar": [2.0],
                       "objective": {"kind": "abs_coord", "i": 0},
                       "radii": [0.25, 0.5]},
            "parameters": {"seed": 0, "tol": 1e-6},
        },
    }
