"""Deterministic coordinate pattern search.

Polls +/- each coordinate at the current step, takes the best improving
poll (lexicographically smallest point on ties), and halves the step
when no poll improves.  Fully deterministic for a fixed starting point,
so traces replay bit-identically.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["PatternStep", "PatternTrace", "pattern_search"]


@dataclass(frozen=True)
class PatternStep:
    x: tuple
    value: float
    step: float
    evals: int


@dataclass
class PatternTrace:
    steps: list[PatternStep] = field(default_factory=list)
    n_evals: int = 0
    budget_exhausted: bool = False
    initial_step: float = 1.0
    step_floor: float = 1e-7

    def to_jsonable(self, max_steps: int = 50) -> dict:
        steps = self.steps
        if len(steps) > max_steps:
            steps = steps[: max_steps - 1] + [steps[-1]]
        return {
            "n_evals": self.n_evals,
            "budget_exhausted": self.budget_exhausted,
            "initial_step": self.initial_step,
            "step_floor": self.step_floor,
            "steps": [{"x": list(s.x), "value": s.value, "step": s.step, "evals": s.evals}
                      for s in steps],
        }


def pattern_search(f, x0, initial_step: float = 1.0, step_floor: float = 1e-7,
                   max_evals: int = 100_000, project=None):
    """Minimize f from x0; returns (x, f(x), PatternTrace)."""
    x = np.asarray(x0, dtype=float).copy()
    if project is not None:
        x = np.asarray(project(x), dtype=float)
    trace = PatternTrace(initial_step=initial_step, step_floor=step_floor)
    fx = float(f(x))
    trace.n_evals = 1
    step = initial_step
    n = x.shape[0]
    trace.steps.append(PatternStep(tuple(x), fx, step, trace.n_evals))
    while step >= step_floor:
        if trace.n_evals + 2 * n > max_evals:
            trace.budget_exhausted = True
            break
        best_cand, best_val = None, fx
        for i in range(n):
            for sign in (1.0, -1.0):
                cand = x.copy()
                cand[i] += sign * step
                if project is not None:
                    cand = np.asarray(project(cand), dtype=float)
                val = float(f(cand))
                trace.n_evals += 1
                better = val < best_val - 0.0
                tie = val == best_val and best_cand is not None and tuple(cand) < tuple(best_cand)
                if better or tie:
                    best_cand, best_val = cand, val
        if best_cand is None:
            step /= 2.0
        else:
            x, fx = best_cand, best_val
            trace.steps.append(PatternStep(tuple(x), fx, step, trace.n_evals))
    return x, fx, trace
