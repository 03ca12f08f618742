"""Inclusion solver: contraction trace, bounds, strongly fixed points."""

import numpy as np
import pytest

import setcover_kit as sk
from conftest import make_t1_instance, make_t1_psi, t1_residual_oracle

EU1 = sk.NormedSpace(1)


class TestInstance:
    def test_constants_derived(self, t1_instance):
        assert t1_instance.alpha == 1.0
        assert t1_instance.beta == 0.5
        assert t1_instance.alpha_used == pytest.approx(0.99)

    def test_beta_must_stay_below_alpha_used(self):
        with pytest.raises(ValueError):
            make_t1_instance(alpha_used=0.4)

    def test_phi_must_be_bounded(self):
        psi = make_t1_psi()
        unbounded_phi = sk.Epigraphical(np.eye(1))
        with pytest.raises(ValueError):
            sk.InclusionInstance(psi=sk.Dilation(y0=np.zeros(1), a=2.0, anchor=np.zeros(1),
                                                 space_x=EU1, space_y=EU1),
                                 phi=unbounded_phi)

    def test_residual_matches_closed_form(self, t1_instance):
        for x in (-3.0, -1.0, 0.0, 0.5, 1.9, 2.0, 4.0):
            assert t1_instance.residual([x]) == pytest.approx(t1_residual_oracle(x))


class TestSolve:
    def test_t1_from_origin(self, t1_instance):
        trace = sk.solve_inclusion(t1_instance, [0.0])
        assert trace.status == "converged"
        assert trace.n_iterations <= 40
        assert trace.residuals[-1] <= 1e-6
        d, bound = trace.bound_check
        assert 2.0 <= d <= bound + 1e-6
        assert bound == pytest.approx(1.0 / 0.49)

    def test_already_feasible_zero_iterations(self, t1_instance):
        trace = sk.solve_inclusion(t1_instance, [5.0])
        assert trace.status == "converged" and trace.n_iterations == 0
        assert np.allclose(trace.x_final, [5.0])

    def test_geometric_decay_closed_form(self, t1_instance):
        trace = sk.solve_inclusion(t1_instance, [0.0], polish=False)
        ratio = 0.5 / 0.99
        r0 = trace.residuals[0]
        for k, r in enumerate(trace.residuals):
            assert r <= ratio**k * r0 + 1e-9

    def test_monotone_residual_invariant(self, t1_instance):
        for x0 in (-1.5, 0.0, 0.7, 1.99):
            trace = sk.solve_inclusion(t1_instance, [x0])
            ratio = trace.beta / trace.alpha_used
            contraction = [s for s in trace.steps if s.kind != "polish"]
            for prev, cur in zip(contraction, contraction[1:]):
                assert cur.residual <= ratio * prev.residual + 1e-9 * (1 + prev.residual)

    def test_step_length_invariant(self, t1_instance):
        trace = sk.solve_inclusion(t1_instance, [0.3])
        prev_r = trace.residuals[0]
        for s in trace.steps[1:]:
            if s.kind == "polish":
                allowed = prev_r / (trace.alpha_used - trace.beta)
            else:
                allowed = prev_r / trace.alpha_used
            assert s.step_length <= allowed + 1e-9 * (1 + allowed)
            prev_r = s.residual

    def test_total_displacement_bound(self, t1_instance):
        for x0 in (0.0, -0.4, 1.2):
            trace = sk.solve_inclusion(t1_instance, [x0])
            total = sum(s.step_length for s in trace.steps)
            assert total <= trace.bound_check[1] + trace.tol

    def test_feasibility_reverified(self, t1_instance):
        trace = sk.solve_inclusion(t1_instance, [0.0])
        assert trace.residual_recheck is not None
        assert trace.residual_recheck <= trace.tol * (1 + 1e-6)

    def test_grid_oracle_agreement(self, t1_instance):
        # the solver cannot land closer to x0 than the true solution set
        for x0 in (0.0, 1.0, -0.5, 1.9):
            trace = sk.solve_inclusion(t1_instance, [x0])
            true_dist = max(0.0, 2.0 - abs(x0))
            assert trace.bound_check[0] >= true_dist - 1e-6

    def test_negative_side_converges_left(self, t1_instance):
        trace = sk.solve_inclusion(t1_instance, [-0.5])
        assert trace.x_final[0] <= -2.0 + 1e-6

    def test_contraction_violation_detected(self):
        # lie about beta: claim 0.1 for a map whose true constant is 0.5
        inst = make_t1_instance(beta=0.1)
        trace = sk.solve_inclusion(inst, [0.0])
        assert trace.status == "contraction-violated"
        assert trace.violation is not None
        assert trace.violation["residual_next"] > trace.violation["allowed"]

    def test_budget_exhausted(self):
        inst = make_t1_instance(max_iter=2, tol=1e-12)
        trace = sk.solve_inclusion(inst, [0.0], polish=False)
        assert trace.status == "budget-exhausted"

    def test_trace_serialization_truncates(self, t1_instance):
        trace = sk.solve_inclusion(t1_instance, [0.0])
        blob = trace.to_jsonable(max_iterates=5)
        assert len(blob["iterates"]) == 5
        assert blob["iterates"][0]["kind"] == "start"
        assert tuple(blob["iterates"][-1]["x"]) == tuple(trace.steps[-1].x)


class TestStronglyFixed:
    def make_psi(self):
        base = sk.Dilation(y0=np.zeros(1), a=3.0, b=1.0, anchor=np.zeros(1),
                           space_x=EU1, space_y=EU1)
        return sk.Sum(base, sk.Affine(np.array([[0.5]]), np.zeros(1)))

    def test_example_instance(self):
        res = sk.strongly_fixed(self.make_psi(), [0.0], r_grid=[1.0, 0.5], seed=0)
        assert res.r == 1.0
        assert res.inclusion_margin <= 1e-6 * (1 + res.r)
        # closed form: ball(x, r) inside ball(x/2, 1 + 3|x|) iff |x|/2 + r <= 1 + 3|x|
        x = float(res.x[0])
        assert abs(x) / 2 + res.r <= 1 + 3 * abs(x) + 1e-9

    def test_bound_check_against_proposition(self):
        psi = self.make_psi()
        x0 = np.array([4.0])
        res = sk.strongly_fixed(psi, x0, r_grid=[0.5], seed=0)
        alpha_used = 0.99 * 2.5
        d0 = float(sk.dist_point(EU1, x0, sk.eval_map(psi, x0)))
        assert EU1.dist(res.x, x0) <= d0 / (alpha_used - 1.0) + 1e-6

    def test_not_expanding(self):
        psi = sk.Dilation(y0=np.zeros(1), a=1.0, anchor=np.zeros(1),
                          space_x=EU1, space_y=EU1)
        with pytest.raises(sk.NotExpandingError):
            sk.strongly_fixed(psi, [0.0], r_grid=[1.0])

    def test_requires_self_mapping(self):
        psi = sk.Dilation(y0=np.zeros(2), a=2.0, anchor=np.zeros(1),
                          space_y=sk.NormedSpace(2))
        with pytest.raises(ValueError):
            sk.strongly_fixed(psi, [0.0], r_grid=[1.0])
