"""Shared fixtures: the 1-d/2-d reference instance and its closed forms.

The reference inclusion instance ("t1"): psi(x) = ball(0, |x|) in the
plane (dilation with unit rate anchored at the origin), phi(x) =
ball(0, 1 + |x|/2).  Closed forms used as oracles throughout:
residual(x) = max(0, 1 - |x|/2), solution set {|x| >= 2}.
"""

import numpy as np
import pytest

import setcover_kit as sk


@pytest.fixture(scope="session")
def space1():
    return sk.NormedSpace(1)


@pytest.fixture(scope="session")
def space2():
    return sk.NormedSpace(2)


def make_t1_psi():
    return sk.Dilation(y0=np.zeros(2), a=1.0, b=0.0, anchor=np.zeros(1),
                       space_y=sk.NormedSpace(2))


def make_t1_phi():
    return sk.BallValued(sk.Affine(np.zeros((2, 1)), np.zeros(2)), c0=1.0, c1=0.5,
                         space_x=sk.NormedSpace(1), space_y=sk.NormedSpace(2))


def make_t1_instance(**kwargs):
    return sk.InclusionInstance(psi=make_t1_psi(), phi=make_t1_phi(), **kwargs)


def t1_residual_oracle(x):
    return max(0.0, 1.0 - abs(float(x)) / 2.0)


@pytest.fixture()
def t1_instance():
    return make_t1_instance()


@pytest.fixture()
def t1_problem(t1_instance):
    return lambda l: sk.PenaltyProblem(sk.AbsCoord(0), t1_instance, l)
