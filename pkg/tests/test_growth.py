import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from pyramids.growth import GrowthFitter, fit_growth
from pyramids.series import count_B


@pytest.mark.parametrize("a,target", [(2, 4.0), (3, 6.75)])
def test_fit_on_exact_counts(a, target):
    est = fit_growth([count_B(a, m) for m in range(16, 41)], start=16)
    assert abs(est.H - target) / target < 0.01
    assert est.estimate == est.H
    assert est.C == pytest.approx(-0.5, abs=0.05)
    assert est.stderr >= 0


def test_constant_sequence():
    assert fit_growth([3.0] * 8).H == pytest.approx(1.0)


@given(st.floats(0.1, 10), st.floats(1.1, 9), st.floats(-2, 2))
def test_exact_model_recovered(A, H, C):
    n = np.arange(3, 15)
    y = A * H**n * n**C
    est = fit_growth(y, sizes=n)
    assert est.H == pytest.approx(H, rel=1e-6)
    assert est.A == pytest.approx(A, rel=1e-5)
    assert est.C == pytest.approx(C, abs=1e-5)


def test_validation():
    with pytest.raises(ValueError):
        fit_growth([1, 2, 3])
    with pytest.raises(ValueError):
        fit_growth([1, 2, 3, 4], sizes=[1, 2, 3])
    with pytest.raises(np.linalg.LinAlgError):
        fit_growth([1, 2, 3, 4], sizes=[5, 5, 5, 5])
    with pytest.raises(ValueError):
        fit_growth([1, -2, 3, 4])


def test_estimator_api():
    X = np.arange(10, 30).reshape(-1, 1)
    y = np.array([count_B(2, int(m)) for m in X[:, 0]], dtype=float)
    model = GrowthFitter()
    with pytest.raises(NotFittedError):
        model.predict(X)
    model.fit(X, y)
    assert model.get_params() == {"min_points": 4}
    assert np.allclose(np.log(model.predict(X)), np.log(y), atol=1e-3)
    assert model.score(X, y) > 0.99
    c = clone(model)
    assert not hasattr(c, "H_")
    assert math.isfinite(model.H_stderr_)
