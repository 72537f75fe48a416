import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from rkmeans import METRICS, ParameterError, distance, pairwise


@pytest.mark.parametrize("metric,expected", [("manhattan", 7), ("euclidean", 5), ("chebyshev", 4)])
def test_three_four_five(metric, expected):
    assert distance(metric, [0, 0], [3, 4]) == expected


@pytest.mark.parametrize("metric", METRICS)
def test_identity(metric):
    assert distance(metric, [1.5, -2, 3], [1.5, -2, 3]) == 0


def test_dimension_mismatch():
    with pytest.raises(ParameterError):
        distance("euclidean", [1, 2], [1, 2, 3])


def test_unknown_metric():
    with pytest.raises(ParameterError):
        distance("cosine", [1], [2])


def test_pairwise_1d():
    m = pairwise("euclidean", np.array([[0.0], [1.0], [2.0], [10.0]]))
    assert m[0].tolist() == [0, 1, 2, 10]


@pytest.mark.parametrize("metric", METRICS)
def test_pairwise_matches_double_loop(metric):
    x = np.random.default_rng(11).normal(size=(50, 6))

    def oracle(a, b):
        diffs = [abs(u - v) for u, v in zip(a, b)]
        if metric == "manhattan":
            return sum(diffs)
        if metric == "euclidean":
            return sum(t * t for t in diffs) ** 0.5
        return max(diffs)

    m = pairwise(metric, x)
    expected = np.array([[oracle(a, b) for b in x] for a in x])
    np.testing.assert_allclose(m, expected, rtol=0, atol=1e-12)
    assert np.all(np.diag(m) == 0) and np.array_equal(m, m.T)


vec = st.integers(1, 8).flatmap(
    lambda p: st.tuples(*[arrays(float, p, elements=st.floats(-1e3, 1e3)) for _ in range(4)]))


@settings(max_examples=200, deadline=None)
@given(vec)
def test_metric_properties(v):
    x, y, z, t = v
    p = x.size
    d = {m: distance(m, x, y) for m in METRICS}
    tol = 1e-9 * (1 + d["manhattan"])
    assert d["chebyshev"] <= d["euclidean"] + tol
    assert d["euclidean"] <= d["manhattan"] + tol
    assert d["manhattan"] <= p * d["chebyshev"] + tol
    for m in METRICS:
        assert distance(m, x, y) == distance(m, y, x)
        assert distance(m, x, y) >= 0
        slack = 1e-9 * (1 + distance(m, x, z) + distance(m, z, y))
        assert distance(m, x, y) <= distance(m, x, z) + distance(m, z, y) + slack
        assert distance(m, x + t, y + t) == pytest.approx(distance(m, x, y), abs=1e-9 * (1 + d["manhattan"] + np.abs(t).sum()))


def test_argmin_same_for_squared_and_plain_euclidean():
    rng = np.random.default_rng(5)
    x, c = rng.normal(size=(100, 3)), rng.normal(size=(4, 3))
    plain = np.argmin([[distance("euclidean", a, b) for b in c] for a in x], axis=1)
    squared = np.argmin([[distance("euclidean", a, b) ** 2 for b in c] for a in x], axis=1)
    assert np.array_equal(plain, squared)
