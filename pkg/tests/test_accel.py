import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from hopf_pfaff import _accel


def box(caps):
    return np.stack(np.meshgrid(*[np.arange(c + 1) for c in caps], indexing="ij"), -1).reshape(-1, len(caps))


def brute(M, target, weights, budget, caps):
    grids = box(caps)
    keep = grids @ weights <= budget
    if M.shape[0]:
        keep &= np.all(grids @ M.T == target, axis=1)
    return grids[keep]


@st.composite
def instances(draw):
    n = draw(st.integers(1, 4))
    p = draw(st.integers(0, 2))
    M = np.array(draw(st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=p, max_size=p)),
                 dtype=np.int64).reshape(p, n)
    x = np.array(draw(st.lists(st.integers(0, 3), min_size=n, max_size=n)), dtype=np.int64)
    weights = np.array(draw(st.lists(st.floats(0.3, 2.0), min_size=n, max_size=n)))
    budget = float(x @ weights) + draw(st.floats(0.01, 1.5))
    caps = np.floor(budget / weights).astype(np.int64)
    return M, M @ x, weights, budget, caps


@settings(max_examples=60)
@given(instances())
def test_backends_agree_with_brute_force(inst):
    # points within rounding of the budget may land on either side
    assume(np.all(np.abs(box(inst[4]) @ inst[2] - inst[3]) > 1e-9))
    expected = brute(*inst)
    for use in (False, True) if _accel.NUMBA_AVAILABLE else (False,):
        got = _accel.enumerate_weighted(*inst, use_numba=use)
        assert np.array_equal(got, expected)
    assert np.array_equal(_accel._enumerate_python(*inst), expected)


def test_negative_budget_is_empty():
    out = _accel.enumerate_weighted(np.zeros((0, 2)), np.zeros(0), np.ones(2), -1.0, np.zeros(2))
    assert out.shape == (0, 2)


def test_backend_flag():
    assert _accel.backend() in ("numba", "numpy")


@pytest.mark.skipif(not _accel.NUMBA_AVAILABLE, reason="numba not installed")
def test_numba_matches_numpy_on_a_large_box():
    weights = np.log(np.array([2.0, 4.0, 3.0, 9.0, 5.0, 25.0]))
    M = np.array([[1, 2, 0, 0, 0, 0], [0, 0, 1, 2, 0, 0], [0, 0, 0, 0, 1, 2]], dtype=np.int64)
    target = np.array([6, 4, 4])
    budget = float(6 * weights[0] + 4 * weights[2] + 4 * weights[4]) + 1e-9
    caps = np.floor(budget / weights).astype(np.int64)
    a = _accel.enumerate_weighted(M, target, weights, budget, caps, use_numba=True)
    b = _accel.enumerate_weighted(M, target, weights, budget, caps, use_numba=False)
    assert np.array_equal(a, b) and len(a) == 4 * 3 * 3


def test_benchmark_script_backends_agree():
    import runpy
    from pathlib import Path

    bench = runpy.run_path(str(Path(__file__).parents[1] / "benchmarks" / "bench_enumeration.py"))
    assert bench["main"](["--repeat", "1"]) == 0
