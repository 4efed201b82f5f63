"""Both kernel backends must agree bit for bit."""

import os
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from recconv import _kernels_py, kernels

try:
    from recconv import _kernels_c
except ImportError:  # extension not built
    _kernels_c = None

needs_c = pytest.mark.skipif(_kernels_c is None, reason="compiled kernels not built")
rats = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def test_backend_reported():
    assert kernels.BACKEND in ("compiled", "python")
    if _kernels_c is not None and not os.environ.get("RECCONV_PURE_PYTHON"):
        assert kernels.BACKEND == "compiled"


@needs_c
@given(st.lists(rats, max_size=8), st.lists(rats, max_size=8), st.integers(0, 12))
def test_convolve_agrees(a, b, n):
    py = _kernels_py.convolve(a, b, n)
    c = _kernels_c.convolve(a, b, n)
    assert py == c
    assert all(type(x) is F for x in c)


@needs_c
@settings(max_examples=100)
@given(
    st.integers(1, 3).flatmap(
        lambda L: st.tuples(
            st.lists(st.tuples(*[st.integers(0, 2)] * L), min_size=1, max_size=4),
            st.lists(rats, min_size=4, max_size=4),
            st.lists(rats, min_size=L, max_size=L),
            st.sampled_from([F(0), F(1), F(-1)]),
            st.booleans(),
        )
    )
)
def test_iterate_agrees(args):
    exps, coeffs, init, K, certify = args
    coeffs = coeffs[: len(exps)]
    assert _kernels_py.eval_terms(exps, coeffs, init) == _kernels_c.eval_terms(exps, coeffs, init)
    py = _kernels_py.iterate(exps, coeffs, init, K, certify, 25, 300)
    c = _kernels_c.iterate(exps, coeffs, init, K, certify, 25, 300)
    assert py == c


@pytest.mark.parametrize("mod", [_kernels_py, pytest.param(_kernels_c, marks=needs_c)])
def test_iterate_statuses(mod):
    status, traj, steps, _ = mod.iterate([(2,)], [F(1)], [F(-1)], F(1), True, 10, 100)
    assert (status, traj, steps) == (mod.CONVERGED, [F(-1), F(1)], 1)
    status, traj, steps, _ = mod.iterate([(1,)], [F(2)], [F(1)], F(0), True, 5, 100)
    assert (status, steps, traj[-1]) == (mod.EXHAUSTED, 5, F(32))
    status, _, step, bits = mod.iterate([(2,)], [F(2)], [F(1)], F(0), True, 50, 64)
    assert status == mod.BLOWUP and bits > 64
