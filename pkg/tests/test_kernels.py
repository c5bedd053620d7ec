import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tautring import kernels
from tautring.herbaut import psi_reduced

BACKENDS = ["numpy"] + (["numba"] if kernels.NUMBA_AVAILABLE else [])


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("r", [2, 3, 4])
def test_psi_candidates_contain_every_exact_zero(backend, r):
    cands = set(kernels.psi_zero_candidates(r, 2, 80, backend=backend))
    exact = {(g, i) for g in range(2, 81) for i in range(1, g) if psi_reduced(g, i, r) == 0}
    assert exact <= cands
    # modular false positives are rare
    assert len(cands - exact) <= 2


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_backends_agree_on_scan(r):
    if len(BACKENDS) < 2:
        pytest.skip("numba unavailable")
    assert kernels.psi_zero_candidates(r, 2, 700, backend="numba") == kernels.psi_zero_candidates(
        r, 2, 700, backend="numpy"
    )


def test_scan_respects_range():
    c = kernels.psi_zero_candidates(3, 50, 60)
    assert all(50 <= g <= 60 and 1 <= i < g for g, i in c)
    assert kernels.psi_zero_candidates(3, 10, 9) == []


int_matrix = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@given(int_matrix)
def test_rank_mod_p_backends_agree(rows):
    a = np.array(rows, dtype=np.int64)
    expected = np.linalg.matrix_rank(a.astype(float))  # small integer entries: float rank is exact here
    for b in BACKENDS:
        assert kernels.rank_mod_p(a, backend=b) == expected


def test_rank_mod_p_detects_modular_collapse():
    p = 7
    a = np.array([[1, 2], [3, 6 + 7]], dtype=np.int64) % p
    assert kernels.rank_mod_p(a, p) == 1


def test_env_flag_forces_numpy():
    code = "from tautring import kernels; print(kernels.BACKEND, kernels.NUMBA_AVAILABLE)"
    env = dict(os.environ, TAUTRING_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["numpy", "False"]


def test_numba_backend_refused_when_disabled():
    code = (
        "from tautring import kernels\n"
        "try:\n    kernels.psi_zero_candidates(3, 2, 10, backend='numba')\n"
        "except RuntimeError:\n    print('refused')\n"
    )
    env = dict(os.environ, TAUTRING_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "refused"
