import os
import subprocess
import sys

import pytest

from hochdual import linalg
from hochdual.core import Window
from hochdual.hochschild import hh_dims
from hochdual.specio import load_corpus


def test_env_var_selects_pure_kernel():
    env = dict(os.environ, HOCHDUAL_PURE="1")
    out = subprocess.run([sys.executable, "-c", "from hochdual import linalg; print(linalg.kernel_name())"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_unknown_kernel_rejected():
    with pytest.raises(ValueError):
        linalg.set_kernel("fortran")


@pytest.mark.skipif(linalg._rank_ext is None, reason="compiled kernel not built")
@pytest.mark.parametrize("name", ["x4", "sqz_k0_k1", "mat2_dual"])
def test_kernels_give_same_homology(name):
    a = load_corpus(name)
    w = Window(0, 3)
    old = linalg.kernel_name()
    try:
        linalg.set_kernel("python")
        pure = hh_dims(a, w).dims
        linalg.set_kernel("compiled")
        fast = hh_dims(a, w).dims
    finally:
        linalg.set_kernel(old)
    assert pure == fast
