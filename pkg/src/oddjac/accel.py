"""Hot loop for point counting: sum of chi(D(t)) over t in F_{q^i}.

Two interchangeable kernels with identical signatures: a numba ``@njit``
loop and a vectorised numpy version.  ``char_sum`` points at the numba kernel
unless numba is missing or ``ODDJAC_NO_JIT`` is set to a non-empty value other
than ``0``.

Field elements of F_{q^i} are integer codes; multiplication goes through
discrete log / antilog tables, and adding a base-field constant only touches
the lowest base-q digit of a code.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = ["BACKEND", "char_sum", "char_sum_numpy", "char_sum_jit", "HAVE_NUMBA"]


def char_sum_numpy(coeffs, exp_tab, log_tab, add_q, q):
    """Sum over all t of chi(D(t)); ``coeffs`` are base-field codes, ascending."""
    order = log_tab.shape[0]
    t = np.arange(order, dtype=np.int64)
    acc = np.zeros(order, dtype=np.int64)
    n1 = order - 1
    for k in range(coeffs.shape[0] - 1, -1, -1):
        nz = (acc != 0) & (t != 0)
        prod = np.zeros(order, dtype=np.int64)
        prod[nz] = exp_tab[(log_tab[acc[nz]] + log_tab[t[nz]]) % n1]
        low = prod % q
        acc = prod - low + add_q[low, coeffs[k]]
    val = np.where(acc == 0, 0, np.where(log_tab[acc] % 2 == 0, 1, -1))
    return int(val.sum())


def _char_sum_loop(coeffs, exp_tab, log_tab, add_q, q):
    order = log_tab.shape[0]
    n1 = order - 1
    total = 0
    for t in range(order):
        acc = 0
        for k in range(coeffs.shape[0] - 1, -1, -1):
            if acc != 0 and t != 0:
                acc = exp_tab[(log_tab[acc] + log_tab[t]) % n1]
            else:
                acc = 0
            low = acc % q
            acc = acc - low + add_q[low, coeffs[k]]
        if acc != 0:
            total += 1 if log_tab[acc] % 2 == 0 else -1
    return total


try:
    import numba

    HAVE_NUMBA = True
    char_sum_jit = numba.njit(cache=True)(_char_sum_loop)
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False
    char_sum_jit = _char_sum_loop


def _jit_disabled() -> bool:
    return os.environ.get("ODDJAC_NO_JIT", "") not in ("", "0")


if HAVE_NUMBA and not _jit_disabled():
    BACKEND = "numba"
    char_sum = char_sum_jit
else:
    BACKEND = "numpy"
    char_sum = char_sum_numpy
