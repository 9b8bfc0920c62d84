"""Per-trial clique-order kernel for the Monte Carlo harness.

For one alive mask of shape ``(m, m, 2c)`` the kernel returns the clique
order reached by ``[fallback/single, fallback/flip-drop, greedy/single,
greedy/flip-drop]``, cell scan included, without building any chains.

All 4m oriented subgrids are scored from four summaries of the dead
vertices: the first and last dead row of each vertical half-chain and the
first and last dead column of each horizontal one.  A half-chain is clean
on a corner-anchored subgrid iff all its dead vertices sit in the rows (or
columns) that subgrid drops.

Set ``FAULTEMBED_DISABLE_NUMBA=1`` to force the vectorised numpy path.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

NUMBA_DISABLED = os.environ.get("FAULTEMBED_DISABLE_NUMBA", "").lower() not in ("", "0", "false")
HAVE_NUMBA = numba is not None


def _dead_ranges(alive, m, c):
    dead = ~alive
    idx = np.arange(m)
    left, right = dead[:, :, :c], dead[:, :, c:]
    rows = idx[:, None, None]
    cols = idx[None, :, None]
    vmin = np.where(left, rows, m).min(axis=0)  # [col, s]
    vmax = np.where(left, rows, -1).max(axis=0)
    hmin = np.where(right, cols, m).min(axis=1)  # [row, t]
    hmax = np.where(right, cols, -1).max(axis=1)
    return vmin, vmax, hmin, hmax


def _cell_best_numpy(alive, c):
    left = alive[:, :, :c].sum(axis=2)
    right = alive[:, :, c:].sum(axis=2)
    both = np.where((left > 0) & (right > 0), np.minimum(left, right) + 1, 0)
    one = ((left > 0) ^ (right > 0)).astype(np.int64)
    return int(max(both.max(), one.max()))


def outcomes_numpy(alive, c, cross=False):
    m = alive.shape[0]
    vmin, vmax, hmin, hmax = _dead_ranges(alive, m, c)
    K = np.arange(m)[:, None]
    I = np.arange(m)[None, :]
    L = m - K
    valid = I < L
    cell = _cell_best_numpy(alive, c)
    best_f = best_g = 0
    single_f = single_g = 0
    for corner in range(4):
        fh, fv = corner & 1, corner >> 1
        row = np.clip(m - 1 - K - I if fv else K + I, 0, m - 1)
        col = np.clip(m - 1 - K - I if fh else K + I, 0, m - 1)
        if fv:
            cv = (vmin[col] >= L[..., None]).sum(axis=2)
        else:
            cv = (vmax[col] < K[..., None]).sum(axis=2)
        if fh:
            ch = (hmin[row] >= L[..., None]).sum(axis=2)
        else:
            ch = (hmax[row] < K[..., None]).sum(axis=2)
        cv = np.where(valid, cv, 0)
        ch = np.where(valid, ch, 0)
        tot_v, tot_h = cv.sum(axis=1), ch.sum(axis=1)
        if cross:
            n_full = np.minimum(tot_v, tot_h)
        else:
            n_full = np.minimum(cv, ch).sum(axis=1)
        sv, sh = tot_v - n_full, tot_h - n_full
        greedy = np.where((sv > 0) & (sh > 0), n_full + 2,
                          np.where((sv > 0) | (sh > 0) | (n_full > 0), n_full + 1, 0))
        c_o = np.where(valid, np.minimum(cv, ch), c + 1).min(axis=1)
        fallback = np.where(c_o >= 1, c_o * L[:, 0] + 1, 0)
        if corner == 0:
            single_f, single_g = int(fallback[0]), int(greedy[0])
        best_f = max(best_f, int(fallback.max()))
        best_g = max(best_g, int(greedy.max()))
    return np.array([max(single_f, cell), max(best_f, cell),
                     max(single_g, cell), max(best_g, cell)], dtype=np.int64)


def _outcomes_kernel(alive, c, cross):
    m = alive.shape[0]
    vmin = np.full((m, c), m, dtype=np.int64)
    vmax = np.full((m, c), -1, dtype=np.int64)
    hmin = np.full((m, c), m, dtype=np.int64)
    hmax = np.full((m, c), -1, dtype=np.int64)
    cell = 0
    for a in range(m):
        for b in range(m):
            nl = 0
            nr = 0
            for d in range(c):
                if alive[a, b, d]:
                    nl += 1
                else:
                    if a < vmin[b, d]:
                        vmin[b, d] = a
                    if a > vmax[b, d]:
                        vmax[b, d] = a
                if alive[a, b, c + d]:
                    nr += 1
                else:
                    if b < hmin[a, d]:
                        hmin[a, d] = b
                    if b > hmax[a, d]:
                        hmax[a, d] = b
            if nl > 0 and nr > 0:
                val = min(nl, nr) + 1
            elif nl > 0 or nr > 0:
                val = 1
            else:
                val = 0
            if val > cell:
                cell = val
    out = np.zeros(4, dtype=np.int64)
    best_f = 0
    best_g = 0
    for corner in range(4):
        fh = corner & 1
        fv = corner >> 1
        for k in range(m):
            size = m - k
            n_full = 0
            tot_v = 0
            tot_h = 0
            c_o = c
            for i in range(size):
                row = m - 1 - k - i if fv else k + i
                col = m - 1 - k - i if fh else k + i
                cv = 0
                ch = 0
                for s in range(c):
                    if fv:
                        if vmin[col, s] >= size:
                            cv += 1
                    elif vmax[col, s] < k:
                        cv += 1
                    if fh:
                        if hmin[row, s] >= size:
                            ch += 1
                    elif hmax[row, s] < k:
                        ch += 1
                tot_v += cv
                tot_h += ch
                pair = min(cv, ch)
                n_full += pair
                if pair < c_o:
                    c_o = pair
            if cross:
                n_full = min(tot_v, tot_h)
            sv = tot_v - n_full
            sh = tot_h - n_full
            if sv > 0 and sh > 0:
                g = n_full + 2
            elif sv > 0 or sh > 0 or n_full > 0:
                g = n_full + 1
            else:
                g = 0
            f = c_o * size + 1 if c_o >= 1 else 0
            if corner == 0 and k == 0:
                out[0] = f
                out[2] = g
            if f > best_f:
                best_f = f
            if g > best_g:
                best_g = g
    out[1] = best_f
    out[3] = best_g
    for j in range(4):
        if cell > out[j]:
            out[j] = cell
    return out


if HAVE_NUMBA:
    outcomes_numba = numba.njit(cache=True)(_outcomes_kernel)
else:  # pragma: no cover
    outcomes_numba = None


def outcomes_python(alive, c, cross=False):
    """The loop kernel run uncompiled; slow, kept for cross-checking."""
    return _outcomes_kernel(np.asarray(alive, dtype=bool), c, bool(cross))


def active_backend():
    return "numba" if HAVE_NUMBA and not NUMBA_DISABLED else "numpy"


def trial_outcomes(alive, c, cross=False, backend=None):
    """Dispatch to the compiled kernel or the numpy path."""
    backend = backend or active_backend()
    alive = np.ascontiguousarray(alive, dtype=np.bool_)
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but numba is not importable")
        return outcomes_numba(alive, c, bool(cross))
    if backend == "numpy":
        return outcomes_numpy(alive, c, cross)
    raise ValueError(f"unknown backend {backend!r}")
