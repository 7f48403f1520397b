"""Exact integer matrix helpers.

Matrices are numpy arrays with dtype=object holding Python ints, so every
product, determinant and inverse below is exact (Python ints never overflow).
All functions return fresh arrays; nothing is mutated in place.
"""

from __future__ import annotations

from math import gcd

import numpy as np


def as_imat(data) -> np.ndarray:
    """Coerce ``data`` to a 2-d object array of Python ints.

    Float entries are accepted only when they are exactly integral.
    """
    arr = np.asarray(data)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise ValueError("expected a matrix, got ndim=%d" % arr.ndim)
    out = np.empty(arr.shape, dtype=object)
    for i in range(arr.shape[0]):
        for j in range(arr.shape[1]):
            v = arr[i, j]
            if isinstance(v, (bool, np.bool_)):
                raise ValueError("boolean entry in integer matrix")
            if isinstance(v, (int, np.integer)):
                out[i, j] = int(v)
            elif isinstance(v, (float, np.floating)):
                if v != round(v):
                    raise ValueError("non-integer entry %r" % v)
                out[i, j] = int(round(v))
            else:
                raise ValueError("non-integer entry %r" % (v,))
    return out


def ieye(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def izeros(m: int, n: int) -> np.ndarray:
    out = np.empty((m, n), dtype=object)
    out[:] = 0
    return out


def int_det(a: np.ndarray) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    a = np.array(a, dtype=object)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("determinant of non-square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k, k] == 0:
            for r in range(k + 1, n):
                if a[r, k] != 0:
                    a[[k, r]] = a[[r, k]]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i, j] = (a[i, j] * a[k, k] - a[i, k] * a[k, j]) // prev
        prev = a[k, k]
    return sign * int(a[n - 1, n - 1])


def int_inv_unimodular(a: np.ndarray) -> np.ndarray:
    """Exact inverse of a matrix with determinant +-1 (adjugate method)."""
    a = np.asarray(a, dtype=object)
    n = a.shape[0]
    d = int_det(a)
    if d not in (1, -1):
        raise ValueError("matrix is not unimodular (det=%s)" % d)
    adj = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            minor = np.delete(np.delete(a, i, axis=0), j, axis=1)
            adj[j, i] = (-1) ** (i + j) * int_det(minor)
    return adj * d if d == -1 else adj


def is_unimodular(a: np.ndarray) -> bool:
    return int_det(a) in (1, -1)


def complete_primitive(v) -> np.ndarray:
    """Extend a primitive integer vector to a unimodular matrix.

    Returns U with det(U) = +-1 whose first column equals ``v``.  Requires
    gcd(v) = 1.  Works by reducing v to e_1 with 2x2 elementary steps and
    accumulating the inverse word.
    """
    v = [int(x) for x in np.asarray(v).ravel()]
    m = len(v)
    if m == 0:
        raise ValueError("empty vector")
    g = 0
    for x in v:
        g = gcd(g, x)
    if g != 1:
        raise ValueError("vector is not primitive (gcd=%d)" % g)
    w = list(v)
    uinv = ieye(m)
    for i in range(1, m):
        if w[i] == 0:
            continue
        # xgcd step on rows 0 and i: maps (w0, wi) -> (g, 0)
        g2, s, t = _xgcd(w[0], w[i])
        p, q = w[0] // g2, w[i] // g2
        # row op E = [[s, t], [-q, p]] on (0, i); accumulate E^{-1} = [[p, -t], [q, s]]
        col0 = uinv[:, 0] * p + uinv[:, i] * q
        coli = uinv[:, 0] * (-t) + uinv[:, i] * s
        uinv[:, 0], uinv[:, i] = col0, coli
        w[0], w[i] = g2, 0
    if w[0] == -1:
        uinv[:, 0] = -uinv[:, 0]
        w[0] = 1
    assert w[0] == 1
    assert all(int(uinv[i, 0]) == v[i] for i in range(m))
    return uinv


def _xgcd(a: int, b: int):
    """Extended gcd: returns (g, s, t) with s*a + t*b = g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def to_float(a: np.ndarray) -> np.ndarray:
    return np.asarray(a, dtype=float)
