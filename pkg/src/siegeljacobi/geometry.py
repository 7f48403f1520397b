"""Invariant metrics, Laplacians and volume computations.

Metrics are evaluated from their polarized closed forms (trace polynomials);
Laplacians are applied to user-supplied functions through central finite
differences assembled per the exact trace formulas, with Richardson
extrapolation over step and step/2.  Volumes of the g = 1 and g = 2
fundamental domains come from deterministic quadrature and importance-
sampled Monte Carlo respectively.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import pi

import numpy as np
from numpy.polynomial.legendre import leggauss

from .group_core import (JacobiGroupElement, JacobiPoint, SiegelPoint,
                         _blocks_float)
from .intmat import to_float
from .minkowski import DEFAULT_BOUND, DEFAULT_EPS
from .siegel import CandidateSet, builtin_candidates, membership_mask_points

DEFAULT_FD_STEP = 1e-3

#: closed-form volumes of the first two Siegel fundamental domains
VOLUME_TARGETS = {1: pi / 3.0, 2: pi ** 3 / 270.0}


# ---------------------------------------------------------------------------
# tangent containers
# ---------------------------------------------------------------------------

def _sym(t, what):
    t = np.asarray(t)
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise ValueError("%s must be square" % what)
    if np.max(np.abs(t - t.T)) > 1e-12 * max(1.0, np.max(np.abs(t))):
        raise ValueError("%s must be symmetric" % what)
    return t


@dataclass(frozen=True)
class TangentP:
    """Tangent to the positive cone at Y: a real symmetric matrix."""

    H: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "H", _sym(np.asarray(self.H, dtype=float), "H"))


@dataclass(frozen=True)
class TangentSiegel:
    """Tangent to the Siegel space: a complex symmetric matrix."""

    dOmega: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "dOmega",
                           _sym(np.asarray(self.dOmega, dtype=complex), "dOmega"))


@dataclass(frozen=True)
class TangentJacobi:
    """Tangent to the Siegel-Jacobi space: (dOmega, dZ)."""

    dOmega: np.ndarray
    dZ: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "dOmega",
                           _sym(np.asarray(self.dOmega, dtype=complex), "dOmega"))
        object.__setattr__(self, "dZ", np.asarray(self.dZ, dtype=complex))


def _t_p(t):
    return t.H if isinstance(t, TangentP) else np.asarray(t, dtype=float)


def _t_s(t):
    return t.dOmega if isinstance(t, TangentSiegel) else np.asarray(t, dtype=complex)


def _t_j(t):
    if isinstance(t, TangentJacobi):
        return t.dOmega, t.dZ
    dom, dz = t
    return np.asarray(dom, dtype=complex), np.asarray(dz, dtype=complex)


# ---------------------------------------------------------------------------
# metrics
# ---------------------------------------------------------------------------

def metric_p(y, t1, t2) -> float:
    """Polarization of ds^2 = tr((Y^{-1} dY)^2) on the positive cone."""
    y = np.asarray(y, dtype=float)
    h1, h2 = _t_p(t1), _t_p(t2)
    yi = np.linalg.inv(y)
    return float(np.trace(yi @ h1 @ yi @ h2).real)


def metric_siegel(p: SiegelPoint, t1, t2) -> float:
    """Polarization of ds^2 = tr(Y^{-1} dOmega Y^{-1} conj(dOmega))."""
    d1, d2 = _t_s(t1), _t_s(t2)
    yi = np.linalg.inv(p.Y)
    return float(np.real(np.trace(yi @ d1 @ yi @ d2.conj())))


def metric_jacobi(p: JacobiPoint, t1, t2) -> float:
    """Polarized Kaehler metric on the Siegel-Jacobi space (four trace terms)."""
    do1, dz1 = _t_j(t1)
    do2, dz2 = _t_j(t2)
    y, v = p.omega.Y, p.V
    yi = np.linalg.inv(y)
    base = np.trace(yi @ do1 @ yi @ do2.conj())
    twist = np.trace(yi @ v.T @ v @ yi @ do1 @ yi @ do2.conj())
    fiber = np.trace(yi @ dz1.T @ dz2.conj())
    cross = (np.trace(v @ yi @ do1 @ yi @ dz2.conj().T)
             + np.trace(v @ yi @ do2 @ yi @ dz1.conj().T))
    return float(np.real(base + twist + fiber - cross))


def metric_fiber(omega: SiegelPoint, t1, t2) -> float:
    """Kaehler metric tr((Im Omega)^{-1} t(dZ) conj(dZ)) on the fiber torus.

    This is the dZ-only restriction of the full Siegel-Jacobi metric; it is
    invariant under the group action at fixed base point, with the fiber
    tangent pushing forward by dZ -> dZ (C Omega + D)^{-1}.
    """
    d1 = np.asarray(t1, dtype=complex)
    d2 = np.asarray(t2, dtype=complex)
    yi = np.linalg.inv(omega.Y)
    return float(np.real(np.trace(yi @ d1.T @ d2.conj())))


def push_tangent_p(gmat, t):
    """Pushforward of a cone tangent along Y -> g Y t(g)."""
    gmat = np.asarray(gmat, dtype=float)
    return gmat @ _t_p(t) @ gmat.T


def push_tangent_siegel(m, p: SiegelPoint, t):
    """Analytic differential of the Moebius action: t(K)^{-1} dOmega K^{-1}."""
    _, _, c, d = _blocks_float(m)
    k = c @ p.omega + d
    ki = np.linalg.inv(k)
    return ki.T @ _t_s(t) @ ki


def push_tangent_jacobi(x: JacobiGroupElement, p: JacobiPoint, t):
    """Analytic differential of the Jacobi action on (dOmega, dZ)."""
    dom, dz = _t_j(t)
    c, d = to_float(x.m.C), to_float(x.m.D)
    lam, mu = to_float(x.heis.lam), to_float(x.heis.mu)
    omega = p.omega.omega
    k = c @ omega + d
    ki = np.linalg.inv(k)
    z_new = (p.Z + lam @ omega + mu) @ ki
    dom_new = ki.T @ dom @ ki
    dz_new = (dz + lam @ dom) @ ki - z_new @ c @ dom @ ki
    return dom_new, dz_new


def siegel_density(p: SiegelPoint) -> float:
    """Invariant volume density det(Y)^{-(g+1)} in (x_ij, y_ij) coordinates."""
    return float(np.linalg.det(p.Y) ** (-(p.g + 1)))


def jacobi_density(p: JacobiPoint) -> float:
    """Invariant volume density det(Y)^{-(g+h+1)} in (x, y, u, v) coordinates."""
    return float(np.linalg.det(p.omega.Y) ** (-(p.g + p.h + 1)))


# ---------------------------------------------------------------------------
# Laplacians by finite differences
# ---------------------------------------------------------------------------

def _sym_pairs(g):
    return [(a, b) for a in range(g) for b in range(a, g)]


def _sym_dir(g, a, b):
    d = np.zeros((g, g))
    d[a, b] = 1.0
    d[b, a] = 1.0
    if a == b:
        d[a, a] = 1.0
    return d


class _Chart:
    """Real coordinate chart around the evaluation point of one operator kind."""

    def __init__(self, kind, point):
        self.kind = kind
        if kind == "P":
            y = np.asarray(point.entries if hasattr(point, "entries") else point,
                           dtype=float)
            self.y = y
            g = y.shape[0]
            self.dirs = [("Y", _sym_dir(g, a, b)) for a, b in _sym_pairs(g)]
            self.coord_id = {("Y", a, b): i for i, (a, b) in enumerate(_sym_pairs(g))}
        elif kind == "siegel":
            self.x, self.y = point.X, point.Y
            g = self.y.shape[0]
            pairs = _sym_pairs(g)
            self.dirs = ([("X", _sym_dir(g, a, b)) for a, b in pairs]
                         + [("Y", _sym_dir(g, a, b)) for a, b in pairs])
            self.coord_id = {}
            for i, (a, b) in enumerate(pairs):
                self.coord_id[("X", a, b)] = i
                self.coord_id[("Y", a, b)] = len(pairs) + i
        elif kind in ("jacobi", "omega"):
            self.x, self.y = point.omega.X, point.omega.Y
            self.u, self.v = point.U, point.V
            g = self.y.shape[0]
            h = self.u.shape[0]
            pairs = _sym_pairs(g)
            self.coord_id = {}
            self.dirs = []
            if kind == "jacobi":
                for a, b in pairs:
                    self.coord_id[("X", a, b)] = len(self.dirs)
                    self.dirs.append(("X", _sym_dir(g, a, b)))
                for a, b in pairs:
                    self.coord_id[("Y", a, b)] = len(self.dirs)
                    self.dirs.append(("Y", _sym_dir(g, a, b)))
            for k in range(h):
                for l in range(g):
                    e = np.zeros((h, g))
                    e[k, l] = 1.0
                    self.coord_id[("U", k, l)] = len(self.dirs)
                    self.dirs.append(("U", e))
            for k in range(h):
                for l in range(g):
                    e = np.zeros((h, g))
                    e[k, l] = 1.0
                    self.coord_id[("V", k, l)] = len(self.dirs)
                    self.dirs.append(("V", e))
        else:
            raise ValueError("unknown operator kind %r" % kind)

    def cid(self, block, a, b):
        if block in ("X", "Y") and a > b:
            a, b = b, a
        return self.coord_id[(block, a, b)]

    def evaluator(self, f):
        kind = self.kind

        def at(offsets):
            dx = dy = du = dv = None
            for i, s in offsets:
                block, mat = self.dirs[i]
                if block == "X":
                    dx = (dx if dx is not None else 0) + s * mat
                elif block == "Y":
                    dy = (dy if dy is not None else 0) + s * mat
                elif block == "U":
                    du = (du if du is not None else 0) + s * mat
                else:
                    dv = (dv if dv is not None else 0) + s * mat
            if kind == "P":
                y = self.y + (dy if dy is not None else 0)
                _require_posdef(y)
                return f(y)
            if kind == "siegel":
                y = self.y + (dy if dy is not None else 0)
                _require_posdef(y)
                x = self.x + (dx if dx is not None else 0)
                return f(x + 1j * y)
            y = self.y + (dy if dy is not None else 0)
            if dy is not None:
                _require_posdef(y)
            x = self.x + (dx if dx is not None else 0)
            u = self.u + (du if du is not None else 0)
            v = self.v + (dv if dv is not None else 0)
            z = u + 1j * v
            if kind == "omega":
                return f(z)
            return f(x + 1j * y, z)

        return at


def _require_posdef(y):
    try:
        np.linalg.cholesky(y)
    except np.linalg.LinAlgError:
        raise ValueError("finite-difference stencil leaves the domain "
                         "(Im part lost positivity)") from None


def _operator_terms(kind, chart):
    """Coefficient tables: dict {(i, j): coeff} for d^2/dt_i dt_j and {i: coeff}."""
    second = {}
    first = {}

    def add2(i, j, c):
        key = (i, j) if i <= j else (j, i)
        second[key] = second.get(key, 0.0) + c

    if kind == "P":
        y = chart.y
        g = y.shape[0]
        w = lambda a, b: 0.5 * (1.0 + (a == b))
        for i in range(g):
            for j in range(g):
                cid = chart.cid("Y", j, i)
                first[cid] = first.get(cid, 0.0) + 0.5 * (g + 1) * y[i, j] * w(j, i)
        for i in range(g):
            for j in range(g):
                for k in range(g):
                    for m in range(g):
                        c = y[i, j] * y[k, m] * w(j, k) * w(m, i)
                        add2(chart.cid("Y", j, k), chart.cid("Y", m, i), c)
        return second, first

    if kind == "siegel":
        _add_siegel_terms(chart, add2, chart.y)
        return second, first

    if kind == "omega":
        y = chart.y
        _add_fiber_terms(chart, add2, y, scale=0.25)
        return second, first

    # kind == "jacobi": Laplace-Beltrami operator of the invariant Kaehler
    # metric.  In the holomorphic-splitting chart (x, y, u, v) of a Kaehler
    # metric the operator is the pure second-order form sum G^{ij} d_i d_j,
    # so the coefficient table is the inverse of the real metric matrix.
    # (The five-trace-term closed form reproduces this at g = 1 but its
    # fiber block deviates for g >= 2; see _jacobi_trace_form_terms.)
    gmat = _jacobi_metric_matrix(chart)
    ginv = np.linalg.inv(gmat)
    d = len(chart.dirs)
    for i in range(d):
        add2(i, i, ginv[i, i])
        for j in range(i + 1, d):
            add2(i, j, 2.0 * ginv[i, j])
    return second, first


def _chart_tangent(chart, i):
    """Coordinate direction i of a jacobi chart as a (dOmega, dZ) pair."""
    g = chart.y.shape[0]
    h = chart.u.shape[0]
    block, mat = chart.dirs[i]
    dom = np.zeros((g, g), dtype=complex)
    dz = np.zeros((h, g), dtype=complex)
    if block == "X":
        dom = mat.astype(complex)
    elif block == "Y":
        dom = 1j * mat
    elif block == "U":
        dz = mat.astype(complex)
    else:
        dz = 1j * mat
    return dom, dz


def _jacobi_metric_matrix(chart) -> np.ndarray:
    """Real metric matrix of the Kaehler metric in the chart coordinates."""
    p = JacobiPoint(SiegelPoint(chart.x, chart.y), chart.u, chart.v)
    d = len(chart.dirs)
    tangents = [_chart_tangent(chart, i) for i in range(d)]
    gmat = np.empty((d, d))
    for i in range(d):
        for j in range(i, d):
            gmat[i, j] = gmat[j, i] = metric_jacobi(p, tangents[i], tangents[j])
    return gmat


def _jacobi_trace_form_terms(chart):
    """Second-order table of the five-trace-term closed form.

    Kept for comparison: it agrees with the inverse-metric assembly when
    g = 1 and differs in the fiber block for g >= 2 (its fiber coefficient
    (I + V Y^{-1} tV) x Y is not the Schur complement of the metric there);
    the tests pin down both facts.
    """
    second = {}

    def add2(i, j, c):
        key = (i, j) if i <= j else (j, i)
        second[key] = second.get(key, 0.0) + c

    y, v = chart.y, chart.v
    g = y.shape[0]
    h = v.shape[0]
    _add_siegel_terms(chart, add2, y)
    _add_fiber_terms(chart, add2, y, scale=1.0)
    yi = np.linalg.inv(y)
    wmat = v @ yi @ v.T
    for k in range(h):
        for l in range(h):
            for a in range(g):
                for c in range(g):
                    coeff = wmat[k, l] * y[a, c]
                    iu_lc, iv_lc = chart.cid("U", l, c), chart.cid("V", l, c)
                    iu_ka, iv_ka = chart.cid("U", k, a), chart.cid("V", k, a)
                    add2(iu_lc, iu_ka, coeff)
                    add2(iv_lc, iv_ka, coeff)
                    add2(iv_lc, iu_ka, 1j * coeff)
                    add2(iu_lc, iv_ka, -1j * coeff)
    wgt = lambda a, b: 0.5 * (1.0 + (a == b))
    for k in range(h):
        for a in range(g):
            for b in range(g):
                for c in range(g):
                    coeff = v[k, a] * y[b, c] * wgt(c, a)
                    ix, iy = chart.cid("X", c, a), chart.cid("Y", c, a)
                    iu, iv_ = chart.cid("U", k, b), chart.cid("V", k, b)
                    add2(ix, iu, coeff)
                    add2(iy, iv_, coeff)
                    add2(iy, iu, 1j * coeff)
                    add2(ix, iv_, -1j * coeff)
    for k in range(h):
        for a in range(g):
            for b in range(g):
                for c in range(g):
                    coeff = v[k, a] * y[b, c] * wgt(b, a)
                    iu, iv_ = chart.cid("U", k, c), chart.cid("V", k, c)
                    ix, iy = chart.cid("X", b, a), chart.cid("Y", b, a)
                    add2(iu, ix, coeff)
                    add2(iv_, iy, coeff)
                    add2(iv_, ix, 1j * coeff)
                    add2(iu, iy, -1j * coeff)
    return second


def _add_siegel_terms(chart, add2, y):
    """4 tr(Y t(Y dOmegabar) dOmega) over the real (x, y) chart."""
    g = y.shape[0]
    w = lambda a, b: 0.5 * (1.0 + (a == b))
    for a in range(g):
        for b in range(g):
            for c in range(g):
                for d in range(g):
                    coeff = y[a, b] * y[c, d] * w(d, b) * w(c, a)
                    ix_db, iy_db = chart.cid("X", d, b), chart.cid("Y", d, b)
                    ix_ca, iy_ca = chart.cid("X", c, a), chart.cid("Y", c, a)
                    add2(ix_db, ix_ca, coeff)
                    add2(iy_db, iy_ca, coeff)
                    add2(iy_db, ix_ca, 1j * coeff)
                    add2(ix_db, iy_ca, -1j * coeff)


def _add_fiber_terms(chart, add2, y, scale):
    """4s tr(Y dZ t(dZbar)), the flat fiber term; scale 1/4 gives the torus form."""
    g = y.shape[0]
    h = chart.u.shape[0]
    for a in range(g):
        for b in range(g):
            for k in range(h):
                coeff = scale * y[a, b]
                iu_kb, iv_kb = chart.cid("U", k, b), chart.cid("V", k, b)
                iu_ka, iv_ka = chart.cid("U", k, a), chart.cid("V", k, a)
                add2(iu_kb, iu_ka, coeff)
                add2(iv_kb, iv_ka, coeff)
                add2(iu_kb, iv_ka, 1j * coeff)
                add2(iv_kb, iu_ka, -1j * coeff)


def _apply_once(at, second, first, step):
    f0 = at(())
    cache = {}

    def d1(i):
        if ("1", i) not in cache:
            cache[("1", i)] = (at(((i, step),)) - at(((i, -step),))) / (2 * step)
        return cache[("1", i)]

    def d2(i, j):
        key = ("2", i, j)
        if key not in cache:
            if i == j:
                cache[key] = (at(((i, step),)) - 2 * f0 + at(((i, -step),))) / step ** 2
            else:
                cache[key] = (at(((i, step), (j, step))) - at(((i, step), (j, -step)))
                              - at(((i, -step), (j, step))) + at(((i, -step), (j, -step)))
                              ) / (4 * step ** 2)
        return cache[key]

    total = 0.0 + 0.0j
    for (i, j), c in second.items():
        if c != 0:
            total += c * d2(i, j)
    for i, c in first.items():
        if c != 0:
            total += c * d1(i)
    return total


def laplacian_apply(kind: str, f, point, fd_step: float = DEFAULT_FD_STEP,
                    richardson: bool = True) -> complex:
    """Apply one of the invariant Laplacians to a function at a point.

    Kinds and the matching signature of ``f``:

    * ``"P"``      cone operator tr((Y d/dY)^2);            f(Y)
    * ``"siegel"`` 4 tr(Y t(Y d/dOmegabar) d/dOmega);       f(omega)
    * ``"jacobi"`` the five-term Siegel-Jacobi operator;    f(omega, z)
    * ``"omega"``  tr(Im(Omega) d/dZ t(d/dZbar)), the fiber
      operator at fixed Omega (no factor 4, as printed);    f(z)

    The operator is assembled from central differences of first and mixed
    second partials; with ``richardson`` the step and half-step values are
    extrapolated, giving O(step^4) truncation error.
    """
    chart = _Chart(kind, point)
    second, first = _operator_terms(kind, chart)
    at = chart.evaluator(f)
    coarse = _apply_once(at, second, first, fd_step)
    if not richardson:
        return coarse
    fine = _apply_once(at, second, first, fd_step / 2)
    return (4.0 * fine - coarse) / 3.0


# ---------------------------------------------------------------------------
# volumes
# ---------------------------------------------------------------------------

def volume_f1(n_nodes: int = 64) -> float:
    """Volume of the g=1 fundamental domain by Gauss-Legendre quadrature.

    The y-integral of y^{-2} is analytic, leaving the smooth profile
    1/sqrt(1 - x^2) over x in [-1/2, 1/2]; the exact value is pi/3.
    """
    nodes, weights = leggauss(n_nodes)
    x = 0.5 * nodes
    w = 0.5 * weights
    return float(np.sum(w / np.sqrt(1.0 - x * x)))


@dataclass(frozen=True)
class VolumeEstimate:
    estimate: float
    stderr: float
    n_samples: int
    g: int
    seed: int
    acceptance_rate: float
    accepted_examples: tuple = field(default=(), repr=False)


def _chunk_g1(rng, n, a, eps, bound, cands, keep):
    x = rng.uniform(-0.5, 0.5, size=n)
    y = a / (1.0 - rng.random(n))
    xs = x.reshape(n, 1, 1)
    ys = y.reshape(n, 1, 1)
    ok = membership_mask_points(xs, ys, cands, eps, bound)
    w = np.where(ok, 1.0 / a, 0.0)
    examples = [(xs[i].copy(), ys[i].copy()) for i in np.nonzero(ok)[0][:keep]]
    return w.sum(), (w * w).sum(), int(ok.sum()), examples


def _chunk_g2(rng, n, a, eps, bound, cands, keep):
    t1 = a * (1.0 - rng.random(n)) ** (-1.0 / 3.0)
    t2 = t1 * (1.0 - rng.random(n)) ** (-1.0 / 2.0)
    s = rng.random(n)
    y12 = 0.5 * s * t1
    ys = np.zeros((n, 2, 2))
    ys[:, 0, 0] = t1
    ys[:, 1, 1] = t2
    ys[:, 0, 1] = ys[:, 1, 0] = y12
    xd = rng.uniform(-0.5, 0.5, size=(n, 3))
    xs = np.zeros((n, 2, 2))
    xs[:, 0, 0] = xd[:, 0]
    xs[:, 1, 1] = xd[:, 1]
    xs[:, 0, 1] = xs[:, 1, 0] = xd[:, 2]
    ok = membership_mask_points(xs, ys, cands, eps, bound)
    det_y = t1 * t2 - y12 * y12
    q1 = 3.0 * a ** 3 * t1 ** -4
    q2 = 2.0 * t1 ** 2 * t2 ** -3
    w = np.where(ok, det_y ** -3 * (0.5 * t1) / (q1 * q2), 0.0)
    examples = [(xs[i].copy(), ys[i].copy()) for i in np.nonzero(ok)[0][:keep]]
    return w.sum(), (w * w).sum(), int(ok.sum()), examples


def volume_fg_mc(g: int, n_samples: int, seed: int, chunk_size: int = 500_000,
                 threads: int = 1, eps: float = DEFAULT_EPS,
                 bound: int = DEFAULT_BOUND, cands: CandidateSet = None,
                 keep_samples: int = 0) -> VolumeEstimate:
    """Importance-sampled Monte Carlo volume of the g = 1 or 2 domain.

    X is uniform over the unit box; Y uses a Pareto-tail proposal matched to
    the invariant density (no truncation, so no tail bias): for g = 1 the
    density a/y^2 on [a, inf) with a = 0.8, for g = 2 the diagonal gets
    Pareto tails with exponents (3, 2) and the off-diagonal entry is uniform
    over the reduced wedge [0, y11/2].  Samples split into chunks seeded by
    (seed, chunk_index), so results are reproducible and independent of
    ``threads``; chunk sums merge in index order.

    ``keep_samples`` retains up to that many accepted (X, Y) pairs for
    external cross-checks against the scalar membership test.
    """
    if g not in (1, 2):
        raise ValueError("Monte Carlo volume supports g in {1, 2}")
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    cands = builtin_candidates(g) if cands is None else cands
    a = 0.8
    worker = _chunk_g1 if g == 1 else _chunk_g2

    sizes = []
    rest = n_samples
    while rest > 0:
        sizes.append(min(chunk_size, rest))
        rest -= sizes[-1]

    def run(idx_size):
        idx, size = idx_size
        rng = np.random.default_rng(np.random.SeedSequence([int(seed), idx]))
        keep = keep_samples if idx == 0 else 0
        return worker(rng, size, a, eps, bound, cands, keep)

    jobs = list(enumerate(sizes))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, jobs))
    else:
        results = [run(j) for j in jobs]

    sum_w = sum(r[0] for r in results)
    sum_w2 = sum(r[1] for r in results)
    n_acc = sum(r[2] for r in results)
    examples = tuple(ex for r in results for ex in r[3])[:keep_samples]
    est = sum_w / n_samples
    var = max(sum_w2 / n_samples - est * est, 0.0)
    stderr = float(np.sqrt(var / n_samples))
    return VolumeEstimate(float(est), stderr, n_samples, g, seed,
                          n_acc / n_samples, examples)
