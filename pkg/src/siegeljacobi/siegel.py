"""Siegel fundamental domain: membership test and highest-point reduction.

A point is reduced when (S.1) no candidate symplectic element raises
det Im(Omega), (S.2) Im(Omega) is Minkowski reduced, and (S.3) the entries
of Re(Omega) lie in [-1/2, 1/2].  Condition (S.1) quantifies over the whole
modular group; it is certified here against a finite candidate set:

* g = 1: the single inversion J_1 (exact, classical),
* g = 2: a determinant-test family shipped as package data, generated by
  enumerating symplectic words and deduplicating bottom-row classes
  (C, D) under left GL(2, Z); membership is exact relative to this set,
* g >= 3: a heuristic set of embedded lower-rank inversions; membership is
  certified relative to the provided set only.

Candidate sets can be overridden from JSON files (``--candidates`` in the
CLI, or the SJK_CANDIDATE_DIR environment variable).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import combinations

import numpy as np

from .group_core import SiegelPoint, SymplecticInt, act_siegel
from .intmat import ieye, izeros, to_float
from .jsonio import decode_symplectic, encode_symplectic
from .minkowski import DEFAULT_BOUND, DEFAULT_EPS, is_minkowski_reduced, minkowski_reduce

ENV_CANDIDATE_DIR = "SJK_CANDIDATE_DIR"


class SiegelReductionError(RuntimeError):
    """Reduction hit the iteration cap; carries the best iterate and trace."""

    def __init__(self, message, best=None, trace=None):
        super().__init__(message)
        self.best = best
        self.trace = trace


@dataclass(frozen=True)
class CandidateSet:
    """Finite family of symplectic elements certifying (S.1) for one g.

    Elements with C = 0 act trivially on det Im and are dropped.
    """

    g: int
    elements: tuple
    source: str = "builtin"

    def __post_init__(self):
        kept = []
        for m in self.elements:
            if not isinstance(m, SymplecticInt):
                raise ValueError("candidate set entries must be SymplecticInt")
            if m.g != self.g:
                raise ValueError("candidate has g=%d, set has g=%d" % (m.g, self.g))
            if np.any(np.asarray(m.C) != 0):
                kept.append(m)
        object.__setattr__(self, "elements", tuple(kept))

    def __len__(self):
        return len(self.elements)

    def block_arrays(self):
        """Stacked float (C, D) blocks, shape (ncand, g, g) each."""
        cs = np.stack([to_float(m.C) for m in self.elements])
        ds = np.stack([to_float(m.D) for m in self.elements])
        return cs, ds


@dataclass(frozen=True)
class SiegelCertificate:
    """act_siegel(gamma, original) equals reduced; det Im never decreased."""

    reduced: SiegelPoint
    gamma: SymplecticInt
    iterations: int
    on_boundary: bool


# ---------------------------------------------------------------------------
# candidate sets
# ---------------------------------------------------------------------------

def _subset_inversion(g: int, subset) -> SymplecticInt:
    """Full inversion embedded on a coordinate subset."""
    p = izeros(g, g)
    for i in subset:
        p[i, i] = 1
    eye = ieye(g)
    return SymplecticInt(eye - p, p, -p, eye - p)


def heuristic_candidates(g: int) -> CandidateSet:
    """J_g together with every embedded lower-rank inversion."""
    elems = []
    for r in range(1, g + 1):
        for subset in combinations(range(g), r):
            elems.append(_subset_inversion(g, subset))
    return CandidateSet(g, tuple(elems), source="heuristic")


@lru_cache(maxsize=8)
def builtin_candidates(g: int) -> CandidateSet:
    if g < 1:
        raise ValueError("g must be >= 1")
    if g == 1:
        return CandidateSet(1, (SymplecticInt.inversion(1),), source="builtin-g1")
    if g == 2:
        with resources.files("siegeljacobi.data").joinpath("candidates_g2.json").open() as fh:
            return _decode_candidates(json.load(fh), source="builtin-g2")
    return heuristic_candidates(g)


def _decode_candidates(obj, source: str) -> CandidateSet:
    if "g" not in obj or "elements" not in obj:
        raise ValueError("candidates.g or candidates.elements missing")
    elems = tuple(decode_symplectic(e, "candidates.elements[%d]" % i)
                  for i, e in enumerate(obj["elements"]))
    return CandidateSet(int(obj["g"]), elems, source=source)


def load_candidates(path) -> CandidateSet:
    with open(path) as fh:
        return _decode_candidates(json.load(fh), source=str(path))


def save_candidates(cands: CandidateSet, path) -> None:
    obj = {"g": cands.g,
           "elements": [encode_symplectic(m) for m in cands.elements]}
    with open(path, "w") as fh:
        json.dump(obj, fh)


def resolve_candidates(g: int, path=None) -> CandidateSet:
    """Explicit path wins, then $SJK_CANDIDATE_DIR/candidates_g{g}.json, then built-ins."""
    if path is not None:
        return load_candidates(path)
    env_dir = os.environ.get(ENV_CANDIDATE_DIR)
    if env_dir:
        cand_path = os.path.join(env_dir, "candidates_g%d.json" % g)
        if os.path.exists(cand_path):
            return load_candidates(cand_path)
    return builtin_candidates(g)


# ---------------------------------------------------------------------------
# membership
# ---------------------------------------------------------------------------

def det_sq(cands: CandidateSet, omega: np.ndarray) -> np.ndarray:
    """|det(C Omega + D)|^2 for every candidate at one point."""
    out = np.empty(len(cands))
    for i, m in enumerate(cands.elements):
        k = to_float(m.C) @ omega + to_float(m.D)
        out[i] = abs(np.linalg.det(k)) ** 2
    return out


def siegel_membership(p: SiegelPoint, cands: CandidateSet = None,
                      eps: float = DEFAULT_EPS, bound: int = DEFAULT_BOUND):
    """Return (member, on_boundary) for the domain cut out by the candidate set."""
    cands = builtin_candidates(p.g) if cands is None else cands
    vals = det_sq(cands, p.omega)
    member = bool(np.all(vals >= 1.0 - eps))
    member = member and is_minkowski_reduced(p.Y, bound, eps)
    member = member and bool(np.max(np.abs(p.X)) <= 0.5 + eps)
    on_boundary = False
    if member:
        on_boundary = bool(np.min(np.abs(vals - 1.0)) <= eps
                           or np.max(np.abs(np.abs(p.X) - 0.5)) <= eps
                           or _mink_on_boundary(p.Y, bound, eps))
    return member, on_boundary


def is_siegel_reduced(p: SiegelPoint, cands: CandidateSet = None,
                      eps: float = DEFAULT_EPS, bound: int = DEFAULT_BOUND) -> bool:
    return siegel_membership(p, cands, eps, bound)[0]


def _mink_on_boundary(y: np.ndarray, bound: int, eps: float) -> bool:
    from .minkowski import _candidate_arrays
    g = y.shape[0]
    vecs, tails = _candidate_arrays(g, bound)
    quad = np.einsum("nv,vw,nw->n", vecs, y, vecs)
    for k in range(g):
        mask = tails[:, k].copy()
        # +-e_k achieves equality trivially and says nothing about the boundary
        unit = np.zeros(g)
        unit[k] = 1.0
        mask &= ~np.all(np.abs(vecs) == unit, axis=1)
        if mask.any() and np.min(np.abs(quad[mask] - y[k, k])) <= eps:
            return True
    for k in range(g - 1):
        if abs(y[k, k + 1]) <= eps:
            return True
    return False


def membership_mask_points(xs: np.ndarray, ys: np.ndarray,
                           cands: CandidateSet, eps: float = DEFAULT_EPS,
                           bound: int = DEFAULT_BOUND) -> np.ndarray:
    """Vectorized is_siegel_reduced over stacks of (X, Y) pairs.

    Same conditions, candidate family and slacks as the scalar test; used by
    the Monte Carlo volume integrator and cross-checked against the scalar
    path in the tests.
    """
    from .minkowski import membership_mask
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    ok = np.max(np.abs(xs), axis=(1, 2)) <= 0.5 + eps
    ok &= membership_mask(ys, bound, eps)
    omega = xs + 1j * ys
    cs, ds = cands.block_arrays()
    g = xs.shape[-1]
    for c, d in zip(cs, ds):
        live = np.nonzero(ok)[0]
        if live.size == 0:
            break
        k = np.matmul(c, omega[live]) + d
        if g == 1:
            det = k[:, 0, 0]
        elif g == 2:
            det = k[:, 0, 0] * k[:, 1, 1] - k[:, 0, 1] * k[:, 1, 0]
        else:
            det = np.linalg.det(k)
        ok[live] &= (det.real ** 2 + det.imag ** 2) >= 1.0 - eps
    return ok


# ---------------------------------------------------------------------------
# reduction
# ---------------------------------------------------------------------------

def highest_point_step(p: SiegelPoint, cands: CandidateSet = None,
                       eps: float = DEFAULT_EPS, bound: int = DEFAULT_BOUND):
    """One pass of the highest-point loop: Minkowski-reduce Im, center Re,
    then apply the best det-raising candidate if any fires.

    Returns (new_point, gamma_step) with act_siegel(gamma_step, p) = new_point;
    the step is the identity exactly when p is reduced.
    """
    cands = builtin_candidates(p.g) if cands is None else cands
    g = p.g
    gamma = SymplecticInt.identity(g)
    cur = p

    cert = minkowski_reduce(cur.Y, bound, eps)
    if cert.iterations > 0:
        step = SymplecticInt.gl_embed(cert.transform.entries)
        cur = act_siegel(step, cur)
        gamma = step * gamma

    shift = -np.round(cur.X)
    if np.any(shift != 0):
        step = SymplecticInt.translation(shift.astype(int))
        cur = act_siegel(step, cur)
        gamma = step * gamma

    vals = det_sq(cands, cur.omega)
    best = int(np.argmin(vals))
    if vals[best] < 1.0 / (1.0 + eps):
        step = cands.elements[best]
        cur = act_siegel(step, cur)
        gamma = step * gamma

    return cur, gamma


def siegel_reduce(p: SiegelPoint, cands: CandidateSet = None,
                  eps: float = DEFAULT_EPS, bound: int = DEFAULT_BOUND,
                  max_iters: int = 1000) -> SiegelCertificate:
    """Move p into the fundamental domain by the highest-point method."""
    cands = builtin_candidates(p.g) if cands is None else cands
    gamma = SymplecticInt.identity(p.g)
    cur = p
    trace = [float(np.linalg.det(p.Y))]
    for it in range(max_iters):
        nxt, step = highest_point_step(cur, cands, eps, bound)
        if step.is_identity():
            member, on_boundary = siegel_membership(cur, cands, eps, bound)
            assert member, "stalled highest-point step must leave a member"
            return SiegelCertificate(cur, gamma, it, on_boundary)
        gamma = step * gamma
        cur = nxt
        trace.append(float(np.linalg.det(cur.Y)))
    raise SiegelReductionError("siegel_reduce hit the iteration cap",
                               best=cur, trace=trace)
