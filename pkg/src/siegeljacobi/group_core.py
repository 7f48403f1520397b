"""Exact group elements and their actions on the Siegel and Siegel-Jacobi spaces.

Group elements (symplectic, Heisenberg, Jacobi) carry exact Python-int
entries; the defining relations are checked exactly, never with tolerances.
Points carry float matrices in split real form: Omega = X + iY, Z = U + iV.
Everything here is a pure function on immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .intmat import as_imat, ieye, izeros, to_float

#: symmetry drift allowed when re-symmetrizing the result of a group action
EPS_SYM = 1e-9

#: condition-number ceiling for C*Omega + D before the action is refused
COND_LIMIT = 1e12


class IllConditionedActionError(RuntimeError):
    """Raised when C*Omega + D is numerically too close to singular."""


# ---------------------------------------------------------------------------
# points
# ---------------------------------------------------------------------------

def _check_symmetric(m: np.ndarray, what: str, eps: float = EPS_SYM) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("%s must be square" % what)
    drift = np.max(np.abs(m - m.T)) if m.size else 0.0
    if drift > eps:
        raise ValueError("%s not symmetric (drift %.3g > %.3g)" % (what, drift, eps))
    return 0.5 * (m + m.T)


def _check_posdef(m: np.ndarray, what: str) -> None:
    try:
        np.linalg.cholesky(m)
    except np.linalg.LinAlgError:
        raise ValueError("%s is not positive definite" % what) from None


@dataclass(frozen=True)
class PosDefMatrix:
    """Real symmetric positive-definite matrix (a point of the cone P_g)."""

    entries: np.ndarray

    def __post_init__(self):
        m = _check_symmetric(self.entries, "PosDefMatrix")
        _check_posdef(m, "PosDefMatrix")
        object.__setattr__(self, "entries", m)

    @property
    def g(self) -> int:
        return self.entries.shape[0]


def as_pd_array(y) -> np.ndarray:
    """Accept a PosDefMatrix or a raw array; return the validated float array."""
    if isinstance(y, PosDefMatrix):
        return y.entries
    return PosDefMatrix(np.asarray(y, dtype=float)).entries


@dataclass(frozen=True)
class SiegelPoint:
    """Point Omega = X + iY of the Siegel upper half-space."""

    X: np.ndarray
    Y: np.ndarray

    def __post_init__(self):
        x = _check_symmetric(self.X, "X")
        y = _check_symmetric(self.Y, "Y")
        if x.shape != y.shape:
            raise ValueError("X and Y shapes differ")
        _check_posdef(y, "Im(Omega)")
        object.__setattr__(self, "X", x)
        object.__setattr__(self, "Y", y)

    @classmethod
    def from_omega(cls, omega) -> "SiegelPoint":
        omega = np.asarray(omega, dtype=complex)
        if omega.ndim == 0:
            omega = omega.reshape(1, 1)
        return cls(omega.real.copy(), omega.imag.copy())

    @property
    def omega(self) -> np.ndarray:
        return self.X + 1j * self.Y

    @property
    def g(self) -> int:
        return self.X.shape[0]


@dataclass(frozen=True)
class JacobiPoint:
    """Point (Omega, Z) of the Siegel-Jacobi space, Z = U + iV in C^(h,g)."""

    omega: SiegelPoint
    U: np.ndarray
    V: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.U, dtype=float)
        v = np.asarray(self.V, dtype=float)
        if u.shape != v.shape or u.ndim != 2:
            raise ValueError("U and V must be equal-shape h x g matrices")
        if u.shape[1] != self.omega.g:
            raise ValueError("Z has %d columns, Omega is %d x %d"
                             % (u.shape[1], self.omega.g, self.omega.g))
        object.__setattr__(self, "U", u)
        object.__setattr__(self, "V", v)

    @classmethod
    def from_z(cls, omega: SiegelPoint, z) -> "JacobiPoint":
        z = np.asarray(z, dtype=complex)
        if z.ndim == 0:
            z = z.reshape(1, 1)
        return cls(omega, z.real.copy(), z.imag.copy())

    @property
    def Z(self) -> np.ndarray:
        return self.U + 1j * self.V

    @property
    def g(self) -> int:
        return self.omega.g

    @property
    def h(self) -> int:
        return self.U.shape[0]


# ---------------------------------------------------------------------------
# symplectic matrices
# ---------------------------------------------------------------------------

def j_matrix(g: int) -> np.ndarray:
    """The standard alternating form J_g as an exact integer matrix."""
    j = izeros(2 * g, 2 * g)
    for i in range(g):
        j[i, g + i] = 1
        j[g + i, i] = -1
    return j


def symplectic_check(m) -> bool:
    """Exact test of the defining relation t(M) J M = J."""
    m = as_imat(m)
    n = m.shape[0]
    if m.shape[1] != n or n % 2 != 0 or n == 0:
        raise ValueError("not 2gx2g")
    j = j_matrix(n // 2)
    return bool(np.array_equal(m.T @ j @ m, j))


@dataclass(frozen=True)
class SymplecticInt:
    """Element of Sp(g, Z) stored as exact integer blocks (A, B; C, D)."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray

    def __post_init__(self):
        blocks = [as_imat(b) for b in (self.A, self.B, self.C, self.D)]
        g = blocks[0].shape[0]
        for b in blocks:
            if b.shape != (g, g):
                raise ValueError("blocks must all be g x g")
        for name, b in zip("ABCD", blocks):
            object.__setattr__(self, name, b)
        if not symplectic_check(self.matrix):
            raise ValueError("blocks do not satisfy the symplectic relation")

    @property
    def g(self) -> int:
        return self.A.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        top = np.concatenate([self.A, self.B], axis=1)
        bot = np.concatenate([self.C, self.D], axis=1)
        return np.concatenate([top, bot], axis=0)

    @classmethod
    def from_matrix(cls, m) -> "SymplecticInt":
        m = as_imat(m)
        n = m.shape[0]
        if m.shape[1] != n or n % 2 != 0:
            raise ValueError("not 2gx2g")
        g = n // 2
        return cls(m[:g, :g], m[:g, g:], m[g:, :g], m[g:, g:])

    @classmethod
    def identity(cls, g: int) -> "SymplecticInt":
        return cls(ieye(g), izeros(g, g), izeros(g, g), ieye(g))

    @classmethod
    def inversion(cls, g: int) -> "SymplecticInt":
        """The full inversion J_g: Omega -> -Omega^{-1}."""
        return cls.from_matrix(j_matrix(g))

    @classmethod
    def translation(cls, s) -> "SymplecticInt":
        """Translation block (I, S; 0, I): Omega -> Omega + S, S = t(S) integer."""
        s = as_imat(s)
        if not np.array_equal(s, s.T):
            raise ValueError("translation block must be symmetric")
        g = s.shape[0]
        return cls(ieye(g), s, izeros(g, g), ieye(g))

    @classmethod
    def gl_embed(cls, u) -> "SymplecticInt":
        """Embed U in GL(g, Z) as (t(U), 0; 0, U^{-1}): Omega -> t(U) Omega U."""
        from .intmat import int_inv_unimodular
        u = as_imat(u)
        return cls(u.T, izeros(*u.shape), izeros(*u.shape), int_inv_unimodular(u))

    def __mul__(self, other: "SymplecticInt") -> "SymplecticInt":
        if not isinstance(other, SymplecticInt):
            return NotImplemented
        return SymplecticInt(
            self.A @ other.A + self.B @ other.C,
            self.A @ other.B + self.B @ other.D,
            self.C @ other.A + self.D @ other.C,
            self.C @ other.B + self.D @ other.D,
        )

    def __neg__(self) -> "SymplecticInt":
        return SymplecticInt(-self.A, -self.B, -self.C, -self.D)

    def inverse(self) -> "SymplecticInt":
        # block formula M^{-1} = J^{-1} t(M) J, exact
        return SymplecticInt(self.D.T, -self.B.T, -self.C.T, self.A.T)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymplecticInt):
            return NotImplemented
        return all(np.array_equal(getattr(self, n), getattr(other, n))
                   for n in "ABCD")

    def is_identity(self) -> bool:
        return self == SymplecticInt.identity(self.g)

    def is_plus_minus_identity(self) -> bool:
        return self.is_identity() or (-self).is_identity()


# ---------------------------------------------------------------------------
# Heisenberg and Jacobi group elements
# ---------------------------------------------------------------------------

def kappa_fix(lam: np.ndarray, mu: np.ndarray) -> np.ndarray:
    """Smallest-support integer kappa making (lam, mu; kappa) a group element.

    kappa + mu t(lam) must be symmetric, i.e. kappa - t(kappa) must equal
    lam t(mu) - mu t(lam).  The strictly upper-triangular part of that
    antisymmetric matrix does it; for h = 1 this is always 0.
    """
    anti = lam @ mu.T - mu @ lam.T
    return np.triu(anti, 1)


@dataclass(frozen=True)
class HeisenbergInt:
    """Integer Heisenberg element (lambda, mu; kappa), lambda/mu h x g."""

    lam: np.ndarray
    mu: np.ndarray
    kappa: np.ndarray

    def __post_init__(self):
        lam = as_imat(self.lam)
        mu = as_imat(self.mu)
        kappa = as_imat(self.kappa)
        if lam.shape != mu.shape:
            raise ValueError("lambda and mu shapes differ")
        h = lam.shape[0]
        if kappa.shape != (h, h):
            raise ValueError("kappa must be h x h")
        sym = kappa + mu @ lam.T
        if not np.array_equal(sym, sym.T):
            raise ValueError("kappa + mu t(lambda) is not symmetric")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "kappa", kappa)

    @classmethod
    def identity(cls, g: int, h: int) -> "HeisenbergInt":
        return cls(izeros(h, g), izeros(h, g), izeros(h, h))

    @classmethod
    def from_lam_mu(cls, lam, mu, kappa=None) -> "HeisenbergInt":
        """Build an element, supplying the canonical kappa when none is given."""
        lam, mu = as_imat(lam), as_imat(mu)
        if kappa is None:
            kappa = kappa_fix(lam, mu)
        return cls(lam, mu, kappa)

    @property
    def h(self) -> int:
        return self.lam.shape[0]

    @property
    def g(self) -> int:
        return self.lam.shape[1]

    def inverse(self) -> "HeisenbergInt":
        return HeisenbergInt(-self.lam, -self.mu,
                             -self.kappa + self.lam @ self.mu.T - self.mu @ self.lam.T)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeisenbergInt):
            return NotImplemented
        return (np.array_equal(self.lam, other.lam)
                and np.array_equal(self.mu, other.mu)
                and np.array_equal(self.kappa, other.kappa))


def heisenberg_mul(a: HeisenbergInt, b: HeisenbergInt) -> HeisenbergInt:
    """Group law (l,m;k)(l',m';k') = (l+l', m+m'; k+k'+l t(m') - m t(l'))."""
    if a.lam.shape != b.lam.shape:
        raise ValueError("shape mismatch")
    return HeisenbergInt(
        a.lam + b.lam,
        a.mu + b.mu,
        a.kappa + b.kappa + a.lam @ b.mu.T - a.mu @ b.lam.T,
    )


@dataclass(frozen=True)
class JacobiGroupElement:
    """Element (M, (lambda, mu; kappa)) of the discrete Jacobi group."""

    m: SymplecticInt
    heis: HeisenbergInt

    def __post_init__(self):
        if self.m.g != self.heis.g:
            raise ValueError("symplectic and Heisenberg parts disagree on g")

    @classmethod
    def identity(cls, g: int, h: int) -> "JacobiGroupElement":
        return cls(SymplecticInt.identity(g), HeisenbergInt.identity(g, h))

    @property
    def g(self) -> int:
        return self.m.g

    @property
    def h(self) -> int:
        return self.heis.h

    def inverse(self) -> "JacobiGroupElement":
        minv = self.m.inverse()
        lam_t, mu_t = _pair_times_m(self.heis.lam, self.heis.mu, minv)
        kap = -self.heis.kappa + lam_t @ mu_t.T - mu_t @ lam_t.T
        return JacobiGroupElement(minv, HeisenbergInt(-lam_t, -mu_t, kap))

    def __eq__(self, other) -> bool:
        if not isinstance(other, JacobiGroupElement):
            return NotImplemented
        return self.m == other.m and self.heis == other.heis


def _pair_times_m(lam: np.ndarray, mu: np.ndarray, m: SymplecticInt):
    """Right action (lambda, mu) M of a symplectic matrix on a Heisenberg pair."""
    return lam @ m.A + mu @ m.C, lam @ m.B + mu @ m.D


def jacobi_mul(x: JacobiGroupElement, y: JacobiGroupElement) -> JacobiGroupElement:
    """Semidirect-product law with (lam~, mu~) = (lam, mu) M'."""
    if x.g != y.g or x.h != y.h:
        raise ValueError("shape mismatch")
    lam_t, mu_t = _pair_times_m(x.heis.lam, x.heis.mu, y.m)
    heis = HeisenbergInt(
        lam_t + y.heis.lam,
        mu_t + y.heis.mu,
        x.heis.kappa + y.heis.kappa + lam_t @ y.heis.mu.T - mu_t @ y.heis.lam.T,
    )
    return JacobiGroupElement(x.m * y.m, heis)


# ---------------------------------------------------------------------------
# actions
# ---------------------------------------------------------------------------

def _blocks_float(m):
    if isinstance(m, SymplecticInt):
        return (to_float(m.A), to_float(m.B), to_float(m.C), to_float(m.D))
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    if m.ndim != 2 or m.shape[1] != n or n % 2 != 0:
        raise ValueError("not 2gx2g")
    g = n // 2
    return m[:g, :g], m[:g, g:], m[g:, :g], m[g:, g:]


def _cocycle(c, d, omega_c) -> np.ndarray:
    """C Omega + D, guarded against near-singularity."""
    k = c @ omega_c + d
    if np.linalg.cond(k) > COND_LIMIT:
        raise IllConditionedActionError("ill-conditioned action")
    return k


def act_siegel(m, p: SiegelPoint) -> SiegelPoint:
    """Moebius action Omega -> (A Omega + B)(C Omega + D)^{-1}.

    The result is re-symmetrized; a drift beyond EPS_SYM raises.
    """
    a, b, c, d = _blocks_float(m)
    omega = p.omega
    k = _cocycle(c, d, omega)
    num = a @ omega + b
    res = np.linalg.solve(k.T, num.T).T
    drift = np.max(np.abs(res - res.T))
    if drift > EPS_SYM * max(1.0, np.max(np.abs(res))):
        raise IllConditionedActionError(
            "action result lost symmetry (drift %.3g)" % drift)
    res = 0.5 * (res + res.T)
    return SiegelPoint(res.real, res.imag)


def act_jacobi(x: JacobiGroupElement, p: JacobiPoint) -> JacobiPoint:
    """Jacobi action (Omega, Z) -> (M.Omega, (Z + lam Omega + mu)(C Omega + D)^{-1})."""
    if x.g != p.g or x.h != p.h:
        raise ValueError("shape mismatch between element and point")
    new_omega = act_siegel(x.m, p.omega)
    c, d = to_float(x.m.C), to_float(x.m.D)
    k = _cocycle(c, d, p.omega.omega)
    w = p.Z + to_float(x.heis.lam) @ p.omega.omega + to_float(x.heis.mu)
    z_new = np.linalg.solve(k.T, w.T).T
    return JacobiPoint.from_z(new_omega, z_new)


def det_im_ratio(m, p: SiegelPoint) -> float:
    """|det(C Omega + D)|^{-2} = det Im(M.Omega) / det Im(Omega)."""
    _, _, c, d = _blocks_float(m)
    k = c @ p.omega + d
    return float(1.0 / abs(np.linalg.det(k)) ** 2)
