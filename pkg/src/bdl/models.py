"""Transfer-eigenvalue models.

The eigenvalue of the commuting family factorizes as

    Lambda(z | vbar) = g(z, vbar) * Y(z | vbar),

where Y is symmetric in the parameter set vbar and affine in each element, so

    Y(z | vbar) = sum_p alpha_p(z) * sigma_p(vbar)

with free coefficient functions alpha_p.  A ``YModel`` stores the alpha_p as
polynomial coefficient lists (exactly differentiable, exact asymptotics).
Two physical families are provided: the periodic inhomogeneous chain and the
chain with a non-diagonal boundary twist breaking the U(1) symmetry, plus the
degenerate model Y = 1/g whose linear system collapses to rank zero.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import isclose

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import PoleError, TwistError
from .rational import _vals, esp_all, g_prod, require_distinct

# ---------------------------------------------------------------------------
# generic Y-model


@dataclass(frozen=True)
class YModel:
    """Y-function given by coefficient polynomials alpha_0 .. alpha_{n_max}.

    ``alpha[p]`` holds ascending-order coefficients of alpha_p(z).  The model
    supports parameter sets of size up to n_max.
    """

    c: complex
    alpha: tuple[np.ndarray, ...]
    label: str = "generic"

    def __post_init__(self):
        if self.c == 0:
            raise ValueError("coupling constant c must be nonzero")
        object.__setattr__(self, "alpha", tuple(np.asarray(a, dtype=complex) for a in self.alpha))

    @property
    def n_max(self) -> int:
        return len(self.alpha) - 1

    def alpha_at(self, p: int, z: complex) -> complex:
        return complex(npoly.polyval(z, self.alpha[p]))


def y_eval(model: YModel, z: complex, values) -> complex:
    """Y(z | values) = sum_p alpha_p(z) sigma_p(values)."""
    arr = _vals(values)
    n = len(arr)
    if n > model.n_max:
        raise ValueError(f"parameter set of size {n} exceeds model n_max = {model.n_max}")
    sig = esp_all(arr)
    return complex(sum(model.alpha_at(p, z) * sig[p] for p in range(n + 1)))


def y_z_derivative(model: YModel, z: complex, values) -> complex:
    """Partial derivative of Y(z | values) in the spectral argument z."""
    arr = _vals(values)
    sig = esp_all(arr)
    out = 0.0 + 0.0j
    for p in range(len(arr) + 1):
        out += complex(npoly.polyval(z, npoly.polyder(model.alpha[p]))) * sig[p]
    return out


def y_v_derivative(model: YModel, z: complex, values, j: int) -> complex:
    """Partial derivative of Y(z | values) in the j-th set element (0-based).

    Uses the exact split sigma_p(v) = v_j sigma_{p-1}(v_j-complement) + ...,
    whose first term is the derivative.
    """
    arr = _vals(values)
    rest = np.delete(arr, j)
    sig = esp_all(rest)
    out = 0.0 + 0.0j
    for p in range(1, len(arr) + 1):
        out += model.alpha_at(p, z) * sig[p - 1]
    return out


def bethe_jacobian(model: YModel, values) -> np.ndarray:
    """Total Jacobian J[j, k] = d/dv_j of the root-system map v -> Y(v_k | v).

    The diagonal carries both the spectral-slot and the set-slot derivative.
    """
    arr = _vals(values)
    n = len(arr)
    jac = np.zeros((n, n), dtype=complex)
    for k in range(n):
        for j in range(n):
            jac[j, k] = y_v_derivative(model, arr[k], arr, j)
            if j == k:
                jac[j, k] += y_z_derivative(model, arr[k], arr)
    return jac


def lambda_eval(model: YModel, z: complex, values) -> complex:
    """Lambda(z | values) = g(z, values) * Y(z | values); poles are not lifted.

    A collision of z with a set element raises PoleError even where the
    on-shell combination would be finite; callers that need the cancelled
    form must evaluate Y and the non-colliding g-factors themselves.
    """
    return g_prod(model.c, z, values) * y_eval(model, z, values)


def bethe_residual(model: YModel, values) -> np.ndarray:
    """Vector of Y(v_j | values); zero entries characterize on-shell sets."""
    arr = _vals(values)
    return np.array([y_eval(model, v, arr) for v in arr], dtype=complex)


def random_y_model(rng: np.random.Generator, c: complex, n_max: int, degree: int = 3) -> YModel:
    """Random member of the Y-class with polynomial alpha_p of given degree."""
    alpha = []
    for _ in range(n_max + 1):
        re = rng.uniform(-1.0, 1.0, size=degree + 1)
        im = rng.uniform(-1.0, 1.0, size=degree + 1)
        coeffs = re + 1j * im
        # keep the leading coefficient away from zero so degrees are stable
        coeffs[-1] += 0.5 * (1 + 1j) * np.sign(coeffs[-1].real or 1.0)
        alpha.append(coeffs)
    return YModel(c=c, alpha=tuple(alpha), label="random")


def ytr_model(c: complex, n: int) -> YModel:
    """Degenerate model Y(z | v) = 1/g(z, v): alpha_p(z) = (-1)^p z^{n-p} / c^n.

    Its eigenvalue is identically 1 and its linear system has rank zero.
    """
    alpha = []
    for p in range(n + 1):
        coeffs = np.zeros(n - p + 1, dtype=complex)
        coeffs[n - p] = (-1) ** p / c ** n
        alpha.append(coeffs)
    return YModel(c=c, alpha=tuple(alpha), label="degenerate")


# ---------------------------------------------------------------------------
# periodic chain


def _half_integer(s: float) -> bool:
    return isclose(2 * s, round(2 * s)) and round(2 * s) >= 1


@dataclass(frozen=True)
class PeriodicChainSpec:
    """Inhomogeneous chain data: site count, coupling, shifts, site spins."""

    n_sites: int
    c: complex
    theta: tuple[complex, ...]
    spins: tuple[float, ...]

    def __init__(self, n_sites, c, theta, spins):
        object.__setattr__(self, "n_sites", int(n_sites))
        object.__setattr__(self, "c", complex(c))
        object.__setattr__(self, "theta", tuple(complex(t) for t in theta))
        object.__setattr__(self, "spins", tuple(float(s) for s in spins))
        if self.c == 0:
            raise ValueError("coupling constant c must be nonzero")
        if len(self.theta) != self.n_sites or len(self.spins) != self.n_sites:
            raise ValueError("theta and spins must both have one entry per site")
        for s in self.spins:
            if not _half_integer(s):
                raise ValueError(f"site spin {s} is not a positive half-integer")
        require_distinct(self.theta, "inhomogeneities")

    @property
    def magnon_capacity(self) -> int:
        """S = sum_i 2 s_i, the maximal number of creation operators."""
        return int(round(sum(2 * s for s in self.spins)))


def lambda1(spec: PeriodicChainSpec, z: complex) -> complex:
    """Vacuum eigenvalue of the diagonal monodromy entry A."""
    out = 1.0 + 0.0j
    for t, s in zip(spec.theta, spec.spins):
        out *= (z - t + spec.c * (s + 0.5))
    return out / spec.c ** spec.n_sites


def lambda2(spec: PeriodicChainSpec, z: complex) -> complex:
    """Vacuum eigenvalue of the diagonal monodromy entry D."""
    out = 1.0 + 0.0j
    for t, s in zip(spec.theta, spec.spins):
        out *= (z - t - spec.c * (s - 0.5))
    return out / spec.c ** spec.n_sites


def y_periodic(spec: PeriodicChainSpec, z: complex, values) -> complex:
    """Two-term Y of the periodic chain, evaluated in product form."""
    arr = _vals(values)
    c = spec.c
    p_minus = np.prod([(z - v - c) for v in arr]) if len(arr) else 1.0
    p_plus = np.prod([(z - v + c) for v in arr]) if len(arr) else 1.0
    scale = c ** len(arr)
    return complex(lambda1(spec, z) * p_minus / scale + lambda2(spec, z) * p_plus / scale)


def _lambda_poly(spec: PeriodicChainSpec, sign: int) -> np.ndarray:
    roots = [t - spec.c * (s + 0.5) if sign > 0 else t + spec.c * (s - 0.5)
             for t, s in zip(spec.theta, spec.spins)]
    return npoly.polyfromroots(roots) / spec.c ** spec.n_sites


def periodic_y_model(spec: PeriodicChainSpec, n: int) -> YModel:
    """Coefficient-list form of the periodic Y at parameter-set size n."""
    c = spec.c
    l1 = _lambda_poly(spec, +1)
    l2 = _lambda_poly(spec, -1)
    alpha = []
    for p in range(n + 1):
        shift_minus = npoly.polypow(np.array([-c, 1.0], dtype=complex), n - p)
        shift_plus = npoly.polypow(np.array([c, 1.0], dtype=complex), n - p)
        coeffs = (-1) ** p / c ** n * (npoly.polymul(l1, shift_minus) + npoly.polymul(l2, shift_plus))
        alpha.append(coeffs)
    return YModel(c=c, alpha=tuple(alpha), label="periodic")


# ---------------------------------------------------------------------------
# non-diagonal twist


@dataclass(frozen=True)
class TwistSpec:
    """Non-diagonal twist entries plus the free splitting parameter rho1.

    rho2 is derived from the bilinear constraint

        rho1 rho2 - rho2 kappa_tilde - rho1 kappa + kappa_plus kappa_minus = 0,

    and mu = 1 / (1 - rho1 rho2 / (kappa_plus kappa_minus)).  A purely
    diagonal twist (kappa_plus * kappa_minus = 0 with rho1 = 0) is accepted
    for eigenvalue work, but has no mu and no factor matrices.
    """

    kappa: complex
    kappa_tilde: complex
    kappa_plus: complex
    kappa_minus: complex
    rho1: complex

    def __init__(self, kappa, kappa_tilde, kappa_plus, kappa_minus, rho1):
        object.__setattr__(self, "kappa", complex(kappa))
        object.__setattr__(self, "kappa_tilde", complex(kappa_tilde))
        object.__setattr__(self, "kappa_plus", complex(kappa_plus))
        object.__setattr__(self, "kappa_minus", complex(kappa_minus))
        object.__setattr__(self, "rho1", complex(rho1))
        if abs(self.rho1 - self.kappa_tilde) < 1e-12:
            raise TwistError("rho1 = kappa_tilde leaves rho2 undetermined")

    @property
    def rho2(self) -> complex:
        return (self.rho1 * self.kappa - self.kappa_plus * self.kappa_minus) / (self.rho1 - self.kappa_tilde)

    @property
    def mu(self) -> complex:
        kk = self.kappa_plus * self.kappa_minus
        if kk == 0:
            raise TwistError("mu undefined for kappa_plus * kappa_minus = 0")
        denom = 1.0 - self.rho1 * self.rho2 / kk
        if abs(denom) < 1e-12:
            raise TwistError("mu diverges: rho1 rho2 approaches kappa_plus kappa_minus")
        return 1.0 / denom

    def constraint_residuals(self) -> tuple[float, float]:
        """Relative residuals of the two defining constraints."""
        r1 = self.rho1 * self.rho2 - self.rho2 * self.kappa_tilde - self.rho1 * self.kappa \
            + self.kappa_plus * self.kappa_minus
        scale1 = max(abs(self.rho1 * self.rho2), abs(self.kappa_plus * self.kappa_minus), 1e-30)
        try:
            mu = self.mu
            r2 = mu * (1.0 - self.rho1 * self.rho2 / (self.kappa_plus * self.kappa_minus)) - 1.0
            return abs(r1) / scale1, abs(r2)
        except TwistError:
            return abs(r1) / scale1, 0.0


def k_matrix(twist: TwistSpec) -> np.ndarray:
    """The constant 2x2 twist matrix."""
    return np.array([[twist.kappa_tilde, twist.kappa_plus],
                     [twist.kappa_minus, twist.kappa]], dtype=complex)


def twist_factors(twist: TwistSpec) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Factor matrices (A, B, D) with K = B D A; needs kappa_plus, kappa_minus != 0."""
    if twist.kappa_plus == 0 or twist.kappa_minus == 0:
        raise TwistError("factor matrices need nonzero off-diagonal twist entries")
    sq = np.sqrt(twist.mu)
    a = sq * np.array([[1.0, twist.rho2 / twist.kappa_minus],
                       [twist.rho1 / twist.kappa_plus, 1.0]], dtype=complex)
    b = sq * np.array([[1.0, twist.rho1 / twist.kappa_minus],
                       [twist.rho2 / twist.kappa_plus, 1.0]], dtype=complex)
    d = np.diag([twist.kappa_tilde - twist.rho1, twist.kappa - twist.rho2]).astype(complex)
    return a, b, d


def maba_f(spec: PeriodicChainSpec, z: complex) -> complex:
    """The set-independent third term of the twisted Y-function."""
    c = spec.c
    s_total = spec.magnon_capacity
    out = 1.0 + 0.0j
    for t, s in zip(spec.theta, spec.spins):
        for k in range(int(round(2 * s)) + 1):
            out *= (z - t + c * (s - k + 0.5))
    return out / c ** (s_total + spec.n_sites)


def y_maba(spec: PeriodicChainSpec, twist: TwistSpec, z: complex, values) -> complex:
    """Three-term Y of the twisted chain, evaluated in product form.

    The two set-dependent products carry the same per-factor 1/c normalization
    as the periodic model; that normalization is what makes the large-argument
    growth of the eigenvalue come out as (z/c)^N (kappa + kappa_tilde) and the
    whole family consistent with the vacuum eigenvalues.
    """
    arr = _vals(values)
    c = spec.c
    p_minus = np.prod([(z - u - c) for u in arr]) if len(arr) else 1.0
    p_plus = np.prod([(z - u + c) for u in arr]) if len(arr) else 1.0
    scale = c ** len(arr)
    return complex(
        (twist.kappa_tilde - twist.rho1) * lambda1(spec, z) * p_minus / scale
        + (twist.kappa - twist.rho2) * lambda2(spec, z) * p_plus / scale
        + (twist.rho1 + twist.rho2) * maba_f(spec, z)
    )


def _f_poly(spec: PeriodicChainSpec) -> np.ndarray:
    roots = []
    for t, s in zip(spec.theta, spec.spins):
        for k in range(int(round(2 * s)) + 1):
            roots.append(t - spec.c * (s - k + 0.5))
    return npoly.polyfromroots(roots) / spec.c ** (spec.magnon_capacity + spec.n_sites)


def maba_y_model(spec: PeriodicChainSpec, twist: TwistSpec) -> YModel:
    """Coefficient-list form of the twisted Y at its physical set size S."""
    c = spec.c
    s_total = spec.magnon_capacity
    l1 = _lambda_poly(spec, +1) * (twist.kappa_tilde - twist.rho1)
    l2 = _lambda_poly(spec, -1) * (twist.kappa - twist.rho2)
    alpha = []
    for p in range(s_total + 1):
        shift_minus = npoly.polypow(np.array([-c, 1.0], dtype=complex), s_total - p)
        shift_plus = npoly.polypow(np.array([c, 1.0], dtype=complex), s_total - p)
        coeffs = (-1) ** p / c ** s_total * (npoly.polymul(l1, shift_minus) + npoly.polymul(l2, shift_plus))
        if p == 0:
            coeffs = npoly.polyadd(coeffs, (twist.rho1 + twist.rho2) * _f_poly(spec))
        alpha.append(coeffs)
    return YModel(c=c, alpha=tuple(alpha), label="maba")
