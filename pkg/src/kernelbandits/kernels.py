"""Isotropic kernel families, their Gram matrices, and smoothness metadata.

Six families are supported: Matern, square-exponential, rational-quadratic,
gamma-exponential, piecewise-polynomial (Wendland) and the Dirichlet kernel.
Every kernel is normalized so k(0) = 1, and each spec knows its spectral
decay class and the Holder order of the space its RKHS embeds into.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.spatial.distance import pdist, squareform
from scipy.special import gammaln, kve

MATERN = "matern"
SQUAREEXP = "squareexp"
RATIONALQUAD = "rationalquad"
GAMMAEXP = "gammaexp"
PIECEWISEPOLY = "piecewisepoly"
DIRICHLET = "dirichlet"

FAMILIES = (MATERN, SQUAREEXP, RATIONALQUAD, GAMMAEXP, PIECEWISEPOLY, DIRICHLET)

_FAMILY_ALIASES = {
    "matern": MATERN,
    "se": SQUAREEXP,
    "squareexp": SQUAREEXP,
    "square-exponential": SQUAREEXP,
    "rq": RATIONALQUAD,
    "rationalquad": RATIONALQUAD,
    "rational-quadratic": RATIONALQUAD,
    "gammaexp": GAMMAEXP,
    "gamma-exponential": GAMMAEXP,
    "pp": PIECEWISEPOLY,
    "piecewisepoly": PIECEWISEPOLY,
    "piecewise-polynomial": PIECEWISEPOLY,
    "dirichlet": DIRICHLET,
}

# Supported piecewise-polynomial smoothness orders (coefficients verified
# against the integral recursion in the test suite).
PP_SUPPORTED_ORDERS = (0, 1, 2, 3)


@dataclass(frozen=True)
class KernelSpec:
    """Immutable description of one isotropic kernel.

    Parameters
    ----------
    family : str
        One of ``FAMILIES`` (aliases like ``"se"`` are accepted).
    lengthscale : float
        Positive lengthscale ``l``.
    dim : int
        Ambient dimension ``d`` of the domain ``[0, 1]^d``.
    nu : float, optional
        Matern smoothness, required iff family is Matern.
    a : float, optional
        Rational-quadratic shape, required iff family is rational-quadratic.
    gamma : float, optional
        Gamma-exponential exponent in (0, 2], required iff gamma-exponential.
    q_pp : int, optional
        Piecewise-polynomial smoothness order in {0, 1, 2, 3}.
    m_dir : int, optional
        Dirichlet harmonic order (number of positive-frequency lines).
    """

    family: str
    lengthscale: float = 1.0
    dim: int = 1
    nu: float | None = None
    a: float | None = None
    gamma: float | None = None
    q_pp: int | None = None
    m_dir: int | None = None

    def __post_init__(self):
        fam = _FAMILY_ALIASES.get(str(self.family).lower())
        if fam is None:
            raise ValueError(f"unknown kernel family {self.family!r}")
        object.__setattr__(self, "family", fam)
        if not (self.lengthscale > 0 and math.isfinite(self.lengthscale)):
            raise ValueError("lengthscale must be positive and finite")
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if fam == MATERN:
            if self.nu is None or not self.nu > 0:
                raise ValueError("Matern kernel requires nu > 0")
        elif fam == RATIONALQUAD:
            if self.a is None or not self.a > 0:
                raise ValueError("rational-quadratic kernel requires a > 0")
        elif fam == GAMMAEXP:
            if self.gamma is None or not (0 < self.gamma <= 2):
                raise ValueError("gamma-exponential kernel requires gamma in (0, 2]")
        elif fam == PIECEWISEPOLY:
            if self.q_pp not in PP_SUPPORTED_ORDERS:
                raise ValueError(
                    f"unsupported piecewise-polynomial order q={self.q_pp}; "
                    f"supported orders are {PP_SUPPORTED_ORDERS}"
                )
            if self.q_pp == 0 and self.dim <= 2:
                # Constructible, but the two-sided spectral decay bound is
                # only established for q >= 1 in d <= 2.
                warnings.warn(
                    "piecewise-polynomial kernel with q=0 in d<=2: the lower "
                    "spectral decay bound is not established for this order",
                    stacklevel=2,
                )
        elif fam == DIRICHLET:
            if self.m_dir is None or self.m_dir < 0:
                raise ValueError("Dirichlet kernel requires m >= 0")
            if self.dim != 1:
                raise ValueError(
                    "Dirichlet kernel is only positive definite as a "
                    "stationary kernel in d=1; refusing dim > 1"
                )

    def label(self) -> str:
        """Short human-readable tag, e.g. ``matern(nu=1.5,l=1)``."""
        parts = [f"l={self.lengthscale:g}"]
        if self.family == MATERN:
            parts.insert(0, f"nu={self.nu:g}")
        elif self.family == RATIONALQUAD:
            parts.insert(0, f"a={self.a:g}")
        elif self.family == GAMMAEXP:
            parts.insert(0, f"gamma={self.gamma:g}")
        elif self.family == PIECEWISEPOLY:
            parts.insert(0, f"q={self.q_pp}")
        elif self.family == DIRICHLET:
            parts.insert(0, f"m={self.m_dir}")
        return f"{self.family}({','.join(parts)},d={self.dim})"


@dataclass(frozen=True)
class SpectralDecayClass:
    """Tail behaviour of the kernel's Fourier transform.

    ``kind`` is one of ``"exponential"``, ``"polynomial"`` or
    ``"compact_support"``.  For the polynomial class ``tau`` is the decay
    rate and ``beta = tau - dim``.
    """

    kind: str
    tau: float | None = None
    beta: float | None = None


@dataclass(frozen=True)
class SmoothnessParams:
    """Holder smoothness inputs consumed by the partition-based algorithms.

    ``alpha`` is the Holder order of the embedding, ``q = ceil(alpha) - 1``
    the polynomial degree, ``s = alpha - q`` the fractional part, and
    ``alpha1 = max(s, min(1, q))`` the first-order variation exponent.
    ``L`` bounds the Holder norm of the objective.
    """

    alpha: float
    q: int
    s: float
    alpha1: float
    L: float
    capped: bool = False


def _matern_half_integer(p: int, z):
    """Closed-form Matern with nu = p + 1/2 evaluated at scaled radius z."""
    acc = np.zeros_like(z)
    lead = math.factorial(p) / math.factorial(2 * p)
    for i in range(p + 1):
        coef = math.factorial(p + i) / (
            math.factorial(i) * math.factorial(p - i)
        )
        acc = acc + coef * (2.0 * z) ** (p - i)
    return lead * acc * np.exp(-z)


def matern_bessel(nu: float, z):
    """Matern profile (2^(1-nu)/Gamma(nu)) z^nu K_nu(z) via scipy's Bessel K.

    Valid for any nu > 0; used as the generic path and, in tests, to check
    the half-integer closed forms.  ``kve`` (exponentially scaled K) keeps
    the product finite for large z.
    """
    z = np.asarray(z, dtype=float)
    out = np.ones_like(z)
    pos = z > 1e-100
    zp = z[pos]
    logk = (
        (1.0 - nu) * math.log(2.0)
        - gammaln(nu)
        + nu * np.log(zp)
        + np.log(kve(nu, zp))
        - zp
    )
    out[pos] = np.exp(logk)
    return out


def pp_polynomial(q_pp: int, d: int) -> np.ndarray:
    """Monomial coefficients (ascending) of the compactly supported kernel.

    Returns the coefficients ``c_j`` of the minimal-degree piecewise
    polynomial of smoothness order ``q_pp`` in dimension ``d``; the degree
    is ``floor(d/2) + 3*q_pp + 1`` and the value at 0 is exactly 1.
    """
    if q_pp not in PP_SUPPORTED_ORDERS:
        raise ValueError(
            f"unsupported piecewise-polynomial order q={q_pp}; "
            f"supported orders are {PP_SUPPORTED_ORDERS}"
        )
    if q_pp == 0 and d <= 2:
        warnings.warn(
            "piecewise-polynomial q=0 with d<=2: lower spectral decay bound "
            "not established",
            stacklevel=2,
        )
    ell = d // 2 + q_pp + 1
    # (1 - r)^(ell + q) as exact ascending coefficients.
    m = ell + q_pp
    base = [Fraction((-1) ** j) * math.comb(m, j) for j in range(m + 1)]
    if q_pp == 0:
        bracket = [Fraction(1)]
    elif q_pp == 1:
        bracket = [Fraction(1), Fraction(ell + 1)]
    elif q_pp == 2:
        bracket = [Fraction(3, 3), Fraction(3 * ell + 6, 3),
                   Fraction(ell * ell + 4 * ell + 3, 3)]
    else:  # q_pp == 3
        bracket = [
            Fraction(15, 15),
            Fraction(15 * ell + 45, 15),
            Fraction(6 * ell * ell + 36 * ell + 45, 15),
            Fraction(ell ** 3 + 9 * ell * ell + 23 * ell + 15, 15),
        ]
    coeffs = [Fraction(0)] * (len(base) + len(bracket) - 1)
    for i, b in enumerate(base):
        for j, c in enumerate(bracket):
            coeffs[i + j] += b * c
    assert coeffs[0] == 1  # k(0) = 1 by construction
    return np.array([float(c) for c in coeffs])


def _eval_radial(spec: KernelSpec, r: np.ndarray) -> np.ndarray:
    fam = spec.family
    u = r / spec.lengthscale
    if fam == SQUAREEXP:
        return np.exp(-0.5 * u * u)
    if fam == RATIONALQUAD:
        return (1.0 + u * u / (2.0 * spec.a)) ** (-spec.a)
    if fam == GAMMAEXP:
        return np.exp(-(u ** spec.gamma))
    if fam == MATERN:
        z = math.sqrt(2.0 * spec.nu) * u
        twice_nu = 2.0 * spec.nu
        if abs(twice_nu - round(twice_nu)) < 1e-12 and round(twice_nu) % 2 == 1:
            return _matern_half_integer(int(round(spec.nu - 0.5)), z)
        return matern_bessel(spec.nu, z)
    if fam == PIECEWISEPOLY:
        coeffs = pp_coefficients(spec)
        inside = u < 1.0
        out = np.zeros_like(u)
        out[inside] = np.polynomial.polynomial.polyval(u[inside], coeffs)
        return out
    if fam == DIRICHLET:
        m = spec.m_dir
        acc = np.ones_like(u)
        for j in range(1, m + 1):
            acc = acc + 2.0 * np.cos(j * u)
        return acc / (2 * m + 1)
    raise AssertionError(f"unreachable family {fam}")


_PP_CACHE: dict[tuple[int, int], np.ndarray] = {}


def pp_coefficients(spec: KernelSpec) -> np.ndarray:
    """Cached monomial coefficients for a piecewise-polynomial spec."""
    key = (spec.q_pp, spec.dim)
    if key not in _PP_CACHE:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            _PP_CACHE[key] = pp_polynomial(spec.q_pp, spec.dim)
    return _PP_CACHE[key]


def eval(spec: KernelSpec, r) -> np.ndarray | float:
    """Evaluate k(r) at scalar or array radii r >= 0."""
    arr = np.asarray(r, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("radius must be finite")
    if np.any(arr < 0):
        raise ValueError("radius must be non-negative")
    out = _eval_radial(spec, np.atleast_1d(arr))
    return float(out[0]) if arr.ndim == 0 else out.reshape(arr.shape)


def eval_pair(spec: KernelSpec, x, y) -> float:
    """k(x, y) = k(||x - y||) for points in [0, 1]^d."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    if x.shape != y.shape or x.shape[-1] != spec.dim:
        raise ValueError(
            f"point dimension mismatch: {x.shape} vs {y.shape} for d={spec.dim}"
        )
    return float(eval(spec, float(np.linalg.norm(x - y))))


def gram(spec: KernelSpec, points) -> np.ndarray:
    """Gram matrix G[i, j] = k(points[i], points[j]), exactly symmetric.

    Distances are computed once per unordered pair and mirrored, so
    G == G.T holds bit-for-bit.  An empty point list gives a 0 x 0 matrix.
    """
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        return np.zeros((0, 0))
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.shape[1] != spec.dim:
        raise ValueError(f"points have dim {pts.shape[1]}, spec has {spec.dim}")
    n = pts.shape[0]
    if n == 1:
        return np.array([[float(eval(spec, 0.0))]])
    dvec = pdist(pts)
    kvec = np.atleast_1d(eval(spec, dvec))
    G = squareform(kvec)
    np.fill_diagonal(G, float(eval(spec, 0.0)))
    return G


def decay_class(spec: KernelSpec) -> SpectralDecayClass:
    """Spectral decay class and polynomial rate tau of the spec's transform."""
    fam = spec.family
    if fam in (SQUAREEXP, RATIONALQUAD):
        return SpectralDecayClass(kind="exponential")
    if fam == DIRICHLET:
        return SpectralDecayClass(kind="compact_support")
    if fam == MATERN:
        tau = 2.0 * spec.nu + spec.dim
    elif fam == GAMMAEXP:
        tau = spec.gamma + spec.dim
    else:  # piecewise polynomial
        tau = 2.0 * spec.q_pp + 1.0 + spec.dim
    return SpectralDecayClass(kind="polynomial", tau=tau, beta=tau - spec.dim)


def holder_params(spec: KernelSpec, L: float, alpha_cap: float = 2.0) -> SmoothnessParams:
    """Holder smoothness parameters of the RKHS, as algorithm inputs.

    Families whose RKHS embeds in every finite-order Holder space (SE, RQ,
    Dirichlet) are assigned the finite ``alpha_cap`` so that downstream
    algorithms have a concrete polynomial degree to work with.
    """
    if not L > 0:
        raise ValueError("L must be positive")
    if not alpha_cap > 0:
        raise ValueError("alpha_cap must be positive")
    fam = spec.family
    capped = False
    if fam == MATERN:
        alpha = float(spec.nu)
    elif fam == GAMMAEXP:
        alpha = spec.gamma / 2.0
    elif fam == PIECEWISEPOLY:
        alpha = spec.q_pp + 0.5
    else:
        alpha = float(alpha_cap)
        capped = True
    q = max(0, math.ceil(alpha - 1e-12) - 1)
    s = alpha - q
    alpha1 = max(s, min(1.0, float(q)))
    return SmoothnessParams(alpha=alpha, q=q, s=s, alpha1=alpha1, L=L, capped=capped)
