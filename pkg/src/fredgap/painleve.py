"""Sigma-form Painleve residuals, asymptotics, and integrators.

Residual evaluators are exact polynomials in (s, sigma, sigma', sigma'',
nu); they return the left-minus-right side of the corresponding equation,
optionally normalized by the largest constituent term.  The Painleve II /
P34 pipeline for the Airy kernel and a trajectory integrator for the
sigma-PVI equation live here as well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import (
    BlowUp,
    DomainError,
    InvariantViolation,
    NoConvergence,
    ResidualDrift,
)
from .fredholm import logdet_slope_derivatives
from .kernels import HypParams, KernelSpec
from .ode import rk_integrate
from .specfun import airy

_TINY = 1e-300


@dataclass(frozen=True)
class NuQuad:
    """Exponent quadruple of a sigma-form equation.

    The values may be complex (conjugate parameter pairs give purely
    imaginary nu3, nu4); every residual combines them only through the real
    quantities nu_i^2, nu3 nu4 and nu1 nu2 nu3 nu4.
    """

    nu1: complex
    nu2: complex
    nu3: complex
    nu4: complex

    @classmethod
    def for_hyp(cls, params: HypParams) -> "NuQuad":
        return cls(*params.nu)

    @classmethod
    def for_jacobi(cls, n: int, alpha: float, beta: float) -> "NuQuad":
        n1 = n + (alpha + beta) / 2.0
        return cls(n1, n1, (alpha + beta) / 2.0, (alpha - beta) / 2.0)

    @classmethod
    def for_whittaker(cls, z: complex, zp: complex) -> "NuQuad":
        return cls(0.0, 0.0, -complex(z), -complex(zp))

    def as_tuple(self) -> tuple[complex, complex, complex, complex]:
        return (complex(self.nu1), complex(self.nu2), complex(self.nu3), complex(self.nu4))


@dataclass(frozen=True)
class SigmaSample:
    """sigma and its first two derivatives at one abscissa."""

    s: float
    sigma: float
    dsigma: float
    d2sigma: float


def _real(v: complex, what: str) -> float:
    if abs(v.imag) > 1e-9 * (1.0 + abs(v.real)):
        raise InvariantViolation(f"{what} should be real, got {v}")
    return v.real


def _pvi_terms(sample: SigmaSample, nu: NuQuad) -> tuple[float, float, float]:
    s, sig, d1, d2 = sample.s, sample.sigma, sample.dsigma, sample.d2sigma
    n1, n2, n3, n4 = nu.as_tuple()
    m = _real(n1 * n2 * n3 * n4, "nu1 nu2 nu3 nu4")
    t1 = -d1 * ((s * s - 0.25) * d2) ** 2
    t2 = (2.0 * (s * d1 - sig) * d1 - m) ** 2
    t3 = _real(
        (d1 + n1 * n1) * (d1 + n2 * n2) * (d1 + n3 * n3) * (d1 + n4 * n4),
        "product of (sigma' + nu_i^2)",
    )
    return t1, t2, t3


def sigma_pvi_residual(sample: SigmaSample, nu: NuQuad) -> float:
    """Left minus right side of the sigma-PVI equation."""
    t1, t2, t3 = _pvi_terms(sample, nu)
    return t1 - t2 + t3


def sigma_pvi_residual_normalized(sample: SigmaSample, nu: NuQuad) -> tuple[float, float]:
    """(raw, normalized) residual; normalization by the largest term magnitude."""
    t1, t2, t3 = _pvi_terms(sample, nu)
    raw = t1 - t2 + t3
    return raw, raw / max(abs(t1), abs(t2), abs(t3), _TINY)


def _pv_terms(sample: SigmaSample, nu: NuQuad) -> tuple[float, float, float]:
    s, sig, d1, d2 = sample.s, sample.sigma, sample.dsigma, sample.d2sigma
    n1, n2, n3, n4 = nu.as_tuple()
    tot = _real(n1 + n2 + n3 + n4, "sum of nu")
    t1 = (s * d2) ** 2
    t2 = (2.0 * d1 * d1 - s * d1 + sig + tot * d1) ** 2
    t3 = 4.0 * _real(
        (d1 + n1) * (d1 + n2) * (d1 + n3) * (d1 + n4), "product of (sigma' + nu_i)"
    )
    return t1, t2, t3


def sigma_pv_residual(sample: SigmaSample, nu: NuQuad) -> float:
    """Left minus right side of the sigma-PV equation (s > 0 family)."""
    t1, t2, t3 = _pv_terms(sample, nu)
    return t1 - t2 + t3


def sigma_pv_residual_normalized(sample: SigmaSample, nu: NuQuad) -> tuple[float, float]:
    t1, t2, t3 = _pv_terms(sample, nu)
    raw = t1 - t2 + t3
    return raw, raw / max(abs(t1), abs(t2), abs(t3), _TINY)


def _pv_confluent_terms(sample: SigmaSample, r: complex) -> tuple[float, float, float]:
    t, sig, d1, d2 = sample.s, sample.sigma, sample.dsigma, sample.d2sigma
    r = complex(r)
    t1 = -((t * d2) ** 2)
    t2 = _real(
        (2.0 * (t * d1 - sig) + d1 * d1 + 1j * (r.conjugate() - r) * d1) ** 2,
        "squared term of the confluent sigma equation",
    )
    t3 = _real(
        d1 * d1 * (d1 - 2j * r) * (d1 + 2j * r.conjugate()),
        "quartic term of the confluent sigma equation",
    )
    return t1, t2, t3


def sigma_pv_confluent_residual(sample: SigmaSample, r: complex) -> float:
    """Left minus right side of the confluent sigma equation in the variable t.

    At r = 0 this is the classical sine-kernel equation
    -(t s'')^2 = 4 (t s' - s)(t s' - s + (s')^2).
    """
    t1, t2, t3 = _pv_confluent_terms(sample, r)
    return t1 - t2 + t3


def sigma_pv_confluent_residual_normalized(sample: SigmaSample, r: complex) -> tuple[float, float]:
    t1, t2, t3 = _pv_confluent_terms(sample, r)
    raw = t1 - t2 + t3
    return raw, raw / max(abs(t1), abs(t2), abs(t3), _TINY)


# ---------------------------------------------------------------------------
# sigma samples out of the Fredholm pipeline
# ---------------------------------------------------------------------------

def pvi_sigma_sample(
    spec: KernelSpec,
    s: float,
    nu: NuQuad,
    upper: float = math.inf,
    quad_order: int = 128,
    h: float = 1e-3,
    grade: dict[int, tuple[float, float]] | None = None,
) -> SigmaSample:
    """sigma(s) = (s^2 - 1/4) d/ds log det(1 - K|_(s,upper)) - nu1^2 s + nu3 nu4 / 2."""
    g1, g2, g3 = logdet_slope_derivatives(
        spec, s, h=h, other=upper, moving="left", quad_order=quad_order, grade=grade
    )
    n1sq = _real(complex(nu.nu1) ** 2, "nu1^2")
    c34 = _real(complex(nu.nu3) * complex(nu.nu4), "nu3 nu4") / 2.0
    a = s * s - 0.25
    return SigmaSample(
        s,
        a * g1 - n1sq * s + c34,
        2.0 * s * g1 + a * g2 - n1sq,
        2.0 * g1 + 4.0 * s * g2 + a * g3,
    )


def pv_sigma_sample(
    spec: KernelSpec,
    s: float,
    quad_order: int = 128,
    h: float = 1e-3,
) -> SigmaSample:
    """sigma(s) = s d/ds log det(1 - K|_(s, inf)) for the Whittaker family."""
    g1, g2, g3 = logdet_slope_derivatives(spec, s, h=h, quad_order=quad_order)
    return SigmaSample(s, s * g1, g1 + s * g2, 2.0 * g2 + s * g3)


def t_sigma_sample(
    spec: KernelSpec,
    t: float,
    lower: float = 0.0,
    quad_order: int = 64,
    h: float = 1e-3,
) -> SigmaSample:
    """sigma(t) = t d/dt log det(1 - K|_(lower, t)) for growing right endpoints."""
    g1, g2, g3 = logdet_slope_derivatives(
        spec, t, h=h, other=lower, moving="right", quad_order=quad_order
    )
    return SigmaSample(t, t * g1, g1 + t * g2, 2.0 * g2 + t * g3)


# ---------------------------------------------------------------------------
# large-s asymptotics of the PVI sigma function
# ---------------------------------------------------------------------------

def sigma_tail_coefficient(params: HypParams) -> float:
    """Coefficient of the s^{-2 nu1} correction in the large-s expansion of sigma.

    Equals sin(pi z) sin(pi z')/pi^2 times the Gamma-bracket prefactor of the
    decaying row function (the weight alone gives only the first factor; the
    second is the constant in its const/s tail, which survives into the
    diagonal kernel asymptotics).
    """
    from .specfun import gamma_ratio_scaled, logsinpi

    z, zp, w, wp = params.z, params.zp, params.w, params.wp
    lc = logsinpi(z) + logsinpi(zp) - 2.0 * math.log(math.pi)
    c = _real(np.exp(complex(lc)), "sin-product coefficient")
    sf = params.s_frak
    c1 = gamma_ratio_scaled(
        (z + w + 1.0, z + wp + 1.0, zp + w + 1.0, zp + wp + 1.0), (sf + 1.0, sf + 2.0)
    ).value()
    return c * _real(c1, "row-function tail constant")


def pvi_sigma_asymptote(s: float, params: HypParams) -> SigmaSample:
    """Two-term-plus-correction expansion of sigma(s) for large s.

    sigma = -nu1^2 s + nu3 nu4/2 + C s^{-2 nu1} + o(s^{-2 nu1}) with C the
    full tail coefficient from sigma_tail_coefficient; derivatives follow
    term by term.
    """
    n1, _, n3, n4 = params.nu
    n1 = _real(n1, "nu1")
    c34 = _real(n3 * n4, "nu3 nu4") / 2.0
    c = sigma_tail_coefficient(params)
    p = s ** (-2.0 * n1)
    sig = -n1 * n1 * s + c34 + c * p
    d1 = -n1 * n1 - 2.0 * n1 * c * p / s
    d2 = 2.0 * n1 * (2.0 * n1 + 1.0) * c * p / (s * s)
    return SigmaSample(s, sig, d1, d2)


# ---------------------------------------------------------------------------
# Painleve II (Hastings-McLeod) and P34
# ---------------------------------------------------------------------------

def integrate_pii_hastings_mcleod(
    s_start: float = 8.0,
    s_end: float = -8.0,
    steps: int = 161,
    rtol: float = 1e-10,
) -> np.ndarray:
    """Table (s, u, u') of the Hastings-McLeod PII solution u'' = 2u^3 + s u.

    Integrated backward from u(s_start) = -Ai(s_start), where the branch is
    stable; requires |Ai(s_start)| < 1e-6, i.e. s_start >= about 6.
    """
    ai0, aip0 = airy(s_start)
    if abs(ai0) >= 1e-6:
        raise DomainError(f"s_start = {s_start} too small: |Ai| = {abs(ai0):.2e} >= 1e-6")
    if s_end >= s_start:
        raise DomainError("s_end must lie below s_start (backward integration)")

    def f(s, y):
        return np.array([y[1], 2.0 * y[0] ** 3 + s * y[0]])

    grid = np.linspace(s_start, s_end, steps)
    out = rk_integrate(
        f,
        s_start,
        np.array([-ai0, -aip0]),
        s_end,
        rtol=rtol,
        atol=1e-13,
        targets=grid,
        blowup=1e6,
    )
    if len(out) != steps:
        raise BlowUp("integration did not reach all requested grid points")
    return np.array([[t, y[0], y[1]] for t, y in out])


def p34_from_pii(u: float, up: float, s: float) -> tuple[float, float]:
    """Map a PII state to the P34 variable: r = -u^2, r' = -2 u u'."""
    return -u * u, -2.0 * u * up


def p34_residual(r: float, dr: float, ddr: float, s: float) -> float:
    """Residual of r'' = (r')^2/(2r) - 4 r^2 + 2 s r (meaningful for |r| > 0)."""
    return ddr - (dr * dr / (2.0 * r) - 4.0 * r * r + 2.0 * s * r)


# ---------------------------------------------------------------------------
# sigma-PVI trajectory integration
# ---------------------------------------------------------------------------

def _pvi_third_derivative(s: float, sig: float, d1: float, d2: float, nu: NuQuad) -> float:
    # differentiate the sigma-PVI equation once; the result is linear in
    # sigma''' with the common factor sigma'' cancelled, hence regular on
    # the constant solution
    n = [complex(v) ** 2 for v in nu.as_tuple()]
    m = _real(
        complex(nu.nu1) * complex(nu.nu2) * complex(nu.nu3) * complex(nu.nu4),
        "nu1 nu2 nu3 nu4",
    )
    a = s * s - 0.25
    u = a * d2
    v = 2.0 * (s * d1 - sig) * d1 - m
    e = [d1 + _real(nk, "nu^2") for nk in n]
    sum_prod = 0.0
    for i in range(4):
        p = 1.0
        for j in range(4):
            if j != i:
                p *= e[j]
        sum_prod += p
    num = -u * u - 4.0 * s * d1 * u - 4.0 * v * (2.0 * s * d1 - sig) + sum_prod
    den = 2.0 * d1 * a * a
    if abs(den) < 1e-14 * (1.0 + abs(num)):
        raise ResidualDrift("sigma' ~ 0: the differentiated sigma-PVI form degenerates")
    return num / den


def pvi_integrate(
    init: SigmaSample,
    nu: NuQuad,
    s_grid: list[float],
    rtol: float = 1e-10,
    residual_tol: float = 1e-8,
) -> list[SigmaSample]:
    """Integrate sigma-PVI as an explicit third-order ODE along s_grid.

    Starts from `init` (typically pvi_sigma_asymptote at large s).  At every
    accepted step the algebraic residual of the undifferentiated equation is
    required to stay below residual_tol relative to its largest term, else
    the step is rejected; persistent rejection raises ResidualDrift.
    """
    if not s_grid:
        return []

    def f(s, y):
        return np.array([y[1], y[2], _pvi_third_derivative(s, y[0], y[1], y[2], nu)])

    # the differentiated flow conserves the undifferentiated residual, so
    # the guard is on drift from the initial value (zero for exact data,
    # the asymptote's own defect otherwise)
    e0 = sigma_pvi_residual(init, nu)

    def monitor(s, y):
        sample = SigmaSample(s, y[0], y[1], y[2])
        t1, t2, t3 = _pvi_terms(sample, nu)
        # the quartic scale of the equation keeps the criterion meaningful
        # when all terms vanish together (constant solution)
        floor = 1.0
        for v in nu.as_tuple():
            floor *= abs(y[1]) + abs((v * v).real)
        drift = abs((t1 - t2 + t3) - e0)
        return drift <= residual_tol * max(abs(t1), abs(t2), abs(t3), floor)

    y0 = np.array([init.sigma, init.dsigma, init.d2sigma])
    try:
        out = rk_integrate(
            f, init.s, y0, s_grid[-1], rtol=rtol, atol=1e-13, targets=s_grid, monitor=monitor
        )
    except NoConvergence as exc:
        raise ResidualDrift(f"trajectory left the sigma-PVI manifold: {exc}") from exc
    return [SigmaSample(t, y[0], y[1], y[2]) for t, y in out]
