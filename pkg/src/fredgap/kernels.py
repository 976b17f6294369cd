"""Pointwise evaluation of the integrable correlation kernels.

Six families: the two-parameter-pair hypergeometric kernel and its simple
L-partner, the Whittaker kernel, the confluent hypergeometric kernel, and
the classical sine, Airy and Jacobi kernels.

Every kernel is expressed in the common integrable form

    K(x, y) = (F1(x) G1(y) + F2(x) G2(y)) / (x - y),       F.G = 0 on x = y,

and each family supplies the node data (F_i, G_i and their derivatives) as
`Scaled` values, so that the Gamma/sine prefactors with large imaginary
parameters never materialize out-of-range doubles.  Diagonal values come
from the L'Hopital rule K(x,x) = F1'(x)G1(x) + F2'(x)G2(x).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence, Union

from .exceptions import DomainError, InvariantViolation, NearDiagonal
from .specfun import (
    Scaled,
    gamma_ratio_scaled,
    gauss_2f1,
    gauss_2f1_deriv,
    kummer_1f1,
    logsinpi,
    airy as airy_fn,
    s_add,
    s_from_clog,
    s_make,
    s_mul,
    s_neg,
    whittaker_w_scaled,
)

NEAR_DIAG_MIN = 1e-8       # below this, callers must use kernel_diag
NEAR_DIAG_TAYLOR = 1e-4    # Taylor/direct blend band
REALNESS_TOL = 1e-9
LOG_CASE_SEP = 1e-6        # minimum |z-z'|, |w-w'| (logarithmic cases excluded)

_LOG_PI = math.log(math.pi)


def _real_checked(v: complex, what: str) -> float:
    if abs(v.imag) > REALNESS_TOL * (1.0 + abs(v.real)):
        raise InvariantViolation(f"{what} should be real, got {v}")
    return v.real


def _conjugate_or_unit_real_pair(a: complex, b: complex, closed: bool = True) -> bool:
    if abs(a - b.conjugate()) < 1e-14 * (1.0 + abs(a)):
        # conjugate pair, nonreal and nonintegral
        if abs(a.imag) > 0.0:
            return True
        # degenerate to the real case below
    if abs(a.imag) > 1e-14 or abs(b.imag) > 1e-14:
        return False
    k = math.floor(min(a.real, b.real))
    lo, hi = float(k), float(k + 1)
    if closed:
        return lo <= a.real <= hi and lo <= b.real <= hi
    return lo < a.real < hi and lo < b.real < hi


# ---------------------------------------------------------------------------
# parameters of the hypergeometric kernel
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HypParams:
    """The four complex parameters (z, z', w, w') of the 2F1-type kernel.

    Admissibility (checked unless ``relax=True``): each of (z, z') and
    (w, w') is a complex-conjugate pair or a real pair lying in a closed
    unit interval [k, k+1]; z+z'+w+w' is real, > -1 and != 0; the pairs are
    separated by at least 1e-6 (the logarithmic degenerations are out of
    scope).  ``relax`` skips the pair conditions for scaling-limit regimes.
    """

    z: complex
    zp: complex
    w: complex
    wp: complex
    relax: bool = False

    def __post_init__(self):
        object.__setattr__(self, "z", complex(self.z))
        object.__setattr__(self, "zp", complex(self.zp))
        object.__setattr__(self, "w", complex(self.w))
        object.__setattr__(self, "wp", complex(self.wp))
        s = self.z + self.zp + self.w + self.wp
        if abs(s.imag) > 1e-10 * (1.0 + abs(s)):
            raise DomainError(f"z+z'+w+w' must be real, got {s}")
        if abs(s.real) < 1e-12:
            raise DomainError("the set z+z'+w+w' = 0 is excluded")
        if abs(self.z - self.zp) < LOG_CASE_SEP or abs(self.w - self.wp) < LOG_CASE_SEP:
            raise DomainError(
                "parameters within 1e-6 of the logarithmic case z=z' or w=w'; "
                "offset them explicitly"
            )
        if self.relax:
            return
        if s.real <= -1.0:
            raise DomainError(f"z+z'+w+w' must exceed -1, got {s.real}")
        if not _conjugate_or_unit_real_pair(self.z, self.zp):
            raise DomainError(f"(z, z') = ({self.z}, {self.zp}) is not admissible")
        if not _conjugate_or_unit_real_pair(self.w, self.wp):
            raise DomainError(f"(w, w') = ({self.w}, {self.wp}) is not admissible")

    @property
    def s_frak(self) -> float:
        return (self.z + self.zp + self.w + self.wp).real

    @property
    def theta_a(self) -> complex:
        return (self.z - self.zp) / 2.0

    @property
    def theta_b(self) -> complex:
        return (self.w - self.wp) / 2.0

    @property
    def nu(self) -> tuple[complex, complex, complex, complex]:
        n1 = complex(self.s_frak / 2.0)
        return (n1, n1, self.theta_a + self.theta_b, self.theta_a - self.theta_b)

    @property
    def is_strict(self) -> bool:
        return (
            self.s_frak > 0.0
            and abs(self.z + self.zp) < 1.0
            and abs(self.w + self.wp) < 1.0
        )

    def require_strict(self) -> None:
        if not self.is_strict:
            raise DomainError(
                "operation requires strict-mode parameters: "
                "z+z'+w+w' > 0, |z+z'| < 1, |w+w'| < 1"
            )


@dataclass(frozen=True)
class PhasePoint:
    """A point of the split phase space, tagged with its region.

    For the 2F1 kernel `out` is |x| > 1/2 and `in` is |x| < 1/2; for the
    Whittaker kernel `out` is the positive and `in` the negative half-line.
    """

    x: float
    region: str  # "out" | "in"


def _log_c_pair(a: complex, b: complex) -> float:
    """log of sin(pi a) sin(pi b) / pi^2, which is positive for admissible pairs."""
    l = logsinpi(a) + logsinpi(b) - 2.0 * _LOG_PI
    if l.real == -math.inf:
        return -math.inf
    phase = (l.imag + math.pi) % (2.0 * math.pi) - math.pi
    if abs(phase) > 1e-6:
        raise InvariantViolation(f"sin-product prefactor not positive real (phase {phase})")
    return l.real


# ---------------------------------------------------------------------------
# node data shared by every kernel family
# ---------------------------------------------------------------------------

class NodeVals(NamedTuple):
    f1: Scaled
    f2: Scaled
    g1: Scaled
    g2: Scaled
    df1: Scaled
    df2: Scaled
    dg1: Scaled
    dg2: Scaled


def _real_node(f1, f2, g1, g2, df1, df2, dg1, dg2) -> NodeVals:
    return NodeVals(*(s_make(v) for v in (f1, f2, g1, g2, df1, df2, dg1, dg2)))


class _KernelBase:
    """Shared pointwise machinery; subclasses provide `_node` and `check_point`."""

    def check_point(self, x: float) -> None:
        raise NotImplementedError

    def _node(self, x: float) -> NodeVals:
        raise NotImplementedError

    def region(self, x: float) -> str:
        return "all"

    def check_union(self, intervals: Sequence[tuple[float, float]]) -> None:
        pass

    decay_exponent: float | None = None


# ---------------------------------------------------------------------------
# sine and Airy kernels
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SineKernel(_KernelBase):
    """K(x,y) = sin(x-y) / (pi (x-y))."""

    def check_point(self, x: float) -> None:
        pass

    def _node(self, x: float) -> NodeVals:
        s, c = math.sin(x), math.cos(x)
        p = math.pi
        return _real_node(s, -c, c / p, s / p, c, s, -s / p, c / p)


@dataclass(frozen=True)
class AiryKernel(_KernelBase):
    """K(x,y) = (Ai(x) Ai'(y) - Ai'(x) Ai(y)) / (x - y)."""

    def check_point(self, x: float) -> None:
        pass

    def _node(self, x: float) -> NodeVals:
        ai, aip = airy_fn(x)
        return _real_node(ai, -aip, aip, ai, aip, -x * ai, x * ai, aip)


# ---------------------------------------------------------------------------
# Jacobi kernel
# ---------------------------------------------------------------------------

def _jacobi_eval(n: int, alpha: float, beta: float, t: float) -> tuple[float, float]:
    """(P_{n-1}(t), P_n(t)) for the Jacobi polynomials, by three-term recurrence."""
    p_prev = 1.0
    if n == 0:
        return 0.0, p_prev
    p = 0.5 * (alpha + beta + 2.0) * t + 0.5 * (alpha - beta)
    for m in range(2, n + 1):
        c0 = 2.0 * m * (m + alpha + beta) * (2.0 * m + alpha + beta - 2.0)
        c1 = (2.0 * m + alpha + beta - 1.0) * (alpha * alpha - beta * beta)
        c2 = (
            (2.0 * m + alpha + beta - 1.0)
            * (2.0 * m + alpha + beta)
            * (2.0 * m + alpha + beta - 2.0)
        )
        c3 = 2.0 * (m + alpha - 1.0) * (m + beta - 1.0) * (2.0 * m + alpha + beta)
        p, p_prev = ((c1 + c2 * t) * p - c3 * p_prev) / c0, p
    return p_prev, p


@dataclass(frozen=True)
class JacobiKernel(_KernelBase):
    """n-th Christoffel-Darboux kernel of the Jacobi weight, rescaled to (-1/2, 1/2)."""

    n: int
    alpha: float
    beta: float

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("Jacobi kernel needs n >= 1")
        if self.alpha <= -1.0 or self.beta <= -1.0:
            raise DomainError("Jacobi parameters must exceed -1")

    def check_point(self, x: float) -> None:
        if not -0.5 < x < 0.5:
            raise DomainError(f"Jacobi kernel point {x} outside (-1/2, 1/2)")

    def check_union(self, intervals: Sequence[tuple[float, float]]) -> None:
        for a, b in intervals:
            if a < -0.5 - 1e-12 or b > 0.5 + 1e-12:
                raise DomainError("Jacobi kernel interval must lie inside [-1/2, 1/2]")

    def _cd_constant(self) -> float:
        n, al, be = self.n, self.alpha, self.beta
        # k_{n-1} / (k_n h_{n-1}), all through log-Gamma
        lg = math.lgamma

        def log_k(m):
            return -m * math.log(2.0) + lg(2 * m + al + be + 1) - lg(m + 1) - lg(m + al + be + 1)

        def log_h(m):
            return (
                (al + be + 1) * math.log(2.0)
                + lg(m + al + 1)
                + lg(m + be + 1)
                - math.log(2 * m + al + be + 1)
                - lg(m + 1)
                - lg(m + al + be + 1)
            )

        return math.exp(log_k(n - 1) - log_k(n) - log_h(n - 1))

    def _node(self, x: float) -> NodeVals:
        n, al, be = self.n, self.alpha, self.beta
        t = 2.0 * x
        pm, pn = _jacobi_eval(n, al, be, t)
        # P'_m(t) = (m + al + be + 1)/2 * P_{m-1}^{(al+1, be+1)}(t)
        qm, qn = _jacobi_eval(n - 1, al + 1.0, be + 1.0, t)
        dpn = 0.5 * (n + al + be + 1.0) * qn
        dpm = 0.5 * (n - 1 + al + be + 1.0) * qm if n >= 2 else 0.0
        sqw = math.exp(0.5 * (al * math.log1p(-t) + be * math.log1p(t)))
        dln_sqw = -al / (1.0 - t) + be / (1.0 + t)  # d/dt log sqrt(w), times 2 below
        c = math.sqrt(self._cd_constant())
        u1 = c * sqw * pn          # f1 = u1, g1 pairs with P_{n-1}
        u2 = c * sqw * pm
        du1 = c * sqw * (dln_sqw * pn + 2.0 * dpn)
        du2 = c * sqw * (dln_sqw * pm + 2.0 * dpm)
        return _real_node(u1, -u2, u2, u1, du1, -du2, du2, du1)


# ---------------------------------------------------------------------------
# confluent hypergeometric kernel
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConfluentKernel(_KernelBase):
    """One-complex-parameter kernel (Q(x)P(y) - P(x)Q(y)) / (x-y), Re r > -1/2.

    At r = 0 the kernel degenerates to the sine kernel and is evaluated by
    that exact limit formula.
    """

    r: complex

    def __post_init__(self):
        object.__setattr__(self, "r", complex(self.r))
        if self.r.real <= -0.5:
            raise DomainError("confluent kernel needs Re r > -1/2")
        if self.r != 0.0 and abs(self.r.real) < 1e-8:
            raise DomainError(
                "Re r = 0 with r != 0 hits the 1F1 parameter pole; not supported"
            )

    def check_point(self, x: float) -> None:
        if self.r != 0.0 and x == 0.0:
            raise DomainError("confluent kernel point must be nonzero")

    def _pq(self, x: float) -> tuple[complex, complex, complex, complex]:
        r = self.r
        rr = 2.0 * r.real
        ph = math.exp(0.5 * math.pi * r.imag * math.copysign(1.0, x))
        amp = abs(2.0 * x) ** r.real * ph
        e = cmath.exp(-1j * x)
        f_p = kummer_1f1(r, rr, 2j * x)
        f_q = kummer_1f1(r + 1.0, rr + 2.0, 2j * x)
        p = amp * e * f_p
        q = 2.0 * x * amp * e * f_q
        df_p = (r / rr) * kummer_1f1(r + 1.0, rr + 1.0, 2j * x) * 2j
        df_q = ((r + 1.0) / (rr + 2.0)) * kummer_1f1(r + 2.0, rr + 3.0, 2j * x) * 2j
        dp = p * (r.real / x - 1j) + amp * e * df_p
        dq = q * ((1.0 + r.real) / x - 1j) + 2.0 * x * amp * e * df_q
        return p, q, dp, dq

    def _node(self, x: float) -> NodeVals:
        if self.r == 0.0:
            s, c = math.sin(x), math.cos(x)
            p = math.pi
            return _real_node(s, -c, c / p, s / p, c, s, -s / p, c / p)
        p, q, dp, dq = self._pq(x)
        pr = _real_checked(p, "confluent P")
        qr = _real_checked(q, "confluent Q")
        dpr = _real_checked(dp, "confluent P'")
        dqr = _real_checked(dq, "confluent Q'")
        rr = 2.0 * self.r.real
        cpre = s_mul(
            s_make(1.0 / (2.0 * math.pi)),
            gamma_ratio_scaled((self.r + 1.0, self.r.conjugate() + 1.0), (rr + 1.0, rr + 2.0)),
        )
        c = math.sqrt(_real_checked(cpre.value(), "confluent prefactor"))
        return _real_node(
            c * qr, -c * pr, c * pr, c * qr, c * dqr, -c * dpr, c * dpr, c * dqr
        )


# ---------------------------------------------------------------------------
# the 2F1 kernel
# ---------------------------------------------------------------------------

def _rs_out(p: HypParams, zeta: complex) -> tuple[Scaled, Scaled, Scaled, Scaled]:
    """(R_out, S_out, R_out', S_out') at zeta, analytic off the closed inner cut."""
    z, zp, w, wp = p.z, p.zp, p.w, p.wp
    s = z + zp + w + wp
    arg = 1.0 / (0.5 - zeta)
    darg = arg * arg
    lratio = cmath.log((zeta + 0.5) / (zeta - 0.5))
    pw = s_from_clog(wp * lratio)
    dlog_pw = wp * (1.0 / (zeta + 0.5) - 1.0 / (zeta - 0.5))

    f = gauss_2f1(z + wp, zp + wp, s, arg)
    df = gauss_2f1_deriv(z + wp, zp + wp, s, arg)
    r_out = s_mul(pw, s_make(f))
    dr_out = s_mul(pw, s_make(dlog_pw * f + df * darg))

    gs = gamma_ratio_scaled(
        (z + w + 1.0, z + wp + 1.0, zp + w + 1.0, zp + wp + 1.0), (s + 1.0, s + 2.0)
    )
    f2 = gauss_2f1(z + wp + 1.0, zp + wp + 1.0, s + 2.0, arg)
    df2 = gauss_2f1_deriv(z + wp + 1.0, zp + wp + 1.0, s + 2.0, arg)
    inv = 1.0 / (zeta - 0.5)
    core = inv * f2
    dcore = -inv * inv * f2 + inv * df2 * darg
    s_out = s_mul(s_mul(gs, pw), s_make(core))
    ds_out = s_mul(s_mul(gs, pw), s_make(dlog_pw * core + dcore))
    return r_out, s_out, dr_out, ds_out


def _rs_in_term(
    p: HypParams, zeta: complex, za: complex, zb: complex, shifted: bool
) -> tuple[Scaled, Scaled]:
    """One of the two summands of R_in (shifted=True) or S_in, with derivative."""
    z, zp, w, wp = p.z, p.zp, p.w, p.wp
    s = z + zp + w + wp
    u = 0.5 - zeta
    v = 0.5 + zeta
    if shifted:
        pref = s_mul(
            s_from_clog(logsinpi(za) - _LOG_PI),
            gamma_ratio_scaled((zb - za, za + w + 1.0, za + wp + 1.0), (s + 1.0,)),
        )
        a, b = za + wp + 1.0, -zb - w
    else:
        pref = s_mul(
            s_from_clog(logsinpi(za) - _LOG_PI),
            gamma_ratio_scaled((zb - za, s), (zb + w, zb + wp)),
        )
        a, b = za + wp, -zb - w + 1.0
    pref = s_neg(pref)
    pows = s_from_clog(-w * cmath.log(v) - zb * cmath.log(u))
    c = za - zb + 1.0
    f = gauss_2f1(a, b, c, u)
    df = gauss_2f1_deriv(a, b, c, u)
    dlog = -w / v + zb / u
    val = s_mul(s_mul(pref, pows), s_make(f))
    dval = s_mul(s_mul(pref, pows), s_make(dlog * f - df))
    return val, dval


def _rs_in(p: HypParams, zeta: complex) -> tuple[Scaled, Scaled, Scaled, Scaled]:
    """(R_in, S_in, R_in', S_in') at zeta, analytic off the closed outer cuts."""
    r1, dr1 = _rs_in_term(p, zeta, p.z, p.zp, True)
    r2, dr2 = _rs_in_term(p, zeta, p.zp, p.z, True)
    s1, ds1 = _rs_in_term(p, zeta, p.z, p.zp, False)
    s2, ds2 = _rs_in_term(p, zeta, p.zp, p.z, False)
    return s_add(r1, r2), s_add(s1, s2), s_add(dr1, dr2), s_add(ds1, ds2)


def rs_functions(params: HypParams, zeta: complex) -> tuple[complex, complex, complex, complex]:
    """(R_out, S_out, R_in, S_in) at a complex point, principal branches.

    R_out, S_out are analytic off the closure of the inner cut [-1/2, 1/2];
    R_in, S_in off the closure of the outer cuts.  On their real domains the
    values are real (up to roundoff).
    """
    zeta = complex(zeta)
    r_out, s_out, _, _ = _rs_out(params, zeta)
    r_in, s_in, _, _ = _rs_in(params, zeta)
    return r_out.value(), s_out.value(), r_in.value(), s_in.value()


def _f21_region(x: float) -> str:
    if x in (0.5, -0.5):
        raise DomainError("the points +-1/2 are excluded from the phase space")
    return "out" if abs(x) > 0.5 else "in"


def _f21_log_psi(p: HypParams, x: float, region: str) -> tuple[float, complex]:
    """(log psi, d/dx log psi) on the given region."""
    z, zp, w, wp = p.z, p.zp, p.w, p.wp
    szz = (z + zp).real
    sww = (w + wp).real
    if region == "out":
        lc = _log_c_pair(z, zp) if x > 0.5 else _log_c_pair(w, wp)
        lpsi = lc - szz * math.log(abs(x - 0.5)) - sww * math.log(abs(x + 0.5))
        dl = -szz / (x - 0.5) - sww / (x + 0.5)
    else:
        lpsi = szz * math.log(0.5 - x) + sww * math.log(0.5 + x)
        dl = szz / (x - 0.5) + sww / (x + 0.5)
    return lpsi, complex(dl)


@dataclass(frozen=True)
class F21Kernel(_KernelBase):
    """The continuous hypergeometric kernel on R minus {+-1/2}."""

    params: HypParams

    def region(self, x: float) -> str:
        return _f21_region(x)

    def check_point(self, x: float) -> None:
        _f21_region(x)

    def check_union(self, intervals: Sequence[tuple[float, float]]) -> None:
        for a, b in intervals:
            for pt in (0.5, -0.5):
                if a - 1e-9 <= pt <= b + 1e-9:
                    raise DomainError(
                        "interval closure must avoid the points +-1/2 for this kernel"
                    )

    @property
    def decay_exponent(self) -> float:
        return self.params.s_frak

    def _node(self, x: float) -> NodeVals:
        region = _f21_region(x)
        lpsi, dlpsi = _f21_log_psi(self.params, x, region)
        sq = Scaled(0.5 * lpsi, 1.0 + 0.0j)
        half_dl = s_make(0.5 * dlpsi)
        if region == "out":
            r, s, dr, ds = _rs_out(self.params, x)
        else:
            r, s, dr, ds = _rs_in(self.params, x)
        fr = s_mul(sq, r)
        fs = s_mul(sq, s)
        dfr = s_mul(sq, s_add(dr, s_mul(half_dl, r)))
        dfs = s_mul(sq, s_add(ds, s_mul(half_dl, s)))
        if region == "out":
            # F = (sqrt(psi) R, -sqrt(psi) S), G = (sqrt(psi) S, sqrt(psi) R)
            return NodeVals(fr, s_neg(fs), fs, fr, dfr, s_neg(dfs), dfs, dfr)
        # F = (-sqrt(psi) S, sqrt(psi) R), G = (sqrt(psi) R, sqrt(psi) S)
        return NodeVals(s_neg(fs), fr, fr, fs, s_neg(dfs), dfr, dfr, dfs)


# ---------------------------------------------------------------------------
# Whittaker kernel
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WhittakerKernel(_KernelBase):
    """Whittaker kernel on R minus {0}; `out` is the positive half-line."""

    z: complex
    zp: complex

    def __post_init__(self):
        object.__setattr__(self, "z", complex(self.z))
        object.__setattr__(self, "zp", complex(self.zp))
        if not _conjugate_or_unit_real_pair(self.z, self.zp, closed=False):
            raise DomainError(f"(z, z') = ({self.z}, {self.zp}) is not admissible")
        if abs(self.z - self.zp) < LOG_CASE_SEP:
            raise DomainError("z = z' logarithmic case is out of scope")

    def region(self, x: float) -> str:
        if x == 0.0:
            raise DomainError("the origin is excluded from the phase space")
        return "out" if x > 0.0 else "in"

    def check_point(self, x: float) -> None:
        self.region(x)

    def check_union(self, intervals: Sequence[tuple[float, float]]) -> None:
        for a, b in intervals:
            if a - 1e-12 <= 0.0 <= b + 1e-12:
                raise DomainError("interval closure must avoid the origin for this kernel")

    def _node(self, x: float) -> NodeVals:
        z, zp = self.z, self.zp
        mu = (z - zp) / 2.0
        szz = (z + zp).real
        if x > 0.0:
            lpsi = _log_c_pair(z, zp) - szz * math.log(x) - x
            dlpsi = complex(-szz / x - 1.0)
            lpow = ((z + zp - 1.0) / 2.0) * math.log(x) + x / 2.0
            wr, dwr = whittaker_w_scaled((1.0 - z - zp) / 2.0, mu, x)
            ws, dws = whittaker_w_scaled((-z - zp - 1.0) / 2.0, mu, x)
            gs = gamma_ratio_scaled((z + 1.0, zp + 1.0), ())
            pw = s_from_clog(lpow)
            dlog_pw = (z + zp - 1.0) / (2.0 * x) + 0.5
            r = s_mul(pw, wr)
            dr = s_add(s_mul(s_make(dlog_pw), r), s_mul(pw, dwr))
            s = s_mul(gs, s_mul(pw, ws))
            ds = s_mul(gs, s_add(s_mul(s_make(dlog_pw), s_mul(pw, ws)), s_mul(pw, dws)))
        else:
            y = -x
            lpsi = szz * math.log(y) + x
            dlpsi = complex(szz / x + 1.0)
            lpow = ((-z - zp - 1.0) / 2.0) * math.log(y) + y / 2.0
            wr, dwr = whittaker_w_scaled((z + zp + 1.0) / 2.0, mu, y)
            ws, dws = whittaker_w_scaled((z + zp - 1.0) / 2.0, mu, y)
            gs = s_neg(gamma_ratio_scaled((), (z, zp)))
            pw = s_from_clog(lpow)
            dlog_pw_dy = (-z - zp - 1.0) / (2.0 * y) + 0.5
            r = s_mul(pw, wr)
            # d/dx = -d/dy
            dr = s_neg(s_add(s_mul(s_make(dlog_pw_dy), r), s_mul(pw, dwr)))
            s = s_mul(gs, s_mul(pw, ws))
            ds = s_neg(
                s_mul(gs, s_add(s_mul(s_make(dlog_pw_dy), s_mul(pw, ws)), s_mul(pw, dws)))
            )
        sq = Scaled(0.5 * lpsi, 1.0 + 0.0j)
        half_dl = s_make(0.5 * dlpsi)
        fr = s_mul(sq, r)
        fs = s_mul(sq, s)
        dfr = s_mul(sq, s_add(dr, s_mul(half_dl, r)))
        dfs = s_mul(sq, s_add(ds, s_mul(half_dl, s)))
        if x > 0.0:
            return NodeVals(fr, s_neg(fs), fs, fr, dfr, s_neg(dfs), dfs, dfr)
        return NodeVals(s_neg(fs), fr, fr, fs, s_neg(dfs), dfr, dfr, dfs)


KernelSpec = Union[
    F21Kernel, WhittakerKernel, ConfluentKernel, SineKernel, AiryKernel, JacobiKernel
]


# ---------------------------------------------------------------------------
# public pointwise API
# ---------------------------------------------------------------------------

@lru_cache(maxsize=400_000)
def _node_cached(spec: KernelSpec, x: float) -> NodeVals:
    return spec._node(x)


def psi(params: HypParams, p: PhasePoint) -> float:
    """Weight function of the 2F1 kernel at a phase point; strictly positive."""
    region = _f21_region(p.x)
    if region != p.region:
        raise DomainError(f"point {p.x} lies in region '{region}', not '{p.region}'")
    lpsi, _ = _f21_log_psi(params, p.x, region)
    if lpsi > 700.0:
        return math.inf
    return math.exp(lpsi) if lpsi > -700.0 else 0.0


def kernel_eval(spec: KernelSpec, x: float, y: float) -> float:
    """Kernel value K(x, y) for |x - y| above the near-diagonal threshold.

    Within the blend band the value is combined with the second-order
    diagonal Taylor form to avoid catastrophic cancellation; below the
    minimum separation NearDiagonal is raised (use kernel_diag).
    """
    x, y = float(x), float(y)
    spec.check_point(x)
    spec.check_point(y)
    d = x - y
    same_region = spec.region(x) == spec.region(y)
    if abs(d) <= NEAR_DIAG_MIN and same_region:
        raise NearDiagonal(f"|x - y| = {abs(d)} <= {NEAR_DIAG_MIN}; use kernel_diag")
    nx = _node_cached(spec, x)
    ny = _node_cached(spec, y)
    direct = s_add(s_mul(nx.f1, ny.g1), s_mul(nx.f2, ny.g2)).value() / d
    if not same_region or abs(d) >= NEAR_DIAG_TAYLOR:
        return _real_checked(direct, "kernel value")
    m = 0.5 * (x + y)
    h = 0.5 * d
    nm = _node_cached(spec, m)
    kd = s_add(s_mul(nm.df1, nm.g1), s_mul(nm.df2, nm.g2)).value()
    cross = s_add(s_mul(nm.df1, nm.dg1), s_mul(nm.df2, nm.dg2)).value()
    taylor = kd - h * cross
    lam = (math.log(abs(d)) - math.log(NEAR_DIAG_MIN)) / (
        math.log(NEAR_DIAG_TAYLOR) - math.log(NEAR_DIAG_MIN)
    )
    return _real_checked(lam * direct + (1.0 - lam) * taylor, "kernel value")


def kernel_diag(spec: KernelSpec, x: float) -> float:
    """Diagonal value K(x, x) by the L'Hopital rule."""
    x = float(x)
    spec.check_point(x)
    n = _node_cached(spec, x)
    v = s_add(s_mul(n.df1, n.g1), s_mul(n.df2, n.g2)).value()
    out = _real_checked(v, "kernel diagonal")
    if out < -1e-10 * (1.0 + abs(out)):
        raise InvariantViolation(f"negative correlation density K(x,x) = {out} at x = {x}")
    return out


def l_kernel_eval(params: HypParams, x: float, y: float) -> float:
    """The simple antisymmetric partner kernel L; zero within each region.

    A(x, y) = sqrt(psi_out(x) psi_in(y)) / (x - y) on out x in, and
    L = [[0, A], [-A*, 0]].  Requires strict-mode parameters (boundedness).
    """
    params.require_strict()
    rx, ry = _f21_region(x), _f21_region(y)
    if rx == ry:
        return 0.0
    if rx == "out":
        lo, _ = _f21_log_psi(params, x, "out")
        li, _ = _f21_log_psi(params, y, "in")
        return math.exp(0.5 * (lo + li)) / (x - y)
    return -l_kernel_eval(params, y, x)
