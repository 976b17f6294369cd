"""Schlesinger flows, the tau-function 1-form, and residue reconstruction.

A ResidueSystem carries 2x2 residue matrices at simple poles of a rational
connection; moving a designated pole while preserving monodromy makes the
matrices flow by commutator equations.  The closed 1-form omega built from
pairwise traces is d log of the tau-function, which for the kernels of this
package is the Fredholm determinant itself - the identity the omega/flow
machinery here exists to verify.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import DegenerateData, InvariantDrift, PoleCollision
from .kernels import HypParams
from .ode import rk_integrate
from .painleve import SigmaSample

POLE_SEP = 1e-9
SIGMA3 = np.diag([1.0 + 0.0j, -1.0 + 0.0j])


@dataclass(frozen=True)
class ResidueSystem:
    """Poles, 2x2 residue matrices and the moving-pole bookkeeping.

    `moving` lists indices of poles that deform (endpoints of the interval
    union); their residues are the nilpotent ones.  `d_matrix` holds the
    constant term of the connection when present (irregular singularity at
    infinity).  `theta_a`, `theta_b`, `s_frak` are optional expected values
    for the fixed-pole determinants and the sum rule.
    """

    poles: tuple[float, ...]
    residues: tuple[np.ndarray, ...]
    moving: tuple[int, ...]
    d_matrix: np.ndarray | None = None
    theta_a: complex | None = None
    theta_b: complex | None = None
    s_frak: float | None = None

    def __post_init__(self):
        if len(self.poles) != len(self.residues):
            raise DegenerateData("one residue matrix per pole required")
        mats = tuple(np.asarray(m, dtype=complex).reshape(2, 2) for m in self.residues)
        object.__setattr__(self, "residues", mats)
        for j in self.moving:
            if not 0 <= j < len(self.poles):
                raise DegenerateData(f"moving index {j} out of range")
        for i, a in enumerate(self.poles):
            for b in self.poles[i + 1 :]:
                if abs(a - b) < POLE_SEP:
                    raise PoleCollision(f"poles {a} and {b} closer than {POLE_SEP}")

    def invariants(self) -> dict[str, float]:
        """Deviations of the conserved quantities (traces, determinants, sum rule)."""
        out: dict[str, float] = {}
        for i, m in enumerate(self.residues):
            out[f"tr_{i}"] = abs(np.trace(m))
        for j in self.moving:
            out[f"det_moving_{j}"] = abs(np.linalg.det(self.residues[j]))
        if self.theta_a is not None:
            out["det_a"] = abs(np.linalg.det(self._fixed(0.5)) + self.theta_a**2)
        if self.theta_b is not None:
            out["det_b"] = abs(np.linalg.det(self._fixed(-0.5)) + self.theta_b**2)
        if self.s_frak is not None:
            target = -(self.s_frak / 2.0) * SIGMA3
            out["sum_rule"] = float(
                np.max(np.abs(sum(self.residues) - target))
            )
        return out

    def _fixed(self, pole: float) -> np.ndarray:
        for p, m in zip(self.poles, self.residues):
            if abs(p - pole) < 1e-12:
                return m
        raise DegenerateData(f"no residue at pole {pole}")


def schlesinger_rhs(sys: ResidueSystem, j: int) -> list[np.ndarray]:
    """d(residues)/d(b_j) under the monodromy-preserving motion of pole j.

    dB_l/db_j = [B_j, B_l]/(b_j - b_l) for l != j and
    dB_j/db_j = -sum_{l != j} [B_j, B_l]/(b_j - b_l) - [B_j, D].
    """
    if j not in sys.moving:
        raise DegenerateData(f"pole index {j} is not in the moving set")
    bj = sys.poles[j]
    mj = sys.residues[j]
    out: list[np.ndarray] = []
    acc = np.zeros((2, 2), dtype=complex)
    for l, (bl, ml) in enumerate(zip(sys.poles, sys.residues)):
        if l == j:
            out.append(None)  # filled below
            continue
        if abs(bj - bl) < POLE_SEP:
            raise PoleCollision(f"poles {bj} and {bl} too close in schlesinger_rhs")
        c = (mj @ ml - ml @ mj) / (bj - bl)
        out.append(c)
        acc = acc + c
    own = -acc
    if sys.d_matrix is not None:
        own = own - (mj @ sys.d_matrix - sys.d_matrix @ mj)
    out[j] = own
    return out


def omega_eval(sys: ResidueSystem) -> dict[int, float]:
    """Coefficients of the closed 1-form: omega_j = sum_l tr(B_j B_l)/(b_j - b_l).

    When a constant matrix D is present the extra term tr(B_j D) is added.
    d log tau = sum_j omega_j db_j over the moving poles.
    """
    out: dict[int, float] = {}
    for j in sys.moving:
        bj, mj = sys.poles[j], sys.residues[j]
        total = 0.0 + 0.0j
        for l, (bl, ml) in enumerate(zip(sys.poles, sys.residues)):
            if l == j:
                continue
            if abs(bj - bl) < POLE_SEP:
                raise PoleCollision(f"poles {bj} and {bl} too close in omega_eval")
            total += np.trace(mj @ ml) / (bj - bl)
        if sys.d_matrix is not None:
            total += np.trace(mj @ sys.d_matrix)
        im = abs(total.imag)
        if im > 1e-8 * (1.0 + abs(total.real)):
            raise DegenerateData(f"omega_{j} not real: {total}")
        out[j] = total.real
    return out


def reconstruct_residues(sigma: SigmaSample, params: HypParams, gauge: float = 1.0) -> ResidueSystem:
    """One-interval residue matrices (a at 1/2, b at -1/2, c at s) from sigma data.

    Inverts the trace identities of the sigma-PVI derivation: the diagonal
    entries come from the first-derivative and shifted-combination lemmas,
    the off-diagonal products from the linear pair (second-derivative and
    a.c-trace lemmas) under the gauge x_c = `gauge`, with y_c fixed by the
    nilpotency of c.  Requires s_frak != 0 and sigma-hat' != 0.
    """
    params.require_strict()
    s = sigma.s
    sf = params.s_frak
    tha, thb = params.theta_a, params.theta_b
    th2 = (tha * tha).real, (thb * thb).real
    # sigma-hat = sigma + (s_frak^2/4) s - (theta_a^2 - theta_b^2)/2
    shift = (tha * tha - thb * thb).real
    sh = sigma.sigma + (sf * sf / 4.0) * s - shift / 2.0
    shp = sigma.dsigma + sf * sf / 4.0
    shpp = sigma.d2sigma
    if abs(sf) < 1e-8:
        raise DegenerateData("s_frak ~ 0: reconstruction undefined")
    z_c = -shp / sf
    if abs(z_c) < 1e-8:
        raise DegenerateData("sigma-hat' ~ 0: the c matrix degenerates (z_c ~ 0)")
    z_a = ((s + 0.5) * shp - sh - th2[0] + th2[1] - sf * sf / 4.0) / sf
    x_c = float(gauge)
    if x_c == 0.0:
        raise DegenerateData("gauge x_c must be nonzero")
    y_c = -z_c * z_c / x_c
    # linear pair for (y_a x_c, x_a y_c)
    p = (s * s - 0.25) * shpp / sf
    q = sh - (s - 0.5) * shp - 2.0 * z_a * z_c
    y_a = (p + q) / (2.0 * x_c)
    x_a = (q - p) / (2.0 * y_c)
    mat_a = np.array([[z_a, x_a], [y_a, -z_a]], dtype=complex)
    mat_c = np.array([[z_c, x_c], [y_c, -z_c]], dtype=complex)
    mat_b = -(sf / 2.0) * SIGMA3 - mat_a - mat_c
    return ResidueSystem(
        poles=(-0.5, 0.5, s),
        residues=(mat_b, mat_a, mat_c),
        moving=(2,),
        theta_a=tha,
        theta_b=thb,
        s_frak=sf,
    )


def integrate_flow(
    sys0: ResidueSystem,
    s_range: list[float],
    rtol: float = 1e-10,
    drift_tol: float = 1e-7,
) -> list[ResidueSystem]:
    """Flow the residue system along its single moving pole over s_range.

    All Schlesinger invariants (traces, determinants, the sum rule when
    declared) are monitored against their initial values; drift beyond
    `drift_tol` raises InvariantDrift.
    """
    if len(sys0.moving) != 1:
        raise DegenerateData("integrate_flow needs exactly one moving pole")
    j = sys0.moving[0]
    n = len(sys0.poles)
    fixed = [p for i, p in enumerate(sys0.poles) if i != j]

    def pack(mats: tuple[np.ndarray, ...]) -> np.ndarray:
        return np.concatenate([m.astype(complex).view(float).ravel() for m in mats])

    def unpack(y: np.ndarray) -> tuple[np.ndarray, ...]:
        out = []
        for i in range(n):
            out.append(y[8 * i : 8 * (i + 1)].view(complex).reshape(2, 2))
        return tuple(out)

    def sys_at(s: float, y: np.ndarray) -> ResidueSystem:
        poles = list(fixed)
        poles.insert(j, s)
        return ResidueSystem(
            poles=tuple(poles),
            residues=unpack(y),
            moving=(j,),
            d_matrix=sys0.d_matrix,
            theta_a=sys0.theta_a,
            theta_b=sys0.theta_b,
            s_frak=sys0.s_frak,
        )

    ref = sys0.invariants()

    def f(s: float, y: np.ndarray) -> np.ndarray:
        sysm = sys_at(s, y)
        ders = schlesinger_rhs(sysm, j)
        return pack(tuple(ders))

    def monitor(s: float, y: np.ndarray) -> bool:
        inv = sys_at(s, y).invariants()
        for k, v in inv.items():
            if v - ref[k] > drift_tol:
                raise InvariantDrift(f"invariant {k} drifted to {v:.3e} at s = {s}")
        return True

    y0 = pack(sys0.residues)
    out = rk_integrate(
        f, sys0.poles[j], y0, s_range[-1], rtol=rtol, atol=1e-13, targets=s_range, monitor=monitor
    )
    return [sys_at(t, y) for t, y in out]
