"""Adaptive numerical integration of the Lorentzian-weighted decay integrals.

These routines recompute, by quadrature alone, quantities that the model
module obtains in closed form, so the two paths check each other.  The
engine is a globally adaptive Simpson rule: each panel carries an embedded
low/high order pair (one Simpson estimate against its two halves) and is
bisected until the local error fits its share of the tolerance.  A hard
evaluation budget turns a stalled refinement into an explicit error instead
of a silently inaccurate value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "ConvergenceError",
    "IntegralResult",
    "lorentzian_band_integral",
    "rho_bb_integral",
    "cubic_weight_band_error",
    "DEFAULT_BUDGET",
]

#: Maximum number of integrand evaluations per integral.
DEFAULT_BUDGET = 1_000_000


class ConvergenceError(RuntimeError):
    """Raised when the requested tolerance is unreachable within the budget."""


@dataclass(frozen=True)
class IntegralResult:
    value: float
    error_estimate: float
    evaluations: int


def _lorentzian(x: float) -> float:
    return 1.0 / (x * x + 0.25)


def _simpson(fa: float, fm: float, fb: float, width: float) -> float:
    return width * (fa + 4.0 * fm + fb) / 6.0


class _Budget:
    __slots__ = ("used", "limit")

    def __init__(self, limit: int) -> None:
        self.used = 0
        self.limit = limit

    def spend(self) -> None:
        self.used += 1
        if self.used > self.limit:
            raise ConvergenceError(
                f"evaluation budget of {self.limit} exceeded before reaching tolerance")


def _adaptive(f, edges, tol, budget: _Budget) -> tuple[float, float]:
    """Adaptive Simpson over the panels delimited by ``edges`` (sorted, finite).

    The absolute tolerance is split evenly over the initial panels and
    halved on each bisection, so clustered breakpoints are not starved by
    wide neighbours.  Returns (value, error_estimate).
    """
    if len(edges) < 2:
        return 0.0, 0.0

    def ev(x: float) -> float:
        budget.spend()
        return f(x)

    tol_panel = tol / (len(edges) - 1)
    stack = []
    fa = ev(edges[0])
    for a, b in zip(edges[:-1], edges[1:]):
        fb = ev(b)
        fm = ev(0.5 * (a + b))
        stack.append((a, b, fa, fm, fb, _simpson(fa, fm, fb, b - a), tol_panel))
        fa = fb

    value = 0.0
    err = 0.0
    while stack:
        a, b, fa, fm, fb, s, t = stack.pop()
        m = 0.5 * (a + b)
        flm = ev(0.5 * (a + m))
        frm = ev(0.5 * (m + b))
        s_left = _simpson(fa, flm, fm, m - a)
        s_right = _simpson(fm, frm, fb, b - m)
        s2 = s_left + s_right
        local = (s2 - s) / 15.0
        # the width floor stops bisection once panel edges become adjacent floats
        if abs(local) <= t or (b - a) <= 1e-15 * (abs(a) + abs(b) + 1.0):
            value += s2 + local
            err += abs(local)
        else:
            stack.append((a, m, fa, flm, fm, s_left, 0.5 * t))
            stack.append((m, b, fm, frm, fb, s_right, 0.5 * t))
    return value, err


def _interior_points(a: float, b: float, candidates) -> list[float]:
    pts = sorted({float(c) for c in candidates if a < c < b})
    return [a] + pts + [b]


# Natural scales of the kernel: peak half-width 0.5 around zero detuning.
_CORE_POINTS = (-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0)


def _lorentzian_mass(a: float, b: float, tol: float,
                     budget: _Budget) -> tuple[float, float]:
    """Integral of the Lorentzian kernel over [a, b], endpoints may be infinite.

    Infinite tails are mapped onto finite intervals with x = tan(u), under
    which the integrand tends to a finite limit at the far edge.
    """
    pieces = []  # (function, u_edges)
    lo = a
    hi = b
    if math.isinf(a):
        lo = min(-2.0, b) if math.isfinite(b) else -2.0

        def left_tail(u: float, edge: float = lo) -> float:
            t = math.tan(u)
            return _lorentzian(edge - t) * (1.0 + t * t)

        pieces.append((left_tail, [0.0, 0.7, 1.2, math.pi / 2.0]))
    if math.isinf(b):
        hi = max(2.0, a) if math.isfinite(a) else 2.0

        def right_tail(u: float, edge: float = hi) -> float:
            t = math.tan(u)
            return _lorentzian(edge + t) * (1.0 + t * t)

        pieces.append((right_tail, [0.0, 0.7, 1.2, math.pi / 2.0]))
    if lo < hi:
        pieces.append((_lorentzian, _interior_points(lo, hi, _CORE_POINTS)))

    tol_piece = tol / len(pieces)
    value = 0.0
    err = 0.0
    for f, edges in pieces:
        v, e = _adaptive(f, edges, tol_piece, budget)
        value += v
        err += e
    return value, err


def lorentzian_band_integral(a: float, b: float, tol: float,
                             budget: int = DEFAULT_BUDGET) -> IntegralResult:
    """Integral of 1/(x^2 + 1/4) over the detuning band [a, b].

    Either endpoint may be infinite.  The antiderivative is 2*arctan(2x),
    which the test suite uses as the independent oracle.
    """
    a = float(a)
    b = float(b)
    if math.isnan(a) or math.isnan(b) or not a < b:
        raise ValueError(f"band must satisfy a < b, got ({a!r}, {b!r})")
    if not (math.isfinite(tol) and tol > 0.0):
        raise ValueError(f"tol must be positive, got {tol!r}")
    tracker = _Budget(budget)
    value, err = _lorentzian_mass(a, b, tol, tracker)
    if err > tol:
        raise ConvergenceError(f"error estimate {err:g} exceeds tolerance {tol:g}")
    return IntegralResult(value, err, tracker.used)


def rho_bb_integral(gamma_t: float, tol: float,
                    budget: int = DEFAULT_BUDGET) -> IntegralResult:
    """Ground-state population from the squared one-photon amplitudes.

    Integrates the kernel

        [1 + e^(-gamma_t) - 2 e^(-gamma_t/2) cos(x gamma_t)] / (x^2 + 1/4)

    over all detunings, normalized by 1/(2 pi); the closed-form target is
    1 - exp(-gamma_t).  The two kernel terms are integrated separately: the
    static Lorentzian part over the full line, and the cosine part over a
    window sized so that the integration-by-parts bound certifies the
    discarded tail, with every panel inside the window capped below a
    quarter oscillation period so the embedded pair can never alias the
    cosine into a false acceptance.
    """
    tau = float(gamma_t)
    if math.isnan(tau) or tau < 0.0:
        raise ValueError(f"gamma_t must be >= 0, got {gamma_t!r}")
    if not math.isfinite(tau):
        raise ValueError(f"gamma_t must be finite, got {gamma_t!r}")
    if not (math.isfinite(tol) and tol > 0.0):
        raise ValueError(f"tol must be positive, got {tol!r}")
    if tau == 0.0:
        # kernel vanishes identically at t = 0
        return IntegralResult(0.0, 0.0, 0)

    static_coeff = (1.0 + math.exp(-tau)) / (2.0 * math.pi)
    cos_coeff = -math.exp(-tau / 2.0) / math.pi
    tracker = _Budget(budget)

    value, err = _lorentzian_mass(-math.inf, math.inf,
                                  0.5 * tol / static_coeff, tracker)
    value *= static_coeff
    err *= static_coeff

    # |int_{|x|>X} cos(x tau) w(x) dx| <= 4 w(X) / tau  (integration by parts)
    cos_scale = abs(cos_coeff)
    if cos_scale * 2.0 * math.pi > 0.25 * tol:
        window = max(4.0, math.sqrt(16.0 * cos_scale / (tau * tol)))
        quarter_period = math.pi / (2.0 * tau)
        n_panels = max(4, math.ceil(2.0 * window / min(2.0, quarter_period)))
        edges = [-window + 2.0 * window * i / n_panels for i in range(n_panels + 1)]

        def cos_kernel(x: float) -> float:
            return math.cos(x * tau) * _lorentzian(x)

        cos_value, cos_err = _adaptive(cos_kernel, edges,
                                       0.25 * tol / cos_scale, tracker)
        value += cos_coeff * cos_value
        err += cos_scale * (cos_err + 4.0 * _lorentzian(window) / tau)
    else:
        # the cosine term as a whole is below the error budget
        err += cos_scale * 2.0 * math.pi

    if err > tol:
        raise ConvergenceError(f"error estimate {err:g} exceeds tolerance {tol:g}")
    return IntegralResult(value, err, tracker.used)


def cubic_weight_band_error(eps_tilde: float, delta_tilde: float,
                            cutoff: float, omega_tilde: float, tol: float,
                            budget: int = DEFAULT_BUDGET) -> float:
    """Relative band-weight shift from the cubic frequency factor of the coupling.

    The flat-coupling weights drop the cubic mode-density growth on the
    grounds that it varies little across the line width.  This check keeps
    it: with omega_tilde = omega/Gamma, the physical kernel carries the
    numerator (1 + x/omega_tilde)^3 and lives on detunings
    [-omega_tilde, cutoff] (frequencies cannot be negative, and the upper
    cutoff keeps the integral finite).  Returns |W_cubic - W_flat| / W_flat
    for the band weights computed both ways, each normalized over the full
    domain.  For optical-scale omega_tilde the shift is far below any
    tolerance used elsewhere, which is what justifies the flat kernel.
    """
    eps = float(eps_tilde)
    delta = float(delta_tilde)
    if math.isnan(eps) or eps < 0.0 or not math.isfinite(eps):
        raise ValueError(f"eps_tilde must be finite and >= 0, got {eps_tilde!r}")
    if not math.isfinite(delta):
        raise ValueError(f"delta_tilde must be finite, got {delta_tilde!r}")
    if not (math.isfinite(omega_tilde) and omega_tilde > 0.0):
        raise ValueError(f"omega_tilde must be positive and finite, got {omega_tilde!r}")
    if not (math.isfinite(cutoff) and cutoff > 0.0):
        raise ValueError(f"cutoff must be positive and finite, got {cutoff!r}")
    if not (math.isfinite(tol) and tol > 0.0):
        raise ValueError(f"tol must be positive, got {tol!r}")
    if eps == 0.0:
        return 0.0
    band_lo = delta - eps
    band_hi = delta + eps
    if band_hi >= cutoff:
        raise ValueError(
            f"cutoff must exceed the band edge, got cutoff={cutoff!r} <= {band_hi!r}")
    if band_lo <= -omega_tilde:
        raise ValueError(
            f"band must lie above -omega_tilde, got edge {band_lo!r} <= {-omega_tilde!r}")

    scale = 1.0 / omega_tilde

    def cubic(x: float) -> float:
        g = 1.0 + x * scale
        return g * g * g * _lorentzian(x)

    band_edges = _interior_points(band_lo, band_hi, _CORE_POINTS)
    decades = [10.0 ** k for k in range(19)]
    domain_edges = _interior_points(
        -omega_tilde, cutoff,
        list(_CORE_POINTS) + decades + [-d for d in decades])

    # absolute tolerances sized from the flat closed form so that the
    # returned relative difference is resolved to roughly `tol`
    band_scale = 2.0 * (math.atan(2.0 * band_hi) - math.atan(2.0 * band_lo))
    domain_scale = 2.0 * (math.atan(2.0 * cutoff) - math.atan(-2.0 * omega_tilde))
    tol_band = 0.25 * tol * band_scale
    tol_domain = 0.25 * tol * domain_scale

    flat_band, _ = _adaptive(_lorentzian, band_edges, tol_band, _Budget(budget))
    cubic_band, _ = _adaptive(cubic, band_edges, tol_band, _Budget(budget))
    flat_domain, _ = _adaptive(_lorentzian, domain_edges, tol_domain, _Budget(budget))
    cubic_domain, _ = _adaptive(cubic, domain_edges, tol_domain, _Budget(budget))

    weight_flat = flat_band / flat_domain
    weight_cubic = cubic_band / cubic_domain
    return abs(weight_cubic - weight_flat) / weight_flat
