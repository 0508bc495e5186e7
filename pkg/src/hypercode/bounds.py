"""Spectrum exponents, distance estimates and decoding radii.

Exponents are in bits per code symbol. Every root is found by bisection on a
bracket with a verified sign change, and the residual is checked after
convergence (``RootError`` otherwise).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from math import comb, log, log2
from typing import Callable, Sequence

import numpy as np

LN2 = math.log(2.0)
RESIDUAL_TOL = 1e-9


class RootError(ArithmeticError):
    pass


def bisect(f: Callable[[float], float], lo: float, hi: float, xtol: float = 1e-15, maxiter: int = 400) -> float:
    """Root of ``f`` on ``[lo, hi]``; ``f(lo)`` and ``f(hi)`` must differ in sign."""
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise RootError(f"no sign change on [{lo}, {hi}]")
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi or hi - lo <= xtol:
            break
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _check(residual: float, what: str) -> None:
    if not abs(residual) < RESIDUAL_TOL:
        raise RootError(f"{what}: residual {residual:.3g} above tolerance")


# Entropy and the GV distance ---------------------------------------------------


def entropy(x: float) -> float:
    if not 0.0 <= x <= 1.0:
        raise ValueError("entropy argument must lie in [0, 1]")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * log2(x) - (1.0 - x) * log2(1.0 - x)


def entropy_inv_gv(R: float) -> float:
    """Relative GV distance: the root in [0, 1/2] of h(d) = 1 - R."""
    if not 0.0 <= R <= 1.0:
        raise ValueError("rate must lie in [0, 1]")
    if R == 1.0:
        return 0.0
    if R == 0.0:
        return 0.5
    target = 1.0 - R
    d = bisect(lambda x: entropy(x) - target, 0.0, 0.5, xtol=1e-14)
    _check(entropy(d) - target, "entropy inverse")
    return d


# Ensemble C1: random hypergraph, random local codes ----------------------------


def c1_exponent(t: int, R: float, omega: float, printed_form: bool = False) -> float:
    """Average spectrum exponent of the random-hypergraph, random-local-code ensemble.

    ``printed_form=True`` evaluates the small-weight branch with the inverted
    log argument ``2**((1-R)/t) - 1``; the default is the form whose zero is
    the nonzero root used for the distance estimate.
    """
    _check_t(t)
    z = 2.0 ** ((R - 1.0) / t)
    if omega <= 1.0 - z:
        arg = 2.0 ** ((1.0 - R) / t) - 1.0 if printed_form else z / (1.0 - z)
        return omega * t * log2(arg) - (t - 1) * entropy(omega)
    return entropy(omega) + R - 1.0


def c1_min_distance(t: int, R: float) -> float:
    """Distance estimate of the C1 ensemble.

    Solves ``w (R - 1 - t log2(1 - z)) = (t - 1) h(w)`` for its nonzero root;
    when that root lies past ``1 - z`` the exponent's zero is on the other
    branch and the GV distance is returned.
    """
    _check_t(t)
    z = 2.0 ** ((R - 1.0) / t)
    slope = R - 1.0 - t * log2(1.0 - z)

    def g(w):
        return w * slope - (t - 1) * entropy(w)

    # g < 0 near 0 and g(1) = slope > 0 for 0 < R < 1
    w = bisect(g, 1e-300, 1.0 - 1e-16)
    _check(g(w), "c1 root")
    if w <= 1.0 - z:
        return w
    return entropy_inv_gv(R)


def gv_attainment_threshold(t: int) -> float:
    """Rate solving ``R = log2(2 (1 - d_GV(R))**t)``.

    Below it the C1 and C3 distance estimates coincide with the GV distance.
    """
    _check_t(t)

    def g(R):
        return R - 1.0 - t * log2(1.0 - entropy_inv_gv(R))

    R = bisect(g, 1e-12, 1.0 - 1e-12, xtol=1e-10)
    _check(g(R), "GV threshold")
    return R


def attains_gv(t: int, R: float) -> bool:
    return R <= gv_attainment_threshold(t)


# Ensemble C2: random hypergraph, fixed local code ---------------------------------


def _tilted_saddle(a: Sequence[float], target: float) -> tuple[float, float]:
    """Solve ``d/ds ln sum_i a_i e^{s i} = target``; returns (s*, ln a(e^{s*})).

    The derivative is the mean of the tilted weight distribution, which is
    increasing in s, so bisection on a growing bracket converges.
    """
    a = np.asarray(a, dtype=np.float64)
    idx = np.flatnonzero(a > 0)
    la = np.log(a[idx])
    w = idx.astype(np.float64)
    if not w[0] < target < w[-1]:
        raise ValueError(f"mean weight {target} outside ({w[0]}, {w[-1]})")

    def logz(s):
        z = la + s * w
        mx = z.max()
        return mx + math.log(np.exp(z - mx).sum())

    def mean(s):
        z = la + s * w
        p = np.exp(z - z.max())
        return float((p * w).sum() / p.sum())

    lo, hi = -1.0, 1.0
    while mean(lo) > target:
        lo *= 2.0
    while mean(hi) < target:
        hi *= 2.0
    s = bisect(lambda s: mean(s) - target, lo, hi, xtol=1e-15)
    _check((mean(s) - target) / w[-1], "saddle point")
    return s, logz(s)


def c2_chernov_exponent(a: Sequence[int], n: int, t: int, omega: float) -> float:
    """Chernoff-type exponent for a fixed local code with weight enumerator ``a``."""
    _check_t(t)
    if len(a) != n + 1:
        raise ValueError("weight enumerator must have n + 1 entries")
    s, lz = _tilted_saddle(a, n * omega)
    return -(t - 1) * entropy(omega) + (t / LN2) * (lz / n - s * omega)


def _mindist_enumerator(n: int, d1: int) -> np.ndarray:
    a = np.zeros(n + 1, dtype=np.float64)
    a[0] = 1.0
    for i in range(max(d1, 1), n + 1):
        a[i] = comb(n, i)
    return a


def mindist_root(n: int, d1: int, omega: float) -> float:
    """Positive root x0 of ``w n + sum_{i>=d1} C(n,i) (w n - i) x**i = 0``."""
    s, _ = _tilted_saddle(_mindist_enumerator(n, d1), n * omega)
    return math.exp(s)


def mindist_residual(n: int, d1: int, omega: float, x: float) -> float:
    """Root equation at ``x``, divided by the sum of absolute values of its terms."""
    wn = omega * n
    terms = [wn] + [comb(n, i) * (wn - i) * x**i for i in range(max(d1, 1), n + 1)]
    return math.fsum(terms) / math.fsum(abs(v) for v in terms)


def c2_mindist_exponent(n: int, d1: int, t: int, omega: float) -> float:
    """Exponent for a fixed local code known only through its length and distance."""
    _check_t(t)
    if not 1 <= d1 <= n:
        raise ValueError("need 1 <= d1 <= n")
    s, lz = _tilted_saddle(_mindist_enumerator(n, d1), n * omega)
    return (t / n) * (lz - s * omega * n) / LN2 - (t - 1) * entropy(omega)


def c2_corollary_exponent(delta1: float, t: int, omega: float) -> float:
    _check_t(t)
    if not 0.0 < delta1 <= 1.0:
        raise ValueError("delta1 must lie in (0, 1]")
    return (t * omega / delta1) * entropy(delta1) - (t - 1) * entropy(omega)


def asymptotically_good_condition(d1: int, t: int) -> bool:
    if d1 < 1 or t < 2:
        raise ValueError("need d1 >= 1 and t >= 2")
    return d1 * (t - 1) > t


# Ensemble C3: fixed homogeneous hypergraph, random local codes -------------------


def c3_root(t: int, R: float, omega: float) -> float:
    """Root x0 > omega**(1/t) of ``t x**(t-1) log2(x**t / (x**t - w)) = 1 - R``.

    Solved in the variable q = ln(x**t / (x**t - w)), which maps the root's
    range onto (0, inf) and keeps the equation well conditioned for small w.
    """
    def x_of(q):
        u = -math.expm1(-q)
        return math.exp((math.log(omega) - math.log(u)) / t)

    def g(lq):
        q = math.exp(lq)
        return log(t) + (t - 1) * log(x_of(q)) + log(q) - log(LN2) - log(1.0 - R)

    lq = bisect(g, -700.0, 10.0, xtol=1e-15)
    x = x_of(math.exp(lq))
    # residual of the original equation (relative)
    lhs = t * x ** (t - 1) * math.exp(lq) / LN2
    _check(lhs / (1.0 - R) - 1.0, "c3 root")
    return x


def c3_exponent(t: int, R: float, omega: float) -> float:
    _check_t(t)
    if not (0 < R < 1 and 0 < omega < 1):
        raise ValueError("need 0 < R < 1 and 0 < omega < 1")
    if omega >= 1.0 - 2.0 ** ((R - 1.0) / t):
        return entropy(omega) + R - 1.0
    x = c3_root(t, R, omega)
    if x >= 1.0:
        return entropy(omega) + R - 1.0
    return -x * (1.0 - R) + x**t * entropy(omega / x**t)


# Distance estimates from exponent curves -------------------------------------------


def spectrum_first_zero(F: Callable[[float], float], lo: float = 0.0, hi: float = 0.5,
                        step: float = 1e-4, xtol: float = 1e-13) -> float:
    """Right end of the initial interval on which ``F`` is strictly negative.

    Scans from ``lo`` in steps of ``step`` and bisects the first sign change.
    Returns ``hi`` if ``F`` stays negative and ``lo`` if it is not negative
    right after ``lo``.
    """
    prev = lo
    w = lo + step
    while w < hi:
        if F(w) >= 0.0:
            if prev == lo:
                return lo
            return bisect(lambda x: 1.0 if F(x) >= 0.0 else -1.0, prev, w, xtol=xtol)
        prev = w
        w += step
    if F(hi) >= 0.0:
        return bisect(lambda x: 1.0 if F(x) >= 0.0 else -1.0, prev, hi, xtol=xtol)
    return hi


def c1_first_zero(t: int, R: float) -> float:
    return spectrum_first_zero(lambda w: c1_exponent(t, R, w))


def c3_first_zero(t: int, R: float) -> float:
    return spectrum_first_zero(lambda w: c3_exponent(t, R, w))


def chernov_first_zero(a: Sequence[int], n: int, t: int) -> float:
    top = max(i for i, v in enumerate(a) if v) / n
    return spectrum_first_zero(lambda w: c2_chernov_exponent(a, n, t, w), hi=min(0.5, top - 1e-9))


def mindist_first_zero(n: int, d1: int, t: int, step: float = 1e-5) -> float:
    return spectrum_first_zero(lambda w: c2_mindist_exponent(n, d1, t, w), step=step)


@dataclass
class ExponentCurve:
    samples: list[tuple[float, float]]
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        ws = [w for w, _ in self.samples]
        if any(not 0 < w < 1 for w in ws) or any(b <= a for a, b in zip(ws, ws[1:])):
            raise ValueError("omega grid must be strictly increasing inside (0, 1)")

    def to_csv(self) -> str:
        return "omega,F\n" + "".join(f"{w:.6f},{F:.12g}\n" for w, F in self.samples)


def exponent_curve(F: Callable[[float], float], grid: Sequence[float], **meta) -> ExponentCurve:
    return ExponentCurve([(float(w), float(F(w))) for w in grid], dict(meta))


def random_linear_exponent(R: float, omega: float) -> float:
    """Spectrum exponent of the ensemble of all linear codes of rate R."""
    return entropy(omega) + R - 1.0


# Designed distance and decoding radii --------------------------------------------


def _check_t(t: int) -> None:
    if t < 2:
        raise ValueError("t must be at least 2")


def designed_distance(delta1: float, t: int) -> float:
    _check_t(t)
    if not 0 < delta1 <= 1:
        raise ValueError("delta1 must lie in (0, 1]")
    return delta1 ** (t / (t - 1))


@dataclass
class RadiusReport:
    t: int
    delta1: float
    radius_fraction: float
    kappa: float | None
    mu: float | None
    formula: str
    constant: float | None = None  # radius / delta1**(t/(t-1)) before slack

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "delta1": self.delta1,
            "radius_fraction": self.radius_fraction,
            "kappa": self.kappa,
            "mu": self.mu,
            "formula": self.formula,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def radius_bh(t: int, delta1: float) -> float:
    _check_t(t)
    if t % 2:
        raise ValueError("the majority-decoder radius needs even t")
    return comb(t - 1, t // 2) ** (-2.0 / t) * (delta1 / 2.0) ** ((t + 2) / t)


def radius_simple(t: int, delta1: float, alpha: float = 0.0) -> float:
    _check_t(t)
    if not 0 <= alpha <= 1:
        raise ValueError("alpha must lie in [0, 1]")
    return (1.0 - alpha) * delta1 ** (t / (t - 1)) / (t + 1) ** ((t + 1) / (t - 1))


def refined_f(t: int, mu: float, kappa: float) -> float:
    """The function maximised over kappa and minimised over mu; 0 where undefined."""
    lead = 1.0 - t * (1.0 - mu) / (kappa - mu)
    if lead <= 0.0:
        return 0.0
    den = kappa ** (t / (t - 1)) * (mu + (1.0 - mu) / (kappa - 1.0)) ** (t / (t - 1))
    return lead ** (1.0 / (t - 1)) / den


def _golden(f: Callable[[float], float], a: float, b: float, maximize: bool, tol: float = 1e-12) -> float:
    sign = -1.0 if maximize else 1.0
    g = (math.sqrt(5.0) - 1.0) / 2.0
    c, d = b - g * (b - a), a + g * (b - a)
    fc, fd = sign * f(c), sign * f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = sign * f(c)
        else:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = sign * f(d)
    return 0.5 * (a + b)


def _inner_min(t: int, kappa: float, grid: int = 401) -> tuple[float, float]:
    mus = np.linspace(0.0, 1.0, grid)
    vals = np.array([refined_f(t, m, kappa) for m in mus])
    i = int(vals.argmin())
    best_mu, best = float(mus[i]), float(vals[i])
    if 0 < i < grid - 1:
        mu = _golden(lambda m: refined_f(t, m, kappa), mus[i - 1], mus[i + 1], maximize=False)
        v = refined_f(t, mu, kappa)
        if v < best:
            best_mu, best = mu, v
    return best, best_mu


def refined_constant(t: int) -> tuple[float, float, float]:
    """(max over kappa of min over mu of f, optimal kappa, minimising mu)."""
    _check_t(t)
    kappas = np.linspace(t + 1e-6, 4.0 * t + 4.0, 400)
    vals = [_inner_min(t, k)[0] for k in kappas]
    i = int(np.argmax(vals))
    lo, hi = kappas[max(i - 1, 0)], kappas[min(i + 1, len(kappas) - 1)]
    k = _golden(lambda x: _inner_min(t, x)[0], lo, hi, maximize=True, tol=1e-10)
    c, mu = _inner_min(t, k)
    return c, k, mu


def radius_refined(t: int, delta1: float, alpha: float = 0.0) -> RadiusReport:
    c, k, mu = refined_constant(t)
    frac = (1.0 - alpha) * delta1 ** (t / (t - 1)) * c
    return RadiusReport(t, delta1, frac, k, mu, "refined", c)


def radius_with_epsilon(t: int, delta1: float, kappa: float, epsilon: float) -> float:
    _check_t(t)
    if kappa <= t:
        raise ValueError("kappa must exceed t")
    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    bracket = 1.0 - t / kappa - epsilon * kappa / delta1
    if bracket <= 0:
        return 0.0
    return delta1 ** (t / (t - 1)) * (bracket / kappa**t) ** (1.0 / (t - 1))


def radius_report(formula: str, t: int, delta1: float, alpha: float = 0.0,
                  kappa: float | None = None, epsilon: float = 0.0) -> RadiusReport:
    if formula == "refined":
        return radius_refined(t, delta1, alpha)
    if formula == "simple":
        return RadiusReport(t, delta1, radius_simple(t, delta1, alpha), float(t + 1), None, "simple")
    if formula == "bh":
        return RadiusReport(t, delta1, radius_bh(t, delta1), None, None, "bh")
    if formula == "epsilon":
        k = float(t + 1) if kappa is None else kappa
        return RadiusReport(t, delta1, radius_with_epsilon(t, delta1, k, epsilon), k, None, "epsilon")
    raise ValueError(f"unknown radius formula {formula!r}")
