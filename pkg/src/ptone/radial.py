"""Shooting solver for the first radial Dirichlet p-eigenvalue.

On a rotationally symmetric model with warping f, the first Dirichlet
eigenfunction of a geodesic ball B(r) is radial, omega(t), and solves

    (f^{m-1} |omega'|^{p-2} omega')' + lam f^{m-1} |omega|^{p-2} omega = 0,
    omega(0) = 1,  omega'(0) = 0,  omega(r) = 0,

with omega' < 0 on (0, r].  Integrating the equation once removes the
gradient degeneracy at the pole: with the flux variable

    Phi(t) = f^{m-1} |omega'|^{p-2} omega'  =  -lam * F(t),
    F(t)   = int_0^t f^{m-1} |omega|^{p-2} omega ds,

the problem becomes the first-order system

    omega' = sign(Phi) (|Phi| / f^{m-1})^{1/(p-1)},
    Phi'   = -lam f^{m-1} |omega|^{p-2} omega.

The vector field is not Lipschitz at the pole, so integration starts at
t0 = 1e-4 r from the asymptotic expansion

    omega(t) = 1 - a t^beta + (a^2 m / (2(m+beta))) t^{2 beta},
    beta = p/(p-1),  a = ((p-1)/p) (lam/m)^{1/(p-1)},

obtained by balancing the leading terms of the integrated equation.

The eigenvalue is the smallest lam whose omega first vanishes exactly at
r.  The first zero is strictly decreasing in lam, so the solver brackets
(doubling lam from half a Barta-type seed until a zero appears before r)
and then bisects on the zero location.  Annuli shoot from the left
endpoint with omega(a) = 0 and unit initial flux instead.
"""

import math

import numpy as np

from . import _ode
from .modelspace import WarpingProfile, space_form

P_MIN, P_MAX = 1.05, 16.0

_DEFAULT_TOL = 1e-8
_DEFAULT_GRID = 2048
_RTOL = 1e-12
_ATOL = 1e-12
_STARTUP_FRAC = 1e-4

# Relative windows for the residual sup: nodes closer to the pole than
# POLE_FRAC*r or with omega below OMEGA_FLOOR*max|omega| are excluded,
# where finite differences of the degenerate flux lose accuracy.
RESIDUAL_POLE_FRAC = 0.01
RESIDUAL_OMEGA_FLOOR = 0.01


class NonConvergenceError(RuntimeError):
    """Bracketing or bisection failed to meet the requested tolerance."""


def signed_power(x, q):
    """sign(x) |x|^q, elementwise; the p-Laplacian nonlinearity."""
    x = np.asarray(x, dtype=float)
    return np.sign(x) * np.abs(x) ** q


class Ball:
    """Geodesic ball domain of radius r (pole at t = 0)."""

    kind = "ball"

    def __init__(self, r):
        if r <= 0:
            raise ValueError("ball radius must be positive")
        self.r = float(r)

    def __repr__(self):
        return "Ball(r=%g)" % self.r


class Annulus:
    """Annular domain a < t < b with Dirichlet conditions at both ends."""

    kind = "annulus"

    def __init__(self, a, b):
        if not 0 <= a < b:
            raise ValueError("annulus requires 0 <= a < b")
        self.a = float(a)
        self.b = float(b)

    def __repr__(self):
        return "Annulus(a=%g, b=%g)" % (self.a, self.b)


def pi_p(p):
    """Half-period constant pi_p = 2 pi / (p sin(pi/p)) of the p-sine."""
    return 2.0 * math.pi / (p * math.sin(math.pi / p))


class RadialProblem:
    """A p-eigenvalue problem on a ball or annulus over a warping profile."""

    def __init__(self, p, m, profile, domain):
        p = float(p)
        if not P_MIN <= p <= P_MAX:
            raise ValueError(
                "p=%g outside the supported range [%g, %g]; the exponents "
                "1/(p-1) and p-2 are numerically hostile beyond it"
                % (p, P_MIN, P_MAX))
        if int(m) != m or m < 1:
            raise ValueError("dimension m must be an integer >= 1")
        if not isinstance(profile, WarpingProfile):
            raise TypeError("profile must be a WarpingProfile")
        self.p = p
        self.m = int(m)
        self.profile = profile
        self.domain = domain
        right = domain.r if domain.kind == "ball" else domain.b
        if right > profile.r_max * (1 + 1e-12):
            raise ValueError("domain exceeds the profile domain [0, %g]"
                             % profile.r_max)
        if profile.c is not None and profile.c > 0:
            if right >= math.pi / math.sqrt(profile.c):
                raise ValueError("radius beyond the conjugate point of S_c")
        if domain.kind == "annulus" and domain.a == 0 and self.m > 1:
            raise ValueError("annulus with a = 0 needs m = 1 (vanishing "
                             "weight at the pole otherwise)")

    @property
    def q(self):
        """Conjugate exponent p/(p-1)."""
        return self.p / (self.p - 1.0)

    def cache_key(self, tol, n_grid):
        d = self.domain
        dom = ("ball", d.r) if d.kind == "ball" else ("annulus", d.a, d.b)
        return (self.p, self.m, self.profile.cache_key(), dom, tol, n_grid)

    def __repr__(self):
        return ("RadialProblem(p=%g, m=%d, %r, %r)"
                % (self.p, self.m, self.profile.label, self.domain))


def ball_problem(p, m, c, r):
    """Convenience constructor for space-form balls."""
    return RadialProblem(p, m, space_form(c), Ball(r))


def _make_rhs(p, m, fscalar, lam):
    """Right-hand side of the (omega, Phi) system as a fast closure."""
    em1 = 1.0 / (p - 1.0)
    pm1 = p - 1.0
    mm1 = m - 1
    if mm1 == 0:
        def rhs(t, y):
            w, phi = y
            wp = phi ** em1 if phi >= 0.0 else -((-phi) ** em1)
            pp = -lam * (w ** pm1) if w >= 0.0 else lam * ((-w) ** pm1)
            return wp, pp
    else:
        def rhs(t, y):
            w, phi = y
            fm = fscalar(t) ** mm1
            wp = ((phi / fm) ** em1 if phi >= 0.0
                  else -(((-phi) / fm) ** em1))
            pp = (-lam * fm * (w ** pm1) if w >= 0.0
                  else lam * fm * ((-w) ** pm1))
            return wp, pp
    return rhs


class _Startup:
    """Pole expansion of the ball solution on [0, t0]."""

    def __init__(self, p, m, profile, lam, t0):
        self.t0 = t0
        self.beta = p / (p - 1.0)
        self.a = ((p - 1.0) / p) * (lam / m) ** (1.0 / (p - 1.0))
        self.b2 = self.a * self.a * m / (2.0 * (m + self.beta))
        self.m = m
        self.p = p
        self.lam = lam
        self.f3_0 = profile.f3_0

    def omega(self, t):
        b = self.beta
        return 1.0 - self.a * t ** b + self.b2 * t ** (2.0 * b)

    def omega_prime(self, t):
        b = self.beta
        if t == 0.0:
            return 0.0
        return -self.a * b * t ** (b - 1.0) + 2.0 * b * self.b2 * t ** (2.0 * b - 1.0)

    def flux_F(self, t):
        # F = int_0^t f^{m-1} omega^{p-1}, with f ~ t + f3_0 t^3/6.
        m, b = self.m, self.beta
        return (t ** m / m
                + (m - 1) * self.f3_0 * t ** (m + 2) / (6.0 * (m + 2))
                - (self.p - 1.0) * self.a * t ** (m + b) / (m + b))

    def state(self, t):
        return self.omega(t), -self.lam * self.flux_F(t)


def _refine_zero(rhs, ts, ys, k, tol_t, comp=0):
    """Zero of state component `comp` inside (ts[k-1], ts[k]), safeguarded secant."""
    lo, glo = ts[k - 1], ys[k - 1][comp]
    up, gup = ts[k], ys[k][comp]
    if gup == 0.0:
        return up
    t_prev, g_prev = lo, glo
    t_cur, g_cur = up, gup
    for _ in range(80):
        if g_cur == g_prev:
            t_new = 0.5 * (lo + up)
        else:
            t_new = t_cur - g_cur * (t_cur - t_prev) / (g_cur - g_prev)
            if not lo < t_new < up:
                t_new = 0.5 * (lo + up)
        g_new = _ode.rk4_between(rhs, ts[k - 1], ys[k - 1], t_new)[comp]
        if g_new > 0.0:
            lo = t_new
        else:
            up = t_new
        t_prev, g_prev = t_cur, g_cur
        t_cur, g_cur = t_new, g_new
        if up - lo <= tol_t or g_new == 0.0:
            break
    return 0.5 * (lo + up)


def _shoot(problem, lam, keep_mesh=True):
    """Integrate the trial-lam trajectory; return (ts, ys, first_zero, rhs).

    For balls the mesh starts at t0 = 1e-4 r with the startup state; for
    annuli it starts at (a, (0, 1)) (unit initial flux).  Integration stops
    at the first sign change of omega; `first_zero` is the refined zero
    location, or None if omega stays positive up to the right endpoint.
    """
    p, m, prof = problem.p, problem.m, problem.profile
    rhs = _make_rhs(p, m, prof.f_scalar, lam)
    d = problem.domain
    if d.kind == "ball":
        t_start = _STARTUP_FRAC * d.r
        y_start = _Startup(p, m, prof, lam, t_start).state(t_start)
        t_end = d.r
    else:
        t_start, y_start = d.a, (0.0, 1.0)
        t_end = d.b
    span = t_end - t_start
    ts, ys = _ode.integrate(rhs, t_start, t_end, y_start,
                            rtol=_RTOL, atol=_ATOL,
                            stop=lambda t, y: y[0] <= 0.0)
    zero = None
    if ys[-1][0] <= 0.0:
        zero = _refine_zero(rhs, ts, ys, len(ts) - 1, 1e-12 * span)
    return ts, ys, zero, rhs


class RadialSolution:
    """A solved radial eigenpair with dense re-evaluation.

    Public arrays live on a uniform grid over the closed domain; between
    nodes `evaluate` advances the stored adaptive trajectory with fixed
    RK4 sub-steps, so derived quantities (Barta ratios, restriction
    inequalities, transplants) can be sampled anywhere without
    interpolation error.
    """

    def __init__(self, problem, lam, ts, ys, rhs, iterations, n_grid,
                 startup=None, scale=1.0):
        self.problem = problem
        self.p = problem.p
        self.m = problem.m
        self.profile = problem.profile
        self.lam = float(lam)
        self.iterations = int(iterations)
        self._ts = ts
        self._ys = ys
        self._rhs = rhs
        self._startup = startup
        self._scale = scale

        d = problem.domain
        left = 0.0 if d.kind == "ball" else d.a
        right = d.r if d.kind == "ball" else d.b
        self.r = right
        grid = np.linspace(left, right, n_grid)
        omega, phi = self._march(grid)
        self.grid = grid
        self.omega = omega
        self.omega_prime = self._wprime_array(grid, phi)
        self.flux = -phi / self.lam
        self.residual = eigen_equation_residual(self)

    def _march(self, ts):
        """(omega, Phi) along sorted ts, by one sequential RK4 sweep.

        Marching keeps neighboring samples on a smooth shared error
        profile; independent dense queries would carry O(1e-12)
        interpolation jumps at the adaptive step boundaries, which second
        differences of the arrays amplify by 1/h^2.  Sub-steps are graded
        near a pole, where omega - 1 ~ t^(p/(p-1)) has unbounded higher
        derivatives for p > 2.  A sweep whose first node sits well inside
        the domain (a band query) is anchored on the stored adaptive
        trajectory instead, so it never crosses the pole region in
        grid-sized hops; the single interpolation offset at the anchor is
        shared by every node and stays invisible to differences.
        """
        startup, rhs, scale = self._startup, self._rhs, self._scale
        left = 0.0 if self.problem.domain.kind == "ball" \
            else self.problem.domain.a
        span = self.r - left
        h = max((ts[-1] - ts[0]) / max(ts.size - 1, 1), 1e-12 * self.r)
        omega = np.empty(ts.size)
        phi = np.empty(ts.size)
        if startup is not None:
            t_march = max(startup.t0, left + h)
            y = startup.state(t_march)
        else:
            t_march = left
            y = (0.0, 1.0)
        anchored = False
        if ts[0] > t_march + 8.0 * h and ts[0] >= self._ts[0]:
            t_march = float(ts[0])
            y = _ode.dense_eval(rhs, self._ts, self._ys, t_march)
            anchored = True
        for i, t in enumerate(ts):
            t = float(t)
            if t <= t_march:
                y_i = startup.state(t) if startup is not None \
                    and t < t_march and not anchored else y
            else:
                if anchored:
                    nsub = max(4, min(4096, int(math.ceil(
                        4096.0 * (t - t_march) / span))))
                else:
                    nsub = 4
                    if startup is not None:
                        nsub = max(4, min(4096, int(math.ceil(
                            256.0 * h / (t_march - left)))))
                y = _ode.rk4_between(rhs, t_march, y, t, nsub=nsub)
                t_march = t
                y_i = y
            omega[i] = y_i[0] * scale
            phi[i] = y_i[1] * scale ** (self.p - 1.0)
        return omega, phi

    def _wprime_array(self, ts, phi):
        mm1 = self.m - 1
        if mm1:
            fm = self.profile.eval(ts)[0] ** mm1
        else:
            fm = np.ones(ts.size)
        out = np.zeros(ts.size)
        ok = fm > 0.0
        out[ok] = signed_power(phi[ok] / fm[ok], 1.0 / (self.p - 1.0))
        return out

    # -- dense evaluation ------------------------------------------------

    def _state_at(self, t):
        if self._startup is not None and t <= self._startup.t0:
            w, phi = self._startup.state(t)
        else:
            w, phi = _ode.dense_eval(self._rhs, self._ts, self._ys, t)
        s = self._scale
        if s != 1.0:
            return w * s, phi * s ** (self.p - 1.0)
        return w, phi

    def _wprime(self, t, phi):
        mm1 = self.m - 1
        fm = self.profile.f_scalar(t) ** mm1 if mm1 else 1.0
        if fm == 0.0:
            return 0.0
        em1 = 1.0 / (self.p - 1.0)
        return (phi / fm) ** em1 if phi >= 0.0 else -(((-phi) / fm) ** em1)

    def evaluate(self, t):
        """Dense (omega, omega') at scalar or array t inside the domain.

        Sorted arrays are swept in one sequential march (fast and smooth
        in the node index); unsorted input falls back to per-point
        queries of the adaptive trajectory.
        """
        if np.ndim(t) == 0:
            w, phi = self._state_at(float(t))
            return w, self._wprime(float(t), phi)
        t = np.asarray(t, dtype=float)
        if t.ndim == 1 and t.size >= 8 and np.all(np.diff(t) >= 0.0):
            w, phi = self._march(t)
            return w, self._wprime_array(t, phi)
        w = np.empty(t.shape)
        wp = np.empty(t.shape)
        for i, ti in enumerate(t.ravel()):
            wi, phii = self._state_at(float(ti))
            w.flat[i] = wi
            wp.flat[i] = self._wprime(float(ti), phii)
        return w, wp

    def omega_at(self, t):
        return self.evaluate(t)[0]

    def omega_prime_at(self, t):
        return self.evaluate(t)[1]

    # -- serialization ---------------------------------------------------

    def to_json(self):
        d = self.problem.domain
        return {
            "p": self.p,
            "m": self.m,
            "profile": self.profile.describe(),
            "r": d.r if d.kind == "ball" else [d.a, d.b],
            "lambda": self.lam,
            "residual": self.residual,
            "iterations": self.iterations,
            "grid": self.grid.tolist(),
            "omega": self.omega.tolist(),
            "omega_prime": self.omega_prime.tolist(),
        }

    def __repr__(self):
        return ("RadialSolution(p=%g, m=%d, %s, lam=%.12g, residual=%.2e)"
                % (self.p, self.m, self.problem.domain, self.lam,
                   self.residual))


def integrate_profile(problem, lam):
    """Integrate one trial lam; report the trajectory and first omega zero.

    Returns a dict with keys grid, omega, omega_prime, F (the flux
    integral), and first_zero (None when omega stays positive).  The grid
    is the adaptive mesh of the integrator, prefixed with the pole node
    for ball domains.
    """
    if lam <= 0:
        raise ValueError("trial eigenvalue must be positive")
    ts, ys, zero, rhs = _shoot(problem, lam)
    p, m = problem.p, problem.m
    fs = problem.profile.f_scalar
    em1 = 1.0 / (p - 1.0)
    grid = list(ts)
    omega = [y[0] for y in ys]
    phi = [y[1] for y in ys]
    if problem.domain.kind == "ball":
        grid.insert(0, 0.0)
        omega.insert(0, 1.0)
        phi.insert(0, 0.0)
    grid = np.array(grid)
    omega = np.array(omega)
    phi = np.array(phi)
    fm = np.array([fs(t) ** (m - 1) if m > 1 else 1.0 for t in grid])
    ratio = np.divide(np.abs(phi), fm, out=np.zeros_like(phi), where=fm > 0)
    omega_prime = np.sign(phi) * ratio ** em1
    return {
        "grid": grid,
        "omega": omega,
        "omega_prime": omega_prime,
        "F": -phi / lam,
        "first_zero": zero,
    }


def _barta_seed(problem):
    """Positive lower seed for bracketing, from an explicit test profile.

    Balls use eta = 1 - (t/r)^beta, whose Barta ratio has a finite positive
    pole limit for every p; annuli fall back to a 1-d string estimate
    rescaled by the weight spread.  Either way the caller halves the seed
    and keeps halving while a zero still appears, so the seed only needs
    to be a sane order of magnitude.
    """
    p, m = problem.p, problem.m
    d = problem.domain
    if d.kind == "annulus":
        tt = np.linspace(d.a, d.b, 257)
        f = problem.profile.eval(tt)[0]
        fm = f ** (m - 1)
        lo, hi = float(np.min(fm)), float(np.max(fm))
        base = (p - 1.0) * (pi_p(p) / (d.b - d.a)) ** p
        return base * (lo / hi if hi > 0 else 1.0)
    r = d.r
    beta = p / (p - 1.0)
    t = np.linspace(r / 256.0, r * (1 - 1.0 / 512.0), 256)
    f, f1, _ = problem.profile.eval(t)
    x = t / r
    eta = 1.0 - x ** beta
    deta = -(beta / r) * x ** (beta - 1.0)
    d2eta = -(beta * (beta - 1.0) / r ** 2) * x ** (beta - 2.0)
    plap = np.abs(deta) ** (p - 2.0) * ((p - 1.0) * d2eta + (m - 1) * (f1 / f) * deta)
    val = float(np.min(-plap / eta ** (p - 1.0)))
    return val if val > 0 else (p - 1.0) * (pi_p(p) / (2 * r)) ** p


def _solve(problem, tol, n_grid):
    zero_of = {}

    def has_zero(lam):
        ts, ys, zero, rhs = _shoot(problem, lam)
        zero_of[lam] = (ts, ys, rhs)
        return zero is not None

    lam_lo = 0.5 * _barta_seed(problem)
    for _ in range(80):
        if not has_zero(lam_lo):
            break
        lam_lo *= 0.5
    else:
        raise NonConvergenceError("could not find a zero-free lower lam")
    lam_hi = lam_lo
    for _ in range(60):
        lam_hi *= 2.0
        if has_zero(lam_hi):
            break
    else:
        raise NonConvergenceError("no omega zero after 60 doublings of lam")

    iterations = 0
    while lam_hi - lam_lo > tol * lam_lo:
        if iterations >= 200:
            raise NonConvergenceError(
                "bisection did not reach tol=%g in 200 iterations" % tol)
        mid = 0.5 * (lam_lo + lam_hi)
        if has_zero(mid):
            lam_hi = mid
        else:
            lam_lo = mid
        iterations += 1

    # Report the largest certified zero-free lam; its trajectory is
    # positive on the whole open domain and already integrated.
    lam = lam_lo
    ts, ys, rhs = zero_of[lam]
    return lam, ts, ys, rhs, iterations


_SOLVE_CACHE = {}


def clear_solver_cache():
    """Drop memoized eigensolves (used by determinism checks)."""
    _SOLVE_CACHE.clear()


def solve_ball_eigenvalue(problem, tol=_DEFAULT_TOL, n_grid=_DEFAULT_GRID,
                          use_cache=True):
    """First Dirichlet p-eigenvalue of a ball, to relative accuracy tol.

    Returns a RadialSolution whose omega is positive on [0, r), decreasing,
    and vanishes at r up to the eigenvalue tolerance.  Results are
    memoized on (problem parameters, tol, n_grid); solves are pure, so the
    cache is transparent.
    """
    if problem.domain.kind != "ball":
        raise ValueError("solve_ball_eigenvalue needs a Ball domain")
    key = problem.cache_key(tol, n_grid)
    if use_cache and key in _SOLVE_CACHE:
        return _SOLVE_CACHE[key]
    lam, ts, ys, rhs, iterations = _solve(problem, tol, n_grid)
    startup = _Startup(problem.p, problem.m, problem.profile, lam, ts[0])
    sol = RadialSolution(problem, lam, ts, ys, rhs, iterations, n_grid,
                         startup=startup)
    if use_cache:
        _SOLVE_CACHE[key] = sol
    return sol


def solve_annulus_eigenvalue(problem, tol=_DEFAULT_TOL, n_grid=_DEFAULT_GRID,
                             use_cache=True):
    """First Dirichlet p-eigenvalue of an annulus, normalized to max 1."""
    if problem.domain.kind != "annulus":
        raise ValueError("solve_annulus_eigenvalue needs an Annulus domain")
    key = problem.cache_key(tol, n_grid)
    if use_cache and key in _SOLVE_CACHE:
        return _SOLVE_CACHE[key]
    lam, ts, ys, rhs, iterations = _solve(problem, tol, n_grid)
    # The true peak is where the flux Phi (sign of omega') crosses zero;
    # the mesh-node maximum undershoots it by O(step^2).
    peak = max(y[0] for y in ys)
    for k in range(1, len(ts)):
        if ys[k][1] <= 0.0 < ys[k - 1][1]:
            t_peak = _refine_zero(rhs, ts, ys, k, 1e-12 * (ts[-1] - ts[0]),
                                  comp=1)
            peak = _ode.rk4_between(rhs, ts[k - 1], ys[k - 1], t_peak)[0]
            break
    sol = RadialSolution(problem, lam, ts, ys, rhs, iterations, n_grid,
                         scale=1.0 / peak)
    if use_cache:
        _SOLVE_CACHE[key] = sol
    return sol


def eigen_equation_residual(solution, problem=None):
    """Scaled sup of the eigenvalue-equation defect on the solution grid.

    Evaluates (f^{m-1} |omega'|^{p-2} omega')' + lam f^{m-1} |omega|^{p-2}
    omega by 4th-order centered differences of the flux at interior nodes,
    normalized pointwise by lam f^{m-1} max|omega|^{p-1}.  Nodes within
    1% of the pole or with |omega| below 1% of the maximum are excluded;
    the degenerate flux is not finite-differentiable to this accuracy
    there.  Works on doctored solutions too: only the public arrays are
    read.
    """
    if problem is None:
        problem = solution.problem
    p, m, lam = problem.p, problem.m, solution.lam
    t = solution.grid
    w = solution.omega
    wp = solution.omega_prime
    h = t[1] - t[0]
    f = problem.profile.eval(t)[0]
    fm = f ** (m - 1) if m > 1 else np.ones_like(t)
    flux = fm * signed_power(wp, p - 1.0)
    n = t.size
    i = np.arange(2, n - 2)
    dflux = (flux[i - 2] - 8.0 * flux[i - 1] + 8.0 * flux[i + 1]
             - flux[i + 2]) / (12.0 * h)
    res = dflux + lam * fm[i] * signed_power(w[i], p - 1.0)
    denom = lam * fm[i] * np.max(np.abs(w)) ** (p - 1.0)
    keep = np.abs(w[i]) >= RESIDUAL_OMEGA_FLOOR * np.max(np.abs(w))
    if problem.domain.kind == "ball":
        keep &= t[i] >= RESIDUAL_POLE_FRAC * solution.r
    else:
        keep &= np.minimum(t[i] - t[0], t[-1] - t[i]) >= RESIDUAL_POLE_FRAC * (t[-1] - t[0])
        if p > 2.0:
            # the flux vanishes at the interior peak and omega'' blows up
            # like |flux|^((2-p)/(p-1)) there, so the stencil loses its
            # fourth-order accuracy in a thin strip around it
            keep &= np.abs(flux[i]) >= RESIDUAL_OMEGA_FLOOR * np.max(np.abs(flux))
    if not np.any(keep):
        raise ValueError("empty residual evaluation window")
    return float(np.max(np.abs(res[keep]) / denom[keep]))


def scaled_eigenvalue(lambda_unit, r, p, c=0.0):
    """Flat-case rescaling lam(B_r) = r^{-p} lam(B_1).

    The identity holds only for c = 0 (dilations are isometries up to
    scale there); any other curvature is rejected.
    """
    if c != 0.0:
        raise ValueError("the scaling law holds only for flat profiles")
    if r <= 0:
        raise ValueError("radius must be positive")
    return float(lambda_unit) * r ** (-p)
