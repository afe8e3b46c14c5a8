"""Adaptive Dormand-Prince 5(4) integration for two-state systems.

The radial eigenvalue ODE is a smooth two-dimensional first-order system
away from the pole, so an embedded 5(4) Runge-Kutta pair with proportional
step control is enough.  The module is private: it hardcodes the state as
a pair of floats because the shooting loop integrates (omega, flux) states
millions of times and tuple arithmetic beats tiny numpy arrays by a wide
margin there.

Dense re-evaluation between accepted mesh nodes uses four classical RK4
sub-steps from the nearest node at or before the query point.  Accepted
steps are short at the solver tolerances, so the sub-step error sits far
below the integration error itself.
"""

from bisect import bisect_right


class IntegrationError(RuntimeError):
    """Step-size underflow or NaN propagation inside the integrator."""


# Dormand-Prince coefficients (the classic ode45 pair).  The last row of
# the A matrix equals the 5th-order weights, so k7 of an accepted step is
# reused as k1 of the next (FSAL).
_C2, _C3, _C4, _C5 = 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0
_A21 = 1.0 / 5.0
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = (19372.0 / 6561.0, -25360.0 / 2187.0,
                          64448.0 / 6561.0, -212.0 / 729.0)
_A61, _A62, _A63, _A64, _A65 = (9017.0 / 3168.0, -355.0 / 33.0,
                                46732.0 / 5247.0, 49.0 / 176.0,
                                -5103.0 / 18656.0)
_B1, _B3, _B4, _B5, _B6 = (35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0,
                           -2187.0 / 6784.0, 11.0 / 84.0)
# Error weights: 5th-order minus 4th-order solution.
_E1 = _B1 - 5179.0 / 57600.0
_E3 = _B3 - 7571.0 / 16695.0
_E4 = _B4 - 393.0 / 640.0
_E5 = _B5 + 92097.0 / 339200.0
_E6 = _B6 - 187.0 / 2100.0
_E7 = -1.0 / 40.0


def integrate(f, t0, t1, y0, rtol=1e-12, atol=1e-12, max_step=None,
              first_step=None, stop=None, max_steps=1000000):
    """Integrate y' = f(t, y), y a pair of floats, from t0 to t1 (t1 > t0).

    Returns (ts, ys): the accepted mesh nodes and states, starting at
    (t0, y0).  If `stop(t, y)` returns True after an accepted step,
    integration ends there (the mesh still contains that step).

    Raises IntegrationError on step-size underflow or NaN propagation.
    """
    span = t1 - t0
    if span <= 0:
        raise ValueError("integrate requires t1 > t0")
    h = first_step if first_step is not None else 0.01 * span
    hmax = max_step if max_step is not None else span
    hmin = 1e-15 * span
    t = t0
    u, v = float(y0[0]), float(y0[1])
    ts = [t]
    ys = [(u, v)]
    k1u, k1v = f(t, (u, v))
    steps = 0
    while t < t1:
        if h > hmax:
            h = hmax
        if t + h > t1:
            h = t1 - t
        if h < hmin:
            raise IntegrationError("step-size underflow at t=%.12g" % t)
        steps += 1
        if steps > max_steps:
            raise IntegrationError("step limit exceeded at t=%.12g" % t)

        k2u, k2v = f(t + _C2 * h, (u + h * _A21 * k1u,
                                   v + h * _A21 * k1v))
        k3u, k3v = f(t + _C3 * h, (u + h * (_A31 * k1u + _A32 * k2u),
                                   v + h * (_A31 * k1v + _A32 * k2v)))
        k4u, k4v = f(t + _C4 * h, (u + h * (_A41 * k1u + _A42 * k2u + _A43 * k3u),
                                   v + h * (_A41 * k1v + _A42 * k2v + _A43 * k3v)))
        k5u, k5v = f(t + _C5 * h, (u + h * (_A51 * k1u + _A52 * k2u + _A53 * k3u
                                            + _A54 * k4u),
                                   v + h * (_A51 * k1v + _A52 * k2v + _A53 * k3v
                                            + _A54 * k4v)))
        k6u, k6v = f(t + h, (u + h * (_A61 * k1u + _A62 * k2u + _A63 * k3u
                                      + _A64 * k4u + _A65 * k5u),
                             v + h * (_A61 * k1v + _A62 * k2v + _A63 * k3v
                                      + _A64 * k4v + _A65 * k5v)))
        nu = u + h * (_B1 * k1u + _B3 * k3u + _B4 * k4u + _B5 * k5u + _B6 * k6u)
        nv = v + h * (_B1 * k1v + _B3 * k3v + _B4 * k4v + _B5 * k5v + _B6 * k6v)
        k7u, k7v = f(t + h, (nu, nv))

        eu = h * (_E1 * k1u + _E3 * k3u + _E4 * k4u + _E5 * k5u + _E6 * k6u
                  + _E7 * k7u)
        ev = h * (_E1 * k1v + _E3 * k3v + _E4 * k4v + _E5 * k5v + _E6 * k6v
                  + _E7 * k7v)
        su = atol + rtol * max(abs(u), abs(nu))
        sv = atol + rtol * max(abs(v), abs(nv))
        err = ((eu / su) ** 2 + (ev / sv) ** 2) ** 0.5 * 0.7071067811865476

        if err != err:  # NaN
            raise IntegrationError("NaN in the error estimate at t=%.12g" % t)
        if err <= 1.0:
            t += h
            u, v = nu, nv
            ts.append(t)
            ys.append((u, v))
            k1u, k1v = k7u, k7v
            if stop is not None and stop(t, (u, v)):
                break
            factor = 5.0 if err == 0.0 else min(5.0, 0.9 * err ** -0.2)
        else:
            factor = max(0.2, 0.9 * err ** -0.2)
        h *= factor
    return ts, ys


def rk4_between(f, t_from, y, t_to, nsub=4):
    """Advance y from t_from to t_to with nsub classical RK4 sub-steps."""
    h = (t_to - t_from) / nsub
    u, v = y
    t = t_from
    for _ in range(nsub):
        a1u, a1v = f(t, (u, v))
        a2u, a2v = f(t + 0.5 * h, (u + 0.5 * h * a1u, v + 0.5 * h * a1v))
        a3u, a3v = f(t + 0.5 * h, (u + 0.5 * h * a2u, v + 0.5 * h * a2v))
        a4u, a4v = f(t + h, (u + h * a3u, v + h * a3v))
        u += h * (a1u + 2.0 * a2u + 2.0 * a3u + a4u) / 6.0
        v += h * (a1v + 2.0 * a2v + 2.0 * a3v + a4v) / 6.0
        t += h
    return u, v


def dense_eval(f, ts, ys, t):
    """Evaluate the stored trajectory at t in [ts[0], ts[-1]].

    Restarts from the nearest mesh node at or before t, so repeated queries
    are independent and do not accumulate error.
    """
    if t <= ts[0]:
        return ys[0]
    if t >= ts[-1]:
        return ys[-1]
    k = bisect_right(ts, t) - 1
    if ts[k] == t:
        return ys[k]
    return rk4_between(f, ts[k], ys[k], t)
