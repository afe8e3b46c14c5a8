"""Recompute the frozen numeric fixtures used by the test suite.

Not collected by pytest (no ``test_`` prefix); run directly:

    python3 tests/oracles.py

Two kinds of value appear in the tests.  Closed-form oracles are
recomputed here from independent routes (special-function zeros,
elementary formulas, root-finding on the catalogued embeddings) and can
be compared digit-for-digit with the fixtures.  Scan/solver pins are
frozen outputs of this package's own deterministic algorithms; for
those the check printed here is grid/tolerance refinement consistency,
not an independent formula.
"""

import math

import numpy as np
from scipy import optimize, special

from ptone import critical, radial


def line(name, value, note=""):
    print("%-34s %.17g  %s" % (name, value, note))


def closed_forms():
    print("== closed-form oracles ==")
    j01 = special.jn_zeros(0, 1)[0]
    line("j01", j01)
    line("j01^2", j01 ** 2, "lambda(p=2, m=2, c=0, r=1)")
    line("pi^2", math.pi ** 2, "lambda(p=2, m=3, c=0, r=1); annulus m=3")
    for p in (1.5, 2.0, 3.0, 4.0):
        pi_p = 2.0 * math.pi / (p * math.sin(math.pi / p))
        line("pi_p(p=%g)" % p, pi_p)
        line("(p-1)(pi_p/2)^p, p=%g" % p, (p - 1.0) * (pi_p / 2.0) ** p,
             "lambda(m=1, ball r=1)")
    line("sinh(1)", math.sinh(1.0))
    line("coth(1)", 1.0 / math.tanh(1.0))
    line("((1 - 0)/2)^2", ((1.0 - 0.0) / 2.0) ** 2,
         "theorem17(m=3, p=2, c=0, r=1, h=0)")
    line("((coth1 - 1/2)/3)^3", ((1.0 / math.tanh(1.0) - 0.5) / 3.0) ** 3,
         "theorem17(m=3, p=3, c=-1, r=1, h=0.5)")


def catenoid_chords():
    print("\n== catenoid extrinsic-distance oracles ==")
    # Arclength parametrization: rho = sqrt(1+s^2), z = asinh(s); the
    # ambient distance from the axis point at the neck-circle center is
    # t(s) = sqrt(rho^2 + z^2) = sqrt(1 + s^2 + asinh(s)^2).
    t = lambda s: math.sqrt(1.0 + s * s + math.asinh(s) ** 2)

    def t_prime(s):
        return (s + math.asinh(s) / math.sqrt(1.0 + s * s)) / t(s)

    line("asinh(1)", math.asinh(1.0))
    line("t(1)", t(1.0), "sqrt(2 + asinh(1)^2)")
    line("|t'(2)|", abs(t_prime(2.0)), "angle_cos at s=2")
    for r in (1.1, 1.2):
        smax = optimize.brentq(lambda s: t(s) - r, 1e-9, 5.0, xtol=1e-14)
        line("smax(r=%g)" % r, smax, "root of t(s)=r")


def solver_pins():
    print("\n== solver pins (refinement consistency, not independent) ==")
    pins = [(2.0, 2, 0.0), (3.0, 2, 0.0), (2.0, 3, 0.0), (2.0, 2, -1.0),
            (2.0, 2, 1.0), (2.5, 2, 1.0), (3.0, 2, -1.0)]
    for p, m, c in pins:
        prob = radial.RadialProblem(p, m, radial.space_form(c),
                                    radial.Ball(1.0))
        base = radial.solve_ball_eigenvalue(prob)
        fine = radial.solve_ball_eigenvalue(prob, tol=1e-10)
        line("lambda(%g,%d,%g)" % (p, m, c), base.lam,
             "tol=1e-10 drift %.1e" % abs(fine.lam - base.lam))
        radial.clear_solver_cache()


def scan_pins():
    print("\n== critical-radius scan pins (refinement consistency) ==")
    for p in (3.0, 4.0):
        prob = radial.RadialProblem(p, 2, radial.space_form(1.0),
                                    radial.Ball(1.4))
        sol = radial.solve_ball_eigenvalue(prob)
        for n in (16384, 32768):
            rep = critical.compute_r_star(1.0, sol, n=n)
            line("spherical margin p=%g n=%d" % (p, n),
                 rep.diagnostics["positivity_margin"])
        radial.clear_solver_cache()
    for p in (3.0, 4.0):
        prob = radial.RadialProblem(p, 2, radial.space_form(-1.0),
                                    radial.Ball(1.0))
        sol = radial.solve_ball_eigenvalue(prob)
        for n in (16384, 32768):
            rep = critical.compute_r_star(-1.0, sol, n=n)
            line("hyperbolic r_star p=%g n=%d" % (p, n), rep.r_star)
        radial.clear_solver_cache()
    prob = radial.RadialProblem(3.0, 2, radial.space_form(0.0),
                                radial.Ball(1.0))
    sol = radial.solve_ball_eigenvalue(prob)
    for n in (16384, 32768):
        rep = critical.compute_r_star(0.0, sol, n=n)
        line("flat psi_min n=%d" % n, rep.diagnostics["psi_min"],
             "stays positive: no interior r_star")
        line("flat psi_final n=%d" % n, rep.diagnostics["psi_final"])
    radial.clear_solver_cache()


if __name__ == "__main__":
    closed_forms()
    catenoid_chords()
    solver_pins()
    scan_pins()
