"""Eigenvalue bounds and certificates for radial p-Laplacians.

Lower bounds come from three routes, each returning a BoundCertificate
that records the evaluated node range so a bound is never quietly
extrapolated into regions where finite differences are unreliable:

  * Barta: lambda >= inf over positive test fields eta of the ratio
    -Delta_p eta / eta^(p-1), sharp exactly at the eigenfunction.
  * Divergence fields: lambda >= inf of (1-p)|X|^q + div X for any
    radial field X, with q = p/(p-1); the optimizer is the logarithmic
    gradient field of the eigenfunction.
  * The sup-form variant lambda >= (inf div X / (p ||X||_inf))^p and the
    closed-form barrier ((m-2) cot_c(r) - h)^p / p^p for immersions with
    bounded mean curvature h.

The ratio -Delta_p eta / eta^(p-1) amplifies finite-difference noise
like h^2 / eta^(p-1) near a Dirichlet endpoint and like derivatives of
1/omega powers for the divergence identity, so every certificate here
evaluates on an explicit interior window (relative floor on eta, a pole
guard, and trimmed boundary layers) chosen so the stencil error stays
below the certificate tolerances.

The Kazdan transform v = -log(phi) and its source Psi = Delta_p v
- (p-1)|v'|^p live here too: for phi the eigenfunction, Psi is
identically lambda, which gives a derivative-free consistency check on
any eigenpair.
"""

import numpy as np

from .modelspace import cot_c
from .radial import signed_power
from .rayleigh import p_energy, _values, Grid1D, DiscreteField

BARTA_ETA_FLOOR = 0.05      # keep nodes with eta >= floor * max eta
BARTA_POLE_FRAC = 0.02      # drop ball nodes with t < frac * r
BOUNDARY_LAYERS = 2         # stencil cells trimmed at each kept end
DIV_OMEGA_FLOOR = 0.25      # eigen_field keeps omega >= floor * max


class RadialField:
    """A radial vector field t -> X(t) d/dt sampled on increasing nodes."""

    def __init__(self, nodes, values, label="field"):
        self.nodes = np.asarray(nodes, dtype=float)
        self.values = np.asarray(values, dtype=float)
        if self.nodes.shape != self.values.shape or self.nodes.ndim != 1:
            raise ValueError("nodes and values must be 1-d of equal length")
        if np.any(np.diff(self.nodes) <= 0):
            raise ValueError("nodes must be strictly increasing")
        self.label = label


class BoundCertificate:
    """A certified one-sided bound with its evaluation provenance."""

    def __init__(self, kind, value, problem, witness, evaluation_range,
                 vacuous=False, data=None):
        self.kind = kind
        self.value = float(value)
        self.problem = problem
        self.witness = witness
        self.evaluation_range = (int(evaluation_range[0]),
                                 int(evaluation_range[1]))
        self.vacuous = bool(vacuous)
        self.data = dict(data or {})

    def to_json(self):
        out = {"kind": self.kind, "value": self.value,
               "problem": self.problem,
               "evaluation_range": list(self.evaluation_range)}
        if self.vacuous:
            out["vacuous"] = True
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def problem_summary(problem):
    d = problem.domain
    dom = ["ball", d.r] if d.kind == "ball" else ["annulus", d.a, d.b]
    return {"p": problem.p, "m": problem.m,
            "profile": problem.profile.describe(), "domain": dom}


def _default_nodes(problem, n):
    d = problem.domain
    lo, hi = (0.0, d.r) if d.kind == "ball" else (d.a, d.b)
    return np.linspace(lo, hi, n)


def _weight_at(problem, t):
    f = problem.profile.eval(t)[0]
    return f ** (problem.m - 1) if problem.m > 1 else np.ones_like(f)


def discrete_plap_radial(eta, problem, nodes):
    """Staggered-difference Delta_p eta at interior nodes (index 1..n-2).

    The flux f^{m-1}|eta'|^{p-2} eta' is formed at cell midpoints with the
    weight evaluated there exactly, then differenced back to nodes; both
    stages are second-order on uniform grids.
    """
    vals = _values(eta)
    nodes = np.asarray(nodes, dtype=float)
    if vals.shape != nodes.shape:
        raise ValueError("eta and nodes must have equal length")
    h = np.diff(nodes)
    mid = 0.5 * (nodes[:-1] + nodes[1:])
    wmid = _weight_at(problem, mid)
    flux = wmid * signed_power(np.diff(vals) / h, problem.p - 1.0)
    wnode = _weight_at(problem, nodes[1:-1])
    hc = 0.5 * (h[:-1] + h[1:])
    return np.diff(flux) / (hc * wnode)


def _interior_window(vals, nodes, problem, floor, pole_frac, layers):
    """Indices (into the interior range 1..n-2) kept for ratio bounds."""
    inner = vals[1:-1]
    keep = inner >= floor * float(np.max(np.abs(vals)))
    if problem.domain.kind == "ball":
        keep &= nodes[1:-1] >= pole_frac * problem.domain.r
    idx = np.flatnonzero(keep)
    if idx.size <= 2 * layers:
        raise ValueError("evaluation window is empty; eta is too thin")
    return idx[layers:idx.size - layers]


def barta_bound(eta, problem, nodes=None, *, eta_floor=BARTA_ETA_FLOOR,
                pole_frac=BARTA_POLE_FRAC, layers=BOUNDARY_LAYERS):
    """Lower bound inf(-Delta_p eta / eta^(p-1)) over a positive field.

    eta must be positive on interior nodes and vanish at Dirichlet
    endpoints; the infimum is taken over the windowed interior where the
    staggered stencil meets its accuracy budget.
    """
    vals = _values(eta)
    if nodes is None:
        nodes = _default_nodes(problem, vals.size)
    nodes = np.asarray(nodes, dtype=float)
    if np.any(vals[1:-1] <= 0):
        raise ValueError("eta must be positive on interior nodes")
    plap = discrete_plap_radial(vals, problem, nodes)
    idx = _interior_window(vals, nodes, problem, eta_floor, pole_frac, layers)
    ratio = -plap[idx] / vals[1:-1][idx] ** (problem.p - 1.0)
    k = int(np.argmin(ratio))
    return BoundCertificate(
        kind="barta", value=float(ratio[k]), problem=problem_summary(problem),
        witness="inf -Delta_p eta / eta^(p-1) at t=%.6g" % nodes[1:-1][idx][k],
        evaluation_range=(idx[0] + 1, idx[-1] + 1),
        data={"n_evaluated": int(idx.size)})


def picone_defect(u, grad_u, v, grad_v, p):
    """Pointwise Picone expression; nonnegative, zero iff u is a multiple of v.

    All four arguments are sampled values of nonnegative u, positive v and
    their (signed, radial) gradients at common points.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    gu = np.asarray(grad_u, dtype=float)
    gv = np.asarray(grad_v, dtype=float)
    if np.any(v <= 0):
        raise ValueError("v must be positive")
    if np.any(u < 0):
        raise ValueError("u must be nonnegative")
    w = u / v
    return (np.abs(gu) ** p + (p - 1.0) * w ** p * np.abs(gv) ** p
            - p * w ** (p - 1.0) * signed_power(gv, p - 1.0) * gu)


def eigen_field(solution, omega_floor=DIV_OMEGA_FLOOR):
    """The optimal divergence field X = -|omega'|^{p-2} omega' / omega^{p-1}.

    Restricted to nodes where omega >= omega_floor * max omega: past that
    the field blows up like omega^{1-p} toward the Dirichlet endpoint and
    certifies nothing that the kept window does not already certify.
    """
    p = solution.problem.p
    om, dom = solution.omega, solution.omega_prime
    keep = om >= omega_floor * float(np.max(om))
    idx = np.flatnonzero(keep)
    i0, i1 = int(idx[0]), int(idx[-1])
    if i1 - i0 + 1 != idx.size:
        raise ValueError("omega window is not contiguous")
    sl = slice(i0, i1 + 1)
    x = -signed_power(dom[sl], p - 1.0) / om[sl] ** (p - 1.0)
    return RadialField(solution.grid[sl], x,
                       label="eigen_field(p=%g, floor=%g)" % (p, omega_floor))


def div_radial(field, problem, *, order=4):
    """(f^{m-1} X)' / f^{m-1} on interior nodes of the field's uniform grid.

    order=4 uses the five-point centered stencil (values on indices
    2..n-3), order=2 the three-point one (1..n-2).
    """
    t = field.nodes
    h = np.diff(t)
    if not np.allclose(h, h[0], rtol=1e-9):
        raise ValueError("div_radial needs a uniform grid")
    h = float(h[0])
    g = _weight_at(problem, t) * field.values
    w_in = None
    if order == 4:
        d = (g[:-4] - 8 * g[1:-3] + 8 * g[3:-1] - g[4:]) / (12 * h)
        w_in = _weight_at(problem, t[2:-2])
    elif order == 2:
        d = (g[2:] - g[:-2]) / (2 * h)
        w_in = _weight_at(problem, t[1:-1])
    else:
        raise ValueError("order must be 2 or 4")
    return d / w_in


def div_field_bound(field, problem, *, layers=BOUNDARY_LAYERS,
                    pole_frac=BARTA_POLE_FRAC):
    """Lower bound inf over the window of (1-p)|X|^q + div X, q = p/(p-1).

    Any radial field gives a valid lower bound; the eigen_field makes it
    sharp (the expression is then identically lambda).
    """
    p = problem.p
    q = p / (p - 1.0)
    dv = div_radial(field, problem, order=4)
    t_in = field.nodes[2:-2]
    expr = (1.0 - p) * np.abs(field.values[2:-2]) ** q + dv
    keep = np.ones(t_in.size, dtype=bool)
    if problem.domain.kind == "ball":
        keep &= t_in >= pole_frac * problem.domain.r
    idx = np.flatnonzero(keep)
    if idx.size <= 2 * layers:
        raise ValueError("field has too few nodes for a windowed bound")
    idx = idx[layers:idx.size - layers]
    k = int(np.argmin(expr[idx]))
    return BoundCertificate(
        kind="div-field", value=float(expr[idx][k]),
        problem=problem_summary(problem),
        witness="inf (1-p)|X|^q + div X over %s" % field.label,
        evaluation_range=(idx[0] + 2, idx[-1] + 2),
        data={"q": q, "n_evaluated": int(idx.size)})


def div_identity_residual(solution, omega_floor=DIV_OMEGA_FLOOR):
    """sup |((1-p)|X|^q + div X) - lambda| / lambda for the eigen field.

    The continuum identity says the expression is exactly lambda; the
    residual measures stencil error over the certificate window.
    """
    problem = solution.problem
    field = eigen_field(solution, omega_floor)
    cert = div_field_bound(field, problem)
    p, q = problem.p, problem.p / (problem.p - 1.0)
    dv = div_radial(field, problem, order=4)
    expr = (1.0 - p) * np.abs(field.values[2:-2]) ** q + dv
    i0, i1 = cert.evaluation_range
    window = expr[i0 - 2:i1 - 1]
    return float(np.max(np.abs(window - solution.lam)) / solution.lam)


def div_sup_bound(field, problem, *, layers=BOUNDARY_LAYERS,
                  pole_frac=BARTA_POLE_FRAC):
    """Lower bound (inf div X / (p ||X||_inf))^p, vacuous if inf div <= 0."""
    p = problem.p
    dv = div_radial(field, problem, order=4)
    t_in = field.nodes[2:-2]
    keep = np.ones(t_in.size, dtype=bool)
    if problem.domain.kind == "ball":
        keep &= t_in >= pole_frac * problem.domain.r
    idx = np.flatnonzero(keep)
    if idx.size <= 2 * layers:
        raise ValueError("field has too few nodes for a windowed bound")
    idx = idx[layers:idx.size - layers]
    inf_div = float(np.min(dv[idx]))
    sup_x = float(np.max(np.abs(field.values)))
    if sup_x == 0.0:
        raise ValueError("field is identically zero")
    vacuous = inf_div <= 0.0
    value = 0.0 if vacuous else (inf_div / (p * sup_x)) ** p
    return BoundCertificate(
        kind="div-sup", value=value, problem=problem_summary(problem),
        witness="(inf div X / (p sup |X|))^p over %s" % field.label,
        evaluation_range=(idx[0] + 2, idx[-1] + 2),
        vacuous=vacuous, data={"inf_div": inf_div, "sup_X": sup_x})


def theorem17_bound(m, p, c, r, h=0.0):
    """Closed-form barrier ((m-2) cot_c(r) - h)^p / p^p.

    Valid for immersed domains inside a ball of radius r in the curvature-c
    model when the mean curvature is bounded by h; vacuous (value 0) when
    the barrier base is nonpositive.
    """
    if m < 2:
        raise ValueError("needs ambient dimension m >= 2")
    base = (m - 2) * cot_c(float(c), float(r)) - float(h)
    vacuous = base <= 0.0
    value = 0.0 if vacuous else (base / p) ** p
    return BoundCertificate(
        kind="cotangent-barrier", value=value,
        problem={"m": m, "p": p, "c": c, "r": r, "h": h},
        witness="((m-2) cot_c(r) - h)/p to the p-th power",
        evaluation_range=(0, 0), vacuous=vacuous, data={"base": base})


def transplant_barta_certificate(flat_solution, problem):
    """Barta certificate for the flat eigenfunction transplanted radially.

    For eta = omega_flat(t) on a warped ball of the same radius, the ratio
    -Delta_p eta / eta^(p-1) has the closed form

        lambda_flat + (m-1) (f'/f - 1/t) |eta'|^{p-1} / eta^{p-1},

    exact because eta satisfies the flat radial equation: no differencing
    enters, so the certificate resolves the equality case f = t to machine
    precision.  The correction term is nonnegative exactly when f is at
    least as spread as the flat profile (f'/f >= 1/t, e.g. f convex).
    """
    fp = flat_solution.problem
    if problem.domain.kind != "ball" or fp.domain.kind != "ball":
        raise ValueError("transplant certificates are for balls")
    if problem.domain.r != fp.domain.r or problem.m != fp.m \
            or problem.p != fp.p:
        raise ValueError("flat solution and target problem must share "
                         "p, m and radius")
    if fp.profile.kind != "spaceform" or fp.profile.c != 0.0:
        raise ValueError("flat_solution must be on the c=0 model")
    p, m, lam = fp.p, fp.m, flat_solution.lam
    om, dom, t = flat_solution.omega, flat_solution.omega_prime, \
        flat_solution.grid
    keep = (om >= 1e-6 * float(np.max(om))) & (t > 0)
    idx = np.flatnonzero(keep)
    t_k = t[idx]
    f, fprime, _ = problem.profile.eval(t_k)
    margin = (m - 1) * (fprime / f - 1.0 / t_k) \
        * np.abs(dom[idx]) ** (p - 1.0) / om[idx] ** (p - 1.0)
    values = lam + margin
    k = int(np.argmin(values))
    return BoundCertificate(
        kind="transplant-barta", value=float(values[k]),
        problem=problem_summary(problem),
        witness="flat eigenfunction transplanted along the radius",
        evaluation_range=(int(idx[0]), int(idx[-1])),
        data={"lambda_flat": lam, "min_margin": float(margin[k]),
              "argmin_t": float(t_k[k])})


def stability_functional(u, potential, grid, p):
    """Q_p(u) = p-energy - sum w V |u|^p h over the grid quadrature."""
    vals = _values(u)
    pot = np.broadcast_to(np.asarray(potential, dtype=float), vals.shape)
    mass = float(np.sum(grid.weight * pot * np.abs(vals) ** p
                        * grid.dual_sizes()))
    return p_energy(vals, grid, p) - mass


def stability_criterion_immersion(sup_A_p, k, p, lambda_model):
    """Stability test sup ||A||^p <= k^{p-2} lambda_model.

    k is the infimum of cos(angle between the radial direction and the
    tangent plane) over the band; at p = 2 the k factor drops out, so k=0
    is accepted there, while for p > 2 a zero k makes the test vacuous
    (threshold 0).
    """
    if not 0.0 <= k <= 1.0:
        raise ValueError("k must lie in [0, 1]")
    if sup_A_p < 0:
        raise ValueError("sup ||A||^p must be nonnegative")
    threshold = lambda_model if p == 2.0 else k ** (p - 2.0) * lambda_model
    return bool(sup_A_p <= threshold)


def meancurv_threshold(m, p, r):
    """Mean-curvature stability threshold (m-1)/(p r)."""
    return (m - 1) / (p * float(r))


def stability_criterion_meancurv(A_sup, m, p, r):
    """Stability test sup ||A|| <= (m-1)/(p r) for minimal bands in a ball."""
    if A_sup < 0:
        raise ValueError("sup ||A|| must be nonnegative")
    return bool(A_sup <= meancurv_threshold(m, p, r))


def meancurv_crosscheck(A_sup, m, p, r):
    """Report how the (m-1)/(pr) threshold sits against the cotangent barrier.

    The barrier route would give ((m-2)/(pr))^p for a flat ambient ball,
    whose p-th root uses m-2 where the threshold uses m-1; the discrepancy
    is reported for inspection, not enforced.
    """
    thr = meancurv_threshold(m, p, r)
    barrier = theorem17_bound(m, p, 0.0, r, 0.0)
    alt = barrier.value ** (1.0 / p) if not barrier.vacuous else 0.0
    return {"threshold": thr, "barrier_root": alt,
            "verdict": bool(A_sup <= thr),
            "barrier_verdict": bool(A_sup <= alt) if alt > 0 else None,
            "note": "threshold uses m-1, barrier root uses m-2"}


def radius_lower_bound(k, p, lambda_unit_ball, lambda_omega):
    """Radius bound (k^{p-2} lambda_unit / lambda_Omega)^{1/p} from scaling."""
    if lambda_omega <= 0 or lambda_unit_ball <= 0:
        raise ValueError("eigenvalues must be positive")
    if not 0.0 < k <= 1.0:
        raise ValueError("k must lie in (0, 1]")
    return (k ** (p - 2.0) * lambda_unit_ball / lambda_omega) ** (1.0 / p)


def kazdan_transform(phi):
    """v = -log(phi); phi must be strictly positive on the given nodes."""
    vals = _values(phi)
    if np.any(vals <= 0):
        raise ValueError("phi must be positive away from the boundary")
    return -np.log(vals)


def kazdan_source(v, problem, nodes):
    """Psi = Delta_p v - (p-1)|v'|^p at interior nodes (index 1..n-2).

    For v = -log(eigenfunction), Psi equals lambda identically, boundary
    blow-up notwithstanding; the caller restricts nodes to an interior
    window where v is finite.
    """
    vals = _values(v)
    nodes = np.asarray(nodes, dtype=float)
    plap = discrete_plap_radial(vals, problem, nodes)
    h = np.diff(nodes)
    grad = (vals[2:] - vals[:-2]) / (h[:-1] + h[1:])
    return plap - (problem.p - 1.0) * np.abs(grad) ** problem.p
