"""Residual certification of locally conformally Kähler identities.

Checks are sampling-based: each one evaluates symbolic identities at seeded
annulus points and reports the worst residual against a tolerance.  Reports
are plain dataclasses with a fixed JSON shape so that identical inputs
produce byte-identical output.

Two conventions used throughout:

* Pass/fail is always ``max_residual < tolerance``.  Checks that are
  naturally boolean (definiteness, fixed-point freeness, contraction) encode
  a signed margin as the residual — negative means pass — with tolerance 0.
* Default tolerances: 1e-10 for identities with rational-function
  coefficients, 1e-8 for identities routed through the Newton-based
  implicit radial coordinate (the Newton residual is ~1e-12 and implicit
  differentiation amplifies it).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import expr as ex
from . import forms as fm
from .hopf import HopfSurfaceCatalogEntry
from .maps import PolyAutomorphism, contraction_test, fixed_point_free_check
from .sampling import annulus_points

__all__ = [
    "VerificationReport", "LeeSolveResult", "SuiteConfig",
    "solve_lee_pointwise", "solve_lee_many",
    "verify_lck", "verify_potential", "verify_invariance",
    "run_suite", "suite_passed", "reports_to_json", "jsonify",
    "DegenerateOmega", "NonPositivePotential",
    "RATIONAL_TOL", "IMPLICIT_TOL", "LEE_DET_EPS",
]

RATIONAL_TOL = 1e-10
IMPLICIT_TOL = 1e-8
LEE_DET_EPS = 1e-10
FIXED_POINT_TOL = 1e-8
WORST_POINTS = 3


class DegenerateOmega(ValueError):
    """The 2-form is (near) degenerate at the requested point."""


class NonPositivePotential(ValueError):
    """A candidate potential fails to be real and positive on the samples."""


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VerificationReport:
    """One named check: status is pass exactly when max_residual < tolerance."""

    check_name: str
    status: str
    max_residual: float
    tolerance: float
    num_points: int
    seed: int
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return jsonify({
            "check_name": self.check_name,
            "status": self.status,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "num_points": self.num_points,
            "seed": self.seed,
            "details": self.details,
        })


@dataclass(frozen=True)
class LeeSolveResult:
    """Pointwise Lee-form recovery: theta solving d Omega = theta ^ Omega."""

    point: tuple
    theta_coeffs: tuple  # 2n coefficients in the basis (dz_i, dzbar_i)
    residual: float
    reality_defect: float

    def to_json(self) -> dict:
        return jsonify({
            "point": list(self.point),
            "theta_coeffs": list(self.theta_coeffs),
            "residual": self.residual,
            "reality_defect": self.reality_defect,
        })


def jsonify(obj):
    """Recursively coerce reports to JSON-safe values; complex -> [re, im]."""
    if isinstance(obj, dict):
        return {str(k): jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonify(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, str) or obj is None:
        return obj
    if isinstance(obj, (complex, np.complexfloating)):
        c = complex(obj)
        return [c.real, c.imag]
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return [jsonify(v) for v in obj.tolist()]
    raise TypeError("cannot serialize %r" % type(obj))


def _status(max_residual: float, tolerance: float) -> str:
    return "pass" if max_residual < tolerance else "fail"


def _auto_tolerance(*objects) -> float:
    for obj in objects:
        if obj is None:
            continue
        if getattr(obj, "has_implicit", False):
            return IMPLICIT_TOL
    return RATIONAL_TOL


def _pointwise_residual(a: fm.ExteriorForm, pts, memo=None) -> np.ndarray:
    """Per-point max absolute coefficient of a form (0 where it has none)."""
    pts = np.asarray(pts, dtype=complex)
    vals = fm.evaluate_form_many(a, pts, memo=memo)
    out = np.zeros(pts.shape[0], dtype=float)
    for arr in vals.values():
        out = np.maximum(out, np.abs(arr))
    return out


def _worst_points(pts, residuals, top: int = WORST_POINTS):
    order = np.argsort(residuals)[::-1][:top]
    return [{"point": [complex(c) for c in pts[k]],
             "residual": float(residuals[k])} for k in order]


# ---------------------------------------------------------------------------
# Lee-form recovery
# ---------------------------------------------------------------------------


def _wedge_sign(a: int, pair) -> tuple | None:
    """Index and sign of e_a ^ e_i ^ e_j for i < j, or None if degenerate."""
    i, j = pair
    if a == i or a == j:
        return None
    if a < i:
        return (a, i, j), 1.0
    if a < j:
        return (i, a, j), -1.0
    return (i, j, a), 1.0


def solve_lee_many(Omega: fm.ExteriorForm, points):
    """Least-squares Lee form at each point; see solve_lee_pointwise."""
    if Omega.degree != 2:
        raise ValueError("Lee solve expects a 2-form")
    n = Omega.ambient_dim
    nn = 2 * n
    pts = np.asarray(points, dtype=complex)
    memo = {}
    omega_vals = fm.evaluate_form_many(Omega, pts, memo=memo)
    dom_vals = fm.evaluate_form_many(fm.exterior_d(Omega), pts, memo=memo)
    triples = list(itertools.combinations(range(nn), 3))
    row_of = {t: r for r, t in enumerate(triples)}

    results = []
    for k in range(pts.shape[0]):
        mat = np.zeros((nn, nn), dtype=complex)
        for (i, j), arr in omega_vals.items():
            mat[i, j] = arr[k]
            mat[j, i] = -arr[k]
        det = abs(np.linalg.det(mat))
        if det <= LEE_DET_EPS:
            raise DegenerateOmega(
                "2-form degenerate at point %d (|det| = %.3g)" % (k, det))
        design = np.zeros((len(triples), nn), dtype=complex)
        for a in range(nn):
            for pair, arr in omega_vals.items():
                hit = _wedge_sign(a, pair)
                if hit is None:
                    continue
                triple, sign = hit
                design[row_of[triple], a] += sign * arr[k]
        target = np.zeros(len(triples), dtype=complex)
        for triple, arr in dom_vals.items():
            target[row_of[triple]] = arr[k]
        coeffs, *_ = np.linalg.lstsq(design, target, rcond=None)
        residual = float(np.max(np.abs(design @ coeffs - target)))
        reality = float(max(abs(coeffs[n + i] - np.conj(coeffs[i]))
                            for i in range(n)))
        results.append(LeeSolveResult(
            tuple(complex(c) for c in pts[k]),
            tuple(complex(c) for c in coeffs), residual, reality))
    return results


def solve_lee_pointwise(Omega: fm.ExteriorForm, point) -> LeeSolveResult:
    """Solve d Omega = theta ^ Omega for theta at a single point.

    The 2n unknown coefficients of theta in the covector basis are fitted by
    least squares against the 3-form d Omega; for a nondegenerate Omega in
    complex dimension >= 2 the solution is unique.  Raises DegenerateOmega
    when the antisymmetric coefficient matrix of Omega is near singular.
    """
    return solve_lee_many(Omega, [tuple(point)])[0]


# ---------------------------------------------------------------------------
# Identity checks
# ---------------------------------------------------------------------------


def verify_lck(Omega: fm.ExteriorForm, theta: fm.ExteriorForm, points,
               tolerance: float | None = None, seed: int = 0,
               check_name: str = "lck") -> VerificationReport:
    """Check d Omega = theta ^ Omega and d theta = 0 over the samples.

    Pass requires both residuals under the tolerance.  The report also
    carries the definiteness classification of the (1,1) part of Omega —
    the sign is recorded, not asserted.
    """
    if Omega.ambient_dim != theta.ambient_dim:
        raise ex.DimensionMismatch("forms live in different dimensions")
    tol = _auto_tolerance(Omega, theta) if tolerance is None else float(tolerance)
    pts = np.asarray(points, dtype=complex)
    memo = {}
    lck_res = _pointwise_residual(
        fm.exterior_d(Omega) - fm.wedge(theta, Omega), pts, memo=memo)
    closed_res = _pointwise_residual(fm.exterior_d(theta), pts, memo=memo)
    details = {
        "lck_residual": float(lck_res.max(initial=0.0)),
        "lee_closedness_residual": float(closed_res.max(initial=0.0)),
        "worst_points": _worst_points(pts, np.maximum(lck_res, closed_res)),
    }
    try:
        rep = fm.definiteness(fm.bidegree_part(Omega, 1, 1), pts)
        details["definiteness"] = {
            "is_definite": rep.is_definite,
            "is_semidefinite": rep.is_semidefinite,
            "sign": rep.sign,
            "min_abs_eigenvalue": rep.min_abs_eigenvalue,
        }
    except (fm.NotType11, fm.NonHermitian) as err:
        details["definiteness"] = {"error": str(err)}
    worst = max(details["lck_residual"], details["lee_closedness_residual"])
    return VerificationReport(check_name, _status(worst, tol), worst, tol,
                              int(pts.shape[0]), seed, details)


def _axis_points(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex)


def _generator_list(group):
    """Named generators: the cyclic one plus non-identity finite elements."""
    gens = [("cyclic", group.cyclic_generator)]
    for k, u in group.non_identity_elements():
        gens.append(("finite[%d]" % k, PolyAutomorphism.from_matrix(u)))
    return gens


def verify_potential(Phi: ex.Expression, group, points,
                     tolerance: float | None = None, seed: int = 0,
                     check_name: str = "potential_homothety") -> VerificationReport:
    """Check that the group acts on the potential by pointwise-constant ratios.

    The coordinate axis points are always appended to the samples, so the
    directional dependence of a non-homothetic action (the negative control)
    is witnessed deterministically.  Builds omega = -i del delbar Phi, checks
    it is closed, records its definiteness, and for every generator reports
    the mean ratio Phi(g z)/Phi(z) and the spread (max - min) across points;
    pass requires every spread under the tolerance and every ratio positive.
    """
    tol = _auto_tolerance(Phi) if tolerance is None else float(tolerance)
    n = group.dim
    pts = np.concatenate([_axis_points(n), np.asarray(points, dtype=complex)])
    memo = {}
    vals = ex.evaluate_many(Phi, pts, memo=memo)
    if float(np.max(np.abs(vals.imag))) > 1e-12 or float(vals.real.min()) <= 0:
        raise NonPositivePotential(
            "potential must be real and positive on the samples "
            "(worst imaginary part %.3g, min real part %.3g)"
            % (float(np.max(np.abs(vals.imag))), float(vals.real.min())))

    dbar = fm.del_and_delbar(fm.scalar_form(n, Phi))[1]
    omega_tilde = fm.del_and_delbar(dbar)[0].scale(-1j)
    closed = float(_pointwise_residual(fm.exterior_d(omega_tilde), pts,
                                       memo=memo).max(initial=0.0))
    details = {"closedness_residual": closed, "generators": []}
    try:
        rep = fm.definiteness(omega_tilde, pts)
        details["definiteness"] = {
            "is_definite": rep.is_definite,
            "sign": rep.sign,
            "min_abs_eigenvalue": rep.min_abs_eigenvalue,
        }
    except (fm.NotType11, fm.NonHermitian) as err:
        details["definiteness"] = {"error": str(err)}

    worst = closed
    for name, gen in _generator_list(group):
        moved = ex.evaluate_many(Phi, gen.eval_many(pts))
        ratios = (moved / vals).real
        rho = float(ratios.mean())
        spread = float(ratios.max() - ratios.min())
        details["generators"].append(
            {"generator": name, "rho": rho, "deviation": spread})
        worst = max(worst, spread)
        if rho <= 0:
            worst = max(worst, 1.0)
            details["nonpositive_ratio"] = True
    return VerificationReport(check_name, _status(worst, tol), worst, tol,
                              int(pts.shape[0]), seed, details)


def verify_invariance(a: fm.ExteriorForm, g: PolyAutomorphism, points,
                      tolerance: float | None = None, seed: int = 0,
                      check_name: str = "invariance") -> VerificationReport:
    """Max residual of pullback(g, a) - a over the samples."""
    tol = _auto_tolerance(a) if tolerance is None else float(tolerance)
    pts = np.asarray(points, dtype=complex)
    diff = fm.pullback(g.as_expressions(), a) - a
    res = _pointwise_residual(diff, pts)
    worst = float(res.max(initial=0.0))
    details = {"worst_points": _worst_points(pts, res)}
    return VerificationReport(check_name, _status(worst, tol), worst, tol,
                              int(pts.shape[0]), seed, details)


# ---------------------------------------------------------------------------
# The suite
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SuiteConfig:
    """Sampling and contraction parameters for run_suite."""

    points: int = 1000
    seed: int = 42
    tol: float | None = None
    contraction_radius: float = 1.0
    contraction_eps: float = 1e-6
    contraction_max_iter: int = 1000

    def __post_init__(self):
        if self.points < 1:
            raise ValueError("points must be >= 1, got %d" % self.points)
        if self.tol is not None and not self.tol > 0:
            raise ValueError("tol must be positive, got %r" % (self.tol,))


def _margin_report(check_name, margin, num_points, seed, details):
    return VerificationReport(check_name, _status(margin, 0.0), float(margin),
                              0.0, num_points, seed, details)


def run_suite(entry: HopfSurfaceCatalogEntry,
              config: SuiteConfig | None = None):
    """Run every applicable check on a catalog entry, in a fixed order.

    Order: lcK residual, Lee closedness, definiteness of Omega, potential
    homothety (entries with a potential), invariance of theta and psi under
    all group generators, fixed-point freeness of the finite part, and the
    contraction property of the cyclic generator.  A generator that is not
    itself a contraction but is linear is retried through its inverse, since
    either orientation of the deck action presents the same quotient.
    """
    config = config or SuiteConfig()
    pts = annulus_points(entry.ambient_dim, config.points, config.seed)
    tol = config.tol
    if tol is None:
        tol = _auto_tolerance(*entry.forms.values(), entry.potential)
    reports = []
    forms = entry.forms
    memo = {}

    if "Omega" in forms and "theta" in forms:
        om, th = forms["Omega"], forms["theta"]
        lck_res = _pointwise_residual(fm.exterior_d(om) - fm.wedge(th, om),
                                      pts, memo=memo)
        worst = float(lck_res.max(initial=0.0))
        reports.append(VerificationReport(
            "lck_residual", _status(worst, tol), worst, tol, config.points,
            config.seed, {"worst_points": _worst_points(pts, lck_res)}))

        closed_res = _pointwise_residual(fm.exterior_d(th), pts, memo=memo)
        worst = float(closed_res.max(initial=0.0))
        reports.append(VerificationReport(
            "lee_closedness", _status(worst, tol), worst, tol, config.points,
            config.seed, {"worst_points": _worst_points(pts, closed_res)}))

    if "Omega" in forms:
        try:
            rep = fm.definiteness(fm.bidegree_part(forms["Omega"], 1, 1), pts)
            ok = rep.is_definite and rep.sign is not None
            margin = -rep.min_abs_eigenvalue if ok else 1.0
            details = {"is_definite": rep.is_definite,
                       "is_semidefinite": rep.is_semidefinite,
                       "sign": rep.sign,
                       "min_abs_eigenvalue": rep.min_abs_eigenvalue}
        except (fm.NotType11, fm.NonHermitian) as err:
            margin, details = 1.0, {"error": str(err)}
        reports.append(_margin_report("definiteness", margin, config.points,
                                      config.seed, details))

    if entry.potential is not None:
        reports.append(verify_potential(entry.potential, entry.group, pts,
                                        tolerance=tol, seed=config.seed))

    for key in ("theta", "psi"):
        if key not in forms:
            continue
        worst = 0.0
        details = {"generators": []}
        for name, gen in _generator_list(entry.group):
            diff = fm.pullback(gen.as_expressions(), forms[key]) - forms[key]
            res = float(_pointwise_residual(diff, pts).max(initial=0.0))
            details["generators"].append({"generator": name, "residual": res})
            worst = max(worst, res)
        reports.append(VerificationReport(
            "invariance_%s" % key, _status(worst, tol), worst, tol,
            config.points, config.seed, details))

    fpf = fixed_point_free_check(entry.group, tol=FIXED_POINT_TOL)
    margin = FIXED_POINT_TOL - fpf.min_distance if fpf.distances else -1.0
    reports.append(_margin_report(
        "fixed_point_free", margin,
        len(entry.group.finite_part), config.seed,
        {"is_free": fpf.is_free,
         "min_distance": fpf.min_distance if fpf.distances else None,
         "distances": [{"element": k, "distance": d}
                       for k, d in fpf.distances]}))

    gen = entry.group.cyclic_generator
    first = contraction_test(gen, radius=config.contraction_radius,
                             eps=config.contraction_eps,
                             max_iter=config.contraction_max_iter)
    certified, which = first, "generator"
    if not first.is_contraction and gen.is_linear():
        second = contraction_test(gen.inverse_linear(),
                                  radius=config.contraction_radius,
                                  eps=config.contraction_eps,
                                  max_iter=config.contraction_max_iter)
        if second.is_contraction:
            certified, which = second, "generator_inverse"
    margin = certified.spectral_radius - 1.0 if certified.is_contraction else 1.0
    reports.append(_margin_report(
        "contraction", margin, certified.num_points, config.seed,
        {"certified_map": which if certified.is_contraction else None,
         "is_contraction": certified.is_contraction,
         "spectral_radius": certified.spectral_radius,
         "iterations_needed": certified.iterations_needed,
         "radius": certified.radius, "eps": certified.eps,
         "reason": certified.reason}))
    return reports


def suite_passed(reports) -> bool:
    return all(r.passed for r in reports)


def reports_to_json(reports) -> list:
    return [r.to_json() for r in reports]
