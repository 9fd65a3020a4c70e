"""Catalog of explicit locally conformally Kähler data on Hopf manifolds.

Each entry packages, on the punctured space W = C^n \\ {0}, the symbolic
differential forms of a classical construction together with the deck group
of the quotient Hopf manifold:

* ``example1``  — the standard Hopf surface with Omega = omega / |z|^2, its
  Lee form theta = -d log |z|^2, the contact-type 1-form psi, and the
  rank-one 2-form d psi (the pullback of the Fubini-Study form under the
  Hopf fibration, stored here with the normalization that makes it equal
  d psi coefficientwise).
* ``example2``  — the Kähler potential Phi = |z_1|^2 + ... + |z_n|^2 on W,
  on which the diagonal deck group acts by homotheties.
* ``kodaira``   — the non-diagonal contraction (z1, z2) -> (a z1 + t z2,
  a z2); a map/group entry with no displayed forms.
* ``vaisman``   — the weighted Vaisman structure Omega = -theta ^ psi + d psi
  on a diagonal Hopf surface with weights (r1, r2) and phases (p1, p2).

The module also hosts the two deformation-family builders: uniform scaling
that interpolates a polynomial contraction with its linear part, and the
graded scaling that melts the superdiagonal of a Jordan matrix.

On the Vaisman entry: the raw weighted 1-form returned by
:func:`weighted_sasaki` is invariant under the deck group only when the two
weights agree.  The entry therefore uses :func:`weighted_sasaki_invariant`,
the transport of the same spherical form along the radial trivialization
w = e^{-r t} z; it coincides with the raw form on the unit sphere and for
equal weights, and is deck-invariant for all weights.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np

from . import expr as ex
from . import forms as fm
from .maps import (GroupSpec, NotJordan, PolyAutomorphism, ScalingFamily)

__all__ = [
    "HopfSurfaceCatalogEntry", "BadParameter", "UnknownEntry",
    "example1_entry", "example2_potential", "example2_entry",
    "kodaira_family", "kodaira_entry", "vaisman_entry",
    "family_to_linear", "family_to_diagonal", "JordanMatrixFamily",
    "weighted_sasaki", "weighted_sasaki_invariant", "implicit_time",
    "ENTRY_NAMES", "build_entry",
]


class BadParameter(ValueError):
    """A catalog parameter violates its admissibility constraint."""


class UnknownEntry(KeyError):
    """No catalog entry with the requested name."""


@dataclass(frozen=True, eq=False)
class HopfSurfaceCatalogEntry:
    """Immutable bundle of named forms, deck group, and parameters."""

    name: str
    ambient_dim: int
    forms: MappingProxyType = field(repr=False)
    group: GroupSpec = field(repr=False)
    parameters: MappingProxyType
    potential: ex.Expression | None = field(repr=False, default=None)

    def __post_init__(self):
        object.__setattr__(self, "forms", MappingProxyType(dict(self.forms)))
        object.__setattr__(self, "parameters",
                           MappingProxyType(dict(self.parameters)))
        for key, form in self.forms.items():
            if form.ambient_dim != self.ambient_dim:
                raise ex.DimensionMismatch(
                    "form %r has ambient dimension %d, entry expects %d"
                    % (key, form.ambient_dim, self.ambient_dim))


# ---------------------------------------------------------------------------
# example1: the standard Hopf surface
# ---------------------------------------------------------------------------


def _norm_squared(n: int) -> ex.Expression:
    total = ex.const(0.0)
    for i in range(1, n + 1):
        total = ex.add(total, ex.mul(ex.z(i), ex.zbar(i)))
    return total


def example1_entry(mu: complex = 2.0) -> HopfSurfaceCatalogEntry:
    """Standard Hopf surface: Omega = omega / |z|^2 with Lee form -d log |z|^2.

    The entry carries Omega, theta, psi, and ``fubini_study`` := d psi, the
    degenerate rank-one 2-form pulled back from the projective line.  The
    deck group is generated by z -> mu z with |mu| > 1 (so the inverse of
    the generator is the contraction).
    """
    mu = complex(mu)
    if not abs(mu) > 1:
        raise BadParameter("example1 needs |mu| > 1, got |mu| = %g" % abs(mu))
    n = 2
    rho = _norm_squared(n)
    rho2 = ex.mul(rho, rho)
    mi = ex.const(-1j)
    pi_ = ex.const(1j)

    omega_terms = {(0, 2): ex.div(mi, rho), (1, 3): ex.div(mi, rho)}
    theta_terms = {
        (0,): ex.div(ex.mul(ex.const(-1.0), ex.zbar(1)), rho),
        (1,): ex.div(ex.mul(ex.const(-1.0), ex.zbar(2)), rho),
        (2,): ex.div(ex.mul(ex.const(-1.0), ex.z(1)), rho),
        (3,): ex.div(ex.mul(ex.const(-1.0), ex.z(2)), rho),
    }
    psi_terms = {
        (0,): ex.div(ex.mul(mi, ex.zbar(1)), rho),
        (1,): ex.div(ex.mul(mi, ex.zbar(2)), rho),
        (2,): ex.div(ex.mul(pi_, ex.z(1)), rho),
        (3,): ex.div(ex.mul(pi_, ex.z(2)), rho),
    }
    two_i = ex.const(2j)
    fs_terms = {
        (0, 2): ex.div(ex.mul(two_i, ex.mul(ex.z(2), ex.zbar(2))), rho2),
        (1, 3): ex.div(ex.mul(two_i, ex.mul(ex.z(1), ex.zbar(1))), rho2),
        (0, 3): ex.div(ex.mul(ex.const(-2j), ex.mul(ex.zbar(1), ex.z(2))), rho2),
        (1, 2): ex.div(ex.mul(ex.const(-2j), ex.mul(ex.zbar(2), ex.z(1))), rho2),
    }
    forms = {
        "Omega": fm.form_from_terms(n, 2, omega_terms),
        "theta": fm.form_from_terms(n, 1, theta_terms),
        "psi": fm.form_from_terms(n, 1, psi_terms),
        "fubini_study": fm.form_from_terms(n, 2, fs_terms),
    }
    group = GroupSpec((np.eye(n, dtype=complex),),
                      PolyAutomorphism.diagonal([mu] * n))
    return HopfSurfaceCatalogEntry("example1", n, forms, group, {"mu": mu})


# ---------------------------------------------------------------------------
# example2: the Kähler potential on the punctured space
# ---------------------------------------------------------------------------


def example2_potential(n: int = 2, mu: complex = 2.0):
    """Potential Phi = sum |z_i|^2 with the diagonal deck group z -> mu z.

    The group acts on Phi by the homothety factor |mu|^2; n = 2 is the
    surface case, larger n is provided on the same pattern.
    """
    mu = complex(mu)
    n = int(n)
    if not abs(mu) > 1:
        raise BadParameter("example2 needs |mu| > 1, got |mu| = %g" % abs(mu))
    if n < 2:
        raise BadParameter("example2 needs dimension >= 2, got %d" % n)
    phi = _norm_squared(n)
    group = GroupSpec((np.eye(n, dtype=complex),),
                      PolyAutomorphism.diagonal([mu] * n))
    return phi, group


def example2_entry(n: int = 2, mu: complex = 2.0) -> HopfSurfaceCatalogEntry:
    """Entry form of the potential: Omega = -i del delbar Phi, theta = 0."""
    phi, group = example2_potential(n, mu)
    dbar_phi = fm.del_and_delbar(fm.scalar_form(n, phi))[1]
    omega_tilde = fm.del_and_delbar(dbar_phi)[0].scale(-1j)
    forms = {
        "Omega": omega_tilde,
        "theta": fm.ExteriorForm(n, 1, {}),
    }
    params = {"mu": mu, "n": n}
    return HopfSurfaceCatalogEntry("example2", n, forms, group, params,
                                   potential=phi)


# ---------------------------------------------------------------------------
# kodaira: the non-diagonal contraction, and the deformation families
# ---------------------------------------------------------------------------


def kodaira_family(alpha: complex = 0.5, t: complex = 1.0) -> PolyAutomorphism:
    """The non-diagonal contraction (z1, z2) -> (alpha z1 + t z2, alpha z2)."""
    alpha = complex(alpha)
    t = complex(t)
    if not 0 < abs(alpha) < 1:
        raise BadParameter("kodaira needs 0 < |alpha| < 1, got |alpha| = %g"
                           % abs(alpha))
    return PolyAutomorphism.from_tables([
        {(1, 0): alpha, (0, 1): t},
        {(0, 1): alpha},
    ])


def kodaira_entry(alpha: complex = 0.5, t: complex = 1.0) -> HopfSurfaceCatalogEntry:
    """Map/group entry for the non-diagonal Hopf surface; no displayed forms."""
    gen = kodaira_family(alpha, t)
    group = GroupSpec((np.eye(2, dtype=complex),), gen)
    params = {"alpha": complex(alpha), "t": complex(t)}
    return HopfSurfaceCatalogEntry("kodaira", 2, {}, group, params)


def family_to_linear(g: PolyAutomorphism) -> ScalingFamily:
    """Uniform-weight scaling family t -> T_t^{-1} g T_t.

    At t = 1 this is g coefficient for coefficient; the degree-k part
    carries the exact factor t^(k-1), so the t -> 0 limit is the linear
    part of g embedded as a linear automorphism.
    """
    return ScalingFamily(g, (1,) * g.dim)


class JordanMatrixFamily:
    """Graded scaling of a Jordan matrix: every superdiagonal 1 becomes t.

    Conjugating by the graded scaling T_t = diag(t^(n-1), ..., t, 1)
    multiplies entry (i, j) by t^(j-i); on a Jordan matrix only the
    superdiagonal moves, so ``at(t)`` replaces each unit there by exactly t
    and ``at(0)`` is the diagonal of eigenvalues.
    """

    def __init__(self, matrix, tol: float = 1e-12):
        a = np.asarray(matrix, dtype=complex)
        n = a.shape[0]
        if a.shape != (n, n):
            raise NotJordan("matrix must be square")
        mask = np.zeros(n, dtype=bool)
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                if j == i + 1:
                    s = a[i, j]
                    if abs(s) <= tol:
                        continue
                    if abs(s - 1.0) > tol:
                        raise NotJordan(
                            "superdiagonal entry (%d, %d) = %s is neither 0 "
                            "nor 1" % (i, j, s))
                    if abs(a[i, i] - a[j, j]) > tol:
                        raise NotJordan(
                            "superdiagonal 1 at (%d, %d) joins distinct "
                            "diagonal values" % (i, j))
                    mask[i] = True
                elif abs(a[i, j]) > tol:
                    raise NotJordan("entry (%d, %d) = %s breaks Jordan "
                                    "structure" % (i, j, a[i, j]))
        self.diagonal = np.diag(a).copy()
        self.superdiagonal_mask = mask
        self.dim = n

    def at(self, t) -> np.ndarray:
        t = complex(t)
        out = np.diag(self.diagonal).astype(complex)
        for i in range(self.dim - 1):
            if self.superdiagonal_mask[i]:
                out[i, i + 1] = t
        return out

    def limit0(self) -> np.ndarray:
        return np.diag(self.diagonal).astype(complex)


def family_to_diagonal(matrix) -> JordanMatrixFamily:
    """Family t -> A_t for a Jordan matrix A; raises NotJordan otherwise."""
    return JordanMatrixFamily(matrix)


# ---------------------------------------------------------------------------
# vaisman: weighted structures on the diagonal Hopf surface
# ---------------------------------------------------------------------------


def _check_weights(r) -> tuple:
    r = tuple(float(x) for x in r)
    if len(r) != 2:
        raise BadParameter("weighted structures are built for two weights, "
                           "got %d" % len(r))
    if any(x <= 0 for x in r):
        raise BadParameter("weights must be positive, got %r" % (r,))
    return r


def weighted_sasaki(r=(1.0, 1.0)) -> fm.ExteriorForm:
    """The weighted contact 1-form i (sum r_i |z_i|^2)^-1 (z dzbar - zbar dz).

    With equal unit weights this is coefficientwise the psi of example1.
    """
    r1, r2 = _check_weights(r)
    den = ex.add(ex.mul(ex.const(r1), ex.mul(ex.z(1), ex.zbar(1))),
                 ex.mul(ex.const(r2), ex.mul(ex.z(2), ex.zbar(2))))
    mi = ex.const(-1j)
    pi_ = ex.const(1j)
    terms = {
        (0,): ex.div(ex.mul(mi, ex.zbar(1)), den),
        (1,): ex.div(ex.mul(mi, ex.zbar(2)), den),
        (2,): ex.div(ex.mul(pi_, ex.z(1)), den),
        (3,): ex.div(ex.mul(pi_, ex.z(2)), den),
    }
    return fm.form_from_terms(2, 1, terms)


def implicit_time(r=(1.0, 1.0)) -> ex.Expression:
    """The radial coordinate t(w) solving sum_i |w_i|^2 e^{2 r_i t} = 1."""
    r1, r2 = _check_weights(r)
    return ex.implicit_t((r1, r2))


def weighted_sasaki_invariant(r=(1.0, 1.0)) -> fm.ExteriorForm:
    """Deck-invariant transport of the weighted contact form off the sphere.

    Substituting z_i = e^{r_i t(w)} w_i into the spherical form gives

        i (sum_j r_j |w_j|^2 e^{2 r_j t})^-1
          sum_i e^{2 r_i t} (w_i dwbar_i - wbar_i dw_i)

    (the dt contributions cancel in each numerator term).  On the unit
    sphere t = 0 and for equal weights the exponentials drop out, so this
    agrees with :func:`weighted_sasaki` there; unlike the raw form it is
    invariant under diag(e^{-r_1 + i p_1}, e^{-r_2 + i p_2}) for all weights
    because t picks up exactly +1 under the deck generator.
    """
    r1, r2 = _check_weights(r)
    t = ex.implicit_t((r1, r2))
    e1 = ex.exp(ex.mul(ex.const(2 * r1), t))
    e2 = ex.exp(ex.mul(ex.const(2 * r2), t))
    den = ex.add(
        ex.mul(ex.const(r1), ex.mul(ex.mul(ex.z(1), ex.zbar(1)), e1)),
        ex.mul(ex.const(r2), ex.mul(ex.mul(ex.z(2), ex.zbar(2)), e2)))
    mi = ex.const(-1j)
    pi_ = ex.const(1j)
    terms = {
        (0,): ex.div(ex.mul(mi, ex.mul(ex.zbar(1), e1)), den),
        (1,): ex.div(ex.mul(mi, ex.mul(ex.zbar(2), e2)), den),
        (2,): ex.div(ex.mul(pi_, ex.mul(ex.z(1), e1)), den),
        (3,): ex.div(ex.mul(pi_, ex.mul(ex.z(2), e2)), den),
    }
    return fm.form_from_terms(2, 1, terms)


def vaisman_entry(r=(1.0, 1.5), p=(1.0, 2.0)) -> HopfSurfaceCatalogEntry:
    """Weighted Vaisman structure Omega = -theta ^ psi + d psi.

    theta = dt is the differential of the implicit radial coordinate
    (closed by construction), psi is the deck-invariant weighted contact
    form, and the deck group is generated by diag(lambda_1, lambda_2) with
    lambda_i = e^{-r_i + i p_i}, a genuine contraction.
    """
    r1, r2 = _check_weights(r)
    p = tuple(float(x) for x in p)
    if len(p) != 2:
        raise BadParameter("need two phases, got %d" % len(p))
    if any(x == 0 for x in p):
        raise BadParameter("phases must be nonzero, got %r" % (p,))
    t = ex.implicit_t((r1, r2))
    theta = fm.exterior_d(fm.scalar_form(2, t))
    psi = weighted_sasaki_invariant((r1, r2))
    omega = fm.exterior_d(psi) - fm.wedge(theta, psi)
    lam = [cmath.exp(complex(-r1, p[0])), cmath.exp(complex(-r2, p[1]))]
    group = GroupSpec((np.eye(2, dtype=complex),),
                      PolyAutomorphism.diagonal(lam))
    forms = {"Omega": omega, "theta": theta, "psi": psi}
    params = {"r1": r1, "r2": r2, "p1": p[0], "p2": p[1]}
    return HopfSurfaceCatalogEntry("vaisman", 2, forms, group, params)


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------


def _build_example1(params):
    mu = params.pop("mu", 2.0)
    return example1_entry(mu=mu)


def _build_example2(params):
    mu = params.pop("mu", 2.0)
    n = int(params.pop("n", 2))
    return example2_entry(n=n, mu=mu)


def _build_kodaira(params):
    alpha = params.pop("alpha", 0.5)
    t = params.pop("t", 1.0)
    return kodaira_entry(alpha=alpha, t=t)


def _build_vaisman(params):
    r = (params.pop("r1", 1.0), params.pop("r2", 1.5))
    p = (params.pop("p1", 1.0), params.pop("p2", 2.0))
    return vaisman_entry(r=r, p=p)


_BUILDERS = {
    "example1": _build_example1,
    "example2": _build_example2,
    "kodaira": _build_kodaira,
    "vaisman": _build_vaisman,
}

ENTRY_NAMES = tuple(sorted(_BUILDERS))


def build_entry(name: str, parameters=None) -> HopfSurfaceCatalogEntry:
    """Build a catalog entry by name; unused parameters are rejected."""
    if name not in _BUILDERS:
        raise UnknownEntry("unknown entry %r; known entries: %s"
                           % (name, ", ".join(ENTRY_NAMES)))
    params = dict(parameters or {})
    entry = _BUILDERS[name](params)
    if params:
        raise BadParameter("entry %r does not accept parameter(s): %s"
                           % (name, ", ".join(sorted(params))))
    return entry
