"""Extrinsic geometry of a holomorphically immersed surface at one point.

Given a catalog immersion and its ambient model, this module produces every
frame-resolved tensor needed downstream: induced metric and Christoffel
symbols, an adapted orthonormal normal frame, second fundamental form and
shape operators, the normal connection, and the first covariant derivatives
of the second fundamental form, of the shape operators, of the normal
curvature and of the intrinsic curvature.

Derivative bookkeeping is the delicate part.  All quantities are assembled
in jet arithmetic over the immersion parameters; ambient chart derivatives
(needed for the ambient Christoffel symbols along the immersion) enter
through auxiliary jet variables appended after the parameters.  Quantities
whose derivative we take downstream are kept as jets; everything else is
reduced to plain floats.  Wherever the construction admits two genuinely
different assembly routes (covariant derivative of b, normal curvature,
intrinsic curvature and its derivative) both are computed and their
disagreement is a hard internal failure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import ambient as amb
from .jets import (
    ComplexJet,
    Jet,
    jet_matrix_inverse,
    jet_values,
    project_head,
    seed_variable,
)

TOTALLY_GEODESIC = "totally_geodesic"
PARALLEL = "parallel"
GENERIC = "generic"

#: Candidate vectors below this norm (after projection) are considered to
#: lie in the tangent span and are skipped during frame construction.
FRAME_NORM_FLOOR = 1e-6

#: Internal hard gates: two independent assembly routes must agree this well.
TWO_PATH_TOL = {
    "two_path_nabla_b": 1e-9,
    "two_path_r_perp": 1e-8,
    "two_path_r": 1e-8,
    "two_path_nabla_r": 1e-8,
}

RANK_TOL = 1e-8
J_INVARIANCE_TOL = 1e-9


class DegeneratePointError(RuntimeError):
    """The immersion or its tangent J-invariance fails at this point."""


class FrameConstructionError(RuntimeError):
    """No candidate seed survives Gram-Schmidt against the tangent space."""


class PathDisagreementError(RuntimeError):
    """Two independent assembly routes disagree: an internal bug, not data."""


@dataclass(frozen=True)
class ImmersionCase:
    """Catalog entry: a holomorphic immersion into an ambient model."""

    name: str
    m: int
    ambient: amb.AmbientModel
    chart: Callable
    domain: tuple
    expected_class: str

    @property
    def l(self) -> int:
        return self.ambient.complex_dim - self.m

    def map_jets(self, u, n_total=None) -> list:
        """Real chart coordinates of F(u) as jets in the parameter ring."""
        nu = 2 * self.m
        u = np.asarray(u, dtype=float)
        if u.shape != (nu,):
            raise ValueError(f"expected {nu} parameters, got {u.shape}")
        n = nu if n_total is None else n_total
        seeds = [seed_variable(i, u[i], n) for i in range(nu)]
        z = [ComplexJet(seeds[2 * a], seeds[2 * a + 1]) for a in range(self.m)]
        w = self.chart(z)
        out = []
        for comp in w:
            out.append(comp.re)
            out.append(comp.im)
        return out

    def map_values(self, u) -> np.ndarray:
        """F(u) as floats; the chart runs unchanged on Python complex."""
        u = np.asarray(u, dtype=float)
        z = [complex(u[2 * a], u[2 * a + 1]) for a in range(self.m)]
        w = self.chart(z)
        out = []
        for comp in w:
            out.append(comp.real)
            out.append(comp.imag)
        return np.array(out)


def _chart_linear(z):
    zero = z[0] * 0.0
    return [z[0], zero]


def _chart_graph_z2(z):
    return [z[0], z[0] * z[0]]


def _chart_graph_z3(z):
    return [z[0], z[0] * z[0] * z[0]]


def _chart_graph_c3(z):
    return [z[0], z[0] * z[0], z[0] * z[0] * z[0]]


def _chart_veronese(z):
    return [z[0] * np.sqrt(2.0), z[0] * z[0]]


_BOX = ((-1.0, 1.0), (-1.0, 1.0))

CATALOG = (
    ImmersionCase("linear_c2", 1, amb.flat(2), _chart_linear, _BOX,
                  TOTALLY_GEODESIC),
    ImmersionCase("graph_z2_c2", 1, amb.flat(2), _chart_graph_z2, _BOX,
                  GENERIC),
    ImmersionCase("graph_z3_c2", 1, amb.flat(2), _chart_graph_z3, _BOX,
                  GENERIC),
    ImmersionCase("graph_c3", 1, amb.flat(3), _chart_graph_c3, _BOX,
                  GENERIC),
    ImmersionCase("veronese_cp2", 1, amb.fubini_study(4.0, 2),
                  _chart_veronese, _BOX, PARALLEL),
)


def case_names() -> list:
    return [c.name for c in CATALOG]


def get_case(name: str) -> ImmersionCase:
    for c in CATALOG:
        if c.name == name:
            return c
    raise KeyError(f"unknown immersion case {name!r}")


@dataclass
class ExtrinsicData:
    """Frame-resolved tensors at one point, as plain float arrays.

    Tangent indices i, j, k, s, t run over the coordinate frame d/du^i
    (not orthonormalized); normal indices over the adapted orthonormal
    normal frame.
    """

    case_name: str
    u: np.ndarray
    m: int
    l: int
    c: float

    g: np.ndarray            # (2m, 2m) induced metric
    g_inv: np.ndarray
    dg: np.ndarray           # (2m, 2m, 2m)  [i, k, l] = d_i g_kl
    gamma: np.ndarray        # (2m, 2m, 2m)  [k, i, j]
    T: np.ndarray            # (2m, d) tangent frame in chart components
    N: np.ndarray            # (2l, d) orthonormal normal frame
    J_tan: np.ndarray        # (2m, 2m)  J d/du^j = J_tan[k, j] d/du^k
    J_nor: np.ndarray        # (2l, 2l)  J n_a = J_nor[b, a] n_b
    dJ_tan: np.ndarray       # (2m, 2m, 2m)  [i, k, j]
    dJ_nor: np.ndarray       # (2m, 2l, 2l)  [i, b, a]
    b: np.ndarray            # (2l, 2m, 2m)
    db: np.ndarray           # (2m, 2l, 2m, 2m)  [i, a, j, k] = d_i b^a_jk
    A: np.ndarray            # (2l, 2m, 2m)  [a, k, j] = shape op component ^k_j
    gamma_perp: np.ndarray   # (2l, 2l, 2m)  [a, b, i]
    nabla_b: np.ndarray      # (2m, 2l, 2m, 2m)  [i, a, j, k]
    nabla_A: np.ndarray      # (2m, 2l, 2m, 2m)  [i, a, k, j]
    r_perp: np.ndarray       # (2m, 2m, 2l, 2l)  [i, j, a, b]
    nabla_r_perp: np.ndarray  # (2m, 2m, 2m, 2l, 2l)  [s, i, j, a, b]
    r: np.ndarray            # (2m, 2m, 2m, 2m)  g(R(d_i, d_j) d_k, d_l)
    nabla_r: np.ndarray      # (2m, 2m, 2m, 2m, 2m)  [s, i, j, k, l]

    g_amb: np.ndarray        # ambient metric at F(u)
    J_amb: np.ndarray
    gamma_amb: np.ndarray    # ambient Christoffel values at F(u)

    two_path: dict = field(default_factory=dict)
    frame_residuals: dict = field(default_factory=dict)


def _two_path_residual(p1, p2) -> float:
    p1 = np.asarray(p1, float)
    p2 = np.asarray(p2, float)
    den = 1.0 + max(np.abs(p1).max(initial=0.0), np.abs(p2).max(initial=0.0))
    return float(np.abs(p1 - p2).max(initial=0.0) / den)


class PointGeometry:
    """One-shot computation of the full extrinsic package at a point."""

    def __init__(self, case: ImmersionCase, u, normal_seed_mix=None):
        self.case = case
        self.u = np.asarray(u, dtype=float)
        self.m = case.m
        self.l = case.l
        self.nu = 2 * case.m
        self.d = case.ambient.real_dim
        self.c = case.ambient.c
        self.J_amb = amb.complex_structure(case.ambient)
        self._build_ambient_along_immersion()
        self._build_tangent()
        self._build_normal_frame(normal_seed_mix)
        self._build_j_frames()
        self._build_second_fundamental_form()
        self._build_normal_connection()
        self._build_covariant_derivatives()
        self._build_normal_curvature()
        self._build_intrinsic_curvature()

    # -- ambient data composed with the immersion ---------------------------

    def _build_ambient_along_immersion(self):
        nu, d = self.nu, self.d
        n_tot = nu + d
        F = self.case.map_jets(self.u, n_total=n_tot)
        # Shift each chart coordinate by its own auxiliary variable so the
        # ambient chart derivatives of the metric are available along F(u).
        x_eps = [F[A] + seed_variable(nu + A, 0.0, n_tot) for A in range(d)]
        G_eps = amb.metric(self.case.ambient, x_eps)
        Gam_eps = amb.christoffel_from_metric(
            G_eps, dvars=[nu + A for A in range(d)]
        )
        self.g_amb_jet = np.empty((d, d), dtype=object)
        self.gamma_amb_jet = np.empty((d, d, d), dtype=object)
        for A in range(d):
            for B in range(d):
                self.g_amb_jet[A, B] = project_head(G_eps[A, B], nu)
                for C in range(d):
                    self.gamma_amb_jet[A, B, C] = project_head(
                        Gam_eps[A, B, C], nu
                    )
        self.F = [project_head(f, nu) for f in F]

    def _ip(self, U, V) -> Jet:
        """Ambient inner product of two jet vectors at F(u)."""
        acc = None
        for A in range(self.d):
            for B in range(self.d):
                term = self.g_amb_jet[A, B] * U[A] * V[B]
                acc = term if acc is None else acc + term
        return acc

    # -- tangent frame, induced metric, Christoffel symbols -----------------

    def _build_tangent(self):
        nu, d = self.nu, self.d
        self.T_jet = [[self.F[A].derivative(i) for A in range(d)]
                      for i in range(nu)]
        T_val = np.array([[t.value for t in row] for row in self.T_jet])
        sv = np.linalg.svd(T_val, compute_uv=False)
        if sv.min() < RANK_TOL:
            raise DegeneratePointError(
                f"{self.case.name}: differential rank-deficient at u={self.u}"
            )
        self.g_jet = np.empty((nu, nu), dtype=object)
        for i in range(nu):
            for j in range(i, nu):
                gij = self._ip(self.T_jet[i], self.T_jet[j])
                self.g_jet[i, j] = gij
                self.g_jet[j, i] = gij
        self.g_inv_jet = jet_matrix_inverse(self.g_jet)
        low = np.empty((nu, nu, nu), dtype=object)
        for i in range(nu):
            for j in range(nu):
                for k in range(nu):
                    low[i, j, k] = (
                        self.g_jet[j, k].derivative(i)
                        + self.g_jet[i, k].derivative(j)
                        - self.g_jet[i, j].derivative(k)
                    ) * 0.5
        self.gamma_jet = np.empty((nu, nu, nu), dtype=object)
        for k in range(nu):
            for i in range(nu):
                for j in range(i, nu):
                    acc = None
                    for t in range(nu):
                        term = self.g_inv_jet[k, t] * low[i, j, t]
                        acc = term if acc is None else acc + term
                    self.gamma_jet[k, i, j] = acc
                    self.gamma_jet[k, j, i] = acc

    # -- adapted normal frame ------------------------------------------------

    def _build_normal_frame(self, normal_seed_mix):
        nu, d = self.nu, self.d
        p = 2 * self.l
        if normal_seed_mix is None:
            candidates = np.eye(d)
        else:
            candidates = np.asarray(normal_seed_mix, dtype=float)
            if candidates.shape != (d, d):
                raise ValueError("candidate mix must be a (d, d) matrix")
        normals = []
        for row in candidates:
            if len(normals) == p:
                break
            v = [Jet.constant(row[A], nu) for A in range(d)]
            # Remove the tangential part (coordinate frame, so through g^ij).
            coef = [self._ip(v, self.T_jet[i]) for i in range(nu)]
            for k in range(nu):
                w = None
                for i in range(nu):
                    term = self.g_inv_jet[k, i] * coef[i]
                    w = term if w is None else w + term
                for A in range(d):
                    v[A] = v[A] - w * self.T_jet[k][A]
            for nvec in normals:
                c = self._ip(v, nvec)
                for A in range(d):
                    v[A] = v[A] - c * nvec[A]
            norm2 = self._ip(v, v)
            if norm2.value < FRAME_NORM_FLOOR ** 2:
                continue
            inv_norm = norm2.sqrt().reciprocal()
            n0 = [v[A] * inv_norm for A in range(d)]
            normals.append(n0)
            if len(normals) < p:
                jn = []
                for A in range(d):
                    acc = None
                    for B in range(d):
                        if self.J_amb[A, B] == 0.0:
                            continue
                        term = n0[B] * self.J_amb[A, B]
                        acc = term if acc is None else acc + term
                    jn.append(acc if acc is not None else Jet(nu))
                normals.append(jn)
        if len(normals) != p:
            raise FrameConstructionError(
                f"{self.case.name}: only {len(normals)} of {p} normal "
                f"directions found at u={self.u}"
            )
        self.N_jet = normals
        residuals = {}
        ortho = 0.0
        for a in range(p):
            for bb in range(p):
                val = self._ip(normals[a], normals[bb]).value
                ortho = max(ortho, abs(val - (1.0 if a == bb else 0.0)))
        tangency = max(
            abs(self._ip(normals[a], self.T_jet[i]).value)
            for a in range(p) for i in range(nu)
        )
        residuals["normal_orthonormality"] = ortho
        residuals["normal_tangency"] = tangency
        self.frame_residuals = residuals

    # -- complex structure in the adapted frames -----------------------------

    def _jvec(self, U) -> list:
        d = self.d
        out = []
        for A in range(d):
            acc = None
            for B in range(d):
                if self.J_amb[A, B] == 0.0:
                    continue
                term = U[B] * self.J_amb[A, B]
                acc = term if acc is None else acc + term
            out.append(acc if acc is not None else Jet(self.nu))
        return out

    def _build_j_frames(self):
        nu, d = self.nu, self.d
        p = 2 * self.l
        JT = [self._jvec(self.T_jet[j]) for j in range(nu)]
        self.J_tan_jet = np.empty((nu, nu), dtype=object)
        for j in range(nu):
            coef = [self._ip(JT[j], self.T_jet[i]) for i in range(nu)]
            for k in range(nu):
                acc = None
                for i in range(nu):
                    term = self.g_inv_jet[k, i] * coef[i]
                    acc = term if acc is None else acc + term
                self.J_tan_jet[k, j] = acc
        # J-invariance of the tangent space: JT_j must lie in the span.
        worst = 0.0
        for j in range(nu):
            for A in range(d):
                resid = JT[j][A].value - sum(
                    self.J_tan_jet[k, j].value * self.T_jet[k][A].value
                    for k in range(nu)
                )
                worst = max(worst, abs(resid))
        self.frame_residuals["tangent_j_invariance"] = worst
        if worst > J_INVARIANCE_TOL:
            raise DegeneratePointError(
                f"{self.case.name}: tangent space not J-invariant at "
                f"u={self.u} (residual {worst:.3e})"
            )
        self.J_nor_jet = np.empty((p, p), dtype=object)
        for a in range(p):
            Jn = self._jvec(self.N_jet[a])
            for bb in range(p):
                self.J_nor_jet[bb, a] = self._ip(self.N_jet[bb], Jn)

    # -- second fundamental form and shape operators --------------------------

    def _build_second_fundamental_form(self):
        nu, d = self.nu, self.d
        p = 2 * self.l
        self.b_vec_jet = np.empty((nu, nu, d), dtype=object)
        for i in range(nu):
            for j in range(i, nu):
                for A in range(d):
                    acc = self.F[A].derivative(j).derivative(i)
                    for B in range(d):
                        for C in range(d):
                            acc = acc + (
                                self.gamma_amb_jet[A, B, C]
                                * self.T_jet[i][B] * self.T_jet[j][C]
                            )
                    for k in range(nu):
                        acc = acc - self.gamma_jet[k, i, j] * self.T_jet[k][A]
                    self.b_vec_jet[i, j, A] = acc
                    self.b_vec_jet[j, i, A] = acc
        self.b_jet = np.empty((p, nu, nu), dtype=object)
        for a in range(p):
            for i in range(nu):
                for j in range(i, nu):
                    val = self._ip(list(self.b_vec_jet[i, j]), self.N_jet[a])
                    self.b_jet[a, i, j] = val
                    self.b_jet[a, j, i] = val
        self.A_jet = np.empty((p, nu, nu), dtype=object)
        for a in range(p):
            for k in range(nu):
                for j in range(nu):
                    acc = None
                    for t in range(nu):
                        term = self.b_jet[a, j, t] * self.g_inv_jet[t, k]
                        acc = term if acc is None else acc + term
                    self.A_jet[a, k, j] = acc

    # -- normal connection ----------------------------------------------------

    def _ambient_derivative(self, i: int, V) -> list:
        """Chart components of the ambient covariant derivative along d/du^i."""
        d = self.d
        out = []
        for A in range(d):
            acc = V[A].derivative(i)
            for B in range(d):
                for C in range(d):
                    acc = acc + (
                        self.gamma_amb_jet[A, B, C]
                        * self.T_jet[i][B] * V[C]
                    )
            out.append(acc)
        return out

    def _build_normal_connection(self):
        nu = self.nu
        p = 2 * self.l
        self.Dn_jet = [
            [self._ambient_derivative(i, self.N_jet[bb]) for bb in range(p)]
            for i in range(nu)
        ]
        self.gamma_perp_jet = np.empty((p, p, nu), dtype=object)
        for a in range(p):
            for bb in range(p):
                for i in range(nu):
                    self.gamma_perp_jet[a, bb, i] = self._ip(
                        self.N_jet[a], self.Dn_jet[i][bb]
                    )
        anti = 0.0
        for a in range(p):
            for bb in range(p):
                for i in range(nu):
                    anti = max(anti, abs(
                        self.gamma_perp_jet[a, bb, i].value
                        + self.gamma_perp_jet[bb, a, i].value
                    ))
        self.frame_residuals["gamma_perp_antisymmetry"] = anti

    # -- covariant derivatives of b and A --------------------------------------

    def _build_covariant_derivatives(self):
        nu = self.nu
        p = 2 * self.l
        gam = jet_values(self.gamma_jet)
        gp = jet_values(self.gamma_perp_jet)
        b = jet_values(self.b_jet)
        A = jet_values(self.A_jet)

        nb = np.empty((nu, p, nu, nu))
        for i in range(nu):
            for a in range(p):
                for j in range(nu):
                    for k in range(nu):
                        val = self.b_jet[a, j, k].derivative(i).value
                        val -= np.dot(gam[:, i, j], b[a, :, k])
                        val -= np.dot(gam[:, i, k], b[a, j, :])
                        val += np.dot(gp[a, :, i], b[:, j, k])
                        nb[i, a, j, k] = val
        self.nabla_b = nb

        # Independent route: ambient derivative of the vector-valued form,
        # then projection onto the normal frame.
        nb2 = np.empty_like(nb)
        for i in range(nu):
            for j in range(nu):
                for k in range(j, nu):
                    w = self._ambient_derivative(
                        i, list(self.b_vec_jet[j, k])
                    )
                    for t in range(nu):
                        for Ax in range(self.d):
                            w[Ax] = w[Ax] - (
                                self.gamma_jet[t, i, j]
                                * self.b_vec_jet[t, k, Ax]
                                + self.gamma_jet[t, i, k]
                                * self.b_vec_jet[j, t, Ax]
                            )
                    for a in range(p):
                        val = self._ip(w, self.N_jet[a]).value
                        nb2[i, a, j, k] = val
                        nb2[i, a, k, j] = val
        res = _two_path_residual(nb, nb2)
        self.two_path = {"two_path_nabla_b": res}
        if res > TWO_PATH_TOL["two_path_nabla_b"]:
            raise PathDisagreementError(
                f"covariant derivative of b: routes differ by {res:.3e}"
            )

        nA = np.empty((nu, p, nu, nu))
        for i in range(nu):
            for a in range(p):
                for k in range(nu):
                    for j in range(nu):
                        val = self.A_jet[a, k, j].derivative(i).value
                        val -= np.dot(gam[:, i, j], A[a, k, :])
                        val += np.dot(gam[k, i, :], A[a, :, j])
                        val -= np.dot(gp[:, a, i], A[:, k, j])
                        nA[i, a, k, j] = val
        self.nabla_A = nA

    # -- normal curvature -------------------------------------------------------

    def _build_normal_curvature(self):
        nu = self.nu
        p = 2 * self.l
        gp = jet_values(self.gamma_perp_jet)
        gam = jet_values(self.gamma_jet)

        # Route 1: ambient curvature plus shape-operator commutator, kept as
        # jets so the covariant derivative of the normal curvature can be
        # differentiated from it.
        rp1 = np.empty((nu, nu, p, p), dtype=object)
        for i in range(nu):
            for j in range(nu):
                if j < i:
                    for a in range(p):
                        for bb in range(p):
                            rp1[i, j, a, bb] = -rp1[j, i, a, bb]
                    continue
                for a in range(p):
                    Rt = amb.curvature_operator(
                        self.c, self.g_amb_jet, self.J_amb,
                        self.T_jet[i], self.T_jet[j], self.N_jet[a],
                    ) if self.c != 0.0 else None
                    for bb in range(p):
                        if i == j:
                            rp1[i, j, a, bb] = Jet(nu)
                            continue
                        acc = (
                            self._ip(Rt, self.N_jet[bb])
                            if Rt is not None else Jet(nu)
                        )
                        # + g([A_a, A_b] d_i, d_j)
                        for k in range(nu):
                            comm = None
                            for t in range(nu):
                                term = (
                                    self.A_jet[a, k, t] * self.A_jet[bb, t, i]
                                    - self.A_jet[bb, k, t]
                                    * self.A_jet[a, t, i]
                                )
                                comm = term if comm is None else comm + term
                            acc = acc + comm * self.g_jet[k, j]
                        rp1[i, j, a, bb] = acc
        self.r_perp_jet = rp1
        rp1_val = jet_values(rp1)

        # Route 2: curvature of the normal connection coefficients.
        rp2 = np.empty((nu, nu, p, p))
        for i in range(nu):
            for j in range(nu):
                for a in range(p):
                    for bb in range(p):
                        val = (
                            self.gamma_perp_jet[bb, a, j].derivative(i).value
                            - self.gamma_perp_jet[bb, a, i].derivative(j).value
                            + np.dot(gp[bb, :, i], gp[:, a, j])
                            - np.dot(gp[bb, :, j], gp[:, a, i])
                        )
                        rp2[i, j, a, bb] = val
        res = _two_path_residual(rp1_val, rp2)
        self.two_path["two_path_r_perp"] = res
        if res > TWO_PATH_TOL["two_path_r_perp"]:
            raise PathDisagreementError(
                f"normal curvature: routes differ by {res:.3e}"
            )
        self.r_perp = rp2

        nrp = np.empty((nu, nu, nu, p, p))
        for s in range(nu):
            for i in range(nu):
                for j in range(nu):
                    for a in range(p):
                        for bb in range(p):
                            val = rp1[i, j, a, bb].derivative(s).value
                            val += np.dot(gp[bb, :, s], rp1_val[i, j, a, :])
                            val -= np.dot(gam[:, s, i], rp1_val[:, j, a, bb])
                            val -= np.dot(gam[:, s, j], rp1_val[i, :, a, bb])
                            val -= np.dot(gp[:, a, s], rp1_val[i, j, :, bb])
                            nrp[s, i, j, a, bb] = val
        self.nabla_r_perp = nrp

    # -- intrinsic curvature ------------------------------------------------------

    def _build_intrinsic_curvature(self):
        nu = self.nu
        p = 2 * self.l
        gam = jet_values(self.gamma_jet)
        g = jet_values(self.g_jet)

        dgam = np.empty((nu, nu, nu, nu))
        for i in range(nu):
            for t in range(nu):
                for j in range(nu):
                    for k in range(j, nu):
                        v = self.gamma_jet[t, j, k].derivative(i).value
                        dgam[i, t, j, k] = v
                        dgam[i, t, k, j] = v
        r1 = np.empty((nu, nu, nu, nu))
        for i in range(nu):
            for j in range(nu):
                for k in range(nu):
                    for ll in range(nu):
                        acc = 0.0
                        for t in range(nu):
                            up = (
                                dgam[i, t, j, k] - dgam[j, t, i, k]
                                + np.dot(gam[t, i, :], gam[:, j, k])
                                - np.dot(gam[t, j, :], gam[:, i, k])
                            )
                            acc += up * g[t, ll]
                        r1[i, j, k, ll] = acc

        # Route 2: ambient curvature minus products of the vector-valued
        # second fundamental form, kept as jets for the derivative below.
        r2 = np.empty((nu, nu, nu, nu), dtype=object)
        for i in range(nu):
            for j in range(nu):
                for k in range(nu):
                    for ll in range(nu):
                        if self.c != 0.0:
                            Rt = amb.curvature_operator(
                                self.c, self.g_amb_jet, self.J_amb,
                                self.T_jet[i], self.T_jet[j], self.T_jet[k],
                            )
                            acc = self._ip(Rt, self.T_jet[ll])
                        else:
                            acc = Jet(nu)
                        acc = acc - self._ip(
                            list(self.b_vec_jet[i, k]),
                            list(self.b_vec_jet[j, ll]),
                        )
                        acc = acc + self._ip(
                            list(self.b_vec_jet[i, ll]),
                            list(self.b_vec_jet[j, k]),
                        )
                        r2[i, j, k, ll] = acc
        r2_val = jet_values(r2)
        res = _two_path_residual(r1, r2_val)
        self.two_path["two_path_r"] = res
        if res > TWO_PATH_TOL["two_path_r"]:
            raise PathDisagreementError(
                f"intrinsic curvature: routes differ by {res:.3e}"
            )
        self.r = r1

        b = jet_values(self.b_jet)
        nb = self.nabla_b
        # Derivative of the curvature via products of b with its covariant
        # derivative; the ambient contribution is parallel and drops out.
        nrA = (
            np.einsum("sail,ajk->sijkl", nb, b)
            + np.einsum("ail,sajk->sijkl", b, nb)
            - np.einsum("saik,ajl->sijkl", nb, b)
            - np.einsum("aik,sajl->sijkl", b, nb)
        )
        # Cross-check: coordinate covariant derivative of the jet-valued
        # curvature from route 2.
        nrB = np.empty((nu, nu, nu, nu, nu))
        for s in range(nu):
            for i in range(nu):
                for j in range(nu):
                    for k in range(nu):
                        for ll in range(nu):
                            val = r2[i, j, k, ll].derivative(s).value
                            val -= np.dot(gam[:, s, i], r2_val[:, j, k, ll])
                            val -= np.dot(gam[:, s, j], r2_val[i, :, k, ll])
                            val -= np.dot(gam[:, s, k], r2_val[i, j, :, ll])
                            val -= np.dot(gam[:, s, ll], r2_val[i, j, k, :])
                            nrB[s, i, j, k, ll] = val
        res = _two_path_residual(nrA, nrB)
        self.two_path["two_path_nabla_r"] = res
        if res > TWO_PATH_TOL["two_path_nabla_r"]:
            raise PathDisagreementError(
                f"covariant derivative of curvature: routes differ by "
                f"{res:.3e}"
            )
        self.nabla_r = nrA
        del p

    # -- assembled output -----------------------------------------------------------

    def data(self) -> ExtrinsicData:
        nu = self.nu
        p = 2 * self.l
        g = jet_values(self.g_jet)
        dg = np.empty((nu, nu, nu))
        for i in range(nu):
            for k in range(nu):
                for ll in range(nu):
                    dg[i, k, ll] = self.g_jet[k, ll].derivative(i).value
        dJ_tan = np.empty((nu, nu, nu))
        for i in range(nu):
            for k in range(nu):
                for j in range(nu):
                    dJ_tan[i, k, j] = self.J_tan_jet[k, j].derivative(i).value
        dJ_nor = np.empty((nu, p, p))
        for i in range(nu):
            for bb in range(p):
                for a in range(p):
                    dJ_nor[i, bb, a] = (
                        self.J_nor_jet[bb, a].derivative(i).value
                    )
        return ExtrinsicData(
            case_name=self.case.name,
            u=self.u.copy(),
            m=self.m,
            l=self.l,
            c=self.c,
            g=g,
            g_inv=jet_values(self.g_inv_jet),
            dg=dg,
            gamma=jet_values(self.gamma_jet),
            T=np.array([[t.value for t in row] for row in self.T_jet]),
            N=np.array([[v.value for v in n] for n in self.N_jet]),
            J_tan=jet_values(self.J_tan_jet),
            J_nor=jet_values(self.J_nor_jet),
            dJ_tan=dJ_tan,
            dJ_nor=dJ_nor,
            b=jet_values(self.b_jet),
            db=np.array(
                [
                    [
                        [
                            [self.b_jet[a, j, k].derivative(i).value
                             for k in range(nu)]
                            for j in range(nu)
                        ]
                        for a in range(p)
                    ]
                    for i in range(nu)
                ]
            ),
            A=jet_values(self.A_jet),
            gamma_perp=jet_values(self.gamma_perp_jet),
            nabla_b=self.nabla_b,
            nabla_A=self.nabla_A,
            r_perp=self.r_perp,
            nabla_r_perp=self.nabla_r_perp,
            r=self.r,
            nabla_r=self.nabla_r,
            g_amb=jet_values(self.g_amb_jet),
            J_amb=self.J_amb,
            gamma_amb=jet_values(self.gamma_amb_jet),
            two_path=dict(self.two_path),
            frame_residuals=dict(self.frame_residuals),
        )


def extrinsic_data(case: ImmersionCase, u, normal_seed_mix=None) -> ExtrinsicData:
    """The complete extrinsic package at one parameter point."""
    return PointGeometry(case, u, normal_seed_mix=normal_seed_mix).data()


# -- per-quantity entry points (jets) -------------------------------------


def induced_metric(case, u):
    return PointGeometry(case, u).g_jet


def christoffel(case, u):
    return PointGeometry(case, u).gamma_jet


def adapted_normal_frame(case, u):
    return PointGeometry(case, u).N_jet


def second_fundamental_form(case, u):
    return PointGeometry(case, u).b_jet


def shape_operators(case, u):
    return jet_values(PointGeometry(case, u).A_jet)


def normal_connection(case, u):
    return PointGeometry(case, u).gamma_perp_jet


def covariant_derivative_b(case, u):
    return PointGeometry(case, u).nabla_b


def covariant_derivative_A(case, u):
    return PointGeometry(case, u).nabla_A


def normal_curvature(case, u):
    return PointGeometry(case, u).r_perp


def covariant_derivative_normal_curvature(case, u):
    return PointGeometry(case, u).nabla_r_perp


def intrinsic_curvature(case, u):
    geo = PointGeometry(case, u)
    return geo.r, geo.nabla_r


# -- frame-independent norms ------------------------------------------------


def _orthonormalize_axes(arr: np.ndarray, axes, Q: np.ndarray) -> np.ndarray:
    for ax in axes:
        arr = np.moveaxis(np.tensordot(arr, Q, axes=([ax], [0])), -1, ax)
    return arr


def tensor_norms(data: ExtrinsicData) -> dict:
    """Frobenius norms in orthonormal frames; invariant under frame remixes.

    The normal frame is already orthonormal; tangent coordinate indices are
    converted through the inverse Cholesky factor of the induced metric.
    """
    Q = np.linalg.inv(np.linalg.cholesky(data.g)).T
    # Lower the contravariant index of the shape-operator derivative first.
    nA_low = np.einsum("iakj,kl->ialj", data.nabla_A, data.g)

    def frob(arr, axes):
        return float(np.sqrt((_orthonormalize_axes(arr, axes, Q) ** 2).sum()))

    return {
        "b": frob(data.b, (1, 2)),
        "nabla_b": frob(data.nabla_b, (0, 2, 3)),
        "nabla_A": frob(nA_low, (0, 2, 3)),
        "r_perp": frob(data.r_perp, (0, 1)),
        "nabla_r_perp": frob(data.nabla_r_perp, (0, 1, 2)),
        "r": frob(data.r, (0, 1, 2, 3)),
        "nabla_r": frob(data.nabla_r, (0, 1, 2, 3, 4)),
    }


def sectional_curvature(data: ExtrinsicData, i: int = 0, j: int = 1) -> float:
    """Sectional curvature of the coordinate plane (d/du^i, d/du^j)."""
    g = data.g
    den = g[i, i] * g[j, j] - g[i, j] ** 2
    return float(data.r[i, j, j, i] / den)


def max_shape_operator_determinant(data: ExtrinsicData) -> float:
    """Largest |det A| over the normal frame; nonzero means a nondegenerate
    normal direction exists at this point."""
    return float(max(abs(np.linalg.det(data.A[a])) for a in range(2 * data.l)))
