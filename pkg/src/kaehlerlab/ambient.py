"""Constant-holomorphic-curvature ambient spaces in a single real chart.

Two models are provided: flat complex space C^N and the Fubini-Study chart
of complex projective space, normalized so the holomorphic sectional
curvature equals the stored constant ``c``.  Complex coordinate ``w^a``
pairs with real coordinates ``(u^{2a}, u^{2a+1})``; the complex structure
rotates each pair by 90 degrees:  J e_{2a} = e_{2a+1},  J e_{2a+1} = -e_{2a}.

Metric components are produced as jets of the chart point, so ambient
Christoffel symbols and their derivatives fall out of jet arithmetic.  The
curvature tensor is available along two independent routes: the closed-form
expression for a complex space form, and differentiation of the Christoffel
symbols.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .jets import ComplexJet, Jet, jet_matrix_inverse, jet_values, seed_point

FLAT = "flat"
FUBINI_STUDY = "fubini_study"


@dataclass(frozen=True)
class AmbientModel:
    kind: str
    c: float
    complex_dim: int

    @property
    def real_dim(self) -> int:
        return 2 * self.complex_dim


def flat(complex_dim: int) -> AmbientModel:
    if complex_dim < 1:
        raise ValueError("complex dimension must be positive")
    return AmbientModel(kind=FLAT, c=0.0, complex_dim=complex_dim)


def fubini_study(c: float, complex_dim: int) -> AmbientModel:
    if complex_dim < 1:
        raise ValueError("complex dimension must be positive")
    if c <= 0:
        raise ValueError("Fubini-Study curvature constant must be positive")
    return AmbientModel(kind=FUBINI_STUDY, c=float(c), complex_dim=complex_dim)


def complex_structure(model: AmbientModel) -> np.ndarray:
    """J in real chart coordinates; constant for both models."""
    d = model.real_dim
    J = np.zeros((d, d))
    for a in range(model.complex_dim):
        J[2 * a + 1, 2 * a] = 1.0
        J[2 * a, 2 * a + 1] = -1.0
    return J


def metric(model: AmbientModel, x) -> np.ndarray:
    """Metric components as an object array of jets at a chart point.

    ``x`` is a sequence of ``real_dim`` jets (or floats, promoted to
    constants once at least one entry is a jet).
    """
    d = model.real_dim
    if len(x) != d:
        raise ValueError(f"chart point has {len(x)} components, expected {d}")
    n = next(v.n for v in x if isinstance(v, Jet))
    x = [v if isinstance(v, Jet) else Jet.constant(v, n) for v in x]

    G = np.empty((d, d), dtype=object)
    if model.kind == FLAT:
        for A in range(d):
            for B in range(d):
                G[A, B] = Jet.constant(1.0 if A == B else 0.0, n)
        return G

    # Fubini-Study: Hermitian components h_{ab} = k (rho d_ab - wbar_a w_b)/rho^2
    # with rho = 1 + |w|^2 and k = 4/c; the real metric is g = Re h under the
    # identification of a real tangent vector with its complex components.
    N = model.complex_dim
    k = 4.0 / model.c
    w = [ComplexJet(x[2 * a], x[2 * a + 1]) for a in range(N)]
    rho = Jet.constant(1.0, n)
    for a in range(N):
        rho = rho + w[a].abs2()
    inv_rho2 = (rho * rho).reciprocal()
    for a in range(N):
        for bb in range(N):
            cross = w[a].conj() * w[bb]  # wbar_a w_b
            s_re = -cross.re
            s_im = -cross.im
            if a == bb:
                s_re = s_re + rho
            s_re = s_re * inv_rho2 * k  # Re h_{ab}
            s_im = s_im * inv_rho2 * k  # Im h_{ab}
            G[2 * a, 2 * bb] = s_re
            G[2 * a + 1, 2 * bb + 1] = s_re.copy()
            G[2 * a, 2 * bb + 1] = s_im
            G[2 * a + 1, 2 * bb] = -s_im
    return G


def christoffel_from_metric(G: np.ndarray, dvars) -> np.ndarray:
    """Levi-Civita symbols of a jet-valued metric.

    ``dvars[A]`` names the jet variable that realizes the A-th chart
    direction, so the same routine serves both direct chart evaluation and
    evaluation composed with an immersion (where chart directions enter as
    auxiliary variables).
    Returns an object array indexed ``[C, A, B]`` for Gamma^C_{AB}.
    """
    d = G.shape[0]
    Ginv = jet_matrix_inverse(G)
    dG = np.empty((d, d, d), dtype=object)
    for A in range(d):
        for B in range(d):
            for C in range(B, d):
                der = G[B, C].derivative(dvars[A])
                dG[A, B, C] = der
                dG[A, C, B] = der
    Gamma = np.empty((d, d, d), dtype=object)
    for A in range(d):
        for B in range(A, d):
            for C in range(d):
                acc = None
                for D in range(d):
                    term = Ginv[C, D] * (dG[A, D, B] + dG[B, A, D] - dG[D, A, B])
                    acc = term if acc is None else acc + term
                half = acc * 0.5
                Gamma[C, A, B] = half
                Gamma[C, B, A] = half
    return Gamma


def christoffel(model: AmbientModel, x, dvars=None) -> np.ndarray:
    """Ambient Christoffel symbols Gamma^C_{AB} as jets at a chart point."""
    G = metric(model, x)
    if dvars is None:
        dvars = list(range(model.real_dim))
    return christoffel_from_metric(G, dvars)


def curvature_operator(c: float, g, J, X, Y, Z) -> list:
    """Closed-form space-form curvature R(X, Y)Z; no differentiation.

    Polymorphic over floats and jets: ``g`` indexes metric components,
    ``J`` is the constant complex-structure matrix, and the vectors are
    sequences of matching scalars.
    """
    d = len(X)

    def inner(U, V):
        acc = None
        for A in range(d):
            for B in range(d):
                term = g[A][B] * U[A] * V[B]
                acc = term if acc is None else acc + term
        return acc

    def apply_J(U):
        return [sum(J[A, B] * U[B] for B in range(d)) for A in range(d)]

    JX, JY, JZ = apply_J(X), apply_J(Y), apply_J(Z)
    gYZ = inner(Y, Z)
    gXZ = inner(X, Z)
    gJYZ = inner(JY, Z)
    gJXZ = inner(JX, Z)
    gXJY = inner(X, JY)
    out = []
    for A in range(d):
        term = (
            gYZ * X[A]
            - gXZ * Y[A]
            + gJYZ * JX[A]
            - gJXZ * JY[A]
            + gXJY * JZ[A] * 2.0
        )
        out.append(term * (c / 4.0))
    return out


def curvature(model: AmbientModel, x, X, Y, Z) -> np.ndarray:
    """Closed-form curvature with float vectors at a float chart point."""
    g = jet_values(metric(model, seed_point(x)))
    J = complex_structure(model)
    X = np.asarray(X, float)
    Y = np.asarray(Y, float)
    Z = np.asarray(Z, float)
    return np.array(curvature_operator(model.c, g, J, list(X), list(Y), list(Z)))


def curvature_from_connection(model: AmbientModel, x) -> np.ndarray:
    """Curvature by differentiating the connection: the second, independent path.

    Returns the components R^D_{CAB} of R(e_A, e_B)e_C = R^D_{CAB} e_D.
    """
    d = model.real_dim
    Gamma = christoffel(model, seed_point(x))
    Gval = jet_values(Gamma)
    dGamma = np.empty((d, d, d, d))
    for A in range(d):
        for D in range(d):
            for B in range(d):
                for C in range(B, d):
                    v = Gamma[D, B, C].derivative(A).value
                    dGamma[A, D, B, C] = v
                    dGamma[A, D, C, B] = v
    R = np.empty((d, d, d, d))
    for D in range(d):
        for C in range(d):
            for A in range(d):
                for B in range(d):
                    R[D, C, A, B] = (
                        dGamma[A, D, B, C]
                        - dGamma[B, D, A, C]
                        + np.dot(Gval[D, A, :], Gval[:, B, C])
                        - np.dot(Gval[D, B, :], Gval[:, A, C])
                    )
    return R


def curvature_closed_form_tensor(model: AmbientModel, x) -> np.ndarray:
    """Closed-form curvature contracted over the chart basis, as R^D_{CAB}."""
    d = model.real_dim
    g = jet_values(metric(model, seed_point(x)))
    J = complex_structure(model)
    basis = np.eye(d)
    R = np.empty((d, d, d, d))
    for A in range(d):
        for B in range(d):
            for C in range(d):
                vec = np.array(
                    curvature_operator(
                        model.c, g, J, list(basis[A]), list(basis[B]),
                        list(basis[C])
                    )
                )
                R[:, C, A, B] = vec
    return R


def holomorphic_sectional_curvature(model: AmbientModel, x, X) -> float:
    """g(R(X, JX)JX, X) / g(X, X)^2 using the differentiated-connection path."""
    g = jet_values(metric(model, seed_point(x)))
    J = complex_structure(model)
    R = curvature_from_connection(model, x)
    X = np.asarray(X, float)
    JX = J @ X
    RX = np.einsum("dcab,a,b,c->d", R, X, JX, JX)
    return float((RX @ g @ X) / (X @ g @ X) ** 2)


def check_kaehler(model: AmbientModel, x, metric_perturbation=None) -> dict:
    """Residual report for the Hermitian and parallel-J conditions.

    ``metric_perturbation`` (a constant matrix added to the metric) exists
    for negative-control tests; failures are reported, never raised.
    """
    seeds = seed_point(x)
    G = metric(model, seeds)
    if metric_perturbation is not None:
        P = np.asarray(metric_perturbation, float)
        d = model.real_dim
        for A in range(d):
            for B in range(d):
                G[A, B] = G[A, B] + Jet.constant(P[A, B], seeds[0].n)
    gval = jet_values(G)
    J = complex_structure(model)

    hermitian = np.abs(J.T @ gval @ J - gval).max() / (1.0 + np.abs(gval).max())

    Gamma = christoffel_from_metric(G, list(range(model.real_dim)))
    Gval = jet_values(Gamma)
    # J is constant, so parallel J reduces to Gamma J - J Gamma per direction.
    nabla_J = np.einsum("cad,db->cab", Gval, J) - np.einsum(
        "dab,cd->cab", Gval, J
    )
    parallel_j = np.abs(nabla_J).max() / (1.0 + np.abs(Gval).max())

    return {"hermitian": float(hermitian), "parallel_j": float(parallel_j)}
