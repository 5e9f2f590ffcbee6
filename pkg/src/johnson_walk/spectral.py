"""Eigenstructure of the walk step and of the phase-flipped walk.

Three layers: a dense eigensolver for small unitary/orthogonal
matrices (real Schur pairing for real inputs), the walk-spectrum and
reflection-decomposition reports, and the cotangent-condition
machinery that locates the eigenphases of U * (1 - 2|w><w|) between
the poles at the eigenphases of U.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .combinat import norm_constants
from .cost_model import nint
from .reduced_sim import ReducedBasis, build_walk_matrix, reduced_s

TWO_PI = 2.0 * math.pi


def _wrap_phase(theta: float) -> float:
    """Map to (-pi, pi]."""
    t = (theta + math.pi) % TWO_PI - math.pi
    return math.pi if t == -math.pi else t


@dataclass
class UnitaryEigen:
    """Eigenphases and orthonormal eigenvectors of a unitary matrix."""
    phases: np.ndarray                 # sorted ascending in (-pi, pi]
    vectors: np.ndarray                # columns, aligned with phases
    overlaps_w: np.ndarray | None = None  # |<w|u_j>|^2 when built with w
    reconstruction_residual: float = 0.0

    @property
    def dim(self) -> int:
        return len(self.phases)


def eigendecompose_unitary(u: np.ndarray, w: np.ndarray | None = None,
                           atol: float = 1e-10) -> UnitaryEigen:
    """Dense eigendecomposition with orthonormal eigenvectors.

    Real orthogonal inputs go through the real Schur form, pairing each
    rotation block into e^{+-i theta} with vectors (q1 -+ i q2)/sqrt(2);
    complex unitaries use the complex Schur form (diagonal for normal
    matrices, so the Schur basis is the eigenbasis).
    """
    u = np.asarray(u)
    d = u.shape[0]
    defect = np.max(np.abs(u.conj().T @ u - np.eye(d)))
    if defect > atol:
        raise ValueError(f"input is not unitary: max |U^H U - I| = {defect:.3e}")

    if np.isrealobj(u) or np.max(np.abs(u.imag)) == 0.0:
        t, z = scipy.linalg.schur(np.real(u), output="real")
        phases, vectors = [], []
        i = 0
        while i < d:
            if i + 1 < d and abs(t[i + 1, i]) > 1e-12:
                theta = math.atan2(t[i + 1, i], t[i, i])
                q1, q2 = z[:, i], z[:, i + 1]
                vectors.append((q1 - 1j * q2) / math.sqrt(2.0))
                phases.append(theta)
                vectors.append((q1 + 1j * q2) / math.sqrt(2.0))
                phases.append(-theta)
                i += 2
            else:
                phases.append(0.0 if t[i, i] > 0 else math.pi)
                vectors.append(z[:, i].astype(complex))
                i += 1
        phases = np.array(phases)
        vectors = np.array(vectors).T
    else:
        t, z = scipy.linalg.schur(u.astype(complex), output="complex")
        phases = np.angle(np.diag(t))
        vectors = z

    order = np.argsort(phases, kind="stable")
    phases = phases[order]
    vectors = vectors[:, order]

    recon = (vectors * np.exp(1j * phases)) @ vectors.conj().T
    residual = float(np.max(np.abs(recon - u)))
    overlaps = None
    if w is not None:
        overlaps = np.abs(vectors.conj().T @ np.asarray(w, dtype=complex)) ** 2
    return UnitaryEigen(phases=phases, vectors=vectors, overlaps_w=overlaps,
                        reconstruction_residual=residual)


# --- walk spectrum ------------------------------------------------------

@dataclass
class WalkSpectrumReport:
    n: int
    m: int
    l: int
    alpha: float
    beta: float
    phases: np.ndarray                  # all 2l+1 eigenphases, sorted
    theta: np.ndarray                   # positive branch, ascending, j = 1..l
    closed_form: np.ndarray             # sqrt(j (alpha + beta - j alpha beta))
    asymptotic: np.ndarray              # 2 sqrt(j / m)
    closed_form_residual: float         # max | |sin(theta_j/2)| - closed_form_j |
    asymptotic_deviation: np.ndarray    # |theta_j - 2 sqrt(j/m)|
    extreme_pair_fidelity: float        # against (|A_{l-1,1}> +- i |A_{l,0}>)/sqrt 2
    closed_form_exact: bool = True

    def to_dict(self) -> dict:
        return {
            "n": self.n, "m": self.m, "l": self.l,
            "alpha": self.alpha, "beta": self.beta,
            "phases": list(map(float, self.phases)),
            "theta": list(map(float, self.theta)),
            "closed_form": list(map(float, self.closed_form)),
            "asymptotic": list(map(float, self.asymptotic)),
            "closed_form_residual": self.closed_form_residual,
            "asymptotic_deviation": list(map(float, self.asymptotic_deviation)),
            "extreme_pair_fidelity": self.extreme_pair_fidelity,
            "closed_form_exact": self.closed_form_exact,
        }


def walk_spectrum(n: int, m: int, l: int) -> WalkSpectrumReport:
    """Eigenphases of the walk step against the exact and asymptotic forms.

    The exact form |sin(theta_j / 2)| = sqrt(j (alpha + beta - j alpha beta))
    is anchored by the 3-cycle case (n=3, m=1, l=1, phases 0, +-2pi/3).
    """
    basis = ReducedBasis(n, m, l)
    w = build_walk_matrix(basis)
    eigen = eigendecompose_unitary(w)
    theta = np.sort(eigen.phases[eigen.phases > 1e-12])
    alpha, beta = basis.alpha, basis.beta
    js = np.arange(1, l + 1)
    closed = np.sqrt(js * (alpha + beta - js * alpha * beta))
    asym = 2.0 * np.sqrt(js / m)
    residual = float(np.max(np.abs(np.abs(np.sin(theta / 2.0)) - closed))) if l else 0.0

    # extreme pair: numeric vectors at +-theta_l vs (e_{l-1,1} -+ ... ) / sqrt 2
    tgt_plus = np.zeros(basis.dim, dtype=complex)
    tgt_plus[basis.index(l - 1, 1)] = 1.0 / math.sqrt(2.0)
    tgt_plus[basis.index(l, 0)] = 1j / math.sqrt(2.0)
    tgt_minus = tgt_plus.conj()
    i_plus = int(np.argmin(np.abs(eigen.phases - theta[-1])))
    i_minus = int(np.argmin(np.abs(eigen.phases + theta[-1])))
    v_plus, v_minus = eigen.vectors[:, i_plus], eigen.vectors[:, i_minus]
    straight = min(abs(np.vdot(tgt_plus, v_plus)) ** 2,
                   abs(np.vdot(tgt_minus, v_minus)) ** 2)
    swapped = min(abs(np.vdot(tgt_minus, v_plus)) ** 2,
                  abs(np.vdot(tgt_plus, v_minus)) ** 2)
    fidelity = max(straight, swapped)

    return WalkSpectrumReport(
        n=n, m=m, l=l, alpha=alpha, beta=beta,
        phases=eigen.phases, theta=theta, closed_form=closed, asymptotic=asym,
        closed_form_residual=residual,
        asymptotic_deviation=np.abs(theta - asym),
        extreme_pair_fidelity=fidelity,
        closed_form_exact=residual <= 1e-9,
    )


# --- reflection decomposition ------------------------------------------

@dataclass
class DeltaDecomposition:
    """Walk step split into the +-1 diagonal C plus two small corrections."""
    n: int
    m: int
    l: int
    c_diag: np.ndarray
    delta1: np.ndarray
    delta2: np.ndarray
    norm_delta1: float
    norm_delta2: float
    scaled_norm_delta1: float   # ||Delta1|| * sqrt(n - m)
    scaled_norm_delta2: float   # ||Delta2|| * sqrt(m + 1)
    delta2c: np.ndarray
    delta2c_eigs: np.ndarray
    delta2c_expected: np.ndarray

    def to_dict(self) -> dict:
        return {
            "n": self.n, "m": self.m, "l": self.l,
            "norm_delta1": self.norm_delta1,
            "norm_delta2": self.norm_delta2,
            "scaled_norm_delta1": self.scaled_norm_delta1,
            "scaled_norm_delta2": self.scaled_norm_delta2,
            "delta2c_eigs_real": list(map(float, self.delta2c_eigs.real)),
            "delta2c_eigs_imag": list(map(float, self.delta2c_eigs.imag)),
        }


def delta_decomposition(n: int, m: int, l: int) -> DeltaDecomposition:
    """Split C1 = C + Delta1, S C2 S = C + Delta2 with C = diag((-1)^p).

    Delta2 C consists of l 2x2 blocks [[-2 b j, -2 r], [2 r, -2 b j]] with
    r = sqrt(b j (1 - b j)), so its eigenvalues are -2 beta j +- 2i r and 0.
    """
    from .reduced_sim import coin1_matrix, coin2_matrix_b, shift_permutation

    basis = ReducedBasis(n, m, l)
    c1 = coin1_matrix(basis)
    s = shift_permutation(basis)
    sc2s = s.T @ coin2_matrix_b(basis) @ s
    c_diag = np.array([(-1.0) ** p for _, p in basis.labels])
    c = np.diag(c_diag)
    delta1 = c1 - c
    delta2 = sc2s - c
    delta2c = delta2 @ c

    beta = basis.beta
    expected = [0.0 + 0.0j]
    for j in range(1, l + 1):
        r = math.sqrt(beta * j * (1.0 - beta * j))
        expected.append(-2.0 * beta * j + 2j * r)
        expected.append(-2.0 * beta * j - 2j * r)
    expected = np.array(sorted(expected, key=lambda z: (z.real, z.imag)))
    eigs = np.linalg.eigvals(delta2c)
    eigs = np.array(sorted(eigs, key=lambda z: (z.real, z.imag)))

    n1 = float(np.linalg.norm(delta1, 2))
    n2 = float(np.linalg.norm(delta2, 2))
    return DeltaDecomposition(
        n=n, m=m, l=l, c_diag=c_diag, delta1=delta1, delta2=delta2,
        norm_delta1=n1, norm_delta2=n2,
        scaled_norm_delta1=n1 * math.sqrt(n - m),
        scaled_norm_delta2=n2 * math.sqrt(m + 1),
        delta2c=delta2c, delta2c_eigs=eigs, delta2c_expected=expected,
    )


# --- spectrum of U (1 - 2|w><w|) ---------------------------------------

class RootBracketError(RuntimeError):
    pass


@dataclass
class UPSpectrum:
    """Eigenphases of U P found from the cotangent condition."""
    thetas: np.ndarray                  # roots, sorted, one per active pole gap
    r_a: np.ndarray                     # |<w|theta_a>|^2 per root
    overlaps: np.ndarray                # [j, a] = <u_j|theta_a>
    passthrough: np.ndarray             # eigenphases of U orthogonal to w
    pole_phases: np.ndarray = field(default=None)
    pole_weights: np.ndarray = field(default=None)

    @property
    def all_phases(self) -> np.ndarray:
        return np.sort(np.concatenate([self.thetas, self.passthrough]))


def circular_phase_gap(phases_a, phases_b) -> float:
    """Worst pairing distance between two equal-size phase multisets.

    Phases are points on the unit circle, so sorting alone can rotate
    one list against the other when a phase sits on the branch cut
    (U P of a real orthogonal U always has exact eigenvalues at both
    +1 and -1).  Both lists are sorted on the circle and the best
    cyclic alignment is taken; the return value is the largest
    chordal distance |e^{i a} - e^{i b}| over the matched pairs.
    """
    a = np.sort(np.mod(np.asarray(phases_a, dtype=float), TWO_PI))
    b = np.sort(np.mod(np.asarray(phases_b, dtype=float), TWO_PI))
    if a.shape != b.shape:
        raise ValueError(f"phase count mismatch: {a.size} vs {b.size}")
    ea, eb = np.exp(1j * a), np.exp(1j * b)
    best = math.inf
    for shift in range(a.size):
        best = min(best, float(np.max(np.abs(np.roll(ea, shift) - eb))))
    return best


def _cot_sum(theta, poles, weights):
    return float(np.sum(weights / np.tan((theta - poles) / 2.0)))


def up_eigenphases(eigen: UnitaryEigen, w: np.ndarray,
                   weight_tol: float = 1e-12,
                   bisect_tol: float = 1e-13) -> UPSpectrum:
    """Eigenphases of U (1 - 2|w><w|) via the cotangent eigenvalue condition.

    Between consecutive eigenphases of U that overlap w, the weighted
    cotangent sum falls monotonically from +inf to -inf, so bisection
    brackets exactly one root per gap.  Eigenvectors of U orthogonal to
    w pass through with their phase unchanged.
    """
    w = np.asarray(w, dtype=complex)
    w = w / np.linalg.norm(w)
    amp = eigen.vectors.conj().T @ w          # <u_j|w>
    weight = np.abs(amp) ** 2

    # merge numerically equal phases into distinct poles
    poles, pole_weight, members = [], [], []
    for j, phase in enumerate(eigen.phases):
        if poles and abs(_wrap_phase(phase - poles[-1])) < 1e-10:
            pole_weight[-1] += weight[j]
            members[-1].append(j)
        else:
            poles.append(float(phase))
            pole_weight.append(float(weight[j]))
            members.append([j])
    poles = np.array(poles)
    pole_weight = np.array(pole_weight)

    active = pole_weight > weight_tol
    act_poles = poles[active]
    act_weight = pole_weight[active]

    # pass-through: inactive poles keep all members; active degenerate
    # poles keep multiplicity - 1 copies (the in-eigenspace directions
    # orthogonal to w are untouched by the flip)
    passthrough = []
    for i, mem in enumerate(members):
        copies = len(mem) if not active[i] else len(mem) - 1
        passthrough.extend([poles[i]] * copies)

    thetas = []
    k = len(act_poles)
    for i in range(k):
        lo = act_poles[i]
        hi = act_poles[(i + 1) % k] + (TWO_PI if i == k - 1 else 0.0)
        span = hi - lo
        if span <= 4 * bisect_tol:
            raise RootBracketError(
                f"pole gap [{lo}, {hi}] too narrow to bracket a root")
        a, b = lo + bisect_tol * max(1.0, abs(lo)), hi - bisect_tol * max(1.0, abs(hi))
        fa, fb = _cot_sum(a, act_poles, act_weight), _cot_sum(b, act_poles, act_weight)
        if not (fa > 0 > fb):
            raise RootBracketError(
                f"no sign change in gap [{lo:.6g}, {hi:.6g}]: f = ({fa:.3g}, {fb:.3g})")
        while b - a > bisect_tol:
            mid = 0.5 * (a + b)
            if _cot_sum(mid, act_poles, act_weight) > 0:
                a = mid
            else:
                b = mid
        thetas.append(_wrap_phase(0.5 * (a + b)))
    thetas = np.array(sorted(thetas))

    r_a = np.empty(len(thetas))
    for a_idx, th in enumerate(thetas):
        cots = 1.0 / np.tan((th - act_poles) / 2.0)
        r_a[a_idx] = 1.0 / (1.0 + float(np.sum(act_weight * cots ** 2)))

    overlaps = np.zeros((eigen.dim, len(thetas)), dtype=complex)
    for a_idx, th in enumerate(thetas):
        cot = 1.0 / np.tan((th - eigen.phases) / 2.0)
        overlaps[:, a_idx] = math.sqrt(r_a[a_idx]) * amp * (1.0 + 1j * cot)

    return UPSpectrum(thetas=thetas, r_a=r_a, overlaps=overlaps,
                      passthrough=np.array(sorted(passthrough)),
                      pole_phases=act_poles, pole_weights=act_weight)


# --- the algorithm's rotation ------------------------------------------

@dataclass
class RotationReport:
    n: int
    m: int
    l: int
    t1: int
    theta_plus: float
    theta_minus: float
    w_s_overlap: float                  # <w|s> = sqrt(c_{l,0} / c)
    ratio_plus: float                   # |theta_+| / (2 <w|s>)
    ratio_minus: float
    eigvec_fidelity: float              # against (|w> +- i |s>)/sqrt 2, worst
    error_scale: float                  # 1/m + m/n

    def to_dict(self) -> dict:
        return {
            "n": self.n, "m": self.m, "l": self.l, "t1": self.t1,
            "theta_plus": self.theta_plus, "theta_minus": self.theta_minus,
            "w_s_overlap": self.w_s_overlap,
            "ratio_plus": self.ratio_plus, "ratio_minus": self.ratio_minus,
            "eigvec_fidelity": self.eigvec_fidelity,
            "error_scale": self.error_scale,
        }


def algorithm_rotation(n: int, m: int | None = None, l: int = 2) -> RotationReport:
    """Smallest eigenphase pair of W^t1 P and its rotation-plane vectors.

    t1 = nint((pi/2) sqrt(m/l)); the pair should sit at +-2<w|s> with
    eigenvectors near (|w> +- i |s>)/sqrt 2.
    """
    if m is None:
        m = nint(n ** (l / (l + 1)))
    basis = ReducedBasis(n, m, l)
    t1 = nint((math.pi / 2.0) * math.sqrt(m / l))
    w_step = build_walk_matrix(basis)
    u = np.linalg.matrix_power(w_step, t1)
    w_vec = np.zeros(basis.dim)
    w_vec[basis.index(l, 0)] = 1.0

    eigen = eigendecompose_unitary(u, w=w_vec)
    spectrum = up_eigenphases(eigen, w_vec)
    order = np.argsort(np.abs(spectrum.thetas))
    th_a, th_b = spectrum.thetas[order[0]], spectrum.thetas[order[1]]
    theta_plus, theta_minus = (th_a, th_b) if th_a > 0 else (th_b, th_a)

    nc = norm_constants(n, m, l)
    ws = math.sqrt(nc.ratio(l, 0))
    ratio_plus = abs(theta_plus) / (2.0 * ws)
    ratio_minus = abs(theta_minus) / (2.0 * ws)

    # eigenvectors of U P at theta_+- via direct diagonalization
    up = u @ (np.eye(basis.dim) - 2.0 * np.outer(w_vec, w_vec))
    up_eigen = eigendecompose_unitary(up)
    s_vec = reduced_s(basis)
    fid = []
    for theta, sign in ((theta_plus, +1.0), (theta_minus, -1.0)):
        idx = int(np.argmin(np.abs(up_eigen.phases - theta)))
        vec = up_eigen.vectors[:, idx]
        target = (w_vec + sign * 1j * s_vec) / math.sqrt(2.0)
        fid.append(abs(np.vdot(target, vec)) ** 2)
    return RotationReport(
        n=n, m=m, l=l, t1=t1,
        theta_plus=float(theta_plus), theta_minus=float(theta_minus),
        w_s_overlap=ws,
        ratio_plus=float(ratio_plus), ratio_minus=float(ratio_minus),
        eigvec_fidelity=float(min(fid)),
        error_scale=1.0 / m + m / n,
    )
