"""Symplectic and involution-adapted linear algebra.

Monodromy matrices of closed Hamiltonian orbits are symplectic; at a
symmetric point they take the block form

    M = [[A, B], [C, A^T]],   B = B^T, C = C^T, AB = BA^T,
                              A^T C = C A,      A^2 - BC = I,

and the pair p = (tr A, det A) of the reduced A block locates the orbit on
the Broucke stability diagram.  This module provides block extraction,
frame changes, multiplier reduction, the p-point from either route,
region classification, and the pencil-line geometry of the bifurcation
loci (lines y = a*x - a^2 tangent to the parabola y = x^2/4).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import (
    InvalidEigenvalue,
    NonFinite,
    NotPalindromic,
    NotReciprocalPairs,
    NotSymplectic,
    OddDimension,
    SingularFrame,
    TrivialEigenvalueNotFound,
    TrivialPairNotFound,
)

DEFAULT_BOUNDARY_TOL = 1e-9
DEFAULT_TRIVIAL_TOL = 1e-4


def standard_j(half_dim: int) -> np.ndarray:
    """Standard rotation J = [[0, I], [-I, 0]] of size 2*half_dim."""
    z = np.zeros((half_dim, half_dim))
    eye = np.eye(half_dim)
    return np.block([[z, eye], [-eye, z]])


def _maxnorm(mat) -> float:
    return float(np.max(np.abs(mat))) if np.size(mat) else 0.0


def symplecticity_residual(matrix) -> float:
    """Max-norm of M^T J M - J; zero iff M is exactly symplectic."""
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise OddDimension(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] % 2:
        raise OddDimension(f"dimension {m.shape[0]} is odd")
    j = standard_j(m.shape[0] // 2)
    return _maxnorm(m.T @ j @ m - j)


@dataclass(frozen=True)
class SymplecticMatrix:
    """Square real matrix of even dimension with its symplecticity residual."""

    entries: np.ndarray
    residual: float
    dim: int

    @classmethod
    def from_matrix(cls, matrix, require_tol: float | None = None) -> "SymplecticMatrix":
        m = np.array(matrix, dtype=float)
        res = symplecticity_residual(m)
        if require_tol is not None and res > require_tol:
            raise NotSymplectic(
                f"symplecticity residual {res:.3e} exceeds tolerance {require_tol:.3e}"
            )
        return cls(entries=m, residual=res, dim=m.shape[0])

    @property
    def n(self) -> int:
        return self.dim // 2

    def determinant(self) -> float:
        return float(np.linalg.det(self.entries))


@dataclass(frozen=True)
class InvolutionBlocks:
    """The (A, B, C) triple of a monodromy at a symmetric point.

    ``constraint_residual`` is the max-norm violation of the block
    constraints plus the deviation of the bottom-right quadrant from A^T.
    ``scaled_residual`` divides degree-1 violations by max(1, |M|) and
    degree-2 ones by its square; it is the quantity thresholded when
    discriminating symmetric from fake points, where entry magnitudes of
    1e5 and finite input precision make the raw residual uninformative.
    """

    n: int
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    constraint_residual: float
    scaled_residual: float = field(default=float("nan"))

    def assemble(self) -> SymplecticMatrix:
        m = np.block([[self.A, self.B], [self.C, self.A.T]])
        return SymplecticMatrix.from_matrix(m)


def _block_violations(A, B, C, D):
    n = A.shape[0]
    eye = np.eye(n)
    return {
        "B_symmetric": _maxnorm(B - B.T),
        "C_symmetric": _maxnorm(C - C.T),
        "AB_commute": _maxnorm(A @ B - B @ A.T),
        "AC_commute": _maxnorm(A.T @ C - C @ A),
        "pell": _maxnorm(A @ A - B @ C - eye),
        "corner": _maxnorm(D - A.T),
    }


def involution_blocks(matrix) -> tuple[InvolutionBlocks, float]:
    """Split M into quadrants (A, B, C) and report the constraint residual.

    The residual is informational; callers decide what to accept.
    """
    m = np.asarray(matrix.entries if isinstance(matrix, SymplecticMatrix) else matrix, float)
    n = m.shape[0] // 2
    A, B = m[:n, :n], m[:n, n:]
    C, D = m[n:, :n], m[n:, n:]
    parts = _block_violations(A, B, C, D)
    residual = max(parts.values())
    scale = max(1.0, _maxnorm(m))
    deg2 = {"AB_commute", "AC_commute", "pell"}
    scaled = max(v / (scale * scale if k in deg2 else scale) for k, v in parts.items())
    blocks = InvolutionBlocks(
        n=n, A=A.copy(), B=B.copy(), C=C.copy(),
        constraint_residual=residual, scaled_residual=scaled,
    )
    return blocks, residual


def change_frame(R, blocks: InvolutionBlocks, cond_bound: float = 1e12) -> InvolutionBlocks:
    """Act with R in GL_n: (A, B, C) -> (R A R^-1, R B R^T, R^-T C R^-1)."""
    r = np.asarray(R, dtype=float)
    if np.linalg.cond(r) > cond_bound:
        raise SingularFrame(f"frame condition number exceeds {cond_bound:.1e}")
    rinv = np.linalg.inv(r)
    A = r @ blocks.A @ rinv
    B = r @ blocks.B @ r.T
    C = rinv.T @ blocks.C @ rinv
    parts = _block_violations(A, B, C, A.T)
    residual = max(parts.values())
    m = np.block([[A, B], [C, A.T]])
    scale = max(1.0, _maxnorm(m))
    deg2 = {"AB_commute", "AC_commute", "pell"}
    scaled = max(v / (scale * scale if k in deg2 else scale) for k, v in parts.items())
    return InvolutionBlocks(blocks.n, A, B, C, residual, scaled)


def _eigenvalue_sort_key(lam):
    return (round(lam.real, 12), -lam.imag)


def reduced_multipliers(matrix, trivial_tol: float = DEFAULT_TRIVIAL_TOL) -> np.ndarray:
    """Eigenvalues of a monodromy with the two trivial ones near 1 removed.

    An autonomous Hamiltonian flow contributes the eigenvalue 1 twice (flow
    direction and energy).  Both removed eigenvalues must lie within
    ``trivial_tol`` of 1, else the matrix is not an acceptable monodromy.
    """
    m = matrix.entries if isinstance(matrix, SymplecticMatrix) else np.asarray(matrix, float)
    lams = np.linalg.eigvals(m)
    order = np.argsort(np.abs(lams - 1.0))
    dropped = lams[order[:2]]
    if np.max(np.abs(dropped - 1.0)) > trivial_tol:
        raise TrivialPairNotFound(
            "eigenvalues nearest 1 are "
            f"{dropped[0]:.6g}, {dropped[1]:.6g}; not within {trivial_tol:.1e} of 1"
        )
    keep = lams[order[2:]]
    return np.array(sorted(keep, key=_eigenvalue_sort_key))


def git_point_from_blocks(blocks: InvolutionBlocks,
                          trivial_tol: float = DEFAULT_TRIVIAL_TOL) -> tuple[float, float]:
    """p = (tr, det) of the reduced A block.

    A 3x3 block from an unreduced spatial monodromy must carry one trivial
    eigenvalue within ``trivial_tol`` of 1, which is removed first.
    """
    A = blocks.A
    if A.shape[0] == 2:
        return float(np.trace(A)), float(np.linalg.det(A))
    lams = np.linalg.eigvals(A)
    idx = int(np.argmin(np.abs(lams - 1.0)))
    if abs(lams[idx] - 1.0) > trivial_tol:
        raise TrivialEigenvalueNotFound(
            f"closest A eigenvalue to 1 is {lams[idx]:.6g}, beyond {trivial_tol:.1e}"
        )
    rest = np.delete(lams, idx)
    return float(np.sum(rest).real), float(np.prod(rest).real)


def _pair_up(multipliers, pair_tol):
    """Partition four multipliers into reciprocal pairs."""
    lams = list(multipliers)
    pairings = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))]
    best, best_err = None, np.inf
    for p1, p2 in pairings:
        err = max(abs(lams[p1[0]] * lams[p1[1]] - 1.0),
                  abs(lams[p2[0]] * lams[p2[1]] - 1.0))
        if err < best_err:
            best, best_err = (p1, p2), err
    if best_err > pair_tol:
        raise NotReciprocalPairs(
            f"no pairing with |lam_i * lam_j - 1| <= {pair_tol:.1e} (best {best_err:.3e})"
        )
    return best


def git_point_from_multipliers(multipliers, pair_tol: float = 1e-6) -> tuple[float, float]:
    """p = (tr A, det A) from four reduced multipliers via symmetric polynomials.

    With reciprocal pairs (l1p, l2p) and (l1s, l2s),
    a = sum of cross products + 2 and b = sum of all four; then
    tr A = b/2 and det A = a/4 - 1/2.  No conjugation to block form needed.
    """
    lams = np.asarray(multipliers, dtype=complex)
    if lams.shape != (4,):
        raise NotReciprocalPairs(f"expected four multipliers, got {lams.shape}")
    (p1, p2) = _pair_up(lams, pair_tol)
    s1 = lams[p1[0]] + lams[p1[1]]
    s2 = lams[p2[0]] + lams[p2[1]]
    a = s1 * s2 + 2.0
    b = s1 + s2
    return float(b.real) / 2.0, float(a.real) / 4.0 - 0.5


class Region(str, Enum):
    """Broucke-diagram regions and boundary loci for n = 2."""

    E2 = "E2"
    EHplus = "EHplus"
    EHminus = "EHminus"
    Hpp = "Hpp"
    Hmm = "Hmm"
    Hmp = "Hmp"
    N = "N"
    GammaD = "GammaD"
    Gamma1 = "Gamma1"
    GammaMinus1 = "GammaMinus1"
    GammaEllipticBoundary = "GammaEllipticBoundary"


class PlanarRegion(str, Enum):
    """Reduced 2x2 trace classification for n = 1."""

    Elliptic = "Elliptic"
    PosHyp = "PosHyp"
    NegHyp = "NegHyp"
    Degenerate = "Degenerate"
    NegDegenerate = "NegDegenerate"


_FACTOR_COMBINE = {
    frozenset({"E"}): Region.E2,
    frozenset({"E", "H+"}): Region.EHplus,
    frozenset({"H-", "E"}): Region.EHminus,
    frozenset({"H+"}): Region.Hpp,
    frozenset({"H-"}): Region.Hmm,
    frozenset({"H-", "H+"}): Region.Hmp,
}


def classify_region(p, n: int = 2, boundary_tol: float = DEFAULT_BOUNDARY_TOL):
    """Classify a point of the stability diagram.

    For n = 2, ``p`` is (tr A, det A); the A eigenvalues alpha solve
    z^2 - x z + y = 0 and each factor is elliptic for alpha in (-1, 1),
    positive hyperbolic for alpha > 1, negative hyperbolic for alpha < -1.
    Returns (region, (alpha1, alpha2)) with alphas None when complex.
    For n = 1, ``p`` (scalar or 1-tuple) is the reduced 2x2 trace with
    thresholds at +-2; returns (region, trace).
    """
    if n == 1:
        t = float(np.atleast_1d(np.asarray(p, dtype=float))[0])
        if not np.isfinite(t):
            raise NonFinite("trace is not finite")
        if abs(t - 2.0) <= boundary_tol:
            return PlanarRegion.Degenerate, t
        if abs(t + 2.0) <= boundary_tol:
            return PlanarRegion.NegDegenerate, t
        if t > 2.0:
            return PlanarRegion.PosHyp, t
        if t < -2.0:
            return PlanarRegion.NegHyp, t
        return PlanarRegion.Elliptic, t

    x, y = float(p[0]), float(p[1])
    if not (np.isfinite(x) and np.isfinite(y)):
        raise NonFinite(f"p = ({x}, {y}) is not finite")
    disc = x * x - 4.0 * y
    if disc < -boundary_tol:
        return Region.N, None
    root = np.sqrt(max(disc, 0.0))
    alphas = ((x - root) / 2.0, (x + root) / 2.0)
    near_one = [abs(a - 1.0) <= boundary_tol for a in alphas]
    near_minus_one = [abs(a + 1.0) <= boundary_tol for a in alphas]
    if any(near_one):
        return Region.Gamma1, alphas
    if any(near_minus_one):
        return Region.GammaMinus1, alphas
    if abs(disc) <= boundary_tol:
        if -1.0 < alphas[0] < 1.0:
            return Region.GammaEllipticBoundary, alphas
        return Region.GammaD, alphas
    factors = set()
    for a in alphas:
        if a > 1.0:
            factors.add("H+")
        elif a < -1.0:
            factors.add("H-")
        else:
            factors.add("E")
    return _FACTOR_COMBINE[frozenset(factors)], alphas


@dataclass(frozen=True)
class PencilLine:
    """Bifurcation locus y = alpha*x - alpha^2, tangent to y = x^2/4 at x = 2*alpha."""

    alpha: float
    label: str

    @property
    def slope(self) -> float:
        return self.alpha

    @property
    def intercept(self) -> float:
        return -self.alpha * self.alpha

    def functional(self, p) -> float:
        """Signed affine functional y - alpha*x + alpha^2; zero on the line."""
        return float(p[1]) - self.alpha * float(p[0]) + self.alpha * self.alpha

    def tangency_point(self) -> tuple[float, float]:
        return 2.0 * self.alpha, self.alpha * self.alpha


def pencil_line(eigenvalue, circle_tol: float = 1e-9) -> PencilLine:
    """Line of monodromies carrying a fixed eigenvalue.

    Elliptic e^(2*pi*i*theta) gives slope cos(2*pi*theta); hyperbolic real
    lambda gives slope (lambda + 1/lambda)/2.
    """
    lam = complex(eigenvalue)
    if abs(lam.imag) <= circle_tol:
        lr = lam.real
        if abs(abs(lr) - 1.0) <= circle_tol:
            alpha = 1.0 if lr > 0 else -1.0
            theta = 0.0 if lr > 0 else 0.5
            return PencilLine(alpha=alpha, label=f"theta={theta}")
        if -1.0 < lr < 1.0:
            raise InvalidEigenvalue(f"real eigenvalue {lr} inside (-1, 1) is not hyperbolic")
        alpha = 0.5 * (lr + 1.0 / lr)
        return PencilLine(alpha=alpha, label=f"lambda={lr:.12g}")
    if abs(abs(lam) - 1.0) > circle_tol:
        raise InvalidEigenvalue(f"{lam} is neither on the unit circle nor real hyperbolic")
    theta = np.angle(lam) / (2.0 * np.pi) % 1.0
    return PencilLine(alpha=float(lam.real), label=f"theta={theta:.12g}")


def crossing_test(p_before, p_after, line: PencilLine) -> int:
    """Signed crossing flag: 0 if the functional keeps its sign, else the
    sign it ends with (+1 crossed upward, -1 crossed downward)."""
    g0 = line.functional(p_before)
    g1 = line.functional(p_after)
    if g0 * g1 < 0.0:
        return 1 if g1 > 0 else -1
    return 0


def char_poly_reduction(matrix, palindrome_tol: float = 1e-9):
    """Reduce the palindromic quartic of a 4x4 symplectic M to its quadratic.

    p(x) = x^4 + c3 x^3 + c2 x^2 + c1 x + 1 with c1 = c3 factors as
    x^2 q(x + 1/x) with q(y) = y^2 + b1 y + b0, b1 = c3, b0 = c2 - 2.
    Returns ((b1, b0), (mu1, mu2)) with real roots sorted ascending,
    complex roots returned with positive imaginary part first.
    """
    m = matrix.entries if isinstance(matrix, SymplecticMatrix) else np.asarray(matrix, float)
    if m.shape != (4, 4):
        raise NotPalindromic(f"expected a 4x4 matrix, got {m.shape}")
    coeffs = np.poly(m)  # [1, c3, c2, c1, c0]
    c3, c2, c1, c0 = coeffs[1], coeffs[2], coeffs[3], coeffs[4]
    if abs(c1 - c3) > palindrome_tol or abs(c0 - 1.0) > max(palindrome_tol, 1e-6):
        raise NotPalindromic(
            f"|c1 - c3| = {abs(c1 - c3):.3e}, |c0 - 1| = {abs(c0 - 1):.3e}"
        )
    b1, b0 = float(c3), float(c2 - 2.0)
    mus = np.roots([1.0, b1, b0])
    if np.max(np.abs(mus.imag)) <= palindrome_tol:
        mu = tuple(sorted(mus.real))
    else:
        mu = tuple(sorted(mus, key=lambda z: -z.imag))
    return (b1, b0), mu


@dataclass(frozen=True)
class GitDataPoint:
    """A stability-diagram data point: p, its region, and optional signatures.

    ``epsilon`` is the ordered pair of signs attached to the A eigenvalues
    alpha1 < alpha2 (present only when those are real and distinct);
    ``krein`` maps each elliptic multiplier with positive imaginary part to
    its sign.
    """

    p: tuple[float, float]
    region: Region | PlanarRegion
    alphas: tuple[float, float] | None = None
    epsilon: tuple[str, str] | None = None
    krein: tuple[tuple[complex, str], ...] | None = None

    def to_json(self) -> dict:
        doc = {
            "p": [self.p[0], self.p[1]],
            "region": self.region.value,
            "epsilon": list(self.epsilon) if self.epsilon is not None else None,
        }
        if self.krein is not None:
            doc["krein"] = [
                {"multiplier": [lam.real, lam.imag], "sign": sign} for lam, sign in self.krein
            ]
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "GitDataPoint":
        region_value = doc["region"]
        try:
            region = Region(region_value)
        except ValueError:
            region = PlanarRegion(region_value)
        eps = doc.get("epsilon")
        krein = doc.get("krein")
        return cls(
            p=(float(doc["p"][0]), float(doc["p"][1])),
            region=region,
            epsilon=tuple(eps) if eps is not None else None,
            krein=tuple(
                (complex(k["multiplier"][0], k["multiplier"][1]), k["sign"]) for k in krein
            ) if krein is not None else None,
        )


def sample_involution_blocks(rng: np.random.Generator, n: int = 2,
                             spread: float = 0.7) -> InvolutionBlocks:
    """Random valid (A, B, C) triple.

    Built as M = rho Phi^-1 rho Phi for a random symplectic Phi = exp(J S),
    which is exactly the block form a half-period flow produces at a
    symmetric point.
    """
    from scipy.linalg import expm

    s = rng.standard_normal((2 * n, 2 * n)) * spread
    s = (s + s.T) / 2.0
    phi = expm(standard_j(n) @ s)
    rho = np.diag([1.0] * n + [-1.0] * n)
    m = rho @ np.linalg.inv(phi) @ rho @ phi
    blocks, _ = involution_blocks(m)
    return blocks
