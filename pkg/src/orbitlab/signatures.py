"""B-signature at symmetric points and Krein signs for elliptic multipliers.

The B-sign of a real A eigenvalue mu is sign(v^T B v) for a unit
eigenvector v of A^T; the Krein sign of an elliptic multiplier lam with
positive imaginary part is the sign of the Hermitian form conj(v)^T G v
with G = -iJ.  On elliptic pairs of a symmetric orbit the two notions
agree, with the B-sign also covering hyperbolic multipliers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateEllipticPair, IndeterminateSign, NotRealDistinct
from .symplectic_core import (
    DEFAULT_BOUNDARY_TOL,
    DEFAULT_TRIVIAL_TOL,
    GitDataPoint,
    InvolutionBlocks,
    SymplecticMatrix,
    classify_region,
    git_point_from_blocks,
    involution_blocks,
    standard_j,
)

DEFAULT_SIGN_FLOOR = 1e-12


def _sign_label(value: float, floor: float, what: str) -> str:
    if abs(value) < floor:
        raise IndeterminateSign(f"{what} witness {value:.3e} below sign floor {floor:.1e}")
    return "+" if value > 0 else "-"


@dataclass(frozen=True)
class BSignature:
    """Signs of v_i^T B v_i over the ordered real A^T eigenpairs mu1 < mu2."""

    mu: tuple[float, float]
    eigenvectors: tuple[np.ndarray, np.ndarray]
    signs: tuple[str, str]
    quadratic_values: tuple[float, float]

    def to_json(self) -> dict:
        return {
            "mu": [self.mu[0], self.mu[1]],
            "signs": list(self.signs),
            "witness": [self.quadratic_values[0], self.quadratic_values[1]],
        }


def b_signature(blocks: InvolutionBlocks,
                trivial_tol: float = DEFAULT_TRIVIAL_TOL,
                boundary_tol: float = DEFAULT_BOUNDARY_TOL,
                sign_floor: float = DEFAULT_SIGN_FLOOR) -> BSignature:
    """B-signature of an involution-adapted monodromy block triple.

    For a 3x3 A (unreduced spatial case) the eigenvector whose eigenvalue
    is nearest 1 is discarded first.  The remaining eigenvalues must be
    real and distinct; eigenvectors are normalized before evaluating the
    quadratic form (cosmetic, the signs are scale invariant).
    """
    At = blocks.A.T
    lams, vecs = np.linalg.eig(At)
    idx = list(range(len(lams)))
    if blocks.n == 3:
        trivial = int(np.argmin(np.abs(lams - 1.0)))
        idx.remove(trivial)
    if len(idx) != 2:
        raise NotRealDistinct(f"expected two nontrivial eigenvalues, have {len(idx)}")
    pair = [lams[i] for i in idx]
    if np.max(np.abs(np.imag(pair))) > boundary_tol:
        raise NotRealDistinct(f"A eigenvalues {pair[0]:.6g}, {pair[1]:.6g} are complex")
    if abs(pair[0].real - pair[1].real) <= boundary_tol:
        raise NotRealDistinct(f"A eigenvalues coincide at {pair[0].real:.6g}")
    idx.sort(key=lambda i: lams[i].real)
    mus, vs, witnesses, signs = [], [], [], []
    for i in idx:
        v = np.real(vecs[:, i])
        v = v / np.linalg.norm(v)
        w = float(v @ blocks.B @ v)
        mus.append(float(lams[i].real))
        vs.append(v)
        witnesses.append(w)
        signs.append(_sign_label(w, sign_floor, f"B-sign of mu={lams[i].real:.6g}"))
    return BSignature(
        mu=(mus[0], mus[1]),
        eigenvectors=(vs[0], vs[1]),
        signs=(signs[0], signs[1]),
        quadratic_values=(witnesses[0], witnesses[1]),
    )


@dataclass(frozen=True)
class KreinSigns:
    """Krein signs keyed by the elliptic multipliers with im > 0."""

    entries: tuple[tuple[complex, str], ...]
    witness_values: tuple[float, ...]

    def sign_of(self, lam: complex) -> str:
        for stored, sign in self.entries:
            if abs(stored - lam) < 1e-9:
                return sign
            if abs(np.conj(stored) - lam) < 1e-9:
                return "-" if sign == "+" else "+"
        raise KeyError(f"{lam} is not one of the stored elliptic multipliers")


def krein_signs(matrix,
                circle_tol: float = 1e-6,
                boundary_tol: float = DEFAULT_BOUNDARY_TOL,
                sign_floor: float = DEFAULT_SIGN_FLOOR,
                exclude_trivial_within: float = 0.0) -> KreinSigns:
    """Krein sign of each simple elliptic multiplier pair of M.

    For every eigenvalue lam on the unit circle with im(lam) > 0 we take an
    eigenvector v and report sign(conj(v)^T (-iJ) v); the conjugate
    multiplier carries the opposite sign by construction.  Unit-circle
    eigenvalues within ``exclude_trivial_within`` of 1 are skipped, which
    lets callers drop the drifted trivial pair of an unreduced monodromy.
    """
    m = matrix.entries if isinstance(matrix, SymplecticMatrix) else np.asarray(matrix, float)
    half = m.shape[0] // 2
    g = -1j * standard_j(half)
    lams, vecs = np.linalg.eig(m)
    entries, witnesses = [], []
    order = np.argsort(lams.real)
    for i in order:
        lam = lams[i]
        if lam.imag <= circle_tol:
            continue
        if abs(abs(lam) - 1.0) > circle_tol:
            continue
        if exclude_trivial_within and abs(lam - 1.0) <= exclude_trivial_within:
            continue
        clones = np.sum(np.abs(lams - lam) <= max(boundary_tol, 10 * circle_tol))
        if clones > 1:
            raise DegenerateEllipticPair(f"elliptic multiplier {lam:.6g} is not simple")
        v = vecs[:, i]
        w = np.conj(v) @ g @ v
        if abs(w.imag) > 1e-9 * max(1.0, abs(w.real)):
            raise DegenerateEllipticPair(f"Krein witness for {lam:.6g} is not real: {w:.3e}")
        wr = float(w.real)
        entries.append((complex(lam), _sign_label(wr, sign_floor, f"Krein sign of {lam:.6g}")))
        witnesses.append(wr)
    return KreinSigns(entries=tuple(entries), witness_values=tuple(witnesses))


def git_data_point(blocks: InvolutionBlocks | None = None,
                   matrix=None,
                   trivial_tol: float = DEFAULT_TRIVIAL_TOL,
                   boundary_tol: float = DEFAULT_BOUNDARY_TOL,
                   sign_floor: float = DEFAULT_SIGN_FLOOR,
                   circle_tol: float = 1e-6,
                   exclude_trivial_within: float = 0.0) -> GitDataPoint:
    """Assemble the (p, region, epsilon, krein) data point of an orbit.

    ``blocks`` enables the B-signature; ``matrix`` (the full monodromy, any
    symplectic frame) enables Krein signs.  Degenerate or non-real
    configurations leave epsilon absent rather than guessing.
    """
    if blocks is None and matrix is None:
        raise ValueError("need blocks, a matrix, or both")
    if blocks is None:
        blocks, _ = involution_blocks(matrix)
    p = git_point_from_blocks(blocks, trivial_tol=trivial_tol)
    region, alphas = classify_region(p, n=2, boundary_tol=boundary_tol)
    epsilon = None
    try:
        sig = b_signature(blocks, trivial_tol=trivial_tol,
                          boundary_tol=boundary_tol, sign_floor=sign_floor)
        epsilon = sig.signs
    except (NotRealDistinct, IndeterminateSign):
        pass
    krein = None
    if matrix is not None:
        try:
            ks = krein_signs(matrix, circle_tol=circle_tol, boundary_tol=boundary_tol,
                             sign_floor=sign_floor,
                             exclude_trivial_within=exclude_trivial_within)
            krein = ks.entries
        except (DegenerateEllipticPair, IndeterminateSign):
            pass
    return GitDataPoint(p=p, region=region, alphas=alphas, epsilon=epsilon, krein=krein)
