"""Counting invariants that stay fixed across bifurcations.

Two bookkeeping quantities are computed from ledgers of orbit or chord
entries: a signed count of good orbits by Conley-Zehnder parity, and a
Gaussian-integer sum i^(m_L) over symmetric chords.  Both are driven by
the multiplier classification of iterated orbits; no index is ever
computed beyond its parity, and the half-integer chord index comes from
Chebyshev matrix evaluations on the (A, C) blocks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .errors import (
    DegenerateEntry,
    DegenerateType,
    SingularC,
    SingularU,
)
from .symplectic_core import (
    DEFAULT_BOUNDARY_TOL,
    InvolutionBlocks,
    PlanarRegion,
    Region,
    classify_region,
    git_point_from_multipliers,
)

DEGENERATE = "Degenerate"

# Generic representative multipliers per simple type, used when a ledger
# entry does not carry explicit ones.  Elliptic angles are irrational so
# low-order covers never degenerate.
_GOLDEN = 0.6180339887498949
_ANGLE_A = _GOLDEN
_ANGLE_B = _GOLDEN / 2.0


def _elliptic(theta):
    lam = np.exp(2j * np.pi * theta)
    return [lam, np.conj(lam)]


_REPRESENTATIVES = {
    (4, PlanarRegion.Elliptic): _elliptic(_ANGLE_A),
    (4, PlanarRegion.PosHyp): [2.0, 0.5],
    (4, PlanarRegion.NegHyp): [-2.0, -0.5],
    (6, Region.E2): _elliptic(_ANGLE_A) + _elliptic(_ANGLE_B),
    (6, Region.EHplus): _elliptic(_ANGLE_A) + [2.0, 0.5],
    (6, Region.EHminus): [-2.0, -0.5] + _elliptic(_ANGLE_A),
    (6, Region.Hpp): [2.0, 0.5, 3.0, 1.0 / 3.0],
    (6, Region.Hmm): [-2.0, -0.5, -3.0, -1.0 / 3.0],
    (6, Region.Hmp): [-2.0, -0.5, 3.0, 1.0 / 3.0],
    (6, Region.N): [1.2 * np.exp(2j * np.pi * _ANGLE_A),
                    np.conj(1.2 * np.exp(2j * np.pi * _ANGLE_A)),
                    1 / (1.2 * np.exp(2j * np.pi * _ANGLE_A)),
                    np.conj(1 / (1.2 * np.exp(2j * np.pi * _ANGLE_A)))],
}


def cover_multipliers(simple_multipliers, k: int) -> np.ndarray:
    return np.asarray(simple_multipliers, dtype=complex) ** k


def cover_type(simple_multipliers, k: int,
               boundary_tol: float = DEFAULT_BOUNDARY_TOL):
    """Orbit type of the k-fold cover, or DEGENERATE when a power hits 1.

    Two multipliers classify through the reduced 2x2 trace, four through
    the stability-diagram point of their k-th powers.
    """
    lams = cover_multipliers(simple_multipliers, k)
    if np.min(np.abs(lams - 1.0)) <= boundary_tol:
        return DEGENERATE
    if lams.shape[0] == 2:
        trace = float(np.sum(lams).real)
        region, _ = classify_region(trace, n=1, boundary_tol=boundary_tol)
        return region
    p = git_point_from_multipliers(lams)
    region, _ = classify_region(p, n=2, boundary_tol=boundary_tol)
    return region


_CZ_PARITY = {
    PlanarRegion.Elliptic: "odd",
    PlanarRegion.NegHyp: "odd",
    PlanarRegion.PosHyp: "even",
    Region.Hmm: "even",
    Region.EHminus: "even",
    Region.Hmp: "odd",
    Region.E2: "even",
    Region.EHplus: "odd",
    Region.Hpp: "even",
    Region.N: "even",
}


def cz_parity(orbit_type) -> str:
    """Conley-Zehnder index parity of a nondegenerate orbit type."""
    try:
        return _CZ_PARITY[orbit_type]
    except KeyError:
        raise DegenerateType(f"no parity for type {orbit_type!r}") from None


_BAD_SIMPLE = {4: {PlanarRegion.NegHyp}, 6: {Region.EHminus, Region.Hmp}}
_BAD_COVER = {PlanarRegion.NegHyp: PlanarRegion.PosHyp,
              Region.EHminus: Region.EHplus,
              Region.Hmp: Region.Hpp}


@dataclass(frozen=True)
class OrbitTypeEntry:
    """A k-fold cover of a simple orbit, with its derived classification."""

    dim: int
    simple_type: PlanarRegion | Region
    cover_k: int = 1
    simple_multipliers: tuple = None
    cover_type: object = field(init=False)
    cz_parity: str = field(init=False)
    is_good: bool = field(init=False)

    def __post_init__(self):
        if self.simple_multipliers is None:
            mults = tuple(_REPRESENTATIVES[(self.dim, self.simple_type)])
            object.__setattr__(self, "simple_multipliers", mults)
        ct = cover_type(self.simple_multipliers, self.cover_k)
        object.__setattr__(self, "cover_type", ct)
        parity = None if ct == DEGENERATE else _CZ_PARITY.get(ct)
        object.__setattr__(self, "cz_parity", parity)
        good = True
        if (self.cover_k % 2 == 0
                and self.simple_type in _BAD_SIMPLE.get(self.dim, set())
                and ct == _BAD_COVER[self.simple_type]):
            good = False
        object.__setattr__(self, "is_good", good)

    def to_json(self) -> dict:
        return {"dim": self.dim, "simple_type": self.simple_type.value, "k": self.cover_k}

    @classmethod
    def from_json(cls, doc: dict) -> "OrbitTypeEntry":
        dim = int(doc["dim"])
        enum = PlanarRegion if dim == 4 else Region
        mults = doc.get("simple_multipliers")
        return cls(dim=dim, simple_type=enum(doc["simple_type"]), cover_k=int(doc.get("k", 1)),
                   simple_multipliers=tuple(complex(m[0], m[1]) for m in mults) if mults else None)


def is_good(entry: OrbitTypeEntry) -> bool:
    """A cover is bad exactly when an even iterate flips a negative
    hyperbolic factor positive hyperbolic; everything else is good."""
    if entry.cover_type == DEGENERATE:
        raise DegenerateEntry(f"cover of {entry.simple_type} at k={entry.cover_k} is degenerate")
    return entry.is_good


@dataclass(frozen=True)
class GaussianInt:
    """Exact Gaussian integer, the value type of the chord invariant."""

    re: int = 0
    im: int = 0

    def __add__(self, other):
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __mul__(self, other):
        return GaussianInt(self.re * other.re - self.im * other.im,
                           self.re * other.im + self.im * other.re)

    def __repr__(self):
        return f"{self.re}{self.im:+d}i"


_I_POWERS = (GaussianInt(1, 0), GaussianInt(0, 1), GaussianInt(-1, 0), GaussianInt(0, -1))


def i_power(exponent: int) -> GaussianInt:
    return _I_POWERS[exponent % 4]


def chord_sign(cz_parity_label: str, s) -> GaussianInt:
    """Unit i^(m_L) with m_L = 2*mu_CZ - 2*s, well defined mod 4.

    Only the parity of mu_CZ enters through (-1)^parity; ``s`` must be an
    integer multiple of one half.
    """
    two_s = round(2.0 * float(s))
    if abs(2.0 * float(s) - two_s) > 1e-9:
        raise ValueError(f"s = {s} is not a half-integer")
    parity_bit = {"even": 0, "odd": 1}[cz_parity_label]
    return i_power(2 * parity_bit - two_s)


@dataclass(frozen=True)
class ChordEntry:
    """A nondegenerate symmetric chord, identified by CZ parity and s."""

    cz_parity: str
    s: float
    maslov_unit: GaussianInt = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "maslov_unit", chord_sign(self.cz_parity, self.s))

    def to_json(self) -> dict:
        return {"cz_parity": self.cz_parity, "s": self.s}

    @classmethod
    def from_json(cls, doc: dict) -> "ChordEntry":
        return cls(cz_parity=doc["cz_parity"], s=float(doc["s"]))


@dataclass
class OrbitLedger:
    """Multiset of orbit or chord entries on one side of a bifurcation."""

    entries: list
    label: str | None = None

    def to_json(self) -> list:
        return [e.to_json() for e in self.entries]

    @classmethod
    def from_json(cls, docs: list, label: str | None = None) -> "OrbitLedger":
        entries = []
        for doc in docs:
            if "cz_parity" in doc and "s" in doc:
                entries.append(ChordEntry.from_json(doc))
            else:
                entries.append(OrbitTypeEntry.from_json(doc))
        return cls(entries=entries, label=label)


def chi_sft(ledger: OrbitLedger) -> int:
    """Good orbits with even CZ parity minus good orbits with odd parity."""
    total = 0
    for entry in ledger.entries:
        if entry.cover_type == DEGENERATE:
            raise DegenerateEntry(
                f"{entry.simple_type} cover k={entry.cover_k} is degenerate"
            )
        if not entry.is_good:
            continue
        total += 1 if entry.cz_parity == "even" else -1
    return total


def chi_real(ledger: OrbitLedger) -> GaussianInt:
    """Gaussian-integer sum of i^(m_L) over the chord entries."""
    total = GaussianInt(0, 0)
    for entry in ledger.entries:
        total = total + entry.maslov_unit
    return total


def chebyshev_matrix(kind: str, k: int, A) -> np.ndarray:
    """T_k(A) or U_k(A) by the three-term recursion X_{k+1} = 2A X_k - X_{k-1}."""
    a = np.asarray(A, dtype=float)
    n = a.shape[0]
    if kind not in ("first", "second"):
        raise ValueError(f"kind must be 'first' or 'second', got {kind!r}")
    prev = np.eye(n)
    if k == 0:
        return prev
    cur = a.copy() if kind == "first" else 2.0 * a
    for _ in range(k - 1):
        prev, cur = cur, 2.0 * a @ cur - prev
    return cur


def hormander_index(blocks: InvolutionBlocks, k: int = 1,
                    cond_bound: float = 1e12, zero_tol: float = 1e-12) -> float:
    """Half the signature of (I - T_k(A)) U_{k-1}(A)^-1 C^-1.

    The product is a quadratic form in exact arithmetic; it is symmetrized
    before the signature is taken to shed floating-point noise.
    """
    A, C = blocks.A, blocks.C
    n = A.shape[0]
    if np.linalg.cond(C) > cond_bound:
        raise SingularC("C block is numerically singular (degenerate orbit)")
    u = chebyshev_matrix("second", k - 1, A)
    if np.linalg.cond(u) > cond_bound:
        raise SingularU(f"U_{k-1}(A) is numerically singular (resonance at iterate {k})")
    t = chebyshev_matrix("first", k, A)
    product = (np.eye(n) - t) @ np.linalg.inv(u) @ np.linalg.inv(C)
    sym = (product + product.T) / 2.0
    eigs = np.linalg.eigvalsh(sym)
    scale = max(1.0, float(np.max(np.abs(eigs))))
    pos = int(np.sum(eigs > zero_tol * scale))
    neg = int(np.sum(eigs < -zero_tol * scale))
    return (pos - neg) / 2.0


# ---------------------------------------------------------------------------
# Bifurcation-scenario fixtures (data driven)

def load_scenario(doc: dict):
    """Decode one scenario document into (name, invariant, before, after)."""
    before = OrbitLedger.from_json(doc["before"], label="before")
    after = OrbitLedger.from_json(doc["after"], label="after")
    return doc["name"], doc.get("invariant", "chi_sft"), before, after


def builtin_scenarios() -> list:
    """All shipped bifurcation-scenario fixtures, sorted by name."""
    root = resources.files("orbitlab").joinpath("data/ledgers")
    docs = []
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".json"):
            docs.append(load_scenario(json.loads(entry.read_text())))
    return docs
