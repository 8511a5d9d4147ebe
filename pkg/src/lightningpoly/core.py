"""Sector domains, prototype singular functions, and sampling utilities.

The basic geometric object is a closed circular sector with its corner at
the origin: radii in [0, R] and arguments in [-beta*pi/2, beta*pi/2] for a
half-opening parameter beta in [0, 2).  beta = 0 degenerates to the segment
[0, R]; beta -> 2 approaches the full slit disk.  Prototype functions
z**alpha and z**alpha*log(z) use the principal branch, with the cut along
the negative real axis, and may carry an entire multiplier g.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from .errors import BranchCutError

# Prototype kinds.
POW = "pow"
POW_LOG = "pow_log"

# Sample point tags.
TIP = "TIP"
ARC = "ARC"
RAY_PLUS = "RAY_PLUS"
RAY_MINUS = "RAY_MINUS"
INTERIOR = "INTERIOR"

#: Entire multipliers available by name.  Callables must accept complex
#: ndarray input and be analytic on a neighborhood of the sector.
G_CATALOG: dict[str, Callable] = {
    "one": lambda z: np.ones_like(z, dtype=complex),
    "cos": np.cos,
    "exp": np.exp,
    "sin_z5": lambda z: np.sin(z ** 5),
}


def kappa_of_beta(beta: float) -> float:
    """Distance factor kappa(beta): min |1 + w| over unit w in the sector.

    Equals 1 for beta in [0, 1) and sin(beta*pi/2) for beta in [1, 2).
    It bounds |y + z| >= kappa * max(y, |z|) for y > 0 and z in the sector,
    which is what keeps the integral representations away from their poles.
    """
    if not 0.0 <= beta < 2.0:
        raise ValueError(f"beta must lie in [0, 2), got {beta}")
    if beta < 1.0:
        return 1.0
    return math.sin(beta * math.pi / 2.0)


@dataclass(frozen=True)
class SectorDomain:
    """Closed circular sector {x*exp(i*theta*pi/2): x in [0,R], |theta| <= beta}."""

    beta: float
    radius: float = 1.0
    kappa_beta: float = field(init=False)

    def __post_init__(self):
        if not 0.0 <= self.beta < 2.0:
            raise ValueError(f"beta must lie in [0, 2), got {self.beta}")
        if not self.radius > 0.0:
            raise ValueError(f"radius must be positive, got {self.radius}")
        object.__setattr__(self, "kappa_beta", kappa_of_beta(self.beta))

    @property
    def half_angle(self) -> float:
        """Half opening angle beta*pi/2 in radians."""
        return self.beta * math.pi / 2.0


def make_sector(beta: float, radius: float = 1.0) -> SectorDomain:
    """Construct a sector domain with parameter checks."""
    return SectorDomain(beta=beta, radius=radius)


@dataclass(frozen=True)
class PrototypeSpec:
    """A prototype singular function g(z)*z**alpha or g(z)*z**alpha*log(z).

    Parameters
    ----------
    kind : str
        Either ``"pow"`` or ``"pow_log"``.
    alpha : float
        Singularity exponent, must be positive.
    g : str or callable
        Entire multiplier: a key of :data:`G_CATALOG` or a callable taking
        complex ndarray input.  Defaults to ``"one"``.
    """

    kind: str
    alpha: float
    g: Union[str, Callable] = "one"

    def __post_init__(self):
        if self.kind not in (POW, POW_LOG):
            raise ValueError(f"kind must be {POW!r} or {POW_LOG!r}, got {self.kind!r}")
        if not self.alpha > 0.0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if isinstance(self.g, str) and self.g not in G_CATALOG:
            raise ValueError(f"unknown multiplier {self.g!r}; known: {sorted(G_CATALOG)}")

    def g_callable(self) -> Callable:
        return G_CATALOG[self.g] if isinstance(self.g, str) else self.g


def _as_complex(z):
    arr = np.asarray(z, dtype=complex)
    return arr, arr.ndim == 0


def check_slit_plane(z) -> None:
    """Raise BranchCutError if any point sits on the open negative real axis."""
    arr = np.asarray(z, dtype=complex)
    if np.any((arr.real < 0.0) & (arr.imag == 0.0)):
        raise BranchCutError("evaluation point on the negative real axis (branch cut)")


def prototype_eval(spec: PrototypeSpec, z):
    """Evaluate the prototype function at z (scalar or ndarray).

    Uses the principal branch of z**alpha and log(z).  z = 0 maps to 0
    (the limit value, valid since alpha > 0).  Points on the open negative
    real axis raise :class:`BranchCutError`.
    """
    arr, scalar = _as_complex(z)
    check_slit_plane(arr)
    out = np.zeros(arr.shape, dtype=complex)
    nz = arr != 0
    w = arr[nz]
    vals = np.power(w, spec.alpha)
    if spec.kind == POW_LOG:
        vals = vals * np.log(w)
    out[nz] = vals * spec.g_callable()(w)
    return out[()] if scalar else out


@dataclass(frozen=True, eq=False)
class SamplePlan:
    """A finite point set on a sector with role tags.

    ``points`` and ``tags`` are parallel arrays; tags take the values
    TIP, ARC, RAY_PLUS, RAY_MINUS, INTERIOR.
    """

    points: np.ndarray
    tags: np.ndarray

    def __post_init__(self):
        if len(self.points) != len(self.tags):
            raise ValueError("points and tags must have equal length")

    def __len__(self) -> int:
        return len(self.points)

    def select(self, *wanted: str) -> np.ndarray:
        """Points whose tag is one of ``wanted``."""
        mask = np.isin(self.tags, wanted)
        return self.points[mask]


def sample_sector(domain: SectorDomain, n_radial: int = 60,
                  n_angular: int | None = None) -> SamplePlan:
    """Tensor sampling of the sector, geometric in radius.

    Radii run from ``radius`` down to ``1e-16 * radius`` geometrically
    (n_radial points); angles span [-beta*pi/2, beta*pi/2] inclusive
    (n_angular points, default 21 for beta > 0 and 1 for beta = 0).
    The origin is appended once, tagged TIP.  Points with |z| = radius are
    tagged ARC, remaining points on the two boundary rays RAY_PLUS /
    RAY_MINUS, and the rest INTERIOR.  For beta = 0 the rays coincide and
    the single ray is tagged RAY_PLUS.
    """
    if n_radial < 2:
        raise ValueError("n_radial must be at least 2")
    if n_angular is None:
        n_angular = 21 if domain.beta > 0 else 1
    if domain.beta > 0 and n_angular < 2:
        raise ValueError("n_angular must be at least 2 for beta > 0 "
                         "(both boundary rays must be present)")
    if n_angular < 1:
        raise ValueError("n_angular must be at least 1")

    i = np.arange(n_radial)
    radii = domain.radius * 10.0 ** (-16.0 * i / (n_radial - 1))
    if domain.beta == 0:
        angles = np.zeros(1)
    else:
        angles = np.linspace(-domain.half_angle, domain.half_angle, n_angular)

    points = []
    tags = []
    for j, theta in enumerate(angles):
        ray = np.exp(1j * theta)
        if domain.beta == 0:
            ray_tag = RAY_PLUS
        elif j == 0:
            ray_tag = RAY_MINUS
        elif j == len(angles) - 1:
            ray_tag = RAY_PLUS
        else:
            ray_tag = INTERIOR
        for r in radii:
            points.append(r * ray)
            tags.append(ARC if r == domain.radius else ray_tag)
    points.append(0.0 + 0.0j)
    tags.append(TIP)
    return SamplePlan(points=np.asarray(points, dtype=complex),
                      tags=np.asarray(tags))


def chebyshev_nodes(ell: int, delta: float) -> np.ndarray:
    """Chebyshev nodes of the interval [delta, delta + 1].

    Returns the ell roots of T_ell(2*(s - delta) - 1) in increasing order,

        s_k = delta + (1 + cos((2*ell - 2*k + 1)*pi/(2*ell)))/2,  k = 1..ell.

    ell = 0 returns an empty array.
    """
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    if not delta > 0.0:
        raise ValueError("delta must be positive")
    if ell == 0:
        return np.empty(0)
    k = np.arange(1, ell + 1)
    return delta + 0.5 * (1.0 + np.cos((2 * ell - 2 * k + 1) * np.pi / (2 * ell)))


def lagrange_eval(nodes, values, z):
    """Evaluate the Lagrange interpolant through (nodes, values) at z.

    Empty node set yields 0.  Nodes must be pairwise distinct.  z may be a
    scalar or ndarray; evaluation at a node reproduces its value exactly.
    """
    nodes = np.asarray(nodes, dtype=float)
    values = np.asarray(values, dtype=complex)
    if nodes.shape != values.shape:
        raise ValueError("nodes and values must have matching shapes")
    arr, scalar = _as_complex(z)
    if nodes.size == 0:
        out = np.zeros(arr.shape, dtype=complex)
        return out[()] if scalar else out
    if np.min(np.abs(np.subtract.outer(nodes, nodes) +
                     np.eye(nodes.size))) == 0.0:
        raise ValueError("nodes must be pairwise distinct")
    out = np.zeros(arr.shape, dtype=complex)
    for k in range(nodes.size):
        term = np.full(arr.shape, values[k], dtype=complex)
        for m in range(nodes.size):
            if m != k:
                term = term * (arr - nodes[m]) / (nodes[k] - nodes[m])
        out = out + term
    return out[()] if scalar else out
