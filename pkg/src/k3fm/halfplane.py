"""Floating-point layer: upper-half-plane actions, the tube-domain
embedding, central charges, and the cross-checks tying the 2x2 and 3x3
pictures together.

Exactness lives in the other modules; this one renders coset elements to
real matrices (the only place a square root is taken) and measures
agreement with relative tolerances, 1e-12 for local arithmetic and 1e-9
for composed pipelines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .corr import represent
from .errors import LevelMismatch, NotInUpperHalfPlane, NumericalPole, ZeroRank
from .fmcalc import InducedTransform, MukaiVector
from .lattice import IsometryN
from .modgroup import ALElement

__all__ = [
    "HalfPlanePoint",
    "TubeVector",
    "real_matrix",
    "embed",
    "mobius",
    "induced_action",
    "central_charge",
    "equivariance_defect",
    "charge_product_defect",
]

_TINY = 1e-300


@dataclass(frozen=True)
class HalfPlanePoint:
    """z = u + i*v with v > 0."""

    u: float
    v: float

    def __post_init__(self) -> None:
        if not self.v > 0:
            raise NotInUpperHalfPlane(f"v={self.v} is not positive")

    @property
    def z(self) -> complex:
        return complex(self.u, self.v)


@dataclass(frozen=True)
class TubeVector:
    """The class of exp(z*L) = (1, z, d*z^2) in coordinates (e0, ell, e4);
    isotropic, and positively paired with its conjugate."""

    d: int
    components: tuple[complex, complex, complex]


def real_matrix(w: ALElement) -> tuple[tuple[float, float], tuple[float, float]]:
    """Render the quintuple to its real 2x2 matrix; the single irrational
    ingredient sqrt(s) enters here and nowhere else."""
    root = math.sqrt(w.s)
    return (
        (w.a * root, w.b / root),
        (w.c * (w.d // w.s) * root, w.e * root),
    )


def embed(z: HalfPlanePoint, d: int) -> TubeVector:
    """z -> [exp(z*L)] = (1, z, d*z^2)."""
    zz = z.z
    return TubeVector(d, (complex(1.0), zz, d * zz * zz))


def mobius(w: ALElement, z: HalfPlanePoint) -> HalfPlanePoint:
    """Fractional-linear action of w.

    The imaginary part of the image of a determinant-one matrix is exactly
    v / |gamma*z + delta|^2; computing it that way keeps it positive where
    the naive complex quotient would cancel catastrophically for large
    entries.  A vanishing denominator is the (measure-zero) pole.
    """
    (al, be), (ga, de) = real_matrix(w)
    zz = z.z
    den = ga * zz + de
    den2 = den.real * den.real + den.imag * den.imag
    if den2 < _TINY:
        raise NumericalPole("Moebius denominator vanished")
    num = (al * zz + be) * den.conjugate()
    v_out = z.v / den2
    if not v_out > 0:
        raise NumericalPole("image collapsed onto the real axis")
    return HalfPlanePoint(num.real / den2, v_out)


def induced_action(
    d: int, rank: int, n_src: int, n_tgt: int, z: HalfPlanePoint
) -> HalfPlanePoint:
    """Action on the half plane of a rank/twist datum:

        z -> (1/(d*|rank|)) * (-1/(z - n_src/rank)) + n_tgt/rank.

    Rank zero acts by translation instead; use mobius with a translation.
    """
    if rank == 0:
        raise ZeroRank("rank-zero transforms act by translation")
    zz = z.z - n_src / rank
    if abs(zz) < _TINY:
        raise NumericalPole("action evaluated at its pole")
    out = (-1.0 / zz) / (d * abs(rank)) + n_tgt / rank
    if not out.imag > 0:
        raise NumericalPole(f"image {out} left the upper half plane")
    return HalfPlanePoint(out.real, out.imag)


def central_charge(beta: float, omega: float, v: MukaiVector) -> complex:
    """<exp((beta + i*omega) L), v> with the pairing extended bilinearly;
    beta and omega are the real multiples of L, omega > 0."""
    if not omega > 0:
        raise NotInUpperHalfPlane(f"omega={omega} is not positive")
    zz = complex(beta, omega)
    return 2 * v.d * zz * v.n - v.s - v.d * zz * zz * v.r


def equivariance_defect(
    w: ALElement, z: HalfPlanePoint, isometry: IsometryN | None = None
) -> float:
    """Distance between the 3x3 lift acting on the embedded point and the
    embedding of the 2x2 action.

    Both images of the complex line are rescaled by their best-conditioned
    coordinate (largest magnitude, never a near-zero first component)
    before comparing; near zero certifies the two pictures agree through
    the tube domain.  Passing a matrix overrides the lift so a harness can
    check that corruption is visible.
    """
    g = represent(w) if isometry is None else isometry
    if g.d != w.d:
        raise LevelMismatch("matrix level does not match the element")
    gm = tuple(tuple(float(x) for x in row) for row in g.m)
    tv = embed(z, w.d).components
    x = tuple(sum(gm[i][k] * tv[k] for k in range(3)) for i in range(3))
    y = embed(mobius(w, z), w.d).components
    j = max(range(3), key=lambda i: abs(x[i]) + abs(y[i]))
    if abs(x[j]) < _TINY or abs(y[j]) < _TINY:
        raise NumericalPole("projectivization degenerated")
    return math.sqrt(sum(abs(x[i] / x[j] - y[i] / y[j]) ** 2 for i in range(3)))


def charge_product_defect(t: InducedTransform, z: HalfPlanePoint) -> float:
    """|Z_src(z) * Z_tgt(t(z)) - 1| for the isotropic point-image vectors of
    a rank-nonzero transform.

    The source-side vector is (rank, n_src, d*n_src^2/rank) and likewise on
    the target side; isotropy makes both fourth components integers.
    """
    if t.rank == 0:
        raise ZeroRank("rank-zero transforms have no charge product")
    d = t.image.d
    s_src, rem_src = divmod(d * t.n_src * t.n_src, t.rank)
    s_tgt, rem_tgt = divmod(d * t.n_tgt * t.n_tgt, t.rank)
    if rem_src or rem_tgt:
        raise ValueError("twist data do not form isotropic vectors")
    v_src = MukaiVector(d, t.rank, t.n_src, s_src)
    v_tgt = MukaiVector(d, t.rank, t.n_tgt, s_tgt)
    z2 = mobius(t.image, z)
    prod = central_charge(z.u, z.v, v_src) * central_charge(z2.u, z2.v, v_tgt)
    return abs(prod - 1.0)
