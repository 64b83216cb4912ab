"""The rank-3 lattice Z*e0 + Z*ell + Z*e4 with Gram matrix

    [[0, 0, -1], [0, 2d, 0], [-1, 0, 0]]

(signature (2,1)): exact isometry tests, the orientation test on the
positive 2-plane, and the induced unit on the discriminant group Z/2d.

Matrices are 3x3 tuples of exact numbers (int or Fraction); columns are the
images of the basis vectors (e0, ell, e4) and matrices act on coordinate
columns from the left.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ActionNotDiagonal, LevelMismatch, NotAnIsometry, NotIntegral

__all__ = [
    "Exact",
    "Matrix",
    "LatticeVector",
    "IsometryN",
    "DiscriminantUnit",
    "gram_matrix",
    "identity_matrix",
    "mat_mul",
    "mat_vec",
    "mat_transpose",
    "mat_neg",
    "mat_det",
    "mukai_pairing",
    "is_isometry",
    "is_orientation_preserving",
    "discriminant_unit",
    "in_star_kernel",
    "isometry_product",
    "isometry_neg",
    "isometry_to_json",
    "isometry_from_json",
]

Exact = Union[int, Fraction]
Matrix = tuple[tuple[Exact, Exact, Exact], ...]


def _as_exact(x) -> Exact:
    """Coerce to int or Fraction; floats are refused, exactness is the point."""
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    if isinstance(x, str):
        return _as_exact(Fraction(x))
    raise TypeError(f"expected an exact number, got {type(x).__name__}")


def gram_matrix(d: int) -> Matrix:
    return ((0, 0, -1), (0, 2 * d, 0), (-1, 0, 0))


def identity_matrix() -> Matrix:
    return ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3))
        for i in range(3)
    )


def mat_vec(a: Matrix, v) -> tuple:
    return tuple(sum(a[i][k] * v[k] for k in range(3)) for i in range(3))


def mat_transpose(a: Matrix) -> Matrix:
    return tuple(tuple(a[j][i] for j in range(3)) for i in range(3))


def mat_neg(a: Matrix) -> Matrix:
    return tuple(tuple(-x for x in row) for row in a)


def mat_det(a: Matrix) -> Exact:
    return (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )


@dataclass(frozen=True)
class LatticeVector:
    """Exact-rational coordinates (x0, x_ell, x4) in the basis (e0, ell, e4)."""

    d: int
    coords: tuple[Exact, Exact, Exact]

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError("d must be a positive integer")
        if len(self.coords) != 3:
            raise ValueError("coords must have length 3")
        object.__setattr__(self, "coords", tuple(_as_exact(x) for x in self.coords))


def _pair(d: int, u, v) -> Exact:
    return 2 * d * u[1] * v[1] - u[0] * v[2] - u[2] * v[0]


def mukai_pairing(u: LatticeVector, v: LatticeVector) -> Exact:
    """<u, v> = 2d*u_ell*v_ell - u0*v4 - u4*v0, symmetric bilinear."""
    if u.d != v.d:
        raise LevelMismatch(f"cannot pair vectors at d={u.d} and d={v.d}")
    return _pair(u.d, u.coords, v.coords)


@dataclass(frozen=True)
class IsometryN:
    """A 3x3 exact-rational matrix acting on the lattice; whether it really
    preserves the Gram form is a question (is_isometry), not an assumption."""

    d: int
    m: Matrix

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError("d must be a positive integer")
        if len(self.m) != 3 or any(len(row) != 3 for row in self.m):
            raise ValueError("m must be 3x3")
        object.__setattr__(
            self, "m", tuple(tuple(_as_exact(x) for x in row) for row in self.m)
        )

    @property
    def is_integral(self) -> bool:
        return all(isinstance(x, int) for row in self.m for x in row)


@dataclass(frozen=True)
class DiscriminantUnit:
    """A unit u mod 2d with u^2 = 1 (mod 4d): the multiplier by which an
    integral isometry acts on the discriminant group Z/2d."""

    d: int
    u: int

    def __post_init__(self) -> None:
        twod = 2 * self.d
        if not 0 <= self.u < twod:
            raise ValueError(f"unit must be reduced mod {twod}")
        if math.gcd(self.u, twod) != 1:
            raise ValueError(f"{self.u} is not a unit mod {twod}")
        if (self.u * self.u - 1) % (4 * self.d) != 0:
            raise ValueError(f"{self.u}^2 != 1 mod {4 * self.d}")


def is_isometry(g: IsometryN) -> bool:
    """Exact check of transpose(m) * Gram * m == Gram."""
    gram = gram_matrix(g.d)
    return mat_mul(mat_transpose(g.m), mat_mul(gram, g.m)) == gram


def is_orientation_preserving(g: IsometryN) -> bool:
    """Orientation test on the positive 2-plane spanned by (1, 0, -d) and
    (0, 1, 0).

    Projects the image plane back via the pairing matrix M_ij = <g*p_i, p_j>;
    the plane's own Gram form is 2d times the identity, so composing with its
    inverse only scales by a positive factor and the sign of det(M) decides.
    det(M) cannot vanish for a true isometry: a kernel vector would be both
    positive (in the image plane) and negative (orthogonal to the plane).
    """
    if not is_isometry(g):
        raise NotAnIsometry("orientation test requires a Gram-preserving matrix")
    p1 = (1, 0, -g.d)
    p2 = (0, 1, 0)
    q1 = mat_vec(g.m, p1)
    q2 = mat_vec(g.m, p2)
    det = _pair(g.d, q1, p1) * _pair(g.d, q2, p2) - _pair(g.d, q1, p2) * _pair(
        g.d, q2, p1
    )
    return det > 0


def discriminant_unit(g: IsometryN) -> DiscriminantUnit:
    """The unit by which g multiplies the discriminant group Z/2d.

    The e0/e4 block of the Gram matrix is unimodular, so the discriminant
    group is cyclic, generated by ell/2d.  For an integral isometry the e0
    and e4 coefficients of g*ell must vanish mod 2d (asserted) and the unit
    is the ell coefficient mod 2d.
    """
    if not g.is_integral:
        raise NotIntegral("discriminant action requires an integral matrix")
    twod = 2 * g.d
    a0 = g.m[0][1]
    u = g.m[1][1] % twod
    a4 = g.m[2][1]
    if a0 % twod or a4 % twod:
        raise ActionNotDiagonal(
            "image of ell is not a multiple of ell on the discriminant group"
        )
    if math.gcd(u, twod) != 1 or (u * u - 1) % (4 * g.d) != 0:
        raise ActionNotDiagonal(
            f"multiplier {u} does not preserve the discriminant form mod {2 * twod}"
        )
    return DiscriminantUnit(g.d, u)


def in_star_kernel(g: IsometryN) -> bool:
    """True iff g acts trivially on the discriminant group."""
    return discriminant_unit(g).u == 1


def isometry_product(g: IsometryN, h: IsometryN) -> IsometryN:
    if g.d != h.d:
        raise LevelMismatch(f"cannot compose matrices at d={g.d} and d={h.d}")
    return IsometryN(g.d, mat_mul(g.m, h.m))


def isometry_neg(g: IsometryN) -> IsometryN:
    return IsometryN(g.d, mat_neg(g.m))


def isometry_to_json(g: IsometryN) -> list:
    """Row-major 3x3 array of rationals as strings (e.g. "7" or "1/6")."""
    return [[str(Fraction(x)) for x in row] for row in g.m]


def isometry_from_json(obj, d: int) -> IsometryN:
    if not isinstance(obj, (list, tuple)) or len(obj) != 3:
        raise ValueError("expected a 3x3 array")
    rows = []
    for row in obj:
        if not isinstance(row, (list, tuple)) or len(row) != 3:
            raise ValueError("expected a 3x3 array")
        try:
            rows.append(tuple(_as_exact(Fraction(str(x))) for x in row))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed rational entry: {exc}") from exc
    return IsometryN(d, tuple(rows))
