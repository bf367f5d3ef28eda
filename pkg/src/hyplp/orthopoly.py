"""Walk-polynomial engine for r-regular u-uniform hypergraphs.

The family F_0 = 1, F_1 = x, F_2 = x^2 - (u-2)x - r(u-1),
F_{i+1} = (x - u + 2) F_i - q F_{i-1}  (i >= 2, q = (r-1)(u-1))
counts non-backtracking walks when evaluated at an adjacency matrix.  The
partial sums G_i = F_0 + ... + F_i drive the order bounds.  Everything here
is exact over the rationals unless a float is passed in, in which case the
same recurrences run in float arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from .tridiagonal import ql_eigenvalues, symmetrized_offdiagonal

Exact = Union[int, Fraction]
Number = Union[int, Fraction, float]

__all__ = [
    "Params",
    "FPoly",
    "TridiagonalArray",
    "f_eval",
    "f_values",
    "g_eval",
    "g_identity_check",
    "f_monomial",
    "monomial_to_fbasis",
    "fbasis_to_monomial",
    "linearization",
    "char_poly_check",
    "largest_zero_G",
    "largest_zero_gc",
    "orthogonality_quadrature_check",
]


@dataclass(frozen=True)
class Params:
    """Degree pair (r, u): every vertex in r edges, every edge with u vertices."""

    r: int
    u: int

    def __post_init__(self) -> None:
        if not (isinstance(self.r, int) and isinstance(self.u, int)):
            raise TypeError("r and u must be integers")
        if self.r < 2 or self.u < 2:
            raise ValueError(f"need r >= 2 and u >= 2, got ({self.r}, {self.u})")

    @property
    def k(self) -> int:
        """Point-graph valency r(u-1)."""
        return self.r * (self.u - 1)

    @property
    def q(self) -> int:
        """Branching number (r-1)(u-1) of the non-backtracking recursion."""
        return (self.r - 1) * (self.u - 1)

    @property
    def s(self) -> int:
        return self.u - 1

    @property
    def t(self) -> int:
        return self.r - 1

    @property
    def interval(self) -> tuple[float, float]:
        """Support [u-2-2*sqrt(q), u-2+2*sqrt(q)] of the continuous weight."""
        w = 2.0 * math.sqrt(self.q)
        return (self.u - 2 - w, self.u - 2 + w)


def f_values(params: Params, imax: int, x: Number) -> list:
    """[F_0(x), ..., F_imax(x)].  Exact when x is int/Fraction, float otherwise."""
    if imax < 0:
        raise ValueError("index must be non-negative")
    vals: list = [1]
    if imax >= 1:
        vals.append(x)
    if imax >= 2:
        vals.append(x * x - (params.u - 2) * x - params.k)
    shift = params.u - 2
    q = params.q
    for _ in range(3, imax + 1):
        vals.append((x - shift) * vals[-1] - q * vals[-2])
    return vals


def f_eval(params: Params, i: int, x: Number) -> Number:
    """F_i(x).  At x = k this is k*q^(i-1) for every i >= 1."""
    return f_values(params, i, x)[i]


def g_eval(params: Params, i: int, x: Number) -> Number:
    """Partial sum G_i(x) = F_0(x) + ... + F_i(x)."""
    return sum(f_values(params, i, x))


def g_identity_check(params: Params, i: int, x: Number) -> bool:
    """Check G_i(x) * (x - k) == F_{i+1}(x) - q * F_i(x) at one point x != k."""
    if x == params.k:
        raise ValueError("identity check needs x != k (both sides vanish)")
    vals = f_values(params, i + 1, x)
    lhs = sum(vals[: i + 1]) * (x - params.k)
    rhs = vals[i + 1] - params.q * vals[i]
    if isinstance(x, float):
        scale = max(1.0, abs(lhs), abs(rhs))
        return abs(lhs - rhs) <= 1e-9 * scale
    return lhs == rhs


@lru_cache(maxsize=None)
def _f_monomial_cached(r: int, u: int, i: int) -> tuple[int, ...]:
    if i == 0:
        return (1,)
    if i == 1:
        return (0, 1)
    if i == 2:
        return (-r * (u - 1), -(u - 2), 1)
    prev2 = _f_monomial_cached(r, u, i - 2)
    prev1 = _f_monomial_cached(r, u, i - 1)
    q = (r - 1) * (u - 1)
    shift = u - 2
    out = [0] * (i + 1)
    for j, cj in enumerate(prev1):
        out[j + 1] += cj
        out[j] -= shift * cj
    for j, cj in enumerate(prev2):
        out[j] -= q * cj
    return tuple(out)


def f_monomial(params: Params, i: int) -> tuple[int, ...]:
    """Monomial coefficients of F_i, lowest degree first.  Always integers,
    leading coefficient 1."""
    if i < 0:
        raise ValueError("index must be non-negative")
    return _f_monomial_cached(params.r, params.u, i)


def monomial_to_fbasis(params: Params, coeffs: Sequence[Exact]) -> list[Fraction]:
    """Rewrite a polynomial (monomial coefficients, lowest first) as
    sum f_i F_i; returns [f_0, ..., f_deg].  The basis is monic and
    triangular, so this is exact back-substitution."""
    work = [Fraction(c) for c in coeffs]
    while len(work) > 1 and work[-1] == 0:
        work.pop()
    out = [Fraction(0)] * len(work)
    for l in range(len(work) - 1, -1, -1):
        cl = work[l]
        out[l] = cl
        if cl:
            for j, fj in enumerate(f_monomial(params, l)):
                work[j] -= cl * fj
    return out


def fbasis_to_monomial(params: Params, fcoeffs: Sequence[Exact]) -> list[Fraction]:
    """Inverse of monomial_to_fbasis."""
    out = [Fraction(0)] * max(len(fcoeffs), 1)
    for i, fi in enumerate(fcoeffs):
        if fi:
            for j, cj in enumerate(f_monomial(params, i)):
                out[j] += Fraction(fi) * cj
    return out


def linearization(params: Params, i: int, j: int) -> dict[int, Fraction]:
    """Coefficients p_l with F_i * F_j = sum_l p_l F_l; only nonzero entries.

    For r > 2 every coefficient is non-negative, the support is exactly
    |i-j| <= l <= i+j for u > 2, thinned by l = i+j (mod 2) for u = 2, and
    p_0(i, j) = k q^(i-1) [i == j].
    """
    if i < 0 or j < 0:
        raise ValueError("indices must be non-negative")
    a = f_monomial(params, i)
    b = f_monomial(params, j)
    prod = [0] * (i + j + 1)
    for ia, ca in enumerate(a):
        if ca:
            for jb, cb in enumerate(b):
                prod[ia + jb] += ca * cb
    coeffs = monomial_to_fbasis(params, prod)
    return {l: c for l, c in enumerate(coeffs) if c != 0}


@dataclass(frozen=True)
class FPoly:
    """Polynomial sum_i coeffs[i] * F_i with exact rational coefficients."""

    params: Params
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("FPoly needs at least one coefficient")

    @classmethod
    def from_monomial(cls, params: Params, coeffs: Sequence[Exact]) -> "FPoly":
        return cls(params, tuple(monomial_to_fbasis(params, coeffs)))

    @property
    def degree(self) -> int:
        for l in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[l]:
                return l
        return 0

    def to_monomial(self) -> list[Fraction]:
        return fbasis_to_monomial(self.params, self.coeffs)

    def __call__(self, x: Number) -> Number:
        vals = f_values(self.params, len(self.coeffs) - 1, x)
        if isinstance(x, float):
            return math.fsum(float(c) * v for c, v in zip(self.coeffs, vals))
        return sum(c * v for c, v in zip(self.coeffs, vals))

    def at_k(self) -> Fraction:
        """f(k) = f_0 + sum_{i>=1} f_i k q^(i-1), exactly."""
        return Fraction(self(Fraction(self.params.k)))


@dataclass(frozen=True)
class TridiagonalArray:
    """Quotient array T(r, u, d, c): (d+1) x (d+1) tridiagonal matrix with
    superdiagonal (1, ..., 1, c), diagonal (0, s-1, ..., s-1, s(t+1)-c) and
    subdiagonal (s(t+1), st, ..., st).  Its characteristic polynomial is
    (x - k) * (c * (F_0 + ... + F_{d-1}) + F_d)."""

    params: Params
    d: int
    c: Fraction

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError("need d >= 1")
        object.__setattr__(self, "c", Fraction(self.c))
        if self.c <= 0:
            raise ValueError("need c > 0")

    @property
    def superdiagonal(self) -> tuple[Fraction, ...]:
        return tuple([Fraction(1)] * (self.d - 1) + [self.c])

    @property
    def diagonal(self) -> tuple[Fraction, ...]:
        s, t = self.params.s, self.params.t
        mid = [Fraction(s - 1)] * (self.d - 1)
        return tuple([Fraction(0)] + mid + [Fraction(s * (t + 1)) - self.c])

    @property
    def subdiagonal(self) -> tuple[Fraction, ...]:
        s, t = self.params.s, self.params.t
        return tuple([Fraction(s * (t + 1))] + [Fraction(s * t)] * (self.d - 1))

    def dense(self) -> list[list[Fraction]]:
        n = self.d + 1
        m = [[Fraction(0)] * n for _ in range(n)]
        for i, v in enumerate(self.diagonal):
            m[i][i] = v
        for i, v in enumerate(self.superdiagonal):
            m[i][i + 1] = v
        for i, v in enumerate(self.subdiagonal):
            m[i + 1][i] = v
        return m


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return out


def _gc_monomial(params: Params, d: int, c: Fraction) -> list[Fraction]:
    """Monomial coefficients of g_c = c*(F_0 + ... + F_{d-1}) + F_d."""
    out = [Fraction(0)] * (d + 1)
    for i in range(d):
        for j, cj in enumerate(f_monomial(params, i)):
            out[j] += c * cj
    for j, cj in enumerate(f_monomial(params, d)):
        out[j] += cj
    return out


def char_poly_check(ta: TridiagonalArray) -> bool:
    """Exact check that det(xI - T(r,u,d,c)) == (x - k) * g_c(x)."""
    diag = ta.diagonal
    sub = ta.subdiagonal
    sup = ta.superdiagonal
    # determinant recurrence for tridiagonal xI - T
    prev2 = [Fraction(1)]
    prev1 = [-diag[0], Fraction(1)]
    for i in range(1, ta.d + 1):
        term = _poly_mul([-diag[i], Fraction(1)], prev1)
        cross = [sub[i - 1] * sup[i - 1] * v for v in prev2]
        det = term[:]
        for j, v in enumerate(cross):
            det[j] -= v
        prev2, prev1 = prev1, det
    expected = _poly_mul([Fraction(-ta.params.k), Fraction(1)],
                         _gc_monomial(ta.params, ta.d, ta.c))
    return prev1 == expected


def _bisect_down_to_zero(fun, lo: float, hi: float, tol: float) -> float:
    """Root of fun in [lo, hi] given fun(lo) < 0 < fun(hi)."""
    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if fun(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def largest_zero_G(params: Params, j: int, tol: float = 1e-9) -> float:
    """Largest zero lambda_j of G_j.  lambda_1 = -1 always.

    Bisection on the cosine bracket
    [u-2+2*sqrt(q)cos(pi/j), u-2+2*sqrt(q)cos(pi/(j+1))], widened to the full
    weight interval when the endpoint signs agree; cross-checked against (and
    falling back to) the second-largest eigenvalue of T(r, u, j, 1)."""
    if j < 1:
        raise ValueError("need j >= 1")

    def g(x: float) -> float:
        return math.fsum(f_values(params, j, x))

    w = 2.0 * math.sqrt(params.q)
    center = float(params.u - 2)
    lo = center + w * math.cos(math.pi / j)
    hi = center + w * math.cos(math.pi / (j + 1))
    root = None
    if g(lo) < 0.0 < g(hi):
        root = _bisect_down_to_zero(g, lo, hi, tol)
    else:
        lo, hi = params.interval
        if g(lo) < 0.0 < g(hi):
            root = _bisect_down_to_zero(g, lo, hi, tol)
    eig = largest_zero_gc(params, j, Fraction(1), tol=tol)
    if root is None:
        return eig
    if abs(root - eig) > max(100.0 * tol, 1e-7) * max(1.0, abs(eig)):
        raise ArithmeticError(
            f"largest zero of G_{j} disagrees between bisection ({root}) "
            f"and eigenvalue route ({eig})")
    return root


def largest_zero_gc(params: Params, d: int, c: Number, tol: float = 1e-9) -> float:
    """Largest zero of g_c = c*(F_0+...+F_{d-1}) + F_d, i.e. the second
    largest eigenvalue of T(r, u, d, c), via diagonal symmetrization and the
    tridiagonal QL solver."""
    if d < 1:
        raise ValueError("need d >= 1")
    if c < 1:
        raise ValueError("need c >= 1")
    s, t = params.s, params.t
    cf = float(c)
    diag = [0.0] + [float(s - 1)] * (d - 1) + [s * (t + 1) - cf]
    sup = [1.0] * (d - 1) + [cf]
    sub = [float(s * (t + 1))] + [float(s * t)] * (d - 1)
    eigs = ql_eigenvalues(diag, symmetrized_offdiagonal(sub, sup))
    k = float(params.k)
    if abs(eigs[0] - k) > 1e-6 * max(1.0, k):
        raise ArithmeticError("largest eigenvalue of the quotient array should be k")
    return eigs[1]


def orthogonality_quadrature_check(params: Params, i: int, j: int,
                                   npoints: int = 4096) -> float:
    """Inner product <F_i, F_j> against the spectral weight, by midpoint
    quadrature in the Chebyshev angle (plus the point mass at -r when r < u).
    Off-diagonal values should vanish to ~1e-6 at npoints = 4096."""
    if npoints < 1000:
        raise ValueError("need npoints >= 1000")
    r, u, k, q = params.r, params.u, params.k, params.q
    rootq = math.sqrt(q)
    acc = []
    for m in range(npoints):
        phi = (m + 0.5) * math.pi / npoints
        x = (u - 2) + 2.0 * rootq * math.cos(phi)
        vals = f_values(params, max(i, j), x)
        sin2 = math.sin(phi) ** 2
        acc.append(vals[i] * vals[j] * sin2 / ((k - x) * (r + x)))
    total = (2.0 * r * q / npoints) * math.fsum(acc)
    if r < u:
        vals = f_values(params, max(i, j), Fraction(-r))
        total += (u - r) / u * float(vals[i]) * float(vals[j])
    return total
