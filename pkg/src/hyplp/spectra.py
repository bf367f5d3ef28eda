"""Dense symmetric eigensolver and spectrum utilities.

The solver is self-contained: Householder reduction to tridiagonal form
followed by implicit-shift QL iteration, so results are reproducible without
external linear-algebra dependencies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .hypergraph import (Hypergraph, adjacency, check_regular_uniform, dual,
                         incidence_graph, is_connected)
from .tridiagonal import ql_eigenvalues

__all__ = [
    "Spectrum",
    "CheckReport",
    "symmetric_eigenvalues",
    "second_eigenvalue",
    "is_ramanujan",
    "spectrum_correspondence_check",
]

_SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in non-increasing order plus clusters of near-equal values
    as (representative, multiplicity) pairs."""

    values: tuple[float, ...]
    clusters: tuple[tuple[float, int], ...]

    @property
    def n(self) -> int:
        return len(self.values)

    @classmethod
    def from_values(cls, values: Sequence[float], ctol: float = 1e-7) -> "Spectrum":
        vals = tuple(sorted(values, reverse=True))
        clusters: list[tuple[float, int]] = []
        start = 0
        for i in range(1, len(vals) + 1):
            if i == len(vals) or vals[i - 1] - vals[i] > ctol:
                group = vals[start:i]
                clusters.append((math.fsum(group) / len(group), len(group)))
                start = i
        return cls(vals, tuple(clusters))


def householder_tridiagonalize(m: Sequence[Sequence[float]]) -> tuple[list[float], list[float]]:
    """Orthogonal reduction of a symmetric matrix to tridiagonal form;
    returns (diagonal, subdiagonal)."""
    n = len(m)
    a = [[float(x) for x in row] for row in m]
    for j in range(n - 2):
        norm2 = math.fsum(a[i][j] * a[i][j] for i in range(j + 1, n))
        alpha = math.sqrt(norm2)
        if alpha == 0.0:
            continue
        if a[j + 1][j] > 0.0:
            alpha = -alpha
        v = [0.0] * n
        v[j + 1] = a[j + 1][j] - alpha
        for i in range(j + 2, n):
            v[i] = a[i][j]
        vv = math.fsum(vi * vi for vi in v[j + 1:])
        if vv == 0.0:
            continue
        beta = 2.0 / vv
        # similarity update A <- A - v p^T - p v^T with p = beta*A*v - kappa*v
        w = [beta * math.fsum(a[i][kk] * v[kk] for kk in range(j + 1, n))
             for i in range(n)]
        kappa = 0.5 * beta * math.fsum(v[i] * w[i] for i in range(j + 1, n))
        p = [w[i] - kappa * v[i] for i in range(n)]
        for i in range(j, n):
            vi, pi = v[i], p[i]
            row = a[i]
            for kk in range(j, n):
                row[kk] -= vi * p[kk] + pi * v[kk]
    diag = [a[i][i] for i in range(n)]
    off = [a[i + 1][i] for i in range(n - 1)]
    return diag, off


def symmetric_eigenvalues(m: Sequence[Sequence[float]], tol: float = 1e-10,
                          ctol: float = 1e-7) -> Spectrum:
    """Spectrum of a symmetric matrix (entries may be ints or floats).
    Rejects non-square or non-symmetric (beyond 1e-12) input."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    for i in range(n):
        for j in range(i + 1, n):
            if abs(m[i][j] - m[j][i]) > _SYMMETRY_TOL:
                raise ValueError(f"matrix not symmetric at ({i}, {j})")
    if n == 0:
        return Spectrum((), ())
    diag, off = householder_tridiagonalize(m)
    return Spectrum.from_values(ql_eigenvalues(diag, off), ctol=ctol)


def second_eigenvalue(h: Hypergraph, tol: float = 1e-10) -> float:
    """Second-largest adjacency eigenvalue of a connected regular uniform
    hypergraph (the largest is k = r(u-1); the gap is k - tau2)."""
    r, u = check_regular_uniform(h)
    if not is_connected(h):
        raise ValueError("second eigenvalue is defined here for connected input")
    spec = symmetric_eigenvalues(adjacency(h), tol=tol)
    k = r * (u - 1)
    if abs(spec.values[0] - k) > 1e-7 * max(1, k):
        raise ArithmeticError("largest adjacency eigenvalue should equal r(u-1)")
    return spec.values[1]


def is_ramanujan(h: Hypergraph, tol: float = 1e-9) -> bool:
    """Whether tau2 lies within the spectral window
    |tau2 - (u-2)| <= 2*sqrt((r-1)(u-1)) + tol."""
    r, u = check_regular_uniform(h)
    tau2 = second_eigenvalue(h)
    return abs(tau2 - (u - 2)) <= 2.0 * math.sqrt((r - 1) * (u - 1)) + tol


@dataclass(frozen=True)
class CheckReport:
    """Boolean verdict plus a human-readable mismatch trail."""

    ok: bool
    detail: tuple[str, ...] = ()


def _multiset_match(a: Sequence[float], b: Sequence[float], tol: float) -> bool:
    if len(a) != len(b):
        return False
    return all(abs(x - y) <= tol for x, y in zip(sorted(a), sorted(b)))


def spectrum_correspondence_check(h: Hypergraph, tol: float = 1e-7) -> CheckReport:
    """Verify the incidence-graph spectrum relation: the squared incidence
    eigenvalues equal {adjacency eigenvalues + r} together with
    {dual adjacency eigenvalues + u}; equivalently each side padded with
    |n - m| zeros matches the other shifted spectrum."""
    r, u = check_regular_uniform(h)
    if r < 2:
        raise ValueError("needs r >= 2 so the dual is defined")
    if not is_connected(h):
        raise ValueError("needs connected input")
    hd = dual(h)
    inc = symmetric_eigenvalues(incidence_graph(h)).values
    ev = symmetric_eigenvalues(adjacency(h)).values
    ev_dual = symmetric_eigenvalues(adjacency(hd)).values
    squared = [x * x for x in inc]
    shifted = [x + r for x in ev] + [x + u for x in ev_dual]
    detail: list[str] = []
    if not _multiset_match(squared, shifted, tol):
        detail.append(
            "squared incidence eigenvalues != {spec(A)+r} u {spec(A*)+u}: "
            f"{sorted(squared)[:6]}... vs {sorted(shifted)[:6]}...")
    padded_primal = [x + r for x in ev] + [0.0] * h.m
    padded_dual = [x + u for x in ev_dual] + [0.0] * h.n
    if not _multiset_match(padded_primal, padded_dual, tol):
        detail.append("zero-padded shifted spectra of h and dual(h) disagree")
    return CheckReport(not detail, tuple(detail))
