"""Order bounds for regular uniform hypergraphs with a second-eigenvalue cap.

Central quantities: k = r(u-1), q = (r-1)(u-1), the polynomial families F_i
and G_i = sum_{j<=i} F_j from the orthopoly module, and the Moore-style order
sum 1 + sum_{j<d} k q^j.  Everything here is a pure function returning a
BoundResult (value + provenance + optional certificate).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Sequence, Union

from .orthopoly import (FPoly, Params, f_eval, f_monomial, g_eval,
                        largest_zero_G, largest_zero_gc, monomial_to_fbasis)
from .simplex import Infeasible, Unbounded, solve_max

__all__ = [
    "BoundResult",
    "Refinement",
    "LPConditionError",
    "DssCheck",
    "moore_order",
    "lp_bound_evaluate",
    "lp_bound_optimize",
    "closed_form_h_bound",
    "integrality_refinements",
    "strictly_below_int",
    "largest_divisible_order",
    "feng_li_threshold",
    "diameter_order_bound",
    "dss_gen_bound",
    "imp2_bound",
    "defect_region",
    "defect_lower_bounds",
    "duality_transform",
    "ru1_bound",
    "tau2_lower",
    "biregular_bound",
]

Number = Union[int, float, Fraction]

ZTOL = 1e-9


class LPConditionError(ValueError):
    """A certificate hypothesis failed; message names the condition and witness."""

    def __init__(self, condition: str, witness):
        self.condition = condition
        self.witness = witness
        super().__init__(f"violated {condition}: witness {witness}")


@dataclass(frozen=True)
class Refinement:
    name: str
    before: Number
    after: Number
    note: str = ""


@dataclass(frozen=True)
class BoundResult:
    value: Number
    theorem: str
    params: dict
    certificate: Optional[FPoly] = None
    refinements: tuple[Refinement, ...] = ()
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if not math.isfinite(float(self.value)):
            raise ValueError("bound value must be finite")


def moore_order(params: Params, d: int) -> int:
    """1 + k + kq + ... + kq^(d-1); the order ceiling for diameter d."""
    k, q = params.k, params.q
    return 1 + sum(k * q ** j for j in range(d))


def _lambda_top(params: Params) -> float:
    return params.u - 2 + 2 * math.sqrt(params.q)


def _is_exact(x: Number) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _as_fraction(x: Number) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# ---------------------------------------------------------------------------
# certificate evaluation


def _certified_max(params: Params, f: FPoly, lo: float, hi: float,
                   grid: int = 10 ** 4, touch_tol: float = 1e-9,
                   eval_cap: int = 3 * 10 ** 5):
    """Rigorous upper bound for f on [lo, hi]: sample on a grid, then split
    cells whose chord bound stays positive.  The per-cell bound uses global
    first and second derivative magnitudes from the monomial coefficients,
    while point values come from the stable F-recurrence.  Returns
    (ok, sup_bound, witness); witness is a sampled point with f > touch_tol."""
    coeffs = [float(c) for c in f.coeffs]
    s = len(coeffs) - 1

    def feval(x: float) -> float:
        vals = _fvals_float(params, s, x)
        return math.fsum(c * v for c, v in zip(coeffs, vals))

    if hi <= lo:
        v = feval(lo)
        return (v <= touch_tol, v, None if v <= touch_tol else (lo, v))
    radius = Fraction(max(abs(lo), abs(hi), 1.0))
    b1 = b2 = Fraction(0)
    for i, c in enumerate(f.to_monomial()):
        if i >= 1:
            b1 += i * abs(c) * radius ** (i - 1)
        if i >= 2:
            b2 += i * (i - 1) * abs(c) * radius ** (i - 2)
    b1, b2 = float(b1), float(b2)

    def cell_slack(w: float) -> float:
        return min(0.5 * b1 * w, 0.125 * b2 * w * w) if s >= 2 else 0.5 * b1 * w

    h0 = (hi - lo) / grid
    xs = [lo + t * h0 for t in range(grid)] + [hi]
    fs = [feval(x) for x in xs]
    witness = None
    best = max(zip(fs, xs))
    if best[0] > touch_tol:
        witness = (best[1], best[0])
        return False, best[0] + cell_slack(h0), witness
    stack = list(zip(xs[:-1], xs[1:], fs[:-1], fs[1:]))
    sup = -math.inf
    absorb = 1e-10
    evals = len(xs)
    while stack:
        a, b, fa, fb = stack.pop()
        w = b - a
        bound = max(fa, fb) + cell_slack(w)
        if bound <= absorb or w <= 1e-14 * max(1.0, abs(a)):
            sup = max(sup, bound)
            continue
        if evals >= eval_cap:
            # fold the remaining stack in unrefined; still a valid upper bound
            sup = max(sup, bound)
            for a2, b2_, fa2, fb2 in stack:
                sup = max(sup, max(fa2, fb2) + cell_slack(b2_ - a2))
            break
        mid = 0.5 * (a + b)
        fm = feval(mid)
        evals += 1
        if fm > touch_tol:
            return False, max(sup, fm + cell_slack(w)), (mid, fm)
        stack.append((a, mid, fa, fm))
        stack.append((mid, b, fm, fb))
    return True, max(sup, best[0]), None


def lp_bound_evaluate(params: Params, f: FPoly,
                      taus: Optional[Sequence[Number]] = None,
                      theta: Optional[Number] = None,
                      tol: float = 1e-9) -> BoundResult:
    """Order bound f(k)/f_0 from a polynomial whose hypotheses are verified:
    f_0 > 0, f_i >= 0, f(k) > 0, and f <= 0 at the given eigenvalue points
    (taus mode) or on the whole interval [-r, theta] (interval mode)."""
    if f.params != params:
        raise ValueError("polynomial was built for different (r, u)")
    if (taus is None) == (theta is None):
        raise ValueError("give exactly one of taus or theta")
    coeffs = f.coeffs
    if coeffs[0] <= 0:
        raise LPConditionError("f_0 > 0", coeffs[0])
    for i, fi in enumerate(coeffs):
        if i and fi < 0:
            raise LPConditionError("f_i >= 0 for i >= 1", (i, fi))
    fk = f.at_k()
    if fk <= 0:
        raise LPConditionError("f(k) > 0", fk)
    notes: list[str] = []
    pdict = {"r": params.r, "u": params.u, "s": f.degree}

    if taus is not None:
        if len(set(float(t) for t in taus)) != len(taus):
            raise ValueError("taus must be distinct")
        tight = []
        for t in taus:
            if _is_exact(t):
                ft = f(_as_fraction(t))
                if ft > 0:
                    raise LPConditionError("f(tau) <= 0", (t, ft))
                tight.append(ft == 0)
            else:
                ft = f(float(t))
                if ft > tol:
                    raise LPConditionError("f(tau) <= 0", (t, ft))
                tight.append(abs(ft) <= tol)
        pdict["taus"] = tuple(taus)
        if all(tight):
            notes.append("f vanishes at every given tau (equality conditions met)")
        else:
            loose = [t for t, z in zip(taus, tight) if not z]
            notes.append(f"f < 0 strictly at {loose}; equality impossible there")
    else:
        lo = -float(params.r)
        if float(theta) < lo - tol:
            raise ValueError("theta below -r leaves an empty interval")
        ok, sup, witness = _certified_max(params, f, lo, float(theta), touch_tol=tol)
        if not ok:
            raise LPConditionError("f <= 0 on [-r, theta]", witness)
        if sup > 1e-6:
            raise LPConditionError("f <= 0 on [-r, theta]",
                                   f"interval bound only certified below {sup:.3g}")
        pdict["theta"] = theta
        notes.append(f"f <= 0 certified on [{lo}, {float(theta)}] (sup bound {sup:.2e})")
        if _is_exact(theta):
            fth = f(_as_fraction(theta))
            if fth == 0:
                notes.append("f vanishes at theta")

    positive = tuple(i for i, fi in enumerate(coeffs) if i and fi > 0)
    notes.append(f"positive F-coefficients at indices {positive}")
    if positive and max(positive) == f.degree:
        notes.append(f"equality would force girth >= {f.degree + 1}")
    value = Fraction(fk) / Fraction(coeffs[0])
    return BoundResult(value, "LP_CERT", pdict, certificate=f, notes=tuple(notes))


# ---------------------------------------------------------------------------
# LP optimization by constraint generation


def _fvals_float(params: Params, s: int, x: float) -> list[float]:
    vals = [1.0, x]
    if s >= 2:
        vals.append(x * x - (params.u - 2) * x - params.k)
    shift, q = float(params.u - 2), float(params.q)
    for i in range(2, s):
        vals.append((x - shift) * vals[i] - q * vals[i - 1])
    return vals[:s + 1]


def lp_bound_optimize(params: Params, theta: float, s: int,
                      tol: float = 1e-8, max_rounds: int = 100) -> BoundResult:
    """Best degree-s certificate bound for eigenvalues in [-r, theta]:
    minimize 1 + sum f_j F_j(k) over f_j >= 0 with 1 + sum f_j F_j <= 0 on
    [-r, theta], solved through its point-mass dual with constraint
    generation, then verified as an exact certificate."""
    if s < 1:
        raise ValueError("degree must be >= 1")
    top = _lambda_top(params)
    th = float(theta)
    if th >= top:
        raise ValueError(f"theta must be < {top}")
    lo = -float(params.r)
    if th < lo:
        raise ValueError("theta below -r")
    fk = [float(params.k * params.q ** (j - 1)) for j in range(1, s + 1)]

    npts = 200
    points = [lo + (th - lo) * t / (npts - 1) for t in range(npts)] if th > lo else [lo]

    def column(x: float) -> list[float]:
        vals = _fvals_float(params, s, x)
        return [-vals[j] for j in range(1, s + 1)]

    cols = [column(x) for x in points]
    rounds = 0
    viol = math.inf
    coeffs: list[float] = []
    for rounds in range(1, max_rounds + 1):
        a = [[cols[i][j] for i in range(len(points))] for j in range(s)]
        try:
            res = solve_max([1.0] * len(points), a, fk)
        except (Infeasible, Unbounded) as exc:
            raise ArithmeticError(
                f"internal LP failure ({exc}); degree {s} cannot cover [-r, theta]"
            ) from exc
        coeffs = list(res.duals)
        scan = 10 ** 4

        def fval(x: float) -> float:
            vals = _fvals_float(params, s, x)
            return 1.0 + sum(c * vals[j + 1] for j, c in enumerate(coeffs))

        best_x, viol = lo, fval(lo)
        if th > lo:
            step = (th - lo) / scan
            for t in range(1, scan + 1):
                x = lo + step * t
                v = fval(x)
                if v > viol:
                    best_x, viol = x, v
            # golden-section polish around the best sample
            a0, b0 = max(lo, best_x - step), min(th, best_x + step)
            for _ in range(80):
                m1 = a0 + (b0 - a0) * 0.382
                m2 = a0 + (b0 - a0) * 0.618
                if fval(m1) < fval(m2):
                    a0 = m1
                else:
                    b0 = m2
            x = 0.5 * (a0 + b0)
            if fval(x) > viol:
                best_x, viol = x, fval(x)
        if viol < tol:
            break
        if any(abs(best_x - p) < 1e-13 for p in points):
            break
        points.append(best_x)
        cols.append(column(best_x))
    else:
        raise ArithmeticError(f"no convergence after {max_rounds} rounds "
                              f"(violation {viol:.3g})")

    # shift the residual violation (plus headroom) into f_0, then verify the
    # exact-rational certificate on the whole interval; the headroom grows
    # until the interval check certifies within its evaluation budget
    exact = [Fraction(c) for c in coeffs]
    base = Fraction(max(viol, 0.0))
    checked = None
    shift = Fraction(0)
    for head in (Fraction(1, 10 ** 5), Fraction(1, 10 ** 4),
                 Fraction(1, 10 ** 3), Fraction(1, 10 ** 2)):
        shift = base + head
        f = FPoly(params, tuple([Fraction(1) - shift] + exact))
        ok, sup, _ = _certified_max(params, f, lo, th, touch_tol=math.inf)
        if ok and sup <= 1e-7:
            checked = lp_bound_evaluate(params, f, theta=th, tol=max(tol, 1e-9))
            break
    if checked is None:
        raise ArithmeticError("could not certify the optimized polynomial")
    pdict = dict(checked.params)
    pdict.update({"theta": theta, "s": s, "rounds": rounds,
                  "residual": float(viol), "points": len(points)})
    return BoundResult(checked.value, "LP_OPT", pdict, certificate=f,
                       notes=checked.notes)


# ---------------------------------------------------------------------------
# closed-form bound and refinements


def _poly_divide_linear(coeffs: list[Fraction], root: Fraction) -> list[Fraction]:
    """Divide a polynomial (ascending coefficients) by (x - root) exactly;
    remainder must vanish."""
    n = len(coeffs)
    out = [Fraction(0)] * (n - 1)
    carry = Fraction(0)
    for i in range(n - 1, 0, -1):
        carry = coeffs[i] + carry * root
        out[i - 1] = carry
    rem = coeffs[0] + carry * root
    if rem != 0:
        raise ArithmeticError(f"nonzero remainder {rem} dividing by x - {root}")
    return out


def _gc_monomial_fr(params: Params, d: int, c: Fraction) -> list[Fraction]:
    """c * G_{d-1} + F_d in ascending monomial coefficients, exact."""
    acc = [Fraction(0)] * (d + 1)
    for j in range(d):
        for i, v in enumerate(f_monomial(params, j)):
            acc[i] += c * v
    for i, v in enumerate(f_monomial(params, d)):
        acc[i] += v
    return acc


def _poly_mul_fr(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def select_diameter(params: Params, theta: Number, ztol: float = ZTOL) -> int:
    """Smallest d with theta <= (largest zero of G_d) + ztol."""
    th = float(theta)
    if th <= -1 + ztol:
        return 1
    d = 2
    while largest_zero_G(params, d) < th - ztol:
        d += 1
        if d > 400:
            raise ArithmeticError("diameter selection did not terminate")
    return d


def closed_form_h_bound(params: Params, theta: Number, ztol: float = ZTOL) -> BoundResult:
    """Largest order compatible with second eigenvalue <= theta:
    1 + sum_{j<=d-2} kq^j + kq^(d-1)/c with c = -F_d(theta)/G_{d-1}(theta),
    where d puts theta between consecutive largest zeros of G."""
    k, q = params.k, params.q
    top = _lambda_top(params)
    th = float(theta)
    if th >= top:
        raise ValueError(f"theta must be < {top}")
    if th < -k - 1e-9:
        raise ValueError(f"theta must be >= -k = {-k}")
    d = select_diameter(params, theta, ztol)
    exact = _is_exact(theta)
    certificate = None
    if exact:
        t = _as_fraction(theta)
        gd1 = g_eval(params, d - 1, t)
        fd = f_eval(params, d, t)
        if gd1 <= 0:
            raise ArithmeticError(f"G_{d - 1}({t}) = {gd1} <= 0; d selection broken")
        c: Number = -fd / gd1
        if c < 1:
            raise ArithmeticError(f"c = {c} < 1 for theta = {t}")
        value: Number = moore_order(params, d - 1) + Fraction(k * q ** (d - 1)) / c
        gc = _gc_monomial_fr(params, d, _as_fraction(c))
        fcoeffs = _poly_divide_linear(_poly_mul_fr(gc, gc), t)
        from .orthopoly import monomial_to_fbasis
        fb = monomial_to_fbasis(params, fcoeffs)
        if all(v >= 0 for v in fb):
            certificate = FPoly(params, tuple(fb))
            check = Fraction(certificate.at_k()) / fb[0]
            if check != value:
                raise ArithmeticError(f"certificate value {check} != bound {value}")
    else:
        gd1 = g_eval(params, d - 1, th)
        fd = f_eval(params, d, th)
        c = -fd / gd1
        if c < 1 - 1e-6:
            raise ArithmeticError(f"c = {c} < 1 for theta = {th}")
        c = max(c, 1.0)
        value = moore_order(params, d - 1) + k * q ** (d - 1) / c
    pdict = {"r": params.r, "u": params.u, "theta": theta, "d": d, "c": c}
    notes = (f"equality exactly for the unique-shortest-path geometry with "
             f"array T({params.r},{params.u},{d},{c})",)
    return BoundResult(value, "CLOSED_FORM", pdict, certificate=certificate,
                       notes=notes)


def _near_integer(x: Number, tol: float = 1e-9):
    if _is_exact(x):
        xf = _as_fraction(x)
        return (int(xf), True) if xf.denominator == 1 else (None, False)
    r = round(x)
    return (int(r), True) if abs(x - r) <= tol else (None, False)


def strictly_below_int(value: Number) -> int:
    """Largest integer strictly below value (value itself when fractional
    floors down, an exact integer steps down by one)."""
    n, is_int = _near_integer(value)
    return n - 1 if is_int else math.floor(value)


def largest_divisible_order(bound: Number, r: int, u: int) -> int:
    """Largest integer v <= bound with r*v divisible by u (edge count rv/u
    must be an integer)."""
    n, is_int = _near_integer(bound)
    v = n if is_int else math.floor(bound)
    while (r * v) % u:
        v -= 1
    return v


def integrality_refinements(b: BoundResult, params: Params) -> BoundResult:
    """Sharpen an order bound: if the closed form's c is not an integer the
    bound drops strictly below, then the order drops to the nearest value
    with integer edge count."""
    steps = list(b.refinements)
    value = b.value
    c = b.params.get("c")
    if c is not None:
        _, c_int = _near_integer(c)
        if not c_int:
            new = strictly_below_int(value)
            steps.append(Refinement("c-integrality", value, new,
                                    f"c = {c} not an integer, equality impossible"))
            value = new
    new = largest_divisible_order(value, params.r, params.u)
    steps.append(Refinement("divisibility", value, new,
                            f"largest v with {params.r}v divisible by {params.u}"))
    value = new
    return replace(b, value=value, refinements=tuple(steps))


# ---------------------------------------------------------------------------
# diameter, defect, and miscellaneous bounds


def feng_li_threshold(params: Params, ell: int) -> float:
    """Second-eigenvalue threshold u-2+2*sqrt(q) - (2*sqrt(q)-1)/ell."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    sq = 2 * math.sqrt(params.q)
    return params.u - 2 + sq - (sq - 1) / ell


def diameter_order_bound(params: Params, ell: int) -> BoundResult:
    """Order cap 1 + sum_{j<2l} kq^j for tau2 at least the ell threshold."""
    if params.r < 3:
        raise ValueError("needs r >= 3")
    if ell < 1:
        raise ValueError("ell must be >= 1")
    value = moore_order(params, 2 * ell)
    tight = (params.r, params.u, ell) == (3, 2, 1)
    notes = ("equality attainable (and attained)" if tight
             else "equality impossible for these parameters",)
    return BoundResult(value, "DIAM",
                       {"r": params.r, "u": params.u, "ell": ell,
                        "threshold": feng_li_threshold(params, ell),
                        "equality_possible": tight},
                       notes=notes)


@dataclass(frozen=True)
class DssCheck:
    passed: bool
    slack: Number
    order_bound: Number
    params: dict = field(default_factory=dict)


def dss_gen_bound(params: Params, d: int, n: int, lam: Number) -> DssCheck:
    """Feasibility test |G_d(lam)| <= moore_order(d) - n for an eigenvalue lam
    of a diameter-d instance on n vertices; exposes n <= G_d(k) - |G_d(lam)|."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if abs(float(lam) - params.k) < 1e-12:
        raise ValueError("lam must differ from k")
    lhs = abs(g_eval(params, d, _as_fraction(lam))) if _is_exact(lam) \
        else abs(g_eval(params, d, float(lam)))
    rhs = moore_order(params, d) - n
    return DssCheck(lhs <= rhs, rhs - lhs, moore_order(params, d) - lhs,
                    {"r": params.r, "u": params.u, "d": d, "n": n, "lam": lam})


def imp2_bound(params: Params, d: int, tau2: float, ztol: float = ZTOL) -> BoundResult:
    """Order bound for diameter-d instances by the position of tau2 relative
    to the largest zeros of G_{d-1} and G_d."""
    if d < 1:
        raise ValueError("d must be >= 1")
    k, q = params.k, params.q
    lam_d = largest_zero_G(params, d)
    lam_prev = -math.inf if d == 1 else largest_zero_G(params, d - 1)
    t = float(tau2)
    pdict = {"r": params.r, "u": params.u, "d": d, "tau2": tau2}
    if t >= lam_d - ztol:
        gdt = g_eval(params, d, t)
        value = moore_order(params, d) - max(gdt, 0.0)
        pdict["case"] = "at-or-above-lambda_d"
        notes = (f"n <= G_d(k) - G_d(tau2) with G_d(tau2) = {gdt:.6g}",)
    elif t > lam_prev + ztol:
        c = -f_eval(params, d, t) / g_eval(params, d - 1, t)
        value = moore_order(params, d - 1) + k * q ** (d - 1) / c
        rhs = moore_order(params, d) + g_eval(params, d, t)
        if value > rhs + 1e-7 * max(1.0, abs(rhs)):
            raise ArithmeticError(f"bound {value} exceeds comparison value {rhs}")
        pdict.update({"case": "between", "c": c})
        strict = " (strict, q >= 6)" if q >= 6 else ""
        notes = (f"sharper than G_d(k) + G_d(tau2) = {rhs:.6g}{strict}",)
    else:
        value = moore_order(params, d - 1)
        pdict["case"] = "at-or-below-lambda_{d-1}"
        notes = ("tau2 in the range of smaller diameter; order capped one level down",)
    return BoundResult(value, "IMP2", pdict, notes=notes)


def _bisect(fun, lo: float, hi: float, iters: int = 200) -> float:
    flo = fun(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = fun(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo <= 1e-15 * max(1.0, abs(hi)):
            break
    return 0.5 * (lo + hi)


def defect_region(params: Params, d: int, e: Number) -> tuple[float, float, float]:
    """For diameter-d instances with defect at most e, tau2 lies in
    [lower, upper]; the middle value is the largest zero of G_d (defect 0).
    Closed forms cover d = 2; larger d solves the same relations numerically."""
    if d < 2:
        raise ValueError("d must be >= 2")
    k, q = params.k, params.q
    cap = k * q ** (d - 1)
    ef = float(e)
    if not 0 <= ef < cap:
        raise ValueError(f"defect must lie in [0, {cap})")
    lam_d = largest_zero_G(params, d)
    u = params.u
    if d == 2:
        bigk = k * q / (k * q - ef)
        lower = (u - 2 - bigk + math.sqrt((u - bigk) ** 2 + 4 * q)) / 2
        upper = (u - 3 + math.sqrt((u - 1) ** 2 + 4 * q + 4 * ef)) / 2
        return lower, lam_d, upper
    lam_prev = largest_zero_G(params, d - 1)

    def lower_rel(t: float) -> float:
        return cap * g_eval(params, d, t) / f_eval(params, d, t) - ef

    eps = 1e-12 * max(1.0, abs(lam_prev))
    lower = _bisect(lower_rel, lam_prev + eps, lam_d)

    def upper_rel(t: float) -> float:
        return g_eval(params, d, t) - ef

    # seed just below lam_d so G_d < 0 there despite root noise (e = 0 would
    # otherwise leave the bracket endpoint sitting on the root)
    seed = lam_d - 1e-7 * max(1.0, abs(lam_d))
    upper = _bisect(upper_rel, seed, float(k))
    return lower, lam_d, upper


def defect_lower_bounds(params: Params, d: int, tau2: float,
                        ztol: float = ZTOL) -> float:
    """Minimum defect forced by tau2 at diameter d (three ranges relative to
    the largest zeros of G_{d-1} and G_d)."""
    if d < 1:
        raise ValueError("d must be >= 1")
    cap = params.k * params.q ** (d - 1)
    lam_d = largest_zero_G(params, d)
    lam_prev = -math.inf if d == 1 else largest_zero_G(params, d - 1)
    t = float(tau2)
    if t >= lam_d - ztol:
        return max(g_eval(params, d, t), 0.0)
    if t > lam_prev + ztol:
        return cap * g_eval(params, d, t) / f_eval(params, d, t)
    return float(cap)


def duality_transform(r: int, u: int, theta: Number):
    """Parameter swap (r,u,theta) -> (u, r, theta + r - u) with value scale
    u/r; applying it twice returns the starting point."""
    if r < 2 or u < 2:
        raise ValueError("need r, u >= 2")
    return u, r, theta + (r - u), Fraction(u, r)


def ru1_bound(r: int, u: int) -> Optional[BoundResult]:
    """Order cap u(r+1) at second eigenvalue 1, available once r is large
    enough relative to u; None when the degree condition fails."""
    if u < 3:
        raise ValueError("needs u >= 3")
    if r < max(7 * u - 5, u * u - 1):
        return None
    return BoundResult(u * (r + 1), "RU1", {"r": r, "u": u, "theta": 1},
                       notes=("tight exactly when an orthogonal array with "
                              f"{u + 1} rows over {r + 1} symbols exists",))


def tau2_lower(params: Params, n: int, tol: float = ZTOL):
    """Smallest possible second eigenvalue for order n: the unique (d, c)
    with n = moore_order(d-1) + kq^(d-1)/c and the second eigenvalue of the
    associated tridiagonal array."""
    if n < 2:
        raise ValueError("order must be >= 2")
    k, q = params.k, params.q
    d = 1
    while moore_order(params, d) < n:
        d += 1
    c = Fraction(k * q ** (d - 1), n - moore_order(params, d - 1))
    assert 1 <= c <= k * q ** (d - 1)
    lam = -float(c) if d == 1 else largest_zero_gc(params, d, c, tol)
    return d, c, lam


def biregular_bound(params: Params, base: BoundResult) -> Number:
    """Scale an order bound to the two-sided count of the incidence graph:
    (r+u)/u times the base value."""
    scale = Fraction(params.r + params.u, params.u)
    if _is_exact(base.value):
        return scale * _as_fraction(base.value)
    return float(scale) * base.value
