"""Newton polygons over valued coefficients and the ramification calculus.

The conjugate-difference bound M(R) is read off the Newton polygon of
f(pi+T)/T, whose coefficient valuations are exact: expanding f at pi by the
binomial theorem gives, for each T-power, a pi-polynomial whose terms have
pairwise distinct valuations, so the minimum is computed symbolically and no
truncated element arithmetic enters the hull.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .dvr import DvrElem, DvrSpec, ValInfo, ValQ, minimal_polynomial
from .errors import PrecisionTooLow
from .witt import WittElem, make_witt


def _vp_int(n: int, p: int) -> int | None:
    if n == 0:
        return None
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def nu_of_e(p: int, e: int) -> int:
    """nu(e) = e * v_p(e): the valuation of the integer e in any ring with
    ramification index e; it depends only on p and e."""
    return e * (_vp_int(e, p) or 0)


# ---------------------------------------------------------------------------
# Newton polygons


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of (i, val(c_i)); slopes are the negated segment
    gradients, listed ascending with multiplicities (= segment widths)."""

    vertices: tuple  # ((index, ValQ), ...)
    slopes: tuple  # ((Fraction, multiplicity), ...)

    def max_slope(self) -> Fraction:
        return self.slopes[-1][0]

    def slope_sum(self) -> Fraction:
        return sum((s * m for s, m in self.slopes), Fraction(0))


def _as_valinfo(v) -> ValInfo:
    if isinstance(v, ValInfo):
        return v
    if isinstance(v, ValQ):
        return ValInfo(v, True)
    if v is None:
        return ValInfo(ValQ.infinity(), True)
    return ValInfo(ValQ(v), True)


def newton_polygon(coeff_vals) -> NewtonPolygon:
    """Build the polygon from per-coefficient valuations (exact ValQ/ValInfo,
    or lower bounds via ValInfo(exact=False); None or infinity marks a zero
    coefficient).

    Raises PrecisionTooLow when a hull vertex rests on a coefficient whose
    valuation is only a lower bound: the hull is not determined.
    """
    vals = [_as_valinfo(v) for v in coeff_vals]
    if not vals or not vals[-1].exact:
        raise PrecisionTooLow("leading coefficient valuation must be exactly known")
    points = [(i, v) for i, v in enumerate(vals) if not v.value.is_infinite]
    if len(points) < 2:
        raise ValueError("degenerate polygon: fewer than two finite points")
    # Graham-style scan of the lower hull with exact rational turns
    hull = []
    for i, v in points:
        x, y = Fraction(i), v.value.fraction
        while len(hull) >= 2:
            (x0, y0, _), (x1, y1, _) = hull[-2], hull[-1]
            if (x1 - x0) * (y - y0) - (x - x0) * (y1 - y0) <= 0:
                hull.pop()
            else:
                break
        hull.append((x, y, v))
    for x, y, v in hull:
        if not v.exact:
            raise PrecisionTooLow(
                f"hull vertex at index {x} rests on a valuation lower bound"
            )
    vertices = tuple((int(x), ValQ(y)) for x, y, _ in hull)
    slopes = []
    for (x0, y0), (x1, y1) in zip(vertices, vertices[1:]):
        grad = Fraction(y1.fraction - y0.fraction, x1 - x0)
        slopes.append((-grad, x1 - x0))
    slopes.sort(key=lambda sm: sm[0])
    return NewtonPolygon(vertices, tuple(slopes))


# ---------------------------------------------------------------------------
# exact coefficient valuations of f(pi+T)/T and f'(pi)


def _shifted_coeff_vals(a_vals, e: int, p: int):
    """Valuations of the T^1..T^e coefficients of f(pi+T), from the
    valuations a_vals[j] (nu-units, None = infinity) of f's coefficients.

    b_i = sum_{j>=i} C(j,i) a_j pi^(j-i); for i >= 1 the term valuations
    e*v_p(C(j,i) a_j) + (j-i) are pairwise distinct mod e, so each b_i's
    valuation is an exact minimum.
    """
    out = []
    full = list(a_vals) + [0]  # leading coefficient a_e = 1 has valuation 0
    for i in range(1, e + 1):
        best = None
        for j in range(i, e + 1):
            va = full[j]
            if va is None:
                continue
            vc = _vp_int(comb(j, i), p)
            term = e * (va + vc) + (j - i)
            if best is None or term < best:
                best = term
        out.append(best)
    return out  # nu-units of coefficients c_0..c_{e-1} of f(pi+T)/T


def _spec_coeff_vals(R: DvrSpec):
    """Exact p-adic valuations of f's non-leading coefficients."""
    return [c.p_val() for c in R.coeffs]


def krasner_bound(R: DvrSpec) -> ValQ:
    """M(R): the largest normalized valuation of a difference pi - sigma(pi)
    over nontrivial conjugates of the uniformizer; 0 for e = 1, where the
    maximum is empty."""
    if R.e == 1:
        return ValQ(0)
    return _krasner_from_coeff_vals(_spec_coeff_vals(R), R.e, R.p)


def _krasner_from_coeff_vals(a_vals, e: int, p: int, exactness=None) -> ValQ:
    """Maximal polygon slope of f(pi+T)/T given f's coefficient valuations.

    exactness, when given, marks which of a_vals are mere lower bounds; the
    induced per-point uncertainty feeds the polygon's lower-bound handling.
    """
    shifted = _shifted_coeff_vals(a_vals, e, p)
    vals = []
    for i, v in enumerate(shifted):
        if v is None:
            vals.append(ValInfo(ValQ.infinity(), True))
            continue
        exact = True
        if exactness is not None:
            # the minimum is exact only when achieved by an exact term below
            # every lower-bound term
            exact = _min_is_exact(a_vals, exactness, e, p, i + 1, v)
        vals.append(ValInfo(ValQ(Fraction(v, e)), exact))
    poly = newton_polygon(vals)
    return ValQ(poly.max_slope())


def _min_is_exact(a_vals, exactness, e, p, i, minimum) -> bool:
    full_vals = list(a_vals) + [0]
    full_exact = list(exactness) + [True]
    for j in range(i, e + 1):
        if full_vals[j] is None or full_exact[j]:
            continue
        vc = _vp_int(comb(j, i), p)
        if e * (full_vals[j] + vc) + (j - i) <= minimum:
            return False
    return True


def krasner_bound_of_uniformizer(x: DvrElem) -> ValQ:
    """Recompute M by re-deriving the minimal polynomial of an alternative
    uniformizer x; coefficient valuations are read at working precision and
    carried as lower bounds where they are not settled."""
    spec = x.ring
    if spec.e == 1:
        return ValQ(0)
    coeffs = minimal_polynomial(x)
    a_vals = [c.p_val() for c in coeffs]
    exactness = [v < c.ring.M for v, c in zip(a_vals, coeffs)]
    return _krasner_from_coeff_vals(a_vals, spec.e, spec.p, exactness)


def different_val(R: DvrSpec) -> int:
    """nu(f'(pi)) in nu-units; the different of R over W(k) is (f'(pi))."""
    e, p = R.e, R.p
    full = _spec_coeff_vals(R) + [0]
    best = None
    for j in range(1, e + 1):
        va = full[j]
        if va is None:
            continue
        vj = _vp_int(j, p)
        if vj is None:
            continue
        term = e * (va + vj) + (j - 1)
        if best is None or term < best:
            best = term
    assert best is not None
    return best


def discriminant_val(R: DvrSpec) -> int:
    """p-adic valuation of disc(f) over W(k).

    The norm of m^s is p^s for a totally ramified extension, so the value
    equals the different; an independent Sylvester-resultant determinant over
    W(k)/p^B cross-checks every call.
    """
    s = different_val(R)
    res_val = _resultant_val(R, bound=s + 4)
    assert res_val == s, f"resultant valuation {res_val} != different {s}"
    return s


def _resultant_val(R: DvrSpec, bound: int) -> int:
    """v_p(Res(f, f')) via the Sylvester determinant at precision p^bound."""
    e = R.e
    wspec = make_witt(R.k, bound)
    f = R.f_materialized(wspec) + [wspec.one()]
    fprime = [f[j] * wspec.from_int(j) for j in range(1, e + 1)]
    size = 2 * e - 1
    rows = []
    for shift in range(e - 1):  # e-1 rows of f (descending layout)
        row = [wspec.zero()] * size
        for j in range(e + 1):
            row[shift + j] = f[e - j]
        rows.append(row)
    for shift in range(e):  # e rows of f'
        row = [wspec.zero()] * size
        for j in range(e):
            row[shift + j] = fprime[e - 1 - j]
        rows.append(row)
    det = _det(rows, wspec)
    v = det.p_val()
    assert v < bound, "resultant vanished to working precision"
    return v


def _det(rows, wspec) -> WittElem:
    """Determinant by minor expansion with memoization on column subsets;
    division-free, so it works over W(k)/p^B."""
    n = len(rows)
    if n == 0:
        return wspec.one()
    memo = {0: wspec.one()}

    # recursion keyed on the set of still-available columns: the row index is
    # determined by its popcount
    def minor(cols):
        if cols in memo:
            return memo[cols]
        row = n - bin(cols).count("1")
        acc = wspec.zero()
        sign = 0
        for c in range(n):
            if cols & (1 << c):
                entry = rows[row][c]
                if not entry.is_zero():
                    sub = minor(cols & ~(1 << c))
                    term = entry * sub
                    acc = acc + term if sign % 2 == 0 else acc - term
                sign += 1
        memo[cols] = acc
        return acc

    return minor((1 << n) - 1)


# ---------------------------------------------------------------------------
# bound formulas


def lift_precision_bound(R1: DvrSpec, e2: int) -> int:
    """Smallest n2 with n2 > M(R1) * e1 * e2: the target-side residue length
    from which homomorphisms lift uniquely."""
    if e2 < 1:
        raise ValueError("e2 must be >= 1")
    m = krasner_bound(R1)
    threshold = m.fraction * R1.e * e2
    n = int(threshold) + 1
    return n


def generic_bounds(p: int, e: int) -> dict:
    """Lifting-number bounds depending only on (p, e)."""
    if e < 1:
        raise ValueError("e must be >= 1")
    nu_e = nu_of_e(p, e)
    out = {
        "upper": e + e * nu_e + 1,
        "lower": 1 if e == 1 else e + 1,
        "basarab_upper": e * (1 + nu_e) + 1,
    }
    if e >= 2 and e % p != 0:
        out["tame_exact"] = e + 1
    return out


def n0_threshold(R1: DvrSpec, R2: DvrSpec) -> int:
    """Smallest residue length that decides elementary equivalence questions
    for the pair: max over both rings of e + e*nu(e), plus one."""
    def side(R):
        return R.e + R.e * nu_of_e(R.p, R.e)

    return max(side(R1), side(R2)) + 1


# ---------------------------------------------------------------------------
# report


@dataclass(frozen=True)
class RamificationReport:
    e: int
    tame: bool
    M: ValQ
    different_val: int
    discriminant_val: int

    def to_json(self) -> dict:
        return {
            "e": self.e,
            "tame": self.tame,
            "M": str(self.M),
            "different_val": self.different_val,
            "discriminant_val": self.discriminant_val,
        }


def ramification_report(R: DvrSpec) -> RamificationReport:
    return RamificationReport(
        e=R.e,
        tame=R.e % R.p != 0,
        M=krasner_bound(R),
        different_val=different_val(R),
        discriminant_val=discriminant_val(R),
    )
