"""Homomorphisms between finite residue rings and their certified lifts.

A homomorphism R_{1,n1} -> R_{2,n2} is stored as a residue-field embedding
psi together with the image beta of the uniformizer class: under the
presentation W(k1)[x]/(f, x^n1) those two values determine the map, and the
exhaustive-function oracle in the test suite guards this structural
shortcut.

Lifting walks all roots of the mapped Eisenstein polynomial in the target
ring by digit DFS.  A branch at level L survives only while the polynomial
value has valuation >= L; at the certification depth t a branch is accepted
exactly when nu(F(x)) >= t + nu(F'(x)) with t > nu(F'(x)), which pins a
unique root agreeing with the branch to depth t.  The unique accepted root
within Krasner distance of beta is the lift.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .dvr import (
    DvrElem,
    DvrSpec,
    ExactWittCoeff,
    GUARD_DIGITS,
    ResidueElt,
    ResidueRingSpec,
    ValQ,
    dvr_elem_text,
    enumerate_elements,
    enumeration_cap,
    from_pi_digits,
    pi_digits,
    project,
    project_between,
    residue_ring,
    ring_spec_to_json,
)
from .errors import (
    IncompatibleLengths,
    InsufficientPrecision,
    MultipleRoots,
    NoRoot,
    NotComposable,
    PrecisionTooLow,
    PreconditionBound,
    TooLarge,
)
from .ramification import different_val, krasner_bound, lift_precision_bound, nu_of_e
from .resfield import FieldEmbedding, embeddings
from .witt import make_witt, teich_digits, teichmuller

ESCALATION_CAP = 64  # hard cap on working precision, in nu-units


# ---------------------------------------------------------------------------
# polynomial coefficients that can be materialized at any precision


@dataclass(frozen=True)
class MappedCoeff:
    """The image under W(psi) of an exactly known W(k1) coefficient; exact at
    every precision because the digit expansion maps digitwise."""

    coeff: ExactWittCoeff
    psi: FieldEmbedding

    def p_val(self):
        # W(psi) preserves p-adic valuations: the first nonzero digit maps to
        # a nonzero digit
        return self.coeff.p_val()

    def materialize(self, wspec):
        return _mapped_materialize(self.coeff, self.psi, wspec)


@lru_cache(maxsize=8192)
def _mapped_materialize(coeff: ExactWittCoeff, psi: FieldEmbedding, wspec):
    src = make_witt(psi.source, wspec.M)
    digits = teich_digits(coeff.materialize(src))
    acc = wspec.zero()
    pw = 1
    for a in digits:
        b = psi(a)
        if not b.is_zero():
            acc = acc + teichmuller(b, wspec) * wspec.from_int(pw)
        pw *= wspec.p
    return acc


def _normalize_poly(F, k):
    """Coefficient list (ints / vectors / ExactWittCoeff / MappedCoeff) into
    providers a_0..a_{deg-1}; a trailing integer 1 is the implied monic lead."""
    entries = list(F)
    if entries and isinstance(entries[-1], int) and entries[-1] == 1 and len(entries) >= 2:
        entries = entries[:-1]
    out = []
    for c in entries:
        if isinstance(c, (ExactWittCoeff, MappedCoeff)):
            out.append(c)
        elif isinstance(c, int):
            out.append(ExactWittCoeff.from_ints(k, [c]))
        elif isinstance(c, (list, tuple)):
            out.append(ExactWittCoeff.from_ints(k, c))
        else:
            raise ValueError(f"cannot interpret coefficient {c!r}")
    return out


def _materialize_poly(providers, R: DvrSpec, n: int):
    wspec = R.wspec(n)
    consts = [R.from_witt(c.materialize(wspec), n) for c in providers]
    return consts


def _horner(consts, x: DvrElem, R: DvrSpec, n: int):
    """Evaluate the monic polynomial with constant terms consts at x."""
    acc = R.one(n)
    for c in reversed(consts):
        acc = acc * x + c
    return acc


def _horner_derivative(consts, x: DvrElem, R: DvrSpec, n: int):
    deg = len(consts)
    acc = R.from_int(deg, n)
    for j in range(deg - 1, 0, -1):
        acc = acc * x + R.from_int(j, n) * consts[j]
    return acc


# ---------------------------------------------------------------------------
# certified roots by digit DFS


@dataclass(frozen=True)
class CertifiedRoot:
    """A root approximation exact mod m^t: the acceptance inequality
    nu(F(x)) >= t + deriv_val forces a unique exact root in that ball."""

    elem: DvrElem
    t: int
    deriv_val: int


class _NeedMargin(Exception):
    pass


def _poly_deriv_bound(providers, e: int, p: int) -> int:
    """Crude bound on nu(F'(x)) at a root, from coefficient valuations."""
    deg = len(providers)
    best = None
    vals = [c.p_val() for c in providers] + [0]
    for j in range(1, deg + 1):
        va = vals[j]
        if va is None:
            continue
        vj = 0
        jj = j
        while jj % p == 0:
            jj //= p
            vj += 1
        term = e * (va + vj) + (j - 1)
        if best is None or term < best:
            best = term
    return best if best is not None else e * deg


def roots_in_dvr(F, R: DvrSpec, prec: int):
    """All roots of the monic polynomial F in R, refined to depth >= prec and
    carrying Hensel-style certificates.

    Raises PrecisionTooLow when a surviving branch can be neither certified
    nor excluded at the working precision cap (multiple roots, or prec too
    small to separate).
    """
    if prec < 1:
        raise ValueError("prec must be >= 1")
    providers = _normalize_poly(F, R.k)
    if not providers:
        raise ValueError("polynomial must have degree >= 1")
    margin = _poly_deriv_bound(providers, R.e, R.p) + R.e * GUARD_DIGITS + 2
    max_margin = 4 * (prec + ESCALATION_CAP)
    while True:
        try:
            return _root_dfs(providers, R, prec, margin)
        except _NeedMargin:
            margin *= 2
            if margin > max_margin:
                raise PrecisionTooLow(
                    f"cannot certify or exclude a root branch at depth {prec}"
                )


def _root_dfs(providers, R: DvrSpec, t: int, margin: int):
    n_eval = t + margin
    consts = _materialize_poly(providers, R, n_eval)
    field_elems = sorted(R.k.elements(), key=lambda a: a.coeffs)
    wspec = R.wspec(n_eval)
    pi_pows = [R.one(n_eval)]
    pi = R.uniformizer(n_eval)
    for _ in range(t):
        pi_pows.append(pi_pows[-1] * pi)
    teich = {a: R.from_witt(teichmuller(a, wspec), n_eval) for a in field_elems}

    branches = [((), R.zero(n_eval))]
    for level in range(1, t + 1):
        nxt = []
        for digits, x in branches:
            for a in field_elems:
                child_digits = digits + (a,)
                child = x if a.is_zero() else x + teich[a] * pi_pows[level - 1]
                v = _horner(consts, child, R, n_eval).valuation()
                if (v.exact and v.value >= ValQ(level)) or not v.exact:
                    nxt.append((child_digits, child))
        branches = nxt
        if not branches:
            return []

    roots = []
    for digits, x in branches:
        dv = _horner_derivative(consts, x, R, n_eval).valuation()
        if not dv.exact:
            raise _NeedMargin
        delta = int(dv.value.fraction)
        fv = _horner(consts, x, R, n_eval).valuation()
        threshold = t + delta
        if fv.exact and int(fv.value.fraction) < threshold:
            continue  # no root agrees with this branch to depth t
        if not fv.exact and fv.value < ValQ(threshold):
            raise _NeedMargin  # readout capped below the acceptance line
        if t <= delta:
            raise PrecisionTooLow(
                f"depth {t} does not separate a root with derivative valuation {delta}"
            )
        roots.append(CertifiedRoot(from_pi_digits(digits, R, t), t, delta))
    return roots


# ---------------------------------------------------------------------------
# residue-ring homomorphisms


@dataclass(frozen=True)
class ResidueHom:
    """Homomorphism R_{1,n1} -> R_{2,n2} as (psi, beta)."""

    source: ResidueRingSpec
    target: ResidueRingSpec
    psi: FieldEmbedding
    beta: ResidueElt

    def apply(self, x: ResidueElt) -> ResidueElt:
        if x.rspec != self.source:
            raise NotComposable("element not in the source ring")
        tgt = self.target
        n2 = tgt.n
        beta_lift = tgt.lift(self.beta)
        wspec = tgt.ring.wspec(n2)
        acc = tgt.ring.zero(n2)
        power = tgt.ring.one(n2)
        for a in x.digits:
            b = self.psi(a)
            if not b.is_zero():
                acc = acc + tgt.ring.from_witt(teichmuller(b, wspec), n2) * power
            power = power * beta_lift
        return project(acc, n2)

    def as_table(self, cap: int | None = None) -> dict:
        return {x: self.apply(x) for x in enumerate_elements(self.source, cap)}

    def is_identity(self) -> bool:
        return (
            self.source == self.target
            and self.psi.is_identity()
            and self.beta == project(self.source.ring.uniformizer(self.source.n), self.source.n)
        )

    def to_json(self) -> dict:
        return {
            "psi": {"image_of_generator": list(self.psi.image_of_generator.coeffs)},
            "beta": self.beta.text(),
            "source": {**ring_spec_to_json(self.source.ring), "n": self.source.n},
            "target": {**ring_spec_to_json(self.target.ring), "n": self.target.n},
        }


def residue_hom(
    source: ResidueRingSpec, target: ResidueRingSpec, psi: FieldEmbedding, beta: ResidueElt
) -> ResidueHom:
    """Validate (psi, beta) and build the homomorphism: the mapped Eisenstein
    polynomial must kill beta and beta^n1 must vanish."""
    if psi.source != source.ring.k or psi.target != target.ring.k:
        raise ValueError("embedding endpoints do not match the ring pair")
    if beta.rspec != target:
        raise ValueError("beta does not live in the target ring")
    if not _beta_admissible(source, target, psi, beta):
        raise ValueError("(psi, beta) does not define a homomorphism")
    return ResidueHom(source, target, psi, beta)


def _beta_admissible(source, target, psi, beta) -> bool:
    n1, n2 = source.n, target.n
    if beta.val_units() * n1 < n2:
        return False  # beta^n1 must vanish mod m2^n2
    providers = [MappedCoeff(c, psi) for c in source.ring.coeffs]
    consts = _materialize_poly(providers, target.ring, n2)
    value = _horner(consts, target.lift(beta), target.ring, n2)
    return not value.valuation().exact  # f1^psi(beta) = 0 mod m2^n2


def enumerate_homs(src: ResidueRingSpec, tgt: ResidueRingSpec, cap: int | None = None):
    """All homomorphisms src -> tgt in deterministic order: embeddings by
    image of the generator, beta by digit-vector lexicographic order."""
    if cap is None:
        cap = enumeration_cap()
    if tgt.cardinality > cap:
        raise TooLarge(f"{tgt.cardinality} target elements exceed the cap {cap}")
    out = []
    for psi in embeddings(src.ring.k, tgt.ring.k):
        for beta in enumerate_elements(tgt, cap):
            if _beta_admissible(src, tgt, psi, beta):
                out.append(ResidueHom(src, tgt, psi, beta))
    return out


def enumerate_isos(src: ResidueRingSpec, tgt: ResidueRingSpec, cap: int | None = None):
    """Bijective homomorphisms: psi bijective, beta of valuation one, equal
    cardinalities."""
    if src.ring.d != tgt.ring.d or src.cardinality != tgt.cardinality:
        return []
    return [h for h in enumerate_homs(src, tgt, cap) if h.beta.val_units() == 1]


# ---------------------------------------------------------------------------
# lifted homomorphisms


@dataclass(frozen=True)
class DvrHom:
    """Homomorphism R1 -> R2: psi plus the certified image of the uniformizer."""

    source: DvrSpec
    target: DvrSpec
    psi: FieldEmbedding
    rho: DvrElem
    certificate: tuple  # (t, deriv_val)

    def apply(self, x: DvrElem) -> DvrElem:
        if x.ring != self.source:
            raise NotComposable("element not in the source ring")
        e1, e2 = self.source.e, self.target.e
        prec = min(x.n * e2 // e1, self.rho.n)
        tgt = self.target
        wspec = tgt.wspec(prec)
        rho = self.rho.reduce_to(prec)
        acc = tgt.zero(prec)
        power = tgt.one(prec)
        for a in pi_digits(x, x.n):
            b = self.psi(a)
            if not b.is_zero():
                acc = acc + tgt.from_witt(teichmuller(b, wspec), prec) * power
            power = power * rho
        return acc.reduce_to(prec)

    @property
    def t(self) -> int:
        return self.certificate[0]

    @property
    def deriv_val(self) -> int:
        return self.certificate[1]

    def is_identity(self) -> bool:
        if self.source != self.target or not self.psi.is_identity():
            return False
        pi = self.source.uniformizer(self.rho.n)
        return same_hom(self, DvrHom(self.source, self.target, self.psi, pi, self.certificate))

    def to_json(self) -> dict:
        return {
            "psi": {"image_of_generator": list(self.psi.image_of_generator.coeffs)},
            "rho": dvr_elem_text(self.rho),
            "certificate": {"t": self.t, "deriv_val": self.deriv_val},
            "source": ring_spec_to_json(self.source),
            "target": ring_spec_to_json(self.target),
        }


def same_hom(a: DvrHom, b: DvrHom) -> bool:
    """Equality of lifted homomorphisms: same embedding and the two certified
    uniformizer images approximate the same exact root."""
    if (a.source, a.target, a.psi) != (b.source, b.target, b.psi):
        return False
    depth = min(a.rho.n, b.rho.n)
    assert depth > max(a.deriv_val, b.deriv_val), "certificates too shallow to compare"
    return pi_digits(a.rho, depth) == pi_digits(b.rho, depth)


def _nu_tilde_exceeds(x: DvrElem, bound: ValQ, e: int) -> bool:
    """Decide nu-tilde(x) > bound; an inexact readout is a valuation lower
    bound, so clearing the threshold is conclusive either way."""
    v = x.valuation()
    return Fraction(v.value.fraction, e) > bound.fraction


def select_unique_root(roots, beta: DvrElem, M1: ValQ, e2: int) -> CertifiedRoot:
    """The root within Krasner distance of beta: nu-tilde(rho - beta) > M(R1);
    exactly one exists above the precision bound."""
    matches, others = [], []
    for r in roots:
        if _nu_tilde_exceeds(r.elem - beta, M1, e2):
            matches.append(r)
        else:
            others.append(r)
    if not matches:
        raise NoRoot("no root within Krasner distance of beta: inconsistent input")
    if len(matches) > 1:
        raise MultipleRoots("several roots within Krasner distance: inconsistent input")
    for r in others:
        v = (r.elem - beta).valuation()
        assert v.exact and Fraction(v.value.fraction, e2) <= M1.fraction
    return matches[0]


def lift_hom(phi: ResidueHom, min_prec: int | None = None) -> DvrHom:
    """Lift a residue-ring homomorphism to the rings, by Krasner selection
    among the certified roots of the mapped Eisenstein polynomial.

    Requires n2 strictly above M(R1)*e1*e2; refuses lower lengths even when a
    lift happens to exist, because uniqueness is only guaranteed above the
    bound.  min_prec asks for extra certified digits on the image of the
    uniformizer.
    """
    R1, R2 = phi.source.ring, phi.target.ring
    n2 = phi.target.n
    bound = lift_precision_bound(R1, R2.e)
    if n2 < bound:
        raise PreconditionBound(f"requires n2 >= {bound}, got {n2}")
    if R2.e % R1.e != 0:
        raise IncompatibleLengths("target ramification must be a multiple of the source's")
    M1 = krasner_bound(R1)
    s1 = different_val(R1)
    prec = n2 + 2 * math.ceil(Fraction(R2.e * s1, R1.e)) + GUARD_DIGITS
    if min_prec is not None:
        prec = max(prec, min_prec)
    providers = [MappedCoeff(c, phi.psi) for c in R1.coeffs]
    roots = roots_in_dvr(providers, R2, prec)
    beta_lift = phi.target.lift(phi.beta)
    chosen = select_unique_root(roots, beta_lift, M1, R2.e)
    # the residue-field square commutes by construction; the image of the
    # uniformizer must again have the right valuation
    v = chosen.elem.valuation()
    assert v.exact and v.value == ValQ(R2.e // R1.e)
    return DvrHom(R1, R2, phi.psi, chosen.elem, (chosen.t, chosen.deriv_val))


def project_hom(g: DvrHom, n1: int, n2: int) -> ResidueHom:
    """The residue-ring homomorphism induced by g at lengths (n1, n2)."""
    if n2 * g.source.e > n1 * g.target.e:
        raise IncompatibleLengths(
            f"need n2*e1/e2 <= n1: {n2}*{g.source.e}/{g.target.e} > {n1}"
        )
    if g.rho.n < n2:
        raise InsufficientPrecision("certified image is shallower than n2")
    src = residue_ring(g.source, n1)
    tgt = residue_ring(g.target, n2)
    return residue_hom(src, tgt, g.psi, project(g.rho.reduce_to(n2), n2))


def compose_homs(f2, f1):
    """Composition in either category (target of f1 = source of f2, up to
    projection for residue-ring maps)."""
    if isinstance(f1, ResidueHom) and isinstance(f2, ResidueHom):
        if f1.target.ring != f2.source.ring or f2.source.n > f1.target.n:
            raise NotComposable("rings or lengths do not chain")
        beta1 = project_between(f1.beta, f2.source.n)
        beta = f2.apply(beta1)
        psi = f2.psi.compose(f1.psi)
        return residue_hom(f1.source, f2.target, psi, beta)
    if isinstance(f1, DvrHom) and isinstance(f2, DvrHom):
        if f1.target != f2.source:
            raise NotComposable("rings do not chain")
        psi = f2.psi.compose(f1.psi)
        rho = f2.apply(f1.rho)
        providers = [MappedCoeff(c, psi) for c in f1.source.coeffs]
        cert = _certify_at(providers, f2.target, rho)
        return DvrHom(f1.source, f2.target, psi, cert.elem, (cert.t, cert.deriv_val))
    raise NotComposable("homomorphisms from different categories")


def _certify_at(providers, R: DvrSpec, approx: DvrElem) -> CertifiedRoot:
    """Re-certify a composed root approximation at its own precision."""
    t = approx.n
    margin = _poly_deriv_bound(providers, R.e, R.p) + R.e * GUARD_DIGITS + 2
    digits = pi_digits(approx, t)
    while True:
        n_eval = t + margin
        consts = _materialize_poly(providers, R, n_eval)
        x = from_pi_digits(digits, R, n_eval)
        dv = _horner_derivative(consts, x, R, n_eval).valuation()
        if dv.exact:
            delta = int(dv.value.fraction)
            fv = _horner(consts, x, R, n_eval).valuation()
            if fv.value >= ValQ(t + delta):  # exact or lower bound, both conclusive
                if t <= delta:
                    raise PrecisionTooLow("composition too shallow to certify")
                return CertifiedRoot(from_pi_digits(digits, R, t), t, delta)
            if fv.exact:
                raise AssertionError("composed image is not a root to its depth")
        margin *= 2
        if margin > 4 * ESCALATION_CAP:
            raise PrecisionTooLow("cannot certify the composed homomorphism")


def apply_hom(h, x):
    if isinstance(h, ResidueHom):
        return h.apply(x)
    if isinstance(h, DvrHom):
        return h.apply(x)
    raise ValueError(f"not a homomorphism: {h!r}")


# ---------------------------------------------------------------------------
# ring-level isomorphism search and root existence


def dvr_isos(R1: DvrSpec, R2: DvrSpec, prec: int | None = None):
    """All ring homomorphisms R1 -> R2 that are isomorphisms, via the roots of
    the mapped Eisenstein polynomial; empty unless (d, e) agree."""
    if R1.d != R2.d or R1.e != R2.e or R1.p != R2.p:
        return []
    if prec is None:
        s = R2.e - 1 + nu_of_e(R2.p, R2.e)
        prec = max(2 * s + 2, 4)
    out = []
    for psi in embeddings(R1.k, R2.k):
        providers = [MappedCoeff(c, psi) for c in R1.coeffs]
        for root in roots_in_dvr(providers, R2, prec):
            out.append(DvrHom(R1, R2, psi, root.elem, (root.t, root.deriv_val)))
    return out


def hom_inverse(g: DvrHom) -> DvrHom:
    """Two-sided inverse of a ring isomorphism, found among Iso(R2, R1)."""
    for cand in dvr_isos(g.target, g.source):
        if compose_homs(cand, g).is_identity() and compose_homs(g, cand).is_identity():
            return cand
    raise NoRoot("homomorphism has no inverse")


@dataclass(frozen=True)
class HasRootResult:
    kind: str  # "yes" | "no" | "undecided"
    root: DvrElem | None
    precision: int

    def __bool__(self):
        return self.kind == "yes"


def _squarefree_part(coeffs):
    """Squarefree part of a monic integer polynomial (same root set)."""
    from fractions import Fraction as Fr

    def trim(c):
        while c and c[-1] == 0:
            c.pop()
        return c

    def polymod(a, b):
        a = [Fr(x) for x in a]
        b = [Fr(x) for x in b]
        while len(a) >= len(b) and trim(a):
            f = a[-1] / b[-1]
            for i in range(len(b)):
                a[len(a) - len(b) + i] -= f * b[i]
            a.pop()
            trim(a)
        return a

    def gcd(a, b):
        a, b = [Fr(x) for x in a], [Fr(x) for x in b]
        while trim(b):
            a, b = b, polymod(a, b)
        if not a:
            return [Fr(1)]
        return [x / a[-1] for x in a]

    deriv = [i * c for i, c in enumerate(coeffs)][1:]
    g = gcd(list(coeffs), deriv)
    if len(g) <= 1:
        return list(coeffs)
    # exact division of monic integer polynomials: quotient is integral
    quot, rem = [], [Fr(c) for c in coeffs]
    for i in range(len(coeffs) - 1, len(g) - 2, -1):
        c = rem[i] / g[-1]
        quot.append(c)
        for j in range(len(g)):
            rem[i - (len(g) - 1) + j] -= c * g[j]
    quot.reverse()
    assert all(c.denominator == 1 for c in quot)
    return [int(c) for c in quot]


def has_root(R: DvrSpec, F) -> HasRootResult:
    """Decide whether the monic integer polynomial F has a root in R, by the
    certified DFS at escalating precision; exhaustion of all digit branches
    is a proof of nonexistence."""
    coeffs = [int(c) for c in F]
    assert coeffs and coeffs[-1] == 1, "polynomial must be monic"
    coeffs = _squarefree_part(coeffs)
    prec = max(4, R.e + nu_of_e(R.p, R.e) + 1)
    while True:
        try:
            roots = roots_in_dvr(coeffs, R, prec)
        except PrecisionTooLow:
            prec *= 2
            if prec > ESCALATION_CAP:
                return HasRootResult("undecided", None, prec // 2)
            continue
        if roots:
            return HasRootResult("yes", roots[0].elem, roots[0].t)
        return HasRootResult("no", None, prec)
