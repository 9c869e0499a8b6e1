"""Positive-characteristic Galois certification.

Strategy: sufficiency only by explicit splitting certificates (a full list
of roots of the projection polynomial inside its own quotient ring, whose
product reconstitutes the polynomial), necessity only by a probabilistic
specialization oracle (a Galois extension forces equal-degree factor
patterns at specializations with squarefree full-degree image).  No general
Galois decision procedure is attempted; the structural recognizers cover
additive, Kummer and twisted-additive shapes and are explicitly extensible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import (GaloisLocusError, InconsistencyError, PreconditionError,
                     StrangeCenterError)
from .exactfield import (Scalar, UniPoly, ddf, field_make,
                         primitive_root_of_unity, uni_gcd)
from .multipoly import MultiPoly
from .projgeom import (Hypersurface, ProjPoint, field_embedding,
                       map_coefficients, polar_form)


# ---------------------------------------------------------------------------
# group descriptors


@dataclass(frozen=True)
class GroupDescriptor:
    """Galois group shape: (Z/pZ)^e extended by Z/lZ (cyclic when e = 0,
    elementary abelian when l = 1)."""

    p: int
    e: int
    l: int

    def __post_init__(self):
        if self.l < 1 or self.e < 0:
            raise PreconditionError("bad group parameters")
        if self.e > 0 and self.l > 1 and (self.p ** self.e - 1) % self.l != 0:
            raise InconsistencyError(
                f"l = {self.l} does not divide p^e - 1 = {self.p ** self.e - 1}")

    @property
    def kind(self):
        if self.e == 0:
            return "cyclic"
        return "elementary_abelian" if self.l == 1 else "semidirect"

    @property
    def order(self):
        return (self.p ** self.e) * self.l

    def __str__(self):
        if self.e == 0:
            return f"Z/{self.l}"
        base = f"(Z/{self.p})^{self.e}"
        return base if self.l == 1 else f"{base} x| Z/{self.l}"

    def to_json(self):
        return {"kind": self.kind, "p": self.p, "e": self.e, "l": self.l,
                "order": self.order, "name": str(self)}


def group_descriptor(d: int, m: int, p: int) -> GroupDescriptor:
    """Group shape of a certified Galois point: split d - m as p^e * l.

    For p = 0 the group is cyclic of order d - m.  For p > 0 the divisibility
    l | p^e - 1 is asserted; a violation on a certified input flags a bug.
    """
    n = d - m
    if n < 1:
        raise PreconditionError("d - m must be positive")
    if p == 0:
        return GroupDescriptor(0, 0, n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return GroupDescriptor(p, e, n)


# ---------------------------------------------------------------------------
# projection polynomials


@dataclass(frozen=True)
class ProjectionPoly:
    """The fiber polynomial of the projection away from a point.

    ``coeffs`` maps x0-exponent -> coefficient in K[x_1..x_n]; the generic
    fiber of the projection is cut out by sum coeffs[j] * x0^j.  Degree d off
    the hypersurface, d-1 at a smooth point of it.  ``perm`` records the
    coordinate permutation that moved a nonzero coordinate of the center
    first; coefficients are only ever cancelled by monomial content.
    """

    field: object
    n: int
    coeffs: dict
    center: ProjPoint
    perm: tuple

    def degree(self):
        return max(self.coeffs)

    def leading(self) -> MultiPoly:
        return self.coeffs[self.degree()]

    def coefficient(self, j) -> MultiPoly:
        return self.coeffs.get(j, MultiPoly.zero(self.field, self.n))

    def x0_derivative(self) -> dict:
        out = {}
        for j, c in self.coeffs.items():
            if j >= 1:
                cc = c * j
                if not cc.is_zero():
                    out[j - 1] = cc
        return out

    def render(self, names=None):
        from .polyparse import render
        names = names or tuple(["x0"] + [f"x{j}" for j in range(1, self.n + 1)])
        pieces = []
        for j in sorted(self.coeffs, reverse=True):
            c = self.coeffs[j]
            body = render(c, names[1:])
            mono = "" if j == 0 else (names[0] if j == 1 else f"{names[0]}^{j}")
            if mono:
                pieces.append(f"({body})*{mono}" if (" " in body or "-" in body[1:])
                              else (mono if body == "1" else f"{body}*{mono}"))
            else:
                pieces.append(f"({body})" if " " in body else body)
        return " + ".join(pieces)


def projection_polynomial(X: Hypersurface, P: ProjPoint) -> ProjectionPoly:
    """Eliminate along the projection from P.

    After permuting coordinates so the center has first coordinate 1 (the
    hypersurface is permuted accordingly), the substitution
    X_0 -> x0, X_i -> x_i + a_i x0 (i < n+1), X_{n+1} -> 1 + a_{n+1} x0
    expresses the defining form as a polynomial in x0 over K[x_1..x_n].
    Errors when P is a strange center (projection not generically finite and
    separable)."""
    if polar_form(X, P).is_zero():
        raise StrangeCenterError("projection center is a strange center")
    field = X.field
    nv = X.nvars
    j0 = P.lead_index()
    perm = tuple([j0] + [j for j in range(nv) if j != j0])
    a = [P.coords[j] for j in perm]  # a[0] == 1
    n = nv - 2
    # variables of the affine model: x0, x_1..x_n
    images = [None] * nv
    x0 = MultiPoly.variable(field, n + 1, 0)
    for pos in range(nv):
        if pos == 0:
            images[perm[pos]] = x0
        elif pos <= n:
            xi = MultiPoly.variable(field, n + 1, pos)
            images[perm[pos]] = xi + x0 * a[pos]
        else:
            images[perm[pos]] = MultiPoly.const(field, n + 1, 1) + x0 * a[pos]
    f = X.F.poly.substitute(images)
    coeffs = {}
    for e, c in f.terms.items():
        j = e[0]
        rest = e[1:]
        if j not in coeffs:
            coeffs[j] = {}
        coeffs[j][rest] = c
    polys = {j: MultiPoly(field, n, t) for j, t in coeffs.items()}
    polys = {j: c for j, c in polys.items() if not c.is_zero()}
    polys = _cancel_monomial_content(polys, field, n)
    return ProjectionPoly(field, n, polys, P, perm)


def _cancel_monomial_content(polys, field, n):
    if not polys:
        return polys
    mins = None
    for c in polys.values():
        for e in c.terms:
            mins = list(e) if mins is None else [min(a, b)
                                                 for a, b in zip(mins, e)]
    if mins is None or all(x == 0 for x in mins):
        return polys
    out = {}
    for j, c in polys.items():
        out[j] = MultiPoly(field, n,
                           {tuple(a - b for a, b in zip(e, mins)): v
                            for e, v in c.terms.items()})
    return out


# ---------------------------------------------------------------------------
# quotient-ring arithmetic (coefficients are unreduced fractions)


class QuotientRing:
    """K(x_1..x_n)[x0]/(f) with fraction coefficients kept unreduced except
    for monomial content.  Enough for certificate checks at desk scale."""

    def __init__(self, f: ProjectionPoly):
        self.f = f
        self.field = f.field
        self.n = f.n
        self.D = f.degree()
        self.lead = f.leading()

    def one(self):
        return QuotientElement(self, (MultiPoly.const(self.field, self.n, 1),)
                               + (MultiPoly.zero(self.field, self.n),) * (self.D - 1),
                               MultiPoly.const(self.field, self.n, 1))

    def zero(self):
        return QuotientElement(self, (MultiPoly.zero(self.field, self.n),) * self.D,
                               MultiPoly.const(self.field, self.n, 1))

    def from_x0_poly(self, coeffs, den=None):
        """Element from a list of K[x]-coefficients of x0^0..; reduced mod f."""
        den = den if den is not None else MultiPoly.const(self.field, self.n, 1)
        nums = list(coeffs)
        nums, den = self._reduce(nums, den)
        return QuotientElement(self, tuple(nums), den)

    def _reduce(self, nums, den):
        D = self.D
        while len(nums) > D:
            top = nums.pop()
            if top.is_zero():
                continue
            # x0^(D+k) = -(f - lead x0^D)/lead * x0^k
            k = len(nums) - D
            nums = [c * self.lead for c in nums]
            den = den * self.lead
            for j, c in self.f.coeffs.items():
                if j == self.D:
                    continue
                idx = j + k
                nums[idx] = nums[idx] - top * c
        while len(nums) < D:
            nums.append(MultiPoly.zero(self.field, self.n))
        return nums, den

    def equal(self, a, b):
        return (a - b).is_zero()


class QuotientElement:
    __slots__ = ("ring", "nums", "den")

    def __init__(self, ring, nums, den):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in quotient element")
        self.ring = ring
        self.nums = tuple(nums)
        self.den = den

    def is_zero(self):
        return all(c.is_zero() for c in self.nums)

    def __add__(self, other):
        r = self.ring
        nums = [a * other.den + b * self.den
                for a, b in zip(self.nums, other.nums)]
        return QuotientElement(r, nums, self.den * other.den)

    def __sub__(self, other):
        r = self.ring
        nums = [a * other.den - b * self.den
                for a, b in zip(self.nums, other.nums)]
        return QuotientElement(r, nums, self.den * other.den)

    def __neg__(self):
        return QuotientElement(self.ring, tuple(-c for c in self.nums), self.den)

    def __mul__(self, other):
        r = self.ring
        if isinstance(other, (int, Scalar)):
            return QuotientElement(r, tuple(c * other for c in self.nums),
                                   self.den)
        if isinstance(other, MultiPoly):
            return QuotientElement(r, tuple(c * other for c in self.nums),
                                   self.den)
        D = r.D
        prod = [MultiPoly.zero(r.field, r.n) for _ in range(2 * D - 1)]
        for i, a in enumerate(self.nums):
            if a.is_zero():
                continue
            for j, b in enumerate(other.nums):
                if not b.is_zero():
                    prod[i + j] = prod[i + j] + a * b
        nums, den = r._reduce(prod, self.den * other.den)
        return QuotientElement(r, tuple(nums), den)

    __rmul__ = __mul__


def splitting_certificate_check(f: ProjectionPoly, roots) -> bool:
    """Exact check that lead(f) * prod(T - r_i) equals f(T) in the quotient
    ring, with deg(f) pairwise distinct roots.  True certifies that the
    extension cut out by f is Galois (complete splitting of a separable
    minimal polynomial over the extension itself).

    Certificates with vanishing x0-derivative are rejected as
    inseparable-suspect."""
    D = f.degree()
    if len(roots) != D:
        raise PreconditionError(f"need exactly {D} roots, got {len(roots)}")
    if not f.x0_derivative():
        return False  # inseparable-suspect
    ring = QuotientRing(f)
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            if (roots[i] - roots[j]).is_zero():
                return False
    # prod(T - r_i): coefficients in the quotient ring, by iterative products
    poly_t = [ring.one()]  # coefficients of T^0.. ; start with constant 1
    for r in roots:
        nxt = [ring.zero() for _ in range(len(poly_t) + 1)]
        for k, c in enumerate(poly_t):
            nxt[k + 1] = nxt[k + 1] + c
            nxt[k] = nxt[k] - c * r
        poly_t = nxt
    lead = f.leading()
    for k, c in enumerate(poly_t):
        lhs = c * lead
        rhs_poly = f.coefficient(k)
        rhs = ring.from_x0_poly([rhs_poly]
                                + [MultiPoly.zero(f.field, f.n)] * (ring.D - 1))
        if not (lhs - rhs).is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# structural recognizers


@dataclass(frozen=True)
class FormMatch:
    kind: str           # "twisted_additive" | "additive" | "kummer"
    e: int
    l: int
    data: dict

    def to_json(self):
        return {"kind": self.kind, "e": self.e, "l": self.l}


def _p_power_exponent(n: int, p: int):
    e = 0
    while n > 1:
        if n % p:
            return None
        n //= p
        e += 1
    return e


def recognize_form(f: ProjectionPoly):
    """Recognize a certifiable shape of the fiber polynomial, or None.

    Supported patterns:
      twisted_additive:  B x0^q + B^q x0 + C           (q = p^e, l = 1)
      additive:          sum a_i x0^(p^i) + C          (l = 1)
      kummer:            a x0^l + C with p not | l     (e = 0)
    """
    field = f.field
    p = field.characteristic
    if p == 0:
        raise PreconditionError("structural recognizers run in char p")
    D = f.degree()
    exps = sorted(j for j in f.coeffs if j > 0)
    # twisted additive: exponents {1, q}, coefficient relation C1 = Cq^q
    eD = _p_power_exponent(D, p)
    if eD is not None and eD > 0 and set(exps) <= {1, D}:
        B = f.coefficient(D)
        C1 = f.coefficient(1)
        if not B.is_zero() and C1 == B.frobenius_power(D):
            return FormMatch("twisted_additive", eD, 1, {"B": B})
    # pure additive: all positive exponents are p-powers, constant coefficients
    if (eD is not None and eD > 0
            and all(_p_power_exponent(j, p) is not None for j in exps)):
        coeffs = {j: f.coefficient(j) for j in exps}
        if all(c.total_degree() == 0 for c in coeffs.values()):
            return FormMatch("additive", eD, 1,
                             {"scalars": {j: c.coefficient((0,) * f.n)
                                          for j, c in coeffs.items()}})
    # Kummer: single positive exponent l with p not | l
    if len(exps) == 1 and exps[0] == D and D % p != 0:
        return FormMatch("kummer", 0, D, {"a": f.coefficient(D)})
    return None


def build_certificate_roots(f: ProjectionPoly, match: FormMatch):
    """Root lists for the recognized shapes, or None with a reason when the
    working field is too small to host them."""
    field = f.field
    ring = QuotientRing(f)
    n = f.n
    zero = MultiPoly.zero(field, n)
    one = MultiPoly.const(field, n, 1)
    if match.kind == "twisted_additive":
        q = field.characteristic ** match.e
        # kernel: the q solutions of c^q + c = 0 in the field
        ker_poly = UniPoly(field, [field.scalar(0), field.scalar(1)]
                           + [field.scalar(0)] * (q - 2) + [field.scalar(1)])
        from .exactfield import roots_in_field
        ker = roots_in_field(ker_poly)
        if len(ker) != q:
            return None, f"kernel of c^q + c has only {len(ker)} points here"
        B = match.data["B"]
        roots = []
        for c in ker:
            roots.append(ring.from_x0_poly([B * c, one] + [zero] * (ring.D - 2)))
        return roots, None
    if match.kind == "additive":
        scalars = match.data["scalars"]
        coeffs = [field.scalar(0)] * (f.degree() + 1)
        for j, c in scalars.items():
            coeffs[j] = c
        from .exactfield import roots_in_field
        ker = roots_in_field(UniPoly(field, coeffs))
        if len(ker) != f.degree():
            return None, (f"additive kernel has only {len(ker)} of "
                          f"{f.degree()} points here")
        roots = []
        for c in ker:
            roots.append(ring.from_x0_poly([MultiPoly.const(field, n, c), one]
                                           + [zero] * (ring.D - 2)))
        return roots, None
    if match.kind == "kummer":
        from .errors import FieldTooSmallError
        try:
            zeta = primitive_root_of_unity(field, match.l)
        except FieldTooSmallError as exc:
            return None, str(exc)
        roots = []
        cur = field.scalar(1)
        for _ in range(match.l):
            roots.append(ring.from_x0_poly([zero, MultiPoly.const(field, n, cur)]
                                           + [zero] * (ring.D - 2)))
            cur = cur * zeta
        return roots, None
    return None, f"unsupported pattern {match.kind}"


# ---------------------------------------------------------------------------
# specialization oracle


@dataclass
class SpecializationReport:
    trials: int
    clean: int
    skipped: int
    patterns: list
    verdict: str                # "pass" | "fail" | "inconclusive"
    witness: dict | None

    def to_json(self):
        out = {"trials": self.trials, "clean": self.clean,
               "skipped": self.skipped, "verdict": self.verdict,
               "patterns": [list(p) for p in sorted(set(self.patterns))]}
        if self.witness:
            out["witness"] = {k: str(v) for k, v in self.witness.items()}
        return out


def specialization_oracle(f: ProjectionPoly, trials: int = 50,
                          ext_degree: int = 2, seed: int = 0) -> SpecializationReport:
    """Necessity test: specialize x_1..x_n to random values in an extension,
    factor by degree, and demand equal-degree patterns.

    A clean trial has full x0-degree and a squarefree image; ``fail`` (some
    clean trial with unequal factor degrees) is decisive, ``pass`` is
    probabilistic evidence only."""
    field = f.field
    if field.characteristic == 0:
        raise PreconditionError("the oracle runs over finite fields")
    ext = field_make(field.characteristic, field.degree * ext_degree)
    emb = field_embedding(field, ext)
    coeffs_ext = {j: map_coefficients(c, emb, ext) for j, c in f.coeffs.items()}
    D = f.degree()
    rng = random.Random(seed)
    patterns = []
    clean = 0
    skipped = 0
    attempts = 0
    max_attempts = trials * 20
    while clean < trials and attempts < max_attempts:
        attempts += 1
        vals = [Scalar(ext, rng.randrange(ext.size)) for _ in range(f.n)]
        cs = [ext.scalar(0)] * (D + 1)
        for j, c in coeffs_ext.items():
            cs[j] = c.evaluate(vals)
        g = UniPoly(ext, cs)
        if g.degree() != D:
            skipped += 1
            continue
        gp = g.derivative()
        if gp.is_zero() or uni_gcd(g, gp).degree() != 0:
            skipped += 1
            continue
        clean += 1
        blocks = ddf(g.monic())
        pat = []
        for deg, prod in blocks:
            pat.extend([deg] * (prod.degree() // deg))
        pat = tuple(sorted(pat))
        patterns.append(pat)
        if len(set(pat)) > 1:
            return SpecializationReport(
                trials, clean, skipped, patterns, "fail",
                {"values": [repr(v) for v in vals], "pattern": list(pat)})
    if clean == 0:
        return SpecializationReport(trials, 0, skipped, patterns,
                                    "inconclusive", None)
    return SpecializationReport(trials, clean, skipped, patterns, "pass", None)
