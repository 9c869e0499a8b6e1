"""Projective points, hyperplanes, transforms, and hypersurface geometry.

Conventions used throughout the library:

* points are normalized so the first nonzero coordinate is 1;
* a ProjTransform with matrix M acts on points by Q -> M.Q; the defining
  form of the transformed hypersurface is F composed with M^{-1};
* ``dehomogenize_at`` routes every point through the chart transform
  M = [P | complementary standard basis vectors], so the affine model is
  f(x) = F(P + sum x_j e_j) and criteria always run in the same normalized
  chart.  The transform is returned for traceability.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field as dc_field

from . import matrices
from .errors import (BudgetExceededError, GaloisLocusError, PreconditionError)
from .exactfield import Scalar, UniPoly, ddf, field_make, is_irreducible, radical, roots_in_field, uni_gcd
from .multipoly import HomogPoly, MultiPoly, homog_parts, linear_substitute

DEFAULT_BUDGET = 2_000_000


def enumeration_budget():
    return int(os.environ.get("GALOIS_LOCUS_BUDGET", DEFAULT_BUDGET))


# ---------------------------------------------------------------------------
# basic objects


class ProjPoint:
    """A point of projective space, stored in normalized coordinates."""

    __slots__ = ("coords",)

    def __init__(self, coords, normalized=False):
        coords = tuple(coords)
        if not normalized:
            lead = None
            for c in coords:
                if not c.is_zero():
                    lead = c
                    break
            if lead is None:
                raise PreconditionError("projective point needs a nonzero coordinate")
            if not lead.is_one():
                inv = lead.inverse()
                coords = tuple(c * inv for c in coords)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, *a):
        raise AttributeError("ProjPoint is immutable")

    @property
    def field(self):
        return self.coords[0].field

    def __len__(self):
        return len(self.coords)

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        from .polyparse import render_point
        return f"({render_point(self.coords)})"

    def lead_index(self):
        for j, c in enumerate(self.coords):
            if not c.is_zero():
                return j
        raise AssertionError


class Hyperplane:
    """A hyperplane, stored as a degree-1 form with leading coefficient 1."""

    __slots__ = ("form",)

    def __init__(self, form: MultiPoly):
        if form.is_zero() or not form.is_homogeneous() or form.total_degree() != 1:
            raise PreconditionError("hyperplane needs a nonzero linear form")
        _, lead = form.leading_term()
        if not lead.is_one():
            form = form * lead.inverse()
        object.__setattr__(self, "form", form)

    def __setattr__(self, *a):
        raise AttributeError("Hyperplane is immutable")

    @property
    def field(self):
        return self.form.field

    def coefficients(self):
        n = self.form.nvars
        out = []
        for j in range(n):
            e = [0] * n
            e[j] = 1
            out.append(self.form.coefficient(e))
        return tuple(out)

    def contains(self, point: ProjPoint) -> bool:
        return self.form.evaluate(list(point.coords)).is_zero()

    def __eq__(self, other):
        return isinstance(other, Hyperplane) and self.form == other.form

    def __hash__(self):
        return hash(self.form)

    def __repr__(self):
        from .polyparse import render
        names = tuple(f"X{j}" for j in range(self.form.nvars))
        return f"Hyperplane({render(self.form, names)} = 0)"

    def spanning_points(self):
        """n independent points spanning the hyperplane."""
        coeffs = self.coefficients()
        field = self.field
        rows = [list(coeffs)]
        basis = matrices.kernel_basis(rows, field, len(coeffs))
        return [ProjPoint(v) for v in basis]


class ProjTransform:
    """An invertible projective transformation, acting on points as M.Q."""

    __slots__ = ("matrix", "_inv")

    def __init__(self, matrix):
        matrix = tuple(tuple(row) for row in matrix)
        det = matrices.mat_det(matrix)
        if det.is_zero():
            raise PreconditionError("projective transform must be invertible")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "_inv", None)

    def __setattr__(self, *a):
        raise AttributeError("ProjTransform is immutable")

    @property
    def field(self):
        return self.matrix[0][0].field

    def inverse_matrix(self):
        if self._inv is None:
            object.__setattr__(self, "_inv", matrices.mat_inv(self.matrix))
        return self._inv

    def inverse(self):
        return ProjTransform(self.inverse_matrix())

    def apply(self, point: ProjPoint) -> ProjPoint:
        return ProjPoint(matrices.mat_vec(self.matrix, point.coords))

    def compose(self, other: "ProjTransform") -> "ProjTransform":
        return ProjTransform(matrices.mat_mul(self.matrix, other.matrix))

    def power(self, e: int) -> "ProjTransform":
        return ProjTransform(matrices.mat_pow(self.matrix, e))

    def is_projective_identity(self) -> bool:
        m = self.matrix
        n = len(m)
        diag = None
        for i in range(n):
            for j in range(n):
                if i != j and not m[i][j].is_zero():
                    return False
            if diag is None:
                diag = m[i][i]
            elif m[i][i] != diag:
                return False
        return True

    def push_form(self, f: MultiPoly) -> MultiPoly:
        """Defining form of the image hypersurface: F o M^{-1}."""
        return linear_substitute(f, self.inverse_matrix())

    def pull_form(self, f: MultiPoly) -> MultiPoly:
        return linear_substitute(f, self.matrix)

    def to_json(self):
        return [[repr(c) for c in row] for row in self.matrix]

    def __repr__(self):
        return f"ProjTransform({self.to_json()})"


def proj_point_from_ints(field, ints):
    return ProjPoint([field.scalar(c) for c in ints])


def standard_basis_point(field, nvars, j):
    coords = [field.scalar(0)] * nvars
    coords[j] = field.scalar(1)
    return ProjPoint(coords, normalized=True)


class Hypersurface:
    """A hypersurface {F = 0} in P^(n+1), F homogeneous of degree d >= 1.

    ``flags`` carries verdicts for squarefreeness and irreducibility:
    "yes" / "no" / "unknown", optionally with a rationale in ``flag_notes``.
    """

    __slots__ = ("F", "n", "d", "flags", "flag_notes", "names")

    def __init__(self, F: MultiPoly, flags=None, names=None, flag_notes=None):
        if F.is_zero():
            raise PreconditionError("hypersurface needs a nonzero form")
        if not F.is_homogeneous():
            raise PreconditionError("defining form must be homogeneous")
        d = F.total_degree()
        if d < 1:
            raise PreconditionError("degree must be at least 1")
        object.__setattr__(self, "F", HomogPoly(F, d))
        object.__setattr__(self, "n", F.nvars - 2)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "flags",
                           dict(flags) if flags else
                           {"squarefree": "unknown", "irreducible": "unknown"})
        object.__setattr__(self, "flag_notes", dict(flag_notes or {}))
        object.__setattr__(self, "names",
                           tuple(names) if names else
                           tuple(f"X{j}" for j in range(F.nvars)))

    def __setattr__(self, *a):
        raise AttributeError("Hypersurface is immutable")

    @property
    def field(self):
        return self.F.poly.field

    @property
    def nvars(self):
        return self.F.poly.nvars

    def poly(self):
        return self.F.poly

    def contains(self, point: ProjPoint) -> bool:
        return self.F.poly.evaluate(list(point.coords)).is_zero()

    def with_flags(self, **kv):
        flags = dict(self.flags)
        notes = dict(self.flag_notes)
        for k, v in kv.items():
            if isinstance(v, tuple):
                flags[k], notes[k] = v
            else:
                flags[k] = v
        return Hypersurface(self.F.poly, flags=flags, names=self.names,
                            flag_notes=notes)

    def render(self):
        from .polyparse import render
        return render(self.F.poly, self.names)

    def __repr__(self):
        return f"Hypersurface({self.render()} = 0)"


# ---------------------------------------------------------------------------
# charts, multiplicity, tangency


def chart_transform(P: ProjPoint) -> ProjTransform:
    """M = [P | complementary standard basis columns]; M maps e0 to P."""
    n = len(P.coords)
    field = P.field
    j0 = P.lead_index()
    cols = [list(P.coords)]
    for j in range(n):
        if j != j0:
            col = [field.scalar(0)] * n
            col[j] = field.scalar(1)
            cols.append(col)
    matrix = tuple(tuple(cols[c][r] for c in range(n)) for r in range(n))
    return ProjTransform(matrix)


def dehomogenize_at(X: Hypersurface, P: ProjPoint):
    """Affine model of X centred at P.

    Returns (f, M) where M is the chart transform with M.e0 = P and
    f(x_1..x_{n+1}) = F(M.(1, x_1, ..., x_{n+1})).  f(0) = 0 iff P lies on X.
    """
    M = chart_transform(P)
    nv = X.nvars
    field = X.field
    # images of the original variables under the chart: row j of M applied to
    # the affine vector (1, x_1, .., x_{n+1})
    images = []
    for j in range(nv):
        terms = {}
        row = M.matrix[j]
        if not row[0].is_zero():
            terms[(0,) * (nv - 1)] = row[0]
        for i in range(1, nv):
            if not row[i].is_zero():
                e = [0] * (nv - 1)
                e[i - 1] = 1
                terms[tuple(e)] = row[i]
        images.append(MultiPoly(field, nv - 1, terms))
    f = X.F.poly.substitute(images)
    return f, M


def multiplicity(X: Hypersurface, P: ProjPoint) -> int:
    """Least i with a nonzero degree-i part of the affine model; 0 off X."""
    f, _ = dehomogenize_at(X, P)
    best = None
    for e in f.terms:
        s = sum(e)
        if best is None or s < best:
            best = s
            if s == 0:
                break
    return best if best is not None else X.d


def tangent_space(X: Hypersurface, P: ProjPoint) -> Hyperplane:
    """Projective tangent hyperplane at a smooth point of X."""
    if multiplicity(X, P) != 1:
        raise PreconditionError("tangent space needs a smooth point of X")
    field = X.field
    coords = list(P.coords)
    terms = {}
    for j, dF in enumerate(X.F.poly.partials()):
        c = dF.evaluate(coords)
        if not c.is_zero():
            e = [0] * X.nvars
            e[j] = 1
            terms[tuple(e)] = c
    if not terms:
        raise GaloisLocusError("vanishing gradient at a multiplicity-1 point")
    return Hyperplane(MultiPoly(field, X.nvars, terms))


def hessian_at(X: Hypersurface, P: ProjPoint) -> Scalar:
    """Determinant of the matrix of second partials of F, evaluated at P."""
    nv = X.nvars
    coords = list(P.coords)
    rows = []
    for i in range(nv):
        di = X.F.poly.partial(i)
        rows.append(tuple(di.partial(j).evaluate(coords) for j in range(nv)))
    return matrices.mat_det(tuple(rows))


def polar_form(X: Hypersurface, P: ProjPoint) -> MultiPoly:
    """First polar of X at P: sum_j P_j dF/dX_j."""
    acc = MultiPoly.zero(X.field, X.nvars)
    for j, dF in enumerate(X.F.poly.partials()):
        c = P.coords[j]
        if not c.is_zero():
            acc = acc + dF * c
    return acc


def is_strange_center(X: Hypersurface, P: ProjPoint) -> bool:
    """True iff the tangent space at a general point of X contains P.

    For irreducible X this happens iff the first polar vanishes identically
    (its degree d-1 is below deg X, so vanishing on X forces vanishing).
    Requires the irreducibility flag to be "yes".
    """
    if X.flags.get("irreducible") != "yes":
        raise PreconditionError("strange-center test needs the irreducibility "
                                "flag to be 'yes'")
    return polar_form(X, P).is_zero()


# ---------------------------------------------------------------------------
# hyperplane sections


@dataclass(frozen=True)
class SectionResult:
    """Hyperplane section with the substitution data needed to move points
    between the section coordinates and the ambient space."""

    hypersurface: Hypersurface
    drop_index: int
    embed_matrix: tuple  # (n+2) x (n+1), columns = ambient images of section basis

    def push_point(self, P: ProjPoint) -> ProjPoint:
        """Ambient point on the hyperplane -> section coordinates."""
        coords = [P.coords[j] for j in range(len(P.coords)) if j != self.drop_index]
        return ProjPoint(coords)

    def lift_point(self, Q: ProjPoint) -> ProjPoint:
        return ProjPoint(matrices.mat_vec(self.embed_matrix, Q.coords))


def hyperplane_section(X: Hypersurface, H: Hyperplane) -> SectionResult:
    """X ∩ H as a hypersurface in the coordinates of H ≅ P^n.

    Solves the hyperplane form for its leading variable and substitutes.
    Errors when F vanishes identically on H (F divisible by the form).
    """
    nv = X.nvars
    field = X.field
    coeffs = H.coefficients()
    j = next(i for i, c in enumerate(coeffs) if not c.is_zero())
    inv = coeffs[j].inverse()
    # X_j = -(1/c_j) * sum_{i != j} c_i X_i ; section variables are X_i, i != j
    keep = [i for i in range(nv) if i != j]
    images = []
    for i in range(nv):
        if i != j:
            pos = keep.index(i)
            images.append(MultiPoly.variable(field, nv - 1, pos))
        else:
            terms = {}
            for pos, i2 in enumerate(keep):
                c = coeffs[i2]
                if not c.is_zero():
                    e = [0] * (nv - 1)
                    e[pos] = 1
                    terms[tuple(e)] = -c * inv
            images.append(MultiPoly(field, nv - 1, terms))
    G = X.F.poly.substitute(images)
    if G.is_zero():
        raise PreconditionError("hyperplane is contained in the hypersurface")
    embed_rows = []
    for i in range(nv):
        if i != j:
            row = [field.scalar(0)] * (nv - 1)
            row[keep.index(i)] = field.scalar(1)
        else:
            row = [-coeffs[i2] * inv for i2 in keep]
        embed_rows.append(tuple(row))
    flags = {"squarefree": "unknown", "irreducible": "unknown"}
    names = tuple(X.names[i] for i in keep)
    return SectionResult(Hypersurface(G, flags=flags, names=names), j,
                         tuple(embed_rows))


@dataclass
class StarCheckReport:
    degree_ok: str
    irreducible: str
    not_strange: str
    section: SectionResult
    assumed: list
    notes: list

    def ok(self):
        return (self.degree_ok == "yes" and self.irreducible == "yes"
                and self.not_strange == "yes")

    def to_json(self):
        return {"verdicts": {"degree": self.degree_ok,
                             "irreducible": self.irreducible,
                             "not_strange": self.not_strange},
                "assumed": list(self.assumed),
                "notes": list(self.notes)}


def star_check(X: Hypersurface, H: Hyperplane, P: ProjPoint,
               trials: int = 24, seed: int = 0) -> StarCheckReport:
    """Hyperplane-section health check at P ∈ H.

    Verdicts: (a) the section has the full degree d; (b) an irreducibility
    probe on the section; (c) P is not a strange center of the section.  The
    singular-dimension drop condition is recorded as assumed in
    characteristic zero, where no probe is available.
    """
    if not H.contains(P):
        raise PreconditionError("the point is not on the hyperplane")
    section = hyperplane_section(X, H)
    X_H = section.hypersurface
    degree_ok = "yes" if X_H.d == X.d else "no"
    probe = irreducibility_probe(X_H, trials=trials, seed=seed)
    irreducible = probe.verdict
    if irreducible == "yes":
        X_H = X_H.with_flags(irreducible=("yes", probe.evidence))
    P_H = section.push_point(P)
    polar = polar_form(X_H, P_H)
    if polar.is_zero():
        not_strange = "no"
    elif irreducible == "yes":
        not_strange = "yes"
    else:
        not_strange = "unknown"
    assumed = []
    if X.field.characteristic == 0:
        assumed.append("singular-dimension drop for the section is assumed "
                       "(no probe in characteristic zero)")
    notes = [f"squarefree: {probe.squarefree}"]
    return StarCheckReport(degree_ok, irreducible, not_strange,
                           SectionResult(X_H, section.drop_index,
                                         section.embed_matrix),
                           assumed, notes)


# ---------------------------------------------------------------------------
# probabilistic probes


@dataclass
class ProbeReport:
    verdict: str          # "yes" or "unknown"
    squarefree: str       # "yes", "suspected-no", "unknown"
    evidence: str
    patterns: list

    def to_json(self):
        return {"verdict": self.verdict, "squarefree": self.squarefree,
                "evidence": self.evidence,
                "patterns": [sorted(p) for p in self.patterns]}


def _random_line_restriction(X, rng):
    """F restricted to a random line A + tB, as a UniPoly of degree <= d."""
    field = X.field
    nv = X.nvars
    if field.characteristic > 0:
        pick = lambda: Scalar(field, rng.randrange(field.size))
    else:
        pick = lambda: field.scalar(rng.randrange(-9, 10))
    for _ in range(50):
        A = [pick() for _ in range(nv)]
        B = [pick() for _ in range(nv)]
        # coefficient of t^i: evaluate via substitution X_j -> A_j + t B_j
        images = []
        for j in range(nv):
            terms = {}
            if not A[j].is_zero():
                terms[(0,)] = A[j]
            if not B[j].is_zero():
                terms[(1,)] = B[j]
            if not terms:
                terms = {}
            images.append(MultiPoly(field, 1, terms))
        if all(im.is_zero() for im in images):
            continue
        poly_t = X.F.poly.substitute(images)
        coeffs = [field.scalar(0)] * (X.d + 1)
        for e, c in poly_t.terms.items():
            coeffs[e[0]] = c
        f = UniPoly(field, coeffs)
        if f.degree() == X.d:
            return f
    return None


def _char0_line_certify(f: UniPoly, rng, num_primes=6):
    """Certify irreducibility over Q(zeta_N) by modular reduction.

    The restriction is monicized (which preserves irreducibility), mapped to
    GF(p) through a prime with p = 1 mod N (zeta goes to an order-N element),
    and tested by distinct-degree factorization.  A full-degree irreducible
    reduction of a monic integral polynomial certifies irreducibility over
    the field, because monic factors would have integral coefficients and
    reduce with full degrees.
    """
    field = f.field
    n = field.cyclotomic_index
    d = f.degree()
    # clear denominators
    den = 1
    for c in f.coeffs:
        for q in c.rep:
            den = den * q.denominator // math.gcd(den, q.denominator)
    scaled = [tuple(q * den for q in c.rep) for c in f.coeffs]
    # monicize: g(t) = L^(d-1) f(t/L) has integral entries once f is integral
    lead = scaled[-1]
    tried = 0
    p = 1
    while tried < num_primes:
        p += n
        while not _is_probable_prime(p):
            p += n
        Fp = field_make(p, 1)
        omega = _order_n_element(Fp, n)
        if omega is None:
            tried += 1
            continue
        reduce_c = lambda tup: sum((Fp.scalar(int(q) % p) * omega ** i
                                    for i, q in enumerate(tup)),
                                   Fp.scalar(0))
        lead_p = reduce_c(lead)
        if lead_p.is_zero():
            tried += 1
            continue
        cs = [reduce_c(t) for t in scaled]
        monic = [cs[i] * lead_p ** (d - 1 - i) if i < d else Fp.scalar(1)
                 for i in range(d + 1)]
        g = UniPoly(Fp, monic)
        if g.degree() == d and is_irreducible(g):
            return True, f"irreducible mod {p}"
        tried += 1
    return False, "no modular certificate found"


def _is_probable_prime(n):
    from .exactfield import is_prime
    return is_prime(n)


def _order_n_element(Fp, n):
    if (Fp.size - 1) % n != 0:
        return None
    for rep in range(2, Fp.size):
        s = Scalar(Fp, rep)
        if s.multiplicative_order() == n:
            return s
    return None if n > 1 else Fp.scalar(1)


def irreducibility_probe(X: Hypersurface, trials: int = 20,
                         seed: int = 0) -> ProbeReport:
    """Certify irreducibility of F over its coefficient field, or report
    unknown with the observed specialization patterns.

    A restriction of F to a line that keeps the full degree d and is
    irreducible certifies irreducibility of F: a nontrivial factorization
    would restrict to one with the same degrees.  Squarefreeness is certified
    the same way (a squarefree full-degree restriction).
    """
    import random
    rng = random.Random(seed)
    if X.d == 1:
        return ProbeReport("yes", "yes", "linear form", [])
    field = X.field
    patterns = []
    squarefree = "unknown"
    sq_witnesses = 0
    for _ in range(trials):
        f = _random_line_restriction(X, rng)
        if f is None:
            continue
        fp = f.derivative()
        if fp.is_zero() or uni_gcd(f, fp).degree() != 0:
            sq_witnesses += 1
            continue
        squarefree = "yes"
        if field.characteristic > 0:
            blocks = ddf(f.monic())
            pat = []
            for deg, prod in blocks:
                pat.extend([deg] * (prod.degree() // deg))
            patterns.append(tuple(sorted(pat)))
            if len(blocks) == 1 and blocks[0][0] == X.d:
                return ProbeReport("yes", "yes",
                                   "irreducible full-degree line restriction",
                                   patterns)
        else:
            ok, why = _char0_line_certify(f, rng)
            if ok:
                return ProbeReport("yes", "yes", why, patterns)
            # record rational linear factors as split evidence
            roots = roots_in_field(f)
            patterns.append(tuple(sorted([1] * len(roots) +
                                         [f.degree() - len(roots)]))
                            if roots else (f.degree(),))
    if squarefree == "unknown" and sq_witnesses:
        squarefree = "suspected-no"
    evidence = "no certifying restriction found"
    if patterns and all(len(p) > 1 for p in patterns):
        evidence = ("reducibility suspected: witnessed split specialization "
                    "pattern")
    return ProbeReport("unknown", squarefree, evidence, patterns)


# ---------------------------------------------------------------------------
# finite-field enumeration


def proj_space_size(q: int, nvars: int) -> int:
    return (q ** nvars - 1) // (q - 1)


def enumerate_proj_points(field, nvars, budget=None):
    """All points of P^(nvars-1) over a finite field, normalized, in a fixed
    deterministic order (by position of the leading 1, then lexicographic)."""
    q = field.size
    total = proj_space_size(q, nvars)
    cap = budget if budget is not None else enumeration_budget()
    if total > cap:
        raise BudgetExceededError(
            f"projective enumeration of {total} points exceeds budget {cap}")
    one = field.scalar(1)
    zero = field.scalar(0)
    scalars = [Scalar(field, r) for r in range(q)]
    for j0 in range(nvars):
        tail = nvars - j0 - 1
        idx = [0] * tail
        while True:
            coords = [zero] * j0 + [one] + [scalars[i] for i in idx]
            yield ProjPoint(coords, normalized=True)
            k = tail - 1
            while k >= 0:
                idx[k] += 1
                if idx[k] < q:
                    break
                idx[k] = 0
                k -= 1
            if k < 0:
                break


@dataclass
class SingProbeReport:
    counts: list
    estimate: int
    budget: int
    support_sample: list

    def to_json(self):
        return {"counts": list(self.counts), "estimate": self.estimate,
                "budget": self.budget,
                "support_sample": [repr(p) for p in self.support_sample]}


def singular_probe(X: Hypersurface, max_ext: int = 1,
                   budget=None) -> SingProbeReport:
    """Estimate dim Sing(X) over GF(p^k) by point counts in extensions.

    Counts common zeros of F and all partials in P^(n+1)(GF(p^{k m})) for
    m = 1..max_ext and reads the dimension off the growth of the counts
    (empty locus reported as -1).
    """
    from .exactfield import field_make as _fm

    field = X.field
    if field.characteristic == 0:
        raise PreconditionError("singular probe runs over finite fields")
    cap = budget if budget is not None else enumeration_budget()
    counts = []
    support = []
    base_q = field.size
    for m in range(1, max_ext + 1):
        ext = _fm(field.characteristic, field.degree * m)
        emb = field_embedding(field, ext)
        F = map_coefficients(X.F.poly, emb, ext)
        parts = [map_coefficients(p, emb, ext) for p in X.F.poly.partials()]
        count = 0
        for pt in enumerate_proj_points(ext, X.nvars, budget=cap):
            coords = list(pt.coords)
            if not F.evaluate(coords).is_zero():
                continue
            if all(p.evaluate(coords).is_zero() for p in parts):
                count += 1
                if m == 1 and len(support) < 16:
                    support.append(pt)
        counts.append(count)
    if all(c == 0 for c in counts):
        est = -1
    elif len(counts) >= 2 and counts[-2] > 0:
        est = round(math.log(counts[-1] / counts[-2]) / math.log(base_q))
    else:
        est = round(math.log(max(counts[-1], 1)) / math.log(base_q ** max_ext))
    return SingProbeReport(counts, est, cap, support)


# -- embeddings between finite fields

_EMBED_CACHE = {}


def field_embedding(base, ext):
    """The canonical-by-convention embedding GF(p^k) -> GF(p^(k m)): the base
    generator goes to the smallest root of the base modulus in ext."""
    if base is ext:
        return lambda s: s
    key = (id(base), id(ext))
    if key in _EMBED_CACHE:
        root = _EMBED_CACHE[key]
    else:
        if (base.characteristic != ext.characteristic
                or ext.degree % base.degree != 0):
            raise PreconditionError("no embedding between these fields")
        mod = UniPoly.from_ints(ext, [int(c) for c in base.modulus])
        roots = sorted(roots_in_field(mod), key=lambda s: s.rep)
        if not roots:
            raise GaloisLocusError("modulus has no root in the extension")
        root = roots[0]
        _EMBED_CACHE[key] = root

    def emb(s):
        digs = base._digits(s.rep)
        acc = ext.scalar(0)
        power = ext.scalar(1)
        for dcoef in digs:
            if dcoef:
                acc = acc + power * dcoef
            power = power * root
        return acc

    return emb


def map_coefficients(f: MultiPoly, emb, target_field) -> MultiPoly:
    return MultiPoly(target_field, f.nvars,
                     {e: emb(c) for e, c in f.terms.items()})
