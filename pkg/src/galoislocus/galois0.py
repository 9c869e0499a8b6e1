"""Galois-point criteria driven by the Taylor parts of the affine model.

For a point P of multiplicity m in {0, 1} on/off an irreducible hypersurface
of degree d, write the affine model at P as f = f_m + f_{m+1} + ... + f_d.
P is Galois (with the induced birational maps extending to projective
transformations, which is automatic in characteristic zero) iff f_m divides
f_{m+1} and, with h = f_{m+1} / ((d-m) f_m),

    f_{m+i} = C(d-m, i) * f_m * h^i      for i = 0 .. d-m-1.

On success the shear X0 -> X0 + h(X1..X_{n+1}) brings the defining form to
the shape g_m * X0^(d-m) + g_d, the Galois group is cyclic of order d-m
generated by scaling the distinguished coordinate by a primitive root of
unity, and the fixed hyperplane is the pullback of {X0 = 0}.

The same identities, with denominators cleared,

    (d-m)^i * f_m^(i-1) * f_{m+i} = C(d-m, i) * f_{m+1}^i,

drive the parametrized line scans (valid because f_m is scalar for m = 0 and
a linear form for m = 1, so the divisibility is forced by the i = 2 row).

All of this needs the binomials C(d-m, i) and d-m to be nonzero in the
field; otherwise ("wild case") the verdict is unknown and certification is
deferred to the positive-characteristic machinery.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from math import comb

from . import matrices
from .errors import (FieldTooSmallError, GaloisLocusError, InconsistencyError,
                     MultiplicityRangeError, PreconditionError)
from .exactfield import Scalar, UniPoly, primitive_root_of_unity, roots_in_field, uni_gcd
from .galoisp import GroupDescriptor, group_descriptor
from .multipoly import (MultiPoly, exact_divide, homog_parts,
                        linear_substitute)
from .projgeom import (Hyperplane, Hypersurface, ProjPoint, ProjTransform,
                       chart_transform, dehomogenize_at, multiplicity,
                       standard_basis_point)


@dataclass
class GaloisVerdict:
    """Outcome of a Galois test at one point."""

    verdict: str                      # inner_galois | outer_galois | not_galois | unknown
    m: int
    group: GroupDescriptor | None = None
    normal_transform: ProjTransform | None = None
    fixed_hyperplane: Hyperplane | None = None
    witness: str | None = None
    hypotheses: list = dc_field(default_factory=list)

    def is_galois(self):
        return self.verdict in ("inner_galois", "outer_galois")

    def to_json(self):
        out = {"verdict": self.verdict, "m": self.m}
        out["group"] = self.group.to_json() if self.group else None
        out["normal_transform"] = (self.normal_transform.to_json()
                                   if self.normal_transform else None)
        if self.fixed_hyperplane is not None:
            from .polyparse import render
            form = self.fixed_hyperplane.form
            names = tuple(f"X{j}" for j in range(form.nvars))
            out["fixed_hyperplane"] = render(form, names)
        else:
            out["fixed_hyperplane"] = None
        out["witness"] = self.witness
        out["hypotheses"] = list(self.hypotheses)
        return out


def _tame_data(field, d, m):
    """((d-m) and the binomials as scalars, or None when the case is wild)."""
    dm = d - m
    dmf = field.scalar(dm)
    if dmf.is_zero():
        return None
    binoms = {}
    for i in range(1, dm):
        b = field.scalar(comb(dm, i))
        if b.is_zero():
            return None
        binoms[i] = b
    return dmf, binoms


def _base_hypotheses(X: Hypersurface):
    hyps = []
    if X.flags.get("irreducible") != "yes":
        hyps.append("irreducibility of the hypersurface not verified")
    if X.flags.get("squarefree") == "no":
        hyps.append("hypersurface is not reduced")
    if X.field.characteristic > 0:
        hyps.append("tame positive characteristic: criterion applied beyond "
                    "its characteristic-zero home turf")
    return hyps


def galois_criterion(X: Hypersurface, P: ProjPoint) -> GaloisVerdict:
    """Decide Galois-ness of the projection from P via the Taylor-part
    identities.  P must have multiplicity 0 (outer) or 1 (smooth inner)."""
    from .polyparse import render

    field = X.field
    d = X.d
    f, M = dehomogenize_at(X, P)
    parts = homog_parts(f)
    parts = [p.poly for p in parts] + [MultiPoly.zero(field, X.nvars - 1)
                                       for _ in range(d + 1 - len(parts))]
    m = next((i for i, p in enumerate(parts) if not p.is_zero()), None)
    if m is None or m > 1:
        raise MultiplicityRangeError(
            f"point has multiplicity {m if m is not None else 'infinite'}; "
            "the criterion covers multiplicities 0 and 1 only")
    hyps = _base_hypotheses(X)
    if d - m < 2:
        return GaloisVerdict("unknown", m, witness="degenerate degree d - m < 2",
                             hypotheses=hyps)
    tame = _tame_data(field, d, m)
    if tame is None:
        return GaloisVerdict("unknown", m,
                             witness="criterion requires the tame case "
                                     "(binomial coefficients vanish)",
                             hypotheses=hyps)
    dmf, binoms = tame
    names = tuple(f"x{j}" for j in range(1, X.nvars))
    fm = parts[m]
    fm1 = parts[m + 1]
    if fm1.is_zero():
        h = MultiPoly.zero(field, X.nvars - 1)
    else:
        quo = exact_divide(fm1, fm)
        if quo is None:
            return GaloisVerdict(
                "not_galois", m,
                witness=f"{render(fm1, names)} is not divisible by "
                        f"{render(fm, names)}",
                hypotheses=hyps)
        h = quo * dmf.inverse()
        if h.total_degree() > 1:
            return GaloisVerdict(
                "not_galois", m,
                witness="quotient of consecutive parts is not linear: "
                        f"{render(h, names)}", hypotheses=hyps)
    hpow = MultiPoly.const(field, X.nvars - 1, 1)
    for i in range(1, d - m):
        hpow = hpow * h
        expected = fm * binoms[i] * hpow
        if expected != parts[m + i]:
            return GaloisVerdict(
                "not_galois", m,
                witness=(f"part {m + i}: expected "
                         f"{render(expected, names)}, actual "
                         f"{render(parts[m + i], names)}"),
                hypotheses=hyps)
    group = group_descriptor(d, m, field.characteristic)
    N = _normal_transform(X, M, h)
    F_P = _fixed_hyperplane_from(N)
    return GaloisVerdict("inner_galois" if m == 1 else "outer_galois", m,
                         group=group, normal_transform=N,
                         fixed_hyperplane=F_P, hypotheses=hyps)


def _normal_transform(X, M, h):
    """N = M . S^{-1} with S the shear X0 -> X0 + h; the normal form of the
    defining polynomial is F o N."""
    field = X.field
    nv = X.nvars
    one = field.scalar(1)
    zero = field.scalar(0)
    srow = [one]
    for j in range(1, nv):
        e = [0] * (nv - 1)
        e[j - 1] = 1
        srow.append(h.coefficient(e))
    s_inv = [tuple([one] + [-c for c in srow[1:]])]
    for j in range(1, nv):
        s_inv.append(tuple(one if i == j else zero for i in range(nv)))
    return ProjTransform(matrices.mat_mul(M.matrix, tuple(s_inv)))


def _fixed_hyperplane_from(N: ProjTransform) -> Hyperplane:
    field = N.field
    nv = len(N.matrix)
    row = N.inverse_matrix()[0]
    terms = {}
    for j, c in enumerate(row):
        if not c.is_zero():
            e = [0] * nv
            e[j] = 1
            terms[tuple(e)] = c
    return Hyperplane(MultiPoly(field, nv, terms))


def quartic_criterion(X: Hypersurface, P: ProjPoint) -> GaloisVerdict:
    """Degree-4 shortcut for smooth points: Galois iff f2^2 = 3 f1 f3."""
    from .polyparse import render

    if X.d != 4:
        raise PreconditionError("the quartic shortcut needs degree 4")
    field = X.field
    if field.characteristic in (2, 3):
        raise PreconditionError("the quartic shortcut needs p = 0 or p > 3")
    f, M = dehomogenize_at(X, P)
    parts = homog_parts(f)
    parts = [p.poly for p in parts] + [MultiPoly.zero(field, X.nvars - 1)
                                       for _ in range(5 - len(parts))]
    if not parts[0].is_zero() or parts[1].is_zero():
        raise MultiplicityRangeError("the quartic shortcut needs a smooth "
                                     "point on the hypersurface")
    hyps = _base_hypotheses(X)
    lhs = parts[2] * parts[2]
    rhs = parts[1] * parts[3] * field.scalar(3)
    if lhs == rhs:
        return galois_criterion(X, P)
    names = tuple(f"x{j}" for j in range(1, X.nvars))
    return GaloisVerdict("not_galois", 1,
                         witness=f"f2^2 = {render(lhs, names)} differs from "
                                 f"3 f1 f3 = {render(rhs, names)}",
                         hypotheses=hyps)


def to_normal_form(X: Hypersurface, P: ProjPoint):
    """(transform N, hypersurface with defining form F o N); the transformed
    form has the two-block shape, verified exactly."""
    v = galois_criterion(X, P)
    if not v.is_galois():
        raise PreconditionError(f"point is not Galois: {v.verdict}")
    N = v.normal_transform
    G = linear_substitute(X.F.poly, N.matrix)
    XG = Hypersurface(G, flags=dict(X.flags), names=X.names,
                      flag_notes=dict(X.flag_notes))
    e0 = standard_basis_point(X.field, X.nvars, 0)
    g, _ = dehomogenize_at(XG, e0)
    degs = {sum(e) for e in g.terms}
    if not degs <= {v.m, X.d}:
        raise InconsistencyError("normal form has parts outside {m, d}: "
                                 f"{sorted(degs)}")
    return N, XG


def galois_generator(X: Hypersurface, P: ProjPoint) -> ProjTransform:
    """Generator of the cyclic Galois group as a projective transformation:
    diag(zeta, 1, .., 1) in normal coordinates, conjugated back.  Verified to
    fix the defining form exactly and to have the right projective order."""
    N, _ = to_normal_form(X, P)
    field = X.field
    d = X.d
    m = multiplicity(X, P)
    zeta = primitive_root_of_unity(field, d - m)
    nv = X.nvars
    one = field.scalar(1)
    zero = field.scalar(0)
    D = tuple(tuple((zeta if i == 0 else one) if i == j else zero
                    for j in range(nv)) for i in range(nv))
    sigma = matrices.mat_mul(matrices.mat_mul(N.matrix, D), N.inverse_matrix())
    T = ProjTransform(sigma)
    FF = X.F.poly
    moved = linear_substitute(FF, sigma)
    if not _proportional(moved, FF):
        raise InconsistencyError("generator does not preserve the form")
    if not T.power(d - m).is_projective_identity():
        raise InconsistencyError("generator has wrong projective order")
    return T


def _proportional(f: MultiPoly, g: MultiPoly) -> bool:
    if f.is_zero() or g.is_zero():
        return f.is_zero() and g.is_zero()
    ef, cf = f.leading_term()
    eg, cg = g.leading_term()
    if ef != eg:
        return False
    return f * cg == g * cf


def fixed_hyperplane(X: Hypersurface, P: ProjPoint) -> Hyperplane:
    """The hyperplane fixed pointwise by the whole Galois group at P,
    verified on a spanning set of points."""
    v = galois_criterion(X, P)
    if not v.is_galois():
        raise PreconditionError(f"point is not Galois: {v.verdict}")
    H = v.fixed_hyperplane
    try:
        sigma = galois_generator(X, P)
    except FieldTooSmallError:
        return H  # verification needs the root of unity; the form is exact
    for Q in H.spanning_points():
        if sigma.apply(Q) != Q:
            raise InconsistencyError("generator moves a point of the fixed "
                                     "hyperplane")
    return H


# ---------------------------------------------------------------------------
# parametrized line scans


@dataclass
class LineScanReport:
    """Galois points on the line A + t B (plus the point at t = infinity).

    ``points`` holds (parameter, point, verdict) for every verified
    candidate; ``system`` carries the univariate polynomials whose common
    roots are the candidates, rendered for reruns over larger fields;
    ``identically_satisfied`` flags an infinite family (a cone signal)."""

    A: ProjPoint
    B: ProjPoint
    points: list
    system: dict
    identically_satisfied: dict
    notes: list

    def galois_points(self):
        return [(t, P, v) for (t, P, v) in self.points if v.is_galois()]

    def to_json(self):
        return {"A": repr(self.A), "B": repr(self.B),
                "points": [{"t": t, "point": repr(P), "verdict": v.verdict}
                           for (t, P, v) in self.points],
                "system": self.system,
                "identically_satisfied": dict(self.identically_satisfied),
                "notes": list(self.notes)}


def _line_taylor_parts(X: Hypersurface, A: ProjPoint, B: ProjPoint):
    """Taylor parts of the affine model at P(t) = A + t B, jointly polynomial
    in the chart variables x and the parameter t (t is the last variable).

    Returns (parts, j0, chart_poly) with parts[i] of x-degree i, the chart
    coordinate j0, and the t-polynomial A_j0 + t B_j0 whose zero is the one
    parameter value where the chart degenerates."""
    field = X.field
    nv = X.nvars
    j0 = next(j for j in range(nv)
              if not (A.coords[j].is_zero() and B.coords[j].is_zero()))
    # ring K[x_1..x_{n+1}, t]
    nring = nv  # nv - 1 chart vars + t
    images = []
    chart_positions = [j for j in range(nv) if j != j0]
    for j in range(nv):
        terms = {}
        if not A.coords[j].is_zero():
            terms[(0,) * nring] = A.coords[j]
        if not B.coords[j].is_zero():
            e = [0] * nring
            e[nring - 1] = 1
            terms[tuple(e)] = B.coords[j]
        if j != j0:
            e = [0] * nring
            e[chart_positions.index(j)] = 1
            terms[tuple(e)] = terms.get(tuple(e), field.scalar(0)) + field.scalar(1)
        images.append(MultiPoly(field, nring,
                                {k: c for k, c in terms.items()
                                 if not c.is_zero()}))
    E = X.F.poly.substitute(images)
    parts = [dict() for _ in range(X.d + 1)]
    for e, c in E.terms.items():
        xdeg = sum(e[:-1])
        parts[xdeg][e] = c
    parts = [MultiPoly(field, nring, p) for p in parts]
    chart_terms = {}
    if not A.coords[j0].is_zero():
        chart_terms[(0,) * nring] = A.coords[j0]
    if not B.coords[j0].is_zero():
        e = [0] * nring
        e[nring - 1] = 1
        chart_terms[tuple(e)] = B.coords[j0]
    return parts, j0, MultiPoly(field, nring, chart_terms)


def _t_coefficient_polys(p: MultiPoly):
    """Split a K[x, t]-polynomial into UniPolys in t, one per x-monomial."""
    field = p.field
    n = p.nvars
    buckets = {}
    for e, c in p.terms.items():
        xpart, tdeg = e[:-1], e[-1]
        buckets.setdefault(xpart, {})[tdeg] = c
    out = []
    for xpart, tc in sorted(buckets.items()):
        coeffs = [field.scalar(0)] * (max(tc) + 1)
        for deg, c in tc.items():
            coeffs[deg] = c
        out.append(UniPoly(field, coeffs))
    return out


def _gcd_of(polys, field):
    g = UniPoly.zero(field)
    for p in polys:
        g = uni_gcd(g, p) if not g.is_zero() else p.monic() if not p.is_zero() else g
        if not g.is_zero() and g.degree() == 0:
            return g
    return g


def find_galois_on_line(X: Hypersurface, A: ProjPoint, B: ProjPoint) -> LineScanReport:
    """Symbolic scan for Galois points on the line through A and B.

    Builds the cleared-denominator criterion identities with the point
    parametrized as P(t) = A + t B, collects their coefficients as univariate
    polynomials in t, and re-verifies every candidate root (plus t = infinity
    and the degenerate-chart parameter) through the full criterion.  In the
    wild case the verdict is inapplicable and the system is returned for
    manual analysis."""
    from .polyparse import render

    field = X.field
    d = X.d
    if A == B:
        raise PreconditionError("need two distinct points to span a line")
    notes = []
    system = {}
    ident = {"inner": False, "outer": False}
    parts, j0, chart_poly = _line_taylor_parts(X, A, B)
    f0_polys = _t_coefficient_polys(parts[0])
    f0 = f0_polys[0] if f0_polys else UniPoly.zero(field)
    line_in_X = f0.is_zero()
    tame1 = _tame_data(field, d, 1)
    tame0 = _tame_data(field, d, 0)
    if tame0 is None and tame1 is None:
        sys_txt = {"f0(t)": repr(f0)}
        return LineScanReport(A, B, [], sys_txt,
                              ident, ["wild case: criterion inapplicable; "
                                      "rerun with the char-p certifiers"])
    candidates = []

    def add_roots(g):
        for r in roots_in_field(g):
            if r not in candidates:
                candidates.append(r)

    # outer block: d^i f0^(i-1) f_i - C(d,i) f1^i for i = 2..d-1
    if tame0 is not None and not line_in_X:
        df, binoms = tame0
        coeff_polys = []
        f0p, f1p = parts[0], parts[1]
        for i in range(2, d):
            ident_poly = (parts[i] * (f0p ** (i - 1)) * (df ** i)
                          - (f1p ** i) * binoms[i])
            coeff_polys.extend(_t_coefficient_polys(ident_poly))
        g_out = _gcd_of([p for p in coeff_polys if not p.is_zero()], field)
        if all(p.is_zero() for p in coeff_polys):
            ident["outer"] = True
            notes.append("outer criterion identically satisfied along the "
                         "line: infinite family (cone expected)")
        elif not g_out.is_zero() and g_out.degree() > 0:
            system["outer"] = repr(g_out)
            add_roots(g_out)
        else:
            system["outer"] = repr(g_out)
    # inner block: (d-1)^i f1^(i-1) f_{1+i} - C(d-1,i) f2^i for i = 2..d-2
    if tame1 is not None:
        df, binoms = tame1
        coeff_polys = []
        f1p, f2p = parts[1], parts[2]
        for i in range(2, d - 1):
            ident_poly = (parts[1 + i] * (f1p ** (i - 1)) * (df ** i)
                          - (f2p ** i) * binoms[i])
            coeff_polys.extend(_t_coefficient_polys(ident_poly))
        nonzero = [p for p in coeff_polys if not p.is_zero()]
        if line_in_X:
            if not nonzero:
                ident["inner"] = True
                notes.append("inner criterion identically satisfied along a "
                             "line inside the hypersurface: infinite family "
                             "(cone expected)")
            else:
                g_in = _gcd_of(nonzero, field)
                system["inner"] = repr(g_in)
                if g_in.degree() > 0:
                    add_roots(g_in)
        else:
            g_in = _gcd_of(nonzero + [f0.monic()], field)
            system["inner"] = repr(g_in)
            if g_in.degree() > 0:
                add_roots(g_in)
            elif not nonzero:
                # criterion vacuous (e.g. d = 4): candidates are points on X
                add_roots(f0)
    system["f0(t)"] = repr(f0)
    # degenerate-chart parameter values must be re-checked pointwise
    chart_t = _t_coefficient_polys(chart_poly)
    if chart_t and not chart_t[0].is_zero() and chart_t[0].degree() > 0:
        add_roots(chart_t[0])

    points = []
    seen_pts = set()

    def verify(tag, point):
        if point in seen_pts:
            return
        seen_pts.add(point)
        try:
            v = galois_criterion(X, point)
        except MultiplicityRangeError as exc:
            notes.append(f"t = {tag}: skipped ({exc})")
            return
        points.append((tag, point, v))

    for t in candidates:
        coords = [a + t * b for a, b in zip(A.coords, B.coords)]
        if all(c.is_zero() for c in coords):
            continue
        verify(repr(t), ProjPoint(coords))
    verify("inf", B)
    verify("0", A)
    return LineScanReport(A, B, points, system, ident, notes)


# ---------------------------------------------------------------------------
# independence and counting


@dataclass
class IndependenceResult:
    independent: bool
    adapted: ProjTransform | None
    line_details: list
    notes: list

    def to_json(self):
        return {"independent": self.independent,
                "adapted": self.adapted.to_json() if self.adapted else None,
                "lines": list(self.line_details),
                "notes": list(self.notes)}


def independence_check(X: Hypersurface, points) -> IndependenceResult:
    """A set of Galois points is independent when every connecting line
    carries exactly those two Galois points.

    When it is, and the set fits in the coordinate simplex, the returned
    transform moves the points to the coordinate points; the generators are
    re-verified to act diagonally in those coordinates (scaling every other
    coordinate by the same root of unity)."""
    pts = list(points)
    n2 = X.nvars
    if len(pts) > n2:
        raise InconsistencyError(
            f"{len(pts)} independent Galois points would exceed the ambient "
            f"bound {n2}")
    details = []
    notes = []
    independent = True
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            rep = find_galois_on_line(X, pts[i], pts[j])
            found = rep.galois_points()
            extra = [P for (_, P, _) in found if P not in (pts[i], pts[j])]
            ok = (not extra and not rep.identically_satisfied["inner"]
                  and not rep.identically_satisfied["outer"])
            details.append({"pair": (repr(pts[i]), repr(pts[j])),
                            "galois_on_line": len(found) + 0,
                            "extra": [repr(p) for p in extra],
                            "ok": ok})
            if not ok:
                independent = False
    if not independent or not pts:
        return IndependenceResult(independent, None, details, notes)
    field = X.field
    cols = [list(p.coords) for p in pts]
    for j in range(n2):
        e = [field.scalar(0)] * n2
        e[j] = field.scalar(1)
        cand = cols + [e]
        if matrices.rank(cand) > len(cols):
            cols = cand
        if len(cols) == n2:
            break
    C = ProjTransform(tuple(tuple(cols[c][r] for c in range(n2))
                            for r in range(n2)))
    Cinv = C.inverse()
    for i, p in enumerate(pts):
        moved = Cinv.apply(p)
        if moved != standard_basis_point(field, n2, i):
            raise InconsistencyError("adapted coordinates failed to move a "
                                     "point to its coordinate point")
    # diagonality of the generators in the adapted coordinates
    for i, p in enumerate(pts):
        try:
            sigma = galois_generator(X, p)
        except FieldTooSmallError as exc:
            notes.append(f"generator at point {i} not realizable here: {exc}")
            continue
        mat = matrices.mat_mul(Cinv.matrix,
                               matrices.mat_mul(sigma.matrix, C.matrix))
        pivot = mat[i][i]
        if pivot.is_zero():
            raise InconsistencyError("generator not diagonalizable as expected")
        inv = pivot.inverse()
        zeta = None
        ok = True
        for r in range(n2):
            for c in range(n2):
                v = mat[r][c] * inv
                if r != c:
                    if not v.is_zero():
                        ok = False
                elif r != i:
                    if zeta is None:
                        zeta = v
                    elif v != zeta:
                        ok = False
        if not ok:
            raise InconsistencyError("generator is not diagonal in adapted "
                                     "coordinates")
        notes.append(f"generator at point {i}: diagonal with ratio {zeta!r}")
    return IndependenceResult(True, C, details, notes)


@dataclass
class BoundsReport:
    r: int
    mu: int
    t: int
    m: int
    case: str
    bound: int | None
    count: int
    within_bound: bool | None
    details: dict

    def to_json(self):
        return {"r": self.r, "mu": self.mu, "t": self.t, "m": self.m,
                "case": self.case, "bound": self.bound, "count": self.count,
                "within_bound": self.within_bound, "details": dict(self.details)}


def _line_key(P: ProjPoint, Q: ProjPoint):
    red, _ = matrices.rref([list(P.coords), list(Q.coords)])
    return tuple(tuple(c.rep for c in row) for row in red)


def counts_and_bounds(X: Hypersurface, galois_set, s: int,
                      outer: bool = False) -> BoundsReport:
    """Independence count r, four-point-line count mu, tangent-intersection
    codimension t, and the applicable cardinality bound for the claimed case.

    ``galois_set`` is the caller's candidate-complete list of verified Galois
    points; subsets are searched exhaustively (desk scale)."""
    pts = list(galois_set)
    n = X.n
    d = X.d
    m = (n + s + 1) // 2
    # pairwise independence via line scans
    k = len(pts)
    indep = [[False] * k for _ in range(k)]
    line_of = {}
    for i in range(k):
        for j in range(i + 1, k):
            rep = find_galois_on_line(X, pts[i], pts[j])
            found = [P for (_, P, _) in rep.galois_points()]
            onl = set(found) | {pts[i], pts[j]}
            key = _line_key(pts[i], pts[j])
            line_of[key] = line_of.get(key, set()) | onl
            ok = (len(onl) == 2
                  and not rep.identically_satisfied["inner"]
                  and not rep.identically_satisfied["outer"])
            indep[i][j] = indep[j][i] = ok
    best = 0
    best_subset = []
    for mask in range(1, 1 << k):
        idxs = [i for i in range(k) if mask >> i & 1]
        if len(idxs) <= best:
            continue
        if all(indep[i][j] for a, i in enumerate(idxs)
               for j in idxs[a + 1:]):
            best = len(idxs)
            best_subset = idxs
    r = best - 1
    mu = sum(1 for mem in line_of.values() if len(mem) >= 4) - 1
    # tangent intersection over the best independent subset (inner points)
    rows = []
    for i in best_subset:
        try:
            H = tangent_space(X, pts[i])
            rows.append(list(H.coefficients()))
        except (PreconditionError, GaloisLocusError):
            pass
    if rows:
        rk = matrices.rank(rows)
        t = rk - 1
    else:
        t = -1
    if outer:
        case = "outer:smooth" if s <= -1 else "outer:singular"
        bound = n + 2 if s <= -1 else n - s
    elif d == 4:
        if s <= -1:
            case, bound = "d4:s=-1", 4 * (m + 1)
        elif (n + s) % 2 == 1:
            case, bound = "d4:n+s odd", 4 * (m - s - 1) + (s + 2)
        elif s == 0:
            case, bound = "d4:s=0,n even", 4 * m + 1
        elif s == 1:
            case, bound = "d4:s=1", 4 * (m - 1)
        else:
            case, bound = "d4:s>=2", 4 * (m - s - 1) + (s + 2)
    elif d >= 5:
        case, bound = "d>=5", m + 1
    else:
        case, bound = "out-of-range", None
    within = None if bound is None else (len(pts) <= bound)
    details = {"independent_subset": [repr(pts[i]) for i in best_subset],
               "lines_with_four": sum(1 for mem in line_of.values()
                                      if len(mem) >= 4),
               "mu_cap": m - s - 1}
    return BoundsReport(r, mu, t, m, case, bound, len(pts), within, details)
