"""Vertex spaces, cone detection and decomposition, joins, and the
transfer of Galois verdicts between a cone and its base.

A direction v is a vertex direction of {F = 0} iff F(X + t v) = F(X)
identically, i.e. all Hasse coefficients of positive order vanish.  The
vertex directions form a linear subspace.  In characteristic zero the first
Hasse coefficient (the polar, linear in v) already decides; in
characteristic p it only gives an over-approximation W1, which is refined:
coordinates are changed so W1 is spanned by the last variables, where all
partials vanish, hence every last-block exponent is divisible by p; writing
F = H(first block, (last block)^p) reduces the question to the vertex space
of H, and Frobenius-inverting the answer (the field is perfect) maps it
back.  Every returned direction is post-verified by a full Hasse expansion,
so the output is sound independently of the search.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import matrices
from .errors import GaloisLocusError, PreconditionError
from .exactfield import Scalar, pth_root
from .multipoly import MultiPoly, hasse_expansion, linear_substitute
from .projgeom import (Hypersurface, ProjPoint, ProjTransform,
                       enumerate_proj_points, proj_space_size)


def _polar_kernel(F: MultiPoly):
    """Kernel of v -> sum_j v_j dF/dX_j as a list of basis vectors."""
    field = F.field
    nv = F.nvars
    parts = F.partials()
    monos = set()
    for p in parts:
        monos.update(p.terms)
    monos = sorted(monos)
    rows = [[parts[j].coefficient(e) for j in range(nv)] for e in monos]
    if not rows:
        rows = [[field.scalar(0)] * nv]
    return matrices.kernel_basis(rows, field, nv)


def _is_invariant_direction(F: MultiPoly, v) -> bool:
    exp = hasse_expansion(F, list(v))
    return all(h.is_zero() for h in exp[1:])


def _coordinate_block_part(basis, block, field, nv):
    """span(basis) ∩ span(e_j : j in block)."""
    block_basis = []
    for j in block:
        e = [field.scalar(0)] * nv
        e[j] = field.scalar(1)
        block_basis.append(tuple(e))
    return matrices.subspace_intersection(basis, block_basis, field)


def _vertex_directions(F: MultiPoly):
    field = F.field
    nv = F.nvars
    w1 = _polar_kernel(F)
    if not w1:
        return []
    if field.characteristic == 0:
        return [v for v in w1 if _is_invariant_direction(F, v)]
    p = field.characteristic
    # change coordinates so that span(w1) becomes the last b variables
    red, pivots = matrices.rref(w1)
    b = len(red)
    free = [j for j in range(nv) if j not in pivots]
    cols = []
    for j in free:
        col = [field.scalar(0)] * nv
        col[j] = field.scalar(1)
        cols.append(col)
    for v in red:
        cols.append(list(v))
    C = tuple(tuple(cols[c][r] for c in range(nv)) for r in range(nv))
    if matrices.mat_det(C).is_zero():
        # fall back: w1 already axis-aligned in a way that clashes with free
        # columns cannot happen after rref, so this is a genuine bug
        raise GaloisLocusError("internal error: singular block transform")
    G = linear_substitute(F, C)
    a = nv - b
    last = list(range(a, nv))
    for j in last:
        if not G.partial(j).is_zero():
            raise GaloisLocusError("internal error: partial survived the "
                                   "block change")
    if all(all(e[j] == 0 for j in last) for e in G.terms):
        block_dirs = [[field.scalar(1) if i == j else field.scalar(0)
                       for i in range(nv)] for j in last]
    else:
        # descent: all last-block exponents are divisible by p
        terms = {}
        for e, c in G.terms.items():
            head = e[:a]
            tail = e[a:]
            if any(x % p for x in tail):
                raise GaloisLocusError("internal error: exponent not divisible "
                                       "by p despite vanishing partial")
            terms[head + tuple(x // p for x in tail)] = c
        H = MultiPoly(field, nv, terms)
        sub = _vertex_directions(H)
        sub_last = _coordinate_block_part(sub, last, field, nv)
        block_dirs = []
        for w in sub_last:
            block_dirs.append([pth_root(c) for c in w])
    out = []
    for v in block_dirs:
        orig = matrices.mat_vec(C, tuple(v))
        if _is_invariant_direction(F, orig):
            out.append(orig)
    red_out, _ = matrices.rref(out) if out else ([], [])
    return list(red_out)


def vertex_space(X: Hypersurface):
    """Basis of the maximal vertex space of X, as projective points.

    Empty list when X is not a cone.  Every returned direction v is verified
    to satisfy F(X + t v) = F(X) exactly.
    """
    dirs = _vertex_directions(X.F.poly)
    for v in dirs:
        if not _is_invariant_direction(X.F.poly, v):
            raise GaloisLocusError("internal error: unverified vertex direction")
    return [ProjPoint(v) for v in dirs]


@dataclass(frozen=True)
class ConeDecomposition:
    """X = Y # M2 with M2 the maximal vertex.

    In the coordinates of ``transform`` (columns: first the complement, then
    the vertex basis) the defining form involves only X0..Xa, and Y is the
    hypersurface those variables cut out in P^a.
    """

    M2_basis: tuple
    transform: ProjTransform
    Y: Hypersurface
    a: int

    def project_to_base(self, P: ProjPoint) -> ProjPoint:
        """Image of P under the projection along M2 onto M1, in Y-coordinates."""
        y = matrices.mat_vec(self.transform.inverse_matrix(), P.coords)
        head = y[: self.a + 1]
        if all(c.is_zero() for c in head):
            raise PreconditionError("point lies in the vertex space")
        return ProjPoint(head)

    def lift_from_base(self, Q: ProjPoint, tail_scalars=None) -> ProjPoint:
        field = self.Y.field
        nv = self.a + 1 + len(self.M2_basis)
        tail = tail_scalars or [field.scalar(0)] * len(self.M2_basis)
        vec = list(Q.coords) + list(tail)
        return ProjPoint(matrices.mat_vec(self.transform.matrix, vec))

    def to_json(self):
        return {"vertex_dim": len(self.M2_basis) - 1,
                "M2_basis": [repr(p) for p in self.M2_basis],
                "Y_poly": self.Y.render(),
                "transform": self.transform.to_json()}


def cone_decompose(X: Hypersurface):
    """Split X into base-over-vertex form, or None when X is not a cone."""
    if X.flags.get("squarefree") == "no":
        raise PreconditionError("cone decomposition needs a reduced hypersurface")
    basis = vertex_space(X)
    if not basis:
        return None
    field = X.field
    nv = X.nvars
    vecs = [list(p.coords) for p in basis]
    red, pivots = matrices.rref(vecs)
    free = [j for j in range(nv) if j not in pivots]
    cols = []
    for j in free:
        col = [field.scalar(0)] * nv
        col[j] = field.scalar(1)
        cols.append(col)
    for v in red:
        cols.append(list(v))
    T = ProjTransform(tuple(tuple(cols[c][r] for c in range(nv))
                            for r in range(nv)))
    G = linear_substitute(X.F.poly, T.matrix)
    a = len(free) - 1
    Gy = G.drop_unused_tail(a + 1)
    names = tuple(X.names[j] for j in free)
    Y = Hypersurface(Gy, flags=dict(X.flags), names=names,
                     flag_notes=dict(X.flag_notes))
    # exact re-expansion check: lifting Y back through T must reproduce F
    lifted = Gy.extend_ring(nv)
    back = linear_substitute(lifted, T.inverse_matrix())
    if not _proportional(back, X.F.poly):
        raise GaloisLocusError("internal error: decomposition does not "
                               "reproduce the form")
    return ConeDecomposition(tuple(ProjPoint(v) for v in red), T, Y, a)


def _proportional(f: MultiPoly, g: MultiPoly) -> bool:
    if f.is_zero() or g.is_zero():
        return f.is_zero() and g.is_zero()
    ef, cf = f.leading_term()
    eg, cg = g.leading_term()
    if ef != eg:
        return False
    return f * cg == g * cf


@dataclass(frozen=True)
class JoinSet:
    """(S # M2) \\ M2 for a finite set S in the complement of M2."""

    base_points: tuple
    M2_basis: tuple

    def contains(self, Q: ProjPoint) -> bool:
        m2 = [list(p.coords) for p in self.M2_basis]
        if matrices.rank(m2 + [list(Q.coords)]) == matrices.rank(m2):
            return False  # Q in M2 is excluded
        for P in self.base_points:
            rows = m2 + [list(P.coords), list(Q.coords)]
            if matrices.rank(rows) == matrices.rank(m2) + 1:
                return True
        return False

    def enumerate(self, budget=None):
        """All points over a finite field: P + (affine combination of M2)."""
        if not self.base_points:
            return
        field = self.base_points[0].field
        if field.characteristic == 0:
            raise PreconditionError("enumeration needs a finite field")
        q = field.size
        w = len(self.M2_basis)
        total = len(self.base_points) * q ** w
        from .projgeom import enumeration_budget
        cap = budget if budget is not None else enumeration_budget()
        if total > cap:
            raise GaloisLocusError(f"join enumeration of {total} points "
                                   f"exceeds budget {cap}")
        seen = set()
        for P in self.base_points:
            idx = [0] * w
            while True:
                coords = list(P.coords)
                for b, i in zip(self.M2_basis, idx):
                    coords = [c + Scalar(field, i) * bc
                              for c, bc in zip(coords, b.coords)]
                pt = ProjPoint(coords)
                if pt not in seen:
                    seen.add(pt)
                    yield pt
                k = w - 1
                while k >= 0:
                    idx[k] += 1
                    if idx[k] < q:
                        break
                    idx[k] = 0
                    k -= 1
                if k < 0:
                    break


def join_point_sets(S, M2_basis) -> JoinSet:
    """Membership predicate and enumerator for (S # M2) \\ M2."""
    m2 = [list(p.coords) for p in M2_basis]
    for P in S:
        if matrices.rank(m2 + [list(P.coords)]) == matrices.rank(m2):
            raise PreconditionError("base point lies inside M2")
    return JoinSet(tuple(S), tuple(M2_basis))


@dataclass
class TransferResult:
    base_point: ProjPoint
    base_verdict: object
    cone_verdict: object
    agree: bool

    def to_json(self):
        return {"base_point": repr(self.base_point),
                "base_verdict": self.base_verdict.verdict,
                "cone_verdict": self.cone_verdict.verdict,
                "agree": self.agree}


def transfer_check(X: Hypersurface, dec: ConeDecomposition,
                   P: ProjPoint) -> TransferResult:
    """Compare the Galois verdict at P on the cone X with the verdict at the
    projection of P on the base Y.  The two must agree; disagreement is
    reported, not silently accepted."""
    from .galois0 import galois_criterion

    P_base = dec.project_to_base(P)
    v_base = galois_criterion(dec.Y, P_base)
    v_cone = galois_criterion(X, P)
    agree = (v_base.verdict == v_cone.verdict)
    return TransferResult(P_base, v_base, v_cone, agree)
