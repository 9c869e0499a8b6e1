"""Sparse multivariate polynomial arithmetic over the exact ground fields.

A MultiPoly maps exponent tuples to nonzero Scalars.  The canonical term
order everywhere (iteration, rendering, leading terms) is graded lex with
X0 > X1 > ...: higher total degree first, ties broken by exponent tuple.

Directional derivatives are Hasse derivatives, computed by an honest
substitution X -> X + t*v and collection of t-powers, so they are correct in
every characteristic (iterated ordinary derivatives are not, once p divides
a binomial coefficient).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GaloisLocusError, PreconditionError
from .exactfield import Scalar
from . import matrices


def _grlex_key(e):
    return (sum(e), e)


class MultiPoly:
    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field, nvars, terms):
        clean = {}
        for e, c in terms.items():
            if len(e) != nvars:
                raise PreconditionError("exponent vector of wrong length")
            if not c.is_zero():
                clean[tuple(e)] = c
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors
    @classmethod
    def zero(cls, field, nvars):
        return cls(field, nvars, {})

    @classmethod
    def const(cls, field, nvars, c):
        return cls(field, nvars, {(0,) * nvars: field.scalar(c)})

    @classmethod
    def variable(cls, field, nvars, j):
        e = [0] * nvars
        e[j] = 1
        return cls(field, nvars, {tuple(e): field.scalar(1)})

    @classmethod
    def monomial(cls, field, nvars, exps, coeff):
        return cls(field, nvars, {tuple(exps): field.scalar(coeff)})

    # -- basic queries
    def is_zero(self):
        return not self.terms

    def total_degree(self):
        """-1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, j):
        return max((e[j] for e in self.terms), default=0)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.field.scalar(0))

    def leading_term(self):
        if not self.terms:
            raise GaloisLocusError("leading term of zero")
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]),
                      reverse=True)

    def __eq__(self, other):
        return (isinstance(other, MultiPoly) and self.field is other.field
                and self.nvars == other.nvars and self.terms == other.terms)

    def __hash__(self):
        return hash((id(self.field), self.nvars, frozenset(self.terms.items())))

    # -- ring operations
    def _check(self, other):
        if self.field is not other.field or self.nvars != other.nvars:
            raise GaloisLocusError("polynomials from different rings")

    def __add__(self, other):
        if isinstance(other, (int, Scalar)):
            other = MultiPoly.const(self.field, self.nvars, self.field.scalar(other))
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = out[e] + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return MultiPoly(self.field, self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.field, self.nvars,
                         {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Scalar)):
            other = MultiPoly.const(self.field, self.nvars, self.field.scalar(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            c = self.field.scalar(other)
            if c.is_zero():
                return MultiPoly.zero(self.field, self.nvars)
            return MultiPoly(self.field, self.nvars,
                             {e: v * c for e, v in self.terms.items()})
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                if e in out:
                    s = out[e] + prod
                    if s.is_zero():
                        del out[e]
                    else:
                        out[e] = s
                elif not prod.is_zero():
                    out[e] = prod
        return MultiPoly(self.field, self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise PreconditionError("negative power of a polynomial")
        result = MultiPoly.const(self.field, self.nvars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def frobenius_power(self, q):
        """self**q for q a power of the characteristic, via c -> c^q, e -> q*e."""
        p = self.field.characteristic
        if p == 0:
            raise PreconditionError("frobenius_power needs positive characteristic")
        qq = q
        while qq % p == 0:
            qq //= p
        if qq != 1:
            raise PreconditionError("q must be a power of the characteristic")
        return MultiPoly(self.field, self.nvars,
                         {tuple(q * x for x in e): c ** q
                          for e, c in self.terms.items()})

    # -- evaluation and substitution
    def evaluate(self, vals):
        if len(vals) != self.nvars:
            raise PreconditionError("wrong number of values")
        acc = self.field.scalar(0)
        powcache = [dict() for _ in range(self.nvars)]
        for e, c in self.terms.items():
            term = c
            for j, exp in enumerate(e):
                if exp:
                    pc = powcache[j]
                    if exp not in pc:
                        pc[exp] = vals[j] ** exp
                    term = term * pc[exp]
            acc = acc + term
        return acc

    def substitute(self, images, nvars_out=None):
        """Compose: replace variable j by images[j] (MultiPoly or Scalar).

        All images must live in a common target ring."""
        target = None
        for im in images:
            if isinstance(im, MultiPoly):
                target = im
                break
        if target is None:
            raise PreconditionError("need at least one polynomial image")
        field, nv = target.field, target.nvars
        if nvars_out is not None and nvars_out != nv:
            raise PreconditionError("inconsistent target ring")
        imgs = []
        for im in images:
            if isinstance(im, MultiPoly):
                imgs.append(im)
            else:
                imgs.append(MultiPoly.const(field, nv, im))
        acc = MultiPoly.zero(field, nv)
        powcache = [dict() for _ in range(self.nvars)]
        for e, c in self.terms.items():
            term = MultiPoly.const(field, nv, c)
            for j, exp in enumerate(e):
                if exp:
                    pc = powcache[j]
                    if exp not in pc:
                        pc[exp] = imgs[j] ** exp
                    term = term * pc[exp]
            acc = acc + term
        return acc

    def extend_ring(self, nvars_out, shift=0):
        """View inside a bigger ring: variable j becomes j+shift."""
        pad_l, pad_r = shift, nvars_out - self.nvars - shift
        if pad_r < 0:
            raise PreconditionError("target ring too small")
        return MultiPoly(self.field, nvars_out,
                         {(0,) * pad_l + e + (0,) * pad_r: c
                          for e, c in self.terms.items()})

    def drop_unused_tail(self, keep):
        """Restrict to the first ``keep`` variables; the rest must not occur."""
        for e in self.terms:
            if any(e[j] for j in range(keep, self.nvars)):
                raise PreconditionError("polynomial involves dropped variables")
        return MultiPoly(self.field, keep,
                         {e[:keep]: c for e, c in self.terms.items()})

    # -- calculus
    def partial(self, j):
        out = {}
        for e, c in self.terms.items():
            if e[j]:
                ee = list(e)
                ee[j] -= 1
                coeff = c * e[j]
                if not coeff.is_zero():
                    key = tuple(ee)
                    out[key] = out.get(key, self.field.scalar(0)) + coeff
        return MultiPoly(self.field, self.nvars,
                         {e: c for e, c in out.items() if not c.is_zero()})

    def partials(self):
        return [self.partial(j) for j in range(self.nvars)]


@dataclass(frozen=True)
class HomogPoly:
    """A MultiPoly together with its certified homogeneous degree."""

    poly: MultiPoly
    degree: int

    def __post_init__(self):
        for e in self.poly.terms:
            if sum(e) != self.degree:
                raise PreconditionError("polynomial is not homogeneous of the "
                                        "stated degree")

    def is_zero(self):
        return self.poly.is_zero()


def homog_parts(f: MultiPoly):
    """Split into homogeneous parts, indexed 0..total_degree."""
    d = max(f.total_degree(), 0)
    buckets = [dict() for _ in range(d + 1)]
    for e, c in f.terms.items():
        buckets[sum(e)][e] = c
    return [HomogPoly(MultiPoly(f.field, f.nvars, b), i)
            for i, b in enumerate(buckets)]


def exact_divide(num: MultiPoly, den: MultiPoly):
    """Quotient q with q*den = num, or None when den does not divide num.

    Single-divisor reduction on graded-lex leading terms; complete for exact
    divisibility over a field.
    """
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if num.is_zero():
        return MultiPoly.zero(num.field, num.nvars)
    num._check(den)
    lt_e, lt_c = den.leading_term()
    inv = lt_c.inverse()
    rem = dict(num.terms)
    q = {}
    while rem:
        e = max(rem, key=_grlex_key)
        diff = tuple(a - b for a, b in zip(e, lt_e))
        if any(x < 0 for x in diff):
            return None
        c = rem[e] * inv
        q[diff] = q.get(diff, num.field.scalar(0)) + c
        for e2, c2 in den.terms.items():
            key = tuple(a + b for a, b in zip(diff, e2))
            s = rem.get(key, num.field.scalar(0)) - c * c2
            if s.is_zero():
                rem.pop(key, None)
            else:
                rem[key] = s
    return MultiPoly(num.field, num.nvars, q)


def linear_substitute(f: MultiPoly, matrix):
    """f composed with the linear change of variables X -> M.X.

    matrix[j][i] is the coefficient of X_i in the image of variable j; it must
    be square of size nvars and invertible (checked by exact determinant).
    """
    n = f.nvars
    if len(matrix) != n or any(len(r) != n for r in matrix):
        raise PreconditionError("matrix size must match the variable count")
    det = matrices.mat_det(matrix)
    if det.is_zero():
        raise GaloisLocusError("substitution matrix is singular")
    images = []
    for j in range(n):
        row = {}
        for i in range(n):
            c = matrix[j][i]
            if not c.is_zero():
                e = [0] * n
                e[i] = 1
                row[tuple(e)] = c
        images.append(MultiPoly(f.field, n, row))
    return f.substitute(images)


def hasse_expansion(f: MultiPoly, v):
    """All Hasse directional coefficients: list h with
    f(X + t*v) = sum_i h[i](X) * t^i."""
    if len(v) != f.nvars:
        raise PreconditionError("direction vector of wrong length")
    n = f.nvars
    # substitute into K[X0..X_{n-1}, t] with t as the last variable
    images = []
    for j in range(n):
        row = {}
        e = [0] * (n + 1)
        e[j] = 1
        row[tuple(e)] = f.field.scalar(1)
        if not v[j].is_zero():
            et = [0] * (n + 1)
            et[n] = 1
            row[tuple(et)] = v[j]
        images.append(MultiPoly(f.field, n + 1, row))
    shifted = f.substitute(images)
    d = f.total_degree()
    out = [dict() for _ in range(max(d, 0) + 1)]
    for e, c in shifted.terms.items():
        i = e[n]
        out[i][e[:n]] = c
    return [MultiPoly(f.field, n, b) for b in out]


def hasse_derivative(f: MultiPoly, v, order: int) -> MultiPoly:
    """Coefficient of t^order in f(X + t*v)."""
    if order < 0:
        raise PreconditionError("order must be non-negative")
    exp = hasse_expansion(f, v)
    if order >= len(exp):
        return MultiPoly.zero(f.field, f.nvars)
    return exp[order]
