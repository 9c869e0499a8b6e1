"""Exact ground-field arithmetic.

Three families of computable fields, all with a uniform Scalar interface:

* the rationals Q (cyclotomic index 1),
* cyclotomic extensions Q(zeta_N) represented as Q[t]/Phi_N(t),
* finite fields GF(p^k) represented as GF(p)[t]/(m(t)) with m irreducible,
  found deterministically from a seed.

No floating point is used anywhere.  Equality of cyclotomic scalars is
representational (reduced residue mod Phi_N); fractions are kept in lowest
terms with positive denominator by ``fractions.Fraction``.

The univariate layer (UniPoly) provides what the rest of the library needs:
gcd, distinct-degree factorization over finite fields, squarefree radicals
in any characteristic, and root finding inside the coefficient field.  Root
finding over Q(zeta_N) is complete for rational roots (via the transported
norm polynomial) and searches a bounded candidate set of the shape
(rational) * (root of unity) beyond that; this is documented best-effort.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import FieldTooSmallError, GaloisLocusError, PreconditionError

_TABLE_LIMIT = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization; fine for the orders we ever build."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# ---------------------------------------------------------------------------
# integer polynomial helpers for cyclotomic moduli


def _zpoly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _zpoly_exact_div(num, den):
    # den monic up to sign; exact integer division
    num = list(num)
    dn = len(den) - 1
    lead = den[-1]
    out = [0] * (len(num) - dn)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + dn]
        assert c % lead == 0
        q = c // lead
        out[i] = q
        if q:
            for j, y in enumerate(den):
                num[i + j] -= q * y
    assert all(c == 0 for c in num[: dn]) and all(c == 0 for c in num)
    return out


_CYCLO_CACHE: dict[int, tuple[int, ...]] = {}


def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the n-th cyclotomic polynomial."""
    if n in _CYCLO_CACHE:
        return _CYCLO_CACHE[n]
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _zpoly_exact_div(num, list(cyclotomic_poly(d)))
    out = tuple(num)
    _CYCLO_CACHE[n] = out
    return out


# ---------------------------------------------------------------------------
# scalars


class Scalar:
    """An element of one of the ground fields; immutable."""

    __slots__ = ("field", "rep")

    def __init__(self, field, rep):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rep", rep)

    def __setattr__(self, *a):
        raise AttributeError("Scalar is immutable")

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise GaloisLocusError("scalars from different fields")
            return other.rep
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return NotImplemented

    def __add__(self, other):
        rep = self._coerce(other)
        if rep is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.add(self.rep, rep))

    __radd__ = __add__

    def __sub__(self, other):
        rep = self._coerce(other)
        if rep is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.sub(self.rep, rep))

    def __rsub__(self, other):
        rep = self._coerce(other)
        if rep is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.sub(rep, self.rep))

    def __mul__(self, other):
        rep = self._coerce(other)
        if rep is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.mul(self.rep, rep))

    __rmul__ = __mul__

    def __truediv__(self, other):
        rep = self._coerce(other)
        if rep is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.mul(self.rep, self.field.inv(rep)))

    def __rtruediv__(self, other):
        rep = self._coerce(other)
        if rep is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.mul(rep, self.field.inv(self.rep)))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.rep))

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        return Scalar(self.field, self.field.pow(self.rep, e))

    def inverse(self):
        return Scalar(self.field, self.field.inv(self.rep))

    def is_zero(self):
        return self.field.is_zero(self.rep)

    def is_one(self):
        return self.rep == self.field.one_rep

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field is other.field and self.rep == other.rep
        if isinstance(other, (int, Fraction)):
            return self.rep == self.field.from_rational(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.rep))

    def __repr__(self):
        return self.field.scalar_str(self.rep)

    def multiplicative_order(self):
        return self.field.multiplicative_order(self.rep)


# ---------------------------------------------------------------------------
# fields


class CyclotomicField:
    """Q[t]/Phi_N(t).  N = 1 gives plain Q.  Representations are dense
    Fraction tuples of length deg Phi_N, reduced mod the modulus."""

    def __init__(self, n: int):
        if n < 1:
            raise PreconditionError("cyclotomic index must be >= 1")
        self.characteristic = 0
        self.cyclotomic_index = n
        coeffs = cyclotomic_poly(n)
        self.modulus = tuple(Fraction(c) for c in coeffs)
        self.degree = len(coeffs) - 1
        self.size = None
        d = self.degree
        self.zero_rep = (Fraction(0),) * d
        self.one_rep = (Fraction(1),) + (Fraction(0),) * (d - 1)
        # reduction table: t^j for j = d .. 2d-2
        self._red = []
        cur = [-c for c in self.modulus[:-1]]  # t^d
        self._red.append(tuple(cur))
        for _ in range(d - 2):
            cur = [Fraction(0)] + cur
            top = cur.pop()
            if top:
                cur = [c + top * r for c, r in zip(cur, self._red[0])]
            self._red.append(tuple(cur))
        self.zeta_rep = self._reduce_list([Fraction(0), Fraction(1)]) if d >= 1 else self.one_rep

    # -- representation helpers
    def _reduce_list(self, coeffs):
        d = self.degree
        coeffs = list(coeffs) + [Fraction(0)] * max(0, d - len(coeffs))
        for j in range(len(coeffs) - 1, d - 1, -1):
            c = coeffs[j]
            if c:
                row = self._red[j - d]
                for i, r in enumerate(row):
                    coeffs[i] += c * r
            coeffs.pop()
        return tuple(coeffs)

    def scalar(self, x):
        if isinstance(x, Scalar):
            if x.field is not self:
                raise GaloisLocusError("scalar from another field")
            return x
        return Scalar(self, self.from_rational(x))

    def from_rational(self, x):
        q = Fraction(x)
        return (q,) + (Fraction(0),) * (self.degree - 1)

    def zeta(self):
        return Scalar(self, self.zeta_rep)

    # -- arithmetic on representations
    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        d = self.degree
        if d == 1:
            return (a[0] * b[0],)
        out = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return self._reduce_list(out)

    def is_zero(self, a):
        return all(x == 0 for x in a)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.degree == 1:
            return (1 / a[0],)
        # extended Euclid in Q[t] against the modulus
        r0, r1 = list(self.modulus), list(a)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while True:
            r1 = _qtrim(r1)
            if len(r1) == 1:
                c = r1[0]
                return self._reduce_list([x / c for x in s1])
            q, r = _qdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _qsub(s0, _zq_mul(q, s1))

    def pow(self, a, e):
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = self.one_rep
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def multiplicative_order(self, a):
        """Order of a in the group of roots of unity; None if infinite."""
        if self.is_zero(a):
            raise ZeroDivisionError("order of zero")
        bound = 2 * self.cyclotomic_index
        cur = a
        for k in range(1, bound + 1):
            if cur == self.one_rep:
                return k
            cur = self.mul(cur, a)
        return None

    def conjugate(self, a, j):
        """Apply the automorphism zeta -> zeta^j, gcd(j, N) = 1."""
        zj = self.pow(self.zeta_rep, j)
        out = self.zero_rep
        power = self.one_rep
        for c in a:
            if c:
                out = self.add(out, tuple(c * x for x in power))
            power = self.mul(power, zj)
        return out

    def galois_exponents(self):
        n = self.cyclotomic_index
        return [j for j in range(1, n + 1) if _gcd(j, n) == 1]

    def is_rational_rep(self, a):
        return all(x == 0 for x in a[1:])

    def scalar_str(self, a):
        if self.degree == 1:
            return str(a[0])
        parts = []
        for i in range(self.degree - 1, -1, -1):
            c = a[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                var = "zeta" if i == 1 else f"zeta^{i}"
                if c == 1:
                    parts.append(var)
                elif c == -1:
                    parts.append(f"-{var}")
                else:
                    parts.append(f"{c}*{var}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def spec_string(self):
        n = self.cyclotomic_index
        return "Q" if n == 1 else f"Q(zeta {n})"

    def to_json(self):
        return {"char": 0, "cyclotomic_index": self.cyclotomic_index,
                "degree": self.degree}

    def __repr__(self):
        return self.spec_string()


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _qtrim(a):
    while len(a) > 1 and a[-1] == 0:
        a = a[:-1]
    return list(a)


def _qsub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _qtrim([x - y for x, y in zip(a, b)])


def _zq_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _qtrim(out)


def _qdivmod(num, den):
    num = _qtrim(num)
    den = _qtrim(den)
    q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
    r = list(num)
    dl = den[-1]
    while len(r) >= len(den) and not (len(r) == 1 and r[0] == 0):
        shift = len(r) - len(den)
        c = r[-1] / dl
        q[shift] += c
        for i, y in enumerate(den):
            r[shift + i] -= c * y
        r = _qtrim(r)
        if len(r) < len(den):
            break
    return _qtrim(q), r


class FiniteField:
    """GF(p^k) = GF(p)[t]/(m(t)).  Elements are integers 0..p^k-1 encoding
    base-p digit vectors low-to-high; multiplication goes through exp/log
    tables for sizes up to 2^16 and through polynomial reduction beyond."""

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        if not is_prime(p):
            raise PreconditionError(f"{p} is not prime")
        if k < 1 or len(modulus) != k + 1 or modulus[-1] % p != 1:
            raise PreconditionError("modulus must be monic of degree k")
        self.characteristic = p
        self.degree = k
        self.cyclotomic_index = None
        self.modulus = tuple(c % p for c in modulus)
        self.size = p ** k
        self.zero_rep = 0
        self.one_rep = 1 % self.size
        self.generator_rep = p % self.size  # class of t
        self._tables_built = False
        if self.size <= _TABLE_LIMIT:
            self._build_tables()

    # -- digit helpers
    def _digits(self, x):
        p, k = self.characteristic, self.degree
        out = []
        for _ in range(k):
            x, r = divmod(x, p)
            out.append(r)
        return out

    def _undigits(self, d):
        p = self.characteristic
        x = 0
        for c in reversed(d):
            x = x * p + c
        return x

    def _poly_mulmod(self, a, b):
        p, k = self.characteristic, self.degree
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        m = self.modulus
        for j in range(2 * k - 2, k - 1, -1):
            c = prod[j]
            if c:
                prod[j] = 0
                for i in range(k):
                    prod[j - k + i] = (prod[j - k + i] - c * m[i]) % p
        return self._undigits(prod[:k])

    def _build_tables(self):
        q = self.size
        # find a multiplicative generator
        fac = factorize(q - 1) if q > 2 else {}
        gen = None
        for cand in range(1, q):
            if self._slow_order_is_full(cand, fac, q - 1):
                gen = cand
                break
        assert gen is not None
        exp = [0] * (q - 1)
        log = [0] * q
        cur = self.one_rep
        for i in range(q - 1):
            exp[i] = cur
            log[cur] = i
            cur = self._poly_mulmod(cur, gen)
        self._exp = exp
        self._log = log
        self._tables_built = True

    def _slow_order_is_full(self, a, fac, n):
        if a == 0:
            return False
        if self._slow_pow(a, n) != self.one_rep:
            return False
        for ell in fac:
            if self._slow_pow(a, n // ell) == self.one_rep:
                return False
        return True

    def _slow_pow(self, a, e):
        result = self.one_rep
        base = a
        while e:
            if e & 1:
                result = self._poly_mulmod(result, base)
            base = self._poly_mulmod(base, base)
            e >>= 1
        return result

    # -- public interface
    def scalar(self, x):
        if isinstance(x, Scalar):
            if x.field is not self:
                raise GaloisLocusError("scalar from another field")
            return x
        return Scalar(self, self.from_rational(x))

    def from_rational(self, x):
        if isinstance(x, Fraction):
            num = x.numerator % self.characteristic
            den = x.denominator % self.characteristic
            if den == 0:
                raise ZeroDivisionError("denominator divisible by p")
            return self.mul(num, self.inv(den)) if den != 1 else num % self.characteristic
        return x % self.characteristic

    def generator(self):
        return Scalar(self, self.generator_rep)

    def add(self, a, b):
        p = self.characteristic
        if p == 2:
            return a ^ b
        if self.degree == 1:
            return (a + b) % p
        da, db = self._digits(a), self._digits(b)
        return self._undigits([(x + y) % p for x, y in zip(da, db)])

    def sub(self, a, b):
        p = self.characteristic
        if p == 2:
            return a ^ b
        if self.degree == 1:
            return (a - b) % p
        da, db = self._digits(a), self._digits(b)
        return self._undigits([(x - y) % p for x, y in zip(da, db)])

    def neg(self, a):
        p = self.characteristic
        if p == 2:
            return a
        if self.degree == 1:
            return (-a) % p
        return self._undigits([(-x) % p for x in self._digits(a)])

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self._tables_built:
            return self._exp[(self._log[a] + self._log[b]) % (self.size - 1)]
        return self._poly_mulmod(a, b)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self._tables_built:
            return self._exp[(-self._log[a]) % (self.size - 1)]
        return self._slow_pow(a, self.size - 2)

    def pow(self, a, e):
        if a == 0:
            if e == 0:
                return self.one_rep
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 0
        if self._tables_built:
            return self._exp[(self._log[a] * e) % (self.size - 1)]
        if e < 0:
            return self._slow_pow(self.inv(a), -e)
        return self._slow_pow(a, e % (self.size - 1)) if e else self.one_rep

    def is_zero(self, a):
        return a == 0

    def frobenius(self, a, e=1):
        return self.pow(a, self.characteristic ** (e % self.degree)) if a else 0

    def pth_root(self, a):
        # inverse Frobenius: unique in a perfect field
        return self.frobenius(a, self.degree - 1)

    def multiplicative_order(self, a):
        if a == 0:
            raise ZeroDivisionError("order of zero")
        n = self.size - 1
        order = n
        for ell, mult in factorize(n).items():
            for _ in range(mult):
                if self.pow(a, order // ell) == self.one_rep:
                    order //= ell
                else:
                    break
        return order

    def elements(self):
        return range(self.size)

    def scalars(self):
        for rep in range(self.size):
            yield Scalar(self, rep)

    def scalar_str(self, a):
        if self.degree == 1:
            return str(a)
        digs = self._digits(a)
        parts = []
        for i in range(self.degree - 1, -1, -1):
            c = digs[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                var = "g" if i == 1 else f"g^{i}"
                parts.append(var if c == 1 else f"{c}*{var}")
        return " + ".join(parts) if parts else "0"

    def spec_string(self):
        p, k = self.characteristic, self.degree
        return f"GF({p})" if k == 1 else f"GF({p}^{k})"

    def to_json(self):
        return {"char": self.characteristic, "degree": self.degree,
                "modulus": list(self.modulus)}

    def __repr__(self):
        return self.spec_string()


_FIELD_CACHE: dict = {}


def field_make(p: int, k: int, seed: int = 0, modulus=None):
    """Build a ground field.

    p = 0: k is the cyclotomic index N (N = 1 gives plain Q).
    p > 0: GF(p^k); the monic irreducible modulus is found deterministically
    by scanning candidates in base-p order starting at an offset derived from
    the seed, with irreducibility certified by distinct-degree factorization.
    """
    if p == 0:
        key = (0, k)
        if key not in _FIELD_CACHE:
            _FIELD_CACHE[key] = CyclotomicField(k)
        return _FIELD_CACHE[key]
    if not is_prime(p):
        raise PreconditionError(f"characteristic {p} is not prime")
    if k < 1:
        raise PreconditionError("extension degree must be >= 1")
    if modulus is not None:
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) != k + 1 or mod[-1] != 1:
            raise PreconditionError("explicit modulus must be monic of degree k")
        key = (p, k, mod)
        if key not in _FIELD_CACHE:
            if k > 1 and not _candidate_irreducible(field_make(p, 1), mod, p, k):
                raise PreconditionError("explicit modulus is reducible")
            _FIELD_CACHE[key] = FiniteField(p, k, mod)
        return _FIELD_CACHE[key]
    if k == 1:
        key = (p, 1, (0, 1))
        if key not in _FIELD_CACHE:
            _FIELD_CACHE[key] = FiniteField(p, 1, (0, 1))
        return _FIELD_CACHE[key]
    total = p ** k
    start = seed % total
    base = field_make(p, 1)
    for off in range(total):
        idx = (start + off) % total
        low = []
        x = idx
        for _ in range(k):
            x, r = divmod(x, p)
            low.append(r)
        cand = tuple(low) + (1,)
        fld_cand_ok = _candidate_irreducible(base, cand, p, k)
        if fld_cand_ok:
            key = (p, k, cand)
            if key not in _FIELD_CACHE:
                _FIELD_CACHE[key] = FiniteField(p, k, cand)
            return _FIELD_CACHE[key]
    raise GaloisLocusError("internal error: no irreducible modulus found")


def _candidate_irreducible(prime_field, coeffs, p, k):
    f = UniPoly(prime_field, [prime_field.scalar(c) for c in coeffs])
    fp = f.derivative()
    if fp.is_zero():
        return False
    if uni_gcd(f, fp).degree() != 0:
        return False
    blocks = ddf(f)
    return len(blocks) == 1 and blocks[0][0] == k


def parse_field_spec(spec: str, seed: int = 0, modulus=None):
    """Parse the CLI field grammar: "Q", "Q(zeta N)", "GF(p)", "GF(p^k)"."""
    s = spec.strip()
    if s == "Q":
        return field_make(0, 1)
    if s.startswith("Q(zeta") and s.endswith(")"):
        inner = s[len("Q(zeta"):-1].strip()
        if not inner.isdigit():
            raise PreconditionError(f"bad field spec {spec!r}")
        return field_make(0, int(inner))
    if s.startswith("GF(") and s.endswith(")"):
        inner = s[3:-1].strip()
        if "^" in inner:
            ps, ks = inner.split("^", 1)
            return field_make(int(ps), int(ks), seed=seed, modulus=modulus)
        return field_make(int(inner), 1, seed=seed, modulus=modulus)
    raise PreconditionError(f"bad field spec {spec!r}")


# ---------------------------------------------------------------------------
# scalar-level conveniences


def frobenius(a: Scalar, e: int = 1) -> Scalar:
    """a^(p^e) by repeated p-th powering; errors in characteristic zero."""
    if a.field.characteristic == 0:
        raise PreconditionError("Frobenius needs positive characteristic")
    return Scalar(a.field, a.field.frobenius(a.rep, e))


def pth_root(a: Scalar) -> Scalar:
    """The unique b with b^p = a (the field is perfect)."""
    if a.field.characteristic == 0:
        raise PreconditionError("p-th root descent needs positive characteristic")
    return Scalar(a.field, a.field.pth_root(a.rep))


def primitive_root_of_unity(field, order: int) -> Scalar:
    """An element of exact multiplicative order ``order``.

    Raises FieldTooSmallError (with a sufficient field as suggestion) when no
    such element exists in ``field``.
    """
    if order < 1:
        raise PreconditionError("order must be positive")
    if order == 1:
        return field.scalar(1)
    p = field.characteristic
    if p > 0:
        if order % p == 0:
            raise PreconditionError(f"order {order} is divisible by the characteristic")
        q1 = field.size - 1
        if q1 % order != 0:
            # smallest m with order | q^m - 1, i.e. the order of q mod `order`
            qq = field.size % order
            acc = qq
            m = 1
            while acc != 1 % order:
                acc = (acc * qq) % order
                m += 1
            raise FieldTooSmallError(
                f"GF({p}^{field.degree}) has no element of order {order}",
                suggestion=f"GF({p}^{field.degree * m})")
        gen = None
        if field._tables_built:
            gen = field._exp[1]
        else:
            fac = factorize(q1)
            for cand in range(1, field.size):
                if field._slow_order_is_full(cand, fac, q1):
                    gen = cand
                    break
        return Scalar(field, field.pow(gen, q1 // order))
    # cyclotomic: the roots of unity are +- zeta^j
    n = field.cyclotomic_index
    avail = n if n % 2 == 0 else 2 * n
    if avail % order != 0:
        m = n
        while True:
            m += 1
            mm = m if m % 2 == 0 else 2 * m
            if mm % order == 0 and m % n == 0:
                break
        raise FieldTooSmallError(
            f"{field.spec_string()} has no primitive {order}-th root of unity",
            suggestion=f"Q(zeta {m})")
    for j in range(n):
        for sign in (1, -1):
            rep = field.pow(field.zeta_rep, j)
            if sign < 0:
                rep = field.neg(rep)
            if field.multiplicative_order(rep) == order:
                return Scalar(field, rep)
    raise GaloisLocusError("internal error: root of unity search failed")


def suggest_extension(field, order: int):
    try:
        primitive_root_of_unity(field, order)
        return None
    except FieldTooSmallError as e:
        return e.suggestion


# ---------------------------------------------------------------------------
# univariate polynomials


class UniPoly:
    """Dense univariate polynomial over a ground field.

    The zero polynomial has an empty coefficient tuple; otherwise the leading
    coefficient is nonzero.  Instances are immutable.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def from_ints(cls, field, ints):
        return cls(field, [field.scalar(c) for c in ints])

    @classmethod
    def zero(cls, field):
        return cls(field, [])

    @classmethod
    def x(cls, field):
        return cls.from_ints(field, [0, 1])

    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def leading(self):
        if not self.coeffs:
            raise ZeroDivisionError("leading coefficient of zero")
        return self.coeffs[-1]

    def __eq__(self, other):
        return (isinstance(other, UniPoly) and self.field is other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.field.scalar(0)
        a = list(self.coeffs) + [z] * (n - len(self.coeffs))
        b = list(other.coeffs) + [z] * (n - len(other.coeffs))
        return UniPoly(self.field, [x + y for x, y in zip(a, b)])

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.field.scalar(0)
        a = list(self.coeffs) + [z] * (n - len(self.coeffs))
        b = list(other.coeffs) + [z] * (n - len(other.coeffs))
        return UniPoly(self.field, [x - y for x, y in zip(a, b)])

    def __neg__(self):
        return UniPoly(self.field, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return UniPoly(self.field, [c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(self.field)
        z = self.field.scalar(0)
        out = [z] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x.is_zero():
                continue
            for j, y in enumerate(other.coeffs):
                if not y.is_zero():
                    out[i + j] = out[i + j] + x * y
        return UniPoly(self.field, out)

    def __rmul__(self, other):
        if isinstance(other, Scalar):
            return self * other
        return NotImplemented

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        z = self.field.scalar(0)
        r = list(self.coeffs)
        dn = other.degree()
        if self.degree() < dn:
            return UniPoly.zero(self.field), self
        q = [z] * (self.degree() - dn + 1)
        inv = other.leading().inverse()
        for shift in range(len(q) - 1, -1, -1):
            c = r[shift + dn]
            if c.is_zero():
                continue
            c = c * inv
            q[shift] = c
            for i, y in enumerate(other.coeffs):
                r[shift + i] = r[shift + i] - c * y
        return UniPoly(self.field, q), UniPoly(self.field, r[:dn])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self):
        if self.is_zero():
            return self
        inv = self.leading().inverse()
        return UniPoly(self.field, [c * inv for c in self.coeffs])

    def derivative(self):
        return UniPoly(self.field,
                       [self.coeffs[i] * i for i in range(1, len(self.coeffs))])

    def evaluate(self, x: Scalar) -> Scalar:
        acc = self.field.scalar(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift_multiply_x(self, k):
        z = self.field.scalar(0)
        return UniPoly(self.field, [z] * k + list(self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return "UniPoly(0)"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            cs = repr(c)
            if i == 0:
                parts.append(cs)
            else:
                xs = "t" if i == 1 else f"t^{i}"
                parts.append(xs if cs == "1" else f"({cs})*{xs}")
        return "UniPoly(" + " + ".join(parts) + ")"


def uni_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def uni_pow_mod(base: UniPoly, e: int, mod: UniPoly) -> UniPoly:
    result = UniPoly.from_ints(base.field, [1])
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        e >>= 1
    return result


def _pth_root_descend(f: UniPoly) -> UniPoly:
    """For f with f' = 0 (all exponents divisible by p), the g with g^p = f."""
    p = f.field.characteristic
    out = []
    for i, c in enumerate(f.coeffs):
        if i % p == 0:
            out.append(pth_root(c))
        elif not c.is_zero():
            raise GaloisLocusError("polynomial is not a p-th power")
    return UniPoly(f.field, out)


def radical(f: UniPoly) -> UniPoly:
    """Product of the distinct monic irreducible factors, any characteristic."""
    if f.is_zero():
        raise PreconditionError("radical of the zero polynomial")
    f = f.monic()
    if f.degree() <= 0:
        return UniPoly.from_ints(f.field, [1])
    fp = f.derivative()
    if fp.is_zero():
        return radical(_pth_root_descend(f))
    g = uni_gcd(f, fp)
    if g.degree() == 0:
        return f
    v = (f // g).monic()  # distinct factors with multiplicity prime to p
    w = g
    while True:
        h = uni_gcd(w, v)
        if h.degree() == 0:
            break
        w = w // h
    # w collects the factors whose multiplicity is divisible by p
    if w.degree() == 0:
        return v
    return (v * radical(w)).monic()


def ddf(f: UniPoly):
    """Distinct-degree factorization over GF(p^k): list of (degree, factor
    product), degrees with trivial factor omitted.  Input must be squarefree."""
    field = f.field
    if field.characteristic == 0:
        raise PreconditionError("ddf runs over finite fields")
    if f.is_zero():
        raise PreconditionError("ddf of the zero polynomial")
    f = f.monic()
    q = field.size
    out = []
    x = UniPoly.x(field)
    w = x
    i = 1
    while f.degree() >= 2 * i:
        w = uni_pow_mod(w, q, f)
        g = uni_gcd(w - x, f)
        if g.degree() > 0:
            out.append((i, g))
            f = (f // g).monic()
            w = w % f
        i += 1
    if f.degree() > 0:
        out.append((f.degree(), f))
    return out


def is_irreducible(f: UniPoly) -> bool:
    """Irreducibility over a finite coefficient field."""
    if f.degree() <= 0:
        return False
    if f.degree() == 1:
        return True
    fp = f.derivative()
    if fp.is_zero():
        return False
    if uni_gcd(f, fp).degree() != 0:
        return False
    blocks = ddf(f)
    return len(blocks) == 1 and blocks[0][0] == f.degree()


def _finite_roots(f: UniPoly):
    field = f.field
    q = field.size
    x = UniPoly.x(field)
    xq = uni_pow_mod(x, q, f)
    lin = uni_gcd(xq - x, f)
    roots = []
    if lin.degree() > 0:
        found = 0
        for rep in field.elements():
            s = Scalar(field, rep)
            if lin.evaluate(s).is_zero():
                roots.append(s)
                found += 1
                if found == lin.degree():
                    break
    return roots


def _rational_root_candidates(zcoeffs):
    # zcoeffs: integer list, low to high, nonzero constant and leading
    def divisors(n):
        n = abs(n)
        out = set()
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.add(d)
                out.add(n // d)
            d += 1
        return out
    c0, cl = zcoeffs[0], zcoeffs[-1]
    cands = set()
    for a in divisors(c0):
        for b in divisors(cl):
            cands.add(Fraction(a, b))
            cands.add(Fraction(-a, b))
    return cands


def _char0_root_candidates(f: UniPoly):
    field = f.field
    # transported norm polynomial: product of the Galois conjugates, which has
    # rational coefficients; rational roots of f are among its rational roots
    norm = UniPoly.from_ints(field, [1])
    for j in field.galois_exponents():
        conj = UniPoly(field, [Scalar(field, field.conjugate(c.rep, j))
                               for c in f.coeffs])
        norm = norm * conj
    zc = []
    ok = True
    for c in norm.coeffs:
        if not field.is_rational_rep(c.rep):
            ok = False
            break
        zc.append(c.rep[0])
    if not ok:
        return set()
    # strip t-powers, integerize
    while zc and zc[0] == 0:
        zc = zc[1:]
    if not zc:
        return set()
    den = 1
    for c in zc:
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = [int(c * den) for c in zc]
    g = 0
    for c in ints:
        g = _gcd(g, abs(c))
    if g > 1:
        ints = [c // g for c in ints]
    rats = _rational_root_candidates(ints)
    # bounded candidate set: rationals times the roots of unity of the field
    n = field.cyclotomic_index
    units = []
    for j in range(n):
        rep = field.pow(field.zeta_rep, j)
        units.append(rep)
        units.append(field.neg(rep))
    cands = set()
    for r in rats:
        for u in units:
            cands.add(Scalar(field, field.mul(field.from_rational(r), u)))
    cands.add(field.scalar(0))
    return cands


def roots_in_field(f: UniPoly):
    """All roots of f lying in the coefficient field, with multiplicity.

    Complete over finite fields and for rational roots over Q(zeta_N); beyond
    that the char-0 search covers the bounded set (rational)*(root of unity)
    and quadratic leftovers with a rational square discriminant.
    """
    if f.is_zero():
        raise PreconditionError("roots of the zero polynomial")
    field = f.field
    if f.degree() == 0:
        return []
    if field.characteristic > 0:
        distinct = _finite_roots(radical(f))
    else:
        distinct = [c for c in _char0_root_candidates(f)
                    if f.evaluate(c).is_zero()]
        # quadratic leftovers with rational coefficients and square discriminant
        rem = f
        for c in distinct:
            lin = UniPoly(field, [-c, field.scalar(1)])
            while True:
                q, r = rem.divmod(lin)
                if r.is_zero():
                    rem = q
                else:
                    break
        if rem.degree() == 2:
            a, b, cc = rem.coeffs[2], rem.coeffs[1], rem.coeffs[0]
            disc = b * b - field.scalar(4) * a * cc
            if field.is_rational_rep(disc.rep):
                dq = disc.rep[0]
                if dq >= 0:
                    num, den = dq.numerator, dq.denominator
                    rn, rd = _isqrt_exact(num), _isqrt_exact(den)
                    if rn is not None and rd is not None:
                        sq = field.scalar(Fraction(rn, rd))
                        two_a = field.scalar(2) * a
                        for sgn in (1, -1):
                            root = (-b + sq * field.scalar(sgn)) / two_a
                            if f.evaluate(root).is_zero():
                                distinct.append(root)
        seen = set()
        uniq = []
        for c in distinct:
            if c not in seen:
                seen.add(c)
                uniq.append(c)
        distinct = uniq
    out = []
    for c in distinct:
        lin = UniPoly(field, [-c, field.scalar(1)])
        rem = f
        mult = 0
        while True:
            q, r = rem.divmod(lin)
            if r.is_zero():
                mult += 1
                rem = q
            else:
                break
        out.extend([c] * mult)
    return out


def _isqrt_exact(n: int):
    if n < 0:
        return None
    r = int(n ** 0.5)
    for cand in (r - 1, r, r + 1, r + 2):
        if cand >= 0 and cand * cand == n:
            return cand
    return None
