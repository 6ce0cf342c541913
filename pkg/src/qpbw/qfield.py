"""Exact arithmetic in Q(q): sparse Laurent polynomials and rational functions.

Representation choices
----------------------
LaurentPoly stores a sparse map {exponent: coefficient}.  Coefficients are
plain ints whenever possible and fractions.Fraction otherwise; the two mix
freely under arithmetic and compare/hash equal when they coincide, so no
explicit coercion layer is needed.

RationalFunction is a reduced pair num/den with the normalization

  * den is an honest polynomial (valuation 0), i.e. every q-shift is pushed
    into num, which may be a genuine Laurent polynomial;
  * den has integer, collectively coprime coefficients and positive constant
    term;
  * gcd(num, den) = 1 as polynomials.

Under these rules the representation of a given element of Q(q) is unique,
so equality is structural.  Polynomial gcds are computed by the primitive
pseudo-remainder sequence over Z, which keeps every intermediate exact.

String form (used by the CLI and the golden tables): terms in ascending
exponent, coefficient 1 suppressed, "q^1" written "q", "q^0" omitted, terms
joined by " + " / " - ", e.g. "-q^2 + q^6 + q^8 - q^10".  A rational
function with nontrivial denominator renders "(<num>)/(<den>)".
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd as _igcd


class LaurentPoly:
    """Sparse Laurent polynomial in q over Q."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        if coeffs:
            self.c = {e: v for e, v in coeffs.items() if v}
        else:
            self.c = {}

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero():
        return _LP_ZERO

    @staticmethod
    def one():
        return _LP_ONE

    @staticmethod
    def qpow(n, coeff=1):
        """coeff * q^n."""
        if not coeff:
            return _LP_ZERO
        return LaurentPoly({n: coeff})

    @staticmethod
    def const(v):
        if not v:
            return _LP_ZERO
        return LaurentPoly({0: v})

    # -- predicates / views -------------------------------------------

    def is_zero(self):
        return not self.c

    def is_one(self):
        return self.c == {0: 1}

    def valuation(self):
        """Lowest exponent (0 for the zero polynomial)."""
        return min(self.c) if self.c else 0

    def degree(self):
        return max(self.c) if self.c else 0

    def coeff(self, e):
        return self.c.get(e, 0)

    def is_monomial(self):
        return len(self.c) == 1

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not self.c:
            return other
        if not other.c:
            return self
        out = dict(self.c)
        for e, v in other.c.items():
            w = out.get(e, 0) + v
            if w:
                out[e] = w
            else:
                out.pop(e, None)
        r = LaurentPoly.__new__(LaurentPoly)
        r.c = out
        return r

    __radd__ = __add__

    def __neg__(self):
        r = LaurentPoly.__new__(LaurentPoly)
        r.c = {e: -v for e, v in self.c.items()}
        return r

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return _LP_ZERO
            r = LaurentPoly.__new__(LaurentPoly)
            r.c = {e: v * other for e, v in self.c.items()}
            return r
        a, b = self.c, other.c
        if not a or not b:
            return _LP_ZERO
        if len(a) == 1:
            (ea, va), = a.items()
            r = LaurentPoly.__new__(LaurentPoly)
            r.c = {eb + ea: vb * va for eb, vb in b.items()}
            return r
        if len(b) == 1:
            (eb, vb), = b.items()
            r = LaurentPoly.__new__(LaurentPoly)
            r.c = {ea + eb: va * vb for ea, va in a.items()}
            return r
        if len(a) > len(b):
            a, b = b, a
        out = {}
        get = out.get
        for ea, va in a.items():
            for eb, vb in b.items():
                e = ea + eb
                w = get(e, 0) + va * vb
                if w:
                    out[e] = w
                else:
                    out.pop(e, None)
        r = LaurentPoly.__new__(LaurentPoly)
        r.c = out
        return r

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a LaurentPoly; use RationalFunction")
        result = _LP_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def shift(self, k):
        """Multiply by q^k."""
        if not k or not self.c:
            return self
        r = LaurentPoly.__new__(LaurentPoly)
        r.c = {e + k: v for e, v in self.c.items()}
        return r

    def bar(self):
        """Substitute q -> q^-1."""
        r = LaurentPoly.__new__(LaurentPoly)
        r.c = {-e: v for e, v in self.c.items()}
        return r

    def subs_power(self, k):
        """Substitute q -> q^k (k a nonzero integer)."""
        if k == 1:
            return self
        r = LaurentPoly.__new__(LaurentPoly)
        r.c = {e * k: v for e, v in self.c.items()}
        return r

    # -- evaluation ----------------------------------------------------

    def eval_at(self, q0):
        """Evaluate at a nonzero rational q0."""
        q0 = Fraction(q0)
        if q0 == 0:
            raise ZeroDivisionError("Laurent polynomial evaluated at q = 0")
        total = Fraction(0)
        for e, v in self.c.items():
            total += v * q0 ** e
        return total

    def constant_term(self):
        if self.c and min(self.c) < 0:
            raise ZeroDivisionError("pole at q = 0")
        return self.c.get(0, 0)

    # -- comparison / hashing -------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __bool__(self):
        return bool(self.c)

    def __str__(self):
        return lp_to_str(self)

    def __repr__(self):
        return f"LaurentPoly({lp_to_str(self)})"


_LP_ZERO = LaurentPoly()
_LP_ONE = LaurentPoly({0: 1})


# ---------------------------------------------------------------------------
# string form and parser
# ---------------------------------------------------------------------------

def _coeff_str(v):
    """|v| as a plain string: '3', '3/2'."""
    if isinstance(v, Fraction) and v.denominator != 1:
        return f"{v.numerator}/{v.denominator}"
    return str(int(v))


def lp_to_str(p):
    if not p.c:
        return "0"
    parts = []
    for idx, e in enumerate(sorted(p.c)):
        v = p.c[e]
        neg = v < 0
        mag = -v if neg else v
        if e == 0:
            body = _coeff_str(mag)
        else:
            qs = "q" if e == 1 else f"q^{e}"
            body = qs if mag == 1 else _coeff_str(mag) + qs
        if idx == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


_TERM_RE = re.compile(
    r"^\s*(?P<coeff>\d+(?:/\d+)?)?\s*"
    r"(?P<q>q(?:\^(?P<exp>-?\d+))?)?\s*$"
)


def _parse_coeff(s):
    if "/" in s:
        return Fraction(s)
    return int(s)


def parse_laurent(text):
    """Inverse of lp_to_str.  Accepts exactly the canonical grammar."""
    text = text.strip()
    if text == "0":
        return _LP_ZERO
    # split into signed terms on " + " / " - ", with an optional leading "-"
    sign = 1
    if text.startswith("-"):
        sign = -1
        text = text[1:]
    chunks = re.split(r" ([+-]) ", text)
    coeffs = {}
    terms = [(sign, chunks[0])]
    for i in range(1, len(chunks), 2):
        terms.append((1 if chunks[i] == "+" else -1, chunks[i + 1]))
    for sgn, chunk in terms:
        m = _TERM_RE.match(chunk)
        if not m or (m.group("coeff") is None and m.group("q") is None):
            raise ValueError(f"cannot parse term {chunk!r}")
        mag = _parse_coeff(m.group("coeff")) if m.group("coeff") else 1
        if m.group("q"):
            e = int(m.group("exp")) if m.group("exp") else 1
        else:
            e = 0
        coeffs[e] = coeffs.get(e, 0) + sgn * mag
    return LaurentPoly(coeffs)


# ---------------------------------------------------------------------------
# integer-polynomial helpers (gcd via primitive pseudo-remainder sequence)
# ---------------------------------------------------------------------------

def _to_int_list(p):
    """LaurentPoly with valuation >= 0 -> dense int list, lowest degree first.

    Rational coefficients are cleared by a common multiple (the result is
    only used up to a scalar).
    """
    if not p.c:
        return []
    lo, hi = min(p.c), max(p.c)
    assert lo >= 0
    denlcm = 1
    for v in p.c.values():
        if isinstance(v, Fraction):
            d = v.denominator
            denlcm = denlcm // _igcd(denlcm, d) * d
    out = [0] * (hi + 1)
    for e, v in p.c.items():
        out[e] = int(v * denlcm)
    return out


def _content(lst):
    g = 0
    for v in lst:
        g = _igcd(g, abs(v))
        if g == 1:
            return 1
    return g


def _primitive(lst):
    g = _content(lst)
    if g > 1:
        return [v // g for v in lst]
    return list(lst)


def _trim(lst):
    while lst and lst[-1] == 0:
        lst.pop()
    return lst


def _pseudo_rem(a, b):
    """Pseudo-remainder of dense int lists (lowest degree first)."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        la = a[-1]
        # a = lb*a - la * q^(da-db) * b
        a = [lb * v for v in a]
        off = da - db
        for i, bv in enumerate(b):
            a[off + i] -= la * bv
        _trim(a)
    return a


def _int_poly_gcd(a, b):
    """Primitive gcd of two dense int lists (lowest degree first)."""
    a = _primitive(_trim(list(a)))
    b = _primitive(_trim(list(b)))
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _pseudo_rem(a, b)
        r = _primitive(r)
        a, b = b, r
    if a and a[-1] < 0:
        a = [-v for v in a]
    return a


def _list_to_lp(lst):
    return LaurentPoly({e: v for e, v in enumerate(lst) if v})


def poly_gcd(p, q):
    """Primitive gcd of two polynomial-valued LaurentPolys (valuation >= 0)."""
    return _list_to_lp(_int_poly_gcd(_to_int_list(p), _to_int_list(q)))


def _exact_scalar_div(a, b):
    """a / b for int/Fraction scalars, keeping ints when the result is integral."""
    if isinstance(a, int) and isinstance(b, int) and b and a % b == 0:
        return a // b
    f = Fraction(a) / Fraction(b)
    return int(f) if f.denominator == 1 else f


def poly_divexact(a, b):
    """Exact division a / b of LaurentPolys; raises ValueError if inexact.

    Runs from the low-exponent end, so b may be any Laurent polynomial; the
    quotient's lowest term is determined by the lowest terms of a and b.
    """
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if a.is_zero():
        return _LP_ZERO
    if b.is_monomial():
        (eb, vb), = b.c.items()
        return LaurentPoly({e - eb: _exact_scalar_div(v, vb) for e, v in a.c.items()})
    rem = dict(a.c)
    vb = b.valuation()
    b0 = b.c[vb]
    qmax = a.degree() - b.degree()
    out = {}
    while rem:
        e = min(rem)
        k = e - vb  # next quotient exponent
        if k > qmax:
            raise ValueError("inexact polynomial division")
        f = _exact_scalar_div(rem[e], b0)
        out[k] = f
        for eb2, vb2 in b.c.items():
            t = eb2 + k
            w = rem.get(t, 0) - vb2 * f
            if w:
                rem[t] = w
            else:
                rem.pop(t, None)
    return LaurentPoly(out)


# ---------------------------------------------------------------------------
# RationalFunction
# ---------------------------------------------------------------------------

class RationalFunction:
    """Element of Q(q), stored as a reduced, normalized num/den pair."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, (int, Fraction)):
            num = LaurentPoly.const(num)
        if den is None:
            den = _LP_ONE
        elif isinstance(den, (int, Fraction)):
            den = LaurentPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num = _LP_ZERO
            self.den = _LP_ONE
            return
        if den.is_one():
            self.num = num
            self.den = _LP_ONE
            return
        # push the denominator's q-shift into num
        v = den.valuation()
        if v:
            den = den.shift(-v)
            num = num.shift(-v)
        if den.is_monomial():  # den is now a nonzero constant
            (_, c), = den.c.items()
            self.num = num * (Fraction(1, 1) / c if c != 1 else 1)
            self.num = _intify(self.num)
            self.den = _LP_ONE
            return
        # cancel the polynomial gcd
        nv = num.valuation()
        g = poly_gcd(num.shift(-nv), den)
        if not g.is_one() and g.degree() > 0:
            num = poly_divexact(num.shift(-nv), g).shift(nv)
            den = poly_divexact(den, g)
        if den.is_monomial():
            (_, c), = den.c.items()
            self.num = _intify(num * (Fraction(1, 1) / c if c != 1 else 1))
            self.den = _LP_ONE
            return
        # scalar-normalize den: integer coprime coefficients, positive constant
        denlcm = 1
        for c in den.c.values():
            if isinstance(c, Fraction):
                d = c.denominator
                denlcm = denlcm // _igcd(denlcm, d) * d
        if denlcm != 1:
            den = den * denlcm
            num = num * denlcm
        den = _intify(den)
        g = _content(list(den.c.values()))
        if den.c[den.valuation()] < 0:
            g = -g
        if g != 1:
            den = _intify(den * Fraction(1, g))
            num = num * Fraction(1, g)
        self.num = _intify(num)
        self.den = den

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero():
        return _RF_ZERO

    @staticmethod
    def one():
        return _RF_ONE

    @staticmethod
    def from_laurent(p):
        r = RationalFunction.__new__(RationalFunction)
        r.num = p
        r.den = _LP_ONE
        return r

    @staticmethod
    def qpow(n, coeff=1):
        return RationalFunction.from_laurent(LaurentPoly.qpow(n, coeff))

    # -- predicates -------------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self):
        return self.den.is_one()

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RationalFunction.from_laurent(self.num + other.num)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        r = RationalFunction.__new__(RationalFunction)
        r.num = -self.num
        r.den = self.den
        return r

    def __sub__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RationalFunction.from_laurent(self.num * other.num)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _as_rf(other) / self

    def __pow__(self, n):
        if n < 0:
            return _RF_ONE / self ** (-n)
        result = _RF_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- evaluation -----------------------------------------------------------

    def eval_at(self, q0):
        """Exact value at a nonzero rational point; ZeroDivisionError at poles."""
        q0 = Fraction(q0)
        nv = self.num.eval_at(q0) if not self.num.is_zero() else Fraction(0)
        dv = self.den.eval_at(q0)
        if dv == 0:
            raise ZeroDivisionError(f"pole at q = {q0}")
        return nv / dv

    def specialize_q0(self):
        """Constant term at q = 0, defined only for genuine polynomials.

        Requires den == 1 and no negative exponents in num; anything else
        raises (q -> 0 is a limit we refuse to take implicitly).
        """
        if not self.den.is_one():
            raise ZeroDivisionError("specialize_q0 on a non-polynomial (denominator != 1)")
        return self.num.constant_term()

    # -- comparison / hashing ---------------------------------------------------

    def __eq__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def __str__(self):
        return rf_to_str(self)

    def __repr__(self):
        return f"RationalFunction({rf_to_str(self)})"


def _as_rf(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, LaurentPoly):
        return RationalFunction.from_laurent(x)
    if isinstance(x, (int, Fraction)):
        return RationalFunction.from_laurent(LaurentPoly.const(x))
    return NotImplemented


def _intify(p):
    """Replace integral Fractions by ints in the coefficient dict."""
    out = {}
    dirty = False
    for e, v in p.c.items():
        if isinstance(v, Fraction) and v.denominator == 1:
            out[e] = int(v)
            dirty = True
        else:
            out[e] = v
    if not dirty:
        return p
    r = LaurentPoly.__new__(LaurentPoly)
    r.c = out
    return r


_RF_ZERO = RationalFunction.from_laurent(_LP_ZERO)
_RF_ONE = RationalFunction.from_laurent(_LP_ONE)


def rf_to_str(r):
    if r.den.is_one():
        return lp_to_str(r.num)
    return f"({lp_to_str(r.num)})/({lp_to_str(r.den)})"


def parse_rational(text):
    text = text.strip()
    m = re.fullmatch(r"\((?P<num>[^()]*)\)/\((?P<den>[^()]*)\)", text)
    if m:
        return RationalFunction(parse_laurent(m.group("num")), parse_laurent(m.group("den")))
    return RationalFunction.from_laurent(parse_laurent(text))


# public aliases matching the operation names used by callers
def canonical_string(x):
    """Canonical text form of a LaurentPoly or RationalFunction."""
    if isinstance(x, LaurentPoly):
        return lp_to_str(x)
    return rf_to_str(_as_rf(x))


def parse(text):
    """Parse a canonical string back to a RationalFunction."""
    return parse_rational(text)


# ---------------------------------------------------------------------------
# q-constants.  `d` is the length exponent: the base is q_i = q^d.
# ---------------------------------------------------------------------------

def q_int(m, d=1):
    """[m] in base q^d:  (q^dm - q^-dm)/(q^d - q^-d), as a LaurentPoly."""
    if m < 0:
        return -q_int(-m, d)
    if m == 0:
        return _LP_ZERO
    return LaurentPoly({d * (m - 1 - 2 * t): 1 for t in range(m)})


def q_int_rf(m, d=1):
    return RationalFunction.from_laurent(q_int(m, d))


def q_factorial(m, d=1):
    """[m]! in base q^d."""
    out = _LP_ONE
    for t in range(2, m + 1):
        out = out * q_int(t, d)
    return out


def q_pochhammer(m, d=1):
    """(p^2; p^2)_m with p = q^d:  prod_{t=1..m} (1 - q^(2dt))."""
    out = _LP_ONE
    for t in range(1, m + 1):
        out = out * LaurentPoly({0: 1, 2 * d * t: -1})
    return out


def d_norm(m, d=1):
    """Normalization factor  p^{-m(m-1)/2} (1-p^2)^{-m}  with p = q^d.

    Satisfies (p^2; p^2)_m * d_norm(m) = [m]!  in base p.
    """
    num = LaurentPoly.qpow(-d * (m * (m - 1) // 2))
    den = LaurentPoly({0: 1, 2 * d: -1}) ** m
    return RationalFunction(num, den)


def qmq(n):
    """q^n - q^-n  (zero when n = 0)."""
    if n == 0:
        return _LP_ZERO
    return LaurentPoly({n: 1, -n: -1})


def is_integer_polynomial(x):
    """True when x lies in Z[q] (no denominator, no negative powers)."""
    if isinstance(x, RationalFunction):
        if not x.den.is_one():
            return False
        x = x.num
    return (x.valuation() >= 0
            and all(Fraction(v).denominator == 1 for v in x.c.values()))
