"""Exact structure constants for the rank-2 cases A2, C2, G2.

Each algebra comes with the two reduced words of the longest Weyl element,
written word 1 and word 2 (word 1 starts with node 1).  All low-level data
is attached to word 2: the positive-root sequence, the flat expansions of
the root vectors b_1..b_l in the letters e_1, e_2, and the one-letter
multiplication rules for monomials B[A] = b_1^{a_1} ... b_l^{a_l}.  The
word-1 root vectors are the images under the coefficient-fixing
anti-involution chi (chi(e_i) = e_i), which reverses every word; downstream
code obtains all word-1 statements from word-2 ones by tuple reversal.

The function-algebra side is driven by the generator matrices pi_i(T)
(one q_i-oscillator per Dynkin node, parameters set to 1) together with
the t-polynomials giving sigma_i and sigma_i e_i.

Conventions:
  * a "word expression" is a dict {letters tuple -> RationalFunction},
    e.g. b_2 for A2 is {(1, 2): 1, (2, 1): -q};
  * a "mode-op sum" is a tuple of (coeff, atoms) pairs where atoms is a
    tuple over {"a+", "a-", "k"} read left to right as an operator product;
  * multiplication rules map an exponent tuple to a list of
    (coeff, exponent tuple) pairs, zero coefficients already dropped.
"""

from fractions import Fraction
from functools import lru_cache

from .qfield import (
    LaurentPoly,
    RationalFunction,
    q_int,
    q_factorial,
    qmq,
)

ALGEBRAS = ("A2", "C2", "G2")


def rf(x):
    """Coerce ints / Laurent polynomials to RationalFunction."""
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, LaurentPoly):
        return RationalFunction.from_laurent(x)
    return RationalFunction.from_laurent(LaurentPoly.const(x))


ONE = rf(1)
ZERO = rf(0)


@lru_cache(maxsize=None)
def qpow(n):
    """q^n as a RationalFunction."""
    return rf(LaurentPoly.qpow(n))


@lru_cache(maxsize=None)
def qint(m, d=1):
    """[m] in base q^d."""
    return rf(q_int(m, d))


@lru_cache(maxsize=None)
def qfact(m, d=1):
    return rf(q_factorial(m, d))


@lru_cache(maxsize=None)
def qbracket(n):
    """<n> = q^n - q^-n."""
    return rf(qmq(n))


@lru_cache(maxsize=None)
def qbinom(n, r, d=1):
    """Gaussian binomial [n choose r] in base q^d (a Laurent polynomial)."""
    if r < 0 or r > n:
        return ZERO
    return qfact(n, d) / (qfact(r, d) * qfact(n - r, d))


def reverse(t):
    return tuple(reversed(t))


# ---------------------------------------------------------------------------
# word expressions (finite sums of words in the letters 1, 2)

def wp_scale(wp, c):
    c = rf(c)
    if c.num.is_zero():
        return {}
    return {w: v * c for w, v in wp.items()}


def wp_add(*wps):
    out = {}
    for wp in wps:
        for w, v in wp.items():
            s = out.get(w, ZERO) + v
            if s.num.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
    return out


def wp_mul(x, y):
    out = {}
    for wx, vx in x.items():
        for wy, vy in y.items():
            w = wx + wy
            s = out.get(w, ZERO) + vx * vy
            if s.num.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
    return out


def wp_chi(wp):
    """The anti-involution fixing the letters: reverse every word."""
    return {reverse(w): v for w, v in wp.items()}


def _letter(i):
    return {(i,): ONE}


# ---------------------------------------------------------------------------
# preset container


class AlgebraPreset:
    """All exact data for one rank-2 algebra; build once via preset()."""

    def __init__(self, name, d2, word1, word2, cartan, word2_roots,
                 root_vectors2, right_rules, left_rules,
                 sigma_polys, pi_matrix, n_gen):
        self.name = name
        self.length = len(word1)
        self.word1 = word1
        self.word2 = word2
        self.d = {1: 1, 2: d2}
        self.cartan = cartan
        self.word2_roots = word2_roots          # (alpha1-coeff, alpha2-coeff) pairs
        self.word1_roots = reverse(word2_roots)
        self.root_vectors2 = root_vectors2      # flat word expressions for b_1..b_l
        # chi sends the word-2 basis monomial for A to the word-1 monomial
        # for reversed A, so the r-th word-1 root vector is chi(b_{l+1-r})
        self.root_vectors1 = tuple(wp_chi(w) for w in reverse(root_vectors2))
        self.right_rules = right_rules          # {letter: rule}, B[A].e_i in word-2 basis
        self.left_rules = left_rules            # {letter: rule}, e_i.B[A]
        self.sigma_polys = sigma_polys          # {(node, tag): t-polynomial}
        self.pi_matrix = pi_matrix              # {node: NxN mode-op sums}
        self.n_gen = n_gen

    def qi(self, node):
        return self.d[node]

    def lam(self, node):
        """lambda_i = (1 - q_i^2)^{-1}."""
        return ONE / rf(LaurentPoly({0: 1, 2 * self.d[node]: -1}))

    def word(self, label):
        if label == 1:
            return self.word1
        if label == 2:
            return self.word2
        raise ValueError(f"word label must be 1 or 2, got {label!r}")

    def conserved2(self, t):
        """The pair of conserved functionals of a word-2 exponent tuple.

        Returns (total alpha_2 content, total alpha_1 content) of the
        associated product of root vectors; both bases of the transition
        problem preserve the pair blockwise.
        """
        m1 = sum(x * r[0] for x, r in zip(t, self.word2_roots))
        m2 = sum(x * r[1] for x, r in zip(t, self.word2_roots))
        return (m2, m1)

    def conserved1(self, t):
        """Same pair for a word-1 exponent tuple."""
        return self.conserved2(reverse(t))

    def conserved(self, label, t):
        return self.conserved1(t) if label == 1 else self.conserved2(t)

    def letter_increment(self, i):
        """How the conserved pair moves under multiplication by e_i."""
        return (1, 0) if i == 2 else (0, 1)

    def __repr__(self):
        return f"AlgebraPreset({self.name})"


# ---------------------------------------------------------------------------
# multiplication rules: direct transcriptions of the one-letter products
# in the word-2 monomial basis.  Terms with vanishing q-int factors are
# dropped before the exponent shift, so no tuple ever goes negative.


def _emit(terms):
    out = []
    for coeff, tup in terms:
        if coeff.num.is_zero():
            continue
        assert min(tup) >= 0, f"negative exponent with nonzero coefficient: {tup}"
        out.append((coeff, tup))
    return out


# -- A2 ---------------------------------------------------------------------

def _a2_right_1(t):
    a, b, c = t
    return [(ONE, (a, b, c + 1))]


def _a2_right_2(t):
    a, b, c = t
    return _emit([
        (qpow(c - b), (a + 1, b, c)),
        (qint(c), (a, b + 1, c - 1)),
    ])


def _a2_left_1(t):
    a, b, c = t
    return _emit([
        (qpow(a - b), (a, b, c + 1)),
        (qint(a), (a - 1, b + 1, c)),
    ])


def _a2_left_2(t):
    a, b, c = t
    return [(ONE, (a + 1, b, c))]


# -- C2 ---------------------------------------------------------------------

def _c2_right_1(t):
    a, b, c, d = t
    return [(ONE, (a, b, c, d + 1))]


def _c2_right_2(t):
    a, b, c, d = t
    inv2 = ONE / qint(2)
    return _emit([
        (qint(d) * qpow(d - 2 * c - 1), (a, b + 1, c, d - 1)),
        (qpow(2 * (d - b)), (a + 1, b, c, d)),
        (-qbracket(1) * qpow(2 * d - 2 * c + 1) * qint(c, 2) * inv2,
         (a, b + 2, c - 1, d)),
        (qint(d - 1) * qint(d), (a, b, c + 1, d - 2)),
    ])


def _c2_left_1(t):
    a, b, c, d = t
    return _emit([
        (qint(2) * qint(b) * qpow(2 * a - b + 1), (a, b - 1, c + 1, d)),
        (qpow(2 * a - 2 * c), (a, b, c, d + 1)),
        (qint(a, 2), (a - 1, b + 1, c, d)),
    ])


def _c2_left_2(t):
    a, b, c, d = t
    return [(ONE, (a + 1, b, c, d))]


# -- G2 ---------------------------------------------------------------------

def _g2_right_1(t):
    a, b, c, d, e, f = t
    return [(ONE, (a, b, c, d, e, f + 1))]


def _g2_right_2(t):
    a, b, c, d, e, f = t
    inv3 = ONE / qint(3)
    return _emit([
        (-qbracket(1) * qint(e, 3) * qpow(-3 * c - d + 3 * f - 1),
         (a, b + 1, c, d + 1, e - 1, f)),
        (qbracket(1) ** 2 * qint(e - 1, 3) * qint(e, 3) * inv3
         * qpow(-3 * e + 3 * f + 3), (a, b, c, d + 3, e - 2, f)),
        (-qbracket(3) * qint(d - 1) * qint(d)
         * qpow(-3 * c - 2 * d + 3 * e + 3 * f + 1),
         (a, b + 1, c + 1, d - 2, e, f)),
        (-qbracket(1) * qint(d) * qpow(-6 * c - d + 3 * (e + f)),
         (a, b + 2, c, d - 1, e, f)),
        (qint(f - 1) * qint(f) * qpow(-3 * e + f - 2),
         (a, b, c, d + 1, e, f - 2)),
        (qint(3) * qint(d) * qint(f) * qpow(2 * f - 2 * d),
         (a, b, c + 1, d - 1, e, f - 1)),
        (qint(f) * qpow(-3 * c - d + 2 * f - 2), (a, b + 1, c, d, e, f - 1)),
        (qpow(-3 * (b + c - e - f)), (a + 1, b, c, d, e, f)),
        (qbracket(1) ** 2 * qint(c, 3) * inv3 * qpow(3 * (-2 * c + e + f + 1)),
         (a, b + 3, c - 1, d, e, f)),
        (-qbracket(3) * qint(d - 2) * qint(d - 1) * qint(d)
         * qpow(3 * (-d + e + f + 2)), (a, b, c + 2, d - 3, e, f)),
        (-qbracket(1) * qint(e, 3) * qint(f) * qpow(-3 * e + 2 * f),
         (a, b, c, d + 2, e - 1, f - 1)),
        (-qint(e, 3) * qpow(-3 * d + 3 * f)
         * (qpow(2 * d + 1) * qint(3) - qint(2, 3)),
         (a, b, c + 1, d, e - 1, f)),
        (qint(f - 2) * qint(f - 1) * qint(f), (a, b, c, d, e + 1, f - 3)),
    ])


def _g2_left_1(t):
    a, b, c, d, e, f = t
    return _emit([
        (-qbracket(1) * qint(c, 3) * qpow(3 * a + b - 3 * c + 2),
         (a, b, c - 1, d + 2, e, f)),
        (qint(3) * qint(b - 1) * qint(b) * qpow(3 * a - b + 2),
         (a, b - 2, c + 1, d, e, f)),
        (qint(3) * qint(d) * qpow(3 * a + b - 2 * d + 2),
         (a, b, c, d - 1, e + 1, f)),
        (qpow(3 * a + b - d - 3 * e), (a, b, c, d, e, f + 1)),
        (qint(2) * qint(b) * qpow(3 * (a - c)), (a, b - 1, c, d + 1, e, f)),
        (qint(a, 3), (a - 1, b + 1, c, d, e, f)),
    ])


def _g2_left_2(t):
    a, b, c, d, e, f = t
    return [(ONE, (a + 1, b, c, d, e, f))]


# ---------------------------------------------------------------------------
# root vectors (flat word expressions, word-2 ordering)


def _roots_a2():
    b1 = _letter(2)
    b3 = _letter(1)
    b2 = wp_add(wp_mul(b3, b1), wp_scale(wp_mul(b1, b3), -qpow(1)))
    return (b1, b2, b3)


def _roots_c2():
    e1, e2 = _letter(1), _letter(2)
    b1 = e2
    b4 = e1
    b2 = wp_add(wp_mul(e1, e2), wp_scale(wp_mul(e2, e1), -qpow(2)))
    b3 = wp_scale(wp_add(wp_mul(e1, b2), wp_scale(wp_mul(b2, e1), -1)),
                  ONE / qint(2))
    return (b1, b2, b3, b4)


def _roots_g2():
    e1, e2 = _letter(1), _letter(2)
    b1 = e2
    b6 = e1
    b2 = wp_add(wp_mul(e1, e2), wp_scale(wp_mul(e2, e1), -qpow(3)))
    b4 = wp_scale(wp_add(wp_mul(e1, b2), wp_scale(wp_mul(b2, e1), -qpow(1))),
                  ONE / qint(2))
    # normalization pinned by b_6 b_4 = [3] b_5 + q^-1 b_4 b_6
    b5 = wp_scale(wp_add(wp_mul(e1, b4), wp_scale(wp_mul(b4, e1), -qpow(-1))),
                  ONE / qint(3))
    b3 = wp_scale(wp_add(wp_mul(b4, b2), wp_scale(wp_mul(b2, b4), -qpow(-1))),
                  ONE / qint(3))
    return (b1, b2, b3, b4, b5, b6)


# ---------------------------------------------------------------------------
# representation data


def _op(*terms):
    """Mode-op sum from (coeff, atoms) pairs."""
    return tuple((rf(c), atoms) for c, atoms in terms)


_ID = _op((1, ()))
_AP = _op((1, ("a+",)))
_AM = _op((1, ("a-",)))
_KK = _op((1, ("k",)))
_Z = ()


def _pi_a2():
    q = LaurentPoly.qpow(1)
    mqk = _op((-q, ("k",)))
    pi1 = [[_AM, _KK, _Z],
           [mqk, _AP, _Z],
           [_Z, _Z, _ID]]
    pi2 = [[_ID, _Z, _Z],
           [_Z, _AM, _KK],
           [_Z, mqk, _AP]]
    return {1: pi1, 2: pi2}


def _pi_c2():
    q = LaurentPoly.qpow(1)
    q2 = LaurentPoly.qpow(2)
    mqk = _op((-q, ("k",)))
    mk = _op((-1, ("k",)))
    qk = _op((q, ("k",)))
    mq2k = _op((-q2, ("k",)))
    pi1 = [[_AM, _KK, _Z, _Z],
           [mqk, _AP, _Z, _Z],
           [_Z, _Z, _AM, mk],
           [_Z, _Z, qk, _AP]]
    pi2 = [[_ID, _Z, _Z, _Z],
           [_Z, _AM, _KK, _Z],
           [_Z, mq2k, _AP, _Z],
           [_Z, _Z, _Z, _ID]]
    return {1: pi1, 2: pi2}


def _pi_g2():
    q = LaurentPoly.qpow(1)
    q2 = LaurentPoly.qpow(2)
    q3 = LaurentPoly.qpow(3)
    two1 = q_int(2)
    mqk = _op((-q, ("k",)))
    mq3k = _op((-q3, ("k",)))
    pi1 = [
        [_AM, _KK, _Z, _Z, _Z, _Z, _Z],
        [mqk, _AP, _Z, _Z, _Z, _Z, _Z],
        [_Z, _Z, _op((1, ("a-", "a-"))), _op((two1, ("k", "a-"))),
         _op((1, ("k", "k"))), _Z, _Z],
        [_Z, _Z, _op((-q, ("a-", "k"))),
         _op((1, ("a-", "a+")), (-1, ("k", "k"))),
         _op((1, ("k", "a+"))), _Z, _Z],
        [_Z, _Z, _op((q2, ("k", "k"))), _op((-two1, ("k", "a+"))),
         _op((1, ("a+", "a+"))), _Z, _Z],
        [_Z, _Z, _Z, _Z, _Z, _AM, _KK],
        [_Z, _Z, _Z, _Z, _Z, mqk, _AP],
    ]
    pi2 = [
        [_ID, _Z, _Z, _Z, _Z, _Z, _Z],
        [_Z, _AM, _KK, _Z, _Z, _Z, _Z],
        [_Z, mq3k, _AP, _Z, _Z, _Z, _Z],
        [_Z, _Z, _Z, _ID, _Z, _Z, _Z],
        [_Z, _Z, _Z, _Z, _AM, _KK, _Z],
        [_Z, _Z, _Z, _Z, mq3k, _AP, _Z],
        [_Z, _Z, _Z, _Z, _Z, _Z, _ID],
    ]
    return {1: pi1, 2: pi2}


def _tpoly(*terms):
    """t-polynomial: sum of coeff * t_{j1 k1} t_{j2 k2} ... products."""
    return tuple((rf(c), tuple(idx)) for c, idx in terms)


def _sigma_a2():
    q = LaurentPoly.qpow(1)
    return {
        (1, "sigma"): _tpoly((1, [(1, 3)])),
        (1, "sigma_e"): _tpoly((1, [(2, 3)])),
        (2, "sigma"): _tpoly((1, [(1, 2), (2, 3)]), (-q, [(2, 2), (1, 3)])),
        (2, "sigma_e"): _tpoly((1, [(1, 2), (3, 3)]), (-q, [(3, 2), (1, 3)])),
    }


def _sigma_c2():
    q = LaurentPoly.qpow(1)
    return {
        (1, "sigma"): _tpoly((1, [(1, 4)])),
        (1, "sigma_e"): _tpoly((1, [(2, 4)])),
        (2, "sigma"): _tpoly((1, [(1, 3), (2, 4)]), (-q, [(2, 3), (1, 4)])),
        (2, "sigma_e"): _tpoly((1, [(1, 3), (3, 4)]), (-q, [(3, 3), (1, 4)])),
    }


def _sigma_g2():
    q = LaurentPoly.qpow(1)
    return {
        (1, "sigma"): _tpoly((1, [(1, 7)])),
        (1, "sigma_e"): _tpoly((1, [(2, 7)])),
        (2, "sigma"): _tpoly((1, [(2, 6), (1, 7)]), (-q, [(2, 7), (1, 6)])),
        (2, "sigma_e"): _tpoly((1, [(3, 6), (1, 7)]), (-q, [(3, 7), (1, 6)])),
    }


# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def preset(name):
    if name == "A2":
        return AlgebraPreset(
            name="A2", d2=1,
            word1=(1, 2, 1), word2=(2, 1, 2),
            cartan={(1, 2): -1, (2, 1): -1},
            word2_roots=((0, 1), (1, 1), (1, 0)),
            root_vectors2=_roots_a2(),
            right_rules={1: _a2_right_1, 2: _a2_right_2},
            left_rules={1: _a2_left_1, 2: _a2_left_2},
            sigma_polys=_sigma_a2(),
            pi_matrix=_pi_a2(),
            n_gen=3,
        )
    if name == "C2":
        return AlgebraPreset(
            name="C2", d2=2,
            word1=(1, 2, 1, 2), word2=(2, 1, 2, 1),
            cartan={(1, 2): -2, (2, 1): -1},
            word2_roots=((0, 1), (1, 1), (2, 1), (1, 0)),
            root_vectors2=_roots_c2(),
            right_rules={1: _c2_right_1, 2: _c2_right_2},
            left_rules={1: _c2_left_1, 2: _c2_left_2},
            sigma_polys=_sigma_c2(),
            pi_matrix=_pi_c2(),
            n_gen=4,
        )
    if name == "G2":
        return AlgebraPreset(
            name="G2", d2=3,
            word1=(1, 2, 1, 2, 1, 2), word2=(2, 1, 2, 1, 2, 1),
            cartan={(1, 2): -3, (2, 1): -1},
            word2_roots=((0, 1), (1, 1), (3, 2), (2, 1), (3, 1), (1, 0)),
            root_vectors2=_roots_g2(),
            right_rules={1: _g2_right_1, 2: _g2_right_2},
            left_rules={1: _g2_left_1, 2: _g2_left_2},
            sigma_polys=_sigma_g2(),
            pi_matrix=_pi_g2(),
            n_gen=7,
        )
    raise ValueError(f"unknown algebra {name!r}; expected one of {ALGEBRAS}")


def zero_tuple(name):
    return (0,) * preset(name).length


@lru_cache(maxsize=None)
def tuples_with_weight(name, label, weight):
    """All exponent tuples of the word with the given conserved pair.

    Returned in ascending lexicographic order (the DFS below increments
    the leftmost position slowest).
    """
    p = preset(name)
    roots = p.word2_roots if label == 2 else p.word1_roots
    out = []
    acc = [0] * p.length

    def rec(pos, m2, m1):
        if pos == p.length:
            if m2 == 0 and m1 == 0:
                out.append(tuple(acc))
            return
        r1, r2 = roots[pos]
        top = min(m2 // r2 if r2 else m2 + m1,
                  m1 // r1 if r1 else m2 + m1)
        for x in range(top + 1):
            acc[pos] = x
            rec(pos + 1, m2 - x * r2, m1 - x * r1)
        acc[pos] = 0

    rec(0, weight[0], weight[1])
    return tuple(out)


def weights_up_to(name, max_height):
    """All realizable conserved pairs (m2, m1) with m2 + m1 <= max_height.

    Every such pair is realizable in both words (take the two pure
    simple-root slots), so no emptiness filter is needed.
    """
    return [(m2, h - m2) for h in range(max_height + 1)
            for m2 in range(h + 1)]


def serre_relations(name):
    """The q-Serre sums as word expressions (each must normal-order to zero).

    For each ordered pair (i, j), i != j, returns
    sum_r (-1)^r [n choose r]_{q_i} e_i^r e_j e_i^{n-r} with n = 1 - a_ij
    (the divided-power relation cleared of its factorial denominator).
    """
    p = preset(name)
    out = []
    for (i, j), a in p.cartan.items():
        n = 1 - a
        wp = {}
        for r in range(n + 1):
            word = (i,) * r + (j,) + (i,) * (n - r)
            coeff = qbinom(n, r, p.d[i])
            if r % 2:
                coeff = -coeff
            wp[word] = wp.get(word, ZERO) + coeff
        out.append(((i, j), wp))
    return out
