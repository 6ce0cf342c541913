"""Normal-form arithmetic in the positive half of the quantized algebra.

Elements are kept in the word-2 monomial basis: a PBW vector is a dict
{exponent tuple -> RationalFunction} representing sum c_A B[A] with
B[A] = b_1^{a_1} ... b_l^{a_l} (plain powers, no factorial normalization).
Multiplying by a generator on either side is a table lookup in the preset
rules; everything else (the other word's monomials, transition matrices)
is built from that single primitive.

Word-1 monomials are products of the chi-reversed root vectors, so their
normal-ordered form materializes the change of basis: the coefficient of
B[B] in build_pbw(1, A) is gamma-tilde^A_B.  Dividing the rows and columns
by the appropriate q-factorials turns this into the divided-power matrix
gamma, whose entries are integer polynomials in q.
"""

from functools import lru_cache

from .qfield import q_factorial
from .presets import (
    preset, rf, ONE, reverse, serre_relations,
    tuples_with_weight, weights_up_to, zero_tuple,
)


# ---------------------------------------------------------------------------
# the multiplication primitive


def mul_letter(name, v, letter, side="right"):
    """Multiply a PBW vector by one generator on the given side."""
    p = preset(name)
    if side == "right":
        rule = p.right_rules[letter]
    elif side == "left":
        rule = p.left_rules[letter]
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    out = {}
    for t, c in v.items():
        for coeff, u in rule(t):
            s = out.get(u)
            s = coeff * c if s is None else s + coeff * c
            if s.num.is_zero():
                out.pop(u, None)
            else:
                out[u] = s
    return out


def mul_word_expr(name, v, wp, side="right"):
    """v . wp (side right) or wp . v (side left) for a word expression wp."""
    total = {}
    for w, c in wp.items():
        cur = v
        for i in (w if side == "right" else reverse(w)):
            cur = mul_letter(name, cur, i, side)
        for t, x in cur.items():
            s = total.get(t)
            s = x * c if s is None else s + x * c
            if s.num.is_zero():
                total.pop(t, None)
            else:
                total[t] = s
    return total


def normal_order(name, wp):
    """Expand a word expression in the word-2 monomial basis.

    Right-folds the right-multiplication rules, building each word
    left-to-right from the empty monomial.
    """
    unit = {zero_tuple(name): ONE}
    return mul_word_expr(name, unit, wp, side="right")


# ---------------------------------------------------------------------------
# PBW monomials of either word


@lru_cache(maxsize=None)
def _word1_monomial(name, A):
    p = preset(name)
    r = max((k for k in range(p.length) if A[k]), default=-1)
    if r < 0:
        return {zero_tuple(name): ONE}
    prev = _word1_monomial(name, A[:r] + (A[r] - 1,) + A[r + 1:])
    return mul_word_expr(name, prev, p.root_vectors1[r], side="right")


def build_pbw(name, label, A):
    """The monomial c_1^{a_1}...c_l^{a_l} of the given word, normal-ordered.

    For word 2 this is already a basis monomial; for word 1 the result's
    coefficients are the gamma-tilde^A_B row.
    """
    p = preset(name)
    A = tuple(A)
    if len(A) != p.length or min(A) < 0:
        raise ValueError(f"exponent tuple {A} invalid for {name}")
    if label == 2:
        return {A: ONE}
    if label != 1:
        raise ValueError(f"word label must be 1 or 2, got {label!r}")
    return dict(_word1_monomial(name, A))


# ---------------------------------------------------------------------------
# left-multiplication matrices


def rho_matrix(name, label, letter, weight):
    """Matrix of left multiplication by e_letter on tilde monomials.

    Returns (rows, cols, entries): cols are the word-`label` tuples of the
    source weight, rows those of the weight incremented by the letter's
    root, entries a dict {(row tuple, col tuple) -> coefficient}.

    Word 2 reads the left rules directly; word 1 conjugates the word-2
    right rules by the reversing anti-involution, since
    e_i . E^A_1 = chi(E^{rev A}_2 . e_i).
    """
    p = preset(name)
    cols = tuples_with_weight(name, label, weight)
    inc = p.letter_increment(letter)
    target = (weight[0] + inc[0], weight[1] + inc[1])
    rows = tuples_with_weight(name, label, target)
    entries = {}
    for A in cols:
        if label == 2:
            terms = p.left_rules[letter](A)
        else:
            terms = [(c, reverse(t))
                     for c, t in p.right_rules[letter](reverse(A))]
        for coeff, t in terms:
            key = (t, A)
            s = entries.get(key)
            entries[key] = coeff if s is None else s + coeff
    return rows, cols, entries


# ---------------------------------------------------------------------------
# transition matrices


def factorial_product(name, label, t):
    """prod_k [t_k]! in the base attached to the word's k-th letter."""
    p = preset(name)
    word = p.word(label)
    out = ONE
    for x, i in zip(t, word):
        out = out * rf(q_factorial(x, p.d[i]))
    return out


class TransitionBlock:
    """gamma-tilde and gamma on one weight block.

    rows: word-1 exponent tuples (lexicographic); cols: word-2 tuples.
    Entry (A, B) expands the word-1 monomial of A over word-2 monomials.
    """

    def __init__(self, name, weight, rows, cols, tilde, gamma):
        self.name = name
        self.weight = weight
        self.rows = rows
        self.cols = cols
        self._tilde = tilde
        self._gamma = gamma

    def tilde(self, A, B):
        return self._tilde.get((tuple(A), tuple(B)), rf(0))

    def gamma(self, A, B):
        return self._gamma.get((tuple(A), tuple(B)), rf(0))


@lru_cache(maxsize=None)
def transition_block(name, weight):
    rows = tuples_with_weight(name, 1, weight)
    cols = tuples_with_weight(name, 2, weight)
    if not rows or not cols:
        raise ValueError(f"no tuples of weight {weight} for {name}")
    tilde = {}
    gamma = {}
    inv_row = {A: ONE / factorial_product(name, 1, A) for A in rows}
    col_fact = {B: factorial_product(name, 2, B) for B in cols}
    for A in rows:
        v = _word1_monomial(name, A)
        for B, c in v.items():
            tilde[(A, B)] = c
            gamma[(A, B)] = c * col_fact[B] * inv_row[A]
    return TransitionBlock(name, weight, rows, cols, tilde, gamma)


def serre_residuals(name):
    """Normal-ordered q-Serre sums; all must be empty dicts."""
    return [(pair, normal_order(name, wp))
            for pair, wp in serre_relations(name)]
