"""Oscillator algebra, representation path sums, and the xi operators.

Display formulas are transcribed as whitespace-separated tokens read in the
printed order ("a-1 a-1 k1" for (a-_1)^2 k_1); a trailing apostrophe marks
an inverse k.  The transcriber multiplies the atoms mechanically, so the
non-canonical orderings in the sources are handled by the algebra itself.
"""

import re
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qpbw import fock
from qpbw.fock import (
    apply_op, letters_arg, op_add, op_from_terms, op_identity, op_mul,
    op_scale, pi_generator, sigma_e_op, sigma_op, word_arg, xi_apply,
    xi_divided_apply, xi_matrix, xi_op,
)
from qpbw.fock import _mono_apply, _mono_mul_word
from qpbw.pbw import rho_matrix
from qpbw.presets import ONE, preset, qfact, qint, qpow, rf

_TOKEN = re.compile(r"([aA][+-]|[kK])(\d)(')?$")


def term(name, word, spec, coeff=1):
    """One displayed product -> (coeff, ((slot, atom), ...))."""
    w = letters_arg(name, word)
    p = preset(name)
    factors = []
    for tok in spec.split():
        m = _TOKEN.match(tok)
        if m is None:
            raise ValueError(f"bad token {tok!r}")
        sym, slot, inv = m.group(1), int(m.group(2)), m.group(3)
        # capitalization in the sources tracks the oscillator base
        assert sym[0].isupper() == (p.d[w[slot - 1]] > 1), tok
        if sym[0] in "aA":
            assert not inv
            factors.append((slot, sym.lower()))
        else:
            factors.append((slot, "k-" if inv else "k"))
    return rf(coeff), tuple(factors)


def disp(name, word, *specs):
    """Operator from displayed terms; each spec is "tokens" or (tokens, c)."""
    terms = []
    for s in specs:
        if isinstance(s, str):
            terms.append(term(name, word, s))
        else:
            terms.append(term(name, word, s[0], s[1]))
    return op_from_terms(name, word, terms)


# ---------------------------------------------------------------------------
# the single-mode algebra


@pytest.mark.parametrize("d", [1, 2, 3])
def test_oscillator_relations(d):
    def mono(atoms):
        return _mono_mul_word((0, 0, 0), atoms, d)

    # k a+ = q^d a+ k,  k a- = q^-d a- k
    assert mono(("k", "a+")) == {m: c * qpow(d) for m, c in mono(("a+", "k")).items()}
    assert mono(("k", "a-")) == {m: c * qpow(-d) for m, c in mono(("a-", "k")).items()}
    # a- a+ = 1 - q^2d k^2,  a+ a- = 1 - k^2
    assert mono(("a-", "a+")) == {(0, 0, 0): ONE, (0, 2, 0): -qpow(2 * d)}
    assert mono(("a+", "a-")) == {(0, 0, 0): ONE, (0, 2, 0): -ONE}


@given(st.integers(1, 3),
       st.lists(st.sampled_from(["a+", "a-", "k", "k-"]), max_size=7),
       st.integers(0, 8))
@settings(max_examples=120, deadline=None)
def test_mono_words_act_consistently(d, atoms, m):
    """Multiplying atom words then applying == applying atom by atom."""
    op = _mono_mul_word((0, 0, 0), atoms, d)
    total = {}
    for mono, c in op.items():
        r = _mono_apply(mono, m, d)
        if r is None:
            continue
        coeff, n = r
        s = total.get(n, rf(0)) + c * coeff
        if s.num.is_zero():
            total.pop(n, None)
        else:
            total[n] = s
    direct = {m: ONE}
    for atom in reversed(atoms):
        nxt = {}
        for occ, c in direct.items():
            r = _mono_apply(_mono_mul_word((0, 0, 0), (atom,), d).popitem()[0], occ, d)
            if r is None:
                continue
            # single atoms have coefficient 1 in canonical form except k-
            coeff, n = r
            base = _mono_mul_word((0, 0, 0), (atom,), d).popitem()[1]
            s = nxt.get(n, rf(0)) + c * coeff * base
            if s.num.is_zero():
                nxt.pop(n, None)
            else:
                nxt[n] = s
        direct = nxt
    assert total == direct


def test_ket_actions():
    for d in (1, 2, 3):
        for m in range(9):
            assert _mono_apply((1, 0, 0), m, d) == (ONE, m + 1)
            assert _mono_apply((0, 1, 0), m, d) == (qpow(d * m), m)
            assert _mono_apply((0, -1, 0), m, d) == (qpow(-d * m), m)
            low = _mono_apply((0, 0, 1), m, d)
            if m == 0:
                assert low is None
            else:
                assert low == (ONE - qpow(2 * d * m), m - 1)


def test_scaled_ket_actions():
    # raise |m>> = lambda^-1 q_i^m |m+1>>, lower |m>> = [m]_i |m-1>>
    cases = [("A2", 1, 1, 1), ("C2", 1, 2, 2), ("G2", 1, 2, 3)]
    for name, word, slot, d in cases:
        p = preset(name)
        w = letters_arg(name, word)
        up = disp(name, word, ("a+%d" % slot).replace("a+", "A+" if d > 1 else "a+"))
        down = disp(name, word, ("a-%d" % slot).replace("a-", "A-" if d > 1 else "a-"))
        diag = disp(name, word, ("k%d" % slot) if d == 1 else ("K%d" % slot))
        for m in range(5):
            ket = {tuple(m if s == slot - 1 else 0 for s in range(len(w))): ONE}
            (up_t,) = [t for t in ket][:1]
            raised = apply_op(name, word, up, ket, tilde=True)
            lowered = apply_op(name, word, down, ket, tilde=True)
            diagged = apply_op(name, word, diag, ket, tilde=True)
            lam = p.lam(2 if d > 1 else 1)
            tgt = tuple(m + 1 if s == slot - 1 else 0 for s in range(len(w)))
            assert raised == {tgt: qpow(d * m) / lam}
            assert diagged == {up_t: qpow(d * m)}
            if m == 0:
                assert lowered == {}
            else:
                tgt = tuple(m - 1 if s == slot - 1 else 0 for s in range(len(w)))
                assert lowered == {tgt: qint(m, d)}


def test_op_from_terms_respects_display_order():
    # (a-)^2 k reorders to q^2 k (a-)^2 in canonical form
    op = op_from_terms("A2", 1, [(ONE, ((1, "a-"), (1, "a-"), (1, "k")))])
    assert op == {((0, 1, 2), (0, 0, 0), (0, 0, 0)): qpow(2)}


@given(st.lists(st.sampled_from(["a+", "a-", "k"]), min_size=1, max_size=4),
       st.lists(st.sampled_from(["a+", "a-", "k"]), min_size=1, max_size=4),
       st.lists(st.sampled_from(["a+", "a-", "k"]), min_size=1, max_size=4))
@settings(max_examples=60, deadline=None)
def test_op_mul_associative_and_represents(w1, w2, w3):
    name, word = "C2", 1
    x = op_from_terms(name, word, [(ONE, tuple((1, a) for a in w1))])
    y = op_from_terms(name, word, [(ONE, tuple((2, a) for a in w2))])
    z = op_from_terms(name, word, [(ONE, tuple((1, a) for a in w3) + tuple((2, a) for a in w2))])
    assert op_mul(name, word, op_mul(name, word, x, y), z) \
        == op_mul(name, word, x, op_mul(name, word, y, z))
    ket = {(1, 2, 0, 1): ONE}
    via_product = apply_op(name, word, op_mul(name, word, x, z), ket)
    stepwise = apply_op(name, word, x, apply_op(name, word, z, ket))
    assert via_product == stepwise


# ---------------------------------------------------------------------------
# representation path sums


def test_pi_generator_examples():
    assert pi_generator("C2", (2,), 2, 3) == {((0, 1, 0),): ONE}
    assert pi_generator("A2", 1, 1, 3) \
        == {((0, 1, 0), (0, 1, 0), (0, 0, 0)): ONE}
    op = pi_generator("A2", (1, 2, 1), 1, 3)
    assert apply_op("A2", (1, 2, 1), op, {(0, 0, 0): ONE}) == {(0, 0, 0): ONE}
    with pytest.raises(ValueError):
        pi_generator("A2", 1, 0, 3)
    with pytest.raises(ValueError):
        pi_generator("C2", 1, 1, 5)


def test_word_arguments():
    assert word_arg("C2", 2) == (2, 1, 2, 1)
    assert word_arg("C2", (1, 2, 1, 2)) == (1, 2, 1, 2)
    with pytest.raises(ValueError):
        word_arg("C2", (1, 2))
    with pytest.raises(ValueError):
        word_arg("A2", 3)
    assert letters_arg("A2", (2, 2, 1)) == (2, 2, 1)
    with pytest.raises(ValueError):
        letters_arg("A2", (1, 3))
    with pytest.raises(ValueError):
        letters_arg("A2", ())


# ---------------------------------------------------------------------------
# sigma, sigma e and xi against the displayed formulas


def test_sigma_displays_a2():
    assert sigma_op("A2", 1, 1) == disp("A2", 1, "k1 k2")
    assert sigma_e_op("A2", 1, 1) == disp("A2", 1, "a+1 k2")
    assert sigma_op("A2", 1, 2) == disp("A2", 1, "k2 k3")
    assert sigma_e_op("A2", 1, 2) == disp("A2", 1, "a-1 a+2 k3", "k1 a+3")
    # the second word just swaps the roles of the two nodes here
    for i in (1, 2):
        assert sigma_op("A2", 2, i) == sigma_op("A2", 1, 3 - i)
        assert sigma_e_op("A2", 2, i) == sigma_e_op("A2", 1, 3 - i)


def test_sigma_displays_c2():
    two1 = qint(2, 1)
    assert sigma_op("C2", 1, 1) == disp("C2", 1, ("k1 K2 k3", -1))
    assert sigma_e_op("C2", 1, 1) == disp("C2", 1, ("a+1 K2 k3", -1))
    assert sigma_op("C2", 1, 2) == disp("C2", 1, ("K2 k3 k3 K4", -1))
    assert sigma_e_op("C2", 1, 2) == disp(
        "C2", 1,
        ("a-1 a-1 A+2 k3 k3 K4", -1),
        ("a-1 k1 a+3 k3 K4", -two1),
        ("k1 k1 A-2 a+3 a+3 K4", -1),
        ("k1 k1 K2 A+4", -1))
    assert sigma_op("C2", 2, 1) == disp("C2", 2, ("k2 K3 k4", -1))
    assert sigma_e_op("C2", 2, 1) == disp(
        "C2", 2, ("K1 k2 a+4", -1), ("K1 a-2 A+3 k4", -1), ("A-1 a+2 K3 k4", -1))
    assert sigma_op("C2", 2, 2) == disp("C2", 2, ("K1 k2 k2 K3", -1))
    assert sigma_e_op("C2", 2, 2) == disp("C2", 2, ("A+1 k2 k2 K3", -1))


def test_sigma_displays_g2():
    # node 2 evaluates to -q times the printed operator on both words; the
    # factor is shared by sigma_2 and sigma_2 e_2, so it drops out of xi_2
    mq = -qpow(1)
    two2, three1 = qint(2, 3), qint(3, 1)
    assert sigma_op("G2", 1, 1) == disp("G2", 1, "k1 K2 k3 k3 K4 k5")
    assert sigma_e_op("G2", 1, 1) == disp("G2", 1, "a+1 K2 k3 k3 K4 k5")
    assert sigma_op("G2", 1, 2) == op_scale(
        disp("G2", 1, "K2 k3 k3 k3 K4 K4 k5 k5 k5 K6"), mq)
    assert sigma_e_op("G2", 1, 2) == op_scale(disp(
        "G2", 1,
        "k1 k1 k1 K2 K2 k3 k3 k3 K4 A+6",
        ("k1 k1 k1 A-2 K2 A+4 K4 k5 k5 k5 K6", two2),
        "a-1 a-1 a-1 A+2 k3 k3 k3 K4 K4 k5 k5 k5 K6",
        ("a-1 a-1 k1 a+3 k3 k3 K4 K4 k5 k5 k5 K6", three1),
        ("a-1 k1 k1 K2 k3 k3 K4 a+5 k5 k5 K6", three1),
        ("k1 k1 k1 A-2 K2 k3 k3 A+4 K4 k5 k5 k5 K6", -qpow(1) * three1),
        ("k1 k1 k1 K2 K2 a-3 k3 k3 a+5 a+5 k5 K6", three1),
        "k1 k1 k1 K2 K2 k3 k3 k3 A-4 a+5 a+5 a+5 K6",
        ("a-1 k1 k1 A-2 a+3 a+3 k3 K4 K4 k5 k5 k5 K6", three1),
        ("a-1 k1 k1 K2 a-3 k3 A+4 K4 k5 k5 k5 K6", three1),
        "k1 k1 k1 A-2 A-2 a+3 a+3 a+3 K4 K4 k5 k5 k5 K6",
        ("k1 k1 k1 A-2 K2 a+3 k3 K4 a+5 k5 k5 K6", three1),
        "k1 k1 k1 K2 K2 a-3 a-3 a-3 A+4 A+4 k5 k5 k5 K6",
        ("k1 k1 k1 K2 K2 a-3 a-3 k3 A+4 a+5 k5 k5 K6", three1)), mq)
    assert sigma_op("G2", 2, 1) == disp("G2", 2, "k2 K3 k4 k4 K5 k6")
    assert sigma_op("G2", 2, 2) == op_scale(
        disp("G2", 2, "K1 k2 k2 k2 K3 K3 k4 k4 k4 K5"), mq)
    two1 = qint(2, 1)
    assert sigma_e_op("G2", 2, 1) == disp(
        "G2", 2,
        "K1 k2 k2 K3 k4 a+6",
        "A-1 a+2 K3 k4 k4 K5 k6",
        "K1 k2 k2 K3 a-4 A+5 k6",
        "K1 a-2 a-2 A+3 k4 k4 K5 k6",
        ("K1 a-2 k2 a+4 k4 K5 k6", two1),
        "K1 k2 k2 A-3 a+4 a+4 K5 k6")
    assert sigma_e_op("G2", 2, 2) == op_scale(
        disp("G2", 2, "A+1 k2 k2 k2 K3 K3 k4 k4 k4 K5"), mq)


def test_sigma_commutation():
    for name in ("A2", "C2", "G2"):
        p = preset(name)
        for word in (1, 2):
            s = {i: sigma_op(name, word, i) for i in (1, 2)}
            t = {i: sigma_e_op(name, word, i) for i in (1, 2)}
            mul = lambda a, b: op_mul(name, word, a, b)
            assert mul(s[1], s[2]) == mul(s[2], s[1])
            for i in (1, 2):
                for j in (1, 2):
                    if i == j:
                        # sigma_i tau_i = q_i tau_i sigma_i
                        assert mul(s[i], t[i]) \
                            == op_scale(mul(t[i], s[i]), qpow(p.d[i]))
                    else:
                        assert mul(s[i], t[j]) == mul(t[j], s[i])


def test_xi_displays():
    lam = {(n, i): preset(n).lam(i) for n in ("A2", "C2", "G2") for i in (1, 2)}
    assert xi_op("A2", 1, 1) == op_scale(disp("A2", 1, "a+1 k1'"), lam["A2", 1])
    assert xi_op("A2", 1, 2) == op_scale(
        disp("A2", 1, "a-1 a+2 k2'", "k1 k2' a+3 k3'"), lam["A2", 2])
    for i in (1, 2):
        assert xi_op("A2", 2, i) == xi_op("A2", 1, 3 - i)

    two1 = qint(2, 1)
    assert xi_op("C2", 1, 1) == op_scale(disp("C2", 1, "a+1 k1'"), lam["C2", 1])
    assert xi_op("C2", 1, 2) == op_scale(disp(
        "C2", 1,
        "a-1 a-1 A+2 K2'",
        "k1 k1 A-2 K2' a+3 a+3 k3' k3'",
        ("a-1 k1 K2' a+3 k3'", two1),
        "k1 k1 k3' k3' A+4 K4'"), lam["C2", 2])
    assert xi_op("C2", 2, 1) == op_scale(disp(
        "C2", 2,
        "A-1 a+2 k2'",
        "K1 a-2 k2' A+3 K3'",
        "K1 K3' a+4 k4'"), lam["C2", 1])
    assert xi_op("C2", 2, 2) == op_scale(disp("C2", 2, "A+1 K1'"), lam["C2", 2])

    two2, three1 = qint(2, 3), qint(3, 1)
    assert xi_op("G2", 1, 1) == op_scale(disp("G2", 1, "a+1 k1'"), lam["G2", 1])
    assert xi_op("G2", 1, 2) == op_scale(disp(
        "G2", 1,
        "a-1 a-1 a-1 A+2 K2'",
        ("k1 k1 k1 A-2 k3' k3' k3' A+4 K4'", two2),
        ("k1 k1 k1 A-2 k3' A+4 K4'", -qpow(1) * three1),
        ("a-1 a-1 k1 K2' a+3 k3'", three1),
        ("a-1 k1 k1 a-3 k3' k3' A+4 K4'", three1),
        ("a-1 k1 k1 k3' K4' a+5 k5'", three1),
        "k1 k1 k1 K2 K4' k5' k5' k5' A+6 K6'",
        ("a-1 k1 k1 A-2 K2' a+3 a+3 k3' k3'", three1),
        ("k1 k1 k1 A-2 a+3 k3' k3' K4' a+5 k5'", three1),
        "k1 k1 k1 A-2 A-2 K2' a+3 a+3 a+3 k3' k3' k3'",
        ("k1 k1 k1 K2 a-3 k3' K4' K4' a+5 a+5 k5' k5'", three1),
        "k1 k1 k1 K2 A-4 K4' K4' a+5 a+5 a+5 k5' k5' k5'",
        "k1 k1 k1 K2 a-3 a-3 a-3 k3' k3' k3' A+4 A+4 K4' K4'",
        ("k1 k1 k1 K2 a-3 a-3 k3' k3' A+4 K4' K4' a+5 k5'", three1)),
        lam["G2", 2])
    two1 = qint(2, 1)
    assert xi_op("G2", 2, 1) == op_scale(disp(
        "G2", 2,
        "A-1 a+2 k2'",
        ("K1 a-2 K3' a+4 k4'", two1),
        "K1 a-2 a-2 k2' A+3 K3'",
        "K1 k2 a-4 k4' k4' A+5 K5'",
        "K1 k2 k4' K5' a+6 k6'",
        "K1 k2 A-3 K3' a+4 a+4 k4' k4'"), lam["G2", 1])
    assert xi_op("G2", 2, 2) == op_scale(disp("G2", 2, "A+1 K1'"), lam["G2", 2])


def test_xi_ket_action_a2():
    for a in range(4):
        for b in range(4):
            for c in range(3):
                ket = {(a, b, c): ONE}
                assert xi_apply("A2", 1, 1, ket) == {(a + 1, b, c): ONE}
                expect = {(a, b, c + 1): qpow(a - b)}
                if a:
                    expect[(a - 1, b + 1, c)] = qint(a, 1)
                assert xi_apply("A2", 1, 2, ket) == expect


def test_xi_divided_powers():
    vac = {(0, 0, 0): ONE}
    assert xi_divided_apply("A2", 1, 1, vac, 3) \
        == {(3, 0, 0): ONE / qfact(3, 1)}
    # q-binomial spreading: xi_2^(2) on a mixed ket stays exact
    out = xi_divided_apply("A2", 1, 2, {(2, 0, 0): ONE}, 2)
    direct = xi_apply("A2", 1, 2, xi_apply("A2", 1, 2, {(2, 0, 0): ONE}))
    assert out == {A: c / qfact(2, 1) for A, c in direct.items()}


def test_key_property_spot():
    cases = [("A2", 1, (1, 1)), ("A2", 2, (1, 1)), ("C2", 1, (2, 1)),
             ("C2", 2, (1, 2)), ("G2", 1, (1, 1)), ("G2", 2, (1, 2))]
    for name, label, w in cases:
        for i in (1, 2):
            assert rho_matrix(name, label, i, w) == xi_matrix(name, label, i, w)


def test_sigma_is_invertible_monomial():
    for name in ("A2", "C2", "G2"):
        for word in (1, 2):
            for i in (1, 2):
                op = sigma_op(name, word, i)
                assert len(op) == 1
                (monos, coeff), = op.items()
                assert all(x == 0 and y == 0 for x, _, y in monos)
                assert coeff.den.is_one() and coeff.num.is_monomial()
