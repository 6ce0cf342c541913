"""Blockwise intertwiner recursion, checked tables, golden columns."""

import pytest

from qpbw.intertwiner import (
    CheckedTable, PhiTable, checked_table, compute_phi,
    pbw_expansion_identity, solve_exact,
)
from qpbw.pbw import transition_block
from qpbw.presets import ONE, ZERO, preset, qpow, reverse, rf, weights_up_to, zero_tuple
from qpbw.qfield import canonical_string, d_norm

Q = qpow(1)


def val(s):
    """Evaluate a coefficient written in source form, e.g. "q^2*(1-q^4)"."""
    return eval(s.replace("^", "**"), {"q": Q})


GOLDEN = {
    "A2": ((3, 1, 4), {
        (0, 4, 1): "-q^2*(1-q^4)*(1-q^6)*(1-q^8)",
        (1, 3, 2): "(1-q^6)*(1-q^8)*(1-q^4-q^6-q^8-q^10)",
        (2, 2, 3): "q^2*(1+q^2)*(1+q^4)*(1-q^6)*(1-q^6-q^10)",
        (3, 1, 4): "q^6*(1+q^2+q^4-q^8-q^10-q^12-q^14)",
        (4, 0, 5): "q^12",
    }),
    "C2": ((2, 1, 1, 0), {
        (1, 3, 0, 0): "q^8*(1-q^8)",
        (2, 1, 1, 0): "-q^4*(1-q^8+q^14)",
        (2, 2, 0, 1): "-q^6*(1+q^2)*(1-q^2+q^4-q^6-q^10)",
        (3, 0, 1, 1): "1-q^8+q^14",
        (3, 1, 0, 2): "-q^10*(1-q+q^2)*(1+q+q^2)",
        (4, 0, 0, 3): "q^4",
    }),
    "G2": ((0, 1, 0, 1, 0, 1), {
        (0, 0, 0, 2, 0, 0): "q^4*(1-q^2)*(1-q^2-q^4-q^6)",
        (0, 0, 1, 0, 0, 1): "-q*(1-q^2)*(1-q^2-q^4+q^8+q^10)",
        (0, 1, 0, 0, 1, 0): "-q*(1-q^2)*(1-q^2-q^4+q^8+q^10)",
        (0, 1, 0, 1, 0, 1): "1-2*q^2+2*q^6+3*q^8-2*q^12-2*q^14-q^16",
        (0, 2, 0, 0, 0, 2): "q^4*(-2+2*q^6+q^8+q^10)",
        (1, 0, 0, 0, 1, 1): "-q^3*(1-q^2)*(1-q^6-q^8)",
        (1, 0, 0, 1, 0, 2): "q*(1-q^2-q^4-q^6+q^10+q^12+q^14)",
        (1, 1, 0, 0, 0, 3): "q*(1-q+q^2)*(1+q+q^2)*(1-q^2-q^8)",
        (2, 0, 0, 0, 0, 4): "q^4",
    }),
}


# ---------------------------------------------------------------------------
# the exact solver


def test_solve_exact_unique():
    P = [[rf(1), Q], [ZERO, rf(1)]]
    Qm = [[Q * Q], [rf(3)]]
    Y = solve_exact(P, Qm)
    assert Y == [[Q * Q - rf(3) * Q], [rf(3)]]


def test_solve_exact_overdetermined_consistent():
    # third row is the sum of the first two
    P = [[ONE, ZERO], [ZERO, ONE - Q], [ONE, ONE - Q]]
    Qm = [[Q], [Q ** 3], [Q + Q ** 3]]
    assert solve_exact(P, Qm) == [[Q], [Q ** 3 / (ONE - Q)]]


def test_solve_exact_rank_deficient():
    with pytest.raises(ArithmeticError):
        solve_exact([[ONE, Q], [Q, Q * Q]], [[ONE], [Q]])


def test_solve_exact_inconsistent():
    with pytest.raises(ArithmeticError):
        solve_exact([[ONE, ZERO], [ZERO, ONE], [ONE, ONE]],
                    [[ONE], [ONE], [Q]])


def test_solve_exact_underdetermined():
    with pytest.raises(ArithmeticError):
        solve_exact([[ONE, Q]], [[ONE]])


# ---------------------------------------------------------------------------
# the recursion


def test_zero_block_is_one():
    for name in ("A2", "C2", "G2"):
        z = zero_tuple(name)
        rows, cols, ent = PhiTable(name).tilde_block((0, 0))
        assert rows == (z,) and cols == (z,)
        assert ent == {(z, z): ONE}


def test_a2_block_11_values():
    phi = PhiTable("A2")
    rows, cols, ent = phi.tilde_block((1, 1))
    assert rows == ((0, 1, 0), (1, 0, 1)) and cols == rows
    assert ent[((0, 1, 0), (0, 1, 0))] == -Q
    assert ent[((0, 1, 0), (1, 0, 1))] == ONE
    assert ent[((1, 0, 1), (0, 1, 0))] == ONE - Q * Q
    assert ent[((1, 0, 1), (1, 0, 1))] == Q


def test_transpose_of_pbw_tilde():
    for name, hmax in (("A2", 4), ("C2", 4), ("G2", 3)):
        phi = PhiTable(name)
        for w in weights_up_to(name, hmax):
            rows, cols, _ = phi.tilde_block(w)
            tb = transition_block(name, w)
            for C in rows:
                for B in cols:
                    assert phi.phi_tilde(C, B) == tb.tilde(B, C), (name, w, C, B)


def test_divided_power_conversion():
    phi = PhiTable("A2")
    p = preset("A2")
    rows, cols, div = phi.block((1, 1))
    for C in rows:
        for B in cols:
            num = den = ONE
            for m, node in zip(C, p.word2):
                num = num * d_norm(m, p.d[node])
            for m, node in zip(B, p.word1):
                den = den * d_norm(m, p.d[node])
            want = phi.phi_tilde(C, B) * num / den
            assert div.get((C, B), ZERO) == want


def test_phi_conservation_short_circuit():
    phi = PhiTable("A2")
    # (1,0,0) on word 1 reverses to (0,0,1): conserved pair (0,1) vs (1,0)
    assert phi.phi((1, 0, 0), (1, 0, 0)) == ZERO
    assert phi.phi_tilde((0, 1, 0), (0, 0, 0)) == ZERO
    # matching conservation across different slot patterns is a 1x1 block
    assert phi.phi((1, 0, 0), (0, 0, 1)) == ONE


def test_main_theorem_low_blocks():
    for name, hmax in (("A2", 4), ("C2", 4), ("G2", 3)):
        phi = PhiTable(name)
        for w in weights_up_to(name, hmax):
            rows, cols, ent = phi.block(w)
            tb = transition_block(name, w)
            for C in rows:
                for B in cols:
                    assert ent.get((C, B), ZERO) == tb.gamma(reverse(C), reverse(B)), \
                        (name, w, C, B)


def test_compute_phi_extends_and_validates():
    phi = compute_phi("A2", 3)
    assert phi.max_height == 3
    assert set(weights_up_to("A2", 3)) <= set(phi._tilde)
    with pytest.raises(ValueError):
        compute_phi("A2", -1)
    with pytest.raises(ValueError):
        PhiTable("C2").tilde_block((-1, 0))


# ---------------------------------------------------------------------------
# checked tables


def test_golden_columns_exact():
    for name, (I, want_strs) in GOLDEN.items():
        tab = checked_table(name, PhiTable(name))
        want = {out: val(s) for out, s in want_strs.items()}
        col = tab.column(I)
        assert col == want, name
        # every other tuple in the block is an exact zero
        for out in tab.block_outputs(I):
            if out not in want:
                assert tab.entry(out, I) == ZERO


def test_checked_table_kinds_and_entry():
    phi = PhiTable("C2")
    tab = CheckedTable("C2", phi)
    assert tab.kind == "K"
    assert tab.entry((4, 0, 0, 3), (2, 1, 1, 0)) == val("q^4")
    assert tab.entry((4, 0, 0, 3), (2, 1, 1, 1)) == ZERO  # conservation
    with pytest.raises(ValueError):
        CheckedTable("A2", phi)


def test_checked_is_phi_with_reversed_input():
    tab = checked_table("A2", PhiTable("A2"))
    assert tab.entry((1, 0, 1), (0, 1, 0)) == tab.phi.phi((1, 0, 1), (0, 1, 0))
    assert tab.entry((1, 0, 1), (1, 0, 1)) == tab.phi.phi((1, 0, 1), (1, 0, 1))
    # asymmetric probe where reversal matters
    tabc = checked_table("C2", PhiTable("C2"))
    I = (1, 0, 0, 2)
    assert tabc.entry((1, 0, 0, 2), I) == tabc.phi.phi((1, 0, 0, 2), reverse(I))


def test_pbw_expansion_identity_trivial():
    rec = pbw_expansion_identity("A2", (0, 0, 0))
    assert rec["algebra"] == "A2" and rec["kind"] == "R"
    assert rec["terms"] == [((0, 0, 0), (0, 0, 0), "1")]


def test_pbw_expansion_identity_a2_golden_block():
    phi = PhiTable("A2")
    rec = pbw_expansion_identity("A2", (3, 1, 4), phi)
    assert len(rec["terms"]) == 5
    by_input = {I: c for I, _, c in rec["terms"]}
    assert set(by_input) == set(GOLDEN["A2"][1])
    # the diagonal coefficient is shared with the golden column
    assert val(by_input[(3, 1, 4)]) == val(GOLDEN["A2"][1][(3, 1, 4)])
    for I, revI, _ in rec["terms"]:
        assert revI == reverse(I)


def test_pbw_expansion_identity_c2():
    rec = pbw_expansion_identity("C2", (2, 1, 1, 0), PhiTable("C2"))
    assert rec["kind"] == "K"
    assert len(rec["terms"]) == 6
    by_input = {I: c for I, _, c in rec["terms"]}
    assert val(by_input[(2, 1, 1, 0)]) == val("-q^4*(1-q^8+q^14)")
