"""Verification suites with named checks and failure witnesses.

Each suite returns a VerifyReport listing (check id, passed, witness)
triples.  Exact checks compare rational functions; sampled checks
evaluate at rational values of q with a re-sampling guard against
vanishing denominators.  The operator equations (tetrahedron, 3D
reflection) are run by applying the checked tables to occupation states
of a multi-slot product space whose per-slot oscillator bases are
derived mechanically from the operators' type signatures.
"""

import time
from collections import namedtuple
from fractions import Fraction

from . import fock, pbw
from .intertwiner import PhiTable, checked_table
from .presets import (
    ONE, ZERO, preset, qbinom, reverse, tuples_with_weight, weights_up_to,
    zero_tuple,
)
from .qfield import canonical_string, is_integer_polynomial, q_pochhammer

Check = namedtuple("Check", ["check_id", "passed", "witness"])


class VerifyReport:
    """Outcome of one suite."""

    def __init__(self, suite, checks, duration):
        self.suite = suite
        self.checks = list(checks)
        self.duration = duration

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def lines(self):
        out = []
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            line = f"{mark} {self.suite}:{c.check_id}"
            if c.witness:
                line += f"  [{c.witness}]"
            out.append(line)
        return out


DEFAULT_HEIGHTS = {"A2": 8, "C2": 8, "G2": 5}
T_BOUNDS = {"A2": 4, "C2": 3, "G2": 2}
KEY_PROP_ENTRIES = 4
SERRE_ENTRIES = 3

# Reference columns in canonical form: input tuple -> {output: coefficient}.
# The unit tests hold the same data as factored source expressions; here it
# is stored the way `compute` prints it.
GOLDEN_COLUMNS = {
    "A2": ((3, 1, 4), {
        (0, 4, 1): "-q^2 + q^6 + q^8 + q^10 - q^12 - q^14 - q^16 + q^20",
        (1, 3, 2): "1 - q^4 - 2q^6 - 2q^8 + 2q^12 + 3q^14 + 2q^16 - q^20 - q^22 - q^24",
        (2, 2, 3): "q^2 + q^4 + q^6 - q^8 - 2q^10 - 3q^12 - 2q^14 + q^18 + 2q^20 + q^22 + q^24",
        (3, 1, 4): "q^6 + q^8 + q^10 - q^14 - q^16 - q^18 - q^20",
        (4, 0, 5): "q^12",
    }),
    "C2": ((2, 1, 1, 0), {
        (1, 3, 0, 0): "q^8 - q^16",
        (2, 1, 1, 0): "-q^4 + q^12 - q^18",
        (2, 2, 0, 1): "-q^6 + q^14 + q^16 + q^18",
        (3, 0, 1, 1): "1 - q^8 + q^14",
        (3, 1, 0, 2): "-q^10 - q^12 - q^14",
        (4, 0, 0, 3): "q^4",
    }),
    "G2": ((0, 1, 0, 1, 0, 1), {
        (0, 0, 0, 2, 0, 0): "q^4 - 2q^6 + q^12",
        (0, 0, 1, 0, 0, 1): "-q + 2q^3 - q^7 - q^9 + q^13",
        (0, 1, 0, 0, 1, 0): "-q + 2q^3 - q^7 - q^9 + q^13",
        (0, 1, 0, 1, 0, 1): "1 - 2q^2 + 2q^6 + 3q^8 - 2q^12 - 2q^14 - q^16",
        (0, 2, 0, 0, 0, 2): "-2q^4 + 2q^10 + q^12 + q^14",
        (1, 0, 0, 0, 1, 1): "-q^3 + q^5 + q^9 - q^13",
        (1, 0, 0, 1, 0, 2): "q - q^3 - q^5 - q^7 + q^11 + q^13 + q^15",
        (1, 1, 0, 0, 0, 3): "q - q^7 - q^9 - q^11 - q^13",
        (2, 0, 0, 0, 0, 4): "q^4",
    }),
}

SAMPLE_POINTS = (Fraction(1, 3), Fraction(2, 5), Fraction(-1, 2))
_BACKUP_POINTS = (Fraction(3, 7), Fraction(-2, 7), Fraction(5, 11),
                  Fraction(-3, 8), Fraction(7, 13))

_PHI = {}


def shared_phi(name):
    """Process-wide PhiTable; blocks accumulate across suites."""
    tab = _PHI.get(name)
    if tab is None:
        tab = _PHI[name] = PhiTable(name)
    return tab


def shared_table(name):
    return checked_table(name, shared_phi(name))


def _guarded_sample(point, run):
    """run(q0), falling back to reserve points if a denominator vanishes."""
    for q0 in (point,) + _BACKUP_POINTS:
        try:
            return q0, run(q0)
        except ZeroDivisionError:
            continue
    raise ArithmeticError(f"every sample point starting from {point} hit a pole")


# ---------------------------------------------------------------------------
# checked tables as operators on occupation states

_KIND_ALGEBRA = {"R": "A2", "K": "C2", "F": "G2"}


class KetOperator:
    """A checked table acting on chosen slots of occupation states."""

    def __init__(self, name, point=None):
        self.table = shared_table(name)
        self.arity = preset(name).length
        self.point = point
        self._columns = {}

    def column(self, inp):
        col = self._columns.get(inp)
        if col is None:
            col = self.table.column(inp)
            if self.point is not None:
                col = {c: v.eval_at(self.point) for c, v in col.items()}
                col = {c: v for c, v in col.items() if v != 0}
            self._columns[inp] = col
        return col

    def apply(self, vec, slots):
        pos = tuple(s - 1 for s in slots)
        out = {}
        for state, c in vec.items():
            for tup, v in self.column(tuple(state[p] for p in pos)).items():
                ns = list(state)
                for p, a in zip(pos, tup):
                    ns[p] = a
                key = tuple(ns)
                cur = out.get(key)
                out[key] = v * c if cur is None else cur + v * c
        if self.point is not None:
            return {s: v for s, v in out.items() if v != 0}
        return {s: v for s, v in out.items() if not v.num.is_zero()}


# Sides are stored in application order (rightmost factor first).
TETRAHEDRON = {
    "slots": 6,
    "sides": (
        (("R", (1, 2, 3)), ("R", (1, 4, 5)), ("R", (2, 4, 6)), ("R", (3, 5, 6))),
        (("R", (3, 5, 6)), ("R", (2, 4, 6)), ("R", (1, 4, 5)), ("R", (1, 2, 3))),
    ),
}

REFLECTION_3D = {
    "slots": 9,
    "sides": (
        (("K", (1, 2, 3, 4)), ("K", (1, 6, 7, 8)), ("R", (2, 5, 8)),
         ("R", (2, 6, 9)), ("K", (3, 5, 7, 9)), ("R", (4, 8, 9)),
         ("R", (4, 5, 6))),
        (("R", (4, 5, 6)), ("R", (4, 8, 9)), ("K", (3, 5, 7, 9)),
         ("R", (2, 6, 9)), ("R", (2, 5, 8)), ("K", (1, 6, 7, 8)),
         ("K", (1, 2, 3, 4))),
    ),
}


def _slot_profile(kind):
    p = preset(_KIND_ALGEBRA[kind])
    return tuple(p.d[i] for i in p.word2)


def infer_slot_bases(n_slots, factors):
    """Per-slot oscillator base exponents forced by the factors' types.

    Returns every consistent full assignment {slot: d exponent}; raises
    ValueError if some slot is required with two different bases.
    """
    forced = {}
    for kind, slots in factors:
        profile = _slot_profile(kind)
        if len(slots) != len(profile):
            raise ValueError(f"{kind} acts on {len(profile)} slots, got {slots}")
        for s, dexp in zip(slots, profile):
            if not 1 <= s <= n_slots:
                raise ValueError(f"slot {s} outside 1..{n_slots}")
            if forced.setdefault(s, dexp) != dexp:
                raise ValueError(
                    f"slot {s} would need oscillator bases q^{forced[s]} "
                    f"and q^{dexp}")
    free = [s for s in range(1, n_slots + 1) if s not in forced]
    choices = sorted(set(forced.values())) or [1]
    assigns = [forced]
    for s in free:
        assigns = [{**a, s: d} for a in assigns for d in choices]
    return [dict(sorted(a.items())) for a in assigns]


def _slot_base_check(eq):
    assigns = infer_slot_bases(eq["slots"], eq["sides"][0] + eq["sides"][1])
    groups = {}
    for s, d in assigns[0].items():
        groups.setdefault(d, []).append(s)
    witness = "; ".join(
        f"q^{d} slots {tuple(sorted(ss))}" if d > 1 else
        f"q slots {tuple(sorted(ss))}"
        for d, ss in sorted(groups.items()))
    if len(assigns) > 1:
        witness += f"; {len(assigns)} consistent assignments"
    return Check("slot-bases", len(assigns) == 1, witness)


def _states_with_total(width, max_total):
    out = []

    def rec(prefix, left):
        if len(prefix) == width:
            out.append(prefix)
            return
        for v in range(left + 1):
            rec(prefix + (v,), left - v)

    rec((), max_total)
    return sorted(out)


def _value_str(v):
    return str(v) if isinstance(v, (int, Fraction)) else canonical_string(v)


def _equation_mismatch(eq, states, point):
    ops = {}
    for side in eq["sides"]:
        for kind, _ in side:
            if kind not in ops:
                ops[kind] = KetOperator(_KIND_ALGEBRA[kind], point=point)
    one = Fraction(1) if point is not None else ONE
    zero = Fraction(0) if point is not None else ZERO
    for state in states:
        done = []
        for side in eq["sides"]:
            vec = {state: one}
            for kind, slots in side:
                vec = ops[kind].apply(vec, slots)
            done.append(vec)
        lhs, rhs = done
        if lhs != rhs:
            for out in sorted(set(lhs) | set(rhs)):
                a, b = lhs.get(out, zero), rhs.get(out, zero)
                if a != b:
                    return (f"state {state} -> {out}: "
                            f"{_value_str(a)} != {_value_str(b)}")
            return f"state {state}: sides differ"
    return None


def verify_tetrahedron(max_occ=2, exact_occ=1, mode="sampled"):
    """Both products of four R factors agree on low-occupation states."""
    t0 = time.perf_counter()
    checks = [_slot_base_check(TETRAHEDRON)]
    w = _equation_mismatch(TETRAHEDRON, [(0,) * 6], None)
    checks.append(Check("vacuum-exact", w is None, w))
    w = _equation_mismatch(TETRAHEDRON, _states_with_total(6, exact_occ), None)
    checks.append(Check(f"occ{exact_occ}-exact", w is None, w))
    states = _states_with_total(6, max_occ)
    if mode == "sampled":
        for p in SAMPLE_POINTS:
            q0, w = _guarded_sample(
                p, lambda q: _equation_mismatch(TETRAHEDRON, states, q))
            checks.append(Check(f"occ{max_occ}-sampled-q={q0}", w is None, w))
    elif mode == "exact":
        w = _equation_mismatch(TETRAHEDRON, states, None)
        checks.append(Check(f"occ{max_occ}-exact", w is None, w))
    else:
        raise ValueError(f"mode must be 'exact' or 'sampled', got {mode!r}")
    return VerifyReport("tetrahedron", checks, time.perf_counter() - t0)


def verify_3d_reflection(max_occ=1, mode="sampled"):
    """Both products of four K and three R factors agree on 9-slot states."""
    t0 = time.perf_counter()
    checks = [_slot_base_check(REFLECTION_3D)]
    w = _equation_mismatch(REFLECTION_3D, [(0,) * 9], None)
    checks.append(Check("vacuum-exact", w is None, w))
    e5 = tuple(1 if s == 5 else 0 for s in range(1, 10))
    w = _equation_mismatch(REFLECTION_3D, [e5], None)
    checks.append(Check("slot5-excitation-exact", w is None, w))
    states = _states_with_total(9, max_occ)
    if mode == "sampled":
        for p in SAMPLE_POINTS:
            q0, w = _guarded_sample(
                p, lambda q: _equation_mismatch(REFLECTION_3D, states, q))
            checks.append(Check(f"occ{max_occ}-sampled-q={q0}", w is None, w))
    elif mode == "exact":
        w = _equation_mismatch(REFLECTION_3D, states, None)
        checks.append(Check(f"occ{max_occ}-exact", w is None, w))
    else:
        raise ValueError(f"mode must be 'exact' or 'sampled', got {mode!r}")
    return VerifyReport("3d-reflection", checks, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# main theorem


def verify_theorem(heights=None, algebras=("A2", "C2", "G2")):
    """The PBW transition matrices equal the intertwiner matrices."""
    t0 = time.perf_counter()
    heights = {**DEFAULT_HEIGHTS, **(heights or {})}
    checks = []
    for name in algebras:
        h = heights[name]
        phi = shared_phi(name)
        witness = None
        n = 0
        for wgt in weights_up_to(name, h):
            rows, cols, ent = phi.block(wgt)
            tb = pbw.transition_block(name, wgt)
            for c_out in rows:
                for b_in in cols:
                    a = ent.get((c_out, b_in), ZERO)
                    b = tb.gamma(reverse(c_out), reverse(b_in))
                    n += 1
                    if a != b:
                        witness = (f"weight {wgt} out {c_out} in {b_in}: "
                                   f"{canonical_string(a)} != {canonical_string(b)}")
                        break
                if witness:
                    break
            if witness:
                break
        checks.append(Check(f"{name}-blocks-h{h}", witness is None,
                            witness or f"{n} entries"))
        checks.append(_golden_check(name))
    return VerifyReport("theorem", checks, time.perf_counter() - t0)


def _golden_check(name):
    cid = f"{name}-golden-column"
    inp, expect = GOLDEN_COLUMNS[name]
    tab = shared_table(name)
    tb = pbw.transition_block(name, preset(name).conserved2(inp))
    got = {c: canonical_string(v) for c, v in tab.column(inp).items()}
    if got != expect:
        off = sorted(set(expect) ^ set(got))
        if off:
            return Check(cid, False, f"support differs at {off}")
        bad = next(c for c in sorted(expect) if got[c] != expect[c])
        return Check(cid, False, f"{bad}: {got[bad]} != {expect[bad]}")
    for c_out in tab.block_outputs(inp):
        g = tb.gamma(reverse(c_out), inp)
        want = expect.get(c_out)
        if want is None:
            if not g.num.is_zero():
                return Check(cid, False,
                             f"transition route nonzero off-support at {c_out}")
        elif canonical_string(g) != want:
            return Check(cid, False, f"transition route differs at {c_out}")
    return Check(cid, True, f"{len(expect)} entries via both routes")


# ---------------------------------------------------------------------------
# property suite


def _poch_product(p, tup):
    out = ONE
    for m, node in zip(tup, p.word2):
        out = out * q_pochhammer(m, p.d[node])
    return out


def _involution_check(name, tab, wset):
    n = 0
    for wgt in wset:
        block = tuples_with_weight(name, 2, wgt)
        cols = {inp: tab.column(inp) for inp in block}
        for inp in block:
            acc = {}
            for mid, v1 in cols[inp].items():
                for out, v2 in cols[mid].items():
                    cur = acc.get(out)
                    acc[out] = v2 * v1 if cur is None else cur + v2 * v1
            for out in block:
                want = ONE if out == inp else ZERO
                got = acc.get(out, ZERO)
                if got != want:
                    return Check(f"{name}-involution", False,
                                 f"weight {wgt} square[{out},{inp}] = "
                                 f"{canonical_string(got)}")
            n += 1
    return Check(f"{name}-involution", True,
                 f"{n} columns over {len(wset)} blocks")


def _reversal_check(name, tab, wset):
    n = 0
    for wgt in wset:
        for inp in tuples_with_weight(name, 2, wgt):
            for out, v in tab.column(inp).items():
                if v != tab.entry(reverse(out), reverse(inp)):
                    return Check(f"{name}-reversal", False,
                                 f"({out},{inp}) vs reversed pair")
                n += 1
    return Check(f"{name}-reversal", True, f"{n} entries")


def _transpose_ratio_check(name, tab, wset, p):
    n = 0
    for wgt in wset:
        block = tuples_with_weight(name, 2, wgt)
        poch = {t: _poch_product(p, t) for t in block}
        for i, out in enumerate(block):
            for inp in block[i:]:
                if tab.entry(out, inp) * poch[out] != tab.entry(inp, out) * poch[inp]:
                    return Check(f"{name}-transpose-ratio", False,
                                 f"weight {wgt} pair ({out},{inp})")
                n += 1
    return Check(f"{name}-transpose-ratio", True, f"{n} pairs")


def _conservation_check(name, tab, wset, p):
    n = 0
    for wgt in wset:
        block = set(tuples_with_weight(name, 2, wgt))
        for inp in sorted(block):
            for out, v in tab.column(inp).items():
                if p.conserved2(out) != p.conserved2(inp) or out not in block:
                    return Check(f"{name}-conservation", False,
                                 f"nonzero entry ({out},{inp}) crosses blocks")
                n += 1
    return Check(f"{name}-conservation", True, f"{n} nonzero entries")


def _integrality_check(name, wset):
    n = 0
    for wgt in wset:
        tb = pbw.transition_block(name, wgt)
        for a_row in tb.rows:
            for b_col in tb.cols:
                v = tb.gamma(a_row, b_col)
                if not is_integer_polynomial(v):
                    return Check(f"{name}-gamma-integrality", False,
                                 f"gamma[{a_row},{b_col}] = {canonical_string(v)}")
                n += 1
    return Check(f"{name}-gamma-integrality", True, f"{n} entries")


def _r0_input(out):
    a, b, c = out
    return (b + max(a - c, 0), min(a, c), b + max(c - a, 0))


def _k0_input(out):
    a, b, c, d = out
    x = max(c - a + max(d - b, 0), 0)
    return (x + a + b - d,
            c + d - x - min(a, c + x),
            min(a, c + x),
            b + max(c - a + x, 0))


_Q0_INPUT = {"A2": _r0_input, "C2": _k0_input}


def _q0_check(name, tab, wset):
    fn = _Q0_INPUT[name]
    n = 0
    for wgt in wset:
        block = tuples_with_weight(name, 2, wgt)
        for out in block:
            sel = fn(out)
            for inp in block:
                v = tab.entry(out, inp).specialize_q0()
                want = 1 if inp == sel else 0
                if v != want:
                    return Check(f"{name}-q0-delta", False,
                                 f"weight {wgt} [{out},{inp}] -> {v}, "
                                 f"expected {want}")
                n += 1
    return Check(f"{name}-q0-delta", True, f"{n} entries")


def _entry_bounded_tuples(length, bound):
    out = [()]
    for _ in range(length):
        out = [t + (v,) for t in out for v in range(bound + 1)]
    return out


def _rho_column(name, label, letter, ket):
    """Left multiplication by e_letter on one scaled PBW monomial."""
    p = preset(name)
    if label == 2:
        terms = p.left_rules[letter](ket)
    else:
        terms = [(c, reverse(t))
                 for c, t in p.right_rules[letter](reverse(ket))]
    col = {}
    for coeff, t in terms:
        cur = col.get(t)
        col[t] = coeff if cur is None else cur + coeff
    return {t: v for t, v in col.items() if not v.num.is_zero()}


def _key_prop_check(name, bound):
    p = preset(name)
    n = 0
    for label in (1, 2):
        for i in (1, 2):
            for ket in _entry_bounded_tuples(p.length, bound):
                left = _rho_column(name, label, i, ket)
                right = {t: v for t, v in
                         fock.xi_apply(name, label, i, {ket: ONE}).items()
                         if not v.num.is_zero()}
                if left != right:
                    return Check(f"{name}-key-prop", False,
                                 f"word {label} e_{i} ket {ket}")
                n += 1
    return Check(f"{name}-key-prop", True, f"{n} columns, entries <= {bound}")


def _serre_pbw_check(name):
    for pair, residual in pbw.serre_residuals(name):
        if residual:
            t = sorted(residual)[0]
            return Check(f"{name}-serre-pbw", False,
                         f"pair {pair}: residual at {t} -> "
                         f"{canonical_string(residual[t])}")
    return Check(f"{name}-serre-pbw", True, "all sums normal-order to zero")


def _serre_fock_check(name, bound):
    """The divided-power Serre sums of the xi operators vanish on kets.

    The sweep over all kets within the entry bound evaluates the sum in
    its factorial-cleared binomial form with the xi operators scaled by
    1/lambda_i, which keeps every coefficient a Laurent polynomial (the
    cleared form is the divided-power sum times the nonzero constant
    [top]_i! lambda_i^top lambda_j).  Kets with entries <= 1 are then
    re-checked through literal sequential divided-power applications on
    scaled kets, exercising that code path as well.
    """
    p = preset(name)
    n = 0
    for label in (1, 2):
        for (i, j), a in sorted(p.cartan.items()):
            top = 1 - a
            bar_i = fock.op_scale(fock.xi_op(name, label, i), ONE / p.lam(i))
            bar_j = fock.op_scale(fock.xi_op(name, label, j), ONE / p.lam(j))
            binom = [qbinom(top, r, p.d[i]) for r in range(top + 1)]
            col_i, col_j = {}, {}

            def step(op, vec, cache, name=name, label=label):
                out = {}
                for ket, c in vec.items():
                    col = cache.get(ket)
                    if col is None:
                        col = fock.apply_op(name, label, op, {ket: ONE})
                        cache[ket] = col
                    for t, v in col.items():
                        cur = out.get(t)
                        out[t] = v * c if cur is None else cur + v * c
                return {t: v for t, v in out.items() if not v.num.is_zero()}

            for ket in _entry_bounded_tuples(p.length, bound):
                chain = [{ket: ONE}]
                for _ in range(top):
                    chain.append(step(bar_i, chain[-1], col_i))
                total = {}
                for r in range(top + 1):
                    vec = step(bar_j, chain[top - r], col_j)
                    for _ in range(r):
                        vec = step(bar_i, vec, col_i)
                    c = -binom[r] if r % 2 else binom[r]
                    for t, v in vec.items():
                        cur = total.get(t)
                        total[t] = c * v if cur is None else cur + c * v
                bad = sorted(t for t, v in total.items()
                             if not v.num.is_zero())
                if bad:
                    return Check(f"{name}-serre-fock", False,
                                 f"word {label} pair ({i},{j}) ket {ket}: "
                                 f"residual at {bad[0]}")
                n += 1
            for ket in _entry_bounded_tuples(p.length, min(bound, 1)):
                total = {}
                for r in range(top + 1):
                    vec = fock.xi_divided_apply(name, label, i, {ket: ONE},
                                                top - r)
                    vec = fock.xi_apply(name, label, j, vec)
                    vec = fock.xi_divided_apply(name, label, i, vec, r)
                    sign = -ONE if r % 2 else ONE
                    for t, v in vec.items():
                        cur = total.get(t)
                        total[t] = sign * v if cur is None else cur + sign * v
                bad = sorted(t for t, v in total.items()
                             if not v.num.is_zero())
                if bad:
                    return Check(f"{name}-serre-fock", False,
                                 f"word {label} pair ({i},{j}) ket {ket}: "
                                 f"sequential residual at {bad[0]}")
    return Check(f"{name}-serre-fock", True, f"{n} kets, entries <= {bound}")


def verify_properties(heights=None, algebras=("A2", "C2", "G2"),
                      key_prop_entries=KEY_PROP_ENTRIES,
                      serre_entries=SERRE_ENTRIES):
    """Structural identities of the tables and representations."""
    t0 = time.perf_counter()
    heights = {**DEFAULT_HEIGHTS, **(heights or {})}
    checks = []
    for name in algebras:
        p = preset(name)
        tab = shared_table(name)
        wset = list(weights_up_to(name, heights[name]))
        gold = p.conserved2(GOLDEN_COLUMNS[name][0])
        if gold not in wset:
            wset.append(gold)
        checks.append(_involution_check(name, tab, wset))
        if name == "A2":
            checks.append(_reversal_check(name, tab, wset))
        checks.append(_transpose_ratio_check(name, tab, wset, p))
        checks.append(_conservation_check(name, tab, wset, p))
        checks.append(_integrality_check(name, wset))
        if name in _Q0_INPUT:
            checks.append(_q0_check(name, tab, wset))
        checks.append(_key_prop_check(name, key_prop_entries))
        checks.append(_serre_pbw_check(name))
        checks.append(_serre_fock_check(name, serre_entries))
    return VerifyReport("properties", checks, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# intertwining of the full generator matrix


def verify_t_intertwining(bounds=None, heights=None,
                          algebras=("A2", "C2", "G2")):
    """Phi pi_1(t_jk) == pi_2(t_jk) Phi for every generator t_jk.

    Kets are enumerated by index sum up to ``bounds``.  A (generator, ket)
    pair is only checked when every image ket stays inside a weight block
    within ``heights`` — blocks beyond the computed range are skipped and
    counted in the witness.  With the default bounds A2 and C2 have no
    skips; G2 images can overshoot the block range.
    """
    t0 = time.perf_counter()
    bounds = {**T_BOUNDS, **(bounds or {})}
    heights = {**DEFAULT_HEIGHTS, **(heights or {})}
    checks = []
    for name in algebras:
        p = preset(name)
        phi = shared_phi(name)
        allowed = set(weights_up_to(name, heights[name]))
        cache = {}

        def phi_column(ket, phi=phi, p=p, cache=cache):
            col = cache.get(ket)
            if col is None:
                _, _, ent = phi.block(p.conserved1(ket))
                col = {c: v for (c, b), v in ent.items() if b == ket}
                cache[ket] = col
            return col

        # t_11 starts with a lowering factor and kills the vacuum; the
        # anti-diagonal entry t_{1,n} is the all-k path and fixes it up to
        # a sign.
        vac = zero_tuple(name)
        killed = fock.apply_op(name, 1, fock.pi_generator(name, 1, 1, 1),
                               {vac: ONE})
        killed = {t: v for t, v in killed.items() if not v.num.is_zero()}
        fixed = fock.apply_op(
            name, 1, fock.pi_generator(name, 1, 1, p.n_gen), {vac: ONE})
        fixed = {t: v for t, v in fixed.items() if not v.num.is_zero()}
        ok = (killed == {} and set(fixed) == {vac}
              and fixed[vac] * fixed[vac] == ONE)
        checks.append(Check(
            f"{name}-t-vacuum", ok,
            None if ok else f"t_11|0> = {killed}, t_1{p.n_gen}|0> = {fixed}"))
        kets = _states_with_total(p.length, bounds[name])
        witness = None
        n = 0
        skipped = 0
        for j in range(1, p.n_gen + 1):
            for k in range(1, p.n_gen + 1):
                op1 = fock.pi_generator(name, 1, j, k)
                op2 = fock.pi_generator(name, 2, j, k)
                for ket in kets:
                    moved = fock.apply_op(name, 1, op1, {ket: ONE})
                    if any(p.conserved1(b2) not in allowed for b2 in moved):
                        skipped += 1
                        continue
                    lhs = {}
                    for b2, c in moved.items():
                        for out, v in phi_column(b2).items():
                            cur = lhs.get(out)
                            lhs[out] = v * c if cur is None else cur + v * c
                    lhs = {t: v for t, v in lhs.items() if not v.num.is_zero()}
                    rhs = fock.apply_op(name, 2, op2, phi_column(ket))
                    rhs = {t: v for t, v in rhs.items() if not v.num.is_zero()}
                    if lhs != rhs:
                        keys = sorted(set(lhs) | set(rhs))
                        bad = next(t for t in keys
                                   if lhs.get(t, ZERO) != rhs.get(t, ZERO))
                        witness = (f"t_{j}{k} ket {ket} out {bad}: "
                                   f"{canonical_string(lhs.get(bad, ZERO))} != "
                                   f"{canonical_string(rhs.get(bad, ZERO))}")
                        break
                    n += 1
                if witness:
                    break
            if witness:
                break
        tail = f", {skipped} beyond block range" if skipped else ""
        checks.append(Check(f"{name}-generators-occ{bounds[name]}",
                            witness is None,
                            witness or f"{n} (generator, ket) pairs{tail}"))
    return VerifyReport("t-intertwining", checks, time.perf_counter() - t0)


def selftest():
    """A fast subset of every suite."""
    return [
        verify_theorem(heights={"A2": 4, "C2": 4, "G2": 3}),
        verify_properties(heights={"A2": 3, "C2": 3, "G2": 2},
                          key_prop_entries=1, serre_entries=1),
        verify_tetrahedron(max_occ=1, exact_occ=1),
        verify_3d_reflection(max_occ=1),
        verify_t_intertwining(bounds={"A2": 2, "C2": 1, "G2": 0},
                              algebras=("A2", "C2", "G2")),
    ]
