"""Transition tables computed from the function-algebra side.

Phi is the vacuum-normalized isomorphism between the irreducible
representations attached to the two longest words (source word 1, target
word 2).  Blocks are produced inductively: the intertwining relations with
xi_1 and xi_2 turn each block into an exact overdetermined linear system
in terms of the block one step below.  Only Fock-side operators appear
here, so agreement with the PBW-side transition matrices downstream is a
genuine cross-check between independent pipelines.

The checked table composes Phi with full reversal of the input slots;
depending on the algebra it is the R, K or F family of coefficients.
"""

from .qfield import canonical_string, d_norm, poly_divexact, poly_gcd
from .presets import (
    ONE, ZERO, preset, reverse, rf, tuples_with_weight, weights_up_to,
)
from .fock import xi_matrix


def _poly_lcm(a, b):
    return poly_divexact(a * b, poly_gcd(a, b))


def solve_exact(prows, qrows):
    """Solve P Y = Q over the rational-function field, P of full column rank.

    P is m x n with m >= n, Q is m x k; both are given as lists of rows of
    RationalFunctions.  Rows are scaled to polynomial entries, eliminated
    by fraction-free (Bareiss) steps with the first not-yet-used row
    holding a nonzero entry as pivot, then back-substituted over the
    fraction field.  The full residual is verified afterwards.  Raises
    ArithmeticError on rank deficiency or inconsistency.
    """
    prows = [[rf(x) for x in row] for row in prows]
    qrows = [[rf(x) for x in row] for row in qrows]
    m = len(prows)
    n = len(prows[0]) if m else 0
    k = len(qrows[0]) if qrows and qrows[0] else 0
    if m < n:
        raise ArithmeticError(f"underdetermined system ({m} rows, {n} unknowns)")
    P, Q = [], []
    for prow, qrow in zip(prows, qrows):
        den = None
        for x in list(prow) + list(qrow):
            den = x.den if den is None else _poly_lcm(den, x.den)
        P.append([x.num * poly_divexact(den, x.den) for x in prow])
        Q.append([x.num * poly_divexact(den, x.den) for x in qrow])
    prev = None
    for c in range(n):
        pivot_row = next(
            (r for r in range(c, m) if not P[r][c].is_zero()), None)
        if pivot_row is None:
            raise ArithmeticError(f"rank-deficient system at column {c}")
        if pivot_row != c:
            P[c], P[pivot_row] = P[pivot_row], P[c]
            Q[c], Q[pivot_row] = Q[pivot_row], Q[c]
        piv = P[c][c]
        for r in range(c + 1, m):
            fac = P[r][c]
            for j in range(c, n):
                t = P[r][j] * piv - fac * P[c][j]
                P[r][j] = t if prev is None else poly_divexact(t, prev)
            for j in range(k):
                t = Q[r][j] * piv - fac * Q[c][j]
                Q[r][j] = t if prev is None else poly_divexact(t, prev)
        prev = piv
    for r in range(n, m):
        if any(not x.is_zero() for x in Q[r]):
            raise ArithmeticError(f"inconsistent system at row {r}")
    Y = [[ZERO] * k for _ in range(n)]
    for r in range(n - 1, -1, -1):
        piv = rf(P[r][r])
        for j in range(k):
            acc = rf(Q[r][j])
            for c in range(r + 1, n):
                acc = acc - rf(P[r][c]) * Y[c][j]
            Y[r][j] = acc / piv
    for prow, qrow in zip(prows, qrows):
        for j in range(k):
            acc = -qrow[j]
            for c in range(n):
                acc = acc + prow[c] * Y[c][j]
            if not acc.num.is_zero():
                raise ArithmeticError("nonzero residual after solve")
    return Y


class PhiTable:
    """Blockwise coefficients of the intertwiner, filled on demand.

    Block rows are word-2 tuples (outputs), columns word-1 tuples (inputs),
    both in ascending lexicographic order; blocks are keyed by the
    conserved pair.  tilde_block holds the plain-power normalization,
    block the divided-power one.
    """

    def __init__(self, name, max_height=0):
        self.name = name
        self.preset = preset(name)
        self.max_height = 0
        self._tilde = {}
        self.extend(max_height)

    def extend(self, max_height):
        if max_height < 0:
            raise ValueError("max_height must be nonnegative")
        for w in weights_up_to(self.name, max_height):
            self.tilde_block(w)
        self.max_height = max(self.max_height, max_height)

    def tilde_block(self, weight):
        got = self._tilde.get(weight)
        if got is None:
            got = self._compute_block(weight)
            self._tilde[weight] = got
        return got

    def _compute_block(self, weight):
        m2, m1 = weight
        if m2 < 0 or m1 < 0:
            raise ValueError(f"bad weight {weight}")
        rows = tuples_with_weight(self.name, 2, weight)
        cols = tuples_with_weight(self.name, 1, weight)
        if m2 == 0 and m1 == 0:
            return rows, cols, {(rows[0], cols[0]): ONE}
        # X . M^i = M'^i . Phi(below), transposed and stacked over i
        prows, qrows = [], []
        for i in (1, 2):
            inc = self.preset.letter_increment(i)
            below = (m2 - inc[0], m1 - inc[1])
            if below[0] < 0 or below[1] < 0:
                continue
            _, src_cols, m_ent = xi_matrix(self.name, 1, i, below)
            srows, _, prev_ent = self.tilde_block(below)
            _, _, mp_ent = xi_matrix(self.name, 2, i, below)
            for A in src_cols:
                prows.append([m_ent.get((B, A), ZERO) for B in cols])
                qrow = []
                for C in rows:
                    acc = ZERO
                    for D in srows:
                        u = mp_ent.get((C, D))
                        v = prev_ent.get((D, A))
                        if u is not None and v is not None:
                            acc = acc + u * v
                    qrow.append(acc)
                qrows.append(qrow)
        try:
            Y = solve_exact(prows, qrows)
        except ArithmeticError as exc:
            raise ArithmeticError(
                f"{self.name} block {weight}: {exc}") from None
        entries = {}
        for bi, B in enumerate(cols):
            for ci, C in enumerate(rows):
                v = Y[bi][ci]
                if not v.num.is_zero():
                    entries[(C, B)] = v
        return rows, cols, entries

    def _d_factor(self, label, t):
        w = self.preset.word(label)
        out = ONE
        for m, node in zip(t, w):
            if m:
                out = out * d_norm(m, self.preset.d[node])
        return out

    def block(self, weight):
        """Divided-power normalization: Phi = tilde Phi * prod d-ratios."""
        rows, cols, tilde = self.tilde_block(weight)
        row_fac = {C: self._d_factor(2, C) for C in rows}
        col_fac = {B: self._d_factor(1, B) for B in cols}
        entries = {}
        for (C, B), v in tilde.items():
            entries[(C, B)] = v * row_fac[C] / col_fac[B]
        return rows, cols, entries

    def phi_tilde(self, C, B):
        C, B = tuple(C), tuple(B)
        if self.preset.conserved2(C) != self.preset.conserved1(B):
            return ZERO
        _, _, entries = self.tilde_block(self.preset.conserved2(C))
        return entries.get((C, B), ZERO)

    def phi(self, C, B):
        C, B = tuple(C), tuple(B)
        if self.preset.conserved2(C) != self.preset.conserved1(B):
            return ZERO
        _, _, entries = self.block(self.preset.conserved2(C))
        return entries.get((C, B), ZERO)


def compute_phi(name, max_height):
    """All intertwiner blocks with conserved heights up to max_height."""
    return PhiTable(name, max_height)


_KIND = {"A2": "R", "C2": "K", "G2": "F"}


class CheckedTable:
    """Phi composed with full reversal of the input slots.

    Entries are keyed by plain occupation tuples on both sides; the slot
    bases of both indices follow word 2.  For A2 this is the R family
    solving the tetrahedron equation, for C2 the K family of the 3D
    reflection equation, for G2 the F family.
    """

    def __init__(self, name, phi):
        if phi.name != name:
            raise ValueError(f"table for {phi.name} used as {name}")
        self.name = name
        self.kind = _KIND[name]
        self.phi = phi

    def entry(self, out_t, in_t):
        return self.phi.phi(tuple(out_t), reverse(tuple(in_t)))

    def block_outputs(self, in_t):
        """All output tuples sharing the conserved pair of the input."""
        w = self.phi.preset.conserved2(tuple(in_t))
        return tuples_with_weight(self.name, 2, w)

    def column(self, in_t):
        """Nonzero entries {output tuple: coefficient} above one input."""
        I = tuple(in_t)
        B = reverse(I)
        _, _, entries = self.phi.block(self.phi.preset.conserved2(I))
        return {C: v for (C, Bc), v in entries.items() if Bc == B}


def checked_table(name, phi):
    return CheckedTable(name, phi)


def pbw_expansion_identity(name, A, phi=None):
    """Both sides of E^A_[2] = sum_I T^A_I E^{reverse(I)}_[1], cross-checked.

    The expansion coefficients come from the checked table; each one is
    compared against the PBW-side transition entry before being reported.
    Returns a record with the surviving terms; raises ArithmeticError on
    any mismatch between the two pipelines.
    """
    from .pbw import transition_block

    p = preset(name)
    A = tuple(A)
    if phi is None:
        phi = PhiTable(name)
    table = CheckedTable(name, phi)
    weight = p.conserved2(A)
    tb = transition_block(name, weight)
    terms = []
    for I in tuples_with_weight(name, 2, weight):
        via_phi = table.entry(A, I)
        via_gamma = tb.gamma(reverse(A), I)
        if via_phi != via_gamma:
            raise ArithmeticError(
                f"expansion mismatch for {name} output {A} at {I}: "
                f"{canonical_string(via_phi)} != {canonical_string(via_gamma)}")
        if not via_phi.num.is_zero():
            terms.append((I, reverse(I), canonical_string(via_phi)))
    return {
        "algebra": name,
        "kind": table.kind,
        "output": A,
        "terms": terms,
    }
