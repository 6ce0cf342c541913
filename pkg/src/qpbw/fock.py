"""q-oscillator Fock spaces and the function-algebra side of the story.

One oscillator per Dynkin node, base p = q^d: generators a+, a-, k with

    k a+ = p a+ k,   k a- = p^-1 a- k,
    a- a+ = 1 - p^2 k^2,   a+ a- = 1 - k^2,

acting on kets by a+|m> = |m+1>, a-|m> = (1-p^{2m})|m-1>, k|m> = p^m|m>.
Scaled kets |m>> = p^{-m(m-1)/2} (1-p^2)^{-m} |m> turn these into
a+|m>> = lambda^{-1} p^m |m+1>>, a-|m>> = [m]|m-1>>, k|m>> = p^m|m>>.

Operators on a tensor product of modes are kept in a canonical form: each
term assigns every slot a monomial (a+)^x k^t (a-)^y (t may be negative; k
is invertible on kets) and carries one rational-function prefactor.  All
products reduce mechanically to this form, so cancellations are exact.

The representation pi_word of the function algebra is the slotwise tensor
product of the fundamental pi_i composed along coproduct paths.  sigma_i
and sigma_i e_i come from their t-polynomials; sigma_i must land on a
single diagonal +-q^power monomial (anything else means a transcription
slipped, and we raise).  xi_i = lambda_i (sigma_i e_i) sigma_i^{-1} is then
an honest operator with finite-support columns.
"""

from functools import lru_cache

from .qfield import LaurentPoly, d_norm
from .presets import preset, rf, ONE, qpow, qfact, tuples_with_weight


def _profile(name, word):
    p = preset(name)
    return tuple(p.d[i] for i in word)


def word_arg(name, word):
    """Accept a word label (1 or 2) or an explicit longest word."""
    p = preset(name)
    if word in (1, 2):
        return p.word(word)
    try:
        w = tuple(word)
    except TypeError:
        raise ValueError(f"bad word argument {word!r}") from None
    if w not in (p.word1, p.word2):
        raise ValueError(f"{w} is not a longest word of {name}")
    return w


def letters_arg(name, word):
    """Accept a label or any nonempty tuple over the letters 1, 2.

    Tensor products of the fundamental representations make sense for any
    letter sequence; only sigma / xi insist on an actual longest word.
    """
    if word in (1, 2):
        return preset(name).word(word)
    try:
        w = tuple(word)
    except TypeError:
        raise ValueError(f"bad word argument {word!r}") from None
    if not w or any(c not in (1, 2) for c in w):
        raise ValueError(f"not a word in the letters 1, 2: {word!r}")
    return w


# ---------------------------------------------------------------------------
# single-mode canonical monomials (x, t, y) <-> (a+)^x k^t (a-)^y


def _mono_mul_atom(mono, atom, d):
    """Right-multiply a canonical monomial by one generator; returns terms.

    Canonical monomials are one-sided (x == 0 or y == 0); both relations
    a-a+ = 1 - p^2 k^2 and a+a- = 1 - k^2 are used to keep them so, which
    makes the monomials a genuine linear basis.
    """
    x, t, y = mono
    if atom == "k":
        return ((qpow(d * y), (x, t + 1, y)),)
    if atom == "k-":
        return ((qpow(-d * y), (x, t - 1, y)),)
    if atom == "a-":
        if x == 0:
            return ((ONE, (0, t, y + 1)),)
        return ((qpow(-d * t), (x - 1, t, y)),
                (-qpow(-d * t), (x - 1, t + 2, y)))
    if atom == "a+":
        if y == 0:
            return ((qpow(d * t), (x + 1, t, 0)),)
        return ((ONE, (x, t, y - 1)),
                (-qpow(2 * d * y), (x, t + 2, y - 1)))
    raise ValueError(f"unknown oscillator atom {atom!r}")


def _mono_mul_word(start, atoms, d):
    """Right-multiply by a product of atoms; returns {mono: coeff}."""
    cur = {start: ONE}
    for atom in atoms:
        nxt = {}
        for mono, c in cur.items():
            for c2, m2 in _mono_mul_atom(mono, atom, d):
                s = nxt.get(m2)
                s = c * c2 if s is None else s + c * c2
                if s.num.is_zero():
                    nxt.pop(m2, None)
                else:
                    nxt[m2] = s
        cur = nxt
    return cur


def _mono_mul(m1, m2, d):
    """m1 . m2 in canonical form (m2 applied first on kets)."""
    x, t, y = m2
    atoms = ("a+",) * x + (("k",) * t if t >= 0 else ("k-",) * (-t)) \
        + ("a-",) * y
    return _mono_mul_word(m1, atoms, d)


def _mono_apply(mono, m, d):
    """Apply to a bare ket |m>; returns (coefficient, image occupation).

    The lower-power factor prod_t (1 - p^{2(m-t)}) hits zero exactly when
    the ket would drop below the vacuum, so we bail out there.
    """
    x, t, y = mono
    coeff = ONE
    for s in range(y):
        if m - s == 0:
            return None
        coeff = coeff * rf(LaurentPoly({0: 1, 2 * d * (m - s): -1}))
    n = m - y
    if t:
        coeff = coeff * qpow(d * t * n)
    return coeff, n + x


# ---------------------------------------------------------------------------
# operators on tensor products: {tuple of slot monomials: coefficient}


def op_identity(length):
    return {((0, 0, 0),) * length: ONE}


def op_scale(op, c):
    c = rf(c)
    if c.num.is_zero():
        return {}
    return {m: v * c for m, v in op.items()}


def op_add(*ops):
    out = {}
    for op in ops:
        for m, v in op.items():
            s = out.get(m)
            s = v if s is None else s + v
            if s.num.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
    return out


def op_mul(name, word, xop, yop):
    """Operator product x . y (y acts first)."""
    profile = _profile(name, letters_arg(name, word))
    out = {}
    for mx, cx in xop.items():
        for my, cy in yop.items():
            terms = [(cx * cy, ())]
            for s, d in enumerate(profile):
                prod = _mono_mul(mx[s], my[s], d)
                terms = [(c * c2, monos + (m2,))
                         for c, monos in terms
                         for m2, c2 in prod.items()]
            for c, monos in terms:
                s = out.get(monos)
                s = c if s is None else s + c
                if s.num.is_zero():
                    out.pop(monos, None)
                else:
                    out[monos] = s
    return out


def op_from_terms(name, word, terms):
    """Build an operator from (coeff, ((slot, atom), ...)) product terms.

    Slots are 1-based; atoms within one slot multiply in the order listed.
    Used to transcribe displayed operator formulas in tests.
    """
    w = letters_arg(name, word)
    profile = _profile(name, w)
    out = {}
    for coeff, factors in terms:
        slot_atoms = [[] for _ in w]
        for slot, atom in factors:
            slot_atoms[slot - 1].append(atom)
        expanded = [(rf(coeff), ())]
        for s, d in enumerate(profile):
            prod = _mono_mul_word((0, 0, 0), slot_atoms[s], d)
            expanded = [(c * c2, monos + (m2,))
                        for c, monos in expanded
                        for m2, c2 in prod.items()]
        for c, monos in expanded:
            s = out.get(monos)
            s = c if s is None else s + c
            if s.num.is_zero():
                out.pop(monos, None)
            else:
                out[monos] = s
    return out


@lru_cache(maxsize=None)
def _slot_factor(mono, m, d, tilde):
    """Cached one-slot action on |m> (tilde includes the rescaling ratio)."""
    r = _mono_apply(mono, m, d)
    if r is None:
        return None
    coeff, n = r
    if tilde and n != m:
        coeff = coeff * d_norm(m, d) / d_norm(n, d)
    return coeff, n


def apply_op(name, word, op, vec, tilde=False):
    """Apply an operator to a Fock vector {occupation tuple: coeff}.

    tilde=True reads the input and writes the output in the scaled-ket
    normalization |A>>.
    """
    profile = _profile(name, letters_arg(name, word))
    out = {}
    for A, cA in vec.items():
        for monos, c in op.items():
            coeff = c * cA
            occ = []
            dead = False
            for s, d in enumerate(profile):
                r = _slot_factor(monos[s], A[s], d, tilde)
                if r is None:
                    dead = True
                    break
                coeff = coeff * r[0]
                occ.append(r[1])
            if dead:
                continue
            B = tuple(occ)
            s = out.get(B)
            s = coeff if s is None else s + coeff
            if s.num.is_zero():
                out.pop(B, None)
            else:
                out[B] = s
    return out


# ---------------------------------------------------------------------------
# the representation of the function algebra


@lru_cache(maxsize=None)
def _entry_terms(name, node, j, k):
    """Canonical terms of the fundamental matrix entry pi_node(t_jk)."""
    p = preset(name)
    entry = p.pi_matrix[node][j - 1][k - 1]
    d = p.d[node]
    out = {}
    for coeff, atoms in entry:
        for mono, c in _mono_mul_word((0, 0, 0), atoms, d).items():
            s = out.get(mono)
            s = coeff * c if s is None else s + coeff * c
            if s.num.is_zero():
                out.pop(mono, None)
            else:
                out[mono] = s
    return tuple(out.items())


def pi_generator(name, word, j, k):
    """The operator pi_word(t_jk) via the coproduct path sum."""
    p = preset(name)
    n = p.n_gen
    if not (1 <= j <= n and 1 <= k <= n):
        raise ValueError(f"generator index ({j},{k}) outside 1..{n}")
    w = letters_arg(name, word)
    out = {}
    stack = [(0, j, ONE, ())]
    while stack:
        pos, cur, coeff, monos = stack.pop()
        if pos == len(w):
            if cur == k:
                s = out.get(monos)
                s = coeff if s is None else s + coeff
                if s.num.is_zero():
                    out.pop(monos, None)
                else:
                    out[monos] = s
            continue
        for nxt in range(1, n + 1):
            if not p.pi_matrix[w[pos]][cur - 1][nxt - 1]:
                continue
            for mono, c in _entry_terms(name, w[pos], cur, nxt):
                stack.append((pos + 1, nxt, coeff * c, monos + (mono,)))
    return out


def _t_polynomial_op(name, word, tpoly):
    w = word_arg(name, word)
    out = {}
    for coeff, factors in tpoly:
        term = op_identity(len(w))
        for j, k in factors:
            term = op_mul(name, w, term, pi_generator(name, w, j, k))
        out = op_add(out, op_scale(term, coeff))
    return out


@lru_cache(maxsize=None)
def _sigma_data(name, word, tag):
    """(operator, diagonal k-powers or None) for sigma / sigma_e."""
    p = preset(name)
    i, kind = tag
    op = _t_polynomial_op(name, word, p.sigma_polys[(i, kind)])
    if kind != "sigma":
        return op, None
    if len(op) != 1:
        raise ArithmeticError(
            f"pi_{word}(sigma_{i}) of {name} is not a monomial: "
            f"{len(op)} canonical terms")
    (monos, coeff), = op.items()
    if any(x or y for x, _, y in monos):
        raise ArithmeticError(
            f"pi_{word}(sigma_{i}) of {name} is not diagonal")
    if not (coeff.den.is_one() and coeff.num.is_monomial()
            and abs(next(iter(coeff.num.c.values()))) == 1):
        raise ArithmeticError(
            f"pi_{word}(sigma_{i}) of {name} has a non-unit prefactor: "
            f"{coeff}")
    return op, tuple(t for _, t, _ in monos)


def sigma_op(name, word, i):
    """pi_word(sigma_i): guaranteed a single diagonal +-q^N k-monomial."""
    return _sigma_data(name, word_arg(name, word), (i, "sigma"))[0]


def sigma_e_op(name, word, i):
    """pi_word(sigma_i e_i)."""
    return _sigma_data(name, word_arg(name, word), (i, "sigma_e"))[0]


@lru_cache(maxsize=None)
def _xi_cached(name, word, i):
    op, taus = _sigma_data(name, word, (i, "sigma"))
    coeff = next(iter(op.values()))
    inverse = {tuple((0, -t, 0) for t in taus): ONE / coeff}
    se = _sigma_data(name, word, (i, "sigma_e"))[0]
    return op_scale(op_mul(name, word, se, inverse), preset(name).lam(i))


def xi_op(name, word, i):
    """pi_word(xi_i) with xi_i = lambda_i (sigma_i e_i) sigma_i^{-1}."""
    return _xi_cached(name, word_arg(name, word), i)


def xi_apply(name, word, i, vec, tilde=True):
    return apply_op(name, word, xi_op(name, word, i), vec, tilde=tilde)


def xi_divided_apply(name, word, i, vec, r, tilde=True):
    """Apply the divided power xi_i^{(r)} = xi_i^r / [r]_{q_i}!."""
    p = preset(name)
    for _ in range(r):
        vec = xi_apply(name, word, i, vec, tilde=tilde)
    return {A: c / qfact(r, p.d[i]) for A, c in vec.items()}


def xi_matrix(name, label, i, weight):
    """Matrix of xi_i on scaled kets, shaped like pbw.rho_matrix.

    Returns (rows, cols, entries): cols enumerate the kets of the source
    weight for the given word label, rows those of the raised weight,
    entries {(row tuple, col tuple): coefficient}.
    """
    p = preset(name)
    cols = tuples_with_weight(name, label, weight)
    inc = p.letter_increment(i)
    rows = tuples_with_weight(name, label,
                              (weight[0] + inc[0], weight[1] + inc[1]))
    entries = {}
    for A in cols:
        img = xi_apply(name, label, i, {A: ONE}, tilde=True)
        for B, c in img.items():
            entries[(B, A)] = c
    return rows, cols, entries
