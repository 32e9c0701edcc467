"""PBW-ordered enveloping algebra of so(n) over the moment field.

Elements are sums of non-decreasing generator words (generators are the
momentum components in lexicographic pair order) with coefficients that are
rationals or rational functions of the moments.  Normal ordering rewrites
e_b e_a -> e_a e_b + [e_b, e_a] using the momentum structure constants; the
rewriting is confluent, so the stored form is canonical and zero tests are
structural.

Products are computed by folding single-generator left-multiplications over
a suffix trie of the left factor, with the generator-into-sorted-word
insertion memoized; this keeps the degree-4 by degree-4 commutators at
n = 6 tractable.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .brackets import LiePoissonPoly, momentum_vars, structure_table
from .ratfunc import MultiPoly
from .report import VerificationReport
from .son import MomentSpec, pair_index, pair_list

_INSERT_CACHE = {}
_SYM_CACHE = {}
_MEMO_WORD_LIMIT = 6


def clear_caches():
    _INSERT_CACHE.clear()
    _SYM_CACHE.clear()


def gen_bracket(n, u, v):
    """[e_u, e_v] as (sign, w) with the bracket equal to sign * e_w, or None."""
    if u == v:
        return None
    table = structure_table(n)
    if u < v:
        return table.get((u, v))
    hit = table.get((v, u))
    if hit is None:
        return None
    w, s = hit
    return (w, -s)


def _insert(n, g, w):
    """Normal ordering of e_g * (sorted word w) as {word: integer coefficient}."""
    key = (n, g, w)
    cached = _INSERT_CACHE.get(key)
    if cached is not None:
        return cached
    if not w or g <= w[0]:
        result = {(g,) + w: 1}
    else:
        # e_g w = e_{w0} (e_g w') + [e_g, e_{w0}] w'; the first product must
        # re-normalize because bracket corrections inside e_g w' may start
        # with a generator below w0 (the recursion terminates: either the
        # degree dropped or the subword is the plain sorted merge)
        a = w[0]
        rest = w[1:]
        result = dict(_gen_mul_terms(n, a, _insert(n, g, rest)))
        br = gen_bracket(n, g, a)
        if br is not None:
            h, s = br
            for word, c in _insert(n, h, rest).items():
                cur = result.get(word, 0) + s * c
                if cur:
                    result[word] = cur
                else:
                    result.pop(word, None)
    if len(w) <= _MEMO_WORD_LIMIT:
        _INSERT_CACHE[key] = result
    return result


def _gen_mul_terms(n, g, terms):
    """e_g * element, elementwise on a {word: coef} map."""
    out = {}
    for w, c in terms.items():
        for word, k in _insert(n, g, w).items():
            cur = out.get(word)
            val = c if k == 1 else c * k
            if cur is None:
                out[word] = val
            else:
                s = cur + val
                if s:
                    out[word] = s
                else:
                    del out[word]
    return out


class PBWElement:
    """Canonical-form element: {sorted generator word: nonzero coefficient}."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        self.terms = {}
        if terms:
            for w, c in terms.items():
                if c:
                    self.terms[w] = c

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def const(cls, n, c):
        return cls(n, {(): c})

    @classmethod
    def generator(cls, n, pair):
        i, j = pair
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        if i == j:
            return cls.zero(n)
        return cls(n, {(pair_index(n)[(i, j)],): Fraction(sign)})

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((len(w) for w in self.terms), default=-1)

    # -- linear structure ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PBWElement):
            if other.n != self.n:
                raise ValueError("mixed dimensions")
            return other
        if isinstance(other, (int, Fraction)):
            return PBWElement.const(self.n, Fraction(other))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for w, c in other.terms.items():
            cur = terms.get(w)
            if cur is None:
                terms[w] = c
            else:
                s = cur + c
                if s:
                    terms[w] = s
                else:
                    del terms[w]
        out = PBWElement(self.n)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = PBWElement(self.n)
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def scale(self, c):
        if not c:
            return PBWElement.zero(self.n)
        out = PBWElement(self.n)
        out.terms = {w: v * c for w, v in self.terms.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return pbw_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def integerized(self):
        """Rescale so all coefficients are integers (Fraction coefficients
        only); returns (element, scale) with element = scale * self."""
        denom = 1
        for c in self.terms.values():
            denom = denom * c.denominator // _gcd(denom, c.denominator)
        out = PBWElement(self.n)
        out.terms = {w: int(c * denom) for w, c in self.terms.items()}
        return out, denom

    def principal_symbol(self) -> LiePoissonPoly:
        """Top-degree part read as a commutative momentum polynomial."""
        d = self.degree()
        vars = momentum_vars(self.n)
        terms = {}
        for w, c in self.terms.items():
            if len(w) != d:
                continue
            mono = [0] * len(vars)
            for g in w:
                mono[g] += 1
            terms[tuple(mono)] = terms.get(tuple(mono), 0) + c
        return LiePoissonPoly(self.n, MultiPoly(vars, terms))

    def map_coeffs(self, fn):
        out = PBWElement(self.n)
        out.terms = {w: v for w, c in self.terms.items() if (v := fn(c))}
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        names = momentum_vars(self.n)
        parts = []
        for w in sorted(self.terms, key=lambda t: (len(t), t)):
            word = "*".join(names[g] for g in w) or "1"
            parts.append(f"({self.terms[w]})*{word}")
        return " + ".join(parts)

    __repr__ = __str__


def _gcd(a, b):
    from math import gcd

    return gcd(a, b)


def pbw_mul(a: PBWElement, b: PBWElement) -> PBWElement:
    """Product in canonical form via a suffix trie over the left factor."""
    if a.n != b.n:
        raise ValueError("mixed dimensions")
    n = a.n
    root = {}
    for w, c in a.terms.items():
        node = root
        for g in reversed(w):
            node = node.setdefault(g, {})
        node.setdefault(None, []).append(c)
    result = {}

    def dfs(node, terms):
        for key, sub in node.items():
            if key is None:
                for c in sub:
                    for w, v in terms.items():
                        cur = result.get(w)
                        val = c * v
                        if cur is None:
                            result[w] = val
                        else:
                            s = cur + val
                            if s:
                                result[w] = s
                            else:
                                del result[w]
            else:
                dfs(sub, _gen_mul_terms(n, key, terms))

    dfs(root, b.terms)
    out = PBWElement(n)
    out.terms = {w: c for w, c in result.items() if c}
    return out


def uea_commutator(a: PBWElement, b: PBWElement) -> PBWElement:
    return pbw_mul(a, b) - pbw_mul(b, a)


def commutator_is_zero(a: PBWElement, b: PBWElement) -> PBWElement:
    """The commutator, computed over integer-rescaled operands when both
    have Fraction coefficients (rescaling cannot change vanishing)."""
    try:
        ai, _ = a.integerized()
        bi, _ = b.integerized()
        return uea_commutator(ai, bi)
    except (AttributeError, TypeError):
        return uea_commutator(a, b)


def pbw_normalize(n, word_sum) -> PBWElement:
    """Canonical form of a sum of arbitrary-order generator words.

    ``word_sum`` is an iterable of (word, coefficient) with words as tuples
    of generator indices in any order.
    """
    acc = PBWElement.zero(n)
    for w, c in word_sum:
        cur = {(): c}
        for g in reversed(w):
            cur = _gen_mul_terms(n, g, cur)
        acc = acc + PBWElement(n, cur)
    return acc


# -- symmetrization ------------------------------------------------------------


def sym_word(n, letters):
    """Average over all orderings of the generator multiset, canonical form.

    Returned map has Fraction coefficients; it only depends on the multiset,
    so the cache key is the sorted letter tuple.
    """
    letters = tuple(sorted(letters))
    key = (n, letters)
    cached = _SYM_CACHE.get(key)
    if cached is not None:
        return cached
    if not letters:
        result = {(): Fraction(1)}
    else:
        k = len(letters)
        acc = {}
        seen = set()
        for idx, g in enumerate(letters):
            if g in seen:
                continue
            seen.add(g)
            mult = letters.count(g)
            rest = letters[:idx] + letters[idx + 1 :]
            sub = sym_word(n, rest)
            part = _gen_mul_terms(n, g, sub)
            w_mult = Fraction(mult, k)
            for w, c in part.items():
                cur = acc.get(w)
                val = c * w_mult
                if cur is None:
                    acc[w] = val
                else:
                    s = cur + val
                    if s:
                        acc[w] = s
                    else:
                        del acc[w]
        result = acc
    _SYM_CACHE[key] = result
    return result


def sym_k(n, generators) -> PBWElement:
    """Sym_k of a list of generator elements given as pairs (i, j).

    Each factor P_ij with i > j contributes a sign; a factor with i = j
    makes the product vanish.
    """
    sign = 1
    letters = []
    pidx = pair_index(n)
    for (i, j) in generators:
        if i == j:
            return PBWElement.zero(n)
        if i > j:
            i, j = j, i
            sign = -sign
        letters.append(pidx[(i, j)])
    terms = sym_word(n, tuple(letters))
    out = PBWElement(n)
    if sign == 1:
        out.terms = dict(terms)
    else:
        out.terms = {w: -c for w, c in terms.items()}
    return out


def symmetrize_momentum_poly(f: LiePoissonPoly) -> PBWElement:
    """Weyl symmetrization with respect to the momentum generators."""
    n = f.n
    acc = {}
    for mono, coef in f.poly.terms.items():
        letters = []
        for g, e in enumerate(mono):
            letters.extend([g] * e)
        for w, c in sym_word(n, tuple(letters)).items():
            cur = acc.get(w)
            val = coef * c
            if cur is None:
                acc[w] = val
            else:
                s = cur + val
                if s:
                    acc[w] = s
                else:
                    del acc[w]
    return PBWElement(n, acc)


# -- the quantized integrals -----------------------------------------------------


def hamiltonian_operator(spec: MomentSpec) -> PBWElement:
    """H-hat = 1/2 sum (P-hat_ij)^2 / (l_i + l_j)."""
    n = spec.n
    one = spec.coeff_one()
    terms = {}
    for k, (i, j) in enumerate(pair_list(n)):
        terms[(k, k)] = one / (2 * (spec.lambdas[i - 1] + spec.lambdas[j - 1]))
    return PBWElement(n, terms)


def manakov_operator(idx, n, spec: MomentSpec) -> PBWElement:
    """c-hat_{k,k-2l}: the classical integral with every momentum cycle
    replaced by the symmetrized operator product."""
    from .rigid_body import ManakovIndex, manakov_coefficient

    if idx.k > n:
        raise ValueError(f"index k={idx.k} exceeds dimension {n}")
    two_l = 2 * idx.l
    pidx = pair_index(n)
    scale = Fraction(1, 4 * idx.l)
    acc = {}

    def walks(prefix):
        if len(prefix) == two_l:
            if prefix[-1] == prefix[0]:
                return
            yield tuple(prefix)
            return
        for v in range(1, n + 1):
            if prefix and v == prefix[-1]:
                continue
            prefix.append(v)
            yield from walks(prefix)
            prefix.pop()

    for tup in walks([]):
        sign = 1
        letters = []
        cycle = list(tup) + [tup[0]]
        for a, b in zip(cycle, cycle[1:]):
            if a < b:
                letters.append(pidx[(a, b)])
            else:
                letters.append(pidx[(b, a)])
                sign = -sign
        coef = manakov_coefficient(idx, tup, spec) * (scale * sign)
        if not coef:
            continue
        for w, c in sym_word(n, tuple(letters)).items():
            cur = acc.get(w)
            val = coef * c
            if cur is None:
                acc[w] = val
            else:
                s = cur + val
                if s:
                    acc[w] = s
                else:
                    del acc[w]
    return PBWElement(n, acc)


def modified_c62(n, spec: MomentSpec) -> PBWElement:
    """The corrected degree-4 operator:
    C-hat_{6,2} = c-hat_{6,2} + (5/12) sum_{i<j} l_i^2 l_j^2 (P-hat_ij)^2.

    Defined for n >= 4 (the correction needs k = 6 <= n only for the base
    operator; the quantum claims fixed here are stated at n = 6).
    """
    from .rigid_body import ManakovIndex

    base = manakov_operator(ManakovIndex(6, 2), n, spec)
    terms = {}
    for k, (i, j) in enumerate(pair_list(n)):
        coef = (spec.lambdas[i - 1] ** 2) * (spec.lambdas[j - 1] ** 2) * Fraction(5, 12)
        terms[(k, k)] = coef
    return base + PBWElement(n, terms)


def correction_pair_count(n):
    return len(pair_list(n))


# -- obstruction coefficients ----------------------------------------------------


def quadratic_coefficient(spec: MomentSpec, l, i, j):
    """a^{ij}_{l,l-2} = (l_i^{2(l-1)} - l_j^{2(l-1)})/(l_i^2 - l_j^2); the
    formal value at l = 3/2 is 1/(l_i + l_j), so the Hamiltonian operator is
    minus the l = 3/2 instance of the quadratic integrals."""
    from .rigid_body import ManakovIndex, manakov_coefficient

    if l == Fraction(3, 2):
        one = spec.coeff_one()
        return one / (spec.lambdas[i - 1] + spec.lambdas[j - 1])
    return manakov_coefficient(ManakovIndex(l, 1), (i, j), spec)


def obstruction_b_raw(l, h, spec: MomentSpec, i, j, k):
    """b^{ijk}_{l,h} for [c-hat_{l,l-2}, c-hat_{h,h-4}] (h in {5, 6});
    l = 3/2 gives the Hamiltonian case."""
    from .rigid_body import ManakovIndex, manakov_coefficient

    if h not in (5, 6):
        raise ValueError("obstruction coefficients are defined for h in {5, 6}")
    n = spec.n
    idx4 = ManakovIndex(h, 2)

    def a4(a, b, c, d):
        return manakov_coefficient(idx4, (a, b, c, d), spec)

    def a2(a, b):
        return quadratic_coefficient(spec, l, a, b)

    others = [p for p in range(1, n + 1) if p not in (i, j, k)]
    term = a2(i, j) * (2 * a4(i, i, j, k) - 3 * a4(i, i, k, k) - sum(a4(i, i, k, p) for p in others))
    term = term + sum(a2(k, p) * (a4(i, i, j, k) - a4(i, i, j, p)) for p in others)
    return term


def obstruction_b(l, h, spec: MomentSpec, i, j, k):
    """Complete antisymmetrization b^{[ijk]}_{l,h} (normalized so that the
    commutator equals sum over ordered triples i<j<k of b^{[ijk]} Sym_3)."""
    perms = [
        ((i, j, k), 1),
        ((j, k, i), 1),
        ((k, i, j), 1),
        ((j, i, k), -1),
        ((i, k, j), -1),
        ((k, j, i), -1),
    ]
    total = None
    for (a, b, c), s in perms:
        val = obstruction_b_raw(l, h, spec, a, b, c) * s
        total = val if total is None else total + val
    return total * Fraction(1, 6)


def obstruction_b_closed_h6(l, spec: MomentSpec, i, j, k):
    """Closed form: b^{[ijk]}_{l,6} = 5/6 [l_i^{2(l-1)}(l_j^2 - l_k^2) + cyclic]."""
    li, lj, lk = (spec.lambdas[t - 1] for t in (i, j, k))
    e = l - 1
    body = li ** (2 * e) * (lj**2 - lk**2) + lj ** (2 * e) * (lk**2 - li**2) + lk ** (
        2 * e
    ) * (li**2 - lj**2)
    return body * Fraction(5, 6)


def hamiltonian_obstruction_b(spec: MomentSpec, i, j, k):
    """b^{ijk} for [H-hat, c-hat_{6,2}] = sum b^{ijk} Sym_3:
    -5/6 [l_i (l_j^2 - l_k^2) + cyclic]."""
    li, lj, lk = (spec.lambdas[t - 1] for t in (i, j, k))
    body = li * (lj**2 - lk**2) + lj * (lk**2 - li**2) + lk * (li**2 - lj**2)
    return body * Fraction(-5, 6)


def sym3_cycle(n, i, j, k) -> PBWElement:
    """Sym_3(P-hat_ij, P-hat_jk, P-hat_ki)."""
    return sym_k(n, [(i, j), (j, k), (k, i)])


def sym3_expansion(n, coeff_fn) -> PBWElement:
    """sum over ordered triples i<j<k of coeff_fn(i,j,k) * Sym_3 cycle."""
    acc = PBWElement.zero(n)
    for i in range(1, n - 1):
        for j in range(i + 1, n):
            for k in range(j + 1, n + 1):
                c = coeff_fn(i, j, k)
                if not c:
                    continue
                acc = acc + sym3_cycle(n, i, j, k).map_coeffs(lambda v: v * c)
    return acc


def hamiltonian_commutator(spec: MomentSpec, x: PBWElement) -> PBWElement:
    """[H-hat, x] computed term by term.

    Each [(P-hat_ij)^2, x] stays in the polynomial coefficient subring (no
    gcd work); the inertia weights 1/(2(l_i+l_j)) only enter the final
    15-term accumulation.  Equivalent to uea_commutator(hamiltonian, x) but
    much faster for symbolic moments.
    """
    n = spec.n
    one = spec.coeff_one()
    acc = PBWElement.zero(n)
    for (i, j) in pair_list(n):
        g = PBWElement.generator(n, (i, j))
        comm = uea_commutator(pbw_mul(g, g), x)
        if comm.is_zero():
            continue
        w = one / (2 * (spec.lambdas[i - 1] + spec.lambdas[j - 1]))
        acc = acc + comm.map_coeffs(lambda v: v * w)
    return acc


def correction_commutator_expansion(spec: MomentSpec, base: PBWElement) -> PBWElement:
    """(5/12) sum_{i<j} l_i^2 l_j^2 [base, (P-hat_ij)^2]."""
    n = spec.n
    acc = PBWElement.zero(n)
    for (i, j) in pair_list(n):
        g = PBWElement.generator(n, (i, j))
        sq = pbw_mul(g, g)
        w = (spec.lambdas[i - 1] ** 2) * (spec.lambdas[j - 1] ** 2)
        acc = acc + uea_commutator(base, sq).map_coeffs(lambda v: v * w)
    return acc.map_coeffs(lambda v: v * Fraction(5, 12))


def sym35_expansion(spec: MomentSpec) -> PBWElement:
    """The triple-sum Sym_3/Sym_5 side of the degree-4 correction identity:
    -(5/6) sum_{h,l,m} l_l^4 l_m^2 [ (5/3) Sym_3(P_hl,P_lm,P_mh)
                                     + sum_{i,j} Sym_5(P_ij,P_jh,P_hl,P_lm,P_mi) ].
    """
    n = spec.n
    acc = PBWElement.zero(n)
    for h in range(1, n + 1):
        for l in range(1, n + 1):
            for m in range(1, n + 1):
                w = (spec.lambdas[l - 1] ** 4) * (spec.lambdas[m - 1] ** 2)
                s3 = sym_k(n, [(h, l), (l, m), (m, h)])
                if not s3.is_zero():
                    acc = acc + s3.map_coeffs(lambda v: v * (w * Fraction(5, 3)))
                for i in range(1, n + 1):
                    for j in range(1, n + 1):
                        s5 = sym_k(n, [(i, j), (j, h), (h, l), (l, m), (m, i)])
                        if not s5.is_zero():
                            acc = acc + s5.map_coeffs(lambda v: v * w)
    return acc.map_coeffs(lambda v: v * Fraction(-5, 6))


# -- verification suite -----------------------------------------------------------

# Orientation note, pinned by test_obstruction_sign_orientation: with the
# bracket conventions used throughout (canonical {p_i, x_j} = delta_ij and
# the momentum structure constants it induces), every commutator expansion
# below equals MINUS the Sym_3/Sym_5 combination built from the closed-form
# b coefficients.  The opposite-orientation reading is excluded by an
# independent cross-check in the concrete differential-operator algebra
# (test_weyl_representation_cross_check); all vanishing statements are
# orientation-free.
EXPANSION_SIGN = -1


def verify_quantum_rigid(n, spec: MomentSpec, heavy=True) -> VerificationReport:
    """The full commutator battery for the quantum free rigid body.

    Exact zeros of PBW canonical forms throughout; ``heavy`` gates the
    degree-4 by degree-4 commutator.  Sampled-moment specs make every
    coefficient a plain rational; symbolic specs verify identities in the
    moment field.
    """
    from .rigid_body import ManakovIndex

    report = VerificationReport()
    anchor = "rigid-quantum"
    mode = "symbolic" if spec.is_symbolic else "sampled"
    report.config.update({"n": n, "mode": mode, "lambdas": [str(v) for v in spec.lambdas]})
    quad = {l: manakov_operator(ManakovIndex(l, 1), n, spec) for l in range(2, n + 1)}

    def record_zero(id_, a, b):
        c = commutator_is_zero(a, b)
        ok = c.is_zero()
        report.add(id_, anchor, ok, witness="0" if ok else str(c))
        return ok

    def record_zero_h(id_, b):
        c = hamiltonian_commutator(spec, b)
        ok = c.is_zero()
        report.add(id_, anchor, ok, witness="0" if ok else str(c))
        return ok

    # quadratic family and the Hamiltonian
    ls = sorted(quad)
    for ai in range(len(ls)):
        for bi in range(ai + 1, len(ls)):
            record_zero(f"[c{ls[ai]},{ls[ai]-2} , c{ls[bi]},{ls[bi]-2}]", quad[ls[ai]], quad[ls[bi]])
    for l in ls:
        record_zero_h(f"[H , c{l},{l-2}]", quad[l])

    # degree-2 against degree-4: obstruction expansions
    for h in (5, 6):
        if h > n:
            continue
        c4 = manakov_operator(ManakovIndex(h, 2), n, spec)
        for l in ls:
            comm = uea_commutator(quad[l], c4)
            rhs = sym3_expansion(n, lambda i, j, k: obstruction_b(l, h, spec, i, j, k))
            ok = (comm - rhs.scale(EXPANSION_SIGN)).is_zero()
            report.add(
                f"[c{l},{l-2} , c{h},{h-4}] == Sym3 expansion",
                anchor,
                ok,
                witness="matches (commutator = minus the closed-form combination)"
                if ok
                else "expansion mismatch",
            )
        if h == 5:
            ok = all(
                not obstruction_b(l, 5, spec, i, j, k)
                for l in ls
                for (i, j, k) in [(1, 2, 3), (1, 2, 5), (2, 3, 4)]
            )
            report.add(
                "b[ijk]_{l,5} == 0",
                anchor,
                ok,
                witness="antisymmetrized coefficients vanish" if ok else "nonzero obstruction",
            )
            c51 = c4
            for l in ls:
                record_zero(f"[c{l},{l-2} , c5,1]", quad[l], c51)
            record_zero_h("[H , c5,1]", c51)
        if h == 6:
            ok = all(
                obstruction_b(l, 6, spec, i, j, k) == obstruction_b_closed_h6(l, spec, i, j, k)
                for l in ls
                for (i, j, k) in [(1, 2, 3), (2, 4, 6), (1, 5, 6), (3, 4, 5)]
            )
            report.add(
                "b[ijk]_{l,6} closed form",
                anchor,
                ok,
                witness="raw antisymmetrization equals closed form" if ok else "mismatch",
            )
            comm = hamiltonian_commutator(spec, c4)
            nonzero = not comm.is_zero()
            report.add(
                "[H , c6,2] != 0",
                anchor,
                nonzero,
                witness=f"{len(comm.terms)} canonical terms" if nonzero else "unexpected zero",
            )
            rhs = sym3_expansion(n, lambda i, j, k: hamiltonian_obstruction_b(spec, i, j, k))
            ok = (comm - rhs.scale(EXPANSION_SIGN)).is_zero()
            spot = hamiltonian_obstruction_b(spec, 1, 2, 3)
            report.add(
                "[H , c6,2] == Sym3 expansion",
                anchor,
                ok,
                witness=f"b^123 = {spot}" if ok else "expansion mismatch",
            )
            c62mod = modified_c62(n, spec)
            record_zero_h("[H , C6,2]", c62mod)
            for l in ls:
                record_zero(f"[c{l},{l-2} , C6,2]", quad[l], c62mod)
            if heavy and n >= 5:
                c51 = manakov_operator(ManakovIndex(5, 2), n, spec)
                record_zero("[c5,1 , C6,2]", c51, c62mod)
                lhs = correction_commutator_expansion(spec, c51)
                rhs = sym35_expansion(spec)
                ok = (lhs - rhs.scale(EXPANSION_SIGN)).is_zero()
                report.add(
                    "correction commutator == Sym3/Sym5 expansion",
                    anchor,
                    ok,
                    witness="matches (same orientation as the Sym3 expansions)"
                    if ok
                    else "expansion mismatch",
                )
    return report


def verify_quantum_central_set(spec: MomentSpec, rng, rank_points=2, chart_bound=30) -> VerificationReport:
    """Quantized central sets: symmetrized Casimirs (full and per equal-moment
    block) commute with the equal-moment momenta exactly; independence is
    certified through the principal symbols at sampled chart points."""
    from .charts import GroupChart, jacobian_rank
    from .rigid_body import z_lambda, z_lambda_count

    n = spec.n
    report = VerificationReport()
    anchor = "rigid-quantum/central-set"
    funcs, labels = z_lambda(spec)
    ops = [symmetrize_momentum_poly(f) for f in funcs]
    lam_pairs = spec.equal_moment_pairs()
    for op, lb in zip(ops, labels):
        bad = None
        for p in lam_pairs:
            c = uea_commutator(op, PBWElement.generator(n, p))
            if not c.is_zero():
                bad = (p, c)
                break
        report.add(
            f"[{lb}-hat , P-hat(equal-moment pairs)]",
            anchor,
            bad is None,
            witness="0" if bad is None else f"nonzero at {bad[0]}: {bad[1]}",
        )
    report.add(
        "[Z-hat , right momenta]",
        anchor,
        True,
        witness="structural: left and right momentum algebras commute",
    )
    for op, f, lb in zip(ops, funcs, labels):
        ok = op.principal_symbol() == f
        report.add(
            f"symbol({lb}-hat) == {lb}",
            anchor,
            ok,
            witness="principal symbol equals the classical function" if ok else "symbol mismatch",
        )
    if rng is not None:
        count = z_lambda_count(spec)
        for s in range(rank_points):
            chart = GroupChart.random(n, rng, bound=chart_bound)
            rank = jacobian_rank(funcs, chart)
            report.add(
                f"symbol-rank Z-hat / sample{s}",
                anchor,
                rank == count,
                witness=f"rank {rank} of {count}",
                generic=True,
            )
    return report


def verify_quantum_flat_cases(n, rng, rank_points=1, chart_bound=30) -> VerificationReport:
    """The two all-n families: one equal-moment class, and one singleton plus
    an (n-1)-class.  The operator set is the classical set with momenta
    replaced by generators; its central part must commute with everything."""
    from .brackets import LiePoissonPoly
    from .charts import GroupChart, jacobian_rank
    from .rigid_body import centrality_defect, z_lambda

    report = VerificationReport()
    anchor = "rigid-quantum/flat-cases"
    cases = [((n,), (Fraction(2),)), ((1, n - 1), (Fraction(1), Fraction(2)))]
    for q, mus in cases:
        spec = MomentSpec.from_partition_values(q, mus)
        _, k, r, kbar = centrality_defect(spec)
        if r != 0:
            report.add(f"q={q} defect", anchor, False, witness=f"expected zero defect, got {r}")
            continue
        funcs, labels = z_lambda(spec)
        ops = [symmetrize_momentum_poly(f) for f in funcs]
        lam_pairs = spec.equal_moment_pairs()
        target = 2 * (n * (n - 1) // 2) - kbar
        ok_comm = True
        witness = "0"
        for op, lb in zip(ops, labels):
            for p in lam_pairs:
                c = uea_commutator(op, PBWElement.generator(n, p))
                if not c.is_zero():
                    ok_comm = False
                    witness = f"[{lb}-hat, P{p}] != 0"
                    break
            if not ok_comm:
                break
        report.add(f"q={q}: [Z-hat , F-hat] == 0", anchor, ok_comm, witness=witness)
        if rng is not None:
            chart = GroupChart.random(n, rng, bound=chart_bound)
            chosen = list(funcs)
            rank = jacobian_rank(chosen, chart)
            for p in lam_pairs:
                if len(chosen) == target:
                    break
                cand = LiePoissonPoly.gen(n, p)
                nr = jacobian_rank(chosen + [cand], chart)
                if nr > rank:
                    chosen.append(cand)
                    rank = nr
            for p in pair_list(n):
                if len(chosen) == target:
                    break
                cand = LiePoissonPoly.gen(n, p, side="R")
                nr = jacobian_rank(chosen + [cand], chart)
                if nr > rank:
                    chosen.append(cand)
                    rank = nr
            ok = len(chosen) == target and rank == target
            report.add(
                f"q={q}: quasi-independent completion",
                anchor,
                ok,
                witness=f"rank {rank} with {len(chosen)} of {target} functions",
                generic=True,
            )
    return report
