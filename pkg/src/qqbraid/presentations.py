"""The four presented superalgebra families as terminating rewriting systems.

Families (frames f, super rank n):

* ``A``       -- quantum coordinate superalgebra, generators t[i,a] for
                 i = 1..f, a in I_{n|n}, Koszul parity |a|;
* ``APi``     -- its parity-twisted partner, generators of parity |a|+1;
* ``AbarNeg`` -- dual quantum coordinate superalgebra on the negative frame
                 block, generators tb[x,a] for x = -f..-1, parity |a|+1;
* ``AbarPi``  -- its parity-twisted partner, parity |a|.

Each family's defining matrix relation collapses to one generator-level
relation; instantiating it at every index pair and solving the resulting
linear system for the out-of-order products yields oriented rewrite rules
with PBW normal forms (even exponents free, odd exponents at most one).
The matrix forms are re-checked against these rules through the texpr
evaluator in the test suite.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from math import comb

from ._linalg import rref
from .qscalar import MINUS_ONE, ONE, XI, ZERO, Scalar, sign
from .reports import Report
from .supertensor import index_set, phi_exp, wpar

FAMILIES = ("A", "APi", "AbarNeg", "AbarPi")


class PresentationError(ValueError):
    pass


def _q(k):
    return Scalar.q_power(k)


def _delta(cond):
    return 1 if cond else 0


class Presentation:
    """A presented superalgebra with oriented degree-2 rewrite rules."""

    def __init__(self, family, frames, n):
        if family not in FAMILIES:
            raise PresentationError("unknown family %r" % family)
        if frames < 0 or n < 1:
            raise PresentationError("need frames >= 0 and n >= 1")
        self.family = family
        self.frames = frames
        self.n = n
        if family in ("A", "APi"):
            self.frame_range = list(range(1, frames + 1))
        else:
            self.frame_range = list(range(-frames, 0))
        self.gens = [
            (f, a) for f in self.frame_range for a in index_set(n)
        ]
        self.gen_index = {g: k for k, g in enumerate(self.gens)}
        shift = 1 if family in ("APi", "AbarNeg") else 0
        self.parity = [(wpar(a) + shift) & 1 for (_, a) in self.gens]
        self.rules = self._derive_rules()
        self._nf_cache = {}
        self._mul_cache = {}

    # -- generators -----------------------------------------------------------

    def generator(self, frame, weight):
        """Alias-resolved generator: (index, coefficient)."""
        fam = self.family
        if fam == "A" and frame < 0:
            frame, weight = -frame, -weight
            coeff = ONE
        elif fam == "AbarNeg" and frame > 0:
            coeff = sign(wpar(weight))
            frame, weight = -frame, -weight
        else:
            coeff = ONE
        idx = self.gen_index.get((frame, weight))
        if idx is None:
            raise PresentationError(
                "no generator at frame %d weight %d in %s" % (frame, weight, self)
            )
        return idx, coeff

    def gen_name(self, idx):
        f, a = self.gens[idx]
        base = {"A": "t", "APi": "tp", "AbarNeg": "tb", "AbarPi": "tbp"}[self.family]
        return "%s[%d,%d]" % (base, f, a)

    def word_parity(self, word):
        return sum(self.parity[g] for g in word) & 1

    # -- defining relation ------------------------------------------------------

    def relation_combo(self, i, a, j, b):
        """The generator-level relation instance at ((i,a),(j,b)) as a
        zero-summing list of (coefficient, two-letter word)."""
        g = self.gen_index
        wa, wb = wpar(a), wpar(b)
        fam = self.family
        if fam == "A":
            terms = [
                (_q(_delta(i == j)), (g[i, a], g[j, b])),
                (-(sign(wa * wb) * _q(phi_exp(a, b))), (g[j, b], g[i, a])),
                (-(XI * Scalar.from_int(_delta(a < b) - _delta(j < i))), (g[j, a], g[i, b])),
                (-(sign(wb) * XI * Scalar.from_int(_delta(-a < b))), (g[j, -a], g[i, -b])),
            ]
        elif fam == "APi":
            terms = [
                (_q(_delta(i == j)), (g[i, a], g[j, b])),
                (-(sign((wa ^ 1) * (wb ^ 1)) * _q(-phi_exp(a, b))), (g[j, b], g[i, a])),
                (-(XI * Scalar.from_int(_delta(b < a) - _delta(j < i))), (g[j, a], g[i, b])),
                (-(sign(wb ^ 1) * XI * Scalar.from_int(_delta(b < -a))), (g[j, -a], g[i, -b])),
            ]
        elif fam == "AbarNeg":
            terms = [
                (_q(-_delta(i == j)), (g[i, a], g[j, b])),
                (-(sign((wa ^ 1) * (wb ^ 1)) * _q(phi_exp(a, b))), (g[j, b], g[i, a])),
                (-(XI * Scalar.from_int(_delta(i < j) - _delta(b < a))), (g[j, a], g[i, b])),
                ((sign(wa) * XI * Scalar.from_int(_delta(b < -a))), (g[j, -a], g[i, -b])),
            ]
        else:  # AbarPi
            terms = [
                (_q(-_delta(i == j)), (g[i, a], g[j, b])),
                (-(sign(wa * wb) * _q(-phi_exp(a, b))), (g[j, b], g[i, a])),
                (-(XI * Scalar.from_int(_delta(i < j) - _delta(a < b))), (g[j, a], g[i, b])),
                (-(sign(wa) * XI * Scalar.from_int(_delta(-a < b))), (g[j, -a], g[i, -b])),
            ]
        return [(c, w) for c, w in terms if c]

    def relation_instances(self):
        """All (i,a,j,b) relation instances over the presented index ranges."""
        out = []
        for i in self.frame_range:
            for j in self.frame_range:
                for a in index_set(self.n):
                    for b in index_set(self.n):
                        combo = self.relation_combo(i, a, j, b)
                        if combo:
                            out.append(combo)
        return out

    # -- rule derivation ----------------------------------------------------------

    def is_bad_pair(self, g, h):
        return g > h or (g == h and self.parity[g])

    def _derive_rules(self):
        rows = []
        for combo in self.relation_instances():
            row = {}
            for c, w in combo:
                cur = row.get(w, ZERO) + c
                if cur:
                    row[w] = cur
                elif w in row:
                    del row[w]
            if row:
                rows.append(row)
        bad = [
            (g, h)
            for g in range(len(self.gens))
            for h in range(len(self.gens))
            if self.is_bad_pair(g, h)
        ]
        badset = set(bad)

        def order(col):
            return (0, col) if col in badset else (1, col)

        pivots = rref(rows, order)
        rules = {}
        for col, row in pivots.items():
            if col not in badset:
                raise PresentationError(
                    "relation system pivots on a normal word %r" % (col,)
                )
            rhs = {}
            for c2, v2 in row.items():
                if c2 == col:
                    continue
                if c2 in badset:
                    raise PresentationError("rule %r not resolved to normal words" % (col,))
                rhs[c2] = -v2
            rules[col] = rhs
        if set(rules) != badset:
            missing = badset - set(rules)
            raise PresentationError("no rule derived for %r" % (sorted(missing)[:4],))
        return rules

    # -- normal forms ------------------------------------------------------------

    def first_bad(self, word):
        for k in range(len(word) - 1):
            if self.is_bad_pair(word[k], word[k + 1]):
                return k
        return None

    def normal_form(self, word):
        """Fully reduced element of the algebra, as dict monomial -> Scalar."""
        return dict(self._nf(tuple(word)))

    def _nf(self, word):
        cached = self._nf_cache.get(word)
        if cached is not None:
            return cached
        pos = self.first_bad(word)
        if pos is None:
            res = {word: ONE}
        else:
            res = {}
            rule = self.rules[(word[pos], word[pos + 1])]
            head, tail = word[:pos], word[pos + 2 :]
            for pair, c in rule.items():
                for m, cv in self._nf(head + pair + tail).items():
                    cur = res.get(m, ZERO) + c * cv
                    if cur:
                        res[m] = cur
                    elif m in res:
                        del res[m]
        self._nf_cache[word] = res
        return res

    def reduce_random(self, word, rng, budget=200000):
        """Reduce with random redex choice; returns (element, steps)."""
        result = {}
        work = [(ONE, tuple(word))]
        steps = 0
        while work:
            c, w = work.pop()
            spots = [
                k for k in range(len(w) - 1) if self.is_bad_pair(w[k], w[k + 1])
            ]
            if not spots:
                cur = result.get(w, ZERO) + c
                if cur:
                    result[w] = cur
                elif w in result:
                    del result[w]
                continue
            steps += 1
            if steps > budget:
                raise PresentationError("reduction budget exhausted on %r" % (word,))
            k = rng.choice(spots)
            for pair, cr in self.rules[(w[k], w[k + 1])].items():
                work.append((c * cr, w[:k] + pair + w[k + 2 :]))
        return result, steps

    # -- element arithmetic ---------------------------------------------------------

    def unit(self):
        return {(): ONE}

    def gen_elem(self, frame, weight):
        idx, c = self.generator(frame, weight)
        return {(idx,): c}

    def elem_mul(self, x, y):
        out = {}
        for m1, c1 in x.items():
            for m2, c2 in y.items():
                c = c1 * c2
                key = (m1, m2)
                prod = self._mul_cache.get(key)
                if prod is None:
                    prod = self._nf(m1 + m2)
                    self._mul_cache[key] = prod
                for m, cv in prod.items():
                    cur = out.get(m, ZERO) + c * cv
                    if cur:
                        out[m] = cur
                    elif m in out:
                        del out[m]
        return out

    # -- graded dimensions -------------------------------------------------------------

    def dim_component(self, d):
        """Number of PBW monomials of total degree d."""
        if d < 0:
            raise PresentationError("degree must be >= 0")
        n_even = sum(1 for p in self.parity if p == 0)
        n_odd = len(self.parity) - n_even
        total = 0
        for o in range(min(d, n_odd) + 1):
            e = d - o
            if n_even == 0:
                if e > 0:
                    continue
                total += comb(n_odd, o)
                continue
            total += comb(n_even + e - 1, e) * comb(n_odd, o)
        return total

    def normal_monomials(self, d):
        """All PBW monomials of degree d, ascending generator order."""

        def rec(start, d):
            if d == 0:
                yield ()
                return
            for g in range(start, len(self.gens)):
                top = 1 if self.parity[g] else d
                for e in range(1, top + 1):
                    for rest in rec(g + 1, d - e):
                        yield (g,) * e + rest

        return list(rec(0, d))

    def random_word(self, rng, max_len):
        ln = rng.randint(1, max_len)
        return tuple(rng.randrange(len(self.gens)) for _ in range(ln))

    def render_elem(self, el):
        if not el:
            return "0"
        parts = []
        for m in sorted(el):
            parts.append("(%s)*%s" % (el[m], "*".join(self.gen_name(g) for g in m) or "1"))
        return " + ".join(parts)

    def __repr__(self):
        return "Presentation(%s, frames=%d, n=%d)" % (self.family, self.frames, self.n)


@lru_cache(maxsize=None)
def make_presentation(family, frames, n):
    return Presentation(family, frames, n)


# ---------------------------------------------------------------------------
# element helpers (elements are dicts monomial -> Scalar)


def el_add(x, y):
    out = dict(x)
    for m, c in y.items():
        cur = out.get(m, ZERO) + c
        if cur:
            out[m] = cur
        elif m in out:
            del out[m]
    return out


def el_scale(x, c):
    if not c:
        return {}
    return {m: c * v for m, v in x.items()}


def el_sub(x, y):
    return el_add(x, el_scale(y, MINUS_ONE))


def el_equal(x, y):
    return x == y


# ---------------------------------------------------------------------------
# verification suites


def confluence_probe(pres, trials=1000, max_len=5, seed=0):
    """Random words reduced under two independent random strategies must agree."""
    rng = random.Random(seed)
    checked = 0
    for _ in range(trials):
        word = pres.random_word(rng, max_len)
        r1 = random.Random(rng.randrange(2**30))
        r2 = random.Random(rng.randrange(2**30))
        try:
            el1, _ = pres.reduce_random(word, r1)
            el2, _ = pres.reduce_random(word, r2)
        except PresentationError as exc:
            return Report.fail("confluence", witness=str(exc))
        if el1 != el2 or el1 != pres.normal_form(word):
            return Report.fail(
                "confluence",
                witness="word %s: %s vs %s"
                % (
                    "*".join(pres.gen_name(g) for g in word),
                    pres.render_elem(el1),
                    pres.render_elem(el2),
                ),
            )
        checked += 1
    return Report.ok("confluence", checked=checked)


def critical_pair_check(pres):
    """Local confluence on all length-3 overlaps of rule left sides.

    Together with termination of the deglex-decreasing rules this is the
    diamond-lemma certificate that normal monomials form a basis.
    """
    checked = 0
    for (g1, g2) in pres.rules:
        for (h1, h2) in pres.rules:
            if g2 != h1:
                continue
            word = (g1, g2, h2)
            left = {}
            for pair, c in pres.rules[(g1, g2)].items():
                for m, cv in pres._nf(pair + (h2,)).items():
                    cur = left.get(m, ZERO) + c * cv
                    if cur:
                        left[m] = cur
                    elif m in left:
                        del left[m]
            right = {}
            for pair, c in pres.rules[(h1, h2)].items():
                for m, cv in pres._nf((g1,) + pair).items():
                    cur = right.get(m, ZERO) + c * cv
                    if cur:
                        right[m] = cur
                    elif m in right:
                        del right[m]
            if left != right:
                return Report.fail(
                    "critical-pairs",
                    witness="overlap %s" % "*".join(pres.gen_name(g) for g in word),
                )
            checked += 1
    return Report.ok("critical-pairs", checked=checked)


def classical_limit_check(pres):
    """At q = 1 every rule degenerates to supercommutativity."""
    for (g, h), rhs in pres.rules.items():
        if g == h:
            expect = {}
        else:
            expect = {(h, g): 1 if not (pres.parity[g] and pres.parity[h]) else -1}
        got = {}
        for pair, c in rhs.items():
            v = c.eval_at_one()
            if v:
                got[pair] = got.get(pair, 0) + v
        got = {k: v for k, v in got.items() if v}
        if got != expect:
            return Report.fail(
                "classical-limit",
                witness="rule %s*%s -> %s at q=1"
                % (pres.gen_name(g), pres.gen_name(h), got),
            )
    return Report.ok("classical-limit", checked=len(pres.rules))


def _dual_case_combos(s, n, case):
    """Zero-summing combos (coeff, [(frame, weight), (frame, weight)]) for the
    four-case dual-presentation lemma, with frames in the signed ranges."""
    combos = []
    pos = range(1, s + 1)
    neg = range(-s, 0)
    idx = index_set(n)
    if case == 1:
        ranges = [(al, be) for al in neg for be in neg]
    elif case == 2:
        ranges = [(al, be) for al in pos for be in neg]
    elif case == 3:
        ranges = [(al, be) for al in neg for be in pos]
    else:
        ranges = [(al, be) for al in pos for be in pos]
    for al, be in ranges:
        for a in idx:
            for b in idx:
                wa, wb = wpar(a), wpar(b)
                if case == 1:
                    terms = [
                        (_q(-_delta(al == be)), [(al, a), (be, b)]),
                        (-(sign((wa ^ 1) * (wb ^ 1)) * _q(phi_exp(a, b))), [(be, b), (al, a)]),
                        (-(XI * Scalar.from_int(_delta(al < be) - _delta(b < a))), [(be, a), (al, b)]),
                        ((sign(wa) * XI * Scalar.from_int(_delta(b < -a))), [(be, -a), (al, -b)]),
                    ]
                elif case == 2:
                    terms = [
                        (_q(-_delta(-al == be)), [(al, a), (be, b)]),
                        (-(sign(wa * wb + wa) * _q(phi_exp(-a, b))), [(be, b), (al, a)]),
                        ((sign(wa + wb) * XI * Scalar.from_int(_delta(-al < be) - _delta(b < -a))), [(be, -a), (al, -b)]),
                        (-(sign(wb) * XI * Scalar.from_int(_delta(b < a))), [(be, a), (al, b)]),
                    ]
                elif case == 3:
                    terms = [
                        (_q(phi_exp(al, be)), [(al, a), (be, b)]),
                        (-(sign(wa * wb + wb) * _q(phi_exp(a, b))), [(be, b), (al, a)]),
                        (-(sign(wb) * XI * Scalar.from_int(_delta(b < a) - 1)), [(be, a), (al, b)]),
                        (-(sign(wa + wb) * XI * Scalar.from_int(_delta(-al < be) - _delta(b < -a))), [(be, -a), (al, -b)]),
                    ]
                else:
                    terms = [
                        (_q(phi_exp(al, be)), [(al, a), (be, b)]),
                        (-(sign(wa * wb) * _q(phi_exp(a, b))), [(be, b), (al, a)]),
                        (-(XI * Scalar.from_int(_delta(b < a) - _delta(al < be))), [(be, a), (al, b)]),
                        (-(sign(wa) * XI * Scalar.from_int(1 - _delta(b < -a))), [(be, -a), (al, -b)]),
                    ]
                combos.append([(c, w) for c, w in terms if c])
    return combos


def check_presentation_equivalence_dual(s, n):
    """The four-case proof displays of the dual presentation lemma, verified
    as normal-form identities after alias resolution."""
    pres = make_presentation("AbarNeg", s, n)
    checked = 0
    for case in (1, 2, 3, 4):
        for combo in _dual_case_combos(s, n, case):
            acc = {}
            for c, pairs in combo:
                coeff = c
                word = []
                for fr, w in pairs:
                    idx, al_c = pres.generator(fr, w)
                    coeff = coeff * al_c
                    word.append(idx)
                for m, cv in pres._nf(tuple(word)).items():
                    cur = acc.get(m, ZERO) + coeff * cv
                    if cur:
                        acc[m] = cur
                    elif m in acc:
                        del acc[m]
            if acc:
                return Report.fail(
                    "dual-lemma",
                    witness="case %d residue %s" % (case, pres.render_elem(acc)),
                )
            checked += 1
    return Report.ok("dual-lemma", checked=checked)
