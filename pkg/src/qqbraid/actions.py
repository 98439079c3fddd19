"""Generator-level Hopf actions on the presented superalgebras.

Each action is determined by one matrix equation; `derive_action` evaluates
the explicit side with the texpr engine and reads the table off entrywise,
inverting the sign convention of the defining display
(L acting on a generator matrix carries (-1)^{|L_ab| |gen|}).

Action values on generators are degree <= 1; products are reached through
the coproduct Delta(L_ab) = sum_{a<=c<=b} L_ac x L_cb with the supermodule
superalgebra sign rule (plain kind) or its cop variant.
"""

from __future__ import annotations

import itertools

from .presentations import Presentation, el_add, el_scale, make_presentation
from .qscalar import ONE, ZERO, Scalar
from .reports import Report, combine
from .supertensor import build_S, build_S_inv, build_S_tilde, index_set, wpar
from .texpr import (
    OperatorBinding,
    check_identity,
    evaluate,
    generator_matrix,
    generator_matrix_full,
    ops_env,
    parse,
)


class ActionError(ValueError):
    pass


def counit(a, b):
    """epsilon(L_ab) = delta_ab."""
    if a > b:
        raise ActionError("L_ab needs a <= b")
    return ONE if a == b else ZERO


class ActionTable:
    """Generator-level data of one Hopf action, extended on demand."""

    def __init__(self, which, m, target: Presentation, kind, table):
        if kind not in ("plain", "cop"):
            raise ActionError("kind must be plain or cop")
        self.which = which
        self.m = m
        self.target = target
        self.kind = kind
        self.table = table  # (a, b) -> {gen index -> element}
        self._cache = {}

    def pairs(self):
        idx = index_set(self.m)
        return [(a, b) for a in idx for b in idx if a <= b]

    def on_generator(self, a, b, g):
        return self.table.get((a, b), {}).get(g, {})

    def apply_word(self, a, b, word):
        """Action of L_ab on a product of generators (free word), valued in
        the target quotient."""
        if a > b:
            raise ActionError("L_ab needs a <= b")
        word = tuple(word)
        key = (a, b, word)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        if not word:
            res = {(): ONE} if a == b else {}
        else:
            g, rest = word[0], word[1:]
            pg = self.target.parity[g]
            res = {}
            for c in index_set(self.m):
                if c < a or c > b:
                    continue
                if self.kind == "plain":
                    head = self.on_generator(a, c, g)
                    if not head:
                        continue
                    tail = self.apply_word(c, b, rest)
                    e = ((wpar(c) + wpar(b)) & 1) * pg
                else:
                    head = self.on_generator(c, b, g)
                    if not head:
                        continue
                    tail = self.apply_word(a, c, rest)
                    e = ((wpar(a) + wpar(c)) & 1) * ((wpar(c) + wpar(b) + pg) & 1)
                if not tail:
                    continue
                term = self.target.elem_mul(head, tail)
                if e & 1:
                    term = el_scale(term, Scalar.from_int(-1))
                res = el_add(res, term)
        self._cache[key] = res
        return res

    def apply(self, a, b, el):
        """Linear extension to elements of the target algebra."""
        out = {}
        for mon, c in el.items():
            out = el_add(out, el_scale(self.apply_word(a, b, mon), c))
        return out

    def to_json(self):
        tab = {}
        for (a, b) in sorted(self.table):
            row = {}
            for g in sorted(self.table[(a, b)]):
                row[self.target.gen_name(g)] = self.target.render_elem(
                    self.table[(a, b)][g]
                )
            tab["%d,%d" % (a, b)] = row
        return {
            "action": self.which,
            "acting_rank": self.m,
            "target": repr(self.target),
            "kind": self.kind,
            "table": tab,
        }


# ---------------------------------------------------------------------------
# derivation from the matrix equations

_SPECS = {
    # which: (family, acting side, expression, full_range, kind)
    "phi": ("A", "n", "T^{1[2]} Sact^{13}", False, "plain"),
    "phipi": ("APi", "n", "T^{1[2]} Sact^{13}", False, "plain"),
    "phibar": ("AbarNeg", "n", "Sact^{13} T^{1[2]}", False, "plain"),
    "phibarpi": ("AbarPi", "n", "Sact^{13} T^{1[2]}", False, "plain"),
    "psi": ("A", "frames", "Sact^{13} T^{1[2]}", True, "cop"),
    # psibar is cop like psi: the plain extension does not preserve the
    # defining relation (checked), the cop one does at every desk size
    "psibar": ("AbarNeg", "frames", "T^{1[2]} Sact^{13}", True, "cop"),
}

_ACT_OPS = {
    "phi": build_S,
    "phipi": build_S,
    "phibar": build_S_inv,
    "phibarpi": build_S_inv,
    "psi": build_S_inv,
    "psibar": build_S_tilde,
}


def derive_action(which, frames, n):
    """Expand the defining matrix equation of one of the six actions and
    equate coefficients."""
    if which not in _SPECS:
        raise ActionError("unknown action %r" % which)
    family, side, expr, full, kind = _SPECS[which]
    pres = make_presentation(family, frames, n)
    m = n if side == "n" else frames
    binding = generator_matrix_full(pres) if full else generator_matrix(pres)
    env = {"T": binding, "Sact": OperatorBinding(_ACT_OPS[which](m))}
    mt = evaluate(parse(expr), env)
    unit_of = {(row, col): (coeff, g) for row, col, coeff, g in binding.entries}
    table = {}
    seen = {}
    for (rows, cols, words), coeff in mt.entries.items():
        r1, r3 = rows
        c1, c3 = cols
        if r3 > c3:
            raise ActionError("matrix equation leaves the triangular range")
        ucoeff, g = unit_of[(r1, c1)]
        e = ((wpar(r3) + wpar(c3)) & 1) * pres.parity[g]
        val = coeff / ucoeff
        if e & 1:
            val = -val
        contrib = el_scale({words[0]: ONE}, val)
        row = table.setdefault((r3, c3), {})
        prev = seen.get((r3, c3, g, (r1, c1)))
        if prev is None:
            seen[(r3, c3, g, (r1, c1))] = contrib
            if g in row:
                # second unit of an aliased generator: must agree
                if row[g] != contrib:
                    raise ActionError(
                        "inconsistent alias extraction for %s" % pres.gen_name(g)
                    )
            else:
                row[g] = contrib
        else:
            prev_new = el_add(prev, contrib)
            seen[(r3, c3, g, (r1, c1))] = prev_new
            row[g] = el_add(row[g], contrib)
    # aliased generator matrices produce each table entry twice
    if full:
        for key, row in table.items():
            for g in row:
                units = [u for (a3, b3, gg, u) in seen if (a3, b3) == key and gg == g]
                if len(units) == 2:
                    u1, u2 = units
                    if seen[key + (g, u1)] != seen[key + (g, u2)]:
                        raise ActionError("alias rows disagree for %s" % pres.gen_name(g))
                    row[g] = seen[key + (g, u1)]
    return ActionTable(which, m, pres, kind, table)


# ---------------------------------------------------------------------------
# verification


def check_well_defined(action: ActionTable):
    """L_ab applied to every defining relation instance gives zero."""
    pres = action.target
    checked = 0
    for combo in pres.relation_instances():
        for (a, b) in action.pairs():
            acc = {}
            for c, w in combo:
                acc = el_add(acc, el_scale(action.apply_word(a, b, w), c))
            if acc:
                return Report.fail(
                    "well-defined %s" % action.which,
                    witness="L[%d,%d] on relation -> %s" % (a, b, pres.render_elem(acc)),
                    checked=checked,
                )
            checked += 1
    return Report.ok("well-defined %s" % action.which, checked=checked)


def check_counit_degree0(action: ActionTable):
    """On the unit the action is the counit."""
    for (a, b) in action.pairs():
        got = action.apply(a, b, {(): ONE})
        want = {(): ONE} if a == b else {}
        if got != want:
            return Report.fail(
                "counit %s" % action.which, witness="L[%d,%d].1 = %s" % (a, b, got)
            )
    return Report.ok("counit %s" % action.which, checked=len(action.pairs()))


def check_supercommute(act1: ActionTable, act2: ActionTable, spot_degree2=8, seed=0):
    """act1 and act2 super-commute on generators (and degree-2 spot checks)."""
    import random

    if act1.target is not act2.target:
        raise ActionError("actions on different algebras")
    pres = act1.target
    elems = [({(g,): ONE}, pres.parity[g]) for g in range(len(pres.gens))]
    rng = random.Random(seed)
    for _ in range(spot_degree2):
        g = rng.randrange(len(pres.gens))
        h = rng.randrange(len(pres.gens))
        el = pres.normal_form((g, h))
        if el:
            elems.append((el, (pres.parity[g] + pres.parity[h]) & 1))
    checked = 0
    for (a, b) in act1.pairs():
        p1 = (wpar(a) + wpar(b)) & 1
        for (c, d) in act2.pairs():
            p2 = (wpar(c) + wpar(d)) & 1
            for el, _ in elems:
                lhs = act1.apply(a, b, act2.apply(c, d, el))
                rhs = act2.apply(c, d, act1.apply(a, b, el))
                if p1 & p2:
                    rhs = el_scale(rhs, Scalar.from_int(-1))
                if lhs != rhs:
                    return Report.fail(
                        "supercommute %s/%s" % (act1.which, act2.which),
                        witness="L[%d,%d], L[%d,%d] on %s"
                        % (a, b, c, d, pres.render_elem(el)),
                        checked=checked,
                    )
                checked += 1
    return Report.ok("supercommute %s/%s" % (act1.which, act2.which), checked=checked)


def check_product_action(action: ActionTable, words=6, seed=1):
    """Composites L_ab L_cd act as the composition of the two actions,
    spot-checked on short random words in the L generators against the
    invariance pattern epsilon(uv) = epsilon(u) epsilon(v) on the unit."""
    import random

    rng = random.Random(seed)
    pairs = action.pairs()
    checked = 0
    for _ in range(words):
        (a, b) = pairs[rng.randrange(len(pairs))]
        (c, d) = pairs[rng.randrange(len(pairs))]
        got = action.apply(a, b, action.apply(c, d, {(): ONE}))
        want = {(): ONE} if (a == b and c == d) else {}
        if got != want:
            return Report.fail(
                "product-action %s" % action.which,
                witness="L[%d,%d]L[%d,%d].1" % (a, b, c, d),
                checked=checked,
            )
        checked += 1
    return Report.ok("product-action %s" % action.which, checked=checked)


def hopf_rtt_on_natural_module(n):
    """The defining RTT relation of U_q(q_n) instantiated on V_q via L -> S
    is exactly the Yang-Baxter identity for S."""
    return check_identity(
        "S^{12} S^{13} S^{23} == S^{23} S^{13} S^{12}",
        ops_env(n),
        name="RTT relation on natural module (n=%d)" % n,
    )
