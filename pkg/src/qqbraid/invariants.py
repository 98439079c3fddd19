"""Invariant elements in the four-fold tensor supermodule A x APi x Abar x AbarPi.

L_ab acts through the three-fold iterated coproduct
sum_{a<=c<=d<=e<=b} L_ac x L_cd x L_de x L_eb with the supermodule Koszul
signs accumulated left to right; an element z is invariant when every
generator acts by the counit, act(a,b,z) = delta_ab z.  The four families
x, y, z, w of contraction sums are built exactly as displayed and checked
generator by generator.
"""

from __future__ import annotations

import itertools

from .actions import ActionTable, derive_action
from .braidiso import GenMap, tau, tau_bar
from .presentations import make_presentation
from .qscalar import ONE, ZERO, Scalar, sign
from .reports import Report
from .supertensor import index_set, wpar


class Context4:
    """Slot presentations and the matching U_q(q_n)-action tables."""

    def __init__(self, actions):
        self.actions = tuple(actions)
        self.n = actions[0].m
        if any(a.m != self.n for a in actions):
            raise ValueError("all four actions must share the acting rank")

    @staticmethod
    def standard(r, k, s, l, n):
        return Context4(
            (
                derive_action("phi", r, n),
                derive_action("phipi", k, n),
                derive_action("phibar", s, n),
                derive_action("phibarpi", l, n),
            )
        )

    @staticmethod
    def plain(r, k, s, l, n):
        """All-plain slots (A, A, Abar, Abar): the tau-transported target."""
        return Context4(
            (
                derive_action("phi", r, n),
                derive_action("phi", k, n),
                derive_action("phibar", s, n),
                derive_action("phibar", l, n),
            )
        )

    def presentations(self):
        return tuple(a.target for a in self.actions)

    def act(self, a, b, el4):
        """act4: the iterated-coproduct action of L_ab."""
        if a > b:
            raise ValueError("L_ab needs a <= b")
        idx = [c for c in index_set(self.n) if a <= c <= b]
        out = {}
        for key, coeff in el4.items():
            pars = [
                self.actions[i].target.word_parity(key[i]) for i in range(4)
            ]
            # Koszul prefix: parity of the slots strictly before slot i
            prefix = [
                0,
                pars[0] & 1,
                (pars[0] + pars[1]) & 1,
                (pars[0] + pars[1] + pars[2]) & 1,
            ]
            for c in idx:
                for d in idx:
                    if d < c:
                        continue
                    for e in idx:
                        if e < d:
                            continue
                        bounds = (a, c, d, e, b)
                        exp = 0
                        for i in range(1, 4):
                            pu = (wpar(bounds[i]) + wpar(bounds[i + 1])) & 1
                            exp ^= pu & prefix[i]
                        vals = []
                        dead = False
                        for i in range(4):
                            v = self.actions[i].apply_word(
                                bounds[i], bounds[i + 1], key[i]
                            )
                            if not v:
                                dead = True
                                break
                            vals.append(v)
                        if dead:
                            continue
                        base = -coeff if exp else coeff
                        for combo in itertools.product(*(v.items() for v in vals)):
                            c_all = base
                            mons = []
                            for m, cv in combo:
                                c_all = c_all * cv
                                mons.append(m)
                            k2 = tuple(mons)
                            cur = out.get(k2, ZERO) + c_all
                            if cur:
                                out[k2] = cur
                            elif k2 in out:
                                del out[k2]
        return out

    def check_invariant(self, el4, name="element"):
        idx = index_set(self.n)
        checked = 0
        for a in idx:
            for b in idx:
                if a > b:
                    continue
                got = self.act(a, b, el4)
                want = el4 if a == b else {}
                if got != want:
                    return Report.fail(
                        "invariant %s" % name,
                        witness="L[%d,%d] moves it: %s" % (a, b, _render4(self, got)),
                        checked=checked,
                    )
                checked += 1
        return Report.ok("invariant %s" % name, checked=checked)

    def check_product_words(self, el4, trials=10, seed=0):
        """Invariance under short random words in the L generators."""
        import random

        rng = random.Random(seed)
        pairs = [
            (a, b)
            for a in index_set(self.n)
            for b in index_set(self.n)
            if a <= b
        ]
        checked = 0
        for _ in range(trials):
            (a, b) = pairs[rng.randrange(len(pairs))]
            (c, d) = pairs[rng.randrange(len(pairs))]
            got = self.act(a, b, self.act(c, d, el4))
            want = el4 if (a == b and c == d) else {}
            if got != want:
                return Report.fail(
                    "invariant-words",
                    witness="L[%d,%d]L[%d,%d]" % (a, b, c, d),
                    checked=checked,
                )
            checked += 1
        return Report.ok("invariant-words", checked=checked)


def _render4(ctx, el4):
    if not el4:
        return "0"
    parts = []
    pres = ctx.presentations()
    for key in sorted(el4):
        factors = []
        for i in range(4):
            factors.append(
                "*".join(pres[i].gen_name(g) for g in key[i]) or "1"
            )
        parts.append("(%s)*[%s]" % (el4[key], " (x) ".join(factors)))
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# the four families


def build_xyzw(r, k, s, l, n, ctx=None):
    """The displayed generators of the invariant subalgebra, keyed by
    (family, row index, column index)."""
    ctx = ctx or Context4.standard(r, k, s, l, n)
    a_r, a_kpi, a_sbar, a_lpi = ctx.presentations()
    out = {}
    for i in range(1, r + 1):
        for al in range(1, s + 1):
            el = {}
            for p in index_set(n):
                g1, c1 = a_r.generator(i, p)
                g3, c3 = a_sbar.generator(al, p)
                key = ((g1,), (), (g3,), ())
                cur = el.get(key, ZERO) + c1 * c3
                if cur:
                    el[key] = cur
            out[("x", i, al)] = el
    for j in range(1, k + 1):
        for al in range(1, s + 1):
            el = {}
            for p in index_set(n):
                g2, c2 = a_kpi.generator(j, -p)
                g3, c3 = a_sbar.generator(al, p)
                key = ((), (g2,), (g3,), ())
                cur = el.get(key, ZERO) + c2 * c3
                if cur:
                    el[key] = cur
            out[("y", j, al)] = el
    for i in range(1, r + 1):
        for be in range(-1, -l - 1, -1):
            el = {}
            for p in index_set(n):
                g1, c1 = a_r.generator(i, p)
                g4, c4 = a_lpi.generator(be, -p)
                key = ((g1,), (), (), (g4,))
                cur = el.get(key, ZERO) + sign(wpar(p)) * c1 * c4
                if cur:
                    el[key] = cur
            out[("z", i, be)] = el
    for j in range(1, k + 1):
        for be in range(-1, -l - 1, -1):
            el = {}
            for p in index_set(n):
                g2, c2 = a_kpi.generator(j, p)
                g4, c4 = a_lpi.generator(be, p)
                key = ((), (g2,), (), (g4,))
                cur = el.get(key, ZERO) + sign(wpar(p)) * c2 * c4
                if cur:
                    el[key] = cur
            out[("w", j, be)] = el
    return out


def transport_tau(el4, k, l, n, ctx_plain: Context4):
    """(1 x tau x 1 x tau_bar): move the Pi slots onto their plain partners."""
    t2 = tau(k, n)
    t4 = tau_bar(l, n)
    out = {}
    for (m1, m2, m3, m4), c in el4.items():
        c2, w2 = t2.word_image(m2)
        c4, w4 = t4.word_image(m4)
        for m2n, cv2 in t2.dst._nf(w2).items():
            for m4n, cv4 in t4.dst._nf(w4).items():
                key = (m1, m2n, m3, m4n)
                cur = out.get(key, ZERO) + c * c2 * c4 * cv2 * cv4
                if cur:
                    out[key] = cur
                elif key in out:
                    del out[key]
    return out


def check_invariants(r, k, s, l, n, families=("x", "y", "z", "w"), with_words=True):
    """The full invariance suite for one parameter choice."""
    from .reports import combine

    ctx = Context4.standard(r, k, s, l, n)
    elems = build_xyzw(r, k, s, l, n, ctx)
    reports = []
    for key in sorted(elems):
        if key[0] not in families:
            continue
        name = "%s[%d,%d] (n=%d,r=%d,k=%d,s=%d,l=%d)" % (key + (n, r, k, s, l))
        reports.append(ctx.check_invariant(elems[key], name))
    if with_words and elems:
        first = elems[sorted(elems)[0]]
        reports.append(ctx.check_product_words(first))
    return combine(
        "invariants", reports, n=n, r=r, k=k, s=s, l=l
    )


def check_tau_transport(r, k, s, l, n):
    """Invariance survives the identification with the all-plain slots."""
    from .reports import combine

    ctx = Context4.standard(r, k, s, l, n)
    ctx_plain = Context4.plain(r, k, s, l, n)
    elems = build_xyzw(r, k, s, l, n, ctx)
    reports = []
    for key in sorted(elems):
        moved = transport_tau(elems[key], k, l, n, ctx_plain)
        name = "tau-transport %s[%d,%d]" % key
        reports.append(ctx_plain.check_invariant(moved, name))
    return combine("tau-transport", reports, n=n, r=r, k=k, s=s, l=l)


def negative_controls(n):
    """Non-invariant elements must fail with witnesses."""
    from .reports import combine

    ctx = Context4.standard(1, 1, 1, 1, n)
    a_r = ctx.presentations()[0]
    g, c = a_r.generator(1, 1)
    bare = {((g,), (), (), ()): c}
    r1 = ctx.check_invariant(bare, "bare generator")
    elems = build_xyzw(1, 1, 1, 1, n, ctx)
    x = dict(elems[("x", 1, 1)])
    key = sorted(x)[0]
    x[key] = -x[key]
    r2 = ctx.check_invariant(x, "sign-corrupted x")
    reports = []
    for rep, label in ((r1, "bare"), (r2, "corrupted")):
        if rep.passed:
            reports.append(
                Report.fail("negative-control %s" % label, witness="unexpectedly invariant")
            )
        elif not rep.witness:
            reports.append(
                Report.fail("negative-control %s" % label, witness="no witness produced")
            )
        else:
            reports.append(Report.ok("negative-control %s" % label, checked=1))
    return combine("negative-controls", reports, n=n)


def invariants_to_json(r, k, s, l, n):
    ctx = Context4.standard(r, k, s, l, n)
    elems = build_xyzw(r, k, s, l, n, ctx)
    out = {}
    for key in sorted(elems):
        out["%s[%d,%d]" % key] = _render4(ctx, elems[key])
    return out
