"""Parser and evaluator for tensor-leg notation such as ``S^{12} T^{1[3]}``.

Superscript labels name tensor positions: a bare integer is a matrix leg,
a bracketed integer ``[3]`` (optionally primed, ``[3']``) an algebra slot.
Juxtaposition is multiplication, ``==`` forms an equation.

Evaluation is a term calculus in the graded tensor product of the legs'
matrix algebras and the slots' presented superalgebras: every symbol
expands into terms whose components sit at labelled positions, a product
concatenates component sequences, and sorting the sequence into position
order contributes the Koszul sign (-1)^{p p'} per transposition of odd
components.  Components landing on the same leg compose as matrix units;
components on the same slot multiply in that slot's algebra (normal-formed
unless free mode is requested).  This single convention reproduces every
displayed identity, including the generator-level forms of the defining
relations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .presentations import Presentation
from .qscalar import ONE, ZERO, Scalar
from .reports import Report
from .supertensor import TensorOperator, index_set, wpar


class TexprError(ValueError):
    pass


class TexprSyntaxError(TexprError):
    def __init__(self, message, pos):
        super().__init__("%s (at position %d)" % (message, pos))
        self.pos = pos


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Label:
    kind: str  # "leg" | "slot"
    num: int
    primed: bool = False

    @property
    def poskey(self):
        # primed slots order just after their unprimed base
        return (self.num, 1 if self.primed else 0)

    def render(self):
        if self.kind == "leg":
            return str(self.num)
        return "[%d%s]" % (self.num, "'" if self.primed else "")


@dataclass(frozen=True)
class Symbol:
    name: str
    labels: tuple

    def render(self):
        return "%s^{%s}" % (self.name, "".join(l.render() for l in self.labels))


@dataclass(frozen=True)
class Product:
    factors: tuple

    def render(self):
        return " ".join(f.render() for f in self.factors)


@dataclass(frozen=True)
class Equation:
    lhs: Product
    rhs: Product

    def render(self):
        return "%s == %s" % (self.lhs.render(), self.rhs.render())


_NAME = re.compile(r"[A-Za-z][A-Za-z0-9]*[+-]?")


def parse(text):
    """Parse an expression or equation; syntax errors carry a position."""
    pos = 0
    n = len(text)

    def skip_ws(p):
        while p < n and text[p].isspace():
            p += 1
        return p

    def parse_product(p):
        factors = []
        while True:
            p = skip_ws(p)
            if p >= n or text.startswith("==", p):
                break
            m = _NAME.match(text, p)
            if not m:
                raise TexprSyntaxError("expected symbol name", p)
            name = m.group(0)
            p = m.end()
            if not text.startswith("^{", p):
                raise TexprSyntaxError("expected '^{' after %r" % name, p)
            p += 2
            labels = []
            while True:
                if p >= n:
                    raise TexprSyntaxError("unbalanced brace", p)
                ch = text[p]
                if ch == "}":
                    p += 1
                    break
                if ch.isdigit():
                    # bare digits are one leg label each, as in S^{12}
                    labels.append(Label("leg", int(ch)))
                    p += 1
                elif ch == "[":
                    q = p + 1
                    while q < n and text[q].isdigit():
                        q += 1
                    if q == p + 1:
                        raise TexprSyntaxError("expected digits after '['", q)
                    num = int(text[p + 1 : q])
                    primed = False
                    if q < n and text[q] in ("'", "′"):
                        primed = True
                        q += 1
                    if q >= n or text[q] != "]":
                        raise TexprSyntaxError("expected ']'", q)
                    labels.append(Label("slot", num, primed))
                    p = q + 1
                else:
                    raise TexprSyntaxError("bad label character %r" % ch, p)
            if not labels:
                raise TexprSyntaxError("empty label list", p)
            factors.append(Symbol(name, tuple(labels)))
        if not factors:
            raise TexprSyntaxError("empty product", p)
        return Product(tuple(factors)), p

    lhs, pos = parse_product(pos)
    pos = skip_ws(pos)
    if pos < n and text.startswith("==", pos):
        rhs, pos = parse_product(pos + 2)
        pos = skip_ws(pos)
        if pos != n:
            raise TexprSyntaxError("trailing input", pos)
        return Equation(lhs, rhs)
    if pos != n:
        raise TexprSyntaxError("trailing input", pos)
    return lhs


def render(ast):
    return ast.render()


# ---------------------------------------------------------------------------
# bindings


class OperatorBinding:
    """A leg-only symbol backed by a TensorOperator."""

    def __init__(self, op: TensorOperator):
        self.op = op
        self.arity = len(op.legs)
        self.kinds = ("leg",) * self.arity

    def leg_space(self, k):
        return tuple(index_set(self.op.legs[k]))

    def terms(self):
        for (rows, cols), v in self.op.entries.items():
            comps = [
                ("leg", k, (rows[k], cols[k]), (wpar(rows[k]) + wpar(cols[k])) & 1)
                for k in range(self.arity)
            ]
            yield v, comps


class GeneratorMatrixBinding:
    """A symbol of the form sum_units E x generator: one leg, one slot.

    `entries` is a list of (row, col, coeff, gen_index); the unit's parity is
    |row|+|col| and the generator's parity comes from the presentation.
    """

    def __init__(self, pres: Presentation, entries, row_space, col_space):
        self.pres = pres
        self.entries = entries
        self.row_space = tuple(row_space)
        self.col_space = tuple(col_space)
        self.arity = 2
        self.kinds = ("leg", "slot")

    def leg_space(self, k):
        return None  # rectangular; never identity-expanded

    def terms(self):
        par = self.pres.parity
        for row, col, coeff, gidx in self.entries:
            yield coeff, [
                ("leg", 0, (row, col), (wpar(row) + wpar(col)) & 1),
                ("slot", 1, gidx, par[gidx]),
            ]


class IdentityBinding:
    """``Id^{...}``: identity on each named leg of a fixed size."""

    def __init__(self, size, arity):
        self.size = size
        self.arity = arity
        self.kinds = ("leg",) * arity

    def leg_space(self, k):
        return tuple(index_set(self.size))

    def terms(self):
        import itertools

        for idx in itertools.product(index_set(self.size), repeat=self.arity):
            yield ONE, [("leg", k, (idx[k], idx[k]), 0) for k in range(self.arity)]


def generator_matrix(pres: Presentation, checked=False):
    """The family's generator matrix as a texpr binding.

    A/APi: T = sum E_{ia} x t_{ia} (rows frames, cols weights);
    Abar kinds: Tbar = sum E_{b,alpha} x tb_{alpha b} (rows weights, cols frames).
    """
    entries = []
    if pres.family in ("A", "APi"):
        for gidx, (f, a) in enumerate(pres.gens):
            entries.append((f, a, ONE, gidx))
        return GeneratorMatrixBinding(
            pres, entries, pres.frame_range, index_set(pres.n)
        )
    for gidx, (f, b) in enumerate(pres.gens):
        entries.append((b, f, ONE, gidx))
    return GeneratorMatrixBinding(pres, entries, index_set(pres.n), pres.frame_range)


def generator_matrix_full(pres: Presentation):
    """Generator matrix over the full symmetric index range I_{f|f}.

    For A this realizes T = sum_{i in I_{r|r}} E_{ia} x t_{ia} through the
    alias t_{ia} = t_{-i,-a}; for AbarNeg it realizes
    Tbar = sum (-1)^{|b|(|alpha|+|b|)} E_{b,alpha} x tb_{alpha b}.
    """
    entries = []
    frames = [f for f in index_set(pres.frames)]
    if pres.family == "A":
        for i in frames:
            for a in index_set(pres.n):
                gidx, coeff = pres.generator(i, a)
                entries.append((i, a, coeff, gidx))
        return GeneratorMatrixBinding(pres, entries, frames, index_set(pres.n))
    if pres.family == "AbarNeg":
        for al in frames:
            for b in index_set(pres.n):
                gidx, coeff = pres.generator(al, b)
                pref = -ONE if (wpar(b) & (wpar(al) + wpar(b))) & 1 else ONE
                entries.append((b, al, pref * coeff, gidx))
        return GeneratorMatrixBinding(pres, entries, index_set(pres.n), frames)
    raise TexprError("full-range generator matrix only for A and AbarNeg")


# ---------------------------------------------------------------------------
# mixed tensors


class MixedTensor:
    """Evaluation result: legs and slots in position order, sparse entries.

    Entries are keyed by (rows, cols, slotwords): one (row, col) pair per
    leg and one monomial per slot.
    """

    def __init__(self, leg_keys, slot_keys, slot_pres):
        self.leg_keys = tuple(leg_keys)
        self.slot_keys = tuple(slot_keys)
        self.slot_pres = tuple(slot_pres)
        self.entries = {}

    def add(self, rows, cols, words, coeff):
        key = (rows, cols, words)
        cur = self.entries.get(key, ZERO) + coeff
        if cur:
            self.entries[key] = cur
        elif key in self.entries:
            del self.entries[key]

    def __eq__(self, other):
        return (
            isinstance(other, MixedTensor)
            and self.leg_keys == other.leg_keys
            and self.slot_keys == other.slot_keys
            and self.entries == other.entries
        )

    def first_difference(self, other):
        keys = sorted(set(self.entries) | set(other.entries))
        for key in keys:
            a = self.entries.get(key, ZERO)
            b = other.entries.get(key, ZERO)
            if a != b:
                return key, a, b
        return None

    def describe_key(self, key):
        rows, cols, words = key
        legs = ",".join(
            "%d:(%s|%s)" % (self.leg_keys[k][0], rows[k], cols[k])
            for k in range(len(self.leg_keys))
        )
        slots = ",".join(
            "[%d%s]:%s"
            % (
                self.slot_keys[k][0],
                "'" if self.slot_keys[k][1] else "",
                "*".join(self.slot_pres[k].gen_name(g) for g in words[k]) or "1",
            )
            for k in range(len(self.slot_keys))
        )
        return "; ".join(x for x in (legs, slots) if x)


# ---------------------------------------------------------------------------
# evaluation


def _universe(products, env):
    leg_keys = {}
    slot_pres = {}
    for product in products:
        for sym in product.factors:
            binding = env.get(sym.name)
            if binding is None:
                raise TexprError("unbound symbol %r" % sym.name)
            if sym.name == "Id":
                binding = IdentityBinding(binding.size, len(sym.labels))
            if len(sym.labels) != binding.arity:
                raise TexprError(
                    "symbol %s has arity %d, got %d labels"
                    % (sym.name, binding.arity, len(sym.labels))
                )
            for k, lab in enumerate(sym.labels):
                if lab.kind != binding.kinds[k]:
                    raise TexprError(
                        "label %s of %s should be a %s"
                        % (lab.render(), sym.name, binding.kinds[k])
                    )
                if lab.kind == "leg":
                    leg_keys.setdefault(lab.poskey, None)
                    space = binding.leg_space(k)
                    if space is not None and leg_keys[lab.poskey] is None:
                        leg_keys[lab.poskey] = space
                else:
                    pres = binding.pres
                    prev = slot_pres.get(lab.poskey)
                    if prev is not None and prev is not pres:
                        raise TexprError(
                            "slot %s bound to two different algebras" % lab.render()
                        )
                    slot_pres[lab.poskey] = pres
    return leg_keys, slot_pres


def _eval_product(product, env, leg_keys, slot_pres, reduce, partial=False):
    legs = sorted(leg_keys)
    slots = sorted(slot_pres)
    pres_list = [slot_pres[s] for s in slots]
    # running terms: (coeff, legstate, slotstate); states keyed by poskey
    terms = [(ONE, {}, {})]
    for sym in product.factors:
        binding = env[sym.name]
        if sym.name == "Id":
            binding = IdentityBinding(binding.size, len(sym.labels))
        poskeys = [lab.poskey for lab in sym.labels]
        expanded = []
        fragments = list(binding.terms())
        for coeff0, legstate0, slotstate0 in terms:
            for fcoeff, comps in fragments:
                coeff = coeff0 * fcoeff
                legstate = dict(legstate0)
                slotstate = dict(slotstate0)
                dead = False
                for kind, k, payload, par in comps:
                    pos = poskeys[k]
                    if par:
                        cross = 0
                        for p2, (_, _, pleg) in legstate.items():
                            if p2 > pos:
                                cross ^= pleg
                        for p2, (_, pslot) in slotstate.items():
                            if p2 > pos:
                                cross ^= pslot
                        if cross:
                            coeff = -coeff
                    if kind == "leg":
                        row, col = payload
                        cur = legstate.get(pos)
                        if cur is None:
                            legstate[pos] = (row, col, par)
                        else:
                            r0, c0, p0 = cur
                            if c0 != row:
                                dead = True
                                break
                            legstate[pos] = (r0, col, (p0 + par) & 1)
                    else:
                        cur = slotstate.get(pos)
                        if cur is None:
                            slotstate[pos] = ((payload,), par)
                        else:
                            word, p0 = cur
                            slotstate[pos] = (word + (payload,), (p0 + par) & 1)
                if not dead:
                    expanded.append((coeff, legstate, slotstate))
        terms = expanded
    out = MixedTensor(legs, slots, pres_list)
    for coeff, legstate, slotstate in terms:
        rows, cols = [], []
        untouched = False
        for pos in legs:
            cur = legstate.get(pos)
            if cur is None:
                if partial:
                    rows.append(None)
                    cols.append(None)
                    continue
                untouched = True
                break
            rows.append(cur[0])
            cols.append(cur[1])
        if untouched:
            # identity-expand untouched legs
            _expand_identity(out, legs, leg_keys, slots, slotstate, legstate, coeff, reduce)
            continue
        _emit(out, tuple(rows), tuple(cols), slots, slotstate, coeff, reduce)
    return out


def _expand_identity(out, legs, leg_keys, slots, slotstate, legstate, coeff, reduce):
    import itertools

    free = [pos for pos in legs if pos not in legstate]
    spaces = []
    for pos in free:
        space = leg_keys[pos]
        if space is None:
            raise TexprError("leg %d untouched and no square space known" % pos[0])
        spaces.append(space)
    for ids in itertools.product(*spaces):
        st = dict(legstate)
        for pos, d in zip(free, ids):
            st[pos] = (d, d, 0)
        rows = tuple(st[pos][0] for pos in legs)
        cols = tuple(st[pos][1] for pos in legs)
        _emit(out, rows, cols, slots, slotstate, coeff, reduce)


def _emit(out, rows, cols, slots, slotstate, coeff, reduce):
    parts = [[((), ONE)]] * len(slots) if slots else []
    words = []
    for k, pos in enumerate(slots):
        cur = slotstate.get(pos)
        words.append(cur[0] if cur else ())
    if reduce:
        choices = []
        for k, pos in enumerate(slots):
            nf = out.slot_pres[k].normal_form(words[k])
            choices.append(list(nf.items()))
        _emit_product(out, rows, cols, choices, coeff)
    else:
        out.add(rows, cols, tuple(words), coeff)


def _emit_product(out, rows, cols, choices, coeff):
    import itertools

    for combo in itertools.product(*choices) if choices else [()]:
        c = coeff
        ws = []
        for w, cv in combo:
            c = c * cv
            ws.append(w)
        if c:
            out.add(rows, cols, tuple(ws), c)


def mixed_mul(a: MixedTensor, b: MixedTensor):
    """Product of two mixed tensors over the same leg/slot universe.

    Independent of the factor-by-factor evaluator: used to certify that
    grouping a product in any order yields the same tensor.  Slot words are
    concatenated (free mode); each component of b crosses the components of
    a sitting at strictly larger positions, with the usual Koszul sign.
    """
    if a.leg_keys != b.leg_keys or a.slot_keys != b.slot_keys:
        raise TexprError("universe mismatch in mixed_mul")
    out = MixedTensor(a.leg_keys, a.slot_keys, a.slot_pres)
    legs, slots = a.leg_keys, a.slot_keys

    def leg_par(r, c):
        if r is None:
            return 0
        return (wpar(r) + wpar(c)) & 1

    for (ra, ca, wa), va in a.entries.items():
        apar = []
        for i in range(len(legs)):
            apar.append((legs[i], leg_par(ra[i], ca[i])))
        for j in range(len(slots)):
            apar.append((slots[j], a.slot_pres[j].word_parity(wa[j])))
        for (rb, cb, wb), vb in b.entries.items():
            # None marks a leg the factor group never touched (identity)
            if any(
                ca[i] is not None and rb[i] is not None and ca[i] != rb[i]
                for i in range(len(legs))
            ):
                continue
            rows, cols = [], []
            for i in range(len(legs)):
                if ra[i] is None:
                    rows.append(rb[i])
                    cols.append(cb[i])
                elif rb[i] is None:
                    rows.append(ra[i])
                    cols.append(ca[i])
                else:
                    rows.append(ra[i])
                    cols.append(cb[i])
            e = 0
            for i in range(len(legs)):
                pb = leg_par(rb[i], cb[i])
                if pb:
                    e ^= sum(p for pos, p in apar if pos > legs[i]) & 1
            for j in range(len(slots)):
                pb = b.slot_pres[j].word_parity(wb[j])
                if pb:
                    e ^= sum(p for pos, p in apar if pos > slots[j]) & 1
            val = va * vb
            if e & 1:
                val = -val
            out.add(
                tuple(rows),
                tuple(cols),
                tuple(wa[j] + wb[j] for j in range(len(slots))),
                val,
            )
    return out


def evaluate(ast, env, reduce=True):
    """Evaluate a product to a MixedTensor (slot entries normal-formed)."""
    if isinstance(ast, Equation):
        raise TexprError("evaluate takes a product; use check_identity for equations")
    if isinstance(ast, Symbol):
        ast = Product((ast,))
    leg_keys, slot_pres = _universe([ast], env)
    return _eval_product(ast, env, leg_keys, slot_pres, reduce)


def evaluate_partial(ast, env, leg_keys, slot_pres):
    """Free-mode evaluation over a given universe, leaving untouched legs as
    None wildcards; building block for the grouping-independence check."""
    if isinstance(ast, Symbol):
        ast = Product((ast,))
    return _eval_product(ast, env, leg_keys, slot_pres, reduce=False, partial=True)


def check_identity(eq, env, reduce=True, name=None):
    """Evaluate both sides over a common universe and compare exactly."""
    if isinstance(eq, str):
        eq = parse(eq)
    if not isinstance(eq, Equation):
        raise TexprError("check_identity needs an equation")
    name = name or eq.render()
    leg_keys, slot_pres = _universe([eq.lhs, eq.rhs], env)
    lhs = _eval_product(eq.lhs, env, leg_keys, slot_pres, reduce)
    rhs = _eval_product(eq.rhs, env, leg_keys, slot_pres, reduce)
    if lhs == rhs:
        return Report.ok(name, checked=1)
    diff = lhs.first_difference(rhs)
    key, a, b = diff
    return Report.fail(
        name,
        witness="entry %s: lhs=%s rhs=%s" % (lhs.describe_key(key), a, b),
        checked=1,
    )


# ---------------------------------------------------------------------------
# standard environments


def ops_env(n):
    """Bind the scalar operators at super rank n under their ASCII names."""
    from . import supertensor as st

    env = {
        "S": OperatorBinding(st.build_S(n)),
        "Sinv": OperatorBinding(st.build_S_inv(n)),
        "SJ": OperatorBinding(st.build_S_J(n)),
        "J": OperatorBinding(st.build_J(n)),
        "D": OperatorBinding(st.build_D(n)),
        "Dinv": OperatorBinding(st.build_D_inv(n)),
        "Stilde": OperatorBinding(st.build_S_tilde(n)),
    }
    env["Id"] = IdentityBinding(n, 2)
    return env


def family_env(pres: Presentation):
    """Environment for the defining matrix relation of one presentation."""
    from . import supertensor as st

    env = ops_env(pres.n)
    f = pres.frames
    if f:
        env["R+"] = OperatorBinding(st.build_R_plus(f))
        env["R-"] = OperatorBinding(st.build_R_minus(f))
    name = {
        "A": "T",
        "APi": "Tcheck",
        "AbarNeg": "Tbar",
        "AbarPi": "Tbarcheck",
    }[pres.family]
    env[name] = generator_matrix(pres)
    return env


DEFINING_RELATIONS = {
    "A": "R+^{12} T^{1[3]} T^{2[3]} == T^{2[3]} T^{1[3]} S^{12}",
    "APi": "R+^{12} Tcheck^{1[3]} Tcheck^{2[3]} == Tcheck^{2[3]} Tcheck^{1[3]} SJ^{12}",
    "AbarNeg": "Tbar^{1[3]} Tbar^{2[3]} R-^{12} == S^{12} Tbar^{2[3]} Tbar^{1[3]}",
    "AbarPi": "Tbarcheck^{1[3]} Tbarcheck^{2[3]} R-^{12} == SJ^{12} Tbarcheck^{2[3]} Tbarcheck^{1[3]}",
}


def check_defining_relation(pres):
    """The family's matrix-form relation holds in the rewriting quotient."""
    return check_identity(
        DEFINING_RELATIONS[pres.family],
        family_env(pres),
        name="%s matrix relation (f=%d, n=%d)" % (pres.family, pres.frames, pres.n),
    )
