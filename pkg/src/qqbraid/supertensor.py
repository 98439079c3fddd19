"""Super index sets, the sign exponent phi, and the scalar tensor operators.

A TensorOperator is a sparse matrix acting on a tensor product of super
vector spaces V_m with basis indexed by I_{m|m} = {-m..-1, 1..m}; the parity
of basis vector v_i is 0 for i > 0 and 1 for i < 0.

Operator products (`op_mul`) are taken in the graded tensor algebra
End(V)^{x k}, i.e. with the Koszul sign whenever a matrix-unit component of
the right factor crosses an odd component of the left factor on a later
leg.  This is the convention under which S satisfies the Yang-Baxter
equation and S_J = (1 x J) S (1 x J) holds literally; plain unsigned
composition (`compose_plain`) breaks both and is kept only as a negative
control.  Leg embedding itself inserts no signs.
"""

from __future__ import annotations

import itertools

from .qscalar import MINUS_ONE, ONE, XI, Scalar, sign

# ---------------------------------------------------------------------------
# super indices


def wpar(i):
    """Parity of the index i in I_{m|m}: 0 for i > 0, 1 for i < 0."""
    if i == 0:
        raise ValueError("0 is not a super index")
    return 0 if i > 0 else 1


def index_set(m):
    """I_{m|m} in its total order -m < ... < -1 < 1 < ... < m."""
    return list(range(-m, 0)) + list(range(1, m + 1))


def phi_exp(i, j):
    """phi(i,j) = (-1)^{|j|} (delta_{ij} + delta_{i,-j}), an int in {-1,0,1}."""
    d = (1 if i == j else 0) + (1 if i == -j else 0)
    return -d if j < 0 else d


# ---------------------------------------------------------------------------
# sparse operators


class LegSizeError(ValueError):
    pass


class TensorOperator:
    """Sparse multi-leg matrix with Scalar entries over super index sets."""

    __slots__ = ("legs", "entries")

    def __init__(self, legs, entries=None):
        self.legs = tuple(legs)
        self.entries = {}
        if entries:
            for key, val in entries.items():
                if val:
                    self.entries[key] = val

    def set(self, rows, cols, val):
        key = (tuple(rows), tuple(cols))
        cur = self.entries.get(key)
        new = cur + val if cur is not None else val
        if new:
            self.entries[key] = new
        elif cur is not None:
            del self.entries[key]

    def get(self, rows, cols):
        from .qscalar import ZERO

        return self.entries.get((tuple(rows), tuple(cols)), ZERO)

    def __eq__(self, other):
        return (
            isinstance(other, TensorOperator)
            and self.legs == other.legs
            and self.entries == other.entries
        )

    def __iter__(self):
        return iter(self.entries.items())

    def is_parity_homogeneous(self):
        """All entries connect multi-indices of equal total parity offset."""
        offs = {
            (sum(wpar(i) for i in r) + sum(wpar(i) for i in c)) & 1
            for (r, c) in self.entries
        }
        return len(offs) <= 1

    def scale(self, c):
        return TensorOperator(self.legs, {k: c * v for k, v in self.entries.items()})

    def add(self, other):
        if self.legs != other.legs:
            raise LegSizeError("leg mismatch in add")
        out = TensorOperator(self.legs, dict(self.entries))
        for (r, c), v in other.entries.items():
            out.set(r, c, v)
        return out

    def sub(self, other):
        return self.add(other.scale(MINUS_ONE))

    def to_json(self):
        items = sorted(
            (list(r), list(c), str(v)) for (r, c), v in self.entries.items()
        )
        return {"legs": list(self.legs), "entries": items}

    @staticmethod
    def from_json(data):
        from .qscalar import parse_scalar

        op = TensorOperator(tuple(data["legs"]))
        for r, c, s in data["entries"]:
            op.set(tuple(r), tuple(c), parse_scalar(s))
        return op


def identity_op(legs):
    op = TensorOperator(legs)
    for idx in itertools.product(*(index_set(m) for m in legs)):
        op.set(idx, idx, ONE)
    return op


def matrix_unit(legs, rows, cols, coeff=ONE):
    op = TensorOperator(legs)
    op.set(tuple(rows), tuple(cols), coeff)
    return op


def compose_plain(a, b):
    """Unsigned sparse composition; breaks the YBE, kept as negative control."""
    if a.legs != b.legs:
        raise LegSizeError("leg mismatch in compose")
    by_row = {}
    for (rb, cb), vb in b.entries.items():
        by_row.setdefault(rb, []).append((cb, vb))
    out = TensorOperator(a.legs)
    for (ra, ca), va in a.entries.items():
        hits = by_row.get(ca)
        if not hits:
            continue
        for cb, vb in hits:
            out.set(ra, cb, va * vb)
    return out


def op_mul(a, b):
    """Composition in the graded algebra End(V)^{x k}.

    Crossing the leg-i component of b past the leg-j components of a for
    i < j contributes (-1)^{p_b(i) p_a(j)} with p the parities of the
    respective matrix units.
    """
    if a.legs != b.legs:
        raise LegSizeError("leg mismatch in compose")
    k = len(a.legs)
    by_row = {}
    for (rb, cb), vb in b.entries.items():
        by_row.setdefault(rb, []).append((cb, vb))
    out = TensorOperator(a.legs)
    for (ra, ca), va in a.entries.items():
        hits = by_row.get(ca)
        if not hits:
            continue
        pa = [(wpar(ra[j]) + wpar(ca[j])) & 1 for j in range(k)]
        suff = [0] * (k + 1)
        for j in range(k - 1, -1, -1):
            suff[j] = suff[j + 1] + pa[j]
        for cb, vb in hits:
            e = 0
            for i in range(k):
                pb = (wpar(ca[i]) + wpar(cb[i])) & 1
                if pb:
                    e += suff[i + 1]
            val = va * vb
            if e & 1:
                val = -val
            out.set(ra, cb, val)
    return out


def embed_legs(op, positions, total_legs, sizes=None):
    """Place op on the 1-based `positions` of a `total_legs`-leg space.

    Identity on the remaining legs; no super signs are inserted, matching
    the literal reading of superscripts like S^{13}.
    """
    positions = list(positions)
    if positions != sorted(positions) or len(set(positions)) != len(positions):
        raise LegSizeError("positions must be strictly increasing")
    if len(positions) != len(op.legs):
        raise LegSizeError("operator has %d legs, got %d positions" % (len(op.legs), len(positions)))
    if positions and (positions[0] < 1 or positions[-1] > total_legs):
        raise LegSizeError("positions out of range")
    if sizes is None:
        if len(set(op.legs)) != 1:
            raise LegSizeError("sizes required for mixed-size embedding")
        sizes = [op.legs[0]] * total_legs
    for p, m in zip(positions, op.legs):
        if sizes[p - 1] != m:
            raise LegSizeError("size mismatch at leg %d" % p)
    others = [p for p in range(1, total_legs + 1) if p not in positions]
    out = TensorOperator(tuple(sizes))
    id_ranges = [index_set(sizes[p - 1]) for p in others]
    for (r, c), v in op.entries.items():
        for ids in itertools.product(*id_ranges):
            rows = [0] * total_legs
            cols = [0] * total_legs
            for p, ri, ci in zip(positions, r, c):
                rows[p - 1] = ri
                cols[p - 1] = ci
            for p, d in zip(others, ids):
                rows[p - 1] = d
                cols[p - 1] = d
            out.set(tuple(rows), tuple(cols), v)
    return out


def embed_legs_signed(op, positions, total_legs, sizes=None):
    """Embedding that inserts a Koszul sign against pass-through legs.

    Deliberately wrong (the displays use the unsigned embedding); serves as
    the negative control showing the YBE detects the convention.
    """
    base = embed_legs(op, positions, total_legs, sizes)
    positions = set(positions)
    out = TensorOperator(base.legs)
    for (r, c), v in base.entries.items():
        e = 0
        for p in range(1, total_legs + 1):
            if p in positions:
                continue
            mid = wpar(r[p - 1])
            after = sum(
                (wpar(r[k - 1]) + wpar(c[k - 1])) for k in positions if k > p
            )
            e += mid * after
        out.set(r, c, -v if e & 1 else v)
    return out


# ---------------------------------------------------------------------------
# the displayed operators


def build_S(n):
    """The S-matrix on V_n x V_n (the queer-type Yang-Baxter solution)."""
    op = TensorOperator((n, n))
    idx = index_set(n)
    for i in idx:
        for j in idx:
            op.set((i, j), (i, j), Scalar.q_power(phi_exp(i, j)))
    for i in idx:
        for j in idx:
            if i < j:
                c = XI * sign(wpar(i))
                op.set((j, i), (i, j), c)
                op.set((-j, i), (-i, j), c)
    return op


def build_S_inv(n):
    """Inverse of S, from its explicit display (not by matrix inversion)."""
    op = TensorOperator((n, n))
    idx = index_set(n)
    for i in idx:
        for j in idx:
            op.set((i, j), (i, j), Scalar.q_power(-phi_exp(i, j)))
    for i in idx:
        for j in idx:
            if i < j:
                c = -(XI * sign(wpar(i)))
                op.set((j, i), (i, j), c)
                op.set((-j, i), (-i, j), c)
    return op


def build_J(n):
    """J = sum_a (-1)^{|a|} E_{-a,a}; odd, with J^2 = -1."""
    op = TensorOperator((n,))
    for a in index_set(n):
        op.set((-a,), (a,), sign(wpar(a)))
    return op


def build_S_J(n):
    """S_J = (1 x J) S (1 x J), from its explicit sum."""
    op = TensorOperator((n, n))
    idx = index_set(n)
    for a in idx:
        for b in idx:
            op.set((a, b), (a, b), -Scalar.q_power(-phi_exp(a, b)))
    for a in idx:
        for b in idx:
            if b < a:
                c = XI * sign(wpar(a))
                op.set((b, a), (a, b), c)
                op.set((-b, a), (-a, b), c)
    return op


def build_R_plus(m):
    """Positive-block submatrix of S (the gl-type R-matrix), on full legs."""
    op = TensorOperator((m, m))
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            op.set((i, j), (i, j), Scalar.q_power(1 if i == j else 0))
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            op.set((j, i), (i, j), XI)
    return op


def build_R_minus(m):
    """Negative-block submatrix of S, on full legs."""
    op = TensorOperator((m, m))
    for i in range(-m, 0):
        for j in range(-m, 0):
            op.set((i, j), (i, j), Scalar.q_power(-1 if i == j else 0))
    for i in range(-m, 0):
        for j in range(i + 1, 0):
            op.set((j, i), (i, j), -XI)
    return op


def build_D(m):
    """D = sum_{a=1..m} q^{2a} (E_{aa} + E_{-a,-a})."""
    op = TensorOperator((m,))
    for a in range(1, m + 1):
        c = Scalar.q_power(2 * a)
        op.set((a,), (a,), c)
        op.set((-a,), (-a,), c)
    return op


def build_D_inv(m):
    op = TensorOperator((m,))
    for a in range(1, m + 1):
        c = Scalar.q_power(-2 * a)
        op.set((a,), (a,), c)
        op.set((-a,), (-a,), c)
    return op


def build_S_tilde(m):
    """S~ = (1 x D) S (1 x D^{-1}), from its explicit entries."""
    op = TensorOperator((m, m))
    idx = index_set(m)
    for i in idx:
        for j in idx:
            op.set((i, j), (i, j), Scalar.q_power(phi_exp(i, j)))
    for i in idx:
        for j in idx:
            if i < j:
                c = XI * sign(wpar(i)) * Scalar.q_power(2 * (abs(i) - abs(j)))
                op.set((j, i), (i, j), c)
                op.set((-j, i), (-i, j), c)
    return op


def block_restrict(op, keep):
    """Entries whose every index satisfies `keep`; used for submatrix checks."""
    out = TensorOperator(op.legs)
    for (r, c), v in op.entries.items():
        if all(keep(i) for i in r) and all(keep(i) for i in c):
            out.set(r, c, v)
    return out


# ---------------------------------------------------------------------------
# Yang-Baxter


def check_ybe(op):
    """Exact test of op^{12} op^{13} op^{23} = op^{23} op^{13} op^{12}."""
    if len(op.legs) != 2 or op.legs[0] != op.legs[1]:
        raise LegSizeError("check_ybe needs a square two-leg operator")
    o12 = embed_legs(op, [1, 2], 3)
    o13 = embed_legs(op, [1, 3], 3)
    o23 = embed_legs(op, [2, 3], 3)
    lhs = op_mul(op_mul(o12, o13), o23)
    rhs = op_mul(op_mul(o23, o13), o12)
    return lhs == rhs
