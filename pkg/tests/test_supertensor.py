import pytest

from qqbraid.qscalar import MINUS_ONE, ONE, Q, Q_INV, XI, Scalar, parse_scalar
from qqbraid.supertensor import (
    LegSizeError,
    TensorOperator,
    block_restrict,
    build_D,
    build_D_inv,
    build_J,
    build_R_minus,
    build_R_plus,
    build_S,
    build_S_inv,
    build_S_J,
    build_S_tilde,
    check_ybe,
    compose_plain,
    embed_legs,
    embed_legs_signed,
    identity_op,
    index_set,
    matrix_unit,
    op_mul,
    phi_exp,
    wpar,
)


def test_phi_exp_values():
    assert phi_exp(1, 1) == 1
    assert phi_exp(1, -1) == -1
    assert phi_exp(1, 2) == 0
    assert phi_exp(-1, -1) == -1
    assert phi_exp(-1, 1) == 1


def test_index_set_order():
    assert index_set(2) == [-2, -1, 1, 2]
    assert wpar(3) == 0 and wpar(-3) == 1


def test_build_S_explicit_n1():
    # q E11xE11 + q E-1-1xE11 + 1/q E11xE-1-1 + 1/q E-1-1xE-1-1
    #   - xi (E1,-1 + E-1,1) x E-1,1
    S = build_S(1)
    want = TensorOperator((1, 1))
    want.set((1, 1), (1, 1), Q)
    want.set((-1, 1), (-1, 1), Q)
    want.set((1, -1), (1, -1), Q_INV)
    want.set((-1, -1), (-1, -1), Q_INV)
    want.set((1, -1), (-1, 1), -XI)
    want.set((-1, -1), (1, 1), -XI)
    assert S == want


def test_build_S_entry_n2():
    # coefficient of E11 x E22 is q^phi(1,2) = 1
    assert build_S(2).get((1, 2), (1, 2)) == ONE


def test_S_inverse():
    for n in (1, 2, 3):
        assert op_mul(build_S(n), build_S_inv(n)) == identity_op((n, n))


def test_J_square():
    for n in (1, 2):
        J = build_J(n)
        assert op_mul(J, J) == identity_op((n,)).scale(MINUS_ONE)
        assert not J.is_parity_homogeneous() or all(
            (wpar(r[0]) + wpar(c[0])) & 1 for (r, c) in J.entries
        )


def test_ybe():
    for n in (1, 2, 3):
        assert check_ybe(build_S(n))


def test_ybe_diagonal_part():
    # the diagonal part of S commutes leg-wise
    S = build_S(2)
    diag = TensorOperator((2, 2))
    for (r, c), v in S.entries.items():
        if r == c:
            diag.set(r, c, v)
    assert check_ybe(diag)


def test_ybe_negative_controls():
    bad = build_S(1).add(matrix_unit((1, 1), (1, 1), (-1, 1)))
    assert not check_ybe(bad)
    # Koszul-signed embedding of the middle leg breaks the identity
    S = build_S(2)
    o12 = embed_legs(S, [1, 2], 3)
    o13 = embed_legs_signed(S, [1, 3], 3)
    o23 = embed_legs(S, [2, 3], 3)
    lhs = op_mul(op_mul(o12, o13), o23)
    rhs = op_mul(op_mul(o23, o13), o12)
    assert lhs != rhs


def test_plain_composition_breaks_ybe():
    # unsigned sparse composition is the wrong convention
    S = build_S(1)
    o12 = embed_legs(S, [1, 2], 3)
    o13 = embed_legs(S, [1, 3], 3)
    o23 = embed_legs(S, [2, 3], 3)
    lhs = compose_plain(compose_plain(o12, o13), o23)
    rhs = compose_plain(compose_plain(o23, o13), o12)
    assert lhs != rhs


def test_SJ_conjugation():
    for n in (1, 2, 3):
        S = build_S(n)
        J2 = embed_legs(build_J(n), [2], 2, sizes=(n, n))
        assert op_mul(op_mul(J2, S), J2) == build_S_J(n)


def test_S_tilde_conjugation():
    for n in (1, 2, 3):
        S = build_S(n)
        D2 = embed_legs(build_D(n), [2], 2, sizes=(n, n))
        Di = embed_legs(build_D_inv(n), [2], 2, sizes=(n, n))
        assert op_mul(op_mul(D2, S), Di) == build_S_tilde(n)


def test_J_commutes_on_first_leg():
    for n in (1, 2, 3):
        S = build_S(n)
        J1 = embed_legs(build_J(n), [1], 2, sizes=(n, n))
        assert op_mul(J1, S) == op_mul(S, J1)


def test_R_blocks():
    for m in (1, 2, 3):
        S = build_S(m)
        assert build_R_plus(m) == block_restrict(S, lambda i: i > 0)
        assert build_R_minus(m) == block_restrict(S, lambda i: i < 0)


def test_R_plus_smallest():
    # single positive block at m=1: q E11 x E11 only
    R = build_R_plus(1)
    assert R.entries == {((1, 1), (1, 1)): Q}


def test_parity_homogeneous():
    for op in (build_S(2), build_S_inv(2), build_S_J(2), build_R_plus(2),
               build_R_minus(2), build_D(2), build_S_tilde(2), build_J(2)):
        assert op.is_parity_homogeneous()


def test_embed_identity():
    S = build_S(2)
    assert embed_legs(S, [1, 2], 2) == S
    with pytest.raises(LegSizeError):
        embed_legs(S, [2, 1], 2)
    with pytest.raises(LegSizeError):
        embed_legs(S, [1], 2)


def test_embedding_matches_display():
    # S^{13} = sum S_ij x 1 x E_ij: the middle leg is untouched
    S = build_S(1)
    o13 = embed_legs(S, [1, 3], 3)
    for (r, c), v in S.entries.items():
        for d in index_set(1):
            assert o13.get((r[0], d, r[1]), (c[0], d, c[1])) == v


def test_json_round_trip():
    S = build_S(2)
    data = S.to_json()
    assert TensorOperator.from_json(data) == S
    # entries serialize as parseable scalar strings
    for _, _, s in data["entries"]:
        parse_scalar(s)
