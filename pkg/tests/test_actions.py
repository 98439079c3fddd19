import json

import pytest

from qqbraid.actions import (
    ActionError,
    check_product_action,
    check_supercommute,
    check_well_defined,
    counit,
    derive_action,
    hopf_rtt_on_natural_module,
)
from qqbraid.presentations import make_presentation
from qqbraid.qscalar import ONE, XI, ZERO, Scalar, sign
from qqbraid.supertensor import index_set, phi_exp, wpar

PAIRS = ((1, 2), (2, 2))
ACTIONS = ("phi", "phipi", "phibar", "phibarpi", "psi", "psibar")


def test_phi_table_closed_form():
    # diagonal: q^{phi(c,a)}; off-diagonal a<b: xi(-1)^{|b|} on weights a and -a
    act = derive_action("phi", 1, 2)
    p = act.target
    idx = index_set(2)
    for a in idx:
        for b in idx:
            if a > b:
                continue
            for g, (i, c) in enumerate(p.gens):
                got = act.on_generator(a, b, g)
                if a == b:
                    want = {(g,): Scalar.q_power(phi_exp(c, a))}
                elif c == a:
                    h, _ = p.generator(i, b)
                    want = {(h,): XI * sign(wpar(b))}
                elif c == -a:
                    h, _ = p.generator(i, -b)
                    want = {(h,): XI * sign(wpar(b))}
                else:
                    want = {}
                assert got == want, (a, b, p.gen_name(g))


def test_phibar_diagonal_inverse_scaling():
    act = derive_action("phibar", 1, 2)
    p = act.target
    for g, (al, c) in enumerate(p.gens):
        for a in index_set(2):
            assert act.on_generator(a, a, g) == {(g,): Scalar.q_power(-phi_exp(c, a))}


def test_counit():
    assert counit(1, 1) == ONE
    assert counit(1, 2) == ZERO
    assert counit(-1, 1) == ZERO
    with pytest.raises(ActionError):
        counit(2, 1)


def test_action_on_unit_is_counit():
    act = derive_action("phi", 2, 2)
    for (a, b) in act.pairs():
        want = {(): ONE} if a == b else {}
        assert act.apply(a, b, {(): ONE}) == want


def test_action_on_square():
    # L_11 scales t[1,1] by q, so t[1,1]^2 goes to q^2 t[1,1]^2
    act = derive_action("phi", 1, 1)
    p = act.target
    g, _ = p.generator(1, 1)
    got = act.apply(1, 1, {(g, g): ONE})
    assert got == {(g, g): Scalar.q_power(2)}


def test_well_defined_all_actions():
    for which in ACTIONS:
        for (f, n) in PAIRS:
            act = derive_action(which, f, n)
            rep = check_well_defined(act)
            assert rep.passed, (which, f, n, rep.witness)


def test_kinds():
    assert derive_action("phi", 1, 1).kind == "plain"
    assert derive_action("psi", 1, 1).kind == "cop"
    # the plain extension of psibar does not preserve the relations; cop does
    assert derive_action("psibar", 1, 1).kind == "cop"


def test_corrupted_table_fails():
    act = derive_action("phi", 1, 2)
    (a, b), row = next(
        ((k, v) for k, v in sorted(act.table.items()) if k[0] < k[1] and v)
    )
    g = sorted(row)[0]
    row[g] = {m: -c for m, c in row[g].items()}
    act._cache = {}
    rep = check_well_defined(act)
    assert not rep.passed
    assert rep.witness


def test_supercommute():
    for (f, n) in ((1, 1), (2, 1), (1, 2), (2, 2)):
        if f + n > 4:
            continue
        rep = check_supercommute(derive_action("psi", f, n), derive_action("phi", f, n))
        assert rep.passed, rep.witness
        rep = check_supercommute(
            derive_action("psibar", f, n), derive_action("phibar", f, n)
        )
        assert rep.passed, rep.witness


def test_rtt_on_natural_module():
    for n in (1, 2, 3):
        assert hopf_rtt_on_natural_module(n).passed


def test_product_action_words():
    assert check_product_action(derive_action("phi", 1, 2)).passed


def test_table_json():
    act = derive_action("phi", 1, 1)
    data = act.to_json()
    assert data["kind"] == "plain" and data["acting_rank"] == 1
    json.dumps(data)  # serializable
    assert data["table"]["1,1"]["t[1,1]"] == "(q)*t[1,1]"


def test_degenerate_zero_frames():
    act = derive_action("phipi", 0, 2)
    assert act.table == {}
    assert act.apply(1, 1, {(): ONE}) == {(): ONE}
