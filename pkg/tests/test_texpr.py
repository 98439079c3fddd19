import random

import pytest

from qqbraid.presentations import make_presentation
from qqbraid.qscalar import MINUS_ONE, ONE
from qqbraid.texpr import (
    Equation,
    Label,
    Product,
    Symbol,
    TexprError,
    TexprSyntaxError,
    check_identity,
    evaluate,
    evaluate_partial,
    family_env,
    generator_matrix,
    mixed_mul,
    ops_env,
    parse,
    render,
)
from qqbraid.texpr import _universe


def test_parse_ybe_structure():
    ast = parse("S^{12} S^{13} S^{23} == S^{23} S^{13} S^{12}")
    assert isinstance(ast, Equation)
    assert len(ast.lhs.factors) == 3
    assert ast.lhs.factors[0] == Symbol("S", (Label("leg", 1), Label("leg", 2)))


def test_parse_slots_and_primes():
    ast = parse("R+^{12} T^{1[3]} T^{2[3]} == T^{2[3]} T^{1[3]} S^{12}")
    assert isinstance(ast, Equation)
    t = ast.lhs.factors[1]
    assert t.labels == (Label("leg", 1), Label("slot", 3))
    primed = parse("L^{[3]4} T^{1[3']}")
    assert primed.factors[1].labels[1] == Label("slot", 3, True)
    # primed slots sort after their unprimed base
    assert Label("slot", 3, True).poskey > Label("slot", 3).poskey


def test_parse_errors_have_positions():
    with pytest.raises(TexprSyntaxError) as err:
        parse("S^{12")
    assert err.value.pos == 5
    with pytest.raises(TexprSyntaxError):
        parse("S^{12} ==")
    with pytest.raises(TexprSyntaxError):
        parse("^{12}")


def test_render_round_trip():
    for s in (
        "S^{12} S^{13} S^{23} == S^{23} S^{13} S^{12}",
        "R+^{12} Tcheck^{1[3]} Tcheck^{2[3]} == Tcheck^{2[3]} Tcheck^{1[3]} SJ^{12}",
        "Tbar^{1[3]} Tbar^{2[3]} R-^{12} == S^{12} Tbar^{2[3]} Tbar^{1[3]}",
        "L^{[3]4} T^{1[3']}",
    ):
        ast = parse(s)
        assert parse(render(ast)) == ast


def test_unbound_symbol_and_arity_errors():
    env = ops_env(1)
    with pytest.raises(TexprError):
        evaluate(parse("Nope^{12}"), env)
    with pytest.raises(TexprError):
        evaluate(parse("S^{123}"), env)
    pres = make_presentation("A", 1, 1)
    env["T"] = generator_matrix(pres)
    with pytest.raises(TexprError):
        evaluate(parse("T^{12}"), env)  # slot label required


def test_evaluate_single_generator_matrix():
    pres = make_presentation("A", 1, 1)
    env = {"T": generator_matrix(pres)}
    mt = evaluate(parse("T^{1[2]}"), env)
    # one entry per generator, at its (frame, weight) position
    assert len(mt.entries) == len(pres.gens)
    for gidx, (i, a) in enumerate(pres.gens):
        assert mt.entries[((i,), (a,), ((gidx,),))] == ONE


def test_evaluate_J_squared():
    env = ops_env(2)
    mt = evaluate(parse("J^{1} J^{1}"), env)
    ident = evaluate(parse("Id^{1}"), env)
    assert set(mt.entries) == set(ident.entries)
    for key, v in mt.entries.items():
        assert v == MINUS_ONE * ident.entries[key]


def test_check_identity_pass_and_witness():
    env = ops_env(2)
    assert check_identity("S^{12} S^{13} S^{23} == S^{23} S^{13} S^{12}", env).passed
    rep = check_identity("S^{12} == S^{21}", ops_env(1))
    assert not rep.passed
    assert "lhs=" in rep.witness and "rhs=" in rep.witness


def test_slot_algebra_mismatch():
    env = ops_env(1)
    env["T"] = generator_matrix(make_presentation("A", 1, 1))
    env["Tcheck"] = generator_matrix(make_presentation("APi", 1, 1))
    with pytest.raises(TexprError):
        evaluate(parse("T^{1[3]} Tcheck^{2[3]}"), env)


def test_grouping_independence():
    exprs = [
        "T^{1[3]} T^{2[3]} S^{12}",
        "R+^{12} T^{1[3]} T^{2[3]}",
        "S^{12} S^{13} S^{23}",
        "J^{1} S^{12} T^{2[3]}",
        "Tbar^{1[3]} Tbar^{2[3]} R-^{12} S^{12}",
    ]
    rng = random.Random(7)
    env = family_env(make_presentation("A", 2, 2))
    env.update(family_env(make_presentation("AbarNeg", 2, 2)))
    for s in exprs:
        ast = parse(s)
        legs, slots = _universe([ast], env)
        full = evaluate_partial(ast, env, legs, slots)
        fs = ast.factors

        def group_eval(lo, hi, split):
            if hi - lo == 1:
                return evaluate_partial(Product(fs[lo:hi]), env, legs, slots)
            mid = split(lo, hi)
            return mixed_mul(group_eval(lo, mid, split), group_eval(mid, hi, split))

        assert full == group_eval(0, len(fs), lambda lo, hi: lo + 1)
        assert full == group_eval(0, len(fs), lambda lo, hi: hi - 1)
        assert full == group_eval(0, len(fs), lambda lo, hi: rng.randint(lo + 1, hi - 1))
