import random

import pytest

from qqbraid.presentations import (
    FAMILIES,
    PresentationError,
    Presentation,
    check_presentation_equivalence_dual,
    classical_limit_check,
    confluence_probe,
    critical_pair_check,
    el_add,
    el_scale,
    make_presentation,
)
from qqbraid.qscalar import ONE, Q_INV, XI, ZERO, Scalar
from qqbraid.texpr import check_defining_relation

PAIRS = ((1, 1), (1, 2), (2, 1), (2, 2))


def test_odd_square_rule_a11():
    p = make_presentation("A", 1, 1)
    g, _ = p.generator(1, -1)
    assert p.rules[(g, g)] == {}
    assert p.normal_form((g, g)) == {}


def test_a12_out_of_order_rule():
    # t[1,2] t[1,1] -> q^{-1} t[1,1] t[1,2] + q^{-1} xi t[1,-2] t[1,-1]
    p = make_presentation("A", 1, 2)
    a, _ = p.generator(1, 2)
    b, _ = p.generator(1, 1)
    m1 = (p.generator(1, 1)[0], p.generator(1, 2)[0])
    m2 = (p.generator(1, -2)[0], p.generator(1, -1)[0])
    assert p.normal_form((a, b)) == {m1: Q_INV, m2: Q_INV * XI}


def test_normal_form_fixes_normal_words():
    p = make_presentation("A", 1, 2)
    for d in range(4):
        for m in p.normal_monomials(d):
            assert p.normal_form(m) == {m: ONE}


def test_elem_mul_matches_normal_form_and_grading():
    p = make_presentation("A", 2, 2)
    rng = random.Random(3)
    for _ in range(50):
        w1 = p.random_word(rng, 2)
        w2 = p.random_word(rng, 2)
        via_mul = p.elem_mul(p.normal_form(w1), p.normal_form(w2))
        direct = p.normal_form(w1 + w2)
        assert via_mul == direct
        for m in direct:
            assert len(m) == len(w1) + len(w2)  # rules are degree-homogeneous
    assert p.elem_mul(p.unit(), {(0,): ONE}) == {(0,): ONE}


def test_dim_component_examples():
    p11 = make_presentation("A", 1, 1)
    assert p11.dim_component(0) == 1
    assert p11.dim_component(2) == 2  # t11^2 and t11 t1,-1
    p12 = make_presentation("A", 1, 2)
    assert p12.dim_component(1) == 4


def test_pbw_dimensions_all_families():
    for fam in FAMILIES:
        for (f, n) in PAIRS:
            p = make_presentation(fam, f, n)
            for d in range(5):
                assert len(p.normal_monomials(d)) == p.dim_component(d)


def test_rule_count_is_bad_pair_count():
    for fam in FAMILIES:
        p = make_presentation(fam, 2, 2)
        g = len(p.gens)
        odd = sum(p.parity)
        assert len(p.rules) == g * (g - 1) // 2 + odd


def test_critical_pairs_all_families():
    for fam in FAMILIES:
        for (f, n) in PAIRS:
            assert critical_pair_check(make_presentation(fam, f, n)).passed


def test_matrix_relations_hold_in_quotient():
    for fam in FAMILIES:
        for (f, n) in PAIRS:
            assert check_defining_relation(make_presentation(fam, f, n)).passed


def test_confluence_probe():
    rep = confluence_probe(make_presentation("A", 2, 2), trials=300, max_len=5, seed=11)
    assert rep.passed and rep.checked == 300


def test_confluence_probe_negative_control():
    # deliberately mis-orient one rule: swap a rule's content with a wrong sign
    p = Presentation("A", 1, 2)
    (g, h), rhs = next((k, v) for k, v in p.rules.items() if v)
    corrupted = {pair: -c for pair, c in rhs.items()}
    p.rules[(g, h)] = corrupted
    p._nf_cache = {}
    rep = confluence_probe(p, trials=200, max_len=5, seed=1)
    probe_failed = not rep.passed
    cp_failed = not critical_pair_check(p).passed
    assert probe_failed or cp_failed
    if probe_failed:
        assert rep.witness


def test_classical_limit_supercommutative():
    for fam in FAMILIES:
        for (f, n) in PAIRS:
            assert classical_limit_check(make_presentation(fam, f, n)).passed


def test_alias_coherence():
    # resolving t[i,a] = t[-i,-a] before reduction equals reducing either spelling
    p = make_presentation("A", 2, 2)
    rng = random.Random(9)
    for _ in range(100):
        spots = []
        coeff = ONE
        for _ in range(3):
            i = rng.choice([-2, -1, 1, 2])
            a = rng.choice([-2, -1, 1, 2])
            g, c = p.generator(i, a)
            coeff = coeff * c
            spots.append(g)
        direct = el_scale(p.normal_form(tuple(spots)), coeff)
        # resolve each letter via the mirrored spelling instead
        spots2 = []
        coeff2 = ONE
        for g in spots:
            i, a = p.gens[g]
            g2, c2 = p.generator(-i, -a)
            coeff2 = coeff2 * c2
            spots2.append(g2)
        other = el_scale(p.normal_form(tuple(spots2)), coeff2)
        assert direct == other
    pb = make_presentation("AbarNeg", 2, 2)
    for _ in range(100):
        al = rng.choice([-2, -1, 1, 2])
        b = rng.choice([-2, -1, 1, 2])
        g, c = pb.generator(al, b)
        g2, c2 = pb.generator(-al, -b)
        assert g == g2
        # alias sign is an involution: resolving twice returns the start
        from qqbraid.qscalar import sign
        from qqbraid.supertensor import wpar

        assert c * sign((wpar(al) + wpar(b)) & 1) == c2 or c == c2 * sign(
            (wpar(al) + wpar(b)) & 1
        )


def test_degenerate_zero_frames():
    p = make_presentation("A", 0, 2)
    assert p.gens == []
    assert p.dim_component(0) == 1 and p.dim_component(1) == 0
    assert p.normal_form(()) == {(): ONE}


def test_dual_presentation_lemma():
    assert check_presentation_equivalence_dual(1, 1).passed
    rep = check_presentation_equivalence_dual(2, 2)
    assert rep.passed
    # four cases, each over s^2 frame choices and (2n)^2 weight choices
    assert rep.checked == 4 * 4 * 16


def test_dual_case4_single_instance():
    # alpha = beta = 1, a = b = 1 at s = n = 1: both sides reduce equally
    from qqbraid.presentations import _dual_case_combos

    combos = _dual_case_combos(1, 1, 4)
    p = make_presentation("AbarNeg", 1, 1)
    combo = combos[0]
    acc = {}
    for c, pairs in combo:
        coeff = c
        word = []
        for fr, w in pairs:
            idx, ac = p.generator(fr, w)
            coeff = coeff * ac
            word.append(idx)
        acc = el_add(acc, el_scale(p.normal_form(tuple(word)), coeff))
    assert acc == {}


def test_render_elements():
    p = make_presentation("A", 1, 1)
    g, _ = p.generator(1, 1)
    assert p.render_elem({(g, g): ONE}) == "(1)*t[1,1]*t[1,1]"
    assert p.render_elem({}) == "0"


def test_bad_family_rejected():
    with pytest.raises(PresentationError):
        Presentation("Nope", 1, 1)
