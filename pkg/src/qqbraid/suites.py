"""Named verification suites behind the CLI and the acceptance tests.

Each suite returns a list of Reports; `run` folds them into a single
suite-level Report and attaches wall time.  Default parameters are the
desk-scale sizes at which every displayed identity is checked exactly.
"""

from __future__ import annotations

import time

from . import braidiso, invariants, presentations, supertensor, texpr
from .actions import (
    check_product_action,
    check_supercommute,
    check_well_defined,
    counit,
    derive_action,
    hopf_rtt_on_natural_module,
)
from .presentations import FAMILIES, make_presentation
from .reports import Report, combine

DESK_BOUNDS = {"n": 3, "frames": 3, "degree": 4}

FAMILY_PAIRS = ((1, 1), (1, 2), (2, 1), (2, 2))


def suite_ybe(n=3, **_):
    reports = []
    for m in range(1, n + 1):
        S = supertensor.build_S(m)
        if supertensor.check_ybe(S):
            reports.append(Report.ok("ybe S (n=%d)" % m, checked=1))
        else:
            reports.append(Report.fail("ybe S (n=%d)" % m, witness="YBE residual"))
        inv_ok = supertensor.op_mul(S, supertensor.build_S_inv(m)) == supertensor.identity_op((m, m))
        reports.append(
            Report.ok("S Sinv = id (n=%d)" % m, checked=1)
            if inv_ok
            else Report.fail("S Sinv = id (n=%d)" % m, witness="product differs from identity")
        )
        env = texpr.ops_env(m)
        reports.append(
            texpr.check_identity("SJ^{12} == J^{2} S^{12} J^{2}", env, name="SJ = (1xJ)S(1xJ) (n=%d)" % m)
        )
        reports.append(
            texpr.check_identity(
                "Stilde^{12} == D^{2} S^{12} Dinv^{2}", env, name="Stilde = (1xD)S(1xDinv) (n=%d)" % m
            )
        )
        reports.append(
            texpr.check_identity("J^{1} S^{12} == S^{12} J^{1}", env, name="(Jx1)S = S(Jx1) (n=%d)" % m)
        )
        rp = supertensor.build_R_plus(m) == supertensor.block_restrict(S, lambda i: i > 0)
        rm = supertensor.build_R_minus(m) == supertensor.block_restrict(S, lambda i: i < 0)
        reports.append(
            Report.ok("R+/R- are S blocks (n=%d)" % m, checked=2)
            if rp and rm
            else Report.fail("R+/R- are S blocks (n=%d)" % m, witness="block mismatch")
        )
    return reports


def suite_presentation(trials=1000, max_len=5, seed=2024, pairs=FAMILY_PAIRS, max_degree=4, **_):
    reports = []
    for fam in FAMILIES:
        for (f, n) in pairs:
            pres = make_presentation(fam, f, n)
            reports.append(texpr.check_defining_relation(pres))
            bad_dim = [
                d
                for d in range(max_degree + 1)
                if len(pres.normal_monomials(d)) != pres.dim_component(d)
            ]
            name = "pbw-dimensions %s(f=%d,n=%d)" % (fam, f, n)
            reports.append(
                Report.ok(name, checked=max_degree + 1)
                if not bad_dim
                else Report.fail(name, witness="degree %d" % bad_dim[0])
            )
            reports.append(
                _rename(presentations.critical_pair_check(pres), "critical-pairs %s(f=%d,n=%d)" % (fam, f, n))
            )
            reports.append(
                _rename(
                    presentations.confluence_probe(pres, trials=trials, max_len=max_len, seed=seed),
                    "confluence %s(f=%d,n=%d)" % (fam, f, n),
                )
            )
    return reports


def _rename(report, name):
    report.suite = name
    return report


def suite_dual_lemma(s=2, n=2, **_):
    return [presentations.check_presentation_equivalence_dual(s, n)]


def suite_action(pairs=((1, 2), (2, 2)), **_):
    reports = []
    for which in ("phi", "phipi", "phibar", "phibarpi", "psi", "psibar"):
        for (f, n) in pairs:
            act = derive_action(which, f, n)
            reports.append(
                _rename(check_well_defined(act), "well-defined %s(f=%d,n=%d)" % (which, f, n))
            )
    for (f, n) in ((1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (2, 2)):
        if f + n > 4:
            continue
        reports.append(
            _rename(
                check_supercommute(derive_action("psi", f, n), derive_action("phi", f, n)),
                "supercommute psi/phi(f=%d,n=%d)" % (f, n),
            )
        )
        reports.append(
            _rename(
                check_supercommute(derive_action("psibar", f, n), derive_action("phibar", f, n)),
                "supercommute psibar/phibar(f=%d,n=%d)" % (f, n),
            )
        )
    for fam in FAMILIES:
        for (f, n) in pairs:
            reports.append(
                _rename(
                    presentations.classical_limit_check(make_presentation(fam, f, n)),
                    "classical-limit %s(f=%d,n=%d)" % (fam, f, n),
                )
            )
    reports.append(hopf_rtt_on_natural_module(2))
    act = derive_action("phi", 1, 2)
    reports.append(_rename(check_product_action(act), "product-action phi(1,2)"))
    return reports


def suite_braiding(r=2, k=2, n=2, **_):
    reports = []
    th = braidiso.theta(k, n, r)
    tb = braidiso.theta_bar(k, n, r)
    reports.append(braidiso.check_hexagons(th))
    reports.append(braidiso.check_hexagons(tb))
    reports.append(braidiso.check_braiding_well_defined(th))
    reports.append(braidiso.check_braiding_well_defined(tb))
    reports.append(braidiso.check_theta_matrix_form(k, n, r))
    reports.append(braidiso.check_theta_matrix_form(k, n, r, bar=True))
    reports.append(
        braidiso.check_theta_module_hom(
            braidiso.theta(1, 2, 1), derive_action("phi", 1, 2), derive_action("phi", 1, 2)
        )
    )
    reports.append(braidiso.check_hexagons(braidiso.theta_pi(1, 2, 1)))
    reports.append(braidiso.check_hexagons(braidiso.theta_bar_pi(1, 2, 1)))
    return reports


def suite_iso(max_degree=3, **_):
    reports = []
    for (r, k, n) in ((1, 1, 1), (1, 1, 2), (2, 1, 1)):
        reports.append(braidiso.check_sigma_multiplicative(r, k, n))
        reports.append(braidiso.check_sigma_bijective(r, k, n, max_degree=max_degree))
        reports.append(braidiso.check_sigma_bar_multiplicative(r, k, n))
        reports.append(braidiso.check_sigma_bijective(r, k, n, max_degree=max_degree, dual=True))
    for n in (1, 2):
        for f in (1, 2):
            reports.append(braidiso.check_tau_isomorphism(f, n))
            reports.append(braidiso.check_tau_intertwines(f, n))
            reports.append(braidiso.check_tau_isomorphism(f, n, bar=True))
            reports.append(braidiso.check_tau_intertwines(f, n, bar=True))
    reports.append(braidiso.check_braidmul(1, 1, 2))
    reports.append(braidiso.check_braidmul(2, 1, 1))
    reports.append(braidiso.check_sigma_module_hom(1, 1, 2))
    reports.append(braidiso.check_associativity(1, 1, 1, 1))
    reports.append(braidiso.check_r_copies(3, 1, max_degree=max_degree))
    src = make_presentation("A", 1, 2)
    dst = make_presentation("A", 2, 2)
    reports.append(braidiso.check_iota_injective(1, src, dst, max_degree=max_degree))
    srcb = make_presentation("AbarNeg", 1, 2)
    dstb = make_presentation("AbarNeg", 2, 2)
    reports.append(braidiso.check_iota_injective(1, srcb, dstb, max_degree=max_degree, bar=True))
    return reports


def suite_invariants(**_):
    reports = []
    reports.append(invariants.check_invariants(1, 1, 1, 1, 1))
    reports.append(invariants.check_invariants(1, 1, 1, 1, 2))
    reports.append(invariants.check_invariants(2, 1, 1, 1, 2, families=("x", "z")))
    reports.append(invariants.check_tau_transport(1, 1, 1, 1, 1))
    reports.append(invariants.check_tau_transport(1, 1, 1, 1, 2))
    reports.append(invariants.negative_controls(1))
    reports.append(invariants.negative_controls(2))
    return reports


SUITES = {
    "ybe": suite_ybe,
    "presentation": suite_presentation,
    "action": suite_action,
    "braiding": suite_braiding,
    "iso": suite_iso,
    "dual-lemma": suite_dual_lemma,
    "invariants": suite_invariants,
}

ALL_ORDER = ("ybe", "presentation", "dual-lemma", "action", "braiding", "iso", "invariants")


def run(name, **params):
    """Run one suite; returns the combined Report with sub-reports attached."""
    fn = SUITES[name]
    t0 = time.perf_counter()
    reports = fn(**params)
    rep = combine(name, reports, **{k: v for k, v in params.items() if v is not None})
    rep.wall_ms = (time.perf_counter() - t0) * 1000.0
    rep.subreports = reports
    return rep


def run_all(jobs=1, **params):
    """Every suite, optionally on a bounded worker pool."""
    if jobs and jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = {name: pool.submit(run, name, **params) for name in ALL_ORDER}
            return [futures[name].result() for name in ALL_ORDER]
    return [run(name, **params) for name in ALL_ORDER]
