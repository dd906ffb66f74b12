import dataclasses
import json

import numpy as np
import pytest

from berezin_lab.certifier import (
    BY_ID,
    CATALOG,
    SPEC_FLAGGED,
    CertResult,
    buzano_sides,
    c7b_values,
    certify,
    certify_suite,
    gen_instance,
    resolve_claims,
    rng_for,
)
from berezin_lab.certifier import instances as gen
from berezin_lab.certifier import runner
from berezin_lab.certifier.claims import check_c1, check_l5
from berezin_lab.config import DEFAULT
from berezin_lab.errors import ConfigError, ParamOutOfRange
from berezin_lab.linalg import abs_op, adjoint, spectral_radius


def test_pass_rule():
    assert CertResult("X", "t", 1.0, 1.0, 0.0).passed
    assert CertResult("X", "t", 1.0 + 1e-11, 1.0, 1e-10).passed
    assert not CertResult("X", "t", 1.1, 1.0, 1e-10).passed
    assert not CertResult("X", "t", 1.0, 1.0, 0.0, strict=True).passed
    assert CertResult("X", "t", 0.5, 1.0, 1e-3, strict=True).passed


def test_alpha_beta_example():
    a, b = gen.alpha_beta(np.array([[0, 1], [2, 0]], dtype=complex))
    assert a == pytest.approx(0.25, abs=1e-14) and b == pytest.approx(4.0, abs=1e-13)


def test_square_zero_is_nilpotent():
    T = gen.square_zero(np.random.default_rng(1), 5)
    assert not np.any(T @ T)


def test_normal_instance_has_zero_hyponormality_residual():
    T = gen.normal_matrix(np.random.default_rng(2), 4)
    G, H = adjoint(T) @ T, T @ adjoint(T)
    assert np.linalg.norm(G - H) <= 1e-12 * np.linalg.norm(G)


@pytest.mark.parametrize("seed", range(5))
def test_generated_hypotheses_hold(seed):
    rng = np.random.default_rng(seed)
    T, a, b = gen.alpha_beta_normal(rng, 4)
    G, H = adjoint(T) @ T, T @ adjoint(T)
    assert np.linalg.eigvalsh(H - a * G)[0] >= -1e-12 * np.linalg.norm(G)
    assert np.linalg.eigvalsh(b * G - H)[0] >= -1e-12 * np.linalg.norm(G)
    T, S, kind = gen.commuting_pair(rng, 4)
    A = abs_op(T)
    assert np.linalg.norm(A @ S - adjoint(S) @ A) <= 1e-11 * np.linalg.norm(A) * np.linalg.norm(S)
    if kind == "poly":
        assert np.linalg.norm(A @ S - S @ A) <= 1e-11 * np.linalg.norm(A) * np.linalg.norm(S)


def test_product_schwarz_needs_commuting_s_beyond_sqrt_pair():
    # |T|S = S*|T| with S = P^-1 H not normal: the endpoint pair phi(t) = t, psi = 1
    # would need ||P S P^-1|| <= r(S), which fails; the square-root pair holds
    P = np.diag([1.0, 2.0]).astype(complex)
    S = np.linalg.inv(P) @ np.array([[0, 1], [1, 0]], dtype=complex)
    assert np.allclose(P @ S, adjoint(S) @ P)
    r = spectral_radius(S)
    assert r == pytest.approx(np.sqrt(0.5))
    x, y = np.array([1.0, 0]), np.array([0, 1.0])
    lhs = abs(np.vdot(y, P @ S @ x)) ** 2
    assert lhs > r**2 * np.vdot(x, P @ P @ x).real * np.vdot(y, y).real
    Ph = np.sqrt(P)
    for v, w in [(x, y), (np.array([1, 1j]), np.array([2, -1]))]:
        lhs = abs(np.vdot(w, P @ S @ v)) ** 2
        assert lhs <= r**2 * np.vdot(v, Ph @ Ph @ v).real * np.vdot(w, Ph @ Ph @ w).real * (1 + 1e-12)


def test_out_of_scope_pairs_are_audited():
    from berezin_lab.certifier.claims import check_l2

    c = BY_ID["L2"]
    for t in range(40):
        inst = gen_instance(c, 42, t)
        res = check_l2(inst, DEFAULT)
        if inst.scalars["s_kind"] == "quotient" and inst.scalars["pair"] in (0, 2):
            assert any(r.kind == "audit" and "not commuting" in r.label for r in res)
            assert any(r.kind == "assert" and r.params["pair"] == "sqrt" for r in res)
            return
    pytest.fail("no out-of-scope instance in the first 40 trials")


def test_dimension_bounds():
    with pytest.raises(ParamOutOfRange):
        gen.check_dim(9)


def test_zero_operator_sandwich():
    inst = gen.Instance("C1", 0, 0, {"T": np.zeros((3, 3), complex)})
    res = check_c1(inst, None)
    assert all(r.lhs == 0 and r.rhs == 0 and r.passed for r in res)


def test_power_sum_equality_case():
    inst = gen.Instance("L5", 0, 0, {}, {"c": np.array([1.0, 2.0]), "p": 2.0})
    tight = [r for r in check_l5(inst, None) if r.params.get("tight")]
    assert tight and tight[0].margin == 0 and tight[0].passed


def test_buzano_tight_case():
    lhs, rhs = buzano_sides([1, 1], [1, -1], [1, 0])
    assert abs(rhs - lhs) <= 1e-12


def test_c7b_exact_values():
    inf, mu, half = c7b_values()
    assert inf == pytest.approx(1560 / 29, abs=1e-9)
    assert mu == pytest.approx(15 / 29, abs=1e-12)
    assert half == pytest.approx(55, abs=1e-9)
    assert inf < half


def test_instances_are_reproducible():
    c = BY_ID["C12"]
    a, b = gen_instance(c, 9, 3), gen_instance(c, 9, 3)
    assert all(np.array_equal(a.operators[k], b.operators[k]) for k in a.operators)
    assert rng_for(1, 2, 3).random() == rng_for(1, 2, 3).random()
    assert json.dumps(a.to_dict())


def test_resolve_claims():
    assert [c.cid for c in resolve_claims("L4,C1")] == ["C1", "L4"]
    assert len(resolve_claims("all")) == len(CATALOG)
    with pytest.raises(ConfigError):
        resolve_claims("C99")


def test_flags_match_catalog():
    assert tuple(c.cid for c in CATALOG if c.flagged) == SPEC_FLAGGED


@pytest.fixture(scope="module")
def short_suite():
    return certify_suite(seed=42, trials=10)


def test_short_suite_structure(short_suite):
    d = short_suite.to_dict()
    assert [b["claim"] for b in d["claim_reports"]] == [c.cid for c in CATALOG]
    assert d["violations"] == 0 and short_suite.exit_code == 0
    assert all(b["inconclusive"] == 0 for b in d["claim_reports"])
    assert {b["claim"] for b in d["claim_reports"] if b["diagnostics"]} == set(SPEC_FLAGGED)
    assert d["orientation"]["example_reading_mu0_is_ber"]
    assert not d["orientation"]["axiom_reading_mu0_is_ber"]


def test_normal_operators_have_equal_sigma_norms():
    c4 = BY_ID["C4"]
    seen = 0
    for t in range(6):
        for r in certify(c4, gen_instance(c4, 42, t)).results:
            if r.label.startswith("(v)"):
                seen += 1
                assert r.passed and r.lhs <= r.uncertainty
    assert seen


def test_threads_do_not_change_report():
    a = certify_suite(seed=7, trials=4, claims="C1,C12,L2,HC", threads=1).to_json()
    b = certify_suite(seed=7, trials=4, claims="C1,C12,L2,HC", threads=3).to_json()
    assert a == b


def test_violation_raises_red_flag(monkeypatch):
    def broken(inst, cfg):
        return [CertResult("L5", "always fails", 2.0, 1.0, 0.0)]

    bad = dataclasses.replace(BY_ID["L5"], check=broken)
    monkeypatch.setattr(runner, "CATALOG", tuple(bad if c.cid == "L5" else c for c in CATALOG))
    monkeypatch.setattr(runner, "BY_ID", dict(BY_ID, L5=bad))
    rep = certify_suite(seed=1, trials=3, claims="L5")
    assert rep.violations == 3 and rep.exit_code == 5
    block = rep.to_dict()["claim_reports"][0]
    assert block["red_flags"][0]["instance"]["claim"] == "L5"
    assert block["witnesses"][0]["margin"] == -1.0


def test_numeric_failures_are_inconclusive():
    from berezin_lab.config import NumericConfig

    inst = gen_instance(BY_ID["C6"], 42, 0)
    out = certify(BY_ID["C6"], inst, NumericConfig(jacobi_max_sweeps=0))
    assert out.error and not out.results
