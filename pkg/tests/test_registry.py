import numpy as np
import pytest

from numrad import (
    CAMPAIGN_SETTINGS,
    EvalSettings,
    OperandMismatch,
    UnknownEntry,
    catalog,
    evaluate,
    evaluate_all,
    operand_digest,
    sample,
    SampleSpec,
)
from conftest import ginibre

FAST = CAMPAIGN_SETTINGS


def test_catalog_shape():
    cat = catalog()
    ids = [e.entry_id for e in cat]
    assert ids == [f"E{k:02d}" for k in range(1, 31)]
    assert len(set(ids)) == 30
    for e in cat:
        assert e.title and e.statement
        assert e.operand_kind in ("single", "pair", "pair_positive", "quad", "single_or_pair")


def test_unknown_entry():
    with pytest.raises(UnknownEntry):
        evaluate("E99", [np.eye(2)])


def test_operand_mismatch():
    with pytest.raises(OperandMismatch):
        evaluate("E04", [np.eye(2), np.eye(3)])
    with pytest.raises(OperandMismatch):
        evaluate("E01", [np.eye(2), np.eye(2)])
    with pytest.raises(OperandMismatch):
        evaluate("E25", [ginibre(2, 0), ginibre(2, 1)])  # not positive
    with pytest.raises(OperandMismatch):
        evaluate_all([np.eye(2), np.eye(2), np.eye(2)])


def test_digest_is_stable_and_order_sensitive():
    a, b = ginibre(3, 0), ginibre(3, 1)
    assert operand_digest([a, b]) == operand_digest([a, b])
    assert operand_digest([a, b]) != operand_digest([b, a])
    assert len(operand_digest([a])) == 16


def test_e01_shift_chain(shift2):
    (r,) = evaluate("E01", [shift2])
    assert r.holds
    assert r.slack == pytest.approx(0.0, abs=1e-12)
    vals = r.chain_values
    assert vals[0] == pytest.approx(0.0, abs=1e-9)  # spectral radius
    assert vals[1] == pytest.approx(0.5, abs=1e-9)  # numerical radius
    assert vals[2] == pytest.approx(1.0, abs=1e-12)  # norm
    assert vals[3] == pytest.approx(0.5, abs=1e-12)  # half norm


def test_e05_identity_pair():
    (r,) = evaluate("E05", [np.eye(2), np.eye(2)])
    assert r.holds
    assert r.chain_values == pytest.approx([1.0, 1.0], abs=1e-10)
    assert r.slack == pytest.approx(0.0, abs=1e-10)


def test_e25_diagonal_pair():
    a = np.diag([1.0, 2.0]).astype(complex)
    b = np.diag([3.0, 1.0]).astype(complex)
    reports = evaluate("E25", [a, b])
    assert len(reports) == 11  # default closed grid
    for r in reports:
        assert r.holds
        assert -r.slack <= 1e-8  # equality within tolerance; target is 2.0
        assert r.chain_values[1] == pytest.approx(2.0, abs=1e-12)


def test_e18_conditional(shift2):
    (r,) = evaluate("E18", [shift2])
    assert r.params["condition"] is True
    assert r.params["theta_grid"] == 360
    assert r.holds
    (r,) = evaluate("E18", [np.diag([3.0, -4.0])])
    assert r.params == {"condition": False}
    assert r.holds and r.chain_values == []


def test_zero_matrix_single():
    z = np.zeros((2, 2))
    reports = evaluate_all([z], settings=FAST)
    assert all(r.holds for r in reports)
    statuses = {(r.entry_id, r.params.get("part"), r.params.get("form")): r.status for r in reports}
    assert statuses[("E14", None, None)] == "skipped-degenerate"
    skipped = [r for r in reports if r.status == "skipped-degenerate"]
    assert any(r.entry_id == "E30" for r in skipped)
    for r in skipped:
        assert r.chain_values == [] and r.slack == 0.0


def test_e28_both_forms():
    t = ginibre(3, 5)
    (r,) = evaluate("E28", [t], settings=FAST)
    assert r.params == {"form": "single"} and r.holds
    a, b = ginibre(3, 6), ginibre(3, 7)
    (r,) = evaluate("E28", [a, b], settings=FAST)
    assert r.params == {"form": "pair"} and r.holds


def test_e30_report_structure():
    a, b = ginibre(3, 8), ginibre(3, 9)
    reports = evaluate("E30", [a, b], settings=FAST)
    parts = [r.params.get("part") for r in reports]
    assert "product-block" in parts and "closing" in parts
    assert "product-block-rescaled" in parts and "closing-rescaled" in parts
    assert all(r.holds for r in reports)
    t = ginibre(3, 10)
    reports = evaluate("E30", [t], settings=FAST)
    forms = {r.params.get("form") for r in reports}
    assert forms == {"transform", "transform-rescaled"}
    assert all(r.holds for r in reports)


def test_t_grid_override_filters_endpoints():
    t = ginibre(3, 11)
    reports = evaluate("E15", [t], settings=FAST, t_grid=[0.0, 0.25, 0.5, 1.0])
    # entries dividing by min(t, 1-t) never see the endpoints
    assert [r.params["t"] for r in reports] == [0.25, 0.5]
    reports = evaluate("E16", [t], settings=FAST, t_grid=[0.0, 0.5, 1.0])
    assert [r.params["t"] for r in reports] == [0.0, 0.5, 1.0]


def test_adjacent_pair_slack_semantics():
    t = ginibre(4, 12)
    (r,) = evaluate("E17", [t], settings=FAST)
    vals = r.chain_values
    assert r.slack == pytest.approx(min(vals[1] - vals[0], vals[2] - vals[1]), abs=1e-15)


def test_grid_entries_report_finite_slack():
    t = ginibre(4, 13)
    for entry in ("E15", "E16", "E20", "E26"):
        ops = [t] if entry in ("E15", "E16", "E20") else [ginibre(4, 14), ginibre(4, 15)]
        for r in evaluate(entry, ops, settings=FAST):
            assert np.isfinite(r.slack)
            assert all(np.isfinite(v) for v in r.chain_values)
            if entry in ("E15", "E20", "E26"):
                assert 0.0 < r.params["t"] < 1.0


def test_tightness_witnesses():
    g = ginibre(4, 16)
    h = (g + g.conj().T) / 2
    (r,) = evaluate("E01", [h], settings=FAST)
    # radius equals norm for self-adjoint input: the w <= ||T|| link is tight
    vals = r.chain_values
    assert abs(vals[1] - vals[2]) <= 1e-9 * max(1.0, vals[2])

    s = (g - g.conj().T) / 2
    (r,) = evaluate("E13", [s], settings=FAST)
    assert abs(r.slack) <= r.tolerance  # equality up to quadrature tolerance

    a = sample(SampleSpec("positive", 3, 17))
    b = sample(SampleSpec("positive", 3, 18))
    for r in evaluate("E25", [a, b], settings=FAST):
        assert abs(r.slack) <= 1e-8 * max(1.0, r.chain_values[1])


def test_soundness_over_families():
    dims = (2, 3, 5)
    for fam in ("ginibre", "hermitian", "skew", "positive", "psd_singular",
                "unitary", "normal_diag", "nilpotent_jordan", "shift", "rank_one"):
        for i, dim in enumerate(dims):
            t = sample(SampleSpec(fam, dim, 500 + i))
            for r in evaluate_all([t], settings=FAST):
                assert r.holds, (fam, dim, r.entry_id, r.params, r.slack, r.tolerance)
            a = sample(SampleSpec(fam, dim, 600 + i))
            b = sample(SampleSpec(fam, dim, 700 + i))
            for r in evaluate_all([a, b], settings=FAST):
                assert r.holds, (fam, dim, r.entry_id, r.params, r.slack, r.tolerance)


def test_positive_pair_gets_positive_entries():
    a = sample(SampleSpec("positive", 3, 20))
    b = sample(SampleSpec("positive", 3, 21))
    ids = {r.entry_id for r in evaluate_all([a, b], settings=FAST)}
    assert "E25" in ids and "E27" in ids
    g1, g2 = ginibre(3, 22), ginibre(3, 23)
    ids = {r.entry_id for r in evaluate_all([g1, g2], settings=FAST)}
    assert "E25" not in ids and "E27" not in ids


def test_quad_entries():
    xs = [ginibre(2, 30 + k) for k in range(4)]
    reports = evaluate_all(xs, settings=FAST)
    assert {r.entry_id for r in reports} == {"E29"}
    assert all(r.holds for r in reports)


def test_entry_filter():
    t = ginibre(2, 40)
    reports = evaluate_all([t], settings=FAST, entries=["E01", "E02"])
    assert {r.entry_id for r in reports} == {"E01", "E02"}


def test_fov_oracle_is_dominated():
    for seed in range(10):
        t = ginibre(4, seed)
        (r,) = evaluate("E03", [t], settings=FAST)
        assert r.holds
        fov, omega = r.chain_values[0], r.chain_values[1]
        assert fov <= omega + 1e-9


def test_report_serialization_schema():
    t = ginibre(2, 50)
    (r,) = evaluate("E01", [t], settings=FAST)
    obj = r.to_obj()
    assert list(obj.keys()) == [
        "entry_id", "operand_digest", "params", "chain_values",
        "slack", "holds", "tolerance", "elapsed_s", "status",
    ]
    assert obj["status"] == "ok"
    assert isinstance(obj["chain_values"], list)
