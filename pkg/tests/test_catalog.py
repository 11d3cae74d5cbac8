import numpy as np
import pytest

from orbitcone import (
    GOLDEN_ROWS,
    build_algebra,
    cone_equal,
    exact_cone,
    golden_table,
    quaternionic_wf,
    representation,
    sopq_family,
    su21_branching_report,
    tensor_analysis,
    wavefront_of,
)
from orbitcone.errors import BadPartition, UnsupportedAlgebra


def test_label_forms_are_equivalent():
    a = representation("sigma_disc(3,+)")
    b = representation("sigma_disc:3:+")
    assert a.label == b.label == "sigma_disc(3,+)"
    assert representation("L2_GK").label == "L2_GK"
    assert representation("sigma_hyp:0.5:+-").label == "sigma_hyp(0.5,+-)"


def test_bad_labels_rejected():
    for bad in ("sigma_disc(0,+)", "sigma_disc(-1,+)", "nope(1)", "tensor(1,+)"):
        with pytest.raises(UnsupportedAlgebra):
            representation(bad)


def test_principal_series_support_shapes():
    zero = representation("sigma_hyp(0,+)")
    # the zero-parameter principal series carries the whole nilpotent cone
    assert len(zero.orbital_support.branches) == 3
    generic = representation("sigma_hyp(1,+-)")
    assert len(generic.orbital_support.branches) == 1


def test_golden_rows_are_ten():
    assert len(GOLDEN_ROWS) == 10
    labels = [r[0] for r in GOLDEN_ROWS]
    assert len(set(labels)) == 10


def test_golden_table_all_rows_pass():
    rows = golden_table(seed=0)
    assert len(rows) == 10
    for r in rows:
        assert r["ok"], (r["label"], r["defect"])
        assert r["defect"] <= 0.05


def test_wavefront_of_single_rep():
    spec = representation("sigma_disc(2,-)")
    cone = wavefront_of(spec, seed=3)
    ok, defect = cone_equal(cone, exact_cone("Nminus", "sl2R", 3))
    assert ok, defect


def test_quaternionic_cone_is_nilpotent():
    from orbitcone import classify_batch, cone_directions

    L = build_algebra("su(2,1)")
    C = quaternionic_wf(budget=20_000, seed=1)
    dirs = np.asarray(cone_directions(C))
    assert len(dirs) > 100
    tags = classify_batch(L, dirs[:: max(1, len(dirs) // 200)])
    assert all(t == "Nilpotent" for t in tags)


def test_su21_branching_all_three_classes():
    rep = su21_branching_report(budget=30_000, seed=2)
    assert rep["all_three_classes"]
    assert rep["obstructed"]
    assert set(rep["class_counts"]) >= {"Elliptic", "Hyperbolic", "Nilpotent"}


def test_tensor_same_sign_is_elliptic():
    out = tensor_analysis(2, "+", 3, "+", samples=4000, seed=0)
    assert out["classes"]["elliptic+"] == 4000
    assert out["classes"]["hyperbolic"] == 0
    assert out["sum_cone_class"] == "elliptic-plus"
    assert not out["discretely_decomposable_obstructed"]


def test_tensor_opposite_sign_hits_hyperbolic():
    out = tensor_analysis(2, "+", 3, "-", samples=4000, seed=0)
    assert out["classes"]["hyperbolic"] > 0
    assert out["discretely_decomposable_obstructed"]


def test_sopq_family_conditions():
    fam = sopq_family(3, 1, [(1, 1), (2, 0)])
    assert fam["bk_condition"] is True
    assert fam["saturation_condition"] is True
    # one big mixed block: 2(p_i+q_i) = 8 > p+q+2 = 6
    fam = sopq_family(3, 1, [(3, 1)])
    assert fam["bk_condition"] is False
    with pytest.raises(BadPartition):
        sopq_family(3, 1, [(1, 1)])
    with pytest.raises(BadPartition):
        sopq_family(3, 1, [(2, 2)])


def test_sopq_family_embedding_is_valid():
    fam = sopq_family(4, 2, [(1, 1), (1, 1), (2, 0)])
    E = fam["embedding"]
    assert E.ambient.name == "so(4,2)"
    lhs = E.q.T @ E.sub.gram
    rhs = E.ambient.gram @ E.inclusion.T
    assert np.max(np.abs(lhs - rhs)) < 1e-12 * max(1.0, np.max(np.abs(rhs)))
