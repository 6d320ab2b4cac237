import numpy as np
import pytest

from fgl.pipeline import (_analyze_pi, _derived_pi_analysis,
                          _partitions_equal, run_verify)


@pytest.mark.parametrize("family,n", [("psl2", 3), ("sz", 3), ("psu3", 2)])
def test_derived_pi_analysis_equals_direct(family, n):
    # the certificate-based shortcut must reproduce the measured pass exactly
    from fgl import formulas, graphs
    from fgl.fusion import odd_complement_rows
    from fgl.groups import involution_class, make_group, sylow_partition
    cls = involution_class(make_group(family, n))
    k, r, mu = formulas.krmu(family, 1 << n)
    labels = sylow_partition(cls)
    chi_g = graphs.Graph(cls.size, cls.pair_masks().chi)
    cert = graphs.antipodal_cover3_certificate(chi_g)
    pi_g = graphs.Graph(cls.size, odd_complement_rows(cls))
    direct = _analyze_pi(pi_g, labels, k, r, mu)
    derived = _derived_pi_analysis(pi_g, cert, labels, k, r, mu)
    assert direct["census"] == derived["census"]
    assert direct["lam_edge"] == derived["lam_edge"]
    for key in ("lam_edge_ok", "within_ok", "cross_ok", "diam2"):
        assert direct[key] == derived[key], key
    assert direct["omega_mult"] == derived["omega_mult"]
    assert direct["omega_cliq"] == derived["omega_cliq"]


def test_symplectic_inverse_batch_matches_adjugate():
    from fgl.groups import (_symplectic_inverse_batch, generators, identity,
                            make_group, mat_inv_det1, mat_mul)
    spec = make_group("sz", 3)
    gens = generators(spec)
    batch = np.array(gens[:40], dtype=np.uint8)
    inv = _symplectic_inverse_batch(batch)
    for g, gi in zip(gens[:40], inv):
        tgi = tuple(tuple(int(e) for e in row) for row in gi)
        assert tgi == mat_inv_det1(spec.ctx, g)
        assert mat_mul(spec.ctx, g, tgi) == identity(4)


def test_small_classes_force_full_orders():
    # exhaustive order computation is mandatory below the size cutoff
    for requested in ("sampled", "off"):
        rep = run_verify("psl2", 2, orders_mode=requested)
        assert rep.data["orders"]["requested"] == requested
        assert rep.data["orders"]["mode"] == "full"
        assert rep.passed


def test_report_contents_psl2_8():
    rep = run_verify("psl2", 3)
    d = rep.data
    assert d["schema"] == "fgl-cert-1"
    assert rep.passed and not rep.failures
    assert d["pi_graph"]["predicted"] == {"v": 63, "k": 48, "b": 40, "a": 36,
                                          "strict": True}
    assert d["pi_graph"]["deza_match"]
    assert d["pi_graph"]["ddg"]["match"]
    assert d["cn_structure"]["applicable"]
    assert d["cn_structure"]["complement_pair"]
    assert d["formulas"]["p22"] == [48, 36, 36, 40]
    # timing keys exist for each stage
    for stage in ("involution_class", "orders", "sylow", "chi_graph",
                  "identities", "pi_graph", "total"):
        assert stage in d["timings_ms"]


def test_report_json_serializable():
    import json
    rep = run_verify("psl2", 2)
    parsed = json.loads(rep.to_json())
    assert parsed["status"] == "pass"


def test_partitions_equal_helper():
    assert _partitions_equal([0, 0, 1, 1], [5, 5, 2, 2])
    assert not _partitions_equal([0, 0, 1, 1], [0, 1, 0, 1])
    assert not _partitions_equal([0, 1], [0, 1, 2])


def test_degenerate_case_reported_not_strict():
    rep = run_verify("psl2", 2)
    d = rep.data
    assert not d["pi_graph"]["deza"]["strict"]
    assert d["pi_graph"]["deza"]["strongly_regular"]
    assert not d["cn_structure"]["applicable"]
    # every one of the 105 pairs shares exactly 4 neighbors
    assert d["pi_graph"]["cn_spectrum"] == {"4": 105}
