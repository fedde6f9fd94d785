import numpy as np
import pytest

from quatprop import (ONE, I, J, K, Candidate, CovarianceR, HProperParams,
                      MuMuParams, PropernessReport, PropernessTag, Quaternion,
                      STANDARD_BASIS, classify, complementary_covariances,
                      convert, covariance_faces, covariance_from_params,
                      sample, symmetry_residual, validate_basis,
                      via_class_alias)
from quatprop.estimation import ComplementaryCovariances, axis_name

from support import all_class_params, defining_rotations, general_params, rand_basis


def test_two_real_unit_draws():
    data = np.array([[1.0, 0, 0, 0], [-1.0, 0, 0, 0]])
    cc = complementary_covariances(data, STANDARD_BASIS)
    assert cc.sigma2 == 1.0
    for g in cc.gammas:
        assert g == Quaternion(1, 0, 0, 0)


def test_complementary_covariances_need_two_samples():
    with pytest.raises(ValueError):
        complementary_covariances(np.zeros((1, 4)), STANDARD_BASIS)


def test_hproper_complementary_covariances_vanish():
    faces = covariance_from_params(HProperParams(1.0))
    draws = sample(faces.r, 50_000, seed=0)
    cc = complementary_covariances(draws.data, STANDARD_BASIS)
    for g in cc.gammas:
        assert g.modulus() < 0.02 * cc.sigma2


def test_general_class_estimates_have_structural_zeros():
    # the product q (q^mu)* has no component along mu sample-wise, so the raw
    # estimate already sits in the structural subspace up to roundoff
    params = general_params()
    faces = covariance_from_params(params)
    draws = sample(faces.r, 10_000, seed=1)
    cc = complementary_covariances(draws.data, STANDARD_BASIS)
    for idx, g in ((1, cc.gamma1), (2, cc.gamma2), (3, cc.gamma3)):
        assert abs(STANDARD_BASIS.to_coords(g)[idx]) < 1e-12
    # same claim in a rotated frame, to roundoff of the involution products
    basis = rand_basis(np.random.default_rng(2))
    params2 = general_params(basis)
    faces2 = covariance_from_params(params2)
    draws2 = sample(faces2.r, 10_000, seed=3)
    cc2 = complementary_covariances(draws2.data, basis)
    for idx, g in ((1, cc2.gamma1), (2, cc2.gamma2), (3, cc2.gamma3)):
        assert abs(basis.to_coords(g)[idx]) < 1e-12


def test_centering_flag():
    rng = np.random.default_rng(4)
    data = rng.normal(size=(5000, 4)) + np.array([5.0, 0, 0, 0])
    raw = complementary_covariances(data, STANDARD_BASIS)
    centred = complementary_covariances(data, STANDARD_BASIS, center=True)
    assert raw.sigma2 > 20.0
    assert abs(centred.sigma2 - 4.0) < 0.2


# --- covariance_faces --------------------------------------------------------

def test_faces_of_zero_samples_are_zero():
    data = np.zeros((10, 4))
    gh, gc, gr = covariance_faces(data, STANDARD_BASIS)
    assert np.max(np.abs(gh.matrix)) == 0.0
    assert np.max(np.abs(gc.matrix)) == 0.0
    assert np.max(np.abs(gr.matrix)) == 0.0


def test_faces_need_five_samples():
    with pytest.raises(ValueError):
        covariance_faces(np.zeros((4, 4)), STANDARD_BASIS)


def test_estimated_complex_face_matches_construction():
    params = all_class_params()["mumu"]
    faces = covariance_from_params(params)
    draws = sample(faces.r, 50_000, seed=5)
    _, gc, _ = covariance_faces(draws.data, STANDARD_BASIS)
    sigma2 = np.trace(faces.r.matrix)
    assert np.max(np.abs(gc.matrix - faces.c.matrix)) < 0.02 * sigma2


def test_estimated_quaternion_face_diagonal_is_sigma2_exactly():
    rng = np.random.default_rng(6)
    data = rng.normal(size=(500, 4))
    gh, _, _ = covariance_faces(data, STANDARD_BASIS)
    s2 = complementary_covariances(data, STANDARD_BASIS).sigma2
    for i in range(4):
        assert gh.entry(i, i) == Quaternion(s2, 0, 0, 0)


def test_assembled_face_agrees_with_converted_sample_covariance():
    # the template assembly and the change of representation of the plain
    # sample covariance are algebraically identical
    rng = np.random.default_rng(7)
    data = rng.normal(size=(2000, 4)) @ np.diag([1.0, 0.5, 1.5, 0.8])
    for basis in (STANDARD_BASIS, rand_basis(rng)):
        gh, _, gr = covariance_faces(data, basis)
        gh2 = convert(gr, "quaternion")
        assert np.max(np.abs(gh.matrix - gh2.matrix)) < 1e-10


# --- symmetry residual -------------------------------------------------------

def test_symmetry_residual_identity_rotation_is_zero():
    cov = CovarianceR(np.diag([1.0, 2.0, 3.0, 4.0]))
    assert symmetry_residual(cov, ONE, ONE) == 0.0


def test_symmetry_residual_exact_class():
    faces = covariance_from_params(all_class_params()["mumu"])
    assert symmetry_residual(faces.r, I, J) <= 1e-12
    assert symmetry_residual(faces.r, J, K) > 0.1


def test_symmetry_residual_zero_covariance_raises():
    with pytest.raises(ValueError):
        symmetry_residual(CovarianceR(np.zeros((4, 4))), I, J)


def test_symmetry_residual_spin_double_cover():
    rng = np.random.default_rng(8)
    m = rng.normal(size=(4, 4))
    cov = CovarianceR(m @ m.T)
    u = Quaternion.from_vec(rng.normal(size=4))
    v = Quaternion.from_vec(rng.normal(size=4))
    assert symmetry_residual(cov, u, v) == symmetry_residual(cov, -u, -v)


# --- classification ----------------------------------------------------------

def test_classify_needs_hundred_samples():
    with pytest.raises(ValueError):
        classify(np.zeros((99, 4)), STANDARD_BASIS)


def test_classify_constant_data_is_degenerate():
    with pytest.raises(ValueError, match="degenerate"):
        classify(np.zeros((200, 4)), STANDARD_BASIS)


@pytest.mark.parametrize("tag", ["hproper", "mumu", "muone", "onemu",
                                 "musame", "general"])
def test_classify_recovers_class_across_seeds(tag):
    params = all_class_params()[tag]
    faces = covariance_from_params(params)
    for seed in range(20):
        draws = sample(faces.r, 50_000, seed=seed)
        report = classify(draws.data, STANDARD_BASIS)
        assert report.chosen.tag.value == tag, (tag, seed, report.chosen)


def test_classify_reports_expected_axes():
    faces = covariance_from_params(all_class_params()["mumu"])
    report = classify(sample(faces.r, 50_000, seed=0).data, STANDARD_BASIS)
    assert report.chosen.label(STANDARD_BASIS) == "mumu(i,j)"
    faces2 = covariance_from_params(all_class_params()["onemu"])
    report2 = classify(sample(faces2.r, 50_000, seed=0).data, STANDARD_BASIS)
    assert report2.chosen.label(STANDARD_BASIS) == "onemu(i)"


def test_degenerate_mumu_collapses_to_hproper():
    faces = covariance_from_params(MuMuParams(1.0, 0.0, 0.0))
    report = classify(sample(faces.r, 50_000, seed=11).data, STANDARD_BASIS)
    assert report.chosen.tag is PropernessTag.H_PROPER


def test_classify_reports_all_candidates():
    faces = covariance_from_params(HProperParams(1.0))
    report = classify(sample(faces.r, 5_000, seed=12).data, STANDARD_BASIS)
    tags = [cand.tag for cand in report.candidates]
    assert tags.count(PropernessTag.MU_MU) == 6
    assert tags.count(PropernessTag.MU_SAME) == 3
    assert tags.count(PropernessTag.MU_ONE) == 3
    assert tags.count(PropernessTag.ONE_MU) == 3
    assert tags.count(PropernessTag.H_PROPER) == 1
    assert tags.count(PropernessTag.GENERAL) == 1


def test_report_json_schema():
    faces = covariance_from_params(all_class_params()["muone"])
    report = classify(sample(faces.r, 20_000, seed=13).data, STANDARD_BASIS)
    blob = report.to_dict()
    assert set(blob) == {"n", "tolerance", "sigma2", "candidates", "chosen", "alias"}
    for cand in blob["candidates"]:
        assert set(cand) == {"class", "axes", "label", "residual"}
        for axis in cand["axes"]:
            assert len(axis) == 3
    assert blob["chosen"]["class"] == "muone"


# --- prior-taxonomy aliases ---------------------------------------------------

def test_alias_hproper():
    faces = covariance_from_params(HProperParams(1.0))
    report = classify(sample(faces.r, 20_000, seed=14).data, STANDARD_BASIS)
    assert via_class_alias(report) == "H-proper"


def test_alias_onemu_is_complex_properness():
    basis = validate_basis(J, K)
    faces = covariance_from_params(all_class_params(basis)["onemu"])
    report = classify(sample(faces.r, 50_000, seed=15).data, STANDARD_BASIS)
    assert report.chosen.tag is PropernessTag.ONE_MU
    assert via_class_alias(report) == "C^j-proper"


def test_alias_mumu_is_outside_prior_taxonomy():
    faces = covariance_from_params(all_class_params()["mumu"])
    report = classify(sample(faces.r, 50_000, seed=16).data, STANDARD_BASIS)
    assert via_class_alias(report) == "outside prior taxonomy"


def test_alias_onemu_with_vanishing_pseudo_covariance_is_r_proper():
    # mapping contract exercised directly: a chosen right-factor class whose
    # retained complementary covariance has (numerically) no vector part
    cc = ComplementaryCovariances(
        sigma2=1.0,
        gamma1=Quaternion(0.3, 0, 0.001, 0.001),
        gamma2=Quaternion(0, 0, 0, 0),
        gamma3=Quaternion(0, 0, 0, 0),
        basis=STANDARD_BASIS, n=10_000)
    chosen = Candidate(PropernessTag.ONE_MU, (0,), 0.001)
    report = PropernessReport((chosen,), chosen, tolerance=0.05, n=10_000,
                              basis=STANDARD_BASIS, complementary=cc)
    assert via_class_alias(report) == "R-proper"


def test_axis_name_helper():
    assert axis_name(I) == "i"
    assert axis_name(-J) == "-j"
    assert axis_name(K) == "k"
    assert axis_name(Quaternion(0, 0.6, 0.8, 0)).startswith("(")


# --- estimator consistency ----------------------------------------------------

def test_quaternion_face_estimator_consistency():
    params = general_params()
    faces = covariance_from_params(params)
    sigma2 = params.sigma2
    n = 10_000
    bound = 5 * sigma2 / np.sqrt(n)
    ok = 0
    for seed in range(50):
        draws = sample(faces.r, n, seed=seed)
        gh, _, _ = covariance_faces(draws.data, STANDARD_BASIS)
        err = np.sqrt(np.sum((gh.matrix - faces.h.matrix) ** 2, axis=-1))
        ok += bool(np.max(err) <= bound)
    assert ok >= 48  # 95% of 50 runs


def test_classify_in_nonstandard_basis():
    rng = np.random.default_rng(17)
    basis = rand_basis(rng)
    faces = covariance_from_params(all_class_params(basis)["mumu"])
    report = classify(sample(faces.r, 50_000, seed=18).data, basis)
    assert report.chosen.tag is PropernessTag.MU_MU
    assert report.chosen.axis_indices == (0, 1)
