#include "qcorr/hv_models.hpp"

#include "oracles.hpp"
#include "qcorr/random_states.hpp"

#include <doctest.h>

#include <random>

using namespace qcorr;

namespace {

const double kSqrtHalf = 1.0 / std::sqrt(2.0);

SettingPair chsh_pa() { return SettingPair(Vector3(1, 0, 0), Vector3(0, 1, 0)); }
SettingPair chsh_pb() {
  return SettingPair(Vector3(kSqrtHalf, -kSqrtHalf, 0), Vector3(-kSqrtHalf, -kSqrtHalf, 0));
}

/// Anticorrelated product mixtures along x, y and z reproduce the Werner
/// state at x = 1/3; mixing with the maximally mixed state (four z-aligned
/// products) scales the family down to any x <= 1/3.
std::vector<ProductTerm> werner_decomposition(double x) {
  REQUIRE(x <= 1.0 / 3.0 + 1e-15);
  std::vector<ProductTerm> terms;
  const double anti = 3.0 * x / 6.0;
  for (int axis = 0; axis < 3; ++axis) {
    Vector3 d = Vector3::Zero();
    d(axis) = 1.0;
    terms.push_back(ProductTerm{anti, d, -d});
    terms.push_back(ProductTerm{anti, -d, d});
  }
  const double iso = (1.0 - 3.0 * x) / 4.0;
  if (iso > 0.0) {
    for (int sa : {+1, -1})
      for (int sb : {+1, -1})
        terms.push_back(ProductTerm{iso, Vector3(0, 0, double(sa)), Vector3(0, 0, double(sb))});
  }
  return terms;
}

}  // namespace

TEST_SUITE_BEGIN("hv_models");

TEST_CASE("lt model correlations come from the mean tables") {
  SettingTable ta, tb;
  ta.add("a0", Vector3(0, 0, 1));
  tb.add("b0", Vector3(0, 0, 1));
  std::vector<Cause> causes;
  causes.push_back(Cause{1.0, LtCause{{1.0}, {-1.0}}});
  const CommonCauseModel m(ModelVariant::Lt, ta, tb, causes);

  CHECK(model_correlation(m, Vector3(0, 0, 1), Vector3(0, 0, 1)) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(model_correlation(m, Vector3(1, 0, 0), Vector3(0, 0, 1)),
                  std::invalid_argument);
}

TEST_CASE("lqt model with maximally mixed causes predicts no correlation") {
  std::vector<Cause> causes;
  causes.push_back(Cause{1.0, LqtCause{qubit_from_bloch(Vector3::Zero()),
                                       qubit_from_bloch(Vector3::Zero())}});
  const CommonCauseModel m(ModelVariant::Lqt, SettingTable(), SettingTable(), causes);
  std::mt19937_64 rng(31);
  for (int k = 0; k < 10; ++k)
    CHECK(std::abs(model_correlation(m, random_unit_vector(rng), random_unit_vector(rng))) <=
          1e-14);
}

TEST_CASE("lqt model from a separable decomposition reproduces the quantum state") {
  std::mt19937_64 rng(32);

  SUBCASE("single product term") {
    const Vector3 ra = random_bloch_vector(rng);
    const Vector3 rb = random_bloch_vector(rng);
    const CommonCauseModel m = lqt_model_from_separable({ProductTerm{1.0, ra, rb}});
    const DensityMatrix rho = make_product(ra, rb);
    for (int k = 0; k < 10; ++k) {
      const Vector3 a = random_unit_vector(rng);
      const Vector3 b = random_unit_vector(rng);
      CHECK(model_correlation(m, a, b) == doctest::Approx(correlation(rho, a, b)).epsilon(1e-12));
    }
  }

  SUBCASE("Werner x = 1/3 from its anticorrelated-axes decomposition") {
    const CommonCauseModel m = lqt_model_from_separable(werner_decomposition(1.0 / 3.0));
    for (int k = 0; k < 20; ++k) {
      const Vector3 a = random_unit_vector(rng);
      const Vector3 b = random_unit_vector(rng);
      CHECK(model_correlation(m, a, b) == doctest::Approx(-a.dot(b) / 3.0).epsilon(1e-12));
    }
  }

  SUBCASE("Werner x = 0.3 matches the quantum trace on a 10x10 settings grid") {
    const CommonCauseModel m = lqt_model_from_separable(werner_decomposition(0.3));
    const DensityMatrix rho = make_werner(0.3);
    std::vector<Vector3> as, bs;
    for (int i = 0; i < 10; ++i) {
      as.push_back(random_unit_vector(rng));
      bs.push_back(random_unit_vector(rng));
    }
    double max_dev = 0.0;
    for (const Vector3& a : as)
      for (const Vector3& b : bs)
        max_dev = std::max(max_dev,
                           std::abs(model_correlation(m, a, b) - correlation(rho, a, b)));
    CHECK(max_dev <= 1e-9);
  }

  SUBCASE("equal mixture of up-down and down-up") {
    const CommonCauseModel m = lqt_model_from_separable(
        {ProductTerm{0.5, Vector3(0, 0, 1), Vector3(0, 0, -1)},
         ProductTerm{0.5, Vector3(0, 0, -1), Vector3(0, 0, 1)}});
    CHECK(model_correlation(m, Vector3(0, 0, 1), Vector3(0, 0, 1)) == doctest::Approx(-1.0));
    CHECK(std::abs(model_correlation(m, Vector3(1, 0, 0), Vector3(1, 0, 0))) <= 1e-14);
  }

  SUBCASE("invalid decompositions are rejected") {
    CHECK_THROWS_AS(lqt_model_from_separable({ProductTerm{0.9, Vector3::Zero(), Vector3::Zero()}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        lqt_model_from_separable({ProductTerm{1.0, Vector3(0, 0, 1.5), Vector3::Zero()}}),
        std::domain_error);
    CHECK_THROWS_AS(lqt_model_from_separable({}), std::invalid_argument);
  }
}

TEST_CASE("realistic model built from quantum correlations") {
  const Vector3 z(0, 0, 1);

  SUBCASE("singlet along z") {
    const NonlocalRealisticModel m = rt_model_from_quantum(make_singlet(), {{z, z}});
    CHECK(rt_model_correlation(m, z, z) == doctest::Approx(-1.0).epsilon(1e-14));
  }

  SUBCASE("maximally mixed state has vanishing responses") {
    std::mt19937_64 rng(33);
    std::vector<std::pair<Vector3, Vector3>> settings;
    for (int k = 0; k < 4; ++k)
      settings.emplace_back(random_unit_vector(rng), random_unit_vector(rng));
    const NonlocalRealisticModel m = rt_model_from_quantum(make_werner(0.0), settings);
    for (const auto& [a, b] : settings)
      CHECK(std::abs(rt_model_correlation(m, a, b)) <= 1e-13);
  }

  SUBCASE("singlet at the four CHSH settings reproduces the quantum X and Y") {
    const SettingPair pa = chsh_pa(), pb = chsh_pb();
    const std::vector<std::pair<Vector3, Vector3>> settings = {
        {pa.main(), pb.main()},
        {pa.main(), pb.perp()},
        {pa.perp(), pb.main()},
        {pa.perp(), pb.perp()},
    };
    const NonlocalRealisticModel m = rt_model_from_quantum(make_singlet(), settings);
    const XYPoint xy = rt_model_xy(m, pa, pb);
    CHECK(xy.x == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(xy.y == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
    // Realism bounds hold while the CHSH diamond is violated.
    CHECK(std::abs(xy.x) <= 2.0);
    CHECK(std::abs(xy.y) <= 2.0);
    CHECK(std::abs(xy.x - xy.y) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
  }
}

TEST_CASE("an explicit realistic model reaches X = Y = 2") {
  SettingTable ta, tb;
  ta.add("a0", Vector3(1, 0, 0));
  ta.add("a1", Vector3(0, 1, 0));
  tb.add("b0", Vector3(1, 0, 0));
  tb.add("b1", Vector3(0, 1, 0));
  RtResponse r;
  r.weight = 1.0;
  r.gamma.resize(2, 2);
  r.gamma << 1, 1, 1, -1;
  const NonlocalRealisticModel m(ta, tb, {RtCause{1.0, {r}}});

  const SettingPair pa(Vector3(1, 0, 0), Vector3(0, 1, 0));
  const SettingPair pb(Vector3(1, 0, 0), Vector3(0, 1, 0));
  const XYPoint xy = rt_model_xy(m, pa, pb);
  CHECK(xy.x == doctest::Approx(2.0));
  CHECK(xy.y == doctest::Approx(2.0));
  CHECK(xy.x * xy.x + xy.y * xy.y > 4.0);  // beyond every quantum prediction

  RtResponse bad = r;
  bad.gamma(0, 0) = 1.5;
  CHECK_THROWS_AS(NonlocalRealisticModel(ta, tb, {RtCause{1.0, {bad}}}), std::invalid_argument);
}

TEST_CASE("verify_locality_condition") {
  std::mt19937_64 rng(34);

  SUBCASE("lqt models match the quantum joints of their separable state") {
    for (int k = 0; k < 20; ++k) {
      const auto decomposition = random_separable_decomposition(rng, 4);
      const CommonCauseModel m = lqt_model_from_separable(decomposition);
      const DensityMatrix rho = separable_state(decomposition);
      std::vector<std::pair<Vector3, Vector3>> settings;
      for (int s = 0; s < 8; ++s)
        settings.emplace_back(random_unit_vector(rng), random_unit_vector(rng));
      const LocalityVerdict v =
          verify_locality_condition(m, quantum_joint_source(rho), settings, 1e-9);
      CHECK(v.local);
      CHECK(v.max_deviation <= 1e-9);
    }
  }

  SUBCASE("a model is exactly local against its own joints") {
    const SettingPair pa = chsh_pa(), pb = chsh_pb();
    const CommonCauseModel m = random_common_cause_model(rng, ModelVariant::Lt, pa, pb);
    const LocalityVerdict v = verify_locality_condition(
        m, model_joint_source(m), {{pa.main(), pb.main()}, {pa.perp(), pb.perp()}}, 0.0);
    CHECK(v.local);
    CHECK(v.max_deviation == 0.0);
  }

  SUBCASE("no common-cause model matches the singlet at the CHSH settings") {
    // Any local model keeps |X - Y| <= 2 while the singlet reaches 2*sqrt(2),
    // so the joint probabilities must deviate by at least
    // (2*sqrt(2) - 2)/16 ~ 0.0518 somewhere on the grid.
    const SettingPair pa = chsh_pa(), pb = chsh_pb();
    const std::vector<std::pair<Vector3, Vector3>> settings = {
        {pa.main(), pb.main()},
        {pa.main(), pb.perp()},
        {pa.perp(), pb.main()},
        {pa.perp(), pb.perp()},
    };
    const JointSource target = quantum_joint_source(make_singlet());
    const ModelVariant variants[3] = {ModelVariant::Lt, ModelVariant::Lqt, ModelVariant::Lrt};
    for (int k = 0; k < 60; ++k) {
      const CommonCauseModel m = random_common_cause_model(rng, variants[k % 3], pa, pb);
      const LocalityVerdict v = verify_locality_condition(m, target, settings, 1e-9);
      CHECK_FALSE(v.local);
      CHECK(v.max_deviation > 0.0517);
    }
  }
}

TEST_CASE("lrt_from_lt expands means into two-point hidden variables") {
  SettingTable ta, tb;
  ta.add("a0", Vector3(0, 0, 1));
  tb.add("b0", Vector3(0, 0, 1));

  auto single_cause_model = [&](double a_mean, double b_mean) {
    std::vector<Cause> causes;
    causes.push_back(Cause{1.0, LtCause{{a_mean}, {b_mean}}});
    return CommonCauseModel(ModelVariant::Lt, ta, tb, causes);
  };

  SUBCASE("deterministic mean keeps a single atom") {
    const CommonCauseModel lrt = lrt_from_lt(single_cause_model(1.0, 1.0), 1 << 10);
    const auto& cause = std::get<LrtCause>(lrt.causes()[0].payload);
    REQUIRE(cause.lambdas.size() == 1);
    CHECK(cause.lambdas[0].weight == doctest::Approx(1.0));
    CHECK(cause.lambdas[0].a_signs[0] == 1);
  }

  SUBCASE("zero mean splits evenly") {
    const CommonCauseModel lrt = lrt_from_lt(single_cause_model(0.0, 1.0), 1 << 10);
    const auto& cause = std::get<LrtCause>(lrt.causes()[0].payload);
    REQUIRE(cause.lambdas.size() == 2);
    CHECK(cause.lambdas[0].weight == doctest::Approx(0.5));
    CHECK(cause.lambdas[1].weight == doctest::Approx(0.5));
  }

  SUBCASE("mean 0.6 becomes the 0.8 / 0.2 two-point distribution") {
    const CommonCauseModel lrt = lrt_from_lt(single_cause_model(0.6, 1.0), 1 << 10);
    const auto& cause = std::get<LrtCause>(lrt.causes()[0].payload);
    REQUIRE(cause.lambdas.size() == 2);
    double mean = 0.0;
    for (const LrtResponse& r : cause.lambdas) {
      mean += r.weight * r.a_signs[0];
      CHECK((r.weight == doctest::Approx(0.8) || r.weight == doctest::Approx(0.2)));
    }
    CHECK(mean == doctest::Approx(0.6).epsilon(1e-12));
  }

  SUBCASE("correlations and joints survive the expansion") {
    std::mt19937_64 rng(35);
    const SettingPair pa = chsh_pa(), pb = chsh_pb();
    for (int k = 0; k < 20; ++k) {
      const CommonCauseModel lt = random_common_cause_model(rng, ModelVariant::Lt, pa, pb);
      const CommonCauseModel lrt = lrt_from_lt(lt, 1 << 16);
      const std::vector<std::pair<Vector3, Vector3>> probes = {
          {pa.main(), pb.main()}, {pa.perp(), pb.perp()}, {pa.main(), pb.perp()}};
      for (const auto& [a, b] : probes) {
        CHECK(model_correlation(lrt, a, b) ==
              doctest::Approx(model_correlation(lt, a, b)).epsilon(1e-9));
        const auto p_lt = model_joint_probabilities(lt, a, b);
        const auto p_lrt = model_joint_probabilities(lrt, a, b);
        for (int c = 0; c < 4; ++c) CHECK(p_lrt[c] == doctest::Approx(p_lt[c]).epsilon(1e-9));
      }
    }
  }

  SUBCASE("resolution caps the enumeration") {
    const SettingPair pa = chsh_pa(), pb = chsh_pb();
    std::mt19937_64 rng(36);
    const CommonCauseModel lt = random_common_cause_model(rng, ModelVariant::Lt, pa, pb);
    CHECK_THROWS_AS(lrt_from_lt(lt, 8), std::invalid_argument);  // needs 2^4 atoms
    CHECK_THROWS_AS(lrt_from_lt(lqt_model_from_separable({ProductTerm{1.0, Vector3::Zero(),
                                                                      Vector3::Zero()}}),
                                1 << 10),
                    std::invalid_argument);
  }
}

TEST_CASE("every common-cause model respects the local bounds") {
  std::mt19937_64 rng(37);
  const ModelVariant variants[3] = {ModelVariant::Lt, ModelVariant::Lqt, ModelVariant::Lrt};
  for (int k = 0; k < 10000; ++k) {
    const SettingPair pa = random_setting_pair(rng);
    const SettingPair pb = random_setting_pair(rng);
    const ModelVariant variant = variants[k % 3];
    const CommonCauseModel m = random_common_cause_model(rng, variant, pa, pb);
    const XYPoint xy = model_xy(m, pa, pb);
    CHECK(std::abs(model_correlation(m, pa.main(), pb.main())) <= 1.0 + 1e-12);
    CHECK(std::abs(xy.x) <= 2.0 + 1e-9);
    CHECK(std::abs(xy.y) <= 2.0 + 1e-9);
    CHECK(std::max(std::abs(xy.x + xy.y), std::abs(xy.x - xy.y)) <= 2.0 + 1e-9);
  }
}

TEST_CASE("every lqt-variant model stays inside the unit circle") {
  std::mt19937_64 rng(38);
  for (int k = 0; k < 10000; ++k) {
    const SettingPair pa = random_setting_pair(rng);
    const SettingPair pb = random_setting_pair(rng);
    const CommonCauseModel m = random_common_cause_model(rng, ModelVariant::Lqt, pa, pb);
    const XYPoint xy = model_xy(m, pa, pb);
    CHECK(xy.x * xy.x + xy.y * xy.y <= 1.0 + 1e-9);
  }
}

TEST_CASE("model validation rejects malformed inputs") {
  SettingTable ta, tb;
  ta.add("a0", Vector3(0, 0, 1));
  tb.add("b0", Vector3(0, 0, 1));

  std::vector<Cause> unnormalized;
  unnormalized.push_back(Cause{0.7, LtCause{{0.0}, {0.0}}});
  unnormalized.push_back(Cause{0.2, LtCause{{0.0}, {0.0}}});
  CHECK_THROWS_WITH_AS(CommonCauseModel(ModelVariant::Lt, ta, tb, unnormalized),
                       doctest::Contains("sum"), std::invalid_argument);

  std::vector<Cause> oversized_mean;
  oversized_mean.push_back(Cause{1.0, LtCause{{1.2}, {0.0}}});
  CHECK_THROWS_AS(CommonCauseModel(ModelVariant::Lt, ta, tb, oversized_mean),
                  std::invalid_argument);

  std::vector<Cause> wrong_payload;
  wrong_payload.push_back(Cause{1.0, LqtCause{qubit_from_bloch(Vector3::Zero()),
                                              qubit_from_bloch(Vector3::Zero())}});
  CHECK_THROWS_AS(CommonCauseModel(ModelVariant::Lt, ta, tb, wrong_payload),
                  std::invalid_argument);

  LrtResponse bad_sign{1.0, {2}, {1}};
  std::vector<Cause> bad_lrt;
  bad_lrt.push_back(Cause{1.0, LrtCause{{bad_sign}}});
  CHECK_THROWS_AS(CommonCauseModel(ModelVariant::Lrt, ta, tb, bad_lrt), std::invalid_argument);

  LrtResponse half{0.5, {1}, {1}};
  std::vector<Cause> unnormalized_lambda;
  unnormalized_lambda.push_back(Cause{1.0, LrtCause{{half}}});
  CHECK_THROWS_AS(CommonCauseModel(ModelVariant::Lrt, ta, tb, unnormalized_lambda),
                  std::invalid_argument);

  CHECK_THROWS_AS(CommonCauseModel(ModelVariant::Lt, ta, tb, {}), std::invalid_argument);
}

TEST_SUITE_END();
