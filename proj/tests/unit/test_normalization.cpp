#include <doctest.h>

#include <random>

#include "distress/errors.hpp"
#include "distress/normalization.hpp"
#include "test_support.hpp"

using namespace distress;

TEST_CASE("training means and sample sds") {
  const auto f = fixtures::paper_fit();
  const double mean[] = {0.21143643, -0.01783714, -0.02171143, 0.05955857, 0.55457429, 0.08762};
  const double sd[] = {0.18212462, 0.22800838, 0.05722947, 0.02508571, 0.17009452, 0.08464391};
  for (int j = 0; j < 6; ++j) {
    CHECK(f.stats.mean[j] == doctest::Approx(mean[j]).epsilon(1e-6));
    CHECK(f.stats.sd[j] == doctest::Approx(sd[j]).epsilon(1e-6));
  }
}

TEST_CASE("normalized training columns have mean zero and unit sd") {
  const auto f = fixtures::paper_fit();
  for (Eigen::Index j = 0; j < 6; ++j) {
    double m = 0.0, ss = 0.0;
    for (const auto& s : f.tsz.samples) m += s.values[j];
    m /= 14.0;
    for (const auto& s : f.tsz.samples) ss += (s.values[j] - m) * (s.values[j] - m);
    CHECK(std::abs(m) < 1e-12);
    CHECK(std::sqrt(ss / 13.0) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("apply binds by name and does not clip") {
  NormalizationStats st{{"a", "b"}, Eigen::Vector2d(1.0, 2.0), Eigen::Vector2d(0.5, 4.0)};
  const auto z = apply(st, NamedVector({"b", "a"}, Eigen::Vector2d(102.0, 1.5)));
  CHECK(z.at("a") == doctest::Approx(1.0));
  CHECK(z.at("b") == doctest::Approx(25.0));
  CHECK_THROWS_AS(apply(st, NamedVector({"a", "c"}, Eigen::Vector2d(1.0, 1.0))), Error);
}

TEST_CASE("constant column is rejected") {
  std::vector<LabeledSample> samples;
  for (int i = 0; i < 6; ++i) {
    Eigen::VectorXd v(2);
    v << 0.25, i * 0.1;
    samples.push_back({"b" + std::to_string(i), v, i < 3 ? GroupLabel::Bankrupt : GroupLabel::NonBankrupt});
  }
  const auto ts = build_training_set({"flat", "x"}, samples);
  try {
    fit_normalizer(ts);
    FAIL("expected a zero-variance error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroVariance);
  }
}

TEST_CASE("positive affine change of a raw column leaves its z-scores alone") {
  const auto f = fixtures::paper_fit();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> scale(0.1, 50.0), shift(-10.0, 10.0);
  for (int trial = 0; trial < 20; ++trial) {
    auto raw = f.raw;
    const auto col = static_cast<Eigen::Index>(trial % 6);
    const double a = scale(rng), c = shift(rng);
    for (auto& s : raw.samples) s.values[col] = a * s.values[col] + c;
    const auto tsz = normalize(fit_normalizer(raw), raw);
    for (std::size_t i = 0; i < tsz.size(); ++i) {
      CHECK(std::abs(tsz.samples[i].values[col] - f.tsz.samples[i].values[col]) < 1e-9);
    }
  }
}
