#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pcm/errors.hpp"
#include "pcm/modeler.hpp"
#include "pcm/roots.hpp"
#include "pcm/verify.hpp"
#include "support.hpp"

using namespace pcm;
using namespace pcm::testing;

TEST_CASE("model_degree_one") {
  const FiniteBlaschkeProduct B({1.0, 0.0}, {Complex{0.0, 0.0}});
  const ConformalModel m = model_degree_one(B);
  CHECK(m.kind == ModelCase::Degree1);
  REQUIRE(m.p.degree() == 1);
  CHECK(m.p.coeff(0) == Complex{0.0, 0.0});
  CHECK(m.p.coeff(1) == Complex{1.0, 0.0});
  CHECK(std::abs(evaluate_phi(m, {0.3, 0.1}) - Complex{0.3, 0.1}) == 0.0);

  const FiniteBlaschkeProduct rot({0.0, 1.0}, {Complex{0.5, 0.0}});
  const ConformalModel mr = model_degree_one(rot);
  CHECK(mr.residual_certificate <= 1e-15);
  CHECK(std::abs(evaluate_phi(mr, {0.2, 0.2}) - blaschke_eval(rot, {0.2, 0.2})) == 0.0);

  const FiniteBlaschkeProduct two({1.0, 0.0}, {Complex{0.1, 0.0}, Complex{0.2, 0.0}});
  CHECK_THROWS_AS(model_degree_one(two), WrongDegree);
}

TEST_CASE("model_equally_spaced closed forms") {
  SUBCASE("base 0, n = 2") {
    const ConformalModel m = model_equally_spaced({Complex{1.0, 0.0}, Complex{0.0, 0.0}, 2});
    REQUIRE(m.p.degree() == 2);
    CHECK(std::abs(m.p.coeff(2) - Complex{-1.0, 0.0}) < 1e-15);
    CHECK(std::abs(m.p.coeff(0)) == 0.0);
    const Complex z{0.3, -0.4};
    CHECK(std::abs(evaluate_phi(m, z) - Complex{0.0, 1.0} * z) < 1e-15);  // phi = iz
    CHECK(std::abs(poly_eval(m.p, evaluate_phi(m, z)) - z * z) < 1e-15);
  }
  SUBCASE("base 0.5, n = 3") {
    const ConformalModel m = model_equally_spaced({Complex{1.0, 0.0}, Complex{0.5, 0.0}, 3});
    CHECK(std::abs(m.p.coeff(3) - Complex{-0.984375, 0.0}) < 1e-15);
    CHECK(std::abs(m.p.coeff(0) - Complex{-0.125, 0.0}) < 1e-15);
    CHECK(m.residual_certificate <= 1e-12);
  }
  SUBCASE("lambda = i, base 0.5, n = 2") {
    const ConformalModel m = model_equally_spaced({Complex{0.0, 1.0}, Complex{0.5, 0.0}, 2});
    CHECK(std::abs(m.p.coeff(2) - Complex{0.0, -0.9375}) < 1e-15);
    CHECK(std::abs(m.p.coeff(0) - Complex{0.0, -0.25}) < 1e-15);
    CHECK(m.residual_certificate <= 1e-12);
  }
}

TEST_CASE("section-3 identity B(phi(z)) = p(z) on random forms") {
  auto rng = make_rng(333);
  std::uniform_int_distribution<int> deg(1, 8);
  for (int trial = 0; trial < 20; ++trial) {
    const EquallySpacedForm form{random_unimodular(rng), random_in_disk(rng, 0.8),
                                 deg(rng)};
    const ConformalModel m = model_equally_spaced(form);
    const auto B = to_blaschke(form);
    double sup = 0.0;
    for (double r : grid_radii(PolarGridSpec{16, 64, 0.999}))
      for (int j = 0; j < 64; ++j) {
        const Complex z = r * unit_phase(2.0 * kPi * j / 64.0);
        sup = std::max(sup, std::abs(blaschke_eval(B, evaluate_phi(m, z)) -
                                     poly_eval(m.p, z)));
      }
    CHECK(sup <= 1e-12);
  }
}

TEST_CASE("depressed_cubic_coeffs") {
  CHECK_THROWS_AS(depressed_cubic_coeffs({0.3, 0.1}, {0.3, 0.1}), DegenerateCriticalValues);

  SUBCASE("critical values 0 and 2") {
    const DepressedCubic p = depressed_cubic_coeffs({0.0, 0.0}, {2.0, 0.0});
    CHECK(std::abs(p.c - Complex{-1.8898815748423098, 0.0}) < 1e-9);
    CHECK(std::abs(p.d - Complex{1.0, 0.0}) < 1e-15);
    const auto pts = cubic_critical_points(p);
    CHECK(multiset_match_distance({pts[0], pts[1]},
                                  {{0.7937005259840997, 0.0}, {-0.7937005259840997, 0.0}}) < 1e-9);
    const auto vals = cubic_critical_values(p);
    CHECK(multiset_match_distance({vals[0], vals[1]}, {{0.0, 0.0}, {2.0, 0.0}}) < 1e-12);
  }
  SUBCASE("critical values -1 and 1") {
    const DepressedCubic p = depressed_cubic_coeffs({-1.0, 0.0}, {1.0, 0.0});
    CHECK(std::abs(p.c - Complex{-1.8898815748423098, 0.0}) < 1e-9);
    CHECK(std::abs(p.d) < 1e-15);
    const auto vals = cubic_critical_values(p);
    CHECK(multiset_match_distance({vals[0], vals[1]}, {{-1.0, 0.0}, {1.0, 0.0}}) < 1e-12);
  }
  SUBCASE("any cube-root branch gives the same critical-value set") {
    auto rng = make_rng(21);
    const Complex omega{-0.5, 0.8660254037844386};
    for (int trial = 0; trial < 20; ++trial) {
      const Complex k1 = random_in_disk(rng), k2 = random_in_disk(rng);
      if (std::abs(k1 - k2) < 1e-3) continue;
      const Complex principal = principal_nth_root((k2 - k1) / 4.0, 3);
      for (int branch = 0; branch < 3; ++branch) {
        Complex root = principal;
        for (int b = 0; b < branch; ++b) root *= omega;
        const DepressedCubic p{-3.0 * root * root, (k1 + k2) / 2.0};
        const auto vals = cubic_critical_values(p);
        CHECK(multiset_match_distance({vals[0], vals[1]}, {k1, k2}) < 1e-10);
      }
    }
  }
}

TEST_CASE("model_degree_three") {
  SUBCASE("pure cube routes through the equally spaced path") {
    const FiniteBlaschkeProduct B({1.0, 0.0},
                                  {Complex{0.0, 0.0}, Complex{0.0, 0.0}, Complex{0.0, 0.0}});
    const ConformalModel m = model_degree_three(B);
    CHECK(m.kind == ModelCase::EquallySpaced);
    REQUIRE(m.p.degree() == 3);
    CHECK(std::abs(m.p.coeff(3) - Complex{-1.0, 0.0}) < 1e-12);
    const Complex z{0.5, 0.0};
    CHECK(std::abs(evaluate_phi(m, z) - unit_phase(kPi / 3.0) * z) < 1e-12);
  }
  SUBCASE("worked example is generic") {
    const ConformalModel m = model_degree_three(example_product());
    CHECK(m.kind == ModelCase::Degree3Generic);
    CHECK(m.residual_certificate <= 1e-8);
    REQUIRE(m.critical_values.size() == 2);
    const auto vals = cubic_critical_values(*m.depressed);
    CHECK(multiset_match_distance({vals[0], vals[1]},
                                  {m.critical_values[0], m.critical_values[1]}) < 1e-10);
  }
  SUBCASE("symmetric zeros stay generic") {
    const FiniteBlaschkeProduct B({1.0, 0.0},
                                  {Complex{0.4, 0.0}, Complex{-0.4, 0.0}, Complex{0.0, 0.0}});
    const ConformalModel m = model_degree_three(B);
    CHECK(m.kind == ModelCase::Degree3Generic);
    CHECK(m.residual_certificate <= 1e-8);
    const auto vals = cubic_critical_values(*m.depressed);
    CHECK(multiset_match_distance({vals[0], vals[1]},
                                  {m.critical_values[0], m.critical_values[1]}) < 1e-10);
  }
  SUBCASE("degree guard") {
    const FiniteBlaschkeProduct B({1.0, 0.0}, {Complex{0.1, 0.0}});
    CHECK_THROWS_AS(model_degree_three(B), WrongDegree);
  }
}

TEST_CASE("model dispatch") {
  SUBCASE("generic degree 2 goes through precomposition") {
    const FiniteBlaschkeProduct B({1.0, 0.0}, {Complex{0.3, 0.0}, Complex{0.6, 0.0}});
    const ConformalModel m = model(B);
    CHECK(m.kind == ModelCase::EquallySpaced);
    CHECK(m.pre_automorphism.has_value());
    CHECK(m.residual_certificate <= 1e-9);
    CHECK(m.p.degree() == 2);
  }
  SUBCASE("degree 5 with equally spaced zeros") {
    std::vector<Complex> zeros;
    for (int k = 0; k < 5; ++k) zeros.push_back(0.6 * unit_phase(2.0 * kPi * k / 5.0));
    const FiniteBlaschkeProduct B({1.0, 0.0}, std::move(zeros));
    const ConformalModel m = model(B);
    CHECK(m.kind == ModelCase::EquallySpaced);
    CHECK_FALSE(m.pre_automorphism.has_value());
    CHECK(m.p.degree() == 5);
    CHECK(m.residual_certificate <= 1e-12);
  }
  SUBCASE("generic degree 4 is unsupported") {
    const FiniteBlaschkeProduct B({1.0, 0.0},
                                  {Complex{0.1, 0.2}, Complex{-0.4, 0.1},
                                   Complex{0.3, -0.5}, Complex{0.05, 0.6}});
    CHECK_THROWS_AS(model(B), UnsupportedInput);
  }
  SUBCASE("degenerate degree 3 routes through precomposition") {
    const EquallySpacedForm seedform{Complex{1.0, 0.0}, Complex{0.45, 0.2}, 3};
    const auto symmetric = to_blaschke(seedform);
    const auto shifted = precompose(symmetric, disk_automorphism({0.35, 0.2}));
    const ConformalModel m = model(shifted);
    CHECK(m.kind == ModelCase::EquallySpaced);
    CHECK(m.pre_automorphism.has_value());
    CHECK(m.residual_certificate <= 1e-10);
  }
  SUBCASE("degree is preserved") {
    auto rng = make_rng(808);
    std::uniform_int_distribution<int> deg(1, 3);
    for (int trial = 0; trial < 10; ++trial) {
      const auto B = random_blaschke(rng, deg(rng));
      CHECK(model(B).p.degree() == B.degree());
    }
  }
}
