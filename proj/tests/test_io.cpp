#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pcm/errors.hpp"
#include "pcm/io.hpp"
#include "support.hpp"

using namespace pcm;
using namespace pcm::testing;

TEST_CASE("complex json convention") {
  const json j = complex_to_json({0.25, -1.5});
  CHECK(j.at("re").get<double>() == 0.25);
  CHECK(j.at("im").get<double>() == -1.5);
  CHECK(complex_from_json(j) == Complex{0.25, -1.5});
  CHECK_THROWS_AS(complex_from_json(json::array({1.0, 2.0})), ParseError);
}

TEST_CASE("blaschke_from_json") {
  SUBCASE("lambda defaults to 1") {
    const json j = {{"zeros", json::array({complex_to_json({0.5, 0.0})})}};
    const auto B = blaschke_from_json(j);
    CHECK(B.lambda() == Complex{1.0, 0.0});
    CHECK(B.degree() == 1);
  }
  SUBCASE("lambda renormalizes within its tolerance") {
    json j = {{"lambda", complex_to_json({1.0 + 5e-10, 0.0})},
              {"zeros", json::array({complex_to_json({0.1, 0.0})})}};
    CHECK(std::abs(std::abs(blaschke_from_json(j).lambda()) - 1.0) < 1e-15);
    j["lambda"] = complex_to_json({1.1, 0.0});
    CHECK_THROWS_AS(blaschke_from_json(j), InvalidInput);
  }
  SUBCASE("rejects bad zero sets") {
    CHECK_THROWS_AS(blaschke_from_json(json{{"zeros", json::array()}}), ParseError);
    CHECK_THROWS_AS(blaschke_from_json(json{
                        {"zeros", json::array({complex_to_json({1.5, 0.0})})}}),
                    OutsideDisk);
    CHECK_THROWS_AS(blaschke_from_json(json::array()), ParseError);
  }
}

TEST_CASE("model file round trips exactly") {
  auto check_roundtrip = [](const FiniteBlaschkeProduct& B, const ConformalModel& m) {
    const json j = model_to_json(m);
    const ConformalModel back = model_from_json(j, B);
    CHECK(back.kind == m.kind);
    REQUIRE(back.p.coeffs().size() == m.p.coeffs().size());
    for (Eigen::Index k = 0; k < m.p.coeffs().size(); ++k)
      CHECK(back.p.coeffs()[k] == m.p.coeffs()[k]);
    CHECK(back.residual_certificate == m.residual_certificate);
    REQUIRE(back.critical_values.size() == m.critical_values.size());
    for (std::size_t k = 0; k < m.critical_values.size(); ++k)
      CHECK(back.critical_values[k] == m.critical_values[k]);
    CHECK(back.pre_automorphism.has_value() == m.pre_automorphism.has_value());
    if (m.pre_automorphism) {
      CHECK(back.pre_automorphism->a == m.pre_automorphism->a);
      CHECK(back.pre_automorphism->theta == m.pre_automorphism->theta);
    }
    CHECK(back.equally_spaced.has_value() == m.equally_spaced.has_value());
    if (m.equally_spaced) {
      CHECK(back.equally_spaced->lambda == m.equally_spaced->lambda);
      CHECK(back.equally_spaced->base == m.equally_spaced->base);
      CHECK(back.equally_spaced->n == m.equally_spaced->n);
    }
    CHECK(back.depressed.has_value() == m.depressed.has_value());
    if (m.depressed) {
      CHECK(back.depressed->c == m.depressed->c);
      CHECK(back.depressed->d == m.depressed->d);
    }
    CHECK(back.phi_grid.has_value() == m.phi_grid.has_value());
    if (m.phi_grid) {
      CHECK(back.phi_grid->seed_index == m.phi_grid->seed_index);
      CHECK(back.phi_grid->values == m.phi_grid->values);
      CHECK(back.phi_grid->seed_value == m.phi_grid->seed_value);
      CHECK(back.phi_grid->nodes == m.phi_grid->nodes);
    }
    // Serializing the reconstruction reproduces the document byte for byte.
    CHECK(model_to_json(back).dump() == j.dump());
  };

  SUBCASE("degree 1") {
    const FiniteBlaschkeProduct B({0.0, 1.0}, {Complex{0.4, -0.2}});
    check_roundtrip(B, model(B));
  }
  SUBCASE("equally spaced with automorphism") {
    const FiniteBlaschkeProduct B({1.0, 0.0}, {Complex{0.3, 0.0}, Complex{0.6, 0.0}});
    check_roundtrip(B, model(B));
  }
  SUBCASE("generic degree 3 with tracked grid") {
    ModelOptions opt;
    opt.grid = PolarGridSpec{24, 96, 0.999};
    const auto B = example_product();
    check_roundtrip(B, model(B, opt));
  }
}

TEST_CASE("verification report serialization") {
  VerificationReport r;
  r.residual_sup = 1.25e-9;
  r.injectivity_min_separation = 3e-4;
  r.image_containment_violations = 0;
  r.critical_value_defect = 2e-12;
  r.boundary_defect = 1e-9;
  r.passed = true;
  r.seed = 7;
  const json j = report_to_json(r);
  CHECK(j.at("residual_sup").get<double>() == 1.25e-9);
  CHECK(j.at("passed").get<bool>());
  CHECK(j.at("seed").get<std::uint64_t>() == 7);
  CHECK(j.at("image_containment_violations").get<int>() == 0);
}

TEST_CASE("critical report") {
  const json j = critical_report_to_json(example_product());
  CHECK(j.at("degree").get<int>() == 3);
  REQUIRE(j.at("critical_points").size() == 2);
  CHECK(j.at("critical_values").size() == 2);
  const std::vector<Complex> reference{{0.2014, 0.6494}, {0.4599, 0.0103}};
  std::vector<Complex> got;
  for (const json& jp : j.at("critical_points"))
    got.push_back(complex_from_json(jp.at("z")));
  CHECK(multiset_match_distance(got, reference) < 5e-4);
}
