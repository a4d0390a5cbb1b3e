#include "pcm/io.hpp"

#include <filesystem>
#include <fstream>

#include "pcm/errors.hpp"
#include "pcm/roots.hpp"

namespace pcm {

json complex_to_json(Complex z) {
  return json{{"re", z.real()}, {"im", z.imag()}};
}

Complex complex_from_json(const json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im"))
    throw ParseError("complex values must be {\"re\": ..., \"im\": ...} objects");
  const Complex z{j.at("re").get<double>(), j.at("im").get<double>()};
  if (!is_finite(z)) throw ParseError("non-finite complex value");
  return z;
}

FiniteBlaschkeProduct blaschke_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("Blaschke spec must be a JSON object");
  Complex lambda{1.0, 0.0};
  if (j.contains("lambda")) lambda = complex_from_json(j.at("lambda"));
  if (std::abs(std::abs(lambda) - 1.0) > 1e-9)
    throw InvalidInput("lambda must be unimodular within 1e-9");
  lambda /= std::abs(lambda);

  if (!j.contains("zeros") || !j.at("zeros").is_array() || j.at("zeros").empty())
    throw ParseError("Blaschke spec needs a nonempty \"zeros\" array");
  std::vector<Complex> zeros;
  for (const json& jz : j.at("zeros")) zeros.push_back(complex_from_json(jz));
  return FiniteBlaschkeProduct(lambda, std::move(zeros));
}

std::string model_case_name(ModelCase kind) {
  switch (kind) {
    case ModelCase::Degree1: return "degree1";
    case ModelCase::EquallySpaced: return "equally_spaced";
    case ModelCase::Degree3Generic: return "degree3_generic";
  }
  throw Error("unreachable model case");
}

ModelCase model_case_from_name(const std::string& name) {
  if (name == "degree1") return ModelCase::Degree1;
  if (name == "equally_spaced") return ModelCase::EquallySpaced;
  if (name == "degree3_generic") return ModelCase::Degree3Generic;
  throw ParseError("unknown model case \"" + name + "\"");
}

json model_to_json(const ConformalModel& m) {
  json j;
  j["case"] = model_case_name(m.kind);

  json coeffs = json::array();
  for (Eigen::Index k = 0; k < m.p.coeffs().size(); ++k)
    coeffs.push_back(complex_to_json(m.p.coeffs()[k]));
  j["p_coeffs"] = std::move(coeffs);

  if (m.pre_automorphism) {
    j["pre_automorphism"] = json{{"a", complex_to_json(m.pre_automorphism->a)},
                                 {"theta", m.pre_automorphism->theta}};
  }
  if (m.equally_spaced) {
    j["equally_spaced"] = json{{"lambda", complex_to_json(m.equally_spaced->lambda)},
                               {"base", complex_to_json(m.equally_spaced->base)},
                               {"n", m.equally_spaced->n}};
  }
  if (m.depressed) {
    j["depressed"] = json{{"c", complex_to_json(m.depressed->c)},
                          {"d", complex_to_json(m.depressed->d)}};
  }

  json values = json::array();
  for (Complex k : m.critical_values) values.push_back(complex_to_json(k));
  j["critical_values"] = std::move(values);

  if (m.phi_grid) {
    const BranchGrid& grid = *m.phi_grid;
    json jv = json::array();
    for (int i = 0; i < grid.spec.n_radii; ++i)  // row-major, radius-major
      for (int jj = 0; jj < grid.spec.n_angles; ++jj)
        jv.push_back(complex_to_json(grid.values(i, jj)));
    j["phi_grid"] = json{{"spec",
                          json{{"n_radii", grid.spec.n_radii},
                               {"n_angles", grid.spec.n_angles},
                               {"r_max", grid.spec.r_max}}},
                         {"seed_index", grid.seed_index},
                         {"values", std::move(jv)}};
  }

  j["residual"] = m.residual_certificate;
  return j;
}

ConformalModel model_from_json(const json& j, const FiniteBlaschkeProduct& B) {
  const ModelCase kind = model_case_from_name(j.at("case").get<std::string>());

  const json& jc = j.at("p_coeffs");
  Eigen::VectorXcd coeffs(jc.size());
  for (std::size_t k = 0; k < jc.size(); ++k) coeffs[k] = complex_from_json(jc[k]);

  std::optional<MobiusDisk> tau;
  if (j.contains("pre_automorphism")) {
    tau = MobiusDisk{complex_from_json(j.at("pre_automorphism").at("a")),
                     j.at("pre_automorphism").at("theta").get<double>()};
  }
  const FiniteBlaschkeProduct modeled = tau ? precompose(B, *tau) : B;

  ConformalModel m{kind,
                   ComplexPolynomial{std::move(coeffs)},
                   tau,
                   modeled,
                   std::nullopt,
                   std::nullopt,
                   std::nullopt,
                   {},
                   j.at("residual").get<double>()};

  if (j.contains("equally_spaced")) {
    const json& je = j.at("equally_spaced");
    m.equally_spaced = EquallySpacedForm{complex_from_json(je.at("lambda")),
                                         complex_from_json(je.at("base")),
                                         je.at("n").get<int>()};
  }
  if (j.contains("depressed")) {
    m.depressed = DepressedCubic{complex_from_json(j.at("depressed").at("c")),
                                 complex_from_json(j.at("depressed").at("d"))};
  }
  for (const json& jk : j.at("critical_values"))
    m.critical_values.push_back(complex_from_json(jk));

  if (j.contains("phi_grid")) {
    if (!m.depressed) throw ParseError("phi_grid requires depressed coefficients");
    const json& jg = j.at("phi_grid");
    PolarGridSpec spec{jg.at("spec").at("n_radii").get<int>(),
                       jg.at("spec").at("n_angles").get<int>(),
                       jg.at("spec").at("r_max").get<double>()};
    const json& jv = jg.at("values");
    if (jv.size() != static_cast<std::size_t>(spec.n_radii) * spec.n_angles)
      throw ParseError("phi_grid value count does not match its spec");

    // Rebuild the tracked branch around the stored samples; node positions
    // and the seed value are derived data.
    BranchGrid grid;
    grid.spec = spec;
    grid.seed_index = jg.at("seed_index").get<int>();
    grid.values.resize(spec.n_radii, spec.n_angles);
    std::size_t flat = 0;
    for (int i = 0; i < spec.n_radii; ++i)
      for (int jj = 0; jj < spec.n_angles; ++jj)
        grid.values(i, jj) = complex_from_json(jv[flat++]);

    std::vector<Complex> avoid;
    for (const auto& [point, mult] : critical_points_in_disk(modeled).points)
      avoid.push_back(point);
    const std::vector<double> radii = grid_radii(spec);
    grid.nodes.resize(spec.n_radii, spec.n_angles);
    for (int i = 0; i < spec.n_radii; ++i) {
      for (int jj = 0; jj < spec.n_angles; ++jj) {
        const Complex dir = unit_phase(2.0 * kPi * jj / spec.n_angles);
        double r = radii[i];
        Complex z = r * dir;
        for (Complex c : avoid) {
          if (std::abs(z - c) < 1e-6) {
            r += 3e-6;
            z = r * dir;
          }
        }
        grid.nodes(i, jj) = z;
      }
    }
    grid.seed_value = fiber_roots(*m.depressed,
                                  blaschke_eval(modeled, Complex{0.0, 0.0}))
        [static_cast<std::size_t>(grid.seed_index)];
    grid.monodromy_ok = true;  // certified at construction; verify re-checks
    m.phi_grid = std::move(grid);
  }
  return m;
}

json report_to_json(const VerificationReport& r) {
  return json{{"residual_sup", r.residual_sup},
              {"injectivity_min_separation", r.injectivity_min_separation},
              {"image_containment_violations", r.image_containment_violations},
              {"critical_value_defect", r.critical_value_defect},
              {"boundary_defect", r.boundary_defect},
              {"passed", r.passed},
              {"seed", r.seed}};
}

json critical_report_to_json(const FiniteBlaschkeProduct& B) {
  const CriticalData crit = critical_points_in_disk(B);
  json points = json::array();
  for (const auto& [z, mult] : crit.points)
    points.push_back(json{{"z", complex_to_json(z)}, {"multiplicity", mult}});
  json values = json::array();
  for (Complex k : crit.values) values.push_back(complex_to_json(k));
  return json{{"degree", B.degree()},
              {"critical_points", std::move(points)},
              {"critical_values", std::move(values)}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp + " for writing");
    out << content;
    if (!out) throw Error("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace pcm
