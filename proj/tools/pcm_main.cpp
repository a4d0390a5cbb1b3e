#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>

#include "pcm/errors.hpp"
#include "pcm/io.hpp"
#include "pcm/modeler.hpp"
#include "pcm/render.hpp"
#include "pcm/verify.hpp"

namespace {

// Stable exit codes: 0 ok, 2 verification failure, 3 invalid input,
// 4 branch/continuation failure, 5 unsupported degree.
constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 2;
constexpr int kExitInvalidInput = 3;
constexpr int kExitContinuationFailed = 4;
constexpr int kExitUnsupported = 5;

pcm::PolarGridSpec parse_grid(const std::string& text) {
  int radii = 0, angles = 0;
  if (std::sscanf(text.c_str(), "%dx%d", &radii, &angles) != 2 || radii < 1 ||
      angles < 8)
    throw pcm::InvalidInput("--grid expects RxA, e.g. 64x256");
  pcm::PolarGridSpec spec;
  spec.n_radii = radii;
  spec.n_angles = angles;
  return spec;
}

int run_model(const std::string& input_path, const std::string& output_path,
              const std::string& grid, double tol) {
  const pcm::FiniteBlaschkeProduct B =
      pcm::blaschke_from_json(pcm::load_json_file(input_path));
  pcm::ModelOptions opt;
  opt.grid = parse_grid(grid);
  opt.residual_tolerance = tol;
  const pcm::ConformalModel m = pcm::model(B, opt);
  pcm::write_text_atomic(output_path, pcm::model_to_json(m).dump(2) + "\n");
  return kExitOk;
}

int run_verify(const std::string& input_path, const std::string& model_path,
               const std::string& grid, double tol, std::uint64_t seed) {
  const pcm::FiniteBlaschkeProduct B =
      pcm::blaschke_from_json(pcm::load_json_file(input_path));
  const pcm::ConformalModel m =
      pcm::model_from_json(pcm::load_json_file(model_path), B);
  pcm::VerifyConfig cfg;
  cfg.grid = parse_grid(grid);
  cfg.residual_tol = tol;
  cfg.seed = seed;
  const pcm::VerificationReport report = pcm::run_verification(B, m, cfg);
  std::cout << pcm::report_to_json(report).dump(2) << "\n";
  return report.passed ? kExitOk : kExitVerifyFailed;
}

int run_render(const std::string& input_path, const std::string& model_path,
               const std::string& prefix, int size, double tol) {
  const pcm::FiniteBlaschkeProduct B =
      pcm::blaschke_from_json(pcm::load_json_file(input_path));
  const pcm::ConformalModel m =
      pcm::model_from_json(pcm::load_json_file(model_path), B);
  if (!(m.residual_certificate <= tol)) {
    std::cerr << "model residual " << m.residual_certificate
              << " exceeds --tol; refusing to render\n";
    return kExitVerifyFailed;
  }
  const auto [svg_b, svg_p] = pcm::figure_pair(B, m, size);
  pcm::write_text_atomic(prefix + "_B.svg", svg_b);
  pcm::write_text_atomic(prefix + "_p.svg", svg_p);
  return kExitOk;
}

int run_report(const std::string& input_path) {
  const pcm::FiniteBlaschkeProduct B =
      pcm::blaschke_from_json(pcm::load_json_file(input_path));
  if (B.degree() > 3) {
    std::cerr << "critical-structure report is limited to degree <= 3\n";
    return kExitUnsupported;
  }
  std::cout << pcm::critical_report_to_json(B).dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polynomial conformal models for finite Blaschke products"};
  app.require_subcommand(1);

  std::string input_path, output_path, model_path, prefix;
  std::string grid = "64x256";
  double tol = 1e-8;
  std::uint64_t seed = 0;
  int size = 800;

  CLI::App* cmd_model = app.add_subcommand(
      "model", "Build the conformal model (p, phi) for a Blaschke spec");
  cmd_model->add_option("input", input_path, "Blaschke spec JSON")->required();
  cmd_model->add_option("-o,--output", output_path, "model JSON path")->required();
  cmd_model->add_option("--grid", grid, "polar grid RxA (default 64x256)");
  cmd_model->add_option("--tol", tol, "construction residual tolerance");

  CLI::App* cmd_verify = app.add_subcommand(
      "verify", "Re-certify a model; prints the verification report");
  cmd_verify->add_option("input", input_path, "Blaschke spec JSON")->required();
  cmd_verify->add_option("model", model_path, "model JSON")->required();
  cmd_verify->add_option("--grid", grid, "polar grid RxA (default 64x256)");
  cmd_verify->add_option("--tol", tol, "residual gate tolerance");
  cmd_verify->add_option("--seed", seed, "seed for the sampling sequences");

  CLI::App* cmd_render = app.add_subcommand(
      "render", "Write level-curve figures {prefix}_B.svg and {prefix}_p.svg");
  cmd_render->add_option("input", input_path, "Blaschke spec JSON")->required();
  cmd_render->add_option("model", model_path, "model JSON")->required();
  cmd_render->add_option("-o,--output", prefix, "output prefix")->required();
  cmd_render->add_option("--size", size, "figure size in pixels");
  cmd_render->add_option("--tol", tol, "trusted-model residual bound");

  CLI::App* cmd_report = app.add_subcommand(
      "report", "Print the critical points and values of a Blaschke spec");
  cmd_report->add_option("input", input_path, "Blaschke spec JSON")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_model->parsed()) return run_model(input_path, output_path, grid, tol);
    if (cmd_verify->parsed())
      return run_verify(input_path, model_path, grid, tol, seed);
    if (cmd_render->parsed())
      return run_render(input_path, model_path, prefix, size, tol);
    if (cmd_report->parsed()) return run_report(input_path);
  } catch (const pcm::UnsupportedInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const pcm::BranchSelectionFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitContinuationFailed;
  } catch (const pcm::StepCollapse& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitContinuationFailed;
  } catch (const pcm::SolverFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitContinuationFailed;
  } catch (const pcm::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const pcm::InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const pcm::OutsideDisk& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const pcm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitContinuationFailed;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitOk;
}
