#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pcm/io.hpp"
#include "support.hpp"

using namespace pcm;
using namespace pcm::testing;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out = fs::temp_directory_path() /
                       ("pcm_cli_out_" + std::to_string(counter++) + ".txt");
  const std::string cmd =
      std::string(PCM_CLI_PATH) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WEXITSTATUS(raw);
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  result.stdout_text = ss.str();
  fs::remove(out);
  return result;
}

fs::path write_spec(const std::string& name, const json& j) {
  const fs::path path = fs::temp_directory_path() / name;
  std::ofstream out(path);
  out << j.dump(2);
  return path;
}

json example_spec() {
  return json{{"lambda", complex_to_json({1.0, 0.0})},
              {"zeros", json::array({complex_to_json({0.0, 0.0}),
                                     complex_to_json({0.75, 0.0}),
                                     complex_to_json({0.25, 0.875})})}};
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("model subcommand") {
  SUBCASE("degree 1") {
    const auto spec = write_spec("cli_d1.json",
                                 json{{"zeros", json::array({complex_to_json({0.0, 0.0})})}});
    const fs::path out = fs::temp_directory_path() / "cli_d1_model.json";
    const auto run = run_cli("model " + spec.string() + " -o " + out.string());
    REQUIRE(run.exit_code == 0);
    const json m = load_json_file(out.string());
    CHECK(m.at("case").get<std::string>() == "degree1");
    REQUIRE(m.at("p_coeffs").size() == 2);
    CHECK(complex_from_json(m.at("p_coeffs")[0]) == Complex{0.0, 0.0});
    CHECK(complex_from_json(m.at("p_coeffs")[1]) == Complex{1.0, 0.0});
  }
  SUBCASE("equally spaced, n = 4") {
    json spec = {{"zeros", json::array()}};
    for (int k = 0; k < 4; ++k)
      spec["zeros"].push_back(complex_to_json(0.6 * unit_phase(2.0 * kPi * k / 4.0)));
    const auto path = write_spec("cli_es4.json", spec);
    const fs::path out = fs::temp_directory_path() / "cli_es4_model.json";
    const auto run = run_cli("model " + path.string() + " -o " + out.string());
    REQUIRE(run.exit_code == 0);
    const json m = load_json_file(out.string());
    CHECK(m.at("case").get<std::string>() == "equally_spaced");
    CHECK(m.at("equally_spaced").at("n").get<int>() == 4);
  }
  SUBCASE("worked example end to end") {
    const auto spec = write_spec("cli_example.json", example_spec());
    const fs::path out = fs::temp_directory_path() / "cli_example_model.json";
    const auto run = run_cli("model " + spec.string() + " -o " + out.string());
    REQUIRE(run.exit_code == 0);
    const json m = load_json_file(out.string());
    CHECK(m.at("case").get<std::string>() == "degree3_generic");
    CHECK(m.at("residual").get<double>() <= 1e-8);

    SUBCASE("verify accepts its own model") {
      const auto v = run_cli("verify " + spec.string() + " " + out.string());
      CHECK(v.exit_code == 0);
      const json report = json::parse(v.stdout_text);
      CHECK(report.at("passed").get<bool>());
      CHECK(report.at("residual_sup").get<double>() <= 1e-8);
    }
    SUBCASE("verify rejects a scaled polynomial") {
      json m2 = m;
      for (json& jc : m2.at("p_coeffs")) {
        jc["re"] = jc["re"].get<double>() * 2.0;
        jc["im"] = jc["im"].get<double>() * 2.0;
      }
      const auto bad = write_spec("cli_example_bad_model.json", m2);
      const auto v = run_cli("verify " + spec.string() + " " + bad.string());
      CHECK(v.exit_code == 2);
      const json report = json::parse(v.stdout_text);
      CHECK_FALSE(report.at("passed").get<bool>());
      CHECK(report.at("image_containment_violations").get<int>() > 0);
    }
    SUBCASE("render produces deterministic figures") {
      const fs::path prefix = fs::temp_directory_path() / "cli_example_fig";
      const auto r1 = run_cli("render " + spec.string() + " " + out.string() +
                              " -o " + prefix.string() + " --size 100");
      REQUIRE(r1.exit_code == 0);
      const std::string b1 = read_file(prefix.string() + "_B.svg");
      const std::string p1 = read_file(prefix.string() + "_p.svg");
      CHECK(!b1.empty());
      CHECK(!p1.empty());
      const auto r2 = run_cli("render " + spec.string() + " " + out.string() +
                              " -o " + prefix.string() + " --size 100");
      REQUIRE(r2.exit_code == 0);
      CHECK(read_file(prefix.string() + "_B.svg") == b1);
      CHECK(read_file(prefix.string() + "_p.svg") == p1);
    }
  }
  SUBCASE("unsupported degree exits 5") {
    json spec = {{"zeros", json::array({complex_to_json({0.1, 0.2}),
                                        complex_to_json({-0.4, 0.1}),
                                        complex_to_json({0.3, -0.5}),
                                        complex_to_json({0.05, 0.6})})}};
    const auto path = write_spec("cli_deg4.json", spec);
    const fs::path out = fs::temp_directory_path() / "cli_deg4_model.json";
    CHECK(run_cli("model " + path.string() + " -o " + out.string()).exit_code == 5);
  }
  SUBCASE("invalid inputs exit 3") {
    const fs::path out = fs::temp_directory_path() / "cli_unused.json";
    CHECK(run_cli("model /nonexistent/input.json -o " + out.string()).exit_code == 3);

    const fs::path garbage = fs::temp_directory_path() / "cli_garbage.json";
    std::ofstream(garbage) << "{not json";
    CHECK(run_cli("model " + garbage.string() + " -o " + out.string()).exit_code == 3);

    const auto outside = write_spec(
        "cli_outside.json", json{{"zeros", json::array({complex_to_json({1.2, 0.0})})}});
    CHECK(run_cli("model " + outside.string() + " -o " + out.string()).exit_code == 3);
  }
}

TEST_CASE("verify subcommand guards") {
  const auto spec = write_spec("cli_verify_guard.json", example_spec());
  CHECK(run_cli("verify " + spec.string() + " /nonexistent/model.json").exit_code == 3);
  CHECK(run_cli("verify /nonexistent/spec.json /nonexistent/model.json").exit_code == 3);
}

TEST_CASE("model then verify succeeds on random specs") {
  auto rng = make_rng(4711);
  for (int trial = 0; trial < 3; ++trial) {
    json spec = {{"zeros", json::array()}};
    for (int k = 0; k < 3; ++k)
      spec["zeros"].push_back(complex_to_json(random_in_disk(rng, 0.9)));
    const auto path = write_spec("cli_rand_" + std::to_string(trial) + ".json", spec);
    const fs::path out =
        fs::temp_directory_path() / ("cli_rand_model_" + std::to_string(trial) + ".json");
    REQUIRE(run_cli("model " + path.string() + " -o " + out.string()).exit_code == 0);
    const auto v = run_cli("verify " + path.string() + " " + out.string());
    CHECK(v.exit_code == 0);
    CHECK(json::parse(v.stdout_text).at("passed").get<bool>());
  }
}

TEST_CASE("report subcommand") {
  SUBCASE("worked example critical structure") {
    const auto spec = write_spec("cli_report_example.json", example_spec());
    const auto run = run_cli("report " + spec.string());
    REQUIRE(run.exit_code == 0);
    const json report = json::parse(run.stdout_text);
    CHECK(report.at("degree").get<int>() == 3);
    std::vector<Complex> got;
    for (const json& jp : report.at("critical_points"))
      got.push_back(complex_from_json(jp.at("z")));
    CHECK(multiset_match_distance(got, {{0.2014, 0.6494}, {0.4599, 0.0103}}) < 5e-4);
  }
  SUBCASE("triple zero reports a double critical point") {
    const auto spec = write_spec(
        "cli_report_cube.json",
        json{{"zeros", json::array({complex_to_json({0.0, 0.0}),
                                    complex_to_json({0.0, 0.0}),
                                    complex_to_json({0.0, 0.0})})}});
    const auto run = run_cli("report " + spec.string());
    REQUIRE(run.exit_code == 0);
    const json report = json::parse(run.stdout_text);
    REQUIRE(report.at("critical_points").size() == 1);
    CHECK(report.at("critical_points")[0].at("multiplicity").get<int>() == 2);
    CHECK(std::abs(complex_from_json(report.at("critical_values")[0])) < 1e-12);
  }
  SUBCASE("degree 5 is out of report range but still models") {
    json spec = {{"zeros", json::array()}};
    for (int k = 0; k < 5; ++k)
      spec["zeros"].push_back(complex_to_json(0.6 * unit_phase(2.0 * kPi * k / 5.0)));
    const auto path = write_spec("cli_report_d5.json", spec);
    CHECK(run_cli("report " + path.string()).exit_code == 5);
    const fs::path out = fs::temp_directory_path() / "cli_d5_model.json";
    CHECK(run_cli("model " + path.string() + " -o " + out.string()).exit_code == 0);
  }
}
