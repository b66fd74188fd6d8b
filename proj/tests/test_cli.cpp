#include <doctest.h>

#include <sys/wait.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "wedgekit/coalgebra.hpp"
#include "wedgekit/document.hpp"
#include "wedgekit/field.hpp"
#include "wedgekit/matrix.hpp"
#include "wedgekit/subspace.hpp"

using namespace wedgekit;

namespace {

const FieldSpec Q = FieldSpec::rationals();

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr merged
};

std::string cli_binary() {
  const char* bin = std::getenv("WEDGEKIT_BIN");
  REQUIRE_MESSAGE(bin != nullptr,
                  "WEDGEKIT_BIN must point at the cli binary (set by ctest)");
  return bin;
}

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "wedgekit_cli_scratch";
  std::filesystem::create_directories(dir);
  return dir;
}

std::filesystem::path write_file(const std::string& name, const std::string& content) {
  auto path = scratch_dir() / name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

/// Runs a shell pipeline; every "%BIN%" is replaced by the cli binary path.
CliResult run_pipeline(std::string pipeline) {
  std::string bin = "'" + cli_binary() + "'";
  std::size_t pos = 0;
  while ((pos = pipeline.find("%BIN%", pos)) != std::string::npos) {
    pipeline.replace(pos, 5, bin);
    pos += bin.size();
  }
  static int counter = 0;
  auto out_path = scratch_dir() / ("capture" + std::to_string(++counter));
  std::string cmd = pipeline + " > '" + out_path.string() + "' 2>&1";
  int raw = std::system(cmd.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(out_path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  result.output = buffer.str();
  return result;
}

CliResult run_cli(const std::string& args) { return run_pipeline("%BIN% " + args); }

}  // namespace

TEST_CASE("gen piped into validate exits cleanly") {
  CliResult r = run_pipeline("%BIN% gen divided-power 2 | %BIN% validate -");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("result: pass") != std::string::npos);
}

TEST_CASE("gen emits the library's canonical serialization") {
  CliResult r = run_cli("gen divided-power 2");
  CHECK(r.exit_code == 0);
  CHECK(r.output == serialize(divided_power<Rat>(2)));

  CliResult f7 = run_cli("gen grouplike 3 --field Fp:7");
  CHECK(f7.exit_code == 0);
  CHECK(f7.output == serialize(grouplike<Fp>(3, FieldSpec::prime_field(7))));
}

TEST_CASE("validate reports axiom failures with exit 2") {
  nlohmann::ordered_json doc =
      nlohmann::ordered_json::parse(serialize(grouplike<Rat>(2)));
  doc["delta"][1].push_back({0, 0, "1"});
  auto path = write_file("broken.json", doc.dump());
  CliResult r = run_cli("validate '" + path.string() + "'");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("FAIL") != std::string::npos);
  CHECK(r.output.find("coassociativity") != std::string::npos);
}

TEST_CASE("filtration prints the divided-power stage climb") {
  auto path = write_file("dp2.json", serialize(divided_power<Rat>(2)));
  CliResult text = run_cli("filtration '" + path.string() + "' --d c0");
  CHECK(text.exit_code == 0);
  CHECK(text.output.find("stabilization index: 3") != std::string::npos);

  CliResult json = run_cli("filtration '" + path.string() + "' --d c0 --output json");
  CHECK(json.exit_code == 0);
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(json.output);
  CHECK(j["schema_version"] == 1);
  CHECK(j["stabilization_index"] == 3);
  std::vector<int> dims;
  for (const auto& stage : j["stages"]) dims.push_back(stage["dim"].get<int>());
  CHECK(dims == std::vector<int>{0, 1, 2, 3});
  CHECK(j["colimit"]["dim"] == 3);
}

TEST_CASE("wedge command computes span{c0, c1}") {
  auto path = write_file("dp2w.json", serialize(divided_power<Rat>(2)));
  CliResult r = run_cli("wedge '" + path.string() + "' --x c0 --y c0 --output json");
  CHECK(r.exit_code == 0);
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(r.output);
  CHECK(j["wedge"]["dim"] == 2);
}

TEST_CASE("coradical command over Q and its F_p rejection") {
  auto dp = write_file("dp2c.json", serialize(divided_power<Rat>(2)));
  CliResult r = run_cli("coradical '" + dp.string() + "' --output json");
  CHECK(r.exit_code == 0);
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(r.output);
  CHECK(j["nilpotency_witness"] == 3);
  CHECK(j["coradical"]["dim"] == 1);
  CHECK(j["radical_dim"] == 2);

  auto fp = write_file("g2f5.json", serialize(grouplike<Fp>(2, FieldSpec::prime_field(5))));
  CliResult rejected = run_cli("coradical '" + fp.string() + "'");
  CHECK(rejected.exit_code == 3);
}

TEST_CASE("verify-hr distinguishes consistency from a violated premise") {
  Coalgebra<Rat> e = divided_power<Rat>(2);
  auto doc = write_file("dp2v.json", serialize(e));
  auto identity_map = write_file("map_id.json", serialize_morphism(identity_morphism(e)));

  CliResult ok = run_cli("verify-hr '" + doc.string() + "' --d c0 --map '" +
                         identity_map.string() + "' --output json");
  CHECK(ok.exit_code == 0);
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(ok.output);
  CHECK(j["verdict"] == "consistent");
  CHECK(j["premise_holds"] == true);

  Matrix<Rat> gen(3, 1, Q);
  gen.at(1, 0) = Rat(1);
  auto proj = quotient_coalgebra(e, Subspace<Rat>::span(gen)).second;
  auto proj_map = write_file("map_proj.json", serialize_morphism(proj));
  CliResult violated = run_cli("verify-hr '" + doc.string() + "' --d c0 --map '" +
                               proj_map.string() + "' --output json");
  CHECK(violated.exit_code == 0);  // premise violation is not a counterexample
  nlohmann::ordered_json jv = nlohmann::ordered_json::parse(violated.output);
  CHECK(jv["verdict"] == "premise_violated");
  CHECK(jv["induction_trace"] ==
        nlohmann::ordered_json::parse("[true, true, false, false]"));
}

TEST_CASE("verify-hr-corollary runs with the coradical base") {
  Coalgebra<Rat> e = matrix_coalgebra<Rat>(2);
  auto doc = write_file("m2.json", serialize(e));
  auto map = write_file("m2_id.json", serialize_morphism(identity_morphism(e)));
  CliResult r = run_cli("verify-hr-corollary '" + doc.string() + "' --map '" +
                        map.string() + "' --output json");
  CHECK(r.exit_code == 0);
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(r.output);
  CHECK(j["verdict"] == "consistent");
  CHECK(j["stabilization_index"] == 1);
}

TEST_CASE("lemma-suite passes on the built-in corpus and on a document directory") {
  CliResult builtin = run_cli("lemma-suite --output json");
  CHECK(builtin.exit_code == 0);
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(builtin.output);
  CHECK(j["all_passed"] == true);
  CHECK(j["checks"].size() > 10);

  auto dir = scratch_dir() / "corpus";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "a.json") << serialize(divided_power<Rat>(2));
  std::ofstream(dir / "b.json") << serialize(grouplike<Rat>(2));
  CliResult from_dir = run_cli("lemma-suite --corpus '" + dir.string() + "'");
  CHECK(from_dir.exit_code == 0);
  CHECK(from_dir.output.find("result: pass") != std::string::npos);
}

TEST_CASE("stress output is byte-identical for identical invocations") {
  std::string args = "stress --trials 30 --dim-cap 6 --seed 7 --output json";
  CliResult a = run_cli(args);
  CliResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(a.output);
  CHECK(j["counterexamples"] == 0);
  CHECK(j["trials"] == 30);
  CHECK(j["schema_version"] == 1);

  CliResult f7 = run_cli("stress --trials 25 --field Fp:7 --seed 3 --output json");
  CHECK(f7.exit_code == 0);
  CHECK(nlohmann::ordered_json::parse(f7.output)["counterexamples"] == 0);
}

TEST_CASE("usage and io errors use the documented exit codes") {
  CHECK(run_cli("frobnicate").exit_code == 64);
  CHECK(run_cli("wedge").exit_code == 64);              // missing required flags
  CHECK(run_cli("gen matrix 0").exit_code == 64);       // family needs size >= 1
  CHECK(run_cli("stress --trials 1 --field R").exit_code == 64);
  CHECK(run_cli("stress --trials 1 --field Fp:6").exit_code == 2);  // composite p
  CHECK(run_cli("validate /nonexistent/no.json").exit_code == 74);
  CHECK(run_cli("stress --trials 1 --dim-cap 50").exit_code == 2);  // cap bound
}

TEST_CASE("the size cap is honored from flag and environment") {
  auto dp3 = write_file("dp3cap.json", serialize(divided_power<Rat>(3)));

  setenv("WEDGEKIT_SIZE_CAP", "10", 1);
  CliResult blocked = run_cli("validate '" + dp3.string() + "'");  // 4^2 > 10
  CHECK(blocked.exit_code == 2);
  CliResult overridden =
      run_cli("validate '" + dp3.string() + "' --size-cap 20000");
  CHECK(overridden.exit_code == 0);
  unsetenv("WEDGEKIT_SIZE_CAP");

  CliResult small = run_cli("validate '" + dp3.string() + "' --size-cap 10");
  CHECK(small.exit_code == 2);
  CHECK(small.output.find("size cap") != std::string::npos);
}
