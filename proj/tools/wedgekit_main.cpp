#include <CLI11.hpp>
#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "wedgekit/coalgebra.hpp"
#include "wedgekit/coradical.hpp"
#include "wedgekit/document.hpp"
#include "wedgekit/errors.hpp"
#include "wedgekit/field.hpp"
#include "wedgekit/matrix.hpp"
#include "wedgekit/report.hpp"
#include "wedgekit/subspace.hpp"
#include "wedgekit/verifier.hpp"
#include "wedgekit/wedge.hpp"

namespace {

using namespace wedgekit;
using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitUnsupportedField = 3;
constexpr int kExitCounterexample = 4;
constexpr int kExitUsage = 64;
constexpr int kExitIo = 74;

struct IoFailure {
  std::string message;
};

struct UsageFailure {
  std::string message;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure{"cannot open '" + path + "'"};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoFailure{"cannot read '" + path + "'"};
  return buffer.str();
}

void emit(bool json_mode, const Json& j, const std::string& text) {
  if (json_mode) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

template <class K>
Json subspace_json(const Subspace<K>& s) {
  Json basis = Json::array();
  for (std::size_t k = 0; k < s.dim(); ++k) {
    Json column = Json::array();
    for (std::size_t i = 0; i < s.ambient_dim(); ++i) {
      column.push_back(FieldTraits<K>::str(s.basis().at(i, k)));
    }
    basis.push_back(std::move(column));
  }
  return Json{{"dim", s.dim()}, {"basis", std::move(basis)}};
}

template <class K>
std::string combination_string(const Matrix<K>& column, std::size_t col,
                               const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t i = 0; i < column.rows(); ++i) {
    const K& coeff = column.at(i, col);
    if (FieldTraits<K>::is_zero(coeff)) continue;
    if (!out.empty()) out += " + ";
    out += FieldTraits<K>::str(coeff) + "*" + labels[i];
  }
  return out.empty() ? "0" : out;
}

template <class K>
std::string subspace_text(const Subspace<K>& s, const std::vector<std::string>& labels,
                          const std::string& indent) {
  std::string out;
  for (std::size_t k = 0; k < s.dim(); ++k) {
    out += indent + combination_string(s.basis(), k, labels) + "\n";
  }
  return out;
}

Json report_json(const VerificationReport& report) {
  Json checks = Json::array();
  for (const CheckItem& item : report.checks) {
    Json entry = Json{{"name", item.name}, {"passed", item.passed}};
    if (!item.detail.empty()) entry["detail"] = item.detail;
    checks.push_back(std::move(entry));
  }
  return Json{{"all_passed", report.all_passed()}, {"checks", std::move(checks)}};
}

std::string report_text(const VerificationReport& report) {
  std::string out;
  for (const CheckItem& item : report.checks) {
    out += (item.passed ? "pass  " : "FAIL  ") + item.name;
    if (!item.detail.empty()) out += " (" + item.detail + ")";
    out += "\n";
  }
  out += std::string("result: ") + (report.all_passed() ? "pass" : "fail") + "\n";
  return out;
}

Json hr_report_json(const HrReport& report) {
  Json trace = Json::array();
  for (bool ok : report.induction_trace) trace.push_back(ok);
  return Json{{"schema_version", kSchemaVersion},
              {"command", "verify-hr"},
              {"premise_holds", report.premise_holds},
              {"conclusion_holds", report.conclusion_holds},
              {"induction_trace", std::move(trace)},
              {"stabilization_index", report.stabilization_index},
              {"stage_dims", report.stage_dims},
              {"kernel_dim", report.kernel_dim},
              {"verdict", to_string(report.verdict)}};
}

std::string hr_report_text(const HrReport& report) {
  std::string out;
  out += std::string("premise (injective on D/\\D): ") +
         (report.premise_holds ? "holds" : "fails") + "\n";
  out += std::string("conclusion (injective on the colimit): ") +
         (report.conclusion_holds ? "holds" : "fails") + "\n";
  out += "induction trace:";
  for (bool ok : report.induction_trace) out += ok ? " ok" : " FAIL";
  out += "\nstage dims:";
  for (std::size_t d : report.stage_dims) out += " " + std::to_string(d);
  out += "\nstabilization index: " + std::to_string(report.stabilization_index) + "\n";
  out += "kernel dim: " + std::to_string(report.kernel_dim) + "\n";
  out += "verdict: " + to_string(report.verdict) + "\n";
  return out;
}

int finish_hr(const HrReport& report, bool json_mode) {
  emit(json_mode, hr_report_json(report), hr_report_text(report));
  return report.verdict == HrVerdict::counterexample ? kExitCounterexample : kExitOk;
}

int run_validate(const std::string& file, std::size_t cap, bool json_mode) {
  AnyCoalgebra any = parse_coalgebra_unchecked(read_input(file), cap);
  return std::visit(
      [&](const auto& c) {
        VerificationReport report = check_axioms(c);
        Json j = Json{{"schema_version", kSchemaVersion}, {"command", "validate"}};
        Json body = report_json(report);
        j.update(body);
        emit(json_mode, j, report_text(report));
        return report.all_passed() ? kExitOk : kExitInvalid;
      },
      any);
}

int run_wedge(const std::string& file, const std::string& x_spec,
              const std::string& y_spec, std::size_t cap, bool json_mode) {
  AnyCoalgebra any = parse_coalgebra(read_input(file), cap);
  return std::visit(
      [&](const auto& c) {
        auto x = parse_basis_spec(c, x_spec);
        auto y = parse_basis_spec(c, y_spec);
        auto w = wedge(c, x, y);
        Json j = Json{{"schema_version", kSchemaVersion},
                      {"command", "wedge"},
                      {"wedge", subspace_json(w)}};
        std::string text = "wedge dim: " + std::to_string(w.dim()) + "\n" +
                           subspace_text(w, c.labels(), "  ");
        emit(json_mode, j, text);
        return kExitOk;
      },
      any);
}

int run_filtration(const std::string& file, const std::string& d_spec,
                   std::size_t cap, bool json_mode) {
  AnyCoalgebra any = parse_coalgebra(read_input(file), cap);
  return std::visit(
      [&](const auto& c) {
        auto filt = build_filtration(c, parse_basis_spec(c, d_spec));
        Json stages = Json::array();
        std::string text;
        for (std::size_t n = 0; n < filt.size(); ++n) {
          stages.push_back(subspace_json(filt.stage(n)));
          text += "stage " + std::to_string(n) + ": dim " +
                  std::to_string(filt.stage(n).dim()) + "\n" +
                  subspace_text(filt.stage(n), c.labels(), "  ");
        }
        text += "stabilization index: " + std::to_string(filt.stabilization_index()) + "\n";
        text += "colimit dim: " + std::to_string(filt.colimit().dim()) + "\n";
        Json j = Json{{"schema_version", kSchemaVersion},
                      {"command", "filtration"},
                      {"stages", std::move(stages)},
                      {"stabilization_index", filt.stabilization_index()},
                      {"colimit", subspace_json(filt.colimit())}};
        emit(json_mode, j, text);
        return kExitOk;
      },
      any);
}

int run_coradical(const std::string& file, std::size_t cap, bool json_mode) {
  AnyCoalgebra any = parse_coalgebra(read_input(file), cap);
  return std::visit(
      [&](const auto& c) {
        auto result = coradical(c);
        Json j = Json{{"schema_version", kSchemaVersion},
                      {"command", "coradical"},
                      {"coradical", subspace_json(result.coradical)},
                      {"radical_dim", result.radical.dim()},
                      {"nilpotency_witness", result.nilpotency_witness}};
        std::string text = "coradical dim: " + std::to_string(result.coradical.dim()) +
                           "\n" + subspace_text(result.coradical, c.labels(), "  ") +
                           "dual radical dim: " + std::to_string(result.radical.dim()) +
                           "\n" + "nilpotency witness: " +
                           std::to_string(result.nilpotency_witness) + "\n";
        emit(json_mode, j, text);
        return kExitOk;
      },
      any);
}

int run_verify_hr(const std::string& file_e, const std::string& d_spec,
                  const std::string& file_f, std::size_t cap, bool json_mode) {
  AnyCoalgebra any = parse_coalgebra(read_input(file_e), cap);
  std::string map_text = read_input(file_f);
  return std::visit(
      [&](const auto& e) {
        auto f = parse_morphism(map_text, e);
        auto d = parse_basis_spec(e, d_spec);
        using Scalar = std::decay_t<decltype(e.epsilon().at(0, 0))>;
        HrInstance<Scalar> inst(e, d, f, Provenance{0, "cli", "verify-hr"});
        return finish_hr(verify_theorem(inst), json_mode);
      },
      any);
}

int run_verify_corollary(const std::string& file_e, const std::string& file_f,
                         std::size_t cap, bool json_mode) {
  AnyCoalgebra any = parse_coalgebra(read_input(file_e), cap);
  std::string map_text = read_input(file_f);
  return std::visit(
      [&](const auto& e) {
        auto f = parse_morphism(map_text, e);
        return finish_hr(verify_corollary(e, f), json_mode);
      },
      any);
}

std::vector<Coalgebra<Rat>> builtin_corpus() {
  std::vector<Coalgebra<Rat>> corpus;
  for (std::size_t n = 1; n <= 5; ++n) corpus.push_back(divided_power<Rat>(n));
  for (std::size_t n = 1; n <= 4; ++n) corpus.push_back(grouplike<Rat>(n));
  for (std::size_t n = 1; n <= 3; ++n) corpus.push_back(matrix_coalgebra<Rat>(n));
  corpus.push_back(direct_sum(grouplike<Rat>(2), divided_power<Rat>(2)));
  corpus.push_back(direct_sum(divided_power<Rat>(1), matrix_coalgebra<Rat>(2)));
  return corpus;
}

int finish_lemma_suite(const VerificationReport& report, bool json_mode) {
  Json j = Json{{"schema_version", kSchemaVersion}, {"command", "lemma-suite"}};
  j.update(report_json(report));
  std::string text = "checks: " + std::to_string(report.checks.size()) + "\n";
  for (const CheckItem& item : report.checks) {
    if (!item.passed) {
      text += "FAIL  " + item.name;
      if (!item.detail.empty()) text += " (" + item.detail + ")";
      text += "\n";
    }
  }
  text += std::string("result: ") + (report.all_passed() ? "pass" : "fail") + "\n";
  emit(json_mode, j, text);
  return report.all_passed() ? kExitOk : kExitInvalid;
}

int run_lemma_suite(const std::string& corpus_arg, std::size_t cap, bool json_mode) {
  if (corpus_arg == "built-in") {
    return finish_lemma_suite(lemma_suite(builtin_corpus()), json_mode);
  }
  std::filesystem::path dir(corpus_arg);
  if (!std::filesystem::is_directory(dir)) {
    throw IoFailure{"corpus '" + corpus_arg + "' is not a directory"};
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Coalgebra<Rat>> rats;
  std::vector<Coalgebra<Fp>> fps;
  for (const auto& path : files) {
    AnyCoalgebra any = parse_coalgebra(read_input(path.string()), cap);
    if (std::holds_alternative<Coalgebra<Rat>>(any)) {
      rats.push_back(std::get<Coalgebra<Rat>>(std::move(any)));
    } else {
      fps.push_back(std::get<Coalgebra<Fp>>(std::move(any)));
    }
  }
  if (!rats.empty() && !fps.empty()) {
    throw UsageFailure{"corpus mixes rational and prime-field documents"};
  }
  if (!fps.empty()) {
    for (std::size_t i = 1; i < fps.size(); ++i) {
      if (fps[i].field() != fps[0].field()) {
        throw UsageFailure{"corpus mixes different prime fields"};
      }
    }
    return finish_lemma_suite(lemma_suite(fps), json_mode);
  }
  return finish_lemma_suite(lemma_suite(rats), json_mode);
}

FieldSpec parse_field_arg(const std::string& arg) {
  if (arg == "Q") return FieldSpec::rationals();
  if (arg.rfind("Fp:", 0) == 0) {
    std::uint64_t p = 0;
    try {
      std::size_t used = 0;
      p = std::stoull(arg.substr(3), &used);
      if (used != arg.size() - 3) throw std::invalid_argument(arg);
    } catch (const std::exception&) {
      throw UsageFailure{"--field expects Q or Fp:<prime>"};
    }
    return FieldSpec::prime_field(p);  // FieldError for composite p
  }
  throw UsageFailure{"--field expects Q or Fp:<prime>"};
}

int run_stress(std::size_t trials, std::size_t dim_cap, const std::string& field_arg,
               std::uint64_t seed, bool json_mode) {
  StressConfig config;
  config.trials = trials;
  config.dim_cap = dim_cap;
  config.field = parse_field_arg(field_arg);
  config.seed = seed;
  StressSummary summary = config.field.is_rationals() ? stress<Rat>(config)
                                                      : stress<Fp>(config);
  Json j = Json{{"schema_version", kSchemaVersion},
                {"command", "stress"},
                {"trials", summary.trials},
                {"consistent", summary.consistent},
                {"premise_violated", summary.premise_violated},
                {"counterexamples", summary.counterexamples}};
  std::string text = "trials: " + std::to_string(summary.trials) +
                     "\nconsistent: " + std::to_string(summary.consistent) +
                     "\npremise violated: " + std::to_string(summary.premise_violated) +
                     "\ncounterexamples: " + std::to_string(summary.counterexamples) + "\n";
  if (summary.first_counterexample) {
    const Provenance& p = *summary.first_counterexample;
    j["first_counterexample"] = Json{{"seed", p.seed}, {"family", p.family},
                                     {"detail", p.detail}};
    text += "first counterexample: seed " + std::to_string(p.seed) + ", " + p.family +
            ", " + p.detail + "\n";
  }
  emit(json_mode, j, text);
  return summary.counterexamples > 0 ? kExitCounterexample : kExitOk;
}

int run_gen(const std::string& family, std::int64_t size, const std::string& field_arg) {
  FieldSpec field = parse_field_arg(field_arg);
  if (size < 0 || (family != "divided-power" && size < 1)) {
    throw UsageFailure{"gen " + family + " needs a size >= " +
                       (family == "divided-power" ? std::string("0") : std::string("1"))};
  }
  std::size_t n = static_cast<std::size_t>(size);
  auto print = [](const auto& c) { std::cout << serialize(c); };
  if (field.is_rationals()) {
    if (family == "divided-power") print(divided_power<Rat>(n));
    else if (family == "grouplike") print(grouplike<Rat>(n));
    else print(matrix_coalgebra<Rat>(n));
  } else {
    if (family == "divided-power") print(divided_power<Fp>(n, field));
    else if (family == "grouplike") print(grouplike<Fp>(n, field));
    else print(matrix_coalgebra<Fp>(n, field));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact finite-dimensional coalgebra toolkit"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string output_mode = "text";
  app.add_option("--output", output_mode, "output format")
      ->check(CLI::IsMember({"json", "text"}));
  std::size_t size_cap = kDefaultSizeCap;
  app.add_option("--size-cap", size_cap, "tensor size cap")
      ->envname("WEDGEKIT_SIZE_CAP");

  auto* validate_cmd = app.add_subcommand("validate", "check the coalgebra axioms");
  std::string validate_file;
  validate_cmd->add_option("file", validate_file, "document path or -")->required();

  auto* wedge_cmd = app.add_subcommand("wedge", "wedge of two subspaces");
  std::string wedge_file, wedge_x, wedge_y;
  wedge_cmd->add_option("file", wedge_file)->required();
  wedge_cmd->add_option("--x", wedge_x, "basis spec")->required();
  wedge_cmd->add_option("--y", wedge_y, "basis spec")->required();

  auto* filt_cmd = app.add_subcommand("filtration", "wedge filtration of a subcoalgebra");
  std::string filt_file, filt_d;
  filt_cmd->add_option("file", filt_file)->required();
  filt_cmd->add_option("--d", filt_d, "basis spec of the base subcoalgebra")->required();

  auto* corad_cmd = app.add_subcommand("coradical", "coradical via the dual radical");
  std::string corad_file;
  corad_cmd->add_option("file", corad_file)->required();

  auto* vhr_cmd = app.add_subcommand("verify-hr", "verify the theorem on an instance");
  std::string vhr_file, vhr_d, vhr_map;
  vhr_cmd->add_option("file", vhr_file)->required();
  vhr_cmd->add_option("--d", vhr_d, "basis spec of the base subcoalgebra")->required();
  vhr_cmd->add_option("--map", vhr_map, "morphism document path")->required();

  auto* vcor_cmd = app.add_subcommand("verify-hr-corollary",
                                      "verify the corollary with the coradical base");
  std::string vcor_file, vcor_map;
  vcor_cmd->add_option("file", vcor_file)->required();
  vcor_cmd->add_option("--map", vcor_map, "morphism document path")->required();

  auto* lemma_cmd = app.add_subcommand("lemma-suite", "run every lemma check");
  std::string lemma_corpus = "built-in";
  lemma_cmd->add_option("--corpus", lemma_corpus, "built-in or a directory of documents");

  auto* stress_cmd = app.add_subcommand("stress", "seeded theorem stress harness");
  std::size_t stress_trials = 0;
  std::size_t stress_dim_cap = kStressMaxDimCap;
  std::string stress_field = "Q";
  std::uint64_t stress_seed = 0;
  stress_cmd->add_option("--trials", stress_trials, "number of trials")->required();
  stress_cmd->add_option("--dim-cap", stress_dim_cap, "ambient dimension cap");
  stress_cmd->add_option("--field", stress_field, "Q or Fp:<prime>");
  stress_cmd->add_option("--seed", stress_seed, "master seed");

  auto* gen_cmd = app.add_subcommand("gen", "write a built-in family document");
  std::string gen_family;
  std::int64_t gen_size = 0;
  std::string gen_field = "Q";
  gen_cmd->add_option("family", gen_family, "divided-power, grouplike or matrix")
      ->required()
      ->check(CLI::IsMember({"divided-power", "grouplike", "matrix"}));
  gen_cmd->add_option("size", gen_size, "family size parameter")->required();
  gen_cmd->add_option("--field", gen_field, "Q or Fp:<prime>");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  bool json_mode = output_mode == "json";
  try {
    if (*validate_cmd) return run_validate(validate_file, size_cap, json_mode);
    if (*wedge_cmd) return run_wedge(wedge_file, wedge_x, wedge_y, size_cap, json_mode);
    if (*filt_cmd) return run_filtration(filt_file, filt_d, size_cap, json_mode);
    if (*corad_cmd) return run_coradical(corad_file, size_cap, json_mode);
    if (*vhr_cmd) return run_verify_hr(vhr_file, vhr_d, vhr_map, size_cap, json_mode);
    if (*vcor_cmd) return run_verify_corollary(vcor_file, vcor_map, size_cap, json_mode);
    if (*lemma_cmd) return run_lemma_suite(lemma_corpus, size_cap, json_mode);
    if (*stress_cmd) {
      return run_stress(stress_trials, stress_dim_cap, stress_field, stress_seed,
                        json_mode);
    }
    if (*gen_cmd) return run_gen(gen_family, gen_size, gen_field);
    std::cerr << "no command given\n";
    return kExitUsage;
  } catch (const IoFailure& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitIo;
  } catch (const UsageFailure& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitUsage;
  } catch (const UnsupportedField& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnsupportedField;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}
