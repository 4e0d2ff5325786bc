#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nslice/catalogue.hpp"
#include "nslice/simulator.hpp"
#include "nslice/text_format.hpp"

namespace {

// Exit codes: 0 success, 1 domain violations, 2 input errors, 3 invariant
// violations.
constexpr int kOk = 0;
constexpr int kViolations = 1;
constexpr int kInputError = 2;
constexpr int kInvariant = 3;

std::string default_out(const char* env, const char* fallback) {
  if (const char* v = std::getenv(env)) return v;
  return fallback;
}

int cmd_validate(const std::vector<std::string>& paths) {
  bool any_violation = false;
  for (const auto& path : paths) {
    std::vector<nslice::SliceTemplate> templates;
    try {
      templates = nslice::load_templates(path);
    } catch (const nslice::ParseError& e) {
      std::cerr << path << ": parse error: " << e.what() << "\n";
      return kInputError;
    }
    if (templates.empty()) {
      std::cerr << path << ": no template documents found\n";
      return kInputError;
    }
    for (const auto& tpl : templates) {
      const auto report = nslice::validate_template(tpl);
      for (const auto& v : report.violations) {
        std::cout << path << ": " << tpl.id_info.template_id << ": " << v << "\n";
        any_violation = true;
      }
      if (report.ok())
        std::cout << path << ": " << tpl.id_info.template_id << ": ok\n";
    }
  }
  return any_violation ? kViolations : kOk;
}

int cmd_catalogue(const std::string& action, const std::string& cat_path,
                  const std::string& tpl_path, const std::string& provenance) {
  nslice::Catalogue cat;
  try {
    cat = nslice::Catalogue::load(nslice::read_file(cat_path));
  } catch (const nslice::ParseError& e) {
    std::cerr << cat_path << ": " << e.what() << "\n";
    return kInputError;
  }
  if (action == "check") {
    const auto problems = cat.check_integrity();
    for (const auto& p : problems) std::cout << p << "\n";
    if (problems.empty()) std::cout << "ok (" << cat.size() << " templates)\n";
    return problems.empty() ? kOk : kViolations;
  }
  if (action == "list") {
    for (const auto& id : cat.ids()) {
      const auto prov = cat.provenance_of(id);
      std::cout << id << " ["
                << (prov == nslice::Provenance::NonStandard ? "NonStandard" : "Standard") << "]\n";
    }
    return kOk;
  }
  if (action == "add") {
    std::vector<nslice::SliceTemplate> templates;
    try {
      templates = nslice::load_templates(tpl_path);
    } catch (const nslice::ParseError& e) {
      std::cerr << tpl_path << ": " << e.what() << "\n";
      return kInputError;
    }
    const auto prov = provenance == "NonStandard" ? nslice::Provenance::NonStandard
                                                  : nslice::Provenance::Standard;
    if (const auto err = cat.insert_batch(templates, prov)) {
      std::cerr << "insert failed: " << nslice::catalogue_error_name(*err) << "\n";
      return kViolations;
    }
    nslice::write_file(cat_path, cat.save());
    std::cout << "inserted " << templates.size() << " templates\n";
    return kOk;
  }
  std::cerr << "unknown catalogue action '" << action << "'\n";
  return kInputError;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-")
    std::cout << content;
  else
    nslice::write_file(out_path, content);
}

int cmd_run(const std::string& scenario_path, const std::string& mode_flag,
            std::optional<std::uint64_t> seed, const std::string& out_path, bool pretty) {
  try {
    nslice::Scenario scenario = nslice::Scenario::load(scenario_path);
    if (seed) scenario.seed = *seed;
    const auto mode = mode_flag == "gn" ? nslice::ProvisioningMode::SubNetworkSlicing
                                        : nslice::ProvisioningMode::UseCaseSpecific;
    const auto result = nslice::run(scenario, mode);
    emit(out_path, result.report.serialize(pretty));
    std::string log;
    for (const auto& line : result.event_log) log += line + "\n";
    if (!out_path.empty() && out_path != "-") nslice::write_file(out_path + ".events", log);
    return kOk;
  } catch (const nslice::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kInvariant;
  } catch (const nslice::ScenarioInvalid& e) {
    std::cerr << "scenario invalid: " << e.what() << "\n";
    return kInputError;
  } catch (const nslice::ParseError& e) {
    std::cerr << scenario_path << ": " << e.what() << "\n";
    return kInputError;
  }
}

int cmd_compare(const std::string& scenario_path, std::optional<std::uint64_t> seed,
                const std::string& out_path, bool pretty) {
  try {
    nslice::Scenario scenario = nslice::Scenario::load(scenario_path);
    if (seed) scenario.seed = *seed;
    const auto result = nslice::compare_modes(scenario);
    std::string body = result.serialize(pretty);
    if (pretty) body += "\n" + result.us.serialize(true) + "\n" + result.gn.serialize(true);
    emit(out_path, body);
    return kOk;
  } catch (const nslice::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kInvariant;
  } catch (const nslice::ScenarioInvalid& e) {
    std::cerr << "scenario invalid: " << e.what() << "\n";
    return kInputError;
  } catch (const nslice::ParseError& e) {
    std::cerr << scenario_path << ": " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"network slice provisioning toolkit"};
  app.require_subcommand(1);

  std::vector<std::string> validate_paths;
  auto* validate = app.add_subcommand("validate", "validate template documents");
  validate->add_option("files", validate_paths, "template files")->required();

  std::string cat_action, cat_path, cat_tpl_path, cat_prov = "Standard";
  auto* catalogue = app.add_subcommand("catalogue", "inspect or modify a catalogue file");
  catalogue->add_option("action", cat_action, "check | list | add")->required();
  catalogue->add_option("catalogue", cat_path, "catalogue file")->required();
  catalogue->add_option("template", cat_tpl_path, "template file (for add)");
  catalogue->add_option("--provenance", cat_prov, "Standard | NonStandard");

  std::string run_scenario, run_mode = "us";
  std::string run_out = default_out("NSLICE_OUT", "");
  std::optional<std::uint64_t> run_seed;
  std::string run_format = "table";
  auto* run_cmd = app.add_subcommand("run", "run a scenario in one provisioning mode");
  run_cmd->add_option("scenario", run_scenario, "scenario file")->required();
  run_cmd->add_option("--mode", run_mode, "us | gn")->check(CLI::IsMember({"us", "gn"}));
  run_cmd->add_option("--seed", run_seed, "seed override (non-negative)");
  run_cmd->add_option("--out", run_out, "report path ('-' for stdout)");
  run_cmd->add_option("--format", run_format, "table | machine")
      ->check(CLI::IsMember({"table", "machine"}));

  std::string cmp_scenario;
  std::string cmp_out = default_out("NSLICE_OUT", "");
  std::optional<std::uint64_t> cmp_seed;
  std::string cmp_format = "table";
  auto* compare = app.add_subcommand("compare", "run both modes and emit the delta table");
  compare->add_option("scenario", cmp_scenario, "scenario file")->required();
  compare->add_option("--seed", cmp_seed, "seed override");
  compare->add_option("--out", cmp_out, "output path ('-' for stdout)");
  compare->add_option("--format", cmp_format, "table | machine")
      ->check(CLI::IsMember({"table", "machine"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInputError;
  }

  if (validate->parsed()) return cmd_validate(validate_paths);
  if (catalogue->parsed()) return cmd_catalogue(cat_action, cat_path, cat_tpl_path, cat_prov);
  if (run_cmd->parsed())
    return cmd_run(run_scenario, run_mode, run_seed, run_out, run_format == "table");
  if (compare->parsed()) return cmd_compare(cmp_scenario, cmp_seed, cmp_out, cmp_format == "table");
  return kInputError;
}
