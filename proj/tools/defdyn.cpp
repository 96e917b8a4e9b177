#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "defdyn/arith.hpp"
#include "defdyn/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Definable topological dynamics over decidable group backends"};
  app.set_version_flag("--version", std::string(defdyn::kToolVersion));

  std::string scenario_path;
  bool        text         = false;
  bool        with_oracle  = false;
  bool        capabilities = false;
  std::uint64_t guard      = 0;

  app.add_option("--scenario", scenario_path, "scenario JSON file, '-' for stdin");
  app.add_flag("--text", text, "human-readable output instead of JSON");
  app.add_flag("--with-oracle", with_oracle, "cross-check results against the naive oracle");
  app.add_option("--level-guard", guard, "largest admissible level")->check(CLI::PositiveNumber);
  app.add_flag("--capabilities", capabilities, "list tasks and their parameters");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    auto const rc = app.exit(e);
    return rc == 0 ? 0 : defdyn::kExitSchemaError;
  }

  if (guard != 0) {
    defdyn::set_level_guard(guard);
  }
  if (capabilities) {
    std::cout << defdyn::list_capabilities().dump(2) << "\n";
    return defdyn::kExitOk;
  }
  if (scenario_path.empty()) {
    std::cerr << "defdyn: --scenario is required\n" << app.help();
    return defdyn::kExitSchemaError;
  }

  std::string input;
  if (scenario_path == "-") {
    input.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(scenario_path);
    if (!in) {
      std::cerr << "defdyn: cannot read " << scenario_path << "\n";
      return defdyn::kExitSchemaError;
    }
    input.assign(std::istreambuf_iterator<char>(in), {});
  }

  auto const outcome = defdyn::run_scenario_text(input, {with_oracle});
  if (text) {
    std::cout << defdyn::render_text(outcome.report);
  } else {
    std::cout << outcome.report.dump(2) << "\n";
  }
  if (outcome.exit_code == defdyn::kExitSchemaError) {
    std::cerr << "defdyn: " << outcome.report.value("error", "schema error") << "\n";
  }
  return outcome.exit_code;
}
