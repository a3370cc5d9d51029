#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "endoquant/algebra/errors.hpp"
#include "endoquant/cli/commands.hpp"

using namespace endoquant;

int main(int argc, char** argv) {
  CLI::App app{"Star products with separation of variables on endomorphism bundles"};
  app.require_subcommand(1);
  std::string config_path, out_path, family, route;
  int order = -1;
  long long seed = -1;
  const std::pair<const char*, const char*> commands[] = {
      {"graphs", "graph classes with |Aut| and coefficients"},
      {"tensor", "C and E tensors per nu order"},
      {"mul", "product of sections f and g"},
      {"verify", "identity checks; exit 1 if any fails"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON chart/config file")->required();
    sub->add_option("--order,--max-degree", order, "nu order (graphs: maximal degree)")->check(CLI::NonNegativeNumber);
    sub->add_option("--family", family, "graph family")->check(CLI::IsMember({"M", "N"}));
    sub->add_option("--route", route, "product route")->check(CLI::IsMember({"graph", "oracle"}));
    sub->add_option("--seed", seed, "random seed")->check(CLI::NonNegativeNumber);
    sub->add_option("--out", out_path, "write the JSON result here (default: stdout)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }
  std::string command = app.get_subcommands().front()->get_name();

  try {
    Config config = load_config(config_path);
    if (order >= 0) config.order = order;
    if (!family.empty()) config.family = family == "M" ? Family::M : Family::N;
    if (!route.empty()) config.route = route;
    if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);
    CommandResult r = run_command(command, config);
    std::string json = r.output.dump(2) + "\n";
    if (out_path.empty()) {
      std::cout << json;
    } else {
      std::ofstream out(out_path);
      if (!out) throw InvalidInput("out: cannot write '" + out_path + "'");
      out << json;
      std::cout << r.text;
    }
    return r.status;
  } catch (const Error& e) {
    std::cerr << "endoquant: " << e.what() << "\n";
    return kExitInputError;
  }
}
