#include <exception>
#include <functional>
#include <map>
#include <ostream>

#include <CLI11.hpp>

#include "resd/cli/commands.hpp"

namespace resd::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Robust energy system design: preprocessing, solving, evaluation and sweeps"};
  app.name("resd");
  app.require_subcommand(1);

  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_dir;
  std::string method;
  std::string model;

  using Handler = std::function<int(const RunConfig&, const Console&)>;
  const std::map<std::string, std::pair<std::string, Handler>> commands{
      {"preprocess", {"Cluster scenarios, fit PCA and write the uncertainty bundle", cmd_preprocess}},
      {"solve", {"Solve the robust design problem", cmd_solve}},
      {"evaluate", {"Evaluate a design against the dataset", cmd_evaluate}},
      {"sweep", {"Solve over the n_dim x steps x seeds grid", cmd_sweep}},
  };
  std::map<std::string, CLI::Option*> seed_opt;
  std::map<std::string, CLI::Option*> out_opt;
  std::map<std::string, CLI::Option*> method_opt;
  std::map<std::string, CLI::Option*> model_opt;
  for (const auto& [name, entry] : commands) {
    CLI::App* sub = app.add_subcommand(name, entry.first);
    sub->add_option("--config", config_path, "Run configuration (JSON)")->required();
    seed_opt[name] = sub->add_option("--seed", seed, "Clustering seed");
    out_opt[name] = sub->add_option("--out", out_dir, "Output directory");
    method_opt[name] = sub->add_option("--method", method, "resd or heuristic")
                           ->check(CLI::IsMember({"resd", "heuristic"}));
    model_opt[name] = sub->add_option("--model", model, "lapalma or milp-example")
                          ->check(CLI::IsMember({"lapalma", "milp-example"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  Console con{out, err, log_level_from_env()};
  try {
    RunConfig cfg = load_config(config_path);
    cfg.command = name;
    Overrides o;
    if (seed_opt[name]->count() > 0) o.seed = seed;
    if (out_opt[name]->count() > 0) o.out = out_dir;
    if (method_opt[name]->count() > 0) o.method = method;
    if (model_opt[name]->count() > 0) o.model = model;
    apply_overrides(cfg, o);
    return commands.at(name).second(cfg, con);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace resd::cli
