// Command-line front end for the off-axis localization simulations.
//
//   lambdaloc map|radial|noise|feasibility|thermal [--preset NAME] [--config PATH]
//             [--seed N] [--threads N] [--out DIR]
//   lambdaloc presets [--preset NAME]
//
// Exit codes: 0 success, 2 configuration error, 3 numerical error,
// 4 steady-time horizon exceeded.

#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "lambdaloc/commands.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitNotConverged = 4;

struct Options {
  std::string preset;
  std::string config;
  std::string out = "out";
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
};

using Command = std::function<lambdaloc::json(const lambdaloc::RunConfig&,
                                              const std::filesystem::path&)>;

lambdaloc::RunConfig resolve(const Options& o, const std::string& default_preset) {
  lambdaloc::RunConfig cfg = lambdaloc::make_preset(o.preset.empty() ? default_preset : o.preset);
  if (!o.config.empty()) lambdaloc::apply_ini_file(cfg, o.config);
  if (o.seed) cfg.seed = *o.seed;
  if (o.threads) cfg.threads = *o.threads;
  cfg.noise.seed = cfg.seed;
  cfg.validate();
  return cfg;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--preset", o.preset, "Built-in configuration to start from")
      ->envname("LAMBDALOC_PRESET");
  sub->add_option("--config", o.config, "INI configuration file applied over the preset")
      ->envname("LAMBDALOC_CONFIG");
  sub->add_option("--seed", o.seed, "Random seed")->envname("LAMBDALOC_SEED");
  sub->add_option("--threads", o.threads, "Worker threads (0 = all cores)")
      ->envname("LAMBDALOC_THREADS");
  sub->add_option("--out", o.out, "Output directory")->envname("LAMBDALOC_OUT");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Off-axis atom localization in a three-level Lambda system"};
  app.require_subcommand(1);

  Options opts;
  const std::map<std::string, std::pair<std::string, Command>> commands = {
      {"map", {"fig2", lambdaloc::cmd_map}},
      {"radial", {"fig3-resolution", lambdaloc::cmd_radial}},
      {"noise", {"fig3-noise", lambdaloc::cmd_noise}},
      {"feasibility", {"fig4", lambdaloc::cmd_feasibility}},
      {"thermal", {"fig5", lambdaloc::cmd_thermal}},
  };
  const std::map<std::string, std::string> help = {
      {"map", "2D steady-state population maps of off-axis localization spots"},
      {"radial", "Radial profiles and FWHM versus probe/coupling ratio"},
      {"noise", "Monte Carlo ensembles under laser intensity noise"},
      {"feasibility", "Steady time versus localization radius and best resolution"},
      {"thermal", "Monte Carlo ensembles under atomic thermal motion"},
  };

  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, cmd] : commands) {
    subs[name] = app.add_subcommand(name, help.at(name));
    add_common(subs[name], opts);
  }
  CLI::App* presets = app.add_subcommand("presets", "List built-in presets or print one as INI");
  presets->add_option("--preset", opts.preset, "Preset to print")->envname("LAMBDALOC_PRESET");

  CLI11_PARSE(app, argc, argv);

  try {
    if (presets->parsed()) {
      if (opts.preset.empty()) {
        for (const auto& name : lambdaloc::preset_names()) std::cout << name << "\n";
      } else {
        std::cout << lambdaloc::to_ini(lambdaloc::make_preset(opts.preset));
      }
      return 0;
    }
    for (const auto& [name, cmd] : commands) {
      if (!subs[name]->parsed()) continue;
      const lambdaloc::RunConfig cfg = resolve(opts, cmd.first);
      lambdaloc::json summary = cmd.second(cfg, opts.out);
      summary.erase("config_ini");
      std::cout << "wrote " << name << " outputs to " << opts.out << "\n";
      std::cout << summary.dump(2) << "\n";
      return 0;
    }
  } catch (const lambdaloc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const lambdaloc::NotConverged& e) {
    std::cerr << "not converged: " << e.what() << "\n";
    return kExitNotConverged;
  } catch (const lambdaloc::Error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return 0;
}
