#include <exception>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "experiment.hpp"
#include "nonclassical/errors.hpp"

using nonclassical::cli::ExperimentConfig;

namespace {

std::string option_names(const std::string& key) {
  std::string names = "--" + key;
  if (key.find('_') != std::string::npos) {
    std::string dashed = key;
    std::string joined;
    for (char& c : dashed) c = c == '_' ? '-' : c;
    for (char c : key) {
      if (c != '_') joined += c;
    }
    names += ",--" + dashed + ",--" + joined;
  }
  return names;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonclassical shock experiments: Riemann solver, front tracking, traveling waves, "
               "entropy-conservative schemes and kinetic-function measurement.\n"
               "Worker threads: NONCLASSICAL_WORKERS."};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(nonclassical::cli::kArtifactVersion));

  std::map<std::string, std::optional<std::string>> flags;
  std::string config_path;
  bool print_config = false;
  const std::map<std::string, std::string> help{
      {"riemann", "solve one Riemann problem"},
      {"cauchy", "front tracking for step or sampled data"},
      {"tw", "traveling-wave kinetic table"},
      {"fd", "entropy-conservative scheme with controlled dissipation"},
      {"kinetics", "measured kinetic table versus the traveling-wave table"},
      {"validate", "run the acceptance criteria"},
      {"run", "run the command named in a config file"},
  };
  for (const auto& [name, text] : help) {
    CLI::App* sub = app.add_subcommand(name, text);
    sub->set_help_flag("--help", "print help");
    sub->add_option("--config", config_path, "key=value config file (flags override it)");
    sub->add_flag("--print-config", print_config, "print the resolved config and exit");
    for (const auto& key : ExperimentConfig::keys()) {
      if (key == "command") continue;
      sub->add_option_function<std::string>(
          option_names(key), [&flags, key](const std::string& v) { flags[key] = v; }, "config key " + key);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    ExperimentConfig cfg = config_path.empty() ? ExperimentConfig{} : ExperimentConfig::load(config_path);
    if (command == "run") {
      if (config_path.empty()) throw nonclassical::ConfigError("run needs --config");
    } else {
      cfg.command = command;
    }
    for (const auto& [key, value] : flags) {
      if (value) cfg.set(key, *value);
    }
    if (print_config) {
      std::cout << cfg.emit();
      return 0;
    }
    return nonclassical::cli::run(cfg, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return nonclassical::cli::exit_code_for(std::current_exception());
  }
}
