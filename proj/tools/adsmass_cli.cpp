// Command-line driver: runs the verification pipelines described by a
// sectioned key-value config file and emits human or structured reports.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "adsmass/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
}

struct CommonOptions {
  std::string config_path;
  std::string format;
  std::string out_path;
  int threads = 0;
  long seed = -1;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "run configuration file")
      ->required();
  cmd->add_option("--format", opts.format, "report format: human|structured");
  cmd->add_option("--out", opts.out_path, "report output path (default stdout)");
  cmd->add_option("--threads", opts.threads, "worker thread budget");
  cmd->add_option("--seed", opts.seed, "seed for randomized pipelines");
}

int execute(const CommonOptions& opts,
            const std::vector<std::string>& pipeline_override) {
  adsmass::RunConfig config;
  try {
    config = adsmass::parse_config(read_file(opts.config_path));
    if (!opts.format.empty()) {
      if (opts.format != "human" && opts.format != "structured") {
        throw adsmass::ConfigError("format must be 'human' or 'structured'");
      }
      config.format = opts.format;
    }
    if (opts.threads > 0) config.threads = opts.threads;
    if (opts.seed >= 0) config.seed = static_cast<unsigned>(opts.seed);
    if (!pipeline_override.empty()) config.pipelines = pipeline_override;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return adsmass::kExitConfigError;
  }

  try {
    const adsmass::RunOutcome outcome = adsmass::run(config);
    const std::string text = config.format == "structured"
                                 ? adsmass::render_structured(outcome.report)
                                 : adsmass::render_human(outcome.report);
    const std::string out_path =
        !opts.out_path.empty() ? opts.out_path : config.report_path;
    write_output(out_path, text);
    if (!config.csv_path.empty() && !outcome.csv.empty()) {
      write_output(config.csv_path, outcome.csv);
    }
    return outcome.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return adsmass::kExitInternalError;
  }
}

int list_families() {
  for (const adsmass::FamilyDescriptor& desc : adsmass::family_registry()) {
    std::cout << desc.name;
    if (!desc.parameter_names.empty()) {
      std::cout << "  (parameters:";
      for (const std::string& p : desc.parameter_names) std::cout << " " << p;
      std::cout << ")";
    }
    std::cout << "\n";
  }
  return adsmass::kExitPass;
}

int rerender_report(const std::string& input, const std::string& format,
                    const std::string& out_path) {
  try {
    const adsmass::Json report = adsmass::Json::parse(read_file(input));
    const std::string text = format == "structured"
                                 ? adsmass::render_structured(report)
                                 : adsmass::render_human(report);
    write_output(out_path, text);
    return adsmass::kExitPass;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return adsmass::kExitConfigError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "adsmass: energy-momentum invariants of asymptotically AdS initial "
      "data"};
  app.require_subcommand(1);

  CLI::App* families =
      app.add_subcommand("families", "list built-in initial data families");

  CommonOptions verify_opts;
  CLI::App* verify = app.add_subcommand(
      "verify", "run the verification pipelines selected in the config");
  add_common(verify, verify_opts);

  CommonOptions mass_opts;
  CLI::App* mass = app.add_subcommand(
      "mass", "run only the mass and q-matrices pipelines");
  add_common(mass, mass_opts);

  std::string report_input, report_format = "human", report_out;
  CLI::App* report =
      app.add_subcommand("report", "re-render a structured report");
  report->add_option("input", report_input, "structured report file")
      ->required();
  report->add_option("--format", report_format,
                     "output format: human|structured");
  report->add_option("--out", report_out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (families->parsed()) return list_families();
  if (verify->parsed()) return execute(verify_opts, {});
  if (mass->parsed()) return execute(mass_opts, {"mass", "q-matrices"});
  if (report->parsed()) {
    return rerender_report(report_input, report_format, report_out);
  }
  return adsmass::kExitInternalError;
}
