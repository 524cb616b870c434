// lstrimer: spectrum | evolve | sweep | cospectral analyses of tight-binding
// networks and the latent-symmetric trimer.
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure.

#include "lstrimer/commands.hpp"
#include "lstrimer/errors.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitNumeric = 2;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw lstrimer::ConfigError("--out", "cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Latent-symmetric non-Hermitian trimer toolkit"};
  std::string command;
  std::string config_path;
  std::string out_path;
  std::string format;
  double tol = 0.0;
  app.add_option("command", command, "spectrum | evolve | sweep | cospectral")
      ->required()
      ->check(CLI::IsMember({"spectrum", "evolve", "sweep", "cospectral"}));
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_path, "output file (default: config output.path, else stdout)");
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--tol", tol, "comparison tolerance (default 1e-10)")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    lstrimer::RunConfig cfg = lstrimer::load_config(config_path, lstrimer::parse_command(command));
    if (!format.empty()) cfg.format = lstrimer::parse_format(format, "--format");
    if (tol > 0.0) cfg.tol = tol;
    if (!out_path.empty()) cfg.output_path = out_path;

    const lstrimer::CommandOutput result = lstrimer::run_command(cfg, lstrimer::thread_count_from_env());
    if (cfg.output_path) {
      write_file(*cfg.output_path, result.body);
      if (result.sidecar) write_file(*cfg.output_path + ".ep.json", *result.sidecar);
    } else {
      std::cout << result.body;
      if (result.sidecar) std::cerr << *result.sidecar;
    }
    return 0;
  } catch (const lstrimer::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const lstrimer::InputError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const lstrimer::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  }
}
