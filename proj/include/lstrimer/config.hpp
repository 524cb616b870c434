#pragma once

// JSON run configuration for the command-line front end.

#include "lstrimer/dynamics.hpp"
#include "lstrimer/network.hpp"
#include "lstrimer/trimer.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

namespace lstrimer {

/// Bad or inconsistent configuration. field() names the offending JSON path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  [[nodiscard]] const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

enum class Command { Spectrum, Evolve, Sweep, Cospectral };
enum class OutputFormat { Csv, Json };

[[nodiscard]] std::string_view to_string(Command c);
[[nodiscard]] Command parse_command(std::string_view name);  // throws ConfigError
[[nodiscard]] OutputFormat parse_format(std::string_view name, const std::string& field);

struct InitialState {
  enum class Kind { Dark, Bright, Site, Explicit };
  Kind kind = Kind::Bright;
  std::size_t site = 0;                // Kind::Site, 0-based
  std::vector<Complex> amplitudes;     // Kind::Explicit
};

struct SweepRange {
  double gamma_min = -2.0;
  double gamma_max = 2.0;
  std::size_t steps = 401;
};

struct RunConfig {
  Command command = Command::Spectrum;
  std::optional<TrimerParams> trimer;          // exactly one of trimer / network
  std::optional<NetworkHamiltonian> network;
  InitialState initial_state;
  TimeGrid grid{0.0, 10.0, 1001};
  SweepRange sweep;
  std::optional<std::string> output_path;
  std::optional<OutputFormat> format;          // unset: command default
  double tol = kDefaultTol;
  bool normalize = false;

  /// The model as a network, building the trimer when needed.
  [[nodiscard]] NetworkHamiltonian hamiltonian() const;
};

/// Validates and converts a parsed config document for the given command.
[[nodiscard]] RunConfig parse_config(const nlohmann::json& doc, Command command);
[[nodiscard]] RunConfig load_config(const std::filesystem::path& path, Command command);

/// Trimer block: omega3 / gamma3 may be "auto", which applies the reality conditions.
[[nodiscard]] TrimerParams trimer_from_json(const nlohmann::json& j, const std::string& field = "trimer");
[[nodiscard]] nlohmann::json trimer_to_json(const TrimerParams& p);

/// {"sites":[{"omega","gamma"}...], "couplings":[{"from","to","g"}...]}, 0-based indices.
[[nodiscard]] NetworkHamiltonian network_from_json(const nlohmann::json& j, const std::string& field = "network");
[[nodiscard]] nlohmann::json network_to_json(const NetworkHamiltonian& h);

/// Resolves the initial state against the model; dark/bright need a trimer.
[[nodiscard]] StateVector initial_state_vector(const RunConfig& cfg);

/// Thread count from LSTRIMER_THREADS (0 = available parallelism when unset).
[[nodiscard]] unsigned thread_count_from_env();

}  // namespace lstrimer
