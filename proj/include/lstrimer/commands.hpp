#pragma once

// The four analyses behind the command-line tool. Each returns the rendered
// artifact so it can be tested without touching the filesystem.

#include "lstrimer/config.hpp"
#include "lstrimer/sweep.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>

namespace lstrimer {

struct CommandOutput {
  std::string body;                    // primary artifact (CSV or JSON text)
  std::optional<std::string> sidecar;  // sweep EP summary when the body is CSV
};

/// 17 significant digits, scientific notation, '.' separator.
[[nodiscard]] std::string format_real(double x);

[[nodiscard]] nlohmann::json complex_to_json(Complex z);

inline constexpr const char* kSweepCsvHeader =
    "gamma,re_lambda0,im_lambda0,re_lambda_plus,im_lambda_plus,re_lambda_minus,im_lambda_minus,regime";

[[nodiscard]] std::string evolve_csv_header(std::size_t sites);

[[nodiscard]] std::string render_sweep_csv(const std::vector<SweepRow>& rows);
[[nodiscard]] std::string render_trajectory_csv(const std::vector<TrajectorySample>& samples);

/// Locates the EPs bracketed by sign changes of 2 kappa^2 - gamma^2 along the sweep.
[[nodiscard]] nlohmann::json sweep_ep_summary(const TrimerParams& base, const std::vector<SweepRow>& rows, double tol);

[[nodiscard]] CommandOutput cmd_spectrum(const RunConfig& cfg);
[[nodiscard]] CommandOutput cmd_evolve(const RunConfig& cfg, unsigned threads = 1);
[[nodiscard]] CommandOutput cmd_sweep(const RunConfig& cfg, unsigned threads = 1);
[[nodiscard]] CommandOutput cmd_cospectral(const RunConfig& cfg);

[[nodiscard]] CommandOutput run_command(const RunConfig& cfg, unsigned threads = 1);

/// Text written for JSON artifacts: 2-space indent, trailing newline.
[[nodiscard]] std::string dump_json(const nlohmann::json& j);

}  // namespace lstrimer
