#include "lstrimer/commands.hpp"

#include "lstrimer/errors.hpp"

#include <cmath>

namespace lstrimer {

using nlohmann::json;

namespace {

json state_to_json(const StateVector& v) {
  json out = json::array();
  for (const auto& a : v.amplitudes()) out.push_back(complex_to_json(a));
  return out;
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json model_json(const RunConfig& cfg) {
  if (cfg.trimer) return json{{"trimer", trimer_to_json(*cfg.trimer)}};
  return json{{"network", network_to_json(*cfg.network)}};
}

json spectral_json(const SpectralDecomposition& d) {
  json values = json::array();
  for (const auto& z : d.eigenvalues) values.push_back(complex_to_json(z));
  json vectors = json::array();
  const std::size_t n = d.eigenvalues.size();
  for (std::size_t k = 0; k < n; ++k) {
    json col = json::array();
    for (std::size_t i = 0; i < n; ++i) col.push_back(complex_to_json(d.right_eigenvectors(i, k)));
    vectors.push_back(std::move(col));
  }
  json cond = std::isfinite(d.eigenvector_condition) ? json(d.eigenvector_condition) : json(nullptr);
  return json{{"eigenvalues", std::move(values)},
              {"eigenvectors", std::move(vectors)},
              {"defective", d.defective},
              {"eigenvector_condition", std::move(cond)}};
}

OutputFormat format_or(const RunConfig& cfg, OutputFormat fallback) { return cfg.format.value_or(fallback); }

}  // namespace

json sweep_ep_summary(const TrimerParams& base, const std::vector<SweepRow>& rows, double tol) {
  std::optional<EPLocation> pos;
  std::optional<EPLocation> neg;
  const double kk = 2.0 * base.kappa * base.kappa;
  for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
    const double f0 = kk - rows[k].gamma * rows[k].gamma;
    const double f1 = kk - rows[k + 1].gamma * rows[k + 1].gamma;
    if (f0 * f1 > 0.0) continue;
    auto& slot = (rows[k].gamma + rows[k + 1].gamma > 0.0) ? pos : neg;
    if (!slot) slot = locate_ep(base, {rows[k].gamma, rows[k + 1].gamma}, tol);
  }
  const auto field = [](const std::optional<EPLocation>& e, double EPLocation::*member) {
    return e ? json((*e).*member) : json(nullptr);
  };
  return json{{"gamma_c_positive", field(pos, &EPLocation::gamma_c)},
              {"gamma_c_negative", field(neg, &EPLocation::gamma_c)},
              {"residuals",
               {{"positive", field(pos, &EPLocation::residual)}, {"negative", field(neg, &EPLocation::residual)}}},
              {"eigenvector_overlap",
               {{"positive", field(pos, &EPLocation::eigenvector_overlap)},
                {"negative", field(neg, &EPLocation::eigenvector_overlap)}}}};
}

CommandOutput cmd_spectrum(const RunConfig& cfg) {
  EigenOptions opts;
  opts.tol = cfg.tol;
  const NetworkHamiltonian h = cfg.hamiltonian();
  const SpectralDecomposition numeric = eigen(h.matrix(), opts);

  json report = {{"command", "spectrum"}, {"model", model_json(cfg)}, {"spectrum", spectral_json(numeric)}};
  if (cfg.trimer) {
    const TrimerParams& p = *cfg.trimer;
    const SectorDecomposition s = decompose(p);
    const PhaseClassification phase = classify_phase(p);
    const StateVector dark = cfg.normalize ? s.dark_vector.normalized() : s.dark_vector;
    const StateVector bright = cfg.normalize ? s.bright_vector.normalized() : s.bright_vector;
    report["decomposition"] = {{"dark_eigenvalue", complex_to_json(s.dark_eigenvalue)},
                               {"dark_vector", state_to_json(dark)},
                               {"bright_vector", state_to_json(bright)},
                               {"bright_block", matrix_to_json(s.bright_block)},
                               {"lambda_plus", complex_to_json(s.lambda_plus)},
                               {"lambda_minus", complex_to_json(s.lambda_minus)},
                               {"discriminant", complex_to_json(s.discriminant)}};
    report["phase"] = {{"regime", std::string(to_string(phase.regime))},
                       {"gamma_c", phase.gamma_c},
                       {"discriminant", complex_to_json(phase.discriminant)}};
  }

  if (format_or(cfg, OutputFormat::Json) == OutputFormat::Csv) {
    std::string csv = "index,re_lambda,im_lambda\n";
    for (std::size_t k = 0; k < numeric.eigenvalues.size(); ++k) {
      csv += std::to_string(k) + "," + format_real(numeric.eigenvalues[k].real()) + "," +
             format_real(numeric.eigenvalues[k].imag()) + "\n";
    }
    return {csv, std::nullopt};
  }
  return {dump_json(report), std::nullopt};
}

CommandOutput cmd_evolve(const RunConfig& cfg, unsigned threads) {
  const NetworkHamiltonian h = cfg.hamiltonian();
  const StateVector psi0 = initial_state_vector(cfg);
  const std::vector<TrajectorySample> samples = trajectory(h, psi0, cfg.grid, threads);
  if (format_or(cfg, OutputFormat::Csv) == OutputFormat::Csv) return {render_trajectory_csv(samples), std::nullopt};

  json rows = json::array();
  for (const auto& s : samples) {
    rows.push_back({{"t", s.t}, {"amplitudes", state_to_json(s.amplitudes)}, {"occupations", s.occupations}});
  }
  return {dump_json({{"command", "evolve"}, {"model", model_json(cfg)}, {"samples", std::move(rows)}}),
          std::nullopt};
}

CommandOutput cmd_sweep(const RunConfig& cfg, unsigned threads) {
  if (!cfg.trimer) throw ConfigError("trimer", "sweep requires a trimer model");
  const TrimerParams& base = *cfg.trimer;
  const auto rows = gamma_sweep(base, cfg.sweep.gamma_min, cfg.sweep.gamma_max, cfg.sweep.steps, threads);
  json eps = sweep_ep_summary(base, rows, cfg.tol);
  if (format_or(cfg, OutputFormat::Csv) == OutputFormat::Csv) return {render_sweep_csv(rows), dump_json(eps)};

  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"gamma", r.gamma},
                   {"lambda0", complex_to_json(r.lambda0)},
                   {"lambda_plus", complex_to_json(r.lambda_plus)},
                   {"lambda_minus", complex_to_json(r.lambda_minus)},
                   {"regime", std::string(to_string(r.regime))}});
  }
  return {dump_json({{"command", "sweep"}, {"model", model_json(cfg)}, {"rows", std::move(out)}, {"ep", eps}}),
          std::nullopt};
}

CommandOutput cmd_cospectral(const RunConfig& cfg) {
  const NetworkHamiltonian h = cfg.hamiltonian();
  const std::size_t n = h.site_count();
  if (n < 2) throw ConfigError("network.sites", "cospectral analysis needs at least 2 sites");

  json pairs = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const CospectralReport r = is_cospectral(h, i, j, cfg.tol);
      json entry = {{"pair", {i, j}}, {"cospectral", r.cospectral}, {"max_coeff_deviation", r.max_coeff_deviation}};
      if (r.cospectral) {
        const SingletReport s = singlet_sites(h, {i, j});
        entry["singlets"] = s.singlets;
        entry["disconnected"] = s.disconnected;
      }
      pairs.push_back(std::move(entry));
    }
  }
  json report = {{"command", "cospectral"}, {"model", model_json(cfg)}, {"pairs", std::move(pairs)}};
  if (n == 3) {
    const TrimerConditions c = check_trimer_conditions(h, cfg.tol);
    report["trimer_conditions"] = {{"equal_onsite", c.equal_onsite},
                                   {"product_match", c.product_match},
                                   {"latent_symmetric", c.latent_symmetric}};
  }
  return {dump_json(report), std::nullopt};
}

CommandOutput run_command(const RunConfig& cfg, unsigned threads) {
  switch (cfg.command) {
    case Command::Spectrum: return cmd_spectrum(cfg);
    case Command::Evolve: return cmd_evolve(cfg, threads);
    case Command::Sweep: return cmd_sweep(cfg, threads);
    case Command::Cospectral: return cmd_cospectral(cfg);
  }
  throw ConfigError("command", "unknown command");
}

}  // namespace lstrimer
