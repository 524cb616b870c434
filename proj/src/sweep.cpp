#include "lstrimer/sweep.hpp"

#include "lstrimer/errors.hpp"

#include <cmath>
#include <string>

namespace lstrimer {

namespace {

constexpr double kCoalescenceSlack = 1e-6;

double ep_function(const TrimerParams& p, double gamma) { return 2.0 * p.kappa * p.kappa - gamma * gamma; }

TrimerParams at_gamma(TrimerParams p, double gamma) {
  p.gamma = gamma;
  return apply_reality_conditions(p);
}

}  // namespace

std::vector<SweepRow> gamma_sweep(const TrimerParams& base, double gamma_min, double gamma_max, std::size_t steps,
                                  unsigned threads) {
  base.validate();
  if (steps < 2) throw InputError("gamma_sweep: steps must be >= 2");
  if (!std::isfinite(gamma_min) || !std::isfinite(gamma_max) || !(gamma_max > gamma_min)) {
    throw InputError("gamma_sweep: requires finite gamma_max > gamma_min");
  }
  const auto gamma_at = [&](std::size_t k) {
    if (k + 1 == steps) return gamma_max;
    return gamma_min + (gamma_max - gamma_min) * static_cast<double>(k) / static_cast<double>(steps - 1);
  };

  std::vector<SweepRow> rows(steps);
  parallel_for(steps, threads, [&](std::size_t k) {
    const TrimerParams p = at_gamma(base, gamma_at(k));
    const SectorDecomposition s = decompose(p);
    rows[k] = SweepRow{p.gamma, s.dark_eigenvalue, s.lambda_plus, s.lambda_minus, classify_phase(p).regime};
  });

  for (std::size_t k = 1; k < steps; ++k) {
    SweepRow& r = rows[k];
    const SweepRow& prev = rows[k - 1];
    const double keep = std::abs(r.lambda_plus - prev.lambda_plus) + std::abs(r.lambda_minus - prev.lambda_minus);
    const double swap = std::abs(r.lambda_plus - prev.lambda_minus) + std::abs(r.lambda_minus - prev.lambda_plus);
    if (swap < keep) std::swap(r.lambda_plus, r.lambda_minus);
  }
  return rows;
}

EPLocation locate_ep(const TrimerParams& base, std::pair<double, double> bracket, double tol) {
  base.validate();
  double lo = bracket.first;
  double hi = bracket.second;
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo == hi) throw InputError("locate_ep: invalid bracket");
  double flo = ep_function(base, lo);
  const double fhi = ep_function(base, hi);
  if (flo * fhi > 0.0) {
    throw InputError("locate_ep: no exceptional point in bracket [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]: 2 kappa^2 - gamma^2 does not change sign");
  }

  double root = std::abs(flo) <= std::abs(fhi) ? lo : hi;
  if (std::abs(ep_function(base, root)) > tol) {
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      const double fm = ep_function(base, mid);
      root = mid;
      if (std::abs(fm) <= tol) break;
      if ((fm < 0.0) == (flo < 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
  }

  EPLocation out;
  out.gamma_c = root;
  out.residual = std::abs(ep_function(base, root));
  out.side_samples = {std::min(lo, hi), std::max(lo, hi)};

  const TrimerParams p = at_gamma(base, root);
  out.discriminant_modulus = std::abs(decompose(p).discriminant);
  out.eigenvector_overlap = closest_pair_overlap(eigen(build_trimer(p).matrix()));
  if (out.residual > tol) {
    throw NumericError("locate_ep: bisection stalled with residual " + std::to_string(out.residual));
  }
  if (out.eigenvector_overlap < 1.0 - kCoalescenceSlack) {
    throw NumericError("locate_ep: eigenvectors have not coalesced at gamma = " + std::to_string(root) +
                       " (overlap " + std::to_string(out.eigenvector_overlap) + ")");
  }
  return out;
}

}  // namespace lstrimer
