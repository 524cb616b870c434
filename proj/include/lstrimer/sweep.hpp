#pragma once

#include "lstrimer/trimer.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace lstrimer {

struct SweepRow {
  double gamma = 0.0;
  Complex lambda0;
  Complex lambda_plus;
  Complex lambda_minus;
  Regime regime = Regime::NonPt;
};

/// Spectrum of the trimer over gamma in [gamma_min, gamma_max], with the
/// reality conditions re-applied at each point. lambda_plus / lambda_minus are
/// relabelled row to row by nearest-neighbour matching so the curves stay
/// continuous. Rows are in ascending gamma for any thread count.
[[nodiscard]] std::vector<SweepRow> gamma_sweep(const TrimerParams& base, double gamma_min, double gamma_max,
                                                std::size_t steps, unsigned threads = 1);

struct EPLocation {
  double gamma_c = 0.0;
  double residual = 0.0;             // |2 kappa^2 - gamma_c^2|
  double discriminant_modulus = 0.0;  // |Delta| at gamma_c
  std::pair<double, double> side_samples;  // last bracket holding gamma_c when bisection stopped
  double eigenvector_overlap = 0.0;  // of the coalescing pair, from eigen()
};

/// Bisection on 2 kappa^2 - gamma^2 inside the bracket until its modulus is
/// <= tol, then checks that the two bright eigenvectors have coalesced
/// (overlap >= 1 - 1e-6). Throws InputError if the bracket holds no sign
/// change, NumericError if the eigenvectors have not coalesced.
[[nodiscard]] EPLocation locate_ep(const TrimerParams& base, std::pair<double, double> bracket,
                                   double tol = kDefaultTol);

}  // namespace lstrimer
