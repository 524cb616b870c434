#pragma once

// General tight-binding networks with complex onsite energies and directed
// real couplings, plus the vertex-deletion machinery used to detect
// cospectral site pairs.

#include "lstrimer/numerics.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace lstrimer {

struct SiteSpec {
  double omega = 0.0;  // onsite frequency
  double gamma = 0.0;  // gain (> 0) or loss (< 0) rate

  friend bool operator==(const SiteSpec&, const SiteSpec&) = default;
};

struct CouplingSpec {
  std::size_t from = 0;
  std::size_t to = 0;
  double g = 0.0;  // matrix entry (from, to); g_ij need not equal g_ji
};

class NetworkHamiltonian {
 public:
  /// couplings is row-major n x n with a zero diagonal.
  NetworkHamiltonian(std::vector<SiteSpec> sites, std::vector<double> couplings);

  [[nodiscard]] std::size_t site_count() const noexcept { return sites_.size(); }
  [[nodiscard]] const std::vector<SiteSpec>& sites() const noexcept { return sites_; }
  [[nodiscard]] double coupling(std::size_t i, std::size_t j) const { return couplings_[i * site_count() + j]; }
  [[nodiscard]] Complex onsite(std::size_t j) const { return {sites_[j].omega, sites_[j].gamma}; }

  /// Dense form: (j,j) = omega_j + i gamma_j, (i,j) = g_ij.
  [[nodiscard]] ComplexMatrix matrix() const;

  /// Nonzero couplings in row-major order.
  [[nodiscard]] std::vector<CouplingSpec> coupling_list() const;

  friend bool operator==(const NetworkHamiltonian&, const NetworkHamiltonian&) = default;

 private:
  std::vector<SiteSpec> sites_;
  std::vector<double> couplings_;
};

/// Throws InputError on out-of-range indices, self-couplings, duplicate
/// ordered pairs or non-finite values.
[[nodiscard]] NetworkHamiltonian build_hamiltonian(std::span<const SiteSpec> sites,
                                                   std::span<const CouplingSpec> couplings);

/// Principal submatrix with site i removed; survivors keep their order.
[[nodiscard]] NetworkHamiltonian delete_vertex(const NetworkHamiltonian& h, std::size_t i);

struct CospectralReport {
  std::pair<std::size_t, std::size_t> pair;
  Polynomial poly_i;
  Polynomial poly_j;
  double max_coeff_deviation = 0.0;
  bool cospectral = false;
};

/// Compares the characteristic polynomials of H\i and H\j coefficient-wise.
/// Verdict: max deviation <= tol * max(1, largest coefficient magnitude).
[[nodiscard]] CospectralReport is_cospectral(const NetworkHamiltonian& h, std::size_t i,
                                             std::size_t j, double tol = kDefaultTol);

struct TrimerConditions {
  bool equal_onsite = false;   // omega_1 = omega_2 and gamma_1 = gamma_2
  bool product_match = false;  // g_13 g_31 = g_23 g_32
  bool latent_symmetric = false;
};

/// Closed-form cospectrality test for sites 0 and 1 of a three-site network.
/// Uses the same tolerance scaling as is_cospectral so the two verdicts agree.
[[nodiscard]] TrimerConditions check_trimer_conditions(const NetworkHamiltonian& h,
                                                       double tol = kDefaultTol);

struct SingletReport {
  std::vector<std::size_t> singlets;
  std::vector<std::size_t> disconnected;  // unreachable from both sites of the pair
};

/// Sites k outside the pair with equal BFS distance to both pair members on
/// the undirected support graph (edge iff g_ij != 0 or g_ji != 0).
[[nodiscard]] SingletReport singlet_sites(const NetworkHamiltonian& h,
                                          std::pair<std::size_t, std::size_t> pair);

}  // namespace lstrimer
