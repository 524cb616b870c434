#include "lstrimer/network.hpp"

#include "lstrimer/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

namespace lstrimer {

namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

std::vector<std::size_t> bfs_distances(const NetworkHamiltonian& h, std::size_t source) {
  const std::size_t n = h.site_count();
  std::vector<std::size_t> dist(n, kUnreached);
  std::queue<std::size_t> frontier;
  dist[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop();
    for (std::size_t v = 0; v < n; ++v) {
      if (v == u || dist[v] != kUnreached) continue;
      if (h.coupling(u, v) != 0.0 || h.coupling(v, u) != 0.0) {
        dist[v] = dist[u] + 1;
        frontier.push(v);
      }
    }
  }
  return dist;
}

void check_index(const NetworkHamiltonian& h, std::size_t i, const char* what) {
  if (i >= h.site_count()) {
    throw InputError(std::string(what) + ": site index " + std::to_string(i) + " out of range (n = " +
                     std::to_string(h.site_count()) + ")");
  }
}

}  // namespace

NetworkHamiltonian::NetworkHamiltonian(std::vector<SiteSpec> sites, std::vector<double> couplings)
    : sites_(std::move(sites)), couplings_(std::move(couplings)) {
  const std::size_t n = sites_.size();
  if (n == 0) throw InputError("NetworkHamiltonian: at least one site required");
  if (couplings_.size() != n * n) throw InputError("NetworkHamiltonian: coupling array must be n x n");
  for (const auto& s : sites_) {
    if (!std::isfinite(s.omega) || !std::isfinite(s.gamma)) {
      throw InputError("NetworkHamiltonian: non-finite onsite energy");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (couplings_[i * n + i] != 0.0) throw InputError("NetworkHamiltonian: diagonal couplings must be zero");
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(couplings_[i * n + j])) throw InputError("NetworkHamiltonian: non-finite coupling");
    }
  }
}

ComplexMatrix NetworkHamiltonian::matrix() const {
  const std::size_t n = site_count();
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = (i == j) ? onsite(i) : Complex{coupling(i, j)};
  }
  return m;
}

std::vector<CouplingSpec> NetworkHamiltonian::coupling_list() const {
  std::vector<CouplingSpec> out;
  const std::size_t n = site_count();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && coupling(i, j) != 0.0) out.push_back({i, j, coupling(i, j)});
    }
  }
  return out;
}

NetworkHamiltonian build_hamiltonian(std::span<const SiteSpec> sites, std::span<const CouplingSpec> couplings) {
  const std::size_t n = sites.size();
  if (n == 0) throw InputError("build_hamiltonian: at least one site required");
  std::vector<double> g(n * n, 0.0);
  std::vector<bool> seen(n * n, false);
  for (const auto& c : couplings) {
    if (c.from >= n || c.to >= n) {
      throw InputError("build_hamiltonian: coupling " + std::to_string(c.from) + "->" + std::to_string(c.to) +
                       " out of range");
    }
    if (c.from == c.to) throw InputError("build_hamiltonian: self-coupling at site " + std::to_string(c.from));
    const std::size_t k = c.from * n + c.to;
    if (seen[k]) {
      throw InputError("build_hamiltonian: duplicate coupling " + std::to_string(c.from) + "->" +
                       std::to_string(c.to));
    }
    seen[k] = true;
    g[k] = c.g;
  }
  return NetworkHamiltonian({sites.begin(), sites.end()}, std::move(g));
}

NetworkHamiltonian delete_vertex(const NetworkHamiltonian& h, std::size_t i) {
  const std::size_t n = h.site_count();
  if (n < 2) throw InputError("delete_vertex: network has a single site");
  check_index(h, i, "delete_vertex");
  std::vector<SiteSpec> sites;
  std::vector<double> g;
  for (std::size_t a = 0; a < n; ++a) {
    if (a == i) continue;
    sites.push_back(h.sites()[a]);
    for (std::size_t b = 0; b < n; ++b) {
      if (b != i) g.push_back(h.coupling(a, b));
    }
  }
  return NetworkHamiltonian(std::move(sites), std::move(g));
}

CospectralReport is_cospectral(const NetworkHamiltonian& h, std::size_t i, std::size_t j, double tol) {
  check_index(h, i, "is_cospectral");
  check_index(h, j, "is_cospectral");
  if (i == j) throw InputError("is_cospectral: pair must consist of two distinct sites");

  CospectralReport r;
  r.pair = {i, j};
  r.poly_i = char_poly(delete_vertex(h, i).matrix());
  r.poly_j = char_poly(delete_vertex(h, j).matrix());
  double scale = 1.0;
  for (std::size_t k = 0; k < r.poly_i.coeffs.size(); ++k) {
    r.max_coeff_deviation = std::max(r.max_coeff_deviation, std::abs(r.poly_i.coeffs[k] - r.poly_j.coeffs[k]));
    scale = std::max({scale, std::abs(r.poly_i.coeffs[k]), std::abs(r.poly_j.coeffs[k])});
  }
  r.cospectral = r.max_coeff_deviation <= tol * scale;
  return r;
}

TrimerConditions check_trimer_conditions(const NetworkHamiltonian& h, double tol) {
  if (h.site_count() != 3) throw InputError("check_trimer_conditions: network must have exactly 3 sites");
  const auto& s = h.sites();
  const double p0 = h.coupling(0, 2) * h.coupling(2, 0);
  const double p1 = h.coupling(1, 2) * h.coupling(2, 1);

  // Coefficient magnitudes of det(lambda - H\k) for k = 0, 1, expanded by hand.
  const Complex o0 = h.onsite(0);
  const Complex o1 = h.onsite(1);
  const Complex o2 = h.onsite(2);
  const double scale = std::max({1.0, std::abs(o1 + o2), std::abs(o0 + o2), std::abs(o1 * o2 - p1),
                                 std::abs(o0 * o2 - p0)});
  const double thr = tol * scale;

  TrimerConditions c;
  c.equal_onsite = std::abs(s[0].omega - s[1].omega) <= thr && std::abs(s[0].gamma - s[1].gamma) <= thr;
  c.product_match = std::abs(p0 - p1) <= thr;
  c.latent_symmetric = c.equal_onsite && c.product_match;
  return c;
}

SingletReport singlet_sites(const NetworkHamiltonian& h, std::pair<std::size_t, std::size_t> pair) {
  check_index(h, pair.first, "singlet_sites");
  check_index(h, pair.second, "singlet_sites");
  if (pair.first == pair.second) throw InputError("singlet_sites: pair must consist of two distinct sites");
  const auto di = bfs_distances(h, pair.first);
  const auto dj = bfs_distances(h, pair.second);
  SingletReport r;
  for (std::size_t k = 0; k < h.site_count(); ++k) {
    if (k == pair.first || k == pair.second) continue;
    if (di[k] == kUnreached && dj[k] == kUnreached) {
      r.disconnected.push_back(k);
    } else if (di[k] == dj[k]) {
      r.singlets.push_back(k);
    }
  }
  return r;
}

}  // namespace lstrimer
