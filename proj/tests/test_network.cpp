#include "lstrimer/errors.hpp"
#include "lstrimer/network.hpp"
#include "lstrimer/trimer.hpp"
#include "test_support.hpp"

#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>

using namespace lstrimer;
using lstrimer::testing::Rng;

namespace {

// sites 0, 1 share (0, 0.5); site 2 is (1, -0.5); mu = 1, kappa = 1/sqrt(2)
NetworkHamiltonian engineered_trimer(double chi = 0.0) {
  TrimerParams p;
  p.gamma = 0.5;
  p.kappa = 1.0 / std::numbers::sqrt2;
  p.chi = chi;
  p.omega3 = 1.0;
  p.gamma3 = -0.5;
  return build_trimer(p);
}

// Random network with sites 0 and 1 swapped by a permutation symmetry:
// H(P i, P j) = H(i, j) with P = (0 1).
NetworkHamiltonian swap_symmetric(Rng& rng, std::size_t n) {
  auto perm = [](std::size_t i) -> std::size_t { return i == 0 ? 1 : i == 1 ? 0 : i; };
  std::vector<SiteSpec> sites(n);
  const SiteSpec shared{rng.uniform(-2, 2), rng.uniform(-2, 2)};
  sites[0] = sites[1] = shared;
  for (std::size_t k = 2; k < n; ++k) sites[k] = {rng.uniform(-2, 2), rng.uniform(-2, 2)};
  std::vector<double> g(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || g[i * n + j] != 0.0) continue;
      const double v = rng.uniform(-2, 2);
      g[i * n + j] = v;
      g[perm(i) * n + perm(j)] = v;
    }
  }
  return NetworkHamiltonian(sites, g);
}

}  // namespace

TEST_CASE("build_hamiltonian layout") {
  const std::vector<SiteSpec> sites{{1.0, 0.5}, {-1.0, -0.25}};
  const std::vector<CouplingSpec> couplings{{0, 1, 2.0}, {1, 0, 3.0}};
  const auto h = build_hamiltonian(sites, couplings);
  const ComplexMatrix m = h.matrix();
  CHECK(m(0, 0) == Complex{1.0, 0.5});
  CHECK(m(1, 1) == Complex{-1.0, -0.25});
  CHECK(m(0, 1) == Complex{2.0});
  CHECK(m(1, 0) == Complex{3.0});
  REQUIRE(h.coupling_list().size() == 2);
  CHECK(h.coupling_list()[1].from == 1);
  CHECK(h.coupling_list()[1].g == 3.0);
}

TEST_CASE("build_hamiltonian input errors") {
  const std::vector<SiteSpec> sites{{0.0, 0.0}, {0.0, 0.0}};
  const std::vector<CouplingSpec> out_of_range{{0, 2, 1.0}};
  const std::vector<CouplingSpec> self{{1, 1, 1.0}};
  const std::vector<CouplingSpec> dup{{0, 1, 1.0}, {0, 1, 2.0}};
  const std::vector<CouplingSpec> nan{{0, 1, std::numeric_limits<double>::quiet_NaN()}};
  CHECK_THROWS_AS((void)build_hamiltonian(sites, out_of_range), InputError);
  CHECK_THROWS_AS((void)build_hamiltonian(sites, self), InputError);
  CHECK_THROWS_AS((void)build_hamiltonian(sites, dup), InputError);
  CHECK_THROWS_AS((void)build_hamiltonian(sites, nan), InputError);
  const std::vector<SiteSpec> bad_site{{0.0, std::numeric_limits<double>::infinity()}};
  CHECK_THROWS_AS((void)build_hamiltonian(bad_site, {}), InputError);
  CHECK_THROWS_AS((void)build_hamiltonian({}, {}), InputError);
}

TEST_CASE("delete_vertex keeps survivor order") {
  const auto h = engineered_trimer(0.3);
  const auto sub = delete_vertex(h, 1);
  REQUIRE(sub.site_count() == 2);
  CHECK(sub.onsite(0) == h.onsite(0));
  CHECK(sub.onsite(1) == h.onsite(2));
  CHECK(sub.coupling(0, 1) == h.coupling(0, 2));
  CHECK(sub.coupling(1, 0) == h.coupling(2, 0));
  CHECK_THROWS_AS((void)delete_vertex(h, 3), InputError);
  CHECK_THROWS_AS((void)delete_vertex(delete_vertex(sub, 0), 0), InputError);
}

TEST_CASE("engineered trimer: sites 0 and 1 are cospectral") {
  const auto r = is_cospectral(engineered_trimer(), 0, 1);
  CHECK(r.cospectral);
  CHECK(r.max_coeff_deviation < 1e-15);
  // det(lambda - H\0) expanded by hand: lambda^2 - lambda + (-0.25 + 0.5i)
  REQUIRE(r.poly_i.coeffs.size() == 3);
  CHECK(std::abs(r.poly_i.coeffs[0] - Complex{-0.25, 0.5}) < 1e-15);
  CHECK(std::abs(r.poly_i.coeffs[1] - Complex{-1.0, 0.0}) < 1e-15);

  const auto s = singlet_sites(engineered_trimer(), {0, 1});
  CHECK(s.singlets == std::vector<std::size_t>{2});
  CHECK(s.disconnected.empty());

  const auto c = check_trimer_conditions(engineered_trimer());
  CHECK(c.equal_onsite);
  CHECK(c.product_match);
  CHECK(c.latent_symmetric);
}

TEST_CASE("cospectrality survives the gauge deformation") {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const double chi = rng.uniform(-1.0, 1.0);
    CHECK(is_cospectral(engineered_trimer(chi), 0, 1).cospectral);
  }
}

TEST_CASE("breaking the product condition breaks cospectrality") {
  const auto h = engineered_trimer();
  std::vector<double> g;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) g.push_back(h.coupling(i, j));
  g[0 * 3 + 2] *= 1.1;
  const NetworkHamiltonian broken(h.sites(), g);
  CHECK_FALSE(is_cospectral(broken, 0, 1).cospectral);
  const auto c = check_trimer_conditions(broken);
  CHECK(c.equal_onsite);
  CHECK_FALSE(c.product_match);
  CHECK_FALSE(c.latent_symmetric);
}

TEST_CASE("is_cospectral index errors") {
  CHECK_THROWS_AS((void)is_cospectral(engineered_trimer(), 0, 0), InputError);
  CHECK_THROWS_AS((void)is_cospectral(engineered_trimer(), 0, 5), InputError);
  const std::vector<SiteSpec> four(4);
  CHECK_THROWS_AS((void)check_trimer_conditions(NetworkHamiltonian(four, std::vector<double>(16, 0.0))), InputError);
}

TEST_CASE("property: swap-symmetric networks are cospectral") {
  Rng rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const auto h = swap_symmetric(rng, 3 + rng.index(4));
    CHECK(is_cospectral(h, 0, 1).cospectral);
  }
}

TEST_CASE("property: generic networks are not cospectral") {
  Rng rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 3 + rng.index(3);
    std::vector<SiteSpec> sites(n);
    for (auto& s : sites) s = {rng.uniform(-2, 2), rng.uniform(-2, 2)};
    std::vector<double> g(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) g[i * n + j] = rng.uniform(-2, 2);
    CHECK_FALSE(is_cospectral(NetworkHamiltonian(sites, g), 0, 1).cospectral);
  }
}

TEST_CASE("property: closed-form trimer test agrees with the polynomial test") {
  Rng rng(47);
  for (int trial = 0; trial < 500; ++trial) {
    // half the draws satisfy the latent-symmetry conditions by construction
    const bool planted = rng.coin();
    std::vector<SiteSpec> sites(3);
    for (auto& s : sites) s = {rng.uniform(-2, 2), rng.uniform(-2, 2)};
    std::vector<double> g(9, 0.0);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        if (i != j) g[i * 3 + j] = rng.uniform(-2, 2);
    if (planted) {
      sites[1] = sites[0];
      g[2 * 3 + 1] = g[0 * 3 + 2] * g[2 * 3 + 0] / g[1 * 3 + 2];
    }
    const NetworkHamiltonian h(sites, g);
    const bool closed = check_trimer_conditions(h).latent_symmetric;
    CHECK(closed == is_cospectral(h, 0, 1).cospectral);
    CHECK(closed == planted);
  }
}

TEST_CASE("singlets on a larger support graph") {
  // 0 - 2 - 1, 3 hangs off 2, 4 hangs off 0, 5 is isolated
  const std::vector<SiteSpec> sites(6);
  const std::vector<CouplingSpec> c{{0, 2, 1.0}, {2, 1, 1.0}, {3, 2, 0.5}, {4, 0, 2.0}};
  const auto s = singlet_sites(build_hamiltonian(sites, c), {0, 1});
  CHECK(s.singlets == std::vector<std::size_t>{2, 3});
  CHECK(s.disconnected == std::vector<std::size_t>{5});
}

TEST_CASE("no couplings gives the diagonal of onsite energies") {
  const std::vector<SiteSpec> sites{{1.0, 0.1}, {2.0, -0.2}, {3.0, 0.0}};
  const ComplexMatrix m = build_hamiltonian(sites, {}).matrix();
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(m(i, j) == (i == j ? Complex{sites[i].omega, sites[i].gamma} : Complex{0.0}));
    }
  }
  const auto sub = delete_vertex(build_hamiltonian(sites, {}), 0);
  CHECK(sub.onsite(0) == Complex{2.0, -0.2});
  CHECK(sub.onsite(1) == Complex{3.0, 0.0});
  CHECK(sub.coupling(0, 1) == 0.0);
}

TEST_CASE("default parameter set produces the expected entries") {
  const ComplexMatrix m = engineered_trimer().matrix();
  const double k = 1.0 / std::numbers::sqrt2;
  CHECK(m(0, 1) == Complex{1.0});
  CHECK(m(1, 0) == Complex{1.0});
  for (auto [i, j] : {std::pair{0, 2}, {2, 0}, {1, 2}, {2, 1}}) CHECK(std::abs(m(i, j) - k) < 1e-16);
  CHECK(m(0, 0) == Complex{0.0, 0.5});
  CHECK(m(2, 2) == Complex{1.0, -0.5});

  // removing site 0 leaves [[Omega, kappa], [kappa, Omega3]]; removing site 1 the same
  const auto d0 = delete_vertex(engineered_trimer(), 0).matrix();
  const auto d1 = delete_vertex(engineered_trimer(), 1).matrix();
  CHECK(d0 == d1);
  CHECK(d0(0, 0) == Complex{0.0, 0.5});
  CHECK(d0(1, 1) == Complex{1.0, -0.5});
  CHECK(std::abs(d0(0, 1) - k) < 1e-16);
}

TEST_CASE("asymmetric couplings kept verbatim") {
  const std::vector<SiteSpec> sites(2);
  const std::vector<CouplingSpec> c{{0, 1, 2.0}, {1, 0, 0.5}};
  const ComplexMatrix m = build_hamiltonian(sites, c).matrix();
  CHECK(m(0, 1) == Complex{2.0});
  CHECK(m(1, 0) == Complex{0.5});
}

TEST_CASE("asymmetric trimer with matching products") {
  // g13 = 2, g31 = 0.5, g23 = g32 = 1, equal onsite energies
  const std::vector<SiteSpec> sites{{0.3, 0.2}, {0.3, 0.2}, {-1.0, -0.4}};
  auto make = [&](double g32) {
    const std::vector<CouplingSpec> c{{0, 1, 0.7}, {1, 0, 0.7}, {0, 2, 2.0}, {2, 0, 0.5}, {1, 2, 1.0}, {2, 1, g32}};
    return build_hamiltonian(sites, c);
  };
  const auto good = is_cospectral(make(1.0), 0, 1);
  CHECK(good.cospectral);
  CHECK(check_trimer_conditions(make(1.0)).latent_symmetric);

  // hand expansion: the two 2x2 polynomials differ only in the constant
  // term, by g13 g31 - g23 g32 = 1 - 1.1
  const auto bad = is_cospectral(make(1.1), 0, 1);
  CHECK_FALSE(bad.cospectral);
  CHECK(bad.max_coeff_deviation == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(std::abs(bad.poly_i.coeffs[1] - bad.poly_j.coeffs[1]) < 1e-15);
}

TEST_CASE("unequal gain breaks cospectrality even with matching couplings") {
  const std::vector<SiteSpec> sites{{0.0, 0.5}, {0.0, 0.4}, {1.0, -0.5}};
  const std::vector<CouplingSpec> c{{0, 2, 1.0}, {2, 0, 1.0}, {1, 2, 1.0}, {2, 1, 1.0}};
  const auto h = build_hamiltonian(sites, c);
  CHECK_FALSE(is_cospectral(h, 0, 1).cospectral);
  const auto v = check_trimer_conditions(h);
  CHECK_FALSE(v.equal_onsite);
  CHECK(v.product_match);
  CHECK_FALSE(v.latent_symmetric);
}

TEST_CASE("products off by 1e-3 are not within tolerance") {
  const std::vector<SiteSpec> sites{{0.0, 0.5}, {0.0, 0.5}, {1.0, -0.5}};
  const std::vector<CouplingSpec> c{{0, 2, 1.0}, {2, 0, 1.0}, {1, 2, 1.0}, {2, 1, 1.001}};
  const auto h = build_hamiltonian(sites, c);
  CHECK_FALSE(check_trimer_conditions(h, 1e-10).product_match);
  CHECK_FALSE(is_cospectral(h, 0, 1, 1e-10).cospectral);
}

TEST_CASE("singlets: chain and star") {
  const std::vector<SiteSpec> sites(4);
  // chain 2 - 0, 0 - 1, 1 - 3
  const std::vector<CouplingSpec> chain{{2, 0, 1.0}, {0, 2, 1.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 3, 1.0}, {3, 1, 1.0}};
  CHECK(singlet_sites(build_hamiltonian(sites, chain), {0, 1}).singlets.empty());
  // star centred on 2, linked to 0, 1 and 3
  const std::vector<CouplingSpec> star{{2, 0, 1.0}, {2, 1, 1.0}, {2, 3, 1.0}};
  CHECK(singlet_sites(build_hamiltonian(sites, star), {0, 1}).singlets == std::vector<std::size_t>{2, 3});
}

TEST_CASE("property: delete_vertex commutes with relabelling") {
  Rng rng(53);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.index(5);
    std::vector<SiteSpec> sites(n);
    for (auto& s : sites) s = {rng.uniform(-2, 2), rng.uniform(-2, 2)};
    std::vector<double> g(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) g[i * n + j] = rng.uniform(-2, 2);
    const NetworkHamiltonian h(sites, g);
    const std::size_t del = rng.index(n);
    const ComplexMatrix full = h.matrix();
    const ComplexMatrix sub = delete_vertex(h, del).matrix();
    auto orig = [del](std::size_t a) { return a < del ? a : a + 1; };
    for (std::size_t a = 0; a + 1 < n; ++a)
      for (std::size_t b = 0; b + 1 < n; ++b) CHECK(sub(a, b) == full(orig(a), orig(b)));
  }
}

TEST_CASE("property: characteristic polynomial is gauge invariant") {
  Rng rng(59);
  for (int trial = 0; trial < 300; ++trial) {
    const TrimerParams p = rng.trimer();
    const auto h = build_trimer(p);
    const Polynomial a = char_poly(h.matrix());
    const Polynomial b = char_poly(gauge_transform(h, rng.uniform(-1.0, 1.0)).matrix());
    double scale = 1.0;
    for (const auto& c : a.coeffs) scale = std::max(scale, std::abs(c));
    for (std::size_t k = 0; k < a.coeffs.size(); ++k) CHECK(std::abs(a.coeffs[k] - b.coeffs[k]) <= 1e-12 * scale);
  }
}
