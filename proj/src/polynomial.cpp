#include "lstrimer/errors.hpp"
#include "lstrimer/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace lstrimer {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kAberthMaxIter = 1000;

// Roots of z^2 + b z + c avoiding cancellation in the smaller root.
std::vector<Complex> quadratic_roots(Complex b, Complex c) {
  Complex s = std::sqrt(b * b - 4.0 * c);
  if ((std::conj(b) * s).real() < 0.0) s = -s;
  const Complex q = -0.5 * (b + s);
  if (q == Complex{0.0}) return {0.0, 0.0};
  return {q, c / q};
}

// Roots of the monic cubic z^3 + a2 z^2 + a1 z + a0 via the depressed form.
std::vector<Complex> cardano_roots(Complex a2, Complex a1, Complex a0) {
  const Complex shift = a2 / 3.0;
  const Complex p = a1 - a2 * a2 / 3.0;
  const Complex q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
  Complex disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
  Complex u3 = -q / 2.0 + disc;
  if (std::abs(-q / 2.0 - disc) > std::abs(u3)) u3 = -q / 2.0 - disc;
  const Complex u = std::pow(u3, 1.0 / 3.0);
  const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  std::vector<Complex> out;
  for (int k = 0; k < 3; ++k) {
    const Complex uk = u * std::pow(omega, k);
    const Complex vk = (uk == Complex{0.0}) ? Complex{0.0} : -p / (3.0 * uk);
    out.push_back(uk + vk - shift);
  }
  return out;
}

void newton_polish(const Polynomial& p, const Polynomial& dp, Complex& z) {
  for (int it = 0; it < 8; ++it) {
    const Complex d = dp(z);
    if (d == Complex{0.0}) return;
    const Complex step = p(z) / d;
    if (!is_finite(step)) return;
    const Complex candidate = z - step;
    if (std::abs(p(candidate)) >= std::abs(p(z))) return;
    z = candidate;
  }
}

// Aberth-Ehrlich iteration in Gauss-Seidel form. Returns false if some root
// had not met its stopping rule after the iteration cap.
bool aberth(const Polynomial& p, std::vector<Complex>& z) {
  const std::size_t n = p.degree();
  const Polynomial dp = p.derivative();

  double radius = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    radius = std::max(radius, std::pow(std::abs(p.coeffs[k]), 1.0 / static_cast<double>(n - k)));
  }
  radius = std::max(radius, 1e-3);
  z.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    z[k] = std::polar(radius, angle);
  }

  std::vector<bool> frozen(n, false);
  for (int it = 0; it < kAberthMaxIter; ++it) {
    bool all_frozen = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (frozen[k]) continue;
      const Complex pv = p(z[k]);
      const double bound = 4.0 * static_cast<double>(n) * kEps * p.scale_at(z[k]);
      if (std::abs(pv) <= bound) {
        frozen[k] = true;
        continue;
      }
      all_frozen = false;
      const Complex newton = pv / dp(z[k]);
      Complex repulsion = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k && z[j] != z[k]) repulsion += 1.0 / (z[k] - z[j]);
      }
      const Complex w = newton / (1.0 - newton * repulsion);
      if (!is_finite(w)) continue;
      z[k] -= w;
      if (std::abs(w) <= kEps * std::abs(z[k])) frozen[k] = true;
    }
    if (all_frozen) return true;
  }
  return std::all_of(frozen.begin(), frozen.end(), [](bool f) { return f; });
}

// Replaces clusters of roots that are numerically one multiple root by that
// root. The candidate multiple root is the simple root of p^(m-1) near the
// centroid, which is well conditioned even when the cluster itself is not.
void collapse_multiple_roots(const Polynomial& p, std::vector<Complex>& z) {
  const std::size_t n = z.size();
  std::vector<int> label(n, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] >= 0) continue;
    label[i] = next;
    // single-linkage grow
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t j = 0; j < n; ++j) {
        if (label[j] >= 0) continue;
        for (std::size_t k = 0; k < n; ++k) {
          if (label[k] != next) continue;
          const double r = 1e-3 * std::max({1.0, std::abs(z[j]), std::abs(z[k])});
          if (std::abs(z[j] - z[k]) <= r) {
            label[j] = next;
            grew = true;
            break;
          }
        }
      }
    }
    ++next;
  }

  for (int c = 0; c < next; ++c) {
    std::vector<std::size_t> members;
    Complex centroid = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (label[i] == c) {
        members.push_back(i);
        centroid += z[i];
      }
    }
    const std::size_t m = members.size();
    if (m < 2) continue;
    centroid /= static_cast<double>(m);

    std::vector<Polynomial> derivs{p};
    for (std::size_t k = 1; k < m; ++k) derivs.push_back(derivs.back().derivative());
    Complex root = centroid;
    newton_polish(derivs[m - 1], derivs[m - 1].derivative(), root);

    const double slack = 100.0 * static_cast<double>(n * n) * kEps;
    bool multiple = true;
    for (std::size_t k = 0; k + 1 < m && multiple; ++k) {
      multiple = std::abs(derivs[k](root)) <= slack * derivs[k].scale_at(root);
    }
    if (!multiple) continue;
    for (auto i : members) z[i] = root;
  }
}

}  // namespace

std::size_t Polynomial::degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }

Complex Polynomial::operator()(Complex z) const {
  Complex acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double Polynomial::scale_at(Complex z) const {
  const double r = std::abs(z);
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

Polynomial Polynomial::derivative() const {
  Polynomial d;
  if (coeffs.size() <= 1) {
    d.coeffs = {0.0};
    return d;
  }
  for (std::size_t k = 1; k < coeffs.size(); ++k) d.coeffs.push_back(static_cast<double>(k) * coeffs[k]);
  return d;
}

Polynomial Polynomial::from_roots(std::span<const Complex> roots) {
  Polynomial p;
  p.coeffs = {1.0};
  for (const auto& r : roots) {
    std::vector<Complex> next(p.coeffs.size() + 1, 0.0);
    for (std::size_t k = 0; k < p.coeffs.size(); ++k) {
      next[k + 1] += p.coeffs[k];
      next[k] -= r * p.coeffs[k];
    }
    p.coeffs = std::move(next);
  }
  p.monic = true;
  return p;
}

Polynomial char_poly(const ComplexMatrix& m) {
  if (!m.all_finite()) throw InputError("char_poly: matrix has non-finite entries");
  const std::size_t n = m.size();
  Polynomial p;
  p.coeffs.assign(n + 1, 0.0);
  p.coeffs[n] = 1.0;
  p.monic = true;

  ComplexMatrix mk(n);  // M_0 = 0
  const ComplexMatrix id = ComplexMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk + p.coeffs[n - k + 1] * id;
    p.coeffs[n - k] = -(m * mk).trace() / static_cast<double>(k);
  }
  return p;
}

std::vector<Complex> poly_roots(const Polynomial& p, double tol) {
  const std::size_t n = p.degree();
  if (n < 1) throw InputError("poly_roots: degree must be >= 1");
  if (p.coeffs.back() != Complex{1.0}) throw InputError("poly_roots: polynomial must be monic");
  for (const auto& c : p.coeffs) {
    if (!is_finite(c)) throw InputError("poly_roots: non-finite coefficient");
  }

  std::vector<Complex> roots;
  if (n == 1) {
    roots = {-p.coeffs[0]};
  } else if (n == 2) {
    roots = quadratic_roots(p.coeffs[1], p.coeffs[0]);
  } else {
    const bool converged = aberth(p, roots);
    if (!converged && n == 3) {
      roots = cardano_roots(p.coeffs[2], p.coeffs[1], p.coeffs[0]);
      const Polynomial dp = p.derivative();
      for (auto& r : roots) newton_polish(p, dp, r);
    }
    collapse_multiple_roots(p, roots);
  }

  std::ostringstream bad;
  bool failed = false;
  for (const auto& r : roots) {
    const double residual = std::abs(p(r));
    if (!(residual <= tol * p.scale_at(r))) {
      failed = true;
      bad << " root " << r << " residual " << residual << ';';
    }
  }
  if (failed) throw NumericError("poly_roots: did not converge:" + bad.str());
  return roots;
}

}  // namespace lstrimer
