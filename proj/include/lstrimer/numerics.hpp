#pragma once

// Small dense complex linear algebra used by every other module: a square
// matrix type, characteristic polynomials, polynomial roots, an eigen
// decomposition that flags defective matrices, and a matrix exponential
// that stays exact on Jordan blocks.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace lstrimer {

using Complex = std::complex<double>;

inline constexpr double kDefaultTol = 1e-10;    // complex equality comparisons
inline constexpr double kRootTol = 1e-9;        // polynomial root residual
inline constexpr double kClusterRelTol = 1e-7;  // repeated-eigenvalue clustering
inline constexpr double kConditionCap = 1e12;   // eigenvector matrix condition cap

[[nodiscard]] bool is_finite(Complex z) noexcept;

/// Dense square complex matrix, row-major. Entries are always finite.
class ComplexMatrix {
 public:
  /// n x n zero matrix.
  explicit ComplexMatrix(std::size_t n);
  ComplexMatrix(std::size_t n, std::vector<Complex> row_major);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> diag);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  Complex operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  [[nodiscard]] std::span<const Complex> data() const noexcept { return data_; }

  [[nodiscard]] Complex trace() const;
  [[nodiscard]] double norm1() const;      // max column sum
  [[nodiscard]] double norm_frobenius() const;
  [[nodiscard]] double max_abs() const;
  [[nodiscard]] bool all_finite() const;

  /// Matrix-vector product.
  [[nodiscard]] std::vector<Complex> apply(std::span<const Complex> v) const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex s);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
  friend ComplexMatrix operator*(ComplexMatrix m, Complex s) { return m *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<Complex> data_;
};

/// Solves A X = B by LU with partial pivoting. Throws NumericError if A is singular.
[[nodiscard]] ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b);

/// Polynomial with coefficients ordered from the constant term upwards.
struct Polynomial {
  std::vector<Complex> coeffs;
  bool monic = false;

  [[nodiscard]] std::size_t degree() const;
  [[nodiscard]] Complex operator()(Complex z) const;
  /// Sum of |a_k| |z|^k: the magnitude scale of p near z, used for residual tests.
  [[nodiscard]] double scale_at(Complex z) const;
  [[nodiscard]] Polynomial derivative() const;

  /// Monic polynomial with the given roots (with multiplicity).
  static Polynomial from_roots(std::span<const Complex> roots);
};

/// Monic det(lambda I - M) via the Faddeev-LeVerrier recurrence.
[[nodiscard]] Polynomial char_poly(const ComplexMatrix& m);

/// All roots of a monic polynomial, with multiplicity.
///
/// Degree <= 2 uses closed forms. Higher degrees use Aberth-Ehrlich
/// simultaneous iteration; clusters that are numerically a single multiple
/// root are collapsed onto it, and a cubic falls back to Cardano's formula if
/// the iteration stalls. Every returned root r satisfies
/// |p(r)| <= tol * p.scale_at(r), otherwise NumericError is thrown.
[[nodiscard]] std::vector<Complex> poly_roots(const Polynomial& p, double tol = kRootTol);

struct SpectralDecomposition {
  std::vector<Complex> eigenvalues;
  ComplexMatrix right_eigenvectors{1};  // column k pairs with eigenvalues[k], unit 2-norm
  bool defective = false;
  double eigenvector_condition = 1.0;   // +inf when the eigenvector matrix is singular
};

struct EigenOptions {
  double tol = kDefaultTol;  // overlap threshold: vectors with overlap > 1 - tol coincide
  double root_tol = kRootTol;
  double cluster_rel_tol = kClusterRelTol;
  double condition_cap = kConditionCap;
};

/// Eigenvalues from poly_roots(char_poly(m)); eigenvectors from the null
/// space of (m - lambda I). Repeated eigenvalues get as many independent
/// vectors as the geometric multiplicity allows; missing ones are filled with
/// copies, which marks the decomposition defective.
[[nodiscard]] SpectralDecomposition eigen(const ComplexMatrix& m, const EigenOptions& opts = {});

/// |<u|v>| / (|u||v|) for the eigenvectors of the two closest eigenvalues.
/// Approaches 1 as the pair coalesces at an exceptional point. 0 when n = 1.
[[nodiscard]] double closest_pair_overlap(const SpectralDecomposition& d);

/// e^M by scaling and squaring with a Pade kernel of degree 3..13.
/// Arithmetic runs in long double and the result is rounded once.
/// Throws NumericError when the result leaves the double range.
[[nodiscard]] ComplexMatrix expm(const ComplexMatrix& m);

/// e^{cM} v without rounding the exponential to double first. c M is formed
/// in extended precision too, so invariant subspaces of M stay invariant to
/// long double roundoff rather than double roundoff.
[[nodiscard]] std::vector<Complex> expm_apply(const ComplexMatrix& m, Complex c, std::span<const Complex> v);

}  // namespace lstrimer
