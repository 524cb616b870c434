#include "lstrimer/errors.hpp"
#include "lstrimer/numerics.hpp"

#include <array>
#include <cmath>
#include <utility>

namespace lstrimer {

namespace {

using Real = long double;
using Scalar = std::complex<Real>;

// 1-norm bounds below which the [m/m] Pade approximant is accurate to
// double precision without scaling (Higham 2005).
constexpr std::array<double, 5> kTheta = {1.495585217958292e-2, 2.539398330063230e-1,
                                          9.504178996162932e-1, 2.097847961257068e0,
                                          5.371920351148152e0};

constexpr std::array<double, 4> kB3 = {120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kB5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> kB7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                       25200.0,    1512.0,    56.0,      1.0};
constexpr std::array<double, 10> kB9 = {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                                        30270240.0,    2162160.0,    110880.0,     3960.0,
                                        90.0,          1.0};
constexpr std::array<double, 14> kB13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

// Row-major extended-precision work matrix.
struct Work {
  std::size_t n = 0;
  std::vector<Scalar> a;

  explicit Work(std::size_t size) : n(size), a(size * size) {}
  static Work identity(std::size_t size) {
    Work w(size);
    for (std::size_t i = 0; i < size; ++i) w.a[i * size + i] = 1.0L;
    return w;
  }
  Scalar& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  Scalar operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

  Real norm1() const {
    Real best = 0.0L;
    for (std::size_t j = 0; j < n; ++j) {
      Real col = 0.0L;
      for (std::size_t i = 0; i < n; ++i) col += std::abs(a[i * n + j]);
      best = std::max(best, col);
    }
    return best;
  }
};

Work operator*(const Work& x, const Work& y) {
  Work z(x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t k = 0; k < x.n; ++k) {
      const Scalar xik = x(i, k);
      for (std::size_t j = 0; j < x.n; ++j) z(i, j) += xik * y(k, j);
    }
  return z;
}

Work operator+(Work x, const Work& y) {
  for (std::size_t k = 0; k < x.a.size(); ++k) x.a[k] += y.a[k];
  return x;
}

Work operator-(Work x, const Work& y) {
  for (std::size_t k = 0; k < x.a.size(); ++k) x.a[k] -= y.a[k];
  return x;
}

Work operator*(Real s, Work x) {
  for (auto& v : x.a) v *= s;
  return x;
}

// Solves A X = B by LU with partial pivoting.
Work solve(Work a, Work b) {
  const std::size_t n = a.n;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    }
    if (a(piv, k) == Scalar{}) throw NumericError("expm: singular Pade denominator");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(piv, j));
        std::swap(b(k, j), b(piv, j));
      }
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const Scalar f = a(i, k) / a(k, k);
      if (f == Scalar{}) continue;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      for (std::size_t j = 0; j < n; ++j) b(i, j) -= f * b(k, j);
    }
  }
  for (std::size_t jj = 0; jj < n; ++jj) {
    for (std::size_t ii = n; ii-- > 0;) {
      Scalar acc = b(ii, jj);
      for (std::size_t k = ii + 1; k < n; ++k) acc -= a(ii, k) * b(k, jj);
      b(ii, jj) = acc / a(ii, ii);
    }
  }
  return b;
}

struct PadeTerms {
  Work u;
  Work v;
};

// Low-degree approximants: U = A * sum_odd b_k A^(k-1), V = sum_even b_k A^k.
template <std::size_t N>
PadeTerms pade_low(const Work& a, const std::array<double, N>& b) {
  const Work id = Work::identity(a.n);
  const Work a2 = a * a;
  Work power = id;
  Work odd = Real(b[1]) * id;
  Work even = Real(b[0]) * id;
  for (std::size_t k = 2; k < N; k += 2) {
    power = power * a2;
    even = even + Real(b[k]) * power;
    if (k + 1 < N) odd = odd + Real(b[k + 1]) * power;
  }
  return {a * odd, std::move(even)};
}

PadeTerms pade13(const Work& a) {
  const auto b = [](std::size_t k) { return Real(kB13[k]); };
  const Work id = Work::identity(a.n);
  const Work a2 = a * a;
  const Work a4 = a2 * a2;
  const Work a6 = a4 * a2;
  const Work u_inner = a6 * (b(13) * a6 + b(11) * a4 + b(9) * a2) + b(7) * a6 + b(5) * a4 + b(3) * a2 + b(1) * id;
  const Work v = a6 * (b(12) * a6 + b(10) * a4 + b(8) * a2) + b(6) * a6 + b(4) * a4 + b(2) * a2 + b(0) * id;
  return {a * u_inner, v};
}

Work pade_ratio(const PadeTerms& t) { return solve(t.v - t.u, t.v + t.u); }

Work exponential(Work m) {
  const Real norm = m.norm1();
  if (norm <= kTheta[0]) return pade_ratio(pade_low(m, kB3));
  if (norm <= kTheta[1]) return pade_ratio(pade_low(m, kB5));
  if (norm <= kTheta[2]) return pade_ratio(pade_low(m, kB7));
  if (norm <= kTheta[3]) return pade_ratio(pade_low(m, kB9));

  int squarings = 0;
  if (norm > kTheta[4]) squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta[4])));
  const Real scale = std::ldexp(1.0L, -squarings);
  for (auto& v : m.a) v *= scale;

  Work x = pade_ratio(pade13(m));
  for (int s = 0; s < squarings; ++s) x = x * x;
  return x;
}

Work widen(const ComplexMatrix& m, Complex c) {
  Work w(m.size());
  const Scalar cc(c);
  for (std::size_t k = 0; k < w.a.size(); ++k) w.a[k] = cc * Scalar(m.data()[k]);
  return w;
}

Complex narrow(Scalar z) {
  const Complex out(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  if (!is_finite(out)) throw NumericError("expm: result is not finite in double precision");
  return out;
}

}  // namespace

ComplexMatrix expm(const ComplexMatrix& m) {
  if (!m.all_finite()) throw InputError("expm: matrix has non-finite entries");
  const Work x = exponential(widen(m, 1.0));
  std::vector<Complex> out(x.a.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = narrow(x.a[k]);
  return ComplexMatrix(m.size(), std::move(out));
}

std::vector<Complex> expm_apply(const ComplexMatrix& m, Complex c, std::span<const Complex> v) {
  if (!m.all_finite() || !is_finite(c)) throw InputError("expm_apply: non-finite input");
  if (v.size() != m.size()) throw InputError("expm_apply: vector length does not match the matrix");
  const Work x = exponential(widen(m, c));
  std::vector<Complex> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    Scalar acc{};
    for (std::size_t j = 0; j < m.size(); ++j) acc += x(i, j) * Scalar(v[j]);
    out[i] = narrow(acc);
  }
  return out;
}

}  // namespace lstrimer
