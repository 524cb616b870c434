#include "lstrimer/errors.hpp"
#include "lstrimer/numerics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace lstrimer {

namespace {

using EMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using EVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

EMatrix to_eigen(const ComplexMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  EMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }
  return out;
}

// Unit norm, largest-magnitude component real and positive.
EVector fix_phase(EVector v) {
  v.normalize();
  Eigen::Index big = 0;
  v.cwiseAbs().maxCoeff(&big);
  const Complex pivot = v(big);
  if (std::abs(pivot) > 0.0) v *= std::conj(pivot) / std::abs(pivot);
  return v;
}

std::vector<int> cluster_labels(const std::vector<Complex>& z, double rel_tol) {
  const std::size_t n = z.size();
  std::vector<int> label(n, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] >= 0) continue;
    label[i] = next;
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t j = 0; j < n; ++j) {
        if (label[j] >= 0) continue;
        for (std::size_t k = 0; k < n; ++k) {
          if (label[k] != next) continue;
          if (std::abs(z[j] - z[k]) <= rel_tol * std::max({1.0, std::abs(z[j]), std::abs(z[k])})) {
            label[j] = next;
            grew = true;
            break;
          }
        }
      }
    }
    ++next;
  }
  return label;
}

double overlap(const EVector& u, const EVector& v) {
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return std::abs(u.dot(v)) / (nu * nv);
}

}  // namespace

SpectralDecomposition eigen(const ComplexMatrix& m, const EigenOptions& opts) {
  const std::size_t n = m.size();
  const std::vector<Complex> roots = poly_roots(char_poly(m), opts.root_tol);
  const std::vector<int> label = cluster_labels(roots, opts.cluster_rel_tol);
  const int clusters = label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;

  const EMatrix em = to_eigen(m);
  const double null_tol = 1e-6 * std::max(1.0, em.norm());

  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  EMatrix vecs(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));

  for (int c = 0; c < clusters; ++c) {
    std::vector<std::size_t> members;
    Complex mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (label[i] == c) {
        members.push_back(i);
        mean += roots[i];
      }
    }
    mean /= static_cast<double>(members.size());

    const EMatrix shifted = em - mean * EMatrix::Identity(em.rows(), em.cols());
    Eigen::JacobiSVD<EMatrix> svd(shifted, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();  // descending
    std::size_t null_dim = 0;
    for (Eigen::Index k = sigma.size(); k-- > 0;) {
      if (sigma(k) <= null_tol) ++null_dim;
      else break;
    }
    null_dim = std::clamp<std::size_t>(null_dim, 1, members.size());

    for (std::size_t slot = 0; slot < members.size(); ++slot) {
      const std::size_t col = n - 1 - std::min(slot, null_dim - 1);
      const auto target = static_cast<Eigen::Index>(members[slot]);
      vecs.col(target) = fix_phase(svd.matrixV().col(static_cast<Eigen::Index>(col)));
      out.eigenvalues[members[slot]] = mean;
    }

    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        const auto ia = static_cast<Eigen::Index>(members[a]);
        const auto ib = static_cast<Eigen::Index>(members[b]);
        if (overlap(vecs.col(ia), vecs.col(ib)) > 1.0 - opts.tol) out.defective = true;
      }
    }
  }

  const Eigen::JacobiSVD<EMatrix> vsvd(vecs);
  const auto& vs = vsvd.singularValues();
  const double smin = vs(vs.size() - 1);
  out.eigenvector_condition = smin > 0.0 ? vs(0) / smin : std::numeric_limits<double>::infinity();
  if (!(out.eigenvector_condition <= opts.condition_cap)) out.defective = true;

  std::vector<Complex> flat(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      flat[i * n + j] = vecs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  out.right_eigenvectors = ComplexMatrix(n, std::move(flat));
  return out;
}

double closest_pair_overlap(const SpectralDecomposition& d) {
  const std::size_t n = d.eigenvalues.size();
  if (n < 2) return 0.0;
  std::size_t bi = 0;
  std::size_t bj = 1;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dist = std::abs(d.eigenvalues[i] - d.eigenvalues[j]);
      if (dist < best) {
        best = dist;
        bi = i;
        bj = j;
      }
    }
  }
  const auto& v = d.right_eigenvectors;
  Complex dot = 0.0;
  double ni = 0.0;
  double nj = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    dot += std::conj(v(k, bi)) * v(k, bj);
    ni += std::norm(v(k, bi));
    nj += std::norm(v(k, bj));
  }
  if (ni == 0.0 || nj == 0.0) return 0.0;
  return std::abs(dot) / std::sqrt(ni * nj);
}

}  // namespace lstrimer
