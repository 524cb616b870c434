#include "lstrimer/dynamics.hpp"

#include "lstrimer/errors.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

namespace lstrimer {

namespace {

std::optional<StateVector> try_propagate(const ComplexMatrix& h, const StateVector& psi0, double t) {
  try {
    std::vector<Complex> out = expm_apply(h, Complex{0.0, -t}, psi0.amplitudes());
    if (!std::all_of(out.begin(), out.end(), [](Complex z) { return is_finite(z); })) return std::nullopt;
    return StateVector(std::move(out));
  } catch (const NumericError&) {
    return std::nullopt;
  }
}

}  // namespace

StateVector::StateVector(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
  for (const auto& a : amps_) {
    if (!is_finite(a)) throw InputError("StateVector: non-finite amplitude");
  }
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw InputError("StateVector: cannot normalize the zero vector");
  std::vector<Complex> out(amps_);
  for (auto& a : out) a /= n;
  return StateVector(std::move(out));
}

std::vector<double> occupations(const StateVector& psi) {
  std::vector<double> p;
  p.reserve(psi.size());
  for (const auto& a : psi.amplitudes()) p.push_back(std::norm(a));
  return p;
}

StateVector propagate(const ComplexMatrix& h, const StateVector& psi0, double t) {
  if (psi0.size() != h.size()) {
    throw InputError("propagate: state has " + std::to_string(psi0.size()) + " amplitudes, Hamiltonian has " +
                     std::to_string(h.size()) + " sites");
  }
  if (!std::isfinite(t)) throw InputError("propagate: time must be finite");
  if (t == 0.0) return psi0;
  if (auto psi = try_propagate(h, psi0, t)) return *std::move(psi);

  double good = 0.0;
  double bad = t;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (good + bad);
    if (try_propagate(h, psi0, mid)) good = mid;
    else bad = mid;
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "propagate: state overflows at t = " << t << "; largest finite t = " << good;
  throw PropagationOverflow(msg.str(), good);
}

StateVector propagate(const NetworkHamiltonian& h, const StateVector& psi0, double t) {
  return propagate(h.matrix(), psi0, t);
}

void TimeGrid::validate() const {
  if (!std::isfinite(t_start) || !std::isfinite(t_end) || !(t_end > t_start)) {
    throw InputError("TimeGrid: requires finite t_end > t_start");
  }
  if (steps < 2) throw InputError("TimeGrid: requires steps >= 2");
}

double TimeGrid::at(std::size_t k) const {
  if (k + 1 == steps) return t_end;
  return t_start + (t_end - t_start) * static_cast<double>(k) / static_cast<double>(steps - 1);
}

std::vector<TrajectorySample> trajectory(const NetworkHamiltonian& h, const StateVector& psi0, const TimeGrid& grid,
                                         unsigned threads) {
  grid.validate();
  const ComplexMatrix m = h.matrix();
  std::vector<TrajectorySample> out(grid.steps);
  parallel_for(grid.steps, threads, [&](std::size_t k) {
    const double t = grid.at(k);
    StateVector psi = propagate(m, psi0, t);
    out[k] = TrajectorySample{t, psi, occupations(psi)};
  });
  return out;
}

unsigned resolve_thread_count(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace lstrimer
