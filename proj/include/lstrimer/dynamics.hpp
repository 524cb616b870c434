#pragma once

#include "lstrimer/network.hpp"
#include "lstrimer/numerics.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace lstrimer {

/// Site amplitudes <j|psi>.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::vector<Complex> amplitudes);

  [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }
  [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amps_; }
  Complex operator[](std::size_t j) const { return amps_[j]; }

  [[nodiscard]] double norm() const;
  [[nodiscard]] StateVector normalized() const;

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  std::vector<Complex> amps_;
};

[[nodiscard]] std::vector<double> occupations(const StateVector& psi);

/// e^{-iHt} psi0. Throws PropagationOverflow (carrying the largest finite
/// time found by bisection) when the state leaves the double range.
[[nodiscard]] StateVector propagate(const NetworkHamiltonian& h, const StateVector& psi0, double t);
[[nodiscard]] StateVector propagate(const ComplexMatrix& h, const StateVector& psi0, double t);

struct TimeGrid {
  double t_start = 0.0;
  double t_end = 1.0;
  std::size_t steps = 2;

  /// Throws InputError unless t_end > t_start and steps >= 2.
  void validate() const;
  [[nodiscard]] double at(std::size_t k) const;
};

struct TrajectorySample {
  double t = 0.0;
  StateVector amplitudes;
  std::vector<double> occupations;
};

/// One sample per grid point, each propagated from t = 0 rather than chained.
/// threads = 0 uses the hardware concurrency; output order is the grid order.
[[nodiscard]] std::vector<TrajectorySample> trajectory(const NetworkHamiltonian& h, const StateVector& psi0,
                                                       const TimeGrid& grid, unsigned threads = 1);

/// Runs fn(k) for k in [0, count) over up to `threads` workers (0 = hardware).
/// Exceptions from workers are rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn);

unsigned resolve_thread_count(unsigned requested);

}  // namespace lstrimer

#include "lstrimer/detail/parallel.hpp"
