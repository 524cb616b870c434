#pragma once

// The latent-symmetric trimer H(chi): three sites, sites 0 and 1 cospectral,
// site 2 the singlet. Everything here is closed form; the numerical routes in
// numerics/dynamics are checked against it.

#include "lstrimer/dynamics.hpp"
#include "lstrimer/network.hpp"
#include "lstrimer/numerics.hpp"

#include <array>
#include <string_view>

namespace lstrimer {

inline constexpr double kEpBand = 1e-9;  // | |gamma| - gamma_c | below this is the EP

struct TrimerParams {
  double omega = 0.0;
  double gamma = 0.0;
  double mu = 1.0;     // > 0
  double kappa = 1.0;  // > 0
  double chi = 0.0;    // similarity deformation
  double omega3 = 0.0;
  double gamma3 = 0.0;

  /// Throws InputError unless mu > 0, kappa > 0 and all fields are finite.
  void validate() const;

  [[nodiscard]] Complex onsite() const { return {omega, gamma}; }
  [[nodiscard]] Complex onsite3() const { return {omega3, gamma3}; }
  [[nodiscard]] double gamma_c() const;

  friend bool operator==(const TrimerParams&, const TrimerParams&) = default;
};

/// Onsite (Omega, Omega, Omega3); couplings (0,1) = mu e^{2chi},
/// (1,0) = mu e^{-2chi}, (0,2) = (2,1) = kappa e^{chi}, (2,0) = (1,2) = kappa e^{-chi}.
[[nodiscard]] NetworkHamiltonian build_trimer(const TrimerParams& p);

/// D H D^-1 with D = diag(e^chi, e^-chi, 1).
[[nodiscard]] NetworkHamiltonian gauge_transform(const NetworkHamiltonian& h, double chi);

/// Dark state e^chi|0> - e^-chi|1> (unnormalized).
[[nodiscard]] StateVector dark_state(const TrimerParams& p);
/// Bright state (e^chi|0> + e^-chi|1>) / sqrt(2); its norm is sqrt(cosh 2chi).
[[nodiscard]] StateVector bright_state(const TrimerParams& p);

struct SectorDecomposition {
  StateVector dark_vector;
  Complex dark_eigenvalue;      // Omega - mu
  StateVector bright_vector;
  ComplexMatrix bright_block{2};  // in the basis {|B>, |2>}
  Complex lambda_plus;
  Complex lambda_minus;
  Complex discriminant;         // Delta, principal branch
};

[[nodiscard]] SectorDecomposition decompose(const TrimerParams& p);

/// Copy with gamma3 = -gamma and omega3 = omega + mu, which makes the bright
/// block a PT-symmetric dimer.
[[nodiscard]] TrimerParams apply_reality_conditions(TrimerParams p);

enum class Regime { PtUnbroken, ExceptionalPoint, PtBroken, NonPt };

[[nodiscard]] std::string_view to_string(Regime r);

struct PhaseClassification {
  Regime regime = Regime::NonPt;
  double gamma_c = 0.0;  // sqrt(2) kappa
  Complex discriminant;
};

/// NonPt unless the reality conditions hold to tol; otherwise compares |gamma|
/// with gamma_c using a band of width tol.
[[nodiscard]] PhaseClassification classify_phase(const TrimerParams& p, double tol = kEpBand);

/// Coefficients of the bright-sector solution
/// psi(t) = e^{-iat} [alpha(t) |B> + beta(t) |2>].
struct ClosedFormCoefficients {
  Complex eta;    // Delta / 2
  Complex delta;  // (Omega + mu - Omega3) / 2
  Complex a;      // (Omega + mu + Omega3) / 2
  double kappa = 0.0;

  [[nodiscard]] Complex alpha(double t) const;
  [[nodiscard]] Complex beta(double t) const;
};

[[nodiscard]] ClosedFormCoefficients closed_form_coefficients(const TrimerParams& p);

struct Occupations3 {
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
};

/// Occupations for the initial state |D>.
[[nodiscard]] Occupations3 closed_form_dark(const TrimerParams& p, double t);

struct BrightClosedForm {
  Complex alpha;
  Complex beta;
  Occupations3 occupations;
};

/// Occupations for the initial state |B>. Valid whenever eta != 0, including
/// complex eta in the broken phase. Throws InputError when |eta| <= eta_tol or
/// the parameters sit inside the EP band of classify_phase.
[[nodiscard]] BrightClosedForm closed_form_bright(const TrimerParams& p, double t, double eta_tol = kEpBand);

/// Polynomial-in-time occupations for |B> at the exceptional point.
/// Throws InputError off the EP.
[[nodiscard]] Occupations3 closed_form_ep(const TrimerParams& p, double t, double tol = kEpBand);

/// |B> - i s |2> with s = sign(gamma): the single eigenvector left in the
/// bright sector at the EP.
[[nodiscard]] StateVector coalesced_eigenvector(const TrimerParams& p);

/// N = gamma_c [[i s, 1], [1, -i s]] (s = sign(gamma)) so that the bright
/// block equals (omega + mu) I + N at the EP. Throws InputError off the EP.
[[nodiscard]] ComplexMatrix nilpotent_part(const TrimerParams& p, double tol = kEpBand);

}  // namespace lstrimer
