#include "lstrimer/trimer.hpp"

#include "lstrimer/errors.hpp"

#include <cmath>
#include <numbers>

namespace lstrimer {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr Complex kI{0.0, 1.0};

// Principal square root with +0 imaginary part on the negative real axis.
Complex principal_sqrt(Complex z) {
  if (z.imag() == 0.0) z = Complex{z.real(), 0.0};
  return std::sqrt(z);
}

// sin(x)/x, analytic at 0.
Complex sinc(Complex x) {
  if (std::abs(x) < 1e-4) {
    const Complex x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

void require_ep(const TrimerParams& p, double tol, const char* what) {
  const auto phase = classify_phase(p, tol);
  if (phase.regime != Regime::ExceptionalPoint) {
    throw InputError(std::string(what) + ": parameters are not at the exceptional point (regime " +
                     std::string(to_string(phase.regime)) + ", gamma = " + std::to_string(p.gamma) +
                     ", gamma_c = " + std::to_string(phase.gamma_c) + ")");
  }
}

}  // namespace

void TrimerParams::validate() const {
  for (double v : {omega, gamma, mu, kappa, chi, omega3, gamma3}) {
    if (!std::isfinite(v)) throw InputError("TrimerParams: all fields must be finite");
  }
  if (!(mu > 0.0)) throw InputError("TrimerParams: mu must be > 0");
  if (!(kappa > 0.0)) throw InputError("TrimerParams: kappa must be > 0");
}

double TrimerParams::gamma_c() const { return kSqrt2 * kappa; }

NetworkHamiltonian build_trimer(const TrimerParams& p) {
  p.validate();
  const double e1 = std::exp(p.chi);
  const double em1 = std::exp(-p.chi);
  std::vector<double> g = {
      0.0,             p.mu * std::exp(2.0 * p.chi), p.kappa * e1,   //
      p.mu * std::exp(-2.0 * p.chi), 0.0,            p.kappa * em1,  //
      p.kappa * em1,   p.kappa * e1,                 0.0,
  };
  return NetworkHamiltonian({{p.omega, p.gamma}, {p.omega, p.gamma}, {p.omega3, p.gamma3}}, std::move(g));
}

NetworkHamiltonian gauge_transform(const NetworkHamiltonian& h, double chi) {
  if (h.site_count() != 3) throw InputError("gauge_transform: network must have exactly 3 sites");
  const double d[3] = {std::exp(chi), std::exp(-chi), 1.0};
  std::vector<double> g(9, 0.0);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (i != j) g[i * 3 + j] = h.coupling(i, j) * d[i] / d[j];
    }
  }
  return NetworkHamiltonian(h.sites(), std::move(g));
}

StateVector dark_state(const TrimerParams& p) {
  return StateVector({std::exp(p.chi), -std::exp(-p.chi), 0.0});
}

StateVector bright_state(const TrimerParams& p) {
  return StateVector({std::exp(p.chi) / kSqrt2, std::exp(-p.chi) / kSqrt2, 0.0});
}

SectorDecomposition decompose(const TrimerParams& p) {
  p.validate();
  const Complex om = p.onsite();
  const Complex om3 = p.onsite3();
  const double c = kSqrt2 * p.kappa;
  const Complex detuning = om + p.mu - om3;
  const Complex disc = principal_sqrt(detuning * detuning + 8.0 * p.kappa * p.kappa);

  SectorDecomposition s;
  s.dark_vector = dark_state(p);
  s.dark_eigenvalue = om - p.mu;
  s.bright_vector = bright_state(p);
  s.bright_block = ComplexMatrix{{om + p.mu, c}, {c, om3}};
  s.discriminant = disc;
  s.lambda_plus = 0.5 * (om + om3 + p.mu + disc);
  s.lambda_minus = 0.5 * (om + om3 + p.mu - disc);
  return s;
}

TrimerParams apply_reality_conditions(TrimerParams p) {
  p.gamma3 = -p.gamma;
  p.omega3 = p.omega + p.mu;
  return p;
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::PtUnbroken: return "PT_UNBROKEN";
    case Regime::ExceptionalPoint: return "EXCEPTIONAL_POINT";
    case Regime::PtBroken: return "PT_BROKEN";
    case Regime::NonPt: return "NON_PT";
  }
  return "NON_PT";
}

PhaseClassification classify_phase(const TrimerParams& p, double tol) {
  p.validate();
  PhaseClassification out;
  out.gamma_c = p.gamma_c();
  out.discriminant = decompose(p).discriminant;

  const double freq_scale = std::max({1.0, std::abs(p.omega), p.mu});
  const bool pt = std::abs(p.gamma3 + p.gamma) <= tol * std::max(1.0, std::abs(p.gamma)) &&
                  std::abs(p.omega3 - p.omega - p.mu) <= tol * freq_scale;
  if (!pt) {
    out.regime = Regime::NonPt;
    return out;
  }
  const double excess = std::abs(p.gamma) - out.gamma_c;
  if (std::abs(excess) <= tol) out.regime = Regime::ExceptionalPoint;
  else if (excess < 0.0) out.regime = Regime::PtUnbroken;
  else out.regime = Regime::PtBroken;
  return out;
}

Complex ClosedFormCoefficients::alpha(double t) const {
  return std::cos(eta * t) - kI * delta * t * sinc(eta * t);
}

Complex ClosedFormCoefficients::beta(double t) const {
  return -kI * kSqrt2 * kappa * t * sinc(eta * t);
}

ClosedFormCoefficients closed_form_coefficients(const TrimerParams& p) {
  const SectorDecomposition s = decompose(p);
  ClosedFormCoefficients c;
  c.eta = 0.5 * s.discriminant;
  c.delta = 0.5 * (p.onsite() + p.mu - p.onsite3());
  c.a = 0.5 * (p.onsite() + p.mu + p.onsite3());
  c.kappa = p.kappa;
  return c;
}

Occupations3 closed_form_dark(const TrimerParams& p, double t) {
  p.validate();
  const double growth = std::exp(2.0 * p.gamma * t);
  return {growth * std::exp(2.0 * p.chi), growth * std::exp(-2.0 * p.chi), 0.0};
}

BrightClosedForm closed_form_bright(const TrimerParams& p, double t, double eta_tol) {
  const ClosedFormCoefficients c = closed_form_coefficients(p);
  if (std::abs(c.eta) <= eta_tol || classify_phase(p, eta_tol).regime == Regime::ExceptionalPoint) {
    throw InputError("closed_form_bright: |eta| = " + std::to_string(std::abs(c.eta)) +
                     " is at the exceptional point; use closed_form_ep");
  }
  BrightClosedForm out;
  out.alpha = c.alpha(t);
  out.beta = c.beta(t);
  // |e^{-iat}|^2; identically 1 once the reality conditions make a real.
  const double envelope = std::exp(2.0 * c.a.imag() * t);
  const double a2 = std::norm(out.alpha);
  out.occupations = {envelope * std::exp(2.0 * p.chi) * a2 / 2.0, envelope * std::exp(-2.0 * p.chi) * a2 / 2.0,
                     envelope * std::norm(out.beta)};
  return out;
}

Occupations3 closed_form_ep(const TrimerParams& p, double t, double tol) {
  require_ep(p, tol, "closed_form_ep");
  const double gc = p.gamma_c();
  const double lin = 1.0 + sign_of(p.gamma) * gc * t;
  return {std::exp(2.0 * p.chi) * lin * lin / 2.0, std::exp(-2.0 * p.chi) * lin * lin / 2.0, gc * gc * t * t};
}

StateVector coalesced_eigenvector(const TrimerParams& p) {
  p.validate();
  return StateVector({std::exp(p.chi) / kSqrt2, std::exp(-p.chi) / kSqrt2, -kI * sign_of(p.gamma)});
}

ComplexMatrix nilpotent_part(const TrimerParams& p, double tol) {
  require_ep(p, tol, "nilpotent_part");
  const double gc = p.gamma_c();
  const Complex is = kI * sign_of(p.gamma);
  return ComplexMatrix{{gc * is, gc}, {gc, -gc * is}};
}

}  // namespace lstrimer
