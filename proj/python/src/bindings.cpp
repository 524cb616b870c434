#include "lstrimer/commands.hpp"
#include "lstrimer/errors.hpp"

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <tuple>

namespace py = pybind11;
using namespace pybind11::literals;
using namespace lstrimer;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;
using SiteTuple = std::tuple<double, double>;
using CouplingTuple = std::tuple<std::size_t, std::size_t, double>;

ComplexMatrix matrix_from_array(const ComplexArray& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw InputError("expected a square 2-D array");
  const auto n = static_cast<std::size_t>(a.shape(0));
  return ComplexMatrix(n, std::vector<Complex>(a.data(), a.data() + n * n));
}

ComplexArray array_from_matrix(const ComplexMatrix& m) {
  const auto n = static_cast<py::ssize_t>(m.size());
  ComplexArray out({n, n});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

StateVector state_from_array(const ComplexArray& a) {
  if (a.ndim() != 1) throw InputError("expected a 1-D state vector");
  return StateVector(std::vector<Complex>(a.data(), a.data() + a.shape(0)));
}

ComplexArray array_from_state(const StateVector& s) {
  ComplexArray out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(s.size())});
  std::copy(s.amplitudes().begin(), s.amplitudes().end(), out.mutable_data());
  return out;
}

NetworkHamiltonian network_from_tuples(const std::vector<SiteTuple>& sites,
                                       const std::vector<CouplingTuple>& couplings) {
  std::vector<SiteSpec> s;
  for (const auto& [omega, gamma] : sites) s.push_back({omega, gamma});
  std::vector<CouplingSpec> c;
  for (const auto& [from, to, g] : couplings) c.push_back({from, to, g});
  return build_hamiltonian(s, c);
}

py::tuple occupations_tuple(const Occupations3& o) { return py::make_tuple(o.p1, o.p2, o.p3); }

}  // namespace

PYBIND11_MODULE(_lstrimer, m) {
  m.doc() = "Latent-symmetric non-Hermitian trimer toolkit";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::enum_<Regime>(m, "Regime")
      .value("PT_UNBROKEN", Regime::PtUnbroken)
      .value("EXCEPTIONAL_POINT", Regime::ExceptionalPoint)
      .value("PT_BROKEN", Regime::PtBroken)
      .value("NON_PT", Regime::NonPt);

  py::class_<TrimerParams>(m, "TrimerParams")
      .def(py::init([](double omega, double gamma, double mu, double kappa, double chi, py::object omega3,
                       py::object gamma3) {
             TrimerParams p{omega, gamma, mu, kappa, chi, 0.0, 0.0};
             const TrimerParams pt = apply_reality_conditions(p);
             p.omega3 = omega3.is_none() ? pt.omega3 : omega3.cast<double>();
             p.gamma3 = gamma3.is_none() ? pt.gamma3 : gamma3.cast<double>();
             p.validate();
             return p;
           }),
           "omega"_a = 0.0, "gamma"_a = 0.0, "mu"_a = 1.0, "kappa"_a = 1.0, "chi"_a = 0.0,
           "omega3"_a = py::none(), "gamma3"_a = py::none(),
           "omega3/gamma3 = None applies the reality conditions")
      .def_readwrite("omega", &TrimerParams::omega)
      .def_readwrite("gamma", &TrimerParams::gamma)
      .def_readwrite("mu", &TrimerParams::mu)
      .def_readwrite("kappa", &TrimerParams::kappa)
      .def_readwrite("chi", &TrimerParams::chi)
      .def_readwrite("omega3", &TrimerParams::omega3)
      .def_readwrite("gamma3", &TrimerParams::gamma3)
      .def_property_readonly("gamma_c", &TrimerParams::gamma_c)
      .def("__repr__", [](const TrimerParams& p) { return "TrimerParams(" + trimer_to_json(p).dump() + ")"; });

  m.def("apply_reality_conditions", &apply_reality_conditions, "p"_a);
  m.def("build_trimer", [](const TrimerParams& p) { return array_from_matrix(build_trimer(p).matrix()); }, "p"_a);
  m.def(
      "gauge_transform",
      [](const TrimerParams& p, double chi) { return array_from_matrix(gauge_transform(build_trimer(p), chi).matrix()); },
      "p"_a, "chi"_a, "D H(p) D^-1 with D = diag(e^chi, e^-chi, 1)");

  m.def(
      "decompose",
      [](const TrimerParams& p) {
        const auto s = decompose(p);
        return py::dict("dark_vector"_a = array_from_state(s.dark_vector), "dark_eigenvalue"_a = s.dark_eigenvalue,
                        "bright_vector"_a = array_from_state(s.bright_vector),
                        "bright_block"_a = array_from_matrix(s.bright_block), "lambda_plus"_a = s.lambda_plus,
                        "lambda_minus"_a = s.lambda_minus, "discriminant"_a = s.discriminant);
      },
      "p"_a);
  m.def(
      "classify_phase",
      [](const TrimerParams& p, double tol) {
        const auto c = classify_phase(p, tol);
        return py::dict("regime"_a = c.regime, "gamma_c"_a = c.gamma_c, "discriminant"_a = c.discriminant);
      },
      "p"_a, "tol"_a = kEpBand);
  m.def("closed_form_dark", [](const TrimerParams& p, double t) { return occupations_tuple(closed_form_dark(p, t)); },
        "p"_a, "t"_a);
  m.def(
      "closed_form_bright",
      [](const TrimerParams& p, double t) {
        const auto b = closed_form_bright(p, t);
        return py::dict("alpha"_a = b.alpha, "beta"_a = b.beta, "occupations"_a = occupations_tuple(b.occupations));
      },
      "p"_a, "t"_a);
  m.def("closed_form_ep", [](const TrimerParams& p, double t) { return occupations_tuple(closed_form_ep(p, t)); },
        "p"_a, "t"_a);

  m.def("char_poly", [](const ComplexArray& a) { return char_poly(matrix_from_array(a)).coeffs; }, "m"_a,
        "Monic characteristic polynomial, constant term first");
  m.def(
      "poly_roots",
      [](std::vector<Complex> coeffs, double tol) {
        Polynomial p{std::move(coeffs), true};
        return poly_roots(p, tol);
      },
      "coeffs"_a, "tol"_a = kRootTol);
  m.def(
      "eigen",
      [](const ComplexArray& a) {
        const auto d = eigen(matrix_from_array(a));
        return py::dict("eigenvalues"_a = d.eigenvalues, "eigenvectors"_a = array_from_matrix(d.right_eigenvectors),
                        "defective"_a = d.defective, "eigenvector_condition"_a = d.eigenvector_condition,
                        "closest_pair_overlap"_a = closest_pair_overlap(d));
      },
      "m"_a);
  m.def("expm", [](const ComplexArray& a) { return array_from_matrix(expm(matrix_from_array(a))); }, "m"_a);

  m.def(
      "propagate",
      [](const ComplexArray& h, const ComplexArray& psi0, double t) {
        return array_from_state(propagate(matrix_from_array(h), state_from_array(psi0), t));
      },
      "h"_a, "psi0"_a, "t"_a);
  m.def(
      "trajectory",
      [](const TrimerParams& p, const std::string& initial, double t_start, double t_end, std::size_t steps) {
        StateVector psi0;
        if (initial == "bright") psi0 = bright_state(p);
        else if (initial == "dark") psi0 = dark_state(p);
        else throw InputError("trajectory: initial must be 'bright' or 'dark'");
        const auto samples = trajectory(build_trimer(p), psi0, TimeGrid{t_start, t_end, steps});
        py::array_t<double> t(std::vector<py::ssize_t>{static_cast<py::ssize_t>(samples.size())});
        py::array_t<double> occ({static_cast<py::ssize_t>(samples.size()), py::ssize_t{3}});
        auto tv = t.mutable_unchecked<1>();
        auto ov = occ.mutable_unchecked<2>();
        for (std::size_t k = 0; k < samples.size(); ++k) {
          const auto kk = static_cast<py::ssize_t>(k);
          tv(kk) = samples[k].t;
          for (py::ssize_t j = 0; j < 3; ++j) ov(kk, j) = samples[k].occupations[static_cast<std::size_t>(j)];
        }
        return py::make_tuple(t, occ);
      },
      "p"_a, "initial"_a, "t_start"_a, "t_end"_a, "steps"_a, "Returns (t, occupations[steps, 3])");

  m.def(
      "gamma_sweep",
      [](const TrimerParams& p, double gmin, double gmax, std::size_t steps) {
        py::list rows;
        for (const auto& r : gamma_sweep(p, gmin, gmax, steps)) {
          rows.append(py::dict("gamma"_a = r.gamma, "lambda0"_a = r.lambda0, "lambda_plus"_a = r.lambda_plus,
                               "lambda_minus"_a = r.lambda_minus, "regime"_a = r.regime));
        }
        return rows;
      },
      "p"_a, "gamma_min"_a, "gamma_max"_a, "steps"_a);
  m.def(
      "locate_ep",
      [](const TrimerParams& p, std::pair<double, double> bracket, double tol) {
        const auto e = locate_ep(p, bracket, tol);
        return py::dict("gamma_c"_a = e.gamma_c, "residual"_a = e.residual,
                        "discriminant_modulus"_a = e.discriminant_modulus, "side_samples"_a = e.side_samples,
                        "eigenvector_overlap"_a = e.eigenvector_overlap);
      },
      "p"_a, "bracket"_a, "tol"_a = kDefaultTol);

  m.def(
      "is_cospectral",
      [](const std::vector<SiteTuple>& sites, const std::vector<CouplingTuple>& couplings, std::size_t i,
         std::size_t j, double tol) {
        const auto r = is_cospectral(network_from_tuples(sites, couplings), i, j, tol);
        return py::dict("cospectral"_a = r.cospectral, "max_coeff_deviation"_a = r.max_coeff_deviation,
                        "poly_i"_a = r.poly_i.coeffs, "poly_j"_a = r.poly_j.coeffs);
      },
      "sites"_a, "couplings"_a, "i"_a, "j"_a, "tol"_a = kDefaultTol,
      "sites: [(omega, gamma)], couplings: [(from, to, g)], 0-based");
  m.def(
      "singlet_sites",
      [](const std::vector<SiteTuple>& sites, const std::vector<CouplingTuple>& couplings,
         std::pair<std::size_t, std::size_t> pair) {
        return singlet_sites(network_from_tuples(sites, couplings), pair).singlets;
      },
      "sites"_a, "couplings"_a, "pair"_a);

  m.def(
      "run_command",
      [](const std::string& command, const std::string& config_json) {
        const auto cfg = parse_config(nlohmann::json::parse(config_json), parse_command(command));
        const auto out = run_command(cfg);
        return py::make_tuple(out.body, out.sidecar);
      },
      "command"_a, "config_json"_a, "Runs a CLI analysis in-process; returns (body, sidecar)");
}
