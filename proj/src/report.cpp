#include "lstrimer/commands.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace lstrimer {

std::string format_real(double x) {
  if (x == 0.0) x = 0.0;  // fold -0 into +0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

nlohmann::json complex_to_json(Complex z) { return nlohmann::json{{"re", z.real()}, {"im", z.imag()}}; }

namespace {

// Same layout as json::dump(2), but floats go through format_real so JSON and
// CSV artifacts share one number format.
void write_json(std::ostringstream& out, const nlohmann::json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << pad << nlohmann::json(it.key()).dump() << ": ";
        write_json(out, it.value(), depth + 1);
      }
      out << '\n' << close << '}';
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k > 0) out << ",\n";
        out << pad;
        write_json(out, j[k], depth + 1);
      }
      out << '\n' << close << ']';
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double x = j.get<double>();
      out << (std::isfinite(x) ? format_real(x) : std::string("null"));
      return;
    }
    default:
      out << j.dump();
  }
}

}  // namespace

std::string dump_json(const nlohmann::json& j) {
  std::ostringstream out;
  write_json(out, j, 0);
  out << '\n';
  return out.str();
}

std::string evolve_csv_header(std::size_t sites) {
  std::string h = "t";
  for (std::size_t k = 1; k <= sites; ++k) h += ",re_a" + std::to_string(k) + ",im_a" + std::to_string(k);
  for (std::size_t k = 1; k <= sites; ++k) h += ",p" + std::to_string(k);
  return h;
}

std::string render_sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << kSweepCsvHeader << '\n';
  for (const auto& r : rows) {
    out << format_real(r.gamma) << ',' << format_real(r.lambda0.real()) << ',' << format_real(r.lambda0.imag())
        << ',' << format_real(r.lambda_plus.real()) << ',' << format_real(r.lambda_plus.imag()) << ','
        << format_real(r.lambda_minus.real()) << ',' << format_real(r.lambda_minus.imag()) << ','
        << to_string(r.regime) << '\n';
  }
  return out.str();
}

std::string render_trajectory_csv(const std::vector<TrajectorySample>& samples) {
  std::ostringstream out;
  const std::size_t n = samples.empty() ? 0 : samples.front().amplitudes.size();
  out << evolve_csv_header(n) << '\n';
  for (const auto& s : samples) {
    out << format_real(s.t);
    for (const auto& a : s.amplitudes.amplitudes()) out << ',' << format_real(a.real()) << ',' << format_real(a.imag());
    for (double p : s.occupations) out << ',' << format_real(p);
    out << '\n';
  }
  return out.str();
}

}  // namespace lstrimer
