#include "lstrimer/commands.hpp"
#include "test_support.hpp"

#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <regex>
#include <sstream>

using namespace lstrimer;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const char* const kCli = LSTRIMER_CLI_PATH;

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("lstrimer_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

// Writes the config, runs the tool, captures both streams.
Run run(const std::string& command, const json& config, const std::string& extra = "", const std::string& env = "") {
  static int counter = 0;
  const std::string tag = std::to_string(counter++);
  const fs::path cfg = scratch() / ("cfg" + tag + ".json");
  std::ofstream(cfg) << config.dump();
  const fs::path out = scratch() / ("stdout" + tag);
  const fs::path err = scratch() / ("stderr" + tag);
  const std::string line = env + " " + std::string(kCli) + " " + command + " --config " + cfg.string() + " " + extra +
                           " >" + out.string() + " 2>" + err.string();
  const int status = std::system(line.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

json pt_trimer(double gamma, double chi = 0.0, double kappa = 1.0 / std::numbers::sqrt2) {
  return {{"omega", 0.0}, {"gamma", gamma}, {"mu", 1.0}, {"kappa", kappa},
          {"chi", chi},   {"omega3", "auto"}, {"gamma3", "auto"}};
}

json engineered_network() {
  const double k = 1.0 / std::numbers::sqrt2;
  return {{"sites", {{{"omega", 0.0}, {"gamma", 0.5}}, {{"omega", 0.0}, {"gamma", 0.5}}, {{"omega", 1.0}, {"gamma", -0.5}}}},
          {"couplings",
           {{{"from", 0}, {"to", 1}, {"g", 1.0}},
            {{"from", 1}, {"to", 0}, {"g", 1.0}},
            {{"from", 0}, {"to", 2}, {"g", k}},
            {{"from", 2}, {"to", 0}, {"g", k}},
            {{"from", 1}, {"to", 2}, {"g", k}},
            {{"from", 2}, {"to", 1}, {"g", k}}}}};
}

Complex cplx(const json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

std::vector<std::vector<std::string>> csv_rows(const std::string& text, std::string* header) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  if (header) *header = line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace

TEST_SUITE("cli spectrum") {
  TEST_CASE("default parameters at gamma = 0.5") {
    const Run r = run("spectrum", {{"trimer", pt_trimer(0.5)}});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    const auto& d = doc.at("decomposition");
    CHECK(std::abs(cplx(d.at("dark_eigenvalue")) - Complex{-1.0, 0.5}) < 1e-15);
    CHECK(std::abs(cplx(d.at("lambda_plus")) - (1.0 + std::sqrt(0.75))) < 1e-14);
    CHECK(std::abs(cplx(d.at("lambda_minus")) - (1.0 - std::sqrt(0.75))) < 1e-14);
    CHECK(doc.at("phase").at("regime") == "PT_UNBROKEN");
    CHECK(doc.at("phase").at("gamma_c").get<double>() == doctest::Approx(1.0));
    CHECK(doc.at("spectrum").at("defective") == false);
    std::vector<Complex> eig;
    for (const auto& z : doc.at("spectrum").at("eigenvalues")) eig.push_back(cplx(z));
    CHECK(testing::multiset_distance(eig, {Complex{-1.0, 0.5}, 1.0 + std::sqrt(0.75), 1.0 - std::sqrt(0.75)}) < 1e-10);
  }

  TEST_CASE("exceptional point is defective") {
    const Run r = run("spectrum", {{"trimer", pt_trimer(1.0)}});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc.at("phase").at("regime") == "EXCEPTIONAL_POINT");
    CHECK(doc.at("spectrum").at("defective") == true);
  }

  TEST_CASE("raw diagonal network") {
    const json net = {{"sites", {{{"omega", 1.0}, {"gamma", 0.25}}, {{"omega", -2.0}, {"gamma", 0.0}}}}};
    const Run r = run("spectrum", {{"network", net}}, "--format csv");
    REQUIRE(r.code == 0);
    std::string header;
    const auto rows = csv_rows(r.out, &header);
    CHECK(header == "index,re_lambda,im_lambda");
    REQUIRE(rows.size() == 2);
    std::vector<Complex> eig;
    for (const auto& row : rows) eig.push_back({std::stod(row[1]), std::stod(row[2])});
    CHECK(testing::multiset_distance(eig, {Complex{1.0, 0.25}, -2.0}) < 1e-14);
  }

  TEST_CASE("emitted models re-ingest to equal models") {
    json trimer = pt_trimer(0.37, -0.21);
    trimer["omega3"] = 0.123456789012345678;
    const Run a = run("spectrum", {{"trimer", trimer}});
    REQUIRE(a.code == 0);
    const json model = json::parse(a.out).at("model");
    const RunConfig back = parse_config(model, Command::Spectrum);
    const RunConfig orig = parse_config({{"trimer", trimer}}, Command::Spectrum);
    CHECK(*back.trimer == *orig.trimer);

    const Run b = run("spectrum", {{"network", engineered_network()}});
    REQUIRE(b.code == 0);
    const RunConfig back_net = parse_config(json::parse(b.out).at("model"), Command::Spectrum);
    CHECK(*back_net.network == *parse_config({{"network", engineered_network()}}, Command::Spectrum).network);
  }
}

TEST_SUITE("cli evolve") {
  TEST_CASE("bright trajectories at chi = 0 and 0.2") {
    const json grid = {{"t_start", 0.0}, {"t_end", 10.0}, {"steps", 1001}};
    const Run a = run("evolve", {{"trimer", pt_trimer(0.5, 0.0)}, {"initial_state", "bright"}, {"grid", grid}});
    const Run b = run("evolve", {{"trimer", pt_trimer(0.5, 0.2)}, {"initial_state", "bright"}, {"grid", grid}});
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    std::string header;
    const auto ra = csv_rows(a.out, &header);
    const auto rb = csv_rows(b.out, nullptr);
    CHECK(header == "t,re_a1,im_a1,re_a2,im_a2,re_a3,im_a3,p1,p2,p3");
    REQUIRE(ra.size() == 1001);
    REQUIRE(rb.size() == 1001);
    for (std::size_t k = 0; k < ra.size(); ++k) {
      CHECK(std::abs(std::stod(ra[k][7]) - std::stod(ra[k][8])) <= 1e-12);
      CHECK(std::abs(std::stod(ra[k][9]) - std::stod(rb[k][9])) <= 1e-9);
      CHECK(std::stod(rb[k][7]) / std::stod(rb[k][8]) == doctest::Approx(std::exp(0.8)).epsilon(1e-10));
    }
  }

  TEST_CASE("dark initial state") {
    const Run r = run("evolve", {{"trimer", pt_trimer(0.5, 0.3)},
                                 {"initial_state", "dark"},
                                 {"grid", {{"t_end", 5.0}, {"steps", 101}}}});
    REQUIRE(r.code == 0);
    for (const auto& row : csv_rows(r.out, nullptr)) CHECK(std::stod(row[9]) <= 1e-12);
  }

  TEST_CASE("number format is pinned") {
    const Run r = run("evolve", {{"trimer", pt_trimer(0.5, 0.2)}, {"grid", {{"t_end", 1.0}, {"steps", 11}}}});
    REQUIRE(r.code == 0);
    const std::regex number(R"(-?[0-9]\.[0-9]{16}e[+-][0-9]{2,3})");
    for (const auto& row : csv_rows(r.out, nullptr)) {
      REQUIRE(row.size() == 10);
      for (const auto& cell : row) CHECK(std::regex_match(cell, number));
    }
    CHECK(r.out.find('\r') == std::string::npos);
    CHECK(r.out.back() == '\n');
  }

  TEST_CASE("json format and explicit states") {
    const json net = {{"sites", {{{"omega", 0.0}}, {{"omega", 0.0}}}},
                      {"couplings", {{{"from", 0}, {"to", 1}, {"g", 1.0}}, {{"from", 1}, {"to", 0}, {"g", 1.0}}}}};
    const Run r = run("evolve", {{"network", net}, {"initial_state", "site:0"}, {"grid", {{"t_end", 1.0}, {"steps", 3}}}},
                      "--format json");
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    REQUIRE(doc.at("samples").size() == 3);
    // Hermitian dimer: P1 = cos^2 t
    const auto& last = doc.at("samples")[2];
    CHECK(last.at("occupations")[0].get<double>() == doctest::Approx(std::cos(1.0) * std::cos(1.0)).epsilon(1e-12));

    const Run bad = run("evolve", {{"network", net}, {"initial_state", json::array({1.0, 0.0, 0.0})}});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("initial_state") != std::string::npos);
  }

  TEST_CASE("overflow is a numeric error") {
    json t = pt_trimer(2.0);
    const Run r = run("evolve", {{"trimer", t}, {"initial_state", "dark"}, {"grid", {{"t_end", 1000.0}, {"steps", 3}}}});
    CHECK(r.code == 2);
    CHECK(r.err.find("largest finite t") != std::string::npos);
  }
}

TEST_SUITE("cli sweep") {
  TEST_CASE("sweep with sidecar") {
    const fs::path out = scratch() / "fig2.csv";
    const Run r = run("sweep", {{"trimer", pt_trimer(0.0)}, {"sweep", {{"gamma_min", -2.0}, {"gamma_max", 2.0}, {"steps", 401}}}},
                      "--out " + out.string());
    REQUIRE(r.code == 0);
    std::string header;
    const auto rows = csv_rows(slurp(out), &header);
    CHECK(header == "gamma,re_lambda0,im_lambda0,re_lambda_plus,im_lambda_plus,re_lambda_minus,im_lambda_minus,regime");
    CHECK(rows.size() == 401);
    const json side = json::parse(slurp(out.string() + ".ep.json"));
    CHECK(std::abs(side.at("gamma_c_positive").get<double>() - 1.0) <= 1e-9);
    CHECK(std::abs(side.at("gamma_c_negative").get<double>() + 1.0) <= 1e-9);
    CHECK(side.at("residuals").at("positive").get<double>() <= 1e-10);
  }

  TEST_CASE("kappa = 1 and two steps") {
    const Run r = run("sweep", {{"trimer", pt_trimer(0.0, 0.0, 1.0)}, {"sweep", {{"gamma_min", -2.0}, {"gamma_max", 2.0}, {"steps", 41}}}});
    REQUIRE(r.code == 0);
    const json side = json::parse(r.err);
    CHECK(std::abs(side.at("gamma_c_positive").get<double>() - std::numbers::sqrt2) <= 1e-9);
    CHECK(std::abs(side.at("gamma_c_negative").get<double>() + std::numbers::sqrt2) <= 1e-9);

    const Run two = run("sweep", {{"trimer", pt_trimer(0.0)}, {"sweep", {{"gamma_min", -0.5}, {"gamma_max", 0.5}, {"steps", 2}}}});
    REQUIRE(two.code == 0);
    CHECK(csv_rows(two.out, nullptr).size() == 2);
    CHECK(json::parse(two.err).at("gamma_c_positive").is_null());
  }

  TEST_CASE("json output embeds the exceptional points") {
    const Run r = run("sweep", {{"trimer", pt_trimer(0.0)}, {"sweep", {{"gamma_min", -2.0}, {"gamma_max", 2.0}, {"steps", 21}}}},
                      "--format json");
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc.at("rows").size() == 21);
    CHECK(std::abs(doc.at("ep").at("gamma_c_positive").get<double>() - 1.0) <= 1e-9);
  }
}

TEST_SUITE("cli cospectral") {
  TEST_CASE("engineered trimer") {
    const Run r = run("cospectral", {{"network", engineered_network()}});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    bool found = false;
    for (const auto& p : doc.at("pairs")) {
      const bool is01 = p.at("pair") == json::array({0, 1});
      CHECK(p.at("cospectral").get<bool>() == is01);
      if (is01) {
        found = true;
        CHECK(p.at("singlets") == json::array({2}));
      }
    }
    CHECK(found);
    CHECK(doc.at("trimer_conditions").at("latent_symmetric") == true);
  }

  TEST_CASE("unequal gain gives no cospectral pairs") {
    json net = engineered_network();
    net["sites"][1]["gamma"] = 0.4;
    const Run r = run("cospectral", {{"network", net}});
    REQUIRE(r.code == 0);
    for (const auto& p : json::parse(r.out).at("pairs")) CHECK(p.at("cospectral") == false);
  }

  TEST_CASE("asymmetric couplings with matching products") {
    json net = engineered_network();
    // g02 = 2, g20 = 0.5, g12 = g21 = 1
    net["couplings"][2]["g"] = 2.0;
    net["couplings"][3]["g"] = 0.5;
    net["couplings"][4]["g"] = 1.0;
    net["couplings"][5]["g"] = 1.0;
    const Run r = run("cospectral", {{"network", net}});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out).at("pairs")[0].at("cospectral") == true);
  }

  TEST_CASE("a single site is a config error") {
    const Run r = run("cospectral", {{"network", {{"sites", {{{"omega", 0.0}}}}}}});
    CHECK(r.code == 1);
    CHECK(r.err.find("network.sites") != std::string::npos);
  }
}

TEST_SUITE("cli contract") {
  TEST_CASE("identical configs give byte-identical files") {
    const json cfg = {{"trimer", pt_trimer(0.5, 0.2)}, {"grid", {{"t_end", 10.0}, {"steps", 301}}}};
    const Run a = run("evolve", cfg);
    const Run b = run("evolve", cfg, "", "LSTRIMER_THREADS=4");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const json sweep = {{"trimer", pt_trimer(0.0)}, {"sweep", {{"gamma_min", -2.0}, {"gamma_max", 2.0}, {"steps", 401}}}};
    const Run c = run("sweep", sweep, "", "LSTRIMER_THREADS=1");
    const Run d = run("sweep", sweep, "", "LSTRIMER_THREADS=3");
    CHECK(c.out == d.out);
    CHECK(c.err == d.err);
    const Run e = run("spectrum", {{"trimer", pt_trimer(1.0)}});
    const Run f = run("spectrum", {{"trimer", pt_trimer(1.0)}});
    CHECK(e.out == f.out);
  }

  TEST_CASE("config errors name the field and exit 1") {
    const Run unknown = run("spectrum", {{"trimer", pt_trimer(0.5)}, {"colour", 1}});
    CHECK(unknown.code == 1);
    CHECK(unknown.err.find("colour") != std::string::npos);

    json t = pt_trimer(0.5);
    t["kappa"] = -1.0;
    const Run kappa = run("spectrum", {{"trimer", t}});
    CHECK(kappa.code == 1);
    CHECK(kappa.err.find("trimer.kappa") != std::string::npos);

    const Run both = run("spectrum", {{"trimer", pt_trimer(0.5)}, {"network", engineered_network()}});
    CHECK(both.code == 1);

    const Run dark_net = run("evolve", {{"network", engineered_network()}, {"initial_state", "dark"}});
    CHECK(dark_net.code == 1);
    CHECK(dark_net.err.find("initial_state") != std::string::npos);

    const Run wrong = run("evolve", {{"command", "sweep"}, {"trimer", pt_trimer(0.5)}});
    CHECK(wrong.code == 1);
    CHECK(wrong.err.find("command") != std::string::npos);

    const Run no_sweep = run("sweep", {{"trimer", pt_trimer(0.5)}});
    CHECK(no_sweep.code == 1);
    CHECK(no_sweep.err.find("sweep") != std::string::npos);
  }

  TEST_CASE("malformed JSON and bad arguments exit 1") {
    const fs::path cfg = scratch() / "broken.json";
    std::ofstream(cfg) << "{\"trimer\": ";
    const std::string line = std::string(kCli) + " spectrum --config " + cfg.string() + " >/dev/null 2>&1";
    CHECK(WEXITSTATUS(std::system(line.c_str())) == 1);
    CHECK(WEXITSTATUS(std::system((std::string(kCli) + " spectrum >/dev/null 2>&1").c_str())) == 1);
    CHECK(WEXITSTATUS(std::system((std::string(kCli) + " plot --config x >/dev/null 2>&1").c_str())) == 1);
    const Run fmt = run("spectrum", {{"trimer", pt_trimer(0.5)}}, "--format xml");
    CHECK(fmt.code == 1);
  }

  TEST_CASE("--tol overrides the comparison tolerance") {
    json net = engineered_network();
    net["couplings"][5]["g"] = 1.0 / std::numbers::sqrt2 + 1e-6;
    const Run strict = run("cospectral", {{"network", net}});
    const Run loose = run("cospectral", {{"network", net}}, "--tol 1e-4");
    REQUIRE(strict.code == 0);
    REQUIRE(loose.code == 0);
    CHECK(json::parse(strict.out).at("pairs")[0].at("cospectral") == false);
    CHECK(json::parse(loose.out).at("pairs")[0].at("cospectral") == true);
  }

  TEST_CASE("--out writes the file, stdout stays empty") {
    const fs::path out = scratch() / "spectrum.json";
    const Run r = run("spectrum", {{"trimer", pt_trimer(0.5)}}, "--out " + out.string());
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    CHECK(json::parse(slurp(out)).at("command") == "spectrum");
  }
}
