#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "calr/solver.hpp"
#include "commands.hpp"
#include "config.hpp"

using namespace calr;
using namespace calr::lab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "calr_cli_tests" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

struct Run {
  int code;
  std::string out;
  std::string err;
  fs::path dir;
};

Run run(const std::string& cmd, const std::string& config_text, const std::string& name) {
  const fs::path dir = scratch(name);
  const fs::path cfg = dir / "config.json";
  std::ofstream(cfg) << config_text;
  const fs::path out = dir / "out";
  std::ostringstream o, e;
  const int code = run_command(cmd, cfg, &out, 0, o, e);
  return {code, o.str(), e.str(), out};
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string c;
    while (std::getline(ls, c, ',')) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

const std::string kGeometry = R"("geometry": {"R": 1.0, "rho_i": 0.5, "rho_e": 0.8})";
const std::string kDipole =
    R"("source": {"type": "dipole", "location": {"rho": 0.9, "omega": 0.7}, "moment": [1.0, 0.5]})";

std::string doc(std::initializer_list<std::string> parts) {
  std::string s = "{";
  bool first = true;
  for (const auto& p : parts) {
    if (!first) s += ",";
    s += p;
    first = false;
  }
  return s + "}";
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config errors name the offending field") {
  auto path_of = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return e.path();
    }
    return std::string("<none>");
  };
  CHECK(path_of(R"({"geometry": {"rho_i": 0.5}})") == "geometry.rho_e");
  CHECK(path_of(R"({"geometry": {"rho_i": 0.5, "rho_e": 0.8}, "sweep": {"deltas": [1e-2, "x"]}})") ==
        "sweep.deltas[1]");
  CHECK(path_of(R"({"geometry": {"rho_i": 0.5, "rho_e": 0.8}, "sweep": {"deltas": []}})") == "sweep.deltas");
  CHECK(path_of(R"({"geometry": {"rho_i": 0.5, "rho_e": 0.8}, "source": {"type": "laser"}})") == "source.type");
  CHECK(path_of(R"({"geometry": {"rho_i": 0.5, "rho_e": 0.8},
                    "source": {"type": "dipole", "location": {"rho": 0.7}, "moment": [1, 0]}})") ==
        "source.location");
  CHECK(path_of(R"({"validate": {"single_N": 32}})") == "validate.single_N");
  CHECK(path_of(R"({"sweep": {"n_max": "lots"}})") == "sweep.n_max");
  CHECK_THROWS_AS(parse_config("{"), ConfigError);
  CHECK_THROWS_AS(parse_config("[]"), ConfigError);
  CHECK_THROWS_AS(require_geometry(parse_config("{}")), ConfigError);
  CHECK_THROWS_AS(require_source(parse_config(doc({kGeometry}))), ConfigError);
}

TEST_CASE("config parsing") {
  const RunConfig c = parse_config(doc({kGeometry, kDipole,
                                        R"("sweep": {"probes": [{"x": 0.0, "y": 2.0}], "n_max": 80})",
                                        R"("threads": 3)"}));
  CHECK(c.geometry->rho_e() == 0.8);
  CHECK(std::holds_alternative<Dipole>(*c.source));
  REQUIRE(c.sweep.probes);
  CHECK(c.sweep.probes->at(0).rho == doctest::Approx(std::asinh(2.0)));
  CHECK(c.sweep.n_max == 80);
  CHECK(c.threads == 3);
  CHECK(c.sweep.deltas.size() == 7);
}

TEST_CASE("spectrum output") {
  const Run r = run("spectrum", doc({kGeometry, R"("spectrum": {"n_max": 5})"}), "spectrum");
  REQUIRE(r.code == 0);
  const std::string text = slurp(r.dir / "spectrum.csv");
  CHECK(text.find('\r') == std::string::npos);
  const auto rows = read_csv(r.dir / "spectrum.csv");
  REQUIRE(rows.size() == 6);
  CHECK(rows[0][0] == "n");
  CHECK(rows[0].size() == 10);
  const double l1 = std::stod(rows[1][1]);
  CHECK(l1 == mode_data(1, ConfocalGeometry(1.0, 0.5, 0.8)).lambda1);  // %.17g round-trips

  const Run empty = run("spectrum", doc({kGeometry, R"("spectrum": {"n_max": 0})"}), "spectrum_empty");
  REQUIRE(empty.code == 0);
  CHECK(read_csv(empty.dir / "spectrum.csv").size() == 1);
}

TEST_CASE("exit codes") {
  CHECK(run("spectrum", R"({"geometry": {"rho_i": 0.8, "rho_e": 0.5}})", "inverted").code == kConfigError);
  CHECK(run("sweep", doc({kGeometry, kDipole, R"("sweep": {"deltas": []})"}), "nodeltas").code == kConfigError);
  CHECK(run("sweep", doc({kGeometry, kDipole, R"("sweep": {"deltas": [1e-3, 1e-2]})"}), "ascending").code ==
        kConfigError);
  CHECK(run("nonsense", doc({kGeometry}), "unknown").code == kConfigError);
  CHECK(run("spectrum", doc({kGeometry, R"("spectrum": {"n_max": 2000})"}), "overflow").code == kNumericFailure);
  std::ostringstream o, e;
  const fs::path out = scratch("missing");
  CHECK(run_command("spectrum", "/nonexistent/config.json", &out, 0, o, e) == kConfigError);
}

TEST_CASE("critical radius document") {
  const Run r = run("critical-radius", doc({kGeometry}), "critical");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(slurp(r.dir / "critical_radius.json"));
  CHECK(j["regime"] == "Thin");
  CHECK(j["rho_star"].get<double>() == doctest::Approx(0.95));
  CHECK(j["far_bound_rho"].get<double>() == doctest::Approx(1.1));
}

TEST_CASE("runs are deterministic") {
  const std::string cfg = doc({kGeometry, kDipole, R"("sweep": {"deltas": [1e-2, 1e-3, 1e-4, 1e-5, 1e-6]})"});
  const Run a = run("sweep", cfg, "det_a");
  const Run b = run("sweep", cfg, "det_b");
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(slurp(a.dir / "sweep.csv") == slurp(b.dir / "sweep.csv"));
  CHECK(slurp(a.dir / "sweep.json") == slurp(b.dir / "sweep.json"));
  const auto j = nlohmann::ordered_json::parse(slurp(a.dir / "sweep.json"));
  CHECK(j["verdict"] == "CALR");
  const auto rows = read_csv(a.dir / "sweep.csv");
  CHECK(rows.size() == 6);
  CHECK(rows[0][0] == "delta");
}

TEST_CASE("field output") {
  const std::string grid = R"("field": {"delta": 1e-3, "n_max": 60,
      "x1": {"min": -2.0, "max": 2.0, "count": 9}, "x2": {"min": -1.0, "max": 1.0, "count": 5}})";
  SUBCASE("zero source gives a zero field and nulls on the focal segment") {
    const Run r = run("field",
                      doc({kGeometry, R"("source": {"type": "coefficients", "F_plus": [0, 0], "F_minus": [0, 0]})", grid}),
                      "field_zero");
    REQUIRE(r.code == 0);
    const auto rows = read_csv(r.dir / "field.csv");
    REQUIRE(rows.size() == 46);
    CHECK(rows[0] == std::vector<std::string>{"x1", "x2", "re_V", "im_V", "abs_V"});
    int nulls = 0;
    for (std::size_t k = 1; k < rows.size(); ++k) {
      const double x = std::stod(rows[k][0]);
      const double y = std::stod(rows[k][1]);
      if (rows[k][2] == "null") {
        ++nulls;
        CHECK(y == 0.0);
        CHECK(std::abs(x) <= 1.0);
      } else {
        CHECK(std::stod(rows[k][4]) == 0.0);
      }
    }
    CHECK(nulls == 5);  // x1 = -1, -0.5, 0, 0.5, 1 on x2 = 0
  }
  SUBCASE("values equal the library evaluation") {
    const Run r = run("field", doc({kGeometry, kDipole, grid}), "field_dipole");
    REQUIRE(r.code == 0);
    const ConfocalGeometry g(1.0, 0.5, 0.8);
    const Dipole d{EllipticPoint::make(0.9, 0.7), {1.0, 0.5}};
    const Solution sol = solve(d, ShellConfig(g, 1e-3, 60));
    const auto rows = read_csv(r.dir / "field.csv");
    for (std::size_t k = 1; k < rows.size(); ++k) {
      if (rows[k][2] == "null") continue;
      const Vec2 x{std::stod(rows[k][0]), std::stod(rows[k][1])};
      const cplx v = eval_potential(sol, to_elliptic(1.0, x));
      CHECK(std::abs(std::stod(rows[k][2]) - v.real()) <= 1e-14 * (1.0 + std::abs(v)));
      CHECK(std::abs(std::stod(rows[k][3]) - v.imag()) <= 1e-14 * (1.0 + std::abs(v)));
    }
  }
}

TEST_CASE("resonance stays localized near the shell") {
  const ConfocalGeometry g(1.0, 0.5, 0.8);
  const double far_bound = critical_radius(0.5, 0.8).far_bound_rho;
  auto maxima = [&](double delta, const std::string& name) {
    const Run r = run("field",
                      doc({kGeometry, kDipole,
                           R"("field": {"delta": )" + std::to_string(delta) +
                               R"(, "x1": {"min": -3.0, "max": 3.0, "count": 61}, "x2": {"min": -2.0, "max": 2.0, "count": 41}})"}),
                      name);
    REQUIRE(r.code == 0);
    double shell = 0.0, far = 0.0;
    const auto rows = read_csv(r.dir / "field.csv");
    for (std::size_t k = 1; k < rows.size(); ++k) {
      if (rows[k][2] == "null") continue;
      const EllipticPoint p = to_elliptic(1.0, {std::stod(rows[k][0]), std::stod(rows[k][1])});
      const double a = std::stod(rows[k][4]);
      if (p.rho > g.rho_i() && p.rho < g.rho_e()) shell = std::max(shell, a);
      if (p.rho > far_bound) far = std::max(far, a);
    }
    return std::pair{shell, far};
  };
  const auto [s2, f2] = maxima(1e-2, "loc_2");
  const auto [s5, f5] = maxima(1e-5, "loc_5");
  CHECK(s5 > 10.0 * s2);
  CHECK(f5 < 2.0 * f2);
  CHECK(f5 > 0.5 * f2);
}

TEST_CASE("validate mutation and small-N paths") {
  const Run flipped = run("validate", R"({"validate": {"N": 128, "single_N": 64, "debug_flip_inner_block": true, "criteria": [1]}})",
                          "validate_flip");
  CHECK(flipped.code == kValidationFailure);
  const auto jf = nlohmann::json::parse(slurp(flipped.dir / "validate.json"));
  CHECK(jf["status"] == "FAIL");

  const Run small = run("validate", R"({"validate": {"N": 32, "single_N": 64, "criteria": [1]}})", "validate_small");
  const auto js = nlohmann::json::parse(slurp(small.dir / "validate.json"));
  bool saw_indeterminate = false;
  for (const auto& ch : js["criteria"][0]["checks"]) {
    if (ch["name"].get<std::string>().find("convergence") != std::string::npos) {
      CHECK(ch["status"] == "INDETERMINATE");
      saw_indeterminate = true;
    }
  }
  CHECK(saw_indeterminate);
}

TEST_CASE("bundled configs load") {
  for (const char* name : {"dipole_inside.json", "dipole_outside.json"}) {
    const RunConfig c = load_config(fs::path(CALR_CONFIG_DIR) / name);
    CHECK(c.geometry);
    CHECK(c.source);
    CHECK(c.sweep.probes->size() == 2);
  }
}

}
