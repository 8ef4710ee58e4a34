#include "config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace calr::lab {

namespace {

using nlohmann::json;

std::string join(const std::string& base, const std::string& key) { return base.empty() ? key : base + "." + key; }
std::string index(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

const json* find(const json& obj, const std::string& key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

double number(const json& obj, const std::string& base, const std::string& key) {
  const json* v = find(obj, key);
  if (!v) throw ConfigError(join(base, key), "missing required field");
  return as_number(*v, join(base, key));
}

double number_or(const json& obj, const std::string& base, const std::string& key, double fallback) {
  const json* v = find(obj, key);
  return v ? as_number(*v, join(base, key)) : fallback;
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<int>();
}

int integer_or(const json& obj, const std::string& base, const std::string& key, int fallback) {
  const json* v = find(obj, key);
  return v ? integer(*v, join(base, key)) : fallback;
}

// "adaptive" or a positive integer; 0 encodes adaptive.
int n_max_policy(const json& obj, const std::string& base) {
  const json* v = find(obj, "n_max");
  if (!v) return 0;
  const std::string path = join(base, "n_max");
  if (v->is_string()) {
    if (v->get<std::string>() == "adaptive") return 0;
    throw ConfigError(path, "expected \"adaptive\" or a positive integer");
  }
  const int n = integer(*v, path);
  if (n < 1) throw ConfigError(path, "must be >= 1");
  return n;
}

std::vector<double> number_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_number(j[i], index(path, i)));
  return out;
}

// {"rho": .., "omega": ..} or {"x": .., "y": ..}.
EllipticPoint point(const json& j, const std::string& path, double R) {
  require_object(j, path);
  if (find(j, "rho")) {
    const double rho = number(j, path, "rho");
    const double omega = number_or(j, path, "omega", 0.0);
    if (!(rho > 0.0)) throw ConfigError(join(path, "rho"), "must be > 0");
    return EllipticPoint::make(rho, omega);
  }
  if (find(j, "x")) {
    const Vec2 x{number(j, path, "x"), number(j, path, "y")};
    try {
      return to_elliptic(R, x);
    } catch (const std::exception& e) {
      throw ConfigError(path, std::string("point is on the focal segment: ") + e.what());
    }
  }
  throw ConfigError(path, "expected {\"rho\", \"omega\"} or {\"x\", \"y\"}");
}

ConfocalGeometry parse_geometry(const json& j) {
  const std::string base = "geometry";
  require_object(j, base);
  const double R = number_or(j, base, "R", 1.0);
  const double ri = number(j, base, "rho_i");
  const double re = number(j, base, "rho_e");
  if (!(R > 0.0)) throw ConfigError("geometry.R", "must be > 0");
  if (!(ri > 0.0)) throw ConfigError("geometry.rho_i", "must be > 0");
  if (!(re > ri)) throw ConfigError("geometry.rho_e", "must exceed geometry.rho_i");
  return ConfocalGeometry(R, ri, re);
}

void check_outside(const EllipticPoint& p, const ConfocalGeometry& g, const std::string& path) {
  if (!(p.rho > g.rho_e())) {
    throw ConfigError(path, "source must lie outside the shell (rho > geometry.rho_e = " + std::to_string(g.rho_e()) + ")");
  }
}

SourceSpec parse_source(const json& j, const ConfocalGeometry& g) {
  const std::string base = "source";
  require_object(j, base);
  const json* type = find(j, "type");
  if (!type || !type->is_string()) throw ConfigError("source.type", "expected \"dipole\", \"charge_pair\" or \"coefficients\"");
  const std::string t = type->get<std::string>();
  if (t == "dipole") {
    const json* loc = find(j, "location");
    if (!loc) throw ConfigError("source.location", "missing required field");
    const EllipticPoint p = point(*loc, "source.location", g.R());
    check_outside(p, g, "source.location");
    const json* m = find(j, "moment");
    if (!m) throw ConfigError("source.moment", "missing required field");
    const auto mv = number_list(*m, "source.moment");
    if (mv.size() != 2) throw ConfigError("source.moment", "expected two components");
    return Dipole{p, {mv[0], mv[1]}};
  }
  if (t == "charge_pair") {
    const json* plus = find(j, "plus");
    const json* minus = find(j, "minus");
    if (!plus) throw ConfigError("source.plus", "missing required field");
    if (!minus) throw ConfigError("source.minus", "missing required field");
    const EllipticPoint pp = point(*plus, "source.plus", g.R());
    const EllipticPoint pm = point(*minus, "source.minus", g.R());
    check_outside(pp, g, "source.plus");
    check_outside(pm, g, "source.minus");
    return ChargePair{pp, pm, number_or(j, base, "charge", 1.0)};
  }
  if (t == "coefficients") {
    CoefficientSource cs;
    cs.c = number_or(j, base, "c", 0.0);
    const json* fp = find(j, "F_plus");
    const json* fm = find(j, "F_minus");
    if (!fp) throw ConfigError("source.F_plus", "missing required field");
    if (!fm) throw ConfigError("source.F_minus", "missing required field");
    cs.F_plus = number_list(*fp, "source.F_plus");
    cs.F_minus = number_list(*fm, "source.F_minus");
    if (cs.F_plus.size() != cs.F_minus.size()) throw ConfigError("source.F_minus", "must have the same length as F_plus");
    return cs;
  }
  throw ConfigError("source.type", "unknown source type \"" + t + "\"");
}

GridAxis parse_axis(const json& j, const std::string& path) {
  require_object(j, path);
  GridAxis a{number(j, path, "min"), number(j, path, "max"), integer_or(j, path, "count", 61)};
  if (!(a.max > a.min)) throw ConfigError(join(path, "max"), "must exceed min");
  if (a.count < 2) throw ConfigError(join(path, "count"), "must be >= 2");
  return a;
}

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

ConfigError::ConfigError(std::string path, const std::string& message)
    : std::runtime_error(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", "invalid JSON at " + line_col(text, e.byte > 0 ? e.byte - 1 : 0) + ": " + e.what());
  }
  require_object(root, "<root>");
  RunConfig cfg;
  if (const json* g = find(root, "geometry")) cfg.geometry = parse_geometry(*g);
  if (const json* s = find(root, "source")) {
    if (!cfg.geometry) throw ConfigError("geometry", "required when a source is given");
    cfg.source = parse_source(*s, *cfg.geometry);
  }
  if (const json* s = find(root, "spectrum")) {
    require_object(*s, "spectrum");
    cfg.spectrum_n_max = integer_or(*s, "spectrum", "n_max", cfg.spectrum_n_max);
    if (cfg.spectrum_n_max < 0) throw ConfigError("spectrum.n_max", "must be >= 0");
  }
  if (const json* s = find(root, "sweep")) {
    require_object(*s, "sweep");
    if (const json* d = find(*s, "deltas")) {
      cfg.sweep.deltas = number_list(*d, "sweep.deltas");
      if (cfg.sweep.deltas.empty()) throw ConfigError("sweep.deltas", "must not be empty");
      for (std::size_t i = 0; i < cfg.sweep.deltas.size(); ++i) {
        if (!(cfg.sweep.deltas[i] > 0.0)) throw ConfigError(index("sweep.deltas", i), "must be > 0");
        if (i > 0 && !(cfg.sweep.deltas[i] < cfg.sweep.deltas[i - 1])) {
          throw ConfigError(index("sweep.deltas", i), "deltas must be strictly descending");
        }
      }
    }
    if (const json* p = find(*s, "probes")) {
      if (!p->is_array()) throw ConfigError("sweep.probes", "expected an array of points");
      if (!cfg.geometry) throw ConfigError("geometry", "required when probes are given");
      std::vector<EllipticPoint> probes;
      for (std::size_t i = 0; i < p->size(); ++i) {
        const EllipticPoint q = point((*p)[i], index("sweep.probes", i), cfg.geometry->R());
        if (!(q.rho > cfg.geometry->rho_e())) throw ConfigError(index("sweep.probes", i), "probe must lie outside the shell");
        probes.push_back(q);
      }
      cfg.sweep.probes = std::move(probes);
    }
    cfg.sweep.n_max = n_max_policy(*s, "sweep");
  }
  if (const json* f = find(root, "field")) {
    require_object(*f, "field");
    cfg.field.delta = number_or(*f, "field", "delta", cfg.field.delta);
    if (!(cfg.field.delta > 0.0)) throw ConfigError("field.delta", "must be > 0");
    cfg.field.n_max = n_max_policy(*f, "field");
    if (const json* a = find(*f, "x1")) cfg.field.x1 = parse_axis(*a, "field.x1");
    if (const json* a = find(*f, "x2")) cfg.field.x2 = parse_axis(*a, "field.x2");
  }
  if (const json* v = find(root, "validate")) {
    require_object(*v, "validate");
    auto& so = cfg.validate.suite;
    so.block_N = integer_or(*v, "validate", "N", so.block_N);
    so.single_N = integer_or(*v, "validate", "single_N", so.single_N);
    so.single_rho = number_or(*v, "validate", "single_rho", so.single_rho);
    if (so.block_N < 8 || so.block_N % 2) throw ConfigError("validate.N", "must be an even integer >= 8");
    if (so.single_N < 56 || so.single_N % 2) throw ConfigError("validate.single_N", "must be an even integer >= 56");
    if (const json* flip = find(*v, "debug_flip_inner_block")) {
      if (!flip->is_boolean()) throw ConfigError("validate.debug_flip_inner_block", "expected a boolean");
      so.flip_inner_block = flip->get<bool>();
    }
    if (const json* c = find(*v, "criteria")) {
      if (!c->is_array()) throw ConfigError("validate.criteria", "expected an array of integers");
      cfg.validate.criteria.clear();
      for (std::size_t i = 0; i < c->size(); ++i) {
        const int id = integer((*c)[i], index("validate.criteria", i));
        if (id < 1 || id > Suite::kCriteria) throw ConfigError(index("validate.criteria", i), "must be in 1..9");
        cfg.validate.criteria.push_back(id);
      }
    }
  }
  if (cfg.geometry) {
    cfg.validate.suite.R = cfg.geometry->R();
    cfg.validate.suite.rho_i = cfg.geometry->rho_i();
    cfg.validate.suite.rho_e = cfg.geometry->rho_e();
  }
  if (const json* o = find(root, "output")) {
    require_object(*o, "output");
    if (const json* d = find(*o, "dir")) {
      if (!d->is_string()) throw ConfigError("output.dir", "expected a string");
      cfg.output_dir = d->get<std::string>();
    }
  }
  if (const json* t = find(root, "threads")) {
    cfg.threads = integer(*t, "threads");
    if (cfg.threads < 1) throw ConfigError("threads", "must be >= 1");
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

const ConfocalGeometry& require_geometry(const RunConfig& c) {
  if (!c.geometry) throw ConfigError("geometry", "missing required block");
  return *c.geometry;
}

const SourceSpec& require_source(const RunConfig& c) {
  if (!c.source) throw ConfigError("source", "missing required block");
  return *c.source;
}

}  // namespace calr::lab
