#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "calr/errors.hpp"
#include "calr/solver.hpp"
#include "calr/spectrum.hpp"

namespace calr::lab {

namespace {

using ojson = nlohmann::ordered_json;

std::ofstream open_output(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream f(dir / name, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
  return f;
}

void write_json(const std::filesystem::path& dir, const std::string& name, const ojson& doc) {
  auto f = open_output(dir, name);
  f << doc.dump(2) << '\n';
}

void csv_row(std::ostream& os, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) os << ',';
    os << format_double(v);
    first = false;
  }
  os << '\n';
}

// JSON has no inf/nan; emit null for them.
ojson num(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

ojson regime_json(const Regime& r) {
  ojson j;
  j["regime"] = std::string(to_string(r.kind));
  j["rho_star"] = r.rho_star;
  j["far_bound_rho"] = r.far_bound_rho;
  return j;
}

std::vector<EllipticPoint> probes_for(const RunConfig& c, const Regime& regime) {
  if (c.sweep.probes) return *c.sweep.probes;
  return {EllipticPoint::make(regime.far_bound_rho + 0.1, 0.3)};
}

void log_line(const CommandContext& ctx, const std::string& s) {
  if (ctx.log) *ctx.log << s << '\n';
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int cmd_spectrum(const CommandContext& ctx) {
  const ConfocalGeometry& g = require_geometry(ctx.config);
  const int n_max = ctx.config.spectrum_n_max;
  const auto table = mode_table(n_max, g);
  auto f = open_output(ctx.out_dir, "spectrum.csv");
  f << "n,lambda1,lambda2,a1,a2,b,norm_1p,norm_1m,norm_2p,norm_2m\n";
  for (const auto& m : table) {
    f << m.n << ',';
    csv_row(f, {m.lambda1, m.lambda2, m.a1, m.a2, m.b, m.norm_1p, m.norm_1m, m.norm_2p, m.norm_2m});
  }
  log_line(ctx, "wrote " + std::to_string(table.size()) + " modes to " + (ctx.out_dir / "spectrum.csv").string());
  return kOk;
}

int cmd_critical_radius(const CommandContext& ctx) {
  const ConfocalGeometry& g = require_geometry(ctx.config);
  const Regime r = critical_radius(g.rho_i(), g.rho_e());
  ojson doc = regime_json(r);
  if (r.kind == RegimeKind::Thin) {
    ojson disk;
    disk["r_i"] = std::exp(g.rho_i());
    disk["r_e"] = std::exp(g.rho_e());
    disk["r_star"] = std::exp(r.rho_star);
    doc["disk_equivalent"] = disk;
  } else {
    doc["disk_equivalent"] = nullptr;
  }
  write_json(ctx.out_dir, "critical_radius.json", doc);
  log_line(ctx, doc.dump(2));
  return kOk;
}

int cmd_sweep(const CommandContext& ctx) {
  const RunConfig& c = ctx.config;
  const ConfocalGeometry& g = require_geometry(c);
  const SourceSpec& s = require_source(c);
  const Regime regime = critical_radius(g.rho_i(), g.rho_e());
  const auto probes = probes_for(c, regime);

  auto csv = open_output(ctx.out_dir, "sweep.csv");
  csv << "delta,n_max,E_direct,E_spectral,truncation_warning";
  for (std::size_t p = 0; p < probes.size(); ++p) {
    csv << ",probe" << p << "_rho,probe" << p << "_omega,probe" << p << "_abs_V,probe" << p << "_normalized";
  }
  csv << '\n';
  csv.flush();

  SweepOptions so;
  so.n_max = c.sweep.n_max;
  so.threads = c.threads;
  int warnings = 0;
  const auto records = sweep(s, g, c.sweep.deltas, probes, so, [&](const SweepRecord& r) {
    csv << format_double(r.delta) << ',' << r.n_max << ',' << format_double(r.E_direct) << ','
        << format_double(r.E_spectral) << ',' << (r.truncation_warning ? 1 : 0);
    for (std::size_t p = 0; p < probes.size(); ++p) {
      csv << ',' << format_double(probes[p].rho) << ',' << format_double(probes[p].omega) << ','
          << format_double(r.far_samples[p]) << ',' << format_double(r.normalized_far[p]);
    }
    csv << '\n';
    csv.flush();
    if (r.truncation_warning) {
      ++warnings;
      log_line(ctx, "warning: truncation tail above 1e-10 at delta=" + format_double(r.delta) +
                        " (n_max=" + std::to_string(r.n_max) + ")");
    }
  });

  const Diagnosis d = calr_classify(records, regime);
  int n_gc = 0;
  for (const auto& r : records) n_gc = std::max(n_gc, r.n_max);
  const auto gc = gap_condition_report(newtonian_coefficients(s, g, std::max(n_gc, 1)), g, regime.rho_star);

  ojson doc;
  doc["geometry"] = {{"R", g.R()}, {"rho_i", g.rho_i()}, {"rho_e", g.rho_e()}};
  doc["regime"] = regime_json(regime);
  doc["verdict"] = std::string(to_string(d.verdict));
  doc["growth_exponent"] = num(d.growth_exponent);
  doc["total_growth"] = num(d.total_growth);
  doc["energy_spread"] = num(d.energy_spread);
  doc["energy_increasing"] = d.energy_increasing;
  doc["far_field_vanishing"] = d.far_field_vanishing;
  doc["far_probes"] = d.far_probes;
  doc["note"] = d.note;
  double rmin = INFINITY;
  double rmax = 0.0;
  for (const auto& r : records) {
    const double q = r.E_spectral / r.E_direct;
    rmin = std::min(rmin, q);
    rmax = std::max(rmax, q);
  }
  doc["spectral_ratio"] = {{"min", num(rmin)}, {"max", num(rmax)}};
  doc["truncation_warnings"] = warnings;
  ojson gcj;
  gcj["verdict"] = std::string(to_string(gc.verdict));
  gcj["n_max"] = std::max(n_gc, 1);
  gcj["nonzero_count"] = gc.nonzero_indices.size();
  const std::size_t tail = std::min<std::size_t>(gc.gc_log_terms.size(), 5);
  ojson last = ojson::array();
  for (std::size_t k = gc.gc_log_terms.size() - tail; k < gc.gc_log_terms.size(); ++k) last.push_back(num(gc.gc_log_terms[k]));
  gcj["last_log_terms"] = last;
  doc["gap_condition"] = gcj;
  write_json(ctx.out_dir, "sweep.json", doc);
  log_line(ctx, "verdict " + std::string(to_string(d.verdict)) + ", growth exponent " + format_double(d.growth_exponent));
  return kOk;
}

int cmd_field(const CommandContext& ctx) {
  const RunConfig& c = ctx.config;
  const ConfocalGeometry& g = require_geometry(c);
  const SourceSpec& s = require_source(c);
  const FieldConfig& fc = c.field;
  const int n_max = fc.n_max > 0 ? fc.n_max : adaptive_n_max(fc.delta, g, source_radius(s));
  const Solution sol = solve(s, ShellConfig(g, fc.delta, n_max));
  auto f = open_output(ctx.out_dir, "field.csv");
  f << "x1,x2,re_V,im_V,abs_V\n";
  const auto coord = [](const GridAxis& a, int k) { return a.min + (a.max - a.min) * k / (a.count - 1); };
  for (int j = 0; j < fc.x2.count; ++j) {
    for (int i = 0; i < fc.x1.count; ++i) {
      const Vec2 x{coord(fc.x1, i), coord(fc.x2, j)};
      f << format_double(x.x) << ',' << format_double(x.y) << ',';
      try {
        const cplx v = eval_potential(sol, to_elliptic(g.R(), x));
        csv_row(f, {v.real(), v.imag(), std::abs(v)});
      } catch (const DegeneratePoint&) {
        f << "null,null,null\n";
      } catch (const SingularPoint&) {
        f << "null,null,null\n";
      }
    }
  }
  log_line(ctx, "wrote " + std::to_string(fc.x1.count * fc.x2.count) + " grid points (n_max=" + std::to_string(n_max) + ")");
  return kOk;
}

int cmd_validate(const CommandContext& ctx) {
  SuiteOptions so = ctx.config.validate.suite;
  so.threads = ctx.config.threads;
  Suite suite(so);
  ojson doc;
  ojson crit = ojson::array();
  bool failed = false;
  for (int id : ctx.config.validate.criteria) {
    const CriterionResult r = suite.run(id);
    failed = failed || r.status() == CheckStatus::Fail;
    ojson cj;
    cj["id"] = r.id;
    cj["title"] = r.title;
    cj["status"] = std::string(to_string(r.status()));
    cj["seconds"] = r.seconds;
    ojson checks = ojson::array();
    for (const auto& ch : r.checks) {
      checks.push_back({{"name", ch.name},
                        {"status", std::string(to_string(ch.status))},
                        {"observed", num(ch.observed)},
                        {"relation", ch.relation},
                        {"threshold", num(ch.threshold)},
                        {"detail", ch.detail}});
    }
    cj["checks"] = checks;
    crit.push_back(cj);
    log_line(ctx, "criterion " + std::to_string(r.id) + " [" + std::string(to_string(r.status())) + "] " + r.title +
                      ": " + r.summary());
  }
  doc["status"] = failed ? "FAIL" : "PASS";
  doc["criteria"] = crit;
  write_json(ctx.out_dir, "validate.json", doc);
  return failed ? kValidationFailure : kOk;
}

int run_command(const std::string& name, const std::filesystem::path& config_path,
                const std::filesystem::path* out_override, int threads_override, std::ostream& out,
                std::ostream& err) {
  try {
    CommandContext ctx;
    ctx.config = load_config(config_path);
    if (threads_override > 0) ctx.config.threads = threads_override;
    ctx.out_dir = out_override ? *out_override
                               : std::filesystem::path(ctx.config.output_dir.value_or("."));
    ctx.log = &out;
    if (name == "spectrum") return cmd_spectrum(ctx);
    if (name == "critical-radius") return cmd_critical_radius(ctx);
    if (name == "sweep") return cmd_sweep(ctx);
    if (name == "field") return cmd_field(ctx);
    if (name == "validate") return cmd_validate(ctx);
    err << "unknown command: " << name << '\n';
    return kConfigError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const calr::Error& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericFailure;
  }
}

}  // namespace calr::lab
