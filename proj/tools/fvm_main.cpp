// Command-line front end. Every subcommand writes a machine-readable table
// (CSV by default, JSON on request) whose first row echoes the resolved
// configuration and toolkit version. Seeds are explicit arguments: there is
// no environment fallback, so every stochastic run is auditable.
//
// Exit codes: 0 success, 1 failed acceptance run, 2 usage error, 3 domain error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "fvm/acceptance.hpp"
#include "fvm/dirdep.hpp"
#include "fvm/euler_poly.hpp"
#include "fvm/geo2d.hpp"
#include "fvm/io.hpp"
#include "fvm/mc.hpp"
#include "fvm/planar.hpp"
#include "fvm/quad.hpp"
#include "fvm/telegraph.hpp"
#include "fvm/timevar.hpp"
#include "fvm/velocity_map.hpp"
#include "fvm/version.hpp"

namespace {

using fvm::fmt_g17;

struct Output {
  std::string path;      // empty = stdout
  std::string format;    // "csv" or "json"
  std::ostringstream buf;

  void flush() {
    if (path.empty()) {
      std::cout << buf.str();
    } else {
      std::ofstream f(path, std::ios::binary);
      if (!f) throw std::runtime_error("cannot open output file: " + path);
      f << buf.str();
    }
  }
};

// key=value metadata echo; doubles at 17 digits.
class Meta {
 public:
  explicit Meta(std::string cmd) : cmd_(std::move(cmd)) {}
  Meta& add(const std::string& k, double v) { return add_raw(k, fmt_g17(v)); }
  Meta& add(const std::string& k, long v) { return add_raw(k, std::to_string(v)); }
  Meta& add(const std::string& k, std::uint64_t v) { return add_raw(k, std::to_string(v)); }
  Meta& add(const std::string& k, const std::string& v) { return add_raw(k, v); }

  std::string csv_line() const {
    std::string line = "# fvm " + std::string(fvm::kVersion) + " cmd=" + cmd_;
    for (const auto& [k, v] : items_) line += " " + k + "=" + v;
    return line + "\n";
  }

  std::string json_object() const {
    std::string obj = "{\"tool\": \"fvm\", \"version\": \"" + std::string(fvm::kVersion) +
                      "\", \"cmd\": \"" + cmd_ + "\"";
    for (const auto& [k, v] : items_) {
      obj += ", \"" + k + "\": ";
      const bool numeric = !v.empty() && (std::isdigit(static_cast<unsigned char>(v[0])) ||
                                          v[0] == '-' || v[0] == '+' || v[0] == '.');
      obj += numeric ? v : "\"" + fvm::json_escape(v) + "\"";
    }
    return obj + "}";
  }

 private:
  Meta& add_raw(const std::string& k, std::string v) {
    items_.emplace_back(k, std::move(v));
    return *this;
  }
  std::string cmd_;
  std::vector<std::pair<std::string, std::string>> items_;
};

// A flat numeric table with named columns.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void emit(Output& out, const Meta& meta) const {
    if (out.format == "json") {
      out.buf << "{\"meta\": " << meta.json_object() << ", \"columns\": [";
      for (std::size_t i = 0; i < columns.size(); ++i)
        out.buf << "\"" << columns[i] << "\"" << (i + 1 < columns.size() ? ", " : "");
      out.buf << "], \"data\": [";
      for (std::size_t r = 0; r < rows.size(); ++r) {
        out.buf << "[";
        for (std::size_t c = 0; c < rows[r].size(); ++c)
          out.buf << fmt_g17(rows[r][c]) << (c + 1 < rows[r].size() ? ", " : "");
        out.buf << "]" << (r + 1 < rows.size() ? ", " : "");
      }
      out.buf << "]}\n";
      return;
    }
    out.buf << meta.csv_line();
    for (std::size_t i = 0; i < columns.size(); ++i)
      out.buf << columns[i] << (i + 1 < columns.size() ? "," : "\n");
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c)
        out.buf << fmt_g17(row[c]) << (c + 1 < row.size() ? "," : "\n");
    }
  }
};

struct CommonOpts {
  std::string out_path;
  std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--out", c.out_path, "write output to a file instead of stdout");
  cmd->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

fvm::VelocityModel make_model(const std::string& family, double c, double x0, double alpha,
                              const std::string& variant) {
  if (family == "constant") return fvm::constant_model(c, x0);
  if (family == "linear") return fvm::linear_model(c, x0);
  if (family == "logistic") return fvm::logistic_model(c, x0);
  if (family == "symlogistic") return fvm::symlogistic_model(c, x0);
  if (family == "power") {
    const auto v = variant == "absorb" ? fvm::PowerVariant::absorb : fvm::PowerVariant::reflect;
    return fvm::power_model(c, alpha, x0, v);
  }
  throw CLI::ValidationError("--family", "unknown family " + family);
}

fvm::SigmaProfile make_profile(const std::string& kind, double scale, const std::string& table) {
  if (kind == "const") return fvm::SigmaProfile::constant(scale);
  if (kind == "linear") return fvm::SigmaProfile::linear(scale);
  if (kind == "table") {
    std::ifstream f(table);
    if (!f) throw std::runtime_error("cannot open sigma table: " + table);
    std::vector<double> ts, ss;
    std::string line;
    while (std::getline(f, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream row(line);
      double t, s;
      if (row >> t >> s) {
        ts.push_back(t);
        ss.push_back(s);
      }
    }
    return fvm::SigmaProfile::from_table(std::move(ts), std::move(ss));
  }
  throw CLI::ValidationError("--sigma", "unknown profile " + kind);
}

int run(int argc, char** argv) {
  CLI::App app{"finite-velocity random motion toolkit"};
  app.require_subcommand(1);

  // ---- telegraph ---------------------------------------------------------
  auto* tele = app.add_subcommand("telegraph", "constant-velocity telegraph process");
  tele->require_subcommand(1);
  struct {
    double lambda = 1.0, c = 1.0, t = 1.0;
    int n = 5, grid = 101;
    long replicas = 1000;
    std::uint64_t seed = 0;
    CommonOpts common;
  } tg;
  for (const char* name : {"sample", "density", "moments", "cdf"}) {
    auto* sub = tele->add_subcommand(name);
    sub->add_option("--lambda", tg.lambda, "switch intensity")->check(CLI::PositiveNumber);
    sub->add_option("--c", tg.c, "speed")->check(CLI::PositiveNumber);
    sub->add_option("--t", tg.t, "time horizon")->check(CLI::PositiveNumber);
    add_common(sub, tg.common);
    if (std::string(name) == "sample") {
      sub->add_option("--replicas", tg.replicas)->check(CLI::PositiveNumber);
      sub->add_option("--seed", tg.seed)->required();
    } else if (std::string(name) == "moments") {
      sub->add_option("--n", tg.n, "highest even-moment index");
    } else {
      sub->add_option("--grid", tg.grid)->check(CLI::Range(2, 10000000));
    }
  }

  // ---- motion1d ----------------------------------------------------------
  auto* mo = app.add_subcommand("motion1d", "space-varying velocity motion");
  mo->require_subcommand(1);
  struct {
    std::string family = "logistic", variant = "reflect";
    double alpha = 0.5, x0 = 0.5, lambda = 1.0, c = 1.0, t = 1.0, a = 1.0;
    int grid = 101, nterms = 30;
    bool hydro = false;
    long replicas = 1000;
    std::uint64_t seed = 0;
    CommonOpts common;
  } m1;
  for (const char* name : {"density", "support", "moment", "sample"}) {
    auto* sub = mo->add_subcommand(name);
    sub->add_option("--family", m1.family)
        ->check(CLI::IsMember({"constant", "linear", "power", "logistic", "symlogistic"}));
    sub->add_option("--alpha", m1.alpha, "power exponent in (0,1)");
    sub->add_option("--variant", m1.variant)->check(CLI::IsMember({"reflect", "absorb"}));
    sub->add_option("--x0", m1.x0, "starting point");
    sub->add_option("--lambda", m1.lambda)->check(CLI::PositiveNumber);
    sub->add_option("--c", m1.c)->check(CLI::PositiveNumber);
    sub->add_option("--t", m1.t)->check(CLI::PositiveNumber);
    add_common(sub, m1.common);
    if (std::string(name) == "density") sub->add_option("--grid", m1.grid);
    if (std::string(name) == "moment") {
      sub->add_option("--a", m1.a, "moment order");
      sub->add_option("--nterms", m1.nterms, "series truncation");
      sub->add_flag("--hydro", m1.hydro, "hydrodynamic-limit series");
    }
    if (std::string(name) == "sample") {
      sub->add_option("--replicas", m1.replicas)->check(CLI::PositiveNumber);
      sub->add_option("--seed", m1.seed)->required();
    }
  }

  // ---- planar -------------------------------------------------------------
  auto* pl = app.add_subcommand("planar", "planar orthogonal-direction motion");
  pl->require_subcommand(1);
  struct {
    double lambda = 1.0, c = 1.0, p = 0.5, t = 1.0, x0 = 0.0;
    std::string family = "constant";
    int grid = 61;
    long replicas = 1000;
    std::uint64_t seed = 0;
    CommonOpts common;
  } pn;
  for (const char* name : {"sample", "density", "boundary", "support"}) {
    auto* sub = pl->add_subcommand(name);
    sub->add_option("--lambda", pn.lambda)->check(CLI::PositiveNumber);
    sub->add_option("--c", pn.c)->check(CLI::PositiveNumber);
    sub->add_option("--p", pn.p, "switching split");
    sub->add_option("--t", pn.t)->check(CLI::PositiveNumber);
    sub->add_option("--family", pn.family)->check(CLI::IsMember({"constant", "symlogistic"}));
    sub->add_option("--x0", pn.x0, "starting coordinate (both axes)");
    sub->add_option("--grid", pn.grid)->check(CLI::PositiveNumber);
    add_common(sub, pn.common);
    if (std::string(name) == "sample") {
      sub->add_option("--replicas", pn.replicas)->check(CLI::PositiveNumber);
      sub->add_option("--seed", pn.seed)->required();
    }
  }

  // ---- dirdep --------------------------------------------------------------
  auto* dd = app.add_subcommand("dirdep", "direction-dependent velocity process");
  dd->require_subcommand(1);
  struct {
    double lambda = 1.0, c = 1.0, x0 = 0.5, t = 1.0, band = 0.01;
    int n = 4;
    long replicas = 1000;
    std::uint64_t seed = 0;
    CommonOpts common;
  } dp;
  for (const char* name : {"sample", "mean", "condmean", "collapse"}) {
    auto* sub = dd->add_subcommand(name);
    sub->add_option("--lambda", dp.lambda)->check(CLI::PositiveNumber);
    sub->add_option("--c", dp.c)->check(CLI::PositiveNumber);
    sub->add_option("--x0", dp.x0);
    sub->add_option("--t", dp.t)->check(CLI::PositiveNumber);
    add_common(sub, dp.common);
    if (std::string(name) == "condmean") sub->add_option("--n", dp.n, "max event count");
    if (std::string(name) == "collapse") {
      sub->add_option("--band", dp.band)->check(CLI::PositiveNumber);
      sub->add_option("--replicas", dp.replicas)->check(CLI::PositiveNumber);
      sub->add_option("--seed", dp.seed)->required();
    }
    if (std::string(name) == "sample") {
      sub->add_option("--replicas", dp.replicas)->check(CLI::PositiveNumber);
      sub->add_option("--seed", dp.seed)->required();
    }
  }

  // ---- timevar --------------------------------------------------------------
  auto* tv = app.add_subcommand("timevar", "time-dependent velocity process");
  tv->require_subcommand(1);
  struct {
    double lambda = 1.0, c = 1.0, s = 1.0, t = 1.0, scale = 1.0;
    std::string sigma = "const", table;
    bool limit = false;
    int grid = 101;
    long replicas = 1000;
    std::uint64_t seed = 0;
    CommonOpts common;
  } tvo;
  for (const char* name : {"sample", "cov", "limit"}) {
    auto* sub = tv->add_subcommand(name);
    sub->add_option("--lambda", tvo.lambda)->check(CLI::PositiveNumber);
    sub->add_option("--c", tvo.c)->check(CLI::PositiveNumber);
    sub->add_option("--sigma", tvo.sigma)->check(CLI::IsMember({"const", "linear", "table"}));
    sub->add_option("--scale", tvo.scale, "constant value / linear slope");
    sub->add_option("--table", tvo.table, "CSV of (t, sigma) knots");
    sub->add_option("--t", tvo.t)->check(CLI::PositiveNumber);
    add_common(sub, tvo.common);
    if (std::string(name) == "cov") {
      sub->add_option("--s", tvo.s)->check(CLI::PositiveNumber);
      sub->add_flag("--limit", tvo.limit, "hydrodynamic-limit covariance");
    }
    if (std::string(name) == "limit")
      sub->add_option("--grid", tvo.grid)->check(CLI::Range(2, 10000000));
    if (std::string(name) == "sample") {
      sub->add_option("--replicas", tvo.replicas)->check(CLI::PositiveNumber);
      sub->add_option("--seed", tvo.seed)->required();
    }
  }

  // ---- geo2d --------------------------------------------------------------
  auto* ge = app.add_subcommand("geo2d", "bivariate geometric telegraph");
  ge->require_subcommand(1);
  struct {
    double lambda = 1.0, c = 1.0, p = 0.3, x0 = 1.0, y0 = 1.0, t = 1.0;
    int grid = 41;
    long replicas = 1000;
    std::uint64_t seed = 0;
    CommonOpts common;
  } g2;
  for (const char* name : {"sample", "density", "limit", "params"}) {
    auto* sub = ge->add_subcommand(name);
    sub->add_option("--lambda", g2.lambda)->check(CLI::PositiveNumber);
    sub->add_option("--c", g2.c)->check(CLI::PositiveNumber);
    sub->add_option("--p", g2.p, "switching split in (0,1)");
    sub->add_option("--x0", g2.x0)->check(CLI::PositiveNumber);
    sub->add_option("--y0", g2.y0)->check(CLI::PositiveNumber);
    sub->add_option("--t", g2.t)->check(CLI::PositiveNumber);
    sub->add_option("--grid", g2.grid)->check(CLI::PositiveNumber);
    add_common(sub, g2.common);
    if (std::string(name) == "sample") {
      sub->add_option("--replicas", g2.replicas)->check(CLI::PositiveNumber);
      sub->add_option("--seed", g2.seed)->required();
    }
  }

  // ---- euler ---------------------------------------------------------------
  auto* eu = app.add_subcommand("euler", "generalized Euler polynomial");
  struct {
    int n = 2;
    double a = 1.0, theta = 1.0, x = 0.0;
    bool has_x = false;
    CommonOpts common;
  } ep;
  eu->add_option("--n", ep.n, "degree")->required();
  eu->add_option("--a", ep.a)->required();
  eu->add_option("--theta", ep.theta)->required();
  auto* xopt = eu->add_option("--x", ep.x, "evaluate at x");
  add_common(eu, ep.common);

  // ---- accept ----------------------------------------------------------------
  auto* ac = app.add_subcommand("accept", "run a verification suite");
  struct {
    std::string suite = "primary";
    std::uint64_t seed = 0;
    int threads = 0;
    CommonOpts common;
  } av;
  ac->add_option("--suite", av.suite)->check(CLI::IsMember({"primary"}));
  ac->add_option("--seed", av.seed)->required();
  ac->add_option("--threads", av.threads, "0 = hardware concurrency");
  add_common(ac, av.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit 0, usage errors exit 2
  }

  Output out;
  Table table;

  // --- telegraph dispatch ---
  if (tele->parsed()) {
    out = {tg.common.out_path, tg.common.format, {}};
    const fvm::TelegraphParams params{tg.lambda, tg.c};
    Meta meta("telegraph." + tele->get_subcommands()[0]->get_name());
    meta.add("lambda", tg.lambda).add("c", tg.c).add("t", tg.t);
    const std::string sub = tele->get_subcommands()[0]->get_name();
    if (sub == "sample") {
      meta.add("replicas", tg.replicas).add("seed", tg.seed);
      const auto xs = fvm::run_replicas(
          [&](fvm::RngStream& r) { return fvm::sample_endpoint(params, tg.t, r); }, tg.replicas,
          tg.seed, 1);
      table.columns = {"replica", "endpoint"};
      for (std::size_t i = 0; i < xs.size(); ++i)
        table.rows.push_back({static_cast<double>(i), xs[i]});
    } else if (sub == "density") {
      meta.add("grid", static_cast<long>(tg.grid));
      const double span = tg.c * tg.t;
      table.columns = {"z", "f"};
      for (int i = 0; i < tg.grid; ++i) {
        const double z = -span + (i + 1) * 2.0 * span / (tg.grid + 1);
        table.rows.push_back({z, fvm::density(params, z, tg.t)});
      }
    } else if (sub == "moments") {
      meta.add("n", static_cast<long>(tg.n));
      table.columns = {"n", "even_moment"};
      for (int n = 0; n <= tg.n; ++n)
        table.rows.push_back({static_cast<double>(n), fvm::moment_even(params, n, tg.t)});
    } else {
      meta.add("grid", static_cast<long>(tg.grid));
      const double span = tg.c * tg.t;
      table.columns = {"z", "F"};
      for (int i = 0; i < tg.grid; ++i) {
        const double z = -span + i * 2.0 * span / (tg.grid - 1);
        table.rows.push_back({z, fvm::cdf(params, z, tg.t)});
      }
    }
    table.emit(out, meta);
    out.flush();
    return 0;
  }

  // --- motion1d dispatch ---
  if (mo->parsed()) {
    out = {m1.common.out_path, m1.common.format, {}};
    const auto model = make_model(m1.family, m1.c, m1.x0, m1.alpha, m1.variant);
    const std::string sub = mo->get_subcommands()[0]->get_name();
    Meta meta("motion1d." + sub);
    meta.add("family", m1.family).add("x0", m1.x0).add("lambda", m1.lambda).add("c", m1.c).add("t", m1.t);
    if (m1.family == "power") meta.add("alpha", m1.alpha).add("variant", m1.variant);
    if (sub == "density") {
      meta.add("grid", static_cast<long>(m1.grid));
      const auto sup = fvm::support(model, m1.lambda, m1.t);
      table.columns = {"x", "f"};
      for (int i = 0; i < m1.grid; ++i) {
        const double x = sup.interval.lo + (i + 1) * (sup.interval.hi - sup.interval.lo) / (m1.grid + 1);
        table.rows.push_back({x, fvm::density_x(model, m1.lambda, x, m1.t)});
      }
    } else if (sub == "support") {
      const auto sup = fvm::support(model, m1.lambda, m1.t);
      table.columns = {"lo", "hi", "atom_mass_each"};
      table.rows.push_back({sup.interval.lo, sup.interval.hi, sup.atoms[0].mass});
    } else if (sub == "moment") {
      if (m1.family != "logistic")
        throw std::invalid_argument("motion1d moment: series is defined for the logistic family");
      meta.add("a", m1.a).add("nterms", static_cast<long>(m1.nterms)).add("hydro", std::string(m1.hydro ? "yes" : "no"));
      const auto r = m1.hydro
                         ? fvm::logistic_moment_hydro(m1.a, m1.x0, m1.t, m1.nterms)
                         : fvm::logistic_moment(m1.a, {m1.lambda, m1.c}, m1.x0, m1.t, m1.nterms);
      table.columns = {"value", "last_term", "terms", "converged"};
      table.rows.push_back({r.value, r.last_term, static_cast<double>(r.terms),
                            r.converged ? 1.0 : 0.0});
    } else {  // sample
      meta.add("replicas", m1.replicas).add("seed", m1.seed);
      const fvm::TelegraphParams params{m1.lambda, m1.c};
      const auto xs = fvm::run_replicas(
          [&](fvm::RngStream& r) {
            const auto path = fvm::sample_path(params, m1.t, r);
            return fvm::transform_path(model, path)(m1.t);
          },
          m1.replicas, m1.seed, 1);
      table.columns = {"replica", "x"};
      for (std::size_t i = 0; i < xs.size(); ++i)
        table.rows.push_back({static_cast<double>(i), xs[i]});
    }
    table.emit(out, meta);
    out.flush();
    return 0;
  }

  // --- planar dispatch ---
  if (pl->parsed()) {
    out = {pn.common.out_path, pn.common.format, {}};
    const fvm::PlanarParams params{pn.lambda, pn.c, pn.p};
    const auto model = pn.family == "constant" ? fvm::constant_model(pn.c, pn.x0)
                                               : fvm::symlogistic_model(pn.c, pn.x0);
    const std::string sub = pl->get_subcommands()[0]->get_name();
    Meta meta("planar." + sub);
    meta.add("lambda", pn.lambda).add("c", pn.c).add("p", pn.p).add("t", pn.t).add("family", pn.family).add("x0", pn.x0);
    if (sub == "sample") {
      meta.add("replicas", pn.replicas).add("seed", pn.seed);
      const auto pts = fvm::run_replicas_t<fvm::PlanarEndpoint>(
          [&](fvm::RngStream& r) { return fvm::sample_planar_endpoint(params, pn.t, r); },
          pn.replicas, pn.seed, 1);
      table.columns = {"replica", "x", "y"};
      for (std::size_t i = 0; i < pts.size(); ++i)
        table.rows.push_back({static_cast<double>(i), model.Winv(pts[i].u), model.Winv(pts[i].v)});
    } else if (sub == "density") {
      meta.add("grid", static_cast<long>(pn.grid));
      const double span = pn.c * pn.t;
      table.columns = {"x", "y", "f"};
      const double lo = model.Winv(-span), hi = model.Winv(span);
      for (int i = 0; i < pn.grid; ++i)
        for (int j = 0; j < pn.grid; ++j) {
          const double x = lo + (i + 1) * (hi - lo) / (pn.grid + 1);
          const double y = lo + (j + 1) * (hi - lo) / (pn.grid + 1);
          const double u = model.W(x), v = model.W(y);
          double f = 0.0;
          if (std::abs(u + v) < span && std::abs(u - v) < span)
            f = fvm::wrapped_density_xy(model, params, x, y, pn.t);
          table.rows.push_back({x, y, f});
        }
    } else if (sub == "boundary") {
      meta.add("grid", static_cast<long>(pn.grid));
      table.columns = {"x", "h"};
      const double lo = model.Winv(0.0), hi = model.Winv(pn.c * pn.t);
      for (int i = 0; i < pn.grid; ++i) {
        const double x = lo + (i + 1) * (hi - lo) / (pn.grid + 1);
        table.rows.push_back({x, fvm::wrapped_boundary_abscissa(model, params, x, pn.t)});
      }
    } else {  // support
      meta.add("grid", static_cast<long>(pn.grid));
      table.columns = {"side", "x", "y"};
      const auto sides = fvm::support_boundary(model, pn.t);
      for (std::size_t s = 0; s < sides.size(); ++s)
        for (int i = 0; i <= pn.grid; ++i) {
          const double x = sides[s].x_lo + i * (sides[s].x_hi - sides[s].x_lo) / pn.grid;
          table.rows.push_back({static_cast<double>(s), x, sides[s].y_of_x(x)});
        }
    }
    table.emit(out, meta);
    out.flush();
    return 0;
  }

  // --- dirdep dispatch ---
  if (dd->parsed()) {
    out = {dp.common.out_path, dp.common.format, {}};
    const fvm::DirDepParams params{dp.lambda, dp.c, dp.x0, std::nullopt};
    const std::string sub = dd->get_subcommands()[0]->get_name();
    Meta meta("dirdep." + sub);
    meta.add("lambda", dp.lambda).add("c", dp.c).add("x0", dp.x0).add("t", dp.t);
    if (sub == "sample") {
      meta.add("replicas", dp.replicas).add("seed", dp.seed);
      const auto xs = fvm::run_replicas(
          [&](fvm::RngStream& r) { return fvm::sample_endpoint(params, dp.t, r); }, dp.replicas,
          dp.seed, 1);
      table.columns = {"replica", "x"};
      for (std::size_t i = 0; i < xs.size(); ++i)
        table.rows.push_back({static_cast<double>(i), xs[i]});
    } else if (sub == "mean") {
      table.columns = {"t", "mean"};
      table.rows.push_back({dp.t, fvm::uncond_mean(params, dp.t)});
    } else if (sub == "condmean") {
      meta.add("n", static_cast<long>(dp.n));
      table.columns = {"n", "d_start", "cond_mean"};
      for (int n = 0; n <= dp.n; ++n)
        for (int d = 0; d <= 1; ++d)
          table.rows.push_back({static_cast<double>(n), static_cast<double>(d),
                                fvm::cond_mean(params, d, n, dp.t)});
    } else {  // collapse
      meta.add("band", dp.band).add("replicas", dp.replicas).add("seed", dp.seed);
      const auto r = fvm::collapse_experiment(dp.c, dp.t, dp.replicas, dp.band, dp.x0, dp.seed, 1);
      table.columns = {"frac_near_0", "frac_near_1", "replicas"};
      table.rows.push_back({r.frac_near_0, r.frac_near_1, static_cast<double>(r.replicas)});
    }
    table.emit(out, meta);
    out.flush();
    return 0;
  }

  // --- timevar dispatch ---
  if (tv->parsed()) {
    out = {tvo.common.out_path, tvo.common.format, {}};
    const auto profile = make_profile(tvo.sigma, tvo.scale, tvo.table);
    const fvm::TelegraphParams params{tvo.lambda, tvo.c};
    const std::string sub = tv->get_subcommands()[0]->get_name();
    Meta meta("timevar." + sub);
    meta.add("lambda", tvo.lambda).add("c", tvo.c).add("sigma", tvo.sigma).add("scale", tvo.scale).add("t", tvo.t);
    if (sub == "sample") {
      meta.add("replicas", tvo.replicas).add("seed", tvo.seed);
      const auto xs = fvm::run_replicas(
          [&](fvm::RngStream& r) { return fvm::sample_endpoint(profile, params, tvo.t, r); },
          tvo.replicas, tvo.seed, 1);
      table.columns = {"replica", "x"};
      for (std::size_t i = 0; i < xs.size(); ++i)
        table.rows.push_back({static_cast<double>(i), xs[i]});
    } else if (sub == "cov") {
      meta.add("s", tvo.s).add("limit", std::string(tvo.limit ? "yes" : "no"));
      table.columns = {"s", "t", "covariance"};
      const double v = tvo.limit ? fvm::limit_covariance(profile, tvo.s, tvo.t)
                                 : fvm::covariance(profile, params, tvo.s, tvo.t);
      table.rows.push_back({tvo.s, tvo.t, v});
    } else {  // limit density table
      meta.add("grid", static_cast<long>(tvo.grid));
      const double sd = std::sqrt(profile.square_integral(tvo.t));
      table.columns = {"x", "f"};
      for (int i = 0; i < tvo.grid; ++i) {
        const double x = -4.0 * sd + i * 8.0 * sd / (tvo.grid - 1);
        table.rows.push_back({x, fvm::limit_density(profile, x, tvo.t)});
      }
    }
    table.emit(out, meta);
    out.flush();
    return 0;
  }

  // --- geo2d dispatch ---
  if (ge->parsed()) {
    out = {g2.common.out_path, g2.common.format, {}};
    const fvm::Geo2dParams params{g2.lambda, g2.c, g2.p, g2.x0, g2.y0};
    const std::string sub = ge->get_subcommands()[0]->get_name();
    Meta meta("geo2d." + sub);
    meta.add("lambda", g2.lambda).add("c", g2.c).add("p", g2.p).add("x0", g2.x0).add("y0", g2.y0).add("t", g2.t);
    if (sub == "sample") {
      meta.add("replicas", g2.replicas).add("seed", g2.seed);
      const auto pts = fvm::run_replicas_t<std::pair<double, double>>(
          [&](fvm::RngStream& r) {
            const auto s = fvm::sample(params, g2.t, r);
            return std::make_pair(s.x, s.y);
          },
          g2.replicas, g2.seed, 1);
      table.columns = {"replica", "x", "y"};
      for (std::size_t i = 0; i < pts.size(); ++i)
        table.rows.push_back({static_cast<double>(i), pts[i].first, pts[i].second});
    } else if (sub == "density" || sub == "limit") {
      meta.add("grid", static_cast<long>(g2.grid));
      const double span = g2.c * g2.t;
      table.columns = {"x", "y", "f"};
      for (int i = 0; i < g2.grid; ++i)
        for (int j = 0; j < g2.grid; ++j) {
          const double u = -span + (i + 1) * 2.0 * span / (g2.grid + 1);
          const double v = -span + (j + 1) * 2.0 * span / (g2.grid + 1);
          const double x = g2.x0 * std::exp(u), y = g2.y0 * std::exp(v);
          double f = 0.0;
          if (sub == "limit")
            f = fvm::limit_density(g2.p, g2.x0, g2.y0, x, y, g2.t);
          else if (std::abs(u + v) < span && std::abs(u - v) < span)
            f = fvm::joint_density(params, x, y, g2.t);
          table.rows.push_back({x, y, f});
        }
    } else {  // params
      const auto ip = fvm::param_map(g2.p);
      table.columns = {"mu", "kappa", "sigma_sq", "eta_sq", "rho"};
      table.rows.push_back({ip.mu, ip.kappa, ip.sigma_sq, ip.eta_sq, ip.rho});
    }
    table.emit(out, meta);
    out.flush();
    return 0;
  }

  // --- euler dispatch ---
  if (eu->parsed()) {
    out = {ep.common.out_path, "json", {}};
    ep.has_x = xopt->count() > 0;
    const auto poly = fvm::euler_poly(ep.n, ep.a, ep.theta);
    Meta meta("euler");
    meta.add("n", static_cast<long>(ep.n)).add("a", ep.a).add("theta", ep.theta);
    out.buf << "{\"meta\": " << meta.json_object() << ", \"coeffs\": [";
    for (int m = 0; m <= poly.n; ++m)
      out.buf << fmt_g17(poly.coeffs[m]) << (m < poly.n ? ", " : "");
    out.buf << "]";
    if (ep.has_x)
      out.buf << ", \"x\": " << fmt_g17(ep.x)
              << ", \"value\": " << fmt_g17(fvm::eval_poly(poly, ep.x));
    out.buf << "}\n";
    out.flush();
    return 0;
  }

  // --- accept dispatch ---
  if (ac->parsed()) {
    out = {av.common.out_path, "json", {}};
    const auto suite = fvm::run_primary_suite_with_determinism(av.seed, av.threads);
    out.buf << suite.to_json();
    out.flush();
    for (const auto& line : suite.summary_lines()) std::cerr << line << "\n";
    return suite.all_pass() ? 0 : 1;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const std::out_of_range& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
