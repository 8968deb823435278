#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "clex/canonical.hpp"
#include "clex/catalog.hpp"
#include "clex/cluster.hpp"
#include "clex/convergence.hpp"
#include "clex/correlations.hpp"
#include "clex/ozpy.hpp"
#include "clex/series_io.hpp"
#include "clex/species.hpp"
#include "clex/version.hpp"

namespace clex::cli {

namespace {

using nlohmann::json;

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"potential", {"kind", "sigma", "epsilon", "lambda", "beta", "dimension", "cutoff"}},
      {"mc", {"samples", "seed", "shards", "max_relative_error"}},
      {"catalog", {"path"}},
      {"output", {"path", "format"}},
      {"graphs", {"n", "class", "whites", "count"}},
      {"virial", {"order", "method"}},
      {"eos", {"order", "method"}},
      {"radius", {}},
      {"canonical", {"N", "L", "K"}},
      {"correlations", {"function", "order", "r_max", "dr", "method"}},
      {"ozpy", {"rho", "dr", "n_points", "tol", "mixing", "max_iter", "ng"}},
  };
  return s;
}

struct RunConfig {
  std::string command;
  json potential = json::object();
  McOptions mc;
  bool seed_given = false;
  std::optional<std::string> catalog;
  std::optional<std::string> out;
  std::string format = "json";

  int n = 3;
  std::string graph_class = "connected";
  int whites = 0;
  bool count_only = false;

  int order = 3;
  std::string method = "auto";

  int N = 2;
  double L = 10.0;
  int K = 1;

  std::string function = "c";
  double r_max = 3.0;
  double corr_dr = 0.05;

  std::vector<double> rho = {0.1};
  double grid_dr = 0.005;
  int n_points = 4096;
  double tol = 1e-10;
  double mixing = 0.5;
  long max_iter = 20000;
  bool ng = false;
};

template <class T>
void read(const json& section, const char* key, T& target) {
  if (section.contains(key)) target = section.at(key).get<T>();
}

void apply_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open config file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("config must be a JSON object of sections");
  for (const auto& [name, section] : doc.items()) {
    const auto it = schema().find(name);
    if (it == schema().end()) throw SchemaError("unknown config section: " + name);
    if (!section.is_object()) throw SchemaError("config section must be an object: " + name);
    for (const auto& [key, value] : section.items())
      if (!it->second.contains(key)) throw SchemaError("unknown key '" + key + "' in section " + name);
  }
  try {
    if (doc.contains("potential")) cfg.potential.update(doc["potential"]);
    if (doc.contains("mc")) {
      const auto& s = doc["mc"];
      read(s, "samples", cfg.mc.samples);
      read(s, "shards", cfg.mc.shards);
      read(s, "max_relative_error", cfg.mc.max_relative_error);
      if (s.contains("seed")) {
        cfg.mc.seed = s["seed"].get<std::uint64_t>();
        cfg.seed_given = true;
      }
    }
    if (doc.contains("catalog") && doc["catalog"].contains("path"))
      cfg.catalog = doc["catalog"]["path"].get<std::string>();
    if (doc.contains("output")) {
      if (doc["output"].contains("path")) cfg.out = doc["output"]["path"].get<std::string>();
      read(doc["output"], "format", cfg.format);
    }
    if (doc.contains("graphs")) {
      const auto& s = doc["graphs"];
      read(s, "n", cfg.n);
      read(s, "class", cfg.graph_class);
      read(s, "whites", cfg.whites);
      read(s, "count", cfg.count_only);
    }
    for (const char* sec : {"virial", "eos"})
      if (doc.contains(sec) && sec == cfg.command) {
        read(doc[sec], "order", cfg.order);
        read(doc[sec], "method", cfg.method);
      }
    if (doc.contains("canonical")) {
      const auto& s = doc["canonical"];
      read(s, "N", cfg.N);
      read(s, "L", cfg.L);
      read(s, "K", cfg.K);
    }
    if (doc.contains("correlations")) {
      const auto& s = doc["correlations"];
      read(s, "function", cfg.function);
      if (cfg.command == "correlations") {
        read(s, "order", cfg.order);
        read(s, "method", cfg.method);
      }
      read(s, "r_max", cfg.r_max);
      read(s, "dr", cfg.corr_dr);
    }
    if (doc.contains("ozpy")) {
      const auto& s = doc["ozpy"];
      if (s.contains("rho")) {
        if (s["rho"].is_array())
          cfg.rho = s["rho"].get<std::vector<double>>();
        else
          cfg.rho = {s["rho"].get<double>()};
      }
      read(s, "dr", cfg.grid_dr);
      read(s, "n_points", cfg.n_points);
      read(s, "tol", cfg.tol);
      read(s, "mixing", cfg.mixing);
      read(s, "max_iter", cfg.max_iter);
      read(s, "ng", cfg.ng);
    }
  } catch (const json::exception& e) {
    throw SchemaError(std::string("config value has the wrong type: ") + e.what());
  }
}

Potential build_potential(const json& desc) {
  try {
    const auto kind = parse_potential_kind(desc.value("kind", std::string("hard-rod")));
    const double sigma = desc.value("sigma", 1.0);
    const double epsilon = desc.value("epsilon", 1.0);
    const double lambda = desc.value("lambda", 1.5);
    const double beta = desc.value("beta", 1.0);
    std::optional<double> cutoff;
    if (desc.contains("cutoff")) cutoff = desc["cutoff"].get<double>();
    switch (kind) {
      case PotentialKind::Ideal: return Potential::ideal(desc.value("dimension", 1));
      case PotentialKind::HardRod:
        if (desc.value("dimension", 1) != 1) throw SchemaError("hard rods live in d = 1");
        return Potential::hard_rod(sigma);
      case PotentialKind::HardSphere:
        return Potential::hard_sphere(sigma, desc.value("dimension", 3));
      case PotentialKind::SquareWell:
        return Potential::square_well(sigma, lambda, epsilon, desc.value("dimension", 1), beta);
      case PotentialKind::LennardJones:
        return Potential::lennard_jones(sigma, epsilon, desc.value("dimension", 3), beta, cutoff);
    }
  } catch (const json::exception& e) {
    throw SchemaError(std::string("potential value has the wrong type: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
  throw SchemaError("unknown potential kind");
}

IntegrationMethod parse_method(const std::string& m) {
  if (m == "auto") return IntegrationMethod::Auto;
  if (m == "exact-1d") return IntegrationMethod::Exact1D;
  if (m == "monte-carlo") return IntegrationMethod::MonteCarlo;
  throw SchemaError("unknown method: " + m);
}

void require_seed(const RunConfig& cfg, const Potential& p, const IntegrationOptions& opts) {
  if (!uses_exact_path(p, opts) && !cfg.seed_given)
    throw SchemaError("a seed is required when a Monte Carlo path is active (--seed)");
}

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json estimate_json(const CoefficientEstimate& e) {
  json j = {{"value", number(e.value)}, {"method", to_string(e.method)}};
  if (!e.is_exact()) {
    j["std_error"] = number(e.std_error);
    j["samples"] = e.samples;
    j["seed"] = e.seed;
  }
  return j;
}

// JSON text with every float printed to 17 significant digits.
void write_json(std::ostream& os, const json& j, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << inner << json(k).dump() << ": ";
        write_json(os, v, indent + 1);
      }
      os << "\n" << pad << "}";
      return;
    }
    case json::value_t::array: {
      os << "[";
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << ", ";
        first = false;
        write_json(os, v, indent + 1);
      }
      os << "]";
      return;
    }
    case json::value_t::number_float: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
      os << buf;
      return;
    }
    default: os << j.dump();
  }
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string graph_line(const Graph& g) {
  std::ostringstream os;
  os << g.size() << ' ' << g.edge_count();
  for (auto [i, j] : g.edges()) os << ' ' << i << '-' << j;
  os << " whites=" << g.white_count();
  return os.str();
}

struct Outcome {
  json results;
  std::string csv;  // used when the format is csv
};

Outcome run_graphs(const RunConfig& cfg) {
  const auto cls = parse_graph_class(cfg.graph_class);
  if (!cls) throw SchemaError("unknown graph class: " + cfg.graph_class);
  if (cfg.n < 1 || cfg.n > kMaxVertices) throw SchemaError("n must be in [1, 16]");
  if (cfg.whites < 0 || cfg.whites > cfg.n) throw SchemaError("whites must be in [0, n]");
  auto stream = cfg.whites > 0 ? enumerate_bicolored(cfg.whites, cfg.n - cfg.whites, *cls)
                               : enumerate(cfg.n, *cls);
  Outcome o;
  o.results = {{"n", cfg.n}, {"class", cfg.graph_class}, {"whites", cfg.whites}};
  if (cfg.count_only) {
    const auto c = stream.count();
    o.results["count"] = c;
    o.csv = "count\n" + std::to_string(c) + "\n";
    return o;
  }
  json lines = json::array();
  for (const Graph& g : stream) {
    lines.push_back(graph_line(g));
    o.csv += graph_line(g) + "\n";
  }
  o.results["count"] = lines.size();
  o.results["graphs"] = std::move(lines);
  return o;
}

std::vector<CoefficientEstimate> betas(const Potential& p, int count, const IntegrationOptions& opts) {
  return count > 0 ? irreducible_table(p, count, opts) : std::vector<CoefficientEstimate>{};
}

Outcome run_virial(const RunConfig& cfg, const Potential& p, const IntegrationOptions& opts) {
  if (cfg.order < 2) throw SchemaError("virial order must be at least 2");
  if (cfg.order > kExhaustiveCap) throw EnumerationTooLarge("virial order above the cap", 0.0);
  const auto est = betas(p, cfg.order - 1, opts);
  std::vector<double> beta;
  for (const auto& e : est) beta.push_back(e.value);
  const auto eos = eos_and_free_energy<double>(beta, cfg.order - 1);
  Outcome o;
  json B = json::object(), Berr = json::object(), bj = json::array();
  o.csv = "n,B_n,std_error\n";
  for (int n = 2; n <= cfg.order; ++n) {
    const double err = (n - 1.0) / n * est[n - 2].std_error;
    B[std::to_string(n)] = number(eos.virial[n]);
    Berr[std::to_string(n)] = number(err);
    o.csv += std::to_string(n) + "," + fmt17(eos.virial[n]) + "," + fmt17(err) + "\n";
  }
  for (const auto& e : est) bj.push_back(estimate_json(e));
  o.results = {{"order", cfg.order}, {"B", B}, {"B_std_error", Berr}, {"beta", bj}};
  return o;
}

Outcome run_eos(const RunConfig& cfg, const Potential& p, const IntegrationOptions& opts) {
  if (cfg.order < 2) throw SchemaError("eos order must be at least 2");
  if (cfg.order > kExhaustiveCap) throw EnumerationTooLarge("eos order above the cap", 0.0);
  const auto est = betas(p, cfg.order - 1, opts);
  std::vector<double> beta;
  for (const auto& e : est) beta.push_back(e.value);
  const auto eos = eos_and_free_energy<double>(beta, cfg.order - 1);
  Outcome o;
  o.results = {{"order", cfg.order},
               {"pressure", series_to_json(eos.pressure)},
               {"excess_free_energy", series_to_json(eos.excess_free_energy)},
               {"log_fugacity_ratio", series_to_json(eos.log_fugacity_ratio)}};
  o.csv = "order,pressure\n";
  for (int k = 0; k <= eos.pressure.order(); ++k)
    o.csv += std::to_string(k) + "," + fmt17(eos.pressure[k]) + "\n";
  return o;
}

Outcome run_radius(const Potential& p) {
  const auto a = activity_radius(p, p.dimension);
  const auto c = canonical_radius(p, p.dimension);
  Outcome o;
  o.results = {{"activity",
                {{"z_max", number(a.max_parameter())},
                 {"a", a.weight_a},
                 {"cbar", number(a.integral)},
                 {"stability_B", a.stability},
                 {"unbounded", a.unbounded}}},
               {"canonical",
                {{"rho_max", number(c.max_parameter())},
                 {"rho_C_max", number(c.bound_value)},
                 {"c", c.weight_a},
                 {"C", number(c.integral)},
                 {"stability_B", c.stability},
                 {"unbounded", c.unbounded}}},
               {"potential", p.canonical_string()}};
  o.csv = "condition,max_parameter\nactivity," + fmt17(a.max_parameter()) + "\ncanonical," +
          fmt17(c.max_parameter()) + "\n";
  return o;
}

Outcome run_canonical(const RunConfig& cfg, const Potential& p) {
  if (cfg.K > kMaxCanonicalOrder) throw EnumerationTooLarge("canonical order above 4", 0.0);
  const auto fe = canonical_free_energy(p, cfg.N, cfg.L, cfg.K);
  json oracle = nullptr;
  std::optional<double> oracle_value;
  if (cfg.N <= kMaxOracleParticles) {
    oracle_value = direct_logZ_oracle(p, cfg.N, cfg.L);
    oracle = {{"log_z", *oracle_value}, {"method", "exact-1d"}};
  } else if (cfg.N <= kMaxMonteCarloParticles) {
    if (!cfg.seed_given) throw SchemaError("a seed is required for the Monte Carlo oracle (--seed)");
    const auto e = direct_logZ_mc(p, cfg.N, cfg.L, cfg.mc.samples, cfg.mc.seed);
    oracle_value = e.value;
    oracle = {{"log_z", e.value}, {"std_error", e.std_error}, {"method", "monte-carlo"}};
  }
  json terms = json::array(), B = json::array(), P = json::array();
  for (int k = 0; k < cfg.K; ++k) {
    terms.push_back(fe.terms[k]);
    B.push_back(fe.B[k]);
    P.push_back(fe.P[k]);
  }
  Outcome o;
  o.results = {{"N", cfg.N},
               {"L", cfg.L},
               {"K", cfg.K},
               {"expansion",
                {{"log_z", fe.log_z},
                 {"per_volume", fe.per_volume},
                 {"ideal_part", fe.ideal_part},
                 {"terms", terms},
                 {"B", B},
                 {"P", P},
                 {"fit_C", fe.fit_C},
                 {"fit_c", fe.fit_c},
                 {"within_certificate", fe.within_certificate}}},
               {"oracle", oracle},
               {"remainder_estimate", number(fe.remainder_estimate)}};
  o.csv = "k,term\n";
  for (int k = 0; k < cfg.K; ++k) o.csv += std::to_string(k + 1) + "," + fmt17(fe.terms[k]) + "\n";
  if (oracle_value) o.results["difference"] = fe.log_z - *oracle_value;
  return o;
}

Outcome run_correlations(const RunConfig& cfg, const Potential& p, const IntegrationOptions& opts) {
  if (!(cfg.corr_dr > 0.0) || !(cfg.r_max > 0.0)) throw SchemaError("r_max and dr must be positive");
  const int steps = static_cast<int>(std::floor(cfg.r_max / cfg.corr_dr + 1e-9));
  if (steps > 100000) throw SchemaError("correlation grid too large");
  std::vector<double> r;
  std::vector<CorrelationSeries> rows;
  for (int i = 1; i <= steps; ++i) {
    const double x = i * cfg.corr_dr;
    const std::vector<Point> pts = {Point{0, 0, 0}, Point{x, 0, 0}};
    CorrelationSeries s;
    if (cfg.function == "c")
      s = c2_density(p, x, cfg.order, opts);
    else if (cfg.function == "h")
      s = h2_density(p, x, cfg.order, opts);
    else if (cfg.function == "u")
      s = u_n_activity(p, pts, cfg.order, opts);
    else if (cfg.function == "rho")
      s = rho_n_activity(p, pts, cfg.order, opts);
    else
      throw SchemaError("unknown correlation function: " + cfg.function);
    r.push_back(x);
    rows.push_back(std::move(s));
  }
  Outcome o;
  json orders = json::array(), errors = json::array();
  for (int k = 0; k <= cfg.order; ++k) {
    json col = json::array(), ecol = json::array();
    for (const auto& s : rows) {
      col.push_back(s.values[k]);
      ecol.push_back(s.std_errors[k]);
    }
    orders.push_back(col);
    errors.push_back(ecol);
  }
  o.results = {{"function", cfg.function},
               {"variable", to_string(cfg.function == "u" || cfg.function == "rho"
                                          ? SeriesVariable::Activity
                                          : SeriesVariable::Density)},
               {"r", r},
               {"orders", orders},
               {"std_errors", errors}};
  o.csv = "r";
  for (int k = 0; k <= cfg.order; ++k) o.csv += ",order" + std::to_string(k);
  o.csv += "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    o.csv += fmt17(r[i]);
    for (double v : rows[i].values) o.csv += "," + fmt17(v);
    o.csv += "\n";
  }
  return o;
}

Outcome run_ozpy(const RunConfig& cfg, const Potential& p) {
  RadialGrid grid{cfg.grid_dr, cfg.n_points, p.dimension};
  PySolverOptions opts;
  opts.tol = cfg.tol;
  opts.mixing = cfg.mixing;
  opts.max_iter = cfg.max_iter;
  opts.ng_acceleration = cfg.ng;
  if (cfg.format == "csv" && cfg.rho.size() != 1)
    throw SchemaError("csv output of ozpy needs a single density");
  Outcome o;
  json runs = json::array();
  for (double rho : cfg.rho) {
    const auto s = solve_py(p, rho, grid, opts);
    const auto th = thermodynamics(p, s);
    runs.push_back({{"rho", rho},
                    {"pressure_virial", th.pressure_virial},
                    {"compressibility", th.compressibility},
                    {"B2_effective", number(th.B2_effective)},
                    {"iterations", s.iterations},
                    {"residual", s.residual},
                    {"oz_self_consistency", oz_self_consistency(s)},
                    {"negative_g", s.negative_g}});
    if (cfg.format == "csv") {
      o.csv = "r,g,h,c,t,y\n";
      for (std::size_t i = 0; i < s.r.size(); ++i)
        o.csv += fmt17(s.r[i]) + "," + fmt17(s.g[i]) + "," + fmt17(s.h[i]) + "," + fmt17(s.c[i]) +
                 "," + fmt17(s.t[i]) + "," + fmt17(s.y[i]) + "\n";
    }
  }
  o.results = {{"grid", {{"dr", grid.dr}, {"n_points", grid.n_points}, {"dimension", grid.dimension}}},
               {"tol", cfg.tol},
               {"runs", runs}};
  return o;
}

Outcome run_catalog_gc(const RunConfig& cfg) {
  if (!cfg.catalog) throw SchemaError("catalog-gc needs a catalog path (--catalog)");
  const auto r = catalog_gc(*cfg.catalog);
  Outcome o;
  o.results = {{"catalog", *cfg.catalog},
               {"kept", r.kept},
               {"stale_removed", r.stale_removed},
               {"duplicates_removed", r.duplicates_removed},
               {"quarantined", r.quarantined}};
  o.csv = "kept,stale_removed,duplicates_removed,quarantined\n" + std::to_string(r.kept) + "," +
          std::to_string(r.stale_removed) + "," + std::to_string(r.duplicates_removed) + "," +
          std::to_string(r.quarantined) + "\n";
  return o;
}

void write_atomic(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f << text;
    if (!f.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

json inputs_echo(const RunConfig& cfg, const std::optional<Potential>& p) {
  json j = {{"command", cfg.command}, {"format", cfg.format}};
  if (p) j["potential"] = p->canonical_string();
  if (cfg.seed_given) j["seed"] = cfg.mc.seed, j["samples"] = cfg.mc.samples;
  if (cfg.command == "graphs")
    j.update({{"n", cfg.n}, {"class", cfg.graph_class}, {"whites", cfg.whites}, {"count", cfg.count_only}});
  if (cfg.command == "virial" || cfg.command == "eos") j.update({{"order", cfg.order}, {"method", cfg.method}});
  if (cfg.command == "canonical") j.update({{"N", cfg.N}, {"L", cfg.L}, {"K", cfg.K}});
  if (cfg.command == "correlations")
    j.update({{"function", cfg.function}, {"order", cfg.order}, {"r_max", cfg.r_max}, {"dr", cfg.corr_dr}});
  if (cfg.command == "ozpy")
    j.update({{"rho", cfg.rho}, {"dr", cfg.grid_dr}, {"n_points", cfg.n_points}, {"tol", cfg.tol},
              {"mixing", cfg.mixing}, {"ng", cfg.ng}});
  return j;
}

int execute(RunConfig& cfg, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  if (cfg.format != "json" && cfg.format != "csv") throw SchemaError("format must be json or csv");
  std::unique_ptr<CoefficientTable> table;
  if (cfg.catalog && cfg.command != "catalog-gc") table = std::make_unique<CoefficientTable>(*cfg.catalog);

  std::optional<Potential> p;
  if (cfg.command != "graphs" && cfg.command != "catalog-gc") p = build_potential(cfg.potential);
  IntegrationOptions opts;
  opts.method = parse_method(cfg.method);
  opts.mc = cfg.mc;
  opts.table = table.get();

  Outcome o;
  if (cfg.command == "graphs") {
    o = run_graphs(cfg);
  } else if (cfg.command == "virial") {
    require_seed(cfg, *p, opts);
    o = run_virial(cfg, *p, opts);
  } else if (cfg.command == "eos") {
    require_seed(cfg, *p, opts);
    o = run_eos(cfg, *p, opts);
  } else if (cfg.command == "radius") {
    o = run_radius(*p);
  } else if (cfg.command == "canonical") {
    o = run_canonical(cfg, *p);
  } else if (cfg.command == "correlations") {
    require_seed(cfg, *p, opts);
    o = run_correlations(cfg, *p, opts);
  } else if (cfg.command == "ozpy") {
    o = run_ozpy(cfg, *p);
  } else {
    o = run_catalog_gc(cfg);
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::string text;
  if (cfg.format == "csv") {
    text = o.csv;
  } else {
    json report = {{"inputs", inputs_echo(cfg, p)},
                   {"results", o.results},
                   {"provenance",
                    {{"code_version", kCodeVersion},
                     {"catalog_hits", table ? table->hits() : 0},
                     {"catalog_misses", table ? table->misses() : 0},
                     {"wall_time_s", wall}}}};
    std::ostringstream os;
    write_json(os, report);
    os << "\n";
    text = os.str();
  }
  if (cfg.out)
    write_atomic(*cfg.out, text);
  else
    out << text;
  return kOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cluster and virial expansion toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_path, catalog_path, potential_kind;
  double sigma = 1, epsilon = 1, lambda = 1.5, beta = 1, cutoff = 0;
  int dim = 1;

  app.add_option("--config", config_path, "JSON config with one section per module");
  auto* seed_opt = app.add_option("--seed", seed, "Monte Carlo seed");
  auto* out_opt = app.add_option("--out", out_path, "Write the result atomically to this path");
  std::string format;
  std::uint64_t samples = 0;
  auto* fmt_opt = app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  auto* cat_opt = app.add_option("--catalog", catalog_path, "Coefficient catalog (JSON lines)");
  auto* samples_opt = app.add_option("--samples", samples, "Monte Carlo samples");
  auto* pot_opt = app.add_option("--potential", potential_kind,
                                 "ideal, hard-rod, hard-sphere, square-well, lennard-jones");
  auto* sigma_opt = app.add_option("--sigma", sigma);
  auto* eps_opt = app.add_option("--epsilon", epsilon);
  auto* lambda_opt = app.add_option("--lambda", lambda);
  auto* beta_opt = app.add_option("--beta", beta);
  auto* dim_opt = app.add_option("--dim", dim);
  auto* cutoff_opt = app.add_option("--cutoff", cutoff);

  int n = 0, whites = 0, order = 0, N = 0, K = 0, n_points = 0;
  long max_iter = 0;
  double L = 0, r_max = 0, corr_dr = 0, grid_dr = 0, tol = 0, mixing = 0;
  std::string graph_class, method, function;
  std::vector<double> rho;
  bool count_only = false, ng = false;

  auto* graphs = app.add_subcommand("graphs", "Enumerate labeled graphs of a class");
  auto* n_opt = graphs->add_option("--n", n, "Vertex count");
  auto* class_opt = graphs->add_option("--class", graph_class);
  auto* whites_opt = graphs->add_option("--whites", whites, "Number of white (root) vertices");
  auto* count_opt = graphs->add_flag("--count", count_only, "Print only the count");

  auto* virial = app.add_subcommand("virial", "Virial coefficients B_2..B_order");
  auto* eos = app.add_subcommand("eos", "Pressure and free-energy series");
  auto* radius = app.add_subcommand("radius", "Convergence radius certificates");
  auto* canonical = app.add_subcommand("canonical", "Canonical free-energy expansion");
  auto* correlations = app.add_subcommand("correlations", "Two-point correlation series on an r grid");
  auto* ozpy = app.add_subcommand("ozpy", "Ornstein-Zernike solver with Percus-Yevick closure");
  auto* gc = app.add_subcommand("catalog-gc", "Prune stale and duplicate catalog records");
  (void)radius;
  (void)gc;

  std::vector<CLI::Option*> order_opts, method_opts;
  for (auto* sub : {virial, eos, correlations}) {
    order_opts.push_back(sub->add_option("--order", order));
    method_opts.push_back(sub->add_option("--method", method, "auto, exact-1d or monte-carlo"));
  }
  auto* N_opt = canonical->add_option("--N", N);
  auto* L_opt = canonical->add_option("--L", L);
  auto* K_opt = canonical->add_option("--K", K);
  auto* fn_opt = correlations->add_option("--function", function, "c, h, u or rho");
  auto* rmax_opt = correlations->add_option("--r-max", r_max);
  auto* cdr_opt = correlations->add_option("--dr", corr_dr);
  auto* rho_opt = ozpy->add_option("--rho", rho, "One or more densities");
  auto* gdr_opt = ozpy->add_option("--dr", grid_dr);
  auto* np_opt = ozpy->add_option("--n-points", n_points);
  auto* tol_opt = ozpy->add_option("--tol", tol);
  auto* mix_opt = ozpy->add_option("--mixing", mixing);
  auto* it_opt = ozpy->add_option("--max-iter", max_iter);
  auto* ng_opt = ozpy->add_flag("--ng", ng, "Ng acceleration");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kSchemaError;
  }

  try {
    for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
    if (!config_path.empty()) apply_config_file(config_path, cfg);
    if (*seed_opt) cfg.mc.seed = seed, cfg.seed_given = true;
    if (*out_opt) cfg.out = out_path;
    if (*fmt_opt) cfg.format = format;
    if (*samples_opt) cfg.mc.samples = samples;
    if (*cat_opt) cfg.catalog = catalog_path;
    if (*pot_opt) {
      cfg.potential = json::object();
      cfg.potential["kind"] = potential_kind;
    }
    if (*sigma_opt) cfg.potential["sigma"] = sigma;
    if (*eps_opt) cfg.potential["epsilon"] = epsilon;
    if (*lambda_opt) cfg.potential["lambda"] = lambda;
    if (*beta_opt) cfg.potential["beta"] = beta;
    if (*dim_opt) cfg.potential["dimension"] = dim;
    if (*cutoff_opt) cfg.potential["cutoff"] = cutoff;
    if (*n_opt) cfg.n = n;
    if (*class_opt) cfg.graph_class = graph_class;
    if (*whites_opt) cfg.whites = whites;
    if (*count_opt) cfg.count_only = true;
    for (auto* o : order_opts)
      if (*o) cfg.order = order;
    for (auto* o : method_opts)
      if (*o) cfg.method = method;
    if (*N_opt) cfg.N = N;
    if (*L_opt) cfg.L = L;
    if (*K_opt) cfg.K = K;
    if (*fn_opt) cfg.function = function;
    if (*rmax_opt) cfg.r_max = r_max;
    if (*cdr_opt) cfg.corr_dr = corr_dr;
    if (*rho_opt) cfg.rho = rho;
    if (*gdr_opt) cfg.grid_dr = grid_dr;
    if (*np_opt) cfg.n_points = n_points;
    if (*tol_opt) cfg.tol = tol;
    if (*mix_opt) cfg.mixing = mixing;
    if (*it_opt) cfg.max_iter = max_iter;
    if (*ng_opt) cfg.ng = true;
    return execute(cfg, out);
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return kSchemaError;
  } catch (const EnumerationTooLarge& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const MissingKernelOrder& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const NonConvergence& e) {
    err << "nonconvergence: " << e.what() << " (last residual " << e.last_residual() << ")\n";
    return kNonConvergence;
  } catch (const FixedPointMissing& e) {
    err << "nonconvergence: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace clex::cli
