// Command-line surface: run configuration, parsing, and the five subcommands.
#ifndef PAINLEVE_CLI_HPP
#define PAINLEVE_CLI_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "painleve/cubicmodel.hpp"
#include "painleve/io.hpp"
#include "painleve/phase.hpp"
#include "painleve/quaddiff.hpp"
#include "painleve/suite.hpp"
#include "painleve/zerofind.hpp"

namespace painleve::cli {

inline constexpr const char* kVersion = "painleve-airy 1.0.0";

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kInvalidConfig = 2, kNumericalFailure = 3 };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical failure carries a JSON payload that ends up in the diagnostic file.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, io::json details = io::json::object())
      : std::runtime_error(what), details(std::move(details)) {}
  io::json details;
};

struct RunConfig {
  std::string command;
  std::size_t n = 3;
  ExtendedComplex<double> lambda = ExtendedComplex<double>::infinity();
  double bigN = 1;
  cplx t{0};
  Window window{{-8, -8}, {8, 8}};
  int resolution = 200;
  std::string precision = "double";
  std::string output = ".";
  std::string stem;  // file name stem; defaults to the command
  std::uint64_t seed = 20240611;

  bool operator==(const RunConfig& o) const {
    return command == o.command && n == o.n && lambda.infinite == o.lambda.infinite &&
           (lambda.infinite || lambda.value == o.lambda.value) && bigN == o.bigN && t == o.t &&
           window.lo == o.window.lo && window.hi == o.window.hi && resolution == o.resolution &&
           precision == o.precision && output == o.output && stem == o.stem && seed == o.seed;
  }

  std::filesystem::path path(const std::string& suffix) const {
    return std::filesystem::path(output) / ((stem.empty() ? command : stem) + suffix);
  }
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"poles", "phase", "trajectories", "bridge", "verify"};
  return c;
}

/// Window and resolution used when neither the flags nor a config file set them.
inline void apply_command_defaults(RunConfig& c, bool window_set, bool resolution_set) {
  if (!window_set) {
    if (c.command == "phase") c.window = Window({-4, -4}, {4, 4});
    else if (c.command == "trajectories") c.window = Window({-4, -4}, {4, 4});
    else if (c.command == "bridge") c.window = Window({-1, -1}, {1, 1});
    else c.window = Window({-8, -8}, {8, 8});
  }
  if (!resolution_set) c.resolution = c.command == "bridge" ? 5 : 200;
}

inline void validate(const RunConfig& c) {
  if (std::find(commands().begin(), commands().end(), c.command) == commands().end())
    throw ConfigError("unknown command '" + c.command + "'");
  if (c.n < 1 || c.n > 20) throw ConfigError("n must lie in 1..20");
  if (!(c.bigN > 0) || !std::isfinite(c.bigN)) throw ConfigError("N must be positive");
  if (!c.lambda.infinite && !(std::isfinite(c.lambda.value.real()) && std::isfinite(c.lambda.value.imag())))
    throw ConfigError("lambda must be finite or 'inf'");
  if (c.resolution < 1 || c.resolution > 4000) throw ConfigError("resolution must lie in 1..4000");
  if (c.precision != "double" && c.precision != "quad") throw ConfigError("precision must be 'double' or 'quad'");
#ifndef PAINLEVE_HAVE_FLOAT128
  if (c.precision == "quad") throw ConfigError("this build has no float128 support");
#endif
  if (!(c.window.hi.real() > c.window.lo.real() && c.window.hi.imag() > c.window.lo.imag()))
    throw ConfigError("window needs hi > lo in both axes");
}

// ------------------------------------------------------------------ config files

inline io::json to_json(const RunConfig& c) {
  io::json j = io::document("config");
  j["command"] = c.command;
  j["n"] = c.n;
  j["lambda"] = c.lambda.infinite ? io::json("inf") : io::point_json(c.lambda.value);
  j["N"] = c.bigN;
  j["t"] = io::point_json(c.t);
  j["window"] = {c.window.lo.real(), c.window.lo.imag(), c.window.hi.real(), c.window.hi.imag()};
  j["resolution"] = c.resolution;
  j["precision"] = c.precision;
  j["output"] = c.output;
  j["stem"] = c.stem;
  j["seed"] = c.seed;
  return j;
}

inline cplx complex_from(const io::json& j, const char* key) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(std::string(key) + " must be a pair of numbers");
  return {j[0].get<double>(), j[1].get<double>()};
}

/// Missing keys keep their defaults; unknown keys are rejected.
inline RunConfig from_json(const io::json& j, bool* window_set = nullptr, bool* resolution_set = nullptr) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::vector<std::string> known{"schema", "schema_version", "command", "n", "lambda", "N", "t",
                                              "window", "resolution", "precision", "output", "stem", "seed"};
  for (const auto& [k, v] : j.items())
    if (std::find(known.begin(), known.end(), k) == known.end()) throw ConfigError("unknown config key '" + k + "'");
  if (j.contains("schema_version") && j["schema_version"] != io::kSchemaVersion)
    throw ConfigError("unsupported config schema_version");
  RunConfig c;
  try {
    if (j.contains("command")) c.command = j["command"].get<std::string>();
    if (j.contains("n")) {
      if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1) throw ConfigError("n must be a positive integer");
      c.n = j["n"].get<std::size_t>();
    }
    if (j.contains("lambda")) {
      const auto& l = j["lambda"];
      if (l.is_string()) {
        if (l.get<std::string>() != "inf") throw ConfigError("lambda must be [re, im] or \"inf\"");
        c.lambda = ExtendedComplex<double>::infinity();
      } else {
        c.lambda = ExtendedComplex<double>{complex_from(l, "lambda"), false};
      }
    }
    if (j.contains("N")) c.bigN = j["N"].get<double>();
    if (j.contains("t")) c.t = complex_from(j["t"], "t");
    if (j.contains("window")) {
      const auto& w = j["window"];
      if (!w.is_array() || w.size() != 4) throw ConfigError("window must be [lo_re, lo_im, hi_re, hi_im]");
      const cplx lo(w[0].get<double>(), w[1].get<double>()), hi(w[2].get<double>(), w[3].get<double>());
      if (!(hi.real() > lo.real() && hi.imag() > lo.imag())) throw ConfigError("window needs hi > lo in both axes");
      c.window = Window(lo, hi);
      if (window_set) *window_set = true;
    }
    if (j.contains("resolution")) {
      c.resolution = j["resolution"].get<int>();
      if (resolution_set) *resolution_set = true;
    }
    if (j.contains("precision")) c.precision = j["precision"].get<std::string>();
    if (j.contains("output")) c.output = j["output"].get<std::string>();
    if (j.contains("stem")) c.stem = j["stem"].get<std::string>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  } catch (const io::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

inline std::string dump_config(const RunConfig& c) { return io::dump(to_json(c)); }

inline RunConfig load_config(const std::filesystem::path& p, bool* window_set = nullptr, bool* resolution_set = nullptr) {
  std::ifstream f(p);
  if (!f) throw ConfigError("cannot read config file " + p.string());
  try {
    return from_json(io::json::parse(f), window_set, resolution_set);
  } catch (const io::json::parse_error& e) {
    throw ConfigError(std::string("config file: ") + e.what());
  }
}

// ------------------------------------------------------------------ argument parsing

struct Invocation {
  RunConfig config;
  std::string write_config;  // path to save the resolved config, if requested
  bool help = false;
  std::string help_text;
};

inline ExtendedComplex<double> parse_lambda(const std::vector<std::string>& tok) {
  if (tok.size() == 1 && tok[0] == "inf") return ExtendedComplex<double>::infinity();
  auto num = [](const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || !std::isfinite(v)) throw ConfigError("lambda: '" + s + "' is not a number");
    return v;
  };
  if (tok.size() == 1) return {cplx(num(tok[0]), 0), false};
  if (tok.size() == 2) return {cplx(num(tok[0]), num(tok[1])), false};
  throw ConfigError("lambda takes 'inf', one real, or two reals");
}

inline Invocation parse_args(int argc, const char* const* argv) {
  CLI::App app{"Airy solutions of Painleve II: poles, phase diagram, trajectories, bridge identities"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(0, 1);

  std::string config_file, write_config, output, stem, precision;
  std::size_t n = 0;
  std::vector<std::string> lambda_tok;
  double bigN = 0;
  std::vector<double> t, window;
  int resolution = 0;
  std::uint64_t seed = 0;

  const auto describe = [](const std::string& c) -> std::string {
    if (c == "poles") return "poles (residue +1 and -1) and zeros of q_n in a z-window (CSV, SVG)";
    if (c == "phase") return "phase diagram of the cubic model over a t-window (CSV, JSON, SVG)";
    if (c == "trajectories") return "critical graph, equilibrium check and S-curve chain at one t (JSON, SVG)";
    if (c == "bridge") return "bridge identity residuals on a t-grid (CSV)";
    return "run every invariant check and write a report (JSON, SVG)";
  };
  std::vector<CLI::App*> subs;
  for (const auto& name : commands()) {
    CLI::App* s = app.add_subcommand(name, describe(name));
    s->add_option("--config", config_file, "JSON config file (same keys as the flags)");
    s->add_option("--write-config", write_config, "save the resolved config to this path");
    s->add_option("--out,-o", output, "output directory");
    s->add_option("--stem", stem, "output file name stem (default: the command)");
    s->add_option("--seed", seed, "seed for sampled points");
    s->add_option("--precision", precision, "double or quad");
    s->add_option("--n", n, "level n of q_n");
    s->add_option("--lambda", lambda_tok, "lambda: 'inf', or re [im]")->expected(1, 2);
    s->add_option("--N", bigN, "cubic model parameter N");
    s->add_option("--t", t, "t as re im")->expected(2);
    s->add_option("--window", window, "lo_re lo_im hi_re hi_im")->expected(4);
    s->add_option("--resolution,--grid", resolution, "grid points per axis");
    subs.push_back(s);
  }

  Invocation inv;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    inv.help = true;
    inv.help_text = app.help();
    return inv;
  } catch (const CLI::CallForVersion&) {
    inv.help = true;
    inv.help_text = std::string(kVersion) + "\n";
    return inv;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  CLI::App* chosen = nullptr;
  for (auto* s : subs)
    if (s->parsed()) chosen = s;

  bool window_set = false, resolution_set = false;
  RunConfig c;
  if (chosen && chosen->count("--config")) c = load_config(config_file, &window_set, &resolution_set);
  if (chosen) c.command = chosen->get_name();
  if (c.command.empty()) throw ConfigError("no subcommand given (one of poles, phase, trajectories, bridge, verify)");
  auto given = [&](const char* flag) { return chosen && chosen->count(flag) > 0; };
  if (given("--out")) c.output = output;
  if (given("--stem")) c.stem = stem;
  if (given("--seed")) c.seed = seed;
  if (given("--precision")) c.precision = precision;
  if (given("--n")) c.n = n;
  if (given("--lambda")) c.lambda = parse_lambda(lambda_tok);
  if (given("--N")) c.bigN = bigN;
  if (given("--t")) c.t = cplx(t[0], t[1]);
  if (given("--window")) {
    if (!(window[2] > window[0] && window[3] > window[1])) throw ConfigError("window needs hi > lo in both axes");
    c.window = Window(cplx(window[0], window[1]), cplx(window[2], window[3]));
    window_set = true;
  }
  if (given("--resolution")) {
    c.resolution = resolution;
    resolution_set = true;
  }
  apply_command_defaults(c, window_set, resolution_set);
  validate(c);
  inv.config = c;
  inv.write_config = write_config;
  return inv;
}

// ------------------------------------------------------------------ helpers

/// Worker threads for grid computations: PAINLEVE_THREADS, else the hardware concurrency.
inline unsigned thread_count() {
  if (const char* e = std::getenv("PAINLEVE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(e, &end, 10);
    if (end == e || *end != '\0' || v < 1 || v > 1024) throw ConfigError("PAINLEVE_THREADS must be an integer in 1..1024");
    return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(i) for i in [0, count) on `threads` workers; results go to caller-owned slots, so the
/// output does not depend on scheduling.
template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& body) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < std::min<std::size_t>(threads, count); ++k)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

inline ChainWeights chain_weights(const ExtendedComplex<double>& lambda) {
  const auto w = ContourWeights<double>::from_lambda(lambda);
  return ChainWeights{{w.alpha0, w.alpha1, w.alpha2}};
}

inline const RegionAtlas& atlas() { return suite::shared_atlas(); }

/// Drops polyline points far outside the window (keeping one beyond each visible stretch).
inline std::vector<Polyline> clip(const Polyline& p, const Window& w) {
  std::vector<Polyline> out;
  const double m = 0.05 * w.diagonal();
  Polyline cur;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const bool in = w.contains(p[i], m);
    const bool near = in || (i > 0 && w.contains(p[i - 1], m)) || (i + 1 < p.size() && w.contains(p[i + 1], m));
    if (near) {
      cur.push_back(p[i]);
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

/// The boundary of O_1 as open polylines: the closed trefoil and the unbounded tongue sides.
inline std::vector<Polyline> o1_boundary(const RegionAtlas& a) {
  std::vector<Polyline> out;
  Polyline loop = a.trefoil;
  loop.push_back(loop.front());
  out.push_back(loop);
  for (const auto& sides : a.outer)
    for (const auto& s : sides) out.push_back(s);
  return out;
}

struct Artifacts {
  std::vector<std::string> files;
  void write(const std::filesystem::path& p, const std::string& text) {
    io::write_file(p, text);
    files.push_back(p.string());
  }
};

// ------------------------------------------------------------------ poles

inline std::string poles_svg(const std::vector<cplx>& plus, const std::vector<cplx>& minus,
                             const std::vector<cplx>& zeros, std::size_t n, const Window& w, const RegionAtlas& a) {
  io::Svg svg(w.lo, w.hi);
  svg.axes();
  const double kappa = t_to_z_scale<double>(double(n));
  for (const auto& line : o1_boundary(a)) {
    Polyline z;
    z.reserve(line.size());
    for (const auto& t : line) z.push_back(-kappa * t);
    for (const auto& piece : clip(z, w)) svg.polyline(piece, "black", 1.2);
  }
  for (const auto& p : zeros) svg.circle(p, 2.5, "#1f5fd6");
  for (const auto& p : plus) svg.circle(p, 3.2, "#d62728");
  for (const auto& p : minus) svg.circle(p, 3.2, "white", "#d62728");
  svg.text(w.lo + cplx(0.02, 0.03) * w.diagonal(),
           "q_" + std::to_string(n) + ": poles res +1 (filled), -1 (open), zeros (blue); boundary of -kappa O_1");
  return svg.str(kVersion);
}

inline int run_poles(const RunConfig& c, Artifacts& art) {
  const auto weights = SeedWeights<double>::from_lambda(c.lambda);
  const PoleMap pm = pole_map(c.n, weights, c.window, 1e-12, std::min(3u, thread_count()));
  if (!pm.unresolved.empty()) {
    io::json leaves = io::json::array();
    for (const auto& u : pm.unresolved)
      leaves.push_back({{"window", {u.window.lo.real(), u.window.lo.imag(), u.window.hi.real(), u.window.hi.imag()}},
                        {"count", u.count},
                        {"reason", u.reason}});
    throw NumericalFailure("zero location left unresolved regions", {{"unresolved", leaves}});
  }
  io::CsvWriter csv({"re", "im", "kind"});
  auto rows = [&](const std::vector<cplx>& pts, const char* kind) {
    for (const auto& p : pts) csv.cell(p.real()).cell(p.imag()).cell(std::string(kind)).end_row();
  };
  rows(pm.poles_plus, "pole+");
  rows(pm.poles_minus, "pole-");
  rows(pm.zeros_q, "zero");
  art.write(c.path(".csv"), csv.str());
  art.write(c.path(".svg"), poles_svg(pm.poles_plus, pm.poles_minus, pm.zeros_q, c.n, c.window, atlas()));
  return kOk;
}

// ------------------------------------------------------------------ phase

inline std::string phase_color(const std::string& label) {
  if (label == "Trefoil") return "#f4a582";
  if (label.rfind("TwoCut", 0) == 0) return "#fddbc7";
  if (label == "Corner") return "#b2182b";
  if (label == "BoundaryOneCut") return "#444444";
  return "#d1e5f0";
}

inline int run_phase(const RunConfig& c, Artifacts& art) {
  const RegionAtlas& a = atlas();
  const int r = c.resolution;
  const double dx = c.window.width() / r, dy = c.window.height() / r;
  auto centre = [&](int i, int j) { return c.window.lo + cplx((i + 0.5) * dx, (j + 0.5) * dy); };
  std::vector<std::string> labels(static_cast<std::size_t>(r) * r);
  parallel_for(labels.size(), thread_count(), [&](std::size_t k) {
    const int j = static_cast<int>(k / r), i = static_cast<int>(k % r);
    labels[k] = classify(centre(i, j), a).str();
  });
  // A pixel whose cell contains a corner point is labelled Corner.
  for (const auto& corner : a.corners) {
    const cplx u = corner - c.window.lo;
    const int i = static_cast<int>(std::floor(u.real() / dx)), j = static_cast<int>(std::floor(u.imag() / dy));
    if (i >= 0 && i < r && j >= 0 && j < r) labels[static_cast<std::size_t>(j) * r + i] = "Corner";
  }
  io::CsvWriter csv({"t_re", "t_im", "label"});
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < r; ++i) {
      const cplx t = centre(i, j);
      csv.cell(t.real()).cell(t.imag()).cell(labels[static_cast<std::size_t>(j) * r + i]).end_row();
    }
  art.write(c.path(".csv"), csv.str());

  io::json b = io::document("phase-boundary");
  io::json corners = io::json::array();
  for (const auto& k : a.corners) corners.push_back(io::point_json(k));
  b["corners"] = corners;
  b["loop_real_crossing"] = a.loop_crossing[0];
  b["trefoil"] = io::polyline_json(a.trefoil);
  io::json tongues = io::json::array(), outer = io::json::array(), bounds = io::json::array();
  for (int k = 0; k < 3; ++k) {
    tongues.push_back({{"branch", branch_name(static_cast<Branch>(k))}, {"polygon", io::polyline_json(a.tongues[k])}});
    bounds.push_back({{"branch", branch_name(static_cast<Branch>(k))}, {"polyline", io::polyline_json(a.boundary[k])}});
    for (const auto& s : a.outer[k]) outer.push_back(io::polyline_json(s));
  }
  b["tongues"] = tongues;
  b["tongue_sides"] = outer;
  b["region_boundaries"] = bounds;
  art.write(c.path(".json"), io::dump(b));

  io::Svg svg(c.window.lo, c.window.hi, 800);
  for (int j = 0; j < r; ++j) {
    int i0 = 0;
    for (int i = 1; i <= r; ++i) {
      const auto& l0 = labels[static_cast<std::size_t>(j) * r + i0];
      if (i < r && labels[static_cast<std::size_t>(j) * r + i] == l0) continue;
      svg.rect(c.window.lo + cplx(i0 * dx, j * dy), c.window.lo + cplx(i * dx, (j + 1) * dy), phase_color(l0));
      i0 = i;
    }
  }
  for (const auto& line : o1_boundary(a))
    for (const auto& piece : clip(line, c.window)) svg.polyline(piece, "black", 1.0);
  for (const auto& k : a.corners) svg.circle(k, 3, "#b2182b");
  svg.axes("#888");
  art.write(c.path(".svg"), svg.str(kVersion));
  return kOk;
}

// ------------------------------------------------------------------ trajectories

inline int run_trajectories(const RunConfig& c, Artifacts& art) {
  const CriticalGraph g = critical_graph_at(c.t, atlas());
  const SCurveChain chain = s_curve(g, chain_weights(c.lambda));
  const EquilibriumReport eq = equilibrium_check(g);

  io::json j = io::document("trajectories");
  j["t"] = io::point_json(c.t);
  j["label"] = classify(c.t, atlas()).str();
  j["K"] = io::point_json(g.q.bigK);
  io::json zeros = io::json::array();
  for (std::size_t i = 0; i < g.zeros.size(); ++i)
    zeros.push_back({{"z", io::point_json(g.zeros[i].z)},
                     {"order", g.zeros[i].order},
                     {"adjacency", std::vector<int>(g.adjacency[i].begin(), g.adjacency[i].end())}});
  j["zeros"] = zeros;
  io::json shorts = io::json::array();
  for (const auto& [a, b] : g.short_list) shorts.push_back({a, b});
  j["short_trajectories"] = shorts;
  j["support_arcs"] = g.support.size();
  j["admissible"] = g.admissible;
  j["shading"] = g.shading;
  j["diagnostics"] = g.diagnostics;
  j["equilibrium"] = {{"mass", io::point_json(eq.mass)},
                      {"min_density", eq.min_density},
                      {"s_property", eq.s_property},
                      {"ok", eq.ok()}};
  io::json pieces = io::json::array();
  for (const auto& p : chain.pieces)
    pieces.push_back({{"from", p.from}, {"to", p.to}, {"weight", io::point_json(p.weight)}, {"on_support", p.on_support},
                      {"unbounded", p.unbounded}});
  j["s_curve"] = {{"alpha", {io::point_json(chain.weights.alpha[0]), io::point_json(chain.weights.alpha[1]),
                             io::point_json(chain.weights.alpha[2])}},
                  {"valid", chain.valid},
                  {"boundary_error", chain.boundary_error},
                  {"max_u_off_support", chain.max_u_off_support},
                  {"pieces", pieces},
                  {"diagnostics", chain.diagnostics}};
  art.write(c.path(".json"), io::dump(j));

  io::Svg svg(c.window.lo, c.window.hi);
  svg.axes();
  std::set<int> support(g.support.begin(), g.support.end());
  for (std::size_t k = 0; k < g.arcs.size(); ++k) {
    const auto& arc = g.arcs[k];
    const bool is_short = arc.end == ArcEnd::Zero;
    if (is_short && g.canonical(static_cast<int>(k)) != static_cast<int>(k)) continue;
    const bool supp = support.count(g.canonical(static_cast<int>(k))) > 0;
    for (const auto& piece : clip(arc.points, c.window))
      svg.polyline(piece, supp ? "#d62728" : (is_short ? "black" : "#777"), supp ? 2.5 : (is_short ? 1.6 : 0.9));
  }
  for (const auto& p : chain.pieces)
    if (!p.on_support)
      for (const auto& piece : clip(p.points, c.window)) svg.polyline(piece, "#1f5fd6", 1.4, false, "6,3");
  for (const auto& z : g.zeros) svg.circle(z.z, z.order > 1 ? 5 : 3.5, "black");
  std::ostringstream cap;
  cap << "t = " << c.t.real() << (c.t.imag() < 0 ? " - " : " + ") << std::abs(c.t.imag()) << "i, "
      << classify(c.t, atlas()).str() << "; support red, S-curve continuation blue";
  svg.text(c.window.lo + cplx(0.02, 0.03) * c.window.diagonal(), cap.str());
  art.write(c.path(".svg"), svg.str(kVersion));
  if (!chain.valid)
    throw NumericalFailure("S-curve chain failed its checks",
                           {{"diagnostics", chain.diagnostics}, {"boundary_error", chain.boundary_error}});
  return kOk;
}

// ------------------------------------------------------------------ bridge

template <class Real>
std::array<double, 3> bridge_errors(std::size_t n, cplx t, double bigN, const ExtendedComplex<double>& lam, bool& pole) {
  const ExtendedComplex<Real> l{Complex<Real>(Real(lam.value.real()), Real(lam.value.imag())), lam.infinite};
  const auto w = ContourWeights<Real>::from_lambda(l);
  const Complex<Real> tt(Real(t.real()), Real(t.imag()));
  const Complex<Real> z = -t_to_z_scale<Real>(Real(bigN)) * tt;
  const auto b = bridge<Real>(n, z, Real(bigN), w);
  if (!b) {
    pole = true;
    return {NAN, NAN, NAN};
  }
  auto rel = [](const Complex<Real>& x, const Complex<Real>& y) {
    using std::abs;
    return static_cast<double>(abs(x - y) / abs(y));
  };
  return {rel(b->beta_lhs, b->beta_rhs), rel(b->gamma2_lhs, b->gamma2_rhs), rel(b->psub_lhs, b->psub_rhs)};
}

inline int run_bridge(const RunConfig& c, Artifacts& art) {
  const int r = c.resolution;
  auto point = [&](int i, int j) {
    const double x = r == 1 ? 0.5 : double(i) / (r - 1), y = r == 1 ? 0.5 : double(j) / (r - 1);
    return c.window.lo + cplx(x * c.window.width(), y * c.window.height());
  };
  std::vector<std::array<double, 3>> errs(static_cast<std::size_t>(r) * r);
  std::vector<char> poles(errs.size(), 0);
  parallel_for(errs.size(), thread_count(), [&](std::size_t k) {
    const cplx t = point(static_cast<int>(k % r), static_cast<int>(k / r));
    bool pole = false;
#ifdef PAINLEVE_HAVE_FLOAT128
    if (c.precision == "quad") errs[k] = bridge_errors<quad>(c.n, t, c.bigN, c.lambda, pole);
    else
#endif
      errs[k] = bridge_errors<double>(c.n, t, c.bigN, c.lambda, pole);
    poles[k] = pole;
  });
  io::CsvWriter csv({"t_re", "t_im", "beta", "gamma2", "p_sub", "max", "status"});
  for (std::size_t k = 0; k < errs.size(); ++k) {
    const cplx t = point(static_cast<int>(k % r), static_cast<int>(k / r));
    const auto& e = errs[k];
    csv.cell(t.real()).cell(t.imag()).cell(e[0]).cell(e[1]).cell(e[2]).cell(poles[k] ? NAN : std::max({e[0], e[1], e[2]}));
    csv.cell(std::string(poles[k] ? "pole" : "ok")).end_row();
  }
  art.write(c.path(".csv"), csv.str());
  return kOk;
}

// ------------------------------------------------------------------ verify

inline int run_verify(const RunConfig& c, Artifacts& art, std::ostream& log) {
  suite::Options opt;
  opt.seed = c.seed;
  const std::filesystem::path fig = c.path("-figure-poles.svg");
  opt.figure_writer = [&](const std::vector<cplx>& plus, const std::vector<cplx>& minus, const std::vector<cplx>& zeros,
                          std::size_t n, const RegionAtlas& a) {
    art.write(fig, poles_svg(plus, minus, zeros, n, Window({-8, -8}, {8, 8}), a));
  };
  suite::Notes notes;
  const auto results = suite::run_all(opt, &notes);
  io::json j = io::document("verify");
  io::json checks = io::json::array();
  int failed = 0;
  for (const auto& r : results) {
    log << (r.passed() ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << "  " << r.detail << "\n";
    checks.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed()}, {"detail", r.detail}});
    failed += r.passed() ? 0 : 1;
  }
  j["checks"] = checks;
  j["notes"] = {notes.rotation, notes.exponent};
  j["passed"] = failed == 0;
  art.write(c.path(".json"), io::dump(j));
  return failed == 0 ? kOk : kCheckFailed;
}

// ------------------------------------------------------------------ dispatch

inline int dispatch(const RunConfig& c, std::ostream& log = std::cout, std::ostream& err = std::cerr) {
  Artifacts art;
  try {
    validate(c);
    int code = kOk;
    if (c.command == "poles") code = run_poles(c, art);
    else if (c.command == "phase") code = run_phase(c, art);
    else if (c.command == "trajectories") code = run_trajectories(c, art);
    else if (c.command == "bridge") code = run_bridge(c, art);
    else code = run_verify(c, art, log);
    for (const auto& f : art.files) log << "wrote " << f << "\n";
    return code;
  } catch (const ConfigError& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return kInvalidConfig;
  } catch (const std::exception& e) {
    io::json d = io::document("diagnostic");
    d["error"] = e.what();
    if (const auto* nf = dynamic_cast<const NumericalFailure*>(&e)) d["details"] = nf->details;
    d["config"] = to_json(c);
    const auto path = c.path(".diagnostic.json");
    try {
      io::write_file(path, io::dump(d));
      err << "numerical failure: " << e.what() << " (details in " << path.string() << ")\n";
    } catch (const std::exception& w) {
      err << "numerical failure: " << e.what() << " (diagnostic not written: " << w.what() << ")\n";
    }
    return kNumericalFailure;
  }
}

/// Entry point used by the executable: parse, optionally save the config, dispatch.
inline int main(int argc, const char* const* argv, std::ostream& log = std::cout, std::ostream& err = std::cerr) {
  Invocation inv;
  try {
    inv = parse_args(argc, argv);
  } catch (const ConfigError& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return kInvalidConfig;
  }
  if (inv.help) {
    log << inv.help_text;
    return kOk;
  }
  if (!inv.write_config.empty()) {
    try {
      io::write_file(inv.write_config, dump_config(inv.config));
    } catch (const std::exception& e) {
      err << "invalid configuration: " << e.what() << "\n";
      return kInvalidConfig;
    }
  }
  return dispatch(inv.config, log, err);
}

}  // namespace painleve::cli

#endif
