#include "lab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "lozenge/enumeration.hpp"
#include "lozenge/growth.hpp"
#include "lozenge/io.hpp"
#include "lozenge/kernel.hpp"
#include "lozenge/render.hpp"
#include "lozenge/sampler.hpp"
#include "lozenge/turning.hpp"
#include "lozenge/verify.hpp"

namespace lab {

using namespace lozenge;

namespace {

const json* find(const json& j, const std::string& ptr) {
  const json::json_pointer p(ptr);
  return j.contains(p) ? &j.at(p) : nullptr;
}

double get_double(const json& j, const std::string& ptr, double def) {
  const json* v = find(j, ptr);
  if (!v) return def;
  if (!v->is_number()) throw KeyError(ptr, "expected a number");
  return v->get<double>();
}

long get_long(const json& j, const std::string& ptr, long def) {
  const json* v = find(j, ptr);
  if (!v) return def;
  if (!v->is_number_integer()) throw KeyError(ptr, "expected an integer");
  return v->get<long>();
}

std::string get_string(const json& j, const std::string& ptr, const std::string& def) {
  const json* v = find(j, ptr);
  if (!v) return def;
  if (!v->is_string()) throw KeyError(ptr, "expected a string");
  return v->get<std::string>();
}

void check_keys(const json& j, const std::string& ptr, std::initializer_list<const char*> allowed) {
  const json* v = ptr.empty() ? &j : find(j, ptr);
  if (!v) return;
  if (!v->is_object()) throw KeyError(ptr.empty() ? "/" : ptr, "expected an object");
  for (const auto& [k, _] : v->items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }))
      throw KeyError(ptr + "/" + k, "unknown key");
  }
}

template <class F>
void parallel_for(std::size_t n, int threads, F&& f) {
  const int nt = std::max(1, std::min<int>(threads, static_cast<int>(n)));
  if (nt <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex m;
  std::vector<std::thread> pool;
  for (int w = 0; w < nt; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(m);
          if (!failure) failure = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::string hash_text(const RunConfig& cfg) {
  // outputs depend on neither the worker count nor where they are written
  json h = cfg.raw;
  h.erase("threads");
  for (auto& [name, section] : h.items())
    if (section.is_object())
      for (const char* k : {"csv", "svg", "out"}) section.erase(k);
  return h.dump();
}

std::string header(const RunConfig& cfg) { return reproducibility_header(hash_text(cfg), cfg.seed); }

json summary_base(const std::string& command, const RunConfig& cfg) {
  return json{{"command", command},
              {"version", kVersion},
              {"config_hash", config_hash(hash_text(cfg))},
              {"seed", cfg.seed},
              {"outputs", json::array()}};
}

void write_csv(const RunConfig& cfg, const std::string& path, const std::string& body) {
  write_text_file(path, header(cfg) + "\n" + body);
}

void write_svg(const RunConfig& cfg, const std::string& path, const std::string& svg) {
  const std::string h = header(cfg);
  write_text_file(path, "<!-- " + h.substr(2) + " -->\n" + svg);
}

SpecializationParams admissible_params(const RunConfig& cfg, const BoxDomain& box) {
  const BackWall wall = box.wall();
  const SpecializationParams x = x_params(cfg.schedule.anchored_to(wall), wall);
  const FiniteAdmissibility fa = finite_admissibility(x);
  if (!fa.ok) {
    std::ostringstream os;
    os << "partition function diverges: q product over steps " << fa.worst_two_i / 2.0 << " .. "
       << fa.worst_two_j / 2.0 << " has log " << fa.max_log_pair;
    throw KeyError("/schedule", os.str());
  }
  return x;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// ---- sample ----

json cmd_sample(const RunConfig& cfg) {
  const json& j = cfg.raw;
  check_keys(j, "/sample", {"n", "method", "csv", "svg", "tv_tol", "render"});
  const long n = get_long(j, "/sample/n", 100);
  if (n < 1) throw KeyError("/sample/n", "must be positive");
  const std::string method = get_string(j, "/sample/method", "growth");
  const std::string csv = get_string(j, "/sample/csv", "");
  const std::string svg = get_string(j, "/sample/svg", "");
  const long render = get_long(j, "/sample/render", 1);

  const ResolvedDomain rd = resolve_domain(cfg);
  admissible_params(cfg, rd.box);
  json s = summary_base("sample", cfg);
  std::vector<PlanePartition> draws;
  if (method == "growth") {
    draws = growth_sample(rd.box, cfg.schedule, cfg.seed, n, cfg.threads);
    s["tv_bound"] = 0.0;
  } else if (method == "transfer") {
    SamplerOptions opt;
    opt.tv_tol = get_double(j, "/sample/tv_tol", 1e-9);
    opt.threads = cfg.threads;
    SampleRun run = sample_domain(rd.box, cfg.schedule, cfg.seed, n, opt);
    draws = std::move(run.draws);
    s["tv_bound"] = run.report.tv_bound;
    s["h_max"] = run.report.h_max;
    s["l_max"] = run.report.l_max;
  } else {
    throw KeyError("/sample/method", "expected growth or transfer");
  }
  double mean = 0.0;
  int max_entry = 0;
  for (const auto& d : draws) {
    mean += static_cast<double>(d.volume());
    max_entry = std::max(max_entry, d.max_entry());
  }
  s["method"] = method;
  s["n"] = n;
  s["domain"] = {{"lambda", rd.box.lambda.parts()}, {"c", rd.box.c}, {"d", rd.box.d}};
  s["adjustments"] = rd.adjustments;
  s["mean_volume"] = mean / static_cast<double>(n);
  s["max_entry"] = max_entry;
  if (!csv.empty()) {
    std::ostringstream os;
    write_lozenge_csv(os, draws);
    write_csv(cfg, csv, os.str());
    s["outputs"].push_back(csv);
  }
  if (!svg.empty()) {
    const std::size_t k = static_cast<std::size_t>(std::clamp<long>(render, 1, n));
    std::vector<PlanePartition> shown(draws.begin(), draws.begin() + static_cast<long>(k));
    std::string text;
    const RenderStats st = render_svg(shown, text);
    write_svg(cfg, svg, text);
    s["outputs"].push_back(svg);
    s["polygons"] = st.polygons;
  }
  return s;
}

// ---- kernel / correlations ----

KernelOptions kernel_options(const json& j, const std::string& section) {
  KernelOptions opt;
  opt.rel_tol = get_double(j, "/" + section + "/tol", opt.rel_tol);
  if (!(opt.rel_tol > 0.0)) throw KeyError("/" + section + "/tol", "must be positive");
  return opt;
}

std::vector<LatticePoint> checked_points(const RunConfig& cfg, const std::string& section,
                                         const BackWall& wall) {
  const std::string key = "/" + section + "/points";
  const std::string path = get_string(cfg.raw, key, "");
  if (path.empty()) throw KeyError(key, "a points file is required");
  std::vector<LatticePoint> pts;
  try {
    pts = read_points_csv(path);
  } catch (const ConfigError& e) {
    throw KeyError(key, e.what());
  }
  if (pts.empty()) throw KeyError(key, "no points");
  for (const LatticePoint& p : pts)
    if (!is_lattice_site(wall, p))
      throw KeyError(key, "(" + std::to_string(p.t) + ", " + std::to_string(p.two_h) +
                              ") is not a lozenge site of the domain");
  return pts;
}

json cmd_kernel(const RunConfig& cfg) {
  check_keys(cfg.raw, "/kernel", {"points", "tol", "out"});
  const std::string out = get_string(cfg.raw, "/kernel/out", "kernel.csv");
  const ResolvedDomain rd = resolve_domain(cfg);
  const SpecializationParams x = admissible_params(cfg, rd.box);
  const auto pts = checked_points(cfg, "kernel", x.wall());
  const KernelOptions opt = kernel_options(cfg.raw, "kernel");
  const std::size_t n = pts.size();
  std::vector<KernelValue> vals(n * n);
  parallel_for(n * n, cfg.threads, [&](std::size_t k) { vals[k] = kernel(x, pts[k / n], pts[k % n], opt); });
  std::ostringstream os;
  os << "t1,two_h1,t2,two_h2,re,im,err_est\n";
  double worst = 0.0;
  for (std::size_t k = 0; k < n * n; ++k) {
    const LatticePoint &a = pts[k / n], &b = pts[k % n];
    os << a.t << ',' << a.two_h << ',' << b.t << ',' << b.two_h << ',' << fmt(vals[k].value.real()) << ','
       << fmt(vals[k].value.imag()) << ',' << fmt(vals[k].error_estimate) << '\n';
    worst = std::max(worst, vals[k].error_estimate);
  }
  write_csv(cfg, out, os.str());
  json s = summary_base("kernel", cfg);
  s["points"] = n;
  s["max_error_estimate"] = worst;
  s["outputs"].push_back(out);
  return s;
}

json cmd_correlations(const RunConfig& cfg) {
  check_keys(cfg.raw, "/correlations", {"points", "tol", "out"});
  const ResolvedDomain rd = resolve_domain(cfg);
  const SpecializationParams x = admissible_params(cfg, rd.box);
  const auto pts = checked_points(cfg, "correlations", x.wall());
  const KernelOptions opt = kernel_options(cfg.raw, "correlations");
  const auto km = kernel_matrix(x, pts, opt);
  json s = summary_base("correlations", cfg);
  s["points"] = json::array();
  for (std::size_t i = 0; i < pts.size(); ++i)
    s["points"].push_back({{"t", pts[i].t}, {"two_h", pts[i].two_h}, {"density", km[i][i].real()}});
  s["correlation"] = correlations(x, pts, opt);
  const std::string out = get_string(cfg.raw, "/correlations/out", "");
  if (!out.empty()) {
    std::ostringstream os;
    os << "t,two_h,density\n";
    for (std::size_t i = 0; i < pts.size(); ++i)
      os << pts[i].t << ',' << pts[i].two_h << ',' << fmt(km[i][i].real()) << '\n';
    os << "# correlation," << fmt(s["correlation"].get<double>()) << '\n';
    write_csv(cfg, out, os.str());
    s["outputs"].push_back(out);
  }
  return s;
}

// ---- boundary ----

std::string boundary_svg(const std::vector<BoundaryPoint>& pts, const LimitGeometry& g) {
  const double half = g.floor == Floor::unbounded ? g.u + 2.0 : (g.floor == Floor::triangular ? g.u : g.v);
  const double tw = half + 0.5;
  const double ch = 2.0 * tw;
  const double scale = 400.0 / (2.0 * tw);
  auto px = [&](double tau) { return (tau + tw) * scale; };
  auto py = [&](double chi) { return (ch - chi) * scale; };
  auto inside = [&](const BoundaryPoint& p) {
    return std::isfinite(p.tau) && std::isfinite(p.chi) && std::abs(p.tau) <= tw && std::abs(p.chi) <= ch;
  };
  std::ostringstream os;
  os.precision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * tw * scale << "\" height=\""
     << 2 * ch * scale << "\" fill=\"none\">\n";
  // back wall
  os << "<polyline stroke=\"#888\" stroke-width=\"1\" points=\"";
  for (int i = 0; i <= 200; ++i) {
    const double tau = -half + 2.0 * half * i / 200.0;
    os << px(tau) << ',' << py(g.back_wall(tau)) << ' ';
  }
  os << "\"/>\n";
  // frozen boundary, broken where it leaves the window or jumps
  const double jump = 0.25 * tw;
  std::vector<std::vector<const BoundaryPoint*>> runs(1);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!inside(pts[i])) {
      if (!runs.back().empty()) runs.emplace_back();
      continue;
    }
    if (!runs.back().empty()) {
      const BoundaryPoint* q = runs.back().back();
      if (std::hypot(q->tau - pts[i].tau, q->chi - pts[i].chi) > jump) runs.emplace_back();
    }
    runs.back().push_back(&pts[i]);
  }
  for (const auto& run : runs) {
    if (run.size() < 2) continue;
    os << "<polyline stroke=\"#c0504d\" stroke-width=\"1.5\" points=\"";
    for (const BoundaryPoint* p : run) os << px(p->tau) << ',' << py(p->chi) << ' ';
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

json cmd_boundary(const RunConfig& cfg) {
  const json& j = cfg.raw;
  check_keys(j, "/boundary", {"regime", "samples", "csv", "svg"});
  LimitGeometry g = limit_geometry(cfg);
  const std::string reg = get_string(j, "/boundary/regime", to_string(g.floor));
  const Floor f = floor_from_string(reg, "/boundary/regime");
  if (f == Floor::unbounded) g = LimitGeometry::unbounded(g.u, g.alpha);
  else if (f == Floor::triangular) g = LimitGeometry::triangular(g.u, g.alpha);
  else g = LimitGeometry::bounded(g.u, g.v, g.alpha);
  const long samples = get_long(j, "/boundary/samples", 400);
  if (samples < 2) throw KeyError("/boundary/samples", "need at least two samples");
  const std::string csv = get_string(j, "/boundary/csv", "boundary.csv");
  const std::string svg = get_string(j, "/boundary/svg", "boundary.svg");

  const auto pts = trace_frozen_boundary(g, static_cast<int>(samples));
  std::ostringstream os;
  os << "z,tau,chi\n";
  double tmin = INFINITY, tmax = -INFINITY, cmin = INFINITY, cmax = -INFINITY;
  for (const auto& p : pts) {
    os << fmt(p.z) << ',' << fmt(p.tau) << ',' << fmt(p.chi) << '\n';
    tmin = std::min(tmin, p.tau);
    tmax = std::max(tmax, p.tau);
    cmin = std::min(cmin, p.chi);
    cmax = std::max(cmax, p.chi);
  }
  write_csv(cfg, csv, os.str());
  write_svg(cfg, svg, boundary_svg(pts, g));
  json s = summary_base("boundary", cfg);
  s["regime"] = to_string(g.floor);
  s["geometry"] = {{"u", g.u}, {"alpha", g.alpha}};
  if (g.floor == Floor::bounded) s["geometry"]["v"] = g.v;
  s["points"] = pts.size();
  s["tau_range"] = {tmin, tmax};
  s["chi_range"] = {cmin, cmax};
  s["outputs"] = {csv, svg};
  return s;
}

// ---- turning ----

json cmd_turning(const RunConfig& cfg) {
  const json& j = cfg.raw;
  check_keys(j, "/turning", {"edge", "t_max", "h_min", "h_max", "h_steps", "csv"});
  const LimitGeometry g = limit_geometry(cfg);
  if (g.floor != Floor::bounded) throw KeyError("/geometry/floor", "turning kernels need the bounded floor");
  const std::string edge = get_string(j, "/turning/edge", "bottom");
  if (edge != "bottom" && edge != "top") throw KeyError("/turning/edge", "expected bottom or top");
  const TurningEdge which = edge == "bottom" ? TurningEdge::bottom : TurningEdge::top;
  const long t_max = get_long(j, "/turning/t_max", 3);
  const double h_min = get_double(j, "/turning/h_min", -2.0);
  const double h_max = get_double(j, "/turning/h_max", 2.0);
  const long h_steps = get_long(j, "/turning/h_steps", 9);
  if (t_max < 1) throw KeyError("/turning/t_max", "must be at least 1");
  if (h_steps < 1) throw KeyError("/turning/h_steps", "must be at least 1");
  if (h_steps > 1 && !(h_max > h_min)) throw KeyError("/turning/h_max", "must exceed h_min");
  const std::string csv = get_string(j, "/turning/csv", "turning.csv");

  const ResolvedDomain rd = resolve_domain(cfg);
  const BackWall wall = rd.box.wall();
  const SliceParity parity = edge_parity(x_params(cfg.schedule.anchored_to(wall), wall));
  const bool inter = cfg.schedule.regime == Regime::intermediate;
  if (!inter && !(g.alpha > 1.0)) throw KeyError("/schedule/alpha", "two turning points need alpha > 1");

  struct Node {
    int t_hat;
    double h;
  };
  std::vector<Node> grid;
  for (int t = 1; t <= t_max; ++t)
    for (long k = 0; k < h_steps; ++k)
      grid.push_back({t, h_steps == 1 ? h_min : h_min + (h_max - h_min) * k / (h_steps - 1.0)});
  const std::size_t n = grid.size();
  std::vector<double> vals(n * n, std::numeric_limits<double>::quiet_NaN());
  parallel_for(n * n, cfg.threads, [&](std::size_t k) {
    const Node &a = grid[k / n], &b = grid[k % n];
    try {
      vals[k] = inter ? turning_kernel_intermediate(a.t_hat, b.t_hat, a.h, b.h, cfg.schedule.gamma, parity, g)
                      : turning_kernel(a.t_hat, b.t_hat, a.h, b.h, which, parity, g);
    } catch (const DomainError&) {
      // lattice-scale singular entry: left as nan
    }
  });
  std::ostringstream os;
  os << "t1_hat,h1,t2_hat,h2,value\n";
  long singular = 0;
  for (std::size_t k = 0; k < n * n; ++k) {
    const Node &a = grid[k / n], &b = grid[k % n];
    os << a.t_hat << ',' << fmt(a.h) << ',' << b.t_hat << ',' << fmt(b.h) << ',' << fmt(vals[k]) << '\n';
    singular += std::isnan(vals[k]) ? 1 : 0;
  }
  write_csv(cfg, csv, os.str());
  const TurningPointData tp = turning_points(g);
  json s = summary_base("turning", cfg);
  s["edge"] = inter ? "intermediate" : edge;
  s["edge_parity"] = parity == SliceParity::odd ? "odd" : "even";
  s["turning_point"] = {{"tau", tp.side},
                        {"chi", inter ? intermediate_turning_chi(g) : (which == TurningEdge::bottom ? tp.chi_bottom : tp.chi_top)}};
  s["grid_points"] = n;
  s["singular_entries"] = singular;
  s["outputs"].push_back(csv);
  return s;
}

// ---- verify ----

json cmd_verify(const RunConfig& cfg, std::ostream& err, bool& all_pass) {
  check_keys(cfg.raw, "/verify", {"suite"});
  const std::string suite = get_string(cfg.raw, "/verify/suite", "oracle");
  if (suite != "oracle") throw KeyError("/verify/suite", "unknown suite " + suite);
  json s = summary_base("verify", cfg);
  s["suite"] = suite;
  s["cases"] = json::array();
  all_pass = true;
  for (const OracleCase& c : run_oracle_suite()) {
    err << (c.pass ? "PASS " : "FAIL ") << c.name << " max|d1|=" << c.max_err_one << " max|d2|=" << c.max_err_two
        << " tol=" << c.tolerance << '\n';
    all_pass = all_pass && c.pass;
    json pts = json::array();
    for (const auto& p : c.points) pts.push_back({p.t, p.two_h});
    s["cases"].push_back({{"name", c.name},
                          {"pass", c.pass},
                          {"Z", c.z},
                          {"tail_bound", c.tail_bound},
                          {"h_max", c.h_max},
                          {"configurations", c.configurations},
                          {"max_err_one", c.max_err_one},
                          {"max_err_two", c.max_err_two},
                          {"tolerance", c.tolerance},
                          {"points", pts},
                          {"one_point", {{"kernel", c.kernel_one}, {"oracle", c.oracle_one}}},
                          {"two_point", {{"kernel", c.kernel_two}, {"oracle", c.oracle_two}}}});
  }
  s["pass"] = all_pass;
  return s;
}

// string-valued flag mapped onto a config key
struct Flag {
  CLI::Option* opt = nullptr;
  std::string ptr;
  char kind = 's';  // 's' string, 'i' integer, 'd' number
  std::shared_ptr<std::string> value = std::make_shared<std::string>();
};

}  // namespace

const char* to_string(Floor f) {
  switch (f) {
    case Floor::bounded: return "bounded";
    case Floor::triangular: return "triangular";
    case Floor::unbounded: return "unbounded";
  }
  return "bounded";
}

Floor floor_from_string(const std::string& s, const std::string& key) {
  if (s == "bounded") return Floor::bounded;
  if (s == "triangular") return Floor::triangular;
  if (s == "unbounded") return Floor::unbounded;
  throw KeyError(key, "expected bounded, triangular or unbounded");
}

json load_config_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    json j = json::parse(text);
    if (!j.is_object()) throw KeyError("/", "config must be a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw KeyError("/", std::string("invalid JSON in ") + path + ": " + e.what());
  }
}

RunConfig parse_config(const json& raw) {
  RunConfig cfg;
  cfg.raw = raw;
  check_keys(raw, "",
             {"schedule", "geometry", "domain", "seed", "threads", "sample", "kernel", "correlations", "boundary",
              "turning", "verify"});
  check_keys(raw, "/schedule", {"regime", "r", "alpha", "gamma", "anchor"});
  check_keys(raw, "/geometry", {"u", "v", "floor", "r", "unbounded_extent"});
  check_keys(raw, "/domain", {"lambda", "c", "d"});

  GeometryConfig& g = cfg.geometry;
  g.u = get_double(raw, "/geometry/u", g.u);
  g.v = get_double(raw, "/geometry/v", g.v);
  g.r = get_double(raw, "/geometry/r", g.r);
  g.unbounded_extent = get_double(raw, "/geometry/unbounded_extent", g.unbounded_extent);
  g.floor = floor_from_string(get_string(raw, "/geometry/floor", "bounded"), "/geometry/floor");
  if (!(g.r > 0.0)) throw KeyError("/geometry/r", "must be positive");
  if (!(g.u > 0.0)) throw KeyError("/geometry/u", "must be positive");
  if (g.floor == Floor::bounded && !(g.v > g.u)) throw KeyError("/geometry/v", "bounded floor needs v > u");

  WeightSchedule& s = cfg.schedule;
  const std::string regime = get_string(raw, "/schedule/regime", "homogeneous");
  try {
    s.regime = regime_from_string(regime);
  } catch (const Error&) {
    throw KeyError("/schedule/regime", "expected homogeneous, periodic or intermediate");
  }
  const std::string anchor = get_string(raw, "/schedule/anchor", to_string(s.anchor));
  try {
    s.anchor = anchor_from_string(anchor);
  } catch (const Error&) {
    throw KeyError("/schedule/anchor", "expected absolute or wall_relative");
  }
  s.r = get_double(raw, "/schedule/r", g.r);
  s.alpha = get_double(raw, "/schedule/alpha", s.alpha);
  s.gamma = get_double(raw, "/schedule/gamma", s.gamma);
  if (!(s.r > 0.0)) throw KeyError("/schedule/r", "must be positive");
  if (!(s.alpha > 0.0)) throw KeyError("/schedule/alpha", "must be positive");
  try {
    s.validate();
  } catch (const Error& e) {
    throw KeyError("/schedule", e.what());
  }

  if (find(raw, "/domain")) {
    std::vector<int> parts;
    if (const json* l = find(raw, "/domain/lambda")) {
      if (!l->is_array() || !std::all_of(l->begin(), l->end(), [](const json& e) { return e.is_number_integer(); }))
        throw KeyError("/domain/lambda", "expected an array of integers");
      parts = l->get<std::vector<int>>();
    }
    if (!find(raw, "/domain/c")) throw KeyError("/domain/c", "required");
    if (!find(raw, "/domain/d")) throw KeyError("/domain/d", "required");
    try {
      BoxDomain box{Partition(parts), static_cast<int>(get_long(raw, "/domain/c", 0)),
                    static_cast<int>(get_long(raw, "/domain/d", 0))};
      box.wall();
      cfg.domain = box;
    } catch (const KeyError&) {
      throw;
    } catch (const Error& e) {
      throw KeyError("/domain", e.what());
    }
  }

  const long seed = get_long(raw, "/seed", 0);
  if (seed < 0) throw KeyError("/seed", "must be non-negative");
  cfg.seed = static_cast<std::uint64_t>(seed);
  cfg.threads = static_cast<int>(get_long(raw, "/threads", 1));
  if (cfg.threads < 1) throw KeyError("/threads", "must be at least 1");
  return cfg;
}

ResolvedDomain resolve_domain(const RunConfig& cfg) {
  if (cfg.domain) return {*cfg.domain, {}};
  StaircaseSpec spec;
  spec.u = cfg.geometry.u;
  spec.v = cfg.geometry.v;
  spec.r = cfg.geometry.r;
  spec.unbounded = cfg.geometry.floor == Floor::unbounded;
  spec.triangular = cfg.geometry.floor == Floor::triangular;
  spec.unbounded_extent = cfg.geometry.unbounded_extent;
  try {
    Staircase st = staircase_family(spec);
    return {st.domain, st.adjustments};
  } catch (const DomainError& e) {
    throw KeyError("/geometry", e.what());
  }
}

LimitGeometry limit_geometry(const RunConfig& cfg) {
  const GeometryConfig& g = cfg.geometry;
  const double alpha = cfg.schedule.regime == Regime::periodic ? cfg.schedule.alpha : 1.0;
  try {
    switch (g.floor) {
      case Floor::bounded: return LimitGeometry::bounded(g.u, g.v, alpha);
      case Floor::triangular: return LimitGeometry::triangular(g.u, alpha);
      case Floor::unbounded: return LimitGeometry::unbounded(g.u, alpha);
    }
  } catch (const DomainError& e) {
    throw KeyError("/geometry", e.what());
  }
  return LimitGeometry::bounded(g.u, g.v, alpha);
}

std::vector<LatticePoint> read_points_csv(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::vector<LatticePoint> pts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    long t = 0, h = 0;
    if (!(ls >> t >> h)) {
      if (pts.empty() && lineno == 1) continue;  // header
      throw ConfigError("line " + std::to_string(lineno) + " is not a (t, two_h) pair");
    }
    pts.push_back({static_cast<int>(t), static_cast<int>(h)});
  }
  return pts;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"lozenge-lab: random skew plane partitions, exact kernels and limit shapes"};
  app.require_subcommand(1);
  std::vector<Flag> flags;
  std::string config_path;
  auto add = [&](CLI::App* sub, const std::string& name, const std::string& ptr, char kind,
                 const std::string& desc) {
    Flag f;
    f.ptr = ptr;
    f.kind = kind;
    f.opt = sub->add_option(name, *f.value, desc);
    flags.push_back(f);
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration");
    add(sub, "--seed", "/seed", 'i', "random seed");
    add(sub, "--threads", "/threads", 'i', "worker threads (default LOZENGE_LAB_THREADS or 1)");
  };

  CLI::App* sample = app.add_subcommand("sample", "exact samples as lozenge CSV and SVG");
  common(sample);
  add(sample, "--n", "/sample/n", 'i', "number of draws");
  add(sample, "--svg", "/sample/svg", 's', "SVG output path");
  add(sample, "--csv", "/sample/csv", 's', "lozenge CSV output path");
  add(sample, "--method", "/sample/method", 's', "growth (exact) or transfer (truncated transfer matrix)");
  add(sample, "--render", "/sample/render", 'i', "number of draws drawn in the SVG");

  CLI::App* kern = app.add_subcommand("kernel", "finite correlation kernel on every pair of points");
  common(kern);
  add(kern, "--points", "/kernel/points", 's', "CSV of (t, two_h)");
  add(kern, "--tol", "/kernel/tol", 'd', "relative quadrature tolerance");
  add(kern, "--out", "/kernel/out", 's', "CSV output path");

  CLI::App* corr = app.add_subcommand("correlations", "n-point correlation of a point set");
  common(corr);
  add(corr, "--points", "/correlations/points", 's', "CSV of (t, two_h)");
  add(corr, "--tol", "/correlations/tol", 'd', "relative quadrature tolerance");
  add(corr, "--out", "/correlations/out", 's', "CSV output path");

  CLI::App* bnd = app.add_subcommand("boundary", "frozen boundary curve as CSV and SVG");
  common(bnd);
  add(bnd, "--regime", "/boundary/regime", 's', "unbounded, bounded or triangular");
  add(bnd, "--samples", "/boundary/samples", 'i', "curve parameter samples");
  add(bnd, "--csv", "/boundary/csv", 's', "CSV output path");
  add(bnd, "--svg", "/boundary/svg", 's', "SVG output path");

  CLI::App* turn = app.add_subcommand("turning", "turning point kernel on a (t_hat, h) grid");
  common(turn);
  add(turn, "--edge", "/turning/edge", 's', "bottom or top");
  add(turn, "--t-max", "/turning/t_max", 'i', "largest t_hat");
  add(turn, "--h-min", "/turning/h_min", 'd', "smallest rescaled height");
  add(turn, "--h-max", "/turning/h_max", 'd', "largest rescaled height");
  add(turn, "--h-steps", "/turning/h_steps", 'i', "heights per slice");
  add(turn, "--csv", "/turning/csv", 's', "CSV output path");

  CLI::App* ver = app.add_subcommand("verify", "kernel against brute-force enumeration");
  common(ver);
  add(ver, "--suite", "/verify/suite", 's', "oracle");

  auto fail = [&](int code, const std::string& kind, const std::string& msg, const std::string& key) {
    json e{{"error", kind}, {"message", msg}, {"exit_code", code}};
    if (!key.empty()) e["key"] = key;
    out << e.dump() << '\n';
    err << "lozenge-lab: " << msg << '\n';
    return code;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    return fail(2, "usage", e.what(), "");
  }

  try {
    json raw = config_path.empty() ? json::object() : load_config_file(config_path);
    bool threads_flag = false;
    for (const Flag& f : flags) {
      if (f.opt->count() == 0) continue;
      const json::json_pointer p(f.ptr);
      try {
        if (f.kind == 'i') raw[p] = std::stol(*f.value);
        else if (f.kind == 'd') raw[p] = std::stod(*f.value);
        else raw[p] = *f.value;
      } catch (const std::logic_error&) {
        throw KeyError(f.ptr, "flag " + f.opt->get_name() + " got " + *f.value);
      }
      threads_flag = threads_flag || f.ptr == "/threads";
    }
    if (!threads_flag) {
      if (const char* env = std::getenv("LOZENGE_LAB_THREADS")) {
        try {
          raw["threads"] = std::stol(env);
        } catch (const std::logic_error&) {
          throw KeyError("/threads", std::string("LOZENGE_LAB_THREADS=") + env);
        }
      }
    }
    const RunConfig cfg = parse_config(raw);
    json summary;
    int code = 0;
    if (sample->parsed()) summary = cmd_sample(cfg);
    else if (kern->parsed()) summary = cmd_kernel(cfg);
    else if (corr->parsed()) summary = cmd_correlations(cfg);
    else if (bnd->parsed()) summary = cmd_boundary(cfg);
    else if (turn->parsed()) summary = cmd_turning(cfg);
    else {
      bool ok = false;
      summary = cmd_verify(cfg, err, ok);
      code = ok ? 0 : 1;
    }
    out << summary.dump() << '\n';
    return code;
  } catch (const KeyError& e) {
    return fail(2, "config", e.what(), e.key());
  } catch (const ConfigError& e) {
    return fail(2, "config", e.what(), "");
  } catch (const DomainError& e) {
    return fail(2, "domain", e.what(), "");
  } catch (const IoError& e) {
    return fail(2, "io", e.what(), "");
  } catch (const NumericError& e) {
    return fail(3, "numeric", e.what(), "");
  } catch (const ResourceError& e) {
    return fail(4, "resource", e.what(), "");
  } catch (const json::exception& e) {
    return fail(2, "config", e.what(), "");
  }
}

}  // namespace lab
