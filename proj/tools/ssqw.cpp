// Command-line front end for the split-step walk index library.
//
// Subcommands:
//   index   classify a coefficient profile analytically and extrapolate the
//           heat-trace index numerically
//   ssf     tabulate the half-line spectral shift function as CSV
//   det     evaluate the perturbation determinant at given points
//   sweep   classification heatmap over limit-parameter grids
//   verify  run the library's cross-check suites
//
// Configuration files are JSON.  CSV output carries a header row and floats
// with 17 significant digits.  Exit codes: 0 success, 1 verification
// failure, 2 configuration error.

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ssqw/analytic.hpp"
#include "ssqw/coefficients.hpp"
#include "ssqw/halfline.hpp"
#include "ssqw/index_engine.hpp"
#include "ssqw/verify.hpp"
#include "ssqw/walk_builders.hpp"

namespace {

using nlohmann::json;
using namespace ssqw;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Writes text to a file, or to stdout when the path is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output path: " + path);
  out << text;
  if (!out) throw ConfigError("write failed: " + path);
}

const char* regime_name(SideRegime r) {
  switch (r) {
    case SideRegime::CoinDominant:
      return "coin-dominant";
    case SideRegime::ShiftDominant:
      return "shift-dominant";
    case SideRegime::Gapless:
      return "gapless";
    case SideRegime::Endpoint:
      return "endpoint";
  }
  return "unknown";
}

const char* region_name(RegionTag r) {
  switch (r) {
    case RegionTag::BelowZero:
      return "below-zero";
    case RegionTag::Inner:
      return "inner";
    case RegionTag::OuterGap:
      return "outer-gap";
    case RegionTag::MiddleBand:
      return "middle-band";
    case RegionTag::AboveEdge:
      return "above-edge";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Configuration

struct SweepAxis {
  bool ranged = false;
  double fixed = 0.0;
  double min = 0.0;
  double max = 0.0;
  long count = 1;

  std::vector<double> values() const {
    if (!ranged) return {fixed};
    std::vector<double> v(count);
    for (long i = 0; i < count; ++i) {
      v[i] = min + (max - min) * static_cast<double>(i) /
                       static_cast<double>(count - 1);
    }
    return v;
  }
};

struct RunConfig {
  std::optional<AnisotropicLimits> limits;
  std::optional<WalkCoefficients> profile;
  long n = 256;
  std::vector<double> t_grid;  // empty: derive from n at use time
  std::map<std::string, SweepAxis> sweep;
  std::string out;
};

double need_number(const json& j, const std::string& key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ConfigError("missing or non-numeric field '" + key + "'");
  }
  return j.at(key).get<double>();
}

double opt_number(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) {
    throw ConfigError("non-numeric field '" + key + "'");
  }
  return j.at(key).get<double>();
}

AnisotropicLimits parse_limits(const json& j) {
  try {
    return make_limits(need_number(j, "a_plus"), need_number(j, "p_plus"),
                       need_number(j, "a_minus"), need_number(j, "p_minus"),
                       opt_number(j, "b_plus_phase", 0.0),
                       opt_number(j, "q_plus_phase", 0.0),
                       opt_number(j, "b_minus_phase", 0.0),
                       opt_number(j, "q_minus_phase", 0.0));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid limits: ") + e.what());
  }
}

WalkCoefficients parse_profile(const json& j, const AnisotropicLimits& limits) {
  const std::string kind = j.value("kind", std::string("step"));
  try {
    if (kind == "step") {
      std::vector<SiteOverride> overrides;
      if (j.contains("overrides")) {
        if (!j.at("overrides").is_array()) {
          throw ConfigError("'overrides' must be an array");
        }
        for (const json& o : j.at("overrides")) {
          SiteOverride site;
          site.x = static_cast<long>(need_number(o, "x"));
          site.a = need_number(o, "a");
          site.p = need_number(o, "p");
          site.b_phase = opt_number(o, "b_phase", 0.0);
          site.q_phase = opt_number(o, "q_phase", 0.0);
          overrides.push_back(site);
        }
      }
      return WalkCoefficients::two_sided_step(limits, std::move(overrides));
    }
    if (kind == "geometric") {
      return WalkCoefficients::geometric_decay(
          limits, need_number(j, "rate"), opt_number(j, "a_amplitude", 0.0),
          opt_number(j, "p_amplitude", 0.0),
          opt_number(j, "b_phase_amplitude", 0.0),
          opt_number(j, "q_phase_amplitude", 0.0));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid profile: ") + e.what());
  }
  throw ConfigError("unknown profile kind '" + kind + "'");
}

SweepAxis parse_axis(const json& j, const std::string& key) {
  if (!j.contains(key)) {
    throw ConfigError("sweep section is missing axis '" + key + "'");
  }
  const json& a = j.at(key);
  SweepAxis axis;
  if (a.is_number()) {
    axis.fixed = a.get<double>();
    if (std::abs(axis.fixed) > 1.0) {
      throw ConfigError("sweep axis '" + key + "' outside [-1, 1]");
    }
    return axis;
  }
  if (!a.is_object()) {
    throw ConfigError("sweep axis '" + key + "' must be a number or object");
  }
  axis.ranged = true;
  axis.min = need_number(a, "min");
  axis.max = need_number(a, "max");
  axis.count = static_cast<long>(need_number(a, "count"));
  if (axis.count < 2) {
    throw ConfigError("sweep axis '" + key + "' needs count >= 2");
  }
  if (axis.min > axis.max || std::abs(axis.min) > 1.0 ||
      std::abs(axis.max) > 1.0) {
    throw ConfigError("sweep axis '" + key +
                      "' range must be ordered and inside [-1, 1]");
  }
  return axis;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse failure: ") + e.what());
  }

  RunConfig cfg;
  if (j.contains("limits")) cfg.limits = parse_limits(j.at("limits"));

  if (j.contains("n")) {
    if (!j.at("n").is_number_integer()) {
      throw ConfigError("'n' must be an integer");
    }
    cfg.n = j.at("n").get<long>();
  }
  if (cfg.n < 64) throw ConfigError("'n' must be >= 64");

  if (j.contains("t_grid")) {
    if (!j.at("t_grid").is_array() || j.at("t_grid").empty()) {
      throw ConfigError("'t_grid' must be a nonempty array");
    }
    for (const json& t : j.at("t_grid")) {
      if (!t.is_number()) throw ConfigError("'t_grid' entries must be numbers");
      cfg.t_grid.push_back(t.get<double>());
    }
    for (std::size_t i = 0; i < cfg.t_grid.size(); ++i) {
      if (cfg.t_grid[i] <= 0.0 ||
          (i > 0 && cfg.t_grid[i] <= cfg.t_grid[i - 1])) {
        throw ConfigError("'t_grid' must be positive and strictly ascending");
      }
    }
  }

  if (j.contains("profile") || cfg.limits.has_value()) {
    if (!cfg.limits.has_value()) {
      throw ConfigError("'profile' requires a 'limits' section");
    }
    const json profile_json =
        j.contains("profile") ? j.at("profile") : json::object();
    cfg.profile = parse_profile(profile_json, *cfg.limits);
    try {
      validate_coefficients(*cfg.profile);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("profile failed validation: ") + e.what());
    }
  }

  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    for (const char* key : {"a_plus", "p_plus", "a_minus", "p_minus"}) {
      cfg.sweep[key] = parse_axis(s, key);
    }
  }

  cfg.out = j.value("out", std::string());
  return cfg;
}

std::vector<double> default_t_grid(long n) {
  const double cap = static_cast<double>(n) / 8.0;
  return {cap / 4.0, cap / 2.0, 3.0 * cap / 4.0, cap};
}

// ---------------------------------------------------------------------------
// Plot emission (presentational only)

std::string svg_curve(const std::vector<std::array<double, 2>>& pts,
                      const std::string& x_label,
                      const std::string& y_label) {
  const double w = 720.0, h = 360.0, margin = 50.0;
  double x_lo = pts.front()[0], x_hi = pts.back()[0];
  double y_lo = 0.0, y_hi = 1.0;
  for (const auto& p : pts) {
    y_lo = std::min(y_lo, p[1]);
    y_hi = std::max(y_hi, p[1]);
  }
  y_lo -= 0.05;
  y_hi += 0.05;
  auto sx = [&](double x) {
    return margin + (w - 2 * margin) * (x - x_lo) / (x_hi - x_lo);
  };
  auto sy = [&](double y) {
    return h - margin - (h - 2 * margin) * (y - y_lo) / (y_hi - y_lo);
  };
  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w
      << "' height='" << h << "'>\n"
      << "<rect width='100%' height='100%' fill='white'/>\n"
      << "<line x1='" << margin << "' y1='" << h - margin << "' x2='"
      << w - margin << "' y2='" << h - margin
      << "' stroke='black' stroke-width='1'/>\n"
      << "<line x1='" << margin << "' y1='" << margin << "' x2='" << margin
      << "' y2='" << h - margin << "' stroke='black' stroke-width='1'/>\n"
      << "<text x='" << w / 2 << "' y='" << h - 12
      << "' font-size='13' text-anchor='middle'>" << x_label << "</text>\n"
      << "<text x='16' y='" << h / 2 << "' font-size='13' text-anchor='middle'"
      << " transform='rotate(-90 16 " << h / 2 << ")'>" << y_label
      << "</text>\n<polyline fill='none' stroke='#1f77b4' stroke-width='1.5'"
      << " points='";
  for (const auto& p : pts) svg << sx(p[0]) << "," << sy(p[1]) << " ";
  svg << "'/>\n</svg>\n";
  return svg.str();
}

std::string svg_heatmap(const std::vector<double>& xs,
                        const std::vector<double>& ys,
                        const std::vector<double>& values,
                        const std::string& x_label,
                        const std::string& y_label) {
  const double margin = 50.0;
  const double cell = std::max(4.0, 480.0 / static_cast<double>(xs.size()));
  const double w = margin * 2 + cell * static_cast<double>(xs.size());
  const double h = margin * 2 + cell * static_cast<double>(ys.size());
  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w
      << "' height='" << h << "'>\n"
      << "<rect width='100%' height='100%' fill='white'/>\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t k = 0; k < ys.size(); ++k) {
      const double v = std::clamp(values[i * ys.size() + k] / 2.0, -1.0, 1.0);
      const int r = v >= 0 ? 255 - static_cast<int>(77 * v)
                           : 255 - static_cast<int>(222 * -v);
      const int g = 255 - static_cast<int>((v >= 0 ? 231 * v : 153 * -v));
      const int b = v >= 0 ? 255 - static_cast<int>(212 * v)
                           : 255 - static_cast<int>(83 * -v);
      svg << "<rect x='" << margin + cell * static_cast<double>(i) << "' y='"
          << margin + cell * static_cast<double>(ys.size() - 1 - k) << "' "
          << "width='" << cell << "' height='" << cell << "' fill='rgb(" << r
          << "," << g << "," << b << ")'/>\n";
    }
  }
  svg << "<text x='" << w / 2 << "' y='" << h - 12
      << "' font-size='13' text-anchor='middle'>" << x_label << "</text>\n"
      << "<text x='16' y='" << h / 2 << "' font-size='13' text-anchor='middle'"
      << " transform='rotate(-90 16 " << h / 2 << ")'>" << y_label
      << "</text>\n</svg>\n";
  return svg.str();
}

// ---------------------------------------------------------------------------
// Subcommands

int run_index(const std::string& config_path, long n_override,
              const std::string& out_override) {
  RunConfig cfg = parse_config(config_path);
  if (!cfg.profile) {
    throw ConfigError("index requires a 'limits' section in the config");
  }
  if (n_override > 0) {
    if (n_override < 64) throw ConfigError("'--n' must be >= 64");
    cfg.n = n_override;
  }
  if (cfg.t_grid.empty()) cfg.t_grid = default_t_grid(cfg.n);

  const ClassificationCell cell = fredholm_classify(cfg.profile->limits());
  const OperatorMatrix q =
      build_qe0(*cfg.profile, cfg.n, Boundary::FullLineTruncated);
  IndexReport report;
  try {
    report = witten_numeric(q, cfg.t_grid);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("bad t_grid for this n: ") + e.what());
  }
  report.cell = cell;

  std::ostringstream text;
  text << "truncation n = " << cfg.n << ", t grid = {";
  for (std::size_t i = 0; i < cfg.t_grid.size(); ++i) {
    text << (i ? ", " : "") << cfg.t_grid[i];
  }
  text << "}\n"
       << "plus side:  " << regime_name(cell.plus_regime) << "\n"
       << "minus side: " << regime_name(cell.minus_regime) << "\n";
  if (cell.fredholm) {
    text << "fredholm: yes, index = " << *cell.fredholm_index << "\n";
  } else {
    text << "fredholm: no\n";
  }
  text << "witten analytic: " << fmt17(cell.witten) << "\n"
       << "witten numeric:  " << fmt17(report.extrapolated)
       << " (tail residual " << fmt17(report.fit_residual) << ", trace sites ["
       << report.trace_window.first << ", " << report.trace_window.last()
       << "])\n";
  if (report.unreliable_fit) {
    text << "warning: tail fit unreliable; extend the t grid or enlarge n\n";
  }
  std::cout << text.str();

  const std::string out = out_override.empty() ? cfg.out : out_override;
  if (!out.empty()) {
    const AnisotropicLimits& lim = cfg.profile->limits();
    json rec;
    rec["n"] = cfg.n;
    rec["t_grid"] = cfg.t_grid;
    rec["limits"] = {{"a_plus", lim.a_plus},
                     {"p_plus", lim.p_plus},
                     {"a_minus", lim.a_minus},
                     {"p_minus", lim.p_minus}};
    rec["classification"] = {
        {"plus", regime_name(cell.plus_regime)},
        {"minus", regime_name(cell.minus_regime)},
        {"fredholm", cell.fredholm},
        {"witten_analytic", cell.witten}};
    if (cell.fredholm_index) {
      rec["classification"]["fredholm_index"] = *cell.fredholm_index;
    } else {
      rec["classification"]["fredholm_index"] = nullptr;
    }
    json samples = json::array();
    for (const auto& [t, value] : report.samples) {
      samples.push_back({t, value});
    }
    rec["samples"] = samples;
    rec["witten_numeric"] = report.extrapolated;
    rec["fit_residual"] = report.fit_residual;
    rec["unreliable_fit"] = report.unreliable_fit;
    rec["truncation"] = report.truncation;
    rec["trace_window"] = {{"first", report.trace_window.first},
                           {"length", report.trace_window.length}};
    emit(out, rec.dump(2) + "\n");
  }
  return 0;
}

int run_ssf(double p, long grid, const std::string& out,
            const std::string& svg) {
  if (!(std::abs(p) < 1.0)) throw ConfigError("'--p' must satisfy |p| < 1");
  if (grid < 2) throw ConfigError("'--grid' must be >= 2");
  const HalfLineParams params = make_halfline_params(p);
  const double lo = -0.5;
  const double hi = 1.2 * params.edge();

  std::ostringstream csv;
  csv << "x,xi,region\n";
  std::vector<std::array<double, 2>> pts;
  for (long i = 0; i < grid; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) /
                              static_cast<double>(grid - 1);
    const SSFSample s = ssf(x, params);
    csv << fmt17(x) << ',' << fmt17(s.xi) << ',' << region_name(s.region)
        << '\n';
    pts.push_back({x, s.xi});
  }
  emit(out, csv.str());
  if (!svg.empty()) emit(svg, svg_curve(pts, "x", "xi"));
  return 0;
}

int run_det(double p, const std::vector<double>& coords,
            const std::string& out) {
  if (!(std::abs(p) < 1.0)) throw ConfigError("'--p' must satisfy |p| < 1");
  if (coords.empty() || coords.size() % 2 != 0) {
    throw ConfigError("det expects an even, nonzero number of point "
                      "coordinates: re im [re im ...]");
  }
  const HalfLineParams params = make_halfline_params(p);
  std::ostringstream csv;
  csv << "z_re,z_im,det_re,det_im,evaluator\n";
  for (std::size_t i = 0; i < coords.size(); i += 2) {
    const double re = coords[i];
    const double im = coords[i + 1];
    Complex value;
    const char* evaluator;
    try {
      if (im == 0.0 && re >= 0.0) {
        value = boundary_det(re, params);
        evaluator = "boundary";
      } else {
        value = perturbation_determinant(Complex(re, im), params);
        evaluator = "interior";
      }
    } catch (const std::invalid_argument& e) {
      throw ConfigError("point (" + fmt17(re) + ", " + fmt17(im) +
                        ") not evaluable: " + e.what());
    }
    csv << fmt17(re) << ',' << fmt17(im) << ',' << fmt17(value.real()) << ','
        << fmt17(value.imag()) << ',' << evaluator << '\n';
  }
  emit(out, csv.str());
  return 0;
}

int run_sweep(const std::string& config_path, const std::string& out_override,
              const std::string& svg) {
  RunConfig cfg = parse_config(config_path);
  if (cfg.sweep.empty()) {
    throw ConfigError("sweep requires a 'sweep' section in the config");
  }
  const std::array<std::vector<double>, 4> axes = {
      cfg.sweep.at("a_plus").values(), cfg.sweep.at("p_plus").values(),
      cfg.sweep.at("a_minus").values(), cfg.sweep.at("p_minus").values()};
  const long total = static_cast<long>(axes[0].size() * axes[1].size() *
                                       axes[2].size() * axes[3].size());

  std::vector<ClassificationCell> cells(total);
  std::atomic<long> next{0};
  std::mutex error_lock;
  std::exception_ptr first_error;

  // Cells are pure and independent; dispatch to a pool but store each result
  // at its grid index so the output order never depends on scheduling.
  auto worker = [&] {
    try {
      for (long i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
        long rest = i;
        const double pm = axes[3][rest % axes[3].size()];
        rest /= static_cast<long>(axes[3].size());
        const double am = axes[2][rest % axes[2].size()];
        rest /= static_cast<long>(axes[2].size());
        const double pp = axes[1][rest % axes[1].size()];
        rest /= static_cast<long>(axes[1].size());
        const double ap = axes[0][rest];
        cells[i] = fredholm_classify(make_limits(ap, pp, am, pm));
      }
    } catch (...) {
      const std::scoped_lock lock(error_lock);
      if (!first_error) first_error = std::current_exception();
    }
  };
  const unsigned n_workers =
      std::max(1u, std::min(std::thread::hardware_concurrency(), 16u));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < n_workers; ++i) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  std::ostringstream csv;
  csv << "a_plus,p_plus,a_minus,p_minus,fredholm,index,witten\n";
  for (long i = 0; i < total; ++i) {
    const ClassificationCell& c = cells[i];
    csv << fmt17(c.limits.a_plus) << ',' << fmt17(c.limits.p_plus) << ','
        << fmt17(c.limits.a_minus) << ',' << fmt17(c.limits.p_minus) << ','
        << (c.fredholm ? '1' : '0') << ',';
    if (c.fredholm_index) csv << *c.fredholm_index;
    csv << ',' << fmt17(c.witten) << '\n';
  }
  const std::string out = out_override.empty() ? cfg.out : out_override;
  emit(out, csv.str());

  if (!svg.empty()) {
    // Render only the plain two-axis case; anything else has no natural 2D
    // layout and the plot is presentational anyway.
    std::vector<int> ranged;
    const char* names[] = {"a_plus", "p_plus", "a_minus", "p_minus"};
    for (int k = 0; k < 4; ++k) {
      if (cfg.sweep.at(names[k]).ranged) ranged.push_back(k);
    }
    if (ranged.size() == 2) {
      std::vector<double> values;
      values.reserve(static_cast<std::size_t>(total));
      for (long i = 0; i < total; ++i) values.push_back(cells[i].witten);
      // Cell order is row-major over (axis0, axis1, axis2, axis3); with only
      // two ranged axes that collapses to (outer, inner) over those two.
      emit(svg, svg_heatmap(axes[static_cast<std::size_t>(ranged[0])],
                            axes[static_cast<std::size_t>(ranged[1])], values,
                            names[ranged[1]], names[ranged[0]]));
    } else {
      std::cerr << "note: sweep plot skipped (needs exactly two ranged axes)"
                << "\n";
    }
  }
  return 0;
}

int run_verify(const std::string& suite, long n, double tol_scale,
               const std::string& out) {
  VerifyReport report;
  try {
    report = run_verify_suite(suite, n, tol_scale);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  std::ostringstream text;
  int passed = 0;
  for (const VerifyCheck& check : report.checks) {
    char line[160];
    std::snprintf(line, sizeof(line), "[%s] %s/%s value=%.6e tol=%.6e\n",
                  check.pass ? "PASS" : "FAIL", report.suite.c_str(),
                  check.name.c_str(), check.value, check.tolerance);
    text << line;
    passed += check.pass ? 1 : 0;
  }
  text << "suite " << report.suite << ": " << passed << "/"
       << report.checks.size() << " checks passed\n";
  std::cout << text.str();
  if (!out.empty()) emit(out, text.str());
  return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"split-step quantum walk index toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string svg_path;
  std::string suite = "all";
  long n_override = 0;
  long verify_n = 256;
  long grid = 400;
  double p = 0.0;
  double tol_scale = 1.0;
  std::vector<double> coords;

  CLI::App* idx = app.add_subcommand(
      "index", "classify a profile and extrapolate its heat-trace index");
  idx->add_option("--config", config_path, "JSON run configuration")
      ->required();
  idx->add_option("--n", n_override, "override the truncation size (>= 64)");
  idx->add_option("--out", out_path, "write a JSON record here");

  CLI::App* ssf_cmd = app.add_subcommand(
      "ssf", "tabulate the spectral shift function as CSV");
  ssf_cmd->add_option("--p", p, "anisotropy parameter, |p| < 1")->required();
  ssf_cmd->add_option("--grid", grid, "number of sample points (default 400)");
  ssf_cmd->add_option("--out", out_path, "CSV path (default stdout)");
  ssf_cmd->add_option("--svg", svg_path, "also render the curve here");

  CLI::App* det_cmd = app.add_subcommand(
      "det", "evaluate the perturbation determinant at points re im ...");
  det_cmd->add_option("--p", p, "anisotropy parameter, |p| < 1")->required();
  det_cmd->add_option("points", coords, "point coordinates: re im [re im ...]");
  det_cmd->add_option("--out", out_path, "CSV path (default stdout)");

  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "classification table over limit-parameter grids");
  sweep_cmd->add_option("--config", config_path, "JSON run configuration")
      ->required();
  sweep_cmd->add_option("--out", out_path, "CSV path (default stdout)");
  sweep_cmd->add_option("--svg", svg_path, "also render a heatmap here");

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run the library cross-check suites");
  verify_cmd->add_option(
      "suite", suite, "algebra | analytic | heat | krein | gauge | all");
  verify_cmd->add_option("--n", verify_n, "suite problem size (default 256)");
  verify_cmd->add_option("--tol-scale", tol_scale,
                         "multiply every tolerance by this factor");
  verify_cmd->add_option("--out", out_path, "also write the report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (idx->parsed()) return run_index(config_path, n_override, out_path);
    if (ssf_cmd->parsed()) return run_ssf(p, grid, out_path, svg_path);
    if (det_cmd->parsed()) return run_det(p, coords, out_path);
    if (sweep_cmd->parsed()) return run_sweep(config_path, out_path, svg_path);
    if (verify_cmd->parsed())
      return run_verify(suite, verify_n, tol_scale, out_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
