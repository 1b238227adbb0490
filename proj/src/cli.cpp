#include "aesq/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <unistd.h>

#include "aesq/buchstab.hpp"
#include "aesq/circle.hpp"
#include "aesq/decomposition.hpp"
#include "aesq/errors.hpp"
#include "aesq/local_arithmetic.hpp"
#include "aesq/parallel.hpp"
#include "aesq/representations.hpp"
#include "aesq/sieve_constants.hpp"

namespace aesq {

using json = nlohmann::ordered_json;

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

// JSON has no infinity; unbounded H is written as the string "inf"
json jreal(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return v;
}

class Csv {
 public:
  explicit Csv(std::initializer_list<std::string> header) {
    bool first = true;
    for (const auto& h : header) {
      os_ << (first ? "" : ",") << h;
      first = false;
    }
    os_ << '\n';
  }
  Csv& cell(const std::string& s) {
    os_ << (fresh_ ? "" : ",") << s;
    fresh_ = false;
    return *this;
  }
  Csv& cell(double v) { return cell(format_real(v)); }
  Csv& cell(i64 v) { return cell(std::to_string(v)); }
  Csv& cell(u64 v) { return cell(std::to_string(v)); }
  Csv& cell(int v) { return cell(std::to_string(v)); }
  Csv& cell(bool v) { return cell(std::string(v ? "true" : "false")); }
  void end() {
    os_ << '\n';
    fresh_ = true;
  }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
  bool fresh_ = true;
};

void write_atomic(const std::string& path, const std::string& data) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) fail(ErrorKind::Domain, "cannot open output file " + path);
    f << data;
    f.flush();
    if (!f) fail(ErrorKind::Domain, "write failed for " + path);
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    fail(ErrorKind::Domain, "cannot move output into place: " + ec.message());
  }
}

std::pair<i64, i64> parse_window(const std::string& w) {
  const auto pos = w.find(':');
  if (pos == std::string::npos) fail(ErrorKind::Domain, "window must be lo:hi");
  try {
    return {std::stoll(w.substr(0, pos)), std::stoll(w.substr(pos + 1))};
  } catch (const std::exception&) {
    fail(ErrorKind::Domain, "window must be lo:hi with integer ends");
  }
}

double parse_H(const std::string& s) {
  if (s == "inf" || s == "unbounded") return kUnbounded;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    if (!(v >= 0.0)) fail(ErrorKind::Domain, "H must be non-negative");
    return v;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(ErrorKind::Domain, "H must be a number or inf");
  }
}

OmegaMode parse_mode(const std::string& m) {
  if (m == "upper" || m == "upper_bound" || m == "upper_bound_omega") return OmegaMode::UpperBound;
  if (m == "solved" || m == "solved_omega") return OmegaMode::Solved;
  fail(ErrorKind::Domain, "mode must be upper or solved");
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Infeasible:
      return 2;
    case ErrorKind::Tolerance:
    case ErrorKind::Consistency:
      return 3;
    default:
      return 1;
  }
}

struct Common {
  std::string format;
  std::string out;
  unsigned threads = 1;
};

std::string fmt_of(const Common& c, const char* fallback) { return c.format.empty() ? fallback : c.format; }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sums of almost equal prime squares: sieve constants, local data, representation counts"};
  app.name("aesq");
  app.require_subcommand(1);
  app.fallthrough(true);
  Common common;
  app.add_option("--format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", common.out, "write output to this file (atomic)");
  app.add_option("--threads", common.threads, "worker threads (AESQ_THREADS overrides)")->check(CLI::Range(1u, 256u));

  // buchstab
  auto* buch = app.add_subcommand("buchstab", "omega(u) and its upper bound");
  std::vector<double> b_u;
  std::optional<double> b_from, b_to;
  double b_by = 0.5, b_step = kDefaultBuchstabStep, b_umax = kDefaultBuchstabUMax;
  buch->add_option("--u", b_u, "evaluation points");
  buch->add_option("--from", b_from);
  buch->add_option("--to", b_to);
  buch->add_option("--by", b_by)->check(CLI::PositiveNumber);
  buch->add_option("--step", b_step);
  buch->add_option("--u-max", b_umax);

  // constants
  auto* cons = app.add_subcommand("constants", "sieve constants C(theta), or sigma for a theorem context");
  std::optional<double> c_theta;
  std::string c_mode = "upper", c_context;
  double c_tol = kDefaultConstantsTol;
  std::optional<int> c_s;
  cons->add_option("--theta", c_theta);
  cons->add_option("--mode", c_mode, "upper, solved or both");
  cons->add_option("--tol", c_tol);
  cons->add_option("--context", c_context, "thm2, thm3, thm4 or thm5")->check(CLI::IsMember({"thm2", "thm3", "thm4", "thm5"}));
  cons->add_option("--s", c_s);

  // figure1
  auto* fig = app.add_subcommand("figure1", "the C-tilde table");
  double f_tol = kDefaultConstantsTol;
  std::string f_mode = "upper", f_plot;
  fig->add_option("--tol", f_tol);
  fig->add_option("--mode", f_mode);
  fig->add_option("--plot-data", f_plot, "also write a gnuplot data file");

  // singular-series
  auto* ss = app.add_subcommand("singular-series", "partial singular series");
  i64 ss_n = 0;
  int ss_s = 4;
  u64 ss_P = 1;
  ss->add_option("--n", ss_n)->required();
  ss->add_option("--s", ss_s);
  ss->add_option("--P", ss_P)->required();

  // count
  auto* cnt = app.add_subcommand("count", "representations of n as s prime squares");
  i64 r_n = 0;
  int r_s = 4;
  std::string r_H = "inf";
  std::optional<double> r_Hexp;
  bool r_unordered = false;
  std::size_t r_list = 0;
  cnt->add_option("--n", r_n)->required();
  cnt->add_option("--s", r_s);
  auto* r_H_opt = cnt->add_option("--H", r_H, "number or inf");
  cnt->add_option("--H-exp", r_Hexp, "H = n^e")->excludes(r_H_opt);
  cnt->add_flag("--unordered", r_unordered);
  cnt->add_option("--list", r_list, "list up to this many multisets");

  // scan
  auto* scan = app.add_subcommand("scan", "exceptional-set scan");
  i64 sc_X = 0;
  int sc_s = 4;
  std::string sc_H = "inf", sc_window, sc_summary;
  std::optional<double> sc_Hexp;
  scan->add_option("--X", sc_X)->required();
  scan->add_option("--s", sc_s);
  auto* sc_H_opt = scan->add_option("--H", sc_H);
  scan->add_option("--H-exp", sc_Hexp)->excludes(sc_H_opt);
  scan->add_option("--window", sc_window, "lo:hi");
  scan->add_option("--summary", sc_summary, "write the JSON summary to this file");

  // decomp-check
  auto* dc = app.add_subcommand("decomp-check", "pointwise decomposition checks");
  std::optional<double> d_z, d_U, d_V, d_sx, d_theta, d_x;
  std::optional<u64> d_lo, d_hi;
  dc->add_option("--z", d_z);
  dc->add_option("--U", d_U);
  dc->add_option("--V", d_V);
  dc->add_option("--sqrt-x1", d_sx);
  dc->add_option("--theta", d_theta);
  dc->add_option("--x", d_x);
  dc->add_option("--lo", d_lo);
  dc->add_option("--hi", d_hi);

  // arcs
  auto* arcs = app.add_subcommand("arcs", "major arc partition");
  std::optional<double> a_P, a_Q, a_x, a_theta, a_sigma;
  double a_eps = 1e-3;
  std::vector<double> a_classify;
  arcs->add_option("--P", a_P);
  arcs->add_option("--Q", a_Q);
  arcs->add_option("--x", a_x);
  arcs->add_option("--theta", a_theta);
  arcs->add_option("--sigma", a_sigma);
  arcs->add_option("--eps", a_eps);
  arcs->add_option("--classify", a_classify);

  // window
  auto* win = app.add_subcommand("window", "convolution counts over a window of n");
  double w_lo = 0, w_hi = 0;
  int w_s = 4;
  std::string w_weights = "primes";
  std::optional<u64> w_nmin, w_nmax;
  win->add_option("--lo", w_lo)->required();
  win->add_option("--hi", w_hi)->required();
  win->add_option("--s", w_s);
  win->add_option("--weights", w_weights)->check(CLI::IsMember({"primes", "log"}));
  win->add_option("--n-min", w_nmin);
  win->add_option("--n-max", w_nmax);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("aesq");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << '\n';
    return 1;
  }

  try {
    const unsigned threads = resolve_threads(common.threads);
    std::string result;

    if (buch->parsed()) {
      std::vector<double> us = b_u;
      if (b_from || b_to) {
        if (!b_from || !b_to) fail(ErrorKind::Domain, "--from and --to go together");
        const long k = std::lround(std::floor((*b_to - *b_from) / b_by + 1e-9));
        for (long i = 0; i <= k; ++i) us.push_back(*b_from + b_by * static_cast<double>(i));
      }
      if (us.empty())
        for (int i = 0; i <= 18; ++i) us.push_back(1.0 + 0.5 * i);
      std::optional<BuchstabTable> table;
      for (double u : us)
        if (u > 3.0 && !table) table = solve_buchstab(b_umax, b_step);
      if (fmt_of(common, "csv") == "csv") {
        Csv csv{"u", "omega", "bound"};
        for (double u : us) {
          const double w = table ? omega(u, *table) : omega_closed_form(u);
          csv.cell(u).cell(w).cell(omega_upper(u)).end();
        }
        result = csv.str();
      } else {
        json j;
        j["step"] = b_step;
        j["u_max"] = b_umax;
        j["rows"] = json::array();
        for (double u : us) {
          const double w = table ? omega(u, *table) : omega_closed_form(u);
          j["rows"].push_back({{"u", u}, {"omega", w}, {"bound", omega_upper(u)}});
        }
        result = j.dump(2) + "\n";
      }
    } else if (cons->parsed()) {
      if (!c_context.empty()) {
        if (!c_theta) fail(ErrorKind::Domain, "--theta is required");
        const TheoremContext ctx = c_context == "thm2"   ? TheoremContext::Thm2
                                   : c_context == "thm3" ? TheoremContext::Thm3
                                   : c_context == "thm4" ? TheoremContext::Thm4First
                                                         : TheoremContext::Thm5;
        const double sigma = sigma_admissible(ctx, *c_theta, c_s);
        if (fmt_of(common, "csv") == "csv") {
          Csv csv{"context", "theta", "s", "sigma", "feasible"};
          csv.cell(std::string(context_name(ctx))).cell(*c_theta).cell(c_s ? std::to_string(*c_s) : std::string()).cell(sigma).cell(true).end();
          result = csv.str();
        } else {
          json j{{"context", context_name(ctx)}, {"theta", *c_theta}, {"s", c_s ? json(*c_s) : json(nullptr)}, {"sigma", sigma}, {"feasible", true}};
          result = j.dump(2) + "\n";
        }
      } else {
        if (!c_theta) fail(ErrorKind::Domain, "--theta is required");
        std::vector<OmegaMode> modes;
        if (c_mode == "both")
          modes = {OmegaMode::UpperBound, OmegaMode::Solved};
        else
          modes = {parse_mode(c_mode)};
        std::vector<ConstantsReport> reps;
        for (auto m : modes) reps.push_back(c_of_theta(*c_theta, m, c_tol));
        if (fmt_of(common, "csv") == "csv") {
          Csv csv{"theta", "sigma", "mode", "ell4", "ell5star", "ell8", "d11", "kappa2", "C", "d11_degenerate"};
          for (const auto& r : reps)
            csv.cell(r.theta).cell(r.sigma).cell(std::string(mode_name(r.mode))).cell(r.ell4).cell(r.ell5star).cell(r.ell8).cell(r.d11).cell(r.kappa2).cell(r.C_value).cell(r.d11_degenerate).end();
          result = csv.str();
        } else {
          json arr = json::array();
          for (const auto& r : reps)
            arr.push_back({{"theta", r.theta}, {"sigma", r.sigma}, {"mode", mode_name(r.mode)}, {"ell4", r.ell4},
                           {"ell5star", r.ell5star}, {"ell8", r.ell8}, {"d11", r.d11}, {"kappa2", r.kappa2},
                           {"C", r.C_value}, {"tol", r.tol}, {"d11_degenerate", r.d11_degenerate}});
          result = json{{"reports", arr}}.dump(2) + "\n";
        }
      }
    } else if (fig->parsed()) {
      const OmegaMode mode = parse_mode(f_mode);
      const auto& pts = figure1_points();
      std::vector<double> vals(pts.size());
      parallel_chunks(pts.size(), threads, [&](std::size_t, std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) vals[i] = c_of_theta(pts[i].theta, mode, f_tol).C_value;
      });
      bool increasing = true;
      for (std::size_t i = 1; i < vals.size(); ++i)
        if (!(vals[i] < vals[i - 1])) increasing = false;
      if (fmt_of(common, "csv") == "csv") {
        Csv csv{"theta", "label", "C_tilde", "published", "abs_diff"};
        for (std::size_t i = 0; i < pts.size(); ++i)
          csv.cell(pts[i].theta).cell(std::string(pts[i].label)).cell(vals[i]).cell(pts[i].published).cell(std::fabs(vals[i] - pts[i].published)).end();
        result = csv.str();
      } else {
        json rows = json::array();
        for (std::size_t i = 0; i < pts.size(); ++i)
          rows.push_back({{"theta", pts[i].theta}, {"label", pts[i].label}, {"C_tilde", vals[i]},
                          {"published", pts[i].published}, {"abs_diff", std::fabs(vals[i] - pts[i].published)}});
        result = json{{"mode", mode_name(mode)}, {"tol", f_tol}, {"increasing", increasing}, {"rows", rows}}.dump(2) + "\n";
      }
      if (!f_plot.empty()) {
        std::ostringstream os;
        os << "# theta C_tilde published\n";
        for (std::size_t i = pts.size(); i-- > 0;)
          os << format_real(pts[i].theta) << ' ' << format_real(vals[i]) << ' ' << format_real(pts[i].published) << '\n';
        write_atomic(f_plot, os.str());
      }
    } else if (ss->parsed()) {
      const auto r = singular_series_partial(ss_n, ss_s, ss_P, threads);
      if (fmt_of(common, "json") == "csv") {
        Csv csv{"q", "A", "partial"};
        double acc = 0.0;
        for (const auto& t : r.terms) {
          acc += t.value;
          csv.cell(t.q).cell(t.value).cell(acc).end();
        }
        result = csv.str();
      } else {
        json terms = json::array();
        for (const auto& t : r.terms) terms.push_back({{"q", t.q}, {"A", t.value}});
        result = json{{"n", r.n}, {"s", r.s}, {"P", r.P}, {"value", r.value}, {"terms", terms}}.dump(2) + "\n";
      }
    } else if (cnt->parsed()) {
      RepQuery q;
      q.n = r_n;
      q.s = r_s;
      q.H = r_Hexp ? std::pow(static_cast<double>(r_n), *r_Hexp) : parse_H(r_H);
      q.ordered = !r_unordered;
      const u64 c = count_representations(q);
      DirectResult listing;
      if (r_list > 0) listing = enumerate_representations(q, false, r_list);
      if (fmt_of(common, "csv") == "csv") {
        Csv csv{"n", "s", "H", "ordered", "count"};
        csv.cell(q.n).cell(q.s).cell(q.H).cell(q.ordered).cell(c).end();
        result = csv.str();
      } else {
        json j{{"n", q.n}, {"s", q.s}, {"H", jreal(q.H)}, {"ordered", q.ordered}, {"count", c}};
        if (r_list > 0) j["multisets"] = listing.multisets;
        result = j.dump(2) + "\n";
      }
    } else if (scan->parsed()) {
      HSpec H;
      if (sc_Hexp)
        H.exponent = *sc_Hexp;
      else
        H.value = parse_H(sc_H);
      std::optional<std::pair<i64, i64>> window;
      if (!sc_window.empty()) window = parse_window(sc_window);
      err << "scan: s=" << sc_s << " X=" << sc_X << " H=" << H.describe() << '\n';
      const auto rep = exceptional_scan(sc_X, sc_s, H, window, threads);
      err << "scan: done, " << rep.rows.size() << " targets, " << rep.exceptions.size() << " exceptions\n";
      json summary{{"X", rep.X},
                   {"s", rep.s},
                   {"H", H.exponent ? json(nullptr) : jreal(H.value)},
                   {"H_exp", H.exponent ? json(*H.exponent) : json(nullptr)},
                   {"window", {rep.lo, rep.hi}},
                   {"default_window", !window.has_value()},
                   {"scanned_count", rep.rows.size()},
                   {"h_count", rep.h_count},
                   {"exceptions", rep.exceptions},
                   {"spot_checks", rep.spot_checks},
                   {"backend", rep.backend}};
      if (!sc_summary.empty()) write_atomic(sc_summary, summary.dump(2) + "\n");
      if (fmt_of(common, "csv") == "csv") {
        Csv csv{"n", "in_H", "rep_count"};
        for (const auto& r : rep.rows) csv.cell(r.n).cell(r.in_H).cell(r.count).end();
        result = csv.str();
      } else {
        result = summary.dump(2) + "\n";
      }
    } else if (dc->parsed()) {
      DecompParams p;
      if (d_theta) {
        if (!d_x) fail(ErrorKind::Domain, "--theta needs --x");
        p = DecompParams::from_theta(*d_theta, *d_x);
      } else {
        if (!d_z || !d_U || !d_V || !d_sx) fail(ErrorKind::Domain, "give --z --U --V --sqrt-x1 or --theta --x");
        p.z = *d_z;
        p.U = *d_U;
        p.V = *d_V;
        p.sqrt_x1 = *d_sx;
      }
      u64 lo = 0, hi = 0;
      if (d_lo && d_hi) {
        lo = *d_lo;
        hi = *d_hi;
      } else if (d_theta && !d_lo && !d_hi) {
        std::tie(lo, hi) = short_interval(*d_theta, *d_x);
      } else {
        fail(ErrorKind::Domain, "give both --lo and --hi");
      }
      const auto r = verify_interval(p, lo, hi, threads);
      const char names[5] = {'a', 'b', 'c', 'd', 'e'};
      if (fmt_of(common, "json") == "csv") {
        Csv csv{"check", "run", "failures"};
        for (int k = 0; k < 5; ++k) csv.cell(std::string(1, names[k])).cell(r.checks_run[k]).cell(r.failures[k]).end();
        result = csv.str();
      } else {
        json run, failures, samples = json::array();
        for (int k = 0; k < 5; ++k) {
          run[std::string(1, names[k])] = r.checks_run[k];
          failures[std::string(1, names[k])] = r.failures[k];
        }
        for (const auto& f : r.failure_samples) samples.push_back({{"check", std::string(1, f.check)}, {"m", f.m}, {"detail", f.detail}});
        json params{{"z", p.z}, {"U", p.U}, {"V", p.V}, {"sqrt_x1", p.sqrt_x1}};
        if (p.theta) params["theta"] = *p.theta;
        if (p.x) params["x"] = *p.x;
        const auto first = r.first_counterexample();
        result = json{{"interval", {lo, hi}},
                      {"params", params},
                      {"checks_run", run},
                      {"failures", failures},
                      {"check_e_applicable", r.check_e_applicable},
                      {"expected_failures_e", r.expected_failures_e},
                      {"first_counterexample", first ? json{{"check", std::string(1, first->check)}, {"m", first->m}, {"detail", first->detail}} : json(nullptr)},
                      {"failure_samples", samples}}
                     .dump(2) + "\n";
      }
    } else if (arcs->parsed()) {
      double P = 0, Q = 0;
      if (a_P && a_Q) {
        P = *a_P;
        Q = *a_Q;
      } else if (a_x && a_theta && a_sigma) {
        std::tie(P, Q) = arc_parameters(*a_x, *a_theta, *a_sigma, a_eps);
      } else {
        fail(ErrorKind::Domain, "give --P --Q or --x --theta --sigma");
      }
      const auto ap = arc_partition(P, Q);
      if (!a_classify.empty()) {
        if (fmt_of(common, "csv") == "csv") {
          Csv csv{"alpha", "arc", "q", "a"};
          for (double al : a_classify) {
            const auto arc = ap.classify(al);
            csv.cell(al).cell(std::string(arc ? "major" : "minor")).cell(arc ? std::to_string(arc->q) : std::string()).cell(arc ? std::to_string(arc->a) : std::string()).end();
          }
          result = csv.str();
        } else {
          json arr = json::array();
          for (double al : a_classify) {
            const auto arc = ap.classify(al);
            arr.push_back({{"alpha", al}, {"arc", arc ? "major" : "minor"}, {"q", arc ? json(arc->q) : json(nullptr)}, {"a", arc ? json(arc->a) : json(nullptr)}});
          }
          result = json{{"P", P}, {"Q", Q}, {"classified", arr}}.dump(2) + "\n";
        }
      } else if (fmt_of(common, "csv") == "csv") {
        Csv csv{"q", "a", "center", "half_width"};
        for (const auto& a : ap.arcs) csv.cell(a.q).cell(a.a).cell(a.center).cell(a.half_width).end();
        result = csv.str();
      } else {
        json arr = json::array();
        for (const auto& a : ap.arcs) arr.push_back({{"q", a.q}, {"a", a.a}, {"center", a.center}, {"half_width", a.half_width}});
        result = json{{"P", P}, {"Q", Q}, {"count", ap.arcs.size()}, {"disjoint", ap.disjoint()}, {"measure", ap.measure()}, {"arcs", arr}}.dump(2) + "\n";
      }
    } else if (win->parsed()) {
      if (w_s < 2) fail(ErrorKind::Domain, "window needs s >= 2");
      const CoeffVector cv = w_weights == "primes" ? prime_square_coeffs(w_lo, w_hi) : log_weight_coeffs(w_lo, w_hi);
      const auto wc = window_counts(cv, w_s, kDefaultMaxConvolution, w_nmax ? *w_nmax : std::numeric_limits<u64>::max());
      std::vector<std::pair<u64, double>> rows;
      if (!cv.coeffs.empty()) {
        for (u64 n = wc.n_min(); n <= wc.n_max(); n += wc.stride) {
          if (w_nmin && n < *w_nmin) continue;
          if (w_nmax && n > *w_nmax) break;
          rows.emplace_back(n, wc.at(n));
        }
      }
      if (fmt_of(common, "csv") == "csv") {
        Csv csv{"n", "count"};
        for (const auto& [n, v] : rows) csv.cell(n).cell(v).end();
        result = csv.str();
      } else {
        json arr = json::array();
        for (const auto& [n, v] : rows) arr.push_back({{"n", n}, {"count", v}});
        result = json{{"s", w_s}, {"weights", w_weights}, {"lo", w_lo}, {"hi", w_hi}, {"mass", cv.mass()},
                      {"backend", wc.backend}, {"max_rounding_deviation", wc.max_rounding_deviation}, {"rows", arr}}
                     .dump(2) + "\n";
      }
    }

    if (common.out.empty())
      out << result << std::flush;
    else
      write_atomic(common.out, result);
    return 0;
  } catch (const Error& e) {
    err << "error: " << kind_name(e.kind()) << ": " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace aesq
