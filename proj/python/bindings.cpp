#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "aesq/buchstab.hpp"
#include "aesq/circle.hpp"
#include "aesq/cli.hpp"
#include "aesq/decomposition.hpp"
#include "aesq/errors.hpp"
#include "aesq/local_arithmetic.hpp"
#include "aesq/representations.hpp"
#include "aesq/sieve_constants.hpp"

namespace py = pybind11;
using namespace aesq;

namespace {

py::object fraction(const std::string& num, const std::string& den) {
  return py::module_::import("fractions").attr("Fraction")(num + "/" + den);
}

OmegaMode mode_of(const std::string& m) {
  if (m == "upper") return OmegaMode::UpperBound;
  if (m == "solved") return OmegaMode::Solved;
  fail(ErrorKind::Domain, "mode must be 'upper' or 'solved'");
}

DecompParams params_of(std::optional<double> z, std::optional<double> U, std::optional<double> V,
                       std::optional<double> sqrt_x1, std::optional<double> theta, std::optional<double> x) {
  if (theta) {
    if (!x) fail(ErrorKind::Domain, "theta needs x");
    return DecompParams::from_theta(*theta, *x);
  }
  if (!z || !U || !V || !sqrt_x1) fail(ErrorKind::Domain, "give z, U, V, sqrt_x1 or theta, x");
  DecompParams p;
  p.z = *z;
  p.U = *U;
  p.V = *V;
  p.sqrt_x1 = *sqrt_x1;
  return p;
}

py::dict report_dict(const ConstantsReport& r) {
  py::dict d;
  d["theta"] = r.theta;
  d["sigma"] = r.sigma;
  d["ell4"] = r.ell4;
  d["ell5star"] = r.ell5star;
  d["ell8"] = r.ell8;
  d["d11"] = r.d11;
  d["kappa2"] = r.kappa2;
  d["C"] = r.C_value;
  d["mode"] = mode_name(r.mode);
  d["d11_degenerate"] = r.d11_degenerate;
  return d;
}

HSpec hspec(double H, std::optional<double> H_exp) {
  HSpec h;
  if (H_exp)
    h.exponent = *H_exp;
  else
    h.value = H;
  return h;
}

#define PARAM_ARGS                                                                                        \
  py::arg("z") = py::none(), py::arg("U") = py::none(), py::arg("V") = py::none(),                        \
  py::arg("sqrt_x1") = py::none(), py::arg("theta") = py::none(), py::arg("x") = py::none()

}  // namespace

PYBIND11_MODULE(_aesq, m) {
  m.doc() = "aesq core bindings";
  py::register_exception<Error>(m, "AesqError", PyExc_ValueError);

  // primes
  m.def("primes_in", [](u64 lo, u64 hi) { return primes_in(lo, hi).primes; }, py::arg("lo"), py::arg("hi"));
  m.def("is_prime", &is_prime);
  m.def("psi", [](i64 num, i64 den, double z) { return psi(Rational(num, den), z); }, py::arg("m"), py::arg("z"),
        py::arg("den") = 1);
  m.def("psi", [](u64 mm, double z) { return psi(mm, z); });
  m.def("factorize", [](u64 mm) { return factorize(mm).factors; });

  // buchstab
  py::class_<BuchstabTable>(m, "BuchstabTable")
      .def(py::init<double, double>(), py::arg("u_max") = kDefaultBuchstabUMax, py::arg("step") = kDefaultBuchstabStep)
      .def("omega", &BuchstabTable::omega)
      .def_property_readonly("u_max", &BuchstabTable::u_max)
      .def_property_readonly("step", &BuchstabTable::step);
  m.def("omega_upper", &omega_upper);

  // sieve constants
  m.def("c_of_theta", [](double theta, const std::string& mode, double tol) { return report_dict(c_of_theta(theta, mode_of(mode), tol)); },
        py::arg("theta"), py::arg("mode") = "upper", py::arg("tol") = kDefaultConstantsTol);
  m.def("figure1", [](const std::string& mode, double tol) {
        py::list rows;
        for (const auto& p : figure1_points()) {
          py::dict d;
          d["theta"] = p.theta;
          d["label"] = p.label;
          d["published"] = p.published;
          d["C_tilde"] = c_of_theta(p.theta, mode_of(mode), tol).C_value;
          rows.append(d);
        }
        return rows;
      },
      py::arg("mode") = "upper", py::arg("tol") = kDefaultConstantsTol);
  m.def("theta_s", [](int s) {
    const Rational r = theta_s(s);
    return fraction(std::to_string(r.numerator()), std::to_string(r.denominator()));
  });
  m.def("sigma_admissible", [](const std::string& ctx, double theta, std::optional<int> s) {
        TheoremContext c;
        if (ctx == "thm2") c = TheoremContext::Thm2;
        else if (ctx == "thm3") c = TheoremContext::Thm3;
        else if (ctx == "thm4") c = TheoremContext::Thm4First;
        else if (ctx == "thm5") c = TheoremContext::Thm5;
        else fail(ErrorKind::Domain, "context must be thm2, thm3, thm4 or thm5");
        return sigma_admissible(c, theta, s);
      },
      py::arg("context"), py::arg("theta"), py::arg("s") = py::none());

  // decomposition
  m.def("short_interval", &short_interval, py::arg("theta"), py::arg("x"));
  m.def("gamma_eval", [](int j, u64 mm, bool star, std::optional<double> z, std::optional<double> U, std::optional<double> V,
                         std::optional<double> sx, std::optional<double> theta, std::optional<double> x) {
        return gamma_eval({j, star}, mm, params_of(z, U, V, sx, theta, x));
      },
      py::arg("j"), py::arg("m"), py::arg("star") = false, PARAM_ARGS);
  m.def("lambda_eval", [](int i, u64 mm, std::optional<double> z, std::optional<double> U, std::optional<double> V,
                          std::optional<double> sx, std::optional<double> theta, std::optional<double> x) {
        return lambda_eval(i, mm, params_of(z, U, V, sx, theta, x));
      },
      py::arg("i"), py::arg("m"), PARAM_ARGS);
  m.def("verify_interval", [](u64 lo, u64 hi, std::optional<double> z, std::optional<double> U, std::optional<double> V,
                              std::optional<double> sx, std::optional<double> theta, std::optional<double> x, unsigned threads) {
        const auto r = verify_interval(params_of(z, U, V, sx, theta, x), lo, hi, threads);
        py::dict d, run, failures;
        const char* names[5] = {"a", "b", "c", "d", "e"};
        for (int k = 0; k < 5; ++k) {
          run[names[k]] = r.checks_run[k];
          failures[names[k]] = r.failures[k];
        }
        d["lo"] = r.lo;
        d["hi"] = r.hi;
        d["checks_run"] = run;
        d["failures"] = failures;
        d["check_e_applicable"] = r.check_e_applicable;
        d["total_failures"] = r.total_failures();
        return d;
      },
      py::arg("lo"), py::arg("hi"), PARAM_ARGS, py::arg("threads") = 1);

  // local arithmetic
  m.def("gauss_sum", &gauss_sum, py::arg("q"), py::arg("a"));
  m.def("a_term", &a_term, py::arg("n"), py::arg("q"), py::arg("s"));
  m.def("singular_series_partial", [](i64 n, int s, u64 P) {
        const auto r = singular_series_partial(n, s, P);
        py::dict d;
        d["n"] = r.n;
        d["s"] = r.s;
        d["P"] = r.P;
        d["value"] = r.value;
        std::vector<double> terms;
        for (const auto& t : r.terms) terms.push_back(t.value);
        d["terms"] = terms;
        return d;
      },
      py::arg("n"), py::arg("s"), py::arg("P"));
  m.def("local_density", [](i64 n, int s, u64 q) {
        const BigRational r = local_density(n, s, q);
        return fraction(boost::multiprecision::numerator(r).str(), boost::multiprecision::denominator(r).str());
      },
      py::arg("n"), py::arg("s"), py::arg("q"));
  m.def("is_H", &is_H, py::arg("n"), py::arg("s"));

  // representations
  m.def("count_representations", [](i64 n, int s, double H, bool ordered) { return count_representations({n, s, H, ordered}); },
        py::arg("n"), py::arg("s"), py::arg("H") = kUnbounded, py::arg("ordered") = true);
  m.def("enumerate_representations", [](i64 n, int s, double H, std::size_t keep) {
        return enumerate_representations({n, s, H, true}, false, keep).multisets;
      },
      py::arg("n"), py::arg("s"), py::arg("H") = kUnbounded, py::arg("keep") = 1000);
  m.def("singular_integral_exact", &singular_integral_exact, py::arg("n"), py::arg("s"), py::arg("lo"), py::arg("hi"));
  m.def("exceptional_scan", [](i64 X, int s, double H, std::optional<double> H_exp, std::optional<std::pair<i64, i64>> window, unsigned threads) {
        const auto r = exceptional_scan(X, s, hspec(H, H_exp), window, threads);
        py::dict d;
        d["X"] = r.X;
        d["s"] = r.s;
        d["window"] = std::make_pair(r.lo, r.hi);
        d["exceptions"] = r.exceptions;
        d["scanned_count"] = r.rows.size();
        d["h_count"] = r.h_count;
        std::vector<u64> counts;
        for (const auto& row : r.rows) counts.push_back(row.count);
        d["counts"] = counts;
        return d;
      },
      py::arg("X"), py::arg("s"), py::arg("H") = kUnbounded, py::arg("H_exp") = py::none(), py::arg("window") = py::none(),
      py::arg("threads") = 1);

  // circle engine
  m.def("f_eval", [](double alpha, double lo, double hi, const std::string& weights) {
        return f_eval(alpha, weights == "log" ? log_weight_coeffs(lo, hi) : prime_square_coeffs(lo, hi));
      },
      py::arg("alpha"), py::arg("lo"), py::arg("hi"), py::arg("weights") = "primes");
  m.def("window_counts", [](double lo, double hi, int s) {
        const auto wc = window_counts(prime_square_coeffs(lo, hi), s);
        std::map<u64, i64> out;
        for (std::size_t k = 0; k < wc.counts.size(); ++k)
          if (wc.counts[k] != 0) out[wc.n_offset + wc.stride * k] = wc.counts[k];
        return out;
      },
      py::arg("lo"), py::arg("hi"), py::arg("s"));
  m.def("arc_partition", [](double P, double Q) {
        std::vector<std::tuple<u64, u64, double, double>> out;
        for (const auto& a : arc_partition(P, Q).arcs) out.emplace_back(a.q, a.a, a.center, a.half_width);
        return out;
      },
      py::arg("P"), py::arg("Q"));

  m.def("run_cli", [](std::vector<std::string> args) {
        args.insert(args.begin(), "aesq");
        std::ostringstream o, e;
        const int code = run_cli(args, o, e);
        return py::make_tuple(code, o.str(), e.str());
      },
      py::arg("args"));
}
