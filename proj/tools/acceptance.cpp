// Acceptance run: one PASS/FAIL line per criterion.
//
// Exit status is 0 when every criterion passes. With --expect-fail a,b the
// status is 0 only when exactly the listed criteria fail; the FAIL lines are
// printed either way.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "moduli/errors.hpp"
#include "moduli/genus_character.hpp"
#include "moduli/kloosterman.hpp"
#include "moduli/modular_values.hpp"
#include "moduli/qseries.hpp"
#include "moduli/traces.hpp"
#include "moduli/verification.hpp"

using nlohmann::json;
using namespace moduli;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

const json* find_row(const Report& r, const std::function<bool(const json&)>& pred) {
  for (const auto& row : r.results)
    if (pred(row)) return &row;
  return nullptr;
}

Outcome criterion1(const Report& r) {
  const auto& t = r.summary["trend"];
  const long long pf = r.summary["point_failures"].get<long long>();
  const bool ok = pf == 0 && t["pass"].get<bool>();
  return {ok, std::to_string(r.results.size() - static_cast<std::size_t>(pf)) + "/" + std::to_string(r.results.size()) +
                  " points within max(5%, err) at A=1e5; discrepancy shrinks at 2e5 for " +
                  std::to_string(t["shrinking"].get<long long>()) + "/" + std::to_string(t["of"].get<long long>()) +
                  " (" + fmt(100 * t["fraction"].get<double>()) + "%, need 80%)"};
}

Outcome criterion2(int prec) {
  // J(rho) and J(i) from two truncation orders of E4^3 / Delta - 744.
  double spread = 0;
  for (i64 order : {150, 300}) {
    const QSeries J = J_series(order);
    const BigReal half = BigReal(1LL, prec) / BigReal(2LL, prec);
    const BigComplex rho(-half, sqrt(BigReal(3LL, prec)) * half);
    const BigComplex i(BigReal(prec), BigReal(1LL, prec));
    spread = std::max(spread, std::fabs(evaluate(J, rho, prec).real().to_double() + 744));
    spread = std::max(spread, std::fabs(evaluate(J, i, prec).real().to_double() - 984));
  }
  auto J_fn = [](const HeegnerClass& h, int p) { return J_value(h.z, p); };
  struct Case {
    i64 d;
    bool j_of_J;
    double expected;
  };
  double worst = 0;
  for (const Case& c : {Case{-3, false, -240}, Case{-4, false, 504}, Case{-3, true, -248}, Case{-4, true, 492}}) {
    const auto split = DiscriminantSplit::make(c.d, 1, 1);
    const TraceReport t = c.j_of_J ? twisted_trace_cm(split, J_fn, prec) : twisted_trace_cm(split, 1, prec);
    worst = std::max(worst, std::fabs(t.value.to_double() - c.expected));
  }
  return {worst <= 1e-10 && spread <= 1e-10,
          "max deviation " + fmt(worst) + " over 4 traces; J(rho), J(i) at two truncations within " + fmt(spread)};
}

Outcome criterion3(const Report& r) {
  double worst_sigma = 0, worst_prime = 0;
  bool ok = true;
  int rows = 0;
  for (const auto& row : r.results) {
    const std::string kind = row.value("kind", "");
    if (kind == "constant_sigma") {
      worst_sigma = std::max(worst_sigma, row["relative_error"].get<double>());
      ok = ok && row["relative_error"].get<double>() <= 1e-3;
      ++rows;
    } else if (kind == "constant_prime_level") {
      worst_prime = std::max(worst_prime, row["relative_error"].get<double>());
      ok = ok && row["relative_error"].get<double>() <= 1e-2;
      ++rows;
    }
  }
  ok = ok && rows == 7;
  return {ok, "c_1(n,0) vs 24 sigma(n), n<=5: max rel " + fmt(worst_sigma) + "; c_2(1,0), c_3(1,0): max rel " +
                  fmt(worst_prime)};
}

Outcome criterion4(const Report& r) {
  double worst = 0;
  bool ok = true;
  int rows = 0;
  for (const auto& row : r.results)
    if (row.value("kind", "") == "coefficient") {
      worst = std::max(worst, row["relative_error"].get<double>());
      ok = ok && row["pass"].get<bool>();
      ++rows;
    }
  const auto& imp = r.summary["improvement"];
  ok = ok && rows == 12 && imp["pass"].get<bool>();
  const json* c111 = find_row(r, [](const json& row) {
    return row.value("kind", "") == "coefficient" && row["N"] == 1 && row["n"] == 1 && row["m"] == 1;
  });
  std::string target = c111 ? "c_1(1,1) = " + std::to_string((*c111)["series"].get<double>()) : "c_1(1,1) missing";
  if (!c111) ok = false;
  return {ok, "12 coefficients, max rel " + fmt(worst) + " at C=1e4, " +
                  fmt(imp["max_relative_error_4x"].get<double>()) + " at 4e4; " + target};
}

Outcome criterion5(const Report& r) {
  return {r.ok() && r.results.size() == 5,
          "max |exp_sum - via K*| = " + fmt(r.summary["max_abs_diff"].get<double>()) + " over a<=50, n<=5, 5 splits"};
}

Outcome criterion6(const Report& r) {
  const long long f = r.summary["failures"].get<long long>();
  std::string detail = std::to_string(r.results.size() - static_cast<std::size_t>(f)) + "/" +
                       std::to_string(r.results.size()) + " recognized";
  if (f > 0) {
    detail += "; unrecognized:";
    for (const auto& row : r.results)
      if (!row["pass"].get<bool>()) {
        detail += " (" + std::to_string(row["d"].get<i64>()) + "," + std::to_string(row["D"].get<i64>()) + "," +
                  std::to_string(row["N"].get<i64>()) + ",n=" + std::to_string(row["n"].get<i64>()) + ")=" +
                  row["value"].get<std::string>().substr(0, 10);
        if (row.contains("integral_without_constant_term") && !row["integral_without_constant_term"].is_null())
          detail += "[integral after removing c_N(n,0)H]";
      }
  }
  return {f == 0, detail};
}

Outcome criterion7(const Report& r) {
  const json* base = find_row(r, [](const json& row) { return row.value("d", 0) == -3 && row.value("delta", 0) == -4; });
  const json* m4 = find_row(r, [](const json& row) { return row.value("d", 0) == -4 && row.value("delta", 0) == -4; });
  const json* m3 = find_row(r, [](const json& row) { return row.value("d", 0) == -3 && row.value("delta", 0) == -3; });
  const json* rep = find_row(r, [](const json& row) { return row.value("check", "") == "representative_independence"; });
  if (!base || !m4 || !m3 || !rep) return {false, "missing rows in the inner product report"};
  const bool ok = (*base)["pass"].get<bool>() && (*m4)["pass"].get<bool>() && (*m3)["pass"].get<bool>() &&
                  (*rep)["pass"].get<bool>();
  return {ok, "<f-3,f-4> dev " + fmt((*base)["deviation"].get<double>()) + "; <f-4,f-4> = " +
                  (*m4)["value"].get<std::string>().substr(0, 14) + ", <f-3,f-3> = " +
                  (*m3)["value"].get<std::string>().substr(0, 14) + " (P/2P agreement " +
                  fmt(std::max((*m4)["agreement"].get<double>(), (*m3)["agreement"].get<double>())) +
                  "); d=-7 representative spread " + fmt((*rep)["max_deviation"].get<double>())};
}

// ---------------------------------------------------------------- criterion 8

UnimodularMatrix random_gamma0(std::mt19937_64& rng, i64 N, i64 bound) {
  std::uniform_int_distribution<i64> u(-bound, bound);
  for (;;) {
    const i64 g = N * u(rng), d = u(rng);
    if (g == 0 || std::gcd(g, d) != 1) continue;
    for (i64 a = -60; a <= 60; ++a)
      if ((a * d - 1) % g == 0) return {a, (a * d - 1) / g, g, d};
  }
}

Outcome criterion8(int prec) {
  std::mt19937_64 rng(20240611);
  std::vector<std::string> failed;
  int checks = 0;
  auto expect = [&](bool cond, const std::string& what) {
    ++checks;
    if (!cond && std::find(failed.begin(), failed.end(), what) == failed.end()) failed.push_back(what);
  };

  // Discriminant invariance and the right-action law.
  std::uniform_int_distribution<i64> u(-25, 25);
  for (int t = 0; t < 300; ++t) {
    const QuadraticForm q{std::abs(u(rng)) + 1, u(rng), std::abs(u(rng)) + 40};
    const UnimodularMatrix m = random_gamma0(rng, 1, 6), m2 = random_gamma0(rng, 1, 6);
    expect(act(q, m).discriminant() == q.discriminant(), "discriminant invariance");
    expect(act(act(q, m), m2) == act(q, m * m2), "right-action law");
  }

  // chi_D constant on Gamma0(N) classes.
  const VerificationConfig cfg;
  for (const auto& [d, D] : cfg.splits)
    for (i64 N : cfg.levels) {
      if (D == 1 || !DiscriminantSplit::admissible(d, D, N)) continue;
      const auto split = DiscriminantSplit::make(d, D, N);
      for (const auto& c : enumerate_class_forms(d * D, N)) {
        const int x = chi(c.rep, split);
        for (int t = 0; t < 4; ++t) expect(chi(act(c.rep, random_gamma0(rng, N, 5)), split) == x, "chi class invariance");
      }
    }

  // Exp-sum reality: the complex sum has vanishing imaginary part.
  for (const auto& [d, D] : cfg.splits) {
    const auto split = DiscriminantSplit::make(d, D, 1);
    for (i64 a = 1; a <= 40; ++a)
      for (i64 n = 1; n <= 3; ++n) {
        double im = 0;
        for (i64 b = 0; b < 2 * a; ++b) {
          const i64 num = b * b - d * D;
          if (num % (4 * a)) continue;
          im += chi({a, b, num / (4 * a)}, split) * std::sin(M_PI * static_cast<double>(n * b) / static_cast<double>(a));
        }
        expect(std::fabs(im) < 1e-9, "exp-sum reality");
      }
  }

  expect(class_number(DiscriminantSplit::make(-4, 5, 1)) == 0, "H(-4,5,1) = 0");

  // Faber consistency for every genus zero level.
  for (i64 N : genus_zero_levels())
    for (i64 n = 1; n <= 3; ++n) {
      const auto p = faber_polynomial(N, n);
      const QSeries h = hauptmodul(N, 12);
      QSeries f = QSeries::constant(p[0], 12), hp = QSeries::constant(1, 12);
      for (i64 k = 1; k <= n; ++k) {
        hp = hp * h;
        f += hp * p[static_cast<std::size_t>(k)];
      }
      bool ok = f.coeff(-n) == 1;
      for (i64 m = -n + 1; m <= 0; ++m) ok = ok && f.coeff(m) == 0;
      const QSeries nb = niebur_qexp(N, n, 8);
      for (i64 m = 1; m <= 6; ++m) ok = ok && nb.coeff(m) == f.coeff(m);
      ok = ok && nb.coeff(0) == niebur_constant(N, n);
      expect(ok, "Faber consistency");
    }

  // E2*(gz) = (cz + d)^2 E2*(z).
  const QSeries e2 = e2_series(800);
  std::uniform_real_distribution<double> ux(-0.5, 0.5), uy(0.8, 1.5);
  auto e2star = [&](const BigComplex& z) {
    const BigComplex v = evaluate(e2, z, prec);
    return BigComplex(v.real() - BigReal(3LL, prec) / (BigReal::pi(prec) * z.imag()), v.imag());
  };
  int probes = 0;
  while (probes < 12) {
    const BigComplex z(BigReal(static_cast<long double>(ux(rng)), prec), BigReal(static_cast<long double>(uy(rng)), prec));
    const UnimodularMatrix m = random_gamma0(rng, 1, 3);
    const BigComplex gz = mobius(m, z);
    if (gz.imag().to_double() < 0.25) continue;
    ++probes;
    BigComplex cz = BigComplex(BigReal(static_cast<long long>(m.gamma), prec), BigReal(prec)) * z +
                    BigComplex(BigReal(static_cast<long long>(m.delta), prec), BigReal(prec));
    const BigComplex diff = e2star(gz) - cz * cz * e2star(z);
    expect(diff.abs().to_double() < 1e-25, "E2* quasi-modularity");
  }

  std::string detail = std::to_string(checks) + " checks";
  if (!failed.empty()) {
    detail += "; failing:";
    for (const auto& f : failed) detail += " [" + f + "]";
  }
  return {failed.empty(), detail};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria 1-8"};
  std::vector<int> expect_fail;
  std::string report_path;
  int prec = kDefaultPrecision;
  app.add_option("--expect-fail", expect_fail, "Criteria known to fail (comma separated)")->delimiter(',');
  app.add_option("--report", report_path, "Write every suite report to this JSON file");
  app.add_option("--prec", prec)->check(CLI::Range(128, 4096));
  CLI11_PARSE(app, argc, argv);

  VerificationConfig cfg;
  cfg.prec = prec;
  cfg.deterministic = true;
  json reports = json::object();
  auto suite = [&](Suite s) {
    Report r = run_suite(s, cfg);
    reports[to_string(s)] = r.to_json();
    return r;
  };

  std::vector<std::pair<int, Outcome>> results;
  auto record = [&](int k, const std::function<Outcome()>& f) {
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << k << ": " << o.detail << std::endl;
    results.emplace_back(k, o);
  };

  record(1, [&] { return criterion1(suite(Suite::corollary13)); });
  record(2, [&] { return criterion2(prec); });
  Report niebur;
  record(3, [&] {
    niebur = suite(Suite::niebur_coeffs);
    return criterion3(niebur);
  });
  record(4, [&] { return criterion4(niebur); });
  record(5, [&] { return criterion5(suite(Suite::kstar_pin)); });
  record(6, [&] { return criterion6(suite(Suite::algebraicity)); });
  record(7, [&] { return criterion7(suite(Suite::inner_products)); });
  record(8, [&] { return criterion8(prec); });

  if (!report_path.empty()) {
    std::ofstream f(report_path);
    f << reports.dump(2) << "\n";
  }

  std::set<int> failing, expected(expect_fail.begin(), expect_fail.end());
  for (const auto& [k, o] : results)
    if (!o.pass) failing.insert(k);
  std::cout << (results.size() - failing.size()) << "/" << results.size() << " criteria pass" << std::endl;
  if (expect_fail.empty()) return failing.empty() ? 0 : 1;
  if (failing == expected) {
    std::cout << "failing set matches the documented expectation" << std::endl;
    return 0;
  }
  std::cout << "failing set differs from the documented expectation" << std::endl;
  return 1;
}
