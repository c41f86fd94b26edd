// moduli-traces: command-line front end.
//
// Every command builds a report {suite, grid, results[], summary} and renders
// it as JSON, CSV (one line per result row) or text. Exit codes: 0 success,
// 1 computation failure (or failed verification), 2 invalid parameters.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "moduli/errors.hpp"
#include "moduli/inner_products.hpp"
#include "moduli/qseries.hpp"
#include "moduli/traces.hpp"
#include "moduli/verification.hpp"

using nlohmann::json;
using namespace moduli;

namespace {

constexpr int kDigits = 25;

std::string str(const BigReal& x) { return x.to_string(kDigits); }

struct Globals {
  int prec = kDefaultPrecision;
  std::string format = "text";
  bool deterministic = false;
  std::string out;
};

Report make_report(const std::string& name, json params) {
  Report r;
  r.suite = name;
  r.grid = std::move(params);
  r.summary = json{{"failures", 0}};
  return r;
}

// ---------------------------------------------------------------- rendering

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    return;
  }
  if (j.is_string())
    out.emplace_back(prefix, j.get<std::string>());
  else if (j.is_null())
    out.emplace_back(prefix, "");
  else
    out.emplace_back(prefix, j.dump());
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string render_csv(const Report& r) {
  std::vector<std::string> header;
  std::vector<std::vector<std::pair<std::string, std::string>>> rows;
  for (const auto& row : r.results) {
    rows.emplace_back();
    flatten(row, "", rows.back());
    for (const auto& [k, v] : rows.back())
      if (std::find(header.begin(), header.end(), k) == header.end()) header.push_back(k);
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << csv_field(header[i]);
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      std::string v;
      for (const auto& [k, val] : row)
        if (k == header[i]) v = val;
      os << (i ? "," : "") << csv_field(v);
    }
    os << "\n";
  }
  return os.str();
}

std::string scalar(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

// One line per row: the label (method/kind/quantity) first, value +- err, then the rest.
std::string render_text(const Report& r) {
  std::ostringstream os;
  for (const auto& row : r.results) {
    std::string line;
    for (const char* label : {"method", "quantity", "kind", "check"})
      if (row.contains(label)) line += scalar(row[label]) + ": ";
    if (row.contains("value")) {
      line += scalar(row["value"]);
      if (row.contains("err") && row["err"].is_number()) line += " +- " + scalar(row["err"]);
    }
    for (const auto& [k, v] : row.items()) {
      if (k == "value" || k == "err" || k == "method" || k == "quantity" || k == "kind" || k == "check") continue;
      line += (line.empty() || line.back() == ' ' ? "" : "  ") + k + "=" + scalar(v);
    }
    os << line << "\n";
  }
  if (r.summary.contains("failures") && r.summary["failures"].get<long long>() > 0)
    os << "failures: " << r.summary["failures"].get<long long>() << "\n";
  return os.str();
}

int emit(const Report& r, const Globals& g) {
  std::string body;
  if (g.format == "json")
    body = r.to_json().dump(2) + "\n";
  else if (g.format == "csv")
    body = render_csv(r);
  else
    body = render_text(r);
  if (g.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw ComputationError("cannot open output file '" + g.out + "'");
    f << body;
    if (!f) throw ComputationError("failed writing output file '" + g.out + "'");
  }
  return r.ok() ? 0 : 1;
}

// ---------------------------------------------------------------- commands

json trace_json(const TraceReport& t) {
  json j{{"method", t.method == TraceMethod::cm_evaluation ? "cm" : "series"},
         {"value", str(t.value)},
         {"err", t.err},
         {"precision", t.precision}};
  if (t.method == TraceMethod::cm_evaluation) {
    j["classes"] = t.classes;
    j["error_kind"] = "bound";
  } else {
    j["a_max"] = t.a_max;
    j["blocks"] = t.blocks;
    j["error_kind"] = "heuristic";
  }
  return j;
}

Report cmd_trace(i64 d, i64 D, i64 N, i64 n, const std::string& method, i64 amax, const Globals& g) {
  if (n < 1) throw InvalidArgument("trace: n must be >= 1");
  const auto split = DiscriminantSplit::make(d, D, N);
  Report r = make_report("trace", json{{"d", d}, {"D", D}, {"N", N}, {"n", n}, {"method", method}, {"prec", g.prec}});
  if (method == "cm" || method == "both") r.results.push_back(trace_json(twisted_trace_cm(split, n, g.prec)));
  if (method == "series" || method == "both") {
    SeriesOptions o;
    o.a_max = amax;
    o.prec = g.prec;
    r.grid["amax"] = amax;
    r.results.push_back(trace_json(twisted_trace_series(split, n, o)));
  }
  return r;
}

Report cmd_class_number(i64 d, i64 D, i64 N) {
  const auto split = DiscriminantSplit::make(d, D, N);
  const mpq_class h = class_number(split);
  Report r = make_report("class-number", json{{"d", d}, {"D", D}, {"N", N}});
  r.results.push_back(json{{"quantity", "H"}, {"value", h.get_str()}, {"decimal", h.get_d()}});
  return r;
}

Report cmd_fourier(i64 d, i64 D, i64 N, i64 count, bool fd, const Globals& g) {
  if (count < 1) throw InvalidArgument("fourier: count must be >= 1");
  Report r = make_report(fd ? "fourier-fd" : "fourier",
                         json{{"d", d}, {"D", D}, {"N", N}, {"count", count}, {"prec", g.prec}});
  if (fd) {
    if (D != 1 || N != 1) throw InvalidArgument("fourier --fd requires D = 1 and N = 1");
    for (i64 n = 0; n < count; ++n) {
      const auto c = fd_coefficient(d, n, g.prec);
      json row{{"n", n}, {"value", c.exact ? c.exact->get_str() : str(c.value)}, {"err", c.err}};
      r.results.push_back(row);
    }
    return r;
  }
  const auto split = DiscriminantSplit::make(d, D, N);
  for (i64 n = 0; n < count; ++n) {
    const auto c = fstar_coefficient(split, n, FourierRoute::cm, {}, g.prec);
    if (c.nonholomorphic)
      r.results.push_back(json{{"n", n},
                               {"value", c.constant.get_str()},
                               {"inv_v_coefficient", str(c.inv_v_coefficient)},
                               {"err", c.err}});
    else
      r.results.push_back(json{{"n", n}, {"value", str(c.value)}, {"err", c.err}, {"method", "cm"}});
  }
  return r;
}

Report cmd_niebur(i64 N, i64 n, i64 terms) {
  if (n < 1) throw InvalidArgument("niebur: n must be >= 1");
  if (terms < 1) throw InvalidArgument("niebur: terms must be >= 1");
  if (!is_genus_zero_level(N)) throw InvalidArgument("niebur: level " + std::to_string(N) + " is not genus zero");
  const QSeries s = niebur_qexp(N, n, terms - 1);
  Report r = make_report("niebur", json{{"N", N}, {"n", n}, {"terms", terms}});
  for (i64 m = -n; m < terms; ++m) r.results.push_back(json{{"exponent", m}, {"coefficient", s.coeff(m).get_str()}});
  return r;
}

Report cmd_exp_sum(i64 d, i64 D, i64 a, i64 n, bool via_kstar, const Globals& g) {
  const auto split = DiscriminantSplit::make(d, D, 1);
  if (a < 1) throw InvalidArgument("exp-sum: a must be >= 1");
  const BigReal v = via_kstar ? exp_sum_via_kstar(split, a, n, g.prec) : exp_sum(split, a, n, g.prec);
  Report r = make_report("exp-sum", json{{"d", d}, {"D", D}, {"a", a}, {"n", n}, {"prec", g.prec}});
  r.results.push_back(json{{"method", via_kstar ? "kstar" : "direct"}, {"value", str(v)}, {"err", v.error()}});
  return r;
}

Report cmd_inner_product(i64 d, i64 delta, const Globals& g) {
  const auto ip = inner_product(d, delta, g.prec);
  Report r = make_report("inner-product", json{{"d", d}, {"delta", delta}, {"prec", g.prec}});
  r.results.push_back(json{{"d", d}, {"delta", delta}, {"case", to_string(ip.kind)}, {"value", str(ip.value)}, {"err", ip.err}});
  return r;
}

Report cmd_verify(const std::string& suite, const std::string& grid_file, const Globals& g) {
  const Suite s = parse_suite(suite);
  VerificationConfig cfg;
  cfg.prec = g.prec;
  if (!grid_file.empty()) {
    std::ifstream f(grid_file);
    if (!f) throw InvalidArgument("verify: cannot read grid file '" + grid_file + "'");
    json j;
    try {
      f >> j;
    } catch (const json::parse_error& e) {
      throw InvalidArgument(std::string("verify: grid file is not valid JSON: ") + e.what());
    }
    cfg = config_from_json(j, cfg);
  }
  cfg.deterministic = cfg.deterministic || g.deterministic;
  return run_suite(s, cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twisted traces of singular moduli, Fourier coefficients and inner products"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--prec", g.prec, "Working precision in bits")->check(CLI::Range(64, 1 << 16));
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_flag("--deterministic", g.deterministic, "Omit timings for byte-identical output");
  app.add_option("--out", g.out, "Write output to this file instead of stdout");

  i64 d = 0, D = 1, N = 1, n = 1, a = 1, count = 10, terms = 10, delta = 0, amax = 100000;
  std::string method = "cm", suite, grid;
  bool fd = false, via_kstar = false;

  auto* trace = app.add_subcommand("trace", "Twisted trace of j_{N,n}");
  trace->add_option("--d", d)->required();
  trace->add_option("--D", D)->required();
  trace->add_option("--N", N)->required();
  trace->add_option("--n", n)->required();
  trace->add_option("--method", method)->check(CLI::IsMember({"cm", "series", "both"}));
  trace->add_option("--amax", amax, "Truncation of the sinh series")->check(CLI::Range(1LL, 100000000LL));

  auto* cn = app.add_subcommand("class-number", "Twisted Hurwitz class number H(d,D,N)");
  cn->add_option("--d", d)->required();
  cn->add_option("--D", D)->required();
  cn->add_option("--N", N)->required();

  auto* fourier = app.add_subcommand("fourier", "Fourier coefficients of f*_{d,D,N} (or f_d with --fd)");
  fourier->add_option("--d", d)->required();
  fourier->add_option("--D", D);
  fourier->add_option("--N", N);
  fourier->add_option("--count", count)->required();
  fourier->add_flag("--fd", fd);

  auto* niebur = app.add_subcommand("niebur", "q-expansion of j_{N,n}");
  niebur->add_option("--N", N)->required();
  niebur->add_option("--n", n)->required();
  niebur->add_option("--terms", terms)->required();

  auto* es = app.add_subcommand("exp-sum", "Exponential sum S_{d,D}(a,n)");
  es->add_option("--d", d)->required();
  es->add_option("--D", D)->required();
  es->add_option("--a", a)->required();
  es->add_option("--n", n)->required();
  es->add_flag("--via-kstar", via_kstar);

  auto* ip = app.add_subcommand("inner-product", "Regularized inner product <f_d, f_delta>");
  ip->add_option("--d", d)->required();
  ip->add_option("--delta", delta)->required();

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", suite)->required();
  verify->add_option("--grid", grid, "JSON file overriding the default grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Report r;
    if (*trace)
      r = cmd_trace(d, D, N, n, method, amax, g);
    else if (*cn)
      r = cmd_class_number(d, D, N);
    else if (*fourier)
      r = cmd_fourier(d, D, N, count, fd, g);
    else if (*niebur)
      r = cmd_niebur(N, n, terms);
    else if (*es)
      r = cmd_exp_sum(d, D, a, n, via_kstar, g);
    else if (*ip)
      r = cmd_inner_product(d, delta, g);
    else
      r = cmd_verify(suite, grid, g);
    return emit(r, g);
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ComputationError& e) {
    std::cerr << "computation failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "computation failed: " << e.what() << "\n";
    return 1;
  }
}
