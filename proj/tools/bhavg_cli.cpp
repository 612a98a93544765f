/*
  Copyright 2026 The bhavg Authors

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

#include <bhavg/bhavg.h>

#include <cerrno>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRange = 3;
constexpr int kExitVerify = 4;

struct CliError {
  int exit_code;
  std::string message;
};

void check(bhavg_status s) {
  if (s == BHAVG_OK) return;
  const int code = s == BHAVG_INVALID_ARGUMENT ? kExitUsage : s == BHAVG_RANGE_GUARD ? kExitRange : kExitFailure;
  throw CliError{code, std::string(bhavg_status_name(s)) + ": " + bhavg_last_error()};
}

[[noreturn]] void usage(const std::string& msg) { throw CliError{kExitUsage, msg}; }

// 12 significant digits.
std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", x);
  return buf;
}

// Rounds through the 12-digit text form so JSON carries the same value as CSV.
double round12(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(fmt(x).c_str(), nullptr);
}

struct Common {
  std::string format = "csv";
  std::string out;
  std::string manifest;
  unsigned threads = 0;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", c.out, "Write output to PATH instead of stdout");
  sub->add_option("--manifest", c.manifest, "Run manifest path (default: <out>.manifest.json)");
  sub->add_option("--threads", c.threads, "Worker threads (0 = available parallelism)");
}

struct URange {
  int64_t lo = 1;
  int64_t hi = 1;
};

int64_t parse_i64(const std::string& s, const char* what) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (s.empty() || *end != '\0' || errno == ERANGE) usage(std::string("cannot parse ") + what + " '" + s + "'");
  return v;
}

URange parse_u_range(const std::string& text) {
  URange r;
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    r.lo = r.hi = parse_i64(text, "--u");
  } else {
    r.lo = parse_i64(text.substr(0, colon), "--u");
    r.hi = parse_i64(text.substr(colon + 1), "--u");
  }
  if (r.lo > r.hi) usage("--u range lo:hi needs lo <= hi");
  if (r.hi - r.lo >= 1'000'000) throw CliError{kExitRange, "range_guard: --u range exceeds 10^6 values"};
  return r;
}

// "p/q", an exact decimal such as "0.125", or any other floating literal (taken as a real angle).
bhavg_angle parse_alpha(const std::string& text) {
  bhavg_angle a{0, 1, 0.0};
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    a.num = parse_i64(text.substr(0, slash), "--alpha numerator");
    const int64_t den = parse_i64(text.substr(slash + 1), "--alpha denominator");
    if (den <= 0) usage("--alpha denominator must be positive");
    a.den = static_cast<uint64_t>(den);
    return a;
  }
  const auto dot = text.find('.');
  const bool plain = text.find_first_not_of("+-0123456789.") == std::string::npos;
  if (plain && dot != std::string::npos && text.size() - dot - 1 <= 17 && text.size() <= 19) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    if (digits == "-" || digits == "+" || digits.empty()) usage("cannot parse --alpha '" + text + "'");
    uint64_t den = 1;
    for (size_t i = dot + 1; i < text.size(); ++i) den *= 10;
    a.num = parse_i64(digits, "--alpha");
    a.den = den;
    return a;
  }
  if (plain) {
    a.num = parse_i64(text, "--alpha");
    return a;
  }
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || *end != '\0' || !std::isfinite(v)) usage("cannot parse --alpha '" + text + "'");
  a.real = v;
  return a;
}

std::string alpha_text(const bhavg_angle& a) {
  if (a.real != 0.0) return fmt(a.real);
  return std::to_string(a.num) + "/" + std::to_string(a.den);
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Context {
 public:
  explicit Context(unsigned threads) { check(bhavg_context_create(threads, &ctx_)); }
  ~Context() { bhavg_context_destroy(ctx_); }
  Context(const Context&) = delete;
  Context& operator=(const Context&) = delete;
  const bhavg_context* get() const { return ctx_; }

 private:
  bhavg_context* ctx_ = nullptr;
};

struct Output {
  std::string body;
  std::vector<std::string> extra_paths;
  int exit_code = kExitOk;
};

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw CliError{kExitFailure, "cannot open '" + path + "' for writing"};
  f << body;
  if (!f) throw CliError{kExitFailure, "failed writing '" + path + "'"};
}

// ---------------------------------------------------------------- commands

struct RhoArgs {
  int ell = 2;
  std::string u = "1";
  uint64_t p_max = 100;
};

Output cmd_rho(const RhoArgs& a, const Common& c) {
  const int64_t u = parse_i64(a.u, "--u");
  if (a.p_max > 100'000'000) throw CliError{kExitRange, "range_guard: --p-max exceeds 10^8"};
  Output o;
  json rows = json::array();
  std::string csv = "p,rho\n";
  for (uint64_t p = 2; p <= a.p_max; ++p) {
    int prime = 0;
    check(bhavg_is_prime(p, &prime));
    if (!prime) continue;
    int r = 0;
    check(bhavg_rho(p, a.ell, u, &r));
    csv += std::to_string(p) + "," + std::to_string(r) + "\n";
    rows.push_back({{"p", p}, {"rho", r}});
  }
  o.body = c.format == "json" ? json{{"ell", a.ell}, {"u", u}, {"rows", rows}}.dump(2) + "\n" : csv;
  return o;
}

struct SeriesArgs {
  int ell = 2;
  std::string u = "1";
  double cutoff = 1000;
  std::string variant = "sigma";
  std::string method = "product";
};

const char* method_name(bhavg_series_method m) {
  switch (m) {
    case BHAVG_METHOD_DIRICHLET_SUM: return "dirichlet_sum";
    case BHAVG_METHOD_EULER_PRODUCT: return "euler_product";
    case BHAVG_METHOD_COMBINED_FACTOR_PRODUCT: return "combined_factor_product";
  }
  return "?";
}

Output cmd_series(const SeriesArgs& a, const Common& c, const Context& ctx) {
  const URange r = parse_u_range(a.u);
  const bool full = a.variant == "sigma";
  const bool product = a.method == "product";
  const bhavg_series_kind kind = full ? (product ? BHAVG_SERIES_P_TRUNC : BHAVG_SERIES_S_TRUNC)
                                      : (product ? BHAVG_SERIES_P_PRIME_TRUNC : BHAVG_SERIES_S_PRIME_TRUNC);
  Output o;
  std::string csv = "u,value,method,cutoff\n";
  json rows = json::array();
  for (int64_t u = r.lo; u <= r.hi; ++u) {
    if (u == 0) continue;
    bhavg_truncated_value v{};
    check(bhavg_series(ctx.get(), kind, a.ell, u, a.cutoff, &v));
    csv += std::to_string(u) + "," + fmt(v.value) + "," + method_name(v.method) + "," + fmt(v.cutoff) + "\n";
    rows.push_back({{"u", u}, {"value", round12(v.value)}, {"method", method_name(v.method)},
                    {"cutoff", round12(v.cutoff)}});
  }
  o.body = c.format == "json" ? json{{"ell", a.ell}, {"variant", a.variant}, {"rows", rows}}.dump(2) + "\n" : csv;
  return o;
}

bhavg_count_variant count_variant(const std::string& v) {
  return v == "outer" || v == "S-prime" ? BHAVG_COUNT_OUTER : BHAVG_COUNT_WEIGHTED;
}

json record_json(const bhavg_error_record& r) {
  return {{"u", r.u},
          {"X", r.X},
          {"count", round12(r.count)},
          {"prediction", round12(r.prediction)},
          {"error", round12(r.error)},
          {"sigma", round12(r.sigma)},
          {"m_count", r.m_count}};
}

std::string record_csv_row(const bhavg_error_record& r) {
  return std::to_string(r.u) + "," + fmt(r.count) + "," + fmt(r.prediction) + "," + fmt(r.error) + "\n";
}

struct CountArgs {
  int ell = 2;
  uint64_t x = 1'000'000;
  std::string u;
  int64_t u_max = 0;
  double cutoff = 100'000;
  std::string variant = "weighted";
};

Output cmd_count(const CountArgs& a, const Common& c, const Context& ctx) {
  URange r;
  if (!a.u.empty()) {
    r = parse_u_range(a.u);
  } else {
    if (a.u_max < 1) usage("count needs --u or --u-max");
    r = parse_u_range("1:" + std::to_string(a.u_max));
  }
  const bhavg_count_variant variant = count_variant(a.variant);
  Output o;
  std::string csv = "u,count,prediction,error\n";
  json rows = json::array();
  for (int64_t u = r.lo; u <= r.hi; ++u) {
    bhavg_error_record rec{};
    check(bhavg_error_record_compute(ctx.get(), variant, a.ell, u, a.x, a.cutoff, &rec));
    csv += record_csv_row(rec);
    rows.push_back(record_json(rec));
  }
  o.body = c.format == "json" ? json{{"ell", a.ell}, {"variant", a.variant}, {"records", rows}}.dump(2) + "\n" : csv;
  return o;
}

struct VarianceArgs {
  int ell = 2;
  uint64_t x = 1'000'000;
  uint64_t y = 100;
  double cutoff = 100'000;
  std::string variant = "S";
  std::string records;
};

json quantiles_json(const bhavg_quantiles& q) {
  return {{"min", round12(q.min)},       {"p25", round12(q.p25)}, {"median", round12(q.median)},
          {"p75", round12(q.p75)},       {"p90", round12(q.p90)}, {"max", round12(q.max)},
          {"mean", round12(q.mean)}};
}

Output cmd_variance(const VarianceArgs& a, const Common& c, const Context& ctx) {
  bhavg_variance* v = nullptr;
  check(bhavg_variance_run(ctx.get(), count_variant(a.variant), a.ell, a.y, a.x, a.cutoff, &v));
  std::unique_ptr<bhavg_variance, void (*)(bhavg_variance*)> guard(v, bhavg_variance_destroy);
  bhavg_variance_summary s{};
  check(bhavg_variance_summary_get(v, &s));

  std::vector<bhavg_error_record> records(s.record_count);
  for (size_t i = 0; i < s.record_count; ++i) check(bhavg_variance_record(v, i, &records[i]));

  Output o;
  if (c.format == "csv") {
    std::string csv = "u,count,prediction,error\n";
    for (const auto& r : records) csv += record_csv_row(r);
    o.body = csv;
    return o;
  }
  json recs = json::array();
  for (const auto& r : records) recs.push_back(record_json(r));
  json report = {{"ell", s.ell},
                 {"y", s.y},
                 {"X", s.X},
                 {"variant", s.variant == BHAVG_COUNT_WEIGHTED ? "S" : "S-prime"},
                 {"sigma_cutoff", round12(s.sigma_cutoff)},
                 {"S", round12(s.S)},
                 {"normalized", round12(s.normalized)},
                 {"n_obstructed", s.n_obstructed},
                 {"S_unobstructed", round12(s.S_unobstructed)},
                 {"normalized_unobstructed", round12(s.normalized_unobstructed)},
                 {"per_u_quantiles", quantiles_json(s.per_u_quantiles)},
                 {"records", recs}};
  o.body = report.dump(2) + "\n";
  if (!a.records.empty()) {
    std::string csv = "u,count,prediction,error\n";
    for (const auto& r : records) csv += record_csv_row(r);
    write_file(a.records, csv);
    o.extra_paths.push_back(a.records);
  }
  return o;
}

struct ExpsumArgs {
  int ell = 2;
  double z = 100;
  std::string alpha = "0";
  std::string which = "Jell";
};

Output cmd_expsum(const ExpsumArgs& a, const Common& c, const Context& ctx) {
  const bhavg_angle alpha = parse_alpha(a.alpha);
  const bhavg_expsum_kind kind = a.which == "I"      ? BHAVG_EXPSUM_I
                                 : a.which == "J"    ? BHAVG_EXPSUM_J
                                 : a.which == "Iell" ? BHAVG_EXPSUM_I_ELL
                                                     : BHAVG_EXPSUM_J_ELL;
  bhavg_complex_value v{};
  check(bhavg_expsum(ctx.get(), kind, alpha, a.z, a.ell, &v));
  const double mag = std::hypot(v.re, v.im);
  Output o;
  if (c.format == "json") {
    o.body = json{{"which", a.which}, {"alpha", alpha_text(alpha)}, {"z", round12(a.z)}, {"ell", a.ell},
                  {"re", round12(v.re)},  {"im", round12(v.im)},          {"abs", round12(mag)},
                  {"terms", v.terms},     {"bound", round12(v.bound)}}
                 .dump(2) +
             "\n";
  } else {
    o.body = "which,alpha,z,ell,re,im,abs,terms,bound\n" + a.which + "," + alpha_text(alpha) + "," + fmt(a.z) + "," +
             std::to_string(a.ell) + "," + fmt(v.re) + "," + fmt(v.im) + "," + fmt(mag) + "," +
             std::to_string(v.terms) + "," + fmt(v.bound) + "\n";
  }
  return o;
}

struct ArcsArgs {
  uint64_t x = 1'000'000;
  double exponent = 1;
  std::vector<std::string> alphas;
  uint64_t max_arcs = 10'000;
};

Output cmd_arcs(const ArcsArgs& a, const Common& c) {
  bhavg_arcs* arcs = nullptr;
  check(bhavg_arcs_build(a.x, a.exponent, &arcs));
  std::unique_ptr<bhavg_arcs, void (*)(bhavg_arcs*)> guard(arcs, bhavg_arcs_destroy);
  bhavg_arcs_info info{};
  check(bhavg_arcs_info_get(arcs, &info));

  std::vector<bhavg_arc> table;
  if (info.arc_count <= a.max_arcs) {
    table.resize(info.arc_count);
    for (uint64_t i = 0; i < info.arc_count; ++i) check(bhavg_arcs_get(arcs, i, &table[i]));
  }
  std::vector<std::pair<std::string, bhavg_arc_class>> classes;
  for (const auto& text : a.alphas) {
    bhavg_arc_class k{};
    check(bhavg_arcs_classify(arcs, parse_alpha(text), &k));
    classes.emplace_back(text, k);
  }

  Output o;
  if (c.format == "json") {
    json arc_rows = json::array();
    for (const auto& arc : table)
      arc_rows.push_back({{"q", arc.q}, {"a", arc.a}, {"lo", round12(arc.lo)}, {"hi", round12(arc.hi)}});
    json class_rows = json::array();
    for (const auto& [text, k] : classes)
      class_rows.push_back({{"alpha", text}, {"major", k.major != 0}, {"q", k.q}, {"a", k.a}});
    o.body = json{{"X", info.X},
                  {"exponent", round12(info.exponent)},
                  {"L", round12(info.L)},
                  {"Q", round12(info.Q)},
                  {"q_max", info.q_max},
                  {"delta", round12(info.delta)},
                  {"arc_count", info.arc_count},
                  {"measure", round12(info.measure)},
                  {"arcs_listed", table.size() == info.arc_count},
                  {"arcs", arc_rows},
                  {"classifications", class_rows}}
                 .dump(2) +
             "\n";
    return o;
  }
  std::string csv;
  if (!classes.empty()) {
    csv = "alpha,major,q,a\n";
    for (const auto& [text, k] : classes)
      csv += text + "," + (k.major ? "1" : "0") + "," + std::to_string(k.q) + "," + std::to_string(k.a) + "\n";
  } else {
    if (table.size() != info.arc_count)
      throw CliError{kExitRange, "range_guard: " + std::to_string(info.arc_count) +
                                     " arcs exceed --max-arcs; raise it or use --format json for the summary"};
    csv = "q,a,lo,hi\n";
    for (const auto& arc : table)
      csv += std::to_string(arc.q) + "," + std::to_string(arc.a) + "," + fmt(arc.lo) + "," + fmt(arc.hi) + "\n";
  }
  o.body = csv;
  return o;
}

Output cmd_verify(const std::string& suite, const Common& c, const Context& ctx) {
  const std::vector<std::string> suites =
      suite == "all" ? std::vector<std::string>{"local", "series", "circle"} : std::vector<std::string>{suite};
  Output o;
  json rows = json::array();
  std::string text;
  bool all_pass = true;
  for (const auto& s : suites) {
    bhavg_verify_result r{};
    check(bhavg_verify(ctx.get(), s.c_str(), &r));
    const bool pass = r.mismatches == 0;
    all_pass = all_pass && pass;
    char line[512];
    std::snprintf(line, sizeof line, "%s: %s (checks=%" PRIu64 ", mismatches=%" PRIu64 ")%s%s\n", s.c_str(),
                  pass ? "PASS" : "FAIL", r.checks, r.mismatches, pass ? "" : " first: ", r.first_failure);
    text += line;
    rows.push_back({{"suite", s}, {"pass", pass}, {"checks", r.checks}, {"mismatches", r.mismatches},
                    {"first_failure", r.first_failure}});
  }
  o.body = c.format == "json" ? json{{"pass", all_pass}, {"suites", rows}}.dump(2) + "\n" : text;
  o.exit_code = all_pass ? kExitOk : kExitVerify;
  return o;
}

struct MeansquareArgs {
  int ell = 2;
  int64_t v = 1;
  uint64_t y = 1000;
  std::vector<double> z{25, 100, 400};
  double ref = 1'000'000;
  std::string route = "dirichlet-sum";
};

Output cmd_meansquare(const MeansquareArgs& a, const Common& c, const Context& ctx) {
  const bhavg_truncation_route route = a.route == "product" ? BHAVG_ROUTE_EULER_PRODUCT : BHAVG_ROUTE_DIRICHLET_SUM;
  Output o;
  std::string csv = "z,meansquare\n";
  json rows = json::array();
  for (const double z : a.z) {
    double m = 0;
    check(bhavg_meansquare_truncation(ctx.get(), a.ell, a.v, a.y, z, a.ref, route, &m));
    csv += fmt(z) + "," + fmt(m) + "\n";
    rows.push_back({{"z", round12(z)}, {"meansquare", round12(m)}});
  }
  o.body = c.format == "json" ? json{{"ell", a.ell}, {"v", a.v}, {"y", a.y}, {"ref_cutoff", round12(a.ref)},
                                     {"route", a.route}, {"rows", rows}}
                                        .dump(2) +
                                    "\n"
                              : csv;
  return o;
}

struct CrudeArgs {
  int ell = 2;
  int64_t u_max = 1000;
  double cutoff = 10'000;
};

Output cmd_crude(const CrudeArgs& a, const Common& c, const Context& ctx) {
  bhavg_crude_bound_report r{};
  check(bhavg_crude_bound(ctx.get(), a.ell, a.u_max, a.cutoff, &r));
  Output o;
  if (c.format == "json") {
    o.body = json{{"ell", a.ell},
                  {"u_max", a.u_max},
                  {"cutoff", round12(a.cutoff)},
                  {"max_sigma", round12(r.max_sigma)},
                  {"argmax_sigma", r.argmax_sigma},
                  {"max_sigma_prime", round12(r.max_sigma_prime)},
                  {"argmax_sigma_prime", r.argmax_sigma_prime},
                  {"log_power_shape", round12(r.log_power_shape)}}
                 .dump(2) +
             "\n";
  } else {
    o.body = "max_sigma,argmax_sigma,max_sigma_prime,argmax_sigma_prime,log_power_shape\n" + fmt(r.max_sigma) + "," +
             std::to_string(r.argmax_sigma) + "," + fmt(r.max_sigma_prime) + "," +
             std::to_string(r.argmax_sigma_prime) + "," + fmt(r.log_power_shape) + "\n";
  }
  return o;
}

json collect_parameters(const CLI::App* sub) {
  json params = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->count() == 0) continue;
    const std::string name = opt->get_name(false, true);
    if (name == "--help" || name == "-h") continue;
    const auto& results = opt->results();
    if (results.size() == 1)
      params[name] = results.front();
    else
      params[name] = results;
  }
  return params;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bhavg: prime values of x^ell + u on average, singular series and circle-method sums"};
  app.require_subcommand(1);
  app.set_version_flag("--version", bhavg_version());

  Common common;
  RhoArgs rho_args;
  SeriesArgs series_args;
  CountArgs count_args;
  VarianceArgs variance_args;
  ExpsumArgs expsum_args;
  ArcsArgs arcs_args;
  std::string verify_suite = "all";
  MeansquareArgs ms_args;
  CrudeArgs crude_args;

  auto* rho = app.add_subcommand("rho", "Root counts of x^ell + u modulo primes p <= p_max");
  rho->add_option("--ell", rho_args.ell)->required();
  rho->add_option("--u", rho_args.u)->required();
  rho->add_option("--p-max", rho_args.p_max)->required();

  auto* series = app.add_subcommand("series", "Truncated singular series for one u or a range lo:hi");
  series->add_option("--ell", series_args.ell)->required();
  series->add_option("--u", series_args.u)->required();
  series->add_option("--cutoff", series_args.cutoff)->required();
  series->add_option("--variant", series_args.variant)->check(CLI::IsMember({"sigma", "sigma-prime"}));
  series->add_option("--method", series_args.method)->check(CLI::IsMember({"product", "dirichlet-sum"}));

  auto* count = app.add_subcommand("count", "Weighted prime counts against their singular-series prediction");
  count->add_option("--ell", count_args.ell)->required();
  count->add_option("--x", count_args.x)->required();
  count->add_option("--u", count_args.u);
  count->add_option("--u-max", count_args.u_max);
  count->add_option("--cutoff", count_args.cutoff);
  count->add_option("--variant", count_args.variant)->check(CLI::IsMember({"weighted", "outer"}));

  auto* var = app.add_subcommand("variance", "Mean-square error over shifts 1 <= u <= y");
  var->add_option("--ell", variance_args.ell)->required();
  var->add_option("--x", variance_args.x)->required();
  var->add_option("--y", variance_args.y)->required();
  var->add_option("--cutoff", variance_args.cutoff);
  var->add_option("--variant", variance_args.variant)->check(CLI::IsMember({"S", "S-prime"}));
  var->add_option("--records", variance_args.records, "Also write per-u CSV to PATH");

  auto* expsum = app.add_subcommand("expsum", "Exponential sums I, J, I_ell, J_ell at one angle");
  expsum->add_option("--ell", expsum_args.ell)->required();
  expsum->add_option("--z", expsum_args.z)->required();
  expsum->add_option("--alpha", expsum_args.alpha)->required();
  expsum->add_option("--which", expsum_args.which)->check(CLI::IsMember({"I", "J", "Iell", "Jell"}));

  auto* arcs = app.add_subcommand("arcs", "Major arcs for (X, E) and classification of angles");
  arcs->add_option("--x", arcs_args.x)->required();
  arcs->add_option("--exponent", arcs_args.exponent)->required();
  arcs->add_option("--alpha", arcs_args.alphas, "Angle to classify (repeatable)");
  arcs->add_option("--max-arcs", arcs_args.max_arcs);

  auto* verify = app.add_subcommand("verify", "Fast paths against brute-force oracles");
  verify->add_option("--suite", verify_suite)->check(CLI::IsMember({"local", "series", "circle", "all"}));

  auto* ms = app.add_subcommand("meansquare", "Mean square of truncated against reference singular series");
  ms->add_option("--ell", ms_args.ell);
  ms->add_option("--v", ms_args.v);
  ms->add_option("--y", ms_args.y);
  ms->add_option("--z", ms_args.z, "Truncation points (repeatable)");
  ms->add_option("--ref", ms_args.ref);
  ms->add_option("--route", ms_args.route)->check(CLI::IsMember({"dirichlet-sum", "product"}));

  auto* crude = app.add_subcommand("crude", "Largest singular-series values over 1 <= u <= u_max");
  crude->add_option("--ell", crude_args.ell);
  crude->add_option("--u-max", crude_args.u_max);
  crude->add_option("--cutoff", crude_args.cutoff);

  for (auto* sub : {rho, series, count, var, expsum, arcs, verify, ms, crude}) add_common(sub, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  const CLI::App* sub = app.get_subcommands().front();
  json manifest = {{"command", sub->get_name()},
                   {"parameters", collect_parameters(sub)},
                   {"tool_version", bhavg_version()},
                   {"start", utc_now()}};
  std::vector<std::string> outputs;
  int exit_code = kExitOk;
  std::string error;

  try {
    std::optional<Context> ctx;
    if (sub != rho && sub != arcs) ctx.emplace(common.threads);
    Output o;
    if (sub == rho) o = cmd_rho(rho_args, common);
    else if (sub == series) o = cmd_series(series_args, common, *ctx);
    else if (sub == count) o = cmd_count(count_args, common, *ctx);
    else if (sub == var) o = cmd_variance(variance_args, common, *ctx);
    else if (sub == expsum) o = cmd_expsum(expsum_args, common, *ctx);
    else if (sub == arcs) o = cmd_arcs(arcs_args, common);
    else if (sub == verify) o = cmd_verify(verify_suite, common, *ctx);
    else if (sub == ms) o = cmd_meansquare(ms_args, common, *ctx);
    else o = cmd_crude(crude_args, common, *ctx);

    if (common.out.empty()) {
      std::cout << o.body << std::flush;
    } else {
      write_file(common.out, o.body);
      outputs.push_back(common.out);
    }
    for (const auto& p : o.extra_paths) outputs.push_back(p);
    exit_code = o.exit_code;
    if (exit_code == kExitVerify) error = "verification failed";
  } catch (const CliError& e) {
    exit_code = e.exit_code;
    error = e.message;
  } catch (const std::exception& e) {
    exit_code = kExitFailure;
    error = e.what();
  }
  if (exit_code != kExitOk && !error.empty()) std::cerr << "bhavg: " << error << "\n";

  const std::string manifest_path =
      !common.manifest.empty() ? common.manifest : common.out.empty() ? "" : common.out + ".manifest.json";
  if (!manifest_path.empty()) {
    manifest["end"] = utc_now();
    manifest["output_paths"] = outputs;
    manifest["exit_code"] = exit_code;
    manifest["error"] = error.empty() ? json(nullptr) : json(error);
    try {
      write_file(manifest_path, manifest.dump(2) + "\n");
    } catch (const CliError& e) {
      std::cerr << "bhavg: " << e.message << "\n";
      if (exit_code == kExitOk) exit_code = kExitFailure;
    }
  }
  return exit_code;
}
