#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "deltasieve/balance.hpp"
#include "deltasieve/characters.hpp"
#include "deltasieve/density.hpp"
#include "deltasieve/errors.hpp"
#include "deltasieve/oscint.hpp"
#include "deltasieve/sieve.hpp"
#include "verify.hpp"

#ifndef DELTASIEVE_VERSION
#define DELTASIEVE_VERSION "0.0.0"
#endif

using json = nlohmann::ordered_json;
using namespace deltasieve;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Output {
  std::string path;  // empty: stdout
  std::string format;
  std::ofstream file;

  std::ostream& stream() {
    if (path.empty()) return std::cout;
    if (!file.is_open()) {
      file.open(path);
      if (!file) throw LimitExceeded("output", "cannot open " + path);
    }
    return file;
  }
};

json meta(const std::string& command, const json& flags, double seconds) {
  json m;
  m["version"] = DELTASIEVE_VERSION;
  m["command"] = command;
  m["flags"] = flags;
  m["wall_clock_seconds"] = seconds;
  return m;
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// JSON goes to the output as one object; CSV keeps the header row first and puts the meta on stderr.
void emit_json(Output& out, json body, const json& m) {
  json doc;
  doc["meta"] = m;
  for (auto& [k, v] : body.items()) doc[k] = v;
  out.stream() << doc.dump(2) << "\n";
}

std::string rational_json(const Rational& r) { return r.str(); }

json check_json(const verify::Check& c) {
  return {{"name", c.name},         {"count", c.count},         {"failures", c.failures},
          {"max_deviation", c.max_deviation}, {"tolerance", c.tolerance}, {"first_failure", c.first_failure}};
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string suite = "all";
  std::uint64_t seed = 42;
  std::vector<std::string> perturb;
  unsigned threads = 0;
  Output out{"", "json", {}};
};

int run_verify(VerifyArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  verify::Options opts;
  opts.seed = a.seed;
  opts.perturb.insert(a.perturb.begin(), a.perturb.end());
  opts.workers = a.threads;
  const auto reports = verify::run_suite(a.suite, opts);
  bool ok = true;
  std::string first;
  json suites = json::array();
  for (const auto& r : reports) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back(check_json(c));
    suites.push_back({{"suite", r.suite}, {"ok", r.ok()}, {"checks_run", r.total()}, {"failures", r.failures()},
                      {"checks", checks}});
    if (!r.ok() && first.empty()) first = r.suite + "/" + r.first_failure();
    ok = ok && r.ok();
  }
  const json flags = {{"suite", a.suite}, {"seed", a.seed}, {"perturb", a.perturb}, {"threads", a.threads}};
  json body;
  body["ok"] = ok;
  body["first_failure"] = first;
  body["suites"] = suites;
  // Timing stays out of the summary so repeated runs compare equal; it is only in meta.
  emit_json(a.out, body, meta("verify", flags, since(t0)));
  if (!ok) std::cerr << "verify failed: " << first << "\n";
  return ok ? kOk : kFailed;
}

// ---------------------------------------------------------------- constant

struct ConstantArgs {
  std::vector<int> theorems{2};
  i64 prime_bound = 100000;
  std::string tail = "accelerated";
  Output out{"", "json", {}};
};

json euler_json(const density::EulerProductResult& r) {
  return {{"theorem", r.theorem},
          {"prime_bound", r.P},
          {"tail", r.mode == density::TailMode::crude ? "crude" : "accelerated"},
          {"partial_product", r.partial},
          {"value_lo", r.value_lo},
          {"value_hi", r.value_hi},
          {"width", r.width},
          {"tail_bound", r.tail_bound}};
}

int run_constant(ConstantArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  if (a.prime_bound < 5) throw DomainError("--prime-bound must be at least 5");
  const auto mode = a.tail == "crude" ? density::TailMode::crude : density::TailMode::accelerated;
  std::vector<density::EulerProductResult> rs;
  json results = json::array();
  for (int th : a.theorems) {
    rs.push_back(density::euler_product(th, a.prime_bound, mode));
    results.push_back(euler_json(rs.back()));
  }
  json body;
  body["results"] = results;
  if (rs.size() == 2) body["overlap"] = density::overlap(rs[0], rs[1]);
  const json flags = {{"theorem", a.theorems}, {"prime_bound", a.prime_bound}, {"tail", a.tail}};
  emit_json(a.out, body, meta("constant", flags, since(t0)));
  return kOk;
}

// ---------------------------------------------------------------- count

struct CountArgs {
  std::vector<double> xs{1.0};
  std::string mode = "exact";
  unsigned threads = 0;
  Output out{"", "json", {}};
};

int run_count(CountArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto mode = a.mode == "smoothed" ? sieve::Mode::smoothed : sieve::Mode::exact;
  const auto rows = sieve::compare_main_term(a.xs, mode, a.threads);
  const json flags = {{"X", a.xs}, {"mode", a.mode}, {"threads", a.threads}, {"format", a.out.format}};
  const json m = meta("count", flags, since(t0));
  if (a.out.format == "csv") {
    sieve::write_main_term_csv(a.out.stream(), rows);
    std::cerr << m.dump() << "\n";
    return kOk;
  }
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"X", r.X},
                   {"mode", sieve::mode_name(r.mode)},
                   {"count_or_sum", r.value},
                   {"main_lo", r.main_lo},
                   {"main_hi", r.main_hi},
                   {"residual", r.residual},
                   {"residual_over_X7", r.residual_over_X7},
                   {"relative_deviation", r.relative_deviation},
                   {"seconds", r.seconds}});
  }
  emit_json(a.out, {{"rows", arr}}, m);
  return kOk;
}

// ---------------------------------------------------------------- balance

struct BalanceArgs {
  std::string preset;
  std::string terms_file;
  std::vector<std::string> drop;
  long grid_step = 0;
  Output out{"", "json", {}};
};

Rational rational_field(const json& v, const std::string& what) {
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<i64>());
  if (v.is_number()) return Rational::parse(v.dump());
  throw DomainError("terms file: '" + what + "' must be a number or a rational string");
}

density::BalanceProblem load_terms(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read terms file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw DomainError(std::string("terms file: ") + e.what());
  }
  const json& terms = doc.is_array() ? doc : doc.value("terms", json());
  if (!terms.is_array() || terms.empty()) throw DomainError("terms file: expected a non-empty 'terms' array");
  density::BalanceProblem p;
  for (const auto& t : terms) {
    if (!t.is_object() || !t.contains("x")) throw DomainError("terms file: each term needs at least 'x'");
    density::ExponentTerm term{rational_field(t["x"], "x"), Rational(0), Rational(0), ""};
    if (t.contains("xi")) term.xi = rational_field(t["xi"], "xi");
    if (t.contains("xi_kappa")) term.xi_kappa = rational_field(t["xi_kappa"], "xi_kappa");
    term.label = t.value("label", term.x.str() + " + " + term.xi.str() + " t + " + term.xi_kappa.str() + " t k");
    p.terms.push_back(term);
  }
  if (doc.is_object() && doc.contains("t_max")) p.t_max = rational_field(doc["t_max"], "t_max");
  return p;
}

int run_balance(BalanceArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  if (a.preset.empty() == a.terms_file.empty()) throw DomainError("give exactly one of --preset and --terms");
  if (!a.preset.empty() && a.preset != "paper") throw DomainError("unknown preset '" + a.preset + "'");
  density::BalanceProblem p = a.preset.empty() ? load_terms(a.terms_file) : density::paper_preset();
  for (const auto& label : a.drop) {
    auto it = std::find_if(p.terms.begin(), p.terms.end(), [&](const auto& t) { return t.label == label; });
    if (it == p.terms.end()) throw DomainError("--drop: no term labelled '" + label + "'");
    p.terms.erase(it);
  }
  const auto r = density::balance_exponents(p);
  json active = json::array();
  for (auto i : r.active) active.push_back(p.terms[i].label);
  json body = {{"t", rational_json(r.t)},
               {"kappa", rational_json(r.kappa)},
               {"exponent", rational_json(r.exponent)},
               {"t_decimal", r.t.decimal(12)},
               {"kappa_decimal", r.kappa.decimal(12)},
               {"exponent_decimal", r.exponent.decimal(12)},
               {"active_terms", active}};
  if (a.grid_step > 0) {
    const auto g = density::grid_search(p, a.grid_step);
    body["grid"] = {{"step", "1/" + std::to_string(a.grid_step)}, {"best", rational_json(g.best)},
                    {"t", rational_json(g.t)}, {"kappa", rational_json(g.kappa)}, {"points", g.points}};
  }
  const json flags = {{"preset", a.preset}, {"terms", a.terms_file}, {"drop", a.drop}, {"grid_step", a.grid_step}};
  emit_json(a.out, body, meta("balance", flags, since(t0)));
  return kOk;
}

// ---------------------------------------------------------------- scan

struct ScanArgs {
  std::string kind = "station";
  i64 q1 = 5;
  Output out{"", "csv", {}};
};

int run_scan(ScanArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  json summary;
  std::ostringstream csv;
  if (a.kind == "station") {
    const auto rep = oscint::station_scan({});
    oscint::write_scan_csv(csv, rep.rows);
    summary = {{"fitted_C", rep.fitted_C}, {"median_ratio", rep.median_ratio}, {"max_ratio", rep.max_ratio},
               {"ok", rep.ok()}};
  } else if (a.kind == "omega") {
    const auto rep = oscint::omega_scan(oscint::default_omega_config());
    oscint::write_omega_csv(csv, rep);
    summary = {{"asserted", rep.asserted}, {"violations", rep.violations},
               {"max_middle_ratio", rep.max_middle_ratio}, {"ok", rep.ok()}};
  } else if (a.kind == "sj") {
    const auto rows = characters::sj_cancellation_scan(a.q1, {1e4, 1e5, 1e6}, {0.1, 0.25, 1.0 / 3.0, 0.4142135623730951});
    characters::write_sj_csv(csv, rows);
    summary = {{"rows", rows.size()}};
  } else {
    throw DomainError("unknown scan '" + a.kind + "'");
  }
  const json flags = {{"kind", a.kind}, {"q1", a.q1}, {"format", a.out.format}};
  const json m = meta("scan", flags, since(t0));
  if (a.out.format == "csv") {
    a.out.stream() << csv.str();
    std::cerr << json{{"meta", m}, {"summary", summary}}.dump() << "\n";
  } else {
    emit_json(a.out, {{"summary", summary}, {"csv", csv.str()}}, m);
  }
  const bool ok = !summary.contains("ok") || summary["ok"].get<bool>();
  return ok ? kOk : kFailed;
}

void add_output(CLI::App* sub, Output& out, std::vector<std::string> formats) {
  sub->add_option("--out", out.path, "Write to this file instead of stdout");
  sub->add_option("--format", out.format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Square-free discriminant counting and exponential-sum toolkit"};
  app.set_version_flag("--version", DELTASIEVE_VERSION);
  app.require_subcommand(1);

  VerifyArgs va;
  auto* v = app.add_subcommand("verify", "Run an invariant suite; exit 1 on the first failing identity");
  std::vector<std::string> suites = verify::suite_names();
  suites.push_back("all");
  v->add_option("--suite", va.suite)->check(CLI::IsMember(suites))->capture_default_str();
  v->add_option("--seed", va.seed)->capture_default_str();
  v->add_option("--perturb", va.perturb, "Corrupt a formula on purpose (exptrans)")->check(CLI::IsMember({"exptrans"}));
  v->add_option("--threads", va.threads, "Workers for counting checks (0: all cores)");
  add_output(v, va.out, {"json"});

  ConstantArgs ca;
  auto* c = app.add_subcommand("constant", "Euler-product density constant as a certified interval");
  c->add_option("--theorem", ca.theorems, "1 (local densities) or 2 (closed form); repeatable")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  c->add_option("--prime-bound", ca.prime_bound)->capture_default_str();
  c->add_option("--tail", ca.tail)->check(CLI::IsMember({"accelerated", "crude"}))->capture_default_str();
  add_output(c, ca.out, {"json"});

  CountArgs na;
  auto* n = app.add_subcommand("count", "Square-free discriminant counts against the main term");
  n->add_option("--X", na.xs, "Height bound(s), comma separated")->delimiter(',')->required();
  n->add_option("--mode", na.mode)->check(CLI::IsMember({"exact", "smoothed"}))->capture_default_str();
  n->add_option("--threads", na.threads, "Workers (0: all cores)");
  add_output(n, na.out, {"json", "csv"});

  BalanceArgs ba;
  auto* b = app.add_subcommand("balance", "Minimise the largest error exponent over (t, kappa)");
  b->add_option("--preset", ba.preset, "Built-in exponent list (only: paper)");
  b->add_option("--terms", ba.terms_file, "JSON file: {\"terms\": [{\"x\": \"16\", \"xi\": \"-2\", \"xi_kappa\": 0}]}");
  b->add_option("--drop", ba.drop, "Remove the term with this label; repeatable");
  b->add_option("--grid", ba.grid_step, "Also run a rational grid search with step 1/N");
  add_output(b, ba.out, {"json"});

  ScanArgs sa;
  auto* s = app.add_subcommand("scan", "Observational scans (station, omega, sj)");
  s->add_option("kind", sa.kind)->check(CLI::IsMember({"station", "omega", "sj"}))->required();
  s->add_option("--q1", sa.q1, "Modulus for the sj scan")->capture_default_str();
  add_output(s, sa.out, {"csv", "json"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*v) return run_verify(va);
    if (*c) return run_constant(ca);
    if (*n) return run_count(na);
    if (*b) return run_balance(ba);
    if (*s) return run_scan(sa);
  } catch (const LimitExceeded& e) {
    std::cerr << "error: limit '" << e.resource() << "' exceeded: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
