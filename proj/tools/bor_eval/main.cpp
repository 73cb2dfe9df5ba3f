// bor-eval: Bits-over-Random evaluation, ceilings, collapse advice,
// simulation and a BM25 baseline retriever.
//
// Exit codes: 0 success, 2 invalid flags or unreadable file, 3 parse error
// or invalid input data, 4 no evaluable queries.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bor/bor.h"
#include "output.hpp"

using cli::Failure;
using cli::Format;
using cli::json;

namespace {

int exit_code_for(bor_status status) {
  switch (status) {
    case BOR_OK: return 0;
    case BOR_ERR_PARSE:
    case BOR_ERR_INVALID_INPUT: return 3;
    case BOR_ERR_NO_QUERIES: return 4;
    case BOR_ERR_INTERNAL: return 1;
    default: return 2;
  }
}

void check(bor_status status, const std::string& context = {}) {
  if (status == BOR_OK) return;
  std::string message = bor_last_error_message();
  if (!context.empty()) message = context + ": " + message;
  throw Failure{exit_code_for(status), message};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};

using JudgmentsPtr = std::unique_ptr<bor_judgments, Deleter<bor_judgments, bor_judgments_free>>;
using RunPtr = std::unique_ptr<bor_run, Deleter<bor_run, bor_run_free>>;
using CorpusPtr = std::unique_ptr<bor_corpus, Deleter<bor_corpus, bor_corpus_free>>;
using IndexPtr = std::unique_ptr<bor_index, Deleter<bor_index, bor_index_free>>;
using SweepPtr = std::unique_ptr<bor_sweep, Deleter<bor_sweep, bor_sweep_free>>;

// ---- argument helpers --------------------------------------------------

// Values separated by commas or whitespace; "@path" reads them from a file.
std::vector<std::string> expand_values(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  auto split = [&](const std::string& text) {
    std::string token;
    for (char c : text) {
      if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
        if (!token.empty()) out.push_back(std::move(token));
        token.clear();
      } else {
        token += c;
      }
    }
    if (!token.empty()) out.push_back(std::move(token));
  };
  for (const auto& a : args) {
    if (!a.empty() && a[0] == '@') {
      std::ifstream in(a.substr(1));
      if (!in) throw Failure{2, "cannot open " + a.substr(1)};
      std::stringstream buf;
      buf << in.rdbuf();
      split(buf.str());
    } else {
      split(a);
    }
  }
  return out;
}

std::uint64_t parse_count(const std::string& text, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw Failure{2, std::string(what) + " value '" + text + "' is not a non-negative integer"};
  return v;
}

double parse_real(const std::string& text, const char* what) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
    throw Failure{2, std::string(what) + " value '" + text + "' is not a number"};
  return v;
}

std::vector<std::uint64_t> relevant_counts(const std::vector<std::string>& args) {
  std::vector<std::uint64_t> out;
  for (const auto& s : expand_values(args)) out.push_back(parse_count(s, "--rq"));
  if (out.empty()) throw Failure{2, "--rq needs at least one value"};
  return out;
}

// Ascending, de-duplicated depths in [1, n].
std::vector<std::uint64_t> depth_list(const std::vector<std::string>& args, std::uint64_t n) {
  std::vector<std::uint64_t> ks;
  for (const auto& s : expand_values(args)) ks.push_back(parse_count(s, "--k"));
  if (ks.empty()) throw Failure{2, "--k needs at least one value"};
  for (auto k : ks)
    if (k == 0 || k > n)
      throw Failure{2, "--k " + std::to_string(k) + " must lie in [1, " + std::to_string(n) + "]"};
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

void require_positive(std::uint64_t n, const char* flag) {
  if (n == 0) throw Failure{2, std::string(flag) + " must be positive"};
}

json probability_json(const bor_probability& p) {
  return json{{"value", p.value}, {"log_complement", p.log_complement}};
}

const char* value_status_name(int status) {
  switch (status) {
    case BOR_VALUE_OK: return "ok";
    case BOR_VALUE_ZERO_OBSERVED: return "zero_observed";
    case BOR_VALUE_ZERO_BASELINE: return "zero_baseline";
    default: return "unknown";
  }
}

std::string rule_name(const bor_rule& rule) {
  if (rule.kind == BOR_RULE_RECALL) return "recall";
  return rule.min_hits == 1 ? "coverage" : "coverage>=" + std::to_string(rule.min_hits);
}

void print_json(const cli::Report& report, json payload) {
  std::cout << report.envelope(std::move(payload)).dump(2) << '\n';
}

// ---- ceiling -----------------------------------------------------------

struct CeilingArgs {
  std::uint64_t n = 0;
  std::vector<std::string> rq;
  std::vector<std::string> k;
  std::uint32_t m = 1;
  std::string format = "table";
};

int run_ceiling(const CeilingArgs& a) {
  const Format format = cli::parse_format(a.format);
  require_positive(a.n, "--n");
  if (a.m == 0) throw Failure{2, "--m must be at least 1"};
  const auto rq = relevant_counts(a.rq);
  const auto ks = depth_list(a.k, a.n);
  for (auto r : rq)
    if (r > a.n) throw Failure{2, "--rq " + std::to_string(r) + " exceeds --n"};

  double mean_r = 0.0;
  for (auto r : rq) mean_r += static_cast<double>(r);
  mean_r /= static_cast<double>(rq.size());

  cli::Report report("ceiling", json{{"n", a.n}, {"rq_count", rq.size()}, {"mean_rq", mean_r}, {"k", ks}, {"m", a.m}});
  json rows = json::array();
  cli::Table table({"K", "lambda", "p_rand(exact)", "p_rand(poisson)", "BoR_max(log-of-mean)",
                    "BoR_max(mean-of-logs)", "BoR_opt"});
  std::ostringstream csv_text;
  cli::CsvWriter csv(csv_text, {"K", "lambda", "p_rand_exact", "p_rand_exact_log_complement", "p_rand_poisson",
                                "bor_max_log_of_mean", "bor_max_mean_of_logs", "bor_opt", "poisson_ceiling_bits"});

  std::map<std::uint64_t, bor_probability> cache;
  for (auto k : ks) {
    cache.clear();
    std::vector<bor_probability> baselines;
    baselines.reserve(rq.size());
    for (auto r : rq) {
      auto it = cache.find(r);
      if (it == cache.end()) {
        bor_probability p;
        check(bor_p_rand_at_least_m(a.n, r, k, a.m, &p));
        it = cache.emplace(r, p).first;
      }
      baselines.push_back(it->second);
    }
    bor_report agg;
    check(bor_aggregate_report(1.0, baselines.data(), baselines.size(), a.n, k, bor_rule{BOR_RULE_COVERAGE, a.m},
                               &agg));
    double lambda = 0.0;
    bor_probability poisson{0.0, 0.0};
    if (mean_r > 0.0) {
      check(bor_lambda_rate(a.n, mean_r, k, &lambda));
      check(bor_p_rand_poisson(lambda, a.m, &poisson));
    }
    const double poisson_ceiling = bor_surprisal_bits(poisson);
    rows.push_back(json{{"k", k},
                        {"lambda", lambda},
                        {"p_rand_exact", probability_json(agg.mean_baseline)},
                        {"p_rand_poisson", probability_json(poisson)},
                        {"ceilings",
                         {{"bor_max_log_of_mean", agg.ceilings.log_of_mean},
                          {"bor_max_mean_of_logs", agg.ceilings.mean_of_logs},
                          {"bor_opt", agg.ceilings.opt}}},
                        {"poisson_ceiling_bits", poisson_ceiling}});
    table.add({std::to_string(k), cli::lambda_text(lambda), cli::fixed(agg.mean_baseline.value, 4),
               cli::fixed(poisson.value, 4), cli::bits(agg.ceilings.log_of_mean),
               cli::bits(agg.ceilings.mean_of_logs), cli::bits(agg.ceilings.opt)});
    csv.row({std::to_string(k), cli::full(lambda), cli::full(agg.mean_baseline.value),
             cli::full(agg.mean_baseline.log_complement), cli::full(poisson.value),
             cli::full(agg.ceilings.log_of_mean), cli::full(agg.ceilings.mean_of_logs), cli::full(agg.ceilings.opt),
             cli::full(poisson_ceiling)});
  }

  switch (format) {
    case Format::json: print_json(report, json{{"rows", rows}}); break;
    case Format::csv: std::cout << csv_text.str(); break;
    case Format::table:
      std::cout << "N = " << a.n << ", queries = " << rq.size() << ", mean R = " << cli::fixed(mean_r, 2)
                << ", m = " << a.m << " (bits)\n";
      table.print(std::cout);
      break;
  }
  return 0;
}

// ---- eval --------------------------------------------------------------

struct EvalArgs {
  std::string qrels;
  std::string run;
  std::uint64_t n = 0;
  std::vector<std::string> k;
  std::string rule = "coverage";
  std::uint32_t m = 1;
  std::size_t bootstrap = 5000;
  std::uint64_t seed = 7;
  double level = 0.95;
  int threshold = 1;
  bool smooth = false;
  unsigned threads = 0;
  std::vector<std::string> p_obs;
  std::vector<std::string> recall;
  std::vector<std::string> rq;
  std::string format = "table";
};

json report_json(const bor_report& r, double level) {
  json ci = nullptr;
  if (r.has_ci)
    ci = json{{"low", r.ci_low},
              {"high", r.ci_high},
              {"level", level},
              {"defined", r.ci_defined != 0},
              {"replicates", r.ci_replicates},
              {"undefined_replicates", r.ci_undefined_replicates}};
  return json{{"k", r.depth},
              {"n", r.corpus_size},
              {"rule", rule_name(r.rule)},
              {"min_hits", r.rule.min_hits},
              {"query_count", r.query_count},
              {"p_obs", r.p_obs},
              {"smoothed", r.smoothed != 0},
              {"p_rand", probability_json(r.mean_baseline)},
              {"bor_bits", r.bor.bits},
              {"bor_status", value_status_name(r.bor.status)},
              {"enrichment_factor", r.mean_baseline.value > 0 ? r.p_obs / r.mean_baseline.value : NAN},
              {"ceilings",
               {{"bor_max_log_of_mean", r.ceilings.log_of_mean},
                {"bor_max_mean_of_logs", r.ceilings.mean_of_logs},
                {"bor_opt", r.ceilings.opt}}},
              {"ci", ci},
              {"excluded_below_min_hits", r.excluded_zero_relevant},
              {"missing_from_run", r.missing_from_run}};
}

json delta_json(const bor_depth_delta& d, double observed) {
  return json{{"k1", d.k1},
              {"k2", d.k2},
              {"gain_term", d.gain_term},
              {"baseline_term", d.baseline_term},
              {"total", d.total},
              {"observed", observed},
              {"closure_residual", observed - d.total},
              {"predicted_plateau", d.predicted_plateau},
              {"defined", d.defined != 0}};
}

int run_eval(EvalArgs a) {
  const Format format = cli::parse_format(a.format);
  require_positive(a.n, "--n");
  if (a.m == 0) throw Failure{2, "--m must be at least 1"};
  if (a.rule != "coverage" && a.rule != "recall") throw Failure{2, "--rule must be coverage or recall"};
  if (!a.recall.empty()) {
    if (!a.p_obs.empty()) throw Failure{2, "--recall and --p-obs are mutually exclusive"};
    a.rule = "recall";
    a.p_obs = a.recall;
  }
  if (!(a.level > 0.0 && a.level < 1.0)) throw Failure{2, "--level must lie in (0, 1)"};
  if (a.bootstrap != 0 && a.bootstrap < 100) throw Failure{2, "--bootstrap needs 0 (off) or at least 100 replicates"};
  const auto ks = depth_list(a.k, a.n);
  const bor_rule rule{a.rule == "recall" ? BOR_RULE_RECALL : BOR_RULE_COVERAGE, a.rule == "recall" ? 1u : a.m};
  const bool override_path = !a.p_obs.empty();

  json params{{"n", a.n}, {"k", ks}, {"rule", rule_name(rule)}, {"min_hits", rule.min_hits}};
  SweepPtr sweep;
  cli::Report report("eval", params);

  if (override_path) {
    std::vector<double> p_obs;
    for (const auto& s : expand_values(a.p_obs)) p_obs.push_back(parse_real(s, "--p-obs"));
    if (p_obs.size() != ks.size())
      throw Failure{2, "--p-obs/--recall needs one value per depth (" + std::to_string(ks.size()) + ")"};
    for (double p : p_obs)
      if (!(p >= 0.0 && p <= 1.0)) throw Failure{2, "--p-obs/--recall values must lie in [0, 1]"};
    std::vector<std::uint64_t> rq;
    if (rule.kind == BOR_RULE_COVERAGE) {
      if (a.rq.empty()) throw Failure{2, "--p-obs with the coverage rule needs --rq"};
      rq = relevant_counts(a.rq);
    }
    std::vector<bor_report> reports;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      std::vector<bor_probability> baselines;
      if (rule.kind == BOR_RULE_RECALL) {
        const double v = static_cast<double>(ks[i]) / static_cast<double>(a.n);
        baselines.push_back({v, std::log1p(-v)});
      } else {
        for (auto r : rq) {
          bor_probability p;
          check(bor_p_rand_at_least_m(a.n, r, ks[i], rule.min_hits, &p), "--rq");
          baselines.push_back(p);
        }
      }
      bor_report r;
      check(bor_aggregate_report(p_obs[i], baselines.data(), baselines.size(), a.n, ks[i], rule, &r));
      reports.push_back(r);
    }
    bor_sweep* s = nullptr;
    check(bor_sweep_from_reports(reports.data(), reports.size(), &s));
    sweep.reset(s);
    report = cli::Report("eval", [&] {
      params["source"] = "aggregate";
      params["p_obs"] = p_obs;
      return params;
    }());
  } else {
    if (a.qrels.empty() || a.run.empty()) throw Failure{2, "eval needs --qrels and --run (or --p-obs/--recall)"};
    bor_judgments* j = nullptr;
    check(bor_judgments_read(a.qrels.c_str(), a.threshold, &j), a.qrels);
    JudgmentsPtr judgments(j);
    bor_run* r = nullptr;
    check(bor_run_read(a.run.c_str(), &r), a.run);
    RunPtr run(r);

    bor_eval_options options;
    bor_eval_options_init(&options);
    options.smooth_zero_success = a.smooth ? 1 : 0;
    options.bootstrap_replicates = a.bootstrap;
    options.seed = a.seed;
    options.level = a.level;
    options.threads = a.threads;
    bor_sweep* s = nullptr;
    check(bor_depth_sweep(run.get(), judgments.get(), a.n, ks.data(), ks.size(), rule, &options, &s));
    sweep.reset(s);

    params["source"] = "files";
    params["qrels"] = a.qrels;
    params["run"] = a.run;
    params["threshold"] = a.threshold;
    params["bootstrap"] = a.bootstrap;
    params["seed"] = a.seed;
    params["level"] = a.level;
    params["smooth"] = a.smooth;
    report = cli::Report("eval", params);
    if (auto w = bor_judgments_duplicate_warnings(judgments.get()))
      report.warn(std::to_string(w) + " duplicate judgment(s); the highest grade was kept");
    if (auto w = bor_run_rank_warnings(run.get()))
      report.warn(std::to_string(w) + " quer(y/ies) with stated ranks disagreeing with score order; re-sorted by score");
  }

  const std::size_t steps = bor_sweep_size(sweep.get());
  std::vector<bor_report> reports(steps);
  for (std::size_t i = 0; i < steps; ++i) check(bor_sweep_report(sweep.get(), i, &reports[i]));
  std::vector<bor_depth_delta> deltas;
  for (std::size_t i = 1; i < steps; ++i) {
    bor_depth_delta d;
    check(bor_sweep_delta(sweep.get(), i, &d));
    deltas.push_back(d);
  }

  const auto& first = reports.front();
  if (first.excluded_zero_relevant > 0)
    report.warn(std::to_string(first.excluded_zero_relevant) + " judged quer(y/ies) with fewer than " +
                std::to_string(rule.min_hits) + " relevant item(s) excluded");
  if (first.missing_from_run > 0)
    report.warn(std::to_string(first.missing_from_run) + " judged quer(y/ies) absent from the run scored as failures");
  for (const auto& r : reports) {
    if (r.smoothed) report.warn("K=" + std::to_string(r.depth) + ": no query succeeded; p_obs smoothed to 1/(2|Q|)");
    if (r.bor.status == BOR_VALUE_ZERO_OBSERVED)
      report.warn("K=" + std::to_string(r.depth) + ": no query succeeded; BoR is -inf");
    if (r.has_ci && r.ci_undefined_replicates > 0)
      report.warn("K=" + std::to_string(r.depth) + ": " + std::to_string(r.ci_undefined_replicates) +
                  " bootstrap replicate(s) had no successes and were dropped");
  }

  auto observed = [&](std::size_t i) { return reports[i + 1].bor.bits - reports[i].bor.bits; };

  switch (format) {
    case Format::json: {
      json rs = json::array();
      for (const auto& r : reports) rs.push_back(report_json(r, a.level));
      json ds = json::array();
      for (std::size_t i = 0; i < deltas.size(); ++i) ds.push_back(delta_json(deltas[i], observed(i)));
      print_json(report, json{{"reports", rs}, {"deltas", ds}});
      break;
    }
    case Format::csv: {
      cli::CsvWriter csv(std::cout, {"K", "rule", "queries", "p_obs", "p_rand", "p_rand_log_complement", "bor_bits",
                                     "bor_status", "ci_low", "ci_high", "bor_max_log_of_mean", "bor_max_mean_of_logs",
                                     "bor_opt", "delta_gain_term", "delta_baseline_term", "delta_total",
                                     "delta_predicted_plateau"});
      for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        std::vector<std::string> row{std::to_string(r.depth),
                                     rule_name(r.rule),
                                     std::to_string(r.query_count),
                                     cli::full(r.p_obs),
                                     cli::full(r.mean_baseline.value),
                                     cli::full(r.mean_baseline.log_complement),
                                     cli::full(r.bor.bits),
                                     value_status_name(r.bor.status),
                                     r.has_ci && r.ci_defined ? cli::full(r.ci_low) : "",
                                     r.has_ci && r.ci_defined ? cli::full(r.ci_high) : "",
                                     cli::full(r.ceilings.log_of_mean),
                                     cli::full(r.ceilings.mean_of_logs),
                                     cli::full(r.ceilings.opt)};
        if (i == 0) {
          row.insert(row.end(), 4, "");
        } else {
          const auto& d = deltas[i - 1];
          row.push_back(cli::full(d.gain_term));
          row.push_back(cli::full(d.baseline_term));
          row.push_back(cli::full(d.total));
          row.push_back(cli::full(d.predicted_plateau));
        }
        csv.row(row);
      }
      report.flush_warnings(std::cerr);
      break;
    }
    case Format::table: {
      const int pct = static_cast<int>(std::lround(a.level * 100));
      cli::Table t({"K", "queries", "p_obs", "p_rand", "BoR", "CI" + std::to_string(pct), "BoR_max", "BoR_opt"});
      for (const auto& r : reports) {
        std::string ci = "-";
        if (r.has_ci) ci = r.ci_defined ? "[" + cli::bits(r.ci_low) + ", " + cli::bits(r.ci_high) + "]" : "undef";
        t.add({std::to_string(r.depth), std::to_string(r.query_count), cli::fixed(r.p_obs, 4),
               cli::fixed(r.mean_baseline.value, 4), cli::bits(r.bor.bits), ci, cli::bits(r.ceilings.log_of_mean),
               cli::bits(r.ceilings.opt)});
      }
      std::cout << "rule " << rule_name(rule) << ", N = " << a.n << " (bits)\n";
      t.print(std::cout);
      if (!deltas.empty()) {
        std::cout << '\n';
        cli::Table dt({"K1->K2", "gain", "baseline", "dBoR", "plateau", "closure"});
        for (std::size_t i = 0; i < deltas.size(); ++i) {
          const auto& d = deltas[i];
          char residual[32];
          std::snprintf(residual, sizeof residual, "%.1e", std::abs(observed(i) - d.total));
          dt.add({std::to_string(d.k1) + "->" + std::to_string(d.k2), cli::bits(d.gain_term),
                  cli::bits(d.baseline_term), cli::bits(d.total), cli::bits(d.predicted_plateau),
                  d.defined ? residual : "undef"});
        }
        dt.print(std::cout);
      }
      report.flush_warnings(std::cerr);
      break;
    }
  }
  return 0;
}

// ---- advise ------------------------------------------------------------

struct AdviseArgs {
  std::uint64_t n = 0;
  double rq = 0.0;
  std::vector<std::string> k;
  double min_bits = 0.1;
  std::string scenarios;
  std::string format = "table";
};

struct Scenario {
  std::string name;
  std::uint64_t n = 0;
  double rq = 0.0;
  std::uint64_t k = 0;
};

std::vector<Scenario> load_scenarios(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{2, "cannot open " + path};
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Failure{3, path + ": " + e.what()};
  }
  if (doc.is_object() && doc.contains("scenarios")) doc = doc["scenarios"];
  if (!doc.is_array()) throw Failure{3, path + ": expected an array of scenarios"};
  std::vector<Scenario> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& rec = doc[i];
    try {
      Scenario s;
      s.name = rec.value("name", "scenario " + std::to_string(i + 1));
      s.n = rec.at("n").get<std::uint64_t>();
      s.rq = rec.at("rq").get<double>();
      s.k = rec.at("k").get<std::uint64_t>();
      out.push_back(std::move(s));
    } catch (const json::exception& e) {
      throw Failure{3, path + ": scenario " + std::to_string(i + 1) + ": " + e.what()};
    }
  }
  return out;
}

json diagnostic_json(const bor_diagnostic& d) {
  return json{{"n", d.corpus_size},
              {"mean_relevant", d.mean_relevant},
              {"k", d.depth},
              {"lambda", d.lambda},
              {"exact_ceiling_bits", d.exact_ceiling},
              {"poisson_ceiling_bits", d.poisson_ceiling},
              {"zone", bor_zone_name(d.zone)},
              {"interpolated", d.interpolated != 0},
              {"clamped_to_one", d.clamped_to_one != 0},
              {"relevant_low", d.relevant_low},
              {"relevant_high", d.relevant_high}};
}

std::string diagnostic_note(const bor_diagnostic& d) {
  if (d.clamped_to_one) return "R below 1 evaluated as 1";
  if (d.interpolated)
    return "interpolated between R=" + std::to_string(d.relevant_low) + " and R=" + std::to_string(d.relevant_high);
  return "";
}

std::vector<std::string> diagnostic_cells(const std::string& name, const bor_diagnostic& d) {
  return {name,
          std::to_string(d.corpus_size),
          cli::full(d.mean_relevant),
          std::to_string(d.depth),
          cli::lambda_text(d.lambda),
          cli::bits(d.exact_ceiling),
          cli::bits(d.poisson_ceiling),
          bor_zone_name(d.zone),
          diagnostic_note(d)};
}

const std::vector<std::string> kDiagnosticHeader{"scenario", "N",       "R",    "K", "lambda", "ceiling(exact)",
                                                 "ceiling(poisson)", "zone", "note"};
const std::vector<std::string> kDiagnosticCsv{"scenario",  "n",         "rq", "k", "lambda", "exact_ceiling_bits",
                                              "poisson_ceiling_bits", "zone", "error"};

std::vector<std::string> diagnostic_csv(const std::string& name, const bor_diagnostic& d) {
  return {name,
          std::to_string(d.corpus_size),
          cli::full(d.mean_relevant),
          std::to_string(d.depth),
          cli::full(d.lambda),
          cli::full(d.exact_ceiling),
          cli::full(d.poisson_ceiling),
          bor_zone_name(d.zone),
          ""};
}

int run_advise(const AdviseArgs& a) {
  const Format format = cli::parse_format(a.format);

  if (!a.scenarios.empty()) {
    const auto scenarios = load_scenarios(a.scenarios);
    cli::Report report("advise", json{{"scenarios", a.scenarios}});
    json rows = json::array();
    cli::Table table(kDiagnosticHeader);
    std::ostringstream csv_text;
    cli::CsvWriter csv(csv_text, kDiagnosticCsv);
    for (const auto& s : scenarios) {
      bor_diagnostic d;
      if (bor_diagnose(s.n, s.rq, s.k, &d) != BOR_OK) {
        const std::string error = bor_last_error_message();
        report.warn(s.name + ": " + error);
        rows.push_back(json{{"name", s.name}, {"n", s.n}, {"rq", s.rq}, {"k", s.k}, {"error", error}});
        table.add({s.name, std::to_string(s.n), cli::full(s.rq), std::to_string(s.k), "-", "-", "-", "error", error});
        csv.row({s.name, std::to_string(s.n), cli::full(s.rq), std::to_string(s.k), "", "", "", "", error});
        continue;
      }
      json row = diagnostic_json(d);
      row["name"] = s.name;
      rows.push_back(row);
      table.add(diagnostic_cells(s.name, d));
      csv.row(diagnostic_csv(s.name, d));
    }
    switch (format) {
      case Format::json: print_json(report, json{{"diagnostics", rows}}); break;
      case Format::csv:
        std::cout << csv_text.str();
        report.flush_warnings(std::cerr);
        break;
      case Format::table:
        table.print(std::cout);
        report.flush_warnings(std::cerr);
        break;
    }
    return 0;
  }

  require_positive(a.n, "--n");
  if (!(a.rq > 0.0) || a.rq > static_cast<double>(a.n)) throw Failure{2, "--rq must lie in (0, N]"};

  if (!a.k.empty()) {
    const auto ks = depth_list(a.k, a.n);
    cli::Report report("advise", json{{"n", a.n}, {"rq", a.rq}, {"k", ks}});
    json rows = json::array();
    cli::Table table(kDiagnosticHeader);
    std::ostringstream csv_text;
    cli::CsvWriter csv(csv_text, kDiagnosticCsv);
    for (auto k : ks) {
      bor_diagnostic d;
      check(bor_diagnose(a.n, a.rq, k, &d));
      rows.push_back(diagnostic_json(d));
      table.add(diagnostic_cells("-", d));
      csv.row(diagnostic_csv("", d));
    }
    switch (format) {
      case Format::json: print_json(report, json{{"diagnostics", rows}}); break;
      case Format::csv: std::cout << csv_text.str(); break;
      case Format::table: table.print(std::cout); break;
    }
    return 0;
  }

  if (!(a.min_bits > 0.0)) throw Failure{2, "--min-bits must be positive"};
  bor_recommendation rec;
  check(bor_recommend_k(a.n, a.rq, a.min_bits, &rec));
  cli::Report report("advise", json{{"n", a.n}, {"rq", a.rq}, {"min_bits", a.min_bits}});
  switch (format) {
    case Format::json: {
      json payload{{"recommended_k", rec.depth}, {"saturated", rec.saturated != 0}};
      payload["diagnostic"] = rec.depth > 0 ? diagnostic_json(rec.diagnostic) : json(nullptr);
      print_json(report, payload);
      break;
    }
    case Format::csv: {
      cli::CsvWriter csv(std::cout, {"n", "rq", "min_bits", "recommended_k", "saturated", "lambda",
                                     "exact_ceiling_bits", "zone"});
      csv.row({std::to_string(a.n), cli::full(a.rq), cli::full(a.min_bits), std::to_string(rec.depth),
               rec.saturated ? "true" : "false", rec.depth ? cli::full(rec.diagnostic.lambda) : "",
               rec.depth ? cli::full(rec.diagnostic.exact_ceiling) : "",
               rec.depth ? bor_zone_name(rec.diagnostic.zone) : ""});
      break;
    }
    case Format::table:
      if (rec.saturated) {
        std::cout << "no depth reaches " << cli::full(a.min_bits)
                  << " bits: random selection already saturates at K = 1\n";
      } else {
        const auto& d = rec.diagnostic;
        std::cout << "recommended K = " << rec.depth << " (largest depth with ceiling >= " << cli::full(a.min_bits)
                  << " bits)\n"
                  << "  exact ceiling " << cli::bits(d.exact_ceiling) << " bits, lambda " << cli::lambda_text(d.lambda)
                  << ", zone " << bor_zone_name(d.zone) << '\n';
        if (const auto note = diagnostic_note(d); !note.empty()) std::cout << "  " << note << '\n';
      }
      break;
  }
  return 0;
}

// ---- simulate ----------------------------------------------------------

struct SimulateArgs {
  std::uint64_t n = 0;
  std::uint64_t rq = 0;
  std::uint64_t k = 0;
  std::uint32_t m = 1;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 7;
  unsigned threads = 0;
  std::string format = "table";
};

int run_simulate(const SimulateArgs& a) {
  const Format format = cli::parse_format(a.format);
  require_positive(a.n, "--n");
  require_positive(a.trials, "--trials");
  if (a.m == 0) throw Failure{2, "--m must be at least 1"};
  if (a.k == 0 || a.k > a.n) throw Failure{2, "--k must lie in [1, N]"};
  if (a.rq > a.n) throw Failure{2, "--rq exceeds --n"};

  bor_probability exact;
  check(bor_p_rand_at_least_m(a.n, a.rq, a.k, a.m, &exact));
  bor_mc_estimate est;
  check(bor_monte_carlo(a.n, a.rq, a.k, a.m, a.trials, a.seed, a.threads, &est));
  // z uses the standard error implied by the exact probability.
  const double null_se = std::sqrt(exact.value * (1.0 - exact.value) / static_cast<double>(a.trials));
  const double diff = est.probability - exact.value;
  const double z = null_se > 0.0 ? diff / null_se : (diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff));

  cli::Report report("simulate", json{{"n", a.n}, {"rq", a.rq}, {"k", a.k}, {"m", a.m}, {"trials", a.trials},
                                      {"seed", a.seed}});
  switch (format) {
    case Format::json:
      print_json(report, json{{"empirical", est.probability},
                              {"successes", est.successes},
                              {"trials", est.trials},
                              {"standard_error", est.standard_error},
                              {"exact", probability_json(exact)},
                              {"null_standard_error", null_se},
                              {"z", z}});
      break;
    case Format::csv: {
      cli::CsvWriter csv(std::cout, {"n", "rq", "k", "m", "trials", "seed", "successes", "empirical", "exact",
                                     "standard_error", "null_standard_error", "z"});
      csv.row({std::to_string(a.n), std::to_string(a.rq), std::to_string(a.k), std::to_string(a.m),
               std::to_string(a.trials), std::to_string(a.seed), std::to_string(est.successes),
               cli::full(est.probability), cli::full(exact.value), cli::full(est.standard_error), cli::full(null_se),
               cli::full(z)});
      break;
    }
    case Format::table:
      std::cout << "N = " << a.n << ", R = " << a.rq << ", K = " << a.k << ", m = " << a.m << ", trials = "
                << a.trials << ", seed = " << a.seed << '\n'
                << "  empirical  " << cli::fixed(est.probability, 6) << "  (" << est.successes << " successes)\n"
                << "  exact      " << cli::fixed(exact.value, 6) << '\n'
                << "  std error  " << cli::fixed(est.standard_error, 6) << '\n'
                << "  z          " << cli::fixed(z, 2) << '\n';
      break;
  }
  return 0;
}

// ---- boundary ----------------------------------------------------------

struct BoundaryArgs {
  std::uint64_t n = 0;
  double rq = 0.0;
  std::vector<std::string> k;
  std::size_t points = 50;
  std::string format = "csv";
};

int run_boundary(const BoundaryArgs& a) {
  const Format format = cli::parse_format(a.format);
  require_positive(a.n, "--n");
  if (!(a.rq > 0.0) || a.rq > static_cast<double>(a.n)) throw Failure{2, "--rq must lie in (0, N]"};
  std::vector<std::uint64_t> ks;
  if (!a.k.empty()) {
    ks = depth_list(a.k, a.n);
  } else {
    if (a.points < 2) throw Failure{2, "--points must be at least 2"};
    // Log-spaced grid over [1, N].
    const double top = std::log(static_cast<double>(a.n));
    for (std::size_t i = 0; i < a.points; ++i) {
      const double x = std::exp(top * static_cast<double>(i) / static_cast<double>(a.points - 1));
      ks.push_back(std::clamp<std::uint64_t>(static_cast<std::uint64_t>(std::llround(x)), 1, a.n));
    }
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  }
  std::vector<bor_boundary_row> rows(ks.size());
  check(bor_boundary_map(a.n, a.rq, ks.data(), ks.size(), rows.data()));

  cli::Report report("boundary", json{{"n", a.n}, {"rq", a.rq}, {"k", ks}});
  switch (format) {
    case Format::json: {
      json out = json::array();
      for (const auto& r : rows)
        out.push_back(json{{"k", r.k},
                           {"lambda", r.lambda},
                           {"exact_ceiling_bits", r.exact_ceiling},
                           {"poisson_ceiling_bits", r.poisson_ceiling},
                           {"zone", bor_zone_name(r.zone)}});
      print_json(report, json{{"rows", out}});
      break;
    }
    case Format::csv: {
      cli::CsvWriter csv(std::cout, {"K", "lambda", "exact_ceiling_bits", "poisson_ceiling_bits", "zone"});
      for (const auto& r : rows)
        csv.row({std::to_string(r.k), cli::full(r.lambda), cli::full(r.exact_ceiling), cli::full(r.poisson_ceiling),
                 bor_zone_name(r.zone)});
      break;
    }
    case Format::table: {
      cli::Table t({"K", "lambda", "ceiling(exact)", "ceiling(poisson)", "zone"});
      for (const auto& r : rows)
        t.add({std::to_string(r.k), cli::lambda_text(r.lambda), cli::bits(r.exact_ceiling),
               cli::bits(r.poisson_ceiling), bor_zone_name(r.zone)});
      t.print(std::cout);
      break;
    }
  }
  return 0;
}

// ---- index / search ----------------------------------------------------

std::vector<std::string> read_stopwords(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream in(path);
  if (!in) throw Failure{2, "cannot open " + path};
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

CorpusPtr load_corpus(const std::string& path, cli::Report& report) {
  bor_corpus* c = nullptr;
  check(bor_corpus_read(path.c_str(), &c), path);
  CorpusPtr corpus(c);
  if (auto w = bor_corpus_encoding_warnings(corpus.get()))
    report.warn(std::to_string(w) + " invalid UTF-8 sequence(s) replaced in " + path);
  return corpus;
}

IndexPtr build_index(const bor_corpus* corpus, const std::vector<std::string>& stopwords) {
  std::vector<const char*> words;
  for (const auto& w : stopwords) words.push_back(w.c_str());
  bor_index* idx = nullptr;
  check(bor_index_build(corpus, words.data(), words.size(), &idx));
  return IndexPtr(idx);
}

struct IndexArgs {
  std::string corpus;
  std::string index;
  std::string stopwords;
  std::string format = "table";
};

int run_index(const IndexArgs& a) {
  const Format format = cli::parse_format(a.format);
  cli::Report report("index", json{{"corpus", a.corpus}, {"index", a.index}});
  const auto corpus = load_corpus(a.corpus, report);
  const auto index = build_index(corpus.get(), read_stopwords(a.stopwords));
  check(bor_index_save(index.get(), a.index.c_str()), a.index);
  const auto docs = bor_index_doc_count(index.get());
  if (format == Format::json) {
    print_json(report, json{{"documents", docs}, {"index", a.index}});
  } else {
    std::cout << "indexed " << docs << " documents into " << a.index << '\n';
    report.flush_warnings(std::cerr);
  }
  return 0;
}

struct SearchArgs {
  std::string corpus;
  std::string index;
  std::string queries;
  bool all_docs = false;
  std::string query_text = "subject";
  std::size_t k = 100;
  bool exclude_self = false;
  bool class_relevance = false;
  std::string qrels_out;
  std::string out;
  std::string tag = "bm25";
  double k1 = 1.2;
  double b = 0.75;
  std::string stopwords;
  unsigned threads = 0;
  std::string format = "table";
};

struct QueryText {
  std::string id;
  std::string text;
};

// Text used when a query is a corpus document.
std::string document_query(const char* text, const std::string& mode) {
  if (mode == "full") return text;
  std::vector<char> buf(bor_subject_line(text, nullptr, 0) + 1);
  bor_subject_line(text, buf.data(), buf.size());
  return buf.data();
}

// TSV "id<TAB>text" or JSON {"id", "text"?} per line. Missing text means the
// corpus document with that id supplies it.
std::vector<QueryText> read_queries(const std::string& path, const bor_corpus* corpus, const std::string& mode) {
  std::ifstream in(path);
  if (!in) throw Failure{2, "cannot open " + path};
  std::map<std::string, const char*> texts;
  if (corpus)
    for (std::size_t i = 0; i < bor_corpus_size(corpus); ++i) {
      const char* id = nullptr;
      const char* text = nullptr;
      check(bor_corpus_document(corpus, i, &id, &text, nullptr));
      texts.emplace(id, text);
    }
  std::vector<QueryText> out;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    QueryText q;
    bool has_text = false;
    if (line[line.find_first_not_of(" \t")] == '{') {
      try {
        const auto rec = json::parse(line);
        const auto& id = rec.at("id");
        q.id = id.is_string() ? id.get<std::string>() : id.dump();
        if (rec.contains("text") && !rec["text"].is_null()) {
          q.text = rec["text"].get<std::string>();
          has_text = true;
        }
      } catch (const json::exception& e) {
        throw Failure{3, path + ": line " + std::to_string(line_no) + ": " + e.what()};
      }
    } else {
      const auto tab = line.find('\t');
      q.id = line.substr(0, tab);
      if (tab != std::string::npos) {
        q.text = line.substr(tab + 1);
        has_text = true;
      }
    }
    if (q.id.empty()) throw Failure{3, path + ": line " + std::to_string(line_no) + ": empty query id"};
    if (!has_text) {
      auto it = texts.find(q.id);
      if (it == texts.end())
        throw Failure{3, path + ": line " + std::to_string(line_no) + ": query " + q.id +
                             " has no text and is not a corpus document"};
      q.text = document_query(it->second, mode);
    }
    out.push_back(std::move(q));
  }
  return out;
}

int run_search(const SearchArgs& a) {
  const Format format = cli::parse_format(a.format);
  if (a.k == 0) throw Failure{2, "--k must be at least 1"};
  if (a.query_text != "subject" && a.query_text != "full") throw Failure{2, "--query-text must be subject or full"};
  if (a.queries.empty() == !a.all_docs) throw Failure{2, "give exactly one of --queries or --all-docs-as-queries"};
  if (a.index.empty() && a.corpus.empty()) throw Failure{2, "search needs --index or --corpus"};
  if ((a.all_docs || a.class_relevance) && a.corpus.empty())
    throw Failure{2, "--all-docs-as-queries and --class-relevance need --corpus"};

  cli::Report report("search", json{{"corpus", a.corpus},
                                    {"index", a.index},
                                    {"queries", a.all_docs ? json("all-docs") : json(a.queries)},
                                    {"query_text", a.query_text},
                                    {"k", a.k},
                                    {"exclude_self", a.exclude_self},
                                    {"class_relevance", a.class_relevance},
                                    {"k1", a.k1},
                                    {"b", a.b}});
  CorpusPtr corpus;
  if (!a.corpus.empty()) corpus = load_corpus(a.corpus, report);
  IndexPtr index;
  if (!a.index.empty()) {
    bor_index* idx = nullptr;
    check(bor_index_load(a.index.c_str(), &idx), a.index);
    index.reset(idx);
  } else {
    index = build_index(corpus.get(), read_stopwords(a.stopwords));
  }

  std::vector<QueryText> queries;
  if (a.all_docs) {
    for (std::size_t i = 0; i < bor_corpus_size(corpus.get()); ++i) {
      const char* id = nullptr;
      const char* text = nullptr;
      check(bor_corpus_document(corpus.get(), i, &id, &text, nullptr));
      queries.push_back({id, document_query(text, a.query_text)});
    }
  } else {
    queries = read_queries(a.queries, corpus.get(), a.query_text);
  }
  if (queries.empty()) throw Failure{4, "no queries to search"};

  std::vector<bor_query> cq;
  cq.reserve(queries.size());
  for (const auto& q : queries) cq.push_back({q.id.c_str(), q.text.c_str()});
  bor_run* r = nullptr;
  check(bor_index_search_run(index.get(), cq.data(), cq.size(), a.k, bor_bm25_params{a.k1, a.b},
                             a.exclude_self ? 1 : 0, a.tag.c_str(), a.threads, &r));
  RunPtr run(r);
  check(bor_run_write(run.get(), a.out.c_str(), 0), a.out);

  json payload{{"queries", queries.size()}, {"run", a.out}, {"documents", bor_index_doc_count(index.get())}};
  if (a.class_relevance) {
    const std::string qrels_path = a.qrels_out.empty() ? a.out + ".qrels" : a.qrels_out;
    std::vector<const char*> ids;
    for (const auto& q : queries) ids.push_back(q.id.c_str());
    bor_judgments* j = nullptr;
    check(bor_class_relevance(corpus.get(), ids.data(), ids.size(), &j), "--class-relevance");
    JudgmentsPtr judgments(j);
    check(bor_judgments_write(judgments.get(), qrels_path.c_str()), qrels_path);
    bor_dataset_stats stats;
    check(bor_dataset_stats_compute(judgments.get(), bor_index_doc_count(index.get()), &stats));
    payload["qrels"] = qrels_path;
    payload["mean_relevant"] = stats.mean_relevant;
    payload["zero_relevant_queries"] = stats.zero_relevant_queries;
    if (stats.zero_relevant_queries > 0)
      report.warn(std::to_string(stats.zero_relevant_queries) + " quer(y/ies) have no other document in their class");
  }

  if (format == Format::json) {
    print_json(report, payload);
  } else {
    std::cout << "searched " << queries.size() << " queries over " << bor_index_doc_count(index.get())
              << " documents; run written to " << a.out << '\n';
    if (payload.contains("qrels"))
      std::cout << "class-relevance qrels written to " << payload["qrels"].get<std::string>() << " (mean R = "
                << cli::fixed(payload["mean_relevant"].get<double>(), 2) << ")\n";
    report.flush_warnings(std::cerr);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bits-over-Random retrieval evaluation"};
  app.set_version_flag("--version", std::string("bor-eval ") + bor_version());
  app.require_subcommand(1);

  const std::vector<std::string> formats{"table", "json", "csv"};

  CeilingArgs ceiling;
  auto* c = app.add_subcommand("ceiling", "Selectivity ceilings and random baselines");
  c->add_option("--n", ceiling.n, "Corpus size N")->required();
  c->add_option("--rq", ceiling.rq, "Relevant counts per query (repeatable, comma separated, or @file)")->required();
  c->add_option("--k", ceiling.k, "Depths K (repeatable or comma separated)")->required();
  c->add_option("--m", ceiling.m, "Minimum relevant hits for success")->capture_default_str();
  c->add_option("--format", ceiling.format)->check(CLI::IsMember(formats))->capture_default_str();

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "BoR of a run against judgments, with depth deltas");
  e->add_option("--qrels", eval.qrels, "Judgments file (qid iter docid grade)");
  e->add_option("--run", eval.run, "Run file (qid Q0 docid rank score tag)");
  e->add_option("--n", eval.n, "Corpus size N")->required();
  e->add_option("--k", eval.k, "Depths K (repeatable or comma separated)")->required();
  e->add_option("--rule", eval.rule, "Success rule")->check(CLI::IsMember({"coverage", "recall"}))->capture_default_str();
  e->add_option("--m", eval.m, "Minimum relevant hits (coverage)")->capture_default_str();
  e->add_option("--bootstrap", eval.bootstrap, "Bootstrap replicates, 0 to disable")->capture_default_str();
  e->add_option("--seed", eval.seed, "Bootstrap seed")->capture_default_str();
  e->add_option("--level", eval.level, "Confidence level")->capture_default_str();
  e->add_option("--threshold", eval.threshold, "Minimum grade counted as relevant")->capture_default_str();
  e->add_flag("--smooth", eval.smooth, "Smooth p_obs = 0 to 1/(2|Q|)");
  e->add_option("--threads", eval.threads, "Worker threads, 0 for all cores")->capture_default_str();
  e->add_option("--p-obs", eval.p_obs, "Aggregate success rate per depth instead of files");
  e->add_option("--recall", eval.recall, "Aggregate recall per depth (recall rule) instead of files");
  e->add_option("--rq", eval.rq, "Relevant counts per query for --p-obs with the coverage rule");
  e->add_option("--format", eval.format)->check(CLI::IsMember(formats))->capture_default_str();

  AdviseArgs advise;
  auto* ad = app.add_subcommand("advise", "Collapse-zone diagnostics and depth recommendations");
  ad->add_option("--n", advise.n, "Corpus or catalog size N");
  ad->add_option("--rq", advise.rq, "Mean relevant count per query");
  ad->add_option("--k", advise.k, "Depths to diagnose; omit for a recommendation");
  ad->add_option("--min-bits", advise.min_bits, "Smallest useful ceiling")->capture_default_str();
  ad->add_option("--scenarios", advise.scenarios, "JSON list of {name, n, rq, k} records");
  ad->add_option("--format", advise.format)->check(CLI::IsMember(formats))->capture_default_str();

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Monte Carlo check of the random baseline");
  s->add_option("--n", sim.n, "Corpus size N")->required();
  s->add_option("--rq", sim.rq, "Relevant count R")->required();
  s->add_option("--k", sim.k, "Depth K")->required();
  s->add_option("--m", sim.m, "Minimum relevant hits")->capture_default_str();
  s->add_option("--trials", sim.trials)->capture_default_str();
  s->add_option("--seed", sim.seed)->capture_default_str();
  s->add_option("--threads", sim.threads, "Worker threads, 0 for all cores")->capture_default_str();
  s->add_option("--format", sim.format)->check(CLI::IsMember(formats))->capture_default_str();

  BoundaryArgs boundary;
  auto* bd = app.add_subcommand("boundary", "Ceiling and zone across depths (plot-ready CSV)");
  bd->add_option("--n", boundary.n, "Corpus size N")->required();
  bd->add_option("--rq", boundary.rq, "Mean relevant count per query")->required();
  bd->add_option("--k", boundary.k, "Depths; default is a log-spaced grid over [1, N]");
  bd->add_option("--points", boundary.points, "Grid size when --k is omitted")->capture_default_str();
  bd->add_option("--format", boundary.format)->check(CLI::IsMember(formats))->capture_default_str();

  IndexArgs index;
  auto* ix = app.add_subcommand("index", "Build a BM25 index from a corpus");
  ix->add_option("--corpus", index.corpus, "JSONL {id, text, label} or TSV id<TAB>label<TAB>text")->required();
  ix->add_option("--index", index.index, "Index output path")->required();
  ix->add_option("--stopwords", index.stopwords, "Whitespace-separated stopword file");
  ix->add_option("--format", index.format)->check(CLI::IsMember(formats))->capture_default_str();

  SearchArgs search;
  auto* se = app.add_subcommand("search", "BM25 search producing a run file");
  se->add_option("--index", search.index, "Index built by 'index'");
  se->add_option("--corpus", search.corpus, "Corpus (indexed on the fly when --index is absent)");
  se->add_option("--queries", search.queries, "TSV id<TAB>text or JSONL {id, text}; id alone uses that document");
  se->add_flag("--all-docs-as-queries", search.all_docs, "Use every corpus document as a query");
  se->add_option("--query-text", search.query_text, "Text of document queries")
      ->check(CLI::IsMember({"subject", "full"}))
      ->capture_default_str();
  se->add_option("--k", search.k, "Depth of each ranking")->capture_default_str();
  se->add_flag("--exclude-self", search.exclude_self, "Drop the query's own document from its ranking");
  se->add_flag("--class-relevance", search.class_relevance, "Also write qrels from corpus labels");
  se->add_option("--qrels-out", search.qrels_out, "Qrels path for --class-relevance (default: <out>.qrels)");
  se->add_option("--out", search.out, "Run output path")->required();
  se->add_option("--tag", search.tag, "System tag in the run file")->capture_default_str();
  se->add_option("--k1", search.k1)->capture_default_str();
  se->add_option("--b", search.b)->capture_default_str();
  se->add_option("--stopwords", search.stopwords, "Stopword file when indexing on the fly");
  se->add_option("--threads", search.threads, "Worker threads, 0 for all cores")->capture_default_str();
  se->add_option("--format", search.format)->check(CLI::IsMember(formats))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (c->parsed()) return run_ceiling(ceiling);
    if (e->parsed()) return run_eval(eval);
    if (ad->parsed()) return run_advise(advise);
    if (s->parsed()) return run_simulate(sim);
    if (bd->parsed()) return run_boundary(boundary);
    if (ix->parsed()) return run_index(index);
    if (se->parsed()) return run_search(search);
  } catch (const Failure& f) {
    std::cerr << "bor-eval: error: " << f.message << '\n';
    return f.exit_code;
  } catch (const std::exception& ex) {
    std::cerr << "bor-eval: error: " << ex.what() << '\n';
    return 1;
  }
  return 2;
}
