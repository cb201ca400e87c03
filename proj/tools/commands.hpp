// Copyright 2026-present the artrec project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Implementation of the `artrec` command line. Kept in a header so the test
// suite can drive commands in-process.

#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "artrec/artrec.hpp"
#include "artrec/service.hpp"

namespace artrec::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 1, kDataError = 2 };

struct Options {
  std::string corpus;
  std::string index;
  std::string rules;
  std::string stopwords;
  std::string stem_mode = "single";
  double kappa = kStandardCoefficients[0].kappa;
  double tau = kStandardCoefficients[0].tau;
  double alpha = kStandardCoefficients[0].alpha;
  double beta = kStandardCoefficients[0].beta;
  std::size_t top_k = kDefaultTopK;
  std::uint64_t seed = 42;
  std::string out;
  int verbosity = 0;

  // command-specific
  std::string query;
  std::string doc;
  std::string judgments;
  std::string configs;
  std::vector<std::string> queries;
  std::size_t query_count = 10;
  std::string batch;
  std::string host = "127.0.0.1";
  int port = 8080;
  unsigned threads = 1;
};

namespace detail {

inline AnalyzerConfig analyzer_from(const Options& o) {
  const auto mode = parse_stem_mode(o.stem_mode);
  const auto stopwords = o.stopwords.empty() ? default_stopwords() : load_stopwords(o.stopwords);
  const auto rules = o.rules.empty() ? default_stem_rules() : load_stem_rules(o.rules);
  return AnalyzerConfig(stopwords, rules, mode);
}

inline WeightCoefficients coefficients_from(const Options& o) {
  WeightCoefficients c{o.kappa, o.tau, o.alpha, o.beta};
  c.validate();
  return c;
}

/// Writes to `path`, or to `fallback` when no path was given.
inline void emit(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open " + path + " for writing");
  f << text;
}

inline std::string require(const std::string& value, const char* flag) {
  if (value.empty()) throw ConfigError(std::string("missing required flag ") + flag);
  return value;
}

inline int cmd_ingest(const Options& o, std::ostream& out) {
  const auto corpus = load_corpus(require(o.corpus, "--corpus"));
  const auto report = validate_corpus(corpus);
  nlohmann::ordered_json j;
  j["article_count"] = report.stats.article_count;
  j["per_category_counts"] = report.stats.per_category_counts;
  auto warnings = nlohmann::ordered_json::array();
  for (const auto& w : report.warnings) {
    warnings.push_back({{"article_id", w.article_id}, {"kind", to_string(w.kind)}, {"message", w.message}});
  }
  j["warnings"] = std::move(warnings);
  emit(o.out, j.dump(2) + "\n", out);
  return kSuccess;
}

inline int cmd_index(const Options& o, std::ostream& out) {
  const auto analyzer = analyzer_from(o);
  const auto corpus = load_corpus(require(o.corpus, "--corpus"));
  validate_corpus(corpus);
  const auto index = build_index(corpus, analyzer);
  const auto path = o.index.empty() ? o.out : o.index;
  std::ostringstream s;
  save_index(index, s);
  emit(path, s.str(), out);
  if (!path.empty()) {
    out << "indexed " << index.doc_count() << " documents, " << index.terms().size()
        << " terms -> " << path << "\n";
  }
  return kSuccess;
}

inline int cmd_search(const Options& o, std::ostream& out, std::ostream& err) {
  const auto analyzer = analyzer_from(o);
  const auto index = load_index(require(o.index, "--index"));
  SearchResult result;
  try {
    result = search(index, o.query, analyzer, o.top_k);
  } catch (const EmptyQueryError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  for (const auto& w : result.warnings) err << "warning: " << w << "\n";
  nlohmann::ordered_json j;
  j["query_terms"] = result.query_terms;
  auto hits = nlohmann::ordered_json::array();
  for (const auto& h : result.hits) hits.push_back({{"doc_id", h.doc_id}, {"score", h.score}});
  j["results"] = std::move(hits);
  emit(o.out, j.dump(2) + "\n", out);
  return kSuccess;
}

inline int cmd_recommend(const Options& o, const WeightCoefficients& coeffs, std::ostream& out) {
  const auto index = load_index(require(o.index, "--index"));
  const auto rec = recommend(index, require(o.doc, "--doc"), coeffs, o.top_k);
  nlohmann::ordered_json j;
  j["doc_id"] = rec.query_doc_id;
  j["k"] = rec.k_requested;
  auto list = nlohmann::ordered_json::array();
  for (const auto& s : rec.ranked) list.push_back({{"doc_id", s.doc_id}, {"score", s.score}});
  j["recommendations"] = std::move(list);
  emit(o.out, j.dump(2) + "\n", out);
  return kSuccess;
}

inline int cmd_batch(const Options& o, const WeightCoefficients& coeffs, std::ostream& out) {
  const auto index = load_index(require(o.index, "--index"));
  const auto batch = batch_recommend(index, coeffs, o.top_k, o.threads);
  std::ostringstream s;
  save_batch(batch, s);
  emit(o.out, s.str(), out);
  return kSuccess;
}

inline void write_report(const EvalReport& report, const std::string& prefix, std::ostream& out) {
  const auto grid = report.render_grid();
  const auto json = report.to_json().dump(2) + "\n";
  if (prefix.empty()) {
    out << grid;
    return;
  }
  emit(prefix + ".txt", grid, out);
  emit(prefix + ".json", json, out);
  out << grid;
}

inline int cmd_evaluate(const Options& o, const WeightCoefficients& coeffs, std::ostream& out) {
  const auto base = analyzer_from(o);
  const auto corpus = load_corpus(require(o.corpus, "--corpus"));
  validate_corpus(corpus);
  const auto judgments = load_judgments(require(o.judgments, "--judgments"));
  ExperimentConfig cfg{coeffs, base.stem_mode(), o.top_k, o.queries};
  EvalReport report;
  if (cfg.query_set.empty()) {
    std::vector<std::string> ids;
    for (const auto& a : corpus) ids.push_back(a.id);
    cfg.query_set = sample_queries(std::move(ids), o.query_count, o.seed);
    const std::vector<ExperimentConfig> configs{cfg};
    report = run_experiments(corpus, configs, judgments, base);
    report.seed = o.seed;
  } else {
    const std::vector<ExperimentConfig> configs{cfg};
    report = run_experiments(corpus, configs, judgments, base);
  }
  write_report(report, o.out, out);
  return kSuccess;
}

inline int cmd_sweep(const Options& o, std::ostream& out) {
  const auto base = analyzer_from(o);
  nlohmann::json spec_json;
  {
    std::ifstream f(require(o.configs, "--configs"));
    if (!f) throw ConfigError("cannot open configs file " + o.configs);
    try {
      spec_json = nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("malformed sweep config: ") + e.what());
    }
  }
  const auto spec = parse_sweep_spec(spec_json);
  const auto corpus = load_corpus(require(o.corpus, "--corpus"));
  validate_corpus(corpus);
  const auto judgments = load_judgments(require(o.judgments, "--judgments"));
  const auto configs = expand_sweep(spec, corpus);
  auto report = run_experiments(corpus, configs, judgments, base);
  if (!spec.queries) report.seed = spec.seed;
  write_report(report, o.out, out);
  return kSuccess;
}

inline int cmd_serve(const Options& o, const WeightCoefficients& coeffs, std::ostream& out) {
  ServiceConfig config;
  config.analyzer = analyzer_from(o);
  config.coeffs = coeffs;
  config.default_k = o.top_k;
  Service service(config);
  std::optional<Index> index;
  if (!o.index.empty()) index = load_index(o.index);
  std::optional<BatchResult> batch;
  if (!o.batch.empty()) batch = load_batch(o.batch);
  service.load(load_corpus(require(o.corpus, "--corpus")), std::move(index), std::move(batch));

  httplib::Server server;
  service.mount(server);
  out << "listening on " << o.host << ":" << o.port << std::endl;
  if (!server.listen(o.host, o.port)) throw Error("cannot bind " + o.host + ":" + std::to_string(o.port));
  return kSuccess;
}

}  // namespace detail

/// Parses `args` (without the program name) and runs one subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"artrec: content-based search and recommendation for scientific articles", "artrec"};
  app.require_subcommand(1);
  Options o;

  auto add_analyzer = [&](CLI::App* c) {
    c->add_option("--rules", o.rules, "Stemmer rule file (default: built-in Albanian pack)");
    c->add_option("--stopwords", o.stopwords, "Stop-word file (default: built-in list)");
    c->add_option("--stem-mode", o.stem_mode, "single|fixpoint")
        ->check(CLI::IsMember({"single", "fixpoint"}));
  };
  auto add_coeffs = [&](CLI::App* c) {
    c->add_option("--kappa", o.kappa, "Keyword-list coefficient");
    c->add_option("--tau", o.tau, "Title coefficient");
    c->add_option("--alpha", o.alpha, "Abstract coefficient");
    c->add_option("--beta", o.beta, "Body coefficient");
  };
  auto add_common = [&](CLI::App* c) {
    c->add_option("--out", o.out, "Output path (default: stdout)");
    c->add_flag("-v,--verbose", o.verbosity, "More output");
  };

  auto* ingest = app.add_subcommand("ingest", "Validate a corpus file");
  ingest->add_option("--corpus", o.corpus)->required();
  add_common(ingest);

  auto* index = app.add_subcommand("index", "Build an index file from a corpus");
  index->add_option("--corpus", o.corpus)->required();
  index->add_option("--index", o.index, "Index output path");
  add_analyzer(index);
  add_common(index);

  auto* search_cmd = app.add_subcommand("search", "Keyword search over an index");
  search_cmd->add_option("--index", o.index)->required();
  search_cmd->add_option("--query,-q", o.query)->required();
  search_cmd->add_option("--top-k", o.top_k, "Maximum number of results");
  add_analyzer(search_cmd);
  add_common(search_cmd);

  auto* rec = app.add_subcommand("recommend", "Similar articles for one document");
  rec->add_option("--index", o.index)->required();
  rec->add_option("--doc", o.doc)->required();
  rec->add_option("--top-k", o.top_k)->check(CLI::PositiveNumber);
  add_coeffs(rec);
  add_common(rec);

  auto* batch = app.add_subcommand("batch", "Precompute recommendations for every document");
  batch->add_option("--index", o.index)->required();
  batch->add_option("--top-k", o.top_k)->check(CLI::PositiveNumber);
  batch->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  add_coeffs(batch);
  add_common(batch);

  auto* evaluate = app.add_subcommand("evaluate", "Score one configuration against judgments");
  evaluate->add_option("--corpus", o.corpus)->required();
  evaluate->add_option("--judgments", o.judgments)->required();
  evaluate->add_option("--queries", o.queries, "Query document ids (default: sample)")->delimiter(',');
  evaluate->add_option("--query-count", o.query_count, "Sampled query count");
  evaluate->add_option("--seed", o.seed, "Query sampling seed");
  evaluate->add_option("--top-k", o.top_k)->check(CLI::PositiveNumber);
  add_analyzer(evaluate);
  add_coeffs(evaluate);
  add_common(evaluate);

  auto* sweep = app.add_subcommand("sweep", "Run the stemming x coefficient experiment grid");
  sweep->add_option("--corpus", o.corpus)->required();
  sweep->add_option("--configs", o.configs)->required();
  sweep->add_option("--judgments", o.judgments)->required();
  sweep->add_option("--rules", o.rules);
  sweep->add_option("--stopwords", o.stopwords);
  sweep->add_option("--seed", o.seed, "Unused; the sweep file carries its seed");
  add_common(sweep);

  auto* serve = app.add_subcommand("serve", "Serve search and recommendations over HTTP");
  serve->add_option("--corpus", o.corpus)->required();
  serve->add_option("--index", o.index, "Prebuilt index (default: build from corpus)");
  serve->add_option("--batch", o.batch, "Precomputed recommendations");
  serve->add_option("--host", o.host);
  serve->add_option("--port", o.port);
  serve->add_option("--top-k", o.top_k)->check(CLI::PositiveNumber);
  add_analyzer(serve);
  add_coeffs(serve);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kSuccess;
    }
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    // Coefficients are checked before any file is touched.
    std::optional<WeightCoefficients> coeffs;
    for (auto* c : {rec, batch, evaluate, serve}) {
      if (c->parsed()) coeffs = detail::coefficients_from(o);
    }
    if (ingest->parsed()) return detail::cmd_ingest(o, out);
    if (index->parsed()) return detail::cmd_index(o, out);
    if (search_cmd->parsed()) return detail::cmd_search(o, out, err);
    if (rec->parsed()) return detail::cmd_recommend(o, *coeffs, out);
    if (batch->parsed()) return detail::cmd_batch(o, *coeffs, out);
    if (evaluate->parsed()) return detail::cmd_evaluate(o, *coeffs, out);
    if (sweep->parsed()) return detail::cmd_sweep(o, out);
    if (serve->parsed()) return detail::cmd_serve(o, *coeffs, out);
  } catch (const ConstraintError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kUsage;
}

}  // namespace artrec::cli
