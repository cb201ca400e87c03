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

// Precision / recall / F1 with a pooled recall denominator, and the
// experiment sweep over coefficient settings x stemming modes.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "artrec/corpus.hpp"
#include "artrec/error.hpp"
#include "artrec/index.hpp"
#include "artrec/recommend.hpp"
#include "artrec/textproc.hpp"

namespace artrec {

/// relevant_retrieved / retrieved; 0 when nothing was retrieved.
inline double precision(std::size_t relevant_retrieved, std::size_t retrieved) {
  if (relevant_retrieved > retrieved) {
    throw EvaluationError("relevant_retrieved (" + std::to_string(relevant_retrieved) +
                          ") exceeds retrieved (" + std::to_string(retrieved) + ")");
  }
  return retrieved == 0 ? 0.0
                        : static_cast<double>(relevant_retrieved) / static_cast<double>(retrieved);
}

/// relevant_retrieved / total_relevant; 0 when there is nothing relevant.
inline double recall(std::size_t relevant_retrieved, std::size_t total_relevant) {
  if (relevant_retrieved > total_relevant) {
    throw EvaluationError("relevant_retrieved (" + std::to_string(relevant_retrieved) +
                          ") exceeds total_relevant (" + std::to_string(total_relevant) + ")");
  }
  return total_relevant == 0
             ? 0.0
             : static_cast<double>(relevant_retrieved) / static_cast<double>(total_relevant);
}

/// Harmonic mean of precision and recall; 0 when both are 0.
inline double f1(double p, double r) { return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

struct Judgment {
  std::string query_doc_id;
  std::string candidate_doc_id;
  bool related = false;
  std::string run_id;

  bool operator==(const Judgment&) const = default;
};

// Judgments file: tab-separated `query<TAB>candidate<TAB>label<TAB>run_id`,
// label is `related` or `not-related`. Blank lines and '#' comments skipped.
inline std::vector<Judgment> parse_judgments(std::istream& in) {
  std::vector<Judgment> out;
  std::set<std::tuple<std::string, std::string, std::string>> keys;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string col; std::getline(ss, col, '\t');) cols.push_back(col);
    const auto where = "judgments line " + std::to_string(line_no);
    if (cols.size() != 4) throw ConfigError(where + ": expected 4 tab-separated columns");
    Judgment j{cols[0], cols[1], false, cols[3]};
    if (cols[2] == "related") {
      j.related = true;
    } else if (cols[2] != "not-related") {
      throw ConfigError(where + ": label must be 'related' or 'not-related'");
    }
    if (!keys.emplace(j.query_doc_id, j.candidate_doc_id, j.run_id).second) {
      throw ConfigError(where + ": duplicate (query, candidate, run)");
    }
    out.push_back(std::move(j));
  }
  return out;
}

inline std::vector<Judgment> load_judgments(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open judgments file " + path);
  return parse_judgments(in);
}

inline void write_judgments(std::ostream& out, std::span<const Judgment> judgments) {
  for (const auto& j : judgments) {
    out << j.query_doc_id << '\t' << j.candidate_doc_id << '\t'
        << (j.related ? "related" : "not-related") << '\t' << j.run_id << '\n';
  }
}

/// Run-independent relevance labels keyed by (query, candidate).
class RelevanceLabels {
 public:
  explicit RelevanceLabels(std::span<const Judgment> judgments) {
    for (const auto& j : judgments) {
      const auto [it, inserted] = labels_.emplace(std::pair{j.query_doc_id, j.candidate_doc_id}, j.related);
      if (!inserted && it->second != j.related) {
        throw EvaluationError("conflicting labels for query '" + j.query_doc_id + "', candidate '" +
                              j.candidate_doc_id + "'");
      }
    }
  }

  std::optional<bool> lookup(const std::string& query, const std::string& candidate) const {
    const auto it = labels_.find({query, candidate});
    if (it == labels_.end()) return std::nullopt;
    return it->second;
  }

  /// Distinct related candidates per query, across every run.
  std::map<std::string, std::size_t> pooled() const {
    std::map<std::string, std::size_t> pool;
    for (const auto& [key, related] : labels_) {
      auto& n = pool[key.first];
      if (related) ++n;
    }
    return pool;
  }

 private:
  std::map<std::pair<std::string, std::string>, bool> labels_;
};

inline std::map<std::string, std::size_t> pool_relevant(std::span<const Judgment> judgments) {
  return RelevanceLabels(judgments).pooled();
}

struct ExperimentConfig {
  WeightCoefficients coeffs;
  StemMode stem_mode = StemMode::SingleRun;
  std::size_t k = kDefaultTopK;
  std::vector<std::string> query_set;

  /// Identifies the run in judgment files, e.g. "single:0.4,0.3,0.2,0.1".
  std::string run_id() const { return std::string(to_string(stem_mode)) + ":" + coeffs.label(); }
};

struct QueryOutcome {
  std::string query_doc_id;
  std::vector<std::string> retrieved;
  std::size_t relevant_retrieved = 0;
  std::size_t unjudged = 0;
  std::size_t pooled_relevant = 0;
};

struct Scores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct CellResult {
  ExperimentConfig config;
  std::vector<QueryOutcome> queries;
  std::size_t retrieved = 0;
  std::size_t relevant_retrieved = 0;
  std::size_t unjudged = 0;
  std::size_t pooled_relevant = 0;
  Scores micro;  // pooled over all (query, candidate) pairs
  Scores macro;  // per-query P and R averaged, F1 of the averages
  bool complete = true;
};

struct EvalReport {
  std::vector<CellResult> cells;
  std::map<std::string, std::size_t> pooled_relevant;
  std::optional<std::uint64_t> seed;

  std::string render_grid() const;
  nlohmann::ordered_json to_json() const;
};

/// Picks `n` distinct ids (or all, if fewer) with a seeded partial
/// Fisher-Yates shuffle over the sorted ids, returned sorted. Uses raw
/// mt19937_64 output so the choice is identical on every platform.
inline std::vector<std::string> sample_queries(std::vector<std::string> ids, std::size_t n,
                                               std::uint64_t seed) {
  std::sort(ids.begin(), ids.end());
  std::mt19937_64 rng(seed);
  n = std::min(n, ids.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = i + static_cast<std::size_t>(rng() % (ids.size() - i));
    std::swap(ids[i], ids[j]);
  }
  ids.resize(n);
  std::sort(ids.begin(), ids.end());
  return ids;
}

/// For every config: index the corpus with its stemming mode, recommend for
/// each query, and score the lists against the judgments. Recall uses the
/// pooled per-query count of distinct related documents over all judgments.
/// Unjudged recommendations count as retrieved but not relevant, and mark the
/// cell incomplete.
inline EvalReport run_experiments(std::span<const Article> corpus,
                                  std::span<const ExperimentConfig> configs,
                                  std::span<const Judgment> judgments, const AnalyzerConfig& base) {
  const RelevanceLabels labels(judgments);
  EvalReport report;
  report.pooled_relevant = labels.pooled();

  std::set<std::string> run_ids;
  for (const auto& cfg : configs) {
    cfg.coeffs.validate();
    if (!run_ids.insert(cfg.run_id()).second) {
      throw EvaluationError("duplicate experiment " + cfg.run_id());
    }
  }

  std::map<StemMode, Index> indexes;
  for (const auto& cfg : configs) {
    if (!indexes.contains(cfg.stem_mode)) {
      indexes.emplace(cfg.stem_mode, build_index(corpus, base.with_stem_mode(cfg.stem_mode)));
    }
  }

  for (const auto& cfg : configs) {
    const Index& index = indexes.at(cfg.stem_mode);
    const Recommender rec(index, cfg.coeffs);
    CellResult cell;
    cell.config = cfg;
    double p_sum = 0.0;
    double r_sum = 0.0;
    for (const auto& q : cfg.query_set) {
      if (!index.contains(q)) throw EvaluationError("query '" + q + "' is not in the corpus");
      QueryOutcome out;
      out.query_doc_id = q;
      const auto pool = report.pooled_relevant.find(q);
      out.pooled_relevant = pool == report.pooled_relevant.end() ? 0 : pool->second;
      for (const auto& hit : rec.recommend(q, {cfg.k, true}).ranked) {
        out.retrieved.push_back(hit.doc_id);
        const auto label = labels.lookup(q, hit.doc_id);
        if (!label) {
          ++out.unjudged;
        } else if (*label) {
          ++out.relevant_retrieved;
        }
      }
      cell.retrieved += out.retrieved.size();
      cell.relevant_retrieved += out.relevant_retrieved;
      cell.unjudged += out.unjudged;
      cell.pooled_relevant += out.pooled_relevant;
      p_sum += precision(out.relevant_retrieved, out.retrieved.size());
      r_sum += recall(out.relevant_retrieved, out.pooled_relevant);
      cell.queries.push_back(std::move(out));
    }
    cell.micro.precision = precision(cell.relevant_retrieved, cell.retrieved);
    cell.micro.recall = recall(cell.relevant_retrieved, cell.pooled_relevant);
    cell.micro.f1 = f1(cell.micro.precision, cell.micro.recall);
    if (!cell.queries.empty()) {
      const auto n = static_cast<double>(cell.queries.size());
      cell.macro.precision = p_sum / n;
      cell.macro.recall = r_sum / n;
      cell.macro.f1 = f1(cell.macro.precision, cell.macro.recall);
    }
    cell.complete = cell.unjudged == 0;
    report.cells.push_back(std::move(cell));
  }
  return report;
}

namespace detail {

inline std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string row_label(StemMode mode) {
  return mode == StemMode::SingleRun ? "Single run stemming" : "Multiple run stemming";
}

inline std::string column_label(const WeightCoefficients& c) {
  using W = WeightCoefficients;
  return "kappa=" + W::format(c.kappa) + " tau=" + W::format(c.tau) + " alpha=" + W::format(c.alpha) +
         " beta=" + W::format(c.beta);
}

inline std::string pad(const std::string& s, std::size_t width) {
  const auto len = unicode::length(s);
  return len >= width ? s : s + std::string(width - len, ' ');
}

}  // namespace detail

/// Stemming modes as rows, coefficient settings as columns, both in order of
/// first appearance. Values are micro-averaged and rounded to 2 decimals.
inline std::string EvalReport::render_grid() const {
  std::vector<StemMode> rows;
  std::vector<WeightCoefficients> cols;
  for (const auto& c : cells) {
    if (std::find(rows.begin(), rows.end(), c.config.stem_mode) == rows.end()) {
      rows.push_back(c.config.stem_mode);
    }
    if (std::find(cols.begin(), cols.end(), c.config.coeffs) == cols.end()) {
      cols.push_back(c.config.coeffs);
    }
  }

  std::vector<std::vector<std::string>> table;
  table.push_back({"Stemming"});
  for (const auto& c : cols) table[0].push_back(detail::column_label(c));
  for (auto mode : rows) {
    std::vector<std::string> line{detail::row_label(mode)};
    for (const auto& coeffs : cols) {
      const auto it = std::find_if(cells.begin(), cells.end(), [&](const CellResult& c) {
        return c.config.stem_mode == mode && c.config.coeffs == coeffs;
      });
      if (it == cells.end()) {
        line.push_back("-");
      } else {
        std::string text = "P = " + detail::fixed2(it->micro.precision) + " R = " +
                           detail::fixed2(it->micro.recall) + " F1 = " + detail::fixed2(it->micro.f1);
        if (!it->complete) text += " (incomplete: " + std::to_string(it->unjudged) + " unjudged)";
        line.push_back(std::move(text));
      }
    }
    table.push_back(std::move(line));
  }

  std::vector<std::size_t> widths(table[0].size(), 0);
  for (const auto& line : table) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      widths[i] = std::max(widths[i], unicode::length(line[i]));
    }
  }
  std::string out;
  for (std::size_t r = 0; r < table.size(); ++r) {
    std::string text;
    for (std::size_t i = 0; i < table[r].size(); ++i) {
      if (i != 0) text += " | ";
      text += detail::pad(table[r][i], widths[i]);
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out += text + '\n';
    if (r == 0) {
      std::string rule;
      for (std::size_t i = 0; i < widths.size(); ++i) {
        if (i != 0) rule += "-+-";
        rule += std::string(widths[i], '-');
      }
      out += rule + '\n';
    }
  }
  return out;
}

inline nlohmann::ordered_json EvalReport::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = "artrec-eval-report";
  j["version"] = 1;
  j["seed"] = seed ? nlohmann::ordered_json(*seed) : nlohmann::ordered_json(nullptr);
  j["pooled_relevant"] = nlohmann::ordered_json::object();
  for (const auto& [q, n] : pooled_relevant) j["pooled_relevant"][q] = n;
  auto scores = [](const Scores& s) {
    return nlohmann::ordered_json{{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}};
  };
  j["cells"] = nlohmann::ordered_json::array();
  for (const auto& c : cells) {
    nlohmann::ordered_json cell;
    cell["run_id"] = c.config.run_id();
    cell["stem_mode"] = to_string(c.config.stem_mode);
    cell["coefficients"] = {{"kappa", c.config.coeffs.kappa},
                            {"tau", c.config.coeffs.tau},
                            {"alpha", c.config.coeffs.alpha},
                            {"beta", c.config.coeffs.beta}};
    cell["top_k"] = c.config.k;
    cell["retrieved"] = c.retrieved;
    cell["relevant_retrieved"] = c.relevant_retrieved;
    cell["unjudged"] = c.unjudged;
    cell["pooled_relevant"] = c.pooled_relevant;
    cell["complete"] = c.complete;
    cell["micro"] = scores(c.micro);
    cell["macro"] = scores(c.macro);
    auto queries = nlohmann::ordered_json::array();
    for (const auto& q : c.queries) {
      queries.push_back({{"query", q.query_doc_id},
                         {"retrieved", q.retrieved},
                         {"relevant_retrieved", q.relevant_retrieved},
                         {"unjudged", q.unjudged},
                         {"pooled_relevant", q.pooled_relevant}});
    }
    cell["queries"] = std::move(queries);
    j["cells"].push_back(std::move(cell));
  }
  return j;
}

/// A sweep: the cross product of stemming modes (rows) and coefficient
/// settings (columns), sharing one query set.
struct SweepSpec {
  std::vector<StemMode> stem_modes;
  std::vector<WeightCoefficients> coefficients;
  std::size_t k = kDefaultTopK;
  std::optional<std::vector<std::string>> queries;  // explicit query ids
  std::size_t query_count = 10;                     // used when `queries` is unset
  std::uint64_t seed = 42;
};

/// Decodes the sweep file (docs/formats.md). Errors name the offending field.
inline SweepSpec parse_sweep_spec(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("sweep config must be a JSON object");
  SweepSpec spec;
  auto field_error = [](const std::string& field, const std::string& what) {
    return ConfigError("sweep config field '" + field + "': " + what);
  };
  try {
    if (j.contains("stem_modes")) {
      for (const auto& m : j.at("stem_modes")) {
        if (!m.is_string()) throw field_error("stem_modes", "expected strings");
        try {
          spec.stem_modes.push_back(parse_stem_mode(m.get<std::string>()));
        } catch (const ConfigError& e) {
          throw field_error("stem_modes", e.what());
        }
      }
    } else {
      spec.stem_modes = {StemMode::SingleRun, StemMode::Fixpoint};
    }
    if (!j.contains("coefficients")) throw field_error("coefficients", "missing");
    for (const auto& c : j.at("coefficients")) {
      WeightCoefficients w;
      if (c.is_array() && c.size() == 4) {
        w = {c[0].get<double>(), c[1].get<double>(), c[2].get<double>(), c[3].get<double>()};
      } else if (c.is_object()) {
        w = {c.at("kappa").get<double>(), c.at("tau").get<double>(), c.at("alpha").get<double>(),
             c.at("beta").get<double>()};
      } else {
        throw field_error("coefficients", "expected [kappa, tau, alpha, beta] or an object");
      }
      try {
        w.validate();
      } catch (const ConstraintError& e) {
        throw field_error("coefficients", e.what());
      }
      spec.coefficients.push_back(w);
    }
    if (j.contains("top_k")) {
      const auto k = j.at("top_k").get<long long>();
      if (k < 1) throw field_error("top_k", "must be at least 1");
      spec.k = static_cast<std::size_t>(k);
    }
    if (j.contains("queries")) spec.queries = j.at("queries").get<std::vector<std::string>>();
    if (j.contains("query_count")) spec.query_count = j.at("query_count").get<std::size_t>();
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed sweep config: ") + e.what());
  }
  return spec;
}

/// Expands a sweep into experiment configs, sampling queries if needed.
inline std::vector<ExperimentConfig> expand_sweep(const SweepSpec& spec,
                                                  std::span<const Article> corpus) {
  std::vector<std::string> queries;
  if (spec.queries) {
    queries = *spec.queries;
  } else {
    std::vector<std::string> ids;
    for (const auto& a : corpus) ids.push_back(a.id);
    queries = sample_queries(std::move(ids), spec.query_count, spec.seed);
  }
  std::vector<ExperimentConfig> configs;
  for (auto mode : spec.stem_modes) {
    for (const auto& c : spec.coefficients) configs.push_back({c, mode, spec.k, queries});
  }
  return configs;
}

}  // namespace artrec
