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

// Field-weighted document vectors, cosine similarity and category-restricted
// top-k recommendation, online or as a batch job.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "artrec/error.hpp"
#include "artrec/index.hpp"

namespace artrec {

/// Importance of the keyword list, title, abstract and body. The four values
/// form an affine combination and must sum to 1.
struct WeightCoefficients {
  double kappa = 0.0;  // keywords
  double tau = 0.0;    // title
  double alpha = 0.0;  // abstract
  double beta = 0.0;   // body

  static constexpr double kSumTolerance = 1e-9;

  double sum() const { return kappa + tau + alpha + beta; }

  void validate() const {
    for (double c : {kappa, tau, alpha, beta}) {
      if (!(c >= 0.0 && c <= 1.0)) {
        throw ConstraintError("each coefficient must lie in [0, 1] (got " + format(c) + ")");
      }
    }
    if (std::abs(sum() - 1.0) > kSumTolerance) {
      throw ConstraintError("coefficients must satisfy kappa + tau + alpha + beta = 1 (got sum " +
                            format_sum(sum()) + ")");
    }
  }

  /// Shortest round-trip decimal, used in run labels and error messages.
  static std::string format(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  }

  static std::string format_sum(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
  }

  std::string label() const {
    return format(kappa) + "," + format(tau) + "," + format(alpha) + "," + format(beta);
  }

  bool operator==(const WeightCoefficients&) const = default;
};

/// The three reference settings: keywords and title
/// emphasised; title and abstract only; keywords and body only.
inline constexpr std::array<WeightCoefficients, 3> kStandardCoefficients = {{
    {0.4, 0.3, 0.2, 0.1},
    {0.0, 0.6, 0.4, 0.0},
    {0.4, 0.0, 0.0, 0.6},
}};

inline constexpr std::size_t kDefaultTopK = 10;

/// Sparse vector over the shared term axis. Entries are sorted by term and
/// carry strictly positive weights.
struct DocVector {
  std::string doc_id;
  std::vector<std::pair<std::string, double>> weights;
  double norm = 0.0;

  double weight(std::string_view term) const {
    const auto it = std::lower_bound(weights.begin(), weights.end(), term,
                                     [](const auto& e, std::string_view t) { return e.first < t; });
    return it != weights.end() && it->first == term ? it->second : 0.0;
  }
};

namespace detail {

inline double term_weight_unchecked(const Index& index, std::string_view doc, std::string_view term,
                                    const WeightCoefficients& c) {
  double w = 0.0;
  if (c.kappa != 0.0 && index.tf(doc, Field::keywords(), term) > 0) w += c.kappa;
  if (c.tau != 0.0) w += c.tau * tfidf(index, doc, Field::title(), term);
  if (c.alpha != 0.0) w += c.alpha * tfidf(index, doc, Field::abstract(), term);
  if (c.beta != 0.0) w += c.beta * tfidf(index, doc, Field::body(), term);
  return w;
}

}  // namespace detail

/// kappa * [term in keywords] + tau * tfidf(title) + alpha * tfidf(abstract)
/// + beta * tfidf(body).
inline double term_weight(const Index& index, std::string_view doc, std::string_view term,
                          const WeightCoefficients& coeffs) {
  coeffs.validate();
  if (!index.contains(doc)) throw NotFoundError("unknown document '" + std::string(doc) + "'");
  return detail::term_weight_unchecked(index, doc, term, coeffs);
}

inline DocVector doc_vector(const Index& index, std::string_view doc,
                            const WeightCoefficients& coeffs) {
  coeffs.validate();
  DocVector v;
  v.doc_id = std::string(doc);
  double sq = 0.0;
  for (const auto& term : index.doc_terms(doc)) {
    const double w = detail::term_weight_unchecked(index, doc, term, coeffs);
    if (w > 0.0) {
      v.weights.emplace_back(term, w);
      sq += w * w;
    }
  }
  v.norm = std::sqrt(sq);
  return v;
}

/// Cosine of the angle between two nonnegative vectors; 0 when either is
/// the zero vector.
inline double cosine(const DocVector& a, const DocVector& b) {
  if (a.norm == 0.0 || b.norm == 0.0) return 0.0;
  double dot = 0.0;
  auto i = a.weights.begin();
  auto j = b.weights.begin();
  while (i != a.weights.end() && j != b.weights.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      dot += i->second * j->second;
      ++i;
      ++j;
    }
  }
  return std::clamp(dot / (a.norm * b.norm), 0.0, 1.0);
}

struct ScoredDoc {
  std::string doc_id;
  double score = 0.0;

  bool operator==(const ScoredDoc&) const = default;
};

struct Recommendation {
  std::string query_doc_id;
  std::vector<ScoredDoc> ranked;
  std::size_t k_requested = kDefaultTopK;

  bool operator==(const Recommendation&) const = default;
};

struct RecommendOptions {
  std::size_t k = kDefaultTopK;
  bool same_category_only = true;
};

/// Holds every document vector of one index under one coefficient setting,
/// so repeated queries do not recompute weights.
class Recommender {
 public:
  Recommender(const Index& index, WeightCoefficients coeffs) : index_(&index), coeffs_(coeffs) {
    coeffs_.validate();
    vectors_.reserve(index.doc_count());
    for (const auto& [doc, category] : index.doc_categories()) {
      position_.emplace(doc, vectors_.size());
      vectors_.push_back(doc_vector(index, doc, coeffs_));
      by_category_[category].push_back(vectors_.size() - 1);
    }
  }

  const WeightCoefficients& coefficients() const noexcept { return coeffs_; }
  const Index& index() const noexcept { return *index_; }

  const DocVector& vector(std::string_view doc) const {
    const auto it = position_.find(doc);
    if (it == position_.end()) throw NotFoundError("unknown document '" + std::string(doc) + "'");
    return vectors_[it->second];
  }

  /// Top-k candidates by cosine, descending, ties by ascending id. The query
  /// itself and zero-similarity candidates are never returned.
  Recommendation recommend(std::string_view query, const RecommendOptions& opts = {}) const {
    if (opts.k < 1) throw ConstraintError("k must be at least 1");
    const auto it = position_.find(query);
    if (it == position_.end()) throw NotFoundError("unknown document '" + std::string(query) + "'");
    const DocVector& q = vectors_[it->second];

    std::vector<ScoredDoc> scored;
    auto consider = [&](std::size_t pos) {
      const DocVector& cand = vectors_[pos];
      if (cand.doc_id == q.doc_id) return;
      const double s = cosine(q, cand);
      if (s > 0.0) scored.push_back({cand.doc_id, s});
    };
    if (opts.same_category_only) {
      for (auto pos : by_category_.at(index_->category(query))) consider(pos);
    } else {
      for (std::size_t pos = 0; pos < vectors_.size(); ++pos) consider(pos);
    }

    auto better = [](const ScoredDoc& x, const ScoredDoc& y) {
      return x.score != y.score ? x.score > y.score : x.doc_id < y.doc_id;
    };
    const auto keep = std::min(opts.k, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep),
                      scored.end(), better);
    scored.resize(keep);
    return {std::string(query), std::move(scored), opts.k};
  }

 private:
  const Index* index_;
  WeightCoefficients coeffs_;
  std::vector<DocVector> vectors_;
  std::map<std::string, std::size_t, std::less<>> position_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_category_;
};

inline Recommendation recommend(const Index& index, std::string_view query,
                                const WeightCoefficients& coeffs, std::size_t k = kDefaultTopK) {
  coeffs.validate();
  if (k < 1) throw ConstraintError("k must be at least 1");
  if (!index.contains(query)) throw NotFoundError("unknown document '" + std::string(query) + "'");
  return Recommender(index, coeffs).recommend(query, {k, true});
}

/// Output of an offline batch run, with the settings that produced it.
struct BatchResult {
  WeightCoefficients coefficients;
  std::size_t k = kDefaultTopK;
  std::string analyzer_fingerprint;
  std::map<std::string, Recommendation> recommendations;
};

/// recommend() for every document. Queries are split across `threads`
/// workers (0 picks the hardware concurrency); the result does not depend on
/// the split.
inline BatchResult batch_recommend(const Index& index, const WeightCoefficients& coeffs,
                                   std::size_t k = kDefaultTopK, unsigned threads = 1) {
  coeffs.validate();
  if (k < 1) throw ConstraintError("k must be at least 1");
  const Recommender rec(index, coeffs);
  std::vector<std::string> docs;
  for (const auto& [doc, category] : index.doc_categories()) docs.push_back(doc);

  std::vector<Recommendation> out(docs.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(docs.size(), 1)));
  {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        for (std::size_t i = t; i < docs.size(); i += threads) out[i] = rec.recommend(docs[i], {k, true});
      });
    }
  }

  BatchResult result{coeffs, k, index.analyzer_fingerprint(), {}};
  for (std::size_t i = 0; i < docs.size(); ++i) result.recommendations.emplace(docs[i], std::move(out[i]));
  return result;
}

inline constexpr int kBatchFormatVersion = 1;
inline constexpr std::string_view kBatchFormatName = "artrec-recommendations";

/// Rounds to 4 decimal places, the precision used in persisted reports.
inline double round_score(double s) { return std::round(s * 1e4) / 1e4; }

// Header line, then one line per query document in id order.
inline void save_batch(const BatchResult& batch, std::ostream& out) {
  nlohmann::ordered_json header;
  header["format"] = kBatchFormatName;
  header["version"] = kBatchFormatVersion;
  header["analyzer_fingerprint"] = batch.analyzer_fingerprint;
  header["coefficients"] = {{"kappa", batch.coefficients.kappa},
                            {"tau", batch.coefficients.tau},
                            {"alpha", batch.coefficients.alpha},
                            {"beta", batch.coefficients.beta}};
  header["top_k"] = batch.k;
  header["doc_count"] = batch.recommendations.size();
  out << header.dump() << '\n';
  for (const auto& [doc, rec] : batch.recommendations) {
    nlohmann::ordered_json line;
    line["doc"] = doc;
    auto ranked = nlohmann::ordered_json::array();
    for (const auto& s : rec.ranked) ranked.push_back({s.doc_id, round_score(s.score)});
    line["ranked"] = std::move(ranked);
    out << line.dump() << '\n';
  }
  if (!out) throw Error("failed to write recommendations");
}

inline void save_batch(const BatchResult& batch, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path + " for writing");
  save_batch(batch, out);
}

inline BatchResult load_batch(std::istream& in) {
  std::string line;
  try {
    if (!std::getline(in, line)) throw FormatError("empty recommendations file");
    const auto header = nlohmann::json::parse(line);
    if (header.value("format", "") != kBatchFormatName) {
      throw FormatError("not an artrec recommendations file");
    }
    if (header.value("version", -1) != kBatchFormatVersion) {
      throw FormatError("unsupported recommendations format version");
    }
    BatchResult batch;
    const auto& c = header.at("coefficients");
    batch.coefficients = {c.at("kappa").get<double>(), c.at("tau").get<double>(),
                          c.at("alpha").get<double>(), c.at("beta").get<double>()};
    batch.k = header.at("top_k").get<std::size_t>();
    batch.analyzer_fingerprint = header.at("analyzer_fingerprint").get<std::string>();
    const auto n = header.at("doc_count").get<std::size_t>();
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::getline(in, line)) throw FormatError("truncated recommendations file");
      const auto rec = nlohmann::json::parse(line);
      Recommendation r;
      r.query_doc_id = rec.at("doc").get<std::string>();
      r.k_requested = batch.k;
      for (const auto& pair : rec.at("ranked")) {
        r.ranked.push_back({pair.at(0).get<std::string>(), pair.at(1).get<double>()});
      }
      batch.recommendations.emplace(r.query_doc_id, std::move(r));
    }
    return batch;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("corrupt recommendations file: ") + e.what());
  }
}

inline BatchResult load_batch(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open recommendations file " + path);
  return load_batch(in);
}

}  // namespace artrec
