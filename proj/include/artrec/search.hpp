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

// Keyword search ranked by raw term frequency.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "artrec/error.hpp"
#include "artrec/index.hpp"
#include "artrec/textproc.hpp"

namespace artrec {

struct SearchHit {
  std::string doc_id;
  std::uint64_t score = 0;

  bool operator==(const SearchHit&) const = default;
};

struct SearchResult {
  std::vector<SearchHit> hits;
  std::vector<std::string> query_terms;  // distinct, sorted
  std::vector<std::string> warnings;
};

/// OR-match over the distinct analyzed query terms. A document's score is the
/// summed raw count of those terms over keywords, title, abstract and body.
/// Ties break by ascending document id. `limit` of 0 means unlimited.
inline SearchResult search(const Index& index, std::string_view query,
                           const AnalyzerConfig& config, std::size_t limit = 0) {
  SearchResult result;
  if (config.fingerprint() != index.analyzer_fingerprint()) {
    result.warnings.push_back("analyzer fingerprint " + config.fingerprint() +
                              " does not match the index (" + index.analyzer_fingerprint() + ")");
  }
  const auto analyzed = analyze(query, config);
  const std::set<std::string> terms(analyzed.begin(), analyzed.end());
  if (terms.empty()) throw EmptyQueryError("query has no terms after analysis");
  result.query_terms.assign(terms.begin(), terms.end());

  std::map<std::string, std::uint64_t, std::less<>> scores;
  for (const auto& term : terms) {
    for (const auto field : kWeightedFields) {
      if (const auto* postings = index.postings(field, term)) {
        for (const auto& [doc, count] : *postings) scores[doc] += count;
      }
    }
  }
  for (auto& [doc, score] : scores) result.hits.push_back({doc, score});
  std::stable_sort(result.hits.begin(), result.hits.end(),
                   [](const SearchHit& a, const SearchHit& b) { return a.score > b.score; });
  if (limit != 0 && result.hits.size() > limit) result.hits.resize(limit);
  return result;
}

}  // namespace artrec
