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

// HTTP endpoints over an immutable index snapshot:
//
//   GET  /search?q=...&limit=N
//   GET  /articles/{id}/recommendations?k=N
//   POST /articles            (one corpus record as JSON; staged only)
//   POST /admin/rebuild       (index corpus + staged records, swap snapshot)
//
// Every response body is an envelope {request_id, status, payload, error}.
// Handlers are plain member functions so they can be exercised without a
// socket; `mount` wires them into an httplib::Server.

#include <atomic>
#include <charconv>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "artrec/corpus.hpp"
#include "artrec/error.hpp"
#include "artrec/index.hpp"
#include "artrec/recommend.hpp"
#include "artrec/search.hpp"
#include "artrec/textproc.hpp"

namespace artrec {

struct ServiceConfig {
  AnalyzerConfig analyzer;
  WeightCoefficients coeffs = kStandardCoefficients[0];
  std::size_t default_limit = 10;
  std::size_t max_limit = 100;
  std::size_t default_k = kDefaultTopK;
  std::size_t max_k = 100;
};

/// Everything a read request needs. Never mutated after construction.
struct Snapshot {
  std::vector<Article> corpus;
  Index index;
  std::unique_ptr<Recommender> recommender;
  std::optional<BatchResult> batch;

  Snapshot(std::vector<Article> articles, Index idx, const WeightCoefficients& coeffs,
           std::optional<BatchResult> precomputed)
      : corpus(std::move(articles)), index(std::move(idx)), batch(std::move(precomputed)) {
    recommender = std::make_unique<Recommender>(index, coeffs);
  }
  Snapshot(const Snapshot&) = delete;
  Snapshot& operator=(const Snapshot&) = delete;
};

class Service {
 public:
  struct Response {
    int status = 200;
    nlohmann::ordered_json body;
  };

  explicit Service(ServiceConfig config) : config_(std::move(config)) { config_.coeffs.validate(); }

  /// Installs a snapshot built from `corpus`. A prebuilt index and batch
  /// results may be supplied; otherwise both are computed here.
  void load(std::vector<Article> corpus, std::optional<Index> index = std::nullopt,
            std::optional<BatchResult> batch = std::nullopt) {
    validate_corpus(corpus);
    Index idx = index ? std::move(*index) : build_index(corpus, config_.analyzer);
    if (!batch) batch = batch_recommend(idx, config_.coeffs, config_.default_k);
    install(std::make_shared<const Snapshot>(std::move(corpus), std::move(idx), config_.coeffs,
                                             std::move(batch)));
  }

  std::shared_ptr<const Snapshot> snapshot() const {
    std::lock_guard lock(snapshot_mutex_);
    return snapshot_;
  }

  std::size_t staged_count() const {
    std::lock_guard lock(stage_mutex_);
    return staged_.size();
  }

  Response search(std::string_view query, std::optional<std::string_view> limit_text,
                  std::string request_id = {}) const {
    request_id = ensure_id(std::move(request_id));
    const auto snap = snapshot();
    if (!snap) return error(request_id, 503, "no_index", "no index is loaded");
    std::size_t limit = config_.default_limit;
    if (limit_text) {
      const auto parsed = parse_positive(*limit_text);
      if (!parsed) return error(request_id, 400, "invalid_limit", "limit must be a positive integer");
      limit = std::min(*parsed, config_.max_limit);
    }
    try {
      const auto result = artrec::search(snap->index, query, config_.analyzer, limit);
      nlohmann::ordered_json payload;
      payload["query_terms"] = result.query_terms;
      auto hits = nlohmann::ordered_json::array();
      for (const auto& h : result.hits) hits.push_back({{"doc_id", h.doc_id}, {"score", h.score}});
      payload["results"] = std::move(hits);
      payload["warnings"] = result.warnings;
      return ok(request_id, 200, std::move(payload));
    } catch (const EmptyQueryError&) {
      return error(request_id, 400, "empty_query", "query has no terms after analysis");
    }
  }

  Response recommendations(std::string_view doc_id, std::optional<std::string_view> k_text,
                           std::string request_id = {}) const {
    request_id = ensure_id(std::move(request_id));
    const auto snap = snapshot();
    if (!snap) return error(request_id, 503, "no_index", "no index is loaded");
    std::size_t k = config_.default_k;
    if (k_text) {
      const auto parsed = parse_positive(*k_text);
      if (!parsed || *parsed > config_.max_k) {
        return error(request_id, 422, "invalid_k",
                     "k must be an integer in [1, " + std::to_string(config_.max_k) + "]");
      }
      k = *parsed;
    }
    if (!snap->index.contains(doc_id)) {
      return error(request_id, 404, "unknown_document", "no article with this id");
    }

    std::vector<ScoredDoc> ranked;
    std::string source = "on-demand";
    if (snap->batch && snap->batch->coefficients == config_.coeffs && snap->batch->k >= k) {
      const auto it = snap->batch->recommendations.find(std::string(doc_id));
      if (it != snap->batch->recommendations.end()) {
        const auto& all = it->second.ranked;
        ranked.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(std::min(k, all.size())));
        source = "precomputed";
      }
    }
    if (source == "on-demand") ranked = snap->recommender->recommend(doc_id, {k, true}).ranked;

    nlohmann::ordered_json payload;
    payload["doc_id"] = doc_id;
    payload["k"] = k;
    payload["source"] = source;
    auto list = nlohmann::ordered_json::array();
    for (const auto& s : ranked) list.push_back({{"doc_id", s.doc_id}, {"score", s.score}});
    payload["recommendations"] = std::move(list);
    return ok(request_id, 200, std::move(payload));
  }

  /// Stages one record for the next rebuild. The live snapshot is untouched.
  Response ingest(std::string_view record, std::string request_id = {}) {
    request_id = ensure_id(std::move(request_id));
    Article article;
    try {
      article = parse_article(record);
    } catch (const ParseError& e) {
      return error(request_id, 422, "invalid_record", e.detail(), e.field());
    } catch (const ValidationError& e) {
      return error(request_id, 422, "invalid_record", e.detail(), e.field());
    }
    std::lock_guard lock(stage_mutex_);
    const auto snap = snapshot();
    const bool live = snap && snap->index.contains(article.id);
    const bool staged = std::any_of(staged_.begin(), staged_.end(),
                                    [&](const Article& a) { return a.id == article.id; });
    if (live || staged) {
      return error(request_id, 409, "duplicate_id", "an article with this id already exists", "id");
    }
    staged_.push_back(std::move(article));
    nlohmann::ordered_json payload;
    payload["id"] = staged_.back().id;
    payload["staged"] = staged_.size();
    return ok(request_id, 202, std::move(payload));
  }

  /// Rebuilds the index from the live corpus plus staged records and swaps it
  /// in. Readers keep the previous snapshot until the swap.
  Response rebuild(std::string request_id = {}) {
    request_id = ensure_id(std::move(request_id));
    std::lock_guard rebuild_lock(rebuild_mutex_);
    std::vector<Article> corpus;
    if (const auto snap = snapshot()) corpus = snap->corpus;
    std::size_t taken = 0;
    {
      std::lock_guard lock(stage_mutex_);
      taken = staged_.size();
      corpus.insert(corpus.end(), staged_.begin(), staged_.end());
    }
    load(corpus);
    {
      std::lock_guard lock(stage_mutex_);
      staged_.erase(staged_.begin(), staged_.begin() + static_cast<std::ptrdiff_t>(taken));
    }
    const auto snap = snapshot();
    nlohmann::ordered_json payload;
    payload["doc_count"] = snap->index.doc_count();
    payload["ingested"] = taken;
    payload["analyzer_fingerprint"] = snap->index.analyzer_fingerprint();
    return ok(request_id, 200, std::move(payload));
  }

  void mount(httplib::Server& server) {
    auto reply = [](httplib::Response& res, const Response& r) {
      res.status = r.status;
      res.set_content(r.body.dump(), "application/json");
    };
    auto id_of = [](const httplib::Request& req) { return req.get_header_value("X-Request-Id"); };
    auto param = [](const httplib::Request& req, const char* name) -> std::optional<std::string> {
      if (!req.has_param(name)) return std::nullopt;
      return req.get_param_value(name);
    };

    server.Get("/search", [=, this](const httplib::Request& req, httplib::Response& res) {
      const auto limit = param(req, "limit");
      reply(res, search(req.get_param_value("q"),
                        limit ? std::optional<std::string_view>(*limit) : std::nullopt, id_of(req)));
    });
    server.Get(R"(/articles/([^/]+)/recommendations)",
               [=, this](const httplib::Request& req, httplib::Response& res) {
                 const auto k = param(req, "k");
                 reply(res, recommendations(req.matches[1].str(),
                                            k ? std::optional<std::string_view>(*k) : std::nullopt,
                                            id_of(req)));
               });
    server.Post("/articles", [=, this](const httplib::Request& req, httplib::Response& res) {
      reply(res, ingest(req.body, id_of(req)));
    });
    server.Post("/admin/rebuild", [=, this](const httplib::Request& req, httplib::Response& res) {
      reply(res, rebuild(id_of(req)));
    });
  }

 private:
  void install(std::shared_ptr<const Snapshot> next) {
    std::lock_guard lock(snapshot_mutex_);
    snapshot_ = std::move(next);
  }

  std::string ensure_id(std::string id) const {
    if (!id.empty()) return id;
    return "req-" + std::to_string(next_request_.fetch_add(1) + 1);
  }

  static std::optional<std::size_t> parse_positive(std::string_view text) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || v == 0) return std::nullopt;
    return v;
  }

  static Response ok(const std::string& id, int status, nlohmann::ordered_json payload) {
    nlohmann::ordered_json body;
    body["request_id"] = id;
    body["status"] = status;
    body["payload"] = std::move(payload);
    body["error"] = nullptr;
    return {status, std::move(body)};
  }

  static Response error(const std::string& id, int status, std::string code, std::string message,
                        std::string field = {}) {
    nlohmann::ordered_json err;
    err["code"] = std::move(code);
    err["message"] = std::move(message);
    if (!field.empty()) err["field"] = std::move(field);
    nlohmann::ordered_json body;
    body["request_id"] = id;
    body["status"] = status;
    body["payload"] = nullptr;
    body["error"] = std::move(err);
    return {status, std::move(body)};
  }

  ServiceConfig config_;
  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const Snapshot> snapshot_;
  mutable std::mutex stage_mutex_;
  std::vector<Article> staged_;
  std::mutex rebuild_mutex_;
  mutable std::atomic<std::uint64_t> next_request_{0};
};

}  // namespace artrec
