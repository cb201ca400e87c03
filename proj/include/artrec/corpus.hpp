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

// Article data model and the line-delimited JSON corpus format (one record
// per line). See docs/formats.md for the exact serialization.

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "artrec/error.hpp"
#include "artrec/unicode.hpp"

namespace artrec {

struct Section {
  std::string heading;
  std::string text;

  bool operator==(const Section&) const = default;
};

struct Article {
  std::string id;
  std::string title;
  std::vector<std::string> authors;  // metadata only
  std::string abstract;
  std::vector<std::string> keywords;
  std::string body;
  std::vector<Section> sections;
  std::string category;
  std::string language = "sq";
  std::optional<std::string> source_path;

  bool operator==(const Article&) const = default;
};

/// No abstract and no body: the article contributes only title and keywords.
inline bool is_degenerate(const Article& a) { return a.abstract.empty() && a.body.empty(); }

namespace detail {

inline std::string read_string(const nlohmann::json& rec, const char* field, bool required) {
  const auto it = rec.find(field);
  if (it == rec.end() || it->is_null()) {
    if (required) throw ValidationError(field, "missing");
    return {};
  }
  if (!it->is_string()) throw ParseError(field, "expected a string");
  return unicode::normalize(it->get_ref<const std::string&>());
}

inline std::vector<std::string> read_string_array(const nlohmann::json& rec, const char* field) {
  const auto it = rec.find(field);
  if (it == rec.end() || it->is_null()) return {};
  if (!it->is_array()) throw ParseError(field, "expected an array of strings");
  std::vector<std::string> out;
  out.reserve(it->size());
  for (const auto& v : *it) {
    if (!v.is_string()) throw ParseError(field, "expected an array of strings");
    out.push_back(unicode::normalize(v.get_ref<const std::string&>()));
  }
  return out;
}

}  // namespace detail

inline Article article_from_json(const nlohmann::json& rec) {
  if (!rec.is_object()) throw ParseError("", "corpus record must be a JSON object");
  Article a;
  a.id = detail::read_string(rec, "id", true);
  if (a.id.empty()) throw ValidationError("id", "must be nonempty");
  a.title = detail::read_string(rec, "title", true);
  if (a.title.empty()) throw ValidationError("title", "must be nonempty");
  a.authors = detail::read_string_array(rec, "authors");
  a.abstract = detail::read_string(rec, "abstract", false);
  a.keywords = detail::read_string_array(rec, "keywords");
  a.body = detail::read_string(rec, "body", false);
  a.category = detail::read_string(rec, "category", true);
  if (a.category.empty()) throw ValidationError("category", "must be nonempty");

  if (const auto it = rec.find("sections"); it != rec.end() && !it->is_null()) {
    if (!it->is_array()) throw ParseError("sections", "expected an array of {heading, text}");
    for (const auto& s : *it) {
      if (!s.is_object()) throw ParseError("sections", "expected an array of {heading, text}");
      a.sections.push_back({detail::read_string(s, "heading", false),
                            detail::read_string(s, "text", false)});
    }
  }
  if (auto lang = detail::read_string(rec, "language", false); !lang.empty()) {
    a.language = std::move(lang);
  }
  if (const auto it = rec.find("source_path"); it != rec.end() && !it->is_null()) {
    a.source_path = detail::read_string(rec, "source_path", false);
  }
  return a;
}

/// Decodes one corpus line.
inline Article parse_article(std::string_view record) {
  nlohmann::json rec;
  try {
    rec = nlohmann::json::parse(record);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("", std::string("malformed record: ") + e.what());
  }
  return article_from_json(rec);
}

inline nlohmann::ordered_json article_to_json(const Article& a) {
  nlohmann::ordered_json rec;
  rec["id"] = a.id;
  rec["title"] = a.title;
  rec["authors"] = a.authors;
  rec["abstract"] = a.abstract;
  rec["keywords"] = a.keywords;
  rec["body"] = a.body;
  auto sections = nlohmann::ordered_json::array();
  for (const auto& s : a.sections) {
    nlohmann::ordered_json sj;
    sj["heading"] = s.heading;
    sj["text"] = s.text;
    sections.push_back(std::move(sj));
  }
  rec["sections"] = std::move(sections);
  rec["category"] = a.category;
  rec["language"] = a.language;
  if (a.source_path) {
    rec["source_path"] = *a.source_path;
  } else {
    rec["source_path"] = nullptr;
  }
  return rec;
}

/// One line, no trailing newline.
inline std::string serialize_article(const Article& a) { return article_to_json(a).dump(); }

/// Reads a whole corpus file. Blank lines are skipped; errors carry the
/// 1-based line number.
inline std::vector<Article> read_corpus(std::istream& in) {
  std::vector<Article> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      out.push_back(parse_article(line));
    } catch (const ParseError& e) {
      throw ParseError(e.field(), e.detail(), line_no);
    } catch (const ValidationError& e) {
      throw ValidationError(e.field(), e.detail(), line_no);
    }
  }
  return out;
}

inline std::vector<Article> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus file " + path);
  return read_corpus(in);
}

inline void write_corpus(std::ostream& out, std::span<const Article> articles) {
  for (const auto& a : articles) out << serialize_article(a) << '\n';
}

struct CorpusStats {
  std::size_t article_count = 0;
  std::map<std::string, std::size_t> per_category_counts;

  bool operator==(const CorpusStats&) const = default;
};

enum class WarningKind { EmptyAbstract, EmptyKeywords, EmptyBody, SectionNotInBody };

inline std::string_view to_string(WarningKind kind) {
  switch (kind) {
    case WarningKind::EmptyAbstract: return "empty-abstract";
    case WarningKind::EmptyKeywords: return "empty-keywords";
    case WarningKind::EmptyBody: return "empty-body";
    case WarningKind::SectionNotInBody: return "section-not-in-body";
  }
  return "unknown";
}

struct CorpusWarning {
  std::string article_id;
  WarningKind kind;
  std::string message;

  bool operator==(const CorpusWarning&) const = default;
  auto operator<=>(const CorpusWarning& o) const {
    return std::tie(article_id, kind, message) <=> std::tie(o.article_id, o.kind, o.message);
  }
};

struct ValidationReport {
  CorpusStats stats;
  std::vector<CorpusWarning> warnings;  // sorted by (article id, kind)
};

/// Aggregates stats and soft warnings. Duplicate ids are a hard error.
inline ValidationReport validate_corpus(std::span<const Article> articles) {
  ValidationReport report;
  std::unordered_map<std::string, std::size_t> first_seen;
  for (std::size_t i = 0; i < articles.size(); ++i) {
    const Article& a = articles[i];
    if (auto [it, inserted] = first_seen.emplace(a.id, i); !inserted) {
      throw DuplicateIdError(a.id, it->second, i);
    }
    ++report.stats.article_count;
    ++report.stats.per_category_counts[a.category];

    auto warn = [&](WarningKind kind, std::string msg) {
      report.warnings.push_back({a.id, kind, std::move(msg)});
    };
    if (a.abstract.empty()) warn(WarningKind::EmptyAbstract, "abstract is empty");
    if (a.keywords.empty()) warn(WarningKind::EmptyKeywords, "keyword list is empty");
    if (a.body.empty()) warn(WarningKind::EmptyBody, "body is empty");
    for (std::size_t s = 0; s < a.sections.size(); ++s) {
      if (a.body.find(a.sections[s].text) == std::string::npos) {
        warn(WarningKind::SectionNotInBody,
             "section " + std::to_string(s) + " text does not appear in body");
      }
    }
  }
  std::sort(report.warnings.begin(), report.warnings.end());
  return report;
}

}  // namespace artrec
