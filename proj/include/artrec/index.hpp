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

// Per-field raw term-frequency index with document frequencies, plus tf-idf
// weights and a versioned on-disk format (docs/formats.md).

#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "artrec/corpus.hpp"
#include "artrec/error.hpp"
#include "artrec/textproc.hpp"

namespace artrec {

enum class FieldKind : std::uint8_t { Keywords, Title, Abstract, Body, Section };

/// A document field. `section` is only meaningful for FieldKind::Section.
struct Field {
  FieldKind kind = FieldKind::Body;
  std::uint32_t section = 0;

  static constexpr Field keywords() { return {FieldKind::Keywords, 0}; }
  static constexpr Field title() { return {FieldKind::Title, 0}; }
  static constexpr Field abstract() { return {FieldKind::Abstract, 0}; }
  static constexpr Field body() { return {FieldKind::Body, 0}; }
  static constexpr Field section_at(std::uint32_t i) { return {FieldKind::Section, i}; }

  auto operator<=>(const Field&) const = default;

  std::string name() const {
    switch (kind) {
      case FieldKind::Keywords: return "keywords";
      case FieldKind::Title: return "title";
      case FieldKind::Abstract: return "abstract";
      case FieldKind::Body: return "body";
      case FieldKind::Section: return "section:" + std::to_string(section);
    }
    return "?";
  }

  static Field parse(std::string_view name) {
    if (name == "keywords") return keywords();
    if (name == "title") return title();
    if (name == "abstract") return abstract();
    if (name == "body") return body();
    if (name.starts_with("section:") && name.size() > 8) {
      std::uint32_t i = 0;
      for (char c : name.substr(8)) {
        if (c < '0' || c > '9') throw FormatError("bad field name '" + std::string(name) + "'");
        i = i * 10 + static_cast<std::uint32_t>(c - '0');
      }
      return section_at(i);
    }
    throw FormatError("bad field name '" + std::string(name) + "'");
  }
};

/// The four fields that take part in document weighting and search scoring.
inline constexpr std::array<Field, 4> kWeightedFields = {Field::keywords(), Field::title(),
                                                         Field::abstract(), Field::body()};

class Index {
 public:
  using DocPostings = std::map<std::string, std::uint32_t, std::less<>>;  // doc -> raw tf

  struct TermEntry {
    std::uint32_t doc_freq = 0;
    std::map<Field, DocPostings> fields;

    bool operator==(const TermEntry&) const = default;
  };

  using TermMap = std::map<std::string, TermEntry, std::less<>>;
  using CategoryMap = std::map<std::string, std::string, std::less<>>;

  Index() = default;

  /// Assembles an index from its parts and checks every structural
  /// invariant (df within [1, N] and equal to the number of documents with a
  /// posting, postings only for known docs, positive counts). Violations
  /// raise FormatError.
  static Index assemble(std::string fingerprint, CategoryMap categories, TermMap terms) {
    Index idx;
    idx.fingerprint_ = std::move(fingerprint);
    idx.categories_ = std::move(categories);
    idx.terms_ = std::move(terms);
    const auto n = idx.categories_.size();
    for (const auto& [term, entry] : idx.terms_) {
      std::set<std::string_view> docs;
      for (const auto& [field, postings] : entry.fields) {
        for (const auto& [doc, count] : postings) {
          if (count == 0) throw FormatError("zero count for term '" + term + "'");
          if (!idx.categories_.contains(doc)) {
            throw FormatError("posting for unknown document '" + doc + "'");
          }
          docs.insert(doc);
        }
      }
      if (entry.doc_freq < 1 || entry.doc_freq > n || entry.doc_freq != docs.size()) {
        throw FormatError("inconsistent document frequency for term '" + term + "'");
      }
    }
    idx.rebuild_forward();
    return idx;
  }

  std::size_t doc_count() const noexcept { return categories_.size(); }
  const std::string& analyzer_fingerprint() const noexcept { return fingerprint_; }
  const CategoryMap& doc_categories() const noexcept { return categories_; }
  const TermMap& terms() const noexcept { return terms_; }

  bool contains(std::string_view doc) const { return categories_.find(doc) != categories_.end(); }

  const std::string& category(std::string_view doc) const {
    const auto it = categories_.find(doc);
    if (it == categories_.end()) throw NotFoundError("unknown document '" + std::string(doc) + "'");
    return it->second;
  }

  std::vector<std::string> vocabulary() const {
    std::vector<std::string> out;
    out.reserve(terms_.size());
    for (const auto& [term, entry] : terms_) out.push_back(term);
    return out;
  }

  std::uint32_t doc_freq(std::string_view term) const {
    const auto it = terms_.find(term);
    return it == terms_.end() ? 0 : it->second.doc_freq;
  }

  std::uint32_t tf(std::string_view doc, Field field, std::string_view term) const {
    const auto* p = postings(field, term);
    if (p == nullptr) return 0;
    const auto it = p->find(doc);
    return it == p->end() ? 0 : it->second;
  }

  const DocPostings* postings(Field field, std::string_view term) const {
    const auto it = terms_.find(term);
    if (it == terms_.end()) return nullptr;
    const auto f = it->second.fields.find(field);
    return f == it->second.fields.end() ? nullptr : &f->second;
  }

  /// Sorted terms that occur in any field of `doc`.
  const std::vector<std::string>& doc_terms(std::string_view doc) const {
    const auto it = doc_terms_.find(doc);
    if (it == doc_terms_.end()) throw NotFoundError("unknown document '" + std::string(doc) + "'");
    return it->second;
  }

  bool operator==(const Index& o) const {
    return fingerprint_ == o.fingerprint_ && categories_ == o.categories_ && terms_ == o.terms_;
  }

 private:
  void rebuild_forward() {
    doc_terms_.clear();
    for (const auto& [doc, category] : categories_) doc_terms_[doc];
    for (const auto& [term, entry] : terms_) {
      std::set<std::string_view> docs;
      for (const auto& [field, postings] : entry.fields) {
        for (const auto& [doc, count] : postings) docs.insert(doc);
      }
      // Terms are visited in sorted order, so each list stays sorted.
      for (auto doc : docs) doc_terms_.find(doc)->second.push_back(term);
    }
  }

  std::string fingerprint_;
  CategoryMap categories_;
  TermMap terms_;
  std::map<std::string, std::vector<std::string>, std::less<>> doc_terms_;
};

/// Analyzes every field of every article and records raw per-field counts.
/// Keyword phrases are analyzed like any other text.
inline Index build_index(std::span<const Article> articles, const AnalyzerConfig& config) {
  Index::CategoryMap categories;
  Index::TermMap terms;
  for (std::size_t i = 0; i < articles.size(); ++i) {
    const Article& a = articles[i];
    if (!categories.emplace(a.id, a.category).second) {
      std::size_t first = 0;
      while (articles[first].id != a.id) ++first;
      throw DuplicateIdError(a.id, first, i);
    }
    std::set<std::string> seen;
    auto add = [&](Field field, std::string_view text) {
      for (auto& term : analyze(text, config)) {
        auto& entry = terms[term];
        ++entry.fields[field][a.id];
        if (seen.insert(std::move(term)).second) ++entry.doc_freq;
      }
    };
    std::string joined;
    for (const auto& kw : a.keywords) {
      joined += kw;
      joined += '\n';
    }
    add(Field::keywords(), joined);
    add(Field::title(), a.title);
    add(Field::abstract(), a.abstract);
    add(Field::body(), a.body);
    for (std::size_t s = 0; s < a.sections.size(); ++s) {
      add(Field::section_at(static_cast<std::uint32_t>(s)), a.sections[s].text);
    }
  }
  return Index::assemble(config.fingerprint(), std::move(categories), std::move(terms));
}

/// tf(doc, field, term) * log10(N / df(term)). Unknown terms weigh 0.
inline double tfidf(const Index& index, std::string_view doc, Field field, std::string_view term) {
  if (!index.contains(doc)) throw NotFoundError("unknown document '" + std::string(doc) + "'");
  const auto tf = index.tf(doc, field, term);
  if (tf == 0) return 0.0;
  const auto df = index.doc_freq(term);
  return static_cast<double>(tf) *
         std::log10(static_cast<double>(index.doc_count()) / static_cast<double>(df));
}

inline constexpr int kIndexFormatVersion = 1;
inline constexpr std::string_view kIndexFormatName = "artrec-index";

inline void save_index(const Index& index, std::ostream& out) {
  nlohmann::ordered_json header;
  header["format"] = kIndexFormatName;
  header["version"] = kIndexFormatVersion;
  header["analyzer_fingerprint"] = index.analyzer_fingerprint();
  header["doc_count"] = index.doc_count();
  header["term_count"] = index.terms().size();
  out << header.dump() << '\n';

  for (const auto& [doc, category] : index.doc_categories()) {
    nlohmann::ordered_json line;
    line["doc"] = doc;
    line["category"] = category;
    out << line.dump() << '\n';
  }
  for (const auto& [term, entry] : index.terms()) {
    nlohmann::ordered_json line;
    line["term"] = term;
    line["df"] = entry.doc_freq;
    nlohmann::ordered_json fields = nlohmann::ordered_json::object();
    for (const auto& [field, postings] : entry.fields) {
      auto list = nlohmann::ordered_json::array();
      for (const auto& [doc, count] : postings) list.push_back({doc, count});
      fields[field.name()] = std::move(list);
    }
    line["postings"] = std::move(fields);
    out << line.dump() << '\n';
  }
  if (!out) throw Error("failed to write index");
}

inline void save_index(const Index& index, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path + " for writing");
  save_index(index, out);
}

inline Index load_index(std::istream& in) {
  std::string line;
  nlohmann::json header;
  if (!std::getline(in, line)) throw FormatError("corrupt index header: empty file");
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception&) {
    throw FormatError("corrupt index header: not an artrec index file");
  }
  if (!header.is_object() || !header.contains("format") || header["format"] != kIndexFormatName) {
    throw FormatError("corrupt index header: not an artrec index file");
  }
  const auto& v = header["version"];
  const long long version = v.is_number_integer() ? v.get<long long>() : -1;
  if (version != kIndexFormatVersion) {
    throw FormatError("unsupported index format version " + std::to_string(version) +
                      " (expected " + std::to_string(kIndexFormatVersion) + ")");
  }

  try {
    const auto fingerprint = header.at("analyzer_fingerprint").get<std::string>();
    const auto doc_count = header.at("doc_count").get<std::size_t>();
    const auto term_count = header.at("term_count").get<std::size_t>();

    auto next = [&](const char* what) {
      if (!std::getline(in, line)) throw FormatError(std::string("truncated index: missing ") + what);
      return nlohmann::json::parse(line);
    };

    Index::CategoryMap categories;
    for (std::size_t i = 0; i < doc_count; ++i) {
      const auto rec = next("document record");
      categories.emplace(rec.at("doc").get<std::string>(), rec.at("category").get<std::string>());
    }
    if (categories.size() != doc_count) throw FormatError("duplicate document in index");

    Index::TermMap terms;
    for (std::size_t i = 0; i < term_count; ++i) {
      const auto rec = next("term record");
      Index::TermEntry entry;
      entry.doc_freq = rec.at("df").get<std::uint32_t>();
      for (const auto& [name, list] : rec.at("postings").items()) {
        auto& postings = entry.fields[Field::parse(name)];
        for (const auto& pair : list) {
          postings.emplace(pair.at(0).get<std::string>(), pair.at(1).get<std::uint32_t>());
        }
      }
      terms.emplace(rec.at("term").get<std::string>(), std::move(entry));
    }
    if (terms.size() != term_count) throw FormatError("duplicate term in index");
    return Index::assemble(fingerprint, std::move(categories), std::move(terms));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("corrupt index body: ") + e.what());
  }
}

inline Index load_index(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open index file " + path);
  return load_index(in);
}

}  // namespace artrec
