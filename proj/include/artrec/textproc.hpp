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

// Text analysis: tokenization, stop-word removal and ordered suffix-rule
// stemming. Every function here is a pure function of (input, config).

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "artrec/error.hpp"
#include "artrec/unicode.hpp"

namespace artrec {

enum class StemMode {
  SingleRun,  // one application of the stemming function
  Fixpoint,   // apply until the word no longer changes
};

inline std::string_view to_string(StemMode mode) {
  return mode == StemMode::SingleRun ? "single" : "fixpoint";
}

/// Accepts "single" / "fixpoint" (the CLI spellings) plus a few aliases.
inline StemMode parse_stem_mode(std::string_view text) {
  if (text == "single" || text == "single-run" || text == "SingleRun") return StemMode::SingleRun;
  if (text == "fixpoint" || text == "multiple" || text == "Fixpoint") return StemMode::Fixpoint;
  throw ConfigError("unknown stem mode '" + std::string(text) + "' (expected single|fixpoint)");
}

struct StemRule {
  std::string suffix;
  std::string replacement;
  std::size_t min_stem_length = 1;

  bool operator==(const StemRule&) const = default;
};

/// Immutable analyzer settings. Stop words and rule strings are stored
/// NFC-normalized and lowercased (when `lowercase` is set) so that lookups
/// agree with `tokenize`.
class AnalyzerConfig {
 public:
  AnalyzerConfig() = default;

  AnalyzerConfig(const std::vector<std::string>& stopwords, std::vector<StemRule> rules,
                 StemMode mode = StemMode::SingleRun, bool lowercase = true)
      : rules_(std::move(rules)), stem_mode_(mode), lowercase_(lowercase) {
    for (const auto& w : stopwords) {
      auto normalized = unicode::normalize(w, lowercase_);
      if (!normalized.empty()) stopwords_.insert(std::move(normalized));
    }
    for (auto& rule : rules_) {
      if (rule.suffix.empty()) throw ConfigError("stem rule with empty suffix");
      if (rule.min_stem_length == 0) {
        throw ConfigError("stem rule '" + rule.suffix + "': min_stem_length must be positive");
      }
      rule.suffix = unicode::normalize(rule.suffix, lowercase_);
      rule.replacement = unicode::normalize(rule.replacement, lowercase_);
    }
  }

  const std::set<std::string>& stopwords() const noexcept { return stopwords_; }
  const std::vector<StemRule>& rules() const noexcept { return rules_; }
  StemMode stem_mode() const noexcept { return stem_mode_; }
  bool lowercase() const noexcept { return lowercase_; }

  bool is_stopword(std::string_view token) const {
    return stopwords_.find(std::string(token)) != stopwords_.end();
  }

  AnalyzerConfig with_stem_mode(StemMode mode) const {
    AnalyzerConfig copy = *this;
    copy.stem_mode_ = mode;
    return copy;
  }

  /// 64-bit FNV-1a over a canonical rendering of the whole config, as 16 hex
  /// digits. Stable across platforms and runs.
  std::string fingerprint() const {
    std::string canon = "artrec-analyzer/1\n";
    canon += "lowercase=" + std::string(lowercase_ ? "1" : "0") + "\n";
    canon += "mode=" + std::string(to_string(stem_mode_)) + "\n";
    canon += "rules\n";
    for (const auto& r : rules_) {
      canon += r.suffix + '\t' + r.replacement + '\t' + std::to_string(r.min_stem_length) + '\n';
    }
    canon += "stopwords\n";
    for (const auto& w : stopwords_) canon += w + '\n';

    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : canon) {
      hash ^= c;
      hash *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
  }

  bool operator==(const AnalyzerConfig&) const = default;

 private:
  std::set<std::string> stopwords_;
  std::vector<StemRule> rules_;
  StemMode stem_mode_ = StemMode::SingleRun;
  bool lowercase_ = true;
};

inline std::vector<std::string> tokenize(std::string_view text, bool lowercase = true) {
  return unicode::word_runs(unicode::normalize(text, lowercase));
}

inline std::vector<std::string> remove_stopwords(std::vector<std::string> tokens,
                                                 const std::set<std::string>& stopwords) {
  std::erase_if(tokens, [&](const std::string& t) { return stopwords.count(t) != 0; });
  return tokens;
}

namespace detail {

inline bool rule_applies(std::string_view word, const StemRule& rule) {
  if (!word.ends_with(rule.suffix)) return false;
  const std::size_t stem_len = unicode::length(word) - unicode::length(rule.suffix);
  return stem_len + unicode::length(rule.replacement) >= rule.min_stem_length;
}

}  // namespace detail

/// Applies the first applicable rule, once.
inline std::string stem_single(std::string_view word, std::span<const StemRule> rules) {
  for (const auto& rule : rules) {
    if (detail::rule_applies(word, rule)) {
      std::string out(word.substr(0, word.size() - rule.suffix.size()));
      out += rule.replacement;
      return out;
    }
  }
  return std::string(word);
}

/// Iterates `stem_single` until it stops changing the word. A rule table
/// whose replacements can regrow a suffix may cycle; the loop then stops at
/// the first repeated form.
inline std::string stem_fixpoint(std::string_view word, std::span<const StemRule> rules) {
  std::string current(word);
  std::set<std::string> seen{current};
  for (;;) {
    std::string next = stem_single(current, rules);
    if (next == current || !seen.insert(next).second) return current;
    current = std::move(next);
  }
}

inline std::string stem(std::string_view word, std::span<const StemRule> rules, StemMode mode) {
  return mode == StemMode::SingleRun ? stem_single(word, rules) : stem_fixpoint(word, rules);
}

/// tokenize -> remove stop words -> stem. Stop-word removal runs before
/// stemming, so stems that happen to equal a stop word are kept.
inline std::vector<std::string> analyze(std::string_view text, const AnalyzerConfig& config) {
  auto terms = remove_stopwords(tokenize(text, config.lowercase()), config.stopwords());
  for (auto& t : terms) t = stem(t, config.rules(), config.stem_mode());
  return terms;
}

// Rule file: one rule per line, `suffix<TAB>replacement<TAB>min_stem_length`.
// The replacement may be empty. Blank lines and lines starting with '#' are
// skipped.
inline std::vector<StemRule> parse_stem_rules(std::istream& in) {
  std::vector<StemRule> rules;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;

    std::vector<std::string> cols;
    std::size_t start = 0;
    for (;;) {
      const auto tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    const auto where = "rule file line " + std::to_string(line_no);
    if (cols.size() != 3) throw ConfigError(where + ": expected 3 tab-separated columns");
    if (cols[0].empty()) throw ConfigError(where + ": empty suffix");
    std::size_t min_len = 0;
    try {
      std::size_t used = 0;
      const long v = std::stol(cols[2], &used);
      if (used != cols[2].size() || v <= 0) throw std::invalid_argument("range");
      min_len = static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      throw ConfigError(where + ": min_stem_length must be a positive integer");
    }
    rules.push_back({unicode::normalize(cols[0]), unicode::normalize(cols[1]), min_len});
  }
  return rules;
}

inline std::vector<StemRule> load_stem_rules(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open rule file " + path);
  return parse_stem_rules(in);
}

// Stop-word file: one word per line; blank lines and '#' comments skipped.
inline std::vector<std::string> parse_stopwords(std::istream& in) {
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t");
    words.push_back(line.substr(first, last - first + 1));
  }
  return words;
}

inline std::vector<std::string> load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open stop-word file " + path);
  return parse_stopwords(in);
}

}  // namespace artrec
