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

// Built-in copy of data/albanian_stem_rules.tsv and data/albanian_stopwords.txt.
// The rule table approximates common Albanian inflectional endings; it is not
// a reproduction of any published stemmer. Keep in sync with the data files
// (checked by the textproc tests).

#include <string>
#include <vector>

#include "artrec/textproc.hpp"

namespace artrec {

inline const std::vector<StemRule>& default_stem_rules() {
  static const std::vector<StemRule> rules = {
      {"imeve", "", 3},
      {"imet", "", 3},
      {"imit", "", 3},
      {"imin", "", 3},
      {"uara", "", 3},
      {"uese", "", 3},
      {"shme", "", 3},
      {"shëm", "", 3},
      {"ojnë", "", 3},
      {"ojmë", "", 3},
      {"isht", "", 3},
      {"ikës", "", 3},
      {"itet", "", 3},
      {"izëm", "", 3},
      {"ave", "", 3},
      {"eve", "", 3},
      {"ëve", "", 3},
      {"ive", "", 3},
      {"ove", "", 3},
      {"ime", "", 3},
      {"imi", "", 3},
      {"uar", "", 3},
      {"ues", "", 3},
      {"oni", "", 3},
      {"ikë", "", 3},
      {"ike", "", 3},
      {"ore", "", 3},
      {"ëse", "", 3},
      {"ese", "", 3},
      {"ët", "", 3},
      {"ës", "", 3},
      {"ën", "", 3},
      {"ja", "", 3},
      {"je", "", 3},
      {"ve", "", 3},
      {"të", "", 3},
      {"së", "", 3},
      {"it", "", 3},
      {"in", "", 3},
      {"ut", "", 3},
      {"un", "", 3},
      {"at", "", 3},
      {"et", "", 3},
      {"ia", "", 3},
      {"ie", "", 3},
      {"oj", "", 3},
      {"im", "", 3},
      {"ik", "", 3},
      {"i", "", 3},
      {"a", "", 3},
      {"e", "", 3},
      {"ë", "", 3},
      {"u", "", 3},
      {"t", "", 4},
      {"n", "", 4},
      {"s", "", 4},
  };
  return rules;
}

inline const std::vector<std::string>& default_stopwords() {
  static const std::vector<std::string> words = {
      "a", "ai", "ajo", "apo", "as", "asaj", "askush", "asnjë", "ata", "atë", "atij",
      "ato", "atje", "atyre", "bën", "bëhet", "çdo", "cila", "cilat", "cili",
      "cilët", "deri", "disa", "do", "dhe", "duhet", "duke", "e", "edhe", "ende",
      "gjatë", "gjithashtu", "gjithë", "i", "ia", "im", "ishin", "ishte", "iu", "jam",
      "janë", "je", "jemi", "jeni", "jo", "ju", "juaj", "ka", "kam", "kanë", "kemi",
      "keni", "kësaj", "këta", "këtë", "këtij", "këto", "këtu", "këtyre",
      "kishte", "kjo", "ku", "kur", "ky", "më", "me", "megjithëse", "mes", "midis",
      "mirë", "mund", "na", "nëse", "në", "nën", "ndaj", "ndërmjet", "ndërsa",
      "ne", "nga", "nuk", "një", "o", "ose", "pa", "pak", "para", "pas", "po", "por",
      "pra", "prej", "pse", "për", "qe", "që", "rreth", "sa", "se", "si", "sepse",
      "shumë", "sikur", "sipas", "së", "ta", "tani", "te", "tek", "ti", "tij",
      "tjera", "tjetër", "tonë", "tyre", "të", "u", "ua", "unë", "vetë", "vetëm",
      "qenë", "kundër", "drejt", "kështu", "është", "mbi",
  };
  return words;
}

inline AnalyzerConfig default_analyzer(StemMode mode = StemMode::SingleRun) {
  return AnalyzerConfig(default_stopwords(), default_stem_rules(), mode);
}

}  // namespace artrec
