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

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "artrec/default_pack.hpp"
#include "artrec/recommend.hpp"
#include "support/synthetic.hpp"

using namespace artrec;
using artrec::testing::data_path;

namespace {

constexpr WeightCoefficients kConfig1 = kStandardCoefficients[0];
constexpr WeightCoefficients kConfig2 = kStandardCoefficients[1];
constexpr WeightCoefficients kConfig3 = kStandardCoefficients[2];

std::vector<Article> corpus3() {
  std::ifstream in(data_path("corpus_3.jsonl"));
  return read_corpus(in);
}

DocVector make_vector(std::vector<std::pair<std::string, double>> w) {
  DocVector v;
  std::sort(w.begin(), w.end());
  double sq = 0.0;
  for (const auto& [t, x] : w) sq += x * x;
  v.weights = std::move(w);
  v.norm = std::sqrt(sq);
  return v;
}

Article doc(std::string id, std::string category, std::string title, std::string body,
            std::vector<std::string> keywords = {}) {
  Article a;
  a.id = std::move(id);
  a.category = std::move(category);
  a.title = std::move(title);
  a.body = std::move(body);
  a.keywords = std::move(keywords);
  return a;
}

}  // namespace

TEST(Coefficients, StandardSettingsAreValid) {
  for (const auto& c : kStandardCoefficients) EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(kConfig1.label(), "0.4,0.3,0.2,0.1");
  EXPECT_EQ(kConfig2.label(), "0,0.6,0.4,0");
}

TEST(Coefficients, RejectsBadSums) {
  try {
    WeightCoefficients{0.4, 0.3, 0.2, 0.0}.validate();
    FAIL();
  } catch (const ConstraintError& e) {
    EXPECT_NE(std::string(e.what()).find("kappa + tau + alpha + beta = 1"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("0.9"), std::string::npos);
  }
  EXPECT_THROW((WeightCoefficients{0.5, 0.5, 0.5, -0.5}.validate()), ConstraintError);
  EXPECT_THROW((WeightCoefficients{1.5, -0.5, 0, 0}.validate()), ConstraintError);
  EXPECT_THROW((WeightCoefficients{std::nan(""), 1, 0, 0}.validate()), ConstraintError);
  EXPECT_NO_THROW((WeightCoefficients{0.1, 0.2, 0.3, 0.4 + 5e-10}.validate()));
}

TEST(Coefficients, ValidatedBeforeScoring) {
  const auto docs = corpus3();
  const auto idx = build_index(docs, default_analyzer());
  const WeightCoefficients bad{0.5, 0.5, 0.5, 0.0};
  EXPECT_THROW(term_weight(idx, "a1", "graf", bad), ConstraintError);
  EXPECT_THROW(recommend(idx, "a1", bad), ConstraintError);
  EXPECT_THROW(batch_recommend(idx, bad, 3), ConstraintError);
}

TEST(TermWeight, AffineCombination) {
  // N = 100 and df = 10 give idf = 1, so each tfidf equals the raw count.
  Index::CategoryMap cats;
  for (int i = 0; i < 100; ++i) cats["d" + std::to_string(100 + i)] = "c";
  Index::TermMap terms;
  auto& e = terms["t"];
  e.doc_freq = 10;
  for (int i = 0; i < 10; ++i) e.fields[Field::abstract()]["d" + std::to_string(100 + i)] = 1;
  e.fields[Field::keywords()]["d100"] = 3;
  e.fields[Field::title()]["d100"] = 2;
  e.fields[Field::body()]["d100"] = 4;
  const auto idx = Index::assemble("x", cats, terms);
  ASSERT_DOUBLE_EQ(tfidf(idx, "d100", Field::title(), "t"), 2.0);
  ASSERT_DOUBLE_EQ(tfidf(idx, "d100", Field::abstract(), "t"), 1.0);
  // 0.4*1 + 0.3*2 + 0.2*1 + 0.1*4: the keyword term is an indicator, not a count.
  EXPECT_NEAR(term_weight(idx, "d100", "t", kConfig1), 1.6, 1e-12);
  // 0.6*2 + 0.4*1
  EXPECT_NEAR(term_weight(idx, "d100", "t", kConfig2), 1.6, 1e-12);
  // 0.4*1 + 0.6*4
  EXPECT_NEAR(term_weight(idx, "d100", "t", kConfig3), 2.8, 1e-12);
  // Only the abstract: 0.2*1 + 0.1*0
  EXPECT_NEAR(term_weight(idx, "d105", "t", kConfig1), 0.2, 1e-12);
  EXPECT_EQ(term_weight(idx, "d150", "t", kConfig1), 0.0);
  EXPECT_EQ(term_weight(idx, "d100", "mungon", kConfig1), 0.0);
  EXPECT_THROW(term_weight(idx, "zz", "t", kConfig1), NotFoundError);
}

TEST(TermWeight, TitleAbstractSettingIgnoresKeywordsAndBody) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto docs = artrec::testing::synthetic_corpus(seed);
    const auto base = build_index(docs, artrec::testing::synthetic_analyzer());
    for (auto& d : docs) {
      d.keywords = {"zzzz fjalë"};
      d.body += " zzzz zzzz";
    }
    const auto changed = build_index(docs, artrec::testing::synthetic_analyzer());
    for (const auto& [id, cat] : base.doc_categories()) {
      for (const auto& term : base.doc_terms(id)) {
        if (base.doc_freq(term) != changed.doc_freq(term)) continue;
        ASSERT_DOUBLE_EQ(term_weight(base, id, term, kConfig2), term_weight(changed, id, term, kConfig2))
            << id << " " << term;
      }
    }
  }
}

TEST(DocVectorTest, MatchesGoldenWeights) {
  // Frozen by the reference oracle in tests/oracle.
  const auto idx = build_index(corpus3(), default_analyzer());
  std::ifstream in(data_path("golden/corpus_3_vectors_config1.tsv"));
  std::string line;
  std::map<std::string, std::map<std::string, double>> want;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string d, t, w;
    std::getline(row, d, '\t');
    std::getline(row, t, '\t');
    std::getline(row, w, '\t');
    want[d][t] = std::stod(w);
  }
  ASSERT_EQ(want.size(), 3u);
  for (const auto& [d, terms] : want) {
    const auto v = doc_vector(idx, d, kConfig1);
    ASSERT_EQ(v.weights.size(), terms.size()) << d;
    for (const auto& [t, w] : v.weights) {
      ASSERT_TRUE(terms.count(t)) << d << " " << t;
      EXPECT_NEAR(w, terms.at(t), 1e-12) << d << " " << t;
    }
  }
}

TEST(Cosine, Examples) {
  const auto a = make_vector({{"a", 1}, {"c", 1}});
  const auto b = make_vector({{"a", 1}, {"b", 1}});
  EXPECT_NEAR(cosine(a, b), 0.5, 1e-15);
  EXPECT_DOUBLE_EQ(cosine(a, a), 1.0);
  const auto x = make_vector({{"x", 2}});
  EXPECT_EQ(cosine(a, x), 0.0);
  EXPECT_EQ(cosine(a, DocVector{}), 0.0);
  EXPECT_EQ(cosine(DocVector{}, DocVector{}), 0.0);
}

TEST(Cosine, SymmetricAndBounded) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> w(0.0, 5.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::pair<std::string, double>> p, q;
    for (int t = 0; t < 30; ++t) {
      if (rng() % 3 == 0) p.emplace_back("t" + std::to_string(t), w(rng) + 1e-9);
      if (rng() % 3 == 0) q.emplace_back("t" + std::to_string(t), w(rng) + 1e-9);
    }
    const auto a = make_vector(p), b = make_vector(q);
    const double s = cosine(a, b);
    ASSERT_EQ(s, cosine(b, a));
    ASSERT_GE(s, 0.0);
    ASSERT_LE(s, 1.0);
    if (!p.empty()) {
      ASSERT_NEAR(cosine(a, a), 1.0, 1e-12);
    }
  }
}

TEST(Recommend, SingletonCategoryIsEmpty) {
  const auto idx = build_index(corpus3(), default_analyzer());
  const auto rec = recommend(idx, "a3", kConfig1, 5);
  EXPECT_EQ(rec.query_doc_id, "a3");
  EXPECT_TRUE(rec.ranked.empty());
}

TEST(Recommend, NeverReturnsOtherCategories) {
  const auto idx = build_index(corpus3(), default_analyzer());
  const Recommender r(idx, kConfig1);
  const auto same = r.recommend("a1", {5, true});
  ASSERT_EQ(same.ranked.size(), 1u);
  EXPECT_EQ(same.ranked[0].doc_id, "a2");
}

TEST(Recommend, ArgumentErrors) {
  const auto idx = build_index(corpus3(), default_analyzer());
  EXPECT_THROW(recommend(idx, "zz", kConfig1), NotFoundError);
  EXPECT_THROW(recommend(idx, "a1", kConfig1, 0), ConstraintError);
}

TEST(Recommend, DuplicateRanksFirstWithScoreOne) {
  std::vector<Article> docs{
      doc("p1", "m", "grafe planare", "ngjyrosje e grafeve planare me kater ngjyra", {"graf"}),
      doc("p2", "m", "grafe planare", "ngjyrosje e grafeve planare me kater ngjyra", {"graf"}),
      doc("p3", "m", "grafe te rastesishme", "probabiliteti i lidhjes ne grafe", {"graf"}),
      doc("p4", "m", "algjebra lineare", "matrica dhe vektore", {"algjebra"}),
  };
  const auto idx = build_index(docs, default_analyzer());
  for (const auto& c : kStandardCoefficients) {
    const auto rec = recommend(idx, "p1", c, 3);
    ASSERT_FALSE(rec.ranked.empty());
    EXPECT_EQ(rec.ranked[0].doc_id, "p2");
    EXPECT_NEAR(rec.ranked[0].score, 1.0, 1e-12);
  }
}

TEST(Recommend, DegenerateDocsAreNeverRecommended) {
  std::vector<Article> docs{doc("a", "m", "graf", "graf pemë"), doc("b", "m", "graf", "graf cikël"),
                            doc("c", "m", "", ""), doc("d", "m", "dhe", "")};
  const auto idx = build_index(docs, default_analyzer());
  const Recommender r(idx, kConfig1);
  for (const auto& q : {"a", "b", "c", "d"}) {
    for (const auto& s : r.recommend(q, {10, true}).ranked) {
      EXPECT_NE(s.doc_id, "c");
      EXPECT_NE(s.doc_id, "d");
    }
  }
  EXPECT_TRUE(r.recommend("c", {10, true}).ranked.empty());
}

TEST(Recommend, MatchesDenseOracle) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto docs = artrec::testing::synthetic_corpus(seed);
    const auto config = artrec::testing::synthetic_analyzer(seed % 2 ? StemMode::SingleRun : StemMode::Fixpoint);
    const auto idx = build_index(docs, config);
    for (const auto& c : kStandardCoefficients) {
      const artrec::testing::DenseOracle oracle(docs, config, c);
      const Recommender r(idx, c);
      for (std::size_t q = 0; q < docs.size(); ++q) {
        const auto got = r.recommend(docs[q].id, {5, true});
        std::string why;
        ASSERT_TRUE(artrec::testing::same_ranking(got.ranked, oracle.recommend(q, 5), 1e-9, &why))
            << "seed " << seed << " query " << docs[q].id << " coeffs " << c.label() << ": " << why;
      }
    }
  }
}

TEST(Recommend, RankingInvariants) {
  for (std::uint64_t seed = 40; seed <= 60; ++seed) {
    const auto docs = artrec::testing::synthetic_corpus(seed);
    const auto idx = build_index(docs, artrec::testing::synthetic_analyzer());
    const Recommender r(idx, kConfig1);
    for (const auto& d : docs) {
      const auto rec = r.recommend(d.id, {4, true});
      ASSERT_LE(rec.ranked.size(), 4u);
      std::set<std::string> seen;
      for (std::size_t i = 0; i < rec.ranked.size(); ++i) {
        const auto& s = rec.ranked[i];
        ASSERT_NE(s.doc_id, d.id);
        ASSERT_TRUE(seen.insert(s.doc_id).second);
        ASSERT_EQ(idx.category(s.doc_id), d.category);
        ASSERT_GT(s.score, 0.0);
        ASSERT_LE(s.score, 1.0);
        if (i > 0) {
          const auto& p = rec.ranked[i - 1];
          ASSERT_TRUE(p.score > s.score || (p.score == s.score && p.doc_id < s.doc_id));
        }
      }
      // Growing k only extends the list.
      const auto longer = r.recommend(d.id, {8, true});
      ASSERT_GE(longer.ranked.size(), rec.ranked.size());
      for (std::size_t i = 0; i < rec.ranked.size(); ++i) ASSERT_EQ(longer.ranked[i], rec.ranked[i]);
    }
  }
}

TEST(Batch, AgreesWithSingleQueries) {
  const auto docs = artrec::testing::synthetic_corpus(3);
  const auto idx = build_index(docs, artrec::testing::synthetic_analyzer());
  const auto batch = batch_recommend(idx, kConfig3, 4, 3);
  ASSERT_EQ(batch.recommendations.size(), docs.size());
  for (const auto& d : docs) {
    EXPECT_EQ(batch.recommendations.at(d.id), recommend(idx, d.id, kConfig3, 4));
  }
  EXPECT_EQ(batch.analyzer_fingerprint, idx.analyzer_fingerprint());
}

TEST(Batch, ReproducibleBytes) {
  const auto docs = artrec::testing::synthetic_corpus(8);
  const auto idx = build_index(docs, artrec::testing::synthetic_analyzer());
  std::ostringstream a, b;
  save_batch(batch_recommend(idx, kConfig1, 5, 1), a);
  save_batch(batch_recommend(idx, kConfig1, 5, 4), b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(Batch, EmptyCorpus) {
  const auto idx = build_index({}, default_analyzer());
  const auto batch = batch_recommend(idx, kConfig1, 10);
  EXPECT_TRUE(batch.recommendations.empty());
  std::stringstream buf;
  save_batch(batch, buf);
  EXPECT_TRUE(load_batch(buf).recommendations.empty());
}

TEST(Batch, RoundTripKeepsFourDecimals) {
  const auto docs = artrec::testing::synthetic_corpus(9);
  const auto idx = build_index(docs, artrec::testing::synthetic_analyzer());
  const auto batch = batch_recommend(idx, kConfig2, 3);
  std::stringstream buf;
  save_batch(batch, buf);
  const auto loaded = load_batch(buf);
  EXPECT_EQ(loaded.coefficients, kConfig2);
  EXPECT_EQ(loaded.k, 3u);
  for (const auto& [id, rec] : batch.recommendations) {
    const auto& got = loaded.recommendations.at(id);
    ASSERT_EQ(got.ranked.size(), rec.ranked.size());
    for (std::size_t i = 0; i < rec.ranked.size(); ++i) {
      EXPECT_EQ(got.ranked[i].doc_id, rec.ranked[i].doc_id);
      EXPECT_EQ(got.ranked[i].score, round_score(rec.ranked[i].score));
    }
  }
  std::istringstream junk("{}\n");
  EXPECT_THROW(load_batch(junk), FormatError);
}
