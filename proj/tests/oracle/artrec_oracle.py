"""Independent reference computations used to freeze golden fixtures.

Re-implements tokenization, suffix stemming, per-field counting, tf-idf,
field-weighted vectors, cosine ranking and the pooled P/R/F1 sweep directly
from their definitions, without sharing code with the C++ library.
"""

import json
import math
import unicodedata

MASK64 = (1 << 64) - 1


class MT19937_64:
    """Textbook 64-bit Mersenne Twister (same parameters as std::mt19937_64)."""

    def __init__(self, seed):
        self.mt = [0] * 312
        self.index = 312
        self.mt[0] = seed & MASK64
        for i in range(1, 312):
            prev = self.mt[i - 1]
            self.mt[i] = (6364136223846793005 * (prev ^ (prev >> 62)) + i) & MASK64

    def _twist(self):
        upper, lower = 0xFFFFFFFF80000000, 0x7FFFFFFF
        for i in range(312):
            x = (self.mt[i] & upper) | (self.mt[(i + 1) % 312] & lower)
            xa = x >> 1
            if x & 1:
                xa ^= 0xB5026F5AA96619E9
            self.mt[i] = self.mt[(i + 156) % 312] ^ xa
        self.index = 0

    def __call__(self):
        if self.index >= 312:
            self._twist()
        y = self.mt[self.index]
        self.index += 1
        y ^= (y >> 29) & 0x5555555555555555
        y ^= (y << 17) & 0x71D67FFFEDA60000
        y ^= (y << 37) & 0xFFF7EEE000000000
        y ^= y >> 43
        return y & MASK64


def read_rules(path):
    rules = []
    for line in open(path, encoding="utf-8"):
        line = line.rstrip("\n").rstrip("\r")
        if not line or line.startswith("#"):
            continue
        suffix, repl, min_len = line.split("\t")
        rules.append((unicodedata.normalize("NFC", suffix.lower()),
                      unicodedata.normalize("NFC", repl.lower()), int(min_len)))
    return rules


def read_stopwords(path):
    out = set()
    for line in open(path, encoding="utf-8"):
        w = line.strip()
        if w and not w.startswith("#"):
            out.add(unicodedata.normalize("NFC", w.lower()))
    return out


def tokenize(text):
    text = unicodedata.normalize("NFC", unicodedata.normalize("NFC", text).lower())
    tokens, cur = [], ""
    for ch in text:
        if ch.isalpha() or ch.isdecimal() or (cur and unicodedata.category(ch).startswith("M")):
            cur += ch
        else:
            if cur:
                tokens.append(cur)
            cur = ""
    if cur:
        tokens.append(cur)
    return tokens


def stem_once(word, rules):
    for suffix, repl, min_len in rules:
        if word.endswith(suffix) and len(word) - len(suffix) + len(repl) >= min_len:
            return word[: len(word) - len(suffix)] + repl
    return word


def stem_repeat(word, rules):
    seen = {word}
    while True:
        nxt = stem_once(word, rules)
        if nxt == word or nxt in seen:
            return word
        seen.add(nxt)
        word = nxt


def analyze(text, stopwords, rules, mode):
    out = []
    for t in tokenize(text):
        if t in stopwords:
            continue
        out.append(stem_once(t, rules) if mode == "single" else stem_repeat(t, rules))
    return out


def field_texts(article):
    yield "keywords", "".join(k + "\n" for k in article.get("keywords", []))
    yield "title", article["title"]
    yield "abstract", article.get("abstract", "")
    yield "body", article.get("body", "")
    for i, s in enumerate(article.get("sections", []) or []):
        yield "section:%d" % i, s["text"]


FIELD_ORDER = ["keywords", "title", "abstract", "body"]


def field_rank(name):
    if name in FIELD_ORDER:
        return (FIELD_ORDER.index(name), 0)
    return (4, int(name.split(":")[1]))


class Index:
    def __init__(self, articles, stopwords, rules, mode):
        self.categories = {a["id"]: a["category"] for a in articles}
        self.n = len(articles)
        self.counts = {}  # (doc, field) -> {term: tf}
        self.df = {}
        for a in articles:
            present = set()
            for field, text in field_texts(a):
                bucket = self.counts.setdefault((a["id"], field), {})
                for term in analyze(text, stopwords, rules, mode):
                    bucket[term] = bucket.get(term, 0) + 1
                    present.add(term)
            for t in present:
                self.df[t] = self.df.get(t, 0) + 1
        self.vocab = sorted(self.df)

    def tf(self, doc, field, term):
        return self.counts.get((doc, field), {}).get(term, 0)

    def tfidf(self, doc, field, term):
        tf = self.tf(doc, field, term)
        if tf == 0:
            return 0.0
        return tf * math.log10(self.n / self.df[term])

    def dense_vector(self, doc, coeffs):
        kappa, tau, alpha, beta = coeffs
        vec = []
        for term in self.vocab:
            w = 0.0
            if kappa != 0.0 and self.tf(doc, "keywords", term) > 0:
                w += kappa
            if tau != 0.0:
                w += tau * self.tfidf(doc, "title", term)
            if alpha != 0.0:
                w += alpha * self.tfidf(doc, "abstract", term)
            if beta != 0.0:
                w += beta * self.tfidf(doc, "body", term)
            vec.append(w)
        return vec

    def serialize(self, fingerprint):
        lines = [dumps({"format": "artrec-index", "version": 1,
                        "analyzer_fingerprint": fingerprint, "doc_count": self.n,
                        "term_count": len(self.vocab)})]
        for doc in sorted(self.categories):
            lines.append(dumps({"doc": doc, "category": self.categories[doc]}))
        for term in self.vocab:
            fields = {}
            for (doc, field), bucket in self.counts.items():
                if term in bucket:
                    fields.setdefault(field, []).append([doc, bucket[term]])
            postings = {}
            for field in sorted(fields, key=field_rank):
                postings[field] = sorted(fields[field])
            lines.append(dumps({"term": term, "df": self.df[term], "postings": postings}))
        return "".join(l + "\n" for l in lines)


def dumps(obj):
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def cosine_dense(u, v):
    nu = math.sqrt(sum(x * x for x in u))
    nv = math.sqrt(sum(x * x for x in v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return min(1.0, max(0.0, sum(a * b for a, b in zip(u, v)) / (nu * nv)))


def recommend_all(index, coeffs, k):
    vecs = {d: index.dense_vector(d, coeffs) for d in index.categories}
    out = {}
    for q in sorted(index.categories):
        scored = []
        for c in sorted(index.categories):
            if c == q or index.categories[c] != index.categories[q]:
                continue
            s = cosine_dense(vecs[q], vecs[c])
            if s > 0.0:
                scored.append((-s, c))
        scored.sort()
        out[q] = [(c, -s) for s, c in scored[:k]]
    return out


def sample_queries(ids, n, seed):
    ids = sorted(ids)
    rng = MT19937_64(seed)
    n = min(n, len(ids))
    for i in range(n):
        j = i + rng() % (len(ids) - i)
        ids[i], ids[j] = ids[j], ids[i]
    return sorted(ids[:n])


def precision(rel, ret):
    return 0.0 if ret == 0 else rel / ret


def recall(rel, total):
    return 0.0 if total == 0 else rel / total


def f1(p, r):
    return 0.0 if p + r == 0.0 else 2.0 * p * r / (p + r)


def shortest(x):
    r = repr(float(x))
    return r[:-2] if r.endswith(".0") else r


def fingerprint(stopwords, rules, mode, lowercase=True):
    canon = "artrec-analyzer/1\n"
    canon += "lowercase=%d\n" % (1 if lowercase else 0)
    canon += "mode=%s\n" % mode
    canon += "rules\n"
    for s, r, m in rules:
        canon += "%s\t%s\t%d\n" % (s, r, m)
    canon += "stopwords\n"
    for w in sorted(stopwords, key=lambda x: x.encode("utf-8")):
        canon += w + "\n"
    h = 0xCBF29CE484222325
    for b in canon.encode("utf-8"):
        h ^= b
        h = (h * 0x100000001B3) & MASK64
    return "%016x" % h
