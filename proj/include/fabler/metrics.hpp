#pragma once

// Text comparison and corpus statistics used by the evaluation harness:
// edit-distance similarity, corpus BLEU, polarity profiling, and word
// frequency counts.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fabler/util.hpp"

namespace fabler {

// --- tokenization ------------------------------------------------------

// Lowercased word tokens; punctuation is stripped, intra-word
// apostrophes and hyphens survive ("tr-trellis", "fox's").
inline std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    while (!cur.empty() && (cur.front() == '\'' || cur.front() == '-')) cur.erase(cur.begin());
    while (!cur.empty() && (cur.back() == '\'' || cur.back() == '-')) cur.pop_back();
    if (!cur.empty()) out.push_back(cur);
    cur.clear();
  };
  for (char ch : text) {
    unsigned char c = static_cast<unsigned char>(ch);
    if (std::isalnum(c) || ch == '\'' || ch == '-')
      cur += static_cast<char>(std::tolower(c));
    else
      flush();
  }
  flush();
  return out;
}

// --- edit distance -----------------------------------------------------

inline std::size_t levenshtein(const std::string& a, const std::string& b) {
  if (a.empty()) return b.size();
  if (b.empty()) return a.size();
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

// 1 - distance / max length; two empty strings are identical.
inline double similarity(const std::string& a, const std::string& b) {
  std::size_t m = std::max(a.size(), b.size());
  if (m == 0) return 1.0;
  return 1.0 - static_cast<double>(levenshtein(a, b)) / static_cast<double>(m);
}

struct SimilarityReport {
  std::vector<double> per_line;
  double mean = 1.0;
  double min = 1.0;
};

// Pairwise line similarity between two texts; extra lines on either
// side compare against empty strings.
inline SimilarityReport compare_lines(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b) {
  SimilarityReport r;
  std::size_t n = std::max(a.size(), b.size());
  if (n == 0) return r;
  static const std::string kEmpty;
  double total = 0.0;
  r.min = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& x = i < a.size() ? a[i] : kEmpty;
    const std::string& y = i < b.size() ? b[i] : kEmpty;
    double s = similarity(x, y);
    r.per_line.push_back(s);
    total += s;
    r.min = std::min(r.min, s);
  }
  r.mean = total / static_cast<double>(n);
  return r;
}

// --- BLEU --------------------------------------------------------------

// Corpus-level BLEU, n-grams 1..4, uniform weights, brevity penalty,
// no smoothing: any empty modified precision gives a zero score. Orders
// with no candidate n-grams at all (every sentence shorter than n) carry
// no signal and drop out of the geometric mean, so identical corpora
// score 1.0 regardless of sentence length.
inline double bleu(const std::vector<std::vector<std::string>>& candidates,
                   const std::vector<std::vector<std::string>>& references) {
  if (candidates.size() != references.size())
    throw Error("metrics", "bleu: candidate/reference count mismatch");
  if (candidates.empty()) throw Error("metrics", "bleu: empty corpus");

  constexpr int kMaxN = 4;
  std::size_t cand_len = 0, ref_len = 0;
  double log_sum = 0.0;
  int used = 0;
  for (int n = 1; n <= kMaxN; ++n) {
    std::size_t matched = 0, total = 0;
    for (std::size_t s = 0; s < candidates.size(); ++s) {
      const auto& cand = candidates[s];
      const auto& ref = references[s];
      if (n == 1) {
        cand_len += cand.size();
        ref_len += ref.size();
      }
      if (cand.size() < static_cast<std::size_t>(n)) continue;
      std::map<std::vector<std::string>, std::size_t> cand_counts, ref_counts;
      for (std::size_t i = 0; i + n <= cand.size(); ++i)
        ++cand_counts[{cand.begin() + i, cand.begin() + i + n}];
      for (std::size_t i = 0; i + n <= ref.size(); ++i)
        ++ref_counts[{ref.begin() + i, ref.begin() + i + n}];
      for (const auto& [gram, count] : cand_counts) {
        total += count;
        auto it = ref_counts.find(gram);
        if (it != ref_counts.end()) matched += std::min(count, it->second);
      }
    }
    if (total == 0) continue;
    if (matched == 0) return 0.0;
    log_sum += std::log(static_cast<double>(matched) / static_cast<double>(total));
    ++used;
  }
  if (cand_len == 0 || used == 0) return 0.0;
  double precision = std::exp(log_sum / used);
  double bp = 1.0;
  if (cand_len < ref_len)
    bp = std::exp(1.0 - static_cast<double>(ref_len) / static_cast<double>(cand_len));
  return bp * precision;
}

inline double bleu_text(const std::string& candidate, const std::string& reference) {
  std::vector<std::vector<std::string>> c, r;
  for (const auto& line : str::split(candidate, '\n'))
    if (!str::trim(line).empty()) c.push_back(tokenize(line));
  for (const auto& line : str::split(reference, '\n'))
    if (!str::trim(line).empty()) r.push_back(tokenize(line));
  if (c.size() != r.size()) throw Error("metrics", "bleu: line count mismatch");
  return bleu(c, r);
}

// --- polarity ----------------------------------------------------------

// Word polarity lexicon: word -> {-1, 0, +1}.
class PolarityLexicon {
 public:
  void add(const std::string& word, int score) {
    if (score < -1 || score > 1) throw Error("metrics", "polarity score out of range: " + word);
    table_[str::lower(word)] = score;
  }

  // Tab-separated lines: word <tab> -1|0|1. '#' comments allowed.
  static PolarityLexicon load(const std::string& path) {
    PolarityLexicon lex;
    std::string text = read_file(path);
    std::size_t lineno = 0;
    for (const auto& raw : str::split(text, '\n')) {
      ++lineno;
      std::string line = str::trim(raw);
      if (line.empty() || line[0] == '#') continue;
      auto cols = str::split(line, '\t');
      if (cols.size() != 2)
        throw Error("metrics", "polarity line " + std::to_string(lineno) + ": want 2 columns");
      try {
        lex.add(str::trim(cols[0]), std::stoi(str::trim(cols[1])));
      } catch (const Error&) {
        throw;
      } catch (const std::exception&) {
        throw Error("metrics", "polarity line " + std::to_string(lineno) + ": bad score");
      }
    }
    return lex;
  }

  // -1 / 0 / +1. Case-folded lookup with a plural-stripping lemma
  // fallback; unknown words count as neutral.
  int score(const std::string& word) const {
    std::string w = str::lower(word);
    auto it = table_.find(w);
    if (it == table_.end() && w.size() > 1 && w.back() == 's')
      it = table_.find(w.substr(0, w.size() - 1));
    return it == table_.end() ? 0 : it->second;
  }

  bool contains(const std::string& word) const {
    return table_.find(str::lower(word)) != table_.end();
  }

  std::size_t size() const { return table_.size(); }

 private:
  std::map<std::string, int> table_;
};

struct PolarityReport {
  bool empty = true;
  std::size_t tokens = 0;
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t neutral = 0;
  double positive_pct = 0.0;
  double negative_pct = 0.0;
  double neutral_pct = 0.0;
  std::vector<std::pair<std::string, int>> words;  // per-word classification
};

inline PolarityReport polarity(const std::vector<std::string>& words,
                               const PolarityLexicon& lex) {
  PolarityReport r;
  for (const auto& w : words) {
    ++r.tokens;
    int s = lex.score(w);
    r.words.emplace_back(w, s);
    if (s > 0)
      ++r.positive;
    else if (s < 0)
      ++r.negative;
    else
      ++r.neutral;
  }
  if (r.tokens > 0) {
    r.empty = false;
    double n = static_cast<double>(r.tokens);
    r.positive_pct = 100.0 * static_cast<double>(r.positive) / n;
    r.negative_pct = 100.0 * static_cast<double>(r.negative) / n;
    r.neutral_pct = 100.0 * static_cast<double>(r.neutral) / n;
  }
  return r;
}

inline PolarityReport polarity_text(const std::string& text, const PolarityLexicon& lex) {
  return polarity(tokenize(text), lex);
}

// --- word frequencies ----------------------------------------------------

// Counts sorted by descending frequency, ties alphabetical.
inline std::vector<std::pair<std::string, std::size_t>> word_frequencies(
    const std::string& text) {
  std::map<std::string, std::size_t> counts;
  for (const auto& tok : tokenize(text)) ++counts[tok];
  std::vector<std::pair<std::string, std::size_t>> out(counts.begin(), counts.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

inline std::string frequencies_csv(
    const std::vector<std::pair<std::string, std::size_t>>& freqs) {
  std::string out = "word,count\n";
  for (const auto& [w, c] : freqs) out += w + "," + std::to_string(c) + "\n";
  return out;
}

}  // namespace fabler
