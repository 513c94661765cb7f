#pragma once

// Independent reference computations used as test oracles. None of these call
// the code they are compared against beyond the base-crystal edge tables.

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "placto/crystal.hpp"
#include "placto/rewriting.hpp"

namespace oracle {

using placto::crystal::CrystalType;
using placto::crystal::Label;
using placto::crystal::Letter;
using placto::crystal::LetterWord;
using placto::crystal::Op;

inline CrystalType type_a(int rank) {
  return CrystalType::make(placto::crystal::Family::A, rank);
}

inline LetterWord word(const CrystalType& t, std::string_view s) {
  return placto::crystal::parse_word(t, s);
}

// ---------------------------------------------------------------------------
// Tensor rule on an arbitrary bracketing, from the string lengths
//   eps(u (x) v) = eps(u) + max(0, eps(v) - phi(u))
//   phi(u (x) v) = phi(v) + max(0, phi(u) - eps(v))
// with letter-level strings measured by walking the base edges.

using Split = std::function<std::size_t(std::size_t, std::size_t)>;

inline Split right_nested() {
  return [](std::size_t lo, std::size_t) { return lo + 1; };
}
inline Split left_nested() {
  return [](std::size_t, std::size_t hi) { return hi - 1; };
}
inline Split balanced() {
  return [](std::size_t lo, std::size_t hi) { return lo + (hi - lo) / 2; };
}

inline int letter_string(const CrystalType& t, Letter x, Label i, Op op) {
  int n = 0;
  while (auto y = t.apply(x, i, op)) {
    x = *y;
    ++n;
  }
  return n;
}

struct EpsPhi {
  int eps;
  int phi;
};

inline EpsPhi eps_phi(const CrystalType& t, const LetterWord& w, std::size_t lo,
                      std::size_t hi, Label i, const Split& split) {
  if (hi - lo == 1) {
    return {letter_string(t, w[lo], i, Op::raise), letter_string(t, w[lo], i, Op::lower)};
  }
  auto m = split(lo, hi);
  auto a = eps_phi(t, w, lo, m, i, split);
  auto b = eps_phi(t, w, m, hi, i, split);
  return {a.eps + std::max(0, b.eps - a.phi), b.phi + std::max(0, a.phi - b.eps)};
}

inline std::optional<std::size_t> act_at(const CrystalType& t, const LetterWord& w,
                                         std::size_t lo, std::size_t hi, Label i,
                                         Op op, const Split& split) {
  if (hi - lo == 1) {
    if (!t.apply(w[lo], i, op)) return std::nullopt;
    return lo;
  }
  auto m = split(lo, hi);
  auto a = eps_phi(t, w, lo, m, i, split);
  auto b = eps_phi(t, w, m, hi, i, split);
  bool left = op == Op::lower ? a.phi > b.eps : a.phi >= b.eps;
  return left ? act_at(t, w, lo, m, i, op, split) : act_at(t, w, m, hi, i, op, split);
}

inline std::optional<LetterWord> tensor_op(const CrystalType& t, const LetterWord& w,
                                           Label i, Op op, const Split& split) {
  if (w.empty()) return std::nullopt;
  auto p = act_at(t, w, 0, w.size(), i, op, split);
  if (!p) return std::nullopt;
  auto out = w;
  out[*p] = *t.apply(w[*p], i, op);
  return out;
}

// ---------------------------------------------------------------------------
// Weyl dimension formula for A_n, weight as a partition of length n + 1.

inline long weyl_dimension_a(const std::vector<int>& lambda) {
  long num = 1;
  long den = 1;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    for (std::size_t j = i + 1; j < lambda.size(); ++j) {
      num *= lambda[i] - lambda[j] + static_cast<long>(j - i);
      den *= static_cast<long>(j - i);
    }
  }
  return num / den;
}

// ---------------------------------------------------------------------------
// Classical Schensted row insertion; rows top to bottom.

inline std::vector<std::vector<int>> row_insert_all(const std::vector<int>& w) {
  std::vector<std::vector<int>> rows;
  for (int x : w) {
    for (std::size_t r = 0;; ++r) {
      if (r == rows.size()) {
        rows.push_back({x});
        break;
      }
      auto it = std::upper_bound(rows[r].begin(), rows[r].end(), x);
      if (it == rows[r].end()) {
        rows[r].push_back(x);
        break;
      }
      std::swap(x, *it);
    }
  }
  return rows;
}

// Columns c1 (left) c2 (right) of a type A tableau, as plain sorted vectors:
// reading right to left gives c2 c1.
inline bool is_tableau_pair(const std::vector<int>& left, const std::vector<int>& right) {
  if (right.size() > left.size()) return false;
  for (std::size_t r = 0; r < right.size(); ++r) {
    if (left[r] > right[r]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Critical branchings by brute force: every pair of distinct overlapping
// occurrences in every word short enough to hold two left-hand sides, kept
// when the two redexes cover the word.

using BranchKey = std::tuple<placto::rewriting::Word, std::size_t, std::size_t,
                             std::size_t, std::size_t>;

inline std::set<BranchKey> brute_force_criticals(const placto::rewriting::Presentation& p) {
  using placto::rewriting::Word;
  std::size_t longest = 0;
  for (const auto& r : p.rules()) longest = std::max(longest, r.lhs.size());
  std::set<BranchKey> out;
  auto n = p.generators().size();
  for (std::size_t len = 1; len < 2 * longest; ++len) {
    Word w(len, 0);
    for (;;) {
      std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> occ;  // pos, rule, end
      for (std::size_t pos = 0; pos < len; ++pos) {
        for (std::size_t r = 0; r < p.rules().size(); ++r) {
          const auto& l = p.rules()[r].lhs;
          if (pos + l.size() <= len && std::equal(l.begin(), l.end(), w.begin() + pos)) {
            occ.emplace_back(pos, r, pos + l.size());
          }
        }
      }
      for (std::size_t a = 0; a < occ.size(); ++a) {
        for (std::size_t b = a + 1; b < occ.size(); ++b) {
          auto [p1, r1, e1] = occ[a];
          auto [p2, r2, e2] = occ[b];
          bool overlapping = p2 < e1 && p1 < e2;
          bool covers = std::min(p1, p2) == 0 && std::max(e1, e2) == len;
          if (overlapping && covers) {
            out.emplace(w, p1, r1, p2, r2);
          }
        }
      }
      std::size_t k = len;
      while (k > 0 && w[k - 1] + 1 == n) w[--k] = 0;
      if (k == 0) break;
      ++w[k - 1];
    }
  }
  return out;
}

inline std::set<BranchKey> keys_of(const placto::rewriting::Presentation& p,
                                   const std::vector<placto::rewriting::Branching>& bs) {
  std::set<BranchKey> out;
  for (const auto& b : bs) {
    out.emplace(placto::rewriting::source(p, b), b.first.position(), b.first.rule,
                b.second.position(), b.second.rule);
  }
  return out;
}

}  // namespace oracle
