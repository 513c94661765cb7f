#include "placto/plactic.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "json.hpp"

#include "placto/errors.hpp"

namespace placto::plactic {

namespace {

void require_type_a(const CrystalType& type) {
  if (type.family() != crystal::Family::A) {
    throw DomainError("tableaux are implemented for type A only");
  }
}

void check_letter(int rank, Letter x) {
  if (x.value < 1 || x.value > rank + 1) {
    throw DomainError("letter " + std::to_string(x.value) + " is not in A" +
                      std::to_string(rank));
  }
}

}  // namespace

Tableau::Tableau(int rank, std::vector<LetterWord> columns)
    : rank_(rank), columns_(std::move(columns)) {
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    const auto& col = columns_[c];
    if (col.empty()) {
      throw DomainError("tableau columns must be non-empty");
    }
    if (!is_column(col)) {
      throw DomainError("tableau column is not strictly increasing");
    }
    for (auto x : col) {
      check_letter(rank_, x);
    }
    if (c > 0) {
      const auto& prev = columns_[c - 1];
      if (col.size() > prev.size()) {
        throw DomainError("tableau column lengths must weakly decrease");
      }
      for (std::size_t r = 0; r < col.size(); ++r) {
        if (prev[r] > col[r]) {
          throw DomainError("tableau rows must weakly increase");
        }
      }
    }
  }
}

std::vector<LetterWord> Tableau::rows() const {
  std::vector<LetterWord> out;
  for (const auto& col : columns_) {
    for (std::size_t r = 0; r < col.size(); ++r) {
      if (out.size() <= r) {
        out.emplace_back();
      }
      out[r].push_back(col[r]);
    }
  }
  return out;
}

std::size_t Tableau::size() const noexcept {
  std::size_t n = 0;
  for (const auto& col : columns_) {
    n += col.size();
  }
  return n;
}

bool is_column(const LetterWord& w) {
  return std::adjacent_find(w.begin(), w.end(), [](Letter a, Letter b) {
           return !(a < b);
         }) == w.end();
}

std::vector<LetterWord> enumerate_columns(const CrystalType& type) {
  require_type_a(type);
  auto n = type.letters().size();
  std::vector<LetterWord> out;
  // Each length k: the k-subsets of {1..n} in lexicographic order.
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<int> pick(k);
    for (std::size_t j = 0; j < k; ++j) {
      pick[j] = static_cast<int>(j + 1);
    }
    for (;;) {
      LetterWord col;
      for (int v : pick) {
        col.push_back(Letter{v});
      }
      out.push_back(std::move(col));
      std::size_t j = k;
      while (j > 0 && pick[j - 1] == static_cast<int>(n - k + j)) {
        --j;
      }
      if (j == 0) {
        break;
      }
      ++pick[j - 1];
      for (std::size_t m = j; m < k; ++m) {
        pick[m] = pick[m - 1] + 1;
      }
    }
  }
  return out;
}

LetterWord read_columns(const Tableau& t) {
  LetterWord w;
  for (auto it = t.columns().rbegin(); it != t.columns().rend(); ++it) {
    w.insert(w.end(), it->begin(), it->end());
  }
  return w;
}

Tableau insert(Letter x, const Tableau& t) {
  check_letter(t.rank(), x);
  Tableau out = t;
  auto& cols = out.columns_;
  // Bump down the columns: x either ends a column or replaces the smallest
  // entry >= x, which moves on to the next column.
  for (std::size_t c = 0;; ++c) {
    if (c == cols.size()) {
      cols.push_back(LetterWord{x});
      return out;
    }
    auto& col = cols[c];
    if (x > col.back()) {
      col.push_back(x);
      return out;
    }
    auto it = std::lower_bound(col.begin(), col.end(), x);
    std::swap(x, *it);
  }
}

Tableau p_tableau(const CrystalType& type, const LetterWord& w) {
  require_type_a(type);
  Tableau t(type.rank());
  for (auto x : w) {
    t = insert(x, t);
  }
  return t;
}

Tableau product(const Tableau& t1, const Tableau& t2) {
  if (t1.rank() != t2.rank()) {
    throw DomainError("tableau product needs equal ranks");
  }
  LetterWord w = read_columns(t2);
  auto tail = read_columns(t1);
  w.insert(w.end(), tail.begin(), tail.end());
  Tableau out(t1.rank());
  for (auto x : w) {
    out = insert(x, out);
  }
  return out;
}

bool plactic_equiv(const CrystalType& type, const LetterWord& w1,
                   const LetterWord& w2) {
  type.check_word(w1);
  type.check_word(w2);
  if (w1.size() != w2.size()) {
    return false;
  }
  auto h1 = crystal::to_highest_weight(type, w1);
  auto h2 = crystal::to_highest_weight(type, w2);
  if (crystal::weight(type, h1.word) != crystal::weight(type, h2.word)) {
    return false;
  }
  auto image = crystal::replay_lowering(type, h2.word, h1.path);
  return image && *image == w2;
}

bool knuth_oracle_equiv(const LetterWord& w1, const LetterWord& w2,
                        std::size_t max_length) {
  if (w1.size() > max_length || w2.size() > max_length) {
    throw ResourceError("Knuth closure limited to words of length " +
                            std::to_string(max_length),
                        std::max(w1.size(), w2.size()));
  }
  if (w1.size() != w2.size()) {
    return false;
  }
  std::set<LetterWord> seen{w1};
  std::deque<LetterWord> queue{w1};
  while (!queue.empty()) {
    auto w = std::move(queue.front());
    queue.pop_front();
    if (w == w2) {
      return true;
    }
    for (std::size_t k = 0; k + 2 < w.size(); ++k) {
      int a = w[k].value;
      int b = w[k + 1].value;
      int c = w[k + 2].value;
      auto push = [&](int p, int q, int r) {
        auto v = w;
        v[k] = Letter{p};
        v[k + 1] = Letter{q};
        v[k + 2] = Letter{r};
        if (seen.insert(v).second) {
          queue.push_back(std::move(v));
        }
      };
      // a b c read as x z y, and as z x y
      if (a < c && c <= b) push(b, a, c);
      if (b < c && c <= a) push(b, a, c);
      // a b c read as y x z, and as y z x
      if (b <= a && a < c) push(a, c, b);
      if (c <= a && a < b) push(a, c, b);
    }
  }
  return false;
}

std::string tableau_to_json(const Tableau& t) {
  nlohmann::json cols = nlohmann::json::array();
  for (const auto& col : t.columns()) {
    nlohmann::json c = nlohmann::json::array();
    for (auto x : col) {
      c.push_back(x.value);
    }
    cols.push_back(std::move(c));
  }
  nlohmann::json j{{"schema_version", 1}, {"rank", t.rank()}, {"columns", cols}};
  return j.dump();
}

Tableau tableau_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("tableau JSON: ") + e.what());
  }
  try {
    // Bare list of columns, or an object with a rank.
    const auto& cols = j.is_array() ? j : j.at("columns");
    std::vector<LetterWord> columns;
    int max_letter = 1;
    for (const auto& c : cols) {
      LetterWord col;
      for (const auto& x : c) {
        col.push_back(Letter{x.get<int>()});
        max_letter = std::max(max_letter, x.get<int>());
      }
      columns.push_back(std::move(col));
    }
    int rank = j.is_object() && j.contains("rank") ? j.at("rank").get<int>()
                                                   : std::max(1, max_letter - 1);
    return Tableau(rank, std::move(columns));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("tableau JSON: ") + e.what());
  }
}

std::string pretty(const Tableau& t) {
  std::string out;
  for (const auto& row : t.rows()) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      out += (k ? " " : "") + std::to_string(row[k].value);
    }
    out += '\n';
  }
  return out;
}

}  // namespace placto::plactic
