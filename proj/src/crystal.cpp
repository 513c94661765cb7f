#include "placto/crystal.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <sstream>

#include "placto/errors.hpp"

namespace placto::crystal {

namespace {

Weight unit(std::size_t dim, int k, int sign = 1) {
  Weight w(dim, 0);
  w[static_cast<std::size_t>(k - 1)] = sign;
  return w;
}

Weight add(Weight a, const Weight& b, int scale = 1) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    a[j] += scale * b[j];
  }
  return a;
}

struct Tables {
  std::vector<Letter> letters;
  std::vector<BaseEdge> edges;
  std::vector<Weight> weights;
  std::vector<Weight> roots;
  std::vector<Weight> coroots;
};

// Weights in the epsilon basis: wt(k) = e_k, wt(k-bar) = -e_k, wt(0) = 0.
Weight epsilon_weight(std::size_t dim, Letter x) {
  if (x.value == 0) {
    return Weight(dim, 0);
  }
  return x.value > 0 ? unit(dim, x.value) : unit(dim, -x.value, -1);
}

Tables tables_for(Family family, int n) {
  Tables t;
  auto L = [](int v) { return Letter{v}; };
  switch (family) {
    case Family::A: {
      auto dim = static_cast<std::size_t>(n + 1);
      for (int k = 1; k <= n + 1; ++k) {
        t.letters.push_back(L(k));
        t.weights.push_back(unit(dim, k));
      }
      for (int k = 1; k <= n; ++k) {
        t.edges.push_back({L(k), k, L(k + 1)});
        t.roots.push_back(add(unit(dim, k), unit(dim, k + 1), -1));
        t.coroots.push_back(t.roots.back());
      }
      return t;
    }
    case Family::B:
    case Family::C:
    case Family::D: {
      auto dim = static_cast<std::size_t>(n);
      for (int k = 1; k <= n; ++k) {
        t.letters.push_back(L(k));
      }
      if (family == Family::B) {
        t.letters.push_back(L(0));
      }
      for (int k = n; k >= 1; --k) {
        t.letters.push_back(L(-k));
      }
      for (auto x : t.letters) {
        t.weights.push_back(epsilon_weight(dim, x));
      }
      int chain = family == Family::D ? n - 1 : n;
      for (int k = 1; k < chain; ++k) {
        t.edges.push_back({L(k), k, L(k + 1)});
        t.edges.push_back({L(-(k + 1)), k, L(-k)});
      }
      for (int k = 1; k < n; ++k) {
        t.roots.push_back(add(unit(dim, k), unit(dim, k + 1), -1));
        t.coroots.push_back(t.roots.back());
      }
      if (family == Family::B) {
        // n -> 0 -> n-bar, both labelled n.
        t.edges.push_back({L(n), n, L(0)});
        t.edges.push_back({L(0), n, L(-n)});
        t.roots.push_back(unit(dim, n));
        t.coroots.push_back(unit(dim, n, 2));
      } else if (family == Family::C) {
        t.edges.push_back({L(n), n, L(-n)});
        t.roots.push_back(unit(dim, n, 2));
        t.coroots.push_back(unit(dim, n));
      } else {
        // The fork at n-1: through n by label n-1 and through n-bar by
        // label n, rejoining at (n-1)-bar.
        t.edges.push_back({L(n - 1), n - 1, L(n)});
        t.edges.push_back({L(-n), n - 1, L(-(n - 1))});
        t.edges.push_back({L(n - 1), n, L(-n)});
        t.edges.push_back({L(n), n, L(-(n - 1))});
        t.roots.push_back(add(unit(dim, n - 1), unit(dim, n)));
        t.coroots.push_back(t.roots.back());
      }
      return t;
    }
    case Family::G2: {
      // Fundamental-weight coordinates (<wt, a1^v>, <wt, a2^v>).
      t.letters = {L(1), L(2), L(3), L(0), L(-3), L(-2), L(-1)};
      t.weights = {{1, 0}, {-1, 1}, {2, -1}, {0, 0}, {-2, 1}, {1, -1}, {-1, 0}};
      t.edges = {{L(1), 1, L(2)},  {L(2), 2, L(3)},   {L(3), 1, L(0)},
                 {L(0), 1, L(-3)}, {L(-3), 2, L(-2)}, {L(-2), 1, L(-1)}};
      t.roots = {{2, -1}, {-3, 2}};
      t.coroots = {{1, 0}, {0, 1}};
      return t;
    }
  }
  throw DomainError("unknown crystal family");
}

}  // namespace

CrystalType CrystalType::make(Family family, int rank) {
  if (rank < 1) {
    throw DomainError("rank must be positive");
  }
  if (family == Family::G2 && rank != 2) {
    throw DomainError("G2 has rank 2");
  }
  if (family == Family::D && rank < 2) {
    throw DomainError("type D requires rank >= 2");
  }
  auto t = tables_for(family, rank);
  return CrystalType(family, rank, std::move(t.letters), t.edges,
                     std::move(t.weights), std::move(t.roots),
                     std::move(t.coroots));
}

CrystalType::CrystalType(Family family, int rank, std::vector<Letter> letters,
                         const std::vector<BaseEdge>& edges,
                         std::vector<Weight> letter_weights,
                         std::vector<Weight> simple_roots,
                         std::vector<Weight> simple_coroots)
    : family_(family),
      rank_(rank),
      letters_(std::move(letters)),
      weights_(std::move(letter_weights)),
      roots_(std::move(simple_roots)),
      coroots_(std::move(simple_coroots)) {
  if (rank_ < 1 || letters_.empty()) {
    throw DomainError("crystal needs a positive rank and at least one letter");
  }
  if (weights_.size() != letters_.size() ||
      roots_.size() != static_cast<std::size_t>(rank_) ||
      coroots_.size() != roots_.size()) {
    throw DomainError("crystal tables have inconsistent sizes");
  }
  weight_dim_ = weights_.front().size();
  for (const auto* table : {&weights_, &roots_, &coroots_}) {
    for (const auto& w : *table) {
      if (w.size() != weight_dim_) {
        throw DomainError("weight vectors must share one dimension");
      }
    }
  }

  auto [lo, hi] = std::minmax_element(letters_.begin(), letters_.end());
  min_value_ = lo->value;
  index_.assign(static_cast<std::size_t>(hi->value - lo->value + 1), -1);
  for (std::size_t k = 0; k < letters_.size(); ++k) {
    auto& slot_ref = index_[static_cast<std::size_t>(letters_[k].value - min_value_)];
    if (slot_ref != -1) {
      throw DomainError("duplicate letter " + format_letter(letters_[k]));
    }
    slot_ref = static_cast<int>(k);
  }

  auto n = letters_.size();
  auto r = static_cast<std::size_t>(rank_);
  lower_.assign(r, std::vector<int>(n, -1));
  raise_.assign(r, std::vector<int>(n, -1));
  for (const auto& e : edges) {
    if (!valid_label(e.label)) {
      throw DomainError("edge label out of range");
    }
    int s = index_of(e.source);
    int d = index_of(e.target);
    if (s < 0 || d < 0) {
      throw DomainError("edge endpoint outside the letter set");
    }
    auto li = static_cast<std::size_t>(e.label - 1);
    auto& out = lower_[li][static_cast<std::size_t>(s)];
    auto& in = raise_[li][static_cast<std::size_t>(d)];
    if (out != -1 || in != -1) {
      throw DomainError("two " + std::to_string(e.label) +
                        "-edges share an endpoint");
    }
    out = d;
    in = s;
  }

  // String lengths; a walk longer than the letter count means an i-cycle.
  epsilon_.assign(r, std::vector<int>(n, 0));
  phi_.assign(r, std::vector<int>(n, 0));
  for (std::size_t li = 0; li < r; ++li) {
    for (std::size_t k = 0; k < n; ++k) {
      for (int cur = lower_[li][k]; cur != -1; cur = lower_[li][static_cast<std::size_t>(cur)]) {
        if (++phi_[li][k] > static_cast<int>(n)) {
          throw DomainError("infinite i-string in base crystal");
        }
      }
      for (int cur = raise_[li][k]; cur != -1; cur = raise_[li][static_cast<std::size_t>(cur)]) {
        if (++epsilon_[li][k] > static_cast<int>(n)) {
          throw DomainError("infinite i-string in base crystal");
        }
      }
    }
  }

  // Longest path over all labels; the graph has no cycles when every weight
  // strictly decreases along edges, but custom tables need not, so cap it.
  std::vector<int> longest(n, 0);
  for (std::size_t pass = 0; pass < n; ++pass) {
    bool changed = false;
    for (std::size_t li = 0; li < r; ++li) {
      for (std::size_t k = 0; k < n; ++k) {
        int d = lower_[li][k];
        if (d != -1 && longest[static_cast<std::size_t>(d)] < longest[k] + 1) {
          longest[static_cast<std::size_t>(d)] = longest[k] + 1;
          changed = true;
        }
      }
    }
    if (!changed) {
      break;
    }
  }
  depth_ = std::max(1, *std::max_element(longest.begin(), longest.end()));
}

std::string CrystalType::name() const {
  return family_name(family_) + (family_ == Family::G2 ? "" : std::to_string(rank_));
}

std::vector<Label> CrystalType::labels() const {
  std::vector<Label> out;
  for (Label i = 1; i <= rank_; ++i) {
    out.push_back(i);
  }
  return out;
}

int CrystalType::index_of(Letter x) const noexcept {
  int off = x.value - min_value_;
  if (off < 0 || off >= static_cast<int>(index_.size())) {
    return -1;
  }
  return index_[static_cast<std::size_t>(off)];
}

std::size_t CrystalType::slot(Letter x) const {
  int k = index_of(x);
  if (k < 0) {
    throw DomainError("letter " + format_letter(x) + " is not in " + name());
  }
  return static_cast<std::size_t>(k);
}

void CrystalType::check_label(Label i) const {
  if (!valid_label(i)) {
    throw DomainError("label " + std::to_string(i) + " is not in 1.." +
                      std::to_string(rank_));
  }
}

void CrystalType::check_letter(Letter x) const { slot(x); }

void CrystalType::check_word(const LetterWord& w) const {
  for (auto x : w) {
    slot(x);
  }
}

std::optional<Letter> CrystalType::apply(Letter x, Label i, Op op) const {
  check_label(i);
  auto li = static_cast<std::size_t>(i - 1);
  int d = (op == Op::lower ? lower_ : raise_)[li][slot(x)];
  if (d < 0) {
    return std::nullopt;
  }
  return letters_[static_cast<std::size_t>(d)];
}

int CrystalType::letter_epsilon(Letter x, Label i) const {
  check_label(i);
  return epsilon_[static_cast<std::size_t>(i - 1)][slot(x)];
}

int CrystalType::letter_phi(Letter x, Label i) const {
  check_label(i);
  return phi_[static_cast<std::size_t>(i - 1)][slot(x)];
}

const Weight& CrystalType::letter_weight(Letter x) const {
  return weights_[slot(x)];
}

const Weight& CrystalType::simple_root(Label i) const {
  check_label(i);
  return roots_[static_cast<std::size_t>(i - 1)];
}

const Weight& CrystalType::simple_coroot(Label i) const {
  check_label(i);
  return coroots_[static_cast<std::size_t>(i - 1)];
}

std::vector<BaseEdge> CrystalType::edges() const {
  std::vector<BaseEdge> out;
  for (std::size_t li = 0; li < lower_.size(); ++li) {
    for (std::size_t k = 0; k < letters_.size(); ++k) {
      int d = lower_[li][k];
      if (d >= 0) {
        out.push_back({letters_[k], static_cast<Label>(li + 1),
                       letters_[static_cast<std::size_t>(d)]});
      }
    }
  }
  return out;
}

Family parse_family(std::string_view name) {
  std::string up;
  for (char c : name) {
    up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  if (up == "A") return Family::A;
  if (up == "B") return Family::B;
  if (up == "C") return Family::C;
  if (up == "D") return Family::D;
  if (up == "G2" || up == "G") return Family::G2;
  throw DomainError("unknown crystal family '" + std::string(name) + "'");
}

std::string family_name(Family family) {
  switch (family) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::G2: return "G2";
  }
  return "?";
}

namespace {

bool contiguous_encoding(const CrystalType& type) {
  return type.family() == Family::A && type.letters().size() <= 9;
}

Letter parse_letter_token(std::string_view tok) {
  std::size_t k = 0;
  bool neg = false;
  if (k < tok.size() && (tok[k] == '-' || tok[k] == '+')) {
    neg = tok[k] == '-';
    ++k;
  }
  if (k == tok.size()) {
    throw DomainError("malformed letter '" + std::string(tok) + "'");
  }
  int v = 0;
  for (; k < tok.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(tok[k])) || v > 100000) {
      throw DomainError("malformed letter '" + std::string(tok) + "'");
    }
    v = v * 10 + (tok[k] - '0');
  }
  return Letter{neg ? -v : v};
}

}  // namespace

LetterWord parse_word(const CrystalType& type, std::string_view text) {
  LetterWord w;
  std::size_t k = 0;
  while (k < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[k]))) {
      ++k;
      continue;
    }
    std::size_t end = k;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) {
      ++end;
    }
    auto tok = text.substr(k, end - k);
    bool digits = std::all_of(tok.begin(), tok.end(), [](char c) {
      return std::isdigit(static_cast<unsigned char>(c)) != 0;
    });
    if (digits && contiguous_encoding(type)) {
      for (char c : tok) {
        w.push_back(Letter{c - '0'});
      }
    } else {
      w.push_back(parse_letter_token(tok));
    }
    k = end;
  }
  type.check_word(w);
  return w;
}

std::string format_letter(Letter x) { return std::to_string(x.value); }

std::string format_word(const CrystalType& type, const LetterWord& w) {
  std::string out;
  bool contiguous = contiguous_encoding(type);
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (!contiguous && k > 0) {
      out.push_back(' ');
    }
    out += format_letter(w[k]);
  }
  return out;
}

std::string format_weight(const Weight& w) {
  std::string out = "(";
  for (std::size_t k = 0; k < w.size(); ++k) {
    out += (k ? "," : "") + std::to_string(w[k]);
  }
  return out + ")";
}

// ---------------------------------------------------------------------------

namespace {

struct Signature {
  std::vector<std::size_t> unmatched_minus;  // left to right
  std::vector<std::size_t> unmatched_plus;   // left to right
};

Signature signature(const CrystalType& type, const LetterWord& w, Label i) {
  type.check_label(i);
  Signature s;
  for (std::size_t p = 0; p < w.size(); ++p) {
    int minus = type.letter_epsilon(w[p], i);
    int plus = type.letter_phi(w[p], i);
    for (int m = 0; m < minus; ++m) {
      if (!s.unmatched_plus.empty()) {
        s.unmatched_plus.pop_back();
      } else {
        s.unmatched_minus.push_back(p);
      }
    }
    for (int m = 0; m < plus; ++m) {
      s.unmatched_plus.push_back(p);
    }
  }
  return s;
}

}  // namespace

std::optional<std::size_t> acting_position(const CrystalType& type,
                                           const LetterWord& w, Label i, Op op) {
  auto s = signature(type, w, i);
  if (op == Op::lower) {
    if (s.unmatched_plus.empty()) return std::nullopt;
    return s.unmatched_plus.front();
  }
  if (s.unmatched_minus.empty()) return std::nullopt;
  return s.unmatched_minus.back();
}

std::optional<LetterWord> word_op(const CrystalType& type, const LetterWord& w,
                                  Label i, Op op) {
  auto p = acting_position(type, w, i, op);
  if (!p) {
    return std::nullopt;
  }
  auto x = type.apply(w[*p], i, op);
  if (!x) {
    throw InternalError("signature selected a letter at the end of its string");
  }
  LetterWord out = w;
  out[*p] = *x;
  return out;
}

namespace {

int iterate_count(const CrystalType& type, LetterWord w, Label i, Op op) {
  int n = 0;
  while (auto next = word_op_recursive(type, w, i, op)) {
    w = std::move(*next);
    ++n;
  }
  return n;
}

}  // namespace

std::optional<LetterWord> word_op_recursive(const CrystalType& type,
                                            const LetterWord& w, Label i, Op op) {
  type.check_label(i);
  if (w.empty()) {
    return std::nullopt;
  }
  if (w.size() == 1) {
    auto x = type.apply(w[0], i, op);
    if (!x) return std::nullopt;
    return LetterWord{*x};
  }
  LetterWord u(w.begin(), w.end() - 1);
  Letter v = w.back();
  int phi_u = iterate_count(type, u, i, Op::lower);
  int eps_v = type.letter_epsilon(v, i);
  bool on_left = op == Op::lower ? phi_u > eps_v : phi_u >= eps_v;
  if (on_left) {
    auto u2 = word_op_recursive(type, u, i, op);
    if (!u2) return std::nullopt;
    u2->push_back(v);
    return u2;
  }
  auto v2 = type.apply(v, i, op);
  if (!v2) return std::nullopt;
  u.push_back(*v2);
  return u;
}

int epsilon(const CrystalType& type, const LetterWord& w, Label i) {
  type.check_word(w);
  return static_cast<int>(signature(type, w, i).unmatched_minus.size());
}

int phi(const CrystalType& type, const LetterWord& w, Label i) {
  type.check_word(w);
  return static_cast<int>(signature(type, w, i).unmatched_plus.size());
}

Weight weight(const CrystalType& type, const LetterWord& w) {
  Weight out(type.weight_dimension(), 0);
  for (auto x : w) {
    out = add(std::move(out), type.letter_weight(x));
  }
  return out;
}

int pairing(const Weight& weight, const Weight& coroot) {
  int s = 0;
  for (std::size_t j = 0; j < weight.size() && j < coroot.size(); ++j) {
    s += weight[j] * coroot[j];
  }
  return s;
}

bool is_highest_weight(const CrystalType& type, const LetterWord& w) {
  for (Label i = 1; i <= type.rank(); ++i) {
    if (acting_position(type, w, i, Op::raise)) {
      return false;
    }
  }
  return true;
}

HighestWeight to_highest_weight(const CrystalType& type, const LetterWord& w) {
  type.check_word(w);
  HighestWeight hw{w, {}};
  // Each e_i moves one letter one edge back in the base crystal.
  std::size_t cap = w.size() * static_cast<std::size_t>(type.depth());
  for (;;) {
    bool moved = false;
    for (Label i = 1; i <= type.rank(); ++i) {
      if (auto next = word_op(type, hw.word, i, Op::raise)) {
        hw.word = std::move(*next);
        hw.path.ops.push_back(i);
        moved = true;
        break;
      }
    }
    if (!moved) {
      return hw;
    }
    if (hw.path.ops.size() > cap) {
      throw InternalError("raising path exceeded " + std::to_string(cap) +
                          " steps on " + format_word(type, w));
    }
  }
}

std::optional<LetterWord> replay_lowering(const CrystalType& type,
                                          const LetterWord& w,
                                          const RaisingPath& path) {
  LetterWord cur = w;
  for (auto it = path.ops.rbegin(); it != path.ops.rend(); ++it) {
    auto next = word_op(type, cur, *it, Op::lower);
    if (!next) {
      return std::nullopt;
    }
    cur = std::move(*next);
  }
  return cur;
}

// ---------------------------------------------------------------------------

ComponentGraph connected_component(const CrystalType& type, const LetterWord& w,
                                   std::size_t cap) {
  type.check_word(w);
  ComponentGraph g;
  std::map<LetterWord, std::size_t> seen;
  std::deque<std::size_t> frontier;
  auto visit = [&](const LetterWord& v) -> std::size_t {
    auto [it, fresh] = seen.emplace(v, g.vertices.size());
    if (fresh) {
      if (g.vertices.size() >= cap) {
        throw ResourceError("component exceeds cap of " + std::to_string(cap) +
                                " vertices",
                            g.vertices.size());
      }
      g.vertices.push_back(v);
      frontier.push_back(it->second);
    }
    return it->second;
  };
  visit(w);
  while (!frontier.empty()) {
    auto at = frontier.front();
    frontier.pop_front();
    for (Label i = 1; i <= type.rank(); ++i) {
      LetterWord cur = g.vertices[at];
      if (auto down = word_op(type, cur, i, Op::lower)) {
        auto to = visit(*down);
        g.edges.push_back({at, to, i});
      }
      if (auto up = word_op(type, cur, i, Op::raise)) {
        visit(*up);
      }
    }
  }
  std::sort(g.edges.begin(), g.edges.end(), [](const auto& a, const auto& b) {
    return std::tie(a.source, a.label, a.target) < std::tie(b.source, b.label, b.target);
  });
  return g;
}

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string component_to_dot(const CrystalType& type, const ComponentGraph& g) {
  std::ostringstream out;
  out << "digraph component {\n";
  for (std::size_t k = 0; k < g.vertices.size(); ++k) {
    out << "  v" << k << " [label=\"" << json_escape(format_word(type, g.vertices[k]))
        << "\"];\n";
  }
  for (const auto& e : g.edges) {
    out << "  v" << e.source << " -> v" << e.target << " [label=\"" << e.label
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string component_to_json(const CrystalType& type, const ComponentGraph& g) {
  std::ostringstream out;
  out << "{\"schema_version\":1,\"vertices\":[";
  for (std::size_t k = 0; k < g.vertices.size(); ++k) {
    out << (k ? "," : "") << '"' << json_escape(format_word(type, g.vertices[k])) << '"';
  }
  out << "],\"edges\":[";
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    const auto& e = g.edges[k];
    out << (k ? "," : "") << "{\"src\":" << e.source << ",\"dst\":" << e.target
        << ",\"label\":" << e.label << '}';
  }
  out << "]}";
  return out.str();
}

// ---------------------------------------------------------------------------

std::vector<AxiomViolation> check_axioms(const CrystalType& type,
                                         const std::vector<LetterWord>& words) {
  std::vector<AxiomViolation> out;
  auto report = [&](const char* axiom, const LetterWord& w, Label i,
                    std::string detail) {
    out.push_back({axiom, w, i, std::move(detail)});
  };
  for (const auto& w : words) {
    type.check_word(w);
    auto wt = weight(type, w);
    for (Label i = 1; i <= type.rank(); ++i) {
      int eps = epsilon(type, w, i);
      int ph = phi(type, w, i);

      if (ph - eps != pairing(wt, type.simple_coroot(i))) {
        report("C1", w, i,
               "phi - eps = " + std::to_string(ph - eps) + " but <wt, coroot> = " +
                   std::to_string(pairing(wt, type.simple_coroot(i))));
      }

      // C2: the string lengths are the iteration counts.
      int up = 0;
      int down = 0;
      for (auto cur = word_op(type, w, i, Op::raise); cur;
           cur = word_op(type, *cur, i, Op::raise)) {
        ++up;
      }
      for (auto cur = word_op(type, w, i, Op::lower); cur;
           cur = word_op(type, *cur, i, Op::lower)) {
        ++down;
      }
      if (up != eps || down != ph) {
        report("C2", w, i, "string lengths disagree with epsilon/phi");
      }

      for (Op op : {Op::raise, Op::lower}) {
        auto moved = word_op(type, w, i, op);
        if (!moved) {
          continue;
        }
        auto expected = add(wt, type.simple_root(i), op == Op::raise ? 1 : -1);
        if (weight(type, *moved) != expected) {
          report("C3", w, i,
                 std::string(op == Op::raise ? "e" : "f") + "_i shifts weight to " +
                     format_weight(weight(type, *moved)) + ", expected " +
                     format_weight(expected));
        }
        auto back = word_op(type, *moved, i, opposite(op));
        if (!back || *back != w) {
          report("C4", w, i, "e_i and f_i are not mutually inverse");
        }
      }
    }
  }
  return out;
}

std::vector<LetterWord> all_words(const CrystalType& type,
                                  std::size_t max_length) {
  std::vector<LetterWord> out{LetterWord{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::size_t end = out.size();
    for (std::size_t k = begin; k < end; ++k) {
      for (auto x : type.letters()) {
        auto w = out[k];
        w.push_back(x);
        out.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

}  // namespace placto::crystal
