#pragma once

// Classical crystal bases (A_n, B_n, C_n, D_n, G_2) and Kashiwara operators on
// words through the tensor rule.
//
// Convention. A word x1 x2 ... xk is the left-nested tensor
// ((x1 (x) x2) (x) ...) (x) xk, and the operators act on u (x) v by
//
//   f_i(u (x) v) = f_i(u) (x) v   if phi_i(u) >  eps_i(v),  u (x) f_i(v) else
//   e_i(u (x) v) = e_i(u) (x) v   if phi_i(u) >= eps_i(v),  u (x) e_i(v) else
//
// so that column words 1 2 ... k are highest weight. The linear-time
// evaluation writes each letter as eps '-' followed by phi '+', cancels every
// adjacent "+-" pair, and lets f act on the leftmost surviving '+' and e on
// the rightmost surviving '-'.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace placto::crystal {

enum class Family : std::uint8_t { A, B, C, D, G2 };

// Letters are encoded as signed integers: k for k, -k for k-bar, 0 for the
// zero letter of B_n and G_2.
struct Letter {
  int value = 0;

  friend constexpr auto operator<=>(Letter, Letter) = default;
};

using LetterWord = std::vector<Letter>;
using Weight = std::vector<int>;
using Label = int;

enum class Op : std::uint8_t { raise, lower };

constexpr Op opposite(Op op) noexcept {
  return op == Op::raise ? Op::lower : Op::raise;
}

// One Kashiwara operator e_i or f_i.
struct Operator {
  Label label = 1;
  Op op = Op::lower;

  friend constexpr bool operator==(Operator, Operator) = default;
};

// Labels of the successive e_i applied on the way to the highest-weight word.
struct RaisingPath {
  std::vector<Label> ops;

  friend bool operator==(const RaisingPath&, const RaisingPath&) = default;
};

// An arrow x --i--> y of a base crystal, i.e. f_i(x) = y.
struct BaseEdge {
  Letter source;
  Label label;
  Letter target;
};

class CrystalType {
 public:
  // The crystal of the vector representation of the given type. For family A
  // the rank is the number of labels, so A_n has n + 1 letters.
  static CrystalType make(Family family, int rank);

  // Arbitrary tables, used for custom bases and for fault injection. Throws
  // DomainError if an edge leaves the letter set, repeats a (letter, label)
  // source or target, or closes an i-labelled cycle.
  CrystalType(Family family, int rank, std::vector<Letter> letters,
              const std::vector<BaseEdge>& edges,
              std::vector<Weight> letter_weights,
              std::vector<Weight> simple_roots,
              std::vector<Weight> simple_coroots);

  Family family() const noexcept { return family_; }
  int rank() const noexcept { return rank_; }
  std::string name() const;

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::vector<Label> labels() const;
  std::size_t weight_dimension() const noexcept { return weight_dim_; }

  bool contains(Letter x) const noexcept { return index_of(x) >= 0; }
  bool valid_label(Label i) const noexcept { return i >= 1 && i <= rank_; }

  // Position in the chain order of the base crystal, or -1.
  int index_of(Letter x) const noexcept;

  // Follows the i-edge forward (lower) or backward (raise).
  std::optional<Letter> apply(Letter x, Label i, Op op) const;

  int letter_epsilon(Letter x, Label i) const;
  int letter_phi(Letter x, Label i) const;
  const Weight& letter_weight(Letter x) const;
  const Weight& simple_root(Label i) const;
  const Weight& simple_coroot(Label i) const;

  // Length of the longest directed path in the base crystal.
  int depth() const noexcept { return depth_; }

  std::vector<BaseEdge> edges() const;

  void check_label(Label i) const;
  void check_letter(Letter x) const;
  void check_word(const LetterWord& w) const;

  friend bool operator==(const CrystalType& a, const CrystalType& b) {
    return a.family_ == b.family_ && a.rank_ == b.rank_;
  }

 private:
  std::size_t slot(Letter x) const;

  Family family_;
  int rank_;
  std::size_t weight_dim_ = 0;
  int depth_ = 0;
  int min_value_ = 0;
  std::vector<Letter> letters_;
  std::vector<int> index_;                  // value - min_value_ -> index
  std::vector<std::vector<int>> lower_;     // [label-1][index] -> index or -1
  std::vector<std::vector<int>> raise_;     // [label-1][index] -> index or -1
  std::vector<std::vector<int>> epsilon_;   // [label-1][index]
  std::vector<std::vector<int>> phi_;       // [label-1][index]
  std::vector<Weight> weights_;             // [index]
  std::vector<Weight> roots_;               // [label-1]
  std::vector<Weight> coroots_;             // [label-1]
};

Family parse_family(std::string_view name);
std::string family_name(Family family);

// Text encoding: contiguous digits for A_n with at most 9 letters, otherwise
// whitespace-separated signed integers ("1 -2 0").
LetterWord parse_word(const CrystalType& type, std::string_view text);
std::string format_word(const CrystalType& type, const LetterWord& w);
std::string format_letter(Letter x);
std::string format_weight(const Weight& w);

// ---------------------------------------------------------------------------
// Operators on words.

// Position of the letter that the operator changes, or nullopt for Zero.
std::optional<std::size_t> acting_position(const CrystalType& type,
                                           const LetterWord& w, Label i, Op op);

std::optional<LetterWord> word_op(const CrystalType& type, const LetterWord& w,
                                  Label i, Op op);

// Direct recursive evaluation of the binary tensor rule on the left-nested
// bracketing. Quadratic or worse; kept as the reference for word_op.
std::optional<LetterWord> word_op_recursive(const CrystalType& type,
                                            const LetterWord& w, Label i, Op op);

int epsilon(const CrystalType& type, const LetterWord& w, Label i);
int phi(const CrystalType& type, const LetterWord& w, Label i);

Weight weight(const CrystalType& type, const LetterWord& w);
int pairing(const Weight& weight, const Weight& coroot);

bool is_highest_weight(const CrystalType& type, const LetterWord& w);

struct HighestWeight {
  LetterWord word;
  RaisingPath path;
};

// Applies e_i for the smallest applicable i until every e_i vanishes.
HighestWeight to_highest_weight(const CrystalType& type, const LetterWord& w);

// Applies f_{i_l}, ..., f_{i_1} to w for path = [i_1, ..., i_l], undoing the
// raising path. Zero if any step vanishes.
std::optional<LetterWord> replay_lowering(const CrystalType& type,
                                          const LetterWord& w,
                                          const RaisingPath& path);

// ---------------------------------------------------------------------------
// Components.

struct ComponentGraph {
  struct Edge {
    std::size_t source;
    std::size_t target;
    Label label;

    friend bool operator==(const Edge&, const Edge&) = default;
  };
  std::vector<LetterWord> vertices;  // discovery order, vertices[0] is the seed
  std::vector<Edge> edges;           // source --f_label--> target
};

// Breadth-first closure under every e_i and f_i. Throws ResourceError when
// the vertex count would exceed cap.
ComponentGraph connected_component(const CrystalType& type, const LetterWord& w,
                                   std::size_t cap);

std::string component_to_dot(const CrystalType& type, const ComponentGraph& g);
std::string component_to_json(const CrystalType& type, const ComponentGraph& g);

// ---------------------------------------------------------------------------
// Axiom checks.

struct AxiomViolation {
  std::string axiom;  // "C1" .. "C4"
  LetterWord word;
  Label label;
  std::string detail;
};

std::vector<AxiomViolation> check_axioms(const CrystalType& type,
                                         const std::vector<LetterWord>& words);

// Every word of length at most max_length, shortest first, lexicographic in
// the chain order within a length.
std::vector<LetterWord> all_words(const CrystalType& type,
                                  std::size_t max_length);

}  // namespace placto::crystal
