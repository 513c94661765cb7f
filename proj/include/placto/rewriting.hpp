#pragma once

// String rewriting over a finite alphabet: 2-polygraphs (presentations with
// oriented rules), rewriting steps and paths, normal forms, branchings,
// critical branchings, confluence checks and Squier coherence cells.
//
// Paths are explicit step sequences; two paths are only ever compared
// literally or through their endpoints.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

namespace placto::rewriting {

using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;
using RuleId = std::size_t;

struct Rule {
  std::string name;
  Word lhs;
  Word rhs;
};

class Presentation {
 public:
  Presentation() = default;
  explicit Presentation(const std::vector<std::string>& generators);

  Symbol add_generator(std::string name);

  // Throws DomainError for an empty lhs, lhs == rhs, unknown symbols, or a
  // duplicate (lhs, rhs) pair.
  RuleId add_rule(std::string name, Word lhs, Word rhs);

  const std::vector<std::string>& generators() const noexcept { return generators_; }
  const std::vector<Rule>& rules() const noexcept { return rules_; }
  const Rule& rule(RuleId id) const;

  std::optional<Symbol> find_generator(std::string_view name) const;
  Symbol generator(std::string_view name) const;

  // Rules with the given lhs, in id order.
  const std::vector<RuleId>& rules_with_lhs(const Word& lhs) const;
  const std::vector<RuleId>& rules_starting_with(Symbol s) const;

  // Same generators, keeping the rules for which keep(id) holds; ids are
  // renumbered densely in the original order.
  template <typename Pred>
  Presentation filter_rules(Pred keep) const {
    Presentation out(generators_);
    for (RuleId id = 0; id < rules_.size(); ++id) {
      if (keep(id)) {
        out.add_rule(rules_[id].name, rules_[id].lhs, rules_[id].rhs);
      }
    }
    return out;
  }

  // Generator names joined by '.', or "1" for the empty word.
  std::string format(const Word& w) const;
  Word parse(std::string_view text) const;

  void check_word(const Word& w) const;

 private:
  std::vector<std::string> generators_;
  std::map<std::string, Symbol, std::less<>> by_name_;
  std::vector<Rule> rules_;
  std::vector<std::vector<RuleId>> by_first_;
  std::map<Word, std::vector<RuleId>> by_lhs_;
};

enum class StepDirection : std::uint8_t { forward, inverse };

// left * rule * right. A forward step rewrites lhs to rhs; an inverse step
// rewrites rhs back to lhs.
struct Step {
  RuleId rule = 0;
  Word left;
  Word right;
  StepDirection direction = StepDirection::forward;

  std::size_t position() const noexcept { return left.size(); }

  friend bool operator==(const Step&, const Step&) = default;
};

// Orders steps on a common source by position, then rule id.
bool step_before(const Step& a, const Step& b);

const Word& redex(const Presentation& p, const Step& s);
const Word& contractum(const Presentation& p, const Step& s);
Word source(const Presentation& p, const Step& s);
Word target(const Presentation& p, const Step& s);

struct RewritePath {
  Word source;
  std::vector<Step> steps;

  std::size_t length() const noexcept { return steps.size(); }

  friend bool operator==(const RewritePath&, const RewritePath&) = default;
};

RewritePath identity_path(Word w);
Word target(const Presentation& p, const RewritePath& path);

// The n-th word of the path: word_at(p, path, 0) is the source.
Word word_at(const Presentation& p, const RewritePath& path, std::size_t n);

// Throws DomainError unless every step applies to the word it follows.
void check_path(const Presentation& p, const RewritePath& path);

// Sequential composition; throws DomainError if target(a) != source(b).
RewritePath compose(const Presentation& p, const RewritePath& a,
                    const RewritePath& b);

// t * path * v.
RewritePath whisker(const Word& left, const RewritePath& path, const Word& right);

// Horizontal composition of paths a: u => u', b: v => v', realised as
// (a * v) followed by (u' * b).
RewritePath compose_horizontal(const Presentation& p, const RewritePath& a,
                               const RewritePath& b);

RewritePath inverse(const Presentation& p, const RewritePath& path);

// ---------------------------------------------------------------------------

std::vector<Step> steps_at(const Presentation& p, const Word& w);
std::optional<Step> leftmost_step(const Presentation& p, const Word& w);
std::optional<Step> rightmost_step(const Presentation& p, const Word& w);
bool is_normal_form(const Presentation& p, const Word& w);

enum class Strategy : std::uint8_t { leftmost, rightmost };

std::string strategy_name(Strategy s);
Strategy parse_strategy(std::string_view name);

struct Normalization {
  Word normal_form;
  RewritePath path;
};

// Iterates the strategy's step. Throws NonTermination past step_cap steps or
// when a word repeats.
Normalization normalize(const Presentation& p, const Word& w, Strategy strategy,
                        std::size_t step_cap);

bool is_reduced(const Presentation& p);

// ---------------------------------------------------------------------------
// Branchings.

enum class BranchTag : std::uint8_t { aspherical, peiffer, inclusion, overlap };

std::string tag_name(BranchTag tag);

struct Branching {
  Step first;
  Step second;

  friend bool operator==(const Branching&, const Branching&) = default;
};

Word source(const Presentation& p, const Branching& b);

// Throws DomainError if the two steps have different sources.
BranchTag classify_branching(const Presentation& p, const Branching& b);

bool is_overlapping(BranchTag tag);

// Overlapping and minimal: the two redexes together cover the source.
bool is_critical(const Presentation& p, const Branching& b);

// Every unordered pair of steps on w (including identical pairs), with the
// first step ordered before the second.
std::vector<Branching> local_branchings(const Presentation& p, const Word& w);

// Inclusion and overlap critical branchings, each listed once with its steps
// ordered by step_before.
std::vector<Branching> critical_branchings(const Presentation& p);

// ---------------------------------------------------------------------------
// Confluence.

// A branching closed by normalizing both targets:
//   first * first_completion  and  second * second_completion
// end at the same word.
struct CoherenceCell {
  Branching branching;
  RewritePath first_completion;
  RewritePath second_completion;

  friend bool operator==(const CoherenceCell&, const CoherenceCell&) = default;
};

RewritePath first_side(const Presentation& p, const CoherenceCell& cell);
RewritePath second_side(const Presentation& p, const CoherenceCell& cell);

struct NonConfluence {
  Branching branching;
  Word first_normal_form;
  Word second_normal_form;
  std::string reason;
};

using Completion = std::variant<CoherenceCell, NonConfluence>;

Completion complete_branching(const Presentation& p, const Branching& b,
                              Strategy strategy, std::size_t step_cap);

struct LocalConfluenceReport {
  std::size_t critical_count = 0;
  std::vector<NonConfluence> failures;

  bool locally_confluent() const noexcept { return failures.empty(); }
};

// Critical pair check: every critical branching must complete.
LocalConfluenceReport check_local_confluence(const Presentation& p,
                                             Strategy strategy,
                                             std::size_t step_cap);

LocalConfluenceReport check_branchings_confluence(
    const Presentation& p, const std::vector<Branching>& branchings,
    Strategy strategy, std::size_t step_cap);

struct TerminationReport {
  std::size_t words_checked = 0;
  std::size_t graph_size = 0;
  std::vector<Word> cycle;  // empty when no cycle was found

  bool terminating() const noexcept { return cycle.empty(); }
};

// Explores the whole rewrite graph below each word of the universe and looks
// for a directed cycle. Throws ResourceError past node_cap words.
TerminationReport check_termination(const Presentation& p,
                                    const std::vector<Word>& universe,
                                    std::size_t node_cap = 1'000'000);

struct ConfluenceReport {
  LocalConfluenceReport local;
  TerminationReport termination;

  bool confluent() const noexcept {
    return local.locally_confluent() && termination.terminating();
  }
};

// Newman: termination on the universe plus local confluence.
ConfluenceReport check_confluence_newman(const Presentation& p,
                                         const std::vector<Word>& universe,
                                         Strategy strategy,
                                         std::size_t step_cap);

// All words over the generators of length at most max_length.
std::vector<Word> all_words(const Presentation& p, std::size_t max_length);
std::vector<Word> words_of_length(const Presentation& p, std::size_t length);

// ---------------------------------------------------------------------------
// Serialization.

nlohmann::json presentation_to_json(const Presentation& p);
Presentation presentation_from_json(const nlohmann::json& j);

nlohmann::json step_to_json(const Presentation& p, const Step& s);
nlohmann::json path_to_json(const Presentation& p, const RewritePath& path);
nlohmann::json cell_to_json(const Presentation& p, const CoherenceCell& cell);

// The confluence diagram as two directed chains sharing their endpoints.
std::string cell_to_dot(const Presentation& p, const CoherenceCell& cell,
                        const std::string& graph_name,
                        const std::string& annotation = "");

}  // namespace placto::rewriting
