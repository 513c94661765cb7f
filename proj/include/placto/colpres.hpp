#pragma once

// Crystal presentations: string rewriting systems whose generators are
// columns of a crystal base and whose rules are closed under the Kashiwara
// operators. Operators act on the flattened letter word and the result is cut
// back along the original column boundaries.
//
// Coherence cells are computed either directly, by completing every critical
// branching, or at highest weight: only the highest-weight critical branchings
// are completed and every other cell is obtained by lowering one of them.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "placto/crystal.hpp"
#include "placto/rewriting.hpp"

namespace placto::colpres {

using crystal::CrystalType;
using crystal::Label;
using crystal::Letter;
using crystal::LetterWord;
using crystal::Op;
using crystal::Operator;
using crystal::RaisingPath;
using rewriting::Branching;
using rewriting::CoherenceCell;
using rewriting::Presentation;
using rewriting::RewritePath;
using rewriting::RuleId;
using rewriting::Step;
using rewriting::Strategy;
using rewriting::Symbol;
using rewriting::Word;

struct CertificateIssue {
  std::string rule;  // rule or generator name
  Operator op;
  std::string detail;
};

struct Certificate {
  bool checked = false;
  std::vector<CertificateIssue> issues;

  bool ok() const noexcept { return checked && issues.empty(); }
};

class CrystalPresentation {
 public:
  // Generator names of pres must be letter words over base in the text
  // encoding of crystal::parse_word. Throws DomainError otherwise. The
  // certificate starts unchecked.
  CrystalPresentation(CrystalType base, Presentation pres);

  const CrystalType& base() const noexcept { return base_; }
  const Presentation& presentation() const noexcept { return pres_; }
  const Certificate& certificate() const noexcept { return certificate_; }
  void set_certificate(Certificate c) { certificate_ = std::move(c); }

  const LetterWord& column(Symbol s) const;
  std::optional<Symbol> symbol_of(const LetterWord& column) const;

  // The rule lhs => rhs, if present.
  std::optional<RuleId> find_rule(const Word& lhs, const Word& rhs) const;

  LetterWord flatten(const Word& w) const;
  Word from_columns(const std::vector<LetterWord>& columns) const;

 private:
  CrystalType base_;
  Presentation pres_;
  std::vector<LetterWord> columns_;
  std::map<LetterWord, Symbol> by_column_;
  Certificate certificate_;
};

// Cuts flat into pieces of the given sizes and maps each to its generator.
// Throws CertificateViolation if a piece is not a generator.
Word rechunk(const CrystalPresentation& cp, const LetterWord& flat,
             const std::vector<std::size_t>& sizes);
std::vector<std::size_t> column_sizes(const CrystalPresentation& cp, const Word& w);

bool is_highest_weight(const CrystalPresentation& cp, const Word& w);

// ---------------------------------------------------------------------------
// Kashiwara operators on generator words and on rewriting data.

std::optional<Word> kashiwara_on_word(const CrystalPresentation& cp, const Word& w,
                                      Label i, Op op);

// Which part of t * rule * v absorbs an operator.
enum class Block : std::uint8_t { left, redex, right };

std::string block_name(Block b);

// nullopt when the operator annihilates the source.
std::optional<Block> acting_block(const CrystalPresentation& cp, const Step& s,
                                  Label i, Op op);

// Transported step, or nullopt for Zero. Throws CertificateViolation when the
// transported redex and contractum are not a rule.
std::optional<Step> kashiwara_on_step(const CrystalPresentation& cp, const Step& s,
                                      Label i, Op op);
std::optional<RewritePath> kashiwara_on_path(const CrystalPresentation& cp,
                                             const RewritePath& p, Label i, Op op);
std::optional<Branching> kashiwara_on_branching(const CrystalPresentation& cp,
                                                const Branching& b, Label i, Op op);
std::optional<CoherenceCell> kashiwara_on_cell(const CrystalPresentation& cp,
                                               const CoherenceCell& cell, Label i,
                                               Op op);

// Applies the operators in order; nullopt as soon as one vanishes.
std::optional<Branching> transport(const CrystalPresentation& cp, Branching b,
                                   const std::vector<Operator>& ops);
std::optional<CoherenceCell> transport(const CrystalPresentation& cp,
                                       CoherenceCell cell,
                                       const std::vector<Operator>& ops);

// e_{i_1}, ..., e_{i_l} for path [i_1, ..., i_l].
std::vector<Operator> raising_ops(const RaisingPath& path);
// f_{i_l}, ..., f_{i_1}: undoes raising_ops(path).
std::vector<Operator> lowering_ops(const RaisingPath& path);

// Every e_i and f_i of the base type, labels ascending, raise before lower.
std::vector<Operator> all_operators(const CrystalType& type);

// ---------------------------------------------------------------------------
// Certificates and construction.

// Zero matching and rule closure for every rule and operator, closure of the
// generators, and the column bound on right-hand sides (three columns for G2,
// two otherwise).
Certificate check_crystal_presentation(const CrystalPresentation& cp);

// Col(A): generators are the columns, one rule c1 c2 => P(c1 c2) for every
// pair whose insertion tableau is not c1 c2 itself. The certificate is checked.
CrystalPresentation build_column_presentation(const CrystalType& type);

// Same generators, keeping the rules for which keep(id) holds; the
// certificate is re-checked.
template <typename Pred>
CrystalPresentation restrict_rules(const CrystalPresentation& cp, Pred keep);

// Rules grouped by Kashiwara orbit (each rule viewed as a step with empty
// context), orbits ordered by their smallest rule id.
std::vector<std::vector<RuleId>> rule_orbits(const CrystalPresentation& cp);

nlohmann::json presentation_to_json(const CrystalPresentation& cp);

// Validates generators against the declared type and checks the certificate;
// a failing certificate is stored, not thrown.
CrystalPresentation presentation_from_json(const nlohmann::json& j);
CrystalPresentation load_presentation(const std::string& path);
void save_presentation(const CrystalPresentation& cp, const std::string& path);

// ---------------------------------------------------------------------------
// Highest weight.

struct HWSystem {
  std::vector<RuleId> rules;              // rules whose lhs is highest weight
  std::vector<Branching> critical_branchings;
};

HWSystem hw_system(const CrystalPresentation& cp);
std::vector<Branching> hw_critical_branchings(const CrystalPresentation& cp);

// Confluence of the highest-weight system alone: termination on the
// highest-weight words of the universe and completion of the highest-weight
// critical branchings.
rewriting::ConfluenceReport check_confluence_hw(const CrystalPresentation& cp,
                                                const std::vector<Word>& universe,
                                                Strategy strategy,
                                                std::size_t step_cap);

// ---------------------------------------------------------------------------
// Coherence.

struct CohereOptions {
  Strategy strategy = Strategy::leftmost;
  std::size_t step_cap = 10000;
  unsigned jobs = 1;
};

// One cell per critical branching, in critical_branchings order. Throws
// DomainError if a branching does not complete.
std::vector<CoherenceCell> cohere_direct(const CrystalPresentation& cp,
                                         const CohereOptions& opt);

struct HwCell {
  CoherenceCell cell;
  Branching representative;  // highest-weight critical branching
  RaisingPath path;          // raises the source to the representative
};

struct HwCoherence {
  std::size_t hw_critical_count = 0;
  std::vector<HwCell> cells;  // index-aligned with cohere_direct
};

// Completes the highest-weight critical branchings only and lowers their
// cells. Throws InternalError if a representative is not among the
// highest-weight critical branchings.
HwCoherence cohere_via_hw(const CrystalPresentation& cp, const CohereOptions& opt);

// Source word and the (position, rule, direction) of both steps.
std::string cell_key(const Presentation& p, const CoherenceCell& cell);

// Indices where the two lists differ by key or by content; a length
// mismatch reports every index past the shorter list.
std::vector<std::size_t> compare_cells(const std::vector<CoherenceCell>& a,
                                       const std::vector<CoherenceCell>& b);

nlohmann::json cells_to_json(const CrystalPresentation& cp,
                             const std::vector<CoherenceCell>& cells);
nlohmann::json cells_to_json(const CrystalPresentation& cp, const HwCoherence& hw);
std::string cells_to_dot(const CrystalPresentation& cp,
                         const std::vector<CoherenceCell>& cells);
std::string cells_to_dot(const CrystalPresentation& cp, const HwCoherence& hw);

// ---------------------------------------------------------------------------
// 2-monoid axioms.

struct CmViolation {
  std::string axiom;  // "CM3", "CM4" or "FM3"
  Operator op;
  std::string detail;
};

// On the sampled paths, for every operator: sources and targets commute with
// the operator (CM3), transport respects sequential composition at every
// split point and horizontal composition of sample pairs by the tensor rule
// (CM4), and a step followed by its inverse is sent to such a pair (FM3).
// Transport failures are reported as CM4.
std::vector<CmViolation> verify_cm_axioms(const CrystalPresentation& cp,
                                          const std::vector<RewritePath>& sample);

// Every forward path of length at most max_length starting at one of words.
std::vector<RewritePath> enumerate_paths(const Presentation& p,
                                         const std::vector<Word>& words,
                                         std::size_t max_length);

// ---------------------------------------------------------------------------

template <typename Pred>
CrystalPresentation restrict_rules(const CrystalPresentation& cp, Pred keep) {
  CrystalPresentation out(cp.base(), cp.presentation().filter_rules(keep));
  out.set_certificate(check_crystal_presentation(out));
  return out;
}

}  // namespace placto::colpres
