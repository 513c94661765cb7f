#include "placto/colpres.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "placto/errors.hpp"
#include "placto/plactic.hpp"

namespace placto::colpres {

namespace {

using rewriting::StepDirection;

// Runs fn(0..n-1) on up to `jobs` threads. Results are written by index, so
// the caller sees the same output for any thread count; the exception of the
// lowest failing index is rethrown.
template <typename Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t k = 0; k < n; ++k) {
      fn(k);
    }
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      auto k = next.fetch_add(1);
      if (k >= n) {
        return;
      }
      try {
        fn(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  auto count = std::min<std::size_t>(jobs, n);
  for (std::size_t t = 0; t < count; ++t) {
    pool.emplace_back(worker);
  }
  for (auto& t : pool) {
    t.join();
  }
  for (auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

std::string op_name(Operator k) {
  return std::string(k.op == Op::raise ? "e" : "f") + std::to_string(k.label);
}

std::string path_text(const RaisingPath& path) {
  std::string out = "[";
  for (std::size_t k = 0; k < path.ops.size(); ++k) {
    out += (k ? "," : "") + std::to_string(path.ops[k]);
  }
  return out + "]";
}

std::size_t flat_size(const CrystalPresentation& cp, const Word& w) {
  std::size_t n = 0;
  for (auto s : w) {
    n += cp.column(s).size();
  }
  return n;
}

}  // namespace

// ---------------------------------------------------------------------------

CrystalPresentation::CrystalPresentation(CrystalType base, Presentation pres)
    : base_(std::move(base)), pres_(std::move(pres)) {
  for (const auto& name : pres_.generators()) {
    auto col = crystal::parse_word(base_, name);
    if (col.empty()) {
      throw DomainError("generator '" + name + "' is the empty word");
    }
    if (!by_column_.emplace(col, static_cast<Symbol>(columns_.size())).second) {
      throw DomainError("generator '" + name + "' is listed twice");
    }
    columns_.push_back(std::move(col));
  }
}

const LetterWord& CrystalPresentation::column(Symbol s) const {
  if (s >= columns_.size()) {
    throw DomainError("symbol " + std::to_string(s) + " is not a generator");
  }
  return columns_[s];
}

std::optional<Symbol> CrystalPresentation::symbol_of(const LetterWord& column) const {
  auto it = by_column_.find(column);
  if (it == by_column_.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::optional<RuleId> CrystalPresentation::find_rule(const Word& lhs,
                                                     const Word& rhs) const {
  for (auto id : pres_.rules_with_lhs(lhs)) {
    if (pres_.rules()[id].rhs == rhs) {
      return id;
    }
  }
  return std::nullopt;
}

LetterWord CrystalPresentation::flatten(const Word& w) const {
  LetterWord out;
  for (auto s : w) {
    const auto& c = column(s);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

Word CrystalPresentation::from_columns(const std::vector<LetterWord>& columns) const {
  Word w;
  for (const auto& c : columns) {
    auto s = symbol_of(c);
    if (!s) {
      throw DomainError("'" + crystal::format_word(base_, c) +
                        "' is not a generator");
    }
    w.push_back(*s);
  }
  return w;
}

Word rechunk(const CrystalPresentation& cp, const LetterWord& flat,
             const std::vector<std::size_t>& sizes) {
  Word out;
  std::size_t at = 0;
  for (auto n : sizes) {
    if (at + n > flat.size()) {
      throw InternalError("column sizes exceed the word length");
    }
    LetterWord piece(flat.begin() + static_cast<std::ptrdiff_t>(at),
                     flat.begin() + static_cast<std::ptrdiff_t>(at + n));
    auto s = cp.symbol_of(piece);
    if (!s) {
      throw CertificateViolation("'" + crystal::format_word(cp.base(), piece) +
                                 "' is not a generator");
    }
    out.push_back(*s);
    at += n;
  }
  if (at != flat.size()) {
    throw InternalError("column sizes do not cover the word");
  }
  return out;
}

std::vector<std::size_t> column_sizes(const CrystalPresentation& cp, const Word& w) {
  std::vector<std::size_t> out;
  out.reserve(w.size());
  for (auto s : w) {
    out.push_back(cp.column(s).size());
  }
  return out;
}

bool is_highest_weight(const CrystalPresentation& cp, const Word& w) {
  return crystal::is_highest_weight(cp.base(), cp.flatten(w));
}

// ---------------------------------------------------------------------------

std::optional<Word> kashiwara_on_word(const CrystalPresentation& cp, const Word& w,
                                      Label i, Op op) {
  auto flat = crystal::word_op(cp.base(), cp.flatten(w), i, op);
  if (!flat) {
    return std::nullopt;
  }
  return rechunk(cp, *flat, column_sizes(cp, w));
}

std::string block_name(Block b) {
  switch (b) {
    case Block::left: return "left";
    case Block::redex: return "redex";
    case Block::right: return "right";
  }
  throw InternalError("bad block");
}

std::optional<Block> acting_block(const CrystalPresentation& cp, const Step& s,
                                  Label i, Op op) {
  const auto& p = cp.presentation();
  auto pos = crystal::acting_position(cp.base(), cp.flatten(source(p, s)), i, op);
  if (!pos) {
    return std::nullopt;
  }
  auto nl = flat_size(cp, s.left);
  auto nr = flat_size(cp, redex(p, s));
  if (*pos < nl) return Block::left;
  if (*pos < nl + nr) return Block::redex;
  return Block::right;
}

std::optional<Step> kashiwara_on_step(const CrystalPresentation& cp, const Step& s,
                                      Label i, Op op) {
  const auto& p = cp.presentation();
  auto block = acting_block(cp, s, i, op);
  if (!block) {
    return std::nullopt;
  }
  auto vanished = [&](const char* part) {
    return InternalError(std::string("operator chosen for the ") + part +
                         " block does not act on it");
  };
  Step out = s;
  switch (*block) {
    case Block::left: {
      auto w = kashiwara_on_word(cp, s.left, i, op);
      if (!w) throw vanished("left");
      out.left = std::move(*w);
      return out;
    }
    case Block::right: {
      auto w = kashiwara_on_word(cp, s.right, i, op);
      if (!w) throw vanished("right");
      out.right = std::move(*w);
      return out;
    }
    case Block::redex: {
      auto r = kashiwara_on_word(cp, redex(p, s), i, op);
      if (!r) throw vanished("redex");
      auto c = kashiwara_on_word(cp, contractum(p, s), i, op);
      const auto& rule = p.rule(s.rule);
      if (!c) {
        throw CertificateViolation(
            op_name({i, op}) + " vanishes on the target of rule '" + rule.name +
            "' but not on its source");
      }
      bool forward = s.direction == StepDirection::forward;
      auto id = forward ? cp.find_rule(*r, *c) : cp.find_rule(*c, *r);
      if (!id) {
        throw CertificateViolation(
            op_name({i, op}) + " sends rule '" + rule.name + "' to " +
            p.format(forward ? *r : *c) + " => " + p.format(forward ? *c : *r) +
            ", which is not a rule");
      }
      out.rule = *id;
      return out;
    }
  }
  throw InternalError("bad block");
}

std::optional<RewritePath> kashiwara_on_path(const CrystalPresentation& cp,
                                             const RewritePath& path, Label i,
                                             Op op) {
  auto src = kashiwara_on_word(cp, path.source, i, op);
  if (!src) {
    return std::nullopt;
  }
  RewritePath out{std::move(*src), {}};
  out.steps.reserve(path.steps.size());
  for (const auto& s : path.steps) {
    auto ks = kashiwara_on_step(cp, s, i, op);
    if (!ks) {
      throw CertificateViolation(op_name({i, op}) +
                                 " vanishes inside a path but not on its source");
    }
    out.steps.push_back(std::move(*ks));
  }
  return out;
}

std::optional<Branching> kashiwara_on_branching(const CrystalPresentation& cp,
                                                const Branching& b, Label i, Op op) {
  auto f = kashiwara_on_step(cp, b.first, i, op);
  auto g = kashiwara_on_step(cp, b.second, i, op);
  if (f.has_value() != g.has_value()) {
    throw InternalError("steps with a common source disagree on Zero");
  }
  if (!f) {
    return std::nullopt;
  }
  return Branching{std::move(*f), std::move(*g)};
}

std::optional<CoherenceCell> kashiwara_on_cell(const CrystalPresentation& cp,
                                               const CoherenceCell& cell, Label i,
                                               Op op) {
  auto b = kashiwara_on_branching(cp, cell.branching, i, op);
  if (!b) {
    return std::nullopt;
  }
  auto f = kashiwara_on_path(cp, cell.first_completion, i, op);
  auto g = kashiwara_on_path(cp, cell.second_completion, i, op);
  if (!f || !g) {
    throw CertificateViolation(op_name({i, op}) +
                               " vanishes on a completion but not on its branching");
  }
  return CoherenceCell{std::move(*b), std::move(*f), std::move(*g)};
}

std::optional<Branching> transport(const CrystalPresentation& cp, Branching b,
                                   const std::vector<Operator>& ops) {
  for (auto k : ops) {
    auto next = kashiwara_on_branching(cp, b, k.label, k.op);
    if (!next) {
      return std::nullopt;
    }
    b = std::move(*next);
  }
  return b;
}

std::optional<CoherenceCell> transport(const CrystalPresentation& cp,
                                       CoherenceCell cell,
                                       const std::vector<Operator>& ops) {
  for (auto k : ops) {
    auto next = kashiwara_on_cell(cp, cell, k.label, k.op);
    if (!next) {
      return std::nullopt;
    }
    cell = std::move(*next);
  }
  return cell;
}

std::vector<Operator> raising_ops(const RaisingPath& path) {
  std::vector<Operator> out;
  for (auto i : path.ops) {
    out.push_back({i, Op::raise});
  }
  return out;
}

std::vector<Operator> lowering_ops(const RaisingPath& path) {
  std::vector<Operator> out;
  for (auto it = path.ops.rbegin(); it != path.ops.rend(); ++it) {
    out.push_back({*it, Op::lower});
  }
  return out;
}

std::vector<Operator> all_operators(const CrystalType& type) {
  std::vector<Operator> out;
  for (auto i : type.labels()) {
    out.push_back({i, Op::raise});
    out.push_back({i, Op::lower});
  }
  return out;
}

// ---------------------------------------------------------------------------

Certificate check_crystal_presentation(const CrystalPresentation& cp) {
  const auto& p = cp.presentation();
  Certificate cert;
  cert.checked = true;
  auto ops = all_operators(cp.base());

  for (Symbol s = 0; s < p.generators().size(); ++s) {
    for (auto k : ops) {
      try {
        kashiwara_on_word(cp, Word{s}, k.label, k.op);
      } catch (const CertificateViolation& e) {
        cert.issues.push_back({p.generators()[s], k, e.what()});
      }
    }
  }

  std::size_t max_columns = cp.base().family() == crystal::Family::G2 ? 3 : 2;
  for (const auto& rule : p.rules()) {
    if (rule.rhs.size() > max_columns) {
      cert.issues.push_back({rule.name, {0, Op::lower},
                             "right-hand side has " +
                                 std::to_string(rule.rhs.size()) + " columns"});
    }
    for (auto k : ops) {
      std::optional<Word> u;
      std::optional<Word> v;
      try {
        u = kashiwara_on_word(cp, rule.lhs, k.label, k.op);
        v = kashiwara_on_word(cp, rule.rhs, k.label, k.op);
      } catch (const CertificateViolation& e) {
        cert.issues.push_back({rule.name, k, e.what()});
        continue;
      }
      if (u.has_value() != v.has_value()) {
        cert.issues.push_back(
            {rule.name, k,
             op_name(k) + " vanishes on one side only (" +
                 (u ? "source " + p.format(*u) : "target " + p.format(*v)) +
                 " survives)"});
        continue;
      }
      if (u && !cp.find_rule(*u, *v)) {
        cert.issues.push_back({rule.name, k,
                               "missing rule " + p.format(*u) + " => " +
                                   p.format(*v)});
      }
    }
  }
  return cert;
}

CrystalPresentation build_column_presentation(const CrystalType& type) {
  if (type.family() != crystal::Family::A) {
    throw DomainError("column presentations are generated for type A only; load "
                      "other types from a file");
  }
  auto columns = plactic::enumerate_columns(type);
  std::vector<std::string> names;
  for (const auto& c : columns) {
    names.push_back(crystal::format_word(type, c));
  }
  Presentation pres(names);
  for (Symbol a = 0; a < columns.size(); ++a) {
    for (Symbol b = 0; b < columns.size(); ++b) {
      LetterWord w = columns[a];
      w.insert(w.end(), columns[b].begin(), columns[b].end());
      auto t = plactic::p_tableau(type, w);
      // Reading order: rightmost column first.
      std::vector<LetterWord> cols(t.columns().rbegin(), t.columns().rend());
      if (cols.size() > 2) {
        throw InternalError("insertion of two columns produced " +
                            std::to_string(cols.size()) + " columns");
      }
      Word rhs;
      for (const auto& c : cols) {
        rhs.push_back(static_cast<Symbol>(
            std::find(columns.begin(), columns.end(), c) - columns.begin()));
      }
      Word lhs{a, b};
      if (rhs != lhs) {
        pres.add_rule(pres.format(lhs), lhs, rhs);
      }
    }
  }
  CrystalPresentation cp(type, std::move(pres));
  cp.set_certificate(check_crystal_presentation(cp));
  return cp;
}

std::vector<std::vector<RuleId>> rule_orbits(const CrystalPresentation& cp) {
  const auto& p = cp.presentation();
  std::vector<RuleId> parent(p.rules().size());
  std::iota(parent.begin(), parent.end(), RuleId{0});
  auto find = [&](RuleId x) {
    while (parent[x] != x) {
      x = parent[x] = parent[parent[x]];
    }
    return x;
  };
  auto ops = all_operators(cp.base());
  for (RuleId r = 0; r < p.rules().size(); ++r) {
    Step s{r, {}, {}, StepDirection::forward};
    for (auto k : ops) {
      try {
        if (auto ks = kashiwara_on_step(cp, s, k.label, k.op)) {
          auto a = find(r);
          auto b = find(ks->rule);
          parent[std::max(a, b)] = std::min(a, b);
        }
      } catch (const CertificateViolation&) {
        // a broken orbit simply stays split
      }
    }
  }
  std::map<RuleId, std::vector<RuleId>> groups;
  for (RuleId r = 0; r < p.rules().size(); ++r) {
    groups[find(r)].push_back(r);
  }
  std::vector<std::vector<RuleId>> out;
  for (auto& [root, members] : groups) {
    out.push_back(std::move(members));
  }
  return out;
}

nlohmann::json presentation_to_json(const CrystalPresentation& cp) {
  auto j = rewriting::presentation_to_json(cp.presentation());
  j["family"] = crystal::family_name(cp.base().family());
  j["rank"] = cp.base().rank();
  return j;
}

CrystalPresentation presentation_from_json(const nlohmann::json& j) {
  try {
    auto family = crystal::parse_family(j.at("family").get<std::string>());
    auto type = CrystalType::make(family, j.at("rank").get<int>());
    CrystalPresentation cp(type, rewriting::presentation_from_json(j));
    cp.set_certificate(check_crystal_presentation(cp));
    return cp;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("presentation JSON: ") + e.what());
  }
}

CrystalPresentation load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DomainError("cannot open " + path);
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(path + ": " + e.what());
  }
  return presentation_from_json(j);
}

void save_presentation(const CrystalPresentation& cp, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw DomainError("cannot write " + path);
  }
  out << presentation_to_json(cp).dump(2) << '\n';
}

// ---------------------------------------------------------------------------

HWSystem hw_system(const CrystalPresentation& cp) {
  HWSystem hw;
  const auto& p = cp.presentation();
  for (RuleId r = 0; r < p.rules().size(); ++r) {
    if (is_highest_weight(cp, p.rules()[r].lhs)) {
      hw.rules.push_back(r);
    }
  }
  hw.critical_branchings = hw_critical_branchings(cp);
  return hw;
}

std::vector<Branching> hw_critical_branchings(const CrystalPresentation& cp) {
  std::vector<Branching> out;
  const auto& p = cp.presentation();
  for (auto& b : rewriting::critical_branchings(p)) {
    if (is_highest_weight(cp, source(p, b))) {
      out.push_back(std::move(b));
    }
  }
  return out;
}

rewriting::ConfluenceReport check_confluence_hw(const CrystalPresentation& cp,
                                                const std::vector<Word>& universe,
                                                Strategy strategy,
                                                std::size_t step_cap) {
  const auto& p = cp.presentation();
  std::vector<Word> hw_words;
  for (const auto& w : universe) {
    if (is_highest_weight(cp, w)) {
      hw_words.push_back(w);
    }
  }
  rewriting::ConfluenceReport report;
  report.termination = rewriting::check_termination(p, hw_words);
  report.local = rewriting::check_branchings_confluence(
      p, hw_critical_branchings(cp), strategy, step_cap);
  return report;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<CoherenceCell> complete_all(const Presentation& p,
                                        const std::vector<Branching>& bs,
                                        const CohereOptions& opt) {
  std::vector<std::optional<CoherenceCell>> slots(bs.size());
  parallel_for(bs.size(), opt.jobs, [&](std::size_t k) {
    auto c = rewriting::complete_branching(p, bs[k], opt.strategy, opt.step_cap);
    if (auto* nc = std::get_if<rewriting::NonConfluence>(&c)) {
      throw DomainError("critical branching on " + p.format(source(p, bs[k])) +
                        " does not complete: " + nc->reason + " (" +
                        p.format(nc->first_normal_form) + " vs " +
                        p.format(nc->second_normal_form) + ")");
    }
    slots[k] = std::move(std::get<CoherenceCell>(c));
  });
  std::vector<CoherenceCell> out;
  out.reserve(slots.size());
  for (auto& s : slots) {
    out.push_back(std::move(*s));
  }
  return out;
}

std::string step_key(const Step& s) {
  return std::to_string(s.position()) + ":" + std::to_string(s.rule) +
         (s.direction == StepDirection::inverse ? "-" : "+");
}

std::string branching_key(const Presentation& p, const Branching& b) {
  return p.format(source(p, b)) + "|" + step_key(b.first) + "|" + step_key(b.second);
}

}  // namespace

std::vector<CoherenceCell> cohere_direct(const CrystalPresentation& cp,
                                         const CohereOptions& opt) {
  const auto& p = cp.presentation();
  return complete_all(p, rewriting::critical_branchings(p), opt);
}

HwCoherence cohere_via_hw(const CrystalPresentation& cp, const CohereOptions& opt) {
  const auto& p = cp.presentation();
  auto hw_crits = hw_critical_branchings(cp);
  auto hw_cells = complete_all(p, hw_crits, opt);
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < hw_crits.size(); ++k) {
    index.emplace(branching_key(p, hw_crits[k]), k);
  }

  auto crits = rewriting::critical_branchings(p);
  HwCoherence out;
  out.hw_critical_count = hw_crits.size();
  std::vector<std::optional<HwCell>> slots(crits.size());
  parallel_for(crits.size(), opt.jobs, [&](std::size_t k) {
    const auto& b = crits[k];
    auto hw = crystal::to_highest_weight(cp.base(), cp.flatten(source(p, b)));
    auto b0 = transport(cp, b, raising_ops(hw.path));
    if (!b0) {
      throw InternalError("raising path vanished on " + p.format(source(p, b)));
    }
    auto it = index.find(branching_key(p, *b0));
    if (it == index.end()) {
      throw InternalError("no highest-weight critical branching " +
                          branching_key(p, *b0) + " for " + branching_key(p, b));
    }
    auto cell = transport(cp, hw_cells[it->second], lowering_ops(hw.path));
    if (!cell) {
      throw InternalError("lowering path vanished on " + branching_key(p, *b0));
    }
    slots[k] = HwCell{std::move(*cell), std::move(*b0), std::move(hw.path)};
  });
  out.cells.reserve(slots.size());
  for (auto& s : slots) {
    out.cells.push_back(std::move(*s));
  }
  return out;
}

std::string cell_key(const Presentation& p, const CoherenceCell& cell) {
  return branching_key(p, cell.branching);
}

std::vector<std::size_t> compare_cells(const std::vector<CoherenceCell>& a,
                                       const std::vector<CoherenceCell>& b) {
  std::vector<std::size_t> out;
  auto n = std::max(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (k >= a.size() || k >= b.size() || !(a[k] == b[k])) {
      out.push_back(k);
    }
  }
  return out;
}

nlohmann::json cells_to_json(const CrystalPresentation& cp,
                             const std::vector<CoherenceCell>& cells) {
  const auto& p = cp.presentation();
  auto arr = nlohmann::json::array();
  for (const auto& c : cells) {
    auto j = rewriting::cell_to_json(p, c);
    j["key"] = cell_key(p, c);
    arr.push_back(std::move(j));
  }
  return {{"schema_version", 1},
          {"family", crystal::family_name(cp.base().family())},
          {"rank", cp.base().rank()},
          {"critical_count", cells.size()},
          {"cells", arr}};
}

nlohmann::json cells_to_json(const CrystalPresentation& cp, const HwCoherence& hw) {
  const auto& p = cp.presentation();
  std::vector<CoherenceCell> plain;
  for (const auto& c : hw.cells) {
    plain.push_back(c.cell);
  }
  auto j = cells_to_json(cp, plain);
  j["hw_critical_count"] = hw.hw_critical_count;
  for (std::size_t k = 0; k < hw.cells.size(); ++k) {
    nlohmann::json words = nlohmann::json::array();
    for (auto s : source(p, hw.cells[k].representative)) {
      words.push_back(p.generators()[s]);
    }
    j["cells"][k]["hw"] = {{"source", words},
                           {"key", branching_key(p, hw.cells[k].representative)},
                           {"raising_path", hw.cells[k].path.ops}};
  }
  return j;
}

std::string cells_to_dot(const CrystalPresentation& cp,
                         const std::vector<CoherenceCell>& cells) {
  std::string out;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    out += rewriting::cell_to_dot(cp.presentation(), cells[k],
                                  "cell" + std::to_string(k));
  }
  return out;
}

std::string cells_to_dot(const CrystalPresentation& cp, const HwCoherence& hw) {
  const auto& p = cp.presentation();
  std::string out;
  for (std::size_t k = 0; k < hw.cells.size(); ++k) {
    const auto& c = hw.cells[k];
    auto note = "hw " + p.format(source(p, c.representative)) + " lowered by " +
                path_text(c.path);
    out += rewriting::cell_to_dot(p, c.cell, "cell" + std::to_string(k), note);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct CmChecker {
  const CrystalPresentation& cp;
  std::vector<CmViolation>& out;

  const Presentation& pres() const { return cp.presentation(); }

  void report(const char* axiom, Operator k, std::string detail) {
    out.push_back({axiom, k, std::move(detail)});
  }

  void steps(const RewritePath& path, Operator k) {
    const auto& p = pres();
    for (const auto& s : path.steps) {
      auto ks = kashiwara_on_step(cp, s, k.label, k.op);
      auto src = kashiwara_on_word(cp, source(p, s), k.label, k.op);
      auto tgt = kashiwara_on_word(cp, target(p, s), k.label, k.op);
      if (!ks) {
        if (src || tgt) {
          report("CM3", k, "step on " + p.format(source(p, s)) +
                               " vanishes but its endpoints do not");
        }
        continue;
      }
      if (!src || source(p, *ks) != *src) {
        report("CM3", k, "source does not commute on " + p.format(source(p, s)));
      }
      if (!tgt || target(p, *ks) != *tgt) {
        report("CM3", k, "target does not commute on " + p.format(source(p, s)));
      }

      // s followed by its inverse goes to k.s followed by its inverse.
      Step back = s;
      back.direction = s.direction == StepDirection::forward ? StepDirection::inverse
                                                             : StepDirection::forward;
      RewritePath loop{source(p, s), {s, back}};
      auto kloop = kashiwara_on_path(cp, loop, k.label, k.op);
      Step kback = *ks;
      kback.direction = back.direction;
      if (!kloop || kloop->steps[0] != *ks || kloop->steps[1] != kback) {
        report("FM3", k, "inverse pair on " + p.format(source(p, s)) +
                             " is not sent to an inverse pair");
      }
    }
  }

  void sequential(const RewritePath& path, Operator k) {
    const auto& p = pres();
    auto kp = kashiwara_on_path(cp, path, k.label, k.op);
    for (std::size_t m = 0; m <= path.steps.size(); ++m) {
      RewritePath a{path.source, {path.steps.begin(),
                                  path.steps.begin() + static_cast<std::ptrdiff_t>(m)}};
      RewritePath b{word_at(p, path, m),
                    {path.steps.begin() + static_cast<std::ptrdiff_t>(m),
                     path.steps.end()}};
      auto ka = kashiwara_on_path(cp, a, k.label, k.op);
      auto kb = kashiwara_on_path(cp, b, k.label, k.op);
      bool ok;
      if (!kp) {
        ok = !ka;
      } else {
        ok = ka && kb && rewriting::compose(p, *ka, *kb) == *kp;
      }
      if (!ok) {
        report("CM4", k, "sequential split at " + std::to_string(m) + " of path on " +
                             p.format(path.source));
      }
    }
  }

  void horizontal(const RewritePath& a, const RewritePath& b, Operator k) {
    const auto& p = pres();
    auto h = rewriting::compose_horizontal(p, a, b);
    auto kh = kashiwara_on_path(cp, h, k.label, k.op);
    auto u = cp.flatten(a.source);
    auto uv = u;
    auto v = cp.flatten(b.source);
    uv.insert(uv.end(), v.begin(), v.end());
    auto pos = crystal::acting_position(cp.base(), uv, k.label, k.op);
    std::optional<RewritePath> expected;
    if (pos) {
      if (*pos < u.size()) {
        auto ka = kashiwara_on_path(cp, a, k.label, k.op);
        if (ka) expected = rewriting::compose_horizontal(p, *ka, b);
      } else {
        auto kb = kashiwara_on_path(cp, b, k.label, k.op);
        if (kb) expected = rewriting::compose_horizontal(p, a, *kb);
      }
      if (!expected) {
        report("CM4", k, "factor vanished in horizontal composite on " +
                             p.format(h.source));
        return;
      }
    }
    if (kh != expected) {
      report("CM4", k, "horizontal composite on " + p.format(h.source) +
                           " does not follow the tensor rule");
    }
  }

  template <typename Fn>
  void guarded(Operator k, Fn fn) {
    try {
      fn();
    } catch (const CertificateViolation& e) {
      report("CM4", k, std::string("transport failed: ") + e.what());
    }
  }
};

}  // namespace

std::vector<CmViolation> verify_cm_axioms(const CrystalPresentation& cp,
                                          const std::vector<RewritePath>& sample) {
  std::vector<CmViolation> out;
  CmChecker check{cp, out};
  auto ops = all_operators(cp.base());
  // Horizontal composites pair every sampled path with a fixed set of partners
  // to keep the check linear in the sample.
  std::size_t partners = std::min<std::size_t>(sample.size(), 24);
  for (const auto& path : sample) {
    rewriting::check_path(cp.presentation(), path);
    for (auto k : ops) {
      check.guarded(k, [&] { check.steps(path, k); });
      check.guarded(k, [&] { check.sequential(path, k); });
      for (std::size_t q = 0; q < partners; ++q) {
        check.guarded(k, [&] { check.horizontal(path, sample[q], k); });
      }
    }
  }
  return out;
}

std::vector<RewritePath> enumerate_paths(const Presentation& p,
                                         const std::vector<Word>& words,
                                         std::size_t max_length) {
  std::vector<RewritePath> out;
  for (const auto& w : words) {
    std::vector<RewritePath> frontier{rewriting::identity_path(w)};
    for (std::size_t len = 0;; ++len) {
      out.insert(out.end(), frontier.begin(), frontier.end());
      if (len == max_length) {
        break;
      }
      std::vector<RewritePath> next;
      for (const auto& path : frontier) {
        for (auto& s : rewriting::steps_at(p, target(p, path))) {
          auto longer = path;
          longer.steps.push_back(std::move(s));
          next.push_back(std::move(longer));
        }
      }
      frontier = std::move(next);
    }
  }
  return out;
}

}  // namespace placto::colpres
