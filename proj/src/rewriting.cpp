#include "placto/rewriting.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "placto/errors.hpp"

namespace placto::rewriting {

namespace {

const std::vector<RuleId> kNoRules;

Word concat(const Word& a, const Word& b, const Word& c) {
  Word w;
  w.reserve(a.size() + b.size() + c.size());
  w.insert(w.end(), a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  w.insert(w.end(), c.begin(), c.end());
  return w;
}

Word slice(const Word& w, std::size_t from, std::size_t to) {
  return Word(w.begin() + static_cast<std::ptrdiff_t>(from),
              w.begin() + static_cast<std::ptrdiff_t>(to));
}

bool occurs_at(const Word& w, std::size_t pos, const Word& pattern) {
  return pos + pattern.size() <= w.size() &&
         std::equal(pattern.begin(), pattern.end(),
                    w.begin() + static_cast<std::ptrdiff_t>(pos));
}

bool contains_factor(const Word& w, const Word& pattern) {
  for (std::size_t k = 0; k + pattern.size() <= w.size(); ++k) {
    if (occurs_at(w, k, pattern)) {
      return true;
    }
  }
  return false;
}

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = w.size();
    for (auto s : w) {
      h ^= s + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

nlohmann::json word_json(const Presentation& p, const Word& w) {
  auto j = nlohmann::json::array();
  for (auto s : w) {
    j.push_back(p.generators()[s]);
  }
  return j;
}

Word word_from_json(const Presentation& p, const nlohmann::json& j) {
  Word w;
  for (const auto& x : j) {
    w.push_back(p.generator(x.get<std::string>()));
  }
  return w;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
    }
    out += c;
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Presentation

Presentation::Presentation(const std::vector<std::string>& generators) {
  for (const auto& g : generators) {
    add_generator(g);
  }
}

Symbol Presentation::add_generator(std::string name) {
  if (name.empty()) {
    throw DomainError("generator names must be non-empty");
  }
  if (name.find('.') != std::string::npos) {
    throw DomainError("generator name '" + name + "' contains '.'");
  }
  if (by_name_.count(name)) {
    throw DomainError("duplicate generator '" + name + "'");
  }
  auto s = static_cast<Symbol>(generators_.size());
  by_name_.emplace(name, s);
  generators_.push_back(std::move(name));
  by_first_.emplace_back();
  return s;
}

void Presentation::check_word(const Word& w) const {
  for (auto s : w) {
    if (s >= generators_.size()) {
      throw DomainError("symbol " + std::to_string(s) + " is not a generator");
    }
  }
}

RuleId Presentation::add_rule(std::string name, Word lhs, Word rhs) {
  if (lhs.empty()) {
    throw DomainError("rule '" + name + "' has an empty left-hand side");
  }
  if (lhs == rhs) {
    throw DomainError("rule '" + name + "' is an identity");
  }
  check_word(lhs);
  check_word(rhs);
  auto it = by_lhs_.find(lhs);
  if (it != by_lhs_.end()) {
    for (auto id : it->second) {
      if (rules_[id].rhs == rhs) {
        throw DomainError("rule '" + name + "' duplicates rule '" +
                          rules_[id].name + "'");
      }
    }
  }
  RuleId id = rules_.size();
  by_first_[lhs.front()].push_back(id);
  by_lhs_[lhs].push_back(id);
  rules_.push_back(Rule{std::move(name), std::move(lhs), std::move(rhs)});
  return id;
}

const Rule& Presentation::rule(RuleId id) const {
  if (id >= rules_.size()) {
    throw DomainError("no rule with index " + std::to_string(id));
  }
  return rules_[id];
}

std::optional<Symbol> Presentation::find_generator(std::string_view name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) {
    return std::nullopt;
  }
  return it->second;
}

Symbol Presentation::generator(std::string_view name) const {
  auto s = find_generator(name);
  if (!s) {
    throw DomainError("unknown generator '" + std::string(name) + "'");
  }
  return *s;
}

const std::vector<RuleId>& Presentation::rules_with_lhs(const Word& lhs) const {
  auto it = by_lhs_.find(lhs);
  return it == by_lhs_.end() ? kNoRules : it->second;
}

const std::vector<RuleId>& Presentation::rules_starting_with(Symbol s) const {
  return s < by_first_.size() ? by_first_[s] : kNoRules;
}

std::string Presentation::format(const Word& w) const {
  if (w.empty()) {
    return "()";
  }
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) {
      out += '.';
    }
    out += w[k] < generators_.size() ? generators_[w[k]] : "?";
  }
  return out;
}

Word Presentation::parse(std::string_view text) const {
  Word w;
  if (text.empty() || text == "()") {
    return w;
  }
  std::size_t start = 0;
  for (;;) {
    auto dot = text.find('.', start);
    w.push_back(generator(text.substr(start, dot - start)));
    if (dot == std::string_view::npos) {
      break;
    }
    start = dot + 1;
  }
  return w;
}

// ---------------------------------------------------------------------------
// Steps and paths

bool step_before(const Step& a, const Step& b) {
  return std::tuple(a.position(), a.rule, a.direction) <
         std::tuple(b.position(), b.rule, b.direction);
}

const Word& redex(const Presentation& p, const Step& s) {
  const auto& r = p.rule(s.rule);
  return s.direction == StepDirection::forward ? r.lhs : r.rhs;
}

const Word& contractum(const Presentation& p, const Step& s) {
  const auto& r = p.rule(s.rule);
  return s.direction == StepDirection::forward ? r.rhs : r.lhs;
}

Word source(const Presentation& p, const Step& s) {
  return concat(s.left, redex(p, s), s.right);
}

Word target(const Presentation& p, const Step& s) {
  return concat(s.left, contractum(p, s), s.right);
}

RewritePath identity_path(Word w) { return RewritePath{std::move(w), {}}; }

Word target(const Presentation& p, const RewritePath& path) {
  return path.steps.empty() ? path.source : target(p, path.steps.back());
}

Word word_at(const Presentation& p, const RewritePath& path, std::size_t n) {
  if (n > path.steps.size()) {
    throw DomainError("path position out of range");
  }
  return n == 0 ? path.source : target(p, path.steps[n - 1]);
}

void check_path(const Presentation& p, const RewritePath& path) {
  Word cur = path.source;
  for (std::size_t k = 0; k < path.steps.size(); ++k) {
    if (source(p, path.steps[k]) != cur) {
      throw DomainError("step " + std::to_string(k) + " does not apply to " +
                        p.format(cur));
    }
    cur = target(p, path.steps[k]);
  }
}

RewritePath compose(const Presentation& p, const RewritePath& a,
                    const RewritePath& b) {
  if (target(p, a) != b.source) {
    throw DomainError("paths are not composable: " + p.format(target(p, a)) +
                      " vs " + p.format(b.source));
  }
  RewritePath out = a;
  out.steps.insert(out.steps.end(), b.steps.begin(), b.steps.end());
  return out;
}

RewritePath whisker(const Word& left, const RewritePath& path, const Word& right) {
  RewritePath out{concat(left, path.source, right), {}};
  out.steps.reserve(path.steps.size());
  for (const auto& s : path.steps) {
    out.steps.push_back(Step{s.rule, concat(left, s.left, {}),
                             concat(s.right, right, {}), s.direction});
  }
  return out;
}

RewritePath compose_horizontal(const Presentation& p, const RewritePath& a,
                               const RewritePath& b) {
  return compose(p, whisker({}, a, b.source), whisker(target(p, a), b, {}));
}

RewritePath inverse(const Presentation& p, const RewritePath& path) {
  RewritePath out{target(p, path), {}};
  for (auto it = path.steps.rbegin(); it != path.steps.rend(); ++it) {
    Step s = *it;
    s.direction = s.direction == StepDirection::forward ? StepDirection::inverse
                                                        : StepDirection::forward;
    out.steps.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Normal forms

std::vector<Step> steps_at(const Presentation& p, const Word& w) {
  std::vector<Step> out;
  for (std::size_t pos = 0; pos < w.size(); ++pos) {
    for (auto id : p.rules_starting_with(w[pos])) {
      const auto& lhs = p.rules()[id].lhs;
      if (occurs_at(w, pos, lhs)) {
        out.push_back(Step{id, slice(w, 0, pos), slice(w, pos + lhs.size(), w.size()),
                           StepDirection::forward});
      }
    }
  }
  return out;
}

std::optional<Step> leftmost_step(const Presentation& p, const Word& w) {
  for (std::size_t pos = 0; pos < w.size(); ++pos) {
    for (auto id : p.rules_starting_with(w[pos])) {
      const auto& lhs = p.rules()[id].lhs;
      if (occurs_at(w, pos, lhs)) {
        return Step{id, slice(w, 0, pos), slice(w, pos + lhs.size(), w.size()),
                    StepDirection::forward};
      }
    }
  }
  return std::nullopt;
}

std::optional<Step> rightmost_step(const Presentation& p, const Word& w) {
  for (std::size_t pos = w.size(); pos-- > 0;) {
    for (auto id : p.rules_starting_with(w[pos])) {
      const auto& lhs = p.rules()[id].lhs;
      if (occurs_at(w, pos, lhs)) {
        return Step{id, slice(w, 0, pos), slice(w, pos + lhs.size(), w.size()),
                    StepDirection::forward};
      }
    }
  }
  return std::nullopt;
}

bool is_normal_form(const Presentation& p, const Word& w) {
  return !leftmost_step(p, w);
}

std::string strategy_name(Strategy s) {
  return s == Strategy::leftmost ? "leftmost" : "rightmost";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "leftmost") return Strategy::leftmost;
  if (name == "rightmost") return Strategy::rightmost;
  throw DomainError("unknown strategy '" + std::string(name) + "'");
}

Normalization normalize(const Presentation& p, const Word& w, Strategy strategy,
                        std::size_t step_cap) {
  p.check_word(w);
  Normalization out{w, identity_path(w)};
  std::set<Word> seen{w};
  for (;;) {
    auto step = strategy == Strategy::leftmost ? leftmost_step(p, out.normal_form)
                                               : rightmost_step(p, out.normal_form);
    if (!step) {
      return out;
    }
    auto next = target(p, *step);
    bool repeat = !seen.insert(next).second;
    out.path.steps.push_back(std::move(*step));
    out.normal_form = std::move(next);
    if (repeat || out.path.steps.size() > step_cap) {
      std::vector<std::string> trace;
      auto n = out.path.steps.size();
      for (std::size_t k = n > 20 ? n - 20 : 0; k <= n; ++k) {
        trace.push_back(p.format(word_at(p, out.path, k)));
      }
      throw NonTermination(repeat ? "rewriting cycle from " + p.format(w)
                                  : "no normal form for " + p.format(w) +
                                        " within " + std::to_string(step_cap) +
                                        " steps",
                           std::move(trace));
    }
  }
}

bool is_reduced(const Presentation& p) {
  const auto& rules = p.rules();
  for (RuleId a = 0; a < rules.size(); ++a) {
    for (RuleId b = 0; b < rules.size(); ++b) {
      if (a != b && contains_factor(rules[a].lhs, rules[b].lhs)) {
        return false;
      }
    }
    if (!is_normal_form(p, rules[a].rhs)) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Branchings

std::string tag_name(BranchTag tag) {
  switch (tag) {
    case BranchTag::aspherical: return "aspherical";
    case BranchTag::peiffer: return "peiffer";
    case BranchTag::inclusion: return "inclusion";
    case BranchTag::overlap: return "overlap";
  }
  throw InternalError("bad branch tag");
}

Word source(const Presentation& p, const Branching& b) {
  return source(p, b.first);
}

BranchTag classify_branching(const Presentation& p, const Branching& b) {
  if (source(p, b.first) != source(p, b.second)) {
    throw DomainError("branching steps have different sources");
  }
  if (b.first == b.second) {
    return BranchTag::aspherical;
  }
  auto s1 = b.first.position();
  auto e1 = s1 + redex(p, b.first).size();
  auto s2 = b.second.position();
  auto e2 = s2 + redex(p, b.second).size();
  if (e1 <= s2 || e2 <= s1) {
    return BranchTag::peiffer;
  }
  if ((s1 <= s2 && e2 <= e1) || (s2 <= s1 && e1 <= e2)) {
    return BranchTag::inclusion;
  }
  return BranchTag::overlap;
}

bool is_overlapping(BranchTag tag) {
  return tag == BranchTag::inclusion || tag == BranchTag::overlap;
}

bool is_critical(const Presentation& p, const Branching& b) {
  if (!is_overlapping(classify_branching(p, b))) {
    return false;
  }
  auto s1 = b.first.position();
  auto s2 = b.second.position();
  auto e = std::max(s1 + redex(p, b.first).size(), s2 + redex(p, b.second).size());
  return std::min(s1, s2) == 0 && e == source(p, b).size();
}

std::vector<Branching> local_branchings(const Presentation& p, const Word& w) {
  auto steps = steps_at(p, w);
  std::vector<Branching> out;
  for (std::size_t a = 0; a < steps.size(); ++a) {
    for (std::size_t b = a; b < steps.size(); ++b) {
      out.push_back(Branching{steps[a], steps[b]});
    }
  }
  return out;
}

std::vector<Branching> critical_branchings(const Presentation& p) {
  const auto& rules = p.rules();
  std::vector<Branching> out;
  std::set<std::tuple<Word, std::size_t, RuleId, std::size_t, RuleId>> seen;
  auto emit = [&](Step f, Step g) {
    if (step_before(g, f)) {
      std::swap(f, g);
    }
    auto key = std::tuple(source(p, f), f.position(), f.rule, g.position(), g.rule);
    if (seen.insert(std::move(key)).second) {
      out.push_back(Branching{std::move(f), std::move(g)});
    }
  };
  for (RuleId r1 = 0; r1 < rules.size(); ++r1) {
    const auto& l1 = rules[r1].lhs;
    for (RuleId r2 = 0; r2 < rules.size(); ++r2) {
      const auto& l2 = rules[r2].lhs;
      // l2 inside l1
      for (std::size_t k = 0; k + l2.size() <= l1.size(); ++k) {
        if ((r1 == r2 && k == 0) || !occurs_at(l1, k, l2)) {
          continue;
        }
        emit(Step{r1, {}, {}, StepDirection::forward},
             Step{r2, slice(l1, 0, k), slice(l1, k + l2.size(), l1.size()),
                  StepDirection::forward});
      }
      // a proper suffix of l1 is a proper prefix of l2
      for (std::size_t m = 1; m < l1.size() && m < l2.size(); ++m) {
        if (!std::equal(l1.end() - static_cast<std::ptrdiff_t>(m), l1.end(),
                        l2.begin())) {
          continue;
        }
        emit(Step{r1, {}, slice(l2, m, l2.size()), StepDirection::forward},
             Step{r2, slice(l1, 0, l1.size() - m), {}, StepDirection::forward});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Confluence

RewritePath first_side(const Presentation& p, const CoherenceCell& cell) {
  RewritePath f{source(p, cell.branching.first), {cell.branching.first}};
  return compose(p, f, cell.first_completion);
}

RewritePath second_side(const Presentation& p, const CoherenceCell& cell) {
  RewritePath g{source(p, cell.branching.second), {cell.branching.second}};
  return compose(p, g, cell.second_completion);
}

Completion complete_branching(const Presentation& p, const Branching& b,
                              Strategy strategy, std::size_t step_cap) {
  auto t1 = target(p, b.first);
  auto t2 = target(p, b.second);
  try {
    auto n1 = normalize(p, t1, strategy, step_cap);
    auto n2 = normalize(p, t2, strategy, step_cap);
    if (n1.normal_form != n2.normal_form) {
      return NonConfluence{b, n1.normal_form, n2.normal_form,
                           "distinct normal forms"};
    }
    return CoherenceCell{b, std::move(n1.path), std::move(n2.path)};
  } catch (const NonTermination& e) {
    return NonConfluence{b, {}, {}, e.what()};
  }
}

LocalConfluenceReport check_branchings_confluence(
    const Presentation& p, const std::vector<Branching>& branchings,
    Strategy strategy, std::size_t step_cap) {
  LocalConfluenceReport report;
  report.critical_count = branchings.size();
  for (const auto& b : branchings) {
    auto c = complete_branching(p, b, strategy, step_cap);
    if (auto* nc = std::get_if<NonConfluence>(&c)) {
      report.failures.push_back(std::move(*nc));
    }
  }
  return report;
}

LocalConfluenceReport check_local_confluence(const Presentation& p,
                                             Strategy strategy,
                                             std::size_t step_cap) {
  return check_branchings_confluence(p, critical_branchings(p), strategy,
                                     step_cap);
}

TerminationReport check_termination(const Presentation& p,
                                    const std::vector<Word>& universe,
                                    std::size_t node_cap) {
  enum Color : std::uint8_t { grey, black };
  TerminationReport report;
  std::unordered_map<Word, Color, WordHash> color;

  struct Frame {
    Word word;
    std::vector<Word> next;
    std::size_t index = 0;
  };
  auto successors = [&](const Word& w) {
    std::vector<Word> out;
    for (const auto& s : steps_at(p, w)) {
      out.push_back(target(p, s));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };

  for (const auto& start : universe) {
    p.check_word(start);
    ++report.words_checked;
    if (color.count(start)) {
      continue;
    }
    std::vector<Frame> stack;
    color[start] = grey;
    stack.push_back(Frame{start, successors(start), 0});
    while (!stack.empty()) {
      auto& top = stack.back();
      if (top.index == top.next.size()) {
        color[top.word] = black;
        stack.pop_back();
        continue;
      }
      Word w = top.next[top.index++];
      auto it = color.find(w);
      if (it != color.end()) {
        if (it->second == grey) {
          auto from = std::find_if(stack.begin(), stack.end(),
                                   [&](const Frame& f) { return f.word == w; });
          for (; from != stack.end(); ++from) {
            report.cycle.push_back(from->word);
          }
          report.cycle.push_back(w);
          report.graph_size = color.size();
          return report;
        }
        continue;
      }
      if (color.size() >= node_cap) {
        throw ResourceError("rewrite graph exceeds " + std::to_string(node_cap) +
                                " words",
                            color.size());
      }
      color[w] = grey;
      auto next = successors(w);
      stack.push_back(Frame{std::move(w), std::move(next), 0});
    }
  }
  report.graph_size = color.size();
  return report;
}

ConfluenceReport check_confluence_newman(const Presentation& p,
                                         const std::vector<Word>& universe,
                                         Strategy strategy,
                                         std::size_t step_cap) {
  ConfluenceReport report;
  report.termination = check_termination(p, universe);
  report.local = check_local_confluence(p, strategy, step_cap);
  return report;
}

std::vector<Word> words_of_length(const Presentation& p, std::size_t length) {
  std::vector<Word> out;
  auto n = static_cast<Symbol>(p.generators().size());
  if (n == 0) {
    if (length == 0) out.emplace_back();
    return out;
  }
  Word w(length, 0);
  for (;;) {
    out.push_back(w);
    std::size_t k = length;
    while (k > 0 && w[k - 1] + 1 == n) {
      w[--k] = 0;
    }
    if (k == 0) {
      return out;
    }
    ++w[k - 1];
  }
}

std::vector<Word> all_words(const Presentation& p, std::size_t max_length) {
  std::vector<Word> out;
  for (std::size_t len = 0; len <= max_length; ++len) {
    auto ws = words_of_length(p, len);
    out.insert(out.end(), ws.begin(), ws.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization

nlohmann::json presentation_to_json(const Presentation& p) {
  auto rules = nlohmann::json::array();
  for (const auto& r : p.rules()) {
    rules.push_back({{"id", r.name},
                     {"lhs", word_json(p, r.lhs)},
                     {"rhs", word_json(p, r.rhs)}});
  }
  return {{"schema_version", 1}, {"generators", p.generators()}, {"rules", rules}};
}

Presentation presentation_from_json(const nlohmann::json& j) {
  try {
    if (j.contains("schema_version") && j.at("schema_version").get<int>() != 1) {
      throw DomainError("unsupported schema_version");
    }
    Presentation p(j.at("generators").get<std::vector<std::string>>());
    for (const auto& r : j.at("rules")) {
      auto lhs = word_from_json(p, r.at("lhs"));
      auto rhs = word_from_json(p, r.at("rhs"));
      std::string name = r.contains("id") ? r.at("id").get<std::string>()
                                          : "r" + std::to_string(p.rules().size());
      p.add_rule(std::move(name), std::move(lhs), std::move(rhs));
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("presentation JSON: ") + e.what());
  }
}

nlohmann::json step_to_json(const Presentation& p, const Step& s) {
  nlohmann::json j{{"rule", p.rule(s.rule).name},
                   {"position", s.position()},
                   {"left", word_json(p, s.left)},
                   {"right", word_json(p, s.right)},
                   {"source", word_json(p, source(p, s))},
                   {"target", word_json(p, target(p, s))}};
  if (s.direction == StepDirection::inverse) {
    j["inverse"] = true;
  }
  return j;
}

nlohmann::json path_to_json(const Presentation& p, const RewritePath& path) {
  auto steps = nlohmann::json::array();
  for (const auto& s : path.steps) {
    steps.push_back(step_to_json(p, s));
  }
  return {{"source", word_json(p, path.source)},
          {"target", word_json(p, target(p, path))},
          {"steps", steps}};
}

nlohmann::json cell_to_json(const Presentation& p, const CoherenceCell& cell) {
  auto f = first_side(p, cell);
  auto g = second_side(p, cell);
  return {{"source", word_json(p, f.source)},
          {"target", word_json(p, target(p, f))},
          {"tag", tag_name(classify_branching(p, cell.branching))},
          {"first", path_to_json(p, f)},
          {"second", path_to_json(p, g)}};
}

std::string cell_to_dot(const Presentation& p, const CoherenceCell& cell,
                        const std::string& graph_name,
                        const std::string& annotation) {
  auto f = first_side(p, cell);
  auto g = second_side(p, cell);
  std::map<Word, std::size_t> ids;
  std::ostringstream nodes;
  std::ostringstream edges;
  auto node = [&](const Word& w) {
    auto [it, fresh] = ids.emplace(w, ids.size());
    if (fresh) {
      nodes << "  n" << it->second << " [label=\"" << dot_escape(p.format(w))
            << "\"];\n";
    }
    return it->second;
  };
  for (const auto* side : {&f, &g}) {
    for (std::size_t k = 0; k < side->steps.size(); ++k) {
      auto a = node(word_at(p, *side, k));
      auto b = node(word_at(p, *side, k + 1));
      edges << "  n" << a << " -> n" << b << " [label=\""
            << dot_escape(p.rule(side->steps[k].rule).name) << "\"];\n";
    }
  }
  std::ostringstream out;
  out << "digraph \"" << dot_escape(graph_name) << "\" {\n";
  if (!annotation.empty()) {
    out << "  label=\"" << dot_escape(annotation) << "\";\n";
  }
  out << nodes.str() << edges.str() << "}\n";
  return out.str();
}

}  // namespace placto::rewriting
