#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "placto/colpres.hpp"
#include "placto/crystal.hpp"
#include "placto/errors.hpp"
#include "placto/plactic.hpp"
#include "placto/rewriting.hpp"

namespace placto::cli {

namespace {

using crystal::CrystalType;
using crystal::Family;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exit status 1 with a message, for failed checks that are not usage errors.
struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::size_t step_cap() {
  const char* v = std::getenv("PLACTO_STEP_CAP");
  if (!v || !*v) {
    return 10000;
  }
  char* end = nullptr;
  auto n = std::strtoull(v, &end, 10);
  if (*end != '\0' || n == 0) {
    throw UsageError(std::string("PLACTO_STEP_CAP must be a positive integer, got '") +
                     v + "'");
  }
  return static_cast<std::size_t>(n);
}

struct TypeArgs {
  std::string family = "A";
  int rank = 0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--family", family, "A, B, C, D or G2")->capture_default_str();
    cmd->add_option("--rank", rank, "rank (inferred from the words for A)")
        ->check(CLI::PositiveNumber);
  }
};

int largest_letter(const std::string& word) {
  int m = 0;
  bool spaced = std::any_of(word.begin(), word.end(),
                            [](unsigned char c) { return std::isspace(c); });
  if (spaced) {
    std::istringstream in(word);
    std::string tok;
    while (in >> tok) {
      try {
        m = std::max(m, std::abs(std::stoi(tok)));
      } catch (const std::exception&) {
        throw DomainError("bad letter '" + tok + "'");
      }
    }
  } else {
    for (unsigned char c : word) {
      if (std::isdigit(c)) m = std::max(m, c - '0');
    }
  }
  return m;
}

CrystalType resolve_type(const TypeArgs& t, const std::vector<std::string>& words) {
  auto family = crystal::parse_family(t.family);
  int rank = t.rank;
  if (rank == 0) {
    if (family == Family::G2) {
      rank = 2;
    } else if (family == Family::A && !words.empty()) {
      int m = 1;
      for (const auto& w : words) {
        m = std::max(m, largest_letter(w));
      }
      rank = std::max(1, m - 1);
    } else {
      throw UsageError("--rank is required for family " + t.family);
    }
  }
  return CrystalType::make(family, rank);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DomainError("cannot open " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(std::ostream& out, const std::string& text, const std::string& path) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) {
    throw DomainError("cannot write " + path);
  }
  f << text;
}

std::string format_path(const crystal::RaisingPath& p) {
  std::string s = "[";
  for (std::size_t k = 0; k < p.ops.size(); ++k) {
    s += (k ? "," : "") + std::to_string(p.ops[k]);
  }
  return s + "]";
}

colpres::CrystalPresentation load_certified(const std::string& path, std::ostream& err) {
  auto cp = colpres::load_presentation(path);
  if (!cp.certificate().ok()) {
    for (const auto& issue : cp.certificate().issues) {
      err << "certificate: rule " << issue.rule << ": " << issue.detail << '\n';
    }
    throw Failure(path + " is not a crystal presentation");
  }
  return cp;
}

// ---------------------------------------------------------------------------

struct Commands {
  Commands(std::ostream& o, std::ostream& e) : out(o), err(e) {}

  std::ostream& out;
  std::ostream& err;

  // crystal
  TypeArgs c_type;
  std::size_t maxlen = 3;
  std::string word;
  std::string format = "text";
  std::size_t cap = 100000;

  // plactic
  TypeArgs p_type;
  std::vector<std::string> pair;
  std::vector<std::string> files;

  // colpres
  TypeArgs b_type;
  std::string pres_file;
  std::string output;
  bool hw_only = false;
  bool via_hw = false;
  std::string strategy = "leftmost";
  unsigned jobs = 1;

  int crystal_check() {
    auto type = resolve_type(c_type, {});
    auto words = crystal::all_words(type, maxlen);
    auto violations = crystal::check_axioms(type, words);
    out << type.name() << " words<=" << maxlen << ": " << words.size() << " words, "
        << violations.size() << " violations\n";
    for (const auto& v : violations) {
      out << v.axiom << " word=" << crystal::format_word(type, v.word)
          << " i=" << v.label << " " << v.detail << '\n';
    }
    return violations.empty() ? 0 : 1;
  }

  int crystal_component() {
    auto type = resolve_type(c_type, {word});
    auto w = crystal::parse_word(type, word);
    auto g = crystal::connected_component(type, w, cap);
    if (format == "dot") {
      out << crystal::component_to_dot(type, g);
    } else if (format == "json") {
      out << crystal::component_to_json(type, g) << '\n';
    } else {
      out << "vertices=" << g.vertices.size() << " edges=" << g.edges.size() << '\n';
      for (const auto& e : g.edges) {
        out << crystal::format_word(type, g.vertices[e.source]) << " -" << e.label
            << "-> " << crystal::format_word(type, g.vertices[e.target]) << '\n';
      }
    }
    return 0;
  }

  int crystal_hw() {
    auto type = resolve_type(c_type, {word});
    auto hw = crystal::to_highest_weight(type, crystal::parse_word(type, word));
    out << crystal::format_word(type, hw.word) << " path=" << format_path(hw.path)
        << '\n';
    return 0;
  }

  int plactic_equiv() {
    auto type = resolve_type(p_type, pair);
    bool eq = plactic::plactic_equiv(type, crystal::parse_word(type, pair[0]),
                                     crystal::parse_word(type, pair[1]));
    out << (eq ? "true" : "false") << '\n';
    return eq ? 0 : 1;
  }

  void print_tableau(const plactic::Tableau& t) {
    if (format == "json") {
      out << plactic::tableau_to_json(t) << '\n';
    } else {
      out << plactic::pretty(t);
    }
  }

  int plactic_insert() {
    auto type = resolve_type(p_type, {word});
    print_tableau(plactic::p_tableau(type, crystal::parse_word(type, word)));
    return 0;
  }

  int plactic_product() {
    auto t1 = plactic::tableau_from_json(read_file(files[0]));
    auto t2 = plactic::tableau_from_json(read_file(files[1]));
    print_tableau(plactic::product(t1, t2));
    return 0;
  }

  int colpres_build() {
    auto type = resolve_type(b_type, {});
    auto cp = colpres::build_column_presentation(type);
    emit(out, colpres::presentation_to_json(cp).dump(2) + "\n", output);
    if (!output.empty()) {
      out << "wrote " << cp.presentation().generators().size() << " generators, "
          << cp.presentation().rules().size() << " rules to " << output << '\n';
    }
    return 0;
  }

  int colpres_check() {
    auto cp = colpres::load_presentation(pres_file);
    const auto& p = cp.presentation();
    auto strat = rewriting::parse_strategy(strategy);
    bool ok = true;
    out << "certificate: " << (cp.certificate().ok() ? "pass" : "fail") << '\n';
    for (const auto& issue : cp.certificate().issues) {
      out << "  rule " << issue.rule << ": " << issue.detail << '\n';
    }
    ok = ok && cp.certificate().ok();
    bool reduced = rewriting::is_reduced(p);
    out << "reduced: " << (reduced ? "yes" : "no") << '\n';
    auto universe = rewriting::words_of_length(p, 3);
    auto full = rewriting::check_confluence_newman(p, universe, strat, step_cap());
    auto hw = colpres::check_confluence_hw(cp, universe, strat, step_cap());
    out << "terminating on " << universe.size() << " words: "
        << (full.termination.terminating() ? "yes" : "no") << '\n';
    out << "critical branchings: " << full.local.critical_count << ", non-confluent "
        << full.local.failures.size() << '\n';
    out << "highest-weight critical branchings: " << hw.local.critical_count
        << ", non-confluent " << hw.local.failures.size() << '\n';
    for (const auto& f : full.local.failures) {
      out << "  " << p.format(rewriting::source(p, f.branching)) << ": "
          << p.format(f.first_normal_form) << " vs " << p.format(f.second_normal_form)
          << '\n';
    }
    ok = ok && full.confluent() && hw.confluent();
    return ok ? 0 : 1;
  }

  int colpres_criticals() {
    auto cp = load_certified(pres_file, err);
    const auto& p = cp.presentation();
    auto bs = hw_only ? colpres::hw_critical_branchings(cp)
                      : rewriting::critical_branchings(p);
    if (format == "json") {
      auto arr = nlohmann::json::array();
      for (const auto& b : bs) {
        arr.push_back({{"source", p.format(rewriting::source(p, b))},
                       {"tag", rewriting::tag_name(rewriting::classify_branching(p, b))},
                       {"first", rewriting::step_to_json(p, b.first)},
                       {"second", rewriting::step_to_json(p, b.second)}});
      }
      nlohmann::json j{{"schema_version", 1},
                       {"hw_only", hw_only},
                       {"count", bs.size()},
                       {"branchings", arr}};
      emit(out, j.dump(2) + "\n", output);
      return 0;
    }
    std::ostringstream text;
    for (const auto& b : bs) {
      text << p.format(rewriting::source(p, b)) << ' '
           << rewriting::tag_name(rewriting::classify_branching(p, b)) << ' '
           << p.rule(b.first.rule).name << '@' << b.first.position() << ' '
           << p.rule(b.second.rule).name << '@' << b.second.position() << '\n';
    }
    text << bs.size() << (hw_only ? " highest-weight" : "") << " critical branchings\n";
    emit(out, text.str(), output);
    return 0;
  }

  colpres::CohereOptions cohere_options() {
    colpres::CohereOptions opt;
    opt.strategy = rewriting::parse_strategy(strategy);
    opt.step_cap = step_cap();
    opt.jobs = jobs;
    return opt;
  }

  std::string cells_text(const colpres::CrystalPresentation& cp,
                         const std::vector<rewriting::CoherenceCell>& cells) {
    const auto& p = cp.presentation();
    std::ostringstream text;
    for (const auto& c : cells) {
      auto f = rewriting::first_side(p, c);
      auto g = rewriting::second_side(p, c);
      text << colpres::cell_key(p, c) << " -> " << p.format(rewriting::target(p, f))
           << " sides " << f.length() << '+' << g.length() << '\n';
    }
    return text.str();
  }

  int colpres_cohere() {
    auto cp = load_certified(pres_file, err);
    auto opt = cohere_options();
    std::string body;
    std::string summary;
    if (via_hw) {
      auto hw = colpres::cohere_via_hw(cp, opt);
      std::vector<rewriting::CoherenceCell> cells;
      for (const auto& c : hw.cells) cells.push_back(c.cell);
      if (format == "dot") {
        body = colpres::cells_to_dot(cp, hw);
      } else if (format == "text") {
        body = cells_text(cp, cells);
      } else {
        auto j = colpres::cells_to_json(cp, hw);
        j["strategy"] = strategy;
        j["via_hw"] = true;
        body = j.dump(2) + "\n";
      }
      summary = std::to_string(hw.cells.size()) + " cells, " +
                std::to_string(hw.cells.size()) + " critical branchings, " +
                std::to_string(hw.hw_critical_count) + " at highest weight\n";
    } else {
      auto cells = colpres::cohere_direct(cp, opt);
      if (format == "dot") {
        body = colpres::cells_to_dot(cp, cells);
      } else if (format == "text") {
        body = cells_text(cp, cells);
      } else {
        auto j = colpres::cells_to_json(cp, cells);
        j["strategy"] = strategy;
        j["via_hw"] = false;
        body = j.dump(2) + "\n";
      }
      summary = std::to_string(cells.size()) + " cells, " +
                std::to_string(cells.size()) + " critical branchings\n";
    }
    emit(out, body, output);
    if (!output.empty() || format == "text") {
      out << summary;
    }
    return 0;
  }

  int colpres_compare() {
    auto cp = load_certified(pres_file, err);
    const auto& p = cp.presentation();
    auto opt = cohere_options();
    auto direct = colpres::cohere_direct(cp, opt);
    auto hw = colpres::cohere_via_hw(cp, opt);
    std::vector<rewriting::CoherenceCell> lowered;
    for (const auto& c : hw.cells) lowered.push_back(c.cell);
    auto diff = colpres::compare_cells(direct, lowered);
    for (auto k : diff) {
      out << "mismatch at " << k << ": "
          << (k < direct.size() ? colpres::cell_key(p, direct[k]) : "-") << " vs "
          << (k < lowered.size() ? colpres::cell_key(p, lowered[k]) : "-") << '\n';
    }
    out << (diff.empty() ? "identical" : "different") << ": " << direct.size()
        << " direct cells, " << lowered.size() << " lowered from "
        << hw.hw_critical_count << " highest-weight cells\n";
    return diff.empty() ? 0 : 1;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Commands cmd(out, err);
  CLI::App app{"Plactic monoids, crystals and string rewriting", "placto"};
  app.require_subcommand(1);
  int status = 0;

  auto* crystal = app.add_subcommand("crystal", "crystal bases and operators");
  crystal->require_subcommand(1);
  auto* check = crystal->add_subcommand("check", "check the crystal axioms on all short words");
  cmd.c_type.add_to(check);
  check->add_option("--maxlen", cmd.maxlen, "longest word checked")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  check->callback([&] { status = cmd.crystal_check(); });

  auto* component = crystal->add_subcommand("component", "connected component of a word");
  cmd.c_type.add_to(component);
  component->add_option("--word", cmd.word, "letter word")->required();
  component->add_option("--format", cmd.format)
      ->check(CLI::IsMember({"text", "dot", "json"}))
      ->capture_default_str();
  component->add_option("--cap", cmd.cap, "vertex limit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  component->callback([&] { status = cmd.crystal_component(); });

  auto* hw = crystal->add_subcommand("hw", "highest-weight word and raising path");
  cmd.c_type.add_to(hw);
  hw->add_option("--word", cmd.word, "letter word")->required();
  hw->callback([&] { status = cmd.crystal_hw(); });

  auto* plactic = app.add_subcommand("plactic", "plactic equivalence and tableaux");
  plactic->require_subcommand(1);
  auto* equiv = plactic->add_subcommand("equiv", "decide plactic equivalence");
  cmd.p_type.add_to(equiv);
  equiv->add_option("words", cmd.pair, "two letter words")->required()->expected(2);
  equiv->callback([&] { status = cmd.plactic_equiv(); });

  auto* insert = plactic->add_subcommand("insert", "column insertion tableau of a word");
  cmd.p_type.add_to(insert);
  insert->add_option("--word", cmd.word, "letter word")->required();
  insert->add_option("--format", cmd.format)
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  insert->callback([&] { status = cmd.plactic_insert(); });

  auto* product = plactic->add_subcommand("product", "product of two tableaux");
  product->add_option("tableaux", cmd.files, "two tableau JSON files")
      ->required()
      ->expected(2)
      ->check(CLI::ExistingFile);
  product->add_option("--format", cmd.format)
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  product->callback([&] { status = cmd.plactic_product(); });

  auto* col = app.add_subcommand("colpres", "column presentations and coherence");
  col->require_subcommand(1);
  auto* build = col->add_subcommand("build", "build the column presentation of type A");
  cmd.b_type.add_to(build);
  build->add_option("-o,--output", cmd.output, "output file (default stdout)");
  build->callback([&] { status = cmd.colpres_build(); });

  auto* pcheck = col->add_subcommand("check", "certificate, reducedness and confluence");
  pcheck->add_option("presentation", cmd.pres_file)->required()->check(CLI::ExistingFile);
  pcheck->add_option("--strategy", cmd.strategy)
      ->check(CLI::IsMember({"leftmost", "rightmost"}))
      ->capture_default_str();
  pcheck->callback([&] { status = cmd.colpres_check(); });

  auto* crits = col->add_subcommand("criticals", "list critical branchings");
  crits->add_option("presentation", cmd.pres_file)->required()->check(CLI::ExistingFile);
  crits->add_flag("--hw-only", cmd.hw_only, "only highest-weight sources");
  crits->add_option("--format", cmd.format)
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  crits->add_option("-o,--output", cmd.output, "output file (default stdout)");
  crits->callback([&] { status = cmd.colpres_criticals(); });

  auto* cohere = col->add_subcommand("cohere", "coherence cells of the critical branchings");
  cohere->add_option("presentation", cmd.pres_file)->required()->check(CLI::ExistingFile);
  cohere->add_flag("--via-hw", cmd.via_hw, "complete at highest weight and lower");
  cohere->add_option("--strategy", cmd.strategy)
      ->check(CLI::IsMember({"leftmost", "rightmost"}))
      ->capture_default_str();
  cohere->add_option("--jobs", cmd.jobs, "worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cohere->add_option("--format", cmd.format)
      ->check(CLI::IsMember({"json", "dot", "text"}));
  cohere->add_option("-o,--output", cmd.output, "output file (default stdout)");
  cohere->callback([&] {
    if (cmd.format == "text" && cohere->count("--format") == 0) cmd.format = "json";
    status = cmd.colpres_cohere();
  });

  auto* compare = col->add_subcommand("compare", "direct against highest-weight coherence");
  compare->add_option("presentation", cmd.pres_file)->required()->check(CLI::ExistingFile);
  compare->add_option("--strategy", cmd.strategy)
      ->check(CLI::IsMember({"leftmost", "rightmost"}))
      ->capture_default_str();
  compare->add_option("--jobs", cmd.jobs, "worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  compare->callback([&] { status = cmd.colpres_compare(); });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Failure& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const NonTermination& e) {
    err << "error: " << e.what() << '\n';
    for (const auto& w : e.trace()) err << "  " << w << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return status;
}

}  // namespace placto::cli
