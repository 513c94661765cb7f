// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "placto/colpres.hpp"
#include "placto/crystal.hpp"
#include "placto/plactic.hpp"
#include "placto/rewriting.hpp"

using namespace placto;
using colpres::CrystalPresentation;
using crystal::CrystalType;
using crystal::Family;
using crystal::LetterWord;
using crystal::Op;
using rewriting::Strategy;
using rewriting::Word;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failure; later ones only bump the count.
struct Tally {
  Outcome o;
  std::size_t failures = 0;

  void fail(const std::string& what) {
    if (failures++ == 0) o.detail = what;
    o.pass = false;
  }
  Outcome done(const std::string& summary) {
    if (o.pass) {
      o.detail = summary;
    } else {
      o.detail += " (" + std::to_string(failures) + " failures)";
    }
    return o;
  }
};

CrystalType type_a(int rank) { return CrystalType::make(Family::A, rank); }

const CrystalPresentation& col_a(int rank) {
  static std::vector<CrystalPresentation> cache;
  while (static_cast<int>(cache.size()) < rank) {
    cache.push_back(colpres::build_column_presentation(type_a(static_cast<int>(cache.size()) + 1)));
  }
  return cache[rank - 1];
}

Outcome crystal_axioms() {
  Tally t;
  struct Case {
    Family f;
    int rank;
    std::size_t len;
  };
  std::size_t words = 0;
  for (auto c : {Case{Family::A, 3, 5}, Case{Family::B, 2, 4}, Case{Family::C, 2, 4},
                 Case{Family::D, 4, 3}, Case{Family::G2, 2, 4}}) {
    auto type = CrystalType::make(c.f, c.rank);
    auto ws = crystal::all_words(type, c.len);
    words += ws.size();
    auto v = crystal::check_axioms(type, ws);
    if (!v.empty()) {
      t.fail(type.name() + ": " + v[0].axiom + " on " + crystal::format_word(type, v[0].word));
    }
  }
  return t.done(std::to_string(words) + " words over A3, B2, C2, D4, G2, no violations");
}

Outcome oracle_equivalence() {
  Tally t;
  auto a2 = type_a(2);
  auto ws = crystal::all_words(a2, 5);
  std::size_t pairs = 0;
  std::size_t equivalent = 0;
  for (const auto& u : ws) {
    for (const auto& v : ws) {
      ++pairs;
      bool eq = plactic::plactic_equiv(a2, u, v);
      equivalent += eq;
      if (eq != plactic::knuth_oracle_equiv(u, v)) {
        t.fail(crystal::format_word(a2, u) + " vs " + crystal::format_word(a2, v));
      }
    }
  }
  return t.done(std::to_string(pairs) + " pairs, " + std::to_string(equivalent) +
                " equivalent, all agree");
}

Outcome insertion_morphism() {
  Tally t;
  auto a2 = type_a(2);
  auto ws = crystal::all_words(a2, 5);
  std::size_t checks = 0;
  for (const auto& w : ws) {
    auto r = plactic::read_columns(plactic::p_tableau(a2, w));
    for (auto i : a2.labels()) {
      for (auto op : {Op::raise, Op::lower}) {
        ++checks;
        auto kw = crystal::word_op(a2, w, i, op);
        auto kr = crystal::word_op(a2, r, i, op);
        bool ok = kw.has_value() == kr.has_value() &&
                  (!kw || plactic::read_columns(plactic::p_tableau(a2, *kw)) == *kr);
        if (!ok) t.fail(crystal::format_word(a2, w) + " label " + std::to_string(i));
      }
    }
  }
  return t.done(std::to_string(ws.size()) + " words, " + std::to_string(checks) +
                " operator checks");
}

Outcome presentation_validity() {
  Tally t;
  std::ostringstream s;
  for (int rank = 1; rank <= 3; ++rank) {
    const auto& cp = col_a(rank);
    const auto& p = cp.presentation();
    if (!rewriting::is_reduced(p)) t.fail("Col(A" + std::to_string(rank) + ") not reduced");
    auto cert = colpres::check_crystal_presentation(cp);
    if (!cert.ok()) t.fail("Col(A" + std::to_string(rank) + ") certificate: " + cert.issues[0].detail);
    auto universe = rewriting::words_of_length(p, 3);
    auto term = rewriting::check_termination(p, universe);
    if (!term.terminating()) t.fail("Col(A" + std::to_string(rank) + ") has a cycle");
    auto local = rewriting::check_local_confluence(p, Strategy::leftmost, 10000);
    if (!local.locally_confluent()) t.fail("Col(A" + std::to_string(rank) + ") not locally confluent");
    s << "A" << rank << ": " << p.generators().size() << " generators, " << p.rules().size()
      << " rules, " << local.critical_count << " critical; ";
  }
  return t.done(s.str() + "reduced, certified, terminating, confluent");
}

Outcome hexagon_bound() {
  Tally t;
  std::size_t cells = 0;
  std::size_t longest = 0;
  for (int rank = 1; rank <= 3; ++rank) {
    const auto& cp = col_a(rank);
    const auto& p = cp.presentation();
    for (auto strategy : {Strategy::leftmost, Strategy::rightmost}) {
      colpres::CohereOptions opt;
      opt.strategy = strategy;
      for (const auto& c : colpres::cohere_direct(cp, opt)) {
        ++cells;
        auto l = rewriting::first_side(p, c).length();
        auto r = rewriting::second_side(p, c).length();
        longest = std::max({longest, l, r});
        if (l > 3 || r > 3) t.fail(colpres::cell_key(p, c));
      }
    }
  }
  return t.done(std::to_string(cells) + " cells, longest side " + std::to_string(longest));
}

Outcome highest_weight_reduction() {
  Tally t;
  std::ostringstream s;
  for (int rank = 1; rank <= 3; ++rank) {
    const auto& cp = col_a(rank);
    for (auto strategy : {Strategy::leftmost, Strategy::rightmost}) {
      colpres::CohereOptions opt;
      opt.strategy = strategy;
      auto direct = colpres::cohere_direct(cp, opt);
      auto hw = colpres::cohere_via_hw(cp, opt);
      std::vector<rewriting::CoherenceCell> lowered;
      for (const auto& c : hw.cells) lowered.push_back(c.cell);
      auto diff = colpres::compare_cells(direct, lowered);
      if (!diff.empty()) {
        t.fail("A" + std::to_string(rank) + " " + rewriting::strategy_name(strategy) +
               ": mismatch at " + std::to_string(diff[0]));
      }
      if (strategy == Strategy::leftmost) {
        s << "A" << rank << ": " << direct.size() << " cells from " << hw.hw_critical_count
          << "; ";
      }
    }
  }
  return t.done(s.str() + "identical under both strategies");
}

Outcome reduced_newman() {
  Tally t;
  std::ostringstream s;
  for (int rank = 1; rank <= 3; ++rank) {
    const auto& cp = col_a(rank);
    auto universe = rewriting::words_of_length(cp.presentation(), 3);
    auto full = rewriting::check_confluence_newman(cp.presentation(), universe, Strategy::leftmost, 10000);
    auto hw = colpres::check_confluence_hw(cp, universe, Strategy::leftmost, 10000);
    if (!full.confluent() || !hw.confluent()) t.fail("Col(A" + std::to_string(rank) + ") verdicts");
  }
  // fault injection: drop whole rule orbits of Col(A2); the certificate still
  // holds, and both checks must give the same verdict on every variant
  const auto& cp = col_a(2);
  auto universe = rewriting::words_of_length(cp.presentation(), 3);
  std::size_t broken = 0;
  for (const auto& orbit : colpres::rule_orbits(cp)) {
    auto cut = colpres::restrict_rules(cp, [&](rewriting::RuleId r) {
      return std::find(orbit.begin(), orbit.end(), r) == orbit.end();
    });
    if (!cut.certificate().ok()) {
      t.fail("orbit removal broke the certificate");
      continue;
    }
    auto f = rewriting::check_confluence_newman(cut.presentation(), universe, Strategy::leftmost, 10000);
    auto h = colpres::check_confluence_hw(cut, universe, Strategy::leftmost, 10000);
    if (f.confluent() != h.confluent()) {
      t.fail("verdicts differ after removing rule " + cp.presentation().rule(orbit[0]).name);
    }
    if (!f.confluent() && !h.confluent()) ++broken;
  }
  if (broken == 0) t.fail("no fault-injected instance was non-confluent");
  s << "Col(A1..A3) confluent under both; " << broken
    << " non-confluent orbit deletions of Col(A2) flagged by both";
  return t.done(s.str());
}

Outcome transport_properties() {
  Tally t;
  std::size_t branchings = 0;
  std::size_t paths = 0;
  for (int rank = 1; rank <= 2; ++rank) {
    const auto& cp = col_a(rank);
    const auto& p = cp.presentation();
    auto ops = colpres::all_operators(cp.base());
    auto words = rewriting::all_words(p, 3);
    for (const auto& w : words) {
      for (const auto& b : rewriting::local_branchings(p, w)) {
        ++branchings;
        auto tag = rewriting::classify_branching(p, b);
        auto completion = rewriting::complete_branching(p, b, Strategy::leftmost, 10000);
        for (auto k : ops) {
          auto kb = colpres::kashiwara_on_branching(cp, b, k.label, k.op);
          auto kw = colpres::kashiwara_on_word(cp, w, k.label, k.op);
          if (kb.has_value() != kw.has_value()) {
            t.fail("pointwise: " + p.format(w));
            continue;
          }
          if (!kb) continue;
          if (rewriting::source(p, *kb) != *kw) t.fail("source: " + p.format(w));
          if (rewriting::classify_branching(p, *kb) != tag) t.fail("tag: " + p.format(w));
          // confluence transfer: the transported cell closes the transported
          // branching, and agrees with completing it afresh
          if (!std::holds_alternative<rewriting::CoherenceCell>(completion)) {
            t.fail("not confluent: " + p.format(w));
            continue;
          }
          auto cell = colpres::kashiwara_on_cell(cp, std::get<rewriting::CoherenceCell>(completion),
                                                 k.label, k.op);
          auto fresh = rewriting::complete_branching(p, *kb, Strategy::leftmost, 10000);
          if (!cell || !std::holds_alternative<rewriting::CoherenceCell>(fresh) ||
              std::get<rewriting::CoherenceCell>(fresh) != *cell) {
            t.fail("confluence transfer: " + p.format(w));
          }
        }
      }
    }
    for (const auto& path : colpres::enumerate_paths(p, words, 3)) {
      ++paths;
      for (auto k : ops) {
        auto kp = colpres::kashiwara_on_path(cp, path, k.label, k.op);
        auto ks = colpres::kashiwara_on_word(cp, path.source, k.label, k.op);
        if (kp.has_value() != ks.has_value()) {
          t.fail("path pointwise: " + p.format(path.source));
          continue;
        }
        if (!kp) continue;
        if (kp->length() != path.length()) t.fail("path length: " + p.format(path.source));
        auto kt = colpres::kashiwara_on_word(cp, rewriting::target(p, path), k.label, k.op);
        if (!kt || rewriting::target(p, *kp) != *kt) t.fail("path target: " + p.format(path.source));
        for (std::size_t n = 0; n <= path.length(); ++n) {
          auto kn = colpres::kashiwara_on_word(cp, rewriting::word_at(p, path, n), k.label, k.op);
          if (!kn || rewriting::word_at(p, *kp, n) != *kn) {
            t.fail("path pointwise: " + p.format(path.source));
            break;
          }
        }
      }
    }
  }
  return t.done(std::to_string(branchings) + " local branchings, " + std::to_string(paths) +
                " paths over Col(A1), Col(A2)");
}

Outcome highest_weight_submonoid() {
  Tally t;
  std::ostringstream s;
  for (int rank = 1; rank <= 3; ++rank) {
    const auto& cp = col_a(rank);
    const auto& p = cp.presentation();
    std::vector<rewriting::Symbol> ck;
    std::string name;
    for (int k = 1; k <= rank + 1; ++k) {
      name += std::to_string(k);
      ck.push_back(p.generator(name));
    }
    auto index = [&](rewriting::Symbol x) {
      return std::find(ck.begin(), ck.end(), x) - ck.begin();
    };
    std::size_t hw_words = 0;
    for (const auto& w : rewriting::all_words(p, 4)) {
      bool sorted_product = true;
      for (std::size_t j = 0; j < w.size(); ++j) {
        if (index(w[j]) == static_cast<long>(ck.size()) ||
            (j > 0 && index(w[j - 1]) > index(w[j]))) {
          sorted_product = false;
        }
      }
      if (!colpres::is_highest_weight(cp, w)) {
        if (sorted_product) t.fail("sorted product not highest weight: " + p.format(w));
        continue;
      }
      ++hw_words;
      auto nf = rewriting::normalize(p, w, Strategy::leftmost, 10000).normal_form;
      for (std::size_t j = 0; j < nf.size(); ++j) {
        if (index(nf[j]) == static_cast<long>(ck.size()) ||
            (j > 0 && index(nf[j - 1]) > index(nf[j]))) {
          t.fail("normal form " + p.format(nf) + " of " + p.format(w));
          break;
        }
      }
      if (sorted_product && !rewriting::is_normal_form(p, w)) {
        t.fail("sorted product reducible: " + p.format(w));
      }
    }
    // rules between the columns c_k: exactly c_j c_i => c_i c_j for i < j
    std::size_t swaps = 0;
    for (std::size_t i = 0; i < ck.size(); ++i) {
      for (std::size_t j = 0; j < ck.size(); ++j) {
        const auto& ids = p.rules_with_lhs(Word{ck[j], ck[i]});
        bool want = i < j;
        if (want != !ids.empty()) {
          t.fail("rule set on " + p.format(Word{ck[j], ck[i]}));
          continue;
        }
        if (want) {
          ++swaps;
          if (ids.size() != 1 || p.rule(ids[0]).rhs != Word{ck[i], ck[j]}) {
            t.fail("not a swap: " + p.rule(ids[0]).name);
          }
        }
      }
    }
    s << "A" << rank << ": " << hw_words << " hw words, " << swaps << " swaps; ";
  }
  return t.done(s.str() + "normal forms are sorted column products");
}

Outcome determinism() {
  Tally t;
  auto dir = std::filesystem::temp_directory_path() / "placto_acceptance";
  std::filesystem::create_directories(dir);
  std::size_t runs = 0;
  for (int rank : {2, 3}) {
    auto file = (dir / ("col_a" + std::to_string(rank) + ".json")).string();
    colpres::save_presentation(col_a(rank), file);
    for (std::vector<std::string> extra : {std::vector<std::string>{},
                                           std::vector<std::string>{"--via-hw"},
                                           std::vector<std::string>{"--format", "dot"}}) {
      std::string reference;
      for (const char* jobs : {"1", "1", "2", "4"}) {
        std::vector<std::string> args{"colpres", "cohere", "--jobs", jobs};
        args.insert(args.end(), extra.begin(), extra.end());
        args.push_back(file);
        std::ostringstream out;
        std::ostringstream err;
        int code = cli::run(args, out, err);
        ++runs;
        if (code != 0) {
          t.fail("exit " + std::to_string(code) + ": " + err.str());
          continue;
        }
        if (reference.empty()) {
          reference = out.str();
        } else if (out.str() != reference) {
          t.fail("output differs with --jobs " + std::string(jobs));
        }
      }
    }
  }
  return t.done(std::to_string(runs) + " cohere runs byte-identical");
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria{
      {1, "crystal axioms", crystal_axioms},
      {2, "plactic equivalence vs Knuth oracle", oracle_equivalence},
      {3, "column insertion is a crystal morphism", insertion_morphism},
      {4, "column presentation validity", presentation_validity},
      {5, "coherence cells have sides of length <= 3", hexagon_bound},
      {6, "highest-weight coherence equals direct coherence", highest_weight_reduction},
      {7, "highest-weight confluence verdicts", reduced_newman},
      {8, "Kashiwara transport properties", transport_properties},
      {9, "highest-weight submonoid", highest_weight_submonoid},
      {10, "cohere determinism", determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::printf("%s criterion %d (%s): %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", c.number, c.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
