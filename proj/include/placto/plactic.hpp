#pragma once

// Type A tableaux, Schensted column insertion, and plactic equivalence decided
// through the crystal structure (valid for every classical type).

#include <cstddef>
#include <string>
#include <vector>

#include "placto/crystal.hpp"

namespace placto::plactic {

using crystal::CrystalType;
using crystal::Letter;
using crystal::LetterWord;

// Semistandard tableau over the letters 1..rank+1 of A_rank, stored as
// strictly increasing columns from left to right.
class Tableau {
 public:
  explicit Tableau(int rank) : rank_(rank) {}

  // Throws DomainError unless the columns form a semistandard tableau.
  Tableau(int rank, std::vector<LetterWord> columns);

  int rank() const noexcept { return rank_; }
  const std::vector<LetterWord>& columns() const noexcept { return columns_; }
  std::vector<LetterWord> rows() const;
  std::size_t size() const noexcept;
  bool empty() const noexcept { return columns_.empty(); }

  friend bool operator==(const Tableau&, const Tableau&) = default;

 private:
  friend Tableau insert(Letter x, const Tableau& t);

  int rank_;
  std::vector<LetterWord> columns_;
};

bool is_column(const LetterWord& w);

// All non-empty columns over the letters of a type A crystal, by length and
// then lexicographically.
std::vector<LetterWord> enumerate_columns(const CrystalType& type);

// Columns read right to left, each top to bottom.
LetterWord read_columns(const Tableau& t);

Tableau insert(Letter x, const Tableau& t);
Tableau p_tableau(const CrystalType& type, const LetterWord& w);

// t1 * t2 = P(read(t2) read(t1)).
Tableau product(const Tableau& t1, const Tableau& t2);

// True iff the crystal isomorphism between the components of w1 and w2 exists
// and carries w1 to w2.
bool plactic_equiv(const CrystalType& type, const LetterWord& w1,
                   const LetterWord& w2);

// Breadth-first closure of w1 under the Knuth moves matching this insertion
// convention (words read as left-nested tensors):
//   x z y <-> z x y   for x < y <= z
//   y x z <-> y z x   for x <= y < z
// Throws ResourceError when either word is longer than max_length.
bool knuth_oracle_equiv(const LetterWord& w1, const LetterWord& w2,
                        std::size_t max_length = 8);

std::string tableau_to_json(const Tableau& t);
Tableau tableau_from_json(const std::string& text);

// Young-diagram rows, one line per row, entries separated by spaces.
std::string pretty(const Tableau& t);

}  // namespace placto::plactic
