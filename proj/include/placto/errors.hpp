#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace placto {

// Bad input: unknown letter, label out of range, mismatched types, malformed
// files.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A bounded computation hit its configured cap.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::size_t partial_size)
      : std::runtime_error(what), partial_size_(partial_size) {}

  std::size_t partial_size() const noexcept { return partial_size_; }

 private:
  std::size_t partial_size_;
};

// Normalization ran past its step cap or revisited a word. The trace holds the
// rendered words visited, in order.
class NonTermination : public std::runtime_error {
 public:
  NonTermination(const std::string& what, std::vector<std::string> trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}

  const std::vector<std::string>& trace() const noexcept { return trace_; }

 private:
  std::vector<std::string> trace_;
};

// A Kashiwara operator carried a generator or rule outside the presentation:
// the presentation is not closed under the crystal structure.
class CertificateViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Broken internal invariant.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace placto
