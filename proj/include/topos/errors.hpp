#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace topos {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A single violated law, with the names of the witnessing items.
struct Violation {
  std::string kind;
  std::string message;
  std::vector<std::string> witnesses;
};

std::string format_violations(const std::vector<Violation>& violations);

// Input failed structural validation (category laws, functoriality, ...).
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// A configured size guard was exceeded.
class SizeLimit : public Error {
 public:
  SizeLimit(const std::string& what, std::size_t limit);
  std::size_t limit() const { return limit_; }

 private:
  std::size_t limit_;
};

// An operation was called on a site that does not meet its hypotheses
// (subcanonical, no empty covers, ...).
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

class UnknownName : public Error {
 public:
  using Error::Error;
};

class SortMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Guards shared by every enumeration in the library.
struct Limits {
  std::size_t max_cone = 20;               // morphisms into one object, for sieve lattices
  std::size_t max_families = 1'000'000;    // matching families per object and cover
  std::size_t max_candidates = 1'000'000;  // family-product candidates, nat. transformations
  std::size_t max_environments = 10'000'000;  // search nodes per sequent check
};

}  // namespace topos
