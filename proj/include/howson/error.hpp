#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace howson {

/// Error categories. The CLI maps these onto exit codes.
enum class ErrorKind {
  InvalidSemilattice,
  NotAutomorphism,
  NotHomomorphism,
  KindMismatch,
  CapExceeded,
  BudgetExceeded,
  EmptyWord,
  ParseError,
  UnsupportedBackend,
  ClosureViolation,
  NotApplicable,
  InternalInvariantViolation,
  Usage,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Reason codes for InvalidSemilattice.
enum class MeetDefect {
  BadIndex,
  DuplicateLabel,
  NotIdempotent,
  NotCommutative,
  NotAssociative,
};

const char* to_string(MeetDefect defect);

class InvalidSemilattice : public Error {
 public:
  InvalidSemilattice(MeetDefect defect, const std::string& detail)
      : Error(ErrorKind::InvalidSemilattice,
              std::string("invalid semilattice (") + to_string(defect) +
                  "): " + detail),
        defect_(defect) {}

  MeetDefect defect() const { return defect_; }

 private:
  MeetDefect defect_;
};

class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::size_t cap)
      : Error(ErrorKind::CapExceeded,
              what + " exceeds cap " + std::to_string(cap)),
        cap_(cap) {}

  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

/// Inconclusive: the closure did not stabilise within the budget. This does
/// not prove the action fails to be locally finite.
class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(std::size_t count)
      : Error(ErrorKind::BudgetExceeded,
              "budget exceeded after " + std::to_string(count) +
                  " tokens (inconclusive: local finiteness not decided)"),
        count_(count) {}

  std::size_t count() const { return count_; }

 private:
  std::size_t count_;
};

/// Limits on enumerations. Defaults may be overridden through HOWSON_CAP,
/// a comma separated list of key=value pairs, e.g.
/// "automorphism_degree=9,automaton_states=200000".
struct Caps {
  std::size_t automorphism_degree = 8;
  std::size_t free_semilattice_rank = 5;
  std::size_t perm_closure = 1'000'000;
  std::size_t automaton_states = 100'000;
  std::size_t path_enumeration = 10'000'000;
  std::size_t oracle_closure = 100'000;
  std::size_t zchain_window = 1'000'000;

  static const Caps& current();
  static Caps from_string(const std::string& spec);
};

}  // namespace howson
