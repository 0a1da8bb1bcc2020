#include "howson/error.hpp"

#include <cstdlib>
#include <sstream>

namespace howson {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidSemilattice: return "InvalidSemilattice";
    case ErrorKind::NotAutomorphism: return "NotAutomorphism";
    case ErrorKind::NotHomomorphism: return "NotHomomorphism";
    case ErrorKind::KindMismatch: return "KindMismatch";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::EmptyWord: return "EmptyWord";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnsupportedBackend: return "UnsupportedBackend";
    case ErrorKind::ClosureViolation: return "ClosureViolation";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::InternalInvariantViolation: return "InternalInvariantViolation";
    case ErrorKind::Usage: return "Usage";
  }
  return "Unknown";
}

const char* to_string(MeetDefect defect) {
  switch (defect) {
    case MeetDefect::BadIndex: return "bad-index";
    case MeetDefect::DuplicateLabel: return "duplicate-label";
    case MeetDefect::NotIdempotent: return "not-idempotent";
    case MeetDefect::NotCommutative: return "not-commutative";
    case MeetDefect::NotAssociative: return "not-associative";
  }
  return "unknown";
}

Caps Caps::from_string(const std::string& spec) {
  Caps caps;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::Usage, "HOWSON_CAP entry without '=': " + item);
    }
    std::string key = item.substr(0, eq);
    std::size_t value = 0;
    try {
      value = std::stoull(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw Error(ErrorKind::Usage, "HOWSON_CAP value is not a number: " + item);
    }
    if (key == "automorphism_degree") caps.automorphism_degree = value;
    else if (key == "free_semilattice_rank") caps.free_semilattice_rank = value;
    else if (key == "perm_closure") caps.perm_closure = value;
    else if (key == "automaton_states") caps.automaton_states = value;
    else if (key == "path_enumeration") caps.path_enumeration = value;
    else if (key == "oracle_closure") caps.oracle_closure = value;
    else if (key == "zchain_window") caps.zchain_window = value;
    else throw Error(ErrorKind::Usage, "unknown HOWSON_CAP key: " + key);
  }
  return caps;
}

const Caps& Caps::current() {
  static const Caps caps = [] {
    const char* env = std::getenv("HOWSON_CAP");
    return env ? from_string(env) : Caps{};
  }();
  return caps;
}

}  // namespace howson
