#pragma once

#include <stdexcept>
#include <string>

namespace nact {

struct NotParameterFree : std::invalid_argument {
  explicit NotParameterFree(const std::string& what)
      : std::invalid_argument("not parameter-free: " + what) {}
};

struct NotCanonical : std::invalid_argument {
  explicit NotCanonical(const std::string& what)
      : std::invalid_argument("not canonical: " + what) {}
};

struct CorruptLedger : std::runtime_error {
  explicit CorruptLedger(const std::string& what)
      : std::runtime_error("corrupt ledger: " + what) {}
};

struct NotModelCheckable : std::invalid_argument {
  explicit NotModelCheckable(const std::string& what)
      : std::invalid_argument("not model-checkable: " + what) {}
};

struct UnboundVariable : std::invalid_argument {
  explicit UnboundVariable(const std::string& what)
      : std::invalid_argument("unbound variable: " + what) {}
};

struct SideConditionViolated : std::invalid_argument {
  explicit SideConditionViolated(const std::string& what)
      : std::invalid_argument("side condition violated: " + what) {}
};

}  // namespace nact
