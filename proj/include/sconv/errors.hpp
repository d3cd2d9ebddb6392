#pragma once

#include <stdexcept>
#include <string>

namespace sconv {

// Exit-code categories used by the CLI: 2 input, 3 domain precondition,
// 4 numerical guard, 5 verification failure.
enum class ErrorCategory { input = 2, domain = 3, numeric = 4, verification = 5 };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

struct InputError : Error {
  explicit InputError(const std::string& w) : Error(ErrorCategory::input, w) {}
};

struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorCategory::domain, w) {}
};

struct NumericError : Error {
  explicit NumericError(const std::string& w) : Error(ErrorCategory::numeric, w) {}
};

struct VerificationError : Error {
  explicit VerificationError(const std::string& w)
      : Error(ErrorCategory::verification, w) {}
};

struct EmptyEdgeSet : DomainError {
  explicit EmptyEdgeSet(const std::string& w = "graph has an empty edge set")
      : DomainError(w) {}
};

struct ResolutionMismatch : DomainError {
  explicit ResolutionMismatch(const std::string& w) : DomainError(w) {}
};

struct DimensionMismatch : DomainError {
  explicit DimensionMismatch(const std::string& w) : DomainError(w) {}
};

struct EmptyCloud : DomainError {
  explicit EmptyCloud(const std::string& w = "cloud is empty") : DomainError(w) {}
};

struct HardModeInfeasible : DomainError {
  explicit HardModeInfeasible(const std::string& w) : DomainError(w) {}
};

struct InfeasibleSpec : DomainError {
  explicit InfeasibleSpec(const std::string& w) : DomainError(w) {}
};

struct MismatchedSequences : DomainError {
  explicit MismatchedSequences(const std::string& w) : DomainError(w) {}
};

struct NonConvergence : NumericError {
  explicit NonConvergence(const std::string& w) : NumericError(w) {}
};

struct ResolutionGuard : NumericError {
  explicit ResolutionGuard(const std::string& w) : NumericError(w) {}
};

}  // namespace sconv
