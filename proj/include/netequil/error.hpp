#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace netequil {

enum class ErrorCode {
  DimensionMismatch,
  NonNegativityViolated,
  NoConvergence,
  NotIrreducible,
  RemoveAll,
  Singular,
  InvalidParameter,
  NotInvertible,
  Unsupported,
  NotContracting,
  MaxIterations,
  NotMonotone,
  NoLattice,
  PreconditionViolated,
  NoEquilibriumFound,
  ResidualTooLarge,
  UnhandledSingularity,
  NotConvergent,
  NotStable,
  TooLarge,
  Parse,
  Usage,
};

std::string_view to_string(ErrorCode code);

/// Failure raised by every library operation. `index` carries the offending
/// 0-based vertex or pivot position when one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<std::size_t> index = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

}  // namespace netequil
