#pragma once

#include <stdexcept>
#include <string>

namespace mdpinfer {

/// An iterative solver hit its iteration cap before reaching its tolerance.
/// Carries the last residual (or delta) so callers can report how far off it was.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_residual, int iterations)
      : std::runtime_error(what + " (last residual " + std::to_string(last_residual) +
                           " after " + std::to_string(iterations) + " iterations)"),
        last_residual_(last_residual),
        iterations_(iterations) {}

  double last_residual() const { return last_residual_; }
  int iterations() const { return iterations_; }

 private:
  double last_residual_;
  int iterations_;
};

/// A raw input record could not be ingested. Carries enough context to name
/// the offending record.
class IngestError : public std::runtime_error {
 public:
  explicit IngestError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mdpinfer
