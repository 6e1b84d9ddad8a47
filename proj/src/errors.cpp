#include "bcp/errors.hpp"

#include <sstream>

namespace bcp {

namespace {

std::string resonance_message(int m, int spatial_index, double magnitude) {
  std::ostringstream out;
  out << "vanishing symbol at temporal mode " << m << ", spatial index " << spatial_index
      << " (|sigma| = " << magnitude << ")";
  return out.str();
}

std::string join(const std::vector<std::pair<std::string, std::string>>& violations) {
  std::ostringstream out;
  out << "invalid problem:";
  for (const auto& [field, message] : violations) out << "\n  " << field << ": " << message;
  return out.str();
}

}  // namespace

ResonanceError::ResonanceError(int m, int spatial_index, double magnitude)
    : Error(resonance_message(m, spatial_index, magnitude)),
      m_(m),
      spatial_index_(spatial_index),
      magnitude_(magnitude) {}

IncompatibleDataError::IncompatibleDataError(double residual)
    : Error("Neumann data violate the compatibility integral (residual " +
            std::to_string(residual) + ")"),
      residual_(residual) {}

ValidationError::ValidationError(std::vector<std::pair<std::string, std::string>> violations)
    : Error(join(violations)), violations_(std::move(violations)) {}

}  // namespace bcp
