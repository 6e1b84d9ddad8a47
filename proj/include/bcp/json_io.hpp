#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bcp/fixedpoint.hpp"
#include "bcp/model.hpp"
#include "bcp/oracle.hpp"
#include "bcp/spectral.hpp"

namespace bcp {

/// Insertion-ordered so that emitted documents are byte-stable.
using Json = nlohmann::ordered_json;

/// Reads typed fields and collects every problem with its field path instead of
/// stopping at the first one.
class JsonReader {
 public:
  /// Optional field: returns `fallback` when absent, records a violation on type mismatch.
  double number(const Json& obj, const std::string& key, const std::string& path, double fallback);
  int integer(const Json& obj, const std::string& key, const std::string& path, int fallback);
  std::uint64_t unsigned_integer(const Json& obj, const std::string& key, const std::string& path,
                                 std::uint64_t fallback);
  bool boolean(const Json& obj, const std::string& key, const std::string& path, bool fallback);
  std::string string(const Json& obj, const std::string& key, const std::string& path,
                     const std::string& fallback);
  std::vector<double> numbers(const Json& obj, const std::string& key, const std::string& path,
                              const std::vector<double>& fallback);
  std::vector<int> integers(const Json& obj, const std::string& key, const std::string& path,
                            const std::vector<int>& fallback);

  /// Records a violation for every key of `obj` not in `allowed`; false if obj is not an object.
  bool object(const Json& obj, const std::string& path, std::initializer_list<const char*> allowed);
  void require(const Json& obj, const std::string& key, const std::string& path);

  void fail(std::string path, std::string message);
  bool ok() const { return violations_.empty(); }
  const std::vector<std::pair<std::string, std::string>>& violations() const {
    return violations_;
  }
  /// Throws ValidationError when anything was recorded.
  void check() const;

 private:
  std::vector<std::pair<std::string, std::string>> violations_;
};

std::string join_path(const std::string& parent, const std::string& key);

Json to_json(const ForcingSpec& forcing);
Json to_json(const ProblemSpec& spec);
Json to_json(const FixedPointConfig& cfg);
Json to_json(const OracleConfig& cfg);
Json to_json(const SolveReport& report);
Json to_json(const EpsilonScanReport& report);
Json to_json(const Comparison& c);
/// Flat table of rows {m, n, re, im}.
Json coefficients_to_json(const SpectralField& u);

/// Missing fields take the default_problem values; invariants are checked with
/// validate_problem and reported under `path`.
ProblemSpec problem_from_json(const Json& j, JsonReader& reader, const std::string& path = "");
/// Terms {amplitude, m, phase, n}; band checks are left to the caller.
ForcingSpec forcing_from_json(const Json& j, JsonReader& reader, const std::string& path);
FixedPointConfig fixed_point_from_json(const Json& j, JsonReader& reader, const std::string& path);
OracleConfig oracle_config_from_json(const Json& j, JsonReader& reader, const std::string& path);
SpectralField coefficients_from_json(const Json& j, const Basis& basis, double period,
                                     int temporal_modes);

/// Convenience wrappers that throw ValidationError on any problem.
ProblemSpec problem_from_json(const Json& j);
Json parse_json_file(const std::string& path);

}  // namespace bcp
