#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "formclass/report.hpp"

namespace formclass {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Plain-text `key = value` configuration; `#` starts a comment.
///
///   discriminants = -15, -20, -23     comma-separated
///   levels = 1-6                      comma-separated values or ranges
///   groups = gamma1 gamma0 sl2        whitespace-separated templates
///   oracle_bound = auto               or a positive integer
///   samples = 20
///   seed = 1
///   jobs = 4
///   output = formclass-report
///
/// Group templates: `gamma1`, `sl2`, `gamma0` (every divisor of N), `gammaG`
/// (every subgroup of the units mod N), or a full group spec, used only at
/// its own level.
struct SweepConfig {
  std::vector<Int> discriminants;
  std::vector<Modulus> levels;
  std::vector<std::string> groups;
  std::optional<Int> oracle_bound;
  int samples = 20;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::filesystem::path output = "formclass-report";

  static SweepConfig defaults();
  static SweepConfig parse(std::istream& in);
  /// `default` or a file path.
  static SweepConfig load(const std::string& name_or_path);

  /// The fields that determine results (not jobs or output), as text.
  std::string canonical() const;
  std::string hash() const;
};

/// Concrete group specs for level N, sorted.
std::vector<std::string> expand_groups(const std::vector<std::string>& templates, Modulus N);

enum class CaseStatus { pass, fail, not_applicable, oracle_bound_insufficient };
std::string to_string(CaseStatus s);

struct CaseRecord {
  Int D;
  Modulus N;
  std::string group;  ///< empty for checks of the whole level
  std::string check;
  CaseStatus status;
  Json details;
  std::string reproduce;
  double seconds = 0;  ///< kept out of the JSON report
};

struct VerificationReport {
  std::string config_hash;
  std::vector<CaseRecord> cases;  ///< sorted by (D, N, group, check)

  std::size_t count(CaseStatus s) const;
  Json to_json() const;
  std::string markdown() const;
  /// 0 when everything passes, 2 on a failure, 3 when an oracle bound was
  /// too small and nothing failed.
  int exit_code() const;
};

VerificationReport verify_all(const SweepConfig& config);

/// Acts/induces findings for every configured (D, N, group).
Json sweep(const SweepConfig& config);

}  // namespace formclass
