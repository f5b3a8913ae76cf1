#pragma once

#include <string>

#include "formclass/congruence.hpp"
#include "formclass/forms.hpp"
#include "formclass/orders.hpp"
#include "json.hpp"

namespace formclass {

using Json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.4.0";
inline constexpr int kSchemaVersion = 1;

/// Numbers when they fit in a signed 64-bit integer, decimal strings otherwise.
Json int_json(const Int& v);
Json form_json(const QuadForm& f);
/// Row-major [q, r, s, t].
Json matrix_json(const IntMatrix& m);
Json matrix_json(const ResidueMatrix& m);
/// {scale: [num, den], a, b, disc}
Json ideal_json(const OIdealLat& I);

/// A computed report plus whether it exposes a violated identity.
struct Report {
  Json body;
  bool violation = false;
};

Report forms_report(const Int& D, Modulus N);
Report classgroup_report(const Int& D, const CongruenceGroup& g);
Report acts_report(const Int& D, const CongruenceGroup& g);
Report induces_report(const Int& D, const CongruenceGroup& g);

enum class AdelicChecks { none, set_identity, canonical_model, all };
AdelicChecks parse_adelic_checks(const std::string& token);
Report adelic_report(const Int& D, const CongruenceGroup& g, AdelicChecks checks);

/// The shell command reproducing a single-case report.
std::string reproduce_command(const std::string& op, const Int& D, Modulus N, const std::string& group);

}  // namespace formclass
