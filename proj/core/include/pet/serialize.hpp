#ifndef PET_SERIALIZE_HPP
#define PET_SERIALIZE_HPP

#include <json.hpp>
#include <optional>
#include <string>

#include "pet/averaging.hpp"
#include "pet/convergence.hpp"
#include "pet/group.hpp"
#include "pet/measure.hpp"
#include "pet/orthogonal.hpp"
#include "pet/sequence.hpp"

namespace pet {

using Json = nlohmann::json;

// Group elements:
//   {"group":"lamplighter","lamps":[[pos,val],...],"shift":s}
//   {"group":"finite_wreath","m":m,"n":n,"lamps":[...],"shift":s}
// Matrices are row-major arrays (one array per row).

Json to_json(const LamplighterElement& g);
LamplighterElement lamplighter_from_json(const Json& j);

Json to_json(const FiniteWreathElement& g);
FiniteWreathElement finite_wreath_from_json(const Json& j);

Json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const Json& j);

Json vector_to_json(const Eigen::VectorXd& v);
Eigen::VectorXd vector_from_json(const Json& j);

// Measures: {"atoms":[[point,weight],...]}.
Json to_json(const SignedMeasure& mu);
SignedMeasure measure_from_json(const Json& j);

Json to_json(const MetastabilityCertificate& cert);

// Sequence specs:
//   {"kind":"constant","g":element}
//   {"kind":"linear","a":element,"b":element}
//   {"kind":"quadratic_recurrence","a":element,"b":element,"c":element}
//   {"kind":"abelian_binomial","gens":[element,...]}
//   {"kind":"power_poly","poly":[c0,c1,...],"base":matrix}
//   {"kind":"explicit_table","lo":j0,"values":[element,...]}
// Element payloads are lamplighter objects or matrices, consistently per
// spec.

/// Whether the spec's element payloads are lamplighter elements (and so the
/// action needs finite-quotient parameters) or matrices.
bool spec_uses_lamplighter(const Json& spec);

GroupSequence<LamplighterElement> lamplighter_sequence_from_json(const Json& spec);
GroupSequence<OrthogonalOperator> orthogonal_sequence_from_json(const Json& spec);

struct WreathParams {
  int m = 2;
  int n = 3;
};

/// Builds the realized unitary action for a spec; lamplighter specs go
/// through reduce_mod + the regular representation with `rep` parameters.
UnitaryAction action_from_json(const Json& spec, std::optional<WreathParams> rep);

/// FNV-1a hash of the canonical dump; stable across platforms.
std::string spec_hash(const Json& spec);

}  // namespace pet

#endif  // PET_SERIALIZE_HPP
