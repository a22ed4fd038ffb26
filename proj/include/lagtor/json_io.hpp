#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "lagtor/ambient.hpp"
#include "lagtor/invariants.hpp"
#include "lagtor/pathengine.hpp"

namespace lagtor {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFormatTag = "lagtor/1";

Json basis_to_json(const SymBasisPtr& basis);
SymBasisPtr basis_from_json(const Json& j, const std::string& path);

Json coeffs_to_json(const SymReal& x);
SymReal symreal_from_coeffs(const Json& j, const SymBasisPtr& basis,
                            const std::string& path);

Json vec_to_json(const SymVec& v);
SymVec vec_from_json(const Json& j, const SymBasisPtr& basis,
                     const std::string& path);

Json torus_to_json(const TorusSpec& t);
TorusSpec torus_from_json(const Json& j);

Json zmodule_to_json(const ZModule& z);
Json invariants_to_json(const InvariantSet& inv);

Json path_to_json(const SymBasisPtr& basis, const MovePath& p);

struct ParsedPath {
  SymBasisPtr basis;
  SymVec start;
  std::vector<Move> moves;
  std::optional<SymVec> end;
};
ParsedPath path_from_json(const Json& j);

Json cert_to_json(const IsotopyCertificate& c);
IsotopyCertificate cert_from_json(const Json& j);

Json manifold_to_json(const ManifoldDescriptor& m);
ManifoldDescriptor manifold_from_json(const Json& j);

Json check_report_to_json(const CheckReport& r);

// Parses a rational-vector command line literal like "1,3/2,5".
std::vector<Rational> parse_rational_list(const std::string& s);

}  // namespace lagtor
