#ifndef QUADRIFOLD_JSON_IO_HPP
#define QUADRIFOLD_JSON_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "quadrifold/hecke.hpp"
#include "quadrifold/section_search.hpp"

namespace quadrifold {

using json = nlohmann::ordered_json;

/// Parses a JSON file; malformed files raise MalformedInput naming the file.
json load_json_file(const std::string& path);

/// Scalars: plain integers over the prime field, residue lists (power-basis
/// digits) over extensions.
json elt_to_json(const Field& F, Field::elt a);
Field::elt elt_from_json(const Field& F, const json& j, const std::string& ctx);

json form_to_json(const BinaryForm& f);
BinaryForm form_from_json(const Field& F, const json& j, const std::string& ctx);

/// {"p":..,"k":..,"d":[..],"e":..,"gram":[10 coefficient lists, row-major
/// upper triangle]}.
Fibration fibration_from_json(const json& j, const std::string& ctx);
json fibration_to_json(const Fibration& fib);

json section_to_json(const Fibration& fib, const Section& sec);
Section section_from_json(const Fibration& fib, const json& j, const std::string& ctx);

/// Constraint list [{"b":[u,v],"x":[x1..x4]}]; scalars over the base field or
/// its quadratic extension (residue lists).
std::vector<PointConstraint> constraints_from_json(const Fibration& fib, const json& j,
                                                   const std::string& ctx);

json line_to_json(const LineInFiber& line);
/// Reads a line over the given field (the base field for hecke input).
LineInFiber line_from_json(const Field& F, const json& j, const std::string& ctx);

json receipt_to_json(const TransformReceipt& rec);

}  // namespace quadrifold

#endif
