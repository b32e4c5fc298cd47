#pragma once

// JSON encodings. Decoders accept integers as JSON numbers or decimal strings
// and rationals as integers, "p/q" strings or [p, q]. Encoders write integer
// matrices with decimal-string entries, rationals as [p, q] and scalar
// integers as numbers when they fit in 64 bits. Matrices are arrays of rows.
//
// Grid documents:
//   {"shape": [n0, n1, n2], "origin": [..], "spacing": [..],
//    "chart": "cartesian" | "spherical", "metric": 3x3 (optional),
//    "fields": {name: {"components": k, "data": [..]}
//                   | {"components": k, "binary": "file", "offset": bytes}}}
// Field data is node-major (all components of node 0, then node 1, ...),
// nodes in row-major order; binary payloads are little-endian binary64.

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sympforge/dyons.hpp"
#include "sympforge/exact.hpp"
#include "sympforge/forms4d.hpp"
#include "sympforge/monodromy.hpp"
#include "sympforge/reduction3d.hpp"
#include "sympforge/siegel_group.hpp"
#include "sympforge/symplattice.hpp"
#include "sympforge/taming.hpp"

namespace sympforge::io {

using nlohmann::json;

// Every decoder throws Error(InvalidInput) on malformed documents.

Integer integer_from_json(const json& j);
json to_json(const Integer& z);
Rational rational_from_json(const json& j);
json to_json(const Rational& q);

IntMatrix int_matrix_from_json(const json& j);
RatMatrix rat_matrix_from_json(const json& j);
RatVector rat_vector_from_json(const json& j);
json to_json(const IntMatrix& m);
json to_json(const RatMatrix& m);
json to_json(const RatVector& v);

TypeVector type_from_json(const json& j);
json to_json(const TypeVector& t);
/// Parses "1,2,6".
TypeVector parse_type_list(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);

DenseMatrix<double> real_matrix_from_json(const json& j);
VectorXd real_vector_from_json(const json& j);
json to_json(const DenseMatrix<double>& m);
json to_json(const VectorXd& v);

/// {"R": .., "I": ..}
PeriodMatrix<double> period_from_json(const json& j);
json to_json(const PeriodMatrix<double>& n);

/// {"rank": k, "coeffs": [k arrays of 4x4]}
VectorTwoForm<double> two_form_from_json(const json& j);
json to_json(const VectorTwoForm<double>& v);
/// {"metric": 4x4, "orientation": +-1}
LorentzPoint<double> point_from_json(const json& j);

/// {"a": [..], "gamma": [[..]]} in the given type context.
AffElement aff_from_json(const json& j, const TypeVector& t);
json to_json(const AffElement& g);

/// {"generators": k, "relators": [[+1, +2, -1, -2], ..]}
Presentation presentation_from_json(const json& j);
json to_json(const Presentation& p);
/// {"type": [..], "images": [matrices]}
Representation representation_from_json(const json& j);
json to_json(const Representation& r);

struct GridDocument {
  Grid3 grid;
  std::vector<std::pair<std::string, MatrixXd>> fields;
  const MatrixXd& field(const std::string& name) const;
  bool has(const std::string& name) const;
};

/// Binary payload paths are resolved against `base_dir`.
GridDocument grid_from_json(const json& j, const std::filesystem::path& base_dir = {});
json to_json(const GridDocument& doc);
/// Writes the fields as one little-endian binary64 file and returns the JSON header.
json grid_to_binary(const GridDocument& doc, const std::filesystem::path& payload,
                    const std::string& payload_name);

json to_json(const TamingReport& r);
json to_json(const BogomolnyReport& r, bool per_node = false);
json to_json(const EmStaticReport& r);
json to_json(const MaxwellReport& r);
json to_json(const FluxReport& r);
json to_json(const RadialReport& r);

}  // namespace sympforge::io
