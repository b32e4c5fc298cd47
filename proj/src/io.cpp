#include "sympforge/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

namespace sympforge::io {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::InvalidInput, what); }

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

template <typename T, typename F>
MatrixX<T> matrix_from_json(const json& j, F&& entry) {
  if (!j.is_array() || j.empty()) bad("matrix must be a non-empty array of rows");
  const auto rows = static_cast<Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) bad("matrix rows must be non-empty arrays");
  const auto cols = static_cast<Index>(j[0].size());
  MatrixX<T> m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) bad("matrix rows differ in length");
    for (Index c = 0; c < cols; ++c) m(r, c) = entry(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

template <typename M>
json matrix_to_json(const M& m) {
  json out = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

double real_from_json(const json& j) {
  if (!j.is_number()) bad("expected a real number");
  return j.get<double>();
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::uint64_t byteswap64(std::uint64_t x) {
  std::uint64_t y = 0;
  for (int i = 0; i < 8; ++i) y = (y << 8) | ((x >> (8 * i)) & 0xff);
  return y;
}

double decode_le(const unsigned char* p) {
  std::uint64_t bits;
  std::memcpy(&bits, p, 8);
  if constexpr (std::endian::native == std::endian::big) bits = byteswap64(bits);
  double d;
  std::memcpy(&d, &bits, 8);
  return d;
}

void encode_le(double d, unsigned char* p) {
  std::uint64_t bits;
  std::memcpy(&bits, &d, 8);
  if constexpr (std::endian::native == std::endian::big) bits = byteswap64(bits);
  std::memcpy(p, &bits, 8);
}

}  // namespace

Integer integer_from_json(const json& j) {
  if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
      bad("not a decimal integer: \"" + s + "\"");
    return Integer(s[0] == '+' ? s.substr(1) : s);
  }
  bad("expected an integer");
}

json to_json(const Integer& z) {
  if (z >= std::numeric_limits<std::int64_t>::min() && z <= std::numeric_limits<std::int64_t>::max())
    return json(static_cast<std::int64_t>(z));
  return json(z.str());
}

Rational rational_from_json(const json& j) {
  if (j.is_array()) {
    if (j.size() != 2) bad("rational pair must be [numerator, denominator]");
    const Integer den = integer_from_json(j[1]);
    if (den == 0) bad("zero denominator");
    return Rational(integer_from_json(j[0]), den);
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(integer_from_json(json(s)));
    const Integer den = integer_from_json(json(s.substr(slash + 1)));
    if (den == 0) bad("zero denominator");
    return Rational(integer_from_json(json(s.substr(0, slash))), den);
  }
  return Rational(integer_from_json(j));
}

json to_json(const Rational& q) {
  return json::array({to_json(Integer(numerator(q))), to_json(Integer(denominator(q)))});
}

IntMatrix int_matrix_from_json(const json& j) {
  return matrix_from_json<Integer>(j, [](const json& e) { return integer_from_json(e); });
}

RatMatrix rat_matrix_from_json(const json& j) {
  return matrix_from_json<Rational>(j, [](const json& e) { return rational_from_json(e); });
}

RatVector rat_vector_from_json(const json& j) {
  if (!j.is_array()) bad("vector must be an array");
  RatVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = rational_from_json(j[i]);
  return v;
}

json to_json(const IntMatrix& m) {
  json out = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
    out.push_back(std::move(row));
  }
  return out;
}
json to_json(const RatMatrix& m) { return matrix_to_json(m); }

json to_json(const RatVector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

TypeVector type_from_json(const json& j) {
  if (j.is_number_integer() || j.is_string()) return TypeVector({integer_from_json(j)});
  if (!j.is_array()) bad("type must be an array of positive integers");
  std::vector<Integer> t;
  for (const auto& e : j) t.push_back(integer_from_json(e));
  return TypeVector(std::move(t));
}

json to_json(const TypeVector& t) {
  json out = json::array();
  for (const auto& e : t.entries()) out.push_back(to_json(e));
  return out;
}

TypeVector parse_type_list(const std::string& text) {
  std::vector<Integer> t;
  for (const auto& item : split(text, ',')) t.push_back(integer_from_json(json(item)));
  return TypeVector(std::move(t));
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) {
    std::size_t used = 0;
    double d = 0;
    try {
      d = std::stod(item, &used);
    } catch (const std::exception&) {
      bad("not a real number: \"" + item + "\"");
    }
    if (used != item.size()) bad("not a real number: \"" + item + "\"");
    out.push_back(d);
  }
  return out;
}

DenseMatrix<double> real_matrix_from_json(const json& j) {
  return matrix_from_json<double>(j, real_from_json);
}

VectorXd real_vector_from_json(const json& j) {
  if (!j.is_array()) bad("vector must be an array");
  VectorXd v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = real_from_json(j[i]);
  return v;
}

json to_json(const DenseMatrix<double>& m) {
  json out = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

json to_json(const VectorXd& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

PeriodMatrix<double> period_from_json(const json& j) {
  return PeriodMatrix<double>(real_matrix_from_json(member(j, "R")),
                              real_matrix_from_json(member(j, "I")));
}

json to_json(const PeriodMatrix<double>& n) {
  return json{{"R", to_json(n.real())}, {"I", to_json(n.imag())}};
}

VectorTwoForm<double> two_form_from_json(const json& j) {
  const json& coeffs = member(j, "coeffs");
  if (!coeffs.is_array()) bad("coeffs must be an array of 4x4 arrays");
  if (j.contains("rank") && j.at("rank").get<std::size_t>() != coeffs.size())
    bad("declared rank differs from the number of coefficient arrays");
  std::vector<Matrix4<double>> blocks;
  for (const auto& c : coeffs) {
    const DenseMatrix<double> m = real_matrix_from_json(c);
    if (m.rows() != 4 || m.cols() != 4) bad("two-form coefficients must be 4x4");
    blocks.push_back(m);
  }
  return VectorTwoForm<double>(std::move(blocks));
}

json to_json(const VectorTwoForm<double>& v) {
  json coeffs = json::array();
  for (const auto& f : v.coeffs()) coeffs.push_back(to_json(DenseMatrix<double>(f)));
  return json{{"rank", v.rank()}, {"coeffs", coeffs}};
}

LorentzPoint<double> point_from_json(const json& j) {
  const DenseMatrix<double> g = real_matrix_from_json(member(j, "metric"));
  if (g.rows() != 4 || g.cols() != 4) bad("metric must be 4x4");
  const int orientation = j.contains("orientation") ? j.at("orientation").get<int>() : 1;
  return LorentzPoint<double>(g, orientation);
}

AffElement aff_from_json(const json& j, const TypeVector& t) {
  return AffElement(rat_vector_from_json(member(j, "a")),
                    SiegelElement(int_matrix_from_json(member(j, "gamma")), t));
}

json to_json(const AffElement& g) {
  return json{{"a", to_json(g.translation())}, {"gamma", to_json(g.rotation().matrix())}};
}

Presentation presentation_from_json(const json& j) {
  Presentation p;
  p.generators = member(j, "generators").get<int>();
  if (j.contains("relators")) p.relators = j.at("relators").get<std::vector<std::vector<int>>>();
  validate_presentation(p);
  return p;
}

json to_json(const Presentation& p) {
  return json{{"generators", p.generators}, {"relators", p.relators}};
}

Representation representation_from_json(const json& j) {
  Representation r{{}, type_from_json(member(j, "type"))};
  for (const auto& m : member(j, "images")) r.images.push_back(int_matrix_from_json(m));
  return r;
}

json to_json(const Representation& r) {
  json images = json::array();
  for (const auto& m : r.images) images.push_back(to_json(m));
  return json{{"type", to_json(r.type)}, {"images", images}};
}

const MatrixXd& GridDocument::field(const std::string& name) const {
  for (const auto& [key, value] : fields)
    if (key == name) return value;
  bad("grid document has no field \"" + name + "\"");
}

bool GridDocument::has(const std::string& name) const {
  for (const auto& [key, value] : fields)
    if (key == name) return true;
  return false;
}

GridDocument grid_from_json(const json& j, const std::filesystem::path& base_dir) {
  const auto shape_v = member(j, "shape").get<std::vector<Index>>();
  if (shape_v.size() != 3) bad("shape must have three entries");
  const VectorXd origin = real_vector_from_json(member(j, "origin"));
  const VectorXd spacing = real_vector_from_json(member(j, "spacing"));
  if (origin.size() != 3 || spacing.size() != 3) bad("origin and spacing must have three entries");
  const std::string chart = j.value("chart", std::string("cartesian"));
  Grid3::Chart c;
  if (chart == "cartesian") c = Grid3::Chart::Cartesian;
  else if (chart == "spherical") c = Grid3::Chart::Spherical;
  else bad("chart must be \"cartesian\" or \"spherical\"");
  Matrix3d metric = Matrix3d::Identity();
  if (j.contains("metric")) {
    const DenseMatrix<double> m = real_matrix_from_json(j.at("metric"));
    if (m.rows() != 3 || m.cols() != 3) bad("grid metric must be 3x3");
    metric = m;
  }
  GridDocument doc{Grid3({shape_v[0], shape_v[1], shape_v[2]}, origin, spacing, c, metric), {}};
  const Index count = doc.grid.size();
  if (!j.contains("fields")) return doc;
  for (const auto& [name, spec] : j.at("fields").items()) {
    const auto k = member(spec, "components").get<Index>();
    if (k <= 0) bad("field \"" + name + "\" needs a positive component count");
    MatrixXd m(k, count);
    if (spec.contains("data")) {
      const json& data = spec.at("data");
      if (!data.is_array() || static_cast<Index>(data.size()) != k * count)
        bad("field \"" + name + "\" must have components * nodes values");
      for (Index i = 0; i < k * count; ++i) m.data()[i] = real_from_json(data[static_cast<std::size_t>(i)]);
    } else {
      const std::filesystem::path path = base_dir / spec.at("binary").get<std::string>();
      const auto offset = spec.value("offset", std::int64_t{0});
      std::ifstream in(path, std::ios::binary);
      if (!in) bad("cannot open binary payload " + path.string());
      in.seekg(offset);
      std::vector<unsigned char> bytes(static_cast<std::size_t>(8 * k * count));
      in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
      if (in.gcount() != static_cast<std::streamsize>(bytes.size()))
        bad("binary payload for \"" + name + "\" is truncated");
      for (Index i = 0; i < k * count; ++i) m.data()[i] = decode_le(bytes.data() + 8 * i);
    }
    doc.fields.emplace_back(name, std::move(m));
  }
  return doc;
}

namespace {

json grid_header(const Grid3& g) {
  json header{{"shape", {g.shape()[0], g.shape()[1], g.shape()[2]}},
              {"origin", {g.origin()(0), g.origin()(1), g.origin()(2)}},
              {"spacing", {g.spacing()(0), g.spacing()(1), g.spacing()(2)}},
              {"chart", g.chart() == Grid3::Chart::Cartesian ? "cartesian" : "spherical"}};
  if (g.chart() == Grid3::Chart::Cartesian && g.constant_metric())
    header["metric"] = to_json(DenseMatrix<double>(g.metric(0)));
  return header;
}

}  // namespace

json to_json(const GridDocument& doc) {
  json out = grid_header(doc.grid);
  json fields = json::object();
  for (const auto& [name, m] : doc.fields) {
    json data = json::array();
    for (Index i = 0; i < m.size(); ++i) data.push_back(m.data()[i]);
    fields[name] = json{{"components", m.rows()}, {"data", std::move(data)}};
  }
  out["fields"] = std::move(fields);
  return out;
}

json grid_to_binary(const GridDocument& doc, const std::filesystem::path& payload,
                    const std::string& payload_name) {
  json out = grid_header(doc.grid);
  json fields = json::object();
  std::ofstream os(payload, std::ios::binary);
  if (!os) bad("cannot write binary payload " + payload.string());
  std::int64_t offset = 0;
  for (const auto& [name, m] : doc.fields) {
    std::vector<unsigned char> bytes(static_cast<std::size_t>(8 * m.size()));
    for (Index i = 0; i < m.size(); ++i) encode_le(m.data()[i], bytes.data() + 8 * i);
    os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    fields[name] = json{{"components", m.rows()}, {"binary", payload_name}, {"offset", offset}};
    offset += static_cast<std::int64_t>(bytes.size());
  }
  out["fields"] = std::move(fields);
  return out;
}

json to_json(const TamingReport& r) {
  return json{{"taming", r.ok()},
              {"squares_to_minus_one", r.squares_to_minus_one},
              {"compatible", r.compatible},
              {"positive", r.positive},
              {"failures", r.failures}};
}

json to_json(const BogomolnyReport& r, bool per_node) {
  json out{{"eq_residual", r.eq_residual},
           {"closure_residual", r.closure_residual},
           {"interior_nodes", r.interior_count}};
  if (per_node) {
    out["eq_per_node"] = to_json(r.eq_per_node);
    out["closure_per_node"] = to_json(r.closure_per_node);
  }
  return out;
}

json to_json(const EmStaticReport& r) {
  return json{{"electric_potential", r.electric_potential},
              {"magnetic_potential", r.magnetic_potential},
              {"div_b", r.div_b},
              {"div_d", r.div_d}};
}

json to_json(const MaxwellReport& r) {
  return json{{"curl_e", r.curl_e}, {"curl_b", r.curl_b}, {"div_e", r.div_e}, {"div_b", r.div_b}};
}

json to_json(const FluxReport& r) {
  return json{{"flux", to_json(r.flux)},
              {"normalized", to_json(r.normalized)},
              {"analytic", to_json(r.analytic)},
              {"quadrature_error", r.quadrature_error},
              {"lattice_member", r.lattice_member},
              {"realized_sign", r.realized_sign},
              {"chern", to_json(r.chern)},
              {"euler_integral", r.euler_integral}};
}

json to_json(const RadialReport& r) {
  return json{{"equation", r.equation}, {"integrability", r.integrability}};
}

}  // namespace sympforge::io
