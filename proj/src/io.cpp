#include "conekit/io.hpp"

#include <fstream>
#include <stdexcept>

namespace conekit {

Json json_number(const Rat& q, bool exact) {
  if (exact) return rat_to_string(q);
  return to_double(q);
}

Json json_vector(const RatVec& v, bool exact) {
  Json a = Json::array();
  for (const Rat& q : v) a.push_back(json_number(q, exact));
  return a;
}

Json json_matrix(const RatMat& m, bool exact) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json data = Json::array();
  for (const Rat& q : m.data()) data.push_back(json_number(q, exact));
  j["data"] = std::move(data);
  return j;
}

Json json_matrix(const DMat& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["data"] = m.data();
  return j;
}

Json json_cone(const ConeOracle& k) {
  Json j;
  j["kind"] = cone_kind_name(k.kind);
  j["ambient"] = k.ambient;
  return j;
}

Json json_element(const ConeOracle& k, const RatMat& x, bool exact) {
  if (k.kind == ConeKind::Orthant) {
    RatVec v;
    v.reserve(x.data().size());
    for (const Rat& q : x.data()) v.push_back(q);
    return json_vector(v, exact);
  }
  return json_matrix(x, exact);
}

Rat rat_from_json(const Json& j) {
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_number_unsigned()) return Rat(static_cast<long long>(j.get<unsigned long long>()));
  if (j.is_number_float()) return rat_from_double(j.get<double>());
  throw std::invalid_argument("expected a number or a rational string");
}

RatVec vector_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of numbers");
  RatVec v;
  v.reserve(j.size());
  for (const Json& e : j) v.push_back(rat_from_json(e));
  return v;
}

RatMat matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
    throw std::invalid_argument("expected a matrix object with rows/cols/data");
  }
  const int rows = j.at("rows").get<int>();
  const int cols = j.at("cols").get<int>();
  if (rows < 0 || cols < 0) throw std::invalid_argument("matrix dimensions must be nonnegative");
  const Json& data = j.at("data");
  if (!data.is_array() || static_cast<int>(data.size()) != rows * cols) {
    throw std::invalid_argument("matrix data length must be rows*cols");
  }
  RatMat m(rows, cols);
  int k = 0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = rat_from_json(data.at(static_cast<size_t>(k++)));
  }
  return m;
}

RatMat element_from_json(const Json& j) {
  if (j.is_array()) {
    const RatVec v = vector_from_json(j);
    return RatMat::col(v);
  }
  return matrix_from_json(j);
}

ConeOracle cone_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("ambient")) {
    throw std::invalid_argument("expected a cone object with kind/ambient");
  }
  ConeOracle k;
  k.kind = cone_kind_from_name(j.at("kind").get<std::string>());
  k.ambient = j.at("ambient").get<int>();
  if (k.ambient < 1) throw std::invalid_argument("cone ambient must be positive");
  return k;
}

Json json_polytope(const ZeroOnePolytope& p) {
  Json j;
  j["dim"] = p.dim;
  Json verts = Json::array();
  for (const RatVec& v : p.vertices) {
    Json row = Json::array();
    for (const Rat& q : v) row.push_back(q == 1 ? 1 : 0);
    verts.push_back(std::move(row));
  }
  j["vertices"] = std::move(verts);
  return j;
}

ZeroOnePolytope polytope_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("vertices")) {
    throw std::invalid_argument("expected a polytope object with dim/vertices");
  }
  const int dim = j.at("dim").get<int>();
  std::vector<RatVec> verts;
  for (const Json& row : j.at("vertices")) verts.push_back(vector_from_json(row));
  return make_zero_one_polytope(dim, verts);
}

Json json_hrep(const HRep& h, bool exact) {
  Json j;
  j["A"] = json_matrix(h.a, exact);
  j["b"] = json_vector(h.b, exact);
  Json eq;
  eq["A"] = json_matrix(h.eq_a, exact);
  eq["b"] = json_vector(h.eq_b, exact);
  j["equalities"] = std::move(eq);
  return j;
}

Json json_certificate(const CpCertificate& c, bool exact) {
  Json j = Json::array();
  for (const RatVec& f : c.factors) j.push_back(json_vector(f, exact));
  return j;
}

CpCertificate certificate_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected a certificate (array of factor arrays)");
  CpCertificate c;
  for (const Json& f : j) c.factors.push_back(vector_from_json(f));
  return c;
}

Json json_measurement(const GptSystem& sys, const Measurement& m, bool exact) {
  Json j;
  j["system"] = json_cone(sys.cone);
  j["unit"] = json_element(sys.cone.dual(), sys.unit, exact);
  Json effects = Json::array();
  for (const RatMat& e : m.effects) effects.push_back(json_element(sys.cone.dual(), e, exact));
  j["effects"] = std::move(effects);
  return j;
}

MeasurementFile measurement_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("system") || !j.contains("unit") || !j.contains("effects")) {
    throw std::invalid_argument("expected a measurement object with system/unit/effects");
  }
  MeasurementFile out;
  const ConeOracle cone = cone_from_json(j.at("system"));
  out.system = make_gpt_system(cone, element_from_json(j.at("unit")));
  for (const Json& e : j.at("effects")) out.measurement.effects.push_back(element_from_json(e));
  if (out.measurement.effects.empty()) throw std::invalid_argument("measurement has no effects");
  return out;
}

Json json_factorization(const ConeFactorization& f, bool exact) {
  Json j;
  j["cone"] = json_cone(f.cone);
  Json states = Json::array();
  for (const RatMat& s : f.states) states.push_back(json_element(f.cone, s, exact));
  j["states"] = std::move(states);
  Json responses = Json::array();
  for (const RatMat& r : f.responses) responses.push_back(json_element(f.cone.dual(), r, exact));
  j["responses"] = std::move(responses);
  if (!f.state_certs.empty() || !f.response_certs.empty()) {
    Json certs;
    if (!f.state_certs.empty()) {
      Json cs = Json::array();
      for (const CpCertificate& c : f.state_certs) cs.push_back(json_certificate(c, exact));
      certs["states"] = std::move(cs);
    }
    if (!f.response_certs.empty()) {
      Json cs = Json::array();
      for (const CpCertificate& c : f.response_certs) cs.push_back(json_certificate(c, exact));
      certs["responses"] = std::move(cs);
    }
    j["cp_certificates"] = std::move(certs);
  }
  return j;
}

ConeFactorization factorization_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("cone") || !j.contains("states") || !j.contains("responses")) {
    throw std::invalid_argument("expected a factorization object with cone/states/responses");
  }
  ConeFactorization f;
  f.cone = cone_from_json(j.at("cone"));
  for (const Json& s : j.at("states")) f.states.push_back(element_from_json(s));
  for (const Json& r : j.at("responses")) f.responses.push_back(element_from_json(r));
  if (j.contains("cp_certificates")) {
    const Json& certs = j.at("cp_certificates");
    if (certs.contains("states")) {
      for (const Json& c : certs.at("states")) f.state_certs.push_back(certificate_from_json(c));
    }
    if (certs.contains("responses")) {
      for (const Json& c : certs.at("responses")) f.response_certs.push_back(certificate_from_json(c));
    }
  }
  return f;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::runtime_error("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

}  // namespace conekit
