#include "qroof/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <vector>

#include "qroof/error.hpp"

namespace qroof::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

double number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) parse_error(std::string("missing field '") + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number()) parse_error(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

Eigen::Vector3d vector3(const nlohmann::json& v, const char* what) {
  if (!v.is_array() || v.size() != 3) parse_error(std::string(what) + " must be an array of 3 numbers");
  Eigen::Vector3d out;
  for (int i = 0; i < 3; ++i) {
    if (!v[static_cast<std::size_t>(i)].is_number()) parse_error(std::string(what) + " must contain numbers");
    out(i) = v[static_cast<std::size_t>(i)].get<double>();
  }
  return out;
}

std::complex<double> complex_entry(const nlohmann::json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    parse_error("complex entries must be [re, im]");
  return {v[0].get<double>(), v[1].get<double>()};
}

AffineMap parse_named(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) parse_error("named channel needs a 'type'");
  const std::string type = j.at("type").get<std::string>();
  if (type == "identity") return identity_map();
  if (type == "unital") {
    if (!j.contains("lambda")) parse_error("unital channel needs 'lambda'");
    return unital(vector3(j.at("lambda"), "lambda"));
  }
  if (type == "axial") return axial(number(j, "alpha"), number(j, "beta"), number(j, "gamma"));
  if (type == "amplitude_damping") return amplitude_damping(number(j, "alpha"));
  if (type == "phase_damping") return phase_damping(number(j, "beta"));
  if (type == "depolarizing") return depolarizing(number(j, "alpha"));
  parse_error("unknown named channel '" + type + "'");
}

}  // namespace

AffineMap parse_channel(const nlohmann::json& j) {
  if (!j.is_object()) parse_error("channel descriptor must be an object");
  if (j.contains("named")) return parse_named(j.at("named"));
  if (j.contains("canonical")) {
    const auto& c = j.at("canonical");
    if (!c.is_object()) parse_error("'canonical' must be an object");
    CanonicalParams p;
    p.alpha = number(c, "alpha");
    p.beta = number(c, "beta");
    if (!c.contains("omega") || !c.contains("xi")) parse_error("canonical channel needs 'omega' and 'xi'");
    p.omega = vector3(c.at("omega"), "omega");
    p.xi = vector3(c.at("xi"), "xi");
    return from_canonical(p);
  }
  if (j.contains("lambda")) {
    const auto& rows = j.at("lambda");
    if (!rows.is_array() || rows.size() != 3) parse_error("'lambda' must be a 3x3 row-major array");
    AffineMap phi;
    for (int r = 0; r < 3; ++r) phi.lambda.row(r) = vector3(rows[static_cast<std::size_t>(r)], "lambda row").transpose();
    if (!j.contains("t")) parse_error("affine channel needs 't'");
    phi.t = vector3(j.at("t"), "t");
    return phi;
  }
  parse_error("channel descriptor needs one of 'lambda', 'canonical', 'named'");
}

FourVector parse_state(const nlohmann::json& j) {
  if (!j.is_object()) parse_error("state descriptor must be an object");
  if (j.contains("bloch")) return FourVector::state(vector3(j.at("bloch"), "bloch"));
  if (j.contains("matrix")) {
    const auto& m = j.at("matrix");
    if (!m.is_array() || m.size() != 2 || !m[0].is_array() || m[0].size() != 2 || !m[1].is_array() || m[1].size() != 2)
      parse_error("state 'matrix' must be 2x2");
    Eigen::Matrix2cd rho;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) rho(r, c) = complex_entry(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw Error(ErrorCode::InvalidState, "state matrix is not Hermitian");
    return to_four_vector(Hermitian2::from_matrix(rho));
  }
  parse_error("state descriptor needs 'bloch' or 'matrix'");
}

BipartiteState parse_bipartite(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dims")) parse_error("bipartite descriptor needs 'dims'");
  const auto& dims = j.at("dims");
  if (!dims.is_array() || dims.size() != 2 || !dims[0].is_number_integer() || !dims[1].is_number_integer())
    parse_error("'dims' must be [2, n]");
  if (dims[0].get<int>() != 2) throw Error(ErrorCode::WrongDims, "first factor must be a qubit");
  const int n = dims[1].get<int>();
  if (n < 1) throw Error(ErrorCode::WrongDims, "second factor must have dimension >= 1");
  const auto dim = static_cast<std::size_t>(2 * n);

  if (j.contains("mixture")) {
    const auto& mix = j.at("mixture");
    if (!mix.is_array()) parse_error("'mixture' must be an array");
    std::vector<std::pair<double, Eigen::VectorXcd>> terms;
    for (const auto& term : mix) {
      if (!term.is_object() || !term.contains("ket")) parse_error("mixture entries need 'weight' and 'ket'");
      const double weight = number(term, "weight");
      const auto& ket = term.at("ket");
      if (!ket.is_array() || ket.size() != dim) throw Error(ErrorCode::WrongDims, "ket length must be 2n");
      Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
      for (std::size_t i = 0; i < dim; ++i) v(static_cast<Eigen::Index>(i)) = complex_entry(ket[i]);
      terms.emplace_back(weight, v);
    }
    return BipartiteState::from_mixture(n, terms);
  }
  if (j.contains("matrix")) {
    const auto& m = j.at("matrix");
    if (!m.is_array()) parse_error("'matrix' must be an array");
    // nested rows have 2n entries of 2n, a flat list (2n)^2 entries
    const bool nested = m.size() == dim && dim * dim != dim;
    std::vector<std::complex<double>> flat;
    for (const auto& entry : m) {
      if (nested) {
        if (!entry.is_array() || entry.size() != dim) throw Error(ErrorCode::WrongDims, "matrix rows must have 2n entries");
        for (const auto& e : entry) flat.push_back(complex_entry(e));
      } else {
        flat.push_back(complex_entry(entry));
      }
    }
    if (flat.size() != dim * dim) throw Error(ErrorCode::WrongDims, "matrix must have (2n)^2 entries");
    Eigen::MatrixXcd rho(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = flat[r * dim + c];
    return BipartiteState::from_matrix(n, rho);
  }
  parse_error("bipartite descriptor needs 'mixture' or 'matrix'");
}

ordered_json to_json(const AffineMap& phi) {
  ordered_json out;
  ordered_json rows = ordered_json::array();
  for (int r = 0; r < 3; ++r) rows.push_back({phi.lambda(r, 0), phi.lambda(r, 1), phi.lambda(r, 2)});
  out["lambda"] = rows;
  out["t"] = {phi.t(0), phi.t(1), phi.t(2)};
  return out;
}

ordered_json to_json(const FourVector& v) { return {v.x0, v.x(0), v.x(1), v.x(2)}; }

ordered_json to_json(const Eigen::Matrix2cd& m) {
  ordered_json rows = ordered_json::array();
  for (int r = 0; r < 2; ++r) {
    ordered_json row = ordered_json::array();
    for (int c = 0; c < 2; ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    parse_error("'" + path + "': " + e.what());
  }
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

}  // namespace qroof::io
