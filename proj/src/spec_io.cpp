#include "resonance/spec_io.hpp"

#include <fstream>
#include <string>

#include "resonance/error.hpp"

namespace resonance::spec_io {

using nlohmann::json;
using qcore::Complex;

namespace {

Complex parse_complex(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ValidationError("complex value must be a number or [re, im], got " + v.dump());
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

qcore::Matrix parse_matrix(const json& rows, std::size_t dim, const char* what) {
  if (!rows.is_array() || rows.size() != dim) {
    throw ValidationError(std::string(what) + " must have " + std::to_string(dim) + " rows");
  }
  qcore::Matrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    if (!rows[i].is_array() || rows[i].size() != dim) {
      throw ValidationError(std::string(what) + " row " + std::to_string(i) + " must have " +
                            std::to_string(dim) + " entries");
    }
    for (std::size_t k = 0; k < dim; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = parse_complex(rows[i][k]);
    }
  }
  return m;
}

json matrix_json(const qcore::Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json read_json(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open " + path.string());
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw ValidationError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

}  // namespace

hamiltonian::SystemSpec parse_system_spec(const json& j, const qcore::Limits& limits) {
  try {
    if (!j.is_object() || !j.contains("type")) throw ValidationError("spec needs a \"type\" field");
    const auto type = j.at("type").get<std::string>();
    if (type == "spectral") {
      const auto energies = j.at("energies").get<std::vector<double>>();
      std::vector<Complex> overlaps;
      for (const auto& v : j.at("overlaps")) overlaps.push_back(parse_complex(v));
      return hamiltonian::SpectralSystem(energies, std::move(overlaps));
    }
    if (type == "explicit") {
      const int n = j.at("n").get<int>();
      if (n < 1 || n > 12) throw ValidationError("explicit spec needs 1 <= n <= 12");
      const std::size_t dim = std::size_t{1} << n;
      qcore::HermitianOperator h_s(parse_matrix(j.at("h_s"), dim, "h_s"), limits.hermiticity_tol);
      qcore::Matrix a = qcore::hadamard(n);
      if (j.contains("a")) {
        const auto& a_json = j.at("a");
        if (a_json.is_string()) {
          const auto name = a_json.get<std::string>();
          if (name == "identity") {
            a = qcore::Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
          } else if (name != "hadamard") {
            throw ValidationError("unknown operator A '" + name + "' (expected hadamard, identity or a matrix)");
          }
        } else {
          a = parse_matrix(a_json, dim, "a");
        }
      }
      return hamiltonian::ExplicitSystem(n, std::move(h_s), std::move(a));
    }
    throw ValidationError("unknown spec type '" + type + "' (expected spectral or explicit)");
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed system spec: ") + e.what());
  }
}

hamiltonian::SystemSpec load_system_spec(const std::filesystem::path& path,
                                         const qcore::Limits& limits) {
  return parse_system_spec(read_json(path), limits);
}

json to_json(const hamiltonian::SystemSpec& spec) {
  if (const auto* s = std::get_if<hamiltonian::SpectralSystem>(&spec)) {
    json overlaps = json::array();
    for (Complex z : s->overlaps()) overlaps.push_back(complex_json(z));
    return {{"type", "spectral"}, {"energies", s->energies()}, {"overlaps", overlaps}};
  }
  const auto& e = std::get<hamiltonian::ExplicitSystem>(spec);
  return {{"type", "explicit"},
          {"n", e.n_qubits()},
          {"h_s", matrix_json(e.h_s().matrix())},
          {"a", matrix_json(e.a_op())}};
}

qcore::Limits parse_limits(const json& j) {
  qcore::Limits limits;
  try {
    if (j.contains("hermiticity_tol")) limits.hermiticity_tol = j.at("hermiticity_tol").get<double>();
    if (j.contains("max_dim")) limits.max_dim = j.at("max_dim").get<std::size_t>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed limits config: ") + e.what());
  }
  if (!(limits.hermiticity_tol >= 0.0)) throw ValidationError("hermiticity_tol must be >= 0");
  if (limits.max_dim < 2) throw ValidationError("max_dim must be >= 2");
  return limits;
}

qcore::Limits load_limits(const std::filesystem::path& path) { return parse_limits(read_json(path)); }

}  // namespace resonance::spec_io
