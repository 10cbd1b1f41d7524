#include "plq/json_io.hpp"

#include <cmath>

#include "plq/errors.hpp"

namespace plq {

namespace {

using nlohmann::json;

std::complex<double> complex_from_json(const json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ParseError("expected a number or an [re, im] pair", field);
}

json complex_to_json(std::complex<double> z) {
  return json::array({z.real(), z.imag()});
}

Eigen::MatrixXcd complex_matrix_from_json(const json& j,
                                          const std::string& field) {
  if (!j.is_array() || j.empty())
    throw ParseError("expected a nested array matrix", field);
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array())
    throw ParseError("expected a nested array matrix", field);
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw ParseError("ragged matrix rows", field);
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)], field);
  }
  return m;
}

json complex_matrix_to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd real_matrix_from_json(const json& j, Eigen::Index dim,
                                      const std::string& field) {
  Eigen::MatrixXd m(dim, dim);
  if (j.is_array() && !j.empty() && j[0].is_number()) {
    // flat row-major
    if (static_cast<Eigen::Index>(j.size()) != dim * dim)
      throw ParseError("flat transfer data must have 16^n entries", field);
    for (Eigen::Index r = 0; r < dim; ++r)
      for (Eigen::Index c = 0; c < dim; ++c)
        m(r, c) = j[static_cast<std::size_t>(r * dim + c)].get<double>();
    return m;
  }
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != dim)
    throw ParseError("transfer data must be a 4^n x 4^n matrix", field);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim)
      throw ParseError("ragged transfer rows", field);
    for (Eigen::Index c = 0; c < dim; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_number()) throw ParseError("transfer entries must be real", field);
      m(r, c) = e.get<double>();
    }
  }
  return m;
}

json real_matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

int get_qubits(const json& j) {
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw ParseError("missing integer field 'n'", "n");
  const int n = j["n"].get<int>();
  if (n < 1) throw ParseError("'n' must be positive", "n");
  return n;
}

}  // namespace

Repr repr_from_string(const std::string& name) {
  if (name == "transfer") return Repr::kTransfer;
  if (name == "kraus") return Repr::kKraus;
  if (name == "choi") return Repr::kChoi;
  if (name == "pauli_basis") return Repr::kPauliBasis;
  throw ParseError("unknown representation '" + name +
                       "' (expected transfer|kraus|choi|pauli_basis)",
                   "repr");
}

std::string repr_to_string(Repr repr) {
  switch (repr) {
    case Repr::kTransfer:
      return "transfer";
    case Repr::kKraus:
      return "kraus";
    case Repr::kChoi:
      return "choi";
    case Repr::kPauliBasis:
      return "pauli_basis";
  }
  return "transfer";
}

nlohmann::json channel_to_json(const Channel& ch, Repr repr) {
  json j;
  j["n"] = ch.num_qubits();
  j["repr"] = repr_to_string(repr);
  switch (repr) {
    case Repr::kTransfer:
      j["data"] = real_matrix_to_json(ch.transfer());
      break;
    case Repr::kChoi:
      j["data"] = complex_matrix_to_json(ch.choi());
      break;
    case Repr::kPauliBasis:
      j["data"] = complex_matrix_to_json(ch.pauli_basis());
      break;
    case Repr::kKraus: {
      json ops = json::array();
      for (const auto& k : ch.kraus()) ops.push_back(complex_matrix_to_json(k));
      j["data"] = std::move(ops);
      break;
    }
  }
  return j;
}

Channel channel_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("channel document must be an object");
  const int n = get_qubits(j);
  if (!j.contains("repr") || !j["repr"].is_string())
    throw ParseError("missing string field 'repr'", "repr");
  const Repr repr = repr_from_string(j["repr"].get<std::string>());
  if (!j.contains("data")) throw ParseError("missing field 'data'", "data");
  const json& data = j["data"];
  const Eigen::Index dim4 = Eigen::Index{1} << (2 * n);
  switch (repr) {
    case Repr::kTransfer:
      return Channel::from_transfer(real_matrix_from_json(data, dim4, "data"));
    case Repr::kChoi: {
      Eigen::MatrixXcd m = complex_matrix_from_json(data, "data");
      if (m.rows() != dim4 || m.cols() != dim4)
        throw ParseError("Choi matrix must be 4^n square", "data");
      return Channel::from_choi(m);
    }
    case Repr::kPauliBasis: {
      Eigen::MatrixXcd m = complex_matrix_from_json(data, "data");
      if (m.rows() != dim4 || m.cols() != dim4)
        throw ParseError("Pauli-basis matrix must be 4^n square", "data");
      return Channel::from_pauli_basis(m);
    }
    case Repr::kKraus: {
      if (!data.is_array() || data.empty())
        throw ParseError("Kraus data must be a non-empty array", "data");
      std::vector<Eigen::MatrixXcd> kraus;
      const Eigen::Index d = Eigen::Index{1} << n;
      for (std::size_t i = 0; i < data.size(); ++i) {
        Eigen::MatrixXcd k = complex_matrix_from_json(data[i], "data");
        if (k.rows() != d || k.cols() != d)
          throw ParseError("Kraus operators must be 2^n square", "data");
        kraus.push_back(std::move(k));
      }
      return Channel::from_kraus(std::move(kraus));
    }
  }
  throw ParseError("unreachable representation", "repr");
}

nlohmann::json pauli_vector_to_json(const PauliVector& v) {
  json j;
  j["n"] = v.num_qubits();
  j["values"] = std::vector<double>(v.values().begin(), v.values().end());
  return j;
}

PauliVector pauli_vector_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("Pauli vector must be an object");
  const int n = get_qubits(j);
  if (!j.contains("values") || !j["values"].is_array())
    throw ParseError("missing array field 'values'", "values");
  const auto& values = j["values"];
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i].is_number())
      throw ParseError("values must be real numbers", "values");
    v[static_cast<Eigen::Index>(i)] = values[i].get<double>();
  }
  return PauliVector(n, std::move(v));
}

nlohmann::json pl_params_to_json(const PLParams& params) {
  json terms = json::array();
  for (std::size_t i = 0; i < params.size(); ++i) {
    json term;
    term["word"] = params.support()[i].label();
    term["lambda"] =
        complex_to_json(params.lambda()[static_cast<Eigen::Index>(i)]);
    terms.push_back(std::move(term));
  }
  json j;
  j["n"] = params.num_qubits();
  j["terms"] = std::move(terms);
  return j;
}

PLParams pl_params_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("PL parameters must be an object");
  const int n = get_qubits(j);
  if (!j.contains("terms") || !j["terms"].is_array())
    throw ParseError("missing array field 'terms'", "terms");
  std::vector<PauliWord> support;
  Eigen::VectorXcd lambda(static_cast<Eigen::Index>(j["terms"].size()));
  Eigen::Index i = 0;
  for (const json& term : j["terms"]) {
    if (!term.is_object() || !term.contains("word") ||
        !term["word"].is_string() || !term.contains("lambda"))
      throw ParseError("each term needs 'word' and 'lambda'", "terms");
    support.push_back(PauliWord::from_label(term["word"].get<std::string>()));
    lambda[i++] = complex_from_json(term["lambda"], "terms");
  }
  try {
    return PLParams(n, std::move(support), std::move(lambda));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), "terms");
  }
}

nlohmann::json csm_verdict_to_json(const CsmVerdict& verdict) {
  json j;
  j["is_csm"] = verdict.is_csm;
  if (std::isfinite(verdict.min_value))
    j["min_value"] = verdict.min_value;
  else
    j["min_value"] = nullptr;
  j["tol"] = verdict.tol;
  json witness;
  if (verdict.witness_kind == CsmVerdict::WitnessKind::kPlParams) {
    witness["kind"] = "pl_params";
    if (verdict.lambda_witness)
      witness["params"] = pl_params_to_json(*verdict.lambda_witness);
  } else {
    witness["kind"] = "kossakowski_spectrum";
    witness["eigenvalues"] = std::vector<double>(
        verdict.kossakowski_spectrum.begin(), verdict.kossakowski_spectrum.end());
  }
  j["witness"] = std::move(witness);
  return j;
}

nlohmann::json generator_to_json(const LindbladGenerator& g) {
  json j;
  j["n"] = g.num_qubits;
  j["H"] = complex_matrix_to_json(g.hamiltonian);
  j["Gamma"] = complex_matrix_to_json(g.kossakowski);
  return j;
}

LindbladGenerator generator_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("generator must be an object");
  const int n = get_qubits(j);
  if (!j.contains("H")) throw ParseError("missing field 'H'", "H");
  if (!j.contains("Gamma")) throw ParseError("missing field 'Gamma'", "Gamma");
  try {
    return LindbladGenerator(n, complex_matrix_from_json(j["H"], "H"),
                             complex_matrix_from_json(j["Gamma"], "Gamma"));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

FitRequest fit_request_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("fit request must be an object");
  FitRequest request;
  if (!j.contains("f") || !j["f"].is_array() || j["f"].empty())
    throw ParseError("missing non-empty array field 'f'", "f");
  for (const json& entry : j["f"]) {
    if (!entry.is_object() || !entry.contains("word") ||
        !entry["word"].is_string() || !entry.contains("value") ||
        !entry["value"].is_number())
      throw ParseError("each measurement needs 'word' and numeric 'value'",
                       "f");
    FMeasurement m{PauliWord::from_label(entry["word"].get<std::string>()),
                   entry["value"].get<double>(), 0.0};
    if (entry.contains("sigma")) {
      if (!entry["sigma"].is_number() || entry["sigma"].get<double>() <= 0.0)
        throw ParseError("'sigma' must be a positive number", "f");
      m.sigma = entry["sigma"].get<double>();
    }
    request.measurements.push_back(std::move(m));
  }
  if (!j.contains("support") || !j["support"].is_array() ||
      j["support"].empty())
    throw ParseError("missing non-empty array field 'support'", "support");
  for (const json& word : j["support"]) {
    if (!word.is_string())
      throw ParseError("support entries must be label strings", "support");
    request.support.push_back(PauliWord::from_label(word.get<std::string>()));
  }
  if (j.contains("allow_negative")) {
    if (!j["allow_negative"].is_boolean())
      throw ParseError("'allow_negative' must be a boolean", "allow_negative");
    request.allow_negative = j["allow_negative"].get<bool>();
  }
  return request;
}

nlohmann::json fit_result_to_json(const FitResult& result) {
  json j;
  j["params"] = pl_params_to_json(result.params);
  j["residual"] = result.residual;
  return j;
}

Eigen::MatrixXcd named_state(int num_qubits, const std::string& name) {
  Eigen::Vector2cd single;
  const double s = 1.0 / std::sqrt(2.0);
  if (name == "zero")
    single << 1, 0;
  else if (name == "one")
    single << 0, 1;
  else if (name == "plus")
    single << s, s;
  else if (name == "minus")
    single << s, -s;
  else
    throw ParseError("unknown state '" + name +
                         "' (expected zero|one|plus|minus)",
                     "state");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Ones(1);
  for (int q = 0; q < num_qubits; ++q) {
    Eigen::VectorXcd next(psi.size() * 2);
    next << single[0] * psi, single[1] * psi;
    psi = std::move(next);
  }
  return psi * psi.adjoint();
}

}  // namespace plq
