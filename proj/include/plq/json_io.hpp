#ifndef PLQ_JSON_IO_HPP
#define PLQ_JSON_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "plq/channel.hpp"
#include "plq/lindblad.hpp"
#include "plq/plmodel.hpp"

namespace plq {

// Wire formats. Complex entries are [re, im] pairs; bare numbers are
// accepted on input as purely real. Channel documents look like
//   {"n": 1, "repr": "transfer", "data": [[...], ...]}
// where transfer data may also be a flat row-major array.

nlohmann::json channel_to_json(const Channel& ch, Repr repr = Repr::kTransfer);
Channel channel_from_json(const nlohmann::json& j);

Repr repr_from_string(const std::string& name);
std::string repr_to_string(Repr repr);

// {"n": 1, "values": [...]}
nlohmann::json pauli_vector_to_json(const PauliVector& v);
PauliVector pauli_vector_from_json(const nlohmann::json& j);

// {"n": 1, "terms": [{"word": "X", "lambda": [re, im]}, ...]}
nlohmann::json pl_params_to_json(const PLParams& params);
PLParams pl_params_from_json(const nlohmann::json& j);

// {"is_csm": ..., "witness": {...}, "min_value": ..., "tol": ...};
// min_value is null when the witness is complex (surrogate for -inf).
nlohmann::json csm_verdict_to_json(const CsmVerdict& verdict);

// {"n": 1, "H": [[...]], "Gamma": [[...]]} over the non-identity Pauli order
nlohmann::json generator_to_json(const LindbladGenerator& g);
LindbladGenerator generator_from_json(const nlohmann::json& j);

struct FitRequest {
  std::vector<FMeasurement> measurements;
  std::vector<PauliWord> support;
  bool allow_negative = true;
};

// {"f": [{"word": "X", "value": 0.8, "sigma": 0.01}, ...],
//  "support": ["X", ...], "allow_negative": true}
FitRequest fit_request_from_json(const nlohmann::json& j);
nlohmann::json fit_result_to_json(const FitResult& result);

// Named product states for the sampling CLI: zero, one, plus, minus.
Eigen::MatrixXcd named_state(int num_qubits, const std::string& name);

}  // namespace plq

#endif
