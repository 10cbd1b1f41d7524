#include "plq/plq.h"

#include <cstdlib>
#include <cstring>
#include <numbers>
#include <string>

#include <json.hpp>

#include "plq/errors.hpp"
#include "plq/json_io.hpp"
#include "plq/lindblad.hpp"
#include "plq/qem.hpp"
#include "plq/scenarios.hpp"

struct plq_channel {
  plq::Channel channel;
};

namespace {

using nlohmann::json;

thread_local std::string g_last_error;
thread_local std::string g_last_field;

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

plq_status record(plq_status status, const std::string& message,
                  const std::string& field = {}) {
  g_last_error = message;
  g_last_field = field;
  return status;
}

template <typename Fn>
plq_status guard(Fn&& fn) {
  try {
    fn();
    return PLQ_OK;
  } catch (const plq::ParseError& e) {
    return record(PLQ_ERR_PARSE, e.what(), e.field());
  } catch (const plq::SizeLimitError& e) {
    return record(PLQ_ERR_SIZE_LIMIT, e.what());
  } catch (const plq::IllDefinedError& e) {
    return record(PLQ_ERR_ILL_DEFINED, e.what());
  } catch (const plq::InconclusiveError& e) {
    return record(PLQ_ERR_INCONCLUSIVE, e.what());
  } catch (const plq::RankDeficiencyError& e) {
    return record(PLQ_ERR_RANK_DEFICIENT, e.what());
  } catch (const plq::NumericError& e) {
    return record(PLQ_ERR_NUMERIC, e.what());
  } catch (const plq::InvalidArgument& e) {
    return record(PLQ_ERR_INVALID_ARGUMENT, e.what());
  } catch (const json::exception& e) {
    return record(PLQ_ERR_PARSE, e.what());
  } catch (const std::exception& e) {
    return record(PLQ_ERR_INTERNAL, e.what());
  }
}

json lambda_triple_json(const plq::LambdaTriple& t) {
  return json{{"x", t.x}, {"y", t.y}, {"z", t.z}};
}

json verdict_of_triple(const plq::LambdaTriple& t, double tol) {
  Eigen::VectorXcd lambda(3);
  lambda << t.x, t.y, t.z;
  std::vector<plq::PauliWord> support{plq::PauliWord::from_label("X"),
                                      plq::PauliWord::from_label("Y"),
                                      plq::PauliWord::from_label("Z")};
  const plq::PLParams params(1, std::move(support), std::move(lambda));
  return plq::csm_verdict_to_json(plq::classify_pauli(params, tol));
}

constexpr double kDefaultTol = plq::kDefaultCsmTol;

}  // namespace

extern "C" {

const char* plq_status_name(plq_status status) {
  switch (status) {
    case PLQ_OK:
      return "ok";
    case PLQ_ERR_PARSE:
      return "parse_error";
    case PLQ_ERR_INVALID_ARGUMENT:
      return "invalid_argument";
    case PLQ_ERR_SIZE_LIMIT:
      return "size_limit";
    case PLQ_ERR_ILL_DEFINED:
      return "ill_defined";
    case PLQ_ERR_INCONCLUSIVE:
      return "inconclusive";
    case PLQ_ERR_RANK_DEFICIENT:
      return "rank_deficient";
    case PLQ_ERR_NUMERIC:
      return "numeric_error";
    case PLQ_ERR_INTERNAL:
      return "internal_error";
  }
  return "unknown";
}

const char* plq_last_error(void) { return g_last_error.c_str(); }

const char* plq_last_error_field(void) { return g_last_field.c_str(); }

void plq_string_free(char* s) { std::free(s); }

plq_status plq_channel_parse(const char* text, plq_channel** out) {
  if (!text || !out)
    return record(PLQ_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guard([&] {
    const json j = json::parse(text);
    *out = new plq_channel{plq::channel_from_json(j)};
  });
}

plq_status plq_channel_to_json(const plq_channel* ch, const char* repr,
                               char** json_out) {
  if (!ch || !json_out)
    return record(PLQ_ERR_INVALID_ARGUMENT, "null argument");
  *json_out = nullptr;
  return guard([&] {
    const plq::Repr r =
        repr ? plq::repr_from_string(repr) : plq::Repr::kTransfer;
    *json_out = copy_string(plq::channel_to_json(ch->channel, r).dump(2));
  });
}

void plq_channel_free(plq_channel* ch) { delete ch; }

int plq_channel_num_qubits(const plq_channel* ch) {
  return ch ? ch->channel.num_qubits() : 0;
}

plq_status plq_channel_twirl(const plq_channel* ch, plq_channel** out) {
  if (!ch || !out) return record(PLQ_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guard([&] {
    *out = new plq_channel{plq::twirl(ch->channel).channel()};
  });
}

plq_status plq_channel_compose(const plq_channel* a, const plq_channel* b,
                               plq_channel** out) {
  if (!a || !b || !out)
    return record(PLQ_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guard([&] {
    *out = new plq_channel{plq::compose(a->channel, b->channel)};
  });
}

plq_status plq_channel_is_cptp(const plq_channel* ch, double cp_tol,
                               double tp_tol, int* ok, char** report_json) {
  if (!ch || !ok) return record(PLQ_ERR_INVALID_ARGUMENT, "null argument");
  return guard([&] {
    const plq::CptpReport report =
        plq::is_cptp(ch->channel, cp_tol > 0 ? cp_tol : plq::kDefaultCpTol,
                     tp_tol > 0 ? tp_tol : plq::kDefaultTpTol);
    *ok = report.ok() ? 1 : 0;
    if (report_json) {
      const json j{{"cp_ok", report.cp_ok},
                   {"tp_ok", report.tp_ok},
                   {"min_choi_eigenvalue", report.min_choi_eigenvalue},
                   {"max_tp_violation", report.max_tp_violation},
                   {"summary", report.summary()}};
      *report_json = copy_string(j.dump(2));
    }
  });
}

plq_status plq_classify(const char* channel_json, double tol, int* verdict,
                        char** verdict_json) {
  if (!channel_json || !verdict)
    return record(PLQ_ERR_INVALID_ARGUMENT, "null argument");
  return guard([&] {
    const double t = tol > 0 ? tol : kDefaultTol;
    const json j = json::parse(channel_json);
    const plq::Channel ch = plq::channel_from_json(j);
    const Eigen::MatrixXd& transfer = ch.transfer();
    const Eigen::MatrixXd off =
        transfer - Eigen::MatrixXd(transfer.diagonal().asDiagonal());
    plq::CsmVerdict result;
    if (off.cwiseAbs().maxCoeff() <= t) {
      result = plq::classify_pauli(ch.pauli_eigenvalues(), t);
    } else {
      result = plq::csm_test_general(ch, t);
    }
    *verdict = result.is_csm ? 1 : 0;
    if (verdict_json)
      *verdict_json = copy_string(plq::csm_verdict_to_json(result).dump(2));
  });
}

plq_status plq_demo_hadamard(double gphi_t, char** report_json) {
  if (!report_json) return record(PLQ_ERR_INVALID_ARGUMENT, "null argument");
  return guard([&] {
    const plq::LambdaTriple t = plq::hadamard_dephasing_lambda(gphi_t);
    json j;
    j["scenario"] = "hadamard_dephasing";
    j["gphi_t"] = gphi_t;
    j["lambda"] = lambda_triple_json(t);
    j["verdict"] = verdict_of_triple(t, kDefaultTol);
    *report_json = copy_string(j.dump(2));
  });
}

plq_status plq_demo_hadamard_relaxation(double gphi_t, double g_t,
                                        char** report_json) {
  if (!report_json) return record(PLQ_ERR_INVALID_ARGUMENT, "null argument");
  return guard([&] {
    const plq::LambdaTriple t =
        plq::hadamard_dephasing_relaxation_lambda(gphi_t, g_t);
    json j;
    j["scenario"] = "hadamard_dephasing_relaxation";
    j["gphi_t"] = gphi_t;
    j["g_t"] = g_t;
    j["lambda"] = lambda_triple_json(t);
    j["verdict"] = verdict_of_triple(t, kDefaultTol);
    j["csmb_criterion"] =
        plq::csmb_criterion(g_t, gphi_t, plq::Scenario::kHadamard);
    *report_json = copy_string(j.dump(2));
  });
}

plq_status plq_demo_sqrtx(double g_tg, double gphi_tg, double theta,
                          char** report_json) {
  if (!report_json) return record(PLQ_ERR_INVALID_ARGUMENT, "null argument");
  return guard([&] {
    const double th = theta > 0 ? theta : std::numbers::pi / 2;
    const bool is_sqrtx = std::abs(th - std::numbers::pi / 2) < 1e-9;
    json j;
    j["scenario"] = "sqrtx";
    j["g_tg"] = g_tg;
    j["gphi_tg"] = gphi_tg;
    j["theta"] = th;
    j["clifford_twirlable"] = plq::is_clifford_angle(th);
    j["lambda_second_order"] =
        lambda_triple_json(plq::sqrtx_lambda_second_order(g_tg, gphi_tg, th));
    if (is_sqrtx) {
      const plq::LambdaTriple t = plq::sqrtx_lambda_numeric(g_tg, gphi_tg);
      j["lambda"] = lambda_triple_json(t);
      j["verdict"] = verdict_of_triple(t, kDefaultTol);
    }
    j["csmb_criterion"] =
        plq::csmb_criterion(g_tg, gphi_tg, plq::Scenario::kSqrtX);
    *report_json = copy_string(j.dump(2));
  });
}

plq_status plq_sweep_csv(int nx, int ny, double gmax, double gpmax,
                         int workers, char** csv_out) {
  if (!csv_out) return record(PLQ_ERR_INVALID_ARGUMENT, "null argument");
  return guard([&] {
    plq::SweepSpec spec;
    spec.nx = nx;
    spec.ny = ny;
    spec.gmax = gmax;
    spec.gpmax = gpmax;
    spec.workers = workers;
    *csv_out = copy_string(plq::sweep_to_csv(plq::sweep_phase_diagram(spec)));
  });
}

plq_status plq_fit(const char* request_json, char** result_json) {
  if (!request_json || !result_json)
    return record(PLQ_ERR_INVALID_ARGUMENT, "null argument");
  return guard([&] {
    const plq::FitRequest request =
        plq::fit_request_from_json(json::parse(request_json));
    const plq::FitResult result = plq::fit_sparse_lambda(
        request.measurements, request.support, request.allow_negative);
    *result_json = copy_string(plq::fit_result_to_json(result).dump(2));
  });
}

plq_status plq_sample(const char* request_json, char** result_json) {
  if (!request_json || !result_json)
    return record(PLQ_ERR_INVALID_ARGUMENT, "null argument");
  return guard([&] {
    const json j = json::parse(request_json);
    if (!j.is_object() || !j.contains("pl"))
      throw plq::ParseError("sample request needs a 'pl' object", "pl");
    const plq::PLParams params = plq::pl_params_from_json(j["pl"]);
    const double beta = j.value("beta", 1.0);
    const std::int64_t shots = j.value("shots", std::int64_t{100000});
    const std::uint64_t seed = j.value("seed", std::uint64_t{0});
    const int workers = j.value("workers", 0);
    const std::string observable_label = j.value("observable", "Z");
    const std::string state_name = j.value("state", "plus");

    plq::Channel channel = j.contains("channel")
                               ? plq::channel_from_json(j["channel"])
                               : plq::pl_channel(params).channel.channel();
    const plq::PauliWord obs_word =
        plq::PauliWord::from_label(observable_label);
    if (obs_word.num_qubits() != channel.num_qubits())
      throw plq::InvalidArgument("observable size does not match channel");
    const plq::MitigationResult result = plq::mitigation_estimate(
        channel, params, beta, plq::pauli_matrix(obs_word),
        plq::named_state(channel.num_qubits(), state_name), shots, seed,
        workers);
    const json out{{"estimate", result.estimate},
                   {"stderr", result.standard_error},
                   {"total_gamma", result.total_gamma},
                   {"shots", result.shots}};
    *result_json = copy_string(out.dump(2));
  });
}

}  // extern "C"
