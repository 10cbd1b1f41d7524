// plq command-line tool. All computation happens behind the C API in
// libplq; this layer only parses arguments, moves documents between files
// and the library, and maps statuses to exit codes.

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "plq/plq.h"

namespace {

using nlohmann::json;

constexpr int kExitCsm = 0;
constexpr int kExitNonCsm = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

bool g_no_timestamp = false;

int exit_code_for(plq_status status) {
  switch (status) {
    case PLQ_OK:
      return 0;
    case PLQ_ERR_PARSE:
      return kExitUsage;
    case PLQ_ERR_ILL_DEFINED:
    case PLQ_ERR_INCONCLUSIVE:
      return kExitInconclusive;
    default:
      return kExitInternal;
  }
}

[[noreturn]] void fail(plq_status status) {
  json envelope;
  envelope["exit"] = exit_code_for(status);
  envelope["status"] = plq_status_name(status);
  envelope["message"] = plq_last_error();
  if (plq_last_error_field()[0] != '\0')
    envelope["field"] = plq_last_error_field();
  std::cerr << envelope.dump() << "\n";
  std::exit(exit_code_for(status));
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) {
    json envelope{{"exit", kExitUsage},
                  {"message", "cannot open input file"},
                  {"field", path}};
    std::cerr << envelope.dump() << "\n";
    std::exit(kExitUsage);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) {
    json envelope{{"exit", kExitInternal},
                  {"message", "cannot open output file"},
                  {"field", path}};
    std::cerr << envelope.dump() << "\n";
    std::exit(kExitInternal);
  }
  out << text;
}

std::string timestamp_now() {
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

// JSON documents get a timestamp unless suppressed, so runs are
// byte-identical with --no-timestamp.
std::string finalize_json(const char* text) {
  if (g_no_timestamp) return text;
  json j = json::parse(text);
  j["timestamp"] = timestamp_now();
  return j.dump(2);
}

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { plq_string_free(ptr); }
};

int default_workers() {
  if (const char* env = std::getenv("PLQ_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 0;  // library picks the hardware concurrency
}

double triple_field(const json& j, const char* axis) {
  return j.at("lambda").at(axis).get<double>();
}

void print_demo_text(const json& report) {
  const std::string scenario = report.at("scenario").get<std::string>();
  char line[256];
  if (scenario == "hadamard_dephasing") {
    std::snprintf(line, sizeof line, "Hadamard dephasing (gamma_phi t = %g):",
                  report.at("gphi_t").get<double>());
  } else if (scenario == "hadamard_dephasing_relaxation") {
    std::snprintf(line, sizeof line,
                  "Hadamard dephasing + relaxation (gamma_phi t = %g, "
                  "gamma t = %g):",
                  report.at("gphi_t").get<double>(),
                  report.at("g_t").get<double>());
  } else {
    std::snprintf(line, sizeof line,
                  "sqrt(X) gate (gamma t_g = %g, gamma_phi t_g = %g, theta = "
                  "%g):",
                  report.at("g_tg").get<double>(),
                  report.at("gphi_tg").get<double>(),
                  report.at("theta").get<double>());
  }
  std::cout << line << "\n";
  if (report.contains("lambda")) {
    std::snprintf(line, sizeof line, "  lambda = (%.6g, %.6g, %.6g)",
                  triple_field(report, "x"), triple_field(report, "y"),
                  triple_field(report, "z"));
    std::cout << line << "\n";
  }
  if (report.contains("lambda_second_order")) {
    const json& t = report.at("lambda_second_order");
    std::snprintf(line, sizeof line,
                  "  lambda (second order) = (%.6g, %.6g, %.6g)",
                  t.at("x").get<double>(), t.at("y").get<double>(),
                  t.at("z").get<double>());
    std::cout << line << "\n";
  }
  if (report.contains("verdict")) {
    const json& v = report.at("verdict");
    const bool csm = v.at("is_csm").get<bool>();
    std::string min_value = v.at("min_value").is_null()
                                ? "complex"
                                : std::to_string(
                                      v.at("min_value").get<double>());
    std::cout << "  verdict: " << (csm ? "CSM" : "non-CSM")
              << " (min lambda = " << min_value << ")\n";
  }
  if (report.contains("clifford_twirlable") &&
      !report.at("clifford_twirlable").get<bool>()) {
    std::cout << "  note: theta is not a multiple of pi/2; the gate is not "
                 "Clifford and this channel is not twirlable by word "
                 "insertion\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Pauli-Lindblad channels: twirling, Markovianity classification, "
      "noise scaling and mitigation sampling"};
  app.require_subcommand(1);
  app.add_flag("--no-timestamp", g_no_timestamp,
               "omit the timestamp field from JSON outputs");

  std::string input, output = "-";
  double tol = 0.0;

  auto* classify = app.add_subcommand(
      "classify", "Markovianity verdict for a channel document");
  classify->add_option("--input", input, "channel JSON file (- for stdin)")
      ->required();
  classify->add_option("--tol", tol, "verdict tolerance (default 1e-10)");
  classify->add_option("--out", output, "verdict JSON destination");

  auto* twirl =
      app.add_subcommand("twirl", "Pauli twirl of a channel document");
  twirl->add_option("--input", input, "channel JSON file (- for stdin)")
      ->required();
  twirl->add_option("--out", output, "twirled channel destination");

  std::string to_repr = "transfer";
  auto* convert = app.add_subcommand(
      "convert", "rewrite a channel document in another representation");
  convert->add_option("--input", input, "channel JSON file (- for stdin)")
      ->required();
  convert->add_option("--to", to_repr,
                      "target representation: transfer|kraus|choi|pauli_basis");
  convert->add_option("--out", output, "converted channel destination");

  auto* demo = app.add_subcommand("demo", "worked scenarios");
  demo->require_subcommand(1);
  double gphit = 1.0, gt = 0.0, gamma_tg = 0.0, gammaphi_tg = 0.0;
  double theta = 0.0;
  auto* demo_hadamard =
      demo->add_subcommand("hadamard", "Hadamard dephasing closed form");
  demo_hadamard->add_option("--gphit", gphit, "gamma_phi * t")->required();
  demo_hadamard->add_option("--out", output, "JSON report destination");
  auto* demo_relax = demo->add_subcommand(
      "hadamard-relax", "Hadamard dephasing with tilted relaxation");
  demo_relax->add_option("--gphit", gphit, "gamma_phi * t")->required();
  demo_relax->add_option("--gt", gt, "gamma * t")->required();
  demo_relax->add_option("--out", output, "JSON report destination");
  auto* demo_sqrtx =
      demo->add_subcommand("sqrtx", "noisy sqrt(X) gate error channel");
  demo_sqrtx->add_option("--gamma-tg", gamma_tg, "gamma * t_g")->required();
  demo_sqrtx->add_option("--gammaphi-tg", gammaphi_tg, "gamma_phi * t_g")
      ->required();
  demo_sqrtx->add_option("--theta", theta,
                         "rotation angle (default pi/2)");
  demo_sqrtx->add_option("--out", output, "JSON report destination");

  std::string grid = "60x60";
  double gmax = 3.0, gpmax = 3.0;
  int workers = default_workers();
  auto* sweep = app.add_subcommand(
      "sweep", "transition diagram over (gamma t_g, gamma_phi t_g)");
  sweep->add_option("--grid", grid, "grid as NXxNY (default 60x60)");
  sweep->add_option("--gmax", gmax, "gamma t_g range maximum");
  sweep->add_option("--gpmax", gpmax, "gamma_phi t_g range maximum");
  sweep->add_option("--workers", workers, "worker threads (0 = auto)");
  sweep->add_option("--out", output, "CSV destination");

  bool allow_negative = false, no_negative = false;
  auto* fit = app.add_subcommand(
      "fit", "least-squares PL parameters from measured eigenvalues");
  fit->add_option("--input", input, "fit request JSON file (- for stdin)")
      ->required();
  fit->add_flag("--allow-negative", allow_negative,
                "override the request: allow negative parameters");
  fit->add_flag("--no-negative", no_negative,
                "override the request: constrain parameters to >= 0");
  fit->add_option("--out", output, "fit result destination");

  std::string pl_path, observable = "Z", state = "plus", channel_path;
  double beta = 1.0;
  std::int64_t shots = 100000;
  std::uint64_t seed = 0;
  auto* sample = app.add_subcommand(
      "sample", "Monte-Carlo mitigation estimate by Pauli-word sampling");
  sample->add_option("--pl", pl_path, "PL parameter JSON file")->required();
  sample->add_option("--beta", beta, "noise-scaling exponent")->required();
  sample->add_option("--shots", shots, "number of draws");
  sample->add_option("--seed", seed, "root RNG seed (default 0)");
  sample->add_option("--observable", observable, "Pauli word label");
  sample->add_option("--state", state, "input state: zero|one|plus|minus");
  sample->add_option("--channel", channel_path,
                     "channel under test (default: the PL channel itself)");
  sample->add_option("--workers", workers, "worker threads (0 = auto)");
  sample->add_option("--out", output, "estimate JSON destination");

  CLI11_PARSE(app, argc, argv);

  if (classify->parsed()) {
    int verdict = 0;
    OwnedString verdict_json;
    const plq_status status = plq_classify(read_input(input).c_str(), tol,
                                           &verdict, &verdict_json.ptr);
    if (status != PLQ_OK) fail(status);
    write_output(output, finalize_json(verdict_json.ptr));
    return verdict ? kExitCsm : kExitNonCsm;
  }

  if (twirl->parsed()) {
    plq_channel* ch = nullptr;
    plq_status status = plq_channel_parse(read_input(input).c_str(), &ch);
    if (status != PLQ_OK) fail(status);
    plq_channel* twirled = nullptr;
    status = plq_channel_twirl(ch, &twirled);
    plq_channel_free(ch);
    if (status != PLQ_OK) fail(status);
    OwnedString text;
    status = plq_channel_to_json(twirled, "transfer", &text.ptr);
    plq_channel_free(twirled);
    if (status != PLQ_OK) fail(status);
    write_output(output, finalize_json(text.ptr));
    return 0;
  }

  if (convert->parsed()) {
    plq_channel* ch = nullptr;
    plq_status status = plq_channel_parse(read_input(input).c_str(), &ch);
    if (status != PLQ_OK) fail(status);
    OwnedString text;
    status = plq_channel_to_json(ch, to_repr.c_str(), &text.ptr);
    plq_channel_free(ch);
    if (status != PLQ_OK) fail(status);
    write_output(output, finalize_json(text.ptr));
    return 0;
  }

  if (demo->parsed()) {
    OwnedString report;
    plq_status status = PLQ_OK;
    if (demo_hadamard->parsed())
      status = plq_demo_hadamard(gphit, &report.ptr);
    else if (demo_relax->parsed())
      status = plq_demo_hadamard_relaxation(gphit, gt, &report.ptr);
    else
      status = plq_demo_sqrtx(gamma_tg, gammaphi_tg, theta, &report.ptr);
    if (status != PLQ_OK) fail(status);
    print_demo_text(json::parse(report.ptr));
    if (output != "-") write_output(output, finalize_json(report.ptr));
    return 0;
  }

  if (sweep->parsed()) {
    int nx = 0, ny = 0;
    if (std::sscanf(grid.c_str(), "%dx%d", &nx, &ny) != 2 || nx < 1 ||
        ny < 1) {
      json envelope{{"exit", kExitUsage},
                    {"message", "grid must look like 60x60"},
                    {"field", "--grid"}};
      std::cerr << envelope.dump() << "\n";
      return kExitUsage;
    }
    OwnedString csv;
    const plq_status status =
        plq_sweep_csv(nx, ny, gmax, gpmax, workers, &csv.ptr);
    if (status != PLQ_OK) fail(status);
    write_output(output, csv.ptr);
    return 0;
  }

  if (fit->parsed()) {
    json request = json::parse(read_input(input), nullptr, false);
    if (request.is_discarded()) {
      json envelope{{"exit", kExitUsage},
                    {"message", "fit request is not valid JSON"},
                    {"field", "--input"}};
      std::cerr << envelope.dump() << "\n";
      return kExitUsage;
    }
    if (allow_negative) request["allow_negative"] = true;
    if (no_negative) request["allow_negative"] = false;
    OwnedString result;
    const plq_status status = plq_fit(request.dump().c_str(), &result.ptr);
    if (status != PLQ_OK) fail(status);
    write_output(output, finalize_json(result.ptr));
    return 0;
  }

  if (sample->parsed()) {
    json request;
    request["pl"] = json::parse(read_input(pl_path), nullptr, false);
    if (request["pl"].is_discarded()) {
      json envelope{{"exit", kExitUsage},
                    {"message", "PL parameter file is not valid JSON"},
                    {"field", "--pl"}};
      std::cerr << envelope.dump() << "\n";
      return kExitUsage;
    }
    request["beta"] = beta;
    request["shots"] = shots;
    request["seed"] = seed;
    request["observable"] = observable;
    request["state"] = state;
    request["workers"] = workers;
    if (!channel_path.empty())
      request["channel"] = json::parse(read_input(channel_path));
    OwnedString result;
    const plq_status status = plq_sample(request.dump().c_str(), &result.ptr);
    if (status != PLQ_OK) fail(status);
    write_output(output, finalize_json(result.ptr));
    return 0;
  }

  return kExitUsage;
}
