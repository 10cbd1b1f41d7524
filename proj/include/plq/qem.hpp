#ifndef PLQ_QEM_HPP
#define PLQ_QEM_HPP

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "plq/channel.hpp"
#include "plq/plmodel.hpp"

namespace plq {

// Per-word sampling data for realizing the map
//   prod_a [ w_a id + (1 - w_a) P_a . P_a ],   w_a = (1 + e^{-2 lambda_a'})/2.
// Nonnegative lambda' gives an honest probability; negative lambda' gives
// w > 1, handled by quasi-probability sampling with a sign and the
// overhead factor 2w - 1.
struct PlanEntry {
  PauliWord word{1};
  double lambda_prime = 0.0;
  double w = 1.0;
  double gamma_factor = 1.0;       // 1 when lambda' >= 0, else 2w - 1
  double flip_probability = 0.0;   // 1 - w, or (w-1)/(2w-1) when w > 1
  int sign_on_flip = 1;
};

struct SamplingPlan {
  int num_qubits = 1;
  double beta = 1.0;
  std::vector<PlanEntry> entries;
  double total_gamma = 1.0;  // product of gamma factors; 1 iff all lambda' >= 0
};

// Noise scaling: lambda' = beta * lambda, entrywise. beta = -1 inverts the
// map. Real parameters only.
PLParams power_lambda(const PLParams& params, double beta);

SamplingPlan build_plan(const PLParams& params, double beta);

// One draw: flip each entry with its flip probability, multiply the flipped
// words (phases dropped; conjugation is phase-insensitive), accumulate the
// sign. The estimator weight of the draw is total_gamma * sign.
std::pair<PauliWord, int> sample_word(const SamplingPlan& plan,
                                      std::mt19937_64& rng);

// Exact expectation of the sampling estimator as a channel object: the
// brute-force sum over all 2^|S| flip patterns. Equals the transfer matrix
// of the PL map with parameters lambda'. Support limited to 16 words.
Channel expected_map(const SamplingPlan& plan);

struct MitigationResult {
  double estimate = 0.0;
  double standard_error = 0.0;
  double total_gamma = 1.0;
  std::int64_t shots = 0;
};

// Monte-Carlo estimate of tr[O (P_w o channel)(rho)] weighted by
// sign * total_gamma, with (E^P)^beta realized by Pauli-word sampling from
// the plan of (params, beta). At beta = -1 and params matching the
// channel's true twirled noise, the expectation is the noiseless value.
// Deterministic for a fixed seed regardless of worker count.
MitigationResult mitigation_estimate(const Channel& channel,
                                     const PLParams& params, double beta,
                                     const Eigen::MatrixXcd& observable,
                                     const Eigen::MatrixXcd& state,
                                     std::int64_t shots, std::uint64_t seed,
                                     int workers = 0);

}  // namespace plq

#endif
