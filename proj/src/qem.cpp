#include "plq/qem.hpp"

#include <cmath>
#include <thread>

#include "plq/errors.hpp"

namespace plq {

namespace {

constexpr std::int64_t kBlockShots = 4096;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void check_hermitian(const Eigen::MatrixXcd& m, const char* what) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw InvalidArgument(std::string(what) + " must be Hermitian");
}

}  // namespace

PLParams power_lambda(const PLParams& params, double beta) {
  if (!params.is_real())
    throw InvalidArgument("power_lambda requires real PL parameters");
  return PLParams(params.num_qubits(), params.support(),
                  beta * params.lambda());
}

SamplingPlan build_plan(const PLParams& params, double beta) {
  if (!params.is_real())
    throw InvalidArgument("sampling plans require real PL parameters");
  SamplingPlan plan;
  plan.num_qubits = params.num_qubits();
  plan.beta = beta;
  plan.total_gamma = 1.0;
  plan.entries.reserve(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    PlanEntry entry;
    entry.word = params.support()[i];
    entry.lambda_prime =
        beta * params.lambda()[static_cast<Eigen::Index>(i)].real();
    entry.w = 0.5 * (1.0 + std::exp(-2.0 * entry.lambda_prime));
    if (entry.lambda_prime >= 0.0) {
      entry.gamma_factor = 1.0;
      entry.flip_probability = 1.0 - entry.w;
      entry.sign_on_flip = 1;
    } else {
      // w id + (1-w) conj = (2w-1) [ w/(2w-1) id - (w-1)/(2w-1) conj ]
      entry.gamma_factor = 2.0 * entry.w - 1.0;
      entry.flip_probability = (entry.w - 1.0) / (2.0 * entry.w - 1.0);
      entry.sign_on_flip = -1;
    }
    plan.total_gamma *= entry.gamma_factor;
    plan.entries.push_back(entry);
  }
  return plan;
}

std::pair<PauliWord, int> sample_word(const SamplingPlan& plan,
                                      std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  PauliWord word(plan.num_qubits);
  int sign = 1;
  for (const PlanEntry& entry : plan.entries) {
    if (uniform(rng) < entry.flip_probability) {
      word = multiply(word, entry.word).second;
      sign *= entry.sign_on_flip;
    }
  }
  return {word, sign};
}

Channel expected_map(const SamplingPlan& plan) {
  if (plan.entries.size() > 16)
    throw SizeLimitError("expected_map enumerates 2^|S| patterns; |S| > 16");
  const int n = plan.num_qubits;
  if (n > kMaxTransferQubits)
    throw SizeLimitError("expected_map transfer limited to " +
                         std::to_string(kMaxTransferQubits) + " qubits");
  const Eigen::Index dim = Eigen::Index{1} << (2 * n);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
  const std::size_t patterns = std::size_t{1} << plan.entries.size();
  for (std::size_t mask = 0; mask < patterns; ++mask) {
    double coeff = plan.total_gamma;
    PauliWord word(n);
    for (std::size_t k = 0; k < plan.entries.size(); ++k) {
      const PlanEntry& entry = plan.entries[k];
      if (mask & (std::size_t{1} << k)) {
        coeff *= entry.flip_probability * entry.sign_on_flip;
        word = multiply(word, entry.word).second;
      } else {
        coeff *= 1.0 - entry.flip_probability;
      }
    }
    // Conjugation by a Pauli word has the diagonal transfer (-1)^<w,b>.
    for (Eigen::Index b = 0; b < dim; ++b) {
      const PauliWord wb = PauliWord::from_index(n, static_cast<std::uint64_t>(b));
      diag[b] += symplectic_product(word, wb) ? -coeff : coeff;
    }
  }
  return Channel::from_transfer(Eigen::MatrixXd(diag.asDiagonal()));
}

MitigationResult mitigation_estimate(const Channel& channel,
                                     const PLParams& params, double beta,
                                     const Eigen::MatrixXcd& observable,
                                     const Eigen::MatrixXcd& state,
                                     std::int64_t shots, std::uint64_t seed,
                                     int workers) {
  if (shots < 1) throw InvalidArgument("need at least one shot");
  const int n = channel.num_qubits();
  if (params.num_qubits() != n)
    throw InvalidArgument("PL parameters do not match the channel size");
  const Eigen::Index d = Eigen::Index{1} << n;
  if (observable.rows() != d || observable.cols() != d ||
      state.rows() != d || state.cols() != d)
    throw InvalidArgument("observable/state dimension mismatch");
  check_hermitian(observable, "observable");
  check_hermitian(state, "state");
  if (std::abs(state.trace().real() - 1.0) > 1e-10)
    throw InvalidArgument("state must have unit trace");

  const SamplingPlan plan = build_plan(params, beta);
  const Eigen::MatrixXcd sigma = channel.apply(state);

  const std::int64_t blocks = (shots + kBlockShots - 1) / kBlockShots;
  std::vector<double> block_sum(static_cast<std::size_t>(blocks), 0.0);
  std::vector<double> block_sumsq(static_cast<std::size_t>(blocks), 0.0);

  auto run_block = [&](std::int64_t block) {
    const std::int64_t begin = block * kBlockShots;
    const std::int64_t end = std::min(shots, begin + kBlockShots);
    std::mt19937_64 rng(splitmix64(
        seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(block + 1))));
    double sum = 0.0, sumsq = 0.0;
    for (std::int64_t s = begin; s < end; ++s) {
      const auto [word, sign] = sample_word(plan, rng);
      const Eigen::MatrixXcd p = pauli_matrix(word);
      const double value = sign * plan.total_gamma *
                           (observable * p * sigma * p).trace().real();
      sum += value;
      sumsq += value * value;
    }
    block_sum[static_cast<std::size_t>(block)] = sum;
    block_sumsq[static_cast<std::size_t>(block)] = sumsq;
  };

  if (workers <= 0)
    workers = static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, 256);
  if (workers == 1 || blocks == 1) {
    for (std::int64_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::atomic<std::int64_t> next{0};
    auto worker = [&]() {
      for (;;) {
        const std::int64_t b = next.fetch_add(1);
        if (b >= blocks) return;
        run_block(b);
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Compensated sequential reduction in block order, independent of the
  // worker count.
  double sum = 0.0, carry = 0.0;
  for (double v : block_sum) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double sumsq = 0.0;
  carry = 0.0;
  for (double v : block_sumsq) {
    const double y = v - carry;
    const double t = sumsq + y;
    carry = (t - sumsq) - y;
    sumsq = t;
  }

  MitigationResult result;
  result.shots = shots;
  result.total_gamma = plan.total_gamma;
  result.estimate = sum / static_cast<double>(shots);
  if (shots > 1) {
    const double var =
        std::max(0.0, (sumsq - sum * sum / static_cast<double>(shots)) /
                          static_cast<double>(shots - 1));
    result.standard_error = std::sqrt(var / static_cast<double>(shots));
  }
  return result;
}

}  // namespace plq
