#pragma once

// Seeded ground-truth generators and the Monte Carlo harness used by
// tests and the acceptance suite.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "patecon/series.hpp"
#include "patecon/unit_root.hpp"

namespace patecon::sim {

enum class SimKind {
  RandomWalk,
  AR,
  ARMA,
  CointegratedPair,
  MeanBreak,
  IntegratedARMA,
};

SimKind kind_from_string(const std::string& s);
std::string to_string(SimKind k);

// Flat parameter conventions:
//   RandomWalk:       params = [drift] (optional, default 0)
//   AR:               params = phi_1..phi_p
//   ARMA / IntegratedARMA: params = [p, q, phi_1..phi_p, theta_1..theta_q]
//   CointegratedPair: params = [a, B, err_phi]
//   MeanBreak:        params = [mu_0, t_1, mu_1, t_2, mu_2, ...]
//                     (t_i = 0-based index where segment i begins)
struct SimSpec {
  SimKind kind = SimKind::RandomWalk;
  std::vector<double> params;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double noise_sd = 1.0;

  std::string to_json() const;
  static SimSpec from_json(const std::string& text);
};

struct Generated {
  std::vector<series::AnnualSeries> series;  // one, or (X, Y) for pairs
  std::vector<std::size_t> break_positions;  // MeanBreak only
  std::vector<double> segment_means;         // MeanBreak only
};

// Deterministic for a fixed spec: Gaussian noise is drawn with Box-Muller
// over mt19937_64, so identical specs produce bit-identical series within
// a build. AR/ARMA paths discard 100 burn-in draws.
Generated generate(const SimSpec& spec);

// Standard normal draws: Box-Muller over mt19937_64 uniforms, avoiding
// std::normal_distribution whose stream is implementation-defined.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}
  double operator()();

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

struct McOutcome {
  std::size_t replications = 0;
  long rejections_at_1 = 0;
  long rejections_at_5 = 0;
  long rejections_at_10 = 0;
  double rate_at_1 = 0.0;
  double rate_at_5 = 0.0;
  double rate_at_10 = 0.0;
  double se_at_1 = 0.0;  // binomial standard errors
  double se_at_5 = 0.0;
  double se_at_10 = 0.0;
};

// The named test receives the generated output for one replication and
// reports rejection at the three conventional levels.
struct TestDecision {
  bool reject_at_1 = false;
  bool reject_at_5 = false;
  bool reject_at_10 = false;
};
using TestInvocation = std::function<TestDecision(const Generated&)>;

// Runs `replications` seeded repetitions (seed + index) of the named test.
// Generator or test errors are rethrown with the replication index.
McOutcome monte_carlo(const SimSpec& spec, std::size_t replications,
                      const TestInvocation& test);

}  // namespace patecon::sim
