#pragma once

#include <complex>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace polling {

using cplx = std::complex<double>;

// Service disciplines. Timer rates must be positive where present.
struct Autonomous {
  double alpha;
};
struct TimeLimited {
  double alpha;
};
struct KLimited {
  int k;
};
struct Exhaustive {};

using Discipline = std::variant<Autonomous, TimeLimited, KLimited, Exhaustive>;

// Switch-over time distribution, used only through its Laplace-Stieltjes
// transform evaluated at Re(s) >= 0.
struct ZeroSwitchover {};
struct DeterministicSwitchover {
  double c;
};
struct ExponentialSwitchover {
  double mean;
};
// Extension point: any user-supplied LST evaluator with LST(0) = 1.
struct CustomSwitchover {
  std::function<cplx(cplx)> lst;
  double mean = 0.0;
};

using SwitchoverDist = std::variant<ZeroSwitchover, DeterministicSwitchover,
                                    ExponentialSwitchover, CustomSwitchover>;

double switchover_mean(const SwitchoverDist& d);
cplx switchover_lst(const SwitchoverDist& d, cplx s);

enum class Routing { CyclicPoisson, Tandem };

struct QueueSpec {
  double lambda;        // exogenous Poisson arrival rate
  double mean_service;  // b_i, exponential service
  Discipline discipline;
};

struct PollingModel {
  std::vector<QueueSpec> queues;
  // switchovers[i] is incurred after the visit to queue i (Q_i -> Q_{i+1 mod M})
  std::vector<SwitchoverDist> switchovers;
  Routing routing = Routing::CyclicPoisson;

  int M() const { return static_cast<int>(queues.size()); }
  // Effective exogenous arrival rate seen by queue m (tandem: only queue 0).
  double arrival_rate(int m) const {
    return (routing == Routing::Tandem && m > 0) ? 0.0 : queues[m].lambda;
  }
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

ValidationReport validate_model(const PollingModel& model);

// Joint PGF of Poisson arrival counts to all queues during one switch-over:
// C(z) = LST(sum_m lambda_m (1 - z_m)).  Throws std::domain_error if any
// |z_m| > 1 + 1e-12.
cplx switchover_arrival_pgf(const SwitchoverDist& dist,
                            const std::vector<double>& lambdas,
                            const std::vector<cplx>& z);

}  // namespace polling
