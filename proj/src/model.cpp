#include "polling/model.hpp"

#include <cmath>
#include <stdexcept>

namespace polling {

double switchover_mean(const SwitchoverDist& d) {
  struct V {
    double operator()(const ZeroSwitchover&) const { return 0.0; }
    double operator()(const DeterministicSwitchover& s) const { return s.c; }
    double operator()(const ExponentialSwitchover& s) const { return s.mean; }
    double operator()(const CustomSwitchover& s) const { return s.mean; }
  };
  return std::visit(V{}, d);
}

cplx switchover_lst(const SwitchoverDist& d, cplx s) {
  struct V {
    cplx s;
    cplx operator()(const ZeroSwitchover&) const { return 1.0; }
    cplx operator()(const DeterministicSwitchover& w) const {
      return std::exp(-s * w.c);
    }
    cplx operator()(const ExponentialSwitchover& w) const {
      return 1.0 / (1.0 + w.mean * s);
    }
    cplx operator()(const CustomSwitchover& w) const { return w.lst(s); }
  };
  return std::visit(V{s}, d);
}

namespace {

bool has_timer(const Discipline& d, double* alpha) {
  if (const auto* a = std::get_if<Autonomous>(&d)) {
    *alpha = a->alpha;
    return true;
  }
  if (const auto* t = std::get_if<TimeLimited>(&d)) {
    *alpha = t->alpha;
    return true;
  }
  return false;
}

}  // namespace

ValidationReport validate_model(const PollingModel& model) {
  ValidationReport rep;
  auto fail = [&rep](const std::string& msg) {
    rep.ok = false;
    rep.violations.push_back(msg);
  };

  const int M = model.M();
  if (M < 1) fail("model must have at least one queue");
  if (static_cast<int>(model.switchovers.size()) != M)
    fail("need exactly one switch-over distribution per queue");

  for (int i = 0; i < M; ++i) {
    const QueueSpec& q = model.queues[i];
    if (!(q.mean_service > 0.0))
      fail("mean service time must be positive at queue " + std::to_string(i + 1));
    if (q.lambda < 0.0)
      fail("arrival rate must be nonnegative at queue " + std::to_string(i + 1));
    double alpha = 0.0;
    if (has_timer(q.discipline, &alpha) && !(alpha > 0.0))
      fail("timer rate must be positive at queue " + std::to_string(i + 1));
    if (const auto* kl = std::get_if<KLimited>(&q.discipline)) {
      if (kl->k < 1) fail("k-limited requires k >= 1 at queue " + std::to_string(i + 1));
    }
  }

  if (model.routing == Routing::Tandem && M >= 1) {
    if (!(model.queues[0].lambda > 0.0))
      fail("tandem routing requires lambda_1 > 0");
    for (int i = 1; i < M; ++i)
      if (model.queues[i].lambda != 0.0)
        fail("tandem routing forbids exogenous arrivals at queue " +
             std::to_string(i + 1));
    for (int i = 0; i < M; ++i)
      if (std::holds_alternative<KLimited>(model.queues[i].discipline) ||
          std::holds_alternative<Exhaustive>(model.queues[i].discipline))
        fail("tandem supports only autonomous and time-limited disciplines");
  }

  double total_switch = 0.0;
  for (const auto& s : model.switchovers) total_switch += switchover_mean(s);
  if (!model.switchovers.empty() && !(total_switch > 0.0))
    fail("at least one switch-over mean must be strictly positive");

  return rep;
}

cplx switchover_arrival_pgf(const SwitchoverDist& dist,
                            const std::vector<double>& lambdas,
                            const std::vector<cplx>& z) {
  if (lambdas.size() != z.size())
    throw std::invalid_argument("lambda/z dimension mismatch");
  cplx s = 0.0;
  for (size_t m = 0; m < z.size(); ++m) {
    if (std::abs(z[m]) > 1.0 + 1e-12)
      throw std::domain_error("switchover_arrival_pgf: point outside unit polydisc");
    s += lambdas[m] * (1.0 - z[m]);
  }
  return switchover_lst(dist, s);
}

}  // namespace polling
