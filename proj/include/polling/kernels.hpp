#pragma once

#include <stdexcept>
#include <vector>

#include "polling/model.hpp"
#include "polling/pgf.hpp"

namespace polling::kernels {

struct DegenerateRoots : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PoleOnGrid : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SeriesDivergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RemovableSingularity : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Kernel parameters at a fixed point of the reduced torus.
// The visit-axis polynomial is P(z) = a z^2 - s z + c0 (a = 0 for the linear
// tandem case, where r_out is meaningless).
struct QuadParams {
  cplx a = 0.0;
  cplx s = 0.0;
  cplx c0 = 0.0;
  cplx r_in = 0.0;   // root with the smaller modulus
  cplx r_out = 0.0;  // root with the larger modulus
  bool linear = false;
  cplx x = 0.0;   // k-limited scalar (lambda_i > 0 only)
  cplx x0 = 0.0;  // x - 1

  cplx P(cplx z) const { return linear ? (-s * z + c0) : (a * z * z - s * z + c0); }
};

enum class RootVariant { Timer, NoTimer };

// Roots of lambda_i r^2 - s_i r + 1/b_i at the reduced-torus point z_minus_i
// (queue order, coordinate i skipped).  Timer includes alpha_i in s_i; NoTimer
// uses s*_i.  Branch selection is by modulus comparison with a guard band.
QuadParams quad_roots(const PollingModel& model, int i,
                      const std::vector<cplx>& z_minus_i, RootVariant variant,
                      double alpha_override = -1.0);

// Tandem variant: quadratic for i = 0, linear for i > 0; z_next is z_{i+1}
// (1 for the last queue).
QuadParams tandem_roots(const PollingModel& model, int i, cplx z1, cplx z_next);

// Low-level quadratic root solver for a r^2 - s r + c = 0.
void solve_quadratic(cplx a, cplx s, cplx c, cplx* r_in, cplx* r_out);

enum class KPath { Auto, ClosedForm, GeneralS };

// Per reduced-torus-node kernel evaluator.  z is the full evaluation point;
// z[i] is ignored during construction and supplied per call.
class NodeKernel {
 public:
  NodeKernel(const PollingModel& model, int i, const std::vector<cplx>& z,
             KPath path = KPath::Auto);

  // E[z^{N^e} | N^b] / prod_{m != i} z_m^{i_m} for initial content i1 at the
  // served queue.
  cplx transfer(int i1, cplx zi) const;

  // gamma(z_i) for a visit-begin PGF given by its z_i-coefficient functions
  // f[0..n] at this reduced-torus point.
  cplx gamma(const std::vector<cplx>& f, cplx zi) const;

  const QuadParams& params() const { return qp_; }

 private:
  cplx beta_star(const std::vector<cplx>& f) const;
  cplx series_transfer(int i1, cplx zi) const;

  enum class Kind { Autonomous, TimeLimited, KLimited, Exhaustive };
  Kind kind_;
  bool tandem_ = false;
  int k_ = 0;
  bool use_series_ = false;
  double lambda_ = 0.0, b_ = 0.0, alpha_ = 0.0;
  cplx z_next_ = 1.0;  // tandem only
  QuadParams qp_;
};

// Apply the visit kernel for queue i to a visit-begin tensor on a torus grid
// of G points per axis; returns the visit-end tensor truncated to the same
// order.  Discipline and routing come from the model.
struct KernelDiag {
  cplx value_at_one = 0.0;  // grid value at z = (1,...,1) before truncation
  double tail_mass = 0.0;   // |1 - sum of kept coefficients| proxy
};

CoeffTensor apply_visit(const CoeffTensor& beta, const PollingModel& model,
                        int i, int G, KPath path = KPath::Auto,
                        KernelDiag* diag = nullptr,
                        GridFunction* gamma_grid = nullptr);

// Kernel output evaluated at an arbitrary point of the closed unit polydisc
// (independent of any grid).
cplx kernel_value_at(const CoeffTensor& beta, const PollingModel& model, int i,
                     const std::vector<cplx>& z, KPath path = KPath::Auto);

// Closed-form conditional PGF E[z^{N^e} | N^b = initial] for a visit to
// queue i.
cplx conditional_visit_pgf(const PollingModel& model, int i,
                           const std::vector<int>& initial,
                           const std::vector<cplx>& z,
                           KPath path = KPath::Auto);

}  // namespace polling::kernels
