#include "polling/kernels.hpp"

#include <cmath>
#include <numbers>

#include "polling/lattice.hpp"

namespace polling::kernels {

namespace {

cplx powi(cplx z, int n) {
  if (n < 0) return 1.0 / powi(z, -n);
  cplx r = 1.0;
  while (n > 0) {
    if (n & 1) r *= z;
    z *= z;
    n >>= 1;
  }
  return r;
}

double get_alpha(const Discipline& d) {
  if (const auto* a = std::get_if<Autonomous>(&d)) return a->alpha;
  if (const auto* t = std::get_if<TimeLimited>(&d)) return t->alpha;
  return 0.0;
}

// Horner evaluation of sum_n f[n] w^n.
cplx horner(const std::vector<cplx>& f, cplx w) {
  cplx h = 0.0;
  for (int n = static_cast<int>(f.size()) - 1; n >= 0; --n) h = h * w + f[n];
  return h;
}

}  // namespace

void solve_quadratic(cplx a, cplx s, cplx c, cplx* r_in, cplx* r_out) {
  cplx disc = s * s - 4.0 * a * c;
  if (std::abs(disc) < 1e-14)
    throw DegenerateRoots("quadratic discriminant vanishes");
  cplx d = std::sqrt(disc);
  if ((std::conj(s) * d).real() < 0.0) d = -d;  // |s + d| maximal
  cplx rb = (s + d) / (2.0 * a);
  cplx rs = c / (a * rb);
  if (std::abs(std::abs(rb) - std::abs(rs)) < 1e-10)
    throw DegenerateRoots("root moduli not separated");
  if (std::abs(rs) < std::abs(rb)) {
    *r_in = rs;
    *r_out = rb;
  } else {
    *r_in = rb;
    *r_out = rs;
  }
}

QuadParams quad_roots(const PollingModel& model, int i,
                      const std::vector<cplx>& z_minus_i, RootVariant variant,
                      double alpha_override) {
  const int M = model.M();
  if (static_cast<int>(z_minus_i.size()) != M - 1)
    throw std::invalid_argument("quad_roots: z_minus_i must have M-1 entries");
  const double lambda = model.arrival_rate(i);
  const double b = model.queues[i].mean_service;
  if (!(lambda > 0.0))
    throw std::invalid_argument("quad_roots: served queue needs lambda > 0");

  cplx cross = 0.0;  // sum_{m != i} lambda_m (1 - z_m)
  int p = 0;
  for (int m = 0; m < M; ++m) {
    if (m == i) continue;
    cross += model.arrival_rate(m) * (1.0 - z_minus_i[p]);
    ++p;
  }

  double alpha = 0.0;
  if (variant == RootVariant::Timer)
    alpha = (alpha_override >= 0.0) ? alpha_override
                                    : get_alpha(model.queues[i].discipline);

  QuadParams qp;
  qp.a = lambda;
  qp.s = lambda + 1.0 / b + alpha + cross;
  qp.c0 = 1.0 / b;
  solve_quadratic(qp.a, qp.s, qp.c0, &qp.r_in, &qp.r_out);
  qp.x = (lambda + cross + 1.0 / b) / lambda;
  qp.x0 = qp.x - 1.0;
  return qp;
}

QuadParams tandem_roots(const PollingModel& model, int i, cplx z1, cplx z_next) {
  const double lambda1 = model.queues[0].lambda;
  const double b = model.queues[i].mean_service;
  const double alpha = get_alpha(model.queues[i].discipline);
  QuadParams qp;
  if (i == 0) {
    qp.a = lambda1;
    qp.s = lambda1 + 1.0 / b + alpha;
    qp.c0 = z_next / b;
    solve_quadratic(qp.a, qp.s, qp.c0, &qp.r_in, &qp.r_out);
  } else {
    qp.linear = true;
    qp.s = lambda1 * (1.0 - z1) + 1.0 / b + alpha;
    qp.c0 = z_next / b;
    if (std::abs(qp.s) < 1e-14)
      throw DegenerateRoots("tandem linear coefficient vanishes");
    qp.r_in = qp.c0 / qp.s;
  }
  return qp;
}

NodeKernel::NodeKernel(const PollingModel& model, int i,
                       const std::vector<cplx>& z, KPath path) {
  tandem_ = (model.routing == Routing::Tandem);
  const QueueSpec& q = model.queues[i];
  lambda_ = model.arrival_rate(i);
  b_ = q.mean_service;
  alpha_ = get_alpha(q.discipline);

  if (std::holds_alternative<Autonomous>(q.discipline)) {
    kind_ = Kind::Autonomous;
  } else if (std::holds_alternative<TimeLimited>(q.discipline)) {
    kind_ = Kind::TimeLimited;
  } else if (const auto* kl = std::get_if<KLimited>(&q.discipline)) {
    kind_ = Kind::KLimited;
    k_ = kl->k;
  } else {
    kind_ = Kind::Exhaustive;
  }

  if (tandem_) {
    if (kind_ != Kind::Autonomous && kind_ != Kind::TimeLimited)
      throw std::invalid_argument("tandem kernels exist only for autonomous and time-limited");
    z_next_ = (i + 1 < model.M()) ? z[i + 1] : cplx(1.0);
    qp_ = tandem_roots(model, i, z[0], z_next_);
    return;
  }

  std::vector<cplx> z_minus;
  z_minus.reserve(model.M() - 1);
  for (int m = 0; m < model.M(); ++m)
    if (m != i) z_minus.push_back(z[m]);

  switch (kind_) {
    case Kind::Autonomous:
    case Kind::TimeLimited:
      qp_ = quad_roots(model, i, z_minus, RootVariant::Timer);
      break;
    case Kind::Exhaustive:
      qp_ = quad_roots(model, i, z_minus, RootVariant::NoTimer);
      break;
    case Kind::KLimited: {
      if (path == KPath::ClosedForm && k_ > 2)
        throw std::invalid_argument("closed-form k-limited kernel exists only for k <= 2");
      if (path == KPath::GeneralS && k_ < 2)
        throw std::invalid_argument("general-S k-limited kernel requires k >= 2");
      use_series_ = (path == KPath::GeneralS) || (path == KPath::Auto && k_ >= 3);
      if (use_series_) {
        qp_ = quad_roots(model, i, z_minus, RootVariant::NoTimer);
      } else {
        // only x is needed for the k <= 2 closed forms
        const double b = b_;
        cplx cross = 0.0;
        for (std::size_t p = 0; p < z_minus.size(); ++p) {
          int m = (static_cast<int>(p) < i) ? static_cast<int>(p)
                                            : static_cast<int>(p) + 1;
          cross += model.arrival_rate(m) * (1.0 - z_minus[p]);
        }
        qp_.x = (lambda_ + cross + 1.0 / b) / lambda_;
        qp_.x0 = qp_.x - 1.0;
      }
      break;
    }
  }
}

cplx NodeKernel::series_transfer(int i1, cplx zi) const {
  const cplx x = qp_.x;
  const cplx y = qp_.r_in;
  const int k = k_;
  const double lb = lambda_ * b_;
  const cplx q1 = zi / x;
  const cplx q2 = y / x;
  if (std::abs(q1) >= 1.0 || std::abs(q2) >= 1.0)
    throw SeriesDivergence("k-limited series ratio outside the unit disc");

  auto summed = [&](int n, cplx ratio, int pow_offset) {
    // sum_j c^n(i1,j) x^{i1-2k} ratio^{j-1+pow_offset}, ratio in {zi/x, y/x}
    const int j0 = std::max(1, i1 - n);
    cplx power = powi(x, i1 - 2 * k) * powi(ratio, j0 - 1 + pow_offset);
    const double tol = 1e-14 * (1.0 - std::abs(ratio));
    cplx sum = 0.0;
    double prev = 1e300;
    for (int j = j0; j < j0 + 200000; ++j) {
      cplx term = lattice::c_value(n, i1, j) * power;
      sum += term;
      double mag = std::abs(term);
      if (j > j0 && mag <= prev && mag <= tol * std::max(1.0, std::abs(sum)))
        return sum;
      prev = mag;
      power *= ratio;
    }
    throw SeriesDivergence("k-limited series did not converge");
  };

  const double lbk = std::pow(lb, k);
  cplx e = powi(y, i1);
  if (i1 <= k)  // c^{k-1}(i1,1) vanishes for i1 > k
    e -= lattice::c_value(k - 1, i1, 1) * powi(x, i1 - 2 * k) / lbk;
  e += (x / (x - zi)) * summed(k - 1, q1, 0) / lbk;
  e -= summed(k, q2, 1) / lbk;
  return e;
}

cplx NodeKernel::transfer(int i1, cplx zi) const {
  const cplx r = qp_.r_in;
  switch (kind_) {
    case Kind::Autonomous: {
      const cplx P = qp_.P(zi);
      if (std::abs(P) < 1e-12) throw PoleOnGrid("visit kernel pole on the grid");
      const cplx w = tandem_ ? z_next_ : cplx(1.0);
      if (std::abs(w - r) < 1e-12)
        throw RemovableSingularity("z_{i+1} coincides with the kernel root");
      return (alpha_ / P) *
             ((w - zi) * powi(r, i1 + 1) / (w - r) - powi(zi, i1 + 1));
    }
    case Kind::TimeLimited: {
      if (i1 == 0) return 1.0;
      const cplx P = qp_.P(zi);
      if (std::abs(P) < 1e-12) throw PoleOnGrid("visit kernel pole on the grid");
      const cplx g = alpha_ * zi / P;
      return powi(r, i1) - g * (powi(zi, i1) - powi(r, i1));
    }
    case Kind::Exhaustive:
      return powi(r, i1);
    case Kind::KLimited: {
      if (i1 == 0) return 1.0;
      if (use_series_) return series_transfer(i1, zi);
      const cplx x = qp_.x;
      const double lb = lambda_ * b_;
      if (k_ == 1) return powi(zi, i1 - 1) / (lb * (x - zi));
      // k == 2
      if (i1 == 1)
        return (1.0 / (lb * x)) * (1.0 / (lb * (x - zi) * (x - zi)) + 1.0);
      return powi(zi, i1 - 2) / (lb * lb * (x - zi) * (x - zi));
    }
  }
  return 0.0;
}

cplx NodeKernel::beta_star(const std::vector<cplx>& f) const {
  return horner(f, qp_.r_in);
}

cplx NodeKernel::gamma(const std::vector<cplx>& f, cplx zi) const {
  const cplx r = qp_.r_in;
  switch (kind_) {
    case Kind::Autonomous: {
      const cplx P = qp_.P(zi);
      if (std::abs(P) < 1e-12) throw PoleOnGrid("visit kernel pole on the grid");
      const cplx w = tandem_ ? z_next_ : cplx(1.0);
      if (std::abs(w - r) < 1e-12)
        throw RemovableSingularity("z_{i+1} coincides with the kernel root");
      return (alpha_ / P) *
             ((w - zi) * r * beta_star(f) / (w - r) - zi * horner(f, zi));
    }
    case Kind::TimeLimited: {
      const cplx P = qp_.P(zi);
      if (std::abs(P) < 1e-12) throw PoleOnGrid("visit kernel pole on the grid");
      const cplx g = alpha_ * zi / P;
      return (1.0 + g) * beta_star(f) - g * horner(f, zi);
    }
    case Kind::Exhaustive:
      return beta_star(f);
    case Kind::KLimited: {
      const cplx f0 = f.empty() ? cplx(0.0) : f[0];
      if (use_series_) {
        cplx g = f0;
        for (int i1 = 1; i1 < static_cast<int>(f.size()); ++i1)
          if (f[i1] != cplx(0.0)) g += f[i1] * series_transfer(i1, zi);
        return g;
      }
      const cplx x = qp_.x;
      const double lb = lambda_ * b_;
      if (k_ == 1) {
        const cplx a1 = 1.0 / (zi * lb * (x - zi));
        return f0 + a1 * (horner(f, zi) - f0);
      }
      // k == 2 closed form
      const cplx d = lb * (x - zi);
      const cplx a2 = 1.0 / (zi * zi * d * d);
      const cplx b2 = 1.0 / (zi * lb * x) - 1.0 / (zi * zi * lb * lb * x * (x - zi));
      const cplx f1 = (f.size() > 1) ? f[1] : cplx(0.0);
      return a2 * horner(f, zi) + (1.0 - a2) * f0 + b2 * f1 * zi;
    }
  }
  return 0.0;
}

namespace {

// f[i1] at a reduced-torus point: coefficient functions of beta along axis i.
std::vector<cplx> axis_coefficients(const CoeffTensor& beta, int i,
                                    const std::vector<cplx>& z) {
  const int S = beta.axis_len();
  std::vector<cplx> f(S, 0.0);
  std::size_t post = 1;
  for (int d = i + 1; d < beta.dims; ++d) post *= S;
  std::size_t pre = beta.c.size() / (post * S);

  // Horner over the trailing axes, then the leading ones, keeping axis i.
  for (std::size_t p = 0; p < pre; ++p) {
    // decode leading index -> monomial in z_0..z_{i-1}
    cplx lead = 1.0;
    std::size_t rem = p;
    for (int d = i - 1; d >= 0; --d) {
      int nd = static_cast<int>(rem % S);
      rem /= S;
      lead *= powi(z[d], nd);
    }
    for (int n = 0; n < S; ++n) {
      cplx tail = 0.0;
      const cplx* row = &beta.c[(p * S + n) * post];
      if (post == 1) {
        tail = row[0];
      } else {
        // evaluate trailing block at z_{i+1..}
        std::vector<cplx> acc(row, row + post);
        std::size_t len = post;
        for (int d = beta.dims - 1; d > i; --d) {
          len /= S;
          for (std::size_t bidx = 0; bidx < len; ++bidx) {
            cplx h = 0.0;
            for (int m = S - 1; m >= 0; --m) h = h * z[d] + acc[bidx * S + m];
            acc[bidx] = h;
          }
        }
        tail = acc[0];
      }
      f[n] += lead * tail;
    }
  }
  return f;
}

}  // namespace

CoeffTensor apply_visit(const CoeffTensor& beta, const PollingModel& model,
                        int i, int G, KPath path, KernelDiag* diag,
                        GridFunction* gamma_grid) {
  const int M = beta.dims;
  const int S = beta.axis_len();
  if (G < S) throw std::invalid_argument("apply_visit: grid smaller than order+1");

  // transform every axis except i to the grid
  std::vector<int> shape(M, S);
  std::vector<cplx> mixed = beta.c;
  for (int d = 0; d < M; ++d) {
    if (d == i) continue;
    mixed = axis_transform(mixed, shape, d, G, +1);
    shape[d] = G;
  }

  std::vector<std::size_t> stride(M), ostride(M);
  {
    std::size_t st = 1, ost = 1;
    for (int d = M - 1; d >= 0; --d) {
      stride[d] = st;
      st *= shape[d];
      ostride[d] = ost;
      ost *= G;
    }
  }

  std::vector<cplx> nodes(G);
  for (int g = 0; g < G; ++g) {
    double ang = 2.0 * std::numbers::pi * g / G;
    nodes[g] = cplx(std::cos(ang), std::sin(ang));
  }

  std::size_t nfull = 1;
  for (int d = 0; d < M; ++d) nfull *= G;
  std::vector<cplx> out(nfull);

  std::vector<int> idx(M, 0);
  std::vector<cplx> z(M, 1.0);
  std::vector<cplx> f(S);
  bool done = false;
  while (!done) {
    std::size_t base = 0, obase = 0;
    for (int d = 0; d < M; ++d) {
      if (d == i) continue;
      base += idx[d] * stride[d];
      obase += idx[d] * ostride[d];
      z[d] = nodes[idx[d]];
    }
    for (int n = 0; n < S; ++n) f[n] = mixed[base + n * stride[i]];

    NodeKernel nk(model, i, z, path);
    for (int g = 0; g < G; ++g)
      out[obase + g * ostride[i]] = nk.gamma(f, nodes[g]);

    // next reduced multi-index
    done = true;
    for (int d = M - 1; d >= 0; --d) {
      if (d == i) continue;
      if (++idx[d] < G) {
        done = false;
        break;
      }
      idx[d] = 0;
    }
  }

  GridFunction gf;
  gf.dims = M;
  gf.points = G;
  gf.v = std::move(out);
  cplx at_one = gf.v[0];

  CoeffTensor gamma = grid_to_tensor(gf, beta.order);
  gamma.epoch_tag = "end_q" + std::to_string(i + 1);
  if (diag) {
    diag->value_at_one = at_one;
    diag->tail_mass = std::abs(at_one - gamma.total_mass());
  }
  if (gamma_grid) *gamma_grid = std::move(gf);
  return gamma;
}

cplx kernel_value_at(const CoeffTensor& beta, const PollingModel& model, int i,
                     const std::vector<cplx>& z, KPath path) {
  for (const cplx& zm : z)
    if (std::abs(zm) > 1.0 + 1e-12)
      throw std::domain_error("kernel_value_at: point outside unit polydisc");
  std::vector<cplx> f = axis_coefficients(beta, i, z);
  NodeKernel nk(model, i, z, path);
  return nk.gamma(f, z[i]);
}

cplx conditional_visit_pgf(const PollingModel& model, int i,
                           const std::vector<int>& initial,
                           const std::vector<cplx>& z, KPath path) {
  NodeKernel nk(model, i, z, path);
  cplx lead = 1.0;
  for (int m = 0; m < model.M(); ++m)
    if (m != i) lead *= powi(z[m], initial[m]);
  return lead * nk.transfer(initial[i], z[i]);
}

}  // namespace polling::kernels
