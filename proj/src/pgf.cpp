#include "polling/pgf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace polling {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 FFT; sign=+1 uses e^{+2 pi i/N} twiddles.
void fft_pow2(std::vector<cplx>& a, int sign) {
  const int n = static_cast<int>(a.size());
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * std::numbers::pi / len;
    const cplx wl(std::cos(ang), std::sin(ang));
    for (int i = 0; i < n; i += len) {
      cplx w = 1.0;
      for (int j = 0; j < len / 2; ++j) {
        cplx u = a[i + j];
        cplx v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

void dft_naive(std::vector<cplx>& a, int sign) {
  const int n = static_cast<int>(a.size());
  std::vector<cplx> out(n, 0.0);
  for (int k = 0; k < n; ++k) {
    for (int m = 0; m < n; ++m) {
      double ang = sign * 2.0 * std::numbers::pi * k * m / n;
      out[k] += a[m] * cplx(std::cos(ang), std::sin(ang));
    }
  }
  a = std::move(out);
}

void dft(std::vector<cplx>& a, int sign) {
  if (is_pow2(static_cast<int>(a.size())))
    fft_pow2(a, sign);
  else
    dft_naive(a, sign);
}

}  // namespace

CoeffTensor::CoeffTensor(int dims_, int order_) : dims(dims_), order(order_) {
  std::size_t n = 1;
  for (int d = 0; d < dims; ++d) n *= static_cast<std::size_t>(order + 1);
  c.assign(n, cplx(0.0, 0.0));
}

std::size_t CoeffTensor::flat(const std::vector<int>& idx) const {
  std::size_t f = 0;
  for (int d = 0; d < dims; ++d) f = f * (order + 1) + idx[d];
  return f;
}

CoeffTensor CoeffTensor::point_mass(int dims, const std::vector<int>& idx,
                                    int order) {
  CoeffTensor t(dims, order);
  t.c[t.flat(idx)] = 1.0;
  return t;
}

cplx CoeffTensor::total_mass() const {
  cplx s = 0.0;
  for (const cplx& x : c) s += x;
  return s;
}

cplx TorusGrid::node(int k) const {
  double ang = 2.0 * std::numbers::pi * k / points;
  return cplx(std::cos(ang), std::sin(ang));
}

cplx evaluate_at(const CoeffTensor& t, const std::vector<cplx>& z) {
  if (static_cast<int>(z.size()) != t.dims)
    throw std::invalid_argument("evaluate_at: dimension mismatch");
  for (const cplx& zm : z)
    if (std::abs(zm) > 1.0 + 1e-12)
      throw std::domain_error("evaluate_at: point outside unit polydisc");
  // Horner over the flattened row-major layout, last axis fastest.
  const int S = t.axis_len();
  std::vector<cplx> acc(t.c.begin(), t.c.end());
  std::size_t len = t.c.size();
  for (int d = t.dims - 1; d >= 0; --d) {
    len /= S;
    for (std::size_t b = 0; b < len; ++b) {
      cplx h = 0.0;
      for (int n = S - 1; n >= 0; --n) h = h * z[d] + acc[b * S + n];
      acc[b] = h;
    }
  }
  return acc[0];
}

std::vector<cplx> axis_transform(const std::vector<cplx>& in,
                                 const std::vector<int>& shape, int axis,
                                 int len_out, int sign) {
  const int len_in = shape[axis];
  std::size_t pre = 1, post = 1;
  for (int d = 0; d < axis; ++d) pre *= shape[d];
  for (int d = axis + 1; d < static_cast<int>(shape.size()); ++d)
    post *= shape[d];

  const int n_dft = (sign > 0) ? len_out : len_in;
  if (sign > 0 && len_out < len_in)
    throw std::invalid_argument("axis_transform: forward grid smaller than order");

  std::vector<cplx> out(pre * static_cast<std::size_t>(len_out) * post);
  std::vector<cplx> line(n_dft);
  for (std::size_t p = 0; p < pre; ++p) {
    for (std::size_t q = 0; q < post; ++q) {
      for (int n = 0; n < n_dft; ++n)
        line[n] = (n < len_in) ? in[(p * len_in + n) * post + q] : cplx(0.0);
      dft(line, sign);
      for (int n = 0; n < len_out; ++n) {
        cplx v = line[n];
        if (sign < 0) v /= static_cast<double>(n_dft);
        out[(p * len_out + n) * post + q] = v;
      }
    }
  }
  return out;
}

GridFunction tensor_to_grid(const CoeffTensor& t, const TorusGrid& grid) {
  if (grid.dims != t.dims)
    throw std::invalid_argument("tensor_to_grid: dimension mismatch");
  if (grid.points < t.axis_len())
    throw std::invalid_argument("tensor_to_grid: grid smaller than order+1");
  GridFunction gf;
  gf.dims = t.dims;
  gf.points = grid.points;
  std::vector<int> shape(t.dims, t.axis_len());
  std::vector<cplx> cur = t.c;
  for (int d = 0; d < t.dims; ++d) {
    cur = axis_transform(cur, shape, d, grid.points, +1);
    shape[d] = grid.points;
  }
  gf.v = std::move(cur);
  return gf;
}

CoeffTensor grid_to_tensor(const GridFunction& gf, int n_max) {
  if (n_max + 1 > gf.points)
    throw std::invalid_argument("grid_to_tensor: order exceeds grid");
  CoeffTensor t(gf.dims, n_max);
  std::vector<int> shape(gf.dims, gf.points);
  std::vector<cplx> cur = gf.v;
  for (int d = 0; d < gf.dims; ++d) {
    cur = axis_transform(cur, shape, d, n_max + 1, -1);
    shape[d] = n_max + 1;
  }
  t.c = std::move(cur);
  return t;
}

std::vector<double> marginal(const CoeffTensor& t, int i) {
  const int S = t.axis_len();
  std::vector<double> m(S, 0.0);
  std::size_t post = 1;
  for (int d = i + 1; d < t.dims; ++d) post *= S;
  std::size_t pre = t.c.size() / (post * S);
  for (std::size_t p = 0; p < pre; ++p)
    for (int n = 0; n < S; ++n)
      for (std::size_t q = 0; q < post; ++q)
        m[n] += t.c[(p * S + n) * post + q].real();
  return m;
}

double mean(const CoeffTensor& t, int i) {
  std::vector<double> m = marginal(t, i);
  double s = 0.0;
  for (std::size_t n = 0; n < m.size(); ++n) s += static_cast<double>(n) * m[n];
  return s;
}

CoeffTensor slice_fix(const CoeffTensor& t, int i, int v, bool keep_exponent) {
  if (v < 0 || v > t.order)
    throw std::out_of_range("slice_fix: index out of range");
  const int S = t.axis_len();
  CoeffTensor out(t.dims, t.order);
  std::size_t post = 1;
  for (int d = i + 1; d < t.dims; ++d) post *= S;
  std::size_t pre = t.c.size() / (post * S);
  const int dest = keep_exponent ? v : 0;
  for (std::size_t p = 0; p < pre; ++p)
    for (std::size_t q = 0; q < post; ++q)
      out.c[(p * S + dest) * post + q] = t.c[(p * S + v) * post + q];
  return out;
}

int default_grid_size(int n_max) {
  int g = 1;
  while (g < 2 * (n_max + 1)) g <<= 1;
  return g;
}

ProjectionStats project_to_probability(CoeffTensor& t, double tol_im,
                                       double tol_neg, double hard_tol,
                                       double drift_tol) {
  ProjectionStats st;
  for (cplx& x : t.c) {
    st.max_imag = std::max(st.max_imag, std::abs(x.imag()));
    if (x.real() < 0.0) st.max_neg = std::max(st.max_neg, -x.real());
  }
  if (st.max_imag > hard_tol || st.max_neg > hard_tol)
    throw std::runtime_error("project_to_probability: coefficients too far from a probability vector");
  (void)tol_im;
  (void)tol_neg;
  double sum = 0.0;
  for (cplx& x : t.c) {
    double r = std::max(0.0, x.real());
    x = cplx(r, 0.0);
    sum += r;
  }
  st.mass_drift = std::abs(1.0 - sum);
  if (st.mass_drift > drift_tol)
    throw std::runtime_error("project_to_probability: mass drift too large");
  if (sum > 0.0 && st.mass_drift > 0.0) {
    for (cplx& x : t.c) x /= sum;
    st.renormalized = true;
  }
  return st;
}

}  // namespace polling
