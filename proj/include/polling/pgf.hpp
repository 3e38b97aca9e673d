#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "polling/model.hpp"

namespace polling {

// Truncated joint PGF: complex coefficient tensor of shape (order+1)^dims,
// row-major with axis 0 (queue 1) slowest.
struct CoeffTensor {
  int dims = 0;
  int order = 0;  // n_max; per-axis length is order+1
  std::vector<cplx> c;
  std::string epoch_tag;

  CoeffTensor() = default;
  CoeffTensor(int dims_, int order_);

  int axis_len() const { return order + 1; }
  std::size_t size() const { return c.size(); }
  std::size_t flat(const std::vector<int>& idx) const;
  cplx& at(const std::vector<int>& idx) { return c[flat(idx)]; }
  const cplx& at(const std::vector<int>& idx) const { return c[flat(idx)]; }

  static CoeffTensor point_mass(int dims, const std::vector<int>& idx, int order);

  cplx total_mass() const;
};

// Product grid of G-th roots of unity per dimension.
struct TorusGrid {
  int dims = 0;
  int points = 0;  // G
  cplx node(int k) const;
};

// Values of a function over the full product grid, shape points^dims,
// row-major with axis 0 slowest.
struct GridFunction {
  int dims = 0;
  int points = 0;
  std::vector<cplx> v;
};

// Multivariate polynomial evaluation; throws std::domain_error outside the
// closed unit polydisc (tolerance 1e-12).
cplx evaluate_at(const CoeffTensor& t, const std::vector<cplx>& z);

GridFunction tensor_to_grid(const CoeffTensor& t, const TorusGrid& grid);
CoeffTensor grid_to_tensor(const GridFunction& gf, int n_max);

// Marginal distribution of queue i (real parts of the axis-i sums).
std::vector<double> marginal(const CoeffTensor& t, int i);
double mean(const CoeffTensor& t, int i);

// Collapse axis i to the single index v.  keep_exponent=false drops the z_i
// factor (result constant in z_i); keep_exponent=true multiplies by z_i^v.
CoeffTensor slice_fix(const CoeffTensor& t, int i, int v, bool keep_exponent);

// Default grid size: smallest power of two >= 2*(n_max+1).
int default_grid_size(int n_max);

struct ProjectionStats {
  double max_imag = 0.0;
  double max_neg = 0.0;
  double mass_drift = 0.0;  // |1 - sum| before renormalization
  bool renormalized = false;
};

// Clamp tiny negative reals to zero, drop imaginary parts, renormalize if the
// drift is small.  Throws std::runtime_error if imag/negative parts exceed
// hard_tol or drift exceeds drift_tol.
ProjectionStats project_to_probability(CoeffTensor& t, double tol_im = 1e-9,
                                       double tol_neg = 1e-9,
                                       double hard_tol = 1e-6,
                                       double drift_tol = 1e-6);

// --- internals shared with the kernel module ---------------------------------

// DFT along one axis of a row-major array with given shape.  sign=+1 maps
// coefficients to grid values (out[k] = sum_n in[n] w^{kn}, w = e^{2 pi i/G});
// sign=-1 maps grid values back to coefficients (scaled by 1/len_in).
// len_out may differ from len_in (zero padding / truncation).
std::vector<cplx> axis_transform(const std::vector<cplx>& in,
                                 const std::vector<int>& shape, int axis,
                                 int len_out, int sign);

}  // namespace polling
