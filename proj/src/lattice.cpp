#include "polling/lattice.hpp"

#include <stdexcept>

namespace polling::lattice {

namespace {

bigint base_case(int i, int j) {
  if (i < 1 || j < 1) return 0;
  if (i == 1) return 1;
  return (j >= i - 1) ? 1 : 0;
}

bigint binom(long long a, long long b) {
  if (b < 0 || b > a) return 0;
  if (b > a - b) b = a - b;
  bigint r = 1;
  for (long long t = 0; t < b; ++t) {
    r *= (a - t);
    r /= (t + 1);
  }
  return r;
}

double binom_d(long long a, long long b) {
  if (b < 0 || b > a) return 0.0;
  if (b > a - b) b = a - b;
  double r = 1.0;
  for (long long t = 0; t < b; ++t)
    r = r * static_cast<double>(a - t) / static_cast<double>(t + 1);
  return r;
}

}  // namespace

CTable c_recurrence(int n, int i_max, int width) {
  if (n < 1 || i_max < 1 || width < 1)
    throw std::invalid_argument("c_recurrence: bad arguments");
  // Each recurrence step consumes one column of lookahead.
  const int w0 = width + (n - 1);
  std::vector<bigint> cur(static_cast<std::size_t>(i_max) * w0);
  for (int i = 1; i <= i_max; ++i)
    for (int j = 1; j <= w0; ++j) cur[(i - 1) * w0 + (j - 1)] = base_case(i, j);

  int w = w0;
  for (int level = 2; level <= n; ++level) {
    const int wn = w - 1;
    std::vector<bigint> next(static_cast<std::size_t>(i_max) * wn);
    for (int i = 1; i <= i_max; ++i) {
      bigint prefix = 0;
      for (int j = 1; j <= wn; ++j) {
        // c^level(i,j) = sum_{l<=j+1} c^{level-1}(i,l)
        if (j == 1) {
          prefix = cur[(i - 1) * w] + cur[(i - 1) * w + 1];
        } else {
          prefix += cur[(i - 1) * w + j];
        }
        next[(i - 1) * wn + (j - 1)] = prefix;
      }
    }
    cur = std::move(next);
    w = wn;
  }

  CTable table;
  table.n = n;
  table.i_max = i_max;
  table.width = width;
  table.values.resize(static_cast<std::size_t>(i_max) * width);
  for (int i = 1; i <= i_max; ++i)
    for (int j = 1; j <= width; ++j)
      table.values[(i - 1) * width + (j - 1)] = cur[(i - 1) * w + (j - 1)];
  return table;
}

bigint c_closed_form(int n, int i, int j) {
  if (n < 1) throw std::invalid_argument("c_closed_form: n must be >= 1");
  if (i < 1 || j < 1) return 0;
  if (n == 1) return base_case(i, j);
  if (i == 1) return binom(2LL * n + j - 2, n - 1) - binom(2LL * n + j - 2, n + j);
  if (i < n) return binom(2LL * n + j - i - 1, n - 1) - binom(2LL * n + j - i - 1, n + j);
  if (i == n) return binom(static_cast<long long>(n) + j - 1, n - 1);
  const int ip = i - n;
  if (j < ip) return 0;
  return binom(static_cast<long long>(n) + j - ip - 1, n - 1);
}

bigint c_bruteforce(int n, int i, int j, int graph_bound) {
  if (i > graph_bound || j > graph_bound)
    throw std::invalid_argument("c_bruteforce: graph_bound too small");
  std::vector<bigint> level(graph_bound + 1, 0);
  level[i] = 1;
  for (int step = 0; step < n; ++step) {
    std::vector<bigint> next(graph_bound + 1, 0);
    for (int src = 1; src <= graph_bound; ++src) {
      if (level[src] == 0) continue;
      for (int dst = std::max(1, src - 1); dst <= graph_bound; ++dst)
        next[dst] += level[src];
    }
    level = std::move(next);
  }
  return level[j];
}

double c_value(int n, int i, int j) {
  if (i < 1 || j < 1) return 0.0;
  if (n == 1) return (i == 1 || j >= i - 1) ? 1.0 : 0.0;
  if (i == 1) return binom_d(2LL * n + j - 2, n - 1) - binom_d(2LL * n + j - 2, n + j);
  if (i < n) return binom_d(2LL * n + j - i - 1, n - 1) - binom_d(2LL * n + j - i - 1, n + j);
  if (i == n) return binom_d(static_cast<long long>(n) + j - 1, n - 1);
  const int ip = i - n;
  if (j < ip) return 0.0;
  return binom_d(static_cast<long long>(n) + j - ip - 1, n - 1);
}

}  // namespace polling::lattice
