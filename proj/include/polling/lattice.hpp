#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace polling::lattice {

using bigint = boost::multiprecision::cpp_int;

// Path-count coefficients c^n(i,j) of the k-limited kernel.  Entries are
// exact integers; rows are 1-based in both i and j.
struct CTable {
  int n = 0;
  int i_max = 0;
  int width = 0;
  std::vector<bigint> values;  // i_max * width, row-major

  const bigint& at(int i, int j) const { return values[(i - 1) * width + (j - 1)]; }
};

// c^n(i,j) via the recurrence c^n(i,j) = sum_{l=1}^{j+1} c^{n-1}(i,l) with the
// n=1 base case c^1(i,j) = 1 iff i == 1 or j >= i-1.
CTable c_recurrence(int n, int i_max, int width);

// Binomial closed forms; returns 0 outside the support (nonzero region is
// j >= i - n).  Requires n >= 1 (n = 1 falls back to the base case).
bigint c_closed_form(int n, int i, int j);

// Exact path enumeration in the level graph: edges go from state s at one
// level to states 1..s+1 of the next (i.e. dest >= src - 1); counts paths
// from state i at level 0 to state j at level n.
bigint c_bruteforce(int n, int i, int j, int graph_bound);

// Floating-point closed form for use inside kernel series.
double c_value(int n, int i, int j);

}  // namespace polling::lattice
