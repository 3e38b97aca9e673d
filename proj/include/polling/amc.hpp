#pragma once

#include <Eigen/SparseCore>
#include <vector>

#include "polling/model.hpp"

namespace polling::amc {

// Closed-form (i,j)-entry, 1-based, of the inverse of the L x L tridiagonal
// Toeplitz matrix with diagonal -s1, upper diagonal lambda1 and lower
// diagonal 1/b1.
cplx toeplitz_inverse_entry(int i, int j, int L, double lambda1, cplx s1,
                            double b1);

struct SmCorrections {
  bool first_diag = true;  // +1/b1 at (1,1)
  bool last_diag = true;   // +lambda1 at (L,L)
};

// Inverse entry of T + (1/b1) e1 e1^T + lambda1 eL eL^T via Sherman-Morrison.
cplx sm_corrected_entry(int i, int j, int L, double lambda1, cplx s1, double b1,
                        SmCorrections corr = {});

enum class ExitCause { Timer, Empty, KDeparture, Overflow };

// Finite truncation of the visit-period absorbing chain for the served
// queue.  The served queue holds at most cap_served jobs; queue m != served
// holds at most bounds[m]; arrivals beyond any bound go to an explicit
// overflow absorbing cause.
struct TruncatedChain {
  int M = 0;
  int served = 0;  // 0-based
  Discipline discipline;
  int cap_served = 0;            // max n_served
  int n_served_min = 0;          // 0 for autonomous, 1 otherwise
  std::vector<int> bounds;       // per-queue caps (entry `served` == cap_served)
  int k = 0;                     // k-limited only
  long nstates = 0;
  Eigen::SparseMatrix<double> Q;              // transient sub-generator
  std::vector<double> timer_rate, empty_rate;  // per-state absorption rates
  std::vector<double> kdep_rate, overflow_rate;

  long state_index(const std::vector<int>& n, int dep) const;
  std::vector<int> decode(long idx, int* dep) const;
};

TruncatedChain build_chain(const PollingModel& model, int i,
                           const std::vector<int>& bounds);

struct ExitAtom {
  std::vector<int> state;  // queue contents at the absorption transition
  ExitCause cause;
  double prob;
};

struct ExitDistribution {
  std::vector<ExitAtom> atoms;
  double overflow_mass = 0.0;
  double total = 0.0;
};

ExitDistribution absorption_exit_distribution(const TruncatedChain& chain,
                                              const std::vector<int>& initial);

struct OracleValue {
  cplx pgf = 0.0;
  double overflow_mass = 0.0;
};

// E[z^{N^e} | N^b = initial] on the truncated chain, with the discipline's
// exit-state mapping applied.
OracleValue oracle_visit_pgf(const TruncatedChain& chain,
                             const std::vector<int>& initial,
                             const std::vector<cplx>& z);

}  // namespace polling::amc
