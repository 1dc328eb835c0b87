#pragma once

#include "qfk/filter.hpp"
#include "qfk/lattice.hpp"

#include <string>
#include <vector>

namespace qfk {

enum class SmoothnessMethod { TransitionSpectrum, SubdivisionIteration };
const char* method_name(SmoothnessMethod m);

enum class NormKind { L2, LInf };

/// sm2 = d/2 - d log_{|det M|} rho_m.  For the transition route rho_m^2 = |det M| lambda with
/// lambda the largest eigenvalue modulus left after removing the polynomial ones.
struct SmoothnessResult {
  double sm2 = 0;
  double rho_m = 0;
  SmoothnessMethod method = SmoothnessMethod::TransitionSpectrum;
  int m_used = 0;        // sum-rule order of the filter
  int matrix_size = 0;   // |K| for the transition route
  int sectors = 0;       // symmetry blocks the spectrum was split into
  int iterations = 0;    // subdivision steps actually used
  int grid = 0;          // subdivision grid side
  std::string note;      // fallback reason, if any
};

/// Transition-operator spectrum of u = a * a^star on the invariant set K with
/// T(j, k) = |det M| u(Mj - k).  Eigenvalues of modulus |det M|^{-t/2}, t < 2 sr(a, M), are removed
/// with multiplicity t + 1.  When a removal finds no match within 1e-6 the subdivision estimate
/// is returned instead and the reason is recorded in note.
SmoothnessResult transition_sm(const Filter2D& a, const DilationSpec& M);
/// Dyadic one-dimensional version; removes 2^{-t} for t < 2 sr(a).
SmoothnessResult transition_sm(const Filter1D& a);

struct SubdivisionEstimate {
  double rho = 0;
  int iterations = 0;        // last step whose norms entered the estimate
  int grid = 0;              // periodization length per axis
  bool precision_limited = false;
};

/// Geometric-mean ratio over the last four steps of max_{|mu| = m} ||nabla^mu S^n delta||_p, where
/// S v = |det M| sum_k v(k) a(. - Mk).  Norms come from the symbol on a grid long enough to avoid
/// aliasing.  Iteration stops early once the differences fall to 1e-12 of ||S^n delta||_2, where
/// cancellation would dominate, or when the grid would exceed its memory cap.
SubdivisionEstimate subdivision_estimate(const Filter2D& a, const DilationSpec& M, int m, NormKind p, int n_iters = 16);
SubdivisionEstimate subdivision_estimate(const Filter1D& a, int m, NormKind p, int n_iters = 24);

double subdivision_rho(const Filter2D& a, const DilationSpec& M, int m, NormKind p, int n_iters = 16);
double subdivision_rho(const Filter1D& a, int m, NormKind p, int n_iters = 24);

/// sm_p = d/p - d log_{|det M|} rho_m(a, M)_p with m = sr(a, M).
SmoothnessResult subdivision_sm(const Filter2D& a, const DilationSpec& M, NormKind p = NormKind::L2, int n_iters = 16);
SmoothnessResult subdivision_sm(const Filter1D& a, NormKind p = NormKind::L2, int n_iters = 24);

struct Table1Row {
  int n = 0;
  SmoothnessResult quincunx;  // a^{2D}_{2n,2n} with M_sqrt2
  SmoothnessResult dyadic;    // a^I_{2n} with 2
  bool cross_checked = false;
  SmoothnessResult quincunx_subdivision;
  SmoothnessResult dyadic_subdivision;
};

/// Rows n = 1..n_max (n_max <= 8); with cross_check both estimators run.
std::vector<Table1Row> table1(int n_max, bool cross_check = false);

struct Thm42Report {
  double sm_u = 0, sm_v = 0;             // dyadic exponents
  double sm_u_embedded = 0;              // u on Z x {0} with M_sqrt2
  double sm_conv = 0;                    // u * v with 2
  double sm_tensor = 0;                  // u (x) v with M_sqrt2
  int sr_u = 0, sr_v = 0, sr_tensor = 0;
  double tolerance = 0.05;
  bool embedded_equal = false;           // vacuous when sm_u < 0
  bool conv_superadditive = false;
  bool tensor_superadditive = false;
  bool sr_additive = false;
  bool pass() const { return embedded_equal && conv_superadditive && tensor_superadditive && sr_additive; }
};

/// Embedding, convolution and tensor relations between one- and two-dimensional exponents.
/// Requires u^(0) = v^(0) = 1.
Thm42Report thm42_checks(const Filter1D& u, const Filter1D& v, double tol = 0.05);

}  // namespace qfk
