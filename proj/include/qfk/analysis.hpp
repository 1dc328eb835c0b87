#pragma once

#include "qfk/construct.hpp"
#include "qfk/filter.hpp"
#include "qfk/lattice.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace qfk {

/// Relative tolerance for float-mode moment sums.
inline constexpr double kMomentTol = 1e-9;

/// Largest m with sum_k a(k) e^{-2 pi i xi.k} k^mu = 0 for all |mu| < m and all nonzero cosets xi.
/// Throws NotLowpass unless a^(0) = 1.
template <class S>
int sum_rules(const BasicFilter2D<S>& a, const DilationSpec& M);
/// Dyadic version: the single nonzero coset is 1/2.
template <class S>
int sum_rules(const BasicFilter1D<S>& a);

/// Largest n with sum_k b(k) k^mu = 0 for all |mu| < n.  The zero filter reports -1.
template <class S>
int vanishing_moments(const BasicFilter2D<S>& b);
template <class S>
int vanishing_moments(const BasicFilter1D<S>& b);

struct LpmResult {
  int order = 0;
  std::array<Complex, 2> center{};  // second entry unused in one dimension
};

/// Largest n with sum_k a(k) k^mu = c^mu for |mu| < n.  Without c, the center is the first moment.
template <class S>
LpmResult linear_phase_moments(const BasicFilter2D<S>& a, std::optional<std::array<S, 2>> c = std::nullopt);
template <class S>
LpmResult linear_phase_moments(const BasicFilter1D<S>& a, std::optional<S> c = std::nullopt);

/// Det: det(E).  EntryProduct: E11 E22 + E12 E21, the product of the nonzero entries of a signed
/// permutation matrix; it agrees with det on diagonal E and is -det on anti-diagonal E.
enum class Character { Trivial, Det, E11, E22, EntryProduct };
const char* character_name(Character c);

/// Finite matrix group, a center, and a character: f(E(k - c) + c) = chi(E) f(k).
struct SymmetrySpec {
  std::vector<Mat2> group;
  QPoint2 center{Rational(0), Rational(0)};
  Character character = Character::Trivial;
  std::string group_name;

  static SymmetrySpec d4(const QPoint2& c, Character chi = Character::Trivial);
  /// {+-I, +-diag(1,-1)}
  static SymmetrySpec d4_plus(const QPoint2& c, Character chi = Character::Trivial);
  /// {I, diag(1,-1)}: reflection of the second coordinate.
  static SymmetrySpec reflect_second(const QPoint2& c, Character chi = Character::Trivial);
  /// {I, diag(-1,1)}: reflection of the first coordinate.
  static SymmetrySpec reflect_first(const QPoint2& c, Character chi = Character::Trivial);
  /// {I, -I}: point reflection.
  static SymmetrySpec point(const QPoint2& c, Character chi = Character::Trivial);

  /// Throws InvalidArgument unless the group is closed with identity and chi is multiplicative.
  void validate() const;
  int chi(const Mat2& e) const;
};

struct SymmetryVerdict {
  bool pass = false;
  double deviation = 0;
};

/// Sup-norm deviation from the symmetry; exact comparison in rational mode.
template <class S>
SymmetryVerdict symmetry_check(const BasicFilter2D<S>& f, const SymmetrySpec& spec, double tol = 1e-12);

/// max_k |f(2c - k) - sign f(k)| for a center c = twice_center / 2.
template <class S>
double symmetry_deviation_1d(const BasicFilter1D<S>& f, int twice_center, int sign);

/// max coefficient of sum |b^|^2 - 1 and sum conj(b^(w)) b^(w + 2 pi xi) over nonzero cosets.
template <class S>
double tight_residual(const BasicFilterBank<S>& bank);
/// Same for a one-dimensional dyadic bank.
template <class S>
double tight_residual_1d(const std::vector<BasicFilter1D<S>>& bank);

/// The Laurent polynomial 1 - sum_xi |a^(w + 2 pi xi)|^2; zero iff a is orthonormal.
template <class S>
BasicFilter2D<S> orthonormality_defect(const BasicFilter2D<S>& a, const DilationSpec& M);
template <class S>
double orthonormal_residual(const BasicFilter2D<S>& a, const DilationSpec& M);
template <class S>
double orthonormal_residual(const BasicFilter1D<S>& a);

struct RelationResult {
  int min_vmo = 0;
  int sr = 0;
  int lpm = 0;
  bool pass = false;
};

/// min vmo(b_l) == min(sr(a, M), lpm(a) / 2).
template <class S>
RelationResult vm_sr_lpm_relation(const BasicFilterBank<S>& bank);

struct NamedSymmetry {
  int filter = 0;
  std::string group;
  std::string center;
  std::string character;
  bool pass = false;
  double deviation = 0;
};

struct PropertyReport {
  int sr = 0;
  LpmResult lpm;
  std::vector<int> vmo;  // per high-pass filter
  double tight_residual = 0;
  double orthonormal_residual = 0;
  std::vector<double> canonical_deviation;  // per recorded pair
  std::vector<NamedSymmetry> symmetries;    // detected per filter
  double tolerance = 1e-10;
  bool tight_pass = false;
  bool canonical_pass = false;
};

/// Runs every bank-level check.  Symmetry detection searches D4 and its subgroups about the
/// half-integer centers near each filter's support center, with every character.
template <class S>
PropertyReport analyze_bank(const BasicFilterBank<S>& bank, double tol = 1e-10);

}  // namespace qfk
