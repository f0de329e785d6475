#pragma once

#include <string>
#include <vector>

#include "kgheun/errors.hpp"
#include "kgheun/specfun.hpp"

namespace kgheun::catalog {

/// A value in {-1, -1/2, 0, 1/2, 1}, stored doubled.
class HalfInt {
 public:
  constexpr HalfInt() = default;

  /// Throws ErrorKind::config outside [-2, 2].
  static HalfInt from_twice(int twice);

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return twice_ / 2.0; }
  std::string str() const;

  friend constexpr bool operator==(HalfInt, HalfInt) = default;

 private:
  constexpr explicit HalfInt(int twice) : twice_(twice) {}
  int twice_ = 0;
};

/// The exponent pair (m1, m2) of z'(x) = z^m1 (z-1)^m2 / sigma.
struct FamilyId {
  HalfInt m1;
  HalfInt m2;

  /// Throws ErrorKind::config for pairs outside the fifteen admissible ones.
  static FamilyId from_twice(int m1_x2, int m2_x2);
  /// Canonical representative for Table-style row numbers 1..9.
  static FamilyId from_row(int row);

  bool canonical() const;
  /// 1..9 for canonical families, 0 otherwise.
  int row() const;
  std::string label() const;

  friend constexpr bool operator==(const FamilyId&, const FamilyId&) = default;
};

/// True for the fifteen pairs with -1 <= m1, m2 <= 1 and 0 <= m1 + m2 <= 2.
bool admissible(int m1_x2, int m2_x2);

/// All admissible families in a fixed order (m1 descending, then m2 descending).
std::vector<FamilyId> all_families();
std::vector<FamilyId> canonical_families();

struct PhysicalConstants {
  double hbar = 1.0;
  double c = 1.0;

  void validate() const;
  double hbar_c() const { return hbar * c; }
};

/// One term coef * z^z_pow * (z-1)^zm1_pow of a potential V(z).
struct PotentialTerm {
  Complex coef;
  int z_pow;
  int zm1_pow;
};

struct PotentialSpec {
  FamilyId family;
  Complex V0;
  Complex V1;
  Complex V2;
  Complex x0;
  Complex sigma{1.0};
  /// Branch of the Lambert map for the (1, -1) family and its mirror.
  specfun::WBranch w_branch = specfun::WBranch::principal;

  /// Builds a spec, zeroing V2 for families whose potential has two terms.
  static PotentialSpec make(FamilyId family, Complex V0, Complex V1, Complex V2 = 0.0,
                            Complex x0 = 0.0, Complex sigma = 1.0);

  void validate() const;
  /// True when x0 and sigma are real, so real x maps onto the real branch.
  bool real_coordinates() const;
  /// The terms of V(z) for this family (mirrored formula for non-canonical ones).
  std::vector<PotentialTerm> terms() const;
};

/// Whether the family's potential carries a V2 term.
bool has_v2(FamilyId family);

/// z -> 1 - z record. sigma_factor relates the canonical map's length scale
/// to the mirrored one: z_F(x) = 1 - z_C(x; x0, sigma_factor * sigma).
struct MirrorTransform {
  bool identity = true;
  bool swap_z = false;
  Complex sigma_factor{1.0};
};

struct MirrorResult {
  FamilyId canonical;
  MirrorTransform transform;
};

MirrorResult mirror(FamilyId family);

/// Interval of s = (x - x0)/sigma on which the real coordinate map is monotone
/// and the inverse closed form applies.
struct RealDomain {
  double s_min;
  double s_max;
};
RealDomain real_domain(FamilyId family);

Complex map_x_to_z(const PotentialSpec& spec, Complex x);
Complex map_z_to_x(const PotentialSpec& spec, Complex z);

/// z^m1 (z-1)^m2 / sigma, using pow_zm1's branch for (z-1)^m2.
Complex rho(const PotentialSpec& spec, Complex z);

/// The family's V(z) evaluated directly from its formula.
Complex potential_of_z(const PotentialSpec& spec, Complex z);

/// V(z(x)); non-canonical families go through the canonical formula.
Complex potential_value(const PotentialSpec& spec, Complex x);

/// Human-readable descriptions for listings.
std::string potential_formula(FamilyId family);
std::string transformation_formula(FamilyId family);
std::string subpotential_annotation(FamilyId family);

}  // namespace kgheun::catalog
