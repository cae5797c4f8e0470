#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace wh {

/// Element of Z/pZ stored as its canonical representative 0..p-1.
class ModP {
 public:
  ModP(std::int64_t value, std::int64_t modulus);

  std::int64_t value() const noexcept { return value_; }
  std::int64_t modulus() const noexcept { return modulus_; }

  ModP operator+(const ModP& o) const;
  ModP operator-(const ModP& o) const;
  ModP operator*(const ModP& o) const;
  ModP operator-() const;
  bool operator==(const ModP&) const = default;

 private:
  std::int64_t value_;
  std::int64_t modulus_;
};

bool is_prime(std::int64_t n) noexcept;

/// Factory for Z/pZ elements. p must be an odd prime below 2^31.
class ZpRing {
 public:
  explicit ZpRing(std::int64_t p);
  std::int64_t modulus() const noexcept { return p_; }
  ModP operator()(std::int64_t v) const { return ModP(v, p_); }

 private:
  std::int64_t p_;
};

/// Heisenberg element (c, a, b) over R in {double, int64, ModP}.
template <class R>
struct WHElement {
  R c;
  R a;
  R b;
  bool operator==(const WHElement&) const = default;
};

/// Over the reals: (c+c'+(ab'-ba')/2, a+a', b+b').
WHElement<double> wh_compose(const WHElement<double>& g1, const WHElement<double>& g2);
/// Over Z and Z_p the polarized law (c+c'+ab', a+a', b+b') keeps coordinates in the ring.
WHElement<std::int64_t> wh_compose(const WHElement<std::int64_t>& g1, const WHElement<std::int64_t>& g2);
/// Throws std::invalid_argument if the moduli differ.
WHElement<ModP> wh_compose(const WHElement<ModP>& g1, const WHElement<ModP>& g2);

WHElement<double> wh_inverse(const WHElement<double>& g);
/// Polarized inverse (ab - c, -a, -b).
WHElement<std::int64_t> wh_inverse(const WHElement<std::int64_t>& g);
WHElement<ModP> wh_inverse(const WHElement<ModP>& g);

/// Square matrix with ones on the diagonal and zeros below it.
class UnitUpperMatrix {
 public:
  explicit UnitUpperMatrix(std::size_t order);
  /// Row-major entries; throws unless the shape is unit upper triangular.
  UnitUpperMatrix(std::size_t order, std::vector<double> entries);

  std::size_t order() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }
  /// Sets a strictly upper entry (i < j), zero-based.
  void set(std::size_t i, std::size_t j, double v);
  const std::vector<double>& entries() const noexcept { return e_; }

  UnitUpperMatrix operator*(const UnitUpperMatrix& o) const;
  double max_abs_diff(const UnitUpperMatrix& o) const;

 private:
  std::size_t n_;
  std::vector<double> e_;
};

/// [[1, a, c + ab/2], [0, 1, b], [0, 0, 1]]
UnitUpperMatrix wh_to_matrix(const WHElement<double>& g);
/// [[1, a, c], [0, 1, b], [0, 0, 1]], the presentation matching the polarized law.
UnitUpperMatrix wh_to_matrix_polarized(const WHElement<double>& g);

/// PH_n element: (a, b, c) with a, b in R^n.
struct PolarizedElement {
  std::vector<double> a;
  std::vector<double> b;
  double c = 0.0;
};

PolarizedElement phn_identity(std::size_t n);
/// (a+a', b+b', c+c'+a.b'). Throws on dimension mismatch.
PolarizedElement phn_compose(const PolarizedElement& g1, const PolarizedElement& g2);
PolarizedElement phn_inverse(const PolarizedElement& g);
/// (n+2)x(n+2) block matrix [[1, a^T, c], [0, I_n, b], [0, 0, 1]].
UnitUpperMatrix phn_to_matrix(const PolarizedElement& g);
/// g1 g2 g1^-1 g2^-1.
PolarizedElement phn_commutator(const PolarizedElement& g1, const PolarizedElement& g2);

/// H(V) element with V = R^{2n}, v = (a_1..a_n, b_1..b_n).
struct SymplecticWHElement {
  double c = 0.0;
  std::vector<double> v;
};

/// sum_i (a_i b'_i - b_i a'_i).
double symplectic_form(const std::vector<double>& v1, const std::vector<double>& v2);
/// (c+c'+omega(v,v')/2, v+v'). Throws unless both dimensions are equal and even.
SymplecticWHElement symplectic_compose(const SymplecticWHElement& g1, const SymplecticWHElement& g2);
/// [[1, a^T, c + a.b/2], [0, I_n, b], [0, 0, 1]].
UnitUpperMatrix symplectic_to_matrix(const SymplecticWHElement& g);

/// Generalized element (z, y, x) of SL_>(4, R), y in R^2, x in R^3.
struct GWH3Element {
  double z = 0.0;
  std::array<double, 2> y{};
  std::array<double, 3> x{};
};

/// The z-cocycle with the correction term (x2+x2')(x1'x3 - x1x3')/2 that the
/// matrix product requires on top of the printed expression.
double gwh3_omega(const GWH3Element& g1, const GWH3Element& g2);
/// The z-cocycle exactly as printed. Kept for comparison; it disagrees with
/// the matrix product whenever x2+x2' != 0 and x1'x3 != x1x3'.
double gwh3_printed_omega(const GWH3Element& g1, const GWH3Element& g2);
/// (x1x2'-x2x1', x2x3'-x3x2').
std::array<double, 2> gwh3_s(const GWH3Element& g1, const GWH3Element& g2);
/// (z+z'+Omega/2, y+y'+S/2, x+x').
GWH3Element gwh3_compose(const GWH3Element& g1, const GWH3Element& g2);
GWH3Element gwh3_inverse(const GWH3Element& g);
UnitUpperMatrix gwh3_to_matrix(const GWH3Element& g);

/// 1 + sum_i x_i E_{i,i+1}, order x.size()+1.
UnitUpperMatrix subdiag_embed(const std::vector<double>& x);

/// Elementary matrix unit E_ij (1-based indices, i < j) of sl_>(order).
struct BasisTerm {
  int coef = 0;  // 0 means the zero matrix
  int i = 0;
  int j = 0;
  bool operator==(const BasisTerm&) const = default;
};

/// Strictly upper units ordered by distance from the diagonal, then by row:
/// E12, E23, E34, E13, E24, E14 for order 4.
std::vector<BasisTerm> strict_upper_basis(int order);
/// E_ij E_kl = delta_jk E_il.
BasisTerm basis_product(const BasisTerm& x, const BasisTerm& y);
/// [E_ij, E_kl] = delta_jk E_il - delta_li E_kj.
BasisTerm basis_commutator(const BasisTerm& x, const BasisTerm& y);
/// table[r][c] = X_r Y_c or [X_r, Y_c] over strict_upper_basis(order).
std::vector<std::vector<BasisTerm>> product_table(int order);
std::vector<std::vector<BasisTerm>> commutator_table(int order);
/// Dense order x order representation, row-major.
std::vector<double> basis_matrix(const BasisTerm& t, int order);

struct InclusionResult {
  std::string name;
  bool passed;
};

/// Checks [V3,V3] in V2+V1, [V3,V2] in V1, [V2+V1, V2+V1] = 0 and that V1 is
/// central, with V_k spanned by units at distance 4-k from the diagonal.
/// Only order 4 is supported.
std::vector<InclusionResult> nilpotency_filtration_check(int order);

struct ZpGroupReport {
  std::int64_t p = 0;
  std::size_t distinct_elements = 0;
  bool closed = false;
  bool order_is_p_cubed = false;
  bool exponent_p = false;
  bool identity_and_inverse = false;
};

/// Exhaustive checks on H_1(Z_p): closure, p^3 distinct elements, g^p = e on
/// every element, identity and inverse laws.
ZpGroupReport zp_group_check(std::int64_t p);

}  // namespace wh
