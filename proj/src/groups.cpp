#include "wh/groups.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <tuple>

namespace wh {

bool is_prime(std::int64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

ModP::ModP(std::int64_t value, std::int64_t modulus) : modulus_(modulus) {
  if (modulus < 2) throw std::invalid_argument("ModP: modulus must be at least 2");
  value_ = ((value % modulus) + modulus) % modulus;
}

namespace {
void same_modulus(const ModP& x, const ModP& y) {
  if (x.modulus() != y.modulus()) throw std::invalid_argument("ModP: ring mismatch between operands");
}
}  // namespace

ModP ModP::operator+(const ModP& o) const {
  same_modulus(*this, o);
  return ModP(value_ + o.value_, modulus_);
}

ModP ModP::operator-(const ModP& o) const {
  same_modulus(*this, o);
  return ModP(value_ - o.value_, modulus_);
}

ModP ModP::operator*(const ModP& o) const {
  same_modulus(*this, o);
  return ModP(value_ * o.value_, modulus_);
}

ModP ModP::operator-() const { return ModP(-value_, modulus_); }

ZpRing::ZpRing(std::int64_t p) : p_(p) {
  if (p <= 2 || p >= (std::int64_t{1} << 31) || !is_prime(p))
    throw std::invalid_argument("ZpRing: p must be an odd prime below 2^31");
}

WHElement<double> wh_compose(const WHElement<double>& g1, const WHElement<double>& g2) {
  return {g1.c + g2.c + 0.5 * (g1.a * g2.b - g1.b * g2.a), g1.a + g2.a, g1.b + g2.b};
}

WHElement<std::int64_t> wh_compose(const WHElement<std::int64_t>& g1, const WHElement<std::int64_t>& g2) {
  return {g1.c + g2.c + g1.a * g2.b, g1.a + g2.a, g1.b + g2.b};
}

WHElement<ModP> wh_compose(const WHElement<ModP>& g1, const WHElement<ModP>& g2) {
  return {g1.c + g2.c + g1.a * g2.b, g1.a + g2.a, g1.b + g2.b};
}

WHElement<double> wh_inverse(const WHElement<double>& g) { return {-g.c, -g.a, -g.b}; }

WHElement<std::int64_t> wh_inverse(const WHElement<std::int64_t>& g) { return {g.a * g.b - g.c, -g.a, -g.b}; }

WHElement<ModP> wh_inverse(const WHElement<ModP>& g) { return {g.a * g.b - g.c, -g.a, -g.b}; }

UnitUpperMatrix::UnitUpperMatrix(std::size_t order) : n_(order), e_(order * order, 0.0) {
  if (order < 1) throw std::invalid_argument("UnitUpperMatrix: order must be positive");
  for (std::size_t i = 0; i < n_; ++i) e_[i * n_ + i] = 1.0;
}

UnitUpperMatrix::UnitUpperMatrix(std::size_t order, std::vector<double> entries) : n_(order), e_(std::move(entries)) {
  if (order < 1 || e_.size() != order * order) throw std::invalid_argument("UnitUpperMatrix: shape mismatch");
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (e_[i * n_ + j] != (i == j ? 1.0 : 0.0))
        throw std::invalid_argument("UnitUpperMatrix: entries are not unit upper triangular");
}

void UnitUpperMatrix::set(std::size_t i, std::size_t j, double v) {
  if (i >= j || j >= n_) throw std::out_of_range("UnitUpperMatrix: only strictly upper entries are settable");
  e_[i * n_ + j] = v;
}

UnitUpperMatrix UnitUpperMatrix::operator*(const UnitUpperMatrix& o) const {
  if (o.n_ != n_) throw std::invalid_argument("UnitUpperMatrix: order mismatch");
  UnitUpperMatrix out(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) {
      double s = 0.0;
      for (std::size_t k = i; k <= j; ++k) s += e_[i * n_ + k] * o.e_[k * n_ + j];
      out.e_[i * n_ + j] = s;
    }
  return out;
}

double UnitUpperMatrix::max_abs_diff(const UnitUpperMatrix& o) const {
  if (o.n_ != n_) throw std::invalid_argument("UnitUpperMatrix: order mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < e_.size(); ++k) m = std::max(m, std::abs(e_[k] - o.e_[k]));
  return m;
}

UnitUpperMatrix wh_to_matrix(const WHElement<double>& g) {
  UnitUpperMatrix m(3);
  m.set(0, 1, g.a);
  m.set(0, 2, g.c + 0.5 * g.a * g.b);
  m.set(1, 2, g.b);
  return m;
}

UnitUpperMatrix wh_to_matrix_polarized(const WHElement<double>& g) {
  UnitUpperMatrix m(3);
  m.set(0, 1, g.a);
  m.set(0, 2, g.c);
  m.set(1, 2, g.b);
  return m;
}

namespace {

void require_dims(const PolarizedElement& g) {
  if (g.a.size() != g.b.size() || g.a.empty())
    throw std::invalid_argument("PolarizedElement: a and b must share a positive dimension");
}

double dot(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

}  // namespace

PolarizedElement phn_identity(std::size_t n) { return {std::vector<double>(n), std::vector<double>(n), 0.0}; }

PolarizedElement phn_compose(const PolarizedElement& g1, const PolarizedElement& g2) {
  require_dims(g1);
  require_dims(g2);
  if (g1.a.size() != g2.a.size()) throw std::invalid_argument("phn_compose: dimension mismatch");
  PolarizedElement out = g1;
  for (std::size_t i = 0; i < g1.a.size(); ++i) {
    out.a[i] += g2.a[i];
    out.b[i] += g2.b[i];
  }
  out.c = g1.c + g2.c + dot(g1.a, g2.b);
  return out;
}

PolarizedElement phn_inverse(const PolarizedElement& g) {
  require_dims(g);
  PolarizedElement out = g;
  for (auto& v : out.a) v = -v;
  for (auto& v : out.b) v = -v;
  out.c = dot(g.a, g.b) - g.c;
  return out;
}

UnitUpperMatrix phn_to_matrix(const PolarizedElement& g) {
  require_dims(g);
  const std::size_t n = g.a.size();
  UnitUpperMatrix m(n + 2);
  for (std::size_t i = 0; i < n; ++i) {
    m.set(0, i + 1, g.a[i]);
    m.set(i + 1, n + 1, g.b[i]);
  }
  m.set(0, n + 1, g.c);
  return m;
}

PolarizedElement phn_commutator(const PolarizedElement& g1, const PolarizedElement& g2) {
  return phn_compose(phn_compose(g1, g2), phn_compose(phn_inverse(g1), phn_inverse(g2)));
}

double symplectic_form(const std::vector<double>& v1, const std::vector<double>& v2) {
  if (v1.size() != v2.size() || v1.size() % 2 != 0 || v1.empty())
    throw std::invalid_argument("symplectic_form: vectors must share a positive even dimension");
  const std::size_t n = v1.size() / 2;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += v1[i] * v2[n + i] - v1[n + i] * v2[i];
  return s;
}

SymplecticWHElement symplectic_compose(const SymplecticWHElement& g1, const SymplecticWHElement& g2) {
  const double w = symplectic_form(g1.v, g2.v);
  SymplecticWHElement out{g1.c + g2.c + 0.5 * w, g1.v};
  for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] += g2.v[i];
  return out;
}

UnitUpperMatrix symplectic_to_matrix(const SymplecticWHElement& g) {
  if (g.v.empty() || g.v.size() % 2 != 0) throw std::invalid_argument("symplectic_to_matrix: dimension must be even");
  const std::size_t n = g.v.size() / 2;
  UnitUpperMatrix m(n + 2);
  double ab = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    m.set(0, i + 1, g.v[i]);
    m.set(i + 1, n + 1, g.v[n + i]);
    ab += g.v[i] * g.v[n + i];
  }
  m.set(0, n + 1, g.c + 0.5 * ab);
  return m;
}

double gwh3_printed_omega(const GWH3Element& g1, const GWH3Element& g2) {
  const auto& x = g1.x;
  const auto& y = g1.y;
  const auto& xp = g2.x;
  const auto& yp = g2.y;
  return x[0] * yp[1] - y[1] * xp[0] + y[0] * xp[2] - x[2] * yp[0] -
         (x[0] * xp[1] * x[2] + xp[0] * x[1] * x[2] + xp[0] * x[1] * xp[2] + xp[0] * xp[1] * x[2]);
}

double gwh3_omega(const GWH3Element& g1, const GWH3Element& g2) {
  const auto& x = g1.x;
  const auto& xp = g2.x;
  return gwh3_printed_omega(g1, g2) + 0.5 * (x[1] + xp[1]) * (xp[0] * x[2] - x[0] * xp[2]);
}

std::array<double, 2> gwh3_s(const GWH3Element& g1, const GWH3Element& g2) {
  const auto& x = g1.x;
  const auto& xp = g2.x;
  return {x[0] * xp[1] - x[1] * xp[0], x[1] * xp[2] - x[2] * xp[1]};
}

GWH3Element gwh3_compose(const GWH3Element& g1, const GWH3Element& g2) {
  const auto s = gwh3_s(g1, g2);
  GWH3Element out;
  out.z = g1.z + g2.z + 0.5 * gwh3_omega(g1, g2);
  for (int k = 0; k < 2; ++k) out.y[k] = g1.y[k] + g2.y[k] + 0.5 * s[k];
  for (int k = 0; k < 3; ++k) out.x[k] = g1.x[k] + g2.x[k];
  return out;
}

GWH3Element gwh3_inverse(const GWH3Element& g) {
  return {-g.z, {-g.y[0], -g.y[1]}, {-g.x[0], -g.x[1], -g.x[2]}};
}

UnitUpperMatrix gwh3_to_matrix(const GWH3Element& g) {
  const auto& x = g.x;
  const auto& y = g.y;
  UnitUpperMatrix m(4);
  m.set(0, 1, x[0]);
  m.set(1, 2, x[1]);
  m.set(2, 3, x[2]);
  m.set(0, 2, y[0] + 0.5 * x[0] * x[1]);
  m.set(1, 3, y[1] + 0.5 * x[1] * x[2]);
  m.set(0, 3, g.z + 0.5 * (x[0] * y[1] + x[2] * y[0] + x[0] * x[1] * x[2]));
  return m;
}

UnitUpperMatrix subdiag_embed(const std::vector<double>& x) {
  if (x.empty()) throw std::invalid_argument("subdiag_embed: dimension must be at least 1");
  UnitUpperMatrix m(x.size() + 1);
  for (std::size_t i = 0; i < x.size(); ++i) m.set(i, i + 1, x[i]);
  return m;
}

std::vector<BasisTerm> strict_upper_basis(int order) {
  if (order < 2) throw std::invalid_argument("strict_upper_basis: order must be at least 2");
  std::vector<BasisTerm> out;
  for (int d = 1; d < order; ++d)
    for (int i = 1; i + d <= order; ++i) out.push_back({1, i, i + d});
  return out;
}

BasisTerm basis_product(const BasisTerm& x, const BasisTerm& y) {
  if (x.coef == 0 || y.coef == 0 || x.j != y.i) return {};
  return {x.coef * y.coef, x.i, y.j};
}

BasisTerm basis_commutator(const BasisTerm& x, const BasisTerm& y) {
  const BasisTerm xy = basis_product(x, y);
  const BasisTerm yx = basis_product(y, x);
  if (xy.coef != 0 && yx.coef != 0) {
    if (xy.i == yx.i && xy.j == yx.j) {
      const int c = xy.coef - yx.coef;
      return c == 0 ? BasisTerm{} : BasisTerm{c, xy.i, xy.j};
    }
    throw std::logic_error("basis_commutator: result is not a single matrix unit");
  }
  if (xy.coef != 0) return xy;
  if (yx.coef != 0) return {-yx.coef, yx.i, yx.j};
  return {};
}

namespace {
template <class Op>
std::vector<std::vector<BasisTerm>> table(int order, Op op) {
  const auto basis = strict_upper_basis(order);
  std::vector<std::vector<BasisTerm>> out(basis.size(), std::vector<BasisTerm>(basis.size()));
  for (std::size_t r = 0; r < basis.size(); ++r)
    for (std::size_t c = 0; c < basis.size(); ++c) out[r][c] = op(basis[r], basis[c]);
  return out;
}
}  // namespace

std::vector<std::vector<BasisTerm>> product_table(int order) { return table(order, basis_product); }

std::vector<std::vector<BasisTerm>> commutator_table(int order) { return table(order, basis_commutator); }

std::vector<double> basis_matrix(const BasisTerm& t, int order) {
  std::vector<double> m(static_cast<std::size_t>(order * order), 0.0);
  if (t.coef != 0) m[static_cast<std::size_t>((t.i - 1) * order + (t.j - 1))] = t.coef;
  return m;
}

std::vector<InclusionResult> nilpotency_filtration_check(int order) {
  if (order != 4) throw std::invalid_argument("nilpotency_filtration_check: only order 4 is supported");
  // Level k holds the units E_ij with j - i = 4 - k.
  auto level = [](const BasisTerm& t) { return 4 - (t.j - t.i); };
  const auto basis = strict_upper_basis(order);
  auto in_levels = [&](const BasisTerm& t, std::set<int> allowed) { return t.coef == 0 || allowed.count(level(t)) > 0; };

  bool v3v3 = true, v3v2 = true, abelian = true, central = true;
  for (const auto& x : basis)
    for (const auto& y : basis) {
      const BasisTerm c = basis_commutator(x, y);
      const int lx = level(x), ly = level(y);
      if (lx == 3 && ly == 3) v3v3 = v3v3 && in_levels(c, {2, 1});
      if (lx == 3 && ly == 2) v3v2 = v3v2 && in_levels(c, {1});
      if (lx <= 2 && ly <= 2) abelian = abelian && c.coef == 0;
      if (lx == 1) central = central && c.coef == 0;
    }
  return {{"[V3,V3] in V2+V1", v3v3},
          {"[V3,V2] in V1", v3v2},
          {"[V2+V1,V2+V1] = 0", abelian},
          {"V1 is central", central}};
}

ZpGroupReport zp_group_check(std::int64_t p) {
  const ZpRing ring(p);
  ZpGroupReport rep;
  rep.p = p;
  std::vector<WHElement<ModP>> elements;
  elements.reserve(static_cast<std::size_t>(p * p * p));
  for (std::int64_t c = 0; c < p; ++c)
    for (std::int64_t a = 0; a < p; ++a)
      for (std::int64_t b = 0; b < p; ++b) elements.push_back({ring(c), ring(a), ring(b)});

  auto key = [p](const WHElement<ModP>& g) { return (g.c.value() * p + g.a.value()) * p + g.b.value(); };
  std::set<std::int64_t> distinct;
  for (const auto& g : elements) distinct.insert(key(g));
  rep.distinct_elements = distinct.size();
  rep.order_is_p_cubed = static_cast<std::int64_t>(rep.distinct_elements) == p * p * p;

  rep.closed = true;
  for (const auto& g : elements)
    for (const auto& h : elements) {
      const auto gh = wh_compose(g, h);
      for (const ModP& v : {gh.c, gh.a, gh.b})
        if (v.modulus() != p || v.value() < 0 || v.value() >= p) rep.closed = false;
    }

  const WHElement<ModP> e{ring(0), ring(0), ring(0)};
  rep.exponent_p = true;
  rep.identity_and_inverse = true;
  for (const auto& g : elements) {
    WHElement<ModP> acc = e;
    for (std::int64_t k = 0; k < p; ++k) acc = wh_compose(acc, g);
    if (!(acc == e)) rep.exponent_p = false;
    if (!(wh_compose(g, e) == g) || !(wh_compose(e, g) == g)) rep.identity_and_inverse = false;
    if (!(wh_compose(g, wh_inverse(g)) == e) || !(wh_compose(wh_inverse(g), g) == e)) rep.identity_and_inverse = false;
  }
  return rep;
}

}  // namespace wh
