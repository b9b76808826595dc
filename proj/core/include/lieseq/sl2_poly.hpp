#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "lieseq/cochain.hpp"
#include "lieseq/koszul.hpp"

namespace lieseq::sl2 {

// Exponents (a, b, c) of y_0^a y_-^b y_+^c.
using Exp3 = std::array<std::uint16_t, 3>;

inline constexpr int kZero = 0;
inline constexpr int kMinus = 1;
inline constexpr int kPlus = 2;

// Integral weight of y_0^a y_-^b y_+^c.
inline int weight_of(const Exp3& e) { return 2 * (static_cast<int>(e[2]) - static_cast<int>(e[1])); }

// Element of F_p[y_0, y_-, y_+], p an odd prime.
class ScalarPoly {
 public:
  explicit ScalarPoly(std::uint32_t p);
  static ScalarPoly monomial(std::uint32_t p, Exp3 e, std::int64_t coef = 1);
  static ScalarPoly constant(std::uint32_t p, std::int64_t c) { return monomial(p, {0, 0, 0}, c); }
  static ScalarPoly y(std::uint32_t p, int which);
  // κ = y_0^2 + y_- y_+
  static ScalarPoly kappa(std::uint32_t p);

  std::uint32_t prime() const { return p_; }
  const std::map<Exp3, std::uint32_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::uint32_t coefficient(const Exp3& e) const;
  void add(const Exp3& e, std::int64_t coef);

  ScalarPoly& operator+=(const ScalarPoly& o);
  ScalarPoly& operator-=(const ScalarPoly& o);
  ScalarPoly scaled(std::int64_t c) const;
  ScalarPoly pow(unsigned k) const;
  // ∂/∂y_which
  ScalarPoly derivative(int which) const;
  // Exact division by y_+; throws DomainError if some term lacks y_+.
  ScalarPoly divided_by_y_plus() const;
  // -1 for zero, otherwise the common degree; throws if inhomogeneous.
  int degree() const;
  // Integral weights present, sorted.
  std::vector<int> weights() const;

  friend ScalarPoly operator+(ScalarPoly a, const ScalarPoly& b) { return a += b; }
  friend ScalarPoly operator-(ScalarPoly a, const ScalarPoly& b) { return a -= b; }
  friend ScalarPoly operator*(const ScalarPoly& a, const ScalarPoly& b);
  friend bool operator==(const ScalarPoly&, const ScalarPoly&) = default;

  std::string to_string() const;

 private:
  std::uint32_t p_;
  std::map<Exp3, std::uint32_t> terms_;
};

// Which identification of P^3 with forms is meant:
//   One: (f_0, f_-, f_+) ↔ f_0 x_0 + f_- x_- + f_+ x_+
//   Two: (g_0, g_-, g_+) ↔ g_0 x_- x_+ + g_- x_+ x_0 + g_+ x_0 x_-
enum class FormDegree { One, Two };

struct VectorPoly {
  FormDegree form;
  std::array<ScalarPoly, 3> c;  // indexed by kZero, kMinus, kPlus

  VectorPoly(FormDegree f, std::uint32_t p) : form(f), c{ScalarPoly(p), ScalarPoly(p), ScalarPoly(p)} {}
  VectorPoly(FormDegree f, ScalarPoly f0, ScalarPoly fm, ScalarPoly fp)
      : form(f), c{std::move(f0), std::move(fm), std::move(fp)} {}
  bool is_zero() const { return c[0].is_zero() && c[1].is_zero() && c[2].is_zero(); }
  friend bool operator==(const VectorPoly&, const VectorPoly&) = default;
};

// β_0 = 2y_+∂_+ − 2y_-∂_-,  β_- = −y_+∂_0 + 2y_0∂_-,  β_+ = y_-∂_0 − 2y_0∂_+
ScalarPoly beta0(const ScalarPoly& f);
ScalarPoly beta_minus(const ScalarPoly& f);
ScalarPoly beta_plus(const ScalarPoly& f);
ScalarPoly beta(int which, const ScalarPoly& f);

VectorPoly grad(const ScalarPoly& f);
// Needs a 1-form; returns a 2-form.
VectorPoly curl(const VectorPoly& v);
// Needs a 2-form.
ScalarPoly div(const VectorPoly& v);

// Translation to cochains of the builtin sl2 over F_p (basis h, e, f read as
// x_0, x_-, x_+). `t` is 0 or 3 for scalars.
Cochain to_cochain(const KoszulComplex& c, const ScalarPoly& f, int t);
Cochain to_cochain(const KoszulComplex& c, const VectorPoly& v);
// Inverse maps; throw DomainError if x has the wrong exterior degree.
ScalarPoly scalar_from_cochain(const KoszulComplex& c, const Cochain& x, int t);
VectorPoly vector_from_cochain(const KoszulComplex& c, const Cochain& x);

// The koszul monomial for y_0^a y_-^b y_+^c times the exterior mask.
Monomial koszul_monomial(std::uint32_t exterior, const Exp3& e);

// Builtin sl2 over F_p.
KoszulComplex sl2_complex(std::uint32_t p);

}  // namespace lieseq::sl2
