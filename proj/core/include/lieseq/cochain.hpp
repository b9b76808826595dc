#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "lieseq/invariants.hpp"
#include "lieseq/koszul.hpp"

namespace lieseq {

// Finite linear combination of monomials of E_0 over a field (or Z), with
// coefficients kept normalised in the ring.
class Cochain {
 public:
  explicit Cochain(Ring ring) : ring_(ring) {}
  static Cochain monomial(Ring ring, const Monomial& m, const mpq_class& coef = 1);
  static Cochain one(Ring ring) { return monomial(ring, Monomial{}); }

  const Ring& ring() const { return ring_; }
  const std::map<Monomial, mpq_class>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  mpq_class coefficient(const Monomial& m) const;

  void add(const Monomial& m, const mpq_class& coef);
  Cochain& operator+=(const Cochain& other);
  Cochain& operator-=(const Cochain& other);
  Cochain scaled(const mpq_class& c) const;

  // (s, t) of every term; nullopt for zero; throws DomainError if terms
  // have different bidegrees.
  std::optional<std::pair<int, int>> bidegree() const;

  friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
  friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
  // Graded-commutative product: x's anticommute, y's are central.
  friend Cochain operator*(const Cochain& a, const Cochain& b);
  friend bool operator==(const Cochain& a, const Cochain& b) { return a.ring_ == b.ring_ && a.terms_ == b.terms_; }

 private:
  Ring ring_;
  std::map<Monomial, mpq_class> terms_;
};

// Product of two monomials with its sign; nullopt when an x repeats.
std::optional<std::pair<Monomial, int>> multiply_monomials(const Monomial& a, const Monomial& b);

Cochain apply_d0(const KoszulComplex& c, const Cochain& x);
Cochain apply_d1(const KoszulComplex& c, const Cochain& x);

SparseVector to_vector(const KoszulComplex& c, const Cochain& x, int s, int t);
Cochain from_vector(const KoszulComplex& c, const SparseVector& v, int s, int t);
// Promotes a polynomial in the y's to E_0^{s,0}.
Cochain from_polynomial(const KoszulComplex& c, const InvariantPolynomial& p);

std::string to_string(const KoszulComplex& c, const Cochain& x);

}  // namespace lieseq
