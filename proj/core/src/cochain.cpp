#include "lieseq/cochain.hpp"

#include <sstream>

#include "lieseq/error.hpp"

namespace lieseq {

Cochain Cochain::monomial(Ring ring, const Monomial& m, const mpq_class& coef) {
  Cochain c(ring);
  c.add(m, coef);
  return c;
}

mpq_class Cochain::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

void Cochain::add(const Monomial& m, const mpq_class& coef) {
  auto [it, fresh] = terms_.try_emplace(m, 0);
  it->second = ring_.normalize(it->second + coef);
  if (it->second == 0) terms_.erase(it);
}

Cochain& Cochain::operator+=(const Cochain& other) {
  if (!(other.ring_ == ring_)) throw DomainError("adding cochains over different rings");
  for (const auto& [m, c] : other.terms_) add(m, c);
  return *this;
}

Cochain& Cochain::operator-=(const Cochain& other) {
  if (!(other.ring_ == ring_)) throw DomainError("subtracting cochains over different rings");
  for (const auto& [m, c] : other.terms_) add(m, -c);
  return *this;
}

Cochain Cochain::scaled(const mpq_class& c) const {
  Cochain out(ring_);
  for (const auto& [m, v] : terms_) out.add(m, v * c);
  return out;
}

std::optional<std::pair<int, int>> Cochain::bidegree() const {
  if (terms_.empty()) return std::nullopt;
  const auto& first = terms_.begin()->first;
  std::pair<int, int> d{first.s(), first.t()};
  for (const auto& [m, c] : terms_)
    if (m.s() != d.first || m.t() != d.second) throw DomainError("cochain is not bihomogeneous");
  return d;
}

std::optional<std::pair<Monomial, int>> multiply_monomials(const Monomial& a, const Monomial& b) {
  if (a.exterior & b.exterior) return std::nullopt;
  int swaps = 0;
  for (std::uint32_t bits = b.exterior; bits; bits &= bits - 1) {
    const int k = __builtin_ctz(bits);
    swaps += __builtin_popcount(a.exterior >> (k + 1));
  }
  Monomial r{a.exterior | b.exterior, a.poly};
  for (std::size_t i = 0; i < kMaxGenerators; ++i) {
    const int e = r.poly[i] + b.poly[i];
    if (e > 255) throw DomainError("exponent exceeds 255");
    r.poly[i] = static_cast<std::uint8_t>(e);
  }
  return std::pair{r, (swaps & 1) ? -1 : 1};
}

Cochain operator*(const Cochain& a, const Cochain& b) {
  if (!(a.ring_ == b.ring_)) throw DomainError("multiplying cochains over different rings");
  Cochain out(a.ring_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_)
      if (auto r = multiply_monomials(ma, mb)) out.add(r->first, ca * cb * r->second);
  return out;
}

namespace {

template <class Gen>
Cochain apply_terms(const KoszulComplex& c, const Cochain& x, Gen&& gen) {
  Cochain out(x.ring());
  std::vector<Term> terms;
  for (const auto& [m, coef] : x.terms()) {
    terms.clear();
    gen(m, terms);
    for (const auto& t : terms) out.add(t.mono, coef * static_cast<long>(t.coef));
  }
  (void)c;
  return out;
}

}  // namespace

Cochain apply_d0(const KoszulComplex& c, const Cochain& x) {
  return apply_terms(c, x, [&](const Monomial& m, std::vector<Term>& o) { c.d0_terms(m, o); });
}

Cochain apply_d1(const KoszulComplex& c, const Cochain& x) {
  return apply_terms(c, x, [&](const Monomial& m, std::vector<Term>& o) { c.d1_terms(m, o); });
}

SparseVector to_vector(const KoszulComplex& c, const Cochain& x, int s, int t) {
  SparseVector v;
  for (const auto& [m, coef] : x.terms()) {
    if (m.s() != s || m.t() != t)
      throw DomainError("cochain term " + c.describe(m) + " is not in bidegree (" + std::to_string(s) + "," +
                        std::to_string(t) + ")");
    v.push_back({static_cast<std::uint32_t>(c.index_of(m)), coef});
  }
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
  return v;
}

Cochain from_vector(const KoszulComplex& c, const SparseVector& v, int s, int t) {
  Cochain out(c.ring());
  for (const auto& e : v) out.add(c.element(s, t, e.index), e.value);
  return out;
}

Cochain from_polynomial(const KoszulComplex& c, const InvariantPolynomial& p) {
  if (p.nvars != c.n()) throw DomainError("polynomial has the wrong number of variables");
  Cochain out(c.ring());
  for (const auto& [e, coef] : p.terms) {
    Monomial m;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 255) throw DomainError("exponent exceeds 255");
      m.poly[i] = static_cast<std::uint8_t>(e[i]);
    }
    out.add(m, static_cast<long>(coef));
  }
  return out;
}

std::string to_string(const KoszulComplex& c, const Cochain& x) {
  if (x.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, coef] : x.terms()) {
    if (!first) out << " + ";
    first = false;
    if (coef != 1) out << coef.get_str() << "*";
    out << c.describe(m);
  }
  return out.str();
}

}  // namespace lieseq
