#include "lieseq/sl2_poly.hpp"

#include <set>
#include <sstream>

#include "lieseq/builtins.hpp"
#include "lieseq/error.hpp"

namespace lieseq::sl2 {

namespace {

constexpr std::uint32_t kMaskZero = 1u << kZero;
constexpr std::uint32_t kMaskMinus = 1u << kMinus;
constexpr std::uint32_t kMaskPlus = 1u << kPlus;
constexpr std::uint32_t kMaskAll = kMaskZero | kMaskMinus | kMaskPlus;

// Two-form slots: g_0 x_- x_+, g_- x_+ x_0 = -g_- x_0 x_+, g_+ x_0 x_-.
struct TwoSlot {
  std::uint32_t mask;
  int sign;
};
constexpr std::array<TwoSlot, 3> kTwoSlots{{{kMaskMinus | kMaskPlus, 1}, {kMaskZero | kMaskPlus, -1}, {kMaskZero | kMaskMinus, 1}}};

void same_prime(const ScalarPoly& a, const ScalarPoly& b) {
  if (a.prime() != b.prime()) throw DomainError("polynomials over different primes");
}

std::uint32_t residue(const mpq_class& v, std::uint32_t p) {
  mpz_class r = v.get_num() % mpz_class(p);
  if (r < 0) r += p;
  if (v.get_den() != 1) throw DomainError("non-normalised coefficient");
  return static_cast<std::uint32_t>(r.get_ui());
}

Exp3 exp_of(const Monomial& m) { return {m.poly[kZero], m.poly[kMinus], m.poly[kPlus]}; }

}  // namespace

ScalarPoly::ScalarPoly(std::uint32_t p) : p_(p) {
  if (p == 2 || !is_prime(p)) throw DomainError("sl2 de Rham calculus needs an odd prime, got " + std::to_string(p));
}

ScalarPoly ScalarPoly::monomial(std::uint32_t p, Exp3 e, std::int64_t coef) {
  ScalarPoly f(p);
  f.add(e, coef);
  return f;
}

ScalarPoly ScalarPoly::y(std::uint32_t p, int which) {
  Exp3 e{0, 0, 0};
  e[which] = 1;
  return monomial(p, e);
}

ScalarPoly ScalarPoly::kappa(std::uint32_t p) {
  ScalarPoly k(p);
  k.add({2, 0, 0}, 1);
  k.add({0, 1, 1}, 1);
  return k;
}

std::uint32_t ScalarPoly::coefficient(const Exp3& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0 : it->second;
}

void ScalarPoly::add(const Exp3& e, std::int64_t coef) {
  const std::uint32_t c = modp::reduce(coef, p_);
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (inserted) return;
  it->second = modp::add(it->second, c, p_);
  if (it->second == 0) terms_.erase(it);
}

ScalarPoly& ScalarPoly::operator+=(const ScalarPoly& o) {
  same_prime(*this, o);
  for (const auto& [e, c] : o.terms_) add(e, c);
  return *this;
}

ScalarPoly& ScalarPoly::operator-=(const ScalarPoly& o) {
  same_prime(*this, o);
  for (const auto& [e, c] : o.terms_) add(e, static_cast<std::int64_t>(p_ - c));
  return *this;
}

ScalarPoly ScalarPoly::scaled(std::int64_t c) const {
  ScalarPoly out(p_);
  const std::uint32_t k = modp::reduce(c, p_);
  if (k == 0) return out;
  for (const auto& [e, v] : terms_) out.terms_.emplace(e, modp::mul(v, k, p_));
  return out;
}

ScalarPoly operator*(const ScalarPoly& a, const ScalarPoly& b) {
  same_prime(a, b);
  ScalarPoly out(a.p_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exp3 e{static_cast<std::uint16_t>(ea[0] + eb[0]), static_cast<std::uint16_t>(ea[1] + eb[1]),
             static_cast<std::uint16_t>(ea[2] + eb[2])};
      out.add(e, modp::mul(ca, cb, a.p_));
    }
  return out;
}

ScalarPoly ScalarPoly::pow(unsigned k) const {
  ScalarPoly result = constant(p_, 1), base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

ScalarPoly ScalarPoly::derivative(int which) const {
  ScalarPoly out(p_);
  for (const auto& [e, c] : terms_) {
    if (e[which] == 0) continue;
    Exp3 d = e;
    --d[which];
    out.add(d, static_cast<std::int64_t>(modp::mul(c, e[which] % p_, p_)));
  }
  return out;
}

ScalarPoly ScalarPoly::divided_by_y_plus() const {
  ScalarPoly out(p_);
  for (const auto& [e, c] : terms_) {
    if (e[kPlus] == 0) throw DomainError("term " + ScalarPoly::monomial(p_, e, c).to_string() + " is not divisible by y_+");
    Exp3 d = e;
    --d[kPlus];
    out.terms_.emplace(d, c);
  }
  return out;
}

int ScalarPoly::degree() const {
  int deg = -1;
  for (const auto& [e, c] : terms_) {
    const int d = e[0] + e[1] + e[2];
    if (deg >= 0 && d != deg) throw DomainError("inhomogeneous polynomial " + to_string());
    deg = d;
  }
  return deg;
}

std::vector<int> ScalarPoly::weights() const {
  std::set<int> w;
  for (const auto& [e, c] : terms_) w.insert(weight_of(e));
  return {w.begin(), w.end()};
}

std::string ScalarPoly::to_string() const {
  if (terms_.empty()) return "0";
  static const char* names[3] = {"y0", "y-", "y+"};
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    const auto& [e, c] = *it;
    bool any = false;
    if (c != 1) {
      os << c;
      any = true;
    }
    for (int i = 0; i < 3; ++i) {
      if (!e[i]) continue;
      if (any) os << "*";
      os << names[i];
      if (e[i] > 1) os << "^" << e[i];
      any = true;
    }
    if (!any) os << "1";
  }
  return os.str();
}

ScalarPoly beta0(const ScalarPoly& f) {
  return ScalarPoly::y(f.prime(), kPlus) * f.derivative(kPlus).scaled(2) -
         ScalarPoly::y(f.prime(), kMinus) * f.derivative(kMinus).scaled(2);
}

ScalarPoly beta_minus(const ScalarPoly& f) {
  return ScalarPoly::y(f.prime(), kZero) * f.derivative(kMinus).scaled(2) -
         ScalarPoly::y(f.prime(), kPlus) * f.derivative(kZero);
}

ScalarPoly beta_plus(const ScalarPoly& f) {
  return ScalarPoly::y(f.prime(), kMinus) * f.derivative(kZero) -
         ScalarPoly::y(f.prime(), kZero) * f.derivative(kPlus).scaled(2);
}

ScalarPoly beta(int which, const ScalarPoly& f) {
  switch (which) {
    case kZero: return beta0(f);
    case kMinus: return beta_minus(f);
    case kPlus: return beta_plus(f);
  }
  throw DomainError("beta index must be 0, 1 or 2");
}

VectorPoly grad(const ScalarPoly& f) { return {FormDegree::One, beta0(f), beta_minus(f), beta_plus(f)}; }

VectorPoly curl(const VectorPoly& v) {
  if (v.form != FormDegree::One) throw DomainError("curl takes a 1-form");
  const auto& [f0, fm, fp] = v.c;
  return {FormDegree::Two, beta_minus(fp) - beta_plus(fm) - f0, beta_plus(f0) - beta0(fp) - fp.scaled(2),
          beta0(fm) - beta_minus(f0) - fm.scaled(2)};
}

ScalarPoly div(const VectorPoly& v) {
  if (v.form != FormDegree::Two) throw DomainError("divergence takes a 2-form");
  return beta0(v.c[kZero]) + beta_minus(v.c[kMinus]) + beta_plus(v.c[kPlus]);
}

Monomial koszul_monomial(std::uint32_t exterior, const Exp3& e) {
  Monomial m;
  m.exterior = exterior;
  for (int i = 0; i < 3; ++i) {
    if (e[i] > 255) throw DomainError("exponent exceeds the koszul limit");
    m.poly[i] = static_cast<std::uint8_t>(e[i]);
  }
  return m;
}

KoszulComplex sl2_complex(std::uint32_t p) { return KoszulComplex(builtin::sl(2).with_ring(Ring::prime_field(p))); }

namespace {

void require_sl2(const KoszulComplex& c, std::uint32_t p) {
  if (c.n() != 3 || c.ring() != Ring::prime_field(p))
    throw DomainError("expected the sl2 complex over F_" + std::to_string(p) + ", got " + c.algebra().name() + " over " +
                      c.ring().name());
}

void put(Cochain& x, std::uint32_t mask, int sign, const ScalarPoly& f) {
  for (const auto& [e, v] : f.terms()) x.add(koszul_monomial(mask, e), sign * static_cast<long>(v));
}

}  // namespace

Cochain to_cochain(const KoszulComplex& c, const ScalarPoly& f, int t) {
  require_sl2(c, f.prime());
  if (t != 0 && t != 3) throw DomainError("scalar polynomials sit in exterior degree 0 or 3");
  Cochain x(c.ring());
  put(x, t == 0 ? 0u : kMaskAll, 1, f);
  return x;
}

Cochain to_cochain(const KoszulComplex& c, const VectorPoly& v) {
  require_sl2(c, v.c[0].prime());
  Cochain x(c.ring());
  for (int i = 0; i < 3; ++i) {
    if (v.form == FormDegree::One)
      put(x, 1u << i, 1, v.c[i]);
    else
      put(x, kTwoSlots[i].mask, kTwoSlots[i].sign, v.c[i]);
  }
  return x;
}

ScalarPoly scalar_from_cochain(const KoszulComplex& c, const Cochain& x, int t) {
  const std::uint32_t p = c.ring().characteristic();
  require_sl2(c, p);
  const std::uint32_t mask = t == 0 ? 0u : t == 3 ? kMaskAll : ~0u;
  if (mask == ~0u) throw DomainError("scalar polynomials sit in exterior degree 0 or 3");
  ScalarPoly f(p);
  for (const auto& [m, v] : x.terms()) {
    if (m.exterior != mask) throw DomainError("cochain has a term outside exterior degree " + std::to_string(t));
    f.add(exp_of(m), residue(v, p));
  }
  return f;
}

VectorPoly vector_from_cochain(const KoszulComplex& c, const Cochain& x) {
  const std::uint32_t p = c.ring().characteristic();
  require_sl2(c, p);
  std::optional<FormDegree> form;
  VectorPoly out(FormDegree::One, p);
  for (const auto& [m, v] : x.terms()) {
    const FormDegree here = m.t() == 1 ? FormDegree::One : m.t() == 2 ? FormDegree::Two : throw DomainError("cochain is not a 1- or 2-form");
    if (form && *form != here) throw DomainError("cochain mixes 1- and 2-forms");
    form = here;
    const std::uint32_t r = residue(v, p);
    if (here == FormDegree::One) {
      out.c[__builtin_ctz(m.exterior)].add(exp_of(m), r);
    } else {
      for (int i = 0; i < 3; ++i)
        if (kTwoSlots[i].mask == m.exterior) out.c[i].add(exp_of(m), kTwoSlots[i].sign * static_cast<std::int64_t>(r));
    }
  }
  out.form = form.value_or(FormDegree::One);
  return out;
}

}  // namespace lieseq::sl2
