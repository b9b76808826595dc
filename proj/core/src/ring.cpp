#include "lieseq/ring.hpp"

#include <charconv>

#include "lieseq/error.hpp"

namespace lieseq {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Ring Ring::prime_field(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw DomainError("prime field characteristic must be a prime below 2^31, got " +
                      std::to_string(p));
  return Ring(RingKind::PrimeField, p);
}

Ring Ring::parse(std::string_view text) {
  if (text == "Z" || text == "ZZ") return integers();
  if (text == "Q" || text == "QQ") return rationals();
  std::string_view digits;
  if (text.starts_with("Fp:"))
    digits = text.substr(3);
  else if (text.starts_with("GF(") && text.ends_with(")"))
    digits = text.substr(3, text.size() - 4);
  else if (text.starts_with("F"))
    digits = text.substr(1);
  else
    throw ParseError("unknown ring '" + std::string(text) + "' (expected Z, Q or Fp:<p>)");
  std::uint64_t p = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty())
    throw ParseError("bad prime in ring '" + std::string(text) + "'");
  if (p >= (1u << 31)) throw DomainError("characteristic too large: " + std::string(digits));
  return prime_field(static_cast<std::uint32_t>(p));
}

std::string Ring::name() const {
  switch (kind_) {
    case RingKind::Integers: return "Z";
    case RingKind::Rationals: return "Q";
    case RingKind::PrimeField: return "Fp:" + std::to_string(p_);
  }
  return "?";
}

mpq_class Ring::normalize(const mpq_class& v) const {
  switch (kind_) {
    case RingKind::Rationals: return v;
    case RingKind::Integers:
      if (v.get_den() != 1) throw DomainError("non-integral scalar over Z");
      return v;
    case RingKind::PrimeField: {
      mpz_class pz(p_);
      mpz_class num = v.get_num() % pz;
      mpz_class den = v.get_den() % pz;
      if (den == 0) throw DomainError("denominator divisible by the characteristic");
      if (num < 0) num += pz;
      mpz_class inv;
      mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
      mpz_class r = num * inv % pz;
      return mpq_class(r);
    }
  }
  return v;
}

namespace modp {

std::uint32_t inverse(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a % p;
  if (nr == 0) throw DomainError("inverse of zero modulo " + std::to_string(p));
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  return static_cast<std::uint32_t>(t < 0 ? t + p : t);
}

std::uint32_t pow(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint32_t r = 1 % p, b = a % p;
  while (e) {
    if (e & 1) r = mul(r, b, p);
    b = mul(b, b, p);
    e >>= 1;
  }
  return r;
}

}  // namespace modp
}  // namespace lieseq
