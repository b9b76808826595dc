#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace lieseq {

enum class RingKind { Integers, Rationals, PrimeField };

// Coefficient ring: Z, Q, or F_p with p < 2^31.
class Ring {
 public:
  static Ring integers() { return Ring(RingKind::Integers, 0); }
  static Ring rationals() { return Ring(RingKind::Rationals, 0); }
  static Ring prime_field(std::uint32_t p);
  // Accepts "Z", "Q", "Fp:<p>" (also "F<p>" and "GF(<p>)").
  static Ring parse(std::string_view text);

  RingKind kind() const { return kind_; }
  bool is_field() const { return kind_ != RingKind::Integers; }
  bool is_prime_field() const { return kind_ == RingKind::PrimeField; }
  std::uint32_t characteristic() const { return p_; }
  std::string name() const;

  // Canonical representative: residue in [0,p) for F_p, unchanged otherwise.
  std::int64_t reduce(std::int64_t v) const;
  // Normalises a scalar into the ring; throws DomainError if a denominator
  // is not invertible or a non-integer is given for Z.
  mpq_class normalize(const mpq_class& v) const;

  friend bool operator==(const Ring&, const Ring&) = default;

 private:
  Ring(RingKind k, std::uint32_t p) : kind_(k), p_(p) {}
  RingKind kind_;
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

namespace modp {

inline std::uint32_t add(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  std::uint32_t s = a + b;
  return s >= p ? s - p : s;
}
inline std::uint32_t sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return a >= b ? a - b : a + p - b;
}
inline std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}
inline std::uint32_t reduce(std::int64_t v, std::uint32_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}
std::uint32_t inverse(std::uint32_t a, std::uint32_t p);
std::uint32_t pow(std::uint32_t a, std::uint64_t e, std::uint32_t p);

}  // namespace modp

inline std::int64_t Ring::reduce(std::int64_t v) const {
  return kind_ == RingKind::PrimeField ? static_cast<std::int64_t>(modp::reduce(v, p_)) : v;
}

}  // namespace lieseq
