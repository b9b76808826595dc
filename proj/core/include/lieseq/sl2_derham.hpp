#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lieseq/cochain.hpp"
#include "lieseq/sl2_poly.hpp"

namespace lieseq::sl2 {

inline constexpr std::uint32_t kDefaultPrimeCap = 13;

// One verified statement. `id` is a short stable name such as
// "fundamental-relation"; `witness` summarises the evidence.
struct Check {
  std::string id;
  std::uint32_t p = 0;
  bool pass = false;
  std::string witness;
};

// [β_0,β_-] = 2β_-, [β_0,β_+] = -2β_+, [β_-,β_+] = β_0, the Leibniz rule and
// β_0 f = w f, on all monomials of degree <= max_degree.
std::vector<Check> check_beta_operators(std::uint32_t p, int max_degree = 3);

// curl∘grad = 0 and div∘curl = 0 on all monomial inputs of degree <= max_degree.
std::vector<Check> check_calculus_identities(std::uint32_t p, int max_degree);

// grad, curl and div agree with d_0 of the koszul module through Hodge
// degree max_hodge.
Check check_koszul_agreement(std::uint32_t p, int max_hodge);

struct H0Degree {
  int degree = 0;
  std::size_t dim_h0 = 0;        // dim E_1^{degree,0}
  std::size_t dim_span = 0;      // span of κ^a s_0^b s_-^c s_+^d
  std::size_t dim_quotient = 0;  // same monomials with a < p
};

struct H0Report {
  std::uint32_t p = 0;
  std::vector<H0Degree> degrees;
  bool frobenius_relation = false;  // κ^p = s_0^2 + s_- s_+

  bool ok() const;
};

H0Report h0_structure(std::uint32_t p, int max_degree);

struct FundamentalReport {
  std::uint32_t p = 0;
  // div(witness) = κ^{(p-1)/2}, so κ^{(p-1)/2} u = 0.
  std::optional<VectorPoly> witness;
  bool witness_checked = false;  // also confirmed through the koszul d_0
  bool nonvanishing = false;     // κ^{(p-3)/2} is not a divergence
  bool s_relations[3] = {false, false, false};  // s_0 u = s_- u = s_+ u = 0
  bool frobenius_relation = false;

  std::vector<Check> checks() const;
  bool ok() const;
};

FundamentalReport fundamental_relations(std::uint32_t p, std::uint32_t prime_cap = kDefaultPrimeCap);

struct GeneratorRecord {
  std::string name;
  int s = 0;
  int t = 0;
  int w = 0;
  Cochain rep;
  // Stated d_1 image, if the table gives one.
  std::optional<std::string> d1_target;
};

// Representing cochains of the 17 listed generators of E_1 for sl2 over F_p.
std::vector<GeneratorRecord> generator_table(std::uint32_t p);

struct RowAudit {
  std::string name;
  bool bidegree = false;
  bool weight = false;
  bool cocycle = false;
  bool nonzero = false;
  // Absent when the row states no relation.
  std::optional<bool> d1_relation;
  // The two expressions given for the row (β-form and expanded) agree.
  std::optional<bool> expressions_agree;

  bool ok() const;
};

struct TableAudit {
  std::uint32_t p = 0;
  bool partial = false;  // p < 5
  std::vector<RowAudit> rows;
  bool mu_basis = false;       // μ_0, μ_-, μ_+ span E_1^{p-1,2}
  bool f_gamma_basis = false;  // f_0, f_-, f_+, γ span E_1^{p,1}
  bool lambda_iso = false;     // d_1 : E_1^{p-1,1} → E_1^{p,0} is an isomorphism

  bool ok() const;
};

TableAudit audit_generator_table(std::uint32_t p);

// Weight lemmas through degree max_degree: counts and unitriangularity for
// weight-0 polynomials, divergence and gradient primitives off weight 0 mod
// p, and weight concentration of E_1.
std::vector<Check> weight_lemmas(std::uint32_t p, int max_degree);

// E_2 dims equal those of Λ(u) ⊗ F_p[κ]/(uκ^{(p-1)/2}, κ^{(p+1)/2}) on the
// valid region of a window of size max_hodge.
Check e2_description(std::uint32_t p, int max_hodge);

// E_1^{s,3} → E_1^{s+1,2} → E_1^{s+2,1} → E_1^{s+3,0} via d_1 is exact,
// injective at the start and surjective at the end.
Check exact_sequence(std::uint32_t p, int s);

// Dimension over F_p of the span in E_1^{s,t} of the given cocycles.
std::size_t class_rank(const KoszulComplex& c, int s, int t, const std::vector<Cochain>& xs);

struct SufficiencyRow {
  int s = 0;
  int t = 0;
  std::size_t dim_e1 = 0;
  std::size_t dim_generated = 0;
};

struct SufficiencyReport {
  std::uint32_t p = 0;
  int bound = 0;
  std::vector<SufficiencyRow> rows;
  std::optional<SufficiencyRow> first_gap;
};

// Compares E_1 with the subalgebra generated by the 17 table elements, degree
// by degree up to Hodge degree `bound`. Exploratory: reports, asserts nothing.
SufficiencyReport generator_sufficiency(std::uint32_t p, int bound);

}  // namespace lieseq::sl2
