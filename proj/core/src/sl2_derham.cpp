#include "lieseq/sl2_derham.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "lieseq/error.hpp"
#include "lieseq/exact_linalg.hpp"
#include "lieseq/spectral.hpp"

namespace lieseq::sl2 {

namespace {

std::vector<Exp3> monomials_of_degree(int d) {
  std::vector<Exp3> out;
  for (int a = d; a >= 0; --a)
    for (int b = d - a; b >= 0; --b)
      out.push_back({static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b), static_cast<std::uint16_t>(d - a - b)});
  return out;
}

std::string pstr(std::uint32_t p) { return std::to_string(p); }

// Columns = images of the basis e_i ⊗ (slot) under `fn`, rows = monomials of
// the target degree.
template <class Fn>
SparseMatrix div_matrix(std::uint32_t p, int d, Fn&& fn) {
  const auto src = monomials_of_degree(d);
  const auto dst = monomials_of_degree(d);
  std::map<Exp3, std::uint32_t> row;
  for (std::size_t i = 0; i < dst.size(); ++i) row[dst[i]] = static_cast<std::uint32_t>(i);
  std::vector<Triplet> trip;
  std::uint32_t col = 0;
  for (int slot = 0; slot < 3; ++slot)
    for (const auto& e : src) {
      VectorPoly v(FormDegree::Two, p);
      v.c[slot] = ScalarPoly::monomial(p, e);
      const ScalarPoly image = fn(v);
      for (const auto& [m, c] : image.terms()) trip.push_back({row.at(m), col, static_cast<std::int64_t>(c)});
      ++col;
    }
  return SparseMatrix::from_triplets(dst.size(), col, std::move(trip));
}

SparseVector poly_vector(const ScalarPoly& f) {
  const int d = f.degree();
  SparseVector v;
  if (d < 0) return v;
  const auto basis = monomials_of_degree(d);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (auto c = f.coefficient(basis[i])) v.push_back({static_cast<std::uint32_t>(i), mpq_class(c)});
  return v;
}

VectorPoly two_form_from_vector(std::uint32_t p, int d, const SparseVector& x) {
  const auto basis = monomials_of_degree(d);
  VectorPoly v(FormDegree::Two, p);
  for (const auto& e : x) {
    const std::size_t slot = e.index / basis.size(), k = e.index % basis.size();
    v.c[slot].add(basis[k], mpz_class(e.value.get_num()).get_si());
  }
  return v;
}

// A 2-form ĝ of degree d with div ĝ = target, if one exists.
std::optional<VectorPoly> divergence_primitive(std::uint32_t p, const ScalarPoly& target) {
  const int d = target.degree();
  if (d < 0) return VectorPoly(FormDegree::Two, p);
  auto m = div_matrix(p, d, [](const VectorPoly& v) { return div(v); });
  auto sol = linalg::solve(m, poly_vector(target), Ring::prime_field(p));
  if (!sol) return std::nullopt;
  return two_form_from_vector(p, d, *sol);
}

}  // namespace

std::vector<Check> check_beta_operators(std::uint32_t p, int max_degree) {
  Check brackets{"beta-brackets", p, true, ""};
  Check leibniz{"beta-derivation", p, true, ""};
  Check eigen{"beta0-eigenfunctions", p, true, ""};
  std::size_t tested = 0;
  std::vector<ScalarPoly> all;
  for (int d = 0; d <= max_degree; ++d)
    for (const auto& e : monomials_of_degree(d)) all.push_back(ScalarPoly::monomial(p, e));
  for (const auto& f : all) {
    ++tested;
    const auto b0 = [](const ScalarPoly& g) { return beta0(g); };
    const auto bm = [](const ScalarPoly& g) { return beta_minus(g); };
    const auto bp = [](const ScalarPoly& g) { return beta_plus(g); };
    auto comm = [&](auto a, auto b) { return a(b(f)) - b(a(f)); };
    if (comm(b0, bm) != bm(f).scaled(2) || comm(b0, bp) != bp(f).scaled(-2) || comm(bm, bp) != b0(f)) {
      brackets.pass = false;
      brackets.witness = "fails on " + f.to_string();
    }
    const Exp3 e = f.terms().begin()->first;
    if (beta0(f) != f.scaled(weight_of(e))) {
      eigen.pass = false;
      eigen.witness = "fails on " + f.to_string();
    }
  }
  for (std::size_t i = 0; i < all.size() && leibniz.pass; ++i)
    for (std::size_t j = i; j < all.size(); ++j) {
      if (all[i].degree() + all[j].degree() > max_degree) continue;
      for (int k = 0; k < 3; ++k)
        if (beta(k, all[i] * all[j]) != beta(k, all[i]) * all[j] + all[i] * beta(k, all[j])) {
          leibniz.pass = false;
          leibniz.witness = "fails on " + all[i].to_string() + " * " + all[j].to_string();
        }
    }
  const std::string note = std::to_string(tested) + " monomials of degree <= " + std::to_string(max_degree);
  for (Check* c : {&brackets, &leibniz, &eigen})
    if (c->pass) c->witness = note;
  return {brackets, leibniz, eigen};
}

std::vector<Check> check_calculus_identities(std::uint32_t p, int max_degree) {
  Check cg{"curl-grad", p, true, ""}, dc{"div-curl", p, true, ""};
  std::size_t n = 0;
  for (int d = 0; d <= max_degree; ++d)
    for (const auto& e : monomials_of_degree(d)) {
      const auto f = ScalarPoly::monomial(p, e);
      if (!curl(grad(f)).is_zero()) {
        cg.pass = false;
        cg.witness = "fails on " + f.to_string();
      }
      for (int slot = 0; slot < 3; ++slot) {
        VectorPoly v(FormDegree::One, p);
        v.c[slot] = f;
        if (!div(curl(v)).is_zero()) {
          dc.pass = false;
          dc.witness = "fails on slot " + std::to_string(slot) + " " + f.to_string();
        }
      }
      ++n;
    }
  for (Check* c : {&cg, &dc})
    if (c->pass) c->witness = std::to_string(n) + " monomials of degree <= " + std::to_string(max_degree);
  return {cg, dc};
}

Check check_koszul_agreement(std::uint32_t p, int max_hodge) {
  Check out{"koszul-agreement", p, true, ""};
  const auto c = sl2_complex(p);
  std::size_t n = 0;
  for (int d = 0; d <= max_hodge && out.pass; ++d)
    for (const auto& e : monomials_of_degree(d)) {
      const auto f = ScalarPoly::monomial(p, e);
      if (apply_d0(c, to_cochain(c, f, 0)) != to_cochain(c, grad(f))) {
        out.pass = false;
        out.witness = "grad differs from d0 on " + f.to_string();
        break;
      }
      for (int slot = 0; slot < 3; ++slot) {
        VectorPoly one(FormDegree::One, p), two(FormDegree::Two, p);
        one.c[slot] = f;
        two.c[slot] = f;
        if (apply_d0(c, to_cochain(c, one)) != to_cochain(c, curl(one))) {
          out.pass = false;
          out.witness = "curl differs from d0 in slot " + std::to_string(slot) + " on " + f.to_string();
        }
        if (apply_d0(c, to_cochain(c, two)) != to_cochain(c, div(two), 3)) {
          out.pass = false;
          out.witness = "div differs from d0 in slot " + std::to_string(slot) + " on " + f.to_string();
        }
        n += 2;
      }
      ++n;
    }
  if (out.pass) out.witness = std::to_string(n) + " basis forms, Hodge degree <= " + std::to_string(max_hodge);
  return out;
}

bool H0Report::ok() const {
  if (!frobenius_relation) return false;
  for (const auto& d : degrees)
    if (d.dim_h0 != d.dim_span || d.dim_span != d.dim_quotient) return false;
  return true;
}

H0Report h0_structure(std::uint32_t p, int max_degree) {
  H0Report rep;
  rep.p = p;
  const auto kappa = ScalarPoly::kappa(p);
  const ScalarPoly s[3] = {ScalarPoly::y(p, kZero).pow(p), ScalarPoly::y(p, kMinus).pow(p), ScalarPoly::y(p, kPlus).pow(p)};
  rep.frobenius_relation = kappa.pow(p) == s[0] * s[0] + s[1] * s[2];
  const auto c = sl2_complex(p);
  const auto e1 = spectral::compute_E1(c, {max_degree});
  const int ip = static_cast<int>(p);
  for (int d = 0; d <= max_degree; ++d) {
    H0Degree row;
    row.degree = d;
    row.dim_h0 = e1.at(d, 0);
    std::vector<Triplet> trip;
    const auto basis = monomials_of_degree(d);
    std::map<Exp3, std::uint32_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<std::uint32_t>(i);
    std::uint32_t col = 0;
    for (int a = 0; 2 * a <= d; ++a) {
      const int rest = d - 2 * a;
      if (rest % ip) continue;
      const int k = rest / ip;
      for (int b = 0; b <= k; ++b)
        for (int cm = 0; cm <= k - b; ++cm) {
          const int cp = k - b - cm;
          ScalarPoly m = kappa.pow(a) * s[0].pow(b) * s[1].pow(cm) * s[2].pow(cp);
          for (const auto& [e, v] : m.terms()) trip.push_back({index.at(e), col, static_cast<std::int64_t>(v)});
          ++col;
          if (a < ip) ++row.dim_quotient;
        }
    }
    row.dim_span = linalg::rank(SparseMatrix::from_triplets(basis.size(), col, std::move(trip)), Ring::prime_field(p));
    rep.degrees.push_back(row);
  }
  return rep;
}

bool FundamentalReport::ok() const {
  for (const auto& c : checks())
    if (!c.pass) return false;
  return true;
}

std::vector<Check> FundamentalReport::checks() const {
  std::vector<Check> out;
  const std::uint32_t h = (p - 1) / 2;
  std::string w = witness ? "div of a degree " + std::to_string(p - 1) + " 2-form" + (witness_checked ? ", confirmed by d0" : "")
                          : "no primitive";
  out.push_back({"fundamental-relation", p, witness.has_value() && witness_checked, "kappa^" + std::to_string(h) + " u = 0: " + w});
  out.push_back({"fundamental-nonvanishing", p, nonvanishing,
                 "kappa^" + std::to_string(h - 1) + " u != 0: " + (nonvanishing ? "div system infeasible" : "div system solvable")});
  static const char* names[3] = {"s0", "s-", "s+"};
  for (int i = 0; i < 3; ++i)
    out.push_back({std::string("u-") + names[i] + "-relation", p, s_relations[i],
                   std::string(names[i]) + " u = 0" + (s_relations[i] ? ": divergence found" : ": no primitive")});
  out.push_back({"frobenius-relation", p, frobenius_relation, "kappa^p = s0^2 + s- s+"});
  return out;
}

FundamentalReport fundamental_relations(std::uint32_t p, std::uint32_t prime_cap) {
  if (p > prime_cap)
    throw DomainError("p = " + pstr(p) + " exceeds the configured cap " + std::to_string(prime_cap));
  FundamentalReport rep;
  rep.p = p;
  const auto kappa = ScalarPoly::kappa(p);
  const auto target = kappa.pow((p - 1) / 2);
  rep.witness = divergence_primitive(p, target);
  if (rep.witness) {
    const auto c = sl2_complex(p);
    rep.witness_checked =
        div(*rep.witness) == target && apply_d0(c, to_cochain(c, *rep.witness)) == to_cochain(c, target, 3);
  }
  rep.nonvanishing = !divergence_primitive(p, kappa.pow((p - 3) / 2)).has_value();
  for (int i = 0; i < 3; ++i) rep.s_relations[i] = divergence_primitive(p, ScalarPoly::y(p, i).pow(p)).has_value();
  const ScalarPoly s0 = ScalarPoly::y(p, kZero).pow(p), sm = ScalarPoly::y(p, kMinus).pow(p), sp = ScalarPoly::y(p, kPlus).pow(p);
  rep.frobenius_relation = kappa.pow(p) == s0 * s0 + sm * sp;
  return rep;
}

std::size_t class_rank(const KoszulComplex& c, int s, int t, const std::vector<Cochain>& xs) {
  const Ring& ring = c.ring();
  const std::size_t rows = c.block_size(s, t);
  SparseMatrix d = t > 0 ? c.d0(s, t - 1) : SparseMatrix(rows, 0);
  std::vector<Triplet> trip = d.triplets();
  std::uint32_t col = static_cast<std::uint32_t>(d.cols());
  for (const auto& x : xs) {
    for (const auto& e : to_vector(c, x, s, t)) trip.push_back({e.index, col, mpz_class(e.value.get_num()).get_si()});
    ++col;
  }
  const auto all = SparseMatrix::from_triplets(rows, col, std::move(trip));
  return linalg::rank(all, ring) - linalg::rank(d, ring);
}

std::vector<Check> weight_lemmas(std::uint32_t p, int max_degree) {
  std::vector<Check> out;
  const int ip = static_cast<int>(p);
  // Weight-0 monomials of degree N: θ_ℓ = y_0^{N-2ℓ}(y_- y_+)^ℓ; Γ_ℓ = y_0^{N-2ℓ} κ^ℓ.
  {
    Check c{"weight0-basis", p, true, ""};
    for (int N = 0; N <= max_degree && c.pass; ++N) {
      std::size_t count = 0;
      for (const auto& e : monomials_of_degree(N)) count += weight_of(e) == 0;
      if (count != static_cast<std::size_t>(N / 2 + 1)) {
        c.pass = false;
        c.witness = "degree " + std::to_string(N) + " has " + std::to_string(count) + " weight-0 monomials";
        break;
      }
      for (int l = 0; 2 * l <= N && c.pass; ++l) {
        auto gamma = ScalarPoly::y(p, kZero).pow(N - 2 * l) * ScalarPoly::kappa(p).pow(l);
        for (int j = 0; 2 * j <= N; ++j) {
          const Exp3 theta{static_cast<std::uint16_t>(N - 2 * j), static_cast<std::uint16_t>(j), static_cast<std::uint16_t>(j)};
          const std::uint32_t coef = gamma.coefficient(theta);
          if ((j > l && coef != 0) || (j == l && coef != 1)) {
            c.pass = false;
            c.witness = "Gamma_" + std::to_string(l) + " at degree " + std::to_string(N) + " is not unitriangular";
          }
        }
      }
    }
    if (c.pass) c.witness = "degrees <= " + std::to_string(max_degree);
    out.push_back(c);
  }
  // Off weight 0 mod p, ψ u = div((ψ/w, 0, 0)).
  {
    Check c{"weight3-primitive", p, true, ""};
    std::size_t n = 0;
    for (int N = 0; N <= max_degree; ++N)
      for (const auto& e : monomials_of_degree(N)) {
        const int w = weight_of(e);
        if (w % ip == 0) continue;
        const auto psi = ScalarPoly::monomial(p, e);
        VectorPoly g(FormDegree::Two, p);
        g.c[kZero] = psi.scaled(modp::inverse(modp::reduce(w, p), p));
        if (div(g) != psi) {
          c.pass = false;
          c.witness = "fails on " + psi.to_string();
        }
        ++n;
      }
    if (c.pass) c.witness = std::to_string(n) + " monomials";
    out.push_back(c);
  }
  // Curl-free 1-forms of weight w ≢ 0 mod p are gradients of f_0/w.
  {
    Check c{"weight1-primitive", p, true, ""};
    const auto kc = sl2_complex(p);
    std::size_t n = 0;
    for (int N = 0; N <= max_degree && c.pass; ++N)
      for (const auto& st : kc.strata(N, 1)) {
        const int w = static_cast<int>(st.weight.at(0));
        if (w % ip == 0) continue;
        auto rk = linalg::rank_and_kernel(kc.d0(N, 1, st.weight), kc.ring());
        for (const auto& v : rk.kernel) {
          SparseVector full;
          for (const auto& e : v) full.push_back({st.members[e.index], e.value});
          const auto form = vector_from_cochain(kc, from_vector(kc, full, N, 1));
          const auto& [f0, fm, fp] = form.c;
          const std::int64_t wi = w;
          const bool eqs = f0 == beta_minus(fp) - beta_plus(fm) && beta_plus(f0) == fp.scaled(wi) && beta_minus(f0) == fm.scaled(wi);
          const auto g = grad(f0.scaled(modp::inverse(modp::reduce(w, p), p)));
          if (!eqs || g != form) {
            c.pass = false;
            c.witness = "fails in weight " + std::to_string(w) + " at degree " + std::to_string(N);
            break;
          }
          ++n;
        }
      }
    if (c.pass) c.witness = std::to_string(n) + " curl-free forms";
    out.push_back(c);
  }
  // E_1 lives in weights ≡ 0 mod p.
  {
    Check c{"weight-concentration", p, true, ""};
    const auto kc = sl2_complex(p);
    const auto rep = spectral::stratify(kc, {max_degree});
    std::size_t strata = 0;
    for (const auto& st : rep.strata) {
      const auto& pg = st.pages.front();
      for (int s = 0; s <= max_degree; ++s)
        for (int t = 0; t <= 3; ++t)
          if (pg.at(s, t) && st.weight.at(0) % ip != 0) {
            c.pass = false;
            c.witness = "weight " + std::to_string(st.weight[0]) + " at (" + std::to_string(s) + "," + std::to_string(t) + ")";
          }
      ++strata;
    }
    if (c.pass) c.witness = std::to_string(strata) + " strata, Hodge degree <= " + std::to_string(max_degree);
    out.push_back(c);
  }
  return out;
}

Check e2_description(std::uint32_t p, int max_hodge) {
  Check c{"e2-description", p, true, ""};
  const auto kc = sl2_complex(p);
  const auto pages = spectral::compute_pages(kc, {max_hodge}, 2);
  const auto& e2 = pages.at(1);
  const int h = static_cast<int>(p - 1) / 2;
  std::size_t cells = 0;
  for (int s = 0; s <= max_hodge; ++s)
    for (int t = 0; t <= 3; ++t) {
      if (!e2.valid(s, t)) continue;
      std::size_t expect = 0;
      if (s % 2 == 0 && t == 0 && s / 2 <= h) expect = 1;
      if (s % 2 == 0 && t == 3 && s / 2 < h) expect = 1;
      ++cells;
      if (e2.at(s, t) != expect) {
        c.pass = false;
        c.witness = "E2(" + std::to_string(s) + "," + std::to_string(t) + ") = " + std::to_string(e2.at(s, t)) +
                    ", expected " + std::to_string(expect);
        return c;
      }
    }
  c.witness = std::to_string(cells) + " valid cells, window " + std::to_string(max_hodge);
  return c;
}

Check exact_sequence(std::uint32_t p, int s) {
  Check c{"exact-sequence", p, false, ""};
  const auto kc = sl2_complex(p);
  const auto e1 = spectral::compute_E1(kc, {s + 3});
  const std::size_t a = e1.at(s, 3), b = e1.at(s + 1, 2), cc = e1.at(s + 2, 1), d = e1.at(s + 3, 0);
  const std::size_t r1 = spectral::induced_d1_rank(kc, s, 3);
  const std::size_t r2 = spectral::induced_d1_rank(kc, s + 1, 2);
  const std::size_t r3 = spectral::induced_d1_rank(kc, s + 2, 1);
  c.pass = r1 == a && r1 + r2 == b && r2 + r3 == cc && r3 == d;
  std::ostringstream os;
  os << "s=" << s << " dims " << a << "," << b << "," << cc << "," << d << " ranks " << r1 << "," << r2 << "," << r3;
  c.witness = os.str();
  return c;
}

}  // namespace lieseq::sl2
