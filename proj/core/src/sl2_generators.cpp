#include <functional>
#include <map>

#include "lieseq/error.hpp"
#include "lieseq/sl2_derham.hpp"
#include "lieseq/spectral.hpp"

namespace lieseq::sl2 {

namespace {

struct Row {
  GeneratorRecord rec;
  std::optional<Cochain> other_form;  // the β-expression when the table gives two
  std::optional<Cochain> d1_image;
};

struct Builder {
  const KoszulComplex& c;
  std::uint32_t p;

  Cochain x(int i) const { return Cochain::monomial(c.ring(), Monomial{1u << i, {}}); }
  Cochain poly(const ScalarPoly& f) const { return to_cochain(c, f, 0); }
  Cochain y(int i, unsigned k = 1) const { return poly(ScalarPoly::y(p, i).pow(k)); }
  Cochain beta_y(int i) const { return apply_d0(c, y(i)); }
  Cochain k(std::int64_t v) const { return poly(ScalarPoly::constant(p, v)); }
};

std::vector<Row> build_rows(const KoszulComplex& c, std::uint32_t p) {
  if (p < 3) throw DomainError("the generator table needs an odd prime");
  Builder b{c, p};
  const int ip = static_cast<int>(p);
  const unsigned h = (p - 1) / 2;
  const auto kappa = ScalarPoly::kappa(p);
  const auto y0 = ScalarPoly::y(p, kZero);
  const int x0 = kZero, xm = kMinus, xp = kPlus;

  Cochain u = b.x(x0) * b.x(xm) * b.x(xp);
  Cochain kap = b.poly(kappa);
  Cochain lambda0 = b.x(x0) * b.poly(kappa.pow(h)) - b.x(xp) * b.poly((y0 * (kappa.pow(h) - y0.pow(p - 1))).divided_by_y_plus());
  Cochain lambda_p = b.x(xp) * b.y(kPlus, p - 1);
  Cochain lambda_m = b.x(xm) * b.y(kMinus, p - 1);
  Cochain mu0 = b.x(x0) * b.y(kZero, p - 2) * (b.x(xp) * b.y(kMinus) - b.x(xm) * b.y(kPlus));
  Cochain mu0_beta = b.x(x0) * b.y(kZero, p - 2) * b.beta_y(kZero);
  Cochain mu_p = b.k(-2) * b.x(x0) * b.x(xp) * b.y(kPlus, p - 1);
  Cochain mu_p_beta = b.x(xp) * b.y(kPlus, p - 2) * b.beta_y(kPlus);
  Cochain mu_m = b.k(2) * b.x(x0) * b.x(xm) * b.y(kMinus, p - 1);
  Cochain mu_m_beta = b.x(xm) * b.y(kMinus, p - 2) * b.beta_y(kMinus);
  Cochain tau = u * b.y(kZero, p - 1);
  Cochain s0 = b.y(kZero, p), sp = b.y(kPlus, p), sm = b.y(kMinus, p);
  Cochain f0 = b.y(kZero, p - 1) * (b.x(xp) * b.y(kMinus) - b.x(xm) * b.y(kPlus));
  Cochain f0_beta = b.y(kZero, p - 1) * b.beta_y(kZero);
  Cochain f_p = b.k(-2) * b.y(kPlus, p - 1) * (b.x(xp) * b.y(kZero) - b.x(x0) * b.y(kPlus));
  Cochain f_p_beta = b.y(kPlus, p - 1) * b.beta_y(kPlus);
  Cochain f_m = b.k(2) * b.y(kMinus, p - 1) * (b.x(xm) * b.y(kZero) - b.x(x0) * b.y(kMinus));
  Cochain f_m_beta = b.y(kMinus, p - 1) * b.beta_y(kMinus);
  Cochain gamma = b.x(xp) * b.poly((kappa.pow(h + 1) - y0.pow(p + 1)).divided_by_y_plus()) + b.x(x0) * b.y(kZero, p);
  Cochain eps = b.y(kZero, p - 1) * (b.x(xm) * b.x(xp) * b.y(kZero) - b.x(x0) * b.x(xp) * b.y(kMinus) +
                                     b.x(x0) * b.x(xm) * b.y(kPlus));

  auto row = [](std::string name, int s, int t, int w, Cochain rep, std::optional<Cochain> other = {},
                std::optional<std::pair<std::string, Cochain>> d1 = {}) {
    Row r{{std::move(name), s, t, w, std::move(rep), std::nullopt}, std::move(other), std::nullopt};
    if (d1) {
      r.rec.d1_target = d1->first;
      r.d1_image = d1->second;
    }
    return r;
  };
  const int q = ip - 1;
  const int sp2 = 2 * ip;
  std::vector<Row> rows;
  rows.push_back(row("u", 0, 3, 0, u));
  rows.push_back(row("kappa", 2, 0, 0, kap));
  rows.push_back(row("lambda0", q, 1, 0, lambda0, {}, std::pair{"s0", s0}));
  rows.push_back(row("lambda+", q, 1, sp2, lambda_p, {}, std::pair{"s+", sp}));
  rows.push_back(row("lambda-", q, 1, -sp2, lambda_m, {}, std::pair{"s-", sm}));
  rows.push_back(row("mu0", q, 2, 0, mu0, mu0_beta, std::pair{"f0", f0}));
  rows.push_back(row("mu+", q, 2, sp2, mu_p, mu_p_beta, std::pair{"f+", f_p}));
  rows.push_back(row("mu-", q, 2, -sp2, mu_m, mu_m_beta, std::pair{"f-", f_m}));
  rows.push_back(row("tau", q, 3, 0, tau, {}, std::pair{"epsilon", eps}));
  rows.push_back(row("s0", ip, 0, 0, s0));
  rows.push_back(row("s+", ip, 0, sp2, sp));
  rows.push_back(row("s-", ip, 0, -sp2, sm));
  rows.push_back(row("f0", ip, 1, 0, f0, f0_beta));
  rows.push_back(row("f+", ip, 1, sp2, f_p, f_p_beta));
  rows.push_back(row("f-", ip, 1, -sp2, f_m, f_m_beta));
  rows.push_back(row("gamma", ip, 1, 0, gamma, {}, std::pair{"kappa^" + std::to_string(h + 1), b.poly(kappa.pow(h + 1))}));
  rows.push_back(row("epsilon", ip, 2, 0, eps));
  return rows;
}

}  // namespace

std::vector<GeneratorRecord> generator_table(std::uint32_t p) {
  const auto c = sl2_complex(p);
  std::vector<GeneratorRecord> out;
  for (auto& r : build_rows(c, p)) out.push_back(std::move(r.rec));
  return out;
}

bool RowAudit::ok() const {
  return bidegree && weight && cocycle && nonzero && d1_relation.value_or(true) && expressions_agree.value_or(true);
}

bool TableAudit::ok() const {
  for (const auto& r : rows)
    if (!r.ok()) return false;
  return mu_basis && f_gamma_basis && lambda_iso;
}

TableAudit audit_generator_table(std::uint32_t p) {
  const auto c = sl2_complex(p);
  TableAudit audit;
  audit.p = p;
  audit.partial = p < 5;
  const auto rows = build_rows(c, p);
  for (const auto& r : rows) {
    RowAudit a;
    a.name = r.rec.name;
    const auto bd = r.rec.rep.bidegree();
    a.bidegree = bd && bd->first == r.rec.s && bd->second == r.rec.t;
    a.weight = !r.rec.rep.is_zero();
    for (const auto& [m, v] : r.rec.rep.terms())
      if (c.weight_of(m).at(0) != r.rec.w) a.weight = false;
    a.cocycle = apply_d0(c, r.rec.rep).is_zero();
    a.nonzero = a.bidegree && a.cocycle && class_rank(c, r.rec.s, r.rec.t, {r.rec.rep}) == 1;
    if (r.d1_image) a.d1_relation = apply_d1(c, r.rec.rep) == *r.d1_image;
    if (r.other_form) a.expressions_agree = *r.other_form == r.rec.rep;
    audit.rows.push_back(a);
  }
  auto rep = [&](const std::string& name) -> const Cochain& {
    for (const auto& r : rows)
      if (r.rec.name == name) return r.rec.rep;
    throw DomainError("no generator named " + name);
  };
  const int q = static_cast<int>(p) - 1, ip = static_cast<int>(p);
  const auto e1 = spectral::compute_E1(c, {ip + 1});
  audit.mu_basis = e1.at(q, 2) == 3 && class_rank(c, q, 2, {rep("mu0"), rep("mu+"), rep("mu-")}) == 3;
  audit.f_gamma_basis = e1.at(ip, 1) == 4 && class_rank(c, ip, 1, {rep("f0"), rep("f+"), rep("f-"), rep("gamma")}) == 4;
  audit.lambda_iso = e1.at(q, 1) == 3 && e1.at(ip, 0) == 3 && spectral::induced_d1_rank(c, q, 1) == 3 &&
                     class_rank(c, q, 1, {rep("lambda0"), rep("lambda+"), rep("lambda-")}) == 3;
  return audit;
}

SufficiencyReport generator_sufficiency(std::uint32_t p, int bound) {
  const auto c = sl2_complex(p);
  SufficiencyReport rep;
  rep.p = p;
  rep.bound = bound;
  const auto gens = generator_table(p);
  std::map<std::pair<int, int>, std::vector<Cochain>> products;
  // Depth-first over generators in table order; odd generators at most once.
  std::function<void(std::size_t, const Cochain&, int, int)> walk = [&](std::size_t i, const Cochain& acc, int s, int t) {
    if (i == gens.size()) {
      if (!acc.is_zero()) products[{s, t}].push_back(acc);
      return;
    }
    walk(i + 1, acc, s, t);
    const auto& g = gens[i];
    const int max_power = g.t % 2 ? 1 : bound + 3;
    Cochain cur = acc;
    int cs = s, ct = t;
    for (int k = 1; k <= max_power; ++k) {
      cs += g.s;
      ct += g.t;
      if (cs > bound || ct > 3 || (g.s == 0 && g.t == 0)) break;
      cur = cur * g.rep;
      if (cur.is_zero()) break;
      walk(i + 1, cur, cs, ct);
    }
  };
  walk(0, Cochain::one(c.ring()), 0, 0);
  const auto e1 = spectral::compute_E1(c, {bound});
  for (int s = 0; s <= bound; ++s)
    for (int t = 0; t <= 3; ++t) {
      SufficiencyRow row{s, t, e1.at(s, t), 0};
      auto it = products.find({s, t});
      if (it != products.end()) row.dim_generated = class_rank(c, s, t, it->second);
      rep.rows.push_back(row);
      if (!rep.first_gap && row.dim_generated < row.dim_e1) rep.first_gap = row;
    }
  return rep;
}

}  // namespace lieseq::sl2
