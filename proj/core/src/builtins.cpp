#include "lieseq/builtins.hpp"

#include <charconv>
#include <set>
#include <string>

#include "lieseq/error.hpp"
#include "lieseq/exact_linalg.hpp"

namespace lieseq::builtin {

namespace {

using Matrix = std::vector<std::vector<std::int64_t>>;

Matrix zero(std::size_t n) { return Matrix(n, std::vector<std::int64_t>(n, 0)); }

Matrix commutator(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  Matrix c = zero(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0 && b[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j] - b[i][k] * a[k][j];
    }
  return c;
}

void check_cap(std::size_t dim, std::size_t max_dim, const std::string& name) {
  if (dim > max_dim)
    throw DomainError(name + " has dimension " + std::to_string(dim) + ", above the cap of " +
                      std::to_string(max_dim));
}

}  // namespace

LieAlgebra from_matrix_basis(std::string name, const std::vector<Matrix>& basis, std::vector<std::string> names,
                             std::optional<std::vector<WeightVector>> weights) {
  const std::size_t d = basis.size();
  const std::size_t n = basis.at(0).size();
  std::vector<Triplet> cols;
  for (std::size_t b = 0; b < d; ++b)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (basis[b][i][j] != 0)
          cols.push_back({static_cast<std::uint32_t>(i * n + j), static_cast<std::uint32_t>(b), basis[b][i][j]});
  SparseMatrix span = SparseMatrix::from_triplets(n * n, d, std::move(cols));
  std::vector<StructureConstant> constants;
  for (std::uint32_t a = 0; a < d; ++a)
    for (std::uint32_t b = a + 1; b < d; ++b) {
      Matrix c = commutator(basis[a], basis[b]);
      SparseVector rhs;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (c[i][j] != 0) rhs.push_back({static_cast<std::uint32_t>(i * n + j), mpq_class(static_cast<long>(c[i][j]))});
      if (rhs.empty()) continue;
      auto x = linalg::solve(span, rhs, Ring::rationals());
      if (!x) throw DomainError(name + ": matrix span is not closed under the bracket");
      for (const auto& e : *x) {
        if (e.value.get_den() != 1) throw DomainError(name + ": bracket has non-integral coordinates");
        constants.push_back({a, b, e.index, e.value.get_num().get_si()});
      }
    }
  return LieAlgebra(std::move(name), d, Ring::integers(), std::move(constants), std::move(names), std::move(weights));
}

LieAlgebra sl(std::size_t n, std::size_t max_dim) {
  if (n < 2) throw DomainError("sl(n) needs n >= 2");
  const std::string name = "sl" + std::to_string(n);
  check_cap(n * n - 1, max_dim, name);
  std::vector<Matrix> basis;
  std::vector<std::string> names;
  std::vector<WeightVector> weights;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    Matrix h = zero(n);
    h[k][k] = 1;
    h[k + 1][k + 1] = -1;
    basis.push_back(h);
    names.push_back(n == 2 ? "h" : "h" + std::to_string(k + 1));
    weights.push_back(WeightVector(n - 1, 0));
  }
  auto root_vector = [&](std::size_t i, std::size_t j) {
    Matrix e = zero(n);
    e[i][j] = 1;
    basis.push_back(e);
    // The dual generator has weight -alpha_ij(H_k).
    WeightVector w(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      auto eps = [&](std::size_t a) -> std::int64_t { return (a == k) - (a == k + 1); };
      w[k] = -(eps(i) - eps(j));
    }
    weights.push_back(w);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      root_vector(i, j);
      names.push_back(n == 2 ? "e" : "e" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      root_vector(i, j);
      names.push_back(n == 2 ? "f" : "e" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  return from_matrix_basis(name, basis, names, weights);
}

LieAlgebra sp(std::size_t two_n, std::size_t max_dim) {
  if (two_n < 2 || two_n % 2) throw DomainError("sp(2n) needs an even size >= 2");
  const std::size_t n = two_n / 2;
  const std::string name = "sp" + std::to_string(two_n);
  check_cap(n * (2 * n + 1), max_dim, name);
  std::vector<Matrix> basis;
  std::vector<std::string> names;
  std::vector<WeightVector> weights;
  // root = Σ sign·eps; the dual generator carries its negative.
  auto push = [&](Matrix m, std::string nm, WeightVector root) {
    for (auto& x : root) x = -x;
    basis.push_back(std::move(m));
    names.push_back(std::move(nm));
    weights.push_back(std::move(root));
  };
  auto unit = [&](std::size_t k) {
    WeightVector w(n, 0);
    w[k] = 1;
    return w;
  };
  for (std::size_t i = 0; i < n; ++i) {
    Matrix h = zero(two_n);
    h[i][i] = 1;
    h[n + i][n + i] = -1;
    push(h, "h" + std::to_string(i + 1), WeightVector(n, 0));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      Matrix a = zero(two_n);
      a[i][j] = 1;
      a[n + j][n + i] = -1;
      WeightVector r = unit(i);
      r[j] -= 1;
      push(a, "a" + std::to_string(i + 1) + std::to_string(j + 1), r);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Matrix b = zero(two_n);
      b[i][n + j] = 1;
      b[j][n + i] = 1;
      WeightVector r = unit(i);
      r[j] += 1;
      push(b, "b" + std::to_string(i + 1) + std::to_string(j + 1), r);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Matrix c = zero(two_n);
      c[n + i][j] = 1;
      c[n + j][i] = 1;
      WeightVector r = unit(i);
      r[j] += 1;
      for (auto& x : r) x = -x;
      push(c, "c" + std::to_string(i + 1) + std::to_string(j + 1), r);
    }
  return from_matrix_basis(name, basis, names, weights);
}

LieAlgebra so(std::size_t n, std::size_t max_dim) {
  if (n < 2) throw DomainError("so(n) needs n >= 2");
  const std::string name = "so" + std::to_string(n);
  check_cap(n * (n - 1) / 2, max_dim, name);
  std::vector<Matrix> basis;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Matrix m = zero(n);
      m[i][j] = 1;
      m[j][i] = -1;
      basis.push_back(m);
      names.push_back("r" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  return from_matrix_basis(name, basis, names, std::nullopt);
}

LieAlgebra nonabelian2() {
  // [h, e] = -e, i.e. [e, h] = e.
  return LieAlgebra("nonabelian2", 2, Ring::integers(), {{0, 1, 1, -1}}, {"h", "e"},
                    std::vector<WeightVector>{{0}, {1}});
}

LieAlgebra abelian(std::size_t n, std::size_t max_dim) {
  const std::string name = "abelian" + std::to_string(n);
  check_cap(n, max_dim, name);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("a" + std::to_string(i + 1));
  return LieAlgebra(name, n, Ring::integers(), {}, names);
}

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b, std::size_t max_dim) {
  if (!(a.ring() == b.ring())) throw DomainError("direct sum of algebras over different rings");
  const std::string name = a.name() + "+" + b.name();
  check_cap(a.dim() + b.dim(), max_dim, name);
  std::vector<StructureConstant> c = a.constants();
  const auto off = static_cast<std::uint32_t>(a.dim());
  for (auto x : b.constants()) c.push_back({x.i + off, x.j + off, x.k + off, x.value});
  std::vector<std::string> names;
  for (const auto& s : a.basis_names()) names.push_back(s);
  for (const auto& s : b.basis_names()) names.push_back(s);
  if (names.size() != std::set<std::string>(names.begin(), names.end()).size()) {
    names.clear();
    for (const auto& s : a.basis_names()) names.push_back(s + "'1");
    for (const auto& s : b.basis_names()) names.push_back(s + "'2");
  }
  std::optional<std::vector<WeightVector>> w;
  if (a.has_weights() && b.has_weights()) {
    const std::size_t ra = a.weight_rank(), rb = b.weight_rank();
    w.emplace();
    for (const auto& x : a.weights()) {
      WeightVector v(x);
      v.resize(ra + rb, 0);
      w->push_back(v);
    }
    for (const auto& x : b.weights()) {
      WeightVector v(ra, 0);
      v.insert(v.end(), x.begin(), x.end());
      w->push_back(v);
    }
  }
  return LieAlgebra(name, a.dim() + b.dim(), a.ring(), std::move(c), std::move(names), std::move(w));
}

namespace {

std::optional<std::size_t> parse_size(std::string_view s) {
  if (s.starts_with(":")) s.remove_prefix(1);
  if (s.starts_with("(") && s.ends_with(")")) s = s.substr(1, s.size() - 2);
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

}  // namespace

LieAlgebra by_name(std::string_view name, std::size_t max_dim) {
  if (auto plus = name.rfind('+'); plus != std::string_view::npos)
    return direct_sum(by_name(name.substr(0, plus), max_dim), by_name(name.substr(plus + 1), max_dim), max_dim);
  if (name == "nonabelian2" || name == "nonabelian") return nonabelian2();
  struct Family {
    std::string_view prefix;
    LieAlgebra (*make)(std::size_t, std::size_t);
  };
  static const Family families[] = {{"abelian", abelian}, {"sl", sl}, {"sp", sp}, {"so", so}};
  for (const auto& f : families)
    if (name.starts_with(f.prefix))
      if (auto n = parse_size(name.substr(f.prefix.size()))) return f.make(*n, max_dim);
  throw ParseError("unknown algebra '" + std::string(name) + "'");
}

}  // namespace lieseq::builtin
