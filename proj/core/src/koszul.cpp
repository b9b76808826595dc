#include "lieseq/koszul.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "lieseq/error.hpp"
#include "parallel.hpp"

namespace lieseq {

namespace {

constexpr int kMaxHodge = 255;

void require_range(int s, int t, std::size_t n) {
  if (s < 0 || t < 0 || static_cast<std::size_t>(t) > n || s > kMaxHodge)
    throw DomainError("bidegree (" + std::to_string(s) + "," + std::to_string(t) + ") outside the complex");
}

}  // namespace

KoszulComplex::KoszulComplex(LieAlgebra g) : g_(std::move(g)), n_(g_.dim()) {
  if (n_ > kMaxGenerators)
    throw DomainError("dimension " + std::to_string(n_) + " exceeds the supported maximum of " +
                      std::to_string(kMaxGenerators));
  d0x_.resize(n_);
  d0y_.resize(n_);
  for (const auto& c : g_.constants()) {
    d0x_[c.k].push_back({c.i, c.j, -c.value});
    d0y_[c.k].push_back({c.i, c.j, c.value});
    d0y_[c.k].push_back({c.j, c.i, -c.value});
  }
  subsets_.resize(n_ + 1);
  subset_rank_.assign(std::size_t{1} << n_, 0);
  for (std::size_t t = 0; t <= n_; ++t) {
    // Lexicographic t-subsets of {0..n-1} as sorted tuples.
    std::vector<std::uint32_t> idx(t);
    for (std::size_t i = 0; i < t; ++i) idx[i] = static_cast<std::uint32_t>(i);
    for (;;) {
      std::uint32_t mask = 0;
      for (auto i : idx) mask |= 1u << i;
      subset_rank_[mask] = static_cast<std::uint32_t>(subsets_[t].size());
      subsets_[t].push_back(mask);
      std::size_t k = t;
      while (k > 0 && idx[k - 1] == n_ - t + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t i = k; i < t; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  const std::size_t top = kMaxHodge + n_ + 2;
  binom_.assign(top + 1, std::vector<std::uint64_t>(n_ + 1, 0));
  for (std::size_t a = 0; a <= top; ++a) {
    binom_[a][0] = 1;
    for (std::size_t b = 1; b <= std::min(a, n_); ++b) {
      std::uint64_t x = binom_[a - 1][b - 1], y = b <= a - 1 ? binom_[a - 1][b] : 0;
      binom_[a][b] = (x > UINT64_MAX - y) ? UINT64_MAX : x + y;
    }
  }
}

std::size_t KoszulComplex::poly_count(int s) const {
  if (s < 0) return 0;
  // C(s + n - 1, n - 1)
  return binom_[static_cast<std::size_t>(s) + n_ - 1][n_ - 1];
}

std::size_t KoszulComplex::poly_rank(const Exponents& a, int s) const {
  std::size_t rank = 0;
  int rem = s;
  for (std::size_t k = 0; k + 1 < n_; ++k) {
    const std::size_t m = n_ - k - 1;
    const int over = rem - a[k];
    if (over >= 1) rank += binom_[static_cast<std::size_t>(over - 1) + m][m];
    rem -= a[k];
  }
  return rank;
}

const std::vector<Exponents>& KoszulComplex::poly_table(int s) const {
  std::lock_guard lock(mutex_);
  auto& slot = poly_tables_[s];
  if (!slot) {
    auto table = std::make_unique<std::vector<Exponents>>();
    table->reserve(poly_count(s));
    Exponents a{};
    // Recursive enumeration in descending lexicographic order of a.
    auto rec = [&](auto&& self, std::size_t k, int rem) -> void {
      if (k + 1 == n_) {
        a[k] = static_cast<std::uint8_t>(rem);
        table->push_back(a);
        return;
      }
      for (int v = rem; v >= 0; --v) {
        a[k] = static_cast<std::uint8_t>(v);
        self(self, k + 1, rem - v);
      }
      a[k] = 0;
    };
    rec(rec, 0, s);
    slot = std::move(table);
  }
  return *slot;
}

const KoszulComplex::PolyMoves& KoszulComplex::poly_moves(int s) const {
  const auto& polys = poly_table(s);
  {
    std::lock_guard lock(mutex_);
    if (auto it = poly_moves_.find(s); it != poly_moves_.end()) return *it->second;
  }
  auto moves = std::make_unique<PolyMoves>();
  const std::size_t pc = polys.size();
  moves->shift.assign(pc * n_ * n_, kNoIndex);
  moves->raise.assign(pc * n_, kNoIndex);
  for (std::size_t idx = 0; idx < pc; ++idx) {
    Exponents a = polys[idx];
    for (std::size_t i = 0; i < n_; ++i) {
      if (s < kMaxHodge) {
        ++a[i];
        moves->raise[idx * n_ + i] = static_cast<std::uint32_t>(poly_rank(a, s + 1));
        --a[i];
      }
      if (!a[i]) continue;
      --a[i];
      for (std::size_t j = 0; j < n_; ++j) {
        ++a[j];
        moves->shift[(idx * n_ + i) * n_ + j] = static_cast<std::uint32_t>(poly_rank(a, s));
        --a[j];
      }
      ++a[i];
    }
  }
  std::lock_guard lock(mutex_);
  auto [it, fresh] = poly_moves_.emplace(s, std::move(moves));
  return *it->second;
}

std::size_t KoszulComplex::block_size(int s, int t) const {
  if (s < 0 || t < 0 || static_cast<std::size_t>(t) > n_) return 0;
  return subsets_[t].size() * poly_count(s);
}

Monomial KoszulComplex::element(int s, int t, std::size_t index) const {
  require_range(s, t, n_);
  const std::size_t pc = poly_count(s);
  if (index >= block_size(s, t)) throw DomainError("basis index outside block");
  Monomial m;
  m.exterior = subsets_[t][index / pc];
  m.poly = poly_table(s)[index % pc];
  return m;
}

std::size_t KoszulComplex::index_of(const Monomial& m) const {
  if (m.exterior >> n_) throw DomainError("monomial uses a generator outside the algebra");
  for (std::size_t k = n_; k < kMaxGenerators; ++k)
    if (m.poly[k]) throw DomainError("monomial uses a generator outside the algebra");
  const int s = m.s();
  return subset_rank_[m.exterior] * poly_count(s) + poly_rank(m.poly, s);
}

std::vector<Monomial> KoszulComplex::block_basis(int s, int t) const {
  require_range(s, t, n_);
  std::vector<Monomial> out;
  out.reserve(block_size(s, t));
  const auto& polys = poly_table(s);
  for (auto mask : subsets_[t])
    for (const auto& a : polys) out.push_back({mask, a});
  return out;
}

WeightVector KoszulComplex::weight_of(const Monomial& m) const {
  if (!g_.has_weights()) return {};
  const auto& w = g_.weights();
  WeightVector out(g_.weight_rank(), 0);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::int64_t mult = ((m.exterior >> i) & 1) + m.poly[i];
    if (mult)
      for (std::size_t c = 0; c < out.size(); ++c) out[c] += mult * w[i][c];
  }
  return out;
}

std::string KoszulComplex::describe(const Monomial& m) const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < n_; ++i)
    if ((m.exterior >> i) & 1) {
      out << (first ? "" : " ") << "x_" << g_.basis_names()[i];
      first = false;
    }
  for (std::size_t i = 0; i < n_; ++i)
    if (m.poly[i]) {
      out << (first ? "" : " ") << "y_" << g_.basis_names()[i];
      if (m.poly[i] > 1) out << '^' << int(m.poly[i]);
      first = false;
    }
  return first ? "1" : out.str();
}

const KoszulComplex::D0Table& KoszulComplex::d0_table() const {
  std::lock_guard lock(mutex_);
  if (d0_table_) return *d0_table_;
  auto table = std::make_unique<D0Table>();
  const std::size_t masks = std::size_t{1} << n_;
  table->offset.reserve(masks * (n_ + 1) + 1);
  for (std::uint32_t I = 0; I < masks; ++I) {
    table->offset.push_back(static_cast<std::uint32_t>(table->entries.size()));
    int pos = 0;
    for (std::uint32_t rest_bits = I; rest_bits; rest_bits &= rest_bits - 1, ++pos) {
      const std::uint32_t l = static_cast<std::uint32_t>(__builtin_ctz(rest_bits));
      const std::uint32_t rest = I & ~(1u << l);
      for (const auto& q : d0x_[l]) {
        if (rest & ((1u << q.j) | (1u << q.k))) continue;
        const int swaps =
            pos + __builtin_popcount(rest & ((1u << q.j) - 1)) + __builtin_popcount(rest & ((1u << q.k) - 1));
        table->entries.push_back({rest | (1u << q.j) | (1u << q.k), -1, (swaps & 1) ? -q.coef : q.coef});
      }
    }
    const int t = __builtin_popcount(I);
    for (std::size_t i = 0; i < n_; ++i) {
      table->offset.push_back(static_cast<std::uint32_t>(table->entries.size()));
      for (const auto& q : d0y_[i]) {
        if (I & (1u << q.k)) continue;
        const int swaps = t + __builtin_popcount(I >> q.k);
        table->entries.push_back({I | (1u << q.k), static_cast<std::int32_t>(q.j), (swaps & 1) ? -q.coef : q.coef});
      }
    }
  }
  table->offset.push_back(static_cast<std::uint32_t>(table->entries.size()));
  d0_table_ = std::move(table);
  return *d0_table_;
}

template <class Emit>
void KoszulComplex::for_each_d0(const D0Table& table, std::uint32_t I, const Exponents& a, Emit&& emit) const {
  const std::uint32_t* off = table.offset.data() + std::size_t{I} * (n_ + 1);
  const D0Table::Entry* e = table.entries.data();
  for (std::uint32_t k = off[0]; k < off[1]; ++k) emit(e[k].mask, -1, 0, e[k].coef);
  for (std::size_t i = 0; i < n_; ++i) {
    if (!a[i]) continue;
    for (std::uint32_t k = off[i + 1]; k < off[i + 2]; ++k)
      emit(e[k].mask, static_cast<int>(i), e[k].to, e[k].coef * a[i]);
  }
}

void KoszulComplex::d0_terms(const Monomial& m, std::vector<Term>& out) const {
  for_each_d0(m.exterior, m.poly, [&](std::uint32_t mask, int from, int to, std::int64_t coef) {
    Monomial r{mask, m.poly};
    if (from >= 0) {
      --r.poly[from];
      ++r.poly[to];
    }
    out.push_back({r, coef});
  });
}

void KoszulComplex::d1_terms(const Monomial& m, std::vector<Term>& out) const {
  int pos = 0;
  for (std::uint32_t bits = m.exterior; bits; bits &= bits - 1, ++pos) {
    const std::uint32_t l = static_cast<std::uint32_t>(__builtin_ctz(bits));
    Monomial r{m.exterior & ~(1u << l), m.poly};
    if (r.poly[l] == 255) throw DomainError("Hodge degree exceeds 255");
    ++r.poly[l];
    out.push_back({r, (pos & 1) ? -1 : 1});
  }
}

namespace {

// Collects one column at a time into a dense scratch row vector, then emits
// its nonzero rows in order after reducing into the ring. Avoids a global
// sort of all triplets.
class ColumnSink {
 public:
  ColumnSink(std::size_t rows, std::size_t cols, const Ring& ring)
      : rows_(rows), ring_(ring), acc_(rows, 0), stamp_(rows, kNoStamp) {
    col_ptr_.reserve(cols + 1);
    col_ptr_.push_back(0);
  }
  void push(std::uint32_t row, std::int64_t value) {
    if (stamp_[row] != column_) {
      stamp_[row] = column_;
      acc_[row] = 0;
      touched_.push_back(row);
    }
    if (__builtin_add_overflow(acc_[row], value, &acc_[row])) throw DomainError("integer overflow in differential");
  }
  void close_column() {
    for (std::size_t i = 1; i < touched_.size(); ++i)
      for (std::size_t k = i; k > 0 && touched_[k - 1] > touched_[k]; --k) std::swap(touched_[k - 1], touched_[k]);
    for (const auto row : touched_)
      if (const auto v = ring_.reduce(acc_[row]); v != 0) entries_.push_back({row, v});
    touched_.clear();
    ++column_;
    col_ptr_.push_back(entries_.size());
  }
  SparseMatrix finish() { return SparseMatrix::from_columns(rows_, std::move(col_ptr_), std::move(entries_)); }

 private:
  static constexpr std::uint32_t kNoStamp = 0xffffffffu;
  std::size_t rows_;
  const Ring& ring_;
  std::vector<std::int64_t> acc_;
  std::vector<std::uint32_t> stamp_, touched_;
  std::uint32_t column_ = 0;
  std::vector<std::size_t> col_ptr_;
  std::vector<MatrixEntry> entries_;
};

}  // namespace

template <class Gen>
SparseMatrix KoszulComplex::build(int s, int t, int ds, int dt, Gen&& gen) const {
  require_range(s, t, n_);
  const std::size_t cols = block_size(s, t), rows = block_size(s + ds, t + dt);
  if (cols == 0 || rows == 0) return SparseMatrix(rows, cols);
  ColumnSink sink(rows, cols, ring());
  const std::size_t pc = poly_count(s);
  for (std::size_t col = 0; col < cols; ++col) {
    gen(subsets_[t][col / pc], static_cast<std::uint32_t>(col % pc),
        [&](std::size_t row, std::int64_t coef) { sink.push(static_cast<std::uint32_t>(row), coef); });
    sink.close_column();
  }
  return sink.finish();
}

// Generators for the matrix builders: gen(mask, poly index, emit) calls
// emit(global target index, coefficient) per term.
auto KoszulComplex::d0_generator(int s) const {
  const auto& polys = poly_table(s);
  const auto& moves = poly_moves(s);
  const auto& table = d0_table();
  const std::size_t pc = polys.size();
  return [this, &polys, &moves, &table, pc](std::uint32_t mask, std::uint32_t p, auto&& emit) {
    for_each_d0(table, mask, polys[p], [&](std::uint32_t m, int from, int to, std::int64_t coef) {
      const std::uint32_t q =
          from < 0 ? p : moves.shift[(p * n_ + static_cast<std::size_t>(from)) * n_ + static_cast<std::size_t>(to)];
      emit(subset_rank_[m] * pc + q, coef);
    });
  };
}

auto KoszulComplex::d1_generator(int s) const {
  require_range(s + 1, 0, n_);
  const auto& moves = poly_moves(s);
  const std::size_t pc_next = poly_count(s + 1);
  return [this, &moves, pc_next](std::uint32_t mask, std::uint32_t p, auto&& emit) {
    int pos = 0;
    for (std::uint32_t bits = mask; bits; bits &= bits - 1, ++pos) {
      const std::uint32_t l = static_cast<std::uint32_t>(__builtin_ctz(bits));
      emit(subset_rank_[mask & ~(1u << l)] * pc_next + moves.raise[p * n_ + l], (pos & 1) ? -1 : 1);
    }
  };
}

SparseMatrix KoszulComplex::d0(int s, int t) const {
  require_range(s, t, n_);
  return build(s, t, 0, 1, d0_generator(s));
}

SparseMatrix KoszulComplex::d1(int s, int t) const {
  require_range(s, t, n_);
  return build(s, t, 1, -1, d1_generator(s));
}

const KoszulComplex::StrataData& KoszulComplex::strata_data(int s, int t) const {
  {
    std::lock_guard lock(mutex_);
    auto it = strata_.find({s, t});
    if (it != strata_.end()) return *it->second;
  }
  auto data = std::make_unique<StrataData>();
  const std::size_t size = block_size(s, t);
  data->local.assign(size, 0);
  if (size > 0) {
    if (!g_.has_weights()) {
      Stratum all;
      all.members.resize(size);
      for (std::size_t i = 0; i < size; ++i) all.members[i] = data->local[i] = static_cast<std::uint32_t>(i);
      data->strata.push_back(std::move(all));
    } else {
      std::map<WeightVector, std::vector<std::uint32_t>> groups;
      const auto& polys = poly_table(s);
      const std::size_t pc = polys.size();
      for (std::size_t i = 0; i < size; ++i)
        groups[weight_of({subsets_[t][i / pc], polys[i % pc]})].push_back(static_cast<std::uint32_t>(i));
      for (auto& [w, members] : groups) {
        for (std::size_t k = 0; k < members.size(); ++k) data->local[members[k]] = static_cast<std::uint32_t>(k);
        data->strata.push_back({w, std::move(members)});
      }
    }
    for (std::size_t k = 0; k < data->strata.size(); ++k) data->by_weight[data->strata[k].weight] = k;
  }
  std::lock_guard lock(mutex_);
  auto [it, fresh] = strata_.emplace(std::pair{s, t}, std::move(data));
  return *it->second;
}

const std::vector<Stratum>& KoszulComplex::strata(int s, int t) const { return strata_data(s, t).strata; }

std::size_t KoszulComplex::stratum_size(int s, int t, const WeightVector& w) const {
  if (block_size(s, t) == 0) return 0;
  const auto& d = strata_data(s, t);
  auto it = d.by_weight.find(w);
  return it == d.by_weight.end() ? 0 : d.strata[it->second].members.size();
}

template <class Gen>
SparseMatrix KoszulComplex::build_restricted(int s, int t, int ds, int dt, const WeightVector& w, Gen&& gen) const {
  const std::size_t cols = stratum_size(s, t, w), rows = stratum_size(s + ds, t + dt, w);
  if (cols == 0 || rows == 0) return SparseMatrix(rows, cols);
  const auto& src = strata_data(s, t);
  const auto& dst = strata_data(s + ds, t + dt);
  const auto& members = src.strata[src.by_weight.at(w)].members;
  const auto& target = dst.strata[dst.by_weight.at(w)].members;
  const std::size_t pc = poly_count(s);
  ColumnSink sink(rows, cols, ring());
  for (std::size_t col = 0; col < members.size(); ++col) {
    gen(subsets_[t][members[col] / pc], static_cast<std::uint32_t>(members[col] % pc),
        [&](std::size_t g, std::int64_t coef) {
          const std::uint32_t row = dst.local[g];
          if (row >= target.size() || target[row] != g)
            throw StructuralError("differential does not preserve weights at (" + std::to_string(s) + "," +
                                  std::to_string(t) + ")");
          sink.push(row, coef);
        });
    sink.close_column();
  }
  return sink.finish();
}

SparseMatrix KoszulComplex::d0(int s, int t, const WeightVector& w) const {
  require_range(s, t, n_);
  return build_restricted(s, t, 0, 1, w, d0_generator(s));
}

SparseMatrix KoszulComplex::d1(int s, int t, const WeightVector& w) const {
  require_range(s, t, n_);
  return build_restricted(s, t, 1, -1, w, d1_generator(s));
}

AxiomReport KoszulComplex::check_axioms(int max_hodge, std::size_t threads) const {
  AxiomReport total;
  if (max_hodge < 0) return total;
  require_range(max_hodge, 0, n_);
  const std::size_t n = n_;
  const D0Table& table = d0_table();

  // Per Hodge degree, the monomials y^p grouped by weight. A stratum member
  // x_mask y^p then sits at base[rank(mask)] + rank[p], so no block-sized
  // lookup tables are needed.
  struct Classes {
    std::vector<std::uint32_t> cls, rank, size;
    std::vector<std::vector<std::uint32_t>> members;
    std::vector<WeightVector> weight;
    std::map<WeightVector, std::uint32_t> id;
  };
  std::vector<WeightVector> mask_weight(std::size_t{1} << n);
  for (std::uint32_t m = 0; m < mask_weight.size(); ++m) mask_weight[m] = weight_of({m, {}});
  std::vector<Classes> classes(static_cast<std::size_t>(max_hodge) + 1);
  std::set<WeightVector> weights;
  for (int s = 0; s <= max_hodge; ++s) {
    auto& L = classes[s];
    const auto& polys = poly_table(s);
    for (const auto& a : polys) {
      const WeightVector w = weight_of({0, a});
      auto [it, fresh] = L.id.emplace(w, static_cast<std::uint32_t>(L.weight.size()));
      if (fresh) {
        L.weight.push_back(w);
        L.size.push_back(0);
        L.members.emplace_back();
      }
      L.cls.push_back(it->second);
      L.rank.push_back(L.size[it->second]++);
      L.members[it->second].push_back(static_cast<std::uint32_t>(L.cls.size() - 1));
    }
    for (std::size_t t = 0; t <= n; ++t) {
      const std::size_t size = block_size(s, static_cast<int>(t));
      ++total.blocks;
      total.columns += size;
      for (auto m : subsets_[t])
        for (const auto& w : L.weight) {
          WeightVector sum = w;
          for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += mask_weight[m][k];
          weights.insert(std::move(sum));
        }
    }
  }

  struct Index {
    std::vector<std::uint32_t> base, cls;
    std::uint32_t size = 0;
  };
  auto make_index = [&](int s, int t, const WeightVector& w) {
    Index ix;
    if (s > max_hodge || t < 0 || static_cast<std::size_t>(t) > n) return ix;
    const auto& L = classes[s];
    ix.base.assign(subsets_[t].size(), kNoIndex);
    ix.cls.assign(subsets_[t].size(), kNoIndex);
    WeightVector need = w;
    for (std::size_t r = 0; r < subsets_[t].size(); ++r) {
      const auto& mw = mask_weight[subsets_[t][r]];
      for (std::size_t k = 0; k < need.size(); ++k) need[k] = w[k] - mw[k];
      auto it = L.id.find(need);
      if (it == L.id.end()) continue;
      ix.base[r] = ix.size;
      ix.cls[r] = it->second;
      ix.size += L.size[it->second];
    }
    return ix;
  };
  // Restriction of d0 (ds = 0) or d1 (ds = 1) from stratum `src` of (s, t).
  auto build = [&](int s, int t, int ds, const Index& src, const Index& dst) {
    if (src.size == 0 || dst.size == 0) return SparseMatrix(dst.size, src.size);
    const auto& L = classes[s];
    const auto& T = classes[s + ds];
    const auto& polys = poly_table(s);
    const auto& moves = poly_moves(s);
    ColumnSink sink(dst.size, src.size, ring());
    auto push = [&](std::uint32_t mask, std::uint32_t q, std::int64_t coef) {
      const std::uint32_t r = subset_rank_[mask];
      if (dst.base[r] == kNoIndex || T.cls[q] != dst.cls[r])
        throw StructuralError("differential does not preserve weights at (" + std::to_string(s) + "," +
                              std::to_string(t) + ")");
      sink.push(dst.base[r] + T.rank[q], coef);
    };
    for (std::size_t r = 0; r < subsets_[t].size(); ++r) {
      if (src.base[r] == kNoIndex) continue;
      const std::uint32_t mask = subsets_[t][r];
      for (const std::uint32_t p : L.members[src.cls[r]]) {
        if (ds == 0) {
          for_each_d0(table, mask, polys[p], [&](std::uint32_t m, int from, int to, std::int64_t coef) {
            push(m, from < 0 ? p : moves.shift[(p * n + static_cast<std::size_t>(from)) * n + static_cast<std::size_t>(to)],
                 coef);
          });
        } else {
          int pos = 0;
          for (std::uint32_t bits = mask; bits; bits &= bits - 1, ++pos) {
            const std::uint32_t l = static_cast<std::uint32_t>(__builtin_ctz(bits));
            push(mask & ~(1u << l), moves.raise[p * n + l], (pos & 1) ? -1 : 1);
          }
        }
        sink.close_column();
      }
    }
    return sink.finish();
  };

  // d0 and d1 out of every t of one Hodge degree, within one weight.
  struct Level {
    std::vector<Index> index;
    std::vector<SparseMatrix> d0, d1;
  };
  auto level = [&](int s, const WeightVector& w, bool with_d1) {
    Level l;
    for (int t = 0; t <= static_cast<int>(n); ++t) l.index.push_back(make_index(s, t, w));
    std::vector<Index> up;
    if (with_d1)
      for (int t = 0; t <= static_cast<int>(n); ++t) up.push_back(make_index(s + 1, t, w));
    for (int t = 0; t <= static_cast<int>(n); ++t) {
      const std::size_t cols = l.index[t].size;
      l.d0.push_back(static_cast<std::size_t>(t) < n ? build(s, t, 0, l.index[t], l.index[t + 1]) : SparseMatrix(0, cols));
      // Without d1 the placeholder is never multiplied.
      l.d1.push_back(with_d1 && t > 0 ? build(s, t, 1, l.index[t], up[t - 1]) : SparseMatrix(0, cols));
    }
    return l;
  };

  const std::vector<WeightVector> order(weights.begin(), weights.end());
  std::vector<std::string> failures(order.size());
  detail::parallel_for(order.size(), threads, [&](std::size_t i) {
    const auto& w = order[i];
    auto where = [&](const char* what, int s, int t) {
      std::string out = std::string(what) + " fails on E^{" + std::to_string(s) + "," + std::to_string(t) + "}";
      if (!w.empty()) {
        out += " weight (";
        for (std::size_t k = 0; k < w.size(); ++k) out += (k ? "," : "") + std::to_string(w[k]);
        out += ")";
      }
      return out;
    };
    const int top = static_cast<int>(n);
    Level here = level(0, w, max_hodge >= 1);
    for (int s = 0; s <= max_hodge; ++s) {
      Level next;
      if (s + 1 <= max_hodge) next = level(s + 1, w, s + 2 <= max_hodge);
      for (int t = 0; t <= top; ++t) {
        if (here.index[t].size == 0) continue;
        if (t + 2 <= top && !product_is_zero(here.d0[t + 1], here.d0[t], ring()))
          return void(failures[i] = where("d0 d0 = 0", s, t));
        if (s + 2 <= max_hodge && t >= 2 && !product_is_zero(next.d1[t - 1], here.d1[t], ring()))
          return void(failures[i] = where("d1 d1 = 0", s, t));
        if (s + 1 <= max_hodge) {
          bool ok;
          if (t == 0)
            ok = product_is_zero(here.d1[1], here.d0[0], ring());
          else if (t == top)
            ok = product_is_zero(next.d0[top - 1], here.d1[top], ring());
          else
            ok = sum_of_products_is_zero(next.d0[t - 1], here.d1[t], here.d1[t + 1], here.d0[t], ring());
          if (!ok) return void(failures[i] = where("d0 d1 + d1 d0 = 0", s, t));
        }
      }
      here = std::move(next);
    }
  });
  for (const auto& f : failures)
    if (!f.empty()) {
      total.failure = f;
      break;
    }
  return total;
}

AxiomReport check_differential_axioms(const KoszulComplex& c, int max_hodge, std::size_t threads) {
  return c.check_axioms(max_hodge, threads);
}

}  // namespace lieseq
