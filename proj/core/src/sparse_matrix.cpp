#include "lieseq/sparse_matrix.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <string>

#include "lieseq/error.hpp"

namespace lieseq {

namespace {

std::uint64_t magnitude(std::int64_t v) { return v < 0 ? 0 - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v); }

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw DomainError("integer overflow in sparse matrix arithmetic");
  return r;
}


}  // namespace

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets) {
  for (const auto& t : triplets)
    if (t.row >= rows || t.col >= cols)
      throw DomainError("triplet (" + std::to_string(t.row) + "," + std::to_string(t.col) +
                        ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  SparseMatrix m(rows, cols);
  m.entries_.reserve(triplets.size());
  std::size_t i = 0;
  for (std::size_t j = 0; j < cols; ++j) {
    m.col_ptr_[j] = m.entries_.size();
    while (i < triplets.size() && triplets[i].col == j) {
      std::uint32_t r = triplets[i].row;
      std::int64_t v = 0;
      while (i < triplets.size() && triplets[i].col == j && triplets[i].row == r) v = checked_add(v, triplets[i++].value);
      if (v != 0) {
        m.entries_.push_back({r, v});
        m.max_abs_ = std::max(m.max_abs_, magnitude(v));
      }
    }
  }
  m.col_ptr_[cols] = m.entries_.size();
  return m;
}

SparseMatrix SparseMatrix::from_columns(std::size_t rows, std::vector<std::size_t> col_ptr,
                                       std::vector<MatrixEntry> entries) {
  if (col_ptr.empty() || col_ptr.front() != 0 || col_ptr.back() != entries.size())
    throw DomainError("column pointers do not cover the entries");
  SparseMatrix m(rows, col_ptr.size() - 1);
  for (std::size_t j = 0; j + 1 < col_ptr.size(); ++j) {
    if (col_ptr[j] > col_ptr[j + 1]) throw DomainError("column pointers decrease");
    for (std::size_t k = col_ptr[j]; k < col_ptr[j + 1]; ++k) {
      if (entries[k].row >= rows || entries[k].value == 0 || (k > col_ptr[j] && entries[k - 1].row >= entries[k].row))
        throw DomainError("malformed column " + std::to_string(j));
      m.max_abs_ = std::max(m.max_abs_, magnitude(entries[k].value));
    }
  }
  m.col_ptr_ = std::move(col_ptr);
  m.entries_ = std::move(entries);
  return m;
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < n; ++i) t.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i), 1});
  return from_triplets(n, n, std::move(t));
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<std::int64_t>>& rows) {
  std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DomainError("ragged dense matrix");
    for (std::size_t j = 0; j < c; ++j)
      if (rows[i][j] != 0) t.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), rows[i][j]});
  }
  return from_triplets(r, c, std::move(t));
}

std::size_t SparseMatrix::max_column_size() const {
  std::size_t out = 0;
  for (std::size_t j = 0; j < cols_; ++j) out = std::max(out, col_ptr_[j + 1] - col_ptr_[j]);
  return out;
}

std::int64_t SparseMatrix::at(std::size_t i, std::size_t j) const {
  auto col = column(j);
  auto it = std::lower_bound(col.begin(), col.end(), i, [](const MatrixEntry& e, std::size_t r) { return e.row < r; });
  return it != col.end() && it->row == i ? it->value : 0;
}

std::vector<Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (std::size_t j = 0; j < cols_; ++j)
    for (const auto& e : column(j)) out.push_back({e.row, static_cast<std::uint32_t>(j), e.value});
  return out;
}

std::vector<std::vector<std::int64_t>> SparseMatrix::to_dense() const {
  std::vector<std::vector<std::int64_t>> d(rows_, std::vector<std::int64_t>(cols_, 0));
  for (std::size_t j = 0; j < cols_; ++j)
    for (const auto& e : column(j)) d[e.row][j] = e.value;
  return d;
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<Triplet> t;
  t.reserve(nnz());
  for (std::size_t j = 0; j < cols_; ++j)
    for (const auto& e : column(j)) t.push_back({static_cast<std::uint32_t>(j), e.row, e.value});
  return from_triplets(cols_, rows_, std::move(t));
}

SparseMatrix SparseMatrix::over(const Ring& ring) const {
  if (!ring.is_prime_field()) return *this;
  SparseMatrix m(rows_, cols_);
  m.entries_.reserve(entries_.size());
  for (std::size_t j = 0; j < cols_; ++j) {
    for (const auto& e : column(j))
      if (const auto v = ring.reduce(e.value); v != 0) {
        m.entries_.push_back({e.row, v});
        m.max_abs_ = std::max(m.max_abs_, magnitude(v));
      }
    m.col_ptr_[j + 1] = m.entries_.size();
  }
  return m;
}

SparseMatrix SparseMatrix::permuted(const std::vector<std::uint32_t>& row_perm,
                                    const std::vector<std::uint32_t>& col_perm) const {
  if (row_perm.size() != rows_ || col_perm.size() != cols_) throw DomainError("permutation size mismatch");
  std::vector<Triplet> t = triplets();
  for (auto& e : t) {
    e.row = row_perm[e.row];
    e.col = col_perm[e.col];
  }
  return from_triplets(rows_, cols_, std::move(t));
}

namespace {

// Column j of a·b accumulated into a dense scratch array.
template <class Visit>
void product_columns(const SparseMatrix& a, const SparseMatrix& b, const Ring& ring, Visit&& visit) {
  if (a.cols() != b.rows())
    throw DomainError("shape mismatch in product: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                      " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  std::vector<__int128> acc(a.rows(), 0);
  std::vector<std::uint32_t> touched;
  std::vector<char> mark(a.rows(), 0);
  const bool modular = ring.is_prime_field();
  const std::int64_t p = ring.characteristic();
  for (std::size_t j = 0; j < b.cols(); ++j) {
    touched.clear();
    for (const auto& eb : b.column(j)) {
      for (const auto& ea : a.column(eb.row)) {
        if (!mark[ea.row]) {
          mark[ea.row] = 1;
          touched.push_back(ea.row);
        }
        acc[ea.row] += static_cast<__int128>(ea.value) * eb.value;
        if (modular) acc[ea.row] %= p;
      }
    }
    std::sort(touched.begin(), touched.end());
    bool stop = false;
    for (auto r : touched) {
      __int128 v = acc[r];
      acc[r] = 0;
      mark[r] = 0;
      if (modular) {
        v %= p;
        if (v < 0) v += p;
      }
      if (v != 0 && !stop) {
        if (v > INT64_MAX || v < INT64_MIN) throw DomainError("integer overflow in matrix product");
        stop = !visit(static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(j), static_cast<std::int64_t>(v));
      }
    }
    if (stop) return;
  }
}

}  // namespace

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b, const Ring& ring) {
  std::vector<Triplet> t;
  product_columns(a, b, ring, [&](std::uint32_t r, std::uint32_t c, std::int64_t v) {
    t.push_back({r, c, v});
    return true;
  });
  return SparseMatrix::from_triplets(a.rows(), b.cols(), std::move(t));
}

namespace {

// Bounds on column 1-norms and lengths.
struct ColumnBounds {
  unsigned __int128 norm = 0;
  std::size_t length = 0;
};

ColumnBounds column_bounds(const SparseMatrix& m) {
  const std::size_t length = m.max_column_size();
  return {static_cast<unsigned __int128>(m.max_abs()) * length, length};
}

// Scratch accumulator for products that only ask whether a column vanishes.
// Acc must hold every partial sum; the caller picks it from column bounds.
template <class Acc>
class ZeroTest {
 public:
  ZeroTest(std::size_t rows, std::size_t max_terms, const Ring& ring)
      : acc_(rows, 0), touched_(max_terms), ring_(ring) {}

  void add_product_column(const SparseMatrix& a, const SparseMatrix& b, std::size_t j) {
    for (const auto& eb : b.column(j))
      for (const auto& ea : a.column(eb.row)) {
        // Rows may repeat in touched_; the flush clears each on first visit.
        touched_[count_++] = ea.row;
        acc_[ea.row] += static_cast<Acc>(ea.value) * eb.value;
      }
  }
  // Clears the scratch and reports whether the accumulated column is zero.
  bool flush_is_zero() {
    bool zero = true;
    const bool modular = ring_.is_prime_field();
    const Acc p = ring_.characteristic();
    for (std::size_t k = 0; k < count_; ++k) {
      const Acc v = acc_[touched_[k]];
      acc_[touched_[k]] = 0;
      if (v != 0 && (!modular || v % p != 0)) zero = false;
    }
    count_ = 0;
    return zero;
  }

 private:
  std::vector<Acc> acc_;
  std::vector<std::uint32_t> touched_;
  std::size_t count_ = 0;
  const Ring& ring_;
};

void require_product_shape(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows())
    throw DomainError("shape mismatch in product: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                      " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
}

// Runs fn(zero_test) with the narrowest accumulator that cannot overflow on
// sum_k a_k b_k, given the column bounds of each pair.
template <class Fn>
bool with_zero_test(std::size_t rows, const std::vector<std::pair<ColumnBounds, ColumnBounds>>& pairs,
                    const Ring& ring, Fn&& fn) {
  unsigned __int128 bound = 0;
  std::size_t terms = 0;
  bool wide = false;
  for (const auto& [a, b] : pairs) {
    // Norms are at most 2^63 * column length, so compare before multiplying.
    if (a.norm >> 62 || b.norm >> 62) wide = true;
    else bound += a.norm * b.norm;
    terms += a.length * b.length;
  }
  if (!wide && bound < (static_cast<unsigned __int128>(1) << 63)) {
    ZeroTest<std::int64_t> z(rows, terms, ring);
    return fn(z);
  }
  ZeroTest<__int128> z(rows, terms, ring);
  return fn(z);
}

}  // namespace

bool product_is_zero(const SparseMatrix& a, const SparseMatrix& b, const Ring& ring) {
  require_product_shape(a, b);
  return with_zero_test(a.rows(), {{column_bounds(a), column_bounds(b)}}, ring, [&](auto& z) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      z.add_product_column(a, b, j);
      if (!z.flush_is_zero()) return false;
    }
    return true;
  });
}

bool sum_of_products_is_zero(const SparseMatrix& a1, const SparseMatrix& b1, const SparseMatrix& a2,
                             const SparseMatrix& b2, const Ring& ring) {
  require_product_shape(a1, b1);
  require_product_shape(a2, b2);
  if (a1.rows() != a2.rows() || b1.cols() != b2.cols()) throw DomainError("shape mismatch in sum of products");
  return with_zero_test(
      a1.rows(), {{column_bounds(a1), column_bounds(b1)}, {column_bounds(a2), column_bounds(b2)}}, ring,
      [&](auto& z) {
        for (std::size_t j = 0; j < b1.cols(); ++j) {
          z.add_product_column(a1, b1, j);
          z.add_product_column(a2, b2, j);
          if (!z.flush_is_zero()) return false;
        }
        return true;
      });
}

SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b, const Ring& ring) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("shape mismatch in sum");
  std::vector<Triplet> t = a.triplets();
  for (auto& e : b.triplets()) t.push_back(e);
  return SparseMatrix::from_triplets(a.rows(), a.cols(), std::move(t)).over(ring);
}

void BlockAssembler::place(std::size_t row_offset, std::size_t col_offset, const SparseMatrix& block) {
  if (row_offset + block.rows() > rows_ || col_offset + block.cols() > cols_)
    throw DomainError("block does not fit in assembled matrix");
  for (std::size_t j = 0; j < block.cols(); ++j)
    for (const auto& e : block.column(j))
      triplets_.push_back({static_cast<std::uint32_t>(e.row + row_offset), static_cast<std::uint32_t>(j + col_offset), e.value});
}

SparseMatrix BlockAssembler::build() && { return SparseMatrix::from_triplets(rows_, cols_, std::move(triplets_)); }

void write_triplets(std::ostream& out, const SparseMatrix& m) {
  out << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
  for (const auto& t : m.triplets()) out << t.row << ' ' << t.col << ' ' << t.value << '\n';
}

SparseMatrix read_triplets(std::istream& in) {
  std::size_t rows, cols, nnz;
  if (!(in >> rows >> cols >> nnz)) throw ParseError("missing triplet header");
  std::vector<Triplet> t(nnz);
  for (auto& e : t)
    if (!(in >> e.row >> e.col >> e.value)) throw ParseError("truncated triplet stream");
  return SparseMatrix::from_triplets(rows, cols, std::move(t));
}

SparseVector apply(const SparseMatrix& m, const SparseVector& v, const Ring& ring) {
  std::map<std::uint32_t, mpq_class> acc;
  for (const auto& e : v) {
    if (e.index >= m.cols()) throw DomainError("vector index outside matrix");
    for (const auto& me : m.column(e.index)) acc[me.row] += e.value * mpq_class(mpz_class(static_cast<long>(me.value)));
  }
  SparseVector out;
  for (auto& [i, val] : acc) {
    mpq_class r = ring.normalize(val);
    if (r != 0) out.push_back({i, r});
  }
  return out;
}

}  // namespace lieseq
