#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "lieseq/ring.hpp"

namespace lieseq {

struct Triplet {
  std::uint32_t row;
  std::uint32_t col;
  std::int64_t value;
};

struct MatrixEntry {
  std::uint32_t row;
  std::int64_t value;
};

// Column-compressed integer matrix. Rows within a column are sorted, there
// are no duplicates and no stored zeros. Matrices over F_p hold residues.
class SparseMatrix {
 public:
  SparseMatrix() : col_ptr_(1, 0) {}
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), col_ptr_(cols + 1, 0) {}

  // Duplicates are summed; zero sums are dropped. Throws DomainError on
  // out-of-range indices.
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets);
  // Columns as consecutive ranges of `entries`, rows strictly increasing and
  // values nonzero within each column. Throws DomainError otherwise.
  static SparseMatrix from_columns(std::size_t rows, std::vector<std::size_t> col_ptr, std::vector<MatrixEntry> entries);
  static SparseMatrix identity(std::size_t n);
  static SparseMatrix from_dense(const std::vector<std::vector<std::int64_t>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return entries_.size(); }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  bool is_zero() const { return entries_.empty(); }

  std::span<const MatrixEntry> column(std::size_t j) const {
    return {entries_.data() + col_ptr_[j], entries_.data() + col_ptr_[j + 1]};
  }
  std::int64_t at(std::size_t i, std::size_t j) const;
  // Largest |entry| (0 for the zero matrix) and largest column length.
  std::uint64_t max_abs() const { return max_abs_; }
  std::size_t max_column_size() const;

  std::vector<Triplet> triplets() const;
  std::vector<std::vector<std::int64_t>> to_dense() const;
  SparseMatrix transpose() const;
  // Entrywise image in the ring (residues for F_p).
  SparseMatrix over(const Ring& ring) const;
  SparseMatrix permuted(const std::vector<std::uint32_t>& row_perm, const std::vector<std::uint32_t>& col_perm) const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> col_ptr_;
  std::vector<MatrixEntry> entries_;
  std::uint64_t max_abs_ = 0;
};

// Exact product a·b over the ring. Throws DomainError on shape mismatch.
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b, const Ring& ring);
// True iff a·b = 0 over the ring; avoids materialising the product.
bool product_is_zero(const SparseMatrix& a, const SparseMatrix& b, const Ring& ring);
// True iff a1·b1 + a2·b2 = 0 over the ring.
bool sum_of_products_is_zero(const SparseMatrix& a1, const SparseMatrix& b1, const SparseMatrix& a2,
                             const SparseMatrix& b2, const Ring& ring);
SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b, const Ring& ring);

// Places blocks into a larger matrix.
class BlockAssembler {
 public:
  BlockAssembler(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}
  void place(std::size_t row_offset, std::size_t col_offset, const SparseMatrix& block);
  SparseMatrix build() &&;

 private:
  std::size_t rows_, cols_;
  std::vector<Triplet> triplets_;
};

// "row col value" lines, 0-based, preceded by a "rows cols nnz" header.
void write_triplets(std::ostream& out, const SparseMatrix& m);
SparseMatrix read_triplets(std::istream& in);

struct VectorEntry {
  std::uint32_t index;
  mpq_class value;
};
using SparseVector = std::vector<VectorEntry>;

SparseVector apply(const SparseMatrix& m, const SparseVector& v, const Ring& ring);

}  // namespace lieseq
