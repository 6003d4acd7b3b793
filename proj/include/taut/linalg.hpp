#pragma once

#include "taut/poly.hpp"

namespace taut {

// Sparse exact row: (column, value) with ascending columns.
using SparseRow = std::vector<std::pair<int, Q>>;
using DenseVec = std::vector<Q>;

// Reduced row echelon form over Q. Pivots are the first nonzero column of each row.
class Echelon {
public:
    explicit Echelon(int ncols = 0) : ncols_(ncols), pivot_of_col_(ncols, -1) {}

    int ncols() const { return ncols_; }
    int rank() const { return (int)rows_.size(); }
    const std::vector<SparseRow>& rows() const { return rows_; }
    int pivot_row(int col) const { return pivot_of_col_[col]; }

    // Reduces against the current basis; returns true if the row enlarged the span.
    bool insert(SparseRow row);
    void reduce(SparseRow& row) const;
    bool contains(SparseRow row) const;
    // Back-substitution so every pivot column is zero outside its row.
    void fully_reduce();

private:
    int ncols_;
    std::vector<SparseRow> rows_;
    std::vector<int> pivot_of_col_;
};

SparseRow sparse_axpy(const SparseRow& a, const Q& s, const SparseRow& b);  // a + s*b
SparseRow dense_to_sparse(const DenseVec& v);
DenseVec sparse_to_dense(const SparseRow& r, int n);
int dense_rank(std::vector<DenseVec> rows);
// Basis of the kernel of the linear map given by columns images (matrix is rows x cols).
std::vector<DenseVec> kernel_basis(const std::vector<DenseVec>& matrix, int ncols);

struct SliceBasis {
    std::vector<Polynomial> basis;
    int rank = 0;
};

// Reduced row-echelon basis of homogeneous rows of degree D.
SliceBasis rref(const std::vector<Polynomial>& rows, int D);

}  // namespace taut
