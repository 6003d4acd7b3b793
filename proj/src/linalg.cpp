#include "taut/linalg.hpp"

#include <algorithm>
#include <map>

namespace taut {

SparseRow sparse_axpy(const SparseRow& a, const Q& s, const SparseRow& b) {
    SparseRow r;
    r.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            r.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            r.emplace_back(b[j].first, s * b[j].second);
            ++j;
        } else {
            Q c = a[i].second + s * b[j].second;
            if (sgn(c) != 0) r.emplace_back(a[i].first, c);
            ++i, ++j;
        }
    }
    return r;
}

void Echelon::reduce(SparseRow& row) const {
    size_t pos = 0;
    while (pos < row.size()) {
        int col = row[pos].first;
        int pr = pivot_of_col_[col];
        if (pr < 0) {
            ++pos;
            continue;
        }
        Q s = -row[pos].second;
        row = sparse_axpy(row, s, rows_[pr]);
    }
}

bool Echelon::insert(SparseRow row) {
    reduce(row);
    if (row.empty()) return false;
    Q inv = 1 / row.front().second;
    for (auto& [c, v] : row) v *= inv;
    pivot_of_col_[row.front().first] = (int)rows_.size();
    rows_.push_back(std::move(row));
    return true;
}

bool Echelon::contains(SparseRow row) const {
    reduce(row);
    return row.empty();
}

void Echelon::fully_reduce() {
    std::vector<int> order(rows_.size());
    for (size_t i = 0; i < rows_.size(); ++i) order[i] = (int)i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return rows_[a].front().first > rows_[b].front().first; });
    // Process from the last pivot backwards so rows used for elimination are already reduced.
    for (int r : order) {
        SparseRow& row = rows_[r];
        SparseRow head{row.front()};
        SparseRow tail(row.begin() + 1, row.end());
        reduce(tail);
        head.insert(head.end(), tail.begin(), tail.end());
        row = std::move(head);
    }
}

SparseRow dense_to_sparse(const DenseVec& v) {
    SparseRow r;
    for (int i = 0; i < (int)v.size(); ++i)
        if (sgn(v[i]) != 0) r.emplace_back(i, v[i]);
    return r;
}

DenseVec sparse_to_dense(const SparseRow& r, int n) {
    DenseVec v(n);
    for (auto& [c, x] : r) v[c] = x;
    return v;
}

int dense_rank(std::vector<DenseVec> rows) {
    if (rows.empty()) return 0;
    Echelon e((int)rows.front().size());
    int r = 0;
    for (auto& v : rows) r += e.insert(dense_to_sparse(v));
    return r;
}

std::vector<DenseVec> kernel_basis(const std::vector<DenseVec>& matrix, int ncols) {
    // Column vectors of the map live as rows of the transpose; solve via RREF of the matrix.
    Echelon e(ncols);
    for (auto& row : matrix) e.insert(dense_to_sparse(row));
    e.fully_reduce();
    std::vector<int> pivot_col_row(ncols, -1);
    for (int r = 0; r < e.rank(); ++r) pivot_col_row[e.rows()[r].front().first] = r;
    std::vector<DenseVec> out;
    for (int f = 0; f < ncols; ++f) {
        if (pivot_col_row[f] >= 0) continue;
        DenseVec v(ncols);
        v[f] = 1;
        for (int r = 0; r < e.rank(); ++r) {
            const auto& row = e.rows()[r];
            for (auto& [c, x] : row)
                if (c == f) v[row.front().first] = -x;
        }
        out.push_back(std::move(v));
    }
    return out;
}

SliceBasis rref(const std::vector<Polynomial>& rows, int D) {
    SliceBasis out;
    if (rows.empty()) return out;
    std::map<Monomial, int, MonoGreater> cols;
    TablePtr t;
    for (auto& p : rows) {
        if (!t) t = p.table();
        for (auto& tm : p.terms()) {
            if (tm.m.deg != D) throw std::invalid_argument("rref: row not homogeneous of degree " + std::to_string(D));
            cols.emplace(tm.m, 0);
        }
    }
    std::vector<Monomial> mons;
    int k = 0;
    for (auto& [m, idx] : cols) {
        idx = k++;
        mons.push_back(m);
    }
    Echelon e(k);
    for (auto& p : rows) {
        SparseRow r;
        for (auto& tm : p.terms()) r.emplace_back(cols[tm.m], tm.c);
        e.insert(std::move(r));
    }
    e.fully_reduce();
    std::vector<SparseRow> sorted = e.rows();
    std::sort(sorted.begin(), sorted.end(),
              [](const SparseRow& a, const SparseRow& b) { return a.front().first < b.front().first; });
    for (auto& r : sorted) {
        std::vector<Term> terms;
        for (auto& [c, x] : r) terms.push_back({mons[c], x});
        out.basis.push_back(Polynomial::from_terms(t, std::move(terms)));
    }
    out.rank = (int)out.basis.size();
    return out;
}

}  // namespace taut
