#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <vector>

#include "nlfem/errors.hpp"

namespace nlfem {

/// Coefficient vector over the discontinuous P1 space, indexed by
/// dof = 3*cell + local vertex.
using DofVector = std::vector<double>;

constexpr int dof_index(int cell, int local) { return 3 * cell + local; }

/// Symmetric sparse operator in CSR with a fixed block pattern (3x3 blocks
/// per interacting cell pair).  Column indices are strictly increasing
/// within each row.
class SparseMatrix {
public:
    SparseMatrix() = default;

    /// Pattern from per-cell neighbor lists (each list sorted, including the
    /// cell itself).
    static SparseMatrix from_block_pattern(const std::vector<std::vector<int>>& neighbors) {
        SparseMatrix m;
        int ncells = static_cast<int>(neighbors.size());
        m.n_ = 3 * ncells;
        m.row_ptr_.assign(static_cast<std::size_t>(m.n_) + 1, 0);
        for (int i = 0; i < ncells; ++i) {
            int row_len = 3 * static_cast<int>(neighbors[static_cast<std::size_t>(i)].size());
            for (int k = 0; k < 3; ++k)
                m.row_ptr_[static_cast<std::size_t>(dof_index(i, k)) + 1] = row_len;
        }
        for (std::size_t r = 0; r < static_cast<std::size_t>(m.n_); ++r)
            m.row_ptr_[r + 1] += m.row_ptr_[r];
        m.col_idx_.resize(static_cast<std::size_t>(m.row_ptr_.back()));
        m.vals_.assign(m.col_idx_.size(), 0.0);
        for (int i = 0; i < ncells; ++i) {
            for (int k = 0; k < 3; ++k) {
                std::size_t p = static_cast<std::size_t>(
                    m.row_ptr_[static_cast<std::size_t>(dof_index(i, k))]);
                for (int j : neighbors[static_cast<std::size_t>(i)])
                    for (int l = 0; l < 3; ++l) m.col_idx_[p++] = dof_index(j, l);
            }
        }
        return m;
    }

    int size() const { return n_; }
    const std::vector<int>& row_ptr() const { return row_ptr_; }
    const std::vector<int>& col_idx() const { return col_idx_; }
    const std::vector<double>& values() const { return vals_; }
    std::vector<double>& values() { return vals_; }

    /// Reference to a stored entry; the (row, col) slot must exist in the pattern.
    double& at(int row, int col) {
        int lo = row_ptr_[static_cast<std::size_t>(row)];
        int hi = row_ptr_[static_cast<std::size_t>(row) + 1];
        auto it = std::lower_bound(col_idx_.begin() + lo, col_idx_.begin() + hi, col);
        if (it == col_idx_.begin() + hi || *it != col)
            throw std::out_of_range("SparseMatrix::at: entry not in pattern");
        return vals_[static_cast<std::size_t>(it - col_idx_.begin())];
    }

    double get(int row, int col) const {
        int lo = row_ptr_[static_cast<std::size_t>(row)];
        int hi = row_ptr_[static_cast<std::size_t>(row) + 1];
        auto it = std::lower_bound(col_idx_.begin() + lo, col_idx_.begin() + hi, col);
        if (it == col_idx_.begin() + hi || *it != col) return 0.0;
        return vals_[static_cast<std::size_t>(it - col_idx_.begin())];
    }

    bool has_entry(int row, int col) const {
        int lo = row_ptr_[static_cast<std::size_t>(row)];
        int hi = row_ptr_[static_cast<std::size_t>(row) + 1];
        return std::binary_search(col_idx_.begin() + lo, col_idx_.begin() + hi, col);
    }

    /// y = A x with fixed per-row summation order.
    void apply(const DofVector& x, DofVector& y) const {
        y.assign(static_cast<std::size_t>(n_), 0.0);
        for (int r = 0; r < n_; ++r) {
            double s = 0.0;
            for (int p = row_ptr_[static_cast<std::size_t>(r)];
                 p < row_ptr_[static_cast<std::size_t>(r) + 1]; ++p)
                s += vals_[static_cast<std::size_t>(p)] *
                     x[static_cast<std::size_t>(col_idx_[static_cast<std::size_t>(p)])];
            y[static_cast<std::size_t>(r)] = s;
        }
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : vals_) m = std::max(m, std::abs(v));
        return m;
    }

    /// max |A - A^T| over the stored pattern.
    double symmetry_error() const {
        double err = 0.0;
        for (int r = 0; r < n_; ++r)
            for (int p = row_ptr_[static_cast<std::size_t>(r)];
                 p < row_ptr_[static_cast<std::size_t>(r) + 1]; ++p) {
                int c = col_idx_[static_cast<std::size_t>(p)];
                if (c < r) continue;
                err = std::max(err,
                               std::abs(vals_[static_cast<std::size_t>(p)] - get(c, r)));
            }
        return err;
    }

    SparseMatrix& operator+=(const SparseMatrix& other) {
        // identical patterns assumed (assembled over the same mesh/horizon)
        for (std::size_t i = 0; i < vals_.size(); ++i) vals_[i] += other.vals_[i];
        return *this;
    }

    /// Matrix Market coordinate format, symmetric storage (lower triangle).
    void write_matrix_market(std::ostream& out) const {
        std::size_t nnz = 0;
        for (int r = 0; r < n_; ++r)
            for (int p = row_ptr_[static_cast<std::size_t>(r)];
                 p < row_ptr_[static_cast<std::size_t>(r) + 1]; ++p)
                if (col_idx_[static_cast<std::size_t>(p)] <= r) ++nnz;
        out << "%%MatrixMarket matrix coordinate real symmetric\n";
        out << n_ << ' ' << n_ << ' ' << nnz << '\n';
        char buf[64];
        for (int r = 0; r < n_; ++r)
            for (int p = row_ptr_[static_cast<std::size_t>(r)];
                 p < row_ptr_[static_cast<std::size_t>(r) + 1]; ++p) {
                int c = col_idx_[static_cast<std::size_t>(p)];
                if (c > r) continue;
                std::snprintf(buf, sizeof buf, "%d %d %.17g\n", r + 1, c + 1,
                              vals_[static_cast<std::size_t>(p)]);
                out << buf;
            }
    }

private:
    int n_ = 0;
    std::vector<int> row_ptr_{0};
    std::vector<int> col_idx_;
    std::vector<double> vals_;
};

inline void write_vector(const DofVector& v, std::ostream& out) {
    out << "# dof (cell,local)\n";
    char buf[48];
    for (double x : v) {
        std::snprintf(buf, sizeof buf, "%.17g\n", x);
        out << buf;
    }
}

} // namespace nlfem
