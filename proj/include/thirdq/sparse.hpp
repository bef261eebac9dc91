#ifndef THIRDQ_SPARSE_HPP
#define THIRDQ_SPARSE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace thirdq {

using cd = std::complex<double>;

/// Complex sparse matrix in compressed-row form over the joint hyper-Fock basis.
///
/// Rows and the column indices within each row are kept sorted, entries with
/// |value| <= prune_tol are dropped after every arithmetic operation, and all
/// kernels traverse the storage in a fixed order, so identical inputs always
/// produce bit-identical results.
class SparseOperator {
public:
    static constexpr double prune_tol = 1e-15;

    SparseOperator() : dim_(0), row_ptr_(1, 0) {}

    explicit SparseOperator(int dim) : dim_(dim), row_ptr_(static_cast<std::size_t>(dim) + 1, 0) {
        if (dim < 0) throw std::domain_error("SparseOperator: dim must be >= 0");
    }

    static SparseOperator identity(int dim) {
        SparseOperator m(dim);
        m.col_.resize(static_cast<std::size_t>(dim));
        m.val_.assign(static_cast<std::size_t>(dim), cd(1.0, 0.0));
        for (int i = 0; i < dim; ++i) {
            m.col_[static_cast<std::size_t>(i)] = i;
            m.row_ptr_[static_cast<std::size_t>(i) + 1] = i + 1;
        }
        return m;
    }

    /// Builds from (row, col, value) triplets; duplicates are summed.
    static SparseOperator from_triplets(int dim, std::vector<std::tuple<int, int, cd>> triplets) {
        SparseOperator m(dim);
        std::sort(triplets.begin(), triplets.end(),
                  [](const auto& a, const auto& b) {
                      return std::tie(std::get<0>(a), std::get<1>(a)) <
                             std::tie(std::get<0>(b), std::get<1>(b));
                  });
        int prev_r = -1;
        int prev_c = -1;
        for (const auto& [r, c, v] : triplets) {
            if (r < 0 || r >= dim || c < 0 || c >= dim)
                throw std::domain_error("SparseOperator::from_triplets: index out of range");
            if (r == prev_r && c == prev_c) {
                m.val_.back() += v;
                continue;
            }
            for (int rr = prev_r + 1; rr <= r; ++rr)
                m.row_ptr_[static_cast<std::size_t>(rr)] = static_cast<int>(m.col_.size());
            m.col_.push_back(c);
            m.val_.push_back(v);
            prev_r = r;
            prev_c = c;
        }
        for (int rr = prev_r + 1; rr <= dim; ++rr)
            m.row_ptr_[static_cast<std::size_t>(rr)] = static_cast<int>(m.col_.size());
        m.prune_in_place();
        return m;
    }

    int dim() const { return dim_; }
    std::size_t nnz() const { return val_.size(); }
    /// Number of entries a dense representation would hold (dim^2).
    std::size_t dense_capacity() const {
        return static_cast<std::size_t>(dim_) * static_cast<std::size_t>(dim_);
    }

    cd entry(int r, int c) const {
        const auto b = col_.begin() + row_ptr_[static_cast<std::size_t>(r)];
        const auto e = col_.begin() + row_ptr_[static_cast<std::size_t>(r) + 1];
        const auto it = std::lower_bound(b, e, c);
        if (it == e || *it != c) return cd(0.0, 0.0);
        return val_[static_cast<std::size_t>(it - col_.begin())];
    }

    /// Conjugate transpose.
    SparseOperator adjoint() const {
        SparseOperator out(dim_);
        out.col_.resize(nnz());
        out.val_.resize(nnz());
        std::vector<int> count(static_cast<std::size_t>(dim_) + 1, 0);
        for (int c : col_) count[static_cast<std::size_t>(c) + 1]++;
        for (int i = 0; i < dim_; ++i)
            count[static_cast<std::size_t>(i) + 1] += count[static_cast<std::size_t>(i)];
        out.row_ptr_ = count;
        std::vector<int> next = count;
        for (int r = 0; r < dim_; ++r) {
            for (int k = row_ptr_[static_cast<std::size_t>(r)];
                 k < row_ptr_[static_cast<std::size_t>(r) + 1]; ++k) {
                const int c = col_[static_cast<std::size_t>(k)];
                const int pos = next[static_cast<std::size_t>(c)]++;
                out.col_[static_cast<std::size_t>(pos)] = r;
                out.val_[static_cast<std::size_t>(pos)] = std::conj(val_[static_cast<std::size_t>(k)]);
            }
        }
        return out;
    }

    SparseOperator scaled(cd factor) const {
        SparseOperator out(dim_);
        out.col_.reserve(nnz());
        out.val_.reserve(nnz());
        for (int r = 0; r < dim_; ++r) {
            for (int k = row_ptr_[static_cast<std::size_t>(r)];
                 k < row_ptr_[static_cast<std::size_t>(r) + 1]; ++k) {
                const cd v = val_[static_cast<std::size_t>(k)] * factor;
                if (std::abs(v) > prune_tol) {
                    out.col_.push_back(col_[static_cast<std::size_t>(k)]);
                    out.val_.push_back(v);
                }
            }
            out.row_ptr_[static_cast<std::size_t>(r) + 1] = static_cast<int>(out.col_.size());
        }
        return out;
    }

    /// this + factor * other, with pattern merge and pruning.
    SparseOperator add_scaled(const SparseOperator& other, cd factor) const {
        require_same_dim(other);
        SparseOperator out(dim_);
        out.col_.reserve(nnz() + other.nnz());
        out.val_.reserve(nnz() + other.nnz());
        for (int r = 0; r < dim_; ++r) {
            int ka = row_ptr_[static_cast<std::size_t>(r)];
            const int ea = row_ptr_[static_cast<std::size_t>(r) + 1];
            int kb = other.row_ptr_[static_cast<std::size_t>(r)];
            const int eb = other.row_ptr_[static_cast<std::size_t>(r) + 1];
            while (ka < ea || kb < eb) {
                int c;
                cd v;
                if (kb >= eb || (ka < ea && col_[static_cast<std::size_t>(ka)] < other.col_[static_cast<std::size_t>(kb)])) {
                    c = col_[static_cast<std::size_t>(ka)];
                    v = val_[static_cast<std::size_t>(ka)];
                    ++ka;
                } else if (ka >= ea || other.col_[static_cast<std::size_t>(kb)] < col_[static_cast<std::size_t>(ka)]) {
                    c = other.col_[static_cast<std::size_t>(kb)];
                    v = factor * other.val_[static_cast<std::size_t>(kb)];
                    ++kb;
                } else {
                    c = col_[static_cast<std::size_t>(ka)];
                    v = val_[static_cast<std::size_t>(ka)] + factor * other.val_[static_cast<std::size_t>(kb)];
                    ++ka;
                    ++kb;
                }
                if (std::abs(v) > prune_tol) {
                    out.col_.push_back(c);
                    out.val_.push_back(v);
                }
            }
            out.row_ptr_[static_cast<std::size_t>(r) + 1] = static_cast<int>(out.col_.size());
        }
        return out;
    }

    SparseOperator operator+(const SparseOperator& other) const { return add_scaled(other, cd(1.0, 0.0)); }
    SparseOperator operator-(const SparseOperator& other) const { return add_scaled(other, cd(-1.0, 0.0)); }

    /// Sparse matrix product (Gustavson), sorted columns, pruned.
    SparseOperator operator*(const SparseOperator& other) const {
        require_same_dim(other);
        SparseOperator out(dim_);
        thread_local std::vector<cd> acc;
        thread_local std::vector<std::int64_t> mark;
        thread_local std::int64_t stamp = 0;
        if (acc.size() < static_cast<std::size_t>(dim_)) {
            acc.assign(static_cast<std::size_t>(dim_), cd(0.0, 0.0));
            mark.assign(static_cast<std::size_t>(dim_), -1);
            stamp = 0;
        }
        std::vector<int> cols_here;
        for (int r = 0; r < dim_; ++r) {
            ++stamp;
            cols_here.clear();
            for (int ka = row_ptr_[static_cast<std::size_t>(r)];
                 ka < row_ptr_[static_cast<std::size_t>(r) + 1]; ++ka) {
                const int mid = col_[static_cast<std::size_t>(ka)];
                const cd va = val_[static_cast<std::size_t>(ka)];
                for (int kb = other.row_ptr_[static_cast<std::size_t>(mid)];
                     kb < other.row_ptr_[static_cast<std::size_t>(mid) + 1]; ++kb) {
                    const int c = other.col_[static_cast<std::size_t>(kb)];
                    if (mark[static_cast<std::size_t>(c)] != stamp) {
                        mark[static_cast<std::size_t>(c)] = stamp;
                        acc[static_cast<std::size_t>(c)] = cd(0.0, 0.0);
                        cols_here.push_back(c);
                    }
                    acc[static_cast<std::size_t>(c)] += va * other.val_[static_cast<std::size_t>(kb)];
                }
            }
            std::sort(cols_here.begin(), cols_here.end());
            for (int c : cols_here) {
                const cd v = acc[static_cast<std::size_t>(c)];
                if (std::abs(v) > prune_tol) {
                    out.col_.push_back(c);
                    out.val_.push_back(v);
                }
            }
            out.row_ptr_[static_cast<std::size_t>(r) + 1] = static_cast<int>(out.col_.size());
        }
        return out;
    }

    /// y = M x
    std::vector<cd> apply(const std::vector<cd>& x) const {
        if (x.size() != static_cast<std::size_t>(dim_))
            throw std::domain_error("SparseOperator::apply: dimension mismatch");
        std::vector<cd> y(static_cast<std::size_t>(dim_), cd(0.0, 0.0));
        for (int r = 0; r < dim_; ++r) {
            cd s(0.0, 0.0);
            for (int k = row_ptr_[static_cast<std::size_t>(r)];
                 k < row_ptr_[static_cast<std::size_t>(r) + 1]; ++k)
                s += val_[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(col_[static_cast<std::size_t>(k)])];
            y[static_cast<std::size_t>(r)] = s;
        }
        return y;
    }

    double max_abs() const {
        double m = 0.0;
        for (const cd& v : val_) m = std::max(m, std::abs(v));
        return m;
    }

    bool all_finite() const {
        for (const cd& v : val_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }

    bool operator==(const SparseOperator& other) const {
        return dim_ == other.dim_ && row_ptr_ == other.row_ptr_ && col_ == other.col_ &&
               val_ == other.val_;
    }

    const std::vector<int>& row_ptr() const { return row_ptr_; }
    const std::vector<int>& cols() const { return col_; }
    const std::vector<cd>& values() const { return val_; }

private:
    void require_same_dim(const SparseOperator& other) const {
        if (dim_ != other.dim_) throw std::domain_error("SparseOperator: dimension mismatch");
    }

    void prune_in_place() {
        std::vector<int> new_ptr(static_cast<std::size_t>(dim_) + 1, 0);
        int w = 0;
        for (int r = 0; r < dim_; ++r) {
            new_ptr[static_cast<std::size_t>(r)] = w;
            for (int k = row_ptr_[static_cast<std::size_t>(r)];
                 k < row_ptr_[static_cast<std::size_t>(r) + 1]; ++k) {
                if (std::abs(val_[static_cast<std::size_t>(k)]) > prune_tol) {
                    col_[static_cast<std::size_t>(w)] = col_[static_cast<std::size_t>(k)];
                    val_[static_cast<std::size_t>(w)] = val_[static_cast<std::size_t>(k)];
                    ++w;
                }
            }
        }
        new_ptr[static_cast<std::size_t>(dim_)] = w;
        row_ptr_.swap(new_ptr);
        col_.resize(static_cast<std::size_t>(w));
        val_.resize(static_cast<std::size_t>(w));
    }

    int dim_;
    std::vector<int> row_ptr_;
    std::vector<int> col_;
    std::vector<cd> val_;
};

inline SparseOperator operator*(cd factor, const SparseOperator& m) { return m.scaled(factor); }

/// AB - BA, pruned.
inline SparseOperator commutator(const SparseOperator& a, const SparseOperator& b) {
    return a * b - b * a;
}

} // namespace thirdq

#endif
