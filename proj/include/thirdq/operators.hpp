#ifndef THIRDQ_OPERATORS_HPP
#define THIRDQ_OPERATORS_HPP

#include <cmath>
#include <tuple>
#include <vector>

#include "thirdq/basis.hpp"
#include "thirdq/hermite.hpp"
#include "thirdq/sparse.hpp"
#include "thirdq/states.hpp"

namespace thirdq {

/// Matrix representations of the third-quantized operators over the joint
/// basis. The per-level annihilators and creators are built once and cached;
/// everything else is assembled from them.
///
/// Truncation semantics: c_dag on an occupied level would leave the
/// one-oscillaton subspace, so that image is mapped to zero. Within the
/// truncated space c_dag_op is exactly the conjugate transpose of c_op.
class OperatorAlgebra {
public:
    explicit OperatorAlgebra(int n_max = 16) : basis_(n_max) { build_cache(); }

    explicit OperatorAlgebra(const JointHyperBasis& basis) : basis_(basis) { build_cache(); }

    const JointHyperBasis& basis() const { return basis_; }
    int dim() const { return basis_.joint_dim(); }
    int n_max(Mode m) const { return basis_.mode(m).n_max; }

    /// c_{m,n}: annihilates the oscillaton sitting in level n (F_n -> Z).
    const SparseOperator& c_op(Mode m, int n) const { return cache(m, n, false); }

    /// c_dag_{m,n}: creates an oscillaton in level n (Z -> F_n).
    const SparseOperator& c_dag_op(Mode m, int n) const { return cache(m, n, true); }

    const std::vector<SparseOperator>& c_ops(Mode m) const {
        return m == Mode::j ? c_j_ : c_k_;
    }

    /// Generalized lowering operator a' = sum_{n>=1} sqrt(n) c_dag_{n-1} c_n.
    SparseOperator a_prime(Mode m) const {
        SparseOperator sum(dim());
        for (int n = 1; n <= n_max(m); ++n)
            sum = sum.add_scaled(c_dag_op(m, n - 1) * c_op(m, n), cd(std::sqrt(static_cast<double>(n)), 0.0));
        return sum;
    }

    /// Generalized raising operator a'^dag = sum_{n} sqrt(n+1) c_dag_{n+1} c_n,
    /// truncated at n_max.
    SparseOperator a_prime_dag(Mode m) const {
        SparseOperator sum(dim());
        for (int n = 0; n < n_max(m); ++n)
            sum = sum.add_scaled(c_dag_op(m, n + 1) * c_op(m, n), cd(std::sqrt(n + 1.0), 0.0));
        return sum;
    }

    /// Per-level occupation operator N_{m,n} = c_dag_{m,n} c_{m,n} (diagonal).
    SparseOperator level_number_op(Mode m, int n) const { return c_dag_op(m, n) * c_op(m, n); }

    std::vector<SparseOperator> level_number_ops(Mode m) const {
        std::vector<SparseOperator> ops;
        ops.reserve(static_cast<std::size_t>(n_max(m)) + 1);
        for (int n = 0; n <= n_max(m); ++n) ops.push_back(level_number_op(m, n));
        return ops;
    }

    /// sum_n n N_{m,n}: photon number carried by the mode.
    SparseOperator photon_number_op(Mode m) const {
        SparseOperator sum(dim());
        for (int n = 1; n <= n_max(m); ++n)
            sum = sum.add_scaled(level_number_op(m, n), cd(static_cast<double>(n), 0.0));
        return sum;
    }

    /// sum_n N_{m,n}: number of oscillatons in the mode.
    SparseOperator oscillaton_number_op(Mode m) const {
        SparseOperator sum(dim());
        for (int n = 0; n <= n_max(m); ++n) sum = sum.add_scaled(level_number_op(m, n), cd(1.0, 0.0));
        return sum;
    }

private:
    void build_cache() {
        const int d = dim();
        auto build = [&](Mode m) {
            std::vector<SparseOperator> cs, cdags;
            const ModeBasis& mb = basis_.mode(m);
            const ModeBasis& ob = basis_.mode(other_mode(m));
            for (int n = 0; n <= mb.n_max; ++n) {
                std::vector<std::tuple<int, int, cd>> trips;
                trips.reserve(static_cast<std::size_t>(ob.dim()));
                for (int lo = 0; lo < ob.dim(); ++lo) {
                    const int row = m == Mode::j ? basis_.index(ModeBasis::z_slot, lo)
                                                 : basis_.index(lo, ModeBasis::z_slot);
                    const int col = m == Mode::j ? basis_.index(mb.fock_slot(n), lo)
                                                 : basis_.index(lo, mb.fock_slot(n));
                    trips.emplace_back(row, col, cd(1.0, 0.0));
                }
                cs.push_back(SparseOperator::from_triplets(d, trips));
                cdags.push_back(cs.back().adjoint());
            }
            if (m == Mode::j) {
                c_j_ = std::move(cs);
                c_dag_j_ = std::move(cdags);
            } else {
                c_k_ = std::move(cs);
                c_dag_k_ = std::move(cdags);
            }
        };
        build(Mode::j);
        build(Mode::k);
    }

    const SparseOperator& cache(Mode m, int n, bool dag) const {
        const auto& vec = dag ? (m == Mode::j ? c_dag_j_ : c_dag_k_)
                              : (m == Mode::j ? c_j_ : c_k_);
        if (n < 0 || n >= static_cast<int>(vec.size()))
            throw std::domain_error("OperatorAlgebra: level out of range");
        return vec[static_cast<std::size_t>(n)];
    }

    JointHyperBasis basis_;
    std::vector<SparseOperator> c_j_, c_dag_j_, c_k_, c_dag_k_;
};

/// Field operator psi(x) = sum_n phi_n(x) c_n assembled from a list of per-level
/// matrices. Passing time-evolved matrices yields the Heisenberg-picture psi(x, t).
inline SparseOperator field_op(double x, const std::vector<SparseOperator>& c_matrices) {
    if (c_matrices.empty()) throw std::domain_error("field_op: empty matrix list");
    SparseOperator sum(c_matrices.front().dim());
    for (std::size_t n = 0; n < c_matrices.size(); ++n)
        sum = sum.add_scaled(c_matrices[n], cd(eval_eigenfunction(static_cast<int>(n), x), 0.0));
    return sum;
}

inline SparseOperator field_op(const QuadGrid& grid, double x,
                               const std::vector<SparseOperator>& c_matrices) {
    if (!grid.contains(x)) throw std::domain_error("field_op: x outside the quadrature grid");
    return field_op(x, c_matrices);
}

/// Coherence operator C(x, Delta) = 1/2 psi^dag(x+Delta) psi(x-Delta) + h.c.
inline SparseOperator coherence_op(double x, double delta,
                                   const std::vector<SparseOperator>& c_matrices) {
    const SparseOperator plus = field_op(x + delta, c_matrices);
    const SparseOperator minus = field_op(x - delta, c_matrices);
    const SparseOperator half = cd(0.5, 0.0) * (plus.adjoint() * minus);
    return half + half.adjoint();
}

inline SparseOperator coherence_op(const QuadGrid& grid, double x, double delta,
                                   const std::vector<SparseOperator>& c_matrices) {
    if (!grid.contains(x + delta) || !grid.contains(x - delta))
        throw std::domain_error("coherence_op: x +/- delta outside the quadrature grid");
    return coherence_op(x, delta, c_matrices);
}

/// <psi| M |psi>
inline cd expectation(const SparseOperator& m, const HyperStateVector& psi) {
    const std::vector<cd> y = m.apply(psi.amplitudes);
    cd s(0.0, 0.0);
    for (std::size_t i = 0; i < y.size(); ++i) s += std::conj(psi.amplitudes[i]) * y[i];
    return s;
}

} // namespace thirdq

#endif
