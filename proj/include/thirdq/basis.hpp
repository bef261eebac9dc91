#ifndef THIRDQ_BASIS_HPP
#define THIRDQ_BASIS_HPP

#include <stdexcept>
#include <utility>

#include "thirdq/errors.hpp"

namespace thirdq {

/// The two beam-splitter modes.
enum class Mode { j = 0, k = 1 };

inline Mode other_mode(Mode m) { return m == Mode::j ? Mode::k : Mode::j; }

/// Single-mode basis in the one-or-zero-oscillaton truncation.
///
/// Slot 0 is |Z> (no oscillatons); slot n+1 is the Fock level |n> carrying
/// exactly one oscillaton, so the state vector has n_max + 2 elements.
struct ModeBasis {
    int n_max = 16;

    int dim() const { return n_max + 2; }

    static constexpr int z_slot = 0;

    int fock_slot(int n) const {
        if (n < 0 || n > n_max) throw std::domain_error("ModeBasis: Fock level out of range");
        return n + 1;
    }

    /// Level housed in a slot, or -1 for the Z slot.
    int level_of_slot(int slot) const {
        if (slot < 0 || slot >= dim()) throw std::domain_error("ModeBasis: slot out of range");
        return slot - 1;
    }
};

/// Two-mode product basis with the row-major single-index labeling
/// l = l_j * dim_k + l_k (mode j outer).
struct JointHyperBasis {
    ModeBasis mode_j;
    ModeBasis mode_k;

    explicit JointHyperBasis(int n_max = 16) : mode_j{n_max}, mode_k{n_max} {
        if (n_max < 0) throw config_error("JointHyperBasis: n_max must be >= 0");
    }

    JointHyperBasis(ModeBasis j, ModeBasis k) : mode_j(j), mode_k(k) {}

    int joint_dim() const { return mode_j.dim() * mode_k.dim(); }

    const ModeBasis& mode(Mode m) const { return m == Mode::j ? mode_j : mode_k; }

    int index(int l_j, int l_k) const {
        if (l_j < 0 || l_j >= mode_j.dim() || l_k < 0 || l_k >= mode_k.dim())
            throw std::domain_error("JointHyperBasis: slot out of range");
        return l_j * mode_k.dim() + l_k;
    }

    std::pair<int, int> unindex(int l) const {
        if (l < 0 || l >= joint_dim()) throw std::domain_error("JointHyperBasis: index out of range");
        return {l / mode_k.dim(), l % mode_k.dim()};
    }
};

} // namespace thirdq

#endif
