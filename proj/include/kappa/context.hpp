#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kappa {

/// Variable groups of the shared symbol universe.
///
/// All commuting symbols live in one table: deformation components a_mu,
/// coordinates x_mu, derivative symbols d_mu (the normal-ordered right factor
/// of a Weyl operator), momentum vectors k/q/w, translation symbols v_mu,
/// tensor-slot derivative copies l/r/t for coproducts, and the flow time tau.
enum class VarKind : uint8_t {
    A = 0,   // deformation vector a_mu (graded, truncated at order N)
    X,       // coordinates x_mu (lower index)
    D,       // derivatives d_mu = \partial_mu
    K,       // momentum slot 1
    Q,       // momentum slot 2
    W,       // momentum slot 3 (associativity checks)
    V,       // translation symbols
    TL,      // tensor slot 1 derivatives
    TR,      // tensor slot 2 derivatives
    T3,      // tensor slot 3 derivatives
    Time,    // characteristic-flow parameter
};

constexpr int kVarKindCount = 11;

using VarId = uint8_t;

inline VarId var_id(VarKind kind, int comp) {
    return static_cast<VarId>(static_cast<int>(kind) * 16 + comp);
}
inline VarKind var_kind(VarId v) { return static_cast<VarKind>(v / 16); }
inline int var_comp(VarId v) { return v % 16; }

inline std::string var_name(VarId v) {
    static const char* prefix[kVarKindCount] = {"a", "x", "d", "k", "q", "w",
                                                "v", "l", "r", "t", "tau"};
    VarKind kind = var_kind(v);
    if (kind == VarKind::Time) return "tau";
    return std::string(prefix[static_cast<int>(kind)]) + std::to_string(var_comp(v));
}

/// Shared immutable configuration: spacetime dimension, truncation order and
/// the flat metric eta = diag(-1, 1, ..., 1).
class Context {
public:
    Context(int n, int order) : n_(n), order_(order) {
        if (n < 2 || n > 6) throw std::invalid_argument("Context: dimension must be in [2,6]");
        if (order < 0 || order > 4) throw std::invalid_argument("Context: order must be in [0,4]");
    }

    int dim() const { return n_; }
    int order() const { return order_; }

    /// Diagonal metric entry eta_{mu mu}; raising and lowering an index is
    /// multiplication by this sign.
    int eta(int mu) const {
        if (mu < 0 || mu >= n_) throw std::out_of_range("Context: index out of range");
        return mu == 0 ? -1 : 1;
    }

    bool operator==(const Context& o) const { return n_ == o.n_ && order_ == o.order_; }

private:
    int n_;
    int order_;
};

inline void require_same(const Context* a, const Context* b) {
    if (a != b && !(a && b && *a == *b))
        throw std::invalid_argument("symbol-table mismatch: operands from different contexts");
}

}  // namespace kappa
