#pragma once

#include <string>

#include "drh/errors.hpp"

namespace drh {

/// Structural constants of a Damek-Ricci space S = N A with dim v = m and
/// dim z = k. Only the abelian family (k = 0, m even) and the Heisenberg
/// instance (m, k) = (2, 1) are supported.
class SpaceParams {
public:
    SpaceParams(int m, int k) : m_(m), k_(k) {
        const bool abelian = k == 0 && m > 0 && m % 2 == 0;
        const bool heisenberg = m == 2 && k == 1;
        if (!abelian && !heisenberg)
            throw UnsupportedSpace("unsupported Damek-Ricci instance (m=" + std::to_string(m) +
                                   ", k=" + std::to_string(k) + "); expected k=0 with even m, or (2,1)");
    }

    int m() const { return m_; }
    int k() const { return k_; }
    /// homogeneous dimension m/2 + k
    double Q() const { return 0.5 * m_ + k_; }
    double rho() const { return 0.5 * Q(); }
    double alpha() const { return 0.5 * (m_ + k_ - 1); }
    double beta() const { return 0.5 * (k_ - 1); }
    /// dimension of S as a manifold
    int dim() const { return m_ + k_ + 1; }

    std::string label() const { return "m" + std::to_string(m_) + "k" + std::to_string(k_); }

    friend bool operator==(const SpaceParams&, const SpaceParams&) = default;

private:
    int m_;
    int k_;
};

}  // namespace drh
