#pragma once

// Finite-difference oracle for the gap eigenvalues of the reduced hamiltonian
//   H = [[1 - V, -d/ds], [d/ds, -1 - V]],  V(s) = (gamma/2) exp(-|s|),
// on [-L, L] with u(+-L) = 0. u lives on the nodes, v on the half nodes, so the
// interleaved matrix (u0, v1/2, u1, ..., un) is symmetric tridiagonal with no fermion
// doubling. Eigenvalues in (-1, 1) come from Sturm-count bisection; two grids are
// combined by Richardson extrapolation (the scheme is second order).
// Independent of the shooting solver: no Pruefer variables, no ODE integrator.

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

struct FdMatrix {
    std::vector<double> diag;
    std::vector<double> off;  // squared off-diagonal entries are all that Sturm needs
};

inline FdMatrix fd_hamiltonian(double gamma, double half_length, int cells) {
    const double h = 2.0 * half_length / cells;
    auto potential = [gamma](double s) { return 0.5 * gamma * std::exp(-std::abs(s)); };
    FdMatrix m;
    // u_1 .. u_{cells-1} interior nodes, v_{1/2} .. v_{cells-1/2} half nodes
    for (int i = 0; i < cells; ++i) {
        const double s_half = -half_length + (i + 0.5) * h;
        if (i > 0) {
            const double s_node = -half_length + i * h;
            m.diag.push_back(1.0 - potential(s_node));
            m.off.push_back(1.0 / (h * h));
        }
        m.diag.push_back(-1.0 - potential(s_half));
        if (i + 1 < cells) m.off.push_back(1.0 / (h * h));
    }
    return m;
}

/// Number of eigenvalues below x.
inline std::size_t sturm_count(const FdMatrix& m, double x) {
    std::size_t count = 0;
    double d = 1.0;
    for (std::size_t i = 0; i < m.diag.size(); ++i) {
        d = m.diag[i] - x - (i > 0 ? m.off[i - 1] / d : 0.0);
        if (d == 0.0) d = 1e-300;
        if (d < 0.0) ++count;
    }
    return count;
}

inline std::vector<double> gap_eigenvalues_on_grid(double gamma, double half_length, int cells) {
    const FdMatrix m = fd_hamiltonian(gamma, half_length, cells);
    const double lo = -1.0 + 1e-9;
    const double hi = 1.0 - 1e-9;
    const std::size_t below_lo = sturm_count(m, lo);
    const std::size_t below_hi = sturm_count(m, hi);
    std::vector<double> out;
    for (std::size_t k = below_lo; k < below_hi; ++k) {
        double a = lo;
        double b = hi;
        for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
            const double mid = 0.5 * (a + b);
            if (sturm_count(m, mid) > k) b = mid; else a = mid;
        }
        out.push_back(0.5 * (a + b));
    }
    return out;
}

/// Richardson-extrapolated gap eigenvalues, ascending. Only levels present on both grids
/// are returned.
inline std::vector<double> gap_eigenvalues(double gamma, double half_length = 40.0,
                                           int cells = 20000) {
    const auto coarse = gap_eigenvalues_on_grid(gamma, half_length, cells);
    const auto fine = gap_eigenvalues_on_grid(gamma, half_length, 2 * cells);
    std::vector<double> out;
    const std::size_t n = std::min(coarse.size(), fine.size());
    // align from the top of the gap: near-continuum levels are the ones that can be lost
    for (std::size_t i = 0; i < n; ++i) {
        const double c = coarse[coarse.size() - n + i];
        const double f = fine[fine.size() - n + i];
        out.push_back((4.0 * f - c) / 3.0);
    }
    return out;
}

}  // namespace oracle
