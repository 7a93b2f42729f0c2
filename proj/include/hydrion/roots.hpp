#pragma once

#include "hydrion/tridiagonal.hpp"

#include <functional>
#include <string_view>
#include <vector>

namespace hydrion {

/// Ikebe matrix whose nonzero eigenvalues are the reciprocals of the zeros of the
/// regular Coulomb function F_L(eta, .). Unknowns are the expansion coefficients
/// F_{L+1}, F_{L+2}, ... of the L-recurrence, truncated at `order`.
/// Throws InvalidParameter for L < 0 or order < 20.
TridiagonalMatrix<double> ikebe_zero_matrix(int L, double eta, int order);

/// Same construction with F_L prepended, so that the nonzero eigenvalues are the
/// reciprocals of the critical points of F_L(eta, .).
TridiagonalMatrix<double> ikebe_critical_matrix(int L, double eta, int order);

/// Positive roots rho of F_0(eta, .) (or of its derivative) from an Ikebe matrix, in
/// ascending order, at most `count` of them.
std::vector<double> ikebe_positive_roots(const TridiagonalMatrix<double>& m, int count);

/// All sign-change roots of f on [lo, hi] (grid per default_grid_size, bisection to
/// 1e-10). Throws CountMismatch if their number differs from `expected`.
std::vector<double> bisection_roots(const std::function<double(double)>& f, double lo, double hi,
                                    int expected);

enum class RootMethod { Ikebe, Bisection };

std::string_view to_string(RootMethod method);

/// Default Ikebe truncation order.
inline constexpr int default_ikebe_order = 400;

/// Threshold sequences: gamma_seq from the E = +1 barrier function, big_gamma_seq from
/// the E = -1 one. Odd (1-based) indices are critical points, even indices zeros. Entry
/// 0 of each sequence (gamma_0 = Gamma_0 = 0) is implicit and not stored.
struct RootTables {
    std::vector<double> gamma_seq;
    std::vector<double> big_gamma_seq;
    int count = 0;
    RootMethod method = RootMethod::Ikebe;
    int order = default_ikebe_order;

    /// gamma_j for j >= 0 (gamma_0 = 0). Throws TableTooShort past the table.
    double gamma(int j) const;
    /// Gamma_n for n >= 0 (Gamma_0 = 0). Throws TableTooShort past the table.
    double big_gamma(int n) const;

    /// The j >= 1 with g in [gamma_{j-1}, gamma_j). Throws TableTooShort if g >= gamma_count.
    int j_index(double g) const;
    /// The n >= 0 with g in [Gamma_n, Gamma_{n+1}). Throws TableTooShort if g >= Gamma_count.
    int n_index(double g) const;

    /// Smallest k >= 1 with gamma_{n+k} > Gamma_n.
    int k_bound(int n) const;

    /// Distance from g to the nearest entry of either sequence.
    double distance_to_threshold(double g) const;
};

/// Builds `count` entries of each sequence. With RootMethod::Ikebe every entry is
/// cross-checked against the bisection tables and ValidationFailure is thrown on a
/// discrepancy above 1e-6.
RootTables build_root_tables(int count, RootMethod method = RootMethod::Ikebe,
                             int order = default_ikebe_order);

/// Largest |difference| between the corresponding entries of two tables.
double max_discrepancy(const RootTables& a, const RootTables& b);

}  // namespace hydrion
