#include "hydrion/roots.hpp"

#include "hydrion/error.hpp"
#include "hydrion/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

namespace hydrion {

namespace {

constexpr double bisection_tolerance = 1e-10;
constexpr double cross_check_tolerance = 1e-6;
// Left end of the scan; the barrier functions vanish like r at the origin while their
// derivatives tend to 1, so neither has a root in (0, scan_start].
constexpr double scan_start = 1e-6;

void check_matrix_args(int L, int order) {
    if (L < 0) throw InvalidParameter("Ikebe matrix needs L >= 0");
    if (order < 20) throw InvalidParameter("Ikebe matrix needs order >= 20");
}

double off_diagonal_entry(int k, double eta) {
    const double kp = k + 1.0;
    return std::sqrt(kp * kp + eta * eta) / (kp * std::sqrt((2.0 * k + 1.0) * (2.0 * k + 3.0)));
}

double refine(const std::function<double(double)>& f, double lo, double hi) {
    double f_lo = f(lo);
    while (hi - lo > bisection_tolerance) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct BarrierRoots {
    std::vector<double> zeros;
    std::vector<double> critical_points;
};

// Scans the barrier function and its derivative together on the default grid density
// (200 points per unit length) until enough of each have been bracketed, then refines every bracket by bisection.
BarrierRoots scan_barrier_roots(EnergySign sign, int zeros_needed, int critical_needed) {
    const auto value = [sign](double r) { return threshold_function(sign, r); };
    const auto slope = [sign](double r) { return threshold_function_derivative(sign, r); };
    const double step = 1.0 / 200.0;

    BarrierRoots out;
    std::vector<std::pair<double, double>> zero_brackets;
    std::vector<std::pair<double, double>> critical_brackets;
    double r = scan_start;
    RealValueAndDerivative prev = threshold_function_pair(sign, r);
    auto done = [&] {
        return static_cast<int>(zero_brackets.size()) >= zeros_needed &&
               static_cast<int>(critical_brackets.size()) >= critical_needed;
    };
    for (std::int64_t i = 1; !done(); ++i) {
        // grid points as multiples of the step keep the scan free of accumulated drift
        const double next = scan_start + static_cast<double>(i) * step;
        const RealValueAndDerivative cur = threshold_function_pair(sign, next);
        if ((prev.value > 0.0) != (cur.value > 0.0)) zero_brackets.emplace_back(r, next);
        if ((prev.derivative > 0.0) != (cur.derivative > 0.0)) critical_brackets.emplace_back(r, next);
        prev = cur;
        r = next;
    }
    zero_brackets.resize(static_cast<std::size_t>(zeros_needed));
    critical_brackets.resize(static_cast<std::size_t>(critical_needed));
    for (const auto& [lo, hi] : zero_brackets) out.zeros.push_back(refine(value, lo, hi));
    for (const auto& [lo, hi] : critical_brackets) {
        out.critical_points.push_back(refine(slope, lo, hi));
    }
    return out;
}

std::vector<double> interleave(const std::vector<double>& critical, const std::vector<double>& zeros,
                               int count) {
    std::vector<double> seq;
    seq.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const auto half = static_cast<std::size_t>(i / 2);
        seq.push_back(i % 2 == 0 ? critical.at(half) : zeros.at(half));
    }
    return seq;
}

void check_strictly_increasing(const std::vector<double>& seq, const char* name) {
    for (std::size_t i = 1; i < seq.size(); ++i) {
        if (!(seq[i] > seq[i - 1])) {
            throw ValidationFailure(std::string(name) + " is not strictly increasing at index " +
                                    std::to_string(i + 1));
        }
    }
}

RootTables bisection_tables(int count) {
    const int critical_needed = (count + 1) / 2;
    const int zeros_needed = count / 2;
    const BarrierRoots plus = scan_barrier_roots(EnergySign::Plus, zeros_needed, critical_needed);
    const BarrierRoots minus = scan_barrier_roots(EnergySign::Minus, zeros_needed, critical_needed);
    RootTables t;
    t.gamma_seq = interleave(plus.critical_points, plus.zeros, count);
    t.big_gamma_seq = interleave(minus.critical_points, minus.zeros, count);
    t.count = count;
    t.method = RootMethod::Bisection;
    t.order = 0;
    return t;
}

RootTables ikebe_tables(int count, int order) {
    const int critical_needed = (count + 1) / 2;
    const int zeros_needed = count / 2;
    auto family = [&](double eta) {
        // zeros and critical points of F_0(eta, rho) in rho; r = 2 rho
        auto zeros = ikebe_positive_roots(ikebe_zero_matrix(0, eta, order), zeros_needed);
        auto crit = ikebe_positive_roots(ikebe_critical_matrix(0, eta, order), critical_needed);
        if (static_cast<int>(zeros.size()) < zeros_needed ||
            static_cast<int>(crit.size()) < critical_needed) {
            throw TableTooShort("Ikebe order " + std::to_string(order) + " too small for " +
                                std::to_string(count) + " entries");
        }
        for (double& z : zeros) z *= 2.0;
        for (double& c : crit) c *= 2.0;
        return interleave(crit, zeros, count);
    };
    RootTables t;
    // E = +1 barrier: kappa = -i = i eta, so eta = -1; E = -1: eta = +1.
    t.gamma_seq = family(-1.0);
    t.big_gamma_seq = family(1.0);
    t.count = count;
    t.method = RootMethod::Ikebe;
    t.order = order;
    return t;
}

// Zero-matrix entries without the public order check (the critical matrix embeds one
// of order - 1).
TridiagonalMatrix<double> zero_matrix_entries(int L, double eta, int order) {
    TridiagonalMatrix<double>::Vector diag(order);
    TridiagonalMatrix<double>::Vector off(order - 1);
    for (int i = 0; i < order; ++i) {
        const double k = L + 1.0 + i;
        diag(i) = -eta / (k * (k + 1.0));
        if (i + 1 < order) off(i) = off_diagonal_entry(L + 1 + i, eta);
    }
    return {std::move(diag), std::move(off)};
}

}  // namespace

TridiagonalMatrix<double> ikebe_zero_matrix(int L, double eta, int order) {
    check_matrix_args(L, order);
    return zero_matrix_entries(L, eta, order);
}

TridiagonalMatrix<double> ikebe_critical_matrix(int L, double eta, int order) {
    check_matrix_args(L, order);
    const auto tail = zero_matrix_entries(L, eta, order - 1);
    TridiagonalMatrix<double>::Vector diag(order);
    TridiagonalMatrix<double>::Vector off(order - 1);
    const double lp = L + 1.0;
    diag(0) = -eta / (lp * lp);
    off(0) = std::sqrt(lp * lp + eta * eta) / (lp * std::sqrt(lp * (2.0 * L + 3.0)));
    diag.tail(order - 1) = tail.diagonal();
    off.tail(order - 2) = tail.off_diagonal();
    return {std::move(diag), std::move(off)};
}

std::vector<double> ikebe_positive_roots(const TridiagonalMatrix<double>& m, int count) {
    const auto eigenvalues = symmetric_tridiagonal_eigenvalues(m);
    // largest positive eigenvalues give the smallest positive roots
    std::vector<double> roots;
    for (Eigen::Index i = eigenvalues.size() - 1; i >= 0; --i) {
        if (!(eigenvalues(i) > 0.0) || static_cast<int>(roots.size()) >= count) break;
        roots.push_back(1.0 / eigenvalues(i));
    }
    return roots;
}

std::vector<double> bisection_roots(const std::function<double(double)>& f, double lo, double hi,
                                    int expected) {
    auto roots = sign_change_roots(f, lo, hi, default_grid_size(lo, hi));
    if (static_cast<int>(roots.size()) != expected) {
        throw CountMismatch("expected " + std::to_string(expected) + " roots on [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + "], found " +
                            std::to_string(roots.size()));
    }
    return roots;
}

std::string_view to_string(RootMethod method) {
    return method == RootMethod::Ikebe ? "ikebe" : "bisection";
}

double RootTables::gamma(int j) const {
    if (j < 0) throw InvalidParameter("table index must be non-negative");
    if (j == 0) return 0.0;
    if (j > static_cast<int>(gamma_seq.size())) {
        throw TableTooShort("gamma_" + std::to_string(j) + " is past the table");
    }
    return gamma_seq[static_cast<std::size_t>(j - 1)];
}

double RootTables::big_gamma(int n) const {
    if (n < 0) throw InvalidParameter("table index must be non-negative");
    if (n == 0) return 0.0;
    if (n > static_cast<int>(big_gamma_seq.size())) {
        throw TableTooShort("Gamma_" + std::to_string(n) + " is past the table");
    }
    return big_gamma_seq[static_cast<std::size_t>(n - 1)];
}

int RootTables::j_index(double g) const {
    if (gamma_seq.empty() || g >= gamma_seq.back()) {
        throw TableTooShort("gamma beyond the last tabulated gamma_j");
    }
    return 1 + static_cast<int>(std::upper_bound(gamma_seq.begin(), gamma_seq.end(), g) -
                                gamma_seq.begin());
}

int RootTables::n_index(double g) const {
    if (big_gamma_seq.empty() || g >= big_gamma_seq.back()) {
        throw TableTooShort("gamma beyond the last tabulated Gamma_n");
    }
    return static_cast<int>(std::upper_bound(big_gamma_seq.begin(), big_gamma_seq.end(), g) -
                            big_gamma_seq.begin());
}

int RootTables::k_bound(int n) const {
    const double bg = big_gamma(n);
    for (int k = 1;; ++k) {
        if (gamma(n + k) > bg) return k;
    }
}

double RootTables::distance_to_threshold(double g) const {
    double d = std::abs(g);
    for (double x : gamma_seq) d = std::min(d, std::abs(g - x));
    for (double x : big_gamma_seq) d = std::min(d, std::abs(g - x));
    return d;
}

double max_discrepancy(const RootTables& a, const RootTables& b) {
    const std::size_t n = std::min(a.gamma_seq.size(), b.gamma_seq.size());
    const std::size_t m = std::min(a.big_gamma_seq.size(), b.big_gamma_seq.size());
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(a.gamma_seq[i] - b.gamma_seq[i]));
    for (std::size_t i = 0; i < m; ++i) {
        d = std::max(d, std::abs(a.big_gamma_seq[i] - b.big_gamma_seq[i]));
    }
    return d;
}

RootTables build_root_tables(int count, RootMethod method, int order) {
    if (count < 1) throw InvalidParameter("root table needs count >= 1");
    if (method == RootMethod::Bisection) {
        auto t = bisection_tables(count);
        check_strictly_increasing(t.gamma_seq, "gamma sequence");
        check_strictly_increasing(t.big_gamma_seq, "Gamma sequence");
        return t;
    }
    auto t = ikebe_tables(count, order);
    check_strictly_increasing(t.gamma_seq, "gamma sequence");
    check_strictly_increasing(t.big_gamma_seq, "Gamma sequence");
    const auto reference = bisection_tables(count);
    const double d = max_discrepancy(t, reference);
    if (!(d <= cross_check_tolerance)) {
        throw ValidationFailure("Ikebe and bisection tables disagree by " + std::to_string(d));
    }
    return t;
}

}  // namespace hydrion
