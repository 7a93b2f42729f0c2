#include "hydrion/specfun.hpp"

#include "hydrion/error.hpp"
#include "hydrion/series.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace hydrion {

namespace {

constexpr double pole_tolerance = 1e-12;
constexpr Complex I{0.0, 1.0};

bool near_non_positive_integer(Complex z, double tol) {
    if (std::abs(z.imag()) > tol) return false;
    if (z.real() > tol) return false;
    return std::abs(z.real() - std::round(z.real())) <= tol;
}

Complex gamma_lanczos(Complex z) {
    static constexpr double g = 7.0;
    static constexpr std::array<double, 9> p = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (z.real() < 0.5) {
        return std::numbers::pi / (std::sin(std::numbers::pi * z) * gamma_lanczos(1.0 - z));
    }
    z -= 1.0;
    Complex x = p[0];
    for (std::size_t i = 1; i < p.size(); ++i) x += p[i] / (z + static_cast<double>(i));
    const Complex t = z + g + 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

series::LogUConstants log_u_constants(Complex a, int n) {
    double n_factorial = 1.0;
    for (int m = 2; m <= n; ++m) n_factorial *= m;
    const Complex a_minus_n = a - static_cast<double>(n);
    // 1/Gamma vanishes at the poles; the series term then drops out
    const Complex inv_gamma_a_minus_n =
        near_non_positive_integer(a_minus_n, pole_tolerance) ? Complex(0.0) : 1.0 / complex_gamma(a_minus_n);
    const Complex inv_gamma_a =
        near_non_positive_integer(a, pole_tolerance) ? Complex(0.0) : 1.0 / complex_gamma(a);
    const double sign = (n + 1) % 2 == 0 ? 1.0 : -1.0;
    return {sign * inv_gamma_a_minus_n / n_factorial,
            digamma(a) - digamma(Complex(1.0)) - digamma(Complex(n + 1.0)), inv_gamma_a};
}

void check_kummer_b(Complex b) {
    if (near_non_positive_integer(b, pole_tolerance)) {
        throw BadParameter("Kummer M: b is a non-positive integer");
    }
}

int integer_two_mu(double mu) {
    const double two_mu = 2.0 * mu;
    if (two_mu < 0.0 || std::abs(two_mu - std::round(two_mu)) > 1e-12) {
        throw BadParameter("Whittaker W: 2 mu must be a non-negative integer");
    }
    return static_cast<int>(std::round(two_mu));
}

series::ValueAndDerivative<double> narrow_pair(const auto& p) {
    return {series::narrow(p.value), series::narrow(p.derivative)};
}

series::ValueAndDerivative<double> kummer_m_pair(Complex a, Complex b, Complex z) {
    check_kummer_b(b);
    return series::with_working_precision(std::abs(z), [&](auto tag) {
        using Real = typename decltype(tag)::type;
        return narrow_pair(series::kummer_m<Real>(series::widen<Real>(a), series::widen<Real>(b),
                                                  series::widen<Real>(z)));
    });
}

series::ValueAndDerivative<double> kummer_u_pair(Complex a, int n_plus_1, Complex z) {
    if (n_plus_1 < 1) throw BadParameter("logarithmic U series needs integer b = n + 1 >= 1");
    if (z == Complex(0.0)) throw DomainError("logarithmic U series is singular at z = 0");
    const int n = n_plus_1 - 1;
    const auto constants = log_u_constants(a, n);
    return series::with_working_precision(std::abs(z), [&](auto tag) {
        using Real = typename decltype(tag)::type;
        return narrow_pair(series::kummer_u_log<Real>(series::widen<Real>(a), n,
                                                      series::widen<Real>(z), constants));
    });
}

series::ValueAndDerivative<double> whittaker_m_pair(Complex kappa, double mu, Complex z) {
    check_kummer_b(Complex(1.0 + 2.0 * mu));
    return series::with_working_precision(std::abs(z), [&](auto tag) {
        using Real = typename decltype(tag)::type;
        return narrow_pair(series::whittaker_m<Real>(series::widen<Real>(kappa), Real(mu),
                                                     series::widen<Real>(z)));
    });
}

series::ValueAndDerivative<double> whittaker_w_pair(Complex kappa, double mu, Complex z) {
    const int two_mu = integer_two_mu(mu);
    if (z == Complex(0.0)) throw DomainError("Whittaker W is singular at z = 0");
    const Complex a = 0.5 + mu - kappa;
    const auto constants = log_u_constants(a, two_mu);
    return series::with_working_precision(std::abs(z), [&](auto tag) {
        using Real = typename decltype(tag)::type;
        return narrow_pair(series::whittaker_w<Real>(series::widen<Real>(kappa), two_mu,
                                                     series::widen<Real>(z), constants));
    });
}

double coulomb_normalization(int L, double eta) {
    double factorial = 1.0;
    for (int m = 2; m <= 2 * L + 1; ++m) factorial *= m;
    const double c = std::pow(2.0, L) * std::exp(-std::numbers::pi * eta / 2.0) *
                     std::abs(complex_gamma(Complex(L + 1.0, eta))) / factorial;
    return c * std::pow(2.0, -L - 1);
}

Complex minus_i_power(int k) {
    static constexpr std::array<Complex, 4> powers = {Complex(1, 0), Complex(0, -1), Complex(-1, 0),
                                                      Complex(0, 1)};
    return powers[static_cast<std::size_t>(k % 4)];
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double f_lo) {
    while (hi - lo > 1e-10) {
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

}  // namespace

Complex complex_gamma(Complex z) {
    if (near_non_positive_integer(z, pole_tolerance)) {
        throw PoleError("Gamma has a pole at non-positive integers");
    }
    return gamma_lanczos(z);
}

Complex digamma(Complex z) {
    if (near_non_positive_integer(z, pole_tolerance)) {
        throw PoleError("digamma has a pole at non-positive integers");
    }
    if (z.real() < 0.5) {
        return digamma(1.0 - z) - std::numbers::pi / std::tan(std::numbers::pi * z);
    }
    Complex shift = 0.0;
    while (z.real() <= 8.0) {
        shift -= 1.0 / z;
        z += 1.0;
    }
    // B_{2k} / (2k)
    static constexpr std::array<double, 8> coef = {1.0 / 12,      -1.0 / 120,   1.0 / 252,
                                                   -1.0 / 240,    1.0 / 132,    -691.0 / 32760,
                                                   1.0 / 12,      -3617.0 / 8160};
    const Complex inv2 = 1.0 / (z * z);
    Complex p = inv2;
    Complex tail = 0.0;
    for (double c : coef) {
        tail += c * p;
        p *= inv2;
    }
    return shift + std::log(z) - 0.5 / z - tail;
}

Complex kummer_m(Complex a, Complex b, Complex z) { return kummer_m_pair(a, b, z).value; }

Complex kummer_m_derivative(Complex a, Complex b, Complex z) {
    return kummer_m_pair(a, b, z).derivative;
}

Complex kummer_u_log_series(Complex a, int n_plus_1, Complex z) {
    return kummer_u_pair(a, n_plus_1, z).value;
}

Complex kummer_u_log_series_derivative(Complex a, int n_plus_1, Complex z) {
    return kummer_u_pair(a, n_plus_1, z).derivative;
}

Complex whittaker_m(Complex kappa, double mu, Complex z) {
    return whittaker_m_pair(kappa, mu, z).value;
}

Complex whittaker_m_derivative(Complex kappa, double mu, Complex z) {
    return whittaker_m_pair(kappa, mu, z).derivative;
}

Complex whittaker_w(Complex kappa, double mu, Complex z) {
    return whittaker_w_pair(kappa, mu, z).value;
}

Complex whittaker_w_derivative(Complex kappa, double mu, Complex z) {
    return whittaker_w_pair(kappa, mu, z).derivative;
}

double coulomb_f(int L, double eta, double rho) {
    if (L < 0) throw BadParameter("Coulomb F: L must be non-negative");
    const Complex m = whittaker_m(Complex(0.0, eta), L + 0.5, Complex(0.0, 2.0 * rho));
    return (coulomb_normalization(L, eta) * minus_i_power(L + 1) * m).real();
}

double coulomb_f_derivative(int L, double eta, double rho) {
    if (L < 0) throw BadParameter("Coulomb F: L must be non-negative");
    const Complex dm = whittaker_m_derivative(Complex(0.0, eta), L + 0.5, Complex(0.0, 2.0 * rho));
    return (coulomb_normalization(L, eta) * minus_i_power(L + 1) * 2.0 * I * dm).real();
}

Complex barrier_kappa(EnergySign sign) { return sign == EnergySign::Plus ? -I : I; }

RealValueAndDerivative threshold_function_pair(EnergySign sign, double r) {
    const auto m = whittaker_m_pair(barrier_kappa(sign), 0.5, Complex(0.0, r));
    // d/dr M(i r) = i M'(i r), so d/dr [-i M(i r)] = M'(i r)
    return {(-I * m.value).real(), m.derivative.real()};
}

double threshold_function(EnergySign sign, double r) {
    return threshold_function_pair(sign, r).value;
}

double threshold_function_derivative(EnergySign sign, double r) {
    return threshold_function_pair(sign, r).derivative;
}

BarrierSolution::BarrierSolution(EnergySign sign, Parity parity, double gamma)
    : sign_(sign), parity_(parity), gamma_(gamma), kappa_(barrier_kappa(sign)) {
    if (!(gamma > 0.0)) throw BadParameter("barrier solution needs gamma > 0");
    gamma_factor_ = complex_gamma(1.0 + (sign == EnergySign::Plus ? I : -I));
    const Complex at = Complex(0.0, gamma);
    const auto m = whittaker_m_pair(kappa_, 0.5, at);
    const auto w = whittaker_w_pair(kappa_, 0.5, at);
    const Complex numerator = parity == Parity::Odd ? w.derivative : w.value;
    const Complex denominator = parity == Parity::Odd ? m.derivative : m.value;
    if (std::abs(denominator) < 1e-10) {
        throw DegenerateThreshold("gamma sits on a threshold: boundary problem has no solution");
    }
    m_coefficient_ = -gamma_factor_ * numerator / denominator;
}

Complex BarrierSolution::complex_value(double r) const {
    if (r == 0.0) {
        // M(0) = 0 and W(0+) = 1 / Gamma(1 -+ i)
        return gamma_factor_ / complex_gamma(1.0 - kappa_);
    }
    const Complex z(0.0, r);
    return m_coefficient_ * whittaker_m(kappa_, 0.5, z) + gamma_factor_ * whittaker_w(kappa_, 0.5, z);
}

Complex BarrierSolution::complex_derivative(double r) const {
    if (r == 0.0) throw DomainError("barrier solution derivative diverges at r = 0");
    const Complex z(0.0, r);
    return I * (m_coefficient_ * whittaker_m_derivative(kappa_, 0.5, z) +
                gamma_factor_ * whittaker_w_derivative(kappa_, 0.5, z));
}

BarrierSolution barrier_solution(EnergySign sign, Parity parity, double gamma) {
    return BarrierSolution(sign, parity, gamma);
}

int default_grid_size(double a, double b) {
    return std::max(100, static_cast<int>(std::ceil(200.0 * (b - a))));
}

std::vector<double> sign_change_roots(const std::function<double(double)>& f, double a, double b,
                                      int grid) {
    if (!(b > a)) throw BadParameter("sign-change scan needs a < b");
    grid = std::max(grid, 2);
    std::vector<double> xs(static_cast<std::size_t>(grid));
    std::vector<double> fs(xs.size());
    double scale = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = i + 1 == xs.size() ? b : a + (b - a) * static_cast<double>(i) / (grid - 1);
        fs[i] = f(xs[i]);
        scale = std::max(scale, std::abs(fs[i]));
    }
    const double zero_tol = 1e-8 * scale;
    auto is_zero = [&](std::size_t i) { return std::abs(fs[i]) <= zero_tol; };

    std::vector<double> roots;
    if (is_zero(0)) roots.push_back(a);
    std::ptrdiff_t last = -1;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (is_zero(i)) continue;
        if (last >= 0) {
            const auto l = static_cast<std::size_t>(last);
            if ((fs[l] > 0.0) != (fs[i] > 0.0)) {
                roots.push_back(bisect(f, xs[l], xs[i], fs[l]));
            }
        }
        last = static_cast<std::ptrdiff_t>(i);
    }
    if (xs.size() > 1 && is_zero(xs.size() - 1)) roots.push_back(b);
    return roots;
}

int count_sign_changes(const std::function<double(double)>& f, double a, double b, int grid) {
    return static_cast<int>(sign_change_roots(f, a, b, grid).size());
}

int count_sign_changes(const std::function<double(double)>& f, double a, double b) {
    return count_sign_changes(f, a, b, default_grid_size(a, b));
}

}  // namespace hydrion
