#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace hydrion {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Gamma family
// ---------------------------------------------------------------------------

/// Lanczos approximation with reflection. Throws PoleError at non-positive integers.
Complex complex_gamma(Complex z);

/// psi(z): upward recurrence to Re z > 8, then the asymptotic series.
Complex digamma(Complex z);

// ---------------------------------------------------------------------------
// Confluent hypergeometric functions
// ---------------------------------------------------------------------------

/// Kummer M(a, b, z) by its power series. Throws BadParameter when b is within 1e-12
/// of a non-positive integer and NonConvergence past 10'000 terms.
Complex kummer_m(Complex a, Complex b, Complex z);

/// dM/dz.
Complex kummer_m_derivative(Complex a, Complex b, Complex z);

/// U(a, n+1, z) by the logarithmic series for integer n + 1 >= 1.
/// Throws DomainError at z = 0.
Complex kummer_u_log_series(Complex a, int n_plus_1, Complex z);

/// dU/dz of the same series.
Complex kummer_u_log_series_derivative(Complex a, int n_plus_1, Complex z);

// ---------------------------------------------------------------------------
// Whittaker functions (principal branches)
// ---------------------------------------------------------------------------

Complex whittaker_m(Complex kappa, double mu, Complex z);
/// d/dz M_{kappa,mu}(z).
Complex whittaker_m_derivative(Complex kappa, double mu, Complex z);

/// Requires 2 mu to be a non-negative integer. Throws DomainError at z = 0.
Complex whittaker_w(Complex kappa, double mu, Complex z);
Complex whittaker_w_derivative(Complex kappa, double mu, Complex z);

// ---------------------------------------------------------------------------
// Coulomb wave functions
// ---------------------------------------------------------------------------

/// Regular Coulomb wave function
///   F_L(eta, rho) = C_L(eta) 2^{-L-1} (-i)^{L+1} M_{i eta, L+1/2}(2 i rho),
///   C_L(eta) = 2^L e^{-pi eta / 2} |Gamma(L+1+i eta)| / (2L+1)!,
/// so that F_0(0, rho) = sin(rho).
double coulomb_f(int L, double eta, double rho);
double coulomb_f_derivative(int L, double eta, double rho);

// ---------------------------------------------------------------------------
// E = +-1 barrier problems
// ---------------------------------------------------------------------------

/// E = +1 uses kappa = -i (w'' + (1/4 + 1/r) w = 0), E = -1 uses kappa = +i.
enum class EnergySign { Plus, Minus };
/// Odd: w'(gamma) = 0. Even: w(gamma) = 0.
enum class Parity { Odd, Even };

Complex barrier_kappa(EnergySign sign);

/// The real function -i M_{kappa,1/2}(i r) whose critical points and zeros define the
/// threshold sequences, and its r-derivative.
double threshold_function(EnergySign sign, double r);
double threshold_function_derivative(EnergySign sign, double r);

struct RealValueAndDerivative {
    double value;
    double derivative;
};
/// Both at the cost of one series evaluation.
RealValueAndDerivative threshold_function_pair(EnergySign sign, double r);

/// Closed-form solution of w'' + (1/4 -+ 1/r) w = 0 on [0, gamma] with w(0) = 1 and the
/// parity condition at r = gamma:
///   w(r) = -G (X(i gamma) / Y(i gamma)) M(i r) + G W(i r),  G = Gamma(1 -+ i),
/// where (X, Y) = (W', M') for odd parity and (W, M) for even parity.
class BarrierSolution {
public:
    BarrierSolution(EnergySign sign, Parity parity, double gamma);

    EnergySign energy_sign() const noexcept { return sign_; }
    Parity parity() const noexcept { return parity_; }
    double gamma() const noexcept { return gamma_; }

    /// Real part of w(r); r = 0 returns the limit value.
    double operator()(double r) const { return complex_value(r).real(); }
    /// Real part of dw/dr; diverges logarithmically at r = 0 (DomainError there).
    double derivative(double r) const { return complex_derivative(r).real(); }

    Complex complex_value(double r) const;
    Complex complex_derivative(double r) const;

    std::function<double(double)> evaluator() const {
        return [self = *this](double r) { return self(r); };
    }

private:
    EnergySign sign_;
    Parity parity_;
    double gamma_;
    Complex kappa_;
    Complex gamma_factor_;  // Gamma(1 -+ i)
    Complex m_coefficient_;
};

/// Throws DegenerateThreshold when the denominator is below 1e-10 in modulus.
BarrierSolution barrier_solution(EnergySign sign, Parity parity, double gamma);

// ---------------------------------------------------------------------------
// Sign-change counting
// ---------------------------------------------------------------------------

/// ceil(200 (b - a)) points, at least 100.
int default_grid_size(double a, double b);

/// Locations of the sign changes of f on a uniform grid over [a, b], each refined by
/// bisection to 1e-10. Grid values below 1e-8 of the largest |f| count as zeros: at an
/// endpoint they are reported as a root, in the interior they are stepped over.
std::vector<double> sign_change_roots(const std::function<double(double)>& f, double a, double b,
                                      int grid);

int count_sign_changes(const std::function<double(double)>& f, double a, double b, int grid);
int count_sign_changes(const std::function<double(double)>& f, double a, double b);

}  // namespace hydrion
