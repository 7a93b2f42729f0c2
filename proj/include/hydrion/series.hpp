#pragma once

// Scalar-generic series kernels behind the special functions. Everything here is
// templated on the real working type so the same code runs in long double, float128
// or cpp_bin_float; the public double API in specfun.hpp picks the type from |z|.

#include "hydrion/error.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/float128.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <type_traits>

namespace hydrion::series {

using Quad = boost::multiprecision::float128;
using Bin50 = boost::multiprecision::cpp_bin_float_50;
using Bin100 = boost::multiprecision::cpp_bin_float_100;

/// Hard cap on series terms.
inline constexpr int max_terms = 10'000;

template <class Real>
using complex_t = std::complex<Real>;

template <class Real>
complex_t<Real> widen(const std::complex<double>& z) {
    return {Real(z.real()), Real(z.imag())};
}

template <class Real>
std::complex<double> narrow(const complex_t<Real>& z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

/// |re| + |im|; cheaper than the modulus and good enough for stopping tests.
template <class Real>
Real magnitude(const complex_t<Real>& z) {
    using std::abs;
    return abs(z.real()) + abs(z.imag());
}

template <class Real>
complex_t<Real> cexp(const complex_t<Real>& z) {
    using std::cos;
    using std::exp;
    using std::sin;
    const Real m = exp(z.real());
    return {m * cos(z.imag()), m * sin(z.imag())};
}

/// Principal branch.
template <class Real>
complex_t<Real> clog(const complex_t<Real>& z) {
    using std::atan2;
    using std::log;
    using std::sqrt;
    return {log(sqrt(z.real() * z.real() + z.imag() * z.imag())), atan2(z.imag(), z.real())};
}

/// Principal branch of z^c; 0^c is 0 for Re c > 0 and 1 for c == 0.
template <class Real>
complex_t<Real> cpow(const complex_t<Real>& z, const complex_t<Real>& c) {
    if (z == complex_t<Real>(0)) {
        if (c == complex_t<Real>(0)) return Real(1);
        return Real(0);
    }
    return cexp(c * clog(z));
}

/// Smallest built-in or multiprecision real type whose precision survives the
/// e^|z| cancellation of the power series at argument magnitude |z|.
template <class F>
decltype(auto) with_working_precision(double z_magnitude, F&& f) {
    if (z_magnitude <= 4.0) return f(std::type_identity<long double>{});
    if (z_magnitude <= 38.0) return f(std::type_identity<Quad>{});
    if (z_magnitude <= 78.0) return f(std::type_identity<Bin50>{});
    if (z_magnitude <= 190.0) return f(std::type_identity<Bin100>{});
    throw DomainError("argument magnitude beyond the series evaluation domain");
}

template <class Real>
struct ValueAndDerivative {
    complex_t<Real> value;
    complex_t<Real> derivative;
};

/// M(a, b, z) = sum (a)_s / ((b)_s s!) z^s together with dM/dz, summed until the term
/// falls below the working epsilon relative to the partial sum.
template <class Real>
ValueAndDerivative<Real> kummer_m(const complex_t<Real>& a, const complex_t<Real>& b,
                                  const complex_t<Real>& z) {
    const Real eps = std::numeric_limits<Real>::epsilon();
    const Real zmag = magnitude(z);
    complex_t<Real> term(1);
    complex_t<Real> sum(1);
    complex_t<Real> dsum(0);
    for (int s = 0; s < max_terms; ++s) {
        const Real sr(s);
        // d/dz of term s+1 equals term_s (a+s)/(b+s)
        const complex_t<Real> ratio = (a + sr) / (b + sr);
        const complex_t<Real> dterm = term * ratio;
        dsum += dterm;
        term = dterm * z / Real(s + 1);
        sum += term;
        const Real tmag = magnitude(term) + magnitude(dterm);
        if (sr > zmag && tmag <= eps * (magnitude(sum) + magnitude(dsum))) {
            return {sum, dsum};
        }
        if (term == complex_t<Real>(0) && dterm == complex_t<Real>(0)) {
            return {sum, dsum};
        }
    }
    throw NonConvergence("Kummer M series did not converge within the term cap");
}

/// Constants of the logarithmic U series that only scale whole sums; they are computed
/// in double precision by the caller.
struct LogUConstants {
    std::complex<double> series_prefactor;  // (-1)^{n+1} / (n! Gamma(a - n))
    std::complex<double> digamma_offset;    // psi(a) - psi(1) - psi(n + 1)
    std::complex<double> inv_gamma_a;       // 1 / Gamma(a)
};

/// U(a, n+1, z) and dU/dz from
///   U = pref sum_k (a)_k/((n+1)_k k!) z^k (ln z + psi(a+k) - psi(1+k) - psi(n+k+1))
///     + (1/Gamma(a)) sum_{k=1}^{n} (k-1)! (1-a+k)_{n-k} / (n-k)! z^{-k}.
/// The k-dependent part of the digamma combination is accumulated exactly in Real.
template <class Real>
ValueAndDerivative<Real> kummer_u_log(const complex_t<Real>& a, int n, const complex_t<Real>& z,
                                      const LogUConstants& constants) {
    const Real eps = std::numeric_limits<Real>::epsilon();
    const Real zmag = magnitude(z);
    const complex_t<Real> b(Real(n + 1));
    const complex_t<Real> log_z = clog(z);

    complex_t<Real> term(1);   // (a)_k / ((n+1)_k k!) z^k
    complex_t<Real> delta(0);  // psi(a+k)-psi(1+k)-psi(n+k+1) minus its k=0 value
    complex_t<Real> s0(0), s1(0), ds0(0), ds1(0);
    bool converged = false;
    for (int k = 0; k < max_terms; ++k) {
        const Real kr(k);
        s0 += term;
        s1 += term * delta;
        const complex_t<Real> dterm = term * kr / z;
        ds0 += dterm;
        ds1 += dterm * delta;

        const Real tmag = magnitude(term) * (Real(1) + magnitude(delta));
        if (kr > zmag && tmag <= eps * (magnitude(s0) + magnitude(s1))) {
            converged = true;
            break;
        }
        delta += Real(1) / (a + kr) - Real(1) / (kr + Real(1)) - Real(1) / (kr + Real(n + 1));
        term = term * (a + kr) / ((b + kr) * Real(k + 1)) * z;
    }
    if (!converged) {
        throw NonConvergence("logarithmic U series did not converge within the term cap");
    }

    const complex_t<Real> pref = widen<Real>(constants.series_prefactor);
    const complex_t<Real> offset = log_z + widen<Real>(constants.digamma_offset);
    complex_t<Real> value = pref * (offset * s0 + s1);
    complex_t<Real> deriv = pref * (offset * ds0 + s0 / z + ds1);

    // finite negative-power part
    const complex_t<Real> inv_gamma_a = widen<Real>(constants.inv_gamma_a);
    for (int k = 1; k <= n; ++k) {
        complex_t<Real> coef(Real(1));
        for (int m = 1; m < k; ++m) coef *= Real(m);  // (k-1)!
        const complex_t<Real> base = Real(1) - a + Real(k);
        for (int m = 0; m < n - k; ++m) coef *= base + Real(m);  // (1-a+k)_{n-k}
        for (int m = 1; m <= n - k; ++m) coef /= Real(m);        // / (n-k)!
        complex_t<Real> zpow(Real(1));
        for (int m = 0; m < k; ++m) zpow *= z;
        value += inv_gamma_a * coef / zpow;
        deriv -= inv_gamma_a * coef * Real(k) / (zpow * z);
    }
    return {value, deriv};
}

/// M_{kappa,mu}(z) = e^{-z/2} z^{1/2+mu} M(1/2+mu-kappa, 1+2mu, z) and its z-derivative.
template <class Real>
ValueAndDerivative<Real> whittaker_m(const complex_t<Real>& kappa, const Real& mu,
                                     const complex_t<Real>& z) {
    const complex_t<Real> c(Real(0.5) + mu);
    const auto kummer = kummer_m<Real>(c - kappa, complex_t<Real>(Real(1) + 2 * mu), z);
    const complex_t<Real> e = cexp<Real>(-z / Real(2));
    const complex_t<Real> zc = cpow<Real>(z, c);
    const complex_t<Real> zc1 = cpow<Real>(z, c - Real(1));
    // d/dz [e^{-z/2} z^c] = e^{-z/2} (c z^{c-1} - z^c / 2)
    const complex_t<Real> f = e * zc;
    const complex_t<Real> df = e * (c * zc1 - zc / Real(2));
    return {f * kummer.value, df * kummer.value + f * kummer.derivative};
}

/// W_{kappa,mu}(z) = e^{-z/2} z^{1/2+mu} U(1/2+mu-kappa, 1+2mu, z) for integer 2mu.
template <class Real>
ValueAndDerivative<Real> whittaker_w(const complex_t<Real>& kappa, int two_mu,
                                     const complex_t<Real>& z, const LogUConstants& constants) {
    const complex_t<Real> c(Real(1 + two_mu) / Real(2));
    const auto u = kummer_u_log<Real>(c - kappa, two_mu, z, constants);
    const complex_t<Real> e = cexp<Real>(-z / Real(2));
    const complex_t<Real> zc = cpow<Real>(z, c);
    const complex_t<Real> f = e * zc;
    const complex_t<Real> df = f * (c / z - Real(0.5));
    return {f * u.value, df * u.value + f * u.derivative};
}

}  // namespace hydrion::series
