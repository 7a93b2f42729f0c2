#pragma once

// Quadrature oracle for Tricomi's U from its integral representation
//   U(a, b, z) = 1/Gamma(a) int_0^inf e^{-z t} t^{a-1} (1+t)^{b-a-1} dt,  Re a > 0,
// with the path rotated to t = tau e^{-i phi} so that Re(z t) > 0 for z on the positive
// imaginary axis. Uses only std::complex and boost's exp-sinh rule; no series.

#include <boost/math/quadrature/exp_sinh.hpp>

#include <complex>
#include <numbers>

namespace oracle {

using cplx = std::complex<double>;

inline cplx gamma_via_quadrature(cplx a) {
    // Gamma(a) = int_0^inf t^{a-1} e^{-t} dt for Re a > 0
    boost::math::quadrature::exp_sinh<double> rule;
    auto re = [&](double t) { return (std::pow(cplx(t), a - 1.0) * std::exp(-t)).real(); };
    auto im = [&](double t) { return (std::pow(cplx(t), a - 1.0) * std::exp(-t)).imag(); };
    return {rule.integrate(re, 1e-14), rule.integrate(im, 1e-14)};
}

inline cplx kummer_u_quadrature(cplx a, cplx b, cplx z, double phi = std::numbers::pi / 4) {
    const cplx rot = std::polar(1.0, -phi);
    auto integrand = [&](double tau) {
        const cplx t = tau * rot;
        return std::exp(-z * t) * std::pow(t, a - 1.0) * std::pow(1.0 + t, b - a - 1.0) * rot;
    };
    boost::math::quadrature::exp_sinh<double> rule;
    const double re = rule.integrate([&](double t) { return integrand(t).real(); }, 1e-14);
    const double im = rule.integrate([&](double t) { return integrand(t).imag(); }, 1e-14);
    return cplx(re, im) / gamma_via_quadrature(a);
}

}  // namespace oracle
