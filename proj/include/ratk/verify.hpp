#pragma once

#include "ratk/hom.hpp"

#include <random>

namespace ratk {

/// f(z) = sum_{|k| <= degree} C_k z^k with complex n x n coefficients drawn
/// uniformly from the unit square.
struct TrigPolynomial {
    int degree = 0;
    std::vector<Eigen::MatrixXcd> coefficients;  // index k + degree

    Eigen::MatrixXcd operator()(std::complex<double> z) const;
    TrigPolynomial adjoint() const;
    CircleFunction function() const;
};

TrigPolynomial random_trig_polynomial(std::size_t n, int degree, std::mt19937_64& rng);

/// Largest entrywise deviations of the realizer from being a *-homomorphism
/// whose values close up into loops, over every grid point.
struct RealizerDeviation {
    double multiplicative = 0;  // phi(fg) - phi(f) phi(g)
    double adjoint = 0;         // phi(f*) - phi(f)*
    double closure = 0;         // phi(f)(0) - phi(f)(1)

    double max() const;
};

RealizerDeviation realizer_deviation(const TypeABlock& block, const TrigPolynomial& f, const TrigPolynomial& g,
                                     std::size_t grid);

} // namespace ratk
