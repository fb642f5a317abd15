#include "ratk/verify.hpp"

#include <algorithm>

namespace ratk {

Eigen::MatrixXcd TrigPolynomial::operator()(std::complex<double> z) const {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(coefficients.front().rows(), coefficients.front().cols());
    for (int k = -degree; k <= degree; ++k) out += coefficients[static_cast<std::size_t>(k + degree)] * std::pow(z, k);
    return out;
}

TrigPolynomial TrigPolynomial::adjoint() const {
    // (C z^k)^* = C^* z^{-k} on the circle.
    TrigPolynomial out{degree, {}};
    for (int k = -degree; k <= degree; ++k) out.coefficients.push_back(coefficients[static_cast<std::size_t>(degree - k)].adjoint());
    return out;
}

CircleFunction TrigPolynomial::function() const {
    return [self = *this](std::complex<double> z) { return self(z); };
}

TrigPolynomial random_trig_polynomial(std::size_t n, int degree, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    TrigPolynomial p{degree, {}};
    const auto dim = static_cast<Eigen::Index>(n);
    for (int k = -degree; k <= degree; ++k) {
        Eigen::MatrixXcd c(dim, dim);
        for (Eigen::Index i = 0; i < dim; ++i)
            for (Eigen::Index j = 0; j < dim; ++j) c(i, j) = {u(rng), u(rng)};
        p.coefficients.push_back(std::move(c));
    }
    return p;
}

double RealizerDeviation::max() const { return std::max({multiplicative, adjoint, closure}); }

RealizerDeviation realizer_deviation(const TypeABlock& block, const TrigPolynomial& f, const TrigPolynomial& g,
                                     std::size_t grid) {
    const auto ff = f.function();
    const auto gg = g.function();
    const auto fs = f.adjoint().function();
    const CircleFunction fg = [&](std::complex<double> z) -> Eigen::MatrixXcd { return f(z) * g(z); };

    RealizerDeviation d;
    for (std::size_t k = 0; k < grid; ++k) {
        const Eigen::MatrixXcd pf = realize(block, ff, k, grid);
        const Eigen::MatrixXcd pg = realize(block, gg, k, grid);
        d.multiplicative = std::max(d.multiplicative, (realize(block, fg, k, grid) - pf * pg).cwiseAbs().maxCoeff());
        d.adjoint = std::max(d.adjoint, (realize(block, fs, k, grid) - pf.adjoint()).cwiseAbs().maxCoeff());
    }
    d.closure = (realize(block, ff, 0, grid) - realize(block, ff, grid - 1, grid)).cwiseAbs().maxCoeff();
    return d;
}

} // namespace ratk
