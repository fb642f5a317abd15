#pragma once

#include "ratk/numeric.hpp"

#include <optional>
#include <vector>

namespace ratk {

/// Direct sum of circle algebras C(T) (x) M_{n_1} + ... + C(T) (x) M_{n_K},
/// stored as its ordered list of matrix sizes. Summands are positional:
/// equal sizes at different positions are different summands. K = 0 is the
/// zero algebra.
class CircleAlgebra {
public:
    CircleAlgebra() = default;
    explicit CircleAlgebra(std::vector<Integer> sizes);

    const std::vector<Integer>& sizes() const { return sizes_; }
    std::size_t summands() const { return sizes_.size(); }
    const Integer& size(std::size_t j) const { return sizes_.at(j); }
    bool is_zero() const { return sizes_.empty(); }

    friend bool operator==(const CircleAlgebra&, const CircleAlgebra&) = default;

private:
    std::vector<Integer> sizes_;
};

/// Finite-dimensional algebra M_{n_1} + ... + M_{n_K}.
class FiniteDimAlgebra {
public:
    FiniteDimAlgebra() = default;
    explicit FiniteDimAlgebra(std::vector<Integer> sizes);

    const std::vector<Integer>& sizes() const { return sizes_; }
    std::size_t summands() const { return sizes_.size(); }
    const Integer& size(std::size_t j) const { return sizes_.at(j); }

    friend bool operator==(const FiniteDimAlgebra&, const FiniteDimAlgebra&) = default;

private:
    std::vector<Integer> sizes_;
};

/// Smallest summand size; std::nullopt stands for +infinity (zero algebra).
using MinDim = std::optional<Integer>;

struct SizeSplit {
    std::vector<std::size_t> below;
    std::vector<std::size_t> at;
    std::vector<std::size_t> above;
};

/// Evaluation at 1 in T: keeps the matrix sizes, drops the circle factor.
FiniteDimAlgebra quotient_at_one(const CircleAlgebra& a);

/// M_j(A). Throws InputError for j = 0.
CircleAlgebra amplify(const CircleAlgebra& a, const Integer& j);

MinDim min_dim(const CircleAlgebra& a);
MinDim min_dim(const FiniteDimAlgebra& a);

/// Partition of summand indices (0-based) by size <, =, > s.
SizeSplit split_by_size(const CircleAlgebra& a, const Integer& s);

} // namespace ratk
