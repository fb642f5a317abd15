#include "ratk/algebra.hpp"

#include <algorithm>

namespace ratk {

namespace {

void require_positive(const std::vector<Integer>& sizes) {
    for (std::size_t j = 0; j < sizes.size(); ++j)
        if (sizes[j] < 1)
            throw InputError("summand " + std::to_string(j) + " has size " + sizes[j].str() +
                             "; sizes must be positive");
}

MinDim min_of(const std::vector<Integer>& sizes) {
    if (sizes.empty()) return std::nullopt;
    return *std::min_element(sizes.begin(), sizes.end());
}

} // namespace

CircleAlgebra::CircleAlgebra(std::vector<Integer> sizes) : sizes_(std::move(sizes)) {
    require_positive(sizes_);
}

FiniteDimAlgebra::FiniteDimAlgebra(std::vector<Integer> sizes) : sizes_(std::move(sizes)) {
    require_positive(sizes_);
}

FiniteDimAlgebra quotient_at_one(const CircleAlgebra& a) { return FiniteDimAlgebra(a.sizes()); }

CircleAlgebra amplify(const CircleAlgebra& a, const Integer& j) {
    if (j < 1) throw InputError("amplification factor must be >= 1");
    std::vector<Integer> out;
    out.reserve(a.summands());
    for (const auto& n : a.sizes()) out.push_back(n * j);
    return CircleAlgebra(std::move(out));
}

MinDim min_dim(const CircleAlgebra& a) { return min_of(a.sizes()); }
MinDim min_dim(const FiniteDimAlgebra& a) { return min_of(a.sizes()); }

SizeSplit split_by_size(const CircleAlgebra& a, const Integer& s) {
    SizeSplit split;
    for (std::size_t j = 0; j < a.summands(); ++j) {
        const auto& n = a.size(j);
        if (n < s)
            split.below.push_back(j);
        else if (n == s)
            split.at.push_back(j);
        else
            split.above.push_back(j);
    }
    return split;
}

} // namespace ratk
