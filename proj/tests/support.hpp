#pragma once

#include "ratk/stability.hpp"
#include "ratk/system.hpp"

#include <random>

namespace ratk::testing {

inline CircleAlgebra circle(std::initializer_list<long> sizes) {
    std::vector<Integer> v;
    for (auto n : sizes) v.emplace_back(n);
    return CircleAlgebra(std::move(v));
}

inline IntMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows) {
    const auto r = static_cast<Eigen::Index>(rows.size());
    const auto c = r ? static_cast<Eigen::Index>(rows.begin()->size()) : 0;
    IntMatrix m(r, c);
    Eigen::Index i = 0;
    for (const auto& row : rows) {
        Eigen::Index j = 0;
        for (auto x : row) m(i, j++) = x;
        ++i;
    }
    return m;
}

inline IntVector int_vector(std::initializer_list<long> xs) {
    IntVector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (auto x : xs) v(i++) = x;
    return v;
}

inline SignatureTemplate tmpl(const IntMatrix& a, const IntMatrix& b, const IntVector& pad) { return {a, b, pad}; }

inline InductiveSystem periodic(const CircleAlgebra& start, std::vector<SignatureTemplate> period) {
    TailDescriptor tail{std::move(period)};
    return InductiveSystem({start}, {}, std::move(tail));
}

/// Random signature matrix from `source` to a target whose sizes make it valid.
inline SignatureMatrix random_signature(const CircleAlgebra& source, std::size_t rows, std::mt19937_64& rng,
                                        int max_a = 3, int max_b = 3, int max_pad = 2) {
    std::uniform_int_distribution<int> ua(0, max_a), ub(-max_b, max_b), up(0, max_pad);
    const auto cols = static_cast<Eigen::Index>(source.summands());
    IntMatrix a(static_cast<Eigen::Index>(rows), cols), b(static_cast<Eigen::Index>(rows), cols);
    std::vector<Integer> sizes;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        Integer need = 0;
        for (Eigen::Index j = 0; j < cols; ++j) {
            a(i, j) = ua(rng);
            b(i, j) = a(i, j) == 0 ? 0 : ub(rng);
            need += a(i, j) * source.size(static_cast<std::size_t>(j));
        }
        sizes.push_back(need + up(rng) + (need == 0 ? 1 : 0));
    }
    return SignatureMatrix(source, CircleAlgebra(std::move(sizes)), std::move(a), std::move(b));
}

struct CorpusOptions {
    int max_dim = 3;
    int max_a = 3;
    int max_b = 3;
    int max_pad = 2;
    int max_start_size = 3;
    std::size_t max_period = 2;
    double zero_bias = 0.5;     // chance an entry is forced to 0
    double neutral_bias = 0.3;  // chance a summand follows a neutral cycle
    double pad_zero_bias = 0.6; // chance a pad entry is 0
};

/// Random periodic system: one prefix stage, then `period` templates. With
/// probability neutral_bias, summand 0 is carried along a multiplicity-1 cycle
/// that receives nothing else, so both stability verdicts occur.
inline InductiveSystem random_periodic_system(std::mt19937_64& rng, const CorpusOptions& o = {}) {
    std::uniform_int_distribution<int> udim(1, o.max_dim), ua(1, o.max_a), ub(-o.max_b, o.max_b),
        upad(1, o.max_pad), usize(1, o.max_start_size);
    std::uniform_int_distribution<std::size_t> uper(1, o.max_period);
    std::bernoulli_distribution zero(o.zero_bias), neutral(o.neutral_bias), pad_zero(o.pad_zero_bias);

    const std::size_t period = uper(rng);
    std::vector<int> dims(period);
    for (auto& d : dims) d = udim(rng);
    const bool keep_neutral = neutral(rng);

    std::vector<Integer> start;
    for (int j = 0; j < dims[0]; ++j) start.emplace_back(usize(rng));

    std::vector<SignatureTemplate> templates;
    for (std::size_t k = 0; k < period; ++k) {
        const int cols = dims[k], rows = dims[(k + 1) % period];
        IntMatrix a(rows, cols), b(rows, cols);
        IntVector pad(rows);
        for (int i = 0; i < rows; ++i) {
            bool any = false;
            for (int j = 0; j < cols; ++j) {
                a(i, j) = zero(rng) ? 0 : ua(rng);
                b(i, j) = a(i, j) == 0 ? 0 : ub(rng);
                any = any || a(i, j) != 0;
            }
            pad(i) = pad_zero(rng) ? 0 : upad(rng);
            if (!any && pad(i) == 0) pad(i) = 1;
        }
        if (keep_neutral) {
            // Summand 0 feeds summand 0 with multiplicity 1 and nothing else enters it.
            for (int j = 0; j < cols; ++j) {
                a(0, j) = j == 0 ? 1 : 0;
                b(0, j) = j == 0 ? ub(rng) : 0;
                if (a(0, j) == 0) b(0, j) = 0;
            }
            pad(0) = 0;
        }
        templates.push_back({std::move(a), std::move(b), std::move(pad)});
    }
    return periodic(CircleAlgebra(std::move(start)), std::move(templates));
}

/// Random finite system with `stages` stages.
inline InductiveSystem random_finite_system(std::mt19937_64& rng, std::size_t stages, int max_dim = 3) {
    std::uniform_int_distribution<int> udim(1, max_dim), usize(1, 3);
    std::vector<Integer> start;
    for (int j = 0, d = udim(rng); j < d; ++j) start.emplace_back(usize(rng));
    std::vector<CircleAlgebra> alg{CircleAlgebra(std::move(start))};
    std::vector<SignatureMatrix> maps;
    for (std::size_t s = 1; s < stages; ++s) {
        maps.push_back(random_signature(alg.back(), static_cast<std::size_t>(udim(rng)), rng));
        alg.push_back(maps.back().target());
    }
    return InductiveSystem(std::move(alg), std::move(maps));
}

} // namespace ratk::testing
