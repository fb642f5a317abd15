#pragma once

#include "ratk/algebra.hpp"
#include "ratk/hom.hpp"
#include "ratk/numeric.hpp"
#include "ratk/system.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace ratk {

/// F_m of a circle or finite-dimensional algebra: one rational coordinate per
/// live summand. summand_dims[j] is 1 when summand j contributes.
struct FmSpace {
    int m = 1;
    std::vector<std::uint8_t> summand_dims;

    std::size_t total() const;
    /// Indices of live summands, in order.
    std::vector<std::size_t> live() const;
};

/// d(m,j) = 1 iff m is odd and m <= 2 n_j - 1.
FmSpace fm_finite_dim(const FiniteDimAlgebra& b, int m);

/// d(m,j) = 1 iff m <= 2 n_j - 1 (both parities contribute).
FmSpace fm_circle(const CircleAlgebra& a, int m);

/// Smallest size n with m <= 2n - 1, i.e. ceil((m + 1) / 2).
Integer live_threshold(int m);

/// F_m of a diagonal map as an exact matrix between the live coordinates:
/// multiplicities for odd m, windings for even m. Dead rows and columns are
/// dropped, so the shape is fm_circle(target).total() x fm_circle(source).total().
RatMatrix fm_induced(const SignatureMatrix& s, int m);

/// Exact rank by fraction-free (Bareiss) elimination on the row-scaled integer
/// matrix. Pivots are chosen column by column, first non-zero row first.
std::size_t rank(const RatMatrix& m);

/// Reduced basis (as columns) of the column space of m.
RatMatrix column_space(const RatMatrix& m);

/// Dimension of a direct limit Q^{k_0} -> Q^{k_1} -> ...
struct ColimitReport {
    Integer lower = 0;            // == upper when exact
    Integer upper = 0;
    bool exact = false;
    std::size_t stabilization_stage = 0;
    std::vector<std::size_t> evidence;  // rank trace

    Integer dimension() const { return lower; }
};

/// Matrices M_0, M_1, ... with M_p : Q^{k_p} -> Q^{k_{p+1}}; when `period` is
/// non-empty it repeats forever after the prefix.
struct MatrixSequence {
    std::vector<RatMatrix> prefix;
    std::vector<RatMatrix> period;
};

inline constexpr std::size_t kDefaultWindow = 8;

/// Periodic sequences are exact: with T the composite over one period (a
/// D x D matrix), the limit has dimension rank(T^D). Finite sequences are
/// exact only if the eventual-image ranks settle with `window` margin inside
/// the data, otherwise an interval is returned.
ColimitReport colim_dim(const MatrixSequence& seq, std::size_t window = kDefaultWindow);

/// Rank of the composite period matrix T and its powers until it settles;
/// returns the settled rank. `trace` receives rank(T^1), rank(T^2), ...
std::size_t eventual_rank(const RatMatrix& t, std::vector<std::size_t>* trace = nullptr);

/// Product M_{last} ... M_{first}; `dim` is the column count when the range is empty.
RatMatrix chain_product(std::span<const RatMatrix> mats, Eigen::Index dim);

/// F_m of the limit of an inductive system. Periodic tails give exact answers.
ColimitReport fm_of_system(const InductiveSystem& sys, int m, std::size_t window = kDefaultWindow);

} // namespace ratk
