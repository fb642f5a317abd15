#pragma once

#include "ratk/algebra.hpp"
#include "ratk/numeric.hpp"

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace ratk {

// ---------------------------------------------------------------------------
// Paths in the circle
// ---------------------------------------------------------------------------

/// t -> exp(2 pi i (phase + winding * t)); always a loop.
struct PowerPath {
    Integer winding;
    Rational phase;
};

/// t -> exp(2 pi i (phase + turns * t)); a loop iff turns is an integer.
struct ArcPath {
    Rational turns;
    Rational phase;
};

/// Samples of a path on the uniform grid t_k = k / (N - 1), k = 0..N-1.
struct SampledPath {
    std::vector<std::complex<double>> points;
};

using CirclePath = std::variant<PowerPath, ArcPath, SampledPath>;

inline constexpr double kUnitModulusTolerance = 1e-12;
inline constexpr double kEndpointTolerance = 1e-9;
inline constexpr double kWindingRoundingTolerance = 1e-6;
inline constexpr double kRealizerTolerance = 1e-9;
inline constexpr std::size_t kDefaultGridSize = 512;

/// Throws InputError unless every sample has unit modulus and consecutive
/// samples are less than half a turn apart (so the discrete lift is unique).
void check_sampling(const SampledPath& path);

std::complex<double> start_point(const CirclePath& path);
std::complex<double> end_point(const CirclePath& path);
bool is_loop(const CirclePath& path);

/// Value at grid point k of an N-point uniform grid on [0, 1].
/// Sampled paths must have exactly N samples.
std::complex<double> path_at(const CirclePath& path, std::size_t k, std::size_t grid);

/// Change of the continuous argument from t = 0 to t = 1, in turns.
double lift_increment(const CirclePath& path);

/// Winding number of a loop. Rejects non-loops and badly sampled input.
Integer winding_number(const CirclePath& path);

// ---------------------------------------------------------------------------
// Blocks
// ---------------------------------------------------------------------------

/// One summand-to-summand component C(T) (x) M_n -> C(T) (x) M_l in data-tuple
/// form. permutation[p] is sigma(p) (0-based) and the endpoint condition is
/// path[sigma(p)](0) == path[p](1). The unitary path from 1 to v_sigma is not
/// stored; the realizer synthesizes one.
struct TypeABlock {
    Integer source_size{1};
    Integer target_size{1};
    std::vector<std::size_t> permutation;
    std::vector<CirclePath> paths;
    bool has_unitary_path = true;

    std::size_t multiplicity() const { return paths.size(); }
};

/// Throws InputError if a * n > l, sigma is not a bijection of {0..a-1},
/// the path count disagrees with sigma, or endpoints do not match.
void validate_block(const TypeABlock& block);

/// Diagonal (power-loop) component f -> diag(f(z^{b_1}), ..., f(z^{b_a}), 0).
struct DiagonalBlock {
    Integer source_size{1};
    Integer target_size{1};
    std::vector<Integer> windings;

    std::size_t multiplicity() const { return windings.size(); }
    friend bool operator==(const DiagonalBlock&, const DiagonalBlock&) = default;
};

/// Disjoint cycles of a permutation; each cycle starts at its smallest
/// element and follows p -> sigma(p).
std::vector<std::vector<std::size_t>> cycle_decomposition(const std::vector<std::size_t>& sigma);

/// Homotopy normal form. Along every cycle (c_1 ... c_r) of sigma the paths
/// concatenate to one loop; its winding sits at position c_r and the other
/// positions of the cycle become constant loops.
DiagonalBlock reduce_to_diagonal(const TypeABlock& block);

// ---------------------------------------------------------------------------
// Signatures
// ---------------------------------------------------------------------------

struct SignaturePair {
    Integer a;
    Integer b;
    friend bool operator==(const SignaturePair&, const SignaturePair&) = default;
};

SignaturePair signature_of(const DiagonalBlock& block);

/// L x K grid of (multiplicity, total winding) pairs for a diagonal map
/// source -> target. The multiplicity and winding parts are kept as two
/// integer matrices so composition is two ordinary matrix products.
class SignatureMatrix {
public:
    SignatureMatrix() = default;
    /// Shape-checked only; use validate() for the algebraic invariants.
    SignatureMatrix(CircleAlgebra source, CircleAlgebra target, IntMatrix multiplicities,
                    IntMatrix windings);

    const CircleAlgebra& source() const { return source_; }
    const CircleAlgebra& target() const { return target_; }
    const IntMatrix& multiplicities() const { return mult_; }
    const IntMatrix& windings() const { return wind_; }
    Eigen::Index rows() const { return mult_.rows(); }
    Eigen::Index cols() const { return mult_.cols(); }
    SignaturePair operator()(Eigen::Index i, Eigen::Index j) const { return {mult_(i, j), wind_(i, j)}; }

    friend bool operator==(const SignatureMatrix& x, const SignatureMatrix& y) {
        return x.source_ == y.source_ && x.target_ == y.target_ && x.mult_ == y.mult_ &&
               x.wind_ == y.wind_;
    }

private:
    CircleAlgebra source_;
    CircleAlgebra target_;
    IntMatrix mult_;
    IntMatrix wind_;
};

struct Violation {
    enum class Kind { NegativeMultiplicity, WindingWithoutMultiplicity, RowOverflow };
    Kind kind;
    Eigen::Index row;
    Eigen::Index col;  // -1 for row-level violations
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate(const SignatureMatrix& s);

/// Throws InputError carrying the first violation.
void require_valid(const SignatureMatrix& s);

SignatureMatrix identity_signature(const CircleAlgebra& a);

/// s2 after s1. Pairs multiply componentwise and add componentwise.
SignatureMatrix compose(const SignatureMatrix& s2, const SignatureMatrix& s1);

// ---------------------------------------------------------------------------
// Whole homomorphisms
// ---------------------------------------------------------------------------

/// A Type A map between circle algebras: blocks[i][j] maps source summand j
/// into target summand i. Empty blocks have multiplicity 0.
struct TypeAHom {
    CircleAlgebra source;
    CircleAlgebra target;
    std::vector<std::vector<TypeABlock>> blocks;
};

struct DiagonalHom {
    CircleAlgebra source;
    CircleAlgebra target;
    std::vector<std::vector<DiagonalBlock>> blocks;
    SignatureMatrix signature;
};

/// Validates every block and the row capacities, then reduces blockwise.
DiagonalHom reduce(const TypeAHom& hom);

// ---------------------------------------------------------------------------
// Numeric realization
// ---------------------------------------------------------------------------

/// A continuous function T -> M_n, evaluated pointwise.
using CircleFunction = std::function<Eigen::MatrixXcd(std::complex<double>)>;

/// Canonical unitary path from the identity to a signed permutation matrix
/// implementing sigma (columns e_p -> +-e_{sigma(p)}), built from plane
/// rotations by angle pi t / 2.
Eigen::MatrixXd permutation_path(const std::vector<std::size_t>& sigma, double t);

/// phi(f)(t_k) = u(t) diag(f(lambda_1(t)), ..., f(lambda_a(t)), 0) u(t)^*
/// with u(t) = diag(w(t) (x) I_n, I). Returns an l x l matrix.
Eigen::MatrixXcd realize(const TypeABlock& block, const CircleFunction& f, std::size_t t_index,
                         std::size_t grid = kDefaultGridSize);

Eigen::MatrixXcd realize(const DiagonalBlock& block, const CircleFunction& f, std::size_t t_index,
                         std::size_t grid = kDefaultGridSize);

/// Grid size implied by a block: the sample count if any path is sampled,
/// otherwise `fallback`. Throws InputError on inconsistent sample counts.
std::size_t block_grid(const TypeABlock& block, std::size_t fallback = kDefaultGridSize);

} // namespace ratk
