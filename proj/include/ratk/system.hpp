#pragma once

#include "ratk/algebra.hpp"
#include "ratk/hom.hpp"
#include "ratk/numeric.hpp"

#include <vector>

namespace ratk {

/// One step of a periodic tail: the signature pairs of the connecting map and
/// the padding in the size rule  next_sizes = multiplicities * sizes + pad.
struct SignatureTemplate {
    IntMatrix multiplicities;
    IntMatrix windings;
    IntVector pad;

    friend bool operator==(const SignatureTemplate& x, const SignatureTemplate& y) {
        return x.multiplicities == y.multiplicities && x.windings == y.windings && x.pad == y.pad;
    }
};

/// Empty period means no tail: the system is just its finite prefix.
struct TailDescriptor {
    std::vector<SignatureTemplate> period;

    bool is_periodic() const { return !period.empty(); }
    friend bool operator==(const TailDescriptor&, const TailDescriptor&) = default;
};

/// A_0 -> A_1 -> ... -> A_{L-1}, optionally continued forever by cycling
/// through the tail templates starting from A_{L-1}.
class InductiveSystem {
public:
    InductiveSystem() = default;
    /// Validates shapes, map validity and tail chaining; throws InputError.
    InductiveSystem(std::vector<CircleAlgebra> stages, std::vector<SignatureMatrix> maps,
                    TailDescriptor tail = {});

    const std::vector<CircleAlgebra>& stages() const { return stages_; }
    const std::vector<SignatureMatrix>& maps() const { return maps_; }
    const TailDescriptor& tail() const { return tail_; }
    std::size_t prefix_length() const { return stages_.size(); }
    std::size_t period() const { return tail_.period.size(); }

    friend bool operator==(const InductiveSystem&, const InductiveSystem&) = default;

private:
    std::vector<CircleAlgebra> stages_;
    std::vector<SignatureMatrix> maps_;
    TailDescriptor tail_;
};

/// Lazily generated stages and maps of a system, with the periodic tail
/// expanded on demand. Sizes are exact; every generated map is re-validated.
class Unrolling {
public:
    explicit Unrolling(InductiveSystem sys);

    const InductiveSystem& system() const { return sys_; }
    /// Number of stages, or SIZE_MAX-like "unbounded" for periodic systems.
    bool unbounded() const { return sys_.tail().is_periodic(); }
    std::size_t available() const;

    const CircleAlgebra& stage(std::size_t s);
    /// Map from stage s to stage s + 1.
    const SignatureMatrix& map(std::size_t s);
    /// Template index used by map(s), or -1 inside the prefix.
    long template_index(std::size_t s) const;

private:
    void extend_to(std::size_t s);

    InductiveSystem sys_;
    std::vector<CircleAlgebra> stages_;
    std::vector<SignatureMatrix> maps_;
};

/// Tail-free system with exactly `length` stages (the first `length` stages of
/// the unrolling). Throws if `length` is shorter than the prefix, or longer than
/// a tail-free prefix.
InductiveSystem generate_prefix(const InductiveSystem& sys, std::size_t length);

/// Eventual behaviour of sizes capped at `cap`: from stage `start` on, the
/// capped sizes (and the templates) repeat with period `length` stages.
/// `length` is a multiple of the tail period.
struct PeriodicRegime {
    std::size_t start;
    std::size_t length;
};

/// Requires a periodic tail. Runs the size rule on sizes truncated at cap,
/// which is exact for every comparison against values <= cap because the
/// rule is monotone with non-negative coefficients.
PeriodicRegime find_regime(const InductiveSystem& sys, const Integer& cap);

/// M_j of every stage; signature matrices and templates are unchanged and
/// pads scale by j.
InductiveSystem amplify(const InductiveSystem& sys, const Integer& j);

} // namespace ratk
