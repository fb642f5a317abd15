#pragma once

#include "ratk/fm.hpp"
#include "ratk/system.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ratk {

enum class Verdict { Yes, No, Unknown };

/// A verdict together with whether it is a proof (exact) or only holds up
/// to the checked bounds.
struct Decision {
    Verdict verdict = Verdict::Unknown;
    bool exact = false;
    friend bool operator==(const Decision&, const Decision&) = default;
};

std::string to_string(Verdict v);

// ---------------------------------------------------------------------------
// Multiplicity digraph of a periodic tail
// ---------------------------------------------------------------------------

/// Vertices are summand classes (phase k of the tail, summand index); template
/// k contributes an edge (k, j) -> (k+1 mod P, i) whenever its multiplicity
/// a_ij is positive. Each vertex carries the pad of its size rule.
class MultiplicityDigraph {
public:
    struct Vertex {
        std::size_t phase;
        std::size_t summand;
        Integer pad;
    };
    struct Edge {
        std::size_t from;
        std::size_t to;
        Integer weight;
    };
    enum class Growth { Bounded, Unbounded };

    explicit MultiplicityDigraph(const TailDescriptor& tail);

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t id(std::size_t phase, std::size_t summand) const;

    /// Strongly connected components, each listed in increasing vertex id.
    std::vector<std::vector<std::size_t>> components() const;

    /// A cyclic component whose sizes can never grow: a simple cycle of
    /// multiplicity-1 edges with no other incoming edges and zero pads.
    bool is_neutral_cycle(const std::vector<std::size_t>& component) const;

    /// Size growth of every class along the tail. A class is unbounded iff it
    /// is reachable from a cyclic component that is not a neutral cycle.
    std::vector<Growth> growth() const;

    /// Classes reachable from some directed cycle.
    std::vector<bool> persistent() const;

    /// First bounded persistent class (smallest id), if any.
    std::optional<std::size_t> bounded_persistent_class() const;

private:
    bool has_self_loop(std::size_t v) const;
    std::vector<bool> reachable_from(const std::vector<bool>& seeds) const;

    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> phase_offset_;
    std::vector<std::vector<std::size_t>> out_;
};

// ---------------------------------------------------------------------------
// Orphan elimination
// ---------------------------------------------------------------------------

enum class EliminationOutcome {
    Eliminated,   // subsequence found; `system` is the reduced system
    Blocked,      // provably no such subsequence in this presentation
    Inconclusive  // ran out of prefix or search budget
};

struct EliminationResult {
    EliminationOutcome outcome = EliminationOutcome::Inconclusive;
    InductiveSystem system;
    /// Unrolled stage indices that became the stages of `system`'s prefix.
    std::vector<std::size_t> retained;
    /// For periodic results, the tail replays the steps retained[cycle_start..].
    std::size_t cycle_start = 0;
    /// Offending arrow when not eliminated: summand `blocking_summand` of stage
    /// `blocking_stage` (size m) receives from stage `blocking_source`.
    std::size_t blocking_stage = 0;
    std::size_t blocking_summand = 0;
    std::size_t blocking_source = 0;
    /// No summand of size m anywhere; `system` is the input.
    bool unchanged = false;
    std::string note;
};

/// Precondition: every stage has min_dim >= m (InputError otherwise). Selects
/// stages x_1 < x_2 < ... whose size-m summands receive nothing from the
/// previous selected stage, drops those summands and composes the maps in
/// between. Every retained stage of the result has min_dim >= m + 1.
/// `budget` bounds how many stages past the periodic regime are searched.
EliminationResult orphan_eliminate(const InductiveSystem& sys, const Integer& m, std::size_t budget);

// ---------------------------------------------------------------------------
// Checkers
// ---------------------------------------------------------------------------

struct StabilityBounds {
    int m_max = 1;
    int j_max = 4;
    std::size_t budget = 256;
    std::size_t window = kDefaultWindow;
};

/// m_max = 2 * (largest size over the prefix and two tail periods) + 1, j_max = 4.
StabilityBounds default_bounds(const InductiveSystem& sys);

struct PersistentClassWitness {
    std::size_t phase;
    std::size_t summand;
    Integer size;
};

struct EliminationStep {
    int m;
    EliminationOutcome outcome;
    std::vector<std::size_t> retained;
    std::size_t period;
    std::string note;
};

struct SdgResult {
    Decision decision;
    std::optional<PersistentClassWitness> witness;
    std::vector<EliminationStep> trace;
};

/// Slow dimension growth of the given presentation. Periodic tails are decided
/// exactly through the multiplicity digraph; the orphan-elimination trace for
/// m = 1..m_max is recorded as evidence and cross-checked against it.
SdgResult check_sdg(const InductiveSystem& sys, int m_max, std::size_t budget);

struct IsoFailure {
    int m;
    int j;
    Integer dim_small;     // dim F_m(M_{j-1}(A))
    Integer dim_large;     // dim F_m(M_j(A))
    Integer induced_rank;  // rank of F_m(iota_j) on the limits
};

struct RationalResult {
    /// What the bounded search alone established.
    Decision raw;
    /// After combining with the exact digraph criterion for periodic tails.
    Decision decision;
    std::optional<IsoFailure> witness;
};

/// F_m(iota_j) : F_m(M_{j-1}(A)) -> F_m(M_j(A)) for j = 2..j_max, m = 1..m_max.
RationalResult check_rational_k_stability(const InductiveSystem& sys, int m_max, int j_max,
                                          std::size_t window = kDefaultWindow);

/// Dimensions and rank of F_m(iota_j) on the limits for one (m, j).
IsoFailure inclusion_data(const InductiveSystem& sys, int m, int j, bool* exact,
                          std::size_t window = kDefaultWindow);

struct StabilityReport {
    Decision sdg;
    Decision rationally_k_stable;
    Decision k_stable;
    std::optional<PersistentClassWitness> persistent_class;
    std::optional<IsoFailure> failing_pair;
    std::vector<EliminationStep> elimination_trace;
    StabilityBounds bounds;
    std::size_t prefix_length = 0;
};

/// Runs both checkers; throws InconsistencyError if two exact verdicts
/// disagree. K-stability is reported through its equivalence with the other two.
StabilityReport k_stability_report(const InductiveSystem& sys, const StabilityBounds& bounds);

// ---------------------------------------------------------------------------
// AF quotient
// ---------------------------------------------------------------------------

struct AfTemplate {
    IntMatrix multiplicities;
    IntVector pad;
};

/// Evaluation at 1 of every stage: finite-dimensional stages connected by the
/// multiplicity parts of the signature matrices.
struct AfSystem {
    std::vector<FiniteDimAlgebra> stages;
    std::vector<IntMatrix> maps;
    std::vector<AfTemplate> period;
};

AfSystem quotient_system(const InductiveSystem& sys);

ColimitReport fm_of_af_system(const AfSystem& af, int m, std::size_t window = kDefaultWindow);

} // namespace ratk
