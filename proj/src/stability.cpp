#include "ratk/stability.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace ratk {

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Unknown: return "unknown";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// MultiplicityDigraph
// ---------------------------------------------------------------------------

MultiplicityDigraph::MultiplicityDigraph(const TailDescriptor& tail) {
    const auto& period = tail.period;
    if (period.empty()) throw InputError("multiplicity digraph needs a periodic tail");
    const std::size_t p = period.size();
    for (std::size_t k = 0; k < p; ++k) {
        phase_offset_.push_back(vertices_.size());
        // Vertices of phase k are the source summands of template k; their pads
        // come from the template of the previous phase.
        const auto& incoming = period[(k + p - 1) % p];
        for (Eigen::Index j = 0; j < period[k].multiplicities.cols(); ++j)
            vertices_.push_back({k, static_cast<std::size_t>(j), incoming.pad(j)});
    }
    out_.resize(vertices_.size());
    for (std::size_t k = 0; k < p; ++k) {
        const auto& a = period[k].multiplicities;
        const std::size_t next = (k + 1) % p;
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            for (Eigen::Index j = 0; j < a.cols(); ++j)
                if (a(i, j) > 0) {
                    const std::size_t from = phase_offset_[k] + static_cast<std::size_t>(j);
                    const std::size_t to = phase_offset_[next] + static_cast<std::size_t>(i);
                    edges_.push_back({from, to, a(i, j)});
                    out_[from].push_back(to);
                }
    }
}

std::size_t MultiplicityDigraph::id(std::size_t phase, std::size_t summand) const {
    return phase_offset_.at(phase) + summand;
}

bool MultiplicityDigraph::has_self_loop(std::size_t v) const {
    return std::find(out_[v].begin(), out_[v].end(), v) != out_[v].end();
}

std::vector<std::vector<std::size_t>> MultiplicityDigraph::components() const {
    // Tarjan's algorithm.
    const std::size_t n = vertices_.size();
    std::vector<long> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> result;
    long counter = 0;

    std::function<void(std::size_t)> visit = [&](std::size_t v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (auto w : out_[v]) {
            if (index[w] < 0) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::vector<std::size_t> comp;
            std::size_t w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp.push_back(w);
            } while (w != v);
            std::sort(comp.begin(), comp.end());
            result.push_back(std::move(comp));
        }
    };
    for (std::size_t v = 0; v < n; ++v)
        if (index[v] < 0) visit(v);
    std::sort(result.begin(), result.end());
    return result;
}

bool MultiplicityDigraph::is_neutral_cycle(const std::vector<std::size_t>& component) const {
    if (component.empty()) return false;
    if (component.size() == 1 && !has_self_loop(component.front())) return false;
    const std::set<std::size_t> members(component.begin(), component.end());
    std::map<std::size_t, int> in_degree;
    for (const auto& e : edges_) {
        if (!members.count(e.to)) continue;
        if (!members.count(e.from) || e.weight != 1) return false;
        if (++in_degree[e.to] > 1) return false;
    }
    for (auto v : component)
        if (vertices_[v].pad != 0) return false;
    return true;
}

std::vector<bool> MultiplicityDigraph::reachable_from(const std::vector<bool>& seeds) const {
    std::vector<bool> seen = seeds;
    std::vector<std::size_t> todo;
    for (std::size_t v = 0; v < seeds.size(); ++v)
        if (seeds[v]) todo.push_back(v);
    while (!todo.empty()) {
        const auto v = todo.back();
        todo.pop_back();
        for (auto w : out_[v])
            if (!seen[w]) {
                seen[w] = true;
                todo.push_back(w);
            }
    }
    return seen;
}

std::vector<MultiplicityDigraph::Growth> MultiplicityDigraph::growth() const {
    std::vector<bool> growing(vertices_.size(), false);
    for (const auto& comp : components()) {
        const bool cyclic = comp.size() > 1 || has_self_loop(comp.front());
        if (cyclic && !is_neutral_cycle(comp))
            for (auto v : comp) growing[v] = true;
    }
    const auto reach = reachable_from(growing);
    std::vector<Growth> out;
    for (bool r : reach) out.push_back(r ? Growth::Unbounded : Growth::Bounded);
    return out;
}

std::vector<bool> MultiplicityDigraph::persistent() const {
    std::vector<bool> cyclic(vertices_.size(), false);
    for (const auto& comp : components())
        if (comp.size() > 1 || has_self_loop(comp.front()))
            for (auto v : comp) cyclic[v] = true;
    return reachable_from(cyclic);
}

std::optional<std::size_t> MultiplicityDigraph::bounded_persistent_class() const {
    const auto g = growth();
    const auto p = persistent();
    for (std::size_t v = 0; v < vertices_.size(); ++v)
        if (p[v] && g[v] == Growth::Bounded) return v;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Orphan elimination
// ---------------------------------------------------------------------------

namespace {

/// Boolean pattern of a multiplicity matrix product, row-major.
struct Pattern {
    std::size_t rows = 0, cols = 0;
    std::vector<std::uint8_t> bits;

    static Pattern identity(std::size_t n) {
        Pattern p{n, n, std::vector<std::uint8_t>(n * n, 0)};
        for (std::size_t i = 0; i < n; ++i) p.bits[i * n + i] = 1;
        return p;
    }
    bool row_zero(std::size_t i) const {
        for (std::size_t j = 0; j < cols; ++j)
            if (bits[i * cols + j]) return false;
        return true;
    }
    friend bool operator<(const Pattern& x, const Pattern& y) {
        return std::tie(x.rows, x.cols, x.bits) < std::tie(y.rows, y.cols, y.bits);
    }
};

Pattern step(const IntMatrix& a, const Pattern& b) {
    const auto rows = static_cast<std::size_t>(a.rows());
    Pattern out{rows, b.cols, std::vector<std::uint8_t>(rows * b.cols, 0)};
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < b.rows; ++k) {
            if (a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) == 0) continue;
            for (std::size_t j = 0; j < b.cols; ++j)
                if (b.bits[k * b.cols + j]) out.bits[i * b.cols + j] = 1;
        }
    return out;
}

CircleAlgebra restrict_stage(const CircleAlgebra& a, const std::vector<std::size_t>& keep) {
    std::vector<Integer> sizes;
    for (auto j : keep) sizes.push_back(a.size(j));
    return CircleAlgebra(std::move(sizes));
}

IntMatrix restrict_matrix(const IntMatrix& m, const std::vector<std::size_t>& rows,
                          const std::vector<std::size_t>& cols) {
    IntMatrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                m(static_cast<Eigen::Index>(rows[r]), static_cast<Eigen::Index>(cols[c]));
    return out;
}

/// Composite signature from unrolled stage `from` to stage `to` (from < to).
SignatureMatrix composite(Unrolling& u, std::size_t from, std::size_t to) {
    SignatureMatrix acc = u.map(from);
    for (std::size_t s = from + 1; s < to; ++s) acc = compose(u.map(s), acc);
    return acc;
}

std::string describe_block(std::size_t stage, std::size_t summand, std::size_t source) {
    return "summand " + std::to_string(summand) + " of stage " + std::to_string(stage) +
           " receives from stage " + std::to_string(source);
}

} // namespace

EliminationResult orphan_eliminate(const InductiveSystem& sys, const Integer& m, std::size_t budget) {
    if (m < 1) throw InputError("m must be >= 1");
    Unrolling u(sys);
    const bool periodic = sys.tail().is_periodic();
    PeriodicRegime regime{0, 0};
    std::size_t horizon = sys.prefix_length();
    if (periodic) {
        regime = find_regime(sys, m + 1);
        horizon = std::max(horizon, regime.start + regime.length + 1);
    }

    // Sizes capped at m + 1 repeat from the regime on, so `horizon` stages
    // cover every pattern of size-m summands.
    bool any_at_m = false;
    for (std::size_t s = 0; s < horizon; ++s) {
        const auto md = min_dim(u.stage(s));
        if (md && *md < m)
            throw InputError("orphan elimination at m = " + m.str() + " requires min_dim >= m; stage " +
                             std::to_string(s) + " has a summand of size " + md->str());
        if (!split_by_size(u.stage(s), m).at.empty()) any_at_m = true;
    }

    EliminationResult result;
    if (!any_at_m) {
        result.outcome = EliminationOutcome::Eliminated;
        result.system = sys;
        for (std::size_t s = 0; s < sys.prefix_length(); ++s) result.retained.push_back(s);
        result.cycle_start = sys.prefix_length() - 1;
        result.unchanged = true;
        result.note = "no summand of size " + m.str();
        return result;
    }

    auto at_m = [&](std::size_t s) { return split_by_size(u.stage(s), m).at; };
    const bool keep0 = at_m(0).empty();
    std::vector<std::size_t> selected{0};
    std::map<std::size_t, std::size_t> residue_seen;  // residue -> position in `selected`
    std::optional<std::size_t> cycle_from;
    if (periodic && keep0 && regime.start == 0) residue_seen[0] = 0;

    std::size_t x = 0;
    while (true) {
        if (!periodic && x + 1 == sys.prefix_length()) break;
        Pattern b = Pattern::identity(u.stage(x).summands());
        std::set<std::pair<std::size_t, Pattern>> states;
        std::size_t y = x;
        while (true) {
            if (!periodic && y + 1 >= sys.prefix_length()) {
                result.outcome = EliminationOutcome::Inconclusive;
                result.blocking_source = x;
                result.note = "prefix ends before a stage with orphaned size-" + m.str() + " summands after stage " +
                              std::to_string(x);
                return result;
            }
            if (periodic && y >= regime.start + budget) {
                result.outcome = EliminationOutcome::Inconclusive;
                result.blocking_source = x;
                result.note = "search budget of " + std::to_string(budget) + " stages exhausted after stage " +
                              std::to_string(x);
                return result;
            }
            b = step(u.map(y).multiplicities(), b);
            ++y;
            std::optional<std::size_t> blocked;
            for (auto i : at_m(y))
                if (!b.row_zero(i)) {
                    blocked = i;
                    break;
                }
            if (!blocked) break;
            result.blocking_stage = y;
            result.blocking_summand = *blocked;
            result.blocking_source = x;
            if (periodic && y >= regime.start) {
                // The future of the search only depends on the phase and the pattern.
                if (!states.emplace((y - regime.start) % regime.length, b).second) {
                    result.outcome = EliminationOutcome::Blocked;
                    result.note = describe_block(y, *blocked, x) + " at every later stage";
                    return result;
                }
            }
        }
        selected.push_back(y);
        x = y;
        if (periodic && x >= regime.start) {
            const std::size_t r = (x - regime.start) % regime.length;
            auto [it, fresh] = residue_seen.emplace(r, selected.size() - 1);
            if (!fresh) {
                cycle_from = it->second;
                break;
            }
        }
    }

    // Retained stages and their kept summands (sizes > m; min_dim >= m holds).
    std::vector<std::size_t> retained;
    if (keep0) retained.push_back(0);
    for (std::size_t k = 1; k < selected.size(); ++k) retained.push_back(selected[k]);
    auto kept = [&](std::size_t s) { return split_by_size(u.stage(s), m).above; };

    std::vector<CircleAlgebra> stages;
    std::vector<SignatureMatrix> maps;
    std::vector<std::vector<std::size_t>> kept_of;
    for (auto s : retained) {
        kept_of.push_back(kept(s));
        stages.push_back(restrict_stage(u.stage(s), kept_of.back()));
    }
    auto restricted = [&](std::size_t k) {
        const auto c = composite(u, retained[k], retained[k + 1]);
        return SignatureMatrix(stages[k], stages[k + 1],
                               restrict_matrix(c.multiplicities(), kept_of[k + 1], kept_of[k]),
                               restrict_matrix(c.windings(), kept_of[k + 1], kept_of[k]));
    };
    for (std::size_t k = 0; k + 1 < retained.size(); ++k) maps.push_back(restricted(k));

    TailDescriptor tail;
    if (periodic) {
        // Position of the cycle start among the retained stages.
        const std::size_t from = selected[*cycle_from];
        const auto pos = static_cast<std::size_t>(
            std::find(retained.begin(), retained.end(), from) - retained.begin());
        for (std::size_t k = pos; k + 1 < retained.size(); ++k) {
            const auto& map = maps[k];
            IntVector pad(map.rows());
            for (Eigen::Index i = 0; i < map.rows(); ++i) {
                Integer v = stages[k + 1].size(static_cast<std::size_t>(i));
                for (Eigen::Index j = 0; j < map.cols(); ++j)
                    v -= map.multiplicities()(i, j) * stages[k].size(static_cast<std::size_t>(j));
                pad(i) = v;
            }
            tail.period.push_back({map.multiplicities(), map.windings(), pad});
        }
        result.cycle_start = pos;

        // Replaying the first template from the last retained stage must agree
        // with the restricted stage one selection gap later.
        const std::size_t gap = retained[pos + 1] - retained[pos];
        const std::size_t probe = retained.back() + gap;
        const auto probe_kept = kept(probe);
        const auto& t0 = tail.period.front();
        bool agree = static_cast<Eigen::Index>(probe_kept.size()) == t0.multiplicities.rows();
        for (Eigen::Index i = 0; agree && i < t0.multiplicities.rows(); ++i) {
            Integer v = t0.pad(i);
            for (Eigen::Index j = 0; j < t0.multiplicities.cols(); ++j)
                v += t0.multiplicities(i, j) * stages.back().size(static_cast<std::size_t>(j));
            agree = v == u.stage(probe).size(probe_kept[static_cast<std::size_t>(i)]);
        }
        if (!agree) throw InconsistencyError("orphan elimination produced a tail that does not replay the system");
    }

    if (stages.empty()) {
        result.outcome = EliminationOutcome::Inconclusive;
        result.note = "no stage can be retained";
        return result;
    }
    result.outcome = EliminationOutcome::Eliminated;
    result.system = InductiveSystem(std::move(stages), std::move(maps), std::move(tail));
    result.retained = std::move(retained);
    return result;
}

// ---------------------------------------------------------------------------
// Checkers
// ---------------------------------------------------------------------------

namespace {

Integer largest_size(const InductiveSystem& sys) {
    Unrolling u(sys);
    const std::size_t count = sys.prefix_length() + 2 * sys.period();
    Integer best = 1;
    for (std::size_t s = 0; s < count; ++s)
        for (const auto& n : u.stage(s).sizes()) best = std::max(best, n);
    return best;
}

constexpr int kMaxDefaultM = 10000;

} // namespace

StabilityBounds default_bounds(const InductiveSystem& sys) {
    StabilityBounds b;
    const Integer big = 2 * largest_size(sys) + 1;
    b.m_max = big > kMaxDefaultM ? kMaxDefaultM : static_cast<int>(big);
    b.j_max = 4;
    b.budget = 256;
    return b;
}

SdgResult check_sdg(const InductiveSystem& sys, int m_max, std::size_t budget) {
    if (m_max < 1) throw InputError("m_max must be >= 1");
    SdgResult result;
    const bool periodic = sys.tail().is_periodic();

    if (periodic) {
        MultiplicityDigraph g(sys.tail());
        if (auto v = g.bounded_persistent_class()) {
            const auto& vx = g.vertices()[*v];
            Unrolling u(sys);
            const std::size_t stage = sys.prefix_length() - 1 + vx.phase;
            result.witness = PersistentClassWitness{vx.phase, vx.summand, u.stage(stage).size(vx.summand)};
            result.decision = {Verdict::No, true};
        } else {
            result.decision = {Verdict::Yes, true};
        }
    }

    // Evidence: iterate orphan elimination level by level.
    InductiveSystem current = sys;
    bool all_eliminated = true;
    bool blocked = false;
    int last_level = 0;
    for (int m = 1; m <= m_max; ++m) {
        EliminationStep entry{m, EliminationOutcome::Inconclusive, {}, 0, {}};
        if (Integer(m) > largest_size(current) && !current.tail().is_periodic()) break;
        auto r = orphan_eliminate(current, Integer(m), budget);
        entry.outcome = r.outcome;
        entry.note = r.note;
        last_level = m;
        if (r.unchanged) continue;
        if (r.outcome == EliminationOutcome::Eliminated) {
            entry.retained = r.retained;
            entry.period = r.system.period();
            current = std::move(r.system);
            result.trace.push_back(std::move(entry));
            continue;
        }
        result.trace.push_back(std::move(entry));
        all_eliminated = false;
        blocked = r.outcome == EliminationOutcome::Blocked;
        if (!result.witness && !periodic)
            result.witness = PersistentClassWitness{r.blocking_stage, r.blocking_summand, Integer(m)};
        break;
    }

    if (periodic) {
        if (result.decision.verdict == Verdict::Yes && blocked)
            throw InconsistencyError("digraph criterion reports slow dimension growth but orphan elimination is "
                                     "provably blocked at m = " + std::to_string(last_level));
        if (result.decision.verdict == Verdict::No && all_eliminated && result.witness &&
            Integer(last_level) >= result.witness->size)
            throw InconsistencyError("digraph criterion reports a bounded persistent class of size " +
                                     result.witness->size.str() + " but orphan elimination removed it");
        return result;
    }

    result.decision = all_eliminated ? Decision{Verdict::Yes, false} : Decision{Verdict::Unknown, false};
    return result;
}

namespace {

/// Inclusion of the live coordinates of F_m(M_{j-1}(B)) into F_m(M_j(B)).
RatMatrix inclusion_matrix(const CircleAlgebra& small, const CircleAlgebra& large, int m) {
    const auto cols = fm_circle(small, m).live();
    const auto rows = fm_circle(large, m).live();
    RatMatrix e = RatMatrix::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const auto it = std::find(rows.begin(), rows.end(), cols[c]);
        if (it == rows.end()) throw InconsistencyError("live coordinate of M_{j-1} is dead in M_j");
        e(static_cast<Eigen::Index>(it - rows.begin()), static_cast<Eigen::Index>(c)) = 1;
    }
    return e;
}

/// Column basis of the eventual image of T.
RatMatrix eventual_image(const RatMatrix& t) {
    RatMatrix basis = column_space(t);
    while (basis.cols() > 0) {
        RatMatrix next = column_space(RatMatrix(t * basis));
        if (next.cols() == basis.cols()) break;
        basis = std::move(next);
    }
    if (t.cols() == 0) return RatMatrix(0, 0);
    return basis;
}

} // namespace

namespace {

// For a fixed j, periodic inclusion data depends on m only through its
// parity, the capped regime and which coordinates are live there.
std::vector<std::size_t> inclusion_key(const InductiveSystem& sys, Unrolling& ux, Unrolling& uy, int m) {
    const auto regime = find_regime(sys, live_threshold(m));
    std::vector<std::size_t> key{static_cast<std::size_t>(m % 2), regime.start, regime.length};
    for (std::size_t s = regime.start; s <= regime.start + regime.length; ++s) {
        for (auto v : fm_circle(ux.stage(s), m).live()) key.push_back(v);
        key.push_back(static_cast<std::size_t>(-1));
        for (auto v : fm_circle(uy.stage(s), m).live()) key.push_back(v);
        key.push_back(static_cast<std::size_t>(-1));
    }
    return key;
}

IsoFailure periodic_inclusion(const InductiveSystem& sys, Unrolling& ux, Unrolling& uy, int m, int j) {
    const auto regime = find_regime(sys, live_threshold(m));
    std::vector<RatMatrix> mx, my;
    for (std::size_t s = regime.start; s < regime.start + regime.length; ++s) {
        mx.push_back(fm_induced(ux.map(s), m));
        my.push_back(fm_induced(uy.map(s), m));
    }
    const RatMatrix tx = chain_product(mx, mx.front().cols());
    const RatMatrix ty = chain_product(my, my.front().cols());
    const RatMatrix e = inclusion_matrix(ux.stage(regime.start), uy.stage(regime.start), m);
    const RatMatrix bx = eventual_image(tx);
    const RatMatrix by = eventual_image(ty);
    // Push the image of the small limit far enough that T_Y has settled.
    RatMatrix w = column_space(RatMatrix(e * bx));
    for (Eigen::Index k = 0; k < ty.rows() && w.cols() > 0; ++k) w = column_space(RatMatrix(ty * w));
    IsoFailure out{m, j, 0, 0, 0};
    out.dim_small = static_cast<unsigned long long>(bx.cols());
    out.dim_large = static_cast<unsigned long long>(by.cols());
    out.induced_rank = static_cast<unsigned long long>(w.cols());
    return out;
}

} // namespace

IsoFailure inclusion_data(const InductiveSystem& sys, int m, int j, bool* exact, std::size_t window) {
    if (m < 1 || j < 2) throw InputError("inclusion data needs m >= 1 and j >= 2");
    const InductiveSystem x = amplify(sys, Integer(j - 1));
    const InductiveSystem y = amplify(sys, Integer(j));
    IsoFailure out{m, j, 0, 0, 0};

    if (sys.tail().is_periodic()) {
        Unrolling ux(x), uy(y);
        if (exact) *exact = true;
        return periodic_inclusion(sys, ux, uy, m, j);
    }

    const auto rx = fm_of_system(x, m, window);
    const auto ry = fm_of_system(y, m, window);
    out.dim_small = rx.dimension();
    out.dim_large = ry.dimension();
    // Image of the small system's stabilized stage, carried to the last stage.
    Unrolling ux(x), uy(y);
    const std::size_t last = sys.prefix_length() - 1;
    const std::size_t from = std::min(rx.stabilization_stage, last);
    RatMatrix img = RatMatrix::Identity(static_cast<Eigen::Index>(fm_circle(ux.stage(from), m).total()),
                                        static_cast<Eigen::Index>(fm_circle(ux.stage(from), m).total()));
    for (std::size_t s = from; s < last; ++s) img = RatMatrix(fm_induced(ux.map(s), m) * img);
    const RatMatrix e = inclusion_matrix(ux.stage(last), uy.stage(last), m);
    out.induced_rank = static_cast<unsigned long long>(rank(RatMatrix(e * img)));
    if (exact) *exact = false;
    (void)ry;
    return out;
}

RationalResult check_rational_k_stability(const InductiveSystem& sys, int m_max, int j_max, std::size_t window) {
    if (m_max < 1) throw InputError("m_max must be >= 1");
    if (j_max < 2) throw InputError("j_max must be >= 2");
    RationalResult result;
    const bool periodic = sys.tail().is_periodic();

    for (int j = 2; j <= j_max && !result.witness; ++j) {
        const InductiveSystem x = amplify(sys, Integer(j - 1));
        const InductiveSystem y = amplify(sys, Integer(j));
        Unrolling ux(x), uy(y);
        std::map<std::vector<std::size_t>, IsoFailure> seen;
        for (int m = 1; m <= m_max; ++m) {
            IsoFailure d;
            if (periodic) {
                auto key = inclusion_key(sys, ux, uy, m);
                auto it = seen.find(key);
                if (it == seen.end()) it = seen.emplace(std::move(key), periodic_inclusion(sys, ux, uy, m, j)).first;
                d = it->second;
                d.m = m;
            } else {
                d = inclusion_data(sys, m, j, nullptr, window);
            }
            if (!(d.dim_small == d.dim_large && d.dim_large == d.induced_rank)) {
                result.witness = d;
                break;
            }
        }
    }

    if (result.witness)
        result.raw = {Verdict::No, periodic};
    else
        result.raw = {Verdict::Yes, false};

    result.decision = result.raw;
    if (periodic && !result.raw.exact) {
        // Rational K-stability is equivalent to slow dimension growth, which the
        // digraph decides exactly.
        const bool sdg = !MultiplicityDigraph(sys.tail()).bounded_persistent_class();
        result.decision = {sdg ? Verdict::Yes : Verdict::No, true};
    }
    return result;
}

StabilityReport k_stability_report(const InductiveSystem& sys, const StabilityBounds& bounds) {
    StabilityReport report;
    report.bounds = bounds;
    report.prefix_length = sys.prefix_length();

    const auto sdg = check_sdg(sys, bounds.m_max, bounds.budget);
    const auto rat = check_rational_k_stability(sys, bounds.m_max, bounds.j_max, bounds.window);
    report.sdg = sdg.decision;
    report.persistent_class = sdg.witness;
    report.elimination_trace = sdg.trace;
    report.rationally_k_stable = rat.decision;
    report.failing_pair = rat.witness;

    const auto conflict = [](const Decision& x, const Decision& y) {
        return x.exact && y.exact && x.verdict != y.verdict;
    };
    if (conflict(sdg.decision, rat.raw) || conflict(sdg.decision, rat.decision))
        throw InconsistencyError("slow dimension growth is " + to_string(sdg.decision.verdict) +
                                 " but rational K-stability is " + to_string(rat.raw.verdict));
    if (sdg.decision.exact)
        report.k_stable = sdg.decision;
    else if (rat.decision.exact)
        report.k_stable = rat.decision;
    else if (sdg.decision.verdict == rat.decision.verdict)
        report.k_stable = {sdg.decision.verdict, false};
    else
        report.k_stable = {Verdict::Unknown, false};
    return report;
}

// ---------------------------------------------------------------------------
// AF quotient
// ---------------------------------------------------------------------------

AfSystem quotient_system(const InductiveSystem& sys) {
    AfSystem af;
    for (const auto& a : sys.stages()) af.stages.push_back(quotient_at_one(a));
    for (const auto& map : sys.maps()) af.maps.push_back(map.multiplicities());
    for (const auto& t : sys.tail().period) af.period.push_back({t.multiplicities, t.pad});
    return af;
}

namespace {

/// Same sizes as the AF system with every winding zero; only used to drive
/// the size rule and the regime search.
InductiveSystem size_carrier(const AfSystem& af) {
    std::vector<CircleAlgebra> stages;
    for (const auto& b : af.stages) stages.emplace_back(b.sizes());
    std::vector<SignatureMatrix> maps;
    for (std::size_t p = 0; p < af.maps.size(); ++p)
        maps.emplace_back(stages.at(p), stages.at(p + 1), af.maps[p],
                          IntMatrix::Zero(af.maps[p].rows(), af.maps[p].cols()));
    TailDescriptor tail;
    for (const auto& t : af.period)
        tail.period.push_back({t.multiplicities, IntMatrix::Zero(t.multiplicities.rows(), t.multiplicities.cols()), t.pad});
    return InductiveSystem(std::move(stages), std::move(maps), std::move(tail));
}

RatMatrix af_induced(const IntMatrix& a, const FiniteDimAlgebra& source, const FiniteDimAlgebra& target, int m) {
    const auto cols = fm_finite_dim(source, m).live();
    const auto rows = fm_finite_dim(target, m).live();
    RatMatrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                Rational(a(static_cast<Eigen::Index>(rows[r]), static_cast<Eigen::Index>(cols[c])));
    return out;
}

} // namespace

ColimitReport fm_of_af_system(const AfSystem& af, int m, std::size_t window) {
    if (m < 1) throw InputError("m must be >= 1");
    const InductiveSystem carrier = size_carrier(af);
    Unrolling u(carrier);
    auto fd = [&](std::size_t s) { return FiniteDimAlgebra(u.stage(s).sizes()); };

    if (af.period.empty()) {
        if (af.maps.empty()) {
            ColimitReport report;
            const auto dim = fm_finite_dim(af.stages.front(), m).total();
            report.lower = report.upper = static_cast<unsigned long long>(dim);
            report.evidence = {dim};
            return report;
        }
        MatrixSequence seq;
        for (std::size_t p = 0; p < af.maps.size(); ++p)
            seq.prefix.push_back(af_induced(af.maps[p], af.stages[p], af.stages[p + 1], m));
        return colim_dim(seq, window);
    }
    const auto regime = find_regime(carrier, live_threshold(m));
    MatrixSequence seq;
    for (std::size_t s = regime.start; s < regime.start + regime.length; ++s)
        seq.period.push_back(af_induced(u.map(s).multiplicities(), fd(s), fd(s + 1), m));
    auto report = colim_dim(seq, window);
    report.stabilization_stage = regime.start;
    return report;
}

} // namespace ratk
