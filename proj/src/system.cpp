#include "ratk/system.hpp"

#include <limits>
#include <map>

namespace ratk {

namespace {

std::string stage_label(std::size_t p) { return "maps[" + std::to_string(p) + "]"; }

void check_template(const SignatureTemplate& t, std::size_t index) {
    const std::string where = "tail.templates[" + std::to_string(index) + "]";
    if (t.multiplicities.rows() != t.windings.rows() || t.multiplicities.cols() != t.windings.cols())
        throw InputError(where + ": multiplicity and winding parts differ in shape");
    if (t.pad.size() != t.multiplicities.rows())
        throw InputError(where + ": pad has " + std::to_string(t.pad.size()) + " entries, expected " +
                         std::to_string(t.multiplicities.rows()));
    for (Eigen::Index i = 0; i < t.multiplicities.rows(); ++i) {
        if (t.pad(i) < 0) throw InputError(where + ": pad entries must be non-negative");
        for (Eigen::Index j = 0; j < t.multiplicities.cols(); ++j) {
            if (t.multiplicities(i, j) < 0)
                throw InputError(where + ": multiplicity must be non-negative at [" + std::to_string(i) +
                                 "][" + std::to_string(j) + "]");
            if (t.multiplicities(i, j) == 0 && t.windings(i, j) != 0)
                throw InputError("a=0 requires b=0 at " + where + ".entries[" + std::to_string(i) + "][" +
                                 std::to_string(j) + "]");
        }
    }
}

CircleAlgebra apply_size_rule(const SignatureTemplate& t, const CircleAlgebra& from) {
    std::vector<Integer> next;
    next.reserve(static_cast<std::size_t>(t.multiplicities.rows()));
    for (Eigen::Index i = 0; i < t.multiplicities.rows(); ++i) {
        Integer size = t.pad(i);
        for (Eigen::Index j = 0; j < t.multiplicities.cols(); ++j)
            size += t.multiplicities(i, j) * from.size(static_cast<std::size_t>(j));
        if (size < 1)
            throw InputError("size rule produces an empty summand (row " + std::to_string(i) +
                             " receives nothing and has zero pad)");
        next.push_back(std::move(size));
    }
    return CircleAlgebra(std::move(next));
}

} // namespace

InductiveSystem::InductiveSystem(std::vector<CircleAlgebra> stages, std::vector<SignatureMatrix> maps,
                                 TailDescriptor tail)
    : stages_(std::move(stages)), maps_(std::move(maps)), tail_(std::move(tail)) {
    if (stages_.empty()) throw InputError("at least one stage required");
    if (maps_.size() + 1 != stages_.size())
        throw InputError("expected " + std::to_string(stages_.size() - 1) + " maps for " +
                         std::to_string(stages_.size()) + " stages, got " + std::to_string(maps_.size()));
    for (std::size_t p = 0; p < maps_.size(); ++p) {
        if (!(maps_[p].source() == stages_[p]) || !(maps_[p].target() == stages_[p + 1]))
            throw InputError(stage_label(p) + ": source/target do not match stages " + std::to_string(p) +
                             " and " + std::to_string(p + 1));
        auto report = validate(maps_[p]);
        if (!report.ok()) {
            const auto& v = report.violations.front();
            std::string at = v.col < 0 ? ".entries[" + std::to_string(v.row) + "]"
                                       : ".entries[" + std::to_string(v.row) + "][" + std::to_string(v.col) + "]";
            throw InputError(v.message + " at " + stage_label(p) + at);
        }
    }
    const auto& period = tail_.period;
    for (std::size_t k = 0; k < period.size(); ++k) check_template(period[k], k);
    if (!period.empty()) {
        const auto last = static_cast<Eigen::Index>(stages_.back().summands());
        if (period.front().multiplicities.cols() != last)
            throw InputError("tail.templates[0] expects " + std::to_string(period.front().multiplicities.cols()) +
                             " source summands but the last stage has " + std::to_string(last));
        for (std::size_t k = 0; k < period.size(); ++k) {
            const auto& next = period[(k + 1) % period.size()];
            if (period[k].multiplicities.rows() != next.multiplicities.cols())
                throw InputError("tail.templates[" + std::to_string(k) + "] does not chain with tail.templates[" +
                                 std::to_string((k + 1) % period.size()) + "]");
        }
    }
}

Unrolling::Unrolling(InductiveSystem sys)
    : sys_(std::move(sys)), stages_(sys_.stages()), maps_(sys_.maps()) {}

std::size_t Unrolling::available() const {
    return unbounded() ? std::numeric_limits<std::size_t>::max() : sys_.prefix_length();
}

long Unrolling::template_index(std::size_t s) const {
    const std::size_t tail_start = sys_.prefix_length() - 1;
    if (s < tail_start || !unbounded()) return -1;
    return static_cast<long>((s - tail_start) % sys_.period());
}

void Unrolling::extend_to(std::size_t s) {
    if (s < stages_.size()) return;
    if (!unbounded())
        throw InputError("stage " + std::to_string(s) + " requested but the system has only " +
                         std::to_string(stages_.size()) + " stages and no tail");
    while (stages_.size() <= s) {
        const std::size_t from = stages_.size() - 1;
        const auto& t = sys_.tail().period[static_cast<std::size_t>(template_index(from))];
        CircleAlgebra next = apply_size_rule(t, stages_.back());
        SignatureMatrix step(stages_.back(), next, t.multiplicities, t.windings);
        auto report = validate(step);
        if (!report.ok())
            throw InputError("generated map at stage " + std::to_string(from) + " is invalid: " +
                             report.violations.front().message);
        stages_.push_back(std::move(next));
        maps_.push_back(std::move(step));
    }
}

const CircleAlgebra& Unrolling::stage(std::size_t s) {
    extend_to(s);
    return stages_[s];
}

const SignatureMatrix& Unrolling::map(std::size_t s) {
    extend_to(s + 1);
    return maps_[s];
}

InductiveSystem generate_prefix(const InductiveSystem& sys, std::size_t length) {
    if (length < sys.prefix_length())
        throw InputError("requested prefix of " + std::to_string(length) + " stages is shorter than the existing " +
                         std::to_string(sys.prefix_length()));
    if (!sys.tail().is_periodic()) {
        if (length != sys.prefix_length())
            throw InputError("system has no tail; cannot unroll beyond " + std::to_string(sys.prefix_length()) +
                             " stages");
        return sys;
    }
    Unrolling u(sys);
    std::vector<CircleAlgebra> stages;
    std::vector<SignatureMatrix> maps;
    for (std::size_t s = 0; s < length; ++s) {
        stages.push_back(u.stage(s));
        if (s + 1 < length) maps.push_back(u.map(s));
    }
    return InductiveSystem(std::move(stages), std::move(maps));
}

PeriodicRegime find_regime(const InductiveSystem& sys, const Integer& cap) {
    if (!sys.tail().is_periodic()) throw InputError("system has no periodic tail");
    const auto& period = sys.tail().period;
    std::vector<Integer> capped;
    for (const auto& n : sys.stages().back().sizes()) capped.push_back(n < cap ? n : cap);

    std::map<std::vector<Integer>, std::size_t> seen;
    for (std::size_t k = 0;; ++k) {
        auto [it, fresh] = seen.emplace(capped, k);
        if (!fresh) {
            const std::size_t tail_start = sys.prefix_length() - 1;
            return {tail_start + it->second * period.size(), (k - it->second) * period.size()};
        }
        for (const auto& t : period) {
            std::vector<Integer> next;
            for (Eigen::Index i = 0; i < t.multiplicities.rows(); ++i) {
                Integer v = t.pad(i);
                for (Eigen::Index j = 0; j < t.multiplicities.cols(); ++j)
                    v += t.multiplicities(i, j) * capped[static_cast<std::size_t>(j)];
                next.push_back(v < cap ? v : cap);
            }
            capped = std::move(next);
        }
    }
}

InductiveSystem amplify(const InductiveSystem& sys, const Integer& j) {
    std::vector<CircleAlgebra> stages;
    for (const auto& a : sys.stages()) stages.push_back(amplify(a, j));
    std::vector<SignatureMatrix> maps;
    for (std::size_t p = 0; p < sys.maps().size(); ++p)
        maps.emplace_back(stages[p], stages[p + 1], sys.maps()[p].multiplicities(), sys.maps()[p].windings());
    TailDescriptor tail = sys.tail();
    for (auto& t : tail.period) t.pad = (t.pad.array() * j).matrix();
    return InductiveSystem(std::move(stages), std::move(maps), std::move(tail));
}

} // namespace ratk
