#include "ratk/fm.hpp"

#include <algorithm>

namespace ratk {

std::size_t FmSpace::total() const {
    std::size_t n = 0;
    for (auto d : summand_dims) n += d;
    return n;
}

std::vector<std::size_t> FmSpace::live() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < summand_dims.size(); ++j)
        if (summand_dims[j]) out.push_back(j);
    return out;
}

namespace {

void require_m(int m) {
    if (m < 1) throw InputError("m must be >= 1");
}

} // namespace

Integer live_threshold(int m) { return Integer((m + 2) / 2); }

FmSpace fm_finite_dim(const FiniteDimAlgebra& b, int m) {
    require_m(m);
    FmSpace space{m, {}};
    for (const auto& n : b.sizes()) space.summand_dims.push_back(m % 2 == 1 && Integer(m) <= 2 * n - 1);
    return space;
}

FmSpace fm_circle(const CircleAlgebra& a, int m) {
    require_m(m);
    FmSpace space{m, {}};
    for (const auto& n : a.sizes()) space.summand_dims.push_back(Integer(m) <= 2 * n - 1);
    return space;
}

RatMatrix fm_induced(const SignatureMatrix& s, int m) {
    require_valid(s);
    const auto cols = fm_circle(s.source(), m).live();
    const auto rows = fm_circle(s.target(), m).live();
    const IntMatrix& part = (m % 2 == 1) ? s.multiplicities() : s.windings();
    RatMatrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                Rational(part(static_cast<Eigen::Index>(rows[r]), static_cast<Eigen::Index>(cols[c])));
    return out;
}

std::size_t rank(const RatMatrix& m) {
    const Eigen::Index rows = m.rows(), cols = m.cols();
    if (rows == 0 || cols == 0) return 0;

    // Clear denominators row by row; rank is unchanged.
    IntMatrix a(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        Integer scale = 1;
        for (Eigen::Index j = 0; j < cols; ++j) scale = lcm(scale, denominator(m(i, j)));
        for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = numerator(m(i, j)) * (scale / denominator(m(i, j)));
    }

    Integer prev = 1;
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index pivot = r;
        while (pivot < rows && a(pivot, c) == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != r) a.row(pivot).swap(a.row(r));
        for (Eigen::Index i = r + 1; i < rows; ++i) {
            for (Eigen::Index j = c + 1; j < cols; ++j) {
                Integer num = a(r, c) * a(i, j) - a(i, c) * a(r, j);
                a(i, j) = num / prev;  // exact by Sylvester's identity
            }
            a(i, c) = 0;
        }
        prev = a(r, c);
        ++r;
    }
    return static_cast<std::size_t>(r);
}

namespace {

/// Non-zero rows of the reduced row echelon form.
RatMatrix rref_rows(RatMatrix a) {
    const Eigen::Index rows = a.rows(), cols = a.cols();
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index pivot = r;
        while (pivot < rows && a(pivot, c) == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != r) a.row(pivot).swap(a.row(r));
        const Rational inv = Rational(1) / a(r, c);
        for (Eigen::Index j = c; j < cols; ++j) a(r, j) *= inv;
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == r || a(i, c) == 0) continue;
            const Rational f = a(i, c);
            for (Eigen::Index j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
        }
        ++r;
    }
    return a.topRows(r);
}

void check_chain(const MatrixSequence& seq) {
    if (seq.prefix.empty() && seq.period.empty()) throw InputError("empty matrix sequence");
    std::vector<const RatMatrix*> all;
    for (const auto& m : seq.prefix) all.push_back(&m);
    for (const auto& m : seq.period) all.push_back(&m);
    for (std::size_t k = 0; k + 1 < all.size(); ++k)
        if (all[k]->rows() != all[k + 1]->cols())
            throw InputError("shape mismatch between matrices " + std::to_string(k) + " and " +
                             std::to_string(k + 1));
    if (!seq.period.empty() && seq.period.back().rows() != seq.period.front().cols())
        throw InputError("period does not close up: last matrix has " +
                         std::to_string(seq.period.back().rows()) + " rows, first has " +
                         std::to_string(seq.period.front().cols()) + " columns");
}

} // namespace

RatMatrix column_space(const RatMatrix& m) {
    RatMatrix t = m.transpose();
    return rref_rows(std::move(t)).transpose();
}

RatMatrix chain_product(std::span<const RatMatrix> mats, Eigen::Index dim) {
    RatMatrix acc = RatMatrix::Identity(dim, dim);
    for (const auto& m : mats) {
        if (m.cols() != acc.rows()) throw InputError("shape mismatch in matrix chain");
        RatMatrix next = m * acc;
        acc = std::move(next);
    }
    return acc;
}

std::size_t eventual_rank(const RatMatrix& t, std::vector<std::size_t>* trace) {
    if (t.rows() != t.cols()) throw InputError("period composite must be square");
    RatMatrix basis = column_space(t);
    if (trace) trace->push_back(static_cast<std::size_t>(basis.cols()));
    // Ranks of T^k decrease strictly until they settle, so at most D steps.
    while (basis.cols() > 0) {
        RatMatrix image = t * basis;
        RatMatrix next = column_space(image);
        if (trace) trace->push_back(static_cast<std::size_t>(next.cols()));
        if (next.cols() == basis.cols()) break;
        basis = std::move(next);
    }
    return static_cast<std::size_t>(basis.cols());
}

ColimitReport colim_dim(const MatrixSequence& seq, std::size_t window) {
    if (window < 1) throw InputError("window must be >= 1");
    check_chain(seq);
    ColimitReport report;

    if (!seq.period.empty()) {
        RatMatrix t = chain_product(seq.period, seq.period.front().cols());
        const auto dim = eventual_rank(t, &report.evidence);
        report.lower = report.upper = static_cast<unsigned long long>(dim);
        report.exact = true;
        report.stabilization_stage = seq.prefix.size();
        return report;
    }

    // Finite data: stage dims k_0..k_{N-1}; r(p, q) = rank of the composite p -> q.
    const auto& mats = seq.prefix;
    const std::size_t stages = mats.size() + 1;
    std::vector<std::size_t> settled_value(stages, 0);
    std::vector<bool> settled(stages, false);
    Integer upper = 0;
    for (std::size_t p = 0; p < stages; ++p) {
        const Eigen::Index dim = p < mats.size() ? mats[p].cols() : mats.back().rows();
        RatMatrix composite = RatMatrix::Identity(dim, dim);
        std::vector<std::size_t> ranks;
        for (std::size_t q = p; q < mats.size(); ++q) {
            RatMatrix next = mats[q] * composite;
            composite = std::move(next);
            ranks.push_back(rank(composite));
        }
        const std::size_t last = ranks.empty() ? static_cast<std::size_t>(dim) : ranks.back();
        report.evidence.push_back(last);
        upper = std::max(upper, Integer(static_cast<unsigned long long>(last)));
        if (ranks.size() >= window &&
            std::all_of(ranks.end() - static_cast<long>(window), ranks.end(),
                        [&](std::size_t r) { return r == ranks.back(); })) {
            settled[p] = true;
            settled_value[p] = ranks.back();
        }
    }

    Integer lower = 0;
    std::vector<std::size_t> settled_stages;
    for (std::size_t p = 0; p < stages; ++p)
        if (settled[p]) {
            settled_stages.push_back(p);
            lower = std::max(lower, Integer(static_cast<unsigned long long>(settled_value[p])));
        }

    if (settled_stages.size() >= window) {
        const auto value = settled_value[settled_stages.back()];
        std::size_t run = 0;
        std::size_t first = settled_stages.back();
        for (auto it = settled_stages.rbegin(); it != settled_stages.rend() && settled_value[*it] == value; ++it) {
            ++run;
            first = *it;
        }
        if (run >= window) {
            report.lower = report.upper = static_cast<unsigned long long>(value);
            report.exact = true;
            report.stabilization_stage = first;
            return report;
        }
    }
    report.lower = lower;
    report.upper = std::max(upper, lower);
    report.exact = false;
    report.stabilization_stage = settled_stages.empty() ? 0 : settled_stages.back();
    return report;
}

ColimitReport fm_of_system(const InductiveSystem& sys, int m, std::size_t window) {
    require_m(m);
    if (!sys.tail().is_periodic()) {
        if (sys.maps().empty()) {
            const auto dim = fm_circle(sys.stages().front(), m).total();
            ColimitReport report;
            report.lower = report.upper = static_cast<unsigned long long>(dim);
            report.evidence = {dim};
            return report;
        }
        MatrixSequence seq;
        for (const auto& map : sys.maps()) seq.prefix.push_back(fm_induced(map, m));
        return colim_dim(seq, window);
    }

    // Liveness only depends on sizes capped at the threshold, so the F_m
    // matrices are periodic from the capped regime on. The prefix does not
    // affect the limit and is not materialized.
    const auto regime = find_regime(sys, live_threshold(m));
    Unrolling unrolled(sys);
    MatrixSequence seq;
    for (std::size_t s = regime.start; s < regime.start + regime.length; ++s)
        seq.period.push_back(fm_induced(unrolled.map(s), m));
    auto report = colim_dim(seq, window);
    report.stabilization_stage = regime.start;
    return report;
}

} // namespace ratk
