#include "ratk/hom.hpp"

#include <cmath>
#include <numbers>

namespace ratk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Integer floor_of(const Rational& x) {
    Integer num = numerator(x);
    Integer den = denominator(x);  // always positive
    Integer q = num / den;         // truncates toward zero
    if (num < 0 && q * den != num) --q;
    return q;
}

/// exp(2 pi i x), reducing x mod 1 exactly before leaving exact arithmetic.
std::complex<double> circle_point(const Rational& x) {
    Rational frac = x - Rational(floor_of(x));
    return std::polar(1.0, kTwoPi * static_cast<double>(frac));
}

std::size_t to_size(const Integer& v, const char* what) {
    if (v < 0 || v > Integer(std::numeric_limits<std::int32_t>::max()))
        throw InputError(std::string(what) + " out of range for numeric realization");
    return static_cast<std::size_t>(v.convert_to<long long>());
}

std::size_t sample_count(const CirclePath& path) {
    if (auto s = std::get_if<SampledPath>(&path)) return s->points.size();
    return 0;
}

} // namespace

void check_sampling(const SampledPath& path) {
    const auto& pts = path.points;
    if (pts.size() < 2) throw InputError("sampled path needs at least 2 points");
    for (std::size_t k = 0; k < pts.size(); ++k) {
        if (std::abs(std::abs(pts[k]) - 1.0) > kUnitModulusTolerance)
            throw InputError("sample " + std::to_string(k) + " is not on the unit circle");
        if (k + 1 < pts.size()) {
            double step = std::arg(pts[k + 1] * std::conj(pts[k]));
            if (!(std::abs(step) < std::numbers::pi))
                throw InputError("samples " + std::to_string(k) + " and " + std::to_string(k + 1) +
                                 " are half a turn or more apart; lift is ambiguous");
        }
    }
}

std::complex<double> start_point(const CirclePath& path) {
    return std::visit(
        [](const auto& p) -> std::complex<double> {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, SampledPath>) {
                if (p.points.empty()) throw InputError("empty sampled path");
                return p.points.front();
            } else {
                return circle_point(p.phase);
            }
        },
        path);
}

std::complex<double> end_point(const CirclePath& path) {
    return std::visit(
        [](const auto& p) -> std::complex<double> {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, SampledPath>) {
                if (p.points.empty()) throw InputError("empty sampled path");
                return p.points.back();
            } else if constexpr (std::is_same_v<T, PowerPath>) {
                return circle_point(p.phase + Rational(p.winding));
            } else {
                return circle_point(p.phase + p.turns);
            }
        },
        path);
}

bool is_loop(const CirclePath& path) {
    if (std::holds_alternative<PowerPath>(path)) return true;
    if (auto arc = std::get_if<ArcPath>(&path)) return denominator(arc->turns) == 1;
    return std::abs(start_point(path) - end_point(path)) <= kEndpointTolerance;
}

std::complex<double> path_at(const CirclePath& path, std::size_t k, std::size_t grid) {
    if (grid < 2) throw InputError("grid needs at least 2 points");
    if (k >= grid) throw InputError("grid index out of range");
    Rational t(static_cast<long long>(k), static_cast<long long>(grid - 1));
    return std::visit(
        [&](const auto& p) -> std::complex<double> {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, SampledPath>) {
                if (p.points.size() != grid)
                    throw InputError("sampled path has " + std::to_string(p.points.size()) +
                                     " points but the grid has " + std::to_string(grid));
                return p.points[k];
            } else if constexpr (std::is_same_v<T, PowerPath>) {
                return circle_point(p.phase + Rational(p.winding) * t);
            } else {
                return circle_point(p.phase + p.turns * t);
            }
        },
        path);
}

double lift_increment(const CirclePath& path) {
    return std::visit(
        [](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, SampledPath>) {
                check_sampling(p);
                double total = 0.0;
                for (std::size_t k = 0; k + 1 < p.points.size(); ++k)
                    total += std::arg(p.points[k + 1] * std::conj(p.points[k]));
                return total / kTwoPi;
            } else if constexpr (std::is_same_v<T, PowerPath>) {
                return p.winding.template convert_to<double>();
            } else {
                return static_cast<double>(p.turns);
            }
        },
        path);
}

Integer winding_number(const CirclePath& path) {
    if (auto power = std::get_if<PowerPath>(&path)) return power->winding;
    if (auto arc = std::get_if<ArcPath>(&path)) {
        if (denominator(arc->turns) != 1) throw InputError("arc is not a loop");
        return numerator(arc->turns);
    }
    const auto& sampled = std::get<SampledPath>(path);
    check_sampling(sampled);
    if (!is_loop(path)) throw InputError("sampled path is not a loop");
    return Integer(static_cast<long long>(std::llround(lift_increment(path))));
}

void validate_block(const TypeABlock& block) {
    const std::size_t a = block.paths.size();
    if (block.source_size < 1 || block.target_size < 1)
        throw InputError("block sizes must be positive");
    if (block.permutation.size() != a)
        throw InputError("permutation has " + std::to_string(block.permutation.size()) +
                         " entries but there are " + std::to_string(a) + " paths");
    std::vector<bool> seen(a, false);
    for (auto image : block.permutation) {
        if (image >= a || seen[image]) throw InputError("permutation is not a bijection");
        seen[image] = true;
    }
    if (Integer(static_cast<unsigned long long>(a)) * block.source_size > block.target_size)
        throw InputError("multiplicity " + std::to_string(a) + " times source size " +
                         block.source_size.str() + " exceeds target size " + block.target_size.str());
    bool identity = true;
    for (std::size_t p = 0; p < a; ++p) identity = identity && block.permutation[p] == p;
    if (!identity && !block.has_unitary_path)
        throw InputError("non-trivial permutation without a unitary path");
    for (const auto& path : block.paths)
        if (auto s = std::get_if<SampledPath>(&path)) check_sampling(*s);
    for (std::size_t p = 0; p < a; ++p) {
        auto gap = std::abs(start_point(block.paths[block.permutation[p]]) - end_point(block.paths[p]));
        if (gap > kEndpointTolerance)
            throw InputError("endpoint mismatch: path " + std::to_string(block.permutation[p] + 1) +
                             " does not start where path " + std::to_string(p + 1) + " ends");
    }
}

std::vector<std::vector<std::size_t>> cycle_decomposition(const std::vector<std::size_t>& sigma) {
    std::vector<std::vector<std::size_t>> cycles;
    std::vector<bool> seen(sigma.size(), false);
    for (std::size_t start = 0; start < sigma.size(); ++start) {
        if (seen[start]) continue;
        std::vector<std::size_t> cycle;
        for (std::size_t p = start; !seen[p]; p = sigma[p]) {
            seen[p] = true;
            cycle.push_back(p);
        }
        cycles.push_back(std::move(cycle));
    }
    return cycles;
}

DiagonalBlock reduce_to_diagonal(const TypeABlock& block) {
    validate_block(block);
    DiagonalBlock out{block.source_size, block.target_size,
                      std::vector<Integer>(block.multiplicity(), Integer(0))};
    for (const auto& cycle : cycle_decomposition(block.permutation)) {
        double total = 0.0;
        for (auto p : cycle) total += lift_increment(block.paths[p]);
        double rounded = std::round(total);
        if (std::abs(total - rounded) > kWindingRoundingTolerance)
            throw InputError("cycle through path " + std::to_string(cycle.front() + 1) +
                             " does not close up (total lift " + std::to_string(total) + " turns)");
        out.windings[cycle.back()] = Integer(static_cast<long long>(rounded));
    }
    return out;
}

SignaturePair signature_of(const DiagonalBlock& block) {
    Integer b = 0;
    for (const auto& w : block.windings) b += w;
    return {Integer(static_cast<unsigned long long>(block.multiplicity())), b};
}

SignatureMatrix::SignatureMatrix(CircleAlgebra source, CircleAlgebra target, IntMatrix multiplicities,
                                 IntMatrix windings)
    : source_(std::move(source)), target_(std::move(target)), mult_(std::move(multiplicities)),
      wind_(std::move(windings)) {
    const auto rows = static_cast<Eigen::Index>(target_.summands());
    const auto cols = static_cast<Eigen::Index>(source_.summands());
    if (mult_.rows() != rows || mult_.cols() != cols || wind_.rows() != rows || wind_.cols() != cols)
        throw InputError("signature matrix shape " + std::to_string(mult_.rows()) + "x" +
                         std::to_string(mult_.cols()) + " does not match " + std::to_string(rows) +
                         " target and " + std::to_string(cols) + " source summands");
}

ValidationReport validate(const SignatureMatrix& s) {
    ValidationReport report;
    for (Eigen::Index i = 0; i < s.rows(); ++i) {
        Integer load = 0;
        for (Eigen::Index j = 0; j < s.cols(); ++j) {
            const auto& a = s.multiplicities()(i, j);
            const auto& b = s.windings()(i, j);
            if (a < 0)
                report.violations.push_back({Violation::Kind::NegativeMultiplicity, i, j,
                                             "multiplicity must be non-negative"});
            if (a == 0 && b != 0)
                report.violations.push_back(
                    {Violation::Kind::WindingWithoutMultiplicity, i, j, "a=0 requires b=0"});
            load += a * s.source().size(static_cast<std::size_t>(j));
        }
        const auto& capacity = s.target().size(static_cast<std::size_t>(i));
        if (load > capacity)
            report.violations.push_back({Violation::Kind::RowOverflow, i, -1,
                                         "row load " + load.str() + " exceeds target size " +
                                             capacity.str()});
    }
    return report;
}

void require_valid(const SignatureMatrix& s) {
    auto report = validate(s);
    if (report.ok()) return;
    const auto& v = report.violations.front();
    std::string where = v.col < 0 ? " in row " + std::to_string(v.row)
                                  : " at (" + std::to_string(v.row) + "," + std::to_string(v.col) + ")";
    throw InputError(v.message + where);
}

SignatureMatrix identity_signature(const CircleAlgebra& a) {
    const auto k = static_cast<Eigen::Index>(a.summands());
    IntMatrix id = IntMatrix::Identity(k, k);
    return SignatureMatrix(a, a, id, id);
}

SignatureMatrix compose(const SignatureMatrix& s2, const SignatureMatrix& s1) {
    if (!(s1.target() == s2.source()))
        throw InputError("cannot compose: target of the first map is not the source of the second");
    IntMatrix mult = s2.multiplicities() * s1.multiplicities();
    IntMatrix wind = s2.windings() * s1.windings();
    return SignatureMatrix(s1.source(), s2.target(), std::move(mult), std::move(wind));
}

DiagonalHom reduce(const TypeAHom& hom) {
    const auto L = hom.target.summands();
    const auto K = hom.source.summands();
    if (hom.blocks.size() != L) throw InputError("block grid must have one row per target summand");
    DiagonalHom out{hom.source, hom.target, {}, {}};
    IntMatrix mult = IntMatrix::Zero(static_cast<Eigen::Index>(L), static_cast<Eigen::Index>(K));
    IntMatrix wind = mult;
    for (std::size_t i = 0; i < L; ++i) {
        if (hom.blocks[i].size() != K)
            throw InputError("block row " + std::to_string(i) + " must have one block per source summand");
        std::vector<DiagonalBlock> row;
        for (std::size_t j = 0; j < K; ++j) {
            const auto& block = hom.blocks[i][j];
            if (block.source_size != hom.source.size(j) || block.target_size != hom.target.size(i))
                throw InputError("block (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") sizes disagree with the algebras");
            auto diag = reduce_to_diagonal(block);
            auto sig = signature_of(diag);
            mult(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sig.a;
            wind(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sig.b;
            row.push_back(std::move(diag));
        }
        out.blocks.push_back(std::move(row));
    }
    out.signature = SignatureMatrix(hom.source, hom.target, std::move(mult), std::move(wind));
    require_valid(out.signature);
    return out;
}

Eigen::MatrixXd permutation_path(const std::vector<std::size_t>& sigma, double t) {
    const auto a = static_cast<Eigen::Index>(sigma.size());
    Eigen::MatrixXd w = Eigen::MatrixXd::Identity(a, a);
    const double theta = std::numbers::pi * t / 2.0;
    const double c = std::cos(theta), s = std::sin(theta);
    for (const auto& cycle : cycle_decomposition(sigma)) {
        const auto head = static_cast<Eigen::Index>(cycle.front());
        for (std::size_t k = 1; k < cycle.size(); ++k) {
            const auto other = static_cast<Eigen::Index>(cycle[k]);
            Eigen::MatrixXd rot = Eigen::MatrixXd::Identity(a, a);
            rot(head, head) = c;
            rot(other, head) = s;
            rot(head, other) = -s;
            rot(other, other) = c;
            w = rot * w;
        }
    }
    return w;
}

namespace {

Eigen::MatrixXcd evaluate_block(const CircleFunction& f, std::complex<double> z, std::size_t n) {
    Eigen::MatrixXcd value = f(z);
    if (value.rows() != static_cast<Eigen::Index>(n) || value.cols() != static_cast<Eigen::Index>(n))
        throw InputError("test function returns a " + std::to_string(value.rows()) + "x" +
                         std::to_string(value.cols()) + " matrix; expected " + std::to_string(n));
    return value;
}

} // namespace

std::size_t block_grid(const TypeABlock& block, std::size_t fallback) {
    std::size_t grid = 0;
    for (const auto& path : block.paths) {
        auto count = sample_count(path);
        if (count == 0) continue;
        if (grid != 0 && grid != count) throw InputError("sampled paths use different grids");
        grid = count;
    }
    return grid == 0 ? fallback : grid;
}

Eigen::MatrixXcd realize(const TypeABlock& block, const CircleFunction& f, std::size_t t_index,
                         std::size_t grid) {
    validate_block(block);
    const std::size_t n = to_size(block.source_size, "source size");
    const std::size_t l = to_size(block.target_size, "target size");
    const std::size_t a = block.multiplicity();
    const auto na = static_cast<Eigen::Index>(n * a);

    Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(l));
    for (std::size_t p = 0; p < a; ++p) {
        auto z = path_at(block.paths[p], t_index, grid);
        const auto at = static_cast<Eigen::Index>(p * n);
        diag.block(at, at, static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) = evaluate_block(f, z, n);
    }

    const double t = static_cast<double>(t_index) / static_cast<double>(grid - 1);
    Eigen::MatrixXd w = permutation_path(block.permutation, t);
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(l));
    Eigen::MatrixXd wn = Eigen::MatrixXd::Zero(na, na);
    for (Eigen::Index r = 0; r < w.rows(); ++r)
        for (Eigen::Index c = 0; c < w.cols(); ++c)
            wn.block(r * static_cast<Eigen::Index>(n), c * static_cast<Eigen::Index>(n),
                     static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))
                .diagonal()
                .setConstant(w(r, c));
    u.topLeftCorner(na, na) = wn.cast<std::complex<double>>();

    const double defect = (u * u.adjoint() - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).norm();
    if (defect > kUnitModulusTolerance * static_cast<double>(l + 1))
        throw InconsistencyError("synthesized unitary path is not unitary");

    return u * diag * u.adjoint();
}

Eigen::MatrixXcd realize(const DiagonalBlock& block, const CircleFunction& f, std::size_t t_index,
                         std::size_t grid) {
    const std::size_t n = to_size(block.source_size, "source size");
    const std::size_t l = to_size(block.target_size, "target size");
    if (Integer(static_cast<unsigned long long>(block.multiplicity() * n)) > block.target_size)
        throw InputError("diagonal block does not fit its target");
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(l));
    for (std::size_t p = 0; p < block.multiplicity(); ++p) {
        auto z = path_at(PowerPath{block.windings[p], Rational(0)}, t_index, grid);
        const auto at = static_cast<Eigen::Index>(p * n);
        out.block(at, at, static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) = evaluate_block(f, z, n);
    }
    return out;
}

} // namespace ratk
