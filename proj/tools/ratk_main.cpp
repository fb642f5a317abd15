// ratk: F_m groups and K-stability checks for inductive limits of circle algebras.

#include "ratk/io.hpp"
#include "ratk/stability.hpp"
#include "ratk/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace ratk;

constexpr int kExitInput = 2;
constexpr int kExitInconsistent = 3;
constexpr int kMaxM = 10000;

struct SystemSource {
    std::string system_file;
    std::string builtin;
    long long c = 4;
    long long p = 2;
    long long prefix = 0;
};

struct MRange {
    int lo = 1;
    int hi = 8;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

MRange parse_range(const std::string& text, bool allow_large) {
    MRange r;
    const auto dots = text.find("..");
    try {
        std::size_t used = 0;
        if (dots == std::string::npos) {
            r.lo = r.hi = std::stoi(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
        } else {
            const std::string lo = text.substr(0, dots), hi = text.substr(dots + 2);
            r.lo = std::stoi(lo, &used);
            if (used != lo.size()) throw std::invalid_argument(text);
            r.hi = std::stoi(hi, &used);
            if (used != hi.size()) throw std::invalid_argument(text);
        }
    } catch (const std::logic_error&) {
        throw InputError("--m expects 'a..b' or a single integer, got '" + text + "'");
    }
    if (r.lo < 1 || r.hi < r.lo) throw InputError("--m range must satisfy 1 <= a <= b");
    if (r.hi > kMaxM && !allow_large)
        throw InputError("--m upper bound " + std::to_string(r.hi) + " exceeds " + std::to_string(kMaxM) +
                         "; pass --allow-large-m to override");
    return r;
}

InductiveSystem load_system(const SystemSource& src, Json* meta) {
    if (src.system_file.empty() == src.builtin.empty()) throw InputError("give exactly one of --system or --builtin");
    InductiveSystem sys;
    if (!src.builtin.empty()) {
        BuiltinParams params{Integer(src.c), Integer(src.p)};
        sys = builtin_system(src.builtin, params);
        if (meta) *meta = builtin_meta(src.builtin, params);
    } else {
        sys = parse_system(read_file(src.system_file));
        if (meta) *meta = Json{{"file", src.system_file}};
    }
    if (src.prefix > 0) {
        if (static_cast<std::size_t>(src.prefix) < sys.prefix_length())
            throw InputError("--prefix must be at least the " + std::to_string(sys.prefix_length()) + " given stages");
        if (sys.tail().is_periodic()) sys = generate_prefix(sys, static_cast<std::size_t>(src.prefix));
    }
    return sys;
}

void add_source_options(CLI::App* cmd, SystemSource& src) {
    cmd->add_option("--system", src.system_file, "System document (JSON)");
    cmd->add_option("--builtin", src.builtin, "Builtin system: bunce-deddens, goodearl, constant");
    cmd->add_option("--c", src.c, "goodearl: size ratio c >= 2");
    cmd->add_option("--p", src.p, "goodearl: point evaluations per step, 1 <= p < c");
    cmd->add_option("--prefix", src.prefix, "Replace the tail by its first N stages (finite analysis)");
}

void print(const Json& doc) { std::cout << doc.dump(2) << "\n"; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"F_m groups and K-stability of inductive limits of circle algebras"};
    app.require_subcommand(1);

    std::string format = "human";
    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"human", "machine"}));
    };

    SystemSource fm_src;
    std::string fm_m = "1..8";
    bool fm_allow_large = false;
    std::size_t fm_window = kDefaultWindow;
    auto* fm = app.add_subcommand("fm", "Dimensions of F_m of the limit");
    add_source_options(fm, fm_src);
    fm->add_option("--m", fm_m, "Range a..b of m values");
    fm->add_flag("--allow-large-m", fm_allow_large, "Allow m above 10000");
    fm->add_option("--window", fm_window, "Stabilization window for finite data");
    add_format(fm);

    std::string hom_file;
    bool verify = false;
    int verify_trials = 20;
    unsigned long long seed = 1;
    auto* red = app.add_subcommand("reduce", "Reduce a Type A homomorphism to diagonal form");
    red->add_option("hom", hom_file, "Hom document (JSON)")->required();
    red->add_flag("--verify", verify, "Check the realizer on random trigonometric polynomials");
    red->add_option("--trials", verify_trials, "Number of random test functions for --verify");
    red->add_option("--seed", seed, "Seed for --verify");
    add_format(red);

    SystemSource chk_src;
    std::string chk_m;
    bool chk_allow_large = false;
    int j_max = 4;
    std::size_t budget = 256;
    std::size_t chk_window = kDefaultWindow;
    auto* chk = app.add_subcommand("check", "Slow dimension growth and (rational) K-stability");
    add_source_options(chk, chk_src);
    chk->add_option("--m", chk_m, "Check m in 1..b (default 1..2*maxsize+1)");
    chk->add_flag("--allow-large-m", chk_allow_large, "Allow m above 10000");
    chk->add_option("--j-max", j_max, "Largest matrix amplification j")->check(CLI::Range(2, 1000));
    chk->add_option("--budget", budget, "Stages searched past the periodic regime during orphan elimination");
    chk->add_option("--window", chk_window, "Stabilization window for finite data");
    add_format(chk);

    SystemSource quo_src;
    std::string quo_m;
    auto* quo = app.add_subcommand("quotient", "AF system obtained by evaluating every stage at 1");
    add_source_options(quo, quo_src);
    quo->add_option("--m", quo_m, "Also report F_m of the AF limit for this range");
    add_format(quo);

    std::string builtin_name;
    long long b_c = 4, b_p = 2;
    auto* bi = app.add_subcommand("builtin", "Print a builtin system document");
    bi->add_option("name", builtin_name, "bunce-deddens, goodearl or constant")->required();
    bi->add_option("--c", b_c, "goodearl: size ratio c >= 2");
    bi->add_option("--p", b_p, "goodearl: point evaluations per step, 1 <= p < c");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    const bool machine = format == "machine";
    try {
        if (*fm) {
            Json meta;
            const auto sys = load_system(fm_src, &meta);
            const auto range = parse_range(fm_m, fm_allow_large);
            std::vector<FmRow> rows;
            for (int m = range.lo; m <= range.hi; ++m) rows.push_back({m, fm_of_system(sys, m, fm_window)});
            if (machine) {
                Json doc = fm_rows_to_json(rows);
                doc["meta"] = meta;
                print(doc);
            } else {
                std::cout << fm_rows_to_text(rows);
            }
        } else if (*red) {
            const auto doc = parse_hom(read_file(hom_file));
            const auto diag = reduce(doc.hom);
            Json out = diagonal_to_json(diag);
            double worst = 0;
            if (verify) {
                std::mt19937_64 rng(seed);
                for (const auto& row : doc.hom.blocks)
                    for (const auto& block : row) {
                        if (block.multiplicity() == 0) continue;
                        const auto n = static_cast<std::size_t>(block.source_size.convert_to<unsigned long long>());
                        const std::size_t grid = block_grid(block, doc.grid);
                        for (int t = 0; t < verify_trials; ++t) {
                            const auto f = random_trig_polynomial(n, 4, rng);
                            const auto g = random_trig_polynomial(n, 4, rng);
                            worst = std::max(worst, realizer_deviation(block, f, g, grid).max());
                        }
                    }
                out["verify"] = Json{{"trials", verify_trials}, {"max_deviation", worst}, {"tolerance", kRealizerTolerance}};
            }
            if (machine) {
                print(out);
            } else {
                for (std::size_t i = 0; i < diag.blocks.size(); ++i)
                    for (std::size_t j = 0; j < diag.blocks[i].size(); ++j) {
                        const auto& d = diag.blocks[i][j];
                        if (d.windings.empty()) continue;
                        std::cout << "block (" << i << "," << j << "): diag(";
                        for (std::size_t k = 0; k < d.windings.size(); ++k)
                            std::cout << (k ? ", " : "") << "f(z^" << d.windings[k] << ")";
                        std::cout << ")\n";
                    }
                std::cout << "signature:\n";
                const auto& s = diag.signature;
                for (Eigen::Index i = 0; i < s.rows(); ++i) {
                    std::cout << " ";
                    for (Eigen::Index j = 0; j < s.cols(); ++j)
                        std::cout << " (" << s.multiplicities()(i, j) << "," << s.windings()(i, j) << ")";
                    std::cout << "\n";
                }
                if (verify)
                    std::cout << "verify: max deviation " << worst << " over " << verify_trials << " trials per block\n";
            }
            if (verify && worst >= kRealizerTolerance)
                throw InconsistencyError("realizer deviation " + std::to_string(worst) + " exceeds tolerance");
        } else if (*chk) {
            Json meta;
            const auto sys = load_system(chk_src, &meta);
            StabilityBounds bounds = default_bounds(sys);
            if (!chk_m.empty()) bounds.m_max = parse_range(chk_m, chk_allow_large).hi;
            bounds.j_max = j_max;
            bounds.budget = budget;
            bounds.window = chk_window;
            const auto report = k_stability_report(sys, bounds);
            if (machine) {
                Json doc = report_to_json(report);
                doc["meta"] = meta;
                print(doc);
            } else {
                std::cout << report_to_text(report);
            }
        } else if (*quo) {
            const auto sys = load_system(quo_src, nullptr);
            const auto af = quotient_system(sys);
            Json doc = af_system_to_json(af);
            std::vector<FmRow> rows;
            if (!quo_m.empty()) {
                const auto range = parse_range(quo_m, false);
                for (int m = range.lo; m <= range.hi; ++m) rows.push_back({m, fm_of_af_system(af, m)});
                doc["fm"] = fm_rows_to_json(rows)["fm"];
            }
            if (machine || rows.empty()) {
                print(doc);
            } else {
                std::cout << fm_rows_to_text(rows);
            }
        } else if (*bi) {
            BuiltinParams params{Integer(b_c), Integer(b_p)};
            std::cout << emit_system(builtin_system(builtin_name, params), builtin_meta(builtin_name, params));
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const InconsistencyError& e) {
        std::cerr << "inconsistency: " << e.what() << "\n";
        return kExitInconsistent;
    }
    return 0;
}
