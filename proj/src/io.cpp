#include "ratk/io.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace ratk {

namespace {

std::string at_index(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

const Json& field(const Json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) throw InputError(where + " must be an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw InputError("missing field " + (where.empty() ? std::string(key) : where + "." + key));
    return *it;
}

std::string join(const std::string& where, const char* key) { return where.empty() ? key : where + "." + key; }

const Json& array_at(const Json& obj, const char* key, const std::string& where) {
    const Json& v = field(obj, key, where);
    if (!v.is_array()) throw InputError(join(where, key) + " must be a list");
    return v;
}

/// Converts a nlohmann byte offset into "line L, column C".
std::string locate(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        // nlohmann reports the offset one past the offending byte.
        const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        std::string what = e.what();
        auto pos = what.find("syntax error");
        throw InputError("syntax error at " + locate(text, byte) + ": " +
                         (pos == std::string::npos ? what : what.substr(pos)));
    }
}

CircleAlgebra algebra_from_json(const Json& v, const std::string& where) {
    const Json& sizes = array_at(v, "sizes", where);
    std::vector<Integer> out;
    for (std::size_t j = 0; j < sizes.size(); ++j) {
        Integer n = integer_from_json(sizes[j], at_index(join(where, "sizes"), j));
        if (n < 1) throw InputError("sizes must be positive at " + at_index(join(where, "sizes"), j));
        out.push_back(std::move(n));
    }
    return CircleAlgebra(std::move(out));
}

Json algebra_to_json(const std::vector<Integer>& sizes) {
    Json list = Json::array();
    for (const auto& n : sizes) list.push_back(integer_to_json(n));
    return Json{{"sizes", list}};
}

/// Reads a grid of [a, b] pairs. `rows` and `cols` are checked when given.
std::pair<IntMatrix, IntMatrix> entries_from_json(const Json& v, const std::string& where, long rows, long cols) {
    const Json& grid = array_at(v, "entries", where);
    const std::string base = join(where, "entries");
    if (rows >= 0 && static_cast<long>(grid.size()) != rows)
        throw InputError(base + " has " + std::to_string(grid.size()) + " rows, expected " + std::to_string(rows));
    const long r = static_cast<long>(grid.size());
    long c = cols;
    if (c < 0) c = r == 0 ? 0 : static_cast<long>(grid[0].is_array() ? grid[0].size() : 0);
    IntMatrix a(r, c), b(r, c);
    for (long i = 0; i < r; ++i) {
        const Json& row = grid[static_cast<std::size_t>(i)];
        const std::string row_at = at_index(base, static_cast<std::size_t>(i));
        if (!row.is_array() || static_cast<long>(row.size()) != c)
            throw InputError(row_at + " must be a list of " + std::to_string(c) + " [a, b] pairs");
        for (long j = 0; j < c; ++j) {
            const Json& pair = row[static_cast<std::size_t>(j)];
            const std::string at = at_index(row_at, static_cast<std::size_t>(j));
            if (!pair.is_array() || pair.size() != 2) throw InputError(at + " must be a pair [a, b]");
            a(i, j) = integer_from_json(pair[0], at + "[0]");
            b(i, j) = integer_from_json(pair[1], at + "[1]");
            if (a(i, j) < 0) throw InputError("multiplicity must be non-negative at " + at);
            if (a(i, j) == 0 && b(i, j) != 0) throw InputError("a=0 requires b=0 at " + at);
        }
    }
    return {std::move(a), std::move(b)};
}

Json entries_to_json(const IntMatrix& a, const IntMatrix& b) {
    Json grid = Json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(Json::array({integer_to_json(a(i, j)), integer_to_json(b(i, j))}));
        grid.push_back(row);
    }
    return grid;
}

IntVector pad_from_json(const Json& v, const std::string& where, Eigen::Index rows) {
    if (!v.is_array() || static_cast<Eigen::Index>(v.size()) != rows)
        throw InputError(where + " must list " + std::to_string(rows) + " pad entries");
    IntVector pad(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        pad(i) = integer_from_json(v[static_cast<std::size_t>(i)], at_index(where, static_cast<std::size_t>(i)));
        if (pad(i) < 0) throw InputError("pad entries must be non-negative at " + at_index(where, static_cast<std::size_t>(i)));
    }
    return pad;
}

Json vector_to_json(const IntVector& v) {
    Json list = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) list.push_back(integer_to_json(v(i)));
    return list;
}

} // namespace

Json integer_to_json(const Integer& v) { return v.str(); }

Integer integer_from_json(const Json& v, const std::string& where) {
    if (v.is_number_integer()) {
        if (v.is_number_unsigned()) return Integer(v.get<std::uint64_t>());
        return Integer(v.get<std::int64_t>());
    }
    if (v.is_string()) {
        try {
            return parse_integer(v.get<std::string>());
        } catch (const InputError& e) {
            throw InputError(std::string(e.what()) + " at " + where);
        }
    }
    throw InputError("expected an integer at " + where);
}

// ---------------------------------------------------------------------------
// System documents
// ---------------------------------------------------------------------------

InductiveSystem system_from_json(const Json& doc) {
    if (!doc.is_object()) throw InputError("system document must be an object");
    const Json& stage_list = array_at(doc, "stages", "");
    if (stage_list.empty()) throw InputError("at least one stage required");
    std::vector<CircleAlgebra> stages;
    for (std::size_t s = 0; s < stage_list.size(); ++s) stages.push_back(algebra_from_json(stage_list[s], at_index("stages", s)));

    std::vector<SignatureMatrix> maps;
    const Json empty = Json::array();
    const Json& map_list = doc.contains("maps") ? array_at(doc, "maps", "") : empty;
    if (map_list.size() + 1 != stages.size())
        throw InputError("expected " + std::to_string(stages.size() - 1) + " maps for " +
                         std::to_string(stages.size()) + " stages, got " + std::to_string(map_list.size()));
    for (std::size_t p = 0; p < map_list.size(); ++p) {
        auto [a, b] = entries_from_json(map_list[p], at_index("maps", p), static_cast<long>(stages[p + 1].summands()),
                                        static_cast<long>(stages[p].summands()));
        maps.emplace_back(stages[p], stages[p + 1], std::move(a), std::move(b));
    }

    TailDescriptor tail;
    if (doc.contains("tail")) {
        const Json& t = doc["tail"];
        const Json& kind = field(t, "kind", "tail");
        if (!kind.is_string()) throw InputError("tail.kind must be a string");
        if (kind == "periodic") {
            const Json& templates = array_at(t, "templates", "tail");
            if (templates.empty()) throw InputError("tail.templates must not be empty");
            if (t.contains("period")) {
                const Integer declared = integer_from_json(t["period"], "tail.period");
                if (declared != Integer(static_cast<unsigned long long>(templates.size())))
                    throw InputError("tail.period is " + declared.str() + " but " + std::to_string(templates.size()) +
                                     " templates are given");
            }
            const Json& pad = field(t, "pad", "tail");
            if (!pad.is_array()) throw InputError("tail.pad must be a list");
            const bool nested = !pad.empty() && pad[0].is_array();
            if (templates.size() > 1 && !nested && !pad.empty())
                throw InputError("tail.pad must hold one list per template when the period exceeds 1");
            for (std::size_t k = 0; k < templates.size(); ++k) {
                auto [a, b] = entries_from_json(templates[k], at_index("tail.templates", k), -1, -1);
                IntVector v = nested ? (k < pad.size() ? pad_from_json(pad[k], at_index("tail.pad", k), a.rows())
                                                       : throw InputError("tail.pad has no entry for template " +
                                                                          std::to_string(k)))
                                     : pad_from_json(pad, "tail.pad", a.rows());
                tail.period.push_back({std::move(a), std::move(b), std::move(v)});
            }
        } else if (kind != "none") {
            throw InputError("tail.kind must be \"none\" or \"periodic\"");
        }
    }
    return InductiveSystem(std::move(stages), std::move(maps), std::move(tail));
}

InductiveSystem parse_system(const std::string& text) { return system_from_json(parse_json(text)); }

Json system_to_json(const InductiveSystem& sys, const Json& meta) {
    Json doc = Json::object();
    doc["meta"] = meta.is_null() ? Json::object() : meta;
    Json stages = Json::array();
    for (const auto& a : sys.stages()) stages.push_back(algebra_to_json(a.sizes()));
    doc["stages"] = stages;
    Json maps = Json::array();
    for (const auto& m : sys.maps()) maps.push_back(Json{{"entries", entries_to_json(m.multiplicities(), m.windings())}});
    doc["maps"] = maps;
    if (!sys.tail().is_periodic()) {
        doc["tail"] = Json{{"kind", "none"}};
    } else {
        Json templates = Json::array();
        Json pads = Json::array();
        for (const auto& t : sys.tail().period) {
            templates.push_back(Json{{"entries", entries_to_json(t.multiplicities, t.windings)}});
            pads.push_back(vector_to_json(t.pad));
        }
        Json tail = Json::object();
        tail["kind"] = "periodic";
        tail["period"] = sys.period();
        tail["templates"] = templates;
        tail["pad"] = sys.period() == 1 ? pads[0] : pads;
        doc["tail"] = tail;
    }
    return doc;
}

std::string emit_system(const InductiveSystem& sys, const Json& meta) { return system_to_json(sys, meta).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Hom documents
// ---------------------------------------------------------------------------

std::vector<std::size_t> parse_permutation(const Json& value, std::size_t size, const std::string& where) {
    std::vector<std::size_t> sigma(size);
    std::vector<bool> hit(size, false);
    auto bad = [&](const std::string& why) { return InputError(why + " at " + where); };

    if (value.is_array()) {
        if (value.size() != size) throw bad("permutation must list " + std::to_string(size) + " images");
        for (std::size_t p = 0; p < size; ++p) {
            Integer img = integer_from_json(value[p], at_index(where, p));
            if (img < 1 || img > Integer(static_cast<unsigned long long>(size))) throw bad("permutation image out of range");
            sigma[p] = static_cast<std::size_t>(img.convert_to<unsigned long long>()) - 1;
        }
    } else if (value.is_string()) {
        for (std::size_t p = 0; p < size; ++p) sigma[p] = p;
        std::vector<bool> used(size, false);
        const std::string s = value.get<std::string>();
        std::size_t i = 0;
        auto skip = [&] {
            while (i < s.size() && (s[i] == ' ' || s[i] == ',')) ++i;
        };
        skip();
        while (i < s.size()) {
            if (s[i] != '(') throw bad("cycle notation expects '('");
            ++i;
            std::vector<std::size_t> cycle;
            while (true) {
                skip();
                if (i >= s.size()) throw bad("unterminated cycle");
                if (s[i] == ')') {
                    ++i;
                    break;
                }
                std::size_t start = i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                if (start == i) throw bad("unexpected character in cycle notation");
                const auto k = std::stoull(s.substr(start, i - start));
                if (k < 1 || k > size) throw bad("cycle element out of range");
                if (used[k - 1]) throw bad("element " + std::to_string(k) + " appears twice");
                used[k - 1] = true;
                cycle.push_back(k - 1);
            }
            for (std::size_t c = 0; c < cycle.size(); ++c) sigma[cycle[c]] = cycle[(c + 1) % cycle.size()];
            skip();
        }
    } else {
        throw bad("permutation must be a cycle string or a list");
    }
    for (auto img : sigma) {
        if (hit[img]) throw bad("permutation is not a bijection");
        hit[img] = true;
    }
    return sigma;
}

namespace {

CirclePath path_from_json(const Json& v, const std::string& where) {
    const Json& kind = field(v, "kind", where);
    auto rational_at = [&](const char* key) {
        if (!v.contains(key)) return Rational(0);
        const Json& x = v[key];
        const std::string at = join(where, key);
        if (x.is_number_integer()) return Rational(integer_from_json(x, at));
        if (!x.is_string()) throw InputError("expected an exact rational at " + at);
        try {
            return parse_rational(x.get<std::string>());
        } catch (const InputError& e) {
            throw InputError(std::string(e.what()) + " at " + at);
        }
    };
    if (kind == "power") return PowerPath{integer_from_json(field(v, "winding", where), join(where, "winding")), rational_at("phase")};
    if (kind == "arc") {
        if (!v.contains("turns")) throw InputError("missing field " + join(where, "turns"));
        return ArcPath{rational_at("turns"), rational_at("phase")};
    }
    if (kind == "samples") {
        const Json& pts = array_at(v, "points", where);
        SampledPath path;
        for (std::size_t k = 0; k < pts.size(); ++k) {
            const Json& z = pts[k];
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
                throw InputError("sample must be [re, im] at " + at_index(join(where, "points"), k));
            path.points.emplace_back(z[0].get<double>(), z[1].get<double>());
        }
        try {
            check_sampling(path);
        } catch (const InputError& e) {
            throw InputError(std::string(e.what()) + " at " + where);
        }
        return path;
    }
    throw InputError(join(where, "kind") + " must be \"power\", \"arc\" or \"samples\"");
}

} // namespace

HomDocument parse_hom(const std::string& text) {
    const Json doc = parse_json(text);
    if (!doc.is_object()) throw InputError("hom document must be an object");
    HomDocument out;
    out.hom.source = algebra_from_json(field(doc, "source", ""), "source");
    out.hom.target = algebra_from_json(field(doc, "target", ""), "target");
    if (doc.contains("grid")) {
        const Integer g = integer_from_json(doc["grid"], "grid");
        if (g < 2 || g > 1000000) throw InputError("grid must be between 2 and 1000000");
        out.grid = static_cast<std::size_t>(g.convert_to<unsigned long long>());
    }
    const auto L = out.hom.target.summands(), K = out.hom.source.summands();
    out.hom.blocks.assign(L, std::vector<TypeABlock>(K));
    for (std::size_t i = 0; i < L; ++i)
        for (std::size_t j = 0; j < K; ++j) {
            out.hom.blocks[i][j].source_size = out.hom.source.size(j);
            out.hom.blocks[i][j].target_size = out.hom.target.size(i);
        }

    const Json& blocks = array_at(doc, "blocks", "");
    std::vector<std::vector<bool>> seen(L, std::vector<bool>(K, false));
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        const std::string where = at_index("blocks", k);
        const Json& b = blocks[k];
        const Integer row = integer_from_json(field(b, "row", where), join(where, "row"));
        const Integer col = integer_from_json(field(b, "col", where), join(where, "col"));
        if (row < 0 || row >= Integer(static_cast<unsigned long long>(L)) || col < 0 ||
            col >= Integer(static_cast<unsigned long long>(K)))
            throw InputError("block position out of range at " + where);
        const auto i = static_cast<std::size_t>(row.convert_to<unsigned long long>());
        const auto j = static_cast<std::size_t>(col.convert_to<unsigned long long>());
        if (seen[i][j]) throw InputError("duplicate block (" + std::to_string(i) + "," + std::to_string(j) + ") at " + where);
        seen[i][j] = true;

        auto& block = out.hom.blocks[i][j];
        const Json& paths = array_at(b, "paths", where);
        for (std::size_t p = 0; p < paths.size(); ++p) block.paths.push_back(path_from_json(paths[p], at_index(join(where, "paths"), p)));
        if (b.contains("multiplicity")) {
            const Integer a = integer_from_json(b["multiplicity"], join(where, "multiplicity"));
            if (a != Integer(static_cast<unsigned long long>(paths.size())))
                throw InputError("multiplicity " + a.str() + " disagrees with " + std::to_string(paths.size()) +
                                 " paths at " + where);
        }
        if (b.contains("permutation"))
            block.permutation = parse_permutation(b["permutation"], paths.size(), join(where, "permutation"));
        else
            for (std::size_t p = 0; p < paths.size(); ++p) block.permutation.push_back(p);
        try {
            validate_block(block);
        } catch (const InputError& e) {
            throw InputError(std::string(e.what()) + " at " + where);
        }
    }
    return out;
}

Json signature_to_json(const SignatureMatrix& s) {
    Json doc = Json::object();
    doc["source"] = algebra_to_json(s.source().sizes());
    doc["target"] = algebra_to_json(s.target().sizes());
    doc["entries"] = entries_to_json(s.multiplicities(), s.windings());
    return doc;
}

Json diagonal_to_json(const DiagonalHom& hom) {
    Json blocks = Json::array();
    for (std::size_t i = 0; i < hom.blocks.size(); ++i)
        for (std::size_t j = 0; j < hom.blocks[i].size(); ++j) {
            const auto& d = hom.blocks[i][j];
            if (d.windings.empty()) continue;
            Json w = Json::array();
            for (const auto& b : d.windings) w.push_back(integer_to_json(b));
            blocks.push_back(Json{{"row", i}, {"col", j}, {"windings", w}});
        }
    Json doc = Json::object();
    doc["diagonal"] = blocks;
    doc["signature"] = signature_to_json(hom.signature);
    return doc;
}

// ---------------------------------------------------------------------------
// Builtins
// ---------------------------------------------------------------------------

std::vector<std::string> builtin_names() { return {"bunce-deddens", "goodearl", "constant"}; }

namespace {

InductiveSystem one_summand_tower(const Integer& size, const Integer& a, const Integer& b) {
    IntMatrix ma(1, 1), mb(1, 1);
    ma(0, 0) = a;
    mb(0, 0) = b;
    IntVector pad(1);
    pad(0) = 0;
    TailDescriptor tail;
    tail.period.push_back({ma, mb, pad});
    return InductiveSystem({CircleAlgebra({size})}, {}, std::move(tail));
}

} // namespace

InductiveSystem builtin_system(const std::string& name, const BuiltinParams& params) {
    if (name == "bunce-deddens") return one_summand_tower(1, 2, 1);
    if (name == "goodearl") {
        if (params.c < 2) throw InputError("goodearl needs c >= 2, got " + params.c.str());
        if (params.p < 1 || params.p >= params.c)
            throw InputError("goodearl needs 1 <= p < c, got p = " + params.p.str() + ", c = " + params.c.str());
        // c - p copies of f(z) and p point evaluations per step.
        return one_summand_tower(params.c, params.c, params.c - params.p);
    }
    if (name == "constant") return one_summand_tower(1, 1, 1);
    std::string known;
    for (const auto& n : builtin_names()) known += (known.empty() ? "" : ", ") + n;
    throw InputError("unknown builtin '" + name + "' (known: " + known + ")");
}

Json builtin_meta(const std::string& name, const BuiltinParams& params) {
    Json meta = Json::object();
    meta["name"] = name;
    if (name == "goodearl") meta["params"] = Json{{"c", integer_to_json(params.c)}, {"p", integer_to_json(params.p)}};
    if (name == "bunce-deddens") meta["notes"] = "psi_n(f)(z) = diag(f(1), f(z)); sizes 2^n";
    if (name == "goodearl") meta["notes"] = "p point evaluations and c - p copies of f(z) per step; sizes c^n";
    if (name == "constant") meta["notes"] = "C(T) with identity connecting maps";
    return meta;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

Json fm_rows_to_json(const std::vector<FmRow>& rows) {
    Json list = Json::array();
    for (const auto& r : rows) {
        Json row = Json::object();
        row["m"] = r.m;
        row["dimension"] = integer_to_json(r.report.dimension());
        row["upper"] = integer_to_json(r.report.upper);
        row["exact"] = r.report.exact;
        row["stabilization_stage"] = r.report.stabilization_stage;
        row["rank_trace"] = r.report.evidence;
        list.push_back(row);
    }
    return Json{{"fm", list}};
}

std::string fm_rows_to_text(const std::vector<FmRow>& rows) {
    std::ostringstream out;
    out << std::left << std::setw(6) << "m" << std::setw(12) << "dimension" << std::setw(8) << "exact"
        << "stabilization" << "\n";
    for (const auto& r : rows) {
        std::string dim = r.report.exact || r.report.lower == r.report.upper
                              ? r.report.dimension().str()
                              : "[" + r.report.lower.str() + ", " + r.report.upper.str() + "]";
        out << std::left << std::setw(6) << r.m << std::setw(12) << dim << std::setw(8)
            << (r.report.exact ? "yes" : "no") << r.report.stabilization_stage << "\n";
    }
    return out.str();
}

namespace {

Json decision_to_json(const Decision& d) { return Json{{"verdict", to_string(d.verdict)}, {"exact", d.exact}}; }

std::string outcome_name(EliminationOutcome o) {
    switch (o) {
    case EliminationOutcome::Eliminated: return "eliminated";
    case EliminationOutcome::Blocked: return "blocked";
    case EliminationOutcome::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

std::string decision_text(const Decision& d) { return to_string(d.verdict) + (d.exact ? " (exact)" : " (up to bounds)"); }

} // namespace

Json report_to_json(const StabilityReport& report) {
    Json doc = Json::object();
    doc["sdg"] = decision_to_json(report.sdg);
    doc["rationally_k_stable"] = decision_to_json(report.rationally_k_stable);
    doc["k_stable"] = decision_to_json(report.k_stable);
    if (report.persistent_class) {
        const auto& w = *report.persistent_class;
        doc["persistent_class"] = Json{{"phase", w.phase}, {"summand", w.summand}, {"size", integer_to_json(w.size)}};
    }
    if (report.failing_pair) {
        const auto& f = *report.failing_pair;
        doc["failing_pair"] = Json{{"m", f.m},
                                   {"j", f.j},
                                   {"dim_small", integer_to_json(f.dim_small)},
                                   {"dim_large", integer_to_json(f.dim_large)},
                                   {"induced_rank", integer_to_json(f.induced_rank)}};
    }
    Json trace = Json::array();
    for (const auto& s : report.elimination_trace) {
        Json step = Json::object();
        step["m"] = s.m;
        step["outcome"] = outcome_name(s.outcome);
        step["retained"] = s.retained;
        step["period"] = s.period;
        if (!s.note.empty()) step["note"] = s.note;
        trace.push_back(step);
    }
    doc["elimination_trace"] = trace;
    doc["bounds"] = Json{{"m_max", report.bounds.m_max},
                         {"j_max", report.bounds.j_max},
                         {"budget", report.bounds.budget},
                         {"window", report.bounds.window}};
    doc["prefix_length"] = report.prefix_length;
    return doc;
}

std::string report_to_text(const StabilityReport& report) {
    std::ostringstream out;
    out << "sdg:                  " << decision_text(report.sdg) << "\n";
    out << "rationally-k-stable:  " << decision_text(report.rationally_k_stable) << "\n";
    out << "k-stable:             " << decision_text(report.k_stable) << "\n";
    if (report.persistent_class) {
        const auto& w = *report.persistent_class;
        out << "persistent class:     phase " << w.phase << ", summand " << w.summand << ", size " << w.size << "\n";
    }
    if (report.failing_pair) {
        const auto& f = *report.failing_pair;
        out << "witness:              F_" << f.m << "(iota_" << f.j << ") : Q^" << f.dim_small << " -> Q^" << f.dim_large
            << " has rank " << f.induced_rank << "\n";
    }
    out << "bounds:               m <= " << report.bounds.m_max << ", j <= " << report.bounds.j_max << ", budget "
        << report.bounds.budget << "\n";
    for (const auto& s : report.elimination_trace) {
        out << "  m=" << s.m << " " << outcome_name(s.outcome);
        if (s.outcome == EliminationOutcome::Eliminated) out << ", " << s.retained.size() << " stages retained";
        if (!s.note.empty()) out << " (" << s.note << ")";
        out << "\n";
    }
    return out.str();
}

Json af_system_to_json(const AfSystem& af) {
    Json doc = Json::object();
    Json stages = Json::array();
    for (const auto& b : af.stages) stages.push_back(algebra_to_json(b.sizes()));
    doc["stages"] = stages;
    auto matrix = [](const IntMatrix& a) {
        Json grid = Json::array();
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            Json row = Json::array();
            for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(integer_to_json(a(i, j)));
            grid.push_back(row);
        }
        return grid;
    };
    Json maps = Json::array();
    for (const auto& a : af.maps) maps.push_back(Json{{"multiplicities", matrix(a)}});
    doc["maps"] = maps;
    if (af.period.empty()) {
        doc["tail"] = Json{{"kind", "none"}};
    } else {
        Json templates = Json::array();
        for (const auto& t : af.period) templates.push_back(Json{{"multiplicities", matrix(t.multiplicities)}, {"pad", vector_to_json(t.pad)}});
        doc["tail"] = Json{{"kind", "periodic"}, {"period", af.period.size()}, {"templates", templates}};
    }
    return doc;
}

} // namespace ratk
