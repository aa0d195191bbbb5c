#include "scatterforge/certificate.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "scatterforge/construction.hpp"
#include "scatterforge/geometry.hpp"
#include "scatterforge/rank_code.hpp"

namespace scatterforge::certificate {

using kernels::Exec;

namespace {

json digits(const Field& F, Elem a) { return F.prime_digits(a); }

json vec_json(const Field& F, const Vec& v) {
    json out = json::array();
    for (Elem x : v) out.push_back(digits(F, x));
    return out;
}

json witness_json(const Field& F, const geometry::Witness& w) {
    return {{"subspace_dim", w.subspace_dim}, {"rank", w.rank}, {"coords", vec_json(F, w.coords)}, {"value", w.value}};
}

template <class Map>
json counts_json(const Map& counts) {
    json out = json::object();
    for (const auto& [k, v] : counts) out[std::to_string(k)] = v;
    return out;
}

Tower make_tower(std::uint32_t p, unsigned e, unsigned m, const Options& opt) {
    return Tower::build(p, e, m, opt.seeds);
}

json header(const std::string& command, const Tower& T, int s, const Options& opt) {
    json c;
    c["schema_version"] = kSchemaVersion;
    c["command"] = command;
    c["params"] = {{"p", T.p()}, {"e", T.e()}, {"m", T.m()}, {"s", s}};
    c["field"] = field_json(T);
    c["enumeration"] = {{"budget", opt.budget}};
    return c;
}

class Stopwatch {
  public:
    json finish() const {
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        return {{"seconds", secs}, {"threads", omp_get_max_threads()}};
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<std::uint32_t> u32_list(const json& j) { return j.get<std::vector<std::uint32_t>>(); }

}  // namespace

json field_json(const Tower& T) {
    json f;
    f["p"] = T.p();
    f["e"] = T.e();
    f["m"] = T.m();
    json pq = json::array();
    for (Elem c : T.fq().modulus()) pq.push_back(c.v);
    f["poly_q"] = pq;
    json pqm = json::array();
    for (Elem c : T.fqm().modulus()) pqm.push_back(digits(T.fq(), c));
    f["poly_qm"] = pqm;
    if (T.has_q2m()) {
        json pq2m = json::array();
        for (Elem c : T.fq2m().modulus()) pq2m.push_back(digits(T.fqm(), c));
        f["poly_q2m"] = pq2m;
    }
    return f;
}

SeedPolynomials seeds_from_json(const json& field) {
    SeedPolynomials seeds;
    if (field.contains("poly_q")) seeds.poly_q = u32_list(field.at("poly_q"));
    auto nested = [](const json& j) {
        std::vector<std::vector<std::uint32_t>> out;
        for (const auto& c : j) out.push_back(u32_list(c));
        return out;
    };
    if (field.contains("poly_qm")) seeds.poly_qm = nested(field.at("poly_qm"));
    if (field.contains("poly_q2m")) seeds.poly_q2m = nested(field.at("poly_q2m"));
    return seeds;
}

json cmd_construct(std::uint32_t p, unsigned e, unsigned m, int s, const Options& opt) {
    const Stopwatch clock;
    const Tower T = make_tower(p, e, m, opt);
    const auto params = construction::ConstructionParams::make(T, s);
    const Field& F = T.fqm();
    const auto r = construction::check_main_theorem(params, true, Budget{opt.budget}, opt.exec);

    json c = header("construct", T, s, opt);
    json flags = json::array();
    if (params.oracle_mode) flags.push_back("m not odd ≥ 5: oracle mode");
    c["flags"] = flags;
    c["conditions"] = {{"i", r.cond_i}, {"ii", r.cond_ii}, {"iii", r.cond_iii}};
    c["q_roots"] = r.q_roots;
    json gvals = json::array();
    for (Elem v : r.g.values) gvals.push_back(digits(F, v));
    c["g_criterion"] = {{"holds", r.g.holds}, {"matches_cond_iii", r.g_matches_cond_iii}, {"values", gvals}};
    c["factorial"] = r.factorial;
    json spec = json::object();
    if (r.m5) spec["m5"] = *r.m5;
    if (r.m7) spec["m7"] = *r.m7;
    c["specialized"] = spec;

    json witnesses = json::array();
    if (r.cond_iii_witness)
        witnesses.push_back({{"kind", "q_root_outside_fq"}, {"element", digits(F, *r.cond_iii_witness)}});
    if (r.g.witness)
        witnesses.push_back({{"kind", "g_zero"},
                             {"gamma", digits(F, *r.g.witness)},
                             {"projective_roots", *r.witness_projective_roots}});
    c["enumeration"]["q_evaluations"] = F.size();
    c["enumeration"]["gamma_values"] = T.q() - 1;
    if (r.bruteforce) {
        c["scattered"] = r.bruteforce->scattered;
        c["enumeration"]["points"] = r.bruteforce->points;
        if (r.bruteforce->witness)
            witnesses.push_back({{"kind", "heavy_point"}, {"point", witness_json(F, *r.bruteforce->witness)}});
        if (r.bruteforce->bundle_witness) {
            const std::uint64_t l = *r.bruteforce->bundle_witness;
            witnesses.push_back({{"kind", "bundle_line"},
                                 {"lambda", l < F.size() ? json(digits(F, Elem{static_cast<std::uint32_t>(l)}))
                                                         : json("infinity")}});
        }
    } else {
        c["scattered"] = "skipped";
        c["enumeration"]["skipped_reason"] = r.bruteforce_skipped.value_or("");
    }
    c["witnesses"] = witnesses;
    c["timing"] = clock.finish();
    return c;
}

json cmd_spectrum(std::uint32_t p, unsigned e, unsigned m, int s, const Options& opt) {
    const Stopwatch clock;
    const Tower T = make_tower(p, e, m, opt);
    const auto params = construction::ConstructionParams::make(T, s);
    const auto U = construction::build_U_sigma(params);
    const Budget budget{opt.budget};

    json c = header("spectrum", T, s, opt);
    const auto spectrum = geometry::weight_spectrum(U, 2, budget, opt.exec);
    c["subspace_dim"] = 2;
    c["spectrum"] = counts_json(spectrum.counts);
    c["enumeration"]["lines"] = spectrum.total();
    if (m >= 4) {
        const auto cf = geometry::closed_form_line_characters(T.q(), m);
        std::map<unsigned, std::uint64_t> expected;
        if (cf.a2) expected[2] = static_cast<std::uint64_t>(cf.a2);
        if (cf.a3) expected[3] = static_cast<std::uint64_t>(cf.a3);
        if (cf.a4) expected[4] = static_cast<std::uint64_t>(cf.a4);
        c["closed_form"] = {{"A2", cf.a2},
                            {"A3", cf.a3},
                            {"A4", cf.a4},
                            {"A2_explicit", cf.a2_explicit},
                            {"integral", cf.integral},
                            {"match", expected == spectrum.counts}};
    }
    const auto pts = geometry::linear_set_points(U, budget, opt.exec);
    const auto a = geometry::hyperplane_point_counts(U, budget, opt.exec);
    const std::uint64_t N = T.qm();
    const auto se = geometry::standard_equations_check(pts.size(), a, 3, N);
    if (!se.all()) throw InvariantViolation("spectrum: counted line intersections violate the standard equations");
    c["linear_set_size"] = pts.size();
    c["point_spectrum"] = counts_json(a);
    c["standard_equations"] = {{"point_count", se.point_count}, {"incidences", se.incidences}, {"pairs", se.pairs}};
    c["points_per_weight_consistent"] = geometry::point_counts_from_weights(spectrum, T.q()) == a;
    c["timing"] = clock.finish();
    return c;
}

std::string spectrum_csv(const json& cert) {
    std::ostringstream out;
    out << "weight,count,closed_form\n";
    for (const auto& [w, count] : cert.at("spectrum").items()) {
        out << w << ',' << count.get<std::uint64_t>() << ',';
        const std::string key = "A" + w;
        if (cert.contains("closed_form") && cert["closed_form"].contains(key)) out << cert["closed_form"][key].get<std::int64_t>();
        out << '\n';
    }
    return out.str();
}

std::string generator_csv(const json& cert) {
    std::ostringstream out;
    for (const auto& row : cert.at("generator")) {
        bool first = true;
        for (const auto& entry : row) {
            if (!first) out << ',';
            first = false;
            bool inner = true;
            for (const auto& d : entry) {
                if (!inner) out << ' ';
                inner = false;
                out << d.get<std::uint32_t>();
            }
        }
        out << '\n';
    }
    return out.str();
}

json cmd_code_report(std::uint32_t p, unsigned e, unsigned m, int s, const Options& opt) {
    const Stopwatch clock;
    const Budget budget{opt.budget};
    Tower T = make_tower(p, e, m, opt);
    const std::uint64_t big = std::uint64_t{T.qm()} * T.qm();
    if (!T.has_q2m() && big <= opt.budget && big <= Field::kMaxSize) T = T.with_quadratic_extension();
    const auto params = construction::ConstructionParams::make(T, s);
    const auto U = construction::build_U_sigma(params);
    const auto C = rank_code::psi(U);
    const Field& F = T.fqm();

    json c = header("code-report", T, s, opt);
    c["n"] = C.n();
    c["k"] = C.k();
    json gen = json::array();
    for (std::size_t i = 0; i < C.generator.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < C.generator.cols(); ++j) row.push_back(digits(F, C.generator(i, j)));
        gen.push_back(row);
    }
    c["generator"] = gen;
    c["q"] = T.q();
    c["m"] = m;
    const auto direct = rank_code::weight_distribution_direct(C, budget, opt.exec);
    const auto geometric = rank_code::weight_distribution_geometric(C, budget, opt.exec);
    if (direct.counts != geometric.counts)
        throw InvariantViolation("code-report: codeword and hyperplane weight distributions disagree");
    c["distribution"] = counts_json(direct.counts);
    c["distribution_routes_agree"] = true;
    c["d_min"] = direct.d_min;
    c["nondegenerate"] = rank_code::is_nondegenerate(C);

    try {
        const auto mn = rank_code::is_minimal(C, budget, opt.exec);
        json pair = nullptr;
        if (mn.violating_pair) pair = {mn.violating_pair->first, mn.violating_pair->second};
        c["minimal"] = mn.minimal;
        c["minimality"] = {{"support_containment", mn.minimal},
                           {"cutting", mn.cutting},
                           {"representatives", mn.representatives},
                           {"violating_pair", pair}};
    } catch (const BudgetExceeded& ex) {
        c["minimal"] = "skipped";
        c["minimality"] = {{"skipped_reason", ex.what()}};
    }

    const auto D = rank_code::dual_code(C);
    const Matrix GH = multiply(F, C.generator, transpose(D.generator));
    bool orthogonal = true;
    for (std::size_t i = 0; i < GH.rows(); ++i)
        for (std::size_t j = 0; j < GH.cols(); ++j) orthogonal = orthogonal && GH(i, j).v == 0;
    c["dual"] = {{"n", D.n()},
                 {"k", D.k()},
                 {"orthogonal", orthogonal},
                 {"double_dual_matches", rank_code::same_code(rank_code::dual_code(D), C)}};

    json sat;
    if (T.has_q2m()) {
        try {
            const auto r = geometry::is_saturating(U, 2, budget, opt.exec);
            sat = {{"rank2_saturating", r.saturating},
                   {"points", r.points},
                   {"covered", r.covered},
                   {"uncovered", r.uncovered ? witness_json(T.fq2m(), *r.uncovered) : json(nullptr)},
                   {"dual_covering_radius", r.saturating ? json(2) : json(nullptr)},
                   {"basis", "by correspondence"}};
        } catch (const BudgetExceeded& ex) {
            sat = {{"rank2_saturating", "skipped"}, {"skipped_reason", ex.what()}};
        }
    } else {
        sat = {{"rank2_saturating", "skipped"}, {"skipped_reason", "F_{q^{2m}} exceeds the budget"}};
    }
    c["saturation"] = sat;

    try {
        const unsigned bound = rank_code::covering_radius_lower_bound(D, opt.samples, opt.seed, budget, opt.exec);
        c["covering_radius_lower_bound"] = {
            {"value", bound}, {"samples", opt.samples}, {"seed", opt.seed}, {"field", "F_{q^m}"}};
    } catch (const BudgetExceeded& ex) {
        c["covering_radius_lower_bound"] = {{"value", "skipped"}, {"skipped_reason", ex.what()}};
    }
    c["enumeration"]["representatives"] = ProjectiveSpace(F, C.k()).size();
    c["enumeration"]["samples"] = opt.samples;
    c["enumeration"]["seed"] = opt.seed;
    c["timing"] = clock.finish();
    return c;
}

namespace {

template <class T>
std::vector<T> parse_list(const std::string& key, const std::string& values) {
    std::vector<T> out;
    std::stringstream ss(values);
    std::string item;
    while (std::getline(ss, item, ',')) {
        require(!item.empty(), "grid: empty value for " + key);
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        require(used == item.size() && v >= 0, "grid: bad value '" + item + "' for " + key);
        out.push_back(static_cast<T>(v));
    }
    require(!out.empty(), "grid: no values for " + key);
    return out;
}

}  // namespace

Grid parse_grid(const std::string& text) {
    Grid g;
    bool seen_s = false;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';')) {
        const auto eq = part.find('=');
        require(eq != std::string::npos, "grid: expected key=values in '" + part + "'");
        const std::string key = part.substr(0, eq), values = part.substr(eq + 1);
        if (key == "p") {
            g.p = parse_list<std::uint32_t>(key, values);
        } else if (key == "e") {
            g.e = parse_list<unsigned>(key, values);
        } else if (key == "m") {
            g.m = parse_list<unsigned>(key, values);
        } else if (key == "s") {
            seen_s = true;
            if (values != "all") g.s = parse_list<int>(key, values);
        } else {
            throw PreconditionError("grid: unknown key '" + key + "'");
        }
    }
    require(!g.p.empty() && !g.e.empty() && !g.m.empty() && seen_s, "grid: p, e, m and s are all required");
    return g;
}

json cmd_scan(const std::string& grid_text, const Options& opt) {
    const Stopwatch clock;
    const Grid grid = parse_grid(grid_text);
    const Budget budget{opt.budget};
    json rows = json::array();
    for (std::uint32_t p : grid.p)
        for (unsigned e : grid.e)
            for (unsigned m : grid.m) {
                std::vector<int> svals = grid.s;
                if (svals.empty())
                    for (int s = 1; s < static_cast<int>(m); ++s)
                        if (std::gcd(s, static_cast<int>(m)) == 1) svals.push_back(s);
                std::optional<Tower> T;
                std::string tower_error;
                bool too_big = false;
                try {
                    require(is_prime(p) && e >= 1 && m >= 2, "invalid (p, e, m)");
                    const double size = std::pow(static_cast<double>(p), static_cast<double>(e) * m);
                    too_big = size > static_cast<double>(opt.budget) || size > Field::kMaxSize;
                    if (!too_big) T = Tower::build(p, e, m);
                } catch (const PreconditionError& ex) {
                    tower_error = ex.what();
                }
                for (int s : svals) {
                    json row = {{"p", p}, {"e", e}, {"m", m}, {"s", s}};
                    if (!tower_error.empty()) {
                        row["error"] = tower_error;
                    } else if (too_big) {
                        row["scattered"] = "skipped";
                        row["skipped_reason"] = "field exceeds the budget";
                    } else {
                        try {
                            const auto params = construction::ConstructionParams::make(*T, s);
                            const auto r = construction::check_main_theorem(params, true, budget, opt.exec);
                            row["conditions"] = {{"i", r.cond_i}, {"ii", r.cond_ii}, {"iii", r.cond_iii}};
                            row["g_criterion"] = r.g.holds;
                            row["factorial"] = r.factorial;
                            row["oracle_mode"] = r.oracle_mode;
                            if (r.bruteforce) {
                                row["scattered"] = r.bruteforce->scattered;
                            } else {
                                row["scattered"] = "skipped";
                                row["skipped_reason"] = r.bruteforce_skipped.value_or("");
                            }
                        } catch (const PreconditionError& ex) {
                            row["error"] = ex.what();
                        } catch (const BudgetExceeded& ex) {
                            row["scattered"] = "skipped";
                            row["skipped_reason"] = ex.what();
                        }
                    }
                    rows.push_back(row);
                }
            }
    json c;
    c["schema_version"] = kSchemaVersion;
    c["command"] = "scan";
    c["grid"] = grid_text;
    c["rows"] = rows;
    c["enumeration"] = {{"budget", opt.budget}};
    c["timing"] = clock.finish();
    return c;
}

json cmd_equivalence(std::uint32_t p, unsigned e, unsigned m, int s, int t, const Options& opt) {
    const Stopwatch clock;
    const Tower T = make_tower(p, e, m, opt);
    json c = header("equivalence", T, s, opt);
    c["params"]["t"] = t;
    const bool equivalent = construction::equivalence_decision(s, t, m);
    c["equivalent"] = equivalent;
    c["decided_by"] = "theorem";
    if (equivalent) {
        Budget{opt.budget}.require(T.qm(), "equivalence witness");
        const auto w = construction::equivalence_witness(T, s, t);
        if (!w.image_matches || !w.reparametrization_matches)
            throw InvariantViolation("equivalence: witness map does not send U_s onto U_t");
        json rows = json::array();
        for (std::size_t i = 0; i < 3; ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < 3; ++j) row.push_back(digits(T.fqm(), w.map(i, j)));
            rows.push_back(row);
        }
        c["witness"] = {{"map", rows},
                        {"frobenius_shift", w.frobenius_shift},
                        {"image_matches", w.image_matches},
                        {"reparametrization_matches", w.reparametrization_matches}};
    } else {
        c["witness"] = nullptr;
    }
    c["timing"] = clock.finish();
    return c;
}

json without_timing(json cert) {
    cert.erase("timing");
    return cert;
}

ReplayResult replay(const json& cert, Exec exec) {
    ReplayResult out;
    require(cert.is_object() && cert.contains("command") && cert.contains("schema_version"),
            "replay: not a certificate");
    require(cert.at("schema_version") == kSchemaVersion, "replay: unsupported schema_version");
    const std::string command = cert.at("command");
    Options opt;
    opt.exec = exec;
    opt.budget = cert.at("enumeration").at("budget").get<std::uint64_t>();
    if (cert.contains("field")) opt.seeds = seeds_from_json(cert.at("field"));

    json fresh;
    if (command == "scan") {
        fresh = cmd_scan(cert.at("grid").get<std::string>(), opt);
    } else {
        const auto& prm = cert.at("params");
        const auto p = prm.at("p").get<std::uint32_t>();
        const auto e = prm.at("e").get<unsigned>();
        const auto m = prm.at("m").get<unsigned>();
        const auto s = prm.at("s").get<int>();
        if (command == "construct") {
            fresh = cmd_construct(p, e, m, s, opt);
        } else if (command == "spectrum") {
            // The stored spectrum must satisfy the standard equations on its own.
            std::map<unsigned, std::uint64_t> stored;
            for (const auto& [w, n] : cert.at("spectrum").items()) stored[std::stoul(w)] = n.get<std::uint64_t>();
            geometry::WeightSpectrum ws{3, 2, stored};
            const std::uint64_t q = ipow(p, e);
            const auto se = geometry::standard_equations_check(cert.at("linear_set_size").get<std::uint64_t>(),
                                                               geometry::point_counts_from_weights(ws, q), 3,
                                                               ipow(q, m));
            if (!se.point_count) out.problems.push_back("stored spectrum fails the point-count identity");
            if (!se.incidences) out.problems.push_back("stored spectrum fails the incidence identity");
            if (!se.pairs) out.problems.push_back("stored spectrum fails the pair identity");
            fresh = cmd_spectrum(p, e, m, s, opt);
        } else if (command == "code-report") {
            opt.samples = cert.at("enumeration").at("samples").get<unsigned>();
            opt.seed = cert.at("enumeration").at("seed").get<std::uint64_t>();
            fresh = cmd_code_report(p, e, m, s, opt);
        } else if (command == "equivalence") {
            fresh = cmd_equivalence(p, e, m, s, prm.at("t").get<int>(), opt);
        } else {
            throw PreconditionError("replay: unknown command '" + command + "'");
        }
    }
    const json a = without_timing(cert);
    const json b = without_timing(fresh);
    for (const auto& [key, value] : b.items())
        if (!a.contains(key) || a.at(key).dump() != value.dump()) out.problems.push_back("section '" + key + "' differs");
    for (const auto& [key, value] : a.items())
        if (!b.contains(key)) out.problems.push_back("unexpected section '" + key + "'");
    out.match = out.problems.empty() && a.dump() == b.dump();
    return out;
}

}  // namespace scatterforge::certificate
