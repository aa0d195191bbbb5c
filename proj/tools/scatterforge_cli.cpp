#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "scatterforge/certificate.hpp"
#include "scatterforge/errors.hpp"
#include "scatterforge/kernels.hpp"

using namespace scatterforge;
using certificate::json;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kPrecondition = 2, kBudget = 3, kInvariant = 4, kIo = 5 };

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << text;
    if (!out) throw IoError("write to " + path + " failed");
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& ex) {
        throw PreconditionError(path + ": " + ex.what());
    }
}

void emit(const json& cert, const std::string& out_path) {
    const std::string text = cert.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_text(out_path, text);
        std::cerr << "wrote " << out_path << "\n";
    }
}

std::vector<std::vector<std::uint32_t>> parse_nested(const std::string& text) {
    try {
        return json::parse(text).get<std::vector<std::vector<std::uint32_t>>>();
    } catch (const json::exception& ex) {
        throw PreconditionError(std::string("--poly-qm: ") + ex.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    kernels::configure_threads_from_env();

    CLI::App app{"scatterforge: scattered subspaces, linear sets and rank-metric codes"};
    app.require_subcommand(0, 1);

    std::uint32_t p = 2;
    unsigned e = 1, m = 5;
    int s = 1, t = 1;
    std::uint64_t budget = Budget::kDefault;
    std::string out_path, csv_path, grid, replay_path, poly_q, poly_qm, generator_path;
    bool serial = false;
    unsigned samples = 8;
    std::uint64_t seed = 1;

    app.add_option("--replay", replay_path, "Re-verify a certificate file");

    auto add_common = [&](CLI::App* sub, bool with_params) {
        if (with_params) {
            sub->add_option("-p", p, "Characteristic")->required();
            sub->add_option("-e", e, "q = p^e")->required();
            sub->add_option("-m", m, "Extension degree")->required();
            sub->add_option("-s", s, "Frobenius exponent, gcd(s, m) = 1")->required();
            sub->add_option("--poly-q", poly_q, "F_q modulus as JSON list of F_p coefficients");
            sub->add_option("--poly-qm", poly_qm, "F_{q^m} modulus as JSON list of F_q digit lists");
        }
        sub->add_option("--budget", budget, "Enumeration budget");
        sub->add_option("--out", out_path, "Certificate output path (default stdout)");
        sub->add_flag("--serial", serial, "Use the serial reference kernels");
    };

    auto* construct = app.add_subcommand("construct", "Build U_sigma and check the scatteredness criteria");
    add_common(construct, true);
    auto* spectrum = app.add_subcommand("spectrum", "Line intersection spectrum and standard equations");
    add_common(spectrum, true);
    spectrum->add_option("--csv", csv_path, "Write weight,count,closed_form rows");
    auto* report = app.add_subcommand("code-report", "Rank-metric code parameters");
    add_common(report, true);
    report->add_option("--samples", samples, "Covering-radius Monte Carlo samples");
    report->add_option("--seed", seed, "Covering-radius RNG seed");
    report->add_option("--generator-csv", generator_path, "Write the generator matrix as CSV");
    auto* scan = app.add_subcommand("scan", "Criteria table over a parameter grid");
    add_common(scan, false);
    scan->add_option("--grid", grid, "e.g. \"p=2,3;e=1;m=5,7;s=all\"")->required();
    auto* equivalence = app.add_subcommand("equivalence", "Decide whether U_s and U_t are equivalent");
    add_common(equivalence, true);
    equivalence->add_option("-t", t, "Second exponent")->required();
    auto* replay = app.add_subcommand("replay", "Re-verify a certificate file");
    replay->add_option("file", replay_path, "Certificate path")->required();
    replay->add_flag("--serial", serial, "Use the serial reference kernels");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& ex) {
        const int code = app.exit(ex);
        return code == 0 ? kOk : kPrecondition;
    }

    try {
        certificate::Options opt;
        opt.budget = budget;
        opt.exec = serial ? kernels::Exec::serial : kernels::Exec::parallel;
        opt.samples = samples;
        opt.seed = seed;
        if (!poly_q.empty()) {
            try {
                opt.seeds.poly_q = json::parse(poly_q).get<std::vector<std::uint32_t>>();
            } catch (const json::exception& ex) {
                throw PreconditionError(std::string("--poly-q: ") + ex.what());
            }
        }
        if (!poly_qm.empty()) opt.seeds.poly_qm = parse_nested(poly_qm);

        if (!replay_path.empty()) {
            const auto r = certificate::replay(read_json(replay_path), opt.exec);
            for (const auto& problem : r.problems) std::cout << "mismatch: " << problem << "\n";
            std::cout << (r.match ? "replay: match\n" : "replay: MISMATCH\n");
            return r.match ? kOk : kMismatch;
        }
        if (*construct) {
            emit(certificate::cmd_construct(p, e, m, s, opt), out_path);
        } else if (*spectrum) {
            const json cert = certificate::cmd_spectrum(p, e, m, s, opt);
            emit(cert, out_path);
            if (!csv_path.empty()) write_text(csv_path, certificate::spectrum_csv(cert));
        } else if (*report) {
            const json cert = certificate::cmd_code_report(p, e, m, s, opt);
            emit(cert, out_path);
            if (!generator_path.empty()) write_text(generator_path, certificate::generator_csv(cert));
        } else if (*scan) {
            emit(certificate::cmd_scan(grid, opt), out_path);
        } else if (*equivalence) {
            emit(certificate::cmd_equivalence(p, e, m, s, t, opt), out_path);
        } else {
            std::cout << app.help();
        }
        return kOk;
    } catch (const PreconditionError& ex) {
        std::cerr << "precondition: " << ex.what() << "\n";
        return kPrecondition;
    } catch (const BudgetExceeded& ex) {
        std::cerr << "budget exceeded: " << ex.what() << "\n";
        return kBudget;
    } catch (const InvariantViolation& ex) {
        std::cerr << "INVARIANT VIOLATION: " << ex.what() << "\n";
        return kInvariant;
    } catch (const IoError& ex) {
        std::cerr << "i/o: " << ex.what() << "\n";
        return kIo;
    } catch (const json::exception& ex) {
        std::cerr << "certificate: " << ex.what() << "\n";
        return kPrecondition;
    }
}
