#pragma once

// JSON certificates for the command-line workflows, and their replay.
//
// Elements are written as little-endian lists of F_p digits. Every section except
// "timing" is deterministic, so replay compares serialized results byte for byte.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "scatterforge/errors.hpp"
#include "scatterforge/field.hpp"
#include "scatterforge/kernels.hpp"

namespace scatterforge::certificate {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

struct Options {
    std::uint64_t budget = Budget::kDefault;
    kernels::Exec exec = kernels::Exec::parallel;
    SeedPolynomials seeds;
    unsigned samples = 8;    // covering-radius samples
    std::uint64_t seed = 1;  // covering-radius RNG seed
};

json field_json(const Tower& T);
SeedPolynomials seeds_from_json(const json& field);

json cmd_construct(std::uint32_t p, unsigned e, unsigned m, int s, const Options& opt);
json cmd_spectrum(std::uint32_t p, unsigned e, unsigned m, int s, const Options& opt);
json cmd_code_report(std::uint32_t p, unsigned e, unsigned m, int s, const Options& opt);
json cmd_scan(const std::string& grid, const Options& opt);
json cmd_equivalence(std::uint32_t p, unsigned e, unsigned m, int s, int t, const Options& opt);

/// Rows "weight,count,closed_form" of a spectrum certificate.
std::string spectrum_csv(const json& cert);

/// Generator rows as CSV; each entry is its space-separated F_p digits.
std::string generator_csv(const json& cert);

/// Parsed --grid: "p=2,3;e=1;m=5,7;s=all".
struct Grid {
    std::vector<std::uint32_t> p;
    std::vector<unsigned> e;
    std::vector<unsigned> m;
    std::vector<int> s;  // empty means every valid s
};
Grid parse_grid(const std::string& text);

struct ReplayResult {
    bool match = false;
    std::vector<std::string> problems;
};
/// Re-runs the certificate's command with its recorded parameters, field and budget.
ReplayResult replay(const json& cert, kernels::Exec exec = kernels::Exec::parallel);

json without_timing(json cert);

}  // namespace scatterforge::certificate
