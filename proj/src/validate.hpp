#pragma once

#include <cstdint>
#include <string>

namespace casimir {

struct ValidationOptions {
    std::uint64_t seed = 1;
    int sets_per_case = 3;
    bool include_pairs = true;
    // test fixture: flips the sign of the second series of the fixed-position force
    bool inject_position_sign_flip = false;
};

struct ValidationReport {
    std::string json;  // deterministic for a given seed and options
    int total = 0;
    int failed = 0;
    int suspect = 0;
};

ValidationReport run_validation(const ValidationOptions& opts);

}  // namespace casimir
