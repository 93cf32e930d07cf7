#pragma once

#include <string>
#include <vector>

// Cross-path verification suites behind `curvelast verify`: finite-difference
// moduli checks, the two assembly routes for the incremental stresses, the
// radial-root interpretation probe, and the long-wavelength consistency test.

namespace curvelast {

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyOptions {
    // test hook: adds a perturbation to one aligned-moduli entry before the
    // finite-difference comparison (block 0 = A, 1 = B, 2 = C, 3 = D)
    bool corrupt = false;
    int corrupt_block = 0;
    int corrupt_index[4] = {0, 0, 0, 0};
    double corrupt_delta = 0.0;
};

std::vector<SuiteResult> run_verification(const VerifyOptions& opts = {});

}  // namespace curvelast
