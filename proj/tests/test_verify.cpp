#include <doctest.h>

#include "curvelast/verify.hpp"

using namespace curvelast;

TEST_CASE("verification suites pass on the shipped configuration") {
    const auto results = run_verification();
    for (const auto& r : results) {
        INFO(r.name, ": ", r.detail);
        CHECK(r.passed);
    }
}

TEST_CASE("a corrupted moduli entry is caught and named") {
    VerifyOptions opts;
    opts.corrupt = true;
    opts.corrupt_block = 0;  // A
    opts.corrupt_index[0] = 0;
    opts.corrupt_index[1] = 0;
    opts.corrupt_index[2] = 1;
    opts.corrupt_index[3] = 1;
    opts.corrupt_delta = 1e-3;
    const auto results = run_verification(opts);
    bool fd_failed = false;
    for (const auto& r : results)
        if (r.name == "fd-moduli") {
            fd_failed = !r.passed;
            CHECK(r.detail.find("A[0011]") != std::string::npos);
        }
    CHECK(fd_failed);
}
