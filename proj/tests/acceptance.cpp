#include <cstdio>
#include <iostream>

#include "piclat/suites.hpp"

using namespace piclat;

int main() {
    struct Criterion {
        int id;
        const char* suite;
        const char* what;
        double budget;
    };
    const Criterion cs[] = {
        {1, "type-A", "type A sweep against closed forms", 30},
        {2, "type-BC", "type B/C sweep against closed forms", 10},
        {3, "type-D", "type D sweep against closed forms", 20},
        {4, "exceptional", "exceptional sweep against closed forms", 5},
        {5, "tori", "torus cokernels against closed forms", 30},
        {6, "invariant-factors", "invariant factors of Im(omega + gamma)", 10},
        {7, "order-identities", "order identity and coker(omega) = coker(ev)", 10},
        {8, "rank-bookkeeping", "rank bookkeeping", 5},
        {9, "weyl-bruteforce", "brute-force Weyl invariant forms", 10},
        {10, "functoriality", "pullback composition and lift independence", 10},
        {11, "gl-sanity", "GL_n gcd(n, d) obstruction", 5},
    };
    const unsigned threads = worker_threads();
    int failed = 0;
    for (const auto& c : cs) {
        SuiteResult r;
        std::string err;
        try {
            r = run_suite(c.suite, threads);
        } catch (const std::exception& e) {
            err = e.what();
        }
        const bool in_time = r.seconds <= c.budget;
        const bool ok = err.empty() && r.ok() && in_time;
        failed += !ok;
        std::printf("%s criterion %d: %s (%ld checks, %ld failed, %.2f s of %.0f s)\n", ok ? "PASS" : "FAIL", c.id,
                    c.what, r.passed + r.failed, r.failed, r.seconds, c.budget);
        if (!err.empty()) std::printf("    error: %s\n", err.c_str());
        if (!in_time) std::printf("    over the time budget\n");
        for (const auto& f : r.failures) std::printf("    %s\n", f.c_str());
    }
    std::fflush(stdout);
    return failed ? 1 : 0;
}
