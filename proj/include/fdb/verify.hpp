#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fdb {

// One suite's worth of verification results. failures empty <=> success.
struct RunReport {
    std::string suite;
    int cases = 0;
    struct Failure {
        std::string case_id;
        std::string expected;
        std::string actual;
    };
    std::vector<Failure> failures;
    double wall_ms = 0.0;

    bool ok() const { return failures.empty(); }
    void fail(std::string case_id, std::string expected, std::string actual) {
        failures.push_back({std::move(case_id), std::move(expected), std::move(actual)});
    }
};

// The acceptance checks, one per criterion. Seeded suites derive their case
// streams from splitmix64 so runs are reproducible.
RunReport check_partition_bell();                        // counts 0..8, < 5 s
RunReport check_lemma2();                                // n = 0..4, < 60 s
RunReport check_exact_oracle(std::uint64_t seed);        // chain rule vs series, exact
RunReport check_numeric_oracle();                        // chain rule vs difference sums
RunReport check_bell_composite();                        // e^(e^x) derivatives = B_k e
RunReport check_degeneracy(std::uint64_t seed);          // linear-outer / linear-inner laws
RunReport check_associativity(std::uint64_t seed);       // fold-order independence
RunReport check_functional_calculus(std::uint64_t seed); // leibniz/split/alg7, 100 each
RunReport check_lemma1();                                // integer identity + decay slopes

// series-check worker suites (also used by criterion 8)
RunReport series_suite_leibniz(int vars, int cap, int trials, std::uint64_t seed);
RunReport series_suite_split(int vars, int cap, int trials, std::uint64_t seed);
RunReport series_suite_alg7(int vars, int cap, int trials, std::uint64_t seed);

// All acceptance suites in order. `reports_to_json` is byte-deterministic
// for a fixed seed: wall times are deliberately not serialized.
std::vector<RunReport> run_all(std::uint64_t seed);
std::string reports_to_json(const std::vector<RunReport>& reports);
std::string report_to_text(const RunReport& report);

}  // namespace fdb
