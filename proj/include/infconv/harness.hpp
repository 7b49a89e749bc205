#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "infconv/envelope.hpp"
#include "infconv/json_io.hpp"
#include "infconv/subdiff.hpp"
#include "infconv/vecset.hpp"

namespace infconv {

// One corpus entry: an infimal-convolution instance plus the reference
// points, declared constants, and closed-form expectations the checks need.
struct CheckCase {
    std::string id;
    ConvCase conv;
    std::vector<Vec2> xbars;
    std::optional<double> ell;  // calmness constant of f on dom f
    std::optional<double> m;    // coercivity constant of phi
    // independent closed form of the envelope, when one exists
    std::optional<FuncSpec> envelope_spec;
    // declared left-hand sets per xbar (Empty = genuinely empty subdifferential)
    std::vector<std::optional<VecSet>> expected_left;
    bool lower_regular = true;

    CheckCase(std::string id_, ConvCase conv_) : id(std::move(id_)), conv(std::move(conv_)) {}
};

struct CheckRecord {
    std::string check;
    std::string anchor;
    std::string case_id;
    std::string point;    // formatted reference point, empty for case-level checks
    std::string verdict;  // pass | fail | skip | error
    double measured = 0;
    double tolerance = 0;
    double margin = 0;
    std::string note;
};

struct HarnessConfig {
    std::uint64_t seed = 0;
    double tol_hausdorff = 1e-6;
    double tol_membership = 1e-8;
    double tol_pair = 1e-9;
    double tol_segment = 1e-8;
    double transfer_eta = 0.1;
    int threads = 0;  // 0 keeps the runtime default

    // Applies "key=value" overrides; unknown keys are an error.
    void apply_override(const std::string& key, double value);
};

struct CheckReport {
    std::vector<CheckRecord> records;
    std::uint64_t seed = 0;
    std::vector<std::string> corpus_fingerprint;  // case ids + grid specs

    int passed = 0, failed = 0, skipped = 0, errored = 0;
    void tally();

    Json to_json() const;
    std::string to_csv() const;
    bool all_green() const { return failed == 0 && errored == 0; }
};

// The fixed 12-case corpus: distance to an interval, distance to a finite
// set, asymmetric gauge targets, quadratic envelopes of |x| and of point
// indicators, 2D ball/square targets, and the dominated-kernel family.
std::vector<CheckCase> builtin_corpus();

// Convex specs (with grids) exercised by the appendix equivalence check.
std::vector<std::pair<FuncSpec, Grid>> appendix_corpus();

// Individual checks; each returns one record per reference point (or one
// case-level record). Exposed for focused testing.
std::vector<CheckRecord> check_prop_3_2(const CheckCase&, const HarnessConfig&);
std::vector<CheckRecord> check_prop_3_3(const CheckCase&, const HarnessConfig&);
std::vector<CheckRecord> check_prop_3_4(const CheckCase&, const HarnessConfig&);
std::vector<CheckRecord> check_prop_4_1(const CheckCase&, const HarnessConfig&);
std::vector<CheckRecord> check_lem_5_1(const CheckCase&, const HarnessConfig&);
std::vector<CheckRecord> check_prop_4_6(const CheckCase&, const HarnessConfig&);
std::vector<CheckRecord> check_thm_4_3(const CheckCase&, const HarnessConfig&);
std::vector<CheckRecord> check_prop_4_4(const CheckCase&, const HarnessConfig&);
std::vector<CheckRecord> check_thm_4_7(const CheckCase&, const HarnessConfig&);
std::vector<CheckRecord> check_thm_5_5(const CheckCase&, const HarnessConfig&);
std::vector<CheckRecord> check_prop_5_7(const CheckCase&, const HarnessConfig&);
std::vector<CheckRecord> check_transfers(const CheckCase&, const HarnessConfig&);
std::vector<CheckRecord> check_section_6(const CheckCase&, const HarnessConfig&);
std::vector<CheckRecord> check_appendix(const std::vector<std::pair<FuncSpec, Grid>>& specs,
                                        const HarnessConfig&);

// All check names accepted by run_suite, in canonical order.
const std::vector<std::string>& all_check_names();

// Runs the selected checks (empty selector = all) over the corpus. A case
// that throws is recorded as an error verdict and does not abort the run.
CheckReport run_suite(const std::vector<CheckCase>& corpus,
                      const std::vector<std::string>& checks = {},
                      const HarnessConfig& cfg = {});

}  // namespace infconv
