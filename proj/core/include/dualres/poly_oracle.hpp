#pragma once

#include "dualres/chart.hpp"
#include "dualres/polynomial.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dualres {

struct StrictTransform {
    Polynomial g;
    unsigned k = 0;
};

/// Pulls f back along `sub` and divides out the largest power of the
/// exceptional variable: g * exceptional^k = f o sub with k maximal.
StrictTransform strict_transform(const Polynomial& f, const Substitution& sub, const std::string& exceptional);

/// Minimum total degree of the terms of a nonzero polynomial.
unsigned multiplicity_at_origin(const Polynomial& f);

/// Checks det(Y') = det(Y'_rs - Y'_rm Y'_ms : r,s < m) where Y' is the
/// generic m x m matrix with its (m,m) entry set to 1. Valid for 2 <= m <= 4.
bool det_reduction_check(int m);

// Oracle scale caps for verify_rule.
inline constexpr int kOracleMaxDx = 4;
inline constexpr int kOracleMaxDetSize = 3;
inline constexpr int kOracleMaxExponent = 4;
inline constexpr int kOracleMaxReductionSize = 4;

/// Outcome for one blow-up chart of a rule.
struct ChartVerification {
    std::string chart_type;
    std::string exceptional;
    unsigned k = 0;
    // Order of f along the center; a standard chart must have k equal to it.
    unsigned center_order = 0;
    int measured_exponent = 0;
    int predicted_exponent = 0;
    bool remultiplication = false;
    bool matches_child = false;
    bool preimage = false;
    bool passed = false;
    std::string strict_transform;
    std::string expected;
};

struct VerificationReport {
    RuleApplication rule;
    ChartState chart;
    std::vector<ChartVerification> charts;
    // Exponent of the exceptional divisor measured on the strict transform.
    int measured_exponent = 0;
    // The m^2 - 2 reading for DET, otherwise the same formula as predicted.
    int text_exponent = 0;
    bool text_value_consistent = true;
    bool passed = false;
};

/// Applies every chart substitution of `rule` to local_equation(chart),
/// computes strict transforms, and compares each with the predicted child
/// chart (under the m - 2 exponent policy) up to the chart's renaming and
/// overall sign. Also checks that the t = 0 slice pulls back to the child's
/// x-monomial with the same exceptional power.
VerificationReport verify_rule(const RuleApplication& rule, const ChartState& chart);

/// Parameter grid for one rule family. Every chart uses components E1..E{dx}
/// and applies the rule to the pair (E1, E2).
///   det : m = determinant size, a = exponent of an extra divisor F1 (0 = none)
///   mon1: m = 0/1 y factor, a = exponent of F1
///   mon2: m = 0/1 y factor, a = exponent of an extra divisor F3 (0 = none)
///   mon3: m and a fixed at 1
///   bin : m = 1 for prod x = t y, m = 0 for the renamed prod x = t z
struct GridSpec {
    RuleKind rule = RuleKind::kDet;
    std::vector<int> dx_values;
    std::vector<int> m_values;
    std::vector<int> a_values;
};

GridSpec default_grid(RuleKind rule);

/// Throws ScaleError if any parameter exceeds the oracle caps and
/// InputError if it is outside the rule's domain.
void check_grid(const GridSpec& grid);

std::vector<std::pair<RuleApplication, ChartState>> grid_instances(const GridSpec& grid);

/// Runs verify_rule on every grid instance, fanning out over `threads`
/// workers (0 = hardware concurrency). Results keep grid order.
std::vector<VerificationReport> verify_grid(const GridSpec& grid, unsigned threads = 1);

/// Plain-text table: rule, parameters, per-chart k, measured exponent, verdict.
std::string format_table(const std::vector<VerificationReport>& reports);

} // namespace dualres
