#pragma once

#include "dualres/polynomial.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dualres {

/// Local chart descriptor for the equation
///
///     prod_{i in x} x_i = t * det(y_rs : m x m) * prod_j z_j^{a_j}
///
/// `x` holds E-component ids (kept sorted), `m` the determinant size and `a`
/// the exponents of the F-divisors through the point. m = 1 stands for a
/// single factor y.
struct ChartState {
    std::vector<std::string> x;
    int m = 0;
    std::map<std::string, int> a;

    friend auto operator<=>(const ChartState&, const ChartState&) = default;
    friend bool operator==(const ChartState&, const ChartState&) = default;
};

/// Builds a chart with sorted x indices.
ChartState make_chart(std::vector<std::string> x, int m, std::map<std::string, int> a = {});

/// Throws InputError unless |x| >= 1, x has no repeats, m >= 0 and every
/// exponent is >= 1.
void require_valid(const ChartState& chart);

struct MultiDegree {
    int dx = 0;
    int dy = 0;
    int dz = 0;

    // Member order gives the lexicographic order on (dx, dy, dz).
    friend auto operator<=>(const MultiDegree&, const MultiDegree&) = default;
    friend bool operator==(const MultiDegree&, const MultiDegree&) = default;
};

std::string to_string(const MultiDegree& d);

MultiDegree mdeg(const ChartState& chart);

/// Smooth iff dx = 1 or (dy, dz) = (0, 0).
bool is_resolved(const ChartState& chart);

/// dx = 1: the equation rewrites as x' = t * prod z^a with
/// x' = x_1 + t(1 - det) prod z^a, so E + F is snc along E.
bool snc_certified(const ChartState& chart);

enum class RuleKind { kDet, kMon1, kMon2, kMon3, kBin };

std::string to_string(RuleKind kind);
RuleKind parse_rule_kind(const std::string& name);

/// A blow-up center in chart terms. Pair rules blow up
/// (t = x_i1 = x_i2 = 0) intersected with the rule's extra equations;
/// BIN uses only i1.
struct RuleApplication {
    RuleKind kind = RuleKind::kDet;
    std::string i1;
    std::string i2;
    std::string j1;
    std::string j2;
    // Determinant size of the center for DET; 0 otherwise.
    int det_size = 0;

    static RuleApplication det(std::string i1, std::string i2, int m);
    static RuleApplication mon1(std::string i1, std::string i2, std::string j);
    static RuleApplication mon2(std::string i1, std::string i2, std::string j1, std::string j2);
    static RuleApplication mon3(std::string i1, std::string i2, std::string j);
    static RuleApplication bin(std::string i1);

    friend auto operator<=>(const RuleApplication&, const RuleApplication&) = default;
    friend bool operator==(const RuleApplication&, const RuleApplication&) = default;
};

std::string to_string(const RuleApplication& app);

/// Coefficient given to the exceptional divisor of a DET blow-up of size m.
enum class ExponentPolicy {
    kSizeMinusTwo,    // m - 2, what direct substitution produces ("oracle")
    kSquareMinusTwo,  // m^2 - 2, the value printed in the source text ("paper")
};

std::string to_string(ExponentPolicy policy);
ExponentPolicy parse_exponent_policy(const std::string& name);
int det_exceptional_exponent(int m, ExponentPolicy policy);

/// Throws PreconditionError naming the failed condition if `app` cannot be
/// applied to `chart`.
void check_rule_preconditions(const ChartState& chart, const RuleApplication& app);

/// Coefficient of the exceptional divisor created by `app` on `chart`, or
/// nullopt when the rule creates none (BIN).
std::optional<int> exceptional_coefficient(const ChartState& chart, const RuleApplication& app,
                                           ExponentPolicy policy);

/// One representative per family of permutation-equivalent charts.
struct ChildFamily {
    std::string chart_type;
    ChartState chart;
    int family_size = 1;

    friend bool operator==(const ChildFamily&, const ChildFamily&) = default;
};

/// Child charts of one blow-up. The x-chart representative drops i1 (and
/// keeps i2); the z-chart representative of MON2 drops j1. The exceptional
/// divisor enters every child as `new_divisor` when its coefficient is
/// positive.
std::vector<ChildFamily> children(const ChartState& chart, const RuleApplication& app, ExponentPolicy policy,
                                  const std::string& new_divisor);

// Variable names used by local_equation.
std::string x_var(const std::string& component);
std::string y_var(int r, int s);
std::string z_var(const std::string& divisor);
inline const std::string kTVar = "t";

inline constexpr int kMaxEquationDetSize = 3;
inline constexpr int kMaxEquationDegree = 24;

/// Generic m x m matrix of y variables.
std::vector<std::vector<Polynomial>> generic_y_matrix(int m);

/// prod x_i - t * det(y) * prod z_j^{a_j}. Throws ScaleError beyond
/// kMaxEquationDetSize / kMaxEquationDegree.
Polynomial local_equation(const ChartState& chart);

} // namespace dualres
