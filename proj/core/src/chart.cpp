#include "dualres/chart.hpp"

#include "dualres/errors.hpp"

#include <algorithm>

namespace dualres {

ChartState make_chart(std::vector<std::string> x, int m, std::map<std::string, int> a) {
    std::sort(x.begin(), x.end());
    return ChartState{std::move(x), m, std::move(a)};
}

void require_valid(const ChartState& chart) {
    if (chart.x.empty()) throw InputError("chart has no x indices");
    if (!std::is_sorted(chart.x.begin(), chart.x.end()) ||
        std::adjacent_find(chart.x.begin(), chart.x.end()) != chart.x.end()) {
        throw InputError("chart x indices must be sorted and distinct");
    }
    if (chart.m < 0) throw InputError("chart determinant size is negative");
    for (const auto& [j, e] : chart.a) {
        if (e < 1) throw InputError("exponent of divisor '" + j + "' must be >= 1");
    }
}

std::string to_string(const MultiDegree& d) {
    return "(" + std::to_string(d.dx) + "," + std::to_string(d.dy) + "," + std::to_string(d.dz) + ")";
}

MultiDegree mdeg(const ChartState& chart) {
    int dz = 0;
    for (const auto& [_, e] : chart.a) dz += e;
    return {static_cast<int>(chart.x.size()), chart.m, dz};
}

bool is_resolved(const ChartState& chart) {
    const auto d = mdeg(chart);
    return d.dx == 1 || (d.dy == 0 && d.dz == 0);
}

bool snc_certified(const ChartState& chart) { return chart.x.size() == 1; }

std::string to_string(RuleKind kind) {
    switch (kind) {
    case RuleKind::kDet: return "det";
    case RuleKind::kMon1: return "mon1";
    case RuleKind::kMon2: return "mon2";
    case RuleKind::kMon3: return "mon3";
    case RuleKind::kBin: return "bin";
    }
    return "?";
}

RuleKind parse_rule_kind(const std::string& name) {
    for (auto k : {RuleKind::kDet, RuleKind::kMon1, RuleKind::kMon2, RuleKind::kMon3, RuleKind::kBin}) {
        if (to_string(k) == name) return k;
    }
    throw InputError("unknown rule '" + name + "' (expected det, mon1, mon2, mon3 or bin)");
}

RuleApplication RuleApplication::det(std::string i1, std::string i2, int m) {
    return {RuleKind::kDet, std::move(i1), std::move(i2), {}, {}, m};
}

RuleApplication RuleApplication::mon1(std::string i1, std::string i2, std::string j) {
    return {RuleKind::kMon1, std::move(i1), std::move(i2), std::move(j), {}, 0};
}

RuleApplication RuleApplication::mon2(std::string i1, std::string i2, std::string j1, std::string j2) {
    return {RuleKind::kMon2, std::move(i1), std::move(i2), std::move(j1), std::move(j2), 0};
}

RuleApplication RuleApplication::mon3(std::string i1, std::string i2, std::string j) {
    return {RuleKind::kMon3, std::move(i1), std::move(i2), std::move(j), {}, 0};
}

RuleApplication RuleApplication::bin(std::string i1) { return {RuleKind::kBin, std::move(i1), {}, {}, {}, 0}; }

std::string to_string(const RuleApplication& app) {
    std::string s = to_string(app.kind) + "(";
    switch (app.kind) {
    case RuleKind::kDet: s += app.i1 + "," + app.i2 + "; m=" + std::to_string(app.det_size); break;
    case RuleKind::kMon1:
    case RuleKind::kMon3: s += app.i1 + "," + app.i2 + "; " + app.j1; break;
    case RuleKind::kMon2: s += app.i1 + "," + app.i2 + "; " + app.j1 + "," + app.j2; break;
    case RuleKind::kBin: s += app.i1; break;
    }
    return s + ")";
}

std::string to_string(ExponentPolicy policy) {
    return policy == ExponentPolicy::kSizeMinusTwo ? "oracle" : "paper";
}

ExponentPolicy parse_exponent_policy(const std::string& name) {
    if (name == "oracle") return ExponentPolicy::kSizeMinusTwo;
    if (name == "paper") return ExponentPolicy::kSquareMinusTwo;
    throw InputError("unknown exponent policy '" + name + "' (expected paper or oracle)");
}

int det_exceptional_exponent(int m, ExponentPolicy policy) {
    return policy == ExponentPolicy::kSizeMinusTwo ? m - 2 : m * m - 2;
}

namespace {

bool has_x(const ChartState& c, const std::string& i) { return std::binary_search(c.x.begin(), c.x.end(), i); }

int exponent_of(const ChartState& c, const std::string& j) {
    auto it = c.a.find(j);
    return it == c.a.end() ? 0 : it->second;
}

[[noreturn]] void fail(const RuleApplication& app, const std::string& what) {
    throw PreconditionError(to_string(app) + ": " + what);
}

// The renamed binomial form prod x = t * z_j (one divisor, exponent 1,
// no determinant) is treated as prod x = t * y.
bool is_renamed_binomial(const ChartState& c) { return c.m == 0 && c.a.size() == 1 && c.a.begin()->second == 1; }

std::vector<std::string> drop(const std::vector<std::string>& x, const std::string& i) {
    std::vector<std::string> out;
    for (const auto& v : x) {
        if (v != i) out.push_back(v);
    }
    return out;
}

} // namespace

void check_rule_preconditions(const ChartState& chart, const RuleApplication& app) {
    require_valid(chart);
    const auto d = mdeg(chart);

    if (app.kind != RuleKind::kBin) {
        if (app.i1 == app.i2) fail(app, "the component pair must be two distinct components");
        if (!has_x(chart, app.i1) || !has_x(chart, app.i2)) {
            fail(app, "components " + app.i1 + " and " + app.i2 + " must both be x indices of the chart");
        }
    }

    switch (app.kind) {
    case RuleKind::kDet:
        if (chart.m < 2) fail(app, "DET requires determinant size m >= 2");
        if (app.det_size != 0 && app.det_size != chart.m) {
            fail(app, "center has determinant size " + std::to_string(app.det_size) + " but the chart has " +
                          std::to_string(chart.m));
        }
        break;
    case RuleKind::kMon1:
        if (exponent_of(chart, app.j1) < 2) fail(app, "MON1 requires a_j >= 2 for divisor " + app.j1);
        break;
    case RuleKind::kMon2:
        if (app.j1 == app.j2) fail(app, "MON2 requires two distinct divisors");
        if (exponent_of(chart, app.j1) != 1 || exponent_of(chart, app.j2) != 1) {
            fail(app, "MON2 requires a_j1 = a_j2 = 1");
        }
        break;
    case RuleKind::kMon3:
        if (d.dy != 1 || d.dz != 1) fail(app, "MON3 requires deg_y = deg_z = 1");
        if (exponent_of(chart, app.j1) != 1) fail(app, "MON3 divisor " + app.j1 + " must carry the z factor");
        break;
    case RuleKind::kBin:
        if (!has_x(chart, app.i1)) fail(app, "component " + app.i1 + " must be an x index of the chart");
        if (d.dx < 2) fail(app, "BIN requires deg_x >= 2");
        if (!((d.dy == 1 && d.dz == 0) || is_renamed_binomial(chart))) {
            fail(app, "BIN requires deg_y = 1 and deg_z = 0");
        }
        break;
    }
}

std::optional<int> exceptional_coefficient(const ChartState& chart, const RuleApplication& app,
                                           ExponentPolicy policy) {
    switch (app.kind) {
    case RuleKind::kDet: return det_exceptional_exponent(chart.m, policy);
    case RuleKind::kMon1: return exponent_of(chart, app.j1) - 2;
    case RuleKind::kMon2:
    case RuleKind::kMon3: return 0;
    case RuleKind::kBin: return std::nullopt;
    }
    return std::nullopt;
}

std::vector<ChildFamily> children(const ChartState& chart, const RuleApplication& app, ExponentPolicy policy,
                                  const std::string& new_divisor) {
    check_rule_preconditions(chart, app);
    const int e = exceptional_coefficient(chart, app, policy).value_or(0);
    if (e < 0) throw InvariantBreach(to_string(app) + ": negative exceptional coefficient");
    if (e > 0 && chart.a.contains(new_divisor)) {
        throw PreconditionError("exceptional divisor id '" + new_divisor + "' already occurs in the chart");
    }

    auto with_exceptional = [&](std::map<std::string, int> a) {
        if (e > 0) a[new_divisor] = e;
        return a;
    };

    std::vector<ChildFamily> out;
    switch (app.kind) {
    case RuleKind::kDet: {
        const int m = chart.m;
        out.push_back({"x-chart", {drop(chart.x, app.i1), m, with_exceptional(chart.a)}, 2});
        out.push_back({"y-chart", {chart.x, m - 1, with_exceptional(chart.a)}, m * m});
        break;
    }
    case RuleKind::kMon1: {
        auto a3 = chart.a;
        a3.erase(app.j1);
        out.push_back({"x-chart", {drop(chart.x, app.i1), chart.m, with_exceptional(chart.a)}, 2});
        out.push_back({"z-chart", {chart.x, chart.m, with_exceptional(std::move(a3))}, 1});
        break;
    }
    case RuleKind::kMon2: {
        auto a2 = chart.a;
        a2.erase(app.j1);
        out.push_back({"x-chart", {drop(chart.x, app.i1), chart.m, chart.a}, 2});
        out.push_back({"z-chart", {chart.x, chart.m, std::move(a2)}, 2});
        break;
    }
    case RuleKind::kMon3: {
        auto a2 = chart.a;
        a2.erase(app.j1);
        out.push_back({"x-chart", {drop(chart.x, app.i1), 1, chart.a}, 2});
        // The y-chart child prod x = t z is renamed to prod x = t y, so both
        // one-factor children coincide.
        out.push_back({"yz-chart", {chart.x, 1, std::move(a2)}, 2});
        break;
    }
    case RuleKind::kBin:
        // The renamed form prod x = t z_j keeps F_j in its x-chart.
        out.push_back({"x-chart", {drop(chart.x, app.i1), chart.m, chart.a}, 1});
        out.push_back({"y-chart", {chart.x, 0, {}}, 1});
        break;
    }
    return out;
}

std::string x_var(const std::string& component) { return "x_" + component; }
std::string y_var(int r, int s) { return "y_" + std::to_string(r) + "_" + std::to_string(s); }
std::string z_var(const std::string& divisor) { return "z_" + divisor; }

std::vector<std::vector<Polynomial>> generic_y_matrix(int m) {
    std::vector<std::vector<Polynomial>> mat(static_cast<std::size_t>(m));
    for (int r = 1; r <= m; ++r) {
        for (int s = 1; s <= m; ++s) mat[static_cast<std::size_t>(r - 1)].push_back(Polynomial::variable(y_var(r, s)));
    }
    return mat;
}

Polynomial local_equation(const ChartState& chart) {
    require_valid(chart);
    const auto d = mdeg(chart);
    if (chart.m > kMaxEquationDetSize) {
        throw ScaleError("local equation: determinant size " + std::to_string(chart.m) + " exceeds the cap of " +
                         std::to_string(kMaxEquationDetSize));
    }
    if (d.dx > kMaxEquationDegree || 1 + d.dy + d.dz > kMaxEquationDegree) {
        throw ScaleError("local equation: total degree exceeds the cap of " + std::to_string(kMaxEquationDegree));
    }

    Polynomial lhs(1);
    for (const auto& i : chart.x) lhs *= Polynomial::variable(x_var(i));

    Polynomial rhs = Polynomial::variable(kTVar) * determinant(generic_y_matrix(chart.m));
    for (const auto& [j, e] : chart.a) rhs *= Polynomial::variable(z_var(j)).pow(static_cast<unsigned>(e));
    return lhs - rhs;
}

} // namespace dualres
