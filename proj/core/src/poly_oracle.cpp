#include "dualres/poly_oracle.hpp"

#include "dualres/errors.hpp"

#include <algorithm>
#include <future>
#include <iomanip>
#include <sstream>
#include <thread>

namespace dualres {

StrictTransform strict_transform(const Polynomial& f, const Substitution& sub, const std::string& exceptional) {
    if (f.is_zero()) throw PreconditionError("strict_transform: f must be nonzero");
    const Polynomial pulled = f.substitute(sub);
    if (pulled.is_zero()) throw PreconditionError("strict_transform: the substitution kills f");
    const unsigned k = pulled.divisibility_in(exceptional);
    return {pulled.divided_by_power(exceptional, k), k};
}

unsigned multiplicity_at_origin(const Polynomial& f) {
    if (f.is_zero()) throw PreconditionError("multiplicity_at_origin: f must be nonzero");
    return f.min_total_degree();
}

namespace {

std::string primed(const std::string& v) { return v + "'"; }

Polynomial var(const std::string& v) { return Polynomial::variable(v); }

} // namespace

bool det_reduction_check(int m) {
    if (m < 2) throw PreconditionError("det_reduction_check: m must be >= 2");
    if (m > kOracleMaxReductionSize) {
        throw ScaleError("det_reduction_check: m = " + std::to_string(m) + " exceeds the cap of " +
                         std::to_string(kOracleMaxReductionSize));
    }
    auto yp = [](int r, int s) { return var(primed(y_var(r, s))); };

    std::vector<std::vector<Polynomial>> full(static_cast<std::size_t>(m));
    for (int r = 1; r <= m; ++r) {
        for (int s = 1; s <= m; ++s) {
            full[static_cast<std::size_t>(r - 1)].push_back(r == m && s == m ? Polynomial(1) : yp(r, s));
        }
    }
    std::vector<std::vector<Polynomial>> reduced(static_cast<std::size_t>(m - 1));
    for (int r = 1; r < m; ++r) {
        for (int s = 1; s < m; ++s) {
            reduced[static_cast<std::size_t>(r - 1)].push_back(yp(r, s) - yp(r, m) * yp(m, s));
        }
    }
    return determinant(full) == determinant(reduced);
}

namespace {

// One chart of a blow-up: the coordinate change, its exceptional variable,
// and the map from the predicted child's variables to the new coordinates.
struct OracleChart {
    std::string chart_type;
    Substitution sub;
    std::string exceptional;
    Substitution to_child;
};

// Sets v -> v' * factor (or v -> v' when factor is empty).
void scale(Substitution& s, const std::string& v, const std::string& factor) {
    s.set(v, factor.empty() ? var(primed(v)) : var(primed(v)) * var(factor));
}

void rename_primed(Substitution& s, const std::string& v) { s.set(v, var(primed(v))); }

std::vector<OracleChart> oracle_charts(const ChartState& chart, const RuleApplication& app, int exceptional_coeff,
                                       const std::string& new_divisor) {
    const std::string xi1 = x_var(app.i1);
    const std::string xi2 = x_var(app.i2);
    std::vector<OracleChart> out;

    auto link_new_divisor = [&](OracleChart& c) {
        if (exceptional_coeff > 0) c.to_child.set(z_var(new_divisor), var(c.exceptional));
    };

    switch (app.kind) {
    case RuleKind::kDet: {
        const int m = chart.m;
        {
            OracleChart c{"x-chart", {}, primed(xi1), {}};
            c.sub.set(xi1, var(c.exceptional));
            scale(c.sub, xi2, c.exceptional);
            for (int r = 1; r <= m; ++r) {
                for (int s = 1; s <= m; ++s) {
                    scale(c.sub, y_var(r, s), c.exceptional);
                    rename_primed(c.to_child, y_var(r, s));
                }
            }
            rename_primed(c.to_child, xi2);
            link_new_divisor(c);
            out.push_back(std::move(c));
        }
        {
            const std::string ymm = y_var(m, m);
            OracleChart c{"y-chart", {}, ymm + "''", {}};
            scale(c.sub, xi1, c.exceptional);
            scale(c.sub, xi2, c.exceptional);
            for (int r = 1; r <= m; ++r) {
                for (int s = 1; s <= m; ++s) {
                    if (r == m && s == m) {
                        c.sub.set(ymm, var(c.exceptional));
                    } else {
                        scale(c.sub, y_var(r, s), c.exceptional);
                    }
                }
            }
            // y''_rs := y'_rs - y'_rm y'_ms on the (m-1) x (m-1) block.
            for (int r = 1; r < m; ++r) {
                for (int s = 1; s < m; ++s) {
                    c.to_child.set(y_var(r, s), var(primed(y_var(r, s))) -
                                                    var(primed(y_var(r, m))) * var(primed(y_var(m, s))));
                }
            }
            rename_primed(c.to_child, xi1);
            rename_primed(c.to_child, xi2);
            link_new_divisor(c);
            out.push_back(std::move(c));
        }
        break;
    }
    case RuleKind::kMon1: {
        const std::string zj = z_var(app.j1);
        {
            OracleChart c{"x-chart", {}, primed(xi1), {}};
            c.sub.set(xi1, var(c.exceptional));
            scale(c.sub, xi2, c.exceptional);
            scale(c.sub, zj, c.exceptional);
            rename_primed(c.to_child, xi2);
            rename_primed(c.to_child, zj);
            link_new_divisor(c);
            out.push_back(std::move(c));
        }
        {
            OracleChart c{"z-chart", {}, primed(zj), {}};
            scale(c.sub, xi1, c.exceptional);
            scale(c.sub, xi2, c.exceptional);
            c.sub.set(zj, var(c.exceptional));
            rename_primed(c.to_child, xi1);
            rename_primed(c.to_child, xi2);
            link_new_divisor(c);
            out.push_back(std::move(c));
        }
        break;
    }
    case RuleKind::kMon2: {
        const std::string zj1 = z_var(app.j1);
        const std::string zj2 = z_var(app.j2);
        {
            OracleChart c{"x-chart", {}, primed(xi1), {}};
            c.sub.set(xi1, var(c.exceptional));
            scale(c.sub, xi2, c.exceptional);
            scale(c.sub, zj1, c.exceptional);
            scale(c.sub, zj2, c.exceptional);
            rename_primed(c.to_child, xi2);
            rename_primed(c.to_child, zj1);
            rename_primed(c.to_child, zj2);
            out.push_back(std::move(c));
        }
        {
            OracleChart c{"z-chart", {}, primed(zj1), {}};
            scale(c.sub, xi1, c.exceptional);
            scale(c.sub, xi2, c.exceptional);
            c.sub.set(zj1, var(c.exceptional));
            scale(c.sub, zj2, c.exceptional);
            rename_primed(c.to_child, xi1);
            rename_primed(c.to_child, xi2);
            rename_primed(c.to_child, zj2);
            out.push_back(std::move(c));
        }
        break;
    }
    case RuleKind::kMon3: {
        const std::string y = y_var(1, 1);
        const std::string zj = z_var(app.j1);
        {
            OracleChart c{"x-chart", {}, primed(xi1), {}};
            c.sub.set(xi1, var(c.exceptional));
            scale(c.sub, xi2, c.exceptional);
            scale(c.sub, y, c.exceptional);
            scale(c.sub, zj, c.exceptional);
            rename_primed(c.to_child, xi2);
            rename_primed(c.to_child, y);
            rename_primed(c.to_child, zj);
            out.push_back(std::move(c));
        }
        {
            // Exceptional along z: the y factor survives.
            OracleChart c{"yz-chart", {}, primed(zj), {}};
            scale(c.sub, xi1, c.exceptional);
            scale(c.sub, xi2, c.exceptional);
            scale(c.sub, y, c.exceptional);
            c.sub.set(zj, var(c.exceptional));
            rename_primed(c.to_child, xi1);
            rename_primed(c.to_child, xi2);
            rename_primed(c.to_child, y);
            out.push_back(std::move(c));
        }
        {
            // Exceptional along y: the z factor survives and is renamed to y.
            OracleChart c{"yz-chart", {}, primed(y), {}};
            scale(c.sub, xi1, c.exceptional);
            scale(c.sub, xi2, c.exceptional);
            c.sub.set(y, var(c.exceptional));
            scale(c.sub, zj, c.exceptional);
            rename_primed(c.to_child, xi1);
            rename_primed(c.to_child, xi2);
            c.to_child.set(y, var(primed(zj)));
            out.push_back(std::move(c));
        }
        break;
    }
    case RuleKind::kBin: {
        // prod x = t y, or the renamed prod x = t z_j.
        const std::string y = chart.m == 1 ? y_var(1, 1) : z_var(chart.a.begin()->first);
        {
            OracleChart c{"x-chart", {}, primed(xi1), {}};
            c.sub.set(xi1, var(c.exceptional));
            scale(c.sub, y, c.exceptional);
            c.to_child.set(y, var(primed(y)));
            out.push_back(std::move(c));
        }
        {
            OracleChart c{"y-chart", {}, primed(y), {}};
            scale(c.sub, xi1, c.exceptional);
            c.sub.set(y, var(c.exceptional));
            rename_primed(c.to_child, xi1);
            out.push_back(std::move(c));
        }
        break;
    }
    }
    return out;
}

// Order of f along the center cut out by the substituted variables.
unsigned center_order(const Polynomial& f, const Substitution& sub) {
    unsigned best = std::numeric_limits<unsigned>::max();
    for (const auto& [mono, _] : f.terms()) {
        unsigned d = 0;
        for (const auto& [v, e] : mono.factors()) {
            if (sub.find(v) != nullptr) d += e;
        }
        best = std::min(best, d);
    }
    return best;
}

bool equal_up_to_sign(const Polynomial& a, const Polynomial& b) { return a == b || a == -b; }

void check_scale(const ChartState& chart) {
    const auto d = mdeg(chart);
    if (d.dx > kOracleMaxDx) {
        throw ScaleError("oracle scale: deg_x = " + std::to_string(d.dx) + " exceeds the cap of " +
                         std::to_string(kOracleMaxDx));
    }
    if (chart.m > kOracleMaxDetSize) {
        throw ScaleError("oracle scale: determinant size m = " + std::to_string(chart.m) + " exceeds the cap of " +
                         std::to_string(kOracleMaxDetSize));
    }
    for (const auto& [j, e] : chart.a) {
        if (e > kOracleMaxExponent) {
            throw ScaleError("oracle scale: exponent of " + j + " = " + std::to_string(e) + " exceeds the cap of " +
                             std::to_string(kOracleMaxExponent));
        }
    }
}

} // namespace

VerificationReport verify_rule(const RuleApplication& rule, const ChartState& chart) {
    check_scale(chart);
    check_rule_preconditions(chart, rule);

    std::string new_divisor = "W";
    while (chart.a.contains(new_divisor)) new_divisor += "'";

    const int predicted = exceptional_coefficient(chart, rule, ExponentPolicy::kSizeMinusTwo).value_or(0);
    const auto families = children(chart, rule, ExponentPolicy::kSizeMinusTwo, new_divisor);
    const Polynomial f = local_equation(chart);

    VerificationReport report;
    report.rule = rule;
    report.chart = chart;
    report.text_exponent = rule.kind == RuleKind::kDet ? chart.m * chart.m - 2 : predicted;
    report.passed = true;

    bool first = true;
    for (auto& oc : oracle_charts(chart, rule, predicted, new_divisor)) {
        ChartVerification cv;
        cv.chart_type = oc.chart_type;
        cv.exceptional = oc.exceptional;
        cv.predicted_exponent = predicted;

        auto fam = std::find_if(families.begin(), families.end(),
                                [&](const ChildFamily& c) { return c.chart_type == oc.chart_type; });
        if (fam == families.end()) {
            throw InvariantBreach("no predicted child for " + oc.chart_type + " of " + to_string(rule));
        }

        const Polynomial pulled = f.substitute(oc.sub);
        const StrictTransform st = strict_transform(f, oc.sub, oc.exceptional);
        cv.k = st.k;
        cv.center_order = center_order(f, oc.sub);
        cv.measured_exponent = static_cast<int>(st.g.degree_in(oc.exceptional));
        cv.remultiplication = (st.g * Polynomial::variable(oc.exceptional).pow(st.k) - pulled).is_zero();

        const Polynomial expected = local_equation(fam->chart).substitute(oc.to_child);
        cv.matches_child = equal_up_to_sign(st.g, expected);

        // The t = 0 slice is the preimage of E: same exceptional power, and
        // the quotient is the child's x-monomial.
        const Polynomial slice = pulled.evaluate(kTVar, 0);
        cv.preimage = !slice.is_zero() && slice.divisibility_in(oc.exceptional) == st.k &&
                      equal_up_to_sign(slice.divided_by_power(oc.exceptional, st.k), expected.evaluate(kTVar, 0));

        cv.passed = cv.remultiplication && cv.matches_child && cv.preimage && cv.k == cv.center_order;
        cv.strict_transform = st.g.to_string();
        cv.expected = expected.to_string();

        if (first) {
            report.measured_exponent = cv.measured_exponent;
            first = false;
        } else if (cv.measured_exponent != report.measured_exponent) {
            report.passed = false;
        }
        report.passed = report.passed && cv.passed;
        report.charts.push_back(std::move(cv));
    }
    report.text_value_consistent = report.measured_exponent == report.text_exponent;
    return report;
}

GridSpec default_grid(RuleKind rule) {
    switch (rule) {
    case RuleKind::kDet: return {rule, {2, 3, 4}, {2, 3}, {0, 2}};
    case RuleKind::kMon1: return {rule, {2, 3, 4}, {0, 1}, {2, 3, 4}};
    case RuleKind::kMon2: return {rule, {2, 3, 4}, {0, 1}, {0, 1}};
    case RuleKind::kMon3: return {rule, {2, 3, 4}, {1}, {1}};
    case RuleKind::kBin: return {rule, {2, 3, 4}, {0, 1}, {0}};
    }
    return {};
}

void check_grid(const GridSpec& grid) {
    auto cap = [](const char* what, int v, int limit) {
        if (v > limit) {
            throw ScaleError(std::string(what) + " = " + std::to_string(v) + " exceeds the oracle cap of " +
                             std::to_string(limit));
        }
    };
    auto domain = [&](const char* what, int v, int lo, int hi) {
        if (v < lo || v > hi) {
            throw InputError(std::string(what) + " = " + std::to_string(v) + " is outside [" + std::to_string(lo) +
                             ", " + std::to_string(hi) + "] for rule " + to_string(grid.rule));
        }
    };
    if (grid.dx_values.empty() || grid.m_values.empty() || grid.a_values.empty()) {
        throw InputError("verification grid has an empty parameter range");
    }
    for (int d : grid.dx_values) {
        cap("deg_x", d, kOracleMaxDx);
        domain("deg_x", d, 2, kOracleMaxDx);
    }
    for (int m : grid.m_values) {
        cap("determinant size m", m, kOracleMaxDetSize);
        switch (grid.rule) {
        case RuleKind::kDet: domain("m", m, 2, kOracleMaxDetSize); break;
        case RuleKind::kMon1:
        case RuleKind::kMon2:
        case RuleKind::kBin: domain("m", m, 0, 1); break;
        case RuleKind::kMon3: domain("m", m, 1, 1); break;
        }
    }
    for (int a : grid.a_values) {
        cap("exponent a", a, kOracleMaxExponent);
        switch (grid.rule) {
        case RuleKind::kDet: domain("a", a, 0, kOracleMaxExponent); break;
        case RuleKind::kMon1: domain("a", a, 2, kOracleMaxExponent); break;
        case RuleKind::kMon2: domain("a", a, 0, kOracleMaxExponent); break;
        case RuleKind::kMon3: domain("a", a, 1, 1); break;
        case RuleKind::kBin: domain("a", a, 0, 0); break;
        }
    }
}

std::vector<std::pair<RuleApplication, ChartState>> grid_instances(const GridSpec& grid) {
    check_grid(grid);
    std::vector<std::pair<RuleApplication, ChartState>> out;
    for (int dx : grid.dx_values) {
        std::vector<std::string> x;
        for (int i = 1; i <= dx; ++i) x.push_back("E" + std::to_string(i));
        for (int m : grid.m_values) {
            for (int a : grid.a_values) {
                std::map<std::string, int> exps;
                RuleApplication app;
                switch (grid.rule) {
                case RuleKind::kDet:
                    if (a > 0) exps["F1"] = a;
                    app = RuleApplication::det("E1", "E2", m);
                    break;
                case RuleKind::kMon1:
                    exps["F1"] = a;
                    app = RuleApplication::mon1("E1", "E2", "F1");
                    break;
                case RuleKind::kMon2:
                    exps["F1"] = 1;
                    exps["F2"] = 1;
                    if (a > 0) exps["F3"] = a;
                    app = RuleApplication::mon2("E1", "E2", "F1", "F2");
                    break;
                case RuleKind::kMon3:
                    exps["F1"] = 1;
                    app = RuleApplication::mon3("E1", "E2", "F1");
                    break;
                case RuleKind::kBin:
                    if (m == 0) exps["F1"] = 1;
                    app = RuleApplication::bin("E1");
                    break;
                }
                out.emplace_back(std::move(app), make_chart(x, m, std::move(exps)));
            }
        }
    }
    return out;
}

std::vector<VerificationReport> verify_grid(const GridSpec& grid, unsigned threads) {
    const auto instances = grid_instances(grid);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

    std::vector<VerificationReport> out(instances.size());
    if (threads == 1 || instances.size() < 2) {
        for (std::size_t i = 0; i < instances.size(); ++i) out[i] = verify_rule(instances[i].first, instances[i].second);
        return out;
    }

    // Strided partition; every worker writes only its own slots.
    std::vector<std::future<void>> workers;
    const std::size_t n = std::min<std::size_t>(threads, instances.size());
    for (std::size_t w = 0; w < n; ++w) {
        workers.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < instances.size(); i += n) {
                out[i] = verify_rule(instances[i].first, instances[i].second);
            }
        }));
    }
    for (auto& f : workers) f.get();
    return out;
}

std::string format_table(const std::vector<VerificationReport>& reports) {
    std::ostringstream os;
    os << std::left << std::setw(6) << "rule" << std::setw(22) << "chart (dx,dy,dz)" << std::setw(10) << "charts"
       << std::setw(8) << "k" << std::setw(10) << "exp" << std::setw(10) << "m^2-2" << "result\n";
    for (const auto& r : reports) {
        std::string ks;
        for (const auto& c : r.charts) {
            if (!ks.empty()) ks += '/';
            ks += std::to_string(c.k);
        }
        const std::string text = r.rule.kind == RuleKind::kDet
                                     ? std::to_string(r.text_exponent) + (r.text_value_consistent ? "" : "!")
                                     : "-";
        os << std::left << std::setw(6) << to_string(r.rule.kind) << std::setw(22) << to_string(mdeg(r.chart))
           << std::setw(10) << r.charts.size() << std::setw(8) << ks << std::setw(10) << r.measured_exponent
           << std::setw(10) << text << (r.passed ? "pass" : "FAIL") << "\n";
    }
    return os.str();
}

} // namespace dualres
