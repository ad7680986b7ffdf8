#include "dualres/serialize.hpp"

#include "dualres/errors.hpp"

#include <json.hpp>

namespace dualres {

using nlohmann::json;

namespace {

constexpr int kIndent = 2;

std::string dump(const json& j) { return j.dump(kIndent) + "\n"; }

template <typename F>
auto parse_with(std::string_view text, const char* what, F&& build) {
    try {
        return build(json::parse(text));
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed ") + what + " JSON: " + e.what());
    }
}

std::string integer_text(const Integer& v) { return v.str(); }

Integer integer_of(const json& j) {
    if (j.is_number_integer()) return Integer(j.get<long long>());
    const auto s = j.get<std::string>();
    try {
        return Integer(s);
    } catch (const std::exception&) {
        throw InputError("not an integer: '" + s + "'");
    }
}

// ---- dual complex ----

json to_j(const Cell& c) {
    json j{{"id", c.id}, {"dim", c.dim}, {"facets", c.facets}};
    if (c.label) j["label"] = *c.label;
    return j;
}

json to_j(const DualComplex& d) {
    json cells = json::array();
    for (const auto& c : d.cells()) cells.push_back(to_j(c));
    return json{{"cells", cells}};
}

DualComplex complex_of(const json& j) {
    DualComplex d;
    for (const auto& c : j.at("cells")) {
        Cell cell;
        cell.id = c.at("id").get<std::string>();
        cell.dim = c.at("dim").get<int>();
        cell.facets = c.value("facets", std::vector<std::string>{});
        if (c.contains("label")) cell.label = c.at("label").get<std::vector<std::string>>();
        d.add(std::move(cell));
    }
    return d;
}

// ---- snc ----

json to_j(const SncVariety& snc) {
    json strata = json::array();
    for (const auto& s : snc.strata) {
        strata.push_back({{"id", s.id}, {"indices", s.indices}, {"parents", s.parents}});
    }
    return json{{"components", snc.components}, {"strata", strata}};
}

SncVariety snc_of(const json& j) {
    SncVariety snc;
    snc.components = j.at("components").get<std::vector<std::string>>();
    for (const auto& s : j.at("strata")) {
        Stratum st;
        st.id = s.at("id").get<std::string>();
        st.indices = s.at("indices").get<std::vector<std::string>>();
        st.parents = s.value("parents", std::map<std::string, std::string>{});
        snc.strata.push_back(std::move(st));
    }
    return snc;
}

json to_j(const SeedSpec& seed) {
    json j = to_j(seed.snc);
    j["corank"] = seed.corank;
    j["divisors"] = seed.divisors;
    j["incidence"] = seed.incidence;
    return j;
}

SeedSpec seed_of(const json& j) {
    SeedSpec seed;
    seed.snc = snc_of(j);
    seed.corank = j.value("corank", std::map<std::string, int>{});
    seed.divisors = j.value("divisors", std::map<std::string, int>{});
    seed.incidence = j.value("incidence", std::map<std::string, std::vector<std::string>>{});
    return seed;
}

// ---- charts and rules ----

json to_j(const ChartState& c) { return json{{"x", c.x}, {"m", c.m}, {"a", c.a}}; }

ChartState chart_of(const json& j) {
    ChartState c;
    c.x = j.at("x").get<std::vector<std::string>>();
    c.m = j.at("m").get<int>();
    c.a = j.value("a", std::map<std::string, int>{});
    return c;
}

json to_j(const MultiDegree& d) { return json::array({d.dx, d.dy, d.dz}); }

MultiDegree mdeg_of(const json& j) {
    if (!j.is_array() || j.size() != 3) throw InputError("mdeg must be a 3-element array");
    return {j[0].get<int>(), j[1].get<int>(), j[2].get<int>()};
}

json to_j(const RuleApplication& r) {
    json j{{"rule", to_string(r.kind)}, {"i1", r.i1}};
    if (!r.i2.empty()) j["i2"] = r.i2;
    if (!r.j1.empty()) j["j1"] = r.j1;
    if (!r.j2.empty()) j["j2"] = r.j2;
    if (r.kind == RuleKind::kDet) j["det_size"] = r.det_size;
    return j;
}

RuleApplication rule_of(const json& j) {
    RuleApplication r;
    r.kind = parse_rule_kind(j.at("rule").get<std::string>());
    r.i1 = j.at("i1").get<std::string>();
    r.i2 = j.value("i2", std::string{});
    r.j1 = j.value("j1", std::string{});
    r.j2 = j.value("j2", std::string{});
    r.det_size = j.value("det_size", 0);
    return r;
}

// ---- engine ----

json to_j(const BlowupEvent& e) {
    json children = json::array();
    for (const auto& c : e.children) {
        children.push_back({{"id", c.id},
                            {"parent", c.parent},
                            {"chart_type", c.chart_type},
                            {"family_size", c.family_size},
                            {"multiplicity", integer_text(c.multiplicity)}});
    }
    json certs = json::array();
    for (const auto& c : e.certificates) {
        certs.push_back({{"parent", c.parent},
                         {"child", c.child},
                         {"parent_mdeg", to_j(c.parent_mdeg)},
                         {"child_mdeg", to_j(c.child_mdeg)}});
    }
    json j{{"index", e.index},     {"phase", to_string(e.phase)}, {"center", to_j(e.center)},
           {"parents", e.parents}, {"children", children},        {"lex_certificates", certs}};
    if (e.new_divisor) {
        j["new_divisor"] = {{"id", e.new_divisor->id},
                            {"coefficient", e.new_divisor->coefficient},
                            {"registered", e.new_divisor->registered}};
    }
    return j;
}

BlowupEvent event_of(const json& j) {
    BlowupEvent e;
    e.index = j.at("index").get<std::size_t>();
    e.phase = parse_phase(j.at("phase").get<std::string>());
    e.center = rule_of(j.at("center"));
    e.parents = j.at("parents").get<std::vector<std::string>>();
    for (const auto& c : j.at("children")) {
        e.children.push_back({c.at("id").get<std::string>(), c.at("parent").get<std::string>(),
                              c.at("chart_type").get<std::string>(), c.at("family_size").get<int>(),
                              integer_of(c.at("multiplicity"))});
    }
    for (const auto& c : j.at("lex_certificates")) {
        e.certificates.push_back({c.at("parent").get<std::string>(), c.at("child").get<std::string>(),
                                  mdeg_of(c.at("parent_mdeg")), mdeg_of(c.at("child_mdeg"))});
    }
    if (j.contains("new_divisor")) {
        const auto& d = j.at("new_divisor");
        e.new_divisor = NewDivisor{d.at("id").get<std::string>(), d.at("coefficient").get<int>(),
                                   d.at("registered").get<bool>()};
    }
    return e;
}

json to_j(const ResolutionState& s) {
    json registry = json::array();
    for (const auto& d : s.registry.entries()) {
        json r{{"id", d.id}, {"coefficient", d.coefficient}};
        if (d.birth_event) r["birth_event"] = *d.birth_event;
        registry.push_back(std::move(r));
    }
    json charts = json::array();
    for (const auto& c : s.charts) {
        charts.push_back({{"id", c.id},
                          {"stratum", c.stratum},
                          {"chart", to_j(c.chart)},
                          {"multiplicity", integer_text(c.multiplicity)}});
    }
    json trace = json::array();
    for (const auto& e : s.trace) trace.push_back(to_j(e));
    return json{{"dual", to_j(s.dual)},
                {"registry", registry},
                {"charts", charts},
                {"trace", trace},
                {"next_chart", s.next_chart}};
}

ResolutionState state_of(const json& j) {
    ResolutionState s;
    s.dual = complex_of(j.at("dual"));
    for (const auto& d : j.at("registry")) {
        DivisorRecord r{d.at("id").get<std::string>(), d.at("coefficient").get<int>(), std::nullopt};
        if (d.contains("birth_event")) r.birth_event = d.at("birth_event").get<std::size_t>();
        s.registry.add(std::move(r));
    }
    for (const auto& c : j.at("charts")) {
        s.charts.push_back({c.at("id").get<std::string>(), c.at("stratum").get<std::string>(),
                            chart_of(c.at("chart")), integer_of(c.at("multiplicity"))});
    }
    for (const auto& e : j.value("trace", json::array())) s.trace.push_back(event_of(e));
    s.next_chart = j.at("next_chart").get<std::size_t>();
    return s;
}

json to_j(const EngineConfig& c) {
    return json{{"ordering", c.ordering.priority},
                {"exponent_policy", to_string(c.policy)},
                {"event_ceiling", c.event_ceiling}};
}

EngineConfig config_of(const json& j) {
    EngineConfig c;
    c.ordering.priority = j.value("ordering", std::vector<std::string>{});
    c.policy = parse_exponent_policy(j.value("exponent_policy", std::string("oracle")));
    c.event_ceiling = j.value("event_ceiling", c.event_ceiling);
    if (c.event_ceiling < 1) throw InputError("event_ceiling must be >= 1");
    return c;
}

json trace_header(const EngineConfig& c) {
    return json{{"format", "dualres-trace"},
                {"version", 1},
                {"exponent_policy", to_string(c.policy)},
                {"exceptional_exponent",
                 {{"printed_value", "m^2-2"},
                  {"measured_value", "m-2"},
                  {"note", "direct substitution into the DET charts leaves the exceptional divisor with "
                           "coefficient m-2; the printed formula m^2-2 disagrees for every m >= 2 and is "
                           "available as the 'paper' policy"}}},
                {"modeling_assumptions", trace_assumptions()}};
}

// ---- reports ----

json to_j(const HomologyReport& h) {
    json torsion = json::array();
    for (const auto& t : h.torsion) {
        json row = json::array();
        for (const auto& v : t) row.push_back(integer_text(v));
        torsion.push_back(std::move(row));
    }
    return json{{"betti", h.betti}, {"torsion", torsion}, {"euler", h.euler}};
}

HomologyReport homology_of(const json& j) {
    HomologyReport h;
    h.betti = j.at("betti").get<std::vector<std::size_t>>();
    for (const auto& row : j.at("torsion")) {
        std::vector<Integer> t;
        for (const auto& v : row) t.push_back(integer_of(v));
        h.torsion.push_back(std::move(t));
    }
    h.euler = j.at("euler").get<long>();
    return h;
}

json to_j(const ChartVerification& c) {
    return json{{"chart_type", c.chart_type},
                {"exceptional", c.exceptional},
                {"k", c.k},
                {"center_order", c.center_order},
                {"measured_exponent", c.measured_exponent},
                {"predicted_exponent", c.predicted_exponent},
                {"remultiplication", c.remultiplication},
                {"matches_child", c.matches_child},
                {"preimage", c.preimage},
                {"passed", c.passed},
                {"strict_transform", c.strict_transform},
                {"expected", c.expected}};
}

ChartVerification chart_verification_of(const json& j) {
    ChartVerification c;
    c.chart_type = j.at("chart_type").get<std::string>();
    c.exceptional = j.at("exceptional").get<std::string>();
    c.k = j.at("k").get<unsigned>();
    c.center_order = j.at("center_order").get<unsigned>();
    c.measured_exponent = j.at("measured_exponent").get<int>();
    c.predicted_exponent = j.at("predicted_exponent").get<int>();
    c.remultiplication = j.at("remultiplication").get<bool>();
    c.matches_child = j.at("matches_child").get<bool>();
    c.preimage = j.at("preimage").get<bool>();
    c.passed = j.at("passed").get<bool>();
    c.strict_transform = j.at("strict_transform").get<std::string>();
    c.expected = j.at("expected").get<std::string>();
    return c;
}

json to_j(const VerificationReport& r) {
    json charts = json::array();
    for (const auto& c : r.charts) charts.push_back(to_j(c));
    return json{{"rule", to_j(r.rule)},
                {"chart", to_j(r.chart)},
                {"charts", charts},
                {"measured_exponent", r.measured_exponent},
                {"text_exponent", r.text_exponent},
                {"text_value_consistent", r.text_value_consistent},
                {"passed", r.passed}};
}

VerificationReport report_of(const json& j) {
    VerificationReport r;
    r.rule = rule_of(j.at("rule"));
    r.chart = chart_of(j.at("chart"));
    for (const auto& c : j.at("charts")) r.charts.push_back(chart_verification_of(c));
    r.measured_exponent = j.at("measured_exponent").get<int>();
    r.text_exponent = j.at("text_exponent").get<int>();
    r.text_value_consistent = j.at("text_value_consistent").get<bool>();
    r.passed = j.at("passed").get<bool>();
    return r;
}

} // namespace

std::vector<std::string> trace_assumptions() {
    return {
        "one chart descriptor stands for every permutation-equivalent chart of its family; multiplicity counts them",
        "charts off the center of an event persist unchanged",
        "centers over distinct component pairs act on disjoint chart sets, so they commute by construction",
        "transversality of non-stratum centers is asserted, not computed",
        "an exceptional divisor with coefficient 0 is recorded in the event but not registered",
    };
}

std::string to_json_text(const DualComplex& v) { return dump(to_j(v)); }
std::string to_json_text(const SncVariety& v) { return dump(to_j(v)); }
std::string to_json_text(const SeedSpec& v) { return dump(to_j(v)); }
std::string to_json_text(const ChartState& v) { return dump(to_j(v)); }
std::string to_json_text(const RuleApplication& v) { return dump(to_j(v)); }
std::string to_json_text(const ResolutionState& v) { return dump(to_j(v)); }
std::string to_json_text(const BlowupEvent& v) { return dump(to_j(v)); }
std::string to_json_text(const EngineConfig& v) { return dump(to_j(v)); }
std::string to_json_text(const HomologyReport& v) { return dump(to_j(v)); }
std::string to_json_text(const VerificationReport& v) { return dump(to_j(v)); }

std::string to_json_text(const std::vector<VerificationReport>& reports) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(to_j(r));
    return dump(arr);
}

std::string to_json_text(const Trace& t) {
    json events = json::array();
    for (const auto& e : t.events) events.push_back(to_j(e));
    return dump(json{{"header", trace_header(t.config)},
                     {"config", to_j(t.config)},
                     {"seed", to_j(t.seed)},
                     {"events", events},
                     {"final", to_j(t.final_state)}});
}

DualComplex dual_complex_from_json(std::string_view text) {
    return parse_with(text, "dual complex", complex_of);
}
SncVariety snc_from_json(std::string_view text) { return parse_with(text, "snc", snc_of); }
SeedSpec seed_spec_from_json(std::string_view text) { return parse_with(text, "seed", seed_of); }
ChartState chart_from_json(std::string_view text) { return parse_with(text, "chart", chart_of); }
RuleApplication rule_from_json(std::string_view text) { return parse_with(text, "rule", rule_of); }
ResolutionState state_from_json(std::string_view text) { return parse_with(text, "state", state_of); }
BlowupEvent event_from_json(std::string_view text) { return parse_with(text, "event", event_of); }
EngineConfig config_from_json(std::string_view text) { return parse_with(text, "config", config_of); }
HomologyReport homology_report_from_json(std::string_view text) {
    return parse_with(text, "homology report", homology_of);
}
VerificationReport verification_report_from_json(std::string_view text) {
    return parse_with(text, "verification report", report_of);
}

std::vector<VerificationReport> verification_reports_from_json(std::string_view text) {
    return parse_with(text, "verification report", [](const json& j) {
        std::vector<VerificationReport> out;
        for (const auto& r : j) out.push_back(report_of(r));
        return out;
    });
}

Trace trace_from_json(std::string_view text) {
    return parse_with(text, "trace", [](const json& j) {
        if (j.contains("header") && j.at("header").value("format", std::string{}) != "dualres-trace") {
            throw InputError("trace header has an unknown format");
        }
        Trace t;
        t.config = config_of(j.at("config"));
        t.seed = state_of(j.at("seed"));
        for (const auto& e : j.at("events")) t.events.push_back(event_of(e));
        t.final_state = state_of(j.at("final"));
        return t;
    });
}

bool looks_like_dual_complex(std::string_view text) {
    try {
        const auto j = json::parse(text);
        return j.is_object() && j.contains("cells");
    } catch (const json::exception&) {
        return false;
    }
}

} // namespace dualres
