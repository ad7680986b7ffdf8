#include "dualres_cli/cli.hpp"

#include "dualres/dual_complex.hpp"
#include "dualres/engine.hpp"
#include "dualres/errors.hpp"
#include "dualres/generator.hpp"
#include "dualres/poly_oracle.hpp"
#include "dualres/serialize.hpp"
#include "dualres/snc_model.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace dualres::cli {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

template <typename Range>
std::string join(const Range& values, const std::string& sep) {
    std::ostringstream ss;
    bool first = true;
    for (const auto& v : values) {
        if (!first) ss << sep;
        ss << v;
        first = false;
    }
    return ss.str();
}

struct Options {
    std::string input;
    std::string trace;
    std::string dot;
    std::string ordering;
    std::string policy = "oracle";
    std::size_t ceiling = 10000;
    std::uint64_t seed = 0;
    std::string output;
    std::string rule;
    std::string d_range;
    std::string m_range;
    std::string a_range;
    std::string report;
    unsigned threads = 0;
};

int cmd_dualcomplex(const Options& o, std::ostream& out, std::ostream& err) {
    const std::string text = read_file(o.input);
    DualComplex complex;
    if (looks_like_dual_complex(text)) {
        complex = dual_complex_from_json(text);
    } else {
        const SncVariety snc = snc_from_json(text);
        const auto v = incidence_violations(snc);
        if (!v.empty()) {
            for (const auto& line : v) err << "incidence violation: " << line << "\n";
            return kExitInput;
        }
        complex = dual_complex_of(snc);
    }
    const auto violations = validate(complex);
    if (!violations.empty()) {
        for (const auto& v : violations) err << v.cell << ": " << v.rule << ": " << v.detail << "\n";
        return kExitInput;
    }

    const HomologyReport h = homology(complex);
    const auto counts = complex.cell_counts();
    out << "cells " << (counts.empty() ? std::string("0") : join(counts, "/")) << ", betti "
        << (h.betti.empty() ? std::string("-") : join(h.betti, " "))
        << ", Q-acyclic: " << (is_q_acyclic(complex) ? "yes" : "no") << "\n";
    std::vector<std::string> torsion;
    for (std::size_t k = 0; k < h.torsion.size(); ++k) {
        for (const auto& f : h.torsion[k]) torsion.push_back("H" + std::to_string(k) + " Z/" + f.str());
    }
    out << "torsion: " << (torsion.empty() ? std::string("none") : join(torsion, ", ")) << "\n";
    out << "euler: " << h.euler << "\n";
    if (!o.dot.empty()) {
        write_file_atomic(o.dot, to_dot(complex));
        out << "dot: " << o.dot << "\n";
    }
    return kExitOk;
}

EngineConfig engine_config(const Options& o) {
    EngineConfig c;
    c.ordering.priority = split_list(o.ordering);
    c.policy = parse_exponent_policy(o.policy);
    c.event_ceiling = o.ceiling;
    return c;
}

int cmd_resolve(const Options& o, std::ostream& out) {
    const SeedSpec spec = seed_spec_from_json(read_file(o.input));
    const EngineConfig config = engine_config(o);
    const ResolutionState seed = seed_from_snc(spec);
    const Trace trace = run(seed, config);
    replay(trace);

    std::map<std::string, int> per_phase;
    for (const auto& e : trace.events) ++per_phase[to_string(e.phase)];
    std::map<MultiDegree, std::pair<std::size_t, Integer>> census;
    std::size_t resolved = 0;
    std::size_t certified = 0;
    for (const auto& c : trace.final_state.charts) {
        auto& slot = census[mdeg(c.chart)];
        ++slot.first;
        slot.second += c.multiplicity;
        resolved += is_resolved(c.chart) ? 1 : 0;
        certified += snc_certified(c.chart) ? 1 : 0;
    }

    out << "events: " << trace.events.size() << "\n";
    if (!per_phase.empty()) {
        std::vector<std::string> parts;
        for (const auto& [p, n] : per_phase) parts.push_back(p + " " + std::to_string(n));
        out << "phases: " << join(parts, ", ") << "\n";
    }
    out << "exponent policy: " << to_string(config.policy) << "\n";
    out << "resolved charts: " << resolved << "/" << trace.final_state.charts.size()
        << " (snc-certified dx = 1: " << certified << ")\n";
    for (const auto& [d, slot] : census) {
        out << "  " << to_string(d) << "  descriptors " << slot.first << ", charts " << slot.second.str() << "\n";
    }
    out << "dual complex preserved: " << (trace.final_state.dual == seed.dual ? "yes" : "no") << "\n";
    out << "replay: identical\n";
    if (!o.trace.empty()) {
        write_file_atomic(o.trace, to_json_text(trace));
        out << "trace: " << o.trace << "\n";
    }
    return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
    GridSpec grid = default_grid(parse_rule_kind(o.rule));
    if (!o.d_range.empty()) grid.dx_values = parse_range(o.d_range);
    if (!o.m_range.empty()) grid.m_values = parse_range(o.m_range);
    if (!o.a_range.empty()) grid.a_values = parse_range(o.a_range);
    check_grid(grid);

    const auto reports = verify_grid(grid, o.threads);
    out << format_table(reports);
    const auto failed = std::count_if(reports.begin(), reports.end(), [](const auto& r) { return !r.passed; });
    if (grid.rule == RuleKind::kDet) {
        for (int m : grid.m_values) {
            out << "det m=" << m << ": measured exceptional exponent " << det_exceptional_exponent(m, ExponentPolicy::kSizeMinusTwo)
                << " (m-2); printed formula m^2-2 gives "
                << det_exceptional_exponent(m, ExponentPolicy::kSquareMinusTwo) << "\n";
        }
    }
    out << reports.size() - static_cast<std::size_t>(failed) << "/" << reports.size() << " instances passed\n";
    if (!o.report.empty()) {
        write_file_atomic(o.report, to_json_text(reports));
        out << "report: " << o.report << "\n";
    }
    return failed == 0 ? kExitOk : kExitInvariant;
}

int cmd_gen(const Options& o, std::ostream& out) {
    const std::string text = to_json_text(random_seed_spec(o.seed));
    if (o.output.empty()) {
        out << text;
    } else {
        write_file_atomic(o.output, text);
        out << "seed spec: " << o.output << "\n";
    }
    return kExitOk;
}

int cmd_replay(const Options& o, std::ostream& out) {
    const Trace trace = trace_from_json(read_file(o.trace));
    replay(trace);
    out << "replay: " << trace.events.size() << " events reproduced, final state identical\n";
    return kExitOk;
}

} // namespace

std::vector<int> parse_range(const std::string& text) {
    auto to_int = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw InputError("bad range '" + text + "'");
        }
    };
    std::vector<int> out;
    if (const auto dots = text.find(".."); dots != std::string::npos) {
        const int lo = to_int(text.substr(0, dots));
        const int hi = to_int(text.substr(dots + 2));
        if (hi < lo) throw InputError("empty range '" + text + "'");
        for (int v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    }
    for (const auto& part : split_list(text)) out.push_back(to_int(part));
    if (out.empty()) throw InputError("empty range '" + text + "'");
    return out;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw InputError("cannot write '" + tmp.string() + "'");
        f << contents;
        f.flush();
        if (!f) throw InputError("write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw InputError("cannot move output into '" + path + "': " + ec.message());
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"dualres: chart-level resolution with dual complex bookkeeping"};
    app.require_subcommand(1);
    Options o;

    auto* dc = app.add_subcommand("dualcomplex", "dual complex, homology and Q-acyclicity of an snc or complex file");
    dc->add_option("--input", o.input, "snc or dual complex JSON")->required()->envname("DUALRES_INPUT");
    dc->add_option("--dot", o.dot, "write the 1-skeleton as DOT")->envname("DUALRES_DOT");

    auto* res = app.add_subcommand("resolve", "run the resolution engine on a seed");
    res->add_option("--input", o.input, "seed JSON (snc data plus corank)")->required()->envname("DUALRES_INPUT");
    res->add_option("--trace", o.trace, "write the trace JSON")->envname("DUALRES_TRACE");
    res->add_option("--ordering", o.ordering, "comma-separated ids ranked first")->envname("DUALRES_ORDERING");
    res->add_option("--exponent-policy", o.policy, "DET exceptional exponent: oracle (m-2) or paper (m^2-2)")
        ->check(CLI::IsMember({"oracle", "paper"}))
        ->envname("DUALRES_EXPONENT_POLICY");
    res->add_option("--ceiling", o.ceiling, "event ceiling")
        ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()))
        ->envname("DUALRES_CEILING");

    auto* ver = app.add_subcommand("verify", "check a rule family with the polynomial oracle");
    ver->add_option("--rule", o.rule, "det, mon1, mon2, mon3 or bin")
        ->required()
        ->check(CLI::IsMember({"det", "mon1", "mon2", "mon3", "bin"}));
    ver->add_option("--d", o.d_range, "number of x factors, e.g. 2..4");
    ver->add_option("--m", o.m_range, "determinant size / y factor");
    ver->add_option("--a", o.a_range, "divisor exponent");
    ver->add_option("--threads", o.threads, "worker threads (0 = all cores)");
    ver->add_option("--report", o.report, "write the reports as JSON");

    auto* gen = app.add_subcommand("gen", "random seed spec");
    gen->add_option("--seed", o.seed, "RNG seed")->required()->envname("DUALRES_SEED");
    gen->add_option("--output", o.output, "write to a file instead of stdout");

    auto* rep = app.add_subcommand("replay", "re-run a trace and compare");
    rep->add_option("--trace", o.trace, "trace JSON")->required()->envname("DUALRES_TRACE");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (dc->parsed()) return cmd_dualcomplex(o, out, err);
        if (res->parsed()) return cmd_resolve(o, out);
        if (ver->parsed()) return cmd_verify(o, out);
        if (gen->parsed()) return cmd_gen(o, out);
        if (rep->parsed()) return cmd_replay(o, out);
    } catch (const ScaleError& e) {
        err << "scale limit: " << e.what() << "\n";
        return kExitScale;
    } catch (const InvariantBreach& e) {
        err << "invariant breach: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const Error& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}

} // namespace dualres::cli
