#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "giet/decomposer.hpp"
#include "giet/io.hpp"
#include "giet/orbit.hpp"
#include "giet/rauzy_veech.hpp"

namespace {

constexpr int kExitContradiction = 1;
constexpr int kExitUncertified = 2;
constexpr int kExitOverflow = 3;
constexpr int kExitUsage = 64;

using namespace giet;

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string join(const std::vector<Label>& xs, std::size_t limit = 0) {
    std::string out;
    const std::size_t n = limit == 0 ? xs.size() : std::min(limit, xs.size());
    for (std::size_t i = 0; i < n; ++i) out += xs[i];
    if (n < xs.size()) out += "...";
    return out;
}

std::string heights_string(const Heights& h) {
    std::string out;
    for (const auto& [a, k] : h) {
        if (!out.empty()) out += ' ';
        out += a + "=" + k.get_str();
    }
    return out;
}

MapFile load_checked(const std::string& path) {
    MapFile f = load_map(path);
    const auto violations = validate(f.map);
    if (!violations.empty()) throw std::runtime_error(path + ": invalid map: " + violations.front());
    return f;
}

int cmd_validate(const std::vector<std::string>& files) {
    int rc = 0;
    for (const auto& path : files) {
        const MapFile f = load_map(path);
        const auto violations = validate(f.map);
        if (violations.empty()) {
            std::cout << path << ": ok (d=" << f.map.d() << ", L=" << f.map.length().to_string() << ")";
            if (f.gaps_normalized) std::cout << " [gaps merged]";
            std::cout << "\n";
        } else {
            rc = 1;
            for (const auto& v : violations) std::cout << path << ": " << v << "\n";
        }
    }
    return rc;
}

int cmd_orbit(const std::string& path, const std::string& point, int horizon) {
    const MapFile f = load_checked(path);
    const Scalar x = parse_scalar(point, f.field);
    std::cout << orbit_to_json(classify_orbit(f.map, x, horizon, true));
    return 0;
}

int cmd_induct(const std::string& path, int steps, bool trace) {
    const MapFile f = load_checked(path);
    const RVState st = iterate(f.map, steps);
    if (trace) {
        std::cout << "n\tcase\twinner\tlambda\td\theights\n";
        for (std::size_t i = 0; i < st.steps.size(); ++i) {
            const RVStep& s = st.steps[i];
            const Snapshot& snap = st.history[i + 1];
            std::cout << i + 1 << '\t' << to_string(s.kind) << '\t' << to_string(s.winner) << '\t'
                      << s.lambda1.to_string() << '\t' << snap.map.d() << '\t' << heights_string(snap.heights)
                      << "\n";
        }
    }
    std::cout << "steps: " << st.n << (st.stopped ? " (stopped)" : "") << "\n";
    std::cout << "d: " << st.current.d() << "\n";
    std::cout << "heights: " << heights_string(st.heights) << "\n";
    std::cout << describe(st.current) << "\n";
    return 0;
}

int cmd_rotnum(const std::string& path, int steps, int window) {
    const MapFile f = load_checked(path);
    const RVState st = iterate(f.map, steps);
    const Stability stab = classify_stability(st, window > 0 ? window : default_window(f.map.d()));
    std::cout << "gamma: " << join(st.gamma, 200) << "\n";
    std::cout << "gamma_reduced: " << join(st.gamma_reduced, 200) << "\n";
    std::cout << "stability: " << to_string(stab.kind) << (stab.certified ? " (certified)" : " (heuristic)") << "\n";
    if (stab.kind == Stability::Kind::Stable) {
        std::cout << "A_inf: {";
        bool first = true;
        for (const auto& a : stab.a_inf) {
            std::cout << (first ? "" : ", ") << a;
            first = false;
        }
        std::cout << "}\n";
    }
    const Completeness c = inf_complete(st, stab);
    std::cout << "inf_complete: "
              << (c.kind == Completeness::Kind::Yes  ? "yes"
                  : c.kind == Completeness::Kind::No ? "no"
                                                     : "undecided")
              << (c.certified ? " (certified)" : "");
    if (!c.missing.empty()) {
        std::cout << " missing {";
        bool first = true;
        for (const auto& a : c.missing) {
            std::cout << (first ? "" : ", ") << a;
            first = false;
        }
        std::cout << "}";
    }
    std::cout << "\n";
    if (stab.certificate) {
        std::cout << "certificate: preperiod " << stab.certificate->preperiod << ", period "
                  << stab.certificate->period << "\n";
    } else {
        std::cout << "certificate: none\n";
    }
    return 0;
}

int cmd_decompose(const std::string& path, int window, int max_steps, int samples, int horizon,
                  const std::string& out) {
    const MapFile f = load_checked(path);
    DecompositionReport rep = decompose(f.map, window, max_steps);
    if (samples > 0) rep.validation = cross_validate(rep, samples, horizon);
    write_output(out, report_to_json(rep));
    if (!out.empty() && out != "-") {
        std::cerr << "p=" << rep.p << " q=" << rep.q << " transition pieces=" << rep.transition.size()
                  << (rep.certified ? " certified" : " uncertified") << "\n";
    }
    if (rep.validation && !rep.validation->clean()) {
        for (const auto& c : rep.validation->contradictions) std::cerr << "contradiction: " << c << "\n";
        return kExitContradiction;
    }
    return rep.certified ? 0 : kExitUncertified;
}

int cmd_render(const std::string& path, const std::string& report_path, const std::string& out) {
    const MapFile f = load_checked(path);
    std::optional<DecompositionReport> rep;
    if (!report_path.empty()) rep = load_report(report_path);
    write_output(out, render_svg(f.map, rep ? &*rep : nullptr, f.colors));
    return 0;
}

int cmd_bounds(const std::string& path) {
    const DecompositionReport rep = load_report(path);
    const BoundCheck check = check_bounds(rep);
    const Bounds b = compute_bounds(rep);
    std::cout << "d=" << rep.input.d() << " p=" << rep.p << " q=" << rep.q << "\n";
    std::cout << "weak   q <= floor((d-p)/2): " << b.quasiminimal_count << " <= " << b.quasiminimal_bound << "  "
              << (check.weak_ok ? "ok" : "FAILED") << "\n";
    std::cout << "strict q <  floor((d-p)/2): " << b.quasiminimal_count << " < " << b.quasiminimal_bound << "  "
              << (check.strict_ok ? "holds" : "does not hold (recorded)") << "\n";
    std::cout << "ergodic: genus bound " << b.genus_bound << " <= sum floor(d_i/2) = " << b.ergodic_bound << "  "
              << (check.ergodic_ok ? "ok" : "FAILED") << "\n";
    for (const auto& n : check.notes) std::cout << "note: " << n << "\n";
    return check.weak_ok && check.ergodic_ok ? 0 : kExitContradiction;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* cap = std::getenv("GIET_MAX_DENOM_BITS")) {
        char* end = nullptr;
        const unsigned long bits = std::strtoul(cap, &end, 10);
        if (end == cap || *end != '\0') {
            std::cerr << "GIET_MAX_DENOM_BITS must be a nonnegative integer\n";
            return kExitUsage;
        }
        set_max_denominator_bits(bits);
    }

    CLI::App app{"Exact g-GIET induction and dynamical decomposition"};
    app.require_subcommand(1);

    std::vector<std::string> files;
    std::string file, point, out, report_path;
    int horizon = kDefaultHorizon, steps = 100, window = 0, max_steps = kDefaultMaxSteps, samples = 30;
    bool trace = false;

    auto* validate_cmd = app.add_subcommand("validate", "check map invariants");
    validate_cmd->add_option("FILE", files, "map files")->required()->check(CLI::ExistingFile);

    auto* orbit_cmd = app.add_subcommand("orbit", "classify the orbit of a point");
    orbit_cmd->add_option("FILE", file)->required()->check(CLI::ExistingFile);
    orbit_cmd->add_option("--point", point, "seed as \"p/q\" or {\"a\":..,\"b\":..,\"d\":..}")->required();
    orbit_cmd->add_option("--horizon", horizon)->check(CLI::PositiveNumber);

    auto* induct_cmd = app.add_subcommand("induct", "run the induction");
    induct_cmd->add_option("FILE", file)->required()->check(CLI::ExistingFile);
    induct_cmd->add_option("--steps", steps)->check(CLI::NonNegativeNumber);
    induct_cmd->add_flag("--trace", trace, "print every step");

    auto* rotnum_cmd = app.add_subcommand("rotnum", "winner streams and completeness");
    rotnum_cmd->add_option("FILE", file)->required()->check(CLI::ExistingFile);
    rotnum_cmd->add_option("--steps", steps)->check(CLI::NonNegativeNumber);
    rotnum_cmd->add_option("--window", window, "0 selects 8*d");

    auto* decompose_cmd = app.add_subcommand("decompose", "transition and recurrence domains");
    decompose_cmd->add_option("FILE", file)->required()->check(CLI::ExistingFile);
    decompose_cmd->add_option("--window", window, "0 selects 8*d");
    decompose_cmd->add_option("--max-steps", max_steps)->check(CLI::PositiveNumber);
    decompose_cmd->add_option("--validate-samples", samples, "0 skips cross-validation")
        ->check(CLI::NonNegativeNumber);
    decompose_cmd->add_option("--horizon", horizon)->check(CLI::PositiveNumber);
    decompose_cmd->add_option("-o,--output", out, "report path, stdout when omitted");

    auto* render_cmd = app.add_subcommand("render", "two-line SVG diagram");
    render_cmd->add_option("FILE", file)->required()->check(CLI::ExistingFile);
    render_cmd->add_option("--report", report_path)->check(CLI::ExistingFile);
    render_cmd->add_option("-o,--output", out, "SVG path, stdout when omitted");

    auto* bounds_cmd = app.add_subcommand("bounds", "counting bounds of a report");
    bounds_cmd->add_option("REPORT", file)->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*validate_cmd) return cmd_validate(files);
        if (*orbit_cmd) return cmd_orbit(file, point, horizon);
        if (*induct_cmd) return cmd_induct(file, steps, trace);
        if (*rotnum_cmd) return cmd_rotnum(file, steps, window);
        if (*decompose_cmd) return cmd_decompose(file, window, max_steps, samples, horizon, out);
        if (*render_cmd) return cmd_render(file, report_path, out);
        if (*bounds_cmd) return cmd_bounds(file);
    } catch (const DenominatorOverflow& e) {
        std::cerr << "giet: " << e.what() << "\n";
        return kExitOverflow;
    } catch (const ParseError& e) {
        std::cerr << "giet: parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "giet: " << e.what() << "\n";
        return kExitContradiction;
    }
    return kExitUsage;
}
