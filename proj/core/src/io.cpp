#include "giet/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace giet {

using json = nlohmann::ordered_json;

ParseError::ParseError(const std::string& what, int l, int c) : std::runtime_error(what), line(l), column(c) {}

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
    throw ParseError((path.empty() ? std::string("/") : path) + ": " + what, 0, 0);
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        int line = 1, col = 1;
        const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < upto; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what(), line,
                         col);
    }
}

void only_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) schema_error(path, "expected an object");
    for (const auto& [k, v] : j.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || k == a;
        if (!ok) schema_error(path, "unknown key \"" + k + "\"");
    }
}

const json& need(const json& j, const std::string& path, const char* key) {
    if (!j.is_object() || !j.contains(key)) schema_error(path, std::string("missing key \"") + key + "\"");
    return j.at(key);
}

Scalar scalar_from(const json& j, const std::string& path, long field) {
    try {
        if (j.is_string()) return Scalar::parse_rational(j.get<std::string>());
        if (j.is_number_integer()) return Scalar(j.get<long>());
        if (j.is_number()) schema_error(path, "decimal numbers are not exact; write \"p/q\"");
        if (j.is_object()) {
            only_keys(j, path, {"a", "b", "d"});
            const long d = need(j, path, "d").get<long>();
            if (field == 0) schema_error(path, "quadratic scalar needs a declared field {\"d\": n}");
            if (d != field) {
                schema_error(path, "field mismatch: sqrt(" + std::to_string(d) + ") in a map over sqrt(" +
                                       std::to_string(field) + ")");
            }
            const Scalar a = j.contains("a") ? scalar_from(j.at("a"), path + "/a", 0) : Scalar();
            const Scalar b = scalar_from(need(j, path, "b"), path + "/b", 0);
            return Scalar::quadratic(a.rational_part(), b.rational_part(), d);
        }
    } catch (const ParseError&) {
        throw;
    } catch (const DenominatorOverflow&) {
        throw;
    } catch (const json::exception& e) {
        schema_error(path, e.what());
    } catch (const std::exception& e) {
        schema_error(path, e.what());
    }
    schema_error(path, "expected a scalar");
}

json scalar_json(const Scalar& s) {
    if (s.is_rational()) return Scalar(s.rational_part()).to_string();
    json j;
    j["a"] = Scalar(s.rational_part()).to_string();
    j["b"] = Scalar(s.irrational_part()).to_string();
    j["d"] = s.field();
    return j;
}

long field_of(const json& j, const std::string& path) {
    if (!j.contains("field")) return 0;
    const json& f = j.at("field");
    only_keys(f, path + "/field", {"d"});
    const json& d = need(f, path + "/field", "d");
    if (!d.is_number_integer()) schema_error(path + "/field/d", "expected an integer");
    const long v = d.get<long>();
    if (!is_square_free(v)) schema_error(path + "/field/d", "radicand must be a square-free integer >= 2");
    return v;
}

struct ParsedMap {
    GGiet map;
    long field;
    std::map<Label, std::string> colors;
    bool normalized;
};

ParsedMap map_from(const json& j, const std::string& path) {
    only_keys(j, path, {"field", "top", "bottom", "slopes", "colors"});
    const long field = field_of(j, path);
    bool normalized = false;
    auto layout = [&](const char* side) {
        const std::string p = path + "/" + side;
        const json& arr = need(j, path, side);
        if (!arr.is_array()) schema_error(p, "expected an array of items");
        std::vector<Item> items;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string ip = p + "/" + std::to_string(i);
            const json& it = arr[i];
            if (!it.is_object()) schema_error(ip, "expected an item object");
            if (it.contains("gap")) {
                only_keys(it, ip, {"gap"});
                items.push_back(Item::make_gap(scalar_from(it.at("gap"), ip + "/gap", field)));
            } else {
                only_keys(it, ip, {"label", "length"});
                const json& lab = need(it, ip, "label");
                if (!lab.is_string()) schema_error(ip + "/label", "expected a string");
                items.push_back(Item::interval(lab.get<std::string>(), scalar_from(need(it, ip, "length"), ip + "/length", field)));
            }
        }
        Layout l(items);
        if (l.items().size() != items.size()) normalized = true;
        return l;
    };
    Layout top = layout("top");
    Layout bottom = layout("bottom");
    std::map<Label, Scalar> slopes;
    if (j.contains("slopes")) {
        const json& s = j.at("slopes");
        if (!s.is_object()) schema_error(path + "/slopes", "expected an object");
        for (const auto& [k, v] : s.items()) slopes.emplace(k, scalar_from(v, path + "/slopes/" + k, field));
    }
    for (const auto& a : top.labels()) slopes.emplace(a, Scalar(1));
    std::map<Label, std::string> colors;
    if (j.contains("colors")) {
        const json& c = j.at("colors");
        if (!c.is_object()) schema_error(path + "/colors", "expected an object");
        for (const auto& [k, v] : c.items()) {
            if (!v.is_string()) schema_error(path + "/colors/" + k, "expected a string");
            colors.emplace(k, v.get<std::string>());
        }
    }
    return {GGiet(std::move(top), std::move(bottom), std::move(slopes)), field, std::move(colors), normalized};
}

json map_json(const GGiet& m, const std::map<Label, std::string>& colors = {}) {
    json j;
    if (const long f = m.field(); f != 0) j["field"] = {{"d", f}};
    auto layout = [](const Layout& l) {
        json arr = json::array();
        for (const auto& it : l.items()) {
            if (it.gap) {
                arr.push_back({{"gap", scalar_json(it.length)}});
            } else {
                arr.push_back({{"label", it.label}, {"length", scalar_json(it.length)}});
            }
        }
        return arr;
    };
    j["top"] = layout(m.top());
    j["bottom"] = layout(m.bottom());
    json slopes = json::object();
    for (const auto& [a, s] : m.slopes()) slopes[a] = scalar_json(s);
    j["slopes"] = slopes;
    if (!colors.empty()) {
        json c = json::object();
        for (const auto& [a, v] : colors) c[a] = v;
        j["colors"] = c;
    }
    return j;
}

json intervals_json(const std::vector<Interval>& ivs) {
    json arr = json::array();
    for (const auto& iv : ivs) arr.push_back(json::array({scalar_json(iv.lo), scalar_json(iv.hi)}));
    return arr;
}

std::vector<Interval> intervals_from(const json& j, const std::string& path, long field) {
    if (!j.is_array()) schema_error(path, "expected an array of intervals");
    std::vector<Interval> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = path + "/" + std::to_string(i);
        if (!j[i].is_array() || j[i].size() != 2) schema_error(p, "expected [lo, hi]");
        out.push_back({scalar_from(j[i][0], p + "/0", field), scalar_from(j[i][1], p + "/1", field)});
    }
    return out;
}

json heights_json(const Heights& h) {
    json j = json::object();
    for (const auto& [a, v] : h) {
        if (v.fits_slong_p()) {
            j[a] = v.get_si();
        } else {
            j[a] = v.get_str();
        }
    }
    return j;
}

Heights heights_from(const json& j, const std::string& path) {
    if (!j.is_object()) schema_error(path, "expected an object");
    Heights h;
    for (const auto& [a, v] : j.items()) {
        if (v.is_number_integer()) {
            h[a] = Height(v.get<long>());
        } else if (v.is_string()) {
            h[a] = Height(v.get<std::string>());
        } else {
            schema_error(path + "/" + a, "expected an integer");
        }
    }
    return h;
}

json tokens_json(const std::vector<std::optional<Label>>& seq) {
    json arr = json::array();
    for (const auto& t : seq) arr.push_back(t ? json(*t) : json(nullptr));
    return arr;
}

CombData comb_from(const json& j, const std::string& path) {
    only_keys(j, path, {"top", "bottom"});
    CombData c;
    auto side = [&](const char* key, std::vector<std::optional<Label>>& seq, std::map<Label, int>& pi) {
        const json& arr = need(j, path, key);
        int rank = 0;
        for (const auto& t : arr) {
            if (t.is_null()) {
                seq.push_back(std::nullopt);
            } else {
                seq.push_back(t.get<std::string>());
                pi[t.get<std::string>()] = ++rank;
            }
        }
    };
    side("top", c.extended_top, c.pi_top);
    side("bottom", c.extended_bottom, c.pi_bottom);
    return c;
}

std::string completeness_name(Completeness::Kind k) {
    switch (k) {
        case Completeness::Kind::Yes: return "yes";
        case Completeness::Kind::No: return "no";
        case Completeness::Kind::Undecided: return "undecided";
    }
    return "?";
}

json domain_json(const DomainReport& d) {
    json j;
    j["kind"] = d.kind == DomainReport::Kind::Periodic ? "periodic" : "quasiminimal";
    if (d.kind == DomainReport::Kind::Periodic) {
        j["period"] = d.period;
        j["anchor"] = scalar_json(d.anchor);
        j["at_endpoint"] = d.at_endpoint;
    } else {
        j["d_i"] = d.d_i;
        json rot;
        rot["comb"] = {{"top", tokens_json(d.comb.extended_top)}, {"bottom", tokens_json(d.comb.extended_bottom)}};
        rot["gamma_prefix"] = d.gamma_prefix;
        if (d.certificate) {
            rot["certificate"] = {{"preperiod", d.certificate->preperiod},
                                  {"period", d.certificate->period},
                                  {"witness", d.certificate->witness}};
        } else {
            rot["certificate"] = nullptr;
        }
        j["rotation"] = rot;
        j["inf_complete"] = {{"verdict", completeness_name(d.inf_complete.kind)},
                             {"certified", d.inf_complete.certified},
                             {"missing", d.inf_complete.missing}};
        j["wandering_direction"] = to_string(d.wandering);
    }
    j["region"] = intervals_json(d.region);
    j["base"] = map_json(d.base);
    j["heights"] = heights_json(d.heights);
    j["certified"] = d.certified;
    j["induction_steps"] = d.induction_steps;
    return j;
}

DomainReport domain_from(const json& j, const std::string& path, long field) {
    DomainReport d;
    const std::string kind = need(j, path, "kind").get<std::string>();
    if (kind == "periodic") {
        d.kind = DomainReport::Kind::Periodic;
        d.period = need(j, path, "period").get<long>();
        d.anchor = scalar_from(need(j, path, "anchor"), path + "/anchor", field);
        d.at_endpoint = need(j, path, "at_endpoint").get<bool>();
        d.d_i = 1;
    } else if (kind == "quasiminimal") {
        d.kind = DomainReport::Kind::Quasiminimal;
        d.d_i = need(j, path, "d_i").get<int>();
        const json& rot = need(j, path, "rotation");
        d.comb = comb_from(need(rot, path + "/rotation", "comb"), path + "/rotation/comb");
        d.gamma_prefix = need(rot, path + "/rotation", "gamma_prefix").get<std::vector<Label>>();
        const json& cert = need(rot, path + "/rotation", "certificate");
        if (!cert.is_null()) {
            d.certificate = PeriodicityCertificate{cert.at("preperiod").get<int>(), cert.at("period").get<int>(),
                                                   cert.at("witness").get<std::string>()};
        }
        const json& ic = need(j, path, "inf_complete");
        const std::string verdict = ic.at("verdict").get<std::string>();
        d.inf_complete.kind = verdict == "yes" ? Completeness::Kind::Yes
                              : verdict == "no" ? Completeness::Kind::No
                                                : Completeness::Kind::Undecided;
        d.inf_complete.certified = ic.at("certified").get<bool>();
        d.inf_complete.missing = ic.at("missing").get<std::set<Label>>();
        const std::string w = need(j, path, "wandering_direction").get<std::string>();
        for (auto k : {WanderingDirection::ForwardOnly, WanderingDirection::BackwardOnly, WanderingDirection::Both,
                       WanderingDirection::NoneDetected}) {
            if (to_string(k) == w) d.wandering = k;
        }
    } else {
        schema_error(path + "/kind", "unknown domain kind \"" + kind + "\"");
    }
    d.region = intervals_from(need(j, path, "region"), path + "/region", field);
    d.base = map_from(need(j, path, "base"), path + "/base").map;
    d.heights = heights_from(need(j, path, "heights"), path + "/heights");
    d.certified = need(j, path, "certified").get<bool>();
    d.induction_steps = need(j, path, "induction_steps").get<int>();
    return d;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

MapFile parse_map(const std::string& text) {
    const json j = parse_json(text);
    ParsedMap p = map_from(j, "");
    return {std::move(p.map), p.field, std::move(p.colors), p.normalized};
}

MapFile load_map(const std::string& path) { return parse_map(read_file(path)); }

std::string map_to_json(const GGiet& m, const std::map<Label, std::string>& colors) {
    return map_json(m, colors).dump(2) + "\n";
}

std::string scalar_to_json(const Scalar& s) { return scalar_json(s).dump(); }

Scalar parse_scalar(const std::string& text, long field) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error&) {
        j = text;
    }
    return scalar_from(j, "", field);
}

std::string report_to_json(const DecompositionReport& rep) {
    json j;
    j["input"] = map_json(rep.input);
    j["settings"] = {{"window", rep.window}, {"max_steps", rep.max_steps}};
    j["transition"] = intervals_json(rep.transition);
    json domains = json::array();
    for (const auto& d : rep.domains) domains.push_back(domain_json(d));
    j["domains"] = domains;
    json undecided = json::array();
    for (const auto& u : rep.undecided) {
        undecided.push_back({{"map", map_json(u.map)}, {"heights", heights_json(u.heights)}, {"region", intervals_json(u.region)}});
    }
    j["undecided"] = undecided;
    j["p"] = rep.p;
    j["q"] = rep.q;
    j["bounds"] = {{"quasiminimal_count", rep.bounds.quasiminimal_count},           {"quasiminimal_bound", rep.bounds.quasiminimal_bound},
                   {"satisfied_weak", rep.bounds.satisfied_weak}, {"satisfied_strict", rep.bounds.satisfied_strict},
                   {"ergodic_bound", rep.bounds.ergodic_bound},   {"genus_bound", rep.bounds.genus_bound}};
    j["certified"] = rep.certified;
    j["scheme_iterations"] = rep.scheme_iterations;
    j["stops"] = rep.stops;
    if (rep.validation) {
        j["cross_validation"] = {{"samples", rep.validation->samples},
                                 {"transient", rep.validation->transient},
                                 {"periodic", rep.validation->periodic},
                                 {"undecided", rep.validation->undecided},
                                 {"contradictions", rep.validation->contradictions}};
    } else {
        j["cross_validation"] = nullptr;
    }
    return j.dump(2) + "\n";
}

DecompositionReport parse_report(const std::string& text) {
    const json j = parse_json(text);
    only_keys(j, "", {"input", "settings", "transition", "domains", "undecided", "p", "q", "bounds", "certified",
                      "scheme_iterations", "stops", "cross_validation"});
    try {
        DecompositionReport rep;
        ParsedMap input = map_from(need(j, "", "input"), "/input");
        const long field = input.field != 0 ? input.field : 0;
        rep.input = std::move(input.map);
        const json& settings = need(j, "", "settings");
        rep.window = settings.at("window").get<int>();
        rep.max_steps = settings.at("max_steps").get<int>();
        rep.transition = intervals_from(need(j, "", "transition"), "/transition", field);
        const json& domains = need(j, "", "domains");
        for (std::size_t i = 0; i < domains.size(); ++i) {
            rep.domains.push_back(domain_from(domains[i], "/domains/" + std::to_string(i), field));
        }
        const json& undecided = need(j, "", "undecided");
        for (std::size_t i = 0; i < undecided.size(); ++i) {
            const std::string p = "/undecided/" + std::to_string(i);
            rep.undecided.push_back({map_from(need(undecided[i], p, "map"), p + "/map").map,
                                     heights_from(need(undecided[i], p, "heights"), p + "/heights"),
                                     intervals_from(need(undecided[i], p, "region"), p + "/region", field)});
        }
        rep.p = need(j, "", "p").get<int>();
        rep.q = need(j, "", "q").get<int>();
        const json& b = need(j, "", "bounds");
        rep.bounds.quasiminimal_count = b.at("quasiminimal_count").get<int>();
        rep.bounds.quasiminimal_bound = b.at("quasiminimal_bound").get<int>();
        rep.bounds.satisfied_weak = b.at("satisfied_weak").get<bool>();
        rep.bounds.satisfied_strict = b.at("satisfied_strict").get<bool>();
        rep.bounds.ergodic_bound = b.at("ergodic_bound").get<int>();
        rep.bounds.genus_bound = b.at("genus_bound").get<int>();
        rep.certified = need(j, "", "certified").get<bool>();
        rep.scheme_iterations = need(j, "", "scheme_iterations").get<int>();
        rep.stops = need(j, "", "stops").get<std::vector<std::string>>();
        const json& cv = need(j, "", "cross_validation");
        if (!cv.is_null()) {
            ValidationSummary v;
            v.samples = cv.at("samples").get<int>();
            v.transient = cv.at("transient").get<int>();
            v.periodic = cv.at("periodic").get<int>();
            v.undecided = cv.at("undecided").get<int>();
            v.contradictions = cv.at("contradictions").get<std::vector<std::string>>();
            rep.validation = v;
        }
        return rep;
    } catch (const json::exception& e) {
        schema_error("", e.what());
    }
}

DecompositionReport load_report(const std::string& path) { return parse_report(read_file(path)); }

std::string orbit_to_json(const OrbitRecord& rec) {
    json j;
    j["seed"] = scalar_json(rec.seed);
    json c;
    if (auto t = std::get_if<Transient>(&rec.classification)) {
        c = {{"kind", "transient"}, {"m", t->m}, {"l", t->l}};
    } else if (auto p = std::get_if<Periodic>(&rec.classification)) {
        c = {{"kind", "periodic"}, {"period", p->period}};
    } else {
        c = {{"kind", "undecided"}, {"horizon", std::get<Undecided>(rec.classification).horizon}};
    }
    j["classification"] = c;
    auto pts = [](const std::vector<Scalar>& v) {
        json arr = json::array();
        for (const auto& x : v) arr.push_back(scalar_json(x));
        return arr;
    };
    j["forward"] = pts(rec.forward);
    j["backward"] = pts(rec.backward);
    j["forward_exit_gap"] = rec.forward_exit_gap ? json(*rec.forward_exit_gap) : json(nullptr);
    j["backward_exit_gap"] = rec.backward_exit_gap ? json(*rec.backward_exit_gap) : json(nullptr);
    return j.dump(2) + "\n";
}

}  // namespace giet
