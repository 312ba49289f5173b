#include "harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace kdgf::harness {
namespace {

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

json scalar_value(std::string_view raw) {
    const auto s = trim(raw);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return std::string(s.substr(1, s.size() - 2));
    if (s == "true") return true;
    if (s == "false") return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (s.find_first_of(".eEnN") == std::string_view::npos) {
        // nonnegative integers become unsigned, as in the JSON parser
        std::uint64_t u = 0;
        auto [pu, ecu] = std::from_chars(first, last, u);
        if (ecu == std::errc() && pu == last) return u;
        std::int64_t i = 0;
        auto [p, ec] = std::from_chars(first, last, i);
        if (ec == std::errc() && p == last) return i;
    }
    double d = 0.0;
    auto [p, ec] = std::from_chars(first, last, d);
    if (ec == std::errc() && p == last) return d;
    return std::string(s);
}

json parse_value(std::string_view raw) {
    const auto s = trim(raw);
    if (s.find(',') == std::string_view::npos || (s.size() >= 2 && s.front() == '"' && s.back() == '"')) {
        return scalar_value(s);
    }
    json arr = json::array();
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto comma = s.find(',', start);
        const auto piece = trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start));
        if (!piece.empty()) arr.push_back(scalar_value(piece));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return arr;
}

std::string strip_comment(std::string_view line) {
    // '#' or ';' starts a comment at line start or after whitespace
    for (std::size_t i = 0; i < line.size(); ++i) {
        if ((line[i] == '#' || line[i] == ';') && (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t')) {
            return std::string(line.substr(0, i));
        }
    }
    return std::string(line);
}

const json* find(const json& doc, const char* key) {
    auto it = doc.find(key);
    return it == doc.end() ? nullptr : &*it;
}

double get_number(const json& doc, const char* key, const char* where) {
    const json* v = find(doc, key);
    if (!v) throw ConfigError(std::string("missing required key '") + key + "' in " + where);
    if (!v->is_number()) throw ConfigError(std::string("key '") + key + "' must be a number");
    return v->get<double>();
}

double get_number_or(const json& doc, const char* key, double fallback) {
    const json* v = find(doc, key);
    if (!v) return fallback;
    if (!v->is_number()) throw ConfigError(std::string("key '") + key + "' must be a number");
    return v->get<double>();
}

std::size_t get_count_or(const json& doc, const char* key, std::size_t fallback) {
    const json* v = find(doc, key);
    if (!v) return fallback;
    if (v->is_number_unsigned() || (v->is_number_integer() && v->get<std::int64_t>() >= 0)) {
        return v->get<std::size_t>();
    }
    if (v->is_number_float()) {
        const double d = v->get<double>();
        if (d >= 0.0 && d == static_cast<double>(static_cast<std::size_t>(d))) return static_cast<std::size_t>(d);
    }
    throw ConfigError(std::string("key '") + key + "' must be a nonnegative integer");
}

std::string get_string_or(const json& doc, const char* key, std::string fallback) {
    const json* v = find(doc, key);
    if (!v) return fallback;
    if (!v->is_string()) throw ConfigError(std::string("key '") + key + "' must be a string");
    return v->get<std::string>();
}

std::vector<double> get_list(const json& doc, const char* key) {
    const json* v = find(doc, key);
    if (!v) throw ConfigError(std::string("missing required list '") + key + "'");
    std::vector<double> out;
    if (v->is_number()) {
        out.push_back(v->get<double>());
        return out;
    }
    if (!v->is_array()) throw ConfigError(std::string("key '") + key + "' must be a list of numbers");
    for (const auto& x : *v) {
        if (!x.is_number()) throw ConfigError(std::string("key '") + key + "' must be a list of numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

void check_known_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& where) {
    for (const auto& [k, _] : obj.items()) {
        if (std::none_of(keys.begin(), keys.end(), [&](const char* x) { return k == x; })) {
            throw ConfigError("unknown key '" + k + "' in " + where);
        }
    }
}

}  // namespace

std::string_view to_string(Model m) {
    switch (m) {
        case Model::Identical: return "identical";
        case Model::Nonidentical: return "nonidentical";
        case Model::GenericDgf: return "generic_dgf";
    }
    return "unknown";
}

const std::vector<std::string>& known_certifiers() {
    static const std::vector<std::string> names = {
        "order_preservation", "diameter_decay",  "phase_decay",        "two_sided_decay",
        "bipolar_containment", "bipolar_bounds", "cluster_invariance", "uniform_bound",
        "euler_error",        "decay_fit",       "equilibrium",        "descent",
        "summability",        "lojasiewicz"};
    return names;
}

json parse_ini(std::string_view text) {
    json doc = json::object();
    json* section = &doc;
    json* certifier = nullptr;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string stripped = strip_comment(raw);
        const auto line = trim(stripped);
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(lineno);
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("unterminated section header at " + where);
            const std::string name(trim(line.substr(1, line.size() - 2)));
            if (name.empty()) throw ConfigError("empty section name at " + where);
            certifier = nullptr;
            if (name.rfind("certifier.", 0) == 0) {
                const std::string cname = name.substr(10);
                json& list = doc["certifiers"];
                if (list.is_null()) list = json::array();
                json entry = {{"name", cname}};
                list.push_back(entry);
                certifier = &list.back();
                section = certifier;
            } else {
                if (doc.contains(name)) throw ConfigError("duplicate section [" + name + "] at " + where);
                doc[name] = json::object();
                section = &doc[name];
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError("expected 'key = value' at " + where);
        const std::string key(trim(line.substr(0, eq)));
        if (key.empty()) throw ConfigError("empty key at " + where);
        if (section->contains(key)) throw ConfigError("duplicate key '" + key + "' at " + where);
        json value = parse_value(line.substr(eq + 1));
        if (section == &doc && key == "certifiers") {
            // plain list of names; sections may follow and append parameters
            json list = json::array();
            for (const auto& v : value.is_array() ? value : json::array({value})) {
                list.push_back(json{{"name", v.is_string() ? v.get<std::string>() : v.dump()}});
            }
            if (doc.contains("certifiers")) throw ConfigError("certifiers given twice at " + where);
            doc["certifiers"] = std::move(list);
            continue;
        }
        (*section)[key] = std::move(value);
    }
    return doc;
}

json load_config(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    const std::string text = ss.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        try {
            return json::parse(text);
        } catch (const json::parse_error& e) {
            throw ConfigError(std::string("invalid JSON config: ") + e.what());
        }
    }
    return parse_ini(text);
}

RunConfig RunConfig::from_json(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config must be an object");
    check_known_keys(doc,
                     {"model", "n", "seed", "K", "h", "max_steps", "conv_tol", "stop", "stop_tol", "init",
                      "omega", "problem", "certifiers", "output"},
                     "top level");
    RunConfig c;
    const std::string model = get_string_or(doc, "model", "");
    if (model == "identical") c.model = Model::Identical;
    else if (model == "nonidentical") c.model = Model::Nonidentical;
    else if (model == "generic_dgf") c.model = Model::GenericDgf;
    else if (model.empty()) throw ConfigError("missing required key 'model'");
    else throw ConfigError("unknown model '" + model + "'");

    if (const json* s = find(doc, "seed")) {
        if (!s->is_number_integer() || (!s->is_number_unsigned() && s->get<std::int64_t>() < 0)) {
            throw ConfigError("seed must be a nonnegative integer");
        }
        c.seed = s->get<std::uint64_t>();
    }
    c.step = get_number(doc, "h", "top level");
    if (!(c.step > 0.0)) throw ConfigError("h must be positive");
    c.max_steps = get_count_or(doc, "max_steps", c.max_steps);
    c.conv_tol = get_number_or(doc, "conv_tol", c.conv_tol);
    if (!(c.conv_tol > 0.0)) throw ConfigError("conv_tol must be positive");
    c.stop = get_string_or(doc, "stop", c.stop);
    if (c.stop != "grad_norm" && c.stop != "max_steps" && c.stop != "diameter") {
        throw ConfigError("stop must be one of grad_norm, max_steps, diameter");
    }
    c.stop_tol = get_number_or(doc, "stop_tol", 0.0);
    if (c.stop == "diameter" && !(c.stop_tol > 0.0)) throw ConfigError("stop = diameter needs stop_tol > 0");

    if (c.model == Model::GenericDgf) {
        const json* p = find(doc, "problem");
        if (!p || !p->is_object()) throw ConfigError("generic_dgf needs a [problem] section");
        check_known_keys(*p, {"name", "dim", "curvature", "x0"}, "[problem]");
        c.problem.name = get_string_or(*p, "name", "");
        if (c.problem.name != "quadratic" && c.problem.name != "double_well" && c.problem.name != "quartic" &&
            c.problem.name != "kuramoto") {
            throw ConfigError("unknown problem '" + c.problem.name + "'");
        }
        c.problem.curvature = get_number_or(*p, "curvature", 1.0);
        c.problem.x0 = get_list(*p, "x0");
        c.problem.dim = get_count_or(*p, "dim", c.problem.x0.size());
        if (c.problem.dim != c.problem.x0.size()) throw ConfigError("problem x0 length differs from dim");
        if (c.problem.name == "kuramoto") {
            c.coupling = get_number(doc, "K", "top level");
            c.n = c.problem.x0.size();
        }
    } else {
        c.coupling = get_number(doc, "K", "top level");
        if (!(c.coupling > 0.0)) throw ConfigError("K must be positive");
        c.n = get_count_or(doc, "n", 0);
        if (c.n < 2) throw ConfigError("missing or invalid 'n' (need n >= 2)");

        const json* init = find(doc, "init");
        if (!init || !init->is_object()) throw ConfigError("missing [init] section");
        check_known_keys(*init, {"kind", "phases", "width", "delta"}, "[init]");
        c.init.kind = get_string_or(*init, "kind", "");
        if (c.init.kind == "explicit") {
            c.init.phases = get_list(*init, "phases");
            if (c.init.phases.size() != c.n) throw ConfigError("init phases length differs from n");
        } else if (c.init.kind == "random_arc") {
            c.init.width = get_number(*init, "width", "[init]");
            if (!(c.init.width >= 0.0)) throw ConfigError("init width must be nonnegative");
        } else if (c.init.kind == "near_bipolar" || c.init.kind == "near_sync") {
            c.init.delta = get_number(*init, "delta", "[init]");
            if (!(c.init.delta >= 0.0)) throw ConfigError("init delta must be nonnegative");
        } else {
            throw ConfigError("unknown init kind '" + c.init.kind + "'");
        }
    }

    if (c.model != Model::GenericDgf || c.problem.name == "kuramoto") {
        if (const json* om = find(doc, "omega")) {
            if (!om->is_object()) throw ConfigError("[omega] must be a section");
            check_known_keys(*om, {"kind", "values", "d_omega"}, "[omega]");
            c.omega.kind = get_string_or(*om, "kind", "zero");
            if (c.omega.kind == "explicit") {
                c.omega.values = get_list(*om, "values");
                if (c.omega.values.size() != std::max(c.n, c.problem.x0.size())) {
                    throw ConfigError("omega values length differs from n");
                }
            } else if (c.omega.kind == "random_uniform") {
                c.omega.d_omega = get_number(*om, "d_omega", "[omega]");
                if (!(c.omega.d_omega >= 0.0)) throw ConfigError("d_omega must be nonnegative");
            } else if (c.omega.kind != "zero") {
                throw ConfigError("unknown omega kind '" + c.omega.kind + "'");
            }
        }
        if (c.model == Model::Identical && c.omega.kind != "zero") {
            throw ConfigError("identical model requires omega kind = zero");
        }
    }

    if (const json* certs = find(doc, "certifiers")) {
        if (!certs->is_array()) throw ConfigError("certifiers must be a list");
        for (const auto& e : *certs) {
            CertifierSpec spec;
            if (e.is_string()) {
                spec.name = e.get<std::string>();
            } else if (e.is_object() && e.contains("name") && e["name"].is_string()) {
                spec.name = e["name"].get<std::string>();
                spec.params = e;
                spec.params.erase("name");
            } else {
                throw ConfigError("certifier entries must be names or objects with a name");
            }
            const auto& known = known_certifiers();
            if (std::find(known.begin(), known.end(), spec.name) == known.end()) {
                throw ConfigError("unknown certifier '" + spec.name + "'");
            }
            c.certifiers.push_back(std::move(spec));
        }
    }

    if (const json* out = find(doc, "output")) {
        if (!out->is_object()) throw ConfigError("[output] must be a section");
        check_known_keys(*out, {"format", "trajectory", "stride"}, "[output]");
        c.output.format = get_string_or(*out, "format", "csv");
        if (const json* t = find(*out, "trajectory")) {
            if (!t->is_boolean()) throw ConfigError("output trajectory must be true or false");
            c.output.trajectory = t->get<bool>();
        }
        c.output.stride = get_count_or(*out, "stride", 1);
        if (c.output.stride == 0) throw ConfigError("output stride must be positive");
    }
    if (c.output.format != "csv" && c.output.format != "json") throw ConfigError("format must be csv or json");
    return c;
}

std::string canonical_axis(const std::string& axis) {
    if (axis == "K" || axis == "k") return "K";
    if (axis == "h") return "h";
    if (axis == "delta") return "delta";
    if (axis == "d_omega" || axis == "D(Omega)" || axis == "D(Ω)" || axis == "domega") return "d_omega";
    if (axis == "N" || axis == "n") return "N";
    throw ConfigError("unknown sweep axis '" + axis + "' (expected K, h, delta, d_omega, N)");
}

void apply_axis(json& doc, const std::string& axis, double value) {
    const std::string a = canonical_axis(axis);
    if (a == "K") doc["K"] = value;
    else if (a == "h") doc["h"] = value;
    else if (a == "delta") doc["init"]["delta"] = value;
    else if (a == "d_omega") doc["omega"]["d_omega"] = value;
    else {
        if (!(value >= 2.0) || value != static_cast<double>(static_cast<std::int64_t>(value))) {
            throw ConfigError("N sweep values must be integers >= 2");
        }
        doc["n"] = static_cast<std::int64_t>(value);
    }
}

}  // namespace kdgf::harness
