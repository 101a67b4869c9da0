#include "rwcre/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace rwcre {

ResamplingRule RuleSpec::build() const {
    if (kind == "two-point") return ResamplingRule::two_point(p, 1.0 - p);
    if (kind == "finite-support") return ResamplingRule::finite_support(atoms);
    if (kind == "symmetric-beta") return ResamplingRule::symmetric_beta(shape);
    throw std::invalid_argument("unknown rule kind '" + kind + "'");
}

CoolingSchedule ScheduleSpec::build() const {
    if (kind == "polynomial") return CoolingSchedule::polynomial(B, beta);
    if (kind == "exponential") return CoolingSchedule::exponential(C, scale);
    if (kind == "unit") return CoolingSchedule::unit();
    if (kind == "explicit") {
        std::ifstream in(file);
        if (!in) throw std::invalid_argument("cannot open explicit schedule file '" + file + "'");
        std::vector<int64_t> taus;
        int64_t t;
        while (in >> t) taus.push_back(t);
        return CoolingSchedule::explicit_times(std::move(taus));
    }
    throw std::invalid_argument("unknown schedule kind '" + kind + "'");
}

namespace {

// Minimal value model for the config grammar.
struct Value {
    enum Type { Number, String, Boolean, Array, Table } type;
    double num = 0.0;
    std::string str;
    bool boolean = false;
    std::vector<Value> array;
    std::map<std::string, Value> table;
};

struct Parsed {
    std::map<std::string, Value> values;
    std::map<std::string, int> lines;  // key -> source line, for semantic errors

    int line_of(const std::string& key) const {
        const auto it = lines.find(key);
        return it == lines.end() ? 0 : it->second;
    }
};

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    Parsed parse() {
        Parsed out;
        std::istringstream in(text_);
        std::string raw;
        int lineno = 0;
        std::string pending;
        int pending_line = 0;
        while (std::getline(in, raw)) {
            ++lineno;
            const size_t hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            if (!pending.empty()) raw = pending + " " + raw;
            pending.clear();
            std::string line = trim(raw);
            if (line.empty()) continue;
            // Allow arrays/tables to span lines until brackets balance.
            if (!balanced(line)) {
                pending = raw;
                pending_line = pending_line == 0 ? lineno : pending_line;
                continue;
            }
            const int at = pending_line == 0 ? lineno : pending_line;
            pending_line = 0;
            const size_t eq = line.find('=');
            if (eq == std::string::npos) throw ConfigError(at, "expected key = value");
            const std::string key = trim(line.substr(0, eq));
            if (key.empty()) throw ConfigError(at, "empty key");
            size_t pos = 0;
            const std::string rhs = trim(line.substr(eq + 1));
            if (rhs.empty()) throw ConfigError(at, "missing value for '" + key + "'");
            Value v = parse_value(rhs, pos, at);
            skip_ws(rhs, pos);
            if (pos != rhs.size()) throw ConfigError(at, "trailing characters after value");
            out.values[key] = std::move(v);
            out.lines[key] = at;
        }
        if (!pending.empty()) throw ConfigError(pending_line, "unterminated value");
        return out;
    }

private:
    static std::string trim(const std::string& s) {
        size_t b = 0, e = s.size();
        while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
        while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
        return s.substr(b, e - b);
    }

    static bool balanced(const std::string& s) {
        int depth = 0;
        bool in_str = false;
        for (char c : s) {
            if (c == '"') in_str = !in_str;
            if (in_str) continue;
            if (c == '[' || c == '{') ++depth;
            if (c == ']' || c == '}') --depth;
        }
        return depth == 0 && !in_str;
    }

    static void skip_ws(const std::string& s, size_t& pos) {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    Value parse_value(const std::string& s, size_t& pos, int line) {
        skip_ws(s, pos);
        if (pos >= s.size()) throw ConfigError(line, "missing value");
        const char c = s[pos];
        if (c == '"') return parse_string(s, pos, line);
        if (c == '[') return parse_array(s, pos, line);
        if (c == '{') return parse_table(s, pos, line);
        if (s.compare(pos, 4, "true") == 0 && boundary(s, pos + 4)) {
            pos += 4;
            Value v;
            v.type = Value::Boolean;
            v.boolean = true;
            return v;
        }
        if (s.compare(pos, 5, "false") == 0 && boundary(s, pos + 5)) {
            pos += 5;
            Value v;
            v.type = Value::Boolean;
            v.boolean = false;
            return v;
        }
        return parse_number(s, pos, line);
    }

    static bool boundary(const std::string& s, size_t pos) {
        return pos >= s.size() || !std::isalnum(static_cast<unsigned char>(s[pos]));
    }

    Value parse_string(const std::string& s, size_t& pos, int line) {
        ++pos;  // opening quote
        std::string out;
        while (pos < s.size() && s[pos] != '"') out += s[pos++];
        if (pos >= s.size()) throw ConfigError(line, "unterminated string");
        ++pos;
        Value v;
        v.type = Value::String;
        v.str = std::move(out);
        return v;
    }

    Value parse_number(const std::string& s, size_t& pos, int line) {
        size_t end = pos;
        while (end < s.size() && (std::isdigit(static_cast<unsigned char>(s[end])) ||
                                  s[end] == '+' || s[end] == '-' || s[end] == '.' ||
                                  s[end] == 'e' || s[end] == 'E' || s[end] == '_'))
            ++end;
        std::string tok = s.substr(pos, end - pos);
        tok.erase(std::remove(tok.begin(), tok.end(), '_'), tok.end());
        try {
            size_t used = 0;
            const double d = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            pos = end;
            Value v;
            v.type = Value::Number;
            v.num = d;
            return v;
        } catch (const std::exception&) {
            throw ConfigError(line, "invalid value '" + s.substr(pos, end - pos) + "'");
        }
    }

    Value parse_array(const std::string& s, size_t& pos, int line) {
        ++pos;  // '['
        Value v;
        v.type = Value::Array;
        skip_ws(s, pos);
        while (pos < s.size() && s[pos] != ']') {
            v.array.push_back(parse_value(s, pos, line));
            skip_ws(s, pos);
            if (pos < s.size() && s[pos] == ',') {
                ++pos;
                skip_ws(s, pos);
            }
        }
        if (pos >= s.size()) throw ConfigError(line, "unterminated array");
        ++pos;
        return v;
    }

    Value parse_table(const std::string& s, size_t& pos, int line) {
        ++pos;  // '{'
        Value v;
        v.type = Value::Table;
        skip_ws(s, pos);
        while (pos < s.size() && s[pos] != '}') {
            size_t end = pos;
            while (end < s.size() && s[end] != '=') ++end;
            if (end >= s.size()) throw ConfigError(line, "expected key = value inside table");
            const std::string key = trim(s.substr(pos, end - pos));
            if (key.empty()) throw ConfigError(line, "empty key inside table");
            pos = end + 1;
            v.table[key] = parse_value(s, pos, line);
            skip_ws(s, pos);
            if (pos < s.size() && s[pos] == ',') {
                ++pos;
                skip_ws(s, pos);
            }
        }
        if (pos >= s.size()) throw ConfigError(line, "unterminated table");
        ++pos;
        return v;
    }

    const std::string& text_;
};

double need_num(const std::map<std::string, Value>& t, const std::string& key, int line) {
    const auto it = t.find(key);
    if (it == t.end()) throw ConfigError(line, "missing key '" + key + "'");
    if (it->second.type != Value::Number) throw ConfigError(line, "'" + key + "' must be a number");
    return it->second.num;
}

const char* kKnownKeys[] = {"rule", "schedule", "horizons", "replicas",  "grid", "a",
                            "seed", "out_dir",  "dump_paths", "oracle_cap", "suites"};

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    const auto parsed = Parser(text).parse();
    const auto& values = parsed.values;
    ExperimentConfig cfg;
    cfg.text = text;

    for (const auto& [key, v] : values) {
        (void)v;
        bool known = false;
        for (const char* k : kKnownKeys) known = known || key == k;
        if (!known) throw ConfigError(parsed.line_of(key), "unknown key '" + key + "'");
    }

    const auto it_rule = values.find("rule");
    if (it_rule == values.end()) throw ConfigError(0, "missing key 'rule'");
    const int rule_line = parsed.line_of("rule");
    if (it_rule->second.type != Value::Table) throw ConfigError(rule_line, "'rule' must be a table");
    {
        const auto& t = it_rule->second.table;
        const auto kind = t.find("kind");
        if (kind == t.end() || kind->second.type != Value::String)
            throw ConfigError(rule_line, "rule needs a string 'kind'");
        cfg.rule.kind = kind->second.str;
        if (cfg.rule.kind == "two-point") {
            cfg.rule.p = need_num(t, "p", rule_line);
            if (!(cfg.rule.p > 0.0 && cfg.rule.p < 1.0))
                throw ConfigError(rule_line, "rule p must lie in (0,1)");
        } else if (cfg.rule.kind == "finite-support") {
            const auto vs = t.find("values");
            const auto ws = t.find("weights");
            if (vs == t.end() || ws == t.end() || vs->second.type != Value::Array ||
                ws->second.type != Value::Array ||
                vs->second.array.size() != ws->second.array.size())
                throw ConfigError(rule_line,
                                  "finite-support rule needs matching 'values' and 'weights'");
            for (size_t i = 0; i < vs->second.array.size(); ++i)
                cfg.rule.atoms.emplace_back(vs->second.array[i].num, ws->second.array[i].num);
        } else if (cfg.rule.kind == "symmetric-beta") {
            cfg.rule.shape = need_num(t, "shape", rule_line);
        } else {
            throw ConfigError(rule_line, "unknown rule kind '" + cfg.rule.kind + "'");
        }
    }

    const auto it_sched = values.find("schedule");
    if (it_sched == values.end()) throw ConfigError(0, "missing key 'schedule'");
    const int sched_line = parsed.line_of("schedule");
    if (it_sched->second.type != Value::Table)
        throw ConfigError(sched_line, "'schedule' must be a table");
    {
        const auto& t = it_sched->second.table;
        const auto kind = t.find("kind");
        if (kind == t.end() || kind->second.type != Value::String)
            throw ConfigError(sched_line, "schedule needs a string 'kind'");
        cfg.schedule.kind = kind->second.str;
        if (cfg.schedule.kind == "polynomial") {
            cfg.schedule.B = need_num(t, "B", sched_line);
            cfg.schedule.beta = need_num(t, "beta", sched_line);
            if (!(cfg.schedule.B > 0.0)) throw ConfigError(sched_line, "B must be positive");
            if (!(cfg.schedule.beta > 1.0)) throw ConfigError(sched_line, "beta must exceed 1");
        } else if (cfg.schedule.kind == "exponential") {
            cfg.schedule.C = need_num(t, "C", sched_line);
            if (!(cfg.schedule.C > 0.0)) throw ConfigError(sched_line, "C must be positive");
            if (t.count("scale")) {
                cfg.schedule.scale = need_num(t, "scale", sched_line);
                if (!(cfg.schedule.scale > 0.0))
                    throw ConfigError(sched_line, "scale must be positive");
            }
        } else if (cfg.schedule.kind == "explicit") {
            const auto f = t.find("file");
            if (f == t.end() || f->second.type != Value::String)
                throw ConfigError(sched_line, "explicit schedule needs a string 'file'");
            cfg.schedule.file = f->second.str;
        } else if (cfg.schedule.kind != "unit") {
            throw ConfigError(sched_line, "unknown schedule kind '" + cfg.schedule.kind + "'");
        }
    }

    const auto it_h = values.find("horizons");
    if (it_h == values.end()) throw ConfigError(0, "missing key 'horizons'");
    const int h_line = parsed.line_of("horizons");
    if (it_h->second.type != Value::Array || it_h->second.array.empty())
        throw ConfigError(h_line, "'horizons' must be a non-empty array");
    for (const auto& v : it_h->second.array) cfg.horizons.push_back(static_cast<int64_t>(v.num));
    for (int64_t n : cfg.horizons)
        if (n < 0) throw ConfigError(h_line, "horizons must be non-negative");
    if (!std::is_sorted(cfg.horizons.begin(), cfg.horizons.end()))
        throw ConfigError(h_line, "horizons must be sorted ascending");

    if (const auto it = values.find("replicas"); it != values.end())
        cfg.replicas = static_cast<int64_t>(it->second.num);
    if (cfg.replicas < 1) throw ConfigError(parsed.line_of("replicas"), "replicas must be >= 1");

    if (const auto it = values.find("grid"); it != values.end()) {
        cfg.grid.clear();
        for (const auto& v : it->second.array) cfg.grid.push_back(v.num);
    }
    const int grid_line = parsed.line_of("grid");
    for (double t : cfg.grid)
        if (!(t >= 0.0 && t <= 1.0)) throw ConfigError(grid_line, "grid points must lie in [0,1]");
    if (!std::is_sorted(cfg.grid.begin(), cfg.grid.end()))
        throw ConfigError(grid_line, "grid must be sorted ascending");

    if (const auto it = values.find("a"); it != values.end()) cfg.a = it->second.num;
    if (!(cfg.a > 0.0 && cfg.a <= 1.0))
        throw ConfigError(parsed.line_of("a"), "a must lie in (0,1]");

    if (const auto it = values.find("seed"); it != values.end())
        cfg.seed = static_cast<uint64_t>(it->second.num);
    if (const auto it = values.find("out_dir"); it != values.end()) cfg.out_dir = it->second.str;
    if (const auto it = values.find("dump_paths"); it != values.end())
        cfg.dump_paths = it->second.boolean;
    if (const auto it = values.find("oracle_cap"); it != values.end())
        cfg.oracle_cap = static_cast<int>(it->second.num);
    if (const auto it = values.find("suites"); it != values.end())
        for (const auto& v : it->second.array) {
            if (v.str != "marginal" && v.str != "fdd" && v.str != "flatness" && v.str != "blockvar")
                throw ConfigError(parsed.line_of("suites"), "unknown suite '" + v.str + "'");
            cfg.suites.push_back(v.str);
        }

    // Fail early on rule/schedule construction problems.
    try {
        (void)cfg.rule.build();
        if (cfg.schedule.kind != "explicit") (void)cfg.schedule.build();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(0, e.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace rwcre
