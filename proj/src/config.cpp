#include "mss/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "mss/error.hpp"
#include "mss/expression.hpp"

namespace mss {

using Json = nlohmann::ordered_json;

namespace {

class TomlReader {
public:
    explicit TomlReader(const std::string& text) : text_(text) {}

    Json run() {
        Json root = Json::object();
        Json* table = &root;
        while (true) {
            skip_blank_lines();
            if (at_end()) break;
            if (peek() == '[') {
                table = &open_table(root);
            } else {
                std::string key = read_key();
                skip_space();
                expect('=');
                skip_space();
                if (table->contains(key)) fail("duplicate key '" + key + "'");
                (*table)[key] = read_value();
            }
            end_line();
        }
        return root;
    }

private:
    const std::string& text_;
    size_t pos_ = 0;
    int line_ = 1;

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }
    char get() {
        char c = text_[pos_++];
        if (c == '\n') ++line_;
        return c;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorKind::ParseError, "TOML line " + std::to_string(line_) + ": " + msg);
    }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        get();
    }
    void skip_space() {
        while (peek() == ' ' || peek() == '\t') get();
    }
    void skip_comment() {
        if (peek() == '#')
            while (!at_end() && peek() != '\n') get();
    }
    void skip_blank_lines() {
        while (!at_end()) {
            skip_space();
            skip_comment();
            if (peek() == '\n' || peek() == '\r') get();
            else break;
        }
    }
    void end_line() {
        skip_space();
        skip_comment();
        if (peek() == '\r') get();
        if (!at_end() && peek() != '\n') fail("unexpected trailing characters");
    }

    std::string read_bare_key() {
        std::string k;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-') k += get();
        if (k.empty()) fail("expected a key");
        return k;
    }
    std::string read_key() {
        if (peek() == '"') return read_basic_string();
        return read_bare_key();
    }

    Json& open_table(Json& root) {
        expect('[');
        if (peek() == '[') fail("arrays of tables are not supported");
        Json* t = &root;
        while (true) {
            skip_space();
            std::string k = read_key();
            skip_space();
            if (!t->contains(k)) (*t)[k] = Json::object();
            t = &(*t)[k];
            if (!t->is_object()) fail("'" + k + "' is not a table");
            if (peek() == '.') {
                get();
                continue;
            }
            break;
        }
        expect(']');
        return *t;
    }

    std::string read_basic_string() {
        expect('"');
        std::string s;
        while (true) {
            if (at_end() || peek() == '\n') fail("unterminated string");
            char c = get();
            if (c == '"') break;
            if (c == '\\') {
                char e = get();
                switch (e) {
                    case 'n': s += '\n'; break;
                    case 't': s += '\t'; break;
                    case '"': s += '"'; break;
                    case '\\': s += '\\'; break;
                    default: fail(std::string("unsupported escape \\") + e);
                }
            } else {
                s += c;
            }
        }
        return s;
    }
    std::string read_literal_string() {
        expect('\'');
        std::string s;
        while (true) {
            if (at_end() || peek() == '\n') fail("unterminated string");
            char c = get();
            if (c == '\'') break;
            s += c;
        }
        return s;
    }

    Json read_value() {
        char c = peek();
        if (c == '"') return read_basic_string();
        if (c == '\'') return read_literal_string();
        if (c == '[') return read_array();
        if (text_.compare(pos_, 4, "true") == 0) {
            pos_ += 4;
            return true;
        }
        if (text_.compare(pos_, 5, "false") == 0) {
            pos_ += 5;
            return false;
        }
        return read_number();
    }

    Json read_array() {
        expect('[');
        Json a = Json::array();
        while (true) {
            skip_blank_lines();
            if (peek() == ']') break;
            a.push_back(read_value());
            skip_blank_lines();
            if (peek() == ',') {
                get();
                continue;
            }
            if (peek() != ']') fail("expected ',' or ']' in array");
        }
        expect(']');
        return a;
    }

    Json read_number() {
        std::string tok;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '+' || peek() == '-' ||
                             peek() == '.' || peek() == '_'))
            tok += get();
        std::string clean;
        for (char ch : tok)
            if (ch != '_') clean += ch;
        if (clean.empty()) fail("expected a value");
        bool is_float = clean.find_first_of(".eE") != std::string::npos || clean == "inf" || clean == "nan";
        try {
            size_t used = 0;
            if (is_float) {
                double v = std::stod(clean, &used);
                if (used == clean.size()) return v;
            } else {
                long long v = std::stoll(clean, &used, 10);
                if (used == clean.size()) return v;
            }
        } catch (const std::exception&) {
        }
        fail("invalid value '" + tok + "'");
    }
};

const Json& section(const Json& j, const char* name) {
    static const Json empty = Json::object();
    if (!j.contains(name)) return empty;
    if (!j[name].is_object()) throw Error(ErrorKind::ParseError, std::string("[") + name + "] must be a table");
    return j[name];
}

std::string get_string(const Json& t, const char* key, const std::string& fallback, bool required = false) {
    if (!t.contains(key)) {
        if (required) throw Error(ErrorKind::ParseError, std::string("missing key '") + key + "'");
        return fallback;
    }
    if (!t[key].is_string()) throw Error(ErrorKind::ParseError, std::string("'") + key + "' must be a string");
    return t[key].get<std::string>();
}

double get_number(const Json& t, const char* key, double fallback) {
    if (!t.contains(key)) return fallback;
    if (!t[key].is_number()) throw Error(ErrorKind::ParseError, std::string("'") + key + "' must be a number");
    return t[key].get<double>();
}

ChartFn compile_pair(const std::string& xs, const std::string& ys, const std::vector<std::string>& vars,
                     const std::vector<double>& params) {
    Expression ex = Expression::parse(xs, vars);
    Expression ey = Expression::parse(ys, vars);
    return [ex, ey, params](Vec2 p) {
        std::vector<double> v{p.x, p.y};
        v.insert(v.end(), params.begin(), params.end());
        return Vec2{ex.eval(v), ey.eval(v)};
    };
}

}  // namespace

Json parse_toml(const std::string& text) { return TomlReader(text).run(); }

MapConfig config_from_json(const Json& j) {
    if (!j.is_object()) throw Error(ErrorKind::ParseError, "config must be an object");
    const Json& surf = section(j, "surface");
    const Json& mp = section(j, "map");
    const Json& op = section(j, "options");

    MapConfig c;
    std::string kind = get_string(surf, "kind", "plane");
    if (kind == "plane") c.map.surface = SurfaceModel::plane();
    else if (kind == "torus") c.map.surface = SurfaceModel::torus();
    else if (kind == "sphere") c.map.surface = SurfaceModel::sphere();
    else throw Error(ErrorKind::ParseError, "unknown surface kind '" + kind + "'");
    if (surf.contains("seed_box")) {
        const Json& b = surf["seed_box"];
        if (!b.is_array() || b.size() != 4)
            throw Error(ErrorKind::ParseError, "seed_box must be [x0, y0, x1, y1]");
        for (const auto& v : b)
            if (!v.is_number()) throw Error(ErrorKind::ParseError, "seed_box entries must be numbers");
        c.map.seed_boxes = {Box{{b[0].get<double>(), b[1].get<double>()}, {b[2].get<double>(), b[3].get<double>()}}};
    }

    c.map.name = get_string(mp, "name", "config-map");
    std::vector<std::string> vars{"x", "y"};
    std::vector<double> params;
    for (const auto& [k, v] : mp.items()) {
        if (!v.is_number()) continue;
        if (k == "x" || k == "y" || k == "pi" || k == "e")
            throw Error(ErrorKind::ParseError, "parameter name '" + k + "' is reserved");
        vars.push_back(k);
        params.push_back(v.get<double>());
        c.map.parameters.emplace_back(k, v.get<double>());
    }
    bool torus = c.map.surface.kind() == SurfaceKind::Torus;
    c.map.forward.push_back(
        compile_pair(get_string(mp, "x", "", true), get_string(mp, "y", "", true), vars, params));
    bool explicit_inverse = mp.contains("inverse_x") || mp.contains("inverse_y");
    if (explicit_inverse)
        c.map.inverse.push_back(compile_pair(get_string(mp, "inverse_x", "", true),
                                             get_string(mp, "inverse_y", "", true), vars, params));
    if (c.map.surface.kind() == SurfaceKind::Sphere) {
        c.map.forward.push_back(
            compile_pair(get_string(mp, "x_chart1", "", true), get_string(mp, "y_chart1", "", true), vars, params));
        if (explicit_inverse)
            c.map.inverse.push_back(compile_pair(get_string(mp, "inverse_x_chart1", "", true),
                                                 get_string(mp, "inverse_y_chart1", "", true), vars, params));
    }
    if (!explicit_inverse)
        for (const auto& f : c.map.forward) c.map.inverse.push_back(newton_inverse(f, nullptr, torus));

    AnalysisOptions& o = c.options;
    o.max_period = static_cast<int>(get_number(op, "max_period", o.max_period));
    o.grid_density = static_cast<int>(get_number(op, "grid", o.grid_density));
    o.arclength_budget = get_number(op, "budget", o.arclength_budget);
    o.max_step = get_number(op, "max_step", o.max_step);
    o.max_angle_deg = get_number(op, "max_angle_deg", o.max_angle_deg);
    if (op.contains("boundary_curves")) {
        if (!op["boundary_curves"].is_boolean())
            throw Error(ErrorKind::ParseError, "'boundary_curves' must be a boolean");
        o.boundary_curves = op["boundary_curves"].get<bool>();
    }
    if (o.max_period < 1 || o.grid_density < 2 || o.arclength_budget <= 0 || o.max_step <= 0)
        throw Error(ErrorKind::InvalidArgument, "options out of range");
    return c;
}

MapConfig load_config_text(const std::string& text, bool json) {
    if (!json) return config_from_json(parse_toml(text));
    try {
        return config_from_json(Json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::ParseError, std::string("JSON: ") + e.what());
    }
}

MapConfig load_config_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::IoError, "cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    std::string text = ss.str();
    size_t first = text.find_first_not_of(" \t\r\n");
    bool json = (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) ||
                (first != std::string::npos && text[first] == '{');
    return load_config_text(text, json);
}

}  // namespace mss
