#pragma once

// Text input formats.
//
// Surface file:
//   field_order = 16
//   A = "t^3*(t^4-1)"
//   B = "0"
//   [map.sigma]
//   x = "z^6*x"
//   y = "z^9*y"
//   t = "z^4*t"
//
// Graph file:
//   vertex C1
//   edge a1 b1 x2
//   [action.sigma]
//   n = 16
//   c = 1
//   perm = (a1 a2 a3 a4)(b1 b2 b3 b4)
//   anchor = s0 @ s0:C1 = 4
//
// '#' starts a comment. Errors carry the line number.

#include <cctype>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "funfield.hpp"
#include "parser.hpp"
#include "rigidity.hpp"

namespace k3auto {

namespace detail {

inline std::string trim_copy(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

inline std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

[[noreturn]] inline void line_error(int line, const std::string& msg, ErrorKind kind = ErrorKind::SyntaxError) {
    throw Error(kind, "line " + std::to_string(line) + ": " + msg);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::InputError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Line {
    int number = 0;
    std::string text;
};

inline std::vector<Line> content_lines(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    int no = 0;
    while (std::getline(in, raw)) {
        ++no;
        std::string t = trim_copy(strip_comment(raw));
        if (!t.empty()) out.push_back({no, std::move(t)});
    }
    return out;
}

/// "[kind.name]" -> name, or empty when the line is not a header of that kind.
inline std::optional<std::string> section_header(const Line& l, const std::string& kind) {
    if (l.text.front() != '[') return std::nullopt;
    if (l.text.back() != ']') line_error(l.number, "unterminated section header");
    const std::string inner = l.text.substr(1, l.text.size() - 2);
    const std::string prefix = kind + ".";
    if (inner.rfind(prefix, 0) != 0 || inner.size() == prefix.size()) {
        line_error(l.number, "expected [" + kind + ".NAME], got [" + inner + "]");
    }
    return inner.substr(prefix.size());
}

inline std::pair<std::string, std::string> key_value(const Line& l) {
    const auto eq = l.text.find('=');
    if (eq == std::string::npos) line_error(l.number, "expected key = value");
    std::string key = trim_copy(std::string_view(l.text).substr(0, eq));
    std::string value = trim_copy(std::string_view(l.text).substr(eq + 1));
    if (key.empty()) line_error(l.number, "missing key");
    return {key, value};
}

inline std::string unquote(const Line& l, const std::string& v) {
    if (v.size() < 2 || v.front() != '"' || v.back() != '"') line_error(l.number, "expected a quoted string");
    return v.substr(1, v.size() - 2);
}

inline int parse_int(const Line& l, const std::string& v) {
    std::size_t used = 0;
    int out = 0;
    try {
        out = std::stoi(v, &used);
    } catch (const std::exception&) {
        line_error(l.number, "expected an integer, got '" + v + "'");
    }
    if (used != v.size()) line_error(l.number, "expected an integer, got '" + v + "'");
    return out;
}

/// Re-throw parser errors with the file line prefixed.
template <class Fn>
auto at_line(int line, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        throw Error(e.kind(), "line " + std::to_string(line) + ": " + e.detail());
    }
}

}  // namespace detail

struct MapSpec {
    std::string name;
    std::string x, y, t;
    int line = 0;
};

struct SurfaceData {
    FieldHandle field;
    std::shared_ptr<WeierstrassModel> model;
    CurveHandle curve;
    std::vector<MapSpec> maps;

    const MapSpec& map_spec(const std::string& name) const {
        for (const auto& m : maps) {
            if (m.name == name) return m;
        }
        throw Error(ErrorKind::InputError, "no map named " + name);
    }
    SurfaceMap build_map(const std::string& name) const {
        const MapSpec& m = map_spec(name);
        return detail::at_line(m.line, [&] {
            return SurfaceMap::from_expressions(curve, parse_expression(m.x, "xyt", field),
                                                parse_expression(m.y, "xyt", field),
                                                parse_expression(m.t, "t", field));
        });
    }
};

inline SurfaceData parse_surface(const std::string& text) {
    const auto lines = detail::content_lines(text);
    int order = 1;
    std::optional<std::pair<int, std::string>> a_src;
    std::optional<std::pair<int, std::string>> b_src;
    std::vector<MapSpec> maps;
    std::set<std::string> seen;
    for (const auto& l : lines) {
        if (auto name = detail::section_header(l, "map")) {
            if (!seen.insert(*name).second) detail::line_error(l.number, "duplicate map " + *name);
            maps.push_back({*name, "", "", "", l.number});
            continue;
        }
        const auto [key, value] = detail::key_value(l);
        if (!maps.empty()) {
            MapSpec& m = maps.back();
            const std::string v = detail::unquote(l, value);
            if (key == "x") {
                m.x = v;
            } else if (key == "y") {
                m.y = v;
            } else if (key == "t") {
                m.t = v;
            } else {
                detail::line_error(l.number, "unknown map key '" + key + "'");
            }
        } else if (key == "field_order") {
            order = detail::parse_int(l, value);
            if (order < 1) detail::line_error(l.number, "field_order must be positive");
        } else if (key == "A") {
            a_src = {{l.number, detail::unquote(l, value)}};
        } else if (key == "B") {
            b_src = {{l.number, detail::unquote(l, value)}};
        } else {
            detail::line_error(l.number, "unknown key '" + key + "'");
        }
    }
    if (!a_src || !b_src) throw Error(ErrorKind::SyntaxError, "surface file needs both A and B");
    for (const auto& m : maps) {
        if (m.x.empty() || m.y.empty() || m.t.empty()) {
            detail::line_error(m.line, "map " + m.name + " needs x, y and t");
        }
    }
    SurfaceData out;
    out.field = make_field(order);
    const UniPoly a = detail::at_line(a_src->first, [&] { return parse_t_poly(a_src->second, out.field); });
    const UniPoly b = detail::at_line(b_src->first, [&] { return parse_t_poly(b_src->second, out.field); });
    out.model = std::make_shared<WeierstrassModel>(out.field, a, b);
    out.curve = make_curve(*out.model);
    out.maps = std::move(maps);
    return out;
}

inline SurfaceData load_surface(const std::string& path) { return parse_surface(detail::read_file(path)); }

// ---------------------------------------------------------------------------

struct ActionSpec {
    std::string name;
    int n = 1;
    int c = 0;
    std::string perm;
    std::vector<std::pair<int, std::string>> anchors;  // (line, text)
    int line = 0;
};

struct GraphData {
    ConfigHandle config;
    std::vector<ActionSpec> actions;

    const ActionSpec& action_spec(const std::string& name) const {
        for (const auto& a : actions) {
            if (a.name == name) return a;
        }
        throw Error(ErrorKind::InputError, "no action named " + name);
    }
};

/// Cycle notation over vertex names, e.g. "(a1 a2)(b1 b2)"; "()" or "" is the identity.
inline Permutation parse_permutation(const CurveConfig& g, std::string_view src) {
    Permutation p = identity_permutation(g.size());
    std::vector<bool> used(static_cast<std::size_t>(g.size()), false);
    std::size_t i = 0;
    auto ws = [&] {
        while (i < src.size() && std::isspace(static_cast<unsigned char>(src[i]))) ++i;
    };
    ws();
    while (i < src.size()) {
        if (src[i] != '(') throw Error(ErrorKind::SyntaxError, "permutation: expected '(' at column " + std::to_string(i + 1));
        ++i;
        std::vector<int> cycle;
        while (true) {
            ws();
            if (i >= src.size()) throw Error(ErrorKind::SyntaxError, "permutation: unterminated cycle");
            if (src[i] == ')') {
                ++i;
                break;
            }
            std::size_t e = i;
            while (e < src.size() && !std::isspace(static_cast<unsigned char>(src[e])) && src[e] != ')' && src[e] != '(') ++e;
            const int v = g.vertex(std::string(src.substr(i, e - i)));
            if (used[static_cast<std::size_t>(v)]) {
                throw Error(ErrorKind::InputError, "permutation: vertex " + g.name(v) + " appears twice");
            }
            used[static_cast<std::size_t>(v)] = true;
            cycle.push_back(v);
            i = e;
        }
        for (std::size_t k = 0; k < cycle.size(); ++k) {
            p[static_cast<std::size_t>(cycle[k])] = cycle[(k + 1) % cycle.size()];
        }
        ws();
    }
    return p;
}

inline std::string permutation_to_string(const CurveConfig& g, const Permutation& p) {
    std::string out;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t v = 0; v < p.size(); ++v) {
        if (seen[v] || p[v] == static_cast<int>(v)) continue;
        out += "(";
        for (std::size_t u = v; !seen[u]; u = static_cast<std::size_t>(p[u])) {
            seen[u] = true;
            if (u != v) out += " ";
            out += g.name(static_cast<int>(u));
        }
        out += ")";
    }
    return out.empty() ? "()" : out;
}

/// "s0 @ s0:C1 = 4" (edge point) or "C8 @ C8:free = 1" (synthesized point).
inline Seed parse_anchor(const CurveConfig& g, std::string_view src) {
    const auto at = src.find('@');
    const auto eq = src.rfind('=');
    if (at == std::string_view::npos || eq == std::string_view::npos || eq < at) {
        throw Error(ErrorKind::SyntaxError, "anchor must read 'curve @ point = weight'");
    }
    Seed s;
    s.curve = g.vertex(detail::trim_copy(src.substr(0, at)));
    const std::string point = detail::trim_copy(src.substr(at + 1, eq - at - 1));
    const std::string weight = detail::trim_copy(src.substr(eq + 1));
    const auto colon = point.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::SyntaxError, "anchor point must read 'a:b'");
    const std::string p1 = point.substr(0, colon);
    const std::string p2 = point.substr(colon + 1);
    if (p2 == "free" || p2 == "free1") {
        if (g.vertex(p1) != s.curve) throw Error(ErrorKind::InputError, "free anchor point must lie on the anchor curve");
    } else {
        const int a = g.vertex(p1);
        const int b = g.vertex(p2);
        if (a != s.curve && b != s.curve) throw Error(ErrorKind::InputError, "anchor point " + point + " is not on " + g.name(s.curve));
        if (!g.edge_between(a, b)) throw Error(ErrorKind::InputError, "no edge " + point);
        s.other = a == s.curve ? b : a;
    }
    try {
        std::size_t used = 0;
        s.weight = std::stoi(weight, &used);
        if (used != weight.size()) throw std::invalid_argument(weight);
    } catch (const std::exception&) {
        throw Error(ErrorKind::SyntaxError, "anchor weight must be an integer, got '" + weight + "'");
    }
    return s;
}

inline GraphData parse_graph(const std::string& text) {
    const auto lines = detail::content_lines(text);
    auto cfg = std::make_shared<CurveConfig>();
    GraphData out;
    std::set<std::string> seen;
    for (const auto& l : lines) {
        if (auto name = detail::section_header(l, "action")) {
            if (!seen.insert(*name).second) detail::line_error(l.number, "duplicate action " + *name);
            ActionSpec a;
            a.name = *name;
            a.line = l.number;
            out.actions.push_back(a);
            continue;
        }
        if (out.actions.empty()) {
            std::istringstream words(l.text);
            std::string kw;
            std::vector<std::string> args;
            words >> kw;
            for (std::string w; words >> w;) args.push_back(w);
            detail::at_line(l.number, [&] {
                if (kw == "vertex" && args.size() == 1) {
                    cfg->add_vertex(args[0]);
                } else if (kw == "edge" && (args.size() == 2 || (args.size() == 3 && args[2] == "x2"))) {
                    cfg->add_edge(args[0], args[1], args.size() == 3 ? 2 : 1);
                } else {
                    throw Error(ErrorKind::SyntaxError, "expected 'vertex NAME' or 'edge A B [x2]'");
                }
                return 0;
            });
            continue;
        }
        ActionSpec& a = out.actions.back();
        const auto [key, value] = detail::key_value(l);
        if (key == "n") {
            a.n = detail::parse_int(l, value);
            if (a.n < 1 || a.n > 64) detail::line_error(l.number, "n must lie in 1..64");
        } else if (key == "c") {
            a.c = detail::parse_int(l, value);
        } else if (key == "perm") {
            a.perm = value;
        } else if (key == "anchor") {
            a.anchors.emplace_back(l.number, value);
        } else {
            detail::line_error(l.number, "unknown action key '" + key + "'");
        }
    }
    for (const auto& a : out.actions) {
        detail::at_line(a.line, [&] { return parse_permutation(*cfg, a.perm); });
        for (const auto& [line, src] : a.anchors) detail::at_line(line, [&] { return parse_anchor(*cfg, src); });
    }
    out.config = std::move(cfg);
    return out;
}

inline GraphData load_graph(const std::string& path) { return parse_graph(detail::read_file(path)); }

inline GraphAction build_action(const GraphData& g, const ActionSpec& a) {
    std::vector<Seed> seeds;
    for (const auto& [line, src] : a.anchors) seeds.push_back(parse_anchor(*g.config, src));
    return propagate(g.config, parse_permutation(*g.config, a.perm), a.n, a.c, seeds);
}

inline GraphAction build_action(const GraphData& g, const std::string& name) {
    return build_action(g, g.action_spec(name));
}

}  // namespace k3auto
