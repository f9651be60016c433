#pragma once

// Reports shared by the command-line tool and the tests. Every report is
// built once as an ordered JSON document; the plain-text form is rendered
// from the same document so both outputs carry identical data.

#include <sstream>
#include <string>
#include <tuple>

#include <json.hpp>

#include "io.hpp"
#include "lattice.hpp"

namespace k3auto {

using Json = nlohmann::ordered_json;

/// "1", "zeta^k", or the plain number when it is not a root of unity.
inline std::string zeta_power_string(const CycloNum& c, const FieldHandle& field) {
    const auto k = as_zeta_power(c, field);
    if (!k) return c.to_string();
    return *k == 0 ? "1" : "zeta^" + std::to_string(*k);
}

// ---------------------------------------------------------------------------
// Surfaces and maps

inline Json classify_report(const SurfaceData& s) {
    const FiberInventory inv = classify_all(*s.model);
    Json j;
    j["field_order"] = s.field ? s.field->order() : 1;
    j["A"] = to_string(s.model->a(), 't');
    j["B"] = to_string(s.model->b(), 't');
    j["discriminant"] = to_string(s.model->discriminant(), 't');
    Json fibers = Json::array();
    for (const auto& f : inv.fibers) {
        Json e;
        e["place"] = f.place.to_string();
        e["type"] = f.type.name();
        e["vA"] = valuation_to_string(f.va);
        e["vB"] = valuation_to_string(f.vb);
        e["vDelta"] = valuation_to_string(f.vd);
        e["euler"] = f.euler();
        e["multiplicity"] = f.multiplicity;
        fibers.push_back(e);
    }
    j["fibers"] = fibers;
    j["euler_total"] = inv.euler_total;
    j["is_k3"] = inv.euler_total == 24;
    return j;
}

inline std::string classify_text(const Json& j) {
    std::ostringstream out;
    out << "surface y^2 = x^3 + (" << j["A"].get<std::string>() << ")*x + (" << j["B"].get<std::string>() << ")\n";
    out << "discriminant " << j["discriminant"].get<std::string>() << "\n";
    out << "place | type | vA vB vDelta | euler | multiplicity\n";
    for (const auto& f : j["fibers"]) {
        out << f["place"].get<std::string>() << " | " << f["type"].get<std::string>() << " | "
            << f["vA"].get<std::string>() << " " << f["vB"].get<std::string>() << " " << f["vDelta"].get<std::string>()
            << " | " << f["euler"].get<int>() << " | " << f["multiplicity"].get<int>() << "\n";
    }
    out << "euler_total = " << j["euler_total"].get<int>() << "\n";
    out << "is_k3 = " << (j["is_k3"].get<bool>() ? "yes" : "no") << "\n";
    return out.str();
}

/// Report for a named map; "well_defined" false means the residual is nonzero.
inline Json check_map_report(const SurfaceData& s, const std::string& name) {
    const SurfaceMap m = s.build_map(name);
    Json j;
    j["map"] = name;
    j["x"] = to_string(m.u());
    j["y"] = to_string(m.v());
    j["t"] = to_expression(m.w()).to_string();
    const FieldElement residual = morphism_residual(m);
    j["well_defined"] = residual.is_zero();
    if (!residual.is_zero()) {
        j["residual"] = to_string(residual);
        return j;
    }
    const auto amb = ambient_scalar(m);
    j["ambient_scalar"] = amb ? zeta_power_string(*amb, s.field) : std::string("none");
    const CycloNum w = omega_factor(m);
    const auto wk = as_zeta_power(w, s.field);
    j["omega_factor"] = zeta_power_string(w, s.field);
    const int field_order = s.field ? s.field->order() : 1;
    const int omega_order = wk ? zeta_power_order(field_order, *wk) : 0;
    if (wk) {
        j["omega_order"] = omega_order;
    } else {
        j["omega_order"] = nullptr;
    }
    const int ord = order(m).value_or(0);
    if (ord > 0) {
        j["order"] = ord;
    } else {
        j["order"] = nullptr;
    }
    j["primitive"] = ord > 0 && ord == omega_order;
    j["symplectic"] = w.is_one();
    return j;
}

inline std::string check_map_text(const Json& j) {
    std::ostringstream out;
    auto yes_no = [](bool b) { return b ? "yes" : "no"; };
    out << "map " << j["map"].get<std::string>() << "\n";
    out << "(x, y, t) -> (" << j["x"].get<std::string>() << ", " << j["y"].get<std::string>() << ", "
        << j["t"].get<std::string>() << ")\n";
    out << "well_defined = " << yes_no(j["well_defined"].get<bool>()) << "\n";
    if (!j["well_defined"].get<bool>()) {
        out << "residual = " << j["residual"].get<std::string>() << "\n";
        return out.str();
    }
    out << "ambient_scalar = " << j["ambient_scalar"].get<std::string>() << "\n";
    out << "omega_factor = " << j["omega_factor"].get<std::string>() << "\n";
    out << "order = " << (j["order"].is_null() ? std::string("> 64") : std::to_string(j["order"].get<int>())) << "\n";
    out << "primitive = " << yes_no(j["primitive"].get<bool>()) << "\n";
    out << "symplectic = " << yes_no(j["symplectic"].get<bool>()) << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Graph actions

inline Json action_report(const GraphAction& a, const std::string& name) {
    const CurveConfig& g = *a.config();
    const FixedLocusCensus c = census(a);
    Json j;
    j["action"] = name;
    j["n"] = a.n();
    j["c"] = a.c();
    j["perm"] = permutation_to_string(g, a.pi());
    j["order"] = a.order();
    j["N"] = c.isolated_points;
    j["k"] = c.fixed_curves;
    j["fixed_curves"] = c.curves;
    Json pts = Json::array();
    for (const auto& p : c.points) {
        Json e;
        e["location"] = p.location;
        e["kind"] = to_string(p.kind);
        e["weights"] = p.weights;
        pts.push_back(e);
    }
    j["points"] = pts;
    Json stable = Json::array();
    for (int v = 0; v < g.size(); ++v) {
        if (a.state(v) != CurveState::Stable) continue;
        Json e;
        e["curve"] = g.name(v);
        Json ws = Json::array();
        for (int p : a.points_on(v)) ws.push_back(a.point_name(p) + "=" + std::to_string(*a.weight(v, p)));
        e["weights"] = ws;
        stable.push_back(e);
    }
    j["rotating_curves"] = stable;
    return j;
}

inline std::string action_text(const Json& j) {
    std::ostringstream out;
    out << "action " << j["action"].get<std::string>() << ": n = " << j["n"].get<int>() << ", c = " << j["c"].get<int>()
        << ", order " << j["order"].get<int>() << "\n";
    out << "perm " << j["perm"].get<std::string>() << "\n";
    out << "N = " << j["N"].get<int>() << ", k = " << j["k"].get<int>() << "\n";
    for (const auto& c : j["fixed_curves"]) out << "  fixed-curve " << c.get<std::string>() << "\n";
    for (const auto& p : j["points"]) {
        out << "  " << p["kind"].get<std::string>() << " " << p["location"].get<std::string>();
        if (!p["weights"].get<std::string>().empty()) out << " " << p["weights"].get<std::string>();
        out << "\n";
    }
    for (const auto& s : j["rotating_curves"]) {
        out << "  rotating " << s["curve"].get<std::string>();
        for (const auto& w : s["weights"]) out << " " << w.get<std::string>();
        out << "\n";
    }
    return out.str();
}

inline Json enumerate_report(const std::vector<ActionClass>& classes, int n, int c,
                             const std::optional<CensusFilter>& filter) {
    Json j;
    j["n"] = n;
    j["c"] = c;
    if (filter) {
        j["filter"] = Json::array({filter->isolated_points, filter->fixed_curves});
    } else {
        j["filter"] = nullptr;
    }
    j["classes"] = classes.size();
    Json reps = Json::array();
    for (std::size_t i = 0; i < classes.size(); ++i) {
        Json r = action_report(classes[i].representative, "class" + std::to_string(i + 1));
        r["members"] = classes[i].members;
        reps.push_back(r);
    }
    j["representatives"] = reps;
    return j;
}

inline std::string enumerate_text(const Json& j) {
    std::ostringstream out;
    out << "enumerate n = " << j["n"].get<int>() << ", c = " << j["c"].get<int>();
    if (!j["filter"].is_null()) out << ", filter N = " << j["filter"][0].get<int>() << ", k = " << j["filter"][1].get<int>();
    out << "\n";
    out << "classes = " << j["classes"].get<std::size_t>() << "\n";
    for (const auto& r : j["representatives"]) {
        out << "\n" << action_text(r);
        out << "  members " << r["members"].get<int>() << "\n";
    }
    return out.str();
}

/// Graphviz export. Fixed curves filled grey, mobile curves white, stable
/// curves with a bold outline; fixed points label their edge (weights at the
/// two ends, "swap" for swap-points) or hang off their curve as point nodes.
inline std::string to_dot(const GraphAction& a, const std::string& name) {
    const CurveConfig& g = *a.config();
    std::vector<int> order(static_cast<std::size_t>(g.size()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return g.name(x) < g.name(y); });
    const FixedLocusCensus c = census(a);

    std::ostringstream out;
    out << "graph \"" << name << "\" {\n";
    out << "  label=\"" << name << ": n = " << a.n() << ", c = " << a.c() << ", N = " << c.isolated_points
        << ", k = " << c.fixed_curves << "\";\n";
    out << "  node [shape=ellipse, style=filled, fillcolor=white];\n";
    for (int v : order) {
        out << "  \"" << g.name(v) << "\"";
        switch (a.state(v)) {
        case CurveState::Fixed: out << " [fillcolor=grey, penwidth=2]"; break;
        case CurveState::Stable: out << " [penwidth=2]"; break;
        case CurveState::Mobile: break;
        }
        out << ";\n";
    }
    struct Line {
        std::string a, b, attrs;
    };
    std::vector<Line> lines;
    for (int e = 0; e < static_cast<int>(g.edges().size()); ++e) {
        const auto& ed = g.edge(e);
        std::string x = g.name(ed.a);
        std::string y = g.name(ed.b);
        int vx = ed.a;
        int vy = ed.b;
        if (y < x) {
            std::swap(x, y);
            std::swap(vx, vy);
        }
        std::vector<std::string> attrs;
        if (ed.multiplicity == 2) attrs.push_back("style=bold, label=\"x2\"");
        if (const auto p = a.edge_point(vx, vy)) {
            attrs.push_back("color=red");
            if (a.points()[static_cast<std::size_t>(*p)].kind == PointKind::Swap) {
                attrs.push_back("xlabel=\"swap\"");
            } else {
                attrs.push_back("taillabel=\"" + std::to_string(*a.weight(vx, *p)) + "\"");
                attrs.push_back("headlabel=\"" + std::to_string(*a.weight(vy, *p)) + "\"");
            }
        }
        std::string joined;
        for (const auto& s : attrs) joined += (joined.empty() ? "" : ", ") + s;
        lines.push_back({x, y, joined});
    }
    for (int i = 0; i < static_cast<int>(a.points().size()); ++i) {
        const auto& p = a.points()[static_cast<std::size_t>(i)];
        if (p.kind != PointKind::Free) continue;
        const std::string pn = a.point_name(i);
        out << "  \"" << pn << "\" [shape=point, color=red];\n";
        lines.push_back({g.name(p.curves[0]), pn,
                         "color=red, style=dashed, taillabel=\"" + std::to_string(*a.weight(p.curves[0], i)) + "\""});
    }
    std::sort(lines.begin(), lines.end(), [](const Line& x, const Line& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
    for (const auto& l : lines) {
        out << "  \"" << l.a << "\" -- \"" << l.b << "\"";
        if (!l.attrs.empty()) out << " [" << l.attrs << "]";
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Lattices

inline std::string rational_string(const Rational& r) { return rational_to_string(r); }

inline Json lattice_report(const GramMatrix& g, const std::string& label) {
    const DiscriminantData d = discriminant_data(g);
    Json j;
    j["lattice"] = label;
    j["dimension"] = g.size();
    j["rank"] = d.rank;
    j["signature"] = Json::array({d.sig.positive, d.sig.negative});
    j["radical"] = d.sig.zero;
    j["abs_det"] = d.abs_det.str();
    Json factors = Json::array();
    for (const auto& f : d.form.invariant_factors) factors.push_back(f.str());
    j["invariant_factors"] = factors;
    Json q = Json::array();
    for (const auto& v : d.form.q) q.push_back(rational_string(v));
    j["q"] = q;
    Json b = Json::array();
    for (const auto& row : d.form.b) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(rational_string(v));
        b.push_back(r);
    }
    j["b"] = b;
    return j;
}

inline std::string lattice_text(const Json& j) {
    std::ostringstream out;
    auto join = [](const Json& arr) {
        std::string s;
        for (const auto& v : arr) s += (s.empty() ? "" : ", ") + v.get<std::string>();
        return "(" + s + ")";
    };
    out << "lattice " << j["lattice"].get<std::string>() << "\n";
    out << "dimension = " << j["dimension"].get<std::size_t>() << "\n";
    out << "rank = " << j["rank"].get<int>() << "\n";
    out << "signature = (" << j["signature"][0].get<int>() << ", " << j["signature"][1].get<int>() << ")\n";
    out << "abs_det = " << j["abs_det"].get<std::string>() << "\n";
    out << "invariant_factors = " << join(j["invariant_factors"]) << "\n";
    out << "q (mod 2) = " << join(j["q"]) << "\n";
    for (const auto& row : j["b"]) out << "b (mod 1) " << join(row) << "\n";
    return out.str();
}

}  // namespace k3auto
