// k3auto: command-line front end.
//
// Exit codes: 0 success, 1 verification failed, 2 input error.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "k3auto/report.hpp"

namespace {

using namespace k3auto;

constexpr int kVerificationFailed = 1;
constexpr int kInputError = 2;

bool is_input_error(ErrorKind k) {
    switch (k) {
    case ErrorKind::SyntaxError:
    case ErrorKind::UnknownVariable:
    case ErrorKind::ZeroDenominator:
    case ErrorKind::InputError:
    case ErrorKind::UnknownLattice:
    case ErrorKind::DegreeBound:
    case ErrorKind::DegenerateModel:
    case ErrorKind::MixedFields:
    case ErrorKind::GroupTooLarge:
    case ErrorKind::NotAGraphAutomorphism:
    case ErrorKind::AnchorOnMobileCurve:
        return true;
    default:
        return false;
    }
}

void emit(const Json& j, bool json, const std::string& text) {
    if (json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << text;
    }
}

void write_dot(const std::string& path, const std::string& dot) {
    if (path.empty()) return;
    if (path == "-") {
        std::cout << dot;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InputError, "cannot write " + path);
    out << dot;
}

/// "name" or "inv(name)".
GraphAction resolve_action(const GraphData& g, const std::string& ref) {
    if (ref.size() > 5 && ref.rfind("inv(", 0) == 0 && ref.back() == ')') {
        return inverse(build_action(g, ref.substr(4, ref.size() - 5)));
    }
    return build_action(g, ref);
}

/// A lattice expression, or a graph file whose curve lattice is used.
GramMatrix resolve_lattice(const std::string& src, std::string& label) {
    if (std::filesystem::is_regular_file(src)) {
        label = std::filesystem::path(src).filename().string();
        return from_curve_config(*load_graph(src).config);
    }
    label = src;
    return parse_lattice_expression(src);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of elliptic K3 automorphisms: fibers, maps, graph actions, lattices."};
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "Emit a JSON document instead of text");

    std::string surface_file;
    std::string graph_file;
    std::string dot_file;

    auto* classify = app.add_subcommand("classify", "Kodaira fiber inventory of a surface file");
    classify->add_option("surface", surface_file, "Surface file")->required();

    std::string map_name;
    auto* check = app.add_subcommand("check-map", "Verify a named map of a surface file");
    check->add_option("surface", surface_file, "Surface file")->required();
    check->add_option("map", map_name, "Map name")->required();

    auto* rig = app.add_subcommand("rigidity", "Weighted actions on a curve configuration");
    rig->require_subcommand(1);
    std::string action_name;
    std::string other_name;
    long long exponent = 1;
    int enum_n = 16;
    int enum_c = 1;
    std::vector<int> filter;
    unsigned jobs = 1;

    auto* census_cmd = rig->add_subcommand("census", "Fixed-locus census of an action");
    census_cmd->add_option("graph", graph_file, "Graph file")->required();
    census_cmd->add_option("action", action_name, "Action name or inv(name)")->required();
    census_cmd->add_option("--dot", dot_file, "Write DOT to this file ('-' for stdout)");

    auto* power_cmd = rig->add_subcommand("power", "Census of a power of an action");
    power_cmd->add_option("graph", graph_file, "Graph file")->required();
    power_cmd->add_option("action", action_name, "Action name or inv(name)")->required();
    power_cmd->add_option("m", exponent, "Exponent")->required();
    power_cmd->add_option("--dot", dot_file, "Write DOT to this file ('-' for stdout)");

    auto* compose_cmd = rig->add_subcommand("compose", "Census of a composite a o b");
    compose_cmd->add_option("graph", graph_file, "Graph file")->required();
    compose_cmd->add_option("a", action_name, "First action (applied last)")->required();
    compose_cmd->add_option("b", other_name, "Second action (applied first)")->required();
    compose_cmd->add_option("--dot", dot_file, "Write DOT to this file ('-' for stdout)");

    auto* enum_cmd = rig->add_subcommand("enumerate", "All consistent actions up to graph automorphisms");
    enum_cmd->add_option("graph", graph_file, "Graph file")->required();
    enum_cmd->add_option("--n", enum_n, "Action order")->check(CLI::Range(1, 64));
    enum_cmd->add_option("--c", enum_c, "Volume exponent");
    enum_cmd->add_option("--filter", filter, "Keep only census N,k")->delimiter(',')->expected(2);
    enum_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1U, 256U));

    auto* lat = app.add_subcommand("lattice", "Lattice invariants");
    lat->require_subcommand(1);
    std::string lat_a;
    std::string lat_b;
    auto* info_cmd = lat->add_subcommand("info", "Rank, signature and discriminant form");
    info_cmd->add_option("lattice", lat_a, "Expression such as U(2)+E8+D4, or a graph file")->required();
    auto* genus_cmd = lat->add_subcommand("genus-equal", "Compare genera of two lattices");
    genus_cmd->add_option("first", lat_a, "Expression or graph file")->required();
    genus_cmd->add_option("second", lat_b, "Expression or graph file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*classify) {
            const Json j = classify_report(load_surface(surface_file));
            emit(j, json, classify_text(j));
            return 0;
        }
        if (*check) {
            const Json j = check_map_report(load_surface(surface_file), map_name);
            emit(j, json, check_map_text(j));
            return j["well_defined"].get<bool>() ? 0 : kVerificationFailed;
        }
        if (*rig) {
            const GraphData g = load_graph(graph_file);
            if (*enum_cmd) {
                std::optional<CensusFilter> f;
                if (!filter.empty()) f = CensusFilter{filter[0], filter[1]};
                const auto classes = enumerate_actions(g.config, enum_n, enum_c, f, jobs);
                const Json j = enumerate_report(classes, enum_n, enum_c, f);
                emit(j, json, enumerate_text(j));
                return 0;
            }
            GraphAction a = resolve_action(g, action_name);
            std::string label = action_name;
            if (*power_cmd) {
                a = power(a, exponent);
                label = action_name + "^" + std::to_string(exponent);
            } else if (*compose_cmd) {
                a = compose_actions(a, resolve_action(g, other_name));
                label = action_name + " o " + other_name;
            }
            const Json j = action_report(a, label);
            emit(j, json, action_text(j));
            write_dot(dot_file, to_dot(a, label));
            return 0;
        }
        if (*lat) {
            std::string la;
            const GramMatrix ga = resolve_lattice(lat_a, la);
            if (*info_cmd) {
                const Json j = lattice_report(ga, la);
                emit(j, json, lattice_text(j));
                return 0;
            }
            std::string lb;
            const GramMatrix gb = resolve_lattice(lat_b, lb);
            const bool eq = genus_equal(nondegenerate_quotient(ga).gram, nondegenerate_quotient(gb).gram);
            Json j;
            j["first"] = la;
            j["second"] = lb;
            j["genus_equal"] = eq;
            emit(j, json, std::string("genus_equal = ") + (eq ? "true" : "false") + "\n");
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_input_error(e.kind()) ? kInputError : kVerificationFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kVerificationFailed;
    }
    return 0;
}
