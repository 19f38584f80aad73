#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fqm/fqm.hpp"
#include "fqm/io.hpp"

using namespace fqm;
using nlohmann::json;

namespace {

struct Options {
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "json";
    int jobs = 1;
};

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw NotFound("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

// Fixture files named <name>.json in $FQM_FIXTURE_DIR take precedence over built-ins.
std::optional<json> fixture_file(const std::string& name) {
    const char* dir = std::getenv("FQM_FIXTURE_DIR");
    if (!dir) return std::nullopt;
    auto p = std::filesystem::path(dir) / (name + ".json");
    if (!std::filesystem::exists(p)) return std::nullopt;
    return read_json(p.string());
}

PermAction load_group(const std::string& name) {
    if (auto j = fixture_file(name)) {
        std::vector<std::string> gens = j->at("generators");
        return PermAction::from_cycles(j->at("degree").get<int>(), gens);
    }
    return fixtures::group(name);
}

Graph graph_from_json(const json& j, const std::string& name) {
    Graph g{j.at("n").get<int>(), {}, name};
    for (const auto& e : j.at("edges")) {
        int a = e.at(0), b = e.at(1);
        if (a < 0 || b < 0 || a >= g.n || b >= g.n) throw OutOfRange("edge endpoint out of range");
        g.edges.push_back({std::min(a, b), std::max(a, b)});
    }
    return g;
}

json graph_json(const Graph& g) {
    json e = json::array();
    for (auto [a, b] : g.edges) e.push_back({a, b});
    return {{"name", g.name}, {"n", g.n}, {"edges", e}};
}

Graph load_graph(const std::string& name) {
    if (auto j = fixture_file(name)) return graph_from_json(*j, name);
    return fixtures::graph(name);
}

int conductor_for(const PermAction& a, int requested) {
    return requested > 0 ? requested : static_cast<int>(group_exponent(a));
}

json poly_json(const FormPoly& p) {
    json terms = json::array();
    for (const auto& [m, c] : p.terms()) terms.push_back({{"exponents", m}, {"coefficient", io::exact(c)}});
    return terms;
}

struct Pipeline {
    std::vector<IntMatrix> basis;
    std::optional<Coarsening> coarsening;
    FormPoly det;
    FactorizationResult factors;
    std::vector<InvariantForm> forms;
};

Pipeline run_forms(const PermAction& a, int conductor, std::uint64_t seed) {
    Pipeline p;
    p.basis = matrices(basis_forms(a));
    auto tables = structure_tables(p.basis);
    if (!is_commutative(tables)) {
        p.coarsening = coarsen_commutative(p.basis, tables);
        p.basis = p.coarsening->forms;
    }
    p.det = det_poly(p.basis, true);
    p.factors = factor_det(p.basis, p.det, conductor, seed);
    p.forms = invariant_scalar_products(p.basis, p.factors);
    return p;
}

json cmatrix_json(const CMatrix& m) {
    json rows = json::array();
    for (const auto& row : m) {
        json r = json::array();
        for (const auto& v : row) r.push_back(io::exact(v));
        rows.push_back(r);
    }
    return rows;
}

json rat_rows(const std::vector<std::vector<Rat>>& m) {
    json rows = json::array();
    for (const auto& r : m) {
        json row = json::array();
        for (const auto& q : r) row.push_back(io::exact(q));
        rows.push_back(row);
    }
    return rows;
}

json character_table_json(const fixtures::CharacterTable& t) {
    json rows = json::array();
    for (const auto& r : t.rows) {
        json row = json::array();
        for (const auto& v : r) row.push_back(io::exact(v));
        rows.push_back(row);
    }
    return {{"group", t.group},
            {"classes", t.classes},
            {"class_sizes", t.class_sizes},
            {"irreps", t.irreps},
            {"dimensions", t.dimensions()},
            {"rows", rows}};
}

std::vector<Source> parse_sources(const std::string& text) {
    std::vector<Source> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos) throw ParseError("source must be position:phase");
        try {
            out.push_back({std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1))});
        } catch (const std::logic_error&) {
            throw ParseError("bad source " + item);
        }
    }
    if (out.empty()) throw ParseError("no sources given");
    return out;
}

std::string svg_bars(const std::vector<InterferencePoint>& rows) {
    const int w = 8, h = 200;
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w * rows.size() << "\" height=\"" << h << "\">\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        double bar = rows[i].normalized * (h - 10);
        s << "  <rect x=\"" << i * w << "\" y=\"" << h - bar << "\" width=\"" << w - 1 << "\" height=\"" << bar
          << "\" fill=\"" << (rows[i].reachable && rows[i].intensity.is_zero() ? "#c33" : "#36c") << "\"/>\n";
    }
    s << "</svg>\n";
    return s.str();
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw NotFound("cannot write " + o.out);
    f << text;
}

void emit(const Options& o, const json& j) { emit(o, j.dump(2) + "\n"); }

json error_json(const std::string& kind, const std::string& message) {
    return {{"error", {{"kind", kind}, {"message", message}}}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact finite quantum models: orbitals, invariant forms, Born probabilities, relations, dynamics"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--seed", opt.seed, "seed for randomized steps");
    app.add_option("--out", opt.out, "write output to a file");
    app.add_option("--format", opt.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--jobs", opt.jobs, "parallelism hint")->check(CLI::PositiveNumber);

    std::string group_name, graph_name, graph_file, rule_text = "B3/S23", m_text, n_text, sources_text, svg_path,
                                                    relation_file;
    int conductor = 0, component = 0, M = 4, T = 20, X = 0, rule = 30, depth = 0;
    double velocity = 0, step = 0.01;
    bool combine_flag = false, exact_flag = false;

    auto* orb = app.add_subcommand("orbitals", "orbital basis forms of a permutation group");
    orb->add_option("--group", group_name, "fixture group")->required();

    auto* forms = app.add_subcommand("forms", "determinant factorization and invariant forms");
    forms->add_option("--group", group_name, "fixture group")->required();
    forms->add_option("--conductor", conductor, "cyclotomic conductor (default: group exponent)");

    auto* born = app.add_subcommand("born", "Born probability in one invariant component");
    born->add_option("--group", group_name, "fixture group")->required();
    born->add_option("--component", component, "component number (1-based)")->required();
    born->add_option("--m", m_text, "natural state vector")->required();
    born->add_option("--n", n_text, "natural state vector")->required();
    born->add_option("--conductor", conductor, "cyclotomic conductor");
    born->add_flag("--combine-conjugates", combine_flag, "merge Galois-conjugate components");

    auto* rel = app.add_subcommand("relations", "discrete relations and canonical decompositions");
    rel->require_subcommand(1);
    auto* decompose = rel->add_subcommand("decompose", "canonical decomposition");
    auto* rule_opt = decompose->add_option("--rule", rule, "elementary automaton number")->check(CLI::Range(0, 255));
    decompose->add_option("--file", relation_file, "relation JSON file")->excludes(rule_opt);
    decompose->add_option("--depth", depth, "recursion depth into consequences")->check(CLI::Range(0, 4));
    auto* classify = rel->add_subcommand("classify", "census of the 256 elementary automata");
    auto* life = rel->add_subcommand("life", "Game of Life relation and its decomposition");

    auto* portrait = app.add_subcommand("portrait", "phase portrait of a symmetric rule on a graph");
    auto* graph_opt = portrait->add_option("--graph", graph_name, "fixture graph");
    portrait->add_option("--graph-file", graph_file, "graph JSON file")->excludes(graph_opt);
    portrait->add_option("--rule", rule_text, "outer-totalistic rule such as B3/S23");
    portrait->add_option("--group", group_name, "symmetry group (default: automorphisms or matching fixture)");

    auto* pathsum = app.add_subcommand("pathsum", "path-sum amplitudes and interference");
    pathsum->add_option("--M", M, "phase order")->check(CLI::PositiveNumber);
    pathsum->add_option("--T", T, "time steps")->check(CLI::NonNegativeNumber);
    pathsum->add_option("--sources", sources_text, "position:phase list")->required();
    pathsum->add_option("--svg", svg_path, "write a bar chart");

    auto* spacetime = app.add_subcommand("spacetime", "conditional probabilities of the random-walk model");
    spacetime->add_option("--T", T, "final time")->required();
    spacetime->add_option("--X", X, "final position");
    spacetime->add_flag("--exact", exact_flag, "exact conditional probabilities only");
    spacetime->add_option("--v", velocity, "drift for the continuum approximation");
    spacetime->add_option("--step", step, "grid step for the continuum maximum")->check(CLI::PositiveNumber);

    auto* fx = app.add_subcommand("fixtures", "built-in groups, graphs, tables and matrices");
    fx->require_subcommand(1);
    auto* fx_list = fx->add_subcommand("list", "list fixture names");
    std::string fx_name;
    auto* fx_show = fx->add_subcommand("show", "show one fixture");
    fx_show->add_option("name", fx_name, "fixture name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*orb) {
            auto a = load_group(group_name);
            auto orbs = orbitals(a);
            json list = json::array();
            for (const auto& o : orbs) {
                json pairs = json::array();
                for (auto [i, j] : o.pairs) pairs.push_back({i + 1, j + 1});
                list.push_back({{"index", o.index + 1},
                                {"size", o.pairs.size()},
                                {"degree", o.degree},
                                {"pairs", pairs},
                                {"matrix", io::matrix_rows(matrices(basis_forms({o}))[0])}});
            }
            emit(opt, json{{"group", group_name},
                           {"degree", a.degree()},
                           {"order", group_order(a)},
                           {"rank", orbs.size()},
                           {"orbitals", list}});
        } else if (*forms) {
            auto a = load_group(group_name);
            auto p = run_forms(a, conductor_for(a, conductor), opt.seed);
            json fl = json::array();
            for (const auto& f : p.forms) fl.push_back(io::form_json(f));
            json out{{"group", group_name},
                     {"rank", matrices(basis_forms(a)).size()},
                     {"basis_size", p.basis.size()},
                     {"commutative", !p.coarsening.has_value()},
                     {"determinant", poly_json(p.det)},
                     {"factorization", io::factorization_json(p.factors)},
                     {"forms", fl}};
            if (p.coarsening) {
                json groups = json::array();
                for (const auto& g : p.coarsening->groups) {
                    json idx = json::array();
                    for (int i : g) idx.push_back(i + 1);
                    groups.push_back(idx);
                }
                out["coarsening"] = groups;
            }
            emit(opt, out);
        } else if (*born) {
            auto a = load_group(group_name);
            auto p = run_forms(a, conductor_for(a, conductor), opt.seed);
            if (component < 1 || component > static_cast<int>(p.forms.size()))
                throw OutOfRange("component must be between 1 and " + std::to_string(p.forms.size()));
            std::vector<ComponentForm> parts;
            for (const auto& f : p.forms) parts.push_back(make_component(std::to_string(f.label + 1), p.basis, f));
            auto m = io::parse_state(m_text), n = io::parse_state(n_text);
            auto chosen = parts[component - 1];
            bool combined = false;
            try {
                born_probability(chosen, m, n);
            } catch (const IrrationalProbability&) {
                if (!combine_flag) throw;
                chosen = combine_conjugates(parts, component - 1);
                combined = true;
            }
            Rat prob = born_probability(chosen, m, n);
            json coeffs = json::array();
            for (const auto& c : chosen.coeffs) coeffs.push_back(io::exact(c));
            emit(opt, json{{"group", group_name},
                           {"component", component},
                           {"dimension", p.forms[component - 1].dimension},
                           {"combined_conjugates", combined},
                           {"form", coeffs},
                           {"scalar_product", io::exact(scalar_product(chosen, m, n).value)},
                           {"probability", io::exact(prob)},
                           {"probability_float", prob.get_d()}});
        } else if (*decompose) {
            Relation r = relation_file.empty() ? elementary_relation(rule) : [&] {
                auto j = read_json(relation_file);
                return relation_from_bits(j.at("points").get<std::vector<std::string>>(), j.at("q").get<int>(),
                                          j.at("bits").get<std::string>());
            }();
            auto d = canonical_decomposition(r, depth);
            json out{{"relation", io::relation_json(r)}, {"decomposition", io::decomposition_json(d)}};
            if (r.q() == 2 && r.arity() <= 16) out["polynomial"] = to_anf(r).to_string() + "=0";
            if (relation_file.empty()) out["rule"] = rule;
            emit(opt, out);
        } else if (*classify) {
            auto c = classify_elementary();
            emit(opt, json{{"reducible", c.reducible}, {"irreducible", c.irreducible}, {"prime", c.primes}});
        } else if (*life) {
            auto r = life_relation();
            auto pts = r.points();
            auto face = [&](const std::string& drop) {
                auto v = pts;
                v.erase(std::find(v.begin(), v.end(), drop));
                return project(r, v);
            };
            auto r1 = face("x1"), r2 = face("x9");
            emit(opt, json{{"relation", {{"points", pts}, {"q", 2}, {"size", r.count()}}},
                           {"polynomial", to_anf(r).to_string() + "=0"},
                           {"R1", {{"face", r1.points()}, {"size", r1.count()}, {"polynomial", to_anf(r1).to_string()}}},
                           {"R2", {{"face", r2.points()}, {"size", r2.count()}, {"polynomial", to_anf(r2).to_string()}}}});
        } else if (*portrait) {
            if (graph_name.empty() && graph_file.empty()) throw NotFound("give --graph or --graph-file");
            Graph g = graph_file.empty() ? load_graph(graph_name) : graph_from_json(read_json(graph_file), graph_file);
            std::vector<Permutation> gens;
            if (!group_name.empty())
                gens = load_group(group_name).generators();
            else if (graph_name == "torus8")
                gens = fixtures::group("torus8").generators();
            else if (graph_name == "C60")
                gens = fixtures::group("fullereneC60").generators();
            else
                gens = graph_automorphisms(g);
            auto rule_parsed = SymmetricRule::parse(rule_text);
            auto pp = phase_portrait(g, rule_parsed, gens);
            std::vector<int> on_cycle(pp.next.size(), -1);
            for (std::size_t k = 0; k < pp.cycles.size(); ++k)
                for (int o : pp.cycles[k]) on_cycle[o] = static_cast<int>(k);
            if (opt.format == "csv") {
                std::ostringstream s;
                s << "orbit,size,next,cycle,basin\n";
                for (std::size_t k = 0; k < pp.next.size(); ++k)
                    s << k << "," << pp.orbit_size[k] << "," << pp.next[k] << "," << on_cycle[k] << "," << pp.basin_of[k]
                      << "\n";
                emit(opt, s.str());
            } else {
                json orbs = json::array();
                for (std::size_t k = 0; k < pp.next.size(); ++k)
                    orbs.push_back({{"id", k},
                                    {"size", pp.orbit_size[k]},
                                    {"next", pp.next[k]},
                                    {"cycle", on_cycle[k]},
                                    {"basin", pp.basin_of[k]}});
                json cycles = json::array();
                for (std::size_t k = 0; k < pp.cycles.size(); ++k)
                    cycles.push_back({{"orbits", pp.cycles[k]}, {"weight", io::exact(pp.weights[k])}});
                emit(opt, json{{"graph", g.name},
                               {"rule", rule_parsed.to_string()},
                               {"states", pp.states},
                               {"orbit_count", pp.next.size()},
                               {"orbits", orbs},
                               {"cycles", cycles}});
            }
        } else if (*pathsum) {
            auto rows = interference(M, T, parse_sources(sources_text));
            if (!svg_path.empty()) {
                std::ofstream f(svg_path);
                if (!f) throw NotFound("cannot write " + svg_path);
                f << svg_bars(rows);
            }
            if (opt.format == "csv") {
                std::ostringstream s;
                s << "x,intensity,float\n";
                for (const auto& r : rows)
                    s << r.x << "," << (r.intensity.is_rational() ? to_string(r.intensity.rational_value()) : "")
                      << "," << r.intensity.to_complex().real() << "\n";
                emit(opt, s.str());
            } else {
                json pts = json::array();
                for (const auto& r : rows)
                    pts.push_back({{"x", r.x},
                                   {"amplitude", io::exact(r.amplitude)},
                                   {"intensity", io::exact(r.intensity)},
                                   {"reachable", r.reachable},
                                   {"normalized", r.normalized}});
                emit(opt, json{{"M", M}, {"T", T}, {"zeros", exact_zero_positions(rows)}, {"points", pts}});
            }
        } else if (*spacetime) {
            check_point(X, T);
            json slices = json::array();
            for (const auto& s : exact_slice_maxima(X, T)) {
                json row{{"t", s.t}, {"max", io::exact(s.value)}, {"argmax", s.argmax}};
                if (!exact_flag) row["continuum_argmax"] = approx_slice_argmax(s.t, X, T, velocity, step);
                slices.push_back(row);
            }
            json table = json::array();
            for (int t = 0; t <= T; ++t)
                for (int x = -t; x <= t; x += 2)
                    if (std::abs(X - x) <= T - t) {
                        json row{{"t", t}, {"x", x}, {"p", io::exact(conditional_probability(x, t, X, T))}};
                        if (!exact_flag && t > 0 && t < T) row["approx"] = approx_conditional(x, t, X, T, velocity);
                        table.push_back(row);
                    }
            emit(opt, json{{"X", X}, {"T", T}, {"exact_only", exact_flag}, {"slices", slices}, {"conditional", table}});
        } else if (*fx_list) {
            emit(opt, json{{"groups", fixtures::group_names()},
                           {"graphs", fixtures::graph_names()},
                           {"character_tables", {"S3", "A5"}},
                           {"matrices", {"SL23basis", "A2basis", "transformationS3", "tribimaximal"}},
                           {"states", {"glider"}}});
        } else if (*fx_show) {
            const auto& gn = fixtures::group_names();
            const auto& grn = fixtures::graph_names();
            json out;
            if (std::find(gn.begin(), gn.end(), fx_name) != gn.end()) {
                auto a = fixtures::group(fx_name);
                json gens = json::array();
                for (const auto& g : a.generators()) gens.push_back(g.to_string());
                out = {{"group", fx_name}, {"degree", a.degree()}, {"order", group_order(a)}, {"generators", gens}};
                if (fx_name == "S3") out["character_table"] = character_table_json(fixtures::character_table("S3"));
            } else if (std::find(grn.begin(), grn.end(), fx_name) != grn.end()) {
                out = graph_json(fixtures::graph(fx_name));
            } else if (fx_name == "A5") {
                out = {{"character_table", character_table_json(fixtures::character_table("A5"))}};
            } else if (fx_name == "SL23basis" || fx_name == "A2basis") {
                out["matrices"] = json::array();
                for (const auto& m : fx_name == "SL23basis" ? fixtures::sl23_printed_basis() : fixtures::a2_printed_basis())
                    out["matrices"].push_back(io::matrix_rows(m));
            } else if (fx_name == "transformationS3" || fx_name == "tribimaximal") {
                auto m = fx_name == "tribimaximal" ? fixtures::tribimaximal() : fixtures::s3_transformation();
                out = {{"matrix", cmatrix_json(m)}, {"squared_moduli", rat_rows(fixtures::squared_moduli(m))}};
            } else if (fx_name == "glider") {
                out = {{"torus", 8}, {"state", fixtures::glider()}};
            } else {
                throw UnknownFixture("no fixture named " + fx_name);
            }
            emit(opt, out);
        }
    } catch (const Error& e) {
        std::cout << error_json(e.kind(), e.what()).dump(2) << "\n";
        return 1;
    } catch (const json::exception& e) {
        std::cout << error_json("ParseError", e.what()).dump(2) << "\n";
        return 1;
    }
    return 0;
}
