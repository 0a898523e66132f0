// fg: command-line surface over the factored-graph library.
//
// Exit codes: 0 success (and "yes" on decision queries), 1 clean "no",
// 2 usage or validation error, 3 size-cap guard.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "factgraph/factgraph.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw fg::ValidationError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out.good()) throw fg::ValidationError("cannot write file: " + path);
    out << text;
}

fg::FormulaDoc load_doc(const std::string& path) { return fg::parse_document(slurp(path)); }

const fg::Formula& pick_formula(const fg::FormulaDoc& doc, const std::string& name) {
    if (!name.empty()) return doc.formula(name);
    if (doc.formulas().size() == 1) return doc.formulas()[0].second;
    throw fg::ValidationError("document has several formulas; pass --formula NAME");
}

int yes_no(bool answer) {
    std::cout << (answer ? "yes" : "no") << "\n";
    return answer ? 0 : 1;
}

void write_compiled(const fg::CompiledInstance& inst, const std::string& base) {
    spit(base + ".fg", fg::to_fg_text(inst.doc));
    spit(base + ".legend", inst.legend_text());
    spit(base + ".query", inst.query_text());
    std::cout << "wrote " << base << ".fg, " << base << ".legend, " << base << ".query\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"succinct graphs as formulas over base graphs"};
    app.require_subcommand(1);

    std::string file, formula_name, tuple_u, tuple_v, src_s, dst_s, member_s, out_base, input;
    std::string engine = "implicit", method = "auto", clique_method = "fpt", format = "edges";
    std::size_t max_vertices = fg::kDefaultVertexCap;
    std::size_t max_states = fg::kDefaultStateCap;
    std::size_t max_steps = 100000;
    std::size_t decomp_cap = 4096;
    std::size_t clique_s = 2;
    bool show_trace = false;

    auto add_doc_opts = [&](CLI::App* cmd) {
        cmd->add_option("file", file, ".fg document")->required();
        cmd->add_option("--formula", formula_name, "formula name (default: the only one)");
    };

    CLI::App* check = app.add_subcommand("check", "parse and report complexity and components");
    add_doc_opts(check);

    CLI::App* mat = app.add_subcommand("materialize", "expand to an explicit graph");
    add_doc_opts(mat);
    mat->add_option("--max-vertices", max_vertices, "vertex cap");
    mat->add_option("--format", format, "edges|dot")->check(CLI::IsMember({"edges", "dot"}));

    CLI::App* adj = app.add_subcommand("adjacent", "is (u, v) an edge?");
    add_doc_opts(adj);
    adj->add_option("--u", tuple_u, "source tuple, e.g. [0,1]")->required();
    adj->add_option("--v", tuple_v, "target tuple")->required();

    CLI::App* nbrs = app.add_subcommand("neighbors", "out-neighbors of a vertex");
    add_doc_opts(nbrs);
    nbrs->add_option("--v", tuple_v, "vertex tuple")->required();

    CLI::App* lf = app.add_subcommand("lfmis", "lexicographically first maximal independent set");
    add_doc_opts(lf);
    lf->add_option("--member", member_s, "query vertex; answer yes/no");
    lf->add_option("--engine", engine, "implicit|materialize")
        ->check(CLI::IsMember({"implicit", "materialize"}));
    lf->add_option("--max-vertices", max_vertices, "vertex cap");

    CLI::App* cl = app.add_subcommand("cliques", "count cliques of size s");
    add_doc_opts(cl);
    cl->add_option("--s", clique_s, "clique size")->required();
    cl->add_option("--method", clique_method, "fpt|naive")->check(CLI::IsMember({"fpt", "naive"}));
    cl->add_option("--max-vertices", max_vertices, "vertex cap (naive)");
    cl->add_option("--decomp-cap", decomp_cap, "decomposition cap (fpt)");

    CLI::App* rc = app.add_subcommand("reach", "directed reachability");
    add_doc_opts(rc);
    rc->add_option("--src", src_s, "source tuple")->required();
    rc->add_option("--dst", dst_s, "target tuple")->required();
    rc->add_option("--method", method, "implicit|explicit|auto")
        ->check(CLI::IsMember({"implicit", "explicit", "auto"}));
    rc->add_option("--max-states", max_states, "BFS state cap");
    rc->add_option("--max-vertices", max_vertices, "vertex cap (explicit)");

    CLI::App* ckov = app.add_subcommand("compile-kov", "compile a .kov instance to reachability");
    ckov->add_option("file", file, ".kov instance")->required();
    ckov->add_option("-o,--output", out_base, "output base path")->required();

    CLI::App* ctm = app.add_subcommand("compile-tm-lfmis", "compile a TM run to an LFMIS query");
    ctm->add_option("file", file, ".tm machine")->required();
    ctm->add_option("--input", input, "input string")->required();
    ctm->add_option("-o,--output", out_base, "output base path")->required();
    ctm->add_option("--max-steps", max_steps, "simulation budget");

    CLI::App* cntm = app.add_subcommand("compile-ntm-reach", "compile an NTM run to reachability");
    cntm->add_option("file", file, ".ntm machine")->required();
    cntm->add_option("--input", input, "input string")->required();
    cntm->add_option("-o,--output", out_base, "output base path")->required();

    CLI::App* sim = app.add_subcommand("simulate-tm", "run a deterministic TM");
    sim->add_option("file", file, ".tm machine")->required();
    sim->add_option("--input", input, "input string")->required();
    sim->add_option("--max-steps", max_steps, "simulation budget");
    sim->add_flag("--trace", show_trace, "print the execution history");

    CLI::App* skov = app.add_subcommand("solve-kov", "brute-force a .kov instance");
    skov->add_option("file", file, ".kov instance")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (check->parsed()) {
            fg::FormulaDoc doc = load_doc(file);
            auto report = [&](const std::string& name, const fg::Formula& f) {
                fg::Complexity c = doc.complexity(f);
                std::vector<std::size_t> dims;
                for (const fg::ComponentTree& ct : fg::components(f)) dims.push_back(ct.dim());
                std::sort(dims.begin(), dims.end());
                std::ostringstream os;
                os << "(n=" << c.n << ", k=" << c.k << "), components=" << dims.size()
                   << ", dims=[";
                for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
                os << "]";
                if (!name.empty()) std::cout << name << ": ";
                std::cout << os.str() << "\n";
            };
            if (!formula_name.empty()) {
                report("", doc.formula(formula_name));
            } else if (doc.formulas().size() == 1) {
                report("", doc.formulas()[0].second);
            } else {
                for (const auto& [name, f] : doc.formulas()) report(name, f);
            }
            return 0;
        }
        if (mat->parsed()) {
            fg::FormulaDoc doc = load_doc(file);
            fg::ExplicitGraph g =
                fg::materialize(fg::FormulaView(doc, pick_formula(doc, formula_name)), max_vertices);
            std::cout << (format == "dot" ? fg::to_dot(g) : fg::to_edge_list(g));
            return 0;
        }
        if (adj->parsed()) {
            fg::FormulaDoc doc = load_doc(file);
            fg::FormulaView view(doc, pick_formula(doc, formula_name));
            return yes_no(view.adjacent(fg::parse_vertex(tuple_u), fg::parse_vertex(tuple_v)));
        }
        if (nbrs->parsed()) {
            fg::FormulaDoc doc = load_doc(file);
            fg::FormulaView view(doc, pick_formula(doc, formula_name));
            for (const fg::FactoredVertex& w : view.out_neighbors(fg::parse_vertex(tuple_v)))
                std::cout << fg::format_vertex(w) << "\n";
            return 0;
        }
        if (lf->parsed()) {
            fg::FormulaDoc doc = load_doc(file);
            fg::FormulaView view(doc, pick_formula(doc, formula_name));
            fg::LfmisEngine eng = engine == "implicit" ? fg::LfmisEngine::Implicit
                                                       : fg::LfmisEngine::Materialize;
            if (!member_s.empty())
                return yes_no(fg::lfmis_member(view, fg::parse_vertex(member_s), eng, max_vertices));
            for (const fg::FactoredVertex& v : fg::lfmis(view, eng, std::nullopt, max_vertices).members)
                std::cout << fg::format_vertex(v) << "\n";
            return 0;
        }
        if (cl->parsed()) {
            fg::FormulaDoc doc = load_doc(file);
            fg::FormulaView view(doc, pick_formula(doc, formula_name));
            fg::CliqueCount c = clique_method == "fpt"
                                    ? fg::count_cliques_fpt(view, clique_s, decomp_cap)
                                    : fg::count_cliques_naive(view, clique_s, max_vertices);
            for (const auto& [dim, count] : c.per_dimension)
                std::cout << "dim " << dim << " " << count << "\n";
            std::cout << "total " << c.total << "\n";
            return 0;
        }
        if (rc->parsed()) {
            fg::FormulaDoc doc = load_doc(file);
            fg::FormulaView view(doc, pick_formula(doc, formula_name));
            fg::FactoredVertex src = fg::parse_vertex(src_s);
            fg::FactoredVertex dst = fg::parse_vertex(dst_s);
            fg::ReachMethod rm = method == "implicit"  ? fg::ReachMethod::Implicit
                                 : method == "explicit" ? fg::ReachMethod::Explicit
                                                        : fg::ReachMethod::Auto;
            if (view.is_vertex(src) && view.is_vertex(dst) && src.size() != dst.size())
                std::cerr << "note: src and dst have different dimensions; no edge crosses "
                             "dimensions\n";
            return yes_no(fg::reach(view, src, dst, rm, max_states, max_vertices));
        }
        if (ckov->parsed()) {
            write_compiled(fg::compile_kov_reach(fg::parse_kov(slurp(file))), out_base);
            return 0;
        }
        if (ctm->parsed()) {
            write_compiled(fg::compile_tm_lfmis(fg::parse_tm(slurp(file)), input, max_steps),
                           out_base);
            return 0;
        }
        if (cntm->parsed()) {
            write_compiled(fg::compile_ntm_reach(fg::parse_ntm(slurp(file)), input), out_base);
            return 0;
        }
        if (sim->parsed()) {
            fg::ExecutionTrace trace = fg::simulate_tm(fg::parse_tm(slurp(file)), input, max_steps);
            std::cout << (trace.accepted ? "accept" : "reject") << " t=" << trace.t << "\n";
            if (show_trace) {
                for (const auto& row : trace.rows) {
                    for (const fg::TraceCell& cell : row) {
                        if (cell.state != "*") std::cout << "[" << cell.state << "]";
                        std::cout << cell.symbol;
                    }
                    std::cout << "\n";
                }
            }
            return 0;
        }
        if (skov->parsed()) return yes_no(fg::solve_kov_brute(fg::parse_kov(slurp(file))));
    } catch (const fg::CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
