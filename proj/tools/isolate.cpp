// isolate: scripted access to the isolation schemes, checks and solvers.
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "iso/iso.hpp"

using namespace iso;

namespace {

// sysexits.h values
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitNoInput = 66;
constexpr int kExitSoftware = 70;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Flags {
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    std::string out;

    std::string graph, forest, td, tree, weights;
    std::vector<std::string> weight_files;
    std::string kind, problem, mode = "tuples", detector = "brute", segment, terminals, dump;
    unsigned C = kDefaultC;
    std::string alpha = "1/2", M;
    int k = -1, d = -1, boundary = -1, bound = kTreedepthDefaultBound;
    std::uint64_t trials = 200, budget = kSolverDefaultBudget;
    int n = 12, t = 2;
    std::uint64_t W = 12;
};

// Writes to -o when given, otherwise stdout.
template <class F>
void emit(const std::string& path, F&& body) {
    if (path.empty() || path == "-") {
        body(std::cout);
        return;
    }
    std::ofstream o(path);
    if (!o) throw ParseError(ParseErrorKind::io, 0, "cannot write " + path);
    body(o);
}

VertexSet parse_list(const std::string& s) {
    VertexSet r;
    std::string tok;
    std::istringstream in(s);
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        try {
            r.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw UsageError("not a vertex list: '" + s + "'");
        }
    }
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

Graph need_graph(const Flags& f) {
    if (f.graph.empty()) throw UsageError("--graph is required");
    return read_graph_file(f.graph);
}

// Supplied forest, or an exact one.
EliminationForest forest_for(const Flags& f, const Graph& g) {
    if (!f.forest.empty()) {
        auto ef = read_forest_file(f.forest);
        validate_elim_forest(g, ef);
        return ef;
    }
    return treedepth_exact(g, std::max(f.bound, g.n())).forest;
}

bool is_hc_kind(const std::string& k) {
    return k == "general" || k == "treewidth" || k == "separable" || k == "parametric";
}

SchemeParams scheme_params(const Flags& f, const Graph& g) {
    SchemeParams sp;
    sp.C = f.C;
    sp.alpha = parse_rational(f.alpha);
    if (!f.M.empty()) sp.M = parse_bignat(f.M);
    sp.k = f.k;
    if (f.kind == "treewidth" && sp.k < 1) {
        int w = f.td.empty() ? treewidth_upper_bound(g) : validate_tree_decomposition(g, read_tree_decomposition_file(f.td));
        sp.k = std::max(w, 1);
    }
    return sp;
}

// seed -> weight function for the chosen kind
WeightSampler sampler_for(const Flags& f, const Graph& g) {
    if (is_hc_kind(f.kind)) {
        HcKind kind = parse_hc_kind(f.kind);
        SchemeParams sp = scheme_params(f, g);
        if (kind == HcKind::parametric && !sp.M) throw UsageError("--kind parametric needs --M");
        hc_plan(kind, g.n(), sp); // reject bad parameters before sampling
        return [kind, sp, &g](std::uint64_t s) { return hc_scheme_sample(kind, g, sp, s); };
    }
    if (f.kind == "mis-det" || f.kind == "mis-rand" || f.kind == "matching-det" || f.kind == "matching-rand") {
        auto ef = std::make_shared<EliminationForest>(forest_for(f, g));
        if (f.kind == "mis-det") return [ef, &g](std::uint64_t) { return mis_det_weights(g, *ef); };
        if (f.kind == "matching-det") return [ef, &g](std::uint64_t) { return matching_det_weights(g, *ef); };
        if (f.kind == "matching-rand") return [ef, &g](std::uint64_t s) { return matching_rand_weights(g, *ef, s); };
        int d = f.d > 0 ? f.d : std::max(ef->height(), 1);
        int n = std::max(g.n(), 2);
        return [ef, &g, d, n](std::uint64_t s) { return apply_levels(mis_rand_weights(n, d, s), g, *ef); };
    }
    throw UsageError("unknown --kind '" + f.kind + "'");
}

int cmd_scheme(const Flags& f) {
    Graph g = need_graph(f);
    WeightFunction w = sampler_for(f, g)(f.seed);
    emit(f.out, [&](std::ostream& o) { write_weights(o, w); });
    return 0;
}

int cmd_verify(const Flags& f) {
    Graph g = need_graph(f);
    Problem p = parse_problem(f.problem);
    Family fam = enumerate_family(p, g, parse_list(f.terminals));
    if (!f.weights.empty()) {
        WeightFunction w = read_weights_file(f.weights);
        bool ok = is_isolating(w, fam);
        emit(f.out, [&](std::ostream& o) { o << "isolating=" << (ok ? "yes" : "no") << " family=" << fam.size() << '\n'; });
        return ok ? 0 : 1;
    }
    WeightSampler s = sampler_for(f, g);
    TrialReport r = success_rate(fam, s, f.trials, f.seed, f.jobs, f.kind, f.graph);
    emit(f.out, [&](std::ostream& o) { o << r << '\n'; });
    return 0;
}

int cmd_rank(const Flags& f) {
    if (f.boundary < 2 || f.boundary % 2) throw UsageError("--boundary must be an even number >= 2");
    auto cm = compat_matrix(f.boundary);
    std::size_t r = gf2_rank(cm.bits), want = std::size_t{1} << (f.boundary / 2 - 1);
    if (!f.dump.empty()) emit(f.dump, [&](std::ostream& o) { write_bit_matrix(o, cm.bits); });
    emit(f.out, [&](std::ostream& o) { o << "rank=" << r << " expected=" << want << (r == want ? " OK" : " MISMATCH") << '\n'; });
    return r == want ? 0 : 1;
}

int cmd_lb(const Flags& f) {
    LbKind kind = parse_lb_kind(f.kind);
    std::vector<WeightFunction> ws;
    if (!f.weight_files.empty()) {
        for (auto& p : f.weight_files) ws.push_back(read_weights_file(p));
    } else {
        if (f.n < 1 || f.t < 1 || f.W < 1) throw UsageError("--n, --t and --W must be positive");
        for (int i = 0; i < f.t; ++i) {
            RandomStream rs(f.seed, "lb-weights/" + std::to_string(i));
            std::vector<BigNat> w;
            for (int j = 0; j < f.n; ++j) w.push_back(BigNat(rs.uniform(1, f.W)));
            ws.push_back(plain_weights(is_edge_kind(kind) ? Domain::edge : Domain::vertex, std::move(w)));
        }
    }
    LbInstance inst = build_lb_instance(kind, ws);
    LbVerdict v = verify_lb_instance(inst, ws);
    if (!f.out.empty()) write_lb_instance(f.out, inst);
    auto list = [](const VertexSet& s) {
        std::string r;
        for (int x : s) r += (r.empty() ? "" : ",") + std::to_string(x);
        return r;
    };
    std::cout << "kind=" << to_string(kind) << " k=" << inst.k << " n=" << inst.graph.n() << " m=" << inst.graph.m()
              << " optA=" << list(inst.opt_a) << " optB=" << list(inst.opt_b) << " verdict=" << (v.ok ? "ok" : "FAIL");
    if (!v.ok) std::cout << " diagnosis=\"" << v.diagnosis << '"';
    std::cout << '\n';
    return v.ok ? 0 : 1;
}

int cmd_solve(const Flags& f) {
    Graph g = need_graph(f);
    SolveOptions opt;
    opt.kind = parse_hc_kind(f.kind.empty() ? "parametric" : f.kind);
    Flags ff = f;
    ff.kind = to_string(opt.kind);
    opt.params = scheme_params(ff, g);
    if (f.mode == "tuples") opt.mode = SolveMode::tuples;
    else if (f.mode == "seeds") opt.mode = SolveMode::seeds;
    else throw UsageError("--mode must be tuples or seeds");
    opt.budget = f.budget;
    opt.seed = f.seed;
    opt.jobs = f.jobs;
    std::optional<ParityDetector> parity;
    if (f.detector == "parity") opt.detector = &parity.emplace(g);
    else if (f.detector != "brute") throw UsageError("--detector must be brute or parity");
    SolveResult r = solve_hc_deterministic(g, opt);
    emit(f.out, [&](std::ostream& o) {
        o << "verdict=" << to_string(r.verdict) << " tried=" << r.functions_tried << " family=" << r.family_size;
        if (r.weight) o << " weight=" << *r.weight;
        if (!r.primes.empty()) {
            o << " primes=";
            for (std::size_t i = 0; i < r.primes.size(); ++i) o << (i ? "," : "") << r.primes[i];
        }
        o << '\n';
    });
    switch (r.verdict) {
    case Verdict::hamiltonian: return 0;
    case Verdict::not_hamiltonian: return 1;
    default: return 2;
    }
}

int cmd_gef(const Flags& f) {
    Graph g = need_graph(f);
    Gef gef = build_gef(g);
    GefCheck c = check_gef(g, gef);
    emit(f.out, [&](std::ostream& o) { write_gef(o, gef); });
    std::cout << "check=" << (c.ok ? "ok" : "FAIL") << " max_children=" << c.max_children
              << " topological_height=" << c.topological_height << " bound=" << c.height_bound << " height=" << gef.height()
              << '\n';
    for (auto& s : c.failures) std::cout << "failure: " << s << '\n';
    return c.ok ? 0 : 1;
}

int cmd_split(const Flags& f) {
    if (f.tree.empty()) throw UsageError("--tree is required");
    if (f.segment.empty()) throw UsageError("--segment is required");
    Graph t = read_graph_file(f.tree);
    VertexSet seg = parse_list(f.segment);
    auto parts = split_segment(t, seg);
    emit(f.out, [&](std::ostream& o) {
        o << "segment edges=" << segment_size(t, seg) << " parts=" << parts.size() << '\n';
        for (std::size_t i = 0; i < parts.size(); ++i) {
            o << "part " << i << " edges=" << segment_size(t, parts[i]) << " boundary=";
            auto bd = segment_boundary(t, parts[i]);
            for (std::size_t j = 0; j < bd.size(); ++j) o << (j ? "," : "") << bd[j];
            o << " vertices=";
            for (std::size_t j = 0; j < parts[i].size(); ++j) o << (j ? "," : "") << parts[i][j];
            o << '\n';
        }
    });
    return 0;
}

int cmd_treedepth(const Flags& f) {
    Graph g = need_graph(f);
    auto r = treedepth_exact(g, f.bound);
    if (!f.out.empty()) emit(f.out, [&](std::ostream& o) { write_forest(o, r.forest); });
    std::cout << "treedepth=" << r.depth << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"isolate: isolation schemes, verification and solvers"};
    app.require_subcommand(1);
    Flags f;

    auto common = [&](CLI::App* c) {
        c->add_option("--seed", f.seed, "root seed for every random stream")->envname("ISO_SEED");
        c->add_option("-o,--output", f.out, "output path (stdout when omitted)");
    };
    auto scheme_flags = [&](CLI::App* c) {
        c->add_option("--kind", f.kind,
                      "general | treewidth | separable | parametric | mis-det | mis-rand | matching-det | matching-rand");
        c->add_option("--graph", f.graph, "graph in .gr format")->check(CLI::ExistingFile);
        c->add_option("--forest", f.forest, "elimination forest (.ef); exact treedepth when omitted")->check(CLI::ExistingFile);
        c->add_option("--td", f.td, "tree decomposition (.td) giving the width for --kind treewidth")->check(CLI::ExistingFile);
        c->add_option("--C", f.C, "exponent constant of the HC prime ranges");
        c->add_option("--alpha", f.alpha, "separator degree for --kind separable, as p/q or decimal");
        c->add_option("--k", f.k, "width bound for --kind treewidth");
        c->add_option("--M", f.M, "prime range for --kind parametric");
        c->add_option("--d", f.d, "depth bound for --kind mis-rand");
        c->add_option("--bound", f.bound, "largest n for exact treedepth");
    };

    auto* scheme = app.add_subcommand("scheme", "sample one weight function and write it as TSV");
    common(scheme);
    scheme_flags(scheme);

    auto* verify = app.add_subcommand("verify", "measure the isolation rate of a scheme on a graph");
    common(verify);
    scheme_flags(verify);
    verify->add_option("--problem", f.problem, "hc | mis | mm (maximum matching) | steiner | mmm (minimum maximal matching)")->required();
    verify->add_option("--trials", f.trials, "number of sampled weight functions");
    verify->add_option("--jobs", f.jobs, "worker threads for the trial loop");
    verify->add_option("--terminals", f.terminals, "comma-separated terminals for min-steiner");
    verify->add_option("--weights", f.weights, "check one weight TSV instead of sampling")->check(CLI::ExistingFile);

    auto* rank = app.add_subcommand("rank", "rank of the compatibility matrix over GF(2)");
    common(rank);
    rank->add_option("--boundary", f.boundary, "boundary size |X| (even, at most 12)")->required();
    rank->add_option("--dump", f.dump, "write the matrix in hex form to this path");

    auto* lb = app.add_subcommand("lb", "build a lower-bound instance that defeats a tuple of weight functions");
    common(lb);
    lb->add_option("--kind", f.kind, "mis | steiner | mmm | hc")->required();
    lb->add_option("--weights", f.weight_files, "weight TSV files (repeatable); random when omitted")->check(CLI::ExistingFile);
    lb->add_option("--n", f.n, "universe size for random weights");
    lb->add_option("--t", f.t, "number of random weight functions");
    lb->add_option("--W", f.W, "random weights are uniform in [1, W]");

    auto* solve = app.add_subcommand("solve-hc", "decide Hamiltonicity through isolation and a detector");
    common(solve);
    solve->add_option("--graph", f.graph, "graph in .gr format")->check(CLI::ExistingFile);
    solve->add_option("--kind", f.kind, "HC scheme (default parametric)");
    solve->add_option("--mode", f.mode, "tuples (exhaustive, default) | seeds");
    solve->add_option("--budget", f.budget, "maximum number of weight functions tried");
    solve->add_option("--detector", f.detector, "brute (default) | parity");
    solve->add_option("--jobs", f.jobs, "worker threads");
    solve->add_option("--C", f.C, "exponent constant of the HC prime ranges");
    solve->add_option("--alpha", f.alpha, "separator degree for --kind separable");
    solve->add_option("--k", f.k, "width bound for --kind treewidth");
    solve->add_option("--td", f.td, "tree decomposition giving the width")->check(CLI::ExistingFile);
    solve->add_option("--M", f.M, "prime range for --kind parametric (default 11)");

    auto* gef = app.add_subcommand("gef", "build and check a generalized elimination forest");
    common(gef);
    gef->add_option("--graph", f.graph, "graph in .gr format")->check(CLI::ExistingFile);

    auto* split = app.add_subcommand("split", "split a tree segment into at most five halves");
    common(split);
    split->add_option("--tree", f.tree, "tree in .gr format")->check(CLI::ExistingFile);
    split->add_option("--segment", f.segment, "comma-separated vertices of the segment");

    auto* td = app.add_subcommand("treedepth", "exact treedepth and an optimal elimination forest");
    common(td);
    td->add_option("--graph", f.graph, "graph in .gr format")->check(CLI::ExistingFile);
    td->add_option("--bound", f.bound, "refuse graphs with more vertices than this");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        // missing files are file errors, everything else is usage
        return e.get_name() == "ValidationError" && std::string(e.what()).find("does not exist") != std::string::npos
                   ? kExitNoInput
                   : kExitUsage;
    }

    try {
        if (*scheme) return cmd_scheme(f);
        if (*verify) return cmd_verify(f);
        if (*rank) return cmd_rank(f);
        if (*lb) return cmd_lb(f);
        if (*solve) return cmd_solve(f);
        if (*gef) return cmd_gef(f);
        if (*split) return cmd_split(f);
        if (*td) return cmd_treedepth(f);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "file error: " << e.what() << '\n';
        return kExitNoInput;
    } catch (const PreconditionError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitData;
    } catch (const SizeRefused& e) {
        std::cerr << "refused: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSoftware;
    }
    return kExitUsage;
}
