// Command-line front end: catalog inspection, certificate verification,
// congruence classification, correspondences, and the degeneration graph.
//
// Exit codes: 0 = everything verified (inconclusive results allowed, with
// a banner), 1 = at least one failed verdict, 2 = usage or input error.

#include "heis/cert_io.hpp"
#include "heis/congruence.hpp"
#include "heis/scalar_parser.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

using namespace heis;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

size_t thread_count() {
    size_t n = 0;
    if (const char *env = std::getenv("DEGEN_THREADS")) n = std::strtoul(env, nullptr, 10);
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    return n;
}

RationalFunction parse_constant(const std::string &text, const char *what) {
    try {
        return parse_scalar(text, {});
    } catch (const ParseError &e) {
        throw InputError(std::string(what) + ": " + e.what());
    }
}

/// "λ=1/2" (aliases l, m accepted) -> binding on a canonical type
void apply_params(CanonicalType &T, const std::vector<std::string> &params) {
    for (const auto &p : params) {
        auto eq = p.find('=');
        if (eq == std::string::npos)
            throw InputError("--param expects name=value, got \"" + p + "\"");
        T.parameters[canonical_var_name(p.substr(0, eq))] =
            parse_constant(p.substr(eq + 1), "--param");
    }
}

CanonicalType make_type(const std::string &label, const std::vector<std::string> &params) {
    CanonicalType T(label);
    for (const auto &name : family_parameters(label))
        T.parameters[name] = RationalFunction::variable(name);
    apply_params(T, params);
    try {
        validate_type(T);
    } catch (const MathError &e) {
        throw InputError(e.what());
    }
    return T;
}

std::string product_table(const Algebra &A) {
    std::string out;
    for (size_t i = 1; i <= A.dim(); ++i)
        for (size_t j = 1; j <= A.dim(); ++j)
            for (size_t k = 1; k <= A.dim(); ++k)
                if (!A.c(i, j, k).is_zero())
                    out += "  e" + std::to_string(i) + " e" + std::to_string(j) + " = (" +
                           A.c(i, j, k).str() + ") e" + std::to_string(k) + "\n";
    return out.empty() ? "  (zero multiplication)\n" : out;
}

// ---------------------------------------------------------------------------
// verification runner

struct Check {
    std::string name;
    Verdict verdict;
};

struct FileReport {
    std::string file;
    std::vector<Check> checks;
};

std::set<std::string> coeff_symbols(const ClosedSetPattern &p) {
    std::set<std::string> vars;
    for (const auto &rel : p.linear_relations)
        for (const auto &term : rel) {
            for (const auto &v : term.coeff.num().vars()) vars.insert(v);
            for (const auto &v : term.coeff.den().vars()) vars.insert(v);
        }
    return vars;
}

/// falsification attempts for each blocked target, grid-instantiated over
/// the free symbols of the pattern and the target
void add_falsifier_checks(const ClosedSetPattern &p, size_t trials, uint64_t seed,
                          std::vector<Check> &checks) {
    for (const auto &blocked : p.blocked_targets) {
        std::set<std::string> vars = coeff_symbols(p);
        for (const auto &v : free_symbols(blocked.type)) vars.insert(v);
        std::vector<Exclusion> excl = blocked.excluded;
        for (const auto &src : p.sources)
            excl.insert(excl.end(), src.excluded.begin(), src.excluded.end());
        std::vector<std::map<std::string, RationalFunction>> bindings;
        if (vars.empty())
            bindings.push_back({});
        else
            bindings = grid_bindings(std::vector<std::string>(vars.begin(), vars.end()), excl);
        for (const auto &b : bindings) {
            try {
                ClosedSetPattern q = p.substituted(b);
                CanonicalType T = blocked.type;
                for (auto &[name, expr] : T.parameters) expr = expr.substitute(b);
                validate_type(T);
                checks.push_back(
                    {"falsify " + T.str(), falsify_membership(q, T, trials, seed)});
            } catch (const MathError &) {
                // binding leaves the family; nothing to falsify there
            }
        }
    }
}

FileReport run_degeneration(const std::string &path) {
    auto any = load_certificate(path);
    auto *cert = std::get_if<DegenerationCertificate>(&any);
    if (!cert) throw InputError(path + ": not a degeneration certificate");
    return {path, {{"degeneration " + cert->source.str() + " -> " + cert->target_label,
                    verify_degeneration(*cert)}}};
}

FileReport run_nondegeneration(const std::string &path, size_t trials, uint64_t seed) {
    auto any = load_certificate(path);
    FileReport report{path, {}};
    if (auto *p = std::get_if<ClosedSetPattern>(&any)) {
        for (const auto &src : p->sources)
            report.checks.push_back(
                {"membership " + src.type.str(), verify_membership(*p, src.type)});
        report.checks.push_back({"borel stability", verify_borel_stability(*p)});
        add_falsifier_checks(*p, trials, seed, report.checks);
    } else if (auto *c = std::get_if<InvariantCertificate>(&any)) {
        report.checks.push_back({"invariant (" + to_string(c->kind) + ")",
                                 verify_invariant_cert(*c)});
    } else {
        throw InputError(path + ": not a non-degeneration certificate");
    }
    return report;
}

/// parallel map over files, results in input order; rethrows the first error
template <typename F>
std::vector<FileReport> run_parallel(const std::vector<std::string> &files, F job) {
    std::vector<FileReport> results(files.size());
    std::vector<std::exception_ptr> errors(files.size());
    std::atomic<size_t> next{0};
    size_t workers = std::min(thread_count(), std::max<size_t>(files.size(), 1));
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < files.size(); i = next.fetch_add(1)) {
                try {
                    results[i] = job(files[i]);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    for (auto &t : pool) t.join();
    for (auto &e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

const char *kBanner =
    "=====================================================================\n"
    "  NOTE: inconclusive results are evidence, not proof. The randomized\n"
    "  search found no witness within its budget; nothing was certified.\n"
    "=====================================================================\n";

int report_and_exit_code(const std::vector<FileReport> &reports, const std::string &format) {
    bool any_failed = false, any_inconclusive = false;
    for (const auto &r : reports)
        for (const auto &c : r.checks) {
            if (c.verdict.status == VerdictStatus::Failed) any_failed = true;
            if (c.verdict.status == VerdictStatus::Inconclusive) any_inconclusive = true;
        }
    if (format == "json") {
        json out = json::array();
        for (const auto &r : reports) {
            json checks = json::array();
            for (const auto &c : r.checks) {
                json jc = verdict_to_json(c.verdict);
                jc["name"] = c.name;
                checks.push_back(std::move(jc));
            }
            out.push_back({{"file", r.file}, {"checks", std::move(checks)}});
        }
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto &r : reports) {
            std::cout << r.file << "\n";
            for (const auto &c : r.checks) {
                std::cout << "  " << c.name << ": " << to_string(c.verdict.status) << "\n";
                for (const auto &d : c.verdict.detail) std::cout << "    " << d << "\n";
            }
        }
        std::cout << (any_failed ? "result: FAILED\n" : "result: all checks passed\n");
    }
    if (!any_failed && any_inconclusive && format != "json") std::cout << kBanner;
    return any_failed ? 1 : 0;
}

// ---------------------------------------------------------------------------
// graph build

std::vector<GaussRational> load_grid(const std::string &path) {
    if (path.empty()) return grid_values();
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception &e) {
        throw InputError(path + ": " + e.what());
    }
    std::vector<GaussRational> out;
    if (!j.contains("values") || !j["values"].is_array())
        throw InputError(path + ": expected {\"values\": [scalar, ...]}");
    for (const auto &v : j["values"]) {
        if (!v.is_string()) throw InputError(path + ": grid values must be scalar strings");
        out.push_back(parse_constant(v.get<std::string>(), "grid value").constant_value());
    }
    return out;
}

std::vector<std::string> sorted_json_files(const fs::path &dir) {
    if (!fs::is_directory(dir)) throw InputError("not a directory: " + dir.string());
    std::vector<std::string> out;
    for (const auto &e : fs::directory_iterator(dir))
        if (e.path().extension() == ".json") out.push_back(e.path().string());
    std::sort(out.begin(), out.end());
    return out;
}

int graph_build(const std::string &grid_path, const std::string &out_path,
                const std::string &certs_dir, const std::string &format) {
    std::vector<DegenerationCertificate> degs;
    std::vector<ClosedSetPattern> patterns;
    std::vector<InvariantCertificate> invariants;
    for (const auto &f : sorted_json_files(fs::path(certs_dir) / "deg"))
        degs.push_back(std::get<DegenerationCertificate>(load_certificate(f)));
    for (const auto &f : sorted_json_files(fs::path(certs_dir) / "nondeg")) {
        auto any = load_certificate(f);
        if (auto *p = std::get_if<ClosedSetPattern>(&any))
            patterns.push_back(*p);
        else
            invariants.push_back(std::get<InvariantCertificate>(any));
    }

    DegenGraph G;
    try {
        G = assemble_graph(degs, load_grid(grid_path));
    } catch (const MathError &e) {
        std::cerr << "assembly aborted: " << e.what() << "\n";
        return 1;
    }
    auto violations = consistency_check(G, patterns, invariants);
    DegenGraph R = transitive_reduction(G);

    std::ofstream out(out_path);
    if (!out) throw InputError("cannot write " + out_path);
    if (format == "json")
        out << graph_to_json(R).dump(2) << "\n";
    else
        out << emit_dot(R);

    std::cout << "nodes: " << G.nodes.size() << ", edges: " << G.edges.size()
              << " (reduced: " << R.edges.size() << ")\n";
    std::cout << "maximal candidates (not certified as rigid):\n";
    for (const auto &T : maximal_nodes(G)) std::cout << "  " << T.str() << "\n";
    if (violations.empty()) {
        std::cout << "consistency: clean\n";
        return 0;
    }
    std::cout << "consistency violations:\n";
    for (const auto &v : violations) std::cout << "  " << v << "\n";
    return 1;
}

// ---------------------------------------------------------------------------

MatQ to_constant_matrix(const MatF &M) {
    MatQ R(M.rows(), M.cols());
    for (size_t i = 0; i < M.rows(); ++i)
        for (size_t j = 0; j < M.cols(); ++j) R.at(i, j) = M.at(i, j).constant_value();
    return R;
}

int run(int argc, char **argv) {
    CLI::App app{"Exact-arithmetic toolkit for five-dimensional noncommutative "
                 "Heisenberg algebras: catalog, certificates, congruence "
                 "classification, and the degeneration graph"};
    app.require_subcommand(1);
    std::string format = "text";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    // catalog list | show
    auto *catalog = app.add_subcommand("catalog", "inspect the classified families");
    catalog->require_subcommand(1);
    auto *list = catalog->add_subcommand("list", "all family labels");
    std::string show_type;
    std::vector<std::string> show_params;
    auto *show = catalog->add_subcommand("show", "multiplication table of one family");
    show->add_option("type", show_type, "family label (ZERO, H01..H15)")->required();
    show->add_option("--param", show_params, "parameter binding, e.g. λ=1/2 (aliases l, m)");

    // invariants
    std::string inv_type;
    std::vector<std::string> inv_params;
    auto *inv = app.add_subcommand("invariants", "algebraic invariants of a family member");
    inv->add_option("--catalog", inv_type, "family label")->required();
    inv->add_option("--param", inv_params, "parameter binding, e.g. λ=-1");

    // verify degeneration | nondegeneration
    auto *verify = app.add_subcommand("verify", "check certificate files");
    verify->require_subcommand(1);
    std::vector<std::string> deg_files, nondeg_files;
    auto *vdeg = verify->add_subcommand("degeneration", "parametric-basis certificates");
    vdeg->add_option("files", deg_files, "certificate files")->required();
    size_t trials = 1000;
    uint64_t seed = 0;
    auto *vnon = verify->add_subcommand("nondegeneration", "closed-set and invariant rows");
    vnon->add_option("files", nondeg_files, "certificate files")->required();
    vnon->add_option("--trials", trials, "random falsification attempts per target");
    vnon->add_option("--seed", seed, "falsifier seed");

    // classify
    std::string classify_file;
    auto *cls = app.add_subcommand("classify", "congruence class of a 4x4 matrix");
    cls->add_option("matrix", classify_file, "matrix JSON file")->required();

    // correspond
    std::string corr_to, corr_file;
    auto *corr = app.add_subcommand("correspond", "translate a matrix to its siblings");
    corr->add_option("--to", corr_to, "target formalism")
        ->required()
        ->check(CLI::IsMember({"heisenberg", "ternary"}));
    corr->add_option("matrix", corr_file, "matrix JSON file")->required();

    // graph build
    auto *graph = app.add_subcommand("graph", "degeneration graph");
    graph->require_subcommand(1);
    std::string grid_path, out_path, certs_dir = "certs", graph_format = "dot";
    auto *gbuild = graph->add_subcommand("build", "assemble, check, reduce, emit");
    gbuild->add_option("--grid", grid_path, "grid JSON ({\"values\": [...]})");
    gbuild->add_option("--out", out_path, "output file")->required();
    gbuild->add_option("--certs", certs_dir, "certificate corpus directory");
    gbuild->add_option("--format", graph_format, "graph output format")
        ->check(CLI::IsMember({"dot", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2; // usage errors are exit code 2
    }

    if (list->parsed()) {
        json out = json::array();
        for (const auto &label : catalog_labels()) {
            CanonicalType T = make_type(label, {});
            auto params = family_parameters(label);
            if (format == "json") {
                out.push_back({{"type", label},
                               {"parameters", params},
                               {"derivation_dim", expected_der_dim(T)}});
            } else {
                std::string p;
                for (const auto &name : params) p += (p.empty() ? "" : ", ") + name;
                std::cout << label << (p.empty() ? "" : " (" + p + ")")
                          << "  dim Der = " << expected_der_dim(T) << "\n";
            }
        }
        if (format == "json") std::cout << out.dump(2) << "\n";
        return 0;
    }
    if (show->parsed()) {
        CanonicalType T = make_type(show_type, show_params);
        Algebra A = instantiate(T);
        if (format == "json")
            std::cout << algebra_to_json(A).dump(2) << "\n";
        else
            std::cout << T.str() << ":\n" << product_table(A);
        return 0;
    }
    if (inv->parsed()) {
        CanonicalType T = make_type(inv_type, inv_params);
        Algebra A = instantiate(T);
        size_t der = derivation_dim(A), sq = square_dim(A);
        size_t z1 = z_xi_dim(A, RationalFunction(1)), zm1 = z_xi_dim(A, RationalFunction(-1));
        std::string sym = to_string(symmetry_type(A));
        if (format == "json")
            std::cout << json{{"type", T.str()},
                              {"derivation_dim", der},
                              {"z_1", z1},
                              {"z_-1", zm1},
                              {"square_dim", sq},
                              {"symmetry", sym}}
                             .dump(2)
                      << "\n";
        else
            std::cout << T.str() << ":\n  dim 𝔇er = " << der << "\n  Z₁ = " << z1
                      << "\n  Z₋₁ = " << zm1 << "\n  dim A² = " << sq
                      << "\n  symmetry: " << sym << "\n";
        return 0;
    }
    if (vdeg->parsed())
        return report_and_exit_code(
            run_parallel(deg_files, [](const std::string &f) { return run_degeneration(f); }),
            format);
    if (vnon->parsed())
        return report_and_exit_code(run_parallel(nondeg_files,
                                                 [&](const std::string &f) {
                                                     return run_nondegeneration(f, trials, seed);
                                                 }),
                                    format);
    if (cls->parsed()) {
        MatF M = load_matrix(classify_file);
        try {
            CanonicalType T = classify_matrix(to_constant_matrix(M));
            if (format == "json")
                std::cout << json{{"type", T.str()}}.dump(2) << "\n";
            else
                std::cout << T.str() << "\n";
        } catch (const ParameterNotInBaseField &e) {
            if (format == "json")
                std::cout << json{{"family", e.label}, {"note", e.what()}}.dump(2) << "\n";
            else
                std::cout << e.what() << "\n";
        }
        return 0;
    }
    if (corr->parsed()) {
        std::ifstream in(corr_file);
        if (!in) throw InputError("cannot open " + corr_file);
        json j;
        try {
            in >> j;
        } catch (const json::exception &e) {
            throw InputError(corr_file + ": " + e.what());
        }
        MatF M = matrix_from_json(j, /*constants_only=*/false);
        if (corr_to == "ternary") {
            TernaryAlgebra T = matrix_to_ternary(M);
            if (format == "json")
                std::cout << json{{"ternary", T.str()}}.dump(2) << "\n";
            else
                std::cout << T.str() << "\n";
        } else {
            Algebra A = matrix_to_heisenberg(M);
            if (format == "json")
                std::cout << algebra_to_json(A).dump(2) << "\n";
            else
                std::cout << product_table(A);
        }
        return 0;
    }
    if (gbuild->parsed()) return graph_build(grid_path, out_path, certs_dir, graph_format);
    return 2; // unreachable: a subcommand is required
}

} // namespace

int main(int argc, char **argv) {
    try {
        return run(argc, argv);
    } catch (const InputError &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const MathError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
