#include <CLI11.hpp>
#include <iostream>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "charweb/errors.hpp"
#include "charweb/json_io.hpp"

using namespace charweb;

namespace {

// Exit codes: 0 success, 1 mathematical negative, 2 input error,
// 3 semantic error, 4 resource/budget.
enum ExitCode { kOk = 0, kNegative = 1, kInput = 2, kSemantic = 3, kResource = 4 };

struct Options {
    std::uint64_t seed = 0;
    int trials = 100;
    int budget = kDefaultGenPosBudget;
    long entry_range = kDefaultEntryRange;
    std::string format = "text";

    bool json() const { return format == "json"; }
};

void emit(const Options& opt, const Json& machine, const std::string& human) {
    if (opt.json())
        std::cout << machine.dump(2) << "\n";
    else
        std::cout << human << "\n";
}

std::vector<Index> parse_dims(const std::string& text) {
    std::vector<Index> dims;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        if (item.empty()) throw ParseError("dims: empty entry");
        try {
            dims.push_back(std::stol(item));
        } catch (const std::exception&) {
            throw ParseError("dims: not an integer: " + item);
        }
    }
    if (dims.empty()) throw ParseError("dims: empty list");
    return dims;
}

RowVec parse_point(const std::string& text) {
    std::vector<GQ> entries;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) entries.push_back(GQ::parse(item));
    if (entries.empty()) throw ParseError("point: empty list");
    RowVec z(static_cast<Index>(entries.size()));
    for (Index j = 0; j < z.cols(); ++j) z(j) = entries[static_cast<std::size_t>(j)];
    return z;
}

std::string describe_subspace(const Subspace& s) {
    std::ostringstream os;
    os << "dim " << s.dim() << " subspace of C^" << s.ambient_dim();
    if (s.dim() > 0) {
        os << ", basis rows:";
        for (Index i = 0; i < s.dim(); ++i) {
            os << "\n  [";
            for (Index j = 0; j < s.ambient_dim(); ++j) {
                if (j) os << ", ";
                os << s.basis()(i, j).str();
            }
            os << "]";
        }
    }
    return os.str();
}

std::string describe_matrix(const Mat& m) {
    std::ostringstream os;
    for (Index i = 0; i < m.rows(); ++i) {
        os << (i ? "\n[" : "[");
        for (Index j = 0; j < m.cols(); ++j) {
            if (j) os << ", ";
            os << m(i, j).str();
        }
        os << "]";
    }
    return os.str();
}

int cmd_eval(const Options& opt, const std::string& expr_text, const std::string& system_file) {
    SubspaceSystem system = system_from_json(load_json_file(system_file));
    Expr expr = Expr::parse(expr_text, static_cast<int>(system.size()));
    Subspace value = expr.evaluate(system);
    Json j;
    j["expr"] = expr.str();
    j["value"] = to_json(value);
    emit(opt, j, expr.str() + " evaluates to " + describe_subspace(value));
    return kOk;
}

int cmd_genpos(const Options& opt, const std::string& system_file) {
    SubspaceSystem system = system_from_json(load_json_file(system_file));
    GenPosVerdict v = system_in_general_position(system, opt.budget);
    std::ostringstream human;
    if (v.in_general_position) {
        human << "in general position (s=" << system.size() << ", n=" << system.ambient_dim()
              << ")";
    } else {
        human << "NOT in general position: pair P=" << v.witness->p.str()
              << " Q=" << v.witness->q.str() << " has dim(P+Q)=" << v.witness->dim_sum
              << ", expected " << v.witness->dim_expected;
    }
    emit(opt, to_json(v), human.str());
    return v.in_general_position ? kOk : kNegative;
}

int cmd_verify(const Options& opt, const std::string& cert_file,
               const std::string& system_file) {
    Certificate cert = certificate_from_json(load_json_file(cert_file));
    if (!system_file.empty()) {
        SubspaceSystem system = system_from_json(load_json_file(system_file));
        RigidityVerdict v = verify_certificate(cert, system, opt.budget);
        std::ostringstream human;
        if (v.holds)
            human << "HOLDS on the given instance";
        else
            human << "FAILS: " << to_string(*v.failed_condition) << " (" << v.detail << ")";
        emit(opt, to_json(v), human.str());
        return v.holds ? kOk : kNegative;
    }
    GenericVerdict gv =
        verify_certificate_generic(cert, opt.trials, opt.seed, opt.budget, opt.entry_range);
    std::ostringstream human;
    if (gv.verdict.holds)
        human << "HOLDS (" << gv.passed << "/" << gv.trials << ", " << gv.skipped << " skipped)";
    else
        human << "FAILS: " << to_string(*gv.verdict.failed_condition) << " ("
              << gv.verdict.detail << ")";
    emit(opt, to_json(gv), human.str());
    return gv.verdict.holds ? kOk : kNegative;
}

int cmd_build(const Options& opt, Index n, const std::string& dims_text, int target) {
    BuildOptions build_opt;
    build_opt.seed = opt.seed;
    build_opt.trials = opt.trials;
    build_opt.genpos_budget = opt.budget;
    build_opt.entry_range = opt.entry_range;
    Certificate cert = build_certificate(n, parse_dims(dims_text), target, build_opt);
    Json j = to_json(cert);
    emit(opt, j, "verified certificate:\n" + j.dump(2));
    return kOk;
}

int cmd_search(const Options& opt, Index n, const std::string& dims_text, int target) {
    SearchOptions search_opt;
    search_opt.seed = opt.seed;
    search_opt.trials = opt.trials;
    search_opt.genpos_budget = opt.budget;
    search_opt.entry_range = opt.entry_range;
    auto cert = search_certificate(n, parse_dims(dims_text), target, search_opt);
    if (!cert) {
        Json j;
        j["found"] = false;
        emit(opt, j, "no certificate within the documented search bounds");
        return kNegative;
    }
    Json j;
    j["found"] = true;
    j["certificate"] = to_json(*cert);
    emit(opt, j, "found certificate:\n" + to_json(*cert).dump(2));
    return kOk;
}

int cmd_reconstruct(const Options& opt, const std::string& cert_file, const std::string& e_file,
                    const std::string& ep_file, const std::string& block_file, Index k) {
    Certificate cert = certificate_from_json(load_json_file(cert_file));
    SubspaceSystem e = system_from_json(load_json_file(e_file));
    SubspaceSystem ep = system_from_json(load_json_file(ep_file));
    Mat block_matrix = matrix_from_json(load_json_file(block_file));
    if (k < 1 || k > cert.k_count())
        throw SemanticError("reconstruct: block index k out of range 1.." +
                            std::to_string(cert.k_count()));
    ReconstructionPlan plan = ReconstructionPlan::build(cert, e, ep, opt.budget);
    BlockMap block = plan.block_of(LinearMap::on_ambient(cert.n, block_matrix), k - 1);
    Mat full = plan.assemble(block).ambient_matrix();
    Json j;
    j["k"] = k;
    j["matrix"] = matrix_to_json(full);
    emit(opt, j, "reconstructed map (row-vector convention):\n" + describe_matrix(full));
    return kOk;
}

int cmd_web(const Options& opt, const std::string& pres_file, const std::string& at_text) {
    PolyhedralPresentation pres = presentation_from_json(load_json_file(pres_file));
    RowVec z = parse_point(at_text);
    WebReport report = web_report(pres, z, opt.seed, opt.budget, opt.entry_range);
    std::ostringstream human;
    human << "tangent dimensions (";
    for (std::size_t i = 0; i < report.dims.size(); ++i)
        human << (i ? "," : "") << report.dims[i];
    human << "), general position: " << (report.genpos.in_general_position ? "yes" : "no")
          << ", decompositions: " << report.s << " (N(" << report.n << ")=" << report.bound
          << "), rigid: " << (report.rigid ? "yes" : "no");
    emit(opt, to_json(report), human.str());
    return report.genpos.in_general_position ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toolkit for systems of linear subspaces: general position, "
                 "rigidity certificates, block reconstruction, web tangents"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--seed", opt.seed, "root seed for all randomness");
    app.add_option("--trials", opt.trials, "number of random systems for generic checks");
    app.add_option("--budget", opt.budget, "general-position enumeration budget (max s)");
    app.add_option("--entry-range", opt.entry_range, "random integer entries lie in [-R, R]");
    app.add_option("--format", opt.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));

    std::string expr_text, system_file, cert_file, e_file, ep_file, block_file, dims_text,
        pres_file, at_text;
    Index n = 0, k = 1;
    int target = 1;

    auto* eval = app.add_subcommand("eval", "evaluate an expression on a system");
    eval->add_option("expr", expr_text, "expression, e.g. \"(X1+X2)&X3\"")->required();
    eval->add_option("system", system_file, "system JSON file")->required();

    auto* genpos = app.add_subcommand("genpos", "decide general position of a system");
    genpos->add_option("system", system_file, "system JSON file")->required();

    auto* verify = app.add_subcommand("verify", "verify a rigidity certificate");
    verify->add_option("certificate", cert_file, "certificate JSON file")->required();
    verify->add_option("system", system_file, "optional instance; omitted = generic trials");

    auto* build = app.add_subcommand("build", "construct a certificate for s >= N(n)");
    build->add_option("--n", n, "ambient dimension")->required();
    build->add_option("--dims", dims_text, "comma-separated dimension tuple")->required();
    build->add_option("--target", target, "target index (1-based)")->required();

    auto* search = app.add_subcommand("search", "exhaustive certificate search (small s)");
    search->add_option("--n", n, "ambient dimension")->required();
    search->add_option("--dims", dims_text, "comma-separated dimension tuple")->required();
    search->add_option("--target", target, "target index (1-based)")->required();

    auto* reconstruct =
        app.add_subcommand("reconstruct", "rebuild a constrained map from one block");
    reconstruct->add_option("certificate", cert_file)->required();
    reconstruct->add_option("system", e_file, "system E")->required();
    reconstruct->add_option("system_prime", ep_file, "system E'")->required();
    reconstruct->add_option("block", block_file, "n x n matrix JSON; restriction to P_k(E)")
        ->required();
    reconstruct->add_option("--k", k, "block index (1-based)")->required();

    auto* web = app.add_subcommand("web", "tangent-system report for a presentation");
    web->add_option("presentation", pres_file, "presentation JSON file")->required();
    web->add_option("--at", at_text, "point, comma-separated scalars")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval->parsed()) return cmd_eval(opt, expr_text, system_file);
        if (genpos->parsed()) return cmd_genpos(opt, system_file);
        if (verify->parsed()) return cmd_verify(opt, cert_file, system_file);
        if (build->parsed()) return cmd_build(opt, n, dims_text, target);
        if (search->parsed()) return cmd_search(opt, n, dims_text, target);
        if (reconstruct->parsed())
            return cmd_reconstruct(opt, cert_file, e_file, ep_file, block_file, k);
        if (web->parsed()) return cmd_web(opt, pres_file, at_text);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInput;
    } catch (const SemanticError& e) {
        std::cerr << "semantic error: " << e.what() << "\n";
        return kSemantic;
    } catch (const ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return kResource;
    } catch (const DegeneracyError& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return kNegative;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kResource;
    }
    return kInput;
}
