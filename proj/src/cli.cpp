#include "qss/cli.hpp"

#include <chrono>
#include <iostream>
#include <set>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qss/hn.hpp"
#include "qss/io.hpp"
#include "qss/king.hpp"
#include "qss/ncpit.hpp"
#include "qss/rankone.hpp"
#include "qss/semistability.hpp"

#ifndef QSS_VERSION
#define QSS_VERSION "dev"
#endif

namespace qss {

namespace {

using json = nlohmann::ordered_json;

struct Options {
    std::string input = "-";
    std::string format = "json";
    double epsilon_scale = 1.0;
    long max_iters = 1000000;
    double iter_constant = 10.0;
    int lowerset_limit = 24;
    // Accepted for interface stability; the proposal schedule is deterministic.
    unsigned long seed = 0;
    bool want_min = false;
    bool want_max = false;
};

SsConfig scaling_config(const Options& opt) {
    SsConfig cfg;
    cfg.epsilon_scale = opt.epsilon_scale;
    cfg.max_iters = opt.max_iters;
    cfg.iter_constant = opt.iter_constant;
    return cfg;
}

KingConfig king_config(const Options& opt) {
    KingConfig cfg;
    cfg.scaling = scaling_config(opt);
    cfg.scaling.checkpoint_every = 25;
    cfg.lowerset_limit = opt.lowerset_limit;
    return cfg;
}

json matrix_json(const ExactMatrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) {
            const GaussianRational& e = m.at(r, c);
            row.push_back(json{e.re.get_num().get_str(), e.re.get_den().get_str(),
                               e.im.get_num().get_str(), e.im.get_den().get_str()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json subrep_json(const Quiver& q, const Subrep& w) {
    json dims = json::object(), basis = json::object();
    for (int v = 0; v < q.num_vertices(); ++v) {
        dims[q.vertex_id(v)] = w.basis[v].cols();
        basis[q.vertex_id(v)] = matrix_json(w.basis[v]);
    }
    return json{{"dims", std::move(dims)}, {"basis", std::move(basis)}};
}

json dims_json(const Quiver& q, const Subrep& w) {
    json dims = json::object();
    for (int v = 0; v < q.num_vertices(); ++v) dims[q.vertex_id(v)] = w.basis[v].cols();
    return dims;
}

json rational_json(const Rational& r) { return r.get_str(); }

const Weight& need_sigma(const Instance& inst) {
    if (!inst.sigma) throw std::invalid_argument("instance: this command requires a 'sigma' field");
    return *inst.sigma;
}

void emit(const json& report, const Options& opt, std::ostream& out) {
    if (opt.format == "text") {
        for (auto it = report.begin(); it != report.end(); ++it) {
            out << it.key() << ": "
                << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump()) << "\n";
        }
    } else {
        out << report.dump(2) << "\n";
    }
}

int cmd_check_ss(const Options& opt, json& report) {
    Instance inst = load_instance(opt.input);
    SsDecision d = decide_sigma_semistable(inst.rep, need_sigma(inst), scaling_config(opt));
    const char* verdict = d.verdict == SsVerdict::semistable  ? "semistable"
                          : d.verdict == SsVerdict::unstable ? "unstable"
                                                             : "weight-infeasible";
    report["verdict"] = verdict;
    report["certificate"] = d.certificate;
    report["iterations"] = d.iterations;
    report["iteration_bound"] = d.iteration_bound;
    report["final_residual"] = d.final_residual;
    report["max_post_left_residual"] = d.max_post_left_residual;
    return d.verdict == SsVerdict::weight_infeasible ? 1 : 0;
}

int cmd_king_max(const Options& opt, json& report) {
    if (opt.want_min && opt.want_max) throw std::invalid_argument("pass only one of --min/--max");
    Instance inst = load_instance(opt.input);
    bool want_max = !opt.want_min;
    try {
        KingMaximizer km = want_max ? max_maximizer(inst.rep, need_sigma(inst), king_config(opt))
                                    : min_maximizer(inst.rep, need_sigma(inst), king_config(opt));
        report["verdict"] = "maximizer";
        report["kind"] = want_max ? "max" : "min";
        report["value"] = km.value;
        report["extremality_certified"] = km.minimal;
        report["method"] =
            km.method == MaximizerMethod::exact_combinatorial ? "exact-combinatorial" : "propose-verify";
        report["maximizer"] = subrep_json(inst.rep.quiver, km.w);
        return 0;
    } catch (const weight_infeasible_error& e) {
        report["verdict"] = "weight-infeasible";
        report["error"] = e.what();
        return 1;
    }
}

int cmd_hn(const Options& opt, json& report) {
    Instance inst = load_instance(opt.input);
    if (!inst.tau) throw std::invalid_argument("instance: 'hn' requires a 'tau' field");
    HNFiltration f = hn_filtration(inst.rep, need_sigma(inst), *inst.tau, false, king_config(opt));
    report["verdict"] = "filtration";
    report["steps"] = static_cast<int>(f.chain.size()) - 1;
    json chain = json::array();
    for (const Subrep& w : f.chain) chain.push_back(dims_json(inst.rep.quiver, w));
    report["chain"] = std::move(chain);
    json slopes = json::array(), criticals = json::array();
    for (const Rational& r : f.slopes) slopes.push_back(rational_json(r));
    for (const Rational& r : f.criticals) criticals.push_back(rational_json(r));
    report["slopes"] = std::move(slopes);
    report["criticals"] = std::move(criticals);
    return 0;
}

int cmd_coarse_dm(const Options& opt, json& report) {
    Instance inst = load_instance(opt.input);
    CoarseDM dm = coarse_dm(inst.rep.mats, king_config(opt));
    report["verdict"] = "decomposition";
    report["blocks"] = dm.blocks;
    report["kept_columns"] = dm.kept_columns;
    json chain = json::array();
    for (const Subrep& w : dm.filtration.chain) chain.push_back(dims_json(dm.kron.quiver, w));
    report["chain"] = std::move(chain);
    json slopes = json::array(), criticals = json::array();
    for (const Rational& r : dm.filtration.slopes) slopes.push_back(rational_json(r));
    for (const Rational& r : dm.filtration.criticals) criticals.push_back(rational_json(r));
    report["slopes"] = std::move(slopes);
    report["criticals"] = std::move(criticals);
    json y = json::array(), x = json::array();
    for (const ExactMatrix& m : dm.y_flags) y.push_back(matrix_json(m));
    for (const ExactMatrix& m : dm.x_flags) x.push_back(matrix_json(m));
    report["y_flags"] = std::move(y);
    report["x_flags"] = std::move(x);
    return 0;
}

int cmd_rank_one_check(const Options& opt, json& report) {
    Instance inst = load_instance(opt.input);
    const Weight& sigma = need_sigma(inst);
    RankOneRep r1 = factorize_rank_one(inst.rep);
    K1FResult kf = check_k1_f(r1, sigma);
    K2Result k2 = check_k2(r1, sigma, opt.lowerset_limit);
    bool ss = kf.k1 && kf.full_rank && k2.holds;
    report["verdict"] = ss ? "semistable" : "unstable";
    report["k1_balanced"] = kf.k1;
    report["matroids_full_rank"] = kf.full_rank;
    report["k2_holds"] = k2.holds;
    report["sigma_total"] = kf.sigma_total;
    if (k2.witness) {
        DVGraph dv = build_dv_graph(r1);
        json nodes = json::array();
        for (int u = 0; u < dv.num_nodes; ++u) {
            if (!(*k2.witness)[u]) continue;
            const std::string& arc_id = inst.rep.quiver.arc(dv.node_arc[u]).id;
            nodes.push_back((dv.node_is_f[u] ? "f:" : "v:") + arc_id);
        }
        report["k2_witness"] = std::move(nodes);
    }
    return 0;
}

int cmd_gale(const Options& opt, json& report) {
    Instance inst = load_instance(opt.input);
    const Weight& sigma = need_sigma(inst);
    for (int v = 0; v < inst.rep.quiver.num_vertices(); ++v) {
        if (inst.rep.alpha[v] != 1) {
            throw std::invalid_argument("instance: 'gale' requires alpha = 1 at every vertex");
        }
    }
    // The condition concerns the support quiver: arcs carrying a nonzero value.
    Quiver support;
    for (int v = 0; v < inst.rep.quiver.num_vertices(); ++v) {
        support.add_vertex(inst.rep.quiver.vertex_id(v));
    }
    for (int a = 0; a < inst.rep.quiver.num_arcs(); ++a) {
        if (inst.rep.mats[a].is_zero()) continue;
        const Arc& arc = inst.rep.quiver.arc(a);
        support.add_arc(arc.id, arc.tail, arc.head);
    }
    GaleResult g = gale_feasible(support, sigma, opt.lowerset_limit);
    report["verdict"] = g.feasible ? "feasible" : "infeasible";
    if (g.witness) {
        json ids = json::array();
        for (int v : *g.witness) ids.push_back(support.vertex_id(v));
        report["witness"] = std::move(ids);
    }
    return 0;
}

int cmd_general_ss(const Options& opt, json& report) {
    Instance inst = load_instance(opt.input);
    report["verdict"] = decide_gl_semistable(inst.rep) ? "semistable" : "unstable";
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    static const std::set<std::string> kCommands = {"check-ss",       "king-max", "hn",
                                                    "coarse-dm",      "gale",     "rank-one-check",
                                                    "general-ss"};
    std::string first_positional;
    for (const std::string& a : args) {
        if (a == "--help" || a == "-h" || a == "--version") break;
        if (!a.empty() && a[0] != '-') {
            first_positional = a;
            break;
        }
    }
    if (!first_positional.empty() && !kCommands.count(first_positional)) {
        err << "unknown subcommand '" << first_positional << "'\n";
        return 64;
    }

    CLI::App app{"exact deciders for quiver representation semistability"};
    app.set_version_flag("--version", QSS_VERSION);
    app.require_subcommand(0, 1);

    Options opt;
    int (*handler)(const Options&, json&) = nullptr;
    auto add_command = [&](const std::string& name, const std::string& desc,
                           int (*fn)(const Options&, json&)) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("input", opt.input, "instance file, or - for stdin");
        sub->add_option("--format", opt.format, "json or text")
            ->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--epsilon-scale", opt.epsilon_scale, "scaling accuracy multiplier");
        sub->add_option("--max-iters", opt.max_iters, "hard cap on scaling iterations");
        sub->add_option("--iter-constant", opt.iter_constant, "iteration bound constant");
        sub->add_option("--lowerset-limit", opt.lowerset_limit, "lower-set enumeration cutoff");
        sub->add_option("--seed", opt.seed, "reserved; proposal schedule is deterministic");
        sub->callback([&handler, fn]() { handler = fn; });
        return sub;
    };

    add_command("check-ss", "decide sigma-semistability by operator scaling", cmd_check_ss);
    CLI::App* king = add_command("king-max", "extreme maximizer of the King functional", cmd_king_max);
    king->add_flag("--min", opt.want_min, "minimum maximizer");
    king->add_flag("--max", opt.want_max, "maximum maximizer (default)");
    add_command("hn", "Harder-Narasimhan filtration for a slope sigma/tau", cmd_hn);
    add_command("coarse-dm", "coarse DM decomposition of the instance's matrices", cmd_coarse_dm);
    add_command("rank-one-check", "combinatorial semistability check for rank-one instances",
                cmd_rank_one_check);
    add_command("gale", "Gale condition on the support of a dimension-one instance", cmd_gale);
    add_command("general-ss", "GL-semistability of a general quiver by trace identity testing",
                cmd_general_ss);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }
    if (handler == nullptr) {
        err << app.help();
        return 2;
    }

    json report = json::object();
    report["command"] = first_positional;
    report["version"] = QSS_VERSION;
    auto started = std::chrono::steady_clock::now();
    int code;
    try {
        code = handler(opt, report);
    } catch (const numerical_error& e) {
        report["verdict"] = "inconclusive";
        report["error"] = e.what();
        code = 1;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        err << e.what() << "\n";
        return 2;
    }
    report["wall_time_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    emit(report, opt, out);
    return code;
}

int run_cli(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, std::cout, std::cerr);
}

}  // namespace qss
