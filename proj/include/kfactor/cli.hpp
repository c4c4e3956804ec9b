#pragma once

#include "kfactor/absorb.hpp"
#include "kfactor/acceptance.hpp"
#include "kfactor/construct.hpp"
#include "kfactor/io.hpp"
#include "kfactor/reduce.hpp"
#include "kfactor/report.hpp"
#include "kfactor/tile.hpp"
#include "kfactor/verify.hpp"

#include <CLI11.hpp>

#include <functional>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

namespace kfactor::cli {

namespace detail {

inline std::string join_args(const std::vector<std::string>& args) {
    std::string s = "kfactor";
    for (const auto& a : args) {
        s += " ";
        if (a.find(' ') != std::string::npos) {
            s += "\"" + a + "\"";
        } else {
            s += a;
        }
    }
    return s;
}

inline Graph load_graph(const std::string& path) { return parse_graph(read_file(path)); }
inline Partition load_partition(const std::string& path) { return parse_partition(read_file(path)); }
inline Multigraph2 load_multigraph(const std::string& path) {
    return parse_multigraph(read_file(path));
}

inline void print_claims(Report& rep, const std::vector<ClaimOutcome>& outcomes, bool& refuted) {
    int pass = 0, fail = 0;
    for (const auto& out : outcomes) {
        std::string key = "claim " + to_string(out.claim.kind) + " " + out.claim.op;
        for (const auto& a : out.claim.args) key += " " + a;
        std::string value;
        if (!out.applicable)
            value = "skipped (" + out.observed + ")";
        else if (out.claim.kind == ClaimKind::Report)
            value = out.observed;
        else
            value = (out.pass ? "pass" : "FAIL") + std::string(" (observed ") + out.observed + ")";
        rep.kv(key, value);
        if (out.applicable && out.claim.kind != ClaimKind::Report) (out.pass ? pass : fail)++;
        if (out.claim.kind == ClaimKind::Exact && out.applicable && !out.pass) refuted = true;
    }
    rep.kv("claims-pass", pass);
    rep.kv("claims-fail", fail);
}

// Shared flag bundle for the gen subcommands.
struct GenCommon {
    std::string out_path;
    std::string manifest_path;
    int alpha_cap = 60;
};

inline int emit_generated(const GenResult& res, const GenCommon& common, const std::string& config,
                          std::ostream& out) {
    std::string manifest_path =
        common.manifest_path.empty() ? common.out_path + ".manifest" : common.manifest_path;
    write_file(common.out_path, serialize(res.graph));
    write_file(manifest_path, serialize(res.manifest));
    Report rep(config);
    rep.kv("construction", res.manifest.name);
    rep.kv("n", res.graph.order());
    rep.kv("edges", static_cast<long long>(res.graph.edge_count()));
    rep.kv("graph-file", common.out_path);
    rep.kv("manifest-file", manifest_path);
    bool refuted = false;
    EvalOptions opt;
    opt.alpha_cap = common.alpha_cap;
    print_claims(rep, evaluate_manifest(res.graph, res.manifest, opt), refuted);
    out << rep.str();
    return refuted ? 2 : 0;
}

}  // namespace detail

// Parses and runs one CLI invocation; returns the process exit code.
// 0 = success, 1 = usage or input error, 2 = a checked property was refuted.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::string config = detail::join_args(args);
    CLI::App app{"clique-factor toolkit: generators, verifiers, tilings, absorption"};
    app.require_subcommand(1);
    int exit_code = 0;
    std::function<void()> action;

    // ---- gen ------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate a construction plus its claim manifest");
    gen->require_subcommand(1);
    auto common = std::make_shared<detail::GenCommon>();

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", common->out_path, "graph file to write")->required();
        cmd->add_option("--manifest", common->manifest_path,
                        "manifest file to write (default: <out>.manifest)");
        cmd->add_option("--alpha-cap", common->alpha_cap,
                        "largest order for which report-alpha claims are computed");
    };

    {
        auto opt = std::make_shared<std::pair<int, int>>(12, 4);
        auto* cmd = gen->add_subcommand("two-cliques", "two disjoint cliques of orders n/2+1, n/2-1");
        cmd->add_option("--n", opt->first, "vertex count (even)")->required();
        cmd->add_option("--r", opt->second, "clique order for the no-factor claim")->required();
        add_common(cmd);
        cmd->callback([&, opt] {
            action = [&, opt] {
                exit_code = detail::emit_generated(gen_two_cliques(opt->first, opt->second),
                                                   *common, config, out);
            };
        });
    }
    {
        struct ErArgs {
            int n = 60;
            double alpha = 0.4, eps = 0.3;
            std::uint64_t seed = 1;
        };
        auto opt = std::make_shared<ErArgs>();
        auto* cmd = gen->add_subcommand("er", "triangle-free graph with a degree window");
        cmd->add_option("--n", opt->n)->required();
        cmd->add_option("--alpha", opt->alpha, "independence fraction target (reported)");
        cmd->add_option("--eps", opt->eps, "degree window parameter")->required();
        cmd->add_option("--seed", opt->seed)->required();
        add_common(cmd);
        cmd->callback([&, opt] {
            action = [&, opt] {
                exit_code = detail::emit_generated(
                    gen_er_like(opt->n, opt->alpha, opt->eps, opt->seed), *common, config, out);
            };
        });
    }
    {
        struct GirthArgs {
            int n = 50, girth = 4;
            double alpha = 0.4;
            std::uint64_t seed = 1;
        };
        auto opt = std::make_shared<GirthArgs>();
        auto* cmd = gen->add_subcommand("girth", "graph of girth > g with alpha reported");
        cmd->add_option("--n", opt->n)->required();
        cmd->add_option("--alpha", opt->alpha);
        cmd->add_option("--girth", opt->girth, "required girth floor (girth > g)")->required();
        cmd->add_option("--seed", opt->seed)->required();
        add_common(cmd);
        cmd->callback([&, opt] {
            action = [&, opt] {
                exit_code = detail::emit_generated(
                    gen_high_girth(opt->n, opt->alpha, opt->girth, opt->seed), *common, config, out);
            };
        });
    }
    {
        struct BeArgs {
            int n_half = 30, dim = 8;
            double theta = 0.1;
            std::uint64_t seed = 1;
        };
        auto opt = std::make_shared<BeArgs>();
        auto* cmd = gen->add_subcommand("be", "two-sided sphere construction");
        cmd->add_option("--n-half", opt->n_half, "points per side")->required();
        cmd->add_option("--dim", opt->dim, "sphere dimension")->required();
        cmd->add_option("--theta", opt->theta, "threshold slack in (0, 1/2)")->required();
        cmd->add_option("--seed", opt->seed)->required();
        add_common(cmd);
        cmd->callback([&, opt] {
            action = [&, opt] {
                exit_code = detail::emit_generated(
                    gen_bollobas_erdos(opt->n_half, opt->dim, opt->theta, opt->seed), *common,
                    config, out);
            };
        });
    }
    {
        struct PropArgs {
            int r = 5, n = 40;
            std::uint64_t seed = 1;
        };
        auto opt16 = std::make_shared<PropArgs>();
        auto* cmd16 = gen->add_subcommand("prop16", "multipartite skeleton with triangle-free fills");
        cmd16->add_option("--r", opt16->r)->required();
        cmd16->add_option("--n", opt16->n)->required();
        cmd16->add_option("--seed", opt16->seed)->required();
        add_common(cmd16);
        cmd16->callback([&, opt16] {
            action = [&, opt16] {
                exit_code = detail::emit_generated(gen_prop_1_6(opt16->r, opt16->n, opt16->seed),
                                                   *common, config, out);
            };
        });
        auto opt17 = std::make_shared<PropArgs>();
        auto* cmd17 =
            gen->add_subcommand("prop17", "sphere pair plus girth-5 parts, K_{r+1}-free, no factor");
        cmd17->add_option("--r", opt17->r)->required();
        cmd17->add_option("--n", opt17->n)->required();
        cmd17->add_option("--seed", opt17->seed)->required();
        add_common(cmd17);
        cmd17->callback([&, opt17] {
            action = [&, opt17] {
                exit_code = detail::emit_generated(gen_prop_1_7(opt17->r, opt17->n, opt17->seed),
                                                   *common, config, out);
            };
        });
    }

    // ---- check ----------------------------------------------------------
    auto* check = app.add_subcommand("check", "run a verifier against a graph file");
    check->require_subcommand(1);
    auto graph_path = std::make_shared<std::string>();

    {
        auto* cmd = check->add_subcommand("min-degree", "minimum degree");
        cmd->add_option("--graph", *graph_path)->required();
        cmd->callback([&] {
            action = [&] {
                auto g = detail::load_graph(*graph_path);
                Report rep(config);
                rep.kv("n", g.order());
                rep.kv("min-degree", min_degree(g));
                out << rep.str();
            };
        });
    }
    {
        struct AlphaArgs {
            int ell = 2, cap = 60;
            bool force = false;
        };
        auto opt = std::make_shared<AlphaArgs>();
        auto* cmd = check->add_subcommand("alpha", "K_l-independence number with witness");
        cmd->add_option("--graph", *graph_path)->required();
        cmd->add_option("--ell", opt->ell)->required();
        cmd->add_option("--cap", opt->cap, "instance-size guard");
        cmd->add_flag("--force", opt->force, "override the size guard");
        cmd->callback([&, opt] {
            action = [&, opt] {
                auto g = detail::load_graph(*graph_path);
                auto res = alpha_ell(g, opt->ell, {opt->cap, opt->force});
                Report rep(config);
                rep.kv("ell", opt->ell);
                rep.kv("alpha", res.value);
                rep.kv("witness", format_vertices(res.witness));
                out << rep.str();
            };
        });
    }
    {
        auto s = std::make_shared<int>(3);
        auto* cmd = check->add_subcommand("ks-free", "K_s-freeness with witness clique");
        cmd->add_option("--graph", *graph_path)->required();
        cmd->add_option("--s", *s)->required();
        cmd->callback([&, s] {
            action = [&, s] {
                auto g = detail::load_graph(*graph_path);
                auto res = is_ks_free(g, *s);
                Report rep(config);
                rep.kv("s", *s);
                rep.kv("ks-free", res.free);
                if (!res.free) rep.kv("witness", format_vertices(res.witness));
                out << rep.str();
            };
        });
    }
    {
        struct FactorArgs {
            int r = 3;
            std::uint64_t budget = 0;
        };
        auto opt = std::make_shared<FactorArgs>();
        auto* cmd = check->add_subcommand("factor", "exact K_r-factor decision with certificate");
        cmd->add_option("--graph", *graph_path)->required();
        cmd->add_option("--r", opt->r)->required();
        cmd->add_option("--budget", opt->budget, "search node budget (0 = unbounded)");
        cmd->callback([&, opt] {
            action = [&, opt] {
                auto g = detail::load_graph(*graph_path);
                FactorOptions fopt;
                fopt.max_nodes = opt->budget;
                auto cert = has_kr_factor(g, opt->r, fopt);
                Report rep(config);
                rep.kv("r", opt->r);
                rep.kv("outcome", to_string(cert.outcome));
                if (cert.outcome == FactorOutcome::NoFactor) rep.kv("witness", to_string(cert.reason));
                if (!cert.detail.empty()) rep.kv("detail", cert.detail);
                if (cert.found()) {
                    rep.raw("factor:");
                    for (const auto& p : cert.tiling.placements)
                        rep.raw("  " + shape_tag(p.shape) + " " + format_vertices(p.vertices));
                }
                out << rep.str();
            };
        });
    }
    {
        struct TileArgs {
            int r = 3, cap = 60;
            bool force = false;
        };
        auto opt = std::make_shared<TileArgs>();
        auto* cmd = check->add_subcommand("max-tiling", "maximum K_r-tiling (exact)");
        cmd->add_option("--graph", *graph_path)->required();
        cmd->add_option("--r", opt->r)->required();
        cmd->add_option("--cap", opt->cap);
        cmd->add_flag("--force", opt->force);
        cmd->callback([&, opt] {
            action = [&, opt] {
                auto g = detail::load_graph(*graph_path);
                auto tiling = max_kr_tiling(g, opt->r, {opt->cap, opt->force});
                Report rep(config);
                rep.kv("r", opt->r);
                rep.kv("placements", tiling.placements.size());
                rep.kv("uncovered", format_vertices(tiling.uncovered()));
                for (const auto& p : tiling.placements)
                    rep.raw("  " + shape_tag(p.shape) + " " + format_vertices(p.vertices));
                out << rep.str();
            };
        });
    }
    {
        auto tiling_path = std::make_shared<std::string>();
        auto multi_path = std::make_shared<std::string>();
        auto* cmd = check->add_subcommand("tiling", "verify a tiling file against its host");
        cmd->add_option("--graph", *graph_path);
        cmd->add_option("--multigraph", *multi_path);
        cmd->add_option("--tiling", *tiling_path)->required();
        cmd->callback([&, tiling_path, multi_path] {
            action = [&, tiling_path, multi_path] {
                Report rep(config);
                TilingCheck res{false, ""};
                if (!graph_path->empty()) {
                    auto g = detail::load_graph(*graph_path);
                    auto t = parse_tiling(read_file(*tiling_path), &g);
                    res = check_tiling(t);
                } else if (!multi_path->empty()) {
                    auto r = detail::load_multigraph(*multi_path);
                    auto t = parse_tiling(read_file(*tiling_path), nullptr, &r);
                    res = check_tiling(t);
                } else {
                    throw std::invalid_argument("check tiling needs --graph or --multigraph");
                }
                rep.kv("valid", res.ok);
                if (!res.ok) rep.kv("reason", res.reason);
                out << rep.str();
                if (!res.ok) exit_code = 2;
            };
        });
    }
    {
        auto manifest_path = std::make_shared<std::string>();
        auto alpha_cap = std::make_shared<int>(60);
        auto* cmd = check->add_subcommand("manifest", "re-run every claim in a manifest file");
        cmd->add_option("--graph", *graph_path)->required();
        cmd->add_option("--manifest", *manifest_path)->required();
        cmd->add_option("--alpha-cap", *alpha_cap);
        cmd->callback([&, manifest_path, alpha_cap] {
            action = [&, manifest_path, alpha_cap] {
                auto g = detail::load_graph(*graph_path);
                auto m = parse_manifest(read_file(*manifest_path));
                Report rep(config);
                rep.kv("construction", m.name);
                bool refuted = false;
                EvalOptions opt;
                opt.alpha_cap = *alpha_cap;
                detail::print_claims(rep, evaluate_manifest(g, m, opt), refuted);
                out << rep.str();
                if (refuted) exit_code = 2;
            };
        });
    }

    // ---- reduce ---------------------------------------------------------
    {
        struct ReduceArgs {
            std::string graph, partition, out_multigraph;
            std::string beta = "1/20", eps = "1/20", mu = "1/2";
            bool facts = false;
            std::vector<int> defect_pair;
            long long defect_budget = 10000;
            std::uint64_t seed = 0;
        };
        auto opt = std::make_shared<ReduceArgs>();
        auto* cmd = app.add_subcommand("reduce", "build the reduced multigraph and degree facts");
        cmd->add_option("--graph", opt->graph)->required();
        cmd->add_option("--partition", opt->partition)->required();
        cmd->add_option("--beta", opt->beta, "density offset (rational)");
        cmd->add_option("--eps", opt->eps, "regularity parameter (rational)");
        cmd->add_option("--mu", opt->mu, "degree margin (rational)");
        cmd->add_option("--out-multigraph", opt->out_multigraph, "write the reduced multigraph");
        cmd->add_flag("--facts", opt->facts, "check the weighted and simple degree facts");
        cmd->add_option("--defect", opt->defect_pair,
                        "two 1-indexed cluster ids: estimate the regularity defect of that pair")
            ->expected(2);
        cmd->add_option("--defect-budget", opt->defect_budget);
        cmd->add_option("--seed", opt->seed, "seed for sampled defect estimation");
        cmd->callback([&, opt] {
            action = [&, opt] {
                auto g = detail::load_graph(opt->graph);
                auto p = detail::load_partition(opt->partition);
                ReducedConfig cfg{parse_rational(opt->beta), parse_rational(opt->eps),
                                  parse_rational(opt->mu)};
                auto r = build_reduced(g, p, cfg);
                Report rep(config);
                rep.kv("clusters", p.cluster_count());
                rep.kv("exceptional", p.exceptional.size());
                rep.kv("beta", cfg.beta);
                rep.kv("eps", cfg.eps);
                rep.kv("mu", cfg.mu);
                for (int i = 0; i < p.cluster_count(); ++i)
                    for (int j = i + 1; j < p.cluster_count(); ++j) {
                        auto d = pair_density(g, p.clusters[static_cast<std::size_t>(i)],
                                              p.clusters[static_cast<std::size_t>(j)]);
                        rep.kv("density " + std::to_string(i + 1) + "," + std::to_string(j + 1),
                               to_string(d) + " -> mult " + std::to_string(r.mult(i, j)));
                    }
                if (!opt->out_multigraph.empty()) {
                    write_file(opt->out_multigraph, serialize(r));
                    rep.kv("multigraph-file", opt->out_multigraph);
                }
                if (opt->facts) {
                    auto multi = check_fact_degree(r, cfg, DegreeFact::Multi);
                    rep.kv("fact-multi bound", multi.bound);
                    rep.kv("fact-multi pass", multi.pass);
                    if (!multi.pass) rep.kv("fact-multi violating", format_vertices(multi.violating));
                    auto simple = check_fact_degree(r, cfg, DegreeFact::Simple);
                    rep.kv("fact-simple bound", simple.bound);
                    rep.kv("fact-simple pass", simple.pass);
                    if (!simple.pass)
                        rep.kv("fact-simple violating", format_vertices(simple.violating));
                }
                if (opt->defect_pair.size() == 2) {
                    int i = opt->defect_pair[0] - 1, j = opt->defect_pair[1] - 1;
                    auto est = regularity_defect(g, p.clusters.at(static_cast<std::size_t>(i)),
                                                 p.clusters.at(static_cast<std::size_t>(j)), cfg.eps,
                                                 opt->defect_budget, opt->seed);
                    rep.kv("defect pair", std::to_string(i + 1) + "," + std::to_string(j + 1));
                    rep.kv("defect base-density", est.base_density);
                    rep.kv("defect observed", est.defect);
                    rep.kv("defect exhaustive", est.exhaustive);
                    rep.kv("defect pairs-checked", est.pairs_checked);
                }
                out << rep.str();
            };
        });
    }

    // ---- tile -----------------------------------------------------------
    auto* tile = app.add_subcommand("tile", "reduced-multigraph tilings and the K_r pipeline");
    tile->require_subcommand(1);
    {
        struct K2K3Args {
            std::string multigraph, out_tiling;
            bool local = false;
            std::uint64_t seed = 0;
            double mu = 0.0, eta = 0.0;
            int cap = 16;
        };
        auto opt = std::make_shared<K2K3Args>();
        auto* cmd = tile->add_subcommand("k2k3", "{K2=, K3}-tiling of a multigraph");
        cmd->add_option("--multigraph", opt->multigraph)->required();
        cmd->add_flag("--local", opt->local, "use the move-based local search");
        cmd->add_option("--seed", opt->seed, "scan-order seed for the local search");
        cmd->add_option("--mu", opt->mu, "report the |B| < 1/mu bound check");
        cmd->add_option("--eta", opt->eta, "report the |B| <= eta*k bound check");
        cmd->add_option("--cap", opt->cap, "exact-search size cap");
        cmd->add_option("--out-tiling", opt->out_tiling);
        cmd->callback([&, opt] {
            action = [&, opt] {
                auto r = detail::load_multigraph(opt->multigraph);
                std::optional<double> mu, eta;
                if (opt->mu > 0) mu = opt->mu;
                if (opt->eta > 0) eta = opt->eta;
                auto rep_t = opt->local ? local_k2k3_tiling(r, opt->seed, mu, eta)
                                        : max_k2k3_tiling(r, mu, eta, opt->cap);
                Report rep(config);
                rep.kv("k", r.order());
                rep.kv("mode", std::string(rep_t.exact ? "exact" : "local"));
                rep.kv("tiles", rep_t.tiling.placements.size());
                rep.kv("covered", r.order() - static_cast<int>(rep_t.uncovered.size()));
                rep.kv("uncovered", format_vertices(rep_t.uncovered));
                if (mu) rep.kv("mu-bound-ok", rep_t.mu_bound_ok);
                if (eta) rep.kv("eta-bound-ok", rep_t.eta_bound_ok);
                for (const auto& p : rep_t.tiling.placements)
                    rep.raw("  " + shape_tag(p.shape) + " " + format_vertices(p.vertices));
                if (!opt->out_tiling.empty()) {
                    write_file(opt->out_tiling, serialize(rep_t.tiling));
                    rep.kv("tiling-file", opt->out_tiling);
                }
                out << rep.str();
            };
        });
    }
    {
        struct PipeArgs {
            std::string graph, partition, out_tiling;
            int r = 4;
            std::string beta = "1/20", eps = "1/20", mu = "1/2";
            int exact_cap = 16;
            std::uint64_t seed = 0;
        };
        auto opt = std::make_shared<PipeArgs>();
        auto* cmd = tile->add_subcommand("pipeline", "reduced tiling + gadget embeddings -> K_r tiles");
        cmd->add_option("--graph", opt->graph)->required();
        cmd->add_option("--partition", opt->partition)->required();
        cmd->add_option("--r", opt->r)->required();
        cmd->add_option("--beta", opt->beta);
        cmd->add_option("--eps", opt->eps);
        cmd->add_option("--mu", opt->mu);
        cmd->add_option("--exact-cap", opt->exact_cap);
        cmd->add_option("--seed", opt->seed);
        cmd->add_option("--out-tiling", opt->out_tiling);
        cmd->callback([&, opt] {
            action = [&, opt] {
                auto g = detail::load_graph(opt->graph);
                auto p = detail::load_partition(opt->partition);
                ReducedConfig cfg{parse_rational(opt->beta), parse_rational(opt->eps),
                                  parse_rational(opt->mu)};
                PipelineOptions popt;
                popt.exact_cap = opt->exact_cap;
                popt.seed = opt->seed;
                auto res = almost_factor_pipeline(g, p, cfg, opt->r, popt);
                Report rep(config);
                rep.kv("n", g.order());
                rep.kv("r", opt->r);
                rep.kv("reduced-order", res.reduced->order());
                rep.kv("reduced-tiles", res.reduced_tiling.tiling.placements.size());
                rep.kv("reduced-mode", std::string(res.reduced_tiling.exact ? "exact" : "local"));
                rep.kv("q1-gadgets", res.q1_count);
                rep.kv("q2-gadgets", res.q2_count);
                rep.kv("kr-placements", res.tiling.placements.size());
                rep.kv("covered", g.order() - static_cast<int>(res.uncovered.size()));
                rep.kv("uncovered-count", res.uncovered.size());
                rep.kv("uncovered", format_vertices(res.uncovered));
                for (const auto& line : res.pair_log) rep.raw("  " + line);
                rep.kv("tiling-verified", verify_tiling(res.tiling));
                if (!opt->out_tiling.empty()) {
                    write_file(opt->out_tiling, serialize(res.tiling));
                    rep.kv("tiling-file", opt->out_tiling);
                }
                out << rep.str();
            };
        });
    }

    // ---- absorb ---------------------------------------------------------
    auto* absorb = app.add_subcommand("absorb", "absorbers, reachability, lattice, assembly");
    absorb->require_subcommand(1);
    {
        struct AbsArgs {
            std::string graph, s;
            int t = 1, want = 1, r = 0;
        };
        auto opt = std::make_shared<AbsArgs>();
        auto* cmd = absorb->add_subcommand("absorbers", "vertex-disjoint (K_r, t)-absorbers for S");
        cmd->add_option("--graph", opt->graph)->required();
        cmd->add_option("--s", opt->s, "1-indexed vertex list, |S| = r")->required();
        cmd->add_option("--t", opt->t);
        cmd->add_option("--want", opt->want)->required();
        cmd->callback([&, opt] {
            action = [&, opt] {
                auto g = detail::load_graph(opt->graph);
                auto s = parse_vertex_list(opt->s);
                int r = static_cast<int>(s.size());
                auto records = find_disjoint_absorbers(g, s, r, opt->t, opt->want);
                Report rep(config);
                rep.kv("target", format_vertices(s));
                rep.kv("t", opt->t);
                rep.kv("found", records.size());
                for (const auto& rec : records) {
                    bool ok = is_absorber(g, rec.target, rec.body, r, rec.t);
                    rep.raw("  body " + format_vertices(rec.body) +
                            (ok ? " (re-verified)" : " (FAILED RE-VERIFICATION)"));
                    if (!ok) exit_code = 2;
                }
                out << rep.str();
            };
        });
    }
    {
        struct ReachArgs {
            std::string graph, w;
            int u = 1, v = 2, r = 4, m = 0, t = 1;
        };
        auto opt = std::make_shared<ReachArgs>();
        auto* cmd = absorb->add_subcommand("reach", "connector search between two vertices");
        cmd->add_option("--graph", opt->graph)->required();
        cmd->add_option("--u", opt->u, "1-indexed")->required();
        cmd->add_option("--v", opt->v, "1-indexed")->required();
        cmd->add_option("--r", opt->r)->required();
        cmd->add_option("--m", opt->m, "forbidden-set size bound");
        cmd->add_option("--t", opt->t);
        cmd->add_option("--w", opt->w, "explicit forbidden set (1-indexed list)");
        cmd->callback([&, opt] {
            action = [&, opt] {
                auto g = detail::load_graph(opt->graph);
                Bits w(static_cast<std::size_t>(g.order()));
                for (int x : parse_vertex_list(opt->w)) w.set(static_cast<std::size_t>(x));
                auto res =
                    is_reachable(g, opt->u - 1, opt->v - 1, {opt->r, opt->m, opt->t}, w);
                Report rep(config);
                rep.kv("u", opt->u);
                rep.kv("v", opt->v);
                rep.kv("reachable", res.ok);
                if (res.ok) rep.kv("connector", format_vertices(res.connector));
                out << rep.str();
            };
        });
    }
    {
        struct LatticeArgs {
            std::string graph, partition, mode = "cert";
            int r = 4;
            double mu = 0.05;
        };
        auto opt = std::make_shared<LatticeArgs>();
        auto* cmd = absorb->add_subcommand("lattice", "robust r-vectors, transferrals, merging");
        cmd->add_option("--graph", opt->graph)->required();
        cmd->add_option("--partition", opt->partition)->required();
        cmd->add_option("--r", opt->r)->required();
        cmd->add_option("--mu", opt->mu, "robustness margin (fraction of n)");
        cmd->add_option("--mode", opt->mode)->check(CLI::IsMember({"cert", "exact"}));
        cmd->callback([&, opt] {
            action = [&, opt] {
                auto g = detail::load_graph(opt->graph);
                auto p = detail::load_partition(opt->partition);
                auto mode = opt->mode == "cert" ? RobustMode::Certificate : RobustMode::ExactSmall;
                auto set = robust_vectors(g, p, opt->r, opt->mu, mode);
                Report rep(config);
                rep.kv("mode", opt->mode);
                rep.kv("mu", std::to_string(opt->mu));
                rep.kv("vectors", set.certificates.size());
                for (const auto& [vec, family] : set.certificates) {
                    std::string key = "vector (";
                    for (std::size_t i = 0; i < vec.size(); ++i)
                        key += (i ? "," : "") + std::to_string(vec[i]);
                    key += ")";
                    rep.kv(key, "family " + std::to_string(family.size()));
                }
                auto tr = find_transferral(set);
                rep.kv("transferral", tr.has_value());
                if (tr)
                    rep.kv("transferral pair",
                           std::to_string(tr->i + 1) + "," + std::to_string(tr->j + 1));
                auto merged = merge_closed_parts(g, p, opt->r, opt->mu, mode);
                rep.kv("parts-before", p.cluster_count());
                rep.kv("parts-after", merged.cluster_count());
                out << rep.str();
            };
        });
    }
    {
        struct BuildArgs {
            std::string graph;
            int r = 4, t = 1;
            double gamma = 0.5, xi = 0.2, beta1 = 0.05, gamma1 = 0.25;
            std::uint64_t seed = 1;
        };
        auto opt = std::make_shared<BuildArgs>();
        auto* cmd = absorb->add_subcommand("build", "assemble an absorbing set");
        cmd->add_option("--graph", opt->graph)->required();
        cmd->add_option("--r", opt->r)->required();
        cmd->add_option("--gamma", opt->gamma, "size budget fraction")->required();
        cmd->add_option("--xi", opt->xi, "leftover fraction (verified by absorb check)")->required();
        cmd->add_option("--t", opt->t);
        cmd->add_option("--seed", opt->seed)->required();
        cmd->add_option("--beta1", opt->beta1);
        cmd->add_option("--gamma1", opt->gamma1);
        cmd->callback([&, opt] {
            action = [&, opt] {
                auto g = detail::load_graph(opt->graph);
                AbsorbingBuildOptions bopt;
                bopt.beta1 = opt->beta1;
                bopt.gamma1 = opt->gamma1;
                auto rep_b = build_absorbing_set(g, opt->r, opt->gamma, opt->xi, opt->t, opt->seed,
                                                 bopt);
                Report rep(config);
                rep.kv("reach-classes", rep_b.reach.cluster_count());
                rep.kv("b-set", format_vertices(rep_b.b_set));
                rep.kv("closed", rep_b.closed);
                rep.kv("family", rep_b.family.size());
                rep.kv("b-covers", rep_b.b_covers.size());
                rep.kv("absorbing-set", format_vertices(rep_b.absorbing_set));
                rep.kv("size", rep_b.absorbing_set.size());
                rep.kv("size-ok", rep_b.size_ok);
                if (!rep_b.failure_stage.empty()) {
                    rep.kv("failure-stage", rep_b.failure_stage);
                    exit_code = 2;
                }
                out << rep.str();
            };
        });
    }
    {
        struct CheckArgs {
            std::string graph, set;
            int r = 4;
            double xi = 0.2;
            long long budget = 200000;
            std::uint64_t seed = 0;
        };
        auto opt = std::make_shared<CheckArgs>();
        auto* cmd = absorb->add_subcommand("check", "verify a xi-absorbing set");
        cmd->add_option("--graph", opt->graph)->required();
        cmd->add_option("--set", opt->set, "1-indexed vertex list")->required();
        cmd->add_option("--r", opt->r)->required();
        cmd->add_option("--xi", opt->xi)->required();
        cmd->add_option("--budget", opt->budget);
        cmd->add_option("--seed", opt->seed);
        cmd->callback([&, opt] {
            action = [&, opt] {
                auto g = detail::load_graph(opt->graph);
                auto a = parse_vertex_list(opt->set);
                auto res = is_absorbing_set(g, a, opt->r, opt->xi, opt->budget, opt->seed);
                Report rep(config);
                rep.kv("set-size", a.size());
                rep.kv("verdict", to_string(res.verdict));
                rep.kv("exhaustive", res.exhaustive);
                rep.kv("leftovers-checked", res.checked);
                if (res.verdict == AbsorbVerdict::Refuted) {
                    rep.kv("counterexample", format_vertices(res.counterexample));
                    exit_code = 2;
                }
                out << rep.str();
            };
        });
    }

    // ---- bound ----------------------------------------------------------
    auto* bound = app.add_subcommand("bound", "closed-form threshold evaluators");
    bound->require_subcommand(1);
    {
        auto s = std::make_shared<long long>(5);
        auto* cmd = bound->add_subcommand("f-rt", "(s-3)/(s-1) odd, (3s-10)/(3s-4) even");
        cmd->add_option("--s", *s)->required();
        cmd->callback([&, s] {
            action = [&, s] { out << to_string(eval_f_rt(*s)) << "\n"; };
        });
    }
    {
        auto r = std::make_shared<long long>(5);
        auto* cmd = bound->add_subcommand("threshold", "1 - 6/(3r-1) for odd r >= 5");
        cmd->add_option("--r", *r)->required();
        cmd->callback([&, r] {
            action = [&, r] { out << to_string(eval_threshold(*r)) << "\n"; };
        });
    }
    {
        auto opt = std::make_shared<std::pair<long long, long long>>(6, 10);
        auto* cmd = bound->add_subcommand("rt-edge", "(3l-10)/(6l-8) n^2 leading term");
        cmd->add_option("--ell", opt->first)->required();
        cmd->add_option("--n", opt->second)->required();
        cmd->callback([&, opt] {
            action = [&, opt] { out << to_string(eval_rt_edge_bound(opt->first, opt->second)) << "\n"; };
        });
    }

    // ---- selftest ---------------------------------------------------------
    {
        auto only = std::make_shared<int>(0);
        auto* cmd = app.add_subcommand("selftest", "run the acceptance suite");
        cmd->add_option("--only", *only, "run a single criterion by number");
        cmd->callback([&, only] {
            action = [&, only] {
                auto results = acceptance::run_acceptance(out, *only);
                bool all = true;
                for (const auto& r : results)
                    if (!r.pass) all = false;
                out << (all ? "selftest: all criteria pass" : "selftest: FAILURES present") << "\n";
                if (!all) exit_code = 2;
            };
        });
    }

    // --jobs is accepted for fixture compatibility; all library paths are
    // sequential and deterministic
    int jobs = 1;
    app.add_option("--jobs", jobs, "worker count (sequential semantics)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (action) action();
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << "\n";
        return 1;
    } catch (const GenerationFailed& e) {
        err << "generation failed: " << e.what() << "\n";
        return 1;
    } catch (const InstanceTooLarge& e) {
        err << "instance too large: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}

}  // namespace kfactor::cli
