// Command-line front end: generation, lifting, verification, enumeration,
// local search, reduction, facet recovery, brute-force oracles, and the
// cluster-counting report, all over the line-oriented text formats.
//
// Exit codes: 0 success, 1 verification-false, 2 invalid input,
// 3 budget/solver failure.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "selfcomm/enumerate.hpp"
#include "selfcomm/generators.hpp"
#include "selfcomm/io.hpp"
#include "selfcomm/lifting.hpp"
#include "selfcomm/local.hpp"
#include "selfcomm/multifacet.hpp"
#include "selfcomm/reduction.hpp"

using namespace selfcomm;

namespace {

MemberSet parse_set(const std::string& s) {
    std::istringstream ss(s);
    MemberSet out;
    long long v;
    while (ss >> v) out.push_back(static_cast<MemberId>(v));
    if (!ss.eof()) throw std::invalid_argument("bad member set '" + s + "'");
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.empty()) throw std::invalid_argument("empty member set");
    return out;
}

std::vector<int> parse_ints(const std::string& s) {
    std::istringstream ss(s);
    std::vector<int> out;
    int v;
    while (ss >> v) out.push_back(v);
    if (!ss.eof()) throw std::invalid_argument("bad integer list '" + s + "'");
    return out;
}

struct ParamFlags {
    std::string theta = "1";
    std::string alpha;
    std::string beta;

    CommunityParams parse() const {
        CommunityParams p{parse_rational(theta), parse_rational(alpha), parse_rational(beta)};
        p.validate();
        return p;
    }
};

void add_param_flags(CLI::App* cmd, ParamFlags& flags, bool required = true) {
    cmd->add_option("--theta", flags.theta, "vote prefix scale theta");
    auto* a = cmd->add_option("--alpha", flags.alpha, "inside vote fraction alpha");
    auto* b = cmd->add_option("--beta", flags.beta, "outside vote fraction beta");
    if (required) {
        a->required();
        b->required();
    }
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
    return out;
}

void emit_communities(const std::string& out_path, const CommunityParams& params,
                      const CommunitySet& found) {
    if (!out_path.empty()) {
        auto out = open_out(out_path);
        write_communities(out, params, found);
    }
    std::cout << "communities found: " << found.size() << "\n";
    for (const auto& [members, tag] : found.entries) {
        for (size_t i = 0; i < members.size(); ++i) std::cout << (i ? " " : "") << members[i];
        std::cout << "\n";
    }
}

void print_tally(const VoteTally& tally, const MemberSet& S) {
    std::vector<std::pair<MemberId, Rational>> rows(tally.votes.begin(), tally.votes.end());
    std::sort(rows.begin(), rows.end());
    for (const auto& [i, v] : rows)
        std::cout << (set_contains(S, i) ? "member " : "outside ") << i << ": "
                  << format_rational(v) << "\n";
}

int cmd_generate(const std::string& kind, long long L, long long b, long long max_union,
                 int n, double p, long long k, long long t, bool selfloops,
                 const ParamFlags& pflags, double gamma, std::uint64_t seed,
                 const std::string& out_path, const std::string& planted_path) {
    Rng rng(seed);
    auto planted_file = [&](const CommunityParams& params, const std::vector<MemberSet>& sets) {
        if (planted_path.empty()) return;
        auto out = open_out(planted_path);
        write_community_list(out, params, sets, /*planted=*/true);
    };
    if (kind == "blob") {
        Rational theta = parse_rational(pflags.theta);
        BlobInstance inst = gen_blob_instance(L, b, rng, max_union, theta);
        auto out = open_out(out_path);
        write_ranked(out, inst.system);
        std::vector<MemberSet> singles;
        for (const auto& pc : inst.planted)
            if (static_cast<long long>(pc.members.size()) == b) singles.push_back(pc.members);
        planted_file({theta, Rational(1), Rational(1, 2)}, singles);
        std::cout << "blob instance n=" << inst.system.n << " blobs=" << L << "\n";
    } else if (kind == "overlap") {
        OverlapPair pair = gen_overlap_pair(n);
        auto out = open_out(out_path);
        write_ranked(out, pair.system);
        planted_file(pair.params, {pair.a1, pair.a2});
        std::cout << "overlap pair n=" << n << "\n";
    } else if (kind == "gnp") {
        SocialGraph g = gen_gnp(n, p, selfloops, rng);
        auto out = open_out(out_path);
        write_graph(out, g, false);
        std::cout << "g(n,p) n=" << n << " p=" << p << "\n";
    } else if (kind == "gnp-clique") {
        PlantedClique pc = gen_gnp_planted_clique(n, p, static_cast<int>(k), selfloops, rng);
        auto out = open_out(out_path);
        write_graph(out, pc.graph, false);
        Rational beta = Rational(1) - Rational(llround(gamma * 1e9), 1000000000LL);
        planted_file({Rational(1), Rational(1), beta}, {pc.clique});
        std::cout << "planted clique n=" << n << " k=" << k << "\n";
    } else if (kind == "planted-weighted") {
        PlantedWeighted pw = gen_planted_weighted(n, static_cast<int>(t), rng);
        auto out = open_out(out_path);
        write_weighted(out, pw.system);
        planted_file(pw.params, {pw.community});
        std::cout << "planted weighted n=" << n << " t=" << t
                  << " alpha=" << format_rational(pw.params.alpha)
                  << " beta=" << format_rational(pw.params.beta) << "\n";
    } else if (kind == "planted-faceted") {
        CommunityParams params{parse_rational(pflags.theta),
                               pflags.alpha.empty() ? Rational(1) : parse_rational(pflags.alpha),
                               pflags.beta.empty() ? Rational(1, 5) : parse_rational(pflags.beta)};
        PlantedFaceted pf = gen_planted_faceted(n, static_cast<int>(t), rng, params);
        auto out = open_out(out_path);
        write_faceted(out, pf.system);
        planted_file(pf.params, {pf.community});
        std::cout << "planted faceted n=" << n << " t=" << t << "\n";
    } else {
        throw std::invalid_argument("unknown kind '" + kind + "'");
    }
    return 0;
}

int cmd_report(int n, long long l, double epsilon, double delta, long long seeds,
               std::uint64_t seed0, long long budget, const std::string& out_path) {
    if (n < 1 || l < 1 || epsilon <= 0 || epsilon >= 0.5 || delta < 0 || delta >= 1)
        throw std::invalid_argument("bad report parameters");
    long long k = static_cast<long long>(std::ceil(2.0 * std::log2(n) / l * (1.0 - delta)));
    if (k < 1) k = 1;
    double p = std::pow(2.0, -static_cast<double>(l));
    Rational alpha(1);
    Rational beta = Rational(1, 2) + Rational(llround(epsilon * 1e9), 1000000000LL);
    double expect = 0.5 * static_cast<double>(binomial_capped(n, k, (1LL << 62))) *
                    std::pow(n, -static_cast<double>(k) * (1.0 - delta));

    std::ostringstream csv;
    csv << "seed,n,l,epsilon,delta,k,p,clusters,subsets_checked,expected_lower_bound\n";
    for (long long s = 0; s < seeds; ++s) {
        Rng rng = Rng::derive(seed0, {static_cast<std::uint64_t>(s)});
        SocialGraph g = gen_gnp(n, p, /*selfloops=*/true, rng);
        ClusterScan scan = count_alpha_beta_clusters(g, alpha, beta, {k}, budget);
        csv << s << "," << n << "," << l << "," << epsilon << "," << delta << "," << k << ","
            << p << "," << scan.clusters.size() << "," << scan.subsets_checked << "," << expect
            << "\n";
    }
    if (!out_path.empty()) {
        auto out = open_out(out_path);
        out << csv.str();
    }
    std::cout << csv.str();
    return 0;
}

int run(int argc, char** argv) {
    CLI::App app{"self-determined community toolkit"};
    app.require_subcommand(1);

    // shared option storage
    std::string ranked_path, weighted_path, graph_path, faceted_path, out_path, planted_path;
    std::string set_str, psi_str, method = "direct", kind, communities_path, reduced_path;
    ParamFlags pflags;
    std::uint64_t seed = 1;
    int threads = 1;
    long long size = 0, k1 = 0, k2 = 0, n2 = 0, budget = 2'000'000;
    long long draws = 0, hit_threshold = 0, seeds_per_cell = 200;
    long long min_size = 1, max_size = 0, quasik = 0, mf_m = 0;
    long long gen_L = 4, gen_b = 4, max_union = 1, gen_k = 0, gen_t = 0, rep_l = 2, rep_seeds = 20;
    int gen_n = 16, limit = 14;
    double delta = 0.1, p = 0.5, teleport = 0.15, gamma = 0.3, rep_eps = 0.1, rep_delta = -1;
    double epsilon_sweep = -1;
    std::string eps_str;
    bool selfloops = false, cluster_mode = false, all_mode = false, back_mode = false;
    bool quasipoly = false, mf_enumerate = false;

    auto* gen = app.add_subcommand("generate", "generate fixture instances");
    gen->add_option("--kind", kind,
                    "blob | overlap | gnp | gnp-clique | planted-weighted | planted-faceted")
        ->required();
    gen->add_option("--blobs", gen_L, "blob count L");
    gen->add_option("--blob-size", gen_b, "blob size b");
    gen->add_option("--max-union", max_union, "largest planted blob union");
    gen->add_option("--n", gen_n, "member / vertex count");
    gen->add_option("--p", p, "edge probability");
    gen->add_option("--k", gen_k, "planted clique size");
    gen->add_option("--t", gen_t, "planted community size");
    gen->add_flag("--selfloops", selfloops, "add a self-loop on every vertex");
    gen->add_option("--gamma", gamma, "cluster gap for the planted-clique tag");
    add_param_flags(gen, pflags, /*required=*/false);
    gen->add_option("--rng-seed", seed, "random seed");
    gen->add_option("--out", out_path, "instance output file")->required();
    gen->add_option("--planted-out", planted_path, "planted communities output file");

    auto* lift_cmd = app.add_subcommand("lift", "graph -> weighted affinity system");
    lift_cmd->add_option("--graph", graph_path)->required();
    lift_cmd->add_option("--method", method, "direct | shortest-path | ppr | resistance");
    lift_cmd->add_option("--teleport", teleport, "ppr teleport probability");
    lift_cmd->add_option("--out", out_path, "weighted system output file")->required();

    auto* ver = app.add_subcommand("verify", "check a candidate community");
    ver->add_option("--ranked", ranked_path);
    ver->add_option("--weighted", weighted_path);
    ver->add_option("--graph", graph_path);
    ver->add_option("--faceted", faceted_path);
    ver->add_option("--set", set_str, "candidate members, e.g. \"0 1 2\"")->required();
    ver->add_option("--psi", psi_str, "facet per member of --set, in sorted member order");
    ver->add_flag("--cluster", cluster_mode, "(alpha,beta)-cluster check instead (graph input)");
    add_param_flags(ver, pflags);

    auto* enu = app.add_subcommand("enumerate", "enumerate communities of one size");
    enu->add_option("--ranked", ranked_path)->required();
    enu->add_option("--size", size, "community size t")->required();
    add_param_flags(enu, pflags);
    enu->add_option("--delta", delta, "failure probability target");
    enu->add_option("--k1", k1, "rough subset size override");
    enu->add_option("--k2", k2, "purification sample size override");
    enu->add_option("--n2", n2, "purification repetition override");
    enu->add_option("--budget", budget, "candidate budget");
    enu->add_flag("--quasipoly", quasipoly, "exhaustive multiset baseline instead");
    enu->add_option("--k", quasik, "quasipoly multiset size override");
    enu->add_option("--min-size", min_size, "quasipoly size range start");
    enu->add_option("--max-size", max_size, "quasipoly size range end (default t)");
    enu->add_option("--rng-seed", seed, "random seed");
    enu->add_option("--threads", threads, "worker threads (results independent of it)");
    enu->add_option("--out", out_path, "communities output file");

    long long seed_member = -1;
    auto* loc = app.add_subcommand("local", "seed-local search / whole-system sweep");
    loc->add_option("--ranked", ranked_path)->required();
    add_param_flags(loc, pflags);
    loc->add_option("--seed-member", seed_member, "seed member id");
    loc->add_option("--size", size, "target community size t");
    loc->add_option("--delta", delta, "failure probability target");
    loc->add_option("--draws", draws, "two-hop sample count override");
    loc->add_option("--hit-threshold", hit_threshold, "rough filter hit threshold override");
    loc->add_flag("--all", all_mode, "sweep every size and seed");
    loc->add_option("--epsilon", epsilon_sweep, "sweep grid resolution");
    loc->add_option("--seeds-per-cell", seeds_per_cell, "sweep seed cap per grid cell");
    loc->add_option("--rng-seed", seed, "random seed");
    loc->add_option("--out", out_path, "communities output file");

    auto* red = app.add_subcommand("reduce", "weighted -> ranked blob expansion");
    red->add_option("--weighted", weighted_path)->required();
    add_param_flags(red, pflags);
    red->add_option("--size", size, "community size t");
    red->add_option("--epsilon", eps_str, "approximation loss epsilon (rational)");
    red->add_flag("--back", back_mode, "map reduced communities back instead");
    red->add_option("--reduced", reduced_path, "reduced ranked instance (for --back)");
    red->add_option("--communities", communities_path, "reduced communities file (for --back)");
    red->add_option("--out", out_path, "output file")->required();

    auto* fac = app.add_subcommand("facets", "facet recovery / multifaceted enumeration");
    fac->add_option("--faceted", faceted_path)->required();
    add_param_flags(fac, pflags);
    fac->add_option("--set", set_str, "candidate members (recovery mode)");
    fac->add_flag("--enumerate", mf_enumerate, "enumerate communities instead");
    fac->add_option("--size", size, "community size t (enumerate mode)");
    fac->add_option("--delta", delta, "failure probability target");
    fac->add_option("--k1", k1, "rough subset size override");
    fac->add_option("--k2", k2, "purification sample size override");
    fac->add_option("--n2", n2, "purification repetition override");
    fac->add_option("--m", mf_m, "final voter multiset size override");
    fac->add_option("--budget", budget, "work budget");
    fac->add_option("--rng-seed", seed, "random seed");
    fac->add_option("--out", out_path, "communities output file");

    auto* ora = app.add_subcommand("oracle", "brute-force ground truth (small n)");
    ora->add_option("--ranked", ranked_path);
    ora->add_option("--weighted", weighted_path);
    add_param_flags(ora, pflags);
    ora->add_option("--min-size", min_size, "smallest size scanned");
    ora->add_option("--max-size", max_size, "largest size scanned (default n)");
    ora->add_option("--limit", limit, "refuse above this n");
    ora->add_option("--out", out_path, "communities output file");

    auto* rep = app.add_subcommand("report", "cluster-count experiment CSV");
    rep->add_option("--n", gen_n, "vertex count")->required();
    rep->add_option("--l", rep_l, "edge probability exponent (p = 2^-l)");
    rep->add_option("--epsilon", rep_eps, "cluster gap epsilon (beta = 1/2 + epsilon)");
    rep->add_option("--delta", rep_delta, "size shrink delta (default epsilon/4)");
    rep->add_option("--seeds", rep_seeds, "Monte-Carlo repetitions");
    rep->add_option("--budget", budget, "subset scan budget");
    rep->add_option("--rng-seed", seed, "random seed");
    rep->add_option("--out", out_path, "CSV output file (also printed)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (gen->parsed())
        return cmd_generate(kind, gen_L, gen_b, max_union, gen_n, p, gen_k, gen_t, selfloops,
                            pflags, gamma, seed, out_path, planted_path);

    if (lift_cmd->parsed()) {
        SocialGraph g = load_graph(graph_path);
        LiftConfig config;
        config.teleport = teleport;
        if (method == "direct") config.method = LiftConfig::Method::direct;
        else if (method == "shortest-path") config.method = LiftConfig::Method::shortest_path;
        else if (method == "ppr") config.method = LiftConfig::Method::ppr;
        else if (method == "resistance") config.method = LiftConfig::Method::resistance;
        else throw std::invalid_argument("unknown lift method '" + method + "'");
        WeightedSystem sys = lift(g, config);
        auto out = open_out(out_path);
        write_weighted(out, sys);
        std::cout << "lifted n=" << sys.n << " method=" << method << "\n";
        return 0;
    }

    if (ver->parsed()) {
        MemberSet S = parse_set(set_str);
        CommunityParams params = pflags.parse();
        VerifyResult result;
        if (!ranked_path.empty()) {
            result = verify_ranked_community(load_ranked(ranked_path), S, params);
        } else if (!weighted_path.empty()) {
            result = verify_weighted_community(load_weighted(weighted_path), S, params);
        } else if (!graph_path.empty()) {
            SocialGraph g = load_graph(graph_path);
            if (cluster_mode) {
                bool ok = verify_alpha_beta_cluster(g, S, params.alpha, params.beta);
                std::cout << (ok ? "cluster" : "not a cluster") << "\n";
                return ok ? 0 : 1;
            }
            result = verify_graph_community(g, S, params);
        } else if (!faceted_path.empty()) {
            FacetedSystem sys = load_faceted(faceted_path);
            if (psi_str.empty()) throw std::invalid_argument("faceted verify needs --psi");
            std::vector<int> facets = parse_ints(psi_str);
            if (facets.size() != S.size())
                throw std::invalid_argument("--psi length must match --set");
            FacetAssignment psi;
            for (size_t i = 0; i < S.size(); ++i) psi.psi[S[i]] = facets[i];
            result = verify_multifaceted(sys, S, psi, params);
        } else {
            throw std::invalid_argument("verify needs one of --ranked/--weighted/--graph/--faceted");
        }
        std::cout << (result.ok ? "community" : "not a community") << "\n";
        print_tally(result.tally, S);
        return result.ok ? 0 : 1;
    }

    if (enu->parsed()) {
        RankedSystem sys = load_ranked(ranked_path);
        CommunityParams params = pflags.parse();
        CommunitySet found;
        if (quasipoly) {
            std::optional<long long> k_override;
            if (quasik > 0) k_override = quasik;
            found = enumerate_quasipoly(sys, params, k_override,
                                        {min_size, max_size > 0 ? max_size : size}, budget);
        } else {
            EnumConfig config;
            config.params = params;
            config.size = size;
            config.delta = delta;
            config.k1 = k1;
            config.k2 = k2;
            config.n2 = n2;
            config.candidate_budget = budget;
            config.rng_seed = seed;
            config.threads = threads;
            found = enumerate_main(sys, config);
        }
        emit_communities(out_path, params, found);
        return 0;
    }

    if (loc->parsed()) {
        RankedSystem sys = load_ranked(ranked_path);
        CommunityParams params = pflags.parse();
        if (all_mode) {
            AllLocalConfig config;
            config.params = params;
            config.delta = delta;
            if (epsilon_sweep > 0) config.epsilon = epsilon_sweep;
            config.seeds_per_cell = seeds_per_cell;
            config.rng_seed = seed;
            CommunitySet found = enumerate_all_local(sys, config);
            emit_communities(out_path, params, found);
            return 0;
        }
        if (seed_member < 0 || size <= 0)
            throw std::invalid_argument("local needs --seed-member and --size (or --all)");
        LocalConfig config;
        config.params = params;
        config.size = size;
        config.delta = delta;
        config.draws = draws;
        config.hit_threshold = hit_threshold;
        config.rng_seed = seed;
        Rng rng(seed);
        auto found = local_find(sys, static_cast<MemberId>(seed_member), config, rng);
        if (!found) {
            std::cout << "no community found\n";
            return 0;
        }
        CommunitySet set;
        set.add(found->members, "local");
        emit_communities(out_path, params, set);
        return 0;
    }

    if (red->parsed()) {
        WeightedSystem sys = load_weighted(weighted_path);
        CommunityParams params = pflags.parse();
        if (back_mode) {
            if (reduced_path.empty() || communities_path.empty())
                throw std::invalid_argument("--back needs --reduced and --communities");
            std::ifstream rin(reduced_path);
            if (!rin) throw std::invalid_argument("cannot open '" + reduced_path + "'");
            auto blob_map = read_blob_map_comment(rin);
            if (!blob_map) throw std::invalid_argument("no blob map comment in reduced instance");
            std::ifstream cin_file(communities_path);
            if (!cin_file) throw std::invalid_argument("cannot open '" + communities_path + "'");
            CommunityFile file = read_communities(cin_file);
            CommunitySet mapped = map_back(file.communities, *blob_map, sys, params);
            auto out = open_out(out_path);
            write_communities(out, params, mapped);
            std::cout << "mapped back: " << mapped.size() << "\n";
            return 0;
        }
        if (size <= 0 || eps_str.empty())
            throw std::invalid_argument("reduce needs --size and --epsilon");
        auto [ranked, blob_map] = reduce(sys, params, size, parse_rational(eps_str));
        auto out = open_out(out_path);
        write_ranked(out, ranked, blob_map);
        std::cout << "reduced n=" << ranked.n << " blob=" << blob_map.k << "\n";
        return 0;
    }

    if (fac->parsed()) {
        FacetedSystem sys = load_faceted(faceted_path);
        CommunityParams params = pflags.parse();
        if (mf_enumerate) {
            MfEnumConfig config;
            config.params = params;
            config.size = size;
            config.delta = delta;
            config.k1 = k1;
            config.k2 = k2;
            if (n2 > 0) config.n2 = n2;
            config.m = mf_m;
            config.budget = budget;
            config.rng_seed = seed;
            auto found = enumerate_multifaceted(sys, config);
            CommunitySet set;
            for (const auto& [members, psi] : found) set.add(members, "multifacet");
            emit_communities(out_path, params, set);
            return 0;
        }
        if (set_str.empty()) throw std::invalid_argument("facets needs --set (or --enumerate)");
        MemberSet S = parse_set(set_str);
        Rng rng(seed);
        RecoverResult result = recover_facets(sys, S, params, rng);
        if (result.status == RecoverStatus::infeasible) {
            std::cout << "infeasible\n";
            return 1;
        }
        if (result.status == RecoverStatus::retry_exhausted) {
            std::cout << "rounding retries exhausted\n";
            return 3;
        }
        std::cout << (result.exact ? "exact" : "relaxed") << "\n";
        for (MemberId i : S) std::cout << i << ":" << result.psi.at(i) << "\n";
        return 0;
    }

    if (ora->parsed()) {
        CommunityParams params = pflags.parse();
        CommunitySet found;
        if (!ranked_path.empty()) {
            RankedSystem sys = load_ranked(ranked_path);
            found = brute_force_oracle(sys, params, {min_size, max_size > 0 ? max_size : sys.n},
                                       limit);
        } else if (!weighted_path.empty()) {
            WeightedSystem sys = load_weighted(weighted_path);
            found = brute_force_oracle(sys, params, {min_size, max_size > 0 ? max_size : sys.n},
                                       limit);
        } else {
            throw std::invalid_argument("oracle needs --ranked or --weighted");
        }
        emit_communities(out_path, params, found);
        return 0;
    }

    if (rep->parsed())
        return cmd_report(gen_n, rep_l, rep_eps, rep_delta < 0 ? rep_eps / 4 : rep_delta,
                          rep_seeds, seed, budget, out_path);

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const SolverFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
