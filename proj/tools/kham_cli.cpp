// kham_cli.cpp - single binary gluing generation, oracles, formulas,
// concentration experiments, and the cycle-sampling pipeline
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kham/cycles.hpp"
#include "kham/formulas.hpp"
#include "kham/hypergraph.hpp"
#include "kham/matching.hpp"
#include "kham/models.hpp"
#include "kham/oracle.hpp"
#include "kham/pipeline.hpp"

namespace {

using namespace kham;

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

KGraph load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    return read_kgraph(in);
}

std::vector<std::vector<Vertex>> load_partition(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open partition file: " + path);
    std::vector<std::vector<Vertex>> parts;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') continue;
        std::istringstream ls(line);
        std::vector<Vertex> part;
        Vertex v;
        while (ls >> v) part.push_back(v);
        if (!part.empty()) parts.push_back(std::move(part));
    }
    return parts;
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    return file;
}

struct GenArgs {
    std::string family = "complete";
    int n = 0, k = 3;
    double p = 0.5, delta = 0.6, eps = 0.1;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string out;
};

int run_gen(const GenArgs& a) {
    std::ofstream file;
    std::ostream& out = open_out(file, a.out);
    if (a.family == "complete") {
        write_kgraph(out, gen_complete(a.n, a.k));
    } else if (a.family == "binomial") {
        if (!a.seed_set) throw CLI::ValidationError("--seed is required for binomial");
        write_kgraph(out, gen_binomial(a.n, a.k, a.p, a.seed));
    } else if (a.family == "dirac") {
        if (!a.seed_set) throw CLI::ValidationError("--seed is required for dirac");
        auto inst = gen_dirac(a.n, a.k, a.delta, a.seed);
        out << "# min_codegree=" << inst.achieved_min_codegree
            << " p=" << inst.p_used << " attempts=" << inst.attempts << '\n';
        write_kgraph(out, inst.graph);
    } else if (a.family == "bipartite3") {
        write_kgraph(out, gen_bipartite3(a.n));
    } else if (a.family == "h_epsilon") {
        write_kgraph(out, gen_h_epsilon(a.n, a.eps));
    } else {
        throw CLI::ValidationError("unknown family: " + a.family);
    }
    return 0;
}

struct OracleArgs {
    std::string in;
    std::string partition;
    std::string matrix;
    std::string mode = "cycles";
    int ell = 1;
    int limit_n = 12;
    std::string out;
};

int run_oracle(const OracleArgs& a) {
    auto start = std::chrono::steady_clock::now();
    std::ofstream file;
    std::ostream& out = open_out(file, a.out);
    out << "# schema=1\n";
    if (a.mode == "cycles") {
        KGraph h = load_instance(a.in);
        auto census = count_ham_ell_cycles(h, a.ell, a.limit_n);
        out << "instance,n,k,ell,distinct,orderings,seconds\n";
        out << a.in << ',' << h.n() << ',' << h.k() << ',' << a.ell << ','
            << census.distinct_cycles << ',' << census.orderings << ','
            << seconds_since(start) << '\n';
    } else if (a.mode == "matchings") {
        KGraph h = load_instance(a.in);
        long long count;
        if (!a.partition.empty()) {
            PartiteView view(h, load_partition(a.partition));
            count = count_perfect_matchings_partite(view, a.limit_n);
        } else {
            count = count_perfect_matchings_general(h);
        }
        out << "instance,n,k,mode,count,max_disjoint,seconds\n";
        out << a.in << ',' << h.n() << ',' << h.k() << ",matchings," << count << ','
            << max_disjoint_edges(h) << ',' << seconds_since(start) << '\n';
    } else if (a.mode == "permanent") {
        std::ifstream min(a.matrix.empty() ? a.in : a.matrix);
        if (!min) throw std::runtime_error("cannot open matrix file");
        int m;
        min >> m;
        std::vector<std::vector<int>> b(m, std::vector<int>(m));
        for (auto& row : b)
            for (auto& cell : row) min >> cell;
        out << "instance,m,permanent,seconds\n";
        out << (a.matrix.empty() ? a.in : a.matrix) << ',' << m << ','
            << permanent(b) << ',' << seconds_since(start) << '\n';
    } else {
        throw CLI::ValidationError("unknown mode: " + a.mode);
    }
    return 0;
}

struct FormulaArgs {
    int n = 6, k = 3, ell = 1;
    double delta = 1.0, slack = 1.0, p = 1.0, d = 0.0;
    bool want_psi = false, want_ck = false, want_dirac = false, want_gnp = false,
         want_ckm = false;
};

int run_formula(const FormulaArgs& a) {
    bool any = false;
    if (a.want_ck) {
        std::cout << "c_k(ell) " << c_k_ell(a.k, a.ell) << '\n';
        any = true;
    }
    if (a.want_psi) {
        auto r = psi(a.n, a.k, a.ell);
        std::cout << "psi " << r.value;
        if (!r.reliable) std::cout << " (degenerate: 2-edge cycle, count unreliable)";
        std::cout << '\n';
        any = true;
    }
    if (a.want_dirac) {
        auto b = dirac_lower_bound_log(a.n, a.k, a.ell, a.delta, a.slack);
        std::cout << "dirac_lower_bound_log " << b.log_value;
        if (b.domain_warning) std::cout << " (warning: delta <= 1/2, bound not asserted)";
        std::cout << '\n';
        any = true;
    }
    if (a.want_gnp) {
        std::cout << "gnp_expected_ham_log " << gnp_expected_ham_log(a.n, a.p) << '\n';
        any = true;
    }
    if (a.want_ckm) {
        auto b = ck_matching_bound_log(a.n, a.d);
        std::cout << "ck_matching_bound_log " << b.log_value;
        if (b.domain_warning) std::cout << " (warning: d < n/2)";
        std::cout << '\n';
        any = true;
    }
    if (!any) throw CLI::ValidationError("formula: select at least one of --psi --ck --dirac-log --gnp-log --ck-matching-log");
    return 0;
}

struct BpiArgs {
    std::string in, partition, out;
    double eps = 0.1;
    int trials = 100;
    std::uint64_t seed = 0;
    int workers = 1;
};

int run_bpi(const BpiArgs& a) {
    auto start = std::chrono::steady_clock::now();
    KGraph h = load_instance(a.in);
    PartiteView view(h, load_partition(a.partition));
    const int k = h.k();
    const int m = static_cast<int>(view.part_size());
    // identity prefix on parts 1..k-2
    PermutationTuple prefix;
    for (int i = 0; i < k - 2; ++i) prefix.perms.push_back(view.parts[i]);
    double prob = estimate_mindeg_probability(view, prefix, a.eps, a.trials, a.seed,
                                              a.workers);
    int dstar = partite_min_codegree(view);

    // one deterministic degree histogram of B_pi at trial 0
    Rng rng(derive_seed(a.seed, {0}));
    PermutationTuple sample = prefix;
    sample.perms.push_back(random_permutation(view.parts[k - 2], rng));
    AuxBipartite b = build_aux_bipartite(view, sample);
    std::vector<int> hist(m + 1, 0);
    for (int j = 0; j < m; ++j) {
        int deg = 0;
        for (int c = 0; c < m; ++c) deg += b.adjacency[j][c];
        ++hist[deg];
    }

    std::ofstream file;
    std::ostream& out = open_out(file, a.out);
    out << "# schema=1\n";
    out << "instance,m,dstar,eps,trials,seed,empirical_probability\n";
    out << a.in << ',' << m << ',' << dstar << ',' << a.eps << ',' << a.trials << ','
        << a.seed << ',' << prob << '\n';
    out << "# left-degree histogram (trial 0): ";
    for (int d = 0; d <= m; ++d)
        if (hist[d]) out << d << ":" << hist[d] << ' ';
    out << "\n# seconds=" << seconds_since(start) << '\n';
    return 0;
}

struct PipelineArgs {
    std::string in, out, verify;
    int ell = 1, count = 1;
    std::uint64_t seed = 0;
    int m = 2, t = 5;
    double eta = 0.2, dstar_threshold = 0.0;
};

int run_pipeline(const PipelineArgs& a) {
    auto start = std::chrono::steady_clock::now();
    KGraph h = load_instance(a.in);
    if (!a.verify.empty()) {
        std::ifstream vin(a.verify);
        if (!vin) throw std::runtime_error("cannot open cycle file: " + a.verify);
        std::string line;
        int lineno = 0, bad = 0;
        while (std::getline(vin, line)) {
            if (line.empty() || line[0] == '#' || line.find(',') != std::string::npos)
                continue;
            ++lineno;
            std::istringstream ls(line);
            std::vector<Vertex> order;
            Vertex v;
            while (ls >> v) order.push_back(v);
            auto val = validate_ell_cycle(h, order, a.ell);
            if (!val.ok) {
                ++bad;
                std::cerr << "E: cycle line " << lineno << " invalid ("
                          << val.violations.size() << " bad windows)\n";
            }
        }
        std::cout << "verified " << lineno << " cycles, " << bad << " invalid\n";
        return bad == 0 ? 0 : 1;
    }

    PipelineOptions opt;
    opt.target_m = a.m;
    opt.target_t = a.t;
    opt.eta_target = a.eta;
    opt.dstar_fraction = a.dstar_threshold;
    PipelineResult res = sample_ham_cycles(h, a.ell, a.count, a.seed, opt);

    std::ofstream file;
    std::ostream& out = open_out(file, a.out);
    for (const auto& c : res.cycles) {
        for (std::size_t i = 0; i < c.order.size(); ++i)
            out << (i ? " " : "") << c.order[i];
        out << '\n';
    }
    const auto& rep = res.report;
    out << "# schema=1\n";
    out << "n,k,ell,m,t,count,attempts,achieved_eta,min_dstar,dedupe_collisions,"
           "conn_resamples,seconds\n";
    int min_dstar = rep.dstar_per_cycle.empty()
                        ? 0
                        : *std::min_element(rep.dstar_per_cycle.begin(),
                                            rep.dstar_per_cycle.end());
    out << h.n() << ',' << h.k() << ',' << a.ell << ',' << rep.params.m << ','
        << rep.params.t << ',' << res.cycles.size() << ',' << rep.attempts << ','
        << rep.achieved_eta << ',' << min_dstar << ',' << rep.dedupe_collisions
        << ',' << rep.connecting_resamples << ',' << seconds_since(start) << '\n';
    if (!rep.dirac)
        std::cerr << "W: instance is not delta-Dirac (delta=" << rep.delta
                  << "); proceeding best-effort\n";
    if (!res.complete(a.count)) {
        std::cerr << "E: produced " << res.cycles.size() << "/" << a.count
                  << " cycles\n"
                  << rep.diagnostics;
        return 1;
    }
    return 0;
}

struct ScanArgs {
    int k = 3, ell = 1;
    int n_min = 6, n_max = 9;
    double p = 1.0;
    std::uint64_t seed = 0;
    int limit_n = 12;
    std::string out;
};

int run_scan(const ScanArgs& a) {
    const int d = a.k - a.ell;
    for (int n = a.n_min; n <= a.n_max; ++n) {
        if (n % d != 0 || n < a.k) continue;
        if (n > a.limit_n)
            throw std::runtime_error("scan: cell n=" + std::to_string(n) +
                                     " exceeds oracle limit " +
                                     std::to_string(a.limit_n) +
                                     "; ground-truth only, no sampling");
    }
    std::ofstream file;
    std::ostream& out = open_out(file, a.out);
    out << "# schema=1\n";
    out << "n,k,ell,p,observed,expected_log,ratio,seconds\n";
    for (int n = a.n_min; n <= a.n_max; ++n) {
        if (n % d != 0 || n < a.k) continue;
        auto start = std::chrono::steady_clock::now();
        KGraph h = a.p >= 1.0 ? gen_complete(n, a.k)
                              : gen_binomial(n, a.k, a.p, derive_seed(a.seed, {static_cast<std::uint64_t>(n)}));
        auto census = count_ham_ell_cycles(h, a.ell, a.limit_n);
        double expected_log =
            log_psi(n, a.k, a.ell) + (static_cast<double>(n) / d) * std::log(a.p);
        double ratio = census.distinct_cycles > 0
                           ? std::log(static_cast<double>(census.distinct_cycles)) -
                                 expected_log
                           : -std::numeric_limits<double>::infinity();
        out << n << ',' << a.k << ',' << a.ell << ',' << a.p << ','
            << census.distinct_cycles << ',' << expected_log << ',' << ratio << ','
            << seconds_since(start) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-uniform hypergraph Hamiltonian ell-cycle toolkit"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* cgen = app.add_subcommand("gen", "write an instance in the text format");
    cgen->add_option("--family", gen.family,
                     "complete|binomial|dirac|bipartite3|h_epsilon");
    cgen->add_option("--n", gen.n)->required();
    cgen->add_option("--k", gen.k);
    cgen->add_option("--p", gen.p);
    cgen->add_option("--delta", gen.delta);
    cgen->add_option("--eps", gen.eps);
    cgen->add_option("--seed", gen.seed)->each([&](const std::string&) {
        gen.seed_set = true;
    });
    cgen->add_option("--out", gen.out);

    OracleArgs ora;
    auto* cora = app.add_subcommand("oracle", "exact exponential-time counts");
    cora->add_option("--in", ora.in);
    cora->add_option("--partition", ora.partition);
    cora->add_option("--matrix", ora.matrix);
    cora->add_option("--mode", ora.mode, "cycles|matchings|permanent");
    cora->add_option("--ell", ora.ell);
    cora->add_option("--limit-n", ora.limit_n);
    cora->add_option("--out", ora.out);

    FormulaArgs frm;
    auto* cfrm = app.add_subcommand("formula", "exact counting formulas and log bounds");
    cfrm->add_flag("--psi", frm.want_psi);
    cfrm->add_flag("--ck", frm.want_ck);
    cfrm->add_flag("--dirac-log", frm.want_dirac);
    cfrm->add_flag("--gnp-log", frm.want_gnp);
    cfrm->add_flag("--ck-matching-log", frm.want_ckm);
    cfrm->add_option("--n", frm.n);
    cfrm->add_option("--k", frm.k);
    cfrm->add_option("--ell", frm.ell);
    cfrm->add_option("--delta", frm.delta);
    cfrm->add_option("--slack", frm.slack);
    cfrm->add_option("--p", frm.p);
    cfrm->add_option("--d", frm.d);

    BpiArgs bpi;
    auto* cbpi = app.add_subcommand("bpi", "B_pi min-degree concentration experiment");
    cbpi->add_option("--in", bpi.in)->required();
    cbpi->add_option("--partition", bpi.partition)->required();
    cbpi->add_option("--eps", bpi.eps);
    cbpi->add_option("--trials", bpi.trials);
    cbpi->add_option("--seed", bpi.seed)->required();
    cbpi->add_option("--workers", bpi.workers);
    cbpi->add_option("--out", bpi.out);

    PipelineArgs pip;
    auto* cpip = app.add_subcommand("pipeline", "sample distinct Hamiltonian ell-cycles");
    cpip->add_option("--in", pip.in)->required();
    cpip->add_option("--ell", pip.ell);
    cpip->add_option("--count", pip.count);
    cpip->add_option("--seed", pip.seed)->required();
    cpip->add_option("--m", pip.m, "target m for the parameter solver");
    cpip->add_option("--t", pip.t, "target t for the parameter solver");
    cpip->add_option("--eta", pip.eta);
    cpip->add_option("--dstar-threshold", pip.dstar_threshold,
                     "accept partitions with delta* >= threshold*m");
    cpip->add_option("--out", pip.out);
    cpip->add_option("--verify", pip.verify, "re-validate cycle lines from a file");

    ScanArgs scn;
    auto* cscn = app.add_subcommand("scan", "formula-vs-oracle sweep on small instances");
    cscn->add_option("--k", scn.k);
    cscn->add_option("--ell", scn.ell);
    cscn->add_option("--n-min", scn.n_min);
    cscn->add_option("--n-max", scn.n_max);
    cscn->add_option("--p", scn.p);
    cscn->add_option("--seed", scn.seed);
    cscn->add_option("--limit-n", scn.limit_n);
    cscn->add_option("--out", scn.out);

    try {
        app.parse(argc, argv);
        if (cgen->parsed()) return run_gen(gen);
        if (cora->parsed()) return run_oracle(ora);
        if (cfrm->parsed()) return run_formula(frm);
        if (cbpi->parsed()) return run_bpi(bpi);
        if (cpip->parsed()) return run_pipeline(pip);
        if (cscn->parsed()) return run_scan(scn);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "E: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "E: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "E: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
