#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coopnet/census.hpp"
#include "coopnet/csv.hpp"
#include "coopnet/generators.hpp"
#include "coopnet/graph6.hpp"
#include "coopnet/metrics.hpp"
#include "coopnet/simulate.hpp"
#include "coopnet/theory.hpp"

using namespace coopnet;

namespace {

struct GraphSource {
    std::string gen;
    std::string edges;
    std::string graph6;
    std::uint64_t seed = 0;
    bool largest_component = false;

    void add_to(CLI::App* app, bool with_seed = true) {
        app->add_option("--gen", gen, "generator spec, e.g. star:9, lattice:5:vn, er:100:0.05");
        app->add_option("--edges", edges, "edge-list file (two 0-based node indices per line)");
        app->add_option("--graph6", graph6, "graph6 string");
        app->add_flag("--largest-component", largest_component, "analyse the largest component of a disconnected input");
        if (with_seed) app->add_option("--seed", seed, "seed for random generators");
    }

    bool given() const { return !gen.empty() || !edges.empty() || !graph6.empty(); }

    std::string label() const {
        if (!gen.empty()) return gen;
        if (!edges.empty()) return edges;
        return graph6;
    }

    Graph load() const {
        const int count = !gen.empty() + !edges.empty() + !graph6.empty();
        if (count != 1) throw MissingInput("give exactly one of --gen, --edges, --graph6");
        Graph g;
        if (!gen.empty()) return generate(gen, seed);
        if (!graph6.empty()) {
            g = parse_graph6(graph6);
        } else {
            std::ifstream in(edges);
            if (!in) throw MissingInput("cannot open edge list '" + edges + "'");
            auto el = read_edge_list(in);
            g = build_graph(el.n, el.edges, Validation::structural);
        }
        if (largest_component) return coopnet::largest_component(g);
        return validate(g, Validation::analysis);
    }
};

struct Output {
    std::string path;
    bool no_timestamp = false;
    std::unique_ptr<std::ofstream> file;

    void add_to(CLI::App* app) {
        app->add_option("--out", path, "output CSV file (default: stdout)");
        app->add_flag("--no-timestamp", no_timestamp, "omit the '# generated' header line");
    }

    std::ostream& open() {
        if (path.empty() || path == "-") return std::cout;
        file = std::make_unique<std::ofstream>(path);
        if (!*file) throw MissingInput("cannot write '" + path + "'");
        return *file;
    }

    CsvWriter writer() {
        CsvWriter w(open());
        if (!no_timestamp) w.comment_timestamp();
        return w;
    }
};

struct ConditionFilter {
    std::string game, rule, scheme;

    void add_to(CLI::App* app) {
        app->add_option("--game", game, "pgg or dg (default: both)");
        app->add_option("--rule", rule, "pc, db or bd (default: all)");
        app->add_option("--scheme", scheme, "avg or acc (default: both)");
    }

    std::vector<Condition> select() const { return select_conditions(game, rule, scheme); }
};

std::vector<double> parse_values(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        auto colon = tok.find(':');
        if (colon == std::string::npos) {
            out.push_back(parse_double_field(tok));
            continue;
        }
        // start:stop:count, inclusive
        auto parts = parse_generator_spec(tok);
        const double a = parse_double_field(parts.family);
        if (parts.params.size() != 2) throw InvalidParameter("range must be start:stop:count");
        const double b = parse_double_field(parts.params[0]);
        const int n = std::stoi(parts.params[1]);
        if (n < 2) throw InvalidParameter("range needs count >= 2");
        for (int k = 0; k < n; ++k) out.push_back(a + (b - a) * k / (n - 1));
    }
    if (out.empty()) throw InvalidParameter("empty value list");
    return out;
}

std::string substitute(const std::string& spec, const std::string& value) {
    auto pos = spec.find("{}");
    if (pos == std::string::npos) return spec;
    return spec.substr(0, pos) + value + spec.substr(pos + 2);
}

std::string short_number(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

void print_critical(std::ostream& os, const Condition& c, const CriticalValue& v) {
    os << condition_label(c) << ": numerator=" << format_double(v.numerator)
       << " denominator=" << format_double(v.denominator) << " value=" << format_double(v.value);
    if (!v.exact.empty()) os << " exact=" << v.exact;
    os << " category=" << to_string(v.category) << '\n';
}

int cmd_critical(const GraphSource& src, const ConditionFilter& filt, bool exact, Output& out) {
    Graph g = src.load();
    auto conds = filt.select();
    GraphRecord rec = compute_record(g, exact);
    if (rec.failed) throw SolverDivergence(rec.error);
    for (const auto& c : conds) print_critical(std::cout, c, rec.at(c));
    if (!out.path.empty()) {
        auto w = out.writer();
        write_records(w, {rec}, conds);
    }
    return 0;
}

int cmd_census(int n_max, const std::vector<std::string>& atlas, bool exact, int threads, Output& out,
               const std::string& summary_path) {
    auto graphs = census_graphs(n_max, atlas);
    auto recs = compute_records(graphs, exact, threads);
    std::vector<Condition> all(kConditions.begin(), kConditions.end());
    if (!out.path.empty()) {
        auto w = out.writer();
        write_records(w, recs, all);
    }
    std::ofstream sf;
    std::ostream* so = &std::cout;
    if (!summary_path.empty()) {
        sf.open(summary_path);
        if (!sf) throw MissingInput("cannot write '" + summary_path + "'");
        so = &sf;
    }
    CsvWriter sw(*so);
    if (!out.no_timestamp && !summary_path.empty()) sw.comment_timestamp();
    write_summary(sw, recs, all);
    return 0;
}

int cmd_ensemble(const std::string& spec, const std::string& values, long samples, std::uint64_t seed,
                 const ConditionFilter& filt, int threads, bool plotdata, Output& out) {
    std::vector<std::string> points;
    std::vector<double> xs;
    if (spec.find("{}") == std::string::npos) {
        points.push_back(spec);
        xs.push_back(0);
    } else {
        if (values.empty()) throw InvalidParameter("spec has a {} placeholder; give --values");
        for (double v : parse_values(values)) {
            xs.push_back(v);
            points.push_back(substitute(spec, short_number(v)));
        }
    }
    auto conds = filt.select();
    auto w = out.writer();
    if (plotdata) w.row({"panel", "x", "y", "err"});
    else w.row({"spec", "x", "game", "rule", "scheme", "samples", "successes", "failures", "nonfinite", "mean", "std"});
    for (std::size_t k = 0; k < points.size(); ++k) {
        auto res = run_ensemble(points[k], samples, derive_seed(seed, k), conds, threads);
        for (std::size_t c = 0; c < conds.size(); ++c) {
            const auto& p = res[c];
            if (plotdata)
                w.row({condition_label(conds[c]), format_double(xs[k]), format_double(p.mean), format_double(p.stddev)});
            else
                w.row({p.spec, format_double(xs[k]), to_string(conds[c].game), to_string(conds[c].rule),
                       to_string(conds[c].scheme), std::to_string(p.samples), std::to_string(p.successes),
                       std::to_string(p.failures), std::to_string(p.nonfinite), format_double(p.mean),
                       format_double(p.stddev)});
        }
    }
    return 0;
}

int cmd_simulate(const GraphSource& src, SimConfig cfg, const std::string& values, bool plotdata, bool trace,
                 Output& out) {
    Graph g = src.load();
    const bool pgg = cfg.game == GameKind::PGG;
    std::vector<double> params = values.empty() ? std::vector<double>{pgg ? cfg.r : cfg.b} : parse_values(values);
    const double theory = to_double(ThresholdEngine<double>(g).critical(cfg.game, cfg.rule, cfg.scheme).value);
    const std::uint64_t seed = cfg.seed;
    for (double p : params) {
        SimConfig probe = cfg;
        (pgg ? probe.r : probe.b) = p;
        validate(probe);
    }
    auto w = out.writer();
    if (plotdata) w.row({"panel", "x", "y", "err"});
    else
        w.row({"graph", "n", "game", "rule", "scheme", "param", "delta", "replicates", "seed", "mean_rho_c", "std_error",
               "fixation_c", "fixation_d", "unresolved", "theory"});
    for (std::size_t k = 0; k < params.size(); ++k) {
        (pgg ? cfg.r : cfg.b) = params[k];
        cfg.seed = derive_seed(seed, k);
        if (trace) {
            Rng rng = make_rng(cfg.seed, 0);
            run_replicate(g, cfg, rng, [&](long sweep, int coop) {
                std::cerr << "trace param=" << params[k] << " sweep=" << sweep << " cooperators=" << coop << '\n';
            });
        }
        auto o = estimate(g, cfg);
        if (plotdata) {
            w.row({condition_label({cfg.game, cfg.rule, cfg.scheme}), format_double(params[k]), format_double(o.mean_rho_c),
                   format_double(o.std_error)});
        } else {
            w.row({src.label(), std::to_string(g.size()), to_string(cfg.game), to_string(cfg.rule), to_string(cfg.scheme),
                   format_double(params[k]), format_double(cfg.delta), std::to_string(cfg.replicates),
                   std::to_string(seed), format_double(o.mean_rho_c), format_double(o.std_error),
                   std::to_string(o.fixation_c), std::to_string(o.fixation_d), std::to_string(o.unresolved),
                   format_double(theory)});
        }
    }
    return 0;
}

int cmd_rank(const std::string& records, const ConditionFilter& filt, std::optional<int> n, int top, int bottom,
             const GraphSource& lookup, Output& out) {
    std::ifstream in(records);
    if (!in) throw MissingInput("cannot open records CSV '" + records + "'");
    auto table = read_csv(in);
    auto conds = filt.select();
    std::optional<std::string> id;
    if (lookup.given()) id = graph_id(lookup.load());
    const bool listing = !out.path.empty();
    std::optional<CsvWriter> w;
    if (listing) {
        w.emplace(out.writer());
        w->row({"game", "rule", "scheme", "rank", "id", "n", "value", "category"});
    }
    for (const auto& c : conds) {
        auto es = read_rank_entries(table, c, n);
        if (es.empty()) throw MissingInput("no records for " + condition_label(c));
        sort_ranking(es);
        std::cout << condition_label(c) << ": " << es.size() << " graphs\n";
        for (int k = 0; k < top && k < static_cast<int>(es.size()); ++k)
            std::cout << "  best " << k + 1 << ": " << es[k].id << " " << format_double(es[k].value) << '\n';
        for (int k = 0; k < bottom && k < static_cast<int>(es.size()); ++k) {
            const auto& e = es[es.size() - 1 - k];
            std::cout << "  worst " << k + 1 << ": " << e.id << " " << format_double(e.value) << '\n';
        }
        if (id) {
            auto p = percentile_of(es, *id);
            if (!p) throw MissingInput("graph " + *id + " is not in the ranking");
            std::cout << "  " << lookup.label() << " (" << *id << "): rank " << p->first << " of " << es.size()
                      << ", top " << format_fixed(p->second, 2) << "%\n";
        }
        if (listing)
            for (std::size_t k = 0; k < es.size(); ++k)
                w->row({to_string(c.game), to_string(c.rule), to_string(c.scheme), std::to_string(k + 1), es[k].id,
                        std::to_string(es[k].n), format_double(es[k].value), to_string(es[k].category)});
    }
    return 0;
}

int cmd_gen(const GraphSource& src, int atlas, const std::string& format, Output& out) {
    std::ostream& os = out.open();
    if (atlas > 0) {
        for (const auto& g : connected_atlas(atlas)) os << encode_graph6(g) << '\n';
        return 0;
    }
    Graph g = src.load();
    if (format == "graph6") os << encode_graph6(g) << '\n';
    else if (format == "edges") os << write_edge_list(g);
    else throw InvalidParameter("format must be edges or graph6");
    return 0;
}

int cmd_empirical(GraphSource src, const ConditionFilter& filt, bool exact, Output& out) {
    if (src.edges.empty()) throw MissingInput("empirical needs --edges");
    Graph g;
    try {
        g = src.load();
    } catch (const Disconnected& e) {
        throw Disconnected(std::string(e.what()) + "; rerun with --largest-component", e.components);
    }
    auto conds = filt.select();
    const double k = metrics(g).avg_degree;
    GraphRecord rec = compute_record(g, exact);
    if (rec.failed) throw SolverDivergence(rec.error);
    std::cout << src.edges << ": N=" << g.size() << " <k>=" << format_double(k) << '\n';
    auto w = out.writer();
    w.row({"game", "rule", "scheme", "value", "avg_degree", "normalized", "category"});
    for (const auto& c : conds) {
        const auto& v = rec.at(c);
        w.row({to_string(c.game), to_string(c.rule), to_string(c.scheme), format_double(v.value), format_double(k),
               format_double(v.value / k), to_string(v.category)});
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coopnet: cooperation thresholds on graphs"};
    app.require_subcommand(1);

    GraphSource src;
    ConditionFilter filt;
    Output out;
    bool exact = false;
    int threads = 1;

    auto* critical = app.add_subcommand("critical", "thresholds for one graph");
    src.add_to(critical);
    filt.add_to(critical);
    out.add_to(critical);
    critical->add_flag("--exact", exact, "rational arithmetic");

    int census_n = 7;
    std::vector<std::string> atlas_paths;
    std::string summary_path;
    auto* census = app.add_subcommand("census", "all connected graphs of sizes 3..n");
    census->add_option("--n", census_n, "largest size (sizes above 7 need --atlas)");
    census->add_option("--atlas", atlas_paths, "graph6 atlas file(s)");
    census->add_flag("--exact", exact, "rational arithmetic");
    census->add_option("--threads", threads, "worker threads (0: all cores)");
    census->add_option("--summary", summary_path, "category table CSV (default: stdout)");
    out.add_to(census);

    std::string ens_spec, ens_values;
    long samples = 100;
    std::uint64_t ens_seed = 0;
    bool plotdata = false;
    auto* ensemble = app.add_subcommand("ensemble", "mean thresholds over random graphs");
    ensemble->add_option("--gen", ens_spec, "generator spec; {} marks the swept parameter")->required();
    ensemble->add_option("--values", ens_values, "swept values: a,b,c or start:stop:count");
    ensemble->add_option("--samples", samples, "graphs per grid point");
    ensemble->add_option("--seed", ens_seed, "master seed");
    ensemble->add_option("--threads", threads, "worker threads (0: all cores)");
    ensemble->add_flag("--plotdata", plotdata, "emit panel,x,y,err");
    filt.add_to(ensemble);
    out.add_to(ensemble);

    SimConfig cfg;
    std::string sim_rule = "db", sim_scheme = "avg", sim_game = "pgg", sim_values;
    bool trace = false;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo fixation estimates");
    src.add_to(simulate, false);
    simulate->add_option("--seed", cfg.seed, "master seed");
    simulate->add_option("--rule", sim_rule, "pc, db or bd");
    simulate->add_option("--scheme", sim_scheme, "avg or acc");
    simulate->add_option("--game", sim_game, "pgg or dg");
    simulate->add_option("--r", cfg.r, "synergy factor (pgg)");
    simulate->add_option("--b", cfg.b, "benefit (dg)");
    simulate->add_option("--cost", cfg.cost, "cost c");
    simulate->add_option("--values", sim_values, "sweep of r (pgg) or b (dg): a,b,c or start:stop:count");
    simulate->add_option("--delta", cfg.delta, "selection strength in [0, 0.1]");
    simulate->add_option("--replicates", cfg.replicates, "independent runs per value");
    simulate->add_option("--max-mcs", cfg.max_mcs, "sweep cap per run");
    simulate->add_option("--threads", cfg.threads, "worker threads (0: all cores)");
    simulate->add_flag("--plotdata", plotdata, "emit panel,x,y,err");
    simulate->add_flag("--trace", trace, "per-sweep cooperator counts of the first run on stderr");
    out.add_to(simulate);

    std::string records;
    int rank_n = 0, top = 5, bottom = 2;
    GraphSource lookup;
    ConditionFilter rank_filt{"pgg", "", "avg"};
    auto* rank = app.add_subcommand("rank", "order census records by threshold");
    rank->add_option("--records", records, "records CSV from census --out")->required();
    rank->add_option("--n", rank_n, "restrict to graphs of this size");
    rank->add_option("--top", top, "best entries to print");
    rank->add_option("--bottom", bottom, "worst entries to print");
    rank->add_option("--game", rank_filt.game, "pgg or dg");
    rank->add_option("--rule", rank_filt.rule, "pc, db or bd (default: all)");
    rank->add_option("--scheme", rank_filt.scheme, "avg or acc");
    lookup.add_to(rank);
    out.add_to(rank);

    int atlas_n = 0;
    std::string format = "edges";
    auto* gen = app.add_subcommand("gen", "write a generated graph or a graph6 atlas");
    src.add_to(gen);
    gen->add_option("--atlas", atlas_n, "write all connected graphs on this many nodes as graph6");
    gen->add_option("--format", format, "edges or graph6");
    gen->add_option("--out", out.path, "output file (default: stdout)");

    auto* empirical = app.add_subcommand("empirical", "thresholds normalised by mean degree for an edge list");
    src.add_to(empirical, false);
    filt.add_to(empirical);
    empirical->add_flag("--exact", exact, "rational arithmetic");
    out.add_to(empirical);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*critical) return cmd_critical(src, filt, exact, out);
        if (*census) return cmd_census(census_n, atlas_paths, exact, threads, out, summary_path);
        if (*ensemble) return cmd_ensemble(ens_spec, ens_values, samples, ens_seed, filt, threads, plotdata, out);
        if (*simulate) {
            cfg.rule = parse_rule(sim_rule);
            cfg.scheme = parse_scheme(sim_scheme);
            cfg.game = parse_game(sim_game);
            return cmd_simulate(src, cfg, sim_values, plotdata, trace, out);
        }
        if (*rank) return cmd_rank(records, rank_filt, rank_n > 0 ? std::optional<int>(rank_n) : std::nullopt, top, bottom, lookup, out);
        if (*gen) return cmd_gen(src, atlas_n, format, out);
        if (*empirical) return cmd_empirical(src, filt, exact, out);
    } catch (const Disconnected& e) {
        std::cerr << "error: disconnected input: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
