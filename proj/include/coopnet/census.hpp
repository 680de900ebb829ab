#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "coopnet/canonical.hpp"
#include "coopnet/csv.hpp"
#include "coopnet/generators.hpp"
#include "coopnet/graph6.hpp"
#include "coopnet/parallel.hpp"
#include "coopnet/rng.hpp"
#include "coopnet/theory.hpp"

namespace coopnet {

struct Condition {
    GameKind game;
    UpdateRule rule;
    PayoffScheme scheme;
};

inline constexpr int kConditionCount = 12;

// Order: game, then rule, then scheme.
inline constexpr std::array<Condition, kConditionCount> kConditions = [] {
    std::array<Condition, kConditionCount> a{};
    int k = 0;
    for (GameKind g : kGames)
        for (UpdateRule r : kRules)
            for (PayoffScheme s : kSchemes) a[k++] = {g, r, s};
    return a;
}();

inline int condition_index(const Condition& c) {
    return static_cast<int>(c.game) * 6 + static_cast<int>(c.rule) * 2 + static_cast<int>(c.scheme);
}

inline std::string condition_label(const Condition& c) {
    return std::string(to_string(c.game)) + "/" + to_string(c.rule) + "/" + to_string(c.scheme);
}

// Filters on optional game/rule/scheme strings; empty means all.
inline std::vector<Condition> select_conditions(const std::string& game, const std::string& rule, const std::string& scheme) {
    std::vector<Condition> out;
    for (const auto& c : kConditions) {
        if (!game.empty() && parse_game(game) != c.game) continue;
        if (!rule.empty() && parse_rule(rule) != c.rule) continue;
        if (!scheme.empty() && parse_scheme(scheme) != c.scheme) continue;
        out.push_back(c);
    }
    return out;
}

inline std::string graph_id(const Graph& g) {
    return g.size() <= kCanonicalMaxN ? canonical_form(g) : encode_graph6(g);
}

struct GraphRecord {
    std::string id;
    int n = 0;
    double avg_degree = 0;
    std::array<CriticalValue, kConditionCount> values{};
    bool failed = false;
    std::string error;

    const CriticalValue& at(const Condition& c) const { return values[condition_index(c)]; }
};

template <class T>
void fill_record(GraphRecord& rec, ThresholdEngine<T>& engine) {
    for (const auto& c : kConditions) rec.values[condition_index(c)] = engine.critical(c.game, c.rule, c.scheme);
}

inline GraphRecord compute_record(const Graph& g, bool exact, const SolverOptions& opt = {}) {
    GraphRecord rec;
    rec.n = g.size();
    rec.avg_degree = 2.0 * g.edge_count() / g.size();
    try {
        rec.id = graph_id(g);
        if (exact) {
            ThresholdEngine<mpq_class> engine(g);
            fill_record(rec, engine);
        } else {
            ThresholdEngine<double> engine(g, opt);
            fill_record(rec, engine);
        }
    } catch (const Error& e) {
        rec.failed = true;
        rec.error = e.what();
        if (rec.id.empty()) rec.id = encode_graph6(g);
    }
    return rec;
}

inline std::vector<GraphRecord> compute_records(const std::vector<Graph>& graphs, bool exact, int threads,
                                                const SolverOptions& opt = {}) {
    std::vector<GraphRecord> out(graphs.size());
    parallel_for(graphs.size(), threads, [&](std::size_t i) { out[i] = compute_record(graphs[i], exact, opt); });
    return out;
}

// Graphs of sizes 3..n_max. Sizes above 7 come only from the atlas files, bucketed by size.
inline std::vector<Graph> census_graphs(int n_max, const std::vector<std::string>& atlas_paths) {
    if (n_max < 3) throw InvalidParameter("census needs n >= 3");
    std::map<int, std::vector<Graph>> atlas;
    for (const auto& path : atlas_paths) {
        std::ifstream in(path);
        if (!in) throw MissingAtlas("cannot open atlas file '" + path + "'");
        for (auto& g : read_graph6(in)) {
            validate(g, Validation::analysis);
            atlas[g.size()].push_back(std::move(g));
        }
    }
    std::vector<Graph> out;
    for (int n = 3; n <= n_max; ++n) {
        if (n <= 7) {
            auto gs = enumerate_connected(n);
            out.insert(out.end(), gs.begin(), gs.end());
            continue;
        }
        auto it = atlas.find(n);
        if (it == atlas.end())
            throw MissingAtlas("size " + std::to_string(n) + " needs a graph6 atlas (generate with: coopnet gen --atlas " +
                               std::to_string(n) + ")");
        out.insert(out.end(), it->second.begin(), it->second.end());
    }
    return out;
}

inline const std::vector<std::string>& record_header() {
    static const std::vector<std::string> h = {"id", "n", "avg_degree", "game", "rule", "scheme", "numerator",
                                               "denominator", "value", "exact", "category", "status"};
    return h;
}

// Long format: one row per (graph, condition).
inline void write_records(CsvWriter& w, const std::vector<GraphRecord>& recs, const std::vector<Condition>& conds) {
    w.row(record_header());
    for (const auto& r : recs)
        for (const auto& c : conds) {
            std::vector<std::string> row = {r.id, std::to_string(r.n), format_double(r.avg_degree), to_string(c.game),
                                            to_string(c.rule), to_string(c.scheme)};
            if (r.failed) {
                row.insert(row.end(), {"", "", "", "", "", "failed: " + r.error});
            } else {
                const auto& v = r.at(c);
                row.insert(row.end(), {format_double(v.numerator), format_double(v.denominator), format_double(v.value),
                                       v.exact, to_string(v.category), "ok"});
            }
            w.row(row);
        }
}

// One ranked entry per row of a records table.
struct RankEntry {
    std::string id;
    int n = 0;
    double value = 0;
    Category category = Category::never;
};

inline Category parse_category(const std::string& s) {
    if (s == "supports") return Category::supports;
    if (s == "strict") return Category::strict;
    if (s == "never") return Category::never;
    throw MissingInput("unknown category '" + s + "'");
}

inline std::vector<RankEntry> read_rank_entries(const CsvTable& t, const Condition& c, std::optional<int> n) {
    const int ci = t.column("id"), cn = t.column("n"), cg = t.column("game"), cr = t.column("rule"),
              cs = t.column("scheme"), cv = t.column("value"), cc = t.column("category"), cst = t.column("status");
    std::vector<RankEntry> out;
    for (const auto& row : t.rows) {
        if (row[cst] != "ok") continue;
        if (parse_game(row[cg]) != c.game || parse_rule(row[cr]) != c.rule || parse_scheme(row[cs]) != c.scheme) continue;
        const int rn = std::stoi(row[cn]);
        if (n && rn != *n) continue;
        out.push_back({row[ci], rn, parse_double_field(row[cv]), parse_category(row[cc])});
    }
    return out;
}

// Smaller is better: positive finite thresholds ascending, then every "never" entry. Ties by id.
inline double rank_key(const RankEntry& e) {
    if (e.category == Category::never || !(e.value > 0)) return HUGE_VAL;
    return e.value;
}

inline void sort_ranking(std::vector<RankEntry>& es) {
    std::sort(es.begin(), es.end(), [](const RankEntry& a, const RankEntry& b) {
        const double ka = rank_key(a), kb = rank_key(b);
        if (ka != kb) return ka < kb;
        return a.id < b.id;
    });
}

// 1-based position of id in a sorted ranking, as a percentage of the total.
inline std::optional<std::pair<long, double>> percentile_of(const std::vector<RankEntry>& sorted, const std::string& id) {
    for (std::size_t k = 0; k < sorted.size(); ++k)
        if (sorted[k].id == id) return std::make_pair(static_cast<long>(k + 1), 100.0 * (k + 1) / sorted.size());
    return std::nullopt;
}

struct CategoryCounts {
    long supports = 0;
    long strict = 0;
    long never = 0;
    long failed = 0;
    long total() const { return supports + strict + never + failed; }
};

inline std::array<CategoryCounts, kConditionCount> category_counts(const std::vector<GraphRecord>& recs) {
    std::array<CategoryCounts, kConditionCount> out{};
    for (const auto& r : recs)
        for (const auto& c : kConditions) {
            auto& cc = out[condition_index(c)];
            if (r.failed) {
                ++cc.failed;
                continue;
            }
            switch (r.at(c).category) {
            case Category::supports: ++cc.supports; break;
            case Category::strict: ++cc.strict; break;
            case Category::never: ++cc.never; break;
            }
        }
    return out;
}

// count/total as a percentage rounded half-up to two decimals, computed in integers.
inline std::string exact_percent(long count, long total) {
    if (total == 0) return "nan";
    mpz_class scaled = mpz_class(count) * 20000 + total;
    scaled /= 2 * mpz_class(total);  // floor((count*10000/total) + 1/2)
    const long v = scaled.get_si();
    return std::to_string(v / 100) + "." + (v % 100 < 10 ? "0" : "") + std::to_string(v % 100);
}

inline void write_summary(CsvWriter& w, const std::vector<GraphRecord>& recs, const std::vector<Condition>& conds) {
    auto counts = category_counts(recs);
    w.row({"game", "rule", "scheme", "total", "supports", "strict", "never", "failed", "supports_pct", "strict_pct",
           "never_pct"});
    for (const auto& c : conds) {
        const auto& cc = counts[condition_index(c)];
        w.row({to_string(c.game), to_string(c.rule), to_string(c.scheme), std::to_string(cc.total()),
               std::to_string(cc.supports), std::to_string(cc.strict), std::to_string(cc.never), std::to_string(cc.failed),
               exact_percent(cc.supports, cc.total()), exact_percent(cc.strict, cc.total()),
               exact_percent(cc.never, cc.total())});
    }
}

// Graph ids of each size classified "never" for a condition.
inline std::map<int, std::vector<std::string>> non_supporters(const std::vector<GraphRecord>& recs, const Condition& c) {
    std::map<int, std::vector<std::string>> out;
    for (const auto& r : recs)
        if (!r.failed && r.at(c).category == Category::never) out[r.n].push_back(r.id);
    return out;
}

struct EnsemblePoint {
    std::string spec;
    long samples = 0;
    long successes = 0;
    long failures = 0;
    long nonfinite = 0;  // succeeded but the threshold is infinite or undefined
    double mean = 0;
    double stddev = 0;
};

// Sample s of a spec is generated with derive_seed(seed, s); conditions share each sampled graph.
inline std::vector<EnsemblePoint> run_ensemble(const std::string& spec, long samples, std::uint64_t seed,
                                               const std::vector<Condition>& conds, int threads,
                                               const SolverOptions& opt = {}) {
    if (samples < 1) throw InvalidParameter("samples must be >= 1");
    const GeneratorSpec parsed = parse_generator_spec(spec);
    struct Sample {
        bool ok = false;
        std::vector<double> values;
    };
    std::vector<Sample> res(samples);
    parallel_for(static_cast<std::size_t>(samples), threads, [&](std::size_t s) {
        try {
            Graph g = generate(parsed, derive_seed(seed, s));
            ThresholdEngine<double> engine(g, opt);
            for (const auto& c : conds) res[s].values.push_back(engine.critical(c.game, c.rule, c.scheme).value);
            res[s].ok = true;
        } catch (const GenerationTimeout&) {
        } catch (const SolverDivergence&) {
        } catch (const Disconnected&) {
        }
    });
    std::vector<EnsemblePoint> out;
    for (std::size_t k = 0; k < conds.size(); ++k) {
        EnsemblePoint p;
        p.spec = spec;
        p.samples = samples;
        double sum = 0, sq = 0;
        long m = 0;
        for (const auto& r : res) {
            if (!r.ok) {
                ++p.failures;
                continue;
            }
            ++p.successes;
            const double v = r.values[k];
            if (!std::isfinite(v)) {
                ++p.nonfinite;
                continue;
            }
            sum += v;
            ++m;
        }
        p.mean = m ? sum / m : NAN;
        for (const auto& r : res)
            if (r.ok && std::isfinite(r.values[k])) sq += (r.values[k] - p.mean) * (r.values[k] - p.mean);
        p.stddev = m > 1 ? std::sqrt(sq / (m - 1)) : 0.0;
        out.push_back(p);
    }
    return out;
}

} // namespace coopnet
