#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "netstress/dataset.hpp"

namespace netstress {

// Per-(stock, day) communication subgraph. Internal edges join two insiders;
// border edges have exactly one insider endpoint. Nodes of the internal
// graph are the endpoints of internal edges; the extended graph adds border
// endpoints. Parallel edges are collapsed; self-loops cannot occur.
struct StockDayGraph {
    SymbolIdx symbol = 0;
    Day day = 0;
    std::vector<std::pair<PersonIdx, PersonIdx>> internal_edges; // a < b, sorted
    std::vector<std::pair<PersonIdx, PersonIdx>> border_edges;   // a < b, sorted
    std::vector<PersonIdx> nodes;                                // internal endpoints, sorted

    bool empty() const { return internal_edges.empty() && border_edges.empty(); }
};

StockDayGraph build_graph(const Dataset& ds, SymbolIdx symbol, Day day);

// Mean local clustering; nodes with degree < 2 contribute 0.
std::optional<double> clustering(const StockDayGraph& g);

struct ComponentStats {
    double largest_frac = 0; // share of nodes in the largest component
    int components90 = 0;    // fewest components covering >= 90% of nodes
};
std::optional<ComponentStats> components(const StockDayGraph& g);

std::optional<double> openness(const StockDayGraph& g);

// Pairwise communication history strictly before the day under analysis.
// Folding is sequential by day; snapshots are read-only during feature
// computation for that day.
class HistoryIndex {
public:
    explicit HistoryIndex(const PersonTable& people) : people_(&people) {}

    void fold_message(PersonIdx a, PersonIdx b);

    std::size_t partner_count(PersonIdx x) const;
    // Top ceil(alpha*m) prior partners of x by message volume, ties broken
    // by lexicographic person id. Sorted by index for binary search.
    std::vector<PersonIdx> top_partners(PersonIdx x, double alpha) const;
    std::uint32_t volume(PersonIdx a, PersonIdx b) const;

private:
    const PersonTable* people_;
    std::unordered_map<PersonIdx, std::unordered_map<PersonIdx, std::uint32_t>> partners_;
};

enum class TieOrientation {
    incidence,       // each undirected edge judged from both endpoints, denominator 2E
    either_endpoint, // edge strong when either endpoint nominates the other, denominator E
};

std::optional<double> tie_strength(const StockDayGraph& g, const HistoryIndex& history,
                                   double alpha, TieOrientation orientation);

enum class Feature {
    nodes,
    edges,
    clustering,
    largest_frac,
    components90,
    strength,
    border_frac,
    nbar,
    nu_edges,
    nu_clustering,
    eps_clustering,
};

constexpr int kFeatureCount = 11;
const char* feature_name(Feature f);
std::optional<Feature> feature_from_name(const std::string& name);

struct ArchiveRow {
    SymbolIdx symbol = 0;
    Day day = 0;
    int nodes = 0;
    int edges = 0;
    double clustering = 0;
    double largest_frac = 0;
    int components90 = 0;
    double strength = 0;
    double border_frac = 0;
    std::optional<double> nbar, nu_edges, nu_clustering, eps_clustering;

    std::optional<double> value(Feature f) const;
};

struct ArchiveOptions {
    double alpha = 0.1;
    int min_nodes = 2;
    TieOrientation orientation = TieOrientation::incidence;
};

struct FeatureArchive {
    ArchiveOptions options;
    std::vector<ArchiveRow> rows; // sorted by (day, symbol)

    const ArchiveRow* lookup(SymbolIdx s, Day d) const;
    void rebuild_index();

private:
    std::unordered_map<std::uint64_t, std::size_t> index_;
};

// One row per (s,d) with at least one s-mentioning internal message and at
// least `min_nodes` nodes; normalizations reference archived days d' < d only.
FeatureArchive compute_archive(const Dataset& ds, const ArchiveOptions& options);

enum class NormMode { by_nodes, by_edges, by_stock };

// Reference normalization recomputed directly from archive rows (O(rows)).
// compute_archive uses running accumulators; tests assert both routes agree.
std::optional<double> normalize(const FeatureArchive& archive, SymbolIdx s, Day d, Feature f,
                                NormMode mode);

} // namespace netstress
