#include "netstress/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "netstress/error.hpp"

namespace netstress {

namespace {

std::uint64_t pair_key(SymbolIdx s, Day d) {
    return (std::uint64_t(s) << 32) | std::uint32_t(d);
}

void sort_dedup(std::vector<std::pair<PersonIdx, PersonIdx>>& edges) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

} // namespace

StockDayGraph build_graph(const Dataset& ds, SymbolIdx symbol, Day day) {
    StockDayGraph g;
    g.symbol = symbol;
    g.day = day;
    for (const Message& m : ds.day_messages(day)) {
        if (!std::binary_search(m.mentions.begin(), m.mentions.end(), symbol)) continue;
        PersonIdx a = std::min(m.sender, m.receiver);
        PersonIdx b = std::max(m.sender, m.receiver);
        bool ai = ds.people.is_insider(a), bi = ds.people.is_insider(b);
        if (ai && bi) g.internal_edges.emplace_back(a, b);
        else g.border_edges.emplace_back(a, b); // exactly one insider, enforced at parse
    }
    sort_dedup(g.internal_edges);
    sort_dedup(g.border_edges);
    for (auto& [a, b] : g.internal_edges) {
        g.nodes.push_back(a);
        g.nodes.push_back(b);
    }
    std::sort(g.nodes.begin(), g.nodes.end());
    g.nodes.erase(std::unique(g.nodes.begin(), g.nodes.end()), g.nodes.end());
    return g;
}

namespace {

// Adjacency over g.nodes as local indices; neighbor lists sorted.
std::vector<std::vector<int>> local_adjacency(const StockDayGraph& g) {
    std::vector<std::vector<int>> adj(g.nodes.size());
    auto local = [&](PersonIdx p) {
        return int(std::lower_bound(g.nodes.begin(), g.nodes.end(), p) - g.nodes.begin());
    };
    for (auto& [a, b] : g.internal_edges) {
        int la = local(a), lb = local(b);
        adj[std::size_t(la)].push_back(lb);
        adj[std::size_t(lb)].push_back(la);
    }
    for (auto& v : adj) std::sort(v.begin(), v.end());
    return adj;
}

} // namespace

std::optional<double> clustering(const StockDayGraph& g) {
    if (g.nodes.empty()) return std::nullopt;
    auto adj = local_adjacency(g);
    double sum = 0.0;
    for (std::size_t i = 0; i < adj.size(); ++i) {
        const auto& nb = adj[i];
        std::size_t deg = nb.size();
        if (deg < 2) continue; // contributes 0
        long long closed = 0;
        for (std::size_t a = 0; a < deg; ++a)
            for (std::size_t b = a + 1; b < deg; ++b)
                if (std::binary_search(adj[std::size_t(nb[a])].begin(),
                                       adj[std::size_t(nb[a])].end(), nb[b]))
                    ++closed;
        long long pairs = (long long)(deg) * (long long)(deg - 1) / 2;
        sum += double(closed) / double(pairs);
    }
    return sum / double(g.nodes.size());
}

std::optional<ComponentStats> components(const StockDayGraph& g) {
    if (g.nodes.empty()) return std::nullopt;
    auto adj = local_adjacency(g);
    std::size_t n = g.nodes.size();
    std::vector<int> label(n, -1);
    std::vector<long long> sizes;
    std::vector<int> stack;
    for (std::size_t i = 0; i < n; ++i) {
        if (label[i] != -1) continue;
        int comp = int(sizes.size());
        sizes.push_back(0);
        stack.push_back(int(i));
        label[i] = comp;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            ++sizes[std::size_t(comp)];
            for (int w : adj[std::size_t(v)])
                if (label[std::size_t(w)] == -1) {
                    label[std::size_t(w)] = comp;
                    stack.push_back(w);
                }
        }
    }
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    ComponentStats st;
    st.largest_frac = double(sizes.front()) / double(n);
    long long covered = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        covered += sizes[i];
        if (covered * 10 >= 9 * (long long)(n)) { // coverage >= 0.9 N, exact in integers
            st.components90 = int(i + 1);
            break;
        }
    }
    return st;
}

std::optional<double> openness(const StockDayGraph& g) {
    std::size_t total = g.internal_edges.size() + g.border_edges.size();
    if (total == 0) return std::nullopt;
    return double(g.border_edges.size()) / double(total);
}

void HistoryIndex::fold_message(PersonIdx a, PersonIdx b) {
    ++partners_[a][b];
    ++partners_[b][a];
}

std::size_t HistoryIndex::partner_count(PersonIdx x) const {
    auto it = partners_.find(x);
    return it == partners_.end() ? 0 : it->second.size();
}

std::uint32_t HistoryIndex::volume(PersonIdx a, PersonIdx b) const {
    auto it = partners_.find(a);
    if (it == partners_.end()) return 0;
    auto jt = it->second.find(b);
    return jt == it->second.end() ? 0 : jt->second;
}

std::vector<PersonIdx> HistoryIndex::top_partners(PersonIdx x, double alpha) const {
    auto it = partners_.find(x);
    if (it == partners_.end() || it->second.empty()) return {};
    std::vector<std::pair<PersonIdx, std::uint32_t>> sorted(it->second.begin(),
                                                            it->second.end());
    std::sort(sorted.begin(), sorted.end(), [&](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return people_->ids[a.first] < people_->ids[b.first];
    });
    std::size_t m = sorted.size();
    std::size_t take = std::size_t(std::ceil(alpha * double(m)));
    take = std::min(std::max<std::size_t>(take, alpha > 0 ? 1 : 0), m);
    std::vector<PersonIdx> top;
    top.reserve(take);
    for (std::size_t i = 0; i < take; ++i) top.push_back(sorted[i].first);
    std::sort(top.begin(), top.end());
    return top;
}

std::optional<double> tie_strength(const StockDayGraph& g, const HistoryIndex& history,
                                   double alpha, TieOrientation orientation) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw ValidationError("tie-strength alpha must be in (0, 1]");
    if (g.internal_edges.empty()) return std::nullopt;

    std::unordered_map<PersonIdx, std::vector<PersonIdx>> top;
    auto nominates = [&](PersonIdx x, PersonIdx y) {
        auto it = top.find(x);
        if (it == top.end()) it = top.emplace(x, history.top_partners(x, alpha)).first;
        return std::binary_search(it->second.begin(), it->second.end(), y);
    };

    long long strong = 0;
    for (auto& [a, b] : g.internal_edges) {
        bool ab = nominates(a, b); // incidence (a,b): b among a's strongest
        bool ba = nominates(b, a);
        if (orientation == TieOrientation::incidence) strong += int(ab) + int(ba);
        else strong += int(ab || ba);
    }
    double denom = orientation == TieOrientation::incidence
                       ? 2.0 * double(g.internal_edges.size())
                       : double(g.internal_edges.size());
    return double(strong) / denom;
}

const char* feature_name(Feature f) {
    switch (f) {
        case Feature::nodes: return "nodes";
        case Feature::edges: return "edges";
        case Feature::clustering: return "clustering";
        case Feature::largest_frac: return "largest_frac";
        case Feature::components90: return "components90";
        case Feature::strength: return "strength";
        case Feature::border_frac: return "border_frac";
        case Feature::nbar: return "nbar";
        case Feature::nu_edges: return "nu_edges";
        case Feature::nu_clustering: return "nu_clustering";
        case Feature::eps_clustering: return "eps_clustering";
    }
    return "?";
}

std::optional<Feature> feature_from_name(const std::string& name) {
    static const std::map<std::string, Feature> lut = {
        {"nodes", Feature::nodes},
        {"edges", Feature::edges},
        {"clustering", Feature::clustering},
        {"largest_frac", Feature::largest_frac},
        {"largest", Feature::largest_frac},
        {"components90", Feature::components90},
        {"strength", Feature::strength},
        {"border_frac", Feature::border_frac},
        {"border", Feature::border_frac},
        {"nbar", Feature::nbar},
        {"nu_edges", Feature::nu_edges},
        {"nu_clustering", Feature::nu_clustering},
        {"eps_clustering", Feature::eps_clustering},
    };
    auto it = lut.find(name);
    if (it == lut.end()) return std::nullopt;
    return it->second;
}

std::optional<double> ArchiveRow::value(Feature f) const {
    switch (f) {
        case Feature::nodes: return double(nodes);
        case Feature::edges: return double(edges);
        case Feature::clustering: return clustering;
        case Feature::largest_frac: return largest_frac;
        case Feature::components90: return double(components90);
        case Feature::strength: return strength;
        case Feature::border_frac: return border_frac;
        case Feature::nbar: return nbar;
        case Feature::nu_edges: return nu_edges;
        case Feature::nu_clustering: return nu_clustering;
        case Feature::eps_clustering: return eps_clustering;
    }
    return std::nullopt;
}

const ArchiveRow* FeatureArchive::lookup(SymbolIdx s, Day d) const {
    auto it = index_.find(pair_key(s, d));
    if (it == index_.end()) return nullptr;
    return &rows[it->second];
}

void FeatureArchive::rebuild_index() {
    index_.clear();
    for (std::size_t i = 0; i < rows.size(); ++i)
        index_.emplace(pair_key(rows[i].symbol, rows[i].day), i);
}

namespace {

// Raw features folded into the normalization accumulators, keyed by node or
// edge count of past graphs.
struct RawFeatures {
    SymbolIdx symbol;
    int nodes, edges;
    double clustering;
};

struct MeanAccum {
    double sum = 0;
    long long count = 0;
    std::optional<double> mean() const {
        if (count == 0) return std::nullopt;
        return sum / double(count);
    }
};

struct GroupAccum {
    MeanAccum edges, clustering;
};

std::optional<double> ratio_to(std::optional<double> mean, double value) {
    if (!mean || *mean == 0.0) return std::nullopt;
    return value / *mean;
}

} // namespace

FeatureArchive compute_archive(const Dataset& ds, const ArchiveOptions& options) {
    if (!(options.alpha > 0.0 && options.alpha <= 1.0))
        throw ValidationError("archive alpha must be in (0, 1]");
    if (options.min_nodes < 0) throw ValidationError("min-nodes must be nonnegative");

    FeatureArchive archive;
    archive.options = options;

    HistoryIndex history(ds.people);
    std::unordered_map<int, GroupAccum> by_nodes;   // keyed by N
    std::unordered_map<int, GroupAccum> by_edges;   // keyed by E
    std::unordered_map<SymbolIdx, MeanAccum> nodes_by_symbol;

    for (Day day : ds.message_days()) {
        auto msgs = ds.day_messages(day);

        std::vector<SymbolIdx> mentioned;
        for (const Message& m : msgs)
            for (SymbolIdx s : m.mentions) mentioned.push_back(s);
        std::sort(mentioned.begin(), mentioned.end());
        mentioned.erase(std::unique(mentioned.begin(), mentioned.end()), mentioned.end());

        std::vector<RawFeatures> folds;
        for (SymbolIdx s : mentioned) {
            StockDayGraph g = build_graph(ds, s, day);
            if (g.internal_edges.empty()) continue;

            ArchiveRow row;
            row.symbol = s;
            row.day = day;
            row.nodes = int(g.nodes.size());
            row.edges = int(g.internal_edges.size());
            row.clustering = *clustering(g);
            auto comp = *components(g);
            row.largest_frac = comp.largest_frac;
            row.components90 = comp.components90;
            row.strength = *tie_strength(g, history, options.alpha, options.orientation);
            row.border_frac = *openness(g);

            if (row.nodes < options.min_nodes) continue;

            auto nit = by_nodes.find(row.nodes);
            if (nit != by_nodes.end()) {
                row.nu_edges = ratio_to(nit->second.edges.mean(), double(row.edges));
                row.nu_clustering = ratio_to(nit->second.clustering.mean(), row.clustering);
            }
            auto eit = by_edges.find(row.edges);
            if (eit != by_edges.end())
                row.eps_clustering = ratio_to(eit->second.clustering.mean(), row.clustering);
            auto sit = nodes_by_symbol.find(s);
            if (sit != nodes_by_symbol.end())
                row.nbar = ratio_to(sit->second.mean(), double(row.nodes));

            folds.push_back(RawFeatures{s, row.nodes, row.edges, row.clustering});
            archive.rows.push_back(std::move(row));
        }

        // Fold this day's graphs and messages only after every graph of the
        // day has been measured against strictly earlier state.
        for (const RawFeatures& rf : folds) {
            auto& gn = by_nodes[rf.nodes];
            gn.edges.sum += rf.edges;
            ++gn.edges.count;
            gn.clustering.sum += rf.clustering;
            ++gn.clustering.count;
            auto& ge = by_edges[rf.edges];
            ge.clustering.sum += rf.clustering;
            ++ge.clustering.count;
            auto& acc = nodes_by_symbol[rf.symbol];
            acc.sum += rf.nodes;
            ++acc.count;
        }
        for (const Message& m : msgs) history.fold_message(m.sender, m.receiver);
    }

    archive.rebuild_index();
    return archive;
}

std::optional<double> normalize(const FeatureArchive& archive, SymbolIdx s, Day d, Feature f,
                                NormMode mode) {
    const ArchiveRow* row = archive.lookup(s, d);
    if (!row) return std::nullopt;
    auto current = row->value(f);
    if (!current) return std::nullopt;

    double sum = 0;
    long long count = 0;
    for (const ArchiveRow& r : archive.rows) {
        if (r.day >= d) continue;
        switch (mode) {
            case NormMode::by_nodes:
                if (r.nodes != row->nodes) continue;
                break;
            case NormMode::by_edges:
                if (r.edges != row->edges) continue;
                break;
            case NormMode::by_stock:
                if (r.symbol != s) continue;
                break;
        }
        auto v = mode == NormMode::by_stock ? std::optional<double>(double(r.nodes))
                                            : r.value(f);
        if (!v) continue;
        sum += *v;
        ++count;
    }
    if (count == 0 || sum == 0.0) return std::nullopt;
    double mean = sum / double(count);
    if (mean == 0.0) return std::nullopt;
    double numer = mode == NormMode::by_stock ? double(row->nodes) : *current;
    return numer / mean;
}

} // namespace netstress
