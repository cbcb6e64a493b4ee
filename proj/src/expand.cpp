#include "reclaim/expand.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "reclaim/errors.hpp"
#include "reclaim/relops.hpp"

namespace reclaim::expand {

namespace {

bool has_full_key(const Table& t, const KeySpec& key) {
    return std::all_of(key.key_columns.begin(), key.key_columns.end(),
                       [&](const std::string& name) { return t.has_column(name); });
}

std::vector<std::string> shared_columns(const Table& a, const Table& b) {
    std::vector<std::string> shared;
    for (const auto& name : a.columns()) {
        if (b.has_column(name)) shared.push_back(name);
    }
    return shared;
}

std::size_t distinct_overlap(const Table& a, const Table& b, const std::string& column) {
    const auto va = sorted_distinct_atoms(a, *a.column_index(column));
    const auto vb = sorted_distinct_atoms(b, *b.column_index(column));
    std::vector<std::string> shared;
    std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(),
                          std::back_inserter(shared));
    return shared.size();
}

}  // namespace

std::vector<std::pair<std::size_t, double>> JoinGraph::neighbors(std::size_t node) const {
    std::vector<std::pair<std::size_t, double>> out;
    for (const JoinEdge& edge : edges) {
        if (edge.a == node) out.emplace_back(edge.b, edge.weight);
        if (edge.b == node) out.emplace_back(edge.a, edge.weight);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool JoinGraph::is_end(std::size_t node) const {
    return std::find(end_nodes.begin(), end_nodes.end(), node) != end_nodes.end();
}

JoinGraph build_join_graph(const discovery::CandidateSet& cands, const KeySpec& key) {
    JoinGraph graph;
    const auto& list = cands.candidates;
    graph.nodes.reserve(list.size());
    for (std::size_t i = 0; i < list.size(); ++i) {
        graph.nodes.push_back(list[i].table.name());
        if (has_full_key(list[i].table, key)) {
            graph.end_nodes.push_back(i);
        } else {
            graph.start_nodes.push_back(i);
        }
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
        for (std::size_t j = i + 1; j < list.size(); ++j) {
            JoinEdge edge;
            edge.a = i;
            edge.b = j;
            for (const auto& name : shared_columns(list[i].table, list[j].table)) {
                const std::size_t shared = distinct_overlap(list[i].table, list[j].table, name);
                if (shared == 0) continue;
                const std::size_t ca =
                    sorted_distinct_atoms(list[i].table, *list[i].table.column_index(name)).size();
                const std::size_t cb =
                    sorted_distinct_atoms(list[j].table, *list[j].table.column_index(name)).size();
                edge.columns.push_back(name);
                edge.weight += static_cast<double>(shared) /
                               static_cast<double>(std::min(ca, cb));
            }
            if (!edge.columns.empty()) graph.edges.push_back(std::move(edge));
        }
    }
    return graph;
}

PathSearchResult max_weight_path(const JoinGraph& graph, std::size_t start) {
    PathSearchResult result;
    if (start >= graph.nodes.size()) {
        throw ContractError("max_weight_path: start node out of range");
    }

    // Depth-first walk where a node is claimed by the first expansion that
    // examines it: children are marked visited as they are seen, so each node
    // keeps the weight and predecessor of its first discovery and is never
    // re-relaxed. Heavier routes found later are ignored, which is what makes
    // this a heuristic rather than an exact longest-path search.
    std::map<std::size_t, double> node_weights;
    std::map<std::size_t, std::size_t> predecessor;
    std::set<std::size_t> visited{start};
    std::vector<std::size_t> stack{start};
    node_weights[start] = 0.0;

    std::size_t best_end = graph.nodes.size();
    double best_weight = 0.0;

    while (!stack.empty()) {
        const std::size_t node = stack.back();
        stack.pop_back();
        for (const auto& [child, edge_weight] : graph.neighbors(node)) {
            if (visited.count(child)) continue;
            const double child_weight = node_weights[node] + edge_weight;
            const auto it = node_weights.find(child);
            if (it == node_weights.end() || child_weight > it->second) {
                node_weights[child] = child_weight;
                predecessor[child] = node;
                if (graph.is_end(child) && child_weight > best_weight) {
                    best_end = child;
                    best_weight = child_weight;
                }
                stack.push_back(child);
            }
            visited.insert(child);
        }
    }
    if (best_end == graph.nodes.size()) return result;

    result.found = true;
    result.weight = best_weight;
    // The predecessor chain stops at the start node, which is included so the
    // path join actually carries the start table's columns.
    for (std::size_t node = best_end;;) {
        result.path.push_back(node);
        const auto it = predecessor.find(node);
        if (it == predecessor.end()) break;
        node = it->second;
    }
    std::reverse(result.path.begin(), result.path.end());
    return result;
}

discovery::CandidateSet expand_candidates(const discovery::CandidateSet& cands,
                                          const KeySpec& key) {
    const JoinGraph graph = build_join_graph(cands, key);
    discovery::CandidateSet out;
    out.warnings = cands.warnings;

    for (std::size_t i = 0; i < cands.candidates.size(); ++i) {
        const discovery::Candidate& cand = cands.candidates[i];
        if (has_full_key(cand.table, key)) {
            out.candidates.push_back(cand);
            continue;
        }
        const PathSearchResult path = max_weight_path(graph, i);
        if (!path.found) {
            out.warnings.push_back("candidate '" + cand.lake_name +
                                   "' dropped: no join path reaches the key columns");
            continue;
        }
        discovery::Candidate joined = cand;
        Table acc = cands.candidates[path.path.front()].table;
        joined.expanded_from = {cands.candidates[path.path.front()].lake_name};
        joined.column_map = cands.candidates[path.path.front()].column_map;
        for (std::size_t step = 1; step < path.path.size(); ++step) {
            const discovery::Candidate& next = cands.candidates[path.path[step]];
            acc = relops::join_direct(acc, next.table, shared_columns(acc, next.table));
            joined.expanded_from.push_back(next.lake_name);
            for (const auto& [from, to] : next.column_map) {
                joined.column_map.emplace(from, to);
            }
        }
        joined.table = std::move(acc);
        joined.lake_name = joined.table.name();
        out.candidates.push_back(std::move(joined));
    }
    return out;
}

}  // namespace reclaim::expand
