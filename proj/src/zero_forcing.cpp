#include "netident/zero_forcing.hpp"

#include "netident/errors.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <thread>

namespace netident {

NodeSet ForcingChronicle::derived() const {
    std::vector<Node> out(initial.begin(), initial.end());
    for (const auto& f : forces) out.push_back(f.v);
    return NodeSet(std::move(out));
}

Coloring::Coloring(const Graph& g, const NodeSet& black)
    : graph_(&g),
      black_(static_cast<std::size_t>(g.n()) + 1, 0),
      white_count_(static_cast<std::size_t>(g.n()) + 1, 0) {
    g.check_nodes(black, "coloring");
    for (Node v : black) black_[v] = 1;
    for (Node u = 1; u <= g.n(); ++u) {
        for (Node w : g.adjacent(u)) white_count_[u] += black_[w] ? 0 : 1;
    }
}

std::optional<Node> Coloring::forced_by(Node u) const {
    if (!is_black(u) || white_count_[u] != 1) return std::nullopt;
    for (Node w : graph_->adjacent(u)) {
        if (!black_[w]) return w;
    }
    return std::nullopt;
}

void Coloring::apply(const Force& f) {
    if (!graph_->contains(f.u) || !graph_->contains(f.v)) {
        throw PreconditionError("force " + std::to_string(f.u) + "->" + std::to_string(f.v) + ": node out of range");
    }
    auto target = forced_by(f.u);
    if (!target || *target != f.v) {
        throw PreconditionError("force " + std::to_string(f.u) + "->" + std::to_string(f.v) +
                                " violates the color-change rule");
    }
    black_[f.v] = 1;
    for (Node w : graph_->adjacent(f.v)) --white_count_[w];
}

NodeSet Coloring::black() const {
    std::vector<Node> out;
    for (Node v = 1; v < static_cast<Node>(black_.size()); ++v) {
        if (black_[v]) out.push_back(v);
    }
    return NodeSet(std::move(out));
}

DerivedSet derived_set(const Graph& g, const NodeSet& z) {
    g.check_nodes(z, "derived_set");
    const auto n = static_cast<std::size_t>(g.n());
    std::vector<char> black(n + 1, 0);
    std::vector<int> white(n + 1, 0);
    for (Node v : z) black[v] = 1;
    for (Node u = 1; u <= g.n(); ++u) {
        for (Node w : g.adjacent(u)) white[u] += black[w] ? 0 : 1;
    }

    // Min-heap of black nodes that had exactly one white neighbour when pushed.
    // Counts only decrease, so a popped entry is stale iff its count dropped to 0.
    std::priority_queue<Node, std::vector<Node>, std::greater<>> ready;
    for (Node v : z) {
        if (white[v] == 1) ready.push(v);
    }

    DerivedSet out;
    out.chronicle.initial = z;
    while (!ready.empty()) {
        Node u = ready.top();
        ready.pop();
        if (white[u] != 1) continue;
        Node v = 0;
        for (Node w : g.adjacent(u)) {
            if (!black[w]) {
                v = w;
                break;
            }
        }
        black[v] = 1;
        out.chronicle.forces.push_back({u, v});
        for (Node w : g.adjacent(v)) {
            if (--white[w] == 1 && black[w]) ready.push(w);
        }
        if (white[v] == 1) ready.push(v);
    }
    out.derived = out.chronicle.derived();
    return out;
}

namespace {

// Derived-set membership without a chronicle; O(n + m).
std::vector<char> closure(const Graph& g, const NodeSet& z) {
    const auto n = static_cast<std::size_t>(g.n());
    std::vector<char> black(n + 1, 0);
    std::vector<int> white(n + 1, 0);
    for (Node v : z) black[v] = 1;
    for (Node u = 1; u <= g.n(); ++u) {
        for (Node w : g.adjacent(u)) white[u] += black[w] ? 0 : 1;
    }
    std::vector<Node> stack;
    for (Node v : z) {
        if (white[v] == 1) stack.push_back(v);
    }
    while (!stack.empty()) {
        Node u = stack.back();
        stack.pop_back();
        if (white[u] != 1) continue;
        for (Node v : g.adjacent(u)) {
            if (black[v]) continue;
            black[v] = 1;
            for (Node w : g.adjacent(v)) {
                if (--white[w] == 1 && black[w]) stack.push_back(w);
            }
            if (white[v] == 1) stack.push_back(v);
            break;
        }
    }
    return black;
}

}  // namespace

bool is_zero_forcing_set(const Graph& g, const NodeSet& z) {
    g.check_nodes(z, "is_zero_forcing_set");
    auto black = closure(g, z);
    return std::all_of(black.begin() + 1, black.end(), [](char b) { return b != 0; });
}

NodeSet replay(const Graph& g, const ForcingChronicle& chronicle) {
    Coloring coloring(g, chronicle.initial);
    for (const auto& f : chronicle.forces) coloring.apply(f);
    return coloring.black();
}

NodeSet repair_to_zero_forcing(const Graph& g, NodeSet z) {
    g.check_nodes(z, "repair_to_zero_forcing");
    for (;;) {
        auto black = closure(g, z);
        auto stuck = std::find(black.begin() + 1, black.end(), 0);
        if (stuck == black.end()) return z;
        std::vector<Node> grown(z.begin(), z.end());
        grown.push_back(static_cast<Node>(stuck - black.begin()));
        z = NodeSet(std::move(grown));
    }
}

// ---------------------------------------------------------------------------
// Exact search

namespace {

using Mask = std::uint64_t;

bool forces_everything(const std::vector<Mask>& adj, Mask black, Mask full) {
    Mask active = black;
    while (active) {
        bool changed = false;
        Mask scan = active;
        while (scan) {
            int u = std::countr_zero(scan);
            scan &= scan - 1;
            Mask white = adj[static_cast<std::size_t>(u)] & ~black;
            if (white == 0) {
                active &= ~(Mask{1} << u);
            } else if ((white & (white - 1)) == 0) {
                black |= white;
                active |= white;
                active &= ~(Mask{1} << u);
                changed = true;
            }
        }
        if (!changed) break;
    }
    return black == full;
}

struct ExactSearch {
    int n;
    std::vector<Mask> adj;
    Mask full;
    Mask mandatory;  // isolated nodes belong to every zero forcing set

    // Some member must have at most one neighbour outside the set, or nothing is ever forced.
    bool can_start(Mask s) const {
        if (s == full) return true;
        Mask scan = s;
        while (scan) {
            int u = std::countr_zero(scan);
            scan &= scan - 1;
            if (std::popcount(adj[static_cast<std::size_t>(u)] & ~s) == 1) return true;
        }
        return false;
    }

    // Lexicographically first k-subset containing `first` as its smallest member.
    std::optional<Mask> first_with(int first, int k, const std::atomic<int>& best) const {
        if (mandatory & ((Mask{1} << first) - 1)) return std::nullopt;
        std::optional<Mask> found;
        std::function<bool(int, int, Mask)> rec = [&](int start, int remaining, Mask s) -> bool {
            if (best.load(std::memory_order_relaxed) < first) return true;
            if (remaining == 0) {
                if ((s & mandatory) != mandatory) return false;
                if (can_start(s) && forces_everything(adj, s, full)) {
                    found = s;
                    return true;
                }
                return false;
            }
            for (int c = start; c <= n - remaining; ++c) {
                if (rec(c + 1, remaining - 1, s | (Mask{1} << c))) return true;
                // Skipping a mandatory node kills every later branch.
                if (mandatory & (Mask{1} << c)) break;
            }
            return false;
        };
        rec(first + 1, k - 1, Mask{1} << first);
        return found;
    }
};

}  // namespace

NodeSet minimum_zero_forcing_set(const Graph& g, int cap) {
    if (cap > 64) throw InputError("minimum_zero_forcing_set: exact search supports at most 64 nodes");
    if (g.n() > cap) {
        throw InputError("minimum_zero_forcing_set: graph has " + std::to_string(g.n()) +
                         " nodes, above the exact-search cap of " + std::to_string(cap) +
                         "; use zfs_heuristic for larger graphs");
    }
    const int n = g.n();
    if (n == 0) return {};

    ExactSearch search{n, std::vector<Mask>(static_cast<std::size_t>(n), 0), 0, 0};
    search.full = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
    int min_degree = n;
    for (Node v = 1; v <= n; ++v) {
        for (Node w : g.adjacent(v)) search.adj[v - 1] |= Mask{1} << (w - 1);
        if (g.degree(v) == 0) search.mandatory |= Mask{1} << (v - 1);
        min_degree = std::min(min_degree, g.degree(v));
    }

    // Z(G) >= minimum degree.
    const int lower = std::max({1, min_degree, std::popcount(search.mandatory)});
    const unsigned threads = n < 16 ? 1u : detail::worker_threads();

    for (int k = lower; k <= n; ++k) {
        const int firsts = n - k + 1;
        std::vector<std::optional<Mask>> result(static_cast<std::size_t>(firsts));
        std::atomic<int> best{std::numeric_limits<int>::max()};
        std::atomic<int> next{0};
        auto worker = [&] {
            for (int f = next++; f < firsts; f = next++) {
                if (best.load() < f) break;
                if (auto s = search.first_with(f, k, best)) {
                    result[static_cast<std::size_t>(f)] = s;
                    int cur = best.load();
                    while (f < cur && !best.compare_exchange_weak(cur, f)) {
                    }
                }
            }
        };
        if (threads <= 1) {
            worker();
        } else {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < std::min<unsigned>(threads, static_cast<unsigned>(firsts)); ++t) {
                pool.emplace_back(worker);
            }
        }
        for (const auto& r : result) {
            if (!r) continue;
            std::vector<Node> members;
            for (Mask s = *r; s; s &= s - 1) members.push_back(std::countr_zero(s) + 1);
            return NodeSet(std::move(members));
        }
    }
    return g.vertices();
}

// ---------------------------------------------------------------------------
// Heuristics

namespace {

// Hop distances from `source`, with parent = first discoverer in BFS order.
void bfs(const Graph& g, Node source, std::vector<int>& dist, std::vector<Node>& parent, std::vector<Node>& touched) {
    for (Node v : touched) dist[v] = -1;
    touched.assign(1, source);
    dist[source] = 0;
    parent[source] = 0;
    for (std::size_t head = 0; head < touched.size(); ++head) {
        Node u = touched[head];
        for (Node w : g.adjacent(u)) {
            if (dist[w] >= 0) continue;
            dist[w] = dist[u] + 1;
            parent[w] = u;
            touched.push_back(w);
        }
    }
}

constexpr std::size_t kExactDiameterLimit = 2000;

// Complement of a shortest diametral path's non-initial nodes.
std::vector<Node> diametral_candidate(const Graph& g, const NodeSet& component) {
    const auto n = static_cast<std::size_t>(g.n());
    std::vector<int> dist(n + 1, -1);
    std::vector<Node> parent(n + 1, 0);
    std::vector<Node> touched;

    Node from = component[0];
    Node to = component[0];
    int diameter = 0;
    auto farthest = [&](Node source) {
        bfs(g, source, dist, parent, touched);
        Node far = source;
        for (Node v : touched) {
            if (dist[v] > dist[far] || (dist[v] == dist[far] && v < far)) far = v;
        }
        return far;
    };
    if (component.size() <= kExactDiameterLimit) {
        for (Node s : component) {
            Node far = farthest(s);
            if (dist[far] > diameter) {
                diameter = dist[far];
                from = s;
                to = far;
            }
        }
    } else {
        // Double sweep: a lower bound on the diameter, still a shortest path.
        Node a = farthest(component[0]);
        Node b = farthest(a);
        from = a;
        to = b;
        diameter = dist[b];
    }

    // Path from -> to is read backwards through BFS parents rooted at `to`.
    bfs(g, to, dist, parent, touched);
    std::vector<char> on_path(n + 1, 0);
    for (Node v = parent[from]; v != 0; v = parent[v]) on_path[v] = 1;

    std::vector<Node> out;
    for (Node v : component) {
        if (!on_path[v]) out.push_back(v);
    }
    return out;
}

// One endpoint (the smaller id) of every path in a minimum path cover of a tree.
std::vector<Node> path_cover_candidate(const Graph& g, const NodeSet& tree) {
    const auto n = static_cast<std::size_t>(g.n());
    std::vector<Node> parent(n + 1, 0);
    std::vector<Node> order;
    std::vector<char> seen(n + 1, 0);
    order.push_back(tree[0]);
    seen[tree[0]] = 1;
    for (std::size_t head = 0; head < order.size(); ++head) {
        for (Node w : g.adjacent(order[head])) {
            if (seen[w]) continue;
            seen[w] = 1;
            parent[w] = order[head];
            order.push_back(w);
        }
    }

    // Greedy bottom-up: join a node to at most two children that are still path endpoints.
    std::vector<int> links(n + 1, 0);
    std::vector<std::vector<Node>> cover_adj(n + 1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        Node v = *it;
        for (Node c : g.adjacent(v)) {
            if (c == parent[v] || links[v] == 2) continue;
            if (links[c] <= 1 && parent[c] == v) {
                ++links[v];
                ++links[c];
                cover_adj[v].push_back(c);
                cover_adj[c].push_back(v);
            }
        }
    }

    std::vector<Node> out;
    std::vector<char> visited(n + 1, 0);
    for (Node v : tree) {
        if (visited[v] || links[v] > 1) continue;
        // v is an endpoint: walk to the other end.
        Node prev = 0;
        Node cur = v;
        visited[v] = 1;
        for (;;) {
            Node next = 0;
            for (Node w : cover_adj[cur]) {
                if (w != prev) next = w;
            }
            if (next == 0) break;
            prev = cur;
            cur = next;
            visited[cur] = 1;
        }
        out.push_back(std::min(v, cur));
    }
    return out;
}

// Forcing never crosses components, so the component's induced subgraph decides.
bool forces_component(const Graph& g, const NodeSet& component, const std::vector<Node>& z) {
    InducedSubgraph sub(g, component);
    std::vector<Node> local;
    local.reserve(z.size());
    for (Node v : z) local.push_back(sub.to_local(v));
    return is_zero_forcing_set(sub.graph(), NodeSet(std::move(local)));
}

std::size_t component_edges(const Graph& g, const NodeSet& component) {
    std::size_t twice = 0;
    for (Node v : component) twice += static_cast<std::size_t>(g.degree(v));
    return twice / 2;
}

}  // namespace

NodeSet zfs_heuristic(const Graph& g) {
    std::vector<Node> chosen;
    for (const auto& component : connected_components(g)) {
        auto best = diametral_candidate(g, component);
        if (component_edges(g, component) + 1 == component.size()) {
            auto cover = path_cover_candidate(g, component);
            if (cover.size() <= best.size() && forces_component(g, component, cover)) best = std::move(cover);
        }
        chosen.insert(chosen.end(), best.begin(), best.end());
    }
    NodeSet z(std::move(chosen));
    return is_zero_forcing_set(g, z) ? z : repair_to_zero_forcing(g, std::move(z));
}

}  // namespace netident
