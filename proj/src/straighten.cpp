#include "ask/straighten.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "ask/depth.hpp"
#include "ask/parallel.hpp"

namespace ask {

namespace {

// Largest k > prev such that every chord [prev, l] with l <= k stays within
// epsilon, i.e. the index just before the first failing chord prefix.
int next_chord_index(const MonotoneRun& run, int prev, double epsilon,
                     EvalStats* stats) {
    const int last = run.size() - 1;
    if (prev + 1 >= last) return last;

    auto within = [&](int l) {
        return segment_cloud_distance(run, prev, l, stats) <= epsilon;
    };

    // Exponential phase over l = prev + 2^(j+1); [prev, prev+1] is always
    // feasible (no interior points).
    int candidate = prev + 1;
    int lo = prev + 1;
    int hi = -1;
    for (long long j = 0;; ++j) {
        long long l = prev + (2LL << j);
        if (l >= last) {
            if (within(last)) {
                candidate = last;
            } else {
                hi = last;
            }
            break;
        }
        if (within(static_cast<int>(l))) {
            lo = static_cast<int>(l);
        } else {
            hi = static_cast<int>(l);
            break;
        }
    }
    if (hi >= 0) {
        while (hi - lo > 1) {
            int mid = lo + (hi - lo) / 2;
            if (within(mid))
                lo = mid;
            else
                hi = mid;
        }
        candidate = lo;
    }

    // The chord error is not monotone in the endpoint, so confirm every
    // prefix; the scan also yields the exact cut when the search overshot.
    for (int k = prev + 2; k <= candidate; ++k)
        if (!within(k)) return k - 1;
    return candidate;
}

}  // namespace

std::vector<int> approximate_run(const MonotoneRun& run, double epsilon,
                                 EvalStats* stats) {
    if (run.size() < 2) throw std::invalid_argument("run needs at least 2 points");
    if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");

    std::vector<int> indices{0};
    int prev = 0;
    while (prev != run.size() - 1) {
        prev = next_chord_index(run, prev, epsilon, stats);
        indices.push_back(prev);
    }
    return indices;
}

int optimal_run_oracle(const MonotoneRun& run, double epsilon) {
    const int n = run.size();
    if (n > 500) throw std::invalid_argument("oracle capped at 500 points");
    if (n < 2) throw std::invalid_argument("run needs at least 2 points");

    constexpr int kInf = std::numeric_limits<int>::max();
    std::vector<int> best(n, kInf);
    best[0] = 1;
    for (int i = 0; i + 1 < n; ++i) {
        if (best[i] == kInf) continue;
        for (int j = i + 1; j < n; ++j) {
            double d = segment_cloud_distance(run, i, j);
            if (d <= epsilon) {
                best[j] = std::min(best[j], best[i] + 1);
            } else if (d > 2.0 * epsilon) {
                // Sub-chords lose at most a factor 2, so every longer chord
                // from i already exceeds epsilon.
                break;
            }
        }
    }
    return best[n - 1];
}

namespace {

// A junction cluster wider than the component budget leaves two or more
// branching centroids joined by short edges; contracting those pairs restores
// the single junction the cluster stands for. Degree-2 centroids (collapsed
// chain pieces) never qualify, so branches cannot be pulled in.
void merge_adjacent_junctions(Skeleton& skel, double threshold,
                              std::vector<int>& weight, double& max_radius) {
    for (;;) {
        int n = skel.graph.vertex_count();
        std::vector<int> deg = vertex_degrees(skel.graph);
        const GraphEdge* pick = nullptr;
        for (const GraphEdge& e : skel.graph.edges) {
            if (e.length > threshold || deg[e.u] < 3 || deg[e.v] < 3) continue;
            if (!pick || e.length < pick->length ||
                (e.length == pick->length &&
                 std::pair(e.u, e.v) < std::pair(pick->u, pick->v)))
                pick = &e;
        }
        if (!pick) return;

        int a = pick->u, b = pick->v;
        int wa = weight[a], wb = weight[b];
        std::vector<double> merged(skel.graph.dim);
        for (int k = 0; k < skel.graph.dim; ++k)
            merged[k] = (wa * skel.graph.vertex(a)[k] + wb * skel.graph.vertex(b)[k]) /
                        (wa + wb);
        max_radius = std::max({max_radius, distance(merged, skel.graph.vertex(a)),
                               distance(merged, skel.graph.vertex(b))});

        Skeleton next;
        next.graph.dim = skel.graph.dim;
        std::vector<int> next_weight;
        std::vector<int> remap(n, -1);
        for (int v = 0; v < n; ++v) {
            if (v == a || v == b) continue;
            remap[v] = next.graph.vertex_count();
            next.graph.add_vertex(skel.graph.vertex(v));
            next.vertex_provenance.push_back(skel.vertex_provenance[v]);
            next_weight.push_back(weight[v]);
        }
        int m = next.graph.vertex_count();
        next.graph.add_vertex(merged);
        next.vertex_provenance.push_back(-1);
        next_weight.push_back(wa + wb);
        auto slot = [&](int v) { return (v == a || v == b) ? m : remap[v]; };
        std::set<std::pair<int, int>> edges;
        for (const GraphEdge& e : skel.graph.edges) {
            int u = slot(e.u), v = slot(e.v);
            if (u != v) edges.insert(std::minmax(u, v));
        }
        for (auto [u, v] : edges) next.graph.add_edge(u, v);
        skel = std::move(next);
        weight = std::move(next_weight);
    }
}

// Drops leaves whose removal keeps the cloud covered: a leaf within epsilon
// of the remaining skeleton duplicates coverage already provided by it.
// Noise threads surviving the collapse produce exactly such leaves, running
// nearly parallel to a real branch.
void prune_redundant_leaves(Skeleton& skel, double epsilon) {
    for (;;) {
        int n = skel.graph.vertex_count();
        if (n <= 2) return;
        std::vector<int> deg = vertex_degrees(skel.graph);
        int victim = -1;
        for (int v = 0; v < n && victim < 0; ++v) {
            if (deg[v] != 1) continue;
            double best = std::numeric_limits<double>::infinity();
            for (const GraphEdge& e : skel.graph.edges) {
                if (e.u == v || e.v == v) continue;
                best = std::min(best,
                                euclid_point_segment(skel.graph.vertex(v),
                                                     skel.graph.vertex(e.u),
                                                     skel.graph.vertex(e.v)));
            }
            if (best <= epsilon) victim = v;
        }
        if (victim < 0) return;

        Skeleton next;
        next.graph.dim = skel.graph.dim;
        std::vector<int> remap(n, -1);
        for (int v = 0; v < n; ++v) {
            if (v == victim) continue;
            remap[v] = next.graph.vertex_count();
            next.graph.add_vertex(skel.graph.vertex(v));
            next.vertex_provenance.push_back(skel.vertex_provenance[v]);
        }
        for (const GraphEdge& e : skel.graph.edges)
            if (e.u != victim && e.v != victim)
                next.graph.add_edge(remap[e.u], remap[e.v]);
        skel = std::move(next);
    }
}

}  // namespace

Skeleton assemble_skeleton(const std::vector<ApproximatedRun>& runs,
                           const ApproxParams& params, double l_avg,
                           double epsilon, bool collapse_junctions,
                           AssembleInfo* info) {
    const int dim = runs.empty() ? 0 : runs.front().run.dim;

    // Polyline edges over original cloud ids; shared boundary and fixed
    // vertices make the runs chain into one tree.
    std::map<int, std::vector<double>> coords_by_id;
    std::set<std::pair<int, int>> edge_set;
    for (const ApproximatedRun& ar : runs) {
        for (std::size_t k = 0; k < ar.indices.size(); ++k) {
            int idx = ar.indices[k];
            int id = ar.run.ids[idx];
            auto p = ar.run.point(idx);
            coords_by_id.emplace(id, std::vector<double>(p.begin(), p.end()));
            if (k > 0) {
                int prev_id = ar.run.ids[ar.indices[k - 1]];
                if (prev_id != id) edge_set.insert(std::minmax(prev_id, id));
            }
        }
    }

    std::vector<int> vertex_ids;
    vertex_ids.reserve(coords_by_id.size());
    for (const auto& [id, c] : coords_by_id) vertex_ids.push_back(id);
    std::map<int, int> slot_of;
    for (int s = 0; s < static_cast<int>(vertex_ids.size()); ++s)
        slot_of[vertex_ids[s]] = s;

    EmbeddedGraph pre;
    pre.dim = dim;
    for (int id : vertex_ids) pre.add_vertex(coords_by_id[id]);
    for (auto [a, b] : edge_set) pre.add_edge(slot_of[a], slot_of[b]);
    if (!is_tree(pre))
        throw std::logic_error("assembled polylines do not form a tree");
    if (info) info->pre_collapse_vertices = pre.vertex_count();

    if (!collapse_junctions) {
        Skeleton out;
        out.graph = std::move(pre);
        for (int id : vertex_ids) out.vertex_provenance.push_back(id);
        return out;
    }

    // Collapse: contract components of short edges to their centroids and
    // reconnect them along the removed edges. Two guards keep the contraction
    // local. The threshold is capped because junction clusters and leftover
    // noise threads span a few tens of average edge lengths while real branch
    // chords start near the branch length itself. Each component's bounding
    // diameter is budgeted, since contracting a component to one point adds
    // the component radius to the reconstruction error; a merge that would
    // exceed the budget leaves its edge in place.
    constexpr double kCollapseBetaCap = 20.0;
    const double threshold = std::min(params.beta, kCollapseBetaCap) * l_avg;
    const double diameter_budget = 1.5 * threshold;
    int n = pre.vertex_count();
    std::vector<int> comp(n, -1);
    {
        std::vector<int> parent(n);
        std::vector<std::vector<double>> box_lo(n), box_hi(n);
        for (int v = 0; v < n; ++v) {
            parent[v] = v;
            auto p = pre.vertex(v);
            box_lo[v].assign(p.begin(), p.end());
            box_hi[v].assign(p.begin(), p.end());
        }
        auto find = [&](int v) {
            while (parent[v] != v) {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            return v;
        };

        std::vector<const GraphEdge*> short_edges;
        for (const GraphEdge& e : pre.edges)
            if (e.length <= threshold) short_edges.push_back(&e);
        std::sort(short_edges.begin(), short_edges.end(),
                  [](const GraphEdge* a, const GraphEdge* b) {
                      if (a->length != b->length) return a->length < b->length;
                      return std::pair(a->u, a->v) < std::pair(b->u, b->v);
                  });

        for (const GraphEdge* e : short_edges) {
            int ra = find(e->u), rb = find(e->v);
            if (ra == rb) continue;
            double diag2 = 0.0;
            for (int k = 0; k < dim; ++k) {
                double lo = std::min(box_lo[ra][k], box_lo[rb][k]);
                double hi = std::max(box_hi[ra][k], box_hi[rb][k]);
                diag2 += (hi - lo) * (hi - lo);
            }
            if (diag2 > diameter_budget * diameter_budget) continue;
            if (ra > rb) std::swap(ra, rb);
            parent[rb] = ra;
            for (int k = 0; k < dim; ++k) {
                box_lo[ra][k] = std::min(box_lo[ra][k], box_lo[rb][k]);
                box_hi[ra][k] = std::max(box_hi[ra][k], box_hi[rb][k]);
            }
        }

        int ncomp = 0;
        std::vector<int> comp_of_root(n, -1);
        for (int v = 0; v < n; ++v) {
            int r = find(v);
            if (comp_of_root[r] < 0) comp_of_root[r] = ncomp++;
            comp[v] = comp_of_root[r];
        }

        Skeleton out;
        out.graph.dim = dim;
        std::vector<std::vector<int>> members(ncomp);
        for (int v = 0; v < n; ++v) members[comp[v]].push_back(v);

        double max_radius = 0.0;
        int collapsed = 0;
        std::vector<int> weight(ncomp, 1);  // collapsed member counts
        for (int c = 0; c < ncomp; ++c) {
            std::vector<double> centroid(dim, 0.0);
            for (int v : members[c]) {
                auto p = pre.vertex(v);
                for (int k = 0; k < dim; ++k) centroid[k] += p[k];
            }
            for (int k = 0; k < dim; ++k) centroid[k] /= members[c].size();
            weight[c] = static_cast<int>(members[c].size());
            if (members[c].size() == 1) {
                out.graph.add_vertex(pre.vertex(members[c][0]));
                out.vertex_provenance.push_back(vertex_ids[members[c][0]]);
            } else {
                out.graph.add_vertex(centroid);
                out.vertex_provenance.push_back(-1);
                ++collapsed;
                for (int v : members[c])
                    max_radius = std::max(max_radius, distance(pre.vertex(v), centroid));
            }
        }

        // Long edges and refused short edges both survive as connections
        // between the collapsed components.
        std::set<std::pair<int, int>> kept_edges;
        for (const GraphEdge& e : pre.edges) {
            if (comp[e.u] == comp[e.v]) continue;
            kept_edges.insert(std::minmax(comp[e.u], comp[e.v]));
        }
        for (auto [a, b] : kept_edges) out.graph.add_edge(a, b);
        if (!is_tree(out.graph))
            throw std::logic_error("junction collapse broke the skeleton tree");

        merge_adjacent_junctions(out, threshold, weight, max_radius);

        // Redundancy pruning capped below the branch-separation scale so an
        // inflated budget can never delete a true tip.
        constexpr double kPruneBetaCap = 15.0;
        prune_redundant_leaves(out, std::min(epsilon, kPruneBetaCap * l_avg));

        if (info) {
            info->max_component_radius = max_radius;
            info->collapsed_components = collapsed;
        }
        return out;
    }
}

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    auto dt = std::chrono::steady_clock::now() - t0;
    return std::chrono::duration<double, std::milli>(dt).count();
}

}  // namespace

BuildResult build_ask(const PointCloud& cloud, const ApproxParams& params) {
    if (cloud.size() < 2) throw std::invalid_argument("cloud needs at least 2 points");
    if (cloud.dim < 2) throw std::invalid_argument("dimension must be at least 2");
    if (!(params.beta > 0.0)) throw std::invalid_argument("beta must be positive");
    if (!(params.gamma >= 1.0 && params.gamma <= 10.0))
        throw std::invalid_argument("gamma must lie in [1, 10]");

    BuildResult out;
    RunReport& rep = out.report;
    rep.n_points = cloud.size();
    rep.beta = params.beta;
    rep.gamma = params.gamma;
    rep.kappa = params.kappa;

    auto total0 = std::chrono::steady_clock::now();
    auto t0 = total0;

    MstResult mst = build_mst(cloud);
    rep.avg_edge_length = mst.avg_edge_length;
    rep.stage_ms["mst"] = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    DepthTable depths = compute_depths(mst.tree);
    std::vector<int> deep = deep_vertices(depths, params.beta, mst.avg_edge_length);
    // Junction scale shared with the collapse step; branch reach separates
    // real junctions from high-length noise threads.
    const double junction_scale = std::min(params.beta, 20.0) * mst.avg_edge_length;
    deep = filter_deep_by_reach(mst.tree, deep, junction_scale);
    rep.deep_vertex_count = static_cast<int>(deep.size());
    rep.stage_ms["depth"] = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    CoreTree core = extract_core(mst, deep, params.beta);
    rep.stage_ms["core"] = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    std::vector<int> assign = edge_clouds(cloud, core);
    rep.stage_ms["edge_clouds"] = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    MonotoneStats mstats;
    std::vector<MonotoneRun> runs = runs_for_core(cloud, core, assign, &mstats);
    rep.monotone_mismatches = mstats.mismatches;
    rep.initial_error = initial_error(core, runs);
    rep.stage_ms["monotone"] = ms_since(t0);

    out.epsilon = params.gamma * rep.initial_error;
    rep.epsilon = out.epsilon;

    t0 = std::chrono::steady_clock::now();
    out.approx_runs.resize(runs.size());
    const int workers = worker_count();
#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (int r = 0; r < static_cast<int>(runs.size()); ++r) {
        out.approx_runs[r].indices = approximate_run(runs[r], out.epsilon);
        out.approx_runs[r].run = std::move(runs[r]);
    }
    rep.stage_ms["straighten"] = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    out.skeleton = assemble_skeleton(out.approx_runs, params, mst.avg_edge_length,
                                     out.epsilon, !deep.empty(), &out.assemble_info);
    rep.stage_ms["assemble"] = ms_since(t0);
    rep.post_collapse_offset_bound =
        2.0 * out.epsilon + out.assemble_info.max_component_radius;

    t0 = std::chrono::steady_clock::now();
    std::vector<int> deg = vertex_degrees(out.skeleton.graph);
    rep.endpoint_count = static_cast<int>(std::count(deg.begin(), deg.end(), 1));
    rep.signature = homeo_signature(out.skeleton.graph);
    rep.max_distance = max_cloud_distance(cloud, out.skeleton.graph);
    rep.stage_ms["metrics"] = ms_since(t0);

    rep.stage_ms["total"] = ms_since(total0);
    return out;
}

}  // namespace ask
