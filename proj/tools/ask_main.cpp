#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ask/io.hpp"
#include "ask/metrics.hpp"
#include "ask/mst.hpp"
#include "ask/parallel.hpp"
#include "ask/straighten.hpp"
#include "ask/synth.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInternal = 2;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int run_skeletonize(const std::string& input, const std::string& format,
                    const std::string& output, const ask::ApproxParams& params) {
    ask::PointCloud cloud = ask::io::read_cloud(input, format);

    if (std::isfinite(params.kappa)) {
        // Clustered mode: skeletonize each cluster, emit the disjoint union.
        ask::MstResult mst = ask::build_mst(cloud);
        std::vector<ask::PointCloud> parts =
            ask::split_clusters(mst, cloud, params.kappa);
        ask::Skeleton merged;
        merged.graph.dim = cloud.dim;
        ask::RunReport combined;
        combined.n_points = cloud.size();
        combined.beta = params.beta;
        combined.gamma = params.gamma;
        combined.kappa = params.kappa;
        std::vector<std::string> signatures;
        for (const ask::PointCloud& part : parts) {
            int base = merged.graph.vertex_count();
            if (part.size() < 2) {
                merged.graph.add_vertex(part.point(0));
                merged.vertex_provenance.push_back(part.ids[0]);
                signatures.push_back("()");
                continue;
            }
            ask::BuildResult res = ask::build_ask(part, params);
            for (int v = 0; v < res.skeleton.graph.vertex_count(); ++v)
                merged.graph.add_vertex(res.skeleton.graph.vertex(v));
            for (const ask::GraphEdge& e : res.skeleton.graph.edges)
                merged.graph.add_edge(base + e.u, base + e.v);
            for (int p : res.skeleton.vertex_provenance)
                merged.vertex_provenance.push_back(p);
            signatures.push_back(res.report.signature);
            combined.endpoint_count += res.report.endpoint_count;
            combined.initial_error =
                std::max(combined.initial_error, res.report.initial_error);
            combined.epsilon = std::max(combined.epsilon, res.report.epsilon);
            combined.monotone_mismatches += res.report.monotone_mismatches;
            for (const auto& [k, v] : res.report.stage_ms) combined.stage_ms[k] += v;
        }
        std::sort(signatures.begin(), signatures.end());
        std::string joined;
        for (const std::string& s : signatures) {
            if (!joined.empty()) joined += "+";
            joined += s;
        }
        combined.signature = joined;
        combined.avg_edge_length = mst.avg_edge_length;
        combined.max_distance = ask::max_cloud_distance(cloud, merged.graph);
        ask::io::write_skeleton_json(output, merged, params, combined);
        return kExitOk;
    }

    ask::BuildResult res = ask::build_ask(cloud, params);
    ask::io::write_skeleton_json(output, res.skeleton, params, res.report);
    return kExitOk;
}

int run_generate(int arms, int count, std::uint64_t seed, const std::string& outdir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(outdir, ec);
    if (!fs::is_directory(outdir))
        throw std::invalid_argument("cannot create output directory: " + outdir);

    for (int i = 0; i < count; ++i) {
        std::uint64_t s = seed + static_cast<std::uint64_t>(i);
        auto [star, spec] = ask::generate_star(arms, s);
        ask::PointCloud cloud = ask::sample_cloud(star, spec);
        char name[64];
        std::snprintf(name, sizeof(name), "cloud_N%d_%03d.json", arms, i);
        ask::io::write_cloud_json((fs::path(outdir) / name).string(), cloud);
        std::snprintf(name, sizeof(name), "star_N%d_%03d.json", arms, i);
        ask::io::write_star_json((fs::path(outdir) / name).string(), star, spec);
    }
    return kExitOk;
}

struct BenchRow {
    int arms = 0;
    double beta = 0.0;
    int cloud_index = 0;
    std::uint64_t seed = 0;
    int n_points = 0;
    bool endpoint_success = false;
    bool homeo_success = false;
    double time_ms = 0.0;
    double max_distance = 0.0;
};

int run_bench(const std::string& n_range, int count, const std::string& betas_arg,
              std::uint64_t seed, const std::string& out_path, double gamma) {
    int n_lo = 3, n_hi = 8;
    if (std::sscanf(n_range.c_str(), "%d..%d", &n_lo, &n_hi) != 2 || n_lo < 2 ||
        n_hi < n_lo)
        throw std::invalid_argument("bad --n-range, expected LO..HI");

    std::vector<double> betas;
    {
        std::stringstream ss(betas_arg);
        std::string cell;
        while (std::getline(ss, cell, ',')) betas.push_back(std::stod(cell));
        if (betas.empty()) throw std::invalid_argument("no betas given");
    }

    struct Task {
        int arms;
        int index;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    for (int arms = n_lo; arms <= n_hi; ++arms)
        for (int i = 0; i < count; ++i)
            tasks.push_back({arms, i,
                             seed + static_cast<std::uint64_t>(arms) * 100000 +
                                 static_cast<std::uint64_t>(i)});

    std::vector<std::vector<BenchRow>> rows(tasks.size());
    const int workers = ask::worker_count();
#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (int t = 0; t < static_cast<int>(tasks.size()); ++t) {
        const Task& task = tasks[t];
        auto [star, spec] = ask::generate_star(task.arms, task.seed);
        ask::PointCloud cloud = ask::sample_cloud(star, spec);
        for (double beta : betas) {
            ask::ApproxParams params;
            params.beta = beta;
            params.gamma = gamma;
            ask::BuildResult res = ask::build_ask(cloud, params);
            ask::evaluate(res.report, res.skeleton.graph, &star);
            BenchRow row;
            row.arms = task.arms;
            row.beta = beta;
            row.cloud_index = task.index;
            row.seed = task.seed;
            row.n_points = cloud.size();
            row.endpoint_success = *res.report.endpoint_success;
            row.homeo_success = *res.report.homeo_success;
            row.time_ms = res.report.stage_ms.at("total");
            row.max_distance = res.report.max_distance;
            rows[t].push_back(row);
        }
    }

    std::string csv =
        "scope,N,beta,cloud,seed,n_points,endpoint_success,homeo_success,"
        "time_ms,max_distance\n";
    for (const auto& group : rows)
        for (const BenchRow& r : group) {
            csv += "cloud," + std::to_string(r.arms) + "," + fmt(r.beta) + "," +
                   std::to_string(r.cloud_index) + "," + std::to_string(r.seed) + "," +
                   std::to_string(r.n_points) + "," +
                   std::to_string(r.endpoint_success ? 1 : 0) + "," +
                   std::to_string(r.homeo_success ? 1 : 0) + "," + fmt(r.time_ms) +
                   "," + fmt(r.max_distance) + "\n";
        }

    std::printf("%-4s %-6s %-12s %-12s %-10s %-12s\n", "N", "beta", "endpoint_%",
                "homeo_%", "time_ms", "max_dist");
    for (int arms = n_lo; arms <= n_hi; ++arms)
        for (double beta : betas) {
            long ep = 0, homeo = 0, n = 0;
            double time_sum = 0.0, dist_sum = 0.0;
            for (const auto& group : rows)
                for (const BenchRow& r : group) {
                    if (r.arms != arms || r.beta != beta) continue;
                    ++n;
                    ep += r.endpoint_success;
                    homeo += r.homeo_success;
                    time_sum += r.time_ms;
                    dist_sum += r.max_distance;
                }
            double ep_pct = 100.0 * ep / n;
            double homeo_pct = 100.0 * homeo / n;
            csv += "aggregate," + std::to_string(arms) + "," + fmt(beta) + ",-1,," +
                   std::to_string(500 * arms) + "," + fmt(ep_pct) + "," +
                   fmt(homeo_pct) + "," + fmt(time_sum / n) + "," +
                   fmt(dist_sum / n) + "\n";
            std::printf("%-4d %-6.4g %-12.4g %-12.4g %-10.4g %-12.4g\n", arms, beta,
                        ep_pct, homeo_pct, time_sum / n, dist_sum / n);
        }

    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write: " + out_path);
    out << csv;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Approximate skeleton reconstruction for point clouds"};
    app.require_subcommand(1);

    // skeletonize
    std::string input, format, output = "skeleton.json";
    ask::ApproxParams params;
    CLI::App* sk = app.add_subcommand("skeletonize",
                                      "Reconstruct a skeleton from a cloud file");
    sk->add_option("input", input, "Cloud file (JSON or CSV)")->required();
    sk->add_option("--beta", params.beta, "Branching factor");
    sk->add_option("--gamma", params.gamma, "Error factor");
    sk->add_option("--kappa", params.kappa, "Cluster split factor");
    sk->add_option("--output", output, "Skeleton JSON path");
    sk->add_option("--format", format, "Input format override: json or csv");

    // generate
    int arms = 5, count = 1;
    std::uint64_t seed = 1;
    std::string outdir = ".";
    CLI::App* gen = app.add_subcommand("generate",
                                       "Generate noisy star clouds with ground truth");
    gen->add_option("--n", arms, "Number of arms (2..12)")->required();
    gen->add_option("--count", count, "Number of clouds");
    gen->add_option("--seed", seed, "Base seed; cloud i uses seed+i");
    gen->add_option("--outdir", outdir, "Output directory");

    // bench
    std::string n_range = "3..8", betas = "20,30,40", out_csv = "bench.csv";
    int bench_count = 100;
    std::uint64_t bench_seed = 424242;
    double bench_gamma = 1.3;
    CLI::App* bench = app.add_subcommand("bench",
                                         "Success-rate sweep over synthetic stars");
    bench->add_option("--n-range", n_range, "Arm range LO..HI");
    bench->add_option("--count", bench_count, "Clouds per N");
    bench->add_option("--betas", betas, "Comma separated branching factors");
    bench->add_option("--seed", bench_seed, "Base seed");
    bench->add_option("--gamma", bench_gamma, "Error factor");
    bench->add_option("--out", out_csv, "Output CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInput;
    }

    try {
        if (sk->parsed()) return run_skeletonize(input, format, output, params);
        if (gen->parsed()) {
            if (arms < 2 || arms > 12)
                throw std::invalid_argument("--n must lie in 2..12");
            return run_generate(arms, count, seed, outdir);
        }
        if (bench->parsed())
            return run_bench(n_range, bench_count, betas, bench_seed, out_csv,
                             bench_gamma);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
