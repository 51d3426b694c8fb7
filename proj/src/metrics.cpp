#include "polytree/metrics.hpp"

#include <cmath>
#include <numeric>

#include "polytree/error.hpp"
#include "polytree/parallel.hpp"

namespace polytree {

namespace {

double proportion(std::size_t hits, std::size_t p) {
    if (p <= 1) return 1.0;
    return static_cast<double>(hits) / static_cast<double>(p - 1);
}

void summarize(const std::vector<double>& values, double& mean, double& se) {
    const auto k = static_cast<double>(values.size());
    mean = std::accumulate(values.begin(), values.end(), 0.0) / k;
    if (values.size() < 2) {
        se = 0.0;
        return;
    }
    double ss = 0.0;
    for (const double v : values) ss += (v - mean) * (v - mean);
    se = std::sqrt(ss / (k - 1.0)) / std::sqrt(k);
}

}  // namespace

double skeleton_accuracy(const SkeletonForest& est, const SkeletonForest& truth) {
    if (est.p() != truth.p()) throw Error(ErrorKind::DimensionMismatch, "skeleton accuracy: p differs");
    std::size_t hits = 0;
    for (const auto& e : est.edges()) hits += truth.contains(e);
    return proportion(hits, truth.p());
}

double directed_accuracy(const DirectedPolytree& est, const DirectedPolytree& truth) {
    if (est.p() != truth.p()) throw Error(ErrorKind::DimensionMismatch, "directed accuracy: p differs");
    std::size_t hits = 0;
    for (const auto& e : est.edges()) {
        const auto t = truth.find(e.source, e.target);
        hits += t && t->source == e.source;
    }
    return proportion(hits, truth.p());
}

AccuracyReport run_benchmark(const TreeModel& model, std::size_t n, std::size_t reps, const SeedPolicy& seed,
                             unsigned threads) {
    model.validate();
    if (reps == 0) throw Error(ErrorKind::InvalidModel, "benchmark: need at least one replication");
    const auto truth = ground_truth(model);

    AccuracyReport report;
    report.kind = model.kind;
    report.p = model.p;
    report.n = n;
    report.replications = reps;
    report.skeleton.resize(reps);
    report.directed.resize(reps);
    std::vector<char> exact(reps, 0);

    parallel_for(reps, threads, [&](std::size_t r) {
        const auto rep_seed = seed.child("rep", {r});
        const auto data = sample(model, n, rep_seed);
        const auto est = estimate_skeleton(data, rep_seed);
        const auto directed = orient(est.forest, data, rep_seed, &est.xi);
        report.skeleton[r] = skeleton_accuracy(est.forest, truth.skeleton);
        report.directed[r] = directed_accuracy(directed, truth.directed);
        exact[r] = est.forest == truth.skeleton;
    });

    summarize(report.skeleton, report.skeleton_mean, report.skeleton_se);
    summarize(report.directed, report.directed_mean, report.directed_se);
    report.skeleton_exact = static_cast<std::size_t>(std::accumulate(exact.begin(), exact.end(), 0));
    return report;
}

}  // namespace polytree
