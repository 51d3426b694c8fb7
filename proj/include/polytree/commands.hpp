#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polytree/metrics.hpp"
#include "polytree/models.hpp"
#include "polytree/orient.hpp"
#include "polytree/sample_matrix.hpp"
#include "polytree/skeleton.hpp"

namespace polytree {

inline constexpr std::uint64_t kDefaultSeed = 20230517;

// Bad flags or an invalid parameter grid (CLI exit status 1).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class TreeFormat { Dot, Json, EdgeList };

std::optional<TreeFormat> parse_tree_format(std::string_view name);

// kDefaultSeed unless POLYTREE_SEED holds an unsigned integer.
std::uint64_t default_seed();

struct EstimateOptions {
    std::uint64_t seed = kDefaultSeed;
    unsigned threads = 1;
    TreeFormat format = TreeFormat::Dot;
    bool include_xi_matrix = false;
};

struct EstimateOutput {
    SkeletonEstimate skeleton;
    DirectedPolytree tree;
    std::string tree_text;    // in the requested format
    std::string report_json;  // summary report
};

// Throws DataError for fewer than 2 rows or columns.
EstimateOutput run_estimate(const SampleMatrix& data, const EstimateOptions& options);

std::string render_tree(const DirectedPolytree& tree, const SampleMatrix& data, const PrunedGraph& weights,
                        TreeFormat format);

struct SimulateOutput {
    std::string data_csv;
    std::string truth_csv;  // source,target with 1-based vertex numbers
};

SimulateOutput run_simulate(const TreeModel& model, std::size_t n, std::uint64_t seed);

struct BenchConfig {
    std::vector<ModelKind> models;
    std::vector<std::size_t> ps;
    std::vector<std::size_t> ns;
    std::size_t reps = 20;
    std::uint64_t seed = kDefaultSeed;
    unsigned threads = 1;
};

struct BenchOutput {
    std::vector<AccuracyReport> cells;  // model-major, then p, then n
    std::string table;                  // human-readable, both accuracy tables
    std::string csv;
};

// Throws UsageError if any (model, p) pair is invalid or the grid is empty.
BenchOutput run_bench(const BenchConfig& config);

// Full CLI; returns the process exit status.
int run_cli(int argc, char** argv);

}  // namespace polytree
