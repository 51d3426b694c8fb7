#include "polytree/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "polytree/csv.hpp"
#include "polytree/error.hpp"

namespace polytree {

namespace {

using nlohmann::json;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << text;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        write_file(path, text);
    }
}

}  // namespace

std::optional<TreeFormat> parse_tree_format(std::string_view name) {
    if (name == "dot") return TreeFormat::Dot;
    if (name == "json") return TreeFormat::Json;
    if (name == "edgelist") return TreeFormat::EdgeList;
    return std::nullopt;
}

std::uint64_t default_seed() {
    const char* env = std::getenv("POLYTREE_SEED");
    if (env == nullptr) return kDefaultSeed;
    const std::string_view text(env);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return kDefaultSeed;
    return value;
}

std::string render_tree(const DirectedPolytree& tree, const SampleMatrix& data, const PrunedGraph& weights,
                        TreeFormat format) {
    auto weight = [&](const DirectedEdge& e) { return weights.contains(e.undirected()) ? weights.weight_of(e.undirected()) : 0.0; };
    switch (format) {
        case TreeFormat::Dot: {
            std::string out = "digraph polytree {\n";
            for (std::size_t v = 0; v < tree.p(); ++v) out += "  " + dot_quote(data.name(v)) + ";\n";
            for (const auto& e : tree.edges()) {
                out += fmt::format("  {} -> {} [provenance=\"{}\", weight={:.6f}, label=\"{:.3f}\"];\n",
                                   dot_quote(data.name(e.source)), dot_quote(data.name(e.target)),
                                   to_string(e.provenance), weight(e), weight(e));
            }
            return out + "}\n";
        }
        case TreeFormat::Json: {
            json doc;
            doc["nodes"] = json::array();
            for (std::size_t v = 0; v < tree.p(); ++v) doc["nodes"].push_back(data.name(v));
            doc["edges"] = json::array();
            for (const auto& e : tree.edges()) {
                doc["edges"].push_back({{"source", data.name(e.source)},
                                        {"target", data.name(e.target)},
                                        {"provenance", to_string(e.provenance)},
                                        {"weight", weight(e)}});
            }
            doc["conflict_count"] = tree.conflict_count();
            return doc.dump(2) + "\n";
        }
        case TreeFormat::EdgeList: {
            std::string out = "source,target,provenance,weight\n";
            for (const auto& e : tree.edges()) {
                out += fmt::format("{},{},{},{:.6f}\n", csv_field(data.name(e.source)), csv_field(data.name(e.target)),
                                   to_string(e.provenance), weight(e));
            }
            return out;
        }
    }
    return {};
}

EstimateOutput run_estimate(const SampleMatrix& data, const EstimateOptions& options) {
    if (data.n() < 2) throw DataError(fmt::format("need at least 2 rows of data, got {}", data.n()));
    if (data.p() < 2) throw DataError(fmt::format("need at least 2 columns of data, got {}", data.p()));
    try {
        data.validate();
    } catch (const Error& e) {
        throw DataError(e.what());
    }

    const SeedPolicy seed{options.seed};
    EstimateOutput out;
    out.skeleton = estimate_skeleton(data, seed, options.threads);
    out.tree = orient(out.skeleton.forest, data, seed, &out.skeleton.xi);
    out.tree_text = render_tree(out.tree, data, out.skeleton.pruned, options.format);

    const auto& xi = out.skeleton.xi;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double sum = 0.0;
    for (std::size_t i = 0; i < xi.p(); ++i) {
        for (std::size_t j = 0; j < xi.p(); ++j) {
            if (i == j) continue;
            lo = std::min(lo, xi(i, j));
            hi = std::max(hi, xi(i, j));
            sum += xi(i, j);
        }
    }
    const double pairs = static_cast<double>(xi.p() * (xi.p() - 1));

    json report;
    report["n"] = data.n();
    report["p"] = data.p();
    report["seed"] = options.seed;
    report["xi"] = {{"min", lo}, {"max", hi}, {"mean", sum / pairs}};
    report["pruned_edges"] = out.skeleton.pruned.edges.size();
    report["forest_edges"] = out.skeleton.forest.edges().size();
    std::size_t components = 0;
    for (std::size_t v = 0; v < data.p(); ++v) components += out.skeleton.forest.components()[v] == v;
    report["components"] = components;
    report["conflict_count"] = out.tree.conflict_count();
    std::map<std::string, std::size_t> provenance;
    for (const auto& e : out.tree.edges()) ++provenance[std::string(to_string(e.provenance))];
    report["provenance"] = provenance;
    report["edges"] = json::array();
    for (const auto& e : out.tree.edges()) {
        report["edges"].push_back({{"source", data.name(e.source)},
                                   {"target", data.name(e.target)},
                                   {"provenance", to_string(e.provenance)},
                                   {"weight", out.skeleton.pruned.weight_of(e.undirected())}});
    }
    if (options.include_xi_matrix) {
        json rows = json::array();
        for (std::size_t i = 0; i < xi.p(); ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < xi.p(); ++j) row.push_back(xi(i, j));
            rows.push_back(std::move(row));
        }
        report["xi_matrix"] = std::move(rows);
    }
    out.report_json = report.dump(2) + "\n";
    return out;
}

SimulateOutput run_simulate(const TreeModel& model, std::size_t n, std::uint64_t seed) {
    try {
        model.validate();
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    if (n < 2) throw UsageError("simulate: n must be at least 2");
    const auto data = sample(model, n, SeedPolicy{seed});
    const auto truth = ground_truth(model);
    SimulateOutput out;
    std::ostringstream csv;
    write_csv(csv, data);
    out.data_csv = csv.str();
    out.truth_csv = "source,target\n";
    for (const auto& e : truth.directed.edges()) out.truth_csv += fmt::format("{},{}\n", e.source + 1, e.target + 1);
    return out;
}

BenchOutput run_bench(const BenchConfig& config) {
    if (config.models.empty() || config.ps.empty() || config.ns.empty()) throw UsageError("bench: empty grid");
    if (config.reps == 0) throw UsageError("bench: reps must be at least 1");
    for (const auto n : config.ns) {
        if (n < 2) throw UsageError("bench: n must be at least 2");
    }
    for (const auto kind : config.models) {
        for (const auto p : config.ps) {
            try {
                TreeModel{kind, p}.validate();
            } catch (const Error& e) {
                throw UsageError(e.what());
            }
        }
    }

    BenchOutput out;
    for (const auto kind : config.models) {
        for (const auto p : config.ps) {
            for (const auto n : config.ns) {
                const auto cell_seed = SeedPolicy{config.seed}.child(to_string(kind), {p, n});
                out.cells.push_back(run_benchmark(TreeModel{kind, p}, n, config.reps, cell_seed, config.threads));
            }
        }
    }

    out.csv = "model,p,n,reps,skeleton_mean,skeleton_se,directed_mean,directed_se,skeleton_exact\n";
    for (const auto& c : out.cells) {
        out.csv += fmt::format("{},{},{},{},{:.4f},{:.4f},{:.4f},{:.4f},{}\n", to_string(c.kind), c.p, c.n,
                               c.replications, c.skeleton_mean, c.skeleton_se, c.directed_mean, c.directed_se,
                               c.skeleton_exact);
    }

    auto table = [&](const char* title, bool skeleton) {
        std::string s = fmt::format("{} ({} replications, mean (standard error))\n", title, config.reps);
        s += fmt::format("{:<16}{:>6}", "tree type", "p");
        for (const auto n : config.ns) s += fmt::format("{:>16}", fmt::format("n={}", n));
        s += '\n';
        std::size_t at = 0;
        for (const auto kind : config.models) {
            for (const auto p : config.ps) {
                s += fmt::format("{:<16}{:>6}", to_string(kind), p);
                for (std::size_t t = 0; t < config.ns.size(); ++t, ++at) {
                    const auto& c = out.cells[at];
                    const double mean = skeleton ? c.skeleton_mean : c.directed_mean;
                    const double se = skeleton ? c.skeleton_se : c.directed_se;
                    s += fmt::format("{:>16}", fmt::format("{:.2f} ({:.2f})", mean, se));
                }
                s += '\n';
            }
        }
        return s;
    };
    out.table = table("Undirected skeleton edges correctly identified", true) + "\n" +
                table("Directed edges correctly identified", false);
    return out;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"Estimate causal polytrees from i.i.d. samples"};
    app.require_subcommand(1);

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    std::uint64_t seed = default_seed();
    unsigned threads = hw;

    auto* estimate = app.add_subcommand("estimate", "Estimate a directed polytree from a CSV file");
    std::string input;
    std::string output;
    std::string report_path;
    std::string format_name = "dot";
    bool ordinal = false;
    bool no_header = false;
    bool force_header = false;
    bool xi_full = false;
    estimate->add_option("input", input, "CSV file, one observation per row")->required();
    estimate->add_option("-o,--output", output, "Tree output path (default: stdout)");
    estimate->add_option("--report", report_path, "Write a JSON summary report here");
    estimate->add_option("-f,--format", format_name, "Tree format: dot, json or edgelist")
        ->check(CLI::IsMember({"dot", "json", "edgelist"}));
    estimate->add_flag("--ordinal-encode", ordinal, "Map non-numeric columns to 1..levels by first appearance");
    estimate->add_flag("--no-header", no_header, "The first row is data");
    estimate->add_flag("--header", force_header, "The first row holds column names");
    estimate->add_flag("--xi-matrix", xi_full, "Include the full xi matrix in the report");
    estimate->add_option("-s,--seed", seed, "Master seed");
    estimate->add_option("-t,--threads", threads, "Worker threads (results do not depend on this)");

    auto* simulate = app.add_subcommand("simulate", "Sample one of the synthetic tree models");
    std::string model_name;
    std::size_t sim_p = 0;
    std::size_t sim_n = 0;
    std::string truth_path;
    simulate->add_option("-m,--model", model_name, "linear, binary, star or reverse-binary")->required();
    simulate->add_option("-p,--p", sim_p, "Number of variables")->required();
    simulate->add_option("-n,--n", sim_n, "Number of observations")->required();
    simulate->add_option("-o,--output", output, "Sample CSV path (default: stdout)");
    simulate->add_option("--truth", truth_path, "Ground-truth edge list path");
    simulate->add_option("-s,--seed", seed, "Master seed");

    auto* bench = app.add_subcommand("bench", "Monte Carlo accuracy tables for the synthetic models");
    std::vector<std::string> model_names{"linear", "binary", "star", "reverse-binary"};
    BenchConfig config;
    config.ps = {15};
    config.ns = {50, 100, 200, 300};
    std::string csv_path;
    bench->add_option("-m,--models", model_names, "Tree models")->delimiter(',');
    bench->add_option("-p,--p", config.ps, "Tree sizes")->delimiter(',');
    bench->add_option("-n,--n", config.ns, "Sample sizes")->delimiter(',');
    bench->add_option("-r,--reps", config.reps, "Replications per cell");
    bench->add_option("-o,--output", output, "Table output path (default: stdout)");
    bench->add_option("--csv", csv_path, "Also write the cells as CSV");
    bench->add_option("-s,--seed", seed, "Master seed");
    bench->add_option("-t,--threads", threads, "Worker threads (results do not depend on this)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (estimate->parsed()) {
            if (no_header && force_header) throw UsageError("--header and --no-header are exclusive");
            CsvOptions csv;
            csv.ordinal_encode = ordinal;
            if (no_header) csv.header = false;
            if (force_header) csv.header = true;
            const auto data = read_csv_file(input, csv);
            EstimateOptions options;
            options.seed = seed;
            options.threads = threads;
            options.format = *parse_tree_format(format_name);
            options.include_xi_matrix = xi_full;
            const auto result = run_estimate(data, options);
            emit(output, result.tree_text);
            if (!report_path.empty()) write_file(report_path, result.report_json);
        } else if (simulate->parsed()) {
            const auto kind = parse_model_kind(model_name);
            if (!kind) throw UsageError("unknown model '" + model_name + "'");
            const auto result = run_simulate(TreeModel{*kind, sim_p}, sim_n, seed);
            emit(output, result.data_csv);
            if (!truth_path.empty()) write_file(truth_path, result.truth_csv);
        } else if (bench->parsed()) {
            for (const auto& name : model_names) {
                const auto kind = parse_model_kind(name);
                if (!kind) throw UsageError("unknown model '" + name + "'");
                config.models.push_back(*kind);
            }
            config.seed = seed;
            config.threads = threads;
            const auto result = run_bench(config);
            emit(output, result.table);
            if (!csv_path.empty()) write_file(csv_path, result.csv);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return 0;
}

}  // namespace polytree
