#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "scv/experiment.hpp"
#include "scv/graphgen.hpp"
#include "scv/kernels.hpp"
#include "scv/memmodel.hpp"
#include "scv/serialize.hpp"
#include "scv/simulator.hpp"

namespace {

using namespace scv;

/// Experiment options shared by the benchmarking subcommands. Precedence:
/// built-in defaults, then the JSON config file, then explicit flags.
struct ExperimentCli {
    std::string config_path;
    std::string mtx_path;
    std::string edges_path;
    std::string container_path;
    std::uint64_t rmat_n = 0;
    std::uint64_t rmat_nnz = 0;
    std::vector<std::string> formats;
    Index feature_dim = 0;
    std::vector<std::uint64_t> seeds;
    std::vector<std::uint64_t> sweep_values;
    std::string out_path;
    std::string plot_path;
    Index n_vpe = 0, n_pe = 0, queue_depth = 0, value_bytes = 0;
    std::uint64_t scratch_adj = 0, scratch_z = 0, scratch_ps = 0;
    std::uint32_t write_readback = 0;
    std::uint64_t cache_capacity = 0;
    std::uint32_t line_bytes = 0, associativity = 0, hit_latency = 0, dram_latency = 0;

    std::vector<std::pair<CLI::Option*, std::function<void(ExperimentConfig&)>>> appliers;

    void attach(CLI::App* cmd) {
        const auto on = [&](CLI::Option* o, std::function<void(ExperimentConfig&)> fn) {
            appliers.emplace_back(o, std::move(fn));
        };
        cmd->add_option("--config", config_path, "JSON experiment config file");

        CLI::Option* mtx = cmd->add_option("--mtx", mtx_path, "coordinate Matrix Market graph");
        CLI::Option* edges =
            cmd->add_option("--edges", edges_path, "edge list graph (src dst [weight])");
        CLI::Option* container =
            cmd->add_option("--container", container_path, "serialized matrix container");
        CLI::Option* rn = cmd->add_option("--rmat-n", rmat_n, "recursive generator: node count");
        CLI::Option* re =
            cmd->add_option("--rmat-nnz", rmat_nnz, "recursive generator: edge count");
        mtx->excludes(edges)->excludes(container);
        edges->excludes(container);
        rn->excludes(mtx)->excludes(edges)->excludes(container);
        on(mtx, [this](ExperimentConfig& c) {
            c.graph = GraphSource{};
            c.graph.kind = GraphSource::Kind::MatrixMarket;
            c.graph.path = mtx_path;
        });
        on(edges, [this](ExperimentConfig& c) {
            c.graph = GraphSource{};
            c.graph.kind = GraphSource::Kind::EdgeList;
            c.graph.path = edges_path;
        });
        on(container, [this](ExperimentConfig& c) {
            c.graph = GraphSource{};
            c.graph.kind = GraphSource::Kind::Container;
            c.graph.path = container_path;
        });
        on(rn, [this](ExperimentConfig& c) {
            c.graph.kind = GraphSource::Kind::Rmat;
            c.graph.n = static_cast<Index>(rmat_n);
        });
        on(re, [this](ExperimentConfig& c) {
            c.graph.kind = GraphSource::Kind::Rmat;
            c.graph.nnz = rmat_nnz;
        });
        on(cmd->add_flag("--undirected", "mirror edge-list edges"),
           [](ExperimentConfig& c) { c.graph.directed = false; });

        on(cmd->add_option("--format", formats,
                           "format spec: csr | csc | mp | bcsr:<B> | scv:<H>[x<W>] | "
                           "scvz:<H>[x<W>] (repeatable; first is the speedup baseline)"),
           [this](ExperimentConfig& c) {
               c.formats.clear();
               for (const std::string& f : formats) c.formats.push_back(parse_format(f));
           });
        on(cmd->add_option("--feature-dim,-f", feature_dim, "feature matrix width"),
           [this](ExperimentConfig& c) { c.feature_dim = feature_dim; });
        on(cmd->add_option("--seeds", seeds, "seeds, one run per seed"),
           [this](ExperimentConfig& c) { c.seeds = seeds; });
        on(cmd->add_option("--sweep-values", sweep_values, "explicit sweep points"),
           [this](ExperimentConfig& c) { c.sweep_values = sweep_values; });
        on(cmd->add_option("--out,-o", out_path, "output CSV path"),
           [this](ExperimentConfig& c) { c.output_path = out_path; });
        cmd->add_option("--plot", plot_path, "also render an SVG plot to this path");

        on(cmd->add_option("--n-vpe", n_vpe, "vector engines"),
           [this](ExperimentConfig& c) { c.proc.n_vpe = n_vpe; });
        on(cmd->add_option("--n-pe", n_pe, "lanes per vector engine"),
           [this](ExperimentConfig& c) { c.proc.n_pe = n_pe; });
        on(cmd->add_option("--queue-depth", queue_depth, "per-engine queue depth"),
           [this](ExperimentConfig& c) { c.proc.queue_depth = queue_depth; });
        on(cmd->add_option("--scratch-adj", scratch_adj, "adjacency scratch bytes"),
           [this](ExperimentConfig& c) { c.proc.scratch_adj_bytes = scratch_adj; });
        on(cmd->add_option("--scratch-z", scratch_z, "feature-row scratch bytes"),
           [this](ExperimentConfig& c) { c.proc.scratch_z_bytes = scratch_z; });
        on(cmd->add_option("--scratch-ps", scratch_ps, "partial-sum scratch bytes"),
           [this](ExperimentConfig& c) { c.proc.scratch_ps_bytes = scratch_ps; });
        on(cmd->add_option("--value-bytes", value_bytes, "bytes per matrix value"),
           [this](ExperimentConfig& c) { c.proc.value_bytes = value_bytes; });
        on(cmd->add_option("--write-readback-latency", write_readback,
                           "cycles before a write is readable"),
           [this](ExperimentConfig& c) { c.proc.write_readback_latency = write_readback; });

        on(cmd->add_option("--cache-capacity", cache_capacity, "cache capacity bytes"),
           [this](ExperimentConfig& c) { c.mem.capacity_bytes = cache_capacity; });
        on(cmd->add_option("--line-bytes", line_bytes, "cache line bytes"),
           [this](ExperimentConfig& c) { c.mem.line_bytes = line_bytes; });
        on(cmd->add_option("--associativity", associativity, "cache ways, 0 = fully associative"),
           [this](ExperimentConfig& c) { c.mem.associativity = associativity; });
        on(cmd->add_option("--hit-latency", hit_latency, "cache hit cycles"),
           [this](ExperimentConfig& c) { c.mem.hit_latency = hit_latency; });
        on(cmd->add_option("--dram-latency", dram_latency, "cache miss cycles"),
           [this](ExperimentConfig& c) { c.mem.dram_latency = dram_latency; });
    }

    ExperimentConfig build() const {
        ExperimentConfig cfg;
        if (!config_path.empty()) cfg = load_config(config_path);
        for (const auto& [opt, fn] : appliers)
            if (opt->count()) fn(cfg);
        return cfg;
    }
};

int run_table(const ExperimentConfig& cfg, const std::string& plot_path) {
    const std::vector<ResultRow> rows = run_experiment(cfg);
    emit_csv(rows, cfg.output_path);
    std::cout << "wrote " << rows.size() << " rows to " << cfg.output_path << "\n";
    if (!plot_path.empty()) {
        emit_plot(rows, plot_path);
        std::cout << "wrote plot to " << plot_path << "\n";
    }
    return 0;
}

CooMatrix load_graph_file(const std::string& path, std::string from, bool directed) {
    if (from == "auto") {
        const auto dot = path.rfind('.');
        const std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
        from = ext == "mtx" ? "mtx" : (ext == "el" || ext == "edges" || ext == "txt") ? "edges"
                                                                                      : "container";
    }
    if (from == "mtx") return load_matrix_market(path);
    if (from == "edges") return load_edge_list(path, directed);
    if (from == "container") return load_any_coo(path);
    throw std::invalid_argument("unknown input kind '" + from + "'");
}

int do_convert(const std::string& input, const std::string& output, const std::string& to,
               const std::string& from, bool directed) {
    const CooMatrix m = load_graph_file(input, from, directed);
    std::string kind = to;
    if (to == "coo") {
        save_matrix(m, output);
    } else {
        const BenchFormat f = parse_format(to);
        switch (f.kind) {
            case BenchKind::Csr: save_matrix(coo_to_csr(m), output); break;
            case BenchKind::Csc: save_matrix(coo_to_csc(m), output); break;
            case BenchKind::Bcsr: save_matrix(coo_to_bcsr(m, f.block_size), output); break;
            case BenchKind::Scv:
                save_matrix(coo_to_scv(m, f.vec_height, f.tile_width, f.order), output);
                break;
            case BenchKind::Mp:
                throw std::invalid_argument(
                    "mp is a scan strategy, not a storage format; convert to coo/csr/csc/"
                    "bcsr/scv/scvz");
        }
    }
    std::cout << "wrote " << kind << " container " << m.n_rows << "x" << m.n_cols
              << " nnz=" << m.nnz() << " to " << output << "\n";
    return 0;
}

int do_verify(const ExperimentConfig& cfg) {
    const CooMatrix graph = realize_graph(cfg.graph, cfg.seeds.front());
    std::vector<BenchFormat> formats = cfg.formats;
    if (formats.empty()) {
        for (const char* name : {"csr", "csc", "bcsr:16", "scv:256", "scvz:256", "mp"})
            formats.push_back(parse_format(name));
    }
    const VerifyReport report =
        verify_formats(graph, cfg.feature_dim, formats, cfg.proc, cfg.seeds.front());
    for (const VerifyCell& cell : report.cells) {
        if (cell.pass) {
            std::cout << "PASS " << cell.format << " max_abs_dev=0\n";
        } else {
            std::cout << "FAIL " << cell.format << " max_abs_dev=" << cell.max_abs_dev << " at ("
                      << cell.row << ", " << cell.col << ")\n";
        }
    }
    std::cout << (report.pass ? "all formats agree with the reference product\n"
                              : "verification FAILED\n");
    return report.pass ? 0 : 1;
}

int do_trace_dump(const ExperimentConfig& cfg, const std::string& out_path, std::uint64_t limit) {
    if (cfg.formats.size() != 1)
        throw std::invalid_argument("trace-dump needs exactly one --format");
    const CooMatrix graph = realize_graph(cfg.graph, cfg.seeds.front());
    const DenseMatrix z = gen_features(graph.n_cols, cfg.feature_dim, cfg.seeds.front());
    const Schedule s = make_schedule(cfg.formats.front(), graph, cfg.feature_dim, cfg.proc);

    // Two passes, as in the benchmark: probe at hit latency, replay the trace
    // for the mean access time, then retime with that fed back.
    SimOptions opt;
    opt.mat = cfg.mem.hit_latency;
    const SimResult probe = simulate(s, z, cfg.proc, opt);
    const CacheStats cs = replay(probe.trace, cfg.mem);
    const double mean = cs.mean_access_time(cfg.mem);
    opt.mat = static_cast<std::uint32_t>(std::max<double>(cfg.mem.hit_latency, std::ceil(mean)));
    SimResult timed = simulate(s, z, cfg.proc, opt);

    if (limit && timed.trace.accesses.size() > limit) timed.trace.accesses.resize(limit);
    if (out_path.empty()) {
        dump_trace_csv(timed.trace, std::cout);
    } else {
        std::ofstream os(out_path);
        if (!os) throw std::invalid_argument("cannot open " + out_path);
        dump_trace_csv(timed.trace, os);
        std::cout << "wrote " << timed.trace.size() << " accesses to " << out_path << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse-format graph aggregation benchmark"};
    app.require_subcommand(1);

    CLI::App* convert = app.add_subcommand("convert", "convert a graph file between formats");
    std::string cv_input, cv_output, cv_to = "coo", cv_from = "auto";
    bool cv_undirected = false;
    convert->add_option("input", cv_input, "graph file to read")->required();
    convert->add_option("output", cv_output, "container file to write")->required();
    convert->add_option("--to", cv_to, "target format spec (default coo)");
    convert->add_option("--from", cv_from, "input kind: auto | mtx | edges | container");
    convert->add_flag("--undirected", cv_undirected, "mirror edge-list edges");

    CLI::App* verify = app.add_subcommand("verify", "check formats against the reference product");
    ExperimentCli verify_cli;
    verify_cli.attach(verify);

    CLI::App* bench = app.add_subcommand("bench", "run every format once, no sweep");
    ExperimentCli bench_cli;
    bench_cli.attach(bench);

    CLI::App* sweep = app.add_subcommand("sweep", "sweep vector height or tile width");
    ExperimentCli sweep_cli;
    sweep_cli.attach(sweep);
    std::string sweep_axis = "height";
    sweep->add_option("--axis", sweep_axis, "height | width");

    CLI::App* scale = app.add_subcommand("scale", "sweep the processor count");
    ExperimentCli scale_cli;
    scale_cli.attach(scale);

    CLI::App* trace = app.add_subcommand("trace-dump", "dump one run's memory access trace");
    ExperimentCli trace_cli;
    trace_cli.attach(trace);
    std::uint64_t trace_limit = 0;
    trace->add_option("--limit", trace_limit, "keep only the first N accesses (0 = all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*convert) return do_convert(cv_input, cv_output, cv_to, cv_from, cv_undirected);
        if (*verify) {
            ExperimentConfig cfg = verify_cli.build();
            if (cfg.feature_dim == 0) cfg.feature_dim = 128;
            return do_verify(cfg);
        }
        if (*bench) {
            ExperimentConfig cfg = bench_cli.build();
            cfg.sweep = SweepAxis::None;
            cfg.sweep_values.clear();
            return run_table(cfg, bench_cli.plot_path);
        }
        if (*sweep) {
            ExperimentConfig cfg = sweep_cli.build();
            if (sweep_axis == "height") {
                cfg.sweep = SweepAxis::ScvHeight;
            } else if (sweep_axis == "width") {
                cfg.sweep = SweepAxis::TileWidth;
            } else {
                throw std::invalid_argument("sweep --axis must be height or width");
            }
            return run_table(cfg, sweep_cli.plot_path);
        }
        if (*scale) {
            ExperimentConfig cfg = scale_cli.build();
            cfg.sweep = SweepAxis::Processors;
            return run_table(cfg, scale_cli.plot_path);
        }
        if (*trace) return do_trace_dump(trace_cli.build(), trace_cli.out_path, trace_limit);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
