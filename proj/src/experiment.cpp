#include "scv/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "scv/graphgen.hpp"
#include "scv/kernels.hpp"
#include "scv/multiproc.hpp"
#include "scv/serialize.hpp"

namespace scv {
namespace {

[[noreturn]] void bad_config(const std::string& msg) { throw std::invalid_argument(msg); }

std::uint64_t parse_u64(const std::string& spec, const std::string& text) {
    std::uint64_t v = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end || text.empty())
        bad_config("format spec '" + spec + "': bad number '" + text + "'");
    return v;
}

std::vector<std::uint64_t> effective_sweep(const ExperimentConfig& cfg) {
    if (!cfg.sweep_values.empty()) return cfg.sweep_values;
    return default_sweep_values(cfg.sweep);
}

const char* axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::None: return "none";
        case SweepAxis::ScvHeight: return "height";
        case SweepAxis::TileWidth: return "width";
        case SweepAxis::Processors: return "procs";
    }
    return "?";
}

/// Geometric mean; zero when any sample is zero, zero for no samples.
double geomean(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    double log_sum = 0.0;
    for (double x : xs) {
        if (x <= 0.0) return 0.0;
        log_sum += std::log(x);
    }
    return std::exp(log_sum / static_cast<double>(xs.size()));
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Runs one non-multiprocessor cell through the two-phase aggregation.
ResultRow single_proc_cell(const BenchFormat& f, const CooMatrix& graph, const DenseMatrix& z,
                           const ProcessorConfig& proc, const CacheConfig& mem) {
    const Schedule s = make_schedule(f, graph, z.n_cols, proc);
    const AggregateResult ar = run_aggregation(s, z, proc, mem);
    ResultRow r;
    r.cycles = ar.stats.cycles;
    r.idle_cycles = ar.stats.idle_cycles;
    r.stall_cycles = ar.stats.stall_cycles;
    r.scratch_traffic = ar.stats.scratch_reads + ar.stats.scratch_writes;
    r.cache_misses = ar.cache.misses;
    r.dram_bytes = ar.cache.dram_bytes(mem);
    r.mat = ar.mean_access_time;
    r.mac_ops = ar.stats.mac_ops;
    r.padding_mac_ops = ar.stats.padding_mac_ops;
    return r;
}

/// Runs one cell of the processor-count sweep; totals span all processors.
ResultRow multi_proc_cell(const BenchFormat& f, const CooMatrix& graph, const DenseMatrix& z,
                          const ProcessorConfig& proc, const CacheConfig& mem, Index n_proc) {
    const ScvMatrix m = coo_to_scv(graph, f.vec_height, f.tile_width, f.order);
    const MultiStats ms = simulate_multi(m, z, proc, mem, n_proc);
    ResultRow r;
    r.cycles = ms.total_cycles;
    for (const SimStats& st : ms.per_proc) {
        r.idle_cycles += st.idle_cycles;
        r.stall_cycles += st.stall_cycles;
        r.scratch_traffic += st.scratch_reads + st.scratch_writes;
        r.mac_ops += st.mac_ops;
        r.padding_mac_ops += st.padding_mac_ops;
    }
    std::uint64_t accesses = 0;
    double latency_sum = 0.0;
    for (const CacheStats& cs : ms.per_cache) {
        r.cache_misses += cs.misses;
        accesses += cs.accesses;
        latency_sum += static_cast<double>(cs.hits) * mem.hit_latency +
                       static_cast<double>(cs.misses) * mem.dram_latency;
    }
    r.dram_bytes = ms.dram_bytes;
    r.mat = accesses ? latency_sum / static_cast<double>(accesses) : mem.hit_latency;
    return r;
}

void csv_row(std::ostream& os, const ResultRow& r, const std::string& seed_field) {
    os << r.format << ',' << r.sweep_value << ',' << seed_field << ',' << r.n_nodes << ','
       << r.nnz << ',' << r.feature_dim << ',' << r.cycles << ',' << r.idle_cycles << ','
       << r.stall_cycles << ',' << r.scratch_traffic << ',' << r.cache_misses << ','
       << r.dram_bytes << ',' << fmt_double(r.mat) << ',' << r.mac_ops << ','
       << r.padding_mac_ops << ',' << fmt_double(r.speedup) << '\n';
}

void csv_summary_row(std::ostream& os, const std::vector<ResultRow>& group) {
    const ResultRow& head = group.front();
    std::vector<double> col(group.size());
    const auto gm = [&](auto field) {
        for (std::size_t i = 0; i < group.size(); ++i)
            col[i] = static_cast<double>(group[i].*field);
        return geomean(col);
    };
    os << head.format << ',' << head.sweep_value << ",geomean," << head.n_nodes << ','
       << head.nnz << ',' << head.feature_dim << ',' << fmt_double(gm(&ResultRow::cycles)) << ','
       << fmt_double(gm(&ResultRow::idle_cycles)) << ','
       << fmt_double(gm(&ResultRow::stall_cycles)) << ','
       << fmt_double(gm(&ResultRow::scratch_traffic)) << ','
       << fmt_double(gm(&ResultRow::cache_misses)) << ','
       << fmt_double(gm(&ResultRow::dram_bytes)) << ',' << fmt_double(gm(&ResultRow::mat)) << ','
       << fmt_double(gm(&ResultRow::mac_ops)) << ','
       << fmt_double(gm(&ResultRow::padding_mac_ops)) << ','
       << fmt_double(gm(&ResultRow::speedup)) << '\n';
}

const std::string kCsvHeader =
    "format,sweep,seed,n_nodes,nnz,feature_dim,cycles,idle_cycles,stall_cycles,"
    "scratch_traffic,cache_misses,dram_bytes,mat,mac_ops,padding_mac_ops,speedup";

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

}  // namespace

BenchFormat parse_format(const std::string& spec) {
    BenchFormat f;
    f.name = spec;
    std::string head = spec;
    std::string params;
    if (const auto colon = spec.find(':'); colon != std::string::npos) {
        head = spec.substr(0, colon);
        params = spec.substr(colon + 1);
    }
    const bool has_params = head.size() != spec.size();
    if (head == "csr" || head == "csc" || head == "mp") {
        if (has_params)
            bad_config("format spec '" + spec + "': " + head + " takes no parameters");
        f.kind = head == "csr" ? BenchKind::Csr : head == "csc" ? BenchKind::Csc : BenchKind::Mp;
        return f;
    }
    if (head == "bcsr") {
        f.kind = BenchKind::Bcsr;
        if (has_params) {
            const std::uint64_t b = parse_u64(spec, params);
            if (b == 0) bad_config("format spec '" + spec + "': block size must be >= 1");
            f.block_size = static_cast<Index>(b);
        }
        return f;
    }
    if (head == "scv" || head == "scvz") {
        f.kind = BenchKind::Scv;
        f.order = head == "scvz" ? OrderKind::ZMorton : OrderKind::RowMajor;
        if (has_params) {
            std::string height = params;
            if (const auto x = params.find('x'); x != std::string::npos) {
                height = params.substr(0, x);
                const std::uint64_t w = parse_u64(spec, params.substr(x + 1));
                if (w == 0) bad_config("format spec '" + spec + "': tile width must be >= 1");
                f.tile_width = static_cast<Index>(w);
            }
            const std::uint64_t h = parse_u64(spec, height);
            if (!is_pow2(h))
                bad_config("format spec '" + spec + "': vector height must be a power of 2");
            f.vec_height = static_cast<Index>(h);
        }
        return f;
    }
    bad_config("format spec '" + spec + "': unknown format '" + head + "'");
}

CooMatrix realize_graph(const GraphSource& src, std::uint64_t seed) {
    switch (src.kind) {
        case GraphSource::Kind::Rmat:
            return gen_rmat(src.n, src.nnz, src.a, src.b, src.c, src.d, seed);
        case GraphSource::Kind::MatrixMarket: return load_matrix_market(src.path);
        case GraphSource::Kind::EdgeList: return load_edge_list(src.path, src.directed);
        case GraphSource::Kind::Container: return load_any_coo(src.path);
    }
    bad_config("unknown graph source kind");
}

std::vector<std::uint64_t> default_sweep_values(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::None: return {0};
        case SweepAxis::ScvHeight: return {128, 256, 512, 1024, 2048};
        case SweepAxis::TileWidth: return {1, 2, 4, 8, 16, 32, 64};
        case SweepAxis::Processors: return {2, 4, 8, 16, 32, 64};
    }
    return {};
}

ProcessorConfig iso_memory_scratch(const ProcessorConfig& base, Index vec_height,
                                   Index feature_dim) {
    const std::uint64_t total = base.scratch_z_bytes + base.scratch_ps_bytes;
    const std::uint64_t z_need =
        static_cast<std::uint64_t>(vec_height) * feature_dim * base.value_bytes;
    const std::uint64_t ps_min = static_cast<std::uint64_t>(base.n_pe) * base.value_bytes;
    if (z_need + ps_min > total)
        bad_config("iso-memory violation: height " + std::to_string(vec_height) +
                   " needs " + std::to_string(z_need) +
                   " feature bytes, leaving less than one output segment (" +
                   std::to_string(ps_min) + " bytes) of the " + std::to_string(total) +
                   "-byte scratch budget");
    ProcessorConfig cfg = base;
    cfg.scratch_z_bytes = z_need;
    cfg.scratch_ps_bytes = total - z_need;
    return cfg;
}

Schedule make_schedule(const BenchFormat& f, const CooMatrix& m, Index feature_dim,
                       const ProcessorConfig& proc) {
    switch (f.kind) {
        case BenchKind::Csr: return csr_schedule(coo_to_csr(m));
        case BenchKind::Csc: return csc_schedule(coo_to_csc(m));
        case BenchKind::Bcsr: return bcsr_schedule(coo_to_bcsr(m, f.block_size));
        case BenchKind::Scv:
            return scv_schedule(coo_to_scv(m, f.vec_height, f.tile_width, f.order));
        case BenchKind::Mp: {
            const std::uint64_t row_bytes =
                static_cast<std::uint64_t>(feature_dim) * proc.value_bytes;
            ResidencyPolicy residency;
            residency.z_capacity_rows =
                static_cast<Index>(std::max<std::uint64_t>(1, proc.scratch_z_bytes / row_bytes));
            residency.ps_capacity_rows =
                static_cast<Index>(std::max<std::uint64_t>(1, proc.scratch_ps_bytes / row_bytes));
            return mp_schedule(m, residency);
        }
    }
    bad_config("unknown bench kind");
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.formats.empty()) bad_config("no formats declared");
    if (cfg.seeds.empty()) bad_config("no seeds declared");
    if (cfg.feature_dim == 0) bad_config("feature_dim must be >= 1");
    const std::vector<std::uint64_t> values = effective_sweep(cfg);
    if (values.empty()) bad_config("empty sweep value list");
    if (cfg.sweep == SweepAxis::None) {
        if (values != std::vector<std::uint64_t>{0})
            bad_config("sweep values given without a sweep axis");
        return;
    }
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    switch (cfg.sweep) {
        case SweepAxis::ScvHeight: lo = 128, hi = 2048; break;
        case SweepAxis::TileWidth: lo = 1, hi = 64; break;
        case SweepAxis::Processors: lo = 2, hi = 64; break;
        case SweepAxis::None: break;
    }
    for (const std::uint64_t v : values) {
        if (!is_pow2(v) || v < lo || v > hi)
            bad_config("sweep value " + std::to_string(v) + " is off the " +
                       axis_name(cfg.sweep) + " axis grid (powers of 2 in [" +
                       std::to_string(lo) + ", " + std::to_string(hi) + "])");
        if (cfg.sweep == SweepAxis::ScvHeight)
            iso_memory_scratch(cfg.proc, static_cast<Index>(v), cfg.feature_dim);
    }
    if (cfg.sweep == SweepAxis::Processors) {
        for (const BenchFormat& f : cfg.formats) {
            if (f.kind != BenchKind::Scv)
                bad_config("processor sweeps partition on vector boundaries; format '" + f.name +
                           "' has none");
        }
    }
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    const std::vector<std::uint64_t> values = effective_sweep(cfg);

    // File-backed sources give every seed the same adjacency; only the
    // generator reseeds the structure. Features always follow the seed.
    std::map<std::uint64_t, CooMatrix> graphs;
    const auto graph_for = [&](std::uint64_t seed) -> const CooMatrix& {
        const std::uint64_t key = cfg.graph.kind == GraphSource::Kind::Rmat ? seed : 0;
        auto it = graphs.find(key);
        if (it == graphs.end()) it = graphs.emplace(key, realize_graph(cfg.graph, seed)).first;
        return it->second;
    };

    std::vector<ResultRow> rows;
    rows.reserve(cfg.formats.size() * values.size() * cfg.seeds.size());
    for (const BenchFormat& f : cfg.formats) {
        for (const std::uint64_t v : values) {
            for (const std::uint64_t seed : cfg.seeds) {
                const CooMatrix& graph = graph_for(seed);
                const DenseMatrix z = gen_features(graph.n_cols, cfg.feature_dim, seed);
                BenchFormat eff = f;
                ProcessorConfig proc = cfg.proc;
                if (f.kind == BenchKind::Scv && cfg.sweep == SweepAxis::ScvHeight) {
                    eff.vec_height = static_cast<Index>(v);
                    proc = iso_memory_scratch(cfg.proc, eff.vec_height, cfg.feature_dim);
                } else if (f.kind == BenchKind::Scv && cfg.sweep == SweepAxis::TileWidth) {
                    eff.tile_width = static_cast<Index>(v);
                }
                ResultRow r = cfg.sweep == SweepAxis::Processors
                                  ? multi_proc_cell(eff, graph, z, proc, cfg.mem,
                                                    static_cast<Index>(v))
                                  : single_proc_cell(eff, graph, z, proc, cfg.mem);
                r.format = f.name;
                r.sweep_value = cfg.sweep == SweepAxis::None ? 0 : v;
                r.seed = seed;
                r.n_nodes = graph.n_rows;
                r.nnz = graph.nnz();
                r.feature_dim = cfg.feature_dim;
                rows.push_back(std::move(r));
            }
        }
    }

    // The first declared format is the baseline at every (sweep point, seed).
    const std::size_t cells_per_format = values.size() * cfg.seeds.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const ResultRow& base = rows[i % cells_per_format];
        rows[i].speedup = rows[i].cycles
                              ? static_cast<double>(base.cycles) / static_cast<double>(rows[i].cycles)
                              : 1.0;
    }
    return rows;
}

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& os) {
    if (rows.empty()) bad_config("emit_csv: empty result table");
    os << kCsvHeader << '\n';
    for (const ResultRow& r : rows) csv_row(os, r, std::to_string(r.seed));
    // Rows arrive sorted by (format, sweep value, seed), so each summary
    // group is one contiguous run.
    std::vector<ResultRow> group;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        group.push_back(rows[i]);
        const bool run_ends = i + 1 == rows.size() || rows[i + 1].format != rows[i].format ||
                              rows[i + 1].sweep_value != rows[i].sweep_value;
        if (run_ends) {
            csv_summary_row(os, group);
            group.clear();
        }
    }
}

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) {
    std::ofstream os(path);
    if (!os) bad_config("emit_csv: cannot open " + path);
    emit_csv(rows, os);
    if (!os) bad_config("emit_csv: write to " + path + " failed");
}

std::string render_plot_svg(const std::vector<ResultRow>& rows) {
    if (rows.empty()) bad_config("render_plot_svg: empty result table");

    std::vector<std::string> formats;
    std::vector<std::uint64_t> values;
    for (const ResultRow& r : rows) {
        if (std::find(formats.begin(), formats.end(), r.format) == formats.end())
            formats.push_back(r.format);
        if (std::find(values.begin(), values.end(), r.sweep_value) == values.end())
            values.push_back(r.sweep_value);
    }
    std::sort(values.begin(), values.end());

    // One plotted sample per (format, sweep point): geometric mean over seeds.
    const auto sample = [&](const std::string& f, std::uint64_t v) {
        std::vector<double> cs;
        for (const ResultRow& r : rows)
            if (r.format == f && r.sweep_value == v) cs.push_back(static_cast<double>(r.cycles));
        return geomean(cs);
    };
    double y_max = 1.0;
    for (const std::string& f : formats)
        for (const std::uint64_t v : values) y_max = std::max(y_max, sample(f, v));

    const double width = 720, height = 440;
    const double left = 80, right = width - 24, top = 28, bottom = height - 56;
    const auto y_of = [&](double cycles) {
        return bottom - (cycles / (1.05 * y_max)) * (bottom - top);
    };
    const auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.1f", v);
        return std::string(buf);
    };
    const auto label = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3g", v);
        return std::string(buf);
    };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
       << "\" fill=\"white\"/>\n";
    os << "<line x1=\"" << num(left) << "\" y1=\"" << num(bottom) << "\" x2=\"" << num(right)
       << "\" y2=\"" << num(bottom) << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << num(left) << "\" y1=\"" << num(top) << "\" x2=\"" << num(left)
       << "\" y2=\"" << num(bottom) << "\" stroke=\"black\"/>\n";
    for (const double frac : {0.0, 0.5, 1.0}) {
        const double cycles = frac * y_max;
        os << "<text x=\"" << num(left - 8) << "\" y=\"" << num(y_of(cycles) + 4)
           << "\" text-anchor=\"end\">" << label(cycles) << "</text>\n";
    }
    os << "<text x=\"" << num(left - 60) << "\" y=\"" << num(top - 10) << "\">cycles</text>\n";

    if (values.size() == 1) {
        const double slot = (right - left) / static_cast<double>(formats.size());
        for (std::size_t i = 0; i < formats.size(); ++i) {
            const double c = sample(formats[i], values[0]);
            const double x = left + slot * (static_cast<double>(i) + 0.2);
            os << "<rect x=\"" << num(x) << "\" y=\"" << num(y_of(c)) << "\" width=\""
               << num(slot * 0.6) << "\" height=\"" << num(bottom - y_of(c)) << "\" fill=\""
               << kPalette[i % 8] << "\"/>\n";
            os << "<text x=\"" << num(x + slot * 0.3) << "\" y=\"" << num(bottom + 16)
               << "\" text-anchor=\"middle\">" << formats[i] << "</text>\n";
        }
    } else {
        const double step = (right - left) / static_cast<double>(values.size() - 1);
        for (std::size_t v = 0; v < values.size(); ++v) {
            os << "<text x=\"" << num(left + step * static_cast<double>(v)) << "\" y=\""
               << num(bottom + 16) << "\" text-anchor=\"middle\">" << values[v] << "</text>\n";
        }
        for (std::size_t i = 0; i < formats.size(); ++i) {
            os << "<polyline fill=\"none\" stroke=\"" << kPalette[i % 8]
               << "\" stroke-width=\"2\" points=\"";
            for (std::size_t v = 0; v < values.size(); ++v) {
                os << num(left + step * static_cast<double>(v)) << ','
                   << num(y_of(sample(formats[i], values[v]))) << ' ';
            }
            os << "\"/>\n";
            os << "<text x=\"" << num(right - 150) << "\" y=\""
               << num(top + 16 * static_cast<double>(i)) << "\" fill=\"" << kPalette[i % 8]
               << "\">" << formats[i] << "</text>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

void emit_plot(const std::vector<ResultRow>& rows, const std::string& path) {
    const std::string svg = render_plot_svg(rows);
    std::ofstream os(path);
    if (!os) bad_config("emit_plot: cannot open " + path);
    os << svg;
    if (!os) bad_config("emit_plot: write to " + path + " failed");
}

VerifyCell verify_schedule(const std::string& name, const CooMatrix& a, const Schedule& s,
                           const DenseMatrix& z, const ProcessorConfig& proc) {
    const DenseMatrix ref = dense_spmm(a, z);
    const DenseMatrix exec = execute_schedule(s, z);
    SimOptions opt;
    opt.warm = true;
    const DenseMatrix sim = simulate(s, z, proc, opt).output;
    VerifyCell cell;
    cell.format = name;
    const auto scan = [&](const DenseMatrix& got) {
        for (Index r = 0; r < ref.n_rows; ++r) {
            for (Index c = 0; c < ref.n_cols; ++c) {
                const double dev = std::abs(got.at(r, c) - ref.at(r, c));
                if (dev > cell.max_abs_dev) {
                    cell.max_abs_dev = dev;
                    cell.row = r;
                    cell.col = c;
                }
            }
        }
    };
    scan(exec);
    scan(sim);
    cell.pass = cell.max_abs_dev == 0.0;
    return cell;
}

VerifyReport verify_formats(const CooMatrix& a, Index feature_dim,
                            const std::vector<BenchFormat>& formats,
                            const ProcessorConfig& proc, std::uint64_t seed) {
    const DenseMatrix z = gen_features(a.n_cols, feature_dim, seed);
    VerifyReport report;
    report.pass = true;
    for (const BenchFormat& f : formats) {
        const Schedule s = make_schedule(f, a, feature_dim, proc);
        report.cells.push_back(verify_schedule(f.name, a, s, z, proc));
        report.pass = report.pass && report.cells.back().pass;
    }
    return report;
}

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, const std::string& where,
                         std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : j.items()) {
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* k) { return key == k; }) == allowed.end())
            bad_config("config: unknown key '" + key + "' in " + where);
    }
}

GraphSource graph_from_json(const json& j) {
    if (!j.is_object()) bad_config("config: 'graph' must be an object");
    reject_unknown_keys(j, "graph",
                        {"kind", "path", "directed", "n", "nnz", "a", "b", "c", "d"});
    GraphSource src;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "rmat") {
        src.kind = GraphSource::Kind::Rmat;
        if (j.contains("n")) src.n = j.at("n").get<Index>();
        if (j.contains("nnz")) src.nnz = j.at("nnz").get<std::uint64_t>();
        if (j.contains("a")) src.a = j.at("a").get<double>();
        if (j.contains("b")) src.b = j.at("b").get<double>();
        if (j.contains("c")) src.c = j.at("c").get<double>();
        if (j.contains("d")) src.d = j.at("d").get<double>();
    } else if (kind == "mtx" || kind == "edges" || kind == "container") {
        src.kind = kind == "mtx"     ? GraphSource::Kind::MatrixMarket
                   : kind == "edges" ? GraphSource::Kind::EdgeList
                                     : GraphSource::Kind::Container;
        src.path = j.at("path").get<std::string>();
        if (j.contains("directed")) src.directed = j.at("directed").get<bool>();
    } else {
        bad_config("config: unknown graph kind '" + kind + "'");
    }
    return src;
}

SweepAxis axis_from_json(const std::string& name) {
    if (name == "none") return SweepAxis::None;
    if (name == "height") return SweepAxis::ScvHeight;
    if (name == "width") return SweepAxis::TileWidth;
    if (name == "procs") return SweepAxis::Processors;
    bad_config("config: unknown sweep axis '" + name + "'");
}

void proc_from_json(const json& j, ProcessorConfig& proc) {
    reject_unknown_keys(j, "processor",
                        {"n_vpe", "n_pe", "queue_depth", "scratch_adj_bytes", "scratch_z_bytes",
                         "scratch_ps_bytes", "value_bytes", "write_readback_latency"});
    if (j.contains("n_vpe")) proc.n_vpe = j.at("n_vpe").get<Index>();
    if (j.contains("n_pe")) proc.n_pe = j.at("n_pe").get<Index>();
    if (j.contains("queue_depth")) proc.queue_depth = j.at("queue_depth").get<Index>();
    if (j.contains("scratch_adj_bytes"))
        proc.scratch_adj_bytes = j.at("scratch_adj_bytes").get<std::uint64_t>();
    if (j.contains("scratch_z_bytes"))
        proc.scratch_z_bytes = j.at("scratch_z_bytes").get<std::uint64_t>();
    if (j.contains("scratch_ps_bytes"))
        proc.scratch_ps_bytes = j.at("scratch_ps_bytes").get<std::uint64_t>();
    if (j.contains("value_bytes")) proc.value_bytes = j.at("value_bytes").get<Index>();
    if (j.contains("write_readback_latency"))
        proc.write_readback_latency = j.at("write_readback_latency").get<std::uint32_t>();
}

void cache_from_json(const json& j, CacheConfig& mem) {
    reject_unknown_keys(j, "cache", {"capacity_bytes", "line_bytes", "associativity",
                                     "hit_latency", "dram_latency"});
    if (j.contains("capacity_bytes"))
        mem.capacity_bytes = j.at("capacity_bytes").get<std::uint64_t>();
    if (j.contains("line_bytes")) mem.line_bytes = j.at("line_bytes").get<std::uint32_t>();
    if (j.contains("associativity"))
        mem.associativity = j.at("associativity").get<std::uint32_t>();
    if (j.contains("hit_latency")) mem.hit_latency = j.at("hit_latency").get<std::uint32_t>();
    if (j.contains("dram_latency")) mem.dram_latency = j.at("dram_latency").get<std::uint32_t>();
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) bad_config("config: cannot open " + path);
    json j;
    try {
        j = json::parse(is);
    } catch (const json::parse_error& e) {
        bad_config("config: " + std::string(e.what()));
    }
    if (!j.is_object()) bad_config("config: top level must be an object");
    reject_unknown_keys(j, "config", {"graph", "formats", "feature_dim", "seeds", "sweep",
                                      "sweep_values", "output", "processor", "cache"});
    ExperimentConfig cfg;
    try {
        if (j.contains("graph")) cfg.graph = graph_from_json(j.at("graph"));
        if (j.contains("formats")) {
            cfg.formats.clear();
            for (const auto& f : j.at("formats"))
                cfg.formats.push_back(parse_format(f.get<std::string>()));
        }
        if (j.contains("feature_dim")) cfg.feature_dim = j.at("feature_dim").get<Index>();
        if (j.contains("seeds")) {
            cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
        }
        if (j.contains("sweep")) cfg.sweep = axis_from_json(j.at("sweep").get<std::string>());
        if (j.contains("sweep_values"))
            cfg.sweep_values = j.at("sweep_values").get<std::vector<std::uint64_t>>();
        if (j.contains("output")) cfg.output_path = j.at("output").get<std::string>();
        if (j.contains("processor")) proc_from_json(j.at("processor"), cfg.proc);
        if (j.contains("cache")) cache_from_json(j.at("cache"), cfg.mem);
    } catch (const json::exception& e) {
        bad_config("config: " + std::string(e.what()));
    }
    return cfg;
}

}  // namespace scv
