#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "scv/formats.hpp"
#include "scv/memmodel.hpp"
#include "scv/schedule.hpp"
#include "scv/simulator.hpp"

namespace scv {

/// Storage layout or scan strategy under benchmark.
enum class BenchKind : std::uint8_t { Csr, Csc, Bcsr, Scv, Mp };

/// One benchmarked configuration, parsed from a spec string:
///   csr | csc | mp | bcsr:<block> | scv:<height>[x<width>] | scvz:<height>[x<width>]
/// scvz selects the z-curve tile visit order; scv visits tiles row-major.
struct BenchFormat {
    std::string name;  // canonical spec string
    BenchKind kind = BenchKind::Csr;
    Index block_size = 16;                  // bcsr
    Index vec_height = 256;                 // scv
    Index tile_width = 1;                   // scv
    OrderKind order = OrderKind::RowMajor;  // scv
};

/// Throws std::invalid_argument on an unknown name or malformed parameters.
BenchFormat parse_format(const std::string& spec);

/// Where the adjacency matrix comes from. File kinds reuse one matrix across
/// seeds (seeds then only vary the feature matrix); the generator kind builds
/// a fresh graph per seed.
struct GraphSource {
    enum class Kind : std::uint8_t { Rmat, MatrixMarket, EdgeList, Container };
    Kind kind = Kind::Rmat;
    std::string path;     // file kinds
    bool directed = true;  // edge lists
    Index n = 4096;       // generator kind
    std::uint64_t nnz = 16384;
    double a = 0.57, b = 0.19, c = 0.19, d = 0.05;
};

CooMatrix realize_graph(const GraphSource& src, std::uint64_t seed);

enum class SweepAxis : std::uint8_t { None, ScvHeight, TileWidth, Processors };

/// Legal sweep points per axis, all powers of two: heights 128..2048, tile
/// widths 1..64, processor counts 2..64.
std::vector<std::uint64_t> default_sweep_values(SweepAxis axis);

struct ExperimentConfig {
    GraphSource graph;
    std::vector<BenchFormat> formats;  // first entry is the speedup baseline
    Index feature_dim = 128;
    ProcessorConfig proc;
    CacheConfig mem;
    SweepAxis sweep = SweepAxis::None;
    std::vector<std::uint64_t> sweep_values;  // empty selects the full axis range
    std::vector<std::uint64_t> seeds = {1};
    std::string output_path = "results.csv";
};

/// Reads the declarative JSON config. Unknown keys are rejected so configs
/// stay reproducible across versions. See README for the schema.
ExperimentConfig load_config(const std::string& path);

/// Throws std::invalid_argument with an explanation when the config cannot
/// run: empty formats or seeds, sweep values off the axis grid, processor
/// sweeps over non-vector formats, or scratch budgets the height sweep's
/// memory rule cannot satisfy.
void validate(const ExperimentConfig& cfg);

/// Memory rule for the height sweep: the feature-row segment must hold one
/// vec_height-column span of input rows, and the partial-sum segment absorbs
/// the difference so scratch_z + scratch_ps stays unchanged. Throws when the
/// remainder drops below one output segment.
ProcessorConfig iso_memory_scratch(const ProcessorConfig& base, Index vec_height,
                                   Index feature_dim);

/// Builds the work-item schedule a format family feeds the processor.
/// Multipass capacities derive from the scratch budgets in whole rows.
Schedule make_schedule(const BenchFormat& f, const CooMatrix& m, Index feature_dim,
                       const ProcessorConfig& proc);

/// One benchmark cell: a format run at one sweep point under one seed.
struct ResultRow {
    std::string format;
    std::uint64_t sweep_value = 0;  // 0 when no axis is swept
    std::uint64_t seed = 0;
    Index n_nodes = 0;
    std::uint64_t nnz = 0;
    Index feature_dim = 0;
    std::uint64_t cycles = 0;
    std::uint64_t idle_cycles = 0;
    std::uint64_t stall_cycles = 0;
    std::uint64_t scratch_traffic = 0;  // scratchpad reads + writes
    std::uint64_t cache_misses = 0;
    std::uint64_t dram_bytes = 0;
    double mat = 0.0;  // mean access time fed back into the timed pass
    std::uint64_t mac_ops = 0;
    std::uint64_t padding_mac_ops = 0;
    double speedup = 1.0;  // baseline-format cycles / this row's cycles
};

/// Runs every (format, sweep point, seed) cell and fills speedups against the
/// first declared format at the same sweep point and seed. Rows come back
/// sorted by that cell key. Deterministic for a fixed config.
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg);

/// Writes the documented CSV: a fixed header, one line per row, then one
/// geometric-mean summary line per (format, sweep point) group with `geomean`
/// in the seed column. Throws std::invalid_argument on an empty table.
void emit_csv(const std::vector<ResultRow>& rows, std::ostream& os);
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);

/// Renders cycle counts as a static SVG: grouped bars when nothing is swept,
/// one line per format across sweep values otherwise.
std::string render_plot_svg(const std::vector<ResultRow>& rows);
void emit_plot(const std::vector<ResultRow>& rows, const std::string& path);

/// Cross-format equivalence check result for one format.
struct VerifyCell {
    std::string format;
    double max_abs_dev = 0.0;
    Index row = 0;  // argmax location of the deviation
    Index col = 0;
    bool pass = false;  // exact agreement required
};

struct VerifyReport {
    bool pass = false;
    std::vector<VerifyCell> cells;
};

/// Compares both the in-order schedule execution and the simulated datapath
/// against the reference triplet product. Integer-valued features keep sums
/// order-independent, so any deviation is a real defect.
VerifyCell verify_schedule(const std::string& name, const CooMatrix& a, const Schedule& s,
                           const DenseMatrix& z, const ProcessorConfig& proc);

/// Runs verify_schedule for every format on seed-generated integer features.
VerifyReport verify_formats(const CooMatrix& a, Index feature_dim,
                            const std::vector<BenchFormat>& formats,
                            const ProcessorConfig& proc, std::uint64_t seed = 1);

}  // namespace scv
