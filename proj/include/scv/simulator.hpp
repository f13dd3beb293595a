#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scv/memmodel.hpp"
#include "scv/schedule.hpp"
#include "scv/types.hpp"

namespace scv {

/// Queue-based vector processor: n_vpe execution queues, each feeding a VPE of
/// n_pe lanes, with split scratchpads for the adjacency stream (A), the dense
/// input rows (B), and the partial-sum output rows (C).
struct ProcessorConfig {
    Index n_vpe = 8;
    Index n_pe = 64;
    Index queue_depth = 16;
    std::uint64_t scratch_adj_bytes = 65536;
    std::uint64_t scratch_z_bytes = 65536;
    std::uint64_t scratch_ps_bytes = 262144;
    Index value_bytes = 8;
    std::uint32_t write_readback_latency = 2;  // cycles before a write is readable
};

enum class VpeCommand : std::uint8_t {
    VecMulAdd,   // C += a * B, reading C from scratch
    VecMulAcc,   // accumulate onto the in-register result (1-cycle hazard rewrite)
    VecAdd,
    VecMul,
    VecMov,
    MemLoadM,
    MemStoreM,
};

enum class HazardKind : std::uint8_t {
    CrossQueueSameVpe,       // conflicting op routed into the writer's queue
    SameQueue1CycleAccum,    // back-to-back write rewritten to VecMulAcc
    SameQueue2CycleForward,  // result forwarded, scratch read skipped
    Stall,                   // no mitigation applied; VPE waited
};

struct HazardEvent {
    HazardKind kind = HazardKind::Stall;
    std::uint64_t cycle = 0;
    Index vpe = 0;
    std::uint64_t addr = 0;  // packed output address: (a_row << 32) | segment
};

/// One executed vector op, enough to audit write-ordering rules offline.
struct OpEvent {
    std::uint64_t cycle = 0;
    Index vpe = 0;
    std::uint64_t c_addr = 0;  // packed output address: (a_row << 32) | segment
    VpeCommand opcode = VpeCommand::VecMulAdd;
    bool forward = false;  // consumed a 2-cycle forward instead of reading C
};

struct SimStats {
    std::uint64_t cycles = 0;          // total cycles until full drain
    std::uint64_t compute_cycles = 0;  // cycles where at least one VPE executed
    std::uint64_t idle_cycles = 0;     // per-VPE sum: empty-queue or stalled cycles
    std::uint64_t stall_cycles = 0;    // per-VPE sum: stalled with work at head
    std::uint64_t issue_stalls = 0;    // arbiter blocked on a full affinity queue
    std::uint64_t vector_ops = 0;
    std::uint64_t mac_ops = 0;          // n_pe per op, padding included
    std::uint64_t padding_mac_ops = 0;  // share of mac_ops from stored zeros
    std::uint64_t scratch_reads = 0;
    std::uint64_t scratch_writes = 0;
    std::uint64_t miss_requests = 0;      // demand segment loads charged to a VPE
    std::uint64_t prefetch_requests = 0;  // segment loads issued ahead per group
    std::uint64_t bank_conflicts = 0;
    std::uint64_t accum_rewrites = 0;
    std::uint64_t forwards = 0;
    std::uint64_t cross_stalls = 0;  // ops that waited on another queue's write
};

struct SimOptions {
    std::uint32_t mat = 1;        // cycles charged per missed row segment
    bool warm = false;            // all operands resident; no memory modeling
    bool collect_events = false;  // keep the per-op event log
};

struct SimResult {
    SimStats stats;
    MemTrace trace;
    DenseMatrix output;  // functional partial sums, exact
    std::vector<HazardEvent> hazards;
    std::vector<OpEvent> events;  // only when collect_events was set
};

/// Cycle-approximate run of a schedule against dense input z. Each work item
/// expands to one vector op per n_pe-wide feature segment. Deterministic.
SimResult simulate(const Schedule& s, const DenseMatrix& z, const ProcessorConfig& cfg,
                   const SimOptions& opt);

enum class Mitigation : std::uint8_t { None, Accum, Forward };

/// Mitigation for two same-queue writes to one address `gap` cycles apart:
/// 1 -> rewrite to VecMulAcc, 2 -> forward, 3 or more -> none needed.
Mitigation resolve_same_queue_hazard(std::uint64_t gap);

struct PortRequest {
    std::uint64_t addr = 0;
    Index vpe = 0;
    bool write = false;
};

struct BankVerdict {
    std::uint64_t conflicts = 0;
    std::vector<Index> stalled_vpes;
};

/// Single-cycle bank arbitration for one scratchpad partition.
/// kind 'A'/'B': ceil(n_vpe/4) banks, 4 read ports each, identical addresses
/// broadcast from one port. kind 'C': n_vpe banks, 2 read + 2 write ports,
/// no broadcast. Requests are granted in ascending VPE order; a request that
/// finds its bank exhausted stalls its VPE for the cycle.
BankVerdict scratchpad_access(char kind, const std::vector<PortRequest>& requests, Index n_vpe);

struct AggregateResult {
    SimStats stats;      // timed pass
    CacheStats cache;    // cache replay of the timed pass trace
    double mean_access_time = 0.0;
    std::uint32_t mat = 1;  // integer access time fed back into the timed pass
    DenseMatrix output;
    std::vector<OpEvent> events;
};

/// Two-phase run: a probe pass traces memory behavior at hit latency, the
/// cache replay of that trace yields the mean access time, and the timed pass
/// reruns the schedule charging that time per missed segment.
AggregateResult run_aggregation(const Schedule& s, const DenseMatrix& z,
                                const ProcessorConfig& cfg, const CacheConfig& mem,
                                bool collect_events = false);

/// Checks an executed-op log against the write-ordering rules: writes to one
/// address from different VPEs must sit at least write_readback_latency+1
/// cycles apart, and closer same-VPE writes must carry the accumulate (gap 1)
/// or forward (gap 2) mitigation. Returns one description per violation.
std::vector<std::string> audit_hazards(const std::vector<OpEvent>& events,
                                       const ProcessorConfig& cfg);

}  // namespace scv
