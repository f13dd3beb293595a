#include "scv/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <list>
#include <stdexcept>
#include <unordered_map>

namespace scv {

Mitigation resolve_same_queue_hazard(std::uint64_t gap) {
    if (gap == 0) throw std::logic_error("same-queue gap of zero cannot occur");
    if (gap == 1) return Mitigation::Accum;
    if (gap == 2) return Mitigation::Forward;
    return Mitigation::None;
}

BankVerdict scratchpad_access(char kind, const std::vector<PortRequest>& requests, Index n_vpe) {
    if (n_vpe == 0) throw std::invalid_argument("scratchpad_access: zero VPEs");
    const bool output_partition = kind == 'C' || kind == 'c';
    const Index n_banks = output_partition ? n_vpe : (n_vpe + 3) / 4;
    const std::uint32_t read_ports = output_partition ? 2 : 4;
    const std::uint32_t write_ports = output_partition ? 2 : 0;

    std::vector<std::uint32_t> reads(n_banks, 0), writes(n_banks, 0);
    std::unordered_map<std::uint64_t, bool> broadcast;  // address already on a port
    BankVerdict verdict;
    for (const PortRequest& r : requests) {
        const Index bank = static_cast<Index>(r.addr % n_banks);
        if (r.write) {
            if (!output_partition || writes[bank] >= write_ports) {
                verdict.conflicts++;
                verdict.stalled_vpes.push_back(r.vpe);
                continue;
            }
            writes[bank]++;
            continue;
        }
        if (!output_partition && broadcast.count(r.addr)) continue;  // shared port
        if (reads[bank] >= read_ports) {
            verdict.conflicts++;
            verdict.stalled_vpes.push_back(r.vpe);
            continue;
        }
        reads[bank]++;
        if (!output_partition) broadcast[r.addr] = true;
    }
    return verdict;
}

namespace {

constexpr std::uint64_t kAdjChunk = 4096;
constexpr Index kNoQueue = ~Index{0};

std::uint64_t pack(Index row, Index seg) {
    return (static_cast<std::uint64_t>(row) << 32) | seg;
}

/// Byte-accounted (row, segment) store with LRU eviction, pinning, and
/// per-entry ready cycles. Pinned entries are never evicted.
class SegStore {
public:
    explicit SegStore(std::uint64_t capacity) : capacity_(capacity) {}

    bool resident(std::uint64_t key) const { return map_.count(key) != 0; }

    std::uint64_t ready_at(std::uint64_t key) const { return map_.at(key)->ready; }

    void touch(std::uint64_t key) {
        auto it = map_.find(key);
        lru_.splice(lru_.end(), lru_, it->second);
    }

    void pin(std::uint64_t key) { pins_[key]++; }

    void unpin(std::uint64_t key) {
        auto it = pins_.find(key);
        if (it == pins_.end()) return;
        if (--it->second == 0) pins_.erase(it);
    }

    void mark_dirty(std::uint64_t key) {
        auto it = map_.find(key);
        if (it != map_.end()) it->second->dirty = true;
    }

    /// Admits key, evicting unpinned entries oldest-first until it fits.
    /// Returns false (state unchanged) when pinned entries block the space.
    /// Evicted dirty entries are appended to out as (key, bytes).
    bool insert(std::uint64_t key, std::uint32_t bytes, std::uint64_t ready, bool dirty,
                std::vector<std::pair<std::uint64_t, std::uint32_t>>* out) {
        if (resident(key)) {
            touch(key);
            return true;
        }
        if (bytes > capacity_) return false;
        std::vector<std::list<Entry>::iterator> victims;
        std::uint64_t freed = 0;
        for (auto it = lru_.begin(); used_ + bytes - freed > capacity_ && it != lru_.end(); ++it) {
            if (pins_.count(it->key)) continue;
            victims.push_back(it);
            freed += it->bytes;
        }
        if (used_ + bytes - freed > capacity_) return false;
        for (auto it : victims) {
            if (it->dirty && out) out->emplace_back(it->key, it->bytes);
            used_ -= it->bytes;
            map_.erase(it->key);
            lru_.erase(it);
        }
        lru_.push_back(Entry{key, bytes, ready, dirty});
        map_[key] = std::prev(lru_.end());
        used_ += bytes;
        return true;
    }

    template <class Fn>
    void for_each(Fn fn) const {
        for (const Entry& e : lru_) fn(e.key, e.bytes, e.dirty);
    }

private:
    struct Entry {
        std::uint64_t key;
        std::uint32_t bytes;
        std::uint64_t ready;
        bool dirty;
    };

    std::uint64_t capacity_;
    std::uint64_t used_ = 0;
    std::list<Entry> lru_;
    std::unordered_map<std::uint64_t, std::list<Entry>::iterator> map_;
    std::unordered_map<std::uint64_t, std::uint32_t> pins_;
};

struct QOp {
    double value = 0.0;
    Index a_row = 0;
    Index a_col = 0;
    Index seg = 0;
    std::uint64_t item_idx = 0;
    std::uint64_t opseq = 0;
    bool padding = false;
    bool filler = false;  // padding outside the matrix: no operands at all
    bool mem_checked = false;
    bool cross_logged = false;
    std::uint64_t ready_at = 0;
};

struct AddrState {
    std::deque<std::uint64_t> fifo;  // opseq of in-flight ops, stream order
    Index queue = kNoQueue;
};

std::uint32_t adj_bytes_per_item(FormatKind kind) {
    switch (kind) {
        case FormatKind::Bcsr:
            return 8;  // dense payload; block coordinates amortized
        case FormatKind::Scv:
            return 10;  // value plus intra-vector offset; pointers amortized
        default:
            return 12;  // value plus explicit index
    }
}

}  // namespace

SimResult simulate(const Schedule& s, const DenseMatrix& z, const ProcessorConfig& cfg,
                   const SimOptions& opt) {
    if (cfg.n_vpe == 0 || cfg.n_pe == 0 || cfg.queue_depth == 0 || cfg.value_bytes == 0 ||
        cfg.scratch_adj_bytes == 0 || cfg.scratch_z_bytes == 0 || cfg.scratch_ps_bytes == 0)
        throw std::invalid_argument("simulate: config fields must be positive");
    if (opt.mat < 1) throw std::invalid_argument("simulate: access time below one cycle");
    if (z.n_rows != s.n_cols) throw std::invalid_argument("simulate: schedule and input dims differ");
    const Index F = z.n_cols;
    if (F == 0 && !s.items.empty()) throw std::invalid_argument("simulate: zero feature dim");
    if (static_cast<std::uint64_t>(F) * cfg.value_bytes > cfg.scratch_z_bytes)
        throw std::invalid_argument("simulate: one dense row exceeds the z partition");
    if (static_cast<std::uint64_t>(cfg.n_pe) * cfg.value_bytes > cfg.scratch_ps_bytes)
        throw std::invalid_argument("simulate: one output segment exceeds the ps partition");

    AddressMap amap;
    amap.feature_dim = F;
    amap.n_pe = cfg.n_pe;
    amap.value_bytes = cfg.value_bytes;
    const Index n_segs = s.items.empty() ? 0 : amap.n_segs();
    const bool mp = !s.stream_pos.empty();
    const std::uint32_t bpi = adj_bytes_per_item(s.kind);
    const std::uint64_t total_adj_bytes =
        (mp ? s.scanned_items : static_cast<std::uint64_t>(s.items.size())) * bpi;

    SimResult res;
    res.output = DenseMatrix(s.n_rows, F);
    SimStats& st = res.stats;

    std::vector<std::deque<QOp>> queues(cfg.n_vpe);
    std::unordered_map<std::uint64_t, AddrState> inflight;
    std::unordered_map<std::uint64_t, std::pair<std::uint64_t, Index>> last_write;
    SegStore z_store(cfg.scratch_z_bytes), ps_store(cfg.scratch_ps_bytes);
    std::vector<char> ps_touched(static_cast<std::size_t>(s.n_rows) * n_segs, 0);
    std::vector<char> group_requested(s.n_groups(), 0);
    std::unordered_map<Index, std::uint64_t> z_row_ready, ps_row_ready;  // multipass rows
    std::vector<std::pair<std::uint64_t, std::uint32_t>> evicted;

    const std::uint64_t seg_stride = static_cast<std::uint64_t>(cfg.n_pe) * cfg.value_bytes;
    const std::uint64_t row_bytes = amap.row_bytes();
    const Index n_ab_banks = (cfg.n_vpe + 3) / 4;

    std::uint64_t cycle = 0;
    std::uint64_t next_item = 0;
    Index next_seg = 0;
    std::size_t g_cursor = 0;
    Index rr = 0;
    std::uint64_t adj_chunks = 0;
    std::size_t next_ev = 0;
    std::uint64_t ev_prev_issue = 0;
    std::uint64_t quiet_cycles = 0;
    const std::uint64_t quiet_limit = (mp ? s.scanned_items : s.items.size()) +
                                      10ull * opt.mat +
                                      static_cast<std::uint64_t>(cfg.queue_depth) * cfg.n_vpe + 1000;

    auto consume_adj = [&](std::uint64_t consumed, std::uint64_t now) {
        while (adj_chunks * kAdjChunk < consumed) {
            const std::uint64_t start = adj_chunks * kAdjChunk;
            res.trace.record(now, amap.adj_addr(start), false,
                             static_cast<std::uint32_t>(
                                 std::min<std::uint64_t>(kAdjChunk, total_adj_bytes - start)));
            adj_chunks++;
        }
    };

    // Requests every missing segment of a group's dense-row footprint; they
    // become ready one access time later, so a group that starts soon after
    // still waits, while a group requested one group ahead usually does not.
    auto request_group = [&](std::size_t g, std::uint64_t now) {
        if (g >= s.n_groups() || group_requested[g]) return;
        group_requested[g] = 1;
        const GroupInfo& gi = s.groups[g];
        if (gi.z_count == 0) return;
        const Index z_end = static_cast<Index>(
            std::min<std::uint64_t>(static_cast<std::uint64_t>(gi.z_first) + gi.z_count, s.n_cols));
        for (Index r = gi.z_first; r < z_end; ++r)
            for (Index seg = 0; seg < n_segs; ++seg) {
                const std::uint64_t key = pack(r, seg);
                if (z_store.resident(key)) {
                    z_store.touch(key);
                    continue;
                }
                res.trace.record(now, amap.z_row_addr(r) + seg * seg_stride, false,
                                 amap.seg_bytes(seg));
                st.prefetch_requests++;
                z_store.insert(key, amap.seg_bytes(seg), now + opt.mat, false, nullptr);
            }
    };

    // Issues pending multipass transfers whose scan position the stream has
    // reached. Loads complete one access time after their paced issue point.
    auto issue_events = [&](std::uint64_t visit_limit, std::uint64_t now) {
        while (next_ev < s.mp_events.size() && s.mp_events[next_ev].visit_pos <= visit_limit) {
            const MpMemEvent& e = s.mp_events[next_ev];
            const std::uint64_t at = std::max(ev_prev_issue, e.visit_pos / cfg.n_vpe + 1);
            if (at > now) return false;
            const std::uint64_t stamp = std::min(now, std::max(at, cycle));
            if (e.kind == MpEventKind::ZLoad) {
                res.trace.record(stamp, amap.z_row_addr(e.row), false,
                                 static_cast<std::uint32_t>(row_bytes));
                z_row_ready[e.row] = at + opt.mat;
                st.miss_requests++;
            } else if (e.kind == MpEventKind::PsLoad) {
                res.trace.record(stamp, amap.ps_seg_addr(e.row, 0), false,
                                 static_cast<std::uint32_t>(row_bytes));
                ps_row_ready[e.row] = at + opt.mat;
                st.miss_requests++;
            } else {
                res.trace.record(stamp, amap.ps_seg_addr(e.row, 0), true,
                                 static_cast<std::uint32_t>(row_bytes));
            }
            ev_prev_issue = at;
            next_ev++;
        }
        return true;
    };

    const auto stream_done = [&] { return next_item >= s.items.size(); };
    const auto queues_empty = [&] {
        for (const auto& q : queues)
            if (!q.empty()) return false;
        return true;
    };

    while (!(stream_done() && queues_empty())) {
        ++cycle;
        bool progressed = false;

        // ---- Arbiter phase: place ops in stream order, one per queue per cycle.
        std::vector<char> accepted(cfg.n_vpe, 0);
        while (!stream_done()) {
            const WorkItem& it = s.items[next_item];
            if (mp) {
                const std::uint64_t pos = s.stream_pos[next_item];
                if (cycle < pos / cfg.n_vpe + 1) break;  // scan pacing
                if (!opt.warm && !issue_events(pos, cycle)) break;
            } else if (!opt.warm && next_seg == 0) {
                while (g_cursor + 1 < s.group_ptr.size() && next_item >= s.group_ptr[g_cursor + 1])
                    g_cursor++;
                if (next_item == s.group_ptr[g_cursor]) {
                    request_group(g_cursor, cycle);
                    if (s.kind == FormatKind::Scv) request_group(g_cursor + 1, cycle);
                }
            }

            const bool filler = it.padding && (it.a_row >= s.n_rows || it.a_col >= s.n_cols);
            const std::uint64_t caddr = filler ? 0 : pack(it.a_row, next_seg);
            AddrState* as = nullptr;
            Index target = kNoQueue;
            bool via_affinity = false;
            if (!filler) {
                as = &inflight[caddr];
                if (!as->fifo.empty()) {
                    target = as->queue;
                    via_affinity = true;
                }
            }
            if (via_affinity) {
                if (queues[target].size() >= cfg.queue_depth) {
                    st.issue_stalls++;
                    break;
                }
                if (accepted[target]) break;  // waits for its turn, in order
            } else {
                std::size_t best_len = ~std::size_t{0};
                std::uint32_t n_best = 0;
                for (Index q = 0; q < cfg.n_vpe; ++q) {
                    if (accepted[q] || queues[q].size() >= cfg.queue_depth) continue;
                    if (queues[q].size() < best_len) {
                        best_len = queues[q].size();
                        target = q;
                        n_best = 1;
                    } else if (queues[q].size() == best_len) {
                        n_best++;
                    }
                }
                if (target == kNoQueue) break;  // every queue busy or full
                if (n_best > 1) {
                    for (Index i = 0; i < cfg.n_vpe; ++i) {
                        const Index q = (rr + i) % cfg.n_vpe;
                        if (!accepted[q] && queues[q].size() == best_len) {
                            target = q;
                            break;
                        }
                    }
                    rr = (target + 1) % cfg.n_vpe;
                }
            }

            QOp op;
            op.value = it.a_value;
            op.a_row = it.a_row;
            op.a_col = it.a_col;
            op.seg = next_seg;
            op.item_idx = next_item;
            op.opseq = next_item * n_segs + next_seg;
            op.padding = it.padding;
            op.filler = filler;
            queues[target].push_back(op);
            accepted[target] = 1;
            progressed = true;
            if (!filler) {
                as->queue = target;
                as->fifo.push_back(op.opseq);
                if (via_affinity)
                    res.hazards.push_back(
                        HazardEvent{HazardKind::CrossQueueSameVpe, cycle, target, caddr});
                if (!opt.warm && !mp) {
                    z_store.pin(pack(it.a_col, next_seg));
                    ps_store.pin(caddr);
                }
            }
            if (!opt.warm && next_seg == 0) {
                const std::uint64_t consumed =
                    (mp ? s.stream_pos[next_item] + 1 : next_item + 1) * bpi;
                consume_adj(consumed, cycle);
            }
            next_seg++;
            if (next_seg == n_segs) {
                next_seg = 0;
                next_item++;
            }
        }

        // ---- Execute phase A: find each VPE's ready head op.
        enum class VOut : char { Empty, Stalled, Exec };
        std::vector<VOut> outcome(cfg.n_vpe, VOut::Empty);
        struct Cand {
            Index vpe;
            QOp* op;
            Mitigation mit;
        };
        std::vector<Cand> cands;
        for (Index v = 0; v < cfg.n_vpe; ++v) {
            if (queues[v].empty()) continue;
            outcome[v] = VOut::Stalled;
            QOp& op = queues[v].front();
            if (!op.mem_checked) {
                op.mem_checked = true;
                op.ready_at = cycle;
                if (!opt.warm && !op.filler) {
                    std::uint64_t wait = 0;
                    if (mp) {
                        auto zi = z_row_ready.find(op.a_col);
                        if (zi != z_row_ready.end() && zi->second > cycle)
                            wait = std::max(wait, zi->second - cycle);
                        auto pi = ps_row_ready.find(op.a_row);
                        if (pi != ps_row_ready.end() && pi->second > cycle)
                            wait = std::max(wait, pi->second - cycle);
                    } else {
                        const std::uint64_t zk = pack(op.a_col, op.seg);
                        if (z_store.resident(zk)) {
                            if (z_store.ready_at(zk) > cycle)
                                wait = std::max(wait, z_store.ready_at(zk) - cycle);
                            z_store.touch(zk);
                        } else {
                            res.trace.record(cycle, amap.z_row_addr(op.a_col) + op.seg * seg_stride,
                                             false, amap.seg_bytes(op.seg));
                            st.miss_requests++;
                            z_store.insert(zk, amap.seg_bytes(op.seg), cycle + opt.mat, false,
                                           nullptr);
                            wait = std::max<std::uint64_t>(wait, opt.mat);
                        }
                        const std::uint64_t ck = pack(op.a_row, op.seg);
                        const std::size_t vidx =
                            static_cast<std::size_t>(op.a_row) * n_segs + op.seg;
                        evicted.clear();
                        if (ps_store.resident(ck)) {
                            if (ps_store.ready_at(ck) > cycle)
                                wait = std::max(wait, ps_store.ready_at(ck) - cycle);
                            ps_store.touch(ck);
                        } else if (!ps_touched[vidx]) {
                            ps_touched[vidx] = 1;  // fresh output segment: zeros, no read
                            ps_store.insert(ck, amap.seg_bytes(op.seg), cycle, true, &evicted);
                        } else {
                            res.trace.record(cycle, amap.ps_seg_addr(op.a_row, op.seg), false,
                                             amap.seg_bytes(op.seg));
                            st.miss_requests++;
                            ps_store.insert(ck, amap.seg_bytes(op.seg), cycle + opt.mat, true,
                                            &evicted);
                            wait = std::max<std::uint64_t>(wait, opt.mat);
                        }
                        for (const auto& [vk, vb] : evicted)
                            res.trace.record(cycle, amap.ps_seg_addr(
                                                        static_cast<Index>(vk >> 32),
                                                        static_cast<Index>(vk & 0xffffffffu)),
                                             true, vb);
                    }
                    op.ready_at = cycle + wait;
                }
            }
            if (cycle < op.ready_at) continue;  // memory stall
            Mitigation mit = Mitigation::None;
            if (!op.filler) {
                const std::uint64_t caddr = pack(op.a_row, op.seg);
                auto& as = inflight[caddr];
                if (as.fifo.front() != op.opseq) {  // an earlier op elsewhere must go first
                    if (!op.cross_logged) {
                        op.cross_logged = true;
                        st.cross_stalls++;
                        res.hazards.push_back(HazardEvent{HazardKind::Stall, cycle, v, caddr});
                    }
                    continue;
                }
                auto lw = last_write.find(caddr);
                if (lw != last_write.end()) {
                    const std::uint64_t gap = cycle - lw->second.first;
                    if (lw->second.second != v) {
                        if (gap <= cfg.write_readback_latency) {
                            if (!op.cross_logged) {
                                op.cross_logged = true;
                                st.cross_stalls++;
                                res.hazards.push_back(
                                    HazardEvent{HazardKind::Stall, cycle, v, caddr});
                            }
                            continue;
                        }
                    } else {
                        mit = resolve_same_queue_hazard(gap);
                    }
                }
            }
            cands.push_back(Cand{v, &op, mit});
        }

        // ---- Execute phase B: bank ports, then commit in VPE order.
        std::vector<std::uint32_t> a_reads(n_ab_banks, 0), b_reads(n_ab_banks, 0);
        std::vector<std::uint32_t> c_reads(cfg.n_vpe, 0), c_writes(cfg.n_vpe, 0);
        std::unordered_map<std::uint64_t, char> a_granted, b_granted;
        bool any_exec = false;
        for (const Cand& c : cands) {
            QOp& op = *c.op;
            if (!op.filler) {
                const std::uint64_t akey = op.item_idx;
                const std::uint64_t bkey = pack(op.a_col, op.seg);
                const Index abank = static_cast<Index>(akey % n_ab_banks);
                const Index bbank = static_cast<Index>(op.a_col % n_ab_banks);
                const Index cbank = static_cast<Index>(op.a_row % cfg.n_vpe);
                const bool need_a = !a_granted.count(akey);
                const bool need_b = !b_granted.count(bkey);
                const bool need_c_read = c.mit == Mitigation::None;
                if ((need_a && a_reads[abank] >= 4) || (need_b && b_reads[bbank] >= 4) ||
                    (need_c_read && c_reads[cbank] >= 2) || c_writes[cbank] >= 2) {
                    st.bank_conflicts++;
                    continue;  // outcome stays Stalled
                }
                if (need_a) {
                    a_reads[abank]++;
                    a_granted[akey] = 1;
                }
                if (need_b) {
                    b_reads[bbank]++;
                    b_granted[bkey] = 1;
                }
                if (need_c_read) c_reads[cbank]++;
                c_writes[cbank]++;

                const std::uint64_t caddr = pack(op.a_row, op.seg);
                last_write[caddr] = {cycle, c.vpe};
                auto fit = inflight.find(caddr);
                fit->second.fifo.pop_front();
                if (fit->second.fifo.empty()) inflight.erase(fit);
                if (c.mit == Mitigation::Accum) {
                    st.accum_rewrites++;
                    res.hazards.push_back(
                        HazardEvent{HazardKind::SameQueue1CycleAccum, cycle, c.vpe, caddr});
                } else if (c.mit == Mitigation::Forward) {
                    st.forwards++;
                    res.hazards.push_back(
                        HazardEvent{HazardKind::SameQueue2CycleForward, cycle, c.vpe, caddr});
                }
                if (!opt.warm && !mp) {
                    z_store.unpin(bkey);
                    ps_store.unpin(caddr);
                    if (ps_store.resident(caddr))
                        ps_store.mark_dirty(caddr);
                    else  // squeezed out before the write landed: write through
                        res.trace.record(cycle, amap.ps_seg_addr(op.a_row, op.seg), true,
                                         amap.seg_bytes(op.seg));
                }
                if (!op.padding) {
                    const Index f_lo = op.seg * cfg.n_pe;
                    const Index f_hi = std::min<Index>(f_lo + cfg.n_pe, F);
                    const double* zr = z.row(op.a_col);
                    double* o = res.output.row(op.a_row);
                    for (Index f = f_lo; f < f_hi; ++f) o[f] += op.value * zr[f];
                }
                st.scratch_reads += c.mit == Mitigation::None ? 3 : 2;
                st.scratch_writes += 1;
                if (opt.collect_events)
                    res.events.push_back(OpEvent{
                        cycle, c.vpe, caddr,
                        c.mit == Mitigation::Accum ? VpeCommand::VecMulAcc : VpeCommand::VecMulAdd,
                        c.mit == Mitigation::Forward});
            }
            st.vector_ops++;
            st.mac_ops += cfg.n_pe;
            if (op.padding) st.padding_mac_ops += cfg.n_pe;
            queues[c.vpe].pop_front();
            outcome[c.vpe] = VOut::Exec;
            any_exec = true;
            progressed = true;
        }

        for (Index v = 0; v < cfg.n_vpe; ++v) {
            if (outcome[v] == VOut::Exec) continue;
            st.idle_cycles++;
            if (outcome[v] == VOut::Stalled) st.stall_cycles++;
        }
        if (any_exec) st.compute_cycles++;
        quiet_cycles = progressed ? 0 : quiet_cycles + 1;
        if (quiet_cycles > quiet_limit)
            throw std::logic_error("simulate: no forward progress; model deadlock");
    }

    if (!opt.warm) {
        if (mp) {
            issue_events(s.scanned_items, ~std::uint64_t{0});  // final flush transfers
        } else {
            ps_store.for_each([&](std::uint64_t key, std::uint32_t bytes, bool dirty) {
                if (dirty)
                    res.trace.record(cycle,
                                     amap.ps_seg_addr(static_cast<Index>(key >> 32),
                                                      static_cast<Index>(key & 0xffffffffu)),
                                     true, bytes);
            });
        }
        consume_adj(total_adj_bytes, cycle);
    }
    st.cycles = mp ? std::max(cycle, ev_prev_issue) : cycle;
    return res;
}

AggregateResult run_aggregation(const Schedule& s, const DenseMatrix& z,
                                const ProcessorConfig& cfg, const CacheConfig& mem,
                                bool collect_events) {
    SimOptions probe;
    probe.mat = mem.hit_latency;
    const SimResult first = simulate(s, z, cfg, probe);
    const double mean = replay(first.trace, mem).mean_access_time(mem);

    SimOptions timed;
    timed.mat = std::max<std::uint32_t>(mem.hit_latency,
                                        static_cast<std::uint32_t>(std::ceil(mean)));
    timed.collect_events = collect_events;
    SimResult second = simulate(s, z, cfg, timed);

    AggregateResult out;
    out.cache = replay(second.trace, mem);
    out.mean_access_time = out.cache.mean_access_time(mem);
    out.mat = timed.mat;
    out.stats = second.stats;
    out.output = std::move(second.output);
    out.events = std::move(second.events);
    return out;
}

std::vector<std::string> audit_hazards(const std::vector<OpEvent>& events,
                                       const ProcessorConfig& cfg) {
    // Reads happen in the same op as the write they feed, so checking the
    // write-to-write spacing per address covers the read-back rule too.
    std::vector<std::string> violations;
    std::unordered_map<std::uint64_t, OpEvent> last;
    for (const OpEvent& e : events) {
        auto it = last.find(e.c_addr);
        if (it != last.end()) {
            const OpEvent& p = it->second;
            const std::uint64_t gap = e.cycle - p.cycle;
            const std::string where = "address " + std::to_string(e.c_addr) + " at cycle " +
                                      std::to_string(e.cycle);
            if (p.vpe != e.vpe) {
                if (gap <= cfg.write_readback_latency)
                    violations.push_back("cross-VPE writes only " + std::to_string(gap) +
                                         " cycles apart: " + where);
            } else if (gap == 0) {
                violations.push_back("two writes in one cycle: " + where);
            } else if (gap == 1 && e.opcode != VpeCommand::VecMulAcc) {
                violations.push_back("1-cycle gap without accumulate rewrite: " + where);
            } else if (gap == 2 && !e.forward) {
                violations.push_back("2-cycle gap without forward: " + where);
            }
        }
        last[e.c_addr] = e;
    }
    return violations;
}

}  // namespace scv
