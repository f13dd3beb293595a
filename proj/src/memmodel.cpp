#include "scv/memmodel.hpp"

#include <algorithm>
#include <iomanip>
#include <stdexcept>

namespace scv {

void dump_trace_csv(const MemTrace& trace, std::ostream& out) {
    out << "cycle,addr_hex,rw,size\n";
    for (const MemAccess& a : trace.accesses)
        out << a.cycle << ',' << std::hex << a.addr << std::dec << ','
            << (a.write ? 'W' : 'R') << ',' << a.size << '\n';
}

double CacheStats::mean_access_time(const CacheConfig& cfg) const {
    if (accesses == 0) return cfg.hit_latency;
    return (static_cast<double>(hits) * cfg.hit_latency +
            static_cast<double>(misses) * cfg.dram_latency) /
           static_cast<double>(accesses);
}

CacheModel::CacheModel(const CacheConfig& cfg) : cfg_(cfg) {
    if (cfg.line_bytes == 0 || cfg.capacity_bytes == 0)
        throw std::invalid_argument("cache: zero capacity or line size");
    const std::uint64_t n_lines = cfg.capacity_bytes / cfg.line_bytes;
    ways_ = cfg.associativity == 0 ? static_cast<std::uint32_t>(n_lines) : cfg.associativity;
    if (n_lines == 0 || n_lines % ways_ != 0)
        throw std::invalid_argument("cache: capacity not divisible by line size * ways");
    n_sets_ = n_lines / ways_;
    lines_.resize(n_lines);
}

bool CacheModel::access(std::uint64_t addr, std::uint32_t size, bool write) {
    stats_.accesses++;
    const std::uint64_t first = addr / cfg_.line_bytes;
    const std::uint64_t last = (addr + std::max<std::uint32_t>(size, 1) - 1) / cfg_.line_bytes;
    bool all_hit = true;
    for (std::uint64_t line = first; line <= last; ++line) {
        const std::uint64_t set = line % n_sets_;
        Line* base = lines_.data() + set * ways_;
        Line* found = nullptr;
        for (std::uint32_t w = 0; w < ways_; ++w)
            if (base[w].valid && base[w].tag == line) {
                found = base + w;
                break;
            }
        if (!found) {
            all_hit = false;
            stats_.line_fills++;
            // Prefer an invalid way, else evict the least recently used.
            Line* victim = base;
            for (std::uint32_t w = 0; w < ways_; ++w) {
                if (!base[w].valid) {
                    victim = base + w;
                    break;
                }
                if (base[w].stamp < victim->stamp) victim = base + w;
            }
            if (victim->valid && victim->dirty) stats_.writebacks++;
            victim->valid = true;
            victim->dirty = false;
            victim->tag = line;
            found = victim;
        }
        found->stamp = ++tick_;
        if (write) found->dirty = true;
    }
    if (all_hit)
        stats_.hits++;
    else
        stats_.misses++;
    return all_hit;
}

void CacheModel::flush() {
    for (Line& l : lines_) {
        if (l.valid && l.dirty) stats_.writebacks++;
        l.valid = false;
        l.dirty = false;
    }
}

CacheStats replay(const MemTrace& trace, const CacheConfig& cfg) {
    CacheModel model(cfg);
    for (const MemAccess& a : trace.accesses) model.access(a.addr, a.size, a.write);
    model.flush();
    return model.stats();
}

}  // namespace scv
