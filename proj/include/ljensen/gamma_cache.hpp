#pragma once

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "ljensen/central.hpp"

namespace ljensen {

/// Persistent gamma record store: one JSON document per family hash, entries
/// keyed by (n, bits). A stored entry is only reused when both the family
/// hash and the working precision match. Writes are serialized; reads may run
/// concurrently with computation.
class GammaCache {
public:
    explicit GammaCache(std::filesystem::path dir) : dir_(std::move(dir)) {
        std::filesystem::create_directories(dir_);
    }

    std::optional<GammaRecord> get(std::uint64_t family_hash, long n, mpfr_prec_t bits) {
        std::lock_guard<std::mutex> lock(mu_);
        load_locked(family_hash);
        auto& fam = mem_[family_hash];
        auto it = fam.find({n, bits});
        if (it == fam.end()) return std::nullopt;
        return it->second;
    }

    void put(const GammaRecord& rec) {
        std::lock_guard<std::mutex> lock(mu_);
        load_locked(rec.family_hash);
        mem_[rec.family_hash][{rec.n, rec.bits}] = rec;
        save_locked(rec.family_hash);
    }

    void put_many(const std::vector<GammaRecord>& recs) {
        if (recs.empty()) return;
        std::lock_guard<std::mutex> lock(mu_);
        load_locked(recs.front().family_hash);
        for (const auto& r : recs) mem_[r.family_hash][{r.n, r.bits}] = r;
        save_locked(recs.front().family_hash);
    }

    const std::filesystem::path& directory() const { return dir_; }

private:
    static std::string fnv_hex(const std::string& s) {
        std::uint64_t h = 1469598103934665603ULL;
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
        return buf;
    }
    std::filesystem::path file_for(std::uint64_t hash) const {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)hash);
        return dir_ / ("gamma-" + std::string(buf) + ".json");
    }

    void load_locked(std::uint64_t hash) {
        if (loaded_.count(hash)) return;
        loaded_.insert(hash);
        auto path = file_for(hash);
        std::ifstream in(path);
        if (!in) return;
        try {
            nlohmann::json doc = nlohmann::json::parse(in);
            std::string entries = doc.at("entries").dump();
            if (fnv_hex(entries) != doc.at("checksum").get<std::string>())
                throw CacheCorrupt("checksum mismatch in " + path.string());
            for (const auto& e : doc.at("entries")) {
                GammaRecord rec;
                rec.n = e.at("n").get<long>();
                rec.bits = e.at("bits").get<long>();
                rec.family_hash = hash;
                rec.value = BigReal::parse_hex(e.at("value").get<std::string>(), rec.bits);
                rec.error_bound = BigReal::parse_hex(e.at("bound").get<std::string>(), rec.bits);
                mem_[hash][{rec.n, rec.bits}] = rec;
            }
        } catch (const std::exception& ex) {
            std::cerr << "gamma cache: ignoring corrupt file " << path << " (" << ex.what()
                      << "); recomputing\n";
            mem_[hash].clear();
        }
    }

    void save_locked(std::uint64_t hash) {
        nlohmann::json entries = nlohmann::json::array();
        for (const auto& [key, rec] : mem_[hash]) {
            entries.push_back({{"n", rec.n},
                               {"bits", (long)rec.bits},
                               {"value", rec.value.hex()},
                               {"bound", rec.error_bound.hex()}});
        }
        nlohmann::json doc;
        doc["entries"] = entries;
        doc["checksum"] = fnv_hex(entries.dump());
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)hash);
        doc["family_hash"] = std::string(buf);
        std::ofstream out(file_for(hash));
        out << doc.dump(1) << "\n";
    }

    std::filesystem::path dir_;
    std::mutex mu_;
    std::map<std::uint64_t, std::map<std::pair<long, mpfr_prec_t>, GammaRecord>> mem_;
    std::set<std::uint64_t> loaded_;
};

/// gamma(n) for n in [n_lo, n_hi], cache-aware, optionally multithreaded.
/// Results are bit-identical regardless of worker count.
inline std::vector<GammaRecord> gamma_range(const LFamily& fam, long n_lo, long n_hi,
                                            const PrecisionContext& ctx, GammaCache* cache,
                                            unsigned workers = 1) {
    if (n_lo > n_hi) throw InvalidParams("gamma_range: n_lo must be <= n_hi");
    const std::uint64_t hash = fam.content_hash();
    std::vector<GammaRecord> out((size_t)(n_hi - n_lo + 1));
    std::vector<long> missing;
    for (long n = n_lo; n <= n_hi; ++n) {
        std::optional<GammaRecord> hit;
        if (cache) hit = cache->get(hash, n, ctx.working_bits);
        if (hit) out[(size_t)(n - n_lo)] = *hit;
        else missing.push_back(n);
    }
    if (!missing.empty()) {
        std::vector<GammaRecord> fresh(missing.size());
        auto work = [&](unsigned tid, unsigned stride) {
            for (size_t i = tid; i < missing.size(); i += stride)
                fresh[i] = taylor_gamma(fam, missing[i], ctx);
        };
        if (workers <= 1) {
            work(0, 1);
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work, t, workers);
            for (auto& t : pool) t.join();
        }
        for (size_t i = 0; i < missing.size(); ++i)
            out[(size_t)(missing[i] - n_lo)] = fresh[i];
        if (cache) cache->put_many(fresh);
    }
    return out;
}

} // namespace ljensen
