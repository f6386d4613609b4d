#pragma once

// Append-only JSON-lines store of factorizations.
//
// One record per line:
//   {"n":"2047","status":"complete","factors":[["23",1],["89",1]],"residual":null}
// Records are verified by reassembly on load; malformed or inconsistent
// lines are dropped with a warning. A duplicate key keeps the complete record.
// Writes go through an advisory lock on "<path>.lock"; a second writer finds
// the lock held and degrades to read-only.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "lforge/factorization.hpp"

namespace lforge {

struct CacheRecord {
    std::string n;
    FactorStatus status = FactorStatus::complete;
    std::vector<std::pair<std::string, unsigned>> factors;
    std::optional<std::string> residual;

    static CacheRecord from_factorization(const Factorization& f);
    /// Throws Error(parse) on malformed text or a record that does not reassemble.
    static CacheRecord parse(const std::string& line);
    std::string to_json_line() const;
    Factorization to_factorization() const;
};

class FactorCache final : public FactorMemo {
public:
    /// Loads existing records; warnings go to `log`. An unwritable path leaves
    /// the cache disabled for writes; lookups still work on what was loaded.
    explicit FactorCache(std::filesystem::path path, std::ostream* log = nullptr);
    ~FactorCache() override;

    FactorCache(const FactorCache&) = delete;
    FactorCache& operator=(const FactorCache&) = delete;

    std::optional<Factorization> lookup(const BigInt& abs_value) const override;
    void store(const Factorization& f) override;

    std::optional<CacheRecord> lookup(const std::string& key) const;
    /// Returns true when the record was appended to the file.
    bool store(const CacheRecord& record);

    bool writable() const { return lock_fd_ >= 0; }
    std::size_t size() const;
    std::size_t dropped_on_load() const { return dropped_; }

private:
    void load();
    void warn(const std::string& msg) const;

    std::filesystem::path path_;
    std::ostream* log_;
    mutable std::mutex mu_;
    std::map<std::string, CacheRecord> records_;
    int lock_fd_ = -1;
    std::size_t dropped_ = 0;
};

}  // namespace lforge
