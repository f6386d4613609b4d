#include "lforge/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <fstream>
#include <ostream>

#include "json.hpp"

#include "lforge/error.hpp"

namespace lforge {

namespace {

using Json = nlohmann::ordered_json;

bool is_decimal(const std::string& s) {
    if (s.empty() || (s.size() > 1 && s[0] == '0')) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

BigInt parse_decimal(const std::string& s, const char* field) {
    if (!is_decimal(s)) throw Error(ErrorKind::parse, std::string("cache record: bad decimal in ") + field);
    return BigInt(s, 10);
}

}  // namespace

CacheRecord CacheRecord::from_factorization(const Factorization& f) {
    CacheRecord rec;
    rec.n = to_dec(abs(f.input));
    rec.status = f.status;
    for (const auto& pp : f.factors) rec.factors.emplace_back(to_dec(pp.prime), pp.exponent);
    if (!f.complete()) rec.residual = to_dec(f.residual);
    return rec;
}

CacheRecord CacheRecord::parse(const std::string& line) {
    Json j;
    try {
        j = Json::parse(line);
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::parse, std::string("cache record: ") + e.what());
    }
    try {
        CacheRecord rec;
        rec.n = j.at("n").get<std::string>();
        const auto status = j.at("status").get<std::string>();
        if (status == "complete") {
            rec.status = FactorStatus::complete;
        } else if (status == "partial") {
            rec.status = FactorStatus::partial;
        } else {
            throw Error(ErrorKind::parse, "cache record: unknown status '" + status + "'");
        }
        for (const auto& item : j.at("factors")) {
            if (!item.is_array() || item.size() != 2) throw Error(ErrorKind::parse, "cache record: bad factor entry");
            const auto e = item.at(1).get<int64_t>();
            if (e < 1) throw Error(ErrorKind::parse, "cache record: exponent must be positive");
            rec.factors.emplace_back(item.at(0).get<std::string>(), static_cast<unsigned>(e));
        }
        if (!j.at("residual").is_null()) rec.residual = j.at("residual").get<std::string>();
        if ((rec.status == FactorStatus::partial) != rec.residual.has_value()) {
            throw Error(ErrorKind::parse, "cache record: residual must be present exactly when partial");
        }

        const Factorization f = rec.to_factorization();
        if (sgn(f.input) <= 0 || !f.reassembles()) {
            throw Error(ErrorKind::parse, "cache record for " + rec.n + " does not reassemble");
        }
        if (f.status == FactorStatus::partial && f.residual <= 1) {
            throw Error(ErrorKind::parse, "cache record: partial residual must exceed 1");
        }
        for (std::size_t i = 0; i < f.factors.size(); ++i) {
            if (i > 0 && f.factors[i].prime <= f.factors[i - 1].prime) {
                throw Error(ErrorKind::parse, "cache record: factors must be strictly increasing");
            }
            if (!is_prime(f.factors[i].prime)) {
                throw Error(ErrorKind::parse, "cache record: " + rec.factors[i].first + " is not prime");
            }
        }
        return rec;
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::parse, std::string("cache record: ") + e.what());
    }
}

std::string CacheRecord::to_json_line() const {
    Json j;
    j["n"] = n;
    j["status"] = status == FactorStatus::complete ? "complete" : "partial";
    Json fs = Json::array();
    for (const auto& [p, e] : factors) fs.push_back(Json::array({p, e}));
    j["factors"] = std::move(fs);
    j["residual"] = residual ? Json(*residual) : Json(nullptr);
    return j.dump();
}

Factorization CacheRecord::to_factorization() const {
    Factorization f;
    f.input = parse_decimal(n, "n");
    for (const auto& [p, e] : factors) f.factors.push_back({parse_decimal(p, "factor"), e});
    f.residual = residual ? parse_decimal(*residual, "residual") : BigInt(1);
    f.status = status;
    return f;
}

FactorCache::FactorCache(std::filesystem::path path, std::ostream* log) : path_(std::move(path)), log_(log) {
    const std::string lock_path = path_.string() + ".lock";
    int fd = ::open(lock_path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd < 0) {
        warn("cannot create lock file " + lock_path + "; cache is read-only");
    } else if (::flock(fd, LOCK_EX | LOCK_NB) != 0) {
        warn("cache " + path_.string() + " is locked by another writer; cache is read-only");
        ::close(fd);
    } else {
        std::ofstream probe(path_, std::ios::app);
        if (!probe) {
            warn("cannot open " + path_.string() + " for appending; cache is read-only");
            ::close(fd);
        } else {
            lock_fd_ = fd;
        }
    }
    load();
}

FactorCache::~FactorCache() {
    if (lock_fd_ >= 0) {
        ::flock(lock_fd_, LOCK_UN);
        ::close(lock_fd_);
    }
}

void FactorCache::warn(const std::string& msg) const {
    if (log_) *log_ << "warning: " << msg << '\n';
}

void FactorCache::load() {
    std::ifstream in(path_);
    if (!in) return;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            CacheRecord rec = CacheRecord::parse(line);
            auto it = records_.find(rec.n);
            if (it == records_.end()) {
                records_.emplace(rec.n, std::move(rec));
            } else if (it->second.status != FactorStatus::complete && rec.status == FactorStatus::complete) {
                it->second = std::move(rec);
            }
        } catch (const Error& e) {
            ++dropped_;
            warn(path_.string() + ":" + std::to_string(lineno) + ": dropped (" + e.what() + ")");
        }
    }
}

std::optional<CacheRecord> FactorCache::lookup(const std::string& key) const {
    std::lock_guard lock(mu_);
    auto it = records_.find(key);
    if (it == records_.end()) return std::nullopt;
    return it->second;
}

std::optional<Factorization> FactorCache::lookup(const BigInt& abs_value) const {
    auto rec = lookup(to_dec(abs(abs_value)));
    if (!rec) return std::nullopt;
    return rec->to_factorization();
}

bool FactorCache::store(const CacheRecord& record) {
    std::lock_guard lock(mu_);
    auto it = records_.find(record.n);
    if (it != records_.end()) {
        const bool upgrade = it->second.status != FactorStatus::complete && record.status == FactorStatus::complete;
        if (!upgrade) return false;
        it->second = record;
    } else {
        records_.emplace(record.n, record);
    }
    if (lock_fd_ < 0) return false;
    std::ofstream out(path_, std::ios::app);
    out << record.to_json_line() << '\n';
    out.flush();
    return static_cast<bool>(out);
}

void FactorCache::store(const Factorization& f) {
    // trial division alone settles anything below 10^10
    static const BigInt kWorthKeeping("10000000000");
    if (abs(f.input) < kWorthKeeping) return;
    store(CacheRecord::from_factorization(f));
}

std::size_t FactorCache::size() const {
    std::lock_guard lock(mu_);
    return records_.size();
}

}  // namespace lforge
