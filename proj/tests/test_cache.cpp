#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "lforge/cache.hpp"
#include "lforge/error.hpp"

using namespace lforge;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("lforge-cache-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write_lines(const fs::path& p, std::initializer_list<std::string> lines) {
    std::ofstream out(p);
    for (const auto& l : lines) out << l << '\n';
}

std::size_t count_lines(const fs::path& p) {
    std::ifstream in(p);
    std::size_t n = 0;
    for (std::string l; std::getline(in, l);) n += !l.empty();
    return n;
}

const std::string k10 = R"({"n":"10","status":"complete","factors":[["2",1],["5",1]],"residual":null})";

}  // namespace

TEST_SUITE("cache") {

TEST_CASE("record round trip") {
    const Factorization f = factorize(BigInt(2047));
    const CacheRecord rec = CacheRecord::from_factorization(f);
    const std::string line = rec.to_json_line();
    CHECK(line == R"({"n":"2047","status":"complete","factors":[["23",1],["89",1]],"residual":null})");
    const Factorization back = CacheRecord::parse(line).to_factorization();
    CHECK(back.input == 2047);
    CHECK(back.factors == f.factors);
    CHECK(back.complete());
}

TEST_CASE("partial record round trip") {
    const BigInt big = BigInt("100000000000000000039") * BigInt("10000000000000000000009") * 12;
    FactorBudget budget;
    budget.rho_iterations = 10000;
    const Factorization f = factorize(big, budget);
    REQUIRE_FALSE(f.complete());
    const CacheRecord rec = CacheRecord::from_factorization(f);
    REQUIRE(rec.residual.has_value());
    const Factorization back = CacheRecord::parse(rec.to_json_line()).to_factorization();
    CHECK(back.status == FactorStatus::partial);
    CHECK(back.residual == f.residual);
    CHECK(back.reassembles());
}

TEST_CASE("malformed records are rejected") {
    CHECK_NOTHROW(CacheRecord::parse(k10));
    CHECK_THROWS_AS(CacheRecord::parse("not json"), Error);
    CHECK_THROWS_AS(CacheRecord::parse(R"({"n":"10","status":"complete","factors":[["2",1],["5",1]]})"), Error);
    CHECK_THROWS_AS(CacheRecord::parse(R"({"n":"10","status":"complete","factors":[["5",1],["2",1]],"residual":null})"), Error);
    CHECK_THROWS_AS(CacheRecord::parse(R"({"n":"12","status":"complete","factors":[["4",1],["3",1]],"residual":null})"), Error);
    CHECK_THROWS_AS(CacheRecord::parse(R"({"n":"11","status":"complete","factors":[["2",1],["5",1]],"residual":null})"), Error);
    CHECK_THROWS_AS(CacheRecord::parse(R"({"n":"10","status":"done","factors":[["2",1],["5",1]],"residual":null})"), Error);
    CHECK_THROWS_AS(CacheRecord::parse(R"({"n":"10","status":"complete","factors":[["2",1],["5",0]],"residual":null})"), Error);
    CHECK_THROWS_AS(CacheRecord::parse(R"({"n":"010","status":"complete","factors":[["2",1],["5",1]],"residual":null})"), Error);
    CHECK_THROWS_AS(CacheRecord::parse(R"({"n":"10","status":"partial","factors":[["2",1]],"residual":"1"})"), Error);
    try {
        CacheRecord::parse("{");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::parse);
    }
}

TEST_CASE("store, miss and reload") {
    TempDir dir;
    const fs::path file = dir.path / "factors.jsonl";
    {
        FactorCache cache(file);
        CHECK(cache.writable());
        CHECK_FALSE(cache.lookup(BigInt(2047)).has_value());
        CHECK(cache.store(CacheRecord::from_factorization(factorize(BigInt(2047)))));
        CHECK_FALSE(cache.store(CacheRecord::from_factorization(factorize(BigInt(2047)))));
        cache.store(factorize(BigInt(1000)));  // too small to be worth keeping
        CHECK(cache.size() == 1);
    }
    CHECK(count_lines(file) == 1);
    FactorCache again(file);
    const auto hit = again.lookup(BigInt(-2047));
    REQUIRE(hit.has_value());
    CHECK(hit->factors.size() == 2);
    CHECK_FALSE(again.lookup(BigInt(2049)).has_value());
}

TEST_CASE("corrupt lines are dropped with a warning") {
    TempDir dir;
    const fs::path file = dir.path / "factors.jsonl";
    write_lines(file, {k10, "{\"n\":\"15\",", R"({"n":"21","status":"complete","factors":[["3",1],["7",1]],"residual":null})",
                       R"({"n":"22","status":"complete","factors":[["2",1],["13",1]],"residual":null})"});
    std::ostringstream log;
    FactorCache cache(file, &log);
    CHECK(cache.size() == 2);
    CHECK(cache.dropped_on_load() == 2);
    CHECK(log.str().find("warning:") != std::string::npos);
    CHECK(log.str().find(":2:") != std::string::npos);
    CHECK(log.str().find(":4:") != std::string::npos);
    CHECK(cache.lookup(BigInt(21)).has_value());
}

TEST_CASE("duplicate keys prefer the complete record") {
    TempDir dir;
    const fs::path file = dir.path / "factors.jsonl";
    const std::string partial = R"({"n":"60","status":"partial","factors":[["2",2]],"residual":"15"})";
    const std::string complete = R"({"n":"60","status":"complete","factors":[["2",2],["3",1],["5",1]],"residual":null})";
    write_lines(file, {partial, complete, partial});
    FactorCache cache(file);
    const auto rec = cache.lookup(std::string("60"));
    REQUIRE(rec.has_value());
    CHECK(rec->status == FactorStatus::complete);

    CacheRecord upgrade = CacheRecord::parse(R"({"n":"77","status":"partial","factors":[],"residual":"77"})");
    CHECK(cache.store(upgrade));
    upgrade = CacheRecord::parse(R"({"n":"77","status":"complete","factors":[["7",1],["11",1]],"residual":null})");
    CHECK(cache.store(upgrade));
    CHECK(cache.lookup(std::string("77"))->status == FactorStatus::complete);
}

TEST_CASE("a second writer falls back to read-only") {
    TempDir dir;
    const fs::path file = dir.path / "factors.jsonl";
    write_lines(file, {k10});
    FactorCache first(file);
    REQUIRE(first.writable());
    std::ostringstream log;
    FactorCache second(file, &log);
    CHECK_FALSE(second.writable());
    CHECK(log.str().find("locked") != std::string::npos);
    CHECK(second.lookup(BigInt(10)).has_value());
    CHECK_FALSE(second.store(CacheRecord::from_factorization(factorize(BigInt(2047)))));
    CHECK(second.lookup(BigInt(2047)).has_value());
    CHECK(count_lines(file) == 1);
}

TEST_CASE("an unwritable location disables writes") {
    TempDir dir;
    const fs::path file = dir.path / "missing" / "factors.jsonl";
    std::ostringstream log;
    FactorCache cache(file, &log);
    CHECK_FALSE(cache.writable());
    CHECK(log.str().find("warning:") != std::string::npos);
    CHECK_FALSE(cache.store(CacheRecord::from_factorization(factorize(BigInt(2047)))));
    CHECK_FALSE(fs::exists(file));
}

TEST_CASE("factorize consults the cache") {
    TempDir dir;
    const fs::path file = dir.path / "factors.jsonl";
    const BigInt x = BigInt("193707721") * BigInt("761838257287");
    Factorization fresh;
    {
        FactorCache cache(file);
        FactorBudget budget;
        budget.memo = &cache;
        fresh = factorize(x, budget);
        CHECK(cache.size() >= 1);
    }
    FactorCache cache(file);
    FactorBudget budget;
    budget.memo = &cache;
    budget.rho_iterations = 1;  // only the cache can finish this
    const Factorization cached = factorize(x, budget);
    CHECK(cached.complete());
    CHECK(cached.factors == fresh.factors);
}

}  // TEST_SUITE
