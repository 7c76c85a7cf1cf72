#include <doctest.h>

#include <atomic>
#include <stdexcept>
#include <vector>

#include "pcub/parallel.hpp"

using namespace pcub;

TEST_SUITE("parallel") {

TEST_CASE("parallel_for visits every index once") {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
    for (const auto& h : hits) CHECK(h.load() == 1);
    parallel_for(0, [](std::size_t) { FAIL("called on empty range"); });
    CHECK(worker_count() >= 1);
}

TEST_CASE("exceptions propagate") {
    CHECK_THROWS_AS(parallel_for(100,
                                 [](std::size_t i) {
                                     if (i == 37) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
}

}
