#include <gtest/gtest.h>

#include <algorithm>

#include "oracle.hpp"
#include "pobk/kmeans.hpp"
#include "pobk/partition.hpp"

using namespace pobk;

namespace {

double cost(const std::vector<Vector>& pts, const RowBlocks& blocks) {
    double total = 0.0;
    for (const auto& b : blocks) {
        Vector c(pts[0].size(), 0.0);
        for (auto i : b)
            for (std::size_t d = 0; d < c.size(); ++d) c[d] += pts[i][d] / static_cast<double>(b.size());
        for (auto i : b)
            for (std::size_t d = 0; d < c.size(); ++d) total += (pts[i][d] - c[d]) * (pts[i][d] - c[d]);
    }
    return total;
}

} // namespace

TEST(KMeans, OneDimensionalFixtureMatchesExhaustive) {
    const std::vector<Vector> pts{{1}, {2}, {10}, {11}};
    // every 2-split of 4 points
    double best = 1e300;
    RowBlocks best_blocks;
    for (unsigned mask = 1; mask < 15; ++mask) {
        RowBlocks b(2);
        for (std::size_t i = 0; i < 4; ++i) b[(mask >> i) & 1u].push_back(i);
        if (cost(pts, b) < best) best = cost(pts, b), best_blocks = b;
    }
    EXPECT_EQ(best, 1.0);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto got = kmeans(std::span<const Vector>(pts), 2, seed);
        std::sort(got.begin(), got.end());
        EXPECT_EQ(got, (RowBlocks{{0, 1}, {2, 3}}));
        EXPECT_EQ(cost(pts, got), best);
    }
}

TEST(KMeans, ReturnsNonemptyPartitionEvenWithDuplicates) {
    const std::vector<Vector> pts(6, Vector{1.0, 1.0});
    const auto b = kmeans(std::span<const Vector>(pts), 4, 3);
    EXPECT_EQ(b.size(), 4u);
    EXPECT_TRUE(is_partition(b, 6));
}

TEST(KMeans, RandomClustersArePartitionsAndSeeded) {
    rng gen(61);
    const auto a = oracle::random_banded(80, 2, gen);
    for (std::size_t k : {1u, 3u, 8u, 80u}) {
        const auto b = kmeans(a, k, 7);
        EXPECT_TRUE(is_partition(b, 80));
        EXPECT_EQ(b.size(), k);
        for (const auto& blk : b) EXPECT_TRUE(std::is_sorted(blk.begin(), blk.end()));
        EXPECT_EQ(b, kmeans(a, k, 7));
    }
    EXPECT_THROW(kmeans(a, 0, 1), invalid_argument);
    EXPECT_THROW(kmeans(a, 81, 1), invalid_argument);
}

TEST(KMeans, LloydIsAFixedPoint) {
    rng gen(62);
    std::vector<Vector> pts;
    for (int i = 0; i < 60; ++i) pts.push_back({gen.normal() + (i % 3) * 6.0, gen.normal()});
    const auto b = kmeans(std::span<const Vector>(pts), 3, 5);
    // every point is at least as close to its own centroid as to the others
    std::vector<Vector> c(3, Vector(2, 0.0));
    for (std::size_t t = 0; t < 3; ++t)
        for (auto i : b[t])
            for (int d = 0; d < 2; ++d) c[t][d] += pts[i][d] / static_cast<double>(b[t].size());
    for (std::size_t t = 0; t < 3; ++t)
        for (auto i : b[t])
            for (std::size_t u = 0; u < 3; ++u)
                EXPECT_LE(distance2(pts[i], c[t]), distance2(pts[i], c[u]) + 1e-12);
}
