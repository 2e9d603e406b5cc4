#include <gtest/gtest.h>

#include <sstream>

#include "oracle.hpp"
#include "pobk/matrix_market.hpp"

using namespace pobk;

TEST(MatrixMarket, SingleEntry) {
    const auto a = mm::read_string("%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 3.5\n");
    EXPECT_EQ(a.rows(), 1u);
    EXPECT_EQ(a.nnz(), 1u);
    EXPECT_EQ(a.at(0, 0), 3.5);
}

TEST(MatrixMarket, SymmetricEntriesMirrored) {
    const std::string text =
        "%%MatrixMarket matrix coordinate real symmetric\n% comment\n\n3 3 3\n1 1 2\n2 1 1\n3 3 4\n";
    const auto a = mm::read_string(text);
    // hand enumeration of the mirrored coordinate list
    const std::vector<Triplet> expected = {{0, 0, 2.0}, {0, 1, 1.0}, {1, 0, 1.0}, {2, 2, 4.0}};
    ASSERT_EQ(a.nnz(), expected.size());
    for (const auto& t : expected) EXPECT_EQ(a.at(t.row, t.col), t.value);
    const auto r0 = a.row(0);
    ASSERT_EQ(r0.size(), 2u);
    EXPECT_EQ(r0.cols[0], 0u);
    EXPECT_EQ(r0.values[0], 2.0);
    EXPECT_EQ(r0.cols[1], 1u);
    EXPECT_EQ(r0.values[1], 1.0);
}

TEST(MatrixMarket, DuplicatesSummedIntegerFieldAndZerosDropped) {
    const auto a = mm::read_string("%%MatrixMarket matrix coordinate integer general\n2 2 4\n1 2 3\n1 2 -1\n2 1 0\n2 2 +5\n");
    EXPECT_EQ(a.nnz(), 2u);
    EXPECT_EQ(a.at(0, 1), 2.0);
    EXPECT_EQ(a.at(1, 1), 5.0);
}

TEST(MatrixMarket, ComplexAndPatternRejected) {
    EXPECT_THROW(mm::read_string("%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1 0\n"), unsupported_format);
    EXPECT_THROW(mm::read_string("%%MatrixMarket matrix coordinate pattern general\n1 1 1\n1 1\n"), unsupported_format);
    EXPECT_THROW(mm::read_string("%%MatrixMarket matrix array real general\n1 1\n1\n"), unsupported_format);
    EXPECT_THROW(mm::read_string("%%MatrixMarket matrix coordinate real skew-symmetric\n1 1 0\n"), unsupported_format);
}

TEST(MatrixMarket, ErrorsNameTheLine) {
    auto line_of = [](const std::string& text) -> std::size_t {
        try {
            mm::read_string(text);
        } catch (const parse_error& e) {
            return e.line();
        }
        return 0;
    };
    EXPECT_EQ(line_of("%%NotMatrixMarket matrix coordinate real general\n"), 1u);
    EXPECT_EQ(line_of("%%MatrixMarket matrix coordinate real general\n2 2\n"), 2u);
    EXPECT_EQ(line_of("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n3 1 1\n"), 4u);
    EXPECT_EQ(line_of("%%MatrixMarket matrix coordinate real general\n2 2 1\n% c\n1 0 1\n"), 4u);
    EXPECT_EQ(line_of("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 x\n"), 3u);
    EXPECT_EQ(line_of("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n"), 4u);
    EXPECT_EQ(line_of("%%MatrixMarket matrix coordinate complex general\n"), 1u);
}

TEST(MatrixMarket, WriteThenReadIsValueIdentical) {
    rng gen(21);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Triplet> t;
        for (int e = 0; e < 40; ++e)
            t.push_back({gen.below(9), gen.below(7), gen.normal() * std::pow(10.0, gen.uniform(-8, 8))});
        const auto a = SparseMatrix::from_triplets(9, 7, t);
        std::stringstream ss;
        mm::write(ss, a);
        EXPECT_EQ(mm::read(ss), a);
    }
}

TEST(MatrixMarket, FixtureFile) {
    const auto a = mm::read_file(std::string(POBK_TEST_DATA) + "/sym5.mtx");
    EXPECT_EQ(a.rows(), 5u);
    EXPECT_EQ(a.nnz(), 13u);
    EXPECT_EQ(a.at(3, 4), a.at(4, 3));
}
