/**************************************************************************
 * text_io_test.cpp
 *
 * Copyright 2026 The rankcode Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

#include <gtest/gtest.h>

#include <sstream>

#include "test_util.hpp"

using namespace rankcode;
using rankcode::testing::random_poly;

TEST(TextIo, ElementRoundTrip) {
    const auto ctx = FieldCtx::standard(5, 4);
    SplitMix64 rng(1);
    for (int it = 0; it < 100; ++it) {
        const Fe a = ctx.random(rng);
        EXPECT_EQ(parse_fe(ctx, format_fe(a)), a);
    }
    EXPECT_EQ(format_fe(ctx.generator()), "0,1,0,0");
    EXPECT_EQ(parse_fe(ctx, " <1, 0,4,2> "), ctx.from_coeffs(std::vector<std::uint32_t>{1, 0, 4, 2}));
}

TEST(TextIo, ElementErrors) {
    const auto ctx = FieldCtx::standard(3, 3);
    EXPECT_THROW(parse_fe(ctx, "1,2"), ParseError);
    EXPECT_THROW(parse_fe(ctx, "1,2,3"), ParseError);
    EXPECT_THROW(parse_fe(ctx, "1,x,0"), ParseError);
    EXPECT_THROW(parse_fe(ctx, "1,,0"), ParseError);
    EXPECT_THROW(parse_fe(ctx, "-1,0,0"), ParseError);
}

TEST(TextIo, LinPolyRoundTrip) {
    const auto ctx = FieldCtx::standard(2, 5);
    SplitMix64 rng(2);
    for (int it = 0; it < 50; ++it) {
        const LinPoly f = random_poly(ctx, rng);
        EXPECT_EQ(parse_linpoly(ctx, format_linpoly(f)), f);
    }
    EXPECT_EQ(format_linpoly(lp_identity(FieldCtx::standard(2, 2))), "lp:1,0;0,0");
    EXPECT_THROW(parse_linpoly(ctx, "1,0,0,0,0"), ParseError);
    EXPECT_THROW(parse_linpoly(ctx, "lp:1,0,0,0,0"), ParseError);
}

TEST(TextIo, FieldSpec) {
    const auto ctx = parse_field_spec("q=3 n=4");
    EXPECT_EQ(ctx.q(), 3u);
    EXPECT_EQ(ctx.n(), 4u);
    EXPECT_EQ(ctx.modulus(), FieldCtx::standard(3, 4).modulus());
    const auto again = parse_field_spec(format_field_spec(ctx));
    EXPECT_EQ(again.modulus(), ctx.modulus());
    EXPECT_EQ(parse_field_spec("q=2 n=3 mod=1,0,1,1").modulus(), (std::vector<std::uint32_t>{1, 0, 1, 1}));

    EXPECT_THROW(parse_field_spec("q=2"), ParseError);
    EXPECT_THROW(parse_field_spec("q=4 n=2"), ParseError);
    EXPECT_THROW(parse_field_spec("q=257 n=2"), ParseError);
    EXPECT_THROW(parse_field_spec("q=2 n=2 mod=1,0,1"), ParseError);
    EXPECT_THROW(parse_field_spec("q=2 n=4 p=3"), ParseError);
    EXPECT_THROW(parse_field_spec("q=two n=4"), ParseError);
}

TEST(TextIo, WordsSkipCommentsAndBlankLines) {
    const auto ctx = FieldCtx::standard(2, 3);
    std::istringstream in("# received word\n1,0,0\n\n  0,1,1  \n# trailing\n0,0,1\n");
    const Word w = read_word(ctx, in);
    ASSERT_EQ(w.size(), 3u);
    EXPECT_EQ(format_fe(w[1]), "0,1,1");
    std::ostringstream out;
    write_word(out, w);
    EXPECT_EQ(out.str(), "1,0,0\n0,1,1\n0,0,1\n");
}

TEST(TextIo, TwistSpec) {
    const auto ctx = FieldCtx::standard(3, 4);
    for (const char* s : {"eta=1,2,0,0 r=3", "eta=1,2,0,0,r=3", "eta=<1,2,0,0> r=3"}) {
        const auto t = parse_twist(ctx, s);
        EXPECT_EQ(format_fe(t.eta), "1,2,0,0");
        EXPECT_EQ(t.r, 3u);
    }
    const auto t = parse_twist(ctx, "eta=0,0,1,0 r=1");
    EXPECT_EQ(format_twist(t), "eta=0,0,1,0 r=1");
    EXPECT_EQ(parse_twist(ctx, format_twist(t)).eta, t.eta);
    EXPECT_THROW(parse_twist(ctx, "r=1"), ParseError);
    EXPECT_THROW(parse_twist(ctx, "eta=1,0,0,0"), ParseError);
    EXPECT_THROW(parse_twist(ctx, "eta=1,0,0 r=1"), ParseError);
}
