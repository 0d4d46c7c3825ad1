#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <set>
#include <vector>

#include "thzsim/rng.hpp"

using namespace thzsim;

TEST_CASE("mix64 matches the splitmix64 reference stream") {
    // Reference outputs of splitmix64 started from state 0; output k of that
    // generator is mix64(k * golden-gamma). Values frozen from the published
    // reference implementation.
    constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
    CHECK(mix64(1 * kGamma) == 0xe220a8397b1dcdafULL);
    CHECK(mix64(2 * kGamma) == 0x6e789e6aa1b965f4ULL);
    CHECK(mix64(3 * kGamma) == 0x06c45d188009454fULL);
    CHECK(mix64(4 * kGamma) == 0xf88bb8a8724c81ecULL);
}

TEST_CASE("xoshiro256++ core matches reference outputs") {
    auto rng = SubstreamRng::from_state({1, 2, 3, 4});
    CHECK(rng.next_u64() == 0x2800001ULL);
    CHECK(rng.next_u64() == 0x3800067ULL);
    CHECK(rng.next_u64() == 0xcc00003800067ULL);
    CHECK(rng.next_u64() == 0xcc201994400b2ULL);
    CHECK(rng.next_u64() == 0x8012a2019ac433cdULL);
}

TEST_CASE("substream derivation is deterministic and stream-sensitive") {
    CHECK(derive_substream_seed(42, 7) == derive_substream_seed(42, 7));
    std::set<std::uint64_t> seen;
    for (std::uint64_t stream = 0; stream < 1000; ++stream)
        seen.insert(derive_substream_seed(0, stream));
    CHECK(seen.size() == 1000);  // nearby streams map to distinct seeds
    CHECK(derive_substream_seed(0, 0) != derive_substream_seed(1, 0));
}

TEST_CASE("substream generators reproduce and differ across streams") {
    SubstreamRng a(123, 5);
    SubstreamRng b(123, 5);
    SubstreamRng c(123, 6);
    bool all_equal = true;
    bool any_diff_c = false;
    for (int i = 0; i < 64; ++i) {
        const std::uint64_t va = a.next_u64();
        all_equal = all_equal && (va == b.next_u64());
        any_diff_c = any_diff_c || (va != c.next_u64());
    }
    CHECK(all_equal);
    CHECK(any_diff_c);
}

TEST_CASE("uniform01 stays in (0, 1] and looks uniform") {
    SubstreamRng rng(0, 0);
    double sum = 0.0;
    double lo = 1.0, hi = 0.0;
    constexpr int kN = 200000;
    for (int i = 0; i < kN; ++i) {
        const double u = rng.uniform01();
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
        sum += u;
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    CHECK(sum / kN == doctest::Approx(0.5).epsilon(0.01));
    CHECK(lo < 1e-3);   // the generator actually explores the low end
    CHECK(hi > 0.999);  // ... and the high end
}

TEST_CASE("uniform01 maps extreme generator words onto (0, 1] exactly") {
    // The draw is ((word >> 11) + 1) * 2^-53: a zero word gives the smallest
    // positive value instead of 0, an all-ones word gives exactly 1.
    CHECK(static_cast<double>((std::uint64_t{0} >> 11) + 1) * 0x1.0p-53 == 0x1.0p-53);
    CHECK(static_cast<double>((~std::uint64_t{0} >> 11) + 1) * 0x1.0p-53 == 1.0);
}
