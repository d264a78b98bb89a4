#include "support.hpp"

#include "papr_pts/errors.hpp"
#include "papr_pts/signal.hpp"

#include <doctest.h>

#include <set>

using namespace papr;
using papr::testing::direct_idft;
using papr::testing::random_block;
using papr::testing::relative_error;

TEST_CASE("map_symbols")
{
    const auto qpsk = Constellation::qpsk();
    const std::vector<int> zeros(8, 0);
    const OfdmBlock block = map_symbols(zeros, qpsk);
    for (const cplx& s : block.symbols()) {
        CHECK(s == qpsk.points()[0]);
    }

    const auto qam = Constellation::qam16();
    double energy = 0.0;
    for (const cplx& p : qam.points()) {
        energy += std::norm(p);
    }
    CHECK(energy / 16.0 == doctest::Approx(1.0).epsilon(1e-12));

    std::vector<int> all(16);
    for (int i = 0; i < 16; ++i) {
        all[static_cast<std::size_t>(i)] = i;
    }
    const OfdmBlock distinct = map_symbols(all, qam);
    std::set<std::pair<double, double>> seen;
    for (const cplx& s : distinct.symbols()) {
        seen.emplace(s.real(), s.imag());
    }
    CHECK(seen.size() == 16);

    const std::vector<int> bad{0, 1, 4, 0};
    CHECK_THROWS_AS(map_symbols(bad, qpsk), InvalidInput);
    const std::vector<int> three{0, 1, 2};
    CHECK_THROWS_AS(map_symbols(three, qpsk), InvalidInput);
}

TEST_CASE("oversampled_idft single tone and coherent block")
{
    const int n = 16;
    CVec tone(n, cplx{0.0, 0.0});
    tone[0] = cplx{0.6, -0.8};
    const TimeSignal x = oversampled_idft(OfdmBlock(tone), 4);
    REQUIRE(x.samples().size() == 64);
    for (const cplx& s : x.samples()) {
        CHECK(std::abs(s) == doctest::Approx(1.0 / 4.0).epsilon(1e-12));
    }
    CHECK(papr::papr(x) == doctest::Approx(1.0).epsilon(1e-12));

    for (int l : {1, 2, 4, 8}) {
        const TimeSignal ones = oversampled_idft(OfdmBlock(CVec(n, cplx{1.0, 0.0})), l);
        CHECK(ones.samples()[0].real() == doctest::Approx(4.0).epsilon(1e-12));
        CHECK(std::abs(ones.samples()[0].imag()) < 1e-12);
    }
    for (int l : {1, 4}) {
        CHECK(papr::papr(oversampled_idft(OfdmBlock(CVec(4, cplx{1.0, 0.0})), l)) == doctest::Approx(4.0).epsilon(1e-12));
    }
}

TEST_CASE("oversampled_idft matches direct summation")
{
    Rng rng(11);
    for (int n : {8, 16, 64}) {
        for (int l : {1, 2, 4}) {
            const OfdmBlock block = random_block(n, Modulation::Qam16, rng);
            const TimeSignal fast = oversampled_idft(block, l);
            const CVec slow = direct_idft(block.symbols(), l);
            CHECK(relative_error(fast.samples(), slow) < 1e-9);
        }
    }
}

TEST_CASE("Parseval and linearity")
{
    Rng rng(5);
    for (int l : {1, 4}) {
        const OfdmBlock a = random_block(256, Modulation::Qam16, rng);
        const OfdmBlock b = random_block(256, Modulation::Qam16, rng);
        const TimeSignal xa = oversampled_idft(a, l);

        double freq = 0.0;
        for (const cplx& s : a.symbols()) {
            freq += std::norm(s);
        }
        double time = 0.0;
        for (const cplx& s : xa.samples()) {
            time += std::norm(s);
        }
        // Mean time-domain power equals the per-subcarrier average energy.
        CHECK(time / static_cast<double>(xa.samples().size()) ==
              doctest::Approx(freq / 256.0).epsilon(1e-9));

        const cplx alpha{0.3, -1.7};
        const cplx beta{-2.0, 0.25};
        CVec mix(256);
        for (std::size_t i = 0; i < mix.size(); ++i) {
            mix[i] = alpha * a.symbols()[i] + beta * b.symbols()[i];
        }
        const TimeSignal xb = oversampled_idft(b, l);
        const TimeSignal xm = oversampled_idft(OfdmBlock(mix), l);
        CVec expected(xm.samples().size());
        for (std::size_t k = 0; k < expected.size(); ++k) {
            expected[k] = alpha * xa.samples()[k] + beta * xb.samples()[k];
        }
        CHECK(relative_error(xm.samples(), expected) < 1e-9);
    }
}

TEST_CASE("papr and papr_db")
{
    const CVec two_zero{{2.0, 0.0}, {0.0, 0.0}};
    CHECK(papr::papr(two_zero) == 2.0);
    CHECK(papr::papr(TimeSignal(two_zero, 1)) == 2.0);
    CHECK_THROWS_AS(papr::papr(CVec(8, cplx{0.0, 0.0})), DegenerateSignal);

    CHECK(papr_db(1.0) == 0.0);
    CHECK(papr_db(10.0) == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(std::round(papr_db(256.0) * 1000.0) / 1000.0 == doctest::Approx(24.082));
    CHECK_THROWS_AS(papr_db(0.0), InvalidInput);
    CHECK_THROWS_AS(papr_db(-1.0), InvalidInput);
}

TEST_CASE("papr on lengths not divisible by four")
{
    // Odd lengths exercise the tail of the blocked reduction.
    for (std::size_t len : {1u, 3u, 5u, 7u, 9u}) {
        CVec x(len, cplx{1.0, 0.0});
        x[len - 1] = cplx{0.0, 3.0};
        const double expected = 9.0 / ((static_cast<double>(len) - 1.0 + 9.0) / static_cast<double>(len));
        CHECK(papr::papr(x) == doctest::Approx(expected).epsilon(1e-14));
    }
}

TEST_CASE("invalid shapes")
{
    CHECK_THROWS_AS(OfdmBlock(CVec(12)), InvalidInput);
    CHECK_THROWS_AS(OfdmBlock(CVec{}), InvalidInput);
    CHECK_THROWS_AS(oversampled_idft(OfdmBlock(CVec(8, cplx{1.0, 0.0})), 0), InvalidInput);
    CHECK_THROWS_AS(TimeSignal(CVec(6), 4), InvalidInput);
}
