#include "support.hpp"

#include "papr_pts/errors.hpp"
#include "papr_pts/objective.hpp"
#include "papr_pts/pts.hpp"

#include <doctest.h>

#include <set>

using namespace papr;
using papr::testing::random_block;
using papr::testing::random_instance;
using papr::testing::relative_error;

namespace {

SubblockSignals two_by_two()
{
    return SubblockSignals({CVec{{1.0, 0.0}, {1.0, 0.0}}, CVec{{1.0, 0.0}, {0.0, 0.0}}}, 2, 1);
}

} // namespace

TEST_CASE("partition schemes")
{
    Rng rng(42);
    const auto inter = make_partition(8, 4, PartitionScheme::Interleaved, rng);
    CHECK(std::vector<int>(inter.assignment().begin(), inter.assignment().end()) ==
          std::vector<int>{0, 1, 2, 3, 0, 1, 2, 3});
    const auto adj = make_partition(8, 2, PartitionScheme::Adjacent, rng);
    CHECK(std::vector<int>(adj.assignment().begin(), adj.assignment().end()) ==
          std::vector<int>{0, 0, 0, 0, 1, 1, 1, 1});

    Rng seeded(42);
    const auto rnd = make_partition(256, 16, PartitionScheme::Random, seeded);
    const std::set<int> ids(rnd.assignment().begin(), rnd.assignment().end());
    CHECK(ids.size() == 16);
    CHECK(*ids.begin() == 0);
    CHECK(*ids.rbegin() == 15);

    // Small N relative to M forces redraws; the result must still cover every id.
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng r(seed);
        const auto tight = make_partition(8, 8, PartitionScheme::Random, r);
        CHECK(std::set<int>(tight.assignment().begin(), tight.assignment().end()).size() == 8);
    }

    CHECK_THROWS_AS(make_partition(4, 8, PartitionScheme::Adjacent, rng), InvalidInput);
    CHECK_THROWS_AS(make_partition(4, 0, PartitionScheme::Adjacent, rng), InvalidInput);
    CHECK_THROWS_AS(Partition({0, 0, 0}, 2, PartitionScheme::Random), InvalidInput);
}

TEST_CASE("phase set elements")
{
    const PhaseSet two(2);
    CHECK(two[0] == cplx{1.0, 0.0});
    CHECK(two[1] == cplx{-1.0, 0.0});
    const PhaseSet four(4);
    CHECK(four[1] == cplx{0.0, 1.0});
    CHECK(four[2] == cplx{-1.0, 0.0});
    CHECK(four[3] == cplx{0.0, -1.0});
    const PhaseSet eight(8);
    CHECK(std::abs(eight[1] - std::polar(1.0, std::numbers::pi / 4)) < 1e-15);
    CHECK(eight[2] == cplx{0.0, 1.0});
    CHECK_THROWS_AS(PhaseSet(1), InvalidInput);
}

TEST_CASE("split_and_transform")
{
    Rng rng(3);
    const OfdmBlock block = random_block(64, Modulation::Qam16, rng);
    const TimeSignal full = oversampled_idft(block);

    const auto partition = make_partition(64, 8, PartitionScheme::Random, rng);
    const SubblockSignals parts = split_and_transform(block, partition);
    CVec sum(full.samples().size(), cplx{0.0, 0.0});
    for (int m = 0; m < parts.m(); ++m) {
        for (std::size_t k = 0; k < sum.size(); ++k) {
            sum[k] += parts[m][k];
        }
    }
    CHECK(relative_error(sum, full.samples()) < 1e-12);

    const SubblockSignals single = split_and_transform(block, make_partition(64, 1, PartitionScheme::Adjacent, rng));
    REQUIRE(single.m() == 1);
    CHECK(relative_error(single[0], full.samples()) == 0.0);

    std::vector<int> one_tone(64, 0);
    one_tone[17] = 1;
    const SubblockSignals tone = split_and_transform(block, Partition(one_tone, 2, PartitionScheme::Random));
    const double expected = std::abs(block.symbols()[17]) / 8.0;
    for (const cplx& s : tone[1]) {
        CHECK(std::abs(s) == doctest::Approx(expected).epsilon(1e-12));
    }

    CHECK_THROWS_AS(split_and_transform(block, make_partition(32, 4, PartitionScheme::Adjacent, rng)), InvalidInput);
}

TEST_CASE("combine and objective on the two-sample example")
{
    const SubblockSignals x = two_by_two();
    const TimeSignal flipped = combine(x, CVec{{1.0, 0.0}, {-1.0, 0.0}});
    CHECK(flipped.samples()[0] == cplx{0.0, 0.0});
    CHECK(flipped.samples()[1] == cplx{1.0, 0.0});

    const PhaseSet set(2);
    CHECK(objective(x, PhaseVector{{0, 0}}, set) == doctest::Approx(1.6).epsilon(1e-15));
    CHECK(objective(x, PhaseVector{{0, 1}}, set) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(combine(x, CVec{{1.0, 0.0}}), InvalidInput);
    CHECK_THROWS_AS(objective(SubblockSignals({CVec(2), CVec(2)}, 2, 1), CVec(2, cplx{1.0, 0.0})),
                    DegenerateSignal);
}

TEST_CASE("combination properties on random symbols")
{
    const auto inst = random_instance(256, 16, 9, Modulation::Qam16);
    const PhaseSet set(4);
    const TimeSignal original = oversampled_idft(inst.block);
    const TimeSignal identity = combine(inst.subblocks, PhaseVector::identity(16), set);
    CHECK(relative_error(identity.samples(), original.samples()) < 1e-12);

    double spectral = 0.0;
    for (const cplx& s : inst.block.symbols()) {
        spectral += std::norm(s);
    }
    spectral /= 256.0;

    Rng rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        const PhaseVector b = random_phase_vector(16, set, false, rng);
        const TimeSignal y = combine(inst.subblocks, b, set);
        double power = 0.0;
        for (const cplx& s : y.samples()) {
            power += std::norm(s);
        }
        power /= static_cast<double>(y.samples().size());
        CHECK(power == doctest::Approx(spectral).epsilon(1e-9));

        // Global rotation leaves the objective unchanged.
        CVec rotated = b.factors(set);
        const cplx c = std::polar(1.0, 0.731);
        for (auto& v : rotated) {
            v *= c;
        }
        CHECK(objective(inst.subblocks, rotated) ==
              doctest::Approx(objective(inst.subblocks, b, set)).epsilon(1e-12));
    }

    const PhaseSet signs(2);
    const PhaseVector b = random_phase_vector(16, signs, true, rng);
    PhaseVector neg = b;
    for (int& e : neg.exponents) {
        e = 1 - e;
    }
    CHECK(objective(inst.subblocks, neg, signs) == doctest::Approx(objective(inst.subblocks, b, signs)).epsilon(1e-12));
}

TEST_CASE("coherent single-subcarrier subblocks")
{
    // Subblock m holds only subcarrier m; choosing b_m = conj(X_m)/|X_m|
    // aligns every term at k = 0 and gives peak N·mean.
    const int n = 8;
    Rng rng(2);
    const OfdmBlock block = random_block(n, Modulation::Qpsk, rng);
    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i) {
        ids[static_cast<std::size_t>(i)] = i;
    }
    const SubblockSignals x = split_and_transform(block, Partition(ids, n, PartitionScheme::Interleaved));
    CVec b(n);
    for (int i = 0; i < n; ++i) {
        const cplx s = block.symbols()[static_cast<std::size_t>(i)];
        b[static_cast<std::size_t>(i)] = std::conj(s) / std::abs(s);
    }
    CHECK(objective(x, b) == doctest::Approx(static_cast<double>(n)).epsilon(1e-12));
}

TEST_CASE("sign fast path is bit-identical")
{
    const auto inst = random_instance(128, 16, 4, Modulation::Qam16);
    const PhaseSet set(2);
    Rng rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        const PhaseVector b = random_phase_vector(16, set, false, rng);
        CVec slow(inst.subblocks.length());
        CVec fast(inst.subblocks.length());
        combine_into(inst.subblocks, b.factors(set), slow);
        combine_signs_into(inst.subblocks, b.exponents, fast);
        CHECK(slow == fast);
    }
}

TEST_CASE("fitness")
{
    CHECK(fitness(1.0) == 0.5);
    CHECK(fitness(0.0) == 1.0);
    CHECK(fitness(3.0) == 0.25);
    CHECK_THROWS_AS(fitness(-0.5), InvalidInput);
}

TEST_CASE("counting objective and incremental evaluation")
{
    const auto inst = random_instance(64, 8, 21, Modulation::Qam16);
    for (int w : {2, 4, 8}) {
        const PhaseSet set(w);
        PaprObjective obj(inst.subblocks, set);
        Rng rng(static_cast<std::uint64_t>(w));
        const PhaseVector base = random_phase_vector(8, set, true, rng);
        CVec base_signal;
        const double f0 = obj.evaluate(base, base_signal);
        CHECK(obj.calls() == 1);
        CHECK(f0 == obj.reference(base));
        CHECK(obj.calls() == 1);

        const PhaseVector target = random_phase_vector(8, set, true, rng);
        std::vector<Change> changes;
        for (int l = 0; l < 8; ++l) {
            const auto i = static_cast<std::size_t>(l);
            changes.push_back(Change{l, base.exponents[i], target.exponents[i]});
        }
        CVec moved;
        const double f1 = obj.evaluate_change(base_signal, changes, moved);
        CHECK(obj.calls() == 2);
        CHECK(f1 == doctest::Approx(obj.reference(target)).epsilon(1e-12));
        CHECK(relative_error(moved, combine(inst.subblocks, target, set).samples()) < 1e-12);

        const double same = obj.evaluate_change(base_signal, {}, moved);
        CHECK(same == f0);
        CHECK(obj.calls() == 3);
    }
}

TEST_CASE("incumbent keeps the exact minimum")
{
    const auto inst = random_instance(32, 4, 6);
    const PhaseSet set(2);
    PaprObjective obj(inst.subblocks, set);
    const PhaseVector id = PhaseVector::identity(4);
    CVec signal;
    const double f = obj.evaluate(id, signal);
    Incumbent best(id, f, signal);

    const PhaseVector other{{0, 1, 0, 0}};
    const double exact = obj.reference(other);
    // A value reported far above the incumbent is rejected without re-evaluation.
    CHECK_FALSE(best.offer(other, f * 2.0, obj));
    const bool better = exact < f;
    CHECK(best.offer(other, exact, obj) == better);
    CHECK(best.f_value() == std::min(f, exact));
    CHECK_FALSE(best.offer(best.b(), best.f_value(), obj));
}
