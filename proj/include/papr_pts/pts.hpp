#pragma once

#include "papr_pts/random.hpp"
#include "papr_pts/signal.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace papr {

enum class PartitionScheme { Random, Adjacent, Interleaved };

std::string_view to_string(PartitionScheme scheme) noexcept;

/// Subcarrier → subblock assignment. Every id in [0, M) is used at least once.
class Partition {
public:
    Partition(std::vector<int> assignment, int m, PartitionScheme scheme);

    std::span<const int> assignment() const noexcept { return assignment_; }
    int n() const noexcept { return static_cast<int>(assignment_.size()); }
    int m() const noexcept { return m_; }
    PartitionScheme scheme() const noexcept { return scheme_; }

private:
    std::vector<int> assignment_;
    int m_;
    PartitionScheme scheme_;
};

/// Random draws each id uniformly and redraws the whole assignment until no
/// subblock is empty. Adjacent uses contiguous runs, Interleaved uses index mod m.
Partition make_partition(int n, int m, PartitionScheme scheme, Rng& rng);

/// The W allowed rotations exp(j2πℓ/W).
///
/// Rotations on the axes (4ℓ/W integral) are stored exactly, so ±1 and ±j
/// carry no rounding residue.
class PhaseSet {
public:
    explicit PhaseSet(int w);

    int w() const noexcept { return static_cast<int>(elements_.size()); }
    std::span<const cplx> elements() const noexcept { return elements_; }
    const cplx& operator[](int exponent) const noexcept { return elements_[static_cast<std::size_t>(exponent)]; }

private:
    CVec elements_;
};

/// Phase factors stored as exponents ℓ_m, i.e. b_m = exp(j2πℓ_m/W).
struct PhaseVector {
    std::vector<int> exponents;

    static PhaseVector identity(int m) { return PhaseVector{std::vector<int>(static_cast<std::size_t>(m), 0)}; }

    int m() const noexcept { return static_cast<int>(exponents.size()); }
    /// b_1 == 1.
    bool first_fixed() const noexcept { return !exponents.empty() && exponents.front() == 0; }
    CVec factors(const PhaseSet& set) const;

    friend bool operator==(const PhaseVector&, const PhaseVector&) = default;
};

/// Uniform draw from the phase set; the first coordinate is pinned to 1 when
/// `fix_first` is set.
PhaseVector random_phase_vector(int m, const PhaseSet& set, bool fix_first, Rng& rng);

/// The M oversampled subblock signals x_m, each of length N·L.
class SubblockSignals {
public:
    SubblockSignals(std::vector<CVec> signals, int n, int oversampling);

    int n() const noexcept { return n_; }
    int oversampling() const noexcept { return oversampling_; }
    int m() const noexcept { return static_cast<int>(signals_.size()); }
    std::size_t length() const noexcept { return static_cast<std::size_t>(n_) * static_cast<std::size_t>(oversampling_); }
    std::span<const cplx> operator[](int m) const noexcept { return signals_[static_cast<std::size_t>(m)]; }

private:
    std::vector<CVec> signals_;
    int n_;
    int oversampling_;
};

SubblockSignals split_and_transform(const OfdmBlock& block, const Partition& partition,
                                    int oversampling = kDefaultOversampling);

/// out[k] = Σ_m factors[m]·x_m[k], accumulated in subblock order.
void combine_into(const SubblockSignals& subblocks, std::span<const cplx> factors, std::span<cplx> out);

/// Sign-only combination for ±1 factors. Bit-identical to combine_into with
/// the corresponding real factors.
void combine_signs_into(const SubblockSignals& subblocks, std::span<const int> negate, std::span<cplx> out);

TimeSignal combine(const SubblockSignals& subblocks, std::span<const cplx> factors);
TimeSignal combine(const SubblockSignals& subblocks, const PhaseVector& b, const PhaseSet& set);

/// f(b) = papr(combine(subblocks, b)).
double objective(const SubblockSignals& subblocks, std::span<const cplx> factors);
double objective(const SubblockSignals& subblocks, const PhaseVector& b, const PhaseSet& set);

/// 1 / (1 + f).
double fitness(double f_value);

} // namespace papr
