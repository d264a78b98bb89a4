#pragma once

#include <complex>
#include <span>
#include <string_view>
#include <vector>

namespace papr {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

enum class Modulation { Qpsk, Qam16 };

std::string_view to_string(Modulation modulation) noexcept;

/// Unit-average-energy constellation.
class Constellation {
public:
    static Constellation qpsk();
    /// {±1,±3}×{±1,±3} lattice scaled by 1/√10.
    static Constellation qam16();
    static Constellation make(Modulation modulation);

    Modulation modulation() const noexcept { return modulation_; }
    std::span<const cplx> points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }

private:
    Constellation(Modulation modulation, CVec points);

    Modulation modulation_;
    CVec points_;
};

/// Frequency-domain OFDM block X of length N (a power of two).
class OfdmBlock {
public:
    explicit OfdmBlock(CVec symbols);

    std::span<const cplx> symbols() const noexcept { return symbols_; }
    int n() const noexcept { return static_cast<int>(symbols_.size()); }

private:
    CVec symbols_;
};

/// Oversampled time-domain signal with N·L samples.
class TimeSignal {
public:
    TimeSignal(CVec samples, int oversampling);

    std::span<const cplx> samples() const noexcept { return samples_; }
    int oversampling() const noexcept { return oversampling_; }
    int n() const noexcept { return static_cast<int>(samples_.size()) / oversampling_; }

private:
    CVec samples_;
    int oversampling_;
};

inline constexpr int kDefaultOversampling = 4;

OfdmBlock map_symbols(std::span<const int> indices, const Constellation& constellation);

/// x[k] = N^{-1/2} Σ_n X_n exp(j2πnk/(LN)), k = 0..LN-1.
///
/// Computed as a length-LN inverse FFT of X followed by (L-1)N zeros.
TimeSignal oversampled_idft(const OfdmBlock& block, int oversampling = kDefaultOversampling);

/// Same as oversampled_idft but on a raw spectrum and into a caller buffer
/// of size oversampling·spectrum.size(). `spectrum.size()` need not be a
/// power of two.
void oversampled_idft_into(std::span<const cplx> spectrum, int oversampling, std::span<cplx> out);

/// Peak power over mean power. Throws DegenerateSignal on an all-zero input.
double papr(std::span<const cplx> samples);
double papr(const TimeSignal& signal);

/// 10·log10(ratio). Throws InvalidInput for ratio <= 0.
double papr_db(double ratio);

} // namespace papr
