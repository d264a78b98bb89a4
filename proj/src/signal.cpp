#include "papr_pts/signal.hpp"

#include "papr_pts/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

namespace papr {

namespace {

// FFTW's planner is not re-entrant; execution of an existing plan on new
// arrays is. Plans are created once per length and kept for the process
// lifetime. FFTW_ESTIMATE keeps the chosen algorithm independent of timing,
// so repeated runs produce identical bits.
fftw_plan backward_plan(std::size_t length)
{
    static std::mutex mutex;
    static std::map<std::size_t, fftw_plan> plans;

    std::lock_guard lock(mutex);
    if (auto it = plans.find(length); it != plans.end()) {
        return it->second;
    }
    std::vector<fftw_complex> in(length), out(length);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(length), in.data(), out.data(), FFTW_BACKWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) {
        throw std::runtime_error("fftw: unable to plan transform of length " + std::to_string(length));
    }
    plans.emplace(length, plan);
    return plan;
}

} // namespace

std::string_view to_string(Modulation modulation) noexcept
{
    switch (modulation) {
    case Modulation::Qpsk:
        return "qpsk";
    case Modulation::Qam16:
        return "16qam";
    }
    return "unknown";
}

Constellation::Constellation(Modulation modulation, CVec points)
    : modulation_(modulation), points_(std::move(points))
{
}

Constellation Constellation::qpsk()
{
    const double a = 1.0 / std::sqrt(2.0);
    return Constellation(Modulation::Qpsk, {{a, a}, {-a, a}, {-a, -a}, {a, -a}});
}

Constellation Constellation::qam16()
{
    const double scale = 1.0 / std::sqrt(10.0);
    constexpr double levels[] = {-3.0, -1.0, 1.0, 3.0};
    CVec points;
    points.reserve(16);
    for (double re : levels) {
        for (double im : levels) {
            points.emplace_back(re * scale, im * scale);
        }
    }
    return Constellation(Modulation::Qam16, std::move(points));
}

Constellation Constellation::make(Modulation modulation)
{
    return modulation == Modulation::Qpsk ? qpsk() : qam16();
}

OfdmBlock::OfdmBlock(CVec symbols) : symbols_(std::move(symbols))
{
    if (symbols_.empty() || !std::has_single_bit(symbols_.size())) {
        throw InvalidInput("OfdmBlock: subcarrier count must be a positive power of two, got " +
                           std::to_string(symbols_.size()));
    }
}

TimeSignal::TimeSignal(CVec samples, int oversampling)
    : samples_(std::move(samples)), oversampling_(oversampling)
{
    if (oversampling_ < 1) {
        throw InvalidInput("TimeSignal: oversampling factor must be >= 1");
    }
    if (samples_.empty() || samples_.size() % static_cast<std::size_t>(oversampling_) != 0) {
        throw InvalidInput("TimeSignal: sample count must be a positive multiple of L");
    }
}

OfdmBlock map_symbols(std::span<const int> indices, const Constellation& constellation)
{
    const auto points = constellation.points();
    CVec symbols(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        const int idx = indices[i];
        if (idx < 0 || static_cast<std::size_t>(idx) >= points.size()) {
            throw InvalidInput("map_symbols: index " + std::to_string(idx) + " at position " +
                               std::to_string(i) + " outside constellation of size " +
                               std::to_string(points.size()));
        }
        symbols[i] = points[static_cast<std::size_t>(idx)];
    }
    return OfdmBlock(std::move(symbols));
}

void oversampled_idft_into(std::span<const cplx> spectrum, int oversampling, std::span<cplx> out)
{
    if (oversampling < 1) {
        throw InvalidInput("oversampled_idft: oversampling factor must be >= 1");
    }
    const std::size_t n = spectrum.size();
    const std::size_t length = n * static_cast<std::size_t>(oversampling);
    if (n == 0 || out.size() != length) {
        throw InvalidInput("oversampled_idft: output buffer must hold L·N samples");
    }

    CVec padded(length, cplx{0.0, 0.0});
    std::copy(spectrum.begin(), spectrum.end(), padded.begin());

    fftw_execute_dft(backward_plan(length), reinterpret_cast<fftw_complex*>(padded.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));

    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& v : out) {
        v *= scale;
    }
}

TimeSignal oversampled_idft(const OfdmBlock& block, int oversampling)
{
    if (oversampling < 1) {
        throw InvalidInput("oversampled_idft: oversampling factor must be >= 1");
    }
    CVec samples(block.symbols().size() * static_cast<std::size_t>(oversampling));
    oversampled_idft_into(block.symbols(), oversampling, samples);
    return TimeSignal(std::move(samples), oversampling);
}

double papr(std::span<const cplx> samples)
{
    // Four interleaved lanes; the fixed reduction order keeps results
    // bit-identical for identical input.
    constexpr std::size_t kLanes = 4;
    double peak[kLanes] = {};
    double total[kLanes] = {};
    const std::size_t n = samples.size();
    const std::size_t blocked = n - n % kLanes;
    for (std::size_t k = 0; k < blocked; k += kLanes) {
        for (std::size_t j = 0; j < kLanes; ++j) {
            const double p = std::norm(samples[k + j]);
            peak[j] = p > peak[j] ? p : peak[j];
            total[j] += p;
        }
    }
    for (std::size_t k = blocked; k < n; ++k) {
        const double p = std::norm(samples[k]);
        peak[0] = p > peak[0] ? p : peak[0];
        total[0] += p;
    }
    const double max_power = std::max(std::max(peak[0], peak[1]), std::max(peak[2], peak[3]));
    const double sum = (total[0] + total[1]) + (total[2] + total[3]);
    if (n == 0 || !(sum > 0.0)) {
        throw DegenerateSignal("papr: signal has zero average power");
    }
    return max_power / (sum / static_cast<double>(n));
}

double papr(const TimeSignal& signal)
{
    return papr(signal.samples());
}

double papr_db(double ratio)
{
    if (!(ratio > 0.0)) {
        throw InvalidInput("papr_db: ratio must be positive");
    }
    return 10.0 * std::log10(ratio);
}

} // namespace papr
