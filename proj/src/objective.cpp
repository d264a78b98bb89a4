#include "papr_pts/objective.hpp"

#include "papr_pts/errors.hpp"

#include <algorithm>

namespace papr {

namespace {

constexpr double kRecheckTolerance = 1e-8;

} // namespace

PaprObjective::PaprObjective(const SubblockSignals& subblocks, const PhaseSet& phase_set)
    : subblocks_(&subblocks), phase_set_(&phase_set)
{
}

double PaprObjective::reference(const PhaseVector& b, CVec& signal) const
{
    if (b.m() != m()) {
        throw InvalidInput("objective: phase vector length does not match subblock count");
    }
    signal.resize(length());
    if (phase_set_->w() == 2) {
        combine_signs_into(*subblocks_, b.exponents, signal);
    } else {
        combine_into(*subblocks_, b.factors(*phase_set_), signal);
    }
    return papr(signal);
}

double PaprObjective::reference(const PhaseVector& b) const
{
    CVec signal;
    return reference(b, signal);
}

double PaprObjective::evaluate(const PhaseVector& b, CVec& signal)
{
    ++calls_;
    return reference(b, signal);
}

double PaprObjective::evaluate(const PhaseVector& b)
{
    CVec signal;
    return evaluate(b, signal);
}

double PaprObjective::evaluate_change(std::span<const cplx> base, std::span<const Change> changes, CVec& out)
{
    const std::size_t len = length();
    if (base.size() != len) {
        throw InvalidInput("objective: base signal has the wrong length");
    }
    ++calls_;
    out.resize(len);

    // Each pass reads `src` and writes `out`; the first pass reads the base
    // so no separate copy is needed.
    std::span<const cplx> src = base;
    for (const Change& c : changes) {
        if (c.coordinate < 0 || c.coordinate >= m()) {
            throw InvalidInput("objective: change coordinate out of range");
        }
        if (c.from == c.to) {
            continue;
        }
        const cplx d = (*phase_set_)[c.to] - (*phase_set_)[c.from];
        const auto x = (*subblocks_)[c.coordinate];
        const double dr = d.real();
        const double di = d.imag();
        // std::complex<double> is layout-compatible with double[2].
        const double* in = reinterpret_cast<const double*>(src.data());
        const double* xs = reinterpret_cast<const double*>(x.data());
        double* dst = reinterpret_cast<double*>(out.data());
        if (di == 0.0) {
            for (std::size_t k = 0; k < 2 * len; ++k) {
                dst[k] = in[k] + dr * xs[k];
            }
        } else {
            for (std::size_t k = 0; k < 2 * len; k += 2) {
                const double xr = xs[k];
                const double xi = xs[k + 1];
                dst[k] = in[k] + (dr * xr - di * xi);
                dst[k + 1] = in[k + 1] + (dr * xi + di * xr);
            }
        }
        src = out;
    }
    if (src.data() != out.data()) {
        std::copy(base.begin(), base.end(), out.begin());
    }

    return papr(out);
}

Incumbent::Incumbent(PhaseVector b, double f_value, CVec signal)
    : b_(std::move(b)), f_value_(f_value), signal_(std::move(signal))
{
}

bool Incumbent::offer(const PhaseVector& b, double approx_f_value, const PaprObjective& objective)
{
    if (approx_f_value > f_value_ * (1.0 + kRecheckTolerance) || b == b_) {
        return false;
    }
    const double exact = objective.reference(b, scratch_);
    if (!(exact < f_value_)) {
        return false;
    }
    b_ = b;
    f_value_ = exact;
    std::swap(signal_, scratch_);
    return true;
}

bool Incumbent::offer_exact(const PhaseVector& b, double f_value, std::span<const cplx> signal)
{
    if (!(f_value < f_value_)) {
        return false;
    }
    b_ = b;
    f_value_ = f_value;
    signal_.assign(signal.begin(), signal.end());
    return true;
}

} // namespace papr
