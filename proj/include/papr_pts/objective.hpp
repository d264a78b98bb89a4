#pragma once

#include "papr_pts/pts.hpp"

#include <cstddef>
#include <span>

namespace papr {

/// One coordinate moved from exponent `from` to exponent `to`.
struct Change {
    int coordinate;
    int from;
    int to;
};

/// The PAPR objective over a fixed set of subblock signals, with a call counter.
///
/// Every search evaluation goes through `evaluate` or `evaluate_change` and is
/// counted. `reference` recomputes a vector from scratch in the canonical
/// accumulation order and is not counted; optimizers use it to confirm the
/// value they report.
class PaprObjective {
public:
    PaprObjective(const SubblockSignals& subblocks, const PhaseSet& phase_set);
    // Both arguments are held by reference.
    PaprObjective(SubblockSignals&&, const PhaseSet&) = delete;
    PaprObjective(const SubblockSignals&, PhaseSet&&) = delete;

    const SubblockSignals& subblocks() const noexcept { return *subblocks_; }
    const PhaseSet& phase_set() const noexcept { return *phase_set_; }
    int m() const noexcept { return subblocks_->m(); }
    std::size_t length() const noexcept { return subblocks_->length(); }

    double evaluate(const PhaseVector& b, CVec& signal);
    double evaluate(const PhaseVector& b);

    /// Value of `base` with the listed coordinates rotated. `out` receives the
    /// updated signal and may not alias `base`.
    double evaluate_change(std::span<const cplx> base, std::span<const Change> changes, CVec& out);

    double reference(const PhaseVector& b, CVec& signal) const;
    double reference(const PhaseVector& b) const;

    std::size_t calls() const noexcept { return calls_; }

private:
    const SubblockSignals* subblocks_;
    const PhaseSet* phase_set_;
    std::size_t calls_ = 0;
};

/// Best-so-far memory whose value is always a reference evaluation.
///
/// Candidates arrive with a value that may carry accumulated rounding from
/// incremental updates. Any candidate within a relative 1e-8 of the incumbent
/// is re-evaluated from scratch before the comparison, so the incumbent is the
/// exact minimum of the reference values seen. Ties keep the incumbent.
class Incumbent {
public:
    Incumbent(PhaseVector b, double f_value, CVec signal);

    /// Returns true if the candidate replaced the incumbent.
    bool offer(const PhaseVector& b, double approx_f_value, const PaprObjective& objective);
    /// Candidate whose value and signal came from a reference-order evaluation.
    bool offer_exact(const PhaseVector& b, double f_value, std::span<const cplx> signal);

    const PhaseVector& b() const noexcept { return b_; }
    double f_value() const noexcept { return f_value_; }
    std::span<const cplx> signal() const noexcept { return signal_; }

private:
    PhaseVector b_;
    double f_value_;
    CVec signal_;
    CVec scratch_;
};

} // namespace papr
