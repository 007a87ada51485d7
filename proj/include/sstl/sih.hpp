#pragma once

#include "sstl/error.hpp"
#include "sstl/rational.hpp"

namespace sstl {

// Nyquist-style sampling adequacy report. The signal bandwidth is declared
// by the user, not estimated: signal invariance between ticks is an assumed
// hypothesis and this check is the only guard the tool places on it.
struct SihReport {
    Rational sampling_frequency;  // Hz
    Rational signal_bandwidth;    // Hz
    int kappa;
    bool satisfied;
};

inline SihReport check_sih(const Rational& fs, const Rational& fm, int kappa) {
    if (!(fs > Rational(0))) throw Error("sampling frequency must be positive");
    if (fm < Rational(0)) throw Error("signal bandwidth must be non-negative");
    if (kappa < 2) throw Error("kappa must be at least 2");
    return SihReport{fs, fm, kappa, fs >= Rational(kappa) * fm};
}

}  // namespace sstl
