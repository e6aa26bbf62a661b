#pragma once

#include <array>
#include <vector>

#include "gbi/qcorr.hpp"

namespace gbi {

// Deterministic local model: assign the label whose outcome vector is closest
// to the single-party correlation function at the observer's own settings.
int greedy_label(int d, const SettingVector& y);

// Phase translation that increments greedy labels by m: component i equals
// ((d-m)*i mod d)/d.  (Adding it to y rotates E(y) one frame step per unit m.)
SettingVector label_shift(int d, int m);

// Explicit qutrit region model: the three band conditions on the torus,
// label-m region = base region translated by label_shift(3, m).  Shifts move
// the whole partition rigidly.  Implemented through an integer reduction so
// the three regions tile exactly, including band boundaries.
int region_label_qutrit(const SettingVector& y, const SettingVector& shifts);

// v_{d, sum of per-party greedy labels mod d}: the postulated-optimal
// deterministic local-realistic prediction.
std::vector<double> classical_corr(const Scenario& sc, const std::vector<SettingVector>& settings,
                                   FrameKind kind = FrameKind::Recursive);

// Indicator to integrate against in the contraction integral.
enum class ContractionWeight { Region0, FullTorus };

// Integral of E_3(x + y) over {y : weight(y) = 1}, returned as a 2-vector.
std::array<double, 2> contraction_integral(const PhaseSum& x, ContractionWeight weight);

// Proportionality factor of the contraction against E_3(x): equals
// (9 + 2*sqrt(3)*pi) / (12*pi^2) for the region-0 weight, any x.
// Throws numerical_error when |E_3(x)| < 1e-6.
double contraction_check(const PhaseSum& x);

} // namespace gbi
