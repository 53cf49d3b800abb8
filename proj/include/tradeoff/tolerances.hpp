#pragma once

namespace tradeoff::tol {

// Slack accepted when validating operators.
inline constexpr double herm = 1e-9;
inline constexpr double trace = 1e-9;
inline constexpr double psd = 1e-9;

// Eigenvalues below this are treated as exact zeros.
inline constexpr double eig = 1e-12;

// Outcomes with smaller probability carry no conditional state.
inline constexpr double prob = 1e-12;

// Choi / frame-operator rank threshold.
inline constexpr double rank = 1e-9;

// |<psi_i|psi_j>| below this is an exact zero for path connectivity.
inline constexpr double overlap = 1e-12;

// Trace preservation and probability normalization.
inline constexpr double normalization = 1e-9;

// Purity slack used to classify ensemble entries as pure.
inline constexpr double purity = 1e-9;

}  // namespace tradeoff::tol
