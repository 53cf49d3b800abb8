#pragma once

#include <cmath>
#include <initializer_list>

#include <gtest/gtest.h>

#include "tradeoff/errors.hpp"
#include "tradeoff/qmat.hpp"

namespace testing_util {

using tradeoff::Complex;
using tradeoff::Matrix;
using tradeoff::Vector;

inline Vector ket(std::initializer_list<Complex> a) {
  Vector v(static_cast<Eigen::Index>(a.size()));
  Eigen::Index i = 0;
  for (auto z : a) v(i++) = z;
  return v;
}

inline Vector ket0() { return ket({1, 0}); }
inline Vector ket1() { return ket({0, 1}); }
inline Vector ket_plus() { return ket({1 / std::sqrt(2.0), 1 / std::sqrt(2.0)}); }

inline Matrix pauli_x() { return (Matrix(2, 2) << 0, 1, 1, 0).finished(); }
inline Matrix pauli_z() { return (Matrix(2, 2) << 1, 0, 0, -1).finished(); }
inline Matrix hadamard() { return (Matrix(2, 2) << 1, 1, 1, -1).finished() / std::sqrt(2.0); }

template <typename Fn>
tradeoff::ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const tradeoff::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return tradeoff::ErrorCode::InternalError;
}

}  // namespace testing_util
