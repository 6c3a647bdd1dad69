#pragma once

#include <cmath>

#include "ionet/tape.hpp"

namespace ionet::ad {

// Scalar operation overloads shared by taped (Var) and plain (double) code
// paths. Generic loss/jet code is written once against these, which keeps
// the two paths arithmetically identical.

inline double s_add(double a, double b) { return a + b; }
inline double s_sub(double a, double b) { return a - b; }
inline double s_mul(double a, double b) { return a * b; }
inline double s_scale(double a, double c) { return c * a; }
inline double s_addc(double a, double c) { return a + c; }
inline double s_tanh(double a) { return std::tanh(a); }
inline double s_value(double a) { return a; }

inline Var s_add(Var a, Var b) { return a.tape->add(a, b); }
inline Var s_sub(Var a, Var b) { return a.tape->sub(a, b); }
inline Var s_mul(Var a, Var b) { return a.tape->mul(a, b); }
inline Var s_scale(Var a, double c) { return a.tape->scale(a, c); }
inline Var s_addc(Var a, double c) { return a.tape->add_scalar(a, c); }
inline Var s_tanh(Var a) { return a.tape->tanh(a); }
inline double s_value(Var a) { return a.tape->scalar(a); }

/// Scalar second-order jet: a value with its first and second derivative
/// along one chosen coordinate. Arithmetic follows second-order Taylor
/// propagation; an affine chain keeps d2 exactly zero.
template <class S>
struct Jet {
  S value;
  S d1;
  S d2;
};

using Jet2 = Jet<Var>;     // tape-recorded; differentiable w.r.t. parameters
using JetNum = Jet<double>;

inline Jet2 jet_variable(Tape& tape, double x, double seed = 1.0) {
  return {tape.constant(x), tape.constant(seed), tape.constant(0.0)};
}
inline Jet2 jet_constant(Tape& tape, double c) {
  return {tape.constant(c), tape.constant(0.0), tape.constant(0.0)};
}
inline JetNum jet_variable(double x, double seed = 1.0) { return {x, seed, 0.0}; }
inline JetNum jet_constant(double c) { return {c, 0.0, 0.0}; }

template <class S>
Jet<S> operator+(const Jet<S>& a, const Jet<S>& b) {
  return {s_add(a.value, b.value), s_add(a.d1, b.d1), s_add(a.d2, b.d2)};
}

template <class S>
Jet<S> operator-(const Jet<S>& a, const Jet<S>& b) {
  return {s_sub(a.value, b.value), s_sub(a.d1, b.d1), s_sub(a.d2, b.d2)};
}

template <class S>
Jet<S> operator*(const Jet<S>& a, const Jet<S>& b) {
  // (fg)'' = f''g + 2f'g' + fg''
  S cross = s_scale(s_mul(a.d1, b.d1), 2.0);
  S ends = s_add(s_mul(a.d2, b.value), s_mul(a.value, b.d2));
  return {s_mul(a.value, b.value),
          s_add(s_mul(a.d1, b.value), s_mul(a.value, b.d1)),
          s_add(ends, cross)};
}

template <class S>
Jet<S> jet_scale(const Jet<S>& a, double c) {
  return {s_scale(a.value, c), s_scale(a.d1, c), s_scale(a.d2, c)};
}

template <class S>
Jet<S> jet_shift(const Jet<S>& a, double c) {
  return {s_addc(a.value, c), a.d1, a.d2};
}

template <class S>
Jet<S> jet_tanh(const Jet<S>& a) {
  // tanh' = 1 - t^2, tanh'' = -2 t (1 - t^2)
  S t = s_tanh(a.value);
  S s = s_addc(s_scale(s_mul(t, t), -1.0), 1.0);
  S d1 = s_mul(s, a.d1);
  S curv = s_scale(s_mul(s, s_mul(t, s_mul(a.d1, a.d1))), -2.0);
  S d2 = s_add(curv, s_mul(s, a.d2));
  return {t, d1, d2};
}

}  // namespace ionet::ad
