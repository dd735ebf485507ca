#pragma once

// Printed closed forms for expected L2^2.  Parameterisation of the diagonal
// families: N=2 cut v gives A = sqrt(2) v - 1 (v >= 1/sqrt(2)) or
// B = sqrt(2) v (v <= 1/sqrt(2)); N=3 cuts (v1, v2) give A = sqrt(2) v1,
// B = sqrt(2) v2 - 1.

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

namespace strata::closed {

template <class Scalar>
Scalar mc(int n, int dim) {
  using std::pow;
  return (pow(Scalar(2), -dim) - pow(Scalar(3), -dim)) / Scalar(n);
}

/// Vertical strips of width 1/N in [0,1]^d.
template <class Scalar>
Scalar vertical(int n, int dim) {
  using std::pow;
  const Scalar nn(n);
  return (pow(Scalar(2), -dim) - (3 * nn - 1) / (2 * nn) * pow(Scalar(3), -dim)) / nn;
}

/// Convex equivolume two-set partitions of the square; A in [0,1].
template <class Scalar>
Scalar n2_convex(Scalar a) {
  if (a >= Scalar(0.5)) return (2 * a * a * a + 3 * a * a - 12 * a + 25) / 360;
  return (-6 * a * a * a + 3 * a * a - 6 * a + 23) / 360;
}

/// One diagonal cut above the anti-diagonal; A in [0,1].
template <class Scalar>
Scalar n2_diag(Scalar a) {
  const Scalar a2 = a * a, a3 = a2 * a, a4 = a3 * a, a5 = a4 * a, a6 = a5 * a;
  return (-18 - 30 * a + a2 - 36 * a3 + 52 * a4 - 12 * a5 - 2 * a6) / (-360 - 720 * a + 360 * a2);
}

/// One diagonal cut below the anti-diagonal; B in [0,1].
template <class Scalar>
Scalar n2_diag_b(Scalar b) {
  const Scalar b2 = b * b, b3 = b2 * b, b4 = b3 * b, b6 = b4 * b2;
  return (-135 + 120 * b + 175 * b2 - 288 * b3 + 112 * b4 - 2 * b6) / (360 * (b2 - 2));
}

/// Two cuts, 1/2 <= A <= 1 and 2A-1 <= B <= A (rational with 12960).
template <class Scalar>
Scalar n3_main(Scalar A, Scalar B) {
  auto P = [](Scalar t, int k) { return std::pow(t, k); };
  const Scalar den = 12960 * A * A * (B - 1) * (B - 1) * (-1 + A * A + (-2 + B) * B);
  const Scalar num =
      128 * P(B, 7) - 64 * P(B, 8) + P(A, 10) * (-1440 + 2880 * B - 1440 * P(B, 2)) +
      P(A, 9) * (2592 - 2592 * B - 2592 * P(B, 2) + 2592 * P(B, 3)) +
      P(A, 8) * (-3832 + 3936 * B - 1248 * P(B, 2) + 5760 * P(B, 3) - 4680 * P(B, 4)) +
      P(A, 7) * (10368 - 12288 * B - 4032 * P(B, 2) + 8640 * P(B, 3) - 6336 * P(B, 4) + 4032 * P(B, 5)) +
      P(A, 6) * (-13936 + 19408 * B + 4360 * P(B, 2) - 12864 * P(B, 3) - 1104 * P(B, 4) + 6480 * P(B, 5) -
                 3240 * P(B, 6)) +
      P(A, 5) * (5472 - 8544 * B - 8736 * P(B, 2) + 20384 * P(B, 3) - 5280 * P(B, 4) - 2400 * P(B, 5) -
                 1440 * P(B, 6) + 1440 * P(B, 7)) +
      P(A, 4) * (1908 - 1920 * B + 5496 * P(B, 2) - 8976 * P(B, 3) - 480 * P(B, 4) + 5760 * P(B, 5) -
                 1608 * P(B, 6) - 144 * P(B, 7) - 36 * P(B, 8)) +
      P(A, 3) * (-480 - 1440 * B + 1920 * P(B, 2) + 3840 * P(B, 3) - 7840 * P(B, 4) + 3104 * P(B, 5)) +
      P(A, 2) * (-787 + 1740 * B + 528 * P(B, 2) - 6292 * P(B, 3) + 9198 * P(B, 4) - 3492 * P(B, 5) -
                 212 * P(B, 6) + 84 * P(B, 7) + 237 * P(B, 8) - 72 * P(B, 9) - 36 * P(B, 10)) +
      A * (-768 * P(B, 6) + 384 * P(B, 7));
  return num / den;
}

/// Two cuts, 1/2 <= A < 1 and 0 <= B <= 2A-1 (rational with 1620).
template <class Scalar>
Scalar n3_case2(Scalar A, Scalar B) {
  auto P = [](Scalar t, int k) { return std::pow(t, k); };
  const Scalar den = 1620 * A * A * (B - 1) * (B - 1) * (A * A + (B - 2) * B - 1);
  const Scalar num =
      P(A, 8) * (-6 * B * B + 12 * B - 14) + 48 * P(A, 7) * B +
      P(A, 6) * (-3 * P(B, 4) + 12 * P(B, 3) + 140 * B * B - 544 * B + 283) +
      P(A, 5) * (208 * P(B, 3) - 672 * B * B + 1152 * B - 576) +
      P(A, 4) * (-3 * P(B, 6) - 18 * P(B, 5) - 15 * P(B, 4) - 420 * P(B, 3) + 1065 * B * B - 942 * B + 333) +
      P(A, 3) * (208 * P(B, 5) - 440 * P(B, 4) + 480 * P(B, 3) - 480 * B * B + 120) +
      A * A * (-6 * P(B, 8) - 24 * P(B, 7) + 134 * P(B, 6) - 444 * P(B, 5) + 870 * P(B, 4) - 704 * P(B, 3) +
               264 * B * B + 168 * B - 146) +
      A * (48 * P(B, 7) - 96 * P(B, 6)) - 8 * P(B, 8) + 16 * P(B, 7);
  return num / den;
}

/// The aggregated rational with 25920, as printed; same domain as n3_main.
template <class Scalar>
Scalar n3_appendix(Scalar A, Scalar B) {
  auto P = [](Scalar t, int k) { return std::pow(t, k); };
  const Scalar den = 25920 * A * A * (A * A + (B - 2) * B - 1);
  const Scalar num =
      480 * P(A, 8) + 6912 * P(A, 7) * (B + 1) + 16 * P(A, 6) * (-527 + 330 * B + 195 * B * B) -
      384 * P(A, 5) * (13 + 67 * B + 87 * B * B + 33 * P(B, 3)) +
      12 * P(A, 4) * (829 + 1952 * B + 2720 * B * B + 1228 * P(B, 3) + 431 * P(B, 4)) +
      48 * P(A, 3) * (-54 - 181 * B - 204 * B * B + 23 * P(B, 3) + 120 * P(B, 4) + 24 * P(B, 5)) -
      4 * A * A * (118 + 104 * B + 345 * B * B + 776 * P(B, 3) - 728 * P(B, 4) + 1368 * P(B, 5) + 393 * P(B, 6)) +
      48 * A * (-10 + 7 * B + 76 * B * B - 3 * P(B, 3) - 140 * P(B, 4) - 42 * P(B, 5) + 36 * P(B, 6) + 12 * P(B, 7)) -
      (56 * B + 774 * B * B + 556 * P(B, 3) - 1364 * P(B, 4) - 1728 * P(B, 5) - 70 * P(B, 6) + 396 * P(B, 7) +
       99 * P(B, 8));
  return num / den;
}

namespace detail {

template <class Scalar>
Scalar appendix_f1(Scalar x, Scalar y, Scalar A) {
  return x * y * (2 + 3 * (-4 + 3 * A * A) * x * y) / (9 * A * A);
}

// The printed trailing term reads "2 x^4 b"; b = 1 is the reading that
// matches the geometry.
template <class Scalar>
Scalar appendix_f2(Scalar x, Scalar y, Scalar A, Scalar B) {
  const Scalar D = A * A + (B - 2) * B - 1;
  const Scalar num =
      x * x * x * (-2 * y * (-6 * A * A - 3 * (B - 2) * B + 1) - 8 * A) +
      x * x * (3 * A * A * y * y * (3 * A * A + 3 * (B - 2) * B + 1) - 4 * A * y * (6 * A * A + 3 * (B - 2) * B - 1) +
               6 * A * A + (2 - B) * B + 1) +
      x * (4 * A * A * A - 2 * A * A * y + 2 * A * (B - 2) * B - 2 * A) + 2 * x * x * x * x;
  return num / (9 * A * A * D);
}

template <class Scalar>
Scalar appendix_f3(Scalar x, Scalar y, Scalar A, Scalar B) {
  const Scalar D = A * A + (B - 2) * B - 1;
  const Scalar A2 = A * A, A3 = A2 * A, A4 = A3 * A;
  const Scalar y2 = y * y, y3 = y2 * y, y4 = y3 * y;
  const Scalar bb = (B - 2) * B;
  const Scalar num =
      2 * x * x * x * x + x * x * x * (12 * A2 * y - 8 * A + 6 * bb * y - 2 * y) +
      x * (12 * A4 * y - 24 * A3 * y2 - 4 * A3 + 6 * A2 * B * B * y - 12 * A2 * B * y + 12 * A2 * y3 + 12 * A2 * y -
           12 * A * bb * y2 + 2 * A * bb - 4 * A * y2 - 2 * A + 6 * bb * y3 - 2 * y3) +
      x * x * (9 * A4 * y2 - 24 * A3 * y + 3 * A2 * (3 * bb + 1) * y2 + 10 * A2 - 12 * A * bb * y - 4 * A * y +
               (2 - B) * B + 4 * y2 + 1) +
      2 * A * bb * y - 8 * A * y3 - 2 * A * y - bb * y2 + 2 * y4 + y2 + 2 * A2 * B + 10 * A2 * y2 + A2 - 4 * A3 * y -
      A2 * B * B;
  return num / (9 * A2 * D);
}

template <class Scalar>
Scalar appendix_f4_printed(Scalar x, Scalar y, Scalar A, Scalar B) {
  const Scalar t = 1 - 3 * x * y;
  return (-1 - 2 * B * t * t + B * B * t * t + x * x * (4 + 3 * y * (-4 * x + y + 3 * A * A * y))) /
         (9 * (-1 + A * A + (-2 + B) * B));
}

// Numerator shared by the printed f5 and f6 displays.
template <class Scalar>
Scalar appendix_p56(Scalar x, Scalar y, Scalar A, Scalar B) {
  const Scalar A2 = A * A, A3 = A2 * A, A4 = A3 * A;
  const Scalar B2 = B * B, B3 = B2 * B, B4 = B3 * B;
  const Scalar y2 = y * y, y3 = y2 * y, y4 = y3 * y;
  const Scalar bb = (B - 2) * B;
  return A4 * B2 - 2 * A4 * B * y + 2 * A4 * B + A4 * y2 - 2 * A4 * y + A4 + 2 * A2 * (B + 1) * (B + 1) * (2 * B2 + 1) -
         8 * A2 * B * y3 + 2 * A2 * (B * (7 * B + 10) + 6) * y2 - 4 * A2 * B * (B * (3 * B + 5) + 4) * y +
         2 * A2 * y4 - 8 * A2 * y3 - 8 * A2 * y + x * x * x * x * (-2 * A2 - 2 * B2 + 4 * B + 2) +
         x * x * x *
             (-6 * A4 * y + 8 * A3 + 8 * A2 * y - 8 * A + 6 * B4 * y + B3 * (8 - 24 * y) - 2 * B2 * (4 - 10 * y) +
              8 * B * (y - 2) - 2 * y) +
         x * x *
             (9 * A4 * bb * y2 + 12 * A4 * B * y - 3 * A4 * y2 + 12 * A4 * y + A4 - 24 * A3 * bb * y - 16 * A3 * B -
              8 * A3 * y - 16 * A3 + 2 * A2 * (8 * B2 + 7) + 3 * A2 * (bb - 1) * (3 * bb - 1) * y2 +
              8 * A2 * (B + 1) * (3 * bb - 1) * y - 12 * A * B4 * y + 8 * A * B3 * (6 * y - 2) +
              8 * A * B2 * (2 - 5 * y) - 16 * A * B * (y - 2) + 4 * A * y - 5 * B4 + 8 * B3 * y + 4 * B3 -
              4 * B2 * y * (y + 2) + 8 * B2 + 8 * B * (y - 1) * (y - 1) + 1) +
         x * (-6 * A4 * B2 * y + 12 * A4 * B * y2 - 12 * A4 * B * y - 2 * A4 * B - 6 * A4 * y3 + 12 * A4 * y2 -
              4 * A4 * y - 2 * A4 + 12 * A3 * B2 - 16 * A3 * B * y + 8 * A3 * B + 8 * A3 * y2 - 16 * A3 * y +
              12 * A3 - 2 * A2 * B * (6 * B3 - 29 * B - 30) * y - 12 * A2 * bb * y3 +
              8 * A2 * (B + 1) * (3 * bb - 2) * y2 - 4 * A2 * (B + 1) * (B * (3 * B + 2) + 2) + 4 * A2 * y3 +
              18 * A2 * y + 10 * A * B4 - 16 * A * B3 * y - 8 * A * B3 + 8 * A * B2 * y * (y + 2) - 16 * A * B2 -
              16 * A * B * (y - 1) * (y - 1) - 2 * A);
}

template <class Scalar>
Scalar appendix_f5(Scalar x, Scalar y, Scalar A, Scalar B) {
  return appendix_p56(x, y, A, B) / (9 * A * A * (B - 1) * (B - 1) * (A * A + (B - 2) * B - 1));
}

template <class Scalar>
Scalar appendix_f6_printed(Scalar x, Scalar y, Scalar A, Scalar B) {
  return appendix_p56(x, y, A, B) / (9 * (B - 1) * (B - 1) * (A * A + (B - 2) * B - 1));
}

// Re-derived from q1 = 1, q3 = 0, q2 = (xy - A^2/2) / |Omega_2|.  The printed
// display uses x^2/2 in place of A^2/2 in q2.
template <class Scalar>
Scalar appendix_f4_derived(Scalar x, Scalar y, Scalar A, Scalar B) {
  const Scalar A2 = A * A, B2 = B * B, s = x * y, s2 = s * s;
  const Scalar num = 9 * A2 * s2 - 12 * A2 * s + 4 * A2 + 9 * B2 * s2 - 6 * B2 * s + B2 - 18 * B * s2 + 12 * B * s -
                     2 * B + 3 * s2 - 1;
  return num / (9 * (A2 + B2 - 2 * B - 1));
}

// Re-derived from q1 = 1, q2 = (xy - A^2/2 - (x+y-1-B)^2/2) / |Omega_2|,
// q3 = (x+y-1-B)^2 / (1-B)^2.
template <class Scalar>
Scalar appendix_f6_derived(Scalar x, Scalar y, Scalar A, Scalar B) {
  const Scalar A2 = A * A, B2 = B * B, B3 = B2 * B, B4 = B3 * B;
  const Scalar x2 = x * x, x3 = x2 * x, x4 = x3 * x;
  const Scalar y2 = y * y, y3 = y2 * y, y4 = y3 * y;
  const Scalar num =
      9 * A2 * B2 * x2 * y2 - 18 * A2 * B2 * x * y + 9 * A2 * B2 - 18 * A2 * B * x2 * y2 + 12 * A2 * B * x2 * y +
      12 * A2 * B * x * y2 + 12 * A2 * B * x * y - 10 * A2 * B * x - 10 * A2 * B * y + 2 * A2 * B -
      6 * A2 * x3 * y - 3 * A2 * x2 * y2 + 12 * A2 * x2 * y + 5 * A2 * x2 - 6 * A2 * x * y3 + 12 * A2 * x * y2 -
      8 * A2 * x * y - 10 * A2 * x + 5 * A2 * y2 - 10 * A2 * y + 9 * A2 + 9 * B4 * x2 * y2 - 18 * B4 * x * y +
      9 * B4 - 36 * B3 * x2 * y2 + 24 * B3 * x2 * y + 24 * B3 * x * y2 + 24 * B3 * x * y - 20 * B3 * x -
      20 * B3 * y + 4 * B3 - 12 * B2 * x3 * y + 24 * B2 * x2 * y2 - 24 * B2 * x2 * y + 18 * B2 * x2 -
      12 * B2 * x * y3 - 24 * B2 * x * y2 + 38 * B2 * x * y - 12 * B2 * x + 18 * B2 * y2 - 12 * B2 * y - 2 * B2 +
      24 * B * x3 * y - 8 * B * x3 + 24 * B * x2 * y2 - 64 * B * x2 * y + 12 * B * x2 + 24 * B * x * y3 -
      64 * B * x * y2 + 52 * B * x * y - 8 * B * y3 + 12 * B * y2 - 4 * B + 2 * x4 + 4 * x3 * y - 8 * x3 +
      7 * x2 * y2 - 16 * x2 * y + 12 * x2 + 4 * x * y3 - 16 * x * y2 + 20 * x * y - 8 * x + 2 * y4 - 8 * y3 +
      12 * y2 - 8 * y + 1;
  return num / (9 * (B - 1) * (B - 1) * (A2 + B2 - 2 * B - 1));
}

}  // namespace detail

/// Case function f_i of the N=3 family exactly as displayed (i = 1..6).
template <class Scalar>
Scalar appendix_f(int i, Scalar x, Scalar y, Scalar A, Scalar B) {
  switch (i) {
    case 1: return detail::appendix_f1(x, y, A);
    case 2: return detail::appendix_f2(x, y, A, B);
    case 3: return detail::appendix_f3(x, y, A, B);
    case 4: return detail::appendix_f4_printed(x, y, A, B);
    case 5: return detail::appendix_f5(x, y, A, B);
    case 6: return detail::appendix_f6_printed(x, y, A, B);
  }
  throw std::out_of_range("appendix_f: case index must be 1..6");
}

/// Same, with f4 and f6 re-derived from their stated success probabilities.
template <class Scalar>
Scalar appendix_f_derived(int i, Scalar x, Scalar y, Scalar A, Scalar B) {
  if (i == 4) return detail::appendix_f4_derived(x, y, A, B);
  if (i == 6) return detail::appendix_f6_derived(x, y, A, B);
  return appendix_f(i, x, y, A, B);
}

/// Whether (x, y) lies in case region S_i (upper-left half y >= x where the
/// region is stated that way).
bool appendix_region(int i, double x, double y, double A, double B);

enum class Form { mc, vertical, n2_convex, n2_diag, n2_diag_b, n3_main, n3_case2, n3_appendix };

std::string to_string(Form f);
Form form_from_string(const std::string& name);

/// Checked evaluation: parameters are validated against the formula's
/// domain.  mc / vertical take (N, d); n2_* take (A) or (B); n3_* take (A, B).
double evaluate(Form f, std::span<const double> params);

}  // namespace strata::closed
