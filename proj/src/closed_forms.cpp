#include "strata/closed_forms.hpp"

#include <cmath>
#include <stdexcept>

namespace strata::closed {

bool appendix_region(int i, double x, double y, double A, double B) {
  switch (i) {
    case 1: return x + y <= A;
    case 2: return (x <= B && A <= y) || (B <= x && x <= A && A <= y && y <= 1 + B - x);
    case 3: return (x <= A / 2 && A - x <= y && y <= A) || (A / 2 <= x && x <= A && x <= y && y <= A);
    case 4: return A <= x && x <= 1 + B - A && A <= y && y <= 1 + B - x;
    case 5: return B <= x && x <= A && 1 + B - x <= y && y <= 1;
    case 6: return (A <= x && x <= (B + 1) / 2 && 1 + B - x <= y && y <= 1) || ((B + 1) / 2 <= x && x <= y);
  }
  throw std::out_of_range("appendix_region: case index must be 1..6");
}

std::string to_string(Form f) {
  switch (f) {
    case Form::mc: return "mc";
    case Form::vertical: return "vertical";
    case Form::n2_convex: return "n2_convex";
    case Form::n2_diag: return "n2_diag";
    case Form::n2_diag_b: return "n2_diag_b";
    case Form::n3_main: return "n3_main";
    case Form::n3_case2: return "n3_case2";
    case Form::n3_appendix: return "n3_appendix";
  }
  return "unknown";
}

Form form_from_string(const std::string& name) {
  for (Form f : {Form::mc, Form::vertical, Form::n2_convex, Form::n2_diag, Form::n2_diag_b, Form::n3_main,
                 Form::n3_case2, Form::n3_appendix}) {
    if (to_string(f) == name) return f;
  }
  throw std::invalid_argument("unknown closed form '" + name + "'");
}

namespace {

void need(std::span<const double> params, std::size_t k, Form f) {
  if (params.size() != k) {
    throw std::invalid_argument(to_string(f) + ": expected " + std::to_string(k) + " parameter(s)");
  }
}

void check(bool ok, Form f, const char* domain) {
  if (!ok) throw std::domain_error(to_string(f) + ": parameters outside the domain " + domain);
}

int as_count(double v, Form f, const char* what) {
  if (!(v >= 1.0) || v != std::floor(v)) throw std::domain_error(to_string(f) + ": " + what + " must be an integer >= 1");
  return static_cast<int>(v);
}

}  // namespace

double evaluate(Form f, std::span<const double> params) {
  constexpr double eps = 1e-12;
  switch (f) {
    case Form::mc:
    case Form::vertical: {
      need(params, 2, f);
      const int n = as_count(params[0], f, "N"), d = as_count(params[1], f, "d");
      return f == Form::mc ? mc<double>(n, d) : vertical<double>(n, d);
    }
    case Form::n2_convex:
    case Form::n2_diag:
    case Form::n2_diag_b: {
      need(params, 1, f);
      const double a = params[0];
      check(a >= -eps && a <= 1 + eps, f, "[0, 1]");
      if (f == Form::n2_convex) return n2_convex(a);
      return f == Form::n2_diag ? n2_diag(a) : n2_diag_b(a);
    }
    case Form::n3_main:
    case Form::n3_appendix: {
      need(params, 2, f);
      const double a = params[0], b = params[1];
      check(a >= 0.5 - eps && a < 1 && b >= 2 * a - 1 - eps && b <= a + eps, f, "1/2 <= A < 1, 2A-1 <= B <= A");
      return f == Form::n3_main ? n3_main(a, b) : n3_appendix(a, b);
    }
    case Form::n3_case2: {
      need(params, 2, f);
      const double a = params[0], b = params[1];
      check(a >= 0.5 - eps && a < 1 && b >= -eps && b <= 2 * a - 1 + eps, f, "1/2 <= A < 1, 0 <= B <= 2A-1");
      return n3_case2(a, b);
    }
  }
  throw std::invalid_argument("evaluate: unknown closed form");
}

}  // namespace strata::closed
