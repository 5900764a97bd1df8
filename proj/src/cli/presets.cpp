// SPDX-License-Identifier: Apache-2.0
#include "mimo/cli/presets.hpp"

#include <cmath>
#include <string>

#include "mimo/errors.hpp"

namespace mimo::cli {
namespace {

constexpr Complex I{0.0, 1.0};

void check_example(int example) {
  if (example < 1 || example > kExampleCount) {
    throw ConfigError("unknown example " + std::to_string(example) + " (expected 1.." +
                      std::to_string(kExampleCount) + ")");
  }
}

ChannelResponse one() { return ChannelResponse::constant(1.0); }
ChannelResponse gain(double g) { return ChannelResponse::constant(g); }
ChannelResponse d1() { return ChannelResponse::derivative(1); }
ChannelResponse shift(double alpha) { return ChannelResponse::translation(alpha); }

Eigen::MatrixXcd mat2(Complex a, Complex b, Complex c, Complex d) {
  Eigen::MatrixXcd m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

const std::vector<std::string>& scheme_ids() {
  static const std::vector<std::string> ids = {"s22d", "s22t", "s23t", "s23d", "s24d", "ex1",
                                               "ex2",  "ex3",  "ex4",  "ex5",  "ex6",  "ex7",
                                               "ex8"};
  return ids;
}

int example_of(std::string_view scheme) {
  if (scheme == "s22d") return 1;
  if (scheme == "s22t") return 2;
  if (scheme == "s23t") return 5;
  if (scheme == "s23d") return 6;
  if (scheme == "s24d") return 7;
  if (scheme.size() == 3 && scheme.substr(0, 2) == "ex" && scheme[2] >= '1' && scheme[2] <= '8') {
    return scheme[2] - '0';
  }
  throw ConfigError("unknown scheme '" + std::string(scheme) + "'");
}

double default_alpha(int L) { return kTwoPi * 0.37 / L; }

int example_outputs(int example) {
  check_example(example);
  return example <= 4 ? 2 : example <= 6 ? 3 : 4;
}

bool example_uses_translation(int example) {
  check_example(example);
  return example == 2 || example == 4 || example == 5 || example == 8;
}

MimoSystem example_system(int example, double alpha) {
  check_example(example);
  const auto s = shift(alpha);
  switch (example) {
    case 1: return MimoSystem(2, 2, {one(), d1(), d1(), one()});
    case 2: return MimoSystem(2, 2, {one(), s, s, gain(2.0)});
    case 3: return MimoSystem(2, 2, {one(), d1(), combo({{1.0, one()}, {1.0, d1()}}), one()});
    case 4: return MimoSystem(2, 2, {one(), s, d1(), one()});
    case 5: return MimoSystem(3, 2, {one(), s, s, one(), gain(2.0), one()});
    case 6: return MimoSystem(3, 2, {one(), one(), one(), d1(), d1(), one()});
    case 7: return MimoSystem(4, 2, {gain(2.0), one(), one(), d1(), d1(), one(), d1(), d1()});
    default: return MimoSystem(4, 2, {gain(2.0), one(), s, one(), one(), s, s, s});
  }
}

Eigen::MatrixXcd example_B(int example, int n, double alpha, int L) {
  check_example(example);
  const double nn = n;
  const Complex e = std::polar(1.0, alpha * n);
  switch (example) {
    case 1: return mat2(1.0, I * nn, I * nn, 1.0);
    case 2: return mat2(1.0, e, e, 2.0);
    case 3: return mat2(1.0, I * nn, 1.0 + I * nn, 1.0);
    case 4: return mat2(1.0, e, I * nn, 1.0);
    case 5: {
      Eigen::MatrixXcd B(3, 2);
      B << 1.0, e, e, 1.0, 2.0, 1.0;
      return B;
    }
    case 6: {
      Eigen::MatrixXcd B(3, 2);
      B << 1.0, 1.0, 1.0, I * nn, I * nn, 1.0;
      return B;
    }
    case 7: {
      const Complex a = I * nn;
      const Complex b = I * (nn + L);
      Eigen::MatrixXcd B(4, 4);
      B << 2.0, 2.0, 1.0, 1.0,  //
          1.0, 1.0, a, b,       //
          a, b, 1.0, 1.0,       //
          a, b, a, b;
      return B;
    }
    default: {
      const Complex s2 = std::polar(1.0, -alpha * n);
      const Complex s3 = std::polar(1.0, alpha * L);
      Eigen::MatrixXcd B(4, 4);
      B << 2.0, 2.0, 1.0, 1.0,          //
          1.0 / s2, s3 / s2, 1.0, 1.0,  //
          1.0, 1.0, 1.0 / s2, s3 / s2,  //
          1.0 / s2, s3 / s2, 1.0 / s2, s3 / s2;
      return B;
    }
  }
}

Eigen::MatrixXcd example_Q(int example, int n, double alpha, int L) {
  check_example(example);
  const double nn = n;
  const Complex e = std::polar(1.0, alpha * n);
  switch (example) {
    case 1: return mat2(1.0, -I * nn, -I * nn, 1.0) / (nn * nn + 1.0);
    case 2: return mat2(2.0, -e, -e, 1.0) / (2.0 - e * e);
    case 3: return mat2(1.0, -I * nn, -1.0 - I * nn, 1.0) / (nn * nn - I * nn + 1.0);
    case 4: return mat2(1.0, -e, -I * nn, 1.0) / (1.0 - I * nn * e);
    case 5: {
      const Complex e2 = e * e;
      const Complex e3 = e2 * e;
      const Complex s1 = 6.0 - 8.0 * e + 3.0 * e2 + e2 * e2;
      Eigen::MatrixXcd Q(2, 3);
      Q << 2.0 - 2.0 * e - e2, e3 - 2.0, 2.0 * (1.0 - e + e2),  //
          3.0 * e + e3 - 2.0, 5.0 - 2.0 * e - e2, 1.0 - 4.0 * e + e2;
      return Q / s1;
    }
    case 6: {
      const Complex d1 = 2.0 * I * nn + 3.0 - nn * nn;
      const Complex d2 = I * nn * nn + nn + 3.0 * I - nn * nn * nn;
      const Complex u = (2.0 * I - nn) / d2;
      const Complex v = (I * nn * nn + nn - I) / d2;
      Eigen::MatrixXcd Q(2, 3);
      Q << 1.0 / d1, u, v,  //
          1.0 / d1, v, u;
      return Q;
    }
    case 7: {
      const double Ld = L;
      const Complex p1 = nn + I;
      const Complex p2 = nn + 2.0 * I;
      const Complex q1 = Ld + nn + I;
      const Complex q2 = Ld + nn + 2.0 * I;
      const Complex r1 = 2.0 * Ld + 2.0 * nn + I;
      const Complex r2 = 2.0 * nn + I;
      Eigen::MatrixXcd Q(4, 4);
      Q << q1, -q2, -q1, q2,            //
          -p1, p2, p1, -p2,             //
          -q1, 2.0 * q1, r1, -r1,       //
          p1, -2.0 * p1, -r2, r2;
      return Q / Ld;
    }
    default: {
      const Complex s2 = std::polar(1.0, -alpha * n);
      const Complex s3 = std::polar(1.0, alpha * L);
      Eigen::MatrixXcd Q(4, 4);
      Q << s2 - s3, s3 - s2, s3 - 2.0 * s2, 2.0 * s2 - s3,           //
          1.0 - s2, s2 - 1.0, 2.0 * s2 - 1.0, 1.0 - 2.0 * s2,        //
          s3 - s2, s2 - 2.0 * s3, 2.0 * s2 - 2.0 * s3, 2.0 * s3 - s2,  //
          s2 - 1.0, 2.0 - s2, 2.0 - 2.0 * s2, s2 - 2.0;
      return Q / (1.0 - s3);
    }
  }
}

ExplicitInverse example_inverse(int example, double alpha, int L) {
  check_example(example);
  return [example, alpha, L](int n) { return example_Q(example, n, alpha, L); };
}

double beta_bound(int example) {
  check_example(example);
  static const double bounds[kExampleCount] = {1.0, 2.0, 1.0, 4.0, 20.0, 1.0, 4.0, 2.0 * std::sqrt(2.0)};
  return bounds[example - 1];
}

}  // namespace mimo::cli
