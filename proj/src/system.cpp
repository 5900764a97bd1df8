// SPDX-License-Identifier: Apache-2.0
#include "mimo/system.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <string>

#include "mimo/errors.hpp"

namespace mimo {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Complex ipow(Complex base, int order) {
  Complex out{1.0, 0.0};
  for (int k = 0; k < order; ++k) out *= base;
  return out;
}

std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_complex(Complex v) {
  if (v.imag() == 0.0) return fmt_real(v.real());
  return "(" + fmt_real(v.real()) + "," + fmt_real(v.imag()) + ")";
}

void flatten(const ChannelResponse& h, Complex weight, std::vector<response::Term>& out) {
  if (const auto* c = std::get_if<response::Combo>(&h.kind())) {
    for (const auto& t : c->terms) flatten(t.response, weight * t.weight, out);
  } else {
    out.push_back({weight, h});
  }
}

// expr   := term (('+' | '-') term)*
// term   := number ['*' atom] | atom
// atom   := 'd' digits | 'shift(' number ')' | 'table(' entries ')'
// number := real | '(' real ',' real ')'
class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  ChannelResponse parse() {
    std::vector<response::Term> terms;
    double sign = 1.0;
    skip();
    if (peek() == '-') {
      sign = -1.0;
      ++pos_;
    }
    terms.push_back(term(sign));
    for (;;) {
      skip();
      if (pos_ == s_.size()) break;
      const char op = s_[pos_];
      if (op != '+' && op != '-') fail("expected '+' or '-'");
      ++pos_;
      terms.push_back(term(op == '-' ? -1.0 : 1.0));
    }
    if (terms.size() == 1 && terms[0].weight == Complex{1.0, 0.0}) {
      return terms[0].response;
    }
    if (terms.size() == 1 &&
        std::holds_alternative<response::Constant>(terms[0].response.kind())) {
      return ChannelResponse::constant(terms[0].weight *
                                       std::get<response::Constant>(terms[0].response.kind()).gain);
    }
    return combo(std::move(terms));
  }

 private:
  response::Term term(double sign) {
    skip();
    if (starts_number()) {
      const Complex w = number() * sign;
      skip();
      if (peek() == '*') {
        ++pos_;
        return {w, atom()};
      }
      return {Complex{1.0, 0.0}, ChannelResponse::constant(w)};
    }
    return {Complex{sign, 0.0}, atom()};
  }

  ChannelResponse atom() {
    skip();
    if (peek() == 'd') {
      ++pos_;
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) return ChannelResponse::derivative(1);
      return ChannelResponse::derivative(std::stoi(s_.substr(start, pos_ - start)));
    }
    if (s_.compare(pos_, 6, "shift(") == 0) {
      pos_ += 6;
      const double alpha = real();
      expect(')');
      return ChannelResponse::translation(alpha);
    }
    if (s_.compare(pos_, 6, "table(") == 0) {
      pos_ += 6;
      response::Tabulated tab;
      skip();
      while (peek() != ')') {
        skip();
        if (s_.compare(pos_, 8, "default=") == 0) {
          pos_ += 8;
          tab.fallback = pair();
        } else {
          const int n = static_cast<int>(std::lround(real()));
          expect(':');
          tab.values[n] = pair();
        }
        skip();
        if (peek() == ',') ++pos_;
        skip();
        if (pos_ >= s_.size()) fail("unterminated table(");
      }
      ++pos_;
      return {tab};
    }
    fail("expected d<order>, shift(alpha), table(...) or a number");
  }

  Complex pair() {
    const double re = real();
    expect(':');
    const double im = real();
    return {re, im};
  }

  bool starts_number() const {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '(';
  }

  Complex number() {
    if (peek() == '(') {
      ++pos_;
      const double re = real();
      expect(',');
      const double im = real();
      expect(')');
      return {re, im};
    }
    return {real(), 0.0};
  }

  double real() {
    skip();
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("bad channel response '" + s_ + "' at column " + std::to_string(pos_ + 1) +
                      ": " + msg);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Complex ChannelResponse::operator()(int n) const {
  return std::visit(
      Overloaded{
          [](const response::Constant& c) { return c.gain; },
          [n](const response::Derivative& d) { return ipow(Complex(0.0, n), d.order); },
          [n](const response::Translation& t) { return std::polar(1.0, n * t.alpha); },
          [n](const response::Tabulated& t) {
            auto it = t.values.find(n);
            return it == t.values.end() ? t.fallback : it->second;
          },
          [n](const response::Combo& c) {
            Complex sum{};
            for (const auto& term : c.terms) sum += term.weight * term.response(n);
            return sum;
          },
      },
      kind_);
}

ChannelResponse combo(std::vector<response::Term> terms) {
  return ChannelResponse(response::Combo{std::move(terms)});
}

std::string to_string(const ChannelResponse& h) {
  std::vector<response::Term> terms;
  flatten(h, Complex{1.0, 0.0}, terms);
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& [w, r] = terms[i];
    std::string term = std::visit(
        Overloaded{
            [w](const response::Constant& c) { return fmt_complex(w * c.gain); },
            [w](const response::Derivative& d) {
              const std::string atom = "d" + std::to_string(d.order);
              return w == Complex{1.0, 0.0} ? atom : fmt_complex(w) + "*" + atom;
            },
            [w](const response::Translation& t) {
              const std::string atom = "shift(" + fmt_real(t.alpha) + ")";
              return w == Complex{1.0, 0.0} ? atom : fmt_complex(w) + "*" + atom;
            },
            [w](const response::Tabulated& t) {
              std::string atom = "table(";
              for (const auto& [n, v] : t.values) {
                atom += std::to_string(n) + ":" + fmt_real(v.real()) + ":" + fmt_real(v.imag()) +
                        ",";
              }
              atom += "default=" + fmt_real(t.fallback.real()) + ":" +
                      fmt_real(t.fallback.imag()) + ")";
              return w == Complex{1.0, 0.0} ? atom : fmt_complex(w) + "*" + atom;
            },
            [](const response::Combo&) { return std::string{}; },  // flattened away
        },
        r.kind());
    if (i > 0) out += term.front() == '-' ? " - " : " + ";
    out += (i > 0 && term.front() == '-') ? term.substr(1) : term;
  }
  return out;
}

ChannelResponse parse_response(const std::string& text) { return Parser(text).parse(); }

MimoSystem::MimoSystem(int M, int R, std::vector<ChannelResponse> row_major)
    : M_(M), R_(R), grid_(std::move(row_major)) {
  if (M < 1 || R < 1) throw ConfigError("MimoSystem: M and R must be positive");
  if (grid_.size() != static_cast<std::size_t>(M) * static_cast<std::size_t>(R)) {
    throw ConfigError("MimoSystem: expected " + std::to_string(M * R) + " responses, got " +
                      std::to_string(grid_.size()));
  }
}

std::vector<SpectrumSignal> simulate_outputs(const MimoSystem& sys,
                                             std::span<const SpectrumSignal> inputs) {
  if (inputs.size() != static_cast<std::size_t>(sys.R())) {
    throw ConfigError("simulate_outputs: system has " + std::to_string(sys.R()) +
                      " inputs, got " + std::to_string(inputs.size()));
  }
  std::vector<SpectrumSignal> outputs(static_cast<std::size_t>(sys.M()));
  for (int m = 0; m < sys.M(); ++m) {
    for (int r = 0; r < sys.R(); ++r) outputs[m] += cyclic_convolve(inputs[r], sys.at(m, r));
  }
  return outputs;
}

SampleGrid sample_outputs(const MimoSystem& sys, std::span<const SpectrumSignal> inputs,
                          const SamplingPlan& plan) {
  const auto outputs = simulate_outputs(sys, inputs);
  const auto t = grid_instants(plan);
  SampleGrid grid(sys.M(), plan.L);
  for (int m = 0; m < sys.M(); ++m) {
    for (int p = 0; p < plan.L; ++p) grid(m, p) = eval(outputs[m], t[p]);
  }
  return grid;
}

TruncatedSamples sample_outputs(const MimoSystem& sys, std::span<const AnalyticSignal> inputs,
                                const SamplingPlan& plan, int K) {
  std::vector<SpectrumSignal> truncated;
  truncated.reserve(inputs.size());
  double tail = 0.0;
  for (const auto& x : inputs) {
    truncated.push_back(dirichlet_bandlimit(x, K));
    tail += x.tail_energy_bound(K);
  }
  return {sample_outputs(sys, truncated, plan), tail};
}

FoldedSystemMatrix build_B(const MimoSystem& sys, const SamplingPlan& plan) {
  if (sys.M() != plan.M || sys.R() != plan.R) {
    throw ConfigError("build_B: system is " + std::to_string(sys.M()) + "x" +
                      std::to_string(sys.R()) + " but plan expects " + std::to_string(plan.M) +
                      "x" + std::to_string(plan.R));
  }
  FoldedSystemMatrix B{plan, {}};
  B.matrices.reserve(static_cast<std::size_t>(plan.L));
  for (int n = plan.N1; n < plan.N1 + plan.L; ++n) {
    Eigen::MatrixXcd mat(plan.M, plan.m0 * plan.R);
    for (int m = 0; m < plan.M; ++m) {
      for (int r = 0; r < plan.R; ++r) {
        for (int s = 0; s < plan.m0; ++s) mat(m, plan.m0 * r + s) = sys.b(m, r, n + s * plan.L);
      }
    }
    B.matrices.push_back(std::move(mat));
  }
  return B;
}

std::vector<int> rank_certificate(const FoldedSystemMatrix& B, double tol) {
  std::vector<int> deficient;
  for (std::size_t i = 0; i < B.matrices.size(); ++i) {
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(B.matrices[i]);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    const double smin = sv.size() > 0 ? sv(sv.size() - 1) : 0.0;
    if (!(smin > tol * smax)) deficient.push_back(B.plan.N1 + static_cast<int>(i));
  }
  return deficient;
}

}  // namespace mimo
