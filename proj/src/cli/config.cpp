// SPDX-License-Identifier: Apache-2.0
#include "mimo/cli/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "mimo/cli/presets.hpp"
#include "mimo/errors.hpp"

namespace mimo::cli {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, const char* seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (std::string_view(seps).find(c) != std::string_view::npos) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Context {
 public:
  Context(const std::string& source, int line, const std::string& section, const std::string& key)
      : source_(source), line_(line), section_(section), key_(key) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError(source_ + ":" + std::to_string(line_) + ": [" + section_ + "] " + key_ +
                      ": " + msg);
  }

  long long integer(const std::string& tok) const {
    long long v = 0;
    const auto* end = tok.data() + tok.size();
    const auto [p, ec] = std::from_chars(tok.data(), end, v);
    if (ec != std::errc() || p != end) fail("expected an integer, got '" + tok + "'");
    return v;
  }

  int int32(const std::string& tok) const {
    const long long v = integer(tok);
    if (v < -1'000'000'000 || v > 1'000'000'000) fail("integer out of range: " + tok);
    return static_cast<int>(v);
  }

  int positive(const std::string& tok) const {
    const int v = int32(tok);
    if (v < 1) fail("expected a positive integer, got '" + tok + "'");
    return v;
  }

  double real(const std::string& tok) const {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      fail("expected a number, got '" + tok + "'");
    }
    if (used != tok.size()) fail("expected a number, got '" + tok + "'");
    return v;
  }

 private:
  const std::string& source_;
  int line_;
  const std::string& section_;
  const std::string& key_;
};

const std::set<std::string> kSections = {"plan",  "system", "signals", "reconstruct",
                                         "noise", "sweep",  "output"};

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  ExperimentConfig cfg;
  std::map<std::pair<int, int>, std::string> responses;
  std::map<int, SpectrumSignal> inputs;
  std::set<std::string> seen;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  int system_line = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(source + ":" + std::to_string(line_no) + ": malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (!kSections.count(section)) {
        throw ConfigError(source + ":" + std::to_string(line_no) + ": unknown section [" +
                          section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const Context ctx(source, line_no, section, key);
    if (section.empty()) ctx.fail("key outside any section");
    if (!seen.insert(section + "." + key).second) ctx.fail("duplicate key");
    if (value.empty()) ctx.fail("empty value");
    const auto tokens = split(value, " \t");

    if (section == "plan") {
      if (key == "scheme") {
        if (value != "custom") {
          try {
            example_of(value);
          } catch (const ConfigError&) {
            ctx.fail("unknown scheme '" + value + "'");
          }
        }
        cfg.scheme = value;
      } else if (key == "band") {
        if (tokens.size() != 2) ctx.fail("expected two integers N1 N2");
        cfg.N1 = ctx.int32(tokens[0]);
        cfg.N2 = ctx.int32(tokens[1]);
        if (cfg.N2 < cfg.N1) ctx.fail("N2 < N1");
      } else if (key == "L") {
        cfg.L_override = ctx.positive(value);
      } else {
        ctx.fail("unknown key");
      }
    } else if (section == "system") {
      system_line = line_no;
      if (key == "M") {
        cfg.M = ctx.positive(value);
      } else if (key == "R") {
        cfg.R = ctx.positive(value);
      } else if (key == "alpha") {
        cfg.alpha = ctx.real(value);
      } else if (key.size() >= 3 && key[0] == 'h') {
        const auto digits = key.substr(1);
        if (digits.size() != 2 || !std::isdigit(static_cast<unsigned char>(digits[0])) ||
            !std::isdigit(static_cast<unsigned char>(digits[1]))) {
          ctx.fail("channel keys are h<m><r> with single-digit 1-based indices");
        }
        try {
          (void)parse_response(value);
        } catch (const ConfigError& e) {
          ctx.fail(e.what());
        }
        responses[{digits[0] - '0', digits[1] - '0'}] = value;
      } else {
        ctx.fail("unknown key");
      }
    } else if (section == "signals") {
      if (key == "preset") {
        if (value != "bl51" && value != "hardy" && value != "custom") {
          ctx.fail("expected bl51, hardy or custom");
        }
        cfg.signals = value;
      } else if (key == "K") {
        cfg.truncation = ctx.int32(value);
        if (*cfg.truncation < 0) ctx.fail("negative truncation");
      } else if (key.size() >= 2 && key[0] == 'x') {
        const int r = ctx.positive(key.substr(1));
        SpectrumSignal sig;
        for (const auto& entry : split(value, ",")) {
          const auto parts = split(trim(entry), ":");
          if (parts.size() != 3) ctx.fail("coefficient entries are n:re:im");
          const int n = ctx.int32(trim(parts[0]));
          sig.set(n, {ctx.real(trim(parts[1])), ctx.real(trim(parts[2]))});
        }
        inputs[r] = sig;
      } else {
        ctx.fail("unknown key");
      }
    } else if (section == "reconstruct") {
      if (key == "mode") {
        if (value == "pseudoinverse") {
          cfg.mode = InverseSource::Pseudoinverse;
        } else if (value == "explicit") {
          cfg.mode = InverseSource::Explicit;
        } else {
          ctx.fail("expected pseudoinverse or explicit");
        }
      } else if (key == "output_counts") {
        for (const auto& t : tokens) cfg.output_counts.push_back(ctx.positive(t));
      } else {
        ctx.fail("unknown key");
      }
    } else if (section == "noise") {
      if (key == "sigma") {
        cfg.sigma = ctx.real(value);
        if (*cfg.sigma < 0) ctx.fail("negative sigma");
      } else if (key == "seed") {
        const long long v = ctx.integer(value);
        if (v < 0) ctx.fail("negative seed");
        cfg.seed = static_cast<std::uint64_t>(v);
      } else if (key == "realizations") {
        cfg.realizations = ctx.positive(value);
      } else if (key == "postfilter") {
        cfg.postfilter = ctx.int32(value);
        if (*cfg.postfilter < 0) ctx.fail("negative postfilter");
      } else if (key == "sigma_list") {
        for (const auto& t : tokens) {
          const double s = ctx.real(t);
          if (s < 0) ctx.fail("negative sigma");
          cfg.sigma_list.push_back(s);
        }
      } else {
        ctx.fail("unknown key");
      }
    } else if (section == "sweep") {
      if (key == "L_list") {
        for (const auto& t : tokens) cfg.L_list.push_back(ctx.positive(t));
      } else {
        ctx.fail("unknown key");
      }
    } else if (section == "output") {
      if (key == "dir") {
        cfg.output_dir = value;
      } else {
        ctx.fail("unknown key");
      }
    }
  }

  const auto whole = [&](const std::string& msg) {
    return ConfigError(source + ": " + msg);
  };
  if (cfg.scheme == "custom") {
    if (cfg.M == 0 || cfg.R == 0) throw whole("[system] scheme = custom needs M and R");
    for (int m = 1; m <= cfg.M; ++m) {
      for (int r = 1; r <= cfg.R; ++r) {
        const auto it = responses.find({m, r});
        if (it == responses.end()) {
          throw whole("[system] missing h" + std::to_string(m) + std::to_string(r));
        }
        cfg.responses.push_back(it->second);
      }
    }
    if (responses.size() != cfg.responses.size()) {
      throw ConfigError(source + ":" + std::to_string(system_line) +
                        ": [system] channel index outside M x R");
    }
  } else if (!responses.empty() || cfg.M != 0 || cfg.R != 0) {
    throw whole("[system] M, R and h<m><r> are only valid with scheme = custom");
  }
  if (cfg.signals == "custom") {
    if (inputs.empty()) throw whole("[signals] preset = custom needs x1, x2, ...");
    int expect = 1;
    for (const auto& [r, sig] : inputs) {
      if (r != expect++) throw whole("[signals] custom inputs must be x1..xR without gaps");
      cfg.custom_inputs.push_back(sig);
    }
  } else if (!inputs.empty()) {
    throw whole("[signals] x<r> entries are only valid with preset = custom");
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string());
}

std::string to_config_text(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "[plan]\nscheme = " << c.scheme << "\nband = " << c.N1 << " " << c.N2 << "\n";
  if (c.L_override) out << "L = " << *c.L_override << "\n";

  if (c.scheme == "custom" || c.alpha) {
    out << "\n[system]\n";
    if (c.scheme == "custom") {
      out << "M = " << c.M << "\nR = " << c.R << "\n";
      for (int m = 0; m < c.M; ++m) {
        for (int r = 0; r < c.R; ++r) {
          out << "h" << m + 1 << r + 1 << " = " << c.responses[m * c.R + r] << "\n";
        }
      }
    }
    if (c.alpha) out << "alpha = " << fmt(*c.alpha) << "\n";
  }

  out << "\n[signals]\npreset = " << c.signals << "\n";
  if (c.truncation) out << "K = " << *c.truncation << "\n";
  for (std::size_t r = 0; r < c.custom_inputs.size(); ++r) {
    out << "x" << r + 1 << " = ";
    bool first = true;
    for (const auto& [n, a] : c.custom_inputs[r].coeffs()) {
      out << (first ? "" : ", ") << n << ":" << fmt(a.real()) << ":" << fmt(a.imag());
      first = false;
    }
    out << "\n";
  }

  out << "\n[reconstruct]\nmode = "
      << (c.mode == InverseSource::Explicit ? "explicit" : "pseudoinverse") << "\n";
  if (!c.output_counts.empty()) {
    out << "output_counts =";
    for (int n : c.output_counts) out << " " << n;
    out << "\n";
  }

  out << "\n[noise]\nseed = " << c.seed << "\nrealizations = " << c.realizations << "\n";
  if (c.sigma) out << "sigma = " << fmt(*c.sigma) << "\n";
  if (c.postfilter) out << "postfilter = " << *c.postfilter << "\n";
  if (!c.sigma_list.empty()) {
    out << "sigma_list =";
    for (double s : c.sigma_list) out << " " << fmt(s);
    out << "\n";
  }

  if (!c.L_list.empty()) {
    out << "\n[sweep]\nL_list =";
    for (int L : c.L_list) out << " " << L;
    out << "\n";
  }

  out << "\n[output]\ndir = " << c.output_dir.string() << "\n";
  return out.str();
}

}  // namespace mimo::cli
