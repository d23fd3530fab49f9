#include "law_parse.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "fmt_util.hpp"

namespace frog {
namespace {

[[noreturn]] void fail(std::size_t offset, const std::string& what) {
  throw ParseError("parse error at column " + std::to_string(offset + 1) +
                   ": " + what);
}

struct Token {
  std::string text;
  std::size_t offset;
};

// Splits on top-level commas only; parentheses nest (for oddsprod bases).
std::vector<Token> split_top_level(const std::string& body,
                                   std::size_t base_offset) {
  std::vector<Token> out;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= body.size(); ++i) {
    if (i < body.size() && body[i] == '(') ++depth;
    if (i < body.size() && body[i] == ')') {
      --depth;
      if (depth < 0) fail(base_offset + i, "unbalanced ')'");
    }
    if (i == body.size() || (body[i] == ',' && depth == 0)) {
      out.push_back({body.substr(start, i - start), base_offset + start});
      start = i + 1;
    }
  }
  if (depth != 0) fail(base_offset + body.size(), "unbalanced '('");
  return out;
}

std::pair<Token, Token> split_key_value(const Token& t) {
  const std::size_t eq = t.text.find('=');
  if (eq == std::string::npos)
    fail(t.offset, "expected key=value, got '" + t.text + "'");
  if (eq == 0) fail(t.offset, "empty key");
  Token key{t.text.substr(0, eq), t.offset};
  Token val{t.text.substr(eq + 1), t.offset + eq + 1};
  if (val.text.empty()) fail(val.offset, "empty value for key '" + key.text + "'");
  return {key, val};
}

double parse_double(const Token& t) {
  double v = 0.0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || p != last)
    fail(t.offset, "expected a number, got '" + t.text + "'");
  return v;
}

std::int64_t parse_int(const Token& t) {
  std::int64_t v = 0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || p != last)
    fail(t.offset, "expected an integer, got '" + t.text + "'");
  return v;
}

// key=value list -> map, rejecting duplicates; offsets kept for later checks.
std::map<std::string, std::pair<double, std::size_t>> parse_kv_doubles(
    const std::string& body, std::size_t base_offset) {
  std::map<std::string, std::pair<double, std::size_t>> out;
  if (body.empty()) return out;
  for (const Token& t : split_top_level(body, base_offset)) {
    auto [key, val] = split_key_value(t);
    if (out.count(key.text)) fail(key.offset, "duplicate key '" + key.text + "'");
    out.emplace(key.text, std::make_pair(parse_double(val), key.offset));
  }
  return out;
}

double take_required(std::map<std::string, std::pair<double, std::size_t>>& kv,
                     const std::string& key, const std::string& family,
                     std::size_t family_offset) {
  auto it = kv.find(key);
  if (it == kv.end())
    fail(family_offset,
         "family '" + family + "' requires key '" + key + "'");
  const double v = it->second.first;
  kv.erase(it);
  return v;
}

void expect_empty(const std::map<std::string, std::pair<double, std::size_t>>& kv,
                  const std::string& family) {
  if (!kv.empty())
    fail(kv.begin()->second.second,
         "unknown key '" + kv.begin()->first + "' for family '" + family + "'");
}

const std::map<std::string, OddsFamily>& odds_families() {
  static const std::map<std::string, OddsFamily> families = {
      {"pareto1", OddsFamily::Pareto1},
      {"lomax", OddsFamily::Lomax},
      {"gpd", OddsFamily::Gpd},
      {"betaprime", OddsFamily::BetaPrime},
      {"f", OddsFamily::FDist},
      {"burr12", OddsFamily::BurrXII},
      {"invgamma", OddsFamily::InverseGamma},
      {"frechet", OddsFamily::Frechet},
      {"logpareto", OddsFamily::LogPareto},
      {"stable", OddsFamily::SymmetricStable},
  };
  return families;
}

OddsLaw parse_odds_law(const std::string& family, std::size_t family_offset,
                       const std::string& body, std::size_t body_offset) {
  auto it = odds_families().find(family);
  if (it == odds_families().end())
    fail(family_offset, "unknown law family '" + family + "'");
  std::map<std::string, double> params;
  for (auto& [key, val] : parse_kv_doubles(body, body_offset))
    params.emplace(key, val.first);
  return make_odds_family(it->second, params);
}

SurvivalLaw parse_oddsprod(const std::string& body, std::size_t body_offset) {
  OddsLaw base;
  bool have_base = false;
  double ymoment = 0.0;
  bool have_ymoment = false;
  double ylo = 0.0;
  double yhi = 1.0;
  for (const Token& t : split_top_level(body, body_offset)) {
    auto [key, val] = split_key_value(t);
    if (key.text == "base") {
      const std::size_t open = val.text.find('(');
      if (open == std::string::npos || val.text.back() != ')')
        fail(val.offset, "base must look like family(key=value,...)");
      const std::string fam = val.text.substr(0, open);
      const std::string inner =
          val.text.substr(open + 1, val.text.size() - open - 2);
      base = parse_odds_law(fam, val.offset, inner, val.offset + open + 1);
      have_base = true;
    } else if (key.text == "ymoment") {
      ymoment = parse_double(val);
      have_ymoment = true;
    } else if (key.text == "ylo") {
      ylo = parse_double(val);
    } else if (key.text == "yhi") {
      yhi = parse_double(val);
    } else {
      fail(key.offset, "unknown key '" + key.text + "' for family 'oddsprod'");
    }
  }
  if (!have_base) fail(body_offset, "oddsprod requires base=family(...)");
  if (!(ylo >= 0.0) || !(yhi > ylo))
    throw ParamError("oddsprod needs 0 <= ylo < yhi");

  const double width = yhi - ylo;
  auto y_sampler = [ylo, width](RngStream& rng) {
    return ylo + width * rng.uniform_open01();
  };
  std::string y_desc =
      "uniform(" + fmt_double(ylo) + "," + fmt_double(yhi) + ")";
  if (!have_ymoment) {
    // E[Y^beta] estimated by a fixed-seed sample mean; flagged so reports
    // show the moment was not user-supplied.
    RngStream rng = substream(1729, kStreamScratch, 0x9D0Dull);
    const double b = base.tail_beta;
    double acc = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) acc += std::pow(y_sampler(rng), b);
    ymoment = acc / n;
    y_desc += " with estimated E[Y^beta]=" + fmt_double(ymoment);
  }
  return odds_to_survival(product_transfer(base, ymoment, y_sampler, y_desc));
}

}  // namespace

SurvivalLaw parse_survival_law(const std::string& spec) {
  if (spec.empty()) fail(0, "empty law spec");
  const std::size_t colon = spec.find(':');
  const std::string family =
      colon == std::string::npos ? spec : spec.substr(0, colon);
  const std::string body =
      colon == std::string::npos ? std::string() : spec.substr(colon + 1);
  const std::size_t body_offset = colon == std::string::npos ? spec.size()
                                                             : colon + 1;
  if (family == "osc-critical") {
    if (!body.empty()) fail(body_offset, "osc-critical takes no parameters");
    return make_osc_critical();
  }
  if (family == "oddsprod") return parse_oddsprod(body, body_offset);

  auto kv = parse_kv_doubles(body, body_offset);
  if (family == "power") {
    const double beta = take_required(kv, "beta", family, 0);
    expect_empty(kv, family);
    return make_power_edge(beta);
  }
  if (family == "beta") {
    const double alpha = take_required(kv, "alpha", family, 0);
    const double beta = take_required(kv, "beta", family, 0);
    expect_empty(kv, family);
    return make_beta(alpha, beta);
  }
  if (family == "gammaratio") {
    const double alpha = take_required(kv, "alpha", family, 0);
    const double beta = take_required(kv, "beta", family, 0);
    const double l1 = take_required(kv, "lambda1", family, 0);
    const double l2 = take_required(kv, "lambda2", family, 0);
    expect_empty(kv, family);
    return make_gamma_ratio(alpha, beta, l1, l2);
  }
  if (family == "genbeta1") {
    const double a = take_required(kv, "a", family, 0);
    const double b = take_required(kv, "b", family, 0);
    const double c = take_required(kv, "c", family, 0);
    expect_empty(kv, family);
    return make_gen_beta1(a, b, c);
  }
  // Heavy-tailed odds families wrap through the odds transform.
  std::map<std::string, double> params;
  for (auto& [key, val] : kv) params.emplace(key, val.first);
  auto it = odds_families().find(family);
  if (it == odds_families().end()) fail(0, "unknown law family '" + family + "'");
  return odds_to_survival(make_odds_family(it->second, params));
}

InitialLaw parse_initial_law(const std::string& spec) {
  if (spec.empty()) fail(0, "empty eta spec");
  const std::size_t colon = spec.find(':');
  const std::string family =
      colon == std::string::npos ? spec : spec.substr(0, colon);
  const std::string body =
      colon == std::string::npos ? std::string() : spec.substr(colon + 1);
  const std::size_t body_offset = colon == std::string::npos ? spec.size()
                                                             : colon + 1;
  if (family == "degenerate") {
    if (body.empty()) fail(body_offset, "degenerate needs a count, e.g. degenerate:1");
    return make_degenerate(parse_int({body, body_offset}));
  }
  auto kv = parse_kv_doubles(body, body_offset);
  if (family == "geometric") {
    const double q = take_required(kv, "q", family, 0);
    expect_empty(kv, family);
    return make_geometric(q);
  }
  if (family == "poisson") {
    const double m = take_required(kv, "m", family, 0);
    expect_empty(kv, family);
    return make_poisson(m);
  }
  if (family == "zetatail") {
    const double c = take_required(kv, "c", family, 0);
    expect_empty(kv, family);
    return make_zeta_tail(c);
  }
  fail(0, "unknown eta family '" + family + "'");
}

}  // namespace frog
