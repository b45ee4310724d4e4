#include "ecp/section_space.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "ecp/error.hpp"

namespace ecp {
namespace {

// D^order cos x and D^order sin x cycle with period four.
double cos_derivative(int order, double x) {
  switch (order % 4) {
    case 0: return std::cos(x);
    case 1: return -std::sin(x);
    case 2: return -std::cos(x);
    default: return std::sin(x);
  }
}

double sin_derivative(int order, double x) {
  switch (order % 4) {
    case 0: return std::sin(x);
    case 1: return std::cos(x);
    case 2: return -std::sin(x);
    default: return -std::cos(x);
  }
}

std::string trim(std::string_view s) {
  auto begin = s.find_first_not_of(" \t");
  if (begin == std::string_view::npos) return {};
  auto end = s.find_last_not_of(" \t");
  return std::string(s.substr(begin, end - begin + 1));
}

[[noreturn]] void unknown_token(std::string_view text) {
  throw Error(ErrorCode::UnknownToken, "unknown basis token '" + std::string(text) + "'");
}

}  // namespace

BasisToken BasisToken::monomial(int power) {
  if (power < 1) throw Error(ErrorCode::UnknownToken, "monomial power must be positive");
  return {Kind::monomial, power, 0.0};
}

BasisToken BasisToken::parse(std::string_view raw) {
  const std::string text = trim(raw);
  if (text == "1") return constant();
  if (text == "x") return monomial(1);
  if (text == "cos") return of(Kind::cos);
  if (text == "sin") return of(Kind::sin);
  if (text == "cosh") return of(Kind::cosh);
  if (text == "sinh") return of(Kind::sinh);
  if (text == "x*cos") return of(Kind::x_cos);
  if (text == "x*sin") return of(Kind::x_sin);
  if (text.starts_with("x^")) {
    int power = 0;
    const char* first = text.data() + 2;
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, power);
    if (ec != std::errc{} || ptr != last || power < 2) unknown_token(raw);
    return monomial(power);
  }
  if (text.starts_with("exp(") && text.ends_with(")")) {
    const std::string inner = trim(std::string_view(text).substr(4, text.size() - 5));
    if (inner.empty()) unknown_token(raw);
    std::size_t used = 0;
    double rate = 0.0;
    try {
      rate = std::stod(inner, &used);
    } catch (const std::exception&) {
      unknown_token(raw);
    }
    if (used != inner.size() || !std::isfinite(rate)) unknown_token(raw);
    return exponential(rate);
  }
  unknown_token(raw);
}

std::string BasisToken::str() const {
  switch (kind) {
    case Kind::constant: return "1";
    case Kind::monomial: return power == 1 ? "x" : "x^" + std::to_string(power);
    case Kind::cos: return "cos";
    case Kind::sin: return "sin";
    case Kind::cosh: return "cosh";
    case Kind::sinh: return "sinh";
    case Kind::x_cos: return "x*cos";
    case Kind::x_sin: return "x*sin";
    case Kind::exp: {
      std::ostringstream out;
      out.precision(17);
      out << "exp(" << rate << ")";
      return out.str();
    }
  }
  return "?";
}

double BasisToken::derivative(int order, double x) const {
  switch (kind) {
    case Kind::constant:
      return order == 0 ? 1.0 : 0.0;
    case Kind::monomial: {
      if (order > power) return 0.0;
      double factor = 1.0;
      for (int q = power - order + 1; q <= power; ++q) factor *= q;
      return factor * std::pow(x, power - order);
    }
    case Kind::cos:
      return cos_derivative(order, x);
    case Kind::sin:
      return sin_derivative(order, x);
    case Kind::cosh:
      return order % 2 == 0 ? std::cosh(x) : std::sinh(x);
    case Kind::sinh:
      return order % 2 == 0 ? std::sinh(x) : std::cosh(x);
    case Kind::x_cos:
      // Leibniz with D^2 x = 0.
      return x * cos_derivative(order, x) + (order > 0 ? order * cos_derivative(order - 1, x) : 0.0);
    case Kind::x_sin:
      return x * sin_derivative(order, x) + (order > 0 ? order * sin_derivative(order - 1, x) : 0.0);
    case Kind::exp:
      return std::pow(rate, order) * std::exp(rate * x);
  }
  return 0.0;
}

SectionSpace::SectionSpace(std::vector<BasisToken> tokens, double lo, double hi)
    : tokens_(std::move(tokens)), lo_(lo), hi_(hi) {
  if (tokens_.empty()) throw Error(ErrorCode::EmptyBasis, "section space needs at least one token");
  if (tokens_.front().kind != BasisToken::Kind::constant)
    throw Error(ErrorCode::MissingConstant, "first token of a section space must be the constant 1");
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi))
    throw Error(ErrorCode::DegenerateInterval, "section interval needs lo < hi");
  for (std::size_t p = 0; p < tokens_.size(); ++p)
    for (std::size_t q = p + 1; q < tokens_.size(); ++q)
      if (tokens_[p] == tokens_[q])
        throw Error(ErrorCode::DuplicateToken, "token '" + tokens_[p].str() + "' appears twice");
  if (translation_closed(tokens_)) origin_ = lo_;
}

bool SectionSpace::translation_closed(std::span<const BasisToken> tokens) {
  using K = BasisToken::Kind;
  auto has = [&](K kind, int power = 0) {
    return std::any_of(tokens.begin(), tokens.end(), [&](const BasisToken& t) {
      return t.kind == kind && (kind != K::monomial || t.power == power);
    });
  };
  for (const auto& t : tokens) {
    switch (t.kind) {
      case K::constant:
      case K::exp:
        break;
      case K::monomial:
        for (int q = 1; q < t.power; ++q)
          if (!has(K::monomial, q)) return false;
        break;
      case K::cos:
      case K::sin:
        if (!has(K::cos) || !has(K::sin)) return false;
        break;
      case K::cosh:
      case K::sinh:
        if (!has(K::cosh) || !has(K::sinh)) return false;
        break;
      case K::x_cos:
      case K::x_sin:
        if (!has(K::cos) || !has(K::sin) || !has(K::x_cos) || !has(K::x_sin)) return false;
        break;
    }
  }
  return true;
}

SectionSpace SectionSpace::from_strings(std::span<const std::string> tokens, double lo, double hi) {
  std::vector<BasisToken> parsed;
  parsed.reserve(tokens.size());
  for (const auto& t : tokens) parsed.push_back(BasisToken::parse(t));
  return SectionSpace(std::move(parsed), lo, hi);
}

std::vector<std::string> SectionSpace::token_strings() const {
  std::vector<std::string> out;
  out.reserve(tokens_.size());
  for (const auto& t : tokens_) out.push_back(t.str());
  return out;
}

void SectionSpace::check_inside(double x) const {
  const double slack = 1e-12 * std::max({1.0, std::abs(lo_), std::abs(hi_)});
  if (!(x >= lo_ - slack && x <= hi_ + slack)) {
    std::ostringstream msg;
    msg << "x=" << x << " outside section interval [" << lo_ << ", " << hi_ << "]";
    throw Error(ErrorCode::OutOfInterval, msg.str());
  }
}

Eigen::VectorXd SectionSpace::eval(int order, double x) const {
  check_inside(x);
  Eigen::VectorXd out(dim());
  for (int h = 0; h < dim(); ++h) out[h] = tokens_[h].derivative(order, x - origin_);
  return out;
}

Eigen::MatrixXd SectionSpace::collocation(int rows, double x) const {
  check_inside(x);
  Eigen::MatrixXd block(rows, dim());
  for (int r = 0; r < rows; ++r)
    for (int h = 0; h < dim(); ++h) block(r, h) = tokens_[h].derivative(r, x - origin_);
  return block;
}

double SectionSpace::combine(const Eigen::Ref<const Eigen::VectorXd>& coeffs, int order,
                             double x) const {
  return coeffs.dot(eval(order, x));
}

std::span<const CriticalLength> critical_length_table() {
  static const std::vector<CriticalLength> table = {
      {{"1", "x", "cos", "sin"}, 2.0 * std::numbers::pi},
      {{"1", "x", "cos", "sin", "x*cos", "x*sin"}, 2.0 * std::numbers::pi},
      {{"1", "x", "x^2", "cos", "sin"}, 8.9868189},
  };
  return table;
}

std::optional<std::string> critical_length_warning(const SectionSpace& space) {
  const auto names = space.token_strings();
  const std::set<std::string> have(names.begin(), names.end());
  for (const auto& entry : critical_length_table()) {
    const std::set<std::string> want(entry.tokens.begin(), entry.tokens.end());
    if (have != want) continue;
    if (space.length() >= entry.bound) {
      std::ostringstream msg;
      msg.precision(10);
      msg << "section [" << space.lo() << ", " << space.hi() << "] has length " << space.length()
          << ", not below the critical length " << entry.bound
          << " of its span; its derivative space may fail to be an EC-space";
      return msg.str();
    }
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace ecp
