#include "toricpb/rational.hpp"

#include "toricpb/errors.hpp"

#include <cctype>
#include <stdexcept>

namespace toricpb {

namespace {

bool isIntegerText(std::string_view s) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t k = start; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  return true;
}

BigInt parseInteger(std::string_view s) {
  if (!isIntegerText(s)) throw InputError("bad rational literal: " + std::string(s));
  if (s[0] == '+') s.remove_prefix(1);
  return BigInt(std::string(s));
}

}  // namespace

Rational parseRational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parseInteger(text));
  BigInt num = parseInteger(text.substr(0, slash));
  std::string_view denText = text.substr(slash + 1);
  if (!denText.empty() && (denText[0] == '-' || denText[0] == '+'))
    throw InputError("bad rational literal: " + std::string(text));
  BigInt den = parseInteger(denText);
  if (den == 0) throw InputError("zero denominator: " + std::string(text));
  return Rational(num, den);
}

std::string formatRational(const Rational& value) {
  const auto num = boost::multiprecision::numerator(value);
  const auto den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace toricpb
