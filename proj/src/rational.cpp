#include "mbc/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace mbc {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

[[noreturn]] void bad(std::string_view text) {
  throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
}

}  // namespace

Rat make_rat(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat parse_rational(std::string_view text) {
  // trim surrounding whitespace
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) bad(text);

  std::string_view body = text;
  bool negative = false;
  if (body.front() == '+' || body.front() == '-') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (body.empty()) bad(text);

  Rat value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad(text);
    mpz_class n(std::string(num), 10), d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    value = Rat(n, d);
    value.canonicalize();
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view whole = body.substr(0, dot);
    std::string_view frac = body.substr(dot + 1);
    if (whole.empty() && frac.empty()) bad(text);
    if (!whole.empty() && !all_digits(whole)) bad(text);
    if (!frac.empty() && !all_digits(frac)) bad(text);
    mpz_class n = whole.empty() ? mpz_class(0) : mpz_class(std::string(whole), 10);
    mpz_class d = 1;
    for (char ch : frac) {
      n = n * 10 + (ch - '0');
      d *= 10;
    }
    value = Rat(n, d);
    value.canonicalize();
  } else {
    if (!all_digits(body)) bad(text);
    value = Rat(mpz_class(std::string(body), 10));
  }
  if (negative) value = -value;
  return value;
}

std::string format_rational(const Rat& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string format_decimal(const Rat& value, int digits) {
  if (digits < 0) digits = 0;
  mpz_class scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  // round half away from zero: floor((|n|*scale*2 + d) / (2d))
  mpz_class num = value.get_num();
  bool negative = num < 0;
  if (negative) num = -num;
  mpz_class scaled = (num * scale * 2 + value.get_den()) / (value.get_den() * 2);
  std::string body = scaled.get_str();
  if (digits == 0) return (negative && scaled != 0 ? "-" : "") + body;
  if (body.size() <= static_cast<size_t>(digits)) {
    body.insert(0, static_cast<size_t>(digits) + 1 - body.size(), '0');
  }
  body.insert(body.size() - static_cast<size_t>(digits), ".");
  if (negative && scaled != 0) body.insert(0, "-");
  return body;
}

double rat_to_double(const Rat& value) { return value.get_d(); }

Rat rat_floor(const Rat& value) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num().get_mpz_t(), value.get_den().get_mpz_t());
  return Rat(q);
}

}  // namespace mbc
