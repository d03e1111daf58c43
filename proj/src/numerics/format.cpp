#include "solvable/errors.hpp"
#include "solvable/numerics.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>

namespace solvable {

namespace {

std::string rational_text(const mpq_class& q) {
  std::string s = q.get_str();
  if (s.find('/') == std::string::npos) s += "/1";
  return s;
}

std::string float_text(const BigFloat& x) {
  const mpfr_prec_t prec = x.precision();
  const int digits = static_cast<int>(std::ceil(static_cast<double>(prec) * std::log10(2.0))) + 1;
  char* buffer = nullptr;
  if (mpfr_asprintf(&buffer, "%.*Re", digits - 1, x.get()) < 0) {
    throw Error("failed to format floating scalar");
  }
  std::unique_ptr<char, decltype(&mpfr_free_str)> owned(buffer, &mpfr_free_str);
  return std::string(buffer);
}

bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// Either an exact rational "[+-]digits[/digits]" or nullopt.
std::optional<mpq_class> parse_rational(std::string_view s) {
  std::string_view body = s;
  if (!body.empty() && (body.front() == '+' || body.front() == '-')) body.remove_prefix(1);
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  if (!is_digits(num)) return std::nullopt;
  if (slash != std::string_view::npos && !is_digits(body.substr(slash + 1))) return std::nullopt;
  std::string text(s.front() == '+' ? s.substr(1) : s);
  mpq_class q;
  if (q.set_str(text, 10) != 0) return std::nullopt;
  if (sgn(q.get_den()) == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
  q.canonicalize();
  return q;
}

BigFloat parse_float(std::string_view s, unsigned precision) {
  const std::string text(s);
  BigFloat out(static_cast<mpfr_prec_t>(precision));
  char* end = nullptr;
  mpfr_strtofr(out.get(), text.c_str(), &end, 10, MPFR_RNDN);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw ParseError("malformed number '" + text + "'");
  }
  return out;
}

std::string strip(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

}  // namespace

std::string to_string(const Scalar& value) {
  if (value.is_exact()) {
    return rational_text(value.exact().re) + "+" + rational_text(value.exact().im) + "i";
  }
  return float_text(value.floating().re) + "+" + float_text(value.floating().im) + "i";
}

Scalar parse_scalar(std::string_view input, std::optional<BackendSpec> target) {
  const std::string text = strip(input);
  if (text.empty()) throw ParseError("empty scalar");

  std::string re_text = text;
  std::string im_text;
  if (text.back() == 'i') {
    const std::string body = text.substr(0, text.size() - 1);
    // The separating sign is the first '+'/'-' past position 0 that does not
    // belong to an exponent or to a "+-" pair.
    std::size_t split = std::string::npos;
    for (std::size_t k = 1; k < body.size(); ++k) {
      const char c = body[k];
      const char prev = body[k - 1];
      if ((c == '+' || c == '-') && prev != 'e' && prev != 'E' && prev != '+' && prev != '-') {
        split = k;
        break;
      }
    }
    if (split == std::string::npos) {
      re_text = "0";
      im_text = body;
    } else {
      re_text = body.substr(0, split);
      im_text = body.substr(split);
    }
    if (im_text.size() >= 2 && im_text[0] == '+' && (im_text[1] == '-' || im_text[1] == '+'))
      im_text.erase(0, 1);
    if (im_text.empty() || im_text == "+") im_text = "1";
    if (im_text == "-") im_text = "-1";
  } else {
    im_text = "0";
  }

  const auto re_q = parse_rational(re_text);
  const auto im_q = parse_rational(im_text);
  if (re_q && im_q) {
    Scalar exact = Scalar::rational(*re_q, *im_q);
    if (target && target->kind == Backend::floating) return exact.to_floating(target->precision);
    return exact;
  }

  if (target && target->kind == Backend::exact) {
    throw BackendMismatch("floating text '" + text + "' cannot be read into the exact backend");
  }
  const unsigned precision = target ? target->precision : 53U;
  const BigFloat re = re_q ? BigFloat(*re_q, precision) : parse_float(re_text, precision);
  const BigFloat im = im_q ? BigFloat(*im_q, precision) : parse_float(im_text, precision);
  return Scalar(FloatComplex{re, im});
}

}  // namespace solvable
