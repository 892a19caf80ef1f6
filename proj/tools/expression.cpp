#include "expression.hpp"

#include <cctype>
#include <optional>
#include <vector>

#include "amv/amcycles.hpp"
#include "amv/dp2.hpp"
#include "amv/lattice.hpp"

namespace amv::cli {

Space parse_space(const std::string& name) {
  if (name == "amx" || name == "am") return Space::Amx;
  if (name == "dp2" || name == "S") return Space::Dp2;
  throw InvalidArgument("unknown space '" + name + "' (expected amx or dp2)");
}

namespace {

enum class Kind { Divisor, Curve };

struct Typed {
  ClassVector v;
  Kind kind;
};

int parse_small(const std::string& digits) {
  if (digits.empty() || digits.size() > 3) throw InvalidArgument("bad index '" + digits + "'");
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c))) throw InvalidArgument("bad index '" + digits + "'");
  return std::stoi(digits);
}

std::string strip_underscore(const std::string& s) { return !s.empty() && s[0] == '_' ? s.substr(1) : s; }

Typed resolve_amx(const std::string& sym) {
  const auto& div = lattices::amx_divisors();
  if (sym == "H") return {div.basis_vector(0), Kind::Divisor};
  if (sym == "K") return {-lattices::amx_anticanonical(), Kind::Divisor};
  if (sym[0] == 'E') {
    const int i = parse_small(strip_underscore(sym.substr(1)));
    if (i < 1 || i > amcycles::kNodes) throw InvalidArgument("node index out of range in '" + sym + "'");
    return {div.basis_vector(static_cast<std::size_t>(i)), Kind::Divisor};
  }
  try {
    return {amcycles::named_class(sym), Kind::Curve};
  } catch (const InvalidArgument&) {
    throw InvalidArgument("unknown symbol '" + sym + "' on amx");
  }
}

Typed resolve_dp2(const std::string& sym) {
  const auto& pic = lattices::dp2_picard();
  if (sym == "l") return {pic.basis_vector(0), Kind::Divisor};
  if (sym == "K") return {-lattices::anticanonical(pic), Kind::Divisor};
  const std::string digits = strip_underscore(sym.substr(1));
  switch (sym[0]) {
    case 'a': {
      const int i = parse_small(digits);
      if (i < 1 || i > dp2::kPoints) throw InvalidArgument("point index out of range in '" + sym + "'");
      return {pic.basis_vector(static_cast<std::size_t>(i)), Kind::Divisor};
    }
    case 'A':
    case 'D': {
      const int i = parse_small(digits);
      return {dp2::line_class(pic, sym[0] == 'A' ? dp2::Family::A : dp2::Family::D, i), Kind::Divisor};
    }
    case 'B':
    case 'C': {
      if (digits.size() != 2) throw InvalidArgument("expected two digits in '" + sym + "'");
      return {dp2::line_class(pic, sym[0] == 'B' ? dp2::Family::B : dp2::Family::C, digits[0] - '0', digits[1] - '0'),
              Kind::Divisor};
    }
    default: break;
  }
  throw InvalidArgument("unknown symbol '" + sym + "' on dp2");
}

class Parser {
 public:
  Parser(const std::string& text, Space space) : text_(text), space_(space) {}

  std::vector<Typed> product() {
    std::vector<Typed> factors;
    factor(factors);
    while (peek() == '.' || peek() == '*') {
      ++pos_;
      factor(factors);
    }
    if (peek() != '\0') fail("unexpected character");
    return factors;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidArgument(what + " at position " + std::to_string(pos_) + " in '" + text_ + "'");
  }

  char peek() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  std::optional<std::int64_t> integer() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) return std::nullopt;
    std::int64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = checked::add(checked::mul(v, 10), text_[pos_++] - '0');
    }
    return v;
  }

  std::string symbol() {
    peek();
    const std::size_t start = pos_;
    // UTF-8 bytes and braces let typeset labels like "ℓ̃_{1,2}" through.
    int depth = 0;
    while (pos_ < text_.size()) {
      const unsigned char c = static_cast<unsigned char>(text_[pos_]);
      if (c == '{') ++depth;
      else if (c == '}' && depth > 0) --depth;
      else if (c == ',' && depth > 0) {}
      else if (!(std::isalnum(c) || c == '_' || c >= 0x80)) break;
      ++pos_;
    }
    if (start == pos_) fail("expected a symbol");
    return text_.substr(start, pos_ - start);
  }

  Typed resolve(const std::string& sym) const { return space_ == Space::Amx ? resolve_amx(sym) : resolve_dp2(sym); }

  Typed term() {
    std::int64_t coeff = 1;
    if (auto k = integer()) {
      coeff = *k;
      if (peek() == '*') ++pos_;
    }
    Typed t;
    if (peek() == '(') {
      ++pos_;
      t = linear();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
    } else {
      t = resolve(symbol());
    }
    t.v = coeff * t.v;
    return t;
  }

  Typed linear() {
    bool negate = false;
    if (peek() == '+' || peek() == '-') negate = text_[pos_++] == '-';
    Typed acc = term();
    if (negate) acc.v = -acc.v;
    while (peek() == '+' || peek() == '-') {
      const bool minus = text_[pos_++] == '-';
      Typed next = term();
      if (next.kind != acc.kind) fail("cannot add a divisor and a curve");
      acc.v = minus ? acc.v - next.v : acc.v + next.v;
    }
    return acc;
  }

  void factor(std::vector<Typed>& out) {
    Typed base;
    if (peek() == '(') {
      ++pos_;
      base = linear();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
    } else {
      bool negate = false;
      if (peek() == '-') {
        ++pos_;
        negate = true;
      }
      base = term();
      if (negate) base.v = -base.v;
    }
    std::int64_t power = 1;
    if (peek() == '^') {
      ++pos_;
      auto k = integer();
      if (!k || *k < 1 || *k > 3) fail("exponent must be 1, 2 or 3");
      power = *k;
    }
    for (std::int64_t k = 0; k < power; ++k) out.push_back(base);
  }

  const std::string& text_;
  Space space_;
  std::size_t pos_ = 0;
};

}  // namespace

std::int64_t evaluate_intersection(const std::string& expr, Space space) {
  Parser parser(expr, space);
  const std::vector<Typed> factors = parser.product();
  std::vector<ClassVector> divisors, curves;
  for (const auto& f : factors) (f.kind == Kind::Divisor ? divisors : curves).push_back(f.v);

  if (space == Space::Dp2) {
    if (divisors.size() != 2) throw InvalidArgument("a surface intersection number needs exactly two factors");
    return lattices::dp2_picard().pair(divisors[0], divisors[1]);
  }
  if (divisors.size() == 3 && curves.empty()) {
    return triple(lattices::amx_triples(), divisors[0], divisors[1], divisors[2]);
  }
  if (divisors.size() == 1 && curves.size() == 1) {
    return pair_div_curve(lattices::amx_pairing(), divisors[0], curves[0]);
  }
  throw InvalidArgument("a threefold intersection number needs three divisors or one divisor and one curve");
}

}  // namespace amv::cli
